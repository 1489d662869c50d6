use std::fmt;

use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};
use serde::de::{self, Deserializer};
use serde::ser::Serializer;
use serde::{Deserialize, Serialize};

use crate::algebra::Rational;

/// An exact constant in a report: a JSON integer when it fits, otherwise the
/// string `"p/q"`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Constant(pub Rational);

impl Constant {
    pub fn integer(n: i64) -> Self {
        Self(Rational::from_integer(BigInt::from(n)))
    }
}

impl fmt::Display for Constant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl Serialize for Constant {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        if self.0.is_integer() {
            if let Some(n) = self.0.numer().to_i64() {
                return s.serialize_i64(n);
            }
        }
        s.serialize_str(&self.0.to_string())
    }
}

impl<'de> Deserialize<'de> for Constant {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Raw {
            Int(i64),
            Text(String),
        }
        match Raw::deserialize(d)? {
            Raw::Int(n) => Ok(Constant::integer(n)),
            Raw::Text(s) => parse_rational(&s)
                .map(Constant)
                .ok_or_else(|| de::Error::custom(format!("bad rational {s}"))),
        }
    }
}

fn parse_rational(s: &str) -> Option<Rational> {
    let (n, d) = match s.split_once('/') {
        Some((n, d)) => (n.trim().parse::<BigInt>().ok()?, d.trim().parse::<BigInt>().ok()?),
        None => (s.trim().parse::<BigInt>().ok()?, BigInt::from(1)),
    };
    if d.is_zero() {
        return None;
    }
    Some(Rational::new(n, d))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Pass,
    Fail,
}

impl Verdict {
    pub fn from_bool(ok: bool) -> Self {
        if ok {
            Verdict::Pass
        } else {
            Verdict::Fail
        }
    }

    pub fn is_pass(self) -> bool {
        self == Verdict::Pass
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::Pass => "pass",
            Verdict::Fail => "fail",
        })
    }
}

/// Expected and computed constants, aligned by label. A label such as
/// `a2:a1` is the coefficient of `a1` in the relation expressing `a2`.
///
/// `undetermined` marks a degenerate geometry where the data fixes no
/// constants (all coefficients vanish); stated constants then only need to be
/// consistent, which the certificate checks separately.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Constants {
    pub expected: Vec<Option<Constant>>,
    pub computed: Vec<Option<Constant>>,
    pub labels: Vec<String>,
    #[serde(default)]
    pub undetermined: bool,
}

impl Constants {
    pub fn push(&mut self, label: impl Into<String>, expected: Option<Constant>, computed: Option<Constant>) {
        self.labels.push(label.into());
        self.expected.push(expected);
        self.computed.push(computed);
    }

    pub fn computed(&self, label: &str) -> Option<&Constant> {
        let i = self.labels.iter().position(|l| l == label)?;
        self.computed[i].as_ref()
    }

    pub fn expected(&self, label: &str) -> Option<&Constant> {
        let i = self.labels.iter().position(|l| l == label)?;
        self.expected[i].as_ref()
    }

    /// Every stated expectation has an equal computed value.
    pub fn expectations_met(&self) -> bool {
        self.expected.iter().zip(&self.computed).all(|(e, c)| match (e, c) {
            (Some(e), Some(c)) => e == c,
            (Some(_), None) => self.undetermined,
            (None, _) => true,
        })
    }
}

/// One named sub-check of a certificate. Informational checks are reported
/// but do not enter the verdict.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub informational: bool,
    pub detail: String,
}

impl Check {
    pub fn new(name: impl Into<String>, passed: bool, detail: impl Into<String>) -> Self {
        Self {
            name: name.into(),
            passed,
            informational: false,
            detail: detail.into(),
        }
    }

    pub fn info(name: impl Into<String>, passed: bool, detail: impl Into<String>) -> Self {
        Self {
            name: name.into(),
            passed,
            informational: true,
            detail: detail.into(),
        }
    }
}

/// An index-theoretic consequence carried along as text only.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Corollary {
    pub statement: String,
    pub status: String,
}

/// The verdict record for one identity.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Certificate {
    pub id: String,
    pub dimension: Option<u32>,
    pub l: Option<u32>,
    pub variant: Option<String>,
    pub weight: Option<u32>,
    pub basis: Vec<[u32; 2]>,
    pub constants: Constants,
    pub orders_checked: Vec<u32>,
    pub backend: String,
    pub seeds: Vec<u64>,
    pub assumptions: Vec<String>,
    pub verdict: Verdict,
    pub residual: String,
    pub ms: Option<u64>,
    #[serde(default)]
    pub statement: String,
    #[serde(default)]
    pub checks: Vec<Check>,
    #[serde(default)]
    pub notes: Vec<String>,
    #[serde(default)]
    pub corollaries: Vec<Corollary>,
}

impl Certificate {
    pub fn new(id: impl Into<String>) -> Self {
        Self {
            id: id.into(),
            dimension: None,
            l: None,
            variant: None,
            weight: None,
            basis: Vec::new(),
            constants: Constants::default(),
            orders_checked: Vec::new(),
            backend: "symbolic".into(),
            seeds: Vec::new(),
            assumptions: Vec::new(),
            verdict: Verdict::Fail,
            residual: String::new(),
            ms: None,
            statement: String::new(),
            checks: Vec::new(),
            notes: Vec::new(),
            corollaries: Vec::new(),
        }
    }

    pub fn is_pass(&self) -> bool {
        self.verdict.is_pass()
    }

    /// Sets the verdict from the non-informational checks and the constants,
    /// and summarizes failures in `residual`.
    pub fn finalize(&mut self) {
        let failing: Vec<&Check> = self.checks.iter().filter(|c| !c.informational && !c.passed).collect();
        let constants_ok = self.constants.expectations_met();
        self.verdict = Verdict::from_bool(failing.is_empty() && constants_ok);
        self.residual = if self.verdict.is_pass() {
            "0".into()
        } else {
            let mut parts: Vec<String> = failing.iter().map(|c| format!("{}: {}", c.name, c.detail)).collect();
            if !constants_ok {
                parts.push("computed constants differ from expected".into());
            }
            parts.join("; ")
        };
    }
}
