//! Run configuration, execution and report rendering.

use std::fmt::Write as _;
use std::path::PathBuf;

use serde::{Deserialize, Serialize};

use crate::algebra::FormPolynomial;
use crate::charcalc::{
    q_bundle_series, q_series_with, roots_to_power_sums, Backend, GeometrySpec, Model, Normalization, Side, Variant,
    XiConvention,
};
use crate::error::{Error, Result};
use crate::verify::{self, lemmas, registry, sides, Certificate, Entry, VerifyOptions};

/// Version of the report layout.
pub const REPORT_VERSION: &str = "1";

/// JSON schema of the report.
pub const REPORT_SCHEMA: &str = include_str!("../schema/report.schema.json");

/// Which registry entries to certify.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum TheoremFilter {
    /// `"all"` or `"none"`.
    Keyword(FilterKeyword),
    Ids(Vec<String>),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum FilterKeyword {
    All,
    None,
}

impl TheoremFilter {
    pub fn all() -> Self {
        TheoremFilter::Keyword(FilterKeyword::All)
    }

    /// Parses `all`, `none` or a list of ids.
    pub fn from_args(args: &[String]) -> Self {
        let ids: Vec<String> = args
            .iter()
            .flat_map(|a| a.split(','))
            .map(str::trim)
            .filter(|s| !s.is_empty())
            .map(String::from)
            .collect();
        match ids.as_slice() {
            [] => Self::all(),
            [one] if one == "all" => Self::all(),
            [one] if one == "none" => TheoremFilter::Keyword(FilterKeyword::None),
            _ => TheoremFilter::Ids(ids),
        }
    }

    /// The selected entries; unknown ids are an error.
    pub fn entries(&self) -> Result<Vec<&'static Entry>> {
        match self {
            TheoremFilter::Keyword(FilterKeyword::All) => Ok(registry::REGISTRY.iter().collect()),
            TheoremFilter::Keyword(FilterKeyword::None) => Ok(Vec::new()),
            TheoremFilter::Ids(ids) => ids
                .iter()
                .map(|id| registry::lookup(id).ok_or_else(|| Error::UnknownTheorem(id.clone())))
                .collect(),
        }
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    #[default]
    Json,
    Markdown,
}

impl Format {
    pub fn parse(s: &str) -> Option<Self> {
        match s {
            "json" => Some(Format::Json),
            "markdown" | "md" => Some(Format::Markdown),
            _ => None,
        }
    }
}

/// Everything a `verify` run depends on.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    pub theorems: TheoremFilter,
    pub dimension: Option<u32>,
    pub l: Option<u32>,
    pub variant: Option<Variant>,
    pub spin: Option<bool>,
    pub backend: Option<Backend>,
    pub q_order: u32,
    pub seed: u64,
    pub seed_count: u32,
    pub xi: XiConvention,
    pub cross_check: bool,
    pub lemmas: bool,
    pub sides: bool,
    pub timings: bool,
    pub output: Option<PathBuf>,
    pub format: Format,
}

impl Default for RunConfig {
    fn default() -> Self {
        let o = VerifyOptions::default();
        Self {
            theorems: TheoremFilter::all(),
            dimension: None,
            l: None,
            variant: None,
            spin: None,
            backend: o.backend,
            q_order: o.q_order,
            seed: o.seed,
            seed_count: o.seed_count,
            xi: o.xi,
            cross_check: o.cross_check,
            lemmas: false,
            sides: false,
            timings: o.timings,
            output: None,
            format: Format::Json,
        }
    }
}

/// A geometry chosen through overrides rather than a registry entry.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CustomGeometry {
    pub variant: Variant,
    pub dimension: u32,
    pub l: u32,
    pub spin: bool,
}

impl RunConfig {
    pub fn options(&self) -> VerifyOptions {
        VerifyOptions {
            backend: self.backend,
            q_order: self.q_order,
            seed: self.seed,
            seed_count: self.seed_count,
            xi: self.xi,
            cross_check: self.cross_check,
            timings: self.timings,
        }
    }

    fn has_overrides(&self) -> bool {
        self.dimension.is_some() || self.l.is_some() || self.variant.is_some() || self.spin.is_some()
    }

    /// The overridden geometry, if any. Overrides start from a single
    /// selected theorem or must name variant, dimension and `l` in full.
    pub fn custom_geometry(&self) -> Result<Option<CustomGeometry>> {
        if !self.has_overrides() {
            return Ok(None);
        }
        let base = match &self.theorems {
            TheoremFilter::Ids(ids) if ids.len() == 1 => self.theorems.entries()?.first().copied(),
            _ => None,
        };
        let pick = |o: Option<u32>, b: Option<u32>, name: &str| {
            o.or(b)
                .ok_or_else(|| Error::Geometry(format!("overrides need {name} (or a single --theorem to start from)")))
        };
        let variant = self
            .variant
            .or(base.map(|e| e.variant))
            .ok_or_else(|| Error::Geometry("overrides need a variant (or a single --theorem to start from)".into()))?;
        let dimension = pick(self.dimension, base.map(|e| e.dimension), "a dimension")?;
        let l = pick(self.l, base.map(|e| e.l), "l")?;
        let spin = self.spin.or(base.map(|e| e.spin)).unwrap_or(false);
        Ok(Some(CustomGeometry {
            variant,
            dimension,
            l,
            spin,
        }))
    }

    /// Rejects invalid combinations before any computation.
    pub fn validate(&self) -> Result<()> {
        self.options().validate()?;
        self.theorems.entries()?;
        if self.has_overrides() && self.theorems == TheoremFilter::all() {
            return Err(Error::Geometry(
                "overrides cannot be combined with --theorem all".into(),
            ));
        }
        if let Some(g) = self.custom_geometry()? {
            let spec = GeometrySpec::new(
                g.variant,
                g.dimension,
                g.l,
                self.backend
                    .unwrap_or_else(|| verify::engine::default_backend(g.dimension)),
            )
            .with_q_order(self.q_order);
            spec.validate()?;
        }
        if let Some(Backend::Roots) = self.backend {
            for e in self.theorems.entries()? {
                if e.dimension > 16 {
                    return Err(Error::Geometry(format!(
                        "roots backend is limited to dimension 16 ({} has {})",
                        e.id, e.dimension
                    )));
                }
            }
        }
        Ok(())
    }

    /// Runs every selected certification, in a deterministic order: registry
    /// entries (or the custom geometry), then lemmas, then side checks.
    pub fn execute(&self) -> Result<Vec<Certificate>> {
        self.validate()?;
        let opts = self.options();
        let mut out = match self.custom_geometry()? {
            Some(g) => vec![verify::verify_custom(g.variant, g.dimension, g.l, g.spin, &opts)?],
            None => verify::verify_entries(&self.theorems.entries()?, &opts)?,
        };
        if self.lemmas {
            out.extend(lemmas::verify_lemmas(&opts)?);
        }
        if self.sides {
            out.extend(sides::verify_sides_default(&opts)?);
            out.extend(sides::xi_convention_report(&opts)?);
        }
        Ok(out)
    }
}

/// The serialized report.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Report {
    pub version: String,
    pub engine_options: VerifyOptions,
    pub certificates: Vec<Certificate>,
}

impl Report {
    pub fn new(options: VerifyOptions, certificates: Vec<Certificate>) -> Self {
        Self {
            version: REPORT_VERSION.into(),
            engine_options: options,
            certificates,
        }
    }

    pub fn all_pass(&self) -> bool {
        self.certificates.iter().all(Certificate::is_pass)
    }
}

/// Renders a report.
pub fn write_report(report: &Report, format: Format) -> Result<Vec<u8>> {
    match format {
        Format::Json => {
            let mut bytes = serde_json::to_vec_pretty(report)
                .map_err(|e| Error::Conversion(format!("report serialization: {e}")))?;
            bytes.push(b'\n');
            Ok(bytes)
        }
        Format::Markdown => Ok(markdown(report).into_bytes()),
    }
}

fn opt<T: ToString>(v: &Option<T>) -> String {
    v.as_ref().map(ToString::to_string).unwrap_or_else(|| "-".into())
}

fn basis_text(basis: &[[u32; 2]]) -> String {
    if basis.is_empty() {
        return "-".into();
    }
    basis
        .iter()
        .map(|[a, b]| format!("E4^{a}E6^{b}"))
        .collect::<Vec<_>>()
        .join(", ")
}

fn markdown(report: &Report) -> String {
    let o = &report.engine_options;
    let mut s = String::new();
    let _ = writeln!(s, "# Certificate report\n");
    let _ = writeln!(
        s,
        "Report version {}, backend {}, q-order {}, seed {} ({} seeds for the random backend).\n",
        report.version,
        o.backend.map(|b| b.name()).unwrap_or("default"),
        o.q_order,
        o.seed,
        o.seed_count
    );
    let passed = report.certificates.iter().filter(|c| c.is_pass()).count();
    let _ = writeln!(s, "{passed} of {} certificates pass.\n", report.certificates.len());
    if !report.certificates.is_empty() {
        let _ = writeln!(s, "| id | verdict | weight | constants |");
        let _ = writeln!(s, "|---|---|---|---|");
        for c in &report.certificates {
            let consts: Vec<String> = c
                .constants
                .labels
                .iter()
                .zip(&c.constants.computed)
                .filter_map(|(l, v)| v.as_ref().map(|v| format!("{l} = {v}")))
                .take(2)
                .collect();
            let _ = writeln!(
                s,
                "| {} | {} | {} | {} |",
                c.id,
                c.verdict,
                opt(&c.weight),
                consts.join(", ")
            );
        }
        s.push('\n');
    }
    for c in &report.certificates {
        let _ = writeln!(s, "## {}\n", c.id);
        if !c.statement.is_empty() {
            let _ = writeln!(s, "{}\n", c.statement);
        }
        let _ = writeln!(s, "- verdict: **{}**", c.verdict);
        if c.dimension.is_some() {
            let _ = writeln!(
                s,
                "- geometry: {} in dimension {}, l = {}",
                opt(&c.variant),
                opt(&c.dimension),
                opt(&c.l)
            );
        }
        if c.weight.is_some() {
            let _ = writeln!(s, "- weight {}, basis {}", opt(&c.weight), basis_text(&c.basis));
        }
        let seeds = if c.seeds.is_empty() {
            String::new()
        } else {
            format!(
                ", seeds {}",
                c.seeds.iter().map(u64::to_string).collect::<Vec<_>>().join(" ")
            )
        };
        let _ = writeln!(s, "- backend {}{seeds}", c.backend);
        let orders: Vec<String> = c.orders_checked.iter().map(|n| format!("q^{n}")).collect();
        let _ = writeln!(s, "- orders checked: {}", orders.join(", "));
        if let Some(ms) = c.ms {
            let _ = writeln!(s, "- time: {ms} ms");
        }
        let _ = writeln!(s, "- residual: {}", c.residual);
        if !c.constants.labels.is_empty() {
            let _ = writeln!(s, "\n| constant | expected | computed |\n|---|---|---|");
            for ((l, e), v) in c
                .constants
                .labels
                .iter()
                .zip(&c.constants.expected)
                .zip(&c.constants.computed)
            {
                let _ = writeln!(s, "| {l} | {} | {} |", opt(e), opt(v));
            }
        }
        if !c.checks.is_empty() {
            let _ = writeln!(s, "\nChecks:\n");
            for k in &c.checks {
                let mark = if k.passed { "pass" } else { "fail" };
                let info = if k.informational { " (informational)" } else { "" };
                let _ = writeln!(s, "- {mark}{info}: {} ({})", k.name, k.detail);
            }
        }
        let lists: [(&str, Vec<String>); 3] = [
            ("Assumptions", c.assumptions.clone()),
            ("Notes", c.notes.clone()),
            (
                "Corollaries",
                c.corollaries
                    .iter()
                    .map(|k| format!("{} ({})", k.statement, k.status))
                    .collect(),
            ),
        ];
        for (title, items) in lists {
            if !items.is_empty() {
                let _ = writeln!(s, "\n{title}:\n");
                for item in items {
                    let _ = writeln!(s, "- {item}");
                }
            }
        }
        s.push('\n');
    }
    s
}

/// One line per registry entry, for `list`.
pub fn registry_table() -> String {
    let mut s = String::new();
    for e in registry::REGISTRY {
        let constants: Vec<String> = e.expected.iter().map(|(l, v)| format!("{l}={v}")).collect();
        let _ = writeln!(
            s,
            "{:<14} {:<18} dim {:>2}  l={}{}  {}",
            e.id,
            e.variant.name(),
            e.dimension,
            e.l,
            if e.spin { " spin" } else { "     " },
            constants.join(" ")
        );
    }
    s
}

/// What `expand` prints.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ExpandSide {
    /// The form built from bundle data, constrained.
    Bundle,
    /// The form built from theta functions, constrained.
    Theta,
    /// The q-expansion as virtual bundles, before taking characters.
    BundleExpr,
}

impl ExpandSide {
    pub fn parse(s: &str) -> Option<Self> {
        match s {
            "bundle" => Some(ExpandSide::Bundle),
            "theta" => Some(ExpandSide::Theta),
            "bundle-expr" => Some(ExpandSide::BundleExpr),
            _ => None,
        }
    }
}

fn q_power(k: u32) -> String {
    match (k % 8, k / 8) {
        (0, 0) => "1".into(),
        (0, 1) => "q".into(),
        (0, n) => format!("q^{n}"),
        _ => {
            let g = num_integer::gcd(k, 8);
            format!("q^({}/{})", k / g, 8 / g)
        }
    }
}

/// Expands a characteristic series of a geometry, one line per power of `q`.
/// `top_only` keeps the degree `spec.degree_cap()` component of forms.
pub fn expand(spec: &GeometrySpec, side: ExpandSide, norm: Normalization, top_only: bool) -> Result<String> {
    spec.validate()?;
    let mut out = String::new();
    if side == ExpandSide::BundleExpr {
        let series = q_bundle_series(spec, norm)?;
        for (k, e) in series.entries() {
            let _ = writeln!(out, "{}: {e}", q_power(k));
        }
        let _ = writeln!(out, "O({})", q_power(series.t_cap() + 1));
        return Ok(out);
    }
    let side = if side == ExpandSide::Bundle {
        Side::Bundle
    } else {
        Side::Theta
    };
    let model = Model::new(spec)?;
    let target = match spec.backend {
        Backend::Roots => Some(Model::new(&spec.clone().with_backend(Backend::PowerSum))?),
        _ => None,
    };
    let constrain = |f: &FormPolynomial| -> Result<FormPolynomial> {
        match &target {
            Some(ps) => ps.apply_constraint(&roots_to_power_sums(f, &model, ps)?),
            None => model.apply_constraint(f),
        }
    };
    let series = q_series_with(&model, side, norm)?;
    for (k, p) in series.entries() {
        let mut p = constrain(p)?;
        if top_only {
            p = p.degree_component(spec.degree_cap());
        }
        if !p.is_zero() {
            let _ = writeln!(out, "{}: {p}", q_power(k));
        }
    }
    let _ = writeln!(out, "O({})", q_power(series.t_cap() + 1));
    Ok(out)
}
