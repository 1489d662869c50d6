//! Certification of the anomaly cancellation identities.
//!
//! Every certificate is a pure function of its entry and [`VerifyOptions`];
//! certificates for distinct entries are computed concurrently and returned in
//! registry order.

pub mod certificate;
pub mod engine;
pub mod expressions;
pub mod lemmas;
pub mod odd;
pub mod registry;
pub mod sides;
pub mod theorem;

use serde::{Deserialize, Serialize};

use crate::algebra::par;
use crate::charcalc::{Backend, GeometrySpec, Variant, XiConvention};
use crate::error::{Error, Result};

pub use certificate::{Certificate, Check, Constant, Constants, Corollary, Verdict};
pub use registry::{lookup, Entry, EntryKind, REGISTRY};

/// Engine choices shared by every certificate of a run.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerifyOptions {
    /// `None` picks the default per dimension.
    pub backend: Option<Backend>,
    pub q_order: u32,
    pub seed: u64,
    /// Number of consecutive seeds for the random backend.
    pub seed_count: u32,
    pub xi: XiConvention,
    /// Re-run symbolic entries of dimension 8 to 12 on the roots backend.
    pub cross_check: bool,
    /// Record wall-clock times (makes reports non-reproducible).
    pub timings: bool,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        Self {
            backend: None,
            q_order: 3,
            seed: 1,
            seed_count: 5,
            xi: XiConvention::Complexified,
            cross_check: true,
            timings: false,
        }
    }
}

impl VerifyOptions {
    pub fn validate(&self) -> Result<()> {
        if !(2..=6).contains(&self.q_order) {
            return Err(Error::Geometry(format!("q-order {} outside 2..=6", self.q_order)));
        }
        if self.seed_count == 0 {
            return Err(Error::Geometry("seed count must be positive".into()));
        }
        Ok(())
    }

    /// The geometry of a registry entry under these options.
    pub fn spec_for(&self, entry: &Entry) -> GeometrySpec {
        let backend = self.backend.unwrap_or_else(|| engine::default_backend(entry.dimension));
        GeometrySpec::new(entry.variant, entry.dimension, entry.l, backend)
            .with_q_order(self.q_order)
            .with_seed(self.seed)
            .with_spin(entry.spin)
            .with_xi(self.xi)
    }
}

pub(crate) fn elapsed_ms(start: std::time::Instant, opts: &VerifyOptions) -> Option<u64> {
    opts.timings.then(|| start.elapsed().as_millis() as u64)
}

/// Certifies one registry entry.
pub fn verify_entry(entry: &Entry, opts: &VerifyOptions) -> Result<Certificate> {
    opts.validate()?;
    match entry.kind {
        EntryKind::Even => theorem::verify_even(entry, opts),
        EntryKind::Odd => odd::verify_odd(entry, opts),
    }
}

/// Certifies the entry with the given id.
pub fn verify_theorem(id: &str, opts: &VerifyOptions) -> Result<Certificate> {
    let entry = lookup(id).ok_or_else(|| Error::UnknownTheorem(id.to_string()))?;
    verify_entry(entry, opts)
}

/// Certifies several entries concurrently, in the order given.
pub fn verify_entries(entries: &[&Entry], opts: &VerifyOptions) -> Result<Vec<Certificate>> {
    par::map_collect(entries, |e| verify_entry(e, opts))
        .into_iter()
        .collect()
}

/// Certifies the whole registry.
pub fn verify_all(opts: &VerifyOptions) -> Result<Vec<Certificate>> {
    let entries: Vec<&Entry> = REGISTRY.iter().collect();
    verify_entries(&entries, opts)
}

/// Certifies a geometry outside the registry: the relation and the solved
/// constants, with nothing stated to compare against.
pub fn verify_custom(
    variant: Variant,
    dimension: u32,
    l: u32,
    spin: bool,
    opts: &VerifyOptions,
) -> Result<Certificate> {
    opts.validate()?;
    let entry = Entry {
        id: "custom",
        kind: if variant.is_odd() {
            EntryKind::Odd
        } else {
            EntryKind::Even
        },
        variant,
        dimension,
        l,
        spin,
        expected: &[],
        statement: "",
        literal: &[],
        corollaries: &[],
        notes: &[],
    };
    let spec = opts.spec_for(&entry);
    spec.validate()?;
    let mut cert = verify_entry(&entry, opts)?;
    cert.id = format!(
        "custom/{}/d{dimension}/l{l}{}",
        variant.name(),
        if spin { "/spin" } else { "" }
    );
    cert.statement = format!(
        "the {} coefficients of the {} series satisfy the weight-{} relation",
        if variant.is_odd() { "paired" } else { "top-degree" },
        variant.name(),
        spec.weight()?
    );
    Ok(cert)
}
