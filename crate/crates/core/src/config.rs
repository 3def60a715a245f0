//! Desk-scale resource bounds.
//!
//! All engines are exact; the only way they fail is by exceeding one of
//! these limits, which is always a clean [`crate::Error::Resource`] error,
//! never a silent truncation.

/// Resource bounds threaded through the symbolic engines.
#[derive(Debug, Clone)]
pub struct Limits {
    /// Maximum total degree tolerated in any intermediate polynomial.
    pub max_total_degree: u32,
    /// Maximum number of terms tolerated in any intermediate polynomial.
    pub max_terms: usize,
    /// Maximum degree of a number field extension over the rationals.
    pub max_extension_degree: u32,
    /// `[field degree] x [polynomial degree]` budget for factoring over an
    /// extension field.
    pub max_extension_work: u32,
    /// First truncation order tried by the local colength engine.
    pub truncation_start: u32,
    /// Truncation order increment.
    pub truncation_step: u32,
    /// Truncation order ceiling; reaching it without stabilization means the
    /// requested colength is not finite (or not finite at desk scale).
    pub truncation_ceiling: u32,
    /// Maximum depth of the blow-up recursion.
    pub max_blowup_depth: u32,
    /// Maximum size of a Groebner basis under construction.
    pub max_basis_size: usize,
    /// Seed for the coordinate-change fallback of the singular-locus
    /// solver; recorded in reports so runs are reproducible.
    pub rng_seed: u64,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            max_total_degree: 256,
            max_terms: 100_000,
            max_extension_degree: 16,
            max_extension_work: 96,
            truncation_start: 4,
            truncation_step: 2,
            truncation_ceiling: 40,
            max_blowup_depth: 64,
            max_basis_size: 1024,
            rng_seed: 0x5eed,
        }
    }
}
