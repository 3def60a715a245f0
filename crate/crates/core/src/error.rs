use thiserror::Error;

/// Errors produced by the exact engines.
///
/// Every variant carries a stable machine-readable code (see [`Error::code`])
/// so that frontends can map failures to diagnostics without string matching.
#[derive(Debug, Error)]
pub enum Error {
    /// Operands live in different polynomial rings or coefficient fields.
    #[error("structural error: {0}")]
    Structural(String),

    /// A precondition of the requested operation does not hold.
    #[error("domain error: {0}")]
    Domain(String),

    /// gcd of two zero polynomials.
    #[error("gcd of two zero polynomials is undefined")]
    UndefinedGcd,

    /// A configured desk-scale bound was exceeded.
    #[error("resource bound exceeded: {0}")]
    Resource(String),

    /// A local colength did not stabilize below the truncation ceiling.
    #[error("colength is not finite: {0}")]
    NotFinite(String),

    /// The ideal is not generically reduced (gcd of generators not squarefree).
    #[error("not generically reduced: {0}")]
    NotGenericallyReduced(String),

    /// The Hilbert-Burch identity `<g> * J = I` failed to verify.
    #[error("not a plane curve ideal of Hilbert-Burch type: {0}")]
    NotHilbertBurch(String),

    /// A fiber specialization collapsed to the zero or unit ideal.
    #[error("degenerate fiber: {0}")]
    DegenerateFiber(String),
}

impl Error {
    /// Stable machine-readable code for this error.
    pub fn code(&self) -> &'static str {
        match self {
            Error::Structural(_) => "structural-error",
            Error::Domain(_) => "domain-error",
            Error::UndefinedGcd => "undefined-gcd",
            Error::Resource(_) => "resource-bound",
            Error::NotFinite(_) => "non-finite-colength",
            Error::NotGenericallyReduced(_) => "not-generically-reduced",
            Error::NotHilbertBurch(_) => "not-hilbert-burch",
            Error::DegenerateFiber(_) => "degenerate-fiber",
        }
    }

    /// True when the failure is a resource bound rather than an input defect.
    pub fn is_resource(&self) -> bool {
        matches!(self, Error::Resource(_) | Error::NotFinite(_))
    }
}

pub type Result<T> = std::result::Result<T, Error>;
