use thiserror::Error;

/// Failure modes shared by every solver in the crate.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum CatoptricError {
    #[error("non-finite value in {0}")]
    NonFinite(&'static str),
    #[error("invalid tolerance {name} = {value}: must be strictly positive")]
    InvalidTolerance { name: &'static str, value: f64 },
    #[error("invalid oracle configuration: {0}")]
    InvalidConfig(String),
    #[error("leading coefficient vanishes; polynomial degree drops")]
    DegenerateLeadingCoefficient,
    #[error("Newton polishing did not reach the residual bound after {iterations} iterations (residual {residual:e})")]
    NoConvergence { iterations: usize, residual: f64 },
    #[error("observer radius r = {r} must exceed 1")]
    InvalidObserver { r: f64 },
    #[error("point {which} must lie strictly inside the unit disk (|z| = {modulus})")]
    PointOutsideDomain { which: &'static str, modulus: f64 },
    #[error("point {which} must lie strictly outside the closed unit disk (|z| = {modulus})")]
    PointInsideDomain { which: &'static str, modulus: f64 },
    #[error("source and observer coincide")]
    CoincidentPoints,
    #[error("no root of the reflection quartic lies on the unit circle")]
    NoRootOnCircle,
    #[error("observer at theta = {theta} is in the shadow region; no physical reflection point")]
    ShadowRegion { theta: f64 },
    #[error("a root coincides with w = 1; the Moebius map is singular there")]
    RootAtOne,
    #[error("point is not on the unit circle (|w| = {modulus})")]
    NotOnCircle { modulus: f64 },
    #[error("focus a = {a} must exceed 1")]
    InvalidFocus { a: f64 },
    #[error("line coefficients do not describe a real line")]
    NotARealLine,
}

impl CatoptricError {
    /// Stable machine-readable code, used by the CLI `status` field.
    pub fn code(&self) -> &'static str {
        match self {
            Self::NonFinite(_) => "NonFinite",
            Self::InvalidTolerance { .. } => "InvalidTolerance",
            Self::InvalidConfig(_) => "InvalidConfig",
            Self::DegenerateLeadingCoefficient => "DegenerateLeadingCoefficient",
            Self::NoConvergence { .. } => "NoConvergence",
            Self::InvalidObserver { .. } => "InvalidObserver",
            Self::PointOutsideDomain { .. } => "PointOutsideDomain",
            Self::PointInsideDomain { .. } => "PointInsideDomain",
            Self::CoincidentPoints => "CoincidentPoints",
            Self::NoRootOnCircle => "NoRootOnCircle",
            Self::ShadowRegion { .. } => "ShadowRegion",
            Self::RootAtOne => "RootAtOne",
            Self::NotOnCircle { .. } => "NotOnCircle",
            Self::InvalidFocus { .. } => "InvalidFocus",
            Self::NotARealLine => "NotARealLine",
        }
    }
}

pub type Result<T, E = CatoptricError> = std::result::Result<T, E>;
