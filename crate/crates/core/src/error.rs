use crate::continuum::LimitTag;

pub type Result<T, E = Error> = core::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
#[non_exhaustive]
pub enum Error {
    #[error("non-finite value in {0}")]
    NonFinite(&'static str),

    #[error("dimension mismatch: expected {expected} sites, found {found}")]
    Dimension { expected: usize, found: usize },

    #[error("invalid lattice: {0}")]
    InvalidLattice(&'static str),

    #[error("{what} outside its domain at (T, X) = ({t}, {x})")]
    Domain { what: &'static str, t: f64, x: f64 },

    #[error("X = {x} is below the singularity locus X = lambda*T at T = {t}")]
    OutsideCoordinateRange { t: f64, x: f64 },

    #[error("jet belongs to family {found}, expected {expected}")]
    Family { expected: &'static str, found: LimitTag },

    #[error("classification changes across samples ({first} at sample 0, {other} at sample {index})")]
    MixedClassification {
        first: LimitTag,
        other: LimitTag,
        index: usize,
    },

    #[error("first-order slot of {0} must vanish (the angle is carried in the zeroth-order slot)")]
    DoubleCounted(&'static str),

    #[error("at least one sample point is required")]
    NoSamples,

    #[error("packet width {sigma} is under-resolved (needs >= {min})")]
    Resolution { sigma: f64, min: f64 },

    #[error("degenerate input: {0}")]
    Degenerate(&'static str),

    #[error("test state is not band-limited (top third of the spectrum carries {fraction:e} of the power)")]
    NotBandLimited { fraction: f64 },

    #[error("angle field has no slice for time index {0}")]
    MissingSlice(usize),

    #[error("invalid argument: {0}")]
    InvalidArgument(&'static str),
}
