use std::fmt;

use thiserror::Error;

/// Which idempotent component an error refers to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Component {
    /// The coefficient of `e`.
    First,
    /// The coefficient of `e†`.
    Second,
    Both,
}

impl Component {
    pub(crate) fn from_flags(first: bool, second: bool) -> Option<Self> {
        match (first, second) {
            (true, true) => Some(Component::Both),
            (true, false) => Some(Component::First),
            (false, true) => Some(Component::Second),
            (false, false) => None,
        }
    }
}

impl fmt::Display for Component {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Component::First => write!(f, "1"),
            Component::Second => write!(f, "2"),
            Component::Both => write!(f, "both"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("NotInvertible: idempotent component {which} is zero")]
    NotInvertible { which: Component },

    #[error("UnsupportedOnExactBackend: {0}")]
    UnsupportedOnExactBackend(String),

    #[error("EmptySet: infimum of an empty set of hyperbolic values")]
    EmptySet,

    #[error("NegativeHyperbolic: hyperbolic components must be nonnegative")]
    NegativeHyperbolic,

    #[error("InvalidArgument: {0}")]
    InvalidArgument(String),

    #[error("ShapeMismatch: {0}")]
    ShapeMismatch(String),

    #[error("NotSquare: matrix is {rows}x{cols}")]
    NotSquare { rows: usize, cols: usize },

    #[error("SingularComponent: component {which} is singular")]
    SingularComponent { which: Component },

    #[error("DoesNotSplit: characteristic polynomial has no Gaussian-rational factorization; remaining factor {remaining}")]
    DoesNotSplit {
        remaining: String,
        component: Option<Component>,
    },

    #[error("ConsistencyFailure: {0}")]
    ConsistencyFailure(String),

    #[error("NotSelfAdjoint: relative defect {defect:e} exceeds tolerance")]
    NotSelfAdjoint { defect: f64 },

    #[error("NoConvergence: Jacobi iteration did not converge after {sweeps} sweeps")]
    NoConvergence { sweeps: usize },

    #[error("DegenerateSpectrum: eigenvalue gap {gap:e} below separation tolerance")]
    DegenerateSpectrum { gap: f64 },

    #[error("SubspaceIsFull: component {which} of the subspace is the whole space")]
    SubspaceIsFull { which: Component },

    #[error("ZeroSubspace: component {which} of the subspace is zero")]
    ZeroSubspace { which: Component },

    #[error("Parse: {0}")]
    Parse(String),
}

impl Error {
    /// Structured variant name, as surfaced on the command line and across the C ABI.
    pub fn name(&self) -> &'static str {
        match self {
            Error::NotInvertible { .. } => "NotInvertible",
            Error::UnsupportedOnExactBackend(_) => "UnsupportedOnExactBackend",
            Error::EmptySet => "EmptySet",
            Error::NegativeHyperbolic => "NegativeHyperbolic",
            Error::InvalidArgument(_) => "InvalidArgument",
            Error::ShapeMismatch(_) => "ShapeMismatch",
            Error::NotSquare { .. } => "NotSquare",
            Error::SingularComponent { .. } => "SingularComponent",
            Error::DoesNotSplit { .. } => "DoesNotSplit",
            Error::ConsistencyFailure(_) => "ConsistencyFailure",
            Error::NotSelfAdjoint { .. } => "NotSelfAdjoint",
            Error::NoConvergence { .. } => "NoConvergence",
            Error::DegenerateSpectrum { .. } => "DegenerateSpectrum",
            Error::SubspaceIsFull { .. } => "SubspaceIsFull",
            Error::ZeroSubspace { .. } => "ZeroSubspace",
            Error::Parse(_) => "Parse",
        }
    }

    pub(crate) fn tag_component(self, which: Component) -> Self {
        match self {
            Error::DoesNotSplit { remaining, .. } => Error::DoesNotSplit {
                remaining,
                component: Some(which),
            },
            Error::SingularComponent { .. } => Error::SingularComponent { which },
            other => other,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
