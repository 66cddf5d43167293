//! K-theory of the crossed product `C*(Z, X, h)` and its Elliott invariant.

mod pv;
pub mod rouhani;
mod trace;
pub mod winding;

use thiserror::Error;

use crate::ktheory::KTheoryError;
use crate::theta::ThetaError;
use crate::zlinalg::LinalgError;

pub use pv::{pv_assemble, CrossedGenerator, CrossedGroup, CrossedKTheory, GeneratorSource};
pub use rouhani::{rouhani_parameters, BetaCertificate, DerivativeSeries, RouhaniParameters};
pub use trace::{dense_range, elliott, rotation_number, trace_functional, ElliottInvariant};
pub use winding::{winding_integral, WindingEstimate};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CrossedError {
    #[error("induced map does not match the K-theory basis")]
    ShapeMismatch,
    #[error("the class of [1] is not a free generator of the cokernel")]
    UnitNotFree,
    #[error("trace of the unit is not 1")]
    UnitTrace,
    #[error("class is not fixed by h*")]
    NotFixed,
    #[error("class has {got} coordinates, expected {expected}")]
    ClassLength { expected: usize, got: usize },
    #[error("theta interval too wide to normalize the trace of {0}")]
    ThetaTooCoarse(String),
    #[error("truncation depth must be at least 1")]
    ZeroDepth,
    #[error("truncation depth {0} exceeds the supported maximum of 4")]
    DepthTooLarge(usize),
    #[error("winding oracle needs a degree-1 class on a torus")]
    NotDegreeOne,
    #[error("winding oracle needs at least one sample")]
    NoSamples,
    #[error(transparent)]
    Linalg(#[from] LinalgError),
    #[error(transparent)]
    KTheory(#[from] KTheoryError),
    #[error(transparent)]
    Theta(#[from] ThetaError),
}
