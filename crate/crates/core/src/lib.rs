pub mod asymptotics;
pub mod config;
pub mod conformal;
pub mod conjecture;
pub mod curveverify;
pub mod error;
pub(crate) mod par;
pub mod remez;
pub(crate) mod roots;
pub mod scalar;
pub mod specialfn;

pub use config::PrecisionConfig;
pub use error::{Error, Result};

/// Traits needed to do arithmetic on the generic scalars.
pub mod prelude {
    pub use crate::scalar::{DoubleDouble, Octuple, Real};
    pub use num_complex::Complex;
    pub use num_traits::{Float, FloatConst, One, Zero};
}

/// Default high-precision scalar (237-bit significand).
pub type Scalar = scalar::Octuple;
pub type Problem = remez::MinimaxProblem<Scalar>;
pub type Solution = remez::MinimaxSolution<Scalar>;
pub type Sample = conformal::ConformalSample<Scalar>;
pub type Constants = conformal::MapConstants<Scalar>;
pub type Sweep = asymptotics::AsymptoticsReport<Scalar>;
pub type Trace = curveverify::PhaseTrace<Scalar>;
pub type Profiles = curveverify::ProfileTable<Scalar>;
pub type ConjectureRun = conjecture::FixedPointRun<Scalar>;
