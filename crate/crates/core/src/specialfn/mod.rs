//! Special functions, quadrature and Cauchy-type transforms.

mod cauchy;
pub mod cmath;
mod gamma;
mod hilbert;
mod quad;

pub(crate) use cauchy::half_line;
pub use cauchy::{cauchy_boundary, cauchy_integral, Decay, DensitySpec};
pub use gamma::{bernoulli_even, gamma, log_gamma, LogGamma};
pub(crate) use hilbert::hilbert_odd_even;
pub use hilbert::{check_grid, hilbert_grid};
pub use quad::{integrate_finite, integrate_with, GaussLegendre, Integrator, QuadValue, Quadrature, Substitution};
