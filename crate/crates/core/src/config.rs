use crate::error::{invalid, Result};
use crate::scalar::Real;

/// Precision budget shared by all numerics.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PrecisionConfig {
    /// Requested binary precision. The effective precision of a computation
    /// is the smaller of this and the scalar's own significand width.
    pub mantissa_bits: u32,
    /// Gauss-Legendre nodes per panel.
    pub quad_order: usize,
    /// Half-width of the window used for principal values.
    pub pv_epsilon: f64,
    /// Lower bound for the truncation point of integrals over `(0, inf)`.
    pub tail_cut: f64,
    /// Panel budget of the adaptive integrator.
    pub max_panels: usize,
}

impl PrecisionConfig {
    pub fn new(mantissa_bits: u32) -> Result<Self> {
        let cfg = PrecisionConfig {
            mantissa_bits,
            quad_order: if mantissa_bits > 128 { 32 } else { 20 },
            pv_epsilon: 0.25,
            tail_cut: 50.0,
            max_panels: 20_000,
        };
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn validate(&self) -> Result<()> {
        if self.mantissa_bits < 64 {
            return invalid(format!("mantissa_bits must be at least 64, got {}", self.mantissa_bits));
        }
        if !(self.pv_epsilon > 0.0) || !(self.tail_cut > 0.0) {
            return invalid("pv_epsilon and tail_cut must be positive");
        }
        if self.quad_order < 2 {
            return invalid("quad_order must be at least 2");
        }
        Ok(())
    }

    /// Bits actually carried when computing in `T`.
    pub fn bits<T: Real>(&self) -> u32 {
        self.mantissa_bits.min(T::MANTISSA_BITS)
    }

    /// Working tolerance `2^(-bits/2)`.
    pub fn tol<T: Real>(&self) -> T {
        T::lit(2.0).powf(-T::lit(self.bits::<T>() as f64 / 2.0))
    }

    /// Truncation point for `int_0^inf t^alpha e^-t (...) dt`.
    pub fn tail_for(&self, alpha: f64, bits: u32) -> f64 {
        self.tail_cut.max(bits as f64 * std::f64::consts::LN_2 + 20.0 * alpha.abs())
    }
}

impl Default for PrecisionConfig {
    fn default() -> Self {
        PrecisionConfig::new(256).expect("default precision is valid")
    }
}
