use super::check_transform_argument;
use crate::error::{ensure, Result};

/// Negative binomial subordinator on the lattice `μt + αℤ≥0`, with Laplace
/// transform `(π / (1 − (1 − π) e^{−αs}))^κ e^{−μs}` per unit time.
///
/// It is a compound Poisson process with rate `−κ log π`, jumps `αK` with
/// `K` logarithmic of parameter `1 − π`, plus drift `μ`. `π = 1` is the
/// pure-drift limit.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NbParams {
    pi: f64,
    kappa: f64,
    alpha: f64,
    mu: f64,
}

impl NbParams {
    pub fn new(pi: f64, kappa: f64, alpha: f64, mu: f64) -> Result<Self> {
        ensure!(pi > 0.0 && pi <= 1.0, InvalidParameter, "pi must lie in (0, 1], got {pi}");
        ensure!(kappa > 0.0 && kappa.is_finite(), InvalidParameter, "kappa must be > 0, got {kappa}");
        ensure!(alpha > 0.0 && alpha.is_finite(), InvalidParameter, "lattice step alpha must be > 0, got {alpha}");
        ensure!(mu.is_finite() && mu >= 0.0, InvalidParameter, "drift mu must be >= 0, got {mu}");
        Ok(Self { pi, kappa, alpha, mu })
    }

    pub fn pi(&self) -> f64 {
        self.pi
    }

    pub fn kappa(&self) -> f64 {
        self.kappa
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    pub fn mu(&self) -> f64 {
        self.mu
    }

    /// Laplace exponent `κ (log(1 − (1 − π) e^{−αs}) − log π) + μ s`.
    pub fn exponent(&self, s: f64) -> f64 {
        let q = 1.0 - self.pi;
        self.kappa * ((-q * (-self.alpha * s).exp()).ln_1p() - self.pi.ln()) + self.mu * s
    }

    /// Unit-time Laplace transform.
    pub fn laplace(&self, s: f64) -> Result<f64> {
        check_transform_argument(s)?;
        Ok((-self.exponent(s)).exp())
    }

    /// Jump rate `−κ log π` of the compound Poisson part.
    pub fn jump_rate(&self) -> f64 {
        -self.kappa * self.pi.ln()
    }

    /// Parameter `1 − π` of the logarithmic jump count.
    pub fn jump_parameter(&self) -> f64 {
        1.0 - self.pi
    }

    pub fn mean(&self) -> f64 {
        self.mu + self.alpha * self.kappa * (1.0 - self.pi) / self.pi
    }

    pub fn variance(&self) -> f64 {
        self.alpha * self.alpha * self.kappa * (1.0 - self.pi) / (self.pi * self.pi)
    }
}

/// Logarithmic probability mass `q^k / (−k log(1 − q))`, `k ≥ 1`.
pub fn logarithmic_pmf(q: f64, k: u64) -> Result<f64> {
    ensure!(q > 0.0 && q < 1.0, InvalidParameter, "logarithmic parameter must lie in (0, 1), got {q}");
    if k == 0 {
        return Ok(0.0);
    }
    let kf = k as f64;
    Ok((kf * q.ln() - kf.ln()).exp() / -(-q).ln_1p())
}
