use super::{check_transform_argument, GammaSS};
use crate::error::{ensure, Result};
use crate::mlfun::{ln_mittag_leffler, MlArgs};
use crate::quad;

/// Logarithmic Mittag-Leffler law with density
/// `n e^{−θx} x^{a−1} E_{a,a+1}(c x^a)`, `n = −ac / log(1 − cθ^{−a})`, and
/// Laplace transform `log(1 − c(s + θ)^{−a}) / log(1 − cθ^{−a})`.
///
/// Expanding the logarithm, the transform is `E[(1 + s/θ)^{−aK}]` with `K`
/// logarithmic of parameter `q = cθ^{−a}`: for `c > 0` the law is a
/// logarithmic mixture of `Gamma(shape aK, rate θ)` laws. `c = 0` is the
/// `Gamma(a, θ)` limit.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LmlParams {
    a: f64,
    c: f64,
    theta: f64,
}

impl LmlParams {
    pub fn new(a: f64, c: f64, theta: f64) -> Result<Self> {
        ensure!(a > 0.0 && a.is_finite(), InvalidParameter, "LML order a must be > 0, got {a}");
        ensure!(theta > 0.0 && theta.is_finite(), InvalidParameter, "LML theta must be > 0, got {theta}");
        ensure!(
            c.is_finite() && c.abs() < theta.powf(a),
            InvalidParameter,
            "LML needs |c| < theta^a = {}, got c = {c}",
            theta.powf(a)
        );
        Ok(Self { a, c, theta })
    }

    pub fn a(&self) -> f64 {
        self.a
    }

    pub fn c(&self) -> f64 {
        self.c
    }

    pub fn theta(&self) -> f64 {
        self.theta
    }

    /// `q = c θ^{−a}`, the parameter of the latent logarithmic count.
    pub fn q(&self) -> f64 {
        self.c * self.theta.powf(-self.a)
    }

    fn ln_normaliser(&self) -> f64 {
        if self.c == 0.0 {
            return self.a.ln() + self.a * self.theta.ln();
        }
        (-self.a * self.c / (-self.q()).ln_1p()).ln()
    }

    pub fn pdf(&self, x: f64) -> Result<f64> {
        ensure!(x >= 0.0, Domain, "density argument must be >= 0, got {x}");
        if self.c == 0.0 {
            return Ok(GammaSS::new(self.a, self.theta)?.pdf(x));
        }
        if x == 0.0 {
            return Ok(match self.a {
                a if a < 1.0 => f64::INFINITY,
                1.0 => self.ln_normaliser().exp(),
                _ => 0.0,
            });
        }
        let ml = ln_mittag_leffler(MlArgs::two(self.a, self.a + 1.0, self.c * x.powf(self.a))?)?;
        let ln_p = self.ln_normaliser() - self.theta * x + (self.a - 1.0) * x.ln() + ml.ln_abs;
        Ok((ml.sign * ln_p.exp()).max(0.0))
    }

    pub fn laplace(&self, s: f64) -> Result<f64> {
        check_transform_argument(s)?;
        let ratio = (s / self.theta).ln_1p();
        if self.c == 0.0 {
            return Ok((-self.a * ratio).exp());
        }
        let q = self.q();
        Ok((-q * (-self.a * ratio).exp()).ln_1p() / (-q).ln_1p())
    }

    /// Distribution function by quadrature of the density.
    pub fn cdf(&self, x: f64) -> Result<f64> {
        if x <= 0.0 {
            return Ok(0.0);
        }
        let v = quad::integrate(|y| self.pdf(y).unwrap_or(f64::NAN), 0.0, x, 1e-13, 1e-12)?.value;
        Ok(v.clamp(0.0, 1.0))
    }

    pub fn mean(&self) -> f64 {
        let q = self.q();
        if q == 0.0 {
            return self.a / self.theta;
        }
        self.a * q / (self.theta * (1.0 - q) * -(-q).ln_1p())
    }
}
