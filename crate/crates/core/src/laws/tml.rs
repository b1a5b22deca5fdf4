use super::check_transform_argument;
use crate::error::{ensure, Result, TplError};
use crate::mlfun::ml;

/// Tempered Mittag-Leffler law with survival function
/// `e^{−θx} E_a(−c x^a)`, `a ∈ (0, 1]`, `c ≥ 0`, `θ > 0`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TmlParams {
    a: f64,
    c: f64,
    theta: f64,
}

impl TmlParams {
    pub fn new(a: f64, c: f64, theta: f64) -> Result<Self> {
        ensure!(a > 0.0 && a <= 1.0, InvalidParameter, "TML order a must lie in (0, 1], got {a}");
        ensure!(c >= 0.0 && c.is_finite(), InvalidParameter, "TML c must be >= 0, got {c}");
        ensure!(theta > 0.0 && theta.is_finite(), InvalidParameter, "TML theta must be > 0, got {theta}");
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

    pub fn survival(&self, x: f64) -> Result<f64> {
        if x <= 0.0 {
            return Ok(1.0);
        }
        if self.a == 1.0 {
            return Ok((-(self.theta + self.c) * x).exp());
        }
        Ok((-self.theta * x).exp() * ml(self.a, 1.0, -self.c * x.powf(self.a))?)
    }

    pub fn cdf(&self, x: f64) -> Result<f64> {
        if x <= 0.0 {
            return Ok(0.0);
        }
        if self.a == 1.0 {
            return Ok(-(-(self.theta + self.c) * x).exp_m1());
        }
        Ok(1.0 - self.survival(x)?)
    }

    /// `e^{−θx} (θ E_a(−cx^a) + c x^{a−1} E_{a,a}(−cx^a))`.
    pub fn pdf(&self, x: f64) -> Result<f64> {
        ensure!(x >= 0.0, Domain, "density argument must be >= 0, got {x}");
        let (a, c, th) = (self.a, self.c, self.theta);
        if a == 1.0 {
            return Ok((th + c) * (-(th + c) * x).exp());
        }
        if x == 0.0 {
            return Ok(if c > 0.0 { f64::INFINITY } else { th });
        }
        let z = -c * x.powf(a);
        let v = th * ml(a, 1.0, z)? + c * x.powf(a - 1.0) * ml(a, a, z)?;
        Ok((-th * x).exp() * v.max(0.0))
    }

    /// `(θ(s + θ)^{a−1} + c) / ((s + θ)^a + c)`.
    pub fn laplace(&self, s: f64) -> Result<f64> {
        check_transform_argument(s)?;
        let u = s + self.theta;
        Ok((self.theta * u.powf(self.a - 1.0) + self.c) / (u.powf(self.a) + self.c))
    }

    pub fn mean(&self) -> f64 {
        self.theta.powf(self.a - 1.0) / (self.theta.powf(self.a) + self.c)
    }

    /// Solves `cdf(x) = u` to `|cdf(x) − u| < 1e-10`: the bracket is doubled
    /// until it contains the root, then Newton steps are taken inside it,
    /// falling back to bisection when a step leaves the bracket.
    pub fn quantile(&self, u: f64) -> Result<f64> {
        ensure!(u > 0.0 && u < 1.0, Domain, "quantile level must lie in (0, 1), got {u}");
        let mut lo = 0.0;
        let mut hi = self.mean().max(f64::MIN_POSITIVE);
        while self.cdf(hi)? < u {
            lo = hi;
            hi *= 2.0;
            if !hi.is_finite() || hi > 1e300 {
                return Err(TplError::Domain(format!("could not bracket the {u} quantile of TML")));
            }
        }
        let mut x = 0.5 * (lo + hi);
        for _ in 0..200 {
            let f = self.cdf(x)? - u;
            if f.abs() < 1e-10 {
                return Ok(x);
            }
            if f < 0.0 {
                lo = x;
            } else {
                hi = x;
            }
            let d = self.pdf(x)?;
            let newton = x - f / d;
            x = if d > 0.0 && newton > lo && newton < hi { newton } else { 0.5 * (lo + hi) };
            if hi - lo <= 4.0 * f64::EPSILON * hi {
                return Ok(x);
            }
        }
        Err(TplError::Domain(format!("TML quantile iteration did not converge at level {u}")))
    }
}
