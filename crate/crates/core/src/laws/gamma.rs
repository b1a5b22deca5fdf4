use statrs::function::gamma::gamma_lr;

use super::check_transform_argument;
use crate::error::{ensure, Result};
use crate::mlfun::lgamma;

/// Gamma law in (shape, rate) form: density `r^k x^{k-1} e^{-rx} / Γ(k)`.
///
/// Subordination writes gamma laws through their Laplace exponent
/// `δ log(1 + λ s)`; that is shape `δ`, rate `1/λ`
/// ([`GammaSS::from_exponent_form`]). The excursion law of the compound
/// Poisson form of a negative-index tempered stable law has shape `-γ`
/// and rate `θ`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GammaSS {
    shape: f64,
    rate: f64,
}

impl GammaSS {
    pub fn new(shape: f64, rate: f64) -> Result<Self> {
        ensure!(shape > 0.0 && shape.is_finite(), InvalidParameter, "gamma shape must be > 0, got {shape}");
        ensure!(rate > 0.0 && rate.is_finite(), InvalidParameter, "gamma rate must be > 0, got {rate}");
        Ok(Self { shape, rate })
    }

    /// The law with Laplace exponent `shape · log(1 + scale · s)`.
    pub fn from_exponent_form(scale: f64, shape: f64) -> Result<Self> {
        Self::new(shape, 1.0 / scale)
    }

    pub fn shape(&self) -> f64 {
        self.shape
    }

    pub fn rate(&self) -> f64 {
        self.rate
    }

    pub fn exponent(&self, s: f64) -> f64 {
        self.shape * (s / self.rate).ln_1p()
    }

    pub fn laplace(&self, s: f64) -> Result<f64> {
        check_transform_argument(s)?;
        Ok((-self.exponent(s)).exp())
    }

    pub fn pdf(&self, x: f64) -> f64 {
        if x < 0.0 {
            return 0.0;
        }
        if x == 0.0 {
            return match self.shape {
                k if k < 1.0 => f64::INFINITY,
                1.0 => self.rate,
                _ => 0.0,
            };
        }
        (self.shape * self.rate.ln() + (self.shape - 1.0) * x.ln() - self.rate * x - lgamma(self.shape)).exp()
    }

    pub fn cdf(&self, x: f64) -> f64 {
        if x <= 0.0 {
            0.0
        } else {
            gamma_lr(self.shape, self.rate * x)
        }
    }

    pub fn mean(&self) -> f64 {
        self.shape / self.rate
    }

    pub fn variance(&self) -> f64 {
        self.shape / (self.rate * self.rate)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quad::integrate_half_line;

    #[test]
    fn exponent_convention() {
        let g = GammaSS::from_exponent_form(2.0, 3.0).unwrap();
        assert_eq!((g.shape(), g.rate()), (3.0, 0.5));
        assert!((g.laplace(1.0).unwrap() - 1.0 / 27.0).abs() < 1e-16);
        assert_eq!(g.mean(), 6.0);
    }

    #[test]
    fn pdf_normalises_and_matches_cdf() {
        let g = GammaSS::new(2.5, 0.5).unwrap();
        let total = integrate_half_line(|x| g.pdf(x), 5.0, 1e-12, 0.0).unwrap();
        assert!((total - 1.0).abs() < 1e-10);
        let part = crate::quad::integrate(|x| g.pdf(x), 0.0, 3.0, 1e-13, 0.0).unwrap().value;
        assert!((part - g.cdf(3.0)).abs() < 1e-12);
    }

    #[test]
    fn rejects_bad_parameters() {
        assert!(GammaSS::new(0.0, 1.0).is_err());
        assert!(GammaSS::new(1.0, -1.0).is_err());
        assert!(GammaSS::new(1.0, 1.0).unwrap().laplace(-1.0).is_err());
    }
}
