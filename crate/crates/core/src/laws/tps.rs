use std::f64::consts::PI;

use super::{check_admissible, check_transform_argument, tempered_increment, Regime};
use crate::error::{ensure, Result, TplError};
use crate::mlfun::{lgamma, ln_mittag_leffler, MlArgs};
use crate::quad;

/// Tempered positive stable law with Laplace exponent
/// `sgn(γ) λ ((θ + s)^γ − θ^γ)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TpsParams {
    gamma: f64,
    lambda: f64,
    theta: f64,
}

/// A series value with its accuracy status.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SeriesValue {
    pub value: f64,
    /// Rounding error from cancellation exceeds `1e-10` relative.
    pub degraded: bool,
    pub terms: usize,
}

impl TpsParams {
    pub fn new(gamma: f64, lambda: f64, theta: f64) -> Result<Self> {
        check_admissible(gamma, lambda, theta)?;
        Ok(Self { gamma, lambda, theta })
    }

    pub fn gamma(&self) -> f64 {
        self.gamma
    }

    pub fn lambda(&self) -> f64 {
        self.lambda
    }

    pub fn theta(&self) -> f64 {
        self.theta
    }

    pub fn regime(&self) -> Regime {
        Regime::of(self.gamma)
    }

    pub fn with_lambda(&self, lambda: f64) -> Result<Self> {
        Self::new(self.gamma, lambda, self.theta)
    }

    /// `λ θ^γ`: the exponent at infinity for γ < 0, the tilt mass for γ > 0.
    pub fn tilt_mass(&self) -> f64 {
        self.lambda * self.theta.powf(self.gamma)
    }

    pub fn exponent(&self, s: f64) -> f64 {
        self.regime().sign() * self.lambda * tempered_increment(self.gamma, self.theta, s)
    }

    /// Laplace transform of the law at time `t`.
    pub fn laplace(&self, s: f64, t: f64) -> Result<f64> {
        check_transform_argument(s)?;
        Ok((-t * self.exponent(s)).exp())
    }

    pub fn mean(&self) -> f64 {
        self.lambda * self.gamma.abs() * self.theta.powf(self.gamma - 1.0)
    }

    pub fn variance(&self) -> f64 {
        self.lambda * self.gamma.abs() * (1.0 - self.gamma) * self.theta.powf(self.gamma - 2.0)
    }

    fn require_density(&self) -> Result<()> {
        ensure!(
            self.gamma > 0.0 && self.gamma < 1.0,
            UnsupportedRegime,
            "tempered stable density needs gamma in (0, 1), got {}",
            self.gamma
        );
        Ok(())
    }

    /// The alternating series for the density:
    ///
    /// ```text
    /// e^{−θx+λθ^γ} / (πx) · Σ_{k≥1} (−1)^{k+1} Γ(kγ+1) sin(kπγ) (λ x^{−γ})^k / k!
    /// ```
    ///
    /// Small `x` makes the series cancel; the result is then flagged.
    pub fn pdf_series(&self, x: f64) -> Result<SeriesValue> {
        self.require_density()?;
        ensure!(x > 0.0, Domain, "density argument must be > 0, got {x}");
        let ln_y = self.lambda.ln() - self.gamma * x.ln();
        let mut sum = 0.0;
        let mut abs_sum = 0.0;
        let mut prev = f64::NEG_INFINITY;
        let mut terms = 0;
        for k in 1..100_000usize {
            let kf = k as f64;
            let ln_mag = lgamma(kf * self.gamma + 1.0) - lgamma(kf + 1.0) + kf * ln_y;
            let t = ln_mag.exp() * (kf * PI * self.gamma).sin();
            let t = if k % 2 == 0 { -t } else { t };
            sum += t;
            abs_sum += t.abs();
            terms = k;
            if ln_mag < prev && ln_mag.exp() < 1e-17 * sum.abs() {
                break;
            }
            if !abs_sum.is_finite() {
                break;
            }
            prev = ln_mag;
        }
        let degraded = !(abs_sum.is_finite() && f64::EPSILON * abs_sum <= 1e-10 * sum.abs());
        let tilt = -self.theta * x + self.tilt_mass();
        let value = (tilt.exp() * sum / (PI * x)).max(0.0);
        Ok(SeriesValue { value, degraded, terms })
    }

    /// Density, from the series where it is well conditioned and from the
    /// positive integral representation elsewhere.
    pub fn pdf(&self, x: f64) -> Result<f64> {
        self.require_density()?;
        ensure!(x >= 0.0, Domain, "density argument must be >= 0, got {x}");
        if x == 0.0 {
            return Ok(0.0);
        }
        let series = self.pdf_series(x)?;
        if !series.degraded {
            return Ok(series.value);
        }
        let tilt = -self.theta * x + self.tilt_mass();
        Ok(tilt.exp() * positive_stable_pdf(self.gamma, self.lambda, x)?)
    }

    /// `q`-potential density `v^q(x) = ∫_0^∞ e^{−qt} p_t(x) dt`.
    ///
    /// For `λ = 1` this is `e^{−θx} x^{γ−1} E_{γ,γ}((θ^γ − q) x^γ)`; general
    /// `λ` follows from `v^q_λ = λ^{−1} v^{q/λ}_1`.
    pub fn potential_density(&self, q: f64, x: f64) -> Result<f64> {
        ensure!(
            self.gamma > 0.0,
            UnsupportedRegime,
            "potential density is implemented for gamma in (0, 1], got {}",
            self.gamma
        );
        ensure!(q > 0.0, InvalidParameter, "potential order q must be > 0, got {q}");
        ensure!(x > 0.0, Domain, "potential density argument must be > 0, got {x}");
        let (g, th) = (self.gamma, self.theta);
        let q1 = q / self.lambda;
        let ml = ln_mittag_leffler(MlArgs::two(g, g, (th.powf(g) - q1) * x.powf(g))?)?;
        let ln_v = -th * x + (g - 1.0) * x.ln() + ml.ln_abs - self.lambda.ln();
        Ok(ml.sign * ln_v.exp())
    }
}

/// `[sin(γu)^γ sin((1−γ)u)^{1−γ} / sin u]^{1/(1−γ)}` on `u ∈ (0, π)`, in logs.
pub(crate) fn ln_kanter(gamma: f64, u: f64) -> f64 {
    let num = gamma * (gamma * u).sin().ln() + (1.0 - gamma) * ((1.0 - gamma) * u).sin().ln();
    (num - u.sin().ln()) / (1.0 - gamma)
}

fn stable_integral(gamma: f64, lambda: f64, x: f64, density: bool) -> Result<f64> {
    ensure!(gamma > 0.0 && gamma < 1.0, InvalidParameter, "stable index must be in (0, 1), got {gamma}");
    ensure!(lambda > 0.0, InvalidParameter, "stable scale must be > 0, got {lambda}");
    if x <= 0.0 {
        return Ok(0.0);
    }
    let x1 = x * lambda.powf(-1.0 / gamma);
    let p = gamma / (1.0 - gamma);
    let ln_w = -p * x1.ln();
    let f = |u: f64| {
        if u <= 0.0 || u >= PI {
            return 0.0;
        }
        let ln_a = ln_kanter(gamma, u);
        let e = (ln_a + ln_w).exp();
        if density {
            (ln_a + ln_w - e).exp()
        } else {
            (-e).exp()
        }
    };
    let q = quad::integrate(f, 0.0, PI, 1e-300, 1e-12)?;
    if density {
        Ok(q.value * p / (PI * x1) * lambda.powf(-1.0 / gamma))
    } else {
        Ok(q.value / PI)
    }
}

/// Density of the one-sided stable law with Laplace transform `e^{−λ s^γ}`.
pub fn positive_stable_pdf(gamma: f64, lambda: f64, x: f64) -> Result<f64> {
    stable_integral(gamma, lambda, x, true)
}

/// Distribution function of the one-sided stable law `e^{−λ s^γ}`.
pub fn positive_stable_cdf(gamma: f64, lambda: f64, x: f64) -> Result<f64> {
    stable_integral(gamma, lambda, x, false)
}

impl std::fmt::Display for TpsParams {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "TPS(gamma={}, lambda={}, theta={})", self.gamma, self.lambda, self.theta)
    }
}

impl TryFrom<(f64, f64, f64)> for TpsParams {
    type Error = TplError;

    fn try_from((g, l, t): (f64, f64, f64)) -> Result<Self> {
        Self::new(g, l, t)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quad::integrate_half_line;

    fn levy_smirnov(x: f64) -> f64 {
        (2.0 * PI.sqrt()).recip() * x.powf(-1.5) * (-1.0 / (4.0 * x)).exp()
    }

    #[test]
    fn exponent_examples() {
        let p = TpsParams::new(0.5, 2.0, 0.0).unwrap();
        assert_eq!(p.exponent(0.0), 0.0);
        assert!((p.exponent(4.0) - 4.0).abs() < 1e-15);
        let m = TpsParams::new(-1.0, 3.0, 1.0).unwrap();
        assert!((m.exponent(1.0) - 1.5).abs() < 1e-15);
    }

    #[test]
    fn half_stable_series_matches_closed_form() {
        let p = TpsParams::new(0.5, 1.0, 0.0).unwrap();
        for x in [0.3, 1.0, 4.0] {
            let v = p.pdf_series(x).unwrap();
            assert!(!v.degraded);
            assert!((v.value - levy_smirnov(x)).abs() < 1e-8 * levy_smirnov(x), "x={x}");
        }
        for x in [0.01, 0.05, 0.3, 2.0] {
            let v = positive_stable_pdf(0.5, 1.0, x).unwrap();
            assert!((v - levy_smirnov(x)).abs() < 1e-10 * levy_smirnov(x).max(1e-300), "x={x}");
            let c = positive_stable_cdf(0.5, 1.0, x).unwrap();
            let want = statrs::function::erf::erfc(1.0 / (2.0 * x.sqrt()));
            assert!((c - want).abs() < 1e-9, "x={x}: {c} vs {want}");
        }
    }

    #[test]
    fn small_arguments_are_flagged_and_rerouted() {
        let p = TpsParams::new(0.7, 1.0, 0.5).unwrap();
        assert!(p.pdf_series(0.02).unwrap().degraded);
        let direct = p.pdf(0.02).unwrap();
        assert!(direct.is_finite() && direct >= 0.0);
    }

    #[test]
    fn tilt_structure() {
        let base = TpsParams::new(0.7, 1.0, 0.0).unwrap();
        let tilted = TpsParams::new(0.7, 1.0, 0.5).unwrap();
        for x in [0.5, 1.0, 3.0] {
            let want = (-0.5 * x + tilted.tilt_mass()).exp() * base.pdf(x).unwrap();
            assert!((tilted.pdf(x).unwrap() - want).abs() < 1e-12 * want);
        }
    }

    #[test]
    fn density_integrates_to_one() {
        let p = TpsParams::new(0.7, 1.0, 0.5).unwrap();
        let total = integrate_half_line(|x| p.pdf(x).unwrap(), 2.0, 1e-10, 0.0).unwrap();
        assert!((total - 1.0).abs() < 1e-8, "{total}");
    }

    #[test]
    fn potential_density_special_cases() {
        let exp_case = TpsParams::new(1.0, 1.0, 0.7).unwrap();
        for x in [0.2, 1.0, 5.0] {
            let v = exp_case.potential_density(0.3, x).unwrap();
            assert!((v - (-0.3 * x).exp()).abs() < 1e-13);
        }
        let p = TpsParams::new(0.6, 1.0, 2.0).unwrap();
        let q = 2f64.powf(0.6);
        let x = 1.3f64;
        let want = (-2.0 * x).exp() * x.powf(-0.4) / lgamma(0.6).exp();
        assert!((p.potential_density(q, x).unwrap() - want).abs() < 1e-13);
    }

    #[test]
    fn potential_density_transform() {
        for lambda in [1.0, 2.5] {
            let p = TpsParams::new(0.6, lambda, 0.8).unwrap();
            for q in [0.5, 1.0] {
                for s in [0.5, 1.0, 2.0] {
                    let lt =
                        integrate_half_line(|x| (-s * x).exp() * p.potential_density(q, x).unwrap(), 1.0, 1e-11, 0.0)
                            .unwrap();
                    let want = 1.0 / (q + p.exponent(s));
                    assert!((lt - want).abs() < 1e-8, "lambda={lambda} q={q} s={s}: {lt} vs {want}");
                }
            }
        }
    }
}
