use super::{check_admissible, check_transform_argument, tempered_increment, GammaSS, Regime, TpsParams};
use crate::error::{ensure, Result};
use crate::mlfun::{ln_mittag_leffler, MlArgs};

/// Tempered positive Linnik law with Laplace transform
/// `(1 + sgn(γ) λ ((θ + s)^γ − θ^γ))^{−δ}`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TplParams {
    gamma: f64,
    lambda: f64,
    delta: f64,
    theta: f64,
}

/// Cumulant of order `order` with the regime it was computed in.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CumulantReport {
    pub order: u32,
    pub value: f64,
    pub regime: Regime,
}

impl TplParams {
    pub fn new(gamma: f64, lambda: f64, delta: f64, theta: f64) -> Result<Self> {
        check_admissible(gamma, lambda, theta)?;
        ensure!(delta > 0.0 && delta.is_finite(), InvalidParameter, "delta must be > 0, got {delta}");
        Ok(Self { gamma, lambda, delta, theta })
    }

    pub fn gamma(&self) -> f64 {
        self.gamma
    }

    pub fn lambda(&self) -> f64 {
        self.lambda
    }

    pub fn delta(&self) -> f64 {
        self.delta
    }

    pub fn theta(&self) -> f64 {
        self.theta
    }

    pub fn regime(&self) -> Regime {
        Regime::of(self.gamma)
    }

    /// The tempered stable component `(γ, λ, θ)`.
    pub fn tps(&self) -> TpsParams {
        TpsParams::new(self.gamma, self.lambda, self.theta).expect("validated on construction")
    }

    pub fn with_delta(&self, delta: f64) -> Result<Self> {
        Self::new(self.gamma, self.lambda, delta, self.theta)
    }

    pub fn with_lambda(&self, lambda: f64) -> Result<Self> {
        Self::new(self.gamma, lambda, self.delta, self.theta)
    }

    /// Law at time `t` of the self-similar additive process with index `h`
    /// generated by this law: `TPL(γ, λ t^{hγ}, δ, θ t^{−h})`.
    pub fn self_similar_marginal(&self, h: f64, t: f64) -> Result<Self> {
        ensure!(h > 0.0 && t > 0.0, InvalidParameter, "need h > 0 and t > 0, got h={h}, t={t}");
        Self::new(self.gamma, self.lambda * t.powf(h * self.gamma), self.delta, self.theta * t.powf(-h))
    }

    /// `λ θ^γ`.
    pub fn tilt_mass(&self) -> f64 {
        self.lambda * self.theta.powf(self.gamma)
    }

    /// Laplace exponent `δ log(1 + sgn(γ) λ ((θ + s)^γ − θ^γ))`.
    pub fn exponent(&self, s: f64) -> f64 {
        let inner = self.regime().sign() * self.lambda * tempered_increment(self.gamma, self.theta, s);
        self.delta * inner.ln_1p()
    }

    pub fn laplace(&self, s: f64) -> Result<f64> {
        check_transform_argument(s)?;
        Ok((-self.exponent(s)).exp())
    }

    /// `P(X = 0)`: `(1 + λθ^γ)^{−δ}` for γ < 0, zero otherwise.
    pub fn zero_mass(&self) -> f64 {
        match self.regime() {
            Regime::Minus => (-self.delta * self.tilt_mass().ln_1p()).exp(),
            Regime::Plus => 0.0,
        }
    }

    /// The constant `𝔠 = ((λθ^γ − sgn γ) / λ)^{sgn γ}` of the Lévy density.
    pub fn constant_c(&self) -> f64 {
        let sgn = self.regime().sign();
        let base = (self.tilt_mass() - sgn) / self.lambda;
        match self.regime() {
            Regime::Plus => base,
            Regime::Minus => base.recip(),
        }
    }

    /// Density for γ ∈ (0, 1]:
    /// `e^{−θx} x^{γδ−1} λ^{−δ} E^δ_{γ,γδ}((λθ^γ − 1) x^γ / λ)`.
    pub fn pdf(&self, x: f64) -> Result<f64> {
        ensure!(
            self.regime() == Regime::Plus,
            UnsupportedRegime,
            "gamma = {} < 0: the law has an atom at zero and no density",
            self.gamma
        );
        ensure!(x >= 0.0, Domain, "density argument must be >= 0, got {x}");
        let (g, l, d, th) = (self.gamma, self.lambda, self.delta, self.theta);
        if g == 1.0 {
            return Ok(GammaSS::from_exponent_form(l, d)?.pdf(x));
        }
        if x == 0.0 {
            return Ok(match g * d {
                gd if gd < 1.0 => f64::INFINITY,
                gd if gd == 1.0 => l.powf(-d) / crate::mlfun::lgamma(gd).exp(),
                _ => 0.0,
            });
        }
        let z = (self.tilt_mass() - 1.0) * x.powf(g) / l;
        let ml = ln_mittag_leffler(MlArgs::new(g, g * d, d, z)?)?;
        let ln_p = -th * x + (g * d - 1.0) * x.ln() - d * l.ln() + ml.ln_abs;
        Ok((ml.sign * ln_p.exp()).max(0.0))
    }

    /// Lévy density
    /// `|γ|δ e^{−θx}/x · (E_{|γ|}(𝔠 x^{|γ|}) − 1_{γ<0})`.
    ///
    /// For γ ∈ (0, 1) the series representation needs `λθ^γ ≤ 1`.
    pub fn levy_density(&self, x: f64) -> Result<f64> {
        ensure!(x > 0.0, Domain, "Levy density argument must be > 0, got {x}");
        let (g, d, th) = (self.gamma, self.delta, self.theta);
        if g == 1.0 {
            return Ok(d * (-x / self.lambda).exp() / x);
        }
        let a = g.abs();
        let c = self.constant_c();
        match self.regime() {
            Regime::Plus => {
                ensure!(
                    self.tilt_mass() <= 1.0,
                    OutOfRegion,
                    "Levy density series needs lambda * theta^gamma <= 1, got {}",
                    self.tilt_mass()
                );
                let ml = ln_mittag_leffler(MlArgs::two(a, 1.0, c * x.powf(a))?)?;
                Ok(ml.sign * (a.ln() + d.ln() - th * x - x.ln() + ml.ln_abs).exp())
            }
            Regime::Minus => {
                // E_a(z) − 1 = z E_{a,a+1}(z)
                let z = c * x.powf(a);
                let ml = ln_mittag_leffler(MlArgs::two(a, a + 1.0, z)?)?;
                Ok((a.ln() + d.ln() - th * x - x.ln() + z.ln() + ml.ln_abs).exp())
            }
        }
    }

    /// Total Lévy mass `δ log(1 + λθ^γ)` of the compound Poisson law (γ < 0).
    pub fn levy_mass(&self) -> Result<f64> {
        ensure!(self.regime() == Regime::Minus, UnsupportedRegime, "the Levy measure has infinite mass for gamma > 0");
        Ok(self.delta * self.tilt_mass().ln_1p())
    }

    pub fn mean(&self) -> f64 {
        self.gamma.abs() * self.delta * self.lambda * self.theta.powf(self.gamma - 1.0)
    }

    pub fn variance(&self) -> f64 {
        let m = self.mean();
        m * (1.0 - self.gamma) / self.theta + m * m / self.delta
    }

    /// Cumulant `κ_n = |γ|δ θ^{−n} g_{n−1}(x)`, with
    /// `g_n = x|γ| g'_{n−1} + n g_{n−1}`, `g_0 = 1/(1−x)` (γ > 0) or
    /// `x/(1−x)` (γ < 0), and `x = 𝔠θ^{−γ}` or `𝔠θ^γ` respectively.
    ///
    /// `g_n` is kept exactly as `P_n(x) / (1 − x)^{n+1}`. The rational form
    /// is the analytic continuation of the cumulant series, so it is
    /// evaluated for every admissible `x`.
    pub fn cumulant(&self, n: u32) -> Result<CumulantReport> {
        ensure!(n >= 1, InvalidParameter, "cumulant order must be >= 1, got {n}");
        ensure!(self.theta > 0.0, Precondition, "cumulants need theta > 0, got {}", self.theta);
        let a = self.gamma.abs();
        let regime = self.regime();
        let x = match regime {
            Regime::Plus => 1.0 - 1.0 / self.tilt_mass(),
            Regime::Minus => {
                let m = self.tilt_mass();
                m / (1.0 + m)
            }
        };
        let mut p: Vec<f64> = match regime {
            Regime::Plus => vec![1.0],
            Regime::Minus => vec![0.0, 1.0],
        };
        // p / (1 − x)^{m+1} is g_m.
        for m in 0..(n - 1) as usize {
            let mf = (m + 1) as f64;
            let mut next = vec![0.0; p.len() + 1];
            let dp: Vec<f64> = p.iter().enumerate().skip(1).map(|(i, c)| i as f64 * c).collect();
            // x|γ| (P'(1 − x) + (m+1) P) + (m+1) P (1 − x)
            for (i, c) in dp.iter().enumerate() {
                next[i + 1] += a * c;
                next[i + 2] -= a * c;
            }
            for (i, c) in p.iter().enumerate() {
                next[i + 1] += a * mf * c;
                next[i] += mf * c;
                next[i + 1] -= mf * c;
            }
            p = next;
        }
        let num = p.iter().rev().fold(0.0, |acc, c| acc * x + c);
        // 1 − x written without cancellation.
        let one_minus_x = match regime {
            Regime::Plus => 1.0 / self.tilt_mass(),
            Regime::Minus => 1.0 / (1.0 + self.tilt_mass()),
        };
        let g = num / one_minus_x.powi(n as i32);
        let value = a * self.delta * self.theta.powi(-(n as i32)) * g;
        Ok(CumulantReport { order: n, value, regime })
    }
}

impl std::fmt::Display for TplParams {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "TPL(gamma={}, lambda={}, delta={}, theta={})", self.gamma, self.lambda, self.delta, self.theta)
    }
}
