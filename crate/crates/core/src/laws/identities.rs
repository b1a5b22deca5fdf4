//! Exponent identities behind the subordinated, negative-binomial and
//! geometric representations. Each returns the largest residual over an
//! `s`-grid; exact identities leave only rounding.

use super::{GammaSS, NbParams, Regime, TplParams, TpsParams};
use crate::error::{ensure, Result};

fn max_residual(s_grid: &[f64], f: impl Fn(f64) -> Result<f64>) -> Result<f64> {
    ensure!(!s_grid.is_empty(), InvalidParameter, "s-grid is empty");
    let mut worst: f64 = 0.0;
    for &s in s_grid {
        ensure!(s >= 0.0 && s.is_finite(), Domain, "s-grid points must be >= 0, got {s}");
        worst = worst.max(f(s)?.abs());
    }
    Ok(worst)
}

/// Exponent of `TPL(γ, λ, δ, θ)` from the transform, written out directly.
fn direct_exponent(g: f64, l: f64, d: f64, th: f64, s: f64) -> f64 {
    let sgn = if g < 0.0 { -1.0 } else { 1.0 };
    d * (1.0 + sgn * l * ((th + s).powf(g) - th.powf(g))).ln()
}

/// Which component carries the scale `λ` in `X = Y_Z`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SubordinationForm {
    /// `Y = TPS(γ, λ, θ)` at the times of a `Gamma(shape δ, rate 1)` process.
    Standard,
    /// `Y = TPS(γ, 1, θ)` at the times of a `Gamma(shape δ, rate 1/λ)` process.
    ScaleOnGamma,
}

/// Residual of `φ_X(s) = φ_Z(φ_Y(s))`.
pub fn subordination_identity(p: &TplParams, s_grid: &[f64], form: SubordinationForm) -> Result<f64> {
    let (y, z) = match form {
        SubordinationForm::Standard => (p.tps(), GammaSS::new(p.delta(), 1.0)?),
        SubordinationForm::ScaleOnGamma => {
            (p.tps().with_lambda(1.0)?, GammaSS::from_exponent_form(p.lambda(), p.delta())?)
        }
    };
    max_residual(s_grid, |s| {
        Ok(direct_exponent(p.gamma(), p.lambda(), p.delta(), p.theta(), s) - z.exponent(y.exponent(s)))
    })
}

/// Residual of `φ_{B^c}(φ_X(s)) = κ log(1 + c^H λ s^γ)` for the positive
/// Linnik law `X = PL(γ, λ, δ)` and `B^c = NB(c^{−H}, κ, 1/δ, κ/δ)`.
#[allow(clippy::too_many_arguments)]
pub fn ss_identity(gamma: f64, lambda: f64, delta: f64, kappa: f64, h: f64, c: f64, s_grid: &[f64]) -> Result<f64> {
    ensure!(gamma > 0.0 && gamma <= 1.0, InvalidParameter, "positive Linnik index must lie in (0, 1], got {gamma}");
    ensure!(c > 1.0 && h > 0.0, InvalidParameter, "need c > 1 and H > 0, got c={c}, H={h}");
    let x = TplParams::new(gamma, lambda, delta, 0.0)?;
    let b = NbParams::new(c.powf(-h), kappa, 1.0 / delta, kappa / delta)?;
    max_residual(s_grid, |s| Ok(b.exponent(x.exponent(s)) - kappa * (c.powf(h) * lambda * s.powf(gamma)).ln_1p()))
}

/// Residual of `φ_B(φ_X(s)) = φ_{TPL(γ, λ/π, κ, θ)}(s)` with
/// `B = NB(π, κ, 1/δ, κ/δ)`.
pub fn corollary_identity(p: &TplParams, kappa: f64, pi: f64, s_grid: &[f64]) -> Result<f64> {
    let b = NbParams::new(pi, kappa, 1.0 / p.delta(), kappa / p.delta())?;
    let (g, l, th) = (p.gamma(), p.lambda(), p.theta());
    max_residual(s_grid, |s| Ok(b.exponent(p.exponent(s)) - direct_exponent(g, l / pi, kappa, th, s)))
}

/// Negative binomial subordinator, gamma process and target law of the
/// representation `X = Z_B`:
///
/// * γ ∈ (0, 1]: `B = NB(π, δ, 1, δ)`, target `TPL(γ, θ^γ/π, δ, 1/θ)`;
/// * γ < 0: `B = NB(π, δ, 1, 0)`, target `TPL(γ, θ^γ(1/π − 1), δ, 1/θ)`;
///
/// with `Z` the gamma process of shape `|γ|` and rate `1/θ` per unit time.
pub fn nb_gamma_target(
    regime: Regime,
    gamma: f64,
    theta: f64,
    delta: f64,
    pi: f64,
) -> Result<(NbParams, GammaSS, TplParams)> {
    ensure!(Regime::of(gamma) == regime, InvalidParameter, "gamma = {gamma} is not in the {regime} regime");
    ensure!(theta > 0.0, InvalidParameter, "theta must be > 0, got {theta}");
    let z = GammaSS::new(gamma.abs(), 1.0 / theta)?;
    let (b, lambda) = match regime {
        Regime::Plus => (NbParams::new(pi, delta, 1.0, delta)?, theta.powf(gamma) / pi),
        Regime::Minus => {
            ensure!(pi < 1.0, InvalidParameter, "gamma < 0 needs pi < 1, got {pi}");
            (NbParams::new(pi, delta, 1.0, 0.0)?, theta.powf(gamma) * (1.0 / pi - 1.0))
        }
    };
    Ok((b, z, TplParams::new(gamma, lambda, delta, 1.0 / theta)?))
}

/// Residual of `φ_B(φ_Z(s)) = φ_target(s)` for [`nb_gamma_target`].
pub fn nb_gamma_representation_identity(
    regime: Regime,
    gamma: f64,
    theta: f64,
    delta: f64,
    pi: f64,
    s_grid: &[f64],
) -> Result<f64> {
    let (b, z, target) = nb_gamma_target(regime, gamma, theta, delta, pi)?;
    let (g, l, d, th) = (target.gamma(), target.lambda(), target.delta(), target.theta());
    max_residual(s_grid, |s| Ok(b.exponent(z.exponent(s)) - direct_exponent(g, l, d, th, s)))
}

/// Residual of `1/L_X(s) − 1 = φ_Y(s)` for `δ = 1`, relative to `1 + φ_Y(s)`:
/// the witness exponent of geometric infinite divisibility is the tempered
/// stable exponent.
pub fn geometric_stability_check(p: &TplParams, s_grid: &[f64]) -> Result<f64> {
    ensure!(
        p.delta() == 1.0,
        Precondition,
        "geometric infinite divisibility is established for delta = 1, got {}",
        p.delta()
    );
    let y: TpsParams = p.tps();
    max_residual(s_grid, |s| {
        let phi = y.exponent(s);
        Ok(((1.0 / p.laplace(s)? - 1.0) - phi) / (1.0 + phi))
    })
}
