//! Analytic descriptors of the laws: parameter validation, Laplace
//! transforms and exponents, densities, Lévy densities, cumulants, and the
//! subordination identities as checkable residuals.

mod gamma;
mod identities;
mod lml;
mod nb;
mod tml;
mod tpl;
pub(crate) mod tps;

pub use gamma::GammaSS;
pub use identities::{
    corollary_identity, geometric_stability_check, nb_gamma_representation_identity, nb_gamma_target, ss_identity,
    subordination_identity, SubordinationForm,
};
pub use lml::LmlParams;
pub use nb::{logarithmic_pmf, NbParams};
pub use tml::TmlParams;
pub use tpl::{CumulantReport, TplParams};
pub use tps::{positive_stable_cdf, positive_stable_pdf, SeriesValue, TpsParams};

/// Sign regime of the index γ.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Regime {
    /// γ ∈ (0, 1]: absolutely continuous laws, infinite activity.
    Plus,
    /// γ < 0: compound Poisson laws with an atom at zero.
    Minus,
}

impl Regime {
    pub fn of(gamma: f64) -> Self {
        if gamma < 0.0 {
            Regime::Minus
        } else {
            Regime::Plus
        }
    }

    /// `sgn(γ)`.
    pub fn sign(self) -> f64 {
        match self {
            Regime::Plus => 1.0,
            Regime::Minus => -1.0,
        }
    }
}

impl std::fmt::Display for Regime {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Regime::Plus => "PLUS",
            Regime::Minus => "MINUS",
        })
    }
}

/// `(θ + s)^γ − θ^γ` without cancellation for small `s/θ`.
pub(crate) fn tempered_increment(gamma: f64, theta: f64, s: f64) -> f64 {
    if theta == 0.0 {
        return s.powf(gamma);
    }
    theta.powf(gamma) * (gamma * (s / theta).ln_1p()).exp_m1()
}

pub(crate) fn check_admissible(gamma: f64, lambda: f64, theta: f64) -> crate::Result<()> {
    use crate::error::ensure;
    ensure!(
        gamma.is_finite() && gamma != 0.0 && gamma <= 1.0,
        InvalidParameter,
        "gamma must lie in (-inf, 0) or (0, 1], got {gamma}"
    );
    ensure!(lambda > 0.0 && lambda.is_finite(), InvalidParameter, "lambda must be > 0, got {lambda}");
    ensure!(theta >= 0.0 && theta.is_finite(), InvalidParameter, "theta must be >= 0, got {theta}");
    ensure!(gamma > 0.0 || theta > 0.0, InvalidParameter, "gamma < 0 requires theta > 0, got theta = {theta}");
    Ok(())
}

pub(crate) fn check_transform_argument(s: f64) -> crate::Result<()> {
    crate::error::ensure!(s >= 0.0 && s.is_finite(), Domain, "transform argument must be finite and >= 0, got {s}");
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tempered_increment_is_accurate_for_tiny_s() {
        let (g, th, s) = (0.5, 2.0f64, 1e-12);
        let want = g * th.powf(g - 1.0) * s;
        assert!(((tempered_increment(g, th, s) - want) / want).abs() < 1e-10);
        assert_eq!(tempered_increment(0.5, 0.0, 4.0), 2.0);
    }

    #[test]
    fn admissible_region() {
        assert!(check_admissible(-1.0, 1.0, 0.0).is_err());
        assert!(check_admissible(1.5, 1.0, 1.0).is_err());
        assert!(check_admissible(0.0, 1.0, 1.0).is_err());
        assert!(check_admissible(0.5, 0.0, 1.0).is_err());
        assert!(check_admissible(0.5, 1.0, 0.0).is_ok());
        assert!(check_admissible(-2.2, 10.0, 0.5).is_ok());
    }
}
