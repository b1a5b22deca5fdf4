//! Multivariate TPL process: independent tempered stable components run on
//! gamma clocks that share one negative binomial time change.
//!
//! With `B = NB(π, δ, 1, δ)`, `G_i(B) ~ Gamma(shape B, scale λ_i)` and
//! `X_i = Y_i(G_i(B))`, `Y_i = TPS(γ_i, 1, θ_i)`, conditioning on `B` gives
//! `E e^{−⟨s, X_t⟩} = exp(−t φ_B(Σ log(1 + ψ_i(s_i))))` where
//! `ψ_i(s) = sgn γ_i λ_i((θ_i + s)^{γ_i} − θ_i^{γ_i})` and
//! `φ_B(u) = δ log(1 + (e^u − 1)/π)`. Each component is then
//! `TPL(γ_i, λ_i/π, δ, θ_i)`.

use std::io::{self, Write};

use crate::error::{ensure, Result, TplError};
use crate::laws::{NbParams, Regime, TplParams, TpsParams};
use crate::mlfun::lgamma;
use crate::samplers::{gamma_variate, sample_nb_count, sample_tps, RngState};

/// Largest dimension for the subset-sum Lévy density.
pub const MAX_DENSITY_DIM: usize = 10;

#[derive(Debug, Clone, PartialEq)]
pub struct MvTplParams {
    marginals: Vec<TpsParams>,
    delta: f64,
    pi: f64,
}

impl MvTplParams {
    /// `marginals` holds `(γ_i, λ_i, θ_i)`; `π = 1` gives independent components.
    pub fn new(marginals: &[(f64, f64, f64)], delta: f64, pi: f64) -> Result<Self> {
        ensure!(!marginals.is_empty(), InvalidParameter, "dimension must be >= 1");
        ensure!(delta > 0.0 && delta.is_finite(), InvalidParameter, "delta must be > 0, got {delta}");
        ensure!(pi > 0.0 && pi <= 1.0, InvalidParameter, "pi must lie in (0, 1], got {pi}");
        let marginals = marginals.iter().map(|&(g, l, th)| TpsParams::new(g, l, th)).collect::<Result<Vec<_>>>()?;
        Ok(Self { marginals, delta, pi })
    }

    pub fn dim(&self) -> usize {
        self.marginals.len()
    }

    pub fn marginals(&self) -> &[TpsParams] {
        &self.marginals
    }

    pub fn delta(&self) -> f64 {
        self.delta
    }

    pub fn pi(&self) -> f64 {
        self.pi
    }

    /// Law of component `i` at unit time: `TPL(γ_i, λ_i/π, δ, θ_i)`.
    pub fn marginal(&self, i: usize) -> Result<TplParams> {
        let m = self.marginals.get(i).ok_or_else(|| {
            TplError::InvalidParameter(format!("component {i} out of range for dimension {}", self.dim()))
        })?;
        TplParams::new(m.gamma(), m.lambda() / self.pi, self.delta, m.theta())
    }

    fn subordinator(&self) -> NbParams {
        NbParams::new(self.pi, self.delta, 1.0, self.delta).expect("validated parameters")
    }
}

/// `δ log(1 − 1/π + (1/π) Π_i (1 + ψ_i(s_i)))`, evaluated as
/// `δ log1p(expm1(Σ log1p ψ_i) / π)`.
pub fn mv_exponent(p: &MvTplParams, s: &[f64]) -> Result<f64> {
    ensure!(s.len() == p.dim(), InvalidParameter, "argument has dimension {} but the law has {}", s.len(), p.dim());
    let mut u = 0.0;
    for (m, &si) in p.marginals.iter().zip(s) {
        ensure!(si >= 0.0 && si.is_finite(), Domain, "transform arguments must be >= 0, got {si}");
        u += m.exponent(si).ln_1p();
    }
    Ok(p.delta * (u.exp_m1() / p.pi).ln_1p())
}

/// `E e^{−⟨s, X_t⟩}`.
pub fn mv_laplace(p: &MvTplParams, s: &[f64], t: f64) -> Result<f64> {
    Ok((-t * mv_exponent(p, s)?).exp())
}

fn univariate_levy(m: &TpsParams, lambda: f64, delta: f64, x: f64) -> Result<f64> {
    TplParams::new(m.gamma(), lambda, delta, m.theta())?.levy_density(x)
}

/// Subset-sum Lévy density
/// `δ Σ_A (−1)^{|A|} Π_{i∈A} u_i(x_i; λ_i) Π_{i∉A} u_i(x_i; λ_i/π) + δ Σ_i u_i(x_i; λ_i)`,
/// with `u_i(·; λ)` the Lévy density of `TPL(γ_i, λ, 1, θ_i)`. The alternating
/// sum is evaluated in its factored form `Π_i (u_i(x_i; λ_i/π) − u_i(x_i; λ_i))`.
///
/// This is the image of the mixing density [`mv_rho_pi_product_form`]; for
/// `d ≥ 2` it differs from the Lévy density of the sampled process, whose
/// interior part is [`mv_levy_density_series`].
pub fn mv_levy_density(p: &MvTplParams, x: &[f64]) -> Result<f64> {
    let d = p.dim();
    ensure!(d <= MAX_DENSITY_DIM, Resource, "subset-sum Levy density is limited to d <= {MAX_DENSITY_DIM}, got {d}");
    ensure!(x.len() == d, InvalidParameter, "argument has dimension {} but the law has {d}", x.len());
    ensure!(x.iter().all(|&v| v > 0.0), Domain, "Levy density arguments must be > 0");
    let mut product = 1.0;
    let mut axes = 0.0;
    for (m, &xi) in p.marginals.iter().zip(x) {
        let base = univariate_levy(m, m.lambda(), 1.0, xi).map_err(as_precondition)?;
        let scaled = univariate_levy(m, m.lambda() / p.pi, 1.0, xi).map_err(as_precondition)?;
        product *= scaled - base;
        axes += base;
    }
    Ok(p.delta * (product + axes))
}

fn as_precondition(e: TplError) -> TplError {
    match e {
        TplError::OutOfRegion(msg) => TplError::Precondition(msg),
        other => other,
    }
}

fn log_sum_series(mut term: impl FnMut(u64) -> Result<f64>) -> Result<f64> {
    let mut best = f64::NEG_INFINITY;
    let mut acc = 0.0;
    let mut since_peak = 0u64;
    for k in 1..=200_000u64 {
        let lt = term(k)?;
        if lt > best {
            acc = acc * (best - lt).exp() + 1.0;
            best = lt;
            since_peak = 0;
        } else {
            acc += (lt - best).exp();
            since_peak += 1;
        }
        if since_peak > 10 && lt - best < -40.0 {
            return Ok(best + acc.ln());
        }
    }
    Err(TplError::Domain("mixing series did not converge".into()))
}

/// Interior Lévy density of the sampled process (γ_i ∈ (0, 1] only):
/// `δ Σ_k ((1 − π)^k / k) Π_i f_i(x_i; k)`, with `f_i(·; k)` the
/// `TPL(γ_i, λ_i, k, θ_i)` density. Each NB jump of size `k` moves every
/// gamma clock by an independent `Gamma(k, λ_i)` time.
pub fn mv_levy_density_series(p: &MvTplParams, x: &[f64]) -> Result<f64> {
    ensure!(x.len() == p.dim(), InvalidParameter, "argument has dimension {} but the law has {}", x.len(), p.dim());
    ensure!(x.iter().all(|&v| v > 0.0), Domain, "Levy density arguments must be > 0");
    ensure!(
        p.marginals.iter().all(|m| m.regime() == Regime::Plus),
        UnsupportedRegime,
        "the series needs component densities, which exist for gamma > 0 only"
    );
    if p.pi == 1.0 {
        return Ok(0.0);
    }
    let q = 1.0 - p.pi;
    let ln = log_sum_series(|k| {
        let kf = k as f64;
        let mut lt = kf * q.ln() - kf.ln();
        for (m, &xi) in p.marginals.iter().zip(x) {
            let f = TplParams::new(m.gamma(), m.lambda(), kf, m.theta())?.pdf(xi)?;
            lt += f.ln();
        }
        Ok(lt)
    })?;
    Ok(p.delta * ln.exp())
}

/// Mixing Lévy density of the clock vector `Z^π = (G_i(B))_i`.
#[derive(Debug, Clone, PartialEq)]
pub struct RhoPiDensity {
    /// Density on the open orthant.
    pub interior: f64,
    /// Density of the part carried by each coordinate axis, `δ e^{−t_i/λ_i}/t_i`.
    pub axes: Vec<f64>,
}

/// Mixing density of `Z^π`. The interior part is
/// `δ Σ_k ((1 − π)^k / k) Π_i Gamma(t_i; shape k, scale λ_i)`, which for
/// `d = 1` is `δ (e^{−πt/λ} − e^{−t/λ}) / t`.
pub fn mv_rho_pi_density(p: &MvTplParams, t: &[f64]) -> Result<RhoPiDensity> {
    ensure!(t.len() == p.dim(), InvalidParameter, "argument has dimension {} but the law has {}", t.len(), p.dim());
    ensure!(t.iter().all(|&v| v > 0.0), Domain, "density arguments must be > 0");
    let axes = p.marginals.iter().zip(t).map(|(m, &ti)| p.delta * (-ti / m.lambda()).exp() / ti).collect();
    let interior = if p.pi == 1.0 {
        0.0
    } else if p.dim() == 1 {
        let (l, ti) = (p.marginals[0].lambda(), t[0]);
        p.delta * (-ti * p.pi / l).exp() * -(-ti * (1.0 - p.pi) / l).exp_m1() / ti
    } else {
        let q = 1.0 - p.pi;
        let ln = log_sum_series(|k| {
            let kf = k as f64;
            let mut lt = kf * q.ln() - kf.ln();
            for (m, &ti) in p.marginals.iter().zip(t) {
                let l = m.lambda();
                lt += (kf - 1.0) * ti.ln() - ti / l - lgamma(kf) - kf * l.ln();
            }
            Ok(lt)
        })?;
        p.delta * ln.exp()
    };
    Ok(RhoPiDensity { interior, axes })
}

/// `δ Π_i (e^{−t_iπ/λ_i} − e^{−t_i/λ_i}) / t_i`, the product-form interior
/// density. It equals the interior of [`mv_rho_pi_density`] only for `d = 1`.
pub fn mv_rho_pi_product_form(p: &MvTplParams, t: &[f64]) -> Result<f64> {
    ensure!(t.len() == p.dim(), InvalidParameter, "argument has dimension {} but the law has {}", t.len(), p.dim());
    Ok(p.delta
        * p.marginals
            .iter()
            .zip(t)
            .map(|(m, &ti)| ((-ti * p.pi / m.lambda()).exp() - (-ti / m.lambda()).exp()) / ti)
            .product::<f64>())
}

/// One draw of `X_t`.
pub fn mv_sample_one(p: &MvTplParams, t: f64, rng: &mut RngState) -> Result<Vec<f64>> {
    ensure!(t > 0.0 && t.is_finite(), Precondition, "time must be > 0, got {t}");
    let b = p.subordinator();
    let clock = b.mu() * t + b.alpha() * sample_nb_count(&b, t, rng)? as f64;
    p.marginals
        .iter()
        .map(|m| {
            let g = gamma_variate(clock, m.lambda(), rng);
            sample_tps(&m.with_lambda(1.0)?, g, rng)
        })
        .collect()
}

/// `n` independent draws of `X_t`.
pub fn mv_sample(p: &MvTplParams, t: f64, n: usize, rng: &mut RngState) -> Result<Vec<Vec<f64>>> {
    (0..n).map(|_| mv_sample_one(p, t, rng)).collect()
}

/// CSV with header `x1,...,xd`, 17 significant digits.
pub fn write_samples_csv<W: Write>(samples: &[Vec<f64>], d: usize, mut w: W) -> io::Result<()> {
    let header: Vec<String> = (1..=d).map(|i| format!("x{i}")).collect();
    writeln!(w, "{}", header.join(","))?;
    for row in samples {
        let cells: Vec<String> = row.iter().map(|v| format!("{v:.16e}")).collect();
        writeln!(w, "{}", cells.join(","))?;
    }
    Ok(())
}

/// Pearson correlation of two columns.
pub fn correlation(samples: &[Vec<f64>], i: usize, j: usize) -> f64 {
    let n = samples.len() as f64;
    let mi = samples.iter().map(|r| r[i]).sum::<f64>() / n;
    let mj = samples.iter().map(|r| r[j]).sum::<f64>() / n;
    let (mut sij, mut sii, mut sjj) = (0.0, 0.0, 0.0);
    for r in samples {
        let (a, b) = (r[i] - mi, r[j] - mj);
        sij += a * b;
        sii += a * a;
        sjj += b * b;
    }
    sij / (sii * sjj).sqrt()
}

/// Output of [`fig2_scenario`].
#[derive(Debug, Clone, PartialEq)]
pub struct Fig2Output {
    pub params: MvTplParams,
    pub samples: Vec<Vec<f64>>,
    /// Observed frequency of a zero in each component.
    pub zero_frequency: [f64; 2],
    /// `P(X_i = 0) = (1 + λθ^γ/π)^{−δ}`.
    pub zero_mass: f64,
    pub correlation: f64,
}

pub const FIG2_ROWS: usize = 5000;

/// 5000 bivariate draws with `γ = −2.2`, `λ = 10`, `θ = 0.5`, `δ = 1`,
/// `π = 0.01` in both components, at `t = 1`.
pub fn fig2_scenario(rng: &mut RngState) -> Result<Fig2Output> {
    let params = MvTplParams::new(&[(-2.2, 10.0, 0.5), (-2.2, 10.0, 0.5)], 1.0, 0.01)?;
    let samples = mv_sample(&params, 1.0, FIG2_ROWS, rng)?;
    let n = samples.len() as f64;
    let zero_frequency = [0, 1].map(|i| samples.iter().filter(|r| r[i] == 0.0).count() as f64 / n);
    let zero_mass = params.marginal(0)?.zero_mass();
    let correlation = correlation(&samples, 0, 1);
    Ok(Fig2Output { params, samples, zero_frequency, zero_mass, correlation })
}
