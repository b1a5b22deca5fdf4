//! Trajectories on time grids: TPL Lévy paths under three representations,
//! negative binomial paths, the OU process with TPL stationary law and the
//! self-similar additive (Sato) process.

use std::io::{self, Write};

use crate::error::{ensure, Result};
use crate::laws::{nb_gamma_target, GammaSS, LmlParams, NbParams, Regime, TmlParams, TplParams, TpsParams};
use crate::quad;
use crate::samplers::{
    gamma_variate, poisson, sample_lml, sample_nb_count, sample_tml_with, sample_tpl, uniform, RngState, TmlMethod,
};
use rand::RngCore;

/// Strictly increasing finite times starting at 0.
#[derive(Debug, Clone, PartialEq)]
pub struct TimeGrid {
    times: Vec<f64>,
}

impl TimeGrid {
    pub fn new(times: Vec<f64>) -> Result<Self> {
        ensure!(times.len() >= 2, InvalidParameter, "a grid needs at least two points, got {}", times.len());
        ensure!(times[0] == 0.0, InvalidParameter, "grids start at t = 0, got {}", times[0]);
        ensure!(
            times.iter().all(|t| t.is_finite()) && times.windows(2).all(|w| w[1] > w[0]),
            InvalidParameter,
            "grid times must be finite and strictly increasing"
        );
        Ok(Self { times })
    }

    /// `steps` equal cells on `[0, t_max]`.
    pub fn uniform(t_max: f64, steps: usize) -> Result<Self> {
        ensure!(t_max > 0.0 && t_max.is_finite(), InvalidParameter, "t_max must be > 0, got {t_max}");
        ensure!(steps >= 1, InvalidParameter, "need at least one step");
        Self::new((0..=steps).map(|k| t_max * k as f64 / steps as f64).collect())
    }

    pub fn times(&self) -> &[f64] {
        &self.times
    }

    pub fn len(&self) -> usize {
        self.times.len()
    }

    pub fn is_empty(&self) -> bool {
        self.times.is_empty()
    }

    pub fn t_max(&self) -> f64 {
        *self.times.last().expect("non-empty grid")
    }

    /// `(t_k, t_{k+1})` pairs.
    pub fn cells(&self) -> impl Iterator<Item = (f64, f64)> + '_ {
        self.times.windows(2).map(|w| (w[0], w[1]))
    }
}

/// Path values on a grid.
#[derive(Debug, Clone, PartialEq)]
pub struct SamplePath {
    grid: TimeGrid,
    values: Vec<f64>,
}

impl SamplePath {
    pub fn new(grid: TimeGrid, values: Vec<f64>) -> Result<Self> {
        ensure!(
            grid.len() == values.len(),
            InvalidParameter,
            "grid has {} points but {} values",
            grid.len(),
            values.len()
        );
        Ok(Self { grid, values })
    }

    pub fn grid(&self) -> &TimeGrid {
        &self.grid
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn last(&self) -> f64 {
        *self.values.last().expect("non-empty path")
    }

    pub fn increments(&self) -> Vec<f64> {
        self.values.windows(2).map(|w| w[1] - w[0]).collect()
    }

    /// CSV with header `t,value`, 17 significant digits.
    pub fn write_csv<W: Write>(&self, mut w: W) -> io::Result<()> {
        writeln!(w, "t,value")?;
        for (t, v) in self.grid.times.iter().zip(&self.values) {
            writeln!(w, "{t:.16e},{v:.16e}")?;
        }
        Ok(())
    }
}

/// How increments of a TPL Lévy path are generated.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Representation {
    /// Tempered stable subordinator run on a gamma clock.
    GammaTps,
    /// Compound Poisson with LML jumps (γ < 0 only).
    CppLml,
    /// Gamma process on a negative binomial clock. The representation fixes
    /// `π = 1/(1 + λθ^γ)` for γ < 0 and `π = 1/(λθ^γ)` for γ > 0, so the
    /// latter needs `λθ^γ ≥ 1`.
    NbGamma,
}

type IncrementSampler = Box<dyn Fn(f64, &mut RngState) -> Result<f64>>;

fn levy_increment_sampler(p: &TplParams, rep: Representation) -> Result<IncrementSampler> {
    let p = *p;
    match rep {
        Representation::GammaTps => Ok(Box::new(move |dt, rng| sample_tpl(&p, dt, rng))),
        Representation::CppLml => {
            ensure!(p.regime() == Regime::Minus, Precondition, "the compound Poisson representation needs gamma < 0");
            let rate = p.levy_mass()?;
            let jumps = LmlParams::new(-p.gamma(), p.constant_c(), p.theta())?;
            Ok(Box::new(move |dt, rng| {
                let n = poisson(rate * dt, rng)?;
                (0..n).try_fold(0.0, |acc, _| Ok(acc + sample_lml(&jumps, rng)?.value))
            }))
        }
        Representation::NbGamma => {
            ensure!(p.theta() > 0.0, Precondition, "the negative binomial representation needs theta > 0");
            let m = p.tilt_mass();
            let pi = match p.regime() {
                Regime::Minus => 1.0 / (1.0 + m),
                Regime::Plus => {
                    ensure!(
                        m >= 1.0,
                        Precondition,
                        "the negative binomial representation needs lambda * theta^gamma >= 1 for gamma > 0, got {m}"
                    );
                    1.0 / m
                }
            };
            let (b, z, _) = nb_gamma_target(p.regime(), p.gamma(), 1.0 / p.theta(), p.delta(), pi)?;
            Ok(Box::new(move |dt, rng| nb_gamma_increment(&b, &z, dt, rng)))
        }
    }
}

fn nb_gamma_increment(b: &NbParams, z: &GammaSS, dt: f64, rng: &mut RngState) -> Result<f64> {
    let clock = b.mu() * dt + b.alpha() * sample_nb_count(b, dt, rng)? as f64;
    Ok(gamma_variate(z.shape() * clock, 1.0 / z.rate(), rng))
}

/// TPL Lévy path with independent `TPL(γ, λ, δΔt, θ)` increments.
pub fn tpl_levy_path(p: &TplParams, grid: &TimeGrid, rep: Representation, rng: &mut RngState) -> Result<SamplePath> {
    let step = levy_increment_sampler(p, rep)?;
    let mut values = Vec::with_capacity(grid.len());
    let mut x = 0.0;
    values.push(x);
    for (s, t) in grid.cells() {
        x += step(t - s, rng)?;
        values.push(x);
    }
    SamplePath::new(grid.clone(), values)
}

/// Negative binomial path. The lattice count is accumulated exactly, so
/// `value − μt` is `α` times an integer.
pub fn nb_path(p: &NbParams, grid: &TimeGrid, rng: &mut RngState) -> Result<SamplePath> {
    let mut count = 0u64;
    let mut values = Vec::with_capacity(grid.len());
    values.push(0.0);
    for (s, t) in grid.cells() {
        count = count.saturating_add(sample_nb_count(p, t - s, rng)?);
        values.push(p.mu() * t + p.alpha() * count as f64);
    }
    SamplePath::new(grid.clone(), values)
}

/// Initial value of an OU path.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum OuStart {
    Stationary,
    Value(f64),
}

/// Time stepping for the OU solution.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum OuScheme {
    /// Jump times inside each cell are drawn, so the grid values have the
    /// exact law.
    #[default]
    Exact,
    /// `X_{k+1} = X_k − αX_kΔ + ΔZ`.
    Euler,
}

/// OU process `dX = −αX dt + dZ(αt)` whose stationary law is the TPL law.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OuConfig {
    tpl: TplParams,
    alpha: f64,
    start: OuStart,
}

impl OuConfig {
    /// Needs γ ∈ (0, 1] and `λθ^γ ≤ 1`; at `λθ^γ = 1` the jumps are exponential.
    pub fn new(tpl: TplParams, alpha: f64, start: OuStart) -> Result<Self> {
        ensure!(tpl.regime() == Regime::Plus, Precondition, "the OU driver needs gamma in (0, 1], got {}", tpl.gamma());
        ensure!(tpl.theta() > 0.0, Precondition, "the OU driver needs theta > 0");
        ensure!(
            tpl.tilt_mass() <= 1.0,
            Precondition,
            "the OU driver needs lambda * theta^gamma <= 1, got {}",
            tpl.tilt_mass()
        );
        ensure!(alpha > 0.0 && alpha.is_finite(), InvalidParameter, "mean-reversion rate must be > 0, got {alpha}");
        if let OuStart::Value(x) = start {
            ensure!(x >= 0.0 && x.is_finite(), InvalidParameter, "initial value must be >= 0, got {x}");
        }
        Ok(Self { tpl, alpha, start })
    }

    pub fn tpl(&self) -> &TplParams {
        &self.tpl
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    pub fn start(&self) -> OuStart {
        self.start
    }

    /// Jump rate `αδγ` of the driver.
    pub fn jump_rate(&self) -> f64 {
        self.alpha * self.tpl.delta() * self.tpl.gamma()
    }

    /// Jump law `TML(γ, −𝔠, θ)`.
    pub fn jump_law(&self) -> TmlParams {
        let c = (-self.tpl.constant_c()).max(0.0);
        TmlParams::new(self.tpl.gamma(), c, self.tpl.theta()).expect("validated OU configuration")
    }

    /// Default burn-in `5/α` for non-stationary starts.
    pub fn burn_in(&self) -> f64 {
        5.0 / self.alpha
    }
}

/// `αδγ λs(θ+s)^{γ−1} / (1 + λ((θ+s)^γ − θ^γ))`.
pub fn ou_driver_exponent(cfg: &OuConfig, s: f64) -> f64 {
    let p = cfg.tpl();
    let (g, l, th) = (p.gamma(), p.lambda(), p.theta());
    let inc = crate::laws::tempered_increment(g, th, s);
    cfg.jump_rate() * l * s * (th + s).powf(g - 1.0) / (1.0 + l * inc)
}

/// `αδγ(1 − L_TML(s))`, the compound Poisson form of the same exponent.
pub fn ou_driver_exponent_cpp(cfg: &OuConfig, s: f64) -> Result<f64> {
    Ok(cfg.jump_rate() * (1.0 - cfg.jump_law().laplace(s)?))
}

/// Lévy density `−α k'(x)` of the driver, `k(x) = γδ e^{−θx} E_γ(𝔠x^γ)`.
/// Differentiating the series term by term gives `αγδ` times the TML density.
pub fn ou_background_levy_density(cfg: &OuConfig, x: f64) -> Result<f64> {
    ensure!(x > 0.0, Domain, "Levy density argument must be > 0, got {x}");
    Ok(cfg.jump_rate() * cfg.jump_law().pdf(x)?)
}

/// `k(x) = γδ e^{−θx} E_γ(𝔠x^γ)`, so that the TPL Lévy density is `k(x)/x`.
pub fn ou_k_function(cfg: &OuConfig, x: f64) -> Result<f64> {
    Ok(cfg.tpl().gamma() * cfg.tpl().delta() * cfg.jump_law().survival(x)?)
}

/// OU path. One key is drawn from `rng` and each cell reads its own substream
/// of it, so runs started from equal generator states share their random
/// numbers cell by cell even when the law parameters differ.
pub fn ou_path(cfg: &OuConfig, grid: &TimeGrid, scheme: OuScheme, rng: &mut RngState) -> Result<SamplePath> {
    let key = rng.next_u64();
    let rng = rng.substream(key);
    let jumps = cfg.jump_law();
    let rate = cfg.jump_rate();
    let alpha = cfg.alpha();
    let mut x = match cfg.start() {
        OuStart::Value(v) => v,
        OuStart::Stationary => sample_tpl(cfg.tpl(), 1.0, &mut rng.substream(u64::MAX))?,
    };
    let mut values = Vec::with_capacity(grid.len());
    values.push(x);
    for (k, (s, t)) in grid.cells().enumerate() {
        let mut cell = rng.substream(k as u64);
        let dt = t - s;
        let n = poisson(rate * dt, &mut cell)?;
        let mut added = 0.0;
        for _ in 0..n {
            let tau = s + dt * uniform(&mut cell);
            let u = sample_tml_with(&jumps, TmlMethod::Mixture, &mut cell)?;
            added += match scheme {
                OuScheme::Exact => (-alpha * (t - tau)).exp() * u,
                OuScheme::Euler => u,
            };
        }
        x = match scheme {
            OuScheme::Exact => (-alpha * dt).exp() * x + added,
            OuScheme::Euler => x - alpha * x * dt + added,
        };
        values.push(x);
    }
    SamplePath::new(grid.clone(), values)
}

/// The self-similar additive process with unit-time law `TPL(γ, λ, δ, θ)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SatoConfig {
    tpl: TplParams,
    h: f64,
    eps: f64,
}

impl SatoConfig {
    /// Needs γ ∈ (0, 1), θ > 0, `λθ^γ ≤ 1`, `H > 0` and `eps > 0`.
    pub fn new(tpl: TplParams, h: f64, eps: f64) -> Result<Self> {
        let g = tpl.gamma();
        ensure!(g > 0.0 && g < 1.0, Precondition, "the Sato construction needs gamma in (0, 1), got {g}");
        ensure!(tpl.theta() > 0.0, Precondition, "the Sato construction needs theta > 0");
        ensure!(
            tpl.tilt_mass() <= 1.0,
            Precondition,
            "the Sato construction needs lambda * theta^gamma <= 1, got {}",
            tpl.tilt_mass()
        );
        ensure!(h > 0.0 && h.is_finite(), InvalidParameter, "Hurst index must be > 0, got {h}");
        ensure!(eps > 0.0 && eps.is_finite(), InvalidParameter, "truncation level must be > 0, got {eps}");
        Ok(Self { tpl, h, eps })
    }

    pub fn tpl(&self) -> &TplParams {
        &self.tpl
    }

    pub fn h(&self) -> f64 {
        self.h
    }

    pub fn eps(&self) -> f64 {
        self.eps
    }

    /// Law of `X^H(t)`: `TPL(γ, λt^{Hγ}, δ, θt^{−H})`.
    pub fn marginal(&self, t: f64) -> Result<TplParams> {
        self.tpl.self_similar_marginal(self.h, t)
    }

    /// Mean of the increment over `(s, t]`.
    pub fn mean_increment(&self, s: f64, t: f64) -> f64 {
        self.tpl.mean() * (t.powf(self.h) - s.powf(self.h))
    }

    /// Bound `2γδ·eps` on `E|X − X_eps|` at every grid time, where `X_eps`
    /// replaces jumps below `eps` by their mean.
    pub fn truncation_bound(&self) -> f64 {
        2.0 * self.tpl.gamma() * self.tpl.delta() * self.eps
    }

    fn jump_law(&self) -> TmlParams {
        let c = (-self.tpl.constant_c()).max(0.0);
        TmlParams::new(self.tpl.gamma(), c, self.tpl.theta()).expect("validated Sato configuration")
    }
}

/// A Sato path with its truncation bound.
#[derive(Debug, Clone, PartialEq)]
pub struct SatoPath {
    pub path: SamplePath,
    pub truncation_bound: f64,
}

/// Sato path on `grid`.
///
/// The first cell `(0, t_1]` is drawn from the marginal law at `t_1`. Over
/// `(s, t]` with `s > 0` the increment is compound Poisson: writing
/// `k(y) = γδ e^{−θy} E_γ(𝔠y^γ)` for the TPL Lévy density `k(y)/y`, the
/// increment's Lévy density is `(k(t^{−H}x) − k(s^{−H}x))/x`, which is the
/// law of `τ^H U` at rate `γδH log(t/s)`, with `log τ` uniform on
/// `(log s, log t)` and `U ~ TML(γ, −𝔠, θ)`. Jumps below `eps` are replaced
/// by their mean `∫_0^eps (k(t^{−H}x) − k(s^{−H}x)) dx`.
pub fn sato_path(cfg: &SatoConfig, grid: &TimeGrid, rng: &mut RngState) -> Result<SatoPath> {
    for (s, t) in grid.cells() {
        let m = cfg.mean_increment(s, t);
        ensure!(
            cfg.eps <= 0.1 * m,
            Config,
            "truncation level {} exceeds 10% of the mean increment {m:e} on ({s}, {t}]",
            cfg.eps
        );
    }
    let compensators = sato_compensators(cfg, grid)?;
    sato_path_with(cfg, grid, &compensators, rng)
}

/// Small-jump means `∫_0^eps (k(t^{−H}x) − k(s^{−H}x)) dx` for each cell;
/// the first entry is unused.
pub fn sato_compensators(cfg: &SatoConfig, grid: &TimeGrid) -> Result<Vec<f64>> {
    let (g, d, h) = (cfg.tpl.gamma(), cfg.tpl.delta(), cfg.h);
    let jumps = cfg.jump_law();
    let k = |y: f64| -> f64 { g * d * jumps.survival(y).unwrap_or(f64::NAN) };
    grid.cells()
        .enumerate()
        .map(|(i, (s, t))| {
            if i == 0 {
                return Ok(0.0);
            }
            let (at, as_) = (t.powf(-h), s.powf(-h));
            Ok(quad::integrate(|y| k(at * y) - k(as_ * y), 0.0, cfg.eps, 1e-300, 1e-10)?.value)
        })
        .collect()
}

/// [`sato_path`] with precomputed [`sato_compensators`], for ensembles.
pub fn sato_path_with(cfg: &SatoConfig, grid: &TimeGrid, compensators: &[f64], rng: &mut RngState) -> Result<SatoPath> {
    ensure!(compensators.len() + 1 == grid.len(), InvalidParameter, "one compensator per grid cell is needed");
    let (g, d, h, eps) = (cfg.tpl.gamma(), cfg.tpl.delta(), cfg.h, cfg.eps);
    let jumps = cfg.jump_law();
    let mut values = Vec::with_capacity(grid.len());
    values.push(0.0);
    let mut x = 0.0;
    for (i, (s, t)) in grid.cells().enumerate() {
        if i == 0 {
            x = sample_tpl(&cfg.marginal(t)?, 1.0, rng)?;
        } else {
            let n = poisson(g * d * h * (t / s).ln(), rng)?;
            let (ls, lt) = (s.ln(), t.ln());
            for _ in 0..n {
                let tau = (ls + (lt - ls) * uniform(rng)).exp();
                let j = tau.powf(h) * sample_tml_with(&jumps, TmlMethod::Mixture, rng)?;
                if j >= eps {
                    x += j;
                }
            }
            x += compensators[i];
        }
        values.push(x);
    }
    Ok(SatoPath { path: SamplePath::new(grid.clone(), values)?, truncation_bound: cfg.truncation_bound() })
}

/// Largest residual of `φ_{X^H_t}(s) = φ_Z(φ_{Y^H_t}(s))`, with
/// `Y^H_t ~ TPS(γ, λt^{Hγ}, θt^{−H})` and `Z ~ Gamma(δ, 1)`.
pub fn sato_subordinated_identity(cfg: &SatoConfig, s_grid: &[f64], t_grid: &[f64]) -> Result<f64> {
    let z = GammaSS::new(cfg.tpl.delta(), 1.0)?;
    let mut worst: f64 = 0.0;
    for &t in t_grid {
        ensure!(t > 0.0, Domain, "time must be > 0, got {t}");
        let x = cfg.marginal(t)?;
        let y = TpsParams::new(x.gamma(), x.lambda(), x.theta())?;
        for &s in s_grid {
            ensure!(s >= 0.0, Domain, "transform argument must be >= 0, got {s}");
            // the defining scaling φ_{X_t}(s) = φ_X(s t^H)
            let scaled = cfg.tpl.exponent(s * t.powf(cfg.h));
            worst = worst.max((x.exponent(s) - z.exponent(y.exponent(s))).abs());
            worst = worst.max((scaled - x.exponent(s)).abs());
        }
    }
    Ok(worst)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn mean_se(xs: &[f64]) -> (f64, f64) {
        let n = xs.len() as f64;
        let m = xs.iter().sum::<f64>() / n;
        let v = xs.iter().map(|x| (x - m).powi(2)).sum::<f64>() / (n - 1.0);
        (m, (v / n).sqrt())
    }

    #[test]
    fn grid_validation_and_csv() {
        assert!(TimeGrid::new(vec![0.0]).is_err());
        assert!(TimeGrid::new(vec![0.1, 0.2]).is_err());
        assert!(TimeGrid::new(vec![0.0, 0.2, 0.2]).is_err());
        let g = TimeGrid::uniform(1.0, 4).unwrap();
        assert_eq!(g.times(), &[0.0, 0.25, 0.5, 0.75, 1.0]);
        let p = SamplePath::new(g, vec![0.0, 0.1, 0.2, 0.3, 1.0 / 3.0]).unwrap();
        let mut buf = Vec::new();
        p.write_csv(&mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        assert!(text.starts_with("t,value\n0.0000000000000000e0,"));
        let last: f64 = text.lines().last().unwrap().split(',').nth(1).unwrap().parse().unwrap();
        assert_eq!(last, 1.0 / 3.0);
    }

    #[test]
    fn levy_paths_are_nondecreasing() {
        let grid = TimeGrid::uniform(1.0, 20).unwrap();
        let p = TplParams::new(-1.0, 1.0, 1.0, 1.0).unwrap();
        let mut rng = RngState::new(1, 0);
        for rep in [Representation::GammaTps, Representation::CppLml, Representation::NbGamma] {
            let path = tpl_levy_path(&p, &grid, rep, &mut rng).unwrap();
            assert_eq!(path.values()[0], 0.0);
            assert!(path.increments().iter().all(|&d| d >= 0.0));
        }
    }

    #[test]
    fn representation_preconditions() {
        let grid = TimeGrid::uniform(1.0, 2).unwrap();
        let mut rng = RngState::new(1, 0);
        let plus = TplParams::new(0.5, 1.0, 1.0, 0.5).unwrap();
        assert!(tpl_levy_path(&plus, &grid, Representation::CppLml, &mut rng).is_err());
        assert!(tpl_levy_path(&plus, &grid, Representation::NbGamma, &mut rng).is_err());
        let heavy = TplParams::new(0.5, 4.0, 1.0, 1.0).unwrap();
        assert!(tpl_levy_path(&heavy, &grid, Representation::NbGamma, &mut rng).is_ok());
    }

    #[test]
    fn driver_exponent_forms_and_derivative_identity() {
        let tpl = TplParams::new(0.7, 0.5, 20.0, 0.5).unwrap();
        let cfg = OuConfig::new(tpl, 25.0, OuStart::Stationary).unwrap();
        assert_eq!(ou_driver_exponent(&cfg, 0.0), 0.0);
        for i in 1..=100 {
            let s = 0.1 * i as f64;
            let a = ou_driver_exponent(&cfg, s);
            let b = ou_driver_exponent_cpp(&cfg, s).unwrap();
            assert!((a - b).abs() < 1e-12 * a.max(1.0), "s={s}: {a} {b}");
            let h = 1e-5 * s;
            let deriv = (tpl.exponent(s + h) - tpl.exponent(s - h)) / (2.0 * h);
            assert!((a - 25.0 * s * deriv).abs() < 1e-6 * a);
        }
    }

    #[test]
    fn background_density_integrates_to_k() {
        let tpl = TplParams::new(0.7, 0.5, 20.0, 0.5).unwrap();
        let cfg = OuConfig::new(tpl, 25.0, OuStart::Stationary).unwrap();
        for x in [0.1, 1.0] {
            let tail =
                quad::integrate_half_line(|y| ou_background_levy_density(&cfg, x + y).unwrap(), 1.0, 1e-12, 1e-12)
                    .unwrap();
            let want = 25.0 * ou_k_function(&cfg, x).unwrap();
            assert!((tail - want).abs() < 1e-6 * want, "{tail} {want}");
        }
        assert!((25.0 * ou_k_function(&cfg, 0.0).unwrap() - cfg.jump_rate()).abs() < 1e-12);
        // numerical derivative of k cross-checks the term-wise differentiation
        let x = 0.8;
        let h = 1e-5;
        let fd = -(ou_k_function(&cfg, x + h).unwrap() - ou_k_function(&cfg, x - h).unwrap()) / (2.0 * h);
        assert!((25.0 * fd - ou_background_levy_density(&cfg, x).unwrap()).abs() < 1e-6);
    }

    #[test]
    fn ou_rejects_outside_region() {
        let tpl = TplParams::new(0.7, 3.0, 1.0, 1.0).unwrap();
        assert!(OuConfig::new(tpl, 1.0, OuStart::Stationary).is_err());
        let boundary = TplParams::new(0.5, 1.0, 1.0, 1.0).unwrap();
        let cfg = OuConfig::new(boundary, 1.0, OuStart::Value(0.0)).unwrap();
        assert_eq!(cfg.jump_law().c(), 0.0);
    }

    #[test]
    fn ou_exact_path_dominates_decay() {
        let tpl = TplParams::new(0.7, 0.5, 20.0, 0.5).unwrap();
        let cfg = OuConfig::new(tpl, 25.0, OuStart::Stationary).unwrap();
        let grid = TimeGrid::uniform(1.0, 1000).unwrap();
        let a = ou_path(&cfg, &grid, OuScheme::Exact, &mut RngState::new(9, 0)).unwrap();
        let b = ou_path(&cfg, &grid, OuScheme::Exact, &mut RngState::new(9, 0)).unwrap();
        assert_eq!(a, b);
        let decay = (-25.0f64 * 1e-3).exp();
        for w in a.values().windows(2) {
            assert!(w[1].is_finite() && w[1] > 0.0 && w[1] >= decay * w[0]);
        }
    }

    #[test]
    fn sato_identity_and_config_errors() {
        let tpl = TplParams::new(0.5, 0.5, 1.0, 1.0).unwrap();
        let cfg = SatoConfig::new(tpl, 0.4, 1e-4).unwrap();
        let r = sato_subordinated_identity(&cfg, &[0.5, 1.0, 2.0], &[0.5, 1.0, 2.0]).unwrap();
        assert!(r < 1e-12, "{r:e}");
        let coarse = SatoConfig::new(tpl, 0.4, 0.5).unwrap();
        let grid = TimeGrid::uniform(2.0, 10).unwrap();
        assert!(matches!(sato_path(&coarse, &grid, &mut RngState::new(1, 0)), Err(crate::TplError::Config(_))));
        assert!(SatoConfig::new(TplParams::new(1.0, 0.5, 1.0, 1.0).unwrap(), 0.4, 1e-4).is_err());
    }

    #[test]
    fn sato_mean_at_two() {
        let tpl = TplParams::new(0.5, 0.5, 1.0, 1.0).unwrap();
        let cfg = SatoConfig::new(tpl, 0.4, 1e-4).unwrap();
        let grid = TimeGrid::uniform(2.0, 4).unwrap();
        let mut rng = RngState::new(3, 0);
        let comp = sato_compensators(&cfg, &grid).unwrap();
        let xs: Vec<f64> =
            (0..20_000).map(|_| sato_path_with(&cfg, &grid, &comp, &mut rng).unwrap().path.last()).collect();
        let (m, se) = mean_se(&xs);
        let want = cfg.marginal(2.0).unwrap().mean();
        assert!((m - want).abs() < 3.0 * se + cfg.truncation_bound(), "{m} {want} {se}");
    }
}
