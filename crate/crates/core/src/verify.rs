//! Monte Carlo and quadrature oracle harness.
//!
//! A [`McReport`] passes when `|statistic − target| ≤ k·tol`. Transform and
//! moment comparisons use the standard error as `tol`; goodness-of-fit tests
//! report the KS or chi-square statistic against target 0 with `tol` the
//! critical value at level 0.01 and `k = 1`, so passing means `p ≥ 0.01`.

use std::fmt;
use std::str::FromStr;

use statrs::distribution::{ChiSquared, ContinuousCDF};

use crate::error::{ensure, Result, TplError};
use crate::laws::{
    corollary_identity, nb_gamma_representation_identity, ss_identity, subordination_identity, GammaSS, LmlParams,
    NbParams, Regime, SubordinationForm, TmlParams, TplParams, TpsParams,
};
use crate::paths::{
    ou_driver_exponent, ou_driver_exponent_cpp, sato_subordinated_identity, OuConfig, OuStart, SatoConfig,
};
use crate::samplers::{
    sample_gamma, sample_lml, sample_logarithmic, sample_nb_increment, sample_positive_stable, sample_tml,
    sample_tml_with, sample_tpl, sample_tps, uniform, RngState, TmlMethod,
};

/// Level of every goodness-of-fit test.
pub const LEVEL: f64 = 0.01;
/// Default SE multiplier.
pub const K_DEFAULT: f64 = 3.0;
/// SE multiplier for batteries of more than [`LARGE_BATTERY`] comparisons.
pub const K_LARGE: f64 = 4.0;
pub const LARGE_BATTERY: usize = 50;

/// One check: `name statistic target tol n pass seed k`, tab separated.
#[derive(Debug, Clone, PartialEq)]
pub struct McReport {
    pub name: String,
    pub statistic: f64,
    pub target: f64,
    pub tol: f64,
    pub n: u64,
    pub pass: bool,
    pub seed: u64,
    pub k: f64,
}

impl McReport {
    pub fn new(name: impl Into<String>, statistic: f64, target: f64, tol: f64, k: f64, n: u64, seed: u64) -> Self {
        let pass = (statistic - target).abs() <= k * tol;
        Self { name: name.into(), statistic, target, tol, n, pass, seed, k }
    }

    /// Deterministic check `|residual| ≤ tol`.
    pub fn residual(name: impl Into<String>, residual: f64, tol: f64) -> Self {
        Self::new(name, residual, 0.0, tol, 1.0, 0, 0)
    }
}

impl fmt::Display for McReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{}\t{:.16e}\t{:.16e}\t{:.16e}\t{}\t{}\t{}\t{}",
            self.name, self.statistic, self.target, self.tol, self.n, self.pass, self.seed, self.k
        )
    }
}

impl FromStr for McReport {
    type Err = TplError;

    fn from_str(line: &str) -> Result<Self> {
        let fields: Vec<&str> = line.split('\t').collect();
        ensure!(fields.len() == 8, InvalidParameter, "report line needs 8 tab-separated fields, got {}", fields.len());
        let num = |i: usize| -> Result<f64> {
            fields[i].parse().map_err(|_| TplError::InvalidParameter(format!("bad number {:?} in report", fields[i])))
        };
        let int = |i: usize| -> Result<u64> {
            fields[i].parse().map_err(|_| TplError::InvalidParameter(format!("bad integer {:?} in report", fields[i])))
        };
        let pass = fields[5]
            .parse()
            .map_err(|_| TplError::InvalidParameter(format!("bad pass flag {:?} in report", fields[5])))?;
        Ok(Self {
            name: fields[0].to_string(),
            statistic: num(1)?,
            target: num(2)?,
            tol: num(3)?,
            n: int(4)?,
            pass,
            seed: int(6)?,
            k: num(7)?,
        })
    }
}

/// Sample mean and its standard error.
pub fn mean_and_se(xs: &[f64]) -> (f64, f64) {
    let n = xs.len() as f64;
    let m = xs.iter().sum::<f64>() / n;
    let v = xs.iter().map(|x| (x - m).powi(2)).sum::<f64>() / (n - 1.0);
    (m, (v / n).sqrt())
}

/// Draws `n` variates from `sampler`.
pub fn draw<F>(n: usize, rng: &mut RngState, mut sampler: F) -> Result<Vec<f64>>
where
    F: FnMut(&mut RngState) -> Result<f64>,
{
    (0..n).map(|_| sampler(rng)).collect()
}

/// Empirical Laplace transform `(1/n) Σ e^{−sX_j}` against `transform(s)`.
pub fn laplace_compare(
    name: &str,
    samples: &[f64],
    transform: impl Fn(f64) -> Result<f64>,
    s_grid: &[f64],
    k: f64,
    seed: u64,
) -> Result<Vec<McReport>> {
    ensure!(samples.len() >= 2, InvalidParameter, "need at least two samples");
    s_grid
        .iter()
        .map(|&s| {
            let ys: Vec<f64> = samples.iter().map(|x| (-s * x).exp()).collect();
            let (m, se) = mean_and_se(&ys);
            Ok(McReport::new(format!("{name}/laplace@{s}"), m, transform(s)?, se, k, samples.len() as u64, seed))
        })
        .collect()
}

/// Sample mean and variance against `κ₁`, `κ₂`. The variance SE is
/// `sqrt((m₄ − s⁴)/n)`.
pub fn moment_compare(name: &str, samples: &[f64], mean: f64, variance: f64, k: f64, seed: u64) -> Vec<McReport> {
    let n = samples.len() as f64;
    let (m, se) = mean_and_se(samples);
    let s2 = samples.iter().map(|x| (x - m).powi(2)).sum::<f64>() / (n - 1.0);
    let m4 = samples.iter().map(|x| (x - m).powi(4)).sum::<f64>() / n;
    let se2 = ((m4 - s2 * s2).max(0.0) / n).sqrt();
    vec![
        McReport::new(format!("{name}/mean"), m, mean, se, k, n as u64, seed),
        McReport::new(format!("{name}/variance"), s2, variance, se2, k, n as u64, seed),
    ]
}

/// `Q(λ) = 2 Σ_{j≥1} (−1)^{j−1} e^{−2j²λ²}`, the asymptotic KS tail.
pub fn kolmogorov_tail(lambda: f64) -> f64 {
    if lambda < 0.2 {
        return 1.0;
    }
    let mut sum = 0.0;
    for j in 1..=100 {
        let jf = j as f64;
        let term = (-2.0 * jf * jf * lambda * lambda).exp();
        sum += if j % 2 == 1 { term } else { -term };
        if term < 1e-18 {
            break;
        }
    }
    (2.0 * sum).clamp(0.0, 1.0)
}

fn ks_scale(ne: f64) -> f64 {
    ne.sqrt() + 0.12 + 0.11 / ne.sqrt()
}

/// `λ` with `Q(λ) = level`.
fn kolmogorov_quantile(level: f64) -> f64 {
    let (mut lo, mut hi) = (0.2, 5.0);
    for _ in 0..100 {
        let mid = 0.5 * (lo + hi);
        if kolmogorov_tail(mid) > level {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    0.5 * (lo + hi)
}

/// Result of a goodness-of-fit test.
#[derive(Debug, Clone, PartialEq)]
pub struct GofReport {
    pub report: McReport,
    pub p_value: f64,
}

fn ks_report(name: String, d: f64, ne: f64, n: u64, seed: u64) -> GofReport {
    let scale = ks_scale(ne);
    let p_value = kolmogorov_tail(scale * d);
    let crit = kolmogorov_quantile(LEVEL) / scale;
    GofReport { report: McReport::new(name, d, 0.0, crit, 1.0, n, seed), p_value }
}

/// One-sample Kolmogorov–Smirnov test against `cdf`.
pub fn ks_compare(name: &str, samples: &[f64], cdf: impl Fn(f64) -> Result<f64>, seed: u64) -> Result<GofReport> {
    ensure!(!samples.is_empty(), InvalidParameter, "KS test needs samples");
    let mut xs = samples.to_vec();
    xs.sort_by(f64::total_cmp);
    let n = xs.len() as f64;
    let mut d: f64 = 0.0;
    for (i, &x) in xs.iter().enumerate() {
        let f = cdf(x)?;
        d = d.max(f - i as f64 / n).max((i + 1) as f64 / n - f);
    }
    Ok(ks_report(format!("{name}/ks"), d, n, xs.len() as u64, seed))
}

/// Two-sample Kolmogorov–Smirnov test.
pub fn ks_two_sample(name: &str, a: &[f64], b: &[f64], seed: u64) -> Result<GofReport> {
    ensure!(!a.is_empty() && !b.is_empty(), InvalidParameter, "KS test needs samples");
    let mut x = a.to_vec();
    let mut y = b.to_vec();
    x.sort_by(f64::total_cmp);
    y.sort_by(f64::total_cmp);
    let (n, m) = (x.len() as f64, y.len() as f64);
    let (mut i, mut j) = (0usize, 0usize);
    let mut d: f64 = 0.0;
    while i < x.len() && j < y.len() {
        let v = x[i].min(y[j]);
        while i < x.len() && x[i] <= v {
            i += 1;
        }
        while j < y.len() && y[j] <= v {
            j += 1;
        }
        d = d.max((i as f64 / n - j as f64 / m).abs());
    }
    Ok(ks_report(format!("{name}/ks2"), d, n * m / (n + m), (x.len() + y.len()) as u64, seed))
}

/// Pearson chi-square test of `observed` counts against `probs`, which must
/// sum to one (pool the tail into the last cell).
pub fn chi_square_compare(name: &str, observed: &[u64], probs: &[f64], seed: u64) -> Result<GofReport> {
    ensure!(
        observed.len() == probs.len() && observed.len() >= 2,
        InvalidParameter,
        "need matching cells, at least two"
    );
    let n: u64 = observed.iter().sum();
    let chi: f64 = observed
        .iter()
        .zip(probs)
        .map(|(&o, &p)| {
            let e = p * n as f64;
            (o as f64 - e).powi(2) / e
        })
        .sum();
    let dist = ChiSquared::new((observed.len() - 1) as f64).map_err(|e| TplError::InvalidParameter(e.to_string()))?;
    let crit = dist.inverse_cdf(1.0 - LEVEL);
    Ok(GofReport { report: McReport::new(format!("{name}/chi2"), chi, 0.0, crit, 1.0, n, seed), p_value: dist.sf(chi) })
}

/// How the summands of the geometric compound are built in [`gid_mc_check`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GidConstruction {
    /// `Z ~ TPL(γ, λ(1 − p), 1, θ)`, from `1/L_X = 1 + φ_TPS`.
    Tempered,
    /// `Z = (1 − p)^{1/γ} X'` with `X' ~ TPL(γ, λ, 1, θ)`: strict geometric
    /// stability, valid only for `θ = 0`.
    StableScaling,
}

/// Empirical Laplace transform of `Σ_{k ≤ G} Z_k`, `P(G = k) = p^{k−1}(1 − p)`,
/// against `TPL(γ, λ, 1, θ)` at `s ∈ {0.5, 1, 2}`.
#[allow(clippy::too_many_arguments)]
pub fn gid_mc_check(
    gamma: f64,
    lambda: f64,
    theta: f64,
    p: f64,
    n: usize,
    construction: GidConstruction,
    k: f64,
    rng: &mut RngState,
) -> Result<Vec<McReport>> {
    ensure!(p > 0.0 && p < 1.0, InvalidParameter, "geometric parameter must lie in (0, 1), got {p}");
    let target = TplParams::new(gamma, lambda, 1.0, theta)?;
    let (z, scale) = match construction {
        GidConstruction::Tempered => (TplParams::new(gamma, lambda * (1.0 - p), 1.0, theta)?, 1.0),
        GidConstruction::StableScaling => (target, (1.0 - p).powf(1.0 / gamma)),
    };
    let seed = rng.seed();
    let xs = draw(n, rng, |r| {
        let g = 1 + (uniform(r).ln() / p.ln()).floor() as u64;
        (0..g).try_fold(0.0, |acc, _| Ok(acc + scale * sample_tpl(&z, 1.0, r)?))
    })?;
    let label = match construction {
        GidConstruction::Tempered => "tempered",
        GidConstruction::StableScaling => "stable-scaling",
    };
    laplace_compare(&format!("gid/{label}/theta={theta}"), &xs, |s| target.laplace(s), &[0.5, 1.0, 2.0], k, seed)
}

/// Suite settings.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SuiteConfig {
    pub seed: u64,
    pub n: usize,
    /// Plants a defect in one law of the battery, which must then fail.
    pub planted_defect: bool,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        Self { seed: 1, n: 100_000, planted_defect: false }
    }
}

impl SuiteConfig {
    pub fn quick(seed: u64) -> Self {
        Self { seed, n: 10_000, planted_defect: false }
    }
}

/// Outcome of [`run_suite`].
#[derive(Debug, Clone, PartialEq)]
pub struct SuiteOutcome {
    pub reports: Vec<McReport>,
    /// Checks run against deliberately wrong targets; each must fail.
    pub controls: Vec<McReport>,
}

impl SuiteOutcome {
    pub fn all_pass(&self) -> bool {
        self.reports.iter().all(|r| r.pass)
    }

    pub fn controls_rejected(&self) -> bool {
        self.controls.iter().all(|r| !r.pass)
    }

    /// 0 when every check passes and every control fails, 3 otherwise.
    pub fn exit_code(&self) -> i32 {
        if self.all_pass() && self.controls_rejected() {
            0
        } else {
            3
        }
    }

    /// Report lines; controls are prefixed with `control/`.
    pub fn lines(&self) -> Vec<String> {
        self.reports.iter().chain(&self.controls).map(|r| r.to_string()).collect()
    }
}

const S3: [f64; 3] = [0.5, 1.0, 2.0];

type LawSampler = Box<dyn Fn(&mut RngState) -> Result<f64>>;
type LawTransform = Box<dyn Fn(f64) -> Result<f64>>;

/// Every law of the transform battery: name, sampler, transform.
pub fn transform_battery() -> Result<Vec<(String, LawSampler, LawTransform)>> {
    let mut out: Vec<(String, LawSampler, LawTransform)> = Vec::new();
    for (g, l, d, th) in [
        (0.5, 1.0, 2.0, 1.0),
        (0.8, 0.5, 1.5, 0.5),
        (0.3, 2.0, 0.7, 2.0),
        (-1.0, 1.0, 1.0, 1.0),
        (-2.2, 10.0, 1.0, 0.5),
        (-0.5, 2.0, 3.0, 1.5),
    ] {
        let p = TplParams::new(g, l, d, th)?;
        out.push((p.to_string(), Box::new(move |r| sample_tpl(&p, 1.0, r)), Box::new(move |s| p.laplace(s))));
    }
    for (g, l, th) in
        [(0.5, 1.0, 0.25), (0.7, 2.0, 1.0), (0.3, 0.5, 3.0), (-1.0, 1.0, 1.0), (-2.0, 0.5, 2.0), (-0.5, 3.0, 1.0)]
    {
        let p = TpsParams::new(g, l, th)?;
        out.push((p.to_string(), Box::new(move |r| sample_tps(&p, 1.0, r)), Box::new(move |s| p.laplace(s, 1.0))));
    }
    for (a, c, th) in [(2.2, 0.2, 0.5), (1.0, 0.6, 1.0), (0.7, 0.3, 1.2)] {
        let p = LmlParams::new(a, c, th)?;
        out.push((
            format!("lml(a={a},c={c},theta={th})"),
            Box::new(move |r| Ok(sample_lml(&p, r)?.value)),
            Box::new(move |s| p.laplace(s)),
        ));
    }
    for (a, c, th) in [(0.7, 0.3, 1.0), (1.0, 0.5, 1.5), (0.4, 1.0, 0.5)] {
        let p = TmlParams::new(a, c, th)?;
        out.push((
            format!("tml(a={a},c={c},theta={th})"),
            Box::new(move |r| sample_tml_with(&p, TmlMethod::Mixture, r)),
            Box::new(move |s| p.laplace(s)),
        ));
    }
    for (pi, kappa, alpha, mu) in [(0.4, 2.0, 1.0, 0.0), (0.7, 1.0, 0.5, 0.3), (0.2, 0.5, 2.0, 1.0)] {
        let p = NbParams::new(pi, kappa, alpha, mu)?;
        out.push((
            format!("nb(pi={pi},kappa={kappa},alpha={alpha},mu={mu})"),
            Box::new(move |r| sample_nb_increment(&p, 1.0, r)),
            Box::new(move |s| p.laplace(s)),
        ));
    }
    for (shape, rate) in [(2.5, 0.5), (1.0, 2.0), (0.3, 1.0)] {
        let g = GammaSS::new(shape, rate)?;
        out.push((
            format!("gamma(shape={shape},rate={rate})"),
            Box::new(move |r| Ok(sample_gamma(&g, r))),
            Box::new(move |s| g.laplace(s)),
        ));
    }
    Ok(out)
}

/// TPL parameter sets used for moment checks, three per regime.
pub fn moment_sets() -> Result<Vec<TplParams>> {
    [
        (0.5, 1.0, 2.0, 1.0),
        (0.8, 0.5, 1.5, 0.5),
        (1.0, 2.0, 3.0, 0.7),
        (-1.0, 1.0, 1.0, 1.0),
        (-2.2, 10.0, 1.0, 0.5),
        (-0.5, 2.0, 3.0, 1.5),
    ]
    .into_iter()
    .map(|(g, l, d, th)| TplParams::new(g, l, d, th))
    .collect()
}

/// Deterministic identity residuals, each required below `1e-12`.
pub fn identity_reports() -> Result<Vec<McReport>> {
    let grid: Vec<f64> = (1..=50).map(|i| 0.2 * i as f64).collect();
    let tol = 1e-12;
    let mut out = Vec::new();
    for p in [TplParams::new(0.5, 1.0, 2.0, 1.0)?, TplParams::new(-2.2, 10.0, 1.0, 0.5)?] {
        for form in [SubordinationForm::Standard, SubordinationForm::ScaleOnGamma] {
            out.push(McReport::residual(
                format!("identity/subordination/{form:?}{p}"),
                subordination_identity(&p, &grid, form)?,
                tol,
            ));
        }
        out.push(McReport::residual(format!("identity/corollary{p}"), corollary_identity(&p, 3.0, 0.4, &grid)?, tol));
    }
    out.push(McReport::residual("identity/self-similarity", ss_identity(0.6, 2.0, 3.0, 3.0, 2.0, 1.7, &grid)?, tol));
    out.push(McReport::residual(
        "identity/nb-gamma/PLUS",
        nb_gamma_representation_identity(Regime::Plus, 0.5, 2.0, 1.0, 0.4, &grid)?,
        tol,
    ));
    out.push(McReport::residual(
        "identity/nb-gamma/MINUS",
        nb_gamma_representation_identity(Regime::Minus, -1.0, 2.0, 1.0, 0.4, &grid)?,
        tol,
    ));
    for p in [TplParams::new(0.5, 1.0, 1.0, 1.0)?, TplParams::new(-1.5, 2.0, 1.0, 0.3)?] {
        out.push(McReport::residual(
            format!("identity/gid-witness{p}"),
            crate::laws::geometric_stability_check(&p, &grid)?,
            tol,
        ));
    }
    let ou = OuConfig::new(TplParams::new(0.7, 0.5, 20.0, 0.5)?, 25.0, OuStart::Stationary)?;
    let mut worst: f64 = 0.0;
    for &s in &grid {
        let a = ou_driver_exponent(&ou, s);
        worst = worst.max((a - ou_driver_exponent_cpp(&ou, s)?).abs() / a.max(1.0));
    }
    out.push(McReport::residual("identity/ou-driver-forms", worst, tol));
    let sato = SatoConfig::new(TplParams::new(0.5, 0.5, 1.0, 1.0)?, 0.4, 1e-4)?;
    out.push(McReport::residual(
        "identity/sato-subordination",
        sato_subordinated_identity(&sato, &S3, &[0.5, 1.0, 2.0])?,
        tol,
    ));
    Ok(out)
}

fn tagged(mut r: McReport, prefix: &str) -> McReport {
    r.name = format!("{prefix}/{}", r.name);
    r
}

/// Runs the full battery with per-item streams derived from the master seed.
pub fn run_suite(cfg: &SuiteConfig) -> Result<SuiteOutcome> {
    let master = RngState::new(cfg.seed, 0);
    let mut stream = 0u64;
    let mut next = || {
        stream += 1;
        master.substream(stream)
    };
    let laws = transform_battery()?;
    let k = if laws.len() * S3.len() > LARGE_BATTERY { K_LARGE } else { K_DEFAULT };
    let mut reports = Vec::new();
    for (i, (name, sampler, transform)) in laws.iter().enumerate() {
        let mut rng = next();
        let xs = draw(cfg.n, &mut rng, sampler)?;
        if cfg.planted_defect && i == 0 {
            // a sampler that forgot half of its tempering
            let p = TplParams::new(0.5, 1.0, 2.0, 0.5)?;
            let bad = draw(cfg.n, &mut rng, |r| sample_tpl(&p, 1.0, r))?;
            reports.extend(laplace_compare(&format!("planted/{name}"), &bad, transform, &S3, k, cfg.seed)?);
        }
        reports.extend(laplace_compare(name, &xs, transform, &S3, k, cfg.seed)?);
    }
    for p in moment_sets()? {
        let xs = draw(cfg.n, &mut next(), |r| sample_tpl(&p, 1.0, r))?;
        let k1 = p.cumulant(1)?.value;
        let k2 = p.cumulant(2)?.value;
        reports.extend(moment_compare(&format!("moments{p}"), &xs, k1, k2, K_DEFAULT, cfg.seed));
    }
    let ks_n = cfg.n.min(10_000);
    let expo = TmlParams::new(1.0, 0.5, 1.5)?;
    let xs = draw(ks_n, &mut next(), |r| sample_tml(&expo, r))?;
    reports.push(ks_compare("tml(a=1)", &xs, |x| expo.cdf(x), cfg.seed)?.report);
    let tml = TmlParams::new(0.7, 0.3, 1.0)?;
    let xs = draw(ks_n, &mut next(), |r| sample_tml(&tml, r))?;
    reports.push(ks_compare("tml(a=0.7)", &xs, |x| tml.cdf(x), cfg.seed)?.report);
    let g = GammaSS::new(0.3, 1.0)?;
    let xs = draw(ks_n, &mut next(), |r| Ok(sample_gamma(&g, r)))?;
    reports.push(ks_compare("gamma(0.3)", &xs, |x| Ok(g.cdf(x)), cfg.seed)?.report);
    let xs = draw(ks_n, &mut next(), |r| sample_positive_stable(0.5, 1.0, r))?;
    reports.push(ks_compare("levy-smirnov", &xs, |x| crate::laws::positive_stable_cdf(0.5, 1.0, x), cfg.seed)?.report);

    let q = 0.6;
    let mut counts = [0u64; 6];
    let mut rng = next();
    for _ in 0..cfg.n {
        counts[(sample_logarithmic(q, &mut rng)? as usize).min(6) - 1] += 1;
    }
    let mut probs: Vec<f64> = (1..=5).map(|k| crate::laws::logarithmic_pmf(q, k)).collect::<Result<_>>()?;
    probs.push(1.0 - probs.iter().sum::<f64>());
    reports.push(chi_square_compare("logarithmic(q=0.6)", &counts, &probs, cfg.seed)?.report);

    reports.extend(gid_mc_check(0.5, 1.0, 0.0, 0.5, cfg.n, GidConstruction::StableScaling, K_DEFAULT, &mut next())?);
    reports.extend(gid_mc_check(0.5, 1.0, 1.0, 0.5, cfg.n, GidConstruction::Tempered, K_DEFAULT, &mut next())?);
    reports.extend(identity_reports()?);

    let mut controls = Vec::new();
    let wrong = TplParams::new(0.5, 1.0, 2.0, 1.5)?;
    let right = TplParams::new(0.5, 1.0, 2.0, 1.0)?;
    let xs = draw(cfg.n, &mut next(), |r| sample_tpl(&right, 1.0, r))?;
    controls.extend(laplace_compare("wrong-theta", &xs, |s| wrong.laplace(s), &S3, K_DEFAULT, cfg.seed)?);
    controls.extend(moment_compare(
        "inflated-moments",
        &xs,
        1.2 * right.mean(),
        1.5 * right.variance(),
        K_DEFAULT,
        cfg.seed,
    ));
    let ys = draw(ks_n, &mut next(), |r| sample_tml(&expo, r))?;
    controls.push(ks_compare("shifted-cdf", &ys, |x| expo.cdf(x - 0.1), cfg.seed)?.report);
    controls.extend(gid_mc_check(0.5, 1.0, 1.0, 0.5, cfg.n, GidConstruction::StableScaling, K_DEFAULT, &mut next())?);
    let controls = controls.into_iter().map(|r| tagged(r, "control")).collect();
    Ok(SuiteOutcome { reports, controls })
}
