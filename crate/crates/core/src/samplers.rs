//! Random-variate generators. Every sampler takes the generator explicitly;
//! [`RngState`] gives reproducible, independent streams.

use std::f64::consts::PI;

use rand::{Rng, RngCore, SeedableRng};
use rand_chacha::ChaCha12Rng;
use rand_distr::{Distribution, Exp1, Open01};

use crate::error::{ensure, Result, TplError};
use crate::laws::tps::ln_kanter;
use crate::laws::{GammaSS, LmlParams, NbParams, Regime, TmlParams, TplParams, TpsParams};

/// A ChaCha12 generator addressed by `(seed, stream)`.
#[derive(Debug, Clone)]
pub struct RngState {
    seed: u64,
    stream: u64,
    inner: ChaCha12Rng,
}

fn splitmix(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9e37_79b9_7f4a_7c15);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

impl RngState {
    pub fn new(seed: u64, stream: u64) -> Self {
        let mut inner = ChaCha12Rng::seed_from_u64(seed);
        inner.set_stream(stream);
        Self { seed, stream, inner }
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    pub fn stream(&self) -> u64 {
        self.stream
    }

    /// A fresh stream derived from `(seed, stream, k)`; the parent is untouched.
    pub fn substream(&self, k: u64) -> Self {
        Self::new(self.seed, splitmix(self.stream ^ splitmix(k.wrapping_add(1))))
    }
}

impl RngCore for RngState {
    fn next_u32(&mut self) -> u32 {
        self.inner.next_u32()
    }

    fn next_u64(&mut self) -> u64 {
        self.inner.next_u64()
    }

    fn fill_bytes(&mut self, dst: &mut [u8]) {
        self.inner.fill_bytes(dst)
    }
}

/// Uniform on the open interval (0, 1).
pub fn uniform<R: Rng + ?Sized>(rng: &mut R) -> f64 {
    Open01.sample(rng)
}

pub fn exponential<R: Rng + ?Sized>(rng: &mut R) -> f64 {
    Exp1.sample(rng)
}

/// `Gamma(shape, scale)`; shape 0 is the point mass at 0.
pub(crate) fn gamma_variate<R: Rng + ?Sized>(shape: f64, scale: f64, rng: &mut R) -> f64 {
    if shape == 0.0 || scale == 0.0 {
        return 0.0;
    }
    // Marsaglia-Tsang; shapes below one are boosted by U^{1/shape}
    rand_distr::Gamma::new(shape, scale).expect("validated gamma parameters").sample(rng)
}

pub fn sample_gamma<R: Rng + ?Sized>(g: &GammaSS, rng: &mut R) -> f64 {
    gamma_variate(g.shape(), 1.0 / g.rate(), rng)
}

/// Poisson count: inversion for small rates, rejection (PTRS) above 30.
pub fn poisson<R: Rng + ?Sized>(rate: f64, rng: &mut R) -> Result<u64> {
    ensure!(rate >= 0.0 && rate.is_finite(), InvalidParameter, "Poisson rate must be finite and >= 0, got {rate}");
    if rate == 0.0 {
        return Ok(0);
    }
    if rate < 30.0 {
        let u: f64 = rng.random();
        let mut p = (-rate).exp();
        let mut cum = p;
        let mut k = 0u64;
        while u > cum && p > 0.0 {
            k += 1;
            p *= rate / k as f64;
            cum += p;
        }
        return Ok(k);
    }
    let d = rand_distr::Poisson::new(rate).map_err(|e| TplError::InvalidParameter(e.to_string()))?;
    Ok(d.sample(rng) as u64)
}

/// One-sided stable variate with Laplace transform `e^{−λ s^γ}`:
/// `S = λ^{1/γ} (A(U)/E)^{(1−γ)/γ}`, `U` uniform on (0, π), `E` exponential.
pub fn sample_positive_stable<R: Rng + ?Sized>(gamma: f64, lambda: f64, rng: &mut R) -> Result<f64> {
    ensure!(gamma > 0.0 && gamma <= 1.0, InvalidParameter, "stable index must lie in (0, 1], got {gamma}");
    ensure!(lambda >= 0.0 && lambda.is_finite(), InvalidParameter, "stable scale must be >= 0, got {lambda}");
    if gamma == 1.0 || lambda == 0.0 {
        return Ok(lambda);
    }
    Ok(positive_stable_unchecked(gamma, lambda, rng))
}

fn positive_stable_unchecked<R: Rng + ?Sized>(gamma: f64, lambda: f64, rng: &mut R) -> f64 {
    let u = PI * uniform(rng);
    let e = exponential(rng);
    let ln_s = lambda.ln() / gamma + (1.0 - gamma) / gamma * (ln_kanter(gamma, u) - e.ln());
    ln_s.exp()
}

/// Largest number of time slices [`sample_tps`] will use.
pub const MAX_SLICES: f64 = 1e6;
const MAX_TRIALS_PER_SLICE: u64 = 10_000_000;

/// Variate with Laplace exponent `t·φ_Y`.
///
/// γ ∈ (0, 1): `[0, t]` is cut into `m = ⌈tλθ^γ⌉` slices and each slice draws
/// a stable variate of scale `tλ/m`, accepted with probability `e^{−θS}`
/// (expected trials per slice at most `e`). γ < 0: `N ~ Poisson(tλθ^γ)`
/// gamma jumps of shape `−γ` and rate `θ`, summed to `Gamma(−γN, θ)`.
pub fn sample_tps<R: Rng + ?Sized>(p: &TpsParams, t: f64, rng: &mut R) -> Result<f64> {
    ensure!(t >= 0.0 && t.is_finite(), Precondition, "time must be finite and >= 0, got {t}");
    if t == 0.0 {
        return Ok(0.0);
    }
    let (g, l, th) = (p.gamma(), p.lambda(), p.theta());
    let mass = t * p.tilt_mass();
    match p.regime() {
        Regime::Minus => {
            let n = poisson(mass, rng)?;
            Ok(gamma_variate(-g * n as f64, 1.0 / th, rng))
        }
        Regime::Plus if g == 1.0 || th == 0.0 => sample_positive_stable(g, t * l, rng),
        Regime::Plus => {
            let m = mass.ceil().max(1.0);
            if m > MAX_SLICES {
                return Err(TplError::Resource(format!(
                    "tempered stable rejection needs {m:e} slices (t·λθ^γ = {mass:e}); limit is {MAX_SLICES:e}"
                )));
            }
            let scale = t * l / m;
            let mut total = 0.0;
            for _ in 0..m as u64 {
                let mut trials = 0u64;
                loop {
                    let s = positive_stable_unchecked(g, scale, rng);
                    if uniform(rng) <= (-th * s).exp() {
                        total += s;
                        break;
                    }
                    trials += 1;
                    if trials > MAX_TRIALS_PER_SLICE {
                        return Err(TplError::Resource(format!(
                            "rejection exceeded {MAX_TRIALS_PER_SLICE} trials; expected {:.3}",
                            (mass / m).exp()
                        )));
                    }
                }
            }
            Ok(total)
        }
    }
}

/// `TPL(γ, λ, tδ, θ)`: `TPS(γ, 1, θ)` run for the time `λ·Gamma(tδ, 1)`.
pub fn sample_tpl<R: Rng + ?Sized>(p: &TplParams, t: f64, rng: &mut R) -> Result<f64> {
    ensure!(t >= 0.0 && t.is_finite(), Precondition, "time must be finite and >= 0, got {t}");
    let clock = p.lambda() * gamma_variate(t * p.delta(), 1.0, rng);
    sample_tps(&p.tps().with_lambda(1.0)?, clock, rng)
}

/// Logarithmic count with `P(K = k) = q^k / (−k log(1 − q))`, by Kemp's
/// LK algorithm.
pub fn sample_logarithmic<R: Rng + ?Sized>(q: f64, rng: &mut R) -> Result<u64> {
    ensure!(q > 0.0 && q < 1.0, InvalidParameter, "logarithmic parameter must lie in (0, 1), got {q}");
    let v = uniform(rng);
    if v >= q {
        return Ok(1);
    }
    let r = -((-q).ln_1p() * uniform(rng)).exp_m1();
    let r = r.clamp(f64::MIN_POSITIVE, 1.0 - f64::EPSILON);
    if v <= r * r {
        let k = 1.0 + (v.ln() / r.ln()).floor();
        return Ok(if k >= u64::MAX as f64 { u64::MAX } else { k as u64 });
    }
    Ok(if v <= r { 2 } else { 1 })
}

/// One LML variate with the latent logarithmic count when the exact mixture
/// applies.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LmlDraw {
    pub value: f64,
    pub count: Option<u64>,
    /// Set when the numerical inverse-cdf fallback produced the value.
    pub degraded: bool,
}

/// Exact for `c ≥ 0`: expanding `log(1 − q(1 + s/θ)^{−a})` shows the law is
/// `Gamma(aK, θ)` with `K` logarithmic of parameter `q = cθ^{−a}`. For
/// `c < 0` the weights alternate, so the cdf is inverted numerically.
pub fn sample_lml<R: Rng + ?Sized>(p: &LmlParams, rng: &mut R) -> Result<LmlDraw> {
    let (a, th) = (p.a(), p.theta());
    if p.c() == 0.0 {
        let value = gamma_variate(a, 1.0 / th, rng);
        return Ok(LmlDraw { value, count: Some(1), degraded: false });
    }
    if p.c() > 0.0 {
        let k = sample_logarithmic(p.q(), rng)?;
        let value = gamma_variate(a * k as f64, 1.0 / th, rng);
        return Ok(LmlDraw { value, count: Some(k), degraded: false });
    }
    let u = uniform(rng);
    let value = invert_cdf(|x| p.cdf(x), |x| p.pdf(x), u, a / th)?;
    Ok(LmlDraw { value, count: None, degraded: true })
}

fn invert_cdf(cdf: impl Fn(f64) -> Result<f64>, pdf: impl Fn(f64) -> Result<f64>, u: f64, start: f64) -> Result<f64> {
    let (mut lo, mut hi) = (0.0, start.max(1e-300));
    while cdf(hi)? < u {
        lo = hi;
        hi *= 2.0;
        ensure!(hi < 1e300, Domain, "could not bracket the {u} quantile");
    }
    let mut x = 0.5 * (lo + hi);
    for _ in 0..200 {
        let f = cdf(x)? - u;
        if f.abs() < 1e-10 || hi - lo <= 4.0 * f64::EPSILON * hi {
            return Ok(x);
        }
        if f < 0.0 {
            lo = x;
        } else {
            hi = x;
        }
        let d = pdf(x)?;
        let newton = x - f / d;
        x = if d > 0.0 && newton > lo && newton < hi { newton } else { 0.5 * (lo + hi) };
    }
    Err(TplError::Domain(format!("inverse cdf did not converge at level {u}")))
}

/// Which TML generator to use.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum TmlMethod {
    /// Numerical inversion of `1 − e^{−θx} E_a(−cx^a)`.
    #[default]
    InverseCdf,
    /// `min(E/θ, c^{−1/a} E'^{1/a} S_a)` with `S_a` stable of transform
    /// `e^{−s^a}`: since `E[e^{−y S_a^{−a}}] = E_a(−y)`, the second term has
    /// survival `E_a(−cx^a)`.
    Mixture,
}

pub fn sample_tml<R: Rng + ?Sized>(p: &TmlParams, rng: &mut R) -> Result<f64> {
    sample_tml_with(p, TmlMethod::InverseCdf, rng)
}

pub fn sample_tml_with<R: Rng + ?Sized>(p: &TmlParams, method: TmlMethod, rng: &mut R) -> Result<f64> {
    let (a, c, th) = (p.a(), p.c(), p.theta());
    match method {
        TmlMethod::InverseCdf => p.quantile(uniform(rng)),
        TmlMethod::Mixture => {
            if a == 1.0 || c == 0.0 {
                return Ok(exponential(rng) / (th + c));
            }
            let tempered = exponential(rng) / th;
            let s = positive_stable_unchecked(a, 1.0, rng);
            let ml = (exponential(rng) / c).powf(1.0 / a) * s;
            Ok(tempered.min(ml))
        }
    }
}

/// Number of lattice steps in an NB increment over `t`.
pub fn sample_nb_count<R: Rng + ?Sized>(p: &NbParams, t: f64, rng: &mut R) -> Result<u64> {
    ensure!(t >= 0.0 && t.is_finite(), Precondition, "time must be finite and >= 0, got {t}");
    let n = poisson(t * p.jump_rate(), rng)?;
    let q = p.jump_parameter();
    let mut total = 0u64;
    for _ in 0..n {
        total = total.saturating_add(sample_logarithmic(q, rng)?);
    }
    Ok(total)
}

/// `μt + α Σ_{n ≤ N} K_n`, `N ~ Poisson(−κt log π)`, `K_n` logarithmic(1 − π).
pub fn sample_nb_increment<R: Rng + ?Sized>(p: &NbParams, t: f64, rng: &mut R) -> Result<f64> {
    let k = sample_nb_count(p, t, rng)?;
    Ok(p.mu() * t + p.alpha() * k as f64)
}
