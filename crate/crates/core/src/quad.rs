//! Adaptive Gauss–Kronrod (21-point) quadrature on finite and half-infinite
//! intervals. Used for the normalisation, transform and mass checks that back
//! the closed-form densities.

use std::cmp::Ordering;
use std::collections::BinaryHeap;

use crate::error::{Result, TplError};

const XGK: [f64; 11] = [
    0.995_657_163_025_808_1,
    0.973_906_528_517_171_7,
    0.930_157_491_355_708_2,
    0.865_063_366_688_984_5,
    0.780_817_726_586_416_9,
    0.679_409_568_299_024_4,
    0.562_757_134_668_604_7,
    0.433_395_394_129_247_2,
    0.294_392_862_701_460_2,
    0.148_874_338_981_631_2,
    0.0,
];
const WGK: [f64; 11] = [
    0.011_694_638_867_371_874,
    0.032_558_162_307_964_73,
    0.054_755_896_574_352,
    0.075_039_674_810_919_95,
    0.093_125_454_583_697_6,
    0.109_387_158_802_297_64,
    0.123_491_976_262_065_85,
    0.134_709_217_311_473_33,
    0.142_775_938_577_060_08,
    0.147_739_104_901_338_49,
    0.149_445_554_002_916_9,
];
// Gauss weights for the odd-indexed Kronrod nodes (1, 3, 5, 7, 9).
const WG: [f64; 5] = [
    0.066_671_344_308_688_14,
    0.149_451_349_150_580_6,
    0.219_086_362_515_982_04,
    0.269_266_719_309_996_35,
    0.295_524_224_714_752_87,
];

const MAX_INTERVALS: usize = 20_000;

/// Result of an adaptive integration.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Quadrature {
    pub value: f64,
    pub error_estimate: f64,
    pub intervals: usize,
}

#[derive(Debug)]
struct Piece {
    a: f64,
    b: f64,
    value: f64,
    error: f64,
}

impl PartialEq for Piece {
    fn eq(&self, other: &Self) -> bool {
        self.error == other.error
    }
}
impl Eq for Piece {}
impl PartialOrd for Piece {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}
impl Ord for Piece {
    fn cmp(&self, other: &Self) -> Ordering {
        self.error.total_cmp(&other.error)
    }
}

fn gk21<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64) -> (f64, f64) {
    let centre = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    let fc = f(centre);
    let mut kronrod = fc * WGK[10];
    let mut gauss = 0.0;
    for (j, (&x, &w)) in XGK[..10].iter().zip(&WGK[..10]).enumerate() {
        let dx = half * x;
        let pair = f(centre - dx) + f(centre + dx);
        kronrod += w * pair;
        if j % 2 == 1 {
            gauss += WG[j / 2] * pair;
        }
    }
    let value = kronrod * half;
    let error = ((kronrod - gauss) * half).abs();
    (value, error)
}

/// Integrates `f` over `[a, b]` until the summed error estimate is below
/// `max(abs_tol, rel_tol·|I|)`.
pub fn integrate<F: Fn(f64) -> f64>(f: F, a: f64, b: f64, abs_tol: f64, rel_tol: f64) -> Result<Quadrature> {
    if !(a.is_finite() && b.is_finite()) {
        return Err(TplError::Domain(format!("finite interval required, got [{a}, {b}]")));
    }
    if a == b {
        return Ok(Quadrature { value: 0.0, error_estimate: 0.0, intervals: 0 });
    }
    let (lo, hi, sign) = if a < b { (a, b, 1.0) } else { (b, a, -1.0) };
    let (v, e) = gk21(&f, lo, hi);
    if !v.is_finite() {
        return Err(TplError::Domain(format!("integrand not finite on [{lo}, {hi}]")));
    }
    let mut heap = BinaryHeap::new();
    heap.push(Piece { a: lo, b: hi, value: v, error: e });
    let mut total = v;
    let mut total_err = e;
    let mut count = 1;
    while total_err > abs_tol.max(rel_tol * total.abs()) {
        if count >= MAX_INTERVALS {
            return Err(TplError::Domain(format!(
                "quadrature did not converge on [{lo}, {hi}]: estimate {total}, error {total_err}"
            )));
        }
        let worst = heap.pop().expect("heap holds at least one interval");
        let mid = 0.5 * (worst.a + worst.b);
        if mid <= worst.a || mid >= worst.b {
            // Interval exhausted at machine resolution; accept its estimate.
            heap.push(Piece { error: 0.0, ..worst });
            total_err = heap.iter().map(|p| p.error).sum();
            if heap.iter().all(|p| p.error == 0.0) {
                break;
            }
            continue;
        }
        let (v1, e1) = gk21(&f, worst.a, mid);
        let (v2, e2) = gk21(&f, mid, worst.b);
        if !(v1.is_finite() && v2.is_finite()) {
            return Err(TplError::Domain(format!("integrand not finite on [{}, {}]", worst.a, worst.b)));
        }
        total += v1 + v2 - worst.value;
        total_err += e1 + e2 - worst.error;
        heap.push(Piece { a: worst.a, b: mid, value: v1, error: e1 });
        heap.push(Piece { a: mid, b: worst.b, value: v2, error: e2 });
        count += 1;
        if count % 64 == 0 {
            // Resynchronise the running sums against accumulated rounding.
            total = heap.iter().map(|p| p.value).sum();
            total_err = heap.iter().map(|p| p.error).sum();
        }
    }
    let value: f64 = heap.iter().map(|p| p.value).sum();
    let error_estimate: f64 = heap.iter().map(|p| p.error).sum();
    Ok(Quadrature { value: sign * value, error_estimate, intervals: count })
}

/// Integrates `f` over `[a, ∞)` via `x = a + t/(1-t)` on `t ∈ [0, 1)`.
pub fn integrate_to_infinity<F: Fn(f64) -> f64>(f: F, a: f64, abs_tol: f64, rel_tol: f64) -> Result<Quadrature> {
    let g = |t: f64| {
        if t >= 1.0 {
            return 0.0;
        }
        let one_minus = 1.0 - t;
        let x = a + t / one_minus;
        let v = f(x) / (one_minus * one_minus);
        if x.is_infinite() && v.is_nan() {
            0.0
        } else {
            v
        }
    };
    integrate(g, 0.0, 1.0, abs_tol, rel_tol)
}

/// `∫₀^∞ f`, split at `split` so that the bulk and tail are integrated separately.
pub fn integrate_half_line<F: Fn(f64) -> f64>(f: F, split: f64, abs_tol: f64, rel_tol: f64) -> Result<f64> {
    let head = integrate(&f, 0.0, split, 0.5 * abs_tol, rel_tol)?;
    let tail = integrate_to_infinity(&f, split, 0.5 * abs_tol, rel_tol)?;
    Ok(head.value + tail.value)
}
