//! Adaptive Gauss–Kronrod quadrature on finite and semi-infinite intervals.
//!
//! The finite-interval driver bisects the subinterval with the largest error
//! estimate until the global estimate meets `max(abs, rel * |I|)`. Nodes are
//! strictly interior, so integrands are never evaluated at the endpoints.
//!
//! The semi-infinite driver integrates consecutive panels of doubling width and
//! truncates once a panel contributes nothing at the requested tolerance *and*
//! the integrand at the panel end has dropped below `tail_cutoff` times the
//! largest magnitude seen so far.

use std::cell::Cell;

use crate::error::{Error, Result};
use crate::scalar::Real;

const XGK: [f64; 8] = [
    0.991_455_371_120_812_6,
    0.949_107_912_342_758_5,
    0.864_864_423_359_769_1,
    0.741_531_185_599_394_4,
    0.586_087_235_467_691_1,
    0.405_845_151_377_397_2,
    0.207_784_955_007_898_5,
    0.0,
];
const WGK: [f64; 8] = [
    0.022_935_322_010_529_22,
    0.063_092_092_629_978_55,
    0.104_790_010_322_250_18,
    0.140_653_259_715_525_92,
    0.169_004_726_639_267_9,
    0.190_350_578_064_785_4,
    0.204_432_940_075_298_9,
    0.209_482_141_084_727_83,
];
const WG: [f64; 4] = [
    0.129_484_966_168_869_7,
    0.279_705_391_489_276_7,
    0.381_830_050_505_118_9,
    0.417_959_183_673_469_4,
];

const MAX_PANELS: usize = 96;
/// Geometric panels resolving `[0, first_width]` towards the origin.
const ORIGIN_PANELS: usize = 12;

/// Stopping rule for adaptive integration.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Tolerance<T> {
    pub rel: T,
    pub abs: T,
    /// Bisection budget per finite interval.
    pub max_subdivisions: usize,
}

impl<T: Real> Tolerance<T> {
    pub fn new(rel: T, abs: T) -> Self {
        Tolerance {
            rel,
            abs,
            max_subdivisions: 200,
        }
    }

    /// Relative tolerance clamped to what the scalar type can deliver.
    fn effective_rel(&self) -> T {
        self.rel.max(T::lit(500.0) * T::epsilon())
    }
}

/// Result of one quadrature.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Integral<T> {
    pub value: T,
    pub abs_error: T,
    pub evaluations: usize,
    pub converged: bool,
}

impl<T: Real> Integral<T> {
    fn zero() -> Self {
        Integral {
            value: T::zero(),
            abs_error: T::zero(),
            evaluations: 0,
            converged: true,
        }
    }

    /// Converts a non-converged result into [`Error::Quadrature`].
    pub fn require(self, context: impl FnOnce() -> String) -> Result<Self> {
        if self.converged {
            Ok(self)
        } else {
            Err(Error::Quadrature {
                context: context(),
                value: self.value.as_f64(),
                abs_error: self.abs_error.as_f64(),
                evaluations: self.evaluations,
            })
        }
    }
}

struct Segment<T> {
    a: T,
    b: T,
    value: T,
    error: T,
}

fn rescale_error<T: Real>(err: T, res_abs: T, res_asc: T) -> T {
    let mut scaled = err.abs();
    if res_asc != T::zero() && scaled != T::zero() {
        let scale = (T::lit(200.0) * scaled / res_asc).powf(T::lit(1.5));
        scaled = if scale < T::one() { res_asc * scale } else { res_asc };
    }
    if res_abs > T::min_positive_value() / (T::lit(50.0) * T::epsilon()) {
        let min_err = T::lit(50.0) * T::epsilon() * res_abs;
        if min_err > scaled {
            scaled = min_err;
        }
    }
    scaled
}

/// 15-point Kronrod rule with embedded 7-point Gauss estimate.
fn gauss_kronrod_15<T, F>(f: &F, a: T, b: T) -> (T, T)
where
    T: Real,
    F: Fn(T) -> T,
{
    let half = T::lit(0.5);
    let center = half * (a + b);
    let half_len = half * (b - a);
    let f_center = f(center);

    let mut res_g = f_center * T::lit(WG[3]);
    let mut res_k = f_center * T::lit(WGK[7]);
    let mut res_abs = res_k.abs();
    let mut fv1 = [T::zero(); 7];
    let mut fv2 = [T::zero(); 7];

    for j in 0..7 {
        let dx = half_len * T::lit(XGK[j]);
        let f1 = f(center - dx);
        let f2 = f(center + dx);
        fv1[j] = f1;
        fv2[j] = f2;
        let w = T::lit(WGK[j]);
        res_k = res_k + w * (f1 + f2);
        res_abs = res_abs + w * (f1.abs() + f2.abs());
        if j % 2 == 1 {
            res_g = res_g + T::lit(WG[j / 2]) * (f1 + f2);
        }
    }

    let mean = res_k * half;
    let mut res_asc = T::lit(WGK[7]) * (f_center - mean).abs();
    for j in 0..7 {
        res_asc = res_asc + T::lit(WGK[j]) * ((fv1[j] - mean).abs() + (fv2[j] - mean).abs());
    }

    let result = res_k * half_len;
    let res_abs = res_abs * half_len.abs();
    let res_asc = res_asc * half_len.abs();
    let err = rescale_error((res_k - res_g) * half_len, res_abs, res_asc);
    (result, err)
}

/// Integrates `f` over `[a, b]`.
pub fn integrate<T, F>(f: F, a: T, b: T, tol: &Tolerance<T>) -> Integral<T>
where
    T: Real,
    F: Fn(T) -> T,
{
    if a == b {
        return Integral::zero();
    }
    let rel = tol.effective_rel();
    let (value, error) = gauss_kronrod_15(&f, a, b);
    let mut evaluations = 15;
    let mut segments = vec![Segment { a, b, value, error }];
    let mut total = value;
    let mut total_err = error;

    loop {
        let target = tol.abs.max(rel * total.abs());
        if total_err <= target {
            return Integral {
                value: total,
                abs_error: total_err,
                evaluations,
                converged: true,
            };
        }
        if segments.len() > tol.max_subdivisions {
            break;
        }
        let worst = segments
            .iter()
            .enumerate()
            .max_by(|(_, x), (_, y)| x.error.partial_cmp(&y.error).unwrap_or(std::cmp::Ordering::Equal))
            .map(|(i, _)| i)
            .unwrap_or(0);
        let seg = segments.swap_remove(worst);
        let mid = T::lit(0.5) * (seg.a + seg.b);
        if mid <= seg.a || mid >= seg.b {
            // interval exhausted at machine resolution
            segments.push(seg);
            break;
        }
        let (v1, e1) = gauss_kronrod_15(&f, seg.a, mid);
        let (v2, e2) = gauss_kronrod_15(&f, mid, seg.b);
        evaluations += 30;
        total = total - seg.value + v1 + v2;
        total_err = total_err - seg.error + e1 + e2;
        segments.push(Segment {
            a: seg.a,
            b: mid,
            value: v1,
            error: e1,
        });
        segments.push(Segment {
            a: mid,
            b: seg.b,
            value: v2,
            error: e2,
        });
    }

    // recompute sums to shed accumulated rounding in the running totals
    let value = segments.iter().fold(T::zero(), |s, x| s + x.value);
    let abs_error = segments.iter().fold(T::zero(), |s, x| s + x.error);
    let converged = abs_error <= tol.abs.max(rel * value.abs());
    Integral {
        value,
        abs_error,
        evaluations,
        converged,
    }
}

/// Integrates `f` over `[a, ∞)` by panels of doubling width starting at `first_width`.
pub fn integrate_to_infinity<T, F>(
    f: F,
    a: T,
    first_width: T,
    tol: &Tolerance<T>,
    tail_cutoff: T,
) -> Integral<T>
where
    T: Real,
    F: Fn(T) -> T,
{
    let running_max = Cell::new(T::zero());
    let tracked = |x: T| {
        let y = f(x);
        if y.abs() > running_max.get() {
            running_max.set(y.abs());
        }
        y
    };

    let rel = tol.effective_rel();
    let mut out: Integral<T> = Integral::zero();
    let mut start = a;
    let mut width = first_width;

    for _ in 0..MAX_PANELS {
        let end = start + width;
        let panel = integrate(&tracked, start, end, tol);
        out.value = out.value + panel.value;
        out.abs_error = out.abs_error + panel.abs_error;
        out.evaluations += panel.evaluations;
        out.converged &= panel.converged;

        let negligible = panel.value.abs() <= rel * out.value.abs() + tol.abs;
        let f_end = tracked(end).abs();
        out.evaluations += 1;
        if negligible && f_end <= tail_cutoff * running_max.get() {
            return out;
        }
        if !end.is_finite() {
            break;
        }
        start = end;
        width = width + width;
    }
    out.converged = false;
    out
}

/// Integrates `f` over `[0, ∞)`, resolving features near the origin.
///
/// `[0, first_width]` is split at `first_width / 4^k`, `k = 1..12`, so narrow
/// structure close to zero is not stepped over; the remainder is handled by
/// [`integrate_to_infinity`].
pub fn integrate_half_line<T, F>(f: F, first_width: T, tol: &Tolerance<T>, tail_cutoff: T) -> Integral<T>
where
    T: Real,
    F: Fn(T) -> T,
{
    let quarter = T::lit(0.25);
    let mut edges = Vec::with_capacity(ORIGIN_PANELS + 2);
    edges.push(T::zero());
    let mut x = first_width;
    for _ in 0..ORIGIN_PANELS {
        x = x * quarter;
    }
    for _ in 0..=ORIGIN_PANELS {
        edges.push(x);
        x = x * T::lit(4.0);
    }
    let mut out: Integral<T> = Integral::zero();
    for w in edges.windows(2) {
        let panel = integrate(&f, w[0], w[1], tol);
        out.value = out.value + panel.value;
        out.abs_error = out.abs_error + panel.abs_error;
        out.evaluations += panel.evaluations;
        out.converged &= panel.converged;
    }
    let tail = integrate_to_infinity(&f, first_width, first_width, tol, tail_cutoff);
    out.value = out.value + tail.value;
    out.abs_error = out.abs_error + tail.abs_error;
    out.evaluations += tail.evaluations;
    out.converged &= tail.converged;
    out
}
