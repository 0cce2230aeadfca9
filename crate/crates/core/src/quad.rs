//! Globally adaptive Gauss–Kronrod (7/15) quadrature.

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
    0.022_935_322_010_529_224,
    0.063_092_092_629_978_55,
    0.104_790_010_322_250_18,
    0.140_653_259_715_525_92,
    0.169_004_726_639_267_9,
    0.190_350_578_064_785_4,
    0.204_432_940_075_298_9,
    0.209_482_141_084_727_83,
];

// Gauss weights for the odd Kronrod nodes XGK[1], XGK[3], XGK[5], XGK[7].
const WG: [f64; 4] =
    [0.129_484_966_168_869_7, 0.279_705_391_489_276_7, 0.381_830_050_505_118_9, 0.417_959_183_673_469_4];

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadOptions {
    pub abs_tol: f64,
    pub rel_tol: f64,
    pub max_intervals: usize,
}

impl Default for QuadOptions {
    fn default() -> Self {
        Self { abs_tol: 1e-12, rel_tol: 1e-12, max_intervals: 4000 }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadResult<T> {
    pub value: T,
    pub error: T,
    pub intervals: usize,
}

struct Segment<T> {
    a: T,
    b: T,
    value: T,
    error: T,
}

fn kronrod<T: Real, F: Fn(T) -> T>(f: &F, a: T, b: T) -> Segment<T> {
    let half = T::lit(0.5);
    let center = half * (a + b);
    let half_len = half * (b - a);
    let fc = f(center);
    let mut kron = fc * T::lit(WGK[7]);
    let mut gauss = fc * T::lit(WG[3]);
    for k in 0..7 {
        let dx = half_len * T::lit(XGK[k]);
        let sum = f(center - dx) + f(center + dx);
        kron = kron + T::lit(WGK[k]) * sum;
        if k % 2 == 1 {
            gauss = gauss + T::lit(WG[k / 2]) * sum;
        }
    }
    let value = kron * half_len;
    let error = ((kron - gauss) * half_len).abs();
    Segment { a, b, value, error }
}

/// Integrates `f` over `[a, b]`, bisecting the worst interval until the summed
/// error estimate meets `max(abs_tol, rel_tol·|I|)`.
pub fn integrate<T: Real, F: Fn(T) -> T>(f: F, a: T, b: T, opts: &QuadOptions) -> Result<QuadResult<T>> {
    integrate_with_breaks(f, &[a, b], opts)
}

/// Like [`integrate`], with the initial partition given by `breaks`
/// (ascending, first and last are the integration bounds).
pub fn integrate_with_breaks<T: Real, F: Fn(T) -> T>(f: F, breaks: &[T], opts: &QuadOptions) -> Result<QuadResult<T>> {
    if breaks.len() < 2 {
        return Ok(QuadResult { value: T::zero(), error: T::zero(), intervals: 0 });
    }
    if breaks.iter().any(|x| !x.is_finite()) {
        return Err(Error::NonFinite("quadrature bounds".into()));
    }
    let mut segs: Vec<Segment<T>> =
        breaks.windows(2).filter(|w| w[1] != w[0]).map(|w| kronrod(&f, w[0], w[1])).collect();
    if segs.is_empty() {
        return Ok(QuadResult { value: T::zero(), error: T::zero(), intervals: 0 });
    }
    loop {
        let value = segs.iter().fold(T::zero(), |acc, s| acc + s.value);
        let error = segs.iter().fold(T::zero(), |acc, s| acc + s.error);
        if !value.is_finite() || !error.is_finite() {
            return Err(Error::NonFinite("quadrature integrand".into()));
        }
        let target = T::lit(opts.abs_tol).max(T::lit(opts.rel_tol) * value.abs());
        if error <= target {
            return Ok(QuadResult { value, error, intervals: segs.len() });
        }
        let worst = segs
            .iter()
            .enumerate()
            .max_by(|x, y| x.1.error.partial_cmp(&y.1.error).unwrap_or(std::cmp::Ordering::Equal))
            .map(|(i, _)| i)
            .expect("non-empty");
        let s = segs.swap_remove(worst);
        let mid = s.a + (s.b - s.a) * T::lit(0.5);
        if segs.len() + 2 > opts.max_intervals || mid <= s.a || mid >= s.b {
            return Err(Error::Quadrature { achieved: error.to_f64_lossy(), requested: target.to_f64_lossy() });
        }
        segs.push(kronrod(&f, s.a, mid));
        segs.push(kronrod(&f, mid, s.b));
    }
}
