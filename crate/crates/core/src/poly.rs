//! Dense univariate polynomials with ascending coefficients.

use serde::{Deserialize, Serialize};

use crate::scalar::{Real, Scalar};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Poly<T> {
    coeffs: Vec<T>,
}

impl<T: Scalar> Poly<T> {
    /// Coefficients in ascending degree. An empty vector is the zero polynomial.
    pub fn new(coeffs: Vec<T>) -> Self {
        let mut p = Self { coeffs };
        p.trim();
        p
    }

    pub fn zero() -> Self {
        Self { coeffs: Vec::new() }
    }

    pub fn constant(c: T) -> Self {
        Self::new(vec![c])
    }

    /// The identity polynomial `x`.
    pub fn x() -> Self {
        Self::new(vec![T::zero(), T::one()])
    }

    fn trim(&mut self) {
        while matches!(self.coeffs.last(), Some(c) if c.is_zero()) {
            self.coeffs.pop();
        }
    }

    pub fn coeffs(&self) -> &[T] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> T {
        self.coeffs.get(k).cloned().unwrap_or_else(T::zero)
    }

    /// Degree, with the zero polynomial reported as degree 0.
    pub fn degree(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn eval(&self, x: &T) -> T {
        self.coeffs.iter().rev().fold(T::zero(), |acc, c| acc * x.clone() + c.clone())
    }

    pub fn derivative(&self) -> Self {
        let coeffs = self.coeffs.iter().enumerate().skip(1).map(|(k, c)| c.clone() * T::int(k as i64)).collect();
        Self::new(coeffs)
    }

    /// Antiderivative vanishing at zero.
    pub fn antiderivative(&self) -> Self {
        let mut coeffs = Vec::with_capacity(self.coeffs.len() + 1);
        coeffs.push(T::zero());
        for (k, c) in self.coeffs.iter().enumerate() {
            coeffs.push(c.clone() / T::int(k as i64 + 1));
        }
        Self::new(coeffs)
    }

    /// `∫_lo^hi p` via the antiderivative.
    pub fn integrate(&self, lo: &T, hi: &T) -> T {
        let a = self.antiderivative();
        a.eval(hi) - a.eval(lo)
    }

    pub fn add(&self, other: &Self) -> Self {
        let len = self.coeffs.len().max(other.coeffs.len());
        Self::new((0..len).map(|k| self.coeff(k) + other.coeff(k)).collect())
    }

    pub fn sub(&self, other: &Self) -> Self {
        let len = self.coeffs.len().max(other.coeffs.len());
        Self::new((0..len).map(|k| self.coeff(k) - other.coeff(k)).collect())
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        let mut out = vec![T::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] = out[i + j].clone() + a.clone() * b.clone();
            }
        }
        Self::new(out)
    }

    pub fn scale(&self, s: &T) -> Self {
        Self::new(self.coeffs.iter().map(|c| c.clone() * s.clone()).collect())
    }

    pub fn neg(&self) -> Self {
        Self::new(self.coeffs.iter().map(|c| -c.clone()).collect())
    }

    /// Coefficients of `u ↦ p(c + u)` (Taylor shift).
    pub fn shift(&self, c: &T) -> Self {
        // Horner in the polynomial ring: p(c + u) = (((a_d)(c+u) + a_{d-1})(c+u) + ...)
        let base = Self::new(vec![c.clone(), T::one()]);
        self.coeffs.iter().rev().fold(Self::zero(), |acc, a| acc.mul(&base).add(&Self::constant(a.clone())))
    }

    /// Drops the lowest `k` coefficients and divides by `u^k`.
    pub fn div_by_power(&self, k: usize) -> Self {
        Self::new(self.coeffs.iter().skip(k).cloned().collect())
    }
}

impl<T: Real> Poly<T> {
    pub fn is_finite(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_finite())
    }

    /// Real roots in `[lo, hi]`, ascending.
    ///
    /// Roots of the derivative split the interval into monotone pieces; each
    /// sign change on a monotone piece brackets exactly one root, which is then
    /// refined by bisection.
    pub fn real_roots_in(&self, lo: T, hi: T) -> Vec<T> {
        if self.coeffs.len() <= 1 || !(lo <= hi) {
            return Vec::new();
        }
        if self.coeffs.len() == 2 {
            let r = -self.coeffs[0] / self.coeffs[1];
            return if r >= lo && r <= hi { vec![r] } else { Vec::new() };
        }
        let mut breaks = vec![lo];
        breaks.extend(self.derivative().real_roots_in(lo, hi));
        breaks.push(hi);

        let mut roots: Vec<T> = Vec::new();
        for w in breaks.windows(2) {
            let (mut a, mut b) = (w[0], w[1]);
            let (mut fa, fb) = (self.eval(&a), self.eval(&b));
            let root = if fa == T::zero() {
                Some(a)
            } else if fb == T::zero() {
                Some(b)
            } else if (fa < T::zero()) != (fb < T::zero()) {
                for _ in 0..200 {
                    let m = a + (b - a) / T::lit(2.0);
                    if m <= a || m >= b {
                        break;
                    }
                    let fm = self.eval(&m);
                    if fm == T::zero() {
                        a = m;
                        b = m;
                        break;
                    }
                    if (fm < T::zero()) == (fa < T::zero()) {
                        a = m;
                        fa = fm;
                    } else {
                        b = m;
                    }
                }
                Some(a + (b - a) / T::lit(2.0))
            } else {
                None
            };
            if let Some(r) = root {
                if roots.last().is_none_or(|&last| r > last) {
                    roots.push(r);
                }
            }
        }
        roots
    }

    /// `max_{x ∈ [lo, hi]} |p(x)|` and an argument attaining it.
    pub fn max_abs_on(&self, lo: T, hi: T) -> (T, T) {
        let mut best = (self.eval(&lo).abs(), lo);
        let candidates = self.derivative().real_roots_in(lo, hi);
        for x in candidates.into_iter().chain(std::iter::once(hi)) {
            let v = self.eval(&x).abs();
            if v > best.0 {
                best = (v, x);
            }
        }
        best
    }
}
