//! Planar curves bridging one gap in one plane.
//!
//! After translating the gap to `[0, δ]` and rotating the chord onto the
//! positive x-axis, the filler `η = (x, y)` must satisfy
//!
//! * `η(0) = (0, 0)`, `η(δ) = (ℓ, 0)`;
//! * `η'(0) = (α, μ)`, `η'(δ) = (β, ν)`;
//! * `2∫₀^δ (x'y − xy') = λ`;
//! * `|η|` and `|η' − (α, μ)|` below `P(ε) = C'(√ε + ε²)`.
//!
//! When `|α + β − 9ℓ/δ| > √ε` a cubic/quartic pair does the job. Otherwise the
//! middle third of the gap is spent running once around a circle whose area
//! supplies whatever the outer cubics leave over.
//!
//! The polynomial formulas only need field operations and are generic over
//! [`Scalar`], so they can be checked in exact rational arithmetic.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::heisenberg::PlanarPoint;
use crate::planar::PlanarPiece;
use crate::poly::Poly;
use crate::scalar::{Real, Scalar};
use crate::whitney::{Gap, WhitneyJet};

/// Rigid motion `p ↦ rot·p + shift` taking `[0, ℓ] × {0}` onto the chord.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GapFrame<T> {
    pub u: PlanarPoint<T>,
    pub v: PlanarPoint<T>,
    pub ell: T,
    pub rot: [[T; 2]; 2],
    pub shift: PlanarPoint<T>,
    pub degenerate: bool,
}

impl<T: Real> GapFrame<T> {
    pub fn apply(&self, p: PlanarPoint<T>) -> PlanarPoint<T> {
        PlanarPoint::new(
            self.rot[0][0] * p.x + self.rot[0][1] * p.y + self.shift.x,
            self.rot[1][0] * p.x + self.rot[1][1] * p.y + self.shift.y,
        )
    }

    pub fn rotate(&self, p: PlanarPoint<T>) -> PlanarPoint<T> {
        PlanarPoint::new(self.rot[0][0] * p.x + self.rot[0][1] * p.y, self.rot[1][0] * p.x + self.rot[1][1] * p.y)
    }
}

pub fn gap_frame<T: Real>(pa: PlanarPoint<T>, pb: PlanarPoint<T>) -> GapFrame<T> {
    let chord = pb.sub(&pa);
    let ell = chord.norm();
    let (z, o) = (T::zero(), T::one());
    if ell == z {
        return GapFrame {
            u: PlanarPoint::new(o, z),
            v: PlanarPoint::new(z, o),
            ell,
            rot: [[o, z], [z, o]],
            shift: pa,
            degenerate: true,
        };
    }
    let u = chord.scale(o / ell);
    let v = PlanarPoint::new(-u.y, u.x);
    GapFrame { u, v, ell, rot: [[u.x, -u.y], [u.y, u.x]], shift: pa, degenerate: false }
}

/// Normalized data of one gap in one plane.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct LemmaParams<T> {
    pub delta: T,
    pub ell: T,
    pub alpha: T,
    pub beta: T,
    pub mu: T,
    pub nu: T,
    pub lambda: T,
    pub eps: T,
    pub big_m: T,
    pub c_prime: T,
}

impl<T: Real> LemmaParams<T> {
    /// The first violated bound among the preconditions of the construction,
    /// with the offending value.
    pub fn violated_bound(&self) -> Option<(&'static str, T)> {
        let slope = self.ell / self.delta;
        let checks = [
            ("|lambda|/delta^2 < eps", self.lambda.abs() / (self.delta * self.delta)),
            ("delta < eps", self.delta),
            ("ell < eps", self.ell),
            ("|alpha - ell/delta| < eps", (self.alpha - slope).abs()),
            ("|beta - ell/delta| < eps", (self.beta - slope).abs()),
            ("|mu| < eps", self.mu.abs()),
            ("|nu| < eps", self.nu.abs()),
        ];
        checks.into_iter().find(|(_, v)| !(*v < self.eps))
    }

    /// `P(ε) = C'(√ε + ε²)`.
    pub fn envelope(&self) -> T {
        self.c_prime * (self.eps.sqrt() + self.eps * self.eps)
    }
}

/// Envelope constant as a function of `M`.
///
/// The first five terms are the constants that appear in the size estimates
/// of the construction; `620M + 630` bounds the derivative deviation of the
/// quartic `y` in the polynomial case, which the others do not cover.
pub fn c_prime(big_m: f64) -> f64 {
    [
        6.0 * big_m + 5.0,
        12.0,
        2.0 * big_m + 2.0,
        2.0 * (46656.0 * std::f64::consts::PI).sqrt(),
        300.0,
        620.0 * big_m + 630.0,
    ]
    .into_iter()
    .fold(0.0, f64::max)
}

/// Normalized parameters of gap `gap` in plane `j`; `gap.epsilon` must be set.
pub fn lemma_params(jet: &WhitneyJet, gap: &Gap, j: usize, c_prime: f64, big_m: f64) -> Result<LemmaParams<f64>> {
    let (ka, kb) = (gap.left, gap.left + 1);
    let pa = jet.planar(ka, j, gap.a);
    let pb = jet.planar(kb, j, gap.b);
    let frame = gap_frame(pa, pb);
    let (da, db) = (jet.planar_prime(ka, j, gap.a), jet.planar_prime(kb, j, gap.b));
    let mut cross = 0.0;
    for m in 0..jet.n() {
        let (qa, qb) = (jet.planar(ka, m, gap.a), jet.planar(kb, m, gap.b));
        cross += qb.x * qa.y - qa.x * qb.y;
    }
    let lambda = (jet.height(kb, gap.b) - jet.height(ka, gap.a) - 2.0 * cross) / jet.n() as f64;
    let params = LemmaParams {
        delta: gap.b - gap.a,
        ell: frame.ell,
        alpha: da.dot(&frame.u),
        beta: db.dot(&frame.u),
        mu: da.dot(&frame.v),
        nu: db.dot(&frame.v),
        lambda,
        eps: gap.epsilon,
        big_m,
        c_prime,
    };
    if let Some((bound, value)) = params.violated_bound() {
        return Err(Error::PreLemmaBound { a: gap.a, b: gap.b, plane: j + 1, bound, value, eps: gap.epsilon });
    }
    Ok(params)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Branch {
    PolynomialCase,
    CircleCase,
}

pub fn branch_test<T: Real>(p: &LemmaParams<T>) -> Branch {
    if (p.alpha + p.beta - T::lit(9.0) * p.ell / p.delta).abs() > p.eps.sqrt() {
        Branch::PolynomialCase
    } else {
        Branch::CircleCase
    }
}

/// `δ(α + β) − 9ℓ`, the denominator of the quartic coefficients.
pub fn quartic_denominator<T: Scalar>(p: &LemmaParams<T>) -> T {
    p.delta.clone() * (p.alpha.clone() + p.beta.clone()) - T::int(9) * p.ell.clone()
}

/// Cubic `x` and quartic `y` of the polynomial case, or `None` when the
/// denominator vanishes.
pub fn polynomial_case<T: Scalar>(p: &LemmaParams<T>) -> Option<(Poly<T>, Poly<T>)> {
    let den = quartic_denominator(p);
    if den.is_zero() {
        return None;
    }
    let i = T::int;
    let (d, l) = (p.delta.clone(), p.ell.clone());
    let (al, be, mu, nu, la) = (p.alpha.clone(), p.beta.clone(), p.mu.clone(), p.nu.clone(), p.lambda.clone());
    let d2 = d.clone() * d.clone();
    let d3 = d2.clone() * d.clone();
    let d4 = d3.clone() * d.clone();

    let a = (d.clone() * (al.clone() + be.clone()) - i(2) * l.clone()) / d3.clone();
    let b = (-(d.clone() * (i(2) * al.clone() + be.clone())) + i(3) * l.clone()) / d2.clone();
    let c = al.clone();

    let dl = d.clone() * l.clone();
    let dd = i(7)
        * (i(6) * dl.clone() * (mu.clone() - nu.clone())
            + d2.clone() * (al.clone() * nu.clone() - be.clone() * mu.clone())
            - i(15) * la.clone())
        / (i(2) * d4 * den.clone());
    let e = (dl.clone() * (i(33) * nu.clone() - i(51) * mu.clone())
        + d2.clone() * (al.clone() * (mu.clone() - i(6) * nu.clone()) + be.clone() * (i(8) * mu.clone() + nu.clone()))
        + i(105) * la.clone())
        / (d3 * den.clone());
    let f = -(dl * (i(24) * nu.clone() - i(78) * mu.clone())
        + d2.clone()
            * (i(4) * al.clone() * mu.clone() + i(11) * be.clone() * mu.clone() - i(5) * al.clone() * nu.clone()
                + i(2) * be * nu)
        + i(105) * la)
        / (i(2) * d2 * den);
    let g = mu;

    Some((Poly::new(vec![T::zero(), c, b, a]), Poly::new(vec![T::zero(), g, f, e, dd])))
}

/// Left and right cubic pairs of the circle case, in the gap variable `t`.
pub fn circle_outer<T: Scalar>(p: &LemmaParams<T>) -> [(Poly<T>, Poly<T>); 2] {
    let i = T::int;
    let (d, l) = (p.delta.clone(), p.ell.clone());
    let (al, be, mu, nu) = (p.alpha.clone(), p.beta.clone(), p.mu.clone(), p.nu.clone());
    let d2 = d.clone() * d.clone();
    let d3 = d2.clone() * d.clone();
    let left_x = Poly::new(vec![
        T::zero(),
        al.clone(),
        (-(i(12) * d.clone() * al.clone()) + i(27) * l.clone()) / (i(2) * d2.clone()),
        (i(9) * d.clone() * al - i(27) * l.clone()) / d3.clone(),
    ]);
    let left_y = Poly::new(vec![T::zero(), mu.clone(), -(i(6) * mu.clone()) / d.clone(), i(9) * mu / d2.clone()]);
    let right_x = Poly::new(vec![
        -(i(4) * d.clone() * be.clone()) + i(29) * l.clone() / i(2),
        (i(16) * d.clone() * be.clone() - i(54) * l.clone()) / d.clone(),
        (-(i(42) * d.clone() * be.clone()) + i(135) * l.clone()) / (i(2) * d2.clone()),
        (i(9) * d.clone() * be - i(27) * l) / d3,
    ]);
    let right_y = Poly::new(vec![
        -(i(4) * d.clone() * nu.clone()),
        i(16) * nu.clone(),
        -(i(21) * nu.clone()) / d.clone(),
        i(9) * nu / d2,
    ]);
    [(left_x, left_y), (right_x, right_y)]
}

/// `H = λ − δℓ(μ − ν)/15`: the area the loop must contribute.
pub fn loop_area<T: Scalar>(p: &LemmaParams<T>) -> T {
    p.lambda.clone() - p.delta.clone() * p.ell.clone() * (p.mu.clone() - p.nu.clone()) / T::int(15)
}

pub fn eta_polynomial<T: Real>(p: &LemmaParams<T>) -> Result<PlanarPiece<T>> {
    let den = quartic_denominator(p);
    if den.abs() < p.eps.sqrt() * p.delta {
        return Err(Error::Internal(format!("quartic denominator {:e} below sqrt(eps)*delta", den.to_f64_lossy())));
    }
    let (x, y) = polynomial_case(p).ok_or_else(|| Error::Internal("quartic denominator vanishes".into()))?;
    Ok(PlanarPiece::polynomial(x, y, T::zero(), p.delta, T::zero()))
}

pub fn eta_circle<T: Real>(p: &LemmaParams<T>) -> [PlanarPiece<T>; 3] {
    let d = p.delta;
    let (t1, t2) = (d / T::lit(3.0), T::lit(2.0) * d / T::lit(3.0));
    let [(lx, ly), (rx, ry)] = circle_outer(p);
    let h = loop_area(p);
    let pi = T::PI();
    let radius = h.abs().sqrt() / (T::lit(2.0) * pi.sqrt());
    let sign: i8 = if h <= T::zero() { 1 } else { -1 };
    let s = T::lit(sign as f64);
    let tau = Poly::new(vec![
        s * T::lit(10.0) * pi,
        -s * T::lit(72.0) * pi / d,
        s * T::lit(162.0) * pi / (d * d),
        -s * T::lit(108.0) * pi / (d * d * d),
    ]);
    let center = PlanarPoint::new(-radius + p.ell / T::lit(2.0), T::zero());
    [
        PlanarPiece::polynomial(lx, ly, T::zero(), t1, T::zero()),
        PlanarPiece::arc(radius, center, tau, sign, t1, t2, T::zero()),
        PlanarPiece::polynomial(rx, ry, t2, d, T::zero()),
    ]
}

pub fn build_eta<T: Real>(p: &LemmaParams<T>) -> Result<Vec<PlanarPiece<T>>> {
    match branch_test(p) {
        Branch::PolynomialCase => Ok(vec![eta_polynomial(p)?]),
        Branch::CircleCase => Ok(eta_circle(p).to_vec()),
    }
}

/// Sup-norm size of a filler against its envelope.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct EnvelopeReport {
    pub sup_value: f64,
    pub sup_deriv_deviation: f64,
    pub bound: f64,
    pub c_prime: f64,
    pub value_ok: bool,
    pub deriv_ok: bool,
    pub grid: usize,
}

/// Samples `pieces` on `grid` evenly spaced points of `[0, δ]` (plus every
/// piece boundary) and compares `sup |η|`, `sup |η' − (α, μ)|` with `P(ε)`.
pub fn envelope_check<T: Real>(pieces: &[PlanarPiece<T>], p: &LemmaParams<T>, grid: usize) -> EnvelopeReport {
    let lo = pieces.first().map_or(T::zero(), |q| q.lo);
    let hi = pieces.last().map_or(T::zero(), |q| q.hi);
    let start = PlanarPoint::new(p.alpha, p.mu);
    let (mut sv, mut sd) = (0.0f64, 0.0f64);
    let m = grid.max(2);
    let mut visit = |piece: &PlanarPiece<T>, s: T| {
        sv = sv.max(piece.eval(s).norm().to_f64_lossy());
        sd = sd.max(piece.deriv(s).sub(&start).norm().to_f64_lossy());
    };
    for piece in pieces {
        visit(piece, piece.lo);
        visit(piece, piece.hi);
    }
    for k in 0..m {
        let s = lo + (hi - lo) * T::lit(k as f64 / (m - 1) as f64);
        if let Some(i) = crate::planar::locate(pieces, s) {
            visit(&pieces[i], s);
        }
    }
    let bound = p.envelope().to_f64_lossy();
    EnvelopeReport {
        sup_value: sv,
        sup_deriv_deviation: sd,
        bound,
        c_prime: p.c_prime.to_f64_lossy(),
        value_ok: sv < bound,
        deriv_ok: sd < bound,
        grid: m,
    }
}

/// Moves fillers built on `[0, δ]` onto the gap `[a, b]` (with `δ = b − a`)
/// and through the frame's rigid motion.
pub fn relocate<T: Real>(pieces: &[PlanarPiece<T>], frame: &GapFrame<T>, a: T, b: T) -> Vec<PlanarPiece<T>> {
    let last = pieces.len().saturating_sub(1);
    pieces
        .iter()
        .enumerate()
        .map(|(k, piece)| {
            let mut q = piece.transform(frame.u, frame.shift, a);
            if k == 0 {
                q.lo = a;
            }
            if k == last {
                q.hi = b;
            }
            q
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::planar::PieceShape;
    use approx::assert_relative_eq;
    use num::BigRational;
    use std::f64::consts::PI;

    #[allow(clippy::too_many_arguments)]
    fn params(
        delta: f64,
        ell: f64,
        alpha: f64,
        beta: f64,
        mu: f64,
        nu: f64,
        lambda: f64,
        eps: f64,
    ) -> LemmaParams<f64> {
        LemmaParams { delta, ell, alpha, beta, mu, nu, lambda, eps, big_m: 10.0, c_prime: c_prime(10.0) }
    }

    #[test]
    fn frames() {
        let f = gap_frame(PlanarPoint::new(3.0, 4.0), PlanarPoint::new(3.0, 4.0));
        assert!(f.degenerate);
        assert_eq!(f.rot, [[1.0, 0.0], [0.0, 1.0]]);
        assert_eq!(f.shift, PlanarPoint::new(3.0, 4.0));
        let f = gap_frame(PlanarPoint::new(0.0, 0.0), PlanarPoint::new(0.0, 2.0));
        assert_eq!((f.u, f.v, f.ell), (PlanarPoint::new(0.0, 1.0), PlanarPoint::new(-1.0, 0.0), 2.0));
        let f = gap_frame(PlanarPoint::new(1.0, -2.0), PlanarPoint::new(4.5, 0.25));
        let end = f.apply(PlanarPoint::new(f.ell, 0.0));
        assert_relative_eq!(end.x, 4.5, epsilon = 1e-12);
        assert_relative_eq!(end.y, 0.25, epsilon = 1e-12);
    }

    #[test]
    fn branch_examples() {
        assert_eq!(branch_test(&params(1.0, 1.0, 1.0, 1.0, 0.0, 0.0, 0.0, 0.01)), Branch::PolynomialCase);
        assert_eq!(branch_test(&params(0.1, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.2)), Branch::CircleCase);
        // |α + β − 9ℓ/δ| = 0.5 = √0.25 exactly.
        assert_eq!(branch_test(&params(1.0, 0.0, 0.25, 0.25, 0.0, 0.0, 0.0, 0.25)), Branch::CircleCase);
    }

    #[test]
    fn polynomial_case_is_exact_in_rationals() {
        let r = |a: i64, b: i64| BigRational::new(a.into(), b.into());
        let p = LemmaParams {
            delta: r(1, 10),
            ell: r(1, 20),
            alpha: r(3, 5),
            beta: r(4, 7),
            mu: r(-1, 30),
            nu: r(1, 40),
            lambda: r(-1, 9000),
            eps: r(1, 5),
            big_m: r(2, 1),
            c_prime: r(1, 1),
        };
        let (x, y) = polynomial_case(&p).unwrap();
        let zero = r(0, 1);
        assert_eq!(x.eval(&zero), zero);
        assert_eq!(y.eval(&zero), zero);
        assert_eq!(x.eval(&p.delta), p.ell);
        assert_eq!(y.eval(&p.delta), zero);
        assert_eq!(x.derivative().eval(&zero), p.alpha);
        assert_eq!(y.derivative().eval(&zero), p.mu);
        assert_eq!(x.derivative().eval(&p.delta), p.beta);
        assert_eq!(y.derivative().eval(&p.delta), p.nu);
        let integrand = x.derivative().mul(&y).sub(&x.mul(&y.derivative())).scale(&r(2, 1));
        assert_eq!(integrand.integrate(&zero, &p.delta), p.lambda);
    }

    #[test]
    fn circle_outer_cubics_are_exact_in_rationals() {
        let r = |a: i64, b: i64| BigRational::new(a.into(), b.into());
        let p = LemmaParams {
            delta: r(3, 7),
            ell: r(1, 50),
            alpha: r(1, 21),
            beta: r(1, 22),
            mu: r(-2, 15),
            nu: r(1, 8),
            lambda: r(1, 1000),
            eps: r(1, 2),
            big_m: r(1, 1),
            c_prime: r(1, 1),
        };
        let [(lx, ly), (rx, ry)] = circle_outer(&p);
        let (zero, t1, t2) = (r(0, 1), p.delta.clone() / r(3, 1), p.delta.clone() * r(2, 3));
        let half = p.ell.clone() / r(2, 1);
        assert_eq!((lx.eval(&zero), ly.eval(&zero)), (zero.clone(), zero.clone()));
        assert_eq!((lx.derivative().eval(&zero), ly.derivative().eval(&zero)), (p.alpha.clone(), p.mu.clone()));
        assert_eq!((lx.eval(&t1), ly.eval(&t1)), (half.clone(), zero.clone()));
        assert_eq!((lx.derivative().eval(&t1), ly.derivative().eval(&t1)), (zero.clone(), zero.clone()));
        assert_eq!((rx.eval(&t2), ry.eval(&t2)), (half, zero.clone()));
        assert_eq!((rx.derivative().eval(&t2), ry.derivative().eval(&t2)), (zero.clone(), zero.clone()));
        assert_eq!((rx.eval(&p.delta), ry.eval(&p.delta)), (p.ell.clone(), zero.clone()));
        assert_eq!((rx.derivative().eval(&p.delta), ry.derivative().eval(&p.delta)), (p.beta.clone(), p.nu.clone()));
        let area = |x: &Poly<BigRational>, y: &Poly<BigRational>, lo: &BigRational, hi: &BigRational| {
            x.derivative().mul(y).sub(&x.mul(&y.derivative())).scale(&r(2, 1)).integrate(lo, hi)
        };
        let outer = area(&lx, &ly, &zero, &t1) + area(&rx, &ry, &t2, &p.delta);
        assert_eq!(outer, p.delta.clone() * p.ell.clone() * (p.mu.clone() - p.nu.clone()) / r(15, 1));
        assert_eq!(loop_area(&p) + outer, p.lambda);
    }

    #[test]
    fn circle_seams_and_loop() {
        let p = params(0.09, 0.002, 0.03, 0.02, 0.01, -0.02, 1e-4 * 0.0081, 0.1);
        assert_eq!(branch_test(&p), Branch::CircleCase);
        let pieces = build_eta(&p).unwrap();
        assert_eq!(pieces.len(), 3);
        let arc = &pieces[1];
        for (lhs, rhs, s) in [(&pieces[0], arc, p.delta / 3.0), (arc, &pieces[2], 2.0 * p.delta / 3.0)] {
            let (a, b) = (lhs.eval(s), rhs.eval(s));
            assert!((a.x - b.x).abs() < 1e-15 && (a.y - b.y).abs() < 1e-15);
            let (da, db) = (lhs.deriv(s), rhs.deriv(s));
            assert!(da.norm() < 1e-15 && db.norm() < 1e-15);
        }
        let h = loop_area(&p);
        assert_relative_eq!(arc.signed_area(p.delta / 3.0, 2.0 * p.delta / 3.0), h, max_relative = 1e-12);
        let total: f64 = pieces.iter().map(|q| q.signed_area(q.lo, q.hi)).sum();
        assert_relative_eq!(total, p.lambda, epsilon = 1e-16);
        let PieceShape::Arc { radius, sign, .. } = &arc.shape else { panic!("middle piece must be an arc") };
        assert_relative_eq!(-4.0 * PI * radius * radius * (*sign as f64), h, max_relative = 1e-12);
    }

    #[test]
    fn zero_parameters_give_a_point() {
        let p = params(0.1, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.2);
        let pieces = build_eta(&p).unwrap();
        let env = envelope_check(&pieces, &p, 1000);
        assert_eq!((env.sup_value, env.sup_deriv_deviation), (0.0, 0.0));
        assert!(env.value_ok && env.deriv_ok);
    }

    #[test]
    fn pre_lemma_bounds() {
        let p = params(0.1, 0.05, 0.5, 0.5, 0.0, 0.3, 0.0, 0.2);
        assert_eq!(p.violated_bound().map(|b| b.0), Some("|nu| < eps"));
    }

    #[test]
    fn relocation_matches_endpoint_data() {
        let p = params(0.05, 0.04, 0.82, 0.78, 0.01, -0.02, 1e-5, 0.1);
        let pieces = build_eta(&p).unwrap();
        let frame = gap_frame(PlanarPoint::new(1.0, 2.0), PlanarPoint::new(1.0 + 0.024, 2.0 + 0.032));
        let moved = relocate(&pieces, &frame, 3.0, 3.05);
        let start = moved[0].eval(3.0);
        assert_relative_eq!(start.x, 1.0, epsilon = 1e-14);
        assert_relative_eq!(start.y, 2.0, epsilon = 1e-14);
        let end = moved.last().unwrap().eval(3.05);
        assert_relative_eq!(end.x, 1.024, epsilon = 1e-12);
        assert_relative_eq!(end.y, 2.032, epsilon = 1e-12);
        let d0 = moved[0].deriv(3.0);
        let want = frame.rotate(PlanarPoint::new(p.alpha, p.mu));
        assert_relative_eq!(d0.x, want.x, epsilon = 1e-12);
        assert_relative_eq!(d0.y, want.y, epsilon = 1e-12);
    }
}
