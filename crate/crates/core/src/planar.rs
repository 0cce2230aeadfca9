//! Exact planar curve pieces: polynomial pairs and circular arcs with a cubic
//! angle function.
//!
//! Every piece carries a parameter domain `[lo, hi]` and an `origin`; its
//! formulas are written in the local variable `u = s − origin`, which keeps
//! coefficients well scaled when a piece lives far from zero.

use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::heisenberg::PlanarPoint;
use crate::poly::Poly;
use crate::quad::{self, QuadOptions};
use crate::scalar::Real;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum PieceShape<T> {
    /// `u ↦ (x(u), y(u))`.
    Polynomial { x: Poly<T>, y: Poly<T> },
    /// `u ↦ center + radius·(cos τ(u), sin τ(u))`; `sign` records the
    /// orientation of the loop (`+1` counterclockwise).
    Arc { radius: T, center: PlanarPoint<T>, tau: Poly<T>, sign: i8 },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PlanarPiece<T> {
    pub shape: PieceShape<T>,
    pub lo: T,
    pub hi: T,
    pub origin: T,
}

impl<T: Real> PlanarPiece<T> {
    pub fn polynomial(x: Poly<T>, y: Poly<T>, lo: T, hi: T, origin: T) -> Self {
        Self { shape: PieceShape::Polynomial { x, y }, lo, hi, origin }
    }

    pub fn arc(radius: T, center: PlanarPoint<T>, tau: Poly<T>, sign: i8, lo: T, hi: T, origin: T) -> Self {
        Self { shape: PieceShape::Arc { radius, center, tau, sign }, lo, hi, origin }
    }

    pub fn is_arc(&self) -> bool {
        matches!(self.shape, PieceShape::Arc { .. })
    }

    pub fn contains(&self, s: T) -> bool {
        s >= self.lo && s <= self.hi
    }

    pub fn is_finite(&self) -> bool {
        let dom = self.lo.is_finite() && self.hi.is_finite() && self.origin.is_finite();
        dom && match &self.shape {
            PieceShape::Polynomial { x, y } => x.is_finite() && y.is_finite(),
            PieceShape::Arc { radius, center, tau, .. } => radius.is_finite() && center.is_finite() && tau.is_finite(),
        }
    }

    pub fn eval(&self, s: T) -> PlanarPoint<T> {
        let u = s - self.origin;
        match &self.shape {
            PieceShape::Polynomial { x, y } => PlanarPoint::new(x.eval(&u), y.eval(&u)),
            PieceShape::Arc { radius, center, tau, .. } => {
                let (sin, cos) = tau.eval(&u).sin_cos();
                PlanarPoint::new(center.x + *radius * cos, center.y + *radius * sin)
            }
        }
    }

    pub fn deriv(&self, s: T) -> PlanarPoint<T> {
        let u = s - self.origin;
        match &self.shape {
            PieceShape::Polynomial { x, y } => PlanarPoint::new(x.derivative().eval(&u), y.derivative().eval(&u)),
            PieceShape::Arc { radius, tau, .. } => {
                let (sin, cos) = tau.eval(&u).sin_cos();
                let rate = *radius * tau.derivative().eval(&u);
                PlanarPoint::new(-rate * sin, rate * cos)
            }
        }
    }

    /// Antiderivative (in `u`) of the lift integrand `2(x'y − xy')` for a
    /// polynomial piece.
    fn poly_lift(x: &Poly<T>, y: &Poly<T>) -> Poly<T> {
        let integrand = x.derivative().mul(y).sub(&x.mul(&y.derivative()));
        integrand.scale(&T::lit(2.0)).antiderivative()
    }

    /// Closed-form `2∫_{s0}^{s1} (x'y − xy')`.
    pub fn signed_area(&self, s0: T, s1: T) -> T {
        let (u0, u1) = (s0 - self.origin, s1 - self.origin);
        match &self.shape {
            PieceShape::Polynomial { x, y } => {
                let a = Self::poly_lift(x, y);
                a.eval(&u1) - a.eval(&u0)
            }
            PieceShape::Arc { radius, center, tau, .. } => {
                let two = T::lit(2.0);
                let (t0, t1) = (tau.eval(&u0), tau.eval(&u1));
                let r = *radius;
                -two * r * r * (t1 - t0) + two * r * center.y * (t1.cos() - t0.cos())
                    - two * r * center.x * (t1.sin() - t0.sin())
            }
        }
    }

    /// Lift integrand `2(x'y − xy')` at `s`, evaluated from the closed-form
    /// area function rather than from `eval`/`deriv`.
    pub fn area_rate(&self, s: T) -> T {
        let u = s - self.origin;
        match &self.shape {
            PieceShape::Polynomial { x, y } => Self::poly_lift(x, y).derivative().eval(&u),
            PieceShape::Arc { radius, center, tau, .. } => {
                let two = T::lit(2.0);
                let (sin, cos) = tau.eval(&u).sin_cos();
                let dtau = tau.derivative().eval(&u);
                let r = *radius;
                -two * r * r * dtau - two * r * dtau * (center.y * sin + center.x * cos)
            }
        }
    }

    /// `2∫_{s0}^{s1} (x'y − xy')` by adaptive quadrature of `eval`/`deriv`.
    pub fn quad_area(&self, s0: T, s1: T, opts: &QuadOptions) -> Result<T> {
        let f = |s: T| {
            let p = self.eval(s);
            let d = self.deriv(s);
            T::lit(2.0) * (d.x * p.y - p.x * d.y)
        };
        Ok(quad::integrate(f, s0, s1, opts)?.value)
    }

    /// Applies `p ↦ rot·p + shift` with `rot = [[u.x, −u.y], [u.y, u.x]]` and
    /// moves the parameter domain by `dt`.
    pub fn transform(&self, u: PlanarPoint<T>, shift: PlanarPoint<T>, dt: T) -> Self {
        let shape = match &self.shape {
            PieceShape::Polynomial { x, y } => {
                let nx = x.scale(&u.x).sub(&y.scale(&u.y)).add(&Poly::constant(shift.x));
                let ny = x.scale(&u.y).add(&y.scale(&u.x)).add(&Poly::constant(shift.y));
                PieceShape::Polynomial { x: nx, y: ny }
            }
            PieceShape::Arc { radius, center, tau, sign } => {
                let c = PlanarPoint::new(
                    u.x * center.x - u.y * center.y + shift.x,
                    u.y * center.x + u.x * center.y + shift.y,
                );
                let phase = u.y.atan2(u.x);
                PieceShape::Arc { radius: *radius, center: c, tau: tau.add(&Poly::constant(phase)), sign: *sign }
            }
        };
        Self { shape, lo: self.lo + dt, hi: self.hi + dt, origin: self.origin + dt }
    }
}

/// Index of the piece containing `s` in a contiguous, ascending piece list.
pub fn locate<T: Real>(pieces: &[PlanarPiece<T>], s: T) -> Option<usize> {
    if pieces.is_empty() || s < pieces[0].lo || s > pieces[pieces.len() - 1].hi {
        return None;
    }
    let idx = pieces.partition_point(|p| p.hi < s);
    Some(idx.min(pieces.len() - 1))
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;
    use std::f64::consts::PI;

    fn unit_circle() -> PlanarPiece<f64> {
        PlanarPiece::arc(1.0, PlanarPoint::zero(), Poly::x(), 1, 0.0, 2.0 * PI, 0.0)
    }

    #[test]
    fn circle_area_closed_form_and_quadrature() {
        let c = unit_circle();
        assert_relative_eq!(c.signed_area(0.0, 2.0 * PI), -4.0 * PI, epsilon = 1e-14);
        let q = c.quad_area(0.0, 2.0 * PI, &QuadOptions::default()).unwrap();
        assert_relative_eq!(q, -4.0 * PI, epsilon = 1e-12);
    }

    #[test]
    fn off_center_arc_partial_area() {
        let arc =
            PlanarPiece::arc(0.7, PlanarPoint::new(-0.3, 1.2), Poly::new(vec![0.2, 1.0, -0.4, 0.1]), 1, 0.0, 1.5, 0.0);
        let closed = arc.signed_area(0.1, 1.3);
        let q = arc.quad_area(0.1, 1.3, &QuadOptions::default()).unwrap();
        assert_relative_eq!(closed, q, epsilon = 1e-12);
        let h = 1e-6;
        let fd = (arc.signed_area(0.0, 0.8 + h) - arc.signed_area(0.0, 0.8 - h)) / (2.0 * h);
        assert_relative_eq!(arc.area_rate(0.8), fd, epsilon = 1e-7);
    }

    #[test]
    fn transform_is_rigid_motion() {
        let p = PlanarPiece::polynomial(
            Poly::new(vec![0.0, 1.0, -0.5]),
            Poly::new(vec![0.0, 0.3, 0.0, 0.2]),
            0.0,
            1.0,
            0.0,
        );
        let arc = PlanarPiece::arc(0.4, PlanarPoint::new(0.1, 0.0), Poly::new(vec![0.0, 3.0]), 1, 0.0, 1.0, 0.0);
        let (c, s) = (0.6, 0.8);
        let u = PlanarPoint::new(c, s);
        let shift = PlanarPoint::new(2.0, -1.0);
        for piece in [p, arc] {
            let q = piece.transform(u, shift, 5.0);
            for k in 0..=10 {
                let t = k as f64 / 10.0;
                let a = piece.eval(t);
                let b = q.eval(t + 5.0);
                assert_relative_eq!(b.x, c * a.x - s * a.y + 2.0, epsilon = 1e-14);
                assert_relative_eq!(b.y, s * a.x + c * a.y - 1.0, epsilon = 1e-14);
                let da = piece.deriv(t);
                let db = q.deriv(t + 5.0);
                assert_relative_eq!(db.x, c * da.x - s * da.y, epsilon = 1e-13);
                assert_relative_eq!(db.y, s * da.x + c * da.y, epsilon = 1e-13);
            }
        }
    }

    #[test]
    fn locate_pieces() {
        let mk = |lo: f64, hi: f64| PlanarPiece::polynomial(Poly::zero(), Poly::zero(), lo, hi, lo);
        let v = vec![mk(0.0, 1.0), mk(1.0, 2.0), mk(2.0, 3.0)];
        assert_eq!(locate(&v, 0.0), Some(0));
        assert_eq!(locate(&v, 1.5), Some(1));
        assert_eq!(locate(&v, 3.0), Some(2));
        assert_eq!(locate(&v, 3.1), None);
    }
}
