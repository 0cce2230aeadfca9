//! Horizontal lift of a planar curve.
//!
//! Given `γ = (γ₁, …, γₙ)` on `[a, b]` and a starting height `h₀`, the unique
//! height making `(γ, h)` horizontal is
//! `h(s) = h₀ + 2 Σ_j ∫_a^s ω(γ_j', γ_j)`. Polynomial pieces integrate in
//! closed form; arcs go through adaptive quadrature.

use crate::error::{Error, Result};
use crate::planar::{locate, PlanarPiece};
use crate::quad::{self, QuadOptions};
use crate::scalar::Real;

#[derive(Debug, Clone)]
pub struct HorizontalLift<T> {
    start: T,
    end: T,
    h0: T,
    planes: Vec<Vec<PlanarPiece<T>>>,
    /// Per plane, the accumulated area before each piece.
    offsets: Vec<Vec<T>>,
    quad: QuadOptions,
}

impl<T: Real> HorizontalLift<T> {
    pub fn start(&self) -> T {
        self.start
    }

    pub fn end(&self) -> T {
        self.end
    }

    pub fn h0(&self) -> T {
        self.h0
    }

    pub fn planes(&self) -> &[Vec<PlanarPiece<T>>] {
        &self.planes
    }

    fn piece_area(&self, piece: &PlanarPiece<T>, s0: T, s1: T) -> Result<T> {
        if s1 == s0 {
            return Ok(T::zero());
        }
        if piece.is_arc() {
            let f = |s: T| {
                let p = piece.eval(s);
                let d = piece.deriv(s);
                T::lit(2.0) * (d.x * p.y - p.x * d.y)
            };
            Ok(quad::integrate(f, s0, s1, &self.quad)?.value)
        } else {
            Ok(piece.signed_area(s0, s1))
        }
    }

    /// Lifted height at `s ∈ [a, b]`; exactly `h₀` at `s = a`.
    pub fn height(&self, s: T) -> Result<T> {
        if s < self.start || s > self.end {
            return Err(Error::Domain(format!("lift evaluated outside its interval: {:?}", s)));
        }
        if s == self.start {
            return Ok(self.h0);
        }
        let mut h = self.h0;
        for (pieces, offs) in self.planes.iter().zip(&self.offsets) {
            let k = locate(pieces, s).expect("pieces cover the lift interval");
            h = h + offs[k] + self.piece_area(&pieces[k], pieces[k].lo, s)?;
        }
        Ok(h)
    }

    /// `h'(s)`, taken from the closed-form area rate of each piece.
    pub fn height_rate(&self, s: T) -> T {
        self.planes.iter().fold(T::zero(), |acc, pieces| match locate(pieces, s) {
            Some(k) => acc + pieces[k].area_rate(s),
            None => acc,
        })
    }

    /// `h(b)`.
    pub fn end_height(&self) -> Result<T> {
        self.height(self.end)
    }
}

/// Lifts `planes[j]` (a contiguous list of pieces covering `[a, b]` for each
/// plane `j`) with starting height `h0`.
pub fn horizontal_lift<T: Real>(planes: Vec<Vec<PlanarPiece<T>>>, h0: T, a: T, b: T) -> Result<HorizontalLift<T>> {
    horizontal_lift_with(planes, h0, a, b, QuadOptions::default())
}

pub fn horizontal_lift_with<T: Real>(
    planes: Vec<Vec<PlanarPiece<T>>>,
    h0: T,
    a: T,
    b: T,
    quad: QuadOptions,
) -> Result<HorizontalLift<T>> {
    if !(a <= b) || !a.is_finite() || !b.is_finite() || !h0.is_finite() {
        return Err(Error::Domain("lift interval must be finite with a <= b".into()));
    }
    if planes.is_empty() {
        return Err(Error::Domain("lift needs at least one plane".into()));
    }
    for (j, pieces) in planes.iter().enumerate() {
        if pieces.iter().any(|p| !p.is_finite()) {
            return Err(Error::NonFinite(format!("planar data of plane {}", j + 1)));
        }
        let covers = !pieces.is_empty()
            && pieces[0].lo == a
            && pieces[pieces.len() - 1].hi == b
            && pieces.windows(2).all(|w| w[0].hi == w[1].lo);
        if !covers {
            return Err(Error::Domain(format!("pieces of plane {} do not tile [a, b]", j + 1)));
        }
    }
    let mut lift = HorizontalLift { start: a, end: b, h0, planes, offsets: Vec::new(), quad };
    let mut offsets = Vec::with_capacity(lift.planes.len());
    for pieces in &lift.planes {
        let mut acc = T::zero();
        let mut offs = Vec::with_capacity(pieces.len());
        for p in pieces {
            offs.push(acc);
            acc = acc + lift.piece_area(p, p.lo, p.hi)?;
        }
        offsets.push(offs);
    }
    lift.offsets = offsets;
    Ok(lift)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::heisenberg::{contact_residual, HPoint, PlanarPoint};
    use crate::poly::Poly;
    use approx::assert_relative_eq;
    use std::f64::consts::PI;

    #[test]
    fn constant_curve_has_constant_height() {
        let p = PlanarPiece::polynomial(Poly::constant(2.0), Poly::constant(-1.0), 0.0, 1.0, 0.0);
        let lift = horizontal_lift(vec![vec![p]], 0.75, 0.0, 1.0).unwrap();
        for s in [0.0, 0.3, 1.0] {
            assert_eq!(lift.height(s).unwrap(), 0.75);
        }
    }

    #[test]
    fn full_circle_height_gain() {
        let c = PlanarPiece::arc(1.0, PlanarPoint::zero(), Poly::x(), 1, 0.0, 2.0 * PI, 0.0);
        let lift = horizontal_lift(vec![vec![c]], 0.0, 0.0, 2.0 * PI).unwrap();
        assert_relative_eq!(lift.end_height().unwrap(), -4.0 * PI, epsilon = 1e-11);
    }

    #[test]
    fn ray_through_origin_is_flat() {
        let p = PlanarPiece::polynomial(Poly::x(), Poly::x(), -1.0, 1.0, 0.0);
        let lift = horizontal_lift(vec![vec![p]], 3.0, -1.0, 1.0).unwrap();
        assert_eq!(lift.height(0.4).unwrap(), 3.0);
    }

    #[test]
    fn lifted_polynomial_is_horizontal() {
        let f = PlanarPiece::polynomial(
            Poly::new(vec![0.1, -0.5, 1.0, 0.3]),
            Poly::new(vec![0.0, 2.0, 0.0, -1.0, 0.25]),
            0.0,
            2.0,
            0.0,
        );
        let lift = horizontal_lift(vec![vec![f.clone()]], -1.0, 0.0, 2.0).unwrap();
        for k in 0..=50 {
            let s = 2.0 * k as f64 / 50.0;
            let (p, d) = (f.eval(s), f.deriv(s));
            let value = HPoint::new(vec![p.x, p.y, lift.height(s).unwrap()]).unwrap();
            let r = contact_residual(&value, &[d.x, d.y, lift.height_rate(s)]).unwrap();
            assert!(r.abs() < 1e-12, "{r}");
        }
    }

    #[test]
    fn rejects_gaps_and_non_finite_data() {
        let p = PlanarPiece::polynomial(Poly::x(), Poly::x(), 0.0, 0.5, 0.0);
        assert!(horizontal_lift(vec![vec![p.clone()]], 0.0, 0.0, 1.0).is_err());
        let bad = PlanarPiece::polynomial(Poly::new(vec![f64::NAN]), Poly::x(), 0.0, 1.0, 0.0);
        assert!(matches!(horizontal_lift(vec![vec![bad]], 0.0, 0.0, 1.0), Err(Error::NonFinite(_))));
    }
}
