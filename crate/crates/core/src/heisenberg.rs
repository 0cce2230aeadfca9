//! Group law of the Heisenberg group ℍⁿ ≅ ℝ^{2n+1}.
//!
//! Coordinates are ordered `(x₁, y₁, …, xₙ, yₙ, t)`. The product is
//!
//! ```text
//! (x, y, t) * (x', y', t') = (x + x', y + y', t + t' + 2 Σ_j (x'_j y_j − x_j y'_j))
//! ```
//!
//! and the dilation `δ_r` scales horizontal coordinates by `r` and the height
//! by `r²`. Everything here only needs field operations, so it runs over exact
//! rationals as well as floats.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scalar::{Real, Scalar};

/// A point of ℍⁿ.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct HPoint<T> {
    coords: Vec<T>,
}

/// A point (or vector) in one `x_j y_j` plane.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct PlanarPoint<T> {
    pub x: T,
    pub y: T,
}

impl<T: Scalar> PlanarPoint<T> {
    pub fn new(x: T, y: T) -> Self {
        Self { x, y }
    }

    pub fn zero() -> Self {
        Self { x: T::zero(), y: T::zero() }
    }

    pub fn dot(&self, other: &Self) -> T {
        self.x.clone() * other.x.clone() + self.y.clone() * other.y.clone()
    }

    pub fn sub(&self, other: &Self) -> Self {
        Self::new(self.x.clone() - other.x.clone(), self.y.clone() - other.y.clone())
    }

    pub fn add(&self, other: &Self) -> Self {
        Self::new(self.x.clone() + other.x.clone(), self.y.clone() + other.y.clone())
    }

    pub fn scale(&self, s: T) -> Self {
        Self::new(self.x.clone() * s.clone(), self.y.clone() * s)
    }
}

impl<T: Real> PlanarPoint<T> {
    pub fn norm(&self) -> T {
        self.x.hypot(self.y)
    }

    pub fn is_finite(&self) -> bool {
        self.x.is_finite() && self.y.is_finite()
    }
}

impl<T: Scalar> HPoint<T> {
    /// Builds a point from `2n + 1` coordinates, `n ≥ 1`.
    pub fn new(coords: Vec<T>) -> Result<Self> {
        if coords.len() < 3 || coords.len().is_multiple_of(2) {
            return Err(Error::Domain(format!("a point of H^n needs 2n+1 >= 3 coordinates, got {}", coords.len())));
        }
        Ok(Self { coords })
    }

    /// Assembles a point from its planar components and height.
    pub fn from_parts(planes: &[PlanarPoint<T>], t: T) -> Result<Self> {
        let mut coords = Vec::with_capacity(2 * planes.len() + 1);
        for p in planes {
            coords.push(p.x.clone());
            coords.push(p.y.clone());
        }
        coords.push(t);
        Self::new(coords)
    }

    pub fn origin(n: usize) -> Self {
        assert!(n >= 1, "H^n needs n >= 1");
        Self { coords: vec![T::zero(); 2 * n + 1] }
    }

    /// Number of horizontal planes.
    pub fn n(&self) -> usize {
        self.coords.len() / 2
    }

    pub fn coords(&self) -> &[T] {
        &self.coords
    }

    pub fn into_coords(self) -> Vec<T> {
        self.coords
    }

    pub fn x(&self, j: usize) -> &T {
        &self.coords[2 * j]
    }

    pub fn y(&self, j: usize) -> &T {
        &self.coords[2 * j + 1]
    }

    pub fn t(&self) -> &T {
        &self.coords[self.coords.len() - 1]
    }

    pub fn planar(&self, j: usize) -> PlanarPoint<T> {
        PlanarPoint::new(self.x(j).clone(), self.y(j).clone())
    }

    fn check_same_n(&self, other: &Self) -> Result<()> {
        if self.n() != other.n() {
            return Err(Error::DimensionMismatch { expected: self.n(), found: other.n() });
        }
        Ok(())
    }
}

impl<T: Real> HPoint<T> {
    pub fn is_finite(&self) -> bool {
        self.coords.iter().all(|c| c.is_finite())
    }
}

/// Group product `p * q`.
pub fn group_mul<T: Scalar>(p: &HPoint<T>, q: &HPoint<T>) -> Result<HPoint<T>> {
    p.check_same_n(q)?;
    let n = p.n();
    let two = T::int(2);
    let mut coords = Vec::with_capacity(2 * n + 1);
    let mut t = p.t().clone() + q.t().clone();
    for j in 0..n {
        let (x, y) = (p.x(j).clone(), p.y(j).clone());
        let (xq, yq) = (q.x(j).clone(), q.y(j).clone());
        t = t + two.clone() * (xq.clone() * y.clone() - x.clone() * yq.clone());
        coords.push(x + xq);
        coords.push(y + yq);
    }
    coords.push(t);
    Ok(HPoint { coords })
}

/// Group inverse. The symplectic correction vanishes for `q = -p`, so the
/// inverse is plain negation.
pub fn group_inv<T: Scalar>(p: &HPoint<T>) -> HPoint<T> {
    HPoint { coords: p.coords.iter().map(|c| -c.clone()).collect() }
}

/// Heisenberg dilation `δ_r`.
pub fn dilate<T: Scalar>(r: T, p: &HPoint<T>) -> Result<HPoint<T>> {
    if !(r > T::zero()) {
        return Err(Error::Domain(format!("dilation factor must be positive, got {r:?}")));
    }
    let last = p.coords.len() - 1;
    let coords = p
        .coords
        .iter()
        .enumerate()
        .map(|(i, c)| if i == last { c.clone() * r.clone() * r.clone() } else { c.clone() * r.clone() })
        .collect();
    Ok(HPoint { coords })
}

/// Standard symplectic form `ω(u, v) = u₁v₂ − u₂v₁`.
pub fn symplectic<T: Scalar>(u: &PlanarPoint<T>, v: &PlanarPoint<T>) -> T {
    u.x.clone() * v.y.clone() - u.y.clone() * v.x.clone()
}

/// Contact-form residual `h' − 2 Σ_j (f_j' g_j − f_j g_j')` of a velocity
/// attached at `value`. Zero exactly when the velocity is horizontal.
pub fn contact_residual<T: Scalar>(value: &HPoint<T>, velocity: &[T]) -> Result<T> {
    if velocity.len() != value.coords.len() {
        return Err(Error::DimensionMismatch { expected: value.coords.len(), found: velocity.len() });
    }
    let n = value.n();
    let mut r = velocity[2 * n].clone();
    for j in 0..n {
        let vel = PlanarPoint::new(velocity[2 * j].clone(), velocity[2 * j + 1].clone());
        r = r - T::int(2) * symplectic(&vel, &value.planar(j));
    }
    Ok(r)
}

/// Pansu difference quotient `δ_{1/step}(pa⁻¹ * pb)`.
pub fn pansu_quotient<T: Scalar>(pa: &HPoint<T>, pb: &HPoint<T>, step: T) -> Result<HPoint<T>> {
    if !(step > T::zero()) {
        return Err(Error::Domain(format!("step must be positive, got {step:?}")));
    }
    let diff = group_mul(&group_inv(pa), pb)?;
    dilate(T::one() / step, &diff)
}

/// Samples of a curve in ℍⁿ on a parameter grid.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SampledCurve<T> {
    pub grid: Vec<T>,
    pub values: Vec<HPoint<T>>,
    pub derivs: Option<Vec<Vec<T>>>,
}

impl<T: Scalar> SampledCurve<T> {
    pub fn new(grid: Vec<T>, values: Vec<HPoint<T>>, derivs: Option<Vec<Vec<T>>>) -> Result<Self> {
        if grid.windows(2).any(|w| !(w[0] < w[1])) {
            return Err(Error::Domain("sample grid must be strictly increasing".into()));
        }
        if values.len() != grid.len() {
            return Err(Error::DimensionMismatch { expected: grid.len(), found: values.len() });
        }
        if let Some(d) = &derivs {
            if d.len() != grid.len() {
                return Err(Error::DimensionMismatch { expected: grid.len(), found: d.len() });
            }
        }
        Ok(Self { grid, values, derivs })
    }

    pub fn len(&self) -> usize {
        self.grid.len()
    }

    pub fn is_empty(&self) -> bool {
        self.grid.is_empty()
    }
}
