//! Approximating a piecewise-polynomial horizontal curve by a C¹ horizontal
//! curve off a set of small measure.
//!
//! `[a, b]` is cut into grid cells. Cells touching an interior knot are always
//! dropped. For the rest, the first-order quotient `ψ_k` and the area quotient
//! `φ_k` are measured at the cell nodes over windows `r_k = (b − a)·4^{−k}`
//! and compared with thresholds `τ_k = 2^{−k}`. The surviving cells form `E`;
//! the curve restricted to `E` is then extended.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::extension::{extend, verify, ExtendedCurve, VerificationReport};
use crate::poly::Poly;
use crate::whitney::{CompactSet, JetPiece, Tolerances, WhitneyJet, DEGREE_CAP};

/// Exact polynomial data on one knot interval; absolute parameter.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CurvePiece {
    pub gamma: Vec<[Poly<f64>; 2]>,
    pub height: Poly<f64>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct CurveInput {
    pub n: usize,
    pub knots: Vec<f64>,
    pub pieces: Vec<CurvePiece>,
}

/// Continuous curve, polynomial between consecutive knots, horizontal on
/// every piece.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "CurveInput", into = "CurveInput")]
pub struct PiecewiseCurve {
    n: usize,
    knots: Vec<f64>,
    pieces: Vec<CurvePiece>,
}

/// Tolerance on value jumps at knots and on the contact residual.
pub const CURVE_TOL: f64 = 1e-9;

fn components(p: &CurvePiece) -> Vec<&Poly<f64>> {
    p.gamma.iter().flat_map(|g| g.iter()).chain(std::iter::once(&p.height)).collect()
}

fn contact_polynomial(p: &CurvePiece) -> Poly<f64> {
    let mut rate = Poly::zero();
    for [f, g] in &p.gamma {
        rate = rate.add(&f.derivative().mul(g).sub(&f.mul(&g.derivative())));
    }
    p.height.derivative().sub(&rate.scale(&2.0))
}

impl TryFrom<CurveInput> for PiecewiseCurve {
    type Error = Error;

    fn try_from(c: CurveInput) -> Result<Self> {
        PiecewiseCurve::new(c.n, c.knots, c.pieces)
    }
}

impl From<PiecewiseCurve> for CurveInput {
    fn from(c: PiecewiseCurve) -> Self {
        CurveInput { n: c.n, knots: c.knots, pieces: c.pieces }
    }
}

impl PiecewiseCurve {
    pub fn new(n: usize, knots: Vec<f64>, pieces: Vec<CurvePiece>) -> Result<Self> {
        if n == 0 || knots.len() < 2 || pieces.len() + 1 != knots.len() {
            return Err(Error::InvalidJet(format!(
                "need n >= 1 and one piece per knot interval ({} knots, {} pieces)",
                knots.len(),
                pieces.len()
            )));
        }
        if knots.iter().any(|k| !k.is_finite()) || knots.windows(2).any(|w| !(w[0] < w[1])) {
            return Err(Error::InvalidJet("knots must be finite and strictly increasing".into()));
        }
        for (i, p) in pieces.iter().enumerate() {
            if p.gamma.len() != n {
                return Err(Error::InvalidJet(format!("piece {i}: expected {n} planes")));
            }
            if components(p).iter().any(|c| !c.is_finite()) {
                return Err(Error::NonFinite(format!("piece {i} coefficients")));
            }
            if components(p).iter().any(|c| c.degree() > DEGREE_CAP) {
                return Err(Error::InvalidJet(format!("piece {i}: degree exceeds cap {DEGREE_CAP}")));
            }
            let (residual, _) = contact_polynomial(p).max_abs_on(knots[i], knots[i + 1]);
            if residual > CURVE_TOL {
                return Err(Error::InvalidJet(format!("piece {i} is not horizontal (residual {residual:e})")));
            }
        }
        for i in 1..pieces.len() {
            let s = knots[i];
            let jump = components(&pieces[i - 1])
                .iter()
                .zip(components(&pieces[i]))
                .map(|(l, r)| (l.eval(&s) - r.eval(&s)).abs())
                .fold(0.0, f64::max);
            if jump > CURVE_TOL {
                return Err(Error::InvalidJet(format!("curve jumps by {jump:e} at knot {s}")));
            }
        }
        Ok(Self { n, knots, pieces })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn knots(&self) -> &[f64] {
        &self.knots
    }

    pub fn pieces(&self) -> &[CurvePiece] {
        &self.pieces
    }

    pub fn domain(&self) -> [f64; 2] {
        [self.knots[0], self.knots[self.knots.len() - 1]]
    }

    /// Piece whose closed interval contains `s` (the left one at a knot).
    pub fn piece_of(&self, s: f64) -> usize {
        self.knots[1..].partition_point(|&k| k < s).min(self.pieces.len() - 1)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct LuzinOptions {
    /// Number of grid cells.
    pub grid: usize,
    /// Finest level `K` of the window ladder.
    pub levels: u32,
    /// Sample points per piece for pairs that straddle a knot.
    pub cross_samples: usize,
}

impl Default for LuzinOptions {
    fn default() -> Self {
        Self { grid: 400, levels: 6, cross_samples: 64 }
    }
}

/// `ψ_k`, `φ_k` per cell at one level.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct LevelProfile {
    pub level: u32,
    pub window: f64,
    pub threshold: f64,
    pub psi: Vec<f64>,
    pub phi: Vec<f64>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct LuzinResult {
    pub e: CompactSet,
    /// Upper bound (outward rounded) on `|[a, b] ∖ E|`.
    pub measure_removed: f64,
    pub eps: f64,
    pub cells: usize,
    pub knot_cells: Vec<usize>,
    pub selected_level: u32,
    pub profiles: Vec<LevelProfile>,
    pub extension: ExtendedCurve,
    pub report: VerificationReport,
}

/// Sup over `s ∈ (t − r, t + r) ∩ [a, b]`, `s ≠ t`, of the first-order and
/// area quotients at `t`, with `t` taken on piece `it`.
fn quotients(curve: &PiecewiseCurve, it: usize, t: f64, r: f64, cross: usize) -> (f64, f64) {
    let n = curve.n;
    let dim = 2 * n + 1;
    let [a, b] = curve.domain();
    let (lo, hi) = ((t - r).max(a), (t + r).min(b));
    let piece = &curve.pieces[it];
    let comps = components(piece);
    let vt: Vec<f64> = comps.iter().map(|c| c.eval(&t)).collect();
    let dt: Vec<f64> = comps.iter().map(|c| c.derivative().eval(&t)).collect();

    // Same piece: remainders as polynomials in u = s − t.
    let (same_lo, same_hi) = ((curve.knots[it]).max(lo), (curve.knots[it + 1]).min(hi));
    let mut psi = 0.0f64;
    let mut phi = 0.0f64;
    if same_lo < same_hi {
        let mut sq = Poly::zero();
        for c in &comps {
            let q = c.shift(&t).div_by_power(2).mul(&Poly::x());
            sq = sq.add(&q.mul(&q));
        }
        psi = sq.max_abs_on(same_lo - t, same_hi - t).0.sqrt();
        let mut area = piece.height.shift(&t);
        for (j, [f, g]) in piece.gamma.iter().enumerate() {
            let cross_term = f.shift(&t).scale(&vt[2 * j + 1]).sub(&g.shift(&t).scale(&vt[2 * j]));
            area = area.sub(&cross_term.scale(&2.0));
        }
        phi = area.div_by_power(2).max_abs_on(same_lo - t, same_hi - t).0;
    }

    // Other pieces: sampled.
    for (i, p) in curve.pieces.iter().enumerate() {
        if i == it {
            continue;
        }
        let (slo, shi) = (curve.knots[i].max(lo), curve.knots[i + 1].min(hi));
        if slo > shi {
            continue;
        }
        let m = cross.max(2);
        for k in 0..m {
            let s = slo + (shi - slo) * k as f64 / (m - 1) as f64;
            let u = s - t;
            if u == 0.0 {
                continue;
            }
            let vs: Vec<f64> = components(p).iter().map(|c| c.eval(&s)).collect();
            let w = (0..dim).fold(0.0f64, |acc, c| acc.hypot(vs[c] - vt[c] - u * dt[c]));
            psi = psi.max(w / u.abs());
            let mut cr = 0.0;
            for j in 0..n {
                cr += vs[2 * j] * vt[2 * j + 1] - vt[2 * j] * vs[2 * j + 1];
            }
            phi = phi.max((vs[dim - 1] - vt[dim - 1] - 2.0 * cr).abs() / (u * u));
        }
    }
    (psi, phi)
}

fn upward_sum(terms: impl Iterator<Item = f64>) -> f64 {
    terms.fold(0.0f64, |acc, w| (acc + w.next_up()).next_up())
}

/// Finds `E ⊆ [a, b]` with `|[a, b] ∖ E| < eps` on which the curve extends to
/// a C¹ horizontal curve, and builds that extension on `[a, b]`.
pub fn approximate(curve: &PiecewiseCurve, eps: f64, opts: &LuzinOptions) -> Result<LuzinResult> {
    if !(eps > 0.0) {
        return Err(Error::Domain(format!("eps must be positive, got {eps}")));
    }
    let [a, b] = curve.domain();
    let cells = opts.grid.max(1);
    let width = (b - a) / cells as f64;
    let edge = |i: usize| if i == cells { b } else { a + width * i as f64 };
    let interior_knots = &curve.knots[1..curve.knots.len() - 1];

    let knot_cells: Vec<usize> =
        (0..cells).filter(|&i| interior_knots.iter().any(|&k| k >= edge(i) && k <= edge(i + 1))).collect();

    let mut profiles = Vec::new();
    for level in 0..=opts.levels {
        let window = (b - a) * 0.25f64.powi(level as i32);
        let threshold = 0.5f64.powi(level as i32);
        let mut psi = vec![0.0f64; cells];
        let mut phi = vec![0.0f64; cells];
        for i in 0..cells {
            if knot_cells.contains(&i) {
                psi[i] = f64::INFINITY;
                phi[i] = f64::INFINITY;
                continue;
            }
            let (lo, hi) = (edge(i), edge(i + 1));
            let it = curve.piece_of(0.5 * (lo + hi));
            for t in [lo, 0.5 * (lo + hi), hi] {
                let (ps, ph) = quotients(curve, it, t, window, opts.cross_samples);
                psi[i] = psi[i].max(ps);
                phi[i] = phi[i].max(ph);
            }
        }
        profiles.push(LevelProfile { level, window, threshold, psi, phi });
    }

    // A cell enters at level k once it meets every threshold from k to K.
    // The kept set grows with k, so the finest level keeps the most cells.
    let selected_level = opts.levels;
    let keep: Vec<bool> = (0..cells)
        .map(|i| {
            let p = &profiles[selected_level as usize];
            p.psi[i] <= p.threshold && p.phi[i] <= p.threshold
        })
        .collect();

    let removed = upward_sum((0..cells).filter(|&i| !keep[i]).map(|i| edge(i + 1) - edge(i)));
    if !(removed < eps) {
        return Err(Error::BudgetExceeded { removed, eps, cells });
    }
    let mut intervals: Vec<[f64; 2]> = Vec::new();
    for i in (0..cells).filter(|&i| keep[i]) {
        match intervals.last_mut() {
            Some(last) if last[1] == edge(i) => last[1] = edge(i + 1),
            _ => intervals.push([edge(i), edge(i + 1)]),
        }
    }
    if intervals.is_empty() {
        return Err(Error::BudgetExceeded { removed, eps, cells });
    }
    let e = CompactSet::new(intervals)?;
    let pieces = e
        .intervals()
        .iter()
        .map(|iv| {
            let p = &curve.pieces[curve.piece_of(0.5 * (iv[0] + iv[1]))];
            JetPiece::consistent(p.gamma.clone(), p.height.clone())
        })
        .collect();
    let jet = WhitneyJet::new(curve.n, e.clone(), pieces)?;
    let extension = match extend(&jet, [a, b], None, false, &Tolerances::default()) {
        Ok(ext) => ext,
        Err(Error::Rejected { condition }) => {
            return Err(Error::Internal(format!("restriction to E fails the {condition} condition at this resolution")))
        }
        Err(other) => return Err(other),
    };
    let report = verify(&extension, 1000)?;
    Ok(LuzinResult { e, measure_removed: removed, eps, cells, knot_cells, selected_level, profiles, extension, report })
}

/// `γ(s) = (s, |s|)` on `[−1, 1]` with its (constant) lift.
pub fn corner_curve() -> PiecewiseCurve {
    let p = |c: &[f64]| Poly::new(c.to_vec());
    PiecewiseCurve::new(
        1,
        vec![-1.0, 0.0, 1.0],
        vec![
            CurvePiece { gamma: vec![[p(&[0.0, 1.0]), p(&[0.0, -1.0])]], height: Poly::zero() },
            CurvePiece { gamma: vec![[p(&[0.0, 1.0]), p(&[0.0, 1.0])]], height: Poly::zero() },
        ],
    )
    .expect("corner curve is valid")
}
