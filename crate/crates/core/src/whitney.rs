//! Compact sets, Whitney jets, and the moduli that decide extendability.
//!
//! A jet is given by exact polynomials on each component of a finite union of
//! closed intervals. Moduli are sups over sampled pairs of points of `K`, so
//! every figure reported here carries the sampling density that produced it.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::heisenberg::{HPoint, PlanarPoint};
use crate::poly::Poly;

/// Highest polynomial degree accepted in a jet component.
pub const DEGREE_CAP: usize = 6;

/// Default number of sample points per interval of `K`.
pub const DEFAULT_SAMPLES: usize = 64;

/// Finite union of disjoint closed intervals, sorted left to right.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "Vec<[f64; 2]>", into = "Vec<[f64; 2]>")]
pub struct CompactSet {
    intervals: Vec<[f64; 2]>,
}

impl CompactSet {
    pub fn new(intervals: Vec<[f64; 2]>) -> Result<Self> {
        if intervals.is_empty() {
            return Err(Error::InvalidJet("compact set has no intervals".into()));
        }
        for (k, iv) in intervals.iter().enumerate() {
            if !iv[0].is_finite() || !iv[1].is_finite() {
                return Err(Error::NonFinite(format!("interval {k}")));
            }
            if iv[0] > iv[1] {
                return Err(Error::InvalidJet(format!("interval {k} has l > r: [{}, {}]", iv[0], iv[1])));
            }
        }
        if let Some(k) = intervals.windows(2).position(|w| !(w[0][1] < w[1][0])) {
            return Err(Error::InvalidJet(format!("intervals {k} and {} overlap or are unsorted", k + 1)));
        }
        Ok(Self { intervals })
    }

    pub fn intervals(&self) -> &[[f64; 2]] {
        &self.intervals
    }

    pub fn len(&self) -> usize {
        self.intervals.len()
    }

    pub fn is_empty(&self) -> bool {
        self.intervals.is_empty()
    }

    /// `I = [min K, max K]`.
    pub fn hull(&self) -> [f64; 2] {
        [self.intervals[0][0], self.intervals[self.intervals.len() - 1][1]]
    }

    /// Lebesgue measure.
    pub fn measure(&self) -> f64 {
        self.intervals.iter().map(|iv| iv[1] - iv[0]).sum()
    }

    /// Index of the interval containing `s`.
    pub fn locate(&self, s: f64) -> Option<usize> {
        let k = self.intervals.partition_point(|iv| iv[1] < s);
        (k < self.intervals.len() && self.intervals[k][0] <= s).then_some(k)
    }

    pub fn contains(&self, s: f64) -> bool {
        self.locate(s).is_some()
    }
}

impl TryFrom<Vec<[f64; 2]>> for CompactSet {
    type Error = Error;

    fn try_from(v: Vec<[f64; 2]>) -> Result<Self> {
        Self::new(v)
    }
}

impl From<CompactSet> for Vec<[f64; 2]> {
    fn from(k: CompactSet) -> Self {
        k.intervals
    }
}

/// Jet data on one interval of `K`. Polynomials use the absolute parameter.
#[derive(Debug, Clone, PartialEq)]
pub struct JetPiece {
    pub gamma: Vec<[Poly<f64>; 2]>,
    pub height: Poly<f64>,
    pub gamma_prime: Vec<[Poly<f64>; 2]>,
    pub height_prime: Poly<f64>,
    /// Derivatives were supplied rather than computed; always true for
    /// degenerate intervals.
    explicit_prime: bool,
}

impl JetPiece {
    /// Piece whose derivatives are the exact derivatives of its values.
    pub fn consistent(gamma: Vec<[Poly<f64>; 2]>, height: Poly<f64>) -> Self {
        let gamma_prime = gamma.iter().map(|[f, g]| [f.derivative(), g.derivative()]).collect();
        let height_prime = height.derivative();
        Self { gamma, height, gamma_prime, height_prime, explicit_prime: false }
    }

    /// Piece with supplied derivative data (free on isolated points, checked
    /// against the values elsewhere).
    pub fn with_derivatives(
        gamma: Vec<[Poly<f64>; 2]>,
        height: Poly<f64>,
        gamma_prime: Vec<[Poly<f64>; 2]>,
        height_prime: Poly<f64>,
    ) -> Self {
        Self { gamma, height, gamma_prime, height_prime, explicit_prime: true }
    }

    fn polys(&self) -> impl Iterator<Item = &Poly<f64>> {
        self.gamma.iter().chain(&self.gamma_prime).flat_map(|p| p.iter()).chain([&self.height, &self.height_prime])
    }
}

/// Whitney jet `(Γ, Γ')` on a compact set.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "JetInput", into = "JetInput")]
pub struct WhitneyJet {
    n: usize,
    set: CompactSet,
    pieces: Vec<JetPiece>,
}

fn polys_agree(p: &Poly<f64>, q: &Poly<f64>) -> bool {
    let len = p.coeffs().len().max(q.coeffs().len());
    let scale = p.coeffs().iter().chain(q.coeffs()).fold(1.0f64, |m, c| m.max(c.abs()));
    (0..len).all(|k| (p.coeff(k) - q.coeff(k)).abs() <= 1e-12 * scale)
}

impl WhitneyJet {
    pub fn new(n: usize, set: CompactSet, pieces: Vec<JetPiece>) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidJet("n must be positive".into()));
        }
        if pieces.len() != set.len() {
            return Err(Error::InvalidJet(format!("{} pieces for {} intervals", pieces.len(), set.len())));
        }
        for (k, (piece, iv)) in pieces.iter().zip(set.intervals()).enumerate() {
            if piece.gamma.len() != n || piece.gamma_prime.len() != n {
                return Err(Error::InvalidJet(format!("piece {k}: expected {n} planes")));
            }
            if piece.polys().any(|p| !p.is_finite()) {
                return Err(Error::NonFinite(format!("piece {k} coefficients")));
            }
            if piece.polys().any(|p| p.degree() > DEGREE_CAP) {
                return Err(Error::InvalidJet(format!("piece {k}: degree exceeds cap {DEGREE_CAP}")));
            }
            let degenerate = iv[0] == iv[1];
            if degenerate && !piece.explicit_prime {
                return Err(Error::InvalidJet(format!(
                    "piece {k}: isolated point {} needs gammaPrime and heightPrime",
                    iv[0]
                )));
            }
            if !degenerate && piece.explicit_prime {
                let exact = JetPiece::consistent(piece.gamma.clone(), piece.height.clone());
                let ok = exact
                    .gamma_prime
                    .iter()
                    .zip(&piece.gamma_prime)
                    .all(|(a, b)| polys_agree(&a[0], &b[0]) && polys_agree(&a[1], &b[1]))
                    && polys_agree(&exact.height_prime, &piece.height_prime);
                if !ok {
                    return Err(Error::InvalidJet(format!(
                        "piece {k}: supplied derivatives are not the derivatives of the values"
                    )));
                }
            }
        }
        Ok(Self { n, set, pieces })
    }

    /// Restricts one global curve, given by `gamma` and `height`, to `set`.
    pub fn from_global(n: usize, set: CompactSet, gamma: Vec<[Poly<f64>; 2]>, height: Poly<f64>) -> Result<Self> {
        let exact = JetPiece::consistent(gamma, height);
        let pieces = set
            .intervals()
            .iter()
            .map(|iv| {
                let mut p = exact.clone();
                p.explicit_prime = iv[0] == iv[1];
                p
            })
            .collect();
        Self::new(n, set, pieces)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn set(&self) -> &CompactSet {
        &self.set
    }

    pub fn pieces(&self) -> &[JetPiece] {
        &self.pieces
    }

    /// Restricts the jet to a compact subset whose intervals each lie inside
    /// one interval of the current set.
    pub fn restrict(&self, sub: CompactSet) -> Result<Self> {
        let mut pieces = Vec::with_capacity(sub.len());
        for iv in sub.intervals() {
            let k = self
                .set
                .locate(iv[0])
                .filter(|&k| iv[1] <= self.set.intervals()[k][1])
                .ok_or_else(|| Error::Domain(format!("[{}, {}] is not inside K", iv[0], iv[1])))?;
            let mut p = self.pieces[k].clone();
            p.explicit_prime = iv[0] == iv[1] || p.explicit_prime;
            pieces.push(p);
        }
        Self::new(self.n, sub, pieces)
    }

    /// `γ_j(s)` evaluated with the data of piece `k`.
    pub fn planar(&self, k: usize, j: usize, s: f64) -> PlanarPoint<f64> {
        let [f, g] = &self.pieces[k].gamma[j];
        PlanarPoint::new(f.eval(&s), g.eval(&s))
    }

    pub fn planar_prime(&self, k: usize, j: usize, s: f64) -> PlanarPoint<f64> {
        let [f, g] = &self.pieces[k].gamma_prime[j];
        PlanarPoint::new(f.eval(&s), g.eval(&s))
    }

    pub fn height(&self, k: usize, s: f64) -> f64 {
        self.pieces[k].height.eval(&s)
    }

    pub fn height_prime(&self, k: usize, s: f64) -> f64 {
        self.pieces[k].height_prime.eval(&s)
    }

    /// `Γ(s)` in `(x₁, y₁, …, xₙ, yₙ, t)` order, using piece `k`.
    pub fn value_on(&self, k: usize, s: f64) -> Vec<f64> {
        let p = &self.pieces[k];
        let mut v = Vec::with_capacity(2 * self.n + 1);
        for [f, g] in &p.gamma {
            v.push(f.eval(&s));
            v.push(g.eval(&s));
        }
        v.push(p.height.eval(&s));
        v
    }

    /// `Γ'(s)`, using piece `k`.
    pub fn deriv_on(&self, k: usize, s: f64) -> Vec<f64> {
        let p = &self.pieces[k];
        let mut v = Vec::with_capacity(2 * self.n + 1);
        for [f, g] in &p.gamma_prime {
            v.push(f.eval(&s));
            v.push(g.eval(&s));
        }
        v.push(p.height_prime.eval(&s));
        v
    }

    pub fn value(&self, s: f64) -> Result<Vec<f64>> {
        let k = self.locate_or_err(s)?;
        Ok(self.value_on(k, s))
    }

    pub fn deriv(&self, s: f64) -> Result<Vec<f64>> {
        let k = self.locate_or_err(s)?;
        Ok(self.deriv_on(k, s))
    }

    pub fn point(&self, s: f64) -> Result<HPoint<f64>> {
        HPoint::new(self.value(s)?)
    }

    fn locate_or_err(&self, s: f64) -> Result<usize> {
        self.set.locate(s).ok_or_else(|| Error::Domain(format!("{s} is not in K")))
    }

    /// Sample points `(piece, s)`: `samples` evenly spaced points per
    /// nondegenerate interval (endpoints included), one per isolated point.
    pub fn sample_points(&self, samples: usize) -> Vec<(usize, f64)> {
        let m = samples.max(2);
        let mut out = Vec::new();
        for (k, iv) in self.set.intervals().iter().enumerate() {
            if iv[0] == iv[1] {
                out.push((k, iv[0]));
                continue;
            }
            for i in 0..m {
                let s = if i + 1 == m { iv[1] } else { iv[0] + (iv[1] - iv[0]) * i as f64 / (m - 1) as f64 };
                out.push((k, s));
            }
        }
        out
    }
}

/// Wire format of a jet.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct JetInput {
    pub n: usize,
    pub intervals: Vec<[f64; 2]>,
    pub pieces: Vec<PieceInput>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct PieceInput {
    pub gamma: Vec<[Poly<f64>; 2]>,
    pub height: Poly<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub gamma_prime: Option<Vec<[Poly<f64>; 2]>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub height_prime: Option<Poly<f64>>,
}

impl TryFrom<JetInput> for WhitneyJet {
    type Error = Error;

    fn try_from(input: JetInput) -> Result<Self> {
        let set = CompactSet::new(input.intervals)?;
        let pieces = input
            .pieces
            .into_iter()
            .map(|p| match (p.gamma_prime, p.height_prime) {
                (Some(gp), Some(hp)) => Ok(JetPiece::with_derivatives(p.gamma, p.height, gp, hp)),
                (None, None) => Ok(JetPiece::consistent(p.gamma, p.height)),
                _ => Err(Error::InvalidJet("gammaPrime and heightPrime must be given together".into())),
            })
            .collect::<Result<Vec<_>>>()?;
        WhitneyJet::new(input.n, set, pieces)
    }
}

impl From<WhitneyJet> for JetInput {
    fn from(jet: WhitneyJet) -> Self {
        let pieces = jet
            .pieces
            .into_iter()
            .map(|p| {
                let explicit = p.explicit_prime;
                PieceInput {
                    gamma: p.gamma,
                    height: p.height,
                    gamma_prime: explicit.then_some(p.gamma_prime),
                    height_prime: explicit.then_some(p.height_prime),
                }
            })
            .collect();
        JetInput { n: jet.n, intervals: jet.set.intervals, pieces }
    }
}

/// A bounded component `(a, b)` of `I ∖ K`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Gap {
    pub a: f64,
    pub b: f64,
    /// Zero until [`epsilon_sequence`] assigns it.
    pub epsilon: f64,
    /// Index of the interval of `K` ending at `a` (the next one starts at `b`).
    pub left: usize,
}

impl Gap {
    pub fn len(&self) -> f64 {
        self.b - self.a
    }
}

pub fn gaps(jet: &WhitneyJet) -> Vec<Gap> {
    jet.set
        .intervals()
        .windows(2)
        .enumerate()
        .map(|(k, w)| Gap { a: w[0][1], b: w[1][0], epsilon: 0.0, left: k })
        .collect()
}

/// Pairwise Taylor remainders over a fixed sample of `K`, sorted by distance
/// so that moduli at any scale are prefix maxima.
#[derive(Debug, Clone)]
pub struct PairTable {
    dist: Vec<f64>,
    whitney: Vec<f64>,
    area: Vec<f64>,
    /// Per coordinate, the larger of the two one-sided remainders `/ d`.
    components: Vec<Vec<f64>>,
    samples: usize,
}

impl PairTable {
    pub fn new(jet: &WhitneyJet, samples: usize) -> Self {
        let pts = jet.sample_points(samples);
        let vals: Vec<Vec<f64>> = pts.iter().map(|&(k, s)| jet.value_on(k, s)).collect();
        let ders: Vec<Vec<f64>> = pts.iter().map(|&(k, s)| jet.deriv_on(k, s)).collect();
        let dim = 2 * jet.n() + 1;
        let mut rows: Vec<(f64, f64, f64, Vec<f64>)> = Vec::new();
        for i in 0..pts.len() {
            for l in i + 1..pts.len() {
                let (a, b) = (pts[i].1, pts[l].1);
                let d = b - a;
                if d <= 0.0 {
                    continue;
                }
                let (va, vb, da, db) = (&vals[i], &vals[l], &ders[i], &ders[l]);
                let mut fwd = 0.0f64;
                let mut bwd = 0.0f64;
                let mut comp = Vec::with_capacity(dim);
                for c in 0..dim {
                    let rf = (vb[c] - va[c] - d * da[c]) / d;
                    let rb = (va[c] - vb[c] + d * db[c]) / d;
                    fwd = fwd.hypot(rf);
                    bwd = bwd.hypot(rb);
                    comp.push(rf.abs().max(rb.abs()));
                }
                let mut cross = 0.0;
                for j in 0..jet.n() {
                    cross += va[2 * j + 1] * vb[2 * j] - va[2 * j] * vb[2 * j + 1];
                }
                let area = (vb[dim - 1] - va[dim - 1] - 2.0 * cross).abs() / (d * d);
                rows.push((d, fwd.max(bwd), area, comp));
            }
        }
        rows.sort_by(|x, y| x.0.total_cmp(&y.0));
        let mut table = Self {
            dist: Vec::with_capacity(rows.len()),
            whitney: Vec::with_capacity(rows.len()),
            area: Vec::with_capacity(rows.len()),
            components: vec![Vec::with_capacity(rows.len()); dim],
            samples,
        };
        let (mut w, mut ar) = (0.0f64, 0.0f64);
        let mut cm = vec![0.0f64; dim];
        for (d, wq, aq, comp) in rows {
            w = w.max(wq);
            ar = ar.max(aq);
            table.dist.push(d);
            table.whitney.push(w);
            table.area.push(ar);
            for c in 0..dim {
                cm[c] = cm[c].max(comp[c]);
                table.components[c].push(cm[c]);
            }
        }
        table
    }

    pub fn samples(&self) -> usize {
        self.samples
    }

    /// Number of sampled pairs at distance `≤ t`.
    pub fn pairs_within(&self, t: f64) -> usize {
        self.dist.partition_point(|&d| d <= t)
    }

    fn prefix(&self, v: &[f64], t: f64) -> f64 {
        match self.pairs_within(t) {
            0 => 0.0,
            k => v[k - 1],
        }
    }

    pub fn whitney(&self, t: f64) -> f64 {
        self.prefix(&self.whitney, t)
    }

    pub fn area(&self, t: f64) -> f64 {
        self.prefix(&self.area, t)
    }

    /// Whitney modulus of a single coordinate (`2j`, `2j+1` planar, `2n` height).
    pub fn component(&self, c: usize, t: f64) -> f64 {
        self.prefix(&self.components[c], t)
    }
}

fn check_scale(t: f64) -> Result<()> {
    if t > 0.0 && t.is_finite() {
        Ok(())
    } else {
        Err(Error::Domain(format!("scale must be positive, got {t}")))
    }
}

pub fn whitney_modulus(jet: &WhitneyJet, t: f64, samples: usize) -> Result<f64> {
    check_scale(t)?;
    Ok(PairTable::new(jet, samples).whitney(t))
}

pub fn area_modulus(jet: &WhitneyJet, t: f64, samples: usize) -> Result<f64> {
    check_scale(t)?;
    Ok(PairTable::new(jet, samples).area(t))
}

pub fn horizontality_defect(jet: &WhitneyJet, samples: usize) -> f64 {
    jet.sample_points(samples)
        .into_iter()
        .map(|(k, s)| {
            let v = jet.value_on(k, s);
            let d = jet.deriv_on(k, s);
            let n = jet.n();
            let mut rate = 0.0;
            for j in 0..n {
                rate += d[2 * j] * v[2 * j + 1] - v[2 * j] * d[2 * j + 1];
            }
            (d[2 * n] - 2.0 * rate).abs()
        })
        .fold(0.0, f64::max)
}

pub fn big_m(jet: &WhitneyJet) -> f64 {
    let mut m = 0.0f64;
    for g in gaps(jet) {
        for j in 0..jet.n() {
            let pa = jet.planar(g.left, j, g.a);
            let pb = jet.planar(g.left + 1, j, g.b);
            m = m.max(pb.sub(&pa).norm() / g.len());
            m = m.max(jet.planar_prime(g.left, j, g.a).norm());
            m = m.max(jet.planar_prime(g.left + 1, j, g.b).norm());
        }
    }
    1.0 + m
}

/// Headroom applied to the tight per-gap value.
pub const EPSILON_HEADROOM: f64 = 1.01;
/// Smallest epsilon handed out.
pub const EPSILON_FLOOR: f64 = 1e-12;

/// The five per-gap quantities that each epsilon must dominate, in order:
/// gap length, `|γ(b) − γ(a)|`, the two first-order quotients, and `1/n` times
/// the area quotient.
pub fn gap_quantities(jet: &WhitneyJet, gap: &Gap) -> [f64; 5] {
    let (ka, kb) = (gap.left, gap.left + 1);
    let d = gap.len();
    let (mut chord, mut qa, mut qb, mut cross) = (0.0f64, 0.0f64, 0.0f64, 0.0f64);
    for j in 0..jet.n() {
        let pa = jet.planar(ka, j, gap.a);
        let pb = jet.planar(kb, j, gap.b);
        let diff = pb.sub(&pa);
        chord = chord.hypot(diff.norm());
        qa = qa.hypot(diff.sub(&jet.planar_prime(ka, j, gap.a).scale(d)).norm() / d);
        qb = qb.hypot(diff.sub(&jet.planar_prime(kb, j, gap.b).scale(d)).norm() / d);
        cross += pb.x * pa.y - pa.x * pb.y;
    }
    let area = (jet.height(kb, gap.b) - jet.height(ka, gap.a) - 2.0 * cross).abs() / (d * d) / jet.n() as f64;
    [d, chord, qa, qb, area]
}

/// Assigns `ε^i` to every gap and returns the gaps sorted by decreasing length
/// with non-increasing epsilons.
pub fn epsilon_sequence(jet: &WhitneyJet, gaps: &[Gap]) -> Result<Vec<Gap>> {
    const NAMES: [&str; 5] = ["gap length", "chord length", "quotient at a", "quotient at b", "area quotient"];
    let mut out = Vec::with_capacity(gaps.len());
    for (i, g) in gaps.iter().enumerate() {
        let q = gap_quantities(jet, g);
        if let Some(bad) = q.iter().position(|v| !v.is_finite()) {
            return Err(Error::NonFiniteEpsilon { gap: i, a: g.a, b: g.b, quantity: NAMES[bad] });
        }
        let tight = q.iter().fold(0.0f64, |m, &v| m.max(v));
        out.push(Gap { epsilon: (tight * EPSILON_HEADROOM).max(EPSILON_FLOOR), ..*g });
    }
    out.sort_by(|x, y| y.len().total_cmp(&x.len()));
    for i in (0..out.len().saturating_sub(1)).rev() {
        out[i].epsilon = out[i].epsilon.max(out[i + 1].epsilon);
    }
    Ok(out)
}

/// Moduli measured on a ladder of scales.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct ModulusReport {
    pub scales: Vec<f64>,
    pub whitney: Vec<f64>,
    pub area: Vec<f64>,
    pub horizontality: f64,
    pub big_m: f64,
    pub samples_per_interval: usize,
    /// Scales at which no sampled pair was close enough to measure anything.
    pub inconclusive: Vec<f64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Condition {
    Whitney,
    Area,
    Horizontality,
}

impl fmt::Display for Condition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Condition::Whitney => "whitney",
            Condition::Area => "area",
            Condition::Horizontality => "horizontality",
        })
    }
}

/// Thresholds for [`validate`].
///
/// At each of the finest `window` scales `t` of the ladder a modulus must
/// satisfy `m(t) ≤ tol + kappa · V^p · √t`, where `V = 1 + max_K |Γ'|` and
/// `p` is 1 for the Whitney modulus and 2 for the area modulus (the area
/// quotient scales like a squared velocity).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct Tolerances {
    pub tol: f64,
    pub kappa: f64,
    pub window: usize,
    pub samples: usize,
    /// Fixed `V`; computed from the jet when absent.
    pub velocity_scale: Option<f64>,
    /// Fixed decreasing ladder of scales; derived from `K` when absent.
    pub ladder: Option<Vec<f64>>,
}

impl Default for Tolerances {
    fn default() -> Self {
        Self { tol: 1e-9, kappa: 16.0, window: 3, samples: DEFAULT_SAMPLES, velocity_scale: None, ladder: None }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct ValidationVerdict {
    pub report: ModulusReport,
    pub velocity_scale: f64,
    pub whitney_ok: bool,
    pub area_ok: bool,
    pub horizontality_ok: bool,
    pub extendable: bool,
    pub failing: Vec<Condition>,
}

/// Dyadic ladder from `diam I` down to the smallest gap (eight halvings when
/// `K` has no gaps or is a point).
pub fn default_ladder(jet: &WhitneyJet) -> Vec<f64> {
    let [lo, hi] = jet.set().hull();
    let diam = hi - lo;
    let g_min = gaps(jet).iter().map(Gap::len).fold(f64::INFINITY, f64::min);
    let top = if diam > 0.0 { diam } else { 1.0 };
    let mut ladder = vec![top];
    if g_min.is_finite() {
        let mut t = top;
        while t / 2.0 > g_min {
            t /= 2.0;
            ladder.push(t);
        }
        if g_min < top {
            ladder.push(g_min);
        }
    } else {
        for k in 1..=8 {
            ladder.push(top / f64::powi(2.0, k));
        }
    }
    ladder
}

pub fn velocity_scale(jet: &WhitneyJet, samples: usize) -> f64 {
    let sup = jet
        .sample_points(samples)
        .into_iter()
        .map(|(k, s)| jet.deriv_on(k, s).iter().fold(0.0f64, |m, v| m.hypot(*v)))
        .fold(0.0, f64::max);
    1.0 + sup
}

pub fn modulus_report(jet: &WhitneyJet, ladder: &[f64], samples: usize) -> Result<ModulusReport> {
    for &t in ladder {
        check_scale(t)?;
    }
    let table = PairTable::new(jet, samples);
    Ok(ModulusReport {
        scales: ladder.to_vec(),
        whitney: ladder.iter().map(|&t| table.whitney(t)).collect(),
        area: ladder.iter().map(|&t| table.area(t)).collect(),
        horizontality: horizontality_defect(jet, samples),
        big_m: big_m(jet),
        samples_per_interval: samples,
        inconclusive: ladder.iter().copied().filter(|&t| table.pairs_within(t) == 0).collect(),
    })
}

/// Decides whether the jet satisfies the Whitney, area, and horizontality
/// conditions at the finest probed scales.
pub fn validate(jet: &WhitneyJet, tol: &Tolerances) -> Result<ValidationVerdict> {
    let ladder = tol.ladder.clone().unwrap_or_else(|| default_ladder(jet));
    let report = modulus_report(jet, &ladder, tol.samples)?;
    let v = tol.velocity_scale.unwrap_or_else(|| velocity_scale(jet, tol.samples));
    let finest = ladder.len().saturating_sub(tol.window.max(1));
    let within =
        |m: &[f64], p: i32| (finest..ladder.len()).all(|i| m[i] <= tol.tol + tol.kappa * v.powi(p) * ladder[i].sqrt());
    let whitney_ok = within(&report.whitney, 1);
    let area_ok = within(&report.area, 2);
    let horizontality_ok = report.horizontality <= tol.tol;
    let mut failing = Vec::new();
    if !whitney_ok {
        failing.push(Condition::Whitney);
    }
    if !area_ok {
        failing.push(Condition::Area);
    }
    if !horizontality_ok {
        failing.push(Condition::Horizontality);
    }
    Ok(ValidationVerdict {
        report,
        velocity_scale: v,
        whitney_ok,
        area_ok,
        horizontality_ok,
        extendable: failing.is_empty(),
        failing,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    fn p(c: &[f64]) -> Poly<f64> {
        Poly::new(c.to_vec())
    }

    fn set(iv: &[[f64; 2]]) -> CompactSet {
        CompactSet::new(iv.to_vec()).unwrap()
    }

    fn constant_jet(iv: &[[f64; 2]]) -> WhitneyJet {
        WhitneyJet::from_global(1, set(iv), vec![[p(&[1.0]), p(&[2.0])]], p(&[3.0])).unwrap()
    }

    #[test]
    fn compact_set_validation() {
        assert!(CompactSet::new(vec![]).is_err());
        assert!(CompactSet::new(vec![[0.0, 1.0], [1.0, 2.0]]).is_err());
        assert!(CompactSet::new(vec![[1.0, 0.0]]).is_err());
        let k = set(&[[0.0, 0.0], [1.0, 2.0], [5.0, 5.0]]);
        assert_eq!(k.hull(), [0.0, 5.0]);
        assert_eq!(k.measure(), 1.0);
        assert_eq!(k.locate(1.5), Some(1));
        assert_eq!(k.locate(3.0), None);
        assert_eq!(k.locate(5.0), Some(2));
    }

    #[test]
    fn gap_enumeration() {
        assert!(gaps(&constant_jet(&[[0.0, 1.0]])).is_empty());
        let g = gaps(&constant_jet(&[[0.0, 1.0], [2.0, 3.0]]));
        assert_eq!((g[0].a, g[0].b), (1.0, 2.0));
        let g = gaps(&constant_jet(&[[0.0, 0.0], [1.0, 2.0], [5.0, 5.0]]));
        assert_eq!(g.iter().map(|g| (g.a, g.b)).collect::<Vec<_>>(), vec![(0.0, 1.0), (2.0, 5.0)]);
    }

    #[test]
    fn isolated_points_need_derivatives() {
        let piece = JetPiece::consistent(vec![[p(&[0.0]), p(&[0.0])]], p(&[0.0]));
        assert!(WhitneyJet::new(1, set(&[[0.0, 0.0]]), vec![piece]).is_err());
    }

    #[test]
    fn inconsistent_derivatives_are_rejected() {
        let piece = JetPiece::with_derivatives(
            vec![[p(&[0.0, 1.0]), p(&[0.0])]],
            p(&[0.0]),
            vec![[p(&[2.0]), p(&[0.0])]],
            p(&[0.0]),
        );
        assert!(matches!(WhitneyJet::new(1, set(&[[0.0, 1.0]]), vec![piece]), Err(Error::InvalidJet(_))));
    }

    #[test]
    fn constant_jet_has_zero_moduli() {
        let jet = constant_jet(&[[0.0, 1.0], [2.0, 3.0]]);
        assert_eq!(whitney_modulus(&jet, 1.0, 16).unwrap(), 0.0);
        assert_eq!(area_modulus(&jet, 1.0, 16).unwrap(), 0.0);
        assert_eq!(big_m(&jet), 1.0);
        assert!(whitney_modulus(&jet, 0.0, 16).is_err());
    }

    #[test]
    fn big_m_of_linear_chord() {
        // γ(s) = (3s, 4s): chord quotient and derivative norm are both 5.
        let jet = WhitneyJet::from_global(
            1,
            set(&[[0.0, 0.0], [1.0, 1.0]]),
            vec![[p(&[0.0, 3.0]), p(&[0.0, 4.0])]],
            p(&[0.0]),
        )
        .unwrap();
        assert_relative_eq!(big_m(&jet), 6.0, epsilon = 1e-15);
    }

    #[test]
    fn perturbed_height_derivative_on_a_point() {
        let piece = JetPiece::with_derivatives(
            vec![[p(&[0.0]), p(&[0.0])]],
            p(&[0.0]),
            vec![[p(&[0.0]), p(&[0.0])]],
            p(&[1.0]),
        );
        let good = JetPiece::consistent(vec![[p(&[0.0]), p(&[0.0])]], p(&[0.0]));
        let jet = WhitneyJet::new(1, set(&[[0.0, 1.0], [2.0, 2.0]]), vec![good, piece]).unwrap();
        assert!(horizontality_defect(&jet, 8) >= 1.0);
        let v = validate(&jet, &Tolerances::default()).unwrap();
        assert!(!v.extendable);
        assert_eq!(v.failing, vec![Condition::Horizontality]);
    }

    #[test]
    fn epsilon_floor_and_ordering() {
        let jet = constant_jet(&[[0.0, 0.0], [1e-13, 1.0], [1.5, 2.0], [4.0, 5.0]]);
        let eps = epsilon_sequence(&jet, &gaps(&jet)).unwrap();
        let lens: Vec<f64> = eps.iter().map(Gap::len).collect();
        assert!(lens.windows(2).all(|w| w[0] >= w[1]));
        assert!(eps.windows(2).all(|w| w[0].epsilon >= w[1].epsilon));
        assert!(eps.iter().all(|g| g.len() < g.epsilon));
        let single = constant_jet(&[[0.0, 1.0], [1.0 + 1e-14, 2.0]]);
        let e = epsilon_sequence(&single, &gaps(&single)).unwrap();
        assert_eq!(e[0].epsilon, EPSILON_FLOOR);
    }

    #[test]
    fn json_round_trip() {
        let text = r#"{"n":1,"intervals":[[0,1],[2,2]],"pieces":[
            {"gamma":[[[0,1],[0,0,1]]],"height":[0,0,0,-0.6666666666666666]},
            {"gamma":[[[2],[4]]],"height":[1],"gammaPrime":[[[1],[4]]],"heightPrime":[-8]}]}"#;
        let jet: WhitneyJet = serde_json::from_str(text).unwrap();
        assert_eq!(jet.n(), 1);
        assert_eq!(jet.deriv(0.5).unwrap(), vec![1.0, 1.0, -0.5]);
        let back: WhitneyJet = serde_json::from_str(&serde_json::to_string(&jet).unwrap()).unwrap();
        assert_eq!(back, jet);
    }

    #[test]
    fn restriction_keeps_data() {
        let jet =
            WhitneyJet::from_global(1, set(&[[0.0, 4.0]]), vec![[p(&[0.0, 1.0]), p(&[1.0, 0.0, 1.0])]], p(&[0.0]))
                .unwrap();
        let sub = jet.restrict(set(&[[0.0, 1.0], [2.0, 2.0], [3.0, 4.0]])).unwrap();
        assert_eq!(sub.value(2.0).unwrap(), jet.value(2.0).unwrap());
        assert_eq!(sub.deriv(2.0).unwrap(), jet.deriv(2.0).unwrap());
        assert!(jet.restrict(set(&[[3.0, 5.0]])).is_err());
    }
}
