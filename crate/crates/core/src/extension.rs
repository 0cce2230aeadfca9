//! Assembling and checking the C¹ horizontal extension of a jet.
//!
//! On `K` the extension is the jet itself. Each gap gets one relocated filler
//! per plane and the height is the horizontal lift started at `h(a)`. Outside
//! `I = [min K, max K]` the curve continues along straight horizontal rays.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::gap_filler::{self, build_eta, gap_frame, lemma_params, relocate, Branch, LemmaParams};
use crate::heisenberg::{contact_residual, HPoint, SampledCurve};
use crate::lift::{horizontal_lift, HorizontalLift};
use crate::planar::{locate, PlanarPiece};
use crate::quad::{self, QuadOptions};
use crate::whitney::{self, epsilon_sequence, gaps, Gap, Tolerances, WhitneyJet};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Segment {
    /// The jet on interval `piece` of `K`.
    OnK { lo: f64, hi: f64, piece: usize },
    /// Filler of one gap: per plane a list of pieces tiling `[lo, hi]`, lifted
    /// from height `h0`.
    #[serde(rename_all = "camelCase")]
    GapFill {
        lo: f64,
        hi: f64,
        epsilon: f64,
        h0: f64,
        branches: Vec<Branch>,
        params: Vec<LemmaParams<f64>>,
        planes: Vec<Vec<PlanarPiece<f64>>>,
    },
    /// Horizontal ray through `value` (the jet at `anchor`) with planar
    /// velocity `velocity`.
    Tail { lo: f64, hi: f64, anchor: f64, value: Vec<f64>, velocity: Vec<f64> },
}

impl Segment {
    pub fn range(&self) -> [f64; 2] {
        match self {
            Segment::OnK { lo, hi, .. } | Segment::GapFill { lo, hi, .. } | Segment::Tail { lo, hi, .. } => [*lo, *hi],
        }
    }
}

/// Serialized form; the lifts are rebuilt on load.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct CurveData {
    pub n: usize,
    pub window: [f64; 2],
    pub c_prime: f64,
    pub big_m: f64,
    pub jet: WhitneyJet,
    pub segments: Vec<Segment>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(try_from = "CurveData", into = "CurveData")]
pub struct ExtendedCurve {
    data: CurveData,
    lifts: Vec<Option<HorizontalLift<f64>>>,
}

impl TryFrom<CurveData> for ExtendedCurve {
    type Error = Error;

    fn try_from(data: CurveData) -> Result<Self> {
        if data.n != data.jet.n() {
            return Err(Error::DimensionMismatch { expected: data.jet.n(), found: data.n });
        }
        let mut lifts = Vec::with_capacity(data.segments.len());
        for seg in &data.segments {
            lifts.push(match seg {
                Segment::GapFill { lo, hi, h0, planes, .. } => {
                    if planes.len() != data.n {
                        return Err(Error::DimensionMismatch { expected: data.n, found: planes.len() });
                    }
                    Some(horizontal_lift(planes.clone(), *h0, *lo, *hi)?)
                }
                Segment::OnK { piece, .. } if *piece >= data.jet.set().len() => {
                    return Err(Error::Domain(format!("segment refers to missing piece {piece}")));
                }
                Segment::Tail { value, velocity, .. }
                    if value.len() != 2 * data.n + 1 || velocity.len() != 2 * data.n =>
                {
                    return Err(Error::DimensionMismatch { expected: 2 * data.n + 1, found: value.len() });
                }
                _ => None,
            });
        }
        let tiles = data.segments.windows(2).all(|w| w[0].range()[1] == w[1].range()[0])
            && data.segments.first().map(|s| s.range()[0]) == Some(data.window[0])
            && data.segments.last().map(|s| s.range()[1]) == Some(data.window[1]);
        if !tiles {
            return Err(Error::Domain("segments do not tile the window".into()));
        }
        Ok(Self { data, lifts })
    }
}

impl From<ExtendedCurve> for CurveData {
    fn from(c: ExtendedCurve) -> Self {
        c.data
    }
}

/// Value and derivative in `ℝ^{2n+1}`.
pub type Jet1 = (Vec<f64>, Vec<f64>);

impl ExtendedCurve {
    pub fn n(&self) -> usize {
        self.data.n
    }

    pub fn window(&self) -> [f64; 2] {
        self.data.window
    }

    pub fn jet(&self) -> &WhitneyJet {
        &self.data.jet
    }

    pub fn c_prime(&self) -> f64 {
        self.data.c_prime
    }

    pub fn big_m(&self) -> f64 {
        self.data.big_m
    }

    pub fn segments(&self) -> &[Segment] {
        &self.data.segments
    }

    pub fn data(&self) -> &CurveData {
        &self.data
    }

    /// Segment used for evaluation at `s`: the jet whenever `s ∈ K`.
    pub fn segment_at(&self, s: f64) -> Option<usize> {
        let [lo, hi] = self.data.window;
        if !(s >= lo && s <= hi) {
            return None;
        }
        let segs = &self.data.segments;
        if let Some(piece) = self.data.jet.set().locate(s) {
            return segs.iter().position(|g| matches!(g, Segment::OnK { piece: p, .. } if *p == piece));
        }
        let k = segs.partition_point(|g| g.range()[1] < s);
        (k < segs.len()).then_some(k)
    }

    /// Evaluates segment `idx` at `s` (which should lie in its range).
    pub fn eval_segment(&self, idx: usize, s: f64) -> Result<Jet1> {
        let n = self.data.n;
        match &self.data.segments[idx] {
            Segment::OnK { piece, .. } => Ok((self.data.jet.value_on(*piece, s), self.data.jet.deriv_on(*piece, s))),
            Segment::GapFill { planes, .. } => {
                let lift = self.lifts[idx].as_ref().expect("gap segments carry a lift");
                let mut v = Vec::with_capacity(2 * n + 1);
                let mut d = Vec::with_capacity(2 * n + 1);
                for pieces in planes {
                    let k = locate(pieces, s).ok_or_else(|| Error::Domain(format!("{s} outside gap filler")))?;
                    let (p, q) = (pieces[k].eval(s), pieces[k].deriv(s));
                    v.extend([p.x, p.y]);
                    d.extend([q.x, q.y]);
                }
                v.push(lift.height(s)?);
                d.push(lift.height_rate(s));
                Ok((v, d))
            }
            Segment::Tail { anchor, value, velocity, .. } => {
                let u = s - anchor;
                let mut rate = 0.0;
                for j in 0..n {
                    rate += velocity[2 * j] * value[2 * j + 1] - value[2 * j] * velocity[2 * j + 1];
                }
                rate *= 2.0;
                let mut v: Vec<f64> = (0..2 * n).map(|c| value[c] + u * velocity[c]).collect();
                v.push(value[2 * n] + u * rate);
                let mut d = velocity.clone();
                d.push(rate);
                Ok((v, d))
            }
        }
    }

    pub fn eval(&self, s: f64) -> Result<Jet1> {
        let idx = self
            .segment_at(s)
            .ok_or_else(|| Error::Domain(format!("{s} outside the window {:?}", self.data.window)))?;
        self.eval_segment(idx, s)
    }

    /// Values and derivatives on a strictly increasing grid inside the window.
    pub fn sample(&self, grid: &[f64]) -> Result<SampledCurve<f64>> {
        let mut values = Vec::with_capacity(grid.len());
        let mut derivs = Vec::with_capacity(grid.len());
        for &s in grid {
            let (v, d) = self.eval(s)?;
            values.push(HPoint::new(v)?);
            derivs.push(d);
        }
        SampledCurve::new(grid.to_vec(), values, Some(derivs))
    }
}

fn tail(jet: &WhitneyJet, piece: usize, anchor: f64, lo: f64, hi: f64) -> Segment {
    let value = jet.value_on(piece, anchor);
    let mut velocity = jet.deriv_on(piece, anchor);
    velocity.pop();
    Segment::Tail { lo, hi, anchor, value, velocity }
}

/// Builds the extension on `window ⊇ I`.
///
/// Unless `force` is set the jet must pass [`whitney::validate`] with `tol`.
/// `c_prime` overrides the envelope constant derived from `M`.
pub fn extend(
    jet: &WhitneyJet,
    window: [f64; 2],
    c_prime: Option<f64>,
    force: bool,
    tol: &Tolerances,
) -> Result<ExtendedCurve> {
    let [k_lo, k_hi] = jet.set().hull();
    if !(window[0] <= k_lo && window[1] >= k_hi) || !window[0].is_finite() || !window[1].is_finite() {
        return Err(Error::Domain(format!("window {window:?} must contain [{k_lo}, {k_hi}]")));
    }
    if !force {
        let verdict = whitney::validate(jet, tol)?;
        if !verdict.extendable {
            let names: Vec<String> = verdict.failing.iter().map(|c| c.to_string()).collect();
            return Err(Error::Rejected { condition: names.join(", ") });
        }
    }
    let big_m = whitney::big_m(jet);
    let c_prime = c_prime.unwrap_or_else(|| gap_filler::c_prime(big_m));
    let mut eps = epsilon_sequence(jet, &gaps(jet))?;
    eps.sort_by_key(|g| g.left);

    let intervals = jet.set().intervals();
    let last = intervals.len() - 1;
    let mut segments = Vec::new();
    if window[0] < k_lo {
        segments.push(tail(jet, 0, k_lo, window[0], k_lo));
    }
    for (k, iv) in intervals.iter().enumerate() {
        segments.push(Segment::OnK { lo: iv[0], hi: iv[1], piece: k });
        if k < last {
            segments.push(fill_gap(jet, &eps[k], c_prime, big_m)?);
        }
    }
    if window[1] > k_hi {
        segments.push(tail(jet, last, k_hi, k_hi, window[1]));
    }
    ExtendedCurve::try_from(CurveData { n: jet.n(), window, c_prime, big_m, jet: jet.clone(), segments })
}

fn fill_gap(jet: &WhitneyJet, gap: &Gap, c_prime: f64, big_m: f64) -> Result<Segment> {
    let mut planes = Vec::with_capacity(jet.n());
    let mut params = Vec::with_capacity(jet.n());
    let mut branches = Vec::with_capacity(jet.n());
    for j in 0..jet.n() {
        let p = lemma_params(jet, gap, j, c_prime, big_m)?;
        let frame = gap_frame(jet.planar(gap.left, j, gap.a), jet.planar(gap.left + 1, j, gap.b));
        let eta = build_eta(&p)?;
        planes.push(relocate(&eta, &frame, gap.a, gap.b));
        branches.push(gap_filler::branch_test(&p));
        params.push(p);
    }
    Ok(Segment::GapFill {
        lo: gap.a,
        hi: gap.b,
        epsilon: gap.epsilon,
        h0: jet.height(gap.left, gap.a),
        branches,
        params,
        planes,
    })
}

/// Discontinuity across one seam.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct SeamJump {
    pub s: f64,
    pub value: f64,
    pub deriv: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct GapLift {
    pub a: f64,
    pub b: f64,
    /// `h(b) − h(a)` from the jet.
    pub height_gain: f64,
    /// `|∫ h̃' − (h(b) − h(a))|` with the integral by independent quadrature.
    pub residual: f64,
    /// `residual / max(1, |h(b) − h(a)|)`.
    pub relative: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct GapDeviation {
    pub a: f64,
    pub b: f64,
    pub epsilon: f64,
    /// `P(ε)`.
    pub envelope: f64,
    /// `max_j sup |γ̃_j − γ_j(a)|`.
    pub planar_value: f64,
    /// `max_j sup |γ̃_j' − γ_j'(a)|`.
    pub planar_deriv: f64,
    /// `sup |h̃' − h'(a)|`.
    pub height_deriv: f64,
    /// `sup |Γ̃' − Γ'(a)|` in `ℝ^{2n+1}`.
    pub full_deriv: f64,
    pub within_envelope: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct VerificationReport {
    pub match_on_k_value: f64,
    pub match_on_k_deriv: f64,
    pub seam_value_jump: f64,
    pub seam_deriv_jump: f64,
    pub seams: Vec<SeamJump>,
    pub horizontality_residual: f64,
    pub per_gap_lift: Vec<GapLift>,
    pub gap_sup_deviation: Vec<GapDeviation>,
    pub samples_per_segment: usize,
}

/// Pass/fail thresholds for a [`VerificationReport`].
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct VerifyTolerances {
    pub match_on_k: f64,
    pub seam_value: f64,
    pub seam_deriv: f64,
    pub horizontality: f64,
    pub gap_lift: f64,
}

impl Default for VerifyTolerances {
    fn default() -> Self {
        Self { match_on_k: 1e-12, seam_value: 1e-10, seam_deriv: 1e-9, horizontality: 1e-9, gap_lift: 1e-9 }
    }
}

impl VerificationReport {
    /// Names and values of the residuals above tolerance.
    pub fn failures(&self, tol: &VerifyTolerances) -> Vec<(String, f64)> {
        let mut out = Vec::new();
        let mut check = |name: &str, value: f64, bound: f64| {
            if !(value <= bound) {
                out.push((name.to_string(), value));
            }
        };
        check("matchOnK.value", self.match_on_k_value, tol.match_on_k);
        check("matchOnK.deriv", self.match_on_k_deriv, tol.match_on_k);
        check("seamJumps.value", self.seam_value_jump, tol.seam_value);
        check("seamJumps.deriv", self.seam_deriv_jump, tol.seam_deriv);
        check("horizontalityResidual", self.horizontality_residual, tol.horizontality);
        for g in &self.per_gap_lift {
            check(&format!("perGapLift({}, {})", g.a, g.b), g.relative, tol.gap_lift);
        }
        for d in self.gap_sup_deviation.iter().filter(|d| !d.within_envelope) {
            out.push((format!("gapEnvelope({}, {})", d.a, d.b), d.planar_value.max(d.planar_deriv)));
        }
        out
    }

    pub fn passes(&self, tol: &VerifyTolerances) -> bool {
        self.failures(tol).is_empty()
    }
}

fn max_abs_diff(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y).abs()).fold(0.0, f64::max)
}

fn linspace(lo: f64, hi: f64, m: usize) -> Vec<f64> {
    if lo == hi {
        return vec![lo];
    }
    let m = m.max(2);
    (0..m).map(|i| if i + 1 == m { hi } else { lo + (hi - lo) * i as f64 / (m - 1) as f64 }).collect()
}

/// Independent check of every construction claim.
pub fn verify(ext: &ExtendedCurve, samples_per_segment: usize) -> Result<VerificationReport> {
    let jet = ext.jet();
    let n = ext.n();

    let (mut mv, mut md) = (0.0f64, 0.0f64);
    for (k, s) in jet.sample_points(samples_per_segment) {
        let (v, d) = ext.eval(s)?;
        mv = mv.max(max_abs_diff(&v, &jet.value_on(k, s)));
        md = md.max(max_abs_diff(&d, &jet.deriv_on(k, s)));
    }

    let segs = ext.segments();
    let mut seams = Vec::new();
    for (i, w) in segs.windows(2).enumerate() {
        let s = w[0].range()[1];
        let (vl, dl) = ext.eval_segment(i, s)?;
        let (vr, dr) = ext.eval_segment(i + 1, s)?;
        seams.push(SeamJump { s, value: max_abs_diff(&vl, &vr), deriv: max_abs_diff(&dl, &dr) });
    }
    for seg in segs {
        if let Segment::GapFill { planes, .. } = seg {
            for pieces in planes {
                for w in pieces.windows(2) {
                    let s = w[0].hi;
                    let (pl, pr) = (w[0].eval(s), w[1].eval(s));
                    let (ql, qr) = (w[0].deriv(s), w[1].deriv(s));
                    seams.push(SeamJump {
                        s,
                        value: (pl.x - pr.x).abs().max((pl.y - pr.y).abs()),
                        deriv: (ql.x - qr.x).abs().max((ql.y - qr.y).abs()),
                    });
                }
            }
        }
    }
    let seam_value_jump = seams.iter().map(|j| j.value).fold(0.0, f64::max);
    let seam_deriv_jump = seams.iter().map(|j| j.deriv).fold(0.0, f64::max);

    let mut horiz = 0.0f64;
    for (i, seg) in segs.iter().enumerate() {
        let [lo, hi] = seg.range();
        for s in linspace(lo, hi, samples_per_segment) {
            let (v, d) = ext.eval_segment(i, s)?;
            horiz = horiz.max(contact_residual(&HPoint::new(v)?, &d)?.abs());
        }
    }

    let opts = QuadOptions { abs_tol: 1e-13, rel_tol: 1e-13, max_intervals: 20_000 };
    let mut per_gap_lift = Vec::new();
    let mut gap_sup_deviation = Vec::new();
    for (idx, seg) in segs.iter().enumerate() {
        let Segment::GapFill { lo: a, hi: b, epsilon, planes, params, .. } = seg else { continue };
        let (a, b) = (*a, *b);
        let (ka, kb) = (jet.set().locate(a).expect("a in K"), jet.set().locate(b).expect("b in K"));
        let gain = jet.height(kb, b) - jet.height(ka, a);

        let mut breaks: Vec<f64> = planes.iter().flatten().flat_map(|p| [p.lo, p.hi]).collect();
        breaks.sort_by(f64::total_cmp);
        breaks.dedup();
        let integrand = |s: f64| {
            planes
                .iter()
                .map(|pieces| {
                    let k = locate(pieces, s).expect("quadrature node inside the gap");
                    let (p, d) = (pieces[k].eval(s), pieces[k].deriv(s));
                    2.0 * (d.x * p.y - p.x * d.y)
                })
                .sum::<f64>()
        };
        let integral = quad::integrate_with_breaks(integrand, &breaks, &opts)?.value;
        let residual = (integral - gain).abs();
        per_gap_lift.push(GapLift { a, b, height_gain: gain, residual, relative: residual / gain.abs().max(1.0) });

        let (va, da) = (jet.value_on(ka, a), jet.deriv_on(ka, a));
        let mut grid = linspace(a, b, samples_per_segment);
        grid.extend(breaks.iter().copied());
        let (mut pv, mut pd, mut hd, mut fd) = (0.0f64, 0.0f64, 0.0f64, 0.0f64);
        for s in grid {
            let (v, d) = ext.eval_segment(idx, s)?;
            for j in 0..n {
                pv = pv.max((v[2 * j] - va[2 * j]).hypot(v[2 * j + 1] - va[2 * j + 1]));
                pd = pd.max((d[2 * j] - da[2 * j]).hypot(d[2 * j + 1] - da[2 * j + 1]));
            }
            hd = hd.max((d[2 * n] - da[2 * n]).abs());
            fd = fd.max(d.iter().zip(&da).fold(0.0f64, |m, (x, y)| m.hypot(x - y)));
        }
        let envelope = params.iter().map(LemmaParams::envelope).fold(0.0, f64::max);
        gap_sup_deviation.push(GapDeviation {
            a,
            b,
            epsilon: *epsilon,
            envelope,
            planar_value: pv,
            planar_deriv: pd,
            height_deriv: hd,
            full_deriv: fd,
            within_envelope: pv < envelope && pd < envelope,
        });
    }

    Ok(VerificationReport {
        match_on_k_value: mv,
        match_on_k_deriv: md,
        seam_value_jump,
        seam_deriv_jump,
        seams,
        horizontality_residual: horiz,
        per_gap_lift,
        gap_sup_deviation,
        samples_per_segment,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::Poly;
    use crate::whitney::CompactSet;

    fn p(c: &[f64]) -> Poly<f64> {
        Poly::new(c.to_vec())
    }

    /// `γ(s) = (s, s²)` with its lift `h(s) = −(2/3)s³`.
    fn parabola(iv: &[[f64; 2]]) -> WhitneyJet {
        WhitneyJet::from_global(
            1,
            CompactSet::new(iv.to_vec()).unwrap(),
            vec![[p(&[0.0, 1.0]), p(&[0.0, 0.0, 1.0])]],
            p(&[0.0, 0.0, 0.0, -2.0 / 3.0]),
        )
        .unwrap()
    }

    #[test]
    fn single_interval_gets_tails() {
        let jet = parabola(&[[0.0, 1.0]]);
        let ext = extend(&jet, [-1.0, 2.0], None, false, &Tolerances::default()).unwrap();
        assert_eq!(ext.segments().len(), 3);
        let report = verify(&ext, 200).unwrap();
        assert!(report.passes(&VerifyTolerances::default()), "{:?}", report.failures(&VerifyTolerances::default()));
        assert!(report.seam_deriv_jump <= 1e-12);
        let (v, d) = ext.eval(2.0).unwrap();
        assert_eq!((v[0], v[1]), (2.0, 3.0));
        assert_eq!((d[0], d[1]), (1.0, 2.0));
    }

    #[test]
    fn two_intervals() {
        let jet = parabola(&[[0.0, 0.4], [0.5, 1.0]]);
        let ext = extend(&jet, [0.0, 1.0], None, false, &Tolerances::default()).unwrap();
        let report = verify(&ext, 1000).unwrap();
        assert!(report.passes(&VerifyTolerances::default()), "{:?}", report.failures(&VerifyTolerances::default()));
        assert_eq!(report.match_on_k_value, 0.0);
        assert_eq!(report.per_gap_lift.len(), 1);
        assert!(report.gap_sup_deviation[0].within_envelope);
        let sampled = ext.sample(&[0.0, 0.45, 1.0]).unwrap();
        assert_eq!(sampled.values[2].coords(), jet.value(1.0).unwrap().as_slice());
    }

    #[test]
    fn manifest_round_trip() {
        let jet = parabola(&[[0.0, 0.3], [0.35, 0.35], [0.5, 1.0]]);
        let ext = extend(&jet, [-0.5, 1.5], None, false, &Tolerances::default()).unwrap();
        let text = serde_json::to_string(&ext).unwrap();
        let back: ExtendedCurve = serde_json::from_str(&text).unwrap();
        for s in [-0.5, 0.1, 0.32, 0.35, 0.4, 1.2] {
            assert_eq!(ext.eval(s).unwrap(), back.eval(s).unwrap());
        }
    }

    #[test]
    fn window_must_cover_hull() {
        let jet = parabola(&[[0.0, 1.0]]);
        assert!(extend(&jet, [0.1, 1.0], None, false, &Tolerances::default()).is_err());
    }
}
