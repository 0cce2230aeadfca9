//! A Whitney-class jet in ℍ¹ with vanishing horizontal part that admits no
//! C¹ horizontal extension.
//!
//! `K = ⋃ₙ [cₙ, dₙ] ∪ {1}` with `cₙ = 1 − 2⁻ⁿ`, `dₙ = 1 − (3/4)·2⁻ⁿ`, and
//! `Γ = (0, 0, 3⁻ⁿ)` on `[cₙ, dₙ]`, `Γ(1) = 0`, `Γ' ≡ 0`. Heights shrink fast
//! enough for the Whitney condition but the area quotient across the gap
//! `(dₙ, cₙ₊₁)` grows like `(32/3)(4/3)ⁿ`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::poly::Poly;
use crate::whitney::{CompactSet, JetPiece, PairTable, WhitneyJet};

pub fn c(n: u32) -> f64 {
    1.0 - 0.5f64.powi(n as i32)
}

pub fn d(n: u32) -> f64 {
    1.0 - 0.75 * 0.5f64.powi(n as i32)
}

pub fn level_height(n: u32) -> f64 {
    3.0f64.powi(-(n as i32))
}

/// The jet truncated to `levels` intervals plus the point `{1}`.
pub fn build(levels: u32) -> Result<WhitneyJet> {
    if levels == 0 {
        return Err(Error::Domain("levels must be at least 1".into()));
    }
    let zero = || [Poly::zero(), Poly::zero()];
    let mut intervals: Vec<[f64; 2]> = (0..levels).map(|n| [c(n), d(n)]).collect();
    intervals.push([1.0, 1.0]);
    let mut pieces: Vec<JetPiece> =
        (0..levels).map(|n| JetPiece::consistent(vec![zero()], Poly::constant(level_height(n)))).collect();
    pieces.push(JetPiece::with_derivatives(vec![zero()], Poly::zero(), vec![zero()], Poly::zero()));
    WhitneyJet::new(1, CompactSet::new(intervals)?, pieces)
}

/// `|h(c_{n+1}) − h(d_n)| / |c_{n+1} − d_n|²` read off `jet`, which must
/// contain levels `n` and `n + 1`.
pub fn blowup_ratio_in(jet: &WhitneyJet, n: usize) -> Result<f64> {
    if n + 1 >= jet.set().len() {
        return Err(Error::Domain(format!("jet has no level {}", n + 1)));
    }
    let a = jet.set().intervals()[n][1];
    let b = jet.set().intervals()[n + 1][0];
    Ok((jet.height(n + 1, b) - jet.height(n, a)).abs() / ((b - a) * (b - a)))
}

/// Area quotient across the gap following level `n`.
pub fn blowup_ratio(n: u32) -> f64 {
    let jet = build(n + 2).expect("n + 2 >= 1");
    blowup_ratio_in(&jet, n as usize).expect("jet has level n + 1")
}

/// `(32/3)(4/3)ⁿ`.
pub fn expected_ratio(n: u32) -> f64 {
    32.0 / 3.0 * (4.0f64 / 3.0).powi(n as i32)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct WhitneyBound {
    pub index: u32,
    pub scale: f64,
    pub measured: f64,
    pub bound: f64,
    pub holds: bool,
}

/// Whitney modulus of `table`'s jet at scale `2^{−(index+2)}` against
/// `4(2/3)^index`.
pub fn whitney_bound(table: &PairTable, index: u32) -> WhitneyBound {
    let scale = 0.5f64.powi(index as i32 + 2);
    let measured = table.whitney(scale);
    let bound = 4.0 * (2.0f64 / 3.0).powi(index as i32);
    WhitneyBound { index, scale, measured, bound, holds: measured <= bound }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct TableRow {
    pub n: u32,
    pub gap: f64,
    pub ratio: f64,
    pub expected_ratio: f64,
    pub whitney: WhitneyBound,
}

/// Rows `n = 0 … levels − 1`.
pub fn table(levels: u32, samples: usize) -> Result<Vec<TableRow>> {
    let jet = build(levels)?;
    let pairs = PairTable::new(&jet, samples);
    Ok((0..levels)
        .map(|n| TableRow {
            n,
            gap: c(n + 1) - d(n),
            ratio: blowup_ratio(n),
            expected_ratio: expected_ratio(n),
            whitney: whitney_bound(&pairs, n),
        })
        .collect())
}
