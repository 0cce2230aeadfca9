#![allow(dead_code)]

use heisenberg_whitney::whitney::{CompactSet, WhitneyJet};
use heisenberg_whitney::Poly;
use rand::Rng;

pub fn p(c: &[f64]) -> Poly {
    Poly::new(c.to_vec())
}

/// Random polynomial of exact degree `deg` with coefficients in `[-r, r]`.
pub fn random_poly<R: Rng>(rng: &mut R, deg: usize, r: f64) -> Poly {
    Poly::new((0..=deg).map(|_| rng.gen_range(-r..=r)).collect())
}

/// `h₀ + 2 Σ ∫₀ˢ (x'y − xy')`.
pub fn lift_height(gamma: &[[Poly; 2]], h0: f64) -> Poly {
    let mut rate = Poly::zero();
    for [x, y] in gamma {
        rate = rate.add(&x.derivative().mul(y).sub(&x.mul(&y.derivative())));
    }
    rate.scale(&2.0).antiderivative().add(&Poly::constant(h0))
}

/// A global horizontal curve whose height has degree at most 3: per plane one
/// coordinate is quadratic and the other linear.
pub fn cubic_lift_curve<R: Rng>(rng: &mut R, n: usize) -> (Vec<[Poly; 2]>, Poly) {
    let gamma: Vec<[Poly; 2]> = (0..n)
        .map(|_| {
            let quad = random_poly(rng, 2, 1.0);
            let lin = random_poly(rng, 1, 1.0);
            if rng.gen_bool(0.5) {
                [quad, lin]
            } else {
                [lin, quad]
            }
        })
        .collect();
    let h = lift_height(&gamma, rng.gen_range(-1.0..=1.0));
    (gamma, h)
}

/// `count` disjoint closed intervals in `[0, 1]` with gaps of at least `min_gap`.
pub fn random_set<R: Rng>(rng: &mut R, count: usize, min_gap: f64) -> CompactSet {
    loop {
        let mut cuts: Vec<f64> = (0..2 * count).map(|_| rng.gen_range(0.0..=1.0)).collect();
        cuts.sort_by(f64::total_cmp);
        let ok = (1..cuts.len()).all(|i| i % 2 == 1 || cuts[i] - cuts[i - 1] >= min_gap);
        if ok && cuts.windows(2).all(|w| w[0] < w[1]) {
            let intervals = cuts.chunks(2).map(|c| [c[0], c[1]]).collect();
            return CompactSet::new(intervals).unwrap();
        }
    }
}

pub fn global_jet(n: usize, set: CompactSet, gamma: &[[Poly; 2]], h: &Poly) -> WhitneyJet {
    WhitneyJet::from_global(n, set, gamma.to_vec(), h.clone()).unwrap()
}
