#![allow(dead_code)]

use apfree_core::{ClosedInterval, IntervalUnion, PLHomeo, Rat};
use proptest::prelude::*;
use rand::Rng;

/// Rationals in `[0,1]` with denominator at most `max_den`.
pub fn unit_rat(max_den: i64) -> impl Strategy<Value = Rat> {
    (1..=max_den).prop_flat_map(|d| (0..=d).prop_map(move |n| Rat::new(n, d)))
}

pub fn union_strategy(max_comps: usize, max_den: i64) -> impl Strategy<Value = IntervalUnion> {
    prop::collection::vec((unit_rat(max_den), unit_rat(max_den)), 0..=max_comps).prop_map(|pairs| {
        IntervalUnion::normalize(pairs.into_iter().map(|(a, b)| {
            let (lo, hi) = if a <= b { (a, b) } else { (b, a) };
            ClosedInterval::new(lo, hi).unwrap()
        }))
    })
}

/// Increasing PL homeomorphisms with up to `max_inner` interior breakpoints
/// on the grid `1/den`.
pub fn homeo_strategy(max_inner: usize) -> impl Strategy<Value = PLHomeo> {
    let den = 97i64;
    (
        prop::collection::btree_set(1..den, 0..=max_inner),
        prop::collection::btree_set(1..den, 0..=max_inner),
    )
        .prop_map(move |(xs, ys)| {
            let n = xs.len().min(ys.len());
            let mut bps = vec![(Rat::zero(), Rat::zero())];
            bps.extend(
                xs.into_iter()
                    .take(n)
                    .zip(ys.into_iter().take(n))
                    .map(|(x, y)| (Rat::new(x, den), Rat::new(y, den))),
            );
            bps.push((Rat::one(), Rat::one()));
            PLHomeo::new(bps).unwrap()
        })
}

pub fn random_rat<R: Rng>(rng: &mut R, max_den: i64) -> Rat {
    let d = rng.gen_range(1..=max_den);
    Rat::new(rng.gen_range(0..=d), d)
}

pub fn random_union<R: Rng>(rng: &mut R, max_comps: usize, max_den: i64) -> IntervalUnion {
    let k = rng.gen_range(1..=max_comps);
    IntervalUnion::normalize((0..k).map(|_| {
        let (a, b) = (random_rat(rng, max_den), random_rat(rng, max_den));
        let (lo, hi) = if a <= b { (a, b) } else { (b, a) };
        ClosedInterval::new(lo, hi).unwrap()
    }))
}

pub fn random_homeo<R: Rng>(rng: &mut R, max_inner: usize) -> PLHomeo {
    let den = 1009i64;
    let n = rng.gen_range(0..=max_inner);
    let mut xs: Vec<i64> = (0..n).map(|_| rng.gen_range(1..den)).collect();
    let mut ys: Vec<i64> = (0..n).map(|_| rng.gen_range(1..den)).collect();
    xs.sort_unstable();
    xs.dedup();
    ys.sort_unstable();
    ys.dedup();
    let m = xs.len().min(ys.len());
    let mut bps = vec![(Rat::zero(), Rat::zero())];
    bps.extend((0..m).map(|i| (Rat::new(xs[i], den), Rat::new(ys[i], den))));
    bps.push((Rat::one(), Rat::one()));
    PLHomeo::new(bps).unwrap()
}

/// Naive membership: linear scan over components.
pub fn scan_contains(u: &IntervalUnion, x: &Rat) -> bool {
    u.components().iter().any(|c| c.lo() <= x && x <= c.hi())
}
