//! AP-free anchor sets: one point per cell, pinned at 0 and 1.

use std::collections::HashSet;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::interval::ClosedInterval;
use crate::rat::Rat;

/// Strictly increasing points from 0 to 1 with no 3-term AP, plus their
/// defect `min |p_m + p_k - 2 p_n|` over `m < n < k`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PointConfig {
    points: Vec<Rat>,
    defect: Rat,
}

impl PointConfig {
    pub fn new(points: Vec<Rat>) -> Result<Self> {
        if points.len() < 3 {
            return Err(Error::InvalidArgument("need at least three points".into()));
        }
        if !points[0].is_zero() || points[points.len() - 1] != Rat::one() {
            return Err(Error::InvalidArgument("points must start at 0 and end at 1".into()));
        }
        let defect = defect(&points)?;
        Ok(PointConfig { points, defect })
    }

    pub fn points(&self) -> &[Rat] {
        &self.points
    }

    pub fn defect(&self) -> &Rat {
        &self.defect
    }
}

/// `min_{m<n<k} |p_m + p_k - 2 p_n|` for strictly increasing `p`.
///
/// For a fixed middle index the inner minimum over the left and right parts
/// is a two-pointer sweep, so the whole computation is quadratic.
pub fn defect(points: &[Rat]) -> Result<Rat> {
    if points.len() < 3 {
        return Err(Error::InvalidArgument("need at least three points".into()));
    }
    if points.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::InvalidArgument("points must be strictly increasing".into()));
    }
    let mut best: Option<Rat> = None;
    for n in 1..points.len() - 1 {
        let target = points[n].mul_int(2);
        let left = &points[..n];
        let right = &points[n + 1..];
        let mut i = 0usize;
        let mut j = right.len();
        while i < left.len() && j > 0 {
            let s = &left[i] + &right[j - 1];
            let diff = &s - &target;
            if diff.is_zero() {
                return Err(Error::ApPresent {
                    start: left[i].clone(),
                    step: &points[n] - &left[i],
                });
            }
            let abs = diff.abs();
            if best.as_ref().is_none_or(|b| &abs < b) {
                best = Some(abs);
            }
            if diff.is_negative() {
                i += 1;
            } else {
                j -= 1;
            }
        }
    }
    Ok(best.expect("at least one triple"))
}

/// Relative positions 1/2, 1/4, 3/4, 1/8, 3/8, 5/8, 7/8, ...
fn dyadic_positions() -> impl Iterator<Item = Rat> {
    (1u32..).flat_map(|level| {
        let den = 1i64 << level.min(62);
        (0..1i64 << (level - 1).min(61)).map(move |j| Rat::new(2 * j + 1, den))
    })
}

/// Fixed points sorted by an `f64` shadow. Lookups compare exactly only
/// among entries whose shadow lies within `TOL` of the query.
struct Fixed {
    vals: Vec<(f64, Rat)>,
}

const TOL: f64 = 1e-9;

impl Fixed {
    fn insert(&mut self, p: Rat) {
        let f = p.to_f64();
        let at = self.vals.partition_point(|(v, _)| *v < f);
        self.vals.insert(at, (f, p));
    }

    fn contains_near(&self, approx: f64, exact: impl FnOnce() -> Rat) -> bool {
        let lo = self.vals.partition_point(|(v, _)| *v < approx - TOL);
        let mut near = self.vals[lo..]
            .iter()
            .take_while(|(v, _)| *v <= approx + TOL)
            .peekable();
        if near.peek().is_none() {
            return false;
        }
        let x = exact();
        near.any(|(_, r)| *r == x)
    }

    fn forms_ap_with(&self, c: &Rat) -> bool {
        let cf = c.to_f64();
        self.vals.iter().any(|(af, a)| {
            // c as an end term, as the middle term, or with a in the middle
            self.contains_near(2.0 * af - cf, || a.mul_int(2) - c)
                || self.contains_near(2.0 * cf - af, || c.mul_int(2) - a)
                || self.contains_near((af + cf) / 2.0, || (a + c).half())
        })
    }
}

/// Chooses `p_1 = 0`, `p_r = 1` and, left to right, one interior point per
/// interior cell: the first dyadic relative position that does not complete
/// a 3-term AP with two already fixed points.
pub fn pick_apfree(cells: &[ClosedInterval]) -> Result<PointConfig> {
    let r = cells.len();
    if r < 3 {
        return Err(Error::BadCells(format!("need at least 3 cells, got {r}")));
    }
    if !cells[0].lo().is_zero() {
        return Err(Error::BadCells("first cell must contain 0".into()));
    }
    if cells[r - 1].hi() != &Rat::one() {
        return Err(Error::BadCells("last cell must contain 1".into()));
    }
    if let Some(w) = cells.windows(2).find(|w| w[0].hi() >= w[1].lo()) {
        return Err(Error::BadCells(format!(
            "cells {:?} and {:?} overlap or are out of order",
            w[0], w[1]
        )));
    }
    if let Some(c) = cells[1..r - 1].iter().find(|c| c.is_degenerate()) {
        return Err(Error::BadCells(format!("interior cell {c:?} is degenerate")));
    }

    let mut fixed = Fixed {
        vals: Vec::with_capacity(r),
    };
    fixed.insert(Rat::zero());
    fixed.insert(Rat::one());
    let mut points = Vec::with_capacity(r);
    points.push(Rat::zero());
    for cell in &cells[1..r - 1] {
        let p = dyadic_positions()
            .map(|t| cell.at(&t))
            .find(|c| !fixed.forms_ap_with(c))
            .expect("finitely many forbidden values among dense candidates");
        fixed.insert(p.clone());
        points.push(p);
    }
    points.push(Rat::one());
    PointConfig::new(points)
}

/// First `r` terms of the greedy 3-AP-free sequence 0, 1, 3, 4, 9, ...,
/// scaled so the last one is 1.
pub fn stanley_points(r: usize) -> Result<PointConfig> {
    if r < 3 {
        return Err(Error::InvalidArgument(format!("need r >= 3, got {r}")));
    }
    let mut seq: Vec<u64> = Vec::with_capacity(r);
    let mut set: HashSet<u64> = HashSet::new();
    let mut v = 0u64;
    while seq.len() < r {
        // v would be the top of an AP b - (v - b), b, v
        let blocked = seq.iter().any(|&b| 2 * b >= v && set.contains(&(2 * b - v)));
        if !blocked {
            seq.push(v);
            set.insert(v);
        }
        v += 1;
    }
    let top = *seq.last().expect("r >= 3") as i64;
    PointConfig::new(seq.into_iter().map(|x| Rat::new(x as i64, top)).collect())
}
