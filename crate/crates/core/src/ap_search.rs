//! Exact arithmetic-progression queries on interval unions.
//!
//! The two kernels, [`has_ap3`] and [`min_defect`], reduce a query over a
//! union of `m` components to small linear programs over ordered triples of
//! components. Each triple is solved in closed form by eliminating variables
//! one at a time. Instead of enumerating all `m^3` triples, components are
//! grouped into a binary hull tree (split at the widest internal gap) and
//! triples of hulls are searched branch-and-bound: a hull triple bounds every
//! component triple below it, so infeasible or dominated hull triples are
//! discarded wholesale.

use std::cmp::Ordering;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::interval::{ClosedInterval, IntervalUnion};
use crate::rat::Rat;

/// `start, start + step, ..., start + (length-1)·step`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct APWitness {
    pub start: Rat,
    pub step: Rat,
    pub length: usize,
}

impl APWitness {
    pub fn new(start: Rat, step: Rat, length: usize) -> Result<Self> {
        if !step.is_positive() || length < 3 {
            return Err(Error::InvalidArgument(format!(
                "progression needs step > 0 and length >= 3 (got {step}, {length})"
            )));
        }
        let w = APWitness { start, step, length };
        if !w.terms().all(|t| t.in_unit()) {
            return Err(Error::InvalidArgument("progression leaves [0,1]".into()));
        }
        Ok(w)
    }

    pub fn terms(&self) -> impl Iterator<Item = Rat> + '_ {
        (0..self.length).map(move |k| &self.start + &self.step.mul_int(k as i64))
    }

    /// Every term lies in `u`.
    pub fn lies_in(&self, u: &IntervalUnion) -> bool {
        self.terms().all(|t| u.contains(&t))
    }
}

/// Minimal value of `|x1 + x3 - 2·x2|` over triples with both gaps `>= eps`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DefectReport {
    pub gamma: Rat,
    pub achiever: [Rat; 3],
}

fn check_eps(eps: &Rat) -> Result<()> {
    if eps.is_positive() {
        Ok(())
    } else {
        Err(Error::InvalidArgument(format!("step threshold {eps} must be positive")))
    }
}

fn rmax(a: Rat, b: Rat) -> Rat {
    if a >= b {
        a
    } else {
        b
    }
}

fn rmin(a: Rat, b: Rat) -> Rat {
    if a <= b {
        a
    } else {
        b
    }
}

// ---------------------------------------------------------------------------
// closed-form kernels for one triple of intervals

/// Feasible steps `d` for `x ∈ A, x+d ∈ B, x+2d ∈ C`, after eliminating `x`.
struct StepRange {
    /// `max` of the lower bounds that come from the boxes alone.
    box_lo: Rat,
    hi: Rat,
}

fn step_range(a: &ClosedInterval, b: &ClosedInterval, c: &ClosedInterval) -> Option<StepRange> {
    let box_lo = rmax(rmax(b.lo() - a.hi(), (c.lo() - a.hi()).half()), c.lo() - b.hi());
    let hi = rmin(rmin(b.hi() - a.lo(), (c.hi() - a.lo()).half()), c.hi() - b.lo());
    (box_lo <= hi).then_some(StepRange { box_lo, hi })
}

impl StepRange {
    /// Lower bound on any admissible step, or `None` if nothing passes the threshold.
    fn bound(&self, eps: &Rat, strict: bool) -> Option<Rat> {
        let ok = if strict { &self.hi > eps } else { &self.hi >= eps };
        ok.then(|| rmax(self.box_lo.clone(), eps.clone()))
    }

    /// The step reported for a concrete component triple.
    ///
    /// Non-strict: the least admissible step. Strict with the infimum `eps`
    /// unattained: the midpoint of `(eps, hi]`.
    fn pick(&self, eps: &Rat, strict: bool) -> Option<Rat> {
        self.bound(eps, strict)?;
        if strict && &self.box_lo <= eps {
            Some((eps + &self.hi).half())
        } else {
            Some(rmax(self.box_lo.clone(), eps.clone()))
        }
    }
}

fn least_start(a: &ClosedInterval, b: &ClosedInterval, c: &ClosedInterval, d: &Rat) -> Rat {
    rmax(rmax(a.lo().clone(), b.lo() - d), c.lo() - &d.mul_int(2))
}

/// Range of `F = x1 + x3 - 2·x2` over `x1∈A, x2∈B, x3∈C, x2-x1 >= eps, x3-x2 >= eps`.
#[allow(clippy::large_enum_variant)]
enum DefectRange {
    Empty,
    /// `F` takes the value 0 somewhere.
    Straddles,
    Positive(Rat, [Rat; 3]),
}

fn defect_range(a: &ClosedInterval, b: &ClosedInterval, c: &ClosedInterval, eps: &Rat) -> DefectRange {
    // x2 ranges over [l, r]; for fixed x2 the optimal x1, x3 are explicit and
    // both extremal F values are decreasing in x2.
    let l = rmax(b.lo().clone(), a.lo() + eps);
    let r = rmin(b.hi().clone(), c.hi() - eps);
    if l > r {
        return DefectRange::Empty;
    }
    let x3_min = rmax(c.lo().clone(), &r + eps);
    let f_min = a.lo() + &x3_min - r.mul_int(2);
    if f_min.is_positive() {
        return DefectRange::Positive(f_min, [a.lo().clone(), r, x3_min]);
    }
    let x1_max = rmin(a.hi().clone(), &l - eps);
    let f_max = &x1_max + c.hi() - l.mul_int(2);
    if f_max.is_negative() {
        return DefectRange::Positive(-f_max, [x1_max, l, c.hi().clone()]);
    }
    DefectRange::Straddles
}

// ---------------------------------------------------------------------------
// hull tree

struct Node {
    hull: ClosedInterval,
    width: Rat,
    children: Option<(usize, usize)>,
}

struct HullTree {
    nodes: Vec<Node>,
}

impl HullTree {
    fn build(comps: &[ClosedInterval]) -> HullTree {
        debug_assert!(!comps.is_empty());
        let mut nodes: Vec<Node> = Vec::with_capacity(2 * comps.len());
        let mk = |first: usize, last: usize| {
            let hull =
                ClosedInterval::new(comps[first].lo().clone(), comps[last].hi().clone()).expect("hull of components");
            Node {
                width: hull.len(),
                hull,
                children: None,
            }
        };
        nodes.push(mk(0, comps.len() - 1));
        let mut work = vec![(0usize, 0usize, comps.len() - 1)];
        while let Some((id, first, last)) = work.pop() {
            if first == last {
                continue;
            }
            // split at the widest gap, nearest the middle on ties
            let mut split = first;
            let mut best_gap = comps[first + 1].lo() - comps[first].hi();
            for s in first + 1..last {
                let gap = comps[s + 1].lo() - comps[s].hi();
                let centered = |s: usize| (2 * s + 1).abs_diff(first + last);
                match gap.cmp(&best_gap) {
                    Ordering::Greater => {
                        split = s;
                        best_gap = gap;
                    }
                    Ordering::Equal if centered(s) < centered(split) => split = s,
                    _ => {}
                }
            }
            let left = nodes.len();
            nodes.push(mk(first, split));
            let right = nodes.len();
            nodes.push(mk(split + 1, last));
            nodes[id].children = Some((left, right));
            work.push((left, first, split));
            work.push((right, split + 1, last));
        }
        HullTree { nodes }
    }

    fn hull(&self, id: usize) -> &ClosedInterval {
        &self.nodes[id].hull
    }

    /// Slot of the widest splittable node, if any.
    fn split_slot(&self, t: &[usize; 3]) -> Option<usize> {
        let mut pick: Option<usize> = None;
        for s in 0..3 {
            if self.nodes[t[s]].children.is_none() {
                continue;
            }
            if pick.is_none_or(|p| self.nodes[t[s]].width > self.nodes[t[p]].width) {
                pick = Some(s);
            }
        }
        pick
    }

    fn children_of(&self, t: &[usize; 3], slot: usize) -> [[usize; 3]; 2] {
        let (l, r) = self.nodes[t[slot]].children.expect("splittable");
        let mut a = *t;
        let mut b = *t;
        a[slot] = l;
        b[slot] = r;
        [a, b]
    }
}

// ---------------------------------------------------------------------------
// has_ap3

#[derive(Clone, Copy, PartialEq, Eq)]
enum Mode {
    Least,
    Any,
}

fn search_ap3(u: &IntervalUnion, eps: &Rat, strict: bool, mode: Mode) -> Option<(Rat, Rat)> {
    if u.is_empty() {
        return None;
    }
    let tree = HullTree::build(u.components());
    let bound_of = |t: &[usize; 3]| -> Option<Rat> {
        step_range(tree.hull(t[0]), tree.hull(t[1]), tree.hull(t[2]))?.bound(eps, strict)
    };
    let mut best: Option<(Rat, Rat)> = None;
    let root = [0usize; 3];
    let mut stack: Vec<([usize; 3], Rat)> = Vec::new();
    if let Some(b) = bound_of(&root) {
        stack.push((root, b));
    }
    while let Some((t, lb)) = stack.pop() {
        if best.as_ref().is_some_and(|(bd, _)| &lb > bd) {
            continue;
        }
        match tree.split_slot(&t) {
            None => {
                let (a, b, c) = (tree.hull(t[0]), tree.hull(t[1]), tree.hull(t[2]));
                let Some(d) = step_range(a, b, c).and_then(|r| r.pick(eps, strict)) else {
                    continue;
                };
                let x = least_start(a, b, c, &d);
                let better = match &best {
                    None => true,
                    Some((bd, bx)) => (&d, &x) < (bd, bx),
                };
                if better {
                    best = Some((d, x));
                    if mode == Mode::Any {
                        break;
                    }
                }
            }
            Some(slot) => {
                let mut kids: Vec<([usize; 3], Rat)> = tree
                    .children_of(&t, slot)
                    .into_iter()
                    .filter_map(|c| bound_of(&c).map(|b| (c, b)))
                    .collect();
                // smaller bound on top of the stack
                kids.sort_by(|x, y| y.1.cmp(&x.1));
                stack.extend(kids);
            }
        }
    }
    best
}

/// Is there a 3-term AP in `u` with step `>= eps` (`> eps` when `strict`)?
///
/// Returns the witness with the lexicographically least `(step, start)`; in
/// strict mode, when the least step `eps` itself is excluded, the step of a
/// component triple is the midpoint between `eps` and its largest feasible step.
pub fn has_ap3(u: &IntervalUnion, eps: &Rat, strict: bool) -> Result<Option<APWitness>> {
    check_eps(eps)?;
    Ok(search_ap3(u, eps, strict, Mode::Least).map(|(d, x)| APWitness {
        start: x,
        step: d,
        length: 3,
    }))
}

/// Existence-only variant of [`has_ap3`]; stops at the first witness found.
pub fn ap3_exists(u: &IntervalUnion, eps: &Rat, strict: bool) -> Result<bool> {
    check_eps(eps)?;
    Ok(search_ap3(u, eps, strict, Mode::Any).is_some())
}

// ---------------------------------------------------------------------------
// min_defect

fn witness_in_triple(a: &ClosedInterval, b: &ClosedInterval, c: &ClosedInterval, eps: &Rat) -> (Rat, Rat) {
    let d = step_range(a, b, c)
        .and_then(|r| r.pick(eps, false))
        .expect("zero defect implies an admissible step");
    let x = least_start(a, b, c, &d);
    (x, d)
}

/// Exact minimum of `|x1 + x3 - 2·x2|` over `x1, x2, x3 ∈ u` with
/// `x2 - x1 >= eps` and `x3 - x2 >= eps`.
///
/// Errors with [`Error::ApPresent`] when the minimum is zero and with
/// [`Error::VacuousDefect`] when no triple meets the gap constraints. Among
/// minimizers the lexicographically least triple is reported.
pub fn min_defect(u: &IntervalUnion, eps: &Rat) -> Result<DefectReport> {
    check_eps(eps)?;
    if u.is_empty() {
        return Err(Error::VacuousDefect);
    }
    let tree = HullTree::build(u.components());
    let bound_of = |t: &[usize; 3]| -> Option<Rat> {
        match defect_range(tree.hull(t[0]), tree.hull(t[1]), tree.hull(t[2]), eps) {
            DefectRange::Empty => None,
            DefectRange::Straddles => Some(Rat::zero()),
            DefectRange::Positive(v, _) => Some(v),
        }
    };
    let mut best: Option<DefectReport> = None;
    let root = [0usize; 3];
    let mut stack: Vec<([usize; 3], Rat)> = Vec::new();
    if let Some(b) = bound_of(&root) {
        stack.push((root, b));
    }
    while let Some((t, lb)) = stack.pop() {
        if best.as_ref().is_some_and(|r| lb > r.gamma) {
            continue;
        }
        match tree.split_slot(&t) {
            None => {
                let (a, b, c) = (tree.hull(t[0]), tree.hull(t[1]), tree.hull(t[2]));
                match defect_range(a, b, c, eps) {
                    DefectRange::Empty => {}
                    DefectRange::Straddles => {
                        let (start, step) = witness_in_triple(a, b, c, eps);
                        return Err(Error::ApPresent { start, step });
                    }
                    DefectRange::Positive(gamma, achiever) => {
                        let better = match &best {
                            None => true,
                            Some(r) => (&gamma, &achiever) < (&r.gamma, &r.achiever),
                        };
                        if better {
                            best = Some(DefectReport { gamma, achiever });
                        }
                    }
                }
            }
            Some(slot) => {
                let mut kids: Vec<([usize; 3], Rat)> = tree
                    .children_of(&t, slot)
                    .into_iter()
                    .filter_map(|c| bound_of(&c).map(|b| (c, b)))
                    .collect();
                kids.sort_by(|x, y| y.1.cmp(&x.1));
                stack.extend(kids);
            }
        }
    }
    best.ok_or(Error::VacuousDefect)
}

/// `min(eps/2, gamma/5)`; `eps/2` when the gap-constrained triple set is empty.
pub fn stability_radius(u: &IntervalUnion, eps: &Rat) -> Result<Rat> {
    Ok(stability(u, eps)?.1)
}

/// Defect report (absent when vacuous) together with the stability radius.
pub fn stability(u: &IntervalUnion, eps: &Rat) -> Result<(Option<DefectReport>, Rat)> {
    match min_defect(u, eps) {
        Ok(rep) => {
            let delta = radius_formula(eps, Some(&rep.gamma));
            Ok((Some(rep), delta))
        }
        Err(Error::VacuousDefect) => Ok((None, eps.half())),
        Err(e) => Err(e),
    }
}

/// The stability radius as a function of `eps` and (optional) `gamma`.
pub fn radius_formula(eps: &Rat, gamma: Option<&Rat>) -> Rat {
    match gamma {
        Some(g) => rmin(eps.half(), g.div_int(5)),
        None => eps.half(),
    }
}

// ---------------------------------------------------------------------------
// long progressions and the grid oracle

/// Length-`n` AP spanning the widest positive-length component (leftmost on ties).
pub fn ap_witness_long(u: &IntervalUnion, n: usize) -> Result<Option<APWitness>> {
    if n < 3 {
        return Err(Error::InvalidArgument(format!("progression length {n} < 3")));
    }
    let mut widest: Option<&ClosedInterval> = None;
    for c in u.components() {
        if !c.is_degenerate() && widest.is_none_or(|w| c.len() > w.len()) {
            widest = Some(c);
        }
    }
    Ok(widest.map(|c| APWitness {
        start: c.lo().clone(),
        step: c.len().div_int(n as i64 - 1),
        length: n,
    }))
}

/// Exhaustive search over the grid `{k / denom_bound}`: the least `(step, start)`
/// grid progression inside `u` with step `>= eps`.
pub fn brute_force_ap3(u: &IntervalUnion, eps: &Rat, denom_bound: u64) -> Result<Option<APWitness>> {
    brute_force_ap3_with(u, eps, false, denom_bound)
}

/// [`brute_force_ap3`] with a selectable strict step comparison.
pub fn brute_force_ap3_with(u: &IntervalUnion, eps: &Rat, strict: bool, denom_bound: u64) -> Result<Option<APWitness>> {
    check_eps(eps)?;
    if denom_bound < 2 {
        return Err(Error::InvalidArgument(format!("denominator bound {denom_bound} < 2")));
    }
    let n = denom_bound as usize;
    let den = denom_bound as i64;
    let member: Vec<bool> = (0..=n).map(|k| u.contains(&Rat::new(k as i64, den))).collect();
    for d in 1..=n / 2 {
        let step = Rat::new(d as i64, den);
        let admissible = if strict { &step > eps } else { &step >= eps };
        if !admissible {
            continue;
        }
        for x in 0..=n - 2 * d {
            if member[x] && member[x + d] && member[x + 2 * d] {
                return Ok(Some(APWitness {
                    start: Rat::new(x as i64, den),
                    step,
                    length: 3,
                }));
            }
        }
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::rat;

    fn iu(pairs: &[(Rat, Rat)]) -> IntervalUnion {
        IntervalUnion::from_pairs(pairs.iter().cloned()).unwrap()
    }

    fn three_blocks() -> IntervalUnion {
        iu(&[
            (rat(0, 1), rat(1, 10)),
            (rat(9, 20), rat(11, 20)),
            (rat(9, 10), rat(1, 1)),
        ])
    }

    fn no_ap_blocks() -> IntervalUnion {
        iu(&[
            (rat(0, 1), rat(1, 10)),
            (rat(3, 10), rat(7, 20)),
            (rat(9, 10), rat(1, 1)),
        ])
    }

    #[test]
    fn full_interval_has_half_step_ap() {
        let w = has_ap3(&IntervalUnion::unit(), &rat(1, 2), false).unwrap().unwrap();
        assert_eq!(
            w,
            APWitness {
                start: rat(0, 1),
                step: rat(1, 2),
                length: 3
            }
        );
        assert!(has_ap3(&IntervalUnion::unit(), &rat(1, 2), true).unwrap().is_none());
    }

    #[test]
    fn three_blocks_least_witness() {
        let u = three_blocks();
        let w = has_ap3(&u, &rat(2, 5), false).unwrap().unwrap();
        // least step is 2/5, realized from 1/10
        assert_eq!(
            w,
            APWitness {
                start: rat(1, 10),
                step: rat(2, 5),
                length: 3
            }
        );
        assert!(w.lies_in(&u));
        // the step-1/2 progression 0, 1/2, 1 is also present
        assert!(APWitness::new(rat(0, 1), rat(1, 2), 3).unwrap().lies_in(&u));
    }

    #[test]
    fn no_ap_blocks_has_none() {
        assert!(has_ap3(&no_ap_blocks(), &rat(2, 5), false).unwrap().is_none());
        assert!(brute_force_ap3(&no_ap_blocks(), &rat(2, 5), 400).unwrap().is_none());
    }

    #[test]
    fn strict_excluded_infimum_picks_midpoint() {
        // [0,1]: strict steps > 1/4 up to 1/2; reported step is (1/4+1/2)/2
        let w = has_ap3(&IntervalUnion::unit(), &rat(1, 4), true).unwrap().unwrap();
        assert_eq!(w.step, rat(3, 8));
        assert_eq!(w.start, rat(0, 1));
    }

    #[test]
    fn rejects_nonpositive_eps() {
        assert!(has_ap3(&IntervalUnion::unit(), &Rat::zero(), false).is_err());
        assert!(min_defect(&IntervalUnion::unit(), &rat(-1, 2)).is_err());
    }

    #[test]
    fn empty_union() {
        assert!(has_ap3(&IntervalUnion::empty(), &rat(1, 4), false).unwrap().is_none());
        assert_eq!(
            min_defect(&IntervalUnion::empty(), &rat(1, 4)),
            Err(Error::VacuousDefect)
        );
    }

    #[test]
    fn min_defect_on_three_points() {
        let u = IntervalUnion::from_points([rat(0, 1), rat(3, 10), rat(1, 1)]).unwrap();
        let rep = min_defect(&u, &rat(1, 4)).unwrap();
        assert_eq!(rep.gamma, rat(2, 5));
        assert_eq!(rep.achiever, [rat(0, 1), rat(3, 10), rat(1, 1)]);
        assert_eq!(stability_radius(&u, &rat(1, 4)).unwrap(), rat(2, 25));
    }

    #[test]
    fn min_defect_vacuous_when_no_gapped_triples() {
        // no point sits in [2/5, 3/5], so no triple has both gaps >= 2/5
        assert_eq!(min_defect(&no_ap_blocks(), &rat(2, 5)), Err(Error::VacuousDefect));
        assert_eq!(stability_radius(&no_ap_blocks(), &rat(2, 5)).unwrap(), rat(1, 5));
    }

    #[test]
    fn min_defect_refuses_when_ap_present() {
        let err = min_defect(&three_blocks(), &rat(2, 5)).unwrap_err();
        match err {
            Error::ApPresent { start, step } => {
                let w = APWitness::new(start, step, 3).unwrap();
                assert!(w.lies_in(&three_blocks()));
            }
            e => panic!("unexpected {e:?}"),
        }
    }

    #[test]
    fn min_defect_with_intervals() {
        // [0,1/10] ∪ [3/10,7/20] ∪ [9/10,1] at eps = 1/5:
        // F = x1 + x3 - 2 x2 >= 0 + 9/10 - 7/10 = 1/5 for the only admissible triple
        let rep = min_defect(&no_ap_blocks(), &rat(1, 5)).unwrap();
        assert_eq!(rep.gamma, rat(1, 5));
        assert_eq!(rep.achiever, [rat(0, 1), rat(7, 20), rat(9, 10)]);
    }

    #[test]
    fn long_witness_examples() {
        let w = ap_witness_long(&IntervalUnion::unit(), 5).unwrap().unwrap();
        assert_eq!(
            w,
            APWitness {
                start: rat(0, 1),
                step: rat(1, 4),
                length: 5
            }
        );
        let u = iu(&[(rat(1, 4), rat(1, 4)), (rat(1, 2), rat(1, 1))]);
        let w = ap_witness_long(&u, 11).unwrap().unwrap();
        assert_eq!(
            w,
            APWitness {
                start: rat(1, 2),
                step: rat(1, 20),
                length: 11
            }
        );
        let pts = IntervalUnion::from_points([rat(1, 3), rat(2, 3)]).unwrap();
        assert!(ap_witness_long(&pts, 3).unwrap().is_none());
        assert!(ap_witness_long(&u, 2).is_err());
    }

    #[test]
    fn brute_force_examples() {
        let w = brute_force_ap3(&IntervalUnion::unit(), &rat(1, 2), 2).unwrap().unwrap();
        assert_eq!(
            w,
            APWitness {
                start: rat(0, 1),
                step: rat(1, 2),
                length: 3
            }
        );
        assert!(brute_force_ap3(&IntervalUnion::unit(), &rat(1, 2), 1).is_err());
    }

    #[test]
    fn witness_validation() {
        assert!(APWitness::new(rat(0, 1), rat(0, 1), 3).is_err());
        assert!(APWitness::new(rat(0, 1), rat(1, 2), 2).is_err());
        assert!(APWitness::new(rat(1, 2), rat(1, 2), 3).is_err());
    }
}
