//! The constructive core.
//!
//! [`destroy_step`] moves a homeomorphism `f` by less than `eps` in sup norm so
//! that the image of a nowhere dense cover has no 3-term AP of step `>= eps`.
//! [`build_fap`] chains such steps with shrinking thresholds, sizing each one
//! from the stability radii of the earlier stages so that later moves cannot
//! undo earlier guarantees by more than a factor of two in the step bound.

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use crate::ap_search::{self, APWitness};
use crate::apfree_points::{pick_apfree, PointConfig};
use crate::certificate::{FapCertificate, Guarantee, LedgerEntry, StageCertificate, SCHEMA_ID};
use crate::error::{Error, Result};
use crate::interval::{ClosedInterval, IntervalUnion};
use crate::nd_gen::NDGenerator;
use crate::plh::PLHomeo;
use crate::rat::Rat;

/// Resource limits for the construction.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Limits {
    /// Deepest cover generation to try.
    pub max_gen: u32,
    /// Largest cover (in components) the generation search may materialize.
    pub max_components: u64,
    /// Effective steps below this abort the schedule.
    pub min_eps: Rat,
}

impl Limits {
    pub fn with_max_gen(max_gen: u32) -> Self {
        Limits {
            max_gen,
            ..Limits::default()
        }
    }
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            max_gen: 64,
            max_components: 1 << 20,
            min_eps: Rat::one() / Rat::from_int(2).pow(64),
        }
    }
}

/// Everything chosen while building the contraction `u` of one step.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PartitionPlan {
    /// Number of pieces `X_k` of the partition.
    pub r: usize,
    /// Interior cuts `(k, x_k)` for the windows that meet the image. Every
    /// unlisted cut is `k/r`, and no interior cut lies in the image.
    pub cuts: Vec<(usize, Rat)>,
    /// For each cell, the 1-based index `k` of the piece `X_k` holding it.
    pub cell_pieces: Vec<usize>,
    /// Closed cells `Ȳ` covering the image, one per occupied piece plus the two ends.
    pub cells: Vec<ClosedInterval>,
    /// One AP-free anchor per cell.
    pub anchors: PointConfig,
    /// Target intervals `Z̄ ⊆ Ȳ` around the anchors.
    pub targets: Vec<ClosedInterval>,
    /// The PL map sending each cell affinely onto its target.
    pub contraction: PLHomeo,
}

impl PartitionPlan {
    /// The cut `x_k`, `0 <= k <= r`.
    pub fn cut(&self, k: usize) -> Rat {
        if k >= self.r {
            Rat::one()
        } else {
            cut_value(&self.cuts, self.r, k)
        }
    }
}

/// Output of one [`destroy_step`].
#[derive(Clone, Debug)]
pub struct DestroyOutcome {
    pub homeo: PLHomeo,
    /// `None` when the image was already free of long APs and `f` was kept.
    pub plan: Option<PartitionPlan>,
    pub certificate: StageCertificate,
    /// The image of the cover under [`DestroyOutcome::homeo`].
    pub image: IntervalUnion,
}

fn check_step_eps(eps: &Rat) -> Result<()> {
    if !eps.is_positive() || eps >= &Rat::new(1, 2) {
        return Err(Error::InvalidArgument(format!(
            "step threshold {eps} must lie in (0, 1/2)"
        )));
    }
    Ok(())
}

/// Number of partition pieces for threshold `eps`: `max(3, floor(2/eps) + 2)`.
pub fn piece_count(eps: &Rat) -> usize {
    let k = eps.recip().mul_int(2).floor();
    let k: usize = k.try_into().expect("piece count fits in usize");
    (k + 2).max(3)
}

/// Half-width of the cut windows `[k/r - s, k/r + s]`: `15/16` of
/// `min((eps - 1/r)/2, 1/(4r))`, so pieces stay shorter than `eps` and
/// neighbouring windows stay disjoint.
fn window_slack(eps: &Rat, r: usize) -> Rat {
    let inv_r = Rat::new(1, r as i64);
    let s = (eps - &inv_r).half().min(inv_r.div_int(4));
    s * Rat::new(15, 16)
}

fn window(k: usize, r: usize, slack: &Rat) -> ClosedInterval {
    let c = Rat::new(k as i64, r as i64);
    ClosedInterval::new(&c - slack, &c + slack).expect("window inside (0,1)")
}

/// `floor(x)` clamped into `[lo, hi]`.
fn clamped_floor(x: &Rat, lo: usize, hi: usize) -> usize {
    let f = x.floor();
    if f < BigInt::from(lo) {
        lo
    } else if f > BigInt::from(hi) {
        hi
    } else {
        f.try_into().expect("within bounds")
    }
}

fn clamped_ceil(x: &Rat, lo: usize, hi: usize) -> usize {
    let f = -(-x).floor();
    if f < BigInt::from(lo) {
        lo
    } else if f > BigInt::from(hi) {
        hi
    } else {
        f.try_into().expect("within bounds")
    }
}

/// Listed interior cuts `(k, x_k)`, sorted by `k`.
type Cuts = Vec<(usize, Rat)>;

/// Gap points for the windows that meet `image`, sorted by `k`. Every other
/// window misses the image and keeps its centre `k/r` as the cut. `None` if
/// some window has no gap.
fn window_cuts(image: &IntervalUnion, r: usize, slack: &Rat) -> Option<Cuts> {
    let rr = Rat::from_int(r as i64);
    let mut ks = Vec::new();
    for c in image.components() {
        if c.len() >= slack.mul_int(2) {
            let a = clamped_ceil(&((c.lo() + slack) * &rr), 1, r);
            let b = clamped_floor(&((c.hi() - slack) * &rr), 0, r - 1);
            if a <= b {
                return None;
            }
        }
        let lo = clamped_ceil(&((c.lo() - slack) * &rr), 1, r);
        let hi = clamped_floor(&((c.hi() + slack) * &rr), 0, r - 1);
        ks.extend(lo..=hi);
    }
    ks.sort_unstable();
    ks.dedup();
    ks.into_iter()
        .map(|k| image.gap_point_in(&window(k, r, slack)).map(|p| (k, p)))
        .collect()
}

/// Least generation whose image under `f` leaves a gap in every window.
fn find_generation(
    f: &PLHomeo,
    gen: &NDGenerator,
    r: usize,
    slack: &Rat,
    limits: &Limits,
) -> Result<(u32, IntervalUnion, Cuts)> {
    for g in 0..=limits.max_gen {
        if gen.cover_size_bound(g) > limits.max_components {
            return Err(Error::RefinementExhausted {
                max_gen: g,
                reason: format!("cover would exceed {} components", limits.max_components),
            });
        }
        let image = f.image(&gen.cover(g));
        if let Some(cuts) = window_cuts(&image, r, slack) {
            return Ok((g, image, cuts));
        }
    }
    Err(Error::RefinementExhausted {
        max_gen: limits.max_gen,
        reason: "some cut window stays inside the image".into(),
    })
}

/// `x_k` for a plan whose listed cuts are `explicit`.
fn cut_value(explicit: &[(usize, Rat)], r: usize, k: usize) -> Rat {
    match explicit.binary_search_by_key(&k, |(j, _)| *j) {
        Ok(i) => explicit[i].1.clone(),
        Err(_) => Rat::new(k as i64, r as i64),
    }
}

/// 1-based piece holding `y`, which is not an interior cut.
fn piece_of(y: &Rat, explicit: &[(usize, Rat)], r: usize) -> usize {
    let mut k = clamped_floor(&(y * &Rat::from_int(r as i64)), 0, r - 1) + 1;
    while k > 1 && &cut_value(explicit, r, k - 1) > y {
        k -= 1;
    }
    while k < r && &cut_value(explicit, r, k) <= y {
        k += 1;
    }
    k
}

/// The closed cell for piece `k` (1-based) holding `parts`, or `None` for an
/// empty interior piece.
fn cell_for(k: usize, r: usize, lo_cut: &Rat, hi_cut: &Rat, parts: &[ClosedInterval]) -> Option<ClosedInterval> {
    let hull = match (parts.first(), parts.last()) {
        (Some(a), Some(b)) => Some((a.lo().clone(), b.hi().clone())),
        _ => None,
    };
    let (lo, hi) = if k == 1 {
        let hi = hull.map_or_else(Rat::zero, |(_, h)| h);
        (Rat::zero(), &hi + &(hi_cut - &hi).half())
    } else if k == r {
        let lo = hull.map_or_else(Rat::one, |(l, _)| l);
        (&lo - &(&lo - lo_cut).half(), Rat::one())
    } else {
        let (lo, hi) = hull?;
        (&lo - &(&lo - lo_cut).half(), &hi + &(hi_cut - &hi).half())
    };
    Some(ClosedInterval::new(lo, hi).expect("cell inside its piece"))
}

fn target_for(idx: usize, n: usize, cell: &ClosedInterval, anchor: &Rat, defect: &Rat) -> ClosedInterval {
    let len = (defect / &Rat::from_int(8)).min(cell.len().half());
    let (lo, hi) = if idx == 0 {
        (Rat::zero(), len)
    } else if idx == n - 1 {
        (Rat::one() - &len, Rat::one())
    } else {
        let half = len.half();
        (
            (anchor - &half).max(cell.lo().clone()),
            (anchor + &half).min(cell.hi().clone()),
        )
    };
    ClosedInterval::new(lo, hi).expect("target inside cell")
}

/// One destruction step with default limits apart from `max_gen`.
pub fn destroy_step(f: &PLHomeo, gen: &NDGenerator, eps: &Rat, max_gen: u32) -> Result<DestroyOutcome> {
    destroy_step_with(f, gen, eps, &Limits::with_max_gen(max_gen))
}

/// Returns `g = u ∘ f` with `sup_dist(g, f) < eps` such that the image of the
/// chosen cover under `g` has no 3-term AP of step `>= eps`.
pub fn destroy_step_with(f: &PLHomeo, gen: &NDGenerator, eps: &Rat, limits: &Limits) -> Result<DestroyOutcome> {
    check_step_eps(eps)?;
    let r = piece_count(eps);
    let slack = window_slack(eps, r);
    let (generation, image, cuts) = find_generation(f, gen, r, &slack, limits)?;

    if !ap_search::ap3_exists(&image, eps, false)? {
        let (report, delta) = ap_search::stability(&image, eps)?;
        let certificate = StageCertificate {
            stage: 0,
            eps_requested: eps.clone(),
            eps_effective: eps.clone(),
            cover_generation: generation,
            gamma: report.map(|r| r.gamma),
            delta_stability: delta,
            perturbation_used: Rat::zero(),
            verified: true,
        };
        return Ok(DestroyOutcome {
            homeo: f.clone(),
            plan: None,
            certificate,
            image,
        });
    }

    let comps = image.components();
    let mut groups: Vec<(usize, usize, usize)> = Vec::new();
    for (i, c) in comps.iter().enumerate() {
        let k = piece_of(c.lo(), &cuts, r);
        match groups.last_mut() {
            Some((pk, _, end)) if *pk == k => *end = i + 1,
            _ => groups.push((k, i, i + 1)),
        }
    }
    if groups.first().is_none_or(|g| g.0 != 1) {
        groups.insert(0, (1, 0, 0));
    }
    if groups.last().is_none_or(|g| g.0 != r) {
        groups.push((r, comps.len(), comps.len()));
    }
    let mut cells = Vec::with_capacity(groups.len());
    let mut cell_pieces = Vec::with_capacity(groups.len());
    for &(k, a, b) in &groups {
        let lo_cut = cut_value(&cuts, r, k - 1);
        let hi_cut = if k == r { Rat::one() } else { cut_value(&cuts, r, k) };
        if let Some(cell) = cell_for(k, r, &lo_cut, &hi_cut, &comps[a..b]) {
            cells.push(cell);
            cell_pieces.push(k);
        }
    }

    let anchors =
        pick_apfree(&cells).map_err(|e| Error::VerificationFailed(format!("anchor selection failed: {e}")))?;
    let n = cells.len();
    let targets: Vec<ClosedInterval> = cells
        .iter()
        .zip(anchors.points())
        .enumerate()
        .map(|(i, (cell, p))| target_for(i, n, cell, p, anchors.defect()))
        .collect();

    let mut bps = Vec::with_capacity(2 * n);
    for (cell, target) in cells.iter().zip(&targets) {
        bps.push((cell.lo().clone(), target.lo().clone()));
        bps.push((cell.hi().clone(), target.hi().clone()));
    }
    let contraction = PLHomeo::new(bps)?;
    let g = PLHomeo::compose(&contraction, f);

    let moved = contraction.sup_dist(&PLHomeo::identity());
    if &moved >= eps {
        return Err(Error::VerificationFailed(format!(
            "contraction moves points by {moved} >= {eps}"
        )));
    }
    let perturbation = g.sup_dist(f);
    if &perturbation >= eps {
        return Err(Error::VerificationFailed(format!(
            "step moved f by {perturbation} >= {eps}"
        )));
    }
    let new_image = contraction.image(&image);
    if ap_search::ap3_exists(&new_image, eps, false)? {
        return Err(Error::VerificationFailed("image still holds a long progression".into()));
    }
    let (report, delta) = ap_search::stability(&new_image, eps)?;

    let certificate = StageCertificate {
        stage: 0,
        eps_requested: eps.clone(),
        eps_effective: eps.clone(),
        cover_generation: generation,
        gamma: report.map(|r| r.gamma),
        delta_stability: delta,
        perturbation_used: perturbation,
        verified: true,
    };
    let plan = PartitionPlan {
        r,
        cuts,
        cell_pieces,
        cells,
        anchors,
        targets,
        contraction,
    };
    Ok(DestroyOutcome {
        homeo: g,
        plan: Some(plan),
        certificate,
        image: new_image,
    })
}

/// Membership of `phi` in the set of maps whose image of `cover(g)` has no
/// 3-term AP of step `>= eps`.
pub fn in_h_eps(phi: &PLHomeo, gen: &NDGenerator, g: u32, eps: &Rat) -> Result<bool> {
    Ok(!ap_search::ap3_exists(&phi.image(&gen.cover(g)), eps, false)?)
}

/// A length-`n` AP inside `phi(u)` for a union of positive measure.
pub fn rap_demo(u: &IntervalUnion, phi: &PLHomeo, n: usize) -> Result<APWitness> {
    if n < 3 {
        return Err(Error::InvalidArgument(format!("progression length {n} < 3")));
    }
    if !u.measure().is_positive() {
        return Err(Error::InvalidArgument("set has measure zero".into()));
    }
    ap_search::ap_witness_long(&phi.image(u), n)?
        .ok_or_else(|| Error::VerificationFailed("image of a positive-measure set lost its measure".into()))
}

/// Default step targets `2^{-k-1}` for stages `k = 1..=stages`.
pub fn default_schedule(stages: usize) -> Vec<Rat> {
    (1..=stages)
        .map(|k| Rat::one() / Rat::from_int(2).pow(k as u32 + 1))
        .collect()
}

/// Generator for stage `k` (1-based): the union of the first `min(k, n)` inputs.
pub fn stage_generator(gens: &[NDGenerator], k: usize) -> Result<NDGenerator> {
    let m = k.min(gens.len());
    if m == 1 {
        Ok(gens[0].clone())
    } else {
        NDGenerator::union(gens[..m].to_vec())
    }
}

/// Runs the multi-stage schedule and returns a self-checked certificate.
///
/// At stage `k` the effective threshold is
/// `min(schedule[k], min_{j<k} delta_j · 2^{-(k-j)-1})`, so the total movement
/// after stage `j` stays below `delta_j / 2`.
pub fn build_fap(
    gens: &[NDGenerator],
    stages: usize,
    eps_schedule: Option<&[Rat]>,
    limits: &Limits,
) -> Result<FapCertificate> {
    if gens.is_empty() {
        return Err(Error::InvalidArgument("no generators given".into()));
    }
    if stages == 0 {
        return Err(Error::InvalidArgument("need at least one stage".into()));
    }
    let schedule = match eps_schedule {
        Some(s) if s.len() < stages => {
            return Err(Error::InvalidArgument(format!(
                "schedule has {} entries for {stages} stages",
                s.len()
            )))
        }
        Some(s) => s[..stages].to_vec(),
        None => default_schedule(stages),
    };
    for e in &schedule {
        check_step_eps(e)?;
    }
    let stage_gens: Vec<NDGenerator> = (1..=stages).map(|k| stage_generator(gens, k)).collect::<Result<_>>()?;

    let mut phi = PLHomeo::identity();
    let mut records: Vec<StageCertificate> = Vec::with_capacity(stages);
    for k in 1..=stages {
        let mut eps = schedule[k - 1].clone();
        for (j, prev) in records.iter().enumerate() {
            let cap = &prev.delta_stability / &Rat::from_int(2).pow((k - (j + 1)) as u32 + 1);
            if cap < eps {
                eps = cap;
            }
        }
        if eps < limits.min_eps {
            return Err(Error::ScheduleInfeasible {
                stage: k,
                eps,
                floor: limits.min_eps.clone(),
            });
        }
        let out = destroy_step_with(&phi, &stage_gens[k - 1], &eps, limits)?;
        phi = out.homeo;
        let mut rec = out.certificate;
        rec.stage = k;
        rec.eps_requested = schedule[k - 1].clone();
        records.push(rec);
    }

    let mut guarantees = Vec::with_capacity(stages + 1);
    for (idx, rec) in records.iter().enumerate() {
        guarantees.push(Guarantee {
            stage: rec.stage,
            generators: (0..rec.stage.min(gens.len())).collect(),
            cover_generation: rec.cover_generation,
            step_bound: rec.eps_effective.mul_int(2),
            strict: true,
        });
        if idx == records.len() - 1 {
            guarantees.push(Guarantee {
                stage: rec.stage,
                generators: (0..rec.stage.min(gens.len())).collect(),
                cover_generation: rec.cover_generation,
                step_bound: rec.eps_effective.clone(),
                strict: false,
            });
        }
    }
    for gu in &guarantees {
        let image = phi.image(&stage_gens[gu.stage - 1].cover(gu.cover_generation));
        if ap_search::ap3_exists(&image, &gu.step_bound, gu.strict)? {
            return Err(Error::VerificationFailed(format!(
                "stage {} guarantee at step {} does not hold for the final map",
                gu.stage, gu.step_bound
            )));
        }
    }

    let budget_ledger = ledger(&records);
    if let Some(bad) = budget_ledger.iter().find(|e| !e.remaining.is_positive()) {
        return Err(Error::VerificationFailed(format!(
            "budget exceeded after stage {}",
            bad.stage
        )));
    }

    Ok(FapCertificate {
        schema: SCHEMA_ID.to_string(),
        stages: records,
        final_homeo: phi,
        guarantees,
        budget_ledger,
    })
}

/// Per-stage remaining budgets `delta_k - sum_{j>k} eps'_j`.
pub fn ledger(records: &[StageCertificate]) -> Vec<LedgerEntry> {
    records
        .iter()
        .enumerate()
        .map(|(i, rec)| {
            let later: Rat = records[i + 1..].iter().map(|r| &r.eps_effective).sum();
            LedgerEntry {
                stage: rec.stage,
                delta_stability: rec.delta_stability.clone(),
                remaining: &rec.delta_stability - &later,
                later_eps_sum: later,
            }
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::rat;

    #[test]
    fn piece_count_matches_formula() {
        assert_eq!(piece_count(&rat(1, 4)), 10);
        assert_eq!(piece_count(&rat(2, 5)), 7);
        assert_eq!(piece_count(&rat(1, 3)), 8);
        assert_eq!(piece_count(&rat(3, 10)), 8);
        assert_eq!(piece_count(&rat(49, 100)), 6);
    }

    #[test]
    fn windows_keep_pieces_shorter_than_eps() {
        for eps in [rat(1, 4), rat(2, 5), rat(1, 7), rat(49, 100)] {
            let r = piece_count(&eps);
            assert!(Rat::from_int(r as i64) * &eps > Rat::one());
            let s = window_slack(&eps, r);
            assert!(s.is_positive());
            let w: Vec<_> = (1..r).map(|k| window(k, r, &s)).collect();
            // worst case: consecutive cuts at opposite window ends
            assert!(w[0].hi() < &eps);
            assert!(Rat::one() - w[w.len() - 1].lo() < eps);
            for pair in w.windows(2) {
                assert!(pair[0].hi() < pair[1].lo());
                assert!(pair[1].hi() - pair[0].lo() < eps);
            }
        }
    }

    #[test]
    fn shortcut_for_single_point() {
        let gen = NDGenerator::points(vec![rat(1, 2)]).unwrap();
        let out = destroy_step(&PLHomeo::identity(), &gen, &rat(1, 4), 64).unwrap();
        assert!(out.homeo.is_identity());
        assert!(out.plan.is_none());
        assert_eq!(out.certificate.delta_stability, rat(1, 8));
    }

    #[test]
    fn rejects_large_eps() {
        let gen = NDGenerator::middle_thirds();
        assert!(destroy_step(&PLHomeo::identity(), &gen, &rat(3, 5), 64).is_err());
        assert!(destroy_step(&PLHomeo::identity(), &gen, &rat(1, 2), 64).is_err());
        assert!(destroy_step(&PLHomeo::identity(), &gen, &Rat::zero(), 64).is_err());
    }

    #[test]
    fn refinement_exhaustion_is_reported() {
        let gen = NDGenerator::middle_thirds();
        let err = destroy_step(&PLHomeo::identity(), &gen, &rat(1, 40), 2).unwrap_err();
        assert!(matches!(err, Error::RefinementExhausted { .. }), "{err:?}");
    }

    #[test]
    fn cantor_step_postconditions() {
        let gen = NDGenerator::middle_thirds();
        let eps = rat(1, 4);
        let out = destroy_step(&PLHomeo::identity(), &gen, &eps, 64).unwrap();
        let plan = out.plan.as_ref().unwrap();
        assert!(out.homeo.sup_dist(&PLHomeo::identity()) < eps);
        assert!(plan.contraction.sup_dist(&PLHomeo::identity()) < eps);
        assert!(in_h_eps(&out.homeo, &gen, out.certificate.cover_generation, &eps).unwrap());
        let cuts: Vec<Rat> = (0..=plan.r).map(|k| plan.cut(k)).collect();
        assert!(cuts.windows(2).all(|w| w[0] < w[1] && &w[1] - &w[0] < eps));
        for k in 1..plan.r {
            assert!(!out.image.contains(&plan.cut(k)));
        }
    }

    #[test]
    fn sparse_cuts_bracket_cells() {
        let gen = NDGenerator::middle_thirds();
        let eps = rat(1, 300);
        let out = destroy_step(&PLHomeo::identity(), &gen, &eps, 64).unwrap();
        let plan = out.plan.as_ref().unwrap();
        assert!(plan.cuts.len() < plan.r / 2);
        let cuts: Vec<Rat> = (0..=plan.r).map(|k| plan.cut(k)).collect();
        assert!(cuts.windows(2).all(|w| w[0] < w[1] && &w[1] - &w[0] < eps));
        for (k, cell) in plan.cell_pieces.iter().zip(&plan.cells) {
            if *k > 1 {
                assert!(&cuts[k - 1] < cell.lo());
            }
            if *k < plan.r {
                assert!(cell.hi() < &cuts[*k]);
            }
        }
        assert!(cuts[1..plan.r].iter().all(|c| !out.image.contains(c)));
    }

    #[test]
    fn rap_demo_examples() {
        let w = rap_demo(&IntervalUnion::unit(), &PLHomeo::identity(), 20).unwrap();
        assert_eq!(
            w,
            APWitness {
                start: rat(0, 1),
                step: rat(1, 19),
                length: 20
            }
        );
        let phi = PLHomeo::new(vec![
            (rat(0, 1), rat(0, 1)),
            (rat(1, 2), rat(1, 4)),
            (rat(1, 1), rat(1, 1)),
        ])
        .unwrap();
        let half = IntervalUnion::from_pairs([(rat(0, 1), rat(1, 2))]).unwrap();
        let w = rap_demo(&half, &phi, 5).unwrap();
        assert_eq!(
            w,
            APWitness {
                start: rat(0, 1),
                step: rat(1, 16),
                length: 5
            }
        );
        let pts = IntervalUnion::from_points([rat(1, 3)]).unwrap();
        assert!(rap_demo(&pts, &phi, 5).is_err());
    }

    #[test]
    fn build_rejects_empty_inputs() {
        assert!(build_fap(&[], 1, None, &Limits::default()).is_err());
        assert!(build_fap(&[NDGenerator::middle_thirds()], 0, None, &Limits::default()).is_err());
        let short = [rat(1, 4)];
        assert!(build_fap(&[NDGenerator::middle_thirds()], 2, Some(&short), &Limits::default()).is_err());
    }

    #[test]
    fn default_schedule_halves() {
        assert_eq!(default_schedule(3), vec![rat(1, 4), rat(1, 8), rat(1, 16)]);
    }
}
