//! Fixtures shared by the benchmarks under `benches/`.

use apfree_core::{destroy_step, ClosedInterval, IntervalUnion, NDGenerator, PLHomeo, Rat};

/// Middle-thirds cover at generation `g`.
pub fn cantor_cover(g: u32) -> IntervalUnion {
    NDGenerator::middle_thirds().cover(g)
}

/// The homeomorphism and image after one destruction step at `1/4`.
pub fn first_stage() -> (PLHomeo, IntervalUnion) {
    let out =
        destroy_step(&PLHomeo::identity(), &NDGenerator::middle_thirds(), &Rat::new(1, 4), 64).expect("cantor step");
    (out.homeo, out.image)
}

/// `n` interior cells of equal width on a regular grid, plus the two ends.
pub fn regular_cells(n: usize) -> Vec<ClosedInterval> {
    let r = n as i64 + 2;
    let den = 4 * r;
    (0..r)
        .map(|k| {
            let lo = if k == 0 { 0 } else { 4 * k + 1 };
            let hi = if k == r - 1 { den } else { 4 * k + 3 };
            ClosedInterval::new(Rat::new(lo, den), Rat::new(hi, den)).expect("inside [0,1]")
        })
        .collect()
}

/// Staircase homeomorphism with `n` interior breakpoints.
pub fn staircase(n: usize) -> PLHomeo {
    let den = 4 * n as i64 + 4;
    let mut bps = vec![(Rat::zero(), Rat::zero())];
    for k in 1..=n as i64 {
        let y = if k % 2 == 0 { 4 * k + 1 } else { 4 * k - 1 };
        bps.push((Rat::new(4 * k, den), Rat::new(y, den)));
    }
    bps.push((Rat::one(), Rat::one()));
    PLHomeo::new(bps).expect("increasing")
}
