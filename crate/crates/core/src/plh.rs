//! Increasing piecewise-linear homeomorphisms of `[0,1]` with rational breakpoints.

use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::interval::{ClosedInterval, IntervalUnion};
use crate::rat::Rat;

/// An increasing PL bijection of `[0,1]`, stored as its minimal list of
/// breakpoints `(x, y)`.
///
/// Invariants: the first breakpoint is `(0,0)`, the last `(1,1)`, both
/// coordinates strictly increase, and no three consecutive breakpoints are
/// collinear. The last condition makes the representation unique, so `==` is
/// equality of functions.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct PLHomeo {
    bps: Vec<(Rat, Rat)>,
}

impl PLHomeo {
    pub fn identity() -> Self {
        PLHomeo {
            bps: vec![(Rat::zero(), Rat::zero()), (Rat::one(), Rat::one())],
        }
    }

    /// Validates and canonicalizes a breakpoint list.
    pub fn new(bps: Vec<(Rat, Rat)>) -> Result<Self> {
        if bps.len() < 2 {
            return Err(Error::BadHomeo("need at least two breakpoints".into()));
        }
        let first = &bps[0];
        let last = &bps[bps.len() - 1];
        if !first.0.is_zero() || !first.1.is_zero() {
            return Err(Error::BadHomeo("first breakpoint must be (0,0)".into()));
        }
        if last.0 != Rat::one() || last.1 != Rat::one() {
            return Err(Error::BadHomeo("last breakpoint must be (1,1)".into()));
        }
        for w in bps.windows(2) {
            if w[0].0 >= w[1].0 {
                return Err(Error::BadHomeo(format!("x not strictly increasing at {}", w[1].0)));
            }
            if w[0].1 >= w[1].1 {
                return Err(Error::BadHomeo(format!("y not strictly increasing at x={}", w[1].0)));
            }
        }
        Ok(Self::canonical(bps))
    }

    /// Drops interior breakpoints that are collinear with their neighbours.
    fn canonical(bps: Vec<(Rat, Rat)>) -> Self {
        let mut out: Vec<(Rat, Rat)> = Vec::with_capacity(bps.len());
        for p in bps {
            while out.len() >= 2 {
                let a = &out[out.len() - 2];
                let b = &out[out.len() - 1];
                let lhs = (&b.1 - &a.1) * (&p.0 - &a.0);
                let rhs = (&p.1 - &a.1) * (&b.0 - &a.0);
                if lhs == rhs {
                    out.pop();
                } else {
                    break;
                }
            }
            out.push(p);
        }
        PLHomeo { bps: out }
    }

    pub fn breakpoints(&self) -> &[(Rat, Rat)] {
        &self.bps
    }

    pub fn is_identity(&self) -> bool {
        self.bps.len() == 2
    }

    /// Exact value at `x`; errors outside `[0,1]`.
    pub fn eval(&self, x: &Rat) -> Result<Rat> {
        if !x.in_unit() {
            return Err(Error::OutOfUnitInterval(x.clone()));
        }
        Ok(Self::interp(&self.bps, x, |p| &p.0, |p| &p.1))
    }

    /// Exact value of the inverse at `y`.
    pub fn eval_inverse(&self, y: &Rat) -> Result<Rat> {
        if !y.in_unit() {
            return Err(Error::OutOfUnitInterval(y.clone()));
        }
        Ok(Self::interp(&self.bps, y, |p| &p.1, |p| &p.0))
    }

    fn interp(
        bps: &[(Rat, Rat)],
        t: &Rat,
        key: impl Fn(&(Rat, Rat)) -> &Rat,
        val: impl Fn(&(Rat, Rat)) -> &Rat,
    ) -> Rat {
        let idx = bps.partition_point(|p| key(p) < t);
        let hi = &bps[idx];
        if key(hi) == t {
            return val(hi).clone();
        }
        let lo = &bps[idx - 1];
        let (k0, k1, v0, v1) = (key(lo), key(hi), val(lo), val(hi));
        v0 + &((v1 - v0) * (t - k0) / (k1 - k0))
    }

    /// `outer ∘ inner`.
    pub fn compose(outer: &PLHomeo, inner: &PLHomeo) -> PLHomeo {
        let pulled = outer
            .bps
            .iter()
            .map(|(x, _)| Self::interp(&inner.bps, x, |p| &p.1, |p| &p.0));
        let mut xs: Vec<Rat> = inner.bps.iter().map(|(x, _)| x.clone()).chain(pulled).collect();
        xs.sort();
        xs.dedup();
        let bps = xs
            .into_iter()
            .map(|x| {
                let mid = Self::interp(&inner.bps, &x, |p| &p.0, |p| &p.1);
                let y = Self::interp(&outer.bps, &mid, |p| &p.0, |p| &p.1);
                (x, y)
            })
            .collect();
        Self::canonical(bps)
    }

    pub fn invert(&self) -> PLHomeo {
        PLHomeo {
            bps: self.bps.iter().map(|(x, y)| (y.clone(), x.clone())).collect(),
        }
    }

    /// `max_x |self(x) - other(x)|`, attained at one of the merged breakpoints.
    pub fn sup_dist(&self, other: &PLHomeo) -> Rat {
        let mut best = Rat::zero();
        let check = |x: &Rat, best: &mut Rat| {
            let a = Self::interp(&self.bps, x, |p| &p.0, |p| &p.1);
            let b = Self::interp(&other.bps, x, |p| &p.0, |p| &p.1);
            let d = (a - b).abs();
            if d > *best {
                *best = d;
            }
        };
        for (x, _) in self.bps.iter().chain(other.bps.iter()) {
            check(x, &mut best);
        }
        best
    }

    /// Image of a union; monotonicity makes it component-wise.
    pub fn image(&self, u: &IntervalUnion) -> IntervalUnion {
        let comps = u
            .components()
            .iter()
            .map(|c| {
                let lo = Self::interp(&self.bps, c.lo(), |p| &p.0, |p| &p.1);
                let hi = Self::interp(&self.bps, c.hi(), |p| &p.0, |p| &p.1);
                ClosedInterval::new(lo, hi).expect("homeomorphism maps [0,1] into itself")
            })
            .collect();
        IntervalUnion::from_sorted_unchecked(comps)
    }

    /// A deterministic nearby homeomorphism with `0 < sup_dist < bound`.
    ///
    /// Each segment gets its midpoint as an extra breakpoint, then every
    /// interior breakpoint moves vertically by less than a third of the
    /// distance to its neighbours (and less than `bound`).
    pub fn perturb(&self, bound: &Rat, seed: u64) -> Result<PLHomeo> {
        if !bound.is_positive() {
            return Err(Error::InvalidArgument(format!(
                "perturbation bound {bound} must be positive"
            )));
        }
        let mut pts: Vec<(Rat, Rat)> = Vec::with_capacity(2 * self.bps.len());
        for w in self.bps.windows(2) {
            pts.push(w[0].clone());
            pts.push(((&w[0].0 + &w[1].0).half(), (&w[0].1 + &w[1].1).half()));
        }
        pts.push(self.bps[self.bps.len() - 1].clone());

        const SCALE: i64 = 1024;
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let n = pts.len();
        let margins: Vec<Rat> = (1..n - 1)
            .map(|i| {
                let left = (&pts[i].1 - &pts[i - 1].1).div_int(3);
                let right = (&pts[i + 1].1 - &pts[i].1).div_int(3);
                left.min(right).min(bound.clone())
            })
            .collect();
        let mut shifts: Vec<Rat> = margins
            .iter()
            .map(|m| m * &Rat::new(rng.gen_range(-(SCALE - 1)..SCALE), SCALE))
            .collect();
        if shifts.iter().all(Rat::is_zero) {
            shifts[0] = margins[0].half();
        }
        for (i, s) in shifts.iter().enumerate() {
            pts[i + 1].1 += s;
        }
        PLHomeo::new(pts)
    }

    /// Breakpoints plus `refine` evenly spaced samples inside every segment.
    pub fn plot_points(&self, refine: usize) -> Vec<(Rat, Rat, bool)> {
        let mut out = Vec::new();
        for w in self.bps.windows(2) {
            out.push((w[0].0.clone(), w[0].1.clone(), true));
            for j in 1..=refine {
                let t = Rat::new(j as i64, refine as i64 + 1);
                let x = &w[0].0 + &((&w[1].0 - &w[0].0) * &t);
                let y = &w[0].1 + &((&w[1].1 - &w[0].1) * &t);
                out.push((x, y, false));
            }
        }
        let last = &self.bps[self.bps.len() - 1];
        out.push((last.0.clone(), last.1.clone(), true));
        out
    }
}

impl fmt::Debug for PLHomeo {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list()
            .entries(self.bps.iter().map(|(x, y)| format!("({x}, {y})")))
            .finish()
    }
}

impl Serialize for PLHomeo {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.bps.serialize(s)
    }
}

impl<'de> Deserialize<'de> for PLHomeo {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let bps = Vec::<(Rat, Rat)>::deserialize(d)?;
        PLHomeo::new(bps).map_err(serde::de::Error::custom)
    }
}
