//! Closed rational intervals in `[0,1]` and canonical finite unions of them.

use std::fmt;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::rat::Rat;

/// `[lo, hi]` with `0 <= lo <= hi <= 1`. Degenerate intervals are points.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct ClosedInterval {
    lo: Rat,
    hi: Rat,
}

impl ClosedInterval {
    pub fn new(lo: Rat, hi: Rat) -> Result<Self> {
        if !lo.in_unit() || !hi.in_unit() || lo > hi {
            return Err(Error::BadInterval { lo, hi });
        }
        Ok(ClosedInterval { lo, hi })
    }

    pub fn point(x: Rat) -> Result<Self> {
        Self::new(x.clone(), x)
    }

    pub fn unit() -> Self {
        ClosedInterval {
            lo: Rat::zero(),
            hi: Rat::one(),
        }
    }

    pub fn lo(&self) -> &Rat {
        &self.lo
    }

    pub fn hi(&self) -> &Rat {
        &self.hi
    }

    pub fn len(&self) -> Rat {
        &self.hi - &self.lo
    }

    pub fn is_degenerate(&self) -> bool {
        self.lo == self.hi
    }

    pub fn contains(&self, x: &Rat) -> bool {
        &self.lo <= x && x <= &self.hi
    }

    pub fn contains_interval(&self, other: &ClosedInterval) -> bool {
        self.lo <= other.lo && other.hi <= self.hi
    }

    pub fn midpoint(&self) -> Rat {
        (&self.lo + &self.hi).half()
    }

    /// Point at relative position `t` (0 = lo, 1 = hi).
    pub fn at(&self, t: &Rat) -> Rat {
        &self.lo + &(self.len() * t)
    }

    pub(crate) fn into_pair(self) -> (Rat, Rat) {
        (self.lo, self.hi)
    }
}

impl fmt::Debug for ClosedInterval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}, {}]", self.lo, self.hi)
    }
}

impl Serialize for ClosedInterval {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        (&self.lo, &self.hi).serialize(s)
    }
}

impl<'de> Deserialize<'de> for ClosedInterval {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let (lo, hi) = <(Rat, Rat)>::deserialize(d)?;
        ClosedInterval::new(lo, hi).map_err(serde::de::Error::custom)
    }
}

/// A finite union of pairwise separated closed intervals, sorted by position.
///
/// Consecutive components always satisfy `prev.hi < next.lo`; touching or
/// overlapping inputs are merged by [`IntervalUnion::normalize`]. Equality is
/// therefore equality of point sets.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct IntervalUnion {
    components: Vec<ClosedInterval>,
}

impl IntervalUnion {
    pub fn empty() -> Self {
        IntervalUnion { components: Vec::new() }
    }

    pub fn unit() -> Self {
        IntervalUnion {
            components: vec![ClosedInterval::unit()],
        }
    }

    /// Canonical union of arbitrary (already validated) closed intervals.
    pub fn normalize(raw: impl IntoIterator<Item = ClosedInterval>) -> Self {
        let mut v: Vec<ClosedInterval> = raw.into_iter().collect();
        v.sort_by(|a, b| a.lo.cmp(&b.lo).then_with(|| a.hi.cmp(&b.hi)));
        let mut out: Vec<ClosedInterval> = Vec::with_capacity(v.len());
        for iv in v {
            match out.last_mut() {
                Some(last) if iv.lo <= last.hi => {
                    if iv.hi > last.hi {
                        last.hi = iv.hi;
                    }
                }
                _ => out.push(iv),
            }
        }
        IntervalUnion { components: out }
    }

    /// Validates `(lo, hi)` pairs and normalizes them.
    pub fn from_pairs(pairs: impl IntoIterator<Item = (Rat, Rat)>) -> Result<Self> {
        let ivs = pairs
            .into_iter()
            .map(|(lo, hi)| ClosedInterval::new(lo, hi))
            .collect::<Result<Vec<_>>>()?;
        Ok(Self::normalize(ivs))
    }

    /// Union of degenerate components, one per point.
    pub fn from_points(points: impl IntoIterator<Item = Rat>) -> Result<Self> {
        let ivs = points
            .into_iter()
            .map(ClosedInterval::point)
            .collect::<Result<Vec<_>>>()?;
        Ok(Self::normalize(ivs))
    }

    /// Wraps components that are already canonical. Only checked in debug builds.
    pub(crate) fn from_sorted_unchecked(components: Vec<ClosedInterval>) -> Self {
        debug_assert!(components.windows(2).all(|w| w[0].hi < w[1].lo));
        IntervalUnion { components }
    }

    pub fn components(&self) -> &[ClosedInterval] {
        &self.components
    }

    pub fn len(&self) -> usize {
        self.components.len()
    }

    pub fn is_empty(&self) -> bool {
        self.components.is_empty()
    }

    /// Lebesgue measure: the sum of component lengths.
    pub fn measure(&self) -> Rat {
        self.components.iter().map(ClosedInterval::len).sum()
    }

    /// Membership by binary search over the sorted components.
    pub fn contains(&self, x: &Rat) -> bool {
        // first component whose hi is >= x
        let idx = self.components.partition_point(|c| &c.hi < x);
        self.components.get(idx).is_some_and(|c| &c.lo <= x)
    }

    pub fn union(&self, other: &IntervalUnion) -> IntervalUnion {
        Self::normalize(self.components.iter().chain(other.components.iter()).cloned())
    }

    /// True if every component of `self` sits inside some component of `other`.
    pub fn is_subset_of(&self, other: &IntervalUnion) -> bool {
        self.components.iter().all(|c| {
            let idx = other.components.partition_point(|o| o.hi < c.hi);
            other.components.get(idx).is_some_and(|o| o.contains_interval(c))
        })
    }

    /// Midpoint of the widest open gap of `window \ self` (leftmost on ties),
    /// or `None` when `window` is covered up to finitely many points.
    pub fn gap_point_in(&self, window: &ClosedInterval) -> Option<Rat> {
        let mut best: Option<(Rat, Rat, Rat)> = None; // (width, lo, hi)
        let mut consider = |lo: &Rat, hi: &Rat| {
            if lo < hi {
                let w = hi - lo;
                if best.as_ref().is_none_or(|(bw, _, _)| &w > bw) {
                    best = Some((w, lo.clone(), hi.clone()));
                }
            }
        };
        let start = self.components.partition_point(|c| c.hi < window.lo);
        let mut cursor = window.lo.clone();
        for c in &self.components[start..] {
            if c.lo > window.hi {
                break;
            }
            if c.lo > cursor {
                consider(&cursor, &c.lo);
            }
            if c.hi > cursor {
                cursor = c.hi.clone();
            }
        }
        if cursor < window.hi {
            consider(&cursor, &window.hi);
        }
        best.map(|(_, lo, hi)| (lo + hi).half())
    }

    /// Components lying inside the open interval `(lo, hi)`; the
    /// bracketing points are expected to be outside the union.
    pub fn components_between(&self, lo: &Rat, hi: &Rat) -> &[ClosedInterval] {
        let a = self.components.partition_point(|c| &c.lo <= lo);
        let b = self.components.partition_point(|c| &c.hi < hi);
        if a >= b {
            &[]
        } else {
            &self.components[a..b]
        }
    }
}

impl fmt::Debug for IntervalUnion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.components.iter()).finish()
    }
}

impl Serialize for IntervalUnion {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.components.serialize(s)
    }
}

impl<'de> Deserialize<'de> for IntervalUnion {
    /// Accepts any list of valid closed intervals and normalizes it.
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let raw = Vec::<ClosedInterval>::deserialize(d)?;
        Ok(IntervalUnion::normalize(raw))
    }
}
