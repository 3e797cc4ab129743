//! Nowhere dense compact sets given by refining interval-union covers.
//!
//! A generator never materializes its set; it hands out the cover at a
//! requested generation. Covers are nested and a quantified gap scale says how
//! long a window must be before it is guaranteed to leave the cover.

use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, Mutex};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::interval::{ClosedInterval, IntervalUnion};
use crate::rat::Rat;

/// Serialized description of a generator.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum GenSpec {
    Cantor {
        ratio: Rat,
    },
    #[serde(alias = "finite_points")]
    Points {
        values: Vec<Rat>,
    },
    Union {
        children: Vec<GenSpec>,
    },
}

#[derive(Clone)]
enum Kind {
    Cantor(Rat),
    Points(Vec<Rat>),
    Union(Vec<NDGenerator>),
}

/// A generator plus a shared cache of the covers it has produced.
#[derive(Clone)]
pub struct NDGenerator {
    kind: Kind,
    memo: Arc<Mutex<HashMap<u32, IntervalUnion>>>,
}

impl NDGenerator {
    /// Symmetric Cantor set keeping two end pieces of relative length `ratio`.
    ///
    /// `ratio` must lie in `(0, 1/2)`; at `1/2` and above the pieces meet and
    /// the set is the whole interval.
    pub fn cantor(ratio: Rat) -> Result<Self> {
        if !ratio.is_positive() || ratio >= Rat::new(1, 2) {
            return Err(Error::InvalidArgument(format!("cantor ratio {ratio} outside (0, 1/2)")));
        }
        Ok(Self::wrap(Kind::Cantor(ratio)))
    }

    pub fn middle_thirds() -> Self {
        Self::wrap(Kind::Cantor(Rat::new(1, 3)))
    }

    pub fn points(values: Vec<Rat>) -> Result<Self> {
        if let Some(v) = values.iter().find(|v| !v.in_unit()) {
            return Err(Error::OutOfUnitInterval(v.clone()));
        }
        let mut values = values;
        values.sort();
        values.dedup();
        Ok(Self::wrap(Kind::Points(values)))
    }

    pub fn union(children: Vec<NDGenerator>) -> Result<Self> {
        if children.is_empty() {
            return Err(Error::InvalidArgument("union of no generators".into()));
        }
        Ok(Self::wrap(Kind::Union(children)))
    }

    fn wrap(kind: Kind) -> Self {
        NDGenerator {
            kind,
            memo: Arc::new(Mutex::new(HashMap::new())),
        }
    }

    pub fn from_spec(spec: &GenSpec) -> Result<Self> {
        match spec {
            GenSpec::Cantor { ratio } => Self::cantor(ratio.clone()),
            GenSpec::Points { values } => Self::points(values.clone()),
            GenSpec::Union { children } => Self::union(children.iter().map(Self::from_spec).collect::<Result<_>>()?),
        }
    }

    pub fn spec(&self) -> GenSpec {
        match &self.kind {
            Kind::Cantor(r) => GenSpec::Cantor { ratio: r.clone() },
            Kind::Points(v) => GenSpec::Points { values: v.clone() },
            Kind::Union(c) => GenSpec::Union {
                children: c.iter().map(Self::spec).collect(),
            },
        }
    }

    /// Number of components `cover(g)` can have, saturating.
    pub fn cover_size_bound(&self, g: u32) -> u64 {
        match &self.kind {
            Kind::Cantor(_) => 1u64.checked_shl(g).unwrap_or(u64::MAX),
            Kind::Points(v) => v.len() as u64,
            Kind::Union(c) => c
                .iter()
                .fold(0u64, |acc, ch| acc.saturating_add(ch.cover_size_bound(g))),
        }
    }

    /// The generation-`g` cover: a canonical union containing the set.
    pub fn cover(&self, g: u32) -> IntervalUnion {
        if let Some(u) = self.memo.lock().expect("memo lock").get(&g) {
            return u.clone();
        }
        let u = match &self.kind {
            Kind::Cantor(ratio) => cantor_cover(ratio, g),
            Kind::Points(v) => IntervalUnion::from_points(v.iter().cloned()).expect("validated points"),
            Kind::Union(children) => children
                .iter()
                .map(|c| c.cover(g))
                .fold(IntervalUnion::empty(), |acc, c| acc.union(&c)),
        };
        self.memo.lock().expect("memo lock").insert(g, u.clone());
        u
    }

    /// Every closed window of at least this length inside `[0,1]` contains a
    /// point outside `cover(g)`.
    pub fn gap_scale(&self, g: u32) -> Rat {
        match &self.kind {
            Kind::Cantor(ratio) => ratio.pow(g).mul_int(2),
            Kind::Points(v) => {
                let mut all: Vec<Rat> = v.clone();
                all.push(Rat::zero());
                all.push(Rat::one());
                all.sort();
                all.dedup();
                let min_gap = all
                    .windows(2)
                    .map(|w| &w[1] - &w[0])
                    .min()
                    .expect("0 and 1 are distinct");
                min_gap.mul_int(2)
            }
            Kind::Union(children) => children.iter().map(|c| c.gap_scale(g)).sum(),
        }
    }

    /// Least `g <= max_gen` whose gap scale fits in `window_len`.
    pub fn refine_until(&self, window_len: &Rat, max_gen: u32) -> Result<u32> {
        if !window_len.is_positive() {
            return Err(Error::InvalidArgument(format!(
                "window length {window_len} must be positive"
            )));
        }
        (0..=max_gen)
            .find(|&g| &self.gap_scale(g) <= window_len)
            .ok_or_else(|| Error::RefinementExhausted {
                max_gen,
                reason: format!("gap scale never drops to {window_len}"),
            })
    }
}

fn cantor_cover(ratio: &Rat, g: u32) -> IntervalUnion {
    let mut comps = vec![ClosedInterval::unit()];
    for _ in 0..g {
        let mut next = Vec::with_capacity(comps.len() * 2);
        for c in comps {
            let piece = c.len() * ratio;
            let (lo, hi) = c.into_pair();
            let left_hi = &lo + &piece;
            let right_lo = &hi - &piece;
            next.push(ClosedInterval::new(lo, left_hi).expect("inside parent"));
            next.push(ClosedInterval::new(right_lo, hi).expect("inside parent"));
        }
        comps = next;
    }
    IntervalUnion::from_sorted_unchecked(comps)
}

impl PartialEq for NDGenerator {
    fn eq(&self, other: &Self) -> bool {
        self.spec() == other.spec()
    }
}

impl fmt::Debug for NDGenerator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.spec())
    }
}

impl Serialize for NDGenerator {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.spec().serialize(s)
    }
}

impl<'de> Deserialize<'de> for NDGenerator {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let spec = GenSpec::deserialize(d)?;
        NDGenerator::from_spec(&spec).map_err(serde::de::Error::custom)
    }
}
