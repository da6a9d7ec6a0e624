//! Finite unions of real intervals with explicit open/closed endpoints.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Endpoint {
    pub value: f64,
    pub closed: bool,
}

impl Endpoint {
    pub fn closed(value: f64) -> Self {
        Endpoint { value, closed: true }
    }

    pub fn open(value: f64) -> Self {
        Endpoint { value, closed: false }
    }
}

/// A single interval. Infinite endpoints are always treated as open.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Interval {
    pub lo: Endpoint,
    pub hi: Endpoint,
}

impl Interval {
    pub fn new(lo: Endpoint, hi: Endpoint) -> Result<Self> {
        if lo.value.is_nan() || hi.value.is_nan() {
            return Err(Error::InvalidInterval("NaN endpoint".into()));
        }
        let fix = |e: Endpoint| Endpoint { value: e.value, closed: e.closed && e.value.is_finite() };
        Ok(Interval { lo: fix(lo), hi: fix(hi) })
    }

    pub fn contains(&self, x: f64) -> bool {
        let above_lo = if self.lo.closed { x >= self.lo.value } else { x > self.lo.value };
        let below_hi = if self.hi.closed { x <= self.hi.value } else { x < self.hi.value };
        above_lo && below_hi
    }

    pub fn is_empty(&self) -> bool {
        if self.lo.value < self.hi.value {
            false
        } else if self.lo.value == self.hi.value {
            !(self.lo.closed && self.hi.closed)
        } else {
            true
        }
    }
}

/// `a` ends before `b` starts with a gap (no shared point, not touching so
/// that their union is a single interval).
fn separated(a: &Interval, b: &Interval) -> bool {
    if a.hi.value < b.lo.value {
        true
    } else if a.hi.value == b.lo.value {
        !(a.hi.closed || b.lo.closed)
    } else {
        false
    }
}

fn lo_cmp(a: &Endpoint, b: &Endpoint) -> std::cmp::Ordering {
    // closed lower endpoint starts earlier than open at the same value
    a.value.total_cmp(&b.value).then_with(|| b.closed.cmp(&a.closed))
}

fn hi_max(a: Endpoint, b: Endpoint) -> Endpoint {
    match a.value.total_cmp(&b.value) {
        std::cmp::Ordering::Less => b,
        std::cmp::Ordering::Greater => a,
        std::cmp::Ordering::Equal => Endpoint { value: a.value, closed: a.closed || b.closed },
    }
}

/// A Borel set in canonical form: sorted, pairwise disjoint, non-adjacent
/// intervals.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct BorelSet {
    intervals: Vec<Interval>,
}

impl BorelSet {
    pub fn from_intervals(intervals: impl IntoIterator<Item = Interval>) -> Self {
        let mut iv: Vec<Interval> = intervals.into_iter().filter(|i| !i.is_empty()).collect();
        iv.sort_by(|a, b| lo_cmp(&a.lo, &b.lo));
        let mut merged: Vec<Interval> = Vec::with_capacity(iv.len());
        for cur in iv {
            match merged.last_mut() {
                Some(last) if !separated(last, &cur) => last.hi = hi_max(last.hi, cur.hi),
                _ => merged.push(cur),
            }
        }
        BorelSet { intervals: merged }
    }

    pub fn empty() -> Self {
        BorelSet::default()
    }

    pub fn real_line() -> Self {
        Self::single(Endpoint::open(f64::NEG_INFINITY), Endpoint::open(f64::INFINITY))
    }

    fn single(lo: Endpoint, hi: Endpoint) -> Self {
        match Interval::new(lo, hi) {
            Ok(i) => Self::from_intervals([i]),
            Err(_) => Self::empty(),
        }
    }

    /// [a, b]
    pub fn closed(a: f64, b: f64) -> Self {
        Self::single(Endpoint::closed(a), Endpoint::closed(b))
    }

    /// (a, b)
    pub fn open(a: f64, b: f64) -> Self {
        Self::single(Endpoint::open(a), Endpoint::open(b))
    }

    pub fn point(x: f64) -> Self {
        Self::closed(x, x)
    }

    /// (t, ∞)
    pub fn above(t: f64) -> Self {
        Self::single(Endpoint::open(t), Endpoint::open(f64::INFINITY))
    }

    /// (-∞, t)
    pub fn below(t: f64) -> Self {
        Self::single(Endpoint::open(f64::NEG_INFINITY), Endpoint::open(t))
    }

    /// (-∞, t]
    pub fn at_most(t: f64) -> Self {
        Self::single(Endpoint::open(f64::NEG_INFINITY), Endpoint::closed(t))
    }

    pub fn intervals(&self) -> &[Interval] {
        &self.intervals
    }

    pub fn is_empty(&self) -> bool {
        self.intervals.is_empty()
    }

    pub fn contains(&self, x: f64) -> bool {
        self.intervals.iter().any(|i| i.contains(x))
    }

    pub fn union(&self, other: &Self) -> Self {
        Self::from_intervals(self.intervals.iter().chain(&other.intervals).copied())
    }

    pub fn is_disjoint(&self, other: &Self) -> bool {
        self.intervals
            .iter()
            .all(|a| other.intervals.iter().all(|b| intersect(a, b).is_empty()))
    }
}

fn intersect(a: &Interval, b: &Interval) -> Interval {
    let lo = match a.lo.value.total_cmp(&b.lo.value) {
        std::cmp::Ordering::Less => b.lo,
        std::cmp::Ordering::Greater => a.lo,
        std::cmp::Ordering::Equal => Endpoint { value: a.lo.value, closed: a.lo.closed && b.lo.closed },
    };
    let hi = match a.hi.value.total_cmp(&b.hi.value) {
        std::cmp::Ordering::Less => a.hi,
        std::cmp::Ordering::Greater => b.hi,
        std::cmp::Ordering::Equal => Endpoint { value: a.hi.value, closed: a.hi.closed && b.hi.closed },
    };
    Interval { lo, hi }
}
