//! Finite unions of intervals of the real line.
//!
//! A [`RealSet`] is a normalized, sorted list of pairwise disjoint,
//! non-adjacent intervals. Endpoints may be `-inf`/`+inf` (always excluded)
//! or exact rationals with per-endpoint inclusion flags, so the type covers
//! compacts, opens, half-open `(a, b]` intervals, singletons and balls.

use std::cmp::Ordering;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::scalar::Scalar;

/// An endpoint of an interval: a rational or one of the two infinities.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub enum Endpoint {
    NegInf,
    Finite(Scalar),
    PosInf,
}

impl Endpoint {
    pub fn finite(&self) -> Option<&Scalar> {
        match self {
            Endpoint::Finite(x) => Some(x),
            _ => None,
        }
    }
}

impl PartialOrd for Endpoint {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Endpoint {
    fn cmp(&self, other: &Self) -> Ordering {
        use Endpoint::*;
        match (self, other) {
            (NegInf, NegInf) | (PosInf, PosInf) => Ordering::Equal,
            (NegInf, _) | (_, PosInf) => Ordering::Less,
            (PosInf, _) | (_, NegInf) => Ordering::Greater,
            (Finite(a), Finite(b)) => a.cmp(b),
        }
    }
}

/// A single nonempty interval. Inclusion flags are meaningful only for
/// finite endpoints; infinite endpoints are always open.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct Interval {
    pub lo: Endpoint,
    pub hi: Endpoint,
    pub lo_closed: bool,
    pub hi_closed: bool,
}

impl Interval {
    pub fn new(lo: Endpoint, lo_closed: bool, hi: Endpoint, hi_closed: bool) -> Option<Self> {
        let lo_closed = lo_closed && matches!(lo, Endpoint::Finite(_));
        let hi_closed = hi_closed && matches!(hi, Endpoint::Finite(_));
        let iv = Interval { lo, hi, lo_closed, hi_closed };
        if iv.is_valid() {
            Some(iv)
        } else {
            None
        }
    }

    fn is_valid(&self) -> bool {
        match self.lo.cmp(&self.hi) {
            Ordering::Less => true,
            Ordering::Equal => {
                matches!(self.lo, Endpoint::Finite(_)) && self.lo_closed && self.hi_closed
            }
            Ordering::Greater => false,
        }
    }

    pub fn contains(&self, x: &Scalar) -> bool {
        let above_lo = match &self.lo {
            Endpoint::NegInf => true,
            Endpoint::PosInf => false,
            Endpoint::Finite(a) => {
                if self.lo_closed {
                    x >= a
                } else {
                    x > a
                }
            }
        };
        let below_hi = match &self.hi {
            Endpoint::NegInf => false,
            Endpoint::PosInf => true,
            Endpoint::Finite(b) => {
                if self.hi_closed {
                    x <= b
                } else {
                    x < b
                }
            }
        };
        above_lo && below_hi
    }

    /// Length of the overlap with the bounded interval `[a, b)`; inclusion
    /// flags are irrelevant for Lebesgue length.
    pub fn overlap_len(&self, a: &Scalar, b: &Scalar) -> Scalar {
        let lo = match &self.lo {
            Endpoint::NegInf => a.clone(),
            Endpoint::PosInf => return Scalar::zero(),
            Endpoint::Finite(x) => x.clone().max(a.clone()),
        };
        let hi = match &self.hi {
            Endpoint::NegInf => return Scalar::zero(),
            Endpoint::PosInf => b.clone(),
            Endpoint::Finite(x) => x.clone().min(b.clone()),
        };
        if hi > lo {
            hi - lo
        } else {
            Scalar::zero()
        }
    }
}

// Lower bounds ordered by where membership starts: at the same point, a
// closed bound starts earlier than an open one.
fn cmp_lower(a: (&Endpoint, bool), b: (&Endpoint, bool)) -> Ordering {
    a.0.cmp(b.0).then_with(|| match (a.1, b.1) {
        (true, false) => Ordering::Less,
        (false, true) => Ordering::Greater,
        _ => Ordering::Equal,
    })
}

// Upper bounds ordered by where membership ends: at the same point, an open
// bound ends earlier than a closed one.
fn cmp_upper(a: (&Endpoint, bool), b: (&Endpoint, bool)) -> Ordering {
    a.0.cmp(b.0).then_with(|| match (a.1, b.1) {
        (false, true) => Ordering::Less,
        (true, false) => Ordering::Greater,
        _ => Ordering::Equal,
    })
}

/// A finite union of disjoint intervals in normal form.
#[derive(Clone, PartialEq, Eq, Debug, Default, Serialize, Deserialize)]
pub struct RealSet {
    intervals: Vec<Interval>,
}

impl RealSet {
    pub fn empty() -> Self {
        RealSet { intervals: Vec::new() }
    }

    pub fn full() -> Self {
        RealSet {
            intervals: vec![Interval {
                lo: Endpoint::NegInf,
                hi: Endpoint::PosInf,
                lo_closed: false,
                hi_closed: false,
            }],
        }
    }

    pub fn from_intervals(intervals: Vec<Interval>) -> Self {
        let mut set = RealSet { intervals };
        set.normalize();
        set
    }

    pub fn interval(lo: Endpoint, lo_closed: bool, hi: Endpoint, hi_closed: bool) -> Self {
        match Interval::new(lo, lo_closed, hi, hi_closed) {
            Some(iv) => RealSet { intervals: vec![iv] },
            None => RealSet::empty(),
        }
    }

    /// Closed interval `[a, b]`.
    pub fn closed(a: Scalar, b: Scalar) -> Self {
        Self::interval(Endpoint::Finite(a), true, Endpoint::Finite(b), true)
    }

    /// Open interval `(a, b)`.
    pub fn open(a: Scalar, b: Scalar) -> Self {
        Self::interval(Endpoint::Finite(a), false, Endpoint::Finite(b), false)
    }

    /// Half-open interval `(a, b]`.
    pub fn left_open(a: Scalar, b: Scalar) -> Self {
        Self::interval(Endpoint::Finite(a), false, Endpoint::Finite(b), true)
    }

    /// Singleton `{x}`.
    pub fn point(x: Scalar) -> Self {
        Self::closed(x.clone(), x)
    }

    /// Open ball `(x - r, x + r)`.
    pub fn ball(x: &Scalar, r: &Scalar) -> Self {
        Self::open(x - r, x + r)
    }

    /// `(-inf, b]` when `closed`, else `(-inf, b)`.
    pub fn below(b: Scalar, closed: bool) -> Self {
        Self::interval(Endpoint::NegInf, false, Endpoint::Finite(b), closed)
    }

    /// `[a, inf)` when `closed`, else `(a, inf)`.
    pub fn above(a: Scalar, closed: bool) -> Self {
        Self::interval(Endpoint::Finite(a), closed, Endpoint::PosInf, false)
    }

    pub fn is_empty(&self) -> bool {
        self.intervals.is_empty()
    }

    pub fn intervals(&self) -> &[Interval] {
        &self.intervals
    }

    pub fn contains(&self, x: &Scalar) -> bool {
        self.intervals.iter().any(|iv| iv.contains(x))
    }

    /// Every interval bounded on both sides.
    pub fn is_bounded(&self) -> bool {
        self.intervals
            .iter()
            .all(|iv| matches!(iv.lo, Endpoint::Finite(_)) && matches!(iv.hi, Endpoint::Finite(_)))
    }

    fn normalize(&mut self) {
        self.intervals.retain(|iv| iv.is_valid());
        self.intervals
            .sort_by(|a, b| cmp_lower((&a.lo, a.lo_closed), (&b.lo, b.lo_closed)));
        let mut merged: Vec<Interval> = Vec::with_capacity(self.intervals.len());
        for iv in self.intervals.drain(..) {
            match merged.last_mut() {
                Some(last) if touches(last, &iv) => {
                    if cmp_upper((&iv.hi, iv.hi_closed), (&last.hi, last.hi_closed))
                        == Ordering::Greater
                    {
                        last.hi = iv.hi;
                        last.hi_closed = iv.hi_closed;
                    }
                }
                _ => merged.push(iv),
            }
        }
        self.intervals = merged;
    }

    pub fn union(&self, other: &RealSet) -> RealSet {
        let mut intervals = self.intervals.clone();
        intervals.extend(other.intervals.iter().cloned());
        RealSet::from_intervals(intervals)
    }

    pub fn intersect(&self, other: &RealSet) -> RealSet {
        let mut out = Vec::new();
        for a in &self.intervals {
            for b in &other.intervals {
                let (lo, lo_closed) =
                    match cmp_lower((&a.lo, a.lo_closed), (&b.lo, b.lo_closed)) {
                        Ordering::Less => (b.lo.clone(), b.lo_closed),
                        _ => (a.lo.clone(), a.lo_closed),
                    };
                let (hi, hi_closed) =
                    match cmp_upper((&a.hi, a.hi_closed), (&b.hi, b.hi_closed)) {
                        Ordering::Greater => (b.hi.clone(), b.hi_closed),
                        _ => (a.hi.clone(), a.hi_closed),
                    };
                if let Some(iv) = Interval::new(lo, lo_closed, hi, hi_closed) {
                    out.push(iv);
                }
            }
        }
        RealSet::from_intervals(out)
    }

    pub fn complement(&self) -> RealSet {
        let mut out = Vec::new();
        let mut cursor = Endpoint::NegInf;
        let mut cursor_closed = false; // whether the cursor point itself is still free
        for iv in &self.intervals {
            if let Some(gap) =
                Interval::new(cursor.clone(), cursor_closed, iv.lo.clone(), !iv.lo_closed)
            {
                out.push(gap);
            }
            cursor = iv.hi.clone();
            cursor_closed = !iv.hi_closed;
        }
        if let Some(gap) = Interval::new(cursor, cursor_closed, Endpoint::PosInf, false) {
            out.push(gap);
        }
        RealSet { intervals: out } // gaps are already sorted and separated
    }

    pub fn difference(&self, other: &RealSet) -> RealSet {
        self.intersect(&other.complement())
    }
}

fn touches(a: &Interval, b: &Interval) -> bool {
    // b.lo >= a.lo by sort order; they merge if b starts no later than
    // immediately after a ends.
    match a.hi.cmp(&b.lo) {
        Ordering::Greater => true,
        Ordering::Equal => a.hi_closed || b.lo_closed,
        Ordering::Less => false,
    }
}

impl fmt::Display for RealSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.intervals.is_empty() {
            return write!(f, "{{}}");
        }
        for (i, iv) in self.intervals.iter().enumerate() {
            if i > 0 {
                write!(f, " u ")?;
            }
            let lo = match &iv.lo {
                Endpoint::NegInf => "-inf".to_string(),
                Endpoint::PosInf => "+inf".to_string(),
                Endpoint::Finite(x) => x.to_string(),
            };
            let hi = match &iv.hi {
                Endpoint::NegInf => "-inf".to_string(),
                Endpoint::PosInf => "+inf".to_string(),
                Endpoint::Finite(x) => x.to_string(),
            };
            write!(
                f,
                "{}{}, {}{}",
                if iv.lo_closed { "[" } else { "(" },
                lo,
                hi,
                if iv.hi_closed { "]" } else { ")" }
            )?;
        }
        Ok(())
    }
}
