//! Interval-valued cohomology dimensions.

use std::fmt;

use serde::{Deserialize, Serialize};

/// A closed interval `[lo, hi]` of natural numbers; `hi = None` is unbounded.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct IntervalDim {
    pub lo: u64,
    pub hi: Option<u64>,
}

impl IntervalDim {
    pub const ZERO: IntervalDim = IntervalDim { lo: 0, hi: Some(0) };
    pub const UNKNOWN: IntervalDim = IntervalDim { lo: 0, hi: None };

    pub fn exact(v: u64) -> Self {
        IntervalDim { lo: v, hi: Some(v) }
    }

    pub fn new(lo: u64, hi: Option<u64>) -> Self {
        IntervalDim { lo, hi }
    }

    pub fn at_most(hi: u64) -> Self {
        IntervalDim { lo: 0, hi: Some(hi) }
    }

    pub fn is_exact(&self) -> bool {
        self.hi == Some(self.lo)
    }

    pub fn exact_value(&self) -> Option<u64> {
        if self.is_exact() {
            Some(self.lo)
        } else {
            None
        }
    }

    pub fn is_zero(&self) -> bool {
        self.hi == Some(0)
    }

    pub fn is_finite(&self) -> bool {
        self.hi.is_some()
    }

    pub fn is_empty(&self) -> bool {
        matches!(self.hi, Some(h) if h < self.lo)
    }

    pub fn intersect(&self, other: &IntervalDim) -> IntervalDim {
        let hi = match (self.hi, other.hi) {
            (Some(a), Some(b)) => Some(a.min(b)),
            (a, None) => a,
            (None, b) => b,
        };
        IntervalDim { lo: self.lo.max(other.lo), hi }
    }

    /// `other ⊆ self`.
    pub fn contains(&self, other: &IntervalDim) -> bool {
        let hi_ok = match (self.hi, other.hi) {
            (None, _) => true,
            (Some(_), None) => false,
            (Some(a), Some(b)) => b <= a,
        };
        other.lo >= self.lo && hi_ok
    }

    pub fn contains_value(&self, v: u64) -> bool {
        v >= self.lo && self.hi.is_none_or(|h| v <= h)
    }

    pub fn add(&self, other: &IntervalDim) -> IntervalDim {
        IntervalDim {
            lo: self.lo + other.lo,
            hi: match (self.hi, other.hi) {
                (Some(a), Some(b)) => Some(a + b),
                _ => None,
            },
        }
    }

    pub fn scale(&self, m: u64) -> IntervalDim {
        IntervalDim { lo: self.lo * m, hi: self.hi.map(|h| h * m) }
    }
}

impl fmt::Display for IntervalDim {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.hi {
            Some(h) => write!(f, "[{},{}]", self.lo, h),
            None => write!(f, "[{},inf]", self.lo),
        }
    }
}

/// Cohomology dimensions `h^0..h^dim` of a sheaf on a variety of dimension `dim`.
/// Degrees above `dim` are zero.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DimTable {
    entries: Vec<IntervalDim>,
}

impl DimTable {
    pub fn zero(dim: usize) -> Self {
        DimTable { entries: vec![IntervalDim::ZERO; dim + 1] }
    }

    pub fn unknown(dim: usize) -> Self {
        DimTable { entries: vec![IntervalDim::UNKNOWN; dim + 1] }
    }

    pub fn from_entries(entries: Vec<IntervalDim>) -> Self {
        assert!(!entries.is_empty(), "a table covers at least degree 0");
        DimTable { entries }
    }

    pub fn exact(values: &[u64]) -> Self {
        Self::from_entries(values.iter().map(|&v| IntervalDim::exact(v)).collect())
    }

    pub fn dim(&self) -> usize {
        self.entries.len() - 1
    }

    pub fn get(&self, q: usize) -> IntervalDim {
        self.entries.get(q).copied().unwrap_or(IntervalDim::ZERO)
    }

    pub fn set(&mut self, q: usize, v: IntervalDim) {
        self.entries[q] = v;
    }

    pub fn entries(&self) -> &[IntervalDim] {
        &self.entries
    }

    pub fn is_exact(&self) -> bool {
        self.entries.iter().all(IntervalDim::is_exact)
    }

    pub fn exact_values(&self) -> Option<Vec<u64>> {
        self.entries.iter().map(IntervalDim::exact_value).collect()
    }

    /// Euler characteristic, when every entry is exact.
    pub fn euler(&self) -> Option<i128> {
        let v = self.exact_values()?;
        Some(v.iter().enumerate().map(|(q, &d)| if q % 2 == 0 { d as i128 } else { -(d as i128) }).sum())
    }

    pub fn add(&self, other: &DimTable) -> DimTable {
        let dim = self.dim().max(other.dim());
        DimTable { entries: (0..=dim).map(|q| self.get(q).add(&other.get(q))).collect() }
    }

    pub fn scale(&self, m: u64) -> DimTable {
        DimTable { entries: self.entries.iter().map(|e| e.scale(m)).collect() }
    }

    /// Serre duality on a variety of dimension `dim()`: reverse degrees.
    pub fn reversed(&self) -> DimTable {
        DimTable { entries: self.entries.iter().rev().copied().collect() }
    }
}

impl fmt::Display for DimTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (q, e) in self.entries.iter().enumerate() {
            if q > 0 {
                write!(f, " ")?;
            }
            match e.exact_value() {
                Some(v) => write!(f, "h{q}={v}")?,
                None => write!(f, "h{q}={e}")?,
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn interval_ops() {
        let a = IntervalDim::new(1, Some(5));
        let b = IntervalDim::new(3, None);
        assert_eq!(a.intersect(&b), IntervalDim::new(3, Some(5)));
        assert!(IntervalDim::UNKNOWN.contains(&a));
        assert!(!a.contains(&b));
        assert!(IntervalDim::new(4, Some(3)).is_empty());
        assert_eq!(a.add(&b), IntervalDim::new(4, None));
        assert_eq!(IntervalDim::UNKNOWN.to_string(), "[0,inf]");
    }

    #[test]
    fn euler_and_reverse() {
        let t = DimTable::exact(&[3, 1, 0, 2]);
        assert_eq!(t.euler(), Some(0));
        assert_eq!(t.reversed(), DimTable::exact(&[2, 0, 1, 3]));
        assert_eq!(t.get(7), IntervalDim::ZERO);
    }
}
