//! Integer weights of GL(n): the rho shift, Bott sorting, Weyl dimensions and
//! Littlewood-Richardson products.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, ToPrimitive};
use serde::{Deserialize, Serialize};

use crate::error::{FanoError, Result};

/// An arbitrary integer weight of GL(n).
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct IntegerWeight(Vec<i64>);

impl IntegerWeight {
    pub fn new(entries: Vec<i64>) -> Self {
        IntegerWeight(entries)
    }

    pub fn rank(&self) -> usize {
        self.0.len()
    }

    pub fn entries(&self) -> &[i64] {
        &self.0
    }

    pub fn is_dominant(&self) -> bool {
        self.0.windows(2).all(|w| w[0] >= w[1])
    }

    pub fn add(&self, other: &IntegerWeight) -> IntegerWeight {
        assert_eq!(self.rank(), other.rank(), "weight ranks differ");
        IntegerWeight(self.0.iter().zip(&other.0).map(|(x, y)| x + y).collect())
    }
}

impl fmt::Display for IntegerWeight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_entries(f, &self.0)
    }
}

/// A non-increasing integer weight.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "Vec<i64>", into = "Vec<i64>")]
pub struct DominantWeight(Vec<i64>);

impl DominantWeight {
    pub fn new(entries: Vec<i64>) -> Result<Self> {
        if entries.windows(2).all(|w| w[0] >= w[1]) {
            Ok(DominantWeight(entries))
        } else {
            Err(FanoError::NotDominant(entries))
        }
    }

    pub fn zero(n: usize) -> Self {
        DominantWeight(vec![0; n])
    }

    /// `t` copies of one weight, i.e. the character of `det^t`.
    pub fn constant(n: usize, t: i64) -> Self {
        DominantWeight(vec![t; n])
    }

    pub fn rank(&self) -> usize {
        self.0.len()
    }

    pub fn entries(&self) -> &[i64] {
        &self.0
    }

    pub fn into_entries(self) -> Vec<i64> {
        self.0
    }

    /// Sum of entries.
    pub fn size(&self) -> i64 {
        self.0.iter().sum()
    }

    pub fn shifted(&self, c: i64) -> DominantWeight {
        DominantWeight(self.0.iter().map(|x| x + c).collect())
    }

    /// Weight of the dual representation: negate and reverse.
    pub fn dual(&self) -> DominantWeight {
        DominantWeight(self.0.iter().rev().map(|x| -x).collect())
    }

    pub fn is_constant(&self) -> bool {
        self.0.windows(2).all(|w| w[0] == w[1])
    }

    pub fn first(&self) -> i64 {
        self.0.first().copied().unwrap_or(0)
    }

    pub fn last(&self) -> i64 {
        self.0.last().copied().unwrap_or(0)
    }
}

impl TryFrom<Vec<i64>> for DominantWeight {
    type Error = FanoError;
    fn try_from(v: Vec<i64>) -> Result<Self> {
        DominantWeight::new(v)
    }
}

impl From<DominantWeight> for Vec<i64> {
    fn from(w: DominantWeight) -> Self {
        w.0
    }
}

impl fmt::Display for DominantWeight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_entries(f, &self.0)
    }
}

fn write_entries(f: &mut fmt::Formatter<'_>, v: &[i64]) -> fmt::Result {
    write!(f, "[")?;
    for (i, x) in v.iter().enumerate() {
        if i > 0 {
            write!(f, ",")?;
        }
        write!(f, "{x}")?;
    }
    write!(f, "]")
}

/// `(n, n-1, ..., 1)`.
pub fn rho(n: usize) -> IntegerWeight {
    IntegerWeight((1..=n as i64).rev().collect())
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum BottRegularity {
    Singular,
    Regular { length: usize, dominant: DominantWeight },
}

/// Shift by rho, detect repeats, and otherwise sort into the dominant chamber.
/// `length` is the number of inversions of the shifted weight.
pub fn bott_regularize(w: &IntegerWeight) -> BottRegularity {
    let n = w.rank();
    let shifted = w.add(&rho(n));
    let s = shifted.entries();
    let mut sorted = s.to_vec();
    sorted.sort_unstable_by(|a, b| b.cmp(a));
    if sorted.windows(2).any(|p| p[0] == p[1]) {
        return BottRegularity::Singular;
    }
    let mut length = 0;
    for i in 0..n {
        for j in i + 1..n {
            if s[i] < s[j] {
                length += 1;
            }
        }
    }
    let r = rho(n);
    let dominant = sorted.iter().zip(r.entries()).map(|(x, p)| x - p).collect();
    BottRegularity::Regular { length, dominant: DominantWeight(dominant) }
}

/// Dimension of the irreducible GL(n)-module of highest weight `lambda`.
pub fn weyl_dim(lambda: &DominantWeight) -> u64 {
    let l = lambda.entries();
    let n = l.len();
    let mut num = BigInt::one();
    let mut den = BigInt::one();
    for i in 0..n {
        for j in i + 1..n {
            num *= l[i] - l[j] + (j - i) as i64;
            den *= (j - i) as i64;
        }
    }
    let q = num / den;
    q.to_u64().expect("Weyl dimension exceeds u64")
}

/// Irreducible decomposition of `lambda ⊗ mu` for GL(n), as highest weight to
/// multiplicity. Both inputs must have length `n`.
pub fn lr_tensor(
    lambda: &DominantWeight,
    mu: &DominantWeight,
    n: usize,
) -> Result<BTreeMap<DominantWeight, u64>> {
    for w in [lambda, mu] {
        if w.rank() != n {
            return Err(FanoError::WeightLength { expected: n, got: w.rank() });
        }
    }
    let cl = (-lambda.last()).max(0);
    let cm = (-mu.last()).max(0);
    let lam = lambda.shifted(cl);
    let m = mu.shifted(cm);
    let mut out = BTreeMap::new();
    for (nu, mult) in lr_partitions(lam.entries(), m.entries(), n) {
        let w = DominantWeight(nu.into_iter().map(|x| x - cl - cm).collect());
        *out.entry(w).or_insert(0) += mult;
    }
    Ok(out)
}

/// LR coefficients for partitions, built by adding the rows of `mu` as
/// horizontal strips subject to the lattice-word condition. Shapes with more
/// than `n` rows are never produced.
fn lr_partitions(lam: &[i64], mu: &[i64], n: usize) -> BTreeMap<Vec<i64>, u64> {
    let letters: Vec<i64> = mu.iter().copied().take_while(|&x| x > 0).collect();
    let mut out = BTreeMap::new();
    let mut counts = vec![vec![0i64; letters.len()]; n];
    let mut shape = lam.to_vec();
    add_letter(0, &letters, &mut shape, &mut counts, &mut out);
    out
}

fn add_letter(
    k: usize,
    letters: &[i64],
    shape: &mut Vec<i64>,
    counts: &mut Vec<Vec<i64>>,
    out: &mut BTreeMap<Vec<i64>, u64>,
) {
    if k == letters.len() {
        *out.entry(shape.clone()).or_insert(0) += 1;
        return;
    }
    let old = shape.clone();
    place_strip(k, 0, letters[k], &old, letters, shape, counts, 0, 0, out);
}

#[allow(clippy::too_many_arguments)]
fn place_strip(
    k: usize,
    row: usize,
    remaining: i64,
    old: &[i64],
    letters: &[i64],
    shape: &mut Vec<i64>,
    counts: &mut Vec<Vec<i64>>,
    cum_k: i64,
    cum_prev: i64,
    out: &mut BTreeMap<Vec<i64>, u64>,
) {
    let n = shape.len();
    if remaining == 0 {
        add_letter(k + 1, letters, shape, counts, out);
        return;
    }
    if row == n {
        return;
    }
    // Horizontal strip: the new row may not pass the old row above it.
    let cap_strip = if row == 0 { remaining } else { old[row - 1] - old[row] };
    // Lattice condition: k's in rows <= row bounded by (k-1)'s in rows < row.
    let cap_lattice = if k == 0 { remaining } else { cum_prev - cum_k };
    let cap = remaining.min(cap_strip).min(cap_lattice);
    let prev_here = if k == 0 { 0 } else { counts[row][k - 1] };
    for x in (0..=cap.max(0)).rev() {
        shape[row] = old[row] + x;
        counts[row][k] = x;
        place_strip(
            k,
            row + 1,
            remaining - x,
            old,
            letters,
            shape,
            counts,
            cum_k + x,
            cum_prev + prev_here,
            out,
        );
    }
    shape[row] = old[row];
    counts[row][k] = 0;
}
