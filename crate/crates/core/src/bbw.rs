//! Borel-Bott-Weil on Grassmannians and projective spaces.
//!
//! An irreducible homogeneous bundle on Gr(k,n) is `Σ^a U* ⊗ Σ^b Q` with `a`
//! of length `k` and `b` of length `n-k`. Projective space P^m is Gr(1,m+1).
//! Since `det Q = O(1)`, bundles are stored with the last entry of `b` equal to
//! zero, the shift being moved into `a`.

use std::collections::HashMap;
use std::fmt;
use std::sync::{Mutex, OnceLock};

use serde::{Deserialize, Serialize};

use crate::error::{FanoError, Result};
use crate::weights::{bott_regularize, weyl_dim, BottRegularity, DominantWeight, IntegerWeight};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct GrSpec {
    k: usize,
    n: usize,
}

impl GrSpec {
    pub fn new(k: usize, n: usize) -> Result<Self> {
        if k == 0 || k >= n {
            return Err(FanoError::InvalidGrassmannian { k, n });
        }
        Ok(GrSpec { k, n })
    }

    /// P^m as Gr(1, m+1).
    pub fn projective(m: usize) -> Result<Self> {
        GrSpec::new(1, m + 1)
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn quotient_rank(&self) -> usize {
        self.n - self.k
    }

    pub fn dim(&self) -> usize {
        self.k * (self.n - self.k)
    }

    pub fn is_projective(&self) -> bool {
        self.k == 1
    }

    /// `K = O(-n)`.
    pub fn canonical_twist(&self) -> i64 {
        -(self.n as i64)
    }
}

impl fmt::Display for GrSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.k == 1 {
            write!(f, "P{}", self.n - 1)
        } else {
            write!(f, "Gr({},{})", self.k, self.n)
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct IrredBundle {
    gr: GrSpec,
    a: DominantWeight,
    b: DominantWeight,
}

impl IrredBundle {
    pub fn new(gr: GrSpec, a: Vec<i64>, b: Vec<i64>) -> Result<Self> {
        if a.len() != gr.k {
            return Err(FanoError::WeightLength { expected: gr.k, got: a.len() });
        }
        if b.len() != gr.quotient_rank() {
            return Err(FanoError::WeightLength { expected: gr.quotient_rank(), got: b.len() });
        }
        Ok(Self::canonical(gr, DominantWeight::new(a)?, DominantWeight::new(b)?))
    }

    fn canonical(gr: GrSpec, a: DominantWeight, b: DominantWeight) -> Self {
        let c = b.last();
        IrredBundle { gr, a: a.shifted(c), b: b.shifted(-c) }
    }

    pub fn from_weights(gr: GrSpec, a: DominantWeight, b: DominantWeight) -> Result<Self> {
        Self::new(gr, a.into_entries(), b.into_entries())
    }

    pub fn line_bundle(gr: GrSpec, t: i64) -> Self {
        IrredBundle {
            gr,
            a: DominantWeight::constant(gr.k, t),
            b: DominantWeight::zero(gr.quotient_rank()),
        }
    }

    pub fn tautological_dual(gr: GrSpec) -> Self {
        let mut a = vec![0; gr.k];
        a[0] = 1;
        Self::new(gr, a, vec![0; gr.quotient_rank()]).expect("valid weights")
    }

    pub fn quotient(gr: GrSpec) -> Self {
        let mut b = vec![0; gr.quotient_rank()];
        b[0] = 1;
        Self::new(gr, vec![0; gr.k], b).expect("valid weights")
    }

    /// `T = U* ⊗ Q`.
    pub fn tangent(gr: GrSpec) -> Self {
        let mut a = vec![0; gr.k];
        a[0] = 1;
        let mut b = vec![0; gr.quotient_rank()];
        b[0] = 1;
        Self::new(gr, a, b).expect("valid weights")
    }

    /// `Ω¹ = U ⊗ Q*`.
    pub fn cotangent(gr: GrSpec) -> Self {
        Self::tangent(gr).dual()
    }

    pub fn gr(&self) -> GrSpec {
        self.gr
    }

    pub fn a(&self) -> &DominantWeight {
        &self.a
    }

    pub fn b(&self) -> &DominantWeight {
        &self.b
    }

    pub fn twisted(&self, t: i64) -> Self {
        IrredBundle { gr: self.gr, a: self.a.shifted(t), b: self.b.clone() }
    }

    pub fn dual(&self) -> Self {
        Self::canonical(self.gr, self.a.dual(), self.b.dual())
    }

    pub fn rank(&self) -> u64 {
        weyl_dim(&self.a) * weyl_dim(&self.b)
    }

    pub fn is_line_bundle(&self) -> bool {
        self.a.is_constant() && self.b.is_constant()
    }

    /// The `O(t)` factor that the display form splits off: the last entry of `a`.
    pub fn twist(&self) -> i64 {
        self.a.last()
    }

    /// Weight fed to Borel-Bott-Weil: `a` followed by the weight of `Σ^b Q`
    /// written as a Schur functor of `Q*`, i.e. the reversed negation of `b`.
    pub fn bbw_weight(&self) -> IntegerWeight {
        let mut w = self.a.entries().to_vec();
        w.extend(self.b.dual().entries());
        IntegerWeight::new(w)
    }
}

impl fmt::Display for IrredBundle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let t = self.twist();
        let a = self.a.shifted(-t);
        let mut parts = Vec::new();
        if !a.is_constant() {
            parts.push(format!("S{a}U*"));
        }
        if !self.b.is_constant() {
            parts.push(format!("S{}Q", self.b));
        }
        if t != 0 || parts.is_empty() {
            parts.push(format!("O({t})"));
        }
        write!(f, "{}", parts.join(" ⊗ "))
    }
}

/// Cohomology of an irreducible bundle: zero, or a single nonzero degree.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum CohomResult {
    AllZero,
    Nonzero { degree: usize, dim: u64 },
}

impl CohomResult {
    pub fn h(&self, q: usize) -> u64 {
        match *self {
            CohomResult::Nonzero { degree, dim } if degree == q => dim,
            _ => 0,
        }
    }
}

impl fmt::Display for CohomResult {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CohomResult::AllZero => write!(f, "all cohomology vanishes"),
            CohomResult::Nonzero { degree, dim } => write!(f, "h^{degree} = {dim}, all other degrees vanish"),
        }
    }
}

fn cache() -> &'static Mutex<HashMap<IntegerWeight, CohomResult>> {
    static CACHE: OnceLock<Mutex<HashMap<IntegerWeight, CohomResult>>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

pub fn cohomology_of_weight(w: &IntegerWeight) -> CohomResult {
    if let Some(r) = cache().lock().expect("cache poisoned").get(w) {
        return *r;
    }
    let r = match bott_regularize(w) {
        BottRegularity::Singular => CohomResult::AllZero,
        BottRegularity::Regular { length, dominant } => {
            CohomResult::Nonzero { degree: length, dim: weyl_dim(&dominant) }
        }
    };
    cache().lock().expect("cache poisoned").insert(w.clone(), r);
    r
}

pub fn cohomology_irred(e: &IrredBundle) -> CohomResult {
    let r = cohomology_of_weight(&e.bbw_weight());
    if let CohomResult::Nonzero { degree, .. } = r {
        debug_assert!(degree <= e.gr.dim());
    }
    r
}

/// `Ω^p(t)`. On a Grassmannian only `p <= 1` is irreducible; when `U` or `Q`
/// is a line bundle every `p` is.
pub fn cohomology_omega_twist(gr: GrSpec, p: usize, t: i64) -> Result<CohomResult> {
    Ok(cohomology_irred(&omega(gr, p)?.twisted(t)))
}

/// `Ω^p` as an irreducible bundle where it is one.
pub fn omega(gr: GrSpec, p: usize) -> Result<IrredBundle> {
    let (k, r) = (gr.k, gr.quotient_rank());
    if p > gr.dim() {
        return Err(FanoError::UnsupportedOmega { p, k, n: gr.n });
    }
    match p {
        0 => Ok(IrredBundle::line_bundle(gr, 0)),
        1 => Ok(IrredBundle::cotangent(gr)),
        _ if k == 1 => {
            // U^p ⊗ ∧^p Q*
            let mut b = vec![0; r];
            for x in b.iter_mut().skip(r - p) {
                *x = -1;
            }
            IrredBundle::new(gr, vec![-(p as i64)], b)
        }
        _ if r == 1 => {
            // ∧^p U ⊗ Q*^p
            let mut a = vec![0; k];
            for x in a.iter_mut().skip(k - p) {
                *x = -1;
            }
            IrredBundle::new(gr, a, vec![-(p as i64)])
        }
        _ => Err(FanoError::UnsupportedOmega { p, k, n: gr.n }),
    }
}
