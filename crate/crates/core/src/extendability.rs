//! Extendability bounds for the Calabi-Yau double structures on `Y`.
//!
//! The embedding line bundle is `l·H` and the conormal bundle of the ribbon is
//! `K_Y = -i·H`, so every twist below is a multiple of the generator `H`.
//!
//! The upper bound on `α` is
//! `β = h1(T_Y(-(l+i))) + h1(T_Y(-l)) - h0(T_Y(-l)) + h1(O_Y(i-l)) + h0(O_Y(2i-l))`.

use std::collections::HashMap;
use std::fmt;
use std::sync::{Mutex, OnceLock};

use serde::{Deserialize, Serialize};

use crate::chase::{line_bundle_cohomology, tangent_twist_cohomology, ChaseTrace};
use crate::dims::{DimTable, IntervalDim};
use crate::error::{FanoError, Result};
use crate::families::{n_l, Extendability, FamilyDb, FanoFamily, ProjectiveDim};

/// Search window for the least `l` with `β = 0`.
pub const L_SEARCH_SPAN: i64 = 40;

type Memo = Mutex<HashMap<(String, bool, i64), (DimTable, ChaseTrace)>>;

fn memo() -> &'static Memo {
    static M: OnceLock<Memo> = OnceLock::new();
    M.get_or_init(|| Mutex::new(HashMap::new()))
}

fn memoized(y: &FanoFamily, tangent: bool, t: i64) -> Result<(DimTable, ChaseTrace)> {
    // keyed on the full record so a mutated database never reuses stale tables
    let key = (format!("{y:?}"), tangent, t);
    if let Some(v) = memo().lock().expect("memo poisoned").get(&key) {
        return Ok(v.clone());
    }
    let v = if tangent { tangent_twist_cohomology(y, t)? } else { line_bundle_cohomology(y, t)? };
    memo().lock().expect("memo poisoned").insert(key, v.clone());
    Ok(v)
}

/// `h^*(T_Y(-m))`, memoized.
pub fn tangent_table(y: &FanoFamily, m: i64) -> Result<(DimTable, ChaseTrace)> {
    memoized(y, true, m)
}

/// `h^*(O_Y(t))`, memoized.
pub fn line_table(y: &FanoFamily, t: i64) -> Result<(DimTable, ChaseTrace)> {
    memoized(y, false, t)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BetaBreakdown {
    /// `h1(T_Y(-(l+i)))`
    pub t1: IntervalDim,
    /// `h1(T_Y(-l))`
    pub t2: IntervalDim,
    /// `h0(T_Y(-l))`
    pub t3: IntervalDim,
    /// `h1(O_Y(i-l))`
    pub t4: IntervalDim,
    /// `h0(O_Y(2i-l))`
    pub t5: IntervalDim,
    /// Certified upper bound, `None` when some term is unbounded.
    pub beta_hi: Option<u64>,
    /// The same combination with every term at the other end of its interval.
    pub beta_min: u64,
}

impl BetaBreakdown {
    pub fn from_terms(t: [IntervalDim; 5]) -> Self {
        let [t1, t2, t3, t4, t5] = t;
        let beta_hi = (|| {
            let up = t1.hi? + t2.hi? + t4.hi? + t5.hi?;
            Some(up.saturating_sub(t3.lo))
        })();
        let beta_min = match t3.hi {
            Some(h) => (t1.lo + t2.lo + t4.lo + t5.lo).saturating_sub(h),
            None => 0,
        };
        BetaBreakdown { t1, t2, t3, t4, t5, beta_hi, beta_min }
    }

    pub fn terms(&self) -> [IntervalDim; 5] {
        [self.t1, self.t2, self.t3, self.t4, self.t5]
    }
}

/// One term of a bound with the chase that produced it.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct NamedTrace {
    pub term: String,
    pub trace: ChaseTrace,
}

fn check_l(y: &FanoFamily, l: i64) -> Result<()> {
    if l <= y.index {
        return Err(FanoError::TwistNotAboveIndex { family: y.id.clone(), l, index: y.index });
    }
    Ok(())
}

/// The five terms of `β` at `l`, with the chase behind each.
pub fn beta_derivation(y: &FanoFamily, l: i64) -> Result<(BetaBreakdown, Vec<NamedTrace>)> {
    check_l(y, l)?;
    let i = y.index;
    let (wide, wide_trace) = tangent_table(y, l + i)?;
    let (tl, tl_trace) = tangent_table(y, l)?;
    let (o4, o4_trace) = line_table(y, i - l)?;
    let (o5, o5_trace) = line_table(y, 2 * i - l)?;
    let b = BetaBreakdown::from_terms([wide.get(1), tl.get(1), tl.get(0), o4.get(1), o5.get(0)]);
    let traces = vec![
        NamedTrace { term: format!("h^1(T_Y({}))", -(l + i)), trace: wide_trace },
        NamedTrace { term: format!("h^*(T_Y({}))", -l), trace: tl_trace },
        NamedTrace { term: format!("h^1(O_Y({}))", i - l), trace: o4_trace },
        NamedTrace { term: format!("h^0(O_Y({}))", 2 * i - l), trace: o5_trace },
    ];
    Ok((b, traces))
}

pub fn beta_bound(y: &FanoFamily, l: i64) -> Result<BetaBreakdown> {
    Ok(beta_derivation(y, l)?.0)
}

/// What the Zak-L'vovsky criterion concludes from `α <= β`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Conclusion {
    /// `α = 0`: not extendable, so the cone over `X` is not smoothable.
    NotExtendable { cone_not_smoothable: bool },
    NotKExtendable { k: u64 },
    Inconclusive,
}

impl fmt::Display for Conclusion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Conclusion::NotExtendable { cone_not_smoothable: true } => write!(f, "not extendable; cone not smoothable"),
            Conclusion::NotExtendable { .. } => write!(f, "not extendable"),
            Conclusion::NotKExtendable { k } => write!(f, "not {k}-extendable"),
            Conclusion::Inconclusive => write!(f, "inconclusive"),
        }
    }
}

impl Conclusion {
    /// Least `k` for which `X` is shown not `k`-extendable.
    pub fn obstructed_from(&self) -> Option<u64> {
        match self {
            Conclusion::NotExtendable { .. } => Some(1),
            Conclusion::NotKExtendable { k } => Some(*k),
            Conclusion::Inconclusive => None,
        }
    }
}

/// `not_quadric` guards the criterion, which excludes quadrics.
pub fn zl_conclude(beta_hi: Option<u64>, n_l: u64, not_quadric: bool) -> Conclusion {
    match beta_hi {
        _ if !not_quadric => Conclusion::Inconclusive,
        Some(0) => Conclusion::NotExtendable { cone_not_smoothable: true },
        Some(b) if b < n_l => Conclusion::NotKExtendable { k: b + 1 },
        _ => Conclusion::Inconclusive,
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VanishingTerm {
    pub name: String,
    pub value: IntervalDim,
}

/// The vanishings behind `H^1(N(-k)) = 0` for the ribbon, with their values.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct NormalVanishing {
    pub k: i64,
    pub pass: bool,
    pub terms: Vec<VanishingTerm>,
}

impl NormalVanishing {
    pub fn failing(&self) -> impl Iterator<Item = &VanishingTerm> {
        self.terms.iter().filter(|t| !t.value.is_zero())
    }
}

pub fn normal_vanishing_check(y: &FanoFamily, l: i64, k: i64) -> Result<NormalVanishing> {
    let i = y.index;
    let line = [
        (1, i - k * l),
        (1, 2 * i - k * l),
        (2, -k * l),
        (2, i - k * l),
        (1, -i - (k - 1) * l),
        (1, -(k - 1) * l),
        (2, -i - k * l),
    ];
    let mut terms = Vec::new();
    for (q, t) in line {
        let (tab, _) = line_table(y, t)?;
        terms.push(VanishingTerm { name: format!("h^{q}(O_Y({t}))"), value: tab.get(q) });
    }
    for m in [k * l + i, k * l] {
        let (tab, _) = tangent_table(y, m)?;
        terms.push(VanishingTerm { name: format!("h^2(T_Y({}))", -m), value: tab.get(2) });
    }
    let pass = terms.iter().all(|t| t.value.is_zero());
    Ok(NormalVanishing { k, pass, terms })
}

/// `α` of the surface section `S` in terms of `α(X)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SurfaceAlpha {
    pub value: IntervalDim,
    /// Whether the hypotheses making the value exact are certified.
    pub certified: bool,
    /// `α(S) = 1`: extendable but not 2-extendable.
    pub exactly_one_extendable: bool,
}

/// `alpha` is the interval known for `α(X)`; `normal_vanishing` the checks at `k = 1..3`.
pub fn surface_alpha(alpha: IntervalDim, normal_vanishing: &[NormalVanishing]) -> SurfaceAlpha {
    let hypotheses = alpha.is_zero() && normal_vanishing.len() == 3 && normal_vanishing.iter().all(|p| p.pass);
    if hypotheses {
        return SurfaceAlpha { value: IntervalDim::exact(1), certified: true, exactly_one_extendable: true };
    }
    SurfaceAlpha { value: IntervalDim::new(alpha.lo + 1, None), certified: false, exactly_one_extendable: false }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Flag {
    Match,
    TighterThanPaper,
    LooserThanPaper,
    PaperInternalDiscrepancy,
}

impl fmt::Display for Flag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Flag::Match => "Match",
            Flag::TighterThanPaper => "TighterThanPaper",
            Flag::LooserThanPaper => "LooserThanPaper",
            Flag::PaperInternalDiscrepancy => "PaperInternalDiscrepancy",
        };
        f.write_str(s)
    }
}

/// Flag for an engine bound against a published one. A published bound below
/// what the engine proves is a lower bound on `β` itself, or a quoted input
/// that does not recompute, makes the row internally inconsistent.
pub fn compare(beta: &BetaBreakdown, published: u64, cited_ok: bool) -> Flag {
    if !cited_ok || published < beta.beta_min {
        return Flag::PaperInternalDiscrepancy;
    }
    match beta.beta_hi {
        Some(b) if b == published => Flag::Match,
        Some(b) if b < published => Flag::TighterThanPaper,
        _ => Flag::LooserThanPaper,
    }
}

/// A quoted intermediate value checked against two independent counts.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CitedCheck {
    pub quantity: String,
    pub twist: i64,
    pub cited: u64,
    pub chase: IntervalDim,
    pub riemann_roch: u64,
    pub agrees: bool,
}

pub fn cited_checks(y: &FanoFamily, l: i64) -> Result<Vec<CitedCheck>> {
    let mut out = Vec::new();
    for c in y.cited.iter().filter(|c| c.used_at_l == l) {
        let (tab, _) = line_table(y, c.twist)?;
        let chase = tab.get(0);
        let riemann_roch = crate::families::h0_rr(y, c.twist)?;
        let agrees = chase.contains_value(c.value) && riemann_roch == c.value;
        out.push(CitedCheck { quantity: c.quantity.clone(), twist: c.twist, cited: c.value, chase, riemann_roch, agrees });
    }
    Ok(out)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExtendabilityReport {
    pub family: String,
    pub l: i64,
    pub n_l: ProjectiveDim,
    pub beta: BetaBreakdown,
    /// `α <= β`.
    pub alpha_hi: Option<u64>,
    pub conclusion: Conclusion,
    pub normal_vanishing: Vec<NormalVanishing>,
    pub surface_alpha: SurfaceAlpha,
    pub published_bound: Option<u64>,
    pub cited: Vec<CitedCheck>,
    /// `None` when no published row covers `l`.
    pub flag: Option<Flag>,
}

impl ExtendabilityReport {
    pub fn normal_vanishing_pass(&self) -> bool {
        self.normal_vanishing.iter().all(|p| p.pass)
    }
}

pub fn report(y: &FanoFamily, l: i64) -> Result<ExtendabilityReport> {
    let beta = beta_bound(y, l)?;
    let n = n_l(y, l)?;
    let normal_vanishing = (1..=3).map(|k| normal_vanishing_check(y, l, k)).collect::<Result<Vec<_>>>()?;
    let alpha = match beta.beta_hi {
        Some(b) => IntervalDim::new(0, Some(b)),
        None => IntervalDim::UNKNOWN,
    };
    let cited = cited_checks(y, l)?;
    let cited_ok = cited.iter().all(|c| c.agrees);
    let published_bound = y.reference.bound_at(l);
    Ok(ExtendabilityReport {
        family: y.id.clone(),
        l,
        n_l: n,
        beta,
        alpha_hi: beta.beta_hi,
        conclusion: zl_conclude(beta.beta_hi, n.value, true),
        surface_alpha: surface_alpha(alpha, &normal_vanishing),
        normal_vanishing,
        published_bound,
        flag: published_bound.map(|p| compare(&beta, p, cited_ok)),
        cited,
    })
}

/// Smallest `l` at which `β` is defined: above the index and very ample.
pub fn first_l(y: &FanoFamily) -> i64 {
    (y.index + 1).max(y.j_va)
}

/// Least `l` with certified `β = 0`.
pub fn l_y(y: &FanoFamily) -> Result<i64> {
    let start = first_l(y);
    for l in start..start + L_SEARCH_SPAN {
        if beta_bound(y, l)?.beta_hi == Some(0) {
            return Ok(l);
        }
    }
    Err(FanoError::Internal(format!("family {}: no l below {} with beta = 0", y.id, start + L_SEARCH_SPAN)))
}

/// Reports for `l = first_l ..= l_max`; `l_max` defaults to the published
/// threshold of each family. Ordered by database order, then `l`.
pub fn table2(families: &[&FanoFamily], l_max: Option<i64>) -> Result<Vec<ExtendabilityReport>> {
    let mut rows = Vec::new();
    for y in families {
        let top = l_max.unwrap_or(y.reference.threshold);
        for l in first_l(y)..=top {
            rows.push(report(y, l)?);
        }
    }
    Ok(rows)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Table1Row {
    pub family: String,
    pub l: i64,
    pub extendability: Extendability,
    pub source: String,
}

/// Stored smooth-extendability data; nothing here is recomputed.
pub fn table1(db: &FamilyDb) -> Vec<Table1Row> {
    db.families
        .iter()
        .filter_map(|y| {
            let d = y.reference.extendability.as_ref()?;
            Some(Table1Row { family: y.id.clone(), l: d.l, extendability: d.value, source: y.reference.source.clone() })
        })
        .collect()
}

/// The engine threshold against the published one and the Veronese bound.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct KlmRow {
    pub family: String,
    pub engine_l_y: i64,
    pub published_l_y: i64,
    pub veronese_bound: Option<i64>,
    /// How much lower the ribbon threshold is than the Veronese one.
    pub improvement: Option<i64>,
}

pub fn klm_comparison(db: &FamilyDb) -> Result<Vec<KlmRow>> {
    db.families
        .iter()
        .map(|y| {
            let engine = l_y(y)?;
            let v = y.reference.veronese_bound;
            Ok(KlmRow {
                family: y.id.clone(),
                engine_l_y: engine,
                published_l_y: y.reference.threshold,
                veronese_bound: v,
                improvement: v.map(|v| v - engine),
            })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::family;

    fn hi(y: &str, l: i64) -> Option<u64> {
        beta_bound(family(y).unwrap(), l).unwrap().beta_hi
    }

    #[test]
    fn quartic_double_solid_rows() {
        assert_eq!(hi("1.12", 3), Some(8));
        assert_eq!(hi("1.12", 4), Some(2));
        assert_eq!(hi("1.12", 5), Some(0));
    }

    #[test]
    fn projective_space_rows() {
        assert_eq!(hi("1.17", 5), Some(20));
        assert_eq!(hi("1.17", 7), Some(4));
        assert_eq!(hi("1.17", 8), Some(1));
        assert_eq!(hi("1.17", 9), Some(0));
    }

    #[test]
    fn index_bound_is_rejected() {
        assert!(matches!(
            beta_bound(family("1.13").unwrap(), 2),
            Err(FanoError::TwistNotAboveIndex { .. })
        ));
    }

    #[test]
    fn zl_rules() {
        assert_eq!(zl_conclude(Some(0), 3, true), Conclusion::NotExtendable { cone_not_smoothable: true });
        assert_eq!(zl_conclude(Some(8), 27, true), Conclusion::NotKExtendable { k: 9 });
        assert_eq!(zl_conclude(Some(1), 1000, true), Conclusion::NotKExtendable { k: 2 });
        assert_eq!(zl_conclude(Some(30), 27, true), Conclusion::Inconclusive);
        assert_eq!(zl_conclude(None, 27, true), Conclusion::Inconclusive);
    }

    #[test]
    fn flags() {
        let b = BetaBreakdown::from_terms([IntervalDim::ZERO, IntervalDim::at_most(1), IntervalDim::ZERO, IntervalDim::ZERO, IntervalDim::exact(5)]);
        assert_eq!((b.beta_hi, b.beta_min), (Some(6), 5));
        assert_eq!(compare(&b, 6, true), Flag::Match);
        assert_eq!(compare(&b, 7, true), Flag::TighterThanPaper);
        assert_eq!(compare(&b, 4, true), Flag::PaperInternalDiscrepancy);
        assert_eq!(compare(&b, 6, false), Flag::PaperInternalDiscrepancy);
        let c = BetaBreakdown::from_terms([IntervalDim::UNKNOWN; 5]);
        assert_eq!(compare(&c, 6, true), Flag::LooserThanPaper);
    }

    #[test]
    fn surface_alpha_from_zero() {
        let p = normal_vanishing_check(family("1.12").unwrap(), 5, 1).unwrap();
        assert!(p.pass, "{:?}", p.failing().collect::<Vec<_>>());
        let all: Vec<_> = (1..=3).map(|k| normal_vanishing_check(family("1.12").unwrap(), 5, k).unwrap()).collect();
        let s = surface_alpha(IntervalDim::ZERO, &all);
        assert_eq!(s.value, IntervalDim::exact(1));
        let s = surface_alpha(IntervalDim::at_most(2), &all);
        assert!(!s.certified && s.value == IntervalDim::new(1, None));
    }
}
