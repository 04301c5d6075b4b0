//! The database of Picard-rank-one Fano threefolds and section-count arithmetic.

use std::fmt;
use std::path::Path;
use std::sync::OnceLock;

use num_rational::Ratio;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::bbw::GrSpec;
use crate::bundle::BundleExpr;
use crate::chase::line_bundle_cohomology;
use crate::dims::IntervalDim;
use crate::error::{FanoError, Result};

pub const DB_ENV_VAR: &str = "FANO_DB_PATH";

const EMBEDDED_DB: &str = include_str!("../data/fano_families.toml");

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum AmbientSpace {
    Grassmannian { k: usize, n: usize },
    Projective { n: usize },
    Weighted { weights: Vec<u32> },
    DoubleCoverP3 { branch_degree: u32 },
}

impl AmbientSpace {
    pub fn dim(&self) -> usize {
        match self {
            AmbientSpace::Grassmannian { k, n } => k * (n - k),
            AmbientSpace::Projective { n } => *n,
            AmbientSpace::Weighted { weights } => weights.len() - 1,
            AmbientSpace::DoubleCoverP3 { .. } => 3,
        }
    }

    /// The homogeneous space carrying the zero-locus description, if any.
    pub fn homogeneous(&self) -> Option<GrSpec> {
        match *self {
            AmbientSpace::Grassmannian { k, n } => GrSpec::new(k, n).ok(),
            AmbientSpace::Projective { n } => GrSpec::projective(n).ok(),
            AmbientSpace::DoubleCoverP3 { .. } => GrSpec::projective(3).ok(),
            AmbientSpace::Weighted { .. } => None,
        }
    }
}

impl fmt::Display for AmbientSpace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AmbientSpace::Grassmannian { k, n } => write!(f, "Gr({k},{n})"),
            AmbientSpace::Projective { n } => write!(f, "P{n}"),
            AmbientSpace::Weighted { weights } => {
                let w: Vec<String> = weights.iter().map(u32::to_string).collect();
                write!(f, "P({})", w.join(","))
            }
            AmbientSpace::DoubleCoverP3 { branch_degree } => {
                write!(f, "double cover of P3 branched in degree {branch_degree}")
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum DefiningData {
    ZeroLocus { bundle: String },
    CompleteIntersection { degrees: Vec<i64> },
    WholeSpace,
    WeightedHypersurface { degree: i64 },
}

/// Which object of a chase an assumed bound applies to.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum AssumptionTarget {
    /// `T_amb(-m)|_Y`
    AmbientTangentRestricted,
    /// `T_amb(-m)` on the ambient itself
    AmbientTangent,
}

/// How the engine treats an externally cited statement.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum AssumptionUse {
    /// Injected into chases as a bound and marked in traces.
    Injected,
    /// Recorded only; the engine certifies the statement itself.
    VerifiedDirectly,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AssumptionLemma {
    pub id: String,
    pub statement: String,
    pub source: String,
    pub target: AssumptionTarget,
    pub degree: usize,
    /// Twists `m` (in `T(-m)`) from which the statement applies.
    pub min_twist: i64,
    #[serde(rename = "use")]
    pub usage: AssumptionUse,
}

/// A numeric value quoted in a published argument, kept for comparison.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CitedValue {
    /// Currently only `h0_line_bundle`.
    pub quantity: String,
    pub twist: i64,
    pub value: u64,
    /// The `l` whose bound uses this value.
    pub used_at_l: i64,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Extendability {
    Finite(u32),
    Infinite,
}

impl fmt::Display for Extendability {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Extendability::Finite(k) => write!(f, "smoothly {k}-extendable"),
            Extendability::Infinite => write!(f, "infinitely smoothly extendable"),
        }
    }
}

#[derive(Clone, Debug, Deserialize)]
struct ExtendabilityRaw {
    l: i64,
    k: Option<u32>,
    #[serde(default)]
    infinite: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "ExtendabilityRaw")]
pub struct ExtendabilityDatum {
    pub l: i64,
    pub value: Extendability,
}

impl TryFrom<ExtendabilityRaw> for ExtendabilityDatum {
    type Error = String;
    fn try_from(r: ExtendabilityRaw) -> std::result::Result<Self, String> {
        let value = match (r.k, r.infinite) {
            (Some(k), false) => Extendability::Finite(k),
            (None, true) => Extendability::Infinite,
            _ => return Err("extendability needs exactly one of `k` or `infinite = true`".into()),
        };
        Ok(ExtendabilityDatum { l: r.l, value })
    }
}

/// Published comparison data for one family.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReferenceData {
    /// Least `l` from which the published alpha bound is 0.
    pub threshold: i64,
    /// Published `(l, alpha bound)` rows below the threshold.
    #[serde(default)]
    pub bounds: Vec<(i64, u64)>,
    pub extendability: Option<ExtendabilityDatum>,
    /// Threshold from the Veronese-embedding comparison bound.
    pub veronese_bound: Option<i64>,
    pub source: String,
}

impl ReferenceData {
    /// Published alpha bound at `l`, if the table covers it.
    pub fn bound_at(&self, l: i64) -> Option<u64> {
        if let Some(&(_, b)) = self.bounds.iter().find(|(x, _)| *x == l) {
            return Some(b);
        }
        (l >= self.threshold).then_some(0)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FanoFamily {
    pub id: String,
    pub description: String,
    pub index: i64,
    pub j_va: i64,
    pub degree_h3: i64,
    pub degree_source: String,
    pub ambient: AmbientSpace,
    pub defining: DefiningData,
    #[serde(default)]
    pub assumptions: Vec<AssumptionLemma>,
    #[serde(default)]
    pub cited: Vec<CitedValue>,
    pub reference: ReferenceData,
}

impl FanoFamily {
    /// `H·c2 = 24 / index`.
    pub fn h_c2(&self) -> i64 {
        24 / self.index
    }

    /// The defining bundle `E` on the homogeneous ambient, when `Y = Z(E)`.
    pub fn defining_bundle(&self) -> Result<Option<BundleExpr>> {
        let gr = match self.ambient {
            AmbientSpace::Grassmannian { .. } | AmbientSpace::Projective { .. } => {
                self.ambient.homogeneous().expect("homogeneous ambient")
            }
            _ => return Ok(None),
        };
        match &self.defining {
            DefiningData::ZeroLocus { bundle } => Ok(Some(BundleExpr::parse(gr, bundle)?)),
            DefiningData::CompleteIntersection { degrees } => {
                let mut e = BundleExpr::zero(gr);
                for &d in degrees {
                    e = e.sum(&BundleExpr::line_bundle(gr, d))?;
                }
                Ok(Some(e))
            }
            DefiningData::WholeSpace => Ok(Some(BundleExpr::zero(gr))),
            DefiningData::WeightedHypersurface { .. } => Err(self.db_err("weighted hypersurface in a homogeneous ambient")),
        }
    }

    fn db_err(&self, what: &str) -> FanoError {
        FanoError::Database(format!("family {}: {what}", self.id))
    }

    /// Structural checks: threshold ordering, `24/i` integral, codimension and
    /// adjunction.
    pub fn validate(&self) -> Result<()> {
        if self.index < 1 || self.j_va < self.index {
            return Err(self.db_err("need 1 <= index <= j_va"));
        }
        if self.degree_h3 < 1 {
            return Err(self.db_err("degree must be positive"));
        }
        if 24 % self.index != 0 {
            return Err(self.db_err("24/index must be integral"));
        }
        let canonical_of_ambient: i64 = match (&self.ambient, &self.defining) {
            (AmbientSpace::Grassmannian { k, n }, _) if *k == 0 || k >= n => {
                return Err(self.db_err("invalid Grassmannian"));
            }
            (AmbientSpace::Grassmannian { .. } | AmbientSpace::Projective { .. }, _) => {
                let gr = self.ambient.homogeneous().ok_or_else(|| self.db_err("bad ambient"))?;
                let e = self.defining_bundle()?.expect("homogeneous");
                if gr.dim() as u64 != 3 + e.rank() {
                    return Err(self.db_err("codimension does not give a threefold"));
                }
                gr.canonical_twist() + e.det()?
            }
            (AmbientSpace::Weighted { weights }, DefiningData::WeightedHypersurface { degree }) => {
                if weights.is_empty() || weights.contains(&0) || weights.len() != 5 {
                    return Err(self.db_err("weights must be five positive integers"));
                }
                -(weights.iter().map(|&w| w as i64).sum::<i64>()) + degree
            }
            (AmbientSpace::DoubleCoverP3 { branch_degree }, DefiningData::WholeSpace) => {
                if branch_degree % 2 != 0 || *branch_degree == 0 {
                    return Err(self.db_err("branch degree must be even and positive"));
                }
                -4 + (*branch_degree as i64) / 2
            }
            _ => return Err(self.db_err("ambient and defining data do not match")),
        };
        if canonical_of_ambient != -self.index {
            return Err(self.db_err(&format!(
                "adjunction gives K = O({canonical_of_ambient}) but index is {}",
                self.index
            )));
        }
        Ok(())
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct FamilyDb {
    pub schema_version: u32,
    #[serde(rename = "family")]
    pub families: Vec<FanoFamily>,
}

impl FamilyDb {
    pub fn from_toml_str(s: &str) -> Result<Self> {
        let db: FamilyDb = toml::from_str(s).map_err(|e| FanoError::Database(e.to_string()))?;
        for f in &db.families {
            f.validate()?;
        }
        Ok(db)
    }

    pub fn from_path(path: &Path) -> Result<Self> {
        Self::from_toml_str(&std::fs::read_to_string(path)?)
    }

    /// The shipped database.
    pub fn embedded() -> &'static FamilyDb {
        static DB: OnceLock<FamilyDb> = OnceLock::new();
        DB.get_or_init(|| FamilyDb::from_toml_str(EMBEDDED_DB).expect("embedded database is valid"))
    }

    /// `FANO_DB_PATH` when set, the shipped database otherwise.
    pub fn load() -> Result<FamilyDb> {
        match std::env::var_os(DB_ENV_VAR) {
            Some(p) => Self::from_path(Path::new(&p)),
            None => Ok(Self::embedded().clone()),
        }
    }

    pub fn get(&self, id: &str) -> Result<&FanoFamily> {
        self.families.iter().find(|f| f.id == id).ok_or_else(|| FanoError::UnknownFamily(id.to_string()))
    }

    pub fn ids(&self) -> impl Iterator<Item = &str> {
        self.families.iter().map(|f| f.id.as_str())
    }
}

/// Shorthand for a family of the shipped database.
pub fn family(id: &str) -> Result<&'static FanoFamily> {
    FamilyDb::embedded().get(id)
}

/// `χ(O_Y(mH))` by Riemann-Roch, as an exact rational.
pub fn chi_rr_rational(y: &FanoFamily, m: i64) -> Ratio<i64> {
    let d = Ratio::from_integer(y.degree_h3);
    let i = Ratio::from_integer(y.index);
    let m = Ratio::from_integer(m);
    m * m * m * d / 6 + i * m * m * d / 4 + m * (i * i * d + Ratio::new(24, y.index)) / 12 + Ratio::one()
}

pub fn chi_rr(y: &FanoFamily, m: i64) -> Result<i64> {
    let v = chi_rr_rational(y, m);
    if !v.is_integer() {
        return Err(FanoError::NonIntegralRiemannRoch { family: y.id.clone(), m, value: v.to_string() });
    }
    Ok(v.to_integer())
}

/// `h^0(O_Y(mH))`; zero for negative `m`.
pub fn h0_rr(y: &FanoFamily, m: i64) -> Result<u64> {
    if m < 0 {
        return Ok(0);
    }
    let v = chi_rr(y, m)?;
    u64::try_from(v).map_err(|_| FanoError::NonIntegralRiemannRoch { family: y.id.clone(), m, value: v.to_string() })
}

/// `h^0(O_Y(mH))` from the Koszul resolution on the homogeneous ambient.
/// Returns the certified interval; exact when the chase pins it.
pub fn h0_koszul(y: &FanoFamily, m: i64) -> Result<IntervalDim> {
    match y.ambient {
        AmbientSpace::Grassmannian { .. } | AmbientSpace::Projective { .. } => {}
        _ => return Err(FanoError::NoAmbientSupport { family: y.id.clone(), what: "Koszul section count".into() }),
    }
    if m < 0 {
        return Ok(IntervalDim::ZERO);
    }
    let (table, _) = line_bundle_cohomology(y, m)?;
    Ok(table.get(0))
}

/// Number of monomials of weighted degree `d`.
pub fn h0_weighted(weights: &[u32], d: i64) -> u64 {
    if d < 0 {
        return 0;
    }
    let d = d as usize;
    let mut ways = vec![0u64; d + 1];
    ways[0] = 1;
    for &w in weights {
        let w = w as usize;
        for x in w..=d {
            ways[x] += ways[x - w];
        }
    }
    ways[d]
}

/// Cohomology of `O_P(d)` on a weighted projective space of dimension
/// `weights.len() - 1`: sections in degree 0, Serre dual sections on top.
pub fn weighted_line_bundle(weights: &[u32], d: i64) -> Vec<u64> {
    let top = weights.len() - 1;
    let canonical: i64 = -(weights.iter().map(|&w| w as i64).sum::<i64>());
    let mut v = vec![0; top + 1];
    v[0] = h0_weighted(weights, d);
    v[top] += h0_weighted(weights, canonical - d);
    v
}

/// The double cover `π: Y -> P3` branched along a surface of even degree.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct DoubleCover {
    pub branch_degree: i64,
}

impl DoubleCover {
    pub fn of(y: &FanoFamily) -> Result<Self> {
        match y.ambient {
            AmbientSpace::DoubleCoverP3 { branch_degree } => Ok(DoubleCover { branch_degree: branch_degree as i64 }),
            _ => Err(FanoError::NoAmbientSupport { family: y.id.clone(), what: "double cover".into() }),
        }
    }

    /// `π_* O_Y(m) = O(m) ⊕ O(m - d/2)`: the two base twists.
    pub fn pushforward_twists(&self, m: i64) -> (i64, i64) {
        (m, m - self.branch_degree / 2)
    }

    /// Twist `k` with `N_π ⊗ π^*O(m)` pushing forward to `O_B(k)`; the normal
    /// bundle of the ramification divisor is `O_B(branch_degree)`.
    pub fn ramification_twist(&self, m: i64) -> i64 {
        self.branch_degree + m
    }
}

/// `N_l` with `N_l + 1 = h^0(lH) + h^0((l - s)H)`; `s` is the index, and the
/// very-ampleness threshold reading is kept alongside.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ProjectiveDim {
    pub value: u64,
    /// The same count with the very-ampleness threshold in place of the index.
    pub threshold_reading: u64,
}

pub fn n_l(y: &FanoFamily, l: i64) -> Result<ProjectiveDim> {
    if l < y.j_va {
        return Err(FanoError::BelowVeryAmple { family: y.id.clone(), l, j: y.j_va });
    }
    let value = h0_rr(y, l)? + h0_rr(y, l - y.index)? - 1;
    let threshold_reading = h0_rr(y, l)? + h0_rr(y, l - y.j_va)? - 1;
    Ok(ProjectiveDim { value, threshold_reading })
}

/// Polynomial with rational coefficients, lowest degree first.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RationalPoly(pub Vec<Ratio<i64>>);

impl RationalPoly {
    pub fn eval(&self, z: i64) -> Ratio<i64> {
        let z = Ratio::from_integer(z);
        self.0.iter().rev().fold(Ratio::zero(), |acc, c| acc * z + c)
    }

    pub fn degree(&self) -> usize {
        self.0.iter().rposition(|c| !c.is_zero()).unwrap_or(0)
    }
}

impl fmt::Display for RationalPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut terms = Vec::new();
        for (k, c) in self.0.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let coef = if c.is_integer() { c.to_integer().to_string() } else { format!("({c})") };
            terms.push(match k {
                0 => coef,
                1 => format!("{coef}*z"),
                _ => format!("{coef}*z^{k}"),
            });
        }
        if terms.is_empty() {
            return write!(f, "0");
        }
        write!(f, "{}", terms.join(" + ").replace("+ -", "- ").replace("+ (-", "- ("))
    }
}

/// Hilbert polynomial `p(z) = χ(lzH) + χ((lz - i)H)` of the embedding by `lH`
/// of the double structure.
pub fn hilbert_polynomial(y: &FanoFamily, l: i64) -> Result<RationalPoly> {
    if l < y.j_va {
        return Err(FanoError::BelowVeryAmple { family: y.id.clone(), l, j: y.j_va });
    }
    // χ(mH) = a3 m^3 + a2 m^2 + a1 m + 1
    let d = Ratio::from_integer(y.degree_h3);
    let i = Ratio::from_integer(y.index);
    let a = [
        Ratio::one(),
        (i * i * d + Ratio::new(24, y.index)) / 12,
        i * d / 4,
        d / 6,
    ];
    let mut out = vec![Ratio::zero(); 4];
    for shift in [Ratio::zero(), -i] {
        // m = l z + shift, expand (l z + s)^p binomially
        let lz = Ratio::from_integer(l);
        for (p, ap) in a.iter().enumerate() {
            for (q, coef) in out.iter_mut().enumerate().take(p + 1) {
                let binom = Ratio::from_integer(binomial(p as i64, q as i64));
                *coef += *ap * binom * pow(lz, q) * pow(shift, p - q);
            }
        }
    }
    Ok(RationalPoly(out))
}

fn binomial(n: i64, k: i64) -> i64 {
    (0..k).fold(1, |acc, j| acc * (n - j) / (j + 1))
}

fn pow(x: Ratio<i64>, e: usize) -> Ratio<i64> {
    (0..e).fold(Ratio::one(), |acc, _| acc * x)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn embedded_db_loads_all_families() {
        let db = FamilyDb::embedded();
        assert_eq!(db.families.len(), 17);
        for id in ["1.1", "1.9", "1.17"] {
            assert!(db.get(id).is_ok());
        }
        assert!(matches!(db.get("2.1"), Err(FanoError::UnknownFamily(_))));
    }

    #[test]
    fn rr_examples() {
        assert_eq!(h0_rr(family("1.17").unwrap(), 3).unwrap(), 20);
        assert_eq!(h0_rr(family("1.12").unwrap(), 1).unwrap(), 4);
        assert_eq!(h0_rr(family("1.13").unwrap(), 1).unwrap(), 5);
        assert_eq!(h0_rr(family("1.5").unwrap(), 0).unwrap(), 1);
        assert_eq!(h0_rr(family("1.5").unwrap(), -2).unwrap(), 0);
    }

    #[test]
    fn weighted_examples() {
        let w = [1, 1, 1, 2, 3];
        assert_eq!(h0_weighted(&w, 1), 3);
        assert_eq!(h0_weighted(&w, 0), 1);
        assert_eq!(h0_weighted(&w, 3), 14);
        assert_eq!(h0_weighted(&w, -1), 0);
    }

    #[test]
    fn n_l_examples() {
        assert_eq!(n_l(family("1.12").unwrap(), 3).unwrap().value, 27);
        assert_eq!(n_l(family("1.17").unwrap(), 9).unwrap().value, 275);
        assert_eq!(n_l(family("1.5").unwrap(), 1).unwrap().value, 8);
        assert!(matches!(n_l(family("1.1").unwrap(), 2), Err(FanoError::BelowVeryAmple { .. })));
    }

    #[test]
    fn double_cover_twists() {
        let c = DoubleCover::of(family("1.12").unwrap()).unwrap();
        assert_eq!(c.pushforward_twists(-3), (-3, -5));
        assert_eq!(c.ramification_twist(-3), 1);
    }

    #[test]
    fn hilbert_polynomial_matches_pointwise() {
        for id in ["1.1", "1.11", "1.12", "1.17"] {
            let y = family(id).unwrap();
            let p = hilbert_polynomial(y, y.j_va).unwrap();
            for z in 0..4 {
                let m = y.j_va * z;
                let expect = chi_rr(y, m).unwrap() + chi_rr(y, m - y.index).unwrap();
                assert_eq!(p.eval(z), Ratio::from_integer(expect), "{id} z={z}");
            }
            assert_eq!(p.degree(), 3);
        }
    }
}
