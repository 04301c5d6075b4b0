//! Chase systems for twisted tangent bundles and line bundles on the 17 families.

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use crate::bbw::{GrSpec, IrredBundle};
use crate::bundle::BundleExpr;
use crate::dims::{DimTable, IntervalDim};
use crate::error::Result;
use crate::families::{weighted_line_bundle, AmbientSpace, AssumptionTarget, AssumptionUse, DefiningData, DoubleCover, FanoFamily};

use super::{add_restriction, ChaseSystem, ChaseTrace, ObjId};

/// An unsolved chase and the object it is meant to determine.
#[derive(Clone, Debug)]
pub struct TangentChase {
    pub system: ChaseSystem,
    pub target: ObjId,
}

impl TangentChase {
    pub fn solve(mut self) -> Result<(DimTable, ChaseTrace)> {
        let trace = self.system.solve()?;
        Ok((self.system.table(self.target).clone(), trace))
    }
}

fn signed(t: i64) -> String {
    t.to_string()
}

/// `∧^k E*` for `k = 0..=rank E`, cached per ambient and bundle.
fn koszul_wedges(e: &BundleExpr) -> Result<Arc<Vec<BundleExpr>>> {
    static CACHE: OnceLock<Mutex<HashMap<String, Arc<Vec<BundleExpr>>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    let key = format!("{}|{}", e.gr(), e);
    if let Some(w) = cache.lock().expect("cache poisoned").get(&key) {
        return Ok(w.clone());
    }
    let w = Arc::new(e.dual().exterior_powers(e.rank() as usize)?);
    cache.lock().expect("cache poisoned").insert(key, w.clone());
    Ok(w)
}

fn homogeneous_data(y: &FanoFamily) -> Result<Option<(GrSpec, BundleExpr)>> {
    match y.ambient {
        AmbientSpace::Grassmannian { .. } | AmbientSpace::Projective { .. } => {
            let gr = y.ambient.homogeneous().expect("homogeneous ambient");
            let e = y.defining_bundle()?.expect("zero-locus description");
            Ok(Some((gr, e)))
        }
        _ => Ok(None),
    }
}

/// Chase for `T_Y(-m)` through `0 -> T_Y -> T_amb|_Y -> N_Y -> 0`.
pub fn tangent_system(y: &FanoFamily, m: i64) -> Result<TangentChase> {
    let mut sys = ChaseSystem::new();
    let tw = signed(-m);
    if let Some((gr, e)) = homogeneous_data(y)? {
        let t_amb = BundleExpr::atom(IrredBundle::tangent(gr).twisted(-m));
        if e.is_zero() {
            let target = sys.add_object(format!("T_Y({tw})"), t_amb.cohom_table());
            return Ok(TangentChase { system: sys, target });
        }
        let wedges = koszul_wedges(&e)?;
        let restricted = add_restriction(&mut sys, &t_amb, &wedges, &format!("T_amb({tw})"), "Y")?;
        let normal = add_restriction(&mut sys, &e.twist(-m), &wedges, &format!("E({tw})"), "Y")?;
        let target = sys.add_unknown(format!("T_Y({tw})"), 3);
        sys.add_sequence("tangent sequence of Y", target, restricted, normal);
        add_assumptions(&mut sys, y, m, None, Some(restricted));
        return Ok(TangentChase { system: sys, target });
    }
    match (&y.ambient, &y.defining) {
        (AmbientSpace::DoubleCoverP3 { .. }, _) => {
            let cover = DoubleCover::of(y)?;
            let p3 = GrSpec::projective(3)?;
            let (t0, t1) = cover.pushforward_twists(-m);
            let pulled = BundleExpr::atom(IrredBundle::tangent(p3).twisted(t0))
                .sum(&BundleExpr::atom(IrredBundle::tangent(p3).twisted(t1)))?;
            let pulled_id = sys.add_object(format!("π*T_P3({tw})"), pulled.cohom_table());
            let k = cover.ramification_twist(-m);
            let wedges = BundleExpr::line_bundle(p3, cover.branch_degree).dual().exterior_powers(1)?;
            let ram = add_restriction(&mut sys, &BundleExpr::line_bundle(p3, k), &wedges, &format!("O_P3({k})"), "B")?;
            let target = sys.add_unknown(format!("T_Y({tw})"), 3);
            sys.add_sequence("ramification sequence of the double cover", target, pulled_id, ram);
            add_assumptions(&mut sys, y, m, None, None);
            Ok(TangentChase { system: sys, target })
        }
        (AmbientSpace::Weighted { weights }, DefiningData::WeightedHypersurface { degree }) => {
            let w: Vec<u32> = weights.clone();
            let d = *degree;
            let o_minus = weighted_restriction(&mut sys, &w, d, &[-m], &format!("O_Y({tw})"));
            let shifts: Vec<i64> = w.iter().map(|&x| x as i64 - m).collect();
            let middle = weighted_restriction(&mut sys, &w, d, &shifts, &format!("Euler middle term({tw})"));
            let t_amb = sys.add_unknown(format!("T_P({tw})|_Y"), 3);
            sys.add_sequence("Euler sequence restricted to Y", o_minus, middle, t_amb);
            let normal = weighted_restriction(&mut sys, &w, d, &[d - m], &format!("O_Y({})", d - m));
            let target = sys.add_unknown(format!("T_Y({tw})"), 3);
            sys.add_sequence("tangent sequence of Y", target, t_amb, normal);
            add_assumptions(&mut sys, y, m, None, Some(t_amb));
            Ok(TangentChase { system: sys, target })
        }
        _ => Err(crate::error::FanoError::NoAmbientSupport { family: y.id.clone(), what: "tangent chase".into() }),
    }
}

/// `⊕_s O_Y(s)` on a weighted hypersurface of degree `d`, through
/// `0 -> ⊕ O_P(s - d) -> ⊕ O_P(s) -> ⊕ O_Y(s) -> 0`.
fn weighted_restriction(sys: &mut ChaseSystem, w: &[u32], d: i64, twists: &[i64], name: &str) -> ObjId {
    let sum = |shift: i64| {
        let mut t = DimTable::zero(w.len() - 1);
        for &s in twists {
            t = t.add(&DimTable::exact(&weighted_line_bundle(w, s + shift)));
        }
        t
    };
    let sub = sys.add_object(format!("{name} ⊗ O_P(-{d})"), sum(-d));
    let amb = sys.add_object(format!("{name} on P"), sum(0));
    let restricted = sys.add_unknown(name.to_string(), 3);
    sys.add_sequence(format!("restriction of {name}"), sub, amb, restricted);
    restricted
}

fn add_assumptions(sys: &mut ChaseSystem, y: &FanoFamily, m: i64, ambient: Option<ObjId>, restricted: Option<ObjId>) {
    for a in y.assumptions.iter().filter(|a| a.usage == AssumptionUse::Injected && m >= a.min_twist) {
        let target = match a.target {
            AssumptionTarget::AmbientTangentRestricted => restricted,
            AssumptionTarget::AmbientTangent => ambient,
        };
        if let Some(t) = target {
            sys.add_assumption(a.id.clone(), t, a.degree, IntervalDim::ZERO);
        }
    }
}

/// `h^i(T_Y(-m))`, `i = 0..3`.
pub fn tangent_twist_cohomology(y: &FanoFamily, m: i64) -> Result<(DimTable, ChaseTrace)> {
    tangent_system(y, m)?.solve()
}

/// Chase for `O_Y(t)`.
pub fn line_bundle_system(y: &FanoFamily, t: i64) -> Result<TangentChase> {
    let mut sys = ChaseSystem::new();
    if let Some((gr, e)) = homogeneous_data(y)? {
        let wedges = koszul_wedges(&e)?;
        let target = add_restriction(&mut sys, &BundleExpr::line_bundle(gr, t), &wedges, &format!("O({t})"), "Y")?;
        return Ok(TangentChase { system: sys, target });
    }
    match (&y.ambient, &y.defining) {
        (AmbientSpace::DoubleCoverP3 { .. }, _) => {
            let cover = DoubleCover::of(y)?;
            let p3 = GrSpec::projective(3)?;
            let (a, b) = cover.pushforward_twists(t);
            let table = BundleExpr::line_bundle(p3, a).sum(&BundleExpr::line_bundle(p3, b))?.cohom_table();
            let target = sys.add_object(format!("O_Y({t}) = O_P3({a}) ⊕ O_P3({b})"), table);
            Ok(TangentChase { system: sys, target })
        }
        (AmbientSpace::Weighted { weights }, DefiningData::WeightedHypersurface { degree }) => {
            let target = weighted_restriction(&mut sys, weights, *degree, &[t], &format!("O_Y({t})"));
            Ok(TangentChase { system: sys, target })
        }
        _ => Err(crate::error::FanoError::NoAmbientSupport { family: y.id.clone(), what: "line bundle chase".into() }),
    }
}

/// `h^i(O_Y(t))`, `i = 0..3`.
pub fn line_bundle_cohomology(y: &FanoFamily, t: i64) -> Result<(DimTable, ChaseTrace)> {
    line_bundle_system(y, t)?.solve()
}
