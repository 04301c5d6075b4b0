//! Restriction of homogeneous bundles to a zero locus `Y = Z(E)` through the
//! Koszul resolution of the ideal sheaf.

use crate::bundle::BundleExpr;
use crate::dims::DimTable;
use crate::error::Result;

use super::{ChaseSystem, ChaseTrace, ObjId};

/// Add `F|_Z` to `sys`, with `wedges[k] = ∧^k E*` for `k = 0..=rank E` and
/// `locus` naming the zero locus `Z`.
///
/// Objects: `F`, `F ⊗ ∧^k E*` (exact), the syzygy sheaves `F ⊗ Z_k` and
/// `F ⊗ I` (unknown) and `F|_Z` (unknown, dimension `dim - rank E`).
pub fn add_restriction(
    sys: &mut ChaseSystem,
    f: &BundleExpr,
    wedges: &[BundleExpr],
    label: &str,
    locus: &str,
) -> Result<ObjId> {
    let amb = f.gr().dim();
    let r = wedges.len() - 1;
    let f_id = sys.add_object(label.to_string(), f.cohom_table());
    let restricted = sys.add_unknown(format!("{label}|_{locus}"), amb - r);
    if r == 0 {
        let zero = sys.add_object(format!("{label} ⊗ I_{locus}"), DimTable::zero(amb));
        sys.add_sequence(format!("restriction of {label}"), zero, f_id, restricted);
        return Ok(restricted);
    }
    let terms = wedges[1..]
        .iter()
        .enumerate()
        .map(|(i, w)| Ok(sys.add_object(format!("{label} ⊗ ∧{}E*", i + 1), f.tensor(w)?.cohom_table())))
        .collect::<Result<Vec<_>>>()?;
    let ideal = if r == 1 { terms[0] } else { sys.add_unknown(format!("{label} ⊗ I_{locus}"), amb) };
    sys.add_sequence(format!("restriction of {label}"), ideal, f_id, restricted);
    // 0 -> Z_{k+1} -> F⊗∧^k E* -> Z_k -> 0 with Z_1 = I and Z_r = ∧^r E*
    let mut prev = ideal;
    for k in 1..r {
        let next = if k + 1 == r { terms[r - 1] } else { sys.add_unknown(format!("{label} ⊗ Z{}", k + 1), amb) };
        sys.add_sequence(format!("Koszul step {k} for {label}"), next, terms[k - 1], prev);
        prev = next;
    }
    Ok(restricted)
}

/// Cohomology of `F|_Y` for `Y` the zero locus of a regular section of `E`.
pub fn restricted_cohom(f: &BundleExpr, e: &BundleExpr) -> Result<(DimTable, ChaseTrace)> {
    let wedges = e.dual().exterior_powers(e.rank() as usize)?;
    let mut sys = ChaseSystem::new();
    let id = add_restriction(&mut sys, f, &wedges, &f.to_string(), "Y")?;
    let trace = sys.solve()?;
    Ok((sys.table(id).clone(), trace))
}
