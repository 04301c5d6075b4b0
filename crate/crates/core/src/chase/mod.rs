//! Interval bookkeeping on long exact cohomology sequences.
//!
//! A [`ChaseSystem`] holds named cohomology tables and short exact sequences
//! `0 -> A -> B -> C -> 0` between them. Solving applies narrowing rules to a
//! fixed point; every narrowing is recorded in a [`ChaseTrace`].
//!
//! For a sequence write its long exact sequence as `V_0, V_1, ...` with
//! `V_{3i} = H^i(A)`, `V_{3i+1} = H^i(B)`, `V_{3i+2} = H^i(C)`. The rules:
//!
//! | label | effect |
//! |-------|--------|
//! | R1 | `h(B_i) <= h(A_i) + h(C_i)` |
//! | R2 | `A_i = C_i = 0` forces `B_i = 0` |
//! | R3 | `C_{i-1} = C_i = 0` makes `A_i` and `B_i` equal |
//! | R4 | `A_i = A_{i+1} = 0` makes `B_i` and `C_i` equal |
//! | R5 | `h(C_i) <= h(B_i) + h(A_{i+1})` |
//! | R6 | `h(A_i) <= h(C_{i-1}) + h(B_i)` |
//! | R7 | `h(V_p) >= h(V_{p-1}) - h(V_{p-2})`, and the mirror image |
//! | R8 | alternating sum of the sequence is zero |
//!
//! Every rule only intersects an entry with a new interval, so the solved
//! state does not depend on the order rules are tried in.

mod restrict;
mod tangent;

use std::fmt;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::dims::{DimTable, IntervalDim};
use crate::error::{FanoError, Result};

pub use restrict::{add_restriction, restricted_cohom};
pub use tangent::{
    line_bundle_cohomology, line_bundle_system, tangent_system, tangent_twist_cohomology, TangentChase,
};

pub const MAX_SWEEPS: usize = 64;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct ObjId(usize);

#[derive(Clone, Debug, Serialize, Deserialize)]
struct Object {
    name: String,
    table: DimTable,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ShortExact {
    pub name: String,
    pub sub: ObjId,
    pub middle: ObjId,
    pub quotient: ObjId,
}

/// An externally justified vanishing or bound, injected into a chase.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct AssumedBound {
    pub lemma: String,
    pub target: ObjId,
    pub degree: usize,
    pub value: IntervalDim,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum RuleInstance {
    ZeroFlank { seq: usize, degree: usize },
    SubEqualsMiddle { seq: usize, degree: usize, toward_middle: bool },
    MiddleEqualsQuotient { seq: usize, degree: usize, toward_middle: bool },
    Upper { seq: usize, pos: usize },
    LowerFromLeft { seq: usize, pos: usize },
    LowerFromRight { seq: usize, pos: usize },
    Euler { seq: usize, pos: usize },
    Assumption { index: usize },
}

/// Order in which rule instances are tried within a sweep.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RuleOrder {
    Canonical,
    Shuffled(u64),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TraceStep {
    pub label: String,
    pub object: String,
    pub degree: usize,
    pub before: IntervalDim,
    pub after: IntervalDim,
    pub via: String,
    pub instance: RuleInstance,
}

impl fmt::Display for TraceStep {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "[{}] h^{}({}): {} -> {} via {}",
            self.label, self.degree, self.object, self.before, self.after, self.via
        )
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct ChaseTrace {
    pub steps: Vec<TraceStep>,
}

impl ChaseTrace {
    pub fn lines(&self) -> Vec<String> {
        self.steps.iter().map(ToString::to_string).collect()
    }

    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    /// Steps that relied on an assumed bound.
    pub fn assumption_uses(&self) -> impl Iterator<Item = &TraceStep> {
        self.steps.iter().filter(|s| matches!(s.instance, RuleInstance::Assumption { .. }))
    }
}

impl fmt::Display for ChaseTrace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for s in &self.steps {
            writeln!(f, "{s}")?;
        }
        Ok(())
    }
}

#[derive(Clone, Debug, Default, Serialize, Deserialize)]
pub struct ChaseSystem {
    objects: Vec<Object>,
    sequences: Vec<ShortExact>,
    assumptions: Vec<AssumedBound>,
}

enum Side {
    Sub,
    Middle,
    Quotient,
}

impl ChaseSystem {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add_object(&mut self, name: impl Into<String>, table: DimTable) -> ObjId {
        self.objects.push(Object { name: name.into(), table });
        ObjId(self.objects.len() - 1)
    }

    pub fn add_unknown(&mut self, name: impl Into<String>, dim: usize) -> ObjId {
        self.add_object(name, DimTable::unknown(dim))
    }

    pub fn add_sequence(&mut self, name: impl Into<String>, sub: ObjId, middle: ObjId, quotient: ObjId) {
        self.sequences.push(ShortExact { name: name.into(), sub, middle, quotient });
    }

    pub fn add_assumption(&mut self, lemma: impl Into<String>, target: ObjId, degree: usize, value: IntervalDim) {
        self.assumptions.push(AssumedBound { lemma: lemma.into(), target, degree, value });
    }

    pub fn table(&self, id: ObjId) -> &DimTable {
        &self.objects[id.0].table
    }

    pub fn name(&self, id: ObjId) -> &str {
        &self.objects[id.0].name
    }

    pub fn find(&self, name: &str) -> Option<ObjId> {
        self.objects.iter().position(|o| o.name == name).map(ObjId)
    }

    pub fn sequences(&self) -> &[ShortExact] {
        &self.sequences
    }

    pub fn objects(&self) -> impl Iterator<Item = (&str, &DimTable)> {
        self.objects.iter().map(|o| (o.name.as_str(), &o.table))
    }

    pub fn object_count(&self) -> usize {
        self.objects.len()
    }

    fn seq_len(&self, s: &ShortExact) -> usize {
        let d = [s.sub, s.middle, s.quotient].iter().map(|o| self.table(*o).dim()).max().unwrap_or(0);
        3 * (d + 1)
    }

    fn at(&self, s: &ShortExact, p: isize) -> IntervalDim {
        if p < 0 || p as usize >= self.seq_len(s) {
            return IntervalDim::ZERO;
        }
        let (obj, q) = self.slot(s, p as usize);
        self.table(obj).get(q)
    }

    fn slot(&self, s: &ShortExact, p: usize) -> (ObjId, usize) {
        let obj = match p % 3 {
            0 => s.sub,
            1 => s.middle,
            _ => s.quotient,
        };
        (obj, p / 3)
    }

    fn side_get(&self, s: &ShortExact, side: Side, degree: isize) -> IntervalDim {
        let off = match side {
            Side::Sub => 0,
            Side::Middle => 1,
            Side::Quotient => 2,
        };
        if degree < 0 {
            return IntervalDim::ZERO;
        }
        self.at(s, 3 * degree + off)
    }

    /// Every rule instance in canonical order.
    pub fn instances(&self) -> Vec<RuleInstance> {
        let mut out = Vec::new();
        for (si, s) in self.sequences.iter().enumerate() {
            let len = self.seq_len(s);
            for degree in 0..len / 3 {
                out.push(RuleInstance::ZeroFlank { seq: si, degree });
                for toward_middle in [true, false] {
                    out.push(RuleInstance::SubEqualsMiddle { seq: si, degree, toward_middle });
                    out.push(RuleInstance::MiddleEqualsQuotient { seq: si, degree, toward_middle });
                }
            }
            for pos in 0..len {
                out.push(RuleInstance::Upper { seq: si, pos });
                out.push(RuleInstance::LowerFromLeft { seq: si, pos });
                out.push(RuleInstance::LowerFromRight { seq: si, pos });
                out.push(RuleInstance::Euler { seq: si, pos });
            }
        }
        for index in 0..self.assumptions.len() {
            out.push(RuleInstance::Assumption { index });
        }
        out
    }

    /// Target slot, proposed interval, rule label and justification.
    fn evaluate(&self, inst: RuleInstance) -> Option<(ObjId, usize, IntervalDim, &'static str, String)> {
        match inst {
            RuleInstance::Assumption { index } => {
                let a = &self.assumptions[index];
                Some((a.target, a.degree, a.value, "AL", format!("assumption {}", a.lemma)))
            }
            RuleInstance::ZeroFlank { seq, degree } => {
                let s = &self.sequences[seq];
                let d = degree as isize;
                if self.side_get(s, Side::Sub, d).is_zero() && self.side_get(s, Side::Quotient, d).is_zero() {
                    Some((s.middle, degree, IntervalDim::ZERO, "R2", s.name.clone()))
                } else {
                    None
                }
            }
            RuleInstance::SubEqualsMiddle { seq, degree, toward_middle } => {
                let s = &self.sequences[seq];
                let d = degree as isize;
                if !(self.side_get(s, Side::Quotient, d - 1).is_zero()
                    && self.side_get(s, Side::Quotient, d).is_zero())
                {
                    return None;
                }
                if toward_middle {
                    Some((s.middle, degree, self.side_get(s, Side::Sub, d), "R3", s.name.clone()))
                } else {
                    Some((s.sub, degree, self.side_get(s, Side::Middle, d), "R3", s.name.clone()))
                }
            }
            RuleInstance::MiddleEqualsQuotient { seq, degree, toward_middle } => {
                let s = &self.sequences[seq];
                let d = degree as isize;
                if !(self.side_get(s, Side::Sub, d).is_zero() && self.side_get(s, Side::Sub, d + 1).is_zero()) {
                    return None;
                }
                if toward_middle {
                    Some((s.middle, degree, self.side_get(s, Side::Quotient, d), "R4", s.name.clone()))
                } else {
                    Some((s.quotient, degree, self.side_get(s, Side::Middle, d), "R4", s.name.clone()))
                }
            }
            RuleInstance::Upper { seq, pos } => {
                let s = &self.sequences[seq];
                let p = pos as isize;
                let hi = self.at(s, p - 1).hi? + self.at(s, p + 1).hi?;
                let label = match pos % 3 {
                    0 => "R6",
                    1 => "R1",
                    _ => "R5",
                };
                let (obj, q) = self.slot(s, pos);
                Some((obj, q, IntervalDim::at_most(hi), label, s.name.clone()))
            }
            RuleInstance::LowerFromLeft { seq, pos } => {
                let s = &self.sequences[seq];
                let p = pos as isize;
                let lo = self.at(s, p - 1).lo.saturating_sub(self.at(s, p - 2).hi?);
                let (obj, q) = self.slot(s, pos);
                Some((obj, q, IntervalDim::new(lo, None), "R7", s.name.clone()))
            }
            RuleInstance::LowerFromRight { seq, pos } => {
                let s = &self.sequences[seq];
                let p = pos as isize;
                let lo = self.at(s, p + 1).lo.saturating_sub(self.at(s, p + 2).hi?);
                let (obj, q) = self.slot(s, pos);
                Some((obj, q, IntervalDim::new(lo, None), "R7", s.name.clone()))
            }
            RuleInstance::Euler { seq, pos } => {
                let s = &self.sequences[seq];
                let len = self.seq_len(s);
                // signed sum of every other entry, as an integer interval
                let (mut lo, mut hi) = (0i128, 0i128);
                for q in (0..len).filter(|&q| q != pos) {
                    let v = self.at(s, q as isize);
                    let vh = v.hi? as i128;
                    let vl = v.lo as i128;
                    if q % 2 == 0 {
                        lo += vl;
                        hi += vh;
                    } else {
                        lo -= vh;
                        hi -= vl;
                    }
                }
                let (lo, hi) = if pos % 2 == 0 { (-hi, -lo) } else { (lo, hi) };
                let (obj, q) = self.slot(s, pos);
                let value = if hi < 0 {
                    // forces an empty interval, reported as an inconsistency
                    IntervalDim::new(1, Some(0))
                } else {
                    IntervalDim::new(lo.max(0) as u64, Some(hi as u64))
                };
                Some((obj, q, value, "R8", s.name.clone()))
            }
        }
    }

    /// Apply one rule instance; returns the recorded step when it narrows.
    fn apply(&mut self, inst: RuleInstance, trace: &ChaseTrace) -> Result<Option<TraceStep>> {
        let Some((obj, q, proposal, label, via)) = self.evaluate(inst) else {
            return Ok(None);
        };
        let table = &self.objects[obj.0].table;
        if q > table.dim() {
            return Ok(None);
        }
        let before = table.get(q);
        let after = before.intersect(&proposal);
        if after == before {
            return Ok(None);
        }
        let step = TraceStep {
            label: label.to_string(),
            object: self.objects[obj.0].name.clone(),
            degree: q,
            before,
            after,
            via,
            instance: inst,
        };
        if after.is_empty() {
            let mut t = trace.clone();
            let message = format!("{step} leaves an empty interval");
            t.steps.push(step);
            return Err(FanoError::InconsistentChase { message, trace: Box::new(t) });
        }
        debug_assert!(before.contains(&after), "rules only narrow");
        self.objects[obj.0].table.set(q, after);
        Ok(Some(step))
    }

    pub fn solve(&mut self) -> Result<ChaseTrace> {
        self.solve_with(RuleOrder::Canonical)
    }

    pub fn solve_with(&mut self, order: RuleOrder) -> Result<ChaseTrace> {
        let mut instances = self.instances();
        let mut rng = match order {
            RuleOrder::Canonical => None,
            RuleOrder::Shuffled(seed) => Some(ChaCha8Rng::seed_from_u64(seed)),
        };
        let mut trace = ChaseTrace::default();
        for _ in 0..MAX_SWEEPS {
            if let Some(rng) = rng.as_mut() {
                instances.shuffle(rng);
            }
            let mut changed = false;
            for &inst in &instances {
                if let Some(step) = self.apply(inst, &trace)? {
                    trace.steps.push(step);
                    changed = true;
                }
            }
            if !changed {
                return Ok(trace);
            }
        }
        Err(FanoError::NoConvergence { sweeps: MAX_SWEEPS })
    }

    /// Re-apply the recorded rules to this (unsolved) system and check that
    /// each reproduces its recorded output.
    pub fn replay(&self, trace: &ChaseTrace) -> Result<ChaseSystem> {
        let mut sys = self.clone();
        let mut so_far = ChaseTrace::default();
        for step in &trace.steps {
            let got = sys.apply(step.instance, &so_far)?;
            if got.as_ref() != Some(step) {
                return Err(FanoError::Internal(format!("replay diverged at '{step}': got {got:?}")));
            }
            so_far.steps.push(step.clone());
        }
        Ok(sys)
    }

    /// Whether each sequence still admits an alternating sum of zero.
    pub fn euler_consistent(&self) -> bool {
        self.sequences.iter().all(|s| {
            let (mut lo, mut hi) = (0i128, Some(0i128));
            for q in 0..self.seq_len(s) {
                let v = self.at(s, q as isize);
                if q % 2 == 0 {
                    lo += v.lo as i128;
                    hi = hi.zip(v.hi).map(|(h, x)| h + x as i128);
                } else {
                    hi = hi.map(|h| h - v.lo as i128);
                    match v.hi {
                        Some(x) => lo -= x as i128,
                        None => lo = i128::MIN / 2,
                    }
                }
            }
            lo <= 0 && hi.is_none_or(|h| h >= 0)
        })
    }
}

/// Refine the unknown member of `0 -> A -> B -> C -> 0` from the other two.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Position {
    Sub,
    Middle,
    Quotient,
}

pub fn chase_short(a: &DimTable, b: &DimTable, c: &DimTable, unknown: Position) -> Result<(DimTable, ChaseTrace)> {
    let reset = |t: &DimTable, p: Position| if p == unknown { DimTable::unknown(t.dim()) } else { t.clone() };
    let mut sys = ChaseSystem::new();
    let ia = sys.add_object("A", reset(a, Position::Sub));
    let ib = sys.add_object("B", reset(b, Position::Middle));
    let ic = sys.add_object("C", reset(c, Position::Quotient));
    sys.add_sequence("0->A->B->C->0", ia, ib, ic);
    let trace = sys.solve()?;
    let id = match unknown {
        Position::Sub => ia,
        Position::Middle => ib,
        Position::Quotient => ic,
    };
    Ok((sys.table(id).clone(), trace))
}

/// Bound `G` from a resolution `0 -> F_r -> ... -> F_1 -> G -> 0`; `terms[0]` is
/// `F_1`. `g_dim` is the dimension carrying `G`.
pub fn chase_resolution(terms: &[DimTable], g_dim: usize) -> Result<(DimTable, ChaseTrace)> {
    let mut sys = ChaseSystem::new();
    let g = sys.add_unknown("G", g_dim);
    let r = terms.len();
    if r == 0 {
        return Ok((DimTable::zero(g_dim), ChaseTrace::default()));
    }
    let ids: Vec<ObjId> = terms.iter().enumerate().map(|(i, t)| sys.add_object(format!("F_{}", i + 1), t.clone())).collect();
    let top_dim = terms.iter().map(DimTable::dim).max().unwrap_or(0).max(g_dim);
    // kernel[k] is the image of F_{k+1} in F_k, with kernel[0] = G.
    let mut prev = g;
    for k in 0..r - 1 {
        let next = if k + 1 == r - 1 { ids[r - 1] } else { sys.add_unknown(format!("K_{}", k + 2), top_dim) };
        sys.add_sequence(format!("0->{}->F_{}->{}->0", sys.name(next), k + 1, sys.name(prev)), next, ids[k], prev);
        prev = next;
    }
    if r == 1 {
        // F_1 is G itself
        let z = sys.add_object("0", DimTable::zero(0));
        sys.add_sequence("0->0->F_1->G->0", z, ids[0], g);
    }
    let trace = sys.solve()?;
    Ok((sys.table(g).clone(), trace))
}
