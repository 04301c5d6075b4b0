//! Direct sums of irreducible homogeneous bundles.
//!
//! Text form, used by the family database and the command line:
//!
//! ```text
//! expr    := "0" | summand (("⊕" | "+") summand)*
//! summand := group ("^" count)?
//! group   := "(" product ")" | product
//! product := factor (("⊗" | "x") factor)*
//! factor  := "S[" ints "]U*" | "S[" ints "]Q" | "O(" int ")" | "U*" | "U" | "Q" | "Q*"
//! ```
//!
//! `^count` is a direct-sum multiplicity for the whole summand.

use std::collections::BTreeMap;
use std::fmt;

use num_rational::Ratio;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::bbw::{cohomology_irred, CohomResult, GrSpec, IrredBundle};
use crate::dims::{DimTable, IntervalDim};
use crate::error::{FanoError, Result};
use crate::weights::{lr_tensor, weyl_dim, DominantWeight};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BundleExpr {
    gr: GrSpec,
    atoms: BTreeMap<IrredBundle, u64>,
}

impl BundleExpr {
    pub fn zero(gr: GrSpec) -> Self {
        BundleExpr { gr, atoms: BTreeMap::new() }
    }

    pub fn atom(e: IrredBundle) -> Self {
        Self::atom_with_mult(e, 1)
    }

    pub fn atom_with_mult(e: IrredBundle, m: u64) -> Self {
        let mut atoms = BTreeMap::new();
        if m > 0 {
            atoms.insert(e.clone(), m);
        }
        BundleExpr { gr: e.gr(), atoms }
    }

    pub fn line_bundle(gr: GrSpec, t: i64) -> Self {
        Self::atom(IrredBundle::line_bundle(gr, t))
    }

    pub fn gr(&self) -> GrSpec {
        self.gr
    }

    pub fn atoms(&self) -> impl Iterator<Item = (&IrredBundle, u64)> {
        self.atoms.iter().map(|(a, &m)| (a, m))
    }

    pub fn is_zero(&self) -> bool {
        self.atoms.is_empty()
    }

    pub fn rank(&self) -> u64 {
        self.atoms().map(|(a, m)| a.rank() * m).sum()
    }

    fn check_same(&self, other: &BundleExpr) -> Result<()> {
        if self.gr != other.gr {
            return Err(FanoError::AmbientMismatch { left: self.gr.to_string(), right: other.gr.to_string() });
        }
        Ok(())
    }

    pub fn sum(&self, other: &BundleExpr) -> Result<BundleExpr> {
        self.check_same(other)?;
        let mut out = self.clone();
        for (a, m) in other.atoms() {
            *out.atoms.entry(a.clone()).or_insert(0) += m;
        }
        Ok(out)
    }

    pub fn scale(&self, m: u64) -> BundleExpr {
        if m == 0 {
            return Self::zero(self.gr);
        }
        BundleExpr { gr: self.gr, atoms: self.atoms.iter().map(|(a, &x)| (a.clone(), x * m)).collect() }
    }

    pub fn twist(&self, t: i64) -> BundleExpr {
        BundleExpr { gr: self.gr, atoms: self.atoms.iter().map(|(a, &m)| (a.twisted(t), m)).collect() }
    }

    pub fn dual(&self) -> BundleExpr {
        BundleExpr { gr: self.gr, atoms: self.atoms.iter().map(|(a, &m)| (a.dual(), m)).collect() }
    }

    pub fn tensor(&self, other: &BundleExpr) -> Result<BundleExpr> {
        self.check_same(other)?;
        let mut out = Self::zero(self.gr);
        for (x, mx) in self.atoms() {
            for (y, my) in other.atoms() {
                for (z, mz) in tensor_irred(x, y)? {
                    *out.atoms.entry(z).or_insert(0) += mx * my * mz;
                }
            }
        }
        Ok(out)
    }

    /// `∧^k`, expanded through `∧^k(A ⊕ B) = ⊕ ∧^i A ⊗ ∧^(k-i) B`.
    pub fn exterior_power(&self, k: usize) -> Result<BundleExpr> {
        Ok(self.exterior_powers(k)?.swap_remove(k))
    }

    /// `[∧^0, ∧^1, ..., ∧^max]`.
    pub fn exterior_powers(&self, max: usize) -> Result<Vec<BundleExpr>> {
        let gr = self.gr;
        // powers[j] = ∧^j of the atoms processed so far
        let mut powers: Vec<BundleExpr> = vec![Self::zero(gr); max + 1];
        powers[0] = Self::line_bundle(gr, 0);
        for (atom, mult) in self.atoms() {
            let r = atom.rank() as usize;
            let own: Vec<BundleExpr> =
                (0..=r.min(max)).map(|i| exterior_power_irred(atom, i)).collect::<Result<_>>()?;
            for _ in 0..mult {
                let mut next = vec![Self::zero(gr); max + 1];
                for (j, slot) in next.iter_mut().enumerate() {
                    for (i, own_i) in own.iter().enumerate().take(j + 1) {
                        if own_i.is_zero() || powers[j - i].is_zero() {
                            continue;
                        }
                        *slot = slot.sum(&own_i.tensor(&powers[j - i])?)?;
                    }
                }
                powers = next;
            }
        }
        Ok(powers)
    }

    /// First Chern class in units of `O(1)`, from the weight totals.
    pub fn det(&self) -> Result<i64> {
        let (k, r) = (self.gr.k() as i64, self.gr.quotient_rank() as i64);
        let mut c1 = Ratio::<i64>::zero();
        for (atom, m) in self.atoms() {
            let ra = weyl_dim(atom.a()) as i64;
            let rb = weyl_dim(atom.b()) as i64;
            let per = Ratio::new(atom.a().size() * ra * rb, k) + Ratio::new(atom.b().size() * ra * rb, r);
            c1 += per * (m as i64);
        }
        if !c1.is_integer() {
            return Err(FanoError::Internal(format!("non-integral first Chern class {c1} for {self}")));
        }
        Ok(c1.to_integer())
    }

    /// Exact cohomology table on the ambient Grassmannian.
    pub fn cohom_table(&self) -> DimTable {
        let mut t = DimTable::zero(self.gr.dim());
        for (atom, m) in self.atoms() {
            if let CohomResult::Nonzero { degree, dim } = cohomology_irred(atom) {
                let cur = t.get(degree);
                t.set(degree, cur.add(&IntervalDim::exact(dim * m)));
            }
        }
        t
    }

    pub fn parse(gr: GrSpec, input: &str) -> Result<BundleExpr> {
        Parser { gr, input, pos: 0 }.parse_expr()
    }
}

impl fmt::Display for BundleExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.atoms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (atom, m) in self.atoms() {
            if !first {
                write!(f, " ⊕ ")?;
            }
            first = false;
            let s = atom.to_string();
            if m == 1 {
                write!(f, "{s}")?;
            } else if s.contains('⊗') || s.starts_with('S') {
                write!(f, "({s})^{m}")?;
            } else {
                write!(f, "{s}^{m}")?;
            }
        }
        Ok(())
    }
}

fn tensor_irred(x: &IrredBundle, y: &IrredBundle) -> Result<Vec<(IrredBundle, u64)>> {
    let gr = x.gr();
    let aa = lr_tensor(x.a(), y.a(), gr.k())?;
    let bb = lr_tensor(x.b(), y.b(), gr.quotient_rank())?;
    let mut out = Vec::with_capacity(aa.len() * bb.len());
    for (a, ma) in &aa {
        for (b, mb) in &bb {
            out.push((IrredBundle::from_weights(gr, a.clone(), b.clone())?, ma * mb));
        }
    }
    Ok(out)
}

enum BlockShape {
    Constant(i64),
    /// `c + (1,0,...,0)`
    Vector(i64),
    /// `c + (0,...,0,-1)`
    Covector(i64),
    Other,
}

fn block_shape(w: &DominantWeight) -> BlockShape {
    let e = w.entries();
    if w.is_constant() {
        return BlockShape::Constant(w.first());
    }
    let last = w.last();
    if e[0] == last + 1 && e[1..].iter().all(|&x| x == last) {
        return BlockShape::Vector(last);
    }
    let first = w.first();
    let len = e.len();
    if e[len - 1] == first - 1 && e[..len - 1].iter().all(|&x| x == first) {
        return BlockShape::Covector(first);
    }
    BlockShape::Other
}

fn wedge_block(shape: &BlockShape, len: usize, p: usize) -> Option<Vec<i64>> {
    let pc = p as i64;
    match *shape {
        BlockShape::Vector(c) => {
            Some((0..len).map(|i| pc * c + i64::from(i < p)).collect())
        }
        BlockShape::Covector(c) => {
            Some((0..len).map(|i| pc * c - i64::from(i >= len - p)).collect())
        }
        _ => None,
    }
}

fn exterior_power_irred(atom: &IrredBundle, p: usize) -> Result<BundleExpr> {
    let gr = atom.gr();
    if p == 0 {
        return Ok(BundleExpr::line_bundle(gr, 0));
    }
    if p as u64 > atom.rank() {
        return Ok(BundleExpr::zero(gr));
    }
    if atom.is_line_bundle() {
        return Ok(if p == 1 { BundleExpr::atom(atom.clone()) } else { BundleExpr::zero(gr) });
    }
    let unsupported = || FanoError::UnsupportedExteriorPower(atom.to_string());
    let (sa, sb) = (block_shape(atom.a()), block_shape(atom.b()));
    let pc = p as i64;
    let (a, b) = match (&sa, &sb) {
        (BlockShape::Constant(_), BlockShape::Constant(_)) => unreachable!("line bundles handled above"),
        (_, BlockShape::Constant(cb)) => {
            (wedge_block(&sa, gr.k(), p).ok_or_else(unsupported)?, vec![pc * cb; gr.quotient_rank()])
        }
        (BlockShape::Constant(ca), _) => {
            (vec![pc * ca; gr.k()], wedge_block(&sb, gr.quotient_rank(), p).ok_or_else(unsupported)?)
        }
        _ => return Err(unsupported()),
    };
    Ok(BundleExpr::atom(IrredBundle::new(gr, a, b)?))
}

struct Parser<'a> {
    gr: GrSpec,
    input: &'a str,
    pos: usize,
}

impl Parser<'_> {
    fn err(&self, reason: impl Into<String>) -> FanoError {
        FanoError::BundleParse { input: self.input.to_string(), reason: reason.into() }
    }

    fn rest(&self) -> &str {
        &self.input[self.pos..]
    }

    fn skip_ws(&mut self) {
        let trimmed = self.rest().trim_start();
        self.pos = self.input.len() - trimmed.len();
    }

    fn eat(&mut self, tok: &str) -> bool {
        self.skip_ws();
        if self.rest().starts_with(tok) {
            self.pos += tok.len();
            true
        } else {
            false
        }
    }

    fn expect(&mut self, tok: &str) -> Result<()> {
        if self.eat(tok) {
            Ok(())
        } else {
            Err(self.err(format!("expected '{tok}' at offset {}", self.pos)))
        }
    }

    fn int(&mut self) -> Result<i64> {
        self.skip_ws();
        let r = self.rest();
        let len = r
            .char_indices()
            .take_while(|&(i, c)| c.is_ascii_digit() || (i == 0 && (c == '-' || c == '+')))
            .count();
        let s = &r[..len];
        let v = s.parse::<i64>().map_err(|_| self.err(format!("expected integer at offset {}", self.pos)))?;
        self.pos += len;
        Ok(v)
    }

    fn parse_expr(mut self) -> Result<BundleExpr> {
        let mut out = BundleExpr::zero(self.gr);
        self.skip_ws();
        if self.rest() == "0" {
            return Ok(out);
        }
        loop {
            out = out.sum(&self.summand()?)?;
            if !(self.eat("⊕") || self.eat("+")) {
                break;
            }
        }
        self.skip_ws();
        if !self.rest().is_empty() {
            return Err(self.err(format!("trailing input at offset {}", self.pos)));
        }
        Ok(out)
    }

    fn summand(&mut self) -> Result<BundleExpr> {
        let group = if self.eat("(") {
            let p = self.product()?;
            self.expect(")")?;
            p
        } else {
            self.product()?
        };
        if self.eat("^") {
            let m = self.int()?;
            if m < 0 {
                return Err(self.err("negative multiplicity"));
            }
            return Ok(group.scale(m as u64));
        }
        Ok(group)
    }

    fn product(&mut self) -> Result<BundleExpr> {
        let mut out = self.factor()?;
        while self.eat("⊗") || self.eat("x") {
            out = out.tensor(&self.factor()?)?;
        }
        Ok(out)
    }

    fn factor(&mut self) -> Result<BundleExpr> {
        let gr = self.gr;
        let atom = if self.eat("S[") {
            let mut w = vec![self.int()?];
            while self.eat(",") {
                w.push(self.int()?);
            }
            self.expect("]")?;
            if self.eat("U*") {
                IrredBundle::new(gr, w, vec![0; gr.quotient_rank()])?
            } else if self.eat("Q") {
                IrredBundle::new(gr, vec![0; gr.k()], w)?
            } else {
                return Err(self.err("Schur factor must end in U* or Q"));
            }
        } else if self.eat("O(") {
            let t = self.int()?;
            self.expect(")")?;
            IrredBundle::line_bundle(gr, t)
        } else if self.eat("U*") {
            IrredBundle::tautological_dual(gr)
        } else if self.eat("U") {
            IrredBundle::tautological_dual(gr).dual()
        } else if self.eat("Q*") {
            IrredBundle::quotient(gr).dual()
        } else if self.eat("Q") {
            IrredBundle::quotient(gr)
        } else {
            return Err(self.err(format!("unexpected input at offset {}", self.pos)));
        };
        Ok(BundleExpr::atom(atom))
    }
}
