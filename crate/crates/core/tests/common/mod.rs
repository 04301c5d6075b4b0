//! Independent oracles shared by the integration tests. None of these call
//! into the engine code they are compared against.

#![allow(dead_code)]

use std::collections::BTreeMap;

use fano_core::chase::{ChaseSystem, ChaseTrace, RuleOrder};
use fano_core::dims::DimTable;
use fano_core::extendability::first_l;
use fano_core::families::FamilyDb;

/// Number of semistandard tableaux of shape `lambda` (a partition) with
/// entries in `1..=n`, by direct enumeration.
pub fn ssyt_count(lambda: &[i64], n: usize) -> u64 {
    let shape: Vec<usize> = lambda.iter().map(|&x| x as usize).filter(|&x| x > 0).collect();
    let cells: Vec<(usize, usize)> = shape.iter().enumerate().flat_map(|(r, &len)| (0..len).map(move |c| (r, c))).collect();
    let mut grid: Vec<Vec<usize>> = shape.iter().map(|&len| vec![0; len]).collect();
    fn go(i: usize, cells: &[(usize, usize)], grid: &mut Vec<Vec<usize>>, n: usize) -> u64 {
        if i == cells.len() {
            return 1;
        }
        let (r, c) = cells[i];
        let mut total = 0;
        for v in 1..=n {
            if c > 0 && grid[r][c - 1] > v {
                continue;
            }
            if r > 0 && grid[r - 1][c] >= v {
                continue;
            }
            grid[r][c] = v;
            total += go(i + 1, cells, grid, n);
        }
        grid[r][c] = 0;
        total
    }
    go(0, &cells, &mut grid, n)
}

/// Dimension of the GL(n) irreducible with highest weight `w` (any signs), via
/// a shift to a partition and a tableau count.
pub fn gl_dim(w: &[i64]) -> u64 {
    let c = w.iter().copied().min().unwrap_or(0).min(0);
    let p: Vec<i64> = w.iter().map(|x| x - c).collect();
    ssyt_count(&p, w.len())
}

/// Partitions of `size` with at most `rows` parts, each part at most `cap`.
fn partitions(size: i64, rows: usize, cap: i64) -> Vec<Vec<i64>> {
    if rows == 0 {
        return if size == 0 { vec![vec![]] } else { vec![] };
    }
    let mut out = Vec::new();
    for first in (0..=size.min(cap)).rev() {
        for mut rest in partitions(size - first, rows - 1, first) {
            let mut p = vec![first];
            p.append(&mut rest);
            out.push(p);
        }
    }
    out
}

/// Littlewood-Richardson coefficients `c^nu_{lambda,mu}` for partitions of
/// length `n`, by enumerating every filling of `nu / lambda` with content `mu`
/// and testing semistandardness and the reverse-reading lattice condition.
pub fn lr_bruteforce(lambda: &[i64], mu: &[i64], n: usize) -> BTreeMap<Vec<i64>, u64> {
    let size: i64 = lambda.iter().sum::<i64>() + mu.iter().sum::<i64>();
    let mut out = BTreeMap::new();
    for nu in partitions(size, n, size) {
        if nu.iter().zip(lambda).any(|(a, b)| a < b) {
            continue;
        }
        let c = count_lr_fillings(lambda, mu, &nu);
        if c > 0 {
            out.insert(nu, c);
        }
    }
    out
}

fn count_lr_fillings(lambda: &[i64], mu: &[i64], nu: &[i64]) -> u64 {
    let cells: Vec<(usize, usize)> = nu
        .iter()
        .enumerate()
        .flat_map(|(r, &len)| (lambda[r] as usize..len as usize).map(move |c| (r, c)))
        .collect();
    let letters = mu.iter().filter(|&&m| m > 0).count();
    let mut fill = vec![vec![0usize; nu.first().copied().unwrap_or(0) as usize]; nu.len()];
    let mut content = vec![0i64; letters + 1];
    fn go(
        i: usize,
        cells: &[(usize, usize)],
        fill: &mut Vec<Vec<usize>>,
        content: &mut Vec<i64>,
        mu: &[i64],
        lambda: &[i64],
        nu: &[i64],
    ) -> u64 {
        if i == cells.len() {
            return u64::from(lattice_ok(fill, lambda, nu, content.len() - 1));
        }
        let (r, c) = cells[i];
        let mut total = 0;
        for v in 1..content.len() {
            if content[v] >= mu[v - 1] {
                continue;
            }
            // weakly increasing along rows inside the skew shape
            if c > lambda[r] as usize && fill[r][c - 1] > v {
                continue;
            }
            // strictly increasing down columns when the cell above is skew
            if r > 0 && c >= lambda[r - 1] as usize && fill[r - 1][c] >= v {
                continue;
            }
            content[v] += 1;
            fill[r][c] = v;
            total += go(i + 1, cells, fill, content, mu, lambda, nu);
            fill[r][c] = 0;
            content[v] -= 1;
        }
        total
    }
    go(0, &cells, &mut fill, &mut content, mu, lambda, nu)
}

/// Reading rows top to bottom, each right to left, every prefix has at least
/// as many `k` as `k+1`.
fn lattice_ok(fill: &[Vec<usize>], lambda: &[i64], nu: &[i64], letters: usize) -> bool {
    let mut seen = vec![0i64; letters + 2];
    for r in 0..nu.len() {
        for c in (lambda[r] as usize..nu[r] as usize).rev() {
            let v = fill[r][c];
            seen[v] += 1;
            if v > 1 && seen[v] > seen[v - 1] {
                return false;
            }
        }
    }
    true
}

/// Every family and twist used by the property suites.
pub fn chase_grid() -> Vec<(String, bool, i64)> {
    let db = FamilyDb::embedded();
    let mut out = Vec::new();
    for y in &db.families {
        let top = y.reference.threshold + y.index;
        for m in 1..=top {
            out.push((y.id.clone(), true, m));
        }
        let l0 = first_l(y);
        for t in [y.index - l0, 2 * y.index - l0, -1, 0, 1, 2] {
            out.push((y.id.clone(), false, t));
        }
    }
    out
}

pub fn unsolved(id: &str, tangent: bool, t: i64) -> ChaseSystem {
    let y = FamilyDb::embedded().get(id).unwrap();
    let c = if tangent {
        fano_core::chase::tangent_system(y, t).unwrap()
    } else {
        fano_core::chase::line_bundle_system(y, t).unwrap()
    };
    c.system
}

/// Solve a copy and return every table plus the trace.
pub fn solve(sys: &ChaseSystem, order: RuleOrder) -> (Vec<DimTable>, ChaseTrace, ChaseSystem) {
    let mut s = sys.clone();
    let trace = s.solve_with(order).unwrap();
    let tables = s.objects().map(|(_, t)| t.clone()).collect();
    (tables, trace, s)
}
