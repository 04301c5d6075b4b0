mod common;

use fano_core::bbw::{cohomology_irred, cohomology_omega_twist, CohomResult, GrSpec, IrredBundle};
use fano_core::bundle::BundleExpr;
use fano_core::weights::{bott_regularize, lr_tensor, rho, weyl_dim, BottRegularity, DominantWeight, IntegerWeight};
use proptest::prelude::*;

fn partition(n: usize, max_size: i64) -> impl Strategy<Value = Vec<i64>> {
    proptest::collection::vec(0..=max_size, n).prop_filter_map("size bound", move |mut v| {
        v.sort_unstable_by(|a, b| b.cmp(a));
        (v.iter().sum::<i64>() <= max_size).then_some(v)
    })
}

fn dominant(n: usize, lo: i64, hi: i64) -> impl Strategy<Value = Vec<i64>> {
    proptest::collection::vec(lo..=hi, n).prop_map(|mut v| {
        v.sort_unstable_by(|a, b| b.cmp(a));
        v
    })
}

fn pair_with_total(max_total: i64) -> impl Strategy<Value = (usize, Vec<i64>, Vec<i64>)> {
    (1usize..=5).prop_flat_map(move |n| (Just(n), partition(n, max_total), partition(n, max_total)))
        .prop_filter("total size", move |(_, a, b)| a.iter().sum::<i64>() + b.iter().sum::<i64>() <= max_total)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn lr_matches_tableau_enumeration((n, a, b) in pair_with_total(8)) {
        let got = lr_tensor(&DominantWeight::new(a.clone()).unwrap(), &DominantWeight::new(b.clone()).unwrap(), n).unwrap();
        let got: Vec<(Vec<i64>, u64)> = got.into_iter().map(|(k, v)| (k.into_entries(), v)).collect();
        let want: Vec<(Vec<i64>, u64)> = common::lr_bruteforce(&a, &b, n).into_iter().collect();
        prop_assert_eq!(got, want);
    }

    #[test]
    fn lr_dimension_and_commutativity(n in 1usize..=5, a in dominant(5, -3, 3), b in dominant(5, -3, 3)) {
        let (a, b) = (DominantWeight::new(a[..n].to_vec()).unwrap(), DominantWeight::new(b[..n].to_vec()).unwrap());
        let ab = lr_tensor(&a, &b, n).unwrap();
        prop_assert_eq!(&ab, &lr_tensor(&b, &a, n).unwrap());
        let total: u64 = ab.iter().map(|(w, m)| weyl_dim(w) * m).sum();
        prop_assert_eq!(total, weyl_dim(&a) * weyl_dim(&b));
    }

    #[test]
    fn weyl_dim_counts_tableaux(n in 1usize..=5, w in dominant(5, -3, 4)) {
        let w = w[..n].to_vec();
        let d = DominantWeight::new(w.clone()).unwrap();
        prop_assert_eq!(weyl_dim(&d), common::gl_dim(&w));
        prop_assert_eq!(weyl_dim(&d.shifted(7)), weyl_dim(&d));
    }

    #[test]
    fn bott_regularity_is_a_sorting(w in proptest::collection::vec(-6i64..=6, 1..=7)) {
        let n = w.len();
        let shifted: Vec<i64> = w.iter().zip(rho(n).entries()).map(|(a, b)| a + b).collect();
        let mut distinct = shifted.clone();
        distinct.sort_unstable();
        distinct.dedup();
        match bott_regularize(&IntegerWeight::new(w)) {
            BottRegularity::Singular => prop_assert!(distinct.len() < n),
            BottRegularity::Regular { length, dominant } => {
                prop_assert_eq!(distinct.len(), n);
                let back: Vec<i64> = dominant.entries().iter().zip(rho(n).entries()).map(|(a, b)| a + b).collect();
                prop_assert!(back.windows(2).all(|p| p[0] > p[1]));
                let mut sorted = shifted.clone();
                sorted.sort_unstable_by(|a, b| b.cmp(a));
                prop_assert_eq!(back, sorted);
                let inversions = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).filter(|&(i, j)| shifted[i] < shifted[j]).count();
                prop_assert_eq!(length, inversions);
            }
        }
    }
}

const AMBIENTS: [(usize, usize); 7] = [(1, 4), (1, 5), (2, 5), (2, 6), (2, 7), (3, 6), (3, 7)];

fn expr_on(g: GrSpec) -> impl Strategy<Value = BundleExpr> {
    let (k, n) = (g.k(), g.n());
    proptest::collection::vec((dominant(k, -4, 4), dominant(n - k, -4, 4), 1u64..=3), 1..=4).prop_map(move |atoms| {
            atoms.into_iter().fold(BundleExpr::zero(g), |acc, (a, b, m)| {
                acc.sum(&BundleExpr::atom_with_mult(IrredBundle::new(g, a, b).unwrap(), m)).unwrap()
            })
        })
}

fn ambient() -> impl Strategy<Value = GrSpec> {
    (0..AMBIENTS.len()).prop_map(|i| GrSpec::new(AMBIENTS[i].0, AMBIENTS[i].1).unwrap())
}

fn random_expr() -> impl Strategy<Value = BundleExpr> {
    ambient().prop_flat_map(expr_on)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn serre_duality_degreewise(e in random_expr()) {
        let g = e.gr();
        let dual = e.dual().twist(g.canonical_twist());
        prop_assert_eq!(e.cohom_table().reversed(), dual.cohom_table());
        prop_assert_eq!(e.dual().dual(), e);
    }

    #[test]
    fn cohomology_is_additive((e, f) in ambient().prop_flat_map(|g| (expr_on(g), expr_on(g)))) {
        prop_assert_eq!(e.sum(&f).unwrap().cohom_table(), e.cohom_table().add(&f.cohom_table()));
    }
}

#[test]
fn euler_characteristic_grid_on_gr25() {
    // χ from BBW equals the signed Weyl dimension of the sorted shifted weight
    let g = GrSpec::new(2, 5).unwrap();
    for a0 in -7..=3 {
        for a1 in -7..=a0 {
            for b0 in 0..=3 {
                for b1 in 0..=b0 {
                    let e = IrredBundle::new(g, vec![a0, a1], vec![b0, b1, 0]).unwrap();
                    let w = e.bbw_weight();
                    let s: Vec<i64> = w.entries().iter().zip(rho(5).entries()).map(|(a, b)| a + b).collect();
                    let mut sorted = s.clone();
                    sorted.sort_unstable_by(|a, b| b.cmp(a));
                    let chi_direct: i64 = if sorted.windows(2).any(|p| p[0] == p[1]) {
                        0
                    } else {
                        let inv = (0..5).flat_map(|i| (i + 1..5).map(move |j| (i, j))).filter(|&(i, j)| s[i] < s[j]).count();
                        let dom: Vec<i64> = sorted.iter().zip(rho(5).entries()).map(|(a, b)| a - b).collect();
                        (if inv % 2 == 0 { 1 } else { -1 }) * common::gl_dim(&dom) as i64
                    };
                    let t = BundleExpr::atom(e.clone()).cohom_table();
                    assert_eq!(t.euler().unwrap() as i64, chi_direct, "{e}");
                }
            }
        }
    }
}

#[test]
fn kodaira_spot_checks() {
    for (k, n) in AMBIENTS {
        let g = GrSpec::new(k, n).unwrap();
        for t in 1..=6 {
            assert!(matches!(cohomology_irred(&IrredBundle::line_bundle(g, t)), CohomResult::Nonzero { degree: 0, .. }));
            let neg = cohomology_irred(&IrredBundle::line_bundle(g, -t));
            if let CohomResult::Nonzero { degree, .. } = neg {
                assert_eq!(degree, g.dim(), "{g} O({})", -t);
            }
        }
    }
}

#[test]
fn omega_examples() {
    let g4 = GrSpec::new(2, 6).unwrap();
    assert_eq!(cohomology_omega_twist(g4, 1, 0).unwrap(), CohomResult::Nonzero { degree: 1, dim: 1 });
    let p3 = GrSpec::projective(3).unwrap();
    assert_eq!(cohomology_omega_twist(p3, 0, 1).unwrap(), CohomResult::Nonzero { degree: 0, dim: 4 });
    assert_eq!(cohomology_omega_twist(p3, 0, -5).unwrap(), CohomResult::Nonzero { degree: 3, dim: 4 });
    // Bott's formula on P^n for all p
    for n in 1..=5usize {
        let p = GrSpec::projective(n).unwrap();
        for q in 0..=n {
            for t in -8i64..=8 {
                let r = cohomology_omega_twist(p, q, t).unwrap();
                let binom = |a: i64, b: i64| -> u64 {
                    if b < 0 || a < b {
                        return 0;
                    }
                    (0..b).fold(1u64, |acc, j| acc * (a - j) as u64 / (j + 1) as u64)
                };
                let (n_, q_) = (n as i64, q as i64);
                let mut want = vec![0u64; n + 1];
                if t > q_ {
                    want[0] += binom(t + n_ - q_, t) * binom(t - 1, q_);
                }
                if t == 0 {
                    want[q] += 1;
                }
                if t < q_ - n_ {
                    want[n] += binom(-t + q_, -t) * binom(-t - 1, n_ - q_);
                }
                for (d, w) in want.iter().enumerate() {
                    assert_eq!(r.h(d), *w, "P{n} Ω^{q}({t}) h{d}");
                }
            }
        }
    }
}

#[test]
fn worked_examples() {
    let g = GrSpec::new(2, 5).unwrap();
    assert_eq!(cohomology_irred(&IrredBundle::new(g, vec![-2, -2], vec![1, 0, 0]).unwrap()), CohomResult::AllZero);
    assert_eq!(cohomology_irred(&IrredBundle::new(g, vec![1, 1], vec![0, 0, 0]).unwrap()), CohomResult::Nonzero { degree: 0, dim: 10 });
    let g7 = GrSpec::new(2, 7).unwrap();
    let q = BundleExpr::parse(g7, "Q").unwrap();
    let w2 = BundleExpr::parse(g7, "S[1,1,0,0,0]Q").unwrap();
    assert_eq!(q.tensor(&w2).unwrap(), BundleExpr::parse(g7, "S[1,1,1,0,0]Q ⊕ S[2,1,0,0,0]Q").unwrap());
    let e = BundleExpr::parse(g, "U* ⊗ O(-1)").unwrap();
    assert_eq!(e.exterior_power(2).unwrap(), BundleExpr::line_bundle(g, -1));
    let g36 = GrSpec::new(3, 6).unwrap();
    assert_eq!(BundleExpr::parse(g36, "U*").unwrap().exterior_power(2).unwrap(), BundleExpr::parse(g36, "U").unwrap().twist(1));
}

#[test]
fn wedge_rank_and_det() {
    let cases = [
        ((2, 5), "S[1,0]U* ⊗ O(1) ⊕ O(1)"),
        ((2, 7), "Q* ⊗ O(1) ⊕ O(1)^2"),
        ((3, 6), "S[1,1,0]U* ⊕ O(1)^3"),
        ((3, 7), "(S[1,1,0]U*)^3"),
        ((2, 5), "O(1)^2 ⊕ O(2)"),
    ];
    for ((k, n), s) in cases {
        let g = GrSpec::new(k, n).unwrap();
        let e = BundleExpr::parse(g, s).unwrap();
        let r = e.rank();
        let powers = e.exterior_powers(r as usize).unwrap();
        for (j, p) in powers.iter().enumerate() {
            let binom = (0..j as u64).fold(1u64, |acc, i| acc * (r - i) / (i + 1));
            assert_eq!(p.rank(), binom, "{s} ∧^{j}");
        }
        assert_eq!(powers[r as usize], BundleExpr::line_bundle(g, e.det().unwrap()), "{s}");
    }
}
