use fano_core::families::{chi_rr, h0_koszul, h0_rr, h0_weighted, n_l, AmbientSpace, DefiningData, FamilyDb};
use fano_core::{family, FanoError};

const KOSZUL_FAMILIES: [&str; 11] = ["1.5", "1.6", "1.7", "1.8", "1.9", "1.10", "1.13", "1.14", "1.15", "1.16", "1.17"];

fn binom(n: i64, k: i64) -> i64 {
    if k < 0 || n < k {
        return 0;
    }
    (0..k).fold(1, |acc, j| acc * (n - j) / (j + 1))
}

#[test]
fn riemann_roch_matches_koszul() {
    for id in KOSZUL_FAMILIES {
        let y = family(id).unwrap();
        for m in 0..=8 {
            let k = h0_koszul(y, m).unwrap();
            assert_eq!(k.exact_value(), Some(h0_rr(y, m).unwrap()), "{id} m={m}: koszul {k}");
        }
    }
}

#[test]
fn complete_intersections_count_sections_directly() {
    // h^0 of O(m) on a complete intersection of degrees d_i in P^n, m below
    // every degree: all monomials survive
    for id in ["1.13", "1.14", "1.16"] {
        let y = family(id).unwrap();
        let (AmbientSpace::Projective { n }, DefiningData::CompleteIntersection { degrees }) = (&y.ambient, &y.defining) else {
            panic!("{id} is not a complete intersection");
        };
        let dmin = *degrees.iter().min().unwrap();
        for m in 0..dmin {
            assert_eq!(h0_rr(y, m).unwrap() as i64, binom(m + *n as i64, m), "{id} m={m}");
        }
    }
    let p3 = family("1.17").unwrap();
    for m in 0..=12 {
        assert_eq!(h0_rr(p3, m).unwrap() as i64, binom(m + 3, 3));
    }
}

#[test]
fn weighted_sextic_sections() {
    let y = family("1.11").unwrap();
    let AmbientSpace::Weighted { weights } = &y.ambient else { panic!() };
    assert_eq!(h0_weighted(weights, 0), 1);
    assert_eq!(h0_weighted(weights, 1), 3);
    assert_eq!(h0_weighted(weights, 2), 7);
    assert_eq!(h0_weighted(weights, 3), 14);
    for d in 0..=5 {
        assert_eq!(h0_weighted(weights, d), h0_rr(y, d).unwrap(), "d={d}");
    }
    // the hypersurface equation removes exactly the ambient count shifted by 6
    for d in 6..=12 {
        assert_eq!(h0_weighted(weights, d) - h0_weighted(weights, d - 6), h0_rr(y, d).unwrap(), "d={d}");
    }
}

#[test]
fn negative_twists_have_no_sections() {
    for y in &FamilyDb::embedded().families {
        for m in -6..0 {
            assert_eq!(h0_rr(y, m).unwrap(), 0);
        }
        assert_eq!(h0_rr(y, 0).unwrap(), 1);
    }
}

#[test]
fn database_integrity() {
    let db = FamilyDb::embedded();
    let ids: Vec<&str> = db.ids().collect();
    let want: Vec<String> = (1..=17).map(|k| format!("1.{k}")).collect();
    assert_eq!(ids, want.iter().map(String::as_str).collect::<Vec<_>>());
    for y in &db.families {
        y.validate().unwrap();
        assert_eq!(24 % y.index, 0, "{}", y.id);
        assert!(y.j_va >= y.index && y.degree_h3 >= 1);
        let codim = match &y.defining {
            DefiningData::CompleteIntersection { degrees } => degrees.len(),
            DefiningData::WeightedHypersurface { .. } => 1,
            DefiningData::WholeSpace => 0,
            DefiningData::ZeroLocus { .. } => y.defining_bundle().unwrap().unwrap().rank() as usize,
        };
        assert_eq!(y.ambient.dim() - codim, 3, "{}", y.id);
        // RR integrality on a band of twists
        for m in -5..=10 {
            chi_rr(y, m).unwrap();
        }
    }
}

#[test]
fn sections_of_h_increase_with_degree_within_index() {
    let db = FamilyDb::embedded();
    for index in 1..=4 {
        let mut v: Vec<(i64, u64)> =
            db.families.iter().filter(|y| y.index == index).map(|y| (y.degree_h3, h0_rr(y, 1).unwrap())).collect();
        v.sort_unstable();
        assert!(v.windows(2).all(|w| w[0].1 < w[1].1), "index {index}: {v:?}");
    }
}

#[test]
fn projective_dimension_examples() {
    assert_eq!(n_l(family("1.12").unwrap(), 3).unwrap().value, 27);
    assert_eq!(n_l(family("1.17").unwrap(), 9).unwrap().value, 275);
    assert_eq!(n_l(family("1.5").unwrap(), 1).unwrap().value, 8);
    // the two readings only differ where index and threshold differ
    for y in &FamilyDb::embedded().families {
        let n = n_l(y, y.j_va + 4).unwrap();
        assert_eq!(n.value == n.threshold_reading, y.index == y.j_va, "{}", y.id);
    }
    assert!(matches!(n_l(family("1.1").unwrap(), 2), Err(FanoError::BelowVeryAmple { .. })));
}

#[test]
fn mutated_database_is_rejected() {
    let text = std::fs::read_to_string(concat!(env!("CARGO_MANIFEST_DIR"), "/data/fano_families.toml")).unwrap();
    let broken = text.replacen("index = 2", "index = 5", 1);
    assert!(FamilyDb::from_toml_str(&broken).is_err());
    let dir = tempfile::tempdir().unwrap();
    let p = dir.path().join("db.toml");
    std::fs::write(&p, text.replacen("degree_h3 = 4", "degree_h3 = 6", 1)).unwrap();
    let db = FamilyDb::from_path(&p).unwrap();
    assert_eq!(db.get("1.2").unwrap().degree_h3, 6);
}
