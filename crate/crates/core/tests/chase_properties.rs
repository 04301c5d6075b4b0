mod common;

use fano_core::bbw::{GrSpec, IrredBundle};
use fano_core::bundle::BundleExpr;
use fano_core::chase::{chase_short, Position, RuleOrder};
use fano_core::dims::DimTable;
use proptest::prelude::*;

const SEEDS: [u64; 10] = [1, 2, 3, 5, 8, 13, 21, 34, 55, 89];

#[test]
fn fixed_point_is_order_independent() {
    for (id, tangent, t) in common::chase_grid() {
        let sys = common::unsolved(&id, tangent, t);
        let (canonical, _, _) = common::solve(&sys, RuleOrder::Canonical);
        for seed in SEEDS {
            let (shuffled, _, _) = common::solve(&sys, RuleOrder::Shuffled(seed));
            assert_eq!(shuffled, canonical, "{id} tangent={tangent} t={t} seed={seed}");
        }
    }
}

#[test]
fn trace_replays_and_only_narrows() {
    for (id, tangent, t) in common::chase_grid() {
        let sys = common::unsolved(&id, tangent, t);
        for order in [RuleOrder::Canonical, RuleOrder::Shuffled(7)] {
            let (tables, trace, solved) = common::solve(&sys, order);
            let replayed = sys.replay(&trace).unwrap_or_else(|e| panic!("{id} {t}: {e}"));
            let again: Vec<DimTable> = replayed.objects().map(|(_, t)| t.clone()).collect();
            assert_eq!(again, tables, "{id} tangent={tangent} t={t}");
            for step in &trace.steps {
                assert!(step.before.contains(&step.after) && step.before != step.after, "{id} {t}: {step}");
                assert!(step.label.starts_with('R') || step.label == "AL", "{step}");
            }
            assert!(solved.euler_consistent(), "{id} tangent={tangent} t={t}");
        }
    }
}

#[test]
fn projective_space_chase_agrees_with_bbw() {
    // family 1.17 is P^3 itself, so the chase must reproduce Bott's values
    let p3 = GrSpec::projective(3).unwrap();
    let tangent = BundleExpr::atom(IrredBundle::tangent(p3));
    for m in 1..=9 {
        let (table, _) = fano_core::chase::tangent_twist_cohomology(fano_core::family("1.17").unwrap(), m).unwrap();
        assert_eq!(table, tangent.twist(-m).cohom_table(), "T(-{m})");
    }
    for t in -6..=6 {
        let (table, _) = fano_core::chase::line_bundle_cohomology(fano_core::family("1.17").unwrap(), t).unwrap();
        assert_eq!(table, BundleExpr::line_bundle(p3, t).cohom_table(), "O({t})");
    }
}

fn expr_on(g: GrSpec) -> impl Strategy<Value = BundleExpr> {
    let (k, q) = (g.k(), g.quotient_rank());
    let sorted = |v: Vec<i64>| {
        let mut v = v;
        v.sort_unstable_by(|a, b| b.cmp(a));
        v
    };
    proptest::collection::vec(
        (proptest::collection::vec(-5i64..=3, k).prop_map(sorted), proptest::collection::vec(0i64..=2, q).prop_map(sorted), 1u64..=2),
        0..=3,
    )
    .prop_map(move |atoms| {
        atoms.into_iter().fold(BundleExpr::zero(g), |acc, (a, b, m)| {
            acc.sum(&BundleExpr::atom_with_mult(IrredBundle::new(g, a, b).unwrap(), m)).unwrap()
        })
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    // On a split sequence the true table of any member lies in the chased interval.
    #[test]
    fn chase_brackets_split_sequences(
        (a, c) in prop_oneof![Just((2usize, 5usize)), Just((1, 4)), Just((2, 6))]
            .prop_flat_map(|(k, n)| { let g = GrSpec::new(k, n).unwrap(); (expr_on(g), expr_on(g)) }),
        which in 0usize..3,
    ) {
        let b = a.sum(&c).unwrap();
        let (ta, tb, tc) = (a.cohom_table(), b.cohom_table(), c.cohom_table());
        let d = ta.dim();
        let unknown = DimTable::unknown(d);
        let (pos, truth, args) = match which {
            0 => (Position::Sub, &ta, (&unknown, &tb, &tc)),
            1 => (Position::Middle, &tb, (&ta, &unknown, &tc)),
            _ => (Position::Quotient, &tc, (&ta, &tb, &unknown)),
        };
        let (got, trace) = chase_short(args.0, args.1, args.2, pos).unwrap();
        for q in 0..d {
            prop_assert!(got.get(q).contains_value(truth.get(q).exact_value().unwrap()), "h^{}: {} vs {}", q, got.get(q), truth.get(q));
        }
        for s in &trace.steps {
            prop_assert!(s.before.contains(&s.after));
        }
    }
}
