use std::sync::OnceLock;

use cohconf::algebra::idempotents::{rational_central_idempotents, CentralIdempotentSet, SplitOptions};
use cohconf::constructions::groups;
use cohconf::delsarte::{constant_intersection_test, is_design_orthogonal, outer_distribution, psd_check};
use cohconf::hierarchy::lp::Relation;
use cohconf::hierarchy::witness::normalize_witness;
use cohconf::hierarchy::{lp_feasible, Budget, FeasibilityProblem, LpOutcome};
use cohconf::perm::{enumerate_elements, inner_products_over, orbitals};
use cohconf::rational::int;
use cohconf::{CoherentConfiguration, GeneratorSet, Permutation, Rational, RationalVector};
use proptest::prelude::*;

struct Fixture {
    cc: CoherentConfiguration,
    ids: CentralIdempotentSet,
    elements: Vec<Permutation>,
}

fn fixture(g: GeneratorSet) -> Fixture {
    let cc = CoherentConfiguration::from_orbitals(orbitals(&g).unwrap()).unwrap();
    let ids = rational_central_idempotents(&cc, &SplitOptions::default()).unwrap();
    let elements = enumerate_elements(&g, 1000).unwrap();
    Fixture { cc, ids, elements }
}

/// AGL(1,5) on pairs (noncommutative) and A5 on pairs (commutative).
fn fixtures() -> &'static [Fixture] {
    static F: OnceLock<Vec<Fixture>> = OnceLock::new();
    F.get_or_init(|| vec![fixture(groups::agl1_5_on_pairs()), fixture(groups::alternating_on_pairs(5))])
}

fn vector(entries: &[i64]) -> RationalVector {
    RationalVector::from_integers(entries.iter().copied())
}

fn small_vector() -> impl Strategy<Value = Vec<i64>> {
    prop::collection::vec(-2i64..=3, 10)
}

/// Every point of `{0..=cap}^n`, checked against the problem directly.
fn brute_force(p: &FeasibilityProblem, cap: i64) -> bool {
    let n = p.num_vars;
    let mut x = vec![0i64; n];
    loop {
        let xr: Vec<Rational> = x.iter().map(|&v| int(v)).collect();
        if p.is_satisfied_by(&xr) {
            return true;
        }
        let mut i = 0;
        while i < n && x[i] == cap {
            x[i] = 0;
            i += 1;
        }
        if i == n {
            return false;
        }
        x[i] += 1;
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn integer_lp_agrees_with_brute_force(
        rows in prop::collection::vec(prop::collection::vec(-2i64..=2, 4), 1..=2),
        sum in 0i64..=4,
    ) {
        let rows: Vec<Vec<Rational>> = rows.iter().map(|r| r.iter().map(|&c| int(c)).collect()).collect();
        let mut p = FeasibilityProblem::kernel_with_sum(&rows, 4, sum, true);
        p.upper = vec![Some(sum); 4];
        let expected = brute_force(&p, sum);
        match lp_feasible(&p, &Budget { max_nodes: u64::MAX, max_time: None }) {
            LpOutcome::Feasible(x) => {
                prop_assert!(expected);
                prop_assert!(p.is_satisfied_by(&x));
            }
            LpOutcome::Infeasible => prop_assert!(!expected),
            LpOutcome::BudgetExhausted => prop_assert!(false, "unlimited budget exhausted"),
        }
    }

    #[test]
    fn lp_solutions_satisfy_inequalities(
        coeffs in prop::collection::vec(prop::collection::vec(-3i64..=3, 3), 1..=3),
        rhs in prop::collection::vec(-3i64..=3, 3),
    ) {
        let mut p = FeasibilityProblem::new(3);
        for (c, r) in coeffs.iter().zip(&rhs) {
            p.push(c.iter().map(|&v| int(v)).collect(), Relation::Le, int(*r));
        }
        p.push(vec![int(1); 3], Relation::Le, int(6));
        if let LpOutcome::Feasible(x) = lp_feasible(&p, &Budget::default()) {
            prop_assert!(p.is_satisfied_by(&x));
        }
    }

    #[test]
    fn normalized_witness_is_scale_invariant(w in prop::collection::vec(0i64..=4, 10), k in 1i64..=6) {
        let w = vector(&w);
        prop_assume!(w.sum() != int(0));
        let scaled = w.scale(&int(k));
        match (normalize_witness(&w, 10), normalize_witness(&scaled, 10)) {
            (Ok(a), Ok(b)) => {
                prop_assert_eq!(&a, &b);
                prop_assert_eq!(a.sum(), int(10));
            }
            (Err(_), _) => {}
            (Ok(_), Err(e)) => prop_assert!(false, "scaling broke normalization: {e}"),
        }
    }

    #[test]
    fn identity_agrees_with_enumeration(u in small_vector(), v in small_vector(), which in 0usize..2) {
        let f = &fixtures()[which];
        let (u, v) = (vector(&u), vector(&v));
        let t = constant_intersection_test(&f.cc, &u, &v);
        let m = inner_products_over(&f.elements, &u, &v);
        prop_assert_eq!(t.constant, m.constant_value().is_some());
        if let Some(c) = m.constant_value() {
            prop_assert_eq!(t.value.as_ref(), Some(c));
        }
    }

    #[test]
    fn design_orthogonal_pairs_have_constant_intersection(u in small_vector(), v in small_vector(), which in 0usize..2) {
        let f = &fixtures()[which];
        let (u, v) = (vector(&u), vector(&v));
        if is_design_orthogonal(&f.cc, &f.ids, &u, &v) {
            prop_assert!(constant_intersection_test(&f.cc, &u, &v).constant);
        }
    }

    #[test]
    fn outer_distribution_is_psd(u in small_vector(), which in 0usize..2) {
        let f = &fixtures()[which];
        prop_assert!(psd_check(&f.cc, &outer_distribution(&f.cc, &vector(&u))));
    }
}
