use cohconf::algebra::idempotents::{isotypic_dimensions, rational_central_idempotents, split, SplitOptions};
use cohconf::constructions::conic::conic_external_action;
use cohconf::constructions::hermitian::hermitian_points;
use cohconf::hierarchy::witness::*;
use cohconf::perm::{enumerate_elements, orbitals};
use cohconf::{CoherentConfiguration, RationalVector};

#[test]
fn conic_external_pairs() {
    for (q, order, rank) in [(5, 120, 4), (7, 336, 5), (9, 1440, 5)] {
        let c = conic_external_action(q).unwrap();
        let n = c.points.len();
        assert_eq!(n, q * (q + 1) / 2);
        let cc = CoherentConfiguration::from_orbitals(orbitals(&c.generators).unwrap()).unwrap();
        assert_eq!(cc.rank(), rank);
        let ids = rational_central_idempotents(&cc, &SplitOptions::default()).unwrap();
        let u = RationalVector::indicator(n, c.clique.iter().copied());
        let v = RationalVector::indicator(n, c.coclique.iter().copied());
        let mut w = verify_nonseparating(&cc, &ids, &u, &v).unwrap();
        let els = enumerate_elements(&c.generators, 100_000).unwrap();
        assert_eq!(els.len(), order);
        confirm_with_oracle(&mut w, &els).unwrap();
        assert_eq!(c.graph.clique_number(), q);
        assert_eq!(c.graph.independence_number(), q.div_ceil(2));

        // The clique meets every block of a coclique partition once.
        let blocks = c.graph.coclique_partition(q.div_ceil(2)).expect("partition");
        let ys: Vec<RationalVector> = blocks.iter().map(|b| RationalVector::indicator(n, b.iter().copied())).collect();
        verify_nonsynchronising(&cc, &ids, &ys, &u).unwrap();
    }
}

#[test]
fn hermitian_quadrangle_isotypic_dimensions() {
    let h = hermitian_points();
    let cc = CoherentConfiguration::from_orbitals(orbitals(&h.generators).unwrap()).unwrap();
    assert_eq!(cc.valencies(), &[1, 128, 36]);
    let s = split(&cc, &SplitOptions::default()).unwrap();
    let mut d = isotypic_dimensions(&s.complex).unwrap();
    d.sort();
    assert_eq!(d, vec![1, 44, 120]);
}
