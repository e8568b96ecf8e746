use knotcoh::linalg::{cokernel, smith_invariants, SparseMatrix};
use knotcoh::local_systems::{by_name, compose, REGISTRY_NAMES};
use knotcoh::spectral::formulas::{m_of, q_of};
use knotcoh::spectral::Value;
use knotcoh::verify::minor_invariants;
use knotcoh::{AbelianGroup, Int, IntChainComplex};
use proptest::prelude::*;

fn dense() -> impl Strategy<Value = Vec<Vec<i64>>> {
    (1usize..=5, 1usize..=5)
        .prop_flat_map(|(r, c)| prop::collection::vec(prop::collection::vec(-9i64..=9, c), r))
}

fn sparse(m: &[Vec<i64>]) -> SparseMatrix<Int> {
    SparseMatrix::from_dense(&m.iter().map(|r| r.iter().map(|&x| Int::from(x)).collect()).collect::<Vec<_>>())
}

fn two_term(m: &[Vec<i64>]) -> IntChainComplex {
    let a = sparse(m);
    let mut c = IntChainComplex::new(0, vec![a.rows(), a.cols()]);
    c.set_boundary(1, a).unwrap();
    c
}

fn perm(n: usize) -> impl Strategy<Value = Vec<usize>> {
    Just((0..n).collect::<Vec<_>>()).prop_shuffle()
}

proptest! {
    #[test]
    fn smith_matches_minors(m in dense()) {
        prop_assert_eq!(smith_invariants(&sparse(&m)), minor_invariants(&m));
    }

    #[test]
    fn smith_ignores_transpose_and_permutation(m in dense(), seed in any::<u64>()) {
        let a = sparse(&m);
        let base = smith_invariants(&a);
        prop_assert_eq!(smith_invariants(&a.transpose()), base.clone());
        let mut rows: Vec<Vec<i64>> = m.clone();
        rows.rotate_left((seed as usize) % m.len());
        let cols = m[0].len();
        let shift = (seed as usize / 7) % cols;
        for r in &mut rows {
            r.rotate_right(shift);
        }
        prop_assert_eq!(smith_invariants(&sparse(&rows)), base);
    }

    #[test]
    fn two_term_homology(m in dense()) {
        let h = two_term(&m).homology().unwrap();
        let a = sparse(&m);
        let rank = smith_invariants(&a).len();
        prop_assert_eq!(h.get(0), cokernel(&a));
        prop_assert_eq!(h.get(1), AbelianGroup::free(a.cols() - rank));
        prop_assert!(two_term(&m).euler_check().unwrap());
    }

    #[test]
    fn homology_is_additive(m in dense(), n in dense(), s in -3i64..3) {
        let a = two_term(&m);
        let b = two_term(&n).shift(s);
        let sum = a.direct_sum(&b).homology().unwrap();
        prop_assert_eq!(sum, a.homology().unwrap().direct_sum(&b.homology().unwrap()));
    }

    #[test]
    fn representations_are_homomorphisms(p in perm(4), q in perm(4)) {
        for name in REGISTRY_NAMES {
            let rep = by_name(name, 4).unwrap();
            prop_assert_eq!(rep.evaluate(&compose(&p, &q)), rep.evaluate(&p).mul(&rep.evaluate(&q)));
        }
    }

    #[test]
    fn group_notation_round_trips(rank in 0usize..4, orders in prop::collection::vec(2u64..30, 0..4)) {
        let g = AbelianGroup::new(rank, orders);
        prop_assert_eq!(g.to_string().parse::<AbelianGroup>().unwrap(), g.clone());
        let v = Value::Exact(g);
        prop_assert_eq!(v.to_string().parse::<Value>().unwrap(), v);
    }

    #[test]
    fn extension_keeps_rank(a in 0usize..3, x in prop::collection::vec(2u64..12, 0..3),
                            b in 0usize..3, y in prop::collection::vec(2u64..12, 0..3)) {
        let sub = Value::Exact(AbelianGroup::new(a, x));
        let quo = Value::Exact(AbelianGroup::new(b, y));
        let e = sub.extend(&quo);
        prop_assert_eq!(e.rank(), Some(a + b));
        if let Value::Exact(g) = &e {
            let order = |v: &Value| match v { Value::Exact(g) => g.torsion_order(), _ => unreachable!() };
            prop_assert_eq!(g.torsion_order(), order(&sub) * order(&quo));
        }
    }

    #[test]
    fn row_conversion_inverts(rho in 1i64..7, m in 0i64..60, k in 3i64..9) {
        prop_assert_eq!(m_of(rho, q_of(rho, m).at(k), k), m);
    }
}
