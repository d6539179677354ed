use proptest::prelude::*;

use cobcalc::cobordism::{
    cone_from_cobordism, k0_relation, present_group, rotate_preferred_end, GroupPresentation, Relation, RelationKind,
};
use cobcalc::cone::{bracket_flip, dual_triangulation, k0_class, rotate, unrotate, ConeExpr, FlipDirection, K0Class};
use cobcalc::gluing::{add_stop, CircleRef};
use cobcalc::surface::{flip, Triangulation};
use cobcalc::{smith_normal_form, AbelianGroup, BigMatrix, ConnectedSurface, IntMatrix, StoppedSurface};
use num_traits::{One, Signed};

fn matrix(max_rows: usize, max_cols: usize) -> impl Strategy<Value = IntMatrix> {
    (1..=max_rows, 1..=max_cols).prop_flat_map(|(r, c)| {
        prop::collection::vec(prop::collection::vec(-6i64..=6, c), r).prop_map(|rows| IntMatrix::from_rows(&rows))
    })
}

fn expr() -> impl Strategy<Value = ConeExpr> {
    let leaf = ("[A-E]", -3i64..=3).prop_map(|(l, k)| ConeExpr::leaf(l, k));
    leaf.prop_recursive(4, 16, 2, |inner| {
        (inner.clone(), inner).prop_map(|(a, b)| ConeExpr::cone(a, b))
    })
}

fn surface() -> impl Strategy<Value = ConnectedSurface> {
    (0usize..=1, prop::collection::vec(0usize..=3, 1..=3)).prop_map(|(g, stops)| ConnectedSurface::new(g, &stops))
}

proptest! {
    #[test]
    fn smith_form_is_a_unimodular_diagonalization(m in matrix(6, 6)) {
        let s = smith_normal_form(&m);
        prop_assert_eq!(s.left.mul(&BigMatrix::from(&m)).mul(&s.right), BigMatrix::from(&s.diagonal));
        prop_assert!(s.left.determinant().abs().is_one());
        prop_assert!(s.right.determinant().abs().is_one());
        let f = s.invariant_factors();
        prop_assert!(f.windows(2).all(|w| w[1] % w[0] == 0));
    }

    #[test]
    fn cokernel_ignores_redundant_rows(m in matrix(5, 5), coeffs in prop::collection::vec(-3i64..=3, 5)) {
        let extra: Vec<i64> = (0..m.cols())
            .map(|j| (0..m.rows()).map(|i| coeffs[i] * m[(i, j)]).sum())
            .collect();
        let bigger = m.stack(&IntMatrix::from_rows(&[extra]));
        prop_assert_eq!(AbelianGroup::cokernel(&m), AbelianGroup::cokernel(&bigger));
    }

    #[test]
    fn group_strings_round_trip(rank in 0usize..5, orders in prop::collection::vec(2i64..30, 0..4)) {
        let g = AbelianGroup::new(rank, &orders).unwrap();
        let parsed: AbelianGroup = g.to_string().parse().unwrap();
        prop_assert_eq!(parsed, g);
    }

    #[test]
    fn expressions_round_trip(e in expr()) {
        let parsed: ConeExpr = e.to_string().parse().unwrap();
        prop_assert_eq!(parsed, e);
    }

    #[test]
    fn rotation_is_invertible_and_keeps_k0(x in expr(), y in expr(), z in expr()) {
        let e = ConeExpr::cone(ConeExpr::cone(x, y), z);
        let r = rotate(&e).unwrap();
        prop_assert_eq!(k0_class(&r), k0_class(&e));
        prop_assert_eq!(unrotate(&r).unwrap(), e);
    }

    #[test]
    fn bracket_flips_are_triangulation_flips(e in expr(), pos in 0usize..8) {
        prop_assume!(e.cone_count() > 0);
        let pos = pos % e.cone_count();
        let before = dual_triangulation(&e).unwrap();
        for dir in [FlipDirection::ToLeft, FlipDirection::ToRight] {
            if let Ok(f) = bracket_flip(&e, pos, dir) {
                prop_assert_eq!(k0_class(&f), k0_class(&e));
                let after = dual_triangulation(&f).unwrap();
                let removed: Vec<_> = before.diagonals().difference(after.diagonals()).collect();
                prop_assert_eq!(removed.len(), 1);
                prop_assert_eq!(flip(&before, *removed[0]).unwrap(), after);
            }
        }
    }

    #[test]
    fn flipping_twice_restores(n in 4usize..10, apex in 0usize..10, pick in 0usize..10) {
        let t = Triangulation::fan(n, apex % n).unwrap();
        let d = *t.diagonals().iter().nth(pick % t.diagonals().len()).unwrap();
        let once = flip(&t, d).unwrap();
        let new = *once.diagonals().difference(t.diagonals()).next().unwrap();
        prop_assert_eq!(flip(&once, new).unwrap(), t);
    }

    #[test]
    fn cobordism_row_is_preferred_minus_cone(n in 1usize..=8, shifts in prop::collection::vec(-3i64..=3, 8)) {
        let labels: Vec<String> = (1..=n).map(|i| format!("L{i}")).collect();
        let refs: Vec<&str> = labels.iter().map(String::as_str).collect();
        let d = cobcalc::cobordism::CobordismDatum::new("L0", &refs).with_shifts(&shifts[..n]).unwrap();
        let cone = cone_from_cobordism(&d).unwrap();
        prop_assert_eq!(k0_relation(&d), d.preferred.class() - k0_class(&cone.expr()));
        let r = rotate_preferred_end(&d).unwrap();
        prop_assert_eq!(k0_relation(&r), -k0_relation(&d));
    }

    #[test]
    fn presentations_ignore_row_operations(
        rows in prop::collection::vec(prop::collection::vec(-4i64..=4, 4), 1..5),
        coeffs in prop::collection::vec(-2i64..=2, 5),
    ) {
        let gens = ["a", "b", "c", "d"];
        let mut p = GroupPresentation::new(gens).unwrap();
        let mut combo = K0Class::zero();
        for (r, &k) in rows.iter().zip(&coeffs) {
            let mut class = K0Class::zero();
            for (g, &c) in gens.iter().zip(r) {
                class.add_term(g, c);
            }
            combo = combo + class.scale(k);
            p.push(Relation::new(RelationKind::Cobordism, &class)).unwrap();
        }
        let before = present_group(&p).unwrap();
        p.push(Relation::new(RelationKind::Cobordism, &combo)).unwrap();
        prop_assert_eq!(present_group(&p).unwrap(), before);
    }

    #[test]
    fn adding_a_stop_matches_its_claim(c in surface(), circle in 0usize..3) {
        let s = StoppedSurface { components: vec![c] };
        let circle = circle % s.components[0].circles();
        let r = add_stop(&s, CircleRef { component: 0, circle }).unwrap();
        prop_assert!(r.verdict, "{}", r.render());
    }

    #[test]
    fn homology_rank_formula(c in surface()) {
        let h = cobcalc::surface::surface_homology(&StoppedSurface { components: vec![c.clone()] }).unwrap();
        prop_assert_eq!(h, AbelianGroup::free(c.expected_rank()));
    }
}
