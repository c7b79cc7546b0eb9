mod common;

use leibniz_core::catalog::{self, CATALOG_SIZE};
use leibniz_core::inner::{mult_operator, Side};
use leibniz_core::linalg::{in_span, RatMatrix};
use leibniz_core::parse::{parse_algebra, to_bracket_text};
use leibniz_core::solver::{
    blocks_to_vector, build_system, check_der_closure, general_element, generic_dimension, solve,
    solve_space_with, EliminationOrder, SpaceKind,
};
use leibniz_core::{Algebra, Rational};
use proptest::prelude::*;

fn q(n: i64) -> Rational {
    Rational::integer(n)
}

/// Sparse algebra with small integer constants; usually not Leibniz.
fn arb_algebra(max_dim: usize) -> impl Strategy<Value = Algebra> {
    (1..=max_dim).prop_flat_map(|n| {
        prop::collection::vec(prop_oneof![4 => Just(0i64), 1 => -2i64..=2], n * n * n).prop_map(
            move |g| {
                let products = (0..n)
                    .flat_map(|i| (0..n).map(move |j| (i, j)))
                    .map(|(i, j)| {
                        let terms = (0..n)
                            .filter(|&k| g[(i * n + j) * n + k] != 0)
                            .map(|k| (q(g[(i * n + j) * n + k]), k))
                            .collect::<Vec<_>>();
                        (i, j, terms)
                    });
                Algebra::from_products("random", n, products).unwrap()
            },
        )
    })
}

fn arb_catalog_algebra() -> impl Strategy<Value = Algebra> {
    let all = catalog::sample_algebras();
    (0..all.len()).prop_map(move |i| all[i].clone())
}

/// Elementary column operations `(i, j, k)`: add `k` times column `i` to column `j`.
fn arb_unimodular(n: usize) -> impl Strategy<Value = (RatMatrix, RatMatrix)> {
    prop::collection::vec((0..n, 0..n, -2i64..=2), 0..6).prop_map(move |ops| {
        let mut p = RatMatrix::identity(n);
        let mut p_inv = RatMatrix::identity(n);
        for (i, j, k) in ops {
            if i == j || k == 0 {
                continue;
            }
            let mut e = RatMatrix::identity(n);
            e.set(i, j, q(k));
            let mut e_inv = RatMatrix::identity(n);
            e_inv.set(i, j, q(-k));
            p = p.matmul(&e).unwrap();
            p_inv = e_inv.matmul(&p_inv).unwrap();
        }
        (p, p_inv)
    })
}

/// The same algebra in the basis `f_i = sum_k p[k][i] e_k`.
fn change_basis(a: &Algebra, p: &RatMatrix, p_inv: &RatMatrix) -> Algebra {
    let n = a.dim();
    let mut products = Vec::new();
    for i in 0..n {
        for j in 0..n {
            let br = a.bracket(&p.column(i), &p.column(j)).unwrap();
            let coords = p_inv.mul_vec(&br).unwrap();
            let terms = coords
                .into_iter()
                .enumerate()
                .filter(|(_, c)| !c.is_zero())
                .map(|(k, c)| (c, k))
                .collect::<Vec<_>>();
            products.push((i, j, terms));
        }
    }
    Algebra::from_products(format!("{}'", a.name()), n, products).unwrap()
}

fn flatten(m: &RatMatrix) -> Vec<Rational> {
    m.entries().to_vec()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn dims_agree_with_independent_oracle(a in arb_algebra(3)) {
        for kind in SpaceKind::ALL {
            let sp = solve(&a, kind);
            prop_assert_eq!(sp.dim(), common::oracle_dim(&a, kind));
            for blocks in sp.elements() {
                prop_assert!(common::residual(&a, kind, &blocks).iter().all(Rational::is_zero));
            }
        }
    }

    #[test]
    fn elimination_orders_span_the_same_space(a in arb_algebra(3)) {
        for kind in SpaceKind::ALL {
            let sys = build_system(&a, kind);
            let fwd = solve_space_with(&sys, EliminationOrder::FirstToLast);
            let rev = solve_space_with(&sys, EliminationOrder::LastToFirst);
            prop_assert_eq!(fwd.dim(), rev.dim());
            for blocks in fwd.elements() {
                prop_assert!(rev.contains(&blocks));
            }
        }
    }

    #[test]
    fn der_is_closed_under_commutator(a in arb_algebra(3)) {
        let sp = solve(&a, SpaceKind::Der);
        prop_assert!(check_der_closure(&sp, &a).unwrap().closed);
    }

    #[test]
    fn bider_projects_into_der_and_antider(a in arb_algebra(3)) {
        let der = solve(&a, SpaceKind::Der);
        let anti = solve(&a, SpaceKind::AntiDer);
        let bider = solve(&a, SpaceKind::BiDer);
        prop_assert!(bider.dim() <= der.dim() + anti.dim());
        for blocks in bider.elements() {
            prop_assert!(der.contains(&blocks[..1]));
            prop_assert!(anti.contains(&blocks[1..]));
        }
    }

    #[test]
    fn general_element_evaluations_are_members(
        a in arb_algebra(3),
        params in prop::collection::vec(-3i64..=3, 32),
    ) {
        for kind in SpaceKind::ALL {
            let sp = solve(&a, kind);
            let g = general_element(&sp);
            let values: Vec<Rational> = params.iter().take(g.params.len()).map(|&v| q(v)).collect();
            let blocks = g.evaluate(&values);
            prop_assert!(common::residual(&a, kind, &blocks).iter().all(Rational::is_zero));
            prop_assert!(sp.contains_vector(&blocks_to_vector(&blocks)));
        }
    }

    #[test]
    fn parser_round_trips_rendered_algebras(a in arb_algebra(4)) {
        let text = to_bracket_text(&a);
        let parsed = parse_algebra(&text).unwrap().with_name(a.name());
        prop_assert_eq!(&parsed, &a);
        prop_assert_eq!(to_bracket_text(&parsed), text);
    }

    #[test]
    fn dims_are_basis_independent(
        (a, (p, p_inv)) in arb_catalog_algebra().prop_flat_map(|a| {
            let n = a.dim();
            (Just(a), arb_unimodular(n))
        })
    ) {
        let b = change_basis(&a, &p, &p_inv);
        prop_assert!(b.check_leibniz().holds);
        prop_assert_eq!(b.lower_central_series().dims, a.lower_central_series().dims);
        for kind in SpaceKind::ALL {
            prop_assert_eq!(solve(&b, kind).dim(), solve(&a, kind).dim());
        }
    }

    #[test]
    fn right_multiplications_are_derivations(
        a in arb_catalog_algebra(),
        x in prop::collection::vec(-3i64..=3, 4),
    ) {
        let x: Vec<Rational> = x.into_iter().map(q).collect();
        let der = solve(&a, SpaceKind::Der);
        let r = mult_operator(&a, Side::Right, &x).unwrap();
        prop_assert!(common::der_residual(&a, &r.matrix).iter().all(Rational::is_zero));
        prop_assert!(der.contains(std::slice::from_ref(&r.matrix)));
    }

    #[test]
    fn specialization_never_drops_below_generic(
        id in prop::sample::select(vec![13usize, 14, 20]),
        num in -9i64..=9,
        den in 1i64..=4,
    ) {
        let alpha = Rational::new(num, den).unwrap();
        prop_assume!(!(id == 20 && alpha.is_one()));
        let a = catalog::get(id, Some(alpha)).unwrap();
        for kind in SpaceKind::ALL {
            let generic = generic_dimension(id, kind, &[]).unwrap().dim;
            prop_assert!(solve(&a, kind).dim() >= generic);
        }
    }
}

#[test]
fn bareiss_oracle_matches_known_ranks() {
    let m = |rows: &[&[i64]]| -> Vec<Vec<Rational>> {
        rows.iter()
            .map(|r| r.iter().map(|&v| q(v)).collect())
            .collect()
    };
    assert_eq!(
        common::rational_rank(&m(&[&[1, 2, 3], &[2, 4, 6], &[1, 0, 1]])),
        2
    );
    assert_eq!(common::rational_rank(&m(&[&[0, 0], &[0, 0]])), 0);
    assert_eq!(common::rational_rank(&m(&[&[0, 1], &[1, 0]])), 2);
    let halves = vec![
        vec![Rational::new(1, 2).unwrap(), Rational::new(1, 3).unwrap()],
        vec![q(3), q(2)],
    ];
    assert_eq!(common::rational_rank(&halves), 1);
}

#[test]
fn oracle_reproduces_zero_algebra_counts() {
    let z = Algebra::zero("z", 4).unwrap();
    assert_eq!(common::oracle_dim(&z, SpaceKind::Der), 16);
    assert_eq!(common::oracle_dim(&z, SpaceKind::AntiDer), 16);
    assert_eq!(common::oracle_dim(&z, SpaceKind::BiDer), 32);
}

#[test]
fn every_catalog_dimension_matches_oracle() {
    for a in catalog::sample_algebras() {
        for kind in SpaceKind::ALL {
            assert_eq!(
                solve(&a, kind).dim(),
                common::oracle_dim(&a, kind),
                "{} {kind}",
                a.name()
            );
        }
    }
    assert_eq!(catalog::list().len(), CATALOG_SIZE);
}

#[test]
fn inner_derivations_lie_in_der() {
    for a in catalog::sample_algebras() {
        let der = solve(&a, SpaceKind::Der);
        for i in 0..a.dim() {
            let r = mult_operator(&a, Side::Right, &a.basis_vector(i)).unwrap();
            let basis: Vec<Vec<Rational>> = der.elements().iter().map(|b| flatten(&b[0])).collect();
            assert!(
                in_span(&basis, &flatten(&r.matrix)).unwrap(),
                "{} R_e{}",
                a.name(),
                i + 1
            );
        }
    }
}
