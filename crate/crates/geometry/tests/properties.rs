use mpae_geometry::fmin::{fmin_subsets, pairwise_rounds};
use mpae_geometry::oracle::{in_convex_hull, orthant_supported};
use mpae_geometry::{
    eliminate, enumerate_vertices, fmin_finite, fmin_region, gamma_closure, hull_constraints, LinearConstraint,
    Polyhedron, Rational, Region, Relation,
};
use num_bigint::BigInt;
use proptest::prelude::*;

fn r(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

fn points(dim: usize, max_len: usize, span: i64) -> impl Strategy<Value = Vec<Vec<Rational>>> {
    prop::collection::vec(prop::collection::vec(-span..=span, dim), 1..=max_len)
        .prop_map(|ps| ps.into_iter().map(|p| p.into_iter().map(r).collect()).collect())
}

fn points_any_dim(max_dim: usize, max_len: usize) -> impl Strategy<Value = Vec<Vec<Rational>>> {
    (1..=max_dim).prop_flat_map(move |d| points(d, max_len, 4))
}

fn rational_point(dim: usize) -> impl Strategy<Value = Vec<Rational>> {
    prop::collection::vec((-12i64..=12, 1i64..=3), dim)
        .prop_map(|v| v.into_iter().map(|(n, d)| Rational::new(BigInt::from(n), BigInt::from(d))).collect())
}

fn sorted(mut v: Vec<Vec<Rational>>) -> Vec<Vec<Rational>> {
    v.sort();
    v.dedup();
    v
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn closure_contains_hull_and_is_bounded(s in points_any_dim(4, 6)) {
        let region = fmin_region(&s).unwrap();
        let hull = hull_constraints(&s, &[]).unwrap();
        prop_assert!(hull.is_subset_of(&region));
        let finite = fmin_finite(&s).unwrap();
        prop_assert!(hull_constraints(&finite, &[]).unwrap().is_subset_of(&region));
        prop_assert!(region.is_bounded());
        for p in &s {
            prop_assert!(finite.contains(p));
        }
    }

    #[test]
    fn closure_is_idempotent(s in points_any_dim(3, 5)) {
        let region = fmin_region(&s).unwrap();
        let vertices = enumerate_vertices(&region).unwrap();
        prop_assert!(fmin_region(&vertices).unwrap().same_set(&region));
    }

    #[test]
    fn membership_matches_orthant_oracle(
        (s, ys) in (1usize..=3).prop_flat_map(|d| (points(d, 5, 3), prop::collection::vec(rational_point(d), 20)))
    ) {
        let region = fmin_region(&s).unwrap();
        for y in &ys {
            prop_assert_eq!(region.contains(y), orthant_supported(&s, y));
        }
    }

    #[test]
    fn planar_closure_is_hull_of_finite_closure(s in points(2, 8, 5)) {
        let region = fmin_region(&s).unwrap();
        let hull = hull_constraints(&fmin_finite(&s).unwrap(), &[]).unwrap();
        prop_assert_eq!(hull.canonical(), region);
    }

    #[test]
    fn finite_closure_chain(s in points_any_dim(4, 6)) {
        let d = s[0].len();
        let all = fmin_subsets(&s, None).unwrap();
        prop_assert_eq!(&all, &fmin_subsets(&s, Some(d)).unwrap());
        prop_assert_eq!(&all, &sorted(pairwise_rounds(&s, d.saturating_sub(1)).unwrap()));
        prop_assert_eq!(&all, &sorted(fmin_finite(&s).unwrap()));
    }

    #[test]
    fn hull_round_trip(s in points_any_dim(3, 7)) {
        let vertices = enumerate_vertices(&hull_constraints(&s, &[]).unwrap()).unwrap();
        let unique = sorted(s.clone());
        let extreme: Vec<Vec<Rational>> = unique
            .iter()
            .filter(|p| {
                let others: Vec<Vec<Rational>> = unique.iter().filter(|q| q != p).cloned().collect();
                others.is_empty() || !in_convex_hull(&others, p)
            })
            .cloned()
            .collect();
        prop_assert_eq!(vertices, extreme);
    }

    #[test]
    fn elimination_matches_slices(
        cs in prop::collection::vec((prop::collection::vec(-3i64..=3, 3), 0usize..3, -4i64..=4), 1..6),
        var in 0usize..3,
        probes in prop::collection::vec(rational_point(2), 12),
    ) {
        let relations = [Relation::Le, Relation::Lt, Relation::Eq];
        let constraints: Vec<LinearConstraint> = cs
            .iter()
            .map(|(a, rel, b)| LinearConstraint::new(a.iter().map(|&x| r(x)).collect(), relations[*rel], r(*b)))
            .collect();
        let p = Polyhedron::new(3, constraints).unwrap();
        let projected = eliminate(&Region::from(p.clone()), var).unwrap();
        for y in &probes {
            let mut slice = p.clone();
            let mut k = 0;
            for i in 0..3 {
                if i == var {
                    continue;
                }
                slice.push(LinearConstraint::coordinate(3, i, Relation::Eq, y[k].clone())).unwrap();
                k += 1;
            }
            prop_assert_eq!(projected.contains(y), !slice.is_empty());
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    #[test]
    fn gamma_closure_reproduces_region(s in (1usize..=3).prop_flat_map(|d| points(d, 4, 3))) {
        let g = gamma_closure(&s).unwrap();
        for p in &g {
            prop_assert!(in_convex_hull(&s, p));
        }
        let hull = hull_constraints(&fmin_finite(&g).unwrap(), &[]).unwrap();
        prop_assert_eq!(hull.canonical(), fmin_region(&s).unwrap());
    }
}

#[test]
fn dump_golden_triangle() {
    let seg = vec![vec![r(1), r(0)], vec![r(0), r(1)]];
    let dump = fmin_region(&seg).unwrap().dump();
    assert_eq!(dump, include_str!("golden/triangle.txt"));
}
