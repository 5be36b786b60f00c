//! Randomized cross-checks between independent computation routes.

use std::cmp::Ordering;

use cayleykit::affine::normalize_full_dim;
use cayleykit::bounds::{cmp_exprs, lz_cube_constant_expr, volume_bound_expr};
use cayleykit::cayley::{decompose, minimal_cayley_codim};
use cayleykit::ehrhart::{count, degree_via_interior, ehrhart_reciprocity_check, h_star};
use cayleykit::enumerate::{lattice_points, naive_lattice_points};
use cayleykit::polytope::{cayley_sum, LatticePolytope};
use cayleykit::vector::LatticeVector;
use num_bigint::{BigInt, BigUint};
use num_traits::One;
use proptest::prelude::*;

fn hull(dim: usize, width: i64, max_points: usize) -> impl Strategy<Value = LatticePolytope> {
    prop::collection::vec(prop::collection::vec(-width..=width, dim), 1..=max_points)
        .prop_map(|rows| {
            let pts = rows.iter().map(|r| LatticeVector::from_i64(r)).collect();
            LatticePolytope::new(pts).expect("a nonempty point set always hulls")
        })
}

fn small_polytope() -> impl Strategy<Value = LatticePolytope> {
    (1usize..=3).prop_flat_map(|dim| hull(dim, 3, 6))
}

fn binomial(n: usize, k: usize) -> BigInt {
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    acc
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    // The volume read off the h*-coefficients must match the top finite
    // difference of the raw counting function, and the degree must match
    // its characterization through interior point counts.
    #[test]
    fn h_star_agrees_with_raw_counts(p in small_polytope()) {
        let hs = h_star(&p).unwrap();
        let norm = normalize_full_dim(&p).unwrap();
        let n = norm.polytope.ambient_dim();
        let mut vol = BigInt::ZERO;
        for i in 0..=n {
            let f = count(&norm.polytope, &BigInt::from(n - i)).unwrap();
            let term = binomial(n, i) * f;
            if i % 2 == 0 {
                vol += term;
            } else {
                vol -= term;
            }
        }
        prop_assert_eq!(hs.normalized_volume(), vol);
        prop_assert_eq!(hs.degree(), degree_via_interior(&p).unwrap());
        prop_assert_eq!(&hs.coefficients()[0], &BigInt::one());
        prop_assert!(hs.coefficients().iter().all(|c| c >= &BigInt::ZERO));
    }

    #[test]
    fn reciprocity_holds(p in small_polytope()) {
        prop_assert!(ehrhart_reciprocity_check(&p).unwrap());
    }

    #[test]
    fn normalization_round_trips(p in small_polytope()) {
        let norm = normalize_full_dim(&p).unwrap();
        let forward_image = norm.forward.apply_to_polytope(&p).unwrap();
        prop_assert_eq!(forward_image.vertices(), norm.polytope.vertices());
        let back = norm.section.apply_to_polytope(&norm.polytope).unwrap();
        prop_assert_eq!(back.vertices(), p.vertices());
        let id = norm.forward.compose(&norm.section).unwrap();
        prop_assert_eq!(&id, &cayleykit::affine::AffineLatticeMap::identity(norm.polytope.ambient_dim()));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    // The fast enumerator walks a variable elimination order over the facet
    // system; the naive one scans the whole bounding box. They must agree
    // point for point, boundary and interior alike.
    #[test]
    fn enumeration_matches_the_naive_scan(
        p in (1usize..=3).prop_flat_map(|dim| hull(dim, 2, 5)),
        m in 1i64..=2,
    ) {
        let m = BigInt::from(m);
        for interior in [false, true] {
            let fast = lattice_points(&p, &m, interior).unwrap();
            let slow = naive_lattice_points(&p, &m, interior).unwrap();
            prop_assert_eq!(&fast, &slow);
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    // Cayley sums of q-dimensional factors never exceed degree q: the first
    // s dilations of the sum have empty interior.
    #[test]
    fn cayley_sums_bound_the_degree(
        (q, factors) in (1usize..=2, 1usize..=2).prop_flat_map(|(q, s)| {
            (Just(q), prop::collection::vec(hull(q, 2, 4), s + 1))
        }),
    ) {
        let sum = cayley_sum(&factors).unwrap();
        let hs = h_star(&sum).unwrap();
        prop_assert!(hs.degree() <= q);
        prop_assert!(hs.codegree() >= factors.len());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    // The constructive decomposition must come back with its proved
    // inequalities intact and a codimension within the dimension. The
    // degree bound holds for any Cayley structure, so in particular here.
    #[test]
    fn pipeline_output_is_consistent(p in small_polytope()) {
        let dec = decompose(&p).unwrap();
        let hs = h_star(&p).unwrap();
        prop_assert_eq!(dec.q() + dec.s(), p.affine_dim());
        prop_assert!(dec.q() <= p.affine_dim());
        prop_assert!(hs.degree() <= dec.q());
        prop_assert!(dec.bounds().iter().filter(|c| c.hard).all(|c| c.held));
        prop_assert_eq!(dec.factors().len(), dec.s() + 1);
    }

    // Exhaustion finds the true minimum, so it can never beat the pipeline
    // from above, and the degree bound applies to the minimal structure too.
    #[test]
    fn oracle_never_exceeds_the_pipeline(
        p in (1usize..=3).prop_flat_map(|dim| hull(dim, 2, 5)),
    ) {
        let (q_star, odec) = minimal_cayley_codim(&p, None).unwrap();
        prop_assert_eq!(odec.q(), q_star);
        let dec = decompose(&p).unwrap();
        prop_assert!(q_star <= dec.q());
        prop_assert!(h_star(&p).unwrap().degree() <= q_star);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    // Digit-count mode must describe exactly the integer that exact mode
    // materializes, whenever the latter is feasible.
    #[test]
    fn digit_summaries_describe_the_exact_value(d in 0usize..=1, k in 1u32..=3) {
        let expr = volume_bound_expr(d, &BigUint::from(k)).unwrap();
        let exact = expr.exact().unwrap().to_string();
        prop_assert_eq!(expr.digit_count().unwrap(), BigUint::from(exact.len()));
        let lead = expr.leading_digits(12).unwrap();
        prop_assert!(exact.starts_with(&lead));
    }

    #[test]
    fn cube_constant_summaries_describe_the_exact_value(q in 1usize..=3, k in 1u32..=3) {
        let expr = lz_cube_constant_expr(q, &BigUint::from(k)).unwrap();
        let exact = expr.exact().unwrap().to_string();
        prop_assert_eq!(expr.digit_count().unwrap(), BigUint::from(exact.len()));
        let lead = expr.leading_digits(12).unwrap();
        prop_assert!(exact.starts_with(&lead));
    }

    // The bound grows strictly in both the degree and the leading
    // coefficient, checked without materializing any of the values.
    #[test]
    fn volume_bound_is_strictly_monotone(d in 1usize..=3, k in 1u32..=4) {
        let base = volume_bound_expr(d, &BigUint::from(k)).unwrap();
        let up_k = volume_bound_expr(d, &BigUint::from(k + 1)).unwrap();
        let up_d = volume_bound_expr(d + 1, &BigUint::from(k)).unwrap();
        prop_assert_eq!(cmp_exprs(&base, &up_k).unwrap(), Ordering::Less);
        prop_assert_eq!(cmp_exprs(&base, &up_d).unwrap(), Ordering::Less);
    }
}
