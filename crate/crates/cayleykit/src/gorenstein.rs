//! Gorenstein polytopes: the dual polytope via cone polarity, the explicit
//! double-dual isomorphism, and the sharpened Cayley codimension bound for
//! the Gorenstein case.
//!
//! A full-dimensional `P` is Gorenstein exactly when its h* vector is
//! palindromic; equivalently some dilate `rP` (with `r = n + 1 − d`, the
//! codegree) has a unique interior lattice point `x`. The cone over
//! `P × {1}` then has a polar dual that is again a cone over a lattice
//! polytope, living in the hyperplane where the lift `x̂ = (x, r)` pairs
//! to one.

use num_bigint::BigInt;
use num_traits::One;
use serde::Serialize;

use crate::affine::{normalize_full_dim, AffineLatticeMap};
use crate::cayley::{decompose, minimal_cayley_codim};
use crate::ehrhart::{degree, h_star, is_gorenstein};
use crate::enumerate::lattice_points;
use crate::error::{Error, Result};
use crate::matrix::IntMatrix;
use crate::polytope::LatticePolytope;
use crate::vector::LatticeVector;

/// Proof data for the Gorenstein property of one polytope, including its
/// dual.
///
/// Invariants checked at construction: `r·P` has exactly one interior
/// lattice point and no smaller dilate has any; h* is palindromic; every
/// facet normal of the cone over `P × {1}` pairs to one against `x̂`; the
/// dual has the same dimension and the same degree as `P`.
pub struct GorensteinCertificate {
    index: usize,
    unique_interior_point: LatticeVector,
    dual: LatticePolytope,
    embedding: AffineLatticeMap,
    onto_dual: AffineLatticeMap,
}

impl GorensteinCertificate {
    /// The codegree `r = n + 1 − d`; the smallest dilate of `P` with an
    /// interior lattice point.
    pub fn index(&self) -> usize {
        self.index
    }

    /// The single interior lattice point of `rP`.
    pub fn unique_interior_point(&self) -> &LatticeVector {
        &self.unique_interior_point
    }

    /// The dual Gorenstein polytope, in normalized full-dimensional
    /// coordinates.
    pub fn dual(&self) -> &LatticePolytope {
        &self.dual
    }

    /// Common degree of the polytope and its dual.
    pub fn degree(&self) -> usize {
        self.dual.ambient_dim() + 1 - self.index
    }

    /// Affine embedding `ℤ^n → ℤ^{n+1}` carrying [`dual`](Self::dual) onto
    /// the hull of the cone's facet normals inside the pairing-one
    /// hyperplane.
    pub fn embedding(&self) -> &AffineLatticeMap {
        &self.embedding
    }

    /// Left inverse of [`embedding`](Self::embedding): flattens the
    /// pairing-one hyperplane onto the dual's coordinates.
    pub fn onto_dual(&self) -> &AffineLatticeMap {
        &self.onto_dual
    }
}

/// Dualize a full-dimensional Gorenstein polytope through the polarity of
/// its height-one cone.
///
/// The facet inequalities `⟨a_F, x⟩ ≤ b_F` of `P` lift to the facet normals
/// `(−a_F, b_F)` of the cone over `P × {1}`; the Gorenstein condition is
/// that all of them pair to one against `x̂ = (x, r)`, which makes their
/// hull an `n`-dimensional lattice polytope in that affine hyperplane. The
/// returned certificate carries it back to `ℤ^n`.
pub fn gorenstein_dual(p: &LatticePolytope) -> Result<GorensteinCertificate> {
    if !p.is_full_dimensional() {
        return Err(Error::NotFullDimensional {
            affine_dim: p.affine_dim(),
            ambient_dim: p.ambient_dim(),
        });
    }
    let n = p.ambient_dim();
    let hs = h_star(p)?;
    if !hs.is_palindromic() {
        return Err(Error::NotGorenstein("h* vector is not palindromic".into()));
    }
    let d = hs.degree();
    let r = n + 1 - d;
    let r_big = BigInt::from(r);

    let interior = lattice_points(p, &r_big, true)?;
    if interior.len() != 1 {
        return Err(Error::invariant(format!(
            "palindromic h* but {} interior points at the codegree dilate",
            interior.len()
        )));
    }
    let x_star = interior.into_iter().next().unwrap();

    let mut normals = Vec::new();
    for facet in p.facets().inequalities() {
        let pairing = &facet.offset * &r_big - facet.normal.dot(&x_star);
        if !pairing.is_one() {
            return Err(Error::invariant(
                "cone facet normal does not pair to one against the Gorenstein point",
            ));
        }
        let mut u: Vec<BigInt> = facet.normal.coords().iter().map(|a| -a).collect();
        u.push(facet.offset.clone());
        normals.push(LatticeVector::new(u));
    }

    let hull = LatticePolytope::new(normals)?;
    if !hull.dropped_points().is_empty() {
        return Err(Error::invariant("a cone facet normal is not a dual vertex"));
    }
    if hull.affine_dim() != n {
        return Err(Error::invariant("dual polytope has the wrong dimension"));
    }
    let norm = normalize_full_dim(&hull)?;
    let dual = norm.polytope;

    let dual_hs = h_star(&dual)?;
    if dual_hs.degree() != d {
        return Err(Error::invariant("dual polytope has the wrong degree"));
    }
    if !dual_hs.is_palindromic() {
        return Err(Error::invariant("dual polytope is not Gorenstein"));
    }

    Ok(GorensteinCertificate {
        index: r,
        unique_interior_point: x_star,
        dual,
        embedding: norm.section,
        onto_dual: norm.forward,
    })
}

/// Dualize twice and produce the explicit unimodular map identifying `p`
/// with the double dual.
///
/// The vertices of `p` lift to the rays `(v, 1)` of its cone, which are the
/// facet normals of the dual cone; pulling them back through the transpose
/// of the embedding's linear extension lands them on the facet normals of
/// the cone over the dual, that is, on the double dual's defining hull.
/// Returns the second certificate and the map, after checking that the map
/// is unimodular and carries the vertex set of `p` exactly onto the double
/// dual's.
pub fn involution_map(
    p: &LatticePolytope,
    cert: &GorensteinCertificate,
) -> Result<(GorensteinCertificate, AffineLatticeMap)> {
    let n = p.ambient_dim();
    let emb = cert.embedding();
    if emb.input_dim() != n || emb.output_dim() != n + 1 {
        return Err(Error::invariant("certificate embedding has the wrong shape"));
    }

    // Linear extension of the embedding: (w, t) ↦ M w + t m₀. Unimodular
    // because the pairing-one hyperplane lattice splits off ℤ^{n+1}.
    let mut psi_rows = Vec::with_capacity(n + 1);
    for i in 0..=n {
        let mut row: Vec<BigInt> = emb.matrix().row(i).to_vec();
        row.push(emb.translation().coords()[i].clone());
        psi_rows.push(row);
    }
    let psi = IntMatrix::from_rows(psi_rows);
    if !psi.is_unimodular() {
        return Err(Error::invariant("embedding does not extend unimodularly"));
    }
    let psi_t = psi.transpose();

    let mut lift_rows = Vec::with_capacity(n + 1);
    let mut lift_shift = Vec::with_capacity(n + 1);
    for i in 0..=n {
        lift_rows.push(psi_t.row(i)[..n].to_vec());
        lift_shift.push(psi_t.row(i)[n].clone());
    }
    let pullback = AffineLatticeMap::new(
        IntMatrix::from_rows(lift_rows),
        LatticeVector::new(lift_shift),
    )?;

    let double = gorenstein_dual(cert.dual())?;
    let map = double.onto_dual().compose(&pullback)?;
    if !map.is_unimodular() {
        return Err(Error::invariant("double dual map is not unimodular"));
    }
    if map.apply_to_polytope(p)? != double.dual {
        return Err(Error::invariant(
            "double dual map does not carry the polytope onto the double dual",
        ));
    }
    Ok((double, map))
}

/// Outcome of checking the Gorenstein Cayley bound `q ≤ 2d − 1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum BoundStatus {
    Pass,
    Fail,
    Inconclusive,
}

/// Report from [`verify_gorenstein_cayley_bound`].
#[derive(Clone, Debug, Serialize)]
pub struct GorensteinBoundReport {
    pub degree: usize,
    /// `2d − 1`, clamped to zero for degree zero.
    pub bound: usize,
    /// Codimension achieved by the constructive pipeline.
    pub q_pipeline: usize,
    /// True minimal codimension, when the vertex budget allowed the search.
    pub q_oracle: Option<usize>,
    pub status: BoundStatus,
}

/// Check `q ≤ 2d − 1` for a Gorenstein polytope, via the constructive
/// pipeline and, within the vertex budget, the exhaustive minimum.
///
/// The verdict uses the best codimension available. When only the pipeline
/// ran and it overshot the bound, the result is inconclusive rather than a
/// failure: the pipeline makes no minimality promise.
pub fn verify_gorenstein_cayley_bound(
    p: &LatticePolytope,
    oracle_budget: Option<usize>,
) -> Result<GorensteinBoundReport> {
    if !is_gorenstein(p)? {
        return Err(Error::NotGorenstein("h* vector is not palindromic".into()));
    }
    let d = degree(p)?;
    let bound = if d == 0 { 0 } else { 2 * d - 1 };
    let q_pipeline = decompose(p)?.q();
    let q_oracle = match minimal_cayley_codim(p, oracle_budget) {
        Ok((q, _)) => Some(q),
        Err(Error::BudgetExceeded { .. }) => None,
        Err(e) => return Err(e),
    };
    let q_best = q_oracle.map_or(q_pipeline, |q| q.min(q_pipeline));
    let status = if q_best <= bound {
        BoundStatus::Pass
    } else if q_oracle.is_some() {
        BoundStatus::Fail
    } else {
        BoundStatus::Inconclusive
    };
    Ok(GorensteinBoundReport {
        degree: d,
        bound,
        q_pipeline,
        q_oracle,
        status,
    })
}

/// The 16 reflexive polygons, one representative per unimodular class,
/// named after the toric surfaces they define where those have standard
/// names and after their boundary point count otherwise.
///
/// Each has the origin as its unique interior lattice point, so all are
/// Gorenstein of index 1 and degree 2. Dualization permutes the classes:
/// `p2 ↔ tri_b9`, `p1xp1 ↔ square_b8`, `f1 ↔ quad_b8`, `p112 ↔ tri_b8`,
/// `bl2p2 ↔ pent_b7`, `quad_b5 ↔ quad_b7`, and the four with six boundary
/// points are self-dual.
pub fn reflexive_polygons() -> Vec<LatticePolytope> {
    let data: [(&str, &[[i64; 2]]); 16] = [
        ("p2", &[[1, 0], [0, 1], [-1, -1]]),
        ("p1xp1", &[[1, 0], [0, 1], [-1, 0], [0, -1]]),
        ("f1", &[[1, 0], [0, 1], [-1, -1], [0, -1]]),
        ("p112", &[[1, 0], [0, 1], [-1, -2]]),
        ("bl2p2", &[[1, 0], [0, 1], [-1, -1], [-1, 0], [0, -1]]),
        ("quad_b5", &[[1, 0], [0, 1], [-1, -1], [-1, -2]]),
        (
            "hexagon",
            &[[1, 0], [1, 1], [0, 1], [-1, 0], [-1, -1], [0, -1]],
        ),
        ("p123", &[[1, 0], [0, 1], [-2, -3]]),
        ("quad_b6", &[[1, 0], [0, 1], [-1, 0], [-1, -2]]),
        ("pent_b6", &[[0, 1], [1, 0], [1, -1], [-1, 0], [-1, -1]]),
        ("pent_b7", &[[1, 1], [-1, 1], [-1, 0], [0, -1], [1, -1]]),
        ("quad_b7", &[[1, 1], [-2, 1], [-1, 0], [1, -1]]),
        ("square_b8", &[[1, 1], [1, -1], [-1, 1], [-1, -1]]),
        ("quad_b8", &[[1, 1], [-2, 1], [0, -1], [1, -1]]),
        ("tri_b8", &[[1, 1], [-3, 1], [1, -1]]),
        ("tri_b9", &[[-1, -1], [2, -1], [-1, 2]]),
    ];
    data.iter()
        .map(|(name, verts)| {
            let pts: Vec<LatticeVector> = verts
                .iter()
                .map(|v| LatticeVector::from_i64(&[v[0], v[1]]))
                .collect();
            LatticePolytope::new(pts)
                .expect("frozen polygon data is valid")
                .with_name(*name)
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cayley::pipeline::embed_and_frame;
    use crate::cayley::BoundMode;
    use num_traits::Zero;

    fn unit_square() -> LatticePolytope {
        LatticePolytope::from_i64_points(&[&[0, 0], &[1, 0], &[0, 1], &[1, 1]]).unwrap()
    }

    fn double_tetrahedron() -> LatticePolytope {
        LatticePolytope::from_i64_points(&[&[0, 0, 0], &[2, 0, 0], &[0, 2, 0], &[0, 0, 2]])
            .unwrap()
    }

    #[test]
    fn unit_square_is_self_dual() {
        let cert = gorenstein_dual(&unit_square()).unwrap();
        assert_eq!(cert.index(), 2);
        assert_eq!(
            cert.unique_interior_point(),
            &LatticeVector::from_i64(&[1, 1])
        );
        assert_eq!(cert.degree(), 1);
        // the four cone normals flatten to a unimodular image of the square
        let hs = h_star(cert.dual()).unwrap();
        assert_eq!(hs.normalized_volume(), BigInt::from(2));
        assert_eq!(hs.degree(), 1);
        assert_eq!(cert.dual().n_vertices(), 4);
    }

    #[test]
    fn unit_square_double_dual_comes_back() {
        let cert = gorenstein_dual(&unit_square()).unwrap();
        let (double, map) = involution_map(&unit_square(), &cert).unwrap();
        assert_eq!(
            map.apply_to_polytope(&unit_square()).unwrap(),
            *double.dual()
        );
        assert!(map.is_unimodular());
    }

    #[test]
    fn double_segment_is_self_dual() {
        let seg = LatticePolytope::from_i64_points(&[&[0], &[2]]).unwrap();
        let cert = gorenstein_dual(&seg).unwrap();
        assert_eq!(cert.index(), 1);
        assert_eq!(cert.degree(), 1);
        let hs = h_star(cert.dual()).unwrap();
        assert_eq!(hs.normalized_volume(), BigInt::from(2));
        involution_map(&seg, &cert).unwrap();
    }

    #[test]
    fn unimodular_simplices_dualize_to_unimodular_simplices() {
        for n in 1..=3usize {
            let mut pts = vec![vec![0i64; n]];
            for i in 0..n {
                let mut e = vec![0i64; n];
                e[i] = 1;
                pts.push(e);
            }
            let refs: Vec<&[i64]> = pts.iter().map(|p| p.as_slice()).collect();
            let simplex = LatticePolytope::from_i64_points(&refs).unwrap();
            let cert = gorenstein_dual(&simplex).unwrap();
            assert_eq!(cert.index(), n + 1);
            assert_eq!(cert.degree(), 0);
            assert_eq!(
                h_star(cert.dual()).unwrap().normalized_volume(),
                BigInt::one()
            );
            involution_map(&simplex, &cert).unwrap();
        }
    }

    #[test]
    fn double_tetrahedron_dualizes_with_degree_two() {
        let cert = gorenstein_dual(&double_tetrahedron()).unwrap();
        assert_eq!(cert.index(), 2);
        assert_eq!(cert.degree(), 2);
        involution_map(&double_tetrahedron(), &cert).unwrap();
    }

    #[test]
    fn non_gorenstein_input_is_rejected() {
        // [0,3] has h* = (1, 2)
        let seg = LatticePolytope::from_i64_points(&[&[0], &[3]]).unwrap();
        assert!(matches!(
            gorenstein_dual(&seg),
            Err(Error::NotGorenstein(_))
        ));
    }

    #[test]
    fn all_sixteen_reflexive_polygons_certify() {
        let polys = reflexive_polygons();
        assert_eq!(polys.len(), 16);
        for p in &polys {
            let cert = gorenstein_dual(p).unwrap();
            assert_eq!(cert.index(), 1, "{:?}", p.name());
            assert_eq!(cert.degree(), 2, "{:?}", p.name());
            assert_eq!(
                cert.unique_interior_point(),
                &LatticeVector::zero(2),
                "{:?}",
                p.name()
            );
            involution_map(p, &cert).unwrap();
        }
    }

    #[test]
    fn reflexive_duality_pairs_volumes() {
        let polys = reflexive_polygons();
        let vol = |p: &LatticePolytope| h_star(p).unwrap().normalized_volume();
        let find = |name: &str| polys.iter().find(|p| p.name() == Some(name)).unwrap();
        for (a, b) in [
            ("p2", "tri_b9"),
            ("p1xp1", "square_b8"),
            ("f1", "quad_b8"),
            ("p112", "tri_b8"),
            ("bl2p2", "pent_b7"),
            ("quad_b5", "quad_b7"),
        ] {
            let ca = gorenstein_dual(find(a)).unwrap();
            let cb = gorenstein_dual(find(b)).unwrap();
            assert_eq!(vol(ca.dual()), vol(find(b)));
            assert_eq!(vol(cb.dual()), vol(find(a)));
        }
        for name in ["hexagon", "p123", "quad_b6", "pent_b6"] {
            let cert = gorenstein_dual(find(name)).unwrap();
            assert_eq!(vol(cert.dual()), vol(find(name)));
        }
    }

    #[test]
    fn cayley_bound_is_tight_for_dilated_simplices() {
        let seg = LatticePolytope::from_i64_points(&[&[0], &[2]]).unwrap();
        let report = verify_gorenstein_cayley_bound(&seg, None).unwrap();
        assert_eq!(report.degree, 1);
        assert_eq!(report.bound, 1);
        assert_eq!(report.q_oracle, Some(1));
        assert_eq!(report.status, BoundStatus::Pass);

        let report = verify_gorenstein_cayley_bound(&double_tetrahedron(), None).unwrap();
        assert_eq!(report.degree, 2);
        assert_eq!(report.bound, 3);
        assert_eq!(report.q_oracle, Some(3));
        assert_eq!(report.status, BoundStatus::Pass);
    }

    #[test]
    fn cayley_bound_needs_the_oracle_for_the_square() {
        // pipeline overshoots (q = 2), the oracle certifies q* = 1
        let report = verify_gorenstein_cayley_bound(&unit_square(), None).unwrap();
        assert_eq!(report.bound, 1);
        assert_eq!(report.q_pipeline, 2);
        assert_eq!(report.q_oracle, Some(1));
        assert_eq!(report.status, BoundStatus::Pass);

        let starved = verify_gorenstein_cayley_bound(&unit_square(), Some(3)).unwrap();
        assert_eq!(starved.q_oracle, None);
        assert_eq!(starved.status, BoundStatus::Inconclusive);
    }

    #[test]
    fn degree_zero_bound_clamps_to_zero() {
        let simplex = LatticePolytope::from_i64_points(&[&[0, 0], &[1, 0], &[0, 1]]).unwrap();
        let report = verify_gorenstein_cayley_bound(&simplex, None).unwrap();
        assert_eq!(report.degree, 0);
        assert_eq!(report.bound, 0);
        assert_eq!(report.status, BoundStatus::Pass);
    }

    #[test]
    fn dual_frame_fractional_sum_stays_under_the_degree() {
        // on the dual side, the fractional coefficients of {x} sum to ≤ d
        let mut targets = vec![unit_square(), double_tetrahedron()];
        targets.extend(reflexive_polygons());
        for p in &targets {
            let cert = gorenstein_dual(p).unwrap();
            let d = cert.degree();
            let (_, _, state) = embed_and_frame(cert.dual(), BoundMode::Hard).unwrap();
            let mut sum = num_rational::BigRational::zero();
            for &i in state.f0_indices() {
                sum += &state.b_x()[i];
            }
            assert!(
                sum <= num_rational::BigRational::from_integer(BigInt::from(d)),
                "fractional sum exceeds degree for {:?}",
                p.name()
            );
        }
    }
}
