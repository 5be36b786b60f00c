//! Lattice polytopes with exact vertex and facet representations.
//!
//! A [`LatticePolytope`] stores the irredundant vertex set of the convex hull
//! of its input points. The H-representation ([`FacetSystem`]) is computed on
//! first use via the double-description cone of the lifted points and cached.

use std::sync::OnceLock;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::dd::dual_description;
use crate::error::{Error, Result};
use crate::matrix::IntMatrix;
use crate::vector::LatticeVector;

/// One inequality `⟨normal, x⟩ ≤ offset` with a primitive normal.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Facet {
    pub normal: LatticeVector,
    pub offset: BigInt,
}

impl Facet {
    /// `offset − ⟨normal, p⟩`; nonnegative on the polytope, zero on the facet.
    pub fn slack(&self, p: &LatticeVector) -> BigInt {
        &self.offset - self.normal.dot(p)
    }
}

/// One affine-hull equation `⟨normal, x⟩ = offset` with a primitive normal.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Equation {
    pub normal: LatticeVector,
    pub offset: BigInt,
}

/// Irredundant H-representation: facet inequalities plus affine-hull equations.
///
/// For a zero-dimensional polytope the point is cut out by the equations alone
/// and the inequality list is empty.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FacetSystem {
    ambient_dim: usize,
    inequalities: Vec<Facet>,
    equations: Vec<Equation>,
}

impl FacetSystem {
    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn inequalities(&self) -> &[Facet] {
        &self.inequalities
    }

    pub fn equations(&self) -> &[Equation] {
        &self.equations
    }

    /// Dimension of the affine hull: ambient dimension minus one per equation.
    pub fn affine_dim(&self) -> usize {
        self.ambient_dim - self.equations.len()
    }

    /// Membership in the closed polytope.
    pub fn contains(&self, p: &LatticeVector) -> bool {
        self.equations
            .iter()
            .all(|e| e.normal.dot(p) == e.offset)
            && self
                .inequalities
                .iter()
                .all(|f| f.normal.dot(p) <= f.offset)
    }

    /// Membership in the relative interior (equations exact, inequalities strict).
    pub fn contains_in_relative_interior(&self, p: &LatticeVector) -> bool {
        self.equations
            .iter()
            .all(|e| e.normal.dot(p) == e.offset)
            && self
                .inequalities
                .iter()
                .all(|f| f.normal.dot(p) < f.offset)
    }

    /// The system for the dilate `mP`: same normals, offsets scaled by `m ≥ 1`.
    ///
    /// Not valid at `m = 0`, where the dilate degenerates to the origin.
    pub fn dilate(&self, m: &BigInt) -> FacetSystem {
        assert!(m.is_positive(), "dilating an H-representation needs m >= 1");
        FacetSystem {
            ambient_dim: self.ambient_dim,
            inequalities: self
                .inequalities
                .iter()
                .map(|f| Facet {
                    normal: f.normal.clone(),
                    offset: &f.offset * m,
                })
                .collect(),
            equations: self
                .equations
                .iter()
                .map(|e| Equation {
                    normal: e.normal.clone(),
                    offset: &e.offset * m,
                })
                .collect(),
        }
    }
}

/// Convex hull of finitely many lattice points, stored by its vertices.
#[derive(Clone, Debug)]
pub struct LatticePolytope {
    ambient_dim: usize,
    /// Lex-sorted, irredundant.
    vertices: Vec<LatticeVector>,
    name: Option<String>,
    /// Input points that turned out not to be vertices, for diagnostics.
    dropped: Vec<LatticeVector>,
    facet_cache: OnceLock<FacetSystem>,
}

impl PartialEq for LatticePolytope {
    fn eq(&self, other: &Self) -> bool {
        self.ambient_dim == other.ambient_dim && self.vertices == other.vertices
    }
}

impl Eq for LatticePolytope {}

impl std::hash::Hash for LatticePolytope {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.ambient_dim.hash(state);
        self.vertices.hash(state);
    }
}

impl LatticePolytope {
    /// Hull of `points`; prunes every non-vertex. Errors on an empty input or
    /// mixed dimensions.
    pub fn new(points: Vec<LatticeVector>) -> Result<Self> {
        let first = points
            .first()
            .ok_or_else(|| Error::invalid("a polytope needs at least one point"))?;
        let ambient_dim = first.dim();
        if let Some(bad) = points.iter().find(|p| p.dim() != ambient_dim) {
            return Err(Error::DimensionMismatch {
                expected: ambient_dim,
                got: bad.dim(),
            });
        }

        let mut points = points;
        points.sort();
        points.dedup();

        let facets = facet_system_of_points(ambient_dim, &points);
        let (vertices, dropped) = split_vertices(ambient_dim, points, &facets);

        let cache = OnceLock::new();
        cache.set(facets).expect("fresh cell");
        Ok(LatticePolytope {
            ambient_dim,
            vertices,
            name: None,
            dropped,
            facet_cache: cache,
        })
    }

    /// Convenience wrapper over small literal coordinates.
    pub fn from_i64_points(points: &[&[i64]]) -> Result<Self> {
        LatticePolytope::new(points.iter().map(|p| LatticeVector::from_i64(p)).collect())
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = Some(name.into());
        self
    }

    /// Internal constructor for images of vertex-preserving maps (dilation,
    /// translation): `vertices` must already be the sorted exact vertex set.
    pub(crate) fn from_known_vertices(
        ambient_dim: usize,
        vertices: Vec<LatticeVector>,
    ) -> Self {
        debug_assert!(vertices.windows(2).all(|w| w[0] < w[1]));
        LatticePolytope {
            ambient_dim,
            vertices,
            name: None,
            dropped: Vec::new(),
            facet_cache: OnceLock::new(),
        }
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    /// The irredundant vertex set, lex-sorted.
    pub fn vertices(&self) -> &[LatticeVector] {
        &self.vertices
    }

    pub fn n_vertices(&self) -> usize {
        self.vertices.len()
    }

    pub fn name(&self) -> Option<&str> {
        self.name.as_deref()
    }

    /// Input points pruned during construction because they were not vertices.
    pub fn dropped_points(&self) -> &[LatticeVector] {
        &self.dropped
    }

    /// The cached H-representation.
    pub fn facets(&self) -> &FacetSystem {
        self.facet_cache
            .get_or_init(|| facet_system_of_points(self.ambient_dim, &self.vertices))
    }

    /// Dimension of the affine hull of the vertices.
    pub fn affine_dim(&self) -> usize {
        self.facets().affine_dim()
    }

    pub fn is_full_dimensional(&self) -> bool {
        self.affine_dim() == self.ambient_dim
    }

    pub fn contains(&self, p: &LatticeVector) -> bool {
        self.facets().contains(p)
    }

    /// `mP` for `m ≥ 0`; `m = 0` collapses to the origin.
    pub fn dilate(&self, m: &BigInt) -> Result<LatticePolytope> {
        if m.is_negative() {
            return Err(Error::invalid(format!("dilation factor {m} is negative")));
        }
        if m.is_zero() {
            return Ok(LatticePolytope::from_known_vertices(
                self.ambient_dim,
                vec![LatticeVector::zero(self.ambient_dim)],
            ));
        }
        // Scaling by a positive integer preserves vertexhood and lex order.
        let vertices = self.vertices.iter().map(|v| v.scale(m)).collect();
        Ok(LatticePolytope::from_known_vertices(self.ambient_dim, vertices))
    }

    pub fn dilate_u32(&self, m: u32) -> LatticePolytope {
        self.dilate(&BigInt::from(m)).expect("nonnegative dilation")
    }

    /// Translate by a lattice vector.
    pub fn translate(&self, t: &LatticeVector) -> Result<LatticePolytope> {
        if t.dim() != self.ambient_dim {
            return Err(Error::DimensionMismatch {
                expected: self.ambient_dim,
                got: t.dim(),
            });
        }
        let mut vertices: Vec<LatticeVector> =
            self.vertices.iter().map(|v| v.add(t)).collect();
        vertices.sort();
        Ok(LatticePolytope::from_known_vertices(self.ambient_dim, vertices))
    }

    /// Width in the `i`-th coordinate direction: max minus min over vertices.
    pub fn width(&self, i: usize) -> Result<BigInt> {
        if i >= self.ambient_dim {
            return Err(Error::invalid(format!(
                "coordinate index {i} out of range for ambient dimension {}",
                self.ambient_dim
            )));
        }
        let mut coords = self.vertices.iter().map(|v| &v.coords()[i]);
        let first = coords.next().expect("nonempty vertex set").clone();
        let (mut lo, mut hi) = (first.clone(), first);
        for c in coords {
            if *c < lo {
                lo = c.clone();
            }
            if *c > hi {
                hi = c.clone();
            }
        }
        Ok(hi - lo)
    }

    /// Search for a pyramid structure: a facet containing every vertex but
    /// one, with the leftover apex at lattice height 1 over it. Full-dim only.
    pub fn as_lattice_pyramid(&self) -> Result<Option<(LatticeVector, Facet)>> {
        if !self.is_full_dimensional() {
            return Err(Error::NotFullDimensional {
                affine_dim: self.affine_dim(),
                ambient_dim: self.ambient_dim,
            });
        }
        for facet in self.facets().inequalities() {
            let mut off_facet = self.vertices.iter().filter(|v| !facet.slack(v).is_zero());
            match (off_facet.next(), off_facet.next()) {
                (Some(apex), None) if facet.slack(apex).is_one() => {
                    return Ok(Some((apex.clone(), facet.clone())));
                }
                _ => {}
            }
        }
        Ok(None)
    }
}

/// The Cayley sum `P₀ * … * P_s` of factors in a common ℝ^q, living in
/// ℝ^{q+s}: factor `j` is embedded at marker `e_j` (with `e_0 = 0`).
pub fn cayley_sum(factors: &[LatticePolytope]) -> Result<LatticePolytope> {
    let first = factors
        .first()
        .ok_or_else(|| Error::invalid("cayley_sum needs at least one factor"))?;
    let q = first.ambient_dim();
    if let Some(bad) = factors.iter().find(|f| f.ambient_dim() != q) {
        return Err(Error::DimensionMismatch {
            expected: q,
            got: bad.ambient_dim(),
        });
    }
    let s = factors.len() - 1;
    let mut points = Vec::new();
    for (j, factor) in factors.iter().enumerate() {
        for v in factor.vertices() {
            let mut coords = v.coords().to_vec();
            coords.extend(std::iter::repeat_with(BigInt::zero).take(s));
            if j > 0 {
                coords[q + j - 1] = BigInt::one();
            }
            points.push(LatticeVector::new(coords));
        }
    }
    let sum = LatticePolytope::new(points)?;
    // Every embedded factor is a face, so no input point can be pruned.
    debug_assert!(sum.dropped_points().is_empty());
    Ok(sum)
}

/// Minkowski sum: hull of all pairwise vertex sums.
pub fn minkowski_sum(a: &LatticePolytope, b: &LatticePolytope) -> Result<LatticePolytope> {
    if a.ambient_dim() != b.ambient_dim() {
        return Err(Error::DimensionMismatch {
            expected: a.ambient_dim(),
            got: b.ambient_dim(),
        });
    }
    let mut points = Vec::with_capacity(a.n_vertices() * b.n_vertices());
    for v in a.vertices() {
        for w in b.vertices() {
            points.push(v.add(w));
        }
    }
    LatticePolytope::new(points)
}

/// H-representation of `conv(points)` from the double description of the
/// cone over the points lifted to height 1.
fn facet_system_of_points(ambient_dim: usize, points: &[LatticeVector]) -> FacetSystem {
    let lifted: Vec<LatticeVector> = points
        .iter()
        .map(|p| p.extended(BigInt::one()))
        .collect();
    let cone = dual_description(&lifted, ambient_dim + 1);

    // A lineality generator (w, c) of the polar pairs to zero against every
    // (p, 1), i.e. ⟨w, p⟩ = −c on all of P.
    let mut equations: Vec<Equation> = cone
        .lineality
        .iter()
        .map(|l| {
            let (w, c) = split_last(l);
            Equation { normal: w, offset: -c }
        })
        .collect();
    equations.sort_by(|a, b| (&a.normal, &a.offset).cmp(&(&b.normal, &b.offset)));

    let affine_dim = ambient_dim - equations.len();
    let mut inequalities: Vec<Facet> = if affine_dim == 0 {
        // A point is already cut out by its equations; the polar cone's single
        // ray only restates feasibility.
        Vec::new()
    } else {
        cone.rays
            .iter()
            .map(|r| {
                // Ray (u, c): ⟨u, p⟩ + c ≥ 0 on P, i.e. ⟨−u, p⟩ ≤ c.
                let (u, c) = split_last(r);
                Facet { normal: u.neg(), offset: c }
            })
            .collect()
    };
    inequalities.sort_by(|a, b| (&a.normal, &a.offset).cmp(&(&b.normal, &b.offset)));

    // A facet touches a vertex, so the offset cannot hide a common factor.
    debug_assert!(inequalities
        .iter()
        .all(|f| f.normal.content().is_one()));
    debug_assert!(equations.iter().all(|e| e.normal.content().is_one()));

    FacetSystem {
        ambient_dim,
        inequalities,
        equations,
    }
}

/// Partition deduplicated hull input into (vertices, pruned points).
///
/// A point is a vertex exactly when its tight constraints span the ambient
/// space, i.e. the normals of its tight facets plus all equations have rank
/// `ambient_dim`.
fn split_vertices(
    ambient_dim: usize,
    points: Vec<LatticeVector>,
    facets: &FacetSystem,
) -> (Vec<LatticeVector>, Vec<LatticeVector>) {
    if facets.affine_dim() == 0 {
        debug_assert_eq!(points.len(), 1);
        return (points, Vec::new());
    }
    let mut vertices = Vec::new();
    let mut dropped = Vec::new();
    for p in points {
        let mut tight: Vec<Vec<BigInt>> = facets
            .equations()
            .iter()
            .map(|e| e.normal.coords().to_vec())
            .collect();
        tight.extend(
            facets
                .inequalities()
                .iter()
                .filter(|f| f.slack(&p).is_zero())
                .map(|f| f.normal.coords().to_vec()),
        );
        let rank = if tight.is_empty() {
            0
        } else {
            IntMatrix::from_rows(tight).rank()
        };
        if rank == ambient_dim {
            vertices.push(p);
        } else {
            dropped.push(p);
        }
    }
    (vertices, dropped)
}

fn split_last(v: &LatticeVector) -> (LatticeVector, BigInt) {
    let coords = v.coords();
    let (last, head) = coords.split_last().expect("nonempty");
    (LatticeVector::new(head.to_vec()), last.clone())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn poly(points: &[&[i64]]) -> LatticePolytope {
        LatticePolytope::from_i64_points(points).unwrap()
    }

    #[test]
    fn collinear_point_is_pruned() {
        let p = poly(&[&[0, 0], &[1, 0], &[2, 0]]);
        assert_eq!(p.n_vertices(), 2);
        assert_eq!(p.dropped_points(), &[LatticeVector::from_i64(&[1, 0])]);
        assert_eq!(p.affine_dim(), 1);
    }

    #[test]
    fn single_point_has_dim_zero() {
        let p = poly(&[&[3, -1, 4]]);
        assert_eq!(p.affine_dim(), 0);
        assert!(p.facets().inequalities().is_empty());
        assert_eq!(p.facets().equations().len(), 3);
        assert!(p.contains(&LatticeVector::from_i64(&[3, -1, 4])));
        assert!(!p.contains(&LatticeVector::from_i64(&[3, -1, 5])));
    }

    #[test]
    fn unit_square_facets() {
        let p = poly(&[&[0, 0], &[1, 0], &[0, 1], &[1, 1]]);
        assert_eq!(p.affine_dim(), 2);
        let f = p.facets();
        assert!(f.equations().is_empty());
        assert_eq!(f.inequalities().len(), 4);
        // x ≥ 0, y ≥ 0, x ≤ 1, y ≤ 1 in the canonical sorted form.
        let expect: Vec<(Vec<i64>, i64)> = vec![
            (vec![-1, 0], 0),
            (vec![0, -1], 0),
            (vec![0, 1], 1),
            (vec![1, 0], 1),
        ];
        let got: Vec<(Vec<BigInt>, BigInt)> = f
            .inequalities()
            .iter()
            .map(|f| (f.normal.coords().to_vec(), f.offset.clone()))
            .collect();
        let expect: Vec<(Vec<BigInt>, BigInt)> = expect
            .into_iter()
            .map(|(n, b)| (n.into_iter().map(BigInt::from).collect(), BigInt::from(b)))
            .collect();
        assert_eq!(got, expect);
    }

    #[test]
    fn standard_simplex_facets() {
        let p = poly(&[&[0, 0, 0], &[1, 0, 0], &[0, 1, 0], &[0, 0, 1]]);
        let f = p.facets();
        assert_eq!(f.inequalities().len(), 4);
        assert!(f.contains(&LatticeVector::from_i64(&[0, 0, 1])));
        assert!(!f.contains(&LatticeVector::from_i64(&[1, 1, 1])));
        let sum_facet = f
            .inequalities()
            .iter()
            .find(|f| f.normal == LatticeVector::from_i64(&[1, 1, 1]))
            .expect("x+y+z <= 1 facet");
        assert!(sum_facet.offset.is_one());
    }

    #[test]
    fn lower_dimensional_polytope_gets_equations() {
        // Diagonal segment in the plane: equation x − y = 0 (up to sign).
        let p = poly(&[&[0, 0], &[2, 2]]);
        assert_eq!(p.affine_dim(), 1);
        let f = p.facets();
        assert_eq!(f.equations().len(), 1);
        assert_eq!(f.inequalities().len(), 2);
        assert!(f.contains(&LatticeVector::from_i64(&[1, 1])));
        assert!(!f.contains(&LatticeVector::from_i64(&[1, 0])));
        assert!(f.contains_in_relative_interior(&LatticeVector::from_i64(&[1, 1])));
        assert!(!f.contains_in_relative_interior(&LatticeVector::from_i64(&[2, 2])));
    }

    #[test]
    fn dilate_scales_and_zero_collapses() {
        let seg = poly(&[&[0], &[3]]);
        let doubled = seg.dilate(&BigInt::from(2)).unwrap();
        assert_eq!(
            doubled.vertices(),
            &[LatticeVector::from_i64(&[0]), LatticeVector::from_i64(&[6])]
        );
        let zero = seg.dilate(&BigInt::zero()).unwrap();
        assert_eq!(zero.vertices(), &[LatticeVector::zero(1)]);
        assert_eq!(zero.affine_dim(), 0);
        assert!(seg.dilate(&BigInt::from(-1)).is_err());
    }

    #[test]
    fn cayley_sum_of_two_segments_is_unit_square() {
        let seg = poly(&[&[0], &[1]]);
        let c = cayley_sum(&[seg.clone(), seg]).unwrap();
        let square = poly(&[&[0, 0], &[1, 0], &[0, 1], &[1, 1]]);
        assert_eq!(c, square);
    }

    #[test]
    fn cayley_sum_with_point_is_a_pyramid() {
        let square = poly(&[&[0, 0], &[1, 0], &[0, 1], &[1, 1]]);
        let apex_pt = poly(&[&[0, 0]]);
        let pyr = cayley_sum(&[square.clone(), apex_pt]).unwrap();
        assert_eq!(pyr.n_vertices(), square.n_vertices() + 1);
        let (apex, base) = pyr.as_lattice_pyramid().unwrap().expect("pyramid");
        assert_eq!(apex, LatticeVector::from_i64(&[0, 0, 1]));
        // Every other vertex lies on the base facet.
        let on_base = pyr
            .vertices()
            .iter()
            .filter(|v| base.slack(v).is_zero())
            .count();
        assert_eq!(on_base, 4);
    }

    #[test]
    fn single_factor_cayley_sum_is_identity() {
        let tri = poly(&[&[0, 0], &[1, 0], &[0, 1]]);
        assert_eq!(cayley_sum(std::slice::from_ref(&tri)).unwrap(), tri);
    }

    #[test]
    fn square_is_not_a_pyramid() {
        let square = poly(&[&[0, 0], &[1, 0], &[0, 1], &[1, 1]]);
        assert!(square.as_lattice_pyramid().unwrap().is_none());
    }

    #[test]
    fn simplex_is_a_pyramid() {
        let simplex = poly(&[&[0, 0, 0], &[1, 0, 0], &[0, 1, 0], &[0, 0, 1]]);
        assert!(simplex.as_lattice_pyramid().unwrap().is_some());
    }

    #[test]
    fn minkowski_sum_of_segments() {
        let a = poly(&[&[0], &[1]]);
        let b = poly(&[&[0], &[2]]);
        let s = minkowski_sum(&a, &b).unwrap();
        assert_eq!(s, poly(&[&[0], &[3]]));
    }

    #[test]
    fn minkowski_widths_add() {
        let square = poly(&[&[0, 0], &[1, 0], &[0, 1], &[1, 1]]);
        let seg = poly(&[&[0, 0], &[1, 0]]);
        let s = minkowski_sum(&square, &seg).unwrap();
        assert_eq!(s.width(0).unwrap(), BigInt::from(2));
        assert_eq!(s.width(1).unwrap(), BigInt::from(1));
        assert_eq!(
            s.width(0).unwrap(),
            square.width(0).unwrap() + seg.width(0).unwrap()
        );
    }

    #[test]
    fn width_of_box() {
        let rect = poly(&[&[0, 0], &[5, 0], &[0, 2], &[5, 2]]);
        assert_eq!(rect.width(0).unwrap(), BigInt::from(5));
        assert_eq!(rect.width(1).unwrap(), BigInt::from(2));
        assert!(rect.width(2).is_err());
    }

    #[test]
    fn translate_shifts_facets() {
        let square = poly(&[&[0, 0], &[1, 0], &[0, 1], &[1, 1]]);
        let moved = square.translate(&LatticeVector::from_i64(&[10, -3])).unwrap();
        assert!(moved.contains(&LatticeVector::from_i64(&[10, -3])));
        assert!(moved.contains(&LatticeVector::from_i64(&[11, -2])));
        assert!(!moved.contains(&LatticeVector::from_i64(&[0, 0])));
    }
}
