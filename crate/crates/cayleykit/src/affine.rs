//! Affine maps between lattices and reduction to full dimension.
//!
//! [`normalize_full_dim`] replaces a lower-dimensional polytope by a
//! unimodularly equivalent full-dimensional one. Every downstream algorithm
//! (Ehrhart data, the decomposition pipeline, duality) assumes full dimension
//! and goes through this reduction first.

use num_bigint::BigInt;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::matrix::IntMatrix;
use crate::polytope::LatticePolytope;
use crate::vector::LatticeVector;

/// `x ↦ matrix · x + translation`, mapping lattice points to lattice points.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AffineLatticeMap {
    matrix: IntMatrix,
    translation: LatticeVector,
}

impl AffineLatticeMap {
    pub fn new(matrix: IntMatrix, translation: LatticeVector) -> Result<Self> {
        if matrix.nrows() != translation.dim() {
            return Err(Error::DimensionMismatch {
                expected: matrix.nrows(),
                got: translation.dim(),
            });
        }
        Ok(AffineLatticeMap { matrix, translation })
    }

    pub fn identity(n: usize) -> Self {
        AffineLatticeMap {
            matrix: IntMatrix::identity(n),
            translation: LatticeVector::zero(n),
        }
    }

    /// Pure translation by `t`.
    pub fn translation_by(t: LatticeVector) -> Self {
        AffineLatticeMap {
            matrix: IntMatrix::identity(t.dim()),
            translation: t,
        }
    }

    pub fn matrix(&self) -> &IntMatrix {
        &self.matrix
    }

    pub fn translation(&self) -> &LatticeVector {
        &self.translation
    }

    pub fn input_dim(&self) -> usize {
        self.matrix.ncols()
    }

    pub fn output_dim(&self) -> usize {
        self.matrix.nrows()
    }

    pub fn apply(&self, x: &LatticeVector) -> Result<LatticeVector> {
        if x.dim() != self.input_dim() {
            return Err(Error::DimensionMismatch {
                expected: self.input_dim(),
                got: x.dim(),
            });
        }
        Ok(self.matrix.mul_vec(x).add(&self.translation))
    }

    /// Image polytope. The image vertex set is recomputed from scratch, so
    /// collapsing maps are handled correctly.
    pub fn apply_to_polytope(&self, p: &LatticePolytope) -> Result<LatticePolytope> {
        let images = p
            .vertices()
            .iter()
            .map(|v| self.apply(v))
            .collect::<Result<Vec<_>>>()?;
        LatticePolytope::new(images)
    }

    /// `self ∘ inner`: first `inner`, then `self`.
    pub fn compose(&self, inner: &AffineLatticeMap) -> Result<AffineLatticeMap> {
        if inner.output_dim() != self.input_dim() {
            return Err(Error::DimensionMismatch {
                expected: self.input_dim(),
                got: inner.output_dim(),
            });
        }
        let matrix = self.matrix.mul_mat(&inner.matrix);
        let translation = self.matrix.mul_vec(&inner.translation).add(&self.translation);
        Ok(AffineLatticeMap { matrix, translation })
    }

    /// Invertible over ℤ: square with determinant ±1.
    pub fn is_unimodular(&self) -> bool {
        self.matrix.is_unimodular()
    }

    /// Inverse map `y ↦ A⁻¹ y − A⁻¹ t`; requires unimodularity.
    pub fn inverse(&self) -> Result<AffineLatticeMap> {
        let inv = self.matrix.inverse_unimodular().map_err(|_| {
            Error::invalid("affine map is not unimodular, cannot invert over the integers")
        })?;
        let translation = inv.mul_vec(&self.translation).neg();
        Ok(AffineLatticeMap { matrix: inv, translation })
    }
}

/// A polytope rewritten in coordinates for its own affine lattice.
pub struct Normalization {
    /// Full-dimensional copy in ℤ^{affine_dim}.
    pub polytope: LatticePolytope,
    /// Bijection from the lattice points of the affine hull of the input onto
    /// ℤ^{affine_dim}; carries the input polytope onto `polytope`.
    pub forward: AffineLatticeMap,
    /// Right inverse of `forward`; embeds ℤ^{affine_dim} back onto the lattice
    /// points of the affine hull.
    pub section: AffineLatticeMap,
}

/// Rewrite `P` as a full-dimensional polytope in ℤ^{affine_dim(P)}.
///
/// The forward map restricts to a bijection between the lattice points of
/// `aff(P)` and ℤ^k, which makes every lattice point count `f_P(m)` agree
/// between input and output. A full-dimensional input comes back unchanged
/// with identity maps.
pub fn normalize_full_dim(p: &LatticePolytope) -> Result<Normalization> {
    let n = p.ambient_dim();
    let verts = p.vertices();
    let v0 = &verts[0];

    // Difference lattice: rows span the linear space parallel to aff(P).
    let diffs: Vec<Vec<BigInt>> = verts[1..]
        .iter()
        .map(|v| v.sub(v0).into_coords())
        .collect();

    if diffs.is_empty() {
        // Single point: everything collapses to ℝ^0.
        let polytope = LatticePolytope::new(vec![LatticeVector::zero(0)])?;
        let forward = AffineLatticeMap::new(IntMatrix::zero(0, n), LatticeVector::zero(0))?;
        let section = AffineLatticeMap::new(IntMatrix::zero(n, 0), v0.clone())?;
        return Ok(Normalization { polytope, forward, section });
    }

    let m = IntMatrix::from_rows(diffs);
    let (h, v) = m.column_echelon();
    let k = (0..h.ncols())
        .filter(|&j| (0..h.nrows()).any(|i| !h.get(i, j).is_zero()))
        .count();

    if k == n {
        return Ok(Normalization {
            polytope: p.clone(),
            forward: AffineLatticeMap::identity(n),
            section: AffineLatticeMap::identity(n),
        });
    }

    // Row vector convention: d ∈ aff(P) − v0 satisfies (d·V)[k..] = 0 and
    // d ↦ (d·V)[..k] hits ℤ^k bijectively on the saturated difference lattice.
    let forward_rows: Vec<Vec<BigInt>> = (0..k)
        .map(|j| (0..n).map(|i| v.get(i, j).clone()).collect())
        .collect();
    let fwd_matrix = IntMatrix::from_rows(forward_rows);
    let fwd_translation = fwd_matrix.mul_vec(v0).neg();
    let forward = AffineLatticeMap::new(fwd_matrix, fwd_translation)?;

    let v_inv = v
        .inverse_unimodular()
        .expect("column_echelon yields a unimodular transform");
    let section_rows: Vec<Vec<BigInt>> = (0..n)
        .map(|i| (0..k).map(|j| v_inv.get(j, i).clone()).collect())
        .collect();
    let section = AffineLatticeMap::new(IntMatrix::from_rows(section_rows), v0.clone())?;

    // Affine isomorphisms of the hull preserve vertexhood, so the image
    // vertex set is exactly the image of the vertex set.
    let mut images = verts
        .iter()
        .map(|w| forward.apply(w))
        .collect::<Result<Vec<_>>>()?;
    images.sort();
    images.dedup();
    debug_assert_eq!(images.len(), verts.len());
    let polytope = LatticePolytope::from_known_vertices(k, images);

    Ok(Normalization { polytope, forward, section })
}
