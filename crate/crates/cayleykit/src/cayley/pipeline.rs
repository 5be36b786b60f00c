//! The staged machinery behind [`decompose`](super::decompose): height-one
//! cone embedding, the pulling-triangulation frame, and the face chain
//! `F₁ ⊆ F₂ ⊆ F₃` with its certified bounds.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::enumerate::lattice_points;
use crate::error::{Error, Result};
use crate::matrix::{IntMatrix, RatMatrix};
use crate::polytope::LatticePolytope;
use crate::vector::LatticeVector;

use super::{BoundCheck, BoundMode};

/// A full-dimensional polytope with its vertices lifted to height one.
///
/// Lattice points of the dilate `mP` correspond to lattice points of the
/// cone over `P × {1}` with last coordinate `m`; everything downstream works
/// inside that cone.
pub struct ConeEmbedding {
    polytope: LatticePolytope,
    lifted: Vec<LatticeVector>,
}

impl ConeEmbedding {
    pub fn polytope(&self) -> &LatticePolytope {
        &self.polytope
    }

    /// Lifted vertices, in the vertex order of the polytope.
    pub fn lifted_vertices(&self) -> &[LatticeVector] {
        &self.lifted
    }
}

/// A full-dimensional simplex cell of the pulling triangulation, with the
/// inverse of its lifted vertex matrix.
///
/// Row `i` of the inverse reads off the `i`-th barycentric coordinate
/// `b_i(y)` of a lifted point `y`, as a linear functional on the cone.
pub struct SimplexFrame {
    cell: Vec<usize>,
    lifted: Vec<LatticeVector>,
    inverse: RatMatrix,
}

impl SimplexFrame {
    /// Indices of the cell's vertices in the polytope's vertex order,
    /// ascending.
    pub fn cell_indices(&self) -> &[usize] {
        &self.cell
    }

    /// Lifted cell vertices, in cell order.
    pub fn lifted_vertices(&self) -> &[LatticeVector] {
        &self.lifted
    }

    /// Inverse of the matrix whose columns are the lifted cell vertices.
    pub fn inverse(&self) -> &RatMatrix {
        &self.inverse
    }

    /// Barycentric coordinates of a lifted point with respect to this cell.
    pub fn coordinates(&self, lifted_point: &LatticeVector) -> Vec<BigRational> {
        self.inverse.mul_int_vec(lifted_point)
    }
}

/// Working state of the decomposition pipeline for one polytope.
///
/// Frame indices `0..=n` are partitioned by the barycentric coordinates of
/// the distinguished interior point `x`: `V` where they equal one, `Z` where
/// they vanish, `F₀` where they are fractional. The stages grow the face
/// chain `F₁ ⊆ F₂ ⊆ F₃` and log every bound comparison.
pub struct PipelineState {
    n: usize,
    degree: usize,
    x: LatticeVector,
    b_x: Vec<BigRational>,
    fractional: LatticeVector,
    v_set: Vec<usize>,
    z_set: Vec<usize>,
    f0: Vec<usize>,
    f1: Option<Vec<usize>>,
    f2: Option<Vec<usize>>,
    f3: Option<Vec<usize>>,
    g: Option<Vec<usize>>,
    vertex_b: Vec<Vec<BigRational>>,
    completion_steps: usize,
    bounds: Vec<BoundCheck>,
    mode: BoundMode,
    f3_bound_held: bool,
}

impl PipelineState {
    /// Ehrhart degree of the polytope, read off from the minimal dilate
    /// with an interior lattice point.
    pub fn degree(&self) -> usize {
        self.degree
    }

    /// The distinguished lifted interior point; its last coordinate is
    /// `n + 1 − degree`.
    pub fn x(&self) -> &LatticeVector {
        &self.x
    }

    /// Barycentric coordinates of [`x`](Self::x); all lie in `[0, 1]`.
    pub fn b_x(&self) -> &[BigRational] {
        &self.b_x
    }

    /// The lattice point `x − Σ_{i ∈ V} v_i`, supported on `F₀`.
    pub fn fractional_part(&self) -> &LatticeVector {
        &self.fractional
    }

    pub fn v_indices(&self) -> &[usize] {
        &self.v_set
    }

    pub fn z_indices(&self) -> &[usize] {
        &self.z_set
    }

    pub fn f0_indices(&self) -> &[usize] {
        &self.f0
    }

    pub fn f1_indices(&self) -> Option<&[usize]> {
        self.f1.as_deref()
    }

    pub fn f2_indices(&self) -> Option<&[usize]> {
        self.f2.as_deref()
    }

    pub fn f3_indices(&self) -> Option<&[usize]> {
        self.f3.as_deref()
    }

    pub fn g_indices(&self) -> Option<&[usize]> {
        self.g.as_deref()
    }

    /// Barycentric coordinate vectors of all lifted polytope vertices, in
    /// vertex order.
    pub fn vertex_coordinates(&self) -> &[Vec<BigRational>] {
        &self.vertex_b
    }

    /// Number of repair passes the completion loop needed after the greedy
    /// step of [`compute_f3`](Self::compute_f3).
    pub fn completion_steps(&self) -> usize {
        self.completion_steps
    }

    /// Every bound comparison recorded so far.
    pub fn bounds(&self) -> &[BoundCheck] {
        &self.bounds
    }

    pub(super) fn take_bounds(&mut self) -> Vec<BoundCheck> {
        std::mem::take(&mut self.bounds)
    }

    /// Whether the advisory post-completion bound on `dim F₃` held.
    pub fn f3_bound_held(&self) -> bool {
        self.f3_bound_held
    }

    fn check(&mut self, name: &'static str, actual: i64, limit: i64, hard: bool) -> Result<()> {
        let held = actual <= limit;
        self.bounds.push(BoundCheck {
            name,
            actual,
            limit,
            hard,
            held,
        });
        if !held && hard && self.mode == BoundMode::Hard {
            return Err(Error::invariant(format!(
                "bound failed: {name} (actual {actual}, limit {limit})"
            )));
        }
        Ok(())
    }

    fn require_degree_positive(&self) -> Result<()> {
        if self.degree == 0 {
            return Err(Error::invariant(
                "pipeline stages require positive degree; degree zero short-circuits",
            ));
        }
        Ok(())
    }

    /// `F₁`: the frame indices whose coordinate functional is not integral
    /// on the lattice. Contains `F₀` and spans a face of dimension at most
    /// `4d − 2`.
    pub fn compute_f1(&mut self, frame: &SimplexFrame) -> Result<()> {
        self.require_degree_positive()?;
        if self.f1.is_some() {
            return Err(Error::invariant("compute_f1 ran twice"));
        }
        let f1: Vec<usize> = (0..=self.n)
            .filter(|&i| !frame.inverse.row_is_integral(i))
            .collect();
        for i in &self.f0 {
            if !f1.contains(i) {
                return Err(Error::invariant(
                    "fractional coordinate of x on an integral frame row",
                ));
            }
        }
        let d = self.degree as i64;
        self.check("dim F1 <= 4d-2", f1.len() as i64 - 1, 4 * d - 2, true)?;
        self.f1 = Some(f1);
        Ok(())
    }

    /// `F₂`: grow `F₁` by `Z` and by every index that goes negative on some
    /// vertex. Asserts the per-vertex signed support inequalities that make
    /// the later stages work, and the resulting face dimension bound.
    pub fn compute_z_f2(&mut self) -> Result<()> {
        let f1 = self
            .f1
            .clone()
            .ok_or_else(|| Error::invariant("compute_z_f2 before compute_f1"))?;
        if self.f2.is_some() {
            return Err(Error::invariant("compute_z_f2 ran twice"));
        }

        // At every vertex w: |V⁻(w)| ≤ |Z⁺(w)| and |V⁺(w)| ≤ |Z⁻(w)| + 1.
        let mut worst_neg: i64 = i64::MIN;
        let mut worst_pos: i64 = i64::MIN;
        for bw in &self.vertex_b {
            let v_plus = self.v_set.iter().filter(|&&i| bw[i].is_positive()).count() as i64;
            let v_minus = self.v_set.iter().filter(|&&i| bw[i].is_negative()).count() as i64;
            let z_plus = self.z_set.iter().filter(|&&i| bw[i].is_positive()).count() as i64;
            let z_minus = self.z_set.iter().filter(|&&i| bw[i].is_negative()).count() as i64;
            worst_neg = worst_neg.max(v_minus - z_plus);
            worst_pos = worst_pos.max(v_plus - z_minus);
        }
        if !self.vertex_b.is_empty() {
            self.check("max |V-(w)| - |Z+(w)| <= 0", worst_neg, 0, true)?;
            self.check("max |V+(w)| - |Z-(w)| <= 1", worst_pos, 1, true)?;
        }

        let mut in_f2 = vec![false; self.n + 1];
        for &i in f1.iter().chain(&self.z_set) {
            in_f2[i] = true;
        }
        for bw in &self.vertex_b {
            for i in 0..=self.n {
                if bw[i].is_negative() {
                    in_f2[i] = true;
                }
            }
        }
        let f2: Vec<usize> = (0..=self.n).filter(|&i| in_f2[i]).collect();
        let d = self.degree as i64;
        let z = self.z_set.len() as i64;
        self.check(
            "dim F2 <= 4d-2+(z^2+7z)/2",
            f2.len() as i64 - 1,
            4 * d - 2 + (z * z + 7 * z) / 2,
            true,
        )?;
        self.f2 = Some(f2);
        Ok(())
    }

    /// `F₃`: greedily absorb positive `V`-support of polytope vertices, one
    /// round per element of `Z`, then repair until every vertex has at most
    /// one nonzero coordinate outside the face. The dimension bound here is
    /// advisory; if it fails, the final codimension bound is downgraded.
    pub fn compute_f3(&mut self) -> Result<()> {
        let f2 = self
            .f2
            .clone()
            .ok_or_else(|| Error::invariant("compute_f3 before compute_z_f2"))?;
        if self.f3.is_some() {
            return Err(Error::invariant("compute_f3 ran twice"));
        }
        let mut covered = vec![false; self.n + 1];
        for &i in &f2 {
            covered[i] = true;
        }

        for _ in 0..self.z_set.len() {
            let mut best: Option<(usize, usize)> = None;
            for (j, bw) in self.vertex_b.iter().enumerate() {
                let size = self
                    .v_set
                    .iter()
                    .filter(|&&i| !covered[i] && bw[i].is_positive())
                    .count();
                if best.is_none_or(|(bs, _)| size > bs) {
                    best = Some((size, j));
                }
            }
            let Some((size, j)) = best else { break };
            if size == 0 {
                break;
            }
            for &i in &self.v_set {
                if self.vertex_b[j][i].is_positive() {
                    covered[i] = true;
                }
            }
        }

        // Repair: first offending vertex in index order donates all but its
        // lowest outside index. Terminates because the face only grows.
        loop {
            let mut offender: Option<Vec<usize>> = None;
            for bw in &self.vertex_b {
                let outside: Vec<usize> = (0..=self.n)
                    .filter(|&i| !covered[i] && !bw[i].is_zero())
                    .collect();
                if outside.len() >= 2 {
                    offender = Some(outside);
                    break;
                }
            }
            let Some(outside) = offender else { break };
            for &i in &outside[1..] {
                covered[i] = true;
            }
            self.completion_steps += 1;
        }

        let f3: Vec<usize> = (0..=self.n).filter(|&i| covered[i]).collect();
        let d = self.degree as i64;
        let z = self.z_set.len() as i64;
        self.check(
            "dim F3 <= 4d-2+(z^2+11z)/2",
            f3.len() as i64 - 1,
            4 * d - 2 + (z * z + 11 * z) / 2,
            false,
        )?;
        self.f3_bound_held = self.bounds.last().is_some_and(|b| b.held);
        self.f3 = Some(f3);
        Ok(())
    }

    /// `G` and the final face `F = F₃ ∪ G`: indices outside `F₃` where some
    /// vertex coordinate reaches two or more. Returns `F`; `q = |F| − 1`.
    ///
    /// The codimension bound `q ≤ (d² + 19d − 4)/2` is enforced as hard
    /// exactly when the advisory `F₃` bound held.
    pub fn compute_g_and_f(&mut self) -> Result<Vec<usize>> {
        let f3 = self
            .f3
            .clone()
            .ok_or_else(|| Error::invariant("face completion before compute_f3"))?;
        if self.g.is_some() {
            return Err(Error::invariant("face completion ran twice"));
        }
        let mut covered = vec![false; self.n + 1];
        for &i in &f3 {
            covered[i] = true;
        }
        let two = BigRational::from_integer(BigInt::from(2));
        let g: Vec<usize> = (0..=self.n)
            .filter(|&i| !covered[i] && self.vertex_b.iter().any(|bw| bw[i] >= two))
            .collect();
        let d = self.degree as i64;
        let z = self.z_set.len() as i64;
        self.check("|G| <= 2d-2|Z|", g.len() as i64, 2 * d - 2 * z, true)?;

        for &i in &g {
            covered[i] = true;
        }
        let f: Vec<usize> = (0..=self.n).filter(|&i| covered[i]).collect();
        if f.is_empty() {
            return Err(Error::invariant("empty Cayley face at positive degree"));
        }
        let q = f.len() as i64 - 1;
        let hard = self.f3_bound_held;
        self.check("q <= (d^2+19d-4)/2", q, (d * d + 19 * d - 4) / 2, hard)?;
        self.g = Some(g);
        Ok(f)
    }
}

/// Lift a full-dimensional polytope to height one, locate the lowest
/// interior lattice point of its cone, and frame it by the first
/// pulling-triangulation cell whose cone contains that point.
///
/// The minimal dilate `m*` with an interior lattice point determines the
/// Ehrhart degree as `d = n + 1 − m*`; `x` is the lexicographically
/// smallest interior point of `m*P`, lifted. Every barycentric coordinate
/// of `x` lies in `[0, 1]` (else `x − v_i` would be interior at a lower
/// height), and `|Z| ≤ d` is asserted immediately.
pub fn embed_and_frame(
    p: &LatticePolytope,
    mode: BoundMode,
) -> Result<(ConeEmbedding, SimplexFrame, PipelineState)> {
    if !p.is_full_dimensional() {
        return Err(Error::NotFullDimensional {
            affine_dim: p.affine_dim(),
            ambient_dim: p.ambient_dim(),
        });
    }
    let n = p.ambient_dim();

    let mut found: Option<(usize, LatticeVector)> = None;
    for m in 1..=n + 1 {
        let pts = lattice_points(p, &BigInt::from(m), true)?;
        if let Some(first) = pts.into_iter().next() {
            found = Some((m, first));
            break;
        }
    }
    // (n+1)P always has the sum of the cell vertices in its interior
    let (m_star, x_point) = found
        .ok_or_else(|| Error::invariant("no interior lattice point up to dilate n+1"))?;
    let degree = n + 1 - m_star;
    let x = x_point.extended(BigInt::from(m_star));

    let lifted: Vec<LatticeVector> = p
        .vertices()
        .iter()
        .map(|v| v.extended(BigInt::one()))
        .collect();
    let embedding = ConeEmbedding {
        polytope: p.clone(),
        lifted,
    };

    let mut partial = Vec::new();
    let (cell_vertices, inverse, b_x) = pull_search(&mut partial, p, &x)?
        .ok_or_else(|| Error::invariant("no triangulation cell contains the interior point"))?;

    let one = BigRational::one();
    for b in &b_x {
        if b.is_negative() || *b > one {
            return Err(Error::invariant(
                "barycentric coordinate of the interior point outside [0,1]",
            ));
        }
    }

    let cell: Vec<usize> = cell_vertices
        .iter()
        .map(|v| {
            p.vertices()
                .binary_search(v)
                .map_err(|_| Error::invariant("cell vertex is not a polytope vertex"))
        })
        .collect::<Result<_>>()?;
    let frame = SimplexFrame {
        cell,
        lifted: cell_vertices
            .iter()
            .map(|v| v.extended(BigInt::one()))
            .collect(),
        inverse,
    };

    let mut v_set = Vec::new();
    let mut z_set = Vec::new();
    let mut f0 = Vec::new();
    for (i, b) in b_x.iter().enumerate() {
        if b.is_zero() {
            z_set.push(i);
        } else if b.is_one() {
            v_set.push(i);
        } else {
            f0.push(i);
        }
    }

    let mut fractional = x.clone();
    for &i in &v_set {
        fractional = fractional.sub(&frame.lifted[i]);
    }
    let expect_height = BigInt::from(m_star) - BigInt::from(v_set.len());
    if fractional.coords()[n] != expect_height {
        return Err(Error::invariant("fractional part has the wrong height"));
    }

    let vertex_b: Vec<Vec<BigRational>> = embedding
        .lifted
        .iter()
        .map(|w| frame.inverse.mul_int_vec(w))
        .collect();
    debug_assert!(frame.cell.iter().enumerate().all(|(i, &j)| {
        vertex_b[j]
            .iter()
            .enumerate()
            .all(|(k, b)| if k == i { b.is_one() } else { b.is_zero() })
    }));

    let mut state = PipelineState {
        n,
        degree,
        x,
        b_x,
        fractional,
        v_set,
        z_set,
        f0,
        f1: None,
        f2: None,
        f3: None,
        g: None,
        vertex_b,
        completion_steps: 0,
        bounds: Vec::new(),
        mode,
        f3_bound_held: false,
    };
    let z = state.z_set.len() as i64;
    state.check("|Z| <= d", z, degree as i64, true)?;
    Ok((embedding, frame, state))
}

/// Depth-first search through the pulling triangulation, in its canonical
/// order, for the first full cell whose cone contains `x`.
///
/// Each face pulls its lexicographically smallest vertex and recurses into
/// the facets avoiding it, in the facet system's sorted order; the chain of
/// pulled vertices plus the final point is a cell. Containment is the
/// nonnegativity of all barycentric coordinates.
fn pull_search(
    partial: &mut Vec<LatticeVector>,
    face: &LatticePolytope,
    x: &LatticeVector,
) -> Result<Option<(Vec<LatticeVector>, RatMatrix, Vec<BigRational>)>> {
    let v0 = face.vertices()[0].clone();
    partial.push(v0.clone());
    let result = if face.affine_dim() == 0 {
        let mut cell = partial.clone();
        cell.sort();
        let k = cell.len();
        let mut rows = vec![vec![BigInt::zero(); k]; k];
        for (j, v) in cell.iter().enumerate() {
            for (r, row) in rows.iter_mut().enumerate().take(k - 1) {
                row[j] = v.coords()[r].clone();
            }
            rows[k - 1][j] = BigInt::one();
        }
        let inverse = IntMatrix::from_rows(rows).inverse_rational()?;
        let b = inverse.mul_int_vec(x);
        if b.iter().all(|t| !t.is_negative()) {
            Some((cell, inverse, b))
        } else {
            None
        }
    } else {
        let mut hit = None;
        for facet in face.facets().inequalities() {
            if facet.slack(&v0).is_zero() {
                continue;
            }
            let sub: Vec<LatticeVector> = face
                .vertices()
                .iter()
                .filter(|w| facet.slack(w).is_zero())
                .cloned()
                .collect();
            let sub_face = LatticePolytope::new(sub)?;
            debug_assert!(sub_face.dropped_points().is_empty());
            if let Some(found) = pull_search(partial, &sub_face, x)? {
                hit = Some(found);
                break;
            }
        }
        hit
    };
    partial.pop();
    Ok(result)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rat(n: i64, d: i64) -> BigRational {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    fn unit_square() -> LatticePolytope {
        LatticePolytope::from_i64_points(&[&[0, 0], &[1, 0], &[0, 1], &[1, 1]]).unwrap()
    }

    #[test]
    fn square_frame_and_partition() {
        let (emb, frame, state) = embed_and_frame(&unit_square(), BoundMode::Hard).unwrap();
        assert_eq!(emb.lifted_vertices().len(), 4);
        assert_eq!(state.degree(), 1);
        assert_eq!(state.x(), &LatticeVector::from_i64(&[1, 1, 2]));
        // first pulled cell: origin, (0,1), (1,1)
        assert_eq!(frame.cell_indices(), &[0, 1, 3]);
        assert_eq!(state.b_x(), &[rat(1, 1), rat(0, 1), rat(1, 1)]);
        assert_eq!(state.v_indices(), &[0, 2]);
        assert_eq!(state.z_indices(), &[1]);
        assert!(state.f0_indices().is_empty());
        // the unframed vertex (1,0) has coordinates (1, -1, 1)
        assert_eq!(state.vertex_coordinates()[2], vec![rat(1, 1), rat(-1, 1), rat(1, 1)]);
    }

    #[test]
    fn square_stage_chain() {
        let (_, frame, mut state) = embed_and_frame(&unit_square(), BoundMode::Hard).unwrap();
        state.compute_f1(&frame).unwrap();
        assert_eq!(state.f1_indices().unwrap(), &[] as &[usize]);
        state.compute_z_f2().unwrap();
        assert_eq!(state.f2_indices().unwrap(), &[1]);
        state.compute_f3().unwrap();
        // the greedy round absorbs V⁺ of the vertex (1,0), which is all of V
        assert_eq!(state.f3_indices().unwrap(), &[0, 1, 2]);
        assert_eq!(state.completion_steps(), 0);
        let f = state.compute_g_and_f().unwrap();
        assert_eq!(f, vec![0, 1, 2]);
        assert!(state.g_indices().unwrap().is_empty());
        assert!(state.bounds().iter().all(|b| b.held));
    }

    #[test]
    fn double_segment_frame_is_fractional() {
        let seg = LatticePolytope::from_i64_points(&[&[0], &[2]]).unwrap();
        let (_, frame, mut state) = embed_and_frame(&seg, BoundMode::Hard).unwrap();
        assert_eq!(state.degree(), 1);
        assert_eq!(state.b_x(), &[rat(1, 2), rat(1, 2)]);
        assert_eq!(state.f0_indices(), &[0, 1]);
        assert!(state.v_indices().is_empty());
        assert!(state.z_indices().is_empty());
        state.compute_f1(&frame).unwrap();
        assert_eq!(state.f1_indices().unwrap(), &[0, 1]);
        state.compute_z_f2().unwrap();
        assert_eq!(state.f2_indices().unwrap(), &[0, 1]);
        state.compute_f3().unwrap();
        let f = state.compute_g_and_f().unwrap();
        assert_eq!(f, vec![0, 1]);
    }

    #[test]
    fn fractional_part_is_a_lattice_point_on_f0() {
        let seg = LatticePolytope::from_i64_points(&[&[0], &[2]]).unwrap();
        let (_, _, state) = embed_and_frame(&seg, BoundMode::Hard).unwrap();
        // x = (1,1), V empty, so {x} = x
        assert_eq!(state.fractional_part(), &LatticeVector::from_i64(&[1, 1]));
    }

    #[test]
    fn dilated_tetrahedron_is_all_fractional() {
        let p = LatticePolytope::from_i64_points(&[
            &[0, 0, 0],
            &[2, 0, 0],
            &[0, 2, 0],
            &[0, 0, 2],
        ])
        .unwrap();
        let (_, frame, mut state) = embed_and_frame(&p, BoundMode::Hard).unwrap();
        assert_eq!(state.degree(), 2);
        assert_eq!(state.x(), &LatticeVector::from_i64(&[1, 1, 1, 2]));
        assert_eq!(state.b_x(), vec![rat(1, 2); 4].as_slice());
        assert_eq!(state.f0_indices(), &[0, 1, 2, 3]);
        state.compute_f1(&frame).unwrap();
        assert_eq!(state.f1_indices().unwrap(), &[0, 1, 2, 3]);
        state.compute_z_f2().unwrap();
        state.compute_f3().unwrap();
        assert_eq!(state.completion_steps(), 0);
        let f = state.compute_g_and_f().unwrap();
        assert_eq!(f.len(), 4);
    }

    #[test]
    fn unimodular_simplex_embeds_at_top_height() {
        let p = LatticePolytope::from_i64_points(&[&[0, 0], &[1, 0], &[0, 1]]).unwrap();
        let (_, frame, state) = embed_and_frame(&p, BoundMode::Hard).unwrap();
        assert_eq!(state.degree(), 0);
        assert_eq!(state.x(), &LatticeVector::from_i64(&[1, 1, 3]));
        assert_eq!(state.v_indices(), &[0, 1, 2]);
        assert_eq!(frame.cell_indices(), &[0, 1, 2]);
    }

    #[test]
    fn stages_reject_degree_zero() {
        let p = LatticePolytope::from_i64_points(&[&[0, 0], &[1, 0], &[0, 1]]).unwrap();
        let (_, frame, mut state) = embed_and_frame(&p, BoundMode::Hard).unwrap();
        assert!(state.compute_f1(&frame).is_err());
    }

    #[test]
    fn stages_enforce_order() {
        let (_, _, mut state) = embed_and_frame(&unit_square(), BoundMode::Hard).unwrap();
        assert!(state.compute_z_f2().is_err());
        assert!(state.compute_f3().is_err());
        assert!(state.compute_g_and_f().is_err());
    }

    #[test]
    fn embed_requires_full_dimension() {
        let flat = LatticePolytope::from_i64_points(&[&[0, 0], &[1, 0]]).unwrap();
        assert!(embed_and_frame(&flat, BoundMode::Hard).is_err());
    }

    #[test]
    fn frame_coordinates_agree_with_state() {
        let (emb, frame, state) = embed_and_frame(&unit_square(), BoundMode::Hard).unwrap();
        for (j, w) in emb.lifted_vertices().iter().enumerate() {
            assert_eq!(frame.coordinates(w), state.vertex_coordinates()[j]);
        }
    }
}
