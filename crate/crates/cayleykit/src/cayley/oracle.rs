//! Exhaustive search for the minimal Cayley codimension.
//!
//! Independent of the constructive pipeline: a Cayley structure with target
//! simplex `Δ_s` is determined by where an affine lattice basis goes, so for
//! each `s` from large to small we enumerate all assignments of simplex
//! vertices to a fixed affine basis of the polytope, solve for the affine
//! map, and keep the first one that is integral, vertex-valued, and onto.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::affine::normalize_full_dim;
use crate::error::{Error, Result};
use crate::matrix::IntMatrix;
use crate::polytope::LatticePolytope;
use crate::vector::LatticeVector;

use super::{assemble, simplex_vertex_index, CayleyDecomposition};

/// Vertex count above which [`minimal_cayley_codim`] refuses to run without
/// an explicit budget.
pub const DEFAULT_ORACLE_VERTEX_BUDGET: usize = 10;

/// Minimal `q` over all Cayley structures on `p`, with a fully verified
/// witness achieving it.
///
/// Works in the polytope's own affine lattice, so `q* + s = dim p`. Every
/// polytope carries the trivial structure with `s = 0`, hence `q* ≤ dim p`;
/// the search walks `s` downward from `min(dim p, #vertices − 1)` and
/// returns at the first feasible level, taking the lexicographically
/// smallest feasible basis assignment.
///
/// The enumeration is exponential in the vertex count, so inputs with more
/// than `vertex_budget` vertices (default
/// [`DEFAULT_ORACLE_VERTEX_BUDGET`]) are rejected.
pub fn minimal_cayley_codim(
    p: &LatticePolytope,
    vertex_budget: Option<usize>,
) -> Result<(usize, CayleyDecomposition)> {
    let budget = vertex_budget.unwrap_or(DEFAULT_ORACLE_VERTEX_BUDGET);
    if p.n_vertices() > budget {
        return Err(Error::BudgetExceeded {
            what: "oracle vertex enumeration",
            actual: p.n_vertices(),
            limit: budget,
        });
    }
    let norm = normalize_full_dim(p)?;
    let qp = norm.polytope.clone();
    let n = qp.ambient_dim();
    let m = qp.n_vertices();

    if n > 0 {
        let basis = affine_basis(&qp)?;
        let linv = lifted_basis_inverse(&qp, &basis)?;
        for s in (1..=n.min(m - 1)).rev() {
            if let Some((a, c)) = first_feasible_assignment(&qp, &linv, s)? {
                let dec = assemble(p, &norm, a, c, Vec::new())?;
                return Ok((n - s, dec));
            }
        }
    }

    let trivial = assemble(
        p,
        &norm,
        IntMatrix::zero(0, n),
        LatticeVector::zero(0),
        Vec::new(),
    )?;
    Ok((n, trivial))
}

/// Whether some Cayley structure on `p` has a single-point factor; for
/// full-dimensional inputs this is another route to the lattice pyramid
/// property. Subject to the same vertex budget as the codimension search.
pub fn admits_pyramid_split(
    p: &LatticePolytope,
    vertex_budget: Option<usize>,
) -> Result<bool> {
    let budget = vertex_budget.unwrap_or(DEFAULT_ORACLE_VERTEX_BUDGET);
    if p.n_vertices() > budget {
        return Err(Error::BudgetExceeded {
            what: "oracle vertex enumeration",
            actual: p.n_vertices(),
            limit: budget,
        });
    }
    let norm = normalize_full_dim(p)?;
    let qp = norm.polytope;
    let n = qp.ambient_dim();
    let m = qp.n_vertices();
    if n == 0 || m < 2 {
        return Ok(false);
    }
    // A point factor in any structure forces one over Δ_1: collapse all
    // other markers to 0. So scanning s = 1 is enough.
    let basis = affine_basis(&qp)?;
    let linv = lifted_basis_inverse(&qp, &basis)?;
    let mut assignment = vec![0usize; n + 1];
    loop {
        if let Some((a, c)) = solve_assignment(&qp, &linv, 1, &assignment)? {
            let proj = crate::affine::AffineLatticeMap::new(a, c)?;
            let mut class_sizes = [0usize; 2];
            for w in qp.vertices() {
                let marker = simplex_vertex_index(&proj.apply(w)?)
                    .ok_or_else(|| Error::invariant("feasible assignment lost a vertex"))?;
                class_sizes[marker] += 1;
            }
            if class_sizes.contains(&1) {
                return Ok(true);
            }
        }
        if !advance(&mut assignment, 1) {
            return Ok(false);
        }
    }
}

/// First `n + 1` affinely independent vertices, by index.
fn affine_basis(qp: &LatticePolytope) -> Result<Vec<usize>> {
    let n = qp.ambient_dim();
    let verts = qp.vertices();
    let mut basis = vec![0usize];
    let mut diffs: Vec<Vec<BigInt>> = Vec::new();
    for j in 1..verts.len() {
        if basis.len() == n + 1 {
            break;
        }
        let mut trial = diffs.clone();
        trial.push(verts[j].sub(&verts[0]).into_coords());
        if IntMatrix::from_rows(trial.clone()).rank() == trial.len() {
            diffs = trial;
            basis.push(j);
        }
    }
    if basis.len() != n + 1 {
        return Err(Error::invariant("full-dimensional polytope lacks an affine basis"));
    }
    Ok(basis)
}

/// Rows of the inverse of the matrix whose columns are the lifted basis
/// vertices `(v, 1)`. Summing subsets of these rows solves for affine maps
/// with prescribed basis images.
fn lifted_basis_inverse(
    qp: &LatticePolytope,
    basis: &[usize],
) -> Result<Vec<Vec<BigRational>>> {
    let n = qp.ambient_dim();
    let verts = qp.vertices();
    let mut rows = vec![vec![BigInt::zero(); n + 1]; n + 1];
    for (col, &bi) in basis.iter().enumerate() {
        for r in 0..n {
            rows[r][col] = verts[bi].coords()[r].clone();
        }
        rows[n][col] = BigInt::one();
    }
    let inv = IntMatrix::from_rows(rows).inverse_rational()?;
    Ok((0..=n).map(|i| inv.row(i).to_vec()).collect())
}

/// Walk the `(s+1)^(n+1)` basis assignments in lexicographic order and
/// return the affine map of the first feasible one.
fn first_feasible_assignment(
    qp: &LatticePolytope,
    linv: &[Vec<BigRational>],
    s: usize,
) -> Result<Option<(IntMatrix, LatticeVector)>> {
    let n = qp.ambient_dim();
    let mut assignment = vec![0usize; n + 1];
    loop {
        if let Some(found) = solve_assignment(qp, linv, s, &assignment)? {
            return Ok(Some(found));
        }
        if !advance(&mut assignment, s) {
            return Ok(None);
        }
    }
}

/// Odometer increment in lexicographic order; `false` once exhausted.
fn advance(assignment: &mut [usize], s: usize) -> bool {
    for slot in assignment.iter_mut().rev() {
        if *slot < s {
            *slot += 1;
            return true;
        }
        *slot = 0;
    }
    false
}

/// Solve for the affine map sending basis vertex `k` to the simplex vertex
/// numbered `assignment[k]`, and accept it only if it is integral, sends
/// every vertex to a simplex vertex, and attains all of them.
fn solve_assignment(
    qp: &LatticePolytope,
    linv: &[Vec<BigRational>],
    s: usize,
    assignment: &[usize],
) -> Result<Option<(IntMatrix, LatticeVector)>> {
    let n = qp.ambient_dim();
    // A marker never assigned to a basis vertex gives the zero functional
    // and can't be attained by anybody; skip early.
    for marker in 1..=s {
        if !assignment.contains(&marker) {
            return Ok(None);
        }
    }

    // Row j of the map is the sum of the inverse rows picked by marker j+1.
    let mut a_rows = Vec::with_capacity(s);
    let mut shift = Vec::with_capacity(s);
    for marker in 1..=s {
        let mut row = vec![BigRational::zero(); n + 1];
        for (k, &mk) in assignment.iter().enumerate() {
            if mk == marker {
                for (slot, x) in row.iter_mut().zip(&linv[k]) {
                    *slot += x;
                }
            }
        }
        if !row.iter().all(|x| x.is_integer()) {
            return Ok(None);
        }
        a_rows.push(row[..n].iter().map(|x| x.to_integer()).collect::<Vec<_>>());
        shift.push(row[n].to_integer());
    }

    let mut attained = vec![false; s + 1];
    for w in qp.vertices() {
        let mut img = shift.clone();
        for (j, row) in a_rows.iter().enumerate() {
            for (aij, wi) in row.iter().zip(w.coords()) {
                img[j] += aij * wi;
            }
        }
        match simplex_vertex_index(&LatticeVector::new(img)) {
            Some(marker) => attained[marker] = true,
            None => return Ok(None),
        }
    }
    if attained.iter().all(|a| *a) {
        Ok(Some((IntMatrix::from_rows(a_rows), LatticeVector::new(shift))))
    } else {
        Ok(None)
    }
}
