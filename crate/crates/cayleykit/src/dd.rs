//! Dual descriptions of polyhedral cones by the incremental double
//! description method, in exact integer arithmetic.
//!
//! `dual_description` computes generators of `{y : <a_i, y> >= 0 for all i}`:
//! a lineality basis plus the extreme rays modulo lineality. Both conversion
//! directions of the toolkit go through it: vertices-to-facets feeds lifted
//! points as constraints, facets-to-vertices feeds homogenized inequalities.
//! Sized for desk-scale inputs (dimension <= 8-ish, a few dozen constraints);
//! the adjacency test is the standard combinatorial one, quadratic in rays.

use crate::vector::{sign, LatticeVector};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};

#[derive(Clone, Debug)]
pub struct DualDescription {
    /// Basis of the lineality space, row-echelon reduced.
    pub lineality: Vec<LatticeVector>,
    /// Extreme rays modulo lineality: primitive, reduced against the
    /// lineality basis, sorted lexicographically.
    pub rays: Vec<LatticeVector>,
}

#[derive(Clone)]
struct Ray {
    v: LatticeVector,
    /// bit i set <=> constraint i is tight on this ray
    zeros: Vec<u64>,
}

fn bit_set(bits: &mut [u64], i: usize) {
    bits[i / 64] |= 1 << (i % 64);
}

fn is_subset(sub: &[u64], sup: &[u64]) -> bool {
    sub.iter().zip(sup).all(|(a, b)| a & !b == 0)
}

fn intersect(a: &[u64], b: &[u64]) -> Vec<u64> {
    a.iter().zip(b).map(|(x, y)| x & y).collect()
}

pub fn dual_description(constraints: &[LatticeVector], dim: usize) -> DualDescription {
    let words = constraints.len().div_ceil(64).max(1);
    let mut lineality: Vec<LatticeVector> =
        (0..dim).map(|i| LatticeVector::unit(dim, i)).collect();
    let mut rays: Vec<Ray> = Vec::new();

    for (idx, a) in constraints.iter().enumerate() {
        debug_assert_eq!(a.dim(), dim);
        if a.is_zero() {
            // trivial constraint: tight everywhere
            for r in &mut rays {
                bit_set(&mut r.zeros, idx);
            }
            continue;
        }
        let pivot = lineality.iter().position(|l| !a.dot(l).is_zero());
        if let Some(p) = pivot {
            // constraint cuts the lineality space: split off one direction
            let mut l0 = lineality.swap_remove(p);
            let mut s0 = a.dot(&l0);
            if s0.is_negative() {
                l0 = l0.neg();
                s0 = -s0;
            }
            for l in &mut lineality {
                let t = a.dot(l);
                if !t.is_zero() {
                    *l = l.scale(&s0).sub(&l0.scale(&t)).primitive();
                }
            }
            for r in &mut rays {
                let t = a.dot(&r.v);
                if !t.is_zero() {
                    r.v = r.v.scale(&s0).sub(&l0.scale(&t)).primitive();
                }
                bit_set(&mut r.zeros, idx);
            }
            let mut zeros = vec![0u64; words];
            for i in 0..idx {
                bit_set(&mut zeros, i); // l0 was lineality: tight on all earlier constraints
            }
            rays.push(Ray { v: l0, zeros });
            continue;
        }

        // lineality untouched: split rays by sign against the constraint
        let evals: Vec<(i32, BigInt)> = rays
            .iter()
            .map(|r| {
                let t = a.dot(&r.v);
                (sign(&t), t)
            })
            .collect();
        let mut new_rays: Vec<Ray> = Vec::new();
        for (pi, p) in rays.iter().enumerate() {
            if evals[pi].0 <= 0 {
                continue;
            }
            for (ni, n) in rays.iter().enumerate() {
                if evals[ni].0 >= 0 {
                    continue;
                }
                let common = intersect(&p.zeros, &n.zeros);
                let blocked = rays.iter().enumerate().any(|(ri, r)| {
                    ri != pi && ri != ni && is_subset(&common, &r.zeros)
                });
                if blocked {
                    continue;
                }
                // positive combination tight on the new constraint
                let v = n
                    .v
                    .scale(&evals[pi].1)
                    .sub(&p.v.scale(&evals[ni].1))
                    .primitive();
                let mut zeros = common;
                bit_set(&mut zeros, idx);
                // exact zero set: combinations can be accidentally tight elsewhere
                for (i, c) in constraints.iter().enumerate().take(idx) {
                    if zeros[i / 64] & (1 << (i % 64)) == 0 && c.dot(&v).is_zero() {
                        bit_set(&mut zeros, i);
                    }
                }
                new_rays.push(Ray { v, zeros });
            }
        }
        let mut kept: Vec<Ray> = Vec::new();
        for (ri, mut r) in rays.into_iter().enumerate() {
            match evals[ri].0 {
                1 => kept.push(r),
                0 => {
                    bit_set(&mut r.zeros, idx);
                    kept.push(r);
                }
                _ => {}
            }
        }
        kept.extend(new_rays);
        rays = kept;
    }

    let lineality = echelon_basis(lineality, dim);
    let mut out: Vec<LatticeVector> = rays
        .into_iter()
        .map(|r| reduce_mod_lineality(&r.v, &lineality))
        .collect();
    out.sort();
    out.dedup();
    DualDescription {
        lineality,
        rays: out,
    }
}

/// Reduced row echelon basis of the span of `vecs`, rescaled to primitive
/// integer rows with positive pivots. Unique for a given row space, so the
/// output is canonical no matter how the spanning set was produced.
fn echelon_basis(vecs: Vec<LatticeVector>, dim: usize) -> Vec<LatticeVector> {
    let mut rows: Vec<Vec<BigRational>> = vecs
        .iter()
        .map(|v| {
            v.coords()
                .iter()
                .map(|c| BigRational::from(c.clone()))
                .collect()
        })
        .collect();
    let mut pivots: Vec<(usize, usize)> = Vec::new(); // (row, col)
    let mut next_row = 0;
    for col in 0..dim {
        let Some(p) = (next_row..rows.len()).find(|&r| !rows[r][col].is_zero()) else {
            continue;
        };
        rows.swap(next_row, p);
        let pv = rows[next_row][col].clone();
        for x in rows[next_row].iter_mut() {
            *x /= pv.clone();
        }
        for r in 0..rows.len() {
            if r == next_row || rows[r][col].is_zero() {
                continue;
            }
            let f = rows[r][col].clone();
            for j in 0..dim {
                let t = &rows[next_row][j] * &f;
                rows[r][j] -= t;
            }
        }
        pivots.push((next_row, col));
        next_row += 1;
    }
    pivots
        .into_iter()
        .map(|(r, _)| {
            let mut lcm = BigInt::from(1);
            for x in &rows[r] {
                lcm = num_integer::lcm(lcm, x.denom().clone());
            }
            LatticeVector::new(
                rows[r]
                    .iter()
                    .map(|x| (x * BigRational::from(lcm.clone())).to_integer())
                    .collect(),
            )
            .primitive()
        })
        .collect()
}

/// Canonical representative of a ray modulo the span of the lineality basis:
/// zero out each lineality pivot coordinate over Q, then rescale to a
/// primitive integer vector.
fn reduce_mod_lineality(ray: &LatticeVector, lineality: &[LatticeVector]) -> LatticeVector {
    if lineality.is_empty() {
        return ray.primitive();
    }
    let dim = ray.dim();
    let mut r: Vec<BigRational> = ray
        .coords()
        .iter()
        .map(|c| BigRational::from(c.clone()))
        .collect();
    for l in lineality {
        let pc = (0..dim)
            .find(|&j| !l.coords()[j].is_zero())
            .expect("lineality basis row is zero");
        if r[pc].is_zero() {
            continue;
        }
        let f = &r[pc] / BigRational::from(l.coords()[pc].clone());
        for j in 0..dim {
            let t = &f * BigRational::from(l.coords()[j].clone());
            r[j] -= t;
        }
    }
    // clear denominators, primitivize
    let mut lcm = BigInt::from(1);
    for x in &r {
        lcm = num_integer::lcm(lcm, x.denom().clone());
    }
    let ints = LatticeVector::new(
        r.iter()
            .map(|x| (x * BigRational::from(lcm.clone())).to_integer())
            .collect(),
    );
    ints.primitive()
}

/// Brute-force facet enumeration for full-dimensional point sets: every
/// n-subset spanning a hyperplane with all points on one side is a facet.
/// Exponential; retained as the independent test oracle for the DD path.
pub fn brute_force_facets(points: &[LatticeVector], dim: usize) -> Vec<(LatticeVector, BigInt)> {
    assert!(dim >= 1);
    let m = points.len();
    let mut found: Vec<(LatticeVector, BigInt)> = Vec::new();
    let mut idx: Vec<usize> = (0..dim).collect();
    loop {
        // candidate hyperplane through points[idx]
        let base = &points[idx[0]];
        let diffs: Vec<Vec<BigInt>> = idx[1..]
            .iter()
            .map(|&i| points[i].sub(base).into_coords())
            .collect();
        let mat = crate::matrix::IntMatrix::from_rows(diffs);
        let kernel = mat.nullspace();
        if kernel.len() == 1 {
            let normal = kernel.into_iter().next().unwrap();
            let offset = normal.dot(base);
            let mut above = false;
            let mut below = false;
            for p in points {
                match sign(&(normal.dot(p) - &offset)) {
                    1 => above = true,
                    -1 => below = true,
                    _ => {}
                }
            }
            if !(above && below) {
                let (normal, offset) = if above {
                    (normal.neg(), -offset)
                } else {
                    (normal, offset)
                };
                if !found.iter().any(|(n, b)| *n == normal && *b == offset) {
                    found.push((normal, offset));
                }
            }
        }
        // next combination
        let mut k = dim;
        loop {
            if k == 0 {
                found.sort();
                return found;
            }
            k -= 1;
            if idx[k] < m - (dim - k) {
                idx[k] += 1;
                for j in k + 1..dim {
                    idx[j] = idx[j - 1] + 1;
                }
                break;
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn lv(c: &[i64]) -> LatticeVector {
        LatticeVector::from_i64(c)
    }

    #[test]
    fn octant_self_dual() {
        // {y : y_i >= 0} has rays e_i, no lineality
        let cons = vec![lv(&[1, 0, 0]), lv(&[0, 1, 0]), lv(&[0, 0, 1])];
        let dd = dual_description(&cons, 3);
        assert!(dd.lineality.is_empty());
        assert_eq!(
            dd.rays,
            vec![lv(&[0, 0, 1]), lv(&[0, 1, 0]), lv(&[1, 0, 0])]
        );
    }

    #[test]
    fn halfspace_has_lineality() {
        let cons = vec![lv(&[1, 0])];
        let dd = dual_description(&cons, 2);
        assert_eq!(dd.lineality, vec![lv(&[0, 1])]);
        assert_eq!(dd.rays, vec![lv(&[1, 0])]);
    }

    #[test]
    fn square_cone_v_to_h() {
        // cone over unit square at height 1: constraints are the lifted points
        let cons = vec![
            lv(&[0, 0, 1]),
            lv(&[1, 0, 1]),
            lv(&[0, 1, 1]),
            lv(&[1, 1, 1]),
        ];
        let dd = dual_description(&cons, 3);
        assert!(dd.lineality.is_empty());
        // facets of the square: x>=0, y>=0, x<=1, y<=1 as (a, b) with <a,p>+b>=0
        let mut expect = vec![
            lv(&[1, 0, 0]),
            lv(&[0, 1, 0]),
            lv(&[-1, 0, 1]),
            lv(&[0, -1, 1]),
        ];
        expect.sort();
        assert_eq!(dd.rays, expect);
    }

    #[test]
    fn opposite_constraints_make_equation() {
        let cons = vec![lv(&[1, 1]), lv(&[-1, -1])];
        let dd = dual_description(&cons, 2);
        assert_eq!(dd.lineality, vec![lv(&[1, -1])]);
        assert!(dd.rays.is_empty());
    }

    #[test]
    fn brute_force_simplex() {
        let pts = vec![lv(&[0, 0]), lv(&[1, 0]), lv(&[0, 1])];
        let mut facets = brute_force_facets(&pts, 2);
        facets.sort();
        assert_eq!(facets.len(), 3);
    }
}
