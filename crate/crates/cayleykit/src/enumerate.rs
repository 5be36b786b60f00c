//! Exact lattice point enumeration in dilated polytopes.
//!
//! The enumerator walks coordinates left to right, maintaining for every
//! inequality the partial sum over the fixed prefix and a precomputed bound on
//! what the free suffix can still contribute. Intersecting the resulting
//! per-coordinate intervals prunes infeasible branches before they are
//! explored, so the cost scales with the number of near-feasible prefixes
//! rather than the volume of the bounding box.
//!
//! All arithmetic is exact. Inputs whose intermediate values provably fit in
//! `i128` run on machine integers; everything else falls back to `BigInt`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::polytope::{FacetSystem, LatticePolytope};
use crate::vector::LatticeVector;

/// Lattice points of `mP`, lex-sorted. With `interior_only`, the lattice
/// points of the relative interior of `mP` instead.
///
/// `m = 0` yields the single point 0 in both modes.
pub fn lattice_points(
    poly: &LatticePolytope,
    m: &BigInt,
    interior_only: bool,
) -> Result<Vec<LatticeVector>> {
    match task(poly, m, interior_only)? {
        Task::Origin => Ok(vec![LatticeVector::zero(poly.ambient_dim())]),
        Task::Run(sys) => Ok(sys.solve(true).0),
    }
}

/// Number of lattice points of `mP` (or of its relative interior), without
/// materializing them.
pub fn count_lattice_points(
    poly: &LatticePolytope,
    m: &BigInt,
    interior_only: bool,
) -> Result<BigInt> {
    match task(poly, m, interior_only)? {
        Task::Origin => Ok(BigInt::one()),
        Task::Run(sys) => Ok(sys.solve(false).1),
    }
}

enum Task {
    Origin,
    Run(System),
}

fn task(poly: &LatticePolytope, m: &BigInt, interior_only: bool) -> Result<Task> {
    if m.is_negative() {
        return Err(Error::invalid(format!("dilation factor {m} is negative")));
    }
    if m.is_zero() {
        // 0P degenerates to the origin, whose relative interior is itself.
        return Ok(Task::Origin);
    }
    Ok(Task::Run(System::build(poly, m, interior_only)))
}

/// `⟨row, x⟩ ≤ bound` constraints plus a bounding box, over BigInt.
struct System {
    n: usize,
    rows: Vec<(Vec<BigInt>, BigInt)>,
    lo: Vec<BigInt>,
    hi: Vec<BigInt>,
}

impl System {
    fn build(poly: &LatticePolytope, m: &BigInt, interior_only: bool) -> System {
        let n = poly.ambient_dim();
        let facets: &FacetSystem = poly.facets();

        let mut rows = Vec::new();
        for f in facets.inequalities() {
            let mut bound = &f.offset * m;
            if interior_only {
                bound -= 1;
            }
            rows.push((f.normal.coords().to_vec(), bound));
        }
        for e in facets.equations() {
            let bound = &e.offset * m;
            rows.push((e.normal.coords().to_vec(), bound.clone()));
            rows.push((
                e.normal.coords().iter().map(|c| -c).collect(),
                -bound,
            ));
        }

        let mut lo = vec![BigInt::zero(); n];
        let mut hi = vec![BigInt::zero(); n];
        for j in 0..n {
            let col = poly.vertices().iter().map(|v| &v.coords()[j]);
            let min = col.clone().min().expect("nonempty").clone();
            let max = col.max().expect("nonempty").clone();
            lo[j] = min * m;
            hi[j] = max * m;
        }

        System { n, rows, lo, hi }
    }

    /// Returns the points (when `collect`) and always the exact count.
    fn solve(&self, collect: bool) -> (Vec<LatticeVector>, BigInt) {
        if self.fits_i128() {
            let rows: Vec<(Vec<i128>, i128)> = self
                .rows
                .iter()
                .map(|(a, b)| (a.iter().map(to_i128).collect(), to_i128(b)))
                .collect();
            let lo: Vec<i128> = self.lo.iter().map(to_i128).collect();
            let hi: Vec<i128> = self.hi.iter().map(to_i128).collect();
            let mut walker = Walker::new(self.n, rows, lo, hi, collect);
            walker.run();
            let points = walker
                .points
                .into_iter()
                .map(|p| LatticeVector::new(p.into_iter().map(BigInt::from).collect()))
                .collect();
            (points, walker.count)
        } else {
            let mut walker = Walker::new(
                self.n,
                self.rows.clone(),
                self.lo.clone(),
                self.hi.clone(),
                collect,
            );
            walker.run();
            let points = walker
                .points
                .into_iter()
                .map(LatticeVector::new)
                .collect();
            (points, walker.count)
        }
    }

    /// Conservative overflow check: every intermediate the walker forms is a
    /// sum of at most three values bounded by a row's worst-case magnitude.
    fn fits_i128(&self) -> bool {
        let limit = BigInt::from(i128::MAX >> 3);
        self.rows.iter().all(|(a, b)| {
            let mut worst = b.abs();
            for (j, c) in a.iter().enumerate() {
                worst += c.abs() * self.lo[j].abs().max(self.hi[j].abs());
            }
            worst < limit
        }) && self.lo.iter().chain(self.hi.iter()).all(|v| v.abs() < limit)
    }
}

fn to_i128(v: &BigInt) -> i128 {
    i128::try_from(v).expect("checked by fits_i128")
}

/// Shared recursion for both scalar types.
struct Walker<T> {
    n: usize,
    rows: Vec<(Vec<T>, T)>,
    lo: Vec<T>,
    hi: Vec<T>,
    /// `suffix_min[i][k]`: least value `Σ_{j≥k} a_{ij} x_j` can take over the box.
    suffix_min: Vec<Vec<T>>,
    partial: Vec<T>,
    prefix: Vec<T>,
    collect: bool,
    points: Vec<Vec<T>>,
    count: BigInt,
}

trait Scalar: Integer + Signed + Clone {
    fn to_big(&self) -> BigInt;
}

impl Scalar for i128 {
    fn to_big(&self) -> BigInt {
        BigInt::from(*self)
    }
}

impl Scalar for BigInt {
    fn to_big(&self) -> BigInt {
        self.clone()
    }
}

impl<T: Scalar> Walker<T> {
    fn new(n: usize, rows: Vec<(Vec<T>, T)>, lo: Vec<T>, hi: Vec<T>, collect: bool) -> Self {
        let suffix_min = rows
            .iter()
            .map(|(a, _)| {
                let mut suff = vec![T::zero(); n + 1];
                for k in (0..n).rev() {
                    let at_lo = a[k].clone() * lo[k].clone();
                    let at_hi = a[k].clone() * hi[k].clone();
                    suff[k] = suff[k + 1].clone() + at_lo.min(at_hi);
                }
                suff
            })
            .collect();
        let partial = vec![T::zero(); rows.len()];
        Walker {
            n,
            rows,
            lo,
            hi,
            suffix_min,
            partial,
            prefix: Vec::with_capacity(n),
            collect,
            points: Vec::new(),
            count: BigInt::zero(),
        }
    }

    fn run(&mut self) {
        self.descend(0);
    }

    fn descend(&mut self, k: usize) {
        if k == self.n {
            self.count += 1;
            if self.collect {
                self.points.push(self.prefix.clone());
            }
            return;
        }

        // Intersect the box interval with the interval each row permits for
        // x_k, assuming the suffix contributes as little as it can.
        let mut low = self.lo[k].clone();
        let mut high = self.hi[k].clone();
        for (i, (a, b)) in self.rows.iter().enumerate() {
            let cap =
                b.clone() - self.partial[i].clone() - self.suffix_min[i][k + 1].clone();
            let c = &a[k];
            if c.is_zero() {
                if cap.is_negative() {
                    return;
                }
            } else if c.is_positive() {
                high = high.min(cap.div_floor(c));
            } else {
                low = low.max(cap.div_ceil(c));
            }
            if low > high {
                return;
            }
        }

        if k + 1 == self.n && !self.collect {
            // Last coordinate: the interval is exact, so just count it.
            self.count += (high - low + T::one()).to_big();
            return;
        }

        let saved = self.partial.clone();
        for i in 0..self.rows.len() {
            self.partial[i] =
                saved[i].clone() + self.rows[i].0[k].clone() * low.clone();
        }
        let mut x = low;
        loop {
            self.prefix.push(x.clone());
            self.descend(k + 1);
            self.prefix.pop();
            if x == high {
                break;
            }
            x = x + T::one();
            for i in 0..self.rows.len() {
                let step = self.rows[i].0[k].clone();
                self.partial[i] = self.partial[i].clone() + step;
            }
        }
        self.partial = saved;
    }
}

/// Reference enumerator: scan the whole bounding box of `mP` and test every
/// candidate against every constraint. Quadratically slower than
/// [`lattice_points`]; kept as an independent oracle for tests.
pub fn naive_lattice_points(
    poly: &LatticePolytope,
    m: &BigInt,
    interior_only: bool,
) -> Result<Vec<LatticeVector>> {
    if m.is_negative() {
        return Err(Error::invalid(format!("dilation factor {m} is negative")));
    }
    if m.is_zero() {
        return Ok(vec![LatticeVector::zero(poly.ambient_dim())]);
    }
    let n = poly.ambient_dim();
    let facets = poly.facets().dilate(m);

    let mut lo = Vec::with_capacity(n);
    let mut hi = Vec::with_capacity(n);
    for j in 0..n {
        let col = poly.vertices().iter().map(|v| &v.coords()[j]);
        lo.push(col.clone().min().expect("nonempty") * m);
        hi.push(col.max().expect("nonempty") * m);
    }

    let mut out = Vec::new();
    let mut cursor: Vec<BigInt> = lo.clone();
    'scan: loop {
        let p = LatticeVector::new(cursor.clone());
        let inside = if interior_only {
            facets.contains_in_relative_interior(&p)
        } else {
            facets.contains(&p)
        };
        if inside {
            out.push(p);
        }
        for j in (0..n).rev() {
            if cursor[j] < hi[j] {
                cursor[j] += 1;
                // Reset trailing coordinates to their lower bounds.
                for (jj, c) in cursor.iter_mut().enumerate().skip(j + 1) {
                    *c = lo[jj].clone();
                }
                continue 'scan;
            }
        }
        break;
    }
    out.sort();
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polytope::cayley_sum;

    fn poly(points: &[&[i64]]) -> LatticePolytope {
        LatticePolytope::from_i64_points(points).unwrap()
    }

    fn big(v: i64) -> BigInt {
        BigInt::from(v)
    }

    #[test]
    fn unit_square_dilations() {
        let sq = poly(&[&[0, 0], &[1, 0], &[0, 1], &[1, 1]]);
        let pts = lattice_points(&sq, &big(2), false).unwrap();
        assert_eq!(pts.len(), 9);
        let interior = lattice_points(&sq, &big(2), true).unwrap();
        assert_eq!(interior, vec![LatticeVector::from_i64(&[1, 1])]);
        assert_eq!(count_lattice_points(&sq, &big(2), false).unwrap(), big(9));
        assert_eq!(count_lattice_points(&sq, &big(2), true).unwrap(), big(1));
    }

    #[test]
    fn doubled_triangle_has_no_interior_points() {
        let tri = poly(&[&[0, 0], &[1, 0], &[0, 1]]);
        assert!(lattice_points(&tri, &big(2), true).unwrap().is_empty());
        assert_eq!(count_lattice_points(&tri, &big(3), true).unwrap(), big(1));
    }

    #[test]
    fn zero_dilation_is_the_origin() {
        let tri = poly(&[&[5, 5], &[7, 5], &[5, 8]]);
        let pts = lattice_points(&tri, &BigInt::zero(), false).unwrap();
        assert_eq!(pts, vec![LatticeVector::zero(2)]);
        let pts = lattice_points(&tri, &BigInt::zero(), true).unwrap();
        assert_eq!(pts, vec![LatticeVector::zero(2)]);
    }

    #[test]
    fn segment_counts() {
        let seg = poly(&[&[0], &[3]]);
        assert_eq!(count_lattice_points(&seg, &big(5), false).unwrap(), big(16));
        assert_eq!(count_lattice_points(&seg, &big(1), true).unwrap(), big(2));
    }

    #[test]
    fn lower_dimensional_diagonal() {
        let diag = poly(&[&[0, 0], &[2, 2]]);
        let pts = lattice_points(&diag, &big(1), false).unwrap();
        assert_eq!(
            pts,
            vec![
                LatticeVector::from_i64(&[0, 0]),
                LatticeVector::from_i64(&[1, 1]),
                LatticeVector::from_i64(&[2, 2]),
            ]
        );
        let interior = lattice_points(&diag, &big(1), true).unwrap();
        assert_eq!(interior, vec![LatticeVector::from_i64(&[1, 1])]);
    }

    #[test]
    fn point_polytope_is_its_own_interior() {
        let pt = poly(&[&[4, -2]]);
        let pts = lattice_points(&pt, &big(1), true).unwrap();
        assert_eq!(pts, vec![LatticeVector::from_i64(&[4, -2])]);
        let pts3 = lattice_points(&pt, &big(3), false).unwrap();
        assert_eq!(pts3, vec![LatticeVector::from_i64(&[12, -6])]);
    }

    #[test]
    fn cube_counts() {
        let cube = poly(&[
            &[0, 0, 0],
            &[1, 0, 0],
            &[0, 1, 0],
            &[0, 0, 1],
            &[1, 1, 0],
            &[1, 0, 1],
            &[0, 1, 1],
            &[1, 1, 1],
        ]);
        assert_eq!(count_lattice_points(&cube, &big(1), false).unwrap(), big(8));
        assert_eq!(count_lattice_points(&cube, &big(2), false).unwrap(), big(27));
        assert_eq!(count_lattice_points(&cube, &big(3), true).unwrap(), big(8));
    }

    #[test]
    fn matches_naive_scan() {
        let shapes = vec![
            poly(&[&[0, 0], &[3, 1], &[1, 4], &[-2, 2]]),
            poly(&[&[0, 0, 0], &[2, 0, 1], &[0, 3, 1], &[1, 1, 2]]),
            poly(&[&[-1, -1], &[2, -1], &[-1, 2]]),
            poly(&[&[0, 0, 0], &[2, 2, 0], &[0, 2, 2]]),
        ];
        for p in &shapes {
            for m in 1..=3i64 {
                for interior in [false, true] {
                    let fast = lattice_points(p, &big(m), interior).unwrap();
                    let slow = naive_lattice_points(p, &big(m), interior).unwrap();
                    assert_eq!(fast, slow, "mismatch on {p:?} m={m} interior={interior}");
                    assert_eq!(
                        count_lattice_points(p, &big(m), interior).unwrap(),
                        BigInt::from(fast.len()),
                    );
                }
            }
        }
    }

    #[test]
    fn huge_coordinates_take_the_bigint_path() {
        let top = BigInt::from(2).pow(130);
        let seg = LatticePolytope::new(vec![
            LatticeVector::new(vec![BigInt::zero()]),
            LatticeVector::new(vec![top.clone()]),
        ])
        .unwrap();
        assert_eq!(
            count_lattice_points(&seg, &BigInt::one(), false).unwrap(),
            top + 1
        );
    }

    #[test]
    fn cayley_prism_points() {
        let seg = poly(&[&[0], &[2]]);
        let short = poly(&[&[0], &[1]]);
        let c = cayley_sum(&[seg, short]).unwrap();
        // Trapezoid conv{(0,0),(2,0),(0,1),(1,1)}: three points on y=0, two on y=1.
        assert_eq!(count_lattice_points(&c, &big(1), false).unwrap(), big(5));
    }
}
