//! Dense exact matrices over Z and Q, sized for desk-scale geometry.
//!
//! Everything here is row-major `Vec<Vec<_>>`. Dimensions stay in single
//! digits for this toolkit, so clarity wins over cleverness throughout.

use crate::error::{Error, Result};
use crate::vector::LatticeVector;
use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

#[derive(Clone, PartialEq, Eq)]
pub struct IntMatrix {
    rows: Vec<Vec<BigInt>>,
    cols: usize,
}

impl IntMatrix {
    pub fn from_rows(rows: Vec<Vec<BigInt>>) -> Self {
        let cols = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|r| r.len() == cols), "ragged matrix");
        IntMatrix { rows, cols }
    }

    pub fn from_i64(rows: &[&[i64]]) -> Self {
        IntMatrix::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&x| BigInt::from(x)).collect())
                .collect(),
        )
    }

    pub fn identity(n: usize) -> Self {
        let mut rows = vec![vec![BigInt::zero(); n]; n];
        for (i, row) in rows.iter_mut().enumerate() {
            row[i] = BigInt::one();
        }
        IntMatrix { rows, cols: n }
    }

    pub fn zero(nrows: usize, ncols: usize) -> Self {
        IntMatrix {
            rows: vec![vec![BigInt::zero(); ncols]; nrows],
            cols: ncols,
        }
    }

    pub fn nrows(&self) -> usize {
        self.rows.len()
    }

    pub fn ncols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> &[BigInt] {
        &self.rows[i]
    }

    pub fn rows(&self) -> &[Vec<BigInt>] {
        &self.rows
    }

    pub fn get(&self, i: usize, j: usize) -> &BigInt {
        &self.rows[i][j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: BigInt) {
        self.rows[i][j] = v;
    }

    pub fn transpose(&self) -> IntMatrix {
        let mut out = IntMatrix::zero(self.cols, self.nrows());
        for i in 0..self.nrows() {
            for j in 0..self.cols {
                out.rows[j][i] = self.rows[i][j].clone();
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &LatticeVector) -> LatticeVector {
        assert_eq!(self.cols, v.dim(), "matrix/vector dimension mismatch");
        LatticeVector::new(
            self.rows
                .iter()
                .map(|row| row.iter().zip(v.coords()).map(|(a, b)| a * b).sum())
                .collect(),
        )
    }

    pub fn mul_mat(&self, other: &IntMatrix) -> IntMatrix {
        assert_eq!(self.cols, other.nrows());
        let mut out = IntMatrix::zero(self.nrows(), other.ncols());
        for i in 0..self.nrows() {
            for k in 0..self.cols {
                let a = &self.rows[i][k];
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.ncols() {
                    let t = a * &other.rows[k][j];
                    out.rows[i][j] += t;
                }
            }
        }
        out
    }

    /// Rank over Q, by fraction-free elimination.
    pub fn rank(&self) -> usize {
        let mut m: Vec<Vec<BigInt>> = self.rows.clone();
        let nrows = m.len();
        let ncols = self.cols;
        let mut rank = 0;
        for col in 0..ncols {
            if rank == nrows {
                break;
            }
            let Some(pivot) = (rank..nrows).find(|&r| !m[r][col].is_zero()) else {
                continue;
            };
            m.swap(rank, pivot);
            for r in rank + 1..nrows {
                if m[r][col].is_zero() {
                    continue;
                }
                let a = m[rank][col].clone();
                let b = m[r][col].clone();
                for c in col..ncols {
                    let t = &m[r][c] * &a - &m[rank][c] * &b;
                    m[r][c] = t;
                }
            }
            rank += 1;
        }
        rank
    }

    /// Determinant by Bareiss fraction-free elimination. Square only.
    pub fn det(&self) -> BigInt {
        assert_eq!(self.nrows(), self.cols, "det of non-square matrix");
        let n = self.nrows();
        if n == 0 {
            return BigInt::one();
        }
        let mut m = self.rows.clone();
        let mut sign = BigInt::one();
        let mut prev = BigInt::one();
        for k in 0..n - 1 {
            if m[k][k].is_zero() {
                let Some(swap) = (k + 1..n).find(|&r| !m[r][k].is_zero()) else {
                    return BigInt::zero();
                };
                m.swap(k, swap);
                sign = -sign;
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let t = (&m[i][j] * &m[k][k] - &m[i][k] * &m[k][j]) / &prev;
                    m[i][j] = t;
                }
                m[i][k] = BigInt::zero();
            }
            prev = m[k][k].clone();
        }
        sign * m[n - 1][n - 1].clone()
    }

    /// Exact inverse over Q. Errors if the matrix is singular.
    pub fn inverse_rational(&self) -> Result<RatMatrix> {
        if self.nrows() != self.cols {
            return Err(Error::invalid("inverse of non-square matrix"));
        }
        let n = self.nrows();
        let mut a: Vec<Vec<BigRational>> = self
            .rows
            .iter()
            .map(|r| r.iter().map(|x| BigRational::from(x.clone())).collect())
            .collect();
        let mut inv: Vec<Vec<BigRational>> = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| {
                        if i == j {
                            BigRational::one()
                        } else {
                            BigRational::zero()
                        }
                    })
                    .collect()
            })
            .collect();
        for col in 0..n {
            let Some(pivot) = (col..n).find(|&r| !a[r][col].is_zero()) else {
                return Err(Error::invalid("singular matrix"));
            };
            a.swap(col, pivot);
            inv.swap(col, pivot);
            let p = a[col][col].clone();
            for j in 0..n {
                a[col][j] /= p.clone();
                inv[col][j] /= p.clone();
            }
            for r in 0..n {
                if r == col || a[r][col].is_zero() {
                    continue;
                }
                let f = a[r][col].clone();
                for j in 0..n {
                    let t = &a[col][j] * &f;
                    a[r][j] -= t;
                    let t = &inv[col][j] * &f;
                    inv[r][j] -= t;
                }
            }
        }
        Ok(RatMatrix { rows: inv, cols: n })
    }

    /// Exact integer inverse; requires |det| = 1.
    pub fn inverse_unimodular(&self) -> Result<IntMatrix> {
        let inv = self.inverse_rational()?;
        inv.to_integer()
            .ok_or_else(|| Error::invalid("matrix is invertible over Q but not over Z"))
    }

    pub fn is_unimodular(&self) -> bool {
        self.nrows() == self.cols && self.det().abs().is_one()
    }

    /// Primitive integer basis of the rational kernel `{x : self * x = 0}`.
    pub fn nullspace(&self) -> Vec<LatticeVector> {
        let nrows = self.nrows();
        let ncols = self.cols;
        let mut a: Vec<Vec<BigRational>> = self
            .rows
            .iter()
            .map(|r| r.iter().map(|x| BigRational::from(x.clone())).collect())
            .collect();
        let mut pivot_col_of_row: Vec<usize> = Vec::new();
        let mut next_row = 0;
        for col in 0..ncols {
            let Some(p) = (next_row..nrows).find(|&r| !a[r][col].is_zero()) else {
                continue;
            };
            a.swap(next_row, p);
            let pv = a[next_row][col].clone();
            for x in a[next_row].iter_mut() {
                *x /= pv.clone();
            }
            for r in 0..nrows {
                if r == next_row || a[r][col].is_zero() {
                    continue;
                }
                let f = a[r][col].clone();
                for j in 0..ncols {
                    let t = &a[next_row][j] * &f;
                    a[r][j] -= t;
                }
            }
            pivot_col_of_row.push(col);
            next_row += 1;
        }
        let pivot_cols: std::collections::BTreeSet<usize> =
            pivot_col_of_row.iter().copied().collect();
        let mut basis = Vec::new();
        for free in 0..ncols {
            if pivot_cols.contains(&free) {
                continue;
            }
            let mut v = vec![BigRational::zero(); ncols];
            v[free] = BigRational::one();
            for (row, &pc) in pivot_col_of_row.iter().enumerate() {
                v[pc] = -a[row][free].clone();
            }
            let mut lcm = BigInt::one();
            for x in &v {
                lcm = num_integer::lcm(lcm, x.denom().clone());
            }
            basis.push(
                LatticeVector::new(
                    v.iter()
                        .map(|x| (x * BigRational::from(lcm.clone())).to_integer())
                        .collect(),
                )
                .primitive(),
            );
        }
        basis
    }

    /// Column-style Hermite reduction: returns `(h, v)` with `self * v = h`,
    /// `v` unimodular, and `h` in column echelon form (each successive pivot
    /// row strictly lower; columns past the pivot count are zero).
    pub fn column_echelon(&self) -> (IntMatrix, IntMatrix) {
        let mut h = self.clone();
        let mut v = IntMatrix::identity(self.cols);
        let ncols = self.cols;
        let mut next_col = 0;
        for row in 0..h.nrows() {
            if next_col == ncols {
                break;
            }
            loop {
                // column with smallest nonzero |entry| in this row, at or after next_col
                let mut best: Option<usize> = None;
                for j in next_col..ncols {
                    if h.rows[row][j].is_zero() {
                        continue;
                    }
                    match best {
                        None => best = Some(j),
                        Some(b) => {
                            if h.rows[row][j].abs() < h.rows[row][b].abs() {
                                best = Some(j);
                            }
                        }
                    }
                }
                let Some(b) = best else {
                    break; // row already clear; no pivot from this row
                };
                h.swap_cols(next_col, b);
                v.swap_cols(next_col, b);
                let mut done = true;
                for j in next_col + 1..ncols {
                    if h.rows[row][j].is_zero() {
                        continue;
                    }
                    let q = div_rounded(&h.rows[row][j], &h.rows[row][next_col]);
                    if !q.is_zero() {
                        h.sub_col(j, next_col, &q);
                        v.sub_col(j, next_col, &q);
                    }
                    if !h.rows[row][j].is_zero() {
                        done = false;
                    }
                }
                if done {
                    break;
                }
            }
            if !h.rows[row][next_col].is_zero() {
                if h.rows[row][next_col].is_negative() {
                    h.neg_col(next_col);
                    v.neg_col(next_col);
                }
                next_col += 1;
            }
        }
        (h, v)
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for row in &mut self.rows {
            row.swap(a, b);
        }
    }

    /// col_j -= q * col_k
    fn sub_col(&mut self, j: usize, k: usize, q: &BigInt) {
        for row in &mut self.rows {
            let t = &row[k] * q;
            row[j] -= t;
        }
    }

    fn neg_col(&mut self, j: usize) {
        for row in &mut self.rows {
            let t = -row[j].clone();
            row[j] = t;
        }
    }
}

impl std::fmt::Debug for IntMatrix {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        writeln!(f, "IntMatrix {}x{} [", self.nrows(), self.cols)?;
        for r in &self.rows {
            writeln!(f, "  {r:?}")?;
        }
        write!(f, "]")
    }
}

#[derive(Clone, PartialEq, Eq)]
pub struct RatMatrix {
    rows: Vec<Vec<BigRational>>,
    cols: usize,
}

impl RatMatrix {
    pub fn nrows(&self) -> usize {
        self.rows.len()
    }

    pub fn ncols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> &[BigRational] {
        &self.rows[i]
    }

    pub fn get(&self, i: usize, j: usize) -> &BigRational {
        &self.rows[i][j]
    }

    pub fn row_is_integral(&self, i: usize) -> bool {
        self.rows[i].iter().all(|x| x.is_integer())
    }

    pub fn to_integer(&self) -> Option<IntMatrix> {
        let mut rows = Vec::with_capacity(self.rows.len());
        for r in &self.rows {
            let mut row = Vec::with_capacity(r.len());
            for x in r {
                if !x.is_integer() {
                    return None;
                }
                row.push(x.to_integer());
            }
            rows.push(row);
        }
        Some(IntMatrix::from_rows(rows))
    }

    pub fn mul_int_vec(&self, v: &LatticeVector) -> Vec<BigRational> {
        assert_eq!(self.cols, v.dim());
        self.rows
            .iter()
            .map(|row| {
                row.iter()
                    .zip(v.coords())
                    .map(|(a, b)| a * BigRational::from(b.clone()))
                    .sum()
            })
            .collect()
    }
}

/// Round-to-nearest quotient; keeps Hermite pivots small.
fn div_rounded(a: &BigInt, b: &BigInt) -> BigInt {
    let (q, r) = a.div_rem(b);
    let two_r = BigInt::from(2) * r.abs();
    if two_r > b.abs() {
        if a.is_negative() != b.is_negative() {
            q - 1
        } else {
            q + 1
        }
    } else {
        q
    }
}
