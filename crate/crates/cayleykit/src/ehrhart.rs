//! Ehrhart counts, h\*-polynomials, degree, and the Gorenstein test.
//!
//! For an n-dimensional lattice polytope the counting function
//! f_P(m) = #(mP ∩ ℤ^n) is a degree-n polynomial, and the h\*-vector is its
//! finite-difference transform: h\*_j = Σ_{i=0}^{j} (−1)^i C(n+1, i) f_P(j−i).
//! Everything here is computed by exact counting, then cross-validated
//! through the interior-count characterization of the degree. A failed
//! cross-check is reported as an invariant error, not a property of the
//! input: it would mean the enumerator and the algebra disagree.

use num_bigint::BigInt;
use num_integer::binomial;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::affine::normalize_full_dim;
use crate::enumerate::count_lattice_points;
use crate::error::{Error, Result};
use crate::polytope::LatticePolytope;

/// Lattice point counts f_P(m) for m = 0..dim P.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EhrhartCounts {
    values: Vec<BigInt>,
}

impl EhrhartCounts {
    /// f_P(m); the table covers m = 0..=n.
    pub fn value(&self, m: usize) -> &BigInt {
        &self.values[m]
    }

    pub fn values(&self) -> &[BigInt] {
        &self.values
    }

    /// dim P.
    pub fn dim(&self) -> usize {
        self.values.len() - 1
    }

    /// Exact polynomial extrapolation of the counting function from its n+1
    /// tabulated values, evaluated at an arbitrary integer (negative included).
    pub fn extrapolate(&self, t: &BigInt) -> BigInt {
        let n = self.dim();
        if let Ok(m) = usize::try_from(t) {
            if m <= n {
                return self.values[m].clone();
            }
        }
        // Lagrange interpolation on the nodes 0..=n.
        let t = BigRational::from(t.clone());
        let mut acc = BigRational::zero();
        for m in 0..=n {
            let mut term = BigRational::from(self.values[m].clone());
            for j in 0..=n {
                if j != m {
                    let jj = BigRational::from(BigInt::from(j));
                    let mm = BigRational::from(BigInt::from(m));
                    term *= (&t - &jj) / (mm - jj);
                }
            }
            acc += term;
        }
        debug_assert!(acc.is_integer());
        acc.to_integer()
    }
}

/// The h\*-vector of a lattice polytope together with its derived data.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HStarData {
    /// h\*₀..h\*_d, trailing zeros trimmed; h\*₀ = 1.
    coefficients: Vec<BigInt>,
    /// dim P (not the ambient dimension).
    dim: usize,
}

impl HStarData {
    pub fn coefficients(&self) -> &[BigInt] {
        &self.coefficients
    }

    /// d: the degree of the h\*-polynomial.
    pub fn degree(&self) -> usize {
        self.coefficients.len() - 1
    }

    /// k = h\*_d, the leading coefficient.
    pub fn leading(&self) -> &BigInt {
        self.coefficients.last().expect("h*_0 = 1 keeps this nonempty")
    }

    /// Normalized volume: the sum of the h\*-coefficients.
    pub fn normalized_volume(&self) -> BigInt {
        self.coefficients.iter().sum()
    }

    /// dim P.
    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Codegree n + 1 − d: the least dilation factor with interior points.
    pub fn codegree(&self) -> usize {
        self.dim + 1 - self.degree()
    }

    /// Gorenstein means the coefficient vector is palindromic.
    pub fn is_palindromic(&self) -> bool {
        let c = &self.coefficients;
        (0..c.len() / 2).all(|i| c[i] == c[c.len() - 1 - i])
    }
}

/// f_P(m).
pub fn count(poly: &LatticePolytope, m: &BigInt) -> Result<BigInt> {
    count_lattice_points(poly, m, false)
}

/// Number of lattice points in the relative interior of mP.
pub fn count_interior(poly: &LatticePolytope, m: &BigInt) -> Result<BigInt> {
    count_lattice_points(poly, m, true)
}

/// Tabulate f_P(m) for m = 0..=dim P (on the full-dimensional normalization,
/// which leaves every count unchanged).
pub fn ehrhart_counts(poly: &LatticePolytope) -> Result<EhrhartCounts> {
    let norm = normalize_full_dim(poly)?;
    counts_of_normalized(&norm.polytope)
}

fn counts_of_normalized(q: &LatticePolytope) -> Result<EhrhartCounts> {
    let n = q.ambient_dim();
    let mut values = Vec::with_capacity(n + 1);
    for m in 0..=n {
        values.push(count(q, &BigInt::from(m))?);
    }
    if !values[0].is_one() {
        return Err(Error::invariant(format!(
            "f_P(0) = {} but the empty dilation always holds exactly the origin",
            values[0]
        )));
    }
    // A full-dimensional polytope gains points with every dilation step.
    for m in 1..=n {
        if values[m - 1] >= values[m] {
            return Err(Error::invariant(format!(
                "lattice point counts must strictly increase, got f({}) = {} and f({}) = {}",
                m - 1,
                values[m - 1],
                m,
                values[m]
            )));
        }
    }
    Ok(EhrhartCounts { values })
}

/// The h\*-vector with all of its internal cross-checks.
///
/// Besides the finite-difference computation this verifies, by direct
/// interior counting, that the degree satisfies its dual characterization:
/// the interior of mP is empty for 1 ≤ m ≤ n − d and the interior of
/// (n−d+1)P holds exactly h\*_d points.
pub fn h_star(poly: &LatticePolytope) -> Result<HStarData> {
    let norm = normalize_full_dim(poly)?;
    let q = &norm.polytope;
    let n = q.ambient_dim();
    let counts = counts_of_normalized(q)?;

    let mut coefficients = Vec::with_capacity(n + 1);
    for j in 0..=n {
        let mut h = BigInt::zero();
        for i in 0..=j {
            let c = binomial(BigInt::from(n + 1), BigInt::from(i));
            let term = c * counts.value(j - i);
            if i % 2 == 0 {
                h += term;
            } else {
                h -= term;
            }
        }
        if h.is_negative() {
            return Err(Error::invariant(format!(
                "h*_{j} = {h} is negative; lattice point counts are inconsistent"
            )));
        }
        coefficients.push(h);
    }
    if !coefficients[0].is_one() {
        return Err(Error::invariant(format!(
            "h*_0 = {} instead of 1",
            coefficients[0]
        )));
    }
    while coefficients.len() > 1 && coefficients.last().is_some_and(Zero::is_zero) {
        coefficients.pop();
    }
    let data = HStarData { coefficients, dim: n };

    // Degree duality: interior points first appear at dilation n − d + 1, and
    // their number there is the leading coefficient. The m = 0 case is
    // excluded because 0P degenerates to a point that is its own interior.
    let d = data.degree();
    for m in 1..=(n - d) {
        let inside = count_interior(q, &BigInt::from(m))?;
        if !inside.is_zero() {
            return Err(Error::invariant(format!(
                "degree {d} polytope has {inside} interior points at dilation {m} \
                 (none expected before dilation {})",
                n - d + 1
            )));
        }
    }
    let at_codegree = count_interior(q, &BigInt::from(n - d + 1))?;
    if &at_codegree != data.leading() {
        return Err(Error::invariant(format!(
            "leading coefficient h*_{d} = {} disagrees with the {} interior points of {}P",
            data.leading(),
            at_codegree,
            n - d + 1
        )));
    }

    Ok(data)
}

/// The degree d of the h\*-polynomial.
pub fn degree(poly: &LatticePolytope) -> Result<usize> {
    Ok(h_star(poly)?.degree())
}

/// The degree computed without any h\*-algebra: n + 1 minus the least
/// dilation factor whose interior holds a lattice point.
pub fn degree_via_interior(poly: &LatticePolytope) -> Result<usize> {
    let norm = normalize_full_dim(poly)?;
    let q = &norm.polytope;
    let n = q.ambient_dim();
    for m in 1..=(n + 1) {
        if !count_interior(q, &BigInt::from(m))?.is_zero() {
            return Ok(n + 1 - m);
        }
    }
    Err(Error::invariant(format!(
        "no interior lattice points up to dilation {}, impossible for dimension {n}",
        n + 1
    )))
}

/// True iff the h\*-vector is palindromic.
pub fn is_gorenstein(poly: &LatticePolytope) -> Result<bool> {
    Ok(h_star(poly)?.is_palindromic())
}

/// Ehrhart reciprocity spot check: the counting polynomial extrapolated to
/// −m must equal (−1)^n times the interior count of mP, for m = 1..3.
pub fn ehrhart_reciprocity_check(poly: &LatticePolytope) -> Result<bool> {
    let norm = normalize_full_dim(poly)?;
    let q = &norm.polytope;
    let n = q.ambient_dim();
    let counts = counts_of_normalized(q)?;
    for m in 1..=3i64 {
        let mut expected = counts.extrapolate(&BigInt::from(-m));
        if n % 2 == 1 {
            expected = -expected;
        }
        let inside = count_interior(q, &BigInt::from(m))?;
        if inside != expected {
            return Ok(false);
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polytope::cayley_sum;
    use crate::vector::LatticeVector;

    fn poly(points: &[&[i64]]) -> LatticePolytope {
        LatticePolytope::from_i64_points(points).unwrap()
    }

    fn coeffs(h: &HStarData) -> Vec<i64> {
        h.coefficients()
            .iter()
            .map(|c| i64::try_from(c).unwrap())
            .collect()
    }

    fn unit_cube(dim: usize) -> LatticePolytope {
        let mut points = Vec::new();
        for mask in 0..(1u32 << dim) {
            let coords: Vec<i64> = (0..dim).map(|i| ((mask >> i) & 1) as i64).collect();
            points.push(LatticeVector::from_i64(&coords));
        }
        LatticePolytope::new(points).unwrap()
    }

    fn standard_simplex(dim: usize) -> LatticePolytope {
        let mut points = vec![LatticeVector::zero(dim)];
        for i in 0..dim {
            points.push(LatticeVector::unit(dim, i));
        }
        LatticePolytope::new(points).unwrap()
    }

    #[test]
    fn simplex_counts_are_binomials() {
        let d3 = standard_simplex(3);
        assert_eq!(count(&d3, &BigInt::from(2)).unwrap(), BigInt::from(10));
        assert_eq!(count(&d3, &BigInt::zero()).unwrap(), BigInt::one());
        let d2 = standard_simplex(2);
        assert_eq!(count(&d2, &BigInt::from(4)).unwrap(), BigInt::from(15));
    }

    #[test]
    fn unit_square_h_star() {
        let sq = unit_cube(2);
        let h = h_star(&sq).unwrap();
        assert_eq!(coeffs(&h), vec![1, 1]);
        assert_eq!(h.degree(), 1);
        assert_eq!(h.normalized_volume(), BigInt::from(2));
        assert!(h.is_palindromic());
    }

    #[test]
    fn doubled_tetrahedron_is_gorenstein_of_degree_two() {
        let t = standard_simplex(3).dilate_u32(2);
        let h = h_star(&t).unwrap();
        assert_eq!(coeffs(&h), vec![1, 6, 1]);
        assert_eq!(h.degree(), 2);
        assert_eq!(h.normalized_volume(), BigInt::from(8));
        assert!(is_gorenstein(&t).unwrap());
    }

    #[test]
    fn simplex_volume_matches_determinant_oracle() {
        // For a full-dimensional simplex, Vol = |det of edge vectors at v0|.
        let t = standard_simplex(3).dilate_u32(2);
        let dets = crate::matrix::IntMatrix::from_i64(&[&[2, 0, 0], &[0, 2, 0], &[0, 0, 2]]);
        assert_eq!(
            h_star(&t).unwrap().normalized_volume(),
            dets.det().abs()
        );
        let skew = poly(&[&[0, 0], &[3, 1], &[1, 2]]);
        let mat = crate::matrix::IntMatrix::from_i64(&[&[3, 1], &[1, 2]]);
        assert_eq!(h_star(&skew).unwrap().normalized_volume(), mat.det().abs());
    }

    #[test]
    fn standard_simplices_are_unimodular() {
        for dim in 1..=4 {
            let h = h_star(&standard_simplex(dim)).unwrap();
            assert_eq!(coeffs(&h), vec![1], "dim {dim}");
            assert_eq!(h.degree(), 0);
        }
    }

    #[test]
    fn cube_degrees() {
        let h = h_star(&unit_cube(3)).unwrap();
        assert_eq!(coeffs(&h), vec![1, 4, 1]);
        assert_eq!(degree(&unit_cube(3)).unwrap(), 2);
        assert_eq!(degree_via_interior(&unit_cube(3)).unwrap(), 2);
    }

    #[test]
    fn segment_h_star_counts_interior_points() {
        let seg = poly(&[&[0], &[3]]);
        let h = h_star(&seg).unwrap();
        assert_eq!(coeffs(&h), vec![1, 2]);
        assert!(!is_gorenstein(&seg).unwrap());
        let unit = poly(&[&[0], &[1]]);
        assert_eq!(coeffs(&h_star(&unit).unwrap()), vec![1]);
    }

    #[test]
    fn degree_paths_agree() {
        let shapes = vec![
            unit_cube(2),
            unit_cube(3),
            standard_simplex(2),
            standard_simplex(3).dilate_u32(2),
            standard_simplex(2).dilate_u32(3),
            poly(&[&[0, 0], &[3, 1], &[1, 4], &[-2, 2]]),
            poly(&[&[5, 5]]),
        ];
        for p in &shapes {
            assert_eq!(
                degree(p).unwrap(),
                degree_via_interior(p).unwrap(),
                "degree paths disagree on {p:?}"
            );
        }
    }

    #[test]
    fn reciprocity_spot_checks() {
        for p in [
            unit_cube(2),
            standard_simplex(2),
            poly(&[&[4, -1]]),
            poly(&[&[0, 0], &[3, 1], &[1, 4], &[-2, 2]]),
            poly(&[&[0, 0, 0], &[2, 0, 1], &[0, 3, 1], &[1, 1, 2]]),
        ] {
            assert!(ehrhart_reciprocity_check(&p).unwrap(), "failed on {p:?}");
        }
    }

    #[test]
    fn lower_dimensional_input_uses_its_own_dimension() {
        let diag = poly(&[&[0, 0], &[1, 1]]);
        let h = h_star(&diag).unwrap();
        assert_eq!(coeffs(&h), vec![1]);
        assert_eq!(h.dim(), 1);
    }

    #[test]
    fn pyramid_preserves_h_star() {
        let sq = unit_cube(2);
        let pt = poly(&[&[0, 0]]);
        let pyr = cayley_sum(&[sq.clone(), pt]).unwrap();
        assert_eq!(
            h_star(&pyr).unwrap().coefficients(),
            h_star(&sq).unwrap().coefficients()
        );
    }

    #[test]
    fn cayley_sum_degree_is_bounded_by_factor_dimension() {
        // Factors in ℝ^q give degree ≤ q.
        let a = poly(&[&[0, 0], &[2, 0], &[0, 2], &[2, 2]]);
        let b = poly(&[&[0, 0], &[1, 0], &[0, 1]]);
        let c = cayley_sum(&[a, b]).unwrap();
        assert!(degree(&c).unwrap() <= 2);
    }

    #[test]
    fn extrapolation_reproduces_table_and_negative_values() {
        let sq = unit_cube(2);
        let counts = ehrhart_counts(&sq).unwrap();
        assert_eq!(counts.values(), &[BigInt::from(1), BigInt::from(4), BigInt::from(9)]);
        // f(m) = (m+1)^2 extended to m = 3 and m = −1.
        assert_eq!(counts.extrapolate(&BigInt::from(3)), BigInt::from(16));
        assert_eq!(counts.extrapolate(&BigInt::from(-1)), BigInt::zero());
    }
}
