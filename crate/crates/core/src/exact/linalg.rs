//! Nullspace and rank computations in three arithmetic regimes: exact field
//! elements, certified dyadic intervals, and thresholded f64.

use alloc::vec;
use alloc::vec::Vec;

use num_rational::BigRational;
use num_traits::{One, Zero};

use super::dyadic::DyadicInterval;
use super::quadext::QuadExt;
use crate::fmath;

/// Field operations needed by exact elimination.
pub trait ExactField: Clone + PartialEq {
    fn zero() -> Self;
    fn one() -> Self;
    fn from_i64(n: i64) -> Self;
    fn add(&self, other: &Self) -> Self;
    fn sub(&self, other: &Self) -> Self;
    fn mul(&self, other: &Self) -> Self;
    fn div(&self, other: &Self) -> Self;
    fn neg(&self) -> Self;
    fn is_zero(&self) -> bool;
    /// Lossy projection for diagnostics; complex scalars report the real part.
    fn to_f64(&self) -> f64;
    fn to_c64(&self) -> num_complex::Complex64 {
        num_complex::Complex64::new(self.to_f64(), 0.0)
    }
}

impl ExactField for BigRational {
    fn zero() -> Self {
        Zero::zero()
    }
    fn one() -> Self {
        One::one()
    }
    fn from_i64(n: i64) -> Self {
        BigRational::from_integer(num_bigint::BigInt::from(n))
    }
    fn add(&self, other: &Self) -> Self {
        self + other
    }
    fn sub(&self, other: &Self) -> Self {
        self - other
    }
    fn mul(&self, other: &Self) -> Self {
        self * other
    }
    fn div(&self, other: &Self) -> Self {
        self / other
    }
    fn neg(&self) -> Self {
        -self
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn to_f64(&self) -> f64 {
        num_traits::ToPrimitive::to_f64(self).unwrap()
    }
}

/// Complex numbers with exact rational parts: the coefficient field of the
/// wave-expansion polynomials.
impl ExactField for num_complex::Complex<BigRational> {
    fn zero() -> Self {
        num_complex::Complex::new(Zero::zero(), Zero::zero())
    }
    fn one() -> Self {
        num_complex::Complex::new(One::one(), Zero::zero())
    }
    fn from_i64(n: i64) -> Self {
        num_complex::Complex::new(ExactField::from_i64(n), Zero::zero())
    }
    fn add(&self, other: &Self) -> Self {
        self + other
    }
    fn sub(&self, other: &Self) -> Self {
        self - other
    }
    fn mul(&self, other: &Self) -> Self {
        self * other
    }
    fn div(&self, other: &Self) -> Self {
        self / other
    }
    fn neg(&self) -> Self {
        -self
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(&self.re) && Zero::is_zero(&self.im)
    }
    fn to_f64(&self) -> f64 {
        num_traits::ToPrimitive::to_f64(&self.re).unwrap()
    }
    fn to_c64(&self) -> num_complex::Complex64 {
        num_complex::Complex64::new(
            num_traits::ToPrimitive::to_f64(&self.re).unwrap(),
            num_traits::ToPrimitive::to_f64(&self.im).unwrap(),
        )
    }
}

impl ExactField for QuadExt {
    fn zero() -> Self {
        QuadExt::zero()
    }
    fn one() -> Self {
        QuadExt::one()
    }
    fn from_i64(n: i64) -> Self {
        QuadExt::from_int(n)
    }
    fn add(&self, other: &Self) -> Self {
        QuadExt::add(self, other)
    }
    fn sub(&self, other: &Self) -> Self {
        QuadExt::sub(self, other)
    }
    fn mul(&self, other: &Self) -> Self {
        QuadExt::mul(self, other)
    }
    fn div(&self, other: &Self) -> Self {
        QuadExt::div(self, other).expect("division by zero in exact elimination")
    }
    fn neg(&self) -> Self {
        QuadExt::neg(self)
    }
    fn is_zero(&self) -> bool {
        QuadExt::is_zero(self)
    }
    fn to_f64(&self) -> f64 {
        QuadExt::to_f64(self)
    }
}

/// Reduced row echelon form in place; returns the pivot columns.
pub fn exact_rref<T: ExactField>(rows: &mut [Vec<T>], ncols: usize) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut r = 0usize;
    for col in 0..ncols {
        let Some(src) = (r..rows.len()).find(|&i| !rows[i][col].is_zero()) else {
            continue;
        };
        rows.swap(r, src);
        let inv = T::one().div(&rows[r][col]);
        for v in rows[r].iter_mut() {
            *v = v.mul(&inv);
        }
        for i in 0..rows.len() {
            if i != r && !rows[i][col].is_zero() {
                let f = rows[i][col].clone();
                for j in 0..ncols {
                    let delta = f.mul(&rows[r][j]);
                    rows[i][j] = rows[i][j].sub(&delta);
                }
            }
        }
        pivots.push(col);
        r += 1;
        if r == rows.len() {
            break;
        }
    }
    pivots
}

/// Exact solution of A·x = b: `None` when inconsistent, otherwise the
/// particular solution with every free variable set to zero. Pair with
/// [`exact_nullspace`] for the full affine solution set.
pub fn exact_solve<T: ExactField>(
    rows: &[Vec<T>],
    ncols: usize,
    rhs: &[T],
) -> Option<Vec<T>> {
    assert_eq!(rows.len(), rhs.len());
    let mut work: Vec<Vec<T>> = rows
        .iter()
        .zip(rhs)
        .map(|(r, b)| {
            let mut row = r.clone();
            row.push(b.clone());
            row
        })
        .collect();
    let pivots = exact_rref(&mut work, ncols + 1);
    // A pivot in the appended column marks an inconsistent row 0 = 1.
    if pivots.contains(&ncols) {
        return None;
    }
    let mut x = vec![T::zero(); ncols];
    for (r, &pc) in pivots.iter().enumerate() {
        x[pc] = work[r][ncols].clone();
    }
    Some(x)
}

/// Basis of the right nullspace of the row system, by exact elimination.
pub fn exact_nullspace<T: ExactField>(rows: &[Vec<T>], ncols: usize) -> Vec<Vec<T>> {
    let mut work: Vec<Vec<T>> = rows.iter().cloned().collect();
    let pivots = exact_rref(&mut work, ncols);
    let mut basis = Vec::new();
    let free: Vec<usize> = (0..ncols).filter(|c| !pivots.contains(c)).collect();
    for &fc in &free {
        let mut v = vec![T::zero(); ncols];
        v[fc] = T::one();
        for (r, &pc) in pivots.iter().enumerate() {
            v[pc] = work[r][fc].neg();
        }
        basis.push(v);
    }
    basis
}

/// Outcome of an interval rank certification.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RankCertificate {
    /// Every column received a pivot whose interval excludes zero: the exact
    /// matrix provably has full column rank (empty nullspace).
    FullColumnRank,
    /// Some column had no certainly-nonzero pivot candidate. No conclusion.
    Uncertain,
}

/// Interval Gaussian elimination with mignitude pivoting.
pub fn interval_full_column_rank(
    rows: &[Vec<DyadicInterval>],
    ncols: usize,
    prec: u32,
) -> RankCertificate {
    if rows.len() < ncols {
        return RankCertificate::Uncertain;
    }
    let mut m: Vec<Vec<DyadicInterval>> = rows.iter().cloned().collect();
    let mut r = 0usize;
    for col in 0..ncols {
        let mut best: Option<(usize, super::dyadic::Dyadic)> = None;
        for (i, row) in m.iter().enumerate().skip(r) {
            if row[col].certainly_nonzero() {
                let mig = row[col].mignitude();
                let better = match &best {
                    None => true,
                    Some((_, cur)) => mig.cmp_val(cur) == core::cmp::Ordering::Greater,
                };
                if better {
                    best = Some((i, mig));
                }
            }
        }
        let Some((src, _)) = best else {
            return RankCertificate::Uncertain;
        };
        m.swap(r, src);
        let pivot_row = m[r].clone();
        for row in m.iter_mut().skip(r + 1) {
            if row[col].lo.is_zero() && row[col].hi.is_zero() {
                continue;
            }
            let factor = match row[col].div(&pivot_row[col], prec) {
                Ok(f) => f,
                Err(_) => return RankCertificate::Uncertain,
            };
            for j in col..ncols {
                let delta = factor.mul(&pivot_row[j], prec);
                row[j] = row[j].sub(&delta, prec);
            }
        }
        r += 1;
    }
    RankCertificate::FullColumnRank
}

/// Numerical rank of the row system with a relative pivot threshold.
pub fn f64_rank(rows: &[Vec<f64>], ncols: usize, tol: f64) -> usize {
    let mut m: Vec<Vec<f64>> = rows.iter().cloned().collect();
    let scale = m
        .iter()
        .flat_map(|r| r.iter())
        .fold(0.0f64, |acc, &v| acc.max(fmath::abs(v)))
        .max(1e-300);
    let mut rank = 0usize;
    for col in 0..ncols {
        let mut best = rank;
        for i in rank..m.len() {
            if fmath::abs(m[i][col]) > fmath::abs(m[best][col]) {
                best = i;
            }
        }
        if rank >= m.len() || fmath::abs(m[best][col]) <= tol * scale {
            continue;
        }
        m.swap(rank, best);
        let pivot = m[rank][col];
        for i in 0..m.len() {
            if i != rank && m[i][col] != 0.0 {
                let f = m[i][col] / pivot;
                for j in col..ncols {
                    m[i][j] -= f * m[rank][j];
                }
            }
        }
        rank += 1;
        if rank == m.len() {
            break;
        }
    }
    rank
}

/// Nullspace basis from thresholded f64 elimination (columns scaled by the
/// matrix magnitude; tolerance is relative).
pub fn f64_nullspace(rows: &[Vec<f64>], ncols: usize, tol: f64) -> Vec<Vec<f64>> {
    let mut m: Vec<Vec<f64>> = rows.iter().cloned().collect();
    let scale = m
        .iter()
        .flat_map(|r| r.iter())
        .fold(0.0f64, |acc, &v| acc.max(fmath::abs(v)))
        .max(1e-300);
    let mut pivots: Vec<usize> = Vec::new();
    let mut r = 0usize;
    for col in 0..ncols {
        let mut best = r;
        for i in r..m.len() {
            if fmath::abs(m[i][col]) > fmath::abs(m[best][col]) {
                best = i;
            }
        }
        if r >= m.len() || fmath::abs(m[best][col]) <= tol * scale {
            continue;
        }
        m.swap(r, best);
        let pivot = m[r][col];
        for v in m[r].iter_mut() {
            *v /= pivot;
        }
        for i in 0..m.len() {
            if i != r {
                let f = m[i][col];
                if f != 0.0 {
                    for j in 0..ncols {
                        m[i][j] -= f * m[r][j];
                    }
                }
            }
        }
        pivots.push(col);
        r += 1;
        if r == m.len() {
            break;
        }
    }
    let mut basis = Vec::new();
    for fc in (0..ncols).filter(|c| !pivots.contains(c)) {
        let mut v = vec![0.0; ncols];
        v[fc] = 1.0;
        for (row, &pc) in pivots.iter().enumerate() {
            v[pc] = -m[row][fc];
        }
        basis.push(v);
    }
    basis
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::dyadic::{Dyadic, DEFAULT_PREC};
    use num_bigint::BigInt;

    fn br(n: i64, d: i64) -> BigRational {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    #[test]
    fn rational_nullspace() {
        // x + 2y + 3z = 0, 2x + 4y + 6z = 0 → two free directions.
        let rows = vec![
            vec![br(1, 1), br(2, 1), br(3, 1)],
            vec![br(2, 1), br(4, 1), br(6, 1)],
        ];
        let basis = exact_nullspace(&rows, 3);
        assert_eq!(basis.len(), 2);
        for v in &basis {
            let r = v[0].clone() + v[1].clone() * br(2, 1) + v[2].clone() * br(3, 1);
            assert!(Zero::is_zero(&r));
        }
    }

    #[test]
    fn full_rank_has_empty_nullspace() {
        let rows = vec![
            vec![br(1, 1), br(1, 1)],
            vec![br(1, 1), br(-1, 1)],
            vec![br(2, 1), br(5, 1)],
        ];
        assert!(exact_nullspace(&rows, 2).is_empty());
    }

    #[test]
    fn interval_certification() {
        let iv = |x: f64| DyadicInterval::from_f64(x);
        let rows = vec![
            vec![iv(2.0), iv(1.0)],
            vec![iv(1.0), iv(3.0)],
        ];
        assert_eq!(
            interval_full_column_rank(&rows, 2, DEFAULT_PREC),
            RankCertificate::FullColumnRank
        );
        // Singular matrix: second column eliminates to an interval around 0.
        let rows = vec![
            vec![iv(1.0), iv(2.0)],
            vec![iv(2.0), iv(4.0)],
        ];
        assert_eq!(
            interval_full_column_rank(&rows, 2, DEFAULT_PREC),
            RankCertificate::Uncertain
        );
    }

    #[test]
    fn starved_precision_is_inconclusive_not_wrong() {
        // With 2-bit precision the entries blow up into wide intervals; the
        // only acceptable outcome for a near-singular system is Uncertain.
        let eps = Dyadic::new(BigInt::from(1), -40);
        let one = Dyadic::from_int(1);
        let near = DyadicInterval::new(one.clone(), one.add(&eps));
        let rows = vec![
            vec![DyadicInterval::point(one.clone()), near.clone()],
            vec![near.clone(), DyadicInterval::point(one)],
        ];
        assert_eq!(interval_full_column_rank(&rows, 2, 2), RankCertificate::Uncertain);
    }

    #[test]
    fn float_rank_and_nullspace() {
        let rows = vec![
            vec![1.0, 2.0, 3.0],
            vec![4.0, 5.0, 6.0],
            vec![7.0, 8.0, 9.0],
        ];
        assert_eq!(f64_rank(&rows, 3, 1e-8), 2);
        let ns = f64_nullspace(&rows, 3, 1e-8);
        assert_eq!(ns.len(), 1);
        let v = &ns[0];
        for row in &rows {
            let dot: f64 = row.iter().zip(v).map(|(a, b)| a * b).sum();
            assert!(dot.abs() < 1e-12);
        }
    }
}
