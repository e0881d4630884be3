//! Exact rational scalars and the tiny amount of rational linear algebra the
//! root-system construction needs.

use num_rational::Ratio;
use num_traits::{One, ToPrimitive, Zero};
use std::fmt::Debug;
use std::ops::{Add, Div, Mul, Neg, Sub};

/// Exact rational number. Entries stay small for every supported system
/// (E8 Gram inverse has denominators at most 1), so 64-bit parts suffice.
pub type Q = Ratio<i64>;

pub fn q(n: i64, d: i64) -> Q {
    Q::new(n, d)
}

pub fn qi(n: i64) -> Q {
    Q::from_integer(n)
}

pub fn to_f64(x: &Q) -> f64 {
    ToPrimitive::to_f64(x).expect("rational with i64 parts always converts")
}

/// Closest rational with small denominator; exact for dyadic/short decimals
/// such as 2.5 or 0.125.
pub fn from_f64(x: f64) -> Option<Q> {
    Q::approximate_float(x)
}

/// Field scalar used by computations that run both exactly and in floating
/// point (couplings, Weyl vectors, spectra).
pub trait Scalar:
    Clone
    + Debug
    + PartialEq
    + Zero
    + One
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Neg<Output = Self>
{
    fn from_q(x: Q) -> Self;
    fn to_f64(&self) -> f64;
}

impl Scalar for Q {
    fn from_q(x: Q) -> Self {
        x
    }
    fn to_f64(&self) -> f64 {
        to_f64(self)
    }
}

impl Scalar for f64 {
    fn from_q(x: Q) -> Self {
        to_f64(&x)
    }
    fn to_f64(&self) -> f64 {
        *self
    }
}

pub type QMatrix = Vec<Vec<Q>>;

pub fn identity(n: usize) -> QMatrix {
    (0..n).map(|i| (0..n).map(|j| if i == j { Q::one() } else { Q::zero() }).collect()).collect()
}

pub fn mat_mul(a: &QMatrix, b: &QMatrix) -> QMatrix {
    let n = a.len();
    let m = b.first().map_or(0, Vec::len);
    let inner = b.len();
    (0..n).map(|i| (0..m).map(|j| (0..inner).fold(Q::zero(), |acc, k| acc + a[i][k] * b[k][j])).collect()).collect()
}

/// Gauss-Jordan inverse. Returns `None` for singular input.
pub fn inverse(a: &QMatrix) -> Option<QMatrix> {
    let n = a.len();
    let mut work: Vec<Vec<Q>> =
        a.iter().zip(identity(n)).map(|(row, id)| row.iter().cloned().chain(id).collect()).collect();
    for col in 0..n {
        let pivot = (col..n).find(|&r| !work[r][col].is_zero())?;
        work.swap(col, pivot);
        let p = work[col][col];
        for x in work[col].iter_mut() {
            *x /= p;
        }
        for r in 0..n {
            if r != col && !work[r][col].is_zero() {
                let f = work[r][col];
                let pivot_row = work[col].clone();
                for (x, y) in work[r].iter_mut().zip(pivot_row) {
                    *x -= f * y;
                }
            }
        }
    }
    Some(work.into_iter().map(|row| row[n..].to_vec()).collect())
}

/// Bilinear form `uᵀ · m · v`.
pub fn bilinear(u: &[Q], m: &QMatrix, v: &[Q]) -> Q {
    let mut acc = Q::zero();
    for (i, ui) in u.iter().enumerate() {
        if ui.is_zero() {
            continue;
        }
        for (j, vj) in v.iter().enumerate() {
            acc += *ui * m[i][j] * *vj;
        }
    }
    acc
}

pub fn bilinear_int(u: &[i64], m: &QMatrix, v: &[i64]) -> Q {
    let u: Vec<Q> = u.iter().map(|&x| qi(x)).collect();
    let v: Vec<Q> = v.iter().map(|&x| qi(x)).collect();
    bilinear(&u, m, &v)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn inverse_of_a2_gram() {
        let g = vec![vec![qi(2), qi(-1)], vec![qi(-1), qi(2)]];
        let inv = inverse(&g).unwrap();
        assert_eq!(inv, vec![vec![q(2, 3), q(1, 3)], vec![q(1, 3), q(2, 3)]]);
        assert_eq!(mat_mul(&g, &inv), identity(2));
    }

    #[test]
    fn singular_matrix_has_no_inverse() {
        let m = vec![vec![qi(1), qi(2)], vec![qi(2), qi(4)]];
        assert!(inverse(&m).is_none());
    }

    #[test]
    fn from_f64_is_exact_on_short_decimals() {
        assert_eq!(from_f64(2.5), Some(q(5, 2)));
        assert_eq!(from_f64(1.0), Some(qi(1)));
        assert_eq!(from_f64(0.125), Some(q(1, 8)));
    }
}
