//! Exact rationals and small dense integer matrices.
//!
//! Everything here runs on arbitrary-precision integers. Determinants use
//! Bareiss elimination, inverses use Gauss-Jordan over the rationals.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use std::fmt;
use thiserror::Error;

pub type Rational = BigRational;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LatError {
    #[error("matrix is singular")]
    SingularMatrix,
    #[error("matrix is not symmetric")]
    NotSymmetric,
    #[error("matrix must have dimension at least 1")]
    Empty,
    #[error("row {0} has the wrong length")]
    Ragged(usize),
    #[error("value does not fit in a machine integer")]
    Overflow,
}

/// Build `num/den` from machine integers. Panics on `den == 0`.
pub fn rat(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Integers print bare, everything else as `a/b` in lowest terms.
pub fn fmt_rational(r: &Rational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Inverse of [`fmt_rational`]; accepts `a`, `-a`, `a/b`.
pub fn parse_rational(s: &str) -> Option<Rational> {
    let s = s.trim();
    match s.split_once('/') {
        None => s.parse::<BigInt>().ok().map(Rational::from_integer),
        Some((a, b)) => {
            let a: BigInt = a.trim().parse().ok()?;
            let b: BigInt = b.trim().parse().ok()?;
            if b.is_zero() {
                None
            } else {
                Some(Rational::new(a, b))
            }
        }
    }
}

pub fn is_integral_vector(v: &[Rational]) -> bool {
    v.iter().all(|x| x.is_integer())
}

/// Square matrix of big integers. Immutable once built.
#[derive(Clone, PartialEq, Eq)]
pub struct IntMatrix {
    n: usize,
    entries: Vec<BigInt>,
    symmetric: bool,
}

impl fmt::Debug for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<Vec<String>> = (0..self.n)
            .map(|i| (0..self.n).map(|j| self.get(i, j).to_string()).collect())
            .collect();
        write!(f, "IntMatrix{:?}", rows)
    }
}

impl IntMatrix {
    pub fn new(rows: Vec<Vec<BigInt>>) -> Result<Self, LatError> {
        let n = rows.len();
        if n == 0 {
            return Err(LatError::Empty);
        }
        let mut entries = Vec::with_capacity(n * n);
        for (i, row) in rows.into_iter().enumerate() {
            if row.len() != n {
                return Err(LatError::Ragged(i));
            }
            entries.extend(row);
        }
        let mut symmetric = true;
        'outer: for i in 0..n {
            for j in (i + 1)..n {
                if entries[i * n + j] != entries[j * n + i] {
                    symmetric = false;
                    break 'outer;
                }
            }
        }
        Ok(IntMatrix { n, entries, symmetric })
    }

    pub fn from_i64(rows: &[Vec<i64>]) -> Result<Self, LatError> {
        Self::new(
            rows.iter()
                .map(|r| r.iter().map(|&x| BigInt::from(x)).collect())
                .collect(),
        )
    }

    pub fn identity(n: usize) -> Self {
        let mut rows = vec![vec![0i64; n]; n];
        for (i, row) in rows.iter_mut().enumerate() {
            row[i] = 1;
        }
        Self::from_i64(&rows).expect("identity of dimension >= 1")
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn is_symmetric(&self) -> bool {
        self.symmetric
    }

    pub fn get(&self, i: usize, j: usize) -> &BigInt {
        &self.entries[i * self.n + j]
    }

    pub fn to_i64_rows(&self) -> Result<Vec<Vec<i64>>, LatError> {
        (0..self.n)
            .map(|i| {
                (0..self.n)
                    .map(|j| self.get(i, j).to_i64().ok_or(LatError::Overflow))
                    .collect()
            })
            .collect()
    }

    /// Leading `k x k` principal submatrix.
    pub fn leading(&self, k: usize) -> IntMatrix {
        let rows = (0..k)
            .map(|i| (0..k).map(|j| self.get(i, j).clone()).collect())
            .collect();
        IntMatrix::new(rows).expect("k >= 1")
    }

    pub fn det(&self) -> BigInt {
        bareiss(self.n, self.entries.clone())
    }

    pub fn inverse(&self) -> Result<Vec<Vec<Rational>>, LatError> {
        let n = self.n;
        let mut a: Vec<Vec<Rational>> = (0..n)
            .map(|i| {
                let mut row: Vec<Rational> = (0..n)
                    .map(|j| Rational::from_integer(self.get(i, j).clone()))
                    .collect();
                row.extend((0..n).map(|j| if i == j { Rational::one() } else { Rational::zero() }));
                row
            })
            .collect();
        for col in 0..n {
            let piv = (col..n)
                .find(|&r| !a[r][col].is_zero())
                .ok_or(LatError::SingularMatrix)?;
            a.swap(col, piv);
            let inv = a[col][col].recip();
            for x in a[col].iter_mut() {
                *x = &*x * &inv;
            }
            for r in 0..n {
                if r != col && !a[r][col].is_zero() {
                    let f = a[r][col].clone();
                    for c in 0..2 * n {
                        let t = &f * &a[col][c];
                        a[r][c] -= t;
                    }
                }
            }
        }
        Ok(a.into_iter().map(|row| row[n..].to_vec()).collect())
    }

    /// Adjugate, i.e. `det * inverse`, as integers.
    pub fn adjugate(&self) -> Result<Vec<Vec<BigInt>>, LatError> {
        let det = Rational::from_integer(self.det());
        let inv = self.inverse()?;
        Ok(inv
            .into_iter()
            .map(|row| {
                row.into_iter()
                    .map(|x| {
                        let y = x * &det;
                        debug_assert!(y.is_integer());
                        y.to_integer()
                    })
                    .collect()
            })
            .collect())
    }

    /// Sylvester: leading minors alternate in sign starting negative.
    pub fn is_negative_definite(&self) -> Result<bool, LatError> {
        if !self.symmetric {
            return Err(LatError::NotSymmetric);
        }
        for k in 1..=self.n {
            let d = self.leading(k).det();
            let want_negative = k % 2 == 1;
            if d.is_zero() || d.is_negative() != want_negative {
                return Ok(false);
            }
        }
        Ok(true)
    }

    pub fn mul_vec(&self, v: &[Rational]) -> Vec<Rational> {
        (0..self.n)
            .map(|i| {
                (0..self.n).fold(Rational::zero(), |acc, j| {
                    acc + Rational::from_integer(self.get(i, j).clone()) * &v[j]
                })
            })
            .collect()
    }
}

/// Fraction-free Gaussian elimination with row pivoting.
fn bareiss(n: usize, mut a: Vec<BigInt>) -> BigInt {
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n {
        if a[k * n + k].is_zero() {
            match ((k + 1)..n).find(|&r| !a[r * n + k].is_zero()) {
                None => return BigInt::zero(),
                Some(r) => {
                    for c in 0..n {
                        a.swap(k * n + c, r * n + c);
                    }
                    sign = -sign;
                }
            }
        }
        for i in (k + 1)..n {
            for j in (k + 1)..n {
                let v = &a[i * n + j] * &a[k * n + k] - &a[i * n + k] * &a[k * n + j];
                let (q, r) = v.div_rem(&prev);
                debug_assert!(r.is_zero());
                a[i * n + j] = q;
            }
            a[i * n + k] = BigInt::zero();
        }
        prev = a[k * n + k].clone();
    }
    sign * a[n * n - 1].clone()
}

/// Matrix product of a rational matrix with an integer matrix, for checks.
pub fn mul_rat_int(a: &[Vec<Rational>], b: &IntMatrix) -> Vec<Vec<Rational>> {
    let n = b.dim();
    (0..a.len())
        .map(|i| {
            (0..n)
                .map(|j| {
                    (0..n).fold(Rational::zero(), |acc, t| {
                        acc + &a[i][t] * Rational::from_integer(b.get(t, j).clone())
                    })
                })
                .collect()
        })
        .collect()
}
