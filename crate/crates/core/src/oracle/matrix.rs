//! Dense square matrices over `Q`.

use std::ops::{Add, Mul};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RationalMatrix {
    size: usize,
    data: Vec<BigRational>,
}

impl RationalMatrix {
    pub fn zero(size: usize) -> Self {
        RationalMatrix {
            size,
            data: vec![BigRational::zero(); size * size],
        }
    }

    pub fn identity(size: usize) -> Self {
        let mut m = Self::zero(size);
        for i in 0..size {
            m.set(i, i, BigRational::one());
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<BigRational>>) -> Self {
        let size = rows.len();
        assert!(
            rows.iter().all(|r| r.len() == size),
            "matrix must be square"
        );
        RationalMatrix {
            size,
            data: rows.into_iter().flatten().collect(),
        }
    }

    pub fn from_integer_rows(rows: &[Vec<i64>]) -> Self {
        Self::from_rows(
            rows.iter()
                .map(|r| {
                    r.iter()
                        .map(|&v| BigRational::from_integer(v.into()))
                        .collect()
                })
                .collect(),
        )
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn get(&self, i: usize, j: usize) -> &BigRational {
        &self.data[i * self.size + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: BigRational) {
        self.data[i * self.size + j] = v;
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        RationalMatrix {
            size: self.size,
            data: self.data.iter().map(|v| v * c).collect(),
        }
    }

    pub fn trace(&self) -> BigRational {
        (0..self.size).fold(BigRational::zero(), |acc, i| acc + self.get(i, i))
    }

    pub fn pow(&self, mut exp: u32) -> Self {
        let mut result = Self::identity(self.size);
        let mut base = self.clone();
        while exp > 0 {
            if exp & 1 == 1 {
                result = &result * &base;
            }
            exp >>= 1;
            if exp > 0 {
                base = &base * &base;
            }
        }
        result
    }

    /// Gauss-Jordan inverse; `None` when singular.
    pub fn inverse(&self) -> Option<Self> {
        let n = self.size;
        let mut a = self.clone();
        let mut inv = Self::identity(n);
        for col in 0..n {
            let pivot = (col..n).find(|&r| !a.get(r, col).is_zero())?;
            if pivot != col {
                for j in 0..n {
                    a.data.swap(pivot * n + j, col * n + j);
                    inv.data.swap(pivot * n + j, col * n + j);
                }
            }
            let p = a.get(col, col).clone();
            for j in 0..n {
                a.data[col * n + j] /= &p;
                inv.data[col * n + j] /= &p;
            }
            for r in 0..n {
                if r == col || a.get(r, col).is_zero() {
                    continue;
                }
                let f = a.get(r, col).clone();
                for j in 0..n {
                    let da = &f * a.get(col, j);
                    let di = &f * inv.get(col, j);
                    a.data[r * n + j] -= da;
                    inv.data[r * n + j] -= di;
                }
            }
        }
        Some(inv)
    }

    /// Characteristic polynomial `det(x I - A)`, coefficients in ascending
    /// degree (monic, length `size + 1`), by Faddeev-LeVerrier.
    pub fn charpoly(&self) -> Vec<BigRational> {
        let n = self.size;
        let mut coeffs = vec![BigRational::zero(); n + 1];
        coeffs[n] = BigRational::one();
        let mut m = Self::zero(n);
        for k in 1..=n {
            // M_k = A M_{k-1} + c_{n-k+1} I
            let mut next = self * &m;
            for i in 0..n {
                let v = next.get(i, i) + &coeffs[n - k + 1];
                next.set(i, i, v);
            }
            m = next;
            let am = self * &m;
            coeffs[n - k] = -am.trace() / BigRational::from_integer(BigInt::from(k));
        }
        coeffs
    }

    /// True when every entry is an integer.
    pub fn is_integral(&self) -> bool {
        self.data.iter().all(|v| v.is_integer())
    }
}

impl Mul for &RationalMatrix {
    type Output = RationalMatrix;

    fn mul(self, rhs: &RationalMatrix) -> RationalMatrix {
        assert_eq!(self.size, rhs.size);
        let n = self.size;
        let mut out = RationalMatrix::zero(n);
        for i in 0..n {
            for k in 0..n {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..n {
                    let b = rhs.get(k, j);
                    if !b.is_zero() {
                        out.data[i * n + j] += a * b;
                    }
                }
            }
        }
        out
    }
}

impl Add for &RationalMatrix {
    type Output = RationalMatrix;

    fn add(self, rhs: &RationalMatrix) -> RationalMatrix {
        assert_eq!(self.size, rhs.size);
        RationalMatrix {
            size: self.size,
            data: self
                .data
                .iter()
                .zip(&rhs.data)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(v: i64) -> BigRational {
        BigRational::from_integer(v.into())
    }

    #[test]
    fn inverse_and_product() {
        let a = RationalMatrix::from_integer_rows(&[vec![2, 1, 0], vec![1, 3, 1], vec![0, 1, 4]]);
        let inv = a.inverse().unwrap();
        assert_eq!(&a * &inv, RationalMatrix::identity(3));
        let singular = RationalMatrix::from_integer_rows(&[vec![1, 2], vec![2, 4]]);
        assert!(singular.inverse().is_none());
    }

    #[test]
    fn charpoly_small() {
        let swap = RationalMatrix::from_integer_rows(&[vec![0, 1], vec![1, 0]]);
        assert_eq!(swap.charpoly(), vec![q(-1), q(0), q(1)]);
        let a = RationalMatrix::from_integer_rows(&[vec![2, 1, 0], vec![1, 3, 1], vec![0, 1, 4]]);
        // det = 18, trace = 9, sum of principal 2-minors = 5 + 8 + 11
        assert_eq!(a.charpoly(), vec![q(-18), q(24), q(-9), q(1)]);
    }

    #[test]
    fn powers_and_trace() {
        let swap = RationalMatrix::from_integer_rows(&[vec![0, 1], vec![1, 0]]);
        assert_eq!(swap.pow(2), RationalMatrix::identity(2));
        assert_eq!(swap.pow(0).trace(), q(2));
        assert_eq!((&swap + &swap).scale(&q(3)).get(0, 1), &q(6));
    }
}
