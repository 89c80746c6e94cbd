//! Number backends.
//!
//! Every formula in the crate is written once against [`Backend`] and runs
//! either over the exact cyclotomic field `Q(zeta_M)` or over double-precision
//! complex numbers.

use std::fmt::Debug;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::One;

use crate::error::{Error, Result};

pub mod cyclotomic;
pub mod float;
pub mod poly;

pub use cyclotomic::{CyclotomicField, CyclotomicNumber};
pub use float::FloatBackend;
pub use poly::cyclotomic_polynomial;

/// Field operations shared by the exact and the floating backend.
///
/// Constructors take `&self` because an exact field carries its modulus.
#[allow(clippy::wrong_self_convention)]
pub trait Backend: Send + Sync {
    type Value: Clone + Debug + PartialEq + Send + Sync;

    fn name(&self) -> &'static str;

    fn from_int(&self, v: i64) -> Self::Value;

    fn from_rational(&self, q: &BigRational) -> Self::Value;

    /// `exp(2 pi i k / order)`.
    fn root_of_unity(&self, order: u64, k: i64) -> Self::Value;

    fn add(&self, a: &Self::Value, b: &Self::Value) -> Self::Value;

    fn sub(&self, a: &Self::Value, b: &Self::Value) -> Self::Value;

    fn mul(&self, a: &Self::Value, b: &Self::Value) -> Self::Value;

    fn neg(&self, a: &Self::Value) -> Self::Value;

    fn inv(&self, a: &Self::Value) -> Result<Self::Value>;

    fn is_zero(&self, a: &Self::Value) -> bool;

    /// Succeeds only if the value is (within tolerance, for the float
    /// backend) a rational integer.
    fn extract_integer(&self, a: &Self::Value) -> Result<BigInt>;

    fn extract_rational(&self, a: &Self::Value) -> Result<BigRational>;

    fn to_complex(&self, a: &Self::Value) -> Complex64;

    fn zero(&self) -> Self::Value {
        self.from_int(0)
    }

    fn one(&self) -> Self::Value {
        self.from_int(1)
    }

    fn scale(&self, a: &Self::Value, k: i64) -> Self::Value {
        self.mul(a, &self.from_int(k))
    }

    /// Integer power; negative exponents go through [`Backend::inv`].
    fn pow(&self, a: &Self::Value, exp: i64) -> Result<Self::Value> {
        let base = if exp < 0 { self.inv(a)? } else { a.clone() };
        Ok(self.pow_unsigned(&base, exp.unsigned_abs()))
    }

    fn pow_unsigned(&self, a: &Self::Value, mut exp: u64) -> Self::Value {
        let mut result = self.one();
        let mut base = a.clone();
        while exp > 0 {
            if exp & 1 == 1 {
                result = self.mul(&result, &base);
            }
            exp >>= 1;
            if exp > 0 {
                base = self.mul(&base, &base);
            }
        }
        result
    }

    fn sum<'a, I>(&self, values: I) -> Self::Value
    where
        I: IntoIterator<Item = &'a Self::Value>,
        Self::Value: 'a,
    {
        values
            .into_iter()
            .fold(self.zero(), |acc, v| self.add(&acc, v))
    }

    /// `sqrt(2)^exponent`, with `sqrt(2) = zeta_8 + zeta_8^{-1}`.
    fn sqrt2_pow(&self, exponent: i64) -> Self::Value {
        let half = exponent.div_euclid(2);
        let base = self.from_rational(&two_pow(half));
        if exponent.rem_euclid(2) == 0 {
            base
        } else {
            let sqrt2 = self.add(&self.root_of_unity(8, 1), &self.root_of_unity(8, -1));
            self.mul(&base, &sqrt2)
        }
    }

    /// `2^exponent` as a field element.
    fn two_pow(&self, exponent: i64) -> Self::Value {
        self.from_rational(&two_pow(exponent))
    }
}

/// `2^exponent` as an exact rational.
pub fn two_pow(exponent: i64) -> BigRational {
    let p = BigInt::one() << exponent.unsigned_abs();
    if exponent >= 0 {
        BigRational::from_integer(p)
    } else {
        BigRational::new(BigInt::one(), p)
    }
}

/// Field order large enough for every value computed at rank `n`:
/// `lcm(4(n + 1), 8)`. Half-integral exponents of `exp(pi i / (n + 1))` are
/// `4(n+1)`-th roots of unity, and `sqrt(2)` needs `8 | M`.
pub fn working_order(n: u32) -> u64 {
    assert!(n >= 1, "rank must be positive");
    poly::lcm(4 * (n as u64 + 1), 8)
}

/// Float tolerance for integer extraction: residual below
/// `1e-6 * max(1, |x|)`.
pub const FLOAT_INTEGER_TOLERANCE: f64 = 1e-6;

pub(crate) fn non_integer(value: impl ToString) -> Error {
    Error::NonInteger {
        value: value.to_string(),
    }
}
