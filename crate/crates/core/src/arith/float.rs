use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{FromPrimitive, ToPrimitive};

use super::{non_integer, Backend, FLOAT_INTEGER_TOLERANCE};
use crate::error::{Error, Result};

/// Double-precision complex backend.
#[derive(Clone, Copy, Debug, Default)]
pub struct FloatBackend;

impl Backend for FloatBackend {
    type Value = Complex64;

    fn name(&self) -> &'static str {
        "float"
    }

    fn from_int(&self, v: i64) -> Complex64 {
        Complex64::new(v as f64, 0.0)
    }

    fn from_rational(&self, q: &BigRational) -> Complex64 {
        Complex64::new(q.to_f64().unwrap_or(f64::NAN), 0.0)
    }

    fn root_of_unity(&self, order: u64, k: i64) -> Complex64 {
        let k = k.rem_euclid(order as i64) as f64;
        Complex64::from_polar(1.0, 2.0 * std::f64::consts::PI * k / order as f64)
    }

    fn add(&self, a: &Complex64, b: &Complex64) -> Complex64 {
        a + b
    }

    fn sub(&self, a: &Complex64, b: &Complex64) -> Complex64 {
        a - b
    }

    fn mul(&self, a: &Complex64, b: &Complex64) -> Complex64 {
        a * b
    }

    fn neg(&self, a: &Complex64) -> Complex64 {
        -a
    }

    fn inv(&self, a: &Complex64) -> Result<Complex64> {
        if self.is_zero(a) {
            return Err(Error::DivisionByZero);
        }
        Ok(a.inv())
    }

    fn is_zero(&self, a: &Complex64) -> bool {
        a.norm() < 1e-12
    }

    fn extract_integer(&self, a: &Complex64) -> Result<BigInt> {
        let rounded = a.re.round();
        let residual = Complex64::new(a.re - rounded, a.im).norm();
        if !rounded.is_finite() || residual >= FLOAT_INTEGER_TOLERANCE * a.norm().max(1.0) {
            return Err(non_integer(a));
        }
        BigInt::from_f64(rounded).ok_or_else(|| non_integer(a))
    }

    fn extract_rational(&self, a: &Complex64) -> Result<BigRational> {
        if a.im.abs() >= FLOAT_INTEGER_TOLERANCE * a.norm().max(1.0) {
            return Err(non_integer(a));
        }
        BigRational::from_f64(a.re).ok_or_else(|| non_integer(a))
    }

    fn to_complex(&self, a: &Complex64) -> Complex64 {
        *a
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn integer_extraction_tolerance() {
        let b = FloatBackend;
        assert_eq!(
            b.extract_integer(&Complex64::new(19.9999999, 0.0)).unwrap(),
            BigInt::from(20)
        );
        assert!(b.extract_integer(&Complex64::new(19.5, 0.0)).is_err());
        assert!(b.extract_integer(&Complex64::new(20.0, 0.01)).is_err());
    }

    #[test]
    fn sqrt_two() {
        let b = FloatBackend;
        assert!((b.sqrt2_pow(1).re - 2f64.sqrt()).abs() < 1e-15);
        assert!((b.sqrt2_pow(-3).re - 2f64.powf(-1.5)).abs() < 1e-15);
    }
}
