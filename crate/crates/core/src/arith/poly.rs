//! Dense univariate polynomials, coefficients stored lowest degree first.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// Euler's totient.
pub fn totient(m: u64) -> u64 {
    let mut result = m;
    let mut rest = m;
    let mut p = 2;
    while p * p <= rest {
        if rest % p == 0 {
            while rest % p == 0 {
                rest /= p;
            }
            result -= result / p;
        }
        p += 1;
    }
    if rest > 1 {
        result -= result / rest;
    }
    result
}

/// The `m`-th cyclotomic polynomial, obtained by dividing `x^m - 1` by
/// `Phi_d` for every proper divisor `d` of `m`.
pub fn cyclotomic_polynomial(m: u64) -> Vec<BigInt> {
    assert!(m >= 1, "cyclotomic order must be positive");
    let mut numerator = vec![BigInt::zero(); m as usize + 1];
    numerator[0] = -BigInt::one();
    numerator[m as usize] = BigInt::one();
    for d in (1..m).filter(|d| m % d == 0) {
        let divisor = cyclotomic_polynomial(d);
        let (quotient, remainder) = divrem_monic_int(&numerator, &divisor);
        debug_assert!(remainder.iter().all(Zero::is_zero));
        numerator = quotient;
    }
    numerator
}

/// Long division by a monic integer polynomial.
pub fn divrem_monic_int(a: &[BigInt], b: &[BigInt]) -> (Vec<BigInt>, Vec<BigInt>) {
    let db = degree(b).expect("division by the zero polynomial");
    assert!(b[db].is_one(), "divisor must be monic");
    let mut rem = a.to_vec();
    let Some(da) = degree(&rem) else {
        return (vec![], vec![]);
    };
    if da < db {
        return (vec![], rem);
    }
    let mut quot = vec![BigInt::zero(); da - db + 1];
    for i in (db..=da).rev() {
        let c = rem[i].clone();
        if c.is_zero() {
            continue;
        }
        for (j, bj) in b.iter().enumerate() {
            rem[i - db + j] -= &c * bj;
        }
        quot[i - db] = c;
    }
    rem.truncate(db);
    (quot, rem)
}

/// Index of the leading nonzero coefficient.
pub fn degree<T: Zero>(p: &[T]) -> Option<usize> {
    p.iter().rposition(|c| !c.is_zero())
}

fn trim<T: Zero>(p: &mut Vec<T>) {
    while p.last().is_some_and(Zero::is_zero) {
        p.pop();
    }
}

fn divrem_rat(a: &[BigRational], b: &[BigRational]) -> (Vec<BigRational>, Vec<BigRational>) {
    let db = degree(b).expect("division by the zero polynomial");
    let mut rem = a.to_vec();
    trim(&mut rem);
    if rem.len() <= db {
        return (vec![], rem);
    }
    let lead_inv = b[db].recip();
    let mut quot = vec![BigRational::zero(); rem.len() - db];
    for i in (db..rem.len()).rev() {
        if rem[i].is_zero() {
            continue;
        }
        let c = &rem[i] * &lead_inv;
        for (j, bj) in b.iter().enumerate().take(db + 1) {
            rem[i - db + j] -= &c * bj;
        }
        quot[i - db] = c;
    }
    rem.truncate(db);
    trim(&mut rem);
    (quot, rem)
}

fn mul_rat(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    if a.is_empty() || b.is_empty() {
        return vec![];
    }
    let mut out = vec![BigRational::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

fn sub_rat(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    let len = a.len().max(b.len());
    let mut out: Vec<BigRational> = (0..len)
        .map(|i| {
            let x = a.get(i).cloned().unwrap_or_else(BigRational::zero);
            match b.get(i) {
                Some(y) => x - y,
                None => x,
            }
        })
        .collect();
    trim(&mut out);
    out
}

/// Inverse of `a` modulo `modulus` over the rationals, by the extended
/// Euclidean algorithm. `None` when `gcd(a, modulus) != 1`.
pub fn inverse_mod(a: &[BigRational], modulus: &[BigRational]) -> Option<Vec<BigRational>> {
    let mut r0 = modulus.to_vec();
    let mut r1 = a.to_vec();
    trim(&mut r0);
    trim(&mut r1);
    let mut t0: Vec<BigRational> = vec![];
    let mut t1: Vec<BigRational> = vec![BigRational::one()];
    while !r1.is_empty() {
        let (q, r) = divrem_rat(&r0, &r1);
        let t2 = sub_rat(&t0, &mul_rat(&q, &t1));
        r0 = std::mem::replace(&mut r1, r);
        t0 = std::mem::replace(&mut t1, t2);
    }
    // r0 is the gcd; it must be a nonzero constant.
    if r0.len() != 1 {
        return None;
    }
    let c = r0[0].recip();
    let (_, mut t) = divrem_rat(&t0, modulus);
    for x in &mut t {
        *x *= &c;
    }
    Some(t)
}

/// `x^k mod modulus` for every `k < count`, as integer vectors of length
/// `deg(modulus)`. The modulus must be monic.
pub fn power_table(modulus: &[BigInt], count: usize) -> Vec<Vec<BigInt>> {
    let deg = degree(modulus).expect("zero modulus");
    let mut out = Vec::with_capacity(count);
    let mut current = vec![BigInt::zero(); deg];
    if deg > 0 {
        current[0] = BigInt::one();
    }
    for _ in 0..count {
        out.push(current.clone());
        // multiply by x and reduce
        let carry = current.pop().unwrap_or_else(BigInt::zero);
        current.insert(0, BigInt::zero());
        if !carry.is_zero() {
            for j in 0..deg {
                current[j] -= &carry * &modulus[j];
            }
        }
    }
    out
}

pub fn to_rational(p: &[BigInt]) -> Vec<BigRational> {
    p.iter().cloned().map(BigRational::from_integer).collect()
}

/// Pretty printer used in error messages: `3/2 + x - 2x^3`.
pub fn format_poly(coeffs: &[BigRational], var: &str) -> String {
    let mut out = String::new();
    for (k, c) in coeffs.iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        let negative = c.is_negative();
        let abs = c.abs();
        if out.is_empty() {
            if negative {
                out.push('-');
            }
        } else {
            out.push_str(if negative { " - " } else { " + " });
        }
        let unit = abs.is_one();
        if k == 0 || !unit {
            out.push_str(&abs.to_string());
        }
        if k >= 1 {
            out.push_str(var);
            if k > 1 {
                out.push('^');
                out.push_str(&k.to_string());
            }
        }
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

/// Least common multiple helper for orders.
pub fn lcm(a: u64, b: u64) -> u64 {
    a.lcm(&b)
}
