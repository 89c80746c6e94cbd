//! Fixtures shared by the benchmarks under `benches/`.

use lagquot_core::arith::Backend;
use lagquot_core::symfun::SkewMatrix;
use lagquot_core::{CyclotomicField, CyclotomicNumber};

/// A dense skew-symmetric integer matrix with a nonzero Pfaffian pattern.
pub fn skew_fixture<B: Backend>(backend: &B, size: usize) -> SkewMatrix<B::Value> {
    SkewMatrix::from_fn(size, |i, j| {
        backend.from_int(((3 * i + 7 * j) % 11) as i64 - 5)
    })
}

/// A cyclotomic number with every coefficient nonzero, e.g. for multiplying.
pub fn dense_cyclotomic(field: &CyclotomicField, seed: i64) -> CyclotomicNumber {
    (0..field.degree() as i64).fold(field.zero(), |acc, k| {
        let term = field.scale(&field.root_of_unity(field.order(), k), seed + 2 * k + 1);
        field.add(&acc, &term)
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use lagquot_core::symfun::pfaffian;

    #[test]
    fn fixtures_are_nontrivial() {
        let field = CyclotomicField::new(24);
        let m = skew_fixture(&field, 8);
        assert!(!field.is_zero(&pfaffian(&field, &m).unwrap()));
        let x = dense_cyclotomic(&field, 3);
        assert!(x.as_rational().is_none());
    }
}
