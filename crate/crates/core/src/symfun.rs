//! Pointwise evaluation of elementary and complete symmetric functions,
//! Schur polynomials (Jacobi-Trudi) and the Pragacz-Ratajski Q-tilde
//! polynomials (Pfaffian of the pairwise matrix).
//!
//! Nothing here is symbolic: every function takes a tuple of backend numbers
//! and returns a backend number.

use std::collections::HashMap;

use crate::arith::Backend;
use crate::combinatorics::{IndexTuple, Partition};
use crate::error::{Error, Result};

/// Realizes `zeta^J` with `zeta = exp(pi i / N)`, `N = J.len()`. The entry
/// `zeta^{j}` equals `omega^{2j}` for the primitive `4N`-th root `omega`.
pub fn point_from_tuple<B: Backend>(backend: &B, tuple: &IndexTuple) -> Vec<B::Value> {
    let order = 4 * tuple.len() as u64;
    tuple
        .doubled()
        .iter()
        .map(|&d| backend.root_of_unity(order, d))
        .collect()
}

/// `E_0, ..., E_N` for an `N`-variable point: the coefficients of
/// `prod (1 + x_i t)`.
pub fn elementary_all<B: Backend>(backend: &B, point: &[B::Value]) -> Vec<B::Value> {
    let mut coeffs = vec![backend.one()];
    for x in point {
        coeffs.push(backend.zero());
        for k in (1..coeffs.len()).rev() {
            let shifted = backend.mul(x, &coeffs[k - 1]);
            coeffs[k] = backend.add(&coeffs[k], &shifted);
        }
    }
    coeffs
}

/// `E_k`, zero outside `0..=N`.
pub fn elementary_at<'a, B: Backend>(
    backend: &B,
    elementary: &'a [B::Value],
    k: i64,
) -> std::borrow::Cow<'a, B::Value> {
    if k >= 0 && (k as usize) < elementary.len() {
        std::borrow::Cow::Borrowed(&elementary[k as usize])
    } else {
        std::borrow::Cow::Owned(backend.zero())
    }
}

/// `H_0, ..., H_upto` from the `E` values, using
/// `sum_{i=0}^{k} (-1)^i E_i H_{k-i} = 0` for `k >= 1`.
pub fn complete_all<B: Backend>(
    backend: &B,
    elementary: &[B::Value],
    upto: usize,
) -> Vec<B::Value> {
    let mut h = Vec::with_capacity(upto + 1);
    h.push(backend.one());
    for k in 1..=upto {
        let mut acc = backend.zero();
        for i in 1..=k.min(elementary.len() - 1) {
            let term = backend.mul(&elementary[i], &h[k - i]);
            acc = if i % 2 == 1 {
                backend.add(&acc, &term)
            } else {
                backend.sub(&acc, &term)
            };
        }
        h.push(acc);
    }
    h
}

/// Division-free determinant by Laplace expansion, memoized over the set of
/// used columns. Cost is `O(2^k k)` for a `k x k` matrix.
pub fn determinant<B: Backend>(backend: &B, matrix: &[Vec<B::Value>]) -> B::Value {
    let k = matrix.len();
    assert!(k <= 24, "determinant of a {k}x{k} matrix is out of range");
    if k == 0 {
        return backend.one();
    }
    // minors[mask] = det of the rows 0..popcount(mask) restricted to columns in mask
    let mut minors: Vec<Option<B::Value>> = vec![None; 1 << k];
    minors[0] = Some(backend.one());
    for mask in 1usize..(1 << k) {
        let row = mask.count_ones() as usize - 1;
        let mut acc = backend.zero();
        for col in 0..k {
            if mask & (1 << col) == 0 {
                continue;
            }
            let entry = &matrix[row][col];
            if !backend.is_zero(entry) {
                let minor = minors[mask & !(1 << col)]
                    .as_ref()
                    .expect("filled in order");
                // expanding along the last row: the sign is the parity of
                // the chosen columns to the right of `col`
                let above = (mask >> (col + 1)).count_ones() as usize;
                let term = backend.mul(entry, minor);
                acc = if above % 2 == 0 {
                    backend.add(&acc, &term)
                } else {
                    backend.sub(&acc, &term)
                };
            }
        }
        minors[mask] = Some(acc);
    }
    minors[(1 << k) - 1].take().expect("full minor")
}

/// Jacobi-Trudi determinant `det[H_{lambda_i + j - i}]` of the given size,
/// which must be at least the length of `lambda`.
pub fn jacobi_trudi<B: Backend>(
    backend: &B,
    lambda: &Partition,
    complete: &[B::Value],
    size: usize,
) -> B::Value {
    assert!(
        size >= lambda.length(),
        "matrix smaller than the partition length"
    );
    let h = |k: i64| -> B::Value {
        if k < 0 {
            backend.zero()
        } else {
            complete[k as usize].clone()
        }
    };
    let matrix: Vec<Vec<B::Value>> = (0..size)
        .map(|i| {
            (0..size)
                .map(|j| h(lambda.part(i) as i64 + j as i64 - i as i64))
                .collect()
        })
        .collect();
    determinant(backend, &matrix)
}

/// `S_lambda` at an `N`-variable point, with `lambda` padded to length `N`.
pub fn schur<B: Backend>(backend: &B, lambda: &Partition, point: &[B::Value]) -> B::Value {
    let big_n = point.len();
    if lambda.length() > big_n {
        return backend.zero();
    }
    let elementary = elementary_all(backend, point);
    let upto = lambda.part(0) as usize + big_n;
    let complete = complete_all(backend, &elementary, upto);
    jacobi_trudi(backend, lambda, &complete, big_n)
}

/// `Q~_{i,j} = E_i E_j + 2 sum_{k=1}^{j} (-1)^k E_{i+k} E_{j-k}` for `i >= j`.
pub fn qtilde_pair<B: Backend>(
    backend: &B,
    i: u32,
    j: u32,
    elementary: &[B::Value],
) -> Result<B::Value> {
    if i < j {
        return Err(Error::InvalidArgument(format!(
            "Q~ pair needs i >= j, got ({i}, {j})"
        )));
    }
    let e = |k: u32| elementary_at(backend, elementary, k as i64);
    let mut acc = backend.mul(&e(i), &e(j));
    for k in 1..=j {
        let term = backend.mul(&e(i + k), &e(j - k));
        if backend.is_zero(&term) {
            continue;
        }
        let doubled = backend.add(&term, &term);
        acc = if k % 2 == 1 {
            backend.sub(&acc, &doubled)
        } else {
            backend.add(&acc, &doubled)
        };
    }
    Ok(acc)
}

/// A skew-symmetric matrix stored by its strict upper triangle.
#[derive(Clone, Debug, PartialEq)]
pub struct SkewMatrix<V> {
    size: usize,
    upper: Vec<V>,
}

impl<V: Clone> SkewMatrix<V> {
    /// Builds from the entry function on `i < j`.
    pub fn from_fn(size: usize, mut entry: impl FnMut(usize, usize) -> V) -> Self {
        let mut upper = Vec::with_capacity(size * size.saturating_sub(1) / 2);
        for i in 0..size {
            for j in (i + 1)..size {
                upper.push(entry(i, j));
            }
        }
        SkewMatrix { size, upper }
    }

    pub fn size(&self) -> usize {
        self.size
    }

    /// Entry `(i, j)` for `i < j`.
    pub fn upper(&self, i: usize, j: usize) -> &V {
        debug_assert!(i < j && j < self.size);
        // rows 0..i contribute (size-1) + (size-2) + ... + (size-i) entries
        let offset = i * (2 * self.size - i - 1) / 2;
        &self.upper[offset + (j - i - 1)]
    }

    /// Full entry with the implied antisymmetry and zero diagonal.
    pub fn entry<B: Backend<Value = V>>(&self, backend: &B, i: usize, j: usize) -> V {
        match i.cmp(&j) {
            std::cmp::Ordering::Less => self.upper(i, j).clone(),
            std::cmp::Ordering::Greater => backend.neg(self.upper(j, i)),
            std::cmp::Ordering::Equal => backend.zero(),
        }
    }
}

/// Pfaffian by expansion along the first remaining row,
/// `Pf(A) = sum_j (-1)^j a_{1j} Pf(A minus rows/cols 1, j)`, memoized over
/// the set of remaining indices.
pub fn pfaffian<B: Backend>(backend: &B, matrix: &SkewMatrix<B::Value>) -> Result<B::Value> {
    let r = matrix.size();
    if r % 2 == 1 {
        return Err(Error::InvalidArgument(format!(
            "Pfaffian of an odd-sized ({r}x{r}) matrix"
        )));
    }
    assert!(r <= 24, "Pfaffian of size {r} is out of range");
    let mut memo: HashMap<u32, B::Value> = HashMap::new();
    let full = if r == 0 { 0 } else { (1u32 << r) - 1 };
    Ok(pfaffian_rec(backend, matrix, full, &mut memo))
}

fn pfaffian_rec<B: Backend>(
    backend: &B,
    matrix: &SkewMatrix<B::Value>,
    remaining: u32,
    memo: &mut HashMap<u32, B::Value>,
) -> B::Value {
    if remaining == 0 {
        return backend.one();
    }
    if let Some(v) = memo.get(&remaining) {
        return v.clone();
    }
    let first = remaining.trailing_zeros() as usize;
    let rest = remaining & !(1 << first);
    let mut acc = backend.zero();
    let mut sign_negative = false;
    let mut bits = rest;
    while bits != 0 {
        let j = bits.trailing_zeros() as usize;
        bits &= bits - 1;
        let a = matrix.upper(first, j);
        if !backend.is_zero(a) {
            let sub = pfaffian_rec(backend, matrix, rest & !(1 << j), memo);
            let term = backend.mul(a, &sub);
            acc = if sign_negative {
                backend.sub(&acc, &term)
            } else {
                backend.add(&acc, &term)
            };
        }
        sign_negative = !sign_negative;
    }
    memo.insert(remaining, acc.clone());
    acc
}

/// The pairwise matrix `B_lambda`: `lambda` padded with one zero to even
/// length, entries `Q~_{lambda_i, lambda_j}` above the diagonal.
pub fn qtilde_matrix<V: Clone>(
    lambda: &Partition,
    mut pair: impl FnMut(u32, u32) -> V,
) -> SkewMatrix<V> {
    let r = 2 * lambda.length().div_ceil(2);
    SkewMatrix::from_fn(r, |i, j| pair(lambda.part(i), lambda.part(j)))
}

/// `Q~_lambda` at a point.
pub fn qtilde<B: Backend>(backend: &B, lambda: &Partition, point: &[B::Value]) -> B::Value {
    let elementary = elementary_all(backend, point);
    qtilde_from_elementary(backend, lambda, &elementary)
}

pub fn qtilde_from_elementary<B: Backend>(
    backend: &B,
    lambda: &Partition,
    elementary: &[B::Value],
) -> B::Value {
    if lambda.length() <= 1 {
        return elementary_at(backend, elementary, lambda.part(0) as i64).into_owned();
    }
    let matrix = qtilde_matrix(lambda, |i, j| {
        qtilde_pair(backend, i, j, elementary).expect("partition parts are decreasing")
    });
    pfaffian(backend, &matrix).expect("even size by construction")
}

/// Per-point values reused across every factor evaluated at that point:
/// `E_0..E_N` and the `Q~_{i,j}` table for `i, j <= max_part`.
#[derive(Clone, Debug)]
pub struct PointTable<V> {
    elementary: Vec<V>,
    max_part: u32,
    pairs: Vec<V>,
}

impl<V: Clone> PointTable<V> {
    pub fn new<B: Backend<Value = V>>(backend: &B, point: &[V], max_part: u32) -> Self {
        let elementary = elementary_all(backend, point);
        let mut pairs = Vec::with_capacity(((max_part + 1) * (max_part + 2) / 2) as usize);
        for i in 0..=max_part {
            for j in 0..=i {
                pairs.push(qtilde_pair(backend, i, j, &elementary).expect("i >= j"));
            }
        }
        PointTable {
            elementary,
            max_part,
            pairs,
        }
    }

    pub fn elementary(&self) -> &[V] {
        &self.elementary
    }

    pub fn pair(&self, i: u32, j: u32) -> &V {
        let (i, j) = if i >= j { (i, j) } else { (j, i) };
        assert!(i <= self.max_part, "part {i} beyond the table");
        &self.pairs[(i * (i + 1) / 2 + j) as usize]
    }

    /// `Q~_lambda` from the cached pair table.
    pub fn qtilde<B: Backend<Value = V>>(&self, backend: &B, lambda: &Partition) -> V {
        if lambda.length() <= 1 {
            return elementary_at(backend, &self.elementary, lambda.part(0) as i64).into_owned();
        }
        let matrix = qtilde_matrix(lambda, |i, j| self.pair(i, j).clone());
        pfaffian(backend, &matrix).expect("even size by construction")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{CyclotomicField, FloatBackend};
    use crate::combinatorics::{rho, summation_set};
    use num_bigint::BigInt;
    use num_complex::Complex64;
    use num_rational::BigRational;
    use proptest::prelude::*;

    fn part(p: &[u32]) -> Partition {
        Partition::new(p.to_vec()).unwrap()
    }

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn close(a: Complex64, b: Complex64) -> bool {
        (a - b).norm() < 1e-10 * (1.0 + b.norm())
    }

    #[test]
    fn elementary_examples() {
        let f = FloatBackend;
        let e = elementary_all(&f, &[c(2.5, 1.0)]);
        assert!(close(e[1], c(2.5, 1.0)));
        let pt = [
            Complex64::from_polar(1.0, -std::f64::consts::FRAC_PI_4),
            Complex64::from_polar(1.0, std::f64::consts::FRAC_PI_4),
        ];
        let e = elementary_all(&f, &pt);
        assert!(close(e[0], c(1.0, 0.0)));
        assert!(close(e[1], c(2f64.sqrt(), 0.0)));
        assert!(close(e[2], c(1.0, 0.0)));
        assert!(close(*elementary_at(&f, &e, 3), c(0.0, 0.0)));
    }

    #[test]
    fn complete_examples() {
        let f = FloatBackend;
        let pt = [c(0.3, 0.2), c(-1.1, 0.5)];
        let e = elementary_all(&f, &pt);
        let h = complete_all(&f, &e, 4);
        assert!(close(h[0], c(1.0, 0.0)));
        assert!(close(h[1], e[1]));
        assert!(close(h[2], e[1] * e[1] - e[2]));
        // direct: h_2 = x^2 + xy + y^2
        let (x, y) = (pt[0], pt[1]);
        assert!(close(h[2], x * x + x * y + y * y));
    }

    #[test]
    fn schur_examples() {
        let f = FloatBackend;
        let pt = [c(0.7, -0.1), c(1.3, 0.4)];
        assert!(close(schur(&f, &Partition::empty(), &pt), c(1.0, 0.0)));
        assert!(close(schur(&f, &part(&[1]), &pt), pt[0] + pt[1]));

        let ex = CyclotomicField::new(8);
        let sqrt2 = ex.sqrt2_pow(1);
        let at = |d: Vec<i64>| {
            let t = IndexTuple::from_doubled(d).unwrap();
            schur(&ex, &rho(1).to_partition(), &point_from_tuple(&ex, &t))
        };
        assert_eq!(at(vec![-1, 1]), sqrt2);
        assert_eq!(at(vec![3, 5]), ex.neg(&sqrt2));
    }

    #[test]
    fn qtilde_pair_examples() {
        let f = FloatBackend;
        let pt = [c(0.2, 0.9), c(-0.4, 0.1), c(1.5, -0.3)];
        let e = elementary_all(&f, &pt);
        for k in 0..=3 {
            assert!(close(qtilde_pair(&f, k, 0, &e).unwrap(), e[k as usize]));
        }
        assert!(close(
            qtilde_pair(&f, 1, 1, &e).unwrap(),
            e[1] * e[1] - 2.0 * e[2]
        ));
        assert!(close(
            qtilde_pair(&f, 2, 1, &e).unwrap(),
            e[2] * e[1] - 2.0 * e[3]
        ));
        assert!(qtilde_pair(&f, 1, 2, &e).is_err());
    }

    #[test]
    fn pfaffian_examples() {
        let f = FloatBackend;
        let a = c(1.7, -0.2);
        let m = SkewMatrix::from_fn(2, |_, _| a);
        assert!(close(pfaffian(&f, &m).unwrap(), a));

        let vals = [
            [0.0, 1.0, 2.0, 3.0],
            [0.0, 0.0, 5.0, 7.0],
            [0.0, 0.0, 0.0, 11.0],
        ];
        let m = SkewMatrix::from_fn(4, |i, j| c(vals[i][j], 0.0));
        let expected = 1.0 * 11.0 - 2.0 * 7.0 + 3.0 * 5.0;
        assert!(close(pfaffian(&f, &m).unwrap(), c(expected, 0.0)));

        let zero = SkewMatrix::from_fn(6, |_, _| c(0.0, 0.0));
        assert!(close(pfaffian(&f, &zero).unwrap(), c(0.0, 0.0)));
        assert!(pfaffian(&f, &SkewMatrix::from_fn(3, |_, _| c(1.0, 0.0))).is_err());
        assert!(close(
            pfaffian(&f, &SkewMatrix::from_fn(0, |_, _| c(1.0, 0.0))).unwrap(),
            c(1.0, 0.0)
        ));
    }

    #[test]
    fn qtilde_examples() {
        let f = FloatBackend;
        let pt = [c(0.2, 0.9), c(-0.4, 0.1), c(1.5, -0.3)];
        let e = elementary_all(&f, &pt);
        for k in 0..=3u32 {
            assert!(close(qtilde(&f, &part(&[k]), &pt), e[k as usize]));
        }
        let q21 = qtilde_pair(&f, 2, 1, &e).unwrap();
        assert!(close(qtilde(&f, &part(&[2, 1]), &pt), q21));
    }

    #[test]
    fn table_matches_direct_evaluation() {
        let ex = CyclotomicField::new(16);
        for tuple in summation_set(3) {
            let pt = point_from_tuple(&ex, &tuple);
            let table = PointTable::new(&ex, &pt, 3);
            for lam in crate::combinatorics::strict_partitions(3) {
                let p = lam.to_partition();
                assert_eq!(table.qtilde(&ex, &p), qtilde(&ex, &p, &pt));
            }
        }
    }

    #[test]
    fn staircase_schur_is_product_of_pair_sums() {
        // S_rho_n in n+1 variables equals prod_{i<j} (x_i + x_j).
        let ex = CyclotomicField::new(40);
        for tuple in summation_set(4) {
            let pt = point_from_tuple(&ex, &tuple);
            let mut prod = ex.one();
            for i in 0..pt.len() {
                for j in (i + 1)..pt.len() {
                    prod = ex.mul(&prod, &ex.add(&pt[i], &pt[j]));
                }
            }
            assert_eq!(schur(&ex, &rho(4).to_partition(), &pt), prod);
        }
    }

    #[test]
    fn jacobi_trudi_padding_is_stable() {
        let f = FloatBackend;
        let pt = [c(0.3, 0.1), c(-0.7, 0.2), c(0.5, -0.6), c(1.1, 0.0)];
        let e = elementary_all(&f, &pt);
        let h = complete_all(&f, &e, 12);
        for lam in [part(&[3, 1]), part(&[2, 2, 1]), part(&[4]), part(&[])] {
            let base = jacobi_trudi(&f, &lam, &h, lam.length());
            for size in lam.length()..=pt.len() {
                assert!(close(jacobi_trudi(&f, &lam, &h, size), base));
            }
        }
    }

    fn rational_point(
        raw: &[(i64, i64)],
    ) -> (CyclotomicField, Vec<crate::arith::CyclotomicNumber>) {
        let ex = CyclotomicField::new(8);
        let pt = raw
            .iter()
            .map(|&(a, b)| {
                ex.add(
                    &ex.from_rational(&BigRational::new(a.into(), 3.into())),
                    &ex.mul(&ex.from_int(b), &ex.root_of_unity(8, 1)),
                )
            })
            .collect();
        (ex, pt)
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(40))]

        #[test]
        fn symmetric_under_transpositions(
            raw in proptest::collection::vec((-6i64..6, -3i64..3), 2..5),
            swap in 0usize..8,
        ) {
            let (ex, pt) = rational_point(&raw);
            let mut swapped = pt.clone();
            let i = swap % pt.len();
            let j = (swap + 1) % pt.len();
            swapped.swap(i, j);
            for lam in [part(&[2, 1]), part(&[3, 2, 1]), part(&[2])] {
                prop_assert_eq!(schur(&ex, &lam, &pt), schur(&ex, &lam, &swapped));
                prop_assert_eq!(qtilde(&ex, &lam, &pt), qtilde(&ex, &lam, &swapped));
            }
        }

        #[test]
        fn homogeneity(
            raw in proptest::collection::vec((-6i64..6, -3i64..3), 2..5),
            t_num in 1i64..7,
            t_den in 1i64..7,
        ) {
            let (ex, pt) = rational_point(&raw);
            let t = ex.from_rational(&BigRational::new(BigInt::from(t_num), BigInt::from(t_den)));
            let scaled: Vec<_> = pt.iter().map(|x| ex.mul(x, &t)).collect();
            for lam in [part(&[2, 1]), part(&[3, 1]), part(&[3, 2, 1]), part(&[1])] {
                let w = lam.weight() as i64;
                let tw = ex.pow(&t, w).unwrap();
                prop_assert_eq!(qtilde(&ex, &lam, &scaled), ex.mul(&tw, &qtilde(&ex, &lam, &pt)));
                prop_assert_eq!(schur(&ex, &lam, &scaled), ex.mul(&tw, &schur(&ex, &lam, &pt)));
            }
        }
    }
}
