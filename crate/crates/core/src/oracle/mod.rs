//! The specialized quantum cohomology ring `qH*(LG(n))` at `q = 1`, built
//! from genus-zero three-point invariants, and the trace formula
//! `<sigma_lambda...>_{g,d} = tr([E^{g-1} sigma_lambda ...])` with the quantum
//! Euler class `E = sum_lambda sigma_lambda * sigma_lambda'`.
//!
//! Everything after the structure constants is exact rational linear algebra
//! and never touches the root-of-unity sums, so agreement with [`crate::gw`]
//! is a genuine cross-check.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use rayon::prelude::*;

use crate::arith::{two_pow, Backend, CyclotomicNumber};
use crate::combinatorics::{dual_partition, strict_partitions, StrictPartition};
use crate::error::{Error, Result};
use crate::gw::Engine;

pub mod cache;
pub mod matrix;

pub use cache::{cache_dir_from_env, load_or_build, CacheStatus};
pub use matrix::RationalMatrix;

/// An algebra element as integer coordinates in the canonical basis.
pub type Element = Vec<BigInt>;

/// `sigma_lambda * sigma_mu` has coefficient `c` on `sigma_nu`, coming from
/// degree `d`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StructureConstant {
    pub lambda: usize,
    pub mu: usize,
    pub nu: usize,
    pub d: i64,
    pub c: BigInt,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QHAlgebra {
    n: u32,
    basis: Vec<StrictPartition>,
    index: HashMap<StrictPartition, usize>,
    /// Row-major `dim x dim`; each entry lists the nonzero `(nu, d, c)`.
    products: Vec<Vec<(usize, i64, BigInt)>>,
}

impl QHAlgebra {
    /// Assembles an algebra from structure constants and checks the ring
    /// axioms.
    pub fn from_constants(n: u32, constants: Vec<StructureConstant>) -> Result<Self> {
        let basis = strict_partitions(n);
        let dim = basis.len();
        let index = basis
            .iter()
            .cloned()
            .enumerate()
            .map(|(i, l)| (l, i))
            .collect();
        let mut products = vec![Vec::new(); dim * dim];
        for sc in constants {
            if sc.lambda >= dim || sc.mu >= dim || sc.nu >= dim {
                return Err(Error::Algebra(format!(
                    "basis index out of range in {sc:?}"
                )));
            }
            if !sc.c.is_zero() {
                products[sc.lambda * dim + sc.mu].push((sc.nu, sc.d, sc.c));
            }
        }
        for entry in &mut products {
            entry.sort_by_key(|&(nu, _, _)| nu);
            if entry.windows(2).any(|w| w[0].0 == w[1].0) {
                return Err(Error::Algebra("duplicate structure constant".into()));
            }
        }
        let algebra = QHAlgebra {
            n,
            basis,
            index,
            products,
        };
        algebra.check_axioms()?;
        Ok(algebra)
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn basis(&self) -> &[StrictPartition] {
        &self.basis
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn index_of(&self, lambda: &StrictPartition) -> Option<usize> {
        self.index.get(lambda).copied()
    }

    /// Nonzero `(nu, d, c)` for `sigma_i * sigma_j`.
    pub fn product(&self, i: usize, j: usize) -> &[(usize, i64, BigInt)] {
        &self.products[i * self.dim() + j]
    }

    pub fn constants(&self) -> impl Iterator<Item = StructureConstant> + '_ {
        let dim = self.dim();
        self.products
            .iter()
            .enumerate()
            .flat_map(move |(k, entry)| {
                entry.iter().map(move |(nu, d, c)| StructureConstant {
                    lambda: k / dim,
                    mu: k % dim,
                    nu: *nu,
                    d: *d,
                    c: c.clone(),
                })
            })
    }

    pub fn basis_element(&self, i: usize) -> Element {
        let mut x = vec![BigInt::zero(); self.dim()];
        x[i] = BigInt::from(1);
        x
    }

    pub fn multiply(&self, x: &[BigInt], y: &[BigInt]) -> Element {
        let mut out = vec![BigInt::zero(); self.dim()];
        for (i, xi) in x.iter().enumerate().filter(|(_, v)| !v.is_zero()) {
            for (j, yj) in y.iter().enumerate().filter(|(_, v)| !v.is_zero()) {
                for (nu, _, c) in self.product(i, j) {
                    out[*nu] += xi * yj * c;
                }
            }
        }
        out
    }

    /// Nonnegativity, commutativity, unit and associativity over all basis
    /// triples.
    pub fn check_axioms(&self) -> Result<()> {
        let dim = self.dim();
        if let Some(sc) = self.constants().find(|sc| sc.c.is_negative()) {
            return Err(Error::Algebra(format!(
                "negative structure constant {sc:?}"
            )));
        }
        let unit = self
            .index_of(&StrictPartition::empty(self.n))
            .expect("empty partition is in the basis");
        for i in 0..dim {
            for j in 0..dim {
                if self.product(i, j) != self.product(j, i) {
                    return Err(Error::Algebra(format!(
                        "not commutative at {} * {}",
                        self.basis[i], self.basis[j]
                    )));
                }
            }
            let expected = [(i, 0, BigInt::from(1))];
            if self.product(unit, i) != expected {
                return Err(Error::Algebra(format!(
                    "empty class is not a unit on {}",
                    self.basis[i]
                )));
            }
        }
        let failure = (0..dim).into_par_iter().find_map_any(|i| {
            let ei = self.basis_element(i);
            for j in 0..dim {
                let ej = self.basis_element(j);
                let ij = self.multiply(&ei, &ej);
                for k in 0..dim {
                    let ek = self.basis_element(k);
                    if self.multiply(&ij, &ek) != self.multiply(&ei, &self.multiply(&ej, &ek)) {
                        return Some((i, j, k));
                    }
                }
            }
            None
        });
        if let Some((i, j, k)) = failure {
            return Err(Error::Algebra(format!(
                "not associative at ({}, {}, {})",
                self.basis[i], self.basis[j], self.basis[k]
            )));
        }
        Ok(())
    }
}

/// Builds `qH*(LG(n))` at `q = 1` with
/// `c = <sigma_lambda, sigma_mu, sigma_nu'>_{0,d}` for the unique `d`
/// satisfying `|nu| = |lambda| + |mu| - (n+1) d`.
pub fn build_qh_algebra(n: u32) -> Result<QHAlgebra> {
    let engine = Engine::exact(n);
    let basis = strict_partitions(n);
    let dim = basis.len();
    let step = n as i64 + 1;
    let constants = (0..dim * dim)
        .into_par_iter()
        .map(|k| {
            let (i, j) = (k / dim, k % dim);
            let mut out = Vec::new();
            for (nu, target) in basis.iter().enumerate() {
                let diff = (basis[i].weight() + basis[j].weight()) as i64 - target.weight() as i64;
                if diff < 0 || diff % step != 0 {
                    continue;
                }
                let d = diff / step;
                let insertions = [basis[i].clone(), basis[j].clone(), dual_partition(target)];
                let c = engine.gw_invariant(0, d, &insertions)?;
                if !c.is_zero() {
                    out.push(StructureConstant {
                        lambda: i,
                        mu: j,
                        nu,
                        d,
                        c,
                    });
                }
            }
            Ok(out)
        })
        .collect::<Result<Vec<_>>>()?;
    QHAlgebra::from_constants(n, constants.into_iter().flatten().collect())
}

/// `[x]`: column `lambda` holds the coordinates of `x * sigma_lambda`.
pub fn mult_operator(algebra: &QHAlgebra, x: &[BigInt]) -> RationalMatrix {
    let dim = algebra.dim();
    let mut m = RationalMatrix::zero(dim);
    for col in 0..dim {
        let image = algebra.multiply(x, &algebra.basis_element(col));
        for (row, v) in image.into_iter().enumerate() {
            m.set(row, col, BigRational::from_integer(v));
        }
    }
    m
}

/// `E = sum_lambda sigma_lambda * sigma_lambda'`.
pub fn quantum_euler(algebra: &QHAlgebra) -> Element {
    let mut total = vec![BigInt::zero(); algebra.dim()];
    for (i, lambda) in algebra.basis().iter().enumerate() {
        let j = algebra
            .index_of(&dual_partition(lambda))
            .expect("dual partition is in the basis");
        let term = algebra.multiply(&algebra.basis_element(i), &algebra.basis_element(j));
        for (t, v) in total.iter_mut().zip(term) {
            *t += v;
        }
    }
    total
}

/// `tr([E]^{g-1} [sigma_lambda^1] ... [sigma_lambda^m])`, with the inverse of
/// `[E]` at genus zero.
pub fn trace_invariant(
    algebra: &QHAlgebra,
    g: u32,
    insertions: &[StrictPartition],
) -> Result<BigRational> {
    let euler = mult_operator(algebra, &quantum_euler(algebra));
    let mut acc = if g == 0 {
        euler.inverse().ok_or_else(|| {
            Error::SingularEuler(format!(
                "quantum Euler operator is singular at n = {}",
                algebra.n()
            ))
        })?
    } else {
        euler.pow(g - 1)
    };
    for lambda in insertions {
        let i = algebra.index_of(lambda).ok_or_else(|| {
            Error::InvalidArgument(format!(
                "{lambda} is not a basis class at n = {}",
                algebra.n()
            ))
        })?;
        acc = &acc * &mult_operator(algebra, &algebra.basis_element(i));
    }
    Ok(acc.trace())
}

/// How eigenvalues of `[sigma_lambda]` are matched with the values
/// `Q~_lambda(zeta^J)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum EigenNormalization {
    /// `charpoly([sigma_lambda]) = prod_J (x - Q~_lambda(zeta^J))`.
    Naive,
    /// `charpoly(2^{|lambda|} [sigma_lambda]^{n+1}) =
    /// prod_J (x - Q~_lambda(zeta^J)^{n+1})`, i.e. the eigenvalues of
    /// `[sigma_lambda]` are `2^{-|lambda|/(n+1)} Q~_lambda(zeta^J)`.
    Calibrated,
}

/// Compares characteristic polynomials of every basis operator with the
/// root-of-unity values under the calibrated normalization.
pub fn eigenvalue_check(algebra: &QHAlgebra) -> Result<bool> {
    eigenvalue_check_with(algebra, EigenNormalization::Calibrated)
}

pub fn eigenvalue_check_with(algebra: &QHAlgebra, norm: EigenNormalization) -> Result<bool> {
    let engine = Engine::exact(algebra.n());
    let b = engine.backend();
    let power = match norm {
        EigenNormalization::Naive => 1,
        EigenNormalization::Calibrated => algebra.n() + 1,
    };
    for (i, lambda) in algebra.basis().iter().enumerate() {
        let mut op = mult_operator(algebra, &algebra.basis_element(i)).pow(power);
        if norm == EigenNormalization::Calibrated {
            op = op.scale(&two_pow(lambda.weight() as i64));
        }
        let charpoly = op.charpoly();
        // prod_J (x - v_J), ascending coefficients
        let mut expected: Vec<CyclotomicNumber> = vec![b.one()];
        for p in engine.points() {
            let v = b.pow_unsigned(&p.table.qtilde(b, &lambda.to_partition()), power as u64);
            let mut next = vec![b.zero(); expected.len() + 1];
            for (k, c) in expected.iter().enumerate() {
                next[k + 1] = b.add(&next[k + 1], c);
                next[k] = b.sub(&next[k], &b.mul(c, &v));
            }
            expected = next;
        }
        let matches = expected
            .iter()
            .zip(&charpoly)
            .all(|(e, c)| e.as_rational().as_ref() == Some(c));
        if !matches {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Basis labels in canonical order, e.g. `["", "1", "2", "2,1"]`.
pub fn basis_labels(n: u32) -> Vec<String> {
    strict_partitions(n).iter().map(label).collect()
}

/// `"2,1"` for `(2,1)`, `""` for the empty partition.
pub fn label(lambda: &StrictPartition) -> String {
    lambda
        .parts()
        .iter()
        .map(u32::to_string)
        .collect::<Vec<_>>()
        .join(",")
}
