//! Weighted polynomials in Schubert-class factors.
//!
//! A term is a rational coefficient times a multiset of strict partitions;
//! the variable `alpha_k` is the one-part factor `(k)`, because
//! `Q~_(k) = E_k`. A factor `lambda` has weight `|lambda|`.

use std::fmt;

use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::arith::Backend;
use crate::combinatorics::{canonical_cmp, StrictPartition};
use crate::error::{Error, Result};
use crate::symfun::PointTable;

#[derive(Clone, Debug, PartialEq)]
pub struct Term {
    pub coeff: BigRational,
    /// Sorted in canonical order.
    pub factors: Vec<StrictPartition>,
}

impl Term {
    pub fn new(coeff: BigRational, mut factors: Vec<StrictPartition>) -> Self {
        factors.sort_by(canonical_cmp);
        Term { coeff, factors }
    }

    pub fn weighted_degree(&self) -> u32 {
        self.factors.iter().map(StrictPartition::weight).sum()
    }
}

#[derive(Clone, Debug, PartialEq, Default)]
pub struct SchubertExpression {
    terms: Vec<Term>,
}

impl SchubertExpression {
    pub fn zero() -> Self {
        SchubertExpression { terms: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(BigRational::one())
    }

    pub fn constant(c: BigRational) -> Self {
        Self::from_terms(vec![Term::new(c, vec![])])
    }

    /// A single monomial with coefficient one.
    pub fn monomial(factors: Vec<StrictPartition>) -> Self {
        Self::from_terms(vec![Term::new(BigRational::one(), factors)])
    }

    /// `alpha_k^power` at rank `n`.
    pub fn alpha_power(n: u32, k: u32, power: usize) -> Result<Self> {
        let factor = StrictPartition::special(n, k)?;
        Ok(Self::monomial(vec![factor; power]))
    }

    /// Drops zero terms; keeps term order otherwise.
    pub fn from_terms(terms: Vec<Term>) -> Self {
        SchubertExpression {
            terms: terms.into_iter().filter(|t| !t.coeff.is_zero()).collect(),
        }
    }

    pub fn terms(&self) -> &[Term] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// The common weighted degree; `None` for the zero polynomial.
    pub fn weighted_degree(&self) -> Result<Option<u32>> {
        let mut degrees = self.terms.iter().map(Term::weighted_degree);
        let Some(first) = degrees.next() else {
            return Ok(None);
        };
        if degrees.any(|d| d != first) {
            return Err(Error::NonHomogeneous);
        }
        Ok(Some(first))
    }

    /// Multiplies every term by `factor^times`.
    pub fn times_factor(&self, factor: &StrictPartition, times: usize) -> Self {
        let terms = self
            .terms
            .iter()
            .map(|t| {
                let mut factors = t.factors.clone();
                factors.extend(std::iter::repeat(factor.clone()).take(times));
                Term::new(t.coeff.clone(), factors)
            })
            .collect();
        SchubertExpression { terms }
    }

    /// Every factor must live in `D(n)` for the given rank.
    pub fn check_rank(&self, n: u32) -> Result<()> {
        for factor in self.terms.iter().flat_map(|t| &t.factors) {
            if factor.n() != n {
                return Err(Error::InvalidArgument(format!(
                    "factor {factor} was built for rank {}, expected {n}",
                    factor.n()
                )));
            }
        }
        Ok(())
    }

    /// `sum coeff * prod Q~_factor` at one point.
    pub fn evaluate<B: Backend>(&self, backend: &B, table: &PointTable<B::Value>) -> B::Value {
        let mut acc = backend.zero();
        for term in &self.terms {
            let mut value = backend.from_rational(&term.coeff);
            // factors are sorted, so equal factors are adjacent
            let mut i = 0;
            while i < term.factors.len() {
                let mut j = i + 1;
                while j < term.factors.len() && term.factors[j] == term.factors[i] {
                    j += 1;
                }
                let q = table.qtilde(backend, &term.factors[i].to_partition());
                value = backend.mul(&value, &backend.pow_unsigned(&q, (j - i) as u64));
                i = j;
            }
            acc = backend.add(&acc, &value);
        }
        acc
    }
}

impl fmt::Display for SchubertExpression {
    /// Prints in the CLI polynomial grammar, e.g. `2*a1^2 - 1/3*Q[2,1]`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (idx, term) in self.terms.iter().enumerate() {
            let negative = term.coeff.is_negative();
            if idx == 0 {
                if negative {
                    f.write_str("-")?;
                }
            } else {
                f.write_str(if negative { " - " } else { " + " })?;
            }
            let abs = term.coeff.abs();
            let mut wrote = false;
            if !abs.is_one() || term.factors.is_empty() {
                write!(f, "{abs}")?;
                wrote = true;
            }
            let mut i = 0;
            while i < term.factors.len() {
                let mut j = i + 1;
                while j < term.factors.len() && term.factors[j] == term.factors[i] {
                    j += 1;
                }
                if wrote {
                    f.write_str("*")?;
                }
                let factor = &term.factors[i];
                if factor.length() == 1 {
                    write!(f, "a{}", factor.parts()[0])?;
                } else {
                    let parts: Vec<String> = factor.parts().iter().map(u32::to_string).collect();
                    write!(f, "Q[{}]", parts.join(","))?;
                }
                if j - i > 1 {
                    write!(f, "^{}", j - i)?;
                }
                wrote = true;
                i = j;
            }
        }
        Ok(())
    }
}
