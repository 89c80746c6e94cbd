//! Gromov-Witten invariants of `LG(n)`, intersection numbers `N~` on
//! Lagrangian Quot schemes, and maximal Lagrangian subbundle counts.
//!
//! All three are sums over `J` in `I_{n+1}^e` of
//! `S_rho(zeta^J)^{g-1} * (integrand at zeta^J)` with
//! `zeta = exp(pi i / (n + 1))`, times a power of two. [`Engine`] caches the
//! per-point tables and runs the sum in parallel.

use num_bigint::BigInt;
use num_integer::Integer;
use rayon::prelude::*;

use crate::arith::{working_order, Backend, CyclotomicField, FloatBackend};
use crate::combinatorics::{rho, summation_set, IndexTuple, StrictPartition};
use crate::error::{Error, Result};
use crate::expr::SchubertExpression;
use crate::symfun::{point_from_tuple, schur, PointTable};

/// `D(n, e, l) = -(n+1) e - n(n+1)/2 * (g - 1 - l)`.
pub fn expected_dimension(n: u32, e: i64, ell: i64, g: u32) -> i64 {
    let n = n as i64;
    -(n + 1) * e - n * (n + 1) * (g as i64 - 1 - ell) / 2
}

/// Largest `e` with `D(n, e, l) >= 0`, i.e. `-ceil(n(g-1-l)/2)`.
pub fn maximal_degree_e0(n: u32, g: u32, ell: i64) -> i64 {
    let x = n as i64 * (g as i64 - 1 - ell);
    -Integer::div_ceil(&x, &2)
}

/// The degree `d >= 0` with `sum |lambda| = n(n+1)(1-g)/2 + (n+1) d`, if any.
pub fn dimension_condition(n: u32, g: u32, insertions: &[StrictPartition]) -> Option<i64> {
    let n = n as i64;
    let total: i64 = insertions.iter().map(|l| l.weight() as i64).sum();
    let rest = total - n * (n + 1) * (1 - g as i64) / 2;
    if rest < 0 || rest % (n + 1) != 0 {
        return None;
    }
    Some(rest / (n + 1))
}

/// Result of [`Engine::maximal_count`]: the degree `e = n(l-g+1)/2` and the
/// count `N(g, n, l, e)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MaximalCount {
    pub e: i64,
    pub value: BigInt,
}

/// Per-point data for one `J` in `I_{n+1}^e`.
#[derive(Clone, Debug)]
pub struct EnginePoint<V> {
    pub tuple: IndexTuple,
    pub table: PointTable<V>,
    pub schur_rho: V,
    pub qtilde_rho: V,
}

/// Evaluator for every root-of-unity sum at a fixed rank `n`.
pub struct Engine<B: Backend> {
    n: u32,
    backend: B,
    rho: StrictPartition,
    points: Vec<EnginePoint<B::Value>>,
}

impl Engine<CyclotomicField> {
    /// Exact evaluation in `Q(zeta_M)`, `M = lcm(4(n+1), 8)`.
    pub fn exact(n: u32) -> Self {
        Engine::new(CyclotomicField::new(working_order(n)), n)
    }
}

impl Engine<FloatBackend> {
    pub fn float(n: u32) -> Self {
        Engine::new(FloatBackend, n)
    }
}

impl<B: Backend> Engine<B> {
    pub fn new(backend: B, n: u32) -> Self {
        assert!(n >= 1, "rank must be positive");
        let rho = rho(n);
        let rho_partition = rho.to_partition();
        let points = summation_set(n)
            .into_par_iter()
            .map(|tuple| {
                let point = point_from_tuple(&backend, &tuple);
                let table = PointTable::new(&backend, &point, n);
                let schur_rho = schur(&backend, &rho_partition, &point);
                let qtilde_rho = table.qtilde(&backend, &rho_partition);
                EnginePoint {
                    tuple,
                    table,
                    schur_rho,
                    qtilde_rho,
                }
            })
            .collect();
        Engine {
            n,
            backend,
            rho,
            points,
        }
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn backend(&self) -> &B {
        &self.backend
    }

    pub fn points(&self) -> &[EnginePoint<B::Value>] {
        &self.points
    }

    /// `sum_J S_rho^{g-1} [Q~_rho] f(J)`; the bracketed factor is present
    /// when `with_rho` is set. At `g = 0` a vanishing `S_rho` is an error.
    pub fn weighted_sum<F>(&self, g: u32, with_rho: bool, f: F) -> Result<B::Value>
    where
        F: Fn(&EnginePoint<B::Value>) -> B::Value + Sync,
    {
        let b = &self.backend;
        let terms = self
            .points
            .par_iter()
            .map(|p| {
                let euler = if g == 0 {
                    b.inv(&p.schur_rho).map_err(|_| {
                        Error::SingularEuler(format!("S_rho vanishes at J = {}", p.tuple))
                    })?
                } else {
                    b.pow_unsigned(&p.schur_rho, (g - 1) as u64)
                };
                let mut value = b.mul(&euler, &f(p));
                if with_rho {
                    value = b.mul(&value, &p.qtilde_rho);
                }
                Ok(value)
            })
            .collect::<Result<Vec<_>>>()?;
        // summing in tuple order keeps float results reproducible
        Ok(b.sum(&terms))
    }

    fn check_insertions(&self, insertions: &[StrictPartition]) -> Result<()> {
        match insertions.iter().find(|l| l.n() != self.n) {
            Some(l) => Err(Error::InvalidArgument(format!(
                "insertion {l} was built for rank {}, expected {}",
                l.n(),
                self.n
            ))),
            None => Ok(()),
        }
    }

    /// The unrounded value of `<sigma_lambda...>_{g,d}`; `None` when `d` is
    /// negative or violates the dimension condition.
    pub fn gw_value(
        &self,
        g: u32,
        d: i64,
        insertions: &[StrictPartition],
    ) -> Result<Option<B::Value>> {
        self.check_insertions(insertions)?;
        if d < 0 || dimension_condition(self.n, g, insertions) != Some(d) {
            return Ok(None);
        }
        let b = &self.backend;
        let partitions: Vec<_> = insertions.iter().map(|l| l.to_partition()).collect();
        let sum = self.weighted_sum(g, false, |p| {
            partitions
                .iter()
                .fold(b.one(), |acc, l| b.mul(&acc, &p.table.qtilde(b, l)))
        })?;
        let prefactor = b.two_pow(self.n as i64 * (g as i64 - 1) - d);
        Ok(Some(b.mul(&prefactor, &sum)))
    }

    /// `<sigma_lambda^1, ..., sigma_lambda^m>_{g,d}`; zero unless the
    /// dimension condition singles out exactly this `d >= 0`.
    pub fn gw_invariant(&self, g: u32, d: i64, insertions: &[StrictPartition]) -> Result<BigInt> {
        match self.gw_value(g, d, insertions)? {
            Some(v) => self.backend.extract_integer(&v),
            None => Ok(BigInt::default()),
        }
    }

    /// The unrounded `N~`; `None` for the zero polynomial or a degree other
    /// than `D(n, e, l)`.
    pub fn intersection_value(
        &self,
        g: u32,
        ell: i64,
        e: i64,
        p: &SchubertExpression,
    ) -> Result<Option<B::Value>> {
        p.check_rank(self.n)?;
        let Some(degree) = p.weighted_degree()? else {
            return Ok(None);
        };
        if degree as i64 != expected_dimension(self.n, e, ell, g) {
            return Ok(None);
        }
        let n = self.n as i64;
        // l = 2m or l = 2m - 1
        let m = if ell % 2 == 0 { ell / 2 } else { (ell + 1) / 2 };
        let b = &self.backend;
        let sum = self.weighted_sum(g, ell % 2 != 0, |pt| p.evaluate(b, &pt.table))?;
        let prefactor = b.two_pow(n * (g as i64 - 1) + e - m * n);
        Ok(Some(b.mul(&prefactor, &sum)))
    }

    /// `N~_{g,e}(P)` for an `L`-valued bundle of degree `nl`.
    pub fn intersection_number(
        &self,
        g: u32,
        ell: i64,
        e: i64,
        p: &SchubertExpression,
    ) -> Result<BigInt> {
        match self.intersection_value(g, ell, e, p)? {
            Some(v) => self.backend.extract_integer(&v),
            None => Ok(BigInt::default()),
        }
    }

    /// The unrounded count together with `e = n(l-g+1)/2`.
    pub fn maximal_value(&self, g: u32, ell: i64) -> Result<(i64, B::Value)> {
        let n = self.n as i64;
        let product = n * (ell - g as i64 + 1);
        if product % 2 != 0 {
            return Err(Error::Parity {
                n: self.n,
                g,
                ell,
                product,
            });
        }
        let odd = ell % 2 != 0;
        let b = &self.backend;
        let sum = self.weighted_sum(g, odd, |_| b.one())?;
        // B_1 = sqrt2^{n(g-1)} for even l, B_2 = sqrt2^{n(g-2)} for odd l
        let sqrt2_exponent = if odd {
            n * (g as i64 - 2)
        } else {
            n * (g as i64 - 1)
        };
        Ok((product / 2, b.mul(&b.sqrt2_pow(sqrt2_exponent), &sum)))
    }

    /// `N(g, n, l, e)`, the number of maximal Lagrangian subbundles.
    pub fn maximal_count(&self, g: u32, ell: i64) -> Result<MaximalCount> {
        let (e, value) = self.maximal_value(g, ell)?;
        Ok(MaximalCount {
            e,
            value: self.backend.extract_integer(&value)?,
        })
    }

    /// Twisting by a line bundle of degree `l_hat` leaves `N~` unchanged:
    /// `(l, e) -> (l + 2 l_hat, e + n l_hat)`.
    pub fn verify_twist_identity(
        &self,
        g: u32,
        ell: i64,
        e: i64,
        p: &SchubertExpression,
        ell_hat: i64,
    ) -> Result<bool> {
        let lhs = self.intersection_number(g, ell, e, p)?;
        let rhs = self.intersection_number(g, ell + 2 * ell_hat, e + self.n as i64 * ell_hat, p)?;
        Ok(lhs == rhs)
    }

    /// `N~_e(P) = N~_{e-nk}(P * Q~_rho^{2k})`.
    pub fn verify_hecke_recursion(
        &self,
        g: u32,
        ell: i64,
        e: i64,
        p: &SchubertExpression,
        k: u32,
    ) -> Result<bool> {
        let lhs = self.intersection_number(g, ell, e, p)?;
        let lifted = p.times_factor(&self.rho, 2 * k as usize);
        let rhs = self.intersection_number(g, ell, e - self.n as i64 * k as i64, &lifted)?;
        Ok(lhs == rhs)
    }

    /// `<...>_{g,d} = <sigma_rho^{2k}, ...>_{g,d+kn}`.
    pub fn verify_rho_insertion(
        &self,
        g: u32,
        d: i64,
        insertions: &[StrictPartition],
        k: u32,
    ) -> Result<bool> {
        let lhs = self.gw_invariant(g, d, insertions)?;
        let mut extended = insertions.to_vec();
        extended.extend(std::iter::repeat(self.rho.clone()).take(2 * k as usize));
        let rhs = self.gw_invariant(g, d + (k * self.n) as i64, &extended)?;
        Ok(lhs == rhs)
    }

    /// For the trivial twist `l = 0`,
    /// `N~_{-d}(prod Q~_lambda) = <sigma_lambda...>_{g,d}`.
    pub fn verify_trivial_bundle_equality(
        &self,
        g: u32,
        d: i64,
        insertions: &[StrictPartition],
    ) -> Result<bool> {
        let p = SchubertExpression::monomial(insertions.to_vec());
        let lhs = self.intersection_number(g, 0, -d, &p)?;
        let rhs = self.gw_invariant(g, d, insertions)?;
        Ok(lhs == rhs)
    }
}

/// One-shot exact [`Engine::gw_invariant`].
pub fn gw_invariant(n: u32, g: u32, d: i64, insertions: &[StrictPartition]) -> Result<BigInt> {
    Engine::exact(n).gw_invariant(g, d, insertions)
}

/// One-shot exact [`Engine::intersection_number`].
pub fn intersection_number(
    n: u32,
    g: u32,
    ell: i64,
    e: i64,
    p: &SchubertExpression,
) -> Result<BigInt> {
    Engine::exact(n).intersection_number(g, ell, e, p)
}

/// One-shot exact [`Engine::maximal_count`].
pub fn maximal_count(n: u32, g: u32, ell: i64) -> Result<MaximalCount> {
    Engine::exact(n).maximal_count(g, ell)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::combinatorics::strict_partitions;

    fn sp(n: u32, parts: &[u32]) -> StrictPartition {
        StrictPartition::new(n, parts.to_vec()).unwrap()
    }

    fn big(v: i64) -> BigInt {
        BigInt::from(v)
    }

    #[test]
    fn expected_dimension_examples() {
        assert_eq!(expected_dimension(2, -1, 0, 2), 0);
        assert_eq!(expected_dimension(1, 0, 1, 2), 0);
        assert_eq!(
            expected_dimension(3, -4, 2, 5) - expected_dimension(3, -3, 2, 5),
            4
        );
    }

    #[test]
    fn maximal_degree_examples() {
        assert_eq!(maximal_degree_e0(2, 2, 0), -1);
        assert_eq!(maximal_degree_e0(1, 2, 1), 0);
        assert_eq!(maximal_degree_e0(2, 3, 0), -2);
        // odd n(g-1-l): the largest e with nonnegative expected dimension
        assert_eq!(maximal_degree_e0(1, 2, 0), -1);
        assert!(expected_dimension(1, -1, 0, 2) >= 0);
        assert!(expected_dimension(1, 0, 0, 2) < 0);
    }

    #[test]
    fn dimension_condition_examples() {
        assert_eq!(dimension_condition(2, 0, &vec![sp(2, &[1]); 3]), Some(0));
        assert_eq!(dimension_condition(1, 2, &[]), None);
        assert_eq!(dimension_condition(1, 0, &vec![sp(1, &[1]); 3]), Some(1));
        assert_eq!(dimension_condition(2, 0, &[sp(2, &[1])]), None);
    }

    #[test]
    fn gw_examples() {
        assert_eq!(
            gw_invariant(2, 0, 0, &vec![sp(2, &[1]); 3]).unwrap(),
            big(2)
        );
        assert_eq!(
            gw_invariant(1, 0, 1, &vec![sp(1, &[1]); 3]).unwrap(),
            big(1)
        );
        assert_eq!(gw_invariant(1, 1, 0, &[]).unwrap(), big(2));
        assert_eq!(gw_invariant(2, 0, 5, &[sp(2, &[1])]).unwrap(), big(0));
        assert_eq!(gw_invariant(2, 0, -1, &[]).unwrap(), big(0));
    }

    #[test]
    fn gw_rejects_foreign_rank() {
        assert!(matches!(
            gw_invariant(2, 0, 0, &[sp(3, &[1])]),
            Err(Error::InvalidArgument(_))
        ));
    }

    #[test]
    fn intersection_examples() {
        let one = SchubertExpression::one();
        assert_eq!(intersection_number(2, 2, 0, -1, &one).unwrap(), big(16));
        assert_eq!(intersection_number(2, 2, -1, -2, &one).unwrap(), big(20));
        let wrong = SchubertExpression::alpha_power(2, 1, 1).unwrap();
        assert_eq!(intersection_number(2, 2, 0, -1, &wrong).unwrap(), big(0));
        assert_eq!(
            intersection_number(2, 2, 0, -1, &SchubertExpression::zero()).unwrap(),
            big(0)
        );
    }

    #[test]
    fn counts() {
        assert_eq!(
            maximal_count(1, 2, 1).unwrap(),
            MaximalCount {
                e: 0,
                value: big(4)
            }
        );
        assert_eq!(maximal_count(2, 2, -1).unwrap().value, big(20));
        assert_eq!(maximal_count(2, 3, 0).unwrap().value, big(112));
        assert!(matches!(maximal_count(1, 2, 0), Err(Error::Parity { .. })));
    }

    #[test]
    fn count_matches_intersection_with_unit() {
        for n in 1..=3 {
            let engine = Engine::exact(n);
            for g in 0..=4 {
                for ell in -3..=3 {
                    let Ok(count) = engine.maximal_count(g, ell) else {
                        continue;
                    };
                    let direct = engine
                        .intersection_number(g, ell, count.e, &SchubertExpression::one())
                        .unwrap();
                    assert_eq!(count.value, direct, "n={n} g={g} l={ell}");
                }
            }
        }
    }

    #[test]
    fn identity_examples() {
        let one = SchubertExpression::one();
        let e2 = Engine::exact(2);
        let e1 = Engine::exact(1);
        assert!(e2.verify_twist_identity(2, 0, -1, &one, 1).unwrap());
        assert!(e1.verify_twist_identity(2, 1, 0, &one, -2).unwrap());
        assert!(e1.verify_twist_identity(2, 1, 0, &one, 0).unwrap());
        assert!(e1.verify_hecke_recursion(2, 1, 0, &one, 1).unwrap());
        assert!(e1.verify_hecke_recursion(2, 1, 0, &one, 0).unwrap());
        assert!(e2.verify_hecke_recursion(2, 0, -1, &one, 1).unwrap());
        assert!(e1.verify_rho_insertion(1, 0, &[], 1).unwrap());
        assert!(e1.verify_rho_insertion(1, 0, &[], 0).unwrap());
        assert!(e2
            .verify_rho_insertion(0, 0, &vec![sp(2, &[1]); 3], 1)
            .unwrap());
        assert_eq!(
            e1.gw_invariant(1, 1, &vec![sp(1, &[1]); 2]).unwrap(),
            big(2)
        );
    }

    #[test]
    fn trivial_bundle_equality_small_grid() {
        let engine = Engine::exact(2);
        let basis = strict_partitions(2);
        for g in 0..=3 {
            for a in &basis {
                for b in &basis {
                    let ins = [a.clone(), b.clone()];
                    let Some(d) = dimension_condition(2, g, &ins) else {
                        continue;
                    };
                    assert!(engine.verify_trivial_bundle_equality(g, d, &ins).unwrap());
                }
            }
        }
    }

    #[test]
    fn float_engine_agrees() {
        let exact = Engine::exact(3);
        let float = Engine::float(3);
        for g in 1..=4 {
            for ell in -2..=2 {
                if let Ok(c) = exact.maximal_count(g, ell) {
                    assert_eq!(float.maximal_count(g, ell).unwrap(), c);
                }
            }
        }
    }
}
