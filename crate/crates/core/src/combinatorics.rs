//! Partitions, strict partitions and the root-of-unity index sets.
//!
//! Index tuples store every entry doubled, so the half-integral entries used
//! for an even number of variables stay exact integers. Membership in the
//! filtered sets is decided by residue arithmetic on the doubled entries.

use std::cmp::Ordering;
use std::fmt;

use crate::error::{Error, Result};

/// A weakly decreasing sequence of nonnegative integers. Trailing zeros are
/// dropped on construction.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Partition {
    parts: Vec<u32>,
}

impl Partition {
    pub fn new(mut parts: Vec<u32>) -> Result<Self> {
        if parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::InvalidPartition {
                parts,
                reason: "parts must be weakly decreasing".into(),
            });
        }
        while parts.last() == Some(&0) {
            parts.pop();
        }
        Ok(Partition { parts })
    }

    pub fn empty() -> Self {
        Partition { parts: Vec::new() }
    }

    pub fn parts(&self) -> &[u32] {
        &self.parts
    }

    pub fn weight(&self) -> u32 {
        self.parts.iter().sum()
    }

    /// Number of nonzero parts.
    pub fn length(&self) -> usize {
        self.parts.len()
    }

    /// The `i`-th part (zero-based), zero beyond the length.
    pub fn part(&self, i: usize) -> u32 {
        self.parts.get(i).copied().unwrap_or(0)
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_parts(f, &self.parts)
    }
}

/// A Schubert class label: a strict partition with parts at most `n`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct StrictPartition {
    n: u32,
    parts: Vec<u32>,
}

impl StrictPartition {
    pub fn new(n: u32, parts: Vec<u32>) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidArgument("rank n must be at least 1".into()));
        }
        if parts.contains(&0) {
            return Err(Error::InvalidPartition {
                parts,
                reason: "parts must be positive".into(),
            });
        }
        if parts.windows(2).any(|w| w[0] <= w[1]) {
            return Err(Error::InvalidPartition {
                parts,
                reason: "parts must be strictly decreasing".into(),
            });
        }
        if let Some(&p) = parts.first() {
            if p > n {
                return Err(Error::InvalidPartition {
                    reason: format!("part {p} exceeds n = {n}"),
                    parts,
                });
            }
        }
        Ok(StrictPartition { n, parts })
    }

    /// The empty partition, labelling the unit class.
    pub fn empty(n: u32) -> Self {
        StrictPartition {
            n,
            parts: Vec::new(),
        }
    }

    /// The one-part partition `(k)`, labelling a special Schubert class.
    pub fn special(n: u32, k: u32) -> Result<Self> {
        Self::new(n, vec![k])
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn parts(&self) -> &[u32] {
        &self.parts
    }

    pub fn weight(&self) -> u32 {
        self.parts.iter().sum()
    }

    pub fn length(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    /// Bitmask of the part set, bit `k - 1` for part `k`.
    pub fn mask(&self) -> u32 {
        self.parts.iter().fold(0, |m, &p| m | (1 << (p - 1)))
    }

    pub fn to_partition(&self) -> Partition {
        Partition {
            parts: self.parts.clone(),
        }
    }
}

impl fmt::Display for StrictPartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_parts(f, &self.parts)
    }
}

fn write_parts(f: &mut fmt::Formatter<'_>, parts: &[u32]) -> fmt::Result {
    if parts.is_empty() {
        return f.write_str("()");
    }
    f.write_str("(")?;
    for (i, p) in parts.iter().enumerate() {
        if i > 0 {
            f.write_str(",")?;
        }
        write!(f, "{p}")?;
    }
    f.write_str(")")
}

/// Canonical basis order: weight ascending, then parts lexicographically
/// descending.
pub fn canonical_cmp(a: &StrictPartition, b: &StrictPartition) -> Ordering {
    a.weight()
        .cmp(&b.weight())
        .then_with(|| b.parts.cmp(&a.parts))
}

/// All strict partitions with parts at most `n`, in canonical order.
pub fn strict_partitions(n: u32) -> Vec<StrictPartition> {
    assert!((1..32).contains(&n), "rank out of range: {n}");
    let mut all: Vec<StrictPartition> = (0u32..(1 << n))
        .map(|mask| {
            let parts = (1..=n)
                .rev()
                .filter(|k| mask & (1 << (k - 1)) != 0)
                .collect();
            StrictPartition { n, parts }
        })
        .collect();
    all.sort_by(canonical_cmp);
    all
}

/// The partition whose part set is the complement of `lambda`'s in `{1..n}`.
pub fn dual_partition(lambda: &StrictPartition) -> StrictPartition {
    let n = lambda.n;
    let mask = lambda.mask();
    let parts = (1..=n)
        .rev()
        .filter(|k| mask & (1 << (k - 1)) == 0)
        .collect();
    StrictPartition { n, parts }
}

/// The staircase `(n, n-1, ..., 1)`.
pub fn rho(n: u32) -> StrictPartition {
    assert!(n >= 1, "rank must be positive");
    StrictPartition {
        n,
        parts: (1..=n).rev().collect(),
    }
}

/// A strictly increasing tuple `J = (j_1, ..., j_N)` stored as `2 j_i`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct IndexTuple {
    doubled: Vec<i64>,
}

impl IndexTuple {
    /// Validates parity and the bounds of the full tuple set for `N = len`.
    pub fn from_doubled(doubled: Vec<i64>) -> Result<Self> {
        let big_n = doubled.len();
        if big_n == 0 {
            return Err(Error::InvalidArgument(
                "index tuple must be nonempty".into(),
            ));
        }
        let (lo, hi) = doubled_bounds(big_n);
        let parity = (big_n as i64 + 1).rem_euclid(2);
        for &d in &doubled {
            if d < lo || d > hi || d.rem_euclid(2) != parity {
                return Err(Error::InvalidArgument(format!(
                    "doubled entry {d} outside the admissible set for N = {big_n}"
                )));
            }
        }
        if doubled.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::InvalidArgument(
                "index tuple must be strictly increasing".into(),
            ));
        }
        Ok(IndexTuple { doubled })
    }

    pub fn len(&self) -> usize {
        self.doubled.len()
    }

    pub fn is_empty(&self) -> bool {
        self.doubled.is_empty()
    }

    pub fn doubled(&self) -> &[i64] {
        &self.doubled
    }
}

impl fmt::Display for IndexTuple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (i, d) in self.doubled.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            if d.rem_euclid(2) == 0 {
                write!(f, "{}", d / 2)?;
            } else {
                write!(f, "{d}/2")?;
            }
        }
        f.write_str(")")
    }
}

/// Inclusive bounds on doubled entries: `[-2m, 6m+2]` for `N = 2m+1`,
/// `[-2m+1, 6m-1]` for `N = 2m`.
fn doubled_bounds(big_n: usize) -> (i64, i64) {
    let m = (big_n / 2) as i64;
    if big_n % 2 == 1 {
        (-2 * m, 6 * m + 2)
    } else {
        (-2 * m + 1, 6 * m - 1)
    }
}

/// Enumerates the full tuple set for `N` variables in lexicographic order.
pub fn index_tuples_t(big_n: usize) -> Vec<IndexTuple> {
    assert!(big_n >= 1, "N must be positive");
    let (lo, hi) = doubled_bounds(big_n);
    let values: Vec<i64> = (lo..=hi).step_by(2).collect();
    let mut out = Vec::new();
    let mut current = Vec::with_capacity(big_n);
    combinations(&values, big_n, 0, &mut current, &mut |c| {
        out.push(IndexTuple {
            doubled: c.to_vec(),
        })
    });
    out
}

fn combinations(
    values: &[i64],
    k: usize,
    start: usize,
    current: &mut Vec<i64>,
    emit: &mut impl FnMut(&[i64]),
) {
    if current.len() == k {
        emit(current);
        return;
    }
    let need = k - current.len();
    for i in start..values.len() {
        if values.len() - i < need {
            break;
        }
        current.push(values[i]);
        combinations(values, k, i + 1, current, emit);
        current.pop();
    }
}

/// No two entries differ by `N` (in `j` units) modulo `2N`, i.e. no
/// `zeta^{j_k} = -zeta^{j_l}`.
pub fn in_i(tuple: &IndexTuple) -> bool {
    let big_n = tuple.len() as i64;
    let d = &tuple.doubled;
    for k in 0..d.len() {
        for l in (k + 1)..d.len() {
            if (d[k] - d[l]).rem_euclid(4 * big_n) == 2 * big_n {
                return false;
            }
        }
    }
    true
}

/// The product of the roots is one: the doubled sum vanishes modulo `4N`.
pub fn has_unit_product(tuple: &IndexTuple) -> bool {
    let big_n = tuple.len() as i64;
    tuple.doubled.iter().sum::<i64>().rem_euclid(4 * big_n) == 0
}

pub fn filter_i(tuples: impl IntoIterator<Item = IndexTuple>) -> Vec<IndexTuple> {
    tuples.into_iter().filter(in_i).collect()
}

pub fn filter_i_even(tuples: impl IntoIterator<Item = IndexTuple>) -> Vec<IndexTuple> {
    tuples
        .into_iter()
        .filter(|t| in_i(t) && has_unit_product(t))
        .collect()
}

/// The summation set for rank `n`: the even subset for `N = n + 1` variables.
pub fn summation_set(n: u32) -> Vec<IndexTuple> {
    filter_i_even(index_tuples_t(n as usize + 1))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sp(n: u32, parts: &[u32]) -> StrictPartition {
        StrictPartition::new(n, parts.to_vec()).unwrap()
    }

    fn binomial(n: u64, k: u64) -> u64 {
        (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
    }

    #[test]
    fn strict_partitions_small_ranks() {
        let one: Vec<_> = strict_partitions(1)
            .iter()
            .map(|p| p.parts().to_vec())
            .collect();
        assert_eq!(one, vec![vec![], vec![1]]);
        let two: Vec<_> = strict_partitions(2)
            .iter()
            .map(|p| p.parts().to_vec())
            .collect();
        assert_eq!(two, vec![vec![], vec![1], vec![2], vec![2, 1]]);
        assert_eq!(strict_partitions(3).len(), 8);
        let three: Vec<_> = strict_partitions(3).iter().map(|p| p.to_string()).collect();
        assert_eq!(
            three,
            ["()", "(1)", "(2)", "(3)", "(2,1)", "(3,1)", "(3,2)", "(3,2,1)"]
        );
    }

    #[test]
    fn strict_partition_validation() {
        assert!(StrictPartition::new(2, vec![3]).is_err());
        assert!(StrictPartition::new(3, vec![1, 2]).is_err());
        assert!(StrictPartition::new(3, vec![2, 2]).is_err());
        assert!(StrictPartition::new(3, vec![2, 0]).is_err());
        assert!(StrictPartition::new(0, vec![]).is_err());
        assert!(Partition::new(vec![1, 2]).is_err());
        assert_eq!(Partition::new(vec![2, 2, 0, 0]).unwrap().length(), 2);
    }

    #[test]
    fn dual_examples() {
        assert_eq!(dual_partition(&StrictPartition::empty(2)), sp(2, &[2, 1]));
        assert_eq!(dual_partition(&sp(3, &[3, 1])), sp(3, &[2]));
        assert!(dual_partition(&rho(4)).is_empty());
        for n in 1..=6 {
            for lam in strict_partitions(n) {
                let dual = dual_partition(&lam);
                assert_eq!(lam.weight() + dual.weight(), n * (n + 1) / 2);
                assert_eq!(dual_partition(&dual), lam);
            }
        }
    }

    #[test]
    fn rho_examples() {
        assert_eq!(rho(1).parts(), &[1]);
        assert_eq!(rho(2).weight(), 3);
        assert_eq!(rho(4).parts(), &[4, 3, 2, 1]);
        assert_eq!(rho(4).weight(), 10);
    }

    #[test]
    fn tuple_counts() {
        let t2 = index_tuples_t(2);
        assert_eq!(t2.len(), 6);
        let expected: Vec<Vec<i64>> = vec![
            vec![-1, 1],
            vec![-1, 3],
            vec![-1, 5],
            vec![1, 3],
            vec![1, 5],
            vec![3, 5],
        ];
        assert_eq!(
            t2.iter().map(|t| t.doubled().to_vec()).collect::<Vec<_>>(),
            expected
        );
        assert_eq!(index_tuples_t(3).len(), 20);
        assert_eq!(index_tuples_t(1).len(), 2);
        assert_eq!(
            index_tuples_t(1)
                .iter()
                .map(|t| t.doubled().to_vec())
                .collect::<Vec<_>>(),
            vec![vec![0], vec![2]]
        );
        for big_n in 1..=9usize {
            let m = (big_n / 2) as u64;
            let pool = if big_n % 2 == 1 { 4 * m + 2 } else { 4 * m };
            let all = index_tuples_t(big_n);
            assert_eq!(all.len() as u64, binomial(pool, big_n as u64));
            assert!(all.windows(2).all(|w| w[0] < w[1]));
        }
    }

    #[test]
    fn filtered_sets_for_two_variables() {
        let i2: Vec<Vec<i64>> = filter_i(index_tuples_t(2))
            .iter()
            .map(|t| t.doubled().to_vec())
            .collect();
        assert_eq!(i2, vec![vec![-1, 1], vec![-1, 5], vec![1, 3], vec![3, 5]]);
        let ie2: Vec<Vec<i64>> = filter_i_even(index_tuples_t(2))
            .iter()
            .map(|t| t.doubled().to_vec())
            .collect();
        assert_eq!(ie2, vec![vec![-1, 1], vec![3, 5]]);
        assert_eq!(filter_i_even(index_tuples_t(3)).len(), 4);
    }

    #[test]
    fn summation_set_has_two_to_the_n_points() {
        for n in 1..=10u32 {
            assert_eq!(summation_set(n).len(), 1usize << n, "n = {n}");
            assert_eq!(strict_partitions(n).len(), 1usize << n);
        }
    }

    #[test]
    fn index_tuple_validation() {
        assert!(IndexTuple::from_doubled(vec![-1, 1]).is_ok());
        assert!(IndexTuple::from_doubled(vec![0, 2]).is_err());
        assert!(IndexTuple::from_doubled(vec![1, -1]).is_err());
        assert!(IndexTuple::from_doubled(vec![-3, 1]).is_err());
        assert_eq!(
            IndexTuple::from_doubled(vec![-1, 1]).unwrap().to_string(),
            "(-1/2, 1/2)"
        );
    }
}
