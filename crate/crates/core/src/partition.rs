use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::One;
use serde::{Deserialize, Deserializer, Serialize};

use crate::error::{Error, Result};
use crate::exact::{factorial, Rational};

/// Weakly decreasing positive parts.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(transparent)]
pub struct Partition(Vec<u32>);

impl Partition {
    pub fn new(parts: Vec<u32>) -> Result<Self> {
        if parts.contains(&0) {
            return Err(Error::InvalidInput(format!("partition {parts:?} has a zero part")));
        }
        if parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::InvalidInput(format!("partition {parts:?} is not weakly decreasing")));
        }
        Ok(Partition(parts))
    }

    /// Sorts and drops zeros.
    pub fn from_unsorted(mut parts: Vec<u32>) -> Self {
        parts.retain(|&p| p > 0);
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Partition(parts)
    }

    pub fn empty() -> Self {
        Partition(Vec::new())
    }

    pub fn parts(&self) -> &[u32] {
        &self.0
    }

    pub fn size(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// part -> multiplicity
    pub fn multiplicities(&self) -> BTreeMap<u32, u32> {
        let mut m = BTreeMap::new();
        for &p in &self.0 {
            *m.entry(p).or_insert(0) += 1;
        }
        m
    }

    /// Product of factorials of multiplicities.
    pub fn aut(&self) -> BigInt {
        self.multiplicities().values().fold(BigInt::one(), |a, &m| a * factorial(m))
    }

    /// Order of the centralizer, prod m_i! i^{m_i}.
    pub fn z_order(&self) -> BigInt {
        self.multiplicities()
            .iter()
            .fold(BigInt::one(), |a, (&i, &m)| a * factorial(m) * BigInt::from(i).pow(m))
    }

    pub fn z_order_q(&self) -> Rational {
        Rational::from_integer(self.z_order())
    }

    /// Size of the conjugacy class in S_|self|.
    pub fn class_size(&self) -> BigInt {
        factorial(self.size()) / self.z_order()
    }

    /// Contents j - i of all cells, row by row.
    pub fn contents(&self) -> Vec<i64> {
        let mut c = Vec::with_capacity(self.size() as usize);
        for (i, &row) in self.0.iter().enumerate() {
            for j in 0..row as i64 {
                c.push(j - i as i64);
            }
        }
        c
    }

    pub fn conjugate(&self) -> Partition {
        let first = self.0.first().copied().unwrap_or(0);
        Partition((1..=first).map(|j| self.0.iter().filter(|&&p| p >= j).count() as u32).collect())
    }

    /// Pads with ones up to size `d`.
    pub fn padded(&self, d: u32) -> Result<Partition> {
        let s = self.size();
        if s > d {
            return Err(Error::SizeMismatch(format!("{self} does not fit in degree {d}")));
        }
        let mut p = self.0.clone();
        p.extend(std::iter::repeat_n(1, (d - s) as usize));
        Ok(Partition(p))
    }

    /// Parts greater than one.
    pub fn stripped(&self) -> Partition {
        Partition(self.0.iter().copied().filter(|&p| p > 1).collect())
    }

    /// Multiset union.
    pub fn merge(&self, other: &Partition) -> Partition {
        let mut p = self.0.clone();
        p.extend_from_slice(&other.0);
        Partition::from_unsorted(p)
    }

    /// Multiset difference; `None` unless `other` is contained in `self`.
    pub fn minus(&self, other: &Partition) -> Option<Partition> {
        let mut p = self.0.clone();
        for &x in &other.0 {
            let i = p.iter().position(|&y| y == x)?;
            p.remove(i);
        }
        Some(Partition(p))
    }

    /// Distinct sub-multisets, including the empty one and `self`.
    pub fn sub_multisets(&self) -> Vec<Partition> {
        let m: Vec<(u32, u32)> = self.multiplicities().into_iter().rev().collect();
        let mut out = vec![Vec::new()];
        for (part, mult) in m {
            let mut next = Vec::new();
            for base in &out {
                for k in 0..=mult {
                    let mut v: Vec<u32> = base.clone();
                    v.extend(std::iter::repeat_n(part, k as usize));
                    next.push(v);
                }
            }
            out = next;
        }
        out.into_iter().map(Partition).collect()
    }
}

impl<'de> Deserialize<'de> for Partition {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let v = Vec::<u32>::deserialize(d)?;
        Partition::new(v).map_err(serde::de::Error::custom)
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: Vec<String> = self.0.iter().map(u32::to_string).collect();
        write!(f, "({})", s.join(","))
    }
}

/// Ordered sequence of positive parts.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Composition(pub Vec<u32>);

impl Composition {
    pub fn size(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn sorted(&self) -> Partition {
        Partition::from_unsorted(self.0.clone())
    }
}

/// All partitions of `n` in reverse lexicographic order.
pub fn partitions_of(n: u32) -> Vec<Partition> {
    let mut out = Vec::new();
    let mut cur = Vec::new();
    fn rec(rem: u32, max: u32, cur: &mut Vec<u32>, out: &mut Vec<Partition>) {
        if rem == 0 {
            out.push(Partition(cur.clone()));
            return;
        }
        for p in (1..=rem.min(max)).rev() {
            cur.push(p);
            rec(rem - p, p, cur, out);
            cur.pop();
        }
    }
    rec(n, n, &mut cur, &mut out);
    out
}

/// Partitions of `n` into at most `k` parts.
pub fn partitions_with_max_len(n: u32, k: usize) -> Vec<Partition> {
    partitions_of(n).into_iter().filter(|p| p.len() <= k).collect()
}

/// All compositions of `n`.
pub fn compositions_of(n: u32) -> Vec<Composition> {
    if n == 0 {
        return vec![Composition(Vec::new())];
    }
    let mut out = Vec::new();
    for first in 1..=n {
        for mut rest in compositions_of(n - first) {
            rest.0.insert(0, first);
            out.push(rest);
        }
    }
    out
}

/// Distinct orderings of a partition.
pub fn distinct_permutations(p: &Partition) -> Vec<Composition> {
    let mut counts: Vec<(u32, u32)> = p.multiplicities().into_iter().rev().collect();
    let mut out = Vec::new();
    let mut cur = Vec::new();
    fn rec(counts: &mut Vec<(u32, u32)>, left: usize, cur: &mut Vec<u32>, out: &mut Vec<Composition>) {
        if left == 0 {
            out.push(Composition(cur.clone()));
            return;
        }
        for i in 0..counts.len() {
            if counts[i].1 > 0 {
                counts[i].1 -= 1;
                cur.push(counts[i].0);
                rec(counts, left - 1, cur, out);
                cur.pop();
                counts[i].1 += 1;
            }
        }
    }
    let n = p.len();
    rec(&mut counts, n, &mut cur, &mut out);
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reverse_lex_order() {
        let p: Vec<Vec<u32>> = partitions_of(4).into_iter().map(|p| p.0).collect();
        assert_eq!(p, vec![vec![4], vec![3, 1], vec![2, 2], vec![2, 1, 1], vec![1, 1, 1, 1]]);
        assert_eq!(partitions_of(12).len(), 77);
        assert_eq!(partitions_of(0), vec![Partition::empty()]);
    }

    #[test]
    fn z_orders() {
        let p = Partition::new(vec![2, 1, 1]).unwrap();
        assert_eq!(p.z_order(), BigInt::from(4));
        assert_eq!(Partition::new(vec![3]).unwrap().z_order(), BigInt::from(3));
    }

    #[test]
    fn contents_of_21() {
        assert_eq!(Partition::new(vec![2, 1]).unwrap().contents(), vec![0, 1, -1]);
    }

    #[test]
    fn rejects_bad_input() {
        assert!(Partition::new(vec![1, 2]).is_err());
        assert!(Partition::new(vec![2, 0]).is_err());
    }

    #[test]
    fn sub_multisets_of_211() {
        let p = Partition::new(vec![2, 1, 1]).unwrap();
        assert_eq!(p.sub_multisets().len(), 6);
    }

    #[test]
    fn orderings() {
        let p = Partition::new(vec![2, 1, 1]).unwrap();
        assert_eq!(distinct_permutations(&p).len(), 3);
        assert_eq!(compositions_of(4).len(), 8);
    }
}
