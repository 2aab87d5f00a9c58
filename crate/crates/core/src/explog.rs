//! Connected counts from disconnected ones by taking a graded logarithm.
//!
//! A key is a monomial q^d u^r y_{parts}; products add d and r and merge the
//! part multisets. With Z = exp(C) and D the degree operator,
//! d T_K = sum over sub-keys K1 of d1 C_{K1} T_{K - K1}.

use std::collections::HashMap;

use num_traits::Zero;

use crate::error::Result;
use crate::exact::{int, Rational};
use crate::partition::Partition;

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GradedKey {
    pub d: u32,
    pub r: u32,
    pub parts: Vec<Partition>,
}

impl GradedKey {
    pub fn new(d: u32, r: u32, parts: Vec<Partition>) -> Self {
        GradedKey { d, r, parts }
    }

    fn splits(&self) -> Vec<(GradedKey, GradedKey)> {
        let mut subs: Vec<Vec<Partition>> = vec![Vec::new()];
        for p in &self.parts {
            let mut next = Vec::new();
            for base in &subs {
                for s in p.sub_multisets() {
                    let mut b = base.clone();
                    b.push(s);
                    next.push(b);
                }
            }
            subs = next;
        }
        let mut out = Vec::new();
        for d1 in 1..self.d {
            for r1 in 0..=self.r {
                for s in &subs {
                    let rest: Vec<Partition> =
                        self.parts.iter().zip(s).map(|(p, q)| p.minus(q).expect("sub-multiset")).collect();
                    out.push((
                        GradedKey::new(d1, r1, s.clone()),
                        GradedKey::new(self.d - d1, self.r - r1, rest),
                    ));
                }
            }
        }
        out
    }
}

/// Memoised log transform over a user-supplied disconnected coefficient.
pub struct GradedLog<F> {
    total: F,
    admissible: fn(&GradedKey) -> bool,
    t_memo: HashMap<GradedKey, Rational>,
    c_memo: HashMap<GradedKey, Rational>,
}

impl<F: FnMut(&GradedKey) -> Result<Rational>> GradedLog<F> {
    /// `total(K)` is the coefficient of the monomial K in Z; it is only called
    /// on keys with `admissible(K)` true, all others count as zero.
    pub fn new(total: F, admissible: fn(&GradedKey) -> bool) -> Self {
        GradedLog { total, admissible, t_memo: HashMap::new(), c_memo: HashMap::new() }
    }

    pub fn disconnected(&mut self, k: &GradedKey) -> Result<Rational> {
        if let Some(v) = self.t_memo.get(k) {
            return Ok(v.clone());
        }
        let v = if (self.admissible)(k) { (self.total)(k)? } else { Rational::zero() };
        self.t_memo.insert(k.clone(), v.clone());
        Ok(v)
    }

    pub fn connected(&mut self, k: &GradedKey) -> Result<Rational> {
        if let Some(v) = self.c_memo.get(k) {
            return Ok(v.clone());
        }
        let mut v = self.disconnected(k)?;
        if k.d > 0 {
            let mut acc = Rational::zero();
            for (k1, k2) in k.splits() {
                if !(self.admissible)(&k1) || !(self.admissible)(&k2) {
                    continue;
                }
                let t2 = self.disconnected(&k2)?;
                if t2.is_zero() {
                    continue;
                }
                let c1 = self.connected(&k1)?;
                acc += c1 * t2 * int(k1.d as i64);
            }
            v -= acc / int(k.d as i64);
        }
        self.c_memo.insert(k.clone(), v.clone());
        Ok(v)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::partition::partitions_of;

    #[test]
    fn partitions_log_to_divisor_sums() {
        // sum p(d) q^d = exp(sum sigma(d)/d q^d)
        let mut log = GradedLog::new(|k: &GradedKey| Ok(if k.r == 0 { int(partitions_of(k.d).len() as i64) } else { int(0) }), |_| true);
        let sigma = [1, 3, 4, 7, 6, 12, 8];
        for d in 1..=7u32 {
            let c = log.connected(&GradedKey::new(d, 0, vec![])).unwrap();
            assert_eq!(c, Rational::new(sigma[d as usize - 1].into(), d.into()));
        }
    }
}
