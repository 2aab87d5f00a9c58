//! Irreducible characters of S_d and shifted-symmetric evaluations.

use std::collections::HashMap;
use std::sync::{Mutex, OnceLock};

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::exact::{factorial, int, pow, rat, Rational};
use crate::partition::Partition;

type Memo = Mutex<HashMap<(Vec<u32>, Vec<u32>), BigInt>>;

fn memo() -> &'static Memo {
    static M: OnceLock<Memo> = OnceLock::new();
    M.get_or_init(|| Mutex::new(HashMap::new()))
}

/// chi^lambda(mu) by the Murnaghan-Nakayama rule.
pub fn character(lambda: &Partition, mu: &Partition) -> Result<BigInt> {
    if lambda.size() != mu.size() {
        return Err(Error::SizeMismatch(format!("|{lambda}| != |{mu}|")));
    }
    Ok(mn(lambda.parts(), mu.parts()))
}

pub fn character_q(lambda: &Partition, mu: &Partition) -> Result<Rational> {
    character(lambda, mu).map(Rational::from_integer)
}

fn mn(lambda: &[u32], mu: &[u32]) -> BigInt {
    if mu.is_empty() {
        return BigInt::one();
    }
    let key = (lambda.to_vec(), mu.to_vec());
    if let Some(v) = memo().lock().unwrap().get(&key) {
        return v.clone();
    }
    let k = mu[0];
    let rest = &mu[1..];
    let l = lambda.len();
    let beta: Vec<u32> = lambda.iter().enumerate().map(|(i, &p)| p + (l - 1 - i) as u32).collect();
    let mut total = BigInt::zero();
    for (idx, &b) in beta.iter().enumerate() {
        if b < k || beta.contains(&(b - k)) {
            continue;
        }
        let target = b - k;
        let between = beta.iter().filter(|&&c| c > target && c < b).count();
        let mut nb = beta.clone();
        nb[idx] = target;
        nb.sort_unstable_by(|a, b| b.cmp(a));
        let shape: Vec<u32> = nb
            .iter()
            .enumerate()
            .map(|(i, &c)| c - (l - 1 - i) as u32)
            .filter(|&p| p > 0)
            .collect();
        let v = mn(&shape, rest);
        if between % 2 == 0 {
            total += v;
        } else {
            total -= v;
        }
    }
    memo().lock().unwrap().insert(key, total.clone());
    total
}

/// Dimension by the hook length formula.
pub fn dimension(lambda: &Partition) -> BigInt {
    let conj = lambda.conjugate();
    let mut hooks = BigInt::one();
    for (i, &row) in lambda.parts().iter().enumerate() {
        for j in 0..row as usize {
            let arm = row as usize - j - 1;
            let leg = conj.parts()[j] as usize - i - 1;
            hooks *= arm + leg + 1;
        }
    }
    factorial(lambda.size()) / hooks
}

/// Central character of the class (nu, 1^{|gamma|-|nu|}) on gamma.
pub fn central_character(nu: &Partition, gamma: &Partition) -> Result<Rational> {
    let padded = nu.padded(gamma.size())?;
    let chi = character(gamma, &padded)?;
    Ok(Rational::new(padded.class_size() * chi, dimension(gamma)))
}

pub fn power_sum(k: u32, values: &[Rational]) -> Rational {
    values.iter().map(|x| pow(x, k)).sum()
}

/// Monomial symmetric function m_lambda at finitely many values.
pub fn monomial_eval(lambda: &Partition, values: &[Rational]) -> Rational {
    if lambda.len() > values.len() {
        return Rational::zero();
    }
    let kinds: Vec<(u32, u32)> = lambda.multiplicities().into_iter().collect();
    // state: remaining multiplicity per kind
    let mut states: HashMap<Vec<u32>, Rational> = HashMap::new();
    states.insert(kinds.iter().map(|k| k.1).collect(), Rational::one());
    for x in values {
        let powers: Vec<Rational> = kinds.iter().map(|&(p, _)| pow(x, p)).collect();
        let mut next: HashMap<Vec<u32>, Rational> = HashMap::new();
        for (st, c) in states {
            for (i, pw) in powers.iter().enumerate() {
                if st[i] > 0 && !pw.is_zero() {
                    let mut s2 = st.clone();
                    s2[i] -= 1;
                    *next.entry(s2).or_insert_with(Rational::zero) += &c * pw;
                }
            }
            *next.entry(st).or_insert_with(Rational::zero) += c;
        }
        states = next;
    }
    let done: Vec<u32> = vec![0; kinds.len()];
    states.remove(&done).unwrap_or_else(Rational::zero)
}

/// Contents of lambda as rationals.
pub fn contents_q(lambda: &Partition) -> Vec<Rational> {
    lambda.contents().into_iter().map(int).collect()
}

/// f_2 through its shifted-symmetric definition.
pub fn f2_eval(lambda: &Partition) -> Rational {
    let half = rat(1, 2);
    lambda
        .parts()
        .iter()
        .enumerate()
        .map(|(i, &p)| {
            let i = int(i as i64 + 1);
            let a = int(p as i64) - &i + &half;
            let b = -&i + &half;
            (&a * &a - &b * &b) * &half
        })
        .sum()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::partition::partitions_of;

    fn p(v: &[u32]) -> Partition {
        Partition::new(v.to_vec()).unwrap()
    }

    #[test]
    fn s3_table() {
        let rows = [p(&[3]), p(&[2, 1]), p(&[1, 1, 1])];
        let cols = [p(&[1, 1, 1]), p(&[2, 1]), p(&[3])];
        let expect = [[1, 1, 1], [2, 0, -1], [1, -1, 1]];
        for (r, row) in rows.iter().enumerate() {
            for (c, col) in cols.iter().enumerate() {
                assert_eq!(character(row, col).unwrap(), BigInt::from(expect[r][c]));
            }
        }
    }

    #[test]
    fn s4_known_values() {
        assert_eq!(character(&p(&[2, 2]), &p(&[2, 2])).unwrap(), BigInt::from(2));
        assert_eq!(character(&p(&[3, 1]), &p(&[4])).unwrap(), BigInt::from(-1));
        assert_eq!(character(&p(&[2, 1, 1]), &p(&[3, 1])).unwrap(), BigInt::from(0));
    }

    #[test]
    fn dimension_matches_identity_character() {
        for lam in partitions_of(7) {
            let one = p(&[1; 7]);
            assert_eq!(dimension(&lam), character(&lam, &one).unwrap());
        }
    }

    #[test]
    fn central_character_of_transposition_is_content_sum() {
        for lam in partitions_of(6) {
            let cs: i64 = lam.contents().iter().sum();
            assert_eq!(central_character(&p(&[2]), &lam).unwrap(), int(cs));
        }
    }

    #[test]
    fn monomials_small() {
        let xs = [int(1), int(2), int(3)];
        assert_eq!(monomial_eval(&p(&[1, 1]), &xs), int(11));
        assert_eq!(monomial_eval(&p(&[2]), &xs), int(14));
        assert_eq!(monomial_eval(&p(&[2, 1]), &xs), int(2 + 3 + 4 + 4 * 3 + 9 + 9 * 2));
        assert_eq!(monomial_eval(&p(&[1, 1, 1, 1]), &xs), int(0));
        assert_eq!(monomial_eval(&Partition::empty(), &xs), int(1));
    }
}
