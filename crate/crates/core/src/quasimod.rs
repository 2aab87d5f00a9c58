//! Quasimodular forms for the full modular group and exact fitting.

use std::collections::BTreeMap;

use num_traits::{One, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exact::{binomial, format_rational, int, Rational, TruncSeries, Var};
use crate::linalg::{dot, solve, Echelon};
use crate::partition::{partitions_of, Partition};

/// Bernoulli numbers with B_1 = -1/2.
pub fn bernoulli(n: u32) -> Rational {
    let mut b: Vec<Rational> = vec![Rational::one()];
    for m in 1..=n {
        let mut s = Rational::zero();
        for k in 0..m {
            s += Rational::from_integer(binomial(m + 1, k)) * &b[k as usize];
        }
        b.push(-s / int(m as i64 + 1));
    }
    b[n as usize].clone()
}

fn divisor_power_sum(n: u64, k: u32) -> Rational {
    let mut s = num_bigint::BigInt::zero();
    for d in 1..=n {
        if n.is_multiple_of(d) {
            s += num_bigint::BigInt::from(d).pow(k);
        }
    }
    Rational::from_integer(s)
}

/// G_k = -B_k/(2k) + sum sigma_{k-1}(n) q^n for even k >= 2.
pub fn eisenstein_q(k: u32, order: usize) -> Result<TruncSeries> {
    if k < 2 || k % 2 == 1 {
        return Err(Error::OddWeight(k));
    }
    let mut c = vec![-bernoulli(k) / int(2 * k as i64)];
    for n in 1..=order as u64 {
        c.push(divisor_power_sum(n, k - 1));
    }
    Ok(TruncSeries::new(Var::Q, c))
}

/// Ramanujan's P, Q, R normalised to constant term 1.
pub fn pqr(order: usize) -> [TruncSeries; 3] {
    [
        eisenstein_q(2, order).unwrap().scale(&int(-24)),
        eisenstein_q(4, order).unwrap().scale(&int(240)),
        eisenstein_q(6, order).unwrap().scale(&int(-504)),
    ]
}

/// Exponents (a, b, c) of P^a Q^b R^c of weight <= w_max, by weight and then
/// decreasing power of P.
pub fn basis_exponents(w_max: u32) -> Result<Vec<(u32, u32, u32)>> {
    if w_max % 2 == 1 {
        return Err(Error::OddWeight(w_max));
    }
    let mut out = Vec::new();
    for w in (0..=w_max).step_by(2) {
        for c in 0..=w / 6 {
            for b in 0..=(w - 6 * c) / 4 {
                let rest = w - 6 * c - 4 * b;
                out.push((rest / 2, b, c));
            }
        }
    }
    let mut by_weight: Vec<(u32, u32, u32)> = out;
    by_weight.sort_by_key(|&(a, b, c)| (2 * a + 4 * b + 6 * c, std::cmp::Reverse(a), std::cmp::Reverse(b)));
    Ok(by_weight)
}

pub fn monomial_name(e: (u32, u32, u32)) -> String {
    let mut s = String::new();
    for (sym, k) in [("P", e.0), ("Q", e.1), ("R", e.2)] {
        match k {
            0 => {}
            1 => s.push_str(sym),
            _ => s.push_str(&format!("{sym}^{k}")),
        }
    }
    if s.is_empty() {
        s.push('1');
    }
    s
}

/// Basis series to the given order.
pub fn quasimodular_basis(w_max: u32, order: usize) -> Result<Vec<(String, TruncSeries)>> {
    let [p, q, r] = pqr(order);
    basis_exponents(w_max)?
        .into_iter()
        .map(|e| {
            let mut m = TruncSeries::one(Var::Q, order);
            for (s, k) in [(&p, e.0), (&q, e.1), (&r, e.2)] {
                for _ in 0..k {
                    m = m.mul(s)?;
                }
            }
            Ok((monomial_name(e), m))
        })
        .collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct QuasimodFit {
    #[serde(rename = "weightCap")]
    pub weight_cap: u32,
    #[serde(serialize_with = "coords_ser")]
    pub coords: Vec<(String, Rational)>,
    /// Coefficients checked beyond those used to solve.
    pub validated: usize,
}

fn coords_ser<S: serde::Serializer>(c: &[(String, Rational)], s: S) -> std::result::Result<S::Ok, S::Error> {
    use serde::ser::SerializeMap;
    let mut m = s.serialize_map(Some(c.len()))?;
    for (k, v) in c {
        m.serialize_entry(k, &format_rational(v))?;
    }
    m.end()
}

impl QuasimodFit {
    pub fn coord(&self, name: &str) -> Option<&Rational> {
        self.coords.iter().find(|(k, _)| k == name).map(|(_, v)| v)
    }
}

pub const MIN_VALIDATED: usize = 3;

/// Weight cap 6g - 6 + sum(4|mu| - 2 l(mu)) for connected elliptic series of
/// genus g with the given ramification profiles (each simple branch point
/// has weight 3, each f_mu weight |mu| + l(mu)).
pub fn profiled_weight_cap(g: u32, profiles: &[Partition]) -> Option<u32> {
    let w = 6 * g as i64 - 6 + profiles
            .iter()
            .map(|p| {
                let p = p.stripped();
                4 * p.size() as i64 - 2 * p.len() as i64
            })
            .sum::<i64>();
    (w >= 0).then_some(w as u32)
}

/// Writes s in the basis of weight <= w_max using the shortest prefix of
/// coefficients that determines the coordinates, and checks all others.
pub fn fit_quasimodular(s: &TruncSeries, w_max: u32, hold_out: usize) -> Result<QuasimodFit> {
    let order = s.order();
    let basis = quasimodular_basis(w_max, order)?;
    let dim = basis.len();
    let rows: Vec<Vec<Rational>> =
        (0..=order).map(|n| basis.iter().map(|(_, b)| b.coeffs()[n].clone()).collect()).collect();
    let mut ech = Echelon::new(dim);
    let mut used = Vec::new();
    for (n, row) in rows.iter().enumerate() {
        if ech.try_add(row) {
            used.push(n);
        }
        if ech.is_full() {
            break;
        }
    }
    if !ech.is_full() {
        return Err(Error::InsufficientOrder(format!(
            "{} coefficients do not determine the {dim} coordinates",
            order + 1
        )));
    }
    let validated = order - used.last().unwrap();
    let need = hold_out.max(MIN_VALIDATED);
    if validated < need {
        return Err(Error::Underdetermined(validated));
    }
    let a: Vec<Vec<Rational>> = used.iter().map(|&n| rows[n].clone()).collect();
    let b: Vec<Rational> = used.iter().map(|&n| s.coeffs()[n].clone()).collect();
    let x = solve(&a, &b).ok_or_else(|| Error::InvariantViolation("selected rows are singular".into()))?;
    for (n, row) in rows.iter().enumerate() {
        if dot(row, &x) != s.coeffs()[n] {
            return Err(Error::NoSolution(n));
        }
    }
    Ok(QuasimodFit { weight_cap: w_max, coords: basis.into_iter().map(|(k, _)| k).zip(x).collect(), validated })
}

/// <f>_q = sum f(lambda) q^|lambda| / sum q^|lambda|.
pub fn q_bracket(values: &BTreeMap<Partition, Rational>, order: usize) -> Result<TruncSeries> {
    q_bracket_fn(
        |p| {
            values.get(p).cloned().ok_or_else(|| Error::IncompleteInput(format!("no value for {p}")))
        },
        order,
    )
}

pub fn q_bracket_fn<F: FnMut(&Partition) -> Result<Rational>>(mut f: F, order: usize) -> Result<TruncSeries> {
    let mut num = Vec::with_capacity(order + 1);
    let mut den = Vec::with_capacity(order + 1);
    for n in 0..=order as u32 {
        let ps = partitions_of(n);
        den.push(int(ps.len() as i64));
        let mut s = Rational::zero();
        for p in &ps {
            s += f(p)?;
        }
        num.push(s);
    }
    TruncSeries::new(Var::Q, num).mul(&TruncSeries::new(Var::Q, den).invert()?)
}
