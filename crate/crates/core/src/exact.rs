//! Exact rationals and truncated power series.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

pub type Rational = num_rational::BigRational;

pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn factorial(n: u32) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, k| acc * k)
}

pub fn factorial_q(n: u32) -> Rational {
    Rational::from_integer(factorial(n))
}

pub fn binomial(n: u32, k: u32) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * (n - i) / (i + 1);
    }
    acc
}

pub fn pow(x: &Rational, e: u32) -> Rational {
    num_traits::pow(x.clone(), e as usize)
}

/// `p/q` in lowest terms, or `p` for integers.
pub fn format_rational(x: &Rational) -> String {
    if x.denom().is_one() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

pub fn parse_rational(s: &str) -> Result<Rational> {
    let s = s.trim();
    let bad = || Error::InvalidInput(format!("not a rational: {s:?}"));
    match s.split_once('/') {
        Some((p, q)) => {
            let p: BigInt = p.trim().parse().map_err(|_| bad())?;
            let q: BigInt = q.trim().parse().map_err(|_| bad())?;
            if q.is_zero() {
                return Err(bad());
            }
            Ok(Rational::new(p, q))
        }
        None => Ok(Rational::from_integer(s.parse().map_err(|_| bad())?)),
    }
}

pub mod rational_str {
    use super::*;

    pub fn serialize<S: Serializer>(x: &Rational, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&format_rational(x))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<Rational, D::Error> {
        let v = serde_json::Value::deserialize(d)?;
        value_to_rational(&v).map_err(serde::de::Error::custom)
    }
}

pub mod rational_vec {
    use super::*;

    pub fn serialize<S: Serializer>(xs: &[Rational], s: S) -> std::result::Result<S::Ok, S::Error> {
        let v: Vec<String> = xs.iter().map(format_rational).collect();
        v.serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<Vec<Rational>, D::Error> {
        let v = Vec::<serde_json::Value>::deserialize(d)?;
        v.iter()
            .map(value_to_rational)
            .collect::<Result<Vec<_>>>()
            .map_err(serde::de::Error::custom)
    }
}

/// Accepts `"p/q"` strings and JSON integers.
pub fn value_to_rational(v: &serde_json::Value) -> Result<Rational> {
    match v {
        serde_json::Value::String(s) => parse_rational(s),
        serde_json::Value::Number(n) if n.is_i64() => Ok(int(n.as_i64().unwrap())),
        _ => Err(Error::InvalidInput(format!("expected a rational string, got {v}"))),
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Var {
    Beta,
    Z,
    W,
    Q,
    U,
}

impl fmt::Display for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Var::Beta => "beta",
            Var::Z => "z",
            Var::W => "w",
            Var::Q => "q",
            Var::U => "u",
        };
        f.write_str(s)
    }
}

/// Power series in one variable, truncated after `x^order`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TruncSeries {
    pub var: Var,
    #[serde(with = "rational_vec")]
    coeffs: Vec<Rational>,
}

impl TruncSeries {
    pub fn new(var: Var, mut coeffs: Vec<Rational>) -> Self {
        if coeffs.is_empty() {
            coeffs.push(Rational::zero());
        }
        TruncSeries { var, coeffs }
    }

    pub fn zero(var: Var, order: usize) -> Self {
        TruncSeries { var, coeffs: vec![Rational::zero(); order + 1] }
    }

    pub fn one(var: Var, order: usize) -> Self {
        let mut s = Self::zero(var, order);
        s.coeffs[0] = Rational::one();
        s
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> Result<&Rational> {
        self.coeffs
            .get(k)
            .ok_or(Error::OrderExceeded { requested: k, order: self.order() })
    }

    pub fn truncate(&self, order: usize) -> Self {
        let mut c: Vec<Rational> = self.coeffs.iter().take(order + 1).cloned().collect();
        c.resize(order + 1, Rational::zero());
        TruncSeries { var: self.var, coeffs: c }
    }

    fn check_var(&self, other: &Self) -> Result<()> {
        if self.var != other.var {
            return Err(Error::VariableMismatch(self.var.to_string(), other.var.to_string()));
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_var(other)?;
        let n = self.order().min(other.order());
        let c = (0..=n).map(|k| &self.coeffs[k] + &other.coeffs[k]).collect();
        Ok(TruncSeries { var: self.var, coeffs: c })
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.scale(&int(-1)))
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check_var(other)?;
        let n = self.order().min(other.order());
        let mut c = vec![Rational::zero(); n + 1];
        for (i, a) in self.coeffs.iter().enumerate().take(n + 1) {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate().take(n + 1 - i) {
                if !b.is_zero() {
                    c[i + j] += a * b;
                }
            }
        }
        Ok(TruncSeries { var: self.var, coeffs: c })
    }

    pub fn scale(&self, x: &Rational) -> Self {
        TruncSeries { var: self.var, coeffs: self.coeffs.iter().map(|c| c * x).collect() }
    }

    /// f(x) -> f(m x).
    pub fn scale_variable(&self, m: &Rational) -> Self {
        let mut p = Rational::one();
        let mut c = Vec::with_capacity(self.coeffs.len());
        for a in &self.coeffs {
            c.push(a * &p);
            p *= m;
        }
        TruncSeries { var: self.var, coeffs: c }
    }

    pub fn invert(&self) -> Result<Self> {
        let a0 = &self.coeffs[0];
        if a0.is_zero() {
            return Err(Error::NonInvertibleConstantTerm);
        }
        let n = self.order();
        let inv0 = a0.recip();
        let mut b = vec![Rational::zero(); n + 1];
        b[0] = inv0.clone();
        for k in 1..=n {
            let mut s = Rational::zero();
            for j in 1..=k {
                if !self.coeffs[j].is_zero() {
                    s += &self.coeffs[j] * &b[k - j];
                }
            }
            b[k] = -s * &inv0;
        }
        Ok(TruncSeries { var: self.var, coeffs: b })
    }

    fn derivative_coeffs(&self) -> Vec<Rational> {
        (1..self.coeffs.len()).map(|k| &self.coeffs[k] * int(k as i64)).collect()
    }

    /// Requires constant term 1.
    pub fn log(&self) -> Result<Self> {
        if !self.coeffs[0].is_one() {
            return Err(Error::BadConstantTerm(format!(
                "log needs constant term 1, got {}",
                format_rational(&self.coeffs[0])
            )));
        }
        let n = self.order();
        if n == 0 {
            return Ok(Self::zero(self.var, 0));
        }
        let d = TruncSeries { var: self.var, coeffs: self.derivative_coeffs() };
        let q = d.mul(&self.truncate(n - 1).invert()?)?;
        let mut c = vec![Rational::zero(); n + 1];
        for k in 1..=n {
            c[k] = &q.coeffs[k - 1] / int(k as i64);
        }
        Ok(TruncSeries { var: self.var, coeffs: c })
    }

    /// Requires constant term 0.
    pub fn exp(&self) -> Result<Self> {
        if !self.coeffs[0].is_zero() {
            return Err(Error::BadConstantTerm(format!(
                "exp needs constant term 0, got {}",
                format_rational(&self.coeffs[0])
            )));
        }
        let n = self.order();
        let mut e = vec![Rational::zero(); n + 1];
        e[0] = Rational::one();
        for m in 1..=n {
            let mut s = Rational::zero();
            for k in 1..=m {
                if !self.coeffs[k].is_zero() {
                    s += &self.coeffs[k] * int(k as i64) * &e[m - k];
                }
            }
            e[m] = s / int(m as i64);
        }
        Ok(TruncSeries { var: self.var, coeffs: e })
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }
}

impl fmt::Display for TruncSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !first {
                f.write_str(if c.is_negative() { " - " } else { " + " })?;
            } else if c.is_negative() {
                f.write_str("-")?;
            }
            first = false;
            let a = format_rational(&c.abs());
            match k {
                0 => write!(f, "{a}")?,
                1 => write!(f, "{a}*{}", self.var)?,
                _ => write!(f, "{a}*{}^{k}", self.var)?,
            }
        }
        if first {
            f.write_str("0")?;
        }
        write!(f, " + O({}^{})", self.var, self.order() + 1)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Special {
    /// sinh(z/2)/(z/2)
    S,
    SInverse,
}

pub fn special_series(kind: Special, var: Var, order: usize) -> TruncSeries {
    let mut c = vec![Rational::zero(); order + 1];
    let mut k = 0;
    while 2 * k <= order {
        let den = BigInt::from(4u32).pow(k as u32) * factorial(2 * k as u32 + 1);
        c[2 * k] = Rational::new(BigInt::one(), den);
        k += 1;
    }
    let s = TruncSeries::new(var, c);
    match kind {
        Special::S => s,
        Special::SInverse => s.invert().expect("S has constant term 1"),
    }
}
