//! Piecewise polynomiality of end-labeled double numbers and wall crossing.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use rayon::prelude::*;
use serde_json::json;

use crate::error::{Error, Result};
use crate::exact::{factorial_q, format_rational, int, pow, Rational};
use crate::linalg::{dot, solve, Echelon};
use crate::partition::{compositions_of, Composition, Partition};
use crate::tropical::{evaluate_breakdown, lambda_breakdown, lambda_prefactor};
use crate::weight::WeightFunction;

/// Nonzero integer end weights summing to zero; positive entries are ends on
/// the left, negative ones on the right.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BalancedPoint(pub Vec<i64>);

impl BalancedPoint {
    pub fn new(x: Vec<i64>) -> Result<Self> {
        if x.len() < 2 {
            return Err(Error::InvalidInput("a point needs at least two entries".into()));
        }
        if x.contains(&0) {
            return Err(Error::InvalidInput(format!("zero entry in {x:?}")));
        }
        if x.iter().sum::<i64>() != 0 {
            return Err(Error::SizeMismatch(format!("entries of {x:?} do not sum to zero")));
        }
        Ok(BalancedPoint(x))
    }

    pub fn n(&self) -> usize {
        self.0.len()
    }

    /// (positive entries, absolute values of negative entries).
    pub fn profiles(&self) -> (Partition, Partition) {
        let pos = self.0.iter().filter(|&&v| v > 0).map(|&v| v as u32).collect();
        let neg = self.0.iter().filter(|&&v| v < 0).map(|&v| (-v) as u32).collect();
        (Partition::from_unsorted(pos), Partition::from_unsorted(neg))
    }

    pub fn end_aut(&self) -> BigInt {
        let (mu, nu) = self.profiles();
        mu.aut() * nu.aut()
    }

    fn subset_sum(&self, mask: u32) -> i64 {
        self.0.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, v)| v).sum()
    }
}

/// Signs of x_I for every proper nonempty I not containing the last index;
/// the complement of such an I has the opposite sign.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ChamberSignature(pub Vec<i8>);

pub fn chamber_of(x: &BalancedPoint) -> Result<ChamberSignature> {
    let n = x.n();
    let mut s = Vec::with_capacity((1 << (n - 1)) - 1);
    for mask in 1u32..(1 << (n - 1)) {
        let v = x.subset_sum(mask);
        if v == 0 {
            let subset = (0..n).filter(|i| mask >> i & 1 == 1).map(|i| i + 1).collect();
            return Err(Error::OnWall(subset));
        }
        s.push(if v > 0 { 1 } else { -1 });
    }
    Ok(ChamberSignature(s))
}

/// Lattice points of the chamber of x0 with all free coordinates in
/// [-radius, radius], x0 first, then by increasing l1 norm.
pub fn chamber_points(x0: &BalancedPoint, radius: i64) -> Result<Vec<BalancedPoint>> {
    let sig = chamber_of(x0)?;
    let n = x0.n();
    let mut pts = Vec::new();
    let mut cur = vec![-radius; n - 1];
    loop {
        let last = -cur.iter().sum::<i64>();
        if last != 0 && cur.iter().all(|&v| v != 0) {
            let mut v = cur.clone();
            v.push(last);
            let p = BalancedPoint(v);
            if p != *x0 && chamber_of(&p).ok().as_ref() == Some(&sig) {
                pts.push(p);
            }
        }
        let mut i = 0;
        while i < n - 1 && cur[i] == radius {
            cur[i] = -radius;
            i += 1;
        }
        if i == n - 1 {
            break;
        }
        cur[i] += 1;
    }
    pts.sort_by_key(|p| (p.0.iter().map(|v| v.abs()).sum::<i64>(), p.0.clone()));
    pts.insert(0, x0.clone());
    Ok(pts)
}

pub fn sample_chamber(x0: &BalancedPoint, count: usize, radius: i64) -> Result<Vec<BalancedPoint>> {
    let mut pts = chamber_points(x0, radius)?;
    if pts.len() < count {
        return Err(Error::InsufficientPoints { found: pts.len(), needed: count });
    }
    pts.truncate(count);
    Ok(pts)
}

/// Polynomial in x_1..x_n; exponent vectors have length n.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LatticePolynomial {
    pub n: usize,
    pub terms: BTreeMap<Vec<u32>, Rational>,
}

impl LatticePolynomial {
    pub fn eval(&self, x: &[i64]) -> Rational {
        self.terms
            .iter()
            .map(|(e, c)| {
                let mut v = c.clone();
                for (xi, &k) in x.iter().zip(e) {
                    v *= pow(&int(*xi), k);
                }
                v
            })
            .sum()
    }

    pub fn degree(&self) -> Option<u32> {
        self.terms.iter().filter(|(_, c)| !c.is_zero()).map(|(e, _)| e.iter().sum()).max()
    }

    pub fn to_json(&self) -> serde_json::Value {
        let t: Vec<_> = self
            .terms
            .iter()
            .filter(|(_, c)| !c.is_zero())
            .map(|(e, c)| json!({"exponents": e, "coeff": format_rational(c)}))
            .collect();
        json!({"n": self.n, "terms": t})
    }
}

/// Exponent vectors in the first n-1 variables of total degree <= d.
fn monomials(n: usize, d: u32) -> Vec<Vec<u32>> {
    let mut out = Vec::new();
    fn rec(k: usize, left: u32, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>, free: usize) {
        if k == free {
            out.push(cur.clone());
            return;
        }
        for e in 0..=left {
            cur.push(e);
            rec(k + 1, left - e, cur, out, free);
            cur.pop();
        }
    }
    rec(0, d, &mut Vec::new(), &mut out, n - 1);
    for m in out.iter_mut() {
        m.push(0);
    }
    out.sort_by_key(|e| (e.iter().sum::<u32>(), std::cmp::Reverse(e.clone())));
    out
}

fn monomial_row(x: &[i64], basis: &[Vec<u32>]) -> Vec<Rational> {
    basis
        .iter()
        .map(|e| {
            let mut v = BigInt::one();
            for (xi, &k) in x.iter().zip(e) {
                v *= BigInt::from(*xi).pow(k);
            }
            Rational::from_integer(v)
        })
        .collect()
}

/// Bound 4g - 3 + n on the degree, or None if no connected genus fits.
pub fn degree_bound(n: usize, r: u32) -> Option<(u32, u32)> {
    let twice = r as i64 + 2 - n as i64;
    if twice < 0 || twice % 2 != 0 {
        return None;
    }
    let g = (twice / 2) as u32;
    Some((g, (4 * g as i64 - 3 + n as i64).max(0) as u32))
}

/// End-labeled connected number |Aut mu||Aut nu| H(mu, nu), optionally
/// refined by the unordered lambda.
pub fn labeled_hurwitz(w: &WeightFunction, r: u32, x: &BalancedPoint, lambda: Option<&Partition>, connected: bool) -> Result<Rational> {
    let (mu, nu) = x.profiles();
    if let Some(l) = lambda {
        if l.size() != r {
            return Err(Error::SizeMismatch(format!("|{l}| != r = {r}")));
        }
    }
    if !(r as usize + mu.len() + nu.len()).is_multiple_of(2) {
        return Ok(Rational::zero());
    }
    let b = lambda_breakdown(&mu, &nu, r, connected)?;
    let v = match lambda {
        None => evaluate_breakdown(w, &b, r)?,
        Some(l) => {
            let a = w.a_coefficients(r as usize)?;
            b.iter().filter(|(c, _)| &c.sorted() == l).map(|(c, v)| lambda_prefactor(&a, c, r) * v).sum()
        }
    };
    Ok(v * Rational::from_integer(x.end_aut()))
}

/// Training and held-out points of a chamber for a fit of degree <= d. The
/// box around the origin grows until enough points are found.
pub fn choose_points(x0: &BalancedPoint, d: u32, validation: usize, max_radius: i64) -> Result<(Vec<BalancedPoint>, Vec<BalancedPoint>)> {
    let basis = monomials(x0.n(), d);
    let start = x0.0.iter().map(|v| v.abs()).max().unwrap_or(1);
    let mut found = 0;
    for radius in start..=max_radius.max(start) {
        let candidates = chamber_points(x0, radius)?;
        found = candidates.len();
        let mut ech = Echelon::new(basis.len());
        let mut training = Vec::new();
        let mut held = Vec::new();
        for p in candidates {
            if !ech.is_full() && ech.try_add(&monomial_row(&p.0, &basis)) {
                training.push(p);
            } else if held.len() < validation {
                held.push(p);
            }
            if ech.is_full() && held.len() == validation {
                return Ok((training, held));
            }
        }
    }
    Err(Error::InsufficientPoints { found, needed: basis.len() + validation })
}

#[derive(Clone, Debug)]
pub struct ChamberFit {
    pub polynomial: LatticePolynomial,
    pub degree_bound: u32,
    pub training: Vec<(BalancedPoint, Rational)>,
    pub validation: Vec<(BalancedPoint, Rational)>,
}

impl ChamberFit {
    pub fn to_json(&self) -> serde_json::Value {
        let pts = |v: &[(BalancedPoint, Rational)]| -> Vec<serde_json::Value> {
            v.iter().map(|(p, h)| json!({"x": p.0, "value": format_rational(h)})).collect()
        };
        json!({
            "polynomial": self.polynomial.to_json(),
            "degreeBound": self.degree_bound,
            "degree": self.polynomial.degree(),
            "training": pts(&self.training),
            "validation": pts(&self.validation),
        })
    }
}

/// Solves for the polynomial through the training values and checks the
/// held-out ones.
pub fn fit_values(
    n: usize,
    d: u32,
    training: Vec<(BalancedPoint, Rational)>,
    validation: Vec<(BalancedPoint, Rational)>,
) -> Result<ChamberFit> {
    let basis = monomials(n, d);
    if training.len() != basis.len() {
        return Err(Error::InsufficientPoints { found: training.len(), needed: basis.len() });
    }
    let a: Vec<Vec<Rational>> = training.iter().map(|(p, _)| monomial_row(&p.0, &basis)).collect();
    let b: Vec<Rational> = training.iter().map(|(_, v)| v.clone()).collect();
    let c = solve(&a, &b).ok_or_else(|| Error::InvariantViolation("training points are not unisolvent".into()))?;
    for (p, v) in &validation {
        let got = dot(&monomial_row(&p.0, &basis), &c);
        if &got != v {
            return Err(Error::ValidationFailure(format!(
                "at {:?} the fit gives {} but the count is {}",
                p.0,
                format_rational(&got),
                format_rational(v)
            )));
        }
    }
    let polynomial = LatticePolynomial { n, terms: basis.into_iter().zip(c).collect() };
    Ok(ChamberFit { polynomial, degree_bound: d, training, validation })
}

pub const DEFAULT_MAX_RADIUS: i64 = 12;

/// Interpolates the end-labeled connected number on the chamber of x0.
pub fn interpolate_chamber(
    w: &WeightFunction,
    r: u32,
    x0: &BalancedPoint,
    lambda: Option<&Partition>,
    validation: usize,
) -> Result<ChamberFit> {
    let n = x0.n();
    let d = degree_bound(n, r).map(|(_, d)| d).unwrap_or(0);
    let (train, held) = choose_points(x0, d, validation, DEFAULT_MAX_RADIUS)?;
    let eval = |pts: Vec<BalancedPoint>| -> Result<Vec<(BalancedPoint, Rational)>> {
        pts.into_par_iter()
            .map(|p| {
                let v = labeled_hurwitz(w, r, &p, lambda, true)?;
                Ok((p, v))
            })
            .collect()
    };
    fit_values(n, d, eval(train)?, eval(held)?)
}

/// Right-hand side of the wall-crossing formula for the wall x_I = 0 at a
/// point with x_I > 0, in the normalisation of `labeled_hurwitz`.
pub fn wall_crossing_rhs(w: &WeightFunction, x: &BalancedPoint, subset: &[usize], lambda: &Partition) -> Result<Rational> {
    let n = x.n();
    if subset.is_empty() || subset.len() >= n || subset.iter().any(|&i| i >= n) {
        return Err(Error::InvalidInput(format!("bad subset {subset:?}")));
    }
    let xi: Vec<i64> = subset.iter().map(|&i| x.0[i]).collect();
    let xc: Vec<i64> = (0..n).filter(|i| !subset.contains(i)).map(|i| x.0[i]).collect();
    let s: i64 = xi.iter().sum();
    if s <= 0 {
        return Err(Error::InvalidInput("wall crossing is evaluated where x_I > 0".into()));
    }
    let r = lambda.size();
    let tuples = compositions_of(s as u32);
    let mut total = Rational::zero();
    for (l1, l2, l3) in three_way_splits(lambda) {
        let (r1, r2, r3) = (l1.size(), l2.size(), l3.size());
        let multinomial = factorial_q(r) / (factorial_q(r1) * factorial_q(r2) * factorial_q(r3));
        let sign = if l2.len() % 2 == 0 { int(1) } else { int(-1) };
        for y in &tuples {
            let mut p1 = xi.clone();
            p1.extend(y.0.iter().map(|&v| -(v as i64)));
            let h1 = labeled_or_zero(w, r1, &p1, &l1, true)?;
            if h1.is_zero() {
                continue;
            }
            for z in &tuples {
                let mut p3: Vec<i64> = z.0.iter().map(|&v| v as i64).collect();
                p3.extend(&xc);
                let h3 = labeled_or_zero(w, r3, &p3, &l3, true)?;
                if h3.is_zero() {
                    continue;
                }
                let mut p2: Vec<i64> = y.0.iter().map(|&v| v as i64).collect();
                p2.extend(z.0.iter().map(|&v| -(v as i64)));
                let h2 = labeled_or_zero(w, r2, &p2, &l2, false)?;
                if h2.is_zero() {
                    continue;
                }
                total += &multinomial * &sign * weight_over_len(y) * weight_over_len(z) * &h1 * h2 * h3;
            }
        }
    }
    Ok(total)
}

fn weight_over_len(y: &Composition) -> Rational {
    let p: i64 = y.0.iter().map(|&v| v as i64).product();
    int(p) / factorial_q(y.0.len() as u32)
}

fn labeled_or_zero(w: &WeightFunction, r: u32, x: &[i64], lambda: &Partition, connected: bool) -> Result<Rational> {
    let p = BalancedPoint::new(x.to_vec())?;
    labeled_hurwitz(w, r, &p, Some(lambda), connected)
}

/// Ordered triples of sub-multisets with union lambda.
fn three_way_splits(lambda: &Partition) -> Vec<(Partition, Partition, Partition)> {
    let mut out = Vec::new();
    for a in lambda.sub_multisets() {
        let rest = lambda.minus(&a).unwrap();
        for b in rest.sub_multisets() {
            let c = rest.minus(&b).unwrap();
            out.push((a.clone(), b, c));
        }
    }
    out
}

#[derive(Clone, Debug)]
pub struct WallCrossingCheck {
    pub points: Vec<(BalancedPoint, Rational, Rational)>,
    pub fit_positive: ChamberFit,
    pub fit_negative: ChamberFit,
}

impl WallCrossingCheck {
    pub fn holds(&self) -> bool {
        self.points.iter().all(|(_, l, r)| l == r)
    }

    pub fn to_json(&self) -> serde_json::Value {
        let pts: Vec<_> = self
            .points
            .iter()
            .map(|(p, l, r)| json!({"x": p.0, "lhs": format_rational(l), "rhs": format_rational(r), "equal": l == r}))
            .collect();
        json!({"points": pts, "holds": self.holds()})
    }
}

/// Interpolates on both chambers adjacent to the wall through `x_wall` and
/// compares P_2 - P_1 with the wall-crossing sum at points with x_I > 0.
pub fn wall_crossing_check(
    w: &WeightFunction,
    lambda: &Partition,
    subset: &[usize],
    x_wall: &[i64],
    test_points: usize,
) -> Result<WallCrossingCheck> {
    let n = x_wall.len();
    if x_wall.iter().sum::<i64>() != 0 || subset.iter().map(|&i| x_wall[i]).sum::<i64>() != 0 {
        return Err(Error::InvalidInput("the base point must be balanced and lie on the wall".into()));
    }
    let j = subset[0];
    let k = (0..n).find(|i| !subset.contains(i)).unwrap();
    let seed = |sign: i64| -> Result<BalancedPoint> {
        let mut v: Vec<i64> = x_wall.iter().map(|&a| 2 * a).collect();
        v[j] += sign;
        v[k] -= sign;
        let p = BalancedPoint::new(v)?;
        chamber_of(&p)?;
        Ok(p)
    };
    let (pos, neg) = (seed(1)?, seed(-1)?);
    let r = lambda.size();
    let fit_positive = interpolate_chamber(w, r, &pos, Some(lambda), 3)?;
    let fit_negative = interpolate_chamber(w, r, &neg, Some(lambda), 3)?;
    let pts = sample_chamber(&pos, test_points, DEFAULT_MAX_RADIUS)?;
    let points = pts
        .into_par_iter()
        .map(|p| {
            let lhs = fit_positive.polynomial.eval(&p.0) - fit_negative.polynomial.eval(&p.0);
            let rhs = wall_crossing_rhs(w, &p, subset, lambda)?;
            Ok((p, lhs, rhs))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(WallCrossingCheck { points, fit_positive, fit_negative })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn chambers_and_walls() {
        let x = BalancedPoint::new(vec![1, 1, -2]).unwrap();
        assert!(chamber_of(&x).is_ok());
        let y = BalancedPoint::new(vec![1, -1, 2, -2]).unwrap();
        assert!(matches!(chamber_of(&y), Err(Error::OnWall(_))));
    }

    #[test]
    fn monomial_count() {
        assert_eq!(monomials(4, 5).len(), 56);
        assert_eq!(monomials(4, 1).len(), 4);
    }

    #[test]
    fn genus_zero_fit() {
        let w = WeightFunction::Exp;
        let x0 = BalancedPoint::new(vec![1, 3, -2, -2]).unwrap();
        let fit = interpolate_chamber(&w, 2, &x0, None, 5).unwrap();
        assert!(fit.polynomial.degree().unwrap_or(0) <= 1);
    }
}
