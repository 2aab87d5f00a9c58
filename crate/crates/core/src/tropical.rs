//! Tropical covers of the line and the tropical correspondence.

use std::collections::{BTreeMap, HashMap};

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde_json::json;

use crate::error::{Error, Result};
use crate::exact::{factorial, factorial_q, format_rational, int, special_series, Rational, Special, TruncSeries, Var};
use crate::oracles::check_double_input;
use crate::partition::{Composition, Partition};
use crate::weight::WeightFunction;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
enum Origin {
    Left,
    Vertex(usize),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoverVertex {
    pub genus: u32,
    pub left_ends: Vec<u32>,
    pub right_ends: Vec<u32>,
    pub lambda: u32,
    /// Weights of all adjacent edges and ends.
    pub weights: Vec<u32>,
}

/// A tropical cover with vertices in sweep order. Ends are unlabeled.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TropicalCoverP1 {
    pub vertices: Vec<CoverVertex>,
    /// Bounded edges (source, target, weight), source < target.
    pub edges: Vec<(usize, usize, u32)>,
    /// Ends running from the left to the right without meeting a vertex.
    pub through: Vec<u32>,
    pub aut: BigInt,
}

impl TropicalCoverP1 {
    pub fn lambda(&self) -> Composition {
        Composition(self.vertices.iter().map(|v| v.lambda).collect())
    }

    pub fn is_connected(&self) -> bool {
        if self.vertices.is_empty() {
            return self.through.len() == 1;
        }
        if !self.through.is_empty() {
            return false;
        }
        let n = self.vertices.len();
        let mut label: Vec<usize> = (0..n).collect();
        for &(a, b, _) in &self.edges {
            let (la, lb) = (label[a], label[b]);
            for l in label.iter_mut() {
                if *l == lb {
                    *l = la;
                }
            }
        }
        label.iter().all(|&l| l == label[0])
    }

    /// Arithmetic genus: first Betti number plus vertex genera, summed over
    /// components, minus the number of components plus one.
    pub fn genus(&self) -> i64 {
        self.edges.len() as i64 - self.vertices.len() as i64 - self.through.len() as i64
            + self.vertices.iter().map(|v| v.genus as i64).sum::<i64>()
            + 1
    }

    /// Weight-independent part: prod of local coefficients and edge weights
    /// over |Aut|, with the local coefficient chosen by `local`.
    fn base_value(&self, local: &mut LocalCache, kind: LocalKind) -> Rational {
        let mut v = Rational::one();
        for vert in &self.vertices {
            v *= local.get(&vert.weights, vert.genus, kind);
        }
        for &(_, _, w) in &self.edges {
            v *= int(w as i64);
        }
        for &w in &self.through {
            v /= int(w as i64);
        }
        v / Rational::from_integer(self.aut.clone())
    }

    pub fn to_json(&self, multiplicity: Option<&Rational>) -> serde_json::Value {
        let vs: Vec<_> = self
            .vertices
            .iter()
            .map(|v| json!({"g": v.genus, "leftEnds": v.left_ends, "rightEnds": v.right_ends}))
            .collect();
        let es: Vec<_> = self.edges.iter().map(|&(a, b, w)| json!([a + 1, b + 1, w])).collect();
        let mut o = json!({
            "vertices": vs,
            "edges": es,
            "lambda": self.lambda().0,
            "aut": self.aut.to_string().parse::<u64>().unwrap_or(u64::MAX),
        });
        if !self.through.is_empty() {
            o["throughEdges"] = json!(self.through);
        }
        if let Some(m) = multiplicity {
            o["multiplicity"] = json!(format_rational(m));
        }
        o
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub(crate) enum LocalKind {
    /// [w^2g] prod S(x w) / S(w)^2
    Weighted,
    /// [w^2g] prod S(x w) / S(w)
    CompletedCycles,
}

#[derive(Default)]
pub(crate) struct LocalCache(HashMap<(Vec<u32>, u32, LocalKind), Rational>);

impl LocalCache {
    pub(crate) fn get(&mut self, weights: &[u32], g: u32, kind: LocalKind) -> Rational {
        let mut key_w = weights.to_vec();
        key_w.sort_unstable();
        let key = (key_w, g, kind);
        if let Some(v) = self.0.get(&key) {
            return v.clone();
        }
        let v = local_coefficient(weights, g, kind);
        self.0.insert(key, v.clone());
        v
    }
}

fn local_coefficient(weights: &[u32], g: u32, kind: LocalKind) -> Rational {
    let order = 2 * g as usize;
    let s = special_series(Special::S, Var::W, order);
    let si = special_series(Special::SInverse, Var::W, order);
    let mut acc = TruncSeries::one(Var::W, order);
    for &x in weights {
        acc = acc.mul(&s.scale_variable(&int(x as i64))).expect("same variable");
    }
    acc = acc.mul(&si).expect("same variable");
    if kind == LocalKind::Weighted {
        acc = acc.mul(&si).expect("same variable");
    }
    acc.coeffs()[order].clone()
}

/// Local vertex multiplicity k! A_k [w^2g] prod S(x w)/S(w)^2 with k the
/// number of adjacent edges plus 2g - 2.
pub fn vertex_multiplicity(w: &WeightFunction, genus: u32, in_weights: &[u32], out_weights: &[u32]) -> Result<Rational> {
    let ins: u32 = in_weights.iter().sum();
    let outs: u32 = out_weights.iter().sum();
    if in_weights.is_empty() || out_weights.is_empty() || ins != outs {
        return Err(Error::InvalidLocalType(format!("unbalanced vertex {in_weights:?} -> {out_weights:?}")));
    }
    let k = in_weights.len() as i64 + out_weights.len() as i64 + 2 * genus as i64 - 2;
    if k < 1 {
        return Err(Error::InvalidLocalType(format!("vertex of valence {} and genus {genus}", k + 2 - 2 * genus as i64)));
    }
    let a = w.a_coefficients(k as usize)?;
    let mut all = in_weights.to_vec();
    all.extend_from_slice(out_weights);
    Ok(factorial_q(k as u32) * &a[k as usize] * local_coefficient(&all, genus, LocalKind::Weighted))
}

struct PartialVertex {
    genus: u32,
    absorbed: Vec<(Origin, u32, u32)>,
    out: Vec<u32>,
    lambda: u32,
}

struct Sweep<'a> {
    nu: &'a Partition,
    connected: bool,
    /// Exact number of vertices, if fixed.
    vertex_count: Option<usize>,
    /// Fixed lambda per vertex, if any.
    lambda_of_vertex: Option<&'a dyn Fn(usize, u32) -> bool>,
    out: Vec<TropicalCoverP1>,
}

/// Partitions of n into exactly k parts, each at most `max`.
fn partitions_exact(n: u32, k: u32, max: u32) -> Vec<Vec<u32>> {
    if k == 0 {
        return if n == 0 { vec![Vec::new()] } else { Vec::new() };
    }
    if n < k || n > k * max {
        return Vec::new();
    }
    let mut out = Vec::new();
    for first in (1..=max.min(n - (k - 1))).rev() {
        for mut rest in partitions_exact(n - first, k - 1, first) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

impl Sweep<'_> {
    fn run(&mut self, open: BTreeMap<(Origin, u32), u32>, verts: &mut Vec<PartialVertex>, budget: u32) {
        if budget == 0 {
            if self.vertex_count.is_none_or(|n| n == verts.len()) {
                self.finish(&open, verts);
            }
            return;
        }
        if self.vertex_count.is_some_and(|n| verts.len() >= n) {
            return;
        }
        let classes: Vec<((Origin, u32), u32)> = open.iter().map(|(k, &v)| (*k, v)).collect();
        let mut choice = vec![0u32; classes.len()];
        loop {
            // next nonempty sub-multiset of the open edges
            let mut i = 0;
            while i < classes.len() && choice[i] == classes[i].1 {
                choice[i] = 0;
                i += 1;
            }
            if i == classes.len() {
                break;
            }
            choice[i] += 1;
            let n_in: u32 = choice.iter().sum();
            let w_in: u32 = classes.iter().zip(&choice).map(|(c, &k)| c.0 .1 * k).sum();
            for n_out in 1..=(budget + 2).saturating_sub(n_in) {
                let mut g = 0;
                while n_in + n_out + 2 * g <= budget + 2 {
                    let lambda = n_in + n_out + 2 * g - 2;
                    if lambda >= 1 && self.lambda_of_vertex.is_none_or(|f| f(verts.len(), lambda)) {
                        for outs in partitions_exact(w_in, n_out, w_in) {
                            let mut next = open.clone();
                            let mut absorbed = Vec::new();
                            for (c, &k) in classes.iter().zip(&choice) {
                                if k > 0 {
                                    let e = next.get_mut(&c.0).unwrap();
                                    *e -= k;
                                    if *e == 0 {
                                        next.remove(&c.0);
                                    }
                                    absorbed.push((c.0 .0, c.0 .1, k));
                                }
                            }
                            for &o in &outs {
                                *next.entry((Origin::Vertex(verts.len()), o)).or_insert(0) += 1;
                            }
                            verts.push(PartialVertex { genus: g, absorbed, out: outs, lambda });
                            self.run(next, verts, budget - lambda);
                            verts.pop();
                        }
                    }
                    g += 1;
                }
            }
        }
    }

    fn finish(&mut self, open: &BTreeMap<(Origin, u32), u32>, verts: &[PartialVertex]) {
        let mut weights: Vec<u32> = Vec::new();
        for (&(_, w), &k) in open {
            weights.extend(std::iter::repeat_n(w, k as usize));
        }
        if Partition::from_unsorted(weights) != *self.nu {
            return;
        }
        let mut aut = BigInt::one();
        let mut vertices: Vec<CoverVertex> = verts
            .iter()
            .map(|v| {
                let mut weights: Vec<u32> = v.out.clone();
                for &(_, w, k) in &v.absorbed {
                    weights.extend(std::iter::repeat_n(w, k as usize));
                }
                CoverVertex { genus: v.genus, left_ends: Vec::new(), right_ends: Vec::new(), lambda: v.lambda, weights }
            })
            .collect();
        let mut edges = Vec::new();
        for (i, v) in verts.iter().enumerate() {
            for &(origin, w, k) in &v.absorbed {
                aut *= factorial(k);
                match origin {
                    Origin::Left => vertices[i].left_ends.extend(std::iter::repeat_n(w, k as usize)),
                    Origin::Vertex(j) => edges.extend(std::iter::repeat_n((j, i, w), k as usize)),
                }
            }
        }
        let mut through = Vec::new();
        for (&(origin, w), &k) in open {
            aut *= factorial(k);
            match origin {
                Origin::Left => through.extend(std::iter::repeat_n(w, k as usize)),
                Origin::Vertex(j) => vertices[j].right_ends.extend(std::iter::repeat_n(w, k as usize)),
            }
        }
        let cover = TropicalCoverP1 { vertices, edges, through, aut };
        if !self.connected || cover.is_connected() {
            self.out.push(cover);
        }
    }
}

fn sweep(
    mu: &Partition,
    nu: &Partition,
    r: u32,
    connected: bool,
    vertex_count: Option<usize>,
    lambda_of_vertex: Option<&dyn Fn(usize, u32) -> bool>,
) -> Vec<TropicalCoverP1> {
    let mut open = BTreeMap::new();
    for &m in mu.parts() {
        *open.entry((Origin::Left, m)).or_insert(0) += 1;
    }
    let mut s = Sweep { nu, connected, vertex_count, lambda_of_vertex, out: Vec::new() };
    s.run(open, &mut Vec::new(), r);
    s.out
}

/// All covers with ends mu on the left, nu on the right and sum of lambda = r.
pub fn enumerate_covers(mu: &Partition, nu: &Partition, r: u32, connected: bool) -> Result<Vec<TropicalCoverP1>> {
    check_double_input(mu, nu, r)?;
    Ok(sweep(mu, nu, r, connected, None, None))
}

/// Sum of weight-independent cover values grouped by the vertex sequence.
pub fn lambda_breakdown(mu: &Partition, nu: &Partition, r: u32, connected: bool) -> Result<BTreeMap<Composition, Rational>> {
    let covers = enumerate_covers(mu, nu, r, connected)?;
    let mut cache = LocalCache::default();
    let mut out: BTreeMap<Composition, Rational> = BTreeMap::new();
    for c in &covers {
        *out.entry(c.lambda()).or_insert_with(Rational::zero) += c.base_value(&mut cache, LocalKind::Weighted);
    }
    Ok(out)
}

/// r!/l(lambda)! prod lambda_i! A_{lambda_i}.
pub fn lambda_prefactor(a: &[Rational], lambda: &Composition, r: u32) -> Rational {
    let mut v = factorial_q(r) / factorial_q(lambda.0.len() as u32);
    for &l in &lambda.0 {
        v *= factorial_q(l) * &a[l as usize];
    }
    v
}

pub fn evaluate_breakdown(w: &WeightFunction, breakdown: &BTreeMap<Composition, Rational>, r: u32) -> Result<Rational> {
    let a = w.a_coefficients(r as usize)?;
    Ok(breakdown.iter().map(|(lam, v)| lambda_prefactor(&a, lam, r) * v).sum())
}

pub fn cover_multiplicity(w: &WeightFunction, cover: &TropicalCoverP1) -> Result<Rational> {
    let r = cover.lambda().size();
    let a = w.a_coefficients(r as usize)?;
    let mut cache = LocalCache::default();
    Ok(lambda_prefactor(&a, &cover.lambda(), r) * cover.base_value(&mut cache, LocalKind::Weighted))
}

/// Double weighted Hurwitz number through tropical covers.
pub fn tropical_double(w: &WeightFunction, mu: &Partition, nu: &Partition, r: u32, connected: bool) -> Result<Rational> {
    w.a_coefficients(r as usize)?;
    evaluate_breakdown(w, &lambda_breakdown(mu, nu, r, connected)?, r)
}

/// Contribution of covers whose sorted vertex sequence is `lambda`.
pub fn refined_tropical(w: &WeightFunction, mu: &Partition, nu: &Partition, lambda: &Partition, connected: bool) -> Result<Rational> {
    let r = lambda.size();
    let b = lambda_breakdown(mu, nu, r, connected)?;
    let a = w.a_coefficients(r as usize)?;
    Ok(b.iter().filter(|(l, _)| &l.sorted() == lambda).map(|(l, v)| lambda_prefactor(&a, l, r) * v).sum())
}

/// Contribution of covers with exactly the vertex sequence `lambda`.
pub fn refined_tropical_ordered(w: &WeightFunction, mu: &Partition, nu: &Partition, lambda: &Composition, connected: bool) -> Result<Rational> {
    let r = lambda.size();
    let b = lambda_breakdown(mu, nu, r, connected)?;
    let a = w.a_coefficients(r as usize)?;
    Ok(b.get(lambda).map(|v| lambda_prefactor(&a, lambda, r) * v).unwrap_or_else(Rational::zero))
}

/// Completed (rcc+1)-cycle numbers: covers with s vertices, each of lambda
/// rcc, local coefficient [w^2g] prod S(x w)/S(w).
pub fn completed_cycles_double(rcc: u32, mu: &Partition, nu: &Partition, s: u32, connected: bool) -> Result<Rational> {
    if rcc == 0 {
        return Err(Error::InvalidInput("completed cycles need r >= 1".into()));
    }
    check_double_input(mu, nu, rcc * s)?;
    let fixed = move |_: usize, l: u32| l == rcc;
    let covers = sweep(mu, nu, rcc * s, connected, Some(s as usize), Some(&fixed));
    let mut cache = LocalCache::default();
    Ok(covers.iter().map(|c| c.base_value(&mut cache, LocalKind::CompletedCycles)).sum())
}

pub fn completed_cycles_covers(rcc: u32, mu: &Partition, nu: &Partition, s: u32, connected: bool) -> Result<Vec<(TropicalCoverP1, Rational)>> {
    check_double_input(mu, nu, rcc * s)?;
    let fixed = move |_: usize, l: u32| l == rcc;
    let covers = sweep(mu, nu, rcc * s, connected, Some(s as usize), Some(&fixed));
    let mut cache = LocalCache::default();
    Ok(covers
        .into_iter()
        .map(|c| {
            let m = c.base_value(&mut cache, LocalKind::CompletedCycles);
            (c, m)
        })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rat;

    fn p(v: &[u32]) -> Partition {
        Partition::new(v.to_vec()).unwrap()
    }

    #[test]
    fn two_connected_covers_for_11_11() {
        let covers = enumerate_covers(&p(&[1, 1]), &p(&[1, 1]), 2, true).unwrap();
        assert_eq!(covers.len(), 2);
        assert!(covers.iter().all(|c| c.genus() == 0));
    }

    #[test]
    fn vertexless_covers() {
        let exp = WeightFunction::Exp;
        assert_eq!(tropical_double(&exp, &p(&[3]), &p(&[3]), 0, true).unwrap(), rat(1, 3));
        assert_eq!(tropical_double(&exp, &p(&[2, 1, 1]), &p(&[2, 1, 1]), 0, false).unwrap(), rat(1, 4));
        assert_eq!(tropical_double(&exp, &p(&[1, 1]), &p(&[1, 1]), 0, true).unwrap(), int(0));
    }

    #[test]
    fn small_classical_value() {
        let exp = WeightFunction::Exp;
        assert_eq!(tropical_double(&exp, &p(&[2]), &p(&[1, 1]), 1, true).unwrap(), rat(1, 2));
        assert_eq!(tropical_double(&exp, &p(&[1, 1]), &p(&[1, 1]), 2, true).unwrap(), rat(1, 2));
    }

    #[test]
    fn vertex_multiplicity_genus_zero_trivalent() {
        let m = vertex_multiplicity(&WeightFunction::Exp, 0, &[1, 1], &[2]).unwrap();
        assert_eq!(m, int(1));
        assert!(matches!(
            vertex_multiplicity(&WeightFunction::Exp, 0, &[2], &[2]),
            Err(Error::InvalidLocalType(_))
        ));
    }

    #[test]
    fn completed_cycles_example() {
        assert_eq!(completed_cycles_double(2, &p(&[2]), &p(&[2]), 1, false).unwrap(), rat(7, 24));
    }
}
