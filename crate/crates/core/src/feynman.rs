//! Elliptic tropical covers through Feynman diagrams and propagators.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde_json::json;

use crate::error::{Error, Result};
use crate::exact::{factorial, format_rational, Rational, TruncSeries, Var};
use crate::oracles::{elliptic_connected_shiftsym, elliptic_shiftsym_disconnected};
use crate::partition::{Composition, Partition};
use crate::perm::Permutation;
use crate::tropical::{lambda_prefactor, LocalCache, LocalKind};
use crate::weight::WeightFunction;

/// A multigraph with vertices in a fixed order and a genus per vertex.
/// `adjacency` is symmetric; the diagonal counts loops.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct EllipticType {
    pub adjacency: Vec<Vec<u32>>,
    pub genera: Vec<u32>,
}

impl EllipticType {
    pub fn new(adjacency: Vec<Vec<u32>>, genera: Vec<u32>) -> Result<Self> {
        let n = adjacency.len();
        if genera.len() != n || adjacency.iter().any(|row| row.len() != n) {
            return Err(Error::InvalidInput("adjacency must be square and match the genera".into()));
        }
        for i in 0..n {
            for j in 0..n {
                if adjacency[i][j] != adjacency[j][i] {
                    return Err(Error::InvalidInput("adjacency must be symmetric".into()));
                }
            }
        }
        let t = EllipticType { adjacency, genera };
        if (0..n).any(|i| t.lambda_at(i) < 1) {
            return Err(Error::IncompatibleDecoration("every vertex needs lambda >= 1".into()));
        }
        Ok(t)
    }

    pub fn n(&self) -> usize {
        self.adjacency.len()
    }

    pub fn valence(&self, i: usize) -> u32 {
        self.adjacency[i].iter().sum::<u32>() + self.adjacency[i][i]
    }

    pub fn edge_count(&self) -> u32 {
        let n = self.n();
        (0..n).map(|i| (i..n).map(|j| self.adjacency[i][j]).sum::<u32>()).sum()
    }

    fn lambda_at(&self, i: usize) -> i64 {
        self.valence(i) as i64 + 2 * self.genera[i] as i64 - 2
    }

    pub fn lambda(&self) -> Composition {
        Composition((0..self.n()).map(|i| self.lambda_at(i) as u32).collect())
    }

    /// Genus of covers of this type.
    pub fn genus(&self) -> u32 {
        self.edge_count() + 1 + self.genera.iter().sum::<u32>() - self.n() as u32
    }

    /// Weight bound 2 (sum g_i + |E|) of the generating series.
    pub fn weight_cap(&self) -> u32 {
        2 * (self.genera.iter().sum::<u32>() + self.edge_count())
    }

    /// Product of factorials of edge multiplicities, loops included.
    pub fn multiplicity_factorials(&self) -> BigInt {
        let n = self.n();
        let mut a = BigInt::one();
        for i in 0..n {
            for j in i..n {
                a *= factorial(self.adjacency[i][j]);
            }
        }
        a
    }

    /// Relabels so that vertex i moves to position p[i].
    pub fn permuted(&self, p: &Permutation) -> EllipticType {
        let n = self.n();
        let mut adj = vec![vec![0; n]; n];
        let mut gen = vec![0; n];
        for i in 0..n {
            gen[p.0[i] as usize] = self.genera[i];
            for j in 0..n {
                adj[p.0[i] as usize][p.0[j] as usize] = self.adjacency[i][j];
            }
        }
        EllipticType { adjacency: adj, genera: gen }
    }

    fn edges(&self) -> Vec<(usize, usize)> {
        let n = self.n();
        let mut e = Vec::new();
        for i in 0..n {
            for j in i..n {
                e.extend(std::iter::repeat_n((i, j), self.adjacency[i][j] as usize));
            }
        }
        e
    }

    fn is_connected(&self) -> bool {
        let n = self.n();
        let mut seen = vec![false; n];
        let mut stack = vec![0];
        seen[0] = true;
        while let Some(i) = stack.pop() {
            for j in 0..n {
                if !seen[j] && self.adjacency[i][j] > 0 {
                    seen[j] = true;
                    stack.push(j);
                }
            }
        }
        seen.into_iter().all(|s| s)
    }

    pub fn to_json(&self) -> serde_json::Value {
        json!({"adjacency": self.adjacency, "genera": self.genera, "lambda": self.lambda().0})
    }
}

/// An isomorphism class of decorated diagrams.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FeynmanDiagram {
    pub representative: EllipticType,
    pub aut: BigInt,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Direction {
    /// From the earlier vertex to the later one.
    Forward,
    /// From the later vertex around the base point to the earlier one.
    Backward,
    Loop,
}

/// One summand of a propagator: an edge of weight w crossing the base fibre
/// `winding` times, contributing q^(w winding).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct PropagatorTerm {
    pub weight: u32,
    pub winding: u32,
    pub direction: Direction,
}

impl PropagatorTerm {
    pub fn degree(&self) -> u32 {
        self.weight * self.winding
    }
}

/// Propagator summands with weight <= w_max and degree <= a_max.
pub fn propagator_terms(is_loop: bool, w_max: u32, a_max: u32) -> Vec<PropagatorTerm> {
    let mut out = Vec::new();
    for w in 1..=w_max {
        if is_loop {
            for m in 1..=a_max / w {
                out.push(PropagatorTerm { weight: w, winding: m, direction: Direction::Loop });
            }
        } else {
            for m in 0..=a_max / w {
                out.push(PropagatorTerm { weight: w, winding: m, direction: Direction::Forward });
                if m >= 1 {
                    out.push(PropagatorTerm { weight: w, winding: m, direction: Direction::Backward });
                }
            }
        }
    }
    out
}

/// A cover of the tropical elliptic curve with edge data per labeled edge.
#[derive(Clone, Debug)]
pub struct EllipticCover {
    pub edges: Vec<(usize, usize, PropagatorTerm)>,
    pub degree: u32,
    /// prod of local coefficients and edge weights, before weight factors.
    pub value: Rational,
}

impl EllipticCover {
    pub fn to_json(&self, factor: &Rational) -> serde_json::Value {
        let es: Vec<_> = self
            .edges
            .iter()
            .map(|(i, j, t)| {
                let dir = match t.direction {
                    Direction::Forward => "forward",
                    Direction::Backward => "backward",
                    Direction::Loop => "loop",
                };
                json!({"from": i + 1, "to": j + 1, "weight": t.weight, "winding": t.winding, "direction": dir})
            })
            .collect();
        json!({"edges": es, "degree": self.degree, "multiplicity": format_rational(&(&self.value * factor))})
    }
}

struct IntegralSweep<'a> {
    t: &'a EllipticType,
    edges: Vec<(usize, usize)>,
    terms: Vec<Vec<PropagatorTerm>>,
    dmax: u32,
    cache: LocalCache,
    keep_covers: bool,
    coeffs: Vec<Rational>,
    covers: Vec<EllipticCover>,
}

impl IntegralSweep<'_> {
    fn run(&mut self, k: usize, deg: u32, flow: &mut Vec<i64>, chosen: &mut Vec<PropagatorTerm>) {
        if k == self.edges.len() {
            if flow.iter().any(|&f| f != 0) {
                return;
            }
            let n = self.t.n();
            let mut incident: Vec<Vec<u32>> = vec![Vec::new(); n];
            let mut wprod = BigInt::one();
            for (&(i, j), t) in self.edges.iter().zip(chosen.iter()) {
                incident[i].push(t.weight);
                incident[j].push(t.weight);
                wprod *= t.weight;
            }
            let mut v = Rational::from_integer(wprod);
            for (i, ws) in incident.iter().enumerate() {
                v *= self.cache.get(ws, self.t.genera[i], LocalKind::Weighted);
                if v.is_zero() {
                    return;
                }
            }
            self.coeffs[deg as usize] += &v;
            if self.keep_covers {
                let edges = self.edges.iter().zip(chosen.iter()).map(|(&(i, j), &t)| (i, j, t)).collect();
                self.covers.push(EllipticCover { edges, degree: deg, value: v });
            }
            return;
        }
        let (i, j) = self.edges[k];
        for idx in 0..self.terms[k].len() {
            let t = self.terms[k][idx];
            if deg + t.degree() > self.dmax {
                continue;
            }
            let w = t.weight as i64;
            match t.direction {
                Direction::Forward => {
                    flow[i] += w;
                    flow[j] -= w;
                }
                Direction::Backward => {
                    flow[j] += w;
                    flow[i] -= w;
                }
                Direction::Loop => {}
            }
            chosen.push(t);
            self.run(k + 1, deg + t.degree(), flow, chosen);
            chosen.pop();
            match t.direction {
                Direction::Forward => {
                    flow[i] -= w;
                    flow[j] += w;
                }
                Direction::Backward => {
                    flow[j] -= w;
                    flow[i] += w;
                }
                Direction::Loop => {}
            }
        }
    }
}

fn integrate(t: &EllipticType, dmax: u32, keep_covers: bool) -> (TruncSeries, Vec<EllipticCover>) {
    let edges = t.edges();
    let terms = edges.iter().map(|&(i, j)| propagator_terms(i == j, dmax, dmax)).collect();
    let mut s = IntegralSweep {
        t,
        edges,
        terms,
        dmax,
        cache: LocalCache::default(),
        keep_covers,
        coeffs: vec![Rational::zero(); dmax as usize + 1],
        covers: Vec::new(),
    };
    s.run(0, 0, &mut vec![0; t.n()], &mut Vec::new());
    (TruncSeries::new(Var::Q, s.coeffs), s.covers)
}

/// Feynman integral of a type whose vertex order is the given one: the
/// constant term in the x's and the z_i^{2 g_i} coefficient of the product of
/// propagators and 1/S(z_i)^2, up to q^dmax.
pub fn feynman_integral(t: &EllipticType, dmax: u32) -> TruncSeries {
    integrate(t, dmax, false).0
}

/// (2g-2)!/l! prod lambda_i! A_{lambda_i}.
fn type_prefactor(w: &WeightFunction, t: &EllipticType) -> Result<Rational> {
    let lam = t.lambda();
    let r = lam.size();
    let a = w.a_coefficients(r as usize)?;
    Ok(lambda_prefactor(&a, &lam, r))
}

/// Contribution of one ordered combinatorial type with fixed vertex genera.
pub fn refined_type_series(w: &WeightFunction, t: &EllipticType, dmax: u32) -> Result<TruncSeries> {
    let f = type_prefactor(w, t)? / Rational::from_integer(t.multiplicity_factorials());
    Ok(feynman_integral(t, dmax).scale(&f))
}

/// Covers of one ordered type with their multiplicities.
pub fn type_covers(w: &WeightFunction, t: &EllipticType, dmax: u32) -> Result<(Rational, Vec<EllipticCover>)> {
    let f = type_prefactor(w, t)? / Rational::from_integer(t.multiplicity_factorials());
    Ok((f, integrate(t, dmax, true).1))
}

fn multigraphs(n: usize, e: u32) -> Vec<Vec<Vec<u32>>> {
    let slots: Vec<(usize, usize)> = (0..n).flat_map(|i| (i..n).map(move |j| (i, j))).collect();
    let mut out = Vec::new();
    fn rec(slots: &[(usize, usize)], k: usize, left: u32, adj: &mut Vec<Vec<u32>>, out: &mut Vec<Vec<Vec<u32>>>) {
        if k == slots.len() {
            if left == 0 {
                out.push(adj.clone());
            }
            return;
        }
        let (i, j) = slots[k];
        for m in 0..=left {
            adj[i][j] = m;
            adj[j][i] = m;
            rec(slots, k + 1, left - m, adj, out);
        }
        adj[i][j] = 0;
        adj[j][i] = 0;
    }
    rec(&slots, 0, e, &mut vec![vec![0; n]; n], &mut out);
    out
}

fn genus_assignments(n: usize, total: u32) -> Vec<Vec<u32>> {
    if n == 0 {
        return if total == 0 { vec![Vec::new()] } else { Vec::new() };
    }
    let mut out = Vec::new();
    for first in 0..=total {
        for mut rest in genus_assignments(n - 1, total - first) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

fn check_genus(g: u32) -> Result<()> {
    if g < 2 {
        return Err(Error::InvalidInput(format!("Feynman expansion needs g >= 2, got {g}")));
    }
    Ok(())
}

/// All ordered types of genus g: connected multigraphs on at most 2g-2
/// vertices with vertex genera, each vertex of lambda >= 1 and valence >= 2.
pub fn elliptic_types(g: u32) -> Result<Vec<EllipticType>> {
    check_genus(g)?;
    let mut out = Vec::new();
    for n in 1..=(2 * g - 2) as usize {
        for e in (n as u32).saturating_sub(1)..=g + n as u32 - 1 {
            let b1 = e + 1 - n as u32;
            if b1 > g {
                continue;
            }
            for adj in multigraphs(n, e) {
                let t0 = EllipticType { adjacency: adj, genera: vec![0; n] };
                if !t0.is_connected() || (0..n).any(|i| t0.valence(i) < 2) {
                    continue;
                }
                for gen in genus_assignments(n, g - b1) {
                    let t = EllipticType { adjacency: t0.adjacency.clone(), genera: gen };
                    if (0..n).all(|i| t.lambda_at(i) >= 1) {
                        out.push(t);
                    }
                }
            }
        }
    }
    Ok(out)
}

/// Isomorphism classes of decorated diagrams with |Aut(Gamma, lambda)|.
pub fn feynman_diagrams(g: u32) -> Result<Vec<FeynmanDiagram>> {
    let mut classes: BTreeMap<EllipticType, EllipticType> = BTreeMap::new();
    for t in elliptic_types(g)? {
        let canon = Permutation::all(t.n()).iter().map(|p| t.permuted(p)).min().unwrap();
        classes.entry(canon).or_insert(t);
    }
    Ok(classes
        .into_values()
        .map(|t| {
            let stab = Permutation::all(t.n()).iter().filter(|p| t.permuted(p) == t).count();
            let aut = BigInt::from(stab) * t.multiplicity_factorials();
            FeynmanDiagram { representative: t, aut }
        })
        .collect())
}

/// Sum over vertex orders of the Feynman integral.
pub fn diagram_integral(d: &FeynmanDiagram, dmax: u32) -> TruncSeries {
    let mut acc = TruncSeries::zero(Var::Q, dmax as usize);
    for p in Permutation::all(d.representative.n()) {
        acc = acc.add(&feynman_integral(&d.representative.permuted(&p), dmax)).expect("same variable");
    }
    acc
}

/// Per-diagram contributions prod lambda_i! A_{lambda_i} (2g-2)!/l! I / |Aut|.
pub fn feynman_per_diagram(w: &WeightFunction, g: u32, dmax: u32) -> Result<Vec<(FeynmanDiagram, TruncSeries)>> {
    let mut out = Vec::new();
    for d in feynman_diagrams(g)? {
        let f = type_prefactor(w, &d.representative)? / Rational::from_integer(d.aut.clone());
        let s = diagram_integral(&d, dmax).scale(&f);
        out.push((d, s));
    }
    Ok(out)
}

/// Connected elliptic series sum_d N_{g,d} q^d from Feynman diagrams.
pub fn feynman_qseries(w: &WeightFunction, g: u32, dmax: u32) -> Result<TruncSeries> {
    let mut acc = TruncSeries::zero(Var::Q, dmax as usize);
    for (_, s) in feynman_per_diagram(w, g, dmax)? {
        acc = acc.add(&s)?;
    }
    Ok(acc)
}

/// Same series summed over ordered types.
pub fn types_qseries(w: &WeightFunction, g: u32, dmax: u32) -> Result<TruncSeries> {
    let mut acc = TruncSeries::zero(Var::Q, dmax as usize);
    for t in elliptic_types(g)? {
        acc = acc.add(&refined_type_series(w, &t, dmax)?)?;
    }
    Ok(acc)
}

/// Disconnected and connected series from the shifted-symmetric formula.
pub fn elliptic_qseries_pipeline(
    w: &WeightFunction,
    g: u32,
    profiles: &[Partition],
    dmax: u32,
) -> Result<(TruncSeries, TruncSeries)> {
    let mut dis = Vec::new();
    let mut con = Vec::new();
    for d in 0..=dmax {
        dis.push(elliptic_shiftsym_disconnected(w, profiles, g, d)?);
        con.push(if d == 0 { Rational::zero() } else { elliptic_connected_shiftsym(w, profiles, g, d)? });
    }
    Ok((TruncSeries::new(Var::Q, dis), TruncSeries::new(Var::Q, con)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::int;

    #[test]
    fn genus_two_types() {
        let types = elliptic_types(2).unwrap();
        assert_eq!(types.len(), 4);
        let mut caps: Vec<u32> = types.iter().map(EllipticType::weight_cap).collect();
        caps.sort_unstable();
        assert_eq!(caps, vec![4, 4, 6, 6]);
    }

    #[test]
    fn genus_two_automorphisms() {
        let mut auts: Vec<BigInt> = feynman_diagrams(2).unwrap().into_iter().map(|d| d.aut).collect();
        auts.sort();
        assert_eq!(auts, vec![BigInt::from(1), BigInt::from(2), BigInt::from(2), BigInt::from(12)]);
    }

    #[test]
    fn theta_integral_at_degree_two() {
        let theta = EllipticType::new(vec![vec![0, 3], vec![3, 0]], vec![0, 0]).unwrap();
        assert_eq!(feynman_integral(&theta, 2).coeffs()[2], int(12));
    }

    #[test]
    fn anchors() {
        let s = feynman_qseries(&WeightFunction::Exp, 2, 2).unwrap();
        assert_eq!(s.coeffs(), &[int(0), int(0), int(2)]);
        let s = feynman_qseries(&WeightFunction::monotone(), 2, 2).unwrap();
        assert_eq!(s.coeffs(), &[int(0), int(0), int(4)]);
    }
}
