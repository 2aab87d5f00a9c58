//! Reference computations of double and elliptic weighted Hurwitz numbers:
//! character sums, brute-force factorization counts and shifted-symmetric
//! expressions.

use std::collections::{BTreeMap, HashMap};

use num_bigint::BigInt;
use num_traits::{One, Zero};
use rayon::prelude::*;

use crate::characters::{central_character, character_q, contents_q, monomial_eval};
use crate::error::{Error, Result};
use crate::exact::{factorial_q, Rational};
use crate::explog::{GradedKey, GradedLog};
use crate::partition::{partitions_of, Partition};
use crate::perm::{Orbits, Permutation};
use crate::weight::WeightFunction;

pub const MAX_BRUTE_DOUBLE_DEGREE: u32 = 6;
pub const MAX_BRUTE_ELLIPTIC_DEGREE: u32 = 4;
pub const MAX_BRUTE_ELLIPTIC_BRANCH: u32 = 4;

pub fn check_double_input(mu: &Partition, nu: &Partition, r: u32) -> Result<()> {
    if mu.size() != nu.size() {
        return Err(Error::SizeMismatch(format!("|{mu}| != |{nu}|")));
    }
    if mu.size() == 0 {
        return Err(Error::SizeMismatch("degree must be positive".into()));
    }
    if !(r as usize + mu.len() + nu.len()).is_multiple_of(2) {
        return Err(Error::ParityMismatch(format!(
            "r = {r} with l(mu) + l(nu) = {} gives a half-integer genus",
            mu.len() + nu.len()
        )));
    }
    Ok(())
}

/// Genus of connected covers with these data, if it is a nonnegative integer.
pub fn double_genus(mu: &Partition, nu: &Partition, r: u32) -> Option<u32> {
    let twice = r as i64 + 2 - (mu.len() + nu.len()) as i64;
    (twice >= 0 && twice % 2 == 0).then_some((twice / 2) as u32)
}

/// Disconnected double weighted Hurwitz number from the character formula.
pub fn char_double_disconnected(w: &WeightFunction, mu: &Partition, nu: &Partition, r: u32) -> Result<Rational> {
    check_double_input(mu, nu, r)?;
    char_double_raw(w, mu, nu, r)
}

fn char_double_raw(w: &WeightFunction, mu: &Partition, nu: &Partition, r: u32) -> Result<Rational> {
    let mut total = Rational::zero();
    for lam in partitions_of(mu.size()) {
        let s = w.content_product_series(&lam, r as usize)?;
        let c = s.coeff(r as usize)?;
        if c.is_zero() {
            continue;
        }
        total += c * character_q(&lam, mu)? * character_q(&lam, nu)?;
    }
    Ok(total * factorial_q(r) / (mu.z_order_q() * nu.z_order_q()))
}

fn double_key_admissible(k: &GradedKey) -> bool {
    k.parts[0].size() == k.d
        && k.parts[1].size() == k.d
        && (k.r as usize + k.parts[0].len() + k.parts[1].len()).is_multiple_of(2)
}

/// Connected numbers from the character oracle through the graded logarithm.
pub fn connected_double(w: &WeightFunction, mu: &Partition, nu: &Partition, r: u32) -> Result<Rational> {
    check_double_input(mu, nu, r)?;
    let mut log = GradedLog::new(
        |k: &GradedKey| Ok(char_double_raw(w, &k.parts[0], &k.parts[1], k.r)? / factorial_q(k.r)),
        double_key_admissible,
    );
    let c = log.connected(&GradedKey::new(mu.size(), r, vec![mu.clone(), nu.clone()]))?;
    Ok(c * factorial_q(r))
}

type Counts = HashMap<(Permutation, Orbits, Partition), u128>;

/// Extends products by r transpositions (a b), a < b. With `monotone` the
/// b's weakly increase and the run lengths of equal b are recorded.
fn multiply_transpositions(
    start: HashMap<(Permutation, Orbits), u128>,
    d: usize,
    r: u32,
    monotone: bool,
    track_orbits: bool,
) -> Counts {
    // (perm, orbits, last b, current run, finished runs)
    type State = (Permutation, Orbits, u8, u8, Vec<u32>);
    let mut states: HashMap<State, u128> =
        start.into_iter().map(|((p, o), c)| ((p, o, 0u8, 0u8, Vec::new()), c)).collect();
    for _ in 0..r {
        let mut next: HashMap<State, u128> = HashMap::new();
        for ((p, o, last, run, done), c) in states {
            let b_min = if monotone { last.max(1) } else { 1 };
            for b in b_min as usize..d {
                for a in 0..b {
                    let np = p.times_transposition(a, b);
                    let no = if track_orbits { o.join(a, b) } else { o.clone() };
                    let key = if !monotone {
                        (np, no, 0, 0, Vec::new())
                    } else if b as u8 == last {
                        (np, no, last, run + 1, done.clone())
                    } else {
                        let mut nd = done.clone();
                        if run > 0 {
                            nd.push(run as u32);
                        }
                        (np, no, b as u8, 1, nd)
                    };
                    *next.entry(key).or_insert(0) += c;
                }
            }
        }
        states = next;
    }
    let mut out: Counts = HashMap::new();
    for ((p, o, _, run, mut done), c) in states {
        if run > 0 {
            done.push(run as u32);
        }
        *out.entry((p, o, Partition::from_unsorted(done))).or_insert(0) += c;
    }
    out
}

fn double_counts(mu: &Partition, nu: &Partition, r: u32, connected: bool, monotone: bool) -> Result<BTreeMap<Partition, u128>> {
    check_double_input(mu, nu, r)?;
    let d = mu.size();
    if d > MAX_BRUTE_DOUBLE_DEGREE {
        return Err(Error::DegreeTooLarge(format!("brute force needs d <= {MAX_BRUTE_DOUBLE_DEGREE}, got {d}")));
    }
    let mut start = HashMap::new();
    for s in Permutation::of_class(mu) {
        let o = if connected { Orbits::of_permutation(&s) } else { Orbits::discrete(0) };
        *start.entry((s, o)).or_insert(0u128) += 1;
    }
    let mut out = BTreeMap::new();
    for ((p, o, sig), c) in multiply_transpositions(start, d as usize, r, monotone, connected) {
        if &p.cycle_type() == nu && (!connected || o.is_transitive()) {
            *out.entry(sig).or_insert(0) += c;
        }
    }
    Ok(out)
}

/// Number of tuples (sigma_1, tau_1..tau_r) with sigma_1 of type mu, tau_i
/// transpositions and the product of type nu.
pub fn classical_factorization_count(mu: &Partition, nu: &Partition, r: u32, connected: bool) -> Result<BigInt> {
    let c = double_counts(mu, nu, r, connected, false)?;
    Ok(c.values().map(|&x| BigInt::from(x)).sum())
}

pub fn brute_force_double_classical(mu: &Partition, nu: &Partition, r: u32, connected: bool) -> Result<Rational> {
    let n = classical_factorization_count(mu, nu, r, connected)?;
    Ok(Rational::from_integer(n) / factorial_q(mu.size()))
}

/// Monotone factorization counts m^lambda keyed by signature.
pub fn signature_counts(mu: &Partition, nu: &Partition, r: u32, connected: bool) -> Result<BTreeMap<Partition, BigInt>> {
    Ok(double_counts(mu, nu, r, connected, true)?.into_iter().map(|(k, v)| (k, BigInt::from(v))).collect())
}

fn weigh_signatures(w: &WeightFunction, counts: &BTreeMap<Partition, BigInt>, r: u32, d: u32) -> Result<Rational> {
    let mut total = Rational::zero();
    for (lam, m) in counts {
        total += w.g_lambda_weight(lam)? * Rational::from_integer(m.clone());
    }
    Ok(total * factorial_q(r) / factorial_q(d))
}

/// r!/d! sum_lambda G_lambda m^lambda.
pub fn brute_force_double(w: &WeightFunction, mu: &Partition, nu: &Partition, r: u32, connected: bool) -> Result<Rational> {
    w.g_lambda_weight(&Partition::empty())?;
    let counts = signature_counts(mu, nu, r, connected)?;
    weigh_signatures(w, &counts, r, mu.size())
}

fn commutator_table(d: usize) -> HashMap<Permutation, HashMap<Orbits, u128>> {
    let all = Permutation::all(d);
    let mut t: HashMap<Permutation, HashMap<Orbits, u128>> = HashMap::new();
    for a in &all {
        let oa = Orbits::of_permutation(a);
        let ai = a.inverse();
        for b in &all {
            let c = a.compose(b).compose(&ai).compose(&b.inverse());
            let o = oa.join_all(&Orbits::of_permutation(b));
            *t.entry(c).or_default().entry(o).or_insert(0) += 1;
        }
    }
    t
}

/// Elliptic monotone counts keyed by signature: tuples of sigma_i in the padded
/// classes, monotone tau's and a pair (alpha, beta) whose commutator equals the
/// product.
pub fn elliptic_signature_counts(profiles: &[Partition], d: u32, r: u32, connected: bool) -> Result<BTreeMap<Partition, BigInt>> {
    if d > MAX_BRUTE_ELLIPTIC_DEGREE || r > MAX_BRUTE_ELLIPTIC_BRANCH {
        return Err(Error::DegreeTooLarge(format!(
            "elliptic brute force needs d <= {MAX_BRUTE_ELLIPTIC_DEGREE} and r <= {MAX_BRUTE_ELLIPTIC_BRANCH}"
        )));
    }
    if d == 0 {
        return Err(Error::SizeMismatch("degree must be positive".into()));
    }
    if profiles.iter().any(|p| p.size() > d) {
        return Ok(BTreeMap::new());
    }
    let n = d as usize;
    let mut states: HashMap<(Permutation, Orbits), u128> = HashMap::new();
    states.insert((Permutation::identity(n), Orbits::discrete(if connected { n } else { 0 })), 1);
    for prof in profiles {
        let class = Permutation::of_class(&prof.padded(d)?);
        let mut next = HashMap::new();
        for ((p, o), c) in &states {
            for s in &class {
                let no = if connected { o.join_all(&Orbits::of_permutation(s)) } else { o.clone() };
                *next.entry((p.compose(s), no)).or_insert(0u128) += c;
            }
        }
        states = next;
    }
    let table = commutator_table(n);
    let mut out: BTreeMap<Partition, BigInt> = BTreeMap::new();
    for ((p, o, sig), c) in multiply_transpositions(states, n, r, true, connected) {
        let Some(pairs) = table.get(&p) else { continue };
        let mut m = 0u128;
        for (po, k) in pairs {
            if !connected || o.join_all(po).is_transitive() {
                m += k;
            }
        }
        if m > 0 {
            *out.entry(sig).or_insert_with(BigInt::zero) += BigInt::from(c * m);
        }
    }
    Ok(out)
}

pub fn brute_force_elliptic(w: &WeightFunction, profiles: &[Partition], d: u32, r: u32, connected: bool) -> Result<Rational> {
    w.g_lambda_weight(&Partition::empty())?;
    let counts = elliptic_signature_counts(profiles, d, r, connected)?;
    weigh_signatures(w, &counts, r, d)
}

/// Number of simple branch points 2g - 2 + sum(|mu| - l(mu)).
pub fn elliptic_branch_count(profiles: &[Partition], g: u32) -> Option<u32> {
    let r = 2 * g as i64 - 2 + profiles.iter().map(|p| p.size() as i64 - p.len() as i64).sum::<i64>();
    (r >= 0).then_some(r as u32)
}

/// r! sum_gamma sum_{lambda |- r} G_lambda prod f_{mu^i}(gamma) m_lambda(cont gamma).
pub fn elliptic_disconnected_by_r(w: &WeightFunction, profiles: &[Partition], d: u32, r: u32) -> Result<Rational> {
    if d == 0 {
        let trivial = r == 0 && profiles.iter().all(|p| p.stripped().is_empty());
        return Ok(if trivial { Rational::one() } else { Rational::zero() });
    }
    if profiles.iter().any(|p| p.size() > d) {
        return Ok(Rational::zero());
    }
    let lambdas: Vec<(Partition, Rational)> = partitions_of(r)
        .into_iter()
        .map(|l| {
            let g = w.g_lambda_weight(&l)?;
            Ok((l, g))
        })
        .collect::<Result<_>>()?;
    let gammas = partitions_of(d);
    let terms: Vec<Rational> = gammas
        .par_iter()
        .map(|gamma| -> Result<Rational> {
            let mut f = Rational::one();
            for p in profiles {
                f *= central_character(p, gamma)?;
                if f.is_zero() {
                    return Ok(f);
                }
            }
            let cont = contents_q(gamma);
            let s: Rational = lambdas.iter().map(|(l, g)| g * monomial_eval(l, &cont)).sum();
            Ok(f * s)
        })
        .collect::<Result<_>>()?;
    Ok(terms.into_iter().sum::<Rational>() * factorial_q(r))
}

pub fn elliptic_shiftsym_disconnected(w: &WeightFunction, profiles: &[Partition], g: u32, d: u32) -> Result<Rational> {
    match elliptic_branch_count(profiles, g) {
        Some(r) => elliptic_disconnected_by_r(w, profiles, d, r),
        None => Ok(Rational::zero()),
    }
}

fn elliptic_key_admissible(k: &GradedKey) -> bool {
    k.parts.iter().all(|p| p.size() <= k.d)
}

/// Connected elliptic numbers by the graded logarithm of the shifted-symmetric
/// disconnected numbers, splitting profiles into sub-multisets.
pub fn elliptic_connected_shiftsym(w: &WeightFunction, profiles: &[Partition], g: u32, d: u32) -> Result<Rational> {
    let Some(r) = elliptic_branch_count(profiles, g) else { return Ok(Rational::zero()) };
    let parts: Vec<Partition> = profiles.iter().map(Partition::stripped).collect();
    let mut log = GradedLog::new(
        |k: &GradedKey| Ok(elliptic_disconnected_by_r(w, &k.parts, k.d, k.r)? / factorial_q(k.r)),
        elliptic_key_admissible,
    );
    Ok(log.connected(&GradedKey::new(d, r, parts))? * factorial_q(r))
}

/// Connected table from a disconnected table N(d, r) given on the full
/// rectangle d <= dmax, r <= rmax (with the d = 0 row).
pub fn elliptic_connected_from_disconnected(
    series2d: &BTreeMap<(u32, u32), Rational>,
    dmax: u32,
    rmax: u32,
) -> Result<BTreeMap<(u32, u32), Rational>> {
    for d in 0..=dmax {
        for r in 0..=rmax {
            if !series2d.contains_key(&(d, r)) {
                return Err(Error::IncompleteInput(format!("missing N(d={d}, r={r})")));
            }
        }
    }
    let mut log = GradedLog::new(|k: &GradedKey| Ok(series2d[&(k.d, k.r)].clone() / factorial_q(k.r)), |_| true);
    let mut out = BTreeMap::new();
    for d in 0..=dmax {
        for r in 0..=rmax {
            let c = if d == 0 { Rational::zero() } else { log.connected(&GradedKey::new(d, r, vec![]))? };
            out.insert((d, r), c * factorial_q(r));
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{int, rat};

    fn p(v: &[u32]) -> Partition {
        Partition::new(v.to_vec()).unwrap()
    }

    #[test]
    fn classical_small_values() {
        let exp = WeightFunction::Exp;
        assert_eq!(char_double_disconnected(&exp, &p(&[2]), &p(&[1, 1]), 1).unwrap(), rat(1, 2));
        assert_eq!(brute_force_double_classical(&p(&[2]), &p(&[1, 1]), 1, true).unwrap(), rat(1, 2));
        assert_eq!(char_double_disconnected(&exp, &p(&[1, 1]), &p(&[1, 1]), 0).unwrap(), rat(1, 2));
    }

    #[test]
    fn parity_and_size_errors() {
        let exp = WeightFunction::Exp;
        assert!(matches!(char_double_disconnected(&exp, &p(&[2]), &p(&[1, 1]), 2), Err(Error::ParityMismatch(_))));
        assert!(matches!(char_double_disconnected(&exp, &p(&[2]), &p(&[1, 1, 1]), 1), Err(Error::SizeMismatch(_))));
        assert!(matches!(
            brute_force_double(&exp, &p(&[7]), &p(&[7]), 0, false),
            Err(Error::DegreeTooLarge(_))
        ));
    }

    #[test]
    fn exp_signature_sum_recovers_classical() {
        let exp = WeightFunction::Exp;
        for (mu, nu, r) in [(p(&[3]), p(&[1, 1, 1]), 2), (p(&[2, 2]), p(&[3, 1]), 2), (p(&[2, 1]), p(&[2, 1]), 4)] {
            for connected in [false, true] {
                assert_eq!(
                    brute_force_double(&exp, &mu, &nu, r, connected).unwrap(),
                    brute_force_double_classical(&mu, &nu, r, connected).unwrap()
                );
            }
        }
    }

    #[test]
    fn connected_log_matches_transitive_count() {
        for w in [WeightFunction::Exp, WeightFunction::monotone(), WeightFunction::strictly_monotone()] {
            for (mu, nu, r) in [(p(&[1, 1]), p(&[1, 1]), 2), (p(&[2, 1]), p(&[1, 1, 1]), 3), (p(&[2, 2]), p(&[2, 1, 1]), 3)] {
                assert_eq!(
                    connected_double(&w, &mu, &nu, r).unwrap(),
                    brute_force_double(&w, &mu, &nu, r, true).unwrap(),
                    "{} {mu} {nu} {r}",
                    w.name()
                );
            }
        }
    }

    #[test]
    fn elliptic_anchors() {
        let exp = WeightFunction::Exp;
        let mono = WeightFunction::monotone();
        assert_eq!(elliptic_connected_shiftsym(&exp, &[], 2, 2).unwrap(), int(2));
        assert_eq!(elliptic_connected_shiftsym(&mono, &[], 2, 2).unwrap(), int(4));
        assert_eq!(elliptic_connected_shiftsym(&exp, &[], 2, 1).unwrap(), int(0));
        assert_eq!(elliptic_shiftsym_disconnected(&exp, &[], 2, 2).unwrap(), int(2));
        assert_eq!(elliptic_shiftsym_disconnected(&mono, &[], 2, 2).unwrap(), int(4));
    }

    #[test]
    fn elliptic_brute_force_agrees() {
        for w in [WeightFunction::Exp, WeightFunction::monotone(), WeightFunction::strictly_monotone()] {
            for d in 1..=3 {
                assert_eq!(
                    brute_force_elliptic(&w, &[], d, 2, true).unwrap(),
                    elliptic_connected_shiftsym(&w, &[], 2, d).unwrap()
                );
                assert_eq!(
                    brute_force_elliptic(&w, &[], d, 2, false).unwrap(),
                    elliptic_shiftsym_disconnected(&w, &[], 2, d).unwrap()
                );
            }
        }
    }

    #[test]
    fn elliptic_profiles_brute_force_agrees() {
        let w = WeightFunction::monotone();
        for prof in [vec![p(&[2])], vec![p(&[3])], vec![p(&[2]), p(&[2])]] {
            for d in 2..=4 {
                let r = elliptic_branch_count(&prof, 1).unwrap();
                if r > 4 {
                    continue;
                }
                assert_eq!(
                    brute_force_elliptic(&w, &prof, d, r, true).unwrap(),
                    elliptic_connected_shiftsym(&w, &prof, 1, d).unwrap(),
                    "{prof:?} d={d}"
                );
                assert_eq!(
                    brute_force_elliptic(&w, &prof, d, r, false).unwrap(),
                    elliptic_shiftsym_disconnected(&w, &prof, 1, d).unwrap()
                );
            }
        }
    }

    #[test]
    fn genus_zero_rows() {
        let w = WeightFunction::Exp;
        let mut t = BTreeMap::new();
        for d in 0..=5 {
            for r in 0..=2 {
                t.insert((d, r), elliptic_disconnected_by_r(&w, &[], d, r).unwrap());
            }
        }
        let c = elliptic_connected_from_disconnected(&t, 5, 2).unwrap();
        let sigma = [1, 3, 4, 7, 6];
        for d in 1..=5u32 {
            assert_eq!(c[&(d, 0)], Rational::new(sigma[d as usize - 1].into(), d.into()));
        }
        t.remove(&(3, 1));
        assert!(matches!(elliptic_connected_from_disconnected(&t, 5, 2), Err(Error::IncompleteInput(_))));
    }
}
