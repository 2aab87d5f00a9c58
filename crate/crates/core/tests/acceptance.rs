//! Acceptance criteria. Every comparison is exact: the tolerance is 0.

use std::collections::BTreeMap;
use std::time::Instant;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use whurwitz::characters::{character, contents_q, f2_eval};
use whurwitz::exact::{int, rat, special_series, Special};
use whurwitz::feynman::{elliptic_qseries_pipeline, elliptic_types, feynman_qseries, refined_type_series};
use whurwitz::oracles::{
    brute_force_double, brute_force_double_classical, brute_force_elliptic, char_double_disconnected,
    connected_double,
};
use whurwitz::partition::partitions_of;
use whurwitz::poly::{degree_bound, interpolate_chamber, wall_crossing_check, BalancedPoint};
use whurwitz::quasimod::{fit_quasimodular, q_bracket};
use whurwitz::tropical::{completed_cycles_double, tropical_double};
use whurwitz::{Partition, Rational, Result, TruncSeries, Var, WeightFunction};

const TOLERANCE: &str = "exact (tolerance 0)";

fn presets() -> [WeightFunction; 3] {
    [WeightFunction::Exp, WeightFunction::strictly_monotone(), WeightFunction::monotone()]
}

/// (mu, nu, r) with |mu| = |nu| <= dmax, r <= 4 and integral genus.
fn double_cases(dmax: u32) -> Vec<(Partition, Partition, u32)> {
    let mut v = Vec::new();
    for d in 1..=dmax {
        for mu in partitions_of(d) {
            for nu in partitions_of(d) {
                for r in 0..=4u32 {
                    if (r as usize + mu.len() + nu.len()).is_multiple_of(2) {
                        v.push((mu.clone(), nu.clone(), r));
                    }
                }
            }
        }
    }
    v
}

type Verdict = Result<std::result::Result<String, String>>;
type Criterion = (&'static str, fn() -> Verdict);

fn ok(detail: String) -> Verdict {
    Ok(Ok(detail))
}

fn bad(detail: String) -> Verdict {
    Ok(Err(detail))
}

fn four_way_agreement() -> Verdict {
    let mut n = 0;
    for (mu, nu, r) in double_cases(4) {
        for w in presets() {
            for connected in [false, true] {
                let ch = if connected { connected_double(&w, &mu, &nu, r)? } else { char_double_disconnected(&w, &mu, &nu, r)? };
                let bf = brute_force_double(&w, &mu, &nu, r, connected)?;
                let tr = tropical_double(&w, &mu, &nu, r, connected)?;
                if ch != bf || ch != tr {
                    return bad(format!("{} {mu} {nu} r={r} connected={connected}: {ch} {bf} {tr}", w.name()));
                }
                n += 1;
            }
        }
    }
    ok(format!("{n} cases"))
}

fn classical_specialization() -> Verdict {
    let w = WeightFunction::Exp;
    let mut n = 0;
    for (mu, nu, r) in double_cases(4) {
        for connected in [false, true] {
            let count = brute_force_double_classical(&mu, &nu, r, connected)?;
            let ours = if connected { connected_double(&w, &mu, &nu, r)? } else { char_double_disconnected(&w, &mu, &nu, r)? };
            if count != ours || tropical_double(&w, &mu, &nu, r, connected)? != ours {
                return bad(format!("{mu} {nu} r={r} connected={connected}"));
            }
            n += 1;
        }
    }
    let half = char_double_disconnected(&w, &Partition::new(vec![2])?, &Partition::new(vec![1, 1])?, 1)?;
    if half != rat(1, 2) {
        return bad(format!("H((2),(1,1)) = {half}"));
    }
    // r = 0: only the trivial covers, H(mu, mu) = 1/z_mu.
    for d in 1..=4 {
        for mu in partitions_of(d) {
            let h = char_double_disconnected(&w, &mu, &mu, 0)?;
            if h != Rational::one() / mu.z_order_q() || tropical_double(&w, &mu, &mu, 0, false)? != h {
                return bad(format!("r=0 row at {mu}"));
            }
            n += 1;
        }
    }
    ok(format!("{n} cases, H((2),(1,1)) = 1/2"))
}

fn elliptic_triple() -> Verdict {
    let mut n = 0;
    for w in presets() {
        let (_, con) = elliptic_qseries_pipeline(&w, 2, &[], 5)?;
        let fe = feynman_qseries(&w, 2, 5)?;
        if fe != con {
            return bad(format!("{}: Feynman {fe} vs shifted-symmetric {con}", w.name()));
        }
        for d in 1..=3 {
            let b = brute_force_elliptic(&w, &[], d, 2, true)?;
            if b != con.coeffs()[d as usize] {
                return bad(format!("{} brute force at d={d}: {b}", w.name()));
            }
        }
        n += 9;
        let want2 = match w {
            WeightFunction::Exp => Some(int(2)),
            WeightFunction::ProductGtilde { .. } => Some(int(4)),
            _ => None,
        };
        if !con.coeffs()[1].is_zero() || want2.is_some_and(|x| con.coeffs()[2] != x) {
            return bad(format!("{} anchors: {con}", w.name()));
        }
    }
    ok(format!("{n} coefficients, N(2,1) = 0, N(2,2) = 2 (exp), 4 (monotone)"))
}

fn polynomiality() -> Verdict {
    let seeds = [[1, 3, -2, -2], [1, 2, 3, -6]];
    let mut n = 0;
    for g in 0..=1u32 {
        let r = 2 * g + 2;
        let bound = degree_bound(4, r).unwrap().1;
        for w in presets() {
            for s in seeds {
                let x0 = BalancedPoint::new(s.to_vec())?;
                let fit = match interpolate_chamber(&w, r, &x0, None, 5) {
                    Ok(f) => f,
                    Err(e) => return bad(format!("{} g={g} {s:?}: {e}", w.name())),
                };
                if fit.validation.len() < 5 || fit.polynomial.degree().unwrap_or(0) > bound {
                    return bad(format!("{} g={g} {s:?}: degree {:?}", w.name(), fit.polynomial.degree()));
                }
                n += 1;
            }
        }
    }
    ok(format!("{n} chamber fits, 5 held-out points each"))
}

fn wall_crossing() -> Verdict {
    let mut n = 0;
    for w in presets() {
        for lam in [vec![1, 1], vec![2]] {
            let lam = Partition::new(lam)?;
            let c = wall_crossing_check(&w, &lam, &[0, 1], &[2, -2, 3, -3], 3)?;
            if c.points.len() < 3 || !c.holds() {
                return bad(format!("{} {lam}: {}", w.name(), c.to_json()));
            }
            n += c.points.len();
        }
    }
    ok(format!("{n} test points"))
}

fn quasimodularity() -> Verdict {
    let mut n = 0;
    for w in presets() {
        let (_, con) = elliptic_qseries_pipeline(&w, 2, &[], 12)?;
        match fit_quasimodular(&con, 6, 3) {
            Ok(f) if f.validated >= 3 => n += 1,
            Ok(f) => return bad(format!("{}: {} validated", w.name(), f.validated)),
            Err(e) => return bad(format!("{}: {e}", w.name())),
        }
        for t in elliptic_types(2)? {
            let s = refined_type_series(&w, &t, 12)?;
            match fit_quasimodular(&s, t.weight_cap(), 3) {
                Ok(_) => n += 1,
                Err(e) => return bad(format!("{} type {:?}: {e}", w.name(), t.to_json())),
            }
        }
    }
    ok(format!("{n} series"))
}

fn completed_cycles() -> Verdict {
    let mut n = 0;
    for d in 1..=3 {
        for mu in partitions_of(d) {
            for nu in partitions_of(d) {
                for s in 0..=3u32 {
                    if !(s as usize + mu.len() + nu.len()).is_multiple_of(2) {
                        continue;
                    }
                    for connected in [false, true] {
                        let a = completed_cycles_double(1, &mu, &nu, s, connected)?;
                        let b = tropical_double(&WeightFunction::Exp, &mu, &nu, s, connected)?;
                        if a != b {
                            return bad(format!("{mu} {nu} s={s} connected={connected}: {a} vs {b}"));
                        }
                        n += 1;
                    }
                }
            }
        }
    }
    ok(format!("{n} cases"))
}

fn kernel() -> Verdict {
    let s = special_series(Special::S, Var::Z, 16);
    if s.log()?.exp()? != s {
        return bad("exp(log S) != S".into());
    }
    let inv = special_series(Special::SInverse, Var::Z, 16);
    if s.mul(&inv)? != TruncSeries::one(Var::Z, 16) || s.invert()? != inv {
        return bad("S * S^-1 != 1".into());
    }
    for d in 1..=6 {
        let ps = partitions_of(d);
        for a in &ps {
            for b in &ps {
                let row: BigInt = ps
                    .iter()
                    .map(|m| character(a, m).unwrap() * character(b, m).unwrap() * m.class_size())
                    .sum();
                let want = if a == b { BigInt::from((1..=d as u64).product::<u64>()) } else { BigInt::zero() };
                if row != want {
                    return bad(format!("orthogonality fails at {a}, {b}"));
                }
            }
        }
    }
    for d in 0..=10 {
        for p in partitions_of(d) {
            if f2_eval(&p) != contents_q(&p).into_iter().sum::<Rational>() {
                return bad(format!("f2 at {p}"));
            }
        }
    }
    let order = 12;
    let mut f2 = BTreeMap::new();
    let mut f2sq = BTreeMap::new();
    for d in 0..=order as u32 {
        for p in partitions_of(d) {
            let v = f2_eval(&p);
            f2sq.insert(p.clone(), &v * &v);
            f2.insert(p, v);
        }
    }
    let b = q_bracket(&f2, order)?;
    let fit = match fit_quasimodular(&b, 2, 3) {
        Ok(f) => f,
        Err(e) => return bad(format!("<f2>: {e}")),
    };
    let b2 = q_bracket(&f2sq, order)?;
    let fit2 = match fit_quasimodular(&b2, 6, 3) {
        Ok(f) => f,
        Err(e) => return bad(format!("<f2^2>: {e}")),
    };
    ok(format!(
        "<f2> fits at weight 2 ({} validated), <f2^2> at weight 6 ({} validated)",
        fit.validated, fit2.validated
    ))
}

fn main() {
    let criteria: [Criterion; 8] = [
        ("1 four-way double Hurwitz agreement", four_way_agreement),
        ("2 classical specialization", classical_specialization),
        ("3 elliptic triple agreement", elliptic_triple),
        ("4 piecewise polynomiality", polynomiality),
        ("5 wall-crossing", wall_crossing),
        ("6 quasimodularity", quasimodularity),
        ("7 completed-cycles consistency", completed_cycles),
        ("8 kernel properties", kernel),
    ];
    let total = criteria.len();
    let mut failed = Vec::new();
    for (name, f) in criteria {
        let t = Instant::now();
        let v = f();
        let secs = t.elapsed().as_secs_f64();
        match v {
            Ok(Ok(d)) => println!("PASS  criterion {name}: {d}; {TOLERANCE}; {secs:.1}s"),
            Ok(Err(d)) => {
                println!("FAIL  criterion {name}: {d}; {TOLERANCE}; {secs:.1}s");
                failed.push(name);
            }
            Err(e) => {
                println!("FAIL  criterion {name}: error {e}; {secs:.1}s");
                failed.push(name);
            }
        }
    }
    if failed.is_empty() {
        println!("acceptance: all {total} criteria passed");
    } else {
        println!("acceptance: failed {failed:?}");
        std::process::exit(1);
    }
}
