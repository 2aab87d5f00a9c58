use clap::{Args, ValueEnum};
use rayon::prelude::*;
use serde_json::json;
use whurwitz::exact::{factorial_q, int};
use whurwitz::feynman::{elliptic_qseries_pipeline, feynman_qseries, types_qseries};
use whurwitz::oracles::{brute_force_elliptic, classical_factorization_count};
use whurwitz::partition::partitions_of;
use whurwitz::quasimod::fit_quasimodular;
use whurwitz::tropical::{completed_cycles_double, tropical_double};
use whurwitz::{Error, Partition, Result, WeightFunction};

use crate::commands::{double_value, DoubleRoute};
use crate::output::{Output, Table};

#[derive(Clone, Copy, ValueEnum, PartialEq, Eq)]
pub enum Level {
    Quick,
    Full,
}

#[derive(Args)]
pub struct SelftestArgs {
    #[arg(long, value_enum, default_value_t = Level::Quick)]
    level: Level,
}

struct Check {
    name: &'static str,
    cases: usize,
    failures: Vec<String>,
}

fn presets() -> [WeightFunction; 3] {
    [WeightFunction::Exp, WeightFunction::strictly_monotone(), WeightFunction::monotone()]
}

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

fn four_way(dmax: u32) -> Result<Check> {
    let cases = double_cases(dmax);
    let routes = [DoubleRoute::Character, DoubleRoute::Brute, DoubleRoute::Tropical];
    let failures: Vec<String> = cases
        .par_iter()
        .map(|(mu, nu, r)| -> Result<Vec<String>> {
            let mut bad = Vec::new();
            for w in presets() {
                for connected in [false, true] {
                    let vals = routes
                        .iter()
                        .map(|&rt| double_value(&w, mu, nu, *r, connected, rt))
                        .collect::<Result<Vec<_>>>()?;
                    if vals.iter().any(|v| v != &vals[0]) {
                        bad.push(format!("{} {mu} {nu} r={r} connected={connected}", w.name()));
                    }
                }
            }
            Ok(bad)
        })
        .collect::<Result<Vec<_>>>()?
        .into_iter()
        .flatten()
        .collect();
    Ok(Check { name: "double four-way agreement", cases: cases.len() * 6, failures })
}

fn classical(dmax: u32) -> Result<Check> {
    let cases = double_cases(dmax);
    let mut failures = Vec::new();
    for (mu, nu, r) in &cases {
        for connected in [false, true] {
            let count = classical_factorization_count(mu, nu, *r, connected)?;
            let expect = whurwitz::Rational::from_integer(count) / factorial_q(mu.size());
            if tropical_double(&WeightFunction::Exp, mu, nu, *r, connected)? != expect {
                failures.push(format!("{mu} {nu} r={r} connected={connected}"));
            }
        }
    }
    let half = double_value(
        &WeightFunction::Exp,
        &Partition::new(vec![2])?,
        &Partition::new(vec![1, 1])?,
        1,
        false,
        DoubleRoute::Character,
    )?;
    if half != whurwitz::exact::rat(1, 2) {
        failures.push("H((2),(1,1)) with r=1 is not 1/2".into());
    }
    Ok(Check { name: "classical specialization", cases: cases.len() * 2 + 1, failures })
}

fn elliptic(dmax: u32, brute_max: u32) -> Result<Check> {
    let mut failures = Vec::new();
    let mut cases = 0;
    for w in presets() {
        let (_, con) = elliptic_qseries_pipeline(&w, 2, &[], dmax)?;
        let fe = feynman_qseries(&w, 2, dmax)?;
        let ty = types_qseries(&w, 2, dmax)?;
        cases += 2 * (dmax as usize + 1);
        if fe != con {
            failures.push(format!("{} Feynman vs shifted-symmetric", w.name()));
        }
        if ty != con {
            failures.push(format!("{} types vs shifted-symmetric", w.name()));
        }
        for d in 1..=brute_max.min(dmax) {
            cases += 1;
            if brute_force_elliptic(&w, &[], d, 2, true)? != con.coeffs()[d as usize] {
                failures.push(format!("{} brute force at d={d}", w.name()));
            }
        }
        if dmax >= 2 {
            let expect = match w {
                WeightFunction::Exp => Some(int(2)),
                WeightFunction::ProductGtilde { .. } => Some(int(4)),
                _ => None,
            };
            if !con.coeffs()[1].eq(&int(0)) || expect.is_some_and(|e| con.coeffs()[2] != e) {
                failures.push(format!("{} anchor values", w.name()));
            }
        }
    }
    Ok(Check { name: "elliptic agreement", cases, failures })
}

fn completed(dmax: u32) -> Result<Check> {
    let mut failures = Vec::new();
    let mut cases = 0;
    for d in 1..=dmax {
        for mu in partitions_of(d) {
            for nu in partitions_of(d) {
                for s in 0..=3u32 {
                    if !(s as usize + mu.len() + nu.len()).is_multiple_of(2) {
                        continue;
                    }
                    for connected in [false, true] {
                        cases += 1;
                        let a = completed_cycles_double(1, &mu, &nu, s, connected)?;
                        let b = tropical_double(&WeightFunction::Exp, &mu, &nu, s, connected)?;
                        if a != b {
                            failures.push(format!("{mu} {nu} s={s} connected={connected}"));
                        }
                    }
                }
            }
        }
    }
    Ok(Check { name: "completed cycles of order one", cases, failures })
}

fn quasimodular(dmax: u32) -> Result<Check> {
    let mut failures = Vec::new();
    for w in presets() {
        let s = feynman_qseries(&w, 2, dmax)?;
        if let Err(e) = fit_quasimodular(&s, 6, 3) {
            failures.push(format!("{}: {e}", w.name()));
        }
    }
    Ok(Check { name: "quasimodularity", cases: 3, failures })
}

pub fn run(a: SelftestArgs) -> crate::commands::Outcome {
    let (level, checks) = match a.level {
        Level::Quick => ("quick", vec![four_way(3)?, classical(3)?, elliptic(3, 3)?, completed(3)?]),
        Level::Full => (
            "full",
            vec![four_way(4)?, classical(4)?, elliptic(8, 4)?, completed(3)?, quasimodular(12)?],
        ),
    };
    let passed = checks.iter().all(|c| c.failures.is_empty());
    let mut t = Table::new(["check", "cases", "passed"]);
    for c in &checks {
        t.push(vec![c.name.into(), c.cases.to_string(), c.failures.is_empty().to_string()]);
    }
    let items: Vec<_> = checks
        .iter()
        .map(|c| json!({"name": c.name, "cases": c.cases, "passed": c.failures.is_empty(), "failures": c.failures}))
        .collect();
    let verdict = if passed { Ok(()) } else { Err(Error::InvariantViolation("selftest failed".into())) };
    Ok((Output { json: json!({"level": level, "passed": passed, "checks": items}), table: t }, verdict))
}
