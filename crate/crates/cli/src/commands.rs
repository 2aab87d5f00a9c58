use std::io::Read;

use clap::{Args, ValueEnum};
use num_traits::Zero;
use rayon::prelude::*;
use serde_json::{json, Value};
use whurwitz::exact::value_to_rational;
use whurwitz::feynman::{
    elliptic_qseries_pipeline, elliptic_types, feynman_per_diagram, feynman_qseries, refined_type_series,
    type_covers, types_qseries,
};
use whurwitz::oracles::{
    brute_force_double, brute_force_double_classical, brute_force_elliptic, char_double_disconnected,
    connected_double, double_genus, elliptic_branch_count,
};
use whurwitz::poly::{chamber_of, degree_bound, interpolate_chamber, wall_crossing_check, BalancedPoint};
use whurwitz::quasimod::{fit_quasimodular, profiled_weight_cap};
use whurwitz::tropical::{
    completed_cycles_covers, completed_cycles_double, cover_multiplicity, enumerate_covers, refined_tropical,
    refined_tropical_ordered, tropical_double,
};
use whurwitz::{format_rational, Composition, Error, Partition, Rational, Result, TruncSeries, Var, WeightFunction};

use crate::output::{csv_rational, Output, Table};

pub type Outcome = Result<(Output, Result<()>)>;

fn done(json: Value, table: Table) -> Outcome {
    Ok((Output { json, table }, Ok(())))
}

fn parse_list(s: &str) -> Result<Vec<u32>> {
    let s = s.trim();
    if s.is_empty() {
        return Ok(Vec::new());
    }
    s.split(',')
        .map(|t| t.trim().parse::<u32>().map_err(|_| Error::InvalidInput(format!("not a list of naturals: {s:?}"))))
        .collect()
}

fn parse_ints(s: &str) -> Result<Vec<i64>> {
    s.split(',')
        .map(|t| t.trim().parse::<i64>().map_err(|_| Error::InvalidInput(format!("not a list of integers: {s:?}"))))
        .collect()
}

pub fn parse_partition(s: &str) -> Result<Partition> {
    let v = parse_list(s)?;
    if v.contains(&0) {
        return Err(Error::InvalidInput(format!("parts must be positive: {s:?}")));
    }
    Ok(Partition::from_unsorted(v))
}

fn parse_profiles(s: Option<&str>) -> Result<Vec<Partition>> {
    match s {
        None => Ok(Vec::new()),
        Some(s) => s.split(';').filter(|t| !t.trim().is_empty()).map(parse_partition).collect(),
    }
}

fn read_arg(s: &str) -> Result<String> {
    if let Some(path) = s.strip_prefix('@') {
        if path == "-" {
            let mut buf = String::new();
            std::io::stdin().read_to_string(&mut buf).map_err(|e| Error::IoFailure(e.to_string()))?;
            return Ok(buf);
        }
        return std::fs::read_to_string(path).map_err(|e| Error::IoFailure(format!("{path}: {e}")));
    }
    Ok(s.to_string())
}

pub fn parse_weight(s: &str) -> Result<WeightFunction> {
    WeightFunction::from_json(&read_arg(s)?)
}

/// Weight for every pipeline except the completed-cycles one.
fn general_weight(s: &str) -> Result<WeightFunction> {
    let w = parse_weight(s)?;
    if matches!(w, WeightFunction::CompletedCycles { .. }) {
        return Err(Error::IncompatibleDecoration(
            "completed-cycles weights are only accepted by the completed-cycles subcommand".into(),
        ));
    }
    Ok(w)
}

fn weight_json(w: &WeightFunction) -> Value {
    serde_json::to_value(w).expect("weight serializes")
}

fn series_json(s: &TruncSeries) -> Value {
    json!(s.coeffs().iter().map(format_rational).collect::<Vec<_>>())
}

fn series_table(s: &TruncSeries) -> Table {
    let mut t = Table::new(["d", "N_d"]);
    for (d, c) in s.coeffs().iter().enumerate() {
        t.push(vec![d.to_string(), csv_rational(c)]);
    }
    t
}

#[derive(Clone, Copy, ValueEnum, PartialEq, Eq)]
pub enum DoubleRoute {
    Character,
    Brute,
    Classical,
    Tropical,
}

impl DoubleRoute {
    fn name(self) -> &'static str {
        match self {
            DoubleRoute::Character => "character",
            DoubleRoute::Brute => "brute",
            DoubleRoute::Classical => "classical",
            DoubleRoute::Tropical => "tropical",
        }
    }
}

#[derive(Args)]
pub struct DoubleArgs {
    /// Weight function as JSON, or @file.
    #[arg(long)]
    weight: String,
    #[arg(long, allow_hyphen_values = true)]
    mu: String,
    #[arg(long, allow_hyphen_values = true)]
    nu: String,
    /// Number of simple branch points.
    #[arg(long)]
    r: u32,
    #[arg(long)]
    connected: bool,
    #[arg(long, value_enum, default_value_t = DoubleRoute::Character)]
    route: DoubleRoute,
}

pub fn double_value(w: &WeightFunction, mu: &Partition, nu: &Partition, r: u32, connected: bool, route: DoubleRoute) -> Result<Rational> {
    match (route, connected) {
        (DoubleRoute::Character, false) => char_double_disconnected(w, mu, nu, r),
        (DoubleRoute::Character, true) => connected_double(w, mu, nu, r),
        (DoubleRoute::Brute, c) => brute_force_double(w, mu, nu, r, c),
        (DoubleRoute::Classical, c) => {
            if *w != WeightFunction::Exp {
                return Err(Error::UnsupportedWeightKind("the classical route counts unweighted factorizations".into()));
            }
            brute_force_double_classical(mu, nu, r, c)
        }
        (DoubleRoute::Tropical, c) => tropical_double(w, mu, nu, r, c),
    }
}

pub fn double(a: DoubleArgs) -> Outcome {
    let w = general_weight(&a.weight)?;
    let (mu, nu) = (parse_partition(&a.mu)?, parse_partition(&a.nu)?);
    let v = double_value(&w, &mu, &nu, a.r, a.connected, a.route)?;
    let mut t = Table::new(["mu", "nu", "r", "connected", "route", "value"]);
    t.push(vec![mu.to_string(), nu.to_string(), a.r.to_string(), a.connected.to_string(), a.route.name().into(), csv_rational(&v)]);
    done(
        json!({
            "value": format_rational(&v),
            "weight": weight_json(&w),
            "mu": mu.parts(),
            "nu": nu.parts(),
            "r": a.r,
            "g": double_genus(&mu, &nu, a.r),
            "connected": a.connected,
            "route": a.route.name(),
        }),
        t,
    )
}

#[derive(Args)]
pub struct RefinedArgs {
    #[arg(long)]
    weight: String,
    #[arg(long)]
    mu: String,
    #[arg(long)]
    nu: String,
    /// Vertex decoration; its size is the number of branch points.
    #[arg(long)]
    lambda: String,
    /// Read lambda as a composition in sweep order.
    #[arg(long)]
    ordered: bool,
    #[arg(long)]
    connected: bool,
}

pub fn double_refined(a: RefinedArgs) -> Outcome {
    let w = general_weight(&a.weight)?;
    let (mu, nu) = (parse_partition(&a.mu)?, parse_partition(&a.nu)?);
    let parts = parse_list(&a.lambda)?;
    if parts.contains(&0) {
        return Err(Error::InvalidInput("lambda parts must be positive".into()));
    }
    let v = if a.ordered {
        refined_tropical_ordered(&w, &mu, &nu, &Composition(parts.clone()), a.connected)?
    } else {
        refined_tropical(&w, &mu, &nu, &Partition::from_unsorted(parts.clone()), a.connected)?
    };
    let lam = parts.iter().map(u32::to_string).collect::<Vec<_>>().join(",");
    let mut t = Table::new(["mu", "nu", "lambda", "ordered", "connected", "value"]);
    t.push(vec![mu.to_string(), nu.to_string(), format!("({lam})"), a.ordered.to_string(), a.connected.to_string(), csv_rational(&v)]);
    done(
        json!({
            "value": format_rational(&v),
            "weight": weight_json(&w),
            "mu": mu.parts(),
            "nu": nu.parts(),
            "lambda": parts,
            "ordered": a.ordered,
            "connected": a.connected,
        }),
        t,
    )
}

#[derive(Clone, Copy, ValueEnum, PartialEq, Eq)]
pub enum CoverTarget {
    P1,
    Elliptic,
}

#[derive(Args)]
pub struct CoversArgs {
    /// Only `dump` is supported.
    #[arg(default_value = "dump")]
    action: String,
    #[arg(long, value_enum, default_value_t = CoverTarget::P1)]
    target: CoverTarget,
    /// Weight; optional for P1 covers, where it adds multiplicities.
    #[arg(long)]
    weight: Option<String>,
    #[arg(long)]
    mu: Option<String>,
    #[arg(long)]
    nu: Option<String>,
    #[arg(long)]
    r: Option<u32>,
    #[arg(long)]
    connected: bool,
    #[arg(long)]
    g: Option<u32>,
    #[arg(long)]
    dmax: Option<u32>,
}

fn need<T>(x: Option<T>, flag: &str) -> Result<T> {
    x.ok_or_else(|| Error::InvalidInput(format!("missing --{flag}")))
}

pub fn covers(a: CoversArgs) -> Outcome {
    if a.action != "dump" {
        return Err(Error::InvalidInput(format!("unknown covers action {:?}", a.action)));
    }
    match a.target {
        CoverTarget::P1 => {
            let w = a.weight.as_deref().map(general_weight).transpose()?;
            let mu = parse_partition(&need(a.mu, "mu")?)?;
            let nu = parse_partition(&need(a.nu, "nu")?)?;
            let r = need(a.r, "r")?;
            let cs = enumerate_covers(&mu, &nu, r, a.connected)?;
            let mults: Vec<Option<Rational>> = match &w {
                Some(w) => cs.par_iter().map(|c| cover_multiplicity(w, c).map(Some)).collect::<Result<_>>()?,
                None => vec![None; cs.len()],
            };
            let mut t = Table::new(["index", "lambda", "genus", "aut", "multiplicity"]);
            let mut items = Vec::new();
            for (i, (c, m)) in cs.iter().zip(&mults).enumerate() {
                items.push(c.to_json(m.as_ref()));
                let lam = c.lambda().0.iter().map(u32::to_string).collect::<Vec<_>>().join(",");
                t.push(vec![
                    (i + 1).to_string(),
                    format!("({lam})"),
                    c.genus().to_string(),
                    c.aut.to_string(),
                    m.as_ref().map(csv_rational).unwrap_or_default(),
                ]);
            }
            let mut j = json!({"mu": mu.parts(), "nu": nu.parts(), "r": a.r, "connected": a.connected, "covers": items});
            if let Some(w) = &w {
                let total: Rational = mults.iter().flatten().sum();
                j["weight"] = weight_json(w);
                j["total"] = json!(format_rational(&total));
            }
            done(j, t)
        }
        CoverTarget::Elliptic => {
            let w = general_weight(&need(a.weight, "weight")?)?;
            let g = need(a.g, "g")?;
            let dmax = need(a.dmax, "dmax")?;
            let types = elliptic_types(g)?;
            let per: Vec<_> = types.par_iter().map(|t| type_covers(&w, t, dmax)).collect::<Result<_>>()?;
            let mut t = Table::new(["type", "cover", "degree", "edges", "multiplicity"]);
            let mut items = Vec::new();
            for (k, (ty, (factor, cs))) in types.iter().zip(&per).enumerate() {
                let mut list = Vec::new();
                for (i, c) in cs.iter().enumerate() {
                    list.push(c.to_json(factor));
                    let edges = c
                        .edges
                        .iter()
                        .map(|(x, y, e)| format!("{}-{}:w{}m{}", x + 1, y + 1, e.weight, e.winding))
                        .collect::<Vec<_>>()
                        .join(" ");
                    t.push(vec![(k + 1).to_string(), (i + 1).to_string(), c.degree.to_string(), edges, csv_rational(&(&c.value * factor))]);
                }
                items.push(json!({"type": ty.to_json(), "covers": list}));
            }
            done(json!({"weight": weight_json(&w), "g": g, "dMax": dmax, "types": items}), t)
        }
    }
}

#[derive(Args)]
pub struct CompletedArgs {
    /// Completed-cycles weight; supplies rcc when --rcc is absent.
    #[arg(long)]
    weight: Option<String>,
    /// Order of the completed cycles.
    #[arg(long)]
    rcc: Option<u32>,
    #[arg(long)]
    mu: String,
    #[arg(long)]
    nu: String,
    /// Number of insertions.
    #[arg(long)]
    s: u32,
    #[arg(long)]
    connected: bool,
    /// Also list the contributing covers.
    #[arg(long)]
    covers: bool,
}

pub fn completed_cycles(a: CompletedArgs) -> Outcome {
    let from_weight = match a.weight.as_deref().map(parse_weight).transpose()? {
        None => None,
        Some(WeightFunction::CompletedCycles { r }) => Some(r),
        Some(w) => {
            return Err(Error::IncompatibleDecoration(format!("expected a completed-cycles weight, got {}", w.name())))
        }
    };
    let rcc = match (a.rcc, from_weight) {
        (Some(x), Some(y)) if x != y => return Err(Error::InvalidInput("--rcc disagrees with the weight".into())),
        (Some(x), _) | (None, Some(x)) => x,
        (None, None) => return Err(Error::InvalidInput("missing --rcc".into())),
    };
    let (mu, nu) = (parse_partition(&a.mu)?, parse_partition(&a.nu)?);
    let v = completed_cycles_double(rcc, &mu, &nu, a.s, a.connected)?;
    let mut t = Table::new(["rcc", "mu", "nu", "s", "connected", "value"]);
    t.push(vec![rcc.to_string(), mu.to_string(), nu.to_string(), a.s.to_string(), a.connected.to_string(), csv_rational(&v)]);
    let mut j = json!({
        "value": format_rational(&v),
        "rcc": rcc,
        "mu": mu.parts(),
        "nu": nu.parts(),
        "s": a.s,
        "connected": a.connected,
    });
    if a.covers {
        let cs = completed_cycles_covers(rcc, &mu, &nu, a.s, a.connected)?;
        j["covers"] = json!(cs.iter().map(|(c, m)| c.to_json(Some(m))).collect::<Vec<_>>());
    }
    done(j, t)
}

#[derive(Clone, Copy, ValueEnum, PartialEq, Eq)]
pub enum EllipticRoute {
    Shiftsym,
    Feynman,
    Types,
    Brute,
}

#[derive(Args)]
pub struct EllipticArgs {
    #[arg(long)]
    weight: String,
    #[arg(long)]
    g: u32,
    #[arg(long)]
    dmax: u32,
    /// Extra ramification profiles, e.g. "2;3,1".
    #[arg(long)]
    profiles: Option<String>,
    #[arg(long, value_enum, default_value_t = EllipticRoute::Shiftsym)]
    route: EllipticRoute,
}

pub fn elliptic(a: EllipticArgs) -> Outcome {
    let w = general_weight(&a.weight)?;
    let profiles = parse_profiles(a.profiles.as_deref())?;
    let plain = profiles.iter().all(|p| p.stripped().is_empty());
    let mut dis = None;
    let con = match a.route {
        EllipticRoute::Shiftsym => {
            let (d, c) = elliptic_qseries_pipeline(&w, a.g, &profiles, a.dmax)?;
            dis = Some(d);
            c
        }
        EllipticRoute::Feynman | EllipticRoute::Types => {
            if !plain {
                return Err(Error::IncompatibleDecoration("diagram routes only handle simple branching".into()));
            }
            if a.route == EllipticRoute::Feynman {
                feynman_qseries(&w, a.g, a.dmax)?
            } else {
                types_qseries(&w, a.g, a.dmax)?
            }
        }
        EllipticRoute::Brute => {
            let r = elliptic_branch_count(&profiles, a.g);
            let mut cs = vec![Rational::zero()];
            for d in 1..=a.dmax {
                cs.push(match r {
                    Some(r) => brute_force_elliptic(&w, &profiles, d, r, true)?,
                    None => Rational::zero(),
                });
            }
            TruncSeries::new(Var::Q, cs)
        }
    };
    let route = match a.route {
        EllipticRoute::Shiftsym => "shiftsym",
        EllipticRoute::Feynman => "feynman",
        EllipticRoute::Types => "types",
        EllipticRoute::Brute => "brute",
    };
    let mut j = json!({
        "weight": weight_json(&w),
        "g": a.g,
        "profiles": profiles.iter().map(|p| p.parts().to_vec()).collect::<Vec<_>>(),
        "dMax": a.dmax,
        "route": route,
        "coeffs": series_json(&con),
    });
    if let Some(d) = &dis {
        j["disconnected"] = series_json(d);
    }
    done(j, series_table(&con))
}

#[derive(Args)]
pub struct FeynmanArgs {
    #[arg(long)]
    weight: String,
    #[arg(long)]
    g: u32,
    #[arg(long)]
    dmax: u32,
    /// Report each diagram's contribution separately.
    #[arg(long)]
    per_diagram: bool,
}

pub fn feynman(a: FeynmanArgs) -> Outcome {
    let w = general_weight(&a.weight)?;
    if !a.per_diagram {
        let s = feynman_qseries(&w, a.g, a.dmax)?;
        return done(
            json!({"weight": weight_json(&w), "g": a.g, "dMax": a.dmax, "coeffs": series_json(&s)}),
            series_table(&s),
        );
    }
    let per = feynman_per_diagram(&w, a.g, a.dmax)?;
    let mut header = vec!["d".to_string()];
    header.extend((1..=per.len()).map(|k| format!("diagram{k}")));
    let mut t = Table::new(header);
    for d in 0..=a.dmax as usize {
        let mut row = vec![d.to_string()];
        row.extend(per.iter().map(|(_, s)| csv_rational(&s.coeffs()[d])));
        t.push(row);
    }
    let items: Vec<_> = per
        .iter()
        .map(|(dg, s)| json!({"diagram": dg.representative.to_json(), "aut": dg.aut.to_string(), "coeffs": series_json(s)}))
        .collect();
    done(json!({"weight": weight_json(&w), "g": a.g, "dMax": a.dmax, "diagrams": items}), t)
}

#[derive(Args)]
pub struct QuasimodArgs {
    /// q-series as JSON ({"coeffs": [...]}) or @file; when absent the
    /// connected series is computed from --weight, --g and --dmax.
    #[arg(long)]
    input: Option<String>,
    #[arg(long)]
    weight: Option<String>,
    #[arg(long)]
    g: Option<u32>,
    #[arg(long)]
    dmax: Option<u32>,
    /// Extra ramification profiles, e.g. "2;3,1".
    #[arg(long)]
    profiles: Option<String>,
    /// Fit each combinatorial type within its own weight cap.
    #[arg(long)]
    refined: bool,
    /// Weight cap; defaults to 6 for --input and to the genus and profile
    /// cap otherwise.
    #[arg(long)]
    wmax: Option<u32>,
    /// Minimum number of coefficients to validate.
    #[arg(long, default_value_t = 3)]
    holdout: usize,
}

fn series_from_json(s: &str) -> Result<TruncSeries> {
    let v: Value = serde_json::from_str(s).map_err(|e| Error::InvalidInput(format!("series: {e}")))?;
    let arr = match &v {
        Value::Array(a) => a,
        Value::Object(o) => match o.get("coeffs") {
            Some(Value::Array(a)) => a,
            _ => return Err(Error::InvalidInput("series object needs a \"coeffs\" array".into())),
        },
        _ => return Err(Error::InvalidInput("series must be an array or an object".into())),
    };
    let cs = arr.iter().map(value_to_rational).collect::<Result<Vec<_>>>()?;
    if cs.is_empty() {
        return Err(Error::InvalidInput("empty series".into()));
    }
    Ok(TruncSeries::new(Var::Q, cs))
}

fn fit_table(fits: &[(String, whurwitz::quasimod::QuasimodFit)]) -> Table {
    let mut t = Table::new(["series", "monomial", "coefficient"]);
    for (name, f) in fits {
        for (m, c) in &f.coords {
            t.push(vec![name.clone(), m.clone(), csv_rational(c)]);
        }
    }
    t
}

pub fn quasimod_fit(a: QuasimodArgs) -> Outcome {
    if let Some(inp) = &a.input {
        if a.refined {
            return Err(Error::InvalidInput("--refined computes its own series; drop --input".into()));
        }
        let s = series_from_json(&read_arg(inp)?)?;
        let f = fit_quasimodular(&s, a.wmax.unwrap_or(6), a.holdout)?;
        let t = fit_table(&[("input".into(), f.clone())]);
        return done(json!({"fit": f, "series": series_json(&s)}), t);
    }
    let w = general_weight(&need(a.weight, "weight")?)?;
    let g = need(a.g, "g")?;
    let dmax = need(a.dmax, "dmax")?;
    let profiles = parse_profiles(a.profiles.as_deref())?;
    if !a.refined {
        let cap = profiled_weight_cap(g, &profiles)
            .ok_or_else(|| Error::InvalidInput("no covers for this genus and these profiles".into()))?;
        let s = if profiles.is_empty() {
            feynman_qseries(&w, g, dmax)?
        } else {
            elliptic_qseries_pipeline(&w, g, &profiles, dmax)?.1
        };
        let f = fit_quasimodular(&s, a.wmax.unwrap_or(cap), a.holdout)?;
        let t = fit_table(&[("connected".into(), f.clone())]);
        return done(
            json!({
                "weight": weight_json(&w),
                "g": g,
                "profiles": profiles.iter().map(|p| p.parts().to_vec()).collect::<Vec<_>>(),
                "dMax": dmax,
                "fit": f,
                "series": series_json(&s),
            }),
            t,
        );
    }
    if !profiles.is_empty() || a.wmax.is_some() {
        return Err(Error::IncompatibleDecoration("--refined uses the type caps and simple branching only".into()));
    }
    let types = elliptic_types(g)?;
    let fits: Vec<_> = types
        .par_iter()
        .map(|t| {
            let s = refined_type_series(&w, t, dmax)?;
            let f = fit_quasimodular(&s, t.weight_cap(), a.holdout)?;
            Ok((t, s, f))
        })
        .collect::<Result<_>>()?;
    let items: Vec<_> = fits
        .iter()
        .map(|(t, s, f)| json!({"type": t.to_json(), "weightCap": t.weight_cap(), "fit": f, "series": series_json(s)}))
        .collect();
    let named: Vec<_> = fits.iter().enumerate().map(|(k, (_, _, f))| (format!("type{}", k + 1), f.clone())).collect();
    done(json!({"weight": weight_json(&w), "g": g, "dMax": dmax, "types": items}), fit_table(&named))
}

#[derive(Args)]
pub struct PolyArgs {
    #[arg(long)]
    weight: String,
    /// Number of branch points; alternatively give --g.
    #[arg(long)]
    r: Option<u32>,
    #[arg(long)]
    g: Option<u32>,
    /// A balanced lattice point inside the chamber, e.g. 1,3,-2,-2.
    #[arg(long, allow_hyphen_values = true)]
    x: String,
    /// Restrict to one vertex decoration lambda (its size is r).
    #[arg(long)]
    lambda: Option<String>,
    /// Number of held-out points checked against the fit.
    #[arg(long, default_value_t = 5)]
    validation: usize,
}

fn point_row(x: &[i64], v: &Rational) -> Vec<String> {
    let mut row: Vec<String> = x.iter().map(i64::to_string).collect();
    row.push(csv_rational(v));
    row
}

pub fn poly(a: PolyArgs) -> Outcome {
    let w = general_weight(&a.weight)?;
    let x0 = BalancedPoint::new(parse_ints(&a.x)?)?;
    let n = x0.n();
    let lambda = a.lambda.as_deref().map(parse_partition).transpose()?;
    let r = match (a.r, a.g, &lambda) {
        (Some(r), _, _) => r,
        (None, Some(g), _) => (2 * g + n as u32).checked_sub(2).ok_or_else(|| Error::InvalidInput("n too small".into()))?,
        (None, None, Some(l)) => l.size(),
        (None, None, None) => return Err(Error::InvalidInput("give --r or --g".into())),
    };
    if let Some(l) = &lambda {
        if l.size() != r {
            return Err(Error::SizeMismatch(format!("|lambda| = {} but r = {r}", l.size())));
        }
    }
    if let (Some(g), Some((g2, _))) = (a.g, degree_bound(n, r)) {
        if g != g2 {
            return Err(Error::InvalidInput(format!("--g {g} does not match r = {r}")));
        }
    }
    let sig = chamber_of(&x0)?;
    let fit = interpolate_chamber(&w, r, &x0, lambda.as_ref(), a.validation)?;
    let mut header: Vec<String> = (1..=n).map(|i| format!("x{i}")).collect();
    header.push("H".into());
    let mut t = Table::new(header);
    for (p, v) in fit.training.iter().chain(&fit.validation) {
        t.push(point_row(&p.0, v));
    }
    let mut j = fit.to_json();
    j["weight"] = weight_json(&w);
    j["r"] = json!(r);
    j["g"] = json!(degree_bound(n, r).map(|(g, _)| g));
    j["chamber"] = json!(sig.0);
    if let Some(l) = &lambda {
        j["lambda"] = json!(l.parts());
    }
    done(j, t)
}

#[derive(Args)]
pub struct WallArgs {
    #[arg(long)]
    weight: String,
    #[arg(long)]
    lambda: String,
    /// 1-based indices of the wall x_I = 0.
    #[arg(long)]
    subset: String,
    /// A balanced point on the wall, e.g. 2,-2,3,-3.
    #[arg(long, allow_hyphen_values = true)]
    x: String,
    #[arg(long, default_value_t = 3)]
    points: usize,
}

pub fn wallcross(a: WallArgs) -> Outcome {
    let w = general_weight(&a.weight)?;
    let lambda = parse_partition(&a.lambda)?;
    let x = parse_ints(&a.x)?;
    let subset: Vec<usize> = parse_list(&a.subset)?
        .into_iter()
        .map(|i| {
            if i == 0 || i as usize > x.len() {
                Err(Error::InvalidInput(format!("subset index {i} out of range")))
            } else {
                Ok(i as usize - 1)
            }
        })
        .collect::<Result<_>>()?;
    if subset.is_empty() || subset.len() >= x.len() {
        return Err(Error::InvalidInput("the subset must be proper and non-empty".into()));
    }
    let check = wall_crossing_check(&w, &lambda, &subset, &x, a.points)?;
    let mut header: Vec<String> = (1..=x.len()).map(|i| format!("x{i}")).collect();
    header.extend(["lhs".to_string(), "rhs".to_string()]);
    let mut t = Table::new(header);
    for (p, l, r) in &check.points {
        let mut row = point_row(&p.0, l);
        row.push(csv_rational(r));
        t.push(row);
    }
    let mut j = check.to_json();
    j["weight"] = weight_json(&w);
    j["lambda"] = json!(lambda.parts());
    j["subset"] = json!(subset.iter().map(|i| i + 1).collect::<Vec<_>>());
    j["positive"] = check.fit_positive.to_json();
    j["negative"] = check.fit_negative.to_json();
    let verdict = if check.holds() {
        Ok(())
    } else {
        Err(Error::InvariantViolation("wall-crossing identity fails".into()))
    };
    Ok((Output { json: j, table: t }, verdict))
}
