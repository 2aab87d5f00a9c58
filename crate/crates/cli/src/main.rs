mod commands;
mod output;
mod selftest;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

#[derive(Parser)]
#[command(name = "whurwitz", version, about = "Exact weighted double and elliptic Hurwitz numbers")]
struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Write the result here instead of standard output.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Size of the worker pool (default: all cores).
    #[arg(long, global = true)]
    threads: Option<usize>,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Subcommand)]
enum Cmd {
    /// Weighted double Hurwitz number H_g(mu, nu).
    Double(commands::DoubleArgs),
    /// Double Hurwitz number restricted to one vertex decoration lambda.
    DoubleRefined(commands::RefinedArgs),
    /// List tropical covers with their multiplicities.
    Covers(commands::CoversArgs),
    /// Double Hurwitz numbers with completed-cycle insertions.
    CompletedCycles(commands::CompletedArgs),
    /// q-series of elliptic Hurwitz numbers.
    Elliptic(commands::EllipticArgs),
    /// q-series as a sum over Feynman diagrams.
    Feynman(commands::FeynmanArgs),
    /// Decompose a q-series in the quasimodular basis.
    QuasimodFit(commands::QuasimodArgs),
    /// Interpolate the chamber polynomial through a lattice point.
    Poly(commands::PolyArgs),
    /// Check the wall-crossing formula across x_I = 0.
    Wallcross(commands::WallArgs),
    /// Run the built-in oracle comparisons.
    Selftest(selftest::SelftestArgs),
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(n) = cli.threads {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(n).build_global() {
            return fail(&whurwitz::Error::InvalidInput(format!("threads: {e}")));
        }
    }
    let res = match cli.cmd {
        Cmd::Double(a) => commands::double(a),
        Cmd::DoubleRefined(a) => commands::double_refined(a),
        Cmd::Covers(a) => commands::covers(a),
        Cmd::CompletedCycles(a) => commands::completed_cycles(a),
        Cmd::Elliptic(a) => commands::elliptic(a),
        Cmd::Feynman(a) => commands::feynman(a),
        Cmd::QuasimodFit(a) => commands::quasimod_fit(a),
        Cmd::Poly(a) => commands::poly(a),
        Cmd::Wallcross(a) => commands::wallcross(a),
        Cmd::Selftest(a) => selftest::run(a),
    };
    let csv = matches!(cli.format, Format::Csv);
    let res = res.and_then(|(out, verdict)| {
        output::emit(&out, csv, cli.out.as_deref())?;
        verdict
    });
    match res {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => fail(&e),
    }
}

fn fail(e: &whurwitz::Error) -> ExitCode {
    let msg = serde_json::json!({"error": e.to_string(), "kind": e.kind()});
    eprintln!("{msg}");
    ExitCode::from(if e.is_invariant_violation() { 3 } else { 2 })
}
