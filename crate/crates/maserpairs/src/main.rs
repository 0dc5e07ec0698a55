use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use maserpairs::output::{write_csv, write_csv_to, write_plot_data};
use maserpairs::verify::{verify_sweep, VERIFY_STRIDE};
use maserpairs::{evaluate_point, find_peaks, refine_peaks, run_sweep, SweepConfig, SweepError};
use maserpairs_core::fock::TruncationPolicy;

#[derive(Parser)]
#[command(
    version,
    about = "Entanglement of successive atoms leaving a one-atom maser"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Sweep the pump parameter θ = φ√N_ex and write one CSV row per point.
    Sweep(SweepArgs),
    /// Evaluate a single operating point and print key=value lines.
    Point(PointArgs),
}

#[derive(Args)]
struct Truncation {
    /// Bound on the discarded photon-number tail relative to the kept mass.
    #[arg(long, default_value_t = 1e-12)]
    tail_eps: f64,
    /// Largest photon number kept before giving up.
    #[arg(long, default_value_t = 10_000)]
    n_cap: usize,
}

impl Truncation {
    fn policy(&self) -> TruncationPolicy {
        TruncationPolicy {
            tail_eps: self.tail_eps,
            n_cap: self.n_cap,
        }
    }
}

#[derive(Args)]
struct SweepArgs {
    /// Atoms passing per cavity lifetime.
    #[arg(long, default_value_t = 1.0)]
    nex: f64,
    /// Mean thermal photon number.
    #[arg(long, default_value_t = 0.0)]
    nu: f64,
    /// Start of the sweep in units of π (exclusive unless zero).
    #[arg(long, default_value_t = 0.0)]
    theta_min: f64,
    /// End of the sweep in units of π.
    #[arg(long, default_value_t = 5.0)]
    theta_max: f64,
    #[arg(long, default_value_t = 2000)]
    steps: usize,
    #[command(flatten)]
    trunc: Truncation,
    /// Output CSV; standard output when omitted.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Report the maxima of 1 − S on standard error.
    #[arg(long)]
    peaks: bool,
    /// Cross-check every 50th point against the dense-matrix oracle.
    #[arg(long)]
    verify: bool,
    /// Also write whitespace-separated plot data to this file.
    #[arg(long)]
    plot_data: Option<PathBuf>,
}

#[derive(Args)]
struct PointArgs {
    #[arg(long)]
    nex: f64,
    #[arg(long, default_value_t = 0.0)]
    nu: f64,
    /// Pump angle in radians.
    #[arg(
        long,
        required_unless_present = "phi_over_pi",
        conflicts_with = "phi_over_pi"
    )]
    phi: Option<f64>,
    /// Pump angle in units of π.
    #[arg(long)]
    phi_over_pi: Option<f64>,
    #[command(flatten)]
    trunc: Truncation,
}

enum Failure {
    Sweep(SweepError),
    Verify(usize),
}

impl From<SweepError> for Failure {
    fn from(e: SweepError) -> Self {
        Failure::Sweep(e)
    }
}

fn sweep(args: SweepArgs) -> Result<(), Failure> {
    let config = SweepConfig {
        nex: args.nex,
        nu: args.nu,
        theta_min: args.theta_min,
        theta_max: args.theta_max,
        steps: args.steps,
        trunc: args.trunc.policy(),
    };
    let records = run_sweep(&config)?;
    match &args.out {
        Some(path) => write_csv(path, &records)?,
        None => {
            write_csv_to(std::io::stdout().lock(), &records).map_err(|source| SweepError::Csv {
                path: PathBuf::from("<stdout>"),
                source,
            })?
        }
    }
    if let Some(path) = &args.plot_data {
        write_plot_data(path, &records)?;
    }
    if args.peaks {
        let report = refine_peaks(&config, &find_peaks(&records))?;
        for p in &report.peaks {
            eprintln!(
                "peak theta/pi={:.6} phi/pi={:.6} one_minus_S={:.6} grid_theta/pi={:.6} grid_one_minus_S={:.6}",
                p.theta_over_pi, p.phi_over_pi, p.value, p.sampled_theta_over_pi, p.sampled_value
            );
        }
    }
    if args.verify {
        let report = verify_sweep(&config, VERIFY_STRIDE)?;
        for f in &report.failures {
            eprintln!("verify: {f}");
        }
        eprintln!(
            "verify: {} points checked, {} failures",
            report.points_checked,
            report.failures.len()
        );
        if !report.passed() {
            return Err(Failure::Verify(report.failures.len()));
        }
    }
    Ok(())
}

fn point(args: PointArgs) -> Result<(), Failure> {
    let phi = match (args.phi, args.phi_over_pi) {
        (Some(phi), _) => phi,
        (None, Some(x)) => x * std::f64::consts::PI,
        (None, None) => unreachable!("clap requires one of --phi, --phi-over-pi"),
    };
    let r = evaluate_point(args.nex, args.nu, phi, &args.trunc.policy()).map_err(|source| {
        SweepError::Model {
            theta_over_pi: phi * args.nex.max(0.0).sqrt() / std::f64::consts::PI,
            source,
        }
    })?;
    let lines = [
        ("theta_over_pi", r.theta_over_pi.to_string()),
        ("phi_over_pi", r.phi_over_pi.to_string()),
        ("s", r.s.to_string()),
        ("t", r.t.to_string()),
        ("u", r.u.to_string()),
        ("v", r.v.to_string()),
        ("trace_norm", r.trace_norm.to_string()),
        ("deg_corr", r.deg_corr.to_string()),
        ("separable", u8::from(r.separable).to_string()),
        ("sep_degree", r.sep_degree.to_string()),
        ("one_minus_S", r.one_minus_s.to_string()),
        ("p", r.p.to_string()),
        ("nbar", r.nbar.to_string()),
        ("n_max", r.n_max.to_string()),
    ];
    for (k, v) in lines {
        println!("{k}={v}");
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Sweep(args) => sweep(args),
        Command::Point(args) => point(args),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Sweep(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
        Err(Failure::Verify(n)) => {
            eprintln!("error: {n} oracle checks failed");
            ExitCode::from(2)
        }
    }
}
