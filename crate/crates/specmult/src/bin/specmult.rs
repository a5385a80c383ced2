//! Command-line front end: partitions, symbol analysis, nuclearity
//! classification, group/manifold symbol conversion, kernel synthesis and
//! invariance checks.
//!
//! Exit codes: 0 success, 2 input validation, 3 numerical non-convergence.

use std::path::PathBuf;
use std::process::ExitCode;
use std::sync::Arc;

use clap::{Args, Parser, Subcommand};

use specmult::error::Error;
use specmult::fourier::Transform;
use specmult::group;
use specmult::io;
use specmult::kernel;
use specmult::manifold::{
    build_quadrature_capped, enumerate_partition, weyl_check, ManifoldId, Partition, Summability,
    DEFAULT_MAX_NODES,
};
use specmult::nuclear::{self, LambdaControl};
use specmult::symbol::Symbol;

#[derive(Parser)]
#[command(name = "specmult", version, about = "Matrix Fourier multiplier toolkit")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print the eigenvalue partition and counting diagnostics
    Partition(PartitionArgs),
    /// Analyze a symbol file: boundedness, Schatten, trace, growth order
    Analyze(AnalyzeArgs),
    /// Classify the nuclearity sufficiency sum of a symbol
    Nuclearity(NuclearityArgs),
    /// Convert between group-symbol and symbol files
    Convert(ConvertArgs),
    /// Synthesize the kernel of a symbol; mixed norms and inequality checks
    Kernel(KernelArgs),
    /// Check level invariance of the operator behind a symbol file
    Invariance(InvarianceArgs),
}

#[derive(Args)]
struct PartitionArgs {
    /// torus1, torus2, torus3 or su2
    #[arg(long)]
    manifold: String,
    /// largest retained eigenvalue
    #[arg(long)]
    cutoff: f64,
    /// exponents q for the summability classifier
    #[arg(long = "summability", num_args = 1..)]
    qs: Vec<f64>,
}

#[derive(Args)]
struct AnalyzeArgs {
    #[arg(long)]
    file: PathBuf,
    #[arg(long)]
    l2: bool,
    /// Schatten exponents r
    #[arg(long = "schatten", num_args = 1..)]
    schatten: Vec<f64>,
    #[arg(long)]
    trace: bool,
    #[arg(long)]
    sobolev: bool,
}

#[derive(Args)]
struct NuclearityArgs {
    #[arg(long)]
    file: PathBuf,
    #[arg(long)]
    r: f64,
    /// Lebesgue exponent of the source space; "inf" allowed
    #[arg(long, default_value = "2")]
    p1: String,
    /// Lebesgue exponent of the target space; "inf" allowed
    #[arg(long, default_value = "2")]
    p2: String,
    /// uniform, hormander or group-sqrt-dim
    #[arg(long, default_value = "uniform")]
    control: String,
    /// constant for the uniform control
    #[arg(long, default_value_t = 1.0)]
    uniform_c: f64,
}

#[derive(Args)]
struct ConvertArgs {
    #[arg(long)]
    input: PathBuf,
    #[arg(long)]
    output: PathBuf,
}

#[derive(Args)]
struct KernelArgs {
    #[arg(long)]
    file: PathBuf,
    /// two exponents for the iterated mixed norm; "inf" allowed
    #[arg(long = "mixed-norm", num_args = 2)]
    mixed_norm: Vec<String>,
    /// sequence-norm vs mixed-norm inequality at this p in [1,2]
    #[arg(long)]
    ffb2: Option<f64>,
    /// write the kernel table in binary form
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct InvarianceArgs {
    #[arg(long)]
    file: PathBuf,
    #[arg(long, default_value_t = 1e-9)]
    tol: f64,
}

fn f(v: f64) -> String {
    io::fmt_f64(v)
}

fn parse_exponent(s: &str) -> Result<Option<f64>, Error> {
    if s == "inf" {
        return Ok(None);
    }
    let p: f64 = s
        .parse()
        .map_err(|_| Error::InvalidArgument(format!("exponent '{s}' is not a number or 'inf'")))?;
    if !(p >= 1.0) {
        return Err(Error::InvalidArgument(format!("exponent {p} below 1")));
    }
    Ok(Some(p))
}

fn max_grid_nodes() -> Result<usize, Error> {
    match std::env::var("SPECMULT_MAX_GRID") {
        Ok(v) => v.parse::<usize>().map_err(|_| {
            Error::InvalidArgument(format!("SPECMULT_MAX_GRID='{v}' is not a node count"))
        }),
        Err(_) => Ok(DEFAULT_MAX_NODES),
    }
}

fn load_symbol(path: &PathBuf) -> Result<Symbol, Error> {
    let text = std::fs::read_to_string(path)?;
    io::parse_symbol(&text)
}

fn transform_for(partition: &Arc<Partition>) -> Result<Transform, Error> {
    let grid = build_quadrature_capped(partition, partition.max_lambda(), max_grid_nodes()?)?;
    Transform::new(partition.clone(), Arc::new(grid))
}

fn cmd_partition(args: &PartitionArgs) -> Result<(), Error> {
    let manifold = ManifoldId::parse(&args.manifold)?;
    let p = enumerate_partition(manifold, args.cutoff)?;
    println!("manifold {}", manifold.name());
    println!("n {}", p.dim_n());
    println!("nu {}", f(p.order_nu()));
    println!("levels {}", p.num_levels());
    println!("total_dim {}", p.total_dim());
    for (i, level) in p.levels().iter().enumerate() {
        println!("level {i} lambda {} dim {}", f(level.lambda()), level.dim());
    }
    if p.num_levels() >= 10 {
        let qs = if args.qs.is_empty() { vec![1.0, 2.0] } else { args.qs.clone() };
        let report = weyl_check(&p, &qs)?;
        println!("multiplicity_constant {}", f(report.fitted_c));
        println!("counting_ratio_min {}", f(report.ratio_min));
        println!("counting_ratio_max {}", f(report.ratio_max));
        println!("counting_exponent_ok {}", report.exponent_ok);
        for entry in &report.summability {
            let verdict = match entry.verdict {
                Summability::Convergent => "convergent",
                Summability::Divergent => "divergent",
            };
            println!(
                "summability q {} verdict {verdict} partial_sum {}",
                f(entry.q),
                f(entry.partial_sum)
            );
        }
    } else {
        println!("counting_diagnostics skipped (needs at least 10 levels)");
    }
    Ok(())
}

fn cmd_analyze(args: &AnalyzeArgs) -> Result<(), Error> {
    let s = load_symbol(&args.file)?;
    if args.l2 {
        println!("l2_bound {}", f(s.l2_bound()?));
    }
    for &r in &args.schatten {
        let res = s.schatten(r)?;
        println!(
            "schatten r {} value {} finite_on_truncation {}",
            f(r),
            f(res.value),
            res.finite_on_truncation
        );
    }
    if args.trace {
        let t = s.trace_formula()?;
        println!("trace {} {} slow_decay {}", f(t.value.re), f(t.value.im), t.slow_decay);
    }
    if args.sobolev {
        let fit = s.sobolev_order()?;
        println!("sobolev m_est {} c_est {}", f(fit.m_est), f(fit.c_est));
    }
    Ok(())
}

fn cmd_nuclearity(args: &NuclearityArgs) -> Result<(), Error> {
    let s = load_symbol(&args.file)?;
    let p1 = parse_exponent(&args.p1)?;
    let p2 = parse_exponent(&args.p2)?;
    let control = match args.control.as_str() {
        "uniform" => LambdaControl::Uniform(args.uniform_c),
        "hormander" => LambdaControl::Hormander,
        "group-sqrt-dim" => LambdaControl::GroupSqrtDim,
        other => {
            return Err(Error::InvalidArgument(format!(
                "unknown control '{other}'; supported: uniform, hormander, group-sqrt-dim"
            )))
        }
    };
    let report = nuclear::nuclearity_sum(&s, args.r, p1, p2, &control)?;
    println!("partial_sum {}", f(report.partial_sum));
    println!("tail_exponent {}", f(report.tail_exponent));
    let verdict = match report.verdict {
        nuclear::NuclearityVerdict::SufficientConditionHolds => "holds",
        nuclear::NuclearityVerdict::Fails => "fails",
        nuclear::NuclearityVerdict::Inconclusive => "inconclusive",
    };
    println!("verdict {verdict}");
    match report.threshold_alpha {
        Some(a) => println!("threshold_alpha {}", f(a)),
        None => println!("threshold_alpha none"),
    }
    Ok(())
}

fn cmd_convert(args: &ConvertArgs) -> Result<(), Error> {
    let text = std::fs::read_to_string(&args.input)?;
    let out = if text.starts_with("specmult-group-symbol") {
        let tau = io::parse_group_symbol(&text)?;
        let two_l_max = tau
            .max_two_l()
            .ok_or_else(|| Error::InvalidArgument("empty group symbol".into()))?;
        let cutoff = (two_l_max * (two_l_max + 2)) as f64 / 4.0;
        let partition = Arc::new(enumerate_partition(ManifoldId::Su2, cutoff)?);
        let sigma = group::tau_to_sigma(&tau, &partition)?;
        io::write_symbol(&sigma, cutoff)
    } else if text.starts_with("specmult-symbol") {
        let sigma = io::parse_symbol(&text)?;
        let tau = group::sigma_to_tau(&sigma)?;
        io::write_group_symbol(&tau)
    } else {
        return Err(Error::Format("unrecognized input file header".into()));
    };
    std::fs::write(&args.output, out)?;
    println!("wrote {}", args.output.display());
    Ok(())
}

fn cmd_kernel(args: &KernelArgs) -> Result<(), Error> {
    let s = load_symbol(&args.file)?;
    let partition = s.partition().clone();
    let tr = transform_for(&partition)?;
    let cap = kernel::default_kernel_cap(partition.manifold()).min(max_grid_nodes()?);
    let k = kernel::synthesize_capped(&s, &tr, cap)?;
    println!("nodes {}", k.len());
    if !args.mixed_norm.is_empty() {
        let p1 = parse_exponent(&args.mixed_norm[0])?;
        let p2 = parse_exponent(&args.mixed_norm[1])?;
        let m = kernel::mixed_norm(&k, p1, p2)?;
        println!("mixed_norm_xy {}", f(m.xy));
        println!("mixed_norm_yx {}", f(m.yx));
        println!("mixed_norm {}", f(m.lp1p2));
    }
    if let Some(p) = args.ffb2 {
        let rep = kernel::ffb2_check(&k, &tr, p, 1e-8)?;
        println!("ffb2 p {} lhs {} rhs {} ratio {}", f(rep.p), f(rep.lhs), f(rep.rhs), f(rep.ratio));
        println!("ffb2_ok {}", rep.ok);
        println!("ffb2_flagged {}", rep.flagged);
    }
    if let Some(out) = &args.out {
        std::fs::write(out, io::write_kernel_binary(&k))?;
        println!("wrote {}", out.display());
    }
    Ok(())
}

fn cmd_invariance(args: &InvarianceArgs) -> Result<(), Error> {
    if !(args.tol > 0.0) {
        return Err(Error::InvalidArgument(format!("tolerance {} must be positive", args.tol)));
    }
    let s = load_symbol(&args.file)?;
    let partition = s.partition().clone();
    let tr = transform_for(&partition)?;
    let k = kernel::synthesize(&s, &tr)?;
    let table = kernel::kernel_coefficients(&k, &tr)?;
    let off = table.off_block_mass();
    println!("max_offblock {}", f(off));
    println!("tolerance {}", f(args.tol));
    println!("verdict {}", off < args.tol);
    // largest deviation of the recovered symbol from the input
    let recovered = table.diagonal_symbol()?;
    let mut dev = 0.0f64;
    for (a, b) in s.matrices().iter().zip(recovered.matrices()) {
        dev = dev.max(
            a.sub(b)
                .map_err(|e| Error::DimensionMismatch(e.to_string()))?
                .max_abs(),
        );
    }
    println!("round_trip_deviation {}", f(dev));
    Ok(())
}

fn dispatch(cli: &Cli) -> Result<(), Error> {
    match &cli.command {
        Command::Partition(a) => cmd_partition(a),
        Command::Analyze(a) => cmd_analyze(a),
        Command::Nuclearity(a) => cmd_nuclearity(a),
        Command::Convert(a) => cmd_convert(a),
        Command::Kernel(a) => cmd_kernel(a),
        Command::Invariance(a) => cmd_invariance(a),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match dispatch(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            match e {
                Error::NonConvergence(_) => ExitCode::from(3),
                _ => ExitCode::from(2),
            }
        }
    }
}
