use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use finfree::asymptotics::{family_curves, solve_curve_branch, stieltjes_density, DensityModel, LimitParams};
use finfree::conv::{add_conv, mult_conv};
use finfree::hypergeom::{hyper_poly, HyperSpec};
use finfree::io::{self, Provenance};
use finfree::mop::{Family, MopSpec, MultiIndex};
use finfree::mp::default_precision;
use finfree::rat::{parse_list, parse_rational};
use finfree::roots::{find_roots, histogram, RootMultiset};
use finfree::verify::{run_suite, Suite, SuiteOptions};
use finfree::Poly;

#[derive(Parser)]
#[command(name = "finfree", version, about = "Finite free convolutions, multiple orthogonal polynomials and their zero asymptotics")]
struct Cli {
    /// Working precision in bits; defaults to FINFREE_PREC_BITS or the degree schedule.
    #[arg(long, global = true)]
    prec: Option<u32>,
    #[command(subcommand)]
    command: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Terminating hypergeometric polynomial as a JSON literal.
    Hyper(HyperArgs),
    /// Finite free multiplicative or additive convolution of two JSON polynomials.
    Conv(ConvArgs),
    /// Zeros of a JSON polynomial.
    Roots(RootsArgs),
    /// Multiple orthogonal polynomial of one of the six families and its zeros.
    Mop(MopArgs),
    /// Limit curve, moments and sampled branch or density of a family.
    Limit(LimitArgs),
    /// Closed-form limit densities of the two-weight Jacobi–Piñeiro families.
    Density(DensityArgs),
    /// Built-in verification suites.
    Verify(VerifyArgs),
}

#[derive(Args)]
struct HyperArgs {
    #[arg(long)]
    n: usize,
    /// Numerator parameters besides -n, comma separated.
    #[arg(long, default_value = "", allow_hyphen_values = true)]
    a: String,
    #[arg(long, default_value = "", allow_hyphen_values = true)]
    b: String,
    #[arg(long, default_value = "1", allow_hyphen_values = true)]
    scale: String,
    #[arg(long, default_value = "0", allow_hyphen_values = true)]
    shift: String,
    /// Sign exponent of the argument, 0 or 1.
    #[arg(long, default_value_t = 0, value_parser = clap::value_parser!(u8).range(0..=1))]
    sign: u8,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum)]
enum ConvOp {
    Mult,
    Add,
}

#[derive(Args)]
struct ConvArgs {
    #[arg(long, value_enum)]
    op: ConvOp,
    #[arg(long)]
    n: usize,
    #[arg(long)]
    p: PathBuf,
    #[arg(long)]
    q: PathBuf,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct RootOutput {
    /// CSV of the zeros, `index,re,im`.
    #[arg(long)]
    emit: Option<PathBuf>,
    /// CSV histogram of the real parts.
    #[arg(long)]
    histogram: Option<PathBuf>,
    #[arg(long, default_value_t = 40)]
    bins: usize,
}

#[derive(Args)]
struct RootsArgs {
    #[arg(long)]
    p: PathBuf,
    #[command(flatten)]
    output: RootOutput,
}

#[derive(Args)]
struct MopArgs {
    #[arg(long)]
    family: String,
    /// One-based component index of a Type I vector.
    #[arg(long, default_value_t = 1)]
    i: usize,
    /// Multi-index, comma separated.
    #[arg(long)]
    n: String,
    #[arg(long, allow_hyphen_values = true)]
    alpha: String,
    #[arg(long, default_value = "0", allow_hyphen_values = true)]
    beta: String,
    #[arg(long, default_value = "")]
    c: String,
    /// JSON literal of the polynomial.
    #[arg(long)]
    out: Option<PathBuf>,
    #[command(flatten)]
    output: RootOutput,
}

#[derive(Args)]
struct LimitArgs {
    #[arg(long)]
    family: String,
    /// Limit proportions n_j / |n|, comma separated.
    #[arg(long)]
    theta: String,
    /// Limits of α_j / |n|; zero when omitted.
    #[arg(long, allow_hyphen_values = true)]
    a: Option<String>,
    /// Limit of β / |n|.
    #[arg(long, default_value = "0", allow_hyphen_values = true)]
    beta: String,
    #[arg(long, default_value = "")]
    c: String,
    #[arg(long, default_value_t = 1)]
    i: usize,
    /// Number of limit moments to report.
    #[arg(long, default_value_t = finfree::asymptotics::DEFAULT_ORDER)]
    order: usize,
    /// Family descriptor with moments as JSON; printed when omitted.
    #[arg(long)]
    out: Option<PathBuf>,
    /// CSV of the physical branch `y(u)` on a real grid, `u,re_y,im_y`.
    #[arg(long)]
    curve: Option<PathBuf>,
    /// CSV of the density recovered by Stieltjes inversion, `x,density`.
    #[arg(long)]
    density: Option<PathBuf>,
    /// Grid interval for --curve or --density.
    #[arg(long, allow_hyphen_values = true)]
    range: Option<String>,
    #[arg(long, default_value_t = 200)]
    grid: usize,
    #[arg(long, default_value_t = 1e-3)]
    eps: f64,
}

#[derive(Args)]
struct DensityArgs {
    /// jp1-r2 or jp2-r2.
    #[arg(long)]
    family: String,
    #[arg(long)]
    theta: String,
    #[arg(long, default_value_t = 400)]
    grid: usize,
    /// Grid interval; defaults to the support.
    #[arg(long, allow_hyphen_values = true)]
    range: Option<String>,
    #[arg(long)]
    emit: Option<PathBuf>,
}

#[derive(Args)]
struct VerifyArgs {
    /// Suite name, or `all`.
    #[arg(long, default_value = "all")]
    suite: String,
    /// Size bound: degree, |n| or truncation order, depending on the suite.
    #[arg(long)]
    n: Option<usize>,
    #[arg(long)]
    draws: Option<usize>,
    #[arg(long)]
    seed: Option<u64>,
}

enum CliError {
    Usage(String),
    Numeric(String),
}

impl From<finfree::Error> for CliError {
    fn from(e: finfree::Error) -> Self {
        use finfree::Error as E;
        match e {
            E::Parse(_) | E::UnknownFamily(_) | E::Json(_) => CliError::Usage(e.to_string()),
            _ => CliError::Numeric(e.to_string()),
        }
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Numeric(e.to_string())
    }
}

type CliResult<T> = Result<T, CliError>;

fn usage(msg: impl Into<String>) -> CliError {
    CliError::Usage(msg.into())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let command: Vec<String> = std::iter::once("finfree".to_string()).chain(std::env::args().skip(1)).collect();
    let result = match cli.command {
        Cmd::Hyper(a) => hyper(a, cli.prec, command),
        Cmd::Conv(a) => conv(a, cli.prec, command),
        Cmd::Roots(a) => roots(a, cli.prec, command),
        Cmd::Mop(a) => mop(a, cli.prec, command),
        Cmd::Limit(a) => limit(a, cli.prec, command),
        Cmd::Density(a) => density(a, cli.prec, command),
        Cmd::Verify(a) => verify(a, cli.prec),
    };
    match result {
        Ok(code) => code,
        Err(CliError::Usage(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(2)
        }
        Err(CliError::Numeric(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(1)
        }
    }
}

fn precision(flag: Option<u32>, degree: usize) -> u32 {
    flag.map(|p| p.max(finfree::mp::MIN_PREC)).unwrap_or_else(|| default_precision(degree))
}

fn parse_indices(s: &str) -> CliResult<MultiIndex> {
    let n = s
        .split(',')
        .map(|t| t.trim().parse::<usize>().map_err(|_| usage(format!("not a multi-index entry: '{t}'"))))
        .collect::<CliResult<Vec<_>>>()?;
    MultiIndex::new(n).map_err(|e| usage(e.to_string()))
}

fn parse_range(s: &str) -> CliResult<(f64, f64)> {
    let v: Vec<f64> = s
        .split(',')
        .map(|t| t.trim().parse::<f64>().map_err(|_| usage(format!("not a number: '{t}'"))))
        .collect::<CliResult<_>>()?;
    match v[..] {
        [lo, hi] if lo < hi && lo.is_finite() && hi.is_finite() => Ok((lo, hi)),
        _ => Err(usage(format!("expected an interval 'lo,hi' with lo < hi, got '{s}'"))),
    }
}

/// Midpoints of `grid` equal cells on `[lo, hi]`, avoiding singular endpoints.
fn midpoints(lo: f64, hi: f64, grid: usize) -> Vec<f64> {
    let h = (hi - lo) / grid as f64;
    (0..grid).map(|k| lo + (k as f64 + 0.5) * h).collect()
}

fn read_poly(path: &Path) -> CliResult<Poly> {
    let text = fs::read_to_string(path).map_err(|e| usage(format!("{}: {e}", path.display())))?;
    Ok(Poly::from_json(&text)?)
}

/// Prints the JSON literal or writes it with its sidecar.
fn emit_poly(p: &Poly, out: Option<&Path>, prov: &Provenance) -> CliResult<()> {
    match out {
        Some(path) => {
            io::write_with_sidecar(path, &(p.to_json() + "\n"), prov, json!({"n": p.n()}))?;
        }
        None => println!("{}", p.to_json()),
    }
    Ok(())
}

fn hyper(a: HyperArgs, prec: Option<u32>, command: Vec<String>) -> CliResult<ExitCode> {
    let spec = HyperSpec::new(a.n, parse_list(&a.a)?, parse_list(&a.b)?)
        .with_scale(parse_rational(&a.scale)?)
        .with_shift(parse_rational(&a.shift)?)
        .with_sign(a.sign);
    let p = hyper_poly(&spec)?;
    emit_poly(&p, a.out.as_deref(), &Provenance::new(command, precision(prec, a.n)))?;
    Ok(ExitCode::SUCCESS)
}

fn conv(a: ConvArgs, prec: Option<u32>, command: Vec<String>) -> CliResult<ExitCode> {
    let (p, q) = (read_poly(&a.p)?, read_poly(&a.q)?);
    let out = match a.op {
        ConvOp::Mult => mult_conv(&p, &q, a.n)?,
        ConvOp::Add => add_conv(&p, &q, a.n)?,
    };
    emit_poly(&out, a.out.as_deref(), &Provenance::new(command, precision(prec, a.n)))?;
    Ok(ExitCode::SUCCESS)
}

fn summarize(roots: &RootMultiset) {
    let re = roots.real_parts_f64();
    let min = re.iter().cloned().fold(f64::INFINITY, f64::min);
    let max = re.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
    println!("zeros: {}", roots.len());
    println!("max |im|: {:e}", roots.imag_margin());
    println!("all real: {}", roots.is_real(finfree::mop::ROOT_TOL));
    if !re.is_empty() {
        println!("min re: {min}");
        println!("max re: {max}");
    }
}

fn write_roots(roots: &RootMultiset, out: &RootOutput, prov: &Provenance, extra: Value) -> CliResult<()> {
    if let Some(path) = &out.emit {
        io::write_with_sidecar(path, &io::roots_csv(&roots.to_c64()), prov, extra.clone())?;
    }
    if let Some(path) = &out.histogram {
        if out.bins == 0 {
            return Err(usage("--bins must be positive"));
        }
        let re = roots.real_parts_f64();
        let lo = re.iter().cloned().fold(f64::INFINITY, f64::min);
        let hi = re.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
        let (lo, hi) = if lo < hi { (lo, hi) } else { (lo - 0.5, hi + 0.5) };
        io::write_with_sidecar(path, &io::histogram_csv(&histogram(&re, out.bins, lo, hi)), prov, extra)?;
    }
    Ok(())
}

fn roots(a: RootsArgs, prec: Option<u32>, command: Vec<String>) -> CliResult<ExitCode> {
    let p = read_poly(&a.p)?;
    let bits = precision(prec, p.n());
    let roots = find_roots(&p, bits)?;
    summarize(&roots);
    write_roots(&roots, &a.output, &Provenance::new(command, bits), json!({"degree": roots.len()}))?;
    Ok(ExitCode::SUCCESS)
}

fn mop(a: MopArgs, prec: Option<u32>, command: Vec<String>) -> CliResult<ExitCode> {
    let family: Family = a.family.parse()?;
    let n = parse_indices(&a.n)?;
    let alpha = parse_list(&a.alpha)?;
    let spec = match family {
        Family::JpI | Family::JpII => MopSpec::jp(family.is_type_one(), alpha, parse_rational(&a.beta)?),
        Family::Ml1I | Family::Ml1II => MopSpec::ml1(family.is_type_one(), alpha),
        Family::Ml2I | Family::Ml2II => {
            let [alpha] = <[_; 1]>::try_from(alpha).map_err(|_| usage("the second-kind Laguerre families take one alpha"))?;
            MopSpec::ml2(family.is_type_one(), alpha, parse_list(&a.c)?)
        }
    };
    if a.i == 0 || a.i > n.r() {
        return Err(usage(format!("--i must lie in 1..={}", n.r())));
    }
    let p = spec.polynomial(&n, a.i - 1)?;
    let bits = precision(prec, p.n());
    let prov = Provenance::new(command, bits);
    if let Some(out) = &a.out {
        emit_poly(&p, Some(out), &prov)?;
    }
    println!("family: {}", family.name());
    println!("degree: {}", p.n());
    let roots = find_roots(&p, bits)?;
    summarize(&roots);
    let extra = json!({"family": family.name(), "n": n.entries(), "degree": p.n()});
    write_roots(&roots, &a.output, &prov, extra)?;
    Ok(ExitCode::SUCCESS)
}

fn limit(a: LimitArgs, prec: Option<u32>, command: Vec<String>) -> CliResult<ExitCode> {
    let family: Family = a.family.parse()?;
    let theta = parse_list(&a.theta)?;
    let mut params = LimitParams::constant(theta).with_beta(parse_rational(&a.beta)?).with_c(parse_list(&a.c)?).with_index(a.i);
    if let Some(s) = &a.a {
        params = params.with_a(parse_list(s)?);
    }
    let lim = family_curves(family, &params)?;
    let mut desc = io::family_descriptor(&lim, &params);
    match lim.moments(a.order) {
        Ok(m) => desc["moments"] = json!(m.iter().map(|x| x.to_string()).collect::<Vec<_>>()),
        Err(e @ finfree::Error::BranchDegenerate) => desc["moments_error"] = json!(e.to_string()),
        Err(e) => return Err(e.into()),
    }
    let prov = Provenance::new(command, precision(prec, 0));
    match &a.out {
        Some(path) => {
            io::write_with_sidecar(path, &(serde_json::to_string_pretty(&desc).map_err(finfree::Error::from)? + "\n"), &prov, json!({}))?;
        }
        None => println!("{}", serde_json::to_string_pretty(&desc).map_err(finfree::Error::from)?),
    }
    if a.curve.is_none() && a.density.is_none() {
        return Ok(ExitCode::SUCCESS);
    }
    let (lo, hi) = parse_range(a.range.as_deref().ok_or_else(|| usage("--curve and --density need --range lo,hi"))?)?;
    if a.grid == 0 {
        return Err(usage("--grid must be positive"));
    }
    let xs = midpoints(lo, hi, a.grid);
    if let Some(path) = &a.curve {
        let us: Vec<_> = xs.iter().map(|&u| finfree::Complex64::new(u, 0.0)).collect();
        let ys = solve_curve_branch(&lim.curve, &us)?;
        io::write_with_sidecar(path, &io::curve_csv(&xs, &ys), &prov, json!({"family": family.name()}))?;
    }
    if let Some(path) = &a.density {
        let d = stieltjes_density(&lim.curve, &xs, a.eps)?;
        io::write_with_sidecar(path, &io::density_samples_csv(&d), &prov, json!({"family": family.name(), "eps": a.eps}))?;
    }
    Ok(ExitCode::SUCCESS)
}

fn density(a: DensityArgs, prec: Option<u32>, command: Vec<String>) -> CliResult<ExitCode> {
    let theta = parse_rational(&a.theta)?;
    let model = match a.family.to_ascii_lowercase().as_str() {
        "jp1-r2" | "jp-i-r2" => DensityModel::jp_type_one_r2(&theta)?,
        "jp2-r2" | "jp-ii-r2" => DensityModel::jp_type_two_r2(&theta)?,
        other => return Err(usage(format!("unknown density family '{other}', expected jp1-r2 or jp2-r2"))),
    };
    let (lo, hi) = match &a.range {
        Some(s) => parse_range(s)?,
        None if model.lo.is_finite() && model.hi.is_finite() => (model.lo, model.hi),
        None => return Err(usage("the support is unbounded, pass --range lo,hi")),
    };
    if a.grid == 0 {
        return Err(usage("--grid must be positive"));
    }
    let samples: Vec<(f64, f64)> = midpoints(lo, hi, a.grid).into_iter().map(|x| (x, model.density(x))).collect();
    println!("support: [{}, {}]", model.lo, model.hi);
    if let Some(c) = &model.c_star_exact {
        println!("c*: {c}");
    }
    if let Some(path) = &a.emit {
        let extra = json!({
            "family": a.family,
            "theta": theta.to_string(),
            "support": [model.lo, model.hi],
            "c_star": model.c_star_exact.as_ref().map(|c| c.to_string()),
        });
        io::write_with_sidecar(path, &io::density_csv(&samples), &Provenance::new(command, precision(prec, 0)), extra)?;
    } else {
        print!("{}", io::density_csv(&samples));
    }
    Ok(ExitCode::SUCCESS)
}

fn verify(a: VerifyArgs, prec: Option<u32>) -> CliResult<ExitCode> {
    let suites: Vec<Suite> = if a.suite == "all" { Suite::ALL.to_vec() } else { vec![a.suite.parse()?] };
    let mut all_ok = true;
    for suite in suites {
        let mut opts = SuiteOptions::for_suite(suite);
        opts.n = a.n.unwrap_or(opts.n);
        opts.draws = a.draws.unwrap_or(opts.draws);
        opts.seed = a.seed.unwrap_or(opts.seed);
        opts.prec = prec.or_else(finfree::mp::env_precision).unwrap_or(opts.prec);
        let rep = run_suite(suite, &opts)?;
        println!("{} {}", if rep.passed() { "PASS" } else { "FAIL" }, suite);
        for c in &rep.checks {
            println!("  [{}] {}: {}", if c.passed { "ok" } else { "FAIL" }, c.name, c.detail);
        }
        all_ok &= rep.passed();
    }
    Ok(if all_ok { ExitCode::SUCCESS } else { ExitCode::from(1) })
}
