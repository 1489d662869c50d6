use std::fs;
use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use anomcert::charcalc::{Backend, GeometrySpec, Normalization, Variant, XiConvention};
use anomcert::report::{self, ExpandSide, Format, Report, RunConfig, TheoremFilter};
use anomcert::verify::engine::default_backend;
use clap::{Args, Parser, Subcommand};

const EXIT_FAIL: u8 = 2;
const EXIT_USAGE: u8 = 1;

#[derive(Parser, Debug)]
#[command(
    name = "anomcert",
    version,
    about = "Certifies anomaly cancellation identities by exact q-series computation"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Certify registry entries, lemmas or side equalities and write a report.
    Verify(VerifyArgs),
    /// List the registry.
    List,
    /// Print the q-expansion of a characteristic series.
    Expand(ExpandArgs),
}

fn parse_backend(s: &str) -> Result<Backend, String> {
    Backend::parse(s).ok_or_else(|| format!("unknown backend {s:?} (roots, powersum, random)"))
}

fn parse_variant(s: &str) -> Result<Variant, String> {
    Variant::parse(s).ok_or_else(|| {
        let names: Vec<&str> = Variant::ALL.iter().map(|v| v.name()).collect();
        format!("unknown variant {s:?} ({})", names.join(", "))
    })
}

fn parse_xi(s: &str) -> Result<XiConvention, String> {
    match s {
        "complexified" => Ok(XiConvention::Complexified),
        "line" => Ok(XiConvention::Line),
        _ => Err(format!("unknown ξ convention {s:?} (complexified, line)")),
    }
}

fn parse_format(s: &str) -> Result<Format, String> {
    Format::parse(s).ok_or_else(|| format!("unknown format {s:?} (json, markdown)"))
}

#[derive(Args, Debug)]
struct VerifyArgs {
    /// Registry ids, comma separated or repeated; `all` or `none`.
    #[arg(long = "theorem", value_name = "ID")]
    theorems: Vec<String>,
    /// Override the dimension (with a single --theorem, or with --variant and --l).
    #[arg(long)]
    dimension: Option<u32>,
    #[arg(long)]
    l: Option<u32>,
    #[arg(long, value_parser = parse_variant)]
    variant: Option<Variant>,
    /// Take c = 0 for a custom geometry.
    #[arg(long)]
    spin: bool,
    /// roots, powersum or random (default: powersum up to dimension 14).
    #[arg(long, value_parser = parse_backend)]
    backend: Option<Backend>,
    #[arg(long, value_name = "N")]
    q_order: Option<u32>,
    #[arg(long)]
    seed: Option<u64>,
    /// Number of seeds for the random backend.
    #[arg(long = "seeds", value_name = "N")]
    seed_count: Option<u32>,
    /// complexified or line.
    #[arg(long, value_parser = parse_xi)]
    xi: Option<XiConvention>,
    /// Skip the roots backend cross-check.
    #[arg(long)]
    no_cross_check: bool,
    /// Also certify the structural lemmas.
    #[arg(long)]
    lemmas: bool,
    /// Also compare both constructions on the default geometries.
    #[arg(long)]
    sides: bool,
    /// Record wall-clock times in certificates.
    #[arg(long)]
    timings: bool,
    /// json or markdown.
    #[arg(long, value_parser = parse_format)]
    format: Option<Format>,
    #[arg(long, short)]
    output: Option<PathBuf>,
    /// Read a JSON run configuration; flags given here override it.
    #[arg(long, value_name = "FILE")]
    config: Option<PathBuf>,
    /// Print the effective configuration as JSON and exit.
    #[arg(long)]
    print_config: bool,
}

#[derive(Args, Debug)]
struct ExpandArgs {
    #[arg(long, value_parser = parse_variant, default_value = "q-even")]
    variant: Variant,
    #[arg(long, default_value_t = 8)]
    dimension: u32,
    #[arg(long, default_value_t = 1)]
    l: u32,
    /// bundle, theta or bundle-expr.
    #[arg(long, default_value = "theta")]
    side: String,
    /// summed or unit-leading.
    #[arg(long, default_value = "summed")]
    normalization: String,
    #[arg(long)]
    spin: bool,
    #[arg(long, value_parser = parse_backend)]
    backend: Option<Backend>,
    #[arg(long, default_value_t = 2)]
    q_order: u32,
    #[arg(long, default_value_t = 1)]
    seed: u64,
    #[arg(long, value_parser = parse_xi, default_value = "complexified")]
    xi: XiConvention,
    /// top or all.
    #[arg(long, default_value = "top")]
    degree: String,
}

enum Failure {
    Usage(String),
    Run(String),
}

fn build_config(args: &VerifyArgs) -> Result<RunConfig, Failure> {
    let mut config = match &args.config {
        Some(path) => {
            let text = fs::read_to_string(path).map_err(|e| Failure::Run(format!("{}: {e}", path.display())))?;
            serde_json::from_str(&text).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))?
        }
        None => RunConfig::default(),
    };
    if !args.theorems.is_empty() {
        config.theorems = TheoremFilter::from_args(&args.theorems);
    }
    config.dimension = args.dimension.or(config.dimension);
    config.l = args.l.or(config.l);
    config.variant = args.variant.or(config.variant);
    if args.spin {
        config.spin = Some(true);
    }
    config.backend = args.backend.or(config.backend);
    config.q_order = args.q_order.unwrap_or(config.q_order);
    config.seed = args.seed.unwrap_or(config.seed);
    config.seed_count = args.seed_count.unwrap_or(config.seed_count);
    config.xi = args.xi.unwrap_or(config.xi);
    config.cross_check &= !args.no_cross_check;
    config.lemmas |= args.lemmas;
    config.sides |= args.sides;
    config.timings |= args.timings;
    config.format = args.format.unwrap_or(config.format);
    config.output = args.output.clone().or(config.output);
    Ok(config)
}

fn emit(bytes: &[u8], output: Option<&PathBuf>) -> Result<(), Failure> {
    match output {
        Some(path) => fs::write(path, bytes).map_err(|e| Failure::Run(format!("{}: {e}", path.display()))),
        None => std::io::stdout()
            .write_all(bytes)
            .map_err(|e| Failure::Run(format!("stdout: {e}"))),
    }
}

fn run_verify(args: &VerifyArgs) -> Result<bool, Failure> {
    let config = build_config(args)?;
    if args.print_config {
        let text = serde_json::to_string_pretty(&config).map_err(|e| Failure::Run(e.to_string()))?;
        emit(format!("{text}\n").as_bytes(), None)?;
        return Ok(true);
    }
    config.validate().map_err(|e| Failure::Usage(e.to_string()))?;
    let certificates = config.execute().map_err(|e| Failure::Run(e.to_string()))?;
    let report = Report::new(config.options(), certificates);
    let bytes = report::write_report(&report, config.format).map_err(|e| Failure::Run(e.to_string()))?;
    emit(&bytes, config.output.as_ref())?;
    let passed = report.certificates.iter().filter(|c| c.is_pass()).count();
    eprintln!("{passed} of {} certificates pass", report.certificates.len());
    for c in report.certificates.iter().filter(|c| !c.is_pass()) {
        eprintln!("  fail: {} ({})", c.id, c.residual);
    }
    Ok(report.all_pass())
}

fn run_expand(args: &ExpandArgs) -> Result<bool, Failure> {
    let side = ExpandSide::parse(&args.side)
        .ok_or_else(|| Failure::Usage(format!("unknown side {:?} (bundle, theta, bundle-expr)", args.side)))?;
    let norm = match args.normalization.as_str() {
        "summed" => Normalization::Summed,
        "unit-leading" => Normalization::UnitLeading,
        other => {
            return Err(Failure::Usage(format!(
                "unknown normalization {other:?} (summed, unit-leading)"
            )))
        }
    };
    let top_only = match args.degree.as_str() {
        "top" => true,
        "all" => false,
        other => return Err(Failure::Usage(format!("unknown degree {other:?} (top, all)"))),
    };
    let spec = GeometrySpec::new(
        args.variant,
        args.dimension,
        args.l,
        args.backend.unwrap_or_else(|| default_backend(args.dimension)),
    )
    .with_q_order(args.q_order)
    .with_seed(args.seed)
    .with_spin(args.spin)
    .with_xi(args.xi);
    spec.validate().map_err(|e| Failure::Usage(e.to_string()))?;
    let text = report::expand(&spec, side, norm, top_only).map_err(|e| Failure::Run(e.to_string()))?;
    emit(text.as_bytes(), None)?;
    Ok(true)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let outcome = match &cli.command {
        Command::Verify(args) => run_verify(args),
        Command::List => emit(report::registry_table().as_bytes(), None).map(|_| true),
        Command::Expand(args) => run_expand(args),
    };
    match outcome {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(EXIT_FAIL),
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(EXIT_USAGE)
        }
        Err(Failure::Run(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(EXIT_FAIL)
        }
    }
}
