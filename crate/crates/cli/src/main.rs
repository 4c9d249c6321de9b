use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use macdyson::cache::{cached, Cache};
use macdyson::macroutes::{compute, jack_hyperdet, Route, RouteResult};
use macdyson::partitions::Partition;
use macdyson::qdyson;
use macdyson::symfunc::{format_g_basis, to_g_basis};
use macdyson::verify::{self, Limits, Suite};
use macdyson::Error;

const DEFAULT_MAX_WEIGHT: u32 = 12;
const DEFAULT_MAX_BETA: u32 = 3;
const DEFAULT_MAX_S: u32 = 4;

#[derive(Parser)]
#[command(name = "macdyson", version, about = "Exact Macdonald functions at t = q^beta and q-Dyson constant terms")]
struct Cli {
    /// Bypass the on-disk result cache.
    #[arg(long, global = true)]
    no_cache: bool,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Compute Q_lambda(q, q^beta) by a chosen route.
    Macdonald(MacArgs),
    /// Jack function Q_rho(1/beta) of an almost rectangular shape by the hyperdeterminant.
    Jack(JackArgs),
    /// q-Dyson constant terms and coefficients.
    Qdyson {
        #[command(subcommand)]
        mode: QdysonMode,
    },
    /// Run a verification suite.
    Verify(VerifyArgs),
}

#[derive(Clone, Copy, ValueEnum)]
enum RouteArg {
    Gs,
    Lowering,
    Comb,
    Vertex,
    Filtration,
}

impl RouteArg {
    fn route(self) -> Route {
        match self {
            RouteArg::Gs => Route::GramSchmidt,
            RouteArg::Lowering => Route::Lowering,
            RouteArg::Comb => Route::Combinatorial,
            RouteArg::Vertex => Route::Vertex,
            RouteArg::Filtration => Route::Filtration,
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Args)]
struct SizeCaps {
    /// Refuse shapes heavier than this.
    #[arg(long, default_value_t = DEFAULT_MAX_WEIGHT)]
    max_weight: u32,
    /// Refuse beta above this.
    #[arg(long, default_value_t = DEFAULT_MAX_BETA)]
    max_beta: u32,
}

#[derive(Args)]
struct MacArgs {
    #[arg(long)]
    shape: Partition,
    #[arg(long)]
    beta: u32,
    #[arg(long, value_enum, default_value = "gs")]
    route: RouteArg,
    #[arg(long, value_enum, default_value = "text")]
    format: Format,
    #[command(flatten)]
    caps: SizeCaps,
}

#[derive(Args)]
struct JackArgs {
    #[arg(long)]
    shape: Partition,
    #[arg(long)]
    beta: u32,
    #[arg(long, value_enum, default_value = "text")]
    format: Format,
    #[command(flatten)]
    caps: SizeCaps,
}

#[derive(Subcommand)]
enum QdysonMode {
    /// Constant term of the Dyson product.
    Ct {
        #[arg(long, value_delimiter = ',', required = true)]
        betas: Vec<u32>,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
        #[command(flatten)]
        caps: QCaps,
    },
    /// Coefficient of z_a^n / w_1^n in F[s;1].
    Kadell {
        #[arg(long, value_delimiter = ',', required = true)]
        betas: Vec<u32>,
        #[arg(long)]
        a: usize,
        #[arg(long)]
        n: u32,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
        #[command(flatten)]
        caps: QCaps,
    },
    /// Coefficient of z^lambda / w^lambda in F[s;s].
    Cla {
        #[arg(long)]
        shape: Partition,
        #[arg(long)]
        beta: u32,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
        #[command(flatten)]
        caps: QCaps,
    },
    /// Scan the truncated expansion for dominance and vanishing violations.
    Scan {
        #[arg(long, value_delimiter = ',', required = true)]
        betas: Vec<u32>,
        #[arg(long, default_value_t = 1)]
        t: usize,
        #[arg(long, default_value_t = 2)]
        cap: u32,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
        #[command(flatten)]
        caps: QCaps,
    },
}

#[derive(Args)]
struct QCaps {
    #[arg(long, default_value_t = DEFAULT_MAX_BETA)]
    max_beta: u32,
    /// Refuse more variables than this.
    #[arg(long, default_value_t = DEFAULT_MAX_S)]
    max_s: u32,
    /// Refuse degrees (n, |lambda|, cap) above this.
    #[arg(long, default_value_t = DEFAULT_MAX_WEIGHT)]
    max_weight: u32,
}

#[derive(Args)]
struct VerifyArgs {
    #[arg(long, default_value = "all")]
    suite: String,
    #[arg(long, default_value_t = 6)]
    max_weight: u32,
    #[arg(long, default_value_t = 2)]
    max_beta: u32,
    #[arg(long, default_value_t = 3)]
    max_s: u32,
    /// Worker threads (default: all cores).
    #[arg(long)]
    jobs: Option<usize>,
    #[arg(long, value_enum, default_value = "text")]
    format: Format,
}

enum Failure {
    Usage(String),
    TooLarge(String),
    Verification,
    Internal(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::NotRectangular(_)
            | Error::NotAlmostRectangular(_)
            | Error::InvalidArgument(_)
            | Error::Parse(_)
            | Error::ZeroPartition
            | Error::DoesNotFit { .. } => Failure::Usage(e.to_string()),
            _ => Failure::Internal(e.to_string()),
        }
    }
}

type Outcome = Result<(), Failure>;

fn warn_override(name: &str, given: u32, default: u32) {
    if given > default {
        eprintln!("warning: --{name} raised from {default} to {given}; exact computations may take a long time");
    }
}

fn check_size(what: &str, value: u32, cap: u32, flag: &str) -> Outcome {
    if value > cap {
        return Err(Failure::TooLarge(format!("{what} {value} exceeds --{flag} {cap}")));
    }
    Ok(())
}

fn check_caps(weight: u32, beta: u32, caps: &SizeCaps) -> Outcome {
    warn_override("max-weight", caps.max_weight, DEFAULT_MAX_WEIGHT);
    warn_override("max-beta", caps.max_beta, DEFAULT_MAX_BETA);
    if beta == 0 {
        return Err(Failure::Usage("beta must be positive".into()));
    }
    check_size("weight", weight, caps.max_weight, "max-weight")?;
    check_size("beta", beta, caps.max_beta, "max-beta")
}

fn check_qcaps(betas: &[u32], degree: u32, caps: &QCaps) -> Outcome {
    warn_override("max-weight", caps.max_weight, DEFAULT_MAX_WEIGHT);
    warn_override("max-beta", caps.max_beta, DEFAULT_MAX_BETA);
    warn_override("max-s", caps.max_s, DEFAULT_MAX_S);
    if betas.is_empty() || betas.contains(&0) {
        return Err(Failure::Usage("betas must be positive integers".into()));
    }
    check_size("number of variables", betas.len() as u32, caps.max_s, "max-s")?;
    check_size("beta", *betas.iter().max().unwrap(), caps.max_beta, "max-beta")?;
    check_size("degree", degree, caps.max_weight, "max-weight")
}

fn print_json(v: &serde_json::Value) {
    println!("{}", serde_json::to_string_pretty(v).expect("serializable"));
}

fn macdonald(a: MacArgs, cache: Option<&Cache>) -> Outcome {
    check_caps(a.shape.weight(), a.beta, &a.caps)?;
    let route = a.route.route();
    let params = serde_json::json!({"shape": a.shape.parts(), "beta": a.beta, "route": route.name()});
    let v: serde_json::Value = cached(cache, "macdonald", &params, || Ok(compute(&a.shape, a.beta, route)?.to_json()))?;
    match a.format {
        Format::Json => print_json(&v),
        Format::Text => {
            let r = RouteResult::from_json(&v)?;
            println!("Q[{}] beta={} route={}", r.shape, r.beta, r.route);
            println!("{}", format_g_basis(&to_g_basis(&r.value, r.beta)));
            for (k, c) in &r.scalars {
                println!("{k} = {c}");
            }
        }
    }
    Ok(())
}

fn jack(a: JackArgs) -> Outcome {
    check_caps(a.shape.weight(), a.beta, &a.caps)?;
    let (k, s, t) = a.shape.as_almost_rect().ok_or_else(|| Error::NotAlmostRectangular(a.shape.clone()))?;
    let r = jack_hyperdet(k, s, t, a.beta)?;
    match a.format {
        Format::Json => print_json(&r.to_json()),
        Format::Text => {
            println!("Q[{}](1/{}) route=hyperdet_jack", r.shape, r.beta);
            let g = macdyson::symfunc::to_g_basis_with(&r.value, |n| macdyson::symfunc::jack_qn(n, a.beta));
            println!("{}", format_g_basis(&g));
            println!("constant = {}", r.constant);
        }
    }
    Ok(())
}

fn print_value(label: &str, v: &macdyson::exactq::RatFuncQ, format: Format) {
    match format {
        Format::Text => println!("{v}"),
        Format::Json => print_json(&serde_json::json!({ label: v.to_canonical_string() })),
    }
}

fn qdyson_cmd(mode: QdysonMode, cache: Option<&Cache>) -> Outcome {
    match mode {
        QdysonMode::Ct { betas, format, caps } => {
            check_qcaps(&betas, 0, &caps)?;
            print_value("ct", &qdyson::ct_product(&betas), format);
        }
        QdysonMode::Kadell { betas, a, n, format, caps } => {
            check_qcaps(&betas, n, &caps)?;
            print_value("coefficient", &qdyson::kadell_coeff(&betas, a, n)?, format);
        }
        QdysonMode::Cla { shape, beta, format, caps } => {
            if shape.is_zero() {
                return Err(Failure::Usage("shape must be nonzero".into()));
            }
            check_qcaps(&vec![beta; shape.len()], shape.weight(), &caps)?;
            print_value("coefficient", &qdyson::cla(&shape, beta), format);
        }
        QdysonMode::Scan { betas, t, cap, format, caps } => {
            check_qcaps(&betas, cap, &caps)?;
            let r = qdyson::vanishing_scan(&betas, t, cap, cache)?;
            match format {
                Format::Json => print_json(&serde_json::to_value(&r).expect("serializable")),
                Format::Text => {
                    println!("checked {} monomials, {} violations", r.checked_monomials, r.violations.len());
                    for v in &r.violations {
                        println!("{} {}: {} (expected {})", v.rule, v.monomial, v.got, v.expected);
                    }
                }
            }
            if !r.ok() {
                return Err(Failure::Verification);
            }
        }
    }
    Ok(())
}

fn verify_cmd(a: VerifyArgs, cache: Option<&Cache>) -> Outcome {
    let suite: Suite = a.suite.parse()?;
    if let Some(j) = a.jobs {
        rayon::ThreadPoolBuilder::new()
            .num_threads(j.max(1))
            .build_global()
            .map_err(|e| Failure::Internal(e.to_string()))?;
    }
    let limits = Limits { max_weight: a.max_weight, max_beta: a.max_beta, max_s: a.max_s };
    let r = verify::run(suite, limits, cache);
    match a.format {
        Format::Json => print_json(&serde_json::to_value(&r).expect("serializable")),
        Format::Text => {
            for f in &r.failures {
                println!("FAIL {} {}: {}", f.suite, f.case, f.detail.as_deref().unwrap_or(""));
            }
            println!("{}: {} passed, {} failed", r.suite, r.passed, r.failed);
        }
    }
    if r.ok() {
        Ok(())
    } else {
        Err(Failure::Verification)
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => e.exit(),
    };
    let cache = if cli.no_cache { None } else { Cache::from_env() };
    let res = match cli.cmd {
        Cmd::Macdonald(a) => macdonald(a, cache.as_ref()),
        Cmd::Jack(a) => jack(a),
        Cmd::Qdyson { mode } => qdyson_cmd(mode, cache.as_ref()),
        Cmd::Verify(a) => verify_cmd(a, cache.as_ref()),
    };
    match res {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Verification) => ExitCode::from(1),
        Err(Failure::Internal(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(1)
        }
        Err(Failure::Usage(m)) => {
            eprintln!("usage error: {m}");
            ExitCode::from(2)
        }
        Err(Failure::TooLarge(m)) => {
            eprintln!("refused: {m}");
            ExitCode::from(3)
        }
    }
}
