use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use bcinv::config::Config;
use bcinv::harness::miner::{mine_gap, Family, MinerQuery, MinerTarget};
use bcinv::harness::{self, HarnessError, RunConfig};
use bcinv::ideal::{
    double_annihilators, left_annihilator_of, left_ideal, right_annihilator_of, right_ideal,
};
use bcinv::inverse::{self, EngineError};
use bcinv::report::{self, Format, IdealsReport, Summary};
use bcinv::{Element, RingError, RingHandle, RingOptions, RingSpec};

const FOUND: u8 = 0;
const NOT_FOUND: u8 = 1;
const USAGE: u8 = 2;
const INTERNAL: u8 = 3;

#[derive(Parser, Debug)]
#[command(
    name = "bcinv",
    version,
    about = "(b,c)-inverses and their relatives in finite rings"
)]
struct Cli {
    /// Ring spec: zn:<n> | mat:<k>:<spec> | prod:<spec>,<spec>,...
    #[arg(long, global = true)]
    ring: Option<String>,

    #[arg(long, global = true, value_enum)]
    format: Option<OutputFormat>,

    /// Worker threads (0 = available parallelism).
    #[arg(long, global = true)]
    threads: Option<usize>,

    /// Largest ring cardinality accepted.
    #[arg(long, global = true, env = "BCINV_CARDINALITY_CAP")]
    cap: Option<u64>,

    /// TOML file with the same keys as the flags.
    #[arg(long, global = true)]
    config: Option<PathBuf>,

    /// Check the ring axioms on every triple instead of a sample.
    #[arg(long, global = true)]
    full_axioms: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum OutputFormat {
    Human,
    Structured,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Compute one inverse of a given kind.
    Inverse(InverseArgs),
    /// Principal ideals and annihilators of an element.
    Ideals {
        #[arg(long)]
        a: String,
    },
    /// Sweep theorem checkers over the ring.
    Verify(VerifyArgs),
    /// Search a ring family for counterexamples to a failing implication.
    Mine(MineArgs),
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Kind {
    Bc,
    Hybrid,
    Annihilator,
    Group,
    Drazin,
    BottDuffin,
    ImageKernel,
}

#[derive(Args, Debug)]
struct InverseArgs {
    #[arg(long, value_enum)]
    kind: Kind,
    #[arg(long)]
    a: String,
    #[arg(long)]
    b: Option<String>,
    #[arg(long)]
    c: Option<String>,
    #[arg(long)]
    e: Option<String>,
    #[arg(long)]
    f: Option<String>,
    #[arg(long)]
    p: Option<String>,
    #[arg(long)]
    q: Option<String>,
}

#[derive(Args, Debug)]
struct VerifyArgs {
    /// Theorem id, or `all`.
    #[arg(long, default_value = "all")]
    theorem: String,
    /// Largest ring order a sweep accepts.
    #[arg(long)]
    max_order: Option<u32>,
    /// Inner inverses tried per element for e = bb⁻ and f = c⁻c.
    #[arg(long)]
    inner_cap: Option<usize>,
    /// Instances evaluated per theorem.
    #[arg(long)]
    budget: Option<u64>,
}

#[derive(Args, Debug)]
struct MineArgs {
    #[arg(long)]
    family: String,
    #[arg(long)]
    max_n: u64,
    #[arg(long)]
    target: String,
    /// Triples evaluated in total.
    #[arg(long, default_value_t = 50_000_000)]
    budget: u64,
    #[arg(long, default_value_t = 10)]
    max_witnesses: usize,
}

/// A failure that ends the run with a given exit status and no records.
struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn usage(message: impl Into<String>) -> Failure {
        Failure {
            code: USAGE,
            message: message.into(),
        }
    }
}

impl From<RingError> for Failure {
    fn from(e: RingError) -> Failure {
        Failure::usage(e.to_string())
    }
}

impl From<EngineError> for Failure {
    fn from(e: EngineError) -> Failure {
        Failure {
            code: if e.is_internal() { INTERNAL } else { USAGE },
            message: e.to_string(),
        }
    }
}

impl From<HarnessError> for Failure {
    fn from(e: HarnessError) -> Failure {
        match e {
            HarnessError::Engine(inner) => inner.into(),
            HarnessError::UnknownTheorem(id) => Failure::usage(format!(
                "unknown theorem id `{id}`; valid ids: all, {}",
                harness::theorem_ids().collect::<Vec<_>>().join(", ")
            )),
            HarnessError::Pool(msg) => Failure {
                code: INTERNAL,
                message: msg,
            },
            other => Failure::usage(other.to_string()),
        }
    }
}

/// Flags merged over the config file.
struct Settings {
    ring: Option<String>,
    format: Format,
    threads: usize,
    options: RingOptions,
    config: Config,
}

impl Settings {
    fn resolve(cli: &Cli) -> Result<Settings, Failure> {
        let config = match &cli.config {
            Some(path) => Config::load(path).map_err(|e| Failure::usage(e.to_string()))?,
            None => Config::default(),
        };
        let format = match cli.format {
            Some(OutputFormat::Human) => Format::Human,
            Some(OutputFormat::Structured) => Format::Structured,
            None => config.format.unwrap_or_default(),
        };
        let mut options = RingOptions::default();
        if let Some(cap) = cli.cap.or(config.cap) {
            options.cardinality_cap = cap;
        }
        options.full_axiom_check = cli.full_axioms || config.full_axioms.unwrap_or(false);
        Ok(Settings {
            ring: cli.ring.clone().or_else(|| config.ring.clone()),
            format,
            threads: cli.threads.or(config.threads).unwrap_or(0),
            options,
            config,
        })
    }

    fn ring(&self) -> Result<RingHandle, Failure> {
        let text = self
            .ring
            .as_deref()
            .ok_or_else(|| Failure::usage("--ring is required"))?;
        let spec: RingSpec = text.parse()?;
        Ok(RingHandle::build(&spec, &self.options)?)
    }
}

/// Lines to print and the exit status, produced only once the whole
/// command has succeeded.
struct Output {
    lines: Vec<String>,
    code: u8,
}

fn literal(ring: &RingHandle, name: &str, value: &Option<String>) -> Result<Element, Failure> {
    let text = value
        .as_deref()
        .ok_or_else(|| Failure::usage(format!("--{name} is required for this kind")))?;
    ring.parse_element(text)
        .map_err(|e| Failure::usage(format!("--{name}: {e}")))
}

fn run_inverse(settings: &Settings, args: &InverseArgs) -> Result<Output, Failure> {
    let ring = settings.ring()?;
    let a = literal(&ring, "a", &Some(args.a.clone()))?;
    let structured = settings.format == Format::Structured;
    let result = match args.kind {
        Kind::Drazin => {
            let result = inverse::drazin_inverse(&ring, a)?;
            let code = if result.is_some() { FOUND } else { NOT_FOUND };
            let lines = if structured {
                vec![
                    report::header("inverse"),
                    report::record(
                        "drazin",
                        &serde_json::json!({
                            "ring": ring.spec().to_string(),
                            "a": a.index(),
                            "status": if result.is_some() { "found" } else { "not-found" },
                            "value": result.map(|d| d.value.index()),
                            "index": result.map(|d| d.index),
                        }),
                    ),
                ]
            } else {
                vec![report::human_drazin(&ring, a.index(), result.as_ref())]
            };
            return Ok(Output { lines, code });
        }
        Kind::Group => inverse::group_inverse(&ring, a)?,
        Kind::Bc | Kind::Hybrid | Kind::Annihilator => {
            let b = literal(&ring, "b", &args.b)?;
            let c = literal(&ring, "c", &args.c)?;
            match args.kind {
                Kind::Bc => inverse::bc_inverse_cross_checked(&ring, a, b, c)?,
                Kind::Hybrid => inverse::hybrid_bc_inverse(&ring, a, b, c)?,
                _ => inverse::annihilator_bc_inverse(&ring, a, b, c)?,
            }
        }
        Kind::BottDuffin => {
            let e = literal(&ring, "e", &args.e)?;
            let f = literal(&ring, "f", &args.f)?;
            inverse::bott_duffin(&ring, a, e, f)?
        }
        Kind::ImageKernel => {
            let p = literal(&ring, "p", &args.p)?;
            let q = literal(&ring, "q", &args.q)?;
            inverse::image_kernel_inverse(&ring, a, p, q)?
        }
    };
    let code = if result.is_found() { FOUND } else { NOT_FOUND };
    let lines = if structured {
        vec![
            report::header("inverse"),
            report::record(
                "inverse",
                &serde_json::json!({"ring": ring.spec().to_string(), "result": result}),
            ),
        ]
    } else {
        vec![report::human_inverse(&ring, &result)]
    };
    Ok(Output { lines, code })
}

fn run_ideals(settings: &Settings, a: &str) -> Result<Output, Failure> {
    let ring = settings.ring()?;
    let a = ring
        .parse_element(a)
        .map_err(|e| Failure::usage(format!("--a: {e}")))?;
    let (rl, lr) = double_annihilators(&ring, a)?;
    let ideals = IdealsReport {
        ring: ring.spec().to_string(),
        a: a.index(),
        literal: ring.format_element(a)?,
        right: right_ideal(&ring, a)?,
        left: left_ideal(&ring, a)?,
        lann: left_annihilator_of(&ring, a)?,
        rann: right_annihilator_of(&ring, a)?,
        rl,
        lr,
    };
    let lines = match settings.format {
        Format::Structured => vec![report::header("ideals"), report::record("ideals", &ideals)],
        Format::Human => vec![report::human_ideals(&ideals)],
    };
    Ok(Output { lines, code: FOUND })
}

fn run_verify(settings: &Settings, args: &VerifyArgs) -> Result<Output, Failure> {
    let ids: Vec<&str> = if args.theorem == "all" {
        harness::theorem_ids().collect()
    } else if harness::is_known_theorem(&args.theorem) {
        vec![args.theorem.as_str()]
    } else {
        return Err(HarnessError::UnknownTheorem(args.theorem.clone()).into());
    };
    let ring = settings.ring()?;
    let defaults = RunConfig::default();
    let config = RunConfig {
        threads: settings.threads,
        max_order: args
            .max_order
            .or(settings.config.max_order)
            .unwrap_or(defaults.max_order),
        inner_choice_cap: args
            .inner_cap
            .or(settings.config.inner_cap)
            .unwrap_or(defaults.inner_choice_cap),
        instance_budget: args
            .budget
            .or(settings.config.budget)
            .unwrap_or(defaults.instance_budget),
    };
    let reports = harness::run_selected(&ring, &ids, &config)?;
    let summary = Summary::of(&ring, &reports);
    let code = if summary.passed() { FOUND } else { NOT_FOUND };
    let lines = match settings.format {
        Format::Structured => {
            let mut lines = vec![report::header("verify")];
            lines.extend(reports.iter().map(|r| report::record("report", r)));
            lines.push(report::record("summary", &summary));
            lines
        }
        Format::Human => vec![report::human_reports(&reports, &summary)],
    };
    Ok(Output { lines, code })
}

fn run_mine(settings: &Settings, args: &MineArgs) -> Result<Output, Failure> {
    let target: MinerTarget = args.target.parse().map_err(|_| {
        Failure::usage(format!(
            "unknown target `{}`; valid targets: {}",
            args.target,
            MinerTarget::ALL.map(|t| t.id()).join(", ")
        ))
    })?;
    let family: Family = args.family.parse::<Family>()?;
    let query = MinerQuery {
        target,
        family,
        max_n: args.max_n,
        budget: args.budget,
        max_witnesses: args.max_witnesses,
        ring_options: settings.options.clone(),
    };
    query.validate()?;
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(settings.threads)
        .build()
        .map_err(|e| Failure {
            code: INTERNAL,
            message: e.to_string(),
        })?;
    let report = pool.install(|| mine_gap(&query))?;
    let lines = match settings.format {
        Format::Structured => vec![report::header("mine"), report::record("miner", &report)],
        Format::Human => vec![report::human_miner(&report)],
    };
    // A completed search exits 0 whether or not it found anything.
    Ok(Output { lines, code: FOUND })
}

fn run(cli: &Cli) -> Result<Output, Failure> {
    let settings = Settings::resolve(cli)?;
    match &cli.command {
        Command::Inverse(args) => run_inverse(&settings, args),
        Command::Ideals { a } => run_ideals(&settings, a),
        Command::Verify(args) => run_verify(&settings, args),
        Command::Mine(args) => run_mine(&settings, args),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(output) => {
            let mut stdout = std::io::stdout().lock();
            for line in output.lines {
                let text = line.trim_end_matches('\n');
                if writeln!(stdout, "{text}").is_err() {
                    return ExitCode::from(INTERNAL);
                }
            }
            ExitCode::from(output.code)
        }
        Err(failure) => {
            eprintln!("error: {}", failure.message);
            ExitCode::from(failure.code)
        }
    }
}
