mod config;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde::Serialize;

use k3walls::exactq::{Rat, TInterval};
use k3walls::ku::{Descent, KuClass};
use k3walls::mukai::{MukaiProfile, ReferenceClass};
use k3walls::paper::verify;
use k3walls::parse;
use k3walls::walls::walls_on_path;
use k3walls::Error;

use config::{OutputFormat, RunConfig};

const EXIT_CHECK_FAILED: u8 = 1;
const EXIT_USAGE: u8 = 2;
const EXIT_INTERNAL: u8 = 3;

#[derive(Parser, Debug)]
#[command(
    name = "k3walls",
    version,
    about = "Exact wall computations for stability conditions on K3 surfaces"
)]
struct Cli {
    #[command(flatten)]
    global: GlobalArgs,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug)]
struct GlobalArgs {
    /// JSON run configuration; flags override its values.
    #[arg(long, global = true, value_name = "PATH")]
    config: Option<PathBuf>,
    #[arg(long, global = true, value_enum)]
    format: Option<OutputFormat>,
    /// Worker threads.
    #[arg(long, global = true, value_name = "N")]
    parallelism: Option<usize>,
    /// The surface contains no lines.
    #[arg(long, global = true)]
    no_lines: bool,
    /// The surface contains no conics.
    #[arg(long, global = true)]
    no_conics: bool,
    /// Degrees of the excluded isotropic classes, e.g. "1,2,3,4"; "" disables the rule.
    #[arg(long, global = true, value_name = "LIST", value_parser = parse::degree_list, allow_hyphen_values = true)]
    exclusions: Option<parse::Degrees>,
    /// Write the report here instead of stdout.
    #[arg(long, global = true, value_name = "PATH")]
    output: Option<PathBuf>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Walls for a class along the path of stability conditions.
    Walls {
        /// Class `r,c,s` meaning (r, cH, s); c may be rational.
        #[arg(long, value_parser = parse::reference_class, allow_hyphen_values = true)]
        vector: ReferenceClass,
        /// `a:b` for (a, b], `a:` for (a, inf), or interval notation such as `[1,inf)`.
        #[arg(long, value_parser = parse::t_range, default_value = "[1,inf)")]
        t_range: TInterval,
    },
    /// Run the fixed verification suite.
    VerifyPaper {
        /// Samples per unit of t for grid checks.
        #[arg(long, value_name = "N")]
        t_grid_density: Option<u32>,
    },
    /// Lattice data of a class under the maps between the K3 surface and the Kuznetsov component.
    Descent {
        #[command(flatten)]
        class: ClassSpec,
        /// Stability parameter for the charge.
        #[arg(long, value_parser = parse::rational, default_value = "1")]
        t: Rat,
    },
}

#[derive(Args, Debug)]
#[group(required = true, multiple = false)]
struct ClassSpec {
    /// Mukai profile `r,d,q,s`.
    #[arg(long, value_parser = parse::mukai_profile, allow_hyphen_values = true)]
    mukai: Option<MukaiProfile>,
    /// Class `a,b` meaning a·κ1 + b·κ2.
    #[arg(long, value_parser = parse::ku_class, allow_hyphen_values = true)]
    ku: Option<KuClass>,
}

struct Failure {
    code: u8,
    message: String,
}

fn usage(message: impl Into<String>) -> Failure {
    Failure { code: EXIT_USAGE, message: message.into() }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::InvalidInterval(_)
            | Error::Precondition(_)
            | Error::UnsupportedReference(_)
            | Error::NonPositiveSquare(_)
            | Error::NonIntegralPairing(_) => EXIT_USAGE,
            _ => EXIT_INTERNAL,
        };
        Failure { code, message: e.to_string() }
    }
}

fn resolve_config(g: &GlobalArgs) -> Result<RunConfig, Failure> {
    let mut cfg = match &g.config {
        Some(p) => RunConfig::load(p).map_err(usage)?,
        None => RunConfig::default(),
    };
    if let Some(f) = g.format {
        cfg.output_format = f;
    }
    if let Some(n) = g.parallelism {
        cfg.parallelism = n;
    }
    if g.no_lines {
        cfg.context.has_lines = false;
    }
    if g.no_conics {
        cfg.context.has_conics = false;
    }
    if let Some(ex) = &g.exclusions {
        cfg.context.excluded_isotropic_degrees = ex.0.iter().copied().collect();
    }
    cfg.validate().map_err(usage)?;
    Ok(cfg)
}

fn emit(text: &str, output: &Option<PathBuf>) -> Result<(), Failure> {
    match output {
        Some(p) => std::fs::write(p, text).map_err(|e| Failure {
            code: EXIT_INTERNAL,
            message: format!("cannot write {}: {e}", p.display()),
        }),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn json<T: Serialize>(x: &T) -> String {
    let mut s = serde_json::to_string_pretty(x).expect("reports serialize");
    s.push('\n');
    s
}

fn run(cli: Cli) -> Result<u8, Failure> {
    let mut cfg = resolve_config(&cli.global)?;
    if let Command::VerifyPaper { t_grid_density: Some(n) } = &cli.command {
        cfg.t_grid_density = *n;
        cfg.validate().map_err(usage)?;
    }
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(cfg.parallelism)
        .build()
        .map_err(|e| Failure { code: EXIT_INTERNAL, message: e.to_string() })?;
    pool.install(|| match &cli.command {
        Command::Walls { vector, t_range } => {
            let rep = walls_on_path(&cfg.context, &cfg.family, vector, t_range)?;
            let text = match cfg.output_format {
                OutputFormat::Json => json(&rep),
                OutputFormat::Table => rep.render_table(),
            };
            emit(&text, &cli.global.output)?;
            Ok(0)
        }
        Command::VerifyPaper { .. } => {
            let rep = verify(&cfg.context, &cfg.family, cfg.t_grid_density)?;
            let text = match cfg.output_format {
                OutputFormat::Json => json(&rep),
                OutputFormat::Table => rep.render_table(),
            };
            emit(&text, &cli.global.output)?;
            Ok(if rep.all_pass() { 0 } else { EXIT_CHECK_FAILED })
        }
        Command::Descent { class, t } => {
            if cfg.context.degree != 10 {
                return Err(usage("descent is defined for the degree 10 lattice only"));
            }
            let out = match (class.mukai, class.ku) {
                (Some(w), _) => Descent::of_mukai(&cfg.family, &w, t)?,
                (None, Some(x)) => Descent::of_ku(&cfg.family, &x, t)?,
                (None, None) => unreachable!("clap enforces one class"),
            };
            let text = match cfg.output_format {
                OutputFormat::Json => json(&out),
                OutputFormat::Table => out.render_table(),
            };
            emit(&text, &cli.global.output)?;
            Ok(0)
        }
    })
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
