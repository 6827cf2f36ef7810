//! `gradedlie`: reports on weight-graded Lie algebras.
//!
//! Exit codes: 0 success, 1 domain error, 2 usage or parse error.

mod commands;
mod render;

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use gradedlie::lieco::MAX_DEGREE;
use gradedlie::textfmt::{parse_element_file, parse_presentation};
use gradedlie::wcomp::{FieldSignature, Variant, WeightedCompletionInput, DEFAULT_WEIGHT_BOUND};
use serde::Deserialize;

use render::{Format, Report};

/// Largest weight magnitude accepted on the command line.
const SAFE_WEIGHT: i64 = 40;

#[derive(Parser)]
#[command(name = "gradedlie", version, about = "Exact reports on weight-graded Lie algebras")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Output encoding.
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    format: Format,
    /// Write the report here instead of stdout.
    #[arg(long, short, global = true)]
    output: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum)]
enum VariantArg {
    Soule,
    Crystalline,
}

#[derive(Args)]
struct SigArgs {
    /// Real places.
    #[arg(long, default_value_t = 1)]
    r1: u32,
    /// Complex places.
    #[arg(long, default_value_t = 0)]
    r2: u32,
    /// Number of removed primes.
    #[arg(long = "s", default_value_t = 0)]
    s: u32,
    #[arg(long, value_enum, default_value_t = VariantArg::Soule)]
    variant: VariantArg,
}

impl SigArgs {
    fn signature(&self) -> gradedlie::Result<FieldSignature> {
        let variant = match self.variant {
            VariantArg::Soule => Variant::Soule,
            VariantArg::Crystalline => Variant::Crystalline,
        };
        FieldSignature::new(self.r1, self.r2, self.s, variant)
    }
}

#[derive(Subcommand)]
enum Command {
    /// d_n and h1 per twist n.
    Dims {
        #[command(flatten)]
        sig: SigArgs,
        #[arg(long, default_value_t = 20)]
        n_max: u32,
    },
    /// Generators and graded dimensions of the free motivic Lie algebra.
    MotivicLie {
        #[command(flatten)]
        sig: SigArgs,
        #[arg(long, default_value_t = DEFAULT_WEIGHT_BOUND, allow_negative_numbers = true)]
        weight_bound: i64,
    },
    /// Chevalley-Eilenberg cohomology of a presentation file.
    Cohomology {
        file: PathBuf,
        #[arg(long, default_value_t = 2)]
        max_degree: usize,
        /// Overrides the file's bound line.
        #[arg(long, allow_negative_numbers = true)]
        weight_bound: Option<i64>,
        /// Gap N for the weight-vanishing check; defaults to the least
        /// generator weight magnitude.
        #[arg(long)]
        gap: Option<u32>,
    },
    /// Generation report for Ihara derivations.
    Galois {
        /// Use the depth-one models f3, f5, ... (the default).
        #[arg(long, conflicts_with = "elements")]
        model: bool,
        /// Element file with `label@degree: expression` lines.
        #[arg(long)]
        elements: Option<PathBuf>,
        #[arg(long, default_value_t = 12)]
        degree_max: u32,
        /// Work in Der / ad.
        #[arg(long)]
        modulo_inner: bool,
    },
    /// The abelianized quotient next to one copy of Q(n) per weight.
    Polylog {
        #[command(flatten)]
        sig: SigArgs,
        #[arg(long, default_value_t = DEFAULT_WEIGHT_BOUND, allow_negative_numbers = true)]
        weight_bound: i64,
    },
    /// Presentation of a weighted completion from a TOML file.
    Completion {
        config: PathBuf,
        /// Overrides the gap N.
        #[arg(long)]
        gap: Option<u32>,
    },
    /// Ext^m(Q, Q(n)) for n <= n-max, m <= m-max.
    Ext {
        #[command(flatten)]
        sig: SigArgs,
        #[arg(long, default_value_t = 12)]
        n_max: u32,
        #[arg(long, default_value_t = 2)]
        m_max: usize,
    },
    /// Dimensions of derivations, inner and outer, of the algebra on x, y.
    Outder {
        #[arg(long, default_value_t = -12, allow_negative_numbers = true)]
        weight_bound: i64,
    },
}

enum Failure {
    Usage(String),
    Domain(String),
}

impl From<gradedlie::Error> for Failure {
    fn from(e: gradedlie::Error) -> Self {
        if e.is_parse() {
            Failure::Usage(e.to_string())
        } else {
            Failure::Domain(e.to_string())
        }
    }
}

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure::Usage(format!("cannot read {}: {e}", path.display())))
}

fn check_weight(w: i64) -> Result<(), Failure> {
    if w.abs() > SAFE_WEIGHT {
        return Err(Failure::Usage(format!("|weight bound| must be at most {SAFE_WEIGHT}, got {w}")));
    }
    Ok(())
}

/// Completion config: either a `[signature]` table or explicit `[[data]]`.
#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct CompletionConfig {
    signature: Option<FieldSignature>,
    data: Option<Vec<gradedlie::wcomp::IrreducibleCohomologyDatum>>,
    gap: Option<u32>,
    weight_bound: Option<i64>,
}

fn completion_input(text: &str, gap: Option<u32>) -> Result<WeightedCompletionInput, Failure> {
    let cfg: CompletionConfig = toml::from_str(text).map_err(|e| Failure::Usage(format!("config: {e}")))?;
    let bound = cfg.weight_bound.unwrap_or(DEFAULT_WEIGHT_BOUND);
    check_weight(bound)?;
    let mut input = match (cfg.signature, cfg.data) {
        (Some(sig), None) => WeightedCompletionInput::from_signature(&sig, bound)?,
        (None, Some(data)) => WeightedCompletionInput {
            data,
            gap: Default::default(),
            weight_bound: bound,
        },
        _ => return Err(Failure::Usage("config needs exactly one of `signature` and `data`".into())),
    };
    input.gap = gap.or(cfg.gap).unwrap_or(gradedlie::wcomp::DEFAULT_GAP);
    Ok(input)
}

fn run(command: Command) -> Result<Report, Failure> {
    Ok(match command {
        Command::Dims { sig, n_max } => commands::dims(&sig.signature()?, n_max)?,
        Command::MotivicLie { sig, weight_bound } => {
            check_weight(weight_bound)?;
            commands::motivic_lie(&sig.signature()?, weight_bound)?
        }
        Command::Cohomology {
            file,
            max_degree,
            weight_bound,
            gap,
        } => {
            if max_degree > MAX_DEGREE {
                return Err(Failure::Usage(format!("--max-degree is at most {MAX_DEGREE}")));
            }
            let pres = parse_presentation(&read(&file)?, weight_bound)
                .map_err(|e| Failure::from(e).with_path(&file))?;
            check_weight(pres.weight_bound())?;
            commands::cohomology(&pres, max_degree, gap)?
        }
        Command::Galois {
            model: _,
            elements,
            degree_max,
            modulo_inner,
        } => {
            check_weight(2 * degree_max as i64)?;
            match elements {
                Some(path) => {
                    let v = parse_element_file(&read(&path)?).map_err(|e| Failure::from(e).with_path(&path))?;
                    commands::galois(Some(&v), degree_max, modulo_inner)?
                }
                None => commands::galois(None, degree_max, modulo_inner)?,
            }
        }
        Command::Polylog { sig, weight_bound } => {
            check_weight(weight_bound)?;
            commands::polylog(&sig.signature()?, weight_bound)?
        }
        Command::Completion { config, gap } => commands::completion(&completion_input(&read(&config)?, gap)?)?,
        Command::Ext { sig, n_max, m_max } => {
            check_weight(2 * n_max as i64)?;
            if m_max > MAX_DEGREE {
                return Err(Failure::Usage(format!("--m-max is at most {MAX_DEGREE}")));
            }
            commands::ext(&sig.signature()?, n_max, m_max)?
        }
        Command::Outder { weight_bound } => {
            check_weight(weight_bound)?;
            commands::outder(weight_bound)?
        }
    })
}

impl Failure {
    fn with_path(self, path: &Path) -> Self {
        match self {
            Failure::Usage(m) => Failure::Usage(format!("{}: {m}", path.display())),
            d => d,
        }
    }
}

fn set_threads() -> Result<(), Failure> {
    let Ok(v) = std::env::var("WORKBENCH_THREADS") else {
        return Ok(());
    };
    let n: usize = v
        .parse()
        .ok()
        .filter(|&n| n > 0)
        .ok_or_else(|| Failure::Usage(format!("WORKBENCH_THREADS must be a positive integer, got `{v}`")))?;
    rayon::ThreadPoolBuilder::new()
        .num_threads(n)
        .build_global()
        .map_err(|e| Failure::Usage(e.to_string()))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = set_threads().and_then(|()| {
        let report = run(cli.command)?;
        let out = report.render(cli.format);
        match &cli.output {
            Some(path) => fs::write(path, out).map_err(|e| Failure::Domain(format!("cannot write {}: {e}", path.display()))),
            None => {
                print!("{out}");
                Ok(())
            }
        }
    });
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Usage(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(2)
        }
        Err(Failure::Domain(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(1)
        }
    }
}
