//! Command-line interface: dataset generation, expression-to-NFA
//! conversion, NFA reduction, measures, bounded-language checks, and the
//! experiment pipeline.
//!
//! Exit codes: 0 on success, 1 on a failed check or runtime error, 2 on
//! usage errors.

use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use rekit::experiment::{ExperimentConfig, OracleConfig};
use rekit::oracle::Lang;
use rekit::{
    emit_dataset, follow_automaton, infer_alphabet, parse, pd_automaton, position_automaton,
    position_automaton_snf, render_dataset, Nfa, Regex,
};

#[derive(Parser)]
#[command(
    name = "rekit",
    about = "Regular expressions, small epsilon-free NFAs, and experiments over them",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Method {
    /// Position automaton.
    Pos,
    /// Position automaton of the star normal form.
    Psnf,
    /// Follow automaton.
    Follow,
    /// Partial derivative automaton.
    Pd,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum OutputFormat {
    Json,
    Dot,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Equivalence {
    /// Coarsest right-invariant equivalence.
    R,
    /// Coarsest left-invariant equivalence.
    L,
    /// Left then right.
    Lr,
}

#[derive(Args)]
struct SeedArg {
    /// Random seed; falls back to REKIT_SEED.
    #[arg(long, env = "REKIT_SEED")]
    seed: u64,
}

#[derive(Subcommand)]
enum Command {
    /// Generate a dataset of uniformly random expressions.
    Gen {
        /// Ordinary length of every generated expression.
        #[arg(long)]
        size: usize,
        /// Number of alphabet letters.
        #[arg(long)]
        alphabet: usize,
        /// Number of expressions.
        #[arg(long)]
        count: usize,
        #[command(flatten)]
        seed: SeedArg,
        /// Output file (stdout when absent).
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Convert an expression to an NFA.
    Convert {
        #[arg(long, value_enum)]
        method: Method,
        /// Expression text; its alphabet is inferred from the letters used.
        #[arg(long)]
        re: String,
        #[arg(long, value_enum, default_value = "json")]
        format: OutputFormat,
    },
    /// Reduce an automaton by an invariant equivalence.
    Reduce {
        #[arg(long, value_enum)]
        equiv: Equivalence,
        /// Automaton JSON file.
        #[arg(long = "in")]
        input: PathBuf,
    },
    /// Print the measures of an expression.
    Measure {
        #[arg(long)]
        re: String,
    },
    /// Generate samples, run all constructions and reductions, emit CSV.
    Experiment {
        /// Comma-separated expression sizes.
        #[arg(long, value_delimiter = ',', required = true)]
        sizes: Vec<usize>,
        #[arg(long)]
        alphabet: usize,
        /// Samples per size.
        #[arg(long)]
        samples: usize,
        #[command(flatten)]
        seed: SeedArg,
        /// CSV output file.
        #[arg(long)]
        csv: PathBuf,
        /// Word-length bound for the in-run language checks.
        #[arg(long, default_value_t = 6)]
        oracle_len: usize,
        /// Check every record instead of one in twenty.
        #[arg(long)]
        full_oracle: bool,
    },
    /// Check a construction against the expression's bounded language.
    Oracle {
        #[arg(long)]
        re: String,
        #[arg(long, value_enum, default_value = "pd")]
        method: Method,
        #[arg(long)]
        max_len: usize,
    },
}

fn build(method: Method, re: &Regex, alphabet: &rekit::Alphabet) -> Nfa {
    match method {
        Method::Pos => position_automaton(re, alphabet),
        Method::Psnf => position_automaton_snf(re, alphabet),
        Method::Follow => follow_automaton(re, alphabet),
        Method::Pd => pd_automaton(re, alphabet),
    }
}

fn parse_inferred(text: &str) -> Result<(Regex, rekit::Alphabet), String> {
    let alphabet = infer_alphabet(text).map_err(|e| e.to_string())?;
    let re = parse(text, &alphabet).map_err(|e| e.to_string())?;
    Ok((re, alphabet))
}

/// Bad command-line values exit 2; failed runs exit 1.
enum CliError {
    Usage(String),
    Run(String),
}

fn run(cli: Cli) -> Result<(), CliError> {
    match cli.command {
        Command::Gen { size, alphabet, count, seed, out } => {
            if alphabet == 0 {
                return Err(CliError::Usage("--alphabet must be at least 1".into()));
            }
            let records = emit_dataset(alphabet, size, count, seed.seed)
                .map_err(|e| CliError::Usage(e.to_string()))?;
            let text = render_dataset(&records);
            match out {
                Some(path) => fs::write(&path, text)
                    .map_err(|e| CliError::Run(format!("writing {}: {e}", path.display())))?,
                None => print!("{text}"),
            }
            Ok(())
        }
        Command::Convert { method, re, format } => {
            let (re, alphabet) = parse_inferred(&re).map_err(CliError::Usage)?;
            let nfa = build(method, &re, &alphabet);
            match format {
                OutputFormat::Json => println!("{}", nfa.to_json()),
                OutputFormat::Dot => print!("{}", nfa.to_dot()),
            }
            Ok(())
        }
        Command::Reduce { equiv, input } => {
            let text = fs::read_to_string(&input)
                .map_err(|e| CliError::Usage(format!("reading {}: {e}", input.display())))?;
            let nfa = Nfa::from_json(&text).map_err(|e| CliError::Usage(e.to_string()))?;
            let reduced = match equiv {
                Equivalence::R => rekit::r_equiv(&nfa),
                Equivalence::L => rekit::l_equiv(&nfa),
                Equivalence::Lr => rekit::lr_equiv(&nfa),
            };
            println!("{}", reduced.to_json());
            Ok(())
        }
        Command::Measure { re } => {
            let (re, alphabet) = parse_inferred(&re).map_err(CliError::Usage)?;
            let m = re.measures();
            let minimal = pd_automaton(&re, &alphabet).determinize().minimize();
            let doc = serde_json::json!({
                "size": m.size,
                "alph": m.alph,
                "rpn": m.rpn,
                "reduced": re.is_reduced(),
                "snf": re.is_snf(),
                "sc": minimal.state_count(),
                "tc": minimal.transition_count(),
            });
            println!("{}", serde_json::to_string_pretty(&doc).expect("static document"));
            Ok(())
        }
        Command::Experiment { sizes, alphabet, samples, seed, csv, oracle_len, full_oracle } => {
            if alphabet == 0 {
                return Err(CliError::Usage("--alphabet must be at least 1".into()));
            }
            let cfg = ExperimentConfig {
                sizes,
                alphabet_size: alphabet,
                samples,
                seed: seed.seed,
                oracle: OracleConfig {
                    max_len: oracle_len,
                    sample_every: if full_oracle { 1 } else { 20 },
                },
            };
            let stats = rekit::run_experiment(&cfg).map_err(|e| CliError::Run(e.to_string()))?;
            for s in &stats {
                let summary = s.summary();
                eprintln!(
                    "size {:>4}: {} samples, alph {:.1}, snf {:.1}%, |Q_pd| {:.1}, sc {:.1}",
                    s.size,
                    s.records.len(),
                    summary.get("alph_avg").unwrap_or(f64::NAN),
                    summary.get("snf_pct").unwrap_or(f64::NAN),
                    summary.get("pd_states_avg").unwrap_or(f64::NAN),
                    summary.get("sc_avg").unwrap_or(f64::NAN),
                );
            }
            fs::write(&csv, rekit::to_csv(&stats))
                .map_err(|e| CliError::Run(format!("writing {}: {e}", csv.display())))?;
            Ok(())
        }
        Command::Oracle { re, method, max_len } => {
            let (re, alphabet) = parse_inferred(&re).map_err(CliError::Usage)?;
            let nfa = build(method, &re, &alphabet);
            let difference =
                rekit::first_difference(Lang::Re(&re, &alphabet), Lang::Auto(&nfa), max_len)
                    .expect("the construction shares the expression's alphabet");
            match difference {
                None => {
                    println!("PASS: languages agree on all words up to length {max_len}");
                    Ok(())
                }
                Some(word) => Err(CliError::Run(format!(
                    "FAIL: languages differ on {:?}",
                    alphabet.word_string(&word)
                ))),
            }
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(CliError::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(CliError::Run(msg)) => {
            eprintln!("{msg}");
            ExitCode::from(1)
        }
    }
}
