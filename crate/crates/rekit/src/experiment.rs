//! Experiment pipeline: generate expressions, run every construction and
//! reduction, collect measures, aggregate.
//!
//! Records are computed independently per sample (each sample owns a random
//! stream derived from the seed, the size, and its index), so runs are
//! reproducible and parallelize freely; aggregation folds records in index
//! order.

use std::fmt;

use rayon::prelude::*;

use crate::alphabet::Alphabet;
use crate::automata::Nfa;
use crate::derivatives::pd_automaton;
use crate::generate::{GenerateError, ReGenerator};
use crate::glushkov::{follow_automaton, position_automaton};
use crate::oracle::{first_difference, Lang};
use crate::reduction::{l_equiv, r_equiv};
use crate::syntax::parse;

/// The construction an automaton came from.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Construction {
    /// Position automaton.
    Pos,
    /// Position automaton of the star normal form.
    Psnf,
    /// Follow automaton.
    Follow,
    /// Partial derivative automaton.
    Pd,
}

impl Construction {
    pub const ALL: [Construction; 4] =
        [Construction::Pos, Construction::Psnf, Construction::Follow, Construction::Pd];

    pub fn name(self) -> &'static str {
        match self {
            Construction::Pos => "pos",
            Construction::Psnf => "psnf",
            Construction::Follow => "follow",
            Construction::Pd => "pd",
        }
    }

    fn index(self) -> usize {
        match self {
            Construction::Pos => 0,
            Construction::Psnf => 1,
            Construction::Follow => 2,
            Construction::Pd => 3,
        }
    }
}

/// The invariant-equivalence reduction applied to an automaton.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Reduction {
    None,
    Right,
    Left,
    LeftRight,
}

impl Reduction {
    pub const ALL: [Reduction; 4] =
        [Reduction::None, Reduction::Right, Reduction::Left, Reduction::LeftRight];

    pub fn suffix(self) -> &'static str {
        match self {
            Reduction::None => "",
            Reduction::Right => "_r",
            Reduction::Left => "_l",
            Reduction::LeftRight => "_lr",
        }
    }

    fn index(self) -> usize {
        match self {
            Reduction::None => 0,
            Reduction::Right => 1,
            Reduction::Left => 2,
            Reduction::LeftRight => 3,
        }
    }
}

/// Size and shape flags of one automaton.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct NfaMeasures {
    pub states: usize,
    pub transitions: usize,
    pub deterministic: bool,
    pub homogeneous: bool,
}

impl NfaMeasures {
    pub fn of(nfa: &Nfa) -> NfaMeasures {
        NfaMeasures {
            states: nfa.state_count(),
            transitions: nfa.transition_count(),
            deterministic: nfa.is_deterministic(),
            homogeneous: nfa.is_homogeneous(),
        }
    }

    pub fn size(&self) -> usize {
        self.states + self.transitions
    }
}

/// Everything measured for one sampled expression.
#[derive(Clone, Debug)]
pub struct SampleRecord {
    pub index: usize,
    pub text: String,
    pub size: usize,
    pub alph: usize,
    pub rpn: usize,
    pub reduced: bool,
    pub snf: bool,
    /// Whether the star normal form of the expression is reduced.
    pub snf_reduced: bool,
    /// States of the minimal trimmed DFA.
    pub sc: usize,
    /// Transitions of the minimal trimmed DFA.
    pub tc: usize,
    measures: [[NfaMeasures; 4]; 4],
}

impl SampleRecord {
    pub fn nfa(&self, c: Construction, r: Reduction) -> &NfaMeasures {
        &self.measures[c.index()][r.index()]
    }
}

/// How much language checking runs inside an experiment.
#[derive(Clone, Debug)]
pub struct OracleConfig {
    /// Bounded-equivalence word length.
    pub max_len: usize,
    /// Check every n-th record (1 checks everything).
    pub sample_every: usize,
}

impl Default for OracleConfig {
    fn default() -> OracleConfig {
        OracleConfig { max_len: 6, sample_every: 20 }
    }
}

#[derive(Clone, Debug)]
pub struct ExperimentConfig {
    pub sizes: Vec<usize>,
    pub alphabet_size: usize,
    pub samples: usize,
    pub seed: u64,
    pub oracle: OracleConfig,
}

#[derive(Clone, Debug)]
pub enum ExperimentError {
    Generate(GenerateError),
    EmptyRun,
    BadExpression { size: usize, index: usize, message: String },
    OracleMismatch { size: usize, index: usize, text: String, construction: String, word: String },
    BadCsv(String),
}

impl fmt::Display for ExperimentError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExperimentError::Generate(e) => write!(f, "generation failed: {e}"),
            ExperimentError::EmptyRun => write!(f, "experiment needs at least one sample"),
            ExperimentError::BadExpression { size, index, message } => {
                write!(f, "sample {index} of size {size} did not parse: {message}")
            }
            ExperimentError::OracleMismatch { size, index, text, construction, word } => write!(
                f,
                "language mismatch for sample {index} of size {size} ({text}): {construction} differs on {word:?}"
            ),
            ExperimentError::BadCsv(msg) => write!(f, "bad experiment csv: {msg}"),
        }
    }
}

impl std::error::Error for ExperimentError {}

impl From<GenerateError> for ExperimentError {
    fn from(e: GenerateError) -> ExperimentError {
        ExperimentError::Generate(e)
    }
}

/// Computes the full record for one expression text.
pub fn compute_record(
    index: usize,
    size: usize,
    text: &str,
    alphabet: &Alphabet,
    oracle_len: Option<usize>,
) -> Result<SampleRecord, ExperimentError> {
    let re = parse(text, alphabet).map_err(|e| ExperimentError::BadExpression {
        size,
        index,
        message: e.to_string(),
    })?;
    let measures = re.measures();
    let snf_form = re.to_snf();

    let pos = position_automaton(&re, alphabet);
    let psnf = position_automaton(&snf_form, alphabet);
    let follow = follow_automaton(&re, alphabet);
    let pd = pd_automaton(&re, alphabet);
    debug_assert_eq!(pos.state_count(), measures.alph + 1);

    let minimal = pd.determinize().minimize();

    if let Some(max_len) = oracle_len {
        let check = |construction: &str, nfa: &Nfa| -> Result<(), ExperimentError> {
            let diff = first_difference(Lang::Re(&re, alphabet), Lang::Auto(nfa), max_len)
                .expect("construction shares the expression's alphabet");
            match diff {
                None => Ok(()),
                Some(word) => Err(ExperimentError::OracleMismatch {
                    size,
                    index,
                    text: text.to_owned(),
                    construction: construction.to_owned(),
                    word: alphabet.word_string(&word),
                }),
            }
        };
        check("pos", &pos)?;
        check("follow", &follow)?;
        check("pd", &pd)?;
        check("minimal dfa", &minimal.to_nfa())?;
    }

    let mut grid =
        [[NfaMeasures { states: 0, transitions: 0, deterministic: false, homogeneous: false }; 4];
            4];
    for (c, base) in [
        (Construction::Pos, &pos),
        (Construction::Psnf, &psnf),
        (Construction::Follow, &follow),
        (Construction::Pd, &pd),
    ] {
        let left = l_equiv(base);
        grid[c.index()][Reduction::None.index()] = NfaMeasures::of(base);
        grid[c.index()][Reduction::Right.index()] = NfaMeasures::of(&r_equiv(base));
        grid[c.index()][Reduction::LeftRight.index()] = NfaMeasures::of(&r_equiv(&left));
        grid[c.index()][Reduction::Left.index()] = NfaMeasures::of(&left);
    }

    Ok(SampleRecord {
        index,
        text: text.to_owned(),
        size: measures.size,
        alph: measures.alph,
        rpn: measures.rpn,
        reduced: re.is_reduced(),
        snf: re.is_snf(),
        snf_reduced: snf_form.is_reduced(),
        sc: minimal.state_count(),
        tc: minimal.transition_count(),
        measures: grid,
    })
}

/// All records and aggregates for one sample size.
#[derive(Clone, Debug)]
pub struct SampleStats {
    pub size: usize,
    pub alphabet_size: usize,
    pub seed: u64,
    pub oracle_checked: usize,
    pub oracle_len: usize,
    pub records: Vec<SampleRecord>,
}

/// Arithmetic mean and population standard deviation (divisor `n`).
///
/// `None` on empty input.
pub fn mean_std(values: impl IntoIterator<Item = f64>) -> Option<(f64, f64)> {
    let values: Vec<f64> = values.into_iter().collect();
    if values.is_empty() {
        return None;
    }
    let n = values.len() as f64;
    let mean = values.iter().sum::<f64>() / n;
    let var = values.iter().map(|v| (v - mean) * (v - mean)).sum::<f64>() / n;
    Some((mean, var.sqrt()))
}

/// Fraction of true flags, as a percentage.
pub fn percentage(flags: impl IntoIterator<Item = bool>) -> Option<f64> {
    let flags: Vec<bool> = flags.into_iter().collect();
    if flags.is_empty() {
        return None;
    }
    Some(100.0 * flags.iter().filter(|&&b| b).count() as f64 / flags.len() as f64)
}

/// Named aggregate columns of one [`SampleStats`], in a stable order.
#[derive(Clone, Debug, PartialEq)]
pub struct Summary {
    columns: Vec<(String, f64)>,
}

impl Summary {
    pub fn get(&self, name: &str) -> Option<f64> {
        self.columns.iter().find(|(n, _)| n == name).map(|(_, v)| *v)
    }

    pub fn columns(&self) -> impl Iterator<Item = (&str, f64)> {
        self.columns.iter().map(|(n, v)| (n.as_str(), *v))
    }

    /// Absolute difference of every shared column is below `tol`.
    pub fn approx_eq(&self, other: &Summary, tol: f64) -> bool {
        self.columns.len() == other.columns.len()
            && self.columns.iter().zip(&other.columns).all(|((na, va), (nb, vb))| {
                na == nb && ((va - vb).abs() <= tol || (va.is_nan() && vb.is_nan()))
            })
    }
}

impl SampleStats {
    pub fn summary(&self) -> Summary {
        let rec = &self.records;
        let mut columns: Vec<(String, f64)> = Vec::new();
        let mut push = |name: &str, value: f64| columns.push((name.to_owned(), value));

        push("size", self.size as f64);
        push("alphabet", self.alphabet_size as f64);
        push("samples", rec.len() as f64);

        let stat = |f: &dyn Fn(&SampleRecord) -> f64| {
            mean_std(rec.iter().map(f)).expect("records are nonempty")
        };
        let (alph_avg, alph_std) = stat(&|r| r.alph as f64);
        push("alph_avg", alph_avg);
        push("alph_std", alph_std);
        let (rpn_avg, rpn_std) = stat(&|r| r.rpn as f64);
        push("rpn_avg", rpn_avg);
        push("rpn_std", rpn_std);
        push("rpn_over_alph", rpn_avg / alph_avg);
        push("reduced_pct", percentage(rec.iter().map(|r| r.reduced)).unwrap());
        push("snf_pct", percentage(rec.iter().map(|r| r.snf)).unwrap());
        push("snfr_pct", percentage(rec.iter().map(|r| r.snf_reduced)).unwrap());
        let (sc_avg, sc_std) = stat(&|r| r.sc as f64);
        push("sc_avg", sc_avg);
        push("sc_std", sc_std);
        let (tc_avg, tc_std) = stat(&|r| r.tc as f64);
        push("tc_avg", tc_avg);
        push("tc_std", tc_std);
        push("sc_over_alph", sc_avg / alph_avg);
        push("tc_over_alph", tc_avg / alph_avg);

        for c in Construction::ALL {
            for red in Reduction::ALL {
                let prefix = format!("{}{}", c.name(), red.suffix());
                let (avg, std) = stat(&|r| r.nfa(c, red).states as f64);
                push(&format!("{prefix}_states_avg"), avg);
                push(&format!("{prefix}_states_std"), std);
                let (avg, std) = stat(&|r| r.nfa(c, red).transitions as f64);
                push(&format!("{prefix}_trans_avg"), avg);
                push(&format!("{prefix}_trans_std"), std);
                push(
                    &format!("{prefix}_det_pct"),
                    percentage(rec.iter().map(|r| r.nfa(c, red).deterministic)).unwrap(),
                );
                push(
                    &format!("{prefix}_hom_pct"),
                    percentage(rec.iter().map(|r| r.nfa(c, red).homogeneous)).unwrap(),
                );
            }
        }

        let avg_of = |c: Construction, f: &dyn Fn(&NfaMeasures) -> f64| {
            mean_std(rec.iter().map(|r| f(r.nfa(c, Reduction::None)))).unwrap().0
        };
        let alph1 = alph_avg + 1.0;
        let trans_pos = avg_of(Construction::Pos, &|m| m.transitions as f64);
        let states_f = avg_of(Construction::Follow, &|m| m.states as f64);
        let trans_f = avg_of(Construction::Follow, &|m| m.transitions as f64);
        let states_pd = avg_of(Construction::Pd, &|m| m.states as f64);
        let trans_pd = avg_of(Construction::Pd, &|m| m.transitions as f64);
        push("trans_pos_over_alph1", trans_pos / alph1);
        push("states_follow_over_alph1", states_f / alph1);
        push("trans_follow_over_alph1", trans_f / alph1);
        push("states_pd_over_alph1", states_pd / alph1);
        push("trans_pd_over_alph1", trans_pd / alph1);
        push("trans_pd_over_trans_pos", trans_pd / trans_pos);
        push("states_pd_over_states_follow", states_pd / states_f);
        push("trans_pd_over_trans_follow", trans_pd / trans_f);

        // Relative size decrease of the left-right reduction on the partial
        // derivative automaton, over reduced expressions in star normal form.
        let decreases: Vec<f64> = rec
            .iter()
            .filter(|r| r.reduced && r.snf)
            .map(|r| {
                let before = r.nfa(Construction::Pd, Reduction::None).size() as f64;
                let after = r.nfa(Construction::Pd, Reduction::LeftRight).size() as f64;
                100.0 * (before - after) / before
            })
            .collect();
        push("pd_lr_decrease_samples", decreases.len() as f64);
        push(
            "pd_lr_size_decrease_pct",
            mean_std(decreases.iter().copied()).map_or(0.0, |(m, _)| m),
        );

        push("oracle_checked", self.oracle_checked as f64);
        push("oracle_len", self.oracle_len as f64);

        Summary { columns }
    }
}

/// Runs the full pipeline for every size in the configuration.
pub fn run_experiment(cfg: &ExperimentConfig) -> Result<Vec<SampleStats>, ExperimentError> {
    if cfg.samples == 0 || cfg.sizes.is_empty() {
        return Err(ExperimentError::EmptyRun);
    }
    let alphabet = Alphabet::of_size(cfg.alphabet_size);
    let mut out = Vec::with_capacity(cfg.sizes.len());
    for &size in &cfg.sizes {
        let generator = ReGenerator::new(cfg.alphabet_size, size);
        // Fail early when the size is impossible instead of once per sample.
        if *generator.count(size)? == num_bigint::BigUint::from(0u32) {
            return Err(GenerateError::NoWords { length: size }.into());
        }
        let records: Result<Vec<SampleRecord>, ExperimentError> = (0..cfg.samples)
            .into_par_iter()
            .map(|index| {
                let mut rng = crate::generate::record_rng(cfg.seed, size, index);
                let text = generator.sample_text(size, &mut rng)?;
                let checked = index % cfg.oracle.sample_every == 0;
                compute_record(index, size, &text, &alphabet, checked.then_some(cfg.oracle.max_len))
            })
            .collect();
        let records = records?;
        let oracle_checked = (0..cfg.samples).filter(|i| i % cfg.oracle.sample_every == 0).count();
        out.push(SampleStats {
            size,
            alphabet_size: cfg.alphabet_size,
            seed: cfg.seed,
            oracle_checked,
            oracle_len: cfg.oracle.max_len,
            records,
        });
    }
    Ok(out)
}

fn format_value(v: f64) -> String {
    if v.fract() == 0.0 && v.abs() < 1e12 {
        format!("{}", v as i64)
    } else {
        format!("{v:.6}")
    }
}

/// Renders one CSV row per sample size, with a header.
pub fn to_csv(stats: &[SampleStats]) -> String {
    let mut out = String::new();
    if stats.is_empty() {
        return out;
    }
    let summaries: Vec<Summary> = stats.iter().map(SampleStats::summary).collect();
    let header: Vec<&str> = summaries[0].columns().map(|(n, _)| n).collect();
    out.push_str(&header.join(","));
    out.push('\n');
    for s in &summaries {
        let row: Vec<String> = s.columns().map(|(_, v)| format_value(v)).collect();
        out.push_str(&row.join(","));
        out.push('\n');
    }
    out
}

/// Parses [`to_csv`] output back into one [`Summary`] per row.
pub fn summaries_from_csv(text: &str) -> Result<Vec<Summary>, ExperimentError> {
    let mut lines = text.lines();
    let header = lines.next().ok_or_else(|| ExperimentError::BadCsv("missing header".into()))?;
    let names: Vec<&str> = header.split(',').collect();
    let mut out = Vec::new();
    for (i, line) in lines.enumerate() {
        if line.is_empty() {
            continue;
        }
        let fields: Vec<&str> = line.split(',').collect();
        if fields.len() != names.len() {
            return Err(ExperimentError::BadCsv(format!(
                "row {} has {} fields, header has {}",
                i + 2,
                fields.len(),
                names.len()
            )));
        }
        let mut columns = Vec::with_capacity(names.len());
        for (name, field) in names.iter().zip(&fields) {
            let value: f64 = field
                .parse()
                .map_err(|_| ExperimentError::BadCsv(format!("bad number {field:?} in {name}")))?;
            columns.push((name.to_string(), value));
        }
        out.push(Summary { columns });
    }
    Ok(out)
}
