//! Command-line surface: argument parsing, the commands, and report emission.
//!
//! Exit codes: 0 success or accepted, 1 usage, 2 I/O or parse failure,
//! 3 verification failure.

mod doc;
mod golden;
mod golden_data;
mod report;
mod suite;

use std::ffi::OsString;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};
use thiserror::Error as ThisError;

use crate::error::Error;
use crate::repcat::{build_distinguished, build_distinguished_logged, distinguished_ranks, Representation};
use crate::spectral::{build_q_family_of, build_q_of, overlap_eigvec_p12_of, q_residuals, spectrum_sum34_of, build_q_eig_of};
use crate::strategy::{
    born_correlation, check_synchronous, closedform_correlation_sn, closedform_correlation_snr, strategy_partition,
    strategy_sn_of, strategy_snr, Strategy,
};
use crate::verifier::{adversarial_strategy_with, dilate, verify_candidate_seeded, AdversarialState};

pub use doc::{parse, to_json, CorrelationDoc, CorrelationRow, MatrixDoc, Num, StrategyFile, STRATEGY_FILE_VERSION};
pub use golden::{golden_cases, GoldenCase, GoldenData};
pub use report::{
    BuildDoc, CheckDoc, CheckItem, CorrelateDoc, Emit, GoldenCaseDoc, GoldenDoc, OverlapDoc, QDoc, ResidualsDoc,
    SpectrumDoc, VerifyDoc,
};
pub use suite::invariant_suite;

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_IO: i32 = 2;
pub const EXIT_FAILED: i32 = 3;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Json,
    Csv,
    Pretty,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum StateKind {
    Random,
    Maximal,
}

#[derive(Parser, Debug)]
#[command(name = "selftest", version, about = "Distinguished projection quadruples and self-testing strategies")]
pub struct Cli {
    /// Numerical tolerance.
    #[arg(long, global = true, env = "TOL", default_value_t = 1e-9)]
    pub tol: f64,
    /// Seed for randomized steps.
    #[arg(long, global = true, env = "SEED", default_value_t = 0)]
    pub seed: u64,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    /// Write the report here instead of stdout.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Construct the distinguished quadruple of order n.
    Build {
        #[arg(long)]
        n: usize,
        /// Also emit Q^(n,r).
        #[arg(long, conflicts_with = "ranks")]
        r: Option<usize>,
        /// Also emit the PVM built from these ranks (summing to n).
        #[arg(long, value_delimiter = ',')]
        ranks: Option<Vec<usize>>,
    },
    /// Born-rule correlation next to its closed form.
    Correlate {
        #[arg(long)]
        n: usize,
        #[arg(long, conflicts_with = "ranks")]
        r: Option<usize>,
        #[arg(long, value_delimiter = ',')]
        ranks: Option<Vec<usize>>,
    },
    /// Spectrum of n(P3 + P4), the Q projections and the overlaps with P1, P2.
    Spectrum {
        #[arg(long)]
        n: usize,
    },
    /// Run every invariant check at order n.
    Verify {
        #[arg(long)]
        n: usize,
    },
    /// Verify a candidate strategy file against the strategy of order n.
    Check {
        #[arg(long)]
        strategy: PathBuf,
        #[arg(long)]
        n: usize,
        /// Expect a fifth input of party A with ranks (r, n - r).
        #[arg(long)]
        r: Option<usize>,
    },
    /// Compare constructions with the embedded reference matrices.
    Golden,
    /// Write a strategy file: the strategy of order n, optionally dilated or
    /// replaced by an adversarial direct sum.
    Export {
        #[arg(long)]
        n: usize,
        #[arg(long, conflicts_with = "ranks")]
        r: Option<usize>,
        #[arg(long, value_delimiter = ',')]
        ranks: Option<Vec<usize>>,
        /// Tensor with an ancilla of this dimension and rotate locally.
        #[arg(long, conflicts_with = "adversarial")]
        dilate: Option<usize>,
        /// Multiplicities of the four cyclic variants, e.g. 1,1,0,0.
        #[arg(long, value_delimiter = ',')]
        adversarial: Option<Vec<usize>>,
        #[arg(long, value_enum, default_value_t = StateKind::Random)]
        state: StateKind,
    },
}

/// Parameters embedded in every report.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    pub command: String,
    pub n: Option<usize>,
    pub r: Option<usize>,
    pub ranks: Option<Vec<usize>>,
    pub tol: Num,
    pub seed: u64,
    pub format: Format,
}

#[derive(Debug, ThisError)]
pub enum CliError {
    #[error("usage error: {0}")]
    Usage(String),
    #[error("i/o error: {0}")]
    Io(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("computation failed: {0}")]
    Compute(Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => EXIT_USAGE,
            CliError::Io(_) | CliError::Parse(_) => EXIT_IO,
            CliError::Compute(_) => EXIT_FAILED,
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        match e {
            Error::InvalidInput(m) => CliError::Usage(m),
            e => CliError::Compute(e),
        }
    }
}

/// Rendered report and whether the command succeeded.
#[derive(Clone, Debug)]
pub struct Outcome {
    pub text: String,
    pub passed: bool,
}

impl Cli {
    pub fn config(&self) -> RunConfig {
        let (name, n, r, ranks) = match &self.command {
            Command::Build { n, r, ranks } => ("build", Some(*n), *r, ranks.clone()),
            Command::Correlate { n, r, ranks } => ("correlate", Some(*n), *r, ranks.clone()),
            Command::Spectrum { n } => ("spectrum", Some(*n), None, None),
            Command::Verify { n } => ("verify", Some(*n), None, None),
            Command::Check { n, r, .. } => ("check", Some(*n), *r, None),
            Command::Golden => ("golden", None, None, None),
            Command::Export { n, r, ranks, .. } => ("export", Some(*n), *r, ranks.clone()),
        };
        RunConfig { command: name.into(), n, r, ranks, tol: Num(self.tol), seed: self.seed, format: self.format }
    }

    fn validate(&self) -> Result<(), CliError> {
        if !(self.tol.is_finite() && self.tol > 0.0) {
            return Err(CliError::Usage(format!("--tol must be positive and finite, got {}", self.tol)));
        }
        let cfg = self.config();
        if let Some(n) = cfg.n {
            if n == 0 {
                return Err(CliError::Usage("--n must be at least 1".into()));
            }
            if let Some(r) = cfg.r {
                if r == 0 || r >= n {
                    return Err(CliError::Usage(format!("--r must satisfy 1 <= r < n, got r = {r}, n = {n}")));
                }
            }
            if let Some(ranks) = &cfg.ranks {
                if ranks.contains(&0) || ranks.iter().sum::<usize>() != n {
                    return Err(CliError::Usage(format!("--ranks must be positive and sum to n = {n}, got {ranks:?}")));
                }
            }
        }
        if let Command::Export { dilate, adversarial, r, ranks, .. } = &self.command {
            if *dilate == Some(0) {
                return Err(CliError::Usage("--dilate must be at least 1".into()));
            }
            if let Some(m) = adversarial {
                if m.len() != 4 || m.iter().sum::<usize>() == 0 {
                    return Err(CliError::Usage(format!("--adversarial needs four counts, not all zero, got {m:?}")));
                }
                if r.is_some() || ranks.is_some() {
                    return Err(CliError::Usage("--adversarial has no fifth input; drop --r/--ranks".into()));
                }
            }
        }
        Ok(())
    }
}

/// Runs the parsed command and renders its report.
pub fn execute(cli: &Cli) -> Result<Outcome, CliError> {
    cli.validate()?;
    let cfg = cli.config();
    match &cli.command {
        Command::Build { n, r, ranks } => cmd_build(cfg, *n, *r, ranks.as_deref()),
        Command::Correlate { n, r, ranks } => cmd_correlate(cfg, *n, *r, ranks.as_deref()),
        Command::Spectrum { n } => cmd_spectrum(cfg, *n),
        Command::Verify { n } => cmd_verify(cfg, *n),
        Command::Check { strategy, n, r } => cmd_check(cfg, strategy, *n, *r),
        Command::Golden => cmd_golden(cfg),
        Command::Export { n, r, ranks, dilate, adversarial, state } => {
            cmd_export(cli, *n, *r, ranks.as_deref(), *dilate, adversarial.as_deref(), *state)
        }
    }
}

fn render<D: Emit>(doc: &D, format: Format, passed: bool) -> Result<Outcome, CliError> {
    let text = match format {
        Format::Json => to_json(doc).map_err(|e| CliError::Compute(Error::InvalidInput(e.to_string())))?,
        Format::Csv => doc.csv(),
        Format::Pretty => doc.pretty(),
    };
    Ok(Outcome { text, passed })
}

fn cmd_build(cfg: RunConfig, n: usize, r: Option<usize>, ranks: Option<&[usize]>) -> Result<Outcome, CliError> {
    let (rep, log) = build_distinguished_logged::<f64>(n)?;
    let res = rep.residuals();
    let q = r.map(|r| build_q_of(&rep, r).map(|q| MatrixDoc::from(&q.p))).transpose()?;
    let q_family = ranks
        .map(|ranks| build_q_family_of(&rep, ranks).map(|f| f.iter().map(MatrixDoc::from).collect()))
        .transpose()?;
    let golden = if n <= 6 {
        let data = GoldenData::embedded();
        let only_n = GoldenData {
            quadruples: data.quadruples.into_iter().filter(|(m, _)| *m == n).collect(),
            q_projections: Vec::new(),
        };
        golden_cases(&only_n, cfg.tol.0)?.first().map(GoldenCaseDoc::from)
    } else {
        None
    };
    let alpha = rep.alpha().as_exact().map(|a| a.to_string()).unwrap_or_default();
    let ranks_found = rep.ranks();
    let expected = distinguished_ranks(n);
    let passed = ranks_found == expected && golden.as_ref().is_none_or(|g| g.pass);
    let doc = BuildDoc {
        config: cfg,
        n,
        alpha,
        alpha_value: Num(rep.alpha().value()),
        ranks: ranks_found,
        expected_ranks: expected,
        residuals: ResidualsDoc {
            idempotent: Num(res.idempotent),
            symmetric: Num(res.symmetric),
            sum: Num(res.sum),
        },
        max_drift: Num(log.max_drift()),
        reprojections: log.reprojections(),
        generators: rep.gens().iter().map(MatrixDoc::from).collect(),
        q,
        q_family,
        golden,
    };
    let format = doc.config.format;
    render(&doc, format, passed)
}

fn chosen_strategy(rep: &Representation<f64>, n: usize, r: Option<usize>, ranks: Option<&[usize]>) -> Result<Strategy<f64>, CliError> {
    Ok(match (r, ranks) {
        (Some(r), _) => strategy_snr(n, r)?,
        (None, Some(ranks)) => strategy_partition(ranks)?,
        (None, None) => strategy_sn_of(rep),
    })
}

fn cmd_correlate(cfg: RunConfig, n: usize, r: Option<usize>, ranks: Option<&[usize]>) -> Result<Outcome, CliError> {
    let rep = build_distinguished::<f64>(n)?;
    let s = chosen_strategy(&rep, n, r, ranks)?;
    let born = born_correlation(&s)?;
    let (closed, note) = match (r, ranks) {
        (None, None) => (Some(closedform_correlation_sn::<f64>(n)?), None),
        (Some(r), _) => match closedform_correlation_snr::<f64>(n, r) {
            Ok(c) => (Some(c), None),
            Err(Error::OutOfTable(m)) => (None, Some(m)),
            Err(e) => return Err(e.into()),
        },
        (None, Some(_)) => (None, Some("no closed form for multi-outcome partitions".into())),
    };
    let max_deviation = closed.as_ref().map(|c| born.max_abs_diff(c)).transpose()?;
    let tol = cfg.tol.0;
    let passed = max_deviation.is_none_or(|d| d <= tol);
    let doc = CorrelateDoc {
        synchronous: check_synchronous(&born, tol),
        normalization_defect: Num(born.normalization_defect()),
        signalling_defect: Num(born.signalling_defect()),
        born: CorrelationDoc::from(&born),
        closed_form: closed.as_ref().map(CorrelationDoc::from),
        max_deviation: max_deviation.map(Num),
        closed_form_note: note,
        config: cfg,
    };
    let format = doc.config.format;
    render(&doc, format, passed)
}

fn cmd_spectrum(cfg: RunConfig, n: usize) -> Result<Outcome, CliError> {
    let rep = build_distinguished::<f64>(n)?;
    let spec = spectrum_sum34_of(&rep)?;
    let nn = n as f64;
    let mut q = Vec::new();
    for r in 1..n {
        let qp = build_q_of(&rep, r)?;
        let (idempotency, rank, commutator) = q_residuals(&rep, &qp);
        let eig_difference = qp.p.max_abs_diff(&build_q_eig_of(&rep, r)?.p);
        q.push(QDoc {
            r,
            rank,
            idempotency: Num(idempotency),
            commutator: Num(commutator),
            eig_difference: Num(eig_difference),
        });
    }
    let overlaps: Vec<OverlapDoc> = overlap_eigvec_p12_of(&rep)?.iter().map(OverlapDoc::from).collect();
    let tol = cfg.tol.0;
    let max_deviation = spec.max_dev * nn;
    let passed = max_deviation <= 1e-7_f64.max(tol)
        && q.iter().all(|d| d.rank == d.r && d.eig_difference.0 <= 1e-8_f64.max(tol))
        && overlaps.iter().all(|o| o.deviation.0 <= 1e-8_f64.max(tol));
    let doc = SpectrumDoc {
        config: cfg,
        n,
        values: spec.values.iter().map(|v| Num(v * nn)).collect(),
        predicted: spec.predicted.iter().map(|v| Num(v * nn)).collect(),
        max_deviation: Num(max_deviation),
        min_gap: Num(spec.min_gap * nn),
        q,
        overlaps,
    };
    let format = doc.config.format;
    render(&doc, format, passed)
}

fn cmd_verify(cfg: RunConfig, n: usize) -> Result<Outcome, CliError> {
    let checks = invariant_suite(n, cfg.seed)?;
    let passed = checks.iter().all(|c| c.pass);
    let doc = VerifyDoc { config: cfg, n, checks, pass: passed };
    let format = doc.config.format;
    render(&doc, format, passed)
}

/// Reads and validates a strategy file; every failure maps to exit code 2.
pub fn read_strategy(path: &Path, tol: f64) -> Result<Strategy<f64>, CliError> {
    let text = std::fs::read_to_string(path).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?;
    let file: StrategyFile = parse(&text).map_err(|e| CliError::Parse(format!("{}: {e}", path.display())))?;
    let s = file.to_strategy().map_err(|e| CliError::Parse(format!("{}: {e}", path.display())))?;
    s.validate(tol).map_err(|e| CliError::Parse(format!("{}: {e}", path.display())))?;
    Ok(s)
}

fn cmd_check(cfg: RunConfig, path: &Path, n: usize, r: Option<usize>) -> Result<Outcome, CliError> {
    let tol = cfg.tol.0;
    let s = read_strategy(path, tol.max(1e-9))?;
    let report = verify_candidate_seeded(&s, n, tol, cfg.seed)?;
    let mut doc = CheckDoc::from_report(cfg, path.display().to_string(), &report);
    if let Some(r) = r {
        let want = vec![r, n - r];
        if report.fifth_ranks.as_ref() != Some(&want) {
            doc.accepted = false;
            doc.verdict = "rejected".into();
            doc.reason = Some(format!("expected a fifth input with ranks {want:?}, found {:?}", report.fifth_ranks));
        }
    }
    let passed = doc.accepted;
    let format = doc.config.format;
    render(&doc, format, passed)
}

fn cmd_golden(cfg: RunConfig) -> Result<Outcome, CliError> {
    let cases: Vec<GoldenCaseDoc> = golden_cases(&GoldenData::embedded(), cfg.tol.0)?.iter().map(GoldenCaseDoc::from).collect();
    let pass = cases.iter().all(|c| c.pass);
    let doc = GoldenDoc { config: cfg, cases, pass };
    let format = doc.config.format;
    render(&doc, format, pass)
}

fn cmd_export(
    cli: &Cli,
    n: usize,
    r: Option<usize>,
    ranks: Option<&[usize]>,
    anc: Option<usize>,
    adversarial: Option<&[usize]>,
    state: StateKind,
) -> Result<Outcome, CliError> {
    if cli.format != Format::Json {
        return Err(CliError::Usage("export writes JSON strategy files only".into()));
    }
    let s = if let Some(m) = adversarial {
        let kind = match state {
            StateKind::Random => AdversarialState::Random,
            StateKind::Maximal => AdversarialState::MaximallyEntangled,
        };
        adversarial_strategy_with::<f64>(n, [m[0], m[1], m[2], m[3]], kind, cli.seed)?.strategy
    } else {
        let rep = build_distinguished::<f64>(n)?;
        let base = chosen_strategy(&rep, n, r, ranks)?;
        match anc {
            Some(d) => dilate(&base, d, cli.seed)?,
            None => base,
        }
    };
    let text = to_json(&StrategyFile::from(&s)).map_err(|e| CliError::Compute(Error::InvalidInput(e.to_string())))?;
    Ok(Outcome { text, passed: true })
}

/// Parses `args`, runs the command, writes the report and returns the exit code.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let _ = e.print();
            return code;
        }
    };
    let outcome = match execute(&cli) {
        Ok(o) => o,
        Err(e) => {
            eprintln!("selftest: {e}");
            return e.exit_code();
        }
    };
    let written = match &cli.out {
        Some(path) => std::fs::write(path, &outcome.text).map_err(|e| format!("{}: {e}", path.display())),
        None => {
            print!("{}", outcome.text);
            Ok(())
        }
    };
    if let Err(e) = written {
        eprintln!("selftest: i/o error: {e}");
        return EXIT_IO;
    }
    if outcome.passed {
        EXIT_OK
    } else {
        EXIT_FAILED
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run(args: &[&str]) -> Result<Outcome, CliError> {
        let cli = Cli::try_parse_from(std::iter::once("selftest").chain(args.iter().copied())).unwrap();
        execute(&cli)
    }

    fn reemit<D: Serialize + for<'de> Deserialize<'de>>(text: &str) -> String {
        to_json(&parse::<D>(text).unwrap()).unwrap()
    }

    #[test]
    fn every_report_round_trips_byte_identically() {
        let build = run(&["build", "--n", "3", "--r", "1"]).unwrap().text;
        assert_eq!(reemit::<BuildDoc>(&build), build);
        let build = run(&["build", "--n", "4", "--ranks", "1,3"]).unwrap().text;
        assert_eq!(reemit::<BuildDoc>(&build), build);
        let corr = run(&["correlate", "--n", "5", "--r", "2"]).unwrap().text;
        assert_eq!(reemit::<CorrelateDoc>(&corr), corr);
        let spec = run(&["spectrum", "--n", "4"]).unwrap().text;
        assert_eq!(reemit::<SpectrumDoc>(&spec), spec);
        let verify = run(&["verify", "--n", "3"]).unwrap().text;
        assert_eq!(reemit::<VerifyDoc>(&verify), verify);
        let golden = run(&["golden"]).unwrap().text;
        assert_eq!(reemit::<GoldenDoc>(&golden), golden);
        let export = run(&["export", "--n", "3", "--dilate", "2", "--seed", "4"]).unwrap().text;
        assert_eq!(reemit::<StrategyFile>(&export), export);
    }

    #[test]
    fn build_of_order_one_is_the_seed() {
        let doc: BuildDoc = parse(&run(&["build", "--n", "1"]).unwrap().text).unwrap();
        let data: Vec<Vec<f64>> = doc.generators.iter().map(|g| doc::floats(&g.data)).collect();
        assert_eq!(data, vec![vec![1.0], vec![0.0], vec![0.0], vec![0.0]]);
    }

    #[test]
    fn build_of_order_two_matches_reference() {
        let out = run(&["build", "--n", "2"]).unwrap();
        assert!(out.passed);
        let doc: BuildDoc = parse(&out.text).unwrap();
        assert!(doc.golden.unwrap().pass);
    }

    #[test]
    fn usage_errors() {
        for args in [&["build", "--n", "0"][..], &["correlate", "--n", "3", "--r", "3"], &["correlate", "--n", "3", "--ranks", "1,1"]] {
            assert_eq!(run(args).unwrap_err().exit_code(), EXIT_USAGE, "{args:?}");
        }
        assert_eq!(main_with_args(["selftest", "nonsense"]), EXIT_USAGE);
        assert_eq!(main_with_args(["selftest", "build"]), EXIT_USAGE);
    }

    #[test]
    fn correlate_reports_marginals_and_fifth_row() {
        let doc: CorrelateDoc = parse(&run(&["correlate", "--n", "2"]).unwrap().text).unwrap();
        let p1: Vec<f64> = doc.born.marginal_a.iter().map(|m| m[0].0).collect();
        for (got, want) in p1.iter().zip([0.0, 0.5, 0.5, 0.5]) {
            assert!((got - want).abs() < 1e-12);
        }
        let doc: CorrelateDoc = parse(&run(&["correlate", "--n", "5", "--r", "2"]).unwrap().text).unwrap();
        for (j, want) in [8.0 / 25.0, 8.0 / 25.0, 1.0 / 25.0, 1.0 / 25.0].into_iter().enumerate() {
            let row = doc.born.rows.iter().find(|x| (x.i, x.j, x.a, x.b) == (4, j, 0, 0)).unwrap();
            assert!((row.p.0 - want).abs() < 1e-9);
        }
        let doc: CorrelateDoc = parse(&run(&["correlate", "--n", "3"]).unwrap().text).unwrap();
        assert!(doc.max_deviation.unwrap().0 <= 1e-9);
    }

    #[test]
    fn csv_rows_are_flat() {
        let csv = run(&["--format", "csv", "correlate", "--n", "2"]).unwrap().text;
        let mut lines = csv.lines();
        assert_eq!(lines.next(), Some("i,j,a,b,p"));
        assert_eq!(lines.count(), 16 * 4);
    }

    #[test]
    fn reports_embed_the_config() {
        let doc: SpectrumDoc = parse(&run(&["--tol", "1e-7", "--seed", "9", "spectrum", "--n", "3"]).unwrap().text).unwrap();
        assert_eq!(doc.config.n, Some(3));
        assert_eq!(doc.config.seed, 9);
        assert_eq!(doc.config.tol, Num(1e-7));
        assert_eq!(doc.config.format, Format::Json);
    }

    #[test]
    fn check_accepts_export_and_rejects_adversary() {
        let dir = tempfile::tempdir().unwrap();
        let write = |name: &str, args: &[&str]| {
            let path = dir.path().join(name);
            std::fs::write(&path, run(args).unwrap().text).unwrap();
            path.display().to_string()
        };
        let plain = write("s3.json", &["export", "--n", "3"]);
        let out = run(&["check", "--strategy", &plain, "--n", "3"]).unwrap();
        assert!(out.passed);
        let doc: CheckDoc = parse(&out.text).unwrap();
        assert_eq!(doc.multiplicities, Some([1, 0, 0, 0]));
        let dil = write("d3.json", &["--seed", "1", "export", "--n", "3", "--dilate", "2"]);
        assert!(run(&["check", "--strategy", &dil, "--n", "3"]).unwrap().passed);
        let adv = write("a3.json", &["--seed", "1", "export", "--n", "3", "--adversarial", "1,1,0,0"]);
        let out = run(&["check", "--strategy", &adv, "--n", "3"]).unwrap();
        assert!(!out.passed);
        let doc: CheckDoc = parse(&out.text).unwrap();
        assert!(doc.correlation_gap.0 > 0.0);
        let five = write("r.json", &["export", "--n", "5", "--r", "2"]);
        assert!(run(&["check", "--strategy", &five, "--n", "5", "--r", "2"]).unwrap().passed);
        assert!(!run(&["check", "--strategy", &five, "--n", "5", "--r", "1"]).unwrap().passed);
    }

    #[test]
    fn malformed_strategy_files_are_parse_errors() {
        let dir = tempfile::tempdir().unwrap();
        let bad = dir.path().join("bad.json");
        std::fs::write(&bad, "{\"version\": 1, \"n_A\": 2").unwrap();
        let bad = bad.display().to_string();
        assert_eq!(run(&["check", "--strategy", &bad, "--n", "2"]).unwrap_err().exit_code(), EXIT_IO);
        let missing = dir.path().join("missing.json").display().to_string();
        assert_eq!(run(&["check", "--strategy", &missing, "--n", "2"]).unwrap_err().exit_code(), EXIT_IO);
    }
}
