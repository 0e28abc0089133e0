//! Report documents of the commands and their CSV and plain-text renderings.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::spectral::Overlap;
use crate::verifier::{DilationReport, Verdict};

use super::doc::{CorrelationDoc, MatrixDoc, Num};
use super::golden::GoldenCase;
use super::RunConfig;

/// CSV and plain-text renderings; JSON comes from `Serialize`.
pub trait Emit: Serialize {
    fn csv(&self) -> String;
    fn pretty(&self) -> String;
}

fn num(x: f64) -> String {
    format!("{x:.16e}")
}

fn opt_num(x: Option<Num>) -> String {
    x.map_or_else(|| "-".into(), |x| num(x.0))
}

fn config_line(c: &RunConfig) -> String {
    format!(
        "# {} n={} r={} ranks={} tol={:e} seed={} format={:?}\n",
        c.command,
        c.n.map_or("-".into(), |n| n.to_string()),
        c.r.map_or("-".into(), |r| r.to_string()),
        c.ranks.as_ref().map_or("-".into(), |r| format!("{r:?}")),
        c.tol.0,
        c.seed,
        c.format
    )
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ResidualsDoc {
    pub idempotent: Num,
    pub symmetric: Num,
    pub sum: Num,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GoldenCaseDoc {
    pub n: usize,
    pub r: Option<usize>,
    pub intertwiner_found: bool,
    pub residual: Option<Num>,
    pub pass: bool,
}

impl From<&GoldenCase> for GoldenCaseDoc {
    fn from(c: &GoldenCase) -> Self {
        Self { n: c.n, r: c.r, intertwiner_found: c.intertwiner_found, residual: c.residual.map(Num), pass: c.pass }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BuildDoc {
    pub config: RunConfig,
    pub n: usize,
    pub alpha: String,
    pub alpha_value: Num,
    pub ranks: [usize; 4],
    pub expected_ranks: [usize; 4],
    pub residuals: ResidualsDoc,
    pub max_drift: Num,
    pub reprojections: usize,
    pub generators: Vec<MatrixDoc>,
    pub q: Option<MatrixDoc>,
    pub q_family: Option<Vec<MatrixDoc>>,
    pub golden: Option<GoldenCaseDoc>,
}

impl BuildDoc {
    fn named_matrices(&self) -> Vec<(String, &MatrixDoc)> {
        let mut out: Vec<(String, &MatrixDoc)> =
            self.generators.iter().enumerate().map(|(i, g)| (format!("P{}", i + 1), g)).collect();
        if let Some(q) = &self.q {
            out.push(("Q".into(), q));
        }
        for (a, q) in self.q_family.iter().flatten().enumerate() {
            out.push((format!("Q{}", a + 1), q));
        }
        out
    }
}

impl Emit for BuildDoc {
    fn csv(&self) -> String {
        let mut s = String::from("matrix,row,col,value\n");
        for (name, m) in self.named_matrices() {
            for (k, x) in m.data.iter().enumerate() {
                let _ = writeln!(s, "{name},{},{},{}", k / m.cols, k % m.cols, num(x.0));
            }
        }
        s
    }

    fn pretty(&self) -> String {
        let mut s = config_line(&self.config);
        let _ = writeln!(s, "order {} with alpha = {} ({})", self.n, self.alpha, num(self.alpha_value.0));
        let _ = writeln!(s, "ranks {:?} (expected {:?})", self.ranks, self.expected_ranks);
        let r = &self.residuals;
        let _ = writeln!(
            s,
            "residuals: idempotent {:e}, symmetric {:e}, sum {:e}",
            r.idempotent.0, r.symmetric.0, r.sum.0
        );
        let _ = writeln!(s, "max drift {:e}, reprojections {}", self.max_drift.0, self.reprojections);
        if let Some(g) = &self.golden {
            let _ = writeln!(s, "reference equivalence: {} (residual {})", pass_word(g.pass), opt_num(g.residual));
        }
        for (name, m) in self.named_matrices() {
            let _ = writeln!(s, "{name} =");
            for row in m.data.chunks(m.cols.max(1)) {
                let cells: Vec<String> = row.iter().map(|x| format!("{:>10.6}", x.0)).collect();
                let _ = writeln!(s, "  {}", cells.join(" "));
            }
        }
        s
    }
}

fn pass_word(p: bool) -> &'static str {
    if p {
        "PASS"
    } else {
        "FAIL"
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CorrelateDoc {
    pub config: RunConfig,
    pub born: CorrelationDoc,
    pub closed_form: Option<CorrelationDoc>,
    pub max_deviation: Option<Num>,
    pub closed_form_note: Option<String>,
    pub synchronous: bool,
    pub normalization_defect: Num,
    pub signalling_defect: Num,
}

impl Emit for CorrelateDoc {
    fn csv(&self) -> String {
        let mut s = String::from("i,j,a,b,p\n");
        for r in &self.born.rows {
            let _ = writeln!(s, "{},{},{},{},{}", r.i, r.j, r.a, r.b, num(r.p.0));
        }
        s
    }

    fn pretty(&self) -> String {
        let mut s = config_line(&self.config);
        for (i, m) in self.born.marginal_a.iter().enumerate() {
            let cells: Vec<String> = m.iter().map(|x| format!("{:.10}", x.0)).collect();
            let _ = writeln!(s, "p(a|{i}) = [{}]", cells.join(", "));
        }
        let _ = writeln!(s, "input pairs (i,j): p(0,0|i,j)");
        let rows = self.born.rows.iter().filter(|r| r.a == 0 && r.b == 0);
        for r in rows {
            let _ = writeln!(s, "  ({},{}): {:.12}", r.i, r.j, r.p.0);
        }
        match (&self.max_deviation, &self.closed_form_note) {
            (Some(d), _) => {
                let _ = writeln!(s, "max deviation from closed form: {:e}", d.0);
            }
            (None, Some(note)) => {
                let _ = writeln!(s, "closed form: {note}");
            }
            (None, None) => {}
        }
        let _ = writeln!(
            s,
            "synchronous: {}, normalization defect {:e}, signalling defect {:e}",
            self.synchronous, self.normalization_defect.0, self.signalling_defect.0
        );
        s
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct QDoc {
    pub r: usize,
    pub rank: usize,
    pub idempotency: Num,
    pub commutator: Num,
    /// `‖Q − Q_eig‖∞`.
    pub eig_difference: Num,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OverlapDoc {
    pub lambda: Num,
    pub p1: Num,
    pub p2: Num,
    pub predicted_p1: Num,
    pub predicted_p2: Num,
    pub exceptional: bool,
    pub deviation: Num,
}

impl From<&Overlap<f64>> for OverlapDoc {
    fn from(o: &Overlap<f64>) -> Self {
        Self {
            lambda: Num(o.lambda),
            p1: Num(o.p1),
            p2: Num(o.p2),
            predicted_p1: Num(o.predicted.0),
            predicted_p2: Num(o.predicted.1),
            exceptional: o.exceptional,
            deviation: Num(o.deviation()),
        }
    }
}

/// Spectrum of `n(P₃ + P₄)`, the `Q` projections and the overlaps.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SpectrumDoc {
    pub config: RunConfig,
    pub n: usize,
    pub values: Vec<Num>,
    pub predicted: Vec<Num>,
    pub max_deviation: Num,
    pub min_gap: Num,
    pub q: Vec<QDoc>,
    pub overlaps: Vec<OverlapDoc>,
}

impl Emit for SpectrumDoc {
    fn csv(&self) -> String {
        let mut s = String::from("k,value,predicted\n");
        for (k, (v, p)) in self.values.iter().zip(&self.predicted).enumerate() {
            let _ = writeln!(s, "{k},{},{}", num(v.0), num(p.0));
        }
        s
    }

    fn pretty(&self) -> String {
        let mut s = config_line(&self.config);
        let _ = writeln!(s, "eigenvalues of n(P3+P4), measured vs predicted:");
        for (v, p) in self.values.iter().zip(&self.predicted) {
            let _ = writeln!(s, "  {:>14.10} {:>6}", v.0, p.0);
        }
        let _ = writeln!(s, "max deviation {:e}, min gap {:.6}", self.max_deviation.0, self.min_gap.0);
        for q in &self.q {
            let _ = writeln!(
                s,
                "Q(r={}): rank {}, idempotency {:e}, commutator {:e}, vs eigen construction {:e}",
                q.r, q.rank, q.idempotency.0, q.commutator.0, q.eig_difference.0
            );
        }
        let worst = self.overlaps.iter().map(|o| o.deviation.0).fold(0.0, f64::max);
        let _ = writeln!(s, "overlap law: max deviation {worst:e} over {} eigenvectors", self.overlaps.len());
        s
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CheckItem {
    pub name: String,
    pub value: Num,
    pub threshold: Num,
    pub pass: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct VerifyDoc {
    pub config: RunConfig,
    pub n: usize,
    pub checks: Vec<CheckItem>,
    pub pass: bool,
}

impl Emit for VerifyDoc {
    fn csv(&self) -> String {
        let mut s = String::from("check,value,threshold,pass\n");
        for c in &self.checks {
            let _ = writeln!(s, "{},{},{},{}", c.name, num(c.value.0), num(c.threshold.0), c.pass);
        }
        s
    }

    fn pretty(&self) -> String {
        let mut s = config_line(&self.config);
        for c in &self.checks {
            let _ = writeln!(s, "{} {:<40} {:e} (threshold {:e})", pass_word(c.pass), c.name, c.value.0, c.threshold.0);
        }
        let _ = writeln!(s, "{}", pass_word(self.pass));
        s
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CheckDoc {
    pub config: RunConfig,
    pub strategy_file: String,
    pub accepted: bool,
    pub verdict: String,
    pub reason: Option<String>,
    pub correlation_gap: Num,
    pub fifth_ranks: Option<Vec<usize>>,
    pub multiplicities: Option<[usize; 4]>,
    pub multiplicities_b: Option<[usize; 4]>,
    pub aux_dims: Option<[usize; 2]>,
    pub aux_state: Option<Vec<Num>>,
    pub residual: Option<Num>,
    pub isometry_a: Option<MatrixDoc>,
    pub isometry_b: Option<MatrixDoc>,
}

impl CheckDoc {
    pub fn from_report(config: RunConfig, strategy_file: String, r: &DilationReport<f64>) -> Self {
        let (verdict, reason) = match &r.verdict {
            Verdict::Accepted => ("accepted".to_string(), None),
            Verdict::Rejected(why) => ("rejected".to_string(), Some(why.to_string())),
        };
        Self {
            config,
            strategy_file,
            accepted: r.accepted(),
            verdict,
            reason,
            correlation_gap: Num(r.correlation_gap),
            fifth_ranks: r.fifth_ranks.clone(),
            multiplicities: r.multiplicities,
            multiplicities_b: r.multiplicities_b,
            aux_dims: r.aux_dims.map(|(a, b)| [a, b]),
            aux_state: r.aux_state.as_ref().map(|v| super::doc::nums(v.as_slice())),
            residual: r.residual.map(Num),
            isometry_a: r.isometry_a.as_ref().map(MatrixDoc::from),
            isometry_b: r.isometry_b.as_ref().map(MatrixDoc::from),
        }
    }

    fn summary(&self) -> Vec<(&'static str, String)> {
        vec![
            ("verdict", self.verdict.clone()),
            ("reason", self.reason.clone().unwrap_or_else(|| "-".into())),
            ("correlation_gap", num(self.correlation_gap.0)),
            ("fifth_ranks", self.fifth_ranks.as_ref().map_or("-".into(), |r| format!("{r:?}"))),
            ("multiplicities", self.multiplicities.map_or("-".into(), |m| format!("{m:?}"))),
            ("multiplicities_b", self.multiplicities_b.map_or("-".into(), |m| format!("{m:?}"))),
            ("aux_dims", self.aux_dims.map_or("-".into(), |d| format!("{d:?}"))),
            ("residual", opt_num(self.residual)),
        ]
    }
}

impl Emit for CheckDoc {
    fn csv(&self) -> String {
        let mut s = String::from("field,value\n");
        for (k, v) in self.summary() {
            let _ = writeln!(s, "{k},\"{}\"", v.replace('"', "\"\""));
        }
        s
    }

    fn pretty(&self) -> String {
        let mut s = config_line(&self.config);
        let _ = writeln!(s, "strategy file: {}", self.strategy_file);
        for (k, v) in self.summary() {
            let _ = writeln!(s, "{k:<17} {v}");
        }
        s
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GoldenDoc {
    pub config: RunConfig,
    pub cases: Vec<GoldenCaseDoc>,
    pub pass: bool,
}

impl Emit for GoldenDoc {
    fn csv(&self) -> String {
        let mut s = String::from("n,r,intertwiner_found,residual,pass\n");
        for c in &self.cases {
            let r = c.r.map_or(String::new(), |r| r.to_string());
            let res = c.residual.map_or(String::new(), |x| num(x.0));
            let _ = writeln!(s, "{},{r},{},{res},{}", c.n, c.intertwiner_found, c.pass);
        }
        s
    }

    fn pretty(&self) -> String {
        let mut s = config_line(&self.config);
        for c in &self.cases {
            let what = c.r.map_or_else(|| "quadruple".to_string(), |r| format!("Q(r={r})"));
            let _ = writeln!(s, "{} n={} {:<10} residual {}", pass_word(c.pass), c.n, what, opt_num(c.residual));
        }
        let _ = writeln!(s, "{}", pass_word(self.pass));
        s
    }
}
