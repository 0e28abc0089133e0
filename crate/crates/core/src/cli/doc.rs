//! Serialized forms. Numbers are written as `{:.16e}` (17 significant
//! digits), so parsing and re-emitting any document is byte-identical.

use serde::{Deserialize, Deserializer, Serialize, Serializer};
use serde_json::value::RawValue;

use crate::error::{Error, Result};
use crate::matcore::{Matrix, Vector};
use crate::strategy::{Correlation, Pvm, Strategy};

pub const STRATEGY_FILE_VERSION: u32 = 1;

/// `f64` serialized with 17 significant digits.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Num(pub f64);

impl Serialize for Num {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        if !self.0.is_finite() {
            return Err(serde::ser::Error::custom(format!("cannot serialize non-finite number {}", self.0)));
        }
        let raw = RawValue::from_string(format!("{:.16e}", self.0)).map_err(serde::ser::Error::custom)?;
        raw.serialize(s)
    }
}

impl<'de> Deserialize<'de> for Num {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        f64::deserialize(d).map(Num)
    }
}

pub fn nums(xs: &[f64]) -> Vec<Num> {
    xs.iter().copied().map(Num).collect()
}

pub fn floats(xs: &[Num]) -> Vec<f64> {
    xs.iter().map(|x| x.0).collect()
}

/// Row-major matrix.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MatrixDoc {
    pub rows: usize,
    pub cols: usize,
    pub data: Vec<Num>,
}

impl MatrixDoc {
    pub fn to_matrix(&self) -> Result<Matrix<f64>> {
        Matrix::from_row_major(self.rows, self.cols, floats(&self.data))
    }
}

impl From<&Matrix<f64>> for MatrixDoc {
    fn from(m: &Matrix<f64>) -> Self {
        Self { rows: m.rows(), cols: m.cols(), data: nums(m.as_slice()) }
    }
}

/// `{version, n_A, n_B, state, A_meas, B_meas}`; each PVM is a list of
/// outcome matrices.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct StrategyFile {
    pub version: u32,
    #[serde(rename = "n_A")]
    pub n_a: usize,
    #[serde(rename = "n_B")]
    pub n_b: usize,
    pub state: Vec<Num>,
    #[serde(rename = "A_meas")]
    pub a_meas: Vec<Vec<MatrixDoc>>,
    #[serde(rename = "B_meas")]
    pub b_meas: Vec<Vec<MatrixDoc>>,
}

impl StrategyFile {
    pub fn to_strategy(&self) -> Result<Strategy<f64>> {
        if self.version != STRATEGY_FILE_VERSION {
            return Err(Error::InvalidInput(format!(
                "unsupported strategy file version {} (expected {STRATEGY_FILE_VERSION})",
                self.version
            )));
        }
        let pvms = |meas: &[Vec<MatrixDoc>]| -> Result<Vec<Pvm<f64>>> {
            meas.iter()
                .map(|outcomes| Pvm::new(outcomes.iter().map(MatrixDoc::to_matrix).collect::<Result<_>>()?))
                .collect()
        };
        Strategy::new(
            self.n_a,
            self.n_b,
            Vector::from_vec(floats(&self.state))?,
            pvms(&self.a_meas)?,
            pvms(&self.b_meas)?,
        )
    }
}

impl From<&Strategy<f64>> for StrategyFile {
    fn from(s: &Strategy<f64>) -> Self {
        let pvms = |meas: &[Pvm<f64>]| meas.iter().map(|p| p.outcomes().iter().map(MatrixDoc::from).collect()).collect();
        Self {
            version: STRATEGY_FILE_VERSION,
            n_a: s.n_a(),
            n_b: s.n_b(),
            state: nums(s.state().as_slice()),
            a_meas: pvms(s.a_meas()),
            b_meas: pvms(s.b_meas()),
        }
    }
}

/// One entry `p(a,b|i,j)`, 0-based.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CorrelationRow {
    pub i: usize,
    pub j: usize,
    pub a: usize,
    pub b: usize,
    pub p: Num,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CorrelationDoc {
    pub outputs_a: Vec<usize>,
    pub outputs_b: Vec<usize>,
    /// `marginal_a[i][a] = p(a|i)`.
    pub marginal_a: Vec<Vec<Num>>,
    pub marginal_b: Vec<Vec<Num>>,
    pub rows: Vec<CorrelationRow>,
}

impl From<&Correlation<f64>> for CorrelationDoc {
    fn from(c: &Correlation<f64>) -> Self {
        let marginal_a = (0..c.inputs_a()).map(|i| (0..c.outputs_a()[i]).map(|a| Num(c.marginal_a(a, i))).collect()).collect();
        let marginal_b = (0..c.inputs_b()).map(|j| (0..c.outputs_b()[j]).map(|b| Num(c.marginal_b(b, j))).collect()).collect();
        Self {
            outputs_a: c.outputs_a().to_vec(),
            outputs_b: c.outputs_b().to_vec(),
            marginal_a,
            marginal_b,
            rows: c.rows().into_iter().map(|(i, j, a, b, p)| CorrelationRow { i, j, a, b, p: Num(p) }).collect(),
        }
    }
}

/// Parses a document of type `D`, reporting the JSON location on failure.
pub fn parse<D: for<'de> Deserialize<'de>>(text: &str) -> std::result::Result<D, serde_json::Error> {
    serde_json::from_str(text)
}

pub fn to_json<D: Serialize>(doc: &D) -> std::result::Result<String, serde_json::Error> {
    let mut s = serde_json::to_string_pretty(doc)?;
    s.push('\n');
    Ok(s)
}
