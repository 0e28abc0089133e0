//! Comparison of constructed quadruples and `Q` projections with the
//! embedded reference matrices, up to orthogonal equivalence.

use crate::error::{Error, Result};
use crate::matcore::Matrix;
use crate::repcat::{build_distinguished, check_equivalence, Alpha, Rational, Representation};
use crate::spectral::build_q_of;

use super::golden_data::{QUADRUPLES, Q_PROJECTIONS};

/// Reference data: quadruples by `n` and `Q⁽ⁿ'ʳ⁾` by `(n, r)`, row-major.
#[derive(Clone, Debug)]
pub struct GoldenData {
    pub quadruples: Vec<(usize, [Vec<f64>; 4])>,
    pub q_projections: Vec<(usize, usize, Vec<f64>)>,
}

impl GoldenData {
    pub fn embedded() -> Self {
        Self {
            quadruples: QUADRUPLES.iter().map(|(n, g)| (*n, g.map(|x| x.to_vec()))).collect(),
            q_projections: Q_PROJECTIONS.iter().map(|(n, r, q)| (*n, *r, q.to_vec())).collect(),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct GoldenCase {
    pub n: usize,
    /// `None` for the quadruple itself.
    pub r: Option<usize>,
    pub intertwiner_found: bool,
    /// `max_i ‖O·X_i·Oᵀ − G_i‖∞`, or `‖O·Q·Oᵀ − G_Q‖∞` with the quadruple's `O`.
    pub residual: Option<f64>,
    pub pass: bool,
}

/// Every case passes when an intertwiner exists and its residual is at most
/// `10·tol`. `Q` cases reuse the intertwiner found for their quadruple.
pub fn golden_cases(data: &GoldenData, tol: f64) -> Result<Vec<GoldenCase>> {
    let threshold = 10.0 * tol;
    let mut out = Vec::new();
    for (n, entries) in &data.quadruples {
        let n = *n;
        let built = build_distinguished::<f64>(n)?;
        let gens: Result<Vec<Matrix<f64>>> = entries.iter().map(|e| Matrix::from_row_major(n, n, e.clone())).collect();
        let Ok(gens) = gens else {
            out.push(GoldenCase { n, r: None, intertwiner_found: false, residual: None, pass: false });
            continue;
        };
        let gens: [Matrix<f64>; 4] = gens.try_into().expect("four generators");
        let golden = Representation::new(Alpha::exact(Rational::new(2 * n as i64 - 1, n as i64)), gens)?;
        // Malformed reference matrices count as a failed case.
        let o = match check_equivalence(&built, &golden, tol) {
            Ok(o) => o,
            Err(Error::InvalidInput(_)) => None,
            Err(e) => return Err(e),
        };
        let residual = o.as_ref().map(|o| {
            (0..4).map(|i| built.gen(i).conjugate_by(o).max_abs_diff(golden.gen(i))).fold(0.0, f64::max)
        });
        out.push(GoldenCase {
            n,
            r: None,
            intertwiner_found: o.is_some(),
            residual,
            pass: residual.is_some_and(|r| r <= threshold),
        });
        for (_, r, q) in data.q_projections.iter().filter(|(m, _, _)| *m == n) {
            let residual = match (&o, Matrix::from_row_major(n, n, q.clone())) {
                (Some(o), Ok(g)) => Some(build_q_of(&built, *r)?.p.conjugate_by(o).max_abs_diff(&g)),
                _ => None,
            };
            out.push(GoldenCase {
                n,
                r: Some(*r),
                intertwiner_found: o.is_some(),
                residual,
                pass: residual.is_some_and(|x| x <= threshold),
            });
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn embedded_data_passes() {
        let cases = golden_cases(&GoldenData::embedded(), 1e-9).unwrap();
        assert_eq!(cases.iter().filter(|c| c.r.is_none()).count(), 6);
        assert_eq!(cases.iter().filter(|c| c.r.is_some()).count(), 15);
        for c in &cases {
            assert!(c.pass, "{c:?}");
        }
    }

    #[test]
    fn order_six_last_projection_is_diagonal() {
        let data = GoldenData::embedded();
        let (_, _, q) = data.q_projections.iter().find(|(n, r, _)| (*n, *r) == (6, 5)).unwrap();
        let want = Matrix::diag(&[1.0, 1.0, 1.0, 1.0, 1.0, 0.0]);
        assert_eq!(q.as_slice(), want.as_slice());
    }

    #[test]
    fn corrupted_entry_fails() {
        let mut data = GoldenData::embedded();
        data.quadruples[3].1[2][1] += 1e-3;
        let cases = golden_cases(&data, 1e-9).unwrap();
        assert!(cases.iter().any(|c| c.n == 4 && !c.pass));
        assert!(cases.iter().filter(|c| c.n != 4).all(|c| c.pass));
    }
}
