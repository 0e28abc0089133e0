//! Invariant checks run by the `verify` command.

use crate::error::Result;
use crate::repcat::{build_distinguished, distinguished_ranks, rank_matrix_4x4};
use crate::spectral::{build_q_eig_of, build_q_of, operator_m_of, overlap_eigvec_p12_of, spectrum_sum34_of};
use crate::strategy::{
    born_correlation, closedform_correlation_sn, closedform_correlation_snr, maximally_entangled, strategy_sn_of,
    strategy_snr,
};
use crate::verifier::{dilate, verify_candidate_seeded, VERIFY_TOL};

use super::doc::Num;
use super::report::CheckItem;

/// Largest order for which the `n⁴`-sized eigenpair checks run.
const EIGENPAIR_MAX: usize = 16;
/// Largest order for which the dilation round trip runs.
const ROUND_TRIP_MAX: usize = 12;

fn at_most(name: impl Into<String>, value: f64, threshold: f64) -> CheckItem {
    CheckItem { name: name.into(), value: Num(value), threshold: Num(threshold), pass: value <= threshold }
}

fn below(name: impl Into<String>, value: f64, threshold: f64) -> CheckItem {
    CheckItem { name: name.into(), value: Num(value), threshold: Num(threshold), pass: value < threshold }
}

/// Every invariant that applies at order `n`.
pub fn invariant_suite(n: usize, seed: u64) -> Result<Vec<CheckItem>> {
    let rep = build_distinguished::<f64>(n)?;
    let nn = n as f64;
    let mut out = Vec::new();

    out.push(at_most("relation residual", rep.residuals().max(), 1e-7));
    let rank_miss: usize = rep.ranks().iter().zip(distinguished_ranks(n)).map(|(a, b)| a.abs_diff(b)).sum();
    out.push(at_most("rank law (total mismatch)", rank_miss as f64, 0.0));
    let det = rank_matrix_4x4(n)?.det().unsigned_abs();
    out.push(at_most("determinant law |det| - (2n-1)", det.abs_diff(2 * n as u128 - 1) as f64, 0.0));
    out.push(at_most("spectrum of n(P3+P4)", spectrum_sum34_of(&rep)?.max_dev * nn, 1e-7));
    let overlap = overlap_eigvec_p12_of(&rep)?.iter().map(|o| o.deviation()).fold(0.0, f64::max);
    out.push(at_most("overlap law", overlap, 1e-8));

    if n >= 2 {
        let mut diff = 0.0f64;
        let mut rank_miss = 0usize;
        for r in 1..n {
            let q = build_q_of(&rep, r)?;
            diff = diff.max(q.p.max_abs_diff(&build_q_eig_of(&rep, r)?.p));
            rank_miss += crate::matcore::rank_of(&q.p, crate::matcore::RANK_TOL).abs_diff(r);
        }
        out.push(at_most("Q sign vs eigen construction", diff, 1e-8));
        out.push(at_most("Q rank law (total mismatch)", rank_miss as f64, 0.0));
    }

    let sn = strategy_sn_of(&rep);
    let born = born_correlation(&sn)?;
    out.push(at_most("Born vs closed form, S(n)", born.max_abs_diff(&closedform_correlation_sn(n)?)?, 1e-9));
    let mut snr_dev: Option<f64> = None;
    for r in (1..n).filter(|r| 2 * r < n) {
        let d = born_correlation(&strategy_snr::<f64>(n, r)?)?.max_abs_diff(&closedform_correlation_snr(n, r)?)?;
        snr_dev = Some(snr_dev.unwrap_or(0.0).max(d));
    }
    if let Some(d) = snr_dev {
        out.push(at_most("Born vs closed form, S(n,r)", d, 1e-9));
    }

    if n <= EIGENPAIR_MAX {
        let top = operator_m_of(&rep, 0)?;
        out.push(at_most("operator M, k=0: |top - 1|", (top.value - 1.0).abs(), 1e-9));
        let phi = maximally_entangled::<f64>(n)?;
        let dev = top.vector.sub(&phi).max_abs().min(top.vector.sub(&phi.scale(-1.0)).max_abs());
        out.push(at_most("operator M, k=0: eigenvector vs phi", dev, 1e-7));
        let mut shifted = 0.0f64;
        for k in 1..4 {
            shifted = shifted.max(operator_m_of(&rep, k)?.value);
        }
        out.push(below("operator M, k!=0: top eigenvalue", shifted, 1.0 - 1e-6));
    }

    if n <= ROUND_TRIP_MAX {
        let tol = VERIFY_TOL;
        let itself = verify_candidate_seeded(&sn, n, tol, seed)?;
        out.push(at_most("self-dilation residual", itself.residual.filter(|_| itself.accepted()).unwrap_or(f64::INFINITY), 1e-10));
        let dilated = dilate(&sn, 2, seed.max(1))?;
        let r = verify_candidate_seeded(&dilated, n, tol, seed)?;
        out.push(at_most("dilation round-trip residual", r.residual.filter(|_| r.accepted()).unwrap_or(f64::INFINITY), 1e-6));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_orders_pass_every_check() {
        for n in 1..=7 {
            for c in invariant_suite(n, 0).unwrap() {
                assert!(c.pass, "n = {n}: {c:?}");
            }
        }
    }
}
