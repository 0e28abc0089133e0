//! Acceptance suite: one PASS/FAIL line per criterion, with timings.

use std::time::{Duration, Instant};

use selftest::cli::{golden_cases, GoldenData};
use selftest::matcore::{rank_of, sym_eig};
use selftest::repcat::{build_distinguished, build_distinguished_logged, rank_matrix_4x4};
use selftest::spectral::{build_q, build_q_eig, operator_m};
use selftest::strategy::{
    born_correlation, closedform_correlation_sn, closedform_correlation_snr, maximally_entangled, strategy_sn,
    strategy_snr,
};
use selftest::verifier::{adversarial_strategy_with, dilate, verify_candidate, AdversarialState, Verdict, RejectReason};

type Criterion = (&'static str, u64, fn() -> Outcome);

struct Outcome {
    pass: bool,
    detail: String,
}

fn ok(pass: bool, detail: impl Into<String>) -> Outcome {
    Outcome { pass, detail: detail.into() }
}

fn expected_ranks(n: usize) -> [usize; 4] {
    let h = n / 2;
    let first = if n.is_multiple_of(2) { h - 1 } else { h + 1 };
    [first, h, h, h]
}

fn closed_form() -> Outcome {
    let mut worst = 0.0f64;
    let mut cases = 0;
    for n in 1..=12 {
        let born = born_correlation(&strategy_sn::<f64>(n).unwrap()).unwrap();
        worst = worst.max(born.max_abs_diff(&closedform_correlation_sn(n).unwrap()).unwrap());
        cases += 1;
        for r in (1..n).filter(|r| 2 * r < n) {
            let born = born_correlation(&strategy_snr::<f64>(n, r).unwrap()).unwrap();
            worst = worst.max(born.max_abs_diff(&closedform_correlation_snr(n, r).unwrap()).unwrap());
            cases += 1;
        }
    }
    ok(worst <= 1e-9, format!("{cases} tables, max |Born - closed form| = {worst:.2e} (bound 1e-9)"))
}

fn rank_law() -> Outcome {
    let mut bad = Vec::new();
    for n in 1..=64 {
        let ranks = build_distinguished::<f64>(n).unwrap().ranks();
        if ranks != expected_ranks(n) {
            bad.push((n, ranks));
        }
    }
    ok(bad.is_empty(), format!("n = 1..64, mismatches: {bad:?}"))
}

fn spectrum_law() -> Outcome {
    let mut worst = 0.0f64;
    for n in 1..=50 {
        let rep = build_distinguished::<f64>(n).unwrap();
        let h = &(rep.gen(2) + rep.gen(3)).scale(n as f64);
        let eig = sym_eig(&h.symmetrized()).unwrap();
        let offset = if n % 2 == 0 { 1.0 } else { 0.0 };
        for (k, v) in eig.values.iter().enumerate() {
            worst = worst.max((v - (2.0 * k as f64 + offset)).abs());
        }
    }
    ok(worst <= 1e-7, format!("n = 1..50, max eigenvalue deviation {worst:.2e} (bound 1e-7)"))
}

fn golden() -> Outcome {
    let cases = golden_cases(&GoldenData::embedded(), 1e-9).unwrap();
    let worst = cases.iter().map(|c| c.residual.unwrap_or(f64::INFINITY)).fold(0.0, f64::max);
    let quads = cases.iter().filter(|c| c.r.is_none()).count();
    ok(
        worst <= 1e-8 && cases.iter().all(|c| c.intertwiner_found),
        format!("{quads} quadruples and {} Q matrices, max intertwiner residual {worst:.2e} (bound 1e-8)", cases.len() - quads),
    )
}

fn q_cross() -> Outcome {
    let mut worst = 0.0f64;
    let mut rank_bad = Vec::new();
    for n in 2..=12 {
        for r in 1..n {
            let a = build_q::<f64>(n, r).unwrap();
            let b = build_q_eig::<f64>(n, r).unwrap();
            worst = worst.max(a.p.max_abs_diff(&b.p));
            if rank_of(&a.p, 1e-8) != r || rank_of(&b.p, 1e-8) != r {
                rank_bad.push((n, r));
            }
        }
    }
    ok(
        worst <= 1e-8 && rank_bad.is_empty(),
        format!("1 <= r < n <= 12, max difference {worst:.2e} (bound 1e-8), rank mismatches {rank_bad:?}"),
    )
}

fn eigenpair_law() -> Outcome {
    let (mut top_dev, mut vec_dev, mut shifted) = (0.0f64, 0.0f64, 0.0f64);
    for n in 1..=8 {
        let m0 = operator_m::<f64>(n, 0).unwrap();
        top_dev = top_dev.max((m0.value - 1.0).abs());
        let phi = maximally_entangled::<f64>(n).unwrap();
        let d = m0.vector.sub(&phi).max_abs().min(m0.vector.sub(&phi.scale(-1.0)).max_abs());
        vec_dev = vec_dev.max(d);
        for k in 1..4 {
            shifted = shifted.max(operator_m::<f64>(n, k).unwrap().value);
        }
    }
    ok(
        top_dev <= 1e-9 && vec_dev <= 1e-7 && shifted < 1.0 - 1e-6,
        format!(
            "n <= 8: |top - 1| = {top_dev:.2e} (bound 1e-9), eigenvector vs phi {vec_dev:.2e} (bound 1e-7), \
             largest shifted top {shifted:.9} (< 1 - 1e-6)"
        ),
    )
}

fn overlap_law() -> Outcome {
    let mut worst = 0.0f64;
    let mut exceptional = 0;
    for n in 1..=20 {
        let rep = build_distinguished::<f64>(n).unwrap();
        let nn = n as f64;
        let eig = sym_eig(&(rep.gen(2) + rep.gen(3)).symmetrized()).unwrap();
        for (k, &lambda) in eig.values.iter().enumerate() {
            let e = eig.vectors.column(k);
            let p1 = e.dot(&rep.gen(0).matvec(&e));
            let p2 = e.dot(&rep.gen(1).matvec(&e));
            let (w1, w2) = if (lambda - (1.0 - 1.0 / nn)).abs() < 1e-6 {
                exceptional += 1;
                if n % 2 == 0 {
                    (0.0, 1.0)
                } else {
                    (1.0, 0.0)
                }
            } else {
                let v = 1.0 - 1.0 / (2.0 * nn) - lambda / 2.0;
                (v, v)
            };
            worst = worst.max((p1 - w1).abs()).max((p2 - w2).abs());
        }
    }
    ok(worst <= 1e-8, format!("n <= 20, max deviation {worst:.2e} (bound 1e-8), {exceptional} exceptional eigenvectors"))
}

fn round_trip() -> Outcome {
    let tol = 1e-8;
    let mut failures = Vec::new();
    let mut worst = 0.0f64;
    for k in 0..100u64 {
        let n = 1 + (k % 6) as usize;
        let anc = 1 + ((k / 6) % 3) as usize;
        let seed = 1000 + k;
        let d = dilate(&strategy_sn::<f64>(n).unwrap(), anc, seed).unwrap();
        let r = verify_candidate(&d, n, tol).unwrap();
        let res = r.residual.unwrap_or(f64::INFINITY);
        worst = worst.max(res);
        let counts_ok = r.multiplicities == Some([anc, 0, 0, 0]) && r.variant_support() == Some([1, 0, 0, 0]);
        if !(r.accepted() && res <= 1e-6 && counts_ok) {
            failures.push(format!("n={n} anc={anc} seed={seed}: {:?}", r.verdict));
        }
    }
    let mut rejected = 0;
    let mut min_gap = f64::INFINITY;
    for n in 1..=4 {
        for code in 0..256usize {
            let m = [code % 4, code / 4 % 4, code / 16 % 4, code / 64];
            let total: usize = m.iter().sum();
            if total == 0 || total > 3 || m[1..] == [0, 0, 0] {
                continue;
            }
            for seed in 1..=20u64 {
                let kind = if seed % 2 == 0 { AdversarialState::MaximallyEntangled } else { AdversarialState::Random };
                let a = adversarial_strategy_with::<f64>(n, m, kind, seed).unwrap();
                let r = verify_candidate(&a.strategy, n, tol).unwrap();
                let gap_ok = matches!(r.verdict, Verdict::Rejected(RejectReason::CorrelationMismatch { gap }) if gap > 0.0);
                if gap_ok {
                    rejected += 1;
                    min_gap = min_gap.min(a.gap);
                } else {
                    failures.push(format!("adversarial n={n} mults={m:?} seed={seed}: {:?}", r.verdict));
                }
            }
        }
    }
    ok(
        failures.is_empty(),
        format!(
            "100 dilations accepted (max residual {worst:.2e}, bound 1e-6); {rejected} adversarial candidates \
             rejected, smallest measured gap {min_gap:.3e}; failures: {failures:?}"
        ),
    )
}

fn determinant_law() -> Outcome {
    let bad: Vec<usize> =
        (1..=1000).filter(|&n| rank_matrix_4x4(n).unwrap().det().unsigned_abs() != 2 * n as u128 - 1).collect();
    ok(bad.is_empty(), format!("n = 1..1000, mismatches: {bad:?}"))
}

fn performance() -> Outcome {
    let (rep, log) = build_distinguished_logged::<f64>(512).unwrap();
    let res = rep.residuals().max();
    let ranks_ok = rep.trace_ranks() == expected_ranks(512);
    ok(
        res <= 1e-7 && ranks_ok,
        format!("n = 512, relation residual {res:.2e} (bound 1e-7), {} re-projections, ranks ok: {ranks_ok}", log.reprojections()),
    )
}

fn main() {
    let criteria: [Criterion; 10] = [
        ("closed-form correlations", 5, closed_form),
        ("rank law", 60, rank_law),
        ("spectrum law", 30, spectrum_law),
        ("golden equivalence", 5, golden),
        ("Q cross-construction", 10, q_cross),
        ("eigenpair law", 60, eigenpair_law),
        ("overlap law", 10, overlap_law),
        ("self-test round trip", 120, round_trip),
        ("determinant law", 1, determinant_law),
        ("performance", 60, performance),
    ];
    let mut failed = 0;
    for (k, (name, budget, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = run();
        let elapsed = start.elapsed();
        let in_time = elapsed <= Duration::from_secs(*budget);
        let pass = outcome.pass && in_time;
        if !pass {
            failed += 1;
        }
        println!(
            "[{}] criterion {:>2} {name}: {} | {:.2} s (budget {budget} s)",
            if pass { "PASS" } else { "FAIL" },
            k + 1,
            outcome.detail,
            elapsed.as_secs_f64()
        );
    }
    println!("acceptance: {} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
