//! Kernels of the intertwining map `O ↦ (O·X_i − Y_i·O)_i`.
//!
//! Any intertwiner also intertwines the probe `H = Σ c_i X_i` with the same
//! combination of the `Y_i`, so it maps each eigenspace of `H_X` into the
//! eigenspace of `H_Y` with the same eigenvalue. The unknown is therefore
//! parameterized block-wise over matched eigenspaces, which keeps the linear
//! system at `Σ m_λ²` unknowns instead of `N²`.

use crate::error::Result;
use crate::matcore::{jacobi_svd, sym_eig, Matrix};
use crate::scalar::Real;

const PROBE: [f64; 4] = [0.577_215_664_901_532_9, std::f64::consts::SQRT_2, std::f64::consts::FRAC_1_PI, 0.0];

/// Eigenvalue clusters merge when consecutive values are closer than this
/// (relative to the probe scale). Merging is always safe, only slower.
const CLUSTER_GAP: f64 = 1e-6;

pub(crate) struct Cluster<T> {
    pub value: T,
    pub basis: Matrix<T>,
}

fn probe<T: Real>(gens: &[Matrix<T>; 4]) -> Matrix<T> {
    let n = gens[0].rows();
    let mut h = Matrix::zeros(n, n);
    for (g, &c) in gens.iter().zip(PROBE.iter()) {
        if c != 0.0 {
            h = &h + &g.scale(T::c(c));
        }
    }
    h
}

pub(crate) fn eigen_clusters<T: Real>(h: &Matrix<T>, gap: T) -> Result<Vec<Cluster<T>>> {
    let eig = sym_eig(h)?;
    let n = h.rows();
    let scale = eig.values.iter().fold(T::one(), |m, v| m.max(v.abs()));
    let mut clusters = Vec::new();
    let mut start = 0;
    for k in 1..=n {
        if k == n || eig.values[k] - eig.values[k - 1] > gap * scale {
            let width = k - start;
            let value = eig.values[start..k].iter().copied().sum::<T>() / T::from_count(width);
            clusters.push(Cluster { value, basis: eig.vectors.submatrix(0, n, start, width) });
            start = k;
        }
    }
    Ok(clusters)
}

/// Orthonormal (Frobenius) basis of `{O : O·X_i = Y_i·O, i = 1..4}`; both
/// tuples act on spaces of the same dimension. Singular values of the
/// stacked map at most `tol·max(1, σ_max)` count as zero.
pub(crate) fn intertwiner_basis<T: Real>(
    x: &[Matrix<T>; 4],
    y: &[Matrix<T>; 4],
    tol: T,
) -> Result<Vec<Matrix<T>>> {
    let n = x[0].rows();
    let gap = T::c(CLUSTER_GAP);
    let cx = eigen_clusters(&probe(x), gap)?;
    let cy = eigen_clusters(&probe(y), gap)?;
    let scale = cx.iter().chain(&cy).fold(T::one(), |m, c| m.max(c.value.abs()));

    // Pair clusters of equal eigenvalue; unmatched clusters force those
    // blocks of O to vanish.
    let mut pairs = Vec::new();
    for a in &cx {
        if let Some(b) = cy.iter().find(|b| (b.value - a.value).abs() <= gap * T::c(10.0) * scale) {
            pairs.push((a, b));
        }
    }
    let nparams: usize = pairs.iter().map(|(a, b)| a.basis.cols() * b.basis.cols()).sum();
    if nparams == 0 {
        return Ok(Vec::new());
    }

    // Column of the stacked map for the elementary intertwiner vb_s·va_tᵀ.
    let rows = 4 * n * n;
    let mut l = Matrix::<T>::zeros(rows, nparams);
    let mut col = 0;
    for (a, b) in &pairs {
        let xa: Vec<Matrix<T>> = x.iter().map(|g| g.matmul(&a.basis)).collect();
        let yb: Vec<Matrix<T>> = y.iter().map(|g| g.matmul(&b.basis)).collect();
        for s in 0..b.basis.cols() {
            for t in 0..a.basis.cols() {
                for i in 0..4 {
                    for r in 0..n {
                        for c in 0..n {
                            // (vb_s (X va_t)ᵀ − (Y vb_s) va_tᵀ)[r, c]
                            let v = b.basis[(r, s)] * xa[i][(c, t)] - yb[i][(r, s)] * a.basis[(c, t)];
                            l[(i * n * n + r * n + c, col)] = v;
                        }
                    }
                }
                col += 1;
            }
        }
    }

    let svd = jacobi_svd(&l);
    let thr = tol * svd.values.first().copied().unwrap_or(T::zero()).max(T::one());
    let mut out = Vec::new();
    for (k, &sv) in svd.values.iter().enumerate() {
        if sv > thr {
            continue;
        }
        let mut o = Matrix::zeros(n, n);
        let mut idx = 0;
        for (a, b) in &pairs {
            let (ma, mb) = (a.basis.cols(), b.basis.cols());
            let c = Matrix::from_fn(mb, ma, |s, t| svd.right[(idx + s * ma + t, k)]);
            o = &o + &b.basis.matmul(&c).matmul_tr(&a.basis);
            idx += ma * mb;
        }
        out.push(o);
    }
    Ok(out)
}
