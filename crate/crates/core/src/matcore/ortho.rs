use crate::error::{Error, Result};
use crate::scalar::Real;

use super::Matrix;

const PANEL: usize = 48;

#[inline]
fn dot<T: Real>(a: &[T], b: &[T]) -> T {
    let mut acc = [T::zero(); 4];
    let chunks = a.len() / 4;
    for c in 0..chunks {
        let i = 4 * c;
        acc[0] += a[i] * b[i];
        acc[1] += a[i + 1] * b[i + 1];
        acc[2] += a[i + 2] * b[i + 2];
        acc[3] += a[i + 3] * b[i + 3];
    }
    let mut s = (acc[0] + acc[1]) + (acc[2] + acc[3]);
    for i in 4 * chunks..a.len() {
        s += a[i] * b[i];
    }
    s
}

#[inline]
fn axpy<T: Real>(alpha: T, x: &[T], y: &mut [T]) {
    for (yi, &xi) in y.iter_mut().zip(x) {
        *yi += alpha * xi;
    }
}

/// Orthonormalizes a stream of length-`m` columns left to right.
///
/// `fill(start, width, buf)` writes columns `start..start+width` into `buf`
/// (column-major, `m x width`). Each column is projected against every kept
/// column twice, first as a panel product against earlier panels and then
/// column by column within the panel; a third pass runs when the residual
/// lost more than three digits. Residuals of norm `<= drop_tol` are dropped.
/// Kept columns are normalized and flipped so their first entry of magnitude
/// `> sign_tol` is positive. Stops once `max_rank` columns are kept.
pub(crate) fn orthonormalize_columns<T: Real>(
    m: usize,
    ncols: usize,
    mut fill: impl FnMut(usize, usize, &mut [T]),
    drop_tol: T,
    sign_tol: T,
    max_rank: usize,
) -> Matrix<T> {
    let cap = max_rank.min(ncols).min(m);
    let mut q: Vec<T> = Vec::with_capacity(m * cap);
    let mut k = 0usize;
    let mut start = 0usize;
    let mut panel = Vec::new();
    let mut s = Vec::new();
    while start < ncols && k < max_rank {
        let w = PANEL.min(ncols - start);
        panel.clear();
        panel.resize(m * w, T::zero());
        fill(start, w, &mut panel);
        let orig: Vec<T> = (0..w).map(|j| dot(&panel[j * m..(j + 1) * m], &panel[j * m..(j + 1) * m]).sqrt()).collect();

        if k > 0 {
            s.clear();
            s.resize(k * w, T::zero());
            for _ in 0..2 {
                // s = Qᵀ·panel, panel -= Q·s
                T::gemm(k, m, w, T::one(), &q, m, 1, &panel, 1, m, T::zero(), &mut s, 1, k);
                T::gemm(m, k, w, -T::one(), &q, 1, m, &s, 1, k, T::one(), &mut panel, 1, m);
            }
        }

        let k_panel = k;
        for j in 0..w {
            let col = &mut panel[j * m..(j + 1) * m];
            for _ in 0..2 {
                for idx in k_panel..k {
                    let qi = &q[idx * m..(idx + 1) * m];
                    let r = dot(qi, col);
                    axpy(-r, qi, col);
                }
            }
            let mut nrm = dot(col, col).sqrt();
            if nrm > drop_tol && nrm < orig[j] * T::c(1e-3) {
                for idx in 0..k {
                    let qi = &q[idx * m..(idx + 1) * m];
                    let r = dot(qi, col);
                    axpy(-r, qi, col);
                }
                nrm = dot(col, col).sqrt();
            }
            if nrm <= drop_tol {
                continue;
            }
            let mut inv = T::one() / nrm;
            if let Some(&first) = col.iter().find(|x| (**x * inv).abs() > sign_tol) {
                if first < T::zero() {
                    inv = -inv;
                }
            }
            col.iter_mut().for_each(|x| *x *= inv);
            q.extend_from_slice(col);
            k += 1;
            if k == max_rank {
                break;
            }
        }
        start += w;
    }
    Matrix::from_col_major(m, k, &q)
}

/// Orthonormal basis of the column space of `a`, processing columns left to
/// right.
///
/// Residuals with norm `<= tol·max(1, largest column norm)` are discarded and
/// each kept column is scaled so that its first entry of magnitude `> tol` is
/// positive.
pub fn gram_schmidt_columns<T: Real>(a: &Matrix<T>, tol: T) -> Result<Matrix<T>> {
    if !(tol > T::zero()) {
        return Err(Error::InvalidInput("gram_schmidt_columns needs tol > 0".into()));
    }
    if !a.all_finite() {
        return Err(Error::InvalidInput("gram_schmidt_columns input has non-finite entries".into()));
    }
    let (m, n) = a.shape();
    let largest = (0..n)
        .map(|j| (0..m).map(|i| a[(i, j)] * a[(i, j)]).sum::<T>().sqrt())
        .fold(T::zero(), T::max);
    let drop_tol = tol * largest.max(T::one());
    let data = a.as_slice();
    Ok(orthonormalize_columns(
        m,
        n,
        |start, width, buf| {
            for j in 0..width {
                for i in 0..m {
                    buf[j * m + i] = data[i * n + start + j];
                }
            }
        },
        drop_tol,
        tol,
        usize::MAX,
    ))
}

/// Singular values (descending) and right singular vectors (as columns).
#[derive(Clone, Debug)]
pub struct Svd<T> {
    pub values: Vec<T>,
    pub right: Matrix<T>,
}

/// One-sided (Hestenes) Jacobi SVD. Small singular values come out with
/// absolute error near `ε·‖A‖`, so kernels can be read off them directly.
pub fn jacobi_svd<T: Real>(a: &Matrix<T>) -> Svd<T> {
    let (m, n) = a.shape();
    // Column-major working copies.
    let mut u: Vec<T> = (0..n).flat_map(|j| (0..m).map(move |i| (i, j))).map(|(i, j)| a[(i, j)]).collect();
    let mut v: Vec<T> = vec![T::zero(); n * n];
    for j in 0..n {
        v[j * n + j] = T::one();
    }
    let eps = T::epsilon();
    for _sweep in 0..80 {
        let mut rotated = false;
        for p in 0..n {
            for q in (p + 1)..n {
                let (alpha, beta, gamma) = {
                    let cp = &u[p * m..(p + 1) * m];
                    let cq = &u[q * m..(q + 1) * m];
                    (dot(cp, cp), dot(cq, cq), dot(cp, cq))
                };
                if gamma == T::zero() || gamma.abs() <= eps * (alpha * beta).sqrt() {
                    continue;
                }
                rotated = true;
                let zeta = (beta - alpha) / (gamma + gamma);
                let t = {
                    let d = zeta.abs() + (T::one() + zeta * zeta).sqrt();
                    if zeta >= T::zero() {
                        T::one() / d
                    } else {
                        -T::one() / d
                    }
                };
                let c = T::one() / (T::one() + t * t).sqrt();
                let s = c * t;
                for i in 0..m {
                    let x = u[p * m + i];
                    let y = u[q * m + i];
                    u[p * m + i] = c * x - s * y;
                    u[q * m + i] = s * x + c * y;
                }
                for i in 0..n {
                    let x = v[p * n + i];
                    let y = v[q * n + i];
                    v[p * n + i] = c * x - s * y;
                    v[q * n + i] = s * x + c * y;
                }
            }
        }
        if !rotated {
            break;
        }
    }
    let norms: Vec<T> = (0..n).map(|j| dot(&u[j * m..(j + 1) * m], &u[j * m..(j + 1) * m]).sqrt()).collect();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| norms[j].partial_cmp(&norms[i]).unwrap().then(i.cmp(&j)));
    let values = order.iter().map(|&j| norms[j]).collect();
    let right = Matrix::from_fn(n, n, |i, col| v[order[col] * n + i]);
    Svd { values, right }
}
