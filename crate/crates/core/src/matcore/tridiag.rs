use crate::error::{Error, Result};
use crate::scalar::Real;

use super::{EigenDecomposition, Matrix};

/// Symmetric eigendecomposition by Householder tridiagonalization followed by
/// implicit QL with Wilkinson-style shifts.
///
/// `O(n³)` with a small constant; used where Jacobi sweeps would dominate the
/// run time. Values ascending, eigenvectors as columns.
pub fn sym_eig_ql<T: Real>(a: &Matrix<T>) -> Result<EigenDecomposition<T>> {
    if !a.is_square() {
        return Err(Error::InvalidInput(format!("sym_eig_ql needs a square matrix, got {:?}", a.shape())));
    }
    if !a.all_finite() {
        return Err(Error::InvalidInput("sym_eig_ql input has non-finite entries".into()));
    }
    let n = a.rows();
    if n == 0 {
        return Ok(EigenDecomposition { values: Vec::new(), vectors: Matrix::zeros(0, 0) });
    }
    // Column-major working copy (the input is symmetric, so this is a plain
    // copy); afterwards row k holds eigenvector k.
    let mut vt = a.symmetrized().into_vec();
    let mut d = vec![T::zero(); n];
    let mut e = vec![T::zero(); n];
    tred2(n, &mut vt, &mut d, &mut e);
    tql2(n, &mut vt, &mut d, &mut e)?;

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| d[i].partial_cmp(&d[j]).unwrap().then(i.cmp(&j)));
    let values = order.iter().map(|&k| d[k]).collect();
    let vectors = Matrix::from_fn(n, n, |i, col| vt[order[col] * n + i]);
    Ok(EigenDecomposition { values, vectors })
}

/// Householder reduction to tridiagonal form; `v` (column-major) is
/// overwritten by the accumulated orthogonal transform, `d`/`e` receive the
/// diagonal and subdiagonal.
fn tred2<T: Real>(n: usize, v: &mut [T], d: &mut [T], e: &mut [T]) {
    let at = |i: usize, j: usize| j * n + i;
    for j in 0..n {
        d[j] = v[at(n - 1, j)];
    }
    for i in (1..n).rev() {
        let mut scale = T::zero();
        let mut h = T::zero();
        for dk in d.iter().take(i) {
            scale += dk.abs();
        }
        if scale == T::zero() {
            e[i] = d[i - 1];
            for j in 0..i {
                d[j] = v[at(i - 1, j)];
                v[at(i, j)] = T::zero();
                v[at(j, i)] = T::zero();
            }
        } else {
            for dk in d.iter_mut().take(i) {
                *dk /= scale;
                h += *dk * *dk;
            }
            let mut f = d[i - 1];
            let mut g = h.sqrt();
            if f > T::zero() {
                g = -g;
            }
            e[i] = scale * g;
            h -= f * g;
            d[i - 1] = f - g;
            for ej in e.iter_mut().take(i) {
                *ej = T::zero();
            }
            for j in 0..i {
                f = d[j];
                v[at(j, i)] = f;
                g = e[j] + v[at(j, j)] * f;
                for k in (j + 1)..i {
                    g += v[at(k, j)] * d[k];
                    e[k] += v[at(k, j)] * f;
                }
                e[j] = g;
            }
            f = T::zero();
            for j in 0..i {
                e[j] /= h;
                f += e[j] * d[j];
            }
            let hh = f / (h + h);
            for j in 0..i {
                e[j] -= hh * d[j];
            }
            for j in 0..i {
                f = d[j];
                g = e[j];
                for k in j..i {
                    v[at(k, j)] -= f * e[k] + g * d[k];
                }
                d[j] = v[at(i - 1, j)];
                v[at(i, j)] = T::zero();
            }
        }
        d[i] = h;
    }
    for i in 0..n - 1 {
        v[at(n - 1, i)] = v[at(i, i)];
        v[at(i, i)] = T::one();
        let h = d[i + 1];
        if h != T::zero() {
            for k in 0..=i {
                d[k] = v[at(k, i + 1)] / h;
            }
            for j in 0..=i {
                let mut g = T::zero();
                for k in 0..=i {
                    g += v[at(k, i + 1)] * v[at(k, j)];
                }
                for k in 0..=i {
                    v[at(k, j)] -= g * d[k];
                }
            }
        }
        for k in 0..=i {
            v[at(k, i + 1)] = T::zero();
        }
    }
    for j in 0..n {
        d[j] = v[at(n - 1, j)];
        v[at(n - 1, j)] = T::zero();
    }
    v[at(n - 1, n - 1)] = T::one();
    e[0] = T::zero();
}

/// Implicit QL on the tridiagonal `(d, e)`; rotations are applied to the rows
/// of `vt`.
fn tql2<T: Real>(n: usize, vt: &mut [T], d: &mut [T], e: &mut [T]) -> Result<()> {
    const MAX_ITER: usize = 60;
    for i in 1..n {
        e[i - 1] = e[i];
    }
    e[n - 1] = T::zero();
    let mut f = T::zero();
    let mut tst1 = T::zero();
    let eps = T::epsilon();
    for l in 0..n {
        tst1 = tst1.max(d[l].abs() + e[l].abs());
        let mut m = l;
        while m < n {
            if e[m].abs() <= eps * tst1 {
                break;
            }
            m += 1;
        }
        if m > l {
            let mut iter = 0;
            loop {
                iter += 1;
                if iter > MAX_ITER {
                    return Err(Error::NotConverged { sweeps: iter, off: e[l].abs().to_f64_lossy() });
                }
                let mut g = d[l];
                let mut p = (d[l + 1] - g) / (e[l] + e[l]);
                let mut r = p.hypot(T::one());
                if p < T::zero() {
                    r = -r;
                }
                d[l] = e[l] / (p + r);
                d[l + 1] = e[l] * (p + r);
                let dl1 = d[l + 1];
                let mut h = g - d[l];
                for di in d.iter_mut().skip(l + 2) {
                    *di -= h;
                }
                f += h;
                p = d[m];
                let mut c = T::one();
                let mut c2 = c;
                let mut c3 = c;
                let el1 = e[l + 1];
                let mut s = T::zero();
                let mut s2 = T::zero();
                for i in (l..m).rev() {
                    c3 = c2;
                    c2 = c;
                    s2 = s;
                    g = c * e[i];
                    h = c * p;
                    r = p.hypot(e[i]);
                    e[i + 1] = s * r;
                    s = e[i] / r;
                    c = p / r;
                    p = c * d[i] - s * g;
                    d[i + 1] = h + s * (c * g + s * d[i]);
                    let (lo, hi) = vt.split_at_mut((i + 1) * n);
                    let row_i = &mut lo[i * n..];
                    let row_next = &mut hi[..n];
                    for (x, y) in row_i.iter_mut().zip(row_next.iter_mut()) {
                        let hk = *y;
                        *y = s * *x + c * hk;
                        *x = c * *x - s * hk;
                    }
                }
                p = -s * s2 * c3 * el1 * e[l] / dl1;
                e[l] = s * p;
                d[l] = c * p;
                if e[l].abs() <= eps * tst1 {
                    break;
                }
            }
        }
        d[l] += f;
        e[l] = T::zero();
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matcore::sym_eig;

    fn check(a: &Matrix<f64>) {
        let e = sym_eig_ql(a).unwrap();
        let n = a.rows();
        assert!(e.vectors.tr_matmul(&e.vectors).max_abs_diff(&Matrix::identity(n)) < 1e-12);
        assert!(e.reconstruct().max_abs_diff(a) < 1e-12 * a.max_abs().max(1.0));
        assert!(e.values.windows(2).all(|w| w[0] <= w[1]));
        let j = sym_eig(a).unwrap();
        for (x, y) in e.values.iter().zip(&j.values) {
            assert!((x - y).abs() < 1e-12 * a.max_abs().max(1.0));
        }
    }

    #[test]
    fn small_cases() {
        check(&Matrix::diag(&[3.0, 1.0, 2.0]));
        check(&Matrix::from_rows(&[vec![0.0, 1.0], vec![1.0, 0.0]]).unwrap());
        check(&Matrix::<f64>::zeros(3, 3));
        check(&Matrix::<f64>::identity(1));
    }

    #[test]
    fn dense_symmetric() {
        let a = Matrix::<f64>::from_fn(40, 40, |i, j| ((i * j + 3 * (i + j)) % 11) as f64 / 11.0 - 0.4 + (i + j) as f64 / 80.0);
        check(&a.symmetrized());
    }

    #[test]
    fn rejects_bad_shape() {
        assert!(sym_eig_ql(&Matrix::<f64>::zeros(2, 3)).is_err());
    }
}
