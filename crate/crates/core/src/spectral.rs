//! Spectra of the distinguished quadruples: the simple spectrum of
//! `P₃ + P₄`, the eigenvector overlaps with `P₁`, `P₂`, the rank-`r`
//! spectral projections `Q⁽ⁿ'ʳ⁾` and the tensor operator `M`.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};

use crate::error::{Error, Result};
use crate::matcore::{kron, matricize, sgn_sym, sym_eig, sym_eig_ql, vectorize, Matrix, Vector, DEFAULT_TOL, RANK_TOL};
use crate::repcat::{build_distinguished, Representation};
use crate::scalar::Real;

/// Largest `n` for which [`operator_m`] solves the `n² x n²` problem densely.
pub const OPERATOR_M_DENSE_MAX: usize = 32;

/// Sorted spectrum of `P₃ + P₄` next to its predicted values.
#[derive(Clone, Debug, PartialEq)]
pub struct SpectralReport<T> {
    pub n: usize,
    pub values: Vec<T>,
    pub predicted: Vec<T>,
    pub max_dev: T,
    /// Smallest gap between consecutive measured eigenvalues.
    pub min_gap: T,
}

/// `Q⁽ⁿ'ʳ⁾` with its parameters.
#[derive(Clone, Debug, PartialEq)]
pub struct QProjection<T> {
    pub n: usize,
    pub r: usize,
    pub p: Matrix<T>,
}

/// One eigenpair of `P₃ + P₄` with its overlaps `⟨e|P₁|e⟩`, `⟨e|P₂|e⟩`.
#[derive(Clone, Debug, PartialEq)]
pub struct Overlap<T> {
    pub lambda: T,
    pub p1: T,
    pub p2: T,
    pub predicted: (T, T),
    /// `λ = 1 − 1/n`, where the common formula does not apply.
    pub exceptional: bool,
}

impl<T: Real> Overlap<T> {
    pub fn deviation(&self) -> T {
        (self.p1 - self.predicted.0).abs().max((self.p2 - self.predicted.1).abs())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum EigenMethod {
    Dense,
    Power,
}

/// Top eigenpair of `M` and the runner-up eigenvalue.
#[derive(Clone, Debug, PartialEq)]
pub struct TopEigenpair<T> {
    pub n: usize,
    pub k: usize,
    pub value: T,
    pub vector: Vector<T>,
    pub second: T,
    pub method: EigenMethod,
}

impl<T: Real> TopEigenpair<T> {
    pub fn gap(&self) -> T {
        self.value - self.second
    }
}

/// Predicted spectrum of `P₃⁽ⁿ⁾ + P₄⁽ⁿ⁾`: `{0,2,…,2n−2}/n` for odd `n`,
/// `{1,3,…,2n−1}/n` for even `n`.
pub fn predicted_spectrum<T: Real>(n: usize) -> Vec<T> {
    let offset = if n.is_multiple_of(2) { 1 } else { 0 };
    let nn = T::from_count(n);
    (0..n).map(|k| T::from_count(2 * k + offset) / nn).collect()
}

fn sum34<T: Real>(rep: &Representation<T>) -> Matrix<T> {
    (rep.gen(2) + rep.gen(3)).symmetrized()
}

pub fn spectrum_sum34<T: Real>(n: usize) -> Result<SpectralReport<T>> {
    spectrum_sum34_of(&build_distinguished(n)?)
}

/// [`spectrum_sum34`] for an already built quadruple.
pub fn spectrum_sum34_of<T: Real>(rep: &Representation<T>) -> Result<SpectralReport<T>> {
    let n = rep.dim();
    let values = sym_eig(&sum34(rep))?.values;
    let predicted = predicted_spectrum(n);
    let max_dev = values.iter().zip(&predicted).map(|(a, b)| (*a - *b).abs()).fold(T::zero(), T::max);
    let min_gap = values.windows(2).map(|w| w[1] - w[0]).fold(T::infinity(), T::min);
    Ok(SpectralReport { n, values, predicted, max_dev, min_gap })
}

fn check_r(n: usize, r: usize) -> Result<()> {
    if r == 0 || r > n {
        return Err(Error::InvalidInput(format!("need 1 <= r <= n, got r = {r}, n = {n}")));
    }
    Ok(())
}

/// `Q = ½(I + sgn((2r − ½)I − n(P₃ + P₄)))`.
pub fn build_q<T: Real>(n: usize, r: usize) -> Result<QProjection<T>> {
    check_r(n, r)?;
    build_q_of(&build_distinguished(n)?, r)
}

pub fn build_q_of<T: Real>(rep: &Representation<T>, r: usize) -> Result<QProjection<T>> {
    let n = rep.dim();
    check_r(n, r)?;
    let nn = T::from_count(n);
    let shift = T::c(2.0) * T::from_count(r) - T::c(0.5);
    let arg = &Matrix::scalar(n, shift) - &sum34(rep).scale(nn);
    let s = sgn_sym(&arg.symmetrized(), T::c(DEFAULT_TOL))?;
    let p = (&Matrix::identity(n) + &s).scale(T::c(0.5)).symmetrized();
    Ok(QProjection { n, r, p })
}

/// `Q` as the span of the eigenvectors of `P₃ + P₄` for its `r` smallest
/// eigenvalues.
pub fn build_q_eig<T: Real>(n: usize, r: usize) -> Result<QProjection<T>> {
    check_r(n, r)?;
    build_q_eig_of(&build_distinguished(n)?, r)
}

pub fn build_q_eig_of<T: Real>(rep: &Representation<T>, r: usize) -> Result<QProjection<T>> {
    let n = rep.dim();
    check_r(n, r)?;
    let eig = sym_eig(&sum34(rep))?;
    let e = eig.vectors.submatrix(0, n, 0, r);
    Ok(QProjection { n, r, p: e.matmul_tr(&e).symmetrized() })
}

/// The `K`-outcome PVM `Q_a = Q⁽ⁿ'ˢᵃ⁾ − Q⁽ⁿ'ˢᵃ⁻¹⁾` with partial sums `s_a`
/// of `ranks`, `n = Σ ranks`.
pub fn build_q_family<T: Real>(ranks: &[usize]) -> Result<Vec<Matrix<T>>> {
    let n = check_ranks(ranks)?;
    build_q_family_of(&build_distinguished(n)?, ranks)
}

fn check_ranks(ranks: &[usize]) -> Result<usize> {
    if ranks.is_empty() || ranks.contains(&0) {
        return Err(Error::InvalidInput(format!("ranks must be nonempty and positive, got {ranks:?}")));
    }
    Ok(ranks.iter().sum())
}

pub fn build_q_family_of<T: Real>(rep: &Representation<T>, ranks: &[usize]) -> Result<Vec<Matrix<T>>> {
    let n = check_ranks(ranks)?;
    if n != rep.dim() {
        return Err(Error::InvalidInput(format!("ranks sum to {n}, quadruple has dimension {}", rep.dim())));
    }
    let mut prev = Matrix::zeros(n, n);
    let mut acc = 0;
    let mut out = Vec::with_capacity(ranks.len());
    for &r in ranks {
        acc += r;
        let q = build_q_of(rep, acc)?.p;
        out.push((&q - &prev).symmetrized());
        prev = q;
    }
    Ok(out)
}

/// Invariant residuals of a `Q` projection: idempotency, rank and
/// commutation with `P₃ + P₄`.
pub fn q_residuals<T: Real>(rep: &Representation<T>, q: &QProjection<T>) -> (T, usize, T) {
    let p = &q.p;
    let idem = p.matmul(p).max_abs_diff(p).max(p.asymmetry());
    let h = sum34(rep);
    let comm = p.matmul(&h).max_abs_diff(&h.matmul(p));
    (idem, crate::matcore::rank_of(p, T::c(RANK_TOL)), comm)
}

pub fn overlap_eigvec_p12<T: Real>(n: usize) -> Result<Vec<Overlap<T>>> {
    overlap_eigvec_p12_of(&build_distinguished(n)?)
}

/// Overlaps of every eigenvector of `P₃ + P₄` with `P₁`, `P₂`. The common
/// value is `1 − 1/(2n) − λ/2`; at `λ = 1 − 1/n` it is `(0, 1)` for even
/// and `(1, 0)` for odd `n`.
pub fn overlap_eigvec_p12_of<T: Real>(rep: &Representation<T>) -> Result<Vec<Overlap<T>>> {
    let n = rep.dim();
    let nn = T::from_count(n);
    let eig = sym_eig(&sum34(rep))?;
    let special = T::one() - T::one() / nn;
    let half = T::c(0.5);
    Ok(eig
        .values
        .iter()
        .enumerate()
        .map(|(k, &lambda)| {
            let e = eig.vectors.column(k);
            let p1 = e.dot(&rep.gen(0).matvec(&e));
            let p2 = e.dot(&rep.gen(1).matvec(&e));
            let exceptional = (lambda - special).abs() <= T::c(0.25) / nn;
            let predicted = if exceptional {
                if n.is_multiple_of(2) {
                    (T::zero(), T::one())
                } else {
                    (T::one(), T::zero())
                }
            } else {
                let v = T::one() - half / nn - half * lambda;
                (v, v)
            };
            Overlap { lambda, p1, p2, predicted, exceptional }
        })
        .collect())
}

/// `M = (n/(2n−1))·Σᵢ Pᵢ ⊗ P_{σ_k(i)}` for the `k`-th cyclic shift `σ_k`,
/// matching the generator order of `cyclic_variant(·, k)`.
pub fn operator_m_matrix<T: Real>(rep: &Representation<T>, k: usize) -> Matrix<T> {
    let n = rep.dim();
    let c = m_scale::<T>(n);
    let mut m = Matrix::zeros(n * n, n * n);
    for i in 0..4 {
        m = &m + &kron(rep.gen(i), rep.gen(shift(i, k)));
    }
    m.scale(c).symmetrized()
}

fn shift(i: usize, k: usize) -> usize {
    (i + 4 - k % 4) % 4
}

fn m_scale<T: Real>(n: usize) -> T {
    T::from_count(n) / T::from_count(2 * n - 1)
}

pub fn operator_m<T: Real>(n: usize, k: usize) -> Result<TopEigenpair<T>> {
    if k > 3 {
        return Err(Error::InvalidInput(format!("shift index must be 0..3, got {k}")));
    }
    operator_m_of(&build_distinguished(n)?, k)
}

/// Top eigenpair of `M`: dense for `n ≤ 32`, power iteration with one
/// deflation step above.
pub fn operator_m_of<T: Real>(rep: &Representation<T>, k: usize) -> Result<TopEigenpair<T>> {
    if rep.dim() <= OPERATOR_M_DENSE_MAX {
        operator_m_dense(rep, k)
    } else {
        operator_m_power(rep, k)
    }
}

fn fix_sign<T: Real>(v: Vector<T>) -> Vector<T> {
    let big = v.max_abs();
    match v.as_slice().iter().find(|x| x.abs() > T::c(1e-8) * big) {
        Some(x) if *x < T::zero() => v.scale(-T::one()),
        _ => v,
    }
}

pub(crate) fn operator_m_dense<T: Real>(rep: &Representation<T>, k: usize) -> Result<TopEigenpair<T>> {
    let n = rep.dim();
    let m = operator_m_matrix(rep, k);
    let eig = sym_eig_ql(&m)?;
    let d = n * n;
    let value = eig.values[d - 1];
    let second = if d > 1 { eig.values[d - 2] } else { T::neg_infinity() };
    let vector = fix_sign(eig.vectors.column(d - 1));
    Ok(TopEigenpair { n, k, value, vector, second, method: EigenMethod::Dense })
}

/// `M·v` without forming `M`, through `mat((A ⊗ B)v) = A·mat(v)·Bᵀ`.
fn apply_m<T: Real>(rep: &Representation<T>, k: usize, v: &Vector<T>) -> Result<Vector<T>> {
    let n = rep.dim();
    let x = matricize(v, n, n)?;
    let mut acc = Matrix::zeros(n, n);
    for i in 0..4 {
        acc = &acc + &rep.gen(i).matmul(&x).matmul_tr(rep.gen(shift(i, k)));
    }
    Ok(vectorize(&acc.scale(m_scale(n))))
}

const POWER_MAX_ITER: usize = 50_000;

/// Dominant eigenpair of the positive semidefinite `M`, restricted to the
/// orthogonal complement of `deflate`.
fn power_top<T: Real>(
    rep: &Representation<T>,
    k: usize,
    deflate: Option<&Vector<T>>,
    seed: u64,
) -> Result<(T, Vector<T>)> {
    let d = rep.dim() * rep.dim();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let project = |v: Vector<T>| match deflate {
        Some(u) => v.sub(&u.scale(u.dot(&v))),
        None => v,
    };
    let start: Vec<T> = (0..d).map(|_| T::c(StandardNormal.sample(&mut rng))).collect();
    let mut v = project(Vector::from_vec(start)?).normalized();
    let mut lambda = T::zero();
    let tol = T::c(1e-13).max(T::epsilon() * T::c(16.0));
    for _ in 0..POWER_MAX_ITER {
        let w = project(apply_m(rep, k, &v)?);
        lambda = v.dot(&w);
        let resid = w.sub(&v.scale(lambda)).norm();
        let norm = w.norm();
        if norm == T::zero() {
            return Ok((T::zero(), v));
        }
        v = w.scale(T::one() / norm);
        if resid <= tol {
            break;
        }
    }
    Ok((lambda, v))
}

pub(crate) fn operator_m_power<T: Real>(rep: &Representation<T>, k: usize) -> Result<TopEigenpair<T>> {
    let (value, top) = power_top(rep, k, None, 0x5eed_0001)?;
    let (second, _) = power_top(rep, k, Some(&top), 0x5eed_0002)?;
    Ok(TopEigenpair { n: rep.dim(), k, value, vector: fix_sign(top), second, method: EigenMethod::Power })
}
