//! Quadruples of projections summing to a scalar multiple of the identity,
//! the reflection functors between them, and the distinguished quadruples
//! obtained by iterating the Coxeter functor from the one-dimensional seed.

use num_rational::Ratio;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::intertwine::intertwiner_basis;
use crate::matcore::{
    orthogonal_complement, orthonormal_range, orthonormalize_columns, rank_of, sym_eig, Matrix, DEFAULT_TOL, RANK_TOL,
};
use crate::scalar::Real;

/// Exact rational scalar.
pub type Rational = Ratio<i64>;

/// Drift in `‖X² − X‖∞` above which a chain step re-projects its output.
pub const REPROJECT_DRIFT: f64 = 1e-11;

/// The scalar `α`, with its exact value when it is known to be rational.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Alpha<T> {
    value: T,
    exact: Option<Rational>,
}

impl<T: Real> Alpha<T> {
    pub fn exact(r: Rational) -> Self {
        Self { value: T::c(*r.numer() as f64) / T::c(*r.denom() as f64), exact: Some(r) }
    }

    pub fn approx(value: T) -> Self {
        Self { value, exact: None }
    }

    pub fn value(&self) -> T {
        self.value
    }

    pub fn as_exact(&self) -> Option<Rational> {
        self.exact
    }

    fn equals(&self, r: i64, tol: T) -> bool {
        match self.exact {
            Some(e) => e == Rational::from_integer(r),
            None => (self.value - T::c(r as f64)).abs() <= tol,
        }
    }

    /// `lo < α < hi`; exact when available.
    fn strictly_between(&self, lo: i64, hi: i64) -> bool {
        match self.exact {
            Some(e) => e > Rational::from_integer(lo) && e < Rational::from_integer(hi),
            None => self.value > T::c(lo as f64) && self.value < T::c(hi as f64),
        }
    }

    pub fn approx_eq(&self, other: &Self, tol: T) -> bool {
        match (self.exact, other.exact) {
            (Some(a), Some(b)) => a == b,
            _ => (self.value - other.value).abs() <= tol,
        }
    }

    fn map(&self, exact: impl Fn(Rational) -> Rational, approx: impl Fn(T) -> T) -> Self {
        match self.exact {
            Some(e) => Self::exact(exact(e)),
            None => Self::approx(approx(self.value)),
        }
    }
}

/// `(α; n; d₁..d₄)` with ranks of the four projections.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct RankSignature {
    pub alpha: Rational,
    pub n: usize,
    pub d: [usize; 4],
}

impl RankSignature {
    pub fn new(alpha: Rational, n: usize, d: [usize; 4]) -> Self {
        Self { alpha, n, d }
    }

    pub fn after_t(&self) -> Self {
        Self { alpha: Rational::from_integer(4) - self.alpha, n: self.n, d: self.d.map(|di| self.n - di) }
    }

    /// `None` when `α ∈ {0, 1}` or `Σd < n`.
    pub fn after_s(&self) -> Option<Self> {
        if self.alpha.is_zero() || self.alpha.is_one() {
            return None;
        }
        let total: usize = self.d.iter().sum();
        let n = total.checked_sub(self.n)?;
        Some(Self { alpha: self.alpha / (self.alpha - Rational::one()), n, d: self.d })
    }

    pub fn after_phi_plus(&self) -> Option<Self> {
        self.after_t().after_s()
    }
}

/// Four symmetric projections on `ℝ^dim` summing to `α·I`.
#[derive(Clone, Debug)]
pub struct Representation<T> {
    alpha: Alpha<T>,
    gens: [Matrix<T>; 4],
}

/// Worst-case violations of the defining relations.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct RelationResiduals<T> {
    pub idempotent: T,
    pub symmetric: T,
    pub sum: T,
}

impl<T: Real> RelationResiduals<T> {
    pub fn max(&self) -> T {
        self.idempotent.max(self.symmetric).max(self.sum)
    }
}

impl<T: Real> Representation<T> {
    /// Checks shapes only; use [`Representation::residuals`] for the relations.
    pub fn new(alpha: Alpha<T>, gens: [Matrix<T>; 4]) -> Result<Self> {
        let n = gens[0].rows();
        for (i, g) in gens.iter().enumerate() {
            if g.shape() != (n, n) {
                return Err(Error::InvalidInput(format!(
                    "generator {} has shape {:?}, expected {n}x{n}",
                    i + 1,
                    g.shape()
                )));
            }
            if !g.all_finite() {
                return Err(Error::InvalidInput(format!("generator {} has non-finite entries", i + 1)));
            }
        }
        Ok(Self { alpha, gens })
    }

    /// Like [`Representation::new`] but also rejects quadruples violating the
    /// relations at `tol`.
    pub fn validated(alpha: Alpha<T>, gens: [Matrix<T>; 4], tol: T) -> Result<Self> {
        let rep = Self::new(alpha, gens)?;
        let r = rep.residuals();
        if r.max() > tol {
            return Err(Error::NotARepresentation(format!(
                "relation residuals {:?} exceed {:e}",
                r.map_f64(),
                tol.to_f64_lossy()
            )));
        }
        Ok(rep)
    }

    pub fn alpha(&self) -> Alpha<T> {
        self.alpha
    }

    pub fn dim(&self) -> usize {
        self.gens[0].rows()
    }

    pub fn gens(&self) -> &[Matrix<T>; 4] {
        &self.gens
    }

    pub fn gen(&self, i: usize) -> &Matrix<T> {
        &self.gens[i]
    }

    pub fn into_gens(self) -> [Matrix<T>; 4] {
        self.gens
    }

    pub fn residuals(&self) -> RelationResiduals<T> {
        let n = self.dim();
        let mut idempotent = T::zero();
        let mut symmetric = T::zero();
        let mut sum = Matrix::zeros(n, n);
        for g in &self.gens {
            idempotent = idempotent.max(g.matmul(g).max_abs_diff(g));
            symmetric = symmetric.max(g.asymmetry());
            sum = &sum + g;
        }
        let sum = sum.max_abs_diff(&Matrix::scalar(n, self.alpha.value));
        RelationResiduals { idempotent, symmetric, sum }
    }

    pub fn is_valid(&self, tol: T) -> bool {
        self.residuals().max() <= tol
    }

    /// Ranks by numerical rank at the default rank tolerance.
    pub fn ranks(&self) -> [usize; 4] {
        let tol = T::c(RANK_TOL);
        [0, 1, 2, 3].map(|i| rank_of(&self.gens[i], tol))
    }

    /// Ranks as rounded traces; exact for projections and `O(n²)`.
    pub fn trace_ranks(&self) -> [usize; 4] {
        [0, 1, 2, 3].map(|i| trace_rank(&self.gens[i]))
    }

    /// `None` when `α` is not known exactly.
    pub fn rank_signature(&self) -> Option<RankSignature> {
        Some(RankSignature::new(self.alpha.exact?, self.dim(), self.ranks()))
    }

    /// Normalized traces `τ(X_i) = tr(X_i)/n`.
    pub fn normalized_traces(&self) -> [T; 4] {
        let n = T::from_count(self.dim());
        [0, 1, 2, 3].map(|i| self.gens[i].trace() / n)
    }

    /// `τ(X_i X_j)`.
    pub fn trace_product(&self, i: usize, j: usize) -> T {
        self.gens[i].frobenius_dot(&self.gens[j]) / T::from_count(self.dim())
    }

    pub fn conjugated(&self, o: &Matrix<T>) -> Self {
        Self { alpha: self.alpha, gens: self.gens.clone().map(|g| g.conjugate_by(o).symmetrized()) }
    }

    /// Restriction to the invariant subspace spanned by the orthonormal columns of `basis`.
    pub fn compress(&self, basis: &Matrix<T>) -> Self {
        Self { alpha: self.alpha, gens: self.gens.clone().map(|g| basis.tr_matmul(&g.matmul(basis)).symmetrized()) }
    }

    pub fn cast<U: Real>(&self) -> Representation<U> {
        Representation {
            alpha: match self.alpha.exact {
                Some(e) => Alpha::exact(e),
                None => Alpha::approx(U::c(self.alpha.value.to_f64_lossy())),
            },
            gens: self.gens.clone().map(|g| g.cast()),
        }
    }
}

impl<T: Real> RelationResiduals<T> {
    fn map_f64(&self) -> RelationResiduals<f64> {
        RelationResiduals {
            idempotent: self.idempotent.to_f64_lossy(),
            symmetric: self.symmetric.to_f64_lossy(),
            sum: self.sum.to_f64_lossy(),
        }
    }
}

fn trace_rank<T: Real>(p: &Matrix<T>) -> usize {
    p.trace().round().max(T::zero()).to_usize().unwrap_or(0)
}

/// Linear reflection: `X_i ↦ I − X_i`, `α ↦ 4 − α`.
pub fn functor_t<T: Real>(rep: &Representation<T>) -> Representation<T> {
    let n = rep.dim();
    let id = Matrix::identity(n);
    Representation {
        alpha: rep.alpha.map(|a| Rational::from_integer(4) - a, |a| T::c(4.0) - a),
        gens: rep.gens.clone().map(|g| &id - &g),
    }
}

/// Hyperbolic reflection, `α ↦ α/(α−1)`, acting on a space of dimension
/// `Σ rk X_i − n`.
pub fn functor_s<T: Real>(rep: &Representation<T>) -> Result<Representation<T>> {
    let alpha = rep.alpha;
    let guard = T::c(DEFAULT_TOL);
    if alpha.equals(0, guard) || alpha.equals(1, guard) {
        return Err(Error::Domain(format!("S is undefined at alpha = {}", alpha.value)));
    }
    let n = rep.dim();
    let gs_tol = T::c(DEFAULT_TOL).max(T::epsilon() * T::c(64.0) * T::from_count(n.max(1)));

    // Orthonormal bases u_i of ran X_i, side by side.
    let mut blocks = Vec::with_capacity(4);
    for g in &rep.gens {
        let target = g.trace();
        let limit = if (target - target.round()).abs() < T::c(0.1) { trace_rank(g) } else { usize::MAX };
        let data = g.as_slice();
        let u = orthonormalize_columns(
            n,
            n,
            |start, width, buf| {
                for j in 0..width {
                    for i in 0..n {
                        buf[j * n + i] = data[i * n + start + j];
                    }
                }
            },
            gs_tol,
            gs_tol,
            limit,
        );
        blocks.push(u);
    }
    let d: Vec<usize> = blocks.iter().map(Matrix::cols).collect();
    let total: usize = d.iter().sum();
    if total < n {
        return Err(Error::InconsistentRepresentation(format!("sum of ranks {total} is below the dimension {n}")));
    }
    let target = total - n;
    let w = Matrix::hstack(&blocks);
    let wd = w.as_slice();
    let inv_alpha = T::one() / alpha.value;

    // Columns of I − (1/α)·WᵀW, generated panel by panel.
    let v = orthonormalize_columns(
        total,
        total,
        |start, width, buf| {
            T::gemm(total, n, width, -inv_alpha, wd, 1, total, &wd[start..], total, 1, T::zero(), buf, 1, total);
            for j in 0..width {
                buf[(start + j) + j * total] += T::one();
            }
        },
        gs_tol,
        gs_tol,
        target,
    );
    if v.cols() != target {
        return Err(Error::InconsistentRepresentation(format!(
            "complement of the stacked isometry has dimension {}, expected {target}",
            v.cols()
        )));
    }

    let factor = alpha.value / (alpha.value - T::one());
    let mut offset = 0;
    let gens = [0, 1, 2, 3].map(|i| {
        let vi = v.submatrix(offset, d[i], 0, target);
        offset += d[i];
        vi.tr_matmul(&vi).scale(factor).symmetrized()
    });
    Ok(Representation {
        alpha: alpha.map(|a| a / (a - Rational::one()), |a| a / (a - T::one())),
        gens,
    })
}

/// Coxeter functor `S∘T`, `α ↦ 1 + 1/(3−α)`, defined for `α ∈ (0, 3)`.
pub fn functor_phi_plus<T: Real>(rep: &Representation<T>) -> Result<Representation<T>> {
    if !rep.alpha.strictly_between(0, 3) {
        return Err(Error::Domain(format!("Phi+ needs alpha in (0,3), got {}", rep.alpha.value)));
    }
    functor_s(&functor_t(rep))
}

/// One step of the distinguished chain.
#[derive(Clone, Debug, PartialEq)]
pub struct ChainStep {
    pub n: usize,
    /// `max_i ‖X_i² − X_i‖∞` of the raw step output.
    pub drift: f64,
    /// Whether the generators were re-projected onto exact projections.
    pub reprojected: bool,
}

/// Per-step drift record of [`build_distinguished_logged`].
#[derive(Clone, Debug, Default, PartialEq)]
pub struct BuildLog {
    pub steps: Vec<ChainStep>,
}

impl BuildLog {
    pub fn reprojections(&self) -> usize {
        self.steps.iter().filter(|s| s.reprojected).count()
    }

    pub fn max_drift(&self) -> f64 {
        self.steps.iter().map(|s| s.drift).fold(0.0, f64::max)
    }
}

#[cfg(test)]
fn seed<T: Real>() -> Representation<T> {
    let one = Matrix::scalar(1, T::one());
    let zero = Matrix::zeros(1, 1);
    Representation {
        alpha: Alpha::exact(Rational::one()),
        gens: [one, zero.clone(), zero.clone(), zero],
    }
}

/// Representation held as frames `a_i` (`m x d_i`) with `X_i = a_i·a_iᵀ`.
struct Frames<T> {
    alpha: Rational,
    frames: [Matrix<T>; 4],
}

impl<T: Real> Frames<T> {
    fn seed() -> Self {
        Self {
            alpha: Rational::one(),
            frames: [Matrix::identity(1), Matrix::zeros(1, 0), Matrix::zeros(1, 0), Matrix::zeros(1, 0)],
        }
    }

    fn dim(&self) -> usize {
        self.frames[0].rows()
    }

    /// `Φ⁺ = S∘T` on frames. Returns the drift `max_i ‖a_iᵀa_i − I‖∞`, which
    /// equals the idempotency defect of `a_i·a_iᵀ` to first order.
    fn phi_plus(&self, tol: T) -> Result<(Self, T)> {
        let beta = Rational::from_integer(4) - self.alpha;
        // T: frames of the complements.
        let comps = self.frames.iter().map(|a| orthogonal_complement(a, tol)).collect::<Result<Vec<_>>>()?;
        let d: Vec<usize> = comps.iter().map(Matrix::cols).collect();
        // S: complement of the row space of the stacked frame.
        let w = Matrix::hstack(&comps);
        let v = orthogonal_complement(&w.transpose(), tol)?;
        let c = beta / (beta - Rational::one());
        let sc = T::c(*c.numer() as f64 / *c.denom() as f64).sqrt();
        let mut offset = 0;
        let frames = [0, 1, 2, 3].map(|i| {
            let vi = v.submatrix(offset, d[i], 0, v.cols()).transpose().scale(sc);
            offset += d[i];
            vi
        });
        let drift = frames
            .iter()
            .map(|a| a.tr_matmul(a).max_abs_diff(&Matrix::identity(a.cols())))
            .fold(T::zero(), T::max);
        Ok((Self { alpha: c, frames }, drift))
    }

    fn reproject(&mut self, tol: T) -> Result<()> {
        for a in self.frames.iter_mut() {
            *a = orthonormal_range(a, tol)?;
        }
        Ok(())
    }

    fn into_representation(self) -> Representation<T> {
        Representation {
            alpha: Alpha::exact(self.alpha),
            gens: self.frames.map(|a| a.matmul_tr(&a).symmetrized()),
        }
    }
}

/// The distinguished quadruple in dimension `n` (α = 2 − 1/n), by `n − 1`
/// applications of Φ⁺ to `((1),(0),(0),(0))`.
pub fn build_distinguished<T: Real>(n: usize) -> Result<Representation<T>> {
    build_distinguished_logged(n).map(|(rep, _)| rep)
}

/// [`build_distinguished`] with the per-step drift log.
///
/// The chain carries each projection as an isometric frame and takes both
/// complements of a step by Householder QR; frames drifting past
/// [`REPROJECT_DRIFT`] are re-orthonormalized.
pub fn build_distinguished_logged<T: Real>(n: usize) -> Result<(Representation<T>, BuildLog)> {
    if n == 0 {
        return Err(Error::InvalidInput("build_distinguished needs n >= 1".into()));
    }
    let tol = T::c(DEFAULT_TOL).max(T::epsilon() * T::c(64.0));
    let mut cur = Frames::<T>::seed();
    let mut log = BuildLog::default();
    for k in 2..=n {
        let (mut next, drift) = cur.phi_plus(tol)?;
        let drift = drift.to_f64_lossy();
        let reprojected = drift > REPROJECT_DRIFT;
        if reprojected {
            next.reproject(tol)?;
        }
        if next.dim() != k {
            return Err(Error::NumericalDegeneracy(format!("chain step produced dimension {} instead of {k}", next.dim())));
        }
        log.steps.push(ChainStep { n: k, drift, reprojected });
        cur = next;
    }
    Ok((cur.into_representation(), log))
}

/// `[⌊n/2⌋ − (−1)ⁿ, ⌊n/2⌋, ⌊n/2⌋, ⌊n/2⌋]`.
pub fn distinguished_ranks(n: usize) -> [usize; 4] {
    let half = n / 2;
    let first = if n.is_multiple_of(2) { half - 1 } else { half + 1 };
    [first, half, half, half]
}

/// Generators shifted cyclically: `k = 1` maps `(X₁,X₂,X₃,X₄)` to `(X₄,X₁,X₂,X₃)`.
pub fn cyclic_variant<T: Real>(rep: &Representation<T>, k: usize) -> Representation<T> {
    let k = k % 4;
    Representation {
        alpha: rep.alpha,
        gens: [0, 1, 2, 3].map(|i| rep.gens[(i + 4 - k) % 4].clone()),
    }
}

/// Block-diagonal direct sum.
pub fn direct_sum<T: Real>(reps: &[Representation<T>]) -> Result<Representation<T>> {
    let first = reps.first().ok_or_else(|| Error::InvalidInput("direct_sum of no representations".into()))?;
    let tol = T::c(DEFAULT_TOL);
    if let Some(bad) = reps.iter().find(|r| !r.alpha.approx_eq(&first.alpha, tol)) {
        return Err(Error::InvalidInput(format!(
            "direct_sum alpha mismatch: {} vs {}",
            first.alpha.value,
            bad.alpha.value
        )));
    }
    let alpha = if reps.iter().all(|r| r.alpha.exact == first.alpha.exact) {
        first.alpha
    } else {
        Alpha::approx(first.alpha.value)
    };
    let gens = [0, 1, 2, 3].map(|i| Matrix::block_diag(&reps.iter().map(|r| r.gens[i].clone()).collect::<Vec<_>>()));
    Ok(Representation { alpha, gens })
}

/// Orthogonal `O` with `O·a_i·Oᵀ = b_i` for all four generators, if one exists.
pub fn check_equivalence<T: Real>(
    a: &Representation<T>,
    b: &Representation<T>,
    tol: T,
) -> Result<Option<Matrix<T>>> {
    if a.dim() != b.dim() {
        return Err(Error::InvalidInput(format!("dimension mismatch: {} vs {}", a.dim(), b.dim())));
    }
    if !a.alpha.approx_eq(&b.alpha, tol) {
        return Ok(None);
    }
    // O·a_i = b_i·O, so O·a_i·Oᵀ = b_i once O is orthogonal.
    let kernel = intertwiner_basis(&a.gens, &b.gens, tol)?;
    let Some(o) = combine(&kernel) else { return Ok(None) };
    let Some(q) = polar_factor(&o, tol)? else { return Ok(None) };
    let resid = (0..4)
        .map(|i| a.gens[i].conjugate_by(&q).max_abs_diff(&b.gens[i]))
        .fold(T::zero(), T::max);
    if resid <= T::c(10.0) * tol {
        Ok(Some(q))
    } else {
        Ok(None)
    }
}

/// Deterministic generic combination of a kernel basis.
fn combine<T: Real>(kernel: &[Matrix<T>]) -> Option<Matrix<T>> {
    let first = kernel.first()?;
    let mut o = first.clone();
    for (k, z) in kernel.iter().enumerate().skip(1) {
        let w = T::c(((k as f64 + 1.0) * 0.754_877_666_246_692_7).fract() + 0.25);
        o = &o + &z.scale(w);
    }
    Some(o)
}

/// Orthogonal polar factor `O·(OᵀO)^{-1/2}`; `None` when the smallest
/// singular value is at most `tol` relative to the largest.
pub(crate) fn polar_factor<T: Real>(o: &Matrix<T>, tol: T) -> Result<Option<Matrix<T>>> {
    let eig = sym_eig(&o.tr_matmul(o).symmetrized())?;
    let smin = eig.values.first().copied().unwrap_or(T::zero()).max(T::zero()).sqrt();
    let smax = eig.values.last().copied().unwrap_or(T::zero()).max(T::zero()).sqrt();
    if smax <= T::zero() || smin <= tol * smax {
        return Ok(None);
    }
    let inv_sqrt = eig.apply(|x| T::one() / x.sqrt());
    Ok(Some(o.matmul(&inv_sqrt)))
}

/// Integer 4x4 matrix.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct IntMatrix4(pub [[i64; 4]; 4]);

impl IntMatrix4 {
    /// Exact determinant by cofactor expansion in `i128`.
    pub fn det(&self) -> i128 {
        fn det3(m: [[i128; 3]; 3]) -> i128 {
            m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
                + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0])
        }
        let a = self.0.map(|row| row.map(i128::from));
        (0..4)
            .map(|c| {
                let mut minor = [[0i128; 3]; 3];
                for (r, row) in minor.iter_mut().enumerate() {
                    let mut k = 0;
                    for j in 0..4 {
                        if j != c {
                            row[k] = a[r + 1][j];
                            k += 1;
                        }
                    }
                }
                let sign = if c % 2 == 0 { 1 } else { -1 };
                sign * a[0][c] * det3(minor)
            })
            .sum()
    }

    pub fn transpose(&self) -> Self {
        let mut t = [[0; 4]; 4];
        for (i, row) in self.0.iter().enumerate() {
            for (j, &v) in row.iter().enumerate() {
                t[j][i] = v;
            }
        }
        Self(t)
    }

    /// Solves `M·x = rhs` over the rationals by Gaussian elimination.
    pub fn solve(&self, rhs: [i64; 4]) -> Option<[Rational; 4]> {
        let mut a: Vec<Vec<Rational>> = (0..4)
            .map(|i| {
                let mut row: Vec<Rational> = self.0[i].iter().map(|&v| Rational::from_integer(v)).collect();
                row.push(Rational::from_integer(rhs[i]));
                row
            })
            .collect();
        for col in 0..4 {
            let pivot = (col..4).find(|&r| !a[r][col].is_zero())?;
            a.swap(col, pivot);
            for r in 0..4 {
                if r != col && !a[r][col].is_zero() {
                    let f = a[r][col] / a[col][col];
                    for c in col..5 {
                        let v = a[col][c];
                        a[r][c] -= f * v;
                    }
                }
            }
        }
        Some([0, 1, 2, 3].map(|i| a[i][4] / a[i][i]))
    }

    pub fn to_matrix<T: Real>(&self) -> Matrix<T> {
        Matrix::from_fn(4, 4, |i, j| T::c(self.0[i][j] as f64))
    }
}

/// Circulant rank matrix: row `i` lists `rk P_{j−i mod 4}`, i.e.
/// `−(−1)ⁿ·I₄ + ⌊n/2⌋·J₄`.
pub fn rank_matrix_4x4(n: usize) -> Result<IntMatrix4> {
    if n == 0 {
        return Err(Error::InvalidInput("rank_matrix_4x4 needs n >= 1".into()));
    }
    let rk = distinguished_ranks(n).map(|r| r as i64);
    let mut m = [[0i64; 4]; 4];
    for (i, row) in m.iter_mut().enumerate() {
        for (j, v) in row.iter_mut().enumerate() {
            *v = rk[(j + 4 - i) % 4];
        }
    }
    Ok(IntMatrix4(m))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sig(a: (i64, i64), n: usize, d: [usize; 4]) -> RankSignature {
        RankSignature::new(Rational::new(a.0, a.1), n, d)
    }

    #[test]
    fn t_examples() {
        let z = Representation::<f64>::new(Alpha::exact(Rational::zero()), [0, 1, 2, 3].map(|_| Matrix::zeros(2, 2))).unwrap();
        let t = functor_t(&z);
        assert_eq!(t.alpha().as_exact(), Some(Rational::from_integer(4)));
        assert!(t.gens().iter().all(|g| *g == Matrix::identity(2)));

        let s = seed::<f64>();
        let ts = functor_t(&s);
        assert_eq!(ts.alpha().as_exact(), Some(Rational::from_integer(3)));
        let vals: Vec<f64> = ts.gens().iter().map(|g| g[(0, 0)]).collect();
        assert_eq!(vals, vec![0.0, 1.0, 1.0, 1.0]);
        let back = functor_t(&ts);
        for i in 0..4 {
            assert_eq!(back.gen(i), s.gen(i));
        }
    }

    #[test]
    fn s_guards_alpha_one() {
        let err = functor_s(&seed::<f64>()).unwrap_err();
        assert!(matches!(err, Error::Domain(_)));
        assert_eq!(sig((1, 1), 1, [1, 0, 0, 0]).after_s(), None);
    }

    #[test]
    fn s_on_complemented_seed() {
        let ts = functor_t(&seed::<f64>());
        assert_eq!(ts.rank_signature(), Some(sig((3, 1), 1, [0, 1, 1, 1])));
        let s = functor_s(&ts).unwrap();
        assert_eq!(s.rank_signature(), Some(sig((3, 2), 2, [0, 1, 1, 1])));
        assert!(s.is_valid(1e-9));
    }

    #[test]
    fn phi_plus_signatures() {
        let p2 = functor_phi_plus(&seed::<f64>()).unwrap();
        assert_eq!(p2.rank_signature(), Some(sig((3, 2), 2, [0, 1, 1, 1])));
        let p3 = functor_phi_plus(&p2).unwrap();
        assert_eq!(p3.rank_signature(), Some(sig((5, 3), 3, [2, 1, 1, 1])));
        assert!(p3.residuals().sum < 1e-12);
        assert_eq!(sig((3, 2), 2, [0, 1, 1, 1]).after_phi_plus(), Some(sig((5, 3), 3, [2, 1, 1, 1])));
    }

    #[test]
    fn phi_plus_domain() {
        let rep = Representation::<f64>::new(Alpha::exact(Rational::from_integer(3)), [0, 1, 2, 3].map(|_| Matrix::identity(1))).unwrap();
        assert!(matches!(functor_phi_plus(&rep), Err(Error::Domain(_))));
    }

    #[test]
    fn s_reports_rank_deficit() {
        // Σ rk = 0 < n = 1 with α = 2 (relations deliberately violated).
        let rep = Representation::<f64>::new(Alpha::exact(Rational::from_integer(2)), [0, 1, 2, 3].map(|_| Matrix::zeros(1, 1))).unwrap();
        assert!(matches!(functor_s(&rep), Err(Error::InconsistentRepresentation(_))));
    }

    #[test]
    fn seed_and_small_cases() {
        let p1 = build_distinguished::<f64>(1).unwrap();
        assert_eq!(p1.gen(0)[(0, 0)], 1.0);
        assert_eq!(p1.trace_ranks(), [1, 0, 0, 0]);
        assert!(matches!(build_distinguished::<f64>(0), Err(Error::InvalidInput(_))));
        assert_eq!(build_distinguished::<f64>(6).unwrap().ranks(), [2, 3, 3, 3]);
    }

    #[test]
    fn n2_literal_step_matches_printed_matrices_entrywise() {
        let p = functor_phi_plus(&seed::<f64>()).unwrap();
        let r3 = 3f64.sqrt() / 4.0;
        let want = [
            Matrix::zeros(2, 2),
            Matrix::diag(&[1.0, 0.0]),
            Matrix::from_rows(&[vec![0.25, -r3], vec![-r3, 0.75]]).unwrap(),
            Matrix::from_rows(&[vec![0.25, r3], vec![r3, 0.75]]).unwrap(),
        ];
        for i in 0..4 {
            assert!(p.gen(i).max_abs_diff(&want[i]) < 1e-14, "generator {i}");
        }
    }

    #[test]
    fn chain_is_equivalent_to_literal_iteration() {
        let mut lit = seed::<f64>();
        for n in 2..=12 {
            lit = functor_phi_plus(&lit).unwrap();
            let (chain, log) = build_distinguished_logged::<f64>(n).unwrap();
            assert_eq!(chain.alpha().as_exact(), lit.alpha().as_exact());
            assert_eq!(chain.alpha().as_exact(), Some(Rational::new(2 * n as i64 - 1, n as i64)));
            assert!(chain.residuals().max() < 1e-13 && log.reprojections() == 0, "n={n}");
            assert!(check_equivalence(&lit, &chain, 1e-9).unwrap().is_some(), "n={n}");
        }
    }

    #[test]
    fn cyclic_shift_order() {
        let p = build_distinguished::<f64>(3).unwrap();
        let c1 = cyclic_variant(&p, 1);
        assert_eq!(c1.gen(0), p.gen(3));
        assert_eq!(c1.gen(1), p.gen(0));
        let c4 = cyclic_variant(&cyclic_variant(&c1, 1), 2);
        for i in 0..4 {
            assert_eq!(c4.gen(i), p.gen(i));
        }
        assert_eq!(cyclic_variant(&p, 0).gen(2), p.gen(2));
    }

    #[test]
    fn direct_sum_ranks_add() {
        let p = build_distinguished::<f64>(3).unwrap();
        let s = direct_sum(&[p.clone(), cyclic_variant(&p, 1)]).unwrap();
        assert_eq!(s.dim(), 6);
        assert_eq!(s.ranks(), [3, 3, 2, 2]);
        assert!(s.is_valid(1e-9));
        let single = direct_sum(std::slice::from_ref(&p)).unwrap();
        assert_eq!(single.gen(1), p.gen(1));
        let other = build_distinguished::<f64>(2).unwrap();
        let odd = Representation::new(other.alpha(), [0, 1, 2, 3].map(|_| Matrix::zeros(3, 3))).unwrap();
        assert!(matches!(direct_sum(&[p, odd]), Err(Error::InvalidInput(_))));
    }

    #[test]
    fn equivalence_identity_and_variants() {
        let p = build_distinguished::<f64>(3).unwrap();
        let o = check_equivalence(&p, &p, 1e-9).unwrap().expect("self-equivalent");
        assert!(o.max_abs_diff(&Matrix::identity(3)) < 1e-9 || o.max_abs_diff(&Matrix::scalar(3, -1.0)) < 1e-9);
        for k in 1..4 {
            assert!(check_equivalence(&p, &cyclic_variant(&p, k), 1e-9).unwrap().is_none(), "k={k}");
        }
        let q = build_distinguished::<f64>(2).unwrap();
        assert!(matches!(check_equivalence(&p, &q, 1e-9), Err(Error::InvalidInput(_))));
    }

    #[test]
    fn equivalence_recovers_a_rotation() {
        let p = build_distinguished::<f64>(3).unwrap();
        let (c1, s1, c2, s2) = (0.6f64, 0.8f64, 0.28f64, 0.96f64);
        let r1 = Matrix::from_rows(&[vec![c1, -s1, 0.0], vec![s1, c1, 0.0], vec![0.0, 0.0, 1.0]]).unwrap();
        let r2 = Matrix::from_rows(&[vec![1.0, 0.0, 0.0], vec![0.0, c2, -s2], vec![0.0, s2, c2]]).unwrap();
        let o = r1.matmul(&r2);
        let b = p.conjugated(&o);
        let found = check_equivalence(&p, &b, 1e-9).unwrap().expect("conjugate is equivalent");
        for i in 0..4 {
            assert!(p.gen(i).conjugate_by(&found).max_abs_diff(b.gen(i)) < 1e-9);
        }
    }

    #[test]
    fn rank_matrix_closed_form() {
        let i4 = IntMatrix4([[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 1, 0], [0, 0, 0, 1]]);
        assert_eq!(rank_matrix_4x4(1).unwrap(), i4);
        let m3 = rank_matrix_4x4(3).unwrap();
        assert_eq!(m3.0, [[2, 1, 1, 1], [1, 2, 1, 1], [1, 1, 2, 1], [1, 1, 1, 2]]);
        assert_eq!(m3.det(), 5);
        let sol = m3.solve([2, 1, 1, 1]).unwrap();
        assert_eq!(sol, [1, 0, 0, 0].map(Rational::from_integer));
        assert!(rank_matrix_4x4(0).is_err());
    }

    #[test]
    fn generic_over_f32() {
        let p = build_distinguished::<f32>(5).unwrap();
        assert_eq!(p.trace_ranks(), distinguished_ranks(5));
        assert!(p.residuals().max() < 1e-4);
    }
}
