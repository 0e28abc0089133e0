//! Bipartite projective strategies, Born-rule correlations and the closed
//! correlation tables of `𝒮ₙ` and `𝒮ₙ,ᵣ`.
//!
//! Inputs and outcomes are 0-based here; outcome 0 is the distinguished
//! projection.

use crate::error::{Error, Result};
use crate::matcore::{matricize, Matrix, Vector};
use crate::repcat::{build_distinguished, Representation};
use crate::scalar::Real;
use crate::spectral::{build_q_family_of, build_q_of};

/// Projection-valued measure on a common space.
#[derive(Clone, Debug, PartialEq)]
pub struct Pvm<T> {
    outcomes: Vec<Matrix<T>>,
}

impl<T: Real> Pvm<T> {
    /// Shape checks only; see [`Pvm::defect`] for the projective relations.
    pub fn new(outcomes: Vec<Matrix<T>>) -> Result<Self> {
        let first = outcomes.first().ok_or_else(|| Error::InvalidInput("PVM with no outcomes".into()))?;
        let d = first.rows();
        if outcomes.iter().any(|m| m.shape() != (d, d)) {
            return Err(Error::InvalidInput("PVM outcomes must be square and of equal size".into()));
        }
        if outcomes.iter().any(|m| !m.all_finite()) {
            return Err(Error::InvalidInput("PVM outcome has non-finite entries".into()));
        }
        Ok(Self { outcomes })
    }

    /// The binary PVM `(P, I − P)`.
    pub fn binary(p: Matrix<T>) -> Self {
        let c = &Matrix::identity(p.rows()) - &p;
        Self { outcomes: vec![p, c] }
    }

    pub fn dim(&self) -> usize {
        self.outcomes[0].rows()
    }

    pub fn len(&self) -> usize {
        self.outcomes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.outcomes.is_empty()
    }

    pub fn outcomes(&self) -> &[Matrix<T>] {
        &self.outcomes
    }

    pub fn outcome(&self, a: usize) -> &Matrix<T> {
        &self.outcomes[a]
    }

    /// Largest violation of symmetry, idempotency, completeness and
    /// orthogonality.
    pub fn defect(&self) -> T {
        let d = self.dim();
        let mut worst = T::zero();
        let mut sum = Matrix::zeros(d, d);
        for (a, p) in self.outcomes.iter().enumerate() {
            worst = worst.max(p.asymmetry()).max(p.matmul(p).max_abs_diff(p));
            for q in &self.outcomes[a + 1..] {
                worst = worst.max(p.matmul(q).max_abs());
            }
            sum = &sum + p;
        }
        worst.max(sum.max_abs_diff(&Matrix::identity(d)))
    }

    pub fn conjugated(&self, o: &Matrix<T>) -> Self {
        Self { outcomes: self.outcomes.iter().map(|p| p.conjugate_by(o).symmetrized()).collect() }
    }
}

/// State `|ψ⟩ ∈ ℝ^{n_A} ⊗ ℝ^{n_B}` (row-major, `ψ[i·n_B + j]`) with one list
/// of PVMs per party.
#[derive(Clone, Debug, PartialEq)]
pub struct Strategy<T> {
    n_a: usize,
    n_b: usize,
    state: Vector<T>,
    a_meas: Vec<Pvm<T>>,
    b_meas: Vec<Pvm<T>>,
}

impl<T: Real> Strategy<T> {
    /// Shape checks only; see [`Strategy::validate`].
    pub fn new(n_a: usize, n_b: usize, state: Vector<T>, a_meas: Vec<Pvm<T>>, b_meas: Vec<Pvm<T>>) -> Result<Self> {
        if n_a == 0 || n_b == 0 {
            return Err(Error::InvalidInput("local dimensions must be positive".into()));
        }
        if state.dim() != n_a * n_b {
            return Err(Error::InvalidInput(format!("state has dimension {}, expected {n_a}·{n_b}", state.dim())));
        }
        if a_meas.is_empty() || b_meas.is_empty() {
            return Err(Error::InvalidInput("each party needs at least one measurement".into()));
        }
        if let Some(p) = a_meas.iter().find(|p| p.dim() != n_a) {
            return Err(Error::InvalidInput(format!("party A PVM has dimension {}, expected {n_a}", p.dim())));
        }
        if let Some(p) = b_meas.iter().find(|p| p.dim() != n_b) {
            return Err(Error::InvalidInput(format!("party B PVM has dimension {}, expected {n_b}", p.dim())));
        }
        Ok(Self { n_a, n_b, state, a_meas, b_meas })
    }

    /// Unit state and projective measurements within `tol`.
    pub fn validate(&self, tol: T) -> Result<()> {
        let norm_defect = (self.state.norm() - T::one()).abs();
        if norm_defect > tol {
            return Err(Error::InvalidInput(format!("state norm is off by {:e}", norm_defect.to_f64_lossy())));
        }
        for (side, meas) in [("A", &self.a_meas), ("B", &self.b_meas)] {
            for (i, p) in meas.iter().enumerate() {
                let d = p.defect();
                if d > tol {
                    return Err(Error::InvalidInput(format!(
                        "party {side} input {i} is not a PVM (defect {:e})",
                        d.to_f64_lossy()
                    )));
                }
            }
        }
        Ok(())
    }

    pub fn n_a(&self) -> usize {
        self.n_a
    }

    pub fn n_b(&self) -> usize {
        self.n_b
    }

    pub fn state(&self) -> &Vector<T> {
        &self.state
    }

    pub fn a_meas(&self) -> &[Pvm<T>] {
        &self.a_meas
    }

    pub fn b_meas(&self) -> &[Pvm<T>] {
        &self.b_meas
    }

    /// `mat(ψ)`, an `n_A x n_B` matrix.
    pub fn state_matrix(&self) -> Matrix<T> {
        matricize(&self.state, self.n_a, self.n_b).expect("dimensions checked at construction")
    }
}

/// `p(a,b|i,j)` for every input pair, with both marginals.
#[derive(Clone, Debug, PartialEq)]
pub struct Correlation<T> {
    outputs_a: Vec<usize>,
    outputs_b: Vec<usize>,
    /// Block `i·inputs_b + j` holds `p(·,·|i,j)` as an outputs_a[i] x outputs_b[j] matrix.
    blocks: Vec<Matrix<T>>,
    marginal_a: Vec<Vec<T>>,
    marginal_b: Vec<Vec<T>>,
}

impl<T: Real> Correlation<T> {
    /// Marginals by summing out the other party at its first input.
    pub fn from_blocks(outputs_a: Vec<usize>, outputs_b: Vec<usize>, blocks: Vec<Matrix<T>>) -> Result<Self> {
        let (ia, ib) = (outputs_a.len(), outputs_b.len());
        if ia == 0 || ib == 0 || blocks.len() != ia * ib {
            return Err(Error::InvalidInput("correlation block count does not match the input counts".into()));
        }
        for i in 0..ia {
            for j in 0..ib {
                if blocks[i * ib + j].shape() != (outputs_a[i], outputs_b[j]) {
                    return Err(Error::InvalidInput(format!("correlation block ({i},{j}) has the wrong shape")));
                }
            }
        }
        let marginal_a = (0..ia)
            .map(|i| (0..outputs_a[i]).map(|a| blocks[i * ib].row(a).iter().copied().sum()).collect())
            .collect();
        let marginal_b = (0..ib)
            .map(|j| (0..outputs_b[j]).map(|b| (0..outputs_a[0]).map(|a| blocks[j][(a, b)]).sum()).collect())
            .collect();
        Ok(Self { outputs_a, outputs_b, blocks, marginal_a, marginal_b })
    }

    pub fn inputs_a(&self) -> usize {
        self.outputs_a.len()
    }

    pub fn inputs_b(&self) -> usize {
        self.outputs_b.len()
    }

    pub fn outputs_a(&self) -> &[usize] {
        &self.outputs_a
    }

    pub fn outputs_b(&self) -> &[usize] {
        &self.outputs_b
    }

    pub fn p(&self, a: usize, b: usize, i: usize, j: usize) -> T {
        self.block(i, j)[(a, b)]
    }

    pub fn block(&self, i: usize, j: usize) -> &Matrix<T> {
        &self.blocks[i * self.inputs_b() + j]
    }

    pub fn marginal_a(&self, a: usize, i: usize) -> T {
        self.marginal_a[i][a]
    }

    pub fn marginal_b(&self, b: usize, j: usize) -> T {
        self.marginal_b[j][b]
    }

    pub fn same_shape(&self, other: &Self) -> bool {
        self.outputs_a == other.outputs_a && self.outputs_b == other.outputs_b
    }

    /// `‖p − q‖∞` over all entries and marginals.
    pub fn max_abs_diff(&self, other: &Self) -> Result<T> {
        if !self.same_shape(other) {
            return Err(Error::InvalidInput("correlations have different input/output shapes".into()));
        }
        let blocks = self.blocks.iter().zip(&other.blocks).map(|(x, y)| x.max_abs_diff(y));
        let marg = |x: &[Vec<T>], y: &[Vec<T>]| {
            x.iter().flatten().zip(y.iter().flatten()).map(|(u, v)| (*u - *v).abs()).fold(T::zero(), T::max)
        };
        Ok(blocks
            .fold(T::zero(), T::max)
            .max(marg(&self.marginal_a, &other.marginal_a))
            .max(marg(&self.marginal_b, &other.marginal_b)))
    }

    /// Largest deviation from a probability distribution over `(a,b)`.
    pub fn normalization_defect(&self) -> T {
        self.blocks
            .iter()
            .map(|m| {
                let total: T = m.as_slice().iter().copied().sum();
                let neg = m.as_slice().iter().fold(T::zero(), |w, &x| w.max(-x));
                (total - T::one()).abs().max(neg)
            })
            .fold(T::zero(), T::max)
    }

    /// Largest dependence of either party's marginal on the other's input.
    pub fn signalling_defect(&self) -> T {
        let mut worst = T::zero();
        for i in 0..self.inputs_a() {
            for j in 0..self.inputs_b() {
                let m = self.block(i, j);
                for a in 0..self.outputs_a[i] {
                    let s: T = m.row(a).iter().copied().sum();
                    worst = worst.max((s - self.marginal_a[i][a]).abs());
                }
                for b in 0..self.outputs_b[j] {
                    let s: T = (0..self.outputs_a[i]).map(|a| m[(a, b)]).sum();
                    worst = worst.max((s - self.marginal_b[j][b]).abs());
                }
            }
        }
        worst
    }

    /// Flattened `(i, j, a, b, p)` rows, inputs and outcomes 0-based.
    pub fn rows(&self) -> Vec<(usize, usize, usize, usize, T)> {
        let mut out = Vec::new();
        for i in 0..self.inputs_a() {
            for j in 0..self.inputs_b() {
                for a in 0..self.outputs_a[i] {
                    for b in 0..self.outputs_b[j] {
                        out.push((i, j, a, b, self.p(a, b, i, j)));
                    }
                }
            }
        }
        out
    }
}

/// `|φₙ⟩ = (1/√n)·Σᵢ eᵢ ⊗ eᵢ`.
pub fn maximally_entangled<T: Real>(n: usize) -> Result<Vector<T>> {
    if n == 0 {
        return Err(Error::InvalidInput("maximally_entangled needs n >= 1".into()));
    }
    let c = T::one() / T::from_count(n).sqrt();
    let mut v = vec![T::zero(); n * n];
    for i in 0..n {
        v[i * n + i] = c;
    }
    Vector::from_vec(v)
}

/// Born rule `p(a,b|i,j) = tr(mat(ψ)ᵀ·M_{i,a}·mat(ψ)·N_{j,b}ᵀ)`.
pub fn born_correlation<T: Real>(s: &Strategy<T>) -> Result<Correlation<T>> {
    let psi = s.state_matrix();
    // M_{i,a}·mat(ψ), then contract with mat(ψ)·N_{j,b}ᵀ.
    let left: Vec<Vec<Matrix<T>>> = s.a_meas.iter().map(|m| m.outcomes.iter().map(|p| p.matmul(&psi)).collect()).collect();
    let right: Vec<Vec<Matrix<T>>> =
        s.b_meas.iter().map(|m| m.outcomes.iter().map(|q| psi.matmul_tr(q)).collect()).collect();
    let mut blocks = Vec::with_capacity(left.len() * right.len());
    for l in &left {
        for r in &right {
            blocks.push(Matrix::from_fn(l.len(), r.len(), |a, b| l[a].frobenius_dot(&r[b])));
        }
    }
    Correlation::from_blocks(
        s.a_meas.iter().map(Pvm::len).collect(),
        s.b_meas.iter().map(Pvm::len).collect(),
        blocks,
    )
}

fn binary_pvms<T: Real>(rep: &Representation<T>) -> Vec<Pvm<T>> {
    rep.gens().iter().map(|p| Pvm::binary(p.clone())).collect()
}

/// `𝒮ₙ`: `|φₙ⟩` with `(Pᵢ, I − Pᵢ)`, `i = 1..4`, on both sides.
pub fn strategy_sn<T: Real>(n: usize) -> Result<Strategy<T>> {
    Ok(strategy_sn_of(&build_distinguished(n)?))
}

pub fn strategy_sn_of<T: Real>(rep: &Representation<T>) -> Strategy<T> {
    let n = rep.dim();
    let meas = binary_pvms(rep);
    Strategy { n_a: n, n_b: n, state: maximally_entangled(n).expect("n >= 1"), a_meas: meas.clone(), b_meas: meas }
}

/// `𝒮ₙ,ᵣ`: `𝒮ₙ` with `(Q⁽ⁿ'ʳ⁾, I − Q⁽ⁿ'ʳ⁾)` as a fifth input of party A.
pub fn strategy_snr<T: Real>(n: usize, r: usize) -> Result<Strategy<T>> {
    if r == 0 || r >= n {
        return Err(Error::InvalidInput(format!("strategy_snr needs 1 <= r < n, got r = {r}, n = {n}")));
    }
    let rep = build_distinguished(n)?;
    let q = build_q_of(&rep, r)?;
    let mut s = strategy_sn_of(&rep);
    s.a_meas.push(Pvm::binary(q.p));
    Ok(s)
}

/// `𝒮_{r₁…r_K}`: `𝒮ₙ` (`n = Σ r_a`) with the `K`-outcome PVM of
/// `build_q_family` as a fifth input of party A.
pub fn strategy_partition<T: Real>(ranks: &[usize]) -> Result<Strategy<T>> {
    if ranks.is_empty() {
        return Err(Error::InvalidInput("strategy_partition needs at least one rank".into()));
    }
    let n = ranks.iter().sum();
    let rep = build_distinguished(n)?;
    let family = build_q_family_of(&rep, ranks)?;
    let mut s = strategy_sn_of(&rep);
    s.a_meas.push(Pvm::new(family)?);
    Ok(s)
}

fn complete_binary<T: Real>(pa: &[T], pb: &[T], p11: impl Fn(usize, usize) -> T) -> Result<Correlation<T>> {
    let mut blocks = Vec::with_capacity(pa.len() * pb.len());
    for (i, &x) in pa.iter().enumerate() {
        for (j, &y) in pb.iter().enumerate() {
            let p = p11(i, j);
            blocks.push(Matrix::from_rows(&[vec![p, x - p], vec![y - p, T::one() - x - y + p]])?);
        }
    }
    Correlation::from_blocks(vec![2; pa.len()], vec![2; pb.len()], blocks)
}

fn sign(n: usize) -> i64 {
    if n.is_multiple_of(2) {
        1
    } else {
        -1
    }
}

/// `(p(1|i))ᵢ` and the symmetric `(p(1,1|i,j))` of `𝒮ₙ` in closed form.
fn sn_table<T: Real>(n: usize) -> ([T; 4], [[T; 4]; 4]) {
    let h = (n / 2) as i64;
    let s = sign(n);
    let nf = T::from_count(n);
    let n2 = nf * nf;
    let first = T::c((h - s) as f64) / nf;
    let rest = T::c(h as f64) / nf;
    let off1 = T::c(((n as i64 - 1) * (h - s)) as f64) / (T::c(3.0) * n2);
    let off2 = T::c(((n as i64 - 1) * (2 * n as i64 - 1 + 3 * s)) as f64) / (T::c(12.0) * n2);
    let marg = [first, rest, rest, rest];
    let mut m = [[off2; 4]; 4];
    for i in 0..4 {
        m[i][i] = marg[i];
        if i > 0 {
            m[0][i] = off1;
            m[i][0] = off1;
        }
    }
    (marg, m)
}

pub fn closedform_correlation_sn<T: Real>(n: usize) -> Result<Correlation<T>> {
    if n == 0 {
        return Err(Error::InvalidInput("closed form needs n >= 1".into()));
    }
    let (marg, m) = sn_table::<T>(n);
    complete_binary(&marg, &marg, |i, j| m[i][j])
}

/// Closed form of `𝒮ₙ,ᵣ`, stated for `1 ≤ r < n/2` only.
pub fn closedform_correlation_snr<T: Real>(n: usize, r: usize) -> Result<Correlation<T>> {
    if r == 0 || 2 * r >= n {
        return Err(Error::OutOfTable(format!("closed form of S(n,r) is stated for 1 <= r < n/2, got n = {n}, r = {r}")));
    }
    let (marg, m) = sn_table::<T>(n);
    let s = sign(n);
    let (ni, ri) = (n as i64, r as i64);
    let d = T::c((4 * ni * ni) as f64);
    let q12 = T::c((ri * (4 * ni - 2 * ri - 1 - s)) as f64) / d;
    let q34 = T::c((ri * (2 * ri - 1 + s)) as f64) / d;
    let qrow = [q12, q12, q34, q34];
    let mut pa = marg.to_vec();
    pa.push(T::from_count(r) / T::from_count(n));
    complete_binary(&pa, &marg, |i, j| if i == 4 { qrow[j] } else { m[i][j] })
}

/// `p(a,b|i,i) ≤ tol` for all `a ≠ b`; false for non-square scenarios.
pub fn check_synchronous<T: Real>(c: &Correlation<T>, tol: T) -> bool {
    let k = c.inputs_a().min(c.inputs_b());
    (0..k).all(|i| {
        let m = c.block(i, i);
        (0..m.rows()).all(|a| (0..m.cols()).all(|b| a == b || m[(a, b)] <= tol))
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matcore::kron;
    use crate::repcat::cyclic_variant;

    /// Independent oracle: `⟨ψ| M ⊗ N |ψ⟩` with the full Kronecker product.
    fn kron_oracle(s: &Strategy<f64>, i: usize, a: usize, j: usize, b: usize) -> f64 {
        let op = kron(s.a_meas()[i].outcome(a), s.b_meas()[j].outcome(b));
        s.state().dot(&op.matvec(s.state()))
    }

    #[test]
    fn maximally_entangled_examples() {
        assert_eq!(maximally_entangled::<f64>(1).unwrap().as_slice(), &[1.0]);
        let h = 0.5f64.sqrt();
        let v = maximally_entangled::<f64>(2).unwrap();
        assert!(v.sub(&Vector::from_vec(vec![h, 0.0, 0.0, h]).unwrap()).max_abs() < 1e-15);
        let m = matricize(&maximally_entangled::<f64>(4).unwrap(), 4, 4).unwrap();
        assert!(m.max_abs_diff(&Matrix::scalar(4, 0.5)) < 1e-15);
        assert!(maximally_entangled::<f64>(0).is_err());
    }

    #[test]
    fn trivial_strategy() {
        let s = strategy_sn::<f64>(1).unwrap();
        let c = born_correlation(&s).unwrap();
        assert_eq!(c.p(0, 0, 0, 0), 1.0);
        assert!(c.rows().iter().all(|r| r.4 == 0.0 || r.4 == 1.0));
        assert!(check_synchronous(&c, 1e-12));
    }

    #[test]
    fn born_matches_kron_oracle() {
        let s = strategy_snr::<f64>(4, 1).unwrap();
        let c = born_correlation(&s).unwrap();
        for (i, j, a, b, p) in c.rows() {
            assert!((p - kron_oracle(&s, i, a, j, b)).abs() < 1e-12);
        }
        assert!(c.normalization_defect() < 1e-12 && c.signalling_defect() < 1e-12);
    }

    #[test]
    fn reference_entries() {
        let c2 = born_correlation(&strategy_sn::<f64>(2).unwrap()).unwrap();
        assert!((c2.p(0, 0, 2, 3) - 0.125).abs() < 1e-12);
        let m: Vec<f64> = (0..4).map(|i| c2.marginal_a(0, i)).collect();
        for (x, y) in m.iter().zip([0.0, 0.5, 0.5, 0.5]) {
            assert!((x - y).abs() < 1e-12);
        }
        let c3 = closedform_correlation_sn::<f64>(3).unwrap();
        assert!((c3.marginal_a(0, 0) - 2.0 / 3.0).abs() < 1e-15);
        assert!((c3.p(0, 0, 0, 1) - 4.0 / 27.0).abs() < 1e-15);
        let c52 = closedform_correlation_snr::<f64>(5, 2).unwrap();
        assert!((c52.p(0, 0, 4, 0) - 8.0 / 25.0).abs() < 1e-15);
        assert!((c52.p(0, 0, 4, 2) - 1.0 / 25.0).abs() < 1e-15);
        assert!((c52.marginal_a(0, 4) - 0.4).abs() < 1e-15);
        let c41 = closedform_correlation_snr::<f64>(4, 1).unwrap();
        assert!((c41.p(0, 0, 4, 2) - 1.0 / 32.0).abs() < 1e-15);
        assert!(matches!(closedform_correlation_snr::<f64>(4, 2), Err(Error::OutOfTable(_))));
        let s21 = born_correlation(&strategy_snr::<f64>(2, 1).unwrap()).unwrap();
        assert!((s21.marginal_a(0, 4) - 0.5).abs() < 1e-12);
    }

    #[test]
    fn extension_keeps_first_four_inputs() {
        let base = born_correlation(&strategy_sn::<f64>(5).unwrap()).unwrap();
        let ext = born_correlation(&strategy_snr::<f64>(5, 2).unwrap()).unwrap();
        for i in 0..4 {
            for j in 0..4 {
                assert_eq!(base.block(i, j), ext.block(i, j));
            }
        }
        assert!(strategy_snr::<f64>(3, 3).is_err());
    }

    #[test]
    fn partition_strategies() {
        let s = strategy_partition::<f64>(&[2, 1, 2]).unwrap();
        let c = born_correlation(&s).unwrap();
        assert_eq!(c.outputs_a()[4], 3);
        assert!(c.normalization_defect() < 1e-10 && c.signalling_defect() < 1e-10);
        let single = strategy_partition::<f64>(&[3]).unwrap();
        assert!(single.a_meas()[4].outcome(0).max_abs_diff(&Matrix::identity(3)) < 1e-12);
        assert!(strategy_partition::<f64>(&[]).is_err());
    }

    #[test]
    fn mismatched_sides_are_not_synchronous() {
        let rep = build_distinguished::<f64>(3).unwrap();
        let mut s = strategy_sn_of(&rep);
        s.b_meas = binary_pvms(&cyclic_variant(&rep, 1));
        assert!(!check_synchronous(&born_correlation(&s).unwrap(), 1e-6));
        assert!(check_synchronous(&born_correlation(&strategy_sn::<f64>(4).unwrap()).unwrap(), 1e-10));
    }

    #[test]
    fn shape_errors() {
        let p = Pvm::binary(Matrix::<f64>::identity(2));
        let v = maximally_entangled::<f64>(2).unwrap();
        assert!(Strategy::new(2, 3, v.clone(), vec![p.clone()], vec![p.clone()]).is_err());
        assert!(Strategy::new(2, 2, v.clone(), vec![], vec![p.clone()]).is_err());
        let s = Strategy::new(2, 2, v.scale(2.0), vec![p.clone()], vec![p]).unwrap();
        assert!(s.validate(1e-9).is_err());
        assert!(Pvm::<f64>::new(vec![]).is_err());
    }
}
