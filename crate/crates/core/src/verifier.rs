//! Block decomposition of candidate quadruples, extraction of local dilations
//! onto the distinguished strategies, and generators of dilated and
//! adversarial candidates.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};
use thiserror::Error as ThisError;

use crate::error::{Error, Result};
use crate::intertwine::{eigen_clusters, intertwiner_basis};
use crate::matcore::{jacobi_svd, kron, matricize, orthonormal_range, vectorize, Matrix, Vector};
use crate::repcat::{
    build_distinguished, check_equivalence, cyclic_variant, direct_sum, rank_matrix_4x4, Alpha, Rational, Representation,
};
use crate::scalar::Real;
use crate::strategy::{born_correlation, maximally_entangled, strategy_partition, strategy_sn_of, Pvm, Strategy};

/// Default verification tolerance; acceptance uses `10·tol`.
pub const VERIFY_TOL: f64 = 1e-8;

/// Relative gap below which eigenvalues of a commutant element are merged.
const CLUSTER_GAP: f64 = 1e-6;

/// Orthonormal (Frobenius) basis of the commutant `{Z : Z·X_i = X_i·Z}`.
#[derive(Clone, Debug)]
pub struct CommutantBasis<T> {
    pub dim_space: usize,
    pub basis: Vec<Matrix<T>>,
}

pub fn commutant_basis<T: Real>(rep: &Representation<T>, tol: T) -> Result<CommutantBasis<T>> {
    let basis = intertwiner_basis(rep.gens(), rep.gens(), tol)?;
    Ok(CommutantBasis { dim_space: basis.len(), basis })
}

/// One irreducible block: `embeddingᵀ·X_i·embedding` equals generator `i` of
/// `cyclic_variant(build_distinguished(n), variant)`.
#[derive(Clone, Debug)]
pub struct Block<T> {
    pub variant: usize,
    pub embedding: Matrix<T>,
}

#[derive(Clone, Debug)]
pub struct Decomposition<T> {
    pub n: usize,
    pub multiplicities: [usize; 4],
    pub blocks: Vec<Block<T>>,
}

/// `n` with `α = 2 − 1/n`.
fn order_of<T: Real>(alpha: Alpha<T>, tol: T) -> Result<usize> {
    if let Some(e) = alpha.as_exact() {
        let d = Rational::from_integer(2) - e;
        if *d.numer() == 1 && *d.denom() >= 1 {
            return Ok(*d.denom() as usize);
        }
        return Err(Error::NotARepresentation(format!("alpha = {e} is not of the form 2 - 1/n")));
    }
    let d = T::c(2.0) - alpha.value();
    if d > T::zero() {
        let n = (T::one() / d).round();
        if n >= T::one() && (alpha.value() - (T::c(2.0) - T::one() / n)).abs() <= tol {
            return Ok(n.to_usize().unwrap_or(0));
        }
    }
    Err(Error::NotARepresentation(format!(
        "alpha = {:e} is not of the form 2 - 1/n",
        alpha.value().to_f64_lossy()
    )))
}

/// Multiplicities `(a₁..a₄)` of the four cyclic variants, from the exact
/// rank system and cross-validated by an explicit block decomposition.
pub fn decompose_multiplicities<T: Real>(rep: &Representation<T>) -> Result<[usize; 4]> {
    Ok(decompose(rep, T::c(VERIFY_TOL), 0)?.multiplicities)
}

/// Solves `rk X_i = Σ_k a_k·rk P_{i−k}` over the nonnegative integers.
pub fn solve_multiplicities(n: usize, ranks: [usize; 4]) -> Result<[usize; 4]> {
    let system = rank_matrix_4x4(n)?.transpose();
    let sol = system
        .solve(ranks.map(|r| r as i64))
        .ok_or_else(|| Error::NumericalDegeneracy(format!("rank matrix of order {n} is singular")))?;
    let mut mults = [0usize; 4];
    for (m, x) in mults.iter_mut().zip(sol) {
        if !x.is_integer() || x < Rational::from_integer(0) {
            return Err(Error::NotARepresentation(format!(
                "ranks {ranks:?} give multiplicities {:?} at n = {n}",
                sol.map(|x| x.to_string())
            )));
        }
        *m = x.to_integer() as usize;
    }
    Ok(mults)
}

fn random_symmetric_commutant<T: Real>(basis: &[Matrix<T>], dim: usize, rng: &mut ChaCha8Rng) -> Matrix<T> {
    let mut z = Matrix::zeros(dim, dim);
    for b in basis {
        let g: f64 = StandardNormal.sample(rng);
        z = &z + &b.scale(T::c(g));
    }
    z.symmetrized()
}

/// Full decomposition into irreducible blocks. The random commutant element
/// is drawn from `seed`; a cluster of the wrong size triggers one reseed.
pub fn decompose<T: Real>(rep: &Representation<T>, tol: T, seed: u64) -> Result<Decomposition<T>> {
    let n = order_of(rep.alpha(), tol)?;
    let dim = rep.dim();
    if !dim.is_multiple_of(n) {
        return Err(Error::NotARepresentation(format!("dimension {dim} is not a multiple of {n}")));
    }
    let mults = solve_multiplicities(n, rep.ranks())?;
    if mults.iter().sum::<usize>() * n != dim {
        return Err(Error::NotARepresentation(format!("multiplicities {mults:?} do not fill dimension {dim}")));
    }

    let irrep = build_distinguished::<T>(n)?;
    let variants = [0, 1, 2, 3].map(|k| cyclic_variant(&irrep, k));
    let commutant = commutant_basis(rep, tol)?;
    let expected: usize = mults.iter().map(|m| m * m).sum();
    if commutant.dim_space != expected {
        return Err(Error::NumericalDegeneracy(format!(
            "commutant has dimension {}, multiplicities {mults:?} need {expected}",
            commutant.dim_space
        )));
    }

    for attempt in 0..2 {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        rng.set_stream(attempt);
        let z = random_symmetric_commutant(&commutant.basis, dim, &mut rng);
        let clusters = eigen_clusters(&z, T::c(CLUSTER_GAP))?;
        if clusters.iter().any(|c| c.basis.cols() != n) {
            continue;
        }
        let mut blocks = Vec::with_capacity(clusters.len());
        let mut counts = [0usize; 4];
        for c in &clusters {
            let block = rep.compress(&c.basis);
            let mut matched = None;
            for (k, v) in variants.iter().enumerate() {
                if let Some(o) = check_equivalence(&block, v, tol)? {
                    matched = Some((k, o));
                    break;
                }
            }
            let (k, o) = matched
                .ok_or_else(|| Error::NumericalDegeneracy("a block matches no cyclic variant".into()))?;
            counts[k] += 1;
            blocks.push(Block { variant: k, embedding: c.basis.matmul_tr(&o) });
        }
        if counts != mults {
            return Err(Error::NumericalDegeneracy(format!(
                "block matching found {counts:?}, rank system gives {mults:?}"
            )));
        }
        blocks.sort_by_key(|b| b.variant);
        return Ok(Decomposition { n, multiplicities: mults, blocks });
    }
    Err(Error::NumericalDegeneracy("commutant element has colliding eigenvalues after reseeding".into()))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Party {
    A,
    B,
}

impl std::fmt::Display for Party {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Party::A => "A",
            Party::B => "B",
        })
    }
}

#[derive(Clone, Debug, PartialEq, ThisError)]
pub enum RejectReason {
    #[error("unsupported candidate: {0}")]
    Unsupported(String),
    #[error("correlation differs from the reference by {gap:e}")]
    CorrelationMismatch { gap: f64 },
    #[error("state is not of full Schmidt rank: {null_dim} null directions, smallest singular value {smallest:e}")]
    RankDeficientState { null_dim: usize, smallest: f64 },
    #[error("party {party} measurements violate the sum relation by {defect:e}")]
    RelationViolated { party: Party, defect: f64 },
    #[error("party {party} quadruple is not a representation: {message}")]
    NotARepresentation { party: Party, message: String },
    #[error("multiplicities A {a:?}, B {b:?} are not of the form (m,0,0,0)")]
    WrongMultiplicities { a: [usize; 4], b: [usize; 4] },
    #[error("dilation residual {residual:e} exceeds {threshold:e}")]
    DilationResidual { residual: f64, threshold: f64 },
}

#[derive(Clone, Debug, PartialEq)]
pub enum Verdict {
    Accepted,
    Rejected(RejectReason),
}

/// Outcome of the verification pipeline. Fields past the failing stage are `None`.
#[derive(Clone, Debug)]
pub struct DilationReport<T> {
    pub n: usize,
    /// Ranks of the fifth-input partition, when party A has one.
    pub fifth_ranks: Option<Vec<usize>>,
    pub correlation_gap: T,
    pub multiplicities: Option<[usize; 4]>,
    pub multiplicities_b: Option<[usize; 4]>,
    /// `U_A`, rows indexed by `s·m_A + c` for `s < n`, `c < m_A`.
    pub isometry_a: Option<Matrix<T>>,
    pub isometry_b: Option<Matrix<T>>,
    /// `|aux⟩ ∈ ℝ^{m_A} ⊗ ℝ^{m_B}`.
    pub aux_state: Option<Vector<T>>,
    pub aux_dims: Option<(usize, usize)>,
    pub residual: Option<T>,
    pub verdict: Verdict,
}

impl<T: Real> DilationReport<T> {
    fn new(n: usize, gap: T) -> Self {
        Self {
            n,
            fifth_ranks: None,
            correlation_gap: gap,
            multiplicities: None,
            multiplicities_b: None,
            isometry_a: None,
            isometry_b: None,
            aux_state: None,
            aux_dims: None,
            residual: None,
            verdict: Verdict::Accepted,
        }
    }

    fn rejected(mut self, reason: RejectReason) -> Self {
        self.verdict = Verdict::Rejected(reason);
        self
    }

    pub fn accepted(&self) -> bool {
        self.verdict == Verdict::Accepted
    }

    /// Which cyclic variants occur on side A, as 0/1 indicators.
    pub fn variant_support(&self) -> Option<[usize; 4]> {
        self.multiplicities.map(|m| m.map(|k| k.min(1)))
    }
}

fn unsupported<T: Real>(n: usize, why: String) -> DilationReport<T> {
    DilationReport::new(n, T::zero()).rejected(RejectReason::Unsupported(why))
}

/// Reference strategy for `candidate`: `𝒮ₙ`, or `𝒮_{r₁…r_K}` with ranks read
/// off the fifth-input marginals.
fn reference_for<T: Real>(
    candidate_marginals: Option<Vec<T>>,
    rep: &Representation<T>,
    n: usize,
) -> std::result::Result<(Strategy<T>, Option<Vec<usize>>), String> {
    let Some(marg) = candidate_marginals else { return Ok((strategy_sn_of(rep), None)) };
    let nn = T::from_count(n);
    let ranks: Vec<usize> = marg.iter().map(|&p| (p * nn).round().max(T::zero()).to_usize().unwrap_or(0)).collect();
    if ranks.iter().sum::<usize>() != n || ranks.contains(&0) {
        return Err(format!("fifth-input marginals give ranks {ranks:?}, not a partition of {n}"));
    }
    let s = strategy_partition(&ranks).map_err(|e| e.to_string())?;
    Ok((s, Some(ranks)))
}

/// `‖p_candidate − p_𝒮ₙ‖∞` over all entries; the reference gains a fifth
/// input when the candidate has one.
pub fn correlation_gap<T: Real>(candidate: &Strategy<T>, n: usize) -> Result<T> {
    let cand = born_correlation(candidate)?;
    let rep = build_distinguished::<T>(n)?;
    let marg = (cand.inputs_a() == 5).then(|| (0..cand.outputs_a()[4]).map(|a| cand.marginal_a(a, 4)).collect());
    let (reference, _) = reference_for(marg, &rep, n).map_err(Error::InvalidInput)?;
    cand.max_abs_diff(&born_correlation(&reference)?)
}

pub fn verify_candidate<T: Real>(candidate: &Strategy<T>, n: usize, tol: T) -> Result<DilationReport<T>> {
    verify_candidate_seeded(candidate, n, tol, 0)
}

/// Runs the pipeline: correlation, Schmidt rank, sum relation, block
/// decomposition of both parties, isometries, auxiliary state, residual.
pub fn verify_candidate_seeded<T: Real>(
    candidate: &Strategy<T>,
    n: usize,
    tol: T,
    seed: u64,
) -> Result<DilationReport<T>> {
    if n == 0 {
        return Err(Error::InvalidInput("verify_candidate needs n >= 1".into()));
    }
    let (a_meas, b_meas) = (candidate.a_meas(), candidate.b_meas());
    if !(a_meas.len() == 4 || a_meas.len() == 5) || b_meas.len() != 4 {
        return Ok(unsupported(
            n,
            format!("need 4 or 5 inputs for A and 4 for B, got {} and {}", a_meas.len(), b_meas.len()),
        ));
    }
    if a_meas[..4].iter().chain(b_meas).any(|p| p.len() != 2) {
        return Ok(unsupported(n, "the first four inputs of each party must be binary".into()));
    }

    // (1) Correlation against the reference.
    let cand = born_correlation(candidate)?;
    let rep = build_distinguished::<T>(n)?;
    let marg = (a_meas.len() == 5).then(|| (0..a_meas[4].len()).map(|a| cand.marginal_a(a, 4)).collect());
    let (reference, fifth_ranks) = match reference_for(marg, &rep, n) {
        Ok(r) => r,
        Err(why) => return Ok(unsupported(n, why)),
    };
    let gap = cand.max_abs_diff(&born_correlation(&reference)?)?;
    let mut report = DilationReport::new(n, gap);
    report.fifth_ranks = fifth_ranks;
    if gap > tol {
        return Ok(report.rejected(RejectReason::CorrelationMismatch { gap: gap.to_f64_lossy() }));
    }

    // (2) Full Schmidt rank.
    let psi = candidate.state_matrix();
    let (na, nb) = (candidate.n_a(), candidate.n_b());
    if let Some((null_dim, smallest)) = schmidt_deficiency(&psi, tol) {
        return Ok(report.rejected(RejectReason::RankDeficientState { null_dim, smallest: smallest.to_f64_lossy() }));
    }

    // (3) Σ M_i = (2 − 1/n)·I on each side.
    let alpha = Alpha::exact(Rational::new(2 * n as i64 - 1, n as i64));
    let mut reps = Vec::with_capacity(2);
    for (party, meas, dim) in [(Party::A, a_meas, na), (Party::B, b_meas, nb)] {
        let gens = [0, 1, 2, 3].map(|i| meas[i].outcome(0).clone());
        let sum = gens.iter().fold(Matrix::zeros(dim, dim), |acc, g| &acc + g);
        let defect = sum.max_abs_diff(&Matrix::scalar(dim, alpha.value()));
        if defect > tol {
            return Ok(report.rejected(RejectReason::RelationViolated { party, defect: defect.to_f64_lossy() }));
        }
        match Representation::validated(alpha, gens, tol) {
            Ok(r) => reps.push((party, r)),
            Err(e) => {
                return Ok(report.rejected(RejectReason::NotARepresentation { party, message: e.to_string() }))
            }
        }
    }

    // (4) Block decomposition and isometries.
    let mut decs = Vec::with_capacity(2);
    for (party, r) in &reps {
        match decompose(r, tol, seed) {
            Ok(d) => decs.push(d),
            Err(Error::NotARepresentation(message)) => {
                return Ok(report.rejected(RejectReason::NotARepresentation { party: *party, message }))
            }
            Err(e) => return Err(e),
        }
    }
    let (ma, mb) = (decs[0].multiplicities, decs[1].multiplicities);
    report.multiplicities = Some(ma);
    report.multiplicities_b = Some(mb);
    if ma[1..] != [0, 0, 0] || mb[1..] != [0, 0, 0] {
        return Ok(report.rejected(RejectReason::WrongMultiplicities { a: ma, b: mb }));
    }
    let ua = isometry(&decs[0]);
    let ub = isometry(&decs[1]);
    let (ka, kb) = (ma[0], mb[0]);

    // (5) Auxiliary state from the diagonal blocks of U_A·mat(ψ)·U_Bᵀ.
    let w = ua.matmul(&psi).matmul_tr(&ub);
    let root_n = T::from_count(n).sqrt();
    let aux = Matrix::from_fn(ka, kb, |c, d| (0..n).map(|s| w[(s * ka + c, s * kb + d)]).sum::<T>() / root_n);

    // (6) Residual of the dilation identity over all inputs and outputs.
    let phi = Matrix::scalar(n, T::one() / root_n);
    let right: Vec<(Matrix<T>, Matrix<T>)> = b_meas
        .iter()
        .zip(reference.b_meas())
        .flat_map(|(cb, rb)| cb.outcomes().iter().zip(rb.outcomes()).map(|(q, rq)| (ub.matmul(q), rq.clone())))
        .collect();
    let mut residual = T::zero();
    for (ca, ra) in a_meas.iter().zip(reference.a_meas()) {
        for (p, rp) in ca.outcomes().iter().zip(ra.outcomes()) {
            let left = ua.matmul(p).matmul(&psi);
            let ideal_left = rp.matmul(&phi);
            for (r, rq) in &right {
                let lhs = left.matmul_tr(r);
                let rhs = kron(&ideal_left.matmul_tr(rq), &aux);
                residual = residual.max((&lhs - &rhs).frobenius());
            }
        }
    }
    report.isometry_a = Some(ua);
    report.isometry_b = Some(ub);
    report.aux_state = Some(vectorize(&aux));
    report.aux_dims = Some((ka, kb));
    report.residual = Some(residual);
    let threshold = T::c(10.0) * tol;
    if residual > threshold {
        return Ok(report.rejected(RejectReason::DilationResidual {
            residual: residual.to_f64_lossy(),
            threshold: threshold.to_f64_lossy(),
        }));
    }
    Ok(report)
}

/// Number of Schmidt coefficients at most `tol` (plus the dimension
/// mismatch) and the smallest coefficient; `None` at full Schmidt rank.
pub fn schmidt_deficiency<T: Real>(psi: &Matrix<T>, tol: T) -> Option<(usize, T)> {
    let (na, nb) = psi.shape();
    let svd = jacobi_svd(psi);
    let smallest = if na == nb { svd.values.last().copied().unwrap_or(T::zero()) } else { T::zero() };
    let kept = svd.values.iter().filter(|&&s| s > tol).count();
    (na != nb || kept < na).then_some((na.max(nb) - kept, smallest))
}

/// `U` with row `s·m + c` equal to column `s` of the `c`-th block embedding,
/// so that `U·X_i·Uᵀ = P_i ⊗ I_m`.
fn isometry<T: Real>(dec: &Decomposition<T>) -> Matrix<T> {
    let m = dec.blocks.len();
    let dim = dec.blocks.first().map_or(0, |b| b.embedding.rows());
    Matrix::from_fn(dec.n * m, dim, |row, x| dec.blocks[row % m].embedding[(x, row / m)])
}

fn gaussian_matrix<T: Real>(rows: usize, cols: usize, rng: &mut ChaCha8Rng) -> Matrix<T> {
    Matrix::from_fn(rows, cols, |_, _| {
        let g: f64 = StandardNormal.sample(rng);
        T::c(g)
    })
}

/// Haar-distributed orthogonal matrix from the QR of a Gaussian matrix.
fn random_orthogonal<T: Real>(dim: usize, rng: &mut ChaCha8Rng) -> Result<Matrix<T>> {
    let g = gaussian_matrix::<T>(dim, dim, rng);
    let q = orthonormal_range(&g, T::epsilon())?;
    Ok(q)
}

fn stream(seed: u64, k: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(k);
    rng
}

/// Local orthogonals for both parties; seed 0 gives identities.
fn local_orthogonals<T: Real>(na: usize, nb: usize, seed: u64) -> Result<(Matrix<T>, Matrix<T>)> {
    if seed == 0 {
        return Ok((Matrix::identity(na), Matrix::identity(nb)));
    }
    Ok((random_orthogonal(na, &mut stream(seed, 1))?, random_orthogonal(nb, &mut stream(seed, 2))?))
}

fn extend_pvms<T: Real>(meas: &[Pvm<T>], anc: usize, o: &Matrix<T>) -> Result<Vec<Pvm<T>>> {
    let id = Matrix::identity(anc);
    meas.iter()
        .map(|m| Ok(Pvm::new(m.outcomes().iter().map(|p| kron(p, &id)).collect())?.conjugated(o)))
        .collect()
}

/// `s` tensored with a random ancilla state in `ℝ^d ⊗ ℝ^d`, measurements
/// extended by `I_d`, each party conjugated by a random orthogonal. Seed 0
/// uses identity orthogonals and the maximally entangled ancilla.
pub fn dilate<T: Real>(s: &Strategy<T>, anc_dim: usize, seed: u64) -> Result<Strategy<T>> {
    if anc_dim == 0 {
        return Err(Error::InvalidInput("dilate needs anc_dim >= 1".into()));
    }
    let aux = if seed == 0 {
        Matrix::scalar(anc_dim, T::one() / T::from_count(anc_dim).sqrt())
    } else {
        let g = gaussian_matrix::<T>(anc_dim, anc_dim, &mut stream(seed, 0));
        g.scale(T::one() / g.frobenius())
    };
    let (na, nb) = (s.n_a() * anc_dim, s.n_b() * anc_dim);
    let (oa, ob) = local_orthogonals::<T>(na, nb, seed)?;
    let state = oa.matmul(&kron(&s.state_matrix(), &aux)).matmul_tr(&ob);
    Strategy::new(
        na,
        nb,
        vectorize(&state),
        extend_pvms(s.a_meas(), anc_dim, &oa)?,
        extend_pvms(s.b_meas(), anc_dim, &ob)?,
    )
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum AdversarialState {
    Random,
    MaximallyEntangled,
}

#[derive(Clone, Debug)]
pub struct Adversarial<T> {
    pub strategy: Strategy<T>,
    /// `‖p − p_𝒮ₙ‖∞`.
    pub gap: T,
}

impl<T: Real> Adversarial<T> {
    pub fn matches_reference(&self, tol: T) -> bool {
        self.gap <= tol
    }
}

pub fn adversarial_strategy<T: Real>(n: usize, mults: [usize; 4], seed: u64) -> Result<Adversarial<T>> {
    adversarial_strategy_with(n, mults, AdversarialState::Random, seed)
}

/// Both parties measure `⊕_k (cyclic variant k)^{⊕ m_k}` under independent
/// random orthogonals, on a random or maximally entangled state.
pub fn adversarial_strategy_with<T: Real>(
    n: usize,
    mults: [usize; 4],
    state: AdversarialState,
    seed: u64,
) -> Result<Adversarial<T>> {
    if mults.iter().sum::<usize>() == 0 {
        return Err(Error::InvalidInput("adversarial_strategy needs at least one block".into()));
    }
    let irrep = build_distinguished::<T>(n)?;
    let blocks: Vec<Representation<T>> =
        (0..4).flat_map(|k| std::iter::repeat_n(cyclic_variant(&irrep, k), mults[k])).collect();
    let rep = direct_sum(&blocks)?;
    let dim = rep.dim();
    let psi = match state {
        AdversarialState::Random => {
            let g = gaussian_matrix::<T>(dim, dim, &mut stream(seed, 0));
            vectorize(&g.scale(T::one() / g.frobenius()))
        }
        AdversarialState::MaximallyEntangled => maximally_entangled(dim)?,
    };
    let (oa, ob) = local_orthogonals::<T>(dim, dim, seed)?;
    let psi = vectorize(&oa.matmul(&matricize(&psi, dim, dim)?).matmul_tr(&ob));
    let pvms = |o: &Matrix<T>| rep.gens().iter().map(|p| Pvm::binary(p.clone()).conjugated(o)).collect::<Vec<_>>();
    let strategy = Strategy::new(dim, dim, psi, pvms(&oa), pvms(&ob))?;
    let gap = born_correlation(&strategy)?.max_abs_diff(&born_correlation(&strategy_sn_of(&irrep))?)?;
    Ok(Adversarial { strategy, gap })
}
