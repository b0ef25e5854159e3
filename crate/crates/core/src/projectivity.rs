//! The averaging operator, the c-matrix `I_λ`, projectivity criteria and
//! two independent oracles.

use serde::Serialize;
use thiserror::Error;

use crate::algebra::{Algebra, DualBases};
use crate::cellular::{CellModule, Flavor, Representation, Simplicity};
use crate::linalg::{Matrix, SparseSystem};
use crate::scalar::Field;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ProjectivityError {
    #[error("θ is {rows}x{cols} but the module has dimension {dim}")]
    DimensionMismatch { rows: usize, cols: usize, dim: usize },
    #[error("averaging depends on the choice of basis: {0}")]
    BasisDependence(String),
    #[error("averaged map is not a module endomorphism: {0}")]
    NotEndomorphism(String),
    #[error("Schur extraction failed in cell {cell}: {detail}")]
    SchurExtractionFailure { cell: String, detail: String },
    #[error("c-matrix of cell {cell} disagrees with G'·G: {detail}")]
    CMatrixMismatch { cell: String, detail: String },
}

/// `θ ↦ Σ_i ρ(a_i)·θ·ρ(D_i)` on one module, with the action of every dual
/// element precomputed.
pub struct Averaging<F> {
    dim: usize,
    actions: Vec<Matrix<F>>,
    left_duals: Vec<Matrix<F>>,
    right_duals: Vec<Matrix<F>>,
}

impl<F: Field> Averaging<F> {
    pub fn new(alg: &Algebra<F>, db: &DualBases<F>, rep: &Representation<F>) -> Self {
        let n = alg.dim();
        Averaging {
            dim: rep.dim(),
            actions: rep.actions().to_vec(),
            left_duals: (0..n).map(|i| rep.act(&db.left(i))).collect(),
            right_duals: (0..n).map(|i| rep.act(&db.right(i))).collect(),
        }
    }

    /// `Σ_i ρ(a_i)·θ·ρ(D_i)`, unchecked.
    pub fn via_left_duals(&self, theta: &Matrix<F>) -> Matrix<F> {
        let mut out = Matrix::zeros(self.dim, self.dim);
        for (a, d) in self.actions.iter().zip(&self.left_duals) {
            out = &out + &(&(a * theta) * d);
        }
        out
    }

    /// `Σ_i ρ(d_i)·θ·ρ(a_i)`, unchecked.
    pub fn via_right_duals(&self, theta: &Matrix<F>) -> Matrix<F> {
        let mut out = Matrix::zeros(self.dim, self.dim);
        for (a, d) in self.actions.iter().zip(&self.right_duals) {
            out = &out + &(&(d * theta) * a);
        }
        out
    }

    /// `I(θ)`, checked against `Σ_i ρ(d_i)·θ·ρ(a_i)` and for commuting with the action.
    pub fn apply(&self, theta: &Matrix<F>) -> Result<Matrix<F>, ProjectivityError> {
        if theta.rows() != self.dim || theta.cols() != self.dim {
            return Err(ProjectivityError::DimensionMismatch { rows: theta.rows(), cols: theta.cols(), dim: self.dim });
        }
        let out = self.via_left_duals(theta);
        let alt = self.via_right_duals(theta);
        if alt != out {
            return Err(ProjectivityError::BasisDependence(format!("{out:?} vs {alt:?}")));
        }
        if let Some(i) = self.actions.iter().position(|a| a * &out != &out * a) {
            return Err(ProjectivityError::NotEndomorphism(format!("fails to commute with basis element {i}")));
        }
        Ok(out)
    }
}

pub fn averaging<F: Field>(
    alg: &Algebra<F>,
    db: &DualBases<F>,
    rep: &Representation<F>,
    theta: &Matrix<F>,
) -> Result<Matrix<F>, ProjectivityError> {
    Averaging::new(alg, db, rep).apply(theta)
}

/// `φ_ST`, sending basis vector `S` to basis vector `T` and the others to zero.
pub fn elementary<F: Field>(n: usize, s: usize, t: usize) -> Matrix<F> {
    let mut m = Matrix::zeros(n, n);
    m[(t, s)] = F::one();
    m
}

/// `I_λ = G'(λ)·G(λ)`; on a simple module also rebuilt entrywise from the
/// Schur scalars of `I(φ_ST)` and compared.
pub fn c_matrix<F: Field>(
    alg: &Algebra<F>,
    db: &DualBases<F>,
    module: &CellModule<F>,
    label: &str,
    gram: &Matrix<F>,
    gram_prime: &Matrix<F>,
    simple: bool,
) -> Result<Matrix<F>, ProjectivityError> {
    let product = gram_prime * gram;
    if !simple {
        return Ok(product);
    }
    let n = module.dim();
    let avg = Averaging::new(alg, db, &module.rep);
    for s in 0..n {
        for t in 0..n {
            let image = avg.apply(&elementary(n, s, t))?;
            let scalar = image.scalar_value().ok_or_else(|| ProjectivityError::SchurExtractionFailure {
                cell: label.to_string(),
                detail: format!("I(φ_{s}{t}) = {image:?} is not scalar"),
            })?;
            if scalar != product[(s, t)] {
                return Err(ProjectivityError::CMatrixMismatch {
                    cell: label.to_string(),
                    detail: format!("c_{s}{t} = {scalar} but (G'·G)_{s}{t} = {}", product[(s, t)]),
                });
            }
        }
    }
    Ok(product)
}

/// Whether `id_M` is in the image of `θ ↦ I(θ)`.
pub fn gaschutz_oracle<F: Field>(alg: &Algebra<F>, db: &DualBases<F>, rep: &Representation<F>) -> bool {
    let n = rep.dim();
    if n == 0 {
        return true;
    }
    let avg = Averaging::new(alg, db, rep);
    let images: Vec<Matrix<F>> = (0..n * n).map(|k| avg.via_left_duals(&elementary(n, k / n, k % n))).collect();
    let mut system = SparseSystem::new(n * n);
    for i in 0..n {
        for j in 0..n {
            let entries = images.iter().enumerate().map(|(k, m)| (k, m[(i, j)].clone()));
            system.push(entries, if i == j { F::one() } else { F::zero() });
        }
    }
    system.is_consistent()
}

/// Whether the surjection `A^n → M`, `e_j ↦ v_j`, has an `A`-linear section.
pub fn splitting_oracle<F: Field>(alg: &Algebra<F>, rep: &Representation<F>) -> bool {
    splitting_section(alg, rep).is_some()
}

/// A section `σ: M → A^n` as an `(n·dim A) × n` matrix; free coordinate
/// `j·dim A + k` is `a_k` in copy `j`.
pub fn splitting_section<F: Field>(alg: &Algebra<F>, rep: &Representation<F>) -> Option<Matrix<F>> {
    let (n, m) = (rep.dim(), alg.dim());
    let big = n * m;
    if n == 0 {
        return Some(Matrix::zeros(0, 0));
    }
    let var = |r: usize, c: usize| r * n + c;
    let mut system = SparseSystem::new(big * n);
    // π·σ = id with π(a_k e_j) = ρ(a_k) v_j.
    for a in 0..n {
        for c in 0..n {
            let entries = (0..big).filter_map(|r| {
                let coeff = rep.actions()[r % m][(a, r / m)].clone();
                (!coeff.is_zero()).then(|| (var(r, c), coeff))
            });
            system.push(entries.collect::<Vec<_>>(), if a == c { F::one() } else { F::zero() });
        }
    }
    // σ·ρ(a_i) = ρ_free(a_i)·σ, where a_i·a_k = Σ γ_{ik·} within each copy.
    for i in 0..m {
        let rho = &rep.actions()[i];
        let left = alg.left_multiplication(&alg.basis_vector(i));
        for r in 0..big {
            let (copy, k1) = (r / m, r % m);
            for c in 0..n {
                let mut entries = Vec::new();
                for k in 0..n {
                    if !rho[(k, c)].is_zero() {
                        entries.push((var(r, k), rho[(k, c)].clone()));
                    }
                }
                for k2 in 0..m {
                    if !left[(k1, k2)].is_zero() {
                        entries.push((var(copy * m + k2, c), -left[(k1, k2)].clone()));
                    }
                }
                system.push(entries, F::zero());
            }
        }
        if !system.is_consistent() {
            return None;
        }
    }
    let x = system.particular()?;
    Some(Matrix::from_fn(big, n, |r, c| x[var(r, c)].clone()))
}

/// Outcome of one projectivity test.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "outcome", content = "reason")]
pub enum Criterion {
    Projective(String),
    NotProjective(String),
    NotApplicable(String),
}

impl Criterion {
    fn from_bool(projective: bool, yes: &str, no: &str) -> Self {
        if projective {
            Criterion::Projective(yes.into())
        } else {
            Criterion::NotProjective(no.into())
        }
    }

    /// `Some(projective)` when the criterion applies.
    pub fn verdict(&self) -> Option<bool> {
        match self {
            Criterion::Projective(_) => Some(true),
            Criterion::NotProjective(_) => Some(false),
            Criterion::NotApplicable(_) => None,
        }
    }
}

/// Upstream data for [`decide`] about one cell.
#[derive(Debug, Clone)]
pub struct CellEvidence<'a, F> {
    pub label: &'a str,
    pub gram: &'a Matrix<F>,
    pub gram_prime: &'a Matrix<F>,
    /// `I_λ`.
    pub c_matrix: &'a Matrix<F>,
    /// `k_λ` when defined.
    pub k: Option<&'a F>,
    /// Both dual bases are cellular for the opposite order.
    pub duals_cellular: bool,
    pub simplicity: &'a Simplicity,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ProjectivityVerdict {
    pub cell: String,
    pub flavor: Flavor,
    pub simplicity: Simplicity,
    /// `I_λ ≠ 0` on `W_C`; some `I(φ_ST) ≠ 0` on `W_d`.
    pub criterion_c: Criterion,
    /// Some `Ψ(S,T) ≠ 0`.
    pub criterion_psi: Criterion,
    /// `k_λ ≠ 0`.
    pub criterion_k: Criterion,
    /// `λ ∈ Λ_0`, for `W_d`.
    pub criterion_lambda0: Criterion,
    pub oracle_gaschutz: bool,
    pub oracle_splitting: bool,
    /// Every applicable criterion matches the oracles and the oracles agree.
    pub agreement: bool,
    /// Simple `W_C` with singular `G(λ)` where the `Ψ` test and `I_λ` disagree.
    pub psi_boundary: bool,
    /// Simple `W_d` with singular `G'(λ)` where the `Λ_0` test misses the oracles.
    pub lambda0_boundary: bool,
    /// A disagreement not covered by a boundary flag.
    pub unexplained_disagreement: bool,
}

impl ProjectivityVerdict {
    pub fn projective(&self) -> bool {
        self.oracle_gaschutz
    }
}

const NOT_SIMPLE: &str = "the module is not simple and projective cell modules are simple";

pub fn decide<F: Field>(
    alg: &Algebra<F>,
    db: &DualBases<F>,
    module: &CellModule<F>,
    ev: &CellEvidence<'_, F>,
) -> Result<ProjectivityVerdict, ProjectivityError> {
    let flavor = module.flavor;
    let simple = ev.simplicity.is_simple();
    let undetermined = matches!(ev.simplicity, Simplicity::Undetermined);

    let criterion_c = match (flavor, ev.simplicity) {
        (_, Simplicity::NotSimple { .. }) => Criterion::NotProjective(NOT_SIMPLE.into()),
        (_, Simplicity::Undetermined) => Criterion::NotApplicable("simplicity undetermined".into()),
        (Flavor::Cell, _) => Criterion::from_bool(!ev.c_matrix.is_zero(), "I_λ ≠ 0", "I_λ = 0"),
        (Flavor::Dual, _) => {
            let n = module.dim();
            let avg = Averaging::new(alg, db, &module.rep);
            let mut nonzero = false;
            for k in 0..n * n {
                if !avg.apply(&elementary(n, k / n, k % n))?.is_zero() {
                    nonzero = true;
                    break;
                }
            }
            Criterion::from_bool(nonzero, "some I(φ_ST) ≠ 0", "every I(φ_ST) = 0")
        }
    };

    let criterion_psi = match flavor {
        Flavor::Dual => Criterion::NotApplicable("stated for W_C only".into()),
        Flavor::Cell if simple => Criterion::from_bool(!ev.gram_prime.is_zero(), "G' ≠ 0", "G' = 0"),
        Flavor::Cell if ev.gram_prime.is_zero() => Criterion::NotProjective("G' = 0".into()),
        Flavor::Cell if undetermined => Criterion::NotApplicable("simplicity undetermined and G' ≠ 0".into()),
        Flavor::Cell => Criterion::NotApplicable("not simple and G' ≠ 0".into()),
    };

    let criterion_k = match ev.k {
        Some(k) => Criterion::from_bool(!k.is_zero(), "k ≠ 0", "k = 0"),
        None => Criterion::NotApplicable("k undefined".into()),
    };

    let criterion_lambda0 = match flavor {
        Flavor::Cell => Criterion::NotApplicable("stated for W_d only".into()),
        Flavor::Dual if !ev.duals_cellular => {
            Criterion::NotApplicable("dual bases not cellular for the opposite order".into())
        }
        Flavor::Dual if !simple => Criterion::NotApplicable("not known to be simple".into()),
        Flavor::Dual => Criterion::from_bool(!ev.gram.is_zero(), "λ ∈ Λ_0", "λ ∉ Λ_0"),
    };

    let oracle_gaschutz = gaschutz_oracle(alg, db, &module.rep);
    let oracle_splitting = splitting_oracle(alg, &module.rep);
    let oracle = oracle_gaschutz;
    let misses = |c: &Criterion| c.verdict().is_some_and(|v| v != oracle);

    let psi_boundary = flavor == Flavor::Cell
        && simple
        && ev.gram.rank() < ev.gram.rows()
        && matches!((criterion_psi.verdict(), criterion_c.verdict()), (Some(a), Some(b)) if a != b);
    let lambda0_boundary = flavor == Flavor::Dual
        && ev.gram_prime.rank() < ev.gram_prime.rows()
        && misses(&criterion_lambda0);
    let agreement = oracle_gaschutz == oracle_splitting
        && ![&criterion_c, &criterion_psi, &criterion_k, &criterion_lambda0].into_iter().any(misses);
    let unexplained_disagreement = oracle_gaschutz != oracle_splitting
        || misses(&criterion_c)
        || misses(&criterion_k)
        || (misses(&criterion_psi) && !psi_boundary)
        || (misses(&criterion_lambda0) && !lambda0_boundary);

    Ok(ProjectivityVerdict {
        cell: ev.label.to_string(),
        flavor,
        simplicity: ev.simplicity.clone(),
        criterion_c,
        criterion_psi,
        criterion_k,
        criterion_lambda0,
        oracle_gaschutz,
        oracle_splitting,
        agreement,
        psi_boundary,
        lambda0_boundary,
        unexplained_disagreement,
    })
}
