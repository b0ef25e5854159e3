//! Finite-dimensional unital algebras given by structure constants, their
//! trace form, dual bases and Nakayama automorphism.

use thiserror::Error;

use crate::linalg::{LinAlgError, Matrix};
use crate::scalar::Field;
use crate::validation::{Axiom, ValidationReport};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AlgebraError {
    #[error("expected a vector of length {expected}, got {actual}")]
    LengthMismatch { expected: usize, actual: usize },
    #[error("structure constant ({i}, {j}, {k}) out of range for dimension {dim}")]
    IndexOutOfRange { i: usize, j: usize, k: usize, dim: usize },
    #[error("involution matrix is {rows}x{cols}, expected {dim}x{dim}")]
    InvolutionShape { rows: usize, cols: usize, dim: usize },
    #[error("trace form is degenerate: null vector {witness}")]
    NonDegeneracyFailure { witness: String },
}

/// An algebra `A` with basis `a_0..a_{n-1}`, multiplication
/// `a_i·a_j = Σ_k γ_ijk a_k`, an involution `i` and a trace functional
/// `τ`. The bilinear form is always `f(x, y) = τ(xy)`.
#[derive(Debug, Clone, PartialEq)]
pub struct Algebra<F> {
    labels: Vec<String>,
    /// Sparse rows of γ, indexed by `i * n + j`.
    products: Vec<Vec<(usize, F)>>,
    unit: Vec<F>,
    /// Column `j` holds `i(a_j)`.
    involution: Matrix<F>,
    trace: Vec<F>,
}

impl<F: Field> Algebra<F> {
    /// Builds an algebra from structure constants `(i, j, k, γ_ijk)`.
    /// Repeated triples are summed.
    pub fn new(
        labels: Vec<String>,
        constants: impl IntoIterator<Item = (usize, usize, usize, F)>,
        unit: Vec<F>,
        involution: Matrix<F>,
        trace: Vec<F>,
    ) -> Result<Self, AlgebraError> {
        let n = labels.len();
        let mut dense: Vec<Vec<F>> = vec![Vec::new(); n * n];
        for (i, j, k, c) in constants {
            if i >= n || j >= n || k >= n {
                return Err(AlgebraError::IndexOutOfRange { i, j, k, dim: n });
            }
            let row = &mut dense[i * n + j];
            if row.is_empty() {
                *row = vec![F::zero(); n];
            }
            row[k] = row[k].clone() + c;
        }
        let products = dense.into_iter().map(|row| sparse(&row)).collect();
        for v in [&unit, &trace] {
            if v.len() != n {
                return Err(AlgebraError::LengthMismatch { expected: n, actual: v.len() });
            }
        }
        if involution.rows() != n || involution.cols() != n {
            return Err(AlgebraError::InvolutionShape { rows: involution.rows(), cols: involution.cols(), dim: n });
        }
        Ok(Algebra { labels, products, unit, involution, trace })
    }

    pub fn dim(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn unit(&self) -> &[F] {
        &self.unit
    }

    pub fn involution(&self) -> &Matrix<F> {
        &self.involution
    }

    pub fn trace(&self) -> &[F] {
        &self.trace
    }

    /// Nonzero structure constants as `(i, j, k, γ_ijk)`, in lexicographic order.
    pub fn structure_constants(&self) -> impl Iterator<Item = (usize, usize, usize, &F)> + '_ {
        let n = self.dim();
        self.products
            .iter()
            .enumerate()
            .flat_map(move |(ij, row)| row.iter().map(move |(k, c)| (ij / n, ij % n, *k, c)))
    }

    pub fn basis_vector(&self, i: usize) -> Vec<F> {
        unit_vector(self.dim(), i)
    }

    /// `a_i · a_j` in basis coordinates.
    pub fn basis_product(&self, i: usize, j: usize) -> Vec<F> {
        let mut out = vec![F::zero(); self.dim()];
        for (k, c) in &self.products[i * self.dim() + j] {
            out[*k] = c.clone();
        }
        out
    }

    pub fn multiply(&self, x: &[F], y: &[F]) -> Result<Vec<F>, AlgebraError> {
        self.check_len(x)?;
        self.check_len(y)?;
        Ok(self.mul(x, y))
    }

    pub(crate) fn mul(&self, x: &[F], y: &[F]) -> Vec<F> {
        let n = self.dim();
        let mut out = vec![F::zero(); n];
        for (i, xi) in x.iter().enumerate().filter(|(_, c)| !c.is_zero()) {
            for (j, yj) in y.iter().enumerate().filter(|(_, c)| !c.is_zero()) {
                let xy = xi.clone() * yj.clone();
                for (k, c) in &self.products[i * n + j] {
                    out[k.to_owned()] = out[*k].clone() + xy.clone() * c.clone();
                }
            }
        }
        out
    }

    /// Matrix of `y ↦ x·y`.
    pub fn left_multiplication(&self, x: &[F]) -> Matrix<F> {
        let cols: Vec<Vec<F>> = (0..self.dim()).map(|j| self.mul(x, &self.basis_vector(j))).collect();
        Matrix::from_columns(self.dim(), &cols)
    }

    /// Matrix of `y ↦ y·x`.
    pub fn right_multiplication(&self, x: &[F]) -> Matrix<F> {
        let cols: Vec<Vec<F>> = (0..self.dim()).map(|j| self.mul(&self.basis_vector(j), x)).collect();
        Matrix::from_columns(self.dim(), &cols)
    }

    pub fn apply_involution(&self, x: &[F]) -> Vec<F> {
        self.involution.mul_vec(x)
    }

    pub fn tau(&self, x: &[F]) -> F {
        dot(&self.trace, x)
    }

    /// `F_ij = τ(a_i a_j)`.
    pub fn trace_form(&self) -> Matrix<F> {
        Matrix::from_fn(self.dim(), self.dim(), |i, j| self.tau(&self.basis_product(i, j)))
    }

    /// Column-major construction of the same form; equals `trace_form().transpose()`.
    pub fn trace_form_transposed(&self) -> Matrix<F> {
        Matrix::from_fn(self.dim(), self.dim(), |i, j| self.tau(&self.basis_product(j, i)))
    }

    fn check_len(&self, x: &[F]) -> Result<(), AlgebraError> {
        if x.len() == self.dim() {
            Ok(())
        } else {
            Err(AlgebraError::LengthMismatch { expected: self.dim(), actual: x.len() })
        }
    }

    /// Renders a coordinate vector as a linear combination of basis labels.
    pub fn describe(&self, x: &[F]) -> String {
        describe(&self.labels, x)
    }
}

pub(crate) fn describe<F: Field>(labels: &[String], x: &[F]) -> String {
    let terms: Vec<String> = x
        .iter()
        .zip(labels)
        .filter(|(c, _)| !c.is_zero())
        .map(|(c, l)| if c.is_one() { l.clone() } else { format!("({c})*{l}") })
        .collect();
    if terms.is_empty() {
        "0".into()
    } else {
        terms.join(" + ")
    }
}

pub(crate) fn sparse<F: Field>(v: &[F]) -> Vec<(usize, F)> {
    v.iter().enumerate().filter(|(_, c)| !c.is_zero()).map(|(k, c)| (k, c.clone())).collect()
}

pub(crate) fn unit_vector<F: Field>(n: usize, i: usize) -> Vec<F> {
    let mut v = vec![F::zero(); n];
    v[i] = F::one();
    v
}

pub(crate) fn dot<F: Field>(a: &[F], b: &[F]) -> F {
    a.iter()
        .zip(b)
        .filter(|(x, y)| !x.is_zero() && !y.is_zero())
        .fold(F::zero(), |acc, (x, y)| acc + x.clone() * y.clone())
}

pub(crate) fn sub_vec<F: Field>(a: &[F], b: &[F]) -> Vec<F> {
    a.iter().zip(b).map(|(x, y)| x.clone() - y.clone()).collect()
}

/// Collects failures of one axiom, keeping the first witness and a count.
struct FailureTally {
    axiom: Axiom,
    first: Option<(String, String)>,
    count: usize,
}

impl FailureTally {
    fn new(axiom: Axiom) -> Self {
        FailureTally { axiom, first: None, count: 0 }
    }

    fn record(&mut self, witness: impl FnOnce() -> (String, String)) {
        if self.first.is_none() {
            self.first = Some(witness());
        }
        self.count += 1;
    }

    fn flush(self, report: &mut ValidationReport) {
        report.check(self.axiom);
        if let Some((witness, detail)) = self.first {
            let detail = if self.count > 1 {
                format!("{detail} ({} violations in total)", self.count)
            } else {
                detail
            };
            report.fail(self.axiom, witness, detail);
        }
    }
}

/// Checks associativity, the unit, the involution and non-degeneracy of `f`.
pub fn validate_algebra<F: Field>(alg: &Algebra<F>) -> ValidationReport {
    let n = alg.dim();
    let l = alg.labels();
    let mut report = ValidationReport::default();

    let mut assoc = FailureTally::new(Axiom::Associativity);
    let products: Vec<Vec<F>> = (0..n * n).map(|ij| alg.basis_product(ij / n, ij % n)).collect();
    for i in 0..n {
        for j in 0..n {
            let left_factor = &products[i * n + j];
            for k in 0..n {
                let lhs = alg.mul(left_factor, &alg.basis_vector(k));
                let rhs = alg.mul(&alg.basis_vector(i), &products[j * n + k]);
                if lhs != rhs {
                    assoc.record(|| {
                        (
                            format!("({}, {}, {})", l[i], l[j], l[k]),
                            format!(
                                "({}·{})·{} = {} but {}·({}·{}) = {}",
                                l[i], l[j], l[k], alg.describe(&lhs), l[i], l[j], l[k], alg.describe(&rhs)
                            ),
                        )
                    });
                }
            }
        }
    }
    assoc.flush(&mut report);

    let mut unit = FailureTally::new(Axiom::Unit);
    for i in 0..n {
        let e = alg.basis_vector(i);
        if alg.mul(alg.unit(), &e) != e || alg.mul(&e, alg.unit()) != e {
            unit.record(|| (l[i].clone(), format!("1·{0} or {0}·1 differs from {0}", l[i])));
        }
    }
    unit.flush(&mut report);

    let inv = alg.involution();
    let mut anti = FailureTally::new(Axiom::AntiMultiplicative);
    for i in 0..n {
        for j in 0..n {
            let lhs = alg.apply_involution(&products[i * n + j]);
            let rhs = alg.mul(&inv.column(j), &inv.column(i));
            if lhs != rhs {
                anti.record(|| {
                    (
                        format!("({}, {})", l[i], l[j]),
                        format!("i({0}·{1}) = {2} but i({1})·i({0}) = {3}", l[i], l[j], alg.describe(&lhs), alg.describe(&rhs)),
                    )
                });
            }
        }
    }
    anti.flush(&mut report);

    let mut square = FailureTally::new(Axiom::Involutive);
    let sq = inv * inv;
    for j in 0..n {
        if sq.column(j) != alg.basis_vector(j) {
            square.record(|| (l[j].clone(), format!("i(i({})) = {}", l[j], alg.describe(&sq.column(j)))));
        }
    }
    square.flush(&mut report);

    report.check(Axiom::NonDegenerate);
    let form = alg.trace_form();
    if let Some(v) = form.nullspace().into_iter().next() {
        report.fail(
            Axiom::NonDegenerate,
            alg.describe(&v),
            format!("τ(x·a_j) = 0 for every basis element a_j, rank {} < {n}", form.rank()),
        );
    }

    // Opportunistic: τ∘i = τ implies f(i(x), i(y)) = f(y, x).
    let tau_invariant = (0..n).all(|j| alg.tau(&inv.column(j)) == alg.trace()[j]);
    if tau_invariant {
        let symmetric_under_i = (0..n).all(|i| {
            (0..n).all(|j| alg.tau(&alg.mul(&inv.column(i), &inv.column(j))) == form[(j, i)])
        });
        report.notes.push(format!(
            "τ is i-invariant; f(i(x), i(y)) = f(y, x) on all basis pairs: {symmetric_under_i}"
        ));
    } else {
        report.notes.push("τ is not i-invariant".into());
    }
    report
}

/// Right and left dual bases and the Nakayama automorphism, all as
/// matrices whose `j`-th column holds the image of basis index `j` in
/// basis coordinates.
#[derive(Debug, Clone, PartialEq)]
pub struct DualBases<F> {
    /// Column `j` is `d_j` with `τ(a_i d_j) = δ_ij`.
    pub right_dual: Matrix<F>,
    /// Column `j` is `D_j` with `τ(D_j a_i) = δ_ij`.
    pub left_dual: Matrix<F>,
    /// `α` with `α(d_j) = D_j`.
    pub nakayama: Matrix<F>,
}

impl<F: Field> DualBases<F> {
    pub fn right(&self, j: usize) -> Vec<F> {
        self.right_dual.column(j)
    }

    pub fn left(&self, j: usize) -> Vec<F> {
        self.left_dual.column(j)
    }

    pub fn apply_nakayama(&self, x: &[F]) -> Vec<F> {
        self.nakayama.mul_vec(x)
    }
}

pub fn dual_bases<F: Field>(alg: &Algebra<F>) -> Result<DualBases<F>, AlgebraError> {
    let form = alg.trace_form();
    let degenerate = |_: LinAlgError| AlgebraError::NonDegeneracyFailure {
        witness: form.nullspace().first().map(|v| alg.describe(v)).unwrap_or_default(),
    };
    // τ(a_i d_j) = (F X)_ij and τ(D_j a_i) = (Fᵀ Y)_ij.
    let right_dual = form.invert().map_err(degenerate)?;
    let left_dual = form.transpose().invert().map_err(degenerate)?;
    let nakayama = &left_dual * &form;
    let db = DualBases { right_dual, left_dual, nakayama };

    let n = alg.dim();
    for i in 0..n {
        for j in 0..n {
            let delta = if i == j { F::one() } else { F::zero() };
            let right = alg.tau(&alg.mul(&alg.basis_vector(i), &db.right(j)));
            let left = alg.tau(&alg.mul(&db.left(j), &alg.basis_vector(i)));
            assert!(right == delta && left == delta, "dual basis postcondition at ({i}, {j})");
        }
    }
    Ok(db)
}

/// Checks that `α` is a unital, invertible algebra automorphism with
/// `τ(x·y) = τ(α(y)·x)` on all basis pairs.
pub fn nakayama_check<F: Field>(alg: &Algebra<F>, db: &DualBases<F>) -> bool {
    let n = alg.dim();
    let alpha = &db.nakayama;
    if alpha.rows() != n || alpha.cols() != n || alpha.invert().is_err() {
        return false;
    }
    if db.apply_nakayama(alg.unit()) != alg.unit() {
        return false;
    }
    for i in 0..n {
        for j in 0..n {
            let (x, y) = (alpha.column(i), alpha.column(j));
            if db.apply_nakayama(&alg.basis_product(i, j)) != alg.mul(&x, &y) {
                return false;
            }
            let lhs = alg.tau(&alg.basis_product(i, j));
            let rhs = alg.tau(&alg.mul(&y, &alg.basis_vector(i)));
            if lhs != rhs {
                return false;
            }
        }
    }
    true
}
