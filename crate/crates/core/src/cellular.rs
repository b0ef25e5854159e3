//! Cell data `(Λ, M, C, i)`, the cellular axioms, cell modules and the
//! bilinear form `Φ` with its Gram matrices.

use serde::Serialize;
use thiserror::Error;

use crate::algebra::{sparse, Algebra};
use crate::linalg::{Matrix, Span};
use crate::scalar::{Field, FieldKind};
use crate::validation::{Axiom, ValidationReport};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CellDatumError {
    #[error("duplicate cell label {0:?}")]
    DuplicateCell(String),
    #[error("cell {cell:?} has duplicate member {member:?}")]
    DuplicateMember { cell: String, member: String },
    #[error("cell {0:?} has no members")]
    EmptyCell(String),
    #[error("order relation has a cycle through {0:?}")]
    Cycle(String),
    #[error("index map entry {entry} out of range: {detail}")]
    OutOfRange { entry: String, detail: String },
    #[error("index map is not a bijection: {first} and {second} both map to basis index {index}")]
    NotInjective { first: String, second: String, index: usize },
    #[error("index map is not a bijection: cell triple {0} has no basis index")]
    Missing(String),
    #[error("index map is not a bijection: {0} assigned twice")]
    Reassigned(String),
    #[error("cell basis has {cells} elements but the algebra has dimension {dim}")]
    CountMismatch { cells: usize, dim: usize },
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CellularError {
    #[error("unknown cell {0:?}")]
    UnknownCell(String),
    #[error("inconsistent cell structure in cell {cell}: {detail}")]
    InconsistentCellStructure { cell: String, detail: String },
    #[error("cell module {cell} ({flavor}) is not a representation: {detail}")]
    NotARepresentation { cell: String, flavor: Flavor, detail: String },
}

/// Poset `Λ`, index sets `M(λ)` and the bijection `(λ, S, T) ↔ basis index`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CellDatum {
    labels: Vec<String>,
    members: Vec<Vec<String>>,
    /// `less[a][b]` iff `a < b`, transitively closed.
    less: Vec<Vec<bool>>,
    /// `index[λ][S][T]` is the basis index of `C^λ_{S,T}`.
    index: Vec<Vec<Vec<usize>>>,
    triples: Vec<(usize, usize, usize)>,
}

impl CellDatum {
    /// `relations` are `(lo, hi)` pairs meaning `lo < hi`; they are
    /// transitively closed here. `index_map` entries are `(λ, S, T, basis index)`.
    pub fn new(
        labels: Vec<String>,
        members: Vec<Vec<String>>,
        relations: &[(usize, usize)],
        index_map: &[(usize, usize, usize, usize)],
        dim: usize,
    ) -> Result<Self, CellDatumError> {
        let m = labels.len();
        for (i, l) in labels.iter().enumerate() {
            if labels[..i].contains(l) {
                return Err(CellDatumError::DuplicateCell(l.clone()));
            }
        }
        for (c, ms) in members.iter().enumerate() {
            if ms.is_empty() {
                return Err(CellDatumError::EmptyCell(labels[c].clone()));
            }
            for (i, s) in ms.iter().enumerate() {
                if ms[..i].contains(s) {
                    return Err(CellDatumError::DuplicateMember { cell: labels[c].clone(), member: s.clone() });
                }
            }
        }
        let mut less = vec![vec![false; m]; m];
        for &(lo, hi) in relations {
            if lo >= m || hi >= m {
                return Err(CellDatumError::OutOfRange {
                    entry: format!("({lo}, {hi})"),
                    detail: format!("only {m} cells"),
                });
            }
            less[lo][hi] = true;
        }
        for k in 0..m {
            for i in 0..m {
                if less[i][k] {
                    for j in 0..m {
                        if less[k][j] {
                            less[i][j] = true;
                        }
                    }
                }
            }
        }
        if let Some(c) = (0..m).find(|&c| less[c][c]) {
            return Err(CellDatumError::Cycle(labels[c].clone()));
        }

        let count: usize = members.iter().map(|ms| ms.len() * ms.len()).sum();
        if count != dim {
            return Err(CellDatumError::CountMismatch { cells: count, dim });
        }
        let mut index: Vec<Vec<Vec<Option<usize>>>> =
            members.iter().map(|ms| vec![vec![None; ms.len()]; ms.len()]).collect();
        let mut owner: Vec<Option<(usize, usize, usize)>> = vec![None; dim];
        let name = |c: usize, s: usize, t: usize| format!("({}, {}, {})", labels[c], members[c][s], members[c][t]);
        for &(c, s, t, k) in index_map {
            if c >= m || s >= members[c].len() || t >= members[c].len() || k >= dim {
                return Err(CellDatumError::OutOfRange {
                    entry: format!("[{c}, {s}, {t}, {k}]"),
                    detail: "cell, member or basis index out of range".into(),
                });
            }
            if index[c][s][t].is_some() {
                return Err(CellDatumError::Reassigned(name(c, s, t)));
            }
            if let Some((c2, s2, t2)) = owner[k] {
                return Err(CellDatumError::NotInjective { first: name(c2, s2, t2), second: name(c, s, t), index: k });
            }
            index[c][s][t] = Some(k);
            owner[k] = Some((c, s, t));
        }
        let mut full = Vec::with_capacity(m);
        for (c, rows) in index.into_iter().enumerate() {
            let mut r = Vec::with_capacity(rows.len());
            for (s, cols) in rows.into_iter().enumerate() {
                let mut row = Vec::with_capacity(cols.len());
                for (t, k) in cols.into_iter().enumerate() {
                    row.push(k.ok_or_else(|| CellDatumError::Missing(name(c, s, t)))?);
                }
                r.push(row);
            }
            full.push(r);
        }
        let triples = owner.into_iter().map(|o| o.expect("bijection checked")).collect();
        Ok(CellDatum { labels, members, less, index: full, triples })
    }

    pub fn cell_count(&self) -> usize {
        self.labels.len()
    }

    pub fn dim(&self) -> usize {
        self.triples.len()
    }

    pub fn label(&self, cell: usize) -> &str {
        &self.labels[cell]
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn members(&self, cell: usize) -> &[String] {
        &self.members[cell]
    }

    /// `n_λ = |M(λ)|`.
    pub fn size(&self, cell: usize) -> usize {
        self.members[cell].len()
    }

    pub fn find(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    pub fn less(&self, a: usize, b: usize) -> bool {
        self.less[a][b]
    }

    pub fn leq(&self, a: usize, b: usize) -> bool {
        a == b || self.less[a][b]
    }

    /// Covering-free list of all `(lo, hi)` with `lo < hi`.
    pub fn order_pairs(&self) -> Vec<(usize, usize)> {
        let m = self.cell_count();
        (0..m).flat_map(|a| (0..m).map(move |b| (a, b))).filter(|&(a, b)| self.less[a][b]).collect()
    }

    /// Basis index of `C^λ_{S,T}`.
    pub fn index(&self, cell: usize, s: usize, t: usize) -> usize {
        self.index[cell][s][t]
    }

    /// `(λ, S, T)` of a basis index.
    pub fn triple(&self, k: usize) -> (usize, usize, usize) {
        self.triples[k]
    }

    pub fn describe_triple(&self, k: usize) -> String {
        let (c, s, t) = self.triples[k];
        format!("C^{}_{{{},{}}}", self.labels[c], self.members[c][s], self.members[c][t])
    }

    /// Same cells and index map with the order reversed.
    pub fn opposite(&self) -> CellDatum {
        let m = self.cell_count();
        let mut out = self.clone();
        out.less = (0..m).map(|a| (0..m).map(|b| self.less[b][a]).collect()).collect();
        out
    }

    /// Index map `(λ, S, T) ↦ index(λ, T, S)`.
    pub fn transposed(&self) -> CellDatum {
        let mut out = self.clone();
        for (c, rows) in out.index.iter_mut().enumerate() {
            for (s, row) in rows.iter_mut().enumerate() {
                for (t, k) in row.iter_mut().enumerate() {
                    *k = self.index[c][t][s];
                }
            }
        }
        for (k, tr) in out.triples.iter_mut().enumerate() {
            let (c, s, t) = self.triples[k];
            *tr = (c, t, s);
        }
        out
    }
}

/// An algebra together with its cell datum and the field it lives over.
#[derive(Debug, Clone, PartialEq)]
pub struct CellularAlgebra<F> {
    pub kind: FieldKind,
    pub algebra: Algebra<F>,
    pub datum: CellDatum,
}

/// Which family a cell module is built from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Flavor {
    /// `W_C(λ)`, spanned by `C_S` with `a·C_S = Σ r_a(S', S) C_{S'}`.
    #[serde(rename = "C")]
    Cell,
    /// `W_d(λ)`, spanned by `d_S` with `a·d_S = Σ r_{i(a)}(S, S') d_{S'}`.
    #[serde(rename = "d")]
    Dual,
}

impl std::fmt::Display for Flavor {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Flavor::Cell => "C",
            Flavor::Dual => "d",
        })
    }
}

/// A finite-dimensional left module given by the action matrix of every
/// algebra basis element.
#[derive(Debug, Clone, PartialEq)]
pub struct Representation<F> {
    dim: usize,
    actions: Vec<Matrix<F>>,
}

impl<F: Field> Representation<F> {
    pub fn new(dim: usize, actions: Vec<Matrix<F>>) -> Self {
        assert!(actions.iter().all(|m| m.rows() == dim && m.cols() == dim), "action shape");
        Representation { dim, actions }
    }

    /// The regular module `A` acting on itself by left multiplication.
    pub fn regular(alg: &Algebra<F>) -> Self {
        let actions = (0..alg.dim()).map(|i| alg.left_multiplication(&alg.basis_vector(i))).collect();
        Representation { dim: alg.dim(), actions }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn actions(&self) -> &[Matrix<F>] {
        &self.actions
    }

    /// `ρ(x)` for an algebra element in basis coordinates.
    pub fn act(&self, x: &[F]) -> Matrix<F> {
        let mut out = Matrix::zeros(self.dim, self.dim);
        for (c, m) in x.iter().zip(&self.actions) {
            if !c.is_zero() {
                out = &out + &m.scale(c);
            }
        }
        out
    }

    /// Checks `ρ(1) = E` and `ρ(a_i)ρ(a_j) = ρ(a_i a_j)`; returns the first violation.
    pub fn check(&self, alg: &Algebra<F>) -> Result<(), String> {
        if !self.act(alg.unit()).is_identity() {
            return Err("ρ(1) is not the identity".into());
        }
        for i in 0..alg.dim() {
            for j in 0..alg.dim() {
                let lhs = &self.actions[i] * &self.actions[j];
                if lhs != self.act(&alg.basis_product(i, j)) {
                    return Err(format!("ρ({0})ρ({1}) ≠ ρ({0}·{1})", alg.labels()[i], alg.labels()[j]));
                }
            }
        }
        Ok(())
    }

    /// Smallest submodule containing `v`.
    pub fn spin(&self, v: &[F]) -> Span<F> {
        let mut span = Span::new(self.dim);
        let mut queue = vec![v.to_vec()];
        while let Some(w) = queue.pop() {
            if span.insert(&w) {
                for m in &self.actions {
                    queue.push(m.mul_vec(&w));
                }
            }
        }
        span
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct CellModule<F> {
    pub cell: usize,
    pub flavor: Flavor,
    pub rep: Representation<F>,
}

impl<F: Field> CellModule<F> {
    pub fn dim(&self) -> usize {
        self.rep.dim()
    }
}

/// Checks (C1)–(C3) for `alg` against `cd`.
pub fn validate_cellular<F: Field>(alg: &Algebra<F>, cd: &CellDatum) -> ValidationReport {
    let mut report = ValidationReport::default();
    let n = alg.dim();

    report.check(Axiom::CellBasis);
    if cd.dim() != n {
        report.fail(Axiom::CellBasis, format!("{} cell triples", cd.dim()), format!("algebra has dimension {n}"));
        return report;
    }

    report.check(Axiom::CellInvolution);
    let inv = alg.involution();
    for k in 0..n {
        let (c, s, t) = cd.triple(k);
        let image = inv.column(k);
        if image != alg.basis_vector(cd.index(c, t, s)) {
            report.fail(
                Axiom::CellInvolution,
                cd.describe_triple(k),
                format!("i({}) = {}, expected {}", cd.describe_triple(k), alg.describe(&image), cd.describe_triple(cd.index(c, t, s))),
            );
            break;
        }
    }

    report.check(Axiom::CellMultiplication);
    if let Err((witness, detail)) = check_c3(alg, cd) {
        report.fail(Axiom::CellMultiplication, witness, detail);
    }
    report
}

fn check_c3<F: Field>(alg: &Algebra<F>, cd: &CellDatum) -> Result<(), (String, String)> {
    let labels = alg.labels();
    for i in 0..alg.dim() {
        for cell in 0..cd.cell_count() {
            let size = cd.size(cell);
            // r_{a_i}(S', S) read from T = 0, compared for every other T.
            let mut reference: Vec<Vec<F>> = Vec::with_capacity(size);
            for s in 0..size {
                for t in 0..size {
                    let k = cd.index(cell, s, t);
                    let product = alg.mul(&alg.basis_vector(i), &alg.basis_vector(k));
                    let witness = || format!("{} · {}", labels[i], cd.describe_triple(k));
                    let mut column = vec![F::zero(); size];
                    for (idx, coeff) in sparse(&product) {
                        let (c2, s2, t2) = cd.triple(idx);
                        if c2 == cell {
                            if t2 != t {
                                return Err((witness(), format!("has a component on {} in the wrong column", cd.describe_triple(idx))));
                            }
                            column[s2] = coeff;
                        } else if !cd.less(c2, cell) {
                            return Err((witness(), format!("has a component on {} outside A(<{})", cd.describe_triple(idx), cd.label(cell))));
                        }
                    }
                    if t == 0 {
                        reference.push(column);
                    } else if column != reference[s] {
                        return Err((witness(), format!("coefficients differ from those for T = {}", cd.members(cell)[0])));
                    }
                }
            }
        }
    }
    Ok(())
}

/// `ρ_λ(a_i)` with entries `r_{a_i}(S', S)`, read off from `a_i·C^λ_{S,T₀}`.
pub fn cell_action<F: Field>(alg: &Algebra<F>, cd: &CellDatum, cell: usize) -> Vec<Matrix<F>> {
    let size = cd.size(cell);
    (0..alg.dim())
        .map(|i| {
            let mut m = Matrix::zeros(size, size);
            for s in 0..size {
                let product = alg.mul(&alg.basis_vector(i), &alg.basis_vector(cd.index(cell, s, 0)));
                for (s2, entry) in (0..size).map(|s2| (s2, &product[cd.index(cell, s2, 0)])) {
                    m[(s2, s)] = entry.clone();
                }
            }
            m
        })
        .collect()
}

pub fn cell_module<F: Field>(
    alg: &Algebra<F>,
    cd: &CellDatum,
    cell: usize,
    flavor: Flavor,
) -> Result<CellModule<F>, CellularError> {
    if cell >= cd.cell_count() {
        return Err(CellularError::UnknownCell(cell.to_string()));
    }
    let c_action = cell_action(alg, cd, cell);
    let actions = match flavor {
        Flavor::Cell => c_action,
        Flavor::Dual => {
            let c_rep = Representation::new(cd.size(cell), c_action);
            (0..alg.dim())
                .map(|i| c_rep.act(&alg.involution().column(i)).transpose())
                .collect()
        }
    };
    let rep = Representation::new(cd.size(cell), actions);
    rep.check(alg).map_err(|detail| CellularError::NotARepresentation {
        cell: cd.label(cell).to_string(),
        flavor,
        detail,
    })?;
    Ok(CellModule { cell, flavor, rep })
}

/// `G(λ) = (Φ(S_i, S_j))`, probing every `(S, V)` pair.
pub fn phi_gram<F: Field>(alg: &Algebra<F>, cd: &CellDatum, cell: usize) -> Result<Matrix<F>, CellularError> {
    let size = cd.size(cell);
    let mut gram: Matrix<F> = Matrix::zeros(size, size);
    let inconsistent = |detail: String| CellularError::InconsistentCellStructure { cell: cd.label(cell).to_string(), detail };
    for t in 0..size {
        for u in 0..size {
            let mut value: Option<F> = None;
            for s in 0..size {
                for v in 0..size {
                    let (left, right) = (cd.index(cell, s, t), cd.index(cell, u, v));
                    let product = alg.basis_product(left, right);
                    let target = cd.index(cell, s, v);
                    for (idx, _) in sparse(&product) {
                        let (c2, _, _) = cd.triple(idx);
                        if (c2 == cell && idx != target) || (c2 != cell && !cd.less(c2, cell)) {
                            return Err(inconsistent(format!(
                                "{} · {} has a component on {}",
                                cd.describe_triple(left),
                                cd.describe_triple(right),
                                cd.describe_triple(idx)
                            )));
                        }
                    }
                    let phi = product[target].clone();
                    match &value {
                        None => value = Some(phi),
                        Some(prev) if *prev != phi => {
                            return Err(inconsistent(format!(
                                "Φ({}, {}) depends on the probe pair: {} vs {}",
                                cd.members(cell)[t],
                                cd.members(cell)[u],
                                prev,
                                phi
                            )))
                        }
                        _ => {}
                    }
                }
            }
            gram[(t, u)] = value.expect("nonempty cell");
        }
    }
    Ok(gram)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SimpleData {
    pub rank_g: usize,
    /// `dim L(λ) = rank G(λ)`; zero when `Φ_λ = 0`.
    pub dim_l: usize,
    pub in_lambda0: bool,
}

pub fn simple_data<F: Field>(gram: &Matrix<F>) -> SimpleData {
    let rank_g = gram.rank();
    SimpleData { rank_g, dim_l: rank_g, in_lambda0: !gram.is_zero() }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum Simplicity {
    Simple { reason: String },
    NotSimple { witness_dim: usize, reason: String },
    Undetermined,
}

impl Simplicity {
    pub fn is_simple(&self) -> bool {
        matches!(self, Simplicity::Simple { .. })
    }
}

/// Three-way simplicity status of a module. `gram` is the form whose
/// radical is a submodule (`G(λ)` for `W_C(λ)`); pass `None` when no such
/// form is known.
pub fn simplicity_status<F: Field>(rep: &Representation<F>, gram: Option<&Matrix<F>>) -> Simplicity {
    let n = rep.dim();
    if n == 1 {
        return Simplicity::Simple { reason: "one-dimensional".into() };
    }
    if let Some(g) = gram {
        let rank = g.rank();
        if rank == n {
            return Simplicity::Simple { reason: "Gram matrix invertible".into() };
        }
        if rank > 0 {
            return Simplicity::NotSimple { witness_dim: n - rank, reason: "radical of Φ".into() };
        }
    }
    let mut span = Span::new(n * n);
    for m in rep.actions() {
        span.insert(&m.entries().cloned().collect::<Vec<_>>());
    }
    if span.rank() == n * n {
        return Simplicity::Simple { reason: "action spans all endomorphisms".into() };
    }
    let mut candidates: Vec<Vec<F>> = (0..n).map(|i| crate::algebra::unit_vector(n, i)).collect();
    for m in rep.actions() {
        candidates.extend(m.nullspace());
    }
    for v in candidates {
        let generated = rep.spin(&v).rank();
        if generated > 0 && generated < n {
            return Simplicity::NotSimple { witness_dim: generated, reason: "spinning a vector".into() };
        }
    }
    Simplicity::Undetermined
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::builtin;
    use crate::scalar::Rational;

    const Q: FieldKind = FieldKind::Rational;

    fn q(n: i64) -> Rational {
        Rational::from_integer(n.into())
    }

    #[test]
    fn poset_closure_and_cycles() {
        let labels: Vec<String> = ["a", "b", "c"].map(String::from).to_vec();
        let members = vec![vec!["s".to_string()]; 3];
        let map = [(0, 0, 0, 0), (1, 0, 0, 1), (2, 0, 0, 2)];
        let cd = CellDatum::new(labels.clone(), members.clone(), &[(0, 1), (1, 2)], &map, 3).unwrap();
        assert!(cd.less(0, 2));
        assert!(!cd.less(2, 0));
        assert!(cd.opposite().less(2, 0));
        let err = CellDatum::new(labels, members, &[(0, 1), (1, 2), (2, 0)], &map, 3).unwrap_err();
        assert!(matches!(err, CellDatumError::Cycle(_)));
    }

    #[test]
    fn index_map_must_be_bijective() {
        let labels = vec!["x".to_string(), "y".to_string()];
        let members = vec![vec!["s".to_string()]; 2];
        let err = CellDatum::new(labels, members, &[], &[(0, 0, 0, 0), (1, 0, 0, 0)], 2).unwrap_err();
        assert!(matches!(err, CellDatumError::NotInjective { index: 0, .. }));
    }

    #[test]
    fn builtins_are_cellular() {
        let kx = builtin::koenig_xi::<Rational>(&Q, q(2)).unwrap();
        assert!(validate_cellular(&kx.algebra, &kx.datum).passed());
        let m2 = builtin::matrix_algebra::<Rational>(&Q, 2).unwrap();
        assert!(validate_cellular(&m2.algebra, &m2.datum).passed());
        let dn = builtin::dual_numbers::<Rational>(&Q);
        assert!(validate_cellular(&dn.algebra, &dn.datum).passed());
    }

    #[test]
    fn reversed_order_breaks_c3() {
        let kx = builtin::koenig_xi::<Rational>(&Q, q(2)).unwrap();
        let report = validate_cellular(&kx.algebra, &kx.datum.opposite());
        let failure = report.first_failure(Axiom::CellMultiplication).expect("C3 failure");
        assert!(failure.detail.contains("outside A(<"), "{}", failure.detail);
    }

    #[test]
    fn koenig_xi_unit_cell_module_is_trivial() {
        let kx = builtin::koenig_xi::<Rational>(&Q, q(2)).unwrap();
        let top = kx.datum.find("3").unwrap();
        let module = cell_module(&kx.algebra, &kx.datum, top, Flavor::Cell).unwrap();
        assert_eq!(module.dim(), 1);
        for (i, label) in kx.algebra.labels().iter().enumerate() {
            let expected = if label == "1" { q(1) } else { q(0) };
            assert_eq!(module.rep.actions()[i][(0, 0)], expected, "ρ({label})");
        }
    }

    #[test]
    fn matrix_cell_module_is_natural_representation() {
        let m2 = builtin::matrix_algebra::<Rational>(&Q, 2).unwrap();
        let module = cell_module(&m2.algebra, &m2.datum, 0, Flavor::Cell).unwrap();
        for s in 0..2 {
            for t in 0..2 {
                let k = m2.datum.index(0, s, t);
                let mut e = Matrix::zeros(2, 2);
                e[(s, t)] = q(1);
                assert_eq!(module.rep.actions()[k], e);
            }
        }
    }

    #[test]
    fn gram_matrices() {
        let kx = builtin::koenig_xi::<Rational>(&Q, q(2)).unwrap();
        let g3 = phi_gram(&kx.algebra, &kx.datum, kx.datum.find("3").unwrap()).unwrap();
        assert_eq!(g3, Matrix::identity(1));
        let g2 = phi_gram(&kx.algebra, &kx.datum, kx.datum.find("2").unwrap()).unwrap();
        assert!(g2.is_zero() && g2.rows() == 2);
        let m2 = builtin::matrix_algebra::<Rational>(&Q, 2).unwrap();
        assert!(phi_gram(&m2.algebra, &m2.datum, 0).unwrap().is_identity());
    }

    #[test]
    fn simple_data_examples() {
        let kx = builtin::koenig_xi::<Rational>(&Q, q(2)).unwrap();
        let g3 = phi_gram(&kx.algebra, &kx.datum, 2).unwrap();
        assert_eq!(simple_data(&g3), SimpleData { rank_g: 1, dim_l: 1, in_lambda0: true });
        let g2 = phi_gram(&kx.algebra, &kx.datum, 1).unwrap();
        assert_eq!(simple_data(&g2), SimpleData { rank_g: 0, dim_l: 0, in_lambda0: false });
        let m2 = builtin::matrix_algebra::<Rational>(&Q, 2).unwrap();
        let g = phi_gram(&m2.algebra, &m2.datum, 0).unwrap();
        assert_eq!(simple_data(&g).rank_g, 2);
    }

    #[test]
    fn simplicity_examples() {
        let kx = builtin::koenig_xi::<Rational>(&Q, q(2)).unwrap();
        let m3 = cell_module(&kx.algebra, &kx.datum, 2, Flavor::Cell).unwrap();
        let g3 = phi_gram(&kx.algebra, &kx.datum, 2).unwrap();
        assert!(simplicity_status(&m3.rep, Some(&g3)).is_simple());
        let m2 = cell_module(&kx.algebra, &kx.datum, 1, Flavor::Cell).unwrap();
        let g2 = phi_gram(&kx.algebra, &kx.datum, 1).unwrap();
        assert!(matches!(simplicity_status(&m2.rep, Some(&g2)), Simplicity::NotSimple { witness_dim: 1, .. }));

        // Upper-triangular 2x2 action: rank-one Gram matrix, radical of dimension 1.
        let mut nilpotent = Matrix::zeros(2, 2);
        nilpotent[(0, 1)] = q(1);
        let rep = Representation::new(2, vec![Matrix::identity(2), nilpotent]);
        let mut g = Matrix::zeros(2, 2);
        g[(0, 0)] = q(1);
        assert_eq!(
            simplicity_status(&rep, Some(&g)),
            Simplicity::NotSimple { witness_dim: 1, reason: "radical of Φ".into() }
        );
        assert!(matches!(simplicity_status(&rep, None), Simplicity::NotSimple { witness_dim: 1, .. }));
    }

    #[test]
    fn representation_property_and_c3_prime() {
        let kx = builtin::koenig_xi::<Rational>(&Q, q(2)).unwrap();
        let (alg, cd) = (&kx.algebra, &kx.datum);
        for cell in 0..cd.cell_count() {
            for flavor in [Flavor::Cell, Flavor::Dual] {
                let module = cell_module(alg, cd, cell, flavor).unwrap();
                assert!(module.rep.check(alg).is_ok());
            }
            // C^λ_{T,S}·i(a) ≡ Σ r_a(S', S) C^λ_{T,S'} (mod A(<λ)).
            let rho = cell_action(alg, cd, cell);
            for a in 0..alg.dim() {
                let ia = alg.involution().column(a);
                for s in 0..cd.size(cell) {
                    for t in 0..cd.size(cell) {
                        let product = alg.mul(&alg.basis_vector(cd.index(cell, t, s)), &ia);
                        for (idx, c) in sparse(&product) {
                            let (c2, x, y) = cd.triple(idx);
                            if c2 == cell {
                                assert_eq!(x, t);
                                assert_eq!(c, rho[a][(y, s)]);
                            } else {
                                assert!(cd.less(c2, cell));
                            }
                        }
                    }
                }
            }
        }
    }
}
