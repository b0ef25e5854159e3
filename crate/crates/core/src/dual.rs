//! The dual bases in cell coordinates: `Ψ` and `G'(λ)`, the mixed
//! product identities, opposite-order cellularity and `k_λ`.
//!
//! With `idx(λ, S, T)` the basis index of `C^λ_{S,T}`, the dual elements are
//! `D^λ_{S,T} = D_{idx(λ,T,S)}` and `d^λ_{S,T} = d_{idx(λ,T,S)}`, so that
//! `τ(D^μ_{U,V} C^λ_{S,T}) = δ_{λμ} δ_{SV} δ_{TU}`.

use serde::Serialize;
use thiserror::Error;

use crate::algebra::{sparse, sub_vec, Algebra, DualBases};
use crate::cellular::{cell_action, validate_cellular, CellDatum, Representation};
use crate::linalg::Matrix;
use crate::scalar::Field;
use crate::validation::{Axiom, ValidationReport};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DualError {
    #[error("congruence violation in cell {cell}: {detail}")]
    CongruenceViolation { cell: String, detail: String },
    #[error("k is not independent of T in cell {cell}: {detail}")]
    TIndependenceViolation { cell: String, detail: String },
    #[error("G·G' is not k·E in cell {cell}: {detail}")]
    GramProductViolation { cell: String, detail: String },
}

/// Cached products and coordinate maps for one algebra, datum and pair of dual bases.
pub struct Duality<'a, F> {
    alg: &'a Algebra<F>,
    cd: &'a CellDatum,
    db: &'a DualBases<F>,
    form: Matrix<F>,
    form_t: Matrix<F>,
    left: Vec<Vec<F>>,
    right: Vec<Vec<F>>,
    /// `a_p a_q`, indexed `p * n + q`.
    products: Vec<Vec<F>>,
    /// D-coordinates of `D_p D_q`, indexed `p * n + q`.
    left_products: Vec<Vec<F>>,
}

impl<'a, F: Field> Duality<'a, F> {
    pub fn new(alg: &'a Algebra<F>, cd: &'a CellDatum, db: &'a DualBases<F>) -> Self {
        let n = alg.dim();
        let form = alg.trace_form();
        let form_t = form.transpose();
        let left: Vec<_> = (0..n).map(|j| db.left(j)).collect();
        let right: Vec<_> = (0..n).map(|j| db.right(j)).collect();
        let products = (0..n * n).map(|pq| alg.basis_product(pq / n, pq % n)).collect();
        let left_products = (0..n * n)
            .map(|pq| form_t.mul_vec(&alg.mul(&left[pq / n], &left[pq % n])))
            .collect();
        Duality { alg, cd, db, form, form_t, left, right, products, left_products }
    }

    pub fn algebra(&self) -> &Algebra<F> {
        self.alg
    }

    pub fn datum(&self) -> &CellDatum {
        self.cd
    }

    pub fn duals(&self) -> &DualBases<F> {
        self.db
    }

    /// Coordinates of `x` in the left dual basis: `τ(x a_j)`.
    pub fn left_coords(&self, x: &[F]) -> Vec<F> {
        self.form_t.mul_vec(x)
    }

    /// Coordinates of `x` in the right dual basis: `τ(a_j x)`.
    pub fn right_coords(&self, x: &[F]) -> Vec<F> {
        self.form.mul_vec(x)
    }

    fn c(&self, cell: usize, s: usize, t: usize) -> Vec<F> {
        self.alg.basis_vector(self.cd.index(cell, s, t))
    }

    /// `D^λ_{S,T}`.
    pub fn big_d(&self, cell: usize, s: usize, t: usize) -> &[F] {
        &self.left[self.cd.index(cell, t, s)]
    }

    /// `d^λ_{S,T}`.
    pub fn small_d(&self, cell: usize, s: usize, t: usize) -> &[F] {
        &self.right[self.cd.index(cell, t, s)]
    }

    /// Position of `D^λ_{S,T}` (or `d^λ_{S,T}`) in dual coordinates.
    fn dual_pos(&self, cell: usize, s: usize, t: usize) -> usize {
        self.cd.index(cell, t, s)
    }

    /// `r_{(S,T,λ),(U,V,μ),(X,Y,ε)}`: coefficient of `C^ε_{X,Y}` in `C^λ_{S,T} C^μ_{U,V}`.
    fn r(&self, a: (usize, usize, usize), b: (usize, usize, usize), c: (usize, usize, usize)) -> F {
        let n = self.alg.dim();
        let (p, q) = (self.cd.index(a.0, a.1, a.2), self.cd.index(b.0, b.1, b.2));
        self.products[p * n + q][self.cd.index(c.0, c.1, c.2)].clone()
    }

    /// `R_{(S,T,λ),(U,V,μ),(X,Y,ε)}`: coefficient of `D^ε_{X,Y}` in `D^λ_{S,T} D^μ_{U,V}`.
    fn big_r(&self, a: (usize, usize, usize), b: (usize, usize, usize), c: (usize, usize, usize)) -> F {
        let n = self.alg.dim();
        let (p, q) = (self.dual_pos(a.0, a.1, a.2), self.dual_pos(b.0, b.1, b.2));
        self.left_products[p * n + q][self.dual_pos(c.0, c.1, c.2)].clone()
    }

    fn describe_d(&self, name: &str, cell: usize, s: usize, t: usize) -> String {
        let m = self.cd.members(cell);
        format!("{name}^{}_{{{},{}}}", self.cd.label(cell), m[s], m[t])
    }
}

/// `G'(λ) = (Ψ(S_i, S_j))`, read from `D^λ_{S,T} D^λ_{P,Q}` and cross-checked on the d-basis.
pub fn psi_gram<F: Field>(du: &Duality<'_, F>, cell: usize) -> Result<Matrix<F>, DualError> {
    let cd = du.cd;
    let size = cd.size(cell);
    let violation = |detail: String| DualError::CongruenceViolation { cell: cd.label(cell).to_string(), detail };
    let mut gram = Matrix::zeros(size, size);
    for (name, coords) in [("D", true), ("d", false)] {
        for t in 0..size {
            for p in 0..size {
                let mut value: Option<F> = None;
                for s in 0..size {
                    for q in 0..size {
                        let (x, y) = if coords {
                            (du.big_d(cell, s, t), du.big_d(cell, p, q))
                        } else {
                            (du.small_d(cell, s, t), du.small_d(cell, p, q))
                        };
                        let product = du.alg.mul(x, y);
                        let expansion = if coords { du.left_coords(&product) } else { du.right_coords(&product) };
                        let target = du.dual_pos(cell, s, q);
                        for (pos, _) in sparse(&expansion) {
                            let (c2, _, _) = cd.triple(pos);
                            if (c2 == cell && pos != target) || (c2 != cell && !cd.less(cell, c2)) {
                                let (_, a, b) = cd.triple(pos);
                                return Err(violation(format!(
                                    "{} · {} has a component on {}",
                                    du.describe_d(name, cell, s, t),
                                    du.describe_d(name, cell, p, q),
                                    du.describe_d(name, c2, b, a)
                                )));
                            }
                        }
                        let psi = expansion[target].clone();
                        match &value {
                            None => value = Some(psi),
                            Some(prev) if *prev != psi => {
                                return Err(violation(format!(
                                    "Ψ({}, {}) from the {name}-basis depends on the probe pair",
                                    cd.members(cell)[t],
                                    cd.members(cell)[p]
                                )))
                            }
                            _ => {}
                        }
                    }
                }
                let value = value.expect("nonempty cell");
                if coords {
                    gram[(t, p)] = value;
                } else if gram[(t, p)] != value {
                    return Err(violation(format!(
                        "Ψ({}, {}) differs between D- and d-bases",
                        cd.members(cell)[t],
                        cd.members(cell)[p]
                    )));
                }
            }
        }
    }
    Ok(gram)
}

/// Outcome of one exhaustively checked identity.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct IdentityCheck {
    pub name: String,
    pub statement: String,
    pub checked: usize,
    pub violations: usize,
    pub first_violation: Option<String>,
}

impl IdentityCheck {
    fn new(name: impl Into<String>, statement: &str) -> Self {
        IdentityCheck { name: name.into(), statement: statement.into(), checked: 0, violations: 0, first_violation: None }
    }

    fn record(&mut self, ok: bool, witness: impl FnOnce() -> String) {
        self.checked += 1;
        if !ok {
            self.violations += 1;
            if self.first_violation.is_none() {
                self.first_violation = Some(witness());
            }
        }
    }

    pub fn passed(&self) -> bool {
        self.violations == 0
    }
}

type Triple = (usize, usize, usize);

/// The twelve mixed-product identities between the cell basis and its duals.
pub fn dual_identity_suite<F: Field>(du: &Duality<'_, F>) -> Vec<IdentityCheck> {
    let (alg, cd) = (du.alg, du.cd);
    let n = alg.dim();
    let all: Vec<Triple> = (0..n).map(|k| cd.triple(k)).collect();
    let name = |x: &Triple| format!("({}, {}, {})", cd.label(x.0), cd.members(x.0)[x.1], cd.members(x.0)[x.2]);
    let alpha_inv = du.db.nakayama.invert().expect("Nakayama automorphism is invertible");
    let reps: Vec<Representation<F>> =
        (0..cd.cell_count()).map(|c| Representation::new(cd.size(c), cell_action(alg, cd, c))).collect();

    let mut items: Vec<IdentityCheck> = [
        "D^μ_{U,V}C^λ_{S,T} = Σ r_{(S,T,λ),(Y,X,ε),(V,U,μ)} D^ε_{X,Y}",
        "D^μ_{U,V}C^λ_{S,T} = Σ R_{(Y,X,ε),(U,V,μ),(T,S,λ)} C^ε_{X,Y}",
        "a·D^μ_{U,V} ≡ Σ r_{i(α⁻¹(a))}(U,U') D^μ_{U',V} mod A_D(>μ)",
        "D^λ_{P,Q}C^λ_{S,T} = 0 if Q ≠ S",
        "D^μ_{U,V}C^λ_{S,T} = 0 if μ ≰ λ",
        "D^λ_{T,S}C^λ_{S,Q} = D^λ_{T,P}C^λ_{P,Q}",
        "C^λ_{S,T}d^μ_{U,V} = Σ r_{(Y,X,ε),(S,T,λ),(V,U,μ)} d^ε_{X,Y}",
        "C^λ_{S,T}d^μ_{U,V} = Σ R_{(U,V,μ),(Y,X,ε),(T,S,λ)} C^ε_{X,Y}",
        "d^μ_{U,V}·a ≡ Σ r_{α(a)}(V,V') d^μ_{U,V'} mod A_d(>μ)",
        "C^λ_{S,T}d^λ_{P,Q} = 0 if T ≠ P",
        "C^λ_{S,T}d^μ_{U,V} = 0 if μ ≰ λ",
        "C^λ_{S,T}d^λ_{T,P} = C^λ_{S,Q}d^λ_{Q,P}",
    ]
    .iter()
    .enumerate()
    .map(|(k, s)| IdentityCheck::new(format!("({})", k + 1), s))
    .collect();

    for &(l, s, t) in &all {
        for &(m, u, v) in &all {
            let dc = alg.mul(du.big_d(m, u, v), &du.c(l, s, t));
            let cd_ = alg.mul(&du.c(l, s, t), du.small_d(m, u, v));
            let dc_left = du.left_coords(&dc);
            let cd_right = du.right_coords(&cd_);
            let tag = || format!("λ-triple {}, μ-triple {}", name(&(l, s, t)), name(&(m, u, v)));
            for &(e, x, y) in &all {
                let witness = |item: &'static str| move || format!("{item}: {}; ε-triple {}", tag(), name(&(e, x, y)));
                let lhs = &dc_left[du.dual_pos(e, x, y)];
                items[0].record(*lhs == du.r((l, s, t), (e, y, x), (m, v, u)), witness("1"));
                let lhs = &dc[cd.index(e, x, y)];
                items[1].record(*lhs == du.big_r((e, y, x), (m, u, v), (l, t, s)), witness("2"));
                let lhs = &cd_right[du.dual_pos(e, x, y)];
                items[6].record(*lhs == du.r((e, y, x), (l, s, t), (m, v, u)), witness("7"));
                let lhs = &cd_[cd.index(e, x, y)];
                items[7].record(*lhs == du.big_r((m, u, v), (e, y, x), (l, t, s)), witness("8"));
            }
            if m == l && v != s {
                items[3].record(dc.iter().all(F::is_zero), tag);
            }
            if !cd.leq(m, l) {
                items[4].record(dc.iter().all(F::is_zero), tag);
                items[10].record(cd_.iter().all(F::is_zero), tag);
            }
            if m == l && u != t {
                items[9].record(cd_.iter().all(F::is_zero), tag);
            }
        }
    }

    for cell in 0..cd.cell_count() {
        let size = cd.size(cell);
        let members = cd.members(cell);
        for a in 0..size {
            for b in 0..size {
                let d_ref = alg.mul(du.big_d(cell, a, 0), &du.c(cell, 0, b));
                let c_ref = alg.mul(&du.c(cell, a, 0), du.small_d(cell, 0, b));
                for mid in 1..size {
                    let d_mid = alg.mul(du.big_d(cell, a, mid), &du.c(cell, mid, b));
                    let c_mid = alg.mul(&du.c(cell, a, mid), du.small_d(cell, mid, b));
                    let w = || format!("cell {}, outer ({}, {}), middle {}", cd.label(cell), members[a], members[b], members[mid]);
                    items[5].record(d_mid == d_ref, w);
                    items[11].record(c_mid == c_ref, w);
                }
            }
        }
    }

    for k in 0..n {
        let a = alg.basis_vector(k);
        let twisted = alg.apply_involution(&alpha_inv.mul_vec(&a));
        let alpha_a = du.db.apply_nakayama(&a);
        for &(m, u, v) in &all {
            let rho_i = reps[m].act(&twisted);
            let rho_alpha = reps[m].act(&alpha_a);
            let left = du.left_coords(&alg.mul(&a, du.big_d(m, u, v)));
            let right = du.right_coords(&alg.mul(du.small_d(m, u, v), &a));
            let tag = |item: &'static str| move || format!("{item}: a = {}, μ-triple {}", alg.labels()[k], name(&(m, u, v)));
            // Position p = idx(ε, P, Q) holds the coefficient of D^ε_{Q,P}.
            let (mut ok3, mut ok9) = (true, true);
            for p in 0..n {
                let (e, y, x) = cd.triple(p);
                if e == m {
                    let want3 = if y == v { rho_i[(u, x)].clone() } else { F::zero() };
                    ok3 &= left[p] == want3;
                    let want9 = if x == u { rho_alpha[(v, y)].clone() } else { F::zero() };
                    ok9 &= right[p] == want9;
                } else if !cd.less(m, e) {
                    ok3 &= left[p].is_zero();
                    ok9 &= right[p].is_zero();
                }
            }
            items[2].record(ok3, tag("3"));
            items[8].record(ok9, tag("9"));
        }
    }
    items
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DualCellularity {
    /// Both dual bases are cellular for the opposite order.
    pub duals_cellular: bool,
    /// `i(D^λ_{S,T}) = D^λ_{T,S}` and `i(d^λ_{S,T}) = d^λ_{T,S}`.
    pub involution_ok: bool,
    /// `α(C^λ_{S,T}) ≡ C^λ_{S,T}` mod `A(<λ)`; `None` unless `duals_cellular`.
    pub alpha_fixes_cells: Option<bool>,
    pub left_view: ValidationReport,
    pub right_view: ValidationReport,
}

impl DualCellularity {
    /// Whether `k_λ` and the statements that depend on it are in scope.
    pub fn hypotheses_hold(&self) -> bool {
        self.duals_cellular && self.involution_ok
    }
}

/// The algebra rewritten in the left (`left = true`) or right dual basis.
pub fn dual_view<F: Field>(du: &Duality<'_, F>, left: bool) -> Algebra<F> {
    let alg = du.alg;
    let n = alg.dim();
    let (basis, prefix) = if left { (&du.left, "D") } else { (&du.right, "d") };
    let coords = |x: &[F]| if left { du.left_coords(x) } else { du.right_coords(x) };
    let labels = alg.labels().iter().map(|l| format!("{prefix}({l})")).collect();
    let mut constants = Vec::new();
    for p in 0..n {
        for q in 0..n {
            let expansion = if left { du.left_products[p * n + q].clone() } else { coords(&alg.mul(&basis[p], &basis[q])) };
            constants.extend(sparse(&expansion).into_iter().map(|(s, c)| (p, q, s, c)));
        }
    }
    let involution = Matrix::from_columns(n, &basis.iter().map(|b| coords(&alg.apply_involution(b))).collect::<Vec<_>>());
    let trace = basis.iter().map(|b| alg.tau(b)).collect();
    Algebra::new(labels, constants, coords(alg.unit()), involution, trace).expect("dual view is well formed")
}

/// Checks both dual bases against the opposite order with the same involution.
pub fn check_dual_cellularity<F: Field>(du: &Duality<'_, F>) -> DualCellularity {
    let view_datum = du.cd.transposed().opposite();
    let left_view = validate_cellular(&dual_view(du, true), &view_datum);
    let right_view = validate_cellular(&dual_view(du, false), &view_datum);
    let duals_cellular = left_view.passed() && right_view.passed();
    let involution_ok = !left_view.failed(Axiom::CellInvolution) && !right_view.failed(Axiom::CellInvolution);
    let alpha_fixes_cells = duals_cellular.then(|| {
        (0..du.alg.dim()).all(|k| {
            let c = du.alg.basis_vector(k);
            let diff = sub_vec(&du.db.apply_nakayama(&c), &c);
            let (cell, _, _) = du.cd.triple(k);
            sparse(&diff).iter().all(|(j, _)| du.cd.less(du.cd.triple(*j).0, cell))
        })
    });
    DualCellularity { duals_cellular, involution_ok, alpha_fixes_cells, left_view, right_view }
}

#[derive(Debug, Clone, PartialEq)]
pub struct KLambda<F> {
    /// `Σ_X Φ(X,T)Ψ(X,T)` for each `T` in `M(λ)` order.
    pub per_t: Vec<F>,
    pub value: Option<F>,
    pub undefined_reason: Option<String>,
}

/// `k_λ`, defined only when [`DualCellularity::hypotheses_hold`].
pub fn k_lambda<F: Field>(
    cd: &CellDatum,
    cell: usize,
    gram: &Matrix<F>,
    gram_prime: &Matrix<F>,
    cellularity: &DualCellularity,
) -> Result<KLambda<F>, DualError> {
    let size = cd.size(cell);
    let per_t: Vec<F> = (0..size)
        .map(|t| {
            (0..size).fold(F::zero(), |acc, x| acc + gram[(x, t)].clone() * gram_prime[(x, t)].clone())
        })
        .collect();
    if !cellularity.hypotheses_hold() {
        let reason = if cellularity.duals_cellular {
            "the involution does not act as transposition on the dual bases"
        } else {
            "the dual bases are not cellular for the opposite order"
        };
        return Ok(KLambda { per_t, value: None, undefined_reason: Some(reason.into()) });
    }
    let label = cd.label(cell).to_string();
    let k = per_t[0].clone();
    if let Some(t) = per_t.iter().position(|v| *v != k) {
        return Err(DualError::TIndependenceViolation {
            cell: label,
            detail: format!("sum is {k} at T = {} but {} at T = {}", cd.members(cell)[0], per_t[t], cd.members(cell)[t]),
        });
    }
    let product = gram * gram_prime;
    if product != Matrix::identity(size).scale(&k) {
        return Err(DualError::GramProductViolation { cell: label, detail: format!("G·G' = {product:?}, k = {k}") });
    }
    Ok(KLambda { per_t, value: Some(k), undefined_reason: None })
}

/// `D^λ_{S,T}C^λ_{T,S}` squared against `(Σ_{S'} Φ(S',T)Ψ(S',T))·D^λ_{S,T}C^λ_{T,S}`.
pub fn square_identity_check<F: Field>(du: &Duality<'_, F>, cell: usize, gram: &Matrix<F>, gram_prime: &Matrix<F>) -> IdentityCheck {
    let (alg, cd) = (du.alg, du.cd);
    let size = cd.size(cell);
    let mut check = IdentityCheck::new(
        format!("square identity [{}]", cd.label(cell)),
        "(D^λ_{S,T}C^λ_{T,S})² = (Σ Φ(S',T)Ψ(S',T))·D^λ_{S,T}C^λ_{T,S}",
    );
    for s in 0..size {
        for t in 0..size {
            let y = alg.mul(du.big_d(cell, s, t), &du.c(cell, t, s));
            let k = (0..size).fold(F::zero(), |acc, x| acc + gram[(x, t)].clone() * gram_prime[(x, t)].clone());
            let rhs: Vec<F> = y.iter().map(|c| c.clone() * k.clone()).collect();
            let members = cd.members(cell);
            check.record(alg.mul(&y, &y) == rhs, || format!("S = {}, T = {}", members[s], members[t]));
        }
    }
    check
}

/// `Σ_X Φ(X,S)Ψ(X,T) = 0` for `S ≠ T`.
pub fn orthogonality_check<F: Field>(cd: &CellDatum, cell: usize, gram: &Matrix<F>, gram_prime: &Matrix<F>) -> IdentityCheck {
    let size = cd.size(cell);
    let mut check = IdentityCheck::new(format!("orthogonality [{}]", cd.label(cell)), "Σ Φ(X,S)Ψ(X,T) = 0 for S ≠ T");
    for s in 0..size {
        for t in (0..size).filter(|&t| t != s) {
            let sum = (0..size).fold(F::zero(), |acc, x| acc + gram[(x, s)].clone() * gram_prime[(x, t)].clone());
            let members = cd.members(cell);
            check.record(sum.is_zero(), || format!("S = {}, T = {}", members[s], members[t]));
        }
    }
    check
}

/// `α⁻¹` carries the D-product expansion to the d-product expansion.
pub fn alpha_transport_check<F: Field>(du: &Duality<'_, F>) -> IdentityCheck {
    let alg = du.alg;
    let n = alg.dim();
    let mut check = IdentityCheck::new("α-transport", "D_p D_q and d_p d_q share structure constants");
    for p in 0..n {
        for q in 0..n {
            let right = du.right_coords(&alg.mul(&du.right[p], &du.right[q]));
            let labels = alg.labels();
            check.record(right == du.left_products[p * n + q], || format!("({}, {})", labels[p], labels[q]));
        }
    }
    check
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::dual_bases;
    use crate::builtin;
    use crate::cellular::{phi_gram, CellularAlgebra};
    use crate::scalar::{FieldKind, Rational};

    const Q: FieldKind = FieldKind::Rational;

    fn q(n: i64) -> Rational {
        Rational::from_integer(n.into())
    }

    fn fixtures() -> Vec<CellularAlgebra<Rational>> {
        vec![
            builtin::koenig_xi(&Q, q(2)).unwrap(),
            builtin::dual_numbers(&Q),
            builtin::matrix_algebra(&Q, 2).unwrap(),
        ]
    }

    #[test]
    fn psi_gram_examples() {
        let kx = builtin::koenig_xi::<Rational>(&Q, q(2)).unwrap();
        let db = dual_bases(&kx.algebra).unwrap();
        let du = Duality::new(&kx.algebra, &kx.datum, &db);
        assert!(psi_gram(&du, 2).unwrap().is_zero());
        assert_eq!(psi_gram(&du, 0).unwrap(), Matrix::identity(1));

        let m2 = builtin::matrix_algebra::<Rational>(&Q, 2).unwrap();
        let db = dual_bases(&m2.algebra).unwrap();
        assert!(psi_gram(&Duality::new(&m2.algebra, &m2.datum, &db), 0).unwrap().is_identity());

        let dn = builtin::dual_numbers::<Rational>(&Q);
        let db = dual_bases(&dn.algebra).unwrap();
        let du = Duality::new(&dn.algebra, &dn.datum, &db);
        assert!(psi_gram(&du, 1).unwrap().is_zero());
        assert_eq!(psi_gram(&du, 0).unwrap(), Matrix::identity(1));
    }

    #[test]
    fn koenig_xi_left_duals_in_cell_positions() {
        let kx = builtin::koenig_xi::<Rational>(&Q, q(2)).unwrap();
        let db = dual_bases(&kx.algebra).unwrap();
        let du = Duality::new(&kx.algebra, &kx.datum, &db);
        // D^2_{1,2} pairs with C^2_{2,1} = c, so it is b.
        assert_eq!(du.big_d(1, 0, 1), &kx.algebra.basis_vector(2)[..]);
        let mut c_over = vec![q(0); 6];
        c_over[3] = Rational::new(1.into(), 2.into());
        assert_eq!(du.big_d(1, 1, 0), &c_over[..]);
    }

    #[test]
    fn suite_passes_on_fixtures() {
        for fx in fixtures() {
            let db = dual_bases(&fx.algebra).unwrap();
            let du = Duality::new(&fx.algebra, &fx.datum, &db);
            for item in dual_identity_suite(&du) {
                assert!(item.passed(), "{} {:?}", item.name, item.first_violation);
            }
            assert!(alpha_transport_check(&du).passed());
        }
    }

    #[test]
    fn suite_item_counts() {
        let kx = builtin::koenig_xi::<Rational>(&Q, q(2)).unwrap();
        let db = dual_bases(&kx.algebra).unwrap();
        let du = Duality::new(&kx.algebra, &kx.datum, &db);
        let suite = dual_identity_suite(&du);
        assert_eq!(suite.len(), 12);
        assert_eq!(suite[0].checked, 216);
        // (4) within cell 2: pairs with Q ≠ S among 4 × 4 elements.
        assert_eq!(suite[3].checked, 8);
        assert_eq!(suite[2].checked, 36);
    }

    #[test]
    fn matrix_middle_index_independence() {
        let m2 = builtin::matrix_algebra::<Rational>(&Q, 2).unwrap();
        let db = dual_bases(&m2.algebra).unwrap();
        let du = Duality::new(&m2.algebra, &m2.datum, &db);
        // D_{T,S}C_{S,Q} = E_{T,Q}.
        let prod = m2.algebra.mul(du.big_d(0, 1, 0), &m2.algebra.basis_vector(m2.datum.index(0, 0, 1)));
        assert_eq!(prod, m2.algebra.basis_vector(m2.datum.index(0, 1, 1)));
    }

    #[test]
    fn duals_cellular_on_symmetric_fixtures() {
        for fx in fixtures().into_iter().skip(1) {
            let db = dual_bases(&fx.algebra).unwrap();
            let dc = check_dual_cellularity(&Duality::new(&fx.algebra, &fx.datum, &db));
            assert!(dc.duals_cellular && dc.involution_ok && dc.alpha_fixes_cells == Some(true), "{dc:?}");
        }
    }

    #[test]
    fn koenig_xi_involution_fails_on_duals() {
        let kx = builtin::koenig_xi::<Rational>(&Q, q(2)).unwrap();
        let db = dual_bases(&kx.algebra).unwrap();
        let dc = check_dual_cellularity(&Duality::new(&kx.algebra, &kx.datum, &db));
        assert!(!dc.involution_ok);
        assert!(!dc.duals_cellular);
        assert_eq!(dc.alpha_fixes_cells, None);
    }

    #[test]
    fn k_values() {
        let m2 = builtin::matrix_algebra::<Rational>(&Q, 2).unwrap();
        let db = dual_bases(&m2.algebra).unwrap();
        let du = Duality::new(&m2.algebra, &m2.datum, &db);
        let dc = check_dual_cellularity(&du);
        let g = phi_gram(&m2.algebra, &m2.datum, 0).unwrap();
        let gp = psi_gram(&du, 0).unwrap();
        assert_eq!(k_lambda(&m2.datum, 0, &g, &gp, &dc).unwrap().value, Some(q(1)));

        let dn = builtin::dual_numbers::<Rational>(&Q);
        let db = dual_bases(&dn.algebra).unwrap();
        let du = Duality::new(&dn.algebra, &dn.datum, &db);
        let dc = check_dual_cellularity(&du);
        for cell in 0..2 {
            let g = phi_gram(&dn.algebra, &dn.datum, cell).unwrap();
            let gp = psi_gram(&du, cell).unwrap();
            assert_eq!(k_lambda(&dn.datum, cell, &g, &gp, &dc).unwrap().value, Some(q(0)));
            assert!(square_identity_check(&du, cell, &g, &gp).passed());
            assert!(orthogonality_check(&dn.datum, cell, &g, &gp).passed());
        }
    }

    #[test]
    fn k_guards_detect_broken_grams() {
        let m2 = builtin::matrix_algebra::<Rational>(&Q, 2).unwrap();
        let db = dual_bases(&m2.algebra).unwrap();
        let dc = check_dual_cellularity(&Duality::new(&m2.algebra, &m2.datum, &db));
        let g = Matrix::identity(2);
        let mut gp = Matrix::identity(2);
        gp[(1, 1)] = q(3);
        assert!(matches!(k_lambda(&m2.datum, 0, &g, &gp, &dc), Err(DualError::TIndependenceViolation { .. })));
        let mut gp = Matrix::identity(2);
        gp[(0, 1)] = q(1);
        assert!(matches!(k_lambda(&m2.datum, 0, &g, &gp, &dc), Err(DualError::GramProductViolation { .. })));
    }
}
