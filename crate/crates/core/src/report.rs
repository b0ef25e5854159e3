//! The full pipeline and its report.

use std::fmt::Write as _;

use serde::Serialize;

use crate::algebra::{dual_bases, nakayama_check, validate_algebra, Algebra};
use crate::cellular::{
    cell_module, phi_gram, simple_data, simplicity_status, validate_cellular, CellularAlgebra, Flavor, Simplicity,
};
use crate::dual::{
    alpha_transport_check, check_dual_cellularity, dual_identity_suite, k_lambda, orthogonality_check, psi_gram,
    square_identity_check, DualCellularity, Duality, IdentityCheck,
};
use crate::linalg::Matrix;
use crate::projectivity::{c_matrix, decide, CellEvidence, Criterion, ProjectivityVerdict};
use crate::scalar::{Field, FieldKind};
use crate::validation::ValidationReport;

pub const EXIT_OK: i32 = 0;
pub const EXIT_VALIDATION: i32 = 1;
pub const EXIT_PARSE: i32 = 2;
pub const EXIT_INTERNAL: i32 = 3;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct ReportOptions {
    /// Skip the identity suites.
    pub skip_identities: bool,
}

/// Last pipeline stage that completed.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Stage {
    Parsed,
    AlgebraValidated,
    DualBases,
    CellularValidated,
    Cells,
    Complete,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ErrorInfo {
    pub class: String,
    pub message: String,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct ValidationSection {
    pub algebra: ValidationReport,
    pub cellular: Option<ValidationReport>,
    pub nakayama_ok: Option<bool>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Expansion {
    pub of: String,
    pub value: String,
    pub coords: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DualSection {
    /// `d_j` with `τ(a_i d_j) = δ_ij`.
    pub right: Vec<Expansion>,
    /// `D_j` with `τ(D_j a_i) = δ_ij`.
    pub left: Vec<Expansion>,
    /// `α(a_j)`; `τ(xy) = τ(α(y)x)`.
    pub nakayama: Vec<Expansion>,
    pub symmetric: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct KSection {
    pub value: Option<String>,
    pub undefined_reason: Option<String>,
    pub per_t: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CellSection {
    pub label: String,
    pub members: Vec<String>,
    pub gram: Vec<Vec<String>>,
    pub gram_prime: Vec<Vec<String>>,
    pub rank_g: usize,
    pub dim_l: usize,
    pub in_lambda0: bool,
    /// `Φ_λ = 0`, equivalently `L(λ) = 0`.
    pub phi_vanishes: bool,
    pub simplicity_c: Simplicity,
    pub simplicity_d: Simplicity,
    pub k: KSection,
    pub c_matrix: Vec<Vec<String>>,
    /// `I_λ = k_λ·E`, checked when `k_λ` is defined.
    pub c_matrix_is_k_identity: Option<bool>,
    pub verdicts: Vec<ProjectivityVerdict>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ScopedCheck {
    #[serde(flatten)]
    pub check: IdentityCheck,
    /// Whether the hypotheses of the identity hold, so a violation is an error.
    pub in_scope: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct IdentitySection {
    pub dual_identities: Vec<IdentityCheck>,
    pub alpha_transport: IdentityCheck,
    pub dual_cellularity: DualCellularity,
    pub cell_identities: Vec<ScopedCheck>,
    /// `Σ_λ (dim L(λ))²` against `dim A`.
    pub simple_dimension_sum: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Report {
    pub field: String,
    pub dim: usize,
    pub basis: Vec<String>,
    pub stage: Stage,
    pub validation: ValidationSection,
    pub duals: Option<DualSection>,
    pub dual_cellularity: Option<DualCellularity>,
    pub cells: Vec<CellSection>,
    pub identities: Option<IdentitySection>,
    pub headline: Vec<String>,
    pub notes: Vec<String>,
    pub error: Option<ErrorInfo>,
    pub exit_code: i32,
}

impl Report {
    pub fn verdicts(&self) -> impl Iterator<Item = &ProjectivityVerdict> {
        self.cells.iter().flat_map(|c| c.verdicts.iter())
    }

    pub fn verdict(&self, cell: &str, flavor: Flavor) -> Option<&ProjectivityVerdict> {
        self.verdicts().find(|v| v.cell == cell && v.flavor == flavor)
    }

    pub fn cell(&self, label: &str) -> Option<&CellSection> {
        self.cells.iter().find(|c| c.label == label)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports always serialize")
    }
}

struct Halt {
    class: &'static str,
    message: String,
    exit: i32,
}

fn internal(class: &'static str, e: impl std::fmt::Display) -> Halt {
    Halt { class, message: e.to_string(), exit: EXIT_INTERNAL }
}

fn render_matrix<F: Field>(m: &Matrix<F>, kind: &FieldKind) -> Vec<Vec<String>> {
    (0..m.rows()).map(|i| m.row(i).iter().map(|x| x.render(kind)).collect()).collect()
}

fn expansions<F: Field>(alg: &Algebra<F>, kind: &FieldKind, m: &Matrix<F>, name: &str) -> Vec<Expansion> {
    (0..alg.dim())
        .map(|j| {
            let v = m.column(j);
            Expansion {
                of: format!("{name}({})", alg.labels()[j]),
                value: alg.describe(&v),
                coords: v.iter().map(|x| x.render(kind)).collect(),
            }
        })
        .collect()
}

/// Runs validation, dual bases, cell data, verdicts and identity suites.
/// Stops at the first hard failure and returns the partial report.
pub fn run_report<F: Field>(ca: &CellularAlgebra<F>, options: &ReportOptions) -> Report {
    let mut report = Report {
        field: ca.kind.to_string(),
        dim: ca.algebra.dim(),
        basis: ca.algebra.labels().to_vec(),
        stage: Stage::Parsed,
        validation: ValidationSection::default(),
        duals: None,
        dual_cellularity: None,
        cells: Vec::new(),
        identities: None,
        headline: Vec::new(),
        notes: Vec::new(),
        error: None,
        exit_code: EXIT_OK,
    };
    match pipeline(ca, options, &mut report) {
        Ok(()) => report.stage = Stage::Complete,
        Err(h) => {
            report.headline.push(format!("stopped: {}", h.message));
            report.error = Some(ErrorInfo { class: h.class.into(), message: h.message });
            report.exit_code = h.exit;
        }
    }
    report
}

fn pipeline<F: Field>(ca: &CellularAlgebra<F>, options: &ReportOptions, report: &mut Report) -> Result<(), Halt> {
    let (kind, alg, cd) = (&ca.kind, &ca.algebra, &ca.datum);

    report.validation.algebra = validate_algebra(alg);
    if let Some(f) = report.validation.algebra.failures.first() {
        return Err(Halt {
            class: "ValidationFailure",
            message: format!("{} fails at {}: {}", f.axiom, f.witness, f.detail),
            exit: EXIT_VALIDATION,
        });
    }
    report.stage = Stage::AlgebraValidated;

    let db = dual_bases(alg).map_err(|e| internal("NonDegeneracyFailure", e))?;
    let nakayama_ok = nakayama_check(alg, &db);
    report.validation.nakayama_ok = Some(nakayama_ok);
    report.duals = Some(DualSection {
        right: expansions(alg, kind, &db.right_dual, "d"),
        left: expansions(alg, kind, &db.left_dual, "D"),
        nakayama: expansions(alg, kind, &db.nakayama, "α"),
        symmetric: db.nakayama.is_identity(),
    });
    if !nakayama_ok {
        return Err(internal("NakayamaCheckFailure", "the Nakayama map is not a trace-twisting automorphism"));
    }
    report.stage = Stage::DualBases;

    let cellular = validate_cellular(alg, cd);
    let first = cellular.failures.first().cloned();
    report.validation.cellular = Some(cellular);
    if let Some(f) = first {
        return Err(Halt {
            class: "ValidationFailure",
            message: format!("{} fails at {}: {}", f.axiom, f.witness, f.detail),
            exit: EXIT_VALIDATION,
        });
    }
    report.stage = Stage::CellularValidated;

    let du = Duality::new(alg, cd, &db);
    let dual_cellularity = check_dual_cellularity(&du);
    report.dual_cellularity = Some(dual_cellularity.clone());
    let mut grams = Vec::with_capacity(cd.cell_count());
    for cell in 0..cd.cell_count() {
        let label = cd.label(cell);
        let gram = phi_gram(alg, cd, cell).map_err(|e| internal("InconsistentCellStructure", e))?;
        let gram_prime = psi_gram(&du, cell).map_err(|e| internal("CongruenceViolation", e))?;
        let sd = simple_data(&gram);
        let module_c = cell_module(alg, cd, cell, Flavor::Cell).map_err(|e| internal("NotARepresentation", e))?;
        let module_d = cell_module(alg, cd, cell, Flavor::Dual).map_err(|e| internal("NotARepresentation", e))?;
        let simplicity_c = simplicity_status(&module_c.rep, Some(&gram));
        let simplicity_d = match (simplicity_status(&module_d.rep, None), &simplicity_c) {
            (Simplicity::Undetermined, Simplicity::Simple { .. }) => {
                Simplicity::Simple { reason: "contragredient of a simple W_C".into() }
            }
            (Simplicity::Undetermined, Simplicity::NotSimple { witness_dim, .. }) => Simplicity::NotSimple {
                witness_dim: cd.size(cell) - witness_dim,
                reason: "contragredient of a non-simple W_C".into(),
            },
            (s, _) => s,
        };
        let k = k_lambda(cd, cell, &gram, &gram_prime, &dual_cellularity).map_err(|e| {
            let class = match e {
                crate::dual::DualError::TIndependenceViolation { .. } => "TIndependenceViolation",
                _ => "GramProductViolation",
            };
            internal(class, e)
        })?;
        let i_lambda = c_matrix(alg, &db, &module_c, label, &gram, &gram_prime, simplicity_c.is_simple())
            .map_err(|e| internal("SchurExtractionFailure", e))?;
        let c_matrix_is_k_identity = k.value.as_ref().map(|k| i_lambda == Matrix::identity(cd.size(cell)).scale(k));

        let mut verdicts = Vec::with_capacity(2);
        for (module, simplicity) in [(&module_c, &simplicity_c), (&module_d, &simplicity_d)] {
            let ev = CellEvidence {
                label,
                gram: &gram,
                gram_prime: &gram_prime,
                c_matrix: &i_lambda,
                k: k.value.as_ref(),
                duals_cellular: dual_cellularity.duals_cellular,
                simplicity,
            };
            verdicts.push(decide(alg, &db, module, &ev).map_err(|e| internal("AveragingFailure", e))?);
        }
        if !sd.in_lambda0 {
            report.notes.push(format!("cell {label}: Φ = 0, read as W_C({label}) = 0 in the sense L({label}) = 0"));
        }
        report.cells.push(CellSection {
            label: label.to_string(),
            members: cd.members(cell).to_vec(),
            gram: render_matrix(&gram, kind),
            gram_prime: render_matrix(&gram_prime, kind),
            rank_g: sd.rank_g,
            dim_l: sd.dim_l,
            in_lambda0: sd.in_lambda0,
            phi_vanishes: !sd.in_lambda0,
            simplicity_c,
            simplicity_d,
            k: KSection {
                value: k.value.as_ref().map(|v| v.render(kind)),
                undefined_reason: k.undefined_reason.clone(),
                per_t: k.per_t.iter().map(|v| v.render(kind)).collect(),
            },
            c_matrix: render_matrix(&i_lambda, kind),
            c_matrix_is_k_identity,
            verdicts,
        });
        grams.push((gram, gram_prime));
    }
    report.stage = Stage::Cells;

    let mut failed_scope = Vec::new();
    if !options.skip_identities {
        let dual_identities = dual_identity_suite(&du);
        let alpha_transport = alpha_transport_check(&du);
        let mut cell_identities = Vec::new();
        for (cell, (g, gp)) in grams.iter().enumerate() {
            cell_identities.push(ScopedCheck {
                check: square_identity_check(&du, cell, g, gp),
                in_scope: dual_cellularity.duals_cellular,
            });
            cell_identities.push(ScopedCheck {
                check: orthogonality_check(cd, cell, g, gp),
                in_scope: dual_cellularity.hypotheses_hold(),
            });
        }
        for c in dual_identities.iter().chain([&alpha_transport]) {
            if !c.passed() {
                failed_scope.push(c.name.clone());
            }
        }
        for c in &cell_identities {
            if c.in_scope && !c.check.passed() {
                failed_scope.push(c.check.name.clone());
            }
        }
        let simple_dimension_sum = report.cells.iter().map(|c| c.dim_l * c.dim_l).sum();
        if simple_dimension_sum > alg.dim() {
            failed_scope.push("Σ (dim L)² ≤ dim A".into());
        }
        report.identities = Some(IdentitySection {
            dual_identities,
            alpha_transport,
            dual_cellularity: dual_cellularity.clone(),
            cell_identities,
            simple_dimension_sum,
        });
    }
    for c in &report.cells {
        if c.c_matrix_is_k_identity == Some(false) {
            failed_scope.push(format!("I = k·E in cell {}", c.label));
        }
    }

    report.headline = headline(report);
    let unexplained: Vec<String> = report
        .verdicts()
        .filter(|v| v.unexplained_disagreement)
        .map(|v| format!("W_{}({})", v.flavor, v.cell))
        .collect();
    if !unexplained.is_empty() {
        return Err(internal("CriterionDisagreement", format!("criteria disagree with the oracles on {}", unexplained.join(", "))));
    }
    if !failed_scope.is_empty() {
        return Err(internal("IdentityViolation", format!("identities fail: {}", failed_scope.join(", "))));
    }
    Ok(())
}

fn status(s: &Simplicity) -> String {
    match s {
        Simplicity::Simple { .. } => "Simple".into(),
        Simplicity::NotSimple { witness_dim, .. } => format!("NotSimple (submodule of dim {witness_dim})"),
        Simplicity::Undetermined => "Undetermined".into(),
    }
}

fn headline(report: &Report) -> Vec<String> {
    let mut lines = Vec::new();
    for cell in &report.cells {
        for v in &cell.verdicts {
            let mut line = format!(
                "W_{}({}): {}, {}",
                v.flavor,
                v.cell,
                status(&v.simplicity),
                if v.projective() { "Projective" } else { "NotProjective" }
            );
            if let Some(k) = &cell.k.value {
                let _ = write!(line, ", k = {k}");
            }
            if v.psi_boundary {
                line.push_str(" [boundary: Ψ test disagrees with I_λ, G singular]");
            }
            if v.lambda0_boundary {
                line.push_str(" [boundary: Λ_0 test disagrees with the oracles, G' singular]");
            }
            lines.push(line);
        }
    }
    let projective: Vec<String> = report
        .verdicts()
        .filter(|v| v.flavor == Flavor::Cell && v.projective())
        .map(|v| format!("W_C({})", v.cell))
        .collect();
    lines.push(if projective.is_empty() {
        "none of the cell modules W_C is projective".into()
    } else {
        format!("projective cell modules: {}", projective.join(", "))
    });
    lines
}

fn matrix_text(m: &[Vec<String>]) -> String {
    let rows: Vec<String> = m.iter().map(|r| r.join(", ")).collect();
    format!("[{}]", rows.join("; "))
}

fn criterion_text(c: &Criterion) -> String {
    match c {
        Criterion::Projective(r) => format!("Projective ({r})"),
        Criterion::NotProjective(r) => format!("NotProjective ({r})"),
        Criterion::NotApplicable(r) => format!("NotApplicable ({r})"),
    }
}

fn validation_text(out: &mut String, name: &str, v: &ValidationReport) {
    let checked: Vec<String> = v.checked.iter().map(|a| a.to_string()).collect();
    let _ = writeln!(out, "  {name}: {} [{}]", if v.passed() { "pass" } else { "FAIL" }, checked.join(", "));
    for f in &v.failures {
        let _ = writeln!(out, "    {}: {} ({})", f.axiom, f.witness, f.detail);
    }
    for n in &v.notes {
        let _ = writeln!(out, "    note: {n}");
    }
}

/// The identity suites as text.
pub fn render_identities(report: &Report) -> String {
    let mut out = String::new();
    let Some(ids) = &report.identities else {
        out.push_str("identities: not run\n");
        return out;
    };
    let line = |out: &mut String, c: &IdentityCheck, scope: &str| {
        let verdict = if c.passed() { "pass" } else { "FAIL" };
        let _ = write!(out, "  {:<28} {verdict} {}/{} {}{scope}", c.name, c.checked - c.violations, c.checked, c.statement);
        if let Some(w) = &c.first_violation {
            let _ = write!(out, " | first violation: {w}");
        }
        out.push('\n');
    };
    out.push_str("dual-basis identities:\n");
    for c in &ids.dual_identities {
        line(&mut out, c, "");
    }
    line(&mut out, &ids.alpha_transport, "");
    let dc = &ids.dual_cellularity;
    let _ = writeln!(out, "dual cellularity (opposite order, same involution):");
    let _ = writeln!(out, "  duals cellular: {}", dc.duals_cellular);
    let _ = writeln!(out, "  involution transposes dual indices: {}", dc.involution_ok);
    let alpha = dc.alpha_fixes_cells.map_or("not checked".to_string(), |b| b.to_string());
    let _ = writeln!(out, "  α(C) ≡ C mod lower cells: {alpha}");
    validation_text(&mut out, "left dual view", &dc.left_view);
    validation_text(&mut out, "right dual view", &dc.right_view);
    out.push_str("per-cell identities:\n");
    for c in &ids.cell_identities {
        line(&mut out, &c.check, if c.in_scope { "" } else { " (outside hypotheses)" });
    }
    for c in &report.cells {
        if let Some(b) = c.c_matrix_is_k_identity {
            let _ = writeln!(out, "  I = k·E [{}]: {}", c.label, if b { "pass" } else { "FAIL" });
        }
    }
    let _ = writeln!(out, "Σ (dim L)² = {} ≤ dim A = {}", ids.simple_dimension_sum, report.dim);
    out
}

/// Human-readable rendering carrying the same values as [`Report::to_json`].
pub fn render_human(report: &Report) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "algebra over {} of dimension {}: basis {}", report.field, report.dim, report.basis.join(", "));
    out.push_str("validation:\n");
    validation_text(&mut out, "algebra", &report.validation.algebra);
    if let Some(ok) = report.validation.nakayama_ok {
        let _ = writeln!(out, "  Nakayama automorphism: {}", if ok { "pass" } else { "FAIL" });
    }
    if let Some(c) = &report.validation.cellular {
        validation_text(&mut out, "cellular", c);
    }
    if let Some(d) = &report.duals {
        let _ = writeln!(out, "dual bases ({}):", if d.symmetric { "symmetric, α = id" } else { "α ≠ id" });
        for group in [&d.right, &d.left, &d.nakayama] {
            for e in group {
                let _ = writeln!(out, "  {} = {}  [{}]", e.of, e.value, e.coords.join(", "));
            }
        }
    }
    if let Some(dc) = &report.dual_cellularity {
        let _ = writeln!(
            out,
            "dual bases cellular for the opposite order: {}; involution transposes dual indices: {}",
            dc.duals_cellular, dc.involution_ok
        );
    }
    for c in &report.cells {
        let _ = writeln!(out, "cell {} (M = {{{}}}):", c.label, c.members.join(", "));
        let _ = writeln!(out, "  G = {}  G' = {}", matrix_text(&c.gram), matrix_text(&c.gram_prime));
        let _ = writeln!(
            out,
            "  rank G = {}, dim L = {}, in Λ_0: {}{}",
            c.rank_g,
            c.dim_l,
            c.in_lambda0,
            if c.phi_vanishes { " (Φ = 0)" } else { "" }
        );
        let _ = writeln!(out, "  W_C: {}; W_d: {}", status(&c.simplicity_c), status(&c.simplicity_d));
        match (&c.k.value, &c.k.undefined_reason) {
            (Some(k), _) => {
                let _ = writeln!(out, "  k = {k}");
            }
            (None, reason) => {
                let _ = writeln!(
                    out,
                    "  k undefined ({}); per-T sums [{}]",
                    reason.as_deref().unwrap_or(""),
                    c.k.per_t.join(", ")
                );
            }
        }
        let _ = writeln!(out, "  I = {}", matrix_text(&c.c_matrix));
        for v in &c.verdicts {
            let _ = writeln!(out, "  W_{}({}):", v.flavor, v.cell);
            let _ = writeln!(out, "    I criterion:   {}", criterion_text(&v.criterion_c));
            let _ = writeln!(out, "    Ψ criterion:   {}", criterion_text(&v.criterion_psi));
            let _ = writeln!(out, "    k criterion:   {}", criterion_text(&v.criterion_k));
            let _ = writeln!(out, "    Λ_0 criterion: {}", criterion_text(&v.criterion_lambda0));
            let _ = writeln!(out, "    oracles: averaging {}, splitting {}", v.oracle_gaschutz, v.oracle_splitting);
            let _ = writeln!(
                out,
                "    agreement: {}; Ψ boundary: {}; Λ_0 boundary: {}; unexplained: {}",
                v.agreement, v.psi_boundary, v.lambda0_boundary, v.unexplained_disagreement
            );
        }
    }
    if report.identities.is_some() {
        out.push_str(&render_identities(report));
    }
    for n in &report.notes {
        let _ = writeln!(out, "note: {n}");
    }
    out.push_str("summary:\n");
    for h in &report.headline {
        let _ = writeln!(out, "  {h}");
    }
    if let Some(e) = &report.error {
        let _ = writeln!(out, "error [{}]: {}", e.class, e.message);
    }
    let _ = writeln!(out, "exit code {}", report.exit_code);
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::builtin;
    use crate::scalar::Rational;

    const Q: FieldKind = FieldKind::Rational;

    #[test]
    fn koenig_xi_headline() {
        let kx = builtin::koenig_xi::<Rational>(&Q, Rational::from_integer(2.into())).unwrap();
        let report = run_report(&kx, &ReportOptions::default());
        assert_eq!(report.exit_code, EXIT_OK, "{}", render_human(&report));
        assert_eq!(report.headline.last().unwrap(), "none of the cell modules W_C is projective");
        assert!(report.verdicts().all(|v| !v.projective()));
    }

    #[test]
    fn matrix_headline() {
        let m2 = builtin::matrix_algebra::<Rational>(&Q, 2).unwrap();
        let report = run_report(&m2, &ReportOptions::default());
        assert_eq!(report.exit_code, EXIT_OK);
        assert_eq!(report.headline[0], "W_C(1): Simple, Projective, k = 1");
        assert_eq!(report.headline.last().unwrap(), "projective cell modules: W_C(1)");
    }

    #[test]
    fn dual_numbers_boundary_flag() {
        let dn = builtin::dual_numbers::<Rational>(&Q);
        let report = run_report(&dn, &ReportOptions::default());
        assert_eq!(report.exit_code, EXIT_OK, "{}", render_human(&report));
        let bottom = report.verdict("x", Flavor::Cell).unwrap();
        assert!(bottom.psi_boundary && !bottom.agreement && !bottom.unexplained_disagreement);
        let top = report.verdict("1", Flavor::Cell).unwrap();
        assert!(top.agreement && !top.psi_boundary);
    }

    #[test]
    fn report_is_deterministic() {
        let kx = builtin::koenig_xi::<Rational>(&Q, Rational::from_integer(2.into())).unwrap();
        let a = run_report(&kx, &ReportOptions::default()).to_json();
        let b = run_report(&kx, &ReportOptions::default()).to_json();
        assert_eq!(a, b);
    }
}
