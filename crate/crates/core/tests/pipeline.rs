mod common;

use common::*;
use frobcell::builtin;
use frobcell::cellular::{Flavor, Simplicity};
use frobcell::projectivity::Criterion;
use frobcell::report::{render_human, run_report, ReportOptions, Stage};
use frobcell::{Fp, Rational};

fn report_q(ca: &frobcell::cellular::CellularAlgebra<Rational>) -> frobcell::report::Report {
    run_report(ca, &ReportOptions::default())
}

#[test]
fn koenig_xi_nakayama_values() {
    let r = report_q(&koenig_xi_q(q(2)));
    let duals = r.duals.as_ref().unwrap();
    let alpha: Vec<&str> = duals.nakayama.iter().map(|e| e.value.as_str()).collect();
    assert_eq!(alpha, ["1", "a", "(2)*b", "(1/2)*c", "d", "bc"]);
    assert!(!duals.symmetric);
    let cellularity = r.dual_cellularity.as_ref().unwrap();
    assert!(!cellularity.duals_cellular && !cellularity.involution_ok);
    assert!(r.cells.iter().all(|c| c.k.value.is_none()));
}

#[test]
fn koenig_xi_over_f7_duals() {
    let ca = koenig_xi_f7(3);
    let r = run_report(&ca, &ReportOptions::default());
    assert_eq!(r.field, "F_7");
    let d_b = &r.duals.as_ref().unwrap().left[2];
    assert_eq!(d_b.coords, ["0", "0", "0", "5", "0", "0"]);
    assert_eq!(r.cell("3").unwrap().gram, vec![vec!["1".to_string()]]);
}

#[test]
fn dual_numbers_grams() {
    let r = report_q(&builtin::dual_numbers(&Q));
    let bottom = r.cell("x").unwrap();
    let top = r.cell("1").unwrap();
    assert_eq!((bottom.gram.clone(), bottom.gram_prime.clone()), (vec![vec!["0".into()]], vec![vec!["1".into()]]));
    assert_eq!((top.gram.clone(), top.gram_prime.clone()), (vec![vec!["1".into()]], vec![vec!["0".into()]]));
    assert_eq!(bottom.k.value.as_deref(), Some("0"));
    assert_eq!(top.k.value.as_deref(), Some("0"));
    let v = r.verdict("1", Flavor::Dual).unwrap();
    assert!(matches!(v.criterion_lambda0, Criterion::Projective(_)));
    assert!(v.lambda0_boundary && !v.oracle_gaschutz && !v.unexplained_disagreement);
}

#[test]
fn matrix_three_is_semisimple() {
    let r = report_q(&builtin::matrix_algebra(&Q, 3).unwrap());
    assert_eq!(r.stage, Stage::Complete);
    let cell = &r.cells[0];
    assert_eq!(cell.rank_g, 3);
    assert_eq!(cell.k.value.as_deref(), Some("1"));
    assert_eq!(cell.c_matrix_is_k_identity, Some(true));
    assert!(matches!(cell.simplicity_c, Simplicity::Simple { .. }));
    assert!(r.verdicts().all(|v| v.projective() && v.agreement));
    assert_eq!(r.headline.last().unwrap(), "projective cell modules: W_C(1)");
    assert_eq!(r.identities.as_ref().unwrap().simple_dimension_sum, 9);
}

#[test]
fn reports_are_deterministic() {
    let ca = builtin::koenig_xi::<Fp>(&f7(), Fp::new(5, 7)).unwrap();
    let a = run_report(&ca, &ReportOptions::default());
    let b = run_report(&ca, &ReportOptions::default());
    assert_eq!(a.to_json(), b.to_json());
    assert_eq!(render_human(&a), render_human(&b));
}

#[test]
fn corrupted_spec_stops_early() {
    let mut spec = spec_of(&builtin::matrix_algebra::<Rational>(&Q, 2).unwrap());
    spec.trace = vec!["1".into(), "0".into(), "0".into(), "0".into()];
    let frobcell::io::LoadedSpec::Rational(ca) = reparse(&spec).unwrap() else { panic!() };
    let r = report_q(&ca);
    assert_eq!(r.exit_code, 1);
    assert_eq!(r.stage, Stage::Parsed);
    assert!(r.cells.is_empty() && r.duals.is_none());
    assert_eq!(r.error.unwrap().class, "ValidationFailure");
}
