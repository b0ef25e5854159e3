mod common;

use proptest::prelude::*;

use common::*;
use frobcell::algebra::{dual_bases, validate_algebra};
use frobcell::builtin;
use frobcell::cellular::{validate_cellular, CellularAlgebra};
use frobcell::dual::{dual_identity_suite, Duality};
use frobcell::io::{parse_spec, to_json, LoadedSpec};
use frobcell::report::{run_report, ReportOptions};
use frobcell::{Field, FieldKind, Fp, Rational};

fn admissible_lambda() -> impl Strategy<Value = Rational> {
    (-12i64..=12, 1i64..=9)
        .prop_map(|(n, d)| frac(n, d))
        .prop_filter("λ ∉ {0, 1}", |l| *l != q(0) && *l != q(1))
}

fn prime_and_lambda() -> impl Strategy<Value = (u64, u64)> {
    prop::sample::select(vec![3u64, 5, 7, 11, 13, 101]).prop_flat_map(|p| (Just(p), 2..p))
}

fn vector<F: Field>(kind: FieldKind, n: usize) -> impl Strategy<Value = Vec<F>> {
    prop::collection::vec(-4i64..=4, n).prop_map(move |v| v.into_iter().map(|x| F::from_i64_in(&kind, x)).collect())
}

fn koenig_xi_holds<F: Field>(ca: &CellularAlgebra<F>) -> Result<(), TestCaseError> {
    prop_assert!(validate_algebra(&ca.algebra).passed());
    prop_assert!(validate_cellular(&ca.algebra, &ca.datum).passed());
    let db = dual_bases(&ca.algebra).unwrap();
    let du = Duality::new(&ca.algebra, &ca.datum, &db);
    for check in dual_identity_suite(&du) {
        prop_assert!(check.passed(), "{} {:?}", check.name, check.first_violation);
    }
    let report = run_report(ca, &ReportOptions::default());
    prop_assert_eq!(report.exit_code, 0);
    prop_assert!(report.verdicts().all(|v| !v.oracle_gaschutz && !v.oracle_splitting && !v.unexplained_disagreement));
    Ok(())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn koenig_xi_over_q(lambda in admissible_lambda()) {
        let ca = koenig_xi_q(lambda.clone());
        koenig_xi_holds(&ca)?;
        let db = dual_bases(&ca.algebra).unwrap();
        let mut b = vec![q(0); 6];
        b[2] = lambda.clone();
        prop_assert_eq!(db.apply_nakayama(&ca.algebra.basis_vector(2)), b);
        let mut c = vec![q(0); 6];
        c[3] = q(1) / lambda;
        prop_assert_eq!(db.left(2), c);
    }

    #[test]
    fn koenig_xi_over_primes((p, lambda) in prime_and_lambda()) {
        let kind = FieldKind::prime(p).unwrap();
        let ca = builtin::koenig_xi(&kind, Fp::new(lambda as i64, p)).unwrap();
        koenig_xi_holds(&ca)?;
    }

    #[test]
    fn nakayama_twists_the_trace(lambda in admissible_lambda(), x in vector::<Rational>(Q, 6), y in vector::<Rational>(Q, 6)) {
        let ca = koenig_xi_q(lambda);
        let alg = &ca.algebra;
        let db = dual_bases(alg).unwrap();
        let xy = alg.multiply(&x, &y).unwrap();
        let ayx = alg.multiply(&db.apply_nakayama(&y), &x).unwrap();
        prop_assert_eq!(alg.tau(&xy), alg.tau(&ayx));
        let ax = db.apply_nakayama(&x);
        let ay = db.apply_nakayama(&y);
        prop_assert_eq!(db.apply_nakayama(&xy), alg.multiply(&ax, &ay).unwrap());
    }

    #[test]
    fn spec_round_trip(lambda in admissible_lambda(), n in 1usize..=3) {
        let kx = koenig_xi_q(lambda);
        prop_assert_eq!(parse_spec(&to_json(&kx)).unwrap(), LoadedSpec::Rational(kx));
        let kind = f7();
        let m = builtin::matrix_algebra::<Fp>(&kind, n).unwrap();
        prop_assert_eq!(parse_spec(&to_json(&m)).unwrap(), LoadedSpec::Prime(m));
    }

    #[test]
    fn matrix_algebras_are_split((p, _) in prime_and_lambda(), n in 1usize..=3) {
        let kind = FieldKind::prime(p).unwrap();
        let report = run_report(&builtin::matrix_algebra::<Fp>(&kind, n).unwrap(), &ReportOptions::default());
        prop_assert_eq!(report.exit_code, 0);
        // The trace form makes Ψ the identity, so k = 1 for every p.
        prop_assert_eq!(report.cells[0].k.value.as_deref(), Some("1"));
        prop_assert!(report.verdicts().all(|v| v.oracle_gaschutz && v.agreement));
    }
}
