#![allow(dead_code)]

use frobcell::builtin;
use frobcell::cellular::CellularAlgebra;
use frobcell::io::{parse_spec, to_spec_file, SpecFile};
use frobcell::{Field, FieldKind, Fp, Rational};

pub const Q: FieldKind = FieldKind::Rational;

pub fn f7() -> FieldKind {
    FieldKind::prime(7).unwrap()
}

pub fn q(n: i64) -> Rational {
    Rational::from_i64_in(&Q, n)
}

pub fn frac(n: i64, d: i64) -> Rational {
    Rational::new(n.into(), d.into())
}

pub fn koenig_xi_q(lambda: Rational) -> CellularAlgebra<Rational> {
    builtin::koenig_xi(&Q, lambda).unwrap()
}

pub fn koenig_xi_f7(lambda: i64) -> CellularAlgebra<Fp> {
    let kind = f7();
    builtin::koenig_xi(&kind, Fp::from_i64_in(&kind, lambda)).unwrap()
}

/// Every fixture over the rationals.
pub fn rational_fixtures() -> Vec<(String, CellularAlgebra<Rational>)> {
    vec![
        ("koenig-xi(2)".into(), koenig_xi_q(q(2))),
        ("koenig-xi(-1/3)".into(), koenig_xi_q(frac(-1, 3))),
        ("dual-numbers".into(), builtin::dual_numbers(&Q)),
        ("matrix(2)".into(), builtin::matrix_algebra(&Q, 2).unwrap()),
        ("matrix(3)".into(), builtin::matrix_algebra(&Q, 3).unwrap()),
    ]
}

/// Every fixture over `F_7`.
pub fn prime_fixtures() -> Vec<(String, CellularAlgebra<Fp>)> {
    let kind = f7();
    vec![
        ("koenig-xi(3) over F_7".into(), koenig_xi_f7(3)),
        ("dual-numbers over F_7".into(), builtin::dual_numbers(&kind)),
        ("matrix(2) over F_7".into(), builtin::matrix_algebra(&kind, 2).unwrap()),
    ]
}

pub fn spec_of<F: Field>(ca: &CellularAlgebra<F>) -> SpecFile {
    to_spec_file(ca)
}

pub fn reparse(spec: &SpecFile) -> Result<frobcell::io::LoadedSpec, frobcell::io::SpecError> {
    parse_spec(&serde_json::to_string(spec).unwrap())
}
