//! JSON spec files.
//!
//! ```json
//! {
//!   "field": {"type": "rational"},
//!   "dim": 2,
//!   "basis": ["x", "1"],
//!   "structure_constants": [[0, 1, 0, "1"], [1, 0, 0, "1"], [1, 1, 1, "1"]],
//!   "unit": ["0", "1"],
//!   "involution": [[0, 0, "1"], [1, 1, "1"]],
//!   "trace": ["1", "0"],
//!   "cells": [{"label": "x", "members": ["1"]}, {"label": "1", "members": ["1"]}],
//!   "poset": [["x", "1"]],
//!   "index_map": [["x", "1", "1", 0], ["1", "1", "1", 1]]
//! }
//! ```
//!
//! Coefficients are strings (`"p/q"`, `"p"`); structure constants are
//! `[i, j, k, γ_ijk]`, involution entries `[row, col, c]` with column `j`
//! holding `i(a_j)`, poset pairs `[lo, hi]` meaning `lo < hi` (transitively
//! closed on load) and index map entries `[cell, S, T, basis index]`.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::algebra::{Algebra, AlgebraError};
use crate::cellular::{CellDatum, CellDatumError, CellularAlgebra};
use crate::linalg::Matrix;
use crate::scalar::{Field, FieldKind, Fp, Rational, ScalarError};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "lowercase", deny_unknown_fields)]
pub enum FieldSpec {
    Rational,
    Prime { p: u64 },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CellSpec {
    pub label: String,
    pub members: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SpecFile {
    pub field: FieldSpec,
    pub dim: usize,
    pub basis: Vec<String>,
    pub structure_constants: Vec<(usize, usize, usize, String)>,
    pub unit: Vec<String>,
    pub involution: Vec<(usize, usize, String)>,
    pub trace: Vec<String>,
    pub cells: Vec<CellSpec>,
    pub poset: Vec<(String, String)>,
    pub index_map: Vec<(String, String, String, usize)>,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SpecError {
    #[error("line {line}, column {column}: {message}")]
    Syntax { line: usize, column: usize, message: String },
    #[error("{location}: {message}")]
    Field { location: String, message: String },
    #[error(transparent)]
    Datum(#[from] CellDatumError),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
}

fn field_error(location: impl Into<String>, message: impl Into<String>) -> SpecError {
    SpecError::Field { location: location.into(), message: message.into() }
}

/// A parsed spec over whichever field it names.
#[derive(Debug, Clone, PartialEq)]
pub enum LoadedSpec {
    Rational(CellularAlgebra<Rational>),
    Prime(CellularAlgebra<Fp>),
}

impl LoadedSpec {
    pub fn kind(&self) -> FieldKind {
        match self {
            LoadedSpec::Rational(ca) => ca.kind,
            LoadedSpec::Prime(ca) => ca.kind,
        }
    }
}

pub fn parse_spec_file(text: &str) -> Result<SpecFile, SpecError> {
    serde_json::from_str(text).map_err(|e| SpecError::Syntax {
        line: e.line(),
        column: e.column(),
        message: {
            let text = e.to_string();
            match text.rsplit_once(" at line ") {
                Some((head, _)) => head.to_string(),
                None => text,
            }
        },
    })
}

pub fn parse_spec(text: &str) -> Result<LoadedSpec, SpecError> {
    let file = parse_spec_file(text)?;
    match field_kind(&file)? {
        FieldKind::Rational => Ok(LoadedSpec::Rational(load(&file)?)),
        FieldKind::Prime(_) => Ok(LoadedSpec::Prime(load(&file)?)),
    }
}

fn field_kind(file: &SpecFile) -> Result<FieldKind, SpecError> {
    match file.field {
        FieldSpec::Rational => Ok(FieldKind::Rational),
        FieldSpec::Prime { p } => FieldKind::prime(p).map_err(|e| field_error("field.p", e.to_string())),
    }
}

/// Builds the algebra and datum over `F`, which must support the file's field.
pub fn load<F: Field>(file: &SpecFile) -> Result<CellularAlgebra<F>, SpecError> {
    let kind = field_kind(file)?;
    if !F::supports(&kind) {
        return Err(field_error("field", format!("scalar type cannot represent {kind}")));
    }
    let n = file.dim;
    if file.basis.len() != n {
        return Err(field_error("basis", format!("{} labels for dimension {n}", file.basis.len())));
    }
    for (i, l) in file.basis.iter().enumerate() {
        if file.basis[..i].contains(l) {
            return Err(field_error(format!("basis[{i}]"), format!("duplicate label {l:?}")));
        }
    }
    let scalar = |location: String, text: &str| -> Result<F, SpecError> {
        F::parse_in(&kind, text).map_err(|e: ScalarError| field_error(location, e.to_string()))
    };
    let in_range = |location: String, values: &[usize]| -> Result<(), SpecError> {
        match values.iter().find(|&&v| v >= n) {
            Some(v) => Err(field_error(location, format!("index {v} out of range for dimension {n}"))),
            None => Ok(()),
        }
    };

    let mut constants = Vec::with_capacity(file.structure_constants.len());
    for (q, (i, j, k, c)) in file.structure_constants.iter().enumerate() {
        let location = format!("structure_constants[{q}] = [{i}, {j}, {k}, {c:?}]");
        in_range(location.clone(), &[*i, *j, *k])?;
        constants.push((*i, *j, *k, scalar(location, c)?));
    }
    let vector = |name: &str, values: &[String]| -> Result<Vec<F>, SpecError> {
        if values.len() != n {
            return Err(field_error(name, format!("{} entries for dimension {n}", values.len())));
        }
        values.iter().enumerate().map(|(i, v)| scalar(format!("{name}[{i}] = {v:?}"), v)).collect()
    };
    let unit = vector("unit", &file.unit)?;
    let trace = vector("trace", &file.trace)?;
    let mut involution: Matrix<F> = Matrix::zeros(n, n);
    for (q, (r, c, v)) in file.involution.iter().enumerate() {
        let location = format!("involution[{q}] = [{r}, {c}, {v:?}]");
        in_range(location.clone(), &[*r, *c])?;
        involution[(*r, *c)] = involution[(*r, *c)].clone() + scalar(location, v)?;
    }
    let algebra = Algebra::new(file.basis.clone(), constants, unit, involution, trace)?;

    let labels: Vec<String> = file.cells.iter().map(|c| c.label.clone()).collect();
    let members: Vec<Vec<String>> = file.cells.iter().map(|c| c.members.clone()).collect();
    let cell_index = |location: &str, label: &str| {
        labels.iter().position(|l| l == label).ok_or_else(|| field_error(location, format!("unknown cell {label:?}")))
    };
    let mut relations = Vec::with_capacity(file.poset.len());
    for (q, (lo, hi)) in file.poset.iter().enumerate() {
        let location = format!("poset[{q}]");
        relations.push((cell_index(&location, lo)?, cell_index(&location, hi)?));
    }
    let mut map = Vec::with_capacity(file.index_map.len());
    for (q, (cell, s, t, k)) in file.index_map.iter().enumerate() {
        let location = format!("index_map[{q}] = [{cell:?}, {s:?}, {t:?}, {k}]");
        let c = cell_index(&location, cell)?;
        let member = |m: &str| {
            members[c].iter().position(|x| x == m).ok_or_else(|| {
                field_error(location.clone(), format!("{m:?} is not a member of cell {cell:?}"))
            })
        };
        map.push((c, member(s)?, member(t)?, *k));
    }
    let datum = CellDatum::new(labels, members, &relations, &map, n)?;
    Ok(CellularAlgebra { kind, algebra, datum })
}

pub fn to_spec_file<F: Field>(ca: &CellularAlgebra<F>) -> SpecFile {
    let (kind, alg, cd) = (&ca.kind, &ca.algebra, &ca.datum);
    let n = alg.dim();
    let render = |v: &[F]| v.iter().map(|x| x.render(kind)).collect();
    let field = match kind {
        FieldKind::Rational => FieldSpec::Rational,
        FieldKind::Prime(p) => FieldSpec::Prime { p: *p },
    };
    let inv = alg.involution();
    let involution = (0..n)
        .flat_map(|c| (0..n).map(move |r| (r, c)))
        .filter(|&(r, c)| !inv[(r, c)].is_zero())
        .map(|(r, c)| (r, c, inv[(r, c)].render(kind)))
        .collect();
    let poset = cd
        .order_pairs()
        .into_iter()
        .map(|(a, b)| (cd.label(a).to_string(), cd.label(b).to_string()))
        .collect();
    let mut index_map = Vec::with_capacity(n);
    for c in 0..cd.cell_count() {
        let m = cd.members(c);
        for s in 0..m.len() {
            for t in 0..m.len() {
                index_map.push((cd.label(c).to_string(), m[s].clone(), m[t].clone(), cd.index(c, s, t)));
            }
        }
    }
    SpecFile {
        field,
        dim: n,
        basis: alg.labels().to_vec(),
        structure_constants: alg.structure_constants().map(|(i, j, k, c)| (i, j, k, c.render(kind))).collect(),
        unit: render(alg.unit()),
        involution,
        trace: render(alg.trace()),
        cells: (0..cd.cell_count())
            .map(|c| CellSpec { label: cd.label(c).to_string(), members: cd.members(c).to_vec() })
            .collect(),
        poset,
        index_map,
    }
}

/// Pretty-printed JSON form of a cellular algebra.
pub fn to_json<F: Field>(ca: &CellularAlgebra<F>) -> String {
    serde_json::to_string_pretty(&to_spec_file(ca)).expect("spec files always serialize")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::builtin;

    const Q: FieldKind = FieldKind::Rational;

    fn kx_json() -> String {
        to_json(&builtin::koenig_xi::<Rational>(&Q, Rational::from_integer(2.into())).unwrap())
    }

    #[test]
    fn round_trip_koenig_xi() {
        let original = builtin::koenig_xi::<Rational>(&Q, Rational::from_integer(2.into())).unwrap();
        let LoadedSpec::Rational(parsed) = parse_spec(&kx_json()).unwrap() else { panic!("field changed") };
        assert_eq!(parsed, original);
        assert_eq!(to_spec_file(&parsed), to_spec_file(&original));
    }

    #[test]
    fn round_trip_prime_field() {
        let kind = FieldKind::prime(7).unwrap();
        let original = builtin::koenig_xi::<Fp>(&kind, Fp::new(3, 7)).unwrap();
        let text = to_json(&original);
        assert!(text.contains("\"prime\""));
        let LoadedSpec::Prime(parsed) = parse_spec(&text).unwrap() else { panic!("field changed") };
        assert_eq!(parsed, original);
    }

    #[test]
    fn zero_denominator_names_quadruple() {
        let mut file = parse_spec_file(&kx_json()).unwrap();
        file.structure_constants[4].3 = "1/0".into();
        let err = load::<Rational>(&file).unwrap_err();
        let SpecError::Field { location, .. } = &err else { panic!("{err:?}") };
        assert!(location.starts_with("structure_constants[4] = ["), "{location}");
        assert!(location.ends_with("\"1/0\"]"));
    }

    #[test]
    fn duplicate_index_is_bijection_error() {
        let mut file = parse_spec_file(&kx_json()).unwrap();
        let first = file.index_map[0].3;
        file.index_map[1].3 = first;
        let err = load::<Rational>(&file).unwrap_err();
        assert!(matches!(err, SpecError::Datum(CellDatumError::NotInjective { .. })), "{err}");
    }

    #[test]
    fn syntax_errors_carry_position() {
        let err = parse_spec("{\n  \"field\": ").unwrap_err();
        assert!(matches!(err, SpecError::Syntax { line: 2, .. }), "{err}");
        let err = parse_spec(&kx_json().replace("\"dim\"", "\"dimension\"")).unwrap_err();
        assert!(matches!(err, SpecError::Syntax { .. }));
    }

    #[test]
    fn range_and_label_errors() {
        let mut file = parse_spec_file(&kx_json()).unwrap();
        file.structure_constants[0].2 = 6;
        assert!(matches!(load::<Rational>(&file), Err(SpecError::Field { .. })));
        let mut file = parse_spec_file(&kx_json()).unwrap();
        file.poset.push(("3".into(), "9".into()));
        let err = load::<Rational>(&file).unwrap_err();
        assert!(err.to_string().contains("unknown cell \"9\""), "{err}");
        let mut file = parse_spec_file(&kx_json()).unwrap();
        file.field = FieldSpec::Prime { p: 9 };
        assert!(parse_spec(&serde_json::to_string(&file).unwrap()).is_err());
        let mut file = parse_spec_file(&kx_json()).unwrap();
        file.poset.push(("3".into(), "1".into()));
        assert!(matches!(load::<Rational>(&file), Err(SpecError::Datum(CellDatumError::Cycle(_)))));
    }
}
