//! Built-in fixtures.

use thiserror::Error;

use crate::algebra::Algebra;
use crate::cellular::{CellDatum, CellularAlgebra};
use crate::linalg::Matrix;
use crate::scalar::{Field, FieldKind, ScalarError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BuiltinError {
    #[error("unknown builtin {0:?} (expected koenig-xi, dual-numbers or matrix)")]
    Unknown(String),
    #[error("invalid parameter {name}: {detail}")]
    InvalidParameter { name: String, detail: String },
}

fn strings(items: &[&str]) -> Vec<String> {
    items.iter().map(|s| s.to_string()).collect()
}

fn permutation<F: Field>(n: usize, image: impl Fn(usize) -> usize) -> Matrix<F> {
    let mut m = Matrix::zeros(n, n);
    for j in 0..n {
        m[(image(j), j)] = F::one();
    }
    m
}

/// The six-dimensional algebra `K⟨a,b,c,d⟩/I` with basis `(1, a, b, c, d, bc)`,
/// `cb = λ·bc`, `ad = da = bc`, all other products of generators zero,
/// `τ(bc) = 1` and `i` swapping `b` and `c`.
pub fn koenig_xi<F: Field>(kind: &FieldKind, lambda: F) -> Result<CellularAlgebra<F>, BuiltinError> {
    if lambda.is_zero() || lambda == F::one() {
        return Err(BuiltinError::InvalidParameter {
            name: "lambda".into(),
            detail: format!("must differ from 0 and 1, got {}", lambda.render(kind)),
        });
    }
    let (one, a, b, c, d, bc) = (0, 1, 2, 3, 4, 5);
    let mut constants = Vec::new();
    for x in 0..6 {
        constants.push((one, x, x, F::one()));
        if x != one {
            constants.push((x, one, x, F::one()));
        }
    }
    constants.push((a, d, bc, F::one()));
    constants.push((d, a, bc, F::one()));
    constants.push((b, c, bc, F::one()));
    constants.push((c, b, bc, lambda));
    let mut unit = vec![F::zero(); 6];
    unit[one] = F::one();
    let mut trace = vec![F::zero(); 6];
    trace[bc] = F::one();
    let involution = permutation(6, |j| match j {
        2 => 3,
        3 => 2,
        j => j,
    });
    let algebra = Algebra::new(strings(&["1", "a", "b", "c", "d", "bc"]), constants, unit, involution, trace)
        .expect("fixture is well formed");
    let datum = CellDatum::new(
        strings(&["1", "2", "3"]),
        vec![strings(&["1"]), strings(&["1", "2"]), strings(&["1"])],
        &[(0, 1), (1, 2)],
        &[(0, 0, 0, bc), (1, 0, 0, a), (1, 0, 1, b), (1, 1, 0, c), (1, 1, 1, d), (2, 0, 0, one)],
        6,
    )
    .expect("fixture datum is well formed");
    Ok(CellularAlgebra { kind: *kind, algebra, datum })
}

/// `K[x]/(x²)` with basis `(x, 1)`, `τ(x) = 1`, `τ(1) = 0`, trivial
/// involution and two singleton cells with `x` below `1`.
pub fn dual_numbers<F: Field>(kind: &FieldKind) -> CellularAlgebra<F> {
    let (x, one) = (0, 1);
    let constants = vec![(one, one, one, F::one()), (one, x, x, F::one()), (x, one, x, F::one())];
    let algebra = Algebra::new(
        strings(&["x", "1"]),
        constants,
        vec![F::zero(), F::one()],
        Matrix::identity(2),
        vec![F::one(), F::zero()],
    )
    .expect("fixture is well formed");
    let datum = CellDatum::new(
        strings(&["x", "1"]),
        vec![strings(&["1"]), strings(&["1"])],
        &[(0, 1)],
        &[(0, 0, 0, x), (1, 0, 0, one)],
        2,
    )
    .expect("fixture datum is well formed");
    CellularAlgebra { kind: *kind, algebra, datum }
}

/// `M_n(K)` with basis `E_ST` in row-major order, `τ` the matrix trace,
/// `i` the transpose and one cell with `C_{S,T} = E_ST`.
pub fn matrix_algebra<F: Field>(kind: &FieldKind, n: usize) -> Result<CellularAlgebra<F>, BuiltinError> {
    if n == 0 {
        return Err(BuiltinError::InvalidParameter { name: "n".into(), detail: "must be positive".into() });
    }
    let idx = |s: usize, t: usize| s * n + t;
    let sep = if n > 9 { "," } else { "" };
    let labels = (0..n * n).map(|k| format!("E{}{sep}{}", k / n + 1, k % n + 1)).collect();
    let mut constants = Vec::new();
    for s in 0..n {
        for t in 0..n {
            for v in 0..n {
                constants.push((idx(s, t), idx(t, v), idx(s, v), F::one()));
            }
        }
    }
    let unit = (0..n * n).map(|k| if k / n == k % n { F::one() } else { F::zero() }).collect::<Vec<_>>();
    let trace = unit.clone();
    let involution = permutation(n * n, |k| idx(k % n, k / n));
    let algebra = Algebra::new(labels, constants, unit, involution, trace).expect("fixture is well formed");
    let members = (1..=n).map(|s| s.to_string()).collect();
    let map: Vec<_> = (0..n).flat_map(|s| (0..n).map(move |t| (0, s, t, idx(s, t)))).collect();
    let datum = CellDatum::new(vec!["1".into()], vec![members], &[], &map, n * n).expect("fixture datum is well formed");
    Ok(CellularAlgebra { kind: *kind, algebra, datum })
}

/// Dispatches a builtin by CLI name. Parameters: `lambda` for
/// `koenig-xi` (default 2), `n` for `matrix` (default 2).
pub fn by_name<F: Field>(
    kind: &FieldKind,
    name: &str,
    params: &[(String, String)],
) -> Result<CellularAlgebra<F>, BuiltinError> {
    let known: &[&str] = match name {
        "koenig-xi" => &["lambda"],
        "matrix" => &["n"],
        "dual-numbers" => &[],
        other => return Err(BuiltinError::Unknown(other.to_string())),
    };
    for (key, _) in params {
        if !known.contains(&key.as_str()) {
            return Err(BuiltinError::InvalidParameter { name: key.clone(), detail: format!("not accepted by {name}") });
        }
    }
    let param = |key: &str| params.iter().rev().find(|(k, _)| k == key).map(|(_, v)| v.as_str());
    match name {
        "koenig-xi" => {
            let text = param("lambda").unwrap_or("2");
            let lambda = F::parse_in(kind, text).map_err(|e: ScalarError| BuiltinError::InvalidParameter {
                name: "lambda".into(),
                detail: e.to_string(),
            })?;
            koenig_xi(kind, lambda)
        }
        "matrix" => {
            let text = param("n").unwrap_or("2");
            let n = text.parse::<usize>().map_err(|e| BuiltinError::InvalidParameter {
                name: "n".into(),
                detail: format!("{text:?}: {e}"),
            })?;
            matrix_algebra(kind, n)
        }
        _ => Ok(dual_numbers(kind)),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::validate_algebra;
    use crate::cellular::validate_cellular;
    use crate::scalar::{Fp, Rational};

    #[test]
    fn lambda_zero_and_one_rejected() {
        let q = FieldKind::Rational;
        assert!(koenig_xi::<Rational>(&q, Rational::from_integer(0.into())).is_err());
        assert!(koenig_xi::<Rational>(&q, Rational::from_integer(1.into())).is_err());
        let p = FieldKind::prime(5).unwrap();
        assert!(koenig_xi::<Fp>(&p, Fp::new(6, 5)).is_err());
        assert!(koenig_xi::<Fp>(&p, Fp::new(3, 5)).is_ok());
    }

    #[test]
    fn matrix_fixture_shapes() {
        let m3 = matrix_algebra::<Rational>(&FieldKind::Rational, 3).unwrap();
        assert_eq!(m3.algebra.dim(), 9);
        assert_eq!(m3.algebra.labels()[5], "E23");
        assert!(validate_algebra(&m3.algebra).passed());
        assert!(validate_cellular(&m3.algebra, &m3.datum).passed());
        assert!(matrix_algebra::<Rational>(&FieldKind::Rational, 0).is_err());
    }

    #[test]
    fn dispatch_by_name() {
        let q = FieldKind::Rational;
        let params = vec![("lambda".to_string(), "-1/3".to_string())];
        let kx = by_name::<Rational>(&q, "koenig-xi", &params).unwrap();
        assert_eq!(kx.algebra.basis_product(3, 2)[5].to_string(), "-1/3");
        assert!(matches!(by_name::<Rational>(&q, "temperley-lieb", &[]), Err(BuiltinError::Unknown(_))));
        let bad = vec![("n".to_string(), "2".to_string())];
        assert!(by_name::<Rational>(&q, "koenig-xi", &bad).is_err());
        assert_eq!(by_name::<Rational>(&q, "dual-numbers", &[]).unwrap().algebra.dim(), 2);
    }
}
