use std::fmt;

use serde::Serialize;

/// Axiom families checked by the algebra and cellular validators.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Axiom {
    Associativity,
    Unit,
    AntiMultiplicative,
    Involutive,
    NonDegenerate,
    /// (C1): basis count and index map.
    CellBasis,
    /// (C2): the involution swaps row and column indices.
    CellInvolution,
    /// (C3): left multiplication is triangular with T-independent coefficients.
    CellMultiplication,
}

impl fmt::Display for Axiom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Axiom::Associativity => "associativity",
            Axiom::Unit => "unit",
            Axiom::AntiMultiplicative => "involution anti-multiplicative",
            Axiom::Involutive => "involution squares to identity",
            Axiom::NonDegenerate => "trace form non-degenerate",
            Axiom::CellBasis => "(C1) cell basis",
            Axiom::CellInvolution => "(C2) involution on cell basis",
            Axiom::CellMultiplication => "(C3) cell multiplication",
        };
        f.write_str(s)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Failure {
    pub axiom: Axiom,
    /// Concrete counterexample, e.g. the basis triple that breaks associativity.
    pub witness: String,
    pub detail: String,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct ValidationReport {
    pub checked: Vec<Axiom>,
    pub failures: Vec<Failure>,
    pub notes: Vec<String>,
}

impl ValidationReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }

    pub fn failed(&self, axiom: Axiom) -> bool {
        self.failures.iter().any(|f| f.axiom == axiom)
    }

    pub fn first_failure(&self, axiom: Axiom) -> Option<&Failure> {
        self.failures.iter().find(|f| f.axiom == axiom)
    }

    pub(crate) fn check(&mut self, axiom: Axiom) {
        if !self.checked.contains(&axiom) {
            self.checked.push(axiom);
        }
    }

    pub(crate) fn fail(&mut self, axiom: Axiom, witness: impl Into<String>, detail: impl Into<String>) {
        self.failures.push(Failure { axiom, witness: witness.into(), detail: detail.into() });
    }

    pub fn merge(&mut self, other: ValidationReport) {
        for a in other.checked {
            self.check(a);
        }
        self.failures.extend(other.failures);
        self.notes.extend(other.notes);
    }
}
