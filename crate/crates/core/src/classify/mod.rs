//! CP groups, SJNF families, and inequivalence certificates.

pub mod compare;
pub mod small;
pub mod taxonomy;

use std::fmt;

use num_complex::Complex64;

use crate::document::AnyState;
use crate::error::{Error, Result};
use crate::parallel::Execution;
use crate::scalar::Exact;
use crate::smatrix::{s_matrix, RowBits};
use crate::spectral::{jordan_form_float, ExactSpectrum, JordanForm, Tolerances};
use crate::state::PureState;

pub use compare::{
    proportional_compare, solve_power_relations, Comparison, ComparisonMode, InvariantKind, Invariants, ScaleSet,
};
pub use small::{classify_small, lambda_prime, three_tangle, SmallReport, ThreeQubitClass};
pub use taxonomy::{cp_group, family_by_id, family_of, sjnf_family, CpGroup, FamilyEntry, FamilySignature, FAMILIES};

/// Numerical settings shared by every entry point.
#[derive(Clone, Copy, PartialEq, Debug, Default)]
pub struct Settings {
    pub tol: Tolerances,
    pub exec: Execution,
}

pub fn invariants_exact(state: &PureState<Exact>, rb: RowBits) -> Result<Invariants> {
    let s = s_matrix(state, rb)?;
    Ok(Invariants::Exact(ExactSpectrum::of(&s.matrix)))
}

pub fn invariants_float(state: &PureState<Complex64>, rb: RowBits, tol: Tolerances) -> Result<Invariants> {
    let s = s_matrix(state, rb)?;
    Ok(Invariants::Float(jordan_form_float(&s.matrix, tol)))
}

/// Exact invariants for exact states, floating ones otherwise.
pub fn invariants(state: &AnyState, rb: RowBits, tol: Tolerances) -> Result<Invariants> {
    match state {
        AnyState::Exact(s) => invariants_exact(s, rb),
        AnyState::Float(s) => invariants_float(s, rb, tol),
    }
}

/// Classification of one S-matrix.
#[derive(Clone, PartialEq, Debug)]
pub struct RowReport {
    pub row_bits: RowBits,
    pub group: CpGroup,
    pub family: Option<&'static FamilyEntry>,
    pub signature: FamilySignature,
    pub jordan: JordanForm,
    /// Rendered characteristic polynomial, exact path only.
    pub char_poly: Option<String>,
    pub ambiguity: Option<String>,
}

impl RowReport {
    fn from_invariants(row_bits: RowBits, inv: &Invariants) -> Self {
        let jordan = inv.jordan().clone();
        let signature = FamilySignature::of(&jordan);
        let group = match inv {
            Invariants::Exact(e) => cp_group(&e.multiplicity),
            Invariants::Float(_) => cp_group(&jordan.multiplicity_structure()),
        };
        let char_poly = match inv {
            Invariants::Exact(e) => Some(e.char_poly.to_poly().to_string()),
            Invariants::Float(_) => None,
        };
        RowReport {
            row_bits,
            group,
            family: family_of(&signature),
            signature,
            jordan,
            char_poly,
            ambiguity: inv.ambiguity().map(str::to_owned),
        }
    }
}

impl fmt::Display for RowReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}  CP{}  family {}", self.row_bits, self.group, self.signature)?;
        if let Some(fam) = self.family {
            write!(f, " (#{} {})", fam.id, fam.witness)?;
        }
        write!(f, "  sjnf {}", self.jordan)?;
        if let Some(a) = &self.ambiguity {
            write!(f, "  [ambiguous: {a}]")?;
        }
        Ok(())
    }
}

/// Classifies the requested S-matrices (all pairs when `rows` is `None`),
/// in row-bit order.
pub fn classify_rows(state: &AnyState, rows: Option<&[RowBits]>, settings: Settings) -> Result<Vec<RowReport>> {
    let all;
    let rows = match rows {
        Some(r) => r,
        None => {
            all = RowBits::all(state.qubits());
            &all
        }
    };
    settings
        .exec
        .map(rows, |&rb| invariants(state, rb, settings.tol).map(|inv| RowReport::from_invariants(rb, &inv)))
        .into_iter()
        .collect()
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Verdict {
    Inequivalent,
    NotDistinguished,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::Inequivalent => "INEQUIVALENT",
            Verdict::NotDistinguished => "NOT_DISTINGUISHED",
        })
    }
}

/// Comparison at one row-bit pair.
#[derive(Clone, PartialEq, Debug)]
pub struct PairComparison {
    pub row_bits: RowBits,
    pub a: JordanForm,
    pub b: JordanForm,
    pub comparison: Comparison,
}

impl PairComparison {
    pub fn mismatch(&self) -> Option<InvariantKind> {
        self.comparison.mismatch()
    }
}

/// The row-bit pair and invariant that separate two states.
#[derive(Clone, PartialEq, Debug)]
pub struct Witness {
    pub row_bits: RowBits,
    pub kind: InvariantKind,
    pub a: FamilySignature,
    pub b: FamilySignature,
    pub a_jordan: JordanForm,
    pub b_jordan: JordanForm,
}

#[derive(Clone, PartialEq, Debug)]
pub struct Certificate {
    pub verdict: Verdict,
    pub witness: Option<Witness>,
    pub mode: ComparisonMode,
    /// Every pair, in row-bit order.
    pub pairs: Vec<PairComparison>,
}

impl Certificate {
    /// Scale sets common to every pair's SJNF comparison, when all are exact.
    pub fn scales(&self) -> Vec<(RowBits, &ScaleSet)> {
        self.pairs.iter().map(|p| (p.row_bits, &p.comparison.sjnf)).collect()
    }

    pub fn ambiguous(&self) -> bool {
        self.pairs.iter().any(|p| p.comparison.ambiguity.is_some())
    }
}

impl fmt::Display for Certificate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mode = match self.mode {
            ComparisonMode::Proportional => "PROPORTIONAL",
            ComparisonMode::Exact => "EXACT",
        };
        writeln!(f, "verdict {}  mode {}", self.verdict, mode)?;
        if let Some(w) = &self.witness {
            writeln!(f, "witness {} {}: {} vs {}", w.row_bits, w.kind, w.a_jordan, w.b_jordan)?;
            writeln!(f, "families {} vs {}", w.a, w.b)?;
        }
        for p in &self.pairs {
            write!(f, "{}  spectrum {}  sjnf {}", p.row_bits, p.comparison.spectrum, p.comparison.sjnf)?;
            if let Some(a) = &p.comparison.ambiguity {
                write!(f, "  [ambiguous: {a}]")?;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}

/// Scans every row-bit pair. The first pair (in row-bit order) whose
/// invariants cannot be reconciled becomes the witness.
pub fn certify_inequivalence(
    a: &AnyState,
    b: &AnyState,
    mode: ComparisonMode,
    settings: Settings,
) -> Result<Certificate> {
    if a.qubits() != b.qubits() {
        return Err(Error::DimensionMismatch(a.qubits(), b.qubits()));
    }
    // mixed fields compare on the float path
    let (a, b) = match (a, b) {
        (AnyState::Exact(_), AnyState::Exact(_)) | (AnyState::Float(_), AnyState::Float(_)) => (a.clone(), b.clone()),
        _ => (AnyState::Float(a.to_float()), AnyState::Float(b.to_float())),
    };
    let rows = RowBits::all(a.qubits());
    let pairs = settings
        .exec
        .map(&rows, |&rb| -> Result<PairComparison> {
            let ia = invariants(&a, rb, settings.tol)?;
            let ib = invariants(&b, rb, settings.tol)?;
            Ok(PairComparison {
                row_bits: rb,
                comparison: proportional_compare(&ia, &ib, mode, settings.tol),
                a: ia.jordan().clone(),
                b: ib.jordan().clone(),
            })
        })
        .into_iter()
        .collect::<Result<Vec<_>>>()?;
    let witness = pairs.iter().find_map(|p| {
        p.mismatch().map(|kind| Witness {
            row_bits: p.row_bits,
            kind,
            a: FamilySignature::of(&p.a),
            b: FamilySignature::of(&p.b),
            a_jordan: p.a.clone(),
            b_jordan: p.b.clone(),
        })
    });
    Ok(Certificate {
        verdict: if witness.is_some() { Verdict::Inequivalent } else { Verdict::NotDistinguished },
        witness,
        mode,
        pairs,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::fixture_state;
    use crate::scalar::Scalar;

    fn exact(name: &str, params: &[(&str, Exact)]) -> AnyState {
        AnyState::Exact(fixture_state(name, params).unwrap())
    }

    #[test]
    fn zeta4_zeta5() {
        let p = [("a", Exact::from_i64(2)), ("b", Exact::from_i64(3))];
        let c = certify_inequivalence(
            &exact("zeta4", &p),
            &exact("zeta5", &p),
            ComparisonMode::Proportional,
            Settings::default(),
        )
        .unwrap();
        assert_eq!(c.verdict, Verdict::Inequivalent);
        let w = c.witness.unwrap();
        assert_eq!(w.row_bits, RowBits { q1: 1, q2: 2 });
        assert_eq!(w.kind, InvariantKind::Sjnf);
    }

    #[test]
    fn ghz_w_and_self() {
        let ghz = exact("ghz", &[]);
        let w = exact("w", &[]);
        let c = certify_inequivalence(&ghz, &w, ComparisonMode::Proportional, Settings::default()).unwrap();
        assert_eq!(c.verdict, Verdict::Inequivalent);
        let c = certify_inequivalence(&ghz, &ghz, ComparisonMode::Exact, Settings::default()).unwrap();
        assert_eq!(c.verdict, Verdict::NotDistinguished);
        assert_eq!(c.pairs.len(), 3);
    }

    #[test]
    fn dimension_mismatch() {
        let err = certify_inequivalence(&exact("ghz", &[]), &exact("bell", &[]), ComparisonMode::Exact, Settings::default());
        assert_eq!(err.unwrap_err(), Error::DimensionMismatch(3, 2));
    }

    #[test]
    fn ghz_rows_are_group_ten() {
        let reports = classify_rows(&exact("ghz", &[]), None, Settings::default()).unwrap();
        assert_eq!(reports.len(), 3);
        for r in &reports {
            assert_eq!(r.group.id(), 10);
            assert_eq!(r.signature.to_string(), "00s1s2");
        }
        let float = AnyState::Float(exact("ghz", &[]).to_float());
        for r in classify_rows(&float, None, Settings::default()).unwrap() {
            assert_eq!(r.group.id(), 10);
            assert!(r.ambiguity.is_none());
        }
    }

    #[test]
    fn sequential_matches_parallel() {
        let s = exact("theta1", &[]);
        let par = classify_rows(&s, None, Settings::default()).unwrap();
        let seq = classify_rows(
            &s,
            None,
            Settings {
                exec: Execution::Sequential,
                ..Settings::default()
            },
        )
        .unwrap();
        assert_eq!(par, seq);
    }
}
