//! Two- and three-qubit specialisations.

use std::fmt;

use crate::error::{Error, Result};
use crate::scalar::{Exact, Scalar};
use crate::smatrix::{s_matrix, RowBits};
use crate::spectral::{jordan_form_exact, JordanForm};
use crate::state::PureState;

use super::taxonomy::FamilySignature;

/// The six three-qubit SLOCC classes.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum ThreeQubitClass {
    Ghz,
    W,
    ABc,
    BAc,
    CAb,
    Product,
}

impl ThreeQubitClass {
    pub const ALL: [ThreeQubitClass; 6] = [
        ThreeQubitClass::Ghz,
        ThreeQubitClass::W,
        ThreeQubitClass::ABc,
        ThreeQubitClass::BAc,
        ThreeQubitClass::CAb,
        ThreeQubitClass::Product,
    ];

    /// Expected shapes of `(S_12, S_13)`; `s1`/`s2` are the pair `±λ`.
    pub fn expected_patterns(self) -> (&'static str, &'static str) {
        match self {
            ThreeQubitClass::Ghz => ("00s1s2", "00s1s2"),
            ThreeQubitClass::W => ("J3(0)0", "J3(0)0"),
            ThreeQubitClass::ABc => ("J2(0)J2(0)", "J2(0)J2(0)"),
            ThreeQubitClass::BAc => ("J2(0)J2(0)", "0000"),
            ThreeQubitClass::CAb => ("0000", "J2(0)J2(0)"),
            ThreeQubitClass::Product => ("0000", "0000"),
        }
    }

    /// Row labels and Jordan forms as the classification table prints them.
    pub fn table_row(self) -> (&'static str, &'static str, &'static str) {
        match self {
            ThreeQubitClass::Ghz => ("GHZ", "J1(±1/2)00", "J1(±1/2)00"),
            ThreeQubitClass::W => ("W", "J3(0)0", "J3(0)0"),
            ThreeQubitClass::ABc => ("A-BC", "J2(0)J2(0)", "J2(0)J2(0)"),
            ThreeQubitClass::BAc => ("B-AC", "J2(0)J2(0)", "0000"),
            ThreeQubitClass::CAb => ("C-AB", "0000", "J2(0)J2(0)"),
            ThreeQubitClass::Product => ("|000>", "0000", "0000"),
        }
    }

    /// Catalog key of the standard representative.
    pub fn fixture(self) -> &'static str {
        match self {
            ThreeQubitClass::Ghz => "ghz",
            ThreeQubitClass::W => "w",
            ThreeQubitClass::ABc => "a_bc",
            ThreeQubitClass::BAc => "b_ac",
            ThreeQubitClass::CAb => "c_ab",
            ThreeQubitClass::Product => "product3",
        }
    }
}

impl fmt::Display for ThreeQubitClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.table_row().0)
    }
}

#[derive(Clone, PartialEq, Debug)]
pub enum SmallReport {
    TwoQubit {
        /// `λ' = 2(a0 a3 - a1 a2)`.
        lambda_prime: Exact,
        jordan: JordanForm,
        entangled: bool,
    },
    ThreeQubit {
        /// `λ²` from the closed form (the 3-tangle).
        lambda_sq: Exact,
        s12: JordanForm,
        s13: JordanForm,
        class: Option<ThreeQubitClass>,
    },
}

/// `λ' = 2(a0 a3 - a1 a2)`.
pub fn lambda_prime(state: &PureState<Exact>) -> Result<Exact> {
    if state.qubits() != 2 {
        return Err(Error::NotSmallSystem(state.qubits()));
    }
    let c = state.amplitudes();
    Ok(Exact::from_i64(2) * (c[0].clone() * &c[3] - c[1].clone() * &c[2]))
}

/// `λ² = [(c0c7 - c1c6) - (c2c5 - c3c4)]² - 4(c0c3 - c1c2)(c4c7 - c5c6)`.
pub fn three_tangle(state: &PureState<Exact>) -> Result<Exact> {
    if state.qubits() != 3 {
        return Err(Error::NotSmallSystem(state.qubits()));
    }
    let c = state.amplitudes();
    let m = |i: usize, j: usize| c[i].clone() * &c[j];
    let d = (m(0, 7) - m(1, 6)) - (m(2, 5) - m(3, 4));
    let e = m(0, 3) - m(1, 2);
    let f = m(4, 7) - m(5, 6);
    Ok(d.clone() * &d - Exact::from_i64(4) * e * f)
}

/// Reports `λ'` and the class for two qubits, or `λ²` and the `(S_12, S_13)`
/// Jordan forms matched against the six classes for three.
pub fn classify_small(state: &PureState<Exact>) -> Result<SmallReport> {
    match state.qubits() {
        2 => {
            let lp = lambda_prime(state)?;
            let s = s_matrix(state, RowBits::new(1, 2, 2)?)?;
            Ok(SmallReport::TwoQubit {
                entangled: !lp.is_zero(),
                lambda_prime: lp,
                jordan: jordan_form_exact(&s.matrix),
            })
        }
        3 => {
            let lambda_sq = three_tangle(state)?;
            let s12 = jordan_form_exact(&s_matrix(state, RowBits::new(1, 2, 3)?)?.matrix);
            let s13 = jordan_form_exact(&s_matrix(state, RowBits::new(1, 3, 3)?)?.matrix);
            let (p12, p13) = (FamilySignature::of(&s12), FamilySignature::of(&s13));
            let class = ThreeQubitClass::ALL.into_iter().find(|c| {
                let (e12, e13) = c.expected_patterns();
                FamilySignature::parse(e12).as_ref() == Some(&p12) && FamilySignature::parse(e13).as_ref() == Some(&p13)
            });
            Ok(SmallReport::ThreeQubit {
                lambda_sq,
                s12,
                s13,
                class,
            })
        }
        n => Err(Error::NotSmallSystem(n)),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::fixture_state;

    #[test]
    fn bell_and_product() {
        let bell = fixture_state("bell", &[]).unwrap();
        match classify_small(&bell).unwrap() {
            SmallReport::TwoQubit { lambda_prime, jordan, entangled } => {
                assert_eq!(lambda_prime, Exact::one());
                assert!(entangled);
                assert_eq!(jordan.to_string(), "0 0 0 1");
            }
            _ => unreachable!(),
        }
        let product = fixture_state("product2", &[]).unwrap();
        match classify_small(&product).unwrap() {
            SmallReport::TwoQubit { lambda_prime, jordan, entangled } => {
                assert!(lambda_prime.is_zero());
                assert!(!entangled);
                assert_eq!(jordan.to_string(), "J2(0) 0 0");
            }
            _ => unreachable!(),
        }
    }

    #[test]
    fn six_three_qubit_classes() {
        for class in ThreeQubitClass::ALL {
            let s = fixture_state(class.fixture(), &[]).unwrap();
            match classify_small(&s).unwrap() {
                SmallReport::ThreeQubit { class: found, .. } => assert_eq!(found, Some(class)),
                _ => unreachable!(),
            }
        }
        let ghz = fixture_state("ghz", &[]).unwrap();
        assert_eq!(three_tangle(&ghz).unwrap(), Exact::from_ratio(1, 4));
    }

    #[test]
    fn wrong_size() {
        let s = PureState::from_sparse(4, [(0, Exact::one())]).unwrap();
        assert_eq!(classify_small(&s).unwrap_err(), Error::NotSmallSystem(4));
    }
}
