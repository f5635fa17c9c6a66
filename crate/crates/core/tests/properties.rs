//! Property tests over random Gaussian-integer states.

use proptest::prelude::*;

use slocc::classify::{classify_rows, FamilySignature, Settings};
use slocc::document::{parse_state, to_document, AnyState};
use slocc::matrix::Matrix;
use slocc::parallel::Execution;
use slocc::smatrix::{s_matrix, RowBits};
use slocc::spectral::{jordan_form_exact, jordan_form_float, Tolerances};
use slocc::state::{apply_local_operators, random_local_operators, GroupMode};
use slocc::{Exact, PureState, Scalar};

/// `n` qubits, amplitudes with parts in [-3, 3], about half of them zero.
fn state(n: usize) -> impl Strategy<Value = PureState<Exact>> {
    let amp = prop_oneof![
        Just((0i64, 0i64)),
        (-3i64..=3, -3i64..=3),
    ];
    prop::collection::vec(amp, 1 << n)
        .prop_filter("nonzero", |v| v.iter().any(|&(a, b)| a != 0 || b != 0))
        .prop_map(move |v| {
            PureState::new(n, v.into_iter().map(|(a, b)| Exact::from_gaussian(a, b)).collect()).unwrap()
        })
}

fn any_state() -> impl Strategy<Value = PureState<Exact>> {
    (2usize..=5).prop_flat_map(state)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn inverse_operators_restore_the_state(s in any_state(), seed in any::<u64>()) {
        let ops = random_local_operators(s.qubits(), GroupMode::General, seed).unwrap();
        let moved = apply_local_operators(&s, &ops).unwrap();
        let back = apply_local_operators(&moved, &ops.inverse().unwrap()).unwrap();
        prop_assert_eq!(back, s);
    }

    #[test]
    fn s_matrix_is_quadratic_in_the_state(s in any_state(), re in -3i64..=3, im in 1i64..=3) {
        let c = Exact::from_gaussian(re, im);
        let scaled = s.scaled(&c).unwrap();
        for rb in RowBits::all(s.qubits()) {
            let a = s_matrix(&s, rb).unwrap().matrix;
            let b = s_matrix(&scaled, rb).unwrap().matrix;
            prop_assert_eq!(b, a.scale(&(c.clone() * &c)));
        }
    }

    #[test]
    fn transpose_parity(s in any_state()) {
        let sign = if s.qubits() % 2 == 0 { Exact::one() } else { -Exact::one() };
        for rb in RowBits::all(s.qubits()) {
            let m = s_matrix(&s, rb).unwrap().matrix;
            prop_assert_eq!(m.transpose(), m.scale(&sign));
        }
    }

    #[test]
    fn float_path_agrees_with_exact_when_confident(s in (3usize..=4).prop_flat_map(state)) {
        let rb = RowBits::new(1, 2, s.qubits()).unwrap();
        let exact = jordan_form_exact(&s_matrix(&s, rb).unwrap().matrix);
        let fm: Matrix<_> = s_matrix(&s.map(|a| a.to_c64()), rb).unwrap().matrix;
        let float = jordan_form_float(&fm, Tolerances::default());
        if !float.is_ambiguous() {
            prop_assert_eq!(FamilySignature::of(&float.jordan), FamilySignature::of(&exact));
        }
    }

    #[test]
    fn documents_round_trip(s in any_state()) {
        let any = AnyState::Exact(s);
        let text = to_document(&any);
        prop_assert_eq!(parse_state(&text).unwrap(), any);
    }

    #[test]
    fn sequential_and_parallel_agree(s in (3usize..=4).prop_flat_map(state)) {
        let any = AnyState::Exact(s);
        let par = classify_rows(&any, None, Settings { exec: Execution::Parallel, ..Settings::default() }).unwrap();
        let seq = classify_rows(&any, None, Settings { exec: Execution::Sequential, ..Settings::default() }).unwrap();
        prop_assert_eq!(par, seq);
    }
}
