//! Coefficient matrices and the 4×4 S-matrix of a state for a pair of row
//! qubits.
//!
//! `T = T̃ / √2` with a Gaussian-integer `T̃`. Every product chain below uses
//! `T` exactly twice, so the factor enters as `1/2` and Gaussian-rational
//! states give Gaussian-rational S-matrices.

use std::fmt;

use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::scalar::{Exact, Scalar};
use crate::state::PureState;

/// Ordered pair of distinct 1-based row qubits.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct RowBits {
    pub q1: usize,
    pub q2: usize,
}

impl RowBits {
    pub fn new(q1: usize, q2: usize, n: usize) -> Result<Self> {
        if q1 == q2 || q1 == 0 || q2 == 0 || q1 > n || q2 > n {
            return Err(Error::InvalidRowBits { q1, q2, n });
        }
        Ok(Self { q1, q2 })
    }

    /// All `C(n, 2)` pairs `q1 < q2`, in lexicographic order.
    pub fn all(n: usize) -> Vec<Self> {
        let mut out = Vec::new();
        for q1 in 1..=n {
            for q2 in q1 + 1..=n {
                out.push(Self { q1, q2 });
            }
        }
        out
    }
}

impl fmt::Display for RowBits {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.q1, self.q2)
    }
}

/// The 4 × 2^(n-2) reshaping of a state's amplitudes.
#[derive(Clone, PartialEq, Debug)]
pub struct CoeffMatrix<F> {
    pub row_bits: RowBits,
    pub matrix: Matrix<F>,
}

/// The 4×4 matrix `S_{q1 q2}(ψ)`.
#[derive(Clone, PartialEq, Debug)]
pub struct SMatrix<F> {
    pub row_bits: RowBits,
    pub matrix: Matrix<F>,
}

/// Row index from bits `q1 q2`; column from the remaining qubits in
/// ascending order, most significant first.
pub fn coeff_matrix<F: Scalar>(state: &PureState<F>, row_bits: RowBits) -> Result<CoeffMatrix<F>> {
    let n = state.qubits();
    let row_bits = RowBits::new(row_bits.q1, row_bits.q2, n)?;
    let rest: Vec<usize> = (1..=n)
        .filter(|&q| q != row_bits.q1 && q != row_bits.q2)
        .collect();
    let mut m = Matrix::zeros(4, 1 << (n - 2));
    for (i, a) in state.amplitudes().iter().enumerate() {
        let r = 2 * state.bit(i, row_bits.q1) + state.bit(i, row_bits.q2);
        let c = rest.iter().fold(0, |acc, &q| 2 * acc + state.bit(i, q));
        m[(r, c)] = a.clone();
    }
    Ok(CoeffMatrix {
        row_bits,
        matrix: m,
    })
}

/// `ν = iσ_y`.
pub fn nu<F: Scalar>() -> Matrix<F> {
    Matrix::from_rows(2, 2, vec![F::zero(), F::one(), -F::one(), F::zero()])
}

/// `ν^{⊗m}` as a dense matrix (the 1×1 identity for `m = 0`).
pub fn nu_power<F: Scalar>(m: usize) -> Matrix<F> {
    (0..m).fold(Matrix::identity(1), |acc, _| acc.kron(&nu()))
}

/// `√2·T`, the Gaussian-integer part of `T`.
pub fn t_scaled<F: Scalar>() -> Matrix<F> {
    let o = F::zero;
    let one = F::one;
    let i = F::imag_unit;
    Matrix::from_rows(
        4,
        4,
        vec![
            one(), o(), o(), one(),
            o(), i(), i(), o(),
            o(), -one(), one(), o(),
            i(), o(), o(), -i(),
        ],
    )
}

/// `T` itself, exactly, in `Q(i, √2)`.
pub fn t_matrix() -> Matrix<Exact> {
    let inv_sqrt2 = Exact::sqrt2() * Exact::from_ratio(1, 2);
    t_scaled::<Exact>().scale(&inv_sqrt2)
}

/// `Ω = C ν^{⊗(n-2)} Cᵗ`.
///
/// `ν^{⊗m}` maps column `x` to its bitwise complement with sign
/// `(-1)^{popcount(x)}`, so the product is evaluated without forming it.
pub fn omega<F: Scalar>(c: &CoeffMatrix<F>) -> Matrix<F> {
    let m = &c.matrix;
    let cols = m.cols();
    let mask = cols - 1;
    let mut out = Matrix::zeros(4, 4);
    for r in 0..4 {
        for s in 0..4 {
            let mut acc = F::zero();
            for x in 0..cols {
                let a = &m[(r, x)];
                if a.is_zero() {
                    continue;
                }
                let b = &m[(s, x ^ mask)];
                if b.is_zero() {
                    continue;
                }
                let term = a.clone() * b;
                acc = if x.count_ones() % 2 == 0 { acc + term } else { acc - term };
            }
            out[(r, s)] = acc;
        }
    }
    out
}

/// `S = [T C] ν^{⊗(n-2)} [T C]ᵗ = ½ T̃ Ω T̃ᵗ`.
pub fn s_matrix<F: Scalar>(state: &PureState<F>, row_bits: RowBits) -> Result<SMatrix<F>> {
    let c = coeff_matrix(state, row_bits)?;
    let t = t_scaled::<F>();
    let s = t
        .mul(&omega(&c))
        .mul(&t.transpose())
        .scale(&F::from_ratio(1, 2));
    Ok(SMatrix {
        row_bits: c.row_bits,
        matrix: s,
    })
}

/// Four-qubit form `S = (T C T⁺)(T C T⁺)ᵗ = ¼ (T̃ C T̃⁺)(T̃ C T̃⁺)ᵗ`.
pub fn s_matrix_four_qubit<F: Scalar>(state: &PureState<F>, row_bits: RowBits) -> Result<SMatrix<F>> {
    if state.qubits() != 4 {
        return Err(Error::InvalidRowBits {
            q1: row_bits.q1,
            q2: row_bits.q2,
            n: state.qubits(),
        });
    }
    let c = coeff_matrix(state, row_bits)?;
    let t = t_scaled::<F>();
    let g = t.mul(&c.matrix).mul(&t.adjoint());
    Ok(SMatrix {
        row_bits: c.row_bits,
        matrix: g.mul(&g.transpose()).scale(&F::from_ratio(1, 4)),
    })
}

/// `G = T (A ⊗ B) T⁺ = ½ T̃ (A ⊗ B) T̃⁺`.
pub fn g_matrix<F: Scalar>(a: &Matrix<F>, b: &Matrix<F>) -> Matrix<F> {
    let t = t_scaled::<F>();
    t.mul(&a.kron(b))
        .mul(&t.adjoint())
        .scale(&F::from_ratio(1, 2))
}
