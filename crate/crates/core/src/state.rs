//! Pure states and invertible local operators.
//!
//! Basis label `i` has binary expansion `q1 q2 … qn` with `q1` the most
//! significant bit; qubit 1 is the leftmost tensor factor.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::scalar::{Exact, Scalar};

#[derive(Clone, PartialEq, Debug)]
pub struct PureState<F> {
    n: usize,
    amps: Vec<F>,
}

impl<F: Scalar> PureState<F> {
    /// Validates length `2^n` and that some amplitude is nonzero.
    /// Normalization is not required.
    pub fn new(n: usize, amps: Vec<F>) -> Result<Self> {
        if n < 2 {
            return Err(Error::TooFewQubits(n));
        }
        let expected = 1usize << n;
        if amps.len() != expected {
            return Err(Error::LengthMismatch {
                n,
                expected,
                actual: amps.len(),
            });
        }
        if amps.iter().all(|a| a.is_zero()) {
            return Err(Error::ZeroState);
        }
        Ok(Self { n, amps })
    }

    /// Builds a state from `(index, amplitude)` pairs; repeated indices add.
    pub fn from_sparse(n: usize, entries: impl IntoIterator<Item = (usize, F)>) -> Result<Self> {
        if n < 2 {
            return Err(Error::TooFewQubits(n));
        }
        let mut amps = vec![F::zero(); 1 << n];
        for (index, value) in entries {
            let slot = amps
                .get_mut(index)
                .ok_or(Error::IndexOutOfRange { index, n })?;
            *slot = slot.clone() + value;
        }
        Self::new(n, amps)
    }

    pub fn qubits(&self) -> usize {
        self.n
    }

    pub fn amplitudes(&self) -> &[F] {
        &self.amps
    }

    pub fn amplitude(&self, index: usize) -> &F {
        &self.amps[index]
    }

    /// Bit of qubit `q` (1-based) in basis label `index`.
    pub fn bit(&self, index: usize, q: usize) -> usize {
        (index >> (self.n - q)) & 1
    }

    pub fn scaled(&self, c: &F) -> Result<Self> {
        Self::new(self.n, self.amps.iter().map(|a| a.clone() * c).collect())
    }

    pub fn map<G: Scalar>(&self, f: impl Fn(&F) -> G) -> PureState<G> {
        PureState {
            n: self.n,
            amps: self.amps.iter().map(f).collect(),
        }
    }
}

/// Whether operators range over GL(2) or SL(2).
#[derive(Clone, Copy, PartialEq, Eq, Debug, Hash)]
pub enum GroupMode {
    General,
    Special,
}

/// A 2×2 invertible operator acting on one qubit.
#[derive(Clone, PartialEq, Debug)]
pub struct LocalOperator<F> {
    m: Matrix<F>,
}

impl<F: Scalar> LocalOperator<F> {
    pub fn new(entries: [F; 4]) -> Self {
        Self {
            m: Matrix::from_rows(2, 2, entries.to_vec()),
        }
    }

    pub fn identity() -> Self {
        Self {
            m: Matrix::identity(2),
        }
    }

    pub fn matrix(&self) -> &Matrix<F> {
        &self.m
    }

    pub fn det(&self) -> F {
        self.m[(0, 0)].clone() * &self.m[(1, 1)] - self.m[(0, 1)].clone() * &self.m[(1, 0)]
    }

    pub fn inverse(&self) -> Option<Self> {
        let dinv = self.det().inv()?;
        let m = &self.m;
        Some(Self::new([
            m[(1, 1)].clone() * &dinv,
            -(m[(0, 1)].clone() * &dinv),
            -(m[(1, 0)].clone() * &dinv),
            m[(0, 0)].clone() * &dinv,
        ]))
    }

    pub fn scaled(&self, c: &F) -> Self {
        Self { m: self.m.scale(c) }
    }

    pub fn map<G: Scalar>(&self, f: impl Fn(&F) -> G) -> LocalOperator<G> {
        LocalOperator { m: self.m.map(f) }
    }
}

/// One operator per qubit, `A1 ⊗ … ⊗ An`.
#[derive(Clone, PartialEq, Debug)]
pub struct OperatorSet<F> {
    ops: Vec<LocalOperator<F>>,
}

impl<F: Scalar> OperatorSet<F> {
    pub fn new(ops: Vec<LocalOperator<F>>) -> Self {
        Self { ops }
    }

    pub fn identity(n: usize) -> Self {
        Self::new(vec![LocalOperator::identity(); n])
    }

    pub fn len(&self) -> usize {
        self.ops.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ops.is_empty()
    }

    pub fn ops(&self) -> &[LocalOperator<F>] {
        &self.ops
    }

    /// `k = Π det A_i`, the factor by which every S-matrix spectrum scales.
    pub fn scale_factor(&self) -> F {
        self.ops.iter().fold(F::one(), |acc, op| acc * op.det())
    }

    pub fn inverse(&self) -> Option<Self> {
        self.ops
            .iter()
            .map(|op| op.inverse())
            .collect::<Option<Vec<_>>>()
            .map(Self::new)
    }

    pub fn map<G: Scalar>(&self, f: impl Fn(&F) -> G + Copy) -> OperatorSet<G> {
        OperatorSet::new(self.ops.iter().map(|op| op.map(f)).collect())
    }

    /// Checks every operator against the group mode. Float determinants are
    /// compared with relative tolerance `tol`.
    pub fn validate(&self, mode: GroupMode, tol: f64) -> Result<()> {
        for (idx, op) in self.ops.iter().enumerate() {
            let det = op.det();
            let qubit = idx + 1;
            match mode {
                GroupMode::General => {
                    let singular = if det.is_zero() {
                        true
                    } else {
                        let scale = op.m.to_c64().max_abs().powi(2);
                        det.to_c64().norm() <= tol * scale
                    };
                    if singular {
                        return Err(Error::SingularOperator { qubit });
                    }
                }
                GroupMode::Special => {
                    let off = (det - F::one()).to_c64().norm();
                    if off > tol {
                        return Err(Error::NotSpecialLinear { qubit });
                    }
                }
            }
        }
        Ok(())
    }
}

/// `|ψ'> = A1 ⊗ A2 ⊗ … ⊗ An |ψ>`.
pub fn apply_local_operators<F: Scalar>(
    state: &PureState<F>,
    ops: &OperatorSet<F>,
) -> Result<PureState<F>> {
    let n = state.qubits();
    if ops.len() != n {
        return Err(Error::OperatorCount {
            expected: n,
            actual: ops.len(),
        });
    }
    let mut amps = state.amplitudes().to_vec();
    for (idx, op) in ops.ops().iter().enumerate() {
        let m = op.matrix();
        if op.det().is_zero() {
            return Err(Error::SingularOperator { qubit: idx + 1 });
        }
        let stride = 1usize << (n - 1 - idx);
        for base in 0..amps.len() {
            if base & stride != 0 {
                continue;
            }
            let lo = amps[base].clone();
            let hi = amps[base | stride].clone();
            amps[base] = m[(0, 0)].clone() * &lo + m[(0, 1)].clone() * &hi;
            amps[base | stride] = m[(1, 0)].clone() * &lo + m[(1, 1)].clone() * &hi;
        }
    }
    PureState::new(n, amps)
}

/// Upper bound on rejected draws before giving up.
pub const MAX_REDRAWS: usize = 10_000;

/// Range of the real and imaginary parts of random operator entries.
pub const ENTRY_BOUND: i64 = 4;

/// Deterministic random local operators with Gaussian-integer entries whose
/// real and imaginary parts lie in `[-4, 4]`. In SL mode each matrix is
/// divided by a square root of its determinant, and matrices whose
/// determinant has no Gaussian-rational square root are redrawn.
pub fn random_local_operators(n: usize, mode: GroupMode, seed: u64) -> Result<OperatorSet<Exact>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    random_local_operators_with(n, mode, &mut rng)
}

/// Same as [`random_local_operators`] with a caller-provided generator.
pub fn random_local_operators_with<R: Rng>(
    n: usize,
    mode: GroupMode,
    rng: &mut R,
) -> Result<OperatorSet<Exact>> {
    if n < 2 {
        return Err(Error::TooFewQubits(n));
    }
    let mut ops = Vec::with_capacity(n);
    for _ in 0..n {
        ops.push(draw_operator(mode, rng)?);
    }
    Ok(OperatorSet::new(ops))
}

fn draw_operator<R: Rng>(mode: GroupMode, rng: &mut R) -> Result<LocalOperator<Exact>> {
    for _ in 0..MAX_REDRAWS {
        let mut entry = || {
            Exact::from_gaussian(
                rng.gen_range(-ENTRY_BOUND..=ENTRY_BOUND),
                rng.gen_range(-ENTRY_BOUND..=ENTRY_BOUND),
            )
        };
        let op = LocalOperator::new([entry(), entry(), entry(), entry()]);
        let det = op.det();
        if det.is_zero() {
            continue;
        }
        match mode {
            GroupMode::General => return Ok(op),
            GroupMode::Special => {
                // Gaussian-rational roots only, so the exact path stays in Q(i)
                let Some(root) = det.a.sqrt() else { continue };
                let root = Exact::new(root, Default::default());
                let scaled = op.scaled(&root.inv().expect("nonzero root"));
                debug_assert_eq!(scaled.det(), Exact::one());
                return Ok(scaled);
            }
        }
    }
    Err(Error::RedrawExhausted(MAX_REDRAWS))
}

/// Random state with Gaussian-integer amplitudes in `[-bound, bound]`,
/// each amplitude independently zeroed with probability `sparsity`.
pub fn random_state<R: Rng>(n: usize, bound: i64, sparsity: f64, rng: &mut R) -> PureState<Exact> {
    loop {
        let amps: Vec<Exact> = (0..1usize << n)
            .map(|_| {
                if rng.gen_bool(sparsity) {
                    Exact::zero()
                } else {
                    Exact::from_gaussian(rng.gen_range(-bound..=bound), rng.gen_range(-bound..=bound))
                }
            })
            .collect();
        if let Ok(s) = PureState::new(n, amps) {
            return s;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn basis(n: usize, idx: usize) -> PureState<Exact> {
        PureState::from_sparse(n, [(idx, Exact::one())]).unwrap()
    }

    #[test]
    fn construction_errors() {
        assert_eq!(
            PureState::new(3, vec![Exact::one(); 7]).unwrap_err(),
            Error::LengthMismatch {
                n: 3,
                expected: 8,
                actual: 7
            }
        );
        assert_eq!(
            PureState::new(2, vec![Exact::zero(); 4]).unwrap_err(),
            Error::ZeroState
        );
        assert!(PureState::<Exact>::from_sparse(2, [(4, Exact::one())]).is_err());
    }

    #[test]
    fn identity_ops_fix_state() {
        let s = PureState::from_sparse(3, [(0, Exact::one()), (5, Exact::from_gaussian(2, -1))]).unwrap();
        let out = apply_local_operators(&s, &OperatorSet::identity(3)).unwrap();
        assert_eq!(out, s);
    }

    #[test]
    fn bit_flip_on_first_qubit() {
        let x = LocalOperator::new([Exact::zero(), Exact::one(), Exact::one(), Exact::zero()]);
        let ops = OperatorSet::new(vec![x, LocalOperator::identity(), LocalOperator::identity()]);
        let out = apply_local_operators(&basis(3, 0), &ops).unwrap();
        assert_eq!(out, basis(3, 0b100));
    }

    #[test]
    fn scalar_multiple() {
        let ghz = PureState::from_sparse(3, [(0, Exact::one()), (7, Exact::one())]).unwrap();
        let two = LocalOperator::identity().scaled(&Exact::from_i64(2));
        let ops = OperatorSet::new(vec![two, LocalOperator::identity(), LocalOperator::identity()]);
        let out = apply_local_operators(&ghz, &ops).unwrap();
        let expected =
            PureState::from_sparse(3, [(0, Exact::from_i64(2)), (7, Exact::from_i64(2))]).unwrap();
        assert_eq!(out, expected);
    }

    #[test]
    fn operator_count_and_singular() {
        let s = basis(3, 1);
        assert!(matches!(
            apply_local_operators(&s, &OperatorSet::identity(2)),
            Err(Error::OperatorCount { expected: 3, actual: 2 })
        ));
        let sing = LocalOperator::new([Exact::one(), Exact::one(), Exact::one(), Exact::one()]);
        let ops = OperatorSet::new(vec![LocalOperator::identity(), sing, LocalOperator::identity()]);
        assert_eq!(
            apply_local_operators(&s, &ops).unwrap_err(),
            Error::SingularOperator { qubit: 2 }
        );
    }

    #[test]
    fn random_operator_modes() {
        let sl = random_local_operators(4, GroupMode::Special, 1).unwrap();
        assert_eq!(sl.len(), 4);
        assert!(sl.ops().iter().all(|op| op.det() == Exact::one()));
        sl.validate(GroupMode::Special, 0.0).unwrap();
        let gl = random_local_operators(3, GroupMode::General, 7).unwrap();
        assert_eq!(gl.len(), 3);
        assert!(gl.ops().iter().all(|op| !op.det().is_zero()));
        assert_eq!(gl, random_local_operators(3, GroupMode::General, 7).unwrap());
        assert_ne!(gl, random_local_operators(3, GroupMode::General, 8).unwrap());
    }

    #[test]
    fn float_validation_uses_tolerance() {
        use num_complex::Complex64;
        let op = LocalOperator::new([
            Complex64::new(1.0 + 1e-12, 0.0),
            Complex64::new(0.0, 0.0),
            Complex64::new(0.0, 0.0),
            Complex64::new(1.0, 0.0),
        ]);
        let set = OperatorSet::new(vec![op.clone(), op]);
        set.validate(GroupMode::Special, 1e-9).unwrap();
        assert!(set.validate(GroupMode::Special, 1e-15).is_err());
    }
}
