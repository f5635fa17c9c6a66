//! Orbit checks: invariants before and after random local operators.
//!
//! Under `ψ' = (A1 ⊗ … ⊗ An) ψ` every S-matrix satisfies
//! `S(ψ') ~ k·S(ψ)` with `k = Π det Ai`. A trial draws one operator set and
//! checks that relation at every row-bit pair.

use std::fmt;

use num_complex::Complex64;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::Result;
use crate::parallel::Execution;
use crate::scalar::{Exact, Scalar};
use crate::smatrix::{s_matrix, RowBits};
use crate::spectral::{jordan_form_float, Eigenvalue, ExactSpectrum, JordanForm, Tolerances};
use crate::state::{apply_local_operators, random_local_operators_with, GroupMode, OperatorSet, PureState};

/// Which spectral path a check runs on.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Default)]
pub enum Path {
    #[default]
    Exact,
    Float,
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum TrialStatus {
    Pass,
    Fail,
    /// Float path only: clustering could not be trusted, nothing asserted.
    Ambiguous,
}

#[derive(Clone, PartialEq, Debug)]
pub struct TrialOutcome {
    pub trial: usize,
    /// `Π det Ai`.
    pub k: Exact,
    pub status: TrialStatus,
    pub detail: Option<String>,
}

/// Generator for one trial: a fixed seed with the trial index as stream, so
/// trials are independent of each other and of scheduling.
pub fn trial_rng(seed: u64, trial: usize) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(trial as u64);
    rng
}

fn same_value(a: &Eigenvalue, b: &Eigenvalue) -> bool {
    match (a, b) {
        (Eigenvalue::Exact(x), Eigenvalue::Exact(y)) => x == y,
        (
            Eigenvalue::Algebraic { defining: p, approx: x },
            Eigenvalue::Algebraic { defining: q, approx: y },
        ) => p.monic() == q.monic() && (x - y).norm() <= 1e-6 * (1.0 + x.norm()),
        _ => false,
    }
}

/// Exact Jordan forms agree class by class (values and block sizes).
fn exact_jordan_eq(a: &JordanForm, b: &JordanForm) -> bool {
    if a.classes().len() != b.classes().len() {
        return false;
    }
    let mut used = vec![false; b.classes().len()];
    a.classes().iter().all(|ca| {
        let hit = b
            .classes()
            .iter()
            .enumerate()
            .position(|(j, cb)| !used[j] && cb.blocks == ca.blocks && same_value(&ca.value, &cb.value));
        hit.map(|j| used[j] = true).is_some()
    })
}

/// Float Jordan forms agree within `rel·radius + abs`.
fn float_jordan_eq(a: &JordanForm, b: &JordanForm, tol: Tolerances) -> bool {
    if a.classes().len() != b.classes().len() {
        return false;
    }
    let radius = b
        .classes()
        .iter()
        .map(|c| c.value.approx().norm())
        .fold(0.0, f64::max);
    let gap = tol.rel * radius + tol.abs;
    let mut used = vec![false; b.classes().len()];
    a.classes().iter().all(|ca| {
        let za = ca.value.approx();
        let hit = b
            .classes()
            .iter()
            .enumerate()
            .filter(|(j, cb)| !used[*j] && cb.blocks == ca.blocks)
            .map(|(j, cb)| (j, (cb.value.approx() - za).norm()))
            .filter(|&(_, d)| d <= gap)
            .min_by(|x, y| x.1.total_cmp(&y.1));
        hit.map(|(j, _)| used[j] = true).is_some()
    })
}

fn check_exact(a: &ExactSpectrum, b: &ExactSpectrum, k: &Exact) -> std::result::Result<(), String> {
    let cp = a.char_poly.scaled(k);
    if b.char_poly != cp {
        return Err(format!(
            "characteristic polynomial {} is not {}",
            b.char_poly.to_poly(),
            cp.to_poly()
        ));
    }
    let scaled: Vec<_> = a.invariant_factors.iter().map(|f| f.scale_roots(k).monic()).collect();
    if b.invariant_factors != scaled {
        return Err("invariant factors do not scale by k".into());
    }
    let ja = a.jordan.scaled(k);
    if !exact_jordan_eq(&ja, &b.jordan) {
        return Err(format!("jordan form {} is not {}", b.jordan, ja));
    }
    Ok(())
}

/// Checks one operator set against one state at the given rows.
pub fn check_operators(
    state: &PureState<Exact>,
    ops: &OperatorSet<Exact>,
    rows: &[RowBits],
    path: Path,
    tol: Tolerances,
) -> Result<(Exact, TrialStatus, Option<String>)> {
    let k = ops.scale_factor();
    match path {
        Path::Exact => {
            let moved = apply_local_operators(state, ops)?;
            for &rb in rows {
                let a = ExactSpectrum::of(&s_matrix(state, rb)?.matrix);
                let b = ExactSpectrum::of(&s_matrix(&moved, rb)?.matrix);
                if let Err(why) = check_exact(&a, &b, &k) {
                    return Ok((k, TrialStatus::Fail, Some(format!("{rb}: {why}"))));
                }
            }
        }
        Path::Float => {
            let fs = state.map(|a| a.to_c64());
            let moved = apply_local_operators(&fs, &ops.map(|a: &Exact| a.to_c64()))?;
            let kf: Complex64 = k.to_c64();
            for &rb in rows {
                let a = jordan_form_float(&s_matrix(&fs, rb)?.matrix, tol);
                let b = jordan_form_float(&s_matrix(&moved, rb)?.matrix, tol);
                if let Some(why) = a.ambiguity.or(b.ambiguity) {
                    return Ok((k, TrialStatus::Ambiguous, Some(format!("{rb}: {why}"))));
                }
                let ja = scale_float(&a.jordan, kf);
                if !float_jordan_eq(&ja, &b.jordan, tol) {
                    return Ok((
                        k,
                        TrialStatus::Fail,
                        Some(format!("{rb}: jordan form {} is not {}", b.jordan, ja)),
                    ));
                }
            }
        }
    }
    Ok((k, TrialStatus::Pass, None))
}

fn scale_float(j: &JordanForm, k: Complex64) -> JordanForm {
    JordanForm::new(
        j.classes()
            .iter()
            .map(|c| crate::spectral::EigenClass {
                value: Eigenvalue::Approx(c.value.approx() * k),
                blocks: c.blocks.clone(),
            })
            .collect(),
    )
}

#[derive(Clone, Copy, PartialEq, Debug)]
pub struct VerifyConfig {
    pub trials: usize,
    pub seed: u64,
    pub group: GroupMode,
    pub path: Path,
    pub tol: Tolerances,
    pub exec: Execution,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        Self {
            trials: 100,
            seed: 0,
            group: GroupMode::General,
            path: Path::Exact,
            tol: Tolerances::default(),
            exec: Execution::default(),
        }
    }
}

#[derive(Clone, PartialEq, Debug)]
pub struct VerifyReport {
    pub config: VerifyConfig,
    pub outcomes: Vec<TrialOutcome>,
}

impl VerifyReport {
    fn count(&self, s: TrialStatus) -> usize {
        self.outcomes.iter().filter(|o| o.status == s).count()
    }

    pub fn passed(&self) -> usize {
        self.count(TrialStatus::Pass)
    }

    pub fn failed(&self) -> usize {
        self.count(TrialStatus::Fail)
    }

    pub fn ambiguous(&self) -> usize {
        self.count(TrialStatus::Ambiguous)
    }
}

impl fmt::Display for VerifyReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for o in &self.outcomes {
            let tag = match o.status {
                TrialStatus::Pass => "pass",
                TrialStatus::Fail => "FAIL",
                TrialStatus::Ambiguous => "ambiguous",
            };
            write!(f, "trial {:>4}  k = {}  {tag}", o.trial, o.k)?;
            if let Some(d) = &o.detail {
                write!(f, "  {d}")?;
            }
            writeln!(f)?;
        }
        writeln!(
            f,
            "{}/{} pass, {} fail, {} ambiguous",
            self.passed(),
            self.outcomes.len(),
            self.failed(),
            self.ambiguous()
        )
    }
}

/// Runs `config.trials` random operator sets against one state. In SL mode
/// each trial also requires `k = 1`, so invariants must match exactly.
pub fn verify(state: &PureState<Exact>, config: VerifyConfig) -> Result<VerifyReport> {
    let rows = RowBits::all(state.qubits());
    let outcomes = config
        .exec
        .map_range(config.trials, |trial| -> Result<TrialOutcome> {
            let mut rng = trial_rng(config.seed, trial);
            let ops = random_local_operators_with(state.qubits(), config.group, &mut rng)?;
            let (k, mut status, mut detail) = check_operators(state, &ops, &rows, config.path, config.tol)?;
            if config.group == GroupMode::Special && k != Exact::one() && status != TrialStatus::Ambiguous {
                status = TrialStatus::Fail;
                detail = Some(format!("special linear set with k = {k}"));
            }
            Ok(TrialOutcome {
                trial,
                k,
                status,
                detail,
            })
        })
        .into_iter()
        .collect::<Result<Vec<_>>>()?;
    Ok(VerifyReport { config, outcomes })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::fixture_state;

    #[test]
    fn theta1_exact_and_float() {
        let s = fixture_state("theta1", &[]).unwrap();
        for path in [Path::Exact, Path::Float] {
            let r = verify(
                &s,
                VerifyConfig {
                    trials: 8,
                    seed: 42,
                    path,
                    ..VerifyConfig::default()
                },
            )
            .unwrap();
            assert_eq!(r.failed(), 0, "{r}");
        }
    }

    #[test]
    fn special_linear_keeps_k_one() {
        let s = fixture_state("zeta4", &[]).unwrap();
        let r = verify(
            &s,
            VerifyConfig {
                trials: 6,
                group: GroupMode::Special,
                ..VerifyConfig::default()
            },
        )
        .unwrap();
        assert_eq!(r.passed(), 6, "{r}");
        assert!(r.outcomes.iter().all(|o| o.k == Exact::one()));
    }

    #[test]
    fn deterministic_and_schedule_free() {
        let s = fixture_state("w", &[]).unwrap();
        let cfg = VerifyConfig {
            trials: 5,
            seed: 7,
            ..VerifyConfig::default()
        };
        let a = verify(&s, cfg).unwrap();
        let b = verify(
            &s,
            VerifyConfig {
                exec: Execution::Sequential,
                ..cfg
            },
        )
        .unwrap();
        assert_eq!(a.to_string(), b.to_string());
    }

    #[test]
    fn wrong_k_is_caught() {
        let s = fixture_state("ghz", &[]).unwrap();
        let a = ExactSpectrum::of(&s_matrix(&s, RowBits::new(1, 2, 3).unwrap()).unwrap().matrix);
        assert!(check_exact(&a, &a, &Exact::one()).is_ok());
        assert!(check_exact(&a, &a, &Exact::from_i64(2)).is_err());
    }
}
