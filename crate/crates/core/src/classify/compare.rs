//! Proportional and exact comparison of S-matrix invariants.
//!
//! Exact path: if `S_b ~ k S_a` then every invariant factor of `σI - S_b`
//! is the matching factor of `S_a` with roots scaled by `k`, i.e. its
//! coefficient of `σ^i` is `k^(deg-i)` times the original. Collecting the
//! relations `k^e = r` over all coefficients and reducing them with Bezout
//! gives the complete solution set `{k : k^d = ρ}` or proves it empty. This
//! never needs an eigenvalue, so irrational spectra are handled exactly.

use std::fmt;

use num_complex::Complex64;
use num_integer::Integer;

use crate::poly::Poly;
use crate::scalar::{Exact, Scalar};
use crate::spectral::{EigenClass, ExactSpectrum, FloatSpectrum, JordanForm, Tolerances};

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum ComparisonMode {
    /// Invariants must agree up to one scale `k != 0`.
    Proportional,
    /// Invariants must agree with `k = 1` (determinant-one operators).
    Exact,
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum InvariantKind {
    Spectrum,
    Sjnf,
}

impl fmt::Display for InvariantKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            InvariantKind::Spectrum => "SPECTRUM",
            InvariantKind::Sjnf => "SJNF",
        })
    }
}

/// The scales `k != 0` reconciling two invariants.
#[derive(Clone, PartialEq, Debug)]
#[allow(clippy::large_enum_variant)]
pub enum ScaleSet {
    /// Every `k != 0` works (both sides nilpotent).
    Any,
    /// Exactly the `k` with `k^degree = value`.
    Roots { degree: u32, value: Exact },
    /// Numerically consistent scales.
    Approx(Vec<Complex64>),
    Empty,
}

impl ScaleSet {
    pub fn is_empty(&self) -> bool {
        match self {
            ScaleSet::Empty => true,
            ScaleSet::Approx(v) => v.is_empty(),
            _ => false,
        }
    }

    /// Whether the exact scale `k` belongs to the set.
    pub fn contains(&self, k: &Exact) -> bool {
        match self {
            ScaleSet::Any => !k.is_zero(),
            ScaleSet::Roots { degree, value } => k.powi(*degree) == *value,
            ScaleSet::Approx(v) => {
                let kc = k.to_c64();
                v.iter().any(|z| (z - kc).norm() <= 1e-6 * kc.norm().max(1.0))
            }
            ScaleSet::Empty => false,
        }
    }
}

impl fmt::Display for ScaleSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ScaleSet::Any => f.write_str("any k"),
            ScaleSet::Roots { degree: 1, value } => write!(f, "k = {value}"),
            ScaleSet::Roots { degree, value } => write!(f, "k^{degree} = {value}"),
            ScaleSet::Approx(v) => {
                let parts: Vec<String> = v.iter().map(|z| format!("{:.6}{:+.6}i", z.re, z.im)).collect();
                write!(f, "k in {{{}}}", parts.join(", "))
            }
            ScaleSet::Empty => f.write_str("no k"),
        }
    }
}

/// Invariants of one S-matrix, from either path.
#[derive(Clone, PartialEq, Debug)]
pub enum Invariants {
    Exact(ExactSpectrum),
    Float(FloatSpectrum),
}

impl Invariants {
    pub fn jordan(&self) -> &JordanForm {
        match self {
            Invariants::Exact(e) => &e.jordan,
            Invariants::Float(f) => &f.jordan,
        }
    }

    pub fn ambiguity(&self) -> Option<&str> {
        match self {
            Invariants::Exact(_) => None,
            Invariants::Float(f) => f.ambiguity.as_deref(),
        }
    }
}

/// Outcome of comparing two invariants at one row-bit pair.
#[derive(Clone, PartialEq, Debug)]
pub struct Comparison {
    /// Scales reconciling the characteristic polynomials (spectra).
    pub spectrum: ScaleSet,
    /// Scales reconciling the full Jordan forms.
    pub sjnf: ScaleSet,
    pub ambiguity: Option<String>,
}

impl Comparison {
    /// The invariant proving inequivalence, if any. Ambiguous float results
    /// never prove anything.
    pub fn mismatch(&self) -> Option<InvariantKind> {
        if self.ambiguity.is_some() {
            None
        } else if self.spectrum.is_empty() {
            Some(InvariantKind::Spectrum)
        } else if self.sjnf.is_empty() {
            Some(InvariantKind::Sjnf)
        } else {
            None
        }
    }
}

/// `k^e = r` relations between matching coefficients, or `None` when a
/// coefficient vanishes on one side only (or degrees differ).
fn relations(pa: &Poly<Exact>, pb: &Poly<Exact>) -> Option<Vec<(u32, Exact)>> {
    let (pa, pb) = (pa.monic(), pb.monic());
    let deg = pa.degree()?;
    if pb.degree() != Some(deg) {
        return None;
    }
    let mut out = Vec::new();
    for i in 0..deg {
        let (ca, cb) = (pa.coeff(i), pb.coeff(i));
        match (ca.is_zero(), cb.is_zero()) {
            (true, true) => {}
            (false, false) => out.push(((deg - i) as u32, cb.div_checked(&ca)?)),
            _ => return None,
        }
    }
    Some(out)
}

fn pow_signed(x: &Exact, e: i64) -> Exact {
    let p = x.powi(e.unsigned_abs() as u32);
    if e < 0 {
        p.inv().expect("nonzero ratio")
    } else {
        p
    }
}

/// Solves `k^e_i = r_i` for all `i` over `C \ {0}`.
pub fn solve_power_relations(rel: &[(u32, Exact)], mode: ComparisonMode) -> ScaleSet {
    if mode == ComparisonMode::Exact {
        return if rel.iter().all(|(_, r)| *r == Exact::one()) {
            ScaleSet::Roots {
                degree: 1,
                value: Exact::one(),
            }
        } else {
            ScaleSet::Empty
        };
    }
    let Some((first, rest)) = rel.split_first() else {
        return ScaleSet::Any;
    };
    // invariant: k^g = rho
    let (mut g, mut rho) = (first.0 as i64, first.1.clone());
    for (e, r) in rest {
        let e = *e as i64;
        let ext = g.extended_gcd(&e);
        if ext.gcd == g {
            continue;
        }
        rho = pow_signed(&rho, ext.x) * pow_signed(r, ext.y);
        g = ext.gcd;
    }
    let consistent = rel
        .iter()
        .all(|(e, r)| rho.powi(*e / g as u32) == *r);
    if consistent {
        ScaleSet::Roots {
            degree: g as u32,
            value: rho,
        }
    } else {
        ScaleSet::Empty
    }
}

/// Intersection of the solution set of two families of relations.
fn solve_all(groups: &[Option<Vec<(u32, Exact)>>], mode: ComparisonMode) -> ScaleSet {
    let mut all = Vec::new();
    for g in groups {
        match g {
            Some(r) => all.extend(r.iter().cloned()),
            None => return ScaleSet::Empty,
        }
    }
    solve_power_relations(&all, mode)
}

fn compare_exact(a: &ExactSpectrum, b: &ExactSpectrum, mode: ComparisonMode) -> Comparison {
    let spectrum = solve_all(&[relations(&a.char_poly.to_poly(), &b.char_poly.to_poly())], mode);
    let sjnf = if spectrum.is_empty() || a.invariant_factors.len() != b.invariant_factors.len() {
        ScaleSet::Empty
    } else {
        let groups: Vec<_> = a
            .invariant_factors
            .iter()
            .zip(&b.invariant_factors)
            .map(|(pa, pb)| {
                if pa.is_constant() && pb.is_constant() {
                    Some(Vec::new())
                } else {
                    relations(pa, pb)
                }
            })
            .collect();
        solve_all(&groups, mode)
    };
    Comparison {
        spectrum,
        sjnf,
        ambiguity: None,
    }
}

/// Pairs the classes of `a` scaled by `k` with those of `b`.
fn classes_match(a: &[&EigenClass], b: &[&EigenClass], k: Complex64, blocks: bool, tol: Tolerances, radius: f64) -> bool {
    if a.len() != b.len() {
        return false;
    }
    let mut used = vec![false; b.len()];
    'outer: for ca in a {
        let target = ca.value.approx() * k;
        for (j, cb) in b.iter().enumerate() {
            if used[j] {
                continue;
            }
            let same_shape = if blocks {
                ca.blocks == cb.blocks
            } else {
                ca.algebraic_multiplicity() == cb.algebraic_multiplicity()
            };
            if same_shape && (cb.value.approx() - target).norm() <= tol.rel * radius + tol.abs {
                used[j] = true;
                continue 'outer;
            }
        }
        return false;
    }
    true
}

fn float_scales(a: &JordanForm, b: &JordanForm, blocks: bool, mode: ComparisonMode, tol: Tolerances) -> ScaleSet {
    let zero_shape = |j: &JordanForm| -> Vec<usize> {
        match j.zero_class() {
            Some(c) if blocks => c.blocks.clone(),
            Some(c) => vec![c.algebraic_multiplicity()],
            None => Vec::new(),
        }
    };
    if zero_shape(a) != zero_shape(b) {
        return ScaleSet::Empty;
    }
    fn nonzero(j: &JordanForm) -> Vec<&EigenClass> {
        j.classes().iter().filter(|c| !c.value.is_zero()).collect()
    }
    let (na, nb) = (nonzero(a), nonzero(b));
    if na.is_empty() && nb.is_empty() {
        return match mode {
            ComparisonMode::Proportional => ScaleSet::Any,
            ComparisonMode::Exact => ScaleSet::Approx(vec![Complex64::new(1.0, 0.0)]),
        };
    }
    if na.len() != nb.len() {
        return ScaleSet::Empty;
    }
    let radius = nb.iter().map(|c| c.value.approx().norm()).fold(0.0, f64::max);
    let candidates: Vec<Complex64> = match mode {
        ComparisonMode::Exact => vec![Complex64::new(1.0, 0.0)],
        ComparisonMode::Proportional => {
            let pivot = na[0].value.approx();
            nb.iter().map(|c| c.value.approx() / pivot).collect()
        }
    };
    let mut found: Vec<Complex64> = Vec::new();
    for k in candidates {
        if classes_match(&na, &nb, k, blocks, tol, radius)
            && !found.iter().any(|f| (f - k).norm() <= tol.rel * k.norm() + tol.abs)
        {
            found.push(k);
        }
    }
    ScaleSet::Approx(found)
}

fn compare_float(a: &JordanForm, b: &JordanForm, mode: ComparisonMode, tol: Tolerances) -> Comparison {
    Comparison {
        spectrum: float_scales(a, b, false, mode, tol),
        sjnf: float_scales(a, b, true, mode, tol),
        ambiguity: None,
    }
}

/// Compares two invariants. Exact invariants on both sides are compared
/// exactly; anything else goes through the floating comparison.
pub fn proportional_compare(a: &Invariants, b: &Invariants, mode: ComparisonMode, tol: Tolerances) -> Comparison {
    let mut out = match (a, b) {
        (Invariants::Exact(x), Invariants::Exact(y)) => compare_exact(x, y, mode),
        _ => compare_float(a.jordan(), b.jordan(), mode, tol),
    };
    let flags: Vec<&str> = [a.ambiguity(), b.ambiguity()].into_iter().flatten().collect();
    if !flags.is_empty() {
        out.ambiguity = Some(flags.join("; "));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrix::Matrix;
    use crate::spectral::jordan_form_float;

    fn ex(v: i64) -> Exact {
        Exact::from_i64(v)
    }

    fn exact_inv(m: &Matrix<Exact>) -> Invariants {
        Invariants::Exact(ExactSpectrum::of(m))
    }

    fn jordan_matrix(blocks: &[(i64, usize)]) -> Matrix<Exact> {
        let mut m = Matrix::zeros(4, 4);
        let mut at = 0;
        for &(v, size) in blocks {
            for i in 0..size {
                m[(at + i, at + i)] = ex(v);
                if i + 1 < size {
                    m[(at + i, at + i + 1)] = Exact::one();
                }
            }
            at += size;
        }
        m
    }

    fn cmp(a: &Matrix<Exact>, b: &Matrix<Exact>) -> Comparison {
        proportional_compare(&exact_inv(a), &exact_inv(b), ComparisonMode::Proportional, Tolerances::default())
    }

    #[test]
    fn explicit_scaling() {
        let a = Matrix::diagonal(&[ex(1), ex(1), ex(2), ex(2)]);
        let b = Matrix::diagonal(&[ex(3), ex(3), ex(6), ex(6)]);
        let c = cmp(&a, &b);
        assert_eq!(c.sjnf, ScaleSet::Roots { degree: 1, value: ex(3) });
        assert_eq!(c.mismatch(), None);
    }

    #[test]
    fn j4_scaling_both_directions() {
        let a = jordan_matrix(&[(4, 4)]);
        let b = jordan_matrix(&[(1, 4)]);
        assert_eq!(cmp(&a, &b).sjnf, ScaleSet::Roots { degree: 1, value: Exact::from_ratio(1, 4) });
        assert_eq!(cmp(&b, &a).sjnf, ScaleSet::Roots { degree: 1, value: ex(4) });
    }

    #[test]
    fn swapped_block_eigenvalues_are_not_proportional() {
        let a = jordan_matrix(&[(3, 2), (2, 1), (2, 1)]);
        let b = jordan_matrix(&[(2, 2), (3, 1), (3, 1)]);
        let c = cmp(&a, &b);
        assert!(!c.spectrum.is_empty());
        assert!(c.sjnf.is_empty());
        assert_eq!(c.mismatch(), Some(InvariantKind::Sjnf));

        let fa = Invariants::Float(jordan_form_float(&a.to_c64(), Tolerances::default()));
        let fb = Invariants::Float(jordan_form_float(&b.to_c64(), Tolerances::default()));
        let c = proportional_compare(&fa, &fb, ComparisonMode::Proportional, Tolerances::default());
        assert_eq!(c.mismatch(), Some(InvariantKind::Sjnf));
    }

    #[test]
    fn symmetric_spectrum_leaves_sign_free() {
        // ±1/2, 0, 0 against itself: k^2 = 1
        let m = Matrix::diagonal(&[Exact::from_ratio(1, 2), Exact::from_ratio(-1, 2), ex(0), ex(0)]);
        let c = cmp(&m, &m);
        assert_eq!(c.sjnf, ScaleSet::Roots { degree: 2, value: ex(1) });
        assert!(c.sjnf.contains(&ex(-1)));
    }

    #[test]
    fn nilpotent_pairs() {
        let a = jordan_matrix(&[(0, 2), (0, 2)]);
        let b = Matrix::zeros(4, 4);
        let c = cmp(&a, &a);
        assert_eq!(c.sjnf, ScaleSet::Any);
        let c = cmp(&a, &b);
        assert_eq!(c.spectrum, ScaleSet::Any);
        assert_eq!(c.mismatch(), Some(InvariantKind::Sjnf));
    }

    #[test]
    fn exact_mode_fixes_k() {
        let a = Matrix::diagonal(&[ex(1), ex(2), ex(3), ex(4)]);
        let b = a.scale(&ex(2));
        let c = proportional_compare(&exact_inv(&a), &exact_inv(&b), ComparisonMode::Exact, Tolerances::default());
        assert_eq!(c.mismatch(), Some(InvariantKind::Spectrum));
        let c = proportional_compare(&exact_inv(&a), &exact_inv(&a), ComparisonMode::Exact, Tolerances::default());
        assert_eq!(c.mismatch(), None);
    }

    #[test]
    fn bezout_reduction() {
        // k^2 = 4 and k^3 = -8 force k = -2
        let s = solve_power_relations(&[(2, ex(4)), (3, ex(-8))], ComparisonMode::Proportional);
        assert_eq!(s, ScaleSet::Roots { degree: 1, value: ex(-2) });
        // k^2 = 4 and k^3 = 9 is inconsistent
        let s = solve_power_relations(&[(2, ex(4)), (3, ex(9))], ComparisonMode::Proportional);
        assert_eq!(s, ScaleSet::Empty);
        // k^2 = 4 and k^4 = 16 leave ±2
        let s = solve_power_relations(&[(2, ex(4)), (4, ex(16))], ComparisonMode::Proportional);
        assert_eq!(s, ScaleSet::Roots { degree: 2, value: ex(4) });
    }
}
