//! Floating-point spectral analysis.
//!
//! Eigenvalues of a repeated root split by roughly `ε^{1/m}`, so gap
//! thresholds alone cannot tell a `J_4` block from four nearby simple roots.
//! Instead every single-linkage level is tried, coarsest first, and a cluster
//! of size `m` with centroid `μ` is accepted only when the numerical kernel
//! dimensions of `(S - μI)^k` confirm it.

use nalgebra::{DMatrix, Schur, SVD};
use num_complex::Complex64;

use crate::matrix::Matrix;
use crate::poly::Poly;

use super::{CharPoly, EigenClass, Eigenvalue, JordanForm, MultiplicityStructure};

/// Relative and absolute tolerances for the floating path.
#[derive(Clone, Copy, PartialEq, Debug)]
pub struct Tolerances {
    pub rel: f64,
    pub abs: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Self { rel: 1e-9, abs: 1e-9 }
    }
}

impl Tolerances {
    pub fn new(rel: f64, abs: f64) -> Self {
        Self { rel, abs }
    }

    /// `value` sits within one decade of `threshold` on either side.
    fn near(threshold: f64, value: f64) -> bool {
        threshold > 0.0 && value > threshold / 10.0 && value < threshold * 10.0
    }
}

/// Jordan form from the floating path, with the reason it may be unreliable.
#[derive(Clone, PartialEq, Debug)]
pub struct FloatSpectrum {
    pub jordan: JordanForm,
    pub ambiguity: Option<String>,
}

impl FloatSpectrum {
    pub fn is_ambiguous(&self) -> bool {
        self.ambiguity.is_some()
    }
}

fn to_dmatrix(m: &Matrix<Complex64>) -> DMatrix<Complex64> {
    DMatrix::from_fn(m.rows(), m.cols(), |r, c| m[(r, c)])
}

fn singular_values(m: &DMatrix<Complex64>) -> Vec<f64> {
    let mut sv: Vec<f64> = SVD::new(m.clone(), false, false)
        .singular_values
        .iter()
        .copied()
        .collect();
    sv.sort_by(|a, b| b.total_cmp(a));
    sv
}

/// Iteration cap for the Schur solver; it otherwise loops forever on some
/// non-finite inputs.
const SCHUR_MAX_ITER: usize = 10_000;

/// Eigenvalues, computed on the matrix divided by its largest entry: the
/// solver loses everything on entries near 1e30.
fn eigenvalues(m: &DMatrix<Complex64>) -> Vec<Complex64> {
    let n = m.nrows();
    let scale = m.iter().map(|z| z.norm()).fold(0.0, f64::max);
    if scale == 0.0 || !scale.is_finite() {
        let fill = if scale == 0.0 { 0.0 } else { f64::NAN };
        return vec![Complex64::new(fill, fill); n];
    }
    let unit = m.map(|z| z / scale);
    match Schur::try_new(unit, f64::EPSILON, SCHUR_MAX_ITER) {
        // the complex Schur form is triangular, so the diagonal is the spectrum
        Some(schur) => {
            let (_, t) = schur.unpack();
            (0..n).map(|i| t[(i, i)] * scale).collect()
        }
        None => {
            let unit = Matrix::from_fn(n, n, |r, c| m[(r, c)] / scale);
            let cp = super::char_poly(&unit);
            durand_kerner(cp.lower_coeffs()).into_iter().map(|z| z * scale).collect()
        }
    }
}

/// Roots of a polynomial from its companion matrix, lightly Newton-polished.
/// The variable is rescaled first so the companion entries are O(1).
pub fn poly_roots(p: &Poly<Complex64>) -> Vec<Complex64> {
    let Some(d) = p.degree() else { return Vec::new() };
    if d == 0 {
        return Vec::new();
    }
    let lead = p.coeff(d);
    // Fujiwara-style radius: every root has modulus at most 2·rho
    let rho = (0..d)
        .map(|i| (p.coeff(i) / lead).norm().powf(1.0 / (d - i) as f64))
        .fold(0.0, f64::max);
    let rho = if rho > 0.0 && rho.is_finite() { rho } else { 1.0 };
    let mut comp = DMatrix::<Complex64>::zeros(d, d);
    for i in 1..d {
        comp[(i, i - 1)] = Complex64::new(1.0, 0.0);
    }
    for i in 0..d {
        comp[(i, d - 1)] = -p.coeff(i) / lead / rho.powi((d - i) as i32);
    }
    let mut scaled = eigenvalues(&comp);
    if scaled.iter().any(|z| !z.is_finite()) {
        let monic: Vec<Complex64> = (0..d).map(|i| comp[(i, d - 1)] * -1.0).collect();
        scaled = durand_kerner(&monic);
    }
    let dp = p.derivative();
    scaled
        .into_iter()
        .map(|w| {
            let mut z = w * rho;
            for _ in 0..3 {
                let fz = p.eval(&z);
                let dz = dp.eval(&z);
                if dz.norm() == 0.0 {
                    break;
                }
                let next = z - fz / dz;
                if p.eval(&next).norm() < fz.norm() {
                    z = next;
                } else {
                    break;
                }
            }
            z
        })
        .collect()
}

/// Simultaneous Weierstrass iteration on `w^d + Σ a_i w^i`; the fallback
/// when the Schur solver stalls (it can, on even polynomials).
fn durand_kerner(a: &[Complex64]) -> Vec<Complex64> {
    let d = a.len();
    let eval = |w: Complex64| a.iter().rev().fold(Complex64::new(1.0, 0.0), |acc, &c| acc * w + c);
    let seed = Complex64::new(0.4, 0.9);
    let mut z: Vec<Complex64> = (0..d).map(|k| seed.powu(k as u32 + 1)).collect();
    for _ in 0..2000 {
        let mut moved: f64 = 0.0;
        for i in 0..d {
            let denom = (0..d)
                .filter(|&j| j != i)
                .fold(Complex64::new(1.0, 0.0), |acc, j| acc * (z[i] - z[j]));
            if denom.norm() == 0.0 {
                continue;
            }
            let step = eval(z[i]) / denom;
            z[i] -= step;
            moved = moved.max(step.norm());
        }
        if moved < 1e-15 {
            break;
        }
    }
    z
}

/// Single-linkage levels from coarsest (one cluster) to finest (singletons).
fn linkage_levels(points: &[Complex64]) -> Vec<Vec<Vec<usize>>> {
    let n = points.len();
    let mut edges: Vec<(f64, usize, usize)> = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            edges.push(((points[i] - points[j]).norm(), i, j));
        }
    }
    edges.sort_by(|a, b| a.0.total_cmp(&b.0));

    let mut label: Vec<usize> = (0..n).collect();
    let groups = |label: &[usize]| {
        let mut ids: Vec<usize> = label.to_vec();
        ids.sort_unstable();
        ids.dedup();
        ids.iter()
            .map(|&id| (0..n).filter(|&i| label[i] == id).collect::<Vec<_>>())
            .collect::<Vec<_>>()
    };
    let mut levels = vec![groups(&label)];
    for (_, i, j) in edges {
        let (a, b) = (label[i], label[j]);
        if a == b {
            continue;
        }
        for l in label.iter_mut() {
            if *l == b {
                *l = a;
            }
        }
        levels.push(groups(&label));
    }
    levels.reverse();
    levels
}

fn centroid(points: &[Complex64], idx: &[usize]) -> Complex64 {
    idx.iter().map(|&i| points[i]).sum::<Complex64>() / idx.len() as f64
}

/// Outcome of testing one cluster against the matrix.
struct ClusterCheck {
    blocks: Option<Vec<usize>>,
    near: bool,
}

/// Kernel dimensions of `(S - μI)^k` for `k = 1..=m`; accepts when they
/// climb to `m` with positive nonincreasing steps and returns the block
/// sizes (conjugate partition of the steps).
fn check_cluster(s: &DMatrix<Complex64>, mu: Complex64, m: usize, scale: f64, tol: Tolerances) -> ClusterCheck {
    let n = s.nrows();
    let shifted = s - DMatrix::<Complex64>::identity(n, n) * mu;
    let mut power = DMatrix::<Complex64>::identity(n, n);
    let mut dims = vec![0usize];
    let mut near = false;
    for k in 1..=m {
        power = &power * &shifted;
        let threshold = tol.rel * scale.powi(k as i32);
        let sv = singular_values(&power);
        let kernel = sv.iter().filter(|&&x| x <= threshold).count();
        // the singular values that decide d_k sit right at the cut
        let boundary = n - kernel;
        if boundary < n && Tolerances::near(threshold, sv[boundary]) {
            near = true;
        }
        if boundary > 0 && Tolerances::near(threshold, sv[boundary - 1]) {
            near = true;
        }
        dims.push(kernel);
    }
    // the chain stops growing once it reaches m
    let top = dims.iter().position(|&d| d >= m).unwrap_or(m);
    let steps: Vec<usize> = dims[..=top].windows(2).map(|w| w[1].saturating_sub(w[0])).collect();
    let ok = dims[m] == m
        && dims.windows(2).all(|w| w[1] >= w[0])
        && steps.iter().all(|&x| x > 0)
        && steps.windows(2).all(|w| w[1] <= w[0]);
    if !ok {
        return ClusterCheck { blocks: None, near };
    }
    // number of blocks of size >= k is steps[k-1]
    let mut blocks = Vec::new();
    for k in 1..=steps.len() {
        let above = steps.get(k).copied().unwrap_or(0);
        for _ in 0..steps[k - 1] - above {
            blocks.push(k);
        }
    }
    ClusterCheck {
        blocks: Some(blocks),
        near,
    }
}

/// Standard Jordan form by rank-validated eigenvalue clustering.
pub fn jordan_form_float(m: &Matrix<Complex64>, tol: Tolerances) -> FloatSpectrum {
    assert!(m.is_square());
    let n = m.rows();
    let s = to_dmatrix(m);
    let scale = singular_values(&s).first().copied().unwrap_or(0.0);
    if scale == 0.0 {
        return FloatSpectrum {
            jordan: JordanForm::new(vec![EigenClass {
                value: Eigenvalue::Approx(Complex64::new(0.0, 0.0)),
                blocks: vec![1; n],
            }]),
            ambiguity: None,
        };
    }
    let zero_cut = tol.abs.max(tol.rel * scale);
    let points = eigenvalues(&s);
    let mut ambiguity = None;

    for level in linkage_levels(&points) {
        let mut classes = Vec::new();
        let mut near = false;
        let mut ok = true;
        for cluster in &level {
            let mut mu = centroid(&points, cluster);
            if Tolerances::near(zero_cut, mu.norm()) {
                near = true;
            }
            if mu.norm() <= zero_cut {
                mu = Complex64::new(0.0, 0.0);
            }
            let check = check_cluster(&s, mu, cluster.len(), scale, tol);
            near |= check.near;
            match check.blocks {
                Some(blocks) => classes.push(EigenClass {
                    value: Eigenvalue::Approx(mu),
                    blocks,
                }),
                None => {
                    ok = false;
                    break;
                }
            }
        }
        if ok {
            if near {
                ambiguity = Some("singular value or eigenvalue within a decade of its tolerance".into());
            }
            return FloatSpectrum {
                jordan: JordanForm::new(classes),
                ambiguity,
            };
        }
    }

    // no level passed the rank test; report simple eigenvalues, flagged
    FloatSpectrum {
        jordan: JordanForm::new(
            points
                .iter()
                .map(|&z| EigenClass {
                    value: Eigenvalue::Approx(if z.norm() <= zero_cut { Complex64::new(0.0, 0.0) } else { z }),
                    blocks: vec![1],
                })
                .collect(),
        ),
        ambiguity: Some("no clustering consistent with the kernel dimensions".into()),
    }
}

fn factorial_ratio(i: usize, j: usize) -> f64 {
    // i! / (i - j)!
    ((i - j + 1)..=i).map(|x| x as f64).product()
}

/// Multiplicity structure from the roots of a floating characteristic
/// polynomial. A cluster of size `m` at `μ` is accepted when the first
/// `m - 1` derivatives vanish at `μ` to tolerance and the `m`-th does not.
#[allow(clippy::needless_range_loop)]
pub fn multiplicity_structure_float(cp: &CharPoly<Complex64>, tol: Tolerances) -> (MultiplicityStructure, Option<String>) {
    let p = cp.to_poly();
    let d = cp.degree();
    let roots = poly_roots(&p);
    let radius = roots.iter().map(|z| z.norm()).fold(0.0, f64::max);
    if radius == 0.0 {
        return (MultiplicityStructure::new(vec![d], d), None);
    }
    let coeffs = p.coeffs();
    // size of the terms making up p^(j)(x) for |x| <= radius
    let bound = |j: usize| -> f64 {
        let r = radius.max(1e-300);
        (j..=d)
            .map(|i| coeffs[i].norm() * factorial_ratio(i, j) * r.powi((i - j) as i32))
            .sum()
    };
    let derivatives: Vec<Poly<Complex64>> = (0..=d)
        .scan(p.clone(), |q, _| {
            let cur = q.clone();
            *q = q.derivative();
            Some(cur)
        })
        .collect();
    let zero_cut = tol.abs.max(tol.rel * radius);

    for level in linkage_levels(&roots) {
        let mut partition = Vec::new();
        let mut zero = 0;
        let mut near = false;
        let mut ok = true;
        for cluster in &level {
            let m = cluster.len();
            let mut mu = centroid(&roots, cluster);
            near |= Tolerances::near(zero_cut, mu.norm());
            if mu.norm() <= zero_cut {
                mu = Complex64::new(0.0, 0.0);
                zero = m;
            }
            for j in 0..=m.min(d) {
                let v = derivatives[j].eval(&mu).norm();
                let cut = tol.rel * bound(j);
                near |= Tolerances::near(cut, v);
                let small = v <= cut;
                if (j < m && !small) || (j == m && small) {
                    ok = false;
                }
            }
            if !ok {
                break;
            }
            partition.push(m);
        }
        if ok {
            let flag = near.then(|| "root or derivative within a decade of its tolerance".to_string());
            return (MultiplicityStructure::new(partition, zero), flag);
        }
    }
    let zero = roots.iter().filter(|z| z.norm() <= zero_cut).count();
    let mut partition = vec![1; d - zero];
    if zero > 0 {
        partition.push(zero);
    }
    (
        MultiplicityStructure::new(partition, zero),
        Some("no clustering consistent with the derivatives".into()),
    )
}
