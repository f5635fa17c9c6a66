//! Exact spectral analysis over `Q(i, √2)`.

use crate::matrix::Matrix;
use crate::poly::{coprime_basis, Poly};
use crate::scalar::{Exact, Scalar};

use super::float::poly_roots;
use super::{char_poly, CharPoly, EigenClass, Eigenvalue, JordanForm, MultiplicityStructure};

/// Largest denominator tried when recognising a float root as a Gaussian
/// rational.
const RECOGNITION_DENOMINATOR: i64 = 1 << 20;

/// Multiplicities from the square-free decomposition of the characteristic
/// polynomial; no root is computed.
pub fn multiplicity_structure_exact(cp: &CharPoly<Exact>) -> MultiplicityStructure {
    let parts = cp.to_poly().squarefree_decomposition();
    let mut partition = Vec::new();
    for (k, q) in parts.iter().enumerate() {
        for _ in 0..q.degree().unwrap_or(0) {
            partition.push(k + 1);
        }
    }
    MultiplicityStructure::new(partition, cp.zero_root_multiplicity())
}

/// Invariant factors `d_1 | d_2 | … | d_n` of `σI - m`, monic, from the Smith
/// form over `F[σ]`. Their product is the characteristic polynomial.
pub fn invariant_factors(m: &Matrix<Exact>) -> Vec<Poly<Exact>> {
    invariant_factors_with(m, &char_poly(m))
}

fn invariant_factors_with(m: &Matrix<Exact>, cp: &CharPoly<Exact>) -> Vec<Poly<Exact>> {
    assert!(m.is_square());
    let n = m.rows();
    // square-free cp: the matrix is nonderogatory and the Smith form is known
    let p = cp.to_poly();
    if p.gcd(&p.derivative()).is_constant() {
        let mut out = vec![Poly::one(); n.saturating_sub(1)];
        out.push(p);
        return out;
    }
    invariant_factors_by_rank(m, &p).unwrap_or_else(|| smith_diagonal(m))
}

fn poly_at_matrix(p: &Poly<Exact>, m: &Matrix<Exact>) -> Matrix<Exact> {
    let n = m.rows();
    let mut acc = Matrix::zeros(n, n);
    for c in p.coeffs().iter().rev() {
        acc = m.mul(&acc).add(&Matrix::identity(n).scale(c));
    }
    acc
}

/// Invariant factors from kernel dimensions of `q(M)^k`, one square-free
/// part `q` of the characteristic polynomial at a time. Returns `None` when
/// the ranks cannot tell the roots of some `q` apart, i.e. when those roots
/// might carry different block structures.
fn invariant_factors_by_rank(m: &Matrix<Exact>, cp: &Poly<Exact>) -> Option<Vec<Poly<Exact>>> {
    let n = m.rows();
    // per part: its block sizes, descending, shared by every root
    let mut parts: Vec<(Poly<Exact>, Vec<usize>)> = Vec::new();
    for (i, q) in cp.squarefree_decomposition().into_iter().enumerate() {
        let Some(deg) = q.degree().filter(|&d| d > 0) else { continue };
        let mult = i + 1;
        let qm = poly_at_matrix(&q, m);
        let mut power = qm.clone();
        let mut dims = vec![0];
        for k in 1..=mult {
            if k > 1 {
                power = power.mul(&qm);
            }
            dims.push(n - power.rank());
        }
        if dims[mult] != mult * deg {
            return None;
        }
        // at_least[k-1] = number of blocks of size >= k, summed over roots
        let at_least: Vec<usize> = dims.windows(2).map(|w| w[1] - w[0]).collect();
        if at_least.iter().any(|c| c % deg != 0) {
            return None;
        }
        // uniform counts do not prove uniform structure once a root can have
        // more than two partitions to choose from
        if deg > 1 && mult > 2 {
            return None;
        }
        let per_root: Vec<usize> = at_least.iter().map(|c| c / deg).collect();
        let mut blocks = Vec::new();
        for k in (1..=mult).rev() {
            let bigger = per_root.get(k).copied().unwrap_or(0);
            for _ in bigger..per_root[k - 1] {
                blocks.push(k);
            }
        }
        parts.push((q, blocks));
    }
    let mut out = vec![Poly::one(); n];
    for (q, blocks) in parts {
        for (j, &size) in blocks.iter().enumerate() {
            out[n - 1 - j] = out[n - 1 - j].mul(&q.pow(size as u32));
        }
    }
    Some(out)
}

#[allow(clippy::needless_range_loop)] // row and column ops on one matrix
fn smith_diagonal(m: &Matrix<Exact>) -> Vec<Poly<Exact>> {
    let n = m.rows();
    let mut a: Vec<Vec<Poly<Exact>>> = (0..n)
        .map(|r| {
            (0..n)
                .map(|c| {
                    let entry = Poly::constant(-m[(r, c)].clone());
                    if r == c {
                        entry.add(&Poly::x())
                    } else {
                        entry
                    }
                })
                .collect()
        })
        .collect();

    for t in 0..n {
        loop {
            let pivot = (t..n)
                .flat_map(|r| (t..n).map(move |c| (r, c)))
                .filter(|&(r, c)| !a[r][c].is_zero())
                .min_by_key(|&(r, c)| a[r][c].degree());
            let Some((pr, pc)) = pivot else { break };
            a.swap(t, pr);
            for row in a.iter_mut() {
                row.swap(t, pc);
            }

            let mut clean = true;
            for r in t + 1..n {
                let (q, rem) = a[r][t].div_rem(&a[t][t]).expect("nonzero pivot");
                if q.is_zero() && rem.is_zero() {
                    continue;
                }
                for c in t..n {
                    let v = q.mul(&a[t][c]);
                    a[r][c] = a[r][c].sub(&v);
                }
                clean &= a[r][t].is_zero();
            }
            for c in t + 1..n {
                let (q, _) = a[t][c].div_rem(&a[t][t]).expect("nonzero pivot");
                if q.is_zero() {
                    continue;
                }
                for r in t..n {
                    let v = q.mul(&a[r][t]);
                    a[r][c] = a[r][c].sub(&v);
                }
                clean &= a[t][c].is_zero();
            }
            if !clean {
                continue;
            }
            // every remaining entry must be a multiple of the pivot
            let offender = (t + 1..n)
                .flat_map(|r| (t + 1..n).map(move |c| (r, c)))
                .find(|&(r, c)| !a[t][t].divides(&a[r][c]));
            match offender {
                Some((r, _)) => {
                    for c in t..n {
                        let v = a[r][c].clone();
                        a[t][c] = a[t][c].add(&v);
                    }
                }
                None => break,
            }
        }
        a[t][t] = a[t][t].monic();
    }
    (0..n).map(|i| a[i][i].clone()).collect()
}

/// Splits off the roots of a monic square-free polynomial that lie in the
/// field. Returns the roots found and the cofactor without field roots.
fn split_field_roots(p: &Poly<Exact>) -> (Vec<Exact>, Poly<Exact>) {
    let mut roots = Vec::new();
    let mut rest = p.monic();
    loop {
        match rest.degree() {
            None | Some(0) => break,
            Some(1) => {
                roots.push(-rest.coeff(0));
                rest = Poly::one();
                break;
            }
            Some(2) => {
                let b = rest.coeff(1);
                let c = rest.coeff(0);
                let disc = b.clone() * &b - Exact::from_i64(4) * c;
                if let Some(s) = disc.sqrt() {
                    let half = Exact::from_ratio(1, 2);
                    roots.push((-b.clone() + &s) * &half);
                    roots.push((-b - s) * half);
                    rest = Poly::one();
                }
                break;
            }
            Some(4) if rest.coeff(1).is_zero() && rest.coeff(3).is_zero() => {
                // even quartic: a quadratic in s^2
                let (b, c) = (rest.coeff(2), rest.coeff(0));
                let Some(sd) = (b.clone() * &b - Exact::from_i64(4) * c).sqrt() else { break };
                let half = Exact::from_ratio(1, 2);
                let mut split = false;
                for t in [(-b.clone() + &sd) * &half, (-b - sd) * &half] {
                    if let Some(r) = t.sqrt() {
                        let sq = Poly::new(vec![-t, Exact::zero(), Exact::one()]);
                        if let Some(q) = rest.exact_div(&sq) {
                            rest = q;
                            roots.push(-r.clone());
                            roots.push(r);
                            split = true;
                        }
                    }
                }
                if !split {
                    break;
                }
            }
            Some(_) => {
                let approx = poly_roots(&rest.map(|c| c.to_c64()));
                let hit = approx.iter().find_map(|&z| {
                    let cand = Exact::approximate(z, RECOGNITION_DENOMINATOR)?;
                    rest.eval(&cand).is_zero().then_some(cand)
                });
                match hit {
                    Some(root) => {
                        rest = rest
                            .exact_div(&Poly::linear(root.clone()))
                            .expect("verified root");
                        roots.push(root);
                    }
                    None => break,
                }
            }
        }
    }
    (roots, rest)
}

fn eigenvalues_of_factor(factor: &Poly<Exact>) -> Vec<Eigenvalue> {
    let (roots, rest) = split_field_roots(factor);
    let mut out: Vec<Eigenvalue> = roots.into_iter().map(Eigenvalue::Exact).collect();
    if !rest.is_constant() {
        for z in poly_roots(&rest.map(|c| c.to_c64())) {
            out.push(Eigenvalue::Algebraic {
                defining: rest.clone(),
                approx: z,
            });
        }
    }
    out
}

/// Jordan form from invariant factors: a pairwise-coprime refinement of
/// their square-free parts (with `σ` kept separate) gives, for each basis
/// factor, the exponents across the invariant factors, i.e. the block sizes
/// shared by all its roots.
pub fn jordan_from_invariant_factors(factors: &[Poly<Exact>]) -> JordanForm {
    let mut pieces = vec![Poly::x()];
    for d in factors {
        pieces.extend(
            d.squarefree_decomposition()
                .into_iter()
                .filter(|q| !q.is_constant()),
        );
    }
    let basis = coprime_basis(&pieces);
    let mut classes = Vec::new();
    for b in basis {
        let blocks: Vec<usize> = factors
            .iter()
            .map(|d| d.multiplicity_of(&b))
            .filter(|&e| e > 0)
            .collect();
        if blocks.is_empty() {
            continue;
        }
        for value in eigenvalues_of_factor(&b) {
            classes.push(EigenClass {
                value,
                blocks: blocks.clone(),
            });
        }
    }
    JordanForm::new(classes)
}

/// Standard Jordan normal form, exactly.
pub fn jordan_form_exact(m: &Matrix<Exact>) -> JordanForm {
    jordan_from_invariant_factors(&invariant_factors(m))
}

/// Everything the exact path knows about one matrix.
#[derive(Clone, PartialEq, Debug)]
pub struct ExactSpectrum {
    pub char_poly: CharPoly<Exact>,
    pub invariant_factors: Vec<Poly<Exact>>,
    pub multiplicity: MultiplicityStructure,
    pub jordan: JordanForm,
}

impl ExactSpectrum {
    pub fn of(m: &Matrix<Exact>) -> Self {
        let char_poly = char_poly(m);
        let invariant_factors = invariant_factors_with(m, &char_poly);
        let multiplicity = multiplicity_structure_exact(&char_poly);
        let jordan = jordan_from_invariant_factors(&invariant_factors);
        Self {
            char_poly,
            invariant_factors,
            multiplicity,
            jordan,
        }
    }
}
