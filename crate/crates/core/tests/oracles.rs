//! Independent oracles for the exact spectral path.
//!
//! Each check recomputes a quantity by a method that shares no code with the
//! library routine it tests: cofactor expansion for determinants, gcds of
//! minors for invariant factors, matrix ranks for block sizes.

use nalgebra::{DMatrix, Schur};
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use slocc::fixtures::fixture_state;
use slocc::matrix::Matrix;
use slocc::poly::Poly;
use slocc::smatrix::{s_matrix, RowBits};
use slocc::spectral::{char_poly, invariant_factors, jordan_form_exact, Eigenvalue, ExactSpectrum};
use slocc::state::random_state;
use slocc::{Exact, PureState, Scalar};

fn rng(tag: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(tag)
}

/// S-matrices of random states, sparse ones included so that repeated roots
/// and nontrivial blocks show up.
fn sample_matrices(count: usize, tag: u64) -> Vec<Matrix<Exact>> {
    let mut r = rng(tag);
    (0..count)
        .map(|i| {
            let n = 3 + i % 3;
            let s = random_state(n, 2, [0.0, 0.6, 0.8][i % 3], &mut r);
            let rb = RowBits::all(n)[i % RowBits::all(n).len()];
            s_matrix(&s, rb).unwrap().matrix
        })
        .collect()
}

/// Laplace expansion along the first row.
fn cofactor_det<T: Clone>(
    m: &[Vec<T>],
    zero: T,
    mul: &impl Fn(&T, &T) -> T,
    add: &impl Fn(&T, &T) -> T,
    neg: &impl Fn(&T) -> T,
) -> T {
    let n = m.len();
    if n == 1 {
        return m[0][0].clone();
    }
    let mut acc = zero.clone();
    for c in 0..n {
        let minor: Vec<Vec<T>> = m[1..]
            .iter()
            .map(|row| row.iter().enumerate().filter(|&(j, _)| j != c).map(|(_, v)| v.clone()).collect())
            .collect();
        let term = mul(&m[0][c], &cofactor_det(&minor, zero.clone(), mul, add, neg));
        acc = if c % 2 == 0 { add(&acc, &term) } else { add(&acc, &neg(&term)) };
    }
    acc
}

fn sigma_minus(m: &Matrix<Exact>) -> Vec<Vec<Poly<Exact>>> {
    (0..4)
        .map(|r| {
            (0..4)
                .map(|c| {
                    let e = Poly::constant(-m[(r, c)].clone());
                    if r == c {
                        e.add(&Poly::x())
                    } else {
                        e
                    }
                })
                .collect()
        })
        .collect()
}

fn poly_det(m: &[Vec<Poly<Exact>>]) -> Poly<Exact> {
    cofactor_det(m, Poly::zero(), &|a, b| a.mul(b), &|a, b| a.add(b), &|a| Poly::zero().sub(a))
}

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    (0u32..1 << n)
        .filter(|m| m.count_ones() as usize == k)
        .map(|m| (0..n).filter(|&i| m >> i & 1 == 1).collect())
        .collect()
}

/// `D_k` = monic gcd of all `k×k` minors of `σI - m`.
fn determinantal_divisors(m: &Matrix<Exact>) -> Vec<Poly<Exact>> {
    let a = sigma_minus(m);
    let mut out = vec![Poly::one()];
    for k in 1..=4 {
        let mut g = Poly::zero();
        for rows in subsets(4, k) {
            for cols in subsets(4, k) {
                let minor: Vec<Vec<Poly<Exact>>> =
                    rows.iter().map(|&r| cols.iter().map(|&c| a[r][c].clone()).collect()).collect();
                let d = poly_det(&minor);
                g = if g.is_zero() { d.monic() } else { g.gcd(&d) };
            }
        }
        out.push(g);
    }
    out
}

#[test]
fn char_poly_matches_cofactor_determinant() {
    for m in sample_matrices(30, 1) {
        let cp = char_poly(&m).to_poly();
        assert_eq!(cp, poly_det(&sigma_minus(&m)));
    }
}

#[test]
fn cayley_hamilton() {
    for m in sample_matrices(30, 2) {
        assert!(char_poly(&m).eval_matrix(&m).is_zero());
    }
}

#[test]
fn invariant_factors_match_determinantal_divisors() {
    let mut nontrivial = 0;
    for m in sample_matrices(45, 3) {
        let d = determinantal_divisors(&m);
        let want: Vec<Poly<Exact>> = (1..=4).map(|k| d[k].exact_div(&d[k - 1]).unwrap().monic()).collect();
        let got = invariant_factors(&m);
        if !got[2].is_constant() {
            nontrivial += 1;
        }
        assert_eq!(got, want);
    }
    assert!(nontrivial > 0, "sample never exercised a derogatory matrix");
}

/// Block sizes of an exact eigenvalue from ranks of `(m - λI)^k`.
fn blocks_by_rank(m: &Matrix<Exact>, lambda: &Exact) -> Vec<usize> {
    let shifted = m.sub(&Matrix::identity(4).scale(lambda));
    let mut dims = vec![0];
    let mut p = Matrix::identity(4);
    for _ in 0..4 {
        p = p.mul(&shifted);
        dims.push(4 - p.rank());
    }
    // at_least[k] = number of blocks of size > k
    let at_least: Vec<usize> = dims.windows(2).map(|w| w[1] - w[0]).collect();
    let mut blocks = Vec::new();
    for k in (1..=4).rev() {
        let exact = at_least[k - 1] - at_least.get(k).copied().unwrap_or(0);
        blocks.extend(std::iter::repeat_n(k, exact));
    }
    blocks
}

#[test]
fn jordan_blocks_match_kernel_ranks() {
    let mut checked = 0;
    for m in sample_matrices(45, 4) {
        let j = jordan_form_exact(&m);
        assert_eq!(j.size(), 4);
        for class in j.classes() {
            if let Eigenvalue::Exact(l) = &class.value {
                assert_eq!(class.blocks, blocks_by_rank(&m, l), "{j}");
                checked += 1;
            }
        }
    }
    assert!(checked > 45);
}

#[test]
fn similarity_leaves_spectrum_unchanged() {
    let mut r = rng(5);
    for m in sample_matrices(20, 5) {
        let p = loop {
            let p = Matrix::from_fn(4, 4, |_, _| Exact::from_gaussian(r.gen_range(-2..=2), r.gen_range(-1..=1)));
            if let Some(inv) = p.inverse() {
                break (p, inv);
            }
        };
        let conj = p.0.mul(&m).mul(&p.1);
        let (a, b) = (ExactSpectrum::of(&m), ExactSpectrum::of(&conj));
        assert_eq!(a.char_poly, b.char_poly);
        assert_eq!(a.invariant_factors, b.invariant_factors);
        assert_eq!(a.jordan, b.jordan);
    }
}

fn dense_eigenvalues(m: &Matrix<Exact>) -> Vec<Complex64> {
    let d = DMatrix::from_fn(4, 4, |r, c| m[(r, c)].to_c64());
    let (_, t) = Schur::new(d).unpack();
    let mut v: Vec<Complex64> = (0..4).map(|i| t[(i, i)]).collect();
    v.sort_by(|a, b| a.re.total_cmp(&b.re));
    v
}

#[test]
fn zeta4_eigenvalues_against_dense_solver() {
    // eigenvalues come out as a^2 and b^2, b^2 carrying the 2-block
    let s = fixture_state("zeta4", &[("a", Exact::from_i64(2)), ("b", Exact::from_i64(3))]).unwrap();
    let m = s_matrix(&s, RowBits::new(1, 2, 4).unwrap()).unwrap().matrix;
    let dense = dense_eigenvalues(&m);
    // a defective double root splits by about sqrt(eps)
    for (z, want) in dense.iter().zip([4.0, 4.0, 9.0, 9.0]) {
        assert!((z - Complex64::new(want, 0.0)).norm() < 1e-6, "{dense:?}");
    }
    assert_eq!(jordan_form_exact(&m).to_string(), "J2(9) 4 4");
    assert_eq!(blocks_by_rank(&m, &Exact::from_i64(9)), vec![2]);
    assert_eq!(blocks_by_rank(&m, &Exact::from_i64(4)), vec![1, 1]);
}

#[test]
fn ghz_characteristic_polynomial() {
    // spectrum ±1/2, 0, 0 for (|000> + |111>)/√2
    let h = Exact::sqrt2().inv().unwrap();
    let s = PureState::from_sparse(3, [(0, h.clone()), (7, h)]).unwrap();
    let m = s_matrix(&s, RowBits::new(1, 2, 3).unwrap()).unwrap().matrix;
    let cp = char_poly(&m);
    assert_eq!(
        cp.lower_coeffs(),
        &[Exact::zero(), Exact::zero(), Exact::from_ratio(-1, 4), Exact::zero()]
    );
    for (z, want) in dense_eigenvalues(&m).iter().zip([-0.5, 0.0, 0.0, 0.5]) {
        assert!((z - Complex64::new(want, 0.0)).norm() < 1e-12);
    }
}
