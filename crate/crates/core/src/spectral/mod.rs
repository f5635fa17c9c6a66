//! Characteristic polynomials, multiplicity structure and standard Jordan
//! normal forms of small complex matrices.
//!
//! Two independent paths:
//!
//! * exact ([`exact`]): Faddeev–LeVerrier coefficients, square-free
//!   decomposition by repeated gcds, and invariant factors of `σI - S` from a
//!   polynomial Smith form. No root is ever needed to decide a block
//!   structure.
//! * floating ([`float`]): Schur eigenvalues clustered by single linkage,
//!   each candidate cluster accepted only if the numerical kernel dimensions
//!   of `(S - μI)^k` are consistent with it.

pub mod exact;
pub mod float;

use std::cmp::Ordering;
use std::fmt;

use num_complex::Complex64;

use crate::matrix::Matrix;
use crate::poly::Poly;
use crate::scalar::{Exact, Scalar};

pub use exact::{invariant_factors, jordan_form_exact, multiplicity_structure_exact, ExactSpectrum};
pub use float::{jordan_form_float, multiplicity_structure_float, FloatSpectrum, Tolerances};

/// Monic characteristic polynomial `det(σI - S)`.
#[derive(Clone, PartialEq, Debug)]
pub struct CharPoly<F> {
    /// `coeffs[i]` multiplies `σ^i`; the leading coefficient 1 is implicit.
    coeffs: Vec<F>,
}

impl<F: Scalar> CharPoly<F> {
    pub fn degree(&self) -> usize {
        self.coeffs.len()
    }

    /// Coefficient of `σ^i` for `i < degree`.
    pub fn coeff(&self, i: usize) -> &F {
        &self.coeffs[i]
    }

    pub fn lower_coeffs(&self) -> &[F] {
        &self.coeffs
    }

    pub fn to_poly(&self) -> Poly<F> {
        let mut c = self.coeffs.clone();
        c.push(F::one());
        Poly::new(c)
    }

    /// Number of vanishing low-order coefficients, i.e. the multiplicity of
    /// the root zero.
    pub fn zero_root_multiplicity(&self) -> usize {
        self.coeffs.iter().take_while(|c| c.is_zero()).count()
    }

    /// Evaluates the polynomial at a square matrix (Horner).
    pub fn eval_matrix(&self, m: &Matrix<F>) -> Matrix<F> {
        let n = m.rows();
        let mut acc = Matrix::identity(n);
        for c in self.coeffs.iter().rev() {
            acc = acc.mul(m).add(&Matrix::identity(n).scale(c));
        }
        acc
    }

    /// Characteristic polynomial of `k·S`.
    pub fn scaled(&self, k: &F) -> Self {
        let n = self.degree();
        Self {
            coeffs: self
                .coeffs
                .iter()
                .enumerate()
                .map(|(i, c)| c.clone() * k.powi((n - i) as u32))
                .collect(),
        }
    }
}

/// Faddeev–LeVerrier: `M_k = S M_{k-1} + c_{n-k+1} I`,
/// `c_{n-k} = -tr(S M_k) / k`.
pub fn char_poly<F: Scalar>(m: &Matrix<F>) -> CharPoly<F> {
    assert!(m.is_square(), "characteristic polynomial of non-square matrix");
    let n = m.rows();
    let mut coeffs = vec![F::zero(); n];
    let mut mk = Matrix::<F>::zeros(n, n);
    let mut prev = F::one();
    for k in 1..=n {
        mk = m.mul(&mk).add(&Matrix::identity(n).scale(&prev));
        let tr = m.mul(&mk).trace();
        let c = -(tr * F::from_ratio(1, k as i64));
        coeffs[n - k] = c.clone();
        prev = c;
    }
    CharPoly { coeffs }
}

/// Algebraic multiplicities of the distinct roots, plus the multiplicity of
/// the root zero.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct MultiplicityStructure {
    /// Sorted descending; sums to the matrix size.
    pub partition: Vec<usize>,
    pub zero_multiplicity: usize,
}

impl MultiplicityStructure {
    pub fn new(mut partition: Vec<usize>, zero_multiplicity: usize) -> Self {
        partition.sort_unstable_by(|a, b| b.cmp(a));
        Self {
            partition,
            zero_multiplicity,
        }
    }

    /// Multiplicities of the nonzero roots, descending.
    pub fn nonzero_partition(&self) -> Vec<usize> {
        let mut p = self.partition.clone();
        if self.zero_multiplicity > 0 {
            if let Some(pos) = p.iter().position(|&x| x == self.zero_multiplicity) {
                p.remove(pos);
            }
        }
        p
    }
}

/// An eigenvalue as reported by either path.
#[derive(Clone, PartialEq, Debug)]
#[allow(clippy::large_enum_variant)]
pub enum Eigenvalue {
    /// Exact element of the scalar field.
    Exact(Exact),
    /// A root of a square-free polynomial with no roots in the field; the
    /// approximation tells the roots apart.
    Algebraic {
        defining: Poly<Exact>,
        approx: Complex64,
    },
    /// Cluster centroid from the floating path.
    Approx(Complex64),
}

impl Eigenvalue {
    pub fn approx(&self) -> Complex64 {
        match self {
            Eigenvalue::Exact(x) => x.to_c64(),
            Eigenvalue::Algebraic { approx, .. } | Eigenvalue::Approx(approx) => *approx,
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Eigenvalue::Exact(x) => x.is_zero(),
            Eigenvalue::Algebraic { .. } => false,
            Eigenvalue::Approx(z) => z.re == 0.0 && z.im == 0.0,
        }
    }

    /// `(real, imag)` lexicographic; exact values compare exactly.
    pub fn canonical_cmp(&self, other: &Self) -> Ordering {
        if let (Eigenvalue::Exact(a), Eigenvalue::Exact(b)) = (self, other) {
            return a.cmp_real_imag(b);
        }
        let (a, b) = (self.approx(), other.approx());
        a.re.total_cmp(&b.re)
            .then(a.im.total_cmp(&b.im))
            .then_with(|| {
                let rank = |e: &Eigenvalue| match e {
                    Eigenvalue::Exact(_) => 0,
                    Eigenvalue::Algebraic { .. } => 1,
                    Eigenvalue::Approx(_) => 2,
                };
                rank(self).cmp(&rank(other))
            })
    }
}

fn fmt_approx(z: Complex64) -> String {
    let clean = |x: f64| if x.abs() < 5e-13 { 0.0 } else { x };
    let (re, im) = (clean(z.re), clean(z.im));
    if im == 0.0 {
        format!("{re:.6}")
    } else if re == 0.0 {
        format!("{im:.6}i")
    } else {
        format!("{re:.6}{im:+.6}i")
    }
}

impl fmt::Display for Eigenvalue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Eigenvalue::Exact(x) => write!(f, "{x}"),
            Eigenvalue::Algebraic { approx, .. } => write!(f, "~{}", fmt_approx(*approx)),
            Eigenvalue::Approx(z) => write!(f, "{}", fmt_approx(*z)),
        }
    }
}

/// One eigenvalue with the sizes of its Jordan blocks (descending).
#[derive(Clone, PartialEq, Debug)]
pub struct EigenClass {
    pub value: Eigenvalue,
    pub blocks: Vec<usize>,
}

impl EigenClass {
    pub fn algebraic_multiplicity(&self) -> usize {
        self.blocks.iter().sum()
    }
}

/// Standard Jordan normal form, grouped by distinct eigenvalue and ordered
/// canonically by eigenvalue.
#[derive(Clone, PartialEq, Debug, Default)]
pub struct JordanForm {
    classes: Vec<EigenClass>,
}

impl JordanForm {
    pub fn new(mut classes: Vec<EigenClass>) -> Self {
        for c in &mut classes {
            c.blocks.sort_unstable_by(|a, b| b.cmp(a));
        }
        classes.retain(|c| !c.blocks.is_empty());
        classes.sort_by(|a, b| a.value.canonical_cmp(&b.value));
        Self { classes }
    }

    pub fn classes(&self) -> &[EigenClass] {
        &self.classes
    }

    pub fn size(&self) -> usize {
        self.classes.iter().map(EigenClass::algebraic_multiplicity).sum()
    }

    /// `(eigenvalue, block size)` pairs: size descending, then eigenvalue.
    pub fn blocks(&self) -> Vec<(&Eigenvalue, usize)> {
        let mut out: Vec<(&Eigenvalue, usize)> = self
            .classes
            .iter()
            .flat_map(|c| c.blocks.iter().map(move |&b| (&c.value, b)))
            .collect();
        out.sort_by(|a, b| b.1.cmp(&a.1).then_with(|| a.0.canonical_cmp(b.0)));
        out
    }

    /// Sorted multiset of block sizes.
    pub fn block_sizes(&self) -> Vec<usize> {
        let mut v: Vec<usize> = self.classes.iter().flat_map(|c| c.blocks.clone()).collect();
        v.sort_unstable_by(|a, b| b.cmp(a));
        v
    }

    pub fn zero_class(&self) -> Option<&EigenClass> {
        self.classes.iter().find(|c| c.value.is_zero())
    }

    pub fn multiplicity_structure(&self) -> MultiplicityStructure {
        MultiplicityStructure::new(
            self.classes.iter().map(EigenClass::algebraic_multiplicity).collect(),
            self.zero_class().map_or(0, EigenClass::algebraic_multiplicity),
        )
    }

    /// Eigenvalues with algebraic multiplicities.
    pub fn spectrum(&self) -> Vec<(&Eigenvalue, usize)> {
        self.classes
            .iter()
            .map(|c| (&c.value, c.algebraic_multiplicity()))
            .collect()
    }

    /// Jordan form of `k·S` given that of `S`.
    pub fn scaled(&self, k: &Exact) -> Self {
        let kf = k.to_c64();
        Self::new(
            self.classes
                .iter()
                .map(|c| EigenClass {
                    value: match &c.value {
                        Eigenvalue::Exact(x) => Eigenvalue::Exact(x.clone() * k),
                        Eigenvalue::Algebraic { defining, approx } => Eigenvalue::Algebraic {
                            defining: defining.scale_roots(k),
                            approx: approx * kf,
                        },
                        Eigenvalue::Approx(z) => Eigenvalue::Approx(z * kf),
                    },
                    blocks: c.blocks.clone(),
                })
                .collect(),
        )
    }
}

impl fmt::Display for JordanForm {
    /// Paper-style rendering: size-1 blocks print as the bare eigenvalue,
    /// larger ones as `Jk(value)`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .blocks()
            .into_iter()
            .map(|(v, size)| {
                if size == 1 {
                    v.to_string()
                } else {
                    format!("J{size}({v})")
                }
            })
            .collect();
        f.write_str(&parts.join(" "))
    }
}
