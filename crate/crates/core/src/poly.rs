//! Dense univariate polynomials over a [`Scalar`] field.
//!
//! Division-based routines (`div_rem`, `gcd`, square-free decomposition)
//! rely on exact zero tests and are only meaningful over [`Exact`].
//!
//! [`Exact`]: crate::scalar::Exact

use std::fmt;

use crate::scalar::Scalar;

/// Coefficients in ascending order; never carries trailing zeros.
#[derive(Clone, PartialEq, Debug)]
pub struct Poly<F> {
    coeffs: Vec<F>,
}

impl<F: Scalar> Poly<F> {
    pub fn new(mut coeffs: Vec<F>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Self { coeffs }
    }

    pub fn zero() -> Self {
        Self { coeffs: Vec::new() }
    }

    pub fn constant(c: F) -> Self {
        Self::new(vec![c])
    }

    pub fn one() -> Self {
        Self::constant(F::one())
    }

    /// The variable `σ`.
    pub fn x() -> Self {
        Self::new(vec![F::zero(), F::one()])
    }

    /// `σ - root`.
    pub fn linear(root: F) -> Self {
        Self::new(vec![-root, F::one()])
    }

    pub fn coeffs(&self) -> &[F] {
        &self.coeffs
    }

    /// Coefficient of `σ^i` (zero past the degree).
    pub fn coeff(&self, i: usize) -> F {
        self.coeffs.get(i).cloned().unwrap_or_else(F::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    pub fn leading(&self) -> Option<&F> {
        self.coeffs.last()
    }

    pub fn monic(&self) -> Self {
        match self.leading().and_then(|l| l.inv()) {
            Some(inv) => self.scale(&inv),
            None => self.clone(),
        }
    }

    pub fn scale(&self, c: &F) -> Self {
        Self::new(self.coeffs.iter().map(|x| x.clone() * c).collect())
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c.clone() * F::from_i64(i as i64))
                .collect(),
        )
    }

    pub fn eval(&self, x: &F) -> F {
        self.coeffs
            .iter()
            .rev()
            .fold(F::zero(), |acc, c| acc * x + c)
    }

    /// `k^deg · p(σ / k)`: the polynomial whose roots are `k` times the roots
    /// of `self`. Monic input stays monic.
    pub fn scale_roots(&self, k: &F) -> Self {
        let Some(deg) = self.degree() else {
            return Self::zero();
        };
        let mut out = Vec::with_capacity(deg + 1);
        let mut pow = F::one();
        let mut pows = Vec::with_capacity(deg + 1);
        for _ in 0..=deg {
            pows.push(pow.clone());
            pow = pow * k;
        }
        for (i, c) in self.coeffs.iter().enumerate() {
            out.push(c.clone() * &pows[deg - i]);
        }
        Self::new(out)
    }

    pub fn add(&self, rhs: &Self) -> Self {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Self::new((0..n).map(|i| self.coeff(i) + rhs.coeff(i)).collect())
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Self::new((0..n).map(|i| self.coeff(i) - rhs.coeff(i)).collect())
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        if self.is_zero() || rhs.is_zero() {
            return Self::zero();
        }
        let mut out = vec![F::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] = out[i + j].clone() + a.clone() * b;
            }
        }
        Self::new(out)
    }

    pub fn pow(&self, e: u32) -> Self {
        (0..e).fold(Self::one(), |acc, _| acc.mul(self))
    }

    /// Euclidean division. Returns `None` when `divisor` is zero.
    pub fn div_rem(&self, divisor: &Self) -> Option<(Self, Self)> {
        let dd = divisor.degree()?;
        let lead_inv = divisor.leading()?.inv()?;
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return Some((Self::zero(), self.clone()));
        }
        let mut quot = vec![F::zero(); rem.len() - dd];
        for i in (0..quot.len()).rev() {
            let c = rem[i + dd].clone() * &lead_inv;
            if !c.is_zero() {
                for (j, d) in divisor.coeffs.iter().enumerate() {
                    rem[i + j] = rem[i + j].clone() - c.clone() * d;
                }
            }
            quot[i] = c;
        }
        rem.truncate(dd);
        Some((Self::new(quot), Self::new(rem)))
    }

    /// Exact quotient; `None` if `divisor` does not divide `self`.
    pub fn exact_div(&self, divisor: &Self) -> Option<Self> {
        let (q, r) = self.div_rem(divisor)?;
        r.is_zero().then_some(q)
    }

    pub fn divides(&self, other: &Self) -> bool {
        other.div_rem(self).is_some_and(|(_, r)| r.is_zero())
    }

    /// Monic greatest common divisor (zero only if both inputs are zero).
    pub fn gcd(&self, other: &Self) -> Self {
        let mut a = self.monic();
        let mut b = other.monic();
        while !b.is_zero() {
            let (_, r) = a.div_rem(&b).expect("nonzero divisor");
            a = b;
            b = r.monic();
        }
        a
    }

    /// Yun's square-free decomposition: returns `q_1, q_2, …` (monic,
    /// pairwise coprime, square-free) with `monic(self) = Π q_k^k`.
    pub fn squarefree_decomposition(&self) -> Vec<Self> {
        let f = self.monic();
        if f.degree().unwrap_or(0) == 0 {
            return Vec::new();
        }
        let df = f.derivative();
        let mut a = f.gcd(&df);
        let mut b = f.exact_div(&a).expect("gcd divides");
        let mut c = df.exact_div(&a).expect("gcd divides derivative");
        let mut d = c.sub(&b.derivative());
        let mut out = Vec::new();
        while !b.is_constant() {
            a = b.gcd(&d);
            out.push(a.clone());
            b = b.exact_div(&a).expect("gcd divides");
            c = d.exact_div(&a).expect("gcd divides");
            d = c.sub(&b.derivative());
        }
        while out.last().is_some_and(|p| p.is_constant()) {
            out.pop();
        }
        out
    }

    /// Largest `e` with `factor^e | self` (factor non-constant, self nonzero).
    pub fn multiplicity_of(&self, factor: &Self) -> usize {
        let mut e = 0;
        let mut cur = self.clone();
        while let Some(q) = cur.exact_div(factor) {
            if factor.is_constant() || cur.is_zero() {
                break;
            }
            cur = q;
            e += 1;
        }
        e
    }

    pub fn map<G: Scalar>(&self, f: impl Fn(&F) -> G) -> Poly<G> {
        Poly::new(self.coeffs.iter().map(f).collect())
    }
}

/// Refines a family of monic square-free polynomials into a pairwise-coprime
/// basis such that each input is a product of basis elements.
pub fn coprime_basis<F: Scalar>(inputs: &[Poly<F>]) -> Vec<Poly<F>> {
    let mut basis: Vec<Poly<F>> = Vec::new();
    for p in inputs {
        let mut queue = vec![p.monic()];
        while let Some(q) = queue.pop() {
            if q.is_constant() {
                continue;
            }
            let hit = basis.iter().enumerate().find_map(|(idx, b)| {
                let g = b.gcd(&q);
                (!g.is_constant()).then_some((idx, g))
            });
            match hit {
                None => basis.push(q),
                Some((idx, g)) => {
                    let b = basis.swap_remove(idx);
                    let b_rest = b.exact_div(&g).expect("gcd divides");
                    let q_rest = q.exact_div(&g).expect("gcd divides");
                    basis.push(g);
                    if !b_rest.is_constant() {
                        basis.push(b_rest.monic());
                    }
                    queue.push(q_rest.monic());
                }
            }
        }
    }
    basis
}

impl<F: Scalar + fmt::Display> fmt::Display for Poly<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            if !first {
                f.write_str(" + ")?;
            }
            first = false;
            let power = match i {
                0 => String::new(),
                1 => "s".to_string(),
                _ => format!("s^{i}"),
            };
            if i > 0 && *c == F::one() {
                f.write_str(&power)?;
            } else {
                write!(f, "({c}){power}")?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::Exact;

    fn p(cs: &[i64]) -> Poly<Exact> {
        Poly::new(cs.iter().map(|&c| Exact::from_i64(c)).collect())
    }

    #[test]
    fn division_and_gcd() {
        // (s-1)(s-2) and (s-1)(s+3)
        let a = p(&[2, -3, 1]);
        let b = p(&[-3, 2, 1]);
        assert_eq!(a.gcd(&b), p(&[-1, 1]));
        let (q, r) = a.mul(&b).div_rem(&b).unwrap();
        assert_eq!(q, a);
        assert!(r.is_zero());
        assert!(a.div_rem(&Poly::zero()).is_none());
    }

    #[test]
    fn yun_decomposition() {
        // s^2 (s-1)^3 (s+1)
        let f = Poly::x()
            .pow(2)
            .mul(&p(&[-1, 1]).pow(3))
            .mul(&p(&[1, 1]));
        let parts = f.squarefree_decomposition();
        assert_eq!(parts.len(), 3);
        assert_eq!(parts[0], p(&[1, 1]));
        assert_eq!(parts[1], Poly::x());
        assert_eq!(parts[2], p(&[-1, 1]));
    }

    #[test]
    fn yun_irrational_double_roots() {
        // (s^2 - 2)^2 never factors over the Gaussian rationals
        let f = p(&[-2, 0, 1]).pow(2);
        let parts = f.squarefree_decomposition();
        assert_eq!(parts.len(), 2);
        assert!(parts[0].is_constant() || parts[0] == Poly::one());
        assert_eq!(parts[1], p(&[-2, 0, 1]));
    }

    #[test]
    fn root_scaling() {
        let f = p(&[-2, 1]).mul(&p(&[-3, 1]));
        let g = f.scale_roots(&Exact::from_i64(2));
        assert_eq!(g, p(&[-4, 1]).mul(&p(&[-6, 1])));
    }

    #[test]
    fn basis_refinement() {
        let a = p(&[-1, 1]).mul(&p(&[-2, 1]));
        let b = p(&[-2, 1]).mul(&p(&[-3, 1]));
        let mut basis = coprime_basis(&[a, b, Poly::x()]);
        basis.sort_by_key(|q| q.coeff(0).to_c64().re as i64);
        assert_eq!(basis, vec![p(&[-3, 1]), p(&[-2, 1]), p(&[-1, 1]), Poly::x()]);
    }
}
