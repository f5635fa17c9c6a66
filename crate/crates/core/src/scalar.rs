//! Scalar fields.
//!
//! Two fields are supported and a computation never mixes them:
//!
//! * [`Exact`]: the field `Q(i, √2)`, elements `a + b·√2` with `a`, `b`
//!   Gaussian rationals. Gaussian-rational inputs never leave the `b = 0`
//!   subfield unless a caller introduces `√2` explicitly.
//! * [`Complex64`]: IEEE binary64 complex numbers.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Arithmetic shared by the exact and floating fields.
pub trait Scalar:
    Clone
    + fmt::Debug
    + PartialEq
    + Send
    + Sync
    + 'static
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
    + for<'a> Add<&'a Self, Output = Self>
    + for<'a> Sub<&'a Self, Output = Self>
    + for<'a> Mul<&'a Self, Output = Self>
{
    fn zero() -> Self;
    fn one() -> Self;
    /// The imaginary unit.
    fn imag_unit() -> Self;
    /// Structural zero test. For floats this is `== 0.0`; tolerance-aware
    /// comparisons live in the float spectral code.
    fn is_zero(&self) -> bool;
    fn from_i64(v: i64) -> Self;
    fn from_ratio(num: i64, den: i64) -> Self;
    fn from_gaussian(re: i64, im: i64) -> Self {
        Self::from_i64(re) + Self::imag_unit() * Self::from_i64(im)
    }
    fn inv(&self) -> Option<Self>;
    fn conj(&self) -> Self;
    fn to_c64(&self) -> Complex64;

    fn div_checked(&self, rhs: &Self) -> Option<Self> {
        rhs.inv().map(|r| self.clone() * r)
    }

    fn powi(&self, exp: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..exp {
            acc = acc * self;
        }
        acc
    }
}

// ---------------------------------------------------------------------------
// Rationals

fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

/// Square root of a rational, if it is itself rational.
pub fn sqrt_rational(x: &BigRational) -> Option<BigRational> {
    if x.is_negative() {
        return None;
    }
    if x.is_zero() {
        return Some(BigRational::zero());
    }
    let n = x.numer().sqrt();
    let d = x.denom().sqrt();
    if &(&n * &n) == x.numer() && &(&d * &d) == x.denom() {
        Some(BigRational::new(n, d))
    } else {
        None
    }
}

/// Sign of `x + y·√2` for rationals `x`, `y`.
fn sign_q_sqrt2(x: &BigRational, y: &BigRational) -> Ordering {
    let sx = x.cmp(&BigRational::zero());
    let sy = y.cmp(&BigRational::zero());
    match (sx, sy) {
        (Ordering::Equal, s) | (s, Ordering::Equal) => s,
        (a, b) if a == b => a,
        (a, _) => {
            // opposite signs: compare x^2 against 2y^2
            let two = rat(2, 1);
            match (x * x).cmp(&(two * y * y)) {
                Ordering::Greater => a,
                Ordering::Less => a.reverse(),
                Ordering::Equal => Ordering::Equal,
            }
        }
    }
}

/// Best rational approximation with denominator at most `max_den`.
pub fn approximate_rational(x: f64, max_den: i64) -> Option<BigRational> {
    if !x.is_finite() || x.abs() > 1e15 {
        return None;
    }
    let (mut p0, mut q0, mut p1, mut q1) = (0i128, 1i128, 1i128, 0i128);
    let mut v = x;
    for _ in 0..64 {
        let a = v.floor();
        let ai = a as i128;
        let p2 = ai * p1 + p0;
        let q2 = ai * q1 + q0;
        if q2 > max_den as i128 {
            break;
        }
        p0 = p1;
        q0 = q1;
        p1 = p2;
        q1 = q2;
        let frac = v - a;
        if frac.abs() < 1e-15 {
            break;
        }
        v = 1.0 / frac;
    }
    if q1 == 0 {
        return None;
    }
    Some(BigRational::new(BigInt::from(p1), BigInt::from(q1)))
}

fn fmt_rational(q: &BigRational) -> String {
    if q.denom().is_one() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

fn parse_rational(s: &str) -> Option<BigRational> {
    let s = s.trim();
    if s.is_empty() {
        return None;
    }
    let ok = |t: &str| !t.is_empty() && t.bytes().all(|b| b.is_ascii_digit());
    match s.split_once('/') {
        Some((n, d)) => {
            if !ok(n) || !ok(d) {
                return None;
            }
            let d: BigInt = d.parse().ok()?;
            if d.is_zero() {
                return None;
            }
            Some(BigRational::new(n.parse().ok()?, d))
        }
        None => {
            if !ok(s) {
                return None;
            }
            Some(BigRational::from_integer(s.parse().ok()?))
        }
    }
}

// Integer and zero operands skip the gcd normalisation, which otherwise
// dominates the cost of exact linear algebra.
fn qmul(x: &BigRational, y: &BigRational) -> BigRational {
    if x.is_zero() || y.is_zero() {
        BigRational::zero()
    } else if x.is_integer() && y.is_integer() {
        BigRational::from_integer(x.numer() * y.numer())
    } else {
        x * y
    }
}

fn qadd(x: &BigRational, y: &BigRational) -> BigRational {
    if x.is_zero() {
        y.clone()
    } else if y.is_zero() {
        x.clone()
    } else if x.is_integer() && y.is_integer() {
        BigRational::from_integer(x.numer() + y.numer())
    } else {
        x + y
    }
}

fn qsub(x: &BigRational, y: &BigRational) -> BigRational {
    if y.is_zero() {
        x.clone()
    } else if x.is_integer() && y.is_integer() {
        BigRational::from_integer(x.numer() - y.numer())
    } else {
        x - y
    }
}

// ---------------------------------------------------------------------------
// Gaussian rationals

/// An element `re + im·i` of `Q(i)`.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct GaussianRational {
    pub re: BigRational,
    pub im: BigRational,
}

impl GaussianRational {
    pub fn new(re: BigRational, im: BigRational) -> Self {
        Self { re, im }
    }

    pub fn from_ints(re: i64, im: i64) -> Self {
        Self::new(rat(re, 1), rat(im, 1))
    }

    pub fn zero() -> Self {
        Self::new(BigRational::zero(), BigRational::zero())
    }

    pub fn one() -> Self {
        Self::from_ints(1, 0)
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn conj(&self) -> Self {
        Self::new(self.re.clone(), -self.im.clone())
    }

    pub fn norm_sqr(&self) -> BigRational {
        &self.re * &self.re + &self.im * &self.im
    }

    pub fn inv(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        let n = self.norm_sqr();
        Some(Self::new(&self.re / &n, -(&self.im / &n)))
    }

    pub fn scale(&self, q: &BigRational) -> Self {
        Self::new(qmul(&self.re, q), qmul(&self.im, q))
    }

    /// Square root inside `Q(i)`, if one exists.
    pub fn sqrt(&self) -> Option<Self> {
        if self.is_zero() {
            return Some(Self::zero());
        }
        let modulus = sqrt_rational(&self.norm_sqr())?;
        let half = rat(1, 2);
        let u = sqrt_rational(&((&modulus + &self.re) * &half))?;
        let mut v = sqrt_rational(&((&modulus - &self.re) * &half))?;
        if self.im.is_negative() {
            v = -v;
        }
        let root = Self::new(u, v);
        (root.mul_ref(&root) == *self).then_some(root)
    }

    fn mul_ref(&self, rhs: &Self) -> Self {
        if self.im.is_zero() && rhs.im.is_zero() {
            return Self::new(qmul(&self.re, &rhs.re), BigRational::zero());
        }
        Self::new(
            qsub(&qmul(&self.re, &rhs.re), &qmul(&self.im, &rhs.im)),
            qadd(&qmul(&self.re, &rhs.im), &qmul(&self.im, &rhs.re)),
        )
    }

    fn add_ref(&self, rhs: &Self) -> Self {
        Self::new(qadd(&self.re, &rhs.re), qadd(&self.im, &rhs.im))
    }

    fn sub_ref(&self, rhs: &Self) -> Self {
        Self::new(qsub(&self.re, &rhs.re), qsub(&self.im, &rhs.im))
    }

    fn to_c64(&self) -> Complex64 {
        Complex64::new(
            self.re.to_f64().unwrap_or(f64::NAN),
            self.im.to_f64().unwrap_or(f64::NAN),
        )
    }
}

impl Neg for GaussianRational {
    type Output = Self;
    fn neg(self) -> Self {
        Self::new(-self.re, -self.im)
    }
}

// ---------------------------------------------------------------------------
// Q(i, √2)

/// Exact scalar `a + b·√2` with Gaussian-rational `a`, `b`.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct Exact {
    pub a: GaussianRational,
    pub b: GaussianRational,
}

impl Exact {
    pub fn new(a: GaussianRational, b: GaussianRational) -> Self {
        Self { a, b }
    }

    pub fn gaussian(re: BigRational, im: BigRational) -> Self {
        Self::new(GaussianRational::new(re, im), GaussianRational::zero())
    }

    pub fn rational(q: BigRational) -> Self {
        Self::gaussian(q, BigRational::zero())
    }

    pub fn sqrt2() -> Self {
        Self::new(GaussianRational::zero(), GaussianRational::one())
    }

    /// True when the `√2` component vanishes.
    pub fn is_gaussian(&self) -> bool {
        self.b.is_zero()
    }

    /// True for elements of `Q`.
    pub fn is_rational(&self) -> bool {
        self.b.is_zero() && self.a.im.is_zero()
    }

    /// Square root inside `Q(i, √2)`, if one exists.
    pub fn sqrt(&self) -> Option<Self> {
        if self.is_zero() {
            return Some(Self::zero());
        }
        let check = |r: Self| (r.clone() * &r == *self).then_some(r);
        if self.b.is_zero() {
            if let Some(c) = self.a.sqrt() {
                return check(Self::new(c, GaussianRational::zero()));
            }
            let half_a = self.a.scale(&rat(1, 2));
            let d = half_a.sqrt()?;
            return check(Self::new(GaussianRational::zero(), d));
        }
        // (c + d√2)^2 = a + b√2  =>  c^2 = (a ± sqrt(a^2 - 2b^2)) / 2
        let disc = self
            .a
            .mul_ref(&self.a)
            .sub_ref(&self.b.mul_ref(&self.b).scale(&rat(2, 1)));
        let s = disc.sqrt()?;
        for cand in [self.a.add_ref(&s), self.a.sub_ref(&s)] {
            let c2 = cand.scale(&rat(1, 2));
            if let Some(c) = c2.sqrt() {
                if c.is_zero() {
                    continue;
                }
                let d = self.b.mul_ref(&c.inv()?).scale(&rat(1, 2));
                if let Some(r) = check(Self::new(c, d)) {
                    return Some(r);
                }
            }
        }
        None
    }

    /// Real part as `x + y·√2`.
    fn real_parts(&self) -> (&BigRational, &BigRational) {
        (&self.a.re, &self.b.re)
    }

    fn imag_parts(&self) -> (&BigRational, &BigRational) {
        (&self.a.im, &self.b.im)
    }

    /// Lexicographic order on (real part, imaginary part), decided exactly.
    pub fn cmp_real_imag(&self, other: &Self) -> Ordering {
        let (x1, y1) = self.real_parts();
        let (x2, y2) = other.real_parts();
        match sign_q_sqrt2(&(x1 - x2), &(y1 - y2)) {
            Ordering::Equal => {
                let (x1, y1) = self.imag_parts();
                let (x2, y2) = other.imag_parts();
                sign_q_sqrt2(&(x1 - x2), &(y1 - y2))
            }
            o => o,
        }
    }

    /// Recovers a Gaussian rational close to `z` with bounded denominators.
    pub fn approximate(z: Complex64, max_den: i64) -> Option<Self> {
        let re = approximate_rational(z.re, max_den)?;
        let im = approximate_rational(z.im, max_den)?;
        Some(Self::gaussian(re, im))
    }

    /// Embeds an `f64` exactly (binary fractions are rationals).
    pub fn from_f64_exact(x: f64) -> Option<Self> {
        BigRational::from_float(x).map(Self::rational)
    }
}

impl Scalar for Exact {
    fn zero() -> Self {
        Self::default_zero()
    }
    fn one() -> Self {
        Self::rational(BigRational::one())
    }
    fn imag_unit() -> Self {
        Self::gaussian(BigRational::zero(), BigRational::one())
    }
    fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }
    fn from_i64(v: i64) -> Self {
        Self::rational(rat(v, 1))
    }
    fn from_ratio(num: i64, den: i64) -> Self {
        Self::rational(rat(num, den))
    }
    fn from_gaussian(re: i64, im: i64) -> Self {
        Self::gaussian(rat(re, 1), rat(im, 1))
    }
    fn inv(&self) -> Option<Self> {
        if self.b.is_zero() {
            return self
                .a
                .inv()
                .map(|a| Self::new(a, GaussianRational::zero()));
        }
        // (a + b√2)^-1 = (a - b√2) / (a^2 - 2b^2)
        let n = self
            .a
            .mul_ref(&self.a)
            .sub_ref(&self.b.mul_ref(&self.b).scale(&rat(2, 1)));
        let ninv = n.inv()?;
        Some(Self::new(
            self.a.mul_ref(&ninv),
            (-self.b.clone()).mul_ref(&ninv),
        ))
    }
    fn conj(&self) -> Self {
        Self::new(self.a.conj(), self.b.conj())
    }
    fn to_c64(&self) -> Complex64 {
        self.a.to_c64() + self.b.to_c64() * std::f64::consts::SQRT_2
    }
}

impl Exact {
    fn default_zero() -> Self {
        Self::new(GaussianRational::zero(), GaussianRational::zero())
    }

    fn add_ref(&self, rhs: &Self) -> Self {
        Self::new(self.a.add_ref(&rhs.a), self.b.add_ref(&rhs.b))
    }

    fn sub_ref(&self, rhs: &Self) -> Self {
        Self::new(self.a.sub_ref(&rhs.a), self.b.sub_ref(&rhs.b))
    }

    fn mul_ref(&self, rhs: &Self) -> Self {
        if self.b.is_zero() && rhs.b.is_zero() {
            return Self::new(self.a.mul_ref(&rhs.a), GaussianRational::zero());
        }
        // (a1 + b1√2)(a2 + b2√2) = a1a2 + 2b1b2 + (a1b2 + b1a2)√2
        let a = self
            .a
            .mul_ref(&rhs.a)
            .add_ref(&self.b.mul_ref(&rhs.b).scale(&rat(2, 1)));
        let b = self.a.mul_ref(&rhs.b).add_ref(&self.b.mul_ref(&rhs.a));
        Self::new(a, b)
    }
}

macro_rules! exact_binop {
    ($trait:ident, $method:ident, $impl:ident) => {
        impl $trait for Exact {
            type Output = Exact;
            fn $method(self, rhs: Exact) -> Exact {
                self.$impl(&rhs)
            }
        }
        impl<'a> $trait<&'a Exact> for Exact {
            type Output = Exact;
            fn $method(self, rhs: &'a Exact) -> Exact {
                self.$impl(rhs)
            }
        }
        impl<'a, 'b> $trait<&'b Exact> for &'a Exact {
            type Output = Exact;
            fn $method(self, rhs: &'b Exact) -> Exact {
                self.$impl(rhs)
            }
        }
    };
}

exact_binop!(Add, add, add_ref);
exact_binop!(Sub, sub, sub_ref);
exact_binop!(Mul, mul, mul_ref);

impl Div for Exact {
    type Output = Exact;
    /// Panics on division by zero, like integer division.
    fn div(self, rhs: Exact) -> Exact {
        self.div_checked(&rhs).expect("division by zero in Exact")
    }
}

impl Neg for Exact {
    type Output = Exact;
    fn neg(self) -> Exact {
        Self::new(-self.a, -self.b)
    }
}

impl From<i64> for Exact {
    fn from(v: i64) -> Self {
        Self::from_i64(v)
    }
}

impl fmt::Display for Exact {
    /// Canonical form, e.g. `1/2+3/4i`, `-i*sqrt2`, `0`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms = [
            (&self.a.re, ""),
            (&self.a.im, "i"),
            (&self.b.re, "sqrt2"),
            (&self.b.im, "i*sqrt2"),
        ];
        let mut out = String::new();
        for (q, unit) in terms {
            if q.is_zero() {
                continue;
            }
            let neg = q.is_negative();
            let mag = q.abs();
            if neg {
                out.push('-');
            } else if !out.is_empty() {
                out.push('+');
            }
            if unit.is_empty() {
                out.push_str(&fmt_rational(&mag));
            } else if mag.is_one() {
                out.push_str(unit);
            } else if unit == "i" {
                out.push_str(&fmt_rational(&mag));
                out.push('i');
            } else {
                out.push_str(&fmt_rational(&mag));
                out.push('*');
                out.push_str(unit);
            }
        }
        if out.is_empty() {
            out.push('0');
        }
        f.write_str(&out)
    }
}

impl FromStr for Exact {
    type Err = Error;

    /// Accepts sums of terms `[±][p[/q]][*]{i,sqrt2}…`, e.g. `1/2+3/4 i`,
    /// `-i`, `1/2*i*sqrt2`.
    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::MalformedScalar(s.to_string());
        let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if compact.is_empty() {
            return Err(bad());
        }
        let mut terms = Vec::new();
        let mut start = 0;
        for (idx, ch) in compact.char_indices() {
            if (ch == '+' || ch == '-') && idx > start {
                terms.push(&compact[start..idx]);
                start = idx;
            }
        }
        terms.push(&compact[start..]);

        let mut acc = Exact::zero();
        for term in terms {
            let (sign, body) = match term.as_bytes().first() {
                Some(b'-') => (-1, &term[1..]),
                Some(b'+') => (1, &term[1..]),
                _ => (1, term),
            };
            let digits_end = body
                .find(|c: char| !(c.is_ascii_digit() || c == '/'))
                .unwrap_or(body.len());
            let coeff = if digits_end == 0 {
                BigRational::one()
            } else {
                parse_rational(&body[..digits_end]).ok_or_else(bad)?
            };
            let mut value = Exact::rational(coeff * rat(sign, 1));
            let mut rest = &body[digits_end..];
            let mut saw_factor = false;
            while !rest.is_empty() {
                rest = rest.strip_prefix('*').unwrap_or(rest);
                if let Some(r) = rest.strip_prefix("sqrt2") {
                    value = value * Exact::sqrt2();
                    rest = r;
                } else if let Some(r) = rest.strip_prefix('i') {
                    value = value * Exact::imag_unit();
                    rest = r;
                } else {
                    return Err(bad());
                }
                saw_factor = true;
            }
            if digits_end == 0 && !saw_factor {
                return Err(bad());
            }
            acc = acc + value;
        }
        Ok(acc)
    }
}

// ---------------------------------------------------------------------------
// binary64 complex

impl Scalar for Complex64 {
    fn zero() -> Self {
        Complex64::new(0.0, 0.0)
    }
    fn one() -> Self {
        Complex64::new(1.0, 0.0)
    }
    fn imag_unit() -> Self {
        Complex64::new(0.0, 1.0)
    }
    fn is_zero(&self) -> bool {
        self.re == 0.0 && self.im == 0.0
    }
    fn from_i64(v: i64) -> Self {
        Complex64::new(v as f64, 0.0)
    }
    fn from_ratio(num: i64, den: i64) -> Self {
        Complex64::new(num as f64 / den as f64, 0.0)
    }
    fn from_gaussian(re: i64, im: i64) -> Self {
        Complex64::new(re as f64, im as f64)
    }
    fn inv(&self) -> Option<Self> {
        (!Scalar::is_zero(self)).then(|| 1.0 / self)
    }
    fn conj(&self) -> Self {
        Complex64::conj(self)
    }
    fn to_c64(&self) -> Complex64 {
        *self
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ex(s: &str) -> Exact {
        s.parse().unwrap()
    }

    #[test]
    fn parse_and_display() {
        assert_eq!(ex("1/2+3/4 i").to_string(), "1/2+3/4i");
        assert_eq!(ex("-i").to_string(), "-i");
        assert_eq!(ex("i").to_string(), "i");
        assert_eq!(ex("0").to_string(), "0");
        assert_eq!(ex("1/2*i*sqrt2").to_string(), "1/2*i*sqrt2");
        assert_eq!(ex("sqrt2 - 3").to_string(), "-3+sqrt2");
        assert_eq!(ex("2/4").to_string(), "1/2");
        for bad in ["", "1/0", "abc", "1//2", "+", "1/2x"] {
            assert!(bad.parse::<Exact>().is_err(), "{bad:?} parsed");
        }
    }

    #[test]
    fn field_inverse_with_sqrt2() {
        let x = ex("1+sqrt2+i");
        let y = x.inv().unwrap();
        assert_eq!(x * y, Exact::one());
        assert!(Exact::zero().inv().is_none());
    }

    #[test]
    fn square_roots() {
        for s in ["4", "-9/4", "2i", "3+4i", "2", "-2", "3+2*sqrt2", "1/4"] {
            let x = ex(s);
            let r = x.sqrt().unwrap_or_else(|| panic!("no sqrt for {s}"));
            assert_eq!(r.clone() * r, x, "{s}");
        }
        assert!(ex("3").sqrt().is_none());
        assert!(ex("1+i").sqrt().is_none());
    }

    #[test]
    fn exact_ordering() {
        assert_eq!(ex("sqrt2").cmp_real_imag(&ex("7/5")), Ordering::Greater);
        assert_eq!(ex("sqrt2").cmp_real_imag(&ex("3/2")), Ordering::Less);
        assert_eq!(ex("1+i").cmp_real_imag(&ex("1-i")), Ordering::Greater);
        assert_eq!(ex("1-sqrt2").cmp_real_imag(&ex("0")), Ordering::Less);
    }

    #[test]
    fn rational_approximation() {
        let q = approximate_rational(0.333_333_333_333_333_3, 1000).unwrap();
        assert_eq!(q, rat(1, 3));
        let q = approximate_rational(-2.25, 1000).unwrap();
        assert_eq!(q, rat(-9, 4));
    }
}
