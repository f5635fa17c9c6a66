//! Named witness states.
//!
//! Four-qubit entries either expand exactly the kets printed for them in
//! the classification (`PaperExplicit`) or are transcriptions of the
//! standard families they are specialised from (`ReferenceTranscribed`).
//! Side conditions on parameters follow one rule: equalities are taken as
//! printed, while "distinct" and "nonzero" are enforced on squares, since the
//! S-matrix eigenvalues are the squared parameters.

use crate::error::{Error, Result};
use crate::scalar::{Exact, Scalar};
use crate::state::PureState;

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Source {
    PaperExplicit,
    ReferenceTranscribed,
    /// Textbook two- and three-qubit states.
    Standard,
}

type Check = fn(&[Exact]) -> bool;
type Build = fn(&[Exact]) -> Vec<(usize, Exact)>;

/// A catalog entry.
#[derive(Clone, Copy)]
pub struct FixtureSpec {
    pub name: &'static str,
    pub qubits: usize,
    pub params: &'static [&'static str],
    pub source: Source,
    /// Family-table id this entry witnesses, if any.
    pub family: Option<u8>,
    /// Human-readable side condition.
    pub condition: &'static str,
    check: Check,
    build: Build,
}

impl std::fmt::Debug for FixtureSpec {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("FixtureSpec")
            .field("name", &self.name)
            .field("params", &self.params)
            .field("source", &self.source)
            .field("family", &self.family)
            .finish()
    }
}

/// Parameter values tried by [`FixtureSpec::sweep`].
pub fn sweep_values() -> Vec<Exact> {
    [(0, 1), (1, 1), (-1, 1), (2, 1), (-2, 1), (3, 1), (1, 2)]
        .iter()
        .map(|&(p, q)| Exact::from_ratio(p, q))
        .collect()
}

impl FixtureSpec {
    pub fn satisfied(&self, values: &[Exact]) -> bool {
        values.len() == self.params.len() && (self.check)(values)
    }

    /// Expands the state after checking arity and the side condition.
    pub fn state(&self, values: &[Exact]) -> Result<PureState<Exact>> {
        if values.len() != self.params.len() {
            let missing = self.params.get(values.len()).copied().unwrap_or("?");
            return Err(Error::MissingParameter {
                name: self.name.to_string(),
                param: missing.to_string(),
            });
        }
        if !(self.check)(values) {
            return Err(Error::SideCondition {
                name: self.name.to_string(),
                condition: self.condition.to_string(),
            });
        }
        PureState::from_sparse(self.qubits, (self.build)(values))
    }

    /// Parameter tuples over [`sweep_values`] meeting the side condition,
    /// at most `limit`, spread evenly across the lexicographic enumeration.
    pub fn sweep(&self, limit: usize) -> Vec<Vec<Exact>> {
        let values = sweep_values();
        let k = self.params.len();
        let total = values.len().pow(k as u32);
        let valid: Vec<Vec<Exact>> = (0..total)
            .map(|mut code| {
                let mut t = vec![Exact::zero(); k];
                for slot in t.iter_mut().rev() {
                    *slot = values[code % values.len()].clone();
                    code /= values.len();
                }
                t
            })
            .filter(|t| (self.check)(t))
            .collect();
        if valid.len() <= limit || limit < 2 {
            return valid.into_iter().take(limit.max(1)).collect();
        }
        let mut picks: Vec<usize> = (0..limit).map(|i| i * (valid.len() - 1) / (limit - 1)).collect();
        picks.dedup();
        picks.into_iter().map(|i| valid[i].clone()).collect()
    }

    /// First tuple of the sweep; used when no parameters are supplied.
    pub fn example(&self) -> Option<Vec<Exact>> {
        self.sweep(1).into_iter().next()
    }
}

fn sq(x: &Exact) -> Exact {
    x.clone() * x
}

fn nz(x: &Exact) -> bool {
    !x.is_zero()
}

/// Pairwise distinct squares.
fn distinct_sq(xs: &[&Exact]) -> bool {
    let s: Vec<Exact> = xs.iter().map(|x| sq(x)).collect();
    (0..s.len()).all(|i| (i + 1..s.len()).all(|j| s[i] != s[j]))
}

/// (number of zeros, multiplicities of distinct nonzero squares, descending)
fn square_pattern(xs: &[Exact]) -> (usize, Vec<usize>) {
    let zeros = xs.iter().filter(|x| x.is_zero()).count();
    let mut seen: Vec<(Exact, usize)> = Vec::new();
    for x in xs.iter().filter(|x| nz(x)) {
        let s = sq(x);
        match seen.iter_mut().find(|(v, _)| *v == s) {
            Some((_, c)) => *c += 1,
            None => seen.push((s, 1)),
        }
    }
    let mut mult: Vec<usize> = seen.into_iter().map(|(_, c)| c).collect();
    mult.sort_unstable_by(|a, b| b.cmp(a));
    (zeros, mult)
}

fn half(x: Exact) -> Exact {
    x * Exact::from_ratio(1, 2)
}

fn i_over_sqrt2() -> Exact {
    // i/√2 = (i/2)·√2
    Exact::imag_unit() * Exact::sqrt2() * Exact::from_ratio(1, 2)
}

fn one() -> Exact {
    Exact::one()
}

fn g_abcd(p: &[Exact]) -> Vec<(usize, Exact)> {
    let (a, b, c, d) = (&p[0], &p[1], &p[2], &p[3]);
    let s = half(a.clone() + d);
    let t = half(a.clone() - d);
    let u = half(b.clone() + c);
    let v = half(b.clone() - c);
    vec![
        (0, s.clone()),
        (15, s),
        (3, t.clone()),
        (12, t),
        (5, u.clone()),
        (10, u),
        (6, v.clone()),
        (9, v),
    ]
}

fn l_abc2(p: &[Exact]) -> Vec<(usize, Exact)> {
    let (a, b, c) = (&p[0], &p[1], &p[2]);
    let s = half(a.clone() + b);
    let t = half(a.clone() - b);
    vec![
        (0, s.clone()),
        (15, s),
        (3, t.clone()),
        (12, t),
        (5, c.clone()),
        (10, c.clone()),
        (6, one()),
    ]
}

fn l_a2b2(p: &[Exact]) -> Vec<(usize, Exact)> {
    let (a, b) = (&p[0], &p[1]);
    vec![
        (0, a.clone()),
        (15, a.clone()),
        (5, b.clone()),
        (10, b.clone()),
        (6, one()),
        (3, one()),
    ]
}

/// `x(|0>+|15>) + (x+y)/2 (|5>+|10>) + (x-y)/2 (|6>+|9>) + i/√2 (|1>+|2> ± (|7>+|11>))`
fn ab3(x: &Exact, y: &Exact, tail_sign: i64) -> Vec<(usize, Exact)> {
    let u = half(x.clone() + y);
    let v = half(x.clone() - y);
    let w = i_over_sqrt2();
    let tail = w.clone() * Exact::from_i64(tail_sign);
    vec![
        (0, x.clone()),
        (15, x.clone()),
        (5, u.clone()),
        (10, u),
        (6, v.clone()),
        (9, v),
        (1, w.clone()),
        (2, w),
        (7, tail.clone()),
        (11, tail),
    ]
}

fn l_ab3(p: &[Exact]) -> Vec<(usize, Exact)> {
    ab3(&p[0], &p[1], 1)
}

fn l_star_ab3(p: &[Exact]) -> Vec<(usize, Exact)> {
    ab3(&p[0], &p[1], -1)
}

fn l_prime_ab3(p: &[Exact]) -> Vec<(usize, Exact)> {
    // b(|0>+|15>) + (b+a)/2 (|5>+|10>) + (b-a)/2 (|6>+|9>) + i/√2 (|1>+|2>-|7>-|11>)
    ab3(&p[1], &p[0], -1)
}

fn theta3(p: &[Exact]) -> Vec<(usize, Exact)> {
    let a = &p[0];
    let h = half(a.clone());
    let w = i_over_sqrt2();
    vec![
        (0, a.clone()),
        (15, a.clone()),
        (5, h.clone()),
        (10, h.clone()),
        (6, h.clone()),
        (9, h),
        (1, w.clone()),
        (2, w.clone()),
        (7, -w.clone()),
        (11, -w),
    ]
}

fn l_a4(p: &[Exact]) -> Vec<(usize, Exact)> {
    let a = &p[0];
    let i = Exact::imag_unit();
    vec![
        (0, a.clone()),
        (5, a.clone()),
        (10, a.clone()),
        (15, a.clone()),
        (1, i.clone()),
        (6, one()),
        (11, -i),
    ]
}

fn l_a2_031(p: &[Exact]) -> Vec<(usize, Exact)> {
    let a = &p[0];
    vec![(0, a.clone()), (15, a.clone()), (3, one()), (5, one()), (6, one())]
}

fn l_071(_: &[Exact]) -> Vec<(usize, Exact)> {
    vec![(0, one()), (11, one()), (13, one()), (14, one())]
}

fn zeta4(p: &[Exact]) -> Vec<(usize, Exact)> {
    let (a, b) = (&p[0], &p[1]);
    vec![
        (0, a.clone()),
        (15, a.clone()),
        (5, b.clone()),
        (10, b.clone()),
        (6, one()),
    ]
}

fn zeta5(p: &[Exact]) -> Vec<(usize, Exact)> {
    zeta4(&[p[1].clone(), p[0].clone()])
}

fn mu(p: &[Exact]) -> Vec<(usize, Exact)> {
    let (a, b) = (&p[0], &p[1]);
    let s = half(a.clone() + b);
    let t = half(a.clone() - b);
    vec![
        (0, s.clone()),
        (15, s),
        (3, t.clone()),
        (12, t),
        (5, one()),
        (6, one()),
    ]
}

fn xi(p: &[Exact]) -> Vec<(usize, Exact)> {
    let h = half(p[0].clone());
    let i = Exact::imag_unit();
    vec![
        (0, h.clone()),
        (3, h.clone()),
        (12, h.clone()),
        (15, h),
        (1, i.clone()),
        (13, -i),
        (10, one()),
    ]
}

fn basis(indices: &'static [usize]) -> impl Fn(&[Exact]) -> Vec<(usize, Exact)> {
    move |_| indices.iter().map(|&i| (i, one())).collect()
}

fn always(_: &[Exact]) -> bool {
    true
}

/// exactly one of the first two parameters is zero
fn one_of_ab_zero(p: &[Exact]) -> bool {
    p[0].is_zero() != p[1].is_zero()
}

/// the nonzero one of the first two parameters
fn other_ab(p: &[Exact]) -> &Exact {
    if p[0].is_zero() {
        &p[1]
    } else {
        &p[0]
    }
}

macro_rules! fixture {
    ($name:expr, $n:expr, [$($p:expr),*], $src:ident, $fam:expr, $cond:expr, $check:expr, $build:expr) => {
        FixtureSpec {
            name: $name,
            qubits: $n,
            params: &[$($p),*],
            source: Source::$src,
            family: $fam,
            condition: $cond,
            check: $check,
            build: $build,
        }
    };
}

fn g_pattern(p: &[Exact], zeros: usize, mult: &[usize]) -> bool {
    let (z, m) = square_pattern(p);
    z == zeros && m == mult
}

/// The full catalog, in a fixed order.
pub fn catalog() -> &'static [FixtureSpec] {
    use std::sync::OnceLock;
    static CATALOG: OnceLock<Vec<FixtureSpec>> = OnceLock::new();
    CATALOG.get_or_init(build_catalog)
}

fn build_catalog() -> Vec<FixtureSpec> {
    vec![
        // parent families
        fixture!("G_abcd", 4, ["a", "b", "c", "d"], ReferenceTranscribed, None, "none", always, g_abcd),
        fixture!("L_abc2", 4, ["a", "b", "c"], ReferenceTranscribed, None, "none", always, l_abc2),
        fixture!("L_a2b2", 4, ["a", "b"], ReferenceTranscribed, None, "none", always, l_a2b2),
        fixture!("L_ab3", 4, ["a", "b"], ReferenceTranscribed, None, "none", always, l_ab3),
        fixture!("Lstar_ab3", 4, ["a", "b"], ReferenceTranscribed, None, "none", always, l_star_ab3),
        fixture!("L_a4", 4, ["a"], ReferenceTranscribed, None, "none", always, l_a4),
        fixture!("L_a2_0_3+1", 4, ["a"], ReferenceTranscribed, None, "none", always, l_a2_031),
        fixture!("Lprime_ab3", 4, ["a", "b"], PaperExplicit, None, "none", always, l_prime_ab3),
        fixture!("mu", 4, ["a", "b"], PaperExplicit, None, "none", always, mu),
        fixture!("xi", 4, ["a"], PaperExplicit, None, "none", always, xi),
        // group 1
        fixture!("tau1", 4, ["a"], ReferenceTranscribed, Some(1), "a != 0", |p| nz(&p[0]), l_a4),
        fixture!("eta1", 4, ["a", "b"], ReferenceTranscribed, Some(2), "a = b != 0",
            |p| nz(&p[0]) && p[0] == p[1], l_a2b2),
        fixture!("theta1", 4, ["a", "b"], PaperExplicit, Some(3), "a = b != 0",
            |p| nz(&p[0]) && p[0] == p[1], l_prime_ab3),
        fixture!("zeta1", 4, ["a", "b", "c"], ReferenceTranscribed, Some(4), "a = b = c != 0",
            |p| nz(&p[0]) && p[0] == p[1] && p[1] == p[2], l_abc2),
        fixture!("G1", 4, ["a", "b", "c", "d"], ReferenceTranscribed, Some(5), "abcd != 0, a^2 = b^2 = c^2 = d^2",
            |p| g_pattern(p, 0, &[4]), g_abcd),
        // group 2
        fixture!("theta2", 4, ["a", "b"], PaperExplicit, Some(6), "ab != 0, a^2 != b^2",
            |p| nz(&p[0]) && nz(&p[1]) && distinct_sq(&[&p[0], &p[1]]), l_prime_ab3),
        fixture!("zeta2", 4, ["a", "b", "c"], ReferenceTranscribed, Some(7),
            "abc != 0, exactly one of a, b equals c, the other's square differs",
            |p| {
                p.iter().all(nz)
                    && ((p[0] == p[2] && sq(&p[1]) != sq(&p[2])) || (p[1] == p[2] && sq(&p[0]) != sq(&p[2])))
            },
            l_abc2),
        fixture!("G2", 4, ["a", "b", "c", "d"], ReferenceTranscribed, Some(8), "abcd != 0, squares split 3 + 1",
            |p| g_pattern(p, 0, &[3, 1]), g_abcd),
        // group 3
        fixture!("zeta3", 4, ["a", "b", "c"], ReferenceTranscribed, Some(9), "abc != 0, a^2, b^2, c^2 distinct",
            |p| p.iter().all(nz) && distinct_sq(&[&p[0], &p[1], &p[2]]), l_abc2),
        fixture!("G3", 4, ["a", "b", "c", "d"], ReferenceTranscribed, Some(10), "abcd != 0, squares split 2 + 1 + 1",
            |p| g_pattern(p, 0, &[2, 1, 1]), g_abcd),
        // group 4
        fixture!("G4", 4, ["a", "b", "c", "d"], ReferenceTranscribed, Some(11), "abcd != 0, squares split 2 + 2",
            |p| g_pattern(p, 0, &[2, 2]), g_abcd),
        fixture!("zeta4", 4, ["a", "b"], PaperExplicit, Some(12), "ab != 0, a^2 != b^2",
            |p| nz(&p[0]) && nz(&p[1]) && distinct_sq(&[&p[0], &p[1]]), zeta4),
        fixture!("eta2", 4, ["a", "b"], ReferenceTranscribed, Some(13), "ab != 0, a^2 != b^2",
            |p| nz(&p[0]) && nz(&p[1]) && distinct_sq(&[&p[0], &p[1]]), l_a2b2),
        // group 5
        fixture!("G5", 4, ["a", "b", "c", "d"], ReferenceTranscribed, Some(14), "abcd != 0, squares distinct",
            |p| g_pattern(p, 0, &[1, 1, 1, 1]), g_abcd),
        // group 6
        fixture!("theta3", 4, ["a"], PaperExplicit, Some(15), "a != 0", |p| nz(&p[0]), theta3),
        fixture!("zeta6", 4, ["a", "b", "c"], ReferenceTranscribed, Some(16),
            "c != 0, exactly one of a, b is zero, the other equals c",
            |p| nz(&p[2]) && one_of_ab_zero(p) && *other_ab(p) == p[2], l_abc2),
        fixture!("G6", 4, ["a", "b", "c", "d"], ReferenceTranscribed, Some(17), "one zero, other squares equal",
            |p| g_pattern(p, 1, &[3]), g_abcd),
        // group 7
        fixture!("zeta7", 4, ["a", "b", "c"], ReferenceTranscribed, Some(18),
            "c != 0, exactly one of a, b is zero, the other's square differs from c^2",
            |p| nz(&p[2]) && one_of_ab_zero(p) && sq(other_ab(p)) != sq(&p[2]), l_abc2),
        fixture!("G7", 4, ["a", "b", "c", "d"], ReferenceTranscribed, Some(19), "one zero, other squares split 2 + 1",
            |p| g_pattern(p, 1, &[2, 1]), g_abcd),
        // group 8
        fixture!("G8", 4, ["a", "b", "c", "d"], ReferenceTranscribed, Some(20), "one zero, other squares distinct",
            |p| g_pattern(p, 1, &[1, 1, 1]), g_abcd),
        // group 9
        fixture!("kappa1", 4, ["a"], ReferenceTranscribed, Some(21), "a != 0", |p| nz(&p[0]), l_a2_031),
        fixture!("mu2", 4, ["a", "b"], PaperExplicit, Some(22), "a = b != 0",
            |p| nz(&p[0]) && p[0] == p[1], mu),
        fixture!("zeta9", 4, ["a", "b", "c"], ReferenceTranscribed, Some(23), "c != 0, a = b = 0",
            |p| nz(&p[2]) && p[0].is_zero() && p[1].is_zero(), l_abc2),
        fixture!("zeta8", 4, ["a", "b", "c"], ReferenceTranscribed, Some(24), "c = 0, a = b != 0",
            |p| p[2].is_zero() && nz(&p[0]) && p[0] == p[1], l_abc2),
        // group 10
        fixture!("mu1", 4, ["a", "b"], PaperExplicit, Some(25), "ab != 0, a^2 != b^2",
            |p| nz(&p[0]) && nz(&p[1]) && distinct_sq(&[&p[0], &p[1]]), mu),
        fixture!("zeta10", 4, ["a", "b", "c"], ReferenceTranscribed, Some(26), "c = 0, ab != 0, a^2 != b^2",
            |p| p[2].is_zero() && nz(&p[0]) && nz(&p[1]) && distinct_sq(&[&p[0], &p[1]]), l_abc2),
        // group 11
        fixture!("xi1", 4, ["a"], PaperExplicit, Some(27), "a != 0", |p| nz(&p[0]), xi),
        fixture!("theta4", 4, ["a", "b"], PaperExplicit, Some(28), "b = 0, a != 0",
            |p| p[1].is_zero() && nz(&p[0]), l_prime_ab3),
        fixture!("zeta11", 4, ["a", "b", "c"], ReferenceTranscribed, Some(29), "c = 0, exactly one of a, b is zero",
            |p| p[2].is_zero() && one_of_ab_zero(p), l_abc2),
        // group 12
        fixture!("L_0_7+1", 4, [], ReferenceTranscribed, Some(30), "none", always, l_071),
        fixture!("xi2", 4, ["a"], PaperExplicit, Some(31), "a = 0", |p| p[0].is_zero(), xi),
        fixture!("tau2", 4, ["a"], ReferenceTranscribed, Some(32), "a = 0", |p| p[0].is_zero(), l_a4),
        fixture!("theta5", 4, ["a", "b"], PaperExplicit, Some(33), "a = b = 0",
            |p| p[0].is_zero() && p[1].is_zero(), l_prime_ab3),
        fixture!("zeta12", 4, ["a", "b", "c"], ReferenceTranscribed, Some(34), "a = b = c = 0",
            |p| p.iter().all(|x| x.is_zero()), l_abc2),
        // the swap partner of zeta4
        fixture!("zeta5", 4, ["a", "b"], PaperExplicit, None, "ab != 0, a^2 != b^2",
            |p| nz(&p[0]) && nz(&p[1]) && distinct_sq(&[&p[0], &p[1]]), zeta5),
        // three qubits
        fixture!("ghz", 3, [], Standard, None, "none", always, |_| {
            let h = Exact::sqrt2() * Exact::from_ratio(1, 2);
            vec![(0, h.clone()), (7, h)]
        }),
        fixture!("w", 3, [], Standard, None, "none", always, |p| basis(&[1, 2, 4])(p)),
        fixture!("a_bc", 3, [], Standard, None, "none", always, |p| basis(&[0, 3])(p)),
        fixture!("b_ac", 3, [], Standard, None, "none", always, |p| basis(&[0, 5])(p)),
        fixture!("c_ab", 3, [], Standard, None, "none", always, |p| basis(&[0, 6])(p)),
        fixture!("product3", 3, [], Standard, None, "none", always, |p| basis(&[0])(p)),
        // two qubits
        fixture!("bell", 2, [], Standard, None, "none", always, |_| {
            let h = Exact::sqrt2() * Exact::from_ratio(1, 2);
            vec![(0, h.clone()), (3, h)]
        }),
        fixture!("product2", 2, [], Standard, None, "none", always, |p| basis(&[0])(p)),
    ]
}

pub fn lookup(name: &str) -> Result<&'static FixtureSpec> {
    catalog()
        .iter()
        .find(|f| f.name == name)
        .ok_or_else(|| Error::UnknownFixture(name.to_string()))
}

/// Expands a named fixture. Parameters are matched by name; when none are
/// given the entry's first valid sweep tuple is used.
pub fn fixture_state(name: &str, params: &[(&str, Exact)]) -> Result<PureState<Exact>> {
    let spec = lookup(name)?;
    if params.is_empty() && !spec.params.is_empty() {
        let values = spec.example().ok_or_else(|| Error::SideCondition {
            name: name.to_string(),
            condition: spec.condition.to_string(),
        })?;
        return spec.state(&values);
    }
    let mut values = Vec::with_capacity(spec.params.len());
    for p in spec.params {
        let v = params
            .iter()
            .find(|(k, _)| k == p)
            .map(|(_, v)| v.clone())
            .ok_or_else(|| Error::MissingParameter {
                name: name.to_string(),
                param: p.to_string(),
            })?;
        values.push(v);
    }
    if let Some((extra, _)) = params.iter().find(|(k, _)| !spec.params.contains(k)) {
        return Err(Error::MissingParameter {
            name: name.to_string(),
            param: format!("unexpected parameter {extra}"),
        });
    }
    spec.state(&values)
}

/// Catalog entries witnessing table families, ordered by family id.
pub fn witnesses() -> Vec<&'static FixtureSpec> {
    let mut out: Vec<&FixtureSpec> = catalog().iter().filter(|f| f.family.is_some()).collect();
    out.sort_by_key(|f| f.family);
    out
}
