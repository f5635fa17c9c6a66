//! The twelve characteristic-polynomial groups and the 34 Jordan-form
//! families of 4×4 matrices.

use std::fmt;
use std::sync::OnceLock;

use crate::spectral::{JordanForm, MultiplicityStructure};

/// Characteristic-polynomial group, 1 through 12.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct CpGroup(u8);

impl CpGroup {
    pub fn new(id: u8) -> Option<Self> {
        (1..=12).contains(&id).then_some(Self(id))
    }

    pub fn id(self) -> u8 {
        self.0
    }

    /// Spectrum pattern such as `00s1s2`.
    pub fn spectrum_pattern(self) -> &'static str {
        CP_PATTERNS[self.0 as usize - 1].0
    }

    /// Factored polynomial such as `s^2(s-s1)(s-s2)`.
    pub fn polynomial(self) -> &'static str {
        CP_PATTERNS[self.0 as usize - 1].1
    }
}

impl fmt::Display for CpGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

const CP_PATTERNS: [(&str, &str); 12] = [
    ("s1s1s1s1", "(s-s1)^4"),
    ("s1s2s2s2", "(s-s1)(s-s2)^3"),
    ("s1s2s3s3", "(s-s1)(s-s2)(s-s3)^2"),
    ("s1s1s2s2", "(s-s1)^2(s-s2)^2"),
    ("s1s2s3s4", "(s-s1)(s-s2)(s-s3)(s-s4)"),
    ("0s1s1s1", "s(s-s1)^3"),
    ("0s1s2s2", "s(s-s1)(s-s2)^2"),
    ("0s1s2s3", "s(s-s1)(s-s2)(s-s3)"),
    ("00s1s1", "s^2(s-s1)^2"),
    ("00s1s2", "s^2(s-s1)(s-s2)"),
    ("000s1", "s^3(s-s1)"),
    ("0000", "s^4"),
];

/// Group from the multiplicities of the nonzero roots and the multiplicity
/// of zero. Total on structures summing to 4.
pub fn cp_group(m: &MultiplicityStructure) -> CpGroup {
    let nonzero = m.nonzero_partition();
    let id = match (m.zero_multiplicity, nonzero.as_slice()) {
        (0, [4]) => 1,
        (0, [3, 1]) => 2,
        (0, [2, 1, 1]) => 3,
        (0, [2, 2]) => 4,
        (0, [1, 1, 1, 1]) => 5,
        (1, [3]) => 6,
        (1, [2, 1]) => 7,
        (1, [1, 1, 1]) => 8,
        (2, [2]) => 9,
        (2, [1, 1]) => 10,
        (3, [1]) => 11,
        (4, []) => 12,
        _ => panic!("multiplicity structure {m:?} does not describe a 4x4 matrix"),
    };
    CpGroup(id)
}

/// Scale-invariant shape of a Jordan form: the zero eigenvalue's blocks and,
/// for every distinct nonzero eigenvalue, its blocks. Nonzero classes are
/// ordered by (algebraic multiplicity ascending, block count descending,
/// blocks), so the symbolic labels `s1, s2, …` depend only on the shape.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct FamilySignature {
    pub zero_blocks: Vec<usize>,
    pub classes: Vec<Vec<usize>>,
}

impl FamilySignature {
    pub fn new(mut zero_blocks: Vec<usize>, mut classes: Vec<Vec<usize>>) -> Self {
        zero_blocks.sort_unstable_by(|a, b| b.cmp(a));
        for c in &mut classes {
            c.sort_unstable_by(|a, b| b.cmp(a));
        }
        classes.retain(|c| !c.is_empty());
        classes.sort_by(|a, b| {
            let (sa, sb): (usize, usize) = (a.iter().sum(), b.iter().sum());
            sa.cmp(&sb).then(b.len().cmp(&a.len())).then(b.cmp(a))
        });
        Self { zero_blocks, classes }
    }

    pub fn of(j: &JordanForm) -> Self {
        let mut zero = Vec::new();
        let mut classes = Vec::new();
        for c in j.classes() {
            if c.value.is_zero() {
                zero.extend(&c.blocks);
            } else {
                classes.push(c.blocks.clone());
            }
        }
        Self::new(zero, classes)
    }

    pub fn size(&self) -> usize {
        self.zero_blocks.iter().sum::<usize>() + self.classes.iter().flatten().sum::<usize>()
    }

    pub fn multiplicity_structure(&self) -> MultiplicityStructure {
        let zero: usize = self.zero_blocks.iter().sum();
        let mut partition: Vec<usize> = self.classes.iter().map(|c| c.iter().sum()).collect();
        if zero > 0 {
            partition.push(zero);
        }
        MultiplicityStructure::new(partition, zero)
    }

    /// Parses a pattern in the table's notation, e.g. `J2(0)s1s1`.
    pub fn parse(pattern: &str) -> Option<Self> {
        let mut zero = Vec::new();
        let mut labelled: Vec<(usize, Vec<usize>)> = Vec::new();
        let mut rest = pattern;
        while !rest.is_empty() {
            let (size, label, tail) = if let Some(t) = rest.strip_prefix('J') {
                let open = t.find('(')?;
                let close = t.find(')')?;
                let size: usize = t[..open].parse().ok()?;
                (size, &t[open + 1..close], &t[close + 1..])
            } else if let Some(t) = rest.strip_prefix('0') {
                (1, "0", t)
            } else {
                let t = rest.strip_prefix('s')?;
                let digits = t.find(|c: char| !c.is_ascii_digit()).unwrap_or(t.len());
                (1, &rest[..digits + 1], &t[digits..])
            };
            if label == "0" {
                zero.push(size);
            } else {
                let idx: usize = label.strip_prefix('s')?.parse().ok()?;
                match labelled.iter_mut().find(|(i, _)| *i == idx) {
                    Some((_, blocks)) => blocks.push(size),
                    None => labelled.push((idx, vec![size])),
                }
            }
            rest = tail;
        }
        Some(Self::new(zero, labelled.into_iter().map(|(_, b)| b).collect()))
    }
}

impl fmt::Display for FamilySignature {
    /// Canonical rendering: zero blocks first, then each class's blocks,
    /// largest first.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let block = |f: &mut fmt::Formatter<'_>, size: usize, label: &str| {
            if size == 1 {
                write!(f, "{label}")
            } else {
                write!(f, "J{size}({label})")
            }
        };
        for &b in &self.zero_blocks {
            block(f, b, "0")?;
        }
        for (i, c) in self.classes.iter().enumerate() {
            for &b in c {
                block(f, b, &format!("s{}", i + 1))?;
            }
        }
        Ok(())
    }
}

/// One row cell of the family table.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct FamilyEntry {
    /// 1 through 34, in table order.
    pub id: u8,
    pub group: u8,
    /// Pattern exactly as the table prints it.
    pub pattern: &'static str,
    /// Catalog key of the state realizing the family.
    pub witness: &'static str,
}

impl FamilyEntry {
    pub fn signature(&self) -> FamilySignature {
        FamilySignature::parse(self.pattern).expect("table patterns parse")
    }

    pub fn group(&self) -> CpGroup {
        CpGroup(self.group)
    }
}

macro_rules! families {
    ($(($id:expr, $group:expr, $pattern:expr, $witness:expr)),* $(,)?) => {
        [$(FamilyEntry { id: $id, group: $group, pattern: $pattern, witness: $witness }),*]
    };
}

pub const FAMILIES: [FamilyEntry; 34] = families![
    (1, 1, "J4(s1)", "tau1"),
    (2, 1, "J2(s1)J2(s1)", "eta1"),
    (3, 1, "J3(s1)s1", "theta1"),
    (4, 1, "s1s1J2(s1)", "zeta1"),
    (5, 1, "s1s1s1s1", "G1"),
    (6, 2, "s1J3(s2)", "theta2"),
    (7, 2, "s1s2J2(s2)", "zeta2"),
    (8, 2, "s1s2s2s2", "G2"),
    (9, 3, "s1s2J2(s3)", "zeta3"),
    (10, 3, "s1s2s3s3", "G3"),
    (11, 4, "s1s1s2s2", "G4"),
    (12, 4, "s1s1J2(s2)", "zeta4"),
    (13, 4, "J2(s1)J2(s2)", "eta2"),
    (14, 5, "s1s2s3s4", "G5"),
    (15, 6, "0J3(s1)", "theta3"),
    (16, 6, "0J2(s1)s1", "zeta6"),
    (17, 6, "0s1s1s1", "G6"),
    (18, 7, "0s1J2(s2)", "zeta7"),
    (19, 7, "0s1s2s2", "G7"),
    (20, 8, "0s1s2s3", "G8"),
    (21, 9, "J2(0)J2(s1)", "kappa1"),
    (22, 9, "J2(0)s1s1", "mu2"),
    (23, 9, "00J2(s1)", "zeta9"),
    (24, 9, "00s1s1", "zeta8"),
    (25, 10, "J2(0)s1s2", "mu1"),
    (26, 10, "00s1s2", "zeta10"),
    (27, 11, "J3(0)s1", "xi1"),
    (28, 11, "J2(0)0s1", "theta4"),
    (29, 11, "000s1", "zeta11"),
    (30, 12, "J4(0)", "L_0_7+1"),
    (31, 12, "J3(0)0", "xi2"),
    (32, 12, "J2(0)J2(0)", "tau2"),
    (33, 12, "J2(0)00", "theta5"),
    (34, 12, "0000", "zeta12"),
];

/// The family of a signature, if it describes a 4×4 matrix.
pub fn family_of(sig: &FamilySignature) -> Option<&'static FamilyEntry> {
    static SIGNATURES: OnceLock<Vec<FamilySignature>> = OnceLock::new();
    let sigs = SIGNATURES.get_or_init(|| FAMILIES.iter().map(FamilyEntry::signature).collect());
    sigs.iter().position(|s| s == sig).map(|i| &FAMILIES[i])
}

/// The table family of a Jordan form. `None` only for sizes other than 4.
pub fn sjnf_family(j: &JordanForm) -> Option<&'static FamilyEntry> {
    family_of(&FamilySignature::of(j))
}

pub fn family_by_id(id: u8) -> Option<&'static FamilyEntry> {
    FAMILIES.get((id as usize).checked_sub(1)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{Exact, Scalar};
    use crate::spectral::{EigenClass, Eigenvalue};

    fn jf(parts: &[(i64, &[usize])]) -> JordanForm {
        JordanForm::new(
            parts
                .iter()
                .map(|(v, b)| EigenClass {
                    value: Eigenvalue::Exact(Exact::from_i64(*v)),
                    blocks: b.to_vec(),
                })
                .collect(),
        )
    }

    #[test]
    fn cp_examples() {
        assert_eq!(cp_group(&MultiplicityStructure::new(vec![4], 0)).id(), 1);
        assert_eq!(cp_group(&MultiplicityStructure::new(vec![2, 1, 1], 2)).id(), 10);
        assert_eq!(cp_group(&MultiplicityStructure::new(vec![4], 4)).id(), 12);
    }

    #[test]
    fn family_examples() {
        assert_eq!(sjnf_family(&jf(&[(5, &[4])])).unwrap().witness, "tau1");
        assert_eq!(sjnf_family(&jf(&[(0, &[2]), (7, &[2])])).unwrap().witness, "kappa1");
        assert_eq!(sjnf_family(&jf(&[(0, &[1, 1, 1, 1])])).unwrap().witness, "zeta12");
        assert_eq!(sjnf_family(&jf(&[(9, &[2]), (4, &[1, 1])])).unwrap().id, 12);
    }

    /// Every shape of a 4×4 Jordan form, built independently of the table.
    fn all_shapes() -> Vec<FamilySignature> {
        fn partitions(n: usize, max: usize) -> Vec<Vec<usize>> {
            if n == 0 {
                return vec![vec![]];
            }
            let mut out = Vec::new();
            for first in (1..=n.min(max)).rev() {
                for mut rest in partitions(n - first, first) {
                    rest.insert(0, first);
                    out.push(rest);
                }
            }
            out
        }
        // set partitions of the multiset of blocks into labelled classes:
        // enumerate block lists then split into classes of any shape
        fn splits(blocks: &[usize]) -> Vec<Vec<Vec<usize>>> {
            if blocks.is_empty() {
                return vec![vec![]];
            }
            let mut out = Vec::new();
            for rest in splits(&blocks[1..]) {
                for i in 0..rest.len() {
                    let mut r = rest.clone();
                    r[i].push(blocks[0]);
                    out.push(r);
                }
                let mut r = rest.clone();
                r.push(vec![blocks[0]]);
                out.push(r);
            }
            out
        }
        let mut out = Vec::new();
        for zero in 0..=4 {
            let zero_shapes = partitions(zero, 4);
            for nz in partitions(4 - zero, 4) {
                for classes in splits(&nz) {
                    for z in &zero_shapes {
                        let s = FamilySignature::new(z.clone(), classes.clone());
                        if !out.contains(&s) {
                            out.push(s);
                        }
                    }
                }
            }
        }
        out
    }

    #[test]
    fn table_is_complete_and_unambiguous() {
        let shapes = all_shapes();
        assert_eq!(shapes.len(), 34);
        for s in &shapes {
            let hits: Vec<_> = FAMILIES.iter().filter(|f| f.signature() == *s).collect();
            assert_eq!(hits.len(), 1, "{s}");
            assert_eq!(cp_group(&s.multiplicity_structure()), hits[0].group(), "{s}");
        }
    }

    #[test]
    fn pattern_round_trip() {
        for f in &FAMILIES {
            let sig = f.signature();
            assert_eq!(sig.size(), 4);
            assert_eq!(FamilySignature::parse(&sig.to_string()).unwrap(), sig);
        }
        assert_eq!(FamilySignature::parse("0J2(s1)s1").unwrap().to_string(), "0J2(s1)s1");
        assert_eq!(FamilySignature::parse("s1s1J2(s1)").unwrap().to_string(), "J2(s1)s1s1");
    }
}
