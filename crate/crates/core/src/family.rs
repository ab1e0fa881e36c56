//! Boolean functions on `[q⟩` and the comparator families built from them.

use std::fmt;
use std::str::FromStr;

use crate::bounds::FamilyId;
use crate::error::{Error, Result};

/// Largest `q` for which families of all functions are materialized.
pub const MAX_FULL_FAMILY_Q: usize = 16;

/// Truth table of a function `[q⟩ → {0,1}`; `table[x] = f(x)`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct BoolFunc {
    table: Vec<bool>,
}

impl BoolFunc {
    pub fn new(table: Vec<bool>) -> Result<Self> {
        if table.len() < 2 {
            return Err(Error::Domain(format!(
                "truth table needs q >= 2 entries, got {}",
                table.len()
            )));
        }
        Ok(BoolFunc { table })
    }

    fn from_fn(q: usize, f: impl Fn(usize) -> bool) -> Self {
        BoolFunc {
            table: (0..q).map(f).collect(),
        }
    }

    /// Bit `x` of `mask` gives `f(x)`.
    pub fn from_mask(q: usize, mask: u64) -> Self {
        Self::from_fn(q, |x| (mask >> x) & 1 == 1)
    }

    pub fn to_mask(&self) -> Option<u64> {
        if self.q() > 64 {
            return None;
        }
        Some(
            self.table
                .iter()
                .enumerate()
                .fold(0u64, |m, (x, &b)| m | (u64::from(b) << x)),
        )
    }

    /// The tautology `1_q`.
    pub fn one(q: usize) -> Self {
        Self::from_fn(q, |_| true)
    }

    pub fn zero(q: usize) -> Self {
        Self::from_fn(q, |_| false)
    }

    pub fn eq(q: usize, t: usize) -> Self {
        Self::from_fn(q, |x| x == t)
    }

    pub fn ne(q: usize, t: usize) -> Self {
        Self::from_fn(q, |x| x != t)
    }

    pub fn ge(q: usize, t: usize) -> Self {
        Self::from_fn(q, |x| x >= t)
    }

    pub fn le(q: usize, t: usize) -> Self {
        Self::from_fn(q, |x| x <= t)
    }

    pub fn q(&self) -> usize {
        self.table.len()
    }

    pub fn eval(&self, x: usize) -> bool {
        self.table[x]
    }

    pub fn table(&self) -> &[bool] {
        &self.table
    }

    pub fn weight(&self) -> usize {
        self.table.iter().filter(|&&b| b).count()
    }
}

impl fmt::Display for BoolFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for &b in &self.table {
            f.write_str(if b { "1" } else { "0" })?;
        }
        Ok(())
    }
}

impl FromStr for BoolFunc {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let table = s
            .chars()
            .enumerate()
            .map(|(i, c)| match c {
                '0' => Ok(false),
                '1' => Ok(true),
                _ => Err(Error::Parse {
                    position: i,
                    message: format!("invalid truth-table bit {c:?}"),
                }),
            })
            .collect::<Result<Vec<_>>>()?;
        BoolFunc::new(table)
    }
}

/// Key of one family member in an encoding.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum MemberKey {
    /// Threshold parameter of an E, N, G or L member.
    T(usize),
    /// `Γ_q(·,t)` inside G∪L.
    G(usize),
    /// `L_q(·,t)` inside G∪L.
    L(usize),
    /// A member given by its truth table.
    F(BoolFunc),
}

impl fmt::Display for MemberKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MemberKey::T(t) => write!(f, "t={t}"),
            MemberKey::G(t) => write!(f, "G:t={t}"),
            MemberKey::L(t) => write!(f, "L:t={t}"),
            MemberKey::F(g) => write!(f, "f={g}"),
        }
    }
}

impl FromStr for MemberKey {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = |message: String| Error::Parse {
            position: 0,
            message,
        };
        let int = |v: &str| {
            v.parse::<usize>()
                .map_err(|_| bad(format!("invalid threshold in key {s:?}")))
        };
        if let Some(v) = s.strip_prefix("t=") {
            Ok(MemberKey::T(int(v)?))
        } else if let Some(v) = s.strip_prefix("G:t=") {
            Ok(MemberKey::G(int(v)?))
        } else if let Some(v) = s.strip_prefix("L:t=") {
            Ok(MemberKey::L(int(v)?))
        } else if let Some(v) = s.strip_prefix("f=") {
            Ok(MemberKey::F(v.parse()?))
        } else {
            Err(bad(format!("unrecognized member key {s:?}")))
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum FamilyKind {
    Named(FamilyId),
    /// All functions on `[q⟩` except `g`.
    PuncturedF(BoolFunc),
    Explicit(Vec<BoolFunc>),
}

impl fmt::Display for FamilyKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FamilyKind::Named(id) => write!(f, "{id}"),
            FamilyKind::PuncturedF(g) => write!(f, "PF:{g}"),
            FamilyKind::Explicit(_) => f.write_str("X"),
        }
    }
}

/// A family of functions on `[q⟩`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FamilySpec {
    pub kind: FamilyKind,
    pub q: usize,
}

impl FamilySpec {
    pub fn named(family: FamilyId, q: usize) -> Result<Self> {
        Self::new(FamilyKind::Named(family), q)
    }

    pub fn punctured(g: BoolFunc) -> Result<Self> {
        let q = g.q();
        Self::new(FamilyKind::PuncturedF(g), q)
    }

    pub fn explicit(members: Vec<BoolFunc>) -> Result<Self> {
        let q = members
            .first()
            .map(BoolFunc::q)
            .ok_or_else(|| Error::Domain("explicit family must not be empty".into()))?;
        Self::new(FamilyKind::Explicit(members), q)
    }

    pub fn new(kind: FamilyKind, q: usize) -> Result<Self> {
        if q < 2 {
            return Err(Error::Domain(format!("q must be at least 2, got {q}")));
        }
        match &kind {
            FamilyKind::Named(_) => {}
            FamilyKind::PuncturedF(g) => {
                if g.q() != q {
                    return Err(Error::Dimension {
                        expected: q,
                        actual: g.q(),
                    });
                }
            }
            FamilyKind::Explicit(list) => {
                for (i, f) in list.iter().enumerate() {
                    if f.q() != q {
                        return Err(Error::Dimension {
                            expected: q,
                            actual: f.q(),
                        });
                    }
                    if list[..i].contains(f) {
                        return Err(Error::Domain(format!("duplicate member f={f}")));
                    }
                }
            }
        }
        Ok(FamilySpec { kind, q })
    }

    /// Members in canonical order: thresholds ascending (G before L for
    /// G∪L); all-functions families by ascending truth-table mask.
    pub fn members(&self) -> Result<Vec<MemberKey>> {
        let q = self.q;
        let all_functions = |skip: Option<&BoolFunc>| -> Result<Vec<MemberKey>> {
            if q > MAX_FULL_FAMILY_Q {
                return Err(Error::Resource(format!(
                    "families of all functions are limited to q <= {MAX_FULL_FAMILY_Q}"
                )));
            }
            Ok((0..1u64 << q)
                .map(|m| BoolFunc::from_mask(q, m))
                .filter(|f| Some(f) != skip)
                .map(MemberKey::F)
                .collect())
        };
        match &self.kind {
            FamilyKind::Named(FamilyId::GL) => Ok((0..q)
                .map(MemberKey::G)
                .chain((0..q).map(MemberKey::L))
                .collect()),
            FamilyKind::Named(FamilyId::F) => all_functions(None),
            FamilyKind::Named(_) => Ok((0..q).map(MemberKey::T).collect()),
            FamilyKind::PuncturedF(g) => all_functions(Some(g)),
            FamilyKind::Explicit(list) => Ok(list.iter().cloned().map(MemberKey::F).collect()),
        }
    }

    /// Whether `key` names a member of this family.
    pub fn contains(&self, key: &MemberKey) -> bool {
        let q = self.q;
        match (&self.kind, key) {
            (FamilyKind::Named(FamilyId::GL), MemberKey::G(t) | MemberKey::L(t)) => *t < q,
            (
                FamilyKind::Named(FamilyId::E | FamilyId::N | FamilyId::G | FamilyId::L),
                MemberKey::T(t),
            ) => *t < q,
            (FamilyKind::Named(FamilyId::F), MemberKey::F(f)) => f.q() == q,
            (FamilyKind::PuncturedF(g), MemberKey::F(f)) => f.q() == q && f != g,
            (FamilyKind::Explicit(list), MemberKey::F(f)) => list.contains(f),
            _ => false,
        }
    }

    /// `f(x)` for the member named by `key`. The key must belong to the family.
    pub fn value(&self, key: &MemberKey, x: usize) -> bool {
        match (&self.kind, key) {
            (FamilyKind::Named(id), MemberKey::T(t)) => match id {
                FamilyId::E => x == *t,
                FamilyId::N => x != *t,
                FamilyId::G => x >= *t,
                FamilyId::L => x <= *t,
                _ => unreachable!("threshold key on {id}"),
            },
            (_, MemberKey::G(t)) => x >= *t,
            (_, MemberKey::L(t)) => x <= *t,
            (_, MemberKey::F(f)) => f.eval(x),
            _ => unreachable!("key {key} outside family {}", self.kind),
        }
    }

    /// Truth table of the member named by `key`.
    pub fn table(&self, key: &MemberKey) -> BoolFunc {
        BoolFunc::from_fn(self.q, |x| self.value(key, x))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn named_constants() {
        assert_eq!(BoolFunc::one(3).to_string(), "111");
        assert_eq!(BoolFunc::zero(3).to_string(), "000");
        assert_eq!(BoolFunc::eq(4, 1).to_string(), "0100");
        assert_eq!(BoolFunc::ne(4, 1).to_string(), "1011");
        assert_eq!(BoolFunc::ge(4, 2).to_string(), "0011");
        assert_eq!(BoolFunc::le(4, 2).to_string(), "1110");
        assert_eq!(BoolFunc::from_mask(4, 0b0110).to_string(), "0110");
        assert_eq!("1101".parse::<BoolFunc>().unwrap().to_mask(), Some(0b1011));
        assert!("1".parse::<BoolFunc>().is_err());
        assert!("10x".parse::<BoolFunc>().is_err());
    }

    #[test]
    fn member_counts() {
        let count = |id, q| FamilySpec::named(id, q).unwrap().members().unwrap().len();
        assert_eq!(count(FamilyId::E, 5), 5);
        assert_eq!(count(FamilyId::GL, 5), 10);
        assert_eq!(count(FamilyId::F, 4), 16);
        let pf = FamilySpec::punctured(BoolFunc::zero(4)).unwrap();
        assert_eq!(pf.members().unwrap().len(), 15);
        assert!(!pf.contains(&MemberKey::F(BoolFunc::zero(4))));
        assert!(FamilySpec::named(FamilyId::E, 1).is_err());
    }

    #[test]
    fn keys_round_trip() {
        for s in ["t=3", "G:t=0", "L:t=12", "f=0110"] {
            assert_eq!(s.parse::<MemberKey>().unwrap().to_string(), s);
        }
        assert!("x=1".parse::<MemberKey>().is_err());
        assert!("t=a".parse::<MemberKey>().is_err());
    }

    #[test]
    fn gl_duplicates_kept() {
        let gl = FamilySpec::named(FamilyId::GL, 4).unwrap();
        assert_eq!(gl.table(&MemberKey::G(0)), gl.table(&MemberKey::L(3)));
        assert_eq!(gl.table(&MemberKey::G(2)).to_string(), "0011");
    }

    #[test]
    fn explicit_rejects_duplicates() {
        let f = BoolFunc::eq(3, 0);
        assert!(FamilySpec::explicit(vec![f.clone(), f]).is_err());
        assert!(FamilySpec::explicit(vec![]).is_err());
    }
}
