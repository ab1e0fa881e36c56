//! Capacity table, Sperner-type extremal sets and related counting.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive};

use crate::error::{Error, Result};
use crate::symbol::{word_leq_unchecked, CellSymbol, CellWord, Scenario};

/// Comparator families.
///
/// `L` is carried for completeness; every computation on it goes through
/// `G` under the reflection `x ↦ q−1−x`, `t ↦ q−1−t`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum FamilyId {
    E,
    N,
    G,
    L,
    GL,
    F,
}

impl FamilyId {
    pub const ALL: [FamilyId; 6] = [
        FamilyId::E,
        FamilyId::N,
        FamilyId::G,
        FamilyId::L,
        FamilyId::GL,
        FamilyId::F,
    ];

    pub fn supports(self, scenario: Scenario) -> bool {
        Scenario::TABLE.contains(&scenario) || (self == FamilyId::E && scenario == Scenario::OO)
    }

    /// Scenarios this family is defined for.
    pub fn scenarios(self) -> Vec<Scenario> {
        let mut v = Vec::new();
        if self == FamilyId::E {
            v.push(Scenario::OO);
        }
        v.extend_from_slice(&Scenario::TABLE);
        v
    }
}

impl fmt::Display for FamilyId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            FamilyId::E => "E",
            FamilyId::N => "N",
            FamilyId::G => "G",
            FamilyId::L => "L",
            FamilyId::GL => "GL",
            FamilyId::F => "F",
        };
        f.write_str(s)
    }
}

impl FromStr for FamilyId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_uppercase().as_str() {
            "E" => Ok(FamilyId::E),
            "N" => Ok(FamilyId::N),
            "G" => Ok(FamilyId::G),
            "L" => Ok(FamilyId::L),
            "GL" => Ok(FamilyId::GL),
            "F" => Ok(FamilyId::F),
            _ => Err(Error::Parse {
                position: 0,
                message: format!("unknown family {s:?}"),
            }),
        }
    }
}

pub fn binomial(n: u64, k: u64) -> BigUint {
    if k > n {
        return BigUint::from(0u32);
    }
    let k = k.min(n - k);
    let mut acc = BigUint::one();
    for i in 0..k {
        acc = acc * BigUint::from(n - i) / BigUint::from(i + 1);
    }
    acc
}

/// Largest antichain size in the star alphabet: `C(n,⌊n/3⌋)·2^⌈2n/3⌉`.
pub fn sperner_star_bound(n: u64) -> BigUint {
    binomial(n, n / 3) << ((2 * n).div_ceil(3) as usize)
}

/// Largest antichain size in the full alphabet: `C(2n,n)`.
pub fn sperner_bullet_bound(n: u64) -> BigUint {
    binomial(2 * n, n)
}

fn to_u64(v: BigUint, what: &str) -> Result<u64> {
    v.to_u64().ok_or_else(|| Error::Overflow(what.to_string()))
}

/// Largest `q` such that `family` is `n`-cell implementable under `scenario`.
pub fn max_q(family: FamilyId, scenario: Scenario, n: usize) -> Result<u64> {
    if !family.supports(scenario) {
        return Err(Error::unsupported(family, scenario));
    }
    if n == 0 {
        return Err(Error::Domain("number of cells must be at least 1".into()));
    }
    let n64 = n as u64;
    let sc = scenario;
    let value = match family {
        FamilyId::E => {
            if sc == Scenario::RS || sc == Scenario::SR {
                to_u64(sperner_star_bound(n64), "antichain bound")?
            } else if sc == Scenario::RR {
                to_u64(sperner_bullet_bound(n64), "antichain bound")?
            } else {
                if n >= 64 {
                    return Err(Error::Overflow(format!("2^{n}")));
                }
                1u64 << n
            }
        }
        FamilyId::N => {
            if sc == Scenario::SO || sc == Scenario::OS {
                if n == 1 {
                    2
                } else {
                    n64
                }
            } else {
                2 * n64
            }
        }
        FamilyId::G | FamilyId::L => {
            if sc == Scenario::SO || sc == Scenario::OS {
                n64 + 1
            } else if sc == Scenario::SS && n <= 2 {
                2 * n64
            } else {
                2 * n64 + 1
            }
        }
        FamilyId::GL => {
            if sc == Scenario::SO {
                n64
            } else if sc == Scenario::OS {
                n64 + 1
            } else if sc == Scenario::SS || sc == Scenario::RS {
                if n == 1 {
                    2
                } else {
                    2 * n64 - 1
                }
            } else {
                2 * n64
            }
        }
        FamilyId::F => {
            if sc == Scenario::SR || sc == Scenario::RR {
                2 * n64
            } else {
                n64
            }
        }
    };
    // GL under (S,O) and F under the four star-only scenarios give 1 at n = 1:
    // no q >= 2 fits in a single cell there
    Ok(value)
}

/// Smallest `n` with `max_q(family, scenario, n) >= q`.
pub fn min_cells(family: FamilyId, scenario: Scenario, q: usize) -> Result<usize> {
    if !family.supports(scenario) {
        return Err(Error::unsupported(family, scenario));
    }
    if q < 2 {
        return Err(Error::Domain(format!("q must be at least 2, got {q}")));
    }
    let mut n = 1;
    loop {
        match max_q(family, scenario, n) {
            Ok(m) if m >= q as u64 => return Ok(n),
            Err(Error::Overflow(_)) => return Ok(n),
            Err(e) => return Err(e),
            Ok(_) => n += 1,
        }
    }
}

/// Iterates all words of length `n` over `alphabet` in lexicographic order,
/// with the alphabet order taken as given.
pub(crate) struct LexWords<'a> {
    alphabet: &'a [CellSymbol],
    digits: Vec<usize>,
    done: bool,
}

impl<'a> LexWords<'a> {
    pub(crate) fn new(alphabet: &'a [CellSymbol], n: usize) -> Self {
        LexWords {
            alphabet,
            digits: vec![0; n],
            done: alphabet.is_empty(),
        }
    }
}

impl Iterator for LexWords<'_> {
    type Item = CellWord;

    fn next(&mut self) -> Option<CellWord> {
        if self.done {
            return None;
        }
        let word = CellWord::new(self.digits.iter().map(|&d| self.alphabet[d]).collect());
        // increment, rightmost digit fastest
        let mut i = self.digits.len();
        loop {
            if i == 0 {
                self.done = true;
                break;
            }
            i -= 1;
            self.digits[i] += 1;
            if self.digits[i] < self.alphabet.len() {
                break;
            }
            self.digits[i] = 0;
        }
        Some(word)
    }
}

const STAR_ALPHABET: [CellSymbol; 3] = [CellSymbol::Zero, CellSymbol::One, CellSymbol::Star];

pub(crate) fn level_words(n: usize, w: usize) -> impl Iterator<Item = CellWord> {
    LexWords::new(&STAR_ALPHABET, n).filter(move |v| n - v.count(CellSymbol::Star) == w)
}

pub(crate) fn balanced_words(n: usize) -> impl Iterator<Item = CellWord> {
    LexWords::new(&CellSymbol::ALL, n)
        .filter(|v| v.count(CellSymbol::Star) == v.count(CellSymbol::Bullet))
}

/// Words over `{0,1,*}` of length `n` with exactly `w` non-`*` entries,
/// in lexicographic order under `0 < 1 < *`.
pub fn level_set(n: usize, w: usize) -> Result<Vec<CellWord>> {
    if w > n {
        return Err(Error::Domain(format!("weight {w} exceeds length {n}")));
    }
    Ok(level_words(n, w).collect())
}

/// Words over the full alphabet with as many `•` as `*`,
/// in lexicographic order under `0 < 1 < * < •`.
pub fn balanced_set(n: usize) -> Result<Vec<CellWord>> {
    if n == 0 {
        return Err(Error::Domain("word length must be at least 1".into()));
    }
    Ok(balanced_words(n).collect())
}

/// True iff no two distinct members are comparable under `⪯`.
pub fn is_antichain(words: &[CellWord]) -> Result<bool> {
    let Some(first) = words.first() else {
        return Ok(true);
    };
    for w in words {
        if w.len() != first.len() {
            return Err(Error::Dimension {
                expected: first.len(),
                actual: w.len(),
            });
        }
    }
    for (i, a) in words.iter().enumerate() {
        for b in &words[i + 1..] {
            if a != b && (word_leq_unchecked(a, b) || word_leq_unchecked(b, a)) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

pub const CHAIN_ENUMERATION_CAP: usize = 6;

/// Enumerates the maximal chains over the star alphabet of length `n`,
/// passing each chain `(v_0, ..., v_n)` to `visit`. Returns the count.
pub fn enumerate_chains(n: usize, mut visit: impl FnMut(&[CellWord])) -> Result<u64> {
    if n > CHAIN_ENUMERATION_CAP {
        return Err(Error::Resource(format!(
            "chain enumeration is capped at n = {CHAIN_ENUMERATION_CAP}, got {n}"
        )));
    }
    let mut count = 0u64;
    let mut chain = Vec::with_capacity(n + 1);
    for start in LexWords::new(&[CellSymbol::Zero, CellSymbol::One], n) {
        chain.clear();
        chain.push(start);
        extend_chain(&mut chain, n, &mut visit, &mut count);
    }
    Ok(count)
}

fn extend_chain(
    chain: &mut Vec<CellWord>,
    n: usize,
    visit: &mut impl FnMut(&[CellWord]),
    count: &mut u64,
) {
    if chain.len() == n + 1 {
        visit(chain);
        *count += 1;
        return;
    }
    let last = chain.last().cloned().unwrap_or_default();
    for j in 0..n {
        if last.get(j) != CellSymbol::Star {
            let mut next = last.clone();
            next.set(j, CellSymbol::Star);
            chain.push(next);
            extend_chain(chain, n, visit, count);
            chain.pop();
        }
    }
}

pub fn count_chains(n: usize) -> Result<u64> {
    enumerate_chains(n, |_| {})
}

/// A positive real of the form `coeff / √root`, with `coeff = num/den`
/// kept exact so comparisons against integers avoid square roots.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ScaledRoot {
    pub num: BigUint,
    pub den: BigUint,
    pub root: u64,
}

impl ScaledRoot {
    /// `self <= k`, decided as `num² ≤ k²·den²·root`.
    pub fn le_integer(&self, k: &BigUint) -> bool {
        let lhs = &self.num * &self.num;
        let rhs = k * k * &self.den * &self.den * BigUint::from(self.root);
        lhs <= rhs
    }

    pub fn to_f64(&self) -> f64 {
        let num = self.num.to_f64().unwrap_or(f64::INFINITY);
        let den = self.den.to_f64().unwrap_or(f64::INFINITY);
        num / den / (self.root as f64).sqrt()
    }
}

/// The closed-form approximations `(3/(4√n))·3^n` and `(1/(2√n))·4^n`
/// of the two antichain bounds. The first is not below the exact star
/// bound for every n: it exceeds it at n = 1, 2 and 5.
pub fn approx_lower_bounds(n: u64) -> Result<(ScaledRoot, ScaledRoot)> {
    if n == 0 {
        return Err(Error::Domain("n must be at least 1".into()));
    }
    let star = ScaledRoot {
        num: BigUint::from(3u32) * BigUint::from(3u32).pow(n as u32),
        den: BigUint::from(4u32),
        root: n,
    };
    let bullet = ScaledRoot {
        num: BigUint::from(4u32).pow(n as u32),
        den: BigUint::from(2u32),
        root: n,
    };
    Ok((star, bullet))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(s: &str) -> CellWord {
        s.parse().unwrap()
    }

    #[test]
    fn table_examples() {
        assert_eq!(max_q(FamilyId::E, Scenario::SR, 3).unwrap(), 12);
        assert_eq!(max_q(FamilyId::G, Scenario::SS, 3).unwrap(), 7);
        assert_eq!(max_q(FamilyId::GL, Scenario::SS, 1).unwrap(), 2);
        assert_eq!(max_q(FamilyId::F, Scenario::RR, 3).unwrap(), 6);
        assert_eq!(max_q(FamilyId::E, Scenario::RR, 2).unwrap(), 6);
        assert_eq!(max_q(FamilyId::E, Scenario::OO, 5).unwrap(), 32);
        assert_eq!(max_q(FamilyId::N, Scenario::OS, 1).unwrap(), 2);
        assert_eq!(max_q(FamilyId::N, Scenario::OS, 4).unwrap(), 4);
        assert_eq!(max_q(FamilyId::GL, Scenario::OS, 3).unwrap(), 4);
        assert_eq!(max_q(FamilyId::GL, Scenario::SO, 3).unwrap(), 3);
        assert_eq!(max_q(FamilyId::GL, Scenario::SO, 1).unwrap(), 1);
        assert_eq!(max_q(FamilyId::F, Scenario::SS, 1).unwrap(), 1);
    }

    #[test]
    fn unsupported_pairs() {
        assert!(matches!(
            max_q(FamilyId::N, Scenario::OO, 2),
            Err(Error::UnsupportedScenario { .. })
        ));
        assert!(matches!(
            min_cells(FamilyId::G, Scenario::OO, 3),
            Err(Error::UnsupportedScenario { .. })
        ));
        assert!(max_q(FamilyId::E, Scenario::OO, 2).is_ok());
    }

    #[test]
    fn min_cells_examples() {
        assert_eq!(min_cells(FamilyId::E, Scenario::OS, 9).unwrap(), 4);
        assert_eq!(min_cells(FamilyId::G, Scenario::SS, 7).unwrap(), 3);
        assert_eq!(min_cells(FamilyId::N, Scenario::OS, 5).unwrap(), 5);
        assert_eq!(min_cells(FamilyId::G, Scenario::SS, 5).unwrap(), 3);
        assert!(matches!(
            min_cells(FamilyId::E, Scenario::SS, 1),
            Err(Error::Domain(_))
        ));
    }

    #[test]
    fn sperner_values() {
        assert_eq!(sperner_star_bound(2), BigUint::from(4u32));
        assert_eq!(sperner_bullet_bound(2), BigUint::from(6u32));
        assert_eq!(sperner_star_bound(3), BigUint::from(12u32));
        assert_eq!(sperner_star_bound(1), BigUint::from(2u32));
    }

    #[test]
    fn level_set_examples() {
        let words: Vec<String> = level_set(2, 2)
            .unwrap()
            .iter()
            .map(|w| w.to_string())
            .collect();
        assert_eq!(words, ["00", "01", "10", "11"]);
        let words: Vec<String> = level_set(2, 0)
            .unwrap()
            .iter()
            .map(|w| w.to_string())
            .collect();
        assert_eq!(words, ["**"]);
        assert_eq!(level_set(3, 2).unwrap().len(), 12);
        assert!(matches!(level_set(2, 3), Err(Error::Domain(_))));
    }

    #[test]
    fn balanced_set_examples() {
        assert_eq!(balanced_set(2).unwrap().len(), 6);
        let words: Vec<String> = balanced_set(1)
            .unwrap()
            .iter()
            .map(|w| w.to_string())
            .collect();
        assert_eq!(words, ["0", "1"]);
        assert!(balanced_set(2).unwrap().contains(&w("*!")));
    }

    #[test]
    fn antichain_examples() {
        let bits: Vec<CellWord> = ["00", "01", "10", "11"].iter().map(|s| w(s)).collect();
        assert!(is_antichain(&bits).unwrap());
        assert!(!is_antichain(&[w("0*"), w("00")]).unwrap());
        assert!(is_antichain(&balanced_set(2).unwrap()).unwrap());
        assert!(is_antichain(&[w("0"), w("00")]).is_err());
    }

    #[test]
    fn chain_counts() {
        assert_eq!(count_chains(1).unwrap(), 2);
        assert_eq!(count_chains(2).unwrap(), 8);
        assert_eq!(count_chains(3).unwrap(), 48);
        assert!(matches!(count_chains(7), Err(Error::Resource(_))));
        let mut seen = Vec::new();
        enumerate_chains(1, |c| {
            seen.push(c.iter().map(|w| w.to_string()).collect::<Vec<_>>())
        })
        .unwrap();
        assert_eq!(seen, vec![vec!["0", "*"], vec!["1", "*"]]);
    }

    #[test]
    fn approximation_examples() {
        let (star, bullet) = approx_lower_bounds(3).unwrap();
        assert!((star.to_f64() - 11.691).abs() < 1e-3);
        assert!(star.le_integer(&BigUint::from(12u32)));
        assert!(!star.le_integer(&BigUint::from(11u32)));
        let (_, bullet1) = approx_lower_bounds(1).unwrap();
        assert!(bullet1.le_integer(&BigUint::from(2u32)));
        assert!((bullet1.to_f64() - 2.0).abs() < 1e-12);
        let (star4, _) = approx_lower_bounds(4).unwrap();
        assert!((star4.to_f64() - 30.375).abs() < 1e-9);
        assert!(star4.le_integer(&BigUint::from(32u32)));
        assert!(bullet.le_integer(&sperner_bullet_bound(3)));
    }
}
