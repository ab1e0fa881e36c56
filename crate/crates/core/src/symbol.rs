//! Cell alphabet, the cell match function and word-level matching.
//!
//! A CAM cell compares an input symbol against a programmed state symbol.
//! Symbols range over `{0, 1, *, •}`: `*` is the don't-care symbol and `•`
//! the reject symbol. In text form `•` is written `!`.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum CellSymbol {
    Zero,
    One,
    Star,
    Bullet,
}

impl CellSymbol {
    pub const ALL: [CellSymbol; 4] = [
        CellSymbol::Zero,
        CellSymbol::One,
        CellSymbol::Star,
        CellSymbol::Bullet,
    ];

    pub fn to_char(self) -> char {
        match self {
            CellSymbol::Zero => '0',
            CellSymbol::One => '1',
            CellSymbol::Star => '*',
            CellSymbol::Bullet => '!',
        }
    }

    pub fn from_char(c: char) -> Option<Self> {
        match c {
            '0' => Some(CellSymbol::Zero),
            '1' => Some(CellSymbol::One),
            '*' => Some(CellSymbol::Star),
            '!' => Some(CellSymbol::Bullet),
            _ => None,
        }
    }

    pub fn from_bit(bit: bool) -> Self {
        if bit {
            CellSymbol::One
        } else {
            CellSymbol::Zero
        }
    }

    pub fn is_binary(self) -> bool {
        matches!(self, CellSymbol::Zero | CellSymbol::One)
    }

    /// Exchanges `0` and `1`, leaving `*` and `•` fixed.
    pub fn flip(self) -> Self {
        match self {
            CellSymbol::Zero => CellSymbol::One,
            CellSymbol::One => CellSymbol::Zero,
            s => s,
        }
    }

    /// Exchanges `*` and `•`, leaving `0` and `1` fixed.
    pub fn swap_star_bullet(self) -> Self {
        match self {
            CellSymbol::Star => CellSymbol::Bullet,
            CellSymbol::Bullet => CellSymbol::Star,
            s => s,
        }
    }

    /// Two-bit decomposition `λ(s) = (λ0, λ1)`.
    pub fn lambda(self) -> (bool, bool) {
        match self {
            CellSymbol::Bullet => (false, false),
            CellSymbol::Zero => (false, true),
            CellSymbol::One => (true, false),
            CellSymbol::Star => (true, true),
        }
    }
}

impl fmt::Display for CellSymbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_char())
    }
}

/// The cell match function `T(u, ϑ)`.
///
/// Matches iff either argument is `*`, or both are the same bit.
#[inline]
pub fn cell_match(input: CellSymbol, state: CellSymbol) -> bool {
    use CellSymbol::*;
    matches!(
        (input, state),
        (Star, _) | (_, Star) | (Zero, Zero) | (One, One)
    )
}

/// Partial order `• ⪯ 0, 1 ⪯ *`.
pub fn sym_leq(a: CellSymbol, b: CellSymbol) -> bool {
    use CellSymbol::*;
    a == b || a == Bullet || b == Star
}

/// Greatest lower bound of two symbols under [`sym_leq`].
pub fn meet(a: CellSymbol, b: CellSymbol) -> CellSymbol {
    if sym_leq(a, b) {
        a
    } else if sym_leq(b, a) {
        b
    } else {
        // only 0 and 1 are incomparable
        CellSymbol::Bullet
    }
}

/// Fixed-length word over the cell alphabet. Index 0 is the leftmost symbol.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct CellWord(Vec<CellSymbol>);

impl CellWord {
    pub fn new(symbols: Vec<CellSymbol>) -> Self {
        CellWord(symbols)
    }

    pub fn repeat(symbol: CellSymbol, n: usize) -> Self {
        CellWord(vec![symbol; n])
    }

    pub fn stars(n: usize) -> Self {
        Self::repeat(CellSymbol::Star, n)
    }

    pub fn bullets(n: usize) -> Self {
        Self::repeat(CellSymbol::Bullet, n)
    }

    /// `n`-bit binary representation of `value`, most significant bit first.
    pub fn binary(value: usize, n: usize) -> Self {
        CellWord(
            (0..n)
                .map(|j| CellSymbol::from_bit((value >> (n - 1 - j)) & 1 == 1))
                .collect(),
        )
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn symbols(&self) -> &[CellSymbol] {
        &self.0
    }

    pub fn get(&self, j: usize) -> CellSymbol {
        self.0[j]
    }

    pub fn set(&mut self, j: usize, s: CellSymbol) {
        self.0[j] = s;
    }

    pub fn push(&mut self, s: CellSymbol) {
        self.0.push(s);
    }

    pub fn concat(&self, other: &CellWord) -> CellWord {
        let mut v = self.0.clone();
        v.extend_from_slice(&other.0);
        CellWord(v)
    }

    pub fn map(&self, f: impl Fn(CellSymbol) -> CellSymbol) -> CellWord {
        CellWord(self.0.iter().map(|&s| f(s)).collect())
    }

    pub fn count(&self, s: CellSymbol) -> usize {
        self.0.iter().filter(|&&t| t == s).count()
    }

    pub fn is_all(&self, s: CellSymbol) -> bool {
        self.0.iter().all(|&t| t == s)
    }

    pub fn uses_only(&self, alphabet: AlphabetCode) -> bool {
        self.0.iter().all(|&s| alphabet.contains(s))
    }

    pub fn iter(&self) -> impl Iterator<Item = CellSymbol> + '_ {
        self.0.iter().copied()
    }
}

impl From<Vec<CellSymbol>> for CellWord {
    fn from(v: Vec<CellSymbol>) -> Self {
        CellWord(v)
    }
}

impl fmt::Display for CellWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for s in &self.0 {
            write!(f, "{}", s.to_char())?;
        }
        Ok(())
    }
}

impl FromStr for CellWord {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        if s.is_empty() {
            return Err(Error::Parse {
                position: 0,
                message: "empty cell word".into(),
            });
        }
        s.chars()
            .enumerate()
            .map(|(i, c)| {
                CellSymbol::from_char(c).ok_or_else(|| Error::Parse {
                    position: i,
                    message: format!("invalid cell symbol {c:?}"),
                })
            })
            .collect::<Result<Vec<_>>>()
            .map(CellWord)
    }
}

fn check_len(a: &CellWord, b: &CellWord) -> Result<()> {
    if a.len() != b.len() {
        return Err(Error::Dimension {
            expected: a.len(),
            actual: b.len(),
        });
    }
    Ok(())
}

/// Conjunction of [`cell_match`] over all positions.
pub fn word_match(input: &CellWord, state: &CellWord) -> Result<bool> {
    check_len(input, state)?;
    Ok(word_match_unchecked(input, state))
}

#[inline]
pub(crate) fn word_match_unchecked(input: &CellWord, state: &CellWord) -> bool {
    input
        .0
        .iter()
        .zip(&state.0)
        .all(|(&u, &s)| cell_match(u, s))
}

/// Componentwise [`sym_leq`].
pub fn word_leq(a: &CellWord, b: &CellWord) -> Result<bool> {
    check_len(a, b)?;
    Ok(word_leq_unchecked(a, b))
}

#[inline]
pub(crate) fn word_leq_unchecked(a: &CellWord, b: &CellWord) -> bool {
    a.0.iter().zip(&b.0).all(|(&x, &y)| sym_leq(x, y))
}

/// Alphabet codes: `O` = `{0,1}`, `S` adds `*`, `R` adds `•`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum AlphabetCode {
    O,
    S,
    R,
}

impl AlphabetCode {
    pub fn symbols(self) -> &'static [CellSymbol] {
        use CellSymbol::*;
        match self {
            AlphabetCode::O => &[Zero, One],
            AlphabetCode::S => &[Zero, One, Star],
            AlphabetCode::R => &[Zero, One, Star, Bullet],
        }
    }

    pub fn contains(self, s: CellSymbol) -> bool {
        match s {
            CellSymbol::Zero | CellSymbol::One => true,
            CellSymbol::Star => self != AlphabetCode::O,
            CellSymbol::Bullet => self == AlphabetCode::R,
        }
    }

    fn to_char(self) -> char {
        match self {
            AlphabetCode::O => 'o',
            AlphabetCode::S => 's',
            AlphabetCode::R => 'r',
        }
    }

    fn from_char(c: char) -> Option<Self> {
        match c.to_ascii_lowercase() {
            'o' => Some(AlphabetCode::O),
            's' => Some(AlphabetCode::S),
            'r' => Some(AlphabetCode::R),
            _ => None,
        }
    }
}

/// Alphabets of the input map and the state map.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Scenario {
    pub input: AlphabetCode,
    pub state: AlphabetCode,
}

impl Scenario {
    pub const OO: Scenario = Scenario::new(AlphabetCode::O, AlphabetCode::O);
    pub const SO: Scenario = Scenario::new(AlphabetCode::S, AlphabetCode::O);
    pub const OS: Scenario = Scenario::new(AlphabetCode::O, AlphabetCode::S);
    pub const SS: Scenario = Scenario::new(AlphabetCode::S, AlphabetCode::S);
    pub const RS: Scenario = Scenario::new(AlphabetCode::R, AlphabetCode::S);
    pub const SR: Scenario = Scenario::new(AlphabetCode::S, AlphabetCode::R);
    pub const RR: Scenario = Scenario::new(AlphabetCode::R, AlphabetCode::R);

    /// The six scenarios supported by every family, in table order.
    pub const TABLE: [Scenario; 6] = [
        Scenario::SO,
        Scenario::OS,
        Scenario::SS,
        Scenario::RS,
        Scenario::SR,
        Scenario::RR,
    ];

    pub const fn new(input: AlphabetCode, state: AlphabetCode) -> Self {
        Scenario { input, state }
    }

    /// Swaps the roles of input and state alphabets.
    pub fn transposed(self) -> Self {
        Scenario::new(self.state, self.input)
    }
}

impl fmt::Display for Scenario {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.input.to_char(), self.state.to_char())
    }
}

impl FromStr for Scenario {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let chars: Vec<char> = s.chars().collect();
        if chars.len() != 2 {
            return Err(Error::Parse {
                position: chars.len().min(2),
                message: format!("scenario must be two characters from o/s/r, got {s:?}"),
            });
        }
        let code = |i: usize| {
            AlphabetCode::from_char(chars[i]).ok_or_else(|| Error::Parse {
                position: i,
                message: format!("invalid alphabet code {:?}", chars[i]),
            })
        };
        Ok(Scenario::new(code(0)?, code(1)?))
    }
}
