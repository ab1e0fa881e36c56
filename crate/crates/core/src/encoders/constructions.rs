//! Per-family constructions. Each returns the input words for `x ∈ [q⟩`
//! and the state words in family-member order.

use crate::bounds::{balanced_words, level_words};
use crate::symbol::{CellSymbol, CellWord, Scenario};

use CellSymbol::{Bullet, One, Star, Zero};

pub(crate) type Words = Vec<CellWord>;

fn word(n: usize, f: impl Fn(usize) -> CellSymbol) -> CellWord {
    CellWord::new((0..n).map(f).collect())
}

fn bit(b: bool) -> CellSymbol {
    CellSymbol::from_bit(b)
}

/// Binary words, most significant bit first, for both sides.
pub(crate) fn e_binary(q: usize, n: usize) -> (Words, Words) {
    let words: Words = (0..q).map(|x| CellWord::binary(x, n)).collect();
    (words.clone(), words)
}

/// Injection into an extremal antichain; the state of `t` is `u(t)` with
/// `*` and `•` exchanged. Under (R,S) the two sides trade places.
pub(crate) fn e_antichain(q: usize, n: usize, scenario: Scenario) -> (Words, Words) {
    let words: Words = if scenario == Scenario::RR {
        balanced_words(n).take(q).collect()
    } else {
        level_words(n, (2 * n).div_ceil(3)).take(q).collect()
    };
    let swapped: Words = words
        .iter()
        .map(|w| w.map(CellSymbol::swap_star_bullet))
        .collect();
    if scenario == Scenario::RS {
        (swapped, words)
    } else {
        (words, swapped)
    }
}

/// Pairs positions `2j, 2j+1` into cell `j`. Inputs at `x >= 2n` are all-`*`.
/// `value(i, x)` is member `i` at `x`; arguments outside `[q⟩` count as 1.
pub(crate) fn paired(
    q: usize,
    n: usize,
    members: usize,
    value: impl Fn(usize, usize) -> bool,
) -> (Words, Words) {
    let inputs = (0..q)
        .map(|x| {
            word(n, |j| {
                if x == 2 * j {
                    Zero
                } else if x == 2 * j + 1 {
                    One
                } else {
                    Star
                }
            })
        })
        .collect();
    let at = |i: usize, x: usize| x >= q || value(i, x);
    let states = (0..members)
        .map(|i| {
            word(n, |j| match (at(i, 2 * j), at(i, 2 * j + 1)) {
                (true, true) => Star,
                (true, false) => Zero,
                (false, true) => One,
                (false, false) => Bullet,
            })
        })
        .collect();
    (inputs, states)
}

/// `u_j(x) = 1` if `x = j` else `*`; `ϑ_j(f) = f(j)`. Uses `n = q` cells.
pub(crate) fn simple_star_input(
    q: usize,
    members: usize,
    value: impl Fn(usize, usize) -> bool,
) -> (Words, Words) {
    let inputs = (0..q)
        .map(|x| word(q, |j| if x == j { One } else { Star }))
        .collect();
    let states = (0..members)
        .map(|i| word(q, |j| bit(value(i, j))))
        .collect();
    (inputs, states)
}

/// One-hot inputs; `ϑ_j(f) = *` if `f(j) = 1` else `0`. Uses `n = q` cells.
pub(crate) fn one_hot_input(
    q: usize,
    members: usize,
    value: impl Fn(usize, usize) -> bool,
) -> (Words, Words) {
    let inputs = (0..q).map(|x| word(q, |j| bit(x == j))).collect();
    let states = (0..members)
        .map(|i| word(q, |j| if value(i, j) { Star } else { Zero }))
        .collect();
    (inputs, states)
}

pub(crate) fn n_binary_pair() -> (Words, Words) {
    let inputs = vec![CellWord::new(vec![Zero]), CellWord::new(vec![One])];
    let states = vec![CellWord::new(vec![One]), CellWord::new(vec![Zero])];
    (inputs, states)
}

/// N under (S,O): `u(x)` is all-`*` with `0` at `x`, `ϑ(t)` one-hot at `t`.
pub(crate) fn n_star_input(q: usize) -> (Words, Words) {
    let inputs = (0..q)
        .map(|x| word(q, |j| if x == j { Zero } else { Star }))
        .collect();
    let states = (0..q).map(|t| word(q, |j| bit(t == j))).collect();
    (inputs, states)
}

/// N under (O,S): one-hot `u(x)`, `ϑ(t)` all-`*` with `0` at `t`.
pub(crate) fn n_star_state(q: usize) -> (Words, Words) {
    let inputs = (0..q).map(|x| word(q, |j| bit(x == j))).collect();
    let states = (0..q)
        .map(|t| word(q, |j| if t == j { Zero } else { Star }))
        .collect();
    (inputs, states)
}

/// A threshold code: inputs plus the state of `Γ_q(·,t)` for every `t`,
/// and optionally the state of `L_q(·,t)`.
pub(crate) struct Threshold {
    pub inputs: Words,
    pub ge: Words,
    pub le: Option<Words>,
}

impl Threshold {
    /// Converts a `G` code under `(a,b)` into one under `(b,a)`.
    pub(crate) fn dual(self) -> Threshold {
        let q = self.inputs.len();
        Threshold {
            inputs: (0..q).map(|x| self.ge[q - 1 - x].clone()).collect(),
            ge: (0..q).map(|t| self.inputs[q - 1 - t].clone()).collect(),
            le: None,
        }
    }

    /// The `L` code obtained by the reflection `x ↦ q−1−x`, `t ↦ q−1−t`.
    pub(crate) fn reflect(self) -> (Words, Words) {
        let q = self.inputs.len();
        (
            (0..q).map(|x| self.inputs[q - 1 - x].clone()).collect(),
            (0..q).map(|t| self.ge[q - 1 - t].clone()).collect(),
        )
    }
}

/// Thermometer code with `n = q−1`: `u_j(x) = 0` iff `x <= j`,
/// `ϑ_j(t) = *` iff `t <= j` (else `1`), and for `L`, `ϑ'_j(t) = 0` iff `t <= j`.
pub(crate) fn thermometer(q: usize) -> Threshold {
    let n = q - 1;
    Threshold {
        inputs: (0..q).map(|x| word(n, |j| bit(x > j))).collect(),
        ge: (0..q)
            .map(|t| word(n, |j| if t <= j { Star } else { One }))
            .collect(),
        le: Some(
            (0..q)
                .map(|t| word(n, |j| if t <= j { Zero } else { Star }))
                .collect(),
        ),
    }
}

/// The (S,S) threshold table on `[2n+1⟩` (on `[2n⟩` for `n <= 2`),
/// truncated to the first `q` rows.
pub(crate) fn g_star_table(q: usize, n: usize) -> Threshold {
    let input = |x: usize| -> CellWord {
        if x == 0 {
            CellWord::repeat(Zero, n)
        } else if x <= n {
            word(n, |j| bit(j < x))
        } else {
            let k = x - n;
            word(n, |j| if j < k { Star } else { One })
        }
    };
    let ge = |t: usize| -> CellWord {
        if t == 0 {
            CellWord::stars(n)
        } else if t <= n {
            word(n, |j| if j < t { One } else { Star })
        } else if t < 2 * n {
            let k = t - n;
            word(n, |j| bit(j >= k))
        } else {
            word(n, |j| bit(j == 1))
        }
    };
    Threshold {
        inputs: (0..q).map(input).collect(),
        ge: (0..q).map(ge).collect(),
        le: None,
    }
}

/// G∪L under (S,S) on `[2n−1⟩`, truncated to the first `q` rows.
pub(crate) fn gl_star_table(q: usize, n: usize) -> Threshold {
    if n == 1 {
        let w = |s: CellSymbol| CellWord::new(vec![s]);
        return Threshold {
            inputs: vec![w(Zero), w(One)],
            ge: vec![w(Star), w(One)],
            le: Some(vec![w(Zero), w(Star)]),
        };
    }
    let input = |x: usize| -> CellWord {
        word(n, |j| {
            if x == 0 {
                if j <= 1 {
                    Zero
                } else {
                    Star
                }
            } else if x < n {
                if j == 0 {
                    One
                } else if j == x {
                    Zero
                } else {
                    Star
                }
            } else if x == n {
                if j <= 1 {
                    One
                } else {
                    Star
                }
            } else if j == 1 || j == x - n + 1 {
                One
            } else {
                Star
            }
        })
    };
    let ge = |t: usize| -> CellWord {
        word(n, |j| {
            if t == 0 {
                Star
            } else if t < n {
                if j < t {
                    One
                } else {
                    Star
                }
            } else if t == n {
                One
            } else {
                let k = t - n;
                if j == 0 {
                    Zero
                } else if j == 1 {
                    One
                } else if j <= k {
                    Zero
                } else {
                    One
                }
            }
        })
    };
    let le = |t: usize| -> CellWord {
        word(n, |j| {
            if t == 0 {
                Zero
            } else if t < n {
                if j == 0 {
                    Star
                } else if j == 1 || j <= t {
                    Zero
                } else {
                    One
                }
            } else if t == n {
                if j <= 1 {
                    Star
                } else {
                    Zero
                }
            } else if j <= t - n + 1 {
                Star
            } else {
                Zero
            }
        })
    };
    Threshold {
        inputs: (0..q).map(input).collect(),
        ge: (0..q).map(ge).collect(),
        le: Some((0..q).map(le).collect()),
    }
}

/// The paired code as a threshold code, with `Γ` and `L` states.
pub(crate) fn threshold_paired(q: usize, n: usize) -> Threshold {
    let (inputs, ge) = paired(q, n, q, |t, x| x >= t);
    let (_, le) = paired(q, n, q, |t, x| x <= t);
    Threshold {
        inputs,
        ge,
        le: Some(le),
    }
}

/// G∪L under (S,O): the star-input construction with `n = q`.
pub(crate) fn gl_star_input(q: usize) -> Threshold {
    let (inputs, ge) = simple_star_input(q, q, |t, x| x >= t);
    let (_, le) = simple_star_input(q, q, |t, x| x <= t);
    Threshold {
        inputs,
        ge,
        le: Some(le),
    }
}
