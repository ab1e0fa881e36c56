//! All functions on `[q⟩` but one, with `q−1` cells.
//!
//! The puncture `g` is first sorted to the form `1^k 0^(q−k)` by a domain
//! permutation; the sorted problem is solved by a closed form (`k = 0`), a
//! cyclic construction (`k = q−1`), or a recursion on `q` that keeps `k`.

use crate::encoding::Encoding;
use crate::error::{Error, Result};
use crate::family::{BoolFunc, FamilyKind, FamilySpec, MemberKey, MAX_FULL_FAMILY_Q};
use crate::symbol::{CellSymbol, CellWord, Scenario};

use CellSymbol::{Bullet, One, Star, Zero};

fn word(n: usize, f: impl Fn(usize) -> CellSymbol) -> CellWord {
    CellWord::new((0..n).map(f).collect())
}

fn check_puncture(g: &BoolFunc, scenario: Scenario) -> Result<()> {
    if scenario != Scenario::SS && scenario != Scenario::RS {
        return Err(Error::UnsupportedScenario {
            family: format!("PF:{g}"),
            scenario,
        });
    }
    if g.weight() == g.q() {
        return Err(Error::InvalidPuncture(format!("g = {g} is the tautology")));
    }
    if scenario == Scenario::SS && g.weight() == 1 {
        return Err(Error::InvalidPuncture(format!(
            "g = {g} is an equality function, not allowed under (S,S)"
        )));
    }
    if g.q() > MAX_FULL_FAMILY_Q {
        return Err(Error::Resource(format!(
            "punctured families are limited to q <= {MAX_FULL_FAMILY_Q}"
        )));
    }
    Ok(())
}

/// Encodes `F_q \ {g}` with `n = q−1` under (S,S) or (R,S).
pub fn encode_punctured(g: &BoolFunc, scenario: Scenario) -> Result<Encoding> {
    check_puncture(g, scenario)?;
    let q = g.q();
    let k = g.weight();
    let perm: Vec<usize> = (0..q)
        .filter(|&x| g.eval(x))
        .chain((0..q).filter(|&x| !g.eval(x)))
        .collect();
    let mut pos = vec![0; q];
    for (p, &x) in perm.iter().enumerate() {
        pos[x] = p;
    }
    let sorted = Sorted {
        closed_form_zero: true,
    };
    let sorted_inputs = sorted.inputs(q, k);
    let inputs = (0..q).map(|x| sorted_inputs[pos[x]].clone()).collect();
    let spec = FamilySpec::punctured(g.clone())?;
    let states = spec
        .members()?
        .into_iter()
        .map(|key| {
            let MemberKey::F(f) = &key else {
                unreachable!("punctured members are truth tables")
            };
            let fs: Vec<bool> = perm.iter().map(|&x| f.eval(x)).collect();
            let w = sorted.state(q, k, &fs);
            (key, w)
        })
        .collect();
    Encoding::new(FamilyKind::PuncturedF(g.clone()), scenario, inputs, states)
}

/// Construction for the sorted puncture `1^k 0^(q−k)`.
struct Sorted {
    /// Use the closed form for `k = 0`; otherwise recurse down to `q = 2`.
    closed_form_zero: bool,
}

impl Sorted {
    fn inputs(&self, q: usize, k: usize) -> Vec<CellWord> {
        let n = q - 1;
        if q == 2 {
            let s = if k == 0 { Zero } else { Bullet };
            return vec![CellWord::new(vec![s]), CellWord::new(vec![One])];
        }
        if k == 0 && self.closed_form_zero {
            return (0..q)
                .map(|x| {
                    word(n, |j| {
                        if x <= j {
                            Zero
                        } else if x == j + 1 {
                            One
                        } else {
                            Star
                        }
                    })
                })
                .collect();
        }
        if k == q - 1 {
            let m = q - 1;
            let mut v: Vec<CellWord> = (0..m)
                .map(|x| {
                    word(n, |j| {
                        if x == j {
                            One
                        } else if x == (j + 1) % m {
                            Zero
                        } else {
                            Star
                        }
                    })
                })
                .collect();
            v.push(CellWord::repeat(Zero, n));
            return v;
        }
        let sub = self.inputs(q - 1, k);
        let mut v: Vec<CellWord> = sub
            .into_iter()
            .enumerate()
            .map(|(x, w)| {
                let tail = if x < k { Star } else { Zero };
                w.concat(&CellWord::new(vec![tail]))
            })
            .collect();
        v.push(last_star_one(n));
        v
    }

    /// `f` is a truth table in sorted coordinates, different from `1^k 0^(q−k)`.
    fn state(&self, q: usize, k: usize, f: &[bool]) -> CellWord {
        let n = q - 1;
        if q == 2 {
            let s = match (f[0], f[1]) {
                (true, true) => Star,
                (false, true) => One,
                (true, false) => Zero,
                (false, false) => Zero,
            };
            return CellWord::new(vec![s]);
        }
        if k == 0 && self.closed_form_zero {
            return word(n, |j| {
                let next = f[j + 1];
                let before = f[..=j].iter().any(|&b| b);
                match (next, before) {
                    (false, true) => Zero,
                    (true, false) => One,
                    _ => Star,
                }
            });
        }
        if k == q - 1 {
            let m = q - 1;
            if f.iter().all(|&b| !b) {
                return CellWord::repeat(One, n);
            }
            return word(n, |j| {
                if !f[j] {
                    Zero
                } else if !f[(j + 1) % m] && !f[m] {
                    One
                } else {
                    Star
                }
            });
        }
        let head = &f[..q - 1];
        let head_is_sub_puncture = head.iter().enumerate().all(|(x, &b)| b == (x < k));
        if head_is_sub_puncture {
            // f differs from the puncture only at q−1
            return last_star_one(n);
        }
        let tail = if f[q - 1] { Star } else { Zero };
        self.state(q - 1, k, head)
            .concat(&CellWord::new(vec![tail]))
    }
}

fn last_star_one(n: usize) -> CellWord {
    word(n, |j| if j + 1 == n { One } else { Star })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::encoding::{verify_encoding, VerifyOptions};

    fn bf(s: &str) -> BoolFunc {
        s.parse().unwrap()
    }

    fn check(g: &BoolFunc, scenario: Scenario) {
        let e = encode_punctured(g, scenario).unwrap();
        assert_eq!(e.n, g.q() - 1);
        let spec = e.spec().unwrap();
        let r = verify_encoding(&e, &spec, VerifyOptions::default()).unwrap();
        assert!(r.ok, "g={g} {scenario}: {r:?}");
    }

    #[test]
    fn zero_puncture_table() {
        let e = encode_punctured(&bf("0000"), Scenario::SS).unwrap();
        let u: Vec<String> = e.inputs.iter().map(|w| w.to_string()).collect();
        assert_eq!(u, ["000", "100", "*10", "**1"]);
        assert_eq!(
            e.state(&MemberKey::F(bf("1000"))).unwrap().to_string(),
            "000"
        );
        assert_eq!(
            e.state(&MemberKey::F(bf("1111"))).unwrap().to_string(),
            "***"
        );
        assert_eq!(e.states.len(), 15);
    }

    #[test]
    fn cyclic_puncture_table() {
        let e = encode_punctured(&bf("1110"), Scenario::SS).unwrap();
        assert_eq!(
            e.state(&MemberKey::F(bf("0000"))).unwrap().to_string(),
            "111"
        );
        assert_eq!(
            e.state(&MemberKey::F(bf("0110"))).unwrap().to_string(),
            "0*1"
        );
        assert_eq!(e.inputs[3].to_string(), "000");
    }

    #[test]
    fn reject_base() {
        let e = encode_punctured(&bf("10"), Scenario::RS).unwrap();
        assert_eq!(e.n, 1);
        assert_eq!(e.inputs[0].to_string(), "!");
        assert_eq!(e.inputs[1].to_string(), "1");
        assert_eq!(e.state(&MemberKey::F(bf("00"))).unwrap().to_string(), "0");
        assert_eq!(e.state(&MemberKey::F(bf("01"))).unwrap().to_string(), "1");
        assert_eq!(e.state(&MemberKey::F(bf("11"))).unwrap().to_string(), "*");
    }

    #[test]
    fn invalid_punctures() {
        assert!(matches!(
            encode_punctured(&bf("111"), Scenario::RS),
            Err(Error::InvalidPuncture(_))
        ));
        assert!(matches!(
            encode_punctured(&bf("010"), Scenario::SS),
            Err(Error::InvalidPuncture(_))
        ));
        assert!(encode_punctured(&bf("010"), Scenario::RS).is_ok());
        assert!(matches!(
            encode_punctured(&bf("000"), Scenario::SR),
            Err(Error::UnsupportedScenario { .. })
        ));
    }

    #[test]
    fn all_valid_punctures_small() {
        for q in 2..=5usize {
            for mask in 0..(1u64 << q) {
                let g = BoolFunc::from_mask(q, mask);
                if g.weight() == q {
                    continue;
                }
                check(&g, Scenario::RS);
                if g.weight() != 1 {
                    check(&g, Scenario::SS);
                }
            }
        }
    }

    #[test]
    fn closed_form_matches_recursion() {
        let closed = Sorted {
            closed_form_zero: true,
        };
        let recursive = Sorted {
            closed_form_zero: false,
        };
        for q in 2..=7usize {
            assert_eq!(closed.inputs(q, 0), recursive.inputs(q, 0), "q={q}");
            for mask in 1..(1u64 << q) {
                let f: Vec<bool> = (0..q).map(|x| (mask >> x) & 1 == 1).collect();
                assert_eq!(
                    closed.state(q, 0, &f),
                    recursive.state(q, 0, &f),
                    "q={q} f={f:?}"
                );
            }
        }
    }
}
