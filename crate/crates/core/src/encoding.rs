//! The `Encoding` record, its text format and exhaustive verification.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use crate::bounds::FamilyId;
use crate::error::{Error, Result};
use crate::family::{BoolFunc, FamilyKind, FamilySpec, MemberKey};
use crate::par::{self, Execution};
use crate::symbol::{word_match_unchecked, CellSymbol, CellWord, Scenario};

/// Input map `u: [q⟩ → Σ^n` and state map `ϑ` over family members.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Encoding {
    pub family: FamilyKind,
    pub scenario: Scenario,
    pub q: usize,
    pub n: usize,
    pub inputs: Vec<CellWord>,
    pub states: Vec<(MemberKey, CellWord)>,
}

impl Encoding {
    pub fn new(
        family: FamilyKind,
        scenario: Scenario,
        inputs: Vec<CellWord>,
        states: Vec<(MemberKey, CellWord)>,
    ) -> Result<Self> {
        let q = inputs.len();
        let n = inputs.first().map(CellWord::len).unwrap_or(0);
        let enc = Encoding {
            family,
            scenario,
            q,
            n,
            inputs,
            states,
        };
        enc.check_shape()?;
        Ok(enc)
    }

    fn check_shape(&self) -> Result<()> {
        if self.inputs.len() != self.q {
            return Err(Error::Dimension {
                expected: self.q,
                actual: self.inputs.len(),
            });
        }
        for w in self.inputs.iter().chain(self.states.iter().map(|(_, w)| w)) {
            if w.len() != self.n {
                return Err(Error::Dimension {
                    expected: self.n,
                    actual: w.len(),
                });
            }
        }
        Ok(())
    }

    pub fn state(&self, key: &MemberKey) -> Option<&CellWord> {
        self.states.iter().find(|(k, _)| k == key).map(|(_, w)| w)
    }

    /// The family this encoding claims to implement.
    pub fn spec(&self) -> Result<FamilySpec> {
        FamilySpec::new(self.family.clone(), self.q)
    }
}

impl fmt::Display for Encoding {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{} {} {} {}", self.family, self.scenario, self.q, self.n)?;
        for (x, w) in self.inputs.iter().enumerate() {
            writeln!(f, "{x} {w}")?;
        }
        for (k, w) in &self.states {
            writeln!(f, "{k} {w}")?;
        }
        Ok(())
    }
}

fn format_err(line: usize, message: impl Into<String>) -> Error {
    Error::Format {
        line,
        message: message.into(),
    }
}

fn parse_family_token(tok: &str) -> Result<Option<FamilyKind>> {
    if tok == "X" {
        return Ok(None);
    }
    if let Some(bits) = tok.strip_prefix("PF:") {
        return Ok(Some(FamilyKind::PuncturedF(bits.parse::<BoolFunc>()?)));
    }
    Ok(Some(FamilyKind::Named(tok.parse::<FamilyId>()?)))
}

impl FromStr for Encoding {
    type Err = Error;

    fn from_str(text: &str) -> Result<Self> {
        let mut lines = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.trim()))
            .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));
        let (hl, header) = lines
            .next()
            .ok_or_else(|| format_err(1, "missing header"))?;
        let fields: Vec<&str> = header.split_whitespace().collect();
        if fields.len() != 4 {
            return Err(format_err(hl, "header must be `family scenario q n`"));
        }
        let ctx = |e: Error| format_err(hl, e.to_string());
        let family = parse_family_token(fields[0]).map_err(ctx)?;
        let scenario: Scenario = fields[1].parse().map_err(ctx)?;
        let q: usize = fields[2]
            .parse()
            .map_err(|_| format_err(hl, "q is not an integer"))?;
        let n: usize = fields[3]
            .parse()
            .map_err(|_| format_err(hl, "n is not an integer"))?;

        let mut inputs = Vec::with_capacity(q);
        let mut states = Vec::new();
        for (ln, line) in lines {
            let mut parts = line.split_whitespace();
            let (Some(head), Some(word), None) = (parts.next(), parts.next(), parts.next()) else {
                return Err(format_err(ln, "expected two fields"));
            };
            let word: CellWord = word
                .parse()
                .map_err(|e: Error| format_err(ln, e.to_string()))?;
            if word.len() != n {
                return Err(format_err(
                    ln,
                    format!("word has length {}, expected {n}", word.len()),
                ));
            }
            if inputs.len() < q {
                let x: usize = head
                    .parse()
                    .map_err(|_| format_err(ln, format!("expected input index, got {head:?}")))?;
                if x != inputs.len() {
                    return Err(format_err(
                        ln,
                        format!("input index {x} out of order, expected {}", inputs.len()),
                    ));
                }
                inputs.push(word);
            } else {
                let key: MemberKey = head
                    .parse()
                    .map_err(|e: Error| format_err(ln, e.to_string()))?;
                states.push((key, word));
            }
        }
        if inputs.len() != q {
            return Err(format_err(
                text.lines().count(),
                format!("expected {q} input lines, found {}", inputs.len()),
            ));
        }
        let family = match family {
            Some(f) => f,
            None => FamilyKind::Explicit(
                states
                    .iter()
                    .map(|(k, _)| match k {
                        MemberKey::F(f) => Ok(f.clone()),
                        other => Err(format_err(
                            0,
                            format!("explicit family needs f= keys, got {other}"),
                        )),
                    })
                    .collect::<Result<_>>()?,
            ),
        };
        let enc = Encoding {
            family,
            scenario,
            q,
            n,
            inputs,
            states,
        };
        enc.check_shape()?;
        Ok(enc)
    }
}

/// Appends `extra` cells to every word. A padding cell is `*` where the
/// side's alphabet allows it and `0` otherwise, so every pair still matches.
pub fn pad(enc: &Encoding, extra: usize) -> Encoding {
    let fill = |code: crate::symbol::AlphabetCode| {
        if code.contains(CellSymbol::Star) {
            CellSymbol::Star
        } else {
            CellSymbol::Zero
        }
    };
    let tail_u = CellWord::repeat(fill(enc.scenario.input), extra);
    let tail_s = CellWord::repeat(fill(enc.scenario.state), extra);
    Encoding {
        family: enc.family.clone(),
        scenario: enc.scenario,
        q: enc.q,
        n: enc.n + extra,
        inputs: enc.inputs.iter().map(|w| w.concat(&tail_u)).collect(),
        states: enc
            .states
            .iter()
            .map(|(k, w)| (k.clone(), w.concat(&tail_s)))
            .collect(),
    }
}

#[derive(Debug, Clone, Copy)]
pub struct VerifyOptions {
    /// Maximum number of counterexamples kept in the report.
    pub cap: usize,
    pub execution: Execution,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions {
            cap: 32,
            execution: Execution::Parallel,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Counterexample {
    pub x: usize,
    pub key: MemberKey,
    pub expected: bool,
    pub got: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum AlphabetViolation {
    Input { x: usize, word: CellWord },
    State { key: MemberKey, word: CellWord },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VerifyReport {
    pub ok: bool,
    /// Number of `(x, member)` pairs evaluated.
    pub checked: u64,
    /// Total number of failing pairs, including those beyond the cap.
    pub failures: u64,
    pub counterexamples: Vec<Counterexample>,
    pub alphabet_violations: Vec<AlphabetViolation>,
}

/// Checks alphabet conformance and `f(x) = T(u(x), ϑ(f))` for every pair.
pub fn verify_encoding(
    enc: &Encoding,
    spec: &FamilySpec,
    opts: VerifyOptions,
) -> Result<VerifyReport> {
    if enc.q != spec.q {
        return Err(Error::SpecMismatch(format!(
            "encoding has q = {}, family has q = {}",
            enc.q, spec.q
        )));
    }
    enc.check_shape()?;
    let members = spec.members()?;
    let mut by_key: HashMap<&MemberKey, &CellWord> = HashMap::with_capacity(enc.states.len());
    for (k, w) in &enc.states {
        if !spec.contains(k) {
            return Err(Error::SpecMismatch(format!(
                "key {k} is not a family member"
            )));
        }
        if by_key.insert(k, w).is_some() {
            return Err(Error::SpecMismatch(format!("key {k} appears twice")));
        }
    }
    let states: Vec<&CellWord> = members
        .iter()
        .map(|k| {
            by_key
                .get(k)
                .copied()
                .ok_or_else(|| Error::SpecMismatch(format!("missing state for {k}")))
        })
        .collect::<Result<_>>()?;

    let mut alphabet_violations = Vec::new();
    for (x, w) in enc.inputs.iter().enumerate() {
        if !w.uses_only(enc.scenario.input) {
            alphabet_violations.push(AlphabetViolation::Input { x, word: w.clone() });
        }
    }
    for (k, w) in members.iter().zip(&states) {
        if !w.uses_only(enc.scenario.state) {
            alphabet_violations.push(AlphabetViolation::State {
                key: k.clone(),
                word: (*w).clone(),
            });
        }
    }

    let cap = opts.cap;
    let per_x = par::map_range(opts.execution, 0..enc.q, |x| {
        let u = &enc.inputs[x];
        let mut found = Vec::new();
        let mut count = 0u64;
        for (k, w) in members.iter().zip(&states) {
            let got = word_match_unchecked(u, w);
            let expected = spec.value(k, x);
            if got != expected {
                count += 1;
                if found.len() < cap {
                    found.push(Counterexample {
                        x,
                        key: k.clone(),
                        expected,
                        got,
                    });
                }
            }
        }
        (count, found)
    });
    let failures: u64 = per_x.iter().map(|(c, _)| c).sum();
    let counterexamples: Vec<Counterexample> =
        per_x.into_iter().flat_map(|(_, v)| v).take(cap).collect();
    let violation_count = alphabet_violations.len();
    alphabet_violations.truncate(cap);
    Ok(VerifyReport {
        ok: failures == 0 && violation_count == 0,
        checked: (enc.q * members.len()) as u64,
        failures,
        counterexamples,
        alphabet_violations,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(s: &str) -> CellWord {
        s.parse().unwrap()
    }

    fn g_os_3() -> Encoding {
        Encoding::new(
            FamilyKind::Named(FamilyId::G),
            Scenario::OS,
            vec![w("00"), w("10"), w("11")],
            vec![
                (MemberKey::T(0), w("**")),
                (MemberKey::T(1), w("1*")),
                (MemberKey::T(2), w("11")),
            ],
        )
        .unwrap()
    }

    #[test]
    fn table_encoding_verifies() {
        let enc = g_os_3();
        let spec = enc.spec().unwrap();
        let r = verify_encoding(&enc, &spec, VerifyOptions::default()).unwrap();
        assert!(r.ok);
        assert_eq!(r.checked, 9);
    }

    #[test]
    fn corrupted_state_is_reported() {
        let mut enc = g_os_3();
        enc.states[1].1 = w("0*");
        let spec = enc.spec().unwrap();
        let r = verify_encoding(&enc, &spec, VerifyOptions::default()).unwrap();
        assert!(!r.ok);
        assert!(r.counterexamples.contains(&Counterexample {
            x: 1,
            key: MemberKey::T(1),
            expected: true,
            got: false
        }));
        assert_eq!(r.failures as usize, r.counterexamples.len());
    }

    #[test]
    fn alphabet_violation_is_reported() {
        let mut enc = g_os_3();
        enc.inputs[0] = w("*0");
        let spec = enc.spec().unwrap();
        let r = verify_encoding(&enc, &spec, VerifyOptions::default()).unwrap();
        assert!(!r.ok);
        assert_eq!(r.alphabet_violations.len(), 1);
    }

    #[test]
    fn key_mismatch_is_an_error() {
        let mut enc = g_os_3();
        enc.states.pop();
        let spec = enc.spec().unwrap();
        assert!(matches!(
            verify_encoding(&enc, &spec, VerifyOptions::default()),
            Err(Error::SpecMismatch(_))
        ));
        let other = FamilySpec::named(FamilyId::G, 4).unwrap();
        assert!(matches!(
            verify_encoding(&g_os_3(), &other, VerifyOptions::default()),
            Err(Error::SpecMismatch(_))
        ));
    }

    #[test]
    fn text_round_trip() {
        let enc = g_os_3();
        let text = enc.to_string();
        assert!(text.starts_with("G os 3 2\n0 00\n"));
        let back: Encoding = text.parse().unwrap();
        assert_eq!(back, enc);
        assert_eq!(back.to_string(), text);
    }

    #[test]
    fn parse_errors_carry_line_numbers() {
        let bad = "G os 3 2\n0 00\n1 1x\n2 11\n";
        match bad.parse::<Encoding>() {
            Err(Error::Format { line, .. }) => assert_eq!(line, 3),
            other => panic!("unexpected {other:?}"),
        }
        assert!("G os 3\n".parse::<Encoding>().is_err());
    }

    #[test]
    fn padding_preserves_validity() {
        let enc = pad(&g_os_3(), 2);
        assert_eq!(enc.n, 4);
        assert_eq!(enc.inputs[0].to_string(), "0000");
        let spec = enc.spec().unwrap();
        assert!(
            verify_encoding(&enc, &spec, VerifyOptions::default())
                .unwrap()
                .ok
        );
    }
}
