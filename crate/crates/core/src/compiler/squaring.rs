//! Comparators on `[q²⟩` from blocks on `[q⟩`, with `x = q·x1 + x0`:
//!
//! * `N(x,t) = N(x0,t0) ∨ N(x1,t1)`
//! * `Γ(x,t) = Γ(x1,t1+1) ∨ (E(x1,t1) ∧ Γ(x0,t0))`
//! * `L(x,t) = L(x1,t1−1) ∨ (E(x1,t1) ∧ L(x0,t0))`
//!
//! An out-of-range digit threshold uses the all-`•` state, which rejects
//! every paired input word.

use super::program::{Block, Column, Digit, Group, Unit};
use super::tree::Op;
use crate::bounds::FamilyId;
use crate::encoders::encode;
use crate::error::{Error, Result};
use crate::family::{FamilySpec, MemberKey};
use crate::symbol::{CellWord, Scenario};

/// Digit columns and state tables for squared comparators over one feature.
#[derive(Debug, Clone)]
pub struct SquaredComparator {
    pub q_base: usize,
    pub scenario: Scenario,
    /// N, G, L or G∪L on each digit.
    pub family: FamilyId,
    /// `[high, low]` for N; `[high, equality-on-high, low]` otherwise.
    pub columns: Vec<Column>,
    states: Vec<Vec<(MemberKey, CellWord)>>,
}

fn check_base(q_base: usize, scenario: Scenario, family: FamilyId) -> Result<()> {
    if scenario != Scenario::SR && scenario != Scenario::RR {
        return Err(Error::UnsupportedScenario {
            family: format!("{family} (squared)"),
            scenario,
        });
    }
    if q_base < 2 || !q_base.is_multiple_of(2) {
        return Err(Error::Domain(format!(
            "squaring needs an even base q >= 2, got {q_base}"
        )));
    }
    Ok(())
}

/// Template for one comparator over `[q_base²⟩`.
pub fn build_squared_comparator(
    op: Op,
    q_base: usize,
    scenario: Scenario,
) -> Result<SquaredComparator> {
    let family = match op {
        Op::Ne => FamilyId::N,
        Op::Ge => FamilyId::G,
        Op::Le => FamilyId::L,
        Op::Eq => {
            return Err(Error::Domain(
                "equality needs no squaring; use the E encoder on [q²⟩".into(),
            ))
        }
    };
    SquaredComparator::new(family, 0, q_base, scenario)
}

impl SquaredComparator {
    pub fn new(
        family: FamilyId,
        feature: usize,
        q_base: usize,
        scenario: Scenario,
    ) -> Result<Self> {
        check_base(q_base, scenario, family)?;
        let digits: Vec<(Digit, FamilyId)> = if family == FamilyId::N {
            vec![(Digit::High, FamilyId::N), (Digit::Low, FamilyId::N)]
        } else {
            vec![
                (Digit::High, family),
                (Digit::High, FamilyId::E),
                (Digit::Low, family),
            ]
        };
        let mut columns = Vec::new();
        let mut states = Vec::new();
        for (digit, fam) in digits {
            let enc = encode(&FamilySpec::named(fam, q_base)?, scenario)?;
            columns.push(Column {
                feature,
                digit,
                family: fam,
                q: q_base,
                n: enc.n,
                inputs: enc.inputs,
            });
            states.push(enc.states);
        }
        Ok(SquaredComparator {
            q_base,
            scenario,
            family,
            columns,
            states,
        })
    }

    /// Total cells over the digit columns: `2n` for N, `2n + m` otherwise.
    pub fn cells(&self) -> usize {
        self.columns.iter().map(|c| c.n).sum()
    }

    fn state(&self, col: usize, key: &MemberKey) -> Result<CellWord> {
        self.states[col]
            .iter()
            .find(|(k, _)| k == key)
            .map(|(_, w)| w.clone())
            .ok_or_else(|| Error::Compile(format!("digit column has no state for {key}")))
    }

    fn key(&self, op: Op, t: usize) -> MemberKey {
        match (self.family, op) {
            (FamilyId::GL, Op::Ge) => MemberKey::G(t),
            (FamilyId::GL, Op::Le) => MemberKey::L(t),
            _ => MemberKey::T(t),
        }
    }

    fn block(&self, col: usize, offset: usize, key: &MemberKey) -> Result<Block> {
        Ok(Block {
            column: col + offset,
            state: self.state(col, key)?,
        })
    }

    /// The unit for `op` at threshold `t ∈ [q_base²⟩`; block columns are
    /// shifted by `offset`.
    pub fn unit(&self, op: Op, t: usize, offset: usize) -> Result<Unit> {
        let b = self.q_base;
        if t >= b * b {
            return Err(Error::Domain(format!(
                "threshold {t} outside [0,{})",
                b * b
            )));
        }
        let (t1, t0) = (t / b, t % b);
        let supported = match self.family {
            FamilyId::N => op == Op::Ne,
            FamilyId::G => op == Op::Ge,
            FamilyId::L => op == Op::Le,
            FamilyId::GL => op == Op::Ge || op == Op::Le,
            _ => false,
        };
        if !supported {
            return Err(Error::Compile(format!(
                "{op} is not available on {} digit columns",
                self.family
            )));
        }
        if op == Op::Ne {
            return Ok(Unit {
                groups: vec![
                    Group {
                        blocks: vec![self.block(0, offset, &MemberKey::T(t1))?],
                    },
                    Group {
                        blocks: vec![self.block(1, offset, &MemberKey::T(t0))?],
                    },
                ],
            });
        }
        let outer = match op {
            Op::Ge => (t1 + 1 < b).then(|| t1 + 1),
            _ => t1.checked_sub(1),
        };
        let high = match outer {
            Some(s) => self.block(0, offset, &self.key(op, s))?,
            None => Block {
                column: offset,
                state: CellWord::bullets(self.columns[0].n),
            },
        };
        Ok(Unit {
            groups: vec![
                Group { blocks: vec![high] },
                Group {
                    blocks: vec![
                        self.block(1, offset, &MemberKey::T(t1))?,
                        self.block(2, offset, &self.key(op, t0))?,
                    ],
                },
            ],
        })
    }

    /// Evaluates the unit for `(op, t)` at input `x`.
    pub fn eval(&self, op: Op, x: usize, t: usize) -> Result<bool> {
        let b = self.q_base;
        if x >= b * b {
            return Err(Error::Input(format!("input {x} outside [0,{})", b * b)));
        }
        let unit = self.unit(op, t, 0)?;
        Ok(unit.eval(&|c| self.columns[c].input_word(x)))
    }
}
