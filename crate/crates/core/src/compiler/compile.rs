//! Decision tree to CAM program: one row per leaf, one unit per predicate.

use std::collections::BTreeSet;

use super::program::{Block, CamProgram, Column, Digit, Row, Unit};
use super::squaring::SquaredComparator;
use super::tree::{DecisionTree, NodeKind, Op};
use crate::bounds::{FamilyId, LexWords};
use crate::encoders::encode;
use crate::error::{Error, Result};
use crate::family::{FamilySpec, MemberKey};
use crate::symbol::{word_match_unchecked, CellSymbol, CellWord, Scenario};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CompileConfig {
    pub scenario: Scenario,
    /// Compile NE/GE/LE over features whose domain is an even square
    /// through digit blocks. Requires (S,R) or (R,R).
    pub use_squaring: bool,
}

impl Default for CompileConfig {
    fn default() -> Self {
        CompileConfig {
            scenario: Scenario::SS,
            use_squaring: false,
        }
    }
}

/// A path predicate after negations are rewritten. Thresholds may fall
/// outside the domain: such GE/LE literals are constant.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Lit {
    Eq(usize),
    Ne(usize),
    Ge(i64),
    Le(i64),
}

fn literal(op: Op, t: usize, outcome: bool) -> Lit {
    let ti = t as i64;
    match (op, outcome) {
        (Op::Eq, true) | (Op::Ne, false) => Lit::Eq(t),
        (Op::Ne, true) | (Op::Eq, false) => Lit::Ne(t),
        (Op::Ge, true) => Lit::Ge(ti),
        (Op::Ge, false) => Lit::Le(ti - 1),
        (Op::Le, true) => Lit::Le(ti),
        (Op::Le, false) => Lit::Ge(ti + 1),
    }
}

/// Conjunction of one path's literals on a single feature.
#[derive(Debug, Default)]
struct FeatureConstraint {
    eq: BTreeSet<usize>,
    ne: BTreeSet<usize>,
    ge: Option<usize>,
    le: Option<usize>,
    never: bool,
}

impl FeatureConstraint {
    fn add(&mut self, lit: Lit, q: usize) {
        let last = q as i64 - 1;
        match lit {
            Lit::Eq(t) => {
                self.eq.insert(t);
            }
            Lit::Ne(t) => {
                self.ne.insert(t);
            }
            Lit::Ge(t) if t <= 0 => {}
            Lit::Ge(t) if t > last => self.never = true,
            Lit::Ge(t) => self.ge = Some(self.ge.map_or(t as usize, |g| g.max(t as usize))),
            Lit::Le(t) if t < 0 => self.never = true,
            Lit::Le(t) if t >= last => {}
            Lit::Le(t) => self.le = Some(self.le.map_or(t as usize, |l| l.min(t as usize))),
        }
        if self.eq.len() > 1 {
            self.never = true;
        }
    }
}

/// Column indices serving one feature.
#[derive(Debug, Default, Clone)]
struct FeatureColumns {
    eq: Option<usize>,
    ne: Option<usize>,
    threshold: Option<(usize, FamilyId)>,
    squared_ne: Option<(usize, usize)>,
    squared_threshold: Option<(usize, usize)>,
    first: Option<usize>,
}

struct Builder {
    scenario: Scenario,
    columns: Vec<Column>,
    /// State tables aligned with `columns`.
    states: Vec<Vec<(MemberKey, CellWord)>>,
    squared: Vec<SquaredComparator>,
}

impl Builder {
    fn add_column(&mut self, feature: usize, family: FamilyId, q: usize) -> Result<usize> {
        if !family.supports(self.scenario) {
            return Err(Error::unsupported(family, self.scenario));
        }
        let enc = encode(&FamilySpec::named(family, q)?, self.scenario)?;
        self.columns.push(Column {
            feature,
            digit: Digit::Whole,
            family,
            q,
            n: enc.n,
            inputs: enc.inputs,
        });
        self.states.push(enc.states);
        Ok(self.columns.len() - 1)
    }

    fn add_squared(
        &mut self,
        feature: usize,
        family: FamilyId,
        base: usize,
    ) -> Result<(usize, usize)> {
        let sq = SquaredComparator::new(family, feature, base, self.scenario)?;
        let offset = self.columns.len();
        for c in &sq.columns {
            self.columns.push(c.clone());
            self.states.push(Vec::new());
        }
        self.squared.push(sq);
        Ok((offset, self.squared.len() - 1))
    }

    fn block(&self, column: usize, key: MemberKey) -> Result<Unit> {
        let state = self.states[column]
            .iter()
            .find(|(k, _)| *k == key)
            .map(|(_, w)| w.clone())
            .ok_or_else(|| Error::Compile(format!("column {column} has no state for {key}")))?;
        Ok(Unit::single(Block { column, state }))
    }

    /// A unit that matches no input of the feature.
    fn never(&self, column: Option<usize>) -> Unit {
        let Some(c) = column else {
            return Unit::default();
        };
        let col = &self.columns[c];
        let bullets = CellWord::bullets(col.n);
        if self.scenario.state.contains(CellSymbol::Bullet)
            && col.inputs.iter().all(|u| !u.is_all(CellSymbol::Star))
        {
            return Unit::single(Block {
                column: c,
                state: bullets,
            });
        }
        LexWords::new(self.scenario.state.symbols(), col.n)
            .find(|w| col.inputs.iter().all(|u| !word_match_unchecked(u, w)))
            .map(|state| Unit::single(Block { column: c, state }))
            .unwrap_or_default()
    }
}

fn even_square_root(q: usize) -> Option<usize> {
    let r = (q as f64).sqrt().round() as usize;
    (r >= 2 && r * r == q && r.is_multiple_of(2)).then_some(r)
}

/// Compiles `tree` into one row per leaf, in leaf listing order.
pub fn compile_tree(tree: &DecisionTree, config: &CompileConfig) -> Result<CamProgram> {
    tree.validate()?;
    let scenario = config.scenario;
    if config.use_squaring && scenario != Scenario::SR && scenario != Scenario::RR {
        return Err(Error::UnsupportedScenario {
            family: "squared comparators".into(),
            scenario,
        });
    }
    let l = tree.feature_count();
    let paths = tree.paths();

    let constraints: Vec<Vec<FeatureConstraint>> = paths
        .iter()
        .map(|path| {
            let mut per: Vec<FeatureConstraint> =
                (0..l).map(|_| FeatureConstraint::default()).collect();
            for &(s, op, t, outcome) in path {
                per[s].add(literal(op, t, outcome), tree.domains[s]);
            }
            per
        })
        .collect();

    let mut builder = Builder {
        scenario,
        columns: Vec::new(),
        states: Vec::new(),
        squared: Vec::new(),
    };
    let mut feature_cols = vec![FeatureColumns::default(); l];
    for s in 0..l {
        let q = tree.domains[s];
        let any = |f: &dyn Fn(&FeatureConstraint) -> bool| constraints.iter().any(|c| f(&c[s]));
        let (has_eq, has_ne) = (any(&|c| !c.eq.is_empty()), any(&|c| !c.ne.is_empty()));
        let (has_ge, has_le) = (any(&|c| c.ge.is_some()), any(&|c| c.le.is_some()));
        let threshold_family = match (has_ge, has_le) {
            (true, true) => Some(FamilyId::GL),
            (true, false) => Some(FamilyId::G),
            (false, true) => Some(FamilyId::L),
            _ => None,
        };
        let base = if config.use_squaring {
            even_square_root(q)
        } else {
            None
        };
        let fc = &mut feature_cols[s];
        if has_eq {
            fc.eq = Some(builder.add_column(s, FamilyId::E, q)?);
        }
        match base {
            Some(b) => {
                if has_ne {
                    fc.squared_ne = Some(builder.add_squared(s, FamilyId::N, b)?);
                }
                if let Some(fam) = threshold_family {
                    fc.squared_threshold = Some(builder.add_squared(s, fam, b)?);
                }
            }
            None => {
                if has_ne {
                    fc.ne = Some(builder.add_column(s, FamilyId::N, q)?);
                }
                if let Some(fam) = threshold_family {
                    fc.threshold = Some((builder.add_column(s, fam, q)?, fam));
                }
            }
        }
        fc.first = builder
            .columns
            .iter()
            .position(|c| c.feature == s && c.digit == Digit::Whole)
            .or_else(|| builder.columns.iter().position(|c| c.feature == s));
    }

    let mut rows = Vec::with_capacity(paths.len());
    for (leaf, per) in tree.leaves().into_iter().zip(&constraints) {
        let NodeKind::Leaf { label } = &tree.nodes[leaf].kind else {
            unreachable!("leaves() returns leaves")
        };
        let mut units = Vec::new();
        let mut never = None;
        for (s, c) in per.iter().enumerate() {
            let fc = &feature_cols[s];
            if c.never {
                never = Some(builder.never(fc.first));
                break;
            }
            for &t in &c.eq {
                units.push(builder.block(fc.eq.expect("eq column"), MemberKey::T(t))?);
            }
            for &t in &c.ne {
                match fc.squared_ne {
                    Some((off, i)) => units.push(builder.squared[i].unit(Op::Ne, t, off)?),
                    None => units.push(builder.block(fc.ne.expect("ne column"), MemberKey::T(t))?),
                }
            }
            for (op, t) in [(Op::Ge, c.ge), (Op::Le, c.le)] {
                let Some(t) = t else { continue };
                match (fc.squared_threshold, fc.threshold) {
                    (Some((off, i)), _) => units.push(builder.squared[i].unit(op, t, off)?),
                    (None, Some((col, fam))) => {
                        let key = match (fam, op) {
                            (FamilyId::GL, Op::Ge) => MemberKey::G(t),
                            (FamilyId::GL, _) => MemberKey::L(t),
                            _ => MemberKey::T(t),
                        };
                        units.push(builder.block(col, key)?);
                    }
                    (None, None) => unreachable!("threshold column exists"),
                }
            }
        }
        if let Some(u) = never {
            units = vec![u];
        }
        rows.push(Row {
            leaf: tree.nodes[leaf].id,
            label: label.clone(),
            units,
        });
    }
    Ok(CamProgram {
        domains: tree.domains.clone(),
        scenario,
        columns: builder.columns,
        rows,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn negation_rules() {
        assert_eq!(literal(Op::Ge, 3, false), Lit::Le(2));
        assert_eq!(literal(Op::Eq, 3, false), Lit::Ne(3));
        assert_eq!(literal(Op::Le, 3, false), Lit::Ge(4));
        assert_eq!(literal(Op::Ne, 3, false), Lit::Eq(3));
        assert_eq!(literal(Op::Ge, 0, false), Lit::Le(-1));
    }

    #[test]
    fn square_roots() {
        assert_eq!(even_square_root(16), Some(4));
        assert_eq!(even_square_root(4), Some(2));
        assert_eq!(even_square_root(9), None);
        assert_eq!(even_square_root(8), None);
    }
}
