//! Compiled CAM programs: rows of units (OR of groups), groups (AND of
//! blocks), and blocks (one state word against one input column).

use std::fmt;
use std::str::FromStr;

use super::tree::{fields, format_err, parse_list, take, take_usize};
use crate::bounds::FamilyId;
use crate::encoders::encode;
use crate::error::{Error, Result};
use crate::family::FamilySpec;
use crate::symbol::{word_match_unchecked, CellSymbol, CellWord, Scenario};

/// Which part of a feature value a column sees.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Digit {
    Whole,
    /// `x mod q`.
    Low,
    /// `x div q`.
    High,
}

impl fmt::Display for Digit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Digit::Whole => "whole",
            Digit::Low => "low",
            Digit::High => "high",
        })
    }
}

impl FromStr for Digit {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "whole" => Ok(Digit::Whole),
            "low" => Ok(Digit::Low),
            "high" => Ok(Digit::High),
            _ => Err(Error::Parse {
                position: 0,
                message: format!("unknown digit {s:?}"),
            }),
        }
    }
}

/// Input encoder of one column: `inputs[v]` is the word for digit value `v`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Column {
    pub feature: usize,
    pub digit: Digit,
    pub family: FamilyId,
    pub q: usize,
    pub n: usize,
    pub inputs: Vec<CellWord>,
}

impl Column {
    pub fn new(
        feature: usize,
        digit: Digit,
        family: FamilyId,
        q: usize,
        scenario: Scenario,
    ) -> Result<Self> {
        let enc = encode(&FamilySpec::named(family, q)?, scenario)?;
        Ok(Column {
            feature,
            digit,
            family,
            q,
            n: enc.n,
            inputs: enc.inputs,
        })
    }

    pub fn digit_value(&self, x: usize) -> usize {
        match self.digit {
            Digit::Whole => x,
            Digit::Low => x % self.q,
            Digit::High => x / self.q,
        }
    }

    pub fn input_word(&self, x: usize) -> &CellWord {
        &self.inputs[self.digit_value(x)]
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Block {
    pub column: usize,
    pub state: CellWord,
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Group {
    pub blocks: Vec<Block>,
}

/// Disjunction of groups; a unit with no groups never matches.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Unit {
    pub groups: Vec<Group>,
}

impl Unit {
    pub fn single(block: Block) -> Self {
        Unit {
            groups: vec![Group {
                blocks: vec![block],
            }],
        }
    }

    /// Evaluates with `input(c)` giving the input word of column `c`.
    pub fn eval<'a>(&self, input: &impl Fn(usize) -> &'a CellWord) -> bool {
        self.groups.iter().any(|g| {
            g.blocks
                .iter()
                .all(|b| word_match_unchecked(input(b.column), &b.state))
        })
    }

    pub fn cells(&self) -> usize {
        self.groups
            .iter()
            .flat_map(|g| &g.blocks)
            .map(|b| b.state.len())
            .sum()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Row {
    /// Id of the source leaf.
    pub leaf: usize,
    pub label: String,
    pub units: Vec<Unit>,
}

impl Row {
    pub fn cells(&self) -> usize {
        self.units.iter().map(Unit::cells).sum()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CamProgram {
    pub domains: Vec<usize>,
    pub scenario: Scenario,
    pub columns: Vec<Column>,
    pub rows: Vec<Row>,
}

/// Physical layout of a program whose units are all single groups.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Grid {
    /// Column index feeding each slot, left to right.
    pub slots: Vec<usize>,
    pub states: Vec<CellWord>,
}

impl Grid {
    pub fn width(&self, program: &CamProgram) -> usize {
        self.slots.iter().map(|&c| program.columns[c].n).sum()
    }

    /// The input word driving all rows for feature vector `x`.
    pub fn input_word(&self, program: &CamProgram, x: &[usize]) -> Result<CellWord> {
        program.check_input(x)?;
        let mut w = CellWord::default();
        for &c in &self.slots {
            let col = &program.columns[c];
            w = w.concat(col.input_word(x[col.feature]));
        }
        Ok(w)
    }
}

impl CamProgram {
    pub fn check_input(&self, x: &[usize]) -> Result<()> {
        if x.len() != self.domains.len() {
            return Err(Error::Dimension {
                expected: self.domains.len(),
                actual: x.len(),
            });
        }
        for (s, (&v, &q)) in x.iter().zip(&self.domains).enumerate() {
            if v >= q {
                return Err(Error::Input(format!(
                    "feature {s} value {v} outside domain [0,{q})"
                )));
            }
        }
        Ok(())
    }

    /// Lays rows out side by side. Each column gets as many slots as the
    /// most blocks any row places on it; unused slots are padded with a
    /// state word that matches every input of the column.
    pub fn to_grid(&self) -> Result<Grid> {
        let mut per_row: Vec<Vec<Vec<&CellWord>>> = Vec::with_capacity(self.rows.len());
        let mut slots_per_col = vec![0usize; self.columns.len()];
        for (i, row) in self.rows.iter().enumerate() {
            let mut by_col: Vec<Vec<&CellWord>> = vec![Vec::new(); self.columns.len()];
            for unit in &row.units {
                let [group] = unit.groups.as_slice() else {
                    return Err(Error::Compile(format!(
                        "row {i} has a unit with {} groups; only single-group units have a grid layout",
                        unit.groups.len()
                    )));
                };
                for b in &group.blocks {
                    by_col[b.column].push(&b.state);
                }
            }
            for (c, v) in by_col.iter().enumerate() {
                slots_per_col[c] = slots_per_col[c].max(v.len());
            }
            per_row.push(by_col);
        }
        let mut slots = Vec::new();
        for (c, &k) in slots_per_col.iter().enumerate() {
            slots.extend(std::iter::repeat_n(c, k));
        }
        let fill: Vec<CellWord> = self
            .columns
            .iter()
            .map(|col| padding_word(col, self.scenario))
            .collect::<Result<_>>()?;
        let states = per_row
            .into_iter()
            .map(|by_col| {
                let mut w = CellWord::default();
                for (c, blocks) in by_col.iter().enumerate() {
                    for k in 0..slots_per_col[c] {
                        w = w.concat(blocks.get(k).copied().unwrap_or(&fill[c]));
                    }
                }
                w
            })
            .collect();
        Ok(Grid { slots, states })
    }
}

/// `*^n` when allowed, else a state word matching every input of the column.
fn padding_word(col: &Column, scenario: Scenario) -> Result<CellWord> {
    if scenario.state.contains(CellSymbol::Star) {
        return Ok(CellWord::stars(col.n));
    }
    let symbols = scenario.state.symbols();
    crate::bounds::LexWords::new(symbols, col.n)
        .find(|w| col.inputs.iter().all(|u| word_match_unchecked(u, w)))
        .ok_or_else(|| {
            Error::Compile(format!(
                "no padding state exists for column over feature {}",
                col.feature
            ))
        })
}

impl fmt::Display for CamProgram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(
            f,
            "program rows={} features={}",
            self.rows.len(),
            self.domains.len()
        )?;
        let d: Vec<String> = self.domains.iter().map(|q| q.to_string()).collect();
        writeln!(f, "domains {}", d.join(","))?;
        writeln!(f, "scenario {}", self.scenario)?;
        for (i, c) in self.columns.iter().enumerate() {
            writeln!(
                f,
                "column {i} feature={} digit={} family={} q={} n={}",
                c.feature, c.digit, c.family, c.q, c.n
            )?;
        }
        for (i, row) in self.rows.iter().enumerate() {
            writeln!(f, "row {i} leaf={} label={}", row.leaf, row.label)?;
            for unit in &row.units {
                writeln!(f, "unit")?;
                for group in &unit.groups {
                    writeln!(f, "group")?;
                    for b in &group.blocks {
                        writeln!(f, "block col={} state={}", b.column, b.state)?;
                    }
                }
            }
        }
        Ok(())
    }
}

impl FromStr for CamProgram {
    type Err = Error;

    fn from_str(text: &str) -> Result<Self> {
        let mut lines = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.trim()))
            .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));
        let mut next = |what: &str| {
            lines
                .next()
                .ok_or_else(|| format_err(text.lines().count(), format!("missing {what}")))
        };
        let (hl, header) = next("header")?;
        let h: Vec<&str> = header.split_whitespace().collect();
        if h.first() != Some(&"program") {
            return Err(format_err(hl, "header must start with `program`"));
        }
        let hm = fields(hl, &h[1..])?;
        let row_count = take_usize(hl, &hm, "rows")?;
        let feature_count = take_usize(hl, &hm, "features")?;

        let (dl, dline) = next("domains")?;
        let domains = match dline.split_whitespace().collect::<Vec<_>>().as_slice() {
            ["domains", list] => parse_list(dl, list)?,
            _ => return Err(format_err(dl, "expected `domains <q0,...>`")),
        };
        if domains.len() != feature_count {
            return Err(format_err(dl, "domain count differs from feature count"));
        }
        let (sl, sline) = next("scenario")?;
        let scenario: Scenario = match sline.split_whitespace().collect::<Vec<_>>().as_slice() {
            ["scenario", s] => s
                .parse()
                .map_err(|e: Error| format_err(sl, e.to_string()))?,
            _ => return Err(format_err(sl, "expected `scenario <code>`")),
        };

        let mut columns: Vec<Column> = Vec::new();
        let mut rows: Vec<Row> = Vec::new();
        for (ln, line) in lines {
            let tokens: Vec<&str> = line.split_whitespace().collect();
            match tokens[0] {
                "column" => {
                    if !rows.is_empty() {
                        return Err(format_err(ln, "column after first row"));
                    }
                    if tokens.get(1) != Some(&columns.len().to_string().as_str()) {
                        return Err(format_err(ln, "columns must be numbered in order"));
                    }
                    let m = fields(ln, &tokens[2..])?;
                    let feature = take_usize(ln, &m, "feature")?;
                    if feature >= feature_count {
                        return Err(format_err(ln, format!("feature {feature} out of range")));
                    }
                    let digit: Digit = take(ln, &m, "digit")?
                        .parse()
                        .map_err(|e: Error| format_err(ln, e.to_string()))?;
                    let family: FamilyId = take(ln, &m, "family")?
                        .parse()
                        .map_err(|e: Error| format_err(ln, e.to_string()))?;
                    let q = take_usize(ln, &m, "q")?;
                    let n = take_usize(ln, &m, "n")?;
                    let col = Column::new(feature, digit, family, q, scenario)
                        .map_err(|e| format_err(ln, e.to_string()))?;
                    if col.n != n {
                        return Err(format_err(
                            ln,
                            format!("n={n} but the encoder uses {}", col.n),
                        ));
                    }
                    columns.push(col);
                }
                "row" => {
                    if tokens.get(1) != Some(&rows.len().to_string().as_str()) {
                        return Err(format_err(ln, "rows must be numbered in order"));
                    }
                    let m = fields(ln, &tokens[2..])?;
                    rows.push(Row {
                        leaf: take_usize(ln, &m, "leaf")?,
                        label: take(ln, &m, "label")?.to_string(),
                        units: Vec::new(),
                    });
                }
                "unit" => rows
                    .last_mut()
                    .ok_or_else(|| format_err(ln, "unit outside a row"))?
                    .units
                    .push(Unit::default()),
                "group" => rows
                    .last_mut()
                    .and_then(|r| r.units.last_mut())
                    .ok_or_else(|| format_err(ln, "group outside a unit"))?
                    .groups
                    .push(Group::default()),
                "block" => {
                    let m = fields(ln, &tokens[1..])?;
                    let column = take_usize(ln, &m, "col")?;
                    let state: CellWord = take(ln, &m, "state")?
                        .parse()
                        .map_err(|e: Error| format_err(ln, e.to_string()))?;
                    let col = columns
                        .get(column)
                        .ok_or_else(|| format_err(ln, format!("unknown column {column}")))?;
                    if state.len() != col.n {
                        return Err(format_err(
                            ln,
                            format!("state has {} cells, column has {}", state.len(), col.n),
                        ));
                    }
                    rows.last_mut()
                        .and_then(|r| r.units.last_mut())
                        .and_then(|u| u.groups.last_mut())
                        .ok_or_else(|| format_err(ln, "block outside a group"))?
                        .blocks
                        .push(Block { column, state });
                }
                other => return Err(format_err(ln, format!("unknown record {other:?}"))),
            }
        }
        if rows.len() != row_count {
            return Err(format_err(
                hl,
                format!("header says {row_count} rows, found {}", rows.len()),
            ));
        }
        Ok(CamProgram {
            domains,
            scenario,
            columns,
            rows,
        })
    }
}
