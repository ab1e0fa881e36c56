//! Match-line evaluation of compiled programs and raw cell arrays.

use std::fmt;

use crate::compiler::CamProgram;
use crate::error::{Error, Result};
use crate::par::{self, Execution};
use crate::symbol::{word_match_unchecked, CellWord};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MatchResult {
    pub row_bits: Vec<bool>,
    pub match_count: usize,
    pub first_match: Option<usize>,
}

impl MatchResult {
    pub fn from_bits(row_bits: Vec<bool>) -> Self {
        let match_count = row_bits.iter().filter(|&&b| b).count();
        let first_match = row_bits.iter().position(|&b| b);
        MatchResult {
            row_bits,
            match_count,
            first_match,
        }
    }
}

/// `<bits> <count> <first|->`.
impl fmt::Display for MatchResult {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for &b in &self.row_bits {
            f.write_str(if b { "1" } else { "0" })?;
        }
        write!(f, " {} ", self.match_count)?;
        match self.first_match {
            Some(i) => write!(f, "{i}"),
            None => f.write_str("-"),
        }
    }
}

/// Rows are ANDs of units, units ORs of groups, groups ANDs of blocks.
pub fn eval_program(prog: &CamProgram, x: &[usize]) -> Result<MatchResult> {
    prog.check_input(x)?;
    let input = |c: usize| {
        let col = &prog.columns[c];
        col.input_word(x[col.feature])
    };
    let bits = prog
        .rows
        .iter()
        .map(|row| row.units.iter().all(|u| u.eval(&input)))
        .collect();
    Ok(MatchResult::from_bits(bits))
}

/// Evaluates many vectors; output order follows input order.
pub fn eval_batch(
    prog: &CamProgram,
    xs: &[Vec<usize>],
    exec: Execution,
) -> Result<Vec<MatchResult>> {
    par::map(exec, xs, |x| eval_program(prog, x))
        .into_iter()
        .enumerate()
        .map(|(i, r)| r.map_err(|e| Error::Input(format!("vector {}: {e}", i + 1))))
        .collect()
}

/// Row `i` matches iff `input` matches `states[i]` cell by cell.
pub fn eval_raw(states: &[CellWord], input: &CellWord) -> Result<MatchResult> {
    for row in states {
        if row.len() != input.len() {
            return Err(Error::Dimension {
                expected: row.len(),
                actual: input.len(),
            });
        }
    }
    Ok(MatchResult::from_bits(
        states
            .iter()
            .map(|s| word_match_unchecked(input, s))
            .collect(),
    ))
}

/// Parses one comma-separated vector per line; blank lines are skipped but
/// counted. Returns `(line number, vector)` pairs.
pub fn parse_vectors(text: &str) -> Result<Vec<(usize, Vec<usize>)>> {
    text.lines()
        .enumerate()
        .filter(|(_, l)| !l.trim().is_empty())
        .map(|(i, l)| {
            let v = l
                .split(',')
                .map(|s| {
                    s.trim().parse::<usize>().map_err(|_| Error::Format {
                        line: i + 1,
                        message: format!("invalid feature value {:?}", s.trim()),
                    })
                })
                .collect::<Result<Vec<_>>>()?;
            Ok((i + 1, v))
        })
        .collect()
}

/// One `<line#> <bits> <count> <first|->` line per result.
pub fn format_results(lines: &[usize], results: &[MatchResult]) -> String {
    lines
        .iter()
        .zip(results)
        .map(|(l, r)| format!("{l} {r}\n"))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::compiler::{compile_tree, CompileConfig, DecisionTree};

    fn w(s: &str) -> CellWord {
        s.parse().unwrap()
    }

    #[test]
    fn raw_examples() {
        let r = eval_raw(&[w("1*")], &w("1!")).unwrap();
        assert_eq!(r.row_bits, vec![true]);
        assert_eq!(eval_raw(&[w("0")], &w("1")).unwrap().match_count, 0);
        assert_eq!(
            eval_raw(&[w("***")], &w("01!")).unwrap().first_match,
            Some(0)
        );
        assert!(eval_raw(&[w("0")], &w("01")).is_err());
    }

    #[test]
    fn single_leaf_program() {
        let tree: DecisionTree = "features 1 domains 3\nleaf 0 label=all\n".parse().unwrap();
        let p = compile_tree(&tree, &CompileConfig::default()).unwrap();
        for x in 0..3 {
            let r = eval_program(&p, &[x]).unwrap();
            assert_eq!((r.match_count, r.first_match), (1, Some(0)));
        }
        let mut doubled = p.clone();
        doubled.rows.push(p.rows[0].clone());
        let r = eval_program(&doubled, &[1]).unwrap();
        assert_eq!((r.match_count, r.first_match), (2, Some(0)));
        assert!(matches!(eval_program(&p, &[3]), Err(Error::Input(_))));
    }

    #[test]
    fn vectors_and_results() {
        let v = parse_vectors("1,2\n\n3, 0\n").unwrap();
        assert_eq!(v, vec![(1, vec![1, 2]), (3, vec![3, 0])]);
        assert!(matches!(
            parse_vectors("1,x"),
            Err(Error::Format { line: 1, .. })
        ));
        let r = MatchResult::from_bits(vec![false, true]);
        assert_eq!(format_results(&[4], &[r]), "4 01 1 1\n");
        assert_eq!(MatchResult::from_bits(vec![false]).to_string(), "0 0 -");
    }
}
