//! Exhaustive search for an `n`-cell encoding of a family.
//!
//! Only the input map is enumerated, one cell column at a time: a column
//! holds the symbols `u_j(0), ..., u_j(q−1)`. With the input map fixed, each
//! member's state word is found independently by a product search over the
//! per-cell candidates.

use std::sync::atomic::{AtomicBool, AtomicU64, Ordering};
use std::time::{Duration, Instant};

use crate::encoding::Encoding;
use crate::error::{Error, Result};
use crate::family::FamilySpec;
use crate::par::{self, Execution};
use crate::symbol::{cell_match, CellSymbol, CellWord, Scenario};

/// Largest number of distinct cell columns the search will index.
pub const MAX_COLUMNS: usize = 1 << 20;

#[derive(Debug, Clone, Copy)]
pub struct SearchBudget {
    /// Input maps that may be examined; a larger search space is refused up front.
    pub max_input_maps: u64,
    pub time_cap: Option<Duration>,
    /// Quotient by cell permutations and per-cell `0 ↔ 1` relabeling.
    pub symmetry_reduction: bool,
    pub execution: Execution,
}

impl Default for SearchBudget {
    fn default() -> Self {
        SearchBudget {
            max_input_maps: 200_000_000,
            time_cap: None,
            symmetry_reduction: true,
            execution: Execution::Parallel,
        }
    }
}

struct Problem {
    q: usize,
    n: usize,
    in_symbols: &'static [CellSymbol],
    st_symbols: &'static [CellSymbol],
    /// `masks[c * st + s]`: inputs `x` whose column-`c` symbol matches state symbol `s`.
    masks: Vec<u64>,
    /// Distinct member truth tables.
    tables: Vec<u64>,
}

impl Problem {
    fn symbol_at(&self, col: usize, x: usize) -> CellSymbol {
        let b = self.in_symbols.len();
        let digit = (col / b.pow((self.q - 1 - x) as u32)) % b;
        self.in_symbols[digit]
    }

    fn mask(&self, col: usize, s: usize) -> u64 {
        self.masks[col * self.st_symbols.len() + s]
    }

    /// State symbols, one per cell, realizing `table` exactly.
    fn state_for(&self, cols: &[usize], table: u64) -> Option<Vec<usize>> {
        let mut choice = Vec::with_capacity(self.n);
        let full = if self.q == 64 {
            u64::MAX
        } else {
            (1u64 << self.q) - 1
        };
        self.state_dfs(cols, table, full, &mut choice)
            .then_some(choice)
    }

    fn state_dfs(&self, cols: &[usize], table: u64, acc: u64, choice: &mut Vec<usize>) -> bool {
        let j = choice.len();
        if j == cols.len() {
            return acc == table;
        }
        for s in 0..self.st_symbols.len() {
            let m = self.mask(cols[j], s);
            if m & table != table {
                continue;
            }
            choice.push(s);
            if self.state_dfs(cols, table, acc & m, choice) {
                return true;
            }
            choice.pop();
        }
        false
    }

    fn admits(&self, cols: &[usize]) -> bool {
        self.tables
            .iter()
            .all(|&t| self.state_for(cols, t).is_some())
    }
}

fn binomial_u128(n: u128, k: u128) -> u128 {
    let k = k.min(n.saturating_sub(k));
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc.saturating_mul(n - i) / (i + 1);
    }
    acc
}

/// Returns a witness encoding with `n` cells if one exists.
///
/// `Err(BudgetExceeded)` means the search did not finish; it never stands
/// for nonexistence.
pub fn exists_encoding(
    spec: &FamilySpec,
    scenario: Scenario,
    n: usize,
    budget: SearchBudget,
) -> Result<Option<Encoding>> {
    let q = spec.q;
    if n == 0 {
        return Err(Error::Domain("number of cells must be at least 1".into()));
    }
    if q > 64 {
        return Err(Error::Resource("search is limited to q <= 64".into()));
    }
    let in_symbols = scenario.input.symbols();
    let st_symbols = scenario.state.symbols();
    let columns = (in_symbols.len() as u128)
        .checked_pow(q as u32)
        .filter(|&c| c <= MAX_COLUMNS as u128)
        .ok_or_else(|| {
            Error::Resource(format!(
                "{}^{q} cell columns exceed the limit of {MAX_COLUMNS}",
                in_symbols.len()
            ))
        })? as usize;

    let members = spec.members()?;
    let member_tables: Vec<u64> = members
        .iter()
        .map(|k| spec.table(k).to_mask().expect("q <= 64"))
        .collect();
    let mut tables = member_tables.clone();
    tables.sort_unstable();
    tables.dedup();

    let mut problem = Problem {
        q,
        n,
        in_symbols,
        st_symbols,
        masks: Vec::new(),
        tables,
    };
    let mut masks = Vec::with_capacity(columns * st_symbols.len());
    for col in 0..columns {
        for &s in st_symbols {
            let m = (0..q)
                .filter(|&x| cell_match(problem.symbol_at(col, x), s))
                .fold(0u64, |m, x| m | (1 << x));
            masks.push(m);
        }
    }
    problem.masks = masks;

    let candidates: Vec<usize> = if budget.symmetry_reduction {
        let b = in_symbols.len();
        (0..columns)
            .filter(|&col| {
                let flipped = (0..q).fold(0usize, |acc, x| {
                    let s = problem.symbol_at(col, x).flip();
                    acc * b
                        + in_symbols
                            .iter()
                            .position(|&t| t == s)
                            .expect("closed under flip")
                });
                col <= flipped
            })
            .collect()
    } else {
        (0..columns).collect()
    };
    let m = candidates.len() as u128;
    let total = if budget.symmetry_reduction {
        binomial_u128(m + n as u128 - 1, n as u128)
    } else {
        m.saturating_pow(n as u32)
    };
    if total > budget.max_input_maps as u128 {
        return Err(Error::BudgetExceeded { explored: 0, total });
    }

    let explored = AtomicU64::new(0);
    let stop = AtomicBool::new(false);
    let start = Instant::now();
    let problem = &problem;
    let candidates = &candidates;
    let found = par::find_map_first(budget.execution, 0..candidates.len(), |first| {
        let mut cols = vec![candidates[first]];
        let mut local = 0u64;
        let ctx = Walk {
            problem,
            candidates,
            symmetric: budget.symmetry_reduction,
            stop: &stop,
            explored: &explored,
            deadline: budget.time_cap.map(|d| (start, d)),
        };
        let hit = ctx.walk(first, &mut cols, &mut local);
        explored.fetch_add(local, Ordering::Relaxed);
        ctx.check_deadline();
        hit
    });
    if stop.load(Ordering::Relaxed) {
        return Err(Error::BudgetExceeded {
            explored: explored.load(Ordering::Relaxed),
            total,
        });
    }
    let Some(cols) = found else {
        return Ok(None);
    };

    let inputs: Vec<CellWord> = (0..q)
        .map(|x| CellWord::new(cols.iter().map(|&c| problem.symbol_at(c, x)).collect()))
        .collect();
    let states = members
        .into_iter()
        .zip(member_tables)
        .map(|(key, table)| {
            let choice = problem.state_for(&cols, table).expect("admitted input map");
            let word = CellWord::new(choice.iter().map(|&s| st_symbols[s]).collect());
            (key, word)
        })
        .collect();
    Encoding::new(spec.kind.clone(), scenario, inputs, states).map(Some)
}

struct Walk<'a> {
    problem: &'a Problem,
    candidates: &'a [usize],
    symmetric: bool,
    stop: &'a AtomicBool,
    explored: &'a AtomicU64,
    deadline: Option<(Instant, Duration)>,
}

impl Walk<'_> {
    /// Raises the stop flag once the time cap has passed.
    fn check_deadline(&self) -> bool {
        if let Some((start, cap)) = self.deadline {
            if start.elapsed() > cap {
                self.stop.store(true, Ordering::Relaxed);
            }
        }
        self.stop.load(Ordering::Relaxed)
    }

    /// Extends `cols` (last candidate index `last`) to `n` columns.
    fn walk(&self, last: usize, cols: &mut Vec<usize>, local: &mut u64) -> Option<Vec<usize>> {
        if self.stop.load(Ordering::Relaxed) {
            return None;
        }
        if cols.len() == self.problem.n {
            *local += 1;
            if (*local).is_multiple_of(4096) {
                self.explored.fetch_add(*local, Ordering::Relaxed);
                *local = 0;
                if self.check_deadline() {
                    return None;
                }
            }
            return self.problem.admits(cols).then(|| cols.clone());
        }
        let from = if self.symmetric { last } else { 0 };
        for i in from..self.candidates.len() {
            cols.push(self.candidates[i]);
            let hit = self.walk(i, cols, local);
            cols.pop();
            if hit.is_some() {
                return hit;
            }
        }
        None
    }
}
