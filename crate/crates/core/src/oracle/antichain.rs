//! Exact maximum antichains of the word posets `(Σ^n, ⪯)`.
//!
//! By Dilworth's theorem the largest antichain has size `N − |M|`, where
//! `M` is a maximum matching in the bipartite graph of strict comparabilities;
//! König's theorem turns a maximum matching into a witness.

use std::collections::VecDeque;

use crate::bounds::LexWords;
use crate::error::{Error, Result};
use crate::par::{self, Execution};
use crate::symbol::{word_leq_unchecked, AlphabetCode, CellWord};

/// Word poset over `{0,1,*}` (S) or `{0,1,*,•}` (R).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Poset {
    S,
    R,
}

pub const MAX_POSET_ELEMENTS: usize = 4096;

impl Poset {
    fn alphabet(self) -> AlphabetCode {
        match self {
            Poset::S => AlphabetCode::S,
            Poset::R => AlphabetCode::R,
        }
    }
}

/// Size and one witness of a largest antichain in the `n`-letter word poset.
pub fn max_antichain(poset: Poset, n: usize) -> Result<(usize, Vec<CellWord>)> {
    max_antichain_with(poset, n, Execution::Parallel)
}

pub fn max_antichain_with(
    poset: Poset,
    n: usize,
    exec: Execution,
) -> Result<(usize, Vec<CellWord>)> {
    if n == 0 {
        return Err(Error::Domain("word length must be at least 1".into()));
    }
    let symbols = poset.alphabet().symbols();
    let size = symbols
        .len()
        .checked_pow(n as u32)
        .filter(|&s| s <= MAX_POSET_ELEMENTS)
        .ok_or_else(|| {
            Error::Resource(format!(
                "poset over {} symbols with n = {n} exceeds {MAX_POSET_ELEMENTS} elements",
                symbols.len()
            ))
        })?;
    let words: Vec<CellWord> = LexWords::new(symbols, n).collect();
    debug_assert_eq!(words.len(), size);
    let words_ref = &words;
    let adj: Vec<Vec<u32>> = par::map_range(exec, 0..size, |a| {
        (0..size)
            .filter(|&b| a != b && word_leq_unchecked(&words_ref[a], &words_ref[b]))
            .map(|b| b as u32)
            .collect()
    });
    let (match_l, match_r) = hopcroft_karp(&adj, size);

    // König: alternating reachability from unmatched left vertices
    let mut seen_l = vec![false; size];
    let mut seen_r = vec![false; size];
    let mut queue: VecDeque<usize> = (0..size).filter(|&a| match_l[a].is_none()).collect();
    for &a in &queue {
        seen_l[a] = true;
    }
    while let Some(a) = queue.pop_front() {
        for &b in &adj[a] {
            let b = b as usize;
            if !seen_r[b] {
                seen_r[b] = true;
                if let Some(a2) = match_r[b] {
                    let a2 = a2 as usize;
                    if !seen_l[a2] {
                        seen_l[a2] = true;
                        queue.push_back(a2);
                    }
                }
            }
        }
    }
    let witness: Vec<CellWord> = (0..size)
        .filter(|&x| seen_l[x] && !seen_r[x])
        .map(|x| words[x].clone())
        .collect();
    let matched = match_l.iter().filter(|m| m.is_some()).count();
    debug_assert_eq!(witness.len(), size - matched);
    Ok((size - matched, witness))
}

const FREE: u32 = u32::MAX;

fn hopcroft_karp(adj: &[Vec<u32>], right: usize) -> (Vec<Option<u32>>, Vec<Option<u32>>) {
    let left = adj.len();
    let mut ml = vec![FREE; left];
    let mut mr = vec![FREE; right];
    let mut dist = vec![0u32; left];
    loop {
        // layered BFS from free left vertices
        let mut queue = VecDeque::new();
        for a in 0..left {
            if ml[a] == FREE {
                dist[a] = 0;
                queue.push_back(a);
            } else {
                dist[a] = u32::MAX;
            }
        }
        let mut found = false;
        while let Some(a) = queue.pop_front() {
            for &b in &adj[a] {
                let a2 = mr[b as usize];
                if a2 == FREE {
                    found = true;
                } else if dist[a2 as usize] == u32::MAX {
                    dist[a2 as usize] = dist[a] + 1;
                    queue.push_back(a2 as usize);
                }
            }
        }
        if !found {
            break;
        }
        for a in 0..left {
            if ml[a] == FREE {
                augment(a, adj, &mut ml, &mut mr, &mut dist);
            }
        }
    }
    let opt = |v: Vec<u32>| v.into_iter().map(|m| (m != FREE).then_some(m)).collect();
    (opt(ml), opt(mr))
}

fn augment(a: usize, adj: &[Vec<u32>], ml: &mut [u32], mr: &mut [u32], dist: &mut [u32]) -> bool {
    for &b in &adj[a] {
        let a2 = mr[b as usize];
        let ok = if a2 == FREE {
            true
        } else if dist[a2 as usize] == dist[a] + 1 {
            augment(a2 as usize, adj, ml, mr, dist)
        } else {
            false
        };
        if ok {
            ml[a] = b;
            mr[b as usize] = a as u32;
            return true;
        }
    }
    dist[a] = u32::MAX;
    false
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bounds::is_antichain;

    /// Largest antichain by trying every subset.
    fn brute_force(poset: Poset, n: usize) -> usize {
        let words: Vec<CellWord> = LexWords::new(poset.alphabet().symbols(), n).collect();
        let m = words.len();
        let mut best = 0;
        for mask in 0u32..(1 << m) {
            let k = mask.count_ones() as usize;
            if k <= best {
                continue;
            }
            let chosen: Vec<CellWord> = (0..m)
                .filter(|i| mask >> i & 1 == 1)
                .map(|i| words[i].clone())
                .collect();
            if is_antichain(&chosen).unwrap() {
                best = k;
            }
        }
        best
    }

    #[test]
    fn small_values() {
        assert_eq!(max_antichain(Poset::S, 1).unwrap().0, 2);
        assert_eq!(max_antichain(Poset::S, 2).unwrap().0, 4);
        assert_eq!(max_antichain(Poset::R, 2).unwrap().0, 6);
        assert_eq!(max_antichain(Poset::S, 3).unwrap().0, 12);
    }

    #[test]
    fn agrees_with_brute_force() {
        for (p, n) in [(Poset::S, 1), (Poset::S, 2), (Poset::R, 1), (Poset::R, 2)] {
            assert_eq!(
                max_antichain(p, n).unwrap().0,
                brute_force(p, n),
                "{p:?} n={n}"
            );
        }
    }

    #[test]
    fn witness_is_an_antichain() {
        for (p, n) in [(Poset::S, 3), (Poset::R, 3)] {
            let (size, w) = max_antichain(p, n).unwrap();
            assert_eq!(w.len(), size);
            assert!(is_antichain(&w).unwrap());
        }
    }

    #[test]
    fn cap_is_enforced() {
        assert!(matches!(
            max_antichain(Poset::R, 7),
            Err(Error::Resource(_))
        ));
        assert!(matches!(
            max_antichain(Poset::S, 8),
            Err(Error::Resource(_))
        ));
    }
}
