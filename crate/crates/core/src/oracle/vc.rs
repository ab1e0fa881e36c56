//! Shattering by the concept class `S(ϑ) = { v : T(v, ϑ) = 1 }`, `ϑ ∈ {0,1,*}^n`,
//! over points in `{0,1,*,•}^n`.

use std::collections::HashSet;

use crate::bounds::LexWords;
use crate::error::{Error, Result};
use crate::symbol::{word_match_unchecked, AlphabetCode, CellWord};

pub const MAX_VC_DIM_N: usize = 3;
const MAX_SHATTER_N: usize = 12;

fn concepts(n: usize) -> Vec<CellWord> {
    LexWords::new(AlphabetCode::S.symbols(), n).collect()
}

/// Whether every subset of `points` is cut out by some concept.
pub fn vc_shatter(points: &[CellWord], n: usize) -> Result<bool> {
    if n == 0 || n > MAX_SHATTER_N {
        return Err(Error::Resource(format!(
            "shatter checks need 1 <= n <= {MAX_SHATTER_N}, got {n}"
        )));
    }
    for p in points {
        if p.len() != n {
            return Err(Error::Dimension {
                expected: n,
                actual: p.len(),
            });
        }
    }
    let mut distinct = points.to_vec();
    distinct.sort();
    distinct.dedup();
    if distinct.len() < points.len() {
        return Ok(false);
    }
    // at most 3^n distinct traces exist
    if distinct.len() >= 64 || (1u128 << distinct.len()) > 3u128.pow(n as u32) {
        return Ok(false);
    }
    let traces: HashSet<u64> = concepts(n)
        .iter()
        .map(|c| {
            distinct
                .iter()
                .enumerate()
                .filter(|(_, p)| word_match_unchecked(p, c))
                .fold(0u64, |m, (i, _)| m | (1 << i))
        })
        .collect();
    Ok(traces.len() as u64 == 1u64 << distinct.len())
}

/// VC dimension of the concept class on `n` cells, with a shattered witness.
pub fn vc_dim(n: usize) -> Result<(usize, Vec<CellWord>)> {
    if n == 0 || n > MAX_VC_DIM_N {
        return Err(Error::Resource(format!(
            "vc_dim is limited to 1 <= n <= {MAX_VC_DIM_N}, got {n}"
        )));
    }
    let points: Vec<CellWord> = LexWords::new(AlphabetCode::R.symbols(), n).collect();
    // concept c as a bitmask over point indices (4^3 = 64 points at most)
    let concept_masks: Vec<u64> = concepts(n)
        .iter()
        .map(|c| {
            points
                .iter()
                .enumerate()
                .filter(|(_, p)| word_match_unchecked(p, c))
                .fold(0u64, |m, (i, _)| m | (1 << i))
        })
        .collect();
    let mut best: Vec<usize> = Vec::new();
    let mut chosen = Vec::new();
    grow(&concept_masks, points.len(), 0, &mut chosen, &mut best);
    Ok((
        best.len(),
        best.iter().map(|&i| points[i].clone()).collect(),
    ))
}

fn shattered(concepts: &[u64], set: &[usize]) -> bool {
    let mask = set.iter().fold(0u64, |m, &i| m | (1 << i));
    let traces: HashSet<u64> = concepts.iter().map(|c| c & mask).collect();
    traces.len() as u64 == 1u64 << set.len()
}

// shattering is hereditary, so only shattered sets are extended
fn grow(concepts: &[u64], m: usize, from: usize, chosen: &mut Vec<usize>, best: &mut Vec<usize>) {
    if chosen.len() > best.len() {
        *best = chosen.clone();
    }
    for i in from..m {
        chosen.push(i);
        if shattered(concepts, chosen) {
            grow(concepts, m, i + 1, chosen, best);
        }
        chosen.pop();
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(s: &str) -> CellWord {
        s.parse().unwrap()
    }

    #[test]
    fn dimensions() {
        assert_eq!(vc_dim(1).unwrap().0, 1);
        assert_eq!(vc_dim(2).unwrap().0, 2);
        assert_eq!(vc_dim(3).unwrap().0, 3);
        assert!(vc_dim(4).is_err());
    }

    #[test]
    fn shatter_examples() {
        assert!(!vc_shatter(&[w("00"), w("0!")], 2).unwrap());
        assert!(vc_shatter(&[w("0*"), w("*0")], 2).unwrap());
        assert!(vc_shatter(&[], 1).unwrap());
        assert!(vc_shatter(&[w("0")], 2).is_err());
        let (_, witness) = vc_dim(2).unwrap();
        assert!(vc_shatter(&witness, 2).unwrap());
    }
}
