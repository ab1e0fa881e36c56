//! Seeded random decision trees for end-to-end testing.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::tree::{DecisionTree, NodeKind, Op, TreeNode};

#[derive(Debug, Clone, Copy)]
pub struct CorpusParams {
    pub max_features: usize,
    pub max_domain: usize,
    pub max_depth: usize,
    /// Chance that a node above the depth limit is a test.
    pub split_probability: f64,
}

impl Default for CorpusParams {
    fn default() -> Self {
        CorpusParams {
            max_features: 3,
            max_domain: 8,
            max_depth: 4,
            split_probability: 0.75,
        }
    }
}

const OPS: [Op; 4] = [Op::Eq, Op::Ne, Op::Ge, Op::Le];

pub fn random_tree<R: Rng>(rng: &mut R, params: &CorpusParams) -> DecisionTree {
    let l = rng.gen_range(1..=params.max_features.max(1));
    let domains: Vec<usize> = (0..l)
        .map(|_| rng.gen_range(2..=params.max_domain.max(2)))
        .collect();
    let mut nodes = Vec::new();
    grow(rng, params, &domains, 0, &mut nodes);
    DecisionTree::new(domains, nodes).expect("generated trees are well formed")
}

/// Appends the subtree in preorder and returns its root id.
fn grow<R: Rng>(
    rng: &mut R,
    params: &CorpusParams,
    domains: &[usize],
    depth: usize,
    nodes: &mut Vec<TreeNode>,
) -> usize {
    let id = nodes.len();
    let split = depth < params.max_depth && (depth == 0 || rng.gen_bool(params.split_probability));
    if !split {
        nodes.push(TreeNode {
            id,
            kind: NodeKind::Leaf {
                label: format!("leaf{id}"),
            },
        });
        return id;
    }
    let feature = rng.gen_range(0..domains.len());
    let op = OPS[rng.gen_range(0..OPS.len())];
    let t = rng.gen_range(0..domains[feature]);
    nodes.push(TreeNode {
        id,
        kind: NodeKind::Leaf {
            label: String::new(),
        },
    });
    let on_false = grow(rng, params, domains, depth + 1, nodes);
    let on_true = grow(rng, params, domains, depth + 1, nodes);
    nodes[id].kind = NodeKind::Test {
        feature,
        op,
        t,
        on_false,
        on_true,
    };
    id
}

/// `count` trees from one seed; the same seed gives the same corpus.
pub fn corpus(seed: u64, count: usize, params: &CorpusParams) -> Vec<DecisionTree> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count).map(|_| random_tree(&mut rng, params)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn deterministic_and_bounded() {
        let p = CorpusParams::default();
        let a = corpus(7, 20, &p);
        let b = corpus(7, 20, &p);
        assert_eq!(a, b);
        for t in &a {
            assert!(t.feature_count() <= 3);
            assert!(t.domains.iter().all(|&q| (2..=8).contains(&q)));
            assert!(t.paths().iter().all(|p| p.len() <= 4));
        }
    }
}
