//! Comparator decision trees over integer features.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Op {
    Eq,
    Ne,
    Ge,
    Le,
}

impl Op {
    pub fn holds(self, x: usize, t: usize) -> bool {
        match self {
            Op::Eq => x == t,
            Op::Ne => x != t,
            Op::Ge => x >= t,
            Op::Le => x <= t,
        }
    }
}

impl fmt::Display for Op {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Op::Eq => "EQ",
            Op::Ne => "NE",
            Op::Ge => "GE",
            Op::Le => "LE",
        })
    }
}

impl FromStr for Op {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "EQ" => Ok(Op::Eq),
            "NE" => Ok(Op::Ne),
            "GE" => Ok(Op::Ge),
            "LE" => Ok(Op::Le),
            _ => Err(Error::Parse {
                position: 0,
                message: format!("unknown comparator {s:?}"),
            }),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum NodeKind {
    Test {
        feature: usize,
        op: Op,
        t: usize,
        on_false: usize,
        on_true: usize,
    },
    Leaf {
        label: String,
    },
}

/// A node; `on_false`/`on_true` refer to node ids.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TreeNode {
    pub id: usize,
    pub kind: NodeKind,
}

/// The first node is the root. Rows of a compiled program follow the
/// order in which leaves are listed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DecisionTree {
    pub domains: Vec<usize>,
    pub nodes: Vec<TreeNode>,
}

impl DecisionTree {
    pub fn new(domains: Vec<usize>, nodes: Vec<TreeNode>) -> Result<Self> {
        let tree = DecisionTree { domains, nodes };
        tree.validate()?;
        Ok(tree)
    }

    pub fn feature_count(&self) -> usize {
        self.domains.len()
    }

    fn index_of(&self) -> HashMap<usize, usize> {
        self.nodes
            .iter()
            .enumerate()
            .map(|(i, n)| (n.id, i))
            .collect()
    }

    /// Checks references, thresholds, and that the nodes form one tree.
    pub fn validate(&self) -> Result<()> {
        let bad = |m: String| Error::Compile(m);
        if self.domains.is_empty() {
            return Err(bad("tree needs at least one feature".into()));
        }
        if let Some(q) = self.domains.iter().find(|&&q| q < 2) {
            return Err(bad(format!("feature domain {q} is below 2")));
        }
        if self.nodes.is_empty() {
            return Err(bad("tree has no nodes".into()));
        }
        let index = self.index_of();
        if index.len() != self.nodes.len() {
            return Err(bad("duplicate node id".into()));
        }
        let mut parents = vec![0usize; self.nodes.len()];
        for node in &self.nodes {
            if let NodeKind::Test {
                feature,
                t,
                on_false,
                on_true,
                ..
            } = node.kind
            {
                let q = *self.domains.get(feature).ok_or_else(|| {
                    bad(format!("node {}: feature {feature} out of range", node.id))
                })?;
                if t >= q {
                    return Err(bad(format!(
                        "node {}: threshold {t} outside domain [0,{q})",
                        node.id
                    )));
                }
                for child in [on_false, on_true] {
                    let c = *index
                        .get(&child)
                        .ok_or_else(|| bad(format!("node {}: unknown child {child}", node.id)))?;
                    parents[c] += 1;
                }
            }
        }
        if parents[0] != 0 {
            return Err(bad("root has a parent".into()));
        }
        if let Some(i) = (1..self.nodes.len()).find(|&i| parents[i] != 1) {
            return Err(bad(format!(
                "node {} has {} parents",
                self.nodes[i].id, parents[i]
            )));
        }
        // single parents everywhere; reachability rules out detached cycles
        let mut seen = vec![false; self.nodes.len()];
        let mut stack = vec![0usize];
        while let Some(i) = stack.pop() {
            if std::mem::replace(&mut seen[i], true) {
                continue;
            }
            if let NodeKind::Test {
                on_false, on_true, ..
            } = self.nodes[i].kind
            {
                stack.push(index[&on_false]);
                stack.push(index[&on_true]);
            }
        }
        if let Some(i) = seen.iter().position(|&s| !s) {
            return Err(bad(format!("node {} is unreachable", self.nodes[i].id)));
        }
        Ok(())
    }

    /// Indices (into `nodes`) of the leaves, in listing order.
    pub fn leaves(&self) -> Vec<usize> {
        self.nodes
            .iter()
            .enumerate()
            .filter(|(_, n)| matches!(n.kind, NodeKind::Leaf { .. }))
            .map(|(i, _)| i)
            .collect()
    }

    /// Tests on the path from the root to each leaf, as
    /// `(feature, op, t, outcome)`, listed root first.
    pub fn paths(&self) -> Vec<Vec<(usize, Op, usize, bool)>> {
        let index = self.index_of();
        let mut parent: Vec<Option<(usize, bool)>> = vec![None; self.nodes.len()];
        for (i, node) in self.nodes.iter().enumerate() {
            if let NodeKind::Test {
                on_false, on_true, ..
            } = node.kind
            {
                parent[index[&on_false]] = Some((i, false));
                parent[index[&on_true]] = Some((i, true));
            }
        }
        self.leaves()
            .into_iter()
            .map(|leaf| {
                let mut path = Vec::new();
                let mut cur = leaf;
                while let Some((p, outcome)) = parent[cur] {
                    if let NodeKind::Test { feature, op, t, .. } = self.nodes[p].kind {
                        path.push((feature, op, t, outcome));
                    }
                    cur = p;
                }
                path.reverse();
                path
            })
            .collect()
    }

    /// Position (among leaves) of the leaf reached by `x`.
    pub fn eval(&self, x: &[usize]) -> Result<usize> {
        self.check_input(x)?;
        let index = self.index_of();
        let leaves = self.leaves();
        let mut cur = 0;
        loop {
            match self.nodes[cur].kind {
                NodeKind::Leaf { .. } => {
                    return Ok(leaves.iter().position(|&l| l == cur).expect("leaf"));
                }
                NodeKind::Test {
                    feature,
                    op,
                    t,
                    on_false,
                    on_true,
                } => {
                    let next = if op.holds(x[feature], t) {
                        on_true
                    } else {
                        on_false
                    };
                    cur = index[&next];
                }
            }
        }
    }

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
}

impl fmt::Display for DecisionTree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let domains: Vec<String> = self.domains.iter().map(|q| q.to_string()).collect();
        writeln!(
            f,
            "features {} domains {}",
            self.domains.len(),
            domains.join(",")
        )?;
        for node in &self.nodes {
            match &node.kind {
                NodeKind::Test {
                    feature,
                    op,
                    t,
                    on_false,
                    on_true,
                } => writeln!(
                    f,
                    "node {} feature={feature} op={op} t={t} false={on_false} true={on_true}",
                    node.id
                )?,
                NodeKind::Leaf { label } => writeln!(f, "leaf {} label={label}", node.id)?,
            }
        }
        Ok(())
    }
}

pub(crate) fn format_err(line: usize, message: impl Into<String>) -> Error {
    Error::Format {
        line,
        message: message.into(),
    }
}

/// `key=value` fields of one record.
pub(crate) fn fields<'a>(line: usize, tokens: &[&'a str]) -> Result<HashMap<&'a str, &'a str>> {
    let mut map = HashMap::new();
    for tok in tokens {
        let (k, v) = tok
            .split_once('=')
            .ok_or_else(|| format_err(line, format!("expected key=value, got {tok:?}")))?;
        if map.insert(k, v).is_some() {
            return Err(format_err(line, format!("duplicate field {k}")));
        }
    }
    Ok(map)
}

pub(crate) fn take<'a>(line: usize, map: &HashMap<&str, &'a str>, key: &str) -> Result<&'a str> {
    map.get(key)
        .copied()
        .ok_or_else(|| format_err(line, format!("missing field {key}")))
}

pub(crate) fn take_usize(line: usize, map: &HashMap<&str, &str>, key: &str) -> Result<usize> {
    let v = take(line, map, key)?;
    v.parse().map_err(|_| {
        format_err(
            line,
            format!("field {key} is not a non-negative integer: {v:?}"),
        )
    })
}

pub(crate) fn parse_list(line: usize, s: &str) -> Result<Vec<usize>> {
    s.split(',')
        .map(|v| {
            v.trim()
                .parse()
                .map_err(|_| format_err(line, format!("invalid integer {v:?}")))
        })
        .collect()
}

impl FromStr for DecisionTree {
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
        let h: Vec<&str> = header.split_whitespace().collect();
        if h.len() != 4 || h[0] != "features" || h[2] != "domains" {
            return Err(format_err(
                hl,
                "header must be `features <l> domains <q0,...>`",
            ));
        }
        let count: usize = h[1]
            .parse()
            .map_err(|_| format_err(hl, "feature count is not an integer"))?;
        let domains = parse_list(hl, h[3])?;
        if domains.len() != count {
            return Err(format_err(
                hl,
                format!("{count} features but {} domains", domains.len()),
            ));
        }
        let mut nodes = Vec::new();
        for (ln, line) in lines {
            let tokens: Vec<&str> = line.split_whitespace().collect();
            if tokens.len() < 2 {
                return Err(format_err(ln, "record needs a kind and an id"));
            }
            let id: usize = tokens[1]
                .parse()
                .map_err(|_| format_err(ln, format!("invalid node id {:?}", tokens[1])))?;
            let map = fields(ln, &tokens[2..])?;
            let kind = match tokens[0] {
                "node" => {
                    let op = take(ln, &map, "op")?
                        .parse::<Op>()
                        .map_err(|e| format_err(ln, e.to_string()))?;
                    NodeKind::Test {
                        feature: take_usize(ln, &map, "feature")?,
                        op,
                        t: take_usize(ln, &map, "t")?,
                        on_false: take_usize(ln, &map, "false")?,
                        on_true: take_usize(ln, &map, "true")?,
                    }
                }
                "leaf" => NodeKind::Leaf {
                    label: take(ln, &map, "label")?.to_string(),
                },
                other => return Err(format_err(ln, format!("unknown record {other:?}"))),
            };
            nodes.push(TreeNode { id, kind });
        }
        DecisionTree::new(domains, nodes)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const TWO_LEVEL: &str = "features 2 domains 4,4
node 0 feature=0 op=LE t=1 false=1 true=2
leaf 1 label=big
node 2 feature=1 op=EQ t=3 false=3 true=4
leaf 3 label=other
leaf 4 label=three
";

    #[test]
    fn round_trip_and_eval() {
        let tree: DecisionTree = TWO_LEVEL.parse().unwrap();
        assert_eq!(tree.to_string(), TWO_LEVEL);
        assert_eq!(tree.leaves().len(), 3);
        assert_eq!(tree.eval(&[3, 0]).unwrap(), 0);
        assert_eq!(tree.eval(&[1, 3]).unwrap(), 2);
        assert_eq!(tree.eval(&[0, 2]).unwrap(), 1);
        assert!(matches!(tree.eval(&[4, 0]), Err(Error::Input(_))));
        let paths = tree.paths();
        assert_eq!(paths[2], vec![(0, Op::Le, 1, true), (1, Op::Eq, 3, true)]);
    }

    #[test]
    fn rejects_malformed_trees() {
        let cyclic = "features 1 domains 4\nnode 0 feature=0 op=GE t=1 false=1 true=2\nleaf 1 label=a\nnode 2 feature=0 op=GE t=2 false=2 true=1\n";
        assert!(cyclic.parse::<DecisionTree>().is_err());
        let bad_t = "features 1 domains 4\nnode 0 feature=0 op=GE t=4 false=1 true=2\nleaf 1 label=a\nleaf 2 label=b\n";
        assert!(matches!(
            bad_t.parse::<DecisionTree>(),
            Err(Error::Compile(_))
        ));
        let missing =
            "features 1 domains 4\nnode 0 feature=0 op=GE t=1 false=1 true=9\nleaf 1 label=a\n";
        assert!(missing.parse::<DecisionTree>().is_err());
        let bad_field = "features 1 domains 4\nnode 0 feature=0 op=XX t=1 false=1 true=2\n";
        assert!(matches!(
            bad_field.parse::<DecisionTree>(),
            Err(Error::Format { line: 2, .. })
        ));
    }

    #[test]
    fn single_leaf() {
        let tree: DecisionTree = "features 1 domains 3\nleaf 7 label=only\n".parse().unwrap();
        assert_eq!(tree.paths(), vec![vec![]]);
        assert_eq!(tree.eval(&[2]).unwrap(), 0);
    }
}
