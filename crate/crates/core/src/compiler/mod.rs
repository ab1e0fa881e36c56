//! Decision trees to CAM programs.

mod compile;
pub mod corpus;
mod program;
mod squaring;
mod tree;

pub use compile::{compile_tree, CompileConfig};
pub use program::{Block, CamProgram, Column, Digit, Grid, Group, Row, Unit};
pub use squaring::{build_squared_comparator, SquaredComparator};
pub use tree::{DecisionTree, NodeKind, Op, TreeNode};
