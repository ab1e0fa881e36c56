//! Encodings of integer comparison families onto CAM cells.
//!
//! The crate covers the cell alphabet and match function ([`symbol`]),
//! capacity bounds and antichain machinery ([`bounds`]), constructive
//! encoders with exhaustive verification ([`encoders`]), a brute-force
//! existence oracle ([`oracle`]), a decision-tree compiler ([`compiler`])
//! and a match-line simulator ([`simulator`]).

pub mod bounds;
pub mod compiler;
pub mod encoders;
pub mod encoding;
pub mod error;
pub mod family;
pub mod oracle;
pub mod par;
pub mod simulator;
pub mod symbol;

pub use bounds::{
    approx_lower_bounds, balanced_set, count_chains, enumerate_chains, is_antichain, level_set,
    max_q, min_cells, sperner_bullet_bound, sperner_star_bound, FamilyId, ScaledRoot,
};
pub use compiler::{
    build_squared_comparator, compile_tree, CamProgram, CompileConfig, DecisionTree,
};
pub use encoders::{encode, encode_punctured};
pub use encoding::{pad, verify_encoding, Encoding, VerifyOptions, VerifyReport};
pub use error::{Error, Result};
pub use family::{BoolFunc, FamilyKind, FamilySpec, MemberKey};
pub use oracle::{exists_encoding, max_antichain, vc_dim, vc_shatter, Poset, SearchBudget};
pub use par::Execution;
pub use simulator::{eval_program, eval_raw, MatchResult};
pub use symbol::{
    cell_match, meet, sym_leq, word_leq, word_match, AlphabetCode, CellSymbol, CellWord, Scenario,
};
