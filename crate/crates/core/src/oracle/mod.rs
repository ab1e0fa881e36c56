//! Brute-force checks of the capacity limits at small sizes.

mod antichain;
mod search;
mod vc;

pub use antichain::{max_antichain, max_antichain_with, Poset, MAX_POSET_ELEMENTS};
pub use search::{exists_encoding, SearchBudget, MAX_COLUMNS};
pub use vc::{vc_dim, vc_shatter, MAX_VC_DIM_N};
