//! Brute-force and invariant checks used to validate the symbolic paths.

pub mod shift;
pub mod terms;
pub mod trees;
pub mod window;

pub use shift::{brute_shift_equiv, shift_bound, shift_matches};
pub use terms::{
    enumerate_raw_terms, enumerate_terms, invariant_signature, ChainStep, InvariantSignature,
    MAX_TERM_SIZE,
};
pub use trees::enumerate_trees;
pub use window::window_eval;
