//! Dynamic programs over contraction sequences of bounded twin-width.

pub mod dp;
pub mod error;
pub mod extended;
pub mod fixtures;
pub mod logic;
pub mod oracle;
mod partial;
pub mod pds;
pub mod profile;
pub mod pvc;
pub mod seqtool;
pub(crate) mod sets;
pub mod trigraph;

pub use dp::{Engine, SolveOptions};
pub use error::{Error, Result};
pub use partial::PartialResult;
