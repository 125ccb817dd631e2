pub mod constructions;
pub mod error;
pub mod exact_arith;
pub mod number_theory;
pub mod search_3a2b;
pub mod search_equilateral;
pub mod tile_models;
pub mod verdict;

pub use error::{Error, Result};
