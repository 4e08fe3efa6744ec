pub mod acceptance;
pub mod arith;
pub mod cli;
pub mod congruence;
pub mod error;
pub mod pointcount;
pub mod qseries;
pub mod sequences;

pub use error::{Error, Result};
