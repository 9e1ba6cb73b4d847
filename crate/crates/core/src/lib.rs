pub mod catalog;
pub mod cli;
pub mod error;
pub mod forcing;
pub mod generate;
pub mod graph;
pub mod io;
pub mod matching;
pub mod oracle;
pub mod pmc;
pub mod reduction;
pub mod twosat;

pub use error::{Error, Result};
