pub mod cli;
pub mod dynamics;
pub mod error;
pub mod metric;
pub mod models;
pub mod numeric;
pub mod stokes;
pub mod weyl;

pub use error::{Error, Result};
