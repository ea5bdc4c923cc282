pub mod algebra;
pub mod error;

pub use error::{Error, Result};
pub mod qkernel;
pub mod special;
pub mod operators;
pub mod identities;
