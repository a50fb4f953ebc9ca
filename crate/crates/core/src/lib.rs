pub mod density;
pub mod error;
pub mod fock;
pub mod harness;
pub mod kaehler;
pub mod liealg;
pub mod report;
pub mod realization;
pub mod ring;
pub mod scalar;

pub use error::{Error, Result};
pub use scalar::Q;
