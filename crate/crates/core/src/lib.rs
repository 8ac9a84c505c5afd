pub mod canonical;
pub mod classify;
pub mod error;
pub mod invariants;
pub mod linalg;
pub mod oracle;
pub mod rep;

pub use error::{Error, Result};
