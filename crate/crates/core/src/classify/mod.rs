//! Closedness decisions, stabilizers and descendants.

pub mod closed;
pub mod descend;
pub mod stabilizer;

pub use closed::{is_closed, ClassificationReport};
pub use descend::{descend, mvw_stabilizer_witness, DescendantReport};
pub use stabilizer::{predicted_stabilizer, seed_stabilizer, Factor};
