//! Canonical closed points: seeds, their assembly, spectral decomposition of
//! arbitrary points and representatives of nilpotent fibers.

pub mod build;
pub mod decompose;
pub mod represent;
pub mod seed;

pub use build::{build_closed, build_nilpotent};
pub use decompose::{
    centralizer_decomposition, semisimple_split, CentralizerFactors, GlPart, SemisimpleSplit,
};
pub use represent::{
    eta_signature, extract_jet_order, representative_from_invariants, seed_signature, Signature,
};
pub use seed::{ClosedSeed, EigenBlock, NilpotentSeed};
