//! Groups, forms, the action on `g × E`, sampling and stabilizers.

pub mod group;
pub mod point;
pub mod sample;
pub mod stabilizer;

pub use group::{alpha, beta, standard_form, twist, Family, Group, Kind, Symmetry};
pub use point::{act, form_pairing, in_group, EnhancedPoint, MvwElement, PointData, Sign};
pub use sample::{cayley, sample, sample_twisted};
pub use stabilizer::{cyclic_span, lie_stabilizer_dim, orbit_dim, CyclicSpan};
