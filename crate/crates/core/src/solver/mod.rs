//! Weak saturation numbers: exhaustive search, closed forms and constructions.

pub mod construct;
pub mod exact;
pub mod predict;

pub use construct::{construct_witness, ConstructError, Family};
pub use exact::{wsat_exact, Budget, Optimality, WsatCertificate};
pub use predict::{predict, Condition, HostDescriptor, PatternDescriptor, Prediction};
