//! Weak saturation numbers, H-bootstrap percolation and saturating structures.

pub mod bitset;
pub mod clock;
pub mod descriptor;
pub mod embed;
pub mod experiments;
pub mod graph;
pub mod pattern;
pub mod percolation;
pub mod seed;
pub mod solver;
pub mod star;
pub mod transference;

pub use bitset::BitSet;
pub use graph::{Graph, GraphError, Side};
pub use pattern::{Pattern, PatternError};
pub use percolation::Mode;
pub use seed::Seed;
