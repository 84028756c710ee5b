//! Transferring weakly saturated graphs from K_n to a host G.
//!
//! Given a family of weakly (K_k, H)-saturated graphs F¹_k with a bounded
//! core, the host is partitioned around a clique K in its first half and a
//! common neighbourhood Z in its second half. Nine checkable conditions on
//! that partition guarantee that a subgraph F with |E(F¹_n)| edges restores
//! all of G in ten steps.

use thiserror::Error;

use crate::graph::GraphError;

pub mod family;
pub mod partition;
pub mod properties;
pub mod restoration;

pub use family::{verify_member, CliqueFamily, CoreAttachFamily, SaturatedFamily, StarFamily};
pub use partition::{build_partition, compute_uv, is_h_completable, Attachment, HCopy, TransferencePartition};
pub use properties::{check_properties, ConditionResult, PropertyReport};
pub use restoration::{build_initial, run_restoration, EdgeCountReport, Restoration};

#[derive(Debug, Error)]
pub enum TransferError {
    #[error("the host needs an even, positive number of vertices, got {0}")]
    OddOrder(usize),
    #[error("greedy clique reached {found} vertices, {needed} needed")]
    CliqueTooSmall { found: usize, needed: usize },
    #[error("no copy of H' in Z1 completes vertex {0}")]
    AttachmentMissing(usize),
    #[error("no copy of H' in D ∪ V1 with the required neighbours in D")]
    CoreCopyMissing,
    #[error("the given subgraph is not a copy of H' disjoint from the pinned vertices")]
    InvalidCopy,
    #[error("family: {0}")]
    Family(String),
    #[error("edge {{{0}, {1}}} is not in the host")]
    NotInHost(usize, usize),
    #[error("step {step} could not restore edge {edge:?}")]
    StepFailed { step: &'static str, edge: (usize, usize) },
    #[error(transparent)]
    Graph(#[from] GraphError),
}
