//! `C^{M|2n}`, super tensor operators and the Brauer representation.

mod checks;
mod operator;
mod pq;
mod ring;
mod signature;

pub use checks::{qxq_check, random_operator, rep_relations_check};
pub use operator::{all_indices, entry, pack, unpack, with_entry, MultiIndex, TensorOperator, MAX_TENSOR_LEGS};
pub use pq::{build_p, build_q, rho, Rho};
pub use ring::{SuperModule, SuperRing};
pub use signature::{Signature, MAX_DIM};
