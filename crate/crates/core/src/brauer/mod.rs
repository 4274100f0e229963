//! Brauer algebra `B_m(ω)` over `Q(ω)`.

mod diagram;
mod element;
mod jm;
mod suite;
mod symmetriser;

pub use diagram::{BrauerDiagram, Node, MAX_LEGS};
pub use element::{BrauerElement, GeneratorKind};
pub use jm::{jm_campaign, jm_membership, JmCertificate, JmTerm};
pub use suite::identity_suite;
pub use symmetriser::{
    brauer_symmetriser, gamma, group_symmetriser, symmetriser_by_expanded_recursion,
    symmetriser_by_product_recursion,
};
