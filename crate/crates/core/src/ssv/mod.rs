//! Segal–Sugawara vectors `Φ_m` and the verification campaigns around them.

mod campaigns;
mod context;
mod identities;
mod partition;
mod phi;

pub use context::{rational, scaled, word, Context, Expr, Factor};
pub use identities::{evaluate, sample, verify_identities, verify_rep_identities, Identity, Instance, Letter, Outcome};
pub use partition::{cycle_count, partitions, partitions_even_length, y_poly, Partition};
pub use phi::{phi_integral, phi_rational, tau_polynomial, traced_term, ExpansionTerm, SSVector};
pub use campaigns::{
    annihilation_report, binomial, ev_centrality_check, ev_z, generic_level, phi_invariants, psi_relation_check,
    verify_annihilation, verify_commutativity, verify_equivalence, verify_odd_vanishing,
};

#[cfg(test)]
mod tests;
