//! The root space, the Tits form and its directed limit, positive
//! definiteness, positive roots and the indecomposables attached to them.

mod construct;
mod enumerate;
mod tits;
mod vector;

pub use construct::indecomposable_from_root;
pub use enumerate::enumerate_positive_roots;
pub use tits::{
    is_positive_definite, limit_from_homology, support, tits_form_limit, tits_form_on_subquiver, tits_limit_net_oracle,
    tits_value, Definiteness, Homology, NetEntry, NetOutcome, NetReport, Support, Witness,
};
pub use vector::{ExtendedInt, RootVector};
