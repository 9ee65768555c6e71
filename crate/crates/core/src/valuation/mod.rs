//! Configurations of infinitely near points and their numerical invariants.

mod config;
mod contact;
mod semigroup;

pub use config::{Configuration, Point};
pub use contact::{
    configuration_from_contact, configuration_from_full_contact, contact_from_puiseux, contact_invariants,
    puiseux_from_contact, ContactInvariants, MAX_POINTS,
};
pub use semigroup::semigroup_contains;
