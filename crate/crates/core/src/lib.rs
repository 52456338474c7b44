//! Largest extensions of finite closure systems.
//!
//! A closure system over a ground set of at most 64 elements is given
//! either by an implicational base ([`ImplicationalBase`]) or by its
//! meet-irreducible sets ([`MeetFamily`]). Both representations can be
//! turned into the corresponding representation of the largest extension,
//! the biggest closure system that contains the input as a sublattice.
//! [`family`] holds exponential-time reference computations used to check
//! every fast path.

pub mod base;
pub mod closure;
pub mod error;
pub mod extension;
pub mod family;
pub mod generate;
pub mod meets;
pub mod set;

pub use base::{Implication, ImplicationalBase};
pub use closure::{ClosureOperator, UnitTable};
pub use error::{Error, Result};
pub use extension::{
    check_largest, extend_family_step, is_ideal_closed, largest_extension_base,
    remove_unitary_step, IdealClosedViolation, PremiseViolation, RecognizerReport,
};
pub use family::{
    enumerate_closed, is_atomistic, is_extension, largest_extension_bruteforce, ExtensionWitness,
    SetFamily, DEFAULT_GUARD, MAX_GUARD,
};
pub use generate::random_base;
pub use meets::{ExtensionTrace, MeetFamily, MeetPartition, TraceStep};
pub use set::{AttrSet, GroundSet, MAX_ELEMENTS};
