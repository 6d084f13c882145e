//! Certification of small finite groups against the four defining
//! properties of the group attached to a superspecial Weyl-group
//! representation, and explicit isomorphisms onto the canonical models
//! `{1}`, `(Z/2)^k`, `S3`, `S4`, `S5`.

pub mod canonical;
pub mod catalog;
pub mod certify;
pub mod error;
pub mod group;
pub mod perm;
pub mod replay;
pub mod structure;

pub use canonical::{canonical_isomorphism, expected_group, CanonicalIsomorphism, MarkingSet};
pub use certify::{
    builtin_spec, certify, check_refinement, product_spec, Certificate, SpecialSpec, Verdict,
};
pub use error::{Error, Result};
pub use group::{FiniteGroup, GroupJson, Subgroup, DEFAULT_MAX_ORDER};
pub use perm::Permutation;
pub use replay::{proof_replay, ReplayReport};
pub use structure::{are_isomorphic, conjugacy_classes, ClassProfile, Isomorphism};
