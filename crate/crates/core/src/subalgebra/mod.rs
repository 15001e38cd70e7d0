//! Degree semigroups of `k[f, g] ⊆ k[z]`: SAGBI completion, subduction,
//! membership with certificates, δ-sequences and constrained representations.

mod basis;
mod delta;
mod linsolve;
mod membership;
pub mod semigroup;

pub use crate::field_poly::BivarExpr;
pub use basis::{
    sagbi_basis, sagbi_basis_with, subduct, subduct_remainder, BasisElement, SagbiBasis,
    SagbiConfig,
};
pub use delta::{
    delta_sequence, delta_sequence_from_basis, delta_sequence_with, semigroup_represent,
    DeltaSequence, SemigroupRepr,
};
pub use linsolve::solve_augmented;
pub use membership::{
    brute_force_member, is_member, is_member_in, is_member_with, membership_obstruction,
    MembershipResult,
};
