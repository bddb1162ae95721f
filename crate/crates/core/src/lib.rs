//! Finite inverse semigroups, their partial actions, and set-valued functors
//! on Loganathan's category.

pub mod action;
pub mod bundle;
pub mod category;
pub mod cosets;
pub mod equivalence;
pub mod exec;
pub mod fixtures;
pub mod functor;
pub mod json;
pub mod random;
pub mod semigroup;
pub mod suite;
pub mod tensor;
pub mod union_find;
