//! Brute-force representation theory over exact rationals.

pub mod algebra;
pub mod constructions;
pub mod functor;
pub mod homological;
pub mod module;
pub mod presentation;
pub mod tits;

pub use algebra::{BasicAlgebra, PathWord, StructureConstantAlgebra};
pub use constructions::{build_replicated, hom_vanishing_gate, recover_kupisch, sgc_truncation, tensor};
pub use functor::{
    inverse_nakayama, nakayama_functor, nu_inverse_derived, profile_from_oracle, serre_formal_check, SerreVerdict,
};
pub use homological::{HomologicalReport, ModuleComplex, Oracle};
pub use module::{Module, Morphism};
pub use presentation::{compile_basic, compile_bound_quiver, Presentation};
pub use tits::{tits_form, tits_positive_roots};
