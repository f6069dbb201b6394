//! The rank-6 Picard lattice of a split quartic del Pezzo surface: lines,
//! conic bundles, presentations, the nef cone and its chambers, ℓ and the
//! alpha constant.

pub mod chamber;
pub mod cone;
pub mod ell;
pub mod lattice;

pub use chamber::{chamber_decompose, chamber_generators, ChamberDecomposition};
pub use cone::{alpha_constant, AlphaMode, AlphaValue, Cone, ConeKind, RHO};
pub use ell::{ell, ell_and_cone};
pub use lattice::{
    class_invariants, conic_classes, disjoint_triples, minus_one_classes, nef_classes_upto, presentations,
    ClassInvariants,
    PicClass, Presentation,
};
