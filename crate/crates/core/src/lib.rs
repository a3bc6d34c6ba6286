//! Exact arithmetic for the tetrahedral Farey graph 𝒯 over the Eisenstein
//! integers ℤ[σ], σ = e^{iπ/3}.
//!
//! * [`eisenstein`]: ring elements, fractions, points of Q̂(σ), unimodular matrices.
//! * [`farey3d`]: edges, faces, fundamental tetrahedra and face reflections.
//! * [`lambda`]: λ-lengths, horospheres and the relations between them.
//! * [`paths`]: normalised and skew-normalised paths, 𝒯-angles, continued fractions.
//! * [`tilings`]: tame SL₂(ℤ[σ])-tilings and their parametrisations.
//! * [`friezes`]: closed paths and the friezes they generate.

pub mod eisenstein;
pub mod error;
pub mod farey3d;
pub mod friezes;
pub mod lambda;
pub mod paths;
pub mod random;
pub mod tilings;

pub use eisenstein::{det2, EFrac, EInt, ProjPoint, UniMat};
pub use error::{Error, Result};
