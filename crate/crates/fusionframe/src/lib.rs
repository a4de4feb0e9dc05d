#![forbid(unsafe_code)]

//! Frames and fusion frames in finite-dimensional real Hilbert spaces.
//!
//! A frame is a redundant spanning family of vectors; a fusion frame replaces
//! the vectors with weighted subspaces. This crate computes frame operators
//! and optimal bounds, builds canonical and alternate duals, checks duality
//! and Riesz properties, and constructs new fusion duals by augmenting the
//! canonical one.
//!
//! Start with the runnable tours in `examples/`:
//!
//! * `subspaces` for projectors, complements, sums, and images
//! * `discrete_duals` for frame bounds and the null-map dual recipe
//! * `fusion_analysis` for fusion frame operators, bounds, and Riesz reports
//! * `duality_asymmetry` for why fusion duality is one-directional
//! * `local_frames` for the associated frame and lifted local duals
//! * `augmented_duals` for constructing and enumerating non-canonical duals
//! * `documents` for the JSON interchange format
//!
//! The `fusionframe` binary exposes the same operations on JSON families;
//! see the README for the command reference.

pub mod cli;
pub mod corpus;
pub mod discrete;
pub mod document;
pub mod duals;
pub mod error;
pub mod fusion;
pub mod report;
pub mod subspaces;

pub use error::FrameError;
pub use subspaces::{spectral_norm, Subspace, TolerancePolicy};

pub use discrete::{dual_from_nullmap, is_dual_pair, DiscreteFrame, DualCheckReport, FrameBounds};

pub use fusion::{
    alternate_dual_check, canonical_dual_inclusion, mutual_dual_check, phi_blocks, FusionFamily,
    RieszReport, WeightedSubspace,
};

pub use duals::{
    associated_discrete_frame, construct_dual_by_augmentation, enumerate_augmented_duals,
    lift_local_duals, orthogonal_obstruction_check, parseval_orthogonality_dual_check,
    AugmentationChoice, DualEnumeration, EnumerationStrategy, LocalFrameAssignment,
    OrthogonalObstructionReport, ParsevalOrthogonalityReport,
};

pub use document::{parse_augmentation, FamilySpecDocument, SubspaceSpec};
pub use report::{sig12, AnalysisReport};
