//! Finding ordinary and monochromatic intersection points in arrangements of
//! lines, hyperplanes and pseudolines, over exact rational arithmetic.
//!
//! The fast algorithms live in [`arrangement2d`], [`hyperplanes`] and
//! [`pseudolines`]; [`oracle`] provides brute-force ground truth for tests
//! and verification, [`generators`] seeded arrangement construction, and
//! [`io`] the JSON wire formats.

pub mod arrangement2d;
pub mod error;
pub mod generators;
pub mod hyperplanes;
pub mod io;
pub mod oracle;
pub mod plane;
pub mod pseudolines;
pub mod scalar;
pub mod space;

pub use arrangement2d::{find_ordinary_point_2d, find_triple, OrdinaryResult2D, Provenance2D};
pub use error::{Error, Result};
pub use generators::{generate, Arrangement, GenKind, GenSpec, SplitMix64};
pub use hyperplanes::{
    find_ordinary_point_nd, partition_families, FamilyPartition, NdOutcome, OrdinaryResultNd,
    ProvenanceNd,
};
pub use plane::{
    base_frame, canonical_line, intersect_lines, side_of_line, AffineMap2, Color, Line2, Point2,
    Side,
};
pub use pseudolines::{
    find_monochromatic, find_ordinary_pseudoline, intersect_pseudolines, pseudolines_through,
    validate_arrangement, MonoResult, PseudoOptions, Pseudoline, TriangleState, ValidationConfig,
};
pub use scalar::{format_scalar, parse_scalar, Scalar};
pub use space::{
    canonical_hyperplane, intersect_flats, maximal_independent_subset, solve_point, Flat,
    HyperplaneD, PointD, MAX_DIM,
};
