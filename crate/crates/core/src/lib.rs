//! Exact counts of singular hypersurfaces in linear systems.
//!
//! Given a compact complex `m`-fold `X` with a holomorphic line bundle `L`,
//! this crate computes the number of hypersurfaces in the linear system of
//! `L`, through the appropriate number of generic points, that acquire a
//! node, a cusp or a tacnode. The counts are Euler classes of explicit
//! vector bundles evaluated on the fundamental class of `D_k x X` (or
//! `D_k x P(TX)` for the projectivized routes), computed symbolically in a
//! truncated graded cohomology ring over exact integers.
//!
//! The core ring is generic over the coefficient scalar via [`polyring::Coeff`]
//! (any exact signed integer type from `num`); the aliases below fix the
//! default arbitrary-precision instantiation.

pub mod bundles;
pub mod cli;
pub mod closed_forms;
pub mod cohomology;
pub mod counts;
pub mod polyring;
pub mod targets;
pub mod verify;

/// Default exact coefficient type.
pub type Int = num_bigint::BigInt;
/// Polynomial over [`Int`].
pub type Poly = polyring::PolyOf<Int>;
/// Chern-number evaluator over [`Int`].
pub type Target = targets::ChernTarget<Int>;
/// Count result over [`Int`].
pub type Count = counts::CountResult<Int>;

pub use cohomology::Ambient;
pub use counts::{count, count_a1, count_a2, count_a2_det, count_a2_proj, count_a3, SingClass};
pub use targets::{make_generic, make_pm, make_product, make_table, Degree};
