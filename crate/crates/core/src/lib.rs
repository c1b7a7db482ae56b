//! Hyperbolic cusp geometry and Dehn filling length bounds.
//!
//! * [`h3`]: upper half-space kernel (isometries, horospheres, projections).
//! * [`cusp`]: flat cusp tori, slopes, normalized lengths, lattice reduction.
//! * [`filling`]: Margulis constants, filling windows, and the twist-power
//!   length bounds.
//! * [`verify`]: seeded randomized and grid checks of the supporting lemmas.
//! * [`cli`]: the `cuspfill` command-line front end.

// `!(x > 0.0)` guards also reject NaN.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod cli;
pub mod cusp;
pub mod error;
pub mod filling;
pub mod h3;
pub mod verify;

pub use cusp::{parse_complex, twist_slope, CuspShape, SandwichInterval, Slope};
pub use error::{Error, Result};
pub use filling::{BoundInterval, MargulisChoice, PipelineReport, TheoremInput};
pub use h3::{Geodesic, HPoint, Horosphere, IdealPoint, Isometry, Point3};
pub use num_complex::Complex64;
pub use verify::{ChainConfig, TrialReport};
