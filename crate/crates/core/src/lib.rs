//! Exact cohomology bookkeeping for Calabi-Yau ribbons on prime Fano threefolds.
//!
//! Layers, bottom up: GL(n) weight combinatorics ([`weights`]), Borel-Bott-Weil
//! on Grassmannians ([`bbw`]), formal sums of homogeneous bundles ([`bundle`]),
//! interval chases on exact sequences ([`chase`]), the family database
//! ([`families`]), extendability bounds ([`extendability`]) and invariants of
//! canonical surface sections ([`geography`]). [`report`] renders results.

pub mod bbw;
pub mod bundle;
pub mod chase;
pub mod dims;
pub mod error;
pub mod extendability;
pub mod families;
pub mod geography;
pub mod report;
pub mod weights;

pub use bbw::{cohomology_irred, cohomology_omega_twist, CohomResult, GrSpec, IrredBundle};
pub use bundle::BundleExpr;
pub use chase::{ChaseSystem, ChaseTrace, RuleOrder, TraceStep};
pub use dims::{DimTable, IntervalDim};
pub use error::{FanoError, Result};
pub use extendability::{BetaBreakdown, ExtendabilityReport, Flag};
pub use families::{family, FamilyDb, FanoFamily};
pub use geography::SurfaceInvariants;
pub use weights::{bott_regularize, lr_tensor, rho, weyl_dim, BottRegularity, DominantWeight, IntegerWeight};
