//! Exact enumeration of plane tropical curves.
//!
//! The crate computes degrees of Severi varieties on polarized toric surfaces
//! by counting plane tropical curves through generic points with Mikhalkin
//! multiplicities, and checks the counts against the Kontsevich and
//! Caporaso–Harris recursions. Alongside the counts it provides lattice
//! polygon invariants, sublattice lower bounds for the number of components,
//! explicit rational curves over valued fields and their tropicalizations.
//!
//! All arithmetic that decides a result is exact: integers, big integers and
//! rationals. The curve search uses a loose floating-point test only to skip
//! branches early, and every surviving candidate is rechecked exactly.

pub mod enumeration;
pub mod error;
pub mod json;
pub mod lattice;
pub mod linalg;
pub mod rational;
pub mod recursions;
pub mod search;
pub mod strata;
pub mod svg;
pub mod tropical;
pub mod valued;

pub use error::{Error, Result};
pub use lattice::{LatticePoint, LatticePolygon, TropicalDegree};
pub use rational::{Q, QPoint};
pub use tropical::{CombinatorialType, Graph, ParamTropicalCurve, TropicalCurve};
