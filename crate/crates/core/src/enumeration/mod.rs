//! Type generation, curve counts and the dimension audit.

pub mod audit;
pub mod count;
pub mod types;

pub use audit::{dimension_bound_audit, AuditReport};
pub use count::{count_curves, CountReport, CountRequest, LegConvention, TypeCount};
pub use types::{generate_types, Skeleton};
