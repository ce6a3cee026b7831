//! Tropical check that `dim V_{g,Δ} <= |∂Δ ∩ M| + g - 1`.
//!
//! With `r = |∂Δ ∩ M| + g` points, no family of counted types may reach all
//! point conditions: evaluation at the marks must have rank below `2r`.
//! A mark on an edge adds a vertex, a length and two equations, so it raises
//! the stratum dimension by exactly one. Skeletons of dimension below `r`
//! thus stay below `2r` however the marks are placed. The few superabundant
//! skeletons, whose cycles fold onto a line, are checked through the rank of
//! evaluation on their markings instead, which is smaller than their
//! dimension.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::lattice::LatticePolygon;
use crate::search::Slopes;
use crate::strata::{evaluation_rank, solve_through_points, stratum_dimension, PointConfiguration};
use crate::tropical::CombinatorialType;

use super::types::{place_marks, skeletons, Placements, Skeleton};

/// Placements per skeleton enumerated in full; above this they are sampled.
const EXHAUSTIVE_LIMIT: u128 = 5_000;
const SAMPLES_PER_SKELETON: usize = 24;
/// Regular skeletons only need the `+1` per mark confirmed.
const SAMPLES_PER_REGULAR_SKELETON: usize = 6;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AuditReport {
    pub genus: i64,
    /// One more than the number of points a curve is counted through.
    pub points: usize,
    pub skeletons: usize,
    /// Skeletons whose stratum is larger than expected.
    pub superabundant: usize,
    pub marked_types_checked: usize,
    /// Whether every marking of every superabundant skeleton was checked.
    pub exhaustive: bool,
    /// Largest stratum dimension over all markings.
    pub max_dimension: usize,
    /// Largest evaluation rank over the markings checked.
    pub max_evaluation_rank: usize,
    /// Systems through random points that were solved and found empty.
    pub point_checks: usize,
    pub violations: Vec<String>,
}

impl AuditReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Checks every skeleton of genus `genus` for the polygon, connected or
/// not, with `|∂Δ ∩ M| + genus` marks. Component genera are limited to 0
/// and 1.
pub fn dimension_bound_audit(polygon: &LatticePolygon, genus: i64, seed: u64) -> Result<AuditReport> {
    let r = polygon.boundary_count() + genus;
    if r < 0 {
        return Err(Error::InvalidRequest(format!("genus {genus} leaves no points to audit")));
    }
    let r = r as usize;
    let degree = polygon.dual_degree();
    let slopes = Slopes::of_polygon(polygon);
    let all = skeletons(&degree, genus, false, &slopes)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut report = AuditReport {
        genus,
        points: r,
        skeletons: all.len(),
        superabundant: 0,
        marked_types_checked: 0,
        exhaustive: true,
        max_dimension: 0,
        max_evaluation_rank: 0,
        point_checks: 0,
        violations: Vec::new(),
    };
    let mut attempt = 0;
    let mut configuration = PointConfiguration::sample(r, seed, attempt);
    for (i, skeleton) in all.iter().enumerate() {
        if skeleton.lines.len() > r {
            // Every line needs a mark to exist at all.
            continue;
        }
        let p = skeleton.positions();
        let base = place_marks(skeleton, &spread_over_lines(skeleton, r)).expect("every line has a mark");
        let dim = stratum_dimension(&base);
        let dim0 = dim - r;
        report.max_dimension = report.max_dimension.max(dim);
        let expected = base.expected_dimension(r as i64);
        if (dim as i64) < expected {
            report.violations.push(format!("skeleton {i} has dimension {dim} below the expected {expected}"));
        }
        let superabundant = dim as i64 > expected;
        report.superabundant += superabundant as usize;
        if dim0 >= r && !superabundant {
            report.violations.push(format!("regular skeleton {i} has dimension {dim0} >= {r} before marks"));
        }
        let samples = if superabundant { SAMPLES_PER_SKELETON } else { SAMPLES_PER_REGULAR_SKELETON };
        let placements: Box<dyn Iterator<Item = Vec<usize>>> = if Placements::count(p, r) <= EXHAUSTIVE_LIMIT {
            Box::new(Placements::new(p, r))
        } else {
            report.exhaustive &= !superabundant;
            let drawn: Vec<Vec<usize>> =
                (0..samples).map(|_| (0..r).map(|j| rng.gen_range(0..p + j)).collect()).collect();
            Box::new(drawn.into_iter())
        };
        for slots in placements {
            let Some(t) = place_marks(skeleton, &slots) else { continue };
            report.marked_types_checked += 1;
            let d = stratum_dimension(&t);
            if d != dim {
                report.violations.push(format!("marks on skeleton {i} at {slots:?} give dimension {d}, not {dim}"));
            }
            if !superabundant {
                continue;
            }
            let rank = evaluation_rank(&t);
            report.max_evaluation_rank = report.max_evaluation_rank.max(rank);
            if rank >= 2 * r {
                report.violations.push(format!("type from skeleton {i} at {slots:?} reaches {r} points"));
            }
        }
        // Solving through random points must find nothing.
        if !solves_empty(&base, &mut configuration, &mut attempt, r, seed)? {
            report.violations.push(format!("skeleton {i} with marks meets {r} random points"));
        }
        report.point_checks += 1;
    }
    if report.superabundant == 0 {
        report.max_evaluation_rank = report.max_dimension;
    }
    Ok(report)
}

/// A placement with one mark on each line and the rest at the start of
/// the first position.
fn spread_over_lines(skeleton: &Skeleton, r: usize) -> Vec<usize> {
    let p = skeleton.positions();
    let first_line = p - skeleton.lines.len();
    (0..r).map(|j| if j < skeleton.lines.len() { first_line + j } else { 0 }).collect()
}

/// Whether the type has no curve through the points, drawing new points
/// while the current ones are special for it.
fn solves_empty(
    t: &CombinatorialType,
    configuration: &mut PointConfiguration,
    attempt: &mut u32,
    r: usize,
    seed: u64,
) -> Result<bool> {
    for _ in 0..8 {
        match solve_through_points(t, configuration) {
            Ok(found) => return Ok(found.is_empty()),
            Err(Error::Degenerate(_)) => {
                *attempt += 1;
                *configuration = PointConfiguration::sample(r, seed, *attempt);
            }
            Err(e) => return Err(e),
        }
    }
    Err(Error::GenericityExhausted { attempts: 8 })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::LatticePoint;

    #[test]
    fn lines_pass_exhaustively() {
        let report = dimension_bound_audit(&LatticePolygon::degree_triangle(1).unwrap(), 0, 0).unwrap();
        assert!(report.passed(), "{:?}", report.violations);
        assert_eq!(report.points, 3);
        assert!(report.exhaustive);
        assert_eq!(report.superabundant, 0);
        assert_eq!(report.marked_types_checked, 60);
        // A line with three marks moves in a family of dimension 4.
        assert_eq!(report.max_dimension, 5);
    }

    #[test]
    fn small_triangle_passes() {
        let poly = LatticePolygon::new(&[LatticePoint::new(0, 0), LatticePoint::new(2, 1), LatticePoint::new(1, 2)])
            .unwrap();
        let report = dimension_bound_audit(&poly, 0, 1).unwrap();
        assert!(report.passed(), "{:?}", report.violations);
        assert_eq!(report.points, 3);
    }

    #[test]
    fn conics_pass() {
        let report = dimension_bound_audit(&LatticePolygon::degree_triangle(2).unwrap(), 0, 2).unwrap();
        assert!(report.passed(), "{:?}", report.violations);
        assert_eq!(report.points, 6);
        assert!(report.max_dimension < 12);
    }
}
