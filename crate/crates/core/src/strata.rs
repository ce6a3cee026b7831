//! The linear system of a stratum and its solutions through point
//! conditions.
//!
//! Unknowns are ordered as `x_0, y_0, x_1, y_1, ...` for vertex positions
//! followed by one length per edge. Each edge `e: a -> b` with slope `s`
//! contributes the two rows of `h(b) - h(a) - len(e) * s = 0`.

use num_traits::{One, Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::linalg::{find_feasible, rank, solve_augmented, LinearSolution, VarBound};
use crate::rational::{q_int, QPoint, Q};
use crate::tropical::{CombinatorialType, ParamTropicalCurve};

/// Points `q_1, ..., q_r`, one per contracted leg, and the seed they came from.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PointConfiguration {
    pub points: Vec<QPoint>,
    pub seed: u64,
}

impl PointConfiguration {
    pub fn new(points: Vec<QPoint>, seed: u64) -> Self {
        Self { points, seed }
    }

    /// Draws `r` integer points uniformly from `[-B, B]^2` with
    /// `B = 2^(24 + min(attempt, 24))`. A wall is a linear condition with
    /// small coefficients, so a wide box makes hitting one unlikely. Each
    /// attempt reads its own ChaCha stream, so attempt `k` does not depend
    /// on how many numbers earlier attempts used.
    pub fn sample(r: usize, seed: u64, attempt: u32) -> Self {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        rng.set_stream(attempt as u64);
        let bound: i64 = 1 << (24 + attempt.min(24));
        let points = (0..r)
            .map(|_| QPoint::from_ints(rng.gen_range(-bound..=bound), rng.gen_range(-bound..=bound)))
            .collect();
        Self { points, seed }
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }
}

/// Equalities and positivity constraints cut out by a type and optional
/// point conditions.
#[derive(Clone, Debug)]
pub struct StratumSystem {
    pub num_vertices: usize,
    pub num_edges: usize,
    /// Augmented rows `[coefficients | rhs]`.
    pub rows: Vec<Vec<Q>>,
}

impl StratumSystem {
    pub fn num_unknowns(&self) -> usize {
        2 * self.num_vertices + self.num_edges
    }

    pub fn length_var(&self, e: usize) -> usize {
        2 * self.num_vertices + e
    }

    /// Edge relations only.
    pub fn for_type(t: &CombinatorialType) -> Self {
        let nv = t.num_vertices();
        let ne = t.graph.edges.len();
        let n = 2 * nv + ne;
        let mut rows = Vec::with_capacity(2 * ne);
        for (e, (&(a, b), &s)) in t.graph.edges.iter().zip(&t.edge_slopes).enumerate() {
            for (coord, sc) in [(0, s.x), (1, s.y)] {
                let mut row = vec![Q::zero(); n + 1];
                row[2 * b + coord] += Q::one();
                row[2 * a + coord] -= Q::one();
                row[2 * nv + e] = q_int(-sc);
                rows.push(row);
            }
        }
        Self { num_vertices: nv, num_edges: ne, rows }
    }

    /// Edge relations plus `h(anchor(l_i)) = q_i` for the contracted legs in
    /// leg order.
    pub fn with_points(t: &CombinatorialType, q: &PointConfiguration) -> Result<Self> {
        let legs = t.contracted_legs();
        if legs.len() != q.len() {
            return Err(Error::InvalidArgument(format!(
                "type has {} contracted legs but {} points were given",
                legs.len(),
                q.len()
            )));
        }
        let mut sys = Self::for_type(t);
        let n = sys.num_unknowns();
        for (&l, p) in legs.iter().zip(&q.points) {
            let v = t.graph.legs[l];
            for (coord, val) in [(0, &p.x), (1, &p.y)] {
                let mut row = vec![Q::zero(); n + 1];
                row[2 * v + coord] = Q::one();
                row[n] = val.clone();
                sys.rows.push(row);
            }
        }
        Ok(sys)
    }

    pub fn rank(&self) -> usize {
        rank(&self.rows, self.num_unknowns())
    }

    /// Some solution with every length at least 1, if one exists. The edge
    /// system is homogeneous, so this decides whether the open stratum is
    /// nonempty.
    pub fn positive_point(&self) -> Option<Vec<Q>> {
        let bounds: Vec<VarBound> = (0..self.num_unknowns())
            .map(|j| {
                if j < 2 * self.num_vertices {
                    VarBound::Free
                } else {
                    VarBound::AtLeast(Q::one())
                }
            })
            .collect();
        find_feasible(&self.rows, &bounds)
    }
}

/// Dimension of the solution space of the edge relations.
pub fn stratum_dimension(t: &CombinatorialType) -> usize {
    let sys = StratumSystem::for_type(t);
    sys.num_unknowns() - sys.rank()
}

/// Dimension of the image of the stratum under evaluation at the contracted
/// legs, `h -> (h(l_1), ..., h(l_r))`. This is what point conditions see:
/// a superabundant stratum can be larger than its image.
pub fn evaluation_rank(t: &CombinatorialType) -> usize {
    let mut sys = StratumSystem::for_type(t);
    let n = sys.num_unknowns();
    let base = sys.rank();
    for l in t.contracted_legs() {
        let v = t.graph.legs[l];
        for coord in 0..2 {
            let mut row = vec![Q::zero(); n + 1];
            row[2 * v + coord] = Q::one();
            sys.rows.push(row);
        }
    }
    sys.rank() - base
}

/// True when the open stratum is nonempty.
pub fn stratum_nonempty(t: &CombinatorialType) -> bool {
    StratumSystem::for_type(t).positive_point().is_some()
}

/// A type is regular when its stratum is nonempty and has the expected
/// dimension.
pub fn is_regular(t: &CombinatorialType) -> bool {
    let r = t.contracted_legs().len() as i64;
    stratum_nonempty(t) && stratum_dimension(t) as i64 == t.expected_dimension(r)
}

/// All curves of type `t` with `h(l_i) = q_i` and positive edge lengths.
///
/// Returns at most one curve. A solution set of positive dimension, or a
/// unique solution with a zero length, means the configuration is special
/// for this type and is reported as [`Error::Degenerate`].
pub fn solve_through_points(
    t: &CombinatorialType,
    q: &PointConfiguration,
) -> Result<Vec<ParamTropicalCurve>> {
    let sys = StratumSystem::with_points(t, q)?;
    let n = sys.num_unknowns();
    match solve_augmented(sys.rows, n) {
        LinearSolution::Inconsistent => Ok(Vec::new()),
        LinearSolution::Family { dimension, .. } => Err(Error::Degenerate(format!(
            "solution set through the points has dimension {dimension}"
        ))),
        LinearSolution::Unique(x) => {
            let nv = t.num_vertices();
            let lengths: Vec<Q> = x[2 * nv..].to_vec();
            if lengths.iter().any(|l| l.is_negative()) {
                return Ok(Vec::new());
            }
            if lengths.iter().any(|l| l.is_zero()) {
                return Err(Error::Degenerate("a solution has an edge of length zero".into()));
            }
            let positions = (0..nv)
                .map(|v| QPoint::new(x[2 * v].clone(), x[2 * v + 1].clone()))
                .collect();
            Ok(vec![ParamTropicalCurve::new(t.clone(), lengths, positions)?])
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::LatticePoint;
    use crate::rational::q_int;

    fn p(x: i64, y: i64) -> LatticePoint {
        LatticePoint::new(x, y)
    }

    /// Tropical line with marks on the legs of slope (-1,0) and (0,-1).
    fn marked_line() -> CombinatorialType {
        CombinatorialType::weightless(
            3,
            vec![(0, 1, p(-1, 0)), (0, 2, p(0, -1))],
            vec![(1, p(0, 0)), (1, p(-1, 0)), (2, p(0, 0)), (2, p(0, -1)), (0, p(1, 1))],
        )
        .unwrap()
    }

    #[test]
    fn dimensions() {
        assert_eq!(stratum_dimension(&marked_line()), 4);
        let baby = CombinatorialType::weightless(
            2,
            vec![(0, 1, p(0, 1))],
            vec![(0, p(0, 0)), (0, p(0, -1)), (1, p(1, 1)), (1, p(-1, 0))],
        )
        .unwrap();
        assert_eq!(stratum_dimension(&baby), 3);
        // Contracting-by-zero-slope: a zero-slope edge between two trivalent
        // vertices adds exactly one free length.
        let with_zero = CombinatorialType::weightless(
            2,
            vec![(0, 1, p(0, 0))],
            vec![(0, p(-1, 0)), (0, p(1, 0)), (1, p(0, -1)), (1, p(0, 1))],
        )
        .unwrap();
        let merged = with_zero.contract(&[0]).unwrap();
        assert_eq!(stratum_dimension(&with_zero), stratum_dimension(&merged) + 1);
    }

    #[test]
    fn evaluation_sees_less_than_a_flat_cycle() {
        assert_eq!(evaluation_rank(&marked_line()), 4);
        // Two parallel edges between the same vertices: the lengths satisfy
        // one relation instead of two, but the extra freedom only slides
        // the second vertex along the line.
        let flat = CombinatorialType::weightless(
            2,
            vec![(0, 1, p(1, 0)), (0, 1, p(1, 0))],
            vec![(0, p(0, 0)), (0, p(-2, 0)), (1, p(2, 0))],
        )
        .unwrap();
        assert_eq!(stratum_dimension(&flat), 3);
        assert_eq!(flat.expected_dimension(1), 2);
        assert_eq!(evaluation_rank(&flat), 2);
    }

    #[test]
    fn line_through_two_points() {
        // Mark 1 sits on the leg going left, mark 2 on the leg going down, so
        // a solution needs q1 to the left of q2 and q2 below q1.
        let q = PointConfiguration::new(vec![QPoint::from_ints(0, 0), QPoint::from_ints(5, 3)], 0);
        assert!(solve_through_points(&marked_line(), &q).unwrap().is_empty());
        let q = PointConfiguration::new(vec![QPoint::from_ints(-5, 3), QPoint::from_ints(0, 0)], 0);
        let sols = solve_through_points(&marked_line(), &q).unwrap();
        assert_eq!(sols.len(), 1);
        assert_eq!(sols[0].positions[0], QPoint::from_ints(0, 3));
        assert_eq!(sols[0].lengths, vec![q_int(5), q_int(3)]);
        assert_eq!(sols[0].leg_position(0), &q.points[0]);
        assert_eq!(sols[0].leg_position(2), &q.points[1]);
    }

    #[test]
    fn coincident_points_are_degenerate() {
        let q = PointConfiguration::new(vec![QPoint::from_ints(1, 1), QPoint::from_ints(1, 1)], 0);
        assert!(matches!(
            solve_through_points(&marked_line(), &q),
            Err(Error::Degenerate(_))
        ));
    }

    #[test]
    fn regularity() {
        assert!(is_regular(&marked_line()));
        // A weight-one vertex with three legs: dimension 2, expected 3.
        let mut weighted = CombinatorialType::weightless(
            1,
            vec![],
            vec![(0, p(-1, 0)), (0, p(0, -1)), (0, p(1, 1))],
        )
        .unwrap();
        weighted.weights[0] = 1;
        let r = 0;
        assert!(stratum_dimension(&weighted) as i64 <= 3 + r + weighted.genus() - 2);
        // Two edges between the same vertices with independent slopes:
        // the cycle closes only with both lengths zero.
        let empty = CombinatorialType::weightless(
            2,
            vec![(0, 1, p(1, 0)), (0, 1, p(0, 1))],
            vec![(0, p(-1, -1)), (1, p(1, 1))],
        )
        .unwrap();
        assert!(empty.check_balancing());
        assert!(!stratum_nonempty(&empty));
        assert!(!is_regular(&empty));
    }

    #[test]
    fn sampling_is_reproducible() {
        let a = PointConfiguration::sample(5, 42, 0);
        let b = PointConfiguration::sample(5, 42, 0);
        let c = PointConfiguration::sample(5, 42, 1);
        assert_eq!(a, b);
        assert_ne!(a, c);
        assert!(a.points.iter().all(|p| p.max_abs() <= q_int(1 << 24)));
        assert!(c.points.iter().all(|p| p.max_abs() <= q_int(1 << 25)));
    }
}
