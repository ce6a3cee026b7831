//! Lattice polygons and the invariants derived from them.
//!
//! A [`LatticePolygon`] is stored counterclockwise with no collinear
//! consecutive vertices. Everything else in this module (boundary and interior
//! points, sides with primitive inner normals, the dual tropical degree,
//! dimension and delta counts, sublattice bounds) is computed from it.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Element of `Z^2`. Used both for points of `M` and for slopes in `N`.
#[derive(
    Clone, Copy, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize,
)]
pub struct LatticePoint {
    pub x: i64,
    pub y: i64,
}

impl LatticePoint {
    pub const ZERO: LatticePoint = LatticePoint { x: 0, y: 0 };

    pub const fn new(x: i64, y: i64) -> Self {
        Self { x, y }
    }

    pub fn is_zero(self) -> bool {
        self.x == 0 && self.y == 0
    }

    pub fn cross(self, other: Self) -> i64 {
        self.x * other.y - self.y * other.x
    }

    pub fn dot(self, other: Self) -> i64 {
        self.x * other.x + self.y * other.y
    }

    /// gcd of the coordinates, i.e. the lattice length of the vector.
    pub fn content(self) -> i64 {
        self.x.abs().gcd(&self.y.abs())
    }

    pub fn is_primitive(self) -> bool {
        self.content() == 1
    }

    /// Rotation by a quarter turn counterclockwise.
    pub fn rot90(self) -> Self {
        Self::new(-self.y, self.x)
    }

    /// True when the first nonzero coordinate is positive.
    pub fn is_lex_positive(self) -> bool {
        self.x > 0 || (self.x == 0 && self.y > 0)
    }
}

impl fmt::Display for LatticePoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.x, self.y)
    }
}

impl Add for LatticePoint {
    type Output = Self;
    fn add(self, o: Self) -> Self {
        Self::new(self.x + o.x, self.y + o.y)
    }
}

impl Sub for LatticePoint {
    type Output = Self;
    fn sub(self, o: Self) -> Self {
        Self::new(self.x - o.x, self.y - o.y)
    }
}

impl Neg for LatticePoint {
    type Output = Self;
    fn neg(self) -> Self {
        Self::new(-self.x, -self.y)
    }
}

impl Mul<LatticePoint> for i64 {
    type Output = LatticePoint;
    fn mul(self, p: LatticePoint) -> LatticePoint {
        LatticePoint::new(self * p.x, self * p.y)
    }
}

/// A side of a polygon with its primitive inner normal and lattice length.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PolygonSide {
    pub index: usize,
    pub start: LatticePoint,
    pub end: LatticePoint,
    pub inner_normal: LatticePoint,
    pub integral_length: i64,
}

/// Convex lattice polygon with positive area.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct LatticePolygon {
    vertices: Vec<LatticePoint>,
}

impl LatticePolygon {
    /// Builds a polygon from points given in any order.
    ///
    /// The vertices are the convex hull of the input. The result is
    /// counterclockwise and starts at the first input point when that point is
    /// a hull vertex. Points that lie on the boundary between two hull vertices
    /// are dropped; points strictly inside the hull are rejected, as are
    /// degenerate inputs with zero area.
    pub fn new(points: &[LatticePoint]) -> Result<Self> {
        if points.len() < 3 {
            return Err(Error::InvalidPolygon(format!(
                "need at least three vertices, got {}",
                points.len()
            )));
        }
        let hull = convex_hull(points);
        if hull.len() < 3 {
            return Err(Error::InvalidPolygon("zero area".into()));
        }
        let poly = LatticePolygon { vertices: hull };
        for &p in points {
            if poly.locate(p) == Location::Interior {
                return Err(Error::InvalidPolygon(format!(
                    "vertex {p} lies strictly inside the convex hull"
                )));
            }
        }
        let mut vertices = poly.vertices;
        if let Some(pos) = vertices.iter().position(|&v| v == points[0]) {
            vertices.rotate_left(pos);
        }
        Ok(LatticePolygon { vertices })
    }

    /// Triangle with vertices `(0,0), (d,0), (0,d)`.
    pub fn degree_triangle(d: i64) -> Result<Self> {
        if d < 1 {
            return Err(Error::InvalidPolygon(format!("degree must be positive, got {d}")));
        }
        Self::new(&[
            LatticePoint::new(0, 0),
            LatticePoint::new(d, 0),
            LatticePoint::new(0, d),
        ])
    }

    /// The kite with vertices `(0,0), (1,k), (0,k+k'), (-1,k)`.
    pub fn kite(k: i64, k_prime: i64) -> Result<Self> {
        Self::new(&[
            LatticePoint::new(0, 0),
            LatticePoint::new(1, k),
            LatticePoint::new(0, k + k_prime),
            LatticePoint::new(-1, k),
        ])
    }

    /// The polygon dual to a balanced degree: its sides are the quarter
    /// turns of the degree's vectors, in angular order. The result is
    /// translated so that its lowest-leftmost vertex is the origin. Fails
    /// when the vectors span only a line.
    pub fn from_degree(degree: &TropicalDegree) -> Result<Self> {
        if !degree.is_balanced() {
            return Err(Error::InvalidArgument("degree does not sum to zero".into()));
        }
        let mut sides: Vec<LatticePoint> = degree.vectors().into_iter().map(LatticePoint::rot90).collect();
        sides.sort_by(|&a, &b| angle_cmp(a, b));
        let mut pts = vec![LatticePoint::ZERO];
        for s in &sides {
            let last = *pts.last().expect("nonempty");
            pts.push(last + *s);
        }
        pts.pop();
        let min = *pts.iter().min_by_key(|p| (p.y, p.x)).expect("nonempty");
        let pts: Vec<_> = pts.into_iter().map(|p| p - min).collect();
        Self::new(&pts)
    }

    /// Parses `"x1,y1;x2,y2;..."`.
    pub fn parse_inline(s: &str) -> Result<Self> {
        let mut pts = Vec::new();
        for chunk in s.split(';').map(str::trim).filter(|c| !c.is_empty()) {
            let (x, y) = chunk
                .split_once(',')
                .ok_or_else(|| Error::Parse(format!("expected x,y in {chunk:?}")))?;
            pts.push(LatticePoint::new(parse_int(x)?, parse_int(y)?));
        }
        Self::new(&pts)
    }

    /// Parses a document with one whitespace-separated `x y` pair per line.
    /// Blank lines and lines starting with `#` are ignored.
    pub fn parse_document(text: &str) -> Result<Self> {
        let mut pts = Vec::new();
        for line in text.lines().map(str::trim) {
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let fields: Vec<&str> = line.split_whitespace().collect();
            if fields.len() != 2 {
                return Err(Error::Parse(format!("expected two integers in {line:?}")));
            }
            pts.push(LatticePoint::new(parse_int(fields[0])?, parse_int(fields[1])?));
        }
        Self::new(&pts)
    }

    pub fn vertices(&self) -> &[LatticePoint] {
        &self.vertices
    }

    /// Twice the area (an integer).
    pub fn double_area(&self) -> i64 {
        let n = self.vertices.len();
        (0..n)
            .map(|i| self.vertices[i].cross(self.vertices[(i + 1) % n]))
            .sum()
    }

    pub fn sides(&self) -> Vec<PolygonSide> {
        let n = self.vertices.len();
        (0..n)
            .map(|i| {
                let start = self.vertices[i];
                let end = self.vertices[(i + 1) % n];
                let edge = end - start;
                let k = edge.content();
                let dir = LatticePoint::new(edge.x / k, edge.y / k);
                PolygonSide {
                    index: i,
                    start,
                    end,
                    inner_normal: dir.rot90(),
                    integral_length: k,
                }
            })
            .collect()
    }

    pub fn boundary_count(&self) -> i64 {
        self.sides().iter().map(|s| s.integral_length).sum()
    }

    /// Interior point count from Pick's formula.
    pub fn interior_count(&self) -> i64 {
        (self.double_area() - self.boundary_count() + 2) / 2
    }

    /// Boundary lattice points, walking the sides counterclockwise.
    pub fn boundary_points(&self) -> Vec<LatticePoint> {
        let mut out = Vec::new();
        for side in self.sides() {
            let step = side.inner_normal.rot90().rot90().rot90();
            for j in 0..side.integral_length {
                out.push(side.start + j * step);
            }
        }
        out
    }

    /// Interior lattice points in row-major order.
    pub fn interior_points(&self) -> Vec<LatticePoint> {
        let (lo, hi) = self.bounding_box();
        let mut out = Vec::new();
        for y in lo.y..=hi.y {
            for x in lo.x..=hi.x {
                let p = LatticePoint::new(x, y);
                if self.locate(p) == Location::Interior {
                    out.push(p);
                }
            }
        }
        out
    }

    /// All lattice points of the closed polygon.
    pub fn lattice_points(&self) -> Vec<LatticePoint> {
        let (lo, hi) = self.bounding_box();
        let mut out = Vec::new();
        for y in lo.y..=hi.y {
            for x in lo.x..=hi.x {
                let p = LatticePoint::new(x, y);
                if self.locate(p) != Location::Exterior {
                    out.push(p);
                }
            }
        }
        out
    }

    pub fn bounding_box(&self) -> (LatticePoint, LatticePoint) {
        let xs = self.vertices.iter().map(|v| v.x);
        let ys = self.vertices.iter().map(|v| v.y);
        (
            LatticePoint::new(xs.clone().min().unwrap(), ys.clone().min().unwrap()),
            LatticePoint::new(xs.max().unwrap(), ys.max().unwrap()),
        )
    }

    pub fn locate(&self, p: LatticePoint) -> Location {
        let n = self.vertices.len();
        let mut on_edge = false;
        for i in 0..n {
            let a = self.vertices[i];
            let b = self.vertices[(i + 1) % n];
            let c = (b - a).cross(p - a);
            if c < 0 {
                return Location::Exterior;
            }
            if c == 0 {
                on_edge = true;
            }
        }
        if on_edge {
            Location::Boundary
        } else {
            Location::Interior
        }
    }

    /// The reduced tropical degree dual to the polygon: each side contributes
    /// its primitive outer normal with multiplicity equal to its lattice length.
    pub fn dual_degree(&self) -> TropicalDegree {
        let mut entries = BTreeMap::new();
        for side in self.sides() {
            *entries.entry(-side.inner_normal).or_insert(0) += side.integral_length as usize;
        }
        TropicalDegree::from_counts(entries)
    }

    /// Slopes allowed on edges of tropical curves dual to subdivisions of the
    /// polygon: quarter-turn rotations of nonzero differences of lattice points.
    pub fn admissible_slopes(&self) -> Vec<LatticePoint> {
        let pts = self.lattice_points();
        let mut set = std::collections::BTreeSet::new();
        for &a in &pts {
            for &b in &pts {
                if a != b {
                    set.insert((a - b).rot90());
                }
            }
        }
        set.into_iter().collect()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Location {
    Interior,
    Boundary,
    Exterior,
}

fn parse_int(s: &str) -> Result<i64> {
    s.trim()
        .parse()
        .map_err(|_| Error::Parse(format!("not an integer: {:?}", s.trim())))
}

/// Andrew's monotone chain; returns strict hull vertices counterclockwise.
fn convex_hull(points: &[LatticePoint]) -> Vec<LatticePoint> {
    let mut pts: Vec<LatticePoint> = points.to_vec();
    pts.sort();
    pts.dedup();
    if pts.len() < 3 {
        return pts;
    }
    let mut lower: Vec<LatticePoint> = Vec::new();
    for &p in &pts {
        while lower.len() >= 2
            && (lower[lower.len() - 1] - lower[lower.len() - 2]).cross(p - lower[lower.len() - 2])
                <= 0
        {
            lower.pop();
        }
        lower.push(p);
    }
    let mut upper: Vec<LatticePoint> = Vec::new();
    for &p in pts.iter().rev() {
        while upper.len() >= 2
            && (upper[upper.len() - 1] - upper[upper.len() - 2]).cross(p - upper[upper.len() - 2])
                <= 0
        {
            upper.pop();
        }
        upper.push(p);
    }
    lower.pop();
    upper.pop();
    lower.extend(upper);
    lower
}

/// Orders nonzero vectors by their angle in `[0, 2π)`.
fn angle_cmp(a: LatticePoint, b: LatticePoint) -> std::cmp::Ordering {
    let half = |v: LatticePoint| if v.y > 0 || (v.y == 0 && v.x > 0) { 0 } else { 1 };
    half(a).cmp(&half(b)).then_with(|| 0.cmp(&a.cross(b)))
}

/// Multiset of nonzero integer vectors summing to zero.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct TropicalDegree {
    /// Distinct vectors with their multiplicities, sorted by vector.
    pub entries: Vec<(LatticePoint, usize)>,
}

impl TropicalDegree {
    pub fn from_counts(counts: BTreeMap<LatticePoint, usize>) -> Self {
        Self {
            entries: counts.into_iter().filter(|(_, c)| *c > 0).collect(),
        }
    }

    pub fn from_vectors(vs: &[LatticePoint]) -> Self {
        let mut counts = BTreeMap::new();
        for &v in vs {
            *counts.entry(v).or_insert(0) += 1;
        }
        Self::from_counts(counts)
    }

    pub fn size(&self) -> usize {
        self.entries.iter().map(|(_, c)| c).sum()
    }

    pub fn sum(&self) -> LatticePoint {
        self.entries
            .iter()
            .fold(LatticePoint::ZERO, |acc, &(v, c)| acc + (c as i64) * v)
    }

    pub fn is_balanced(&self) -> bool {
        self.sum().is_zero()
    }

    pub fn is_reduced(&self) -> bool {
        self.entries.iter().all(|(v, _)| v.is_primitive())
    }

    pub fn multiplicity(&self, v: LatticePoint) -> usize {
        self.entries
            .iter()
            .find(|(w, _)| *w == v)
            .map(|(_, c)| *c)
            .unwrap_or(0)
    }

    /// All vectors with repetition, sorted.
    pub fn vectors(&self) -> Vec<LatticePoint> {
        self.entries
            .iter()
            .flat_map(|&(v, c)| std::iter::repeat(v).take(c))
            .collect()
    }
}

/// `dim V_{g,Δ} = |∂Δ ∩ M| + g - 1`.
pub fn severi_dimension(polygon: &LatticePolygon, genus: i64) -> i64 {
    polygon.boundary_count() + genus - 1
}

/// Total delta invariant `p_a - g`, with `p_a` the number of interior points.
pub fn delta_invariant(polygon: &LatticePolygon, genus: i64) -> i64 {
    polygon.interior_count() - genus
}

/// A full-rank sublattice of `Z^2` in Hermite normal form, spanned by
/// `(a, 0)` and `(b, d)` with `a, d > 0` and `0 <= b < a`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct Sublattice {
    pub basis: [LatticePoint; 2],
    pub index: i64,
}

impl Sublattice {
    pub fn hnf(a: i64, b: i64, d: i64) -> Self {
        debug_assert!(a > 0 && d > 0 && (0..a).contains(&b));
        Self {
            basis: [LatticePoint::new(a, 0), LatticePoint::new(b, d)],
            index: a * d,
        }
    }

    pub fn contains(&self, p: LatticePoint) -> bool {
        let [u, w] = self.basis;
        if p.y % w.y != 0 {
            return false;
        }
        let rest = p.x - (p.y / w.y) * w.x;
        rest % u.x == 0
    }
}

/// A sublattice passing conditions (a) and (b), recorded with its interior count.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct QualifyingSublattice {
    pub sublattice: Sublattice,
    /// Translation placing the lattice through a boundary point of the polygon.
    pub origin: LatticePoint,
    pub interior_points: i64,
}

/// Affine sublattices `M` with `∂Δ ∩ M = ∂Δ ∩ Z^2` and `|Δ° ∩ M| >= g`.
///
/// `M` is translated so that the first boundary point is in it; linear
/// sublattices are enumerated in Hermite normal form up to index `2·Area(Δ)`.
pub fn qualifying_sublattices(
    polygon: &LatticePolygon,
    genus: i64,
) -> Result<Vec<QualifyingSublattice>> {
    if genus < 1 {
        return Err(Error::InvalidArgument(format!("genus must be at least 1, got {genus}")));
    }
    let boundary = polygon.boundary_points();
    let origin = boundary[0];
    let shifts: Vec<LatticePoint> = boundary.iter().map(|&p| p - origin).collect();
    let interior: Vec<LatticePoint> = polygon.interior_points().iter().map(|&p| p - origin).collect();
    let max_index = polygon.double_area();
    let mut out = Vec::new();
    for index in 1..=max_index {
        for a in (1..=index).filter(|a| index % a == 0) {
            let d = index / a;
            for b in 0..a {
                let lattice = Sublattice::hnf(a, b, d);
                if !shifts.iter().all(|&p| lattice.contains(p)) {
                    continue;
                }
                let count = interior.iter().filter(|&&p| lattice.contains(p)).count() as i64;
                if count >= genus {
                    out.push(QualifyingSublattice {
                        sublattice: lattice,
                        origin,
                        interior_points: count,
                    });
                }
            }
        }
    }
    Ok(out)
}

/// Lower bound for the number of irreducible components of `V^irr_{g,Δ}`:
/// the number of qualifying sublattices.
pub fn component_lower_bound(
    polygon: &LatticePolygon,
    genus: i64,
) -> Result<(usize, Vec<Sublattice>)> {
    let found = qualifying_sublattices(polygon, genus)?;
    Ok((found.len(), found.into_iter().map(|q| q.sublattice).collect()))
}

/// Weighted lower bound for the kite `Δ_{k,k'}`.
///
/// A qualifying sublattice of odd index contributes the number of integers
/// `0 <= κ <= min(|Δ°∩M| - g, g)` with the parity of `|Δ°∩M| - g`; one of even
/// index contributes 1.
pub fn kite_lower_bound(k: i64, k_prime: i64, genus: i64) -> Result<i64> {
    if k < 0 || k_prime < k || k_prime <= 0 {
        return Err(Error::InvalidArgument(format!(
            "kite parameters need 0 <= k <= k' and k' > 0, got k={k}, k'={k_prime}"
        )));
    }
    let polygon = LatticePolygon::kite(k, k_prime)?;
    let mut total = 0;
    for q in qualifying_sublattices(&polygon, genus)? {
        total += kite_multiplicity(q.sublattice.index, q.interior_points, genus);
    }
    Ok(total)
}

fn kite_multiplicity(index: i64, interior: i64, genus: i64) -> i64 {
    if index % 2 == 0 {
        return 1;
    }
    let excess = interior - genus;
    let top = excess.min(genus);
    (0..=top).filter(|kappa| (kappa - excess) % 2 == 0).count() as i64
}
