//! Explicit rational curves in toric surfaces and their tropicalizations.
//!
//! A curve is given by side data: for each side `i` of the polygon, `k_i`
//! distinct points `p_{i,j}` of the projective line, plus a character `χ`.
//! The parametrization sends `t` to the point with monomial coordinates
//! `x^m = χ(m) Π (t - p_{i,j})^{(n_i, m)}`, where `n_i` is the primitive inner
//! normal of side `i` and factors with `p_{i,j} = ∞` are omitted.

pub mod poly;
pub mod scalar;

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};

pub use poly::Poly;
pub use scalar::ValuedScalar;

use crate::error::{Error, Result};
use crate::lattice::{LatticePoint, LatticePolygon};
use crate::rational::{q_int, QPoint, Q};
use crate::tropical::{CombinatorialType, Graph, ParamTropicalCurve};

/// A point of the projective line over some field.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum PointOnLine<T> {
    Finite(T),
    Infinity,
}

impl<T> PointOnLine<T> {
    pub fn finite(&self) -> Option<&T> {
        match self {
            PointOnLine::Finite(v) => Some(v),
            PointOnLine::Infinity => None,
        }
    }
}

impl<T: fmt::Display> fmt::Display for PointOnLine<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PointOnLine::Finite(v) => write!(f, "{v}"),
            PointOnLine::Infinity => write!(f, "inf"),
        }
    }
}

/// Parses `inf` (also `oo` or `∞`) or a finite value.
pub fn parse_point<T>(text: &str, finite: impl Fn(&str) -> Result<T>) -> Result<PointOnLine<T>> {
    match text.trim() {
        "inf" | "oo" | "∞" | "infinity" => Ok(PointOnLine::Infinity),
        other => Ok(PointOnLine::Finite(finite(other)?)),
    }
}

/// Scalars usable as side points and character values.
pub trait Scalar: Clone + PartialEq + fmt::Debug {
    fn is_zero_scalar(&self) -> bool;
}

impl Scalar for Q {
    fn is_zero_scalar(&self) -> bool {
        self.is_zero()
    }
}

impl Scalar for ValuedScalar {
    fn is_zero_scalar(&self) -> bool {
        self.is_zero()
    }
}

/// Side data and character of a genus-0 curve.
#[derive(Clone, Debug, PartialEq)]
pub struct RationalCurveSpec<T> {
    pub polygon: LatticePolygon,
    /// One list per side, in the polygon's side order.
    pub side_points: Vec<Vec<PointOnLine<T>>>,
    /// `χ(e_1)` and `χ(e_2)`.
    pub character: [T; 2],
}

impl<T: Scalar> RationalCurveSpec<T> {
    pub fn new(
        polygon: LatticePolygon,
        side_points: Vec<Vec<PointOnLine<T>>>,
        character: [T; 2],
    ) -> Result<Self> {
        let sides = polygon.sides();
        if side_points.len() != sides.len() {
            return Err(Error::InvalidArgument(format!(
                "polygon has {} sides but {} point lists were given",
                sides.len(),
                side_points.len()
            )));
        }
        for (side, pts) in sides.iter().zip(&side_points) {
            if pts.len() as i64 != side.integral_length {
                return Err(Error::InvalidArgument(format!(
                    "side {} has lattice length {} but {} points",
                    side.index,
                    side.integral_length,
                    pts.len()
                )));
            }
        }
        let all: Vec<&PointOnLine<T>> = side_points.iter().flatten().collect();
        for i in 0..all.len() {
            for j in 0..i {
                if all[i] == all[j] {
                    return Err(Error::InvalidArgument("side points must be distinct".into()));
                }
            }
        }
        if character.iter().any(|c| c.is_zero_scalar()) {
            return Err(Error::InvalidArgument("character values must be nonzero".into()));
        }
        let total = sides
            .iter()
            .fold(LatticePoint::ZERO, |acc, s| acc + s.integral_length * s.inner_normal);
        assert!(total.is_zero(), "side normals weighted by length sum to zero");
        Ok(Self { polygon, side_points, character })
    }

    /// Every side point with the inner normal of its side, in side order.
    pub fn labelled_points(&self) -> Vec<(PointOnLine<T>, LatticePoint)> {
        self.polygon
            .sides()
            .iter()
            .zip(&self.side_points)
            .flat_map(|(side, pts)| pts.iter().map(move |p| (p.clone(), side.inner_normal)))
            .collect()
    }
}

/// `div(f^*(x^m)) = Σ (n_i, m) p_{i,j}`, with zero coefficients dropped.
///
/// When `∞` is not a side point its coefficient is `-Σ (n_i, m) k_i = 0`, so
/// the divisor always has degree zero.
pub fn pullback_divisor<T: Scalar>(
    spec: &RationalCurveSpec<T>,
    m: LatticePoint,
) -> Vec<(PointOnLine<T>, i64)> {
    spec.labelled_points()
        .into_iter()
        .map(|(p, n)| (p, n.dot(m)))
        .filter(|(_, c)| *c != 0)
        .collect()
}

/// Field in which non-immersion points are sought.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Field {
    Rationals,
    Prime(u64),
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Field::Rationals => write!(f, "Q"),
            Field::Prime(p) => write!(f, "F_{p}"),
        }
    }
}

/// The numerators of both coordinates of `Σ n_p / (t - p)` over the finite
/// side points, after clearing denominators.
pub fn log_derivative_numerators(spec: &RationalCurveSpec<Q>) -> [Poly; 2] {
    let pts: Vec<(Q, LatticePoint)> = spec
        .labelled_points()
        .into_iter()
        .filter_map(|(p, n)| p.finite().map(|v| (v.clone(), n)))
        .collect();
    let mut out = [Poly::zero(), Poly::zero()];
    for (i, (_, n)) in pts.iter().enumerate() {
        let others = pts
            .iter()
            .enumerate()
            .filter(|(j, _)| *j != i)
            .fold(Poly::one(), |acc, (_, (q, _))| acc.mul(&Poly::linear_root(q)));
        out[0] = out[0].add(&others.scale(&q_int(n.x)));
        out[1] = out[1].add(&others.scale(&q_int(n.y)));
    }
    out
}

/// Resultant of the two log-derivative numerators. Over `F_p` with `p` not
/// dividing it (and the points staying distinct and finite), there is no
/// finite non-immersion point.
pub fn numerator_resultant(spec: &RationalCurveSpec<Q>) -> Q {
    let [a, b] = log_derivative_numerators(spec);
    a.resultant(&b)
}

/// Points `t` of the line, other than side points, where the differential of
/// the parametrization vanishes.
///
/// Over `F_p` every field element is tested; results are written as the
/// representative of least absolute value, so `2` in `F_3` appears as `-1`.
/// Over `Q` only rational points are reported.
pub fn non_immersion_points(
    spec: &RationalCurveSpec<Q>,
    field: Field,
) -> Result<Vec<PointOnLine<Q>>> {
    let labelled = spec.labelled_points();
    let has_infinity = labelled.iter().any(|(p, _)| *p == PointOnLine::Infinity);
    let finite: Vec<(Q, LatticePoint)> = labelled
        .iter()
        .filter_map(|(p, n)| p.finite().map(|v| (v.clone(), *n)))
        .collect();
    let mut out = Vec::new();
    match field {
        Field::Rationals => {
            let [a, b] = log_derivative_numerators(spec);
            let g = a.gcd(&b);
            for root in g.rational_roots() {
                if finite.iter().all(|(p, _)| *p != root) {
                    out.push(PointOnLine::Finite(root));
                }
            }
            if !has_infinity {
                let s = finite.iter().fold((Q::zero(), Q::zero()), |acc, (p, n)| {
                    (acc.0 + p * q_int(n.x), acc.1 + p * q_int(n.y))
                });
                if s.0.is_zero() && s.1.is_zero() {
                    out.push(PointOnLine::Infinity);
                }
            }
        }
        Field::Prime(p) => {
            if !is_prime(p) {
                return Err(Error::InvalidArgument(format!("{p} is not prime")));
            }
            let pi = p as i128;
            let mut reduced = Vec::new();
            for (q, n) in &finite {
                let r = reduce_mod(q, p)?;
                if reduced.iter().any(|(x, _)| *x == r) {
                    return Err(Error::InvalidArgument(format!(
                        "side points collide modulo {p}"
                    )));
                }
                reduced.push((r, *n));
            }
            for t in 0..pi {
                if reduced.iter().any(|(x, _)| *x == t) {
                    continue;
                }
                let (mut sx, mut sy) = (0i128, 0i128);
                for (x, n) in &reduced {
                    let inv = mod_inverse((t - x).rem_euclid(pi), pi);
                    sx = (sx + n.x as i128 * inv).rem_euclid(pi);
                    sy = (sy + n.y as i128 * inv).rem_euclid(pi);
                }
                if sx == 0 && sy == 0 {
                    out.push(PointOnLine::Finite(q_int(symmetric(t, pi) as i64)));
                }
            }
            if !has_infinity {
                let (mut sx, mut sy) = (0i128, 0i128);
                for (x, n) in &reduced {
                    sx = (sx + n.x as i128 * x).rem_euclid(pi);
                    sy = (sy + n.y as i128 * x).rem_euclid(pi);
                }
                if sx == 0 && sy == 0 {
                    out.push(PointOnLine::Infinity);
                }
            }
        }
    }
    Ok(out)
}

pub fn is_prime(p: u64) -> bool {
    p >= 2 && (2..).take_while(|d| d * d <= p).all(|d| p % d != 0)
}

fn reduce_mod(q: &Q, p: u64) -> Result<i128> {
    let modulus = BigInt::from(p);
    let num = ((q.numer() % &modulus) + &modulus) % &modulus;
    let den = ((q.denom() % &modulus) + &modulus) % &modulus;
    if den.is_zero() {
        return Err(Error::InvalidArgument(format!("{q} has no reduction modulo {p}")));
    }
    let num: i128 = num.try_into().expect("reduced below p");
    let den: i128 = den.try_into().expect("reduced below p");
    Ok(num * mod_inverse(den, p as i128) % p as i128)
}

fn mod_inverse(a: i128, p: i128) -> i128 {
    let (mut r0, mut r1) = (a.rem_euclid(p), p);
    let (mut s0, mut s1) = (1i128, 0i128);
    while r1 != 0 {
        let q = r0 / r1;
        (r0, r1) = (r1, r0 - q * r1);
        (s0, s1) = (s1, s0 - q * s1);
    }
    s0.rem_euclid(p)
}

fn symmetric(t: i128, p: i128) -> i128 {
    if 2 * t > p {
        t - p
    } else {
        t
    }
}

/// A cuspidal example: the triangle `(0,0), (2,1), (1,2)` with
/// side points `0`, `1`, `∞` and trivial character.
pub fn cuspidal_triangle_spec() -> RationalCurveSpec<Q> {
    let polygon = LatticePolygon::parse_inline("0,0;2,1;1,2").expect("valid triangle");
    RationalCurveSpec::new(
        polygon,
        vec![
            vec![PointOnLine::Finite(q_int(0))],
            vec![PointOnLine::Finite(q_int(1))],
            vec![PointOnLine::Infinity],
        ],
        [Q::one(), Q::one()],
    )
    .expect("valid spec")
}

/// The line `x + μ y = z` parametrized by `t = z/y`, with the marked points
/// of the baby example: `t = 1` (contracted), then the side points `∞`,
/// `0` and `μ` on the sides `y = 0`, `z = 0` and `x = 0`.
pub fn baby_example(mu: ValuedScalar) -> Result<(RationalCurveSpec<ValuedScalar>, Vec<PointOnLine<ValuedScalar>>)> {
    let polygon = LatticePolygon::degree_triangle(1)?;
    let spec = RationalCurveSpec::new(
        polygon,
        vec![
            vec![PointOnLine::Infinity],
            vec![PointOnLine::Finite(ValuedScalar::zero())],
            vec![PointOnLine::Finite(mu)],
        ],
        [ValuedScalar::one(), ValuedScalar::one()],
    )?;
    Ok((spec, vec![PointOnLine::Finite(ValuedScalar::one())]))
}

/// Monomial coordinates `(x^{e_1}, x^{e_2})` of the image of a finite `t`
/// that is not a side point.
pub fn evaluate_map(
    spec: &RationalCurveSpec<ValuedScalar>,
    t: &ValuedScalar,
) -> Result<[ValuedScalar; 2]> {
    let mut coords = spec.character.clone();
    for (p, n) in spec.labelled_points() {
        if let PointOnLine::Finite(p) = p {
            let diff = t.sub(&p);
            if diff.is_zero() {
                return Err(Error::MarkCollision);
            }
            coords[0] = coords[0].mul(&diff.pow(n.x)?);
            coords[1] = coords[1].mul(&diff.pow(n.y)?);
        }
    }
    Ok(coords)
}

/// `-Val` of a torus point.
pub fn trop_of(coords: &[ValuedScalar; 2]) -> QPoint {
    let v = |c: &ValuedScalar| q_int(-c.valuation().expect("torus coordinates are nonzero"));
    QPoint::new(v(&coords[0]), v(&coords[1]))
}

struct TreeBuilder<'a> {
    values: &'a [ValuedScalar],
    /// Inner normal for side points, `None` for extra marks.
    normals: &'a [Option<LatticePoint>],
    leg_of: &'a [usize],
    shift: QPoint,
    vertices: Vec<QPoint>,
    edges: Vec<(usize, usize, LatticePoint, Q)>,
    legs: Vec<(usize, usize)>,
}

impl TreeBuilder<'_> {
    fn val(&self, i: usize, j: usize) -> i64 {
        self.values[i]
            .sub(&self.values[j])
            .valuation()
            .expect("points are distinct")
    }

    /// `h(D(c, ρ)) = -Val(χ) - Σ n_p min(ρ, ν(c - p))` over finite side points.
    fn position(&self, center: usize, radius: i64) -> QPoint {
        let mut h = self.shift.clone();
        for (p, n) in self.normals.iter().enumerate() {
            if let Some(n) = n {
                let d = if p == center { radius } else { radius.min(self.val(center, p)) };
                h = h.offset(&q_int(-d), *n);
            }
        }
        h
    }

    /// Adds the vertex for the disc spanned by `set` and returns its index.
    fn disc(&mut self, set: &[usize]) -> usize {
        let radius = self.radius(set);
        let v = self.vertices.len();
        self.vertices.push(self.position(set[0], radius));
        let mut classes: Vec<Vec<usize>> = Vec::new();
        for &i in set {
            match classes.iter_mut().find(|c| self.val(c[0], i) > radius) {
                Some(c) => c.push(i),
                None => classes.push(vec![i]),
            }
        }
        for class in classes {
            if class.len() == 1 {
                self.legs.push((self.leg_of[class[0]], v));
            } else {
                let child_radius = self.radius(&class);
                let slope = class
                    .iter()
                    .filter_map(|&i| self.normals[i])
                    .fold(LatticePoint::ZERO, |acc, n| acc - n);
                let w = self.disc(&class);
                self.edges.push((v, w, slope, q_int(child_radius - radius)));
            }
        }
        v
    }

    fn radius(&self, set: &[usize]) -> i64 {
        let mut r = i64::MAX;
        for a in 0..set.len() {
            for b in 0..a {
                r = r.min(self.val(set[a], set[b]));
            }
        }
        r
    }
}

/// Tropicalization of a genus-0 curve given by side data, with extra marked
/// points. Legs are ordered as the extra marks first, then the side points in
/// side order.
///
/// The tree has one vertex for every disc `D(a_i, ν(a_i - a_j))` spanned by
/// two or more finite special points; the leg of `∞` hangs from the largest
/// disc. Edge lengths are differences of radii.
pub fn tropicalize_rational(
    spec: &RationalCurveSpec<ValuedScalar>,
    marks: &[PointOnLine<ValuedScalar>],
) -> Result<ParamTropicalCurve> {
    let sides = spec.labelled_points();
    for m in marks {
        if sides.iter().any(|(p, _)| p == m) {
            return Err(Error::MarkCollision);
        }
    }
    for i in 0..marks.len() {
        if marks[..i].contains(&marks[i]) {
            return Err(Error::MarkCollision);
        }
    }
    let mut leg_points: Vec<(PointOnLine<ValuedScalar>, Option<LatticePoint>)> =
        marks.iter().map(|m| (m.clone(), None)).collect();
    leg_points.extend(sides.into_iter().map(|(p, n)| (p, Some(n))));
    if leg_points.len() < 3 {
        return Err(Error::InvalidArgument("need at least three special points".into()));
    }
    let mut values = Vec::new();
    let mut normals = Vec::new();
    let mut leg_of = Vec::new();
    let mut infinity_leg = None;
    for (i, (p, n)) in leg_points.iter().enumerate() {
        match p {
            PointOnLine::Finite(v) => {
                values.push(v.clone());
                normals.push(*n);
                leg_of.push(i);
            }
            PointOnLine::Infinity => infinity_leg = Some(i),
        }
    }
    let chi = &spec.character;
    let shift = QPoint::new(
        q_int(-chi[0].valuation().expect("nonzero character")),
        q_int(-chi[1].valuation().expect("nonzero character")),
    );
    let mut b = TreeBuilder {
        values: &values,
        normals: &normals,
        leg_of: &leg_of,
        shift,
        vertices: Vec::new(),
        edges: Vec::new(),
        legs: Vec::new(),
    };
    let all: Vec<usize> = (0..values.len()).collect();
    let root = b.disc(&all);
    let TreeBuilder { vertices, mut edges, mut legs, .. } = b;
    let mut vertices: Vec<Option<QPoint>> = vertices.into_iter().map(Some).collect();
    match infinity_leg {
        Some(l) => legs.push((l, root)),
        None => smooth_root(root, &mut vertices, &mut edges, &mut legs),
    }
    // Renumber surviving vertices.
    let mut index = vec![usize::MAX; vertices.len()];
    let mut positions = Vec::new();
    for (v, p) in vertices.into_iter().enumerate() {
        if let Some(p) = p {
            index[v] = positions.len();
            positions.push(p);
        }
    }
    legs.sort();
    let slope_of_leg = |l: usize| -> LatticePoint {
        leg_points[l].1.map(|n| -n).unwrap_or(LatticePoint::ZERO)
    };
    let graph = Graph::new(
        positions.len(),
        edges.iter().map(|e| (index[e.0], index[e.1])).collect(),
        legs.iter().map(|&(_, v)| index[v]).collect(),
    )?;
    let ty = CombinatorialType::new(
        graph,
        vec![0; positions.len()],
        edges.iter().map(|e| e.2).collect(),
        legs.iter().map(|&(l, _)| slope_of_leg(l)).collect(),
    )?;
    ParamTropicalCurve::new(ty, edges.into_iter().map(|e| e.3).collect(), positions)
}

/// Removes a 2-valent root, joining its two neighbours.
fn smooth_root(
    root: usize,
    vertices: &mut [Option<QPoint>],
    edges: &mut Vec<(usize, usize, LatticePoint, Q)>,
    legs: &mut [(usize, usize)],
) {
    let at_root: Vec<usize> = (0..edges.len()).filter(|&e| edges[e].0 == root).collect();
    let leg_ids: Vec<usize> = (0..legs.len()).filter(|&l| legs[l].1 == root).collect();
    if at_root.len() + leg_ids.len() != 2 {
        return;
    }
    vertices[root] = None;
    match (at_root.as_slice(), leg_ids.as_slice()) {
        ([e1, e2], []) => {
            let (a, b) = (edges[*e1].clone(), edges[*e2].clone());
            let joined = (a.1, b.1, b.2, &a.3 + &b.3);
            let (hi, lo) = ((*e1).max(*e2), (*e1).min(*e2));
            edges.remove(hi);
            edges[lo] = joined;
        }
        ([e], [l]) => {
            let child = edges[*e].1;
            legs[*l].1 = child;
            edges.remove(*e);
        }
        _ => unreachable!("a disc with two or more points has a child or two legs"),
    }
}

/// Shorthand used by tests and the CLI: `μ = s^k` for `k >= 1`, and
/// `μ = -1` for `k = 0` so that `μ` stays away from `0` and `1`.
pub fn mu_with_valuation(k: u32) -> ValuedScalar {
    if k == 0 {
        ValuedScalar::constant(-Q::one())
    } else {
        ValuedScalar::monomial(Q::one(), k as usize)
    }
}
