//! Point-guided search for parametrized tropical curves through points.
//!
//! For points in general position every component of a counted curve minus
//! its marked points is a tree with exactly one unbounded end. Cutting at a
//! marked point `p` therefore splits a rational curve into two rooted pieces,
//! and a rooted piece decomposes further: the part next to `p` is a tree whose
//! leaves are `p` and some marked points and whose single output is a leg.
//! Beyond every such marked point hangs another rooted piece. The search
//! follows this decomposition, merging rays where they meet, and memoizes on
//! (set of points, multiset of legs).
//!
//! Curves of positive genus are cut open at marked points lying on cycles.
//! The two halves of a cut edge become a root or a *pseudo point*: a copy of
//! the marked point whose ray is fixed in advance. The same curve is found
//! once for each admissible cut, so callers deduplicate.

use std::cell::RefCell;
use std::collections::{HashMap, HashSet};
use std::rc::Rc;
use std::sync::Arc;

use rustc_hash::{FxHashMap, FxHashSet};

use crate::error::{Error, Result};
use crate::lattice::{LatticePoint, LatticePolygon, TropicalDegree};
use crate::rational::{QPoint, Q};
use crate::tropical::{CombinatorialType, ParamTropicalCurve};

/// Edge directions a curve dual to a subdivision of a polygon may use.
///
/// `cycle` holds the lex-positive directions an edge lying on a cycle can
/// have. Such an edge is not a bridge, so its dual segment cannot cut the
/// polygon in two and must end at an interior lattice point.
#[derive(Clone, Debug)]
pub struct Slopes {
    admissible: FxHashSet<LatticePoint>,
    cycle: Vec<LatticePoint>,
}

impl Slopes {
    pub fn of_polygon(polygon: &LatticePolygon) -> Self {
        let all = polygon.lattice_points();
        let interior = polygon.interior_points();
        Self::from_points(&all, &interior)
    }

    /// Slopes for the Newton polygon of `degree`, which may be a segment.
    pub fn of_degree(degree: &TropicalDegree) -> Self {
        match LatticePolygon::from_degree(degree) {
            Ok(p) => Self::of_polygon(&p),
            Err(_) => {
                let side = degree.vectors().into_iter().find(|v| v.is_lex_positive());
                let pts: Vec<LatticePoint> = match side {
                    Some(v) => {
                        let k = degree.multiplicity(v) as i64;
                        let e = v.rot90();
                        (0..=k).map(|j| LatticePoint::new(j * e.x, j * e.y)).collect()
                    }
                    None => vec![LatticePoint::ZERO],
                };
                Self::from_points(&pts, &[])
            }
        }
    }

    fn from_points(all: &[LatticePoint], interior: &[LatticePoint]) -> Self {
        let mut admissible = FxHashSet::default();
        for &a in all {
            for &b in all {
                if a != b {
                    admissible.insert((a - b).rot90());
                }
            }
        }
        let mut cycle = std::collections::BTreeSet::new();
        for &p in interior {
            for &m in all {
                if m != p {
                    let v = (m - p).rot90();
                    cycle.insert(if v.is_lex_positive() { v } else { -v });
                }
            }
        }
        Slopes { admissible, cycle: cycle.into_iter().collect() }
    }

    pub fn contains(&self, v: LatticePoint) -> bool {
        self.admissible.contains(&v)
    }

    pub fn cycle_slopes(&self) -> &[LatticePoint] {
        &self.cycle
    }
}

/// A configuration landed on a wall of the space of configurations.
/// Reasons a partial curve sits on a wall, as bits.
mod wall {
    pub const TOUCHING: u8 = 1;
    pub const OVERFLOW: u8 = 2;
    pub const ON_MARK: u8 = 4;
    pub const SHARED_START: u8 = 8;
}

fn degenerate(flags: u8) -> Error {
    let mut why = Vec::new();
    if flags & wall::TOUCHING != 0 {
        why.push("a vertex lies on another ray");
    }
    if flags & wall::OVERFLOW != 0 {
        why.push("coordinates outgrew 128-bit integers");
    }
    if flags & wall::ON_MARK != 0 {
        why.push("a vertex lies on a marked point");
    }
    if flags & wall::SHARED_START != 0 {
        why.push("two rays start at the same point");
    }
    Error::Degenerate(format!("a curve through the points is special: {}", why.join(", ")))
}

#[derive(Clone, Debug)]
enum PointKind {
    Real,
    /// Copy of real point `of` starting a ray in direction `ray`.
    Pseudo { of: usize, ray: LatticePoint },
}

#[derive(Clone, Debug)]
struct SearchPoint {
    location: QPoint,
    exact: Frac,
    kind: PointKind,
}

/// A rational point `(x / den, y / den)` in lowest terms with `den > 0`.
/// Ray intersections run on these instead of big rationals; every
/// operation is checked and an overflow is reported as `None`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
struct Frac {
    x: i128,
    y: i128,
    den: i128,
}

fn gcd_i128(mut a: i128, mut b: i128) -> i128 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a.abs()
}

impl Frac {
    fn new(x: i128, y: i128, den: i128) -> Option<Self> {
        let (x, y, den) = if den < 0 { (x.checked_neg()?, y.checked_neg()?, den.checked_neg()?) } else { (x, y, den) };
        let g = gcd_i128(gcd_i128(x, y), den);
        if g == 0 {
            return None;
        }
        Some(Self { x: x / g, y: y / g, den: den / g })
    }

    fn from_q(p: &QPoint) -> Option<Self> {
        use num_traits::ToPrimitive;
        let den = num_integer::Integer::lcm(p.x.denom(), p.y.denom());
        let x = (p.x.numer() * (&den / p.x.denom())).to_i128()?;
        let y = (p.y.numer() * (&den / p.y.denom())).to_i128()?;
        Self::new(x, y, den.to_i128()?)
    }

    fn approx(&self) -> [f64; 2] {
        let den = self.den as f64;
        [self.x as f64 / den, self.y as f64 / den]
    }

    fn to_q(self) -> QPoint {
        let den = num_bigint::BigInt::from(self.den);
        QPoint::new(
            Q::new(num_bigint::BigInt::from(self.x), den.clone()),
            Q::new(num_bigint::BigInt::from(self.y), den),
        )
    }
}

/// Where two rays meet: `Ok(None)` when they do not, `Err(())` on overflow.
/// The flag in the result marks a meeting at a ray's starting point.
fn meet(a: Frac, v1: LatticePoint, b: Frac, v2: LatticePoint) -> std::result::Result<Option<(Frac, bool)>, ()> {
    let m = |p: i128, q: i128| p.checked_mul(q).ok_or(());
    let det = v1.cross(v2) as i128;
    // b - a over the common denominator a.den * b.den.
    let dx = m(b.x, a.den)?.checked_sub(m(a.x, b.den)?).ok_or(())?;
    let dy = m(b.y, a.den)?.checked_sub(m(a.y, b.den)?).ok_or(())?;
    let cross = |v: LatticePoint| -> std::result::Result<i128, ()> {
        m(dx, v.y as i128)?.checked_sub(m(dy, v.x as i128)?).ok_or(())
    };
    let (n1, n2) = (cross(v2)?, cross(v1)?);
    if det == 0 {
        // Parallel rays meet only when they lie on one line and point at
        // each other.
        let along = m(dx, v1.x as i128)?.checked_add(m(dy, v1.y as i128)?).ok_or(())?;
        if n2 != 0 || v1.dot(v2) > 0 || along < 0 {
            return Ok(None);
        }
        return Ok(Some((a, true)));
    }
    // t1 = n1 / (den * det) and t2 = n2 / (den * det) with den > 0.
    if n1.signum() * det.signum() < 0 || n2.signum() * det.signum() < 0 {
        return Ok(None);
    }
    let touching = n1 == 0 || n2 == 0;
    let dd = m(a.den, b.den)?;
    let den = m(dd, det)?;
    let x = m(m(a.x, b.den)?, det)?.checked_add(m(n1, v1.x as i128)?).ok_or(())?;
    let y = m(m(a.y, b.den)?, det)?.checked_add(m(n1, v1.y as i128)?).ok_or(())?;
    Ok(Some((Frac::new(x, y, den).ok_or(())?, touching)))
}

#[derive(Debug)]
enum InTree {
    /// Ray leaving the root of the enclosing piece.
    Root { dir: LatticePoint },
    Pseudo { point: usize, dir: LatticePoint },
    /// Ray leaving a marked point, with the piece hanging on its far side.
    Mark { point: usize, dir: LatticePoint, beyond: Arc<SubCurve> },
    Merge { left: Arc<InTree>, right: Arc<InTree>, at: Frac, dir: LatticePoint },
}

impl InTree {
    /// The ray leaving the cut point, or the pseudo copy of a cut point.
    fn is_cut_half(&self) -> bool {
        matches!(self, InTree::Root { .. } | InTree::Pseudo { .. })
    }
}

/// A partial in-tree together with its outgoing ray.
#[derive(Clone, Debug)]
struct Partial {
    tree: Arc<InTree>,
    start: Frac,
    /// `start` rounded to floating point, used only to skip pairs of rays
    /// that clearly miss each other.
    near: [f64; 2],
    dir: LatticePoint,
    mult: u64,
    flagged: u8,
}

/// A rooted piece: leaves point `root` in direction `dir` and passes through
/// its points. The output of `tree` is a leg.
#[derive(Debug)]
struct SubCurve {
    root: usize,
    dir: LatticePoint,
    tree: Arc<InTree>,
    mult: u64,
    flagged: u8,
}

/// A multiset of legs: byte `i` counts copies of direction `i`.
type DKey = u64;

const MAX_DIRECTIONS: usize = 8;

fn dcount(d: DKey, i: usize) -> usize {
    (d >> (8 * i) & 0xff) as usize
}

fn dsize(d: DKey) -> usize {
    (0..MAX_DIRECTIONS).map(|i| dcount(d, i)).sum()
}

/// All `d2 <= d` (bytewise) with `dsize(d2) == size`.
fn sub_multisets(d: DKey, size: usize) -> Vec<DKey> {
    fn rec(d: DKey, i: usize, left: usize, cur: DKey, out: &mut Vec<DKey>) {
        if left == 0 {
            out.push(cur);
            return;
        }
        if i == MAX_DIRECTIONS {
            return;
        }
        let rest: usize = (i + 1..MAX_DIRECTIONS).map(|j| dcount(d, j)).sum();
        let lo = left.saturating_sub(rest);
        let hi = dcount(d, i).min(left);
        for c in lo..=hi {
            rec(d, i + 1, left - c, cur | (c as u64) << (8 * i), out);
        }
    }
    let mut out = Vec::new();
    if size <= dsize(d) {
        rec(d, 0, size, 0, &mut out);
    }
    out
}

/// `a <= b` in every byte. Counts stay below 128.
fn dle(a: DKey, b: DKey) -> bool {
    const HIGH: u64 = 0x8080_8080_8080_8080;
    ((b | HIGH) - a) & HIGH == HIGH
}

/// Nonempty results for one point set, keyed by the multiset of legs and
/// sorted by it.
type ByLegs<T> = Rc<Vec<(DKey, Vec<T>)>>;

fn lookup<T>(table: &ByLegs<T>, d: DKey) -> &[T] {
    match table.binary_search_by_key(&d, |e| e.0) {
        Ok(i) => &table[i].1,
        Err(_) => &[],
    }
}

fn collect_by_legs<T>(map: FxHashMap<DKey, Vec<T>>) -> ByLegs<T> {
    let mut v: Vec<_> = map.into_iter().filter(|e| !e.1.is_empty()).collect();
    v.sort_by_key(|e| e.0);
    Rc::new(v)
}

struct Search<'a> {
    points: Vec<SearchPoint>,
    real_count: usize,
    pseudo_mask: u64,
    /// The cut point and the bit of its pseudo copy. Marked points below
    /// the cut point may not lie between them: each curve is then found
    /// only when cut at the lowest marked point on a cycle.
    cut: Option<(usize, u64)>,
    dirs: Vec<LatticePoint>,
    /// The legs of the whole curve; every piece uses a sub-multiset.
    full: DKey,
    admissible: &'a Slopes,
    memo_g: RefCell<FxHashMap<(u64, usize), ByLegs<Arc<SubCurve>>>>,
    memo_v: RefCell<FxHashMap<(usize, LatticePoint, u64), ByLegs<Partial>>>,
    memo_w: RefCell<FxHashMap<u64, ByLegs<Partial>>>,
}

impl<'a> Search<'a> {
    fn new(points: &[QPoint], degree: &TropicalDegree, admissible: &'a Slopes) -> Result<Self> {
        if degree.entries.len() > MAX_DIRECTIONS || degree.entries.iter().any(|e| e.1 > 127) {
            return Err(Error::InvalidArgument(format!(
                "the search supports at most {MAX_DIRECTIONS} leg directions with at most 127 legs each"
            )));
        }
        if points.len() > 64 {
            return Err(Error::InvalidArgument("at most 64 marked points are supported".into()));
        }
        let dirs = degree.entries.iter().map(|e| e.0).collect();
        let full = degree
            .entries
            .iter()
            .enumerate()
            .fold(0, |acc, (i, e)| acc | (e.1 as u64) << (8 * i));
        Ok(Self {
            points: points
                .iter()
                .map(|p| {
                    let exact = Frac::from_q(p).ok_or_else(|| {
                        Error::InvalidArgument(format!("point {p} is too large for the search"))
                    })?;
                    Ok(SearchPoint { location: p.clone(), exact, kind: PointKind::Real })
                })
                .collect::<Result<_>>()?,
            real_count: points.len(),
            pseudo_mask: 0,
            cut: None,
            dirs,
            full,
            admissible,
            memo_g: RefCell::default(),
            memo_v: RefCell::default(),
            memo_w: RefCell::default(),
        })
    }

    /// Replaces the pseudo points and forgets every memo entry that used
    /// the old ones. Entries over real points only stay valid.
    fn set_pseudo(&mut self, pseudo: &[(usize, LatticePoint)]) -> Result<()> {
        let r = self.real_count;
        if r + pseudo.len() > 64 {
            return Err(Error::InvalidArgument("at most 64 marked points are supported".into()));
        }
        self.points.truncate(r);
        for &(of, ray) in pseudo {
            let location = self.points[of].location.clone();
            let exact = self.points[of].exact;
            self.points.push(SearchPoint { location, exact, kind: PointKind::Pseudo { of, ray } });
        }
        self.pseudo_mask = ((1u64 << pseudo.len()) - 1) << r;
        self.cut = pseudo.first().map(|&(of, _)| (of, 1u64 << r));
        let real = |s: u64| s >> r == 0;
        self.memo_g.get_mut().retain(|k, _| real(k.0));
        self.memo_v.get_mut().retain(|k, _| real(k.2));
        self.memo_w.get_mut().retain(|k, _| real(*k));
        Ok(())
    }

    fn pseudo_count(&self, s: u64) -> usize {
        (s & self.pseudo_mask).count_ones() as usize
    }

    /// Total outgoing direction of the legs `d` and the virtual legs in `s`.
    fn sigma(&self, s: u64, d: DKey) -> LatticePoint {
        let mut acc = LatticePoint::ZERO;
        for (i, &v) in self.dirs.iter().enumerate() {
            acc = acc + (dcount(d, i) as i64) * v;
        }
        let mut pseudo = s & self.pseudo_mask;
        while pseudo != 0 {
            let i = pseudo.trailing_zeros() as usize;
            pseudo &= pseudo - 1;
            if let PointKind::Pseudo { ray, .. } = self.points[i].kind {
                acc = acc - ray;
            }
        }
        acc
    }

    /// Joins two rays where they meet. Coincidences such as a ray starting
    /// on another ray's line give a flagged partial: it stands for curves
    /// that only exist on a wall, and is harmless unless a finished curve
    /// uses it.
    fn merge(&self, a: &Partial, b: &Partial) -> Option<Partial> {
        let mut flagged = a.flagged | b.flagged;
        if a.start == b.start {
            if a.tree.is_cut_half() || b.tree.is_cut_half() {
                // Both halves of a cut edge; they never meet in a vertex.
                return None;
            }
            flagged |= wall::SHARED_START;
        }
        let (v1, v2) = (a.dir, b.dir);
        let dir = v1 + v2;
        if dir.is_zero() || !self.admissible.contains(dir) {
            return None;
        }
        let at = match meet(a.start, v1, b.start, v2) {
            Ok(None) => return None,
            Ok(Some((at, touching))) => {
                if touching {
                    flagged |= wall::TOUCHING;
                }
                at
            }
            // Treated like a wall: fatal only if a finished curve uses it.
            Err(()) => {
                flagged |= wall::OVERFLOW;
                a.start
            }
        };
        if self.points[..self.real_count].iter().any(|p| p.exact == at) {
            flagged |= wall::ON_MARK;
        }
        let det = v1.cross(v2);
        let mult = a.mult * b.mult * det.unsigned_abs();
        Some(Partial {
            tree: Arc::new(InTree::Merge { left: a.tree.clone(), right: b.tree.clone(), at, dir }),
            start: at,
            near: at.approx(),
            dir,
            mult,
            flagged,
        })
    }

    /// Merges every pair from two tables. Within a table all rays share
    /// one direction, so the direction checks happen once. A pair goes on
    /// to the exact meeting point unless rounded coordinates show, with a
    /// wide margin, that one ray starts behind the other.
    fn merge_all(&self, left: &[Partial], right: &[Partial], out: &mut Vec<Partial>) {
        let (Some(a0), Some(b0)) = (left.first(), right.first()) else {
            return;
        };
        let (v1, v2) = (a0.dir, b0.dir);
        let dir = v1 + v2;
        if dir.is_zero() || !self.admissible.contains(dir) {
            return;
        }
        let det = v1.cross(v2).signum() as f64;
        if det == 0.0 {
            for a in left {
                for b in right {
                    out.extend(self.merge(a, b));
                }
            }
            return;
        }
        let cross = |p: [f64; 2], v: LatticePoint| det * (p[0] * v.y as f64 - p[1] * v.x as f64);
        let ahead = |from: f64, to: f64| to - from > -1e-6 * (1.0 + from.abs() + to.abs());
        for a in left {
            let (m1, m2) = (cross(a.near, v1), cross(a.near, v2));
            for b in right {
                if ahead(m2, cross(b.near, v2)) && ahead(m1, cross(b.near, v1)) {
                    out.extend(self.merge(a, b));
                }
            }
        }
    }

    /// Rooted pieces leaving real point `p` through exactly the points `s`,
    /// for every multiset of legs.
    fn g_all(&self, s: u64, p: usize) -> ByLegs<Arc<SubCurve>> {
        if let Some(r) = self.memo_g.borrow().get(&(s, p)) {
            return r.clone();
        }
        let mut map: FxHashMap<DKey, Vec<Arc<SubCurve>>> = FxHashMap::default();
        if let Some((cut, bit)) = self.cut {
            if p < cut && s & bit != 0 {
                let out: ByLegs<Arc<SubCurve>> = Rc::default();
                self.memo_g.borrow_mut().insert((s, p), out.clone());
                return out;
            }
        }
        let size = (s.count_ones() as usize + 1).checked_sub(self.pseudo_count(s));
        for d in size.map(|k| sub_multisets(self.full, k)).unwrap_or_default() {
            let u = self.sigma(s, d);
            if u.is_zero() || !self.admissible.contains(u) {
                continue;
            }
            let mut out = Vec::new();
            let parts = self.v_all(p, u, s);
            for i in 0..self.dirs.len() {
                if dcount(d, i) == 0 {
                    continue;
                }
                for part in lookup(&parts, d - (1 << (8 * i))) {
                    debug_assert_eq!(part.dir, self.dirs[i]);
                    out.push(Arc::new(SubCurve {
                        root: p,
                        dir: u,
                        tree: part.tree.clone(),
                        mult: part.mult,
                        flagged: part.flagged,
                    }));
                }
            }
            map.insert(d, out);
        }
        let out = collect_by_legs(map);
        self.memo_g.borrow_mut().insert((s, p), out.clone());
        out
    }

    /// In-trees with leaf `p` (ray direction `u`) and further leaves `s`,
    /// for every multiset of legs their pieces use.
    fn v_all(&self, p: usize, u: LatticePoint, s: u64) -> ByLegs<Partial> {
        let key = (p, u, s);
        if let Some(r) = self.memo_v.borrow().get(&key) {
            return r.clone();
        }
        let mut map: FxHashMap<DKey, Vec<Partial>> = FxHashMap::default();
        if s == 0 {
            map.insert(
                0,
                vec![Partial {
                    tree: Arc::new(InTree::Root { dir: u }),
                    start: self.points[p].exact,
                    near: self.points[p].exact.approx(),
                    dir: u,
                    mult: 1,
                    flagged: 0,
                }],
            );
        } else {
            // The last vertex joins the part containing `p` to a part
            // without it, whose leaves are `s2`.
            let mut s2 = s;
            while s2 != 0 {
                let right = self.w_all(s2);
                if !right.is_empty() {
                    let left = self.v_all(p, u, s ^ s2);
                    for (d1, l) in left.iter() {
                        for (d2, r) in right.iter() {
                            let d = d1 + d2;
                            if dle(d, self.full) {
                                self.merge_all(l, r, map.entry(d).or_default());
                            }
                        }
                    }
                }
                s2 = (s2 - 1) & s;
            }
        }
        let out = collect_by_legs(map);
        self.memo_v.borrow_mut().insert(key, out.clone());
        out
    }

    /// In-trees whose leaves are exactly the points `s`, for every multiset
    /// of legs.
    fn w_all(&self, s: u64) -> ByLegs<Partial> {
        if let Some(r) = self.memo_w.borrow().get(&s) {
            return r.clone();
        }
        let mut map: FxHashMap<DKey, Vec<Partial>> = FxHashMap::default();
        // A single leaf.
        let mut bits = s;
        while bits != 0 {
            let q = bits.trailing_zeros() as usize;
            bits &= bits - 1;
            let rest = s & !(1 << q);
            match self.points[q].kind {
                PointKind::Pseudo { ray, .. } => {
                    if rest == 0 {
                        map.entry(0).or_default().push(Partial {
                            tree: Arc::new(InTree::Pseudo { point: q, dir: ray }),
                            start: self.points[q].exact,
                            near: self.points[q].exact.approx(),
                            dir: ray,
                            mult: 1,
                            flagged: 0,
                        });
                    }
                }
                PointKind::Real => {
                    for (d, subs) in self.g_all(rest, q).iter() {
                        let entry = map.entry(*d).or_default();
                        for sub in subs {
                            entry.push(Partial {
                                tree: Arc::new(InTree::Mark { point: q, dir: -sub.dir, beyond: sub.clone() }),
                                start: self.points[q].exact,
                                near: self.points[q].exact.approx(),
                                dir: -sub.dir,
                                mult: sub.mult,
                                flagged: sub.flagged,
                            });
                        }
                    }
                }
            }
        }
        // A vertex joining two in-trees; the lowest point goes left.
        let low = s & s.wrapping_neg();
        let others = s ^ low;
        let mut sub = others;
        loop {
            let s1 = low | sub;
            if s1 != s {
                let left = self.w_all(s1);
                if !left.is_empty() {
                    let right = self.w_all(s ^ s1);
                    for (d1, l) in left.iter() {
                        for (d2, r) in right.iter() {
                            let d = d1 + d2;
                            if dle(d, self.full) {
                                self.merge_all(l, r, map.entry(d).or_default());
                            }
                        }
                    }
                }
            }
            if sub == 0 {
                break;
            }
            sub = (sub - 1) & others;
        }
        let out = collect_by_legs(map);
        self.memo_w.borrow_mut().insert(s, out.clone());
        out
    }
}

/// A curve found by the search with the product of its vertex determinants.
#[derive(Clone, Debug)]
pub struct FoundCurve {
    pub curve: ParamTropicalCurve,
    pub multiplicity: u64,
}

/// Turns found pieces into an explicit parametrized curve.
struct Builder<'s> {
    points: &'s [SearchPoint],
    positions: Vec<QPoint>,
    edges: Vec<(usize, usize, LatticePoint)>,
    legs: Vec<(usize, LatticePoint, Option<usize>)>,
    point_vertex: HashMap<usize, usize>,
}

impl<'s> Builder<'s> {
    fn new(points: &'s [SearchPoint]) -> Self {
        Self { points, positions: Vec::new(), edges: Vec::new(), legs: Vec::new(), point_vertex: HashMap::new() }
    }

    fn real_of(&self, q: usize) -> usize {
        match self.points[q].kind {
            PointKind::Real => q,
            PointKind::Pseudo { of, .. } => of,
        }
    }

    fn vertex_of_point(&mut self, q: usize) -> usize {
        let q = self.real_of(q);
        if let Some(&v) = self.point_vertex.get(&q) {
            return v;
        }
        let v = self.positions.len();
        self.positions.push(self.points[q].location.clone());
        self.legs.push((v, LatticePoint::ZERO, Some(q)));
        self.point_vertex.insert(q, v);
        v
    }

    fn sub(&mut self, sub: &SubCurve) {
        let root = self.vertex_of_point(sub.root);
        let (start, dir) = self.tree(&sub.tree, root);
        self.legs.push((start, dir, None));
    }

    fn tree(&mut self, t: &InTree, root: usize) -> (usize, LatticePoint) {
        match t {
            InTree::Root { dir } => (root, *dir),
            InTree::Pseudo { point, dir } => (self.vertex_of_point(*point), *dir),
            InTree::Mark { point, dir, beyond } => {
                let v = self.vertex_of_point(*point);
                self.sub(beyond);
                (v, *dir)
            }
            InTree::Merge { left, right, at, dir } => {
                let m = self.positions.len();
                self.positions.push(at.to_q());
                for child in [left, right] {
                    let (s, d) = self.tree(child, root);
                    self.edges.push((s, m, d));
                }
                (m, *dir)
            }
        }
    }

    fn finish(self, multiplicity: u64) -> Result<FoundCurve> {
        let Builder { positions, edges, mut legs, .. } = self;
        legs.sort_by(|a, b| match (a.2, b.2) {
            (Some(x), Some(y)) => x.cmp(&y),
            (Some(_), None) => std::cmp::Ordering::Less,
            (None, Some(_)) => std::cmp::Ordering::Greater,
            (None, None) => (a.1, positions[a.0].cross_dir(a.1)).cmp(&(b.1, positions[b.0].cross_dir(b.1))),
        });
        let lengths = edges
            .iter()
            .map(|&(a, b, s)| {
                let delta = &positions[b] - &positions[a];
                if s.x != 0 {
                    delta.x / Q::from_integer(s.x.into())
                } else {
                    delta.y / Q::from_integer(s.y.into())
                }
            })
            .collect();
        let ty = CombinatorialType::weightless(
            positions.len(),
            edges,
            legs.iter().map(|&(v, s, _)| (v, s)).collect(),
        )?;
        let curve = ParamTropicalCurve::new(ty, lengths, positions)?;
        Ok(FoundCurve { curve, multiplicity })
    }
}

/// A search over one point configuration that answers many queries:
/// connected curves whose legs are part of the degree, through a subset of
/// the points. Queries share everything computed for smaller subsets.
pub struct CurveSearch<'a> {
    search: Search<'a>,
}

impl<'a> CurveSearch<'a> {
    pub fn new(degree: &TropicalDegree, points: &[QPoint], slopes: &'a Slopes) -> Result<Self> {
        Ok(Self { search: Search::new(points, degree, slopes)? })
    }

    fn legs_key(&self, block: &TropicalDegree) -> Result<DKey> {
        let mut key = 0;
        for &(v, k) in &block.entries {
            let i = self.search.dirs.iter().position(|&d| d == v).ok_or_else(|| {
                Error::InvalidArgument(format!("direction {v} is not part of the searched degree"))
            })?;
            key |= (k as u64) << (8 * i);
        }
        if !dle(key, self.search.full) {
            return Err(Error::InvalidArgument("more legs than the searched degree has".into()));
        }
        Ok(key)
    }

    /// For each subset of point indices (as a bit mask), the connected
    /// curves of degree `block` and genus `genus` through exactly those
    /// points. Each subset needs `|block| + genus - 1` points. Cycle edges
    /// are restricted to the directions in `cycle`.
    ///
    /// For positive genus the first cut is made at the lowest marked point
    /// on a cycle; a curve can still be found through several choices of
    /// further cuts, so results are deduplicated.
    pub fn connected(
        &mut self,
        block: &TropicalDegree,
        genus: usize,
        subsets: &[u64],
        cycle: &[LatticePoint],
    ) -> Result<Vec<Vec<FoundCurve>>> {
        let legs = self.legs_key(block)?;
        let r = self.search.real_count;
        let all = if r == 64 { u64::MAX } else { (1u64 << r) - 1 };
        for &m in subsets {
            if m & !all != 0 || m.count_ones() as usize + 1 != block.size() + genus {
                return Err(Error::InvalidArgument(format!(
                    "a genus {genus} curve with {} legs needs {} points, got {}",
                    block.size(),
                    (block.size() + genus).saturating_sub(1),
                    m.count_ones()
                )));
            }
        }
        if genus == 0 {
            return subsets.iter().map(|&m| self.rational(legs, m)).collect();
        }
        let mut found: Vec<Vec<FoundCurve>> = vec![Vec::new(); subsets.len()];
        if r + 2 * genus > 65 {
            return Ok(found);
        }
        let mut seen: Vec<HashSet<_>> = vec![HashSet::new(); subsets.len()];
        let pseudo_bits = ((1u64 << (2 * genus - 1)) - 1) << r;
        for root in 0..r {
            if !subsets.iter().any(|m| m >> root & 1 == 1) {
                continue;
            }
            let rest: Vec<usize> = (root + 1..r).collect();
            for extra in combinations(&rest, genus - 1) {
                let cut = extra.iter().fold(1u64 << root, |acc, &c| acc | 1 << c);
                let targets: Vec<usize> = (0..subsets.len()).filter(|&i| subsets[i] & cut == cut).collect();
                if targets.is_empty() {
                    continue;
                }
                for sigmas in tuples(cycle, genus) {
                    let mut pseudo = vec![(root, sigmas[0])];
                    for (j, &c) in extra.iter().enumerate() {
                        pseudo.push((c, sigmas[j + 1]));
                        pseudo.push((c, -sigmas[j + 1]));
                    }
                    self.search.set_pseudo(&pseudo)?;
                    for &i in &targets {
                        let s = (subsets[i] & !cut) | pseudo_bits;
                        for sub in lookup(&self.search.g_all(s, root), legs).iter() {
                            if sub.flagged != 0 {
                                return Err(degenerate(sub.flagged));
                            }
                            let mut builder = Builder::new(&self.search.points);
                            builder.sub(sub);
                            let fc = builder.finish(sub.mult)?;
                            if fc.curve.ty.genus() != genus as i64 {
                                continue;
                            }
                            if seen[i].insert(fc.curve.canonical_key()) {
                                found[i].push(fc);
                            }
                        }
                    }
                }
            }
        }
        Ok(found)
    }

    /// Rational curves through the points in `m`, cut at the lowest one.
    /// Each curve splits there into two pieces; the one whose direction
    /// is lexicographically positive goes first.
    fn rational(&self, legs: DKey, m: u64) -> Result<Vec<FoundCurve>> {
        let search = &self.search;
        let p0 = m.trailing_zeros() as usize;
        let others = m & !(1u64 << p0);
        let mut found = Vec::new();
        let mut sa = others;
        loop {
            let b_all = search.g_all(others ^ sa, p0);
            for (da, a_side) in search.g_all(sa, p0).iter() {
                if !dle(*da, legs) || !search.sigma(sa, *da).is_lex_positive() {
                    continue;
                }
                let b_side = lookup(&b_all, legs - da);
                for a in a_side.iter() {
                    for b in b_side.iter() {
                        if a.flagged | b.flagged != 0 {
                            return Err(degenerate(a.flagged | b.flagged));
                        }
                        let mut builder = Builder::new(&search.points);
                        builder.sub(a);
                        builder.sub(b);
                        found.push(builder.finish(a.mult * b.mult)?);
                    }
                }
            }
            if sa == 0 {
                break;
            }
            sa = (sa - 1) & others;
        }
        Ok(found)
    }
}

/// Connected curves of genus `genus` through all of `points`, with
/// `points.len() == |degree| + genus - 1`, one per isomorphism class with
/// unordered non-contracted legs.
pub fn curves_of_genus(
    degree: &TropicalDegree,
    genus: usize,
    points: &[QPoint],
    slopes: &Slopes,
) -> Result<Vec<FoundCurve>> {
    if points.is_empty() || points.len() > 64 {
        return Err(Error::InvalidArgument(format!("between 1 and 64 points are supported, got {}", points.len())));
    }
    let mut search = CurveSearch::new(degree, points, slopes)?;
    let all = u64::MAX >> (64 - points.len());
    Ok(search.connected(degree, genus, &[all], slopes.cycle_slopes())?.remove(0))
}

fn combinations(items: &[usize], k: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for i in 0..items.len() {
        for mut tail in combinations(&items[i + 1..], k - 1) {
            tail.insert(0, items[i]);
            out.push(tail);
        }
    }
    out
}

fn tuples(items: &[LatticePoint], k: usize) -> Vec<Vec<LatticePoint>> {
    let mut out = vec![Vec::new()];
    for _ in 0..k {
        out = out
            .into_iter()
            .flat_map(|t| {
                items.iter().map(move |&x| {
                    let mut t = t.clone();
                    t.push(x);
                    t
                })
            })
            .collect();
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::LatticePolygon;
    use crate::strata::PointConfiguration;

    fn count(d: i64, genus: usize, seed: u64) -> u64 {
        let poly = LatticePolygon::degree_triangle(d).unwrap();
        let degree = poly.dual_degree();
        let adm = Slopes::of_polygon(&poly);
        let r = degree.size() + genus - 1;
        let found = (0..8)
            .find_map(|attempt| {
                let q = PointConfiguration::sample(r, seed, attempt);
                match curves_of_genus(&degree, genus, &q.points, &adm) {
                    Err(Error::Degenerate(_)) => None,
                    other => Some(other.unwrap()),
                }
            })
            .unwrap();
        for f in &found {
            assert_eq!(f.curve.ty.mikhalkin_multiplicity().unwrap(), f.multiplicity);
            assert!(f.curve.ty.is_trivalent());
        }
        found.iter().map(|f| f.multiplicity).sum()
    }

    #[test]
    fn small_sub_multisets() {
        assert_eq!(sub_multisets(0x0201, 2), vec![0x0200, 0x0101]);
        assert!(sub_multisets(0x01, 2).is_empty());
    }

    #[test]
    fn lines_and_conics() {
        assert_eq!(count(1, 0, 3), 1);
        assert_eq!(count(2, 0, 3), 1);
    }

    #[test]
    fn rational_cubics() {
        for seed in 0..2 {
            assert_eq!(count(3, 0, seed), 12);
        }
    }

    #[test]
    fn elliptic_cubic() {
        assert_eq!(count(3, 1, 5), 1);
    }
}

