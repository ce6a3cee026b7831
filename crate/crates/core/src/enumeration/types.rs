//! Combinatorial types of curves through generic points.
//!
//! A counted curve is weightless and trivalent with no contracted edges,
//! so every marked point sits in the interior of an edge or a leg. Removing
//! the marks leaves a *skeleton*: a trivalent graph whose legs are the
//! degree. Types are generated by building skeletons and then placing
//! labelled marks along their edges and legs.
//!
//! Skeletons of genus 0 are trees. Cutting at the vertex next to a fixed
//! leg leaves two rooted trees, and rooted trees are generated up to
//! isomorphism by splitting their leaves into two unordered halves. A
//! skeleton of genus 1 is a cycle of vertices each carrying one rooted tree.

use std::collections::{HashMap, HashSet};
use std::rc::Rc;

use crate::error::{Error, Result};
use crate::lattice::{LatticePoint, LatticePolygon, TropicalDegree};
use crate::search::Slopes;
use crate::strata::stratum_nonempty;
use crate::tropical::{CombinatorialType, TypeEncoding};

/// A mark-free type: a trivalent graph with the degree as its legs, plus
/// any number of lines. A line has a degree `{v, -v}` and no vertices until
/// marks are put on it, so it cannot be part of the graph.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Skeleton {
    pub graph: Option<CombinatorialType>,
    pub lines: Vec<LatticePoint>,
}

impl Skeleton {
    fn graph(t: CombinatorialType) -> Self {
        Self { graph: Some(t), lines: Vec::new() }
    }

    fn line(v: LatticePoint) -> Self {
        Self { graph: None, lines: vec![v] }
    }

    /// Number of places a mark can go: edges, legs and lines.
    pub fn positions(&self) -> usize {
        self.graph.as_ref().map_or(0, |t| t.graph.edges.len() + t.graph.legs.len()) + self.lines.len()
    }

    pub fn genus(&self) -> i64 {
        self.graph.as_ref().map_or(0, |t| t.genus() - 1) - self.lines.len() as i64 + 1
    }

    fn key(&self) -> (Option<TypeEncoding>, Vec<LatticePoint>) {
        let mut lines = self.lines.clone();
        lines.sort();
        (self.graph.as_ref().map(unordered_leg_key), lines)
    }
}

/// Isomorphism key in which legs of equal slope are interchangeable but
/// contracted legs keep their order. Each non-contracted leg becomes an edge
/// to a new leaf vertex tagged with an impossible weight.
pub fn unordered_leg_key(t: &CombinatorialType) -> TypeEncoding {
    const LEAF: u32 = u32::MAX;
    let mut edges: Vec<(usize, usize, LatticePoint)> = t
        .graph
        .edges
        .iter()
        .zip(&t.edge_slopes)
        .map(|(&(a, b), &s)| (a, b, s))
        .collect();
    let mut legs = Vec::new();
    let mut n = t.num_vertices();
    let mut weights = t.weights.clone();
    for (&a, &s) in t.graph.legs.iter().zip(&t.leg_slopes) {
        if s.is_zero() {
            legs.push((a, s));
        } else {
            edges.push((a, n, s));
            weights.push(LEAF);
            n += 1;
        }
    }
    let mut aux = CombinatorialType::weightless(n, edges, legs).expect("indices are in range");
    aux.weights = weights;
    aux.canonical_encoding()
}

#[derive(Debug)]
enum RootedTree {
    Leaf(LatticePoint),
    Node(LatticePoint, Rc<RootedTree>, Rc<RootedTree>),
}

/// Generates rooted trees over sub-multisets of a degree.
struct TreeMaker<'a> {
    dirs: Vec<LatticePoint>,
    slopes: &'a Slopes,
    memo: HashMap<Vec<usize>, Rc<Vec<Rc<RootedTree>>>>,
}

impl<'a> TreeMaker<'a> {
    fn new(degree: &TropicalDegree, slopes: &'a Slopes) -> Self {
        Self { dirs: degree.entries.iter().map(|e| e.0).collect(), slopes, memo: HashMap::new() }
    }

    fn sum(&self, m: &[usize]) -> LatticePoint {
        m.iter().zip(&self.dirs).fold(LatticePoint::ZERO, |acc, (&k, &v)| acc + (k as i64) * v)
    }

    /// Whether a rooted tree on `m` can hang off a vertex: its edge must
    /// have a nonzero slope, and an admissible one unless it is a leg.
    fn can_hang(&self, m: &[usize]) -> bool {
        let s = self.sum(m);
        let size: usize = m.iter().sum();
        !s.is_zero() && (size == 1 || self.slopes.contains(s))
    }

    /// Rooted trees with leaves `m`, up to isomorphism.
    fn trees(&mut self, m: &[usize]) -> Rc<Vec<Rc<RootedTree>>> {
        if let Some(t) = self.memo.get(m) {
            return t.clone();
        }
        let size: usize = m.iter().sum();
        let slope = self.sum(m);
        let mut out = Vec::new();
        if size == 1 {
            out.push(Rc::new(RootedTree::Leaf(slope)));
        } else {
            for a in sub_multisets(m) {
                let b: Vec<usize> = m.iter().zip(&a).map(|(x, y)| x - y).collect();
                let a_size: usize = a.iter().sum();
                if a_size == 0 || a_size == size || a > b {
                    continue;
                }
                if !self.can_hang(&a) || !self.can_hang(&b) {
                    continue;
                }
                let ta = self.trees(&a);
                let tb = self.trees(&b);
                for (i, x) in ta.iter().enumerate() {
                    let start = if a == b { i } else { 0 };
                    for y in &tb[start..] {
                        out.push(Rc::new(RootedTree::Node(slope, x.clone(), y.clone())));
                    }
                }
            }
        }
        let out = Rc::new(out);
        self.memo.insert(m.to_vec(), out.clone());
        out
    }
}

/// Every count vector `a <= m`, in lexicographic order.
fn sub_multisets(m: &[usize]) -> Vec<Vec<usize>> {
    let mut out = vec![Vec::new()];
    for &k in m {
        out = out
            .into_iter()
            .flat_map(|prefix| {
                (0..=k).map(move |c| {
                    let mut p = prefix.clone();
                    p.push(c);
                    p
                })
            })
            .collect();
    }
    out
}

/// Collects vertices, edges and legs while a skeleton is assembled.
#[derive(Default)]
struct GraphBuilder {
    vertices: usize,
    edges: Vec<(usize, usize, LatticePoint)>,
    legs: Vec<(usize, LatticePoint)>,
}

impl GraphBuilder {
    fn vertex(&mut self) -> usize {
        self.vertices += 1;
        self.vertices - 1
    }

    /// Attaches a rooted tree at `v`, pointing away from it.
    fn hang(&mut self, v: usize, t: &RootedTree) {
        match t {
            RootedTree::Leaf(s) => self.legs.push((v, *s)),
            RootedTree::Node(s, a, b) => {
                let w = self.vertex();
                self.edges.push((v, w, *s));
                self.hang(w, a);
                self.hang(w, b);
            }
        }
    }

    fn finish(mut self) -> CombinatorialType {
        self.legs.sort_by_key(|l| l.1);
        let t = CombinatorialType::weightless(self.vertices, self.edges, self.legs).expect("indices are in range");
        debug_assert!(t.check_balancing());
        t
    }
}

/// Connected skeletons of the given genus (0 or 1) for `degree`, with
/// admissible edge slopes and a nonempty stratum, up to isomorphism.
pub fn connected_skeletons(degree: &TropicalDegree, genus: i64, slopes: &Slopes) -> Result<Vec<Skeleton>> {
    if !degree.is_balanced() {
        return Err(Error::InvalidArgument("degree does not sum to zero".into()));
    }
    let n = degree.size();
    if genus < 0 || n < 2 {
        return Ok(Vec::new());
    }
    if genus > 1 {
        return Err(Error::InvalidArgument(format!(
            "skeletons are generated for genus 0 and 1 only, not {genus}"
        )));
    }
    if n == 2 {
        // Two opposite legs: a line for genus 0, nothing trivalent otherwise.
        return Ok(if genus == 0 { vec![Skeleton::line(degree.entries[0].0)] } else { Vec::new() });
    }
    let mut maker = TreeMaker::new(degree, slopes);
    let full: Vec<usize> = degree.entries.iter().map(|e| e.1).collect();
    let mut seen = HashSet::new();
    let mut out = Vec::new();
    let mut keep = |t: CombinatorialType, out: &mut Vec<Skeleton>| {
        if seen.insert(unordered_leg_key(&t)) {
            out.push(Skeleton::graph(t));
        }
    };
    if genus == 0 {
        // The vertex carrying a leg of the first direction splits the rest
        // into two rooted trees.
        let mut rest = full.clone();
        rest[0] -= 1;
        let first = maker.dirs[0];
        for a in sub_multisets(&rest) {
            let b: Vec<usize> = rest.iter().zip(&a).map(|(x, y)| x - y).collect();
            if a.iter().sum::<usize>() == 0 || b.iter().sum::<usize>() == 0 || a > b {
                continue;
            }
            if !maker.can_hang(&a) || !maker.can_hang(&b) {
                continue;
            }
            let (ta, tb) = (maker.trees(&a), maker.trees(&b));
            for (i, x) in ta.iter().enumerate() {
                let start = if a == b { i } else { 0 };
                for y in &tb[start..] {
                    let mut g = GraphBuilder::default();
                    let v = g.vertex();
                    g.legs.push((v, first));
                    g.hang(v, x);
                    g.hang(v, y);
                    keep(g.finish(), &mut out);
                }
            }
        }
        return Ok(out);
    }
    // Genus 1: a cycle of k >= 2 vertices, each carrying a rooted tree.
    // The trees can always be realized, so the stratum is nonempty exactly
    // when the cycle closes up with positive lengths.
    let cycle_slopes: Vec<LatticePoint> = slopes
        .cycle_slopes()
        .iter()
        .flat_map(|&s| [s, -s])
        .collect();
    let mut blocks: Vec<Vec<usize>> = Vec::new();
    cycle_sequences(&mut maker, &full, &mut blocks, &mut |maker, blocks| {
        let k = blocks.len();
        let sums: Vec<LatticePoint> = blocks.iter().map(|b| maker.sum(b)).collect();
        for &sigma in &cycle_slopes {
            // tau_i is the slope from vertex i to vertex i + 1. Balancing at
            // vertex i gives tau_i = tau_{i-1} - (outflow of block i).
            let mut taus = vec![sigma];
            for &s in &sums[1..] {
                taus.push(taus[taus.len() - 1] - s);
            }
            if taus.iter().any(|&t| t.is_zero() || !slopes.contains(t)) || !closes_up(&taus) {
                continue;
            }
            let Some(symmetric) = cycle_is_minimal(blocks, &taus) else {
                continue;
            };
            let trees: Vec<Rc<Vec<Rc<RootedTree>>>> = blocks.iter().map(|b| maker.trees(b)).collect();
            for choice in product(&trees.iter().map(|t| t.len()).collect::<Vec<_>>()) {
                let mut g = GraphBuilder::default();
                let vs: Vec<usize> = (0..k).map(|_| g.vertex()).collect();
                for i in 0..k {
                    g.edges.push((vs[i], vs[(i + 1) % k], taus[i]));
                }
                for i in 0..k {
                    g.hang(vs[i], &trees[i][choice[i]]);
                }
                let t = g.finish();
                debug_assert!(stratum_nonempty(&t));
                if symmetric {
                    keep(t, &mut out);
                } else {
                    out.push(Skeleton::graph(t));
                }
            }
        }
    });
    Ok(out)
}

/// Whether `sum l_i tau_i = 0` has a solution with every `l_i > 0`. That
/// fails exactly when some nonzero functional is nonnegative on every
/// `tau_i` and positive on one, and such a functional can be taken
/// perpendicular or parallel to one of them.
fn closes_up(taus: &[LatticePoint]) -> bool {
    !taus.iter().any(|&t| {
        [t.rot90(), -t.rot90(), t, -t].iter().any(|&f| {
            taus.iter().all(|&u| f.dot(u) >= 0) && taus.iter().any(|&u| f.dot(u) > 0)
        })
    })
}

/// Compares a cycle against its rotations and reflections. Returns `None`
/// unless it is the least of them, and otherwise whether one of them
/// coincides with it.
fn cycle_is_minimal(blocks: &[Vec<usize>], taus: &[LatticePoint]) -> Option<bool> {
    let k = blocks.len();
    let original: Vec<(&[usize], LatticePoint)> = (0..k).map(|i| (&blocks[i][..], taus[i])).collect();
    let mut symmetric = false;
    for j in 0..k {
        for reflect in [false, true] {
            if j == 0 && !reflect {
                continue;
            }
            let variant = (0..k).map(|i| {
                if reflect {
                    // Vertex i becomes old vertex j - i; its outgoing edge
                    // is the old edge into that vertex, reversed.
                    let v = (j + k - i) % k;
                    (&blocks[v][..], -taus[(v + k - 1) % k])
                } else {
                    let v = (i + j) % k;
                    (&blocks[v][..], taus[v])
                }
            });
            match variant.cmp(original.iter().copied()) {
                std::cmp::Ordering::Less => return None,
                std::cmp::Ordering::Equal => symmetric = true,
                std::cmp::Ordering::Greater => {}
            }
        }
    }
    Some(symmetric)
}

/// Visits every sequence of at least two nonempty blocks partitioning
/// `rest`, each able to hang off a vertex.
fn cycle_sequences(
    maker: &mut TreeMaker,
    rest: &[usize],
    blocks: &mut Vec<Vec<usize>>,
    visit: &mut dyn FnMut(&mut TreeMaker, &[Vec<usize>]),
) {
    if rest.iter().all(|&k| k == 0) {
        if blocks.len() >= 2 {
            visit(maker, blocks);
        }
        return;
    }
    for a in sub_multisets(rest) {
        if a.iter().all(|&k| k == 0) || !maker.can_hang(&a) {
            continue;
        }
        // Only cycles starting with their least block are minimal.
        if blocks.first().is_some_and(|f| a < *f) {
            continue;
        }
        let b: Vec<usize> = rest.iter().zip(&a).map(|(x, y)| x - y).collect();
        blocks.push(a);
        cycle_sequences(maker, &b, blocks, visit);
        blocks.pop();
    }
}

/// All index tuples below the given bounds, in lexicographic order.
fn product(bounds: &[usize]) -> Vec<Vec<usize>> {
    let mut out = vec![Vec::new()];
    for &b in bounds {
        out = out
            .into_iter()
            .flat_map(|p| {
                (0..b).map(move |i| {
                    let mut p = p.clone();
                    p.push(i);
                    p
                })
            })
            .collect();
    }
    out
}

/// Skeletons for `degree` and `genus`, connected or not. A disconnected
/// skeleton is a union of connected ones whose degrees partition `degree`
/// and whose genera `g_i` satisfy `sum (g_i - 1) = genus - 1`.
pub fn skeletons(degree: &TropicalDegree, genus: i64, connected: bool, slopes: &Slopes) -> Result<Vec<Skeleton>> {
    if connected {
        return connected_skeletons(degree, genus, slopes);
    }
    let dirs: Vec<LatticePoint> = degree.entries.iter().map(|e| e.0).collect();
    let full: Vec<usize> = degree.entries.iter().map(|e| e.1).collect();
    let mut parts: Vec<Vec<Skeleton>> = Vec::new();
    let mut out = Vec::new();
    let mut seen = HashSet::new();
    let mut cache: HashMap<(Vec<usize>, i64), Vec<Skeleton>> = HashMap::new();
    split_degree(&dirs, &full, genus - 1, slopes, &mut cache, &mut parts, &mut |parts| {
        for pick in product(&parts.iter().map(|p| p.len()).collect::<Vec<_>>()) {
            let chosen: Vec<&Skeleton> = parts.iter().zip(&pick).map(|(p, &i)| &p[i]).collect();
            let union = union_of(&chosen);
            if seen.insert(union.key()) {
                out.push(union);
            }
        }
    })?;
    Ok(out)
}

/// Splits the remaining degree into blocks; the block containing the first
/// remaining leg is chosen next. `excess` is what `sum (g_i - 1)` over the
/// remaining blocks must be.
fn split_degree(
    dirs: &[LatticePoint],
    rest: &[usize],
    excess: i64,
    slopes: &Slopes,
    cache: &mut HashMap<(Vec<usize>, i64), Vec<Skeleton>>,
    parts: &mut Vec<Vec<Skeleton>>,
    visit: &mut dyn FnMut(&[Vec<Skeleton>]),
) -> Result<()> {
    let Some(first) = rest.iter().position(|&k| k > 0) else {
        if excess == 0 {
            visit(parts);
        }
        return Ok(());
    };
    for a in sub_multisets(rest) {
        if a[first] == 0 {
            continue;
        }
        let block = TropicalDegree::from_counts(
            dirs.iter().zip(&a).filter(|e| *e.1 > 0).map(|(&v, &k)| (v, k)).collect(),
        );
        if block.size() < 2 || !block.is_balanced() {
            continue;
        }
        let b: Vec<usize> = rest.iter().zip(&a).map(|(x, y)| x - y).collect();
        let max_genus = LatticePolygon::from_degree(&block).map(|p| p.interior_count()).unwrap_or(0);
        for g in 0..=max_genus {
            let key = (a.clone(), g);
            if !cache.contains_key(&key) {
                let found = connected_skeletons(&block, g, slopes)?;
                cache.insert(key.clone(), found);
            }
            let found = cache[&key].clone();
            if found.is_empty() {
                continue;
            }
            parts.push(found);
            split_degree(dirs, &b, excess - (g - 1), slopes, cache, parts, visit)?;
            parts.pop();
        }
    }
    Ok(())
}

/// Disjoint union of skeletons.
fn union_of(parts: &[&Skeleton]) -> Skeleton {
    let mut g = GraphBuilder::default();
    let mut lines = Vec::new();
    let mut any_graph = false;
    for part in parts {
        lines.extend(&part.lines);
        let Some(t) = &part.graph else { continue };
        any_graph = true;
        let offset = g.vertices;
        g.vertices += t.num_vertices();
        for (&(a, b), &s) in t.graph.edges.iter().zip(&t.edge_slopes) {
            g.edges.push((a + offset, b + offset, s));
        }
        for (&a, &s) in t.graph.legs.iter().zip(&t.leg_slopes) {
            g.legs.push((a + offset, s));
        }
    }
    lines.sort();
    Skeleton { graph: any_graph.then(|| g.finish()), lines }
}

/// Places marks `0..r` on a skeleton. Mark `i` picks one of
/// `positions + i` slots: the start of an edge or leg, or right after an
/// earlier mark on the same one. This numbers every arrangement once.
/// Returns `None` when a line is left without marks.
pub fn place_marks(skeleton: &Skeleton, slots: &[usize]) -> Option<CombinatorialType> {
    let p = skeleton.positions();
    let mut lists: Vec<Vec<usize>> = vec![Vec::new(); p];
    let mut home = Vec::with_capacity(slots.len());
    for (i, &slot) in slots.iter().enumerate() {
        debug_assert!(slot < p + i);
        if slot < p {
            lists[slot].insert(0, i);
            home.push(slot);
        } else {
            let after = slot - p;
            let list = home[after];
            let at = lists[list].iter().position(|&m| m == after).expect("mark was placed") + 1;
            lists[list].insert(at, i);
            home.push(list);
        }
    }
    let r = slots.len();
    let mut vertices = 0;
    let mut edges = Vec::new();
    let mut marks: Vec<usize> = vec![0; r];
    let mut legs = Vec::new();
    // Lays the marks of `list` out as a chain of new vertices starting from
    // `from` in direction `s` and returns the last vertex.
    let mut chain = |from: Option<usize>,
                     s: LatticePoint,
                     list: &[usize],
                     vertices: &mut usize,
                     edges: &mut Vec<(usize, usize, LatticePoint)>|
     -> Option<usize> {
        let mut prev = from;
        for &m in list {
            let v = *vertices;
            *vertices += 1;
            marks[m] = v;
            if let Some(u) = prev {
                edges.push((u, v, s));
            }
            prev = Some(v);
        }
        prev
    };
    if let Some(t) = &skeleton.graph {
        vertices = t.num_vertices();
        let ne = t.graph.edges.len();
        for (e, (&(a, b), &s)) in t.graph.edges.iter().zip(&t.edge_slopes).enumerate() {
            let last = chain(Some(a), s, &lists[e], &mut vertices, &mut edges).expect("starts at a");
            edges.push((last, b, s));
        }
        for (l, (&a, &s)) in t.graph.legs.iter().zip(&t.leg_slopes).enumerate() {
            let last = chain(Some(a), s, &lists[ne + l], &mut vertices, &mut edges).expect("starts at a");
            legs.push((last, s));
        }
    }
    let first_line = p - skeleton.lines.len();
    for (i, &v) in skeleton.lines.iter().enumerate() {
        let first = vertices;
        // A line without marks has no vertex to carry its legs.
        let last = chain(None, v, &lists[first_line + i], &mut vertices, &mut edges)?;
        legs.push((first, -v));
        legs.push((last, v));
    }
    let mut all_legs: Vec<(usize, LatticePoint)> = marks.iter().map(|&v| (v, LatticePoint::ZERO)).collect();
    all_legs.extend(legs);
    Some(CombinatorialType::weightless(vertices, edges, all_legs).expect("indices are in range"))
}

/// Odometer over mark slots: digit `i` runs below `positions + i`.
pub struct Placements {
    positions: usize,
    digits: Vec<usize>,
    done: bool,
}

impl Placements {
    pub fn new(positions: usize, r: usize) -> Self {
        Self { positions, digits: vec![0; r], done: positions == 0 && r > 0 }
    }

    /// Number of arrangements, saturating.
    pub fn count(positions: usize, r: usize) -> u128 {
        (0..r).fold(1u128, |acc, i| acc.saturating_mul((positions + i) as u128))
    }
}

impl Iterator for Placements {
    type Item = Vec<usize>;

    fn next(&mut self) -> Option<Vec<usize>> {
        if self.done {
            return None;
        }
        let current = self.digits.clone();
        let mut i = self.digits.len();
        loop {
            if i == 0 {
                self.done = true;
                break;
            }
            i -= 1;
            self.digits[i] += 1;
            if self.digits[i] < self.positions + i {
                break;
            }
            self.digits[i] = 0;
        }
        Some(current)
    }
}

/// Every weightless trivalent type of degree `degree` and genus `genus`
/// with `r` contracted legs and no contracted edges, admissible edge slopes
/// and a nonempty stratum, up to isomorphism. Legs of equal slope are not
/// told apart. The stream is lazy: types are built as they are consumed.
pub fn generate_types(
    degree: &TropicalDegree,
    genus: i64,
    r: usize,
    connected: bool,
) -> Result<impl Iterator<Item = CombinatorialType>> {
    let slopes = Slopes::of_degree(degree);
    let skeletons = skeletons(degree, genus, connected, &slopes)?;
    let mut seen = HashSet::new();
    Ok(skeletons
        .into_iter()
        .flat_map(move |s| {
            let p = s.positions();
            Placements::new(p, r).filter_map(move |slots| place_marks(&s, &slots))
        })
        .filter(move |t| t.num_vertices() > 0 && seen.insert(unordered_leg_key(t))))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::strata::stratum_dimension;

    fn tri(d: i64) -> (TropicalDegree, Slopes) {
        let p = LatticePolygon::degree_triangle(d).unwrap();
        (p.dual_degree(), Slopes::of_polygon(&p))
    }

    #[test]
    fn line_skeleton_and_marked_lines() {
        let (deg, slopes) = tri(1);
        let sk = connected_skeletons(&deg, 0, &slopes).unwrap();
        assert_eq!(sk.len(), 1);
        let types: Vec<_> = generate_types(&deg, 0, 2, true).unwrap().collect();
        // Two marks on three legs: 3 * 4 ordered arrangements, none
        // identified because the leg slopes differ.
        assert_eq!(types.len(), 12);
        for t in &types {
            assert!(t.is_trivalent() && t.is_weightless() && t.check_balancing());
            assert_eq!(t.contracted_legs(), vec![0, 1]);
            assert!(t.contracted_edges().is_empty());
            assert_eq!(t.genus(), 0);
        }
    }

    #[test]
    fn no_elliptic_lines() {
        let (deg, _) = tri(1);
        assert_eq!(generate_types(&deg, 1, 3, true).unwrap().count(), 0);
    }

    #[test]
    fn conic_and_cubic_skeleton_counts_are_stable() {
        let (deg2, s2) = tri(2);
        let conics = connected_skeletons(&deg2, 0, &s2).unwrap();
        assert!(!conics.is_empty());
        for s in &conics {
            let t = s.graph.as_ref().expect("conic skeleton is a graph");
            assert!(t.is_trivalent() && t.check_balancing());
            assert_eq!(t.genus(), 0);
            assert_eq!(stratum_dimension(t), 5);
        }
        let (deg3, s3) = tri(3);
        let elliptic = connected_skeletons(&deg3, 1, &s3).unwrap();
        assert!(!elliptic.is_empty());
        for s in &elliptic {
            let t = s.graph.as_ref().expect("cubic skeleton is a graph");
            assert_eq!(t.genus(), 1);
            assert!(t.is_trivalent() && t.check_balancing());
        }
    }

    #[test]
    fn reducible_skeletons() {
        let (deg, slopes) = tri(2);
        // Genus -1 conics are pairs of lines.
        let pairs = skeletons(&deg, -1, false, &slopes).unwrap();
        assert_eq!(pairs.len(), 1);
        let t = pairs[0].graph.as_ref().unwrap();
        assert_eq!(t.graph.component_count(), 2);
        assert_eq!(t.genus(), -1);
    }

    #[test]
    fn segment_degrees() {
        let deg = TropicalDegree::from_vectors(&[LatticePoint::new(1, 0), LatticePoint::new(-1, 0)]);
        let types: Vec<_> = generate_types(&deg, 0, 3, true).unwrap().collect();
        // Three marks along a horizontal line in any order.
        assert_eq!(types.len(), 6);
        assert!(types.iter().all(|t| t.num_vertices() == 3 && t.genus() == 0));
    }

    #[test]
    fn placement_numbering() {
        assert_eq!(Placements::new(3, 2).count(), 12);
        assert_eq!(Placements::count(3, 2), 12);
        assert_eq!(Placements::new(1, 3).count(), 6);
        assert_eq!(Placements::new(4, 0).count(), 1);
    }
}
