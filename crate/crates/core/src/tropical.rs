//! Graphs with ordered legs, tropical curves, combinatorial types and
//! parametrized plane tropical curves.
//!
//! Edges are stored with a fixed orientation `(tail, head)`. The slope of an
//! edge is the slope seen when walking from tail to head; walking the other
//! way flips the sign. A loop therefore contributes `s` and `-s` to the star
//! of its vertex. Leg slopes point away from the anchor vertex.

use std::collections::BTreeMap;

use num_traits::Signed;
use rand::Rng;

use crate::error::{Error, Result};
use crate::lattice::{LatticePoint, TropicalDegree};
use crate::rational::{Q, QPoint};

/// A finite graph with ordered legs. Loops and multiple edges are allowed.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Graph {
    pub num_vertices: usize,
    /// Oriented edges `(tail, head)`.
    pub edges: Vec<(usize, usize)>,
    /// Anchor vertex of each leg, in leg order.
    pub legs: Vec<usize>,
}

impl Graph {
    pub fn new(num_vertices: usize, edges: Vec<(usize, usize)>, legs: Vec<usize>) -> Result<Self> {
        let bad = edges
            .iter()
            .flat_map(|&(a, b)| [a, b])
            .chain(legs.iter().copied())
            .find(|&v| v >= num_vertices);
        if let Some(v) = bad {
            return Err(Error::InvalidType(format!(
                "vertex index {v} out of range for {num_vertices} vertices"
            )));
        }
        Ok(Self { num_vertices, edges, legs })
    }

    /// Valence counting loops twice and legs once.
    pub fn valence(&self, v: usize) -> usize {
        let e: usize = self
            .edges
            .iter()
            .map(|&(a, b)| usize::from(a == v) + usize::from(b == v))
            .sum();
        e + self.legs.iter().filter(|&&a| a == v).count()
    }

    /// Euler characteristic `|V| - |E|`; legs do not change the homotopy type.
    pub fn euler_characteristic(&self) -> i64 {
        self.num_vertices as i64 - self.edges.len() as i64
    }

    pub fn component_count(&self) -> usize {
        let mut uf = UnionFind::new(self.num_vertices);
        for &(a, b) in &self.edges {
            uf.union(a, b);
        }
        (0..self.num_vertices).filter(|&v| uf.find(v) == v).count()
    }

    /// Component label of every vertex, numbered by first appearance.
    pub fn components(&self) -> Vec<usize> {
        let mut uf = UnionFind::new(self.num_vertices);
        for &(a, b) in &self.edges {
            uf.union(a, b);
        }
        let mut label = BTreeMap::new();
        (0..self.num_vertices)
            .map(|v| {
                let root = uf.find(v);
                let next = label.len();
                *label.entry(root).or_insert(next)
            })
            .collect()
    }

    pub fn first_betti(&self) -> i64 {
        self.edges.len() as i64 - self.num_vertices as i64 + self.component_count() as i64
    }
}

pub(crate) struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    pub(crate) fn new(n: usize) -> Self {
        Self { parent: (0..n).collect() }
    }

    pub(crate) fn find(&mut self, mut v: usize) -> usize {
        while self.parent[v] != v {
            self.parent[v] = self.parent[self.parent[v]];
            v = self.parent[v];
        }
        v
    }

    pub(crate) fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.parent[ra.max(rb)] = ra.min(rb);
        }
    }
}

fn genus_of(graph: &Graph, weights: &[u32]) -> i64 {
    1 - graph.euler_characteristic() + weights.iter().map(|&w| w as i64).sum::<i64>()
}

/// A weighted metric graph with ordered legs.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TropicalCurve {
    pub graph: Graph,
    pub weights: Vec<u32>,
    pub lengths: Vec<Q>,
}

impl TropicalCurve {
    pub fn new(graph: Graph, weights: Vec<u32>, lengths: Vec<Q>) -> Result<Self> {
        if weights.len() != graph.num_vertices || lengths.len() != graph.edges.len() {
            return Err(Error::InvalidType("weight or length count mismatch".into()));
        }
        if lengths.iter().any(|l| !l.is_positive()) {
            return Err(Error::InvalidType("edge lengths must be positive".into()));
        }
        Ok(Self { graph, weights, lengths })
    }

    pub fn genus(&self) -> i64 {
        genus_of(&self.graph, &self.weights)
    }

    /// `2 g(v) - 2 + val(v) >= 1` at every vertex.
    pub fn is_stable(&self) -> bool {
        (0..self.graph.num_vertices)
            .all(|v| 2 * self.weights[v] as i64 - 2 + self.graph.valence(v) as i64 >= 1)
    }
}

/// Graph, vertex weights and slopes: the discrete data of a stratum.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CombinatorialType {
    pub graph: Graph,
    pub weights: Vec<u32>,
    /// Slope of each edge read from tail to head.
    pub edge_slopes: Vec<LatticePoint>,
    /// Slope of each leg pointing away from its anchor.
    pub leg_slopes: Vec<LatticePoint>,
}

impl CombinatorialType {
    pub fn new(
        graph: Graph,
        weights: Vec<u32>,
        edge_slopes: Vec<LatticePoint>,
        leg_slopes: Vec<LatticePoint>,
    ) -> Result<Self> {
        if weights.len() != graph.num_vertices
            || edge_slopes.len() != graph.edges.len()
            || leg_slopes.len() != graph.legs.len()
        {
            return Err(Error::InvalidType("weight or slope count mismatch".into()));
        }
        Ok(Self { graph, weights, edge_slopes, leg_slopes })
    }

    /// Weightless type with the given data.
    pub fn weightless(
        num_vertices: usize,
        edges: Vec<(usize, usize, LatticePoint)>,
        legs: Vec<(usize, LatticePoint)>,
    ) -> Result<Self> {
        let graph = Graph::new(
            num_vertices,
            edges.iter().map(|&(a, b, _)| (a, b)).collect(),
            legs.iter().map(|&(a, _)| a).collect(),
        )?;
        Self::new(
            graph,
            vec![0; num_vertices],
            edges.iter().map(|e| e.2).collect(),
            legs.iter().map(|l| l.1).collect(),
        )
    }

    pub fn num_vertices(&self) -> usize {
        self.graph.num_vertices
    }

    /// Outgoing slopes at `v`; a loop appears twice with opposite signs.
    pub fn star(&self, v: usize) -> Vec<LatticePoint> {
        let mut out = Vec::new();
        for (&(a, b), &s) in self.graph.edges.iter().zip(&self.edge_slopes) {
            if a == v {
                out.push(s);
            }
            if b == v {
                out.push(-s);
            }
        }
        for (&a, &s) in self.graph.legs.iter().zip(&self.leg_slopes) {
            if a == v {
                out.push(s);
            }
        }
        out
    }

    pub fn genus(&self) -> i64 {
        genus_of(&self.graph, &self.weights)
    }

    pub fn is_balanced_at(&self, v: usize) -> bool {
        self.star(v)
            .into_iter()
            .fold(LatticePoint::ZERO, |acc, s| acc + s)
            .is_zero()
    }

    pub fn check_balancing(&self) -> bool {
        (0..self.num_vertices()).all(|v| self.is_balanced_at(v))
    }

    /// Indices of legs with slope zero.
    pub fn contracted_legs(&self) -> Vec<usize> {
        (0..self.leg_slopes.len())
            .filter(|&i| self.leg_slopes[i].is_zero())
            .collect()
    }

    pub fn contracted_edges(&self) -> Vec<usize> {
        (0..self.edge_slopes.len())
            .filter(|&i| self.edge_slopes[i].is_zero())
            .collect()
    }

    /// Non-zero leg slopes.
    pub fn degree(&self) -> TropicalDegree {
        let vs: Vec<LatticePoint> = self
            .leg_slopes
            .iter()
            .copied()
            .filter(|s| !s.is_zero())
            .collect();
        TropicalDegree::from_vectors(&vs)
    }

    /// All leg slopes in leg order, zeros included.
    pub fn extended_degree(&self) -> Vec<LatticePoint> {
        self.leg_slopes.clone()
    }

    pub fn is_weightless(&self) -> bool {
        self.weights.iter().all(|&w| w == 0)
    }

    pub fn is_trivalent(&self) -> bool {
        (0..self.num_vertices()).all(|v| self.graph.valence(v) == 3)
    }

    pub fn overvalency(&self) -> i64 {
        (0..self.num_vertices())
            .map(|v| (self.graph.valence(v) as i64 - 3).max(0))
            .sum()
    }

    /// Weighted contraction of the edges in `set`.
    ///
    /// Every connected component of the subgraph spanned by `set` becomes one
    /// vertex whose weight is the total weight plus the first Betti number of
    /// the component. Vertices are renumbered by first appearance.
    pub fn contract(&self, set: &[usize]) -> Result<Self> {
        let n = self.num_vertices();
        let mut remove = vec![false; self.graph.edges.len()];
        let mut uf = UnionFind::new(n);
        for &e in set {
            if e >= remove.len() {
                return Err(Error::InvalidArgument(format!("edge {e} out of range")));
            }
            remove[e] = true;
            let (a, b) = self.graph.edges[e];
            uf.union(a, b);
        }
        let mut label = vec![usize::MAX; n];
        let mut count = 0;
        for v in 0..n {
            let r = uf.find(v);
            if label[r] == usize::MAX {
                label[r] = count;
                count += 1;
            }
            label[v] = label[r];
        }
        let mut weights = vec![0u32; count];
        let mut comp_vertices = vec![0i64; count];
        let mut comp_edges = vec![0i64; count];
        for v in 0..n {
            weights[label[v]] += self.weights[v];
            comp_vertices[label[v]] += 1;
        }
        let mut edges = Vec::new();
        let mut slopes = Vec::new();
        for (i, &(a, b)) in self.graph.edges.iter().enumerate() {
            if remove[i] {
                comp_edges[label[a]] += 1;
            } else {
                edges.push((label[a], label[b]));
                slopes.push(self.edge_slopes[i]);
            }
        }
        for c in 0..count {
            weights[c] += (comp_edges[c] - comp_vertices[c] + 1) as u32;
        }
        let legs = self.graph.legs.iter().map(|&a| label[a]).collect();
        Self::new(Graph::new(count, edges, legs)?, weights, slopes, self.leg_slopes.clone())
    }

    /// `|∇| + r + (rank N - 3) χ - ov` with `rank N = 2`.
    pub fn expected_dimension(&self, r: i64) -> i64 {
        const RANK: i64 = 2;
        self.degree().size() as i64 + r + (RANK - 3) * self.graph.euler_characteristic()
            - self.overvalency()
    }

    /// Product of `|det|` of two outgoing slopes over all vertices not
    /// adjacent to contracted legs.
    pub fn mikhalkin_multiplicity(&self) -> Result<u64> {
        if !self.is_weightless() {
            return Err(Error::NotTrivalent("positive vertex weight".into()));
        }
        let mut contracted_at = vec![false; self.num_vertices()];
        for (&a, s) in self.graph.legs.iter().zip(&self.leg_slopes) {
            if s.is_zero() {
                contracted_at[a] = true;
            }
        }
        let mut product: u64 = 1;
        for v in 0..self.num_vertices() {
            let star = self.star(v);
            if star.len() != 3 {
                return Err(Error::NotTrivalent(format!("vertex {v} has valence {}", star.len())));
            }
            if !contracted_at[v] {
                product *= star[0].cross(star[1]).unsigned_abs();
            }
        }
        Ok(product)
    }

    /// `|det|` for every pair of outgoing slopes at a trivalent vertex.
    pub fn vertex_areas(&self, v: usize) -> Option<[u64; 3]> {
        let s = self.star(v);
        (s.len() == 3).then(|| {
            [
                s[0].cross(s[1]).unsigned_abs(),
                s[0].cross(s[2]).unsigned_abs(),
                s[1].cross(s[2]).unsigned_abs(),
            ]
        })
    }

    /// Order of the automorphism group. Automorphisms fix every leg and
    /// respect weights and slopes; parallel edges with identical data can be
    /// permuted and a loop of slope zero can be reversed.
    pub fn automorphism_count(&self) -> u64 {
        let n = self.num_vertices();
        let keys = self.edge_keys(&(0..n).collect::<Vec<_>>());
        let mut sorted = keys.clone();
        sorted.sort();
        let mut per_map: u64 = 1;
        let mut i = 0;
        while i < sorted.len() {
            let j = (i..sorted.len()).find(|&j| sorted[j] != sorted[i]).unwrap_or(sorted.len());
            per_map *= (1..=(j - i) as u64).product::<u64>();
            let (a, b, s) = sorted[i];
            if a == b && s.is_zero() {
                per_map *= 1 << (j - i);
            }
            i = j;
        }
        let mut map = vec![usize::MAX; n];
        let mut used = vec![false; n];
        for &a in &self.graph.legs {
            if map[a] == usize::MAX {
                map[a] = a;
                used[a] = true;
            }
        }
        let order: Vec<usize> = (0..n).filter(|&v| map[v] == usize::MAX).collect();
        let mut count = 0u64;
        self.extend_automorphism(&order, 0, &mut map, &mut used, &sorted, &mut count);
        count * per_map
    }

    fn extend_automorphism(
        &self,
        order: &[usize],
        depth: usize,
        map: &mut Vec<usize>,
        used: &mut Vec<bool>,
        target: &[(usize, usize, LatticePoint)],
        count: &mut u64,
    ) {
        if depth == order.len() {
            let mut keys = self.edge_keys(map);
            keys.sort();
            if keys == target {
                *count += 1;
            }
            return;
        }
        let v = order[depth];
        for w in 0..self.num_vertices() {
            if used[w]
                || self.weights[w] != self.weights[v]
                || self.graph.valence(w) != self.graph.valence(v)
            {
                continue;
            }
            map[v] = w;
            used[w] = true;
            self.extend_automorphism(order, depth + 1, map, used, target, count);
            used[w] = false;
            map[v] = usize::MAX;
        }
    }

    /// Orientation-normalized edge data after relabelling vertices by `map`.
    fn edge_keys(&self, map: &[usize]) -> Vec<(usize, usize, LatticePoint)> {
        self.graph
            .edges
            .iter()
            .zip(&self.edge_slopes)
            .map(|(&(a, b), &s)| {
                let fwd = (map[a], map[b], s);
                let bwd = (map[b], map[a], -s);
                fwd.min(bwd)
            })
            .collect()
    }

    /// A canonical relabelling of the vertices together with the encoding
    /// it produces. Two types are isomorphic exactly when their encodings
    /// agree.
    pub fn canonical_form(&self) -> (Vec<usize>, TypeEncoding) {
        let mut best: Option<(TypeEncoding, Vec<usize>)> = None;
        canonical_search(self, &mut |labels| {
            let enc = self.encode(labels);
            if best.as_ref().is_none_or(|(b, _)| enc < *b) {
                best = Some((enc, labels.to_vec()));
            }
        });
        let (enc, labels) = best.expect("canonical search visits at least one labelling");
        (labels, enc)
    }

    pub fn canonical_encoding(&self) -> TypeEncoding {
        self.canonical_form().1
    }

    /// The type relabelled into canonical vertex order with canonical edge
    /// order and orientation.
    pub fn canonicalize(&self) -> CombinatorialType {
        let enc = self.canonical_encoding();
        let graph = Graph {
            num_vertices: enc.weights.len(),
            edges: enc.edges.iter().map(|&(a, b, _)| (a, b)).collect(),
            legs: enc.legs.iter().map(|&(a, _)| a).collect(),
        };
        CombinatorialType {
            graph,
            weights: enc.weights.clone(),
            edge_slopes: enc.edges.iter().map(|e| e.2).collect(),
            leg_slopes: enc.legs.iter().map(|l| l.1).collect(),
        }
    }

    fn encode(&self, labels: &[usize]) -> TypeEncoding {
        let mut weights = vec![0; self.num_vertices()];
        for v in 0..self.num_vertices() {
            weights[labels[v]] = self.weights[v];
        }
        let mut edges = self.edge_keys(labels);
        edges.sort();
        let legs = self
            .graph
            .legs
            .iter()
            .zip(&self.leg_slopes)
            .map(|(&a, &s)| (labels[a], s))
            .collect();
        TypeEncoding { weights, edges, legs }
    }
}

/// Label-independent description of a type in canonical vertex order.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct TypeEncoding {
    pub weights: Vec<u32>,
    pub edges: Vec<(usize, usize, LatticePoint)>,
    pub legs: Vec<(usize, LatticePoint)>,
}

/// Visits the labellings produced by colour refinement with
/// individualization. Each labelling maps vertex to position.
fn canonical_search(t: &CombinatorialType, visit: &mut dyn FnMut(&[usize])) {
    let n = t.num_vertices();
    if n == 0 {
        visit(&[]);
        return;
    }
    // Initial colour: weight, valence and the sorted leg data at the vertex.
    let mut init: Vec<(u32, usize, Vec<(usize, LatticePoint)>)> = (0..n)
        .map(|v| {
            let legs = t
                .graph
                .legs
                .iter()
                .enumerate()
                .filter(|(_, &a)| a == v)
                .map(|(i, _)| (i, t.leg_slopes[i]))
                .collect();
            (t.weights[v], t.graph.valence(v), legs)
        })
        .collect();
    let colours = rank_values(&std::mem::take(&mut init));
    individualize(t, colours, visit);
}

fn rank_values<T: Ord + Clone>(values: &[T]) -> Vec<usize> {
    let mut sorted: Vec<T> = values.to_vec();
    sorted.sort();
    sorted.dedup();
    values
        .iter()
        .map(|v| sorted.binary_search(v).expect("value present"))
        .collect()
}

fn refine(t: &CombinatorialType, mut colours: Vec<usize>) -> Vec<usize> {
    let n = colours.len();
    loop {
        let sigs: Vec<(usize, Vec<(usize, LatticePoint)>)> = (0..n)
            .map(|v| {
                let mut nb = Vec::new();
                for (&(a, b), &s) in t.graph.edges.iter().zip(&t.edge_slopes) {
                    if a == v {
                        nb.push((colours[b], s));
                    }
                    if b == v {
                        nb.push((colours[a], -s));
                    }
                }
                nb.sort();
                (colours[v], nb)
            })
            .collect();
        let next = rank_values(&sigs);
        let before = colours.iter().collect::<std::collections::BTreeSet<_>>().len();
        let after = next.iter().collect::<std::collections::BTreeSet<_>>().len();
        colours = next;
        if after == before {
            return colours;
        }
    }
}

fn individualize(t: &CombinatorialType, colours: Vec<usize>, visit: &mut dyn FnMut(&[usize])) {
    let colours = refine(t, colours);
    let n = colours.len();
    let mut sizes = vec![0usize; n];
    for &c in &colours {
        sizes[c] += 1;
    }
    // Smallest non-singleton cell, ties broken by colour.
    let cell = (0..n)
        .filter(|&c| sizes[c] > 1)
        .min_by_key(|&c| (sizes[c], c));
    let Some(cell) = cell else {
        visit(&colours);
        return;
    };
    for v in (0..n).filter(|&v| colours[v] == cell) {
        // Split v off ahead of the rest of its cell.
        let shifted: Vec<usize> = colours
            .iter()
            .enumerate()
            .map(|(u, &c)| 2 * c + usize::from(c == cell && u != v))
            .collect();
        individualize(t, rank_values(&shifted), visit);
    }
}

/// A combinatorial type with edge lengths and vertex positions.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParamTropicalCurve {
    pub ty: CombinatorialType,
    pub lengths: Vec<Q>,
    pub positions: Vec<QPoint>,
}

impl ParamTropicalCurve {
    /// Builds a curve and checks every edge relation exactly.
    pub fn new(ty: CombinatorialType, lengths: Vec<Q>, positions: Vec<QPoint>) -> Result<Self> {
        let c = Self { ty, lengths, positions };
        c.verify()?;
        Ok(c)
    }

    pub fn verify(&self) -> Result<()> {
        if self.lengths.len() != self.ty.graph.edges.len()
            || self.positions.len() != self.ty.num_vertices()
        {
            return Err(Error::InvalidType("length or position count mismatch".into()));
        }
        for (i, (&(a, b), &s)) in self.ty.graph.edges.iter().zip(&self.ty.edge_slopes).enumerate() {
            if !self.lengths[i].is_positive() {
                return Err(Error::InvalidType(format!("edge {i} has non-positive length")));
            }
            if self.positions[a].offset(&self.lengths[i], s) != self.positions[b] {
                return Err(Error::InvalidType(format!("edge {i} violates h(head) - h(tail) = l * slope")));
            }
        }
        if !self.ty.check_balancing() {
            return Err(Error::InvalidType("unbalanced vertex".into()));
        }
        Ok(())
    }

    pub fn metric_curve(&self) -> TropicalCurve {
        TropicalCurve {
            graph: self.ty.graph.clone(),
            weights: self.ty.weights.clone(),
            lengths: self.lengths.clone(),
        }
    }

    /// Image of leg `i`'s anchor.
    pub fn leg_position(&self, i: usize) -> &QPoint {
        &self.positions[self.ty.graph.legs[i]]
    }

    /// Canonical key identifying the curve up to isomorphism.
    pub fn canonical_key(&self) -> CurveKey {
        let mut best: Option<CurveKey> = None;
        canonical_search(&self.ty, &mut |labels| {
            let encoding = self.ty.encode(labels);
            let n = labels.len();
            let mut positions = vec![QPoint::zero(); n];
            for v in 0..n {
                positions[labels[v]] = self.positions[v].clone();
            }
            let mut edges: Vec<(usize, usize, LatticePoint, Q)> = self
                .ty
                .graph
                .edges
                .iter()
                .zip(&self.ty.edge_slopes)
                .zip(&self.lengths)
                .map(|((&(a, b), &s), l)| {
                    let fwd = (labels[a], labels[b], s, l.clone());
                    let bwd = (labels[b], labels[a], -s, l.clone());
                    fwd.min(bwd)
                })
                .collect();
            edges.sort();
            let key = CurveKey {
                encoding,
                positions,
                lengths: edges.into_iter().map(|e| e.3).collect(),
            };
            if best.as_ref().is_none_or(|b| key < *b) {
                best = Some(key);
            }
        });
        best.expect("at least one labelling")
    }
}

/// Isomorphism-invariant identity of a parametrized curve.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CurveKey {
    pub encoding: TypeEncoding,
    pub positions: Vec<QPoint>,
    pub lengths: Vec<Q>,
}

/// A random balanced type: a random multigraph with random edge slopes,
/// closed up at each vertex by a leg carrying the missing slope, plus a few
/// contracted legs. Used by property tests.
pub fn random_balanced_type<R: Rng>(rng: &mut R, max_vertices: usize) -> CombinatorialType {
    let n = rng.gen_range(1..=max_vertices.max(1));
    let mut edges = Vec::new();
    let edge_count = rng.gen_range(0..=n + 2);
    for _ in 0..edge_count {
        let a = rng.gen_range(0..n);
        let b = rng.gen_range(0..n);
        let s = LatticePoint::new(rng.gen_range(-3..=3), rng.gen_range(-3..=3));
        edges.push((a, b, s));
    }
    let mut legs = Vec::new();
    for v in 0..n {
        let mut sum = LatticePoint::ZERO;
        for &(a, b, s) in &edges {
            if a == v {
                sum = sum + s;
            }
            if b == v {
                sum = sum - s;
            }
        }
        if !sum.is_zero() {
            legs.push((v, -sum));
        }
        if rng.gen_bool(0.3) {
            legs.push((v, LatticePoint::ZERO));
        }
    }
    let mut t = CombinatorialType::weightless(n, edges, legs).expect("indices in range");
    for w in t.weights.iter_mut() {
        *w = rng.gen_range(0..=1);
    }
    t
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn p(x: i64, y: i64) -> LatticePoint {
        LatticePoint::new(x, y)
    }

    fn line() -> CombinatorialType {
        CombinatorialType::weightless(1, vec![], vec![(0, p(-1, 0)), (0, p(0, -1)), (0, p(1, 1))])
            .unwrap()
    }

    /// The curve of the baby example: v carries l1 = 0 and l2 = (0,-1),
    /// w carries l3 = (1,1) and l4 = (-1,0), and the edge goes from v to w.
    pub(crate) fn baby_type() -> CombinatorialType {
        CombinatorialType::weightless(
            2,
            vec![(0, 1, p(0, 1))],
            vec![(0, p(0, 0)), (0, p(0, -1)), (1, p(1, 1)), (1, p(-1, 0))],
        )
        .unwrap()
    }

    #[test]
    fn genus_examples() {
        let tree = CombinatorialType::weightless(2, vec![(0, 1, p(1, 0))], vec![]).unwrap();
        assert_eq!(tree.genus(), 0);
        let mut loop1 = CombinatorialType::weightless(1, vec![(0, 0, p(0, 0))], vec![]).unwrap();
        loop1.weights[0] = 1;
        assert_eq!(loop1.genus(), 2);
        let two_points = CombinatorialType::weightless(2, vec![], vec![]).unwrap();
        assert_eq!(two_points.genus(), -1);
    }

    #[test]
    fn stability_examples() {
        let g3 = Graph::new(1, vec![], vec![0, 0, 0]).unwrap();
        assert!(TropicalCurve::new(g3, vec![0], vec![]).unwrap().is_stable());
        let g2 = Graph::new(1, vec![], vec![0, 0]).unwrap();
        assert!(!TropicalCurve::new(g2, vec![0], vec![]).unwrap().is_stable());
        let g1 = Graph::new(1, vec![], vec![0]).unwrap();
        assert!(TropicalCurve::new(g1, vec![1], vec![]).unwrap().is_stable());
    }

    #[test]
    fn balancing_examples() {
        assert!(line().check_balancing());
        let mut bad = line();
        bad.leg_slopes[2] = p(1, 0);
        assert!(!bad.check_balancing());
        assert!(baby_type().check_balancing());
    }

    #[test]
    fn degree_examples() {
        assert_eq!(line().degree().vectors(), vec![p(-1, 0), p(0, -1), p(1, 1)]);
        let baby = baby_type();
        assert_eq!(baby.degree().vectors(), vec![p(-1, 0), p(0, -1), p(1, 1)]);
        assert_eq!(baby.contracted_legs(), vec![0]);
        let zeros = CombinatorialType::weightless(1, vec![], vec![(0, p(0, 0)); 3]).unwrap();
        assert_eq!(zeros.degree().size(), 0);
    }

    #[test]
    fn contraction_examples() {
        let tree = CombinatorialType::weightless(2, vec![(0, 1, p(1, 0))], vec![]).unwrap();
        let c = tree.contract(&[0]).unwrap();
        assert_eq!((c.num_vertices(), c.weights.clone()), (1, vec![0]));
        let cycle =
            CombinatorialType::weightless(2, vec![(0, 1, p(1, 0)), (1, 0, p(-1, 0))], vec![])
                .unwrap();
        let both = cycle.contract(&[0, 1]).unwrap();
        assert_eq!((both.num_vertices(), both.weights.clone()), (1, vec![1]));
        let one = cycle.contract(&[0]).unwrap();
        assert_eq!(one.graph.edges, vec![(0, 0)]);
        assert_eq!(one.weights, vec![0]);
        assert_eq!(one.genus(), 1);
        assert_eq!(cycle.genus(), 1);
    }

    #[test]
    fn automorphism_examples() {
        assert_eq!(line().automorphism_count(), 1);
        let s = p(1, 2);
        let bubble = CombinatorialType::weightless(2, vec![(0, 1, s), (0, 1, -s)], vec![]).unwrap();
        assert!(bubble.check_balancing());
        assert_eq!(bubble.automorphism_count(), 2);
        let tree = CombinatorialType::weightless(
            2,
            vec![(0, 1, p(1, 0))],
            vec![(0, p(-1, 0)), (0, p(0, 1)), (0, p(0, -1)), (1, p(1, 1)), (1, p(-2, -1))],
        )
        .unwrap();
        assert_eq!(tree.automorphism_count(), 1);
        let zero_loop = CombinatorialType::weightless(1, vec![(0, 0, p(0, 0))], vec![]).unwrap();
        assert_eq!(zero_loop.automorphism_count(), 2);
    }

    #[test]
    fn multiplicity_examples() {
        assert_eq!(line().mikhalkin_multiplicity().unwrap(), 1);
        let v = CombinatorialType::weightless(1, vec![], vec![(0, p(2, 1)), (0, p(-1, 1)), (0, p(-1, -2))])
            .unwrap();
        assert_eq!(v.mikhalkin_multiplicity().unwrap(), 3);
        assert_eq!(v.vertex_areas(0).unwrap(), [3, 3, 3]);
        // The vertex carrying the marked leg does not contribute.
        let marked = CombinatorialType::weightless(
            2,
            vec![(0, 1, p(2, 1))],
            vec![(0, p(0, 0)), (0, p(-2, -1)), (1, p(-1, 1)), (1, p(-1, -2))],
        )
        .unwrap();
        assert_eq!(marked.mikhalkin_multiplicity().unwrap(), 3);
        assert!(baby_type().contract(&[0]).unwrap().mikhalkin_multiplicity().is_err());
        let mut weighted = line();
        weighted.weights[0] = 1;
        assert!(weighted.mikhalkin_multiplicity().is_err());
    }

    #[test]
    fn expected_dimension_examples() {
        // Line with two marked points in the interiors of two legs.
        let marked_line = CombinatorialType::weightless(
            3,
            vec![(0, 1, p(1, 0)), (0, 2, p(0, 1))],
            vec![(1, p(0, 0)), (1, p(1, 0)), (2, p(0, 0)), (2, p(0, 1)), (0, p(-1, -1))],
        )
        .unwrap();
        assert!(marked_line.check_balancing());
        assert_eq!(marked_line.expected_dimension(2), 4);
        let merged = CombinatorialType::weightless(
            2,
            vec![(0, 1, p(1, 0))],
            vec![(1, p(0, 0)), (1, p(0, 0)), (1, p(1, 0)), (0, p(0, 1)), (0, p(-1, -1))],
        )
        .unwrap();
        assert_eq!(merged.overvalency(), 1);
        assert_eq!(merged.expected_dimension(2), 3);
        let two = CombinatorialType::weightless(
            2,
            vec![],
            vec![(0, p(-1, 0)), (0, p(0, -1)), (0, p(1, 1)), (1, p(-1, 0)), (1, p(0, -1)), (1, p(1, 1))],
        )
        .unwrap();
        assert_eq!(two.expected_dimension(0), 4);
    }

    #[test]
    fn canonical_form_detects_isomorphism() {
        let t = baby_type();
        // Same type with the vertices listed in the other order and the edge reversed.
        let u = CombinatorialType::weightless(
            2,
            vec![(0, 1, p(0, -1))],
            vec![(1, p(0, 0)), (1, p(0, -1)), (0, p(1, 1)), (0, p(-1, 0))],
        )
        .unwrap();
        assert_eq!(t.canonical_encoding(), u.canonical_encoding());
        let mut w = u.clone();
        w.leg_slopes.swap(2, 3);
        w.graph.legs.swap(2, 3);
        assert_ne!(t.canonical_encoding(), w.canonical_encoding());
        assert_eq!(t.canonicalize().canonical_encoding(), t.canonical_encoding());
    }

    #[test]
    fn canonical_form_is_invariant_under_relabelling() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..100 {
            let t = random_balanced_type(&mut rng, 5);
            let n = t.num_vertices();
            let mut perm: Vec<usize> = (0..n).collect();
            for i in (1..n).rev() {
                perm.swap(i, rng.gen_range(0..=i));
            }
            let mut weights = vec![0; n];
            for v in 0..n {
                weights[perm[v]] = t.weights[v];
            }
            let graph = Graph {
                num_vertices: n,
                edges: t.graph.edges.iter().map(|&(a, b)| (perm[b], perm[a])).collect(),
                legs: t.graph.legs.iter().map(|&a| perm[a]).collect(),
            };
            let u = CombinatorialType {
                graph,
                weights,
                edge_slopes: t.edge_slopes.iter().map(|&s| -s).collect(),
                leg_slopes: t.leg_slopes.clone(),
            };
            assert_eq!(t.canonical_encoding(), u.canonical_encoding());
            assert_eq!(t.automorphism_count(), u.automorphism_count());
        }
    }

    #[test]
    fn contraction_invariants_on_random_types() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..200 {
            let t = random_balanced_type(&mut rng, 6);
            assert!(t.check_balancing());
            let set: Vec<usize> = (0..t.graph.edges.len()).filter(|_| rng.gen_bool(0.5)).collect();
            let c = t.contract(&set).unwrap();
            assert_eq!(c.genus(), t.genus());
            assert!(c.check_balancing());
            assert_eq!(c.degree(), t.degree());
            let legsum = c.leg_slopes.iter().fold(LatticePoint::ZERO, |a, &s| a + s);
            assert!(legsum.is_zero());
        }
    }
}
