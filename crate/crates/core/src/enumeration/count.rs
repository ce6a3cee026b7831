//! Severi degrees as weighted counts of tropical curves through points.

use std::collections::{BTreeMap, HashMap};

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::Zero;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::lattice::{LatticePoint, LatticePolygon, TropicalDegree};
use crate::rational::{factorial, QPoint, Q};
use crate::search::{CurveSearch, FoundCurve, Slopes};
use crate::strata::{solve_through_points, PointConfiguration};
use crate::tropical::{CombinatorialType, ParamTropicalCurve};

/// What to count.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CountRequest {
    pub polygon: LatticePolygon,
    pub genus: i64,
    /// Count only irreducible curves, i.e. connected tropical curves.
    pub irreducible_only: bool,
    pub seed: u64,
    /// Identify curves that differ only in how legs of equal slope are
    /// numbered.
    pub divide_unordered_legs: bool,
    /// Point configurations to try before giving up on genericity.
    pub max_attempts: u32,
}

impl CountRequest {
    pub fn new(polygon: LatticePolygon, genus: i64) -> Self {
        Self { polygon, genus, irreducible_only: true, seed: 0, divide_unordered_legs: true, max_attempts: 8 }
    }

    /// `r = |boundary lattice points| + genus - 1`.
    pub fn point_count(&self) -> i64 {
        self.polygon.boundary_count() + self.genus - 1
    }
}

/// How legs of equal slope were treated in a report.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LegConvention {
    /// One curve per orbit of the permutations of equal-slope legs. This is
    /// the Severi degree.
    Unordered,
    /// Every numbering of the legs counted separately, which multiplies the
    /// unordered count by the product of `k_i!` over leg multiplicities.
    Ordered,
}

/// One counted curve and its type.
#[derive(Clone, Debug)]
pub struct TypeCount {
    /// Position in the report, ordered by canonical form of the type.
    pub id: usize,
    pub ty: CombinatorialType,
    pub components: usize,
    pub multiplicity: u64,
    pub automorphisms: u64,
    /// Certified solutions of the type through the configuration.
    pub solutions: u64,
    pub curve: ParamTropicalCurve,
}

#[derive(Clone, Debug)]
pub struct CountReport {
    pub total: BigUint,
    pub per_type: Vec<TypeCount>,
    pub configuration: PointConfiguration,
    /// Configurations discarded as special before this one.
    pub resample_attempts: u32,
    pub leg_convention: LegConvention,
    pub point_conditions: usize,
}

/// Counts curves of genus `genus` dual to the polygon through
/// `point_count()` generic points, weighted by Mikhalkin multiplicity.
///
/// Points are drawn from the request's seed. A configuration through which
/// some curve is special is discarded and the next one drawn.
pub fn count_curves(req: &CountRequest) -> Result<CountReport> {
    let r = req.point_count();
    if r < 0 {
        return Err(Error::InvalidRequest(format!(
            "genus {} needs a negative number of points ({r})",
            req.genus
        )));
    }
    let r = r as usize;
    if r > 64 {
        return Err(Error::InvalidRequest(format!("at most 64 point conditions are supported, got {r}")));
    }
    let convention = if req.divide_unordered_legs { LegConvention::Unordered } else { LegConvention::Ordered };
    let degree = req.polygon.dual_degree();
    let plan = plan_components(&req.polygon, &degree, req.genus, r, req.irreducible_only)?;
    for attempt in 0..req.max_attempts.max(1) {
        let configuration = PointConfiguration::sample(r, req.seed, attempt);
        match count_at(&req.polygon, &plan, &configuration) {
            Ok(per_type) => {
                let total = total_of(&per_type, &degree, convention)?;
                return Ok(CountReport {
                    total,
                    per_type,
                    configuration,
                    resample_attempts: attempt,
                    leg_convention: convention,
                    point_conditions: r,
                });
            }
            Err(Error::Degenerate(_)) => continue,
            Err(e) => return Err(e),
        }
    }
    Err(Error::GenericityExhausted { attempts: req.max_attempts.max(1) })
}

/// A component of a counted curve: its degree, genus and marked points.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
struct Piece {
    block: usize,
    genus: usize,
    points: u64,
}

/// All ways a curve through the points can break into components.
struct Plan {
    blocks: Vec<TropicalDegree>,
    decompositions: Vec<Vec<Piece>>,
}

/// Lists the decompositions into components. Each component of degree `D_i`
/// and genus `g_i` passes through `|D_i| + g_i - 1` of the points, and
/// using every point and every leg forces `sum (g_i - 1) = genus - 1`.
/// The component through the lowest unused point is chosen first, so each
/// decomposition appears once.
fn plan_components(
    polygon: &LatticePolygon,
    degree: &TropicalDegree,
    genus: i64,
    r: usize,
    irreducible_only: bool,
) -> Result<Plan> {
    let mut plan = Plan { blocks: Vec::new(), decompositions: Vec::new() };
    if r == 0 {
        return Ok(plan);
    }
    let all = u64::MAX >> (64 - r);
    if irreducible_only {
        if (0..=polygon.interior_count()).contains(&genus) {
            plan.blocks.push(degree.clone());
            plan.decompositions.push(vec![Piece { block: 0, genus: genus as usize, points: all }]);
        }
        return Ok(plan);
    }
    let dirs: Vec<LatticePoint> = degree.entries.iter().map(|e| e.0).collect();
    let full: Vec<usize> = degree.entries.iter().map(|e| e.1).collect();
    let mut block_index: HashMap<Vec<usize>, usize> = HashMap::new();
    let mut stack = Vec::new();
    decompose(&dirs, &full, all, genus - 1, &mut block_index, &mut plan, &mut stack)?;
    Ok(plan)
}

fn decompose(
    dirs: &[LatticePoint],
    legs: &[usize],
    points: u64,
    excess: i64,
    block_index: &mut HashMap<Vec<usize>, usize>,
    plan: &mut Plan,
    stack: &mut Vec<Piece>,
) -> Result<()> {
    if points == 0 {
        if excess == 0 && legs.iter().all(|&k| k == 0) {
            plan.decompositions.push(stack.clone());
        }
        return Ok(());
    }
    let lowest = points.trailing_zeros();
    let others = points & !(1u64 << lowest);
    for a in sub_counts(legs) {
        let size: usize = a.iter().sum();
        if size < 2 {
            continue;
        }
        let sum = a.iter().zip(dirs).fold(LatticePoint::ZERO, |acc, (&k, &v)| acc + (k as i64) * v);
        if !sum.is_zero() {
            continue;
        }
        let block = TropicalDegree::from_counts(
            dirs.iter().zip(&a).filter(|e| *e.1 > 0).map(|(&v, &k)| (v, k)).collect::<BTreeMap<_, _>>(),
        );
        let interior = LatticePolygon::from_degree(&block).map(|p| p.interior_count()).unwrap_or(0);
        let rest: Vec<usize> = legs.iter().zip(&a).map(|(x, y)| x - y).collect();
        for g in 0..=interior.max(0) as usize {
            let need = size + g - 1;
            if need > points.count_ones() as usize {
                break;
            }
            let next = block_index.len();
            let b = *block_index.entry(a.clone()).or_insert(next);
            if b == plan.blocks.len() {
                plan.blocks.push(block.clone());
            }
            for chosen in subsets_of(others, need - 1) {
                let mask = chosen | 1u64 << lowest;
                stack.push(Piece { block: b, genus: g, points: mask });
                decompose(dirs, &rest, points & !mask, excess - (g as i64 - 1), block_index, plan, stack)?;
                stack.pop();
            }
        }
    }
    Ok(())
}

/// Every count vector `a <= m`.
fn sub_counts(m: &[usize]) -> Vec<Vec<usize>> {
    let mut out = vec![Vec::new()];
    for &k in m {
        out = out
            .into_iter()
            .flat_map(|p: Vec<usize>| {
                (0..=k).map(move |c| {
                    let mut p = p.clone();
                    p.push(c);
                    p
                })
            })
            .collect();
    }
    out
}

/// Every subset of the bits of `mask` with `k` elements.
fn subsets_of(mask: u64, k: usize) -> Vec<u64> {
    let bits: Vec<u32> = (0..64).filter(|&i| mask >> i & 1 == 1).collect();
    let mut out = Vec::new();
    fn rec(bits: &[u32], k: usize, acc: u64, out: &mut Vec<u64>) {
        if k == 0 {
            out.push(acc);
            return;
        }
        for i in 0..bits.len() {
            if bits.len() - i < k {
                break;
            }
            rec(&bits[i + 1..], k - 1, acc | 1u64 << bits[i], out);
        }
    }
    rec(&bits, k, 0, &mut out);
    out
}

/// Searches every component the plan needs, assembles the curves and
/// certifies each one against the linear system of its type.
fn count_at(
    polygon: &LatticePolygon,
    plan: &Plan,
    configuration: &PointConfiguration,
) -> Result<Vec<TypeCount>> {
    let slopes = Slopes::of_polygon(polygon);
    // Queries grouped by block, then by genus.
    let mut queries: Vec<BTreeMap<usize, Vec<u64>>> = vec![BTreeMap::new(); plan.blocks.len()];
    for piece in plan.decompositions.iter().flatten() {
        queries[piece.block].entry(piece.genus).or_default().push(piece.points);
    }
    for per_genus in &mut queries {
        for masks in per_genus.values_mut() {
            masks.sort_unstable();
            masks.dedup();
        }
    }
    let found: Vec<Result<HashMap<Piece, Vec<FoundCurve>>>> = plan
        .blocks
        .par_iter()
        .zip(queries.par_iter())
        .enumerate()
        .map(|(b, (block, per_genus))| {
            let cycle = Slopes::of_degree(block);
            let mut search = CurveSearch::new(block, &configuration.points, &slopes)?;
            let mut out = HashMap::new();
            for (&genus, masks) in per_genus {
                let lists = search.connected(block, genus, masks, cycle.cycle_slopes())?;
                for (&points, list) in masks.iter().zip(lists) {
                    out.insert(Piece { block: b, genus, points }, list);
                }
            }
            Ok(out)
        })
        .collect();
    let mut by_piece = HashMap::new();
    for f in found {
        by_piece.extend(f?);
    }
    let mut curves: Vec<Vec<(u64, &FoundCurve)>> = Vec::new();
    for decomposition in &plan.decompositions {
        let mut partial: Vec<Vec<(u64, &FoundCurve)>> = vec![Vec::new()];
        for piece in decomposition {
            let list = &by_piece[piece];
            partial = partial
                .into_iter()
                .flat_map(|p| {
                    list.iter().map(move |c| {
                        let mut p = p.clone();
                        p.push((piece.points, c));
                        p
                    })
                })
                .collect();
        }
        curves.extend(partial);
    }
    let mut per_type: Vec<TypeCount> =
        curves.par_iter().map(|parts| certify(parts, configuration)).collect::<Result<Vec<_>>>()?;
    per_type.sort_by_cached_key(|t| t.ty.canonical_encoding());
    for (i, t) in per_type.iter_mut().enumerate() {
        t.id = i;
    }
    Ok(per_type)
}

/// Disjoint union of components, each given with the mask of the points it
/// passes through. Contracted legs come first in point order, then the other
/// legs by slope and by the line they lie on.
pub(crate) fn disjoint_union(parts: &[(u64, &ParamTropicalCurve)]) -> Result<ParamTropicalCurve> {
    let mut positions: Vec<QPoint> = Vec::new();
    let mut edges = Vec::new();
    let mut lengths: Vec<Q> = Vec::new();
    let mut marked: Vec<(u32, usize)> = Vec::new();
    let mut legs: Vec<(LatticePoint, Q, usize)> = Vec::new();
    for &(mask, c) in parts {
        let offset = positions.len();
        positions.extend(c.positions.iter().cloned());
        for (&(a, b), &s) in c.ty.graph.edges.iter().zip(&c.ty.edge_slopes) {
            edges.push((a + offset, b + offset, s));
        }
        lengths.extend(c.lengths.iter().cloned());
        let mut bits = (0..64u32).filter(|&i| mask >> i & 1 == 1);
        for (&v, &s) in c.ty.graph.legs.iter().zip(&c.ty.leg_slopes) {
            if s.is_zero() {
                let point = bits.next().ok_or_else(|| {
                    Error::InvalidType("component has more marked points than its mask".into())
                })?;
                marked.push((point, v + offset));
            } else {
                legs.push((s, c.positions[v].cross_dir(s), v + offset));
            }
        }
    }
    marked.sort();
    legs.sort();
    let all_legs = marked
        .iter()
        .map(|&(_, v)| (v, LatticePoint::ZERO))
        .chain(legs.iter().map(|&(s, _, v)| (v, s)))
        .collect();
    let ty = CombinatorialType::weightless(positions.len(), edges, all_legs)?;
    ParamTropicalCurve::new(ty, lengths, positions)
}

/// Checks one assembled curve against the conditions for being counted and
/// returns its contribution.
///
/// The type must be weightless and trivalent with no contracted edges, the
/// points must cut out exactly this curve among curves of its type, and the
/// multiplicity found during the search must agree with the product over
/// vertices.
fn certify(parts: &[(u64, &FoundCurve)], configuration: &PointConfiguration) -> Result<TypeCount> {
    let curves: Vec<(u64, &ParamTropicalCurve)> = parts.iter().map(|&(m, f)| (m, &f.curve)).collect();
    let curve = disjoint_union(&curves)?;
    let ty = curve.ty.clone();
    if !ty.is_weightless() || !ty.is_trivalent() {
        return Err(Error::NotTrivalent("a curve through the points is not weightless and trivalent".into()));
    }
    if !ty.contracted_edges().is_empty() {
        return Err(Error::InvalidType("a curve through the points contracts an edge".into()));
    }
    let solutions = solve_through_points(&ty, configuration)?;
    if solutions.len() != 1 || solutions[0].canonical_key() != curve.canonical_key() {
        return Err(Error::InvalidType(format!(
            "type of a found curve has {} solutions through the points that do not match it",
            solutions.len()
        )));
    }
    let multiplicity = ty.mikhalkin_multiplicity()?;
    let expected: u64 = parts.iter().map(|p| p.1.multiplicity).product();
    if multiplicity != expected {
        return Err(Error::InvalidType(format!(
            "search multiplicity {expected} differs from the vertex product {multiplicity}"
        )));
    }
    Ok(TypeCount {
        id: 0,
        components: ty.graph.component_count(),
        automorphisms: ty.automorphism_count(),
        multiplicity,
        solutions: 1,
        ty,
        curve,
    })
}

/// Sum of multiplicity times solutions over `|Aut|`, which must come out
/// integral, scaled for ordered legs if requested.
fn total_of(per_type: &[TypeCount], degree: &TropicalDegree, convention: LegConvention) -> Result<BigUint> {
    let mut sum = BigRational::zero();
    for t in per_type {
        sum += BigRational::new(BigInt::from(t.multiplicity) * BigInt::from(t.solutions), BigInt::from(t.automorphisms));
    }
    if !sum.is_integer() {
        return Err(Error::InvalidType(format!("weighted count {sum} is not an integer")));
    }
    let mut total = sum.to_integer();
    if convention == LegConvention::Ordered {
        for &(_, k) in &degree.entries {
            total *= factorial(k as u64);
        }
    }
    total.to_biguint().ok_or_else(|| Error::InvalidType("negative count".into()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::{One, ToPrimitive};
    use crate::recursions::{kontsevich, severi_degree};

    fn total(d: i64, genus: i64, irreducible: bool, seed: u64) -> BigUint {
        let mut req = CountRequest::new(LatticePolygon::degree_triangle(d).unwrap(), genus);
        req.irreducible_only = irreducible;
        req.seed = seed;
        count_curves(&req).unwrap().total
    }

    #[test]
    fn lines_and_conics() {
        assert_eq!(total(1, 0, true, 0), BigUint::one());
        assert_eq!(total(2, 0, true, 1), BigUint::one());
        // Pairs of lines through four points: three.
        assert_eq!(total(2, -1, false, 2), BigUint::from(3u32));
        assert_eq!(total(2, -1, true, 2), BigUint::zero());
    }

    #[test]
    fn rational_cubics_match_kontsevich() {
        let n = total(3, 0, true, 5);
        assert_eq!(BigInt::from(n), kontsevich(3).unwrap());
    }

    #[test]
    fn all_cubics_with_one_node_match_caporaso_harris() {
        // Irreducible rational cubics plus a line and a conic.
        let n = total(3, 0, false, 3);
        assert_eq!(BigInt::from(n), severi_degree(3, 1).unwrap());
        assert_eq!(severi_degree(3, 1).unwrap().to_u64(), Some(12));
    }

    #[test]
    fn report_shape() {
        let mut req = CountRequest::new(LatticePolygon::degree_triangle(2).unwrap(), 0);
        req.divide_unordered_legs = false;
        let report = count_curves(&req).unwrap();
        assert_eq!(report.point_conditions, 5);
        assert_eq!(report.leg_convention, LegConvention::Ordered);
        // 2!^3 numberings of the legs of the one conic.
        assert_eq!(report.total, BigUint::from(8u32));
        assert_eq!(report.per_type.len(), 1);
        let t = &report.per_type[0];
        assert_eq!((t.id, t.components, t.automorphisms, t.solutions), (0, 1, 1, 1));
        assert_eq!(t.ty.contracted_legs(), (0..5).collect::<Vec<_>>());
    }

    #[test]
    fn negative_point_count_is_rejected() {
        let req = CountRequest::new(LatticePolygon::degree_triangle(1).unwrap(), -3);
        assert!(matches!(count_curves(&req), Err(Error::InvalidRequest(_))));
    }

    #[test]
    fn subset_enumeration() {
        assert_eq!(subsets_of(0b10110, 2), vec![0b00110, 0b10010, 0b10100]);
        assert_eq!(subsets_of(0b111, 0), vec![0]);
    }
}
