//! End-to-end acceptance checks. Each criterion prints one `PASS` or `FAIL`
//! line; the test fails if any criterion fails.

use std::collections::BTreeSet;

use num_bigint::BigUint;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use tropenum::enumeration::types::unordered_leg_key;
use tropenum::enumeration::{count_curves, dimension_bound_audit, generate_types, CountRequest};
use tropenum::lattice::{component_lower_bound, kite_lower_bound};
use tropenum::rational::q_int;
use tropenum::recursions::{kontsevich, severi_degree};
use tropenum::tropical::random_balanced_type;
use tropenum::valued::{
    baby_example, cuspidal_triangle_spec, mu_with_valuation, non_immersion_points, tropicalize_rational, Field,
    PointOnLine,
};
use tropenum::{LatticePoint, LatticePolygon, QPoint};

const SEEDS: [u64; 3] = [1, 2, 3];

struct Outcome {
    failures: Vec<String>,
}

impl Outcome {
    fn new() -> Self {
        Self { failures: Vec::new() }
    }

    fn check(&mut self, ok: bool, what: impl FnOnce() -> String) {
        if !ok {
            self.failures.push(what());
        }
    }

    fn report(self, criterion: &str, summary: &mut Vec<String>) {
        if self.failures.is_empty() {
            println!("PASS {criterion}");
        } else {
            let shown: Vec<&str> = self.failures.iter().take(3).map(String::as_str).collect();
            let more = self.failures.len().saturating_sub(shown.len());
            let tail = if more > 0 { format!(" (and {more} more)") } else { String::new() };
            println!("FAIL {criterion}: {}{tail}", shown.join("; "));
            summary.push(criterion.to_string());
        }
    }
}

fn p(x: i64, y: i64) -> LatticePoint {
    LatticePoint::new(x, y)
}

/// Totals for every seed, or the error text of the first failing run.
fn totals(polygon: &LatticePolygon, genus: i64, irreducible: bool) -> Result<Vec<BigUint>, String> {
    SEEDS
        .iter()
        .map(|&seed| {
            let mut req = CountRequest::new(polygon.clone(), genus);
            req.irreducible_only = irreducible;
            req.seed = seed;
            count_curves(&req).map(|r| r.total).map_err(|e| e.to_string())
        })
        .collect()
}

/// Records whether all seeds agree and returns the common value.
fn agreed(totals: Result<Vec<BigUint>, String>, label: &str, seeds: &mut Outcome) -> Option<BigUint> {
    match totals {
        Ok(values) => {
            seeds.check(values.iter().all(|v| *v == values[0]), || format!("{label} differs across seeds: {values:?}"));
            Some(values[0].clone())
        }
        Err(e) => {
            seeds.check(false, || format!("{label}: {e}"));
            None
        }
    }
}

fn as_big(v: num_bigint::BigInt) -> BigUint {
    v.to_biguint().expect("non-negative")
}

/// Lattice points of a convex polygon counted directly, without Pick.
fn brute_force_points(vertices: &[LatticePoint]) -> (i64, i64) {
    let n = vertices.len();
    let (min_x, max_x) = (vertices.iter().map(|v| v.x).min().unwrap(), vertices.iter().map(|v| v.x).max().unwrap());
    let (min_y, max_y) = (vertices.iter().map(|v| v.y).min().unwrap(), vertices.iter().map(|v| v.y).max().unwrap());
    let (mut interior, mut boundary) = (0, 0);
    for x in min_x..=max_x {
        for y in min_y..=max_y {
            let sides: Vec<i64> = (0..n)
                .map(|i| {
                    let (a, b) = (vertices[i], vertices[(i + 1) % n]);
                    (b.x - a.x) * (y - a.y) - (b.y - a.y) * (x - a.x)
                })
                .collect();
            if sides.iter().all(|&s| s > 0) {
                interior += 1;
            } else if sides.iter().all(|&s| s >= 0) {
                boundary += 1;
            }
        }
    }
    (interior, boundary)
}

fn shoelace(vertices: &[LatticePoint]) -> i64 {
    let n = vertices.len();
    (0..n).map(|i| vertices[i].x * vertices[(i + 1) % n].y - vertices[(i + 1) % n].x * vertices[i].y).sum::<i64>().abs()
}

#[test]
fn acceptance() {
    let mut failed = Vec::new();
    let mut seeds = Outcome::new();
    let triangle = |d| LatticePolygon::degree_triangle(d).unwrap();

    // 1. Tropical counts of rational curves against Kontsevich's recursion.
    let mut c1 = Outcome::new();
    for d in 1..=4u32 {
        let count = agreed(totals(&triangle(d as i64), 0, true), &format!("rational d={d}"), &mut seeds);
        let expected = as_big(kontsevich(d).unwrap());
        c1.check(count.as_ref() == Some(&expected), || format!("d={d}: counted {count:?}, recursion {expected}"));
    }
    c1.report("1 tropical rational counts equal N(d) for d=1..4", &mut failed);

    // 2. Caporaso-Harris against closed forms, a pairing count and all-curve counts.
    let mut c2 = Outcome::new();
    for d in 2..=6u32 {
        let value = severi_degree(d, 1).unwrap();
        let closed = 3 * (d as i64 - 1).pow(2);
        c2.check(value == closed.into(), || format!("N^{{{d},1}} = {value}, expected {closed}"));
    }
    // Four points split into two pairs, each pair spanning a line.
    let points = [0u8, 1, 2, 3];
    let pairings: BTreeSet<BTreeSet<BTreeSet<u8>>> = points[1..]
        .iter()
        .map(|&partner| {
            let first: BTreeSet<u8> = [0, partner].into();
            let second: BTreeSet<u8> = points.iter().copied().filter(|q| !first.contains(q)).collect();
            [first, second].into()
        })
        .collect();
    let n21 = severi_degree(2, 1).unwrap();
    c2.check(n21 == (pairings.len() as i64).into(), || format!("N^{{2,1}} = {n21}, pairings {}", pairings.len()));
    let all_quartics = agreed(totals(&triangle(4), 0, false), "all quartics with delta 3", &mut seeds);
    let n43 = as_big(severi_degree(4, 3).unwrap());
    c2.check(all_quartics.as_ref() == Some(&n43), || format!("all-curve count {all_quartics:?}, N^{{4,3}} = {n43}"));
    let all_conics = agreed(totals(&triangle(2), -1, false), "line pairs", &mut seeds);
    c2.check(all_conics == Some(3u32.into()), || format!("line pairs counted {all_conics:?}"));
    c2.report("2 Caporaso-Harris values: 3(d-1)^2, line pairs, N^{4,3} = all-curve count", &mut failed);

    // 3. One cubic through nine points; one curve through the full point count.
    let mut c3 = Outcome::new();
    let cubic = agreed(totals(&triangle(3), 1, true), "elliptic cubics", &mut seeds);
    c3.check(cubic == Some(1u32.into()), || format!("elliptic cubics {cubic:?}"));
    for d in 1..=6u32 {
        let v = severi_degree(d, 0).unwrap();
        c3.check(v == 1.into(), || format!("N^{{{d},0}} = {v}"));
    }
    // Every counted conic type is one of the generated marked types.
    let mut req = CountRequest::new(triangle(2), 0);
    req.seed = SEEDS[0];
    if let Ok(report) = count_curves(&req) {
        let generated: BTreeSet<_> =
            generate_types(&triangle(2).dual_degree(), 0, 5, true).unwrap().map(|t| unordered_leg_key(&t)).collect();
        let missing = report.per_type.iter().filter(|t| !generated.contains(&unordered_leg_key(&t.ty))).count();
        c3.check(missing == 0, || format!("{missing} counted conic types are not generated"));
    }
    c3.report("3 one elliptic cubic through 9 points; N^{d,0} = 1 for d=1..6", &mut failed);

    // 4. Collected above.
    seeds.report("4 every count agrees across seeds 1, 2, 3", &mut failed);

    // 5. Dimension audit.
    let mut c5 = Outcome::new();
    let mut cases: Vec<(LatticePolygon, i64)> = Vec::new();
    for d in 1..=3 {
        for g in -1..=1 {
            if g <= triangle(d).interior_count() && triangle(d).boundary_count() + g >= 1 {
                cases.push((triangle(d), g));
            }
        }
    }
    cases.push((LatticePolygon::new(&[p(0, 0), p(2, 1), p(1, 2)]).unwrap(), 0));
    for (polygon, g) in &cases {
        match dimension_bound_audit(polygon, *g, 7) {
            Ok(report) => c5.check(report.passed(), || format!("{polygon:?} g={g}: {:?}", report.violations)),
            Err(e) => c5.check(false, || format!("{polygon:?} g={g}: {e}")),
        }
    }
    c5.report("5 dimension audit for d<=3, g<=1 and the triangle (0,0),(2,1),(1,2)", &mut failed);

    // 6. Component bounds.
    let mut c6 = Outcome::new();
    let wide = LatticePolygon::new(&[p(0, 0), p(1, 0), p(-16, 105)]).unwrap();
    let components = component_lower_bound(&wide, 1).map(|(n, _)| n);
    c6.check(matches!(components, Ok(7)), || format!("component bound {components:?}"));
    let kite = kite_lower_bound(2, 3, 2);
    c6.check(matches!(kite, Ok(2)), || format!("kite bound {kite:?}"));
    c6.report("6 component bound 7 and kite bound 2", &mut failed);

    // 7. Baby example.
    let mut c7 = Outcome::new();
    match baby_example(mu_with_valuation(1)).and_then(|(spec, marks)| tropicalize_rational(&spec, &marks)) {
        Ok(curve) => {
            let positions: BTreeSet<QPoint> = curve.positions.iter().cloned().collect();
            let expected: BTreeSet<QPoint> =
                [QPoint::new(q_int(0), q_int(0)), QPoint::new(q_int(0), q_int(1))].into();
            c7.check(positions == expected, || format!("vertices {:?}", curve.positions));
            c7.check(curve.lengths == [q_int(1)], || format!("lengths {:?}", curve.lengths));
            let slopes: BTreeSet<LatticePoint> = curve.ty.leg_slopes.iter().copied().collect();
            let expected: BTreeSet<LatticePoint> = [p(0, 0), p(0, -1), p(1, 1), p(-1, 0)].into();
            c7.check(slopes == expected && curve.ty.leg_slopes.len() == 4, || {
                format!("leg slopes {:?}", curve.ty.leg_slopes)
            });
        }
        Err(e) => c7.check(false, || e.to_string()),
    }
    c7.report("7 baby example tropicalizes to the expected two-vertex curve", &mut failed);

    // 8. Non-immersion points of the cuspidal triangle.
    let mut c8 = Outcome::new();
    let spec = cuspidal_triangle_spec();
    let f3 = non_immersion_points(&spec, Field::Prime(3));
    c8.check(matches!(&f3, Ok(v) if *v == [PointOnLine::Finite(q_int(-1))]), || format!("F3: {f3:?}"));
    for field in [Field::Rationals, Field::Prime(5)] {
        let points = non_immersion_points(&spec, field);
        c8.check(matches!(&points, Ok(v) if v.is_empty()), || format!("{field}: {points:?}"));
    }
    c8.report("8 non-immersion at t=-1 over F3 only", &mut failed);

    // 9. Property suites.
    let mut c9 = Outcome::new();
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    let mut polygons = 0;
    while polygons < 200 {
        let n = rng.gen_range(3..=7);
        let pts: Vec<LatticePoint> = (0..n).map(|_| p(rng.gen_range(-8..=8), rng.gen_range(-8..=8))).collect();
        let Ok(polygon) = LatticePolygon::new(&pts) else { continue };
        polygons += 1;
        let vertices = polygon.vertices();
        let (interior, boundary) = brute_force_points(vertices);
        let area2 = shoelace(vertices);
        c9.check(
            interior == polygon.interior_count()
                && boundary == polygon.boundary_count()
                && area2 == 2 * interior + boundary - 2,
            || format!("Pick fails on {vertices:?}"),
        );
    }
    for _ in 0..200 {
        let t = random_balanced_type(&mut rng, 5);
        let edges = t.graph.edges.len();
        let subset: Vec<usize> = (0..edges).filter(|_| rng.gen_bool(0.5)).collect();
        let c = t.contract(&subset).unwrap();
        c9.check(c.genus() == t.genus() && c.check_balancing() == t.check_balancing(), || {
            format!("contraction of {subset:?} changes {t:?}")
        });
    }
    // Marks only add vertices where every area vanishes, so unmarked types
    // cover every vertex that carries a multiplicity.
    for (d, g) in [(1, 0), (2, 0), (3, 0), (3, 1)] {
        let degree = triangle(d).dual_degree();
        for t in generate_types(&degree, g, 0, true).unwrap() {
            for v in 0..t.num_vertices() {
                if let Some(areas) = t.vertex_areas(v) {
                    c9.check(areas.iter().all(|&a| a == areas[0]), || format!("vertex {v} of {t:?}: {areas:?}"));
                }
            }
        }
    }
    c9.report("9 Pick, contraction invariance and Mikhalkin pair independence", &mut failed);

    assert!(failed.is_empty(), "failed criteria: {failed:?}");
}
