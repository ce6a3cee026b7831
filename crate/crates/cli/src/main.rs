//! `tropenum`: command-line front end for the tropical enumeration library.
//!
//! Exit codes: 0 on success, 2 for unreadable or invalid input, 3 when no
//! generic point configuration was found, 1 for anything else.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use tropenum::enumeration::{count_curves, dimension_bound_audit, CountRequest};
use tropenum::json::{
    audit_report_to_json, count_report_to_json, curve_to_json, polygon_to_json, rational_spec_from_json,
    valued_spec_from_json,
};
use tropenum::lattice::{component_lower_bound, delta_invariant, kite_lower_bound, severi_dimension};
use tropenum::rational::format_q;
use tropenum::recursions::{kontsevich_table, CaporasoHarris, SeveriDegreeKey, TangencyProfile};
use tropenum::svg::render_curve;
use tropenum::valued::{
    baby_example, cuspidal_triangle_spec, mu_with_valuation, non_immersion_points, tropicalize_rational, Field,
    PointOnLine,
};
use tropenum::{Error, LatticePolygon};

#[derive(Parser, Debug)]
#[command(name = "tropenum", version, about = "Exact enumeration of plane tropical curves")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Lattice invariants of a polygon and the dimension of its Severi variety.
    Polygon {
        #[command(flatten)]
        polygon: PolygonSource,
        #[arg(long, default_value_t = 0, allow_hyphen_values = true)]
        genus: i64,
        /// Print JSON instead of text.
        #[arg(long)]
        json: bool,
    },
    /// Count curves through generic points with Mikhalkin multiplicities.
    Count {
        #[command(flatten)]
        polygon: PolygonSource,
        #[arg(long, allow_hyphen_values = true)]
        genus: i64,
        /// Count irreducible curves only.
        #[arg(long)]
        irreducible: bool,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Count every numbering of equal-slope legs separately.
        #[arg(long)]
        ordered_legs: bool,
        /// Point configurations to try before giving up.
        #[arg(long, default_value_t = 8)]
        max_attempts: u32,
        /// Write the full report as JSON here (`-` for standard output).
        #[arg(long)]
        json: Option<PathBuf>,
        /// Write one SVG per counted curve into this directory.
        #[arg(long)]
        svg_dir: Option<PathBuf>,
    },
    /// Tables from the Kontsevich and Caporaso-Harris recursions.
    Recursion {
        #[command(subcommand)]
        which: RecursionCommand,
    },
    /// Lower bound for the number of components of the irreducible Severi variety.
    Components {
        #[command(flatten)]
        polygon: PolygonSource,
        #[arg(long)]
        genus: i64,
        #[arg(long)]
        json: bool,
    },
    /// Weighted component bound for the kite with vertices (0,0), (±1,k), (0,k+k').
    Kite {
        #[arg(long)]
        k: i64,
        #[arg(long)]
        k_prime: i64,
        #[arg(long)]
        genus: i64,
    },
    /// Tropicalize a rational curve given by side data.
    Tropicalize {
        /// The line x + μy = z with the valuation of μ given by --mu-valuation.
        #[arg(long, conflicts_with = "spec", required_unless_present = "spec")]
        baby_example: bool,
        #[arg(long, default_value_t = 1)]
        mu_valuation: u32,
        /// JSON specification: polygon, side_points, optional character and marks.
        #[arg(long)]
        spec: Option<PathBuf>,
        /// Write the curve as JSON here instead of standard output.
        #[arg(long)]
        json: Option<PathBuf>,
        #[arg(long)]
        svg: Option<PathBuf>,
    },
    /// Points where a rational curve given by side data fails to be immersed.
    Nonimmersion {
        /// The cuspidal triangle (0,0), (2,1), (1,2) with side points 0, 1, ∞.
        #[arg(long, conflicts_with = "spec", required_unless_present = "spec")]
        example_4_3: bool,
        /// JSON specification with rational side points.
        #[arg(long)]
        spec: Option<PathBuf>,
        /// Field characteristic: 0 for the rationals or a prime.
        #[arg(long = "char", default_value_t = 0)]
        characteristic: u64,
        #[arg(long)]
        json: bool,
    },
    /// Check that no stratum reaches one point condition more than is counted.
    Audit {
        #[command(flatten)]
        polygon: PolygonSource,
        #[arg(long, default_value_t = 0, allow_hyphen_values = true)]
        genus: i64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        json: bool,
    },
}

#[derive(Subcommand, Debug)]
enum RecursionCommand {
    /// N(d) for d = 1..max_d.
    Kontsevich {
        #[arg(long)]
        max_d: u32,
        #[arg(long, value_enum, default_value_t = TableFormat::Tsv)]
        format: TableFormat,
    },
    /// N^{d,δ}(α,β); without --delta the whole row for d.
    Ch {
        #[arg(long)]
        d: u32,
        #[arg(long)]
        delta: Option<i64>,
        /// Comma-separated α; defaults to empty.
        #[arg(long, default_value = "")]
        alpha: String,
        /// Comma-separated β; defaults to (d).
        #[arg(long)]
        beta: Option<String>,
        #[arg(long, value_enum, default_value_t = TableFormat::Tsv)]
        format: TableFormat,
    },
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum TableFormat {
    Tsv,
    Json,
}

#[derive(Args, Debug)]
#[group(required = true, multiple = false)]
struct PolygonSource {
    /// Vertices as "x1,y1;x2,y2;...".
    #[arg(long)]
    vertices: Option<String>,
    /// File with one "x y" pair per line.
    #[arg(long, visible_alias = "file")]
    polygon_file: Option<PathBuf>,
    /// The triangle with vertices (0,0), (d,0), (0,d).
    #[arg(long)]
    degree_triangle: Option<i64>,
    /// The kite (0,0), (1,k), (0,k+k'), (-1,k) given as "k,k'".
    #[arg(long)]
    kite: Option<String>,
}

impl PolygonSource {
    fn load(&self) -> Result<LatticePolygon> {
        if let Some(v) = &self.vertices {
            return Ok(LatticePolygon::parse_inline(v)?);
        }
        if let Some(path) = &self.polygon_file {
            let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
            return Ok(LatticePolygon::parse_document(&text)?);
        }
        if let Some(spec) = &self.kite {
            let parts = parse_sequence(spec)?;
            let [k, k_prime] = parts[..] else {
                return Err(InputError(format!("--kite expects \"k,k'\", got {spec:?}")).into());
            };
            return Ok(LatticePolygon::kite(k as i64, k_prime as i64)?);
        }
        let d = self.degree_triangle.expect("clap requires one polygon source");
        Ok(LatticePolygon::degree_triangle(d)?)
    }
}

/// Input problems are reported as such even when they surface as I/O.
#[derive(Debug)]
struct InputError(String);

impl std::fmt::Display for InputError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for InputError {}

fn exit_code(err: &anyhow::Error) -> u8 {
    if err.downcast_ref::<InputError>().is_some() || err.downcast_ref::<std::io::Error>().is_some() {
        return 2;
    }
    match err.downcast_ref::<Error>() {
        Some(Error::GenericityExhausted { .. }) => 3,
        Some(
            Error::InvalidPolygon(_)
            | Error::Parse(_)
            | Error::InvalidArgument(_)
            | Error::InvalidRequest(_)
            | Error::InconsistentProfile { .. }
            | Error::MarkCollision,
        ) => 2,
        _ => 1,
    }
}

fn write_json(path: Option<&Path>, value: &Value) -> Result<()> {
    let text = serde_json::to_string_pretty(value)? + "\n";
    match path {
        Some(p) if p != Path::new("-") => {
            fs::write(p, text).with_context(|| format!("writing {}", p.display()))?;
        }
        _ => print!("{text}"),
    }
    Ok(())
}

fn parse_sequence(s: &str) -> Result<Vec<u64>> {
    s.split(',')
        .map(str::trim)
        .filter(|x| !x.is_empty())
        .map(|x| x.parse::<u64>().map_err(|_| InputError(format!("not a count: {x:?}")).into()))
        .collect()
}

fn polygon_cmd(polygon: &LatticePolygon, genus: i64, as_json: bool) -> Result<()> {
    let sides: Vec<Value> = polygon
        .sides()
        .iter()
        .map(|s| {
            json!({
                "start": [s.start.x, s.start.y],
                "end": [s.end.x, s.end.y],
                "inner_normal": [s.inner_normal.x, s.inner_normal.y],
                "lattice_length": s.integral_length,
            })
        })
        .collect();
    let degree: Vec<Value> =
        polygon.dual_degree().entries.iter().map(|(v, k)| json!({ "slope": [v.x, v.y], "count": k })).collect();
    let report = json!({
        "vertices": polygon_to_json(polygon),
        "boundary": polygon.boundary_count(),
        "interior": polygon.interior_count(),
        "double_area": polygon.double_area(),
        "sides": sides,
        "dual_degree": degree,
        "genus": genus,
        "severi_dimension": severi_dimension(polygon, genus),
        "delta": delta_invariant(polygon, genus),
    });
    if as_json {
        return write_json(None, &report);
    }
    println!("boundary={}", polygon.boundary_count());
    println!("interior={}", polygon.interior_count());
    println!("double_area={}", polygon.double_area());
    for s in polygon.sides() {
        println!(
            "side {}: {} -> {} normal {} length {}",
            s.index, s.start, s.end, s.inner_normal, s.integral_length
        );
    }
    let legs: Vec<String> = polygon.dual_degree().entries.iter().map(|(v, k)| format!("{v}x{k}")).collect();
    println!("dual_degree={}", legs.join(" "));
    println!("dim={}", severi_dimension(polygon, genus));
    println!("delta={}", delta_invariant(polygon, genus));
    Ok(())
}

fn recursion_cmd(which: &RecursionCommand) -> Result<()> {
    match which {
        RecursionCommand::Kontsevich { max_d, format } => {
            if *max_d == 0 {
                return Err(InputError("--max-d must be at least 1".into()).into());
            }
            let values = kontsevich_table(*max_d);
            match format {
                TableFormat::Tsv => {
                    println!("d\tN");
                    for (i, v) in values.iter().enumerate() {
                        println!("{}\t{v}", i + 1);
                    }
                }
                TableFormat::Json => {
                    let rows: Vec<Value> =
                        values.iter().enumerate().map(|(i, v)| json!({ "d": i + 1, "N": v.to_string() })).collect();
                    write_json(None, &Value::Array(rows))?;
                }
            }
        }
        RecursionCommand::Ch { d, delta, alpha, beta, format } => {
            let alpha = parse_sequence(alpha)?;
            let beta = match beta {
                Some(b) => parse_sequence(b)?,
                None => vec![*d as u64],
            };
            let profile = TangencyProfile::new(alpha, beta);
            let max_delta = (*d as i64) * (*d as i64 - 1) / 2;
            let deltas: Vec<i64> = match delta {
                Some(x) if *x < 0 => return Err(InputError(format!("delta must be non-negative, got {x}")).into()),
                Some(x) => vec![*x],
                None => (0..=max_delta).collect(),
            };
            let memo = CaporasoHarris::new();
            let mut rows = Vec::new();
            for delta in deltas {
                let key = SeveriDegreeKey { d: *d, delta, profile: profile.clone() };
                rows.push((delta, memo.evaluate(&key)?));
            }
            match format {
                TableFormat::Tsv => {
                    println!("d\tdelta\tN");
                    for (delta, v) in &rows {
                        println!("{d}\t{delta}\t{v}");
                    }
                }
                TableFormat::Json => {
                    let rows: Vec<Value> = rows
                        .iter()
                        .map(|(delta, v)| json!({ "d": d, "delta": delta, "N": v.to_string() }))
                        .collect();
                    write_json(None, &Value::Array(rows))?;
                }
            }
        }
    }
    Ok(())
}

fn point_text(p: &PointOnLine<tropenum::Q>) -> String {
    match p {
        PointOnLine::Finite(v) if v.is_integer() => v.numer().to_string(),
        PointOnLine::Finite(v) => format_q(v),
        PointOnLine::Infinity => "inf".into(),
    }
}

fn run(cli: Cli) -> Result<()> {
    match cli.command {
        Command::Polygon { polygon, genus, json } => polygon_cmd(&polygon.load()?, genus, json),
        Command::Count { polygon, genus, irreducible, seed, ordered_legs, max_attempts, json, svg_dir } => {
            let mut req = CountRequest::new(polygon.load()?, genus);
            req.irreducible_only = irreducible;
            req.seed = seed;
            req.divide_unordered_legs = !ordered_legs;
            req.max_attempts = max_attempts;
            let report = count_curves(&req)?;
            if let Some(dir) = &svg_dir {
                fs::create_dir_all(dir).with_context(|| format!("creating {}", dir.display()))?;
                for t in &report.per_type {
                    let path = dir.join(format!("curve_{:04}.svg", t.id));
                    fs::write(&path, render_curve(&t.curve, Some(t.multiplicity)))
                        .with_context(|| format!("writing {}", path.display()))?;
                }
            }
            match json.as_deref() {
                Some(p) if p == Path::new("-") => write_json(None, &count_report_to_json(&report))?,
                other => {
                    if let Some(p) = other {
                        write_json(Some(p), &count_report_to_json(&report))?;
                    }
                    println!("total {}", report.total);
                    println!("types {}", report.per_type.len());
                    println!("points {}", report.point_conditions);
                    println!("resamples {}", report.resample_attempts);
                }
            }
            Ok(())
        }
        Command::Recursion { which } => recursion_cmd(&which),
        Command::Components { polygon, genus, json } => {
            let polygon = polygon.load()?;
            let (count, lattices) = component_lower_bound(&polygon, genus)?;
            if json {
                let list: Vec<Value> = lattices
                    .iter()
                    .map(|l| json!({ "basis": [[l.basis[0].x, l.basis[0].y], [l.basis[1].x, l.basis[1].y]], "index": l.index }))
                    .collect();
                write_json(None, &json!({ "lower_bound": count, "sublattices": list }))?;
            } else {
                println!("{count}");
            }
            Ok(())
        }
        Command::Kite { k, k_prime, genus } => {
            println!("{}", kite_lower_bound(k, k_prime, genus)?);
            Ok(())
        }
        Command::Tropicalize { baby_example: _, mu_valuation, spec, json, svg } => {
            let (spec, marks) = match &spec {
                Some(path) => {
                    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
                    valued_spec_from_json(&text)?
                }
                None => baby_example(mu_with_valuation(mu_valuation))?,
            };
            let curve = tropicalize_rational(&spec, &marks)?;
            if let Some(p) = &svg {
                fs::write(p, render_curve(&curve, None)).with_context(|| format!("writing {}", p.display()))?;
            }
            write_json(json.as_deref(), &curve_to_json(&curve))
        }
        Command::Nonimmersion { example_4_3: _, spec, characteristic, json } => {
            let spec = match &spec {
                Some(path) => {
                    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
                    rational_spec_from_json(&text)?.0
                }
                None => cuspidal_triangle_spec(),
            };
            let field = if characteristic == 0 { Field::Rationals } else { Field::Prime(characteristic) };
            let points = non_immersion_points(&spec, field)?;
            let texts: Vec<String> = points.iter().map(point_text).collect();
            if json {
                write_json(None, &json!({ "field": field.to_string(), "points": texts }))?;
            } else if texts.is_empty() {
                println!("none");
            } else {
                for t in texts {
                    println!("t={t}");
                }
            }
            Ok(())
        }
        Command::Audit { polygon, genus, seed, json } => {
            let report = dimension_bound_audit(&polygon.load()?, genus, seed)?;
            if json {
                write_json(None, &audit_report_to_json(&report))?;
            } else {
                println!("{}", if report.passed() { "passed" } else { "FAILED" });
                println!("points {}", report.points);
                println!("skeletons {}", report.skeletons);
                println!("superabundant {}", report.superabundant);
                println!("marked_types_checked {}", report.marked_types_checked);
                println!("max_dimension {}", report.max_dimension);
                println!("max_evaluation_rank {}", report.max_evaluation_rank);
                for v in &report.violations {
                    println!("violation: {v}");
                }
            }
            if report.passed() {
                Ok(())
            } else {
                Err(anyhow::anyhow!("the dimension audit found violations"))
            }
        }
    }
}

fn configure_threads() -> Result<()> {
    let Ok(value) = std::env::var("TROPENUM_THREADS") else { return Ok(()) };
    let n: usize = value
        .trim()
        .parse()
        .ok()
        .filter(|&n| n > 0)
        .ok_or_else(|| InputError(format!("TROPENUM_THREADS must be a positive integer, got {value:?}")))?;
    rayon::ThreadPoolBuilder::new().num_threads(n).build_global().context("configuring worker threads")?;
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = configure_threads().and_then(|()| run(cli));
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(err) => {
            eprintln!("error: {err:#}");
            ExitCode::from(exit_code(&err))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exit_codes_follow_the_error_kind() {
        let code = |e: Error| exit_code(&anyhow::Error::from(e));
        assert_eq!(code(Error::GenericityExhausted { attempts: 8 }), 3);
        assert_eq!(code(Error::Parse("x".into())), 2);
        assert_eq!(code(Error::InvalidPolygon("x".into())), 2);
        assert_eq!(code(Error::MarkCollision), 2);
        assert_eq!(code(Error::Degenerate("x".into())), 1);
        assert_eq!(exit_code(&InputError("x".into()).into()), 2);
    }

    #[test]
    fn sequences() {
        assert_eq!(parse_sequence("1, 0,2").unwrap(), vec![1, 0, 2]);
        assert!(parse_sequence("").unwrap().is_empty());
        assert!(parse_sequence("1,-1").is_err());
    }
}
