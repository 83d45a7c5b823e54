//! `spectra`: reports on the Zariski/flat/patch topologies of prime spectra.
//!
//! Subjects are finite rings (a small description language), finite posets
//! (text files), or the symbolic spectra of Z and F_p[x]. Reports are JSON
//! with sorted keys and sorted listings, so identical invocations produce
//! byte-identical output; DOT export draws the Hasse diagram.

use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Map, Value};
use spectra_core::*;

#[derive(Parser)]
#[command(name = "spectra", version, about = "topology reports on prime spectra")]
struct Cli {
    /// Include wall-clock timings in the report (breaks byte-identical runs)
    #[arg(long, global = true)]
    timing: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Report on the spectrum of a finite ring description
    Ring {
        /// e.g. "zmod 30", "polyquot 2 [1,1,1]", "product zmod 2; zmod 3",
        /// "table ops.json"
        desc: String,
        /// Comma-separated sections: primes,idempotents,pierce,components,
        /// topology,dual,oracle,noetherian
        #[arg(long)]
        report: String,
        /// Also write the JSON report to a file
        #[arg(long)]
        json: Option<PathBuf>,
        /// Write a DOT Hasse diagram of the spectrum
        #[arg(long)]
        dot: Option<PathBuf>,
    },
    /// Report on a finite poset file (lines "a < b", comments with '#')
    Poset {
        file: PathBuf,
        /// Comma-separated sections: components,topology,dual,oracle,noetherian
        #[arg(long)]
        report: String,
        /// Oracle size bound override (clamped to 16)
        #[arg(long)]
        max_exhaustive: Option<usize>,
        #[arg(long)]
        json: Option<PathBuf>,
        #[arg(long)]
        dot: Option<PathBuf>,
    },
    /// Queries against the symbolic spectrum of the integers
    Zspec {
        #[command(flatten)]
        query: SymQuery,
    },
    /// Queries against the symbolic spectrum of F_p[x]
    Fpspec {
        p: usize,
        #[command(flatten)]
        query: SymQuery,
    },
}

#[derive(Args)]
struct SymQuery {
    /// Closure query, e.g. "flat:{2,3}" or "zariski:{generic}"
    #[arg(long)]
    closure: Option<String>,
    /// Irreducible-component family for a view: flat, zariski, or patch
    #[arg(long)]
    components: Option<String>,
    /// How many components to materialize
    #[arg(long, default_value_t = 5)]
    limit: usize,
    /// Report the noetherian flags per view
    #[arg(long)]
    noetherian: bool,
    /// Condition-(vi) instance "family:point", e.g. "all-primes:generic"
    /// or "{2,3}:5"
    #[arg(long)]
    condition_vi: Option<String>,
    #[arg(long)]
    json: Option<PathBuf>,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(oracle_ok) => {
            if oracle_ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            match e {
                Error::SizeBound(_) => ExitCode::from(3),
                _ => ExitCode::from(2),
            }
        }
    }
}

fn run(cli: Cli) -> Result<bool> {
    let started = Instant::now();
    let timing = cli.timing;
    match cli.command {
        Command::Ring {
            desc,
            report,
            json,
            dot,
        } => {
            let sections = parse_sections(&report, RING_SECTIONS)?;
            let ring = parse_ring_desc(&desc)?;
            let (poset, _) = spec_poset(&ring)?;
            let (value, oracle_ok) = ring_report(&ring, &poset, &sections)?;
            emit(value, json.as_deref(), timing, started)?;
            if let Some(path) = dot {
                write_file(&path, &export_dot(&poset))?;
            }
            Ok(oracle_ok)
        }
        Command::Poset {
            file,
            report,
            max_exhaustive,
            json,
            dot,
        } => {
            let sections = parse_sections(&report, POSET_SECTIONS)?;
            let text = fs::read_to_string(&file).map_err(|e| Error::ParseError {
                line: 0,
                column: 0,
                message: format!("cannot read {}: {e}", file.display()),
            })?;
            let poset = parse_poset(&text)?;
            let bound = max_exhaustive
                .unwrap_or(ORACLE_DEFAULT_BOUND)
                .min(ORACLE_HARD_BOUND);
            let (value, oracle_ok) = poset_report(&poset, &sections, bound)?;
            emit(value, json.as_deref(), timing, started)?;
            if let Some(path) = dot {
                write_file(&path, &export_dot(&poset))?;
            }
            Ok(oracle_ok)
        }
        Command::Zspec { query } => {
            let value = symbolic_report(SymbolicSpectrum::integers(), &query)?;
            emit(value, query.json.as_deref(), timing, started)?;
            Ok(true)
        }
        Command::Fpspec { p, query } => {
            let value = symbolic_report(SymbolicSpectrum::poly_over_fp(p)?, &query)?;
            emit(value, query.json.as_deref(), timing, started)?;
            Ok(true)
        }
    }
}

fn emit(
    mut value: Value,
    json_path: Option<&std::path::Path>,
    timing: bool,
    started: Instant,
) -> Result<()> {
    if timing {
        value["timing_ms"] = json!(started.elapsed().as_millis() as u64);
    }
    let text = format!("{:#}\n", value);
    print!("{text}");
    if let Some(path) = json_path {
        write_file(path, &text)?;
    }
    Ok(())
}

fn write_file(path: &std::path::Path, text: &str) -> Result<()> {
    fs::write(path, text).map_err(|e| Error::InvalidParameter(format!(
        "cannot write {}: {e}",
        path.display()
    )))
}

// ---------------------------------------------------------------- sections

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Section {
    Primes,
    Idempotents,
    Pierce,
    Components,
    Topology,
    Dual,
    Oracle,
    Noetherian,
}

const RING_SECTIONS: &[(&str, Section)] = &[
    ("primes", Section::Primes),
    ("idempotents", Section::Idempotents),
    ("pierce", Section::Pierce),
    ("components", Section::Components),
    ("topology", Section::Topology),
    ("dual", Section::Dual),
    ("oracle", Section::Oracle),
    ("noetherian", Section::Noetherian),
];

const POSET_SECTIONS: &[(&str, Section)] = &[
    ("components", Section::Components),
    ("topology", Section::Topology),
    ("dual", Section::Dual),
    ("oracle", Section::Oracle),
    ("noetherian", Section::Noetherian),
];

fn parse_sections(csv: &str, allowed: &[(&str, Section)]) -> Result<Vec<Section>> {
    let mut out = Vec::new();
    for name in csv.split(',').map(str::trim).filter(|s| !s.is_empty()) {
        let section = allowed
            .iter()
            .find(|(n, _)| *n == name)
            .map(|(_, s)| *s)
            .ok_or_else(|| Error::ParseError {
                line: 1,
                column: 1,
                message: format!(
                    "unknown report section '{name}' (expected one of {})",
                    allowed
                        .iter()
                        .map(|(n, _)| *n)
                        .collect::<Vec<_>>()
                        .join(", ")
                ),
            })?;
        if !out.contains(&section) {
            out.push(section);
        }
    }
    if out.is_empty() {
        return Err(Error::ParseError {
            line: 1,
            column: 1,
            message: "at least one report section is required".into(),
        });
    }
    Ok(out)
}

// ------------------------------------------------------------ ring parsing

fn parse_ring_desc(text: &str) -> Result<FiniteRing> {
    let text = text.trim();
    let err = |message: String| Error::ParseError {
        line: 1,
        column: 1,
        message,
    };
    if let Some(rest) = text.strip_prefix("zmod") {
        let n: usize = rest
            .trim()
            .parse()
            .map_err(|_| err(format!("zmod expects an integer modulus, got '{}'", rest.trim())))?;
        FiniteRing::zmod(n)
    } else if let Some(rest) = text.strip_prefix("polyquot") {
        let rest = rest.trim();
        let open = rest
            .find('[')
            .ok_or_else(|| err("polyquot expects 'polyquot P [c0,c1,...]'".into()))?;
        if !rest.ends_with(']') {
            return Err(err("polyquot coefficient list must end with ']'".into()));
        }
        let p: usize = rest[..open]
            .trim()
            .parse()
            .map_err(|_| err(format!("polyquot expects a prime, got '{}'", rest[..open].trim())))?;
        let coeffs = rest[open + 1..rest.len() - 1]
            .split(',')
            .map(|c| {
                c.trim()
                    .parse::<usize>()
                    .map_err(|_| err(format!("bad coefficient '{}'", c.trim())))
            })
            .collect::<Result<Vec<usize>>>()?;
        FiniteRing::poly_quotient(p, coeffs)
    } else if let Some(rest) = text.strip_prefix("product") {
        let factors = rest
            .split(';')
            .map(parse_ring_desc)
            .collect::<Result<Vec<FiniteRing>>>()?;
        FiniteRing::product(factors)
    } else if let Some(rest) = text.strip_prefix("table") {
        parse_table_file(rest.trim())
    } else {
        Err(err(format!(
            "unknown ring description '{text}' (expected zmod, polyquot, product, or table)"
        )))
    }
}

fn parse_table_file(path: &str) -> Result<FiniteRing> {
    let err = |message: String| Error::ParseError {
        line: 1,
        column: 1,
        message,
    };
    let text =
        fs::read_to_string(path).map_err(|e| err(format!("cannot read {path}: {e}")))?;
    let value: Value =
        serde_json::from_str(&text).map_err(|e| err(format!("bad JSON in {path}: {e}")))?;
    let field = |name: &str| {
        value
            .get(name)
            .cloned()
            .ok_or_else(|| err(format!("table JSON is missing the field '{name}'")))
    };
    let as_usize = |v: &Value, what: &str| {
        v.as_u64()
            .map(|n| n as usize)
            .ok_or_else(|| err(format!("'{what}' must be a nonnegative integer")))
    };
    let size = as_usize(&field("size")?, "size")?;
    let zero = as_usize(&field("zero")?, "zero")?;
    let one = as_usize(&field("one")?, "one")?;
    let flatten = |v: Value, what: &str| -> Result<Vec<usize>> {
        let rows = v
            .as_array()
            .ok_or_else(|| err(format!("'{what}' must be a size x size array")))?;
        let mut out = Vec::with_capacity(size * size);
        for row in rows {
            let row = row
                .as_array()
                .ok_or_else(|| err(format!("'{what}' must be a size x size array")))?;
            for entry in row {
                out.push(as_usize(entry, what)?);
            }
        }
        Ok(out)
    };
    let add = flatten(field("add")?, "add")?;
    let mul = flatten(field("mul")?, "mul")?;
    FiniteRing::make(Presentation::Table {
        size,
        add,
        mul,
        zero,
        one,
    })
}

// ------------------------------------------------------------ ring report

fn points_json(sets: &[PointSet]) -> Value {
    json!(sets.iter().map(|s| s.to_vec()).collect::<Vec<_>>())
}

fn ring_report(
    ring: &FiniteRing,
    poset: &SpectralPoset,
    sections: &[Section],
) -> Result<(Value, bool)> {
    let mut m = Map::new();
    m.insert("subject".into(), json!(ring.description()));
    m.insert("version".into(), json!(env!("CARGO_PKG_VERSION")));
    let primes = enumerate_primes(ring)?;
    let mut oracle_ok = true;
    for &section in sections {
        match section {
            Section::Primes => {
                let list: Vec<Value> = primes
                    .iter()
                    .map(|p| {
                        json!({
                            "label": p.ideal.label(),
                            "members": p.ideal.members().to_vec(),
                            "generators": p.ideal.generators(),
                        })
                    })
                    .collect();
                m.insert("primes".into(), json!(list));
            }
            Section::Idempotents => {
                m.insert("idempotents".into(), json!(ring.idempotents()));
            }
            Section::Pierce => {
                let sp = pierce_spectrum(ring)?;
                let alg = IdempotentAlgebra::new(ring);
                let points: Vec<Vec<usize>> = sp
                    .points
                    .iter()
                    .map(|p| p.ideal.members().to_vec())
                    .collect();
                let components = components_via_pierce(ring)?;
                m.insert(
                    "pierce".into(),
                    json!({
                        "points": points,
                        "atoms": alg.atoms(),
                        "components": components.iter().map(|c| c.to_vec()).collect::<Vec<_>>(),
                    }),
                );
            }
            Section::Components => {
                m.insert("components".into(), points_json(&poset.connected_components()));
            }
            Section::Topology => {
                m.insert("topology".into(), topology_json(poset));
            }
            Section::Dual => {
                m.insert("dual".into(), dual_json(poset));
            }
            Section::Oracle => {
                let report = brute_force_oracle(poset)?;
                oracle_ok &= report.passed();
                m.insert("oracle".into(), oracle_json(&report));
            }
            Section::Noetherian => {
                m.insert("noetherian".into(), finite_noetherian_json(&primes)?);
            }
        }
    }
    Ok((Value::Object(m), oracle_ok))
}

fn poset_report(
    poset: &SpectralPoset,
    sections: &[Section],
    oracle_bound: usize,
) -> Result<(Value, bool)> {
    let mut m = Map::new();
    m.insert("subject".into(), json!(format!("poset ({} points)", poset.size())));
    m.insert("version".into(), json!(env!("CARGO_PKG_VERSION")));
    let mut oracle_ok = true;
    for &section in sections {
        match section {
            Section::Components => {
                m.insert("components".into(), points_json(&poset.connected_components()));
            }
            Section::Topology => {
                m.insert("topology".into(), topology_json(poset));
            }
            Section::Dual => {
                m.insert("dual".into(), dual_json(poset));
            }
            Section::Oracle => {
                let report = brute_force_oracle_with_bound(poset, oracle_bound)?;
                oracle_ok &= report.passed();
                m.insert("oracle".into(), oracle_json(&report));
            }
            Section::Noetherian => {
                // every finite space is noetherian in all three views
                m.insert(
                    "noetherian".into(),
                    json!({"flat": true, "zariski": true, "patch": true}),
                );
            }
            _ => unreachable!("section not offered for posets"),
        }
    }
    Ok((Value::Object(m), oracle_ok))
}

fn topology_json(poset: &SpectralPoset) -> Value {
    let per_view = |view: TopologyView| {
        let closures: Vec<Vec<usize>> = (0..poset.size())
            .map(|p| {
                poset
                    .closure(view, &BitSet::from_iter(poset.size(), [p]))
                    .to_vec()
            })
            .collect();
        json!({
            "irreducible_components": poset
                .irreducible_components(view)
                .iter()
                .map(|c| c.to_vec())
                .collect::<Vec<_>>(),
            "point_closures": closures,
        })
    };
    json!({
        "flat": per_view(TopologyView::Flat),
        "zariski": per_view(TopologyView::Zariski),
        "patch": per_view(TopologyView::Patch),
        "maximal_points": poset.maximal_points(),
        "minimal_points": poset.minimal_points(),
        "points": (0..poset.size()).map(|p| poset.label(p)).collect::<Vec<_>>(),
    })
}

fn dual_json(poset: &SpectralPoset) -> Value {
    let dual = poset.hochster_dual();
    json!({
        "hasse_edges": dual
            .transitive_reduction()
            .iter()
            .map(|&(a, b)| vec![a, b])
            .collect::<Vec<_>>(),
        "involution": dual.hochster_dual() == *poset,
    })
}

fn oracle_json(report: &OracleReport) -> Value {
    json!({
        "passed": report.passed(),
        "checks": report
            .checks
            .iter()
            .map(|c| json!({"name": c.name, "pass": c.pass}))
            .collect::<Vec<_>>(),
    })
}

/// Finite spectra satisfy condition (vi) for every family/prime pair; the
/// report verifies this exhaustively when the spectrum is small enough.
fn finite_noetherian_json(primes: &[PrimeIdeal]) -> Result<Value> {
    let verified = if primes.is_empty() || primes.len() > 12 {
        Value::Null
    } else {
        let n = primes.len();
        let mut all = true;
        for mask in 1u32..(1u32 << n) {
            let family: Vec<PrimeIdeal> = (0..n)
                .filter(|&i| mask >> i & 1 == 1)
                .map(|i| primes[i].clone())
                .collect();
            for p in primes {
                all &= condition_vi_finite(&family, p)?;
            }
        }
        json!(all)
    };
    Ok(json!({
        "flat": true,
        "zariski": true,
        "patch": true,
        "verified_condition_vi": verified,
    }))
}

// ------------------------------------------------------------------- DOT

fn export_dot(poset: &SpectralPoset) -> String {
    let maximal: Vec<usize> = poset.maximal_points();
    let minimal: Vec<usize> = poset.minimal_points();
    let mut out = String::from("digraph spectrum {\n  rankdir=BT;\n");
    for (ci, comp) in poset.connected_components().iter().enumerate() {
        out.push_str(&format!(
            "  subgraph cluster_{ci} {{\n    label=\"component {ci}\";\n"
        ));
        for p in comp.iter() {
            let shape = match (maximal.contains(&p), minimal.contains(&p)) {
                (true, true) => "diamond",
                (true, false) => "box",
                (false, true) => "ellipse",
                (false, false) => "circle",
            };
            out.push_str(&format!(
                "    n{p} [label=\"{}\", shape={shape}];\n",
                poset.label(p).replace('"', "\\\"")
            ));
        }
        out.push_str("  }\n");
    }
    for (a, b) in poset.transitive_reduction() {
        out.push_str(&format!("  n{a} -> n{b};\n"));
    }
    out.push_str("}\n");
    out
}

// -------------------------------------------------------------- symbolic

fn parse_view(name: &str) -> Result<TopologyView> {
    match name {
        "flat" => Ok(TopologyView::Flat),
        "zariski" => Ok(TopologyView::Zariski),
        "patch" => Ok(TopologyView::Patch),
        other => Err(Error::ParseError {
            line: 1,
            column: 1,
            message: format!("unknown topology view '{other}' (flat, zariski, or patch)"),
        }),
    }
}

/// Parses "{2,3}" or "{2,generic}" into closed-point codes plus the flag.
fn parse_point_set(text: &str) -> Result<(Vec<u64>, bool)> {
    let err = |message: String| Error::ParseError {
        line: 1,
        column: 1,
        message,
    };
    let inner = text
        .strip_prefix('{')
        .and_then(|t| t.strip_suffix('}'))
        .ok_or_else(|| err(format!("expected a braced point set, got '{text}'")))?;
    let mut points = Vec::new();
    let mut has_generic = false;
    for item in inner.split(',').map(str::trim).filter(|s| !s.is_empty()) {
        if item == "generic" {
            has_generic = true;
        } else {
            points.push(
                item.parse::<u64>()
                    .map_err(|_| err(format!("bad point '{item}'")))?,
            );
        }
    }
    Ok((points, has_generic))
}

fn symset_json(spectrum: &SymbolicSpectrum, set: &SymSet) -> Value {
    json!({
        "mode": if set.is_finite_mode() { "finite" } else { "cofinite" },
        "points": set.explicit_points(),
        "labels": set
            .explicit_points()
            .iter()
            .map(|&p| spectrum.point_label(SymPoint::Closed(p)))
            .collect::<Vec<_>>(),
        "generic": set.has_generic(),
    })
}

fn symbolic_report(spectrum: SymbolicSpectrum, query: &SymQuery) -> Result<Value> {
    let mut m = Map::new();
    let subject = match spectrum.kind {
        SpectrumKind::Integers => "Spec(Z)".to_string(),
        SpectrumKind::PolyOverFp(p) => format!("Spec(F_{p}[x])"),
    };
    m.insert("subject".into(), json!(subject));
    m.insert("version".into(), json!(env!("CARGO_PKG_VERSION")));
    let mut any = false;

    if let Some(spec) = &query.closure {
        any = true;
        let (view_name, set_text) = spec.split_once(':').ok_or_else(|| Error::ParseError {
            line: 1,
            column: 1,
            message: format!("closure query must be view:{{...}}, got '{spec}'"),
        })?;
        let view = parse_view(view_name)?;
        let (points, has_generic) = parse_point_set(set_text)?;
        let set = spectrum.finite(&points, has_generic)?;
        let closure = set.closure(view);
        m.insert(
            "closure".into(),
            json!({
                "view": view.name(),
                "input": symset_json(&spectrum, &set),
                "result": symset_json(&spectrum, &closure),
            }),
        );
    }

    if let Some(view_name) = &query.components {
        any = true;
        let view = parse_view(view_name)?;
        let family = sym_irreducible_components(&spectrum, view);
        m.insert(
            "components".into(),
            json!({
                "view": view.name(),
                "description": family.describe(),
                "materialized": family
                    .materialize(query.limit)
                    .iter()
                    .map(|s| symset_json(&spectrum, s))
                    .collect::<Vec<_>>(),
            }),
        );
    }

    if query.noetherian {
        any = true;
        m.insert(
            "noetherian".into(),
            json!({
                "flat": sym_noetherian(&spectrum, TopologyView::Flat),
                "zariski": sym_noetherian(&spectrum, TopologyView::Zariski),
                "patch": sym_noetherian(&spectrum, TopologyView::Patch),
                "noetherian_views_consistent": noetherian_views_consistent(&spectrum),
            }),
        );
    }

    if let Some(spec) = &query.condition_vi {
        any = true;
        let (family_text, point_text) =
            spec.rsplit_once(':').ok_or_else(|| Error::ParseError {
                line: 1,
                column: 1,
                message: format!("condition-vi query must be family:point, got '{spec}'"),
            })?;
        let family = if family_text == "all-primes" {
            spectrum.cofinite(&[], false)?
        } else {
            let (points, has_generic) = parse_point_set(family_text)?;
            spectrum.finite(&points, has_generic)?
        };
        let point = if point_text == "generic" {
            SymPoint::Generic
        } else {
            let code = point_text.parse::<u64>().map_err(|_| Error::ParseError {
                line: 1,
                column: 1,
                message: format!("bad point '{point_text}'"),
            })?;
            if !spectrum.is_closed_point(code) {
                return Err(Error::InvalidParameter(format!(
                    "{code} is not a closed point of this spectrum"
                )));
            }
            SymPoint::Closed(code)
        };
        let outcome = condition_vi_symbolic(&family, point)?;
        let result = match outcome {
            ConditionVi::Holds => json!({"holds": true}),
            ConditionVi::FailsWithWitness { description } => {
                json!({"holds": false, "witness": description})
            }
        };
        m.insert(
            "condition_vi".into(),
            json!({
                "family": symset_json(&spectrum, &family),
                "point": match point {
                    SymPoint::Generic => "generic".to_string(),
                    SymPoint::Closed(c) => spectrum.point_label(SymPoint::Closed(c)),
                },
                "result": result,
            }),
        );
    }

    if !any {
        return Err(Error::ParseError {
            line: 1,
            column: 1,
            message: "no query requested: use --closure, --components, --noetherian, \
                      or --condition-vi"
                .into(),
        });
    }
    Ok(Value::Object(m))
}
