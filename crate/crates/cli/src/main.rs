//! Command line front end for the tricurve library.
//!
//! Every subcommand prints a single JSON object on stdout (the `scan`
//! subcommand instead streams one JSON record per line) and signals the
//! outcome through the exit code: 0 for success, 1 for usage or parse
//! errors, 2 for domain errors (reducible curve, oracle disagreement),
//! 3 for requests that exceed a configured resource cap.

use std::fs;
use std::io::{Read as _, Write as _};
use std::process::exit;
use std::time::Instant;

use clap::error::ErrorKind;
use clap::{Parser, Subcommand};
use serde::Serialize;
use serde_json::{json, Map, Value};

use tricurve::charsum::ResidueFraction;
use tricurve::curve::{
    classify, genus, i_of_curve, is_abs_irreducible, parse_trinomial_capped, Trinomial,
};
use tricurve::gf::DEFAULT_TABLE_CAP;
use tricurve::maximality::{
    maximal_extension_degrees, maximal_over_square, scan, FamilySpec, ScanOptions,
};
use tricurve::zeta::{
    brute_affine_count, brute_projective_count, l_polynomial, m_of_curve, point_count_from_l,
    predicted_affine_count, predicted_projective_count, LPolynomial, ZetaOptions,
    DEFAULT_COUNT_CAP,
};
use tricurve::{Error, Result};

const CURVE_HELP: &str = "Curve such as \"x*y^3 + x^3 + y over GF(13)\"; @FILE reads the \
                          description (text or JSON record) from a file";

/// Genus, zeta numerators, and maximality certificates for trinomial curves
/// over finite fields.
#[derive(Parser)]
#[command(name = "tricurve", version, about)]
struct Cli {
    /// Largest field order the process may tabulate (base or extension).
    #[arg(long, global = true, default_value_t = DEFAULT_TABLE_CAP)]
    table_cap: u64,

    /// Largest number of point evaluations an enumeration may perform.
    #[arg(long, global = true, default_value_t = DEFAULT_COUNT_CAP)]
    count_cap: u64,

    /// Worker threads for parallel sections (0 uses every core).
    #[arg(long, global = true, default_value_t = 0)]
    jobs: usize,

    /// Print numeric intermediates (orbit factor values) to stderr.
    #[arg(long, global = true)]
    debug: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Classify a trinomial curve into one of the five normalized shapes.
    Classify {
        #[arg(help = CURVE_HELP)]
        curve: String,
    },
    /// Decide absolute irreducibility from the support of the trinomial.
    Irreducible {
        #[arg(help = CURVE_HELP)]
        curve: String,
    },
    /// Genus of the smooth model, with the matrix data behind it.
    Genus {
        #[arg(help = CURVE_HELP)]
        curve: String,
    },
    /// Newton polygon of the affine support.
    Newton {
        #[arg(help = CURVE_HELP)]
        curve: String,
    },
    /// Character orbits and the zeta function numerator L(U).
    Zeta {
        #[arg(help = CURVE_HELP)]
        curve: String,
        /// Cross-check the character-sum affine counts against enumeration
        /// for v = 1, 2; disagreement exits with status 2.
        #[arg(long)]
        oracle: bool,
        /// Fail instead of evaluating any orbit factor numerically.
        #[arg(long)]
        exact_only: bool,
    },
    /// Number of points on the normalized curve over an extension field.
    Count {
        #[arg(help = CURVE_HELP)]
        curve: String,
        /// Extension degree v: points are counted over GF(q^v).
        #[arg(long, default_value_t = 1, value_parser = clap::value_parser!(u32).range(1..))]
        v: u32,
        /// Count projective plane-model points instead of affine ones.
        #[arg(long)]
        projective: bool,
        /// Also enumerate the points directly and compare; a mismatch is
        /// reported as "match": false and exits with status 2.
        #[arg(long)]
        oracle: bool,
    },
    /// Maximality certificate over GF(q^2) plus an extension-degree search.
    Maximal {
        #[arg(help = CURVE_HELP)]
        curve: String,
        /// Search maximal extension degrees n up to this bound.
        #[arg(long, default_value_t = 12)]
        extension_bound: u32,
        /// Fail the extension search unless every orbit factor is exact.
        #[arg(long)]
        exact_only: bool,
    },
    /// Scan a curve family described by a JSON file; prints NDJSON records.
    Scan {
        /// Path of the family description, or "-" to read it from stdin.
        family: String,
        /// Search maximal extension degrees up to this bound per curve.
        #[arg(long, default_value_t = 12)]
        extension_bound: u32,
        /// Skip curves whose orbit factors are not all exact.
        #[arg(long)]
        exact_only: bool,
        /// Include point counts for v = 1..=count-depth in each record.
        #[arg(long)]
        with_counts: bool,
        /// Extension depth used when --with-counts is given.
        #[arg(long, default_value_t = 2, value_parser = clap::value_parser!(u32).range(1..))]
        count_depth: u32,
    },
}

#[derive(Serialize)]
struct CommandResult {
    command: &'static str,
    inputs: Value,
    #[serde(skip_serializing_if = "Option::is_none")]
    outputs: Option<Value>,
    #[serde(skip_serializing_if = "Option::is_none")]
    error: Option<String>,
    timing: Timing,
    warnings: Vec<String>,
}

#[derive(Serialize)]
struct Timing {
    seconds: f64,
}

/// Payload of a successful subcommand before it is wrapped in the envelope.
struct Outcome {
    outputs: Value,
    warnings: Vec<String>,
    exit: i32,
}

impl Outcome {
    fn ok(outputs: Value) -> Self {
        Outcome {
            outputs,
            warnings: Vec::new(),
            exit: 0,
        }
    }
}

fn main() {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(err) => {
            let code = match err.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => 1,
            };
            let _ = err.print();
            exit(code);
        }
    };
    if cli.jobs > 0 {
        let _ = rayon::ThreadPoolBuilder::new()
            .num_threads(cli.jobs)
            .build_global();
    }

    let started = Instant::now();
    if matches!(cli.command, Command::Scan { .. }) {
        match run_scan(&cli) {
            Ok(rows) => {
                if cli.debug {
                    eprintln!("scan: wrote {rows} records in {:.3}s", started.elapsed().as_secs_f64());
                }
            }
            Err(err) => {
                eprintln!("error: {err}");
                exit(exit_code(&err));
            }
        }
        return;
    }

    let (name, inputs) = describe(&cli.command);
    match run(&cli) {
        Ok(outcome) => {
            emit(CommandResult {
                command: name,
                inputs,
                outputs: Some(outcome.outputs),
                error: None,
                timing: timing(started),
                warnings: outcome.warnings,
            });
            exit(outcome.exit);
        }
        Err(err) => {
            emit(CommandResult {
                command: name,
                inputs,
                outputs: None,
                error: Some(err.to_string()),
                timing: timing(started),
                warnings: Vec::new(),
            });
            eprintln!("error: {err}");
            exit(exit_code(&err));
        }
    }
}

fn emit(result: CommandResult) {
    println!(
        "{}",
        serde_json::to_string_pretty(&result).expect("command result serializes")
    );
}

fn timing(started: Instant) -> Timing {
    // Millisecond resolution keeps the envelope readable; the mathematical
    // payload is byte-stable, the timing field is not.
    Timing {
        seconds: (started.elapsed().as_secs_f64() * 1000.0).round() / 1000.0,
    }
}

fn exit_code(err: &Error) -> i32 {
    match err {
        Error::Parse(_) => 1,
        Error::Domain(_) => 2,
        Error::CapExceeded(_) => 3,
    }
}

fn describe(command: &Command) -> (&'static str, Value) {
    match command {
        Command::Classify { curve } => ("classify", json!({ "curve": curve })),
        Command::Irreducible { curve } => ("irreducible", json!({ "curve": curve })),
        Command::Genus { curve } => ("genus", json!({ "curve": curve })),
        Command::Newton { curve } => ("newton", json!({ "curve": curve })),
        Command::Zeta {
            curve,
            oracle,
            exact_only,
        } => (
            "zeta",
            json!({ "curve": curve, "oracle": oracle, "exact_only": exact_only }),
        ),
        Command::Count {
            curve,
            v,
            projective,
            oracle,
        } => (
            "count",
            json!({ "curve": curve, "v": v, "projective": projective, "oracle": oracle }),
        ),
        Command::Maximal {
            curve,
            extension_bound,
            exact_only,
        } => (
            "maximal",
            json!({
                "curve": curve,
                "extension_bound": extension_bound,
                "exact_only": exact_only,
            }),
        ),
        Command::Scan { .. } => ("scan", Value::Null),
    }
}

fn run(cli: &Cli) -> Result<Outcome> {
    match &cli.command {
        Command::Classify { curve } => cmd_classify(cli, curve),
        Command::Irreducible { curve } => cmd_irreducible(cli, curve),
        Command::Genus { curve } => cmd_genus(cli, curve),
        Command::Newton { curve } => cmd_newton(cli, curve),
        Command::Zeta {
            curve,
            oracle,
            exact_only,
        } => cmd_zeta(cli, curve, *oracle, *exact_only),
        Command::Count {
            curve,
            v,
            projective,
            oracle,
        } => cmd_count(cli, curve, *v, *projective, *oracle),
        Command::Maximal {
            curve,
            extension_bound,
            exact_only,
        } => cmd_maximal(cli, curve, *extension_bound, *exact_only),
        Command::Scan { .. } => unreachable!("scan streams NDJSON and bypasses run()"),
    }
}

fn load_curve(cli: &Cli, arg: &str) -> Result<Trinomial> {
    let text = match arg.strip_prefix('@') {
        Some(path) => fs::read_to_string(path)
            .map_err(|err| Error::parse(format!("cannot read {path}: {err}")))?,
        None => arg.to_string(),
    };
    parse_trinomial_capped(text.trim(), cli.table_cap)
}

fn cmd_classify(cli: &Cli, curve: &str) -> Result<Outcome> {
    let t = load_curve(cli, curve)?;
    let cf = classify(&t)?;
    let report = genus(&cf)?;
    let mut params = Map::new();
    for (name, value) in cf.params.as_list() {
        params.insert(name, Value::from(value));
    }
    Ok(Outcome::ok(json!({
        "curve": t.to_string(),
        "q": cf.field.order(),
        "case": cf.case_id(),
        "params": params,
        "k1": cf.field.fmt_element(cf.k1),
        "k2": cf.field.fmt_element(cf.k2),
        "normalized": cf.normalized_trinomial().to_string(),
        "transform": cf.transform.describe(&cf.field),
        "matrix": cf.matrix(),
        "det": cf.det_abs(),
        "i_C": i_of_curve(&cf),
        "genus": report.genus,
    })))
}

fn cmd_irreducible(cli: &Cli, curve: &str) -> Result<Outcome> {
    let t = load_curve(cli, curve)?;
    let report = is_abs_irreducible(&t)?;
    Ok(Outcome::ok(json!({
        "curve": t.to_string(),
        "irreducible": report.irreducible,
        "reason": report.reason,
    })))
}

fn cmd_genus(cli: &Cli, curve: &str) -> Result<Outcome> {
    let t = load_curve(cli, curve)?;
    let cf = classify(&t)?;
    let report = genus(&cf)?;
    let mut outputs = json!({
        "curve": t.to_string(),
        "q": cf.field.order(),
        "case": cf.case_id(),
        "matrix": cf.matrix(),
        "i_C": report.interior_count,
        "d": report.d,
        "column_gcds": [report.d1, report.d2, report.d3],
        "prime_to_p_parts": report.p_parts,
        "genus": report.genus,
    });
    if let Ok(m) = m_of_curve(&cf) {
        outputs["m_C"] = json!(m);
    }
    Ok(Outcome::ok(outputs))
}

fn cmd_newton(cli: &Cli, curve: &str) -> Result<Outcome> {
    let t = load_curve(cli, curve)?;
    let polygon = t.newton_polygon();
    let vertices: Vec<[i64; 2]> = polygon.vertices().iter().map(|&(x, y)| [x, y]).collect();
    Ok(Outcome::ok(json!({
        "curve": t.to_string(),
        "vertices": vertices,
        "degenerate": polygon.is_degenerate(),
        "area2": polygon.area2(),
        "boundary_points": polygon.boundary_points(),
        "interior_points": polygon.interior_points(),
    })))
}

fn cmd_zeta(cli: &Cli, curve: &str, oracle: bool, exact_only: bool) -> Result<Outcome> {
    let t = load_curve(cli, curve)?;
    let cf = classify(&t)?;
    let report = genus(&cf)?;
    let opts = ZetaOptions {
        exact_only,
        ..ZetaOptions::default()
    };
    let l = l_polynomial(&cf, &opts)?;
    if cli.debug {
        debug_factors(&l);
    }
    let mut warnings = Vec::new();
    let mut outputs = json!({
        "curve": t.to_string(),
        "normalized": cf.normalized_trinomial().to_string(),
        "q": cf.field.order(),
        "case": cf.case_id(),
        "genus": report.genus,
        "L": coeff_strings(&l),
        "exact": l.is_exact(),
        "orbits": orbit_records(&l),
    });
    if report.genus > 0 {
        outputs["m_C"] = json!(m_of_curve(&cf)?);
    }
    let mut counts = Map::new();
    for v in 1..=2u32 {
        match point_count_from_l(&cf, &l, v) {
            Ok(n) => {
                counts.insert(format!("v{v}"), json!(n));
            }
            Err(err) => warnings.push(format!("projective count from L at v = {v}: {err}")),
        }
    }
    outputs["projective_counts_from_L"] = Value::Object(counts);
    let mut exit = 0;
    if oracle {
        let nt = cf.normalized_trinomial();
        let mut rows = Map::new();
        for v in 1..=2u32 {
            let predicted = predicted_affine_count(&cf, v)?;
            let enumerated = brute_affine_count(&nt, v, cli.count_cap)?;
            if predicted == enumerated {
                rows.insert(format!("v{v}"), json!("agree"));
            } else {
                exit = 2;
                rows.insert(
                    format!("v{v}"),
                    json!(format!(
                        "disagree: predicted {predicted}, enumerated {enumerated}"
                    )),
                );
            }
        }
        outputs["oracle"] = Value::Object(rows);
        if exit != 0 {
            warnings.push("character-sum counts disagree with enumeration".to_string());
        }
    }
    Ok(Outcome {
        outputs,
        warnings,
        exit,
    })
}

fn cmd_count(cli: &Cli, curve: &str, v: u32, projective: bool, oracle: bool) -> Result<Outcome> {
    let t = load_curve(cli, curve)?;
    let cf = classify(&t)?;
    let predicted = if projective {
        predicted_projective_count(&cf, v)?
    } else {
        predicted_affine_count(&cf, v)?
    };
    let mut outputs = json!({
        "input": t.to_string(),
        "curve": cf.normalized_trinomial().to_string(),
        "q": cf.field.order(),
        "v": v,
        "mode": if projective { "projective" } else { "affine" },
        "count": predicted,
    });
    let mut warnings = Vec::new();
    let mut exit = 0;
    if oracle {
        let nt = cf.normalized_trinomial();
        let enumerated = if projective {
            brute_projective_count(&nt, v, cli.count_cap)?
        } else {
            brute_affine_count(&nt, v, cli.count_cap)?
        };
        outputs["enumerated"] = json!(enumerated);
        outputs["match"] = json!(enumerated == predicted);
        if enumerated != predicted {
            exit = 2;
            warnings.push(format!(
                "predicted count {predicted} disagrees with enumerated count {enumerated}"
            ));
        }
    }
    Ok(Outcome {
        outputs,
        warnings,
        exit,
    })
}

fn cmd_maximal(cli: &Cli, curve: &str, extension_bound: u32, exact_only: bool) -> Result<Outcome> {
    let t = load_curve(cli, curve)?;
    let cf = classify(&t)?;
    let report = maximal_over_square(&cf)?;
    let mut outputs = json!({
        "curve": t.to_string(),
        "q": report.q,
        "genus": report.genus,
        "verdict": report.verdict.to_string(),
        "divides_q_plus_one": report.divides_q_plus_one,
        "divides_q_squared_minus_one": report.divides_q_squared_minus_one,
    });
    if let Some(m) = report.m_c {
        outputs["m_C"] = json!(m);
    }
    let mut warnings = Vec::new();
    if report.genus > 0 {
        let opts = ZetaOptions {
            exact_only,
            ..ZetaOptions::default()
        };
        let degrees = l_polynomial(&cf, &opts).and_then(|l| {
            if cli.debug {
                debug_factors(&l);
            }
            maximal_extension_degrees(&l, extension_bound)
        });
        match degrees {
            Ok(degrees) => {
                outputs["extension_bound"] = json!(extension_bound);
                outputs["maximal_extension_degrees"] = json!(degrees);
                outputs["min_maximal_extension"] = json!(degrees.first().copied());
            }
            Err(err) => warnings.push(format!("extension search unavailable: {err}")),
        }
    }
    Ok(Outcome {
        outputs,
        warnings,
        exit: 0,
    })
}

fn run_scan(cli: &Cli) -> Result<u64> {
    let Command::Scan {
        family,
        extension_bound,
        exact_only,
        with_counts,
        count_depth,
    } = &cli.command
    else {
        unreachable!("run_scan is only called for the scan subcommand")
    };
    let text = if family == "-" {
        let mut buffer = String::new();
        std::io::stdin()
            .read_to_string(&mut buffer)
            .map_err(|err| Error::parse(format!("cannot read stdin: {err}")))?;
        buffer
    } else {
        fs::read_to_string(family)
            .map_err(|err| Error::parse(format!("cannot read {family}: {err}")))?
    };
    let spec: FamilySpec = serde_json::from_str(&text)
        .map_err(|err| Error::parse(format!("invalid family description: {err}")))?;
    let opts = ScanOptions {
        extension_bound: *extension_bound,
        with_counts: *with_counts,
        count_depth: *count_depth,
        exact_only: *exact_only,
        table_cap: cli.table_cap,
    };
    let stdout = std::io::stdout();
    let mut out = stdout.lock();
    scan(&spec, &opts, |record| {
        let line = serde_json::to_string(record).expect("scan record serializes");
        let _ = writeln!(out, "{line}");
    })
}

fn coeff_strings(l: &LPolynomial) -> Vec<String> {
    l.coeffs.iter().map(|c| c.to_string()).collect()
}

fn orbit_records(l: &LPolynomial) -> Value {
    Value::Array(
        l.factors
            .iter()
            .map(|f| {
                json!({
                    "rep": [frac(f.rep.0), frac(f.rep.1)],
                    "m_xi": f.m_xi,
                    "mu": f.mu,
                    "nu": f.nu,
                    "exact": f.exact.map(|c| c.to_string()),
                })
            })
            .collect(),
    )
}

fn frac(r: ResidueFraction) -> String {
    format!("{}/{}", r.num(), r.den())
}

fn debug_factors(l: &LPolynomial) {
    for f in &l.factors {
        eprintln!(
            "orbit rep=({}, {}) m_xi={} mu={} nu={:?} exact={:?} value={:+.6}{:+.6}i (err {:.2e})",
            frac(f.rep.0),
            frac(f.rep.1),
            f.m_xi,
            f.mu,
            f.nu,
            f.exact,
            f.value.value.re,
            f.value.value.im,
            f.value.err,
        );
    }
}
