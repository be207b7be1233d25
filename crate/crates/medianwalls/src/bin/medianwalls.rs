//! Command-line front end: fixture generation, medianization, the
//! quantitative audit, and the continuous-geometry experiments.

use std::fs;
use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;

use medianwalls::audit::full_audit;
use medianwalls::fixtures;
use medianwalls::io::{
    audit_report_table, audit_report_to_json, median_space_to_dot, median_space_to_json,
    wallspace_from_json, wallspace_to_json,
};
use medianwalls::lab::{
    calibration_constant, crofton_estimate, crofton_quadrature, r2_l1_embedding_check,
    sample_stream, snowflake_interval_check, snowflake_median_bound, tripod_defect_experiment,
    ComplexHyperbolicBall, DiskPoint, EuclideanPlane, HyperbolicDisk, MobiusMap, ModelMetric,
    MonteCarloConfig, ProductModel, Snowflaked,
};
use medianwalls::medianization::{enumerate_sections, DEFAULT_WALL_BUDGET};
use medianwalls::{Error, Result, WallSpace};

use rand::Rng;

#[derive(Parser)]
#[command(
    name = "medianwalls",
    version,
    about = "Median geometry of finite wall spaces"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Seed for every random choice in the run.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,

    /// Wall budget for section enumeration (env MEDIANWALLS_BUDGET also
    /// applies; the flag wins).
    #[arg(long, global = true)]
    budget: Option<usize>,

    /// Sample or candidate count for the experiments.
    #[arg(long, global = true)]
    samples: Option<u64>,

    /// Report format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,

    /// Directory for report files; without it the main report goes to
    /// stdout and no manifest is written.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
}

#[derive(Clone, Copy, PartialEq, ValueEnum)]
enum Format {
    Json,
    Csv,
    Dot,
}

#[derive(Subcommand)]
enum Command {
    /// Emit a named fixture as a wall-space file.
    Generate {
        /// Family name, e.g. path, hypercube, tripod-star, random-nested.
        family: String,
        /// Family-specific integer parameters.
        params: Vec<usize>,
    },
    /// Build the median space of a wall-space file.
    Medianize { input: PathBuf },
    /// Measure the theorem constants and run the proof-level checks.
    Audit { input: PathBuf },
    /// Run a named numerical experiment.
    Experiment { name: String },
    /// Audit several wall-space files, processing them in parallel.
    Batch { inputs: Vec<PathBuf> },
}

fn main() {
    let cli = Cli::parse();
    let started = Instant::now();
    match run(&cli) {
        Ok(all_checks_passed) => {
            write_manifest(&cli, started, 0);
            if !all_checks_passed {
                std::process::exit(1);
            }
        }
        Err(e) => {
            let code = e.exit_code();
            eprintln!(
                "{}",
                serde_json::json!({ "error": e.to_string(), "exit_code": code })
            );
            write_manifest(&cli, started, code);
            std::process::exit(code);
        }
    }
}

fn wall_budget(cli: &Cli) -> usize {
    cli.budget
        .or_else(|| {
            std::env::var("MEDIANWALLS_BUDGET")
                .ok()
                .and_then(|v| v.parse().ok())
        })
        .unwrap_or(DEFAULT_WALL_BUDGET)
}

/// Ok(true) = clean run; Ok(false) = a theorem check failed (exit 1).
fn run(cli: &Cli) -> Result<bool> {
    match &cli.command {
        Command::Generate { family, params } => {
            let x = fixtures::generate(family, params, cli.seed)?;
            emit(cli, "wallspace.json", &wallspace_to_json(&x))?;
            Ok(true)
        }
        Command::Medianize { input } => {
            let x = load(input)?;
            let m = enumerate_sections(&x, wall_budget(cli))?;
            let isometric = x.points().all(|p| {
                x.points()
                    .all(|q| m.dist(m.embedded(p), m.embedded(q)) == x.wall_pdist(p, q).unwrap())
            });
            match cli.format {
                Format::Dot => emit(cli, "median.dot", &median_space_to_dot(&m))?,
                Format::Json => {
                    emit(cli, "median.json", &median_space_to_json(&m))?;
                    if cli.out.is_some() {
                        emit(cli, "median.dot", &median_space_to_dot(&m))?;
                        let check = json!({
                            "sections": m.len(),
                            "embedding_isometric": isometric,
                            "rank": m.rank(),
                        });
                        emit(cli, "embedding.json", &pretty(&check))?;
                    }
                }
                Format::Csv => return Err(Error::input("medianize emits json or dot, not csv")),
            }
            Ok(isometric)
        }
        Command::Audit { input } => {
            let x = load(input)?;
            let report = full_audit(&x, wall_budget(cli))?;
            match cli.format {
                Format::Json => emit(cli, "audit.json", &audit_report_to_json(&report))?,
                Format::Csv | Format::Dot => {
                    return Err(Error::input("audit emits json (use no --format)"))
                }
            }
            if cli.out.is_some() {
                emit(cli, "audit.txt", &audit_report_table(&report))?;
            }
            Ok(report.all_checks_pass())
        }
        Command::Experiment { name } => run_experiment(cli, name),
        Command::Batch { inputs } => {
            if inputs.is_empty() {
                return Err(Error::input("batch needs at least one input file"));
            }
            let budget = wall_budget(cli);
            let mut results: Vec<Option<Result<_>>> = Vec::new();
            results.resize_with(inputs.len(), || None);
            std::thread::scope(|scope| {
                for (slot, path) in results.iter_mut().zip(inputs) {
                    scope.spawn(move || {
                        *slot = Some(load(path).and_then(|x| full_audit(&x, budget)));
                    });
                }
            });
            let mut all_pass = true;
            let mut rows = Vec::new();
            for (path, slot) in inputs.iter().zip(results) {
                let report = slot.expect("thread filled the slot")?;
                all_pass &= report.all_checks_pass();
                rows.push(json!({
                    "input": path.display().to_string(),
                    "all_checks_pass": report.all_checks_pass(),
                    "report": serde_json::from_str::<serde_json::Value>(
                        &audit_report_to_json(&report)
                    ).expect("report is valid json"),
                }));
            }
            emit(cli, "batch.json", &pretty(&serde_json::Value::Array(rows)))?;
            Ok(all_pass)
        }
    }
}

fn load(path: &Path) -> Result<WallSpace> {
    let text = fs::read_to_string(path)
        .map_err(|e| Error::input(format!("cannot read {}: {e}", path.display())))?;
    wallspace_from_json(&text)
}

fn pretty(v: &serde_json::Value) -> String {
    serde_json::to_string_pretty(v).expect("report serializes")
}

fn emit(cli: &Cli, name: &str, contents: &str) -> Result<()> {
    match &cli.out {
        Some(dir) => {
            fs::create_dir_all(dir)
                .map_err(|e| Error::input(format!("cannot create {}: {e}", dir.display())))?;
            let path = dir.join(name);
            fs::write(&path, contents)
                .map_err(|e| Error::input(format!("cannot write {}: {e}", path.display())))?;
            eprintln!("wrote {}", path.display());
        }
        None => println!("{contents}"),
    }
    Ok(())
}

/// Timing lives here, never in the deterministic reports.
fn write_manifest(cli: &Cli, started: Instant, exit_code: i32) {
    let Some(dir) = &cli.out else { return };
    if fs::create_dir_all(dir).is_err() {
        return;
    }
    let manifest = json!({
        "command": std::env::args().collect::<Vec<_>>(),
        "seed": cli.seed,
        "version": env!("CARGO_PKG_VERSION"),
        "timing_ms": started.elapsed().as_millis() as u64,
        "exit_code": exit_code,
    });
    let _ = fs::write(dir.join("manifest.json"), pretty(&manifest));
}

fn radial_pair(d: f64) -> (DiskPoint, DiskPoint) {
    (
        DiskPoint::origin(),
        DiskPoint::new((d / 2.0).tanh(), 0.0).expect("inside the disk"),
    )
}

fn run_experiment(cli: &Cli, name: &str) -> Result<bool> {
    match name {
        "crofton-linearity" => crofton_linearity(cli),
        "crofton-invariance" => crofton_invariance(cli),
        "snowflake-bound" => snowflake_bound(cli),
        "snowflake-interval" => snowflake_interval(cli),
        "tripod-sweep" => tripod_sweep(cli),
        "l1-embedding" => l1_embedding(cli),
        other => Err(Error::input(format!(
            "unknown experiment {other:?}; known: crofton-linearity, crofton-invariance, \
             snowflake-bound, snowflake-interval, tripod-sweep, l1-embedding"
        ))),
    }
}

fn experiment_record(
    cli: &Cli,
    name: &str,
    parameters: serde_json::Value,
    results: serde_json::Value,
) -> serde_json::Value {
    json!({
        "experiment": name,
        "parameters": parameters,
        "seed": cli.seed,
        "results": results,
    })
}

fn emit_experiment(
    cli: &Cli,
    record: &serde_json::Value,
    csv_header: &str,
    csv_rows: &[String],
) -> Result<()> {
    match cli.format {
        Format::Json => emit(cli, "experiment.json", &pretty(record)),
        Format::Csv => {
            let mut text = String::from(csv_header);
            text.push('\n');
            for row in csv_rows {
                text.push_str(row);
                text.push('\n');
            }
            emit(cli, "experiment.csv", &text)
        }
        Format::Dot => Err(Error::input("experiments emit json or csv, not dot")),
    }
}

fn crofton_linearity(cli: &Cli) -> Result<bool> {
    let samples = cli.samples.unwrap_or(200_000);
    let cal = calibration_constant(samples)?;
    let distances = [0.5, 1.0, 2.0, 4.0, 8.0];
    let mut rows = Vec::new();
    let mut csv = Vec::new();
    let mut all_ok = true;
    for (k, &d) in distances.iter().enumerate() {
        let (p, q) = radial_pair(d);
        let cfg = MonteCarloConfig::new(cli.seed.wrapping_add(1 + k as u64), samples);
        let est = crofton_estimate(p, q, &cfg)?;
        let oracle = crofton_quadrature(p, q, 4096)?;
        let calibrated = est.estimate / cal.estimate;
        let rel_error = (calibrated - d).abs() / d;
        let within_3se = (est.estimate - oracle).abs() <= 3.0 * est.stderr;
        // calibration noise propagates into the ratio; accept when the
        // deviation is explained by the combined standard error
        let ratio_se = calibrated
            * ((est.stderr / est.estimate).powi(2) + (cal.stderr / cal.estimate).powi(2)).sqrt();
        all_ok &= within_3se && (rel_error < 0.02 || (calibrated - d).abs() <= 3.0 * ratio_se);
        rows.push(json!({
            "distance": d,
            "estimate": est.estimate,
            "stderr": est.stderr,
            "calibrated": calibrated,
            "oracle_value": oracle,
            "rel_error": rel_error,
            "within_3se": within_3se,
        }));
        csv.push(format!(
            "{d},{},{},{calibrated},{oracle},{rel_error},{within_3se}",
            est.estimate, est.stderr
        ));
    }
    let record = experiment_record(
        cli,
        "crofton-linearity",
        json!({ "distances": distances, "samples": samples, "calibration": cal.estimate }),
        serde_json::Value::Array(rows),
    );
    emit_experiment(
        cli,
        &record,
        "distance,estimate,stderr,calibrated,oracle,rel_error,within_3se",
        &csv,
    )?;
    Ok(all_ok)
}

fn crofton_invariance(cli: &Cli) -> Result<bool> {
    let samples = cli.samples.unwrap_or(100_000);
    let (p, q) = radial_pair(2.0);
    let base = crofton_estimate(
        p,
        q,
        &MonteCarloConfig::new(cli.seed.wrapping_add(17), samples),
    )?;
    let mut rng = sample_stream(cli.seed ^ 0x6d6f_6269, 0);
    let mut rows = Vec::new();
    let mut csv = Vec::new();
    let mut all_ok = true;
    for k in 0..20u64 {
        let g = MobiusMap::random(&mut rng);
        let moved = crofton_estimate(
            g.apply(p)?,
            g.apply(q)?,
            &MonteCarloConfig::new(cli.seed.wrapping_add(100 + k), samples),
        )?;
        let combined = (base.stderr.powi(2) + moved.stderr.powi(2)).sqrt();
        let ok = (base.estimate - moved.estimate).abs() <= 3.0 * combined;
        all_ok &= ok;
        rows.push(json!({
            "map": k,
            "estimate": moved.estimate,
            "stderr": moved.stderr,
            "difference": moved.estimate - base.estimate,
            "within_3se": ok,
        }));
        csv.push(format!(
            "{k},{},{},{},{ok}",
            moved.estimate,
            moved.stderr,
            moved.estimate - base.estimate
        ));
    }
    let record = experiment_record(
        cli,
        "crofton-invariance",
        json!({ "distance": 2.0, "samples": samples, "maps": 20, "base_estimate": base.estimate, "base_stderr": base.stderr }),
        serde_json::Value::Array(rows),
    );
    emit_experiment(
        cli,
        &record,
        "map,estimate,stderr,difference,within_3se",
        &csv,
    )?;
    Ok(all_ok)
}

fn snowflake_bound(cli: &Cli) -> Result<bool> {
    let alpha = 0.5;
    let delta = 0.1;
    let shrink = 2.0 - 2.0f64.powf(alpha);
    let threshold = 2.0 * delta / shrink;
    let line = |a: &f64, b: &f64| (a - b).abs();
    let triples: Vec<[f64; 3]> = (1..=20)
        .map(|k| {
            let s = threshold * (1.0 + k as f64 / 4.0);
            [0.0, s, 2.0 * s]
        })
        .collect();
    let grid = |t: &[f64; 3]| -> Vec<f64> {
        let lo = t[0].min(t[2]);
        let hi = t[0].max(t[2]);
        (0..=2000)
            .map(|k| lo + (hi - lo) * k as f64 / 2000.0)
            .collect()
    };
    let line_report = snowflake_median_bound(line, alpha, delta, &triples, grid)?;

    let count = cli.samples.unwrap_or(10_000) as usize;
    let triple = HyperbolicDisk.equilateral_triple(10.0);
    let candidates = HyperbolicDisk.candidates(10.0, count);
    let disk_report = snowflake_median_bound(
        |a, b| HyperbolicDisk.dist(a, b),
        alpha,
        0.5,
        std::slice::from_ref(&triple),
        |_| candidates.clone(),
    )?;

    let ok = line_report.no_median_found
        && line_report.intermediate_ok
        && disk_report.no_median_found
        && disk_report.intermediate_ok;
    let record = experiment_record(
        cli,
        "snowflake-bound",
        json!({ "alpha": alpha, "delta_line": delta, "delta_disk": 0.5, "candidates": count }),
        json!([
            {
                "space": "line",
                "threshold": line_report.threshold,
                "spread_triples": line_report.spread_triples,
                "min_search_defect": line_report.min_search_defect,
                "no_median_found": line_report.no_median_found,
                "intermediate_ok": line_report.intermediate_ok,
            },
            {
                "space": "hyperbolic-disk",
                "threshold": disk_report.threshold,
                "spread_triples": disk_report.spread_triples,
                "min_search_defect": disk_report.min_search_defect,
                "no_median_found": disk_report.no_median_found,
                "intermediate_ok": disk_report.intermediate_ok,
            }
        ]),
    );
    let csv = vec![
        format!(
            "line,{},{},{},{},{}",
            line_report.threshold,
            line_report.spread_triples,
            line_report.min_search_defect,
            line_report.no_median_found,
            line_report.intermediate_ok
        ),
        format!(
            "hyperbolic-disk,{},{},{},{},{}",
            disk_report.threshold,
            disk_report.spread_triples,
            disk_report.min_search_defect,
            disk_report.no_median_found,
            disk_report.intermediate_ok
        ),
    ];
    emit_experiment(
        cli,
        &record,
        "space,threshold,spread_triples,min_search_defect,no_median_found,intermediate_ok",
        &csv,
    )?;
    Ok(ok)
}

fn snowflake_interval(cli: &Cli) -> Result<bool> {
    let mut rng = sample_stream(cli.seed ^ 0x736e_6f77, 0);
    let pts: Vec<f64> = (0..15).map(|_| 100.0 * rng.gen::<f64>()).collect();
    let mut rows = Vec::new();
    let mut csv = Vec::new();
    let mut all_ok = true;
    for alpha in [0.3, 0.5, 0.8] {
        let report = snowflake_interval_check(pts.len(), |i, j| (pts[i] - pts[j]).abs(), alpha)?;
        all_ok &= report.all_positive;
        rows.push(json!({
            "alpha": alpha,
            "triples": report.triples_checked,
            "min_defect": report.min_defect,
            "all_positive": report.all_positive,
        }));
        csv.push(format!(
            "{alpha},{},{},{}",
            report.triples_checked, report.min_defect, report.all_positive
        ));
    }
    let record = experiment_record(
        cli,
        "snowflake-interval",
        json!({ "points": pts.len(), "alphas": [0.3, 0.5, 0.8] }),
        serde_json::Value::Array(rows),
    );
    emit_experiment(cli, &record, "alpha,triples,min_defect,all_positive", &csv)?;
    Ok(all_ok)
}

fn tripod_sweep(cli: &Cli) -> Result<bool> {
    let count = cli.samples.unwrap_or(20_000) as usize;
    let root3 = 3.0f64.sqrt();
    let mut rows = Vec::new();
    let mut csv = Vec::new();
    let mut sweep = |model_name: &str, estimates: Vec<medianwalls::lab::DefectEstimate>| {
        for e in estimates {
            rows.push(json!({
                "model": model_name,
                "scale": e.scale,
                "defect": e.defect,
                "resolution": e.resolution,
                "candidates": e.candidates,
            }));
            csv.push(format!(
                "{model_name},{},{},{},{}",
                e.scale, e.defect, e.resolution, e.candidates
            ));
        }
    };
    sweep(
        "euclidean",
        [1.0, 2.0, 3.0, 4.0]
            .iter()
            .map(|&k| tripod_defect_experiment(&EuclideanPlane, 2.0 * root3 * k, count))
            .collect(),
    );
    sweep(
        "hyperbolic",
        [5.0, 10.0, 20.0]
            .iter()
            .map(|&s| tripod_defect_experiment(&HyperbolicDisk, s, count))
            .collect(),
    );
    let snow_h = Snowflaked::new(HyperbolicDisk, 0.5)?;
    sweep(
        "snowflaked-hyperbolic",
        [5.0, 10.0, 20.0, 40.0]
            .iter()
            .map(|&s| tripod_defect_experiment(&snow_h, s, count))
            .collect(),
    );
    let snow_c = Snowflaked::new(ComplexHyperbolicBall, 0.5)?;
    sweep(
        "snowflaked-complex-hyperbolic",
        [5.0, 10.0, 20.0]
            .iter()
            .map(|&s| tripod_defect_experiment(&snow_c, s, count))
            .collect(),
    );
    let product = ProductModel {
        left: HyperbolicDisk,
        right: HyperbolicDisk,
    };
    sweep(
        "product-hyperbolic",
        [6.0, 12.0]
            .iter()
            .map(|&s| tripod_defect_experiment(&product, s, count))
            .collect(),
    );
    let record = experiment_record(
        cli,
        "tripod-sweep",
        json!({ "candidates": count }),
        serde_json::Value::Array(rows),
    );
    emit_experiment(
        cli,
        &record,
        "model,scale,defect,resolution,candidates",
        &csv,
    )?;
    Ok(true)
}

fn l1_embedding(cli: &Cli) -> Result<bool> {
    let pairs = cli.samples.unwrap_or(1000);
    let mut rng = sample_stream(cli.seed ^ 0x656d_6264, 0);
    let mut max_error = 0.0f64;
    for _ in 0..pairs {
        let p = [
            20.0 * (rng.gen::<f64>() - 0.5),
            20.0 * (rng.gen::<f64>() - 0.5),
        ];
        let q = [
            20.0 * (rng.gen::<f64>() - 0.5),
            20.0 * (rng.gen::<f64>() - 0.5),
        ];
        max_error = max_error.max(r2_l1_embedding_check(p, q).error);
    }
    let ok = max_error < 1e-8;
    let record = experiment_record(
        cli,
        "l1-embedding",
        json!({ "pairs": pairs }),
        json!([{ "max_error": max_error, "passed": ok }]),
    );
    emit_experiment(
        cli,
        &record,
        "pairs,max_error,passed",
        &[format!("{pairs},{max_error},{ok}")],
    )?;
    Ok(ok)
}
