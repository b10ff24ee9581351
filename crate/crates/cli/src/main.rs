//! `ordinary` — find ordinary and monochromatic intersection points in
//! arrangements of lines, hyperplanes and pseudolines.
//!
//! Exit codes: 0 success (including the NoIntersectionPoint verdict),
//! 1 invalid input or refuted claim, 2 hypothesis violation, 3 usage error.

mod render;
mod report;

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand};
use serde::Deserialize;

use ordinary_core::arrangement2d::find_ordinary_point_2d;
use ordinary_core::generators::{generate, Arrangement, GenKind, GenSpec};
use ordinary_core::hyperplanes::{find_ordinary_point_nd, NdOutcome};
use ordinary_core::io::{arrangement_to_json, parse_arrangement};
use ordinary_core::plane::{side_of_line, Color, Line2, Point2, Side};
use ordinary_core::pseudolines::{
    find_monochromatic, find_ordinary_pseudoline, pseudolines_through, validate_arrangement,
    PseudoOptions, Pseudoline, ValidationConfig, DEFAULT_S_MAX,
};
use ordinary_core::scalar::parse_scalar;
use ordinary_core::{Error, HyperplaneD, PointD};

use report::{point2_strings, pointd_strings, trace_steps, RunReport};

#[derive(Parser)]
#[command(
    name = "ordinary",
    version,
    about = "Ordinary and monochromatic intersection points in arrangements"
)]
struct Cli {
    /// Skip the O(n²) pseudoline arrangement validation.
    #[arg(long, global = true)]
    no_validate: bool,
    /// Include the triangle-recursion trace in the output.
    #[arg(long, global = true)]
    trace: bool,
    /// Emit a JSON run report instead of text.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Ordinary intersection point of a line arrangement (O(n log n)).
    Ordinary2d { file: PathBuf },
    /// Ordinary intersection point of a hyperplane arrangement (O(n log n)).
    OrdinaryNd { file: PathBuf },
    /// Ordinary crossing of a pseudoline arrangement (O(n²)).
    OrdinaryPseudo { file: PathBuf },
    /// Monochromatic crossing of a bichromatic pseudoline arrangement (O(n²)).
    MonoPseudo { file: PathBuf },
    /// Check a claimed result against the arrangement by brute force.
    Verify {
        file: PathBuf,
        #[arg(long)]
        claim: PathBuf,
    },
    /// Generate a seeded arrangement and print its JSON.
    Generate {
        #[arg(long)]
        kind: String,
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 2)]
        d: usize,
        #[arg(long)]
        max_bundle: Option<usize>,
        #[arg(long)]
        families: Option<usize>,
        /// Bias direction for the biased kind: red or blue.
        #[arg(long)]
        bias: Option<String>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Render a planar arrangement to SVG.
    Render {
        file: PathBuf,
        #[arg(long)]
        out: PathBuf,
        /// Highlight a point, written as x,y in rationals.
        #[arg(long)]
        highlight: Option<String>,
    },
    /// Time the search across arrangement sizes.
    Bench {
        #[arg(long)]
        kind: String,
        /// Comma-separated arrangement sizes.
        #[arg(long)]
        sizes: String,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 2)]
        d: usize,
        #[arg(long, default_value_t = 5)]
        runs: usize,
    },
}

struct CliError {
    code: u8,
    message: String,
}

impl CliError {
    fn usage(message: impl Into<String>) -> CliError {
        CliError {
            code: 3,
            message: message.into(),
        }
    }

    fn invalid(message: impl Into<String>) -> CliError {
        CliError {
            code: 1,
            message: message.into(),
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> CliError {
        let code = match &e {
            Error::AllParallel | Error::AllConcurrent | Error::HypothesisViolated(_) => 2,
            Error::SpecInfeasible(_) => 3,
            _ => 1,
        };
        CliError {
            code,
            message: e.to_string(),
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => 3,
            };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {}", e.message);
            ExitCode::from(e.code)
        }
    }
}

fn read_file(path: &Path) -> Result<String, CliError> {
    std::fs::read_to_string(path)
        .map_err(|e| CliError::invalid(format!("cannot read {}: {e}", path.display())))
}

fn s_max_from_env() -> usize {
    std::env::var("ORDINARY_SMAX")
        .ok()
        .and_then(|v| v.parse().ok())
        .unwrap_or(DEFAULT_S_MAX)
}

fn emit(report: &RunReport, json: bool, text: String) {
    if json {
        println!(
            "{}",
            serde_json::to_string_pretty(report).expect("reports serialize")
        );
    } else {
        print!("{text}");
    }
}

fn run(cli: Cli) -> Result<(), CliError> {
    match &cli.command {
        Command::Ordinary2d { file } => ordinary2d(&cli, file),
        Command::OrdinaryNd { file } => ordinary_nd(&cli, file),
        Command::OrdinaryPseudo { file } => ordinary_pseudo(&cli, file),
        Command::MonoPseudo { file } => mono_pseudo(&cli, file),
        Command::Verify { file, claim } => verify(&cli, file, claim),
        Command::Generate {
            kind,
            n,
            seed,
            d,
            max_bundle,
            families,
            bias,
            out,
        } => cmd_generate(
            kind,
            *n,
            *seed,
            *d,
            *max_bundle,
            *families,
            bias.as_deref(),
            out.as_deref(),
        ),
        Command::Render {
            file,
            out,
            highlight,
        } => cmd_render(file, out, highlight.as_deref()),
        Command::Bench {
            kind,
            sizes,
            seed,
            d,
            runs,
        } => cmd_bench(&cli, kind, sizes, *seed, *d, *runs),
    }
}

fn parse_timed(path: &Path) -> Result<(Arrangement, u128), CliError> {
    let text = read_file(path)?;
    let t = Instant::now();
    let arr = parse_arrangement(&text)?;
    Ok((arr, t.elapsed().as_nanos()))
}

fn ordinary2d(cli: &Cli, file: &Path) -> Result<(), CliError> {
    let total = Instant::now();
    let (arr, parse_ns) = parse_timed(file)?;
    let Arrangement::Lines(lines) = arr else {
        return Err(CliError::invalid(
            "ordinary2d expects a line arrangement file",
        ));
    };
    let t = Instant::now();
    let r = find_ordinary_point_2d(&lines)?;
    let algo_ns = t.elapsed().as_nanos();
    let mut timings = BTreeMap::new();
    timings.insert("parse", parse_ns);
    timings.insert("algorithm", algo_ns);
    timings.insert("total", total.elapsed().as_nanos());
    let report = RunReport {
        input: report::InputSummary {
            kind: "lines",
            n: lines.len(),
            d: None,
        },
        result: report::ResultBlock {
            status: "ordinary",
            point: Some(point2_strings(&r.point)),
            witnesses: Some(vec![r.witnesses.0, r.witnesses.1]),
            provenance: Some(r.provenance.as_str()),
            color: None,
        },
        timings_ns: timings,
        trace: None,
        verification: None,
    };
    emit(
        &report,
        cli.json,
        format!(
            "ordinary point {} on lines {} and {} ({})\n",
            r.point,
            r.witnesses.0,
            r.witnesses.1,
            r.provenance.as_str()
        ),
    );
    Ok(())
}

fn ordinary_nd(cli: &Cli, file: &Path) -> Result<(), CliError> {
    let total = Instant::now();
    let (arr, parse_ns) = parse_timed(file)?;
    let Arrangement::Hyperplanes(hs) = arr else {
        return Err(CliError::invalid(
            "ordinary-nd expects a hyperplane arrangement file",
        ));
    };
    let d = hs.first().map_or(0, HyperplaneD::dim);
    let t = Instant::now();
    let outcome = find_ordinary_point_nd(&hs)?;
    let algo_ns = t.elapsed().as_nanos();
    let mut timings = BTreeMap::new();
    timings.insert("parse", parse_ns);
    timings.insert("algorithm", algo_ns);
    timings.insert("total", total.elapsed().as_nanos());
    let (result, text) = match outcome {
        NdOutcome::NoIntersectionPoint => (
            report::ResultBlock {
                status: "no_intersection_point",
                ..Default::default()
            },
            "no intersection point: the normals do not span the space\n".to_string(),
        ),
        NdOutcome::Ordinary(r) => (
            report::ResultBlock {
                status: "ordinary",
                point: Some(pointd_strings(&r.point)),
                witnesses: Some(r.witnesses.clone()),
                provenance: Some(r.provenance.as_str()),
                color: None,
            },
            format!(
                "ordinary point {} on hyperplanes {:?} ({})\n",
                r.point,
                r.witnesses,
                r.provenance.as_str()
            ),
        ),
    };
    let report = RunReport {
        input: report::InputSummary {
            kind: "hyperplanes",
            n: hs.len(),
            d: Some(d),
        },
        result,
        timings_ns: timings,
        trace: None,
        verification: None,
    };
    emit(&report, cli.json, text);
    Ok(())
}

fn pseudo_options() -> (PseudoOptions, usize) {
    let s_max = s_max_from_env();
    (
        PseudoOptions {
            validate: false,
            s_max,
        },
        s_max,
    )
}

fn validate_timed(ps: &[Pseudoline], cli: &Cli, s_max: usize) -> Result<u128, CliError> {
    if cli.no_validate {
        return Ok(0);
    }
    let t = Instant::now();
    validate_arrangement(ps, &ValidationConfig { s_max }).into_result()?;
    Ok(t.elapsed().as_nanos())
}

fn ordinary_pseudo(cli: &Cli, file: &Path) -> Result<(), CliError> {
    let total = Instant::now();
    let (arr, parse_ns) = parse_timed(file)?;
    let Arrangement::Pseudolines(ps) = arr else {
        return Err(CliError::invalid(
            "ordinary-pseudo expects a pseudoline arrangement file",
        ));
    };
    let (opts, s_max) = pseudo_options();
    let validate_ns = validate_timed(&ps, cli, s_max)?;
    let t = Instant::now();
    let r = find_ordinary_pseudoline(&ps, &opts)?;
    let algo_ns = t.elapsed().as_nanos();
    let mut timings = BTreeMap::new();
    timings.insert("parse", parse_ns);
    timings.insert("validate", validate_ns);
    timings.insert("algorithm", algo_ns);
    timings.insert("total", total.elapsed().as_nanos());
    let report = RunReport {
        input: report::InputSummary {
            kind: "pseudolines",
            n: ps.len(),
            d: None,
        },
        result: report::ResultBlock {
            status: "ordinary",
            point: Some(point2_strings(&r.point)),
            witnesses: Some(vec![r.witnesses.0, r.witnesses.1]),
            provenance: None,
            color: None,
        },
        timings_ns: timings,
        trace: cli.trace.then(|| trace_steps(&r.trace)),
        verification: None,
    };
    let mut text = format!(
        "ordinary crossing {} on pseudolines {} and {}\n",
        r.point, r.witnesses.0, r.witnesses.1
    );
    if cli.trace && !cli.json {
        for s in &r.trace {
            text.push_str(&format!(
                "  step {}: probe {} on base {}, divider {:?}\n",
                s.step, s.probe, s.base, s.divider
            ));
        }
    }
    emit(&report, cli.json, text);
    Ok(())
}

fn mono_pseudo(cli: &Cli, file: &Path) -> Result<(), CliError> {
    let total = Instant::now();
    let (arr, parse_ns) = parse_timed(file)?;
    let Arrangement::Pseudolines(ps) = arr else {
        return Err(CliError::invalid(
            "mono-pseudo expects a pseudoline arrangement file",
        ));
    };
    let (opts, s_max) = pseudo_options();
    let validate_ns = validate_timed(&ps, cli, s_max)?;
    let t = Instant::now();
    let r = find_monochromatic(&ps, &opts)?;
    let algo_ns = t.elapsed().as_nanos();
    let mut timings = BTreeMap::new();
    timings.insert("parse", parse_ns);
    timings.insert("validate", validate_ns);
    timings.insert("algorithm", algo_ns);
    timings.insert("total", total.elapsed().as_nanos());
    let report = RunReport {
        input: report::InputSummary {
            kind: "pseudolines",
            n: ps.len(),
            d: None,
        },
        result: report::ResultBlock {
            status: "monochromatic",
            point: Some(point2_strings(&r.point)),
            witnesses: Some(r.witnesses.clone()),
            provenance: None,
            color: Some(r.color.to_string()),
        },
        timings_ns: timings,
        trace: cli.trace.then(|| trace_steps(&r.trace)),
        verification: None,
    };
    let mut text = format!(
        "monochromatic crossing {} in {} on pseudolines {:?}\n",
        r.point, r.color, r.witnesses
    );
    if cli.trace && !cli.json {
        for s in &r.trace {
            text.push_str(&format!(
                "  step {}: probe {} expecting {:?}, divider {:?}\n",
                s.step,
                s.probe,
                s.expected_color.map(|c| c.to_string()),
                s.divider
            ));
        }
    }
    emit(&report, cli.json, text);
    Ok(())
}

#[derive(Debug, Deserialize)]
struct ClaimBlock {
    point: Vec<String>,
    #[serde(default)]
    witnesses: Option<Vec<usize>>,
    #[serde(default)]
    color: Option<String>,
}

fn parse_claim(text: &str) -> Result<ClaimBlock, CliError> {
    let value: serde_json::Value = serde_json::from_str(text)
        .map_err(|e| CliError::invalid(format!("claim file is not JSON: {e}")))?;
    let block = value.get("result").cloned().unwrap_or(value);
    serde_json::from_value(block)
        .map_err(|e| CliError::invalid(format!("claim lacks a usable result block: {e}")))
}

fn verify(cli: &Cli, file: &Path, claim_path: &Path) -> Result<(), CliError> {
    let (arr, _) = parse_timed(file)?;
    let claim = parse_claim(&read_file(claim_path)?)?;
    let coords = claim
        .point
        .iter()
        .map(|s| parse_scalar(s))
        .collect::<Result<Vec<_>, _>>()
        .map_err(|e| CliError::invalid(format!("claimed point: {e}")))?;

    let claimed_color = match claim.color.as_deref() {
        None => None,
        Some("red") => Some(Color::Red),
        Some("blue") => Some(Color::Blue),
        Some(other) => {
            return Err(CliError::invalid(format!(
                "unknown claimed color {other:?}"
            )))
        }
    };

    let (kind, n, d, incident, colors): (
        &str,
        usize,
        Option<usize>,
        Vec<usize>,
        Vec<Option<Color>>,
    ) = match &arr {
        Arrangement::Lines(lines) => {
            if coords.len() != 2 {
                return Err(CliError::invalid("claimed point must have 2 coordinates"));
            }
            let p = Point2::new(coords[0].clone(), coords[1].clone());
            let incident = lines
                .iter()
                .enumerate()
                .filter(|(_, l)| side_of_line(l, &p) == Side::On)
                .map(|(i, _)| i)
                .collect();
            (
                "lines",
                lines.len(),
                None,
                incident,
                lines.iter().map(|l| l.color).collect(),
            )
        }
        Arrangement::Hyperplanes(hs) => {
            let d = hs.first().map_or(0, HyperplaneD::dim);
            if coords.len() != d {
                return Err(CliError::invalid(format!(
                    "claimed point must have {d} coordinates"
                )));
            }
            let p = PointD::new(coords.clone());
            let incident = hs
                .iter()
                .enumerate()
                .filter(|(_, h)| h.contains(&p))
                .map(|(i, _)| i)
                .collect();
            (
                "hyperplanes",
                hs.len(),
                Some(d),
                incident,
                vec![None; hs.len()],
            )
        }
        Arrangement::Pseudolines(ps) => {
            if coords.len() != 2 {
                return Err(CliError::invalid("claimed point must have 2 coordinates"));
            }
            let p = Point2::new(coords[0].clone(), coords[1].clone());
            let incident = pseudolines_through(ps, &p);
            (
                "pseudolines",
                ps.len(),
                None,
                incident,
                ps.iter().map(|q| q.color).collect(),
            )
        }
    };

    // The claim must name a point of the right incidence structure, and when
    // witnesses are given they must be exactly the incident elements.
    let mut reasons: Vec<String> = Vec::new();
    match claimed_color {
        Some(color) => {
            if incident.len() < 2 {
                reasons.push(format!(
                    "only {} elements pass through the point",
                    incident.len()
                ));
            }
            if !incident.iter().all(|&k| colors[k] == Some(color)) {
                reasons.push(format!("the incident elements are not all {color}"));
            }
        }
        None => {
            let want = d.unwrap_or(2);
            if incident.len() != want {
                reasons.push(format!(
                    "point lies on {} elements, an ordinary point needs exactly {want}",
                    incident.len()
                ));
            }
        }
    }
    if let Some(mut w) = claim.witnesses.clone() {
        w.sort_unstable();
        if w != incident {
            reasons.push(format!(
                "claimed witnesses {w:?} differ from the incident elements {incident:?}"
            ));
        }
    }

    let confirmed = reasons.is_empty();
    let report = RunReport {
        input: report::InputSummary { kind, n, d },
        result: report::ResultBlock {
            status: if confirmed { "confirmed" } else { "refuted" },
            point: Some(claim.point.clone()),
            witnesses: claim.witnesses.clone(),
            provenance: None,
            color: claim.color.clone(),
        },
        timings_ns: BTreeMap::new(),
        trace: None,
        verification: Some(report::Verification {
            verdict: if confirmed { "confirmed" } else { "refuted" },
            incident: incident.clone(),
            reason: (!confirmed).then(|| reasons.join("; ")),
        }),
    };
    emit(
        &report,
        cli.json,
        if confirmed {
            format!("confirmed: incident elements {incident:?}\n")
        } else {
            format!("refuted: {}\n", reasons.join("; "))
        },
    );
    if confirmed {
        Ok(())
    } else {
        Err(CliError::invalid("claim refuted"))
    }
}

#[allow(clippy::too_many_arguments)]
fn cmd_generate(
    kind: &str,
    n: usize,
    seed: u64,
    d: usize,
    max_bundle: Option<usize>,
    families: Option<usize>,
    bias: Option<&str>,
    out: Option<&Path>,
) -> Result<(), CliError> {
    let kind =
        GenKind::parse(kind).ok_or_else(|| CliError::usage(format!("unknown kind {kind:?}")))?;
    let mut spec = GenSpec::new(kind, n).with_d(d).with_seed(seed);
    spec.max_bundle_size = max_bundle;
    spec.parallel_family_count = families;
    spec.color_bias = match bias {
        None => None,
        Some("red") => Some(Color::Red),
        Some("blue") => Some(Color::Blue),
        Some(other) => return Err(CliError::usage(format!("unknown bias {other:?}"))),
    };
    let arr = generate(&spec)?;
    let json = arrangement_to_json(&arr);
    match out {
        Some(path) => std::fs::write(path, json)
            .map_err(|e| CliError::invalid(format!("cannot write {}: {e}", path.display())))?,
        None => println!("{json}"),
    }
    Ok(())
}

fn cmd_render(file: &Path, out: &Path, highlight: Option<&str>) -> Result<(), CliError> {
    let (arr, _) = parse_timed(file)?;
    let highlight_point = match highlight {
        None => None,
        Some(text) => {
            let (x, y) = text
                .split_once(',')
                .ok_or_else(|| CliError::usage("highlight must be written as x,y"))?;
            Some(Point2::new(
                parse_scalar(x).map_err(CliError::from)?,
                parse_scalar(y).map_err(CliError::from)?,
            ))
        }
    };
    let svg = match &arr {
        Arrangement::Lines(lines) => render::render_lines(lines, highlight_point.as_ref())?,
        Arrangement::Pseudolines(ps) => render::render_pseudolines(ps, highlight_point.as_ref())?,
        Arrangement::Hyperplanes(hs) => {
            let d = hs.first().map_or(0, HyperplaneD::dim);
            if d != 2 {
                return Err(CliError::invalid("only planar arrangements render to SVG"));
            }
            let lines: Vec<Line2> = hs
                .iter()
                .enumerate()
                .map(|(i, h)| {
                    ordinary_core::canonical_line(
                        h.normal[0].clone(),
                        h.normal[1].clone(),
                        h.offset.clone(),
                    )
                    .map(|l| l.with_id(i))
                })
                .collect::<Result<_, _>>()?;
            render::render_lines(&lines, highlight_point.as_ref())?
        }
    };
    std::fs::write(out, svg)
        .map_err(|e| CliError::invalid(format!("cannot write {}: {e}", out.display())))?;
    Ok(())
}

fn cmd_bench(
    cli: &Cli,
    kind: &str,
    sizes: &str,
    seed: u64,
    d: usize,
    runs: usize,
) -> Result<(), CliError> {
    let kind =
        GenKind::parse(kind).ok_or_else(|| CliError::usage(format!("unknown kind {kind:?}")))?;
    let sizes: Vec<usize> = sizes
        .split(',')
        .map(|s| {
            s.trim()
                .parse()
                .map_err(|_| CliError::usage(format!("bad size {s:?}")))
        })
        .collect::<Result<_, _>>()?;
    if sizes.is_empty() || runs == 0 {
        return Err(CliError::usage("need at least one size and one run"));
    }
    let mut rows: Vec<(usize, u128)> = Vec::new();
    for (i, &n) in sizes.iter().enumerate() {
        let spec = GenSpec::new(kind, n)
            .with_d(d)
            .with_seed(seed.wrapping_add(i as u64));
        let arr = generate(&spec)?;
        let mut samples: Vec<u128> = Vec::with_capacity(runs);
        for _ in 0..=runs {
            let t = Instant::now();
            match &arr {
                Arrangement::Lines(lines) => {
                    find_ordinary_point_2d(lines)?;
                }
                Arrangement::Hyperplanes(hs) => {
                    find_ordinary_point_nd(hs)?;
                }
                Arrangement::Pseudolines(ps) => {
                    let opts = PseudoOptions {
                        validate: false,
                        s_max: usize::MAX,
                    };
                    if ps.iter().all(|p| p.color.is_some()) {
                        find_monochromatic(ps, &opts)?;
                    } else {
                        find_ordinary_pseudoline(ps, &opts)?;
                    }
                }
            }
            samples.push(t.elapsed().as_nanos());
        }
        samples.remove(0); // discard the warm-up run
        samples.sort_unstable();
        rows.push((n, samples[samples.len() / 2]));
    }
    if cli.json {
        let body: Vec<serde_json::Value> = rows
            .iter()
            .enumerate()
            .map(|(i, &(n, ns))| {
                let mut obj = serde_json::json!({ "n": n, "median_ns": ns });
                if i > 0 {
                    obj["ratio_to_previous"] = serde_json::json!(ns as f64 / rows[i - 1].1 as f64);
                }
                obj
            })
            .collect();
        println!("{}", serde_json::to_string_pretty(&body).unwrap());
    } else {
        println!("{:>10} {:>14} {:>8}", "n", "median_ns", "ratio");
        for (i, &(n, ns)) in rows.iter().enumerate() {
            if i == 0 {
                println!("{n:>10} {ns:>14} {:>8}", "-");
            } else {
                println!("{n:>10} {ns:>14} {:>8.3}", ns as f64 / rows[i - 1].1 as f64);
            }
        }
    }
    Ok(())
}
