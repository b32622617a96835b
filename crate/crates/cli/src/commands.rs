use std::io::{Read, Write};
use std::path::{Path, PathBuf};
use std::time::{Duration, Instant};

use anyhow::{bail, Context};
use serde::Serialize;
use tvnrel::generator::{generate, Family, GenOptions};
use tvnrel::pipeline::{journey_stage, SCHEMA_VERSION};
use tvnrel::{evaluate, DiagramKind, Error, Mode, NodeRef, OrderKind, RunOptions, TemporalGraph};

use crate::bench;

/// Read a `.tgr` graph from a path, or from stdin for `-`.
pub fn read_graph(path: &Path) -> anyhow::Result<TemporalGraph> {
    let mut text = String::new();
    if path.as_os_str() == "-" {
        std::io::stdin().read_to_string(&mut text)?;
    } else {
        text = std::fs::read_to_string(path).with_context(|| path.display().to_string())?;
    }
    TemporalGraph::parse_tgr(&text).with_context(|| path.display().to_string())
}

fn write_output(out: Option<&Path>, text: &str, stdout: &mut dyn Write) -> anyhow::Result<()> {
    match out {
        Some(p) => std::fs::write(p, text).with_context(|| p.display().to_string()),
        None => stdout.write_all(text.as_bytes()).map_err(Into::into),
    }
}

fn json_line<T: Serialize>(value: &T, stdout: &mut dyn Write) -> anyhow::Result<()> {
    serde_json::to_writer(&mut *stdout, value)?;
    writeln!(stdout)?;
    Ok(())
}

pub fn reliability(g: &TemporalGraph, opts: &RunOptions, stdout: &mut dyn Write) -> anyhow::Result<()> {
    let report = evaluate(g, opts)?;
    json_line(&report, stdout)
}

#[derive(Debug, Serialize, serde::Deserialize, PartialEq)]
pub struct JourneyCounts {
    pub schema_version: u32,
    pub mode: Mode,
    pub m: usize,
    pub journey_count: String,
    pub stres_count: String,
    pub zdd_nodes: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub journeys: Option<Vec<Vec<u32>>>,
}

pub fn count_journeys(
    g: &TemporalGraph,
    mode: Mode,
    order: OrderKind,
    list: Option<usize>,
    stdout: &mut dyn Write,
) -> anyhow::Result<()> {
    let mut stage = journey_stage(g, mode, order, None)?;
    let m = stage.m();
    let stres = stage.lift(DiagramKind::Bdd, None)?;
    let journeys = match list {
        Some(limit) => Some(stage.journeys_in_input_order(limit)?),
        None => None,
    };
    let counts = JourneyCounts {
        schema_version: SCHEMA_VERSION,
        mode,
        m,
        journey_count: stage.journey_count().to_string(),
        stres_count: stage.store.count_sat(stres, m, DiagramKind::Bdd).to_string(),
        zdd_nodes: stage.store.size(stage.journeys),
        journeys,
    };
    json_line(&counts, stdout)
}

#[derive(Debug, Serialize)]
struct GenSummary<'a> {
    schema_version: u32,
    family: &'a str,
    size: usize,
    seed: u64,
    n: usize,
    m: usize,
    path: &'a Path,
}

pub fn gen(
    family: Family,
    size: usize,
    seed: u64,
    opts: &GenOptions,
    out: Option<&Path>,
    stdout: &mut dyn Write,
) -> anyhow::Result<()> {
    let max = bench::max_size(family);
    if size < family.min_size() || size > max {
        bail!(
            "size {size} outside {}..={max} for family {}",
            family.min_size(),
            family.as_str()
        );
    }
    let g = generate(family, size, seed, opts);
    let text = g.to_tgr();
    match out {
        Some(path) => {
            write_output(Some(path), &text, stdout)?;
            let summary = GenSummary {
                schema_version: SCHEMA_VERSION,
                family: family.as_str(),
                size,
                seed,
                n: g.vertex_count(),
                m: g.edge_count(),
                path,
            };
            json_line(&summary, stdout)
        }
        None => write_output(None, &text, stdout),
    }
}

#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub enum Stage {
    Journeys,
    StresB,
    StresZ,
}

pub fn export_dot(
    g: &TemporalGraph,
    stage: Stage,
    mode: Mode,
    order: OrderKind,
    out: Option<&Path>,
    stdout: &mut dyn Write,
) -> anyhow::Result<()> {
    let mut js = journey_stage(g, mode, order, None)?;
    let (root, kind): (NodeRef, DiagramKind) = match stage {
        Stage::Journeys => (js.journeys, DiagramKind::Zdd),
        Stage::StresB => (js.lift(DiagramKind::Bdd, None)?, DiagramKind::Bdd),
        Stage::StresZ => (js.lift(DiagramKind::Zdd, None)?, DiagramKind::Zdd),
    };
    write_output(out, &js.store.export_dot(root, kind), stdout)
}

pub fn run_bench(cfg: &bench::BenchConfig, out: Option<&PathBuf>, stdout: &mut dyn Write) -> anyhow::Result<()> {
    let start = Instant::now();
    let outcome = bench::run(cfg)?;
    match out {
        Some(path) => bench::append_csv(path, &outcome.rows)?,
        None => bench::write_rows(&mut *stdout, &outcome.rows, true)?,
    }
    if let Some((size, seed)) = outcome.stopped_at {
        eprintln!("timeout at size {size} seed {seed}; skipped the remaining instances of this and larger sizes");
    }
    eprintln!("{} rows in {:.2?}", outcome.rows.len(), start.elapsed());
    Ok(())
}

/// Parse `3..6`, `3..=6`, `4` or `3,5,7`.
pub fn parse_sizes(text: &str) -> Result<Vec<usize>, String> {
    let num = |s: &str| s.trim().parse::<usize>().map_err(|_| format!("bad size `{s}`"));
    let sizes = if let Some((a, b)) = text.split_once("..=") {
        (num(a)?..=num(b)?).collect()
    } else if let Some((a, b)) = text.split_once("..") {
        (num(a)?..num(b)?).collect()
    } else {
        text.split(',').map(num).collect::<Result<Vec<_>, _>>()?
    };
    if sizes.is_empty() {
        return Err(format!("empty size range `{text}`"));
    }
    Ok(sizes)
}

/// Seconds as a duration; zero or negative means no limit.
pub fn timeout_from_secs(secs: f64) -> Option<Duration> {
    (secs > 0.0).then(|| Duration::from_secs_f64(secs))
}

/// Exit status for an error: 2 for a timeout, 1 otherwise.
pub fn exit_code(err: &anyhow::Error) -> u8 {
    match err.downcast_ref::<Error>() {
        Some(Error::Timeout(_)) => 2,
        _ => 1,
    }
}
