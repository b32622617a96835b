//! Batch runs over generated instances, written as CSV rows.

use std::fs::OpenOptions;
use std::io::{BufRead, BufReader, Write};
use std::path::Path;
use std::time::Duration;

use anyhow::{bail, Context};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use tvnrel::generator::{generate, Family, GenOptions};
use tvnrel::pipeline::SCHEMA_VERSION;
use tvnrel::{evaluate, Error, Method, Mode, OrderKind, RunOptions};

/// Worker count for `bench` when `--workers` is not given.
pub const WORKERS_ENV: &str = "TVNREL_WORKERS";

/// Largest size accepted per family.
pub fn max_size(family: Family) -> usize {
    match family {
        Family::Complete => 12,
        Family::Grid3 => 30,
    }
}

#[derive(Clone, Debug)]
pub struct BenchConfig {
    pub family: Family,
    pub sizes: Vec<usize>,
    pub instances: usize,
    pub first_seed: u64,
    pub mode: Mode,
    pub methods: Vec<Method>,
    pub order: OrderKind,
    pub gen: GenOptions,
    pub timeout: Option<Duration>,
    pub workers: usize,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Ok,
    Timeout,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Row {
    pub schema_version: u32,
    pub family: String,
    pub size: usize,
    pub seed: u64,
    pub m: usize,
    pub mode: Mode,
    pub method: Method,
    pub status: Status,
    pub sigma: Option<f64>,
    pub journey_count: Option<String>,
    pub stres_count: Option<String>,
    pub zdd_nodes: Option<usize>,
    pub stres_diagram_nodes: Option<usize>,
    pub t_journeys: Option<f64>,
    pub t_superset: Option<f64>,
    pub t_reliability: Option<f64>,
    pub t_total: Option<f64>,
}

/// Outcome of a bench run: the rows plus the size at which the early stop
/// fired, if any.
#[derive(Debug, Default)]
pub struct BenchOutcome {
    pub rows: Vec<Row>,
    pub stopped_at: Option<(usize, u64)>,
}

fn run_instance(cfg: &BenchConfig, size: usize, seed: u64) -> anyhow::Result<Vec<Row>> {
    let g = generate(cfg.family, size, seed, &cfg.gen);
    let mut rows = Vec::with_capacity(cfg.methods.len());
    for &method in &cfg.methods {
        let opts = RunOptions {
            mode: cfg.mode,
            method,
            order: cfg.order,
            timeout: cfg.timeout,
            ..Default::default()
        };
        let base = Row {
            schema_version: SCHEMA_VERSION,
            family: cfg.family.as_str().to_string(),
            size,
            seed,
            m: g.edge_count(),
            mode: cfg.mode,
            method,
            status: Status::Ok,
            sigma: None,
            journey_count: None,
            stres_count: None,
            zdd_nodes: None,
            stres_diagram_nodes: None,
            t_journeys: None,
            t_superset: None,
            t_reliability: None,
            t_total: None,
        };
        let row = match evaluate(&g, &opts) {
            Ok(r) => Row {
                sigma: Some(r.sigma),
                journey_count: Some(r.journey_count),
                stres_count: Some(r.stres_count),
                zdd_nodes: r.node_counts.as_ref().map(|c| c.journey_zdd),
                stres_diagram_nodes: r.node_counts.as_ref().map(|c| c.stres),
                t_journeys: Some(r.timings.journeys),
                t_superset: Some(r.timings.superset),
                t_reliability: Some(r.timings.reliability),
                t_total: Some(r.timings.total),
                ..base
            },
            Err(Error::Timeout(_)) => Row {
                status: Status::Timeout,
                ..base
            },
            Err(e) => return Err(e).with_context(|| format!("{} size {size} seed {seed}", cfg.family.as_str())),
        };
        rows.push(row);
    }
    Ok(rows)
}

/// Run every (size, seed) pair. Instances of one size run in parallel and
/// are merged in seed order. The first timeout drops the later seeds of that
/// size and every larger size.
pub fn run(cfg: &BenchConfig) -> anyhow::Result<BenchOutcome> {
    for &size in &cfg.sizes {
        if size < cfg.family.min_size() || size > max_size(cfg.family) {
            bail!(
                "size {size} outside {}..={} for family {}",
                cfg.family.min_size(),
                max_size(cfg.family),
                cfg.family.as_str()
            );
        }
    }
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(cfg.workers.max(1))
        .build()?;
    let mut sizes = cfg.sizes.clone();
    sizes.sort_unstable();
    sizes.dedup();

    let mut out = BenchOutcome::default();
    for size in sizes {
        let seeds: Vec<u64> = (0..cfg.instances as u64).map(|k| cfg.first_seed + k).collect();
        let results: Vec<anyhow::Result<Vec<Row>>> =
            pool.install(|| seeds.par_iter().map(|&seed| run_instance(cfg, size, seed)).collect());
        for (seed, rows) in seeds.into_iter().zip(results) {
            let rows = rows?;
            let timed_out = rows.iter().any(|r| r.status == Status::Timeout);
            out.rows.extend(rows);
            if timed_out {
                out.stopped_at = Some((size, seed));
                return Ok(out);
            }
        }
    }
    Ok(out)
}

fn header() -> anyhow::Result<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.serialize(Row {
        schema_version: 0,
        family: String::new(),
        size: 0,
        seed: 0,
        m: 0,
        mode: Mode::MultiHop,
        method: Method::B,
        status: Status::Ok,
        sigma: None,
        journey_count: None,
        stres_count: None,
        zdd_nodes: None,
        stres_diagram_nodes: None,
        t_journeys: None,
        t_superset: None,
        t_reliability: None,
        t_total: None,
    })?;
    let bytes = w.into_inner()?;
    let text = String::from_utf8(bytes)?;
    Ok(text.lines().next().unwrap_or_default().to_string())
}

/// Write rows to `w`, with a header line when `with_header` is set.
pub fn write_rows<W: Write>(w: W, rows: &[Row], with_header: bool) -> anyhow::Result<()> {
    let mut w = csv::WriterBuilder::new().has_headers(with_header).from_writer(w);
    for row in rows {
        w.serialize(row)?;
    }
    w.flush()?;
    Ok(())
}

/// Append rows to a CSV file. A header is written only to a new or empty
/// file; an existing header must match the current schema.
pub fn append_csv(path: &Path, rows: &[Row]) -> anyhow::Result<()> {
    let expected = header()?;
    let existing = match std::fs::File::open(path) {
        Ok(f) => BufReader::new(f).lines().next().transpose()?,
        Err(e) if e.kind() == std::io::ErrorKind::NotFound => None,
        Err(e) => return Err(e).with_context(|| path.display().to_string()),
    };
    if let Some(line) = &existing {
        if line.trim_end() != expected {
            bail!(
                "{}: header does not match bench schema version {SCHEMA_VERSION}",
                path.display()
            );
        }
    }
    let file = OpenOptions::new()
        .create(true)
        .append(true)
        .open(path)
        .with_context(|| path.display().to_string())?;
    write_rows(file, rows, existing.is_none())
}

pub fn read_csv(path: &Path) -> anyhow::Result<Vec<Row>> {
    let mut r = csv::Reader::from_path(path).with_context(|| path.display().to_string())?;
    r.deserialize().map(|row| row.map_err(Into::into)).collect()
}
