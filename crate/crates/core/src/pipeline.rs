//! End-to-end evaluation: order → journey ZDD → STRES diagram → reliability.

use std::time::{Duration, Instant};

use serde::{Deserialize, Serialize};

use crate::dd::{DiagramKind, DiagramStore, NodeRef};
use crate::error::{Error, OracleError, Result};
use crate::fbsje::{build_journey_zdd, FbsStats};
use crate::graph::{bfs_edge_order, EdgeOrder, Mode, TemporalGraph};
use crate::oracle::{self, ORACLE_LIMIT};
use crate::reliability::{reliability_bdd, reliability_zdd};
use crate::superset::{superset_to_bdd_until, superset_to_zdd_until};

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Method {
    /// Superset lift emits a BDD.
    B,
    /// Superset lift emits a ZDD.
    Z,
    /// Brute force over all edge subsets.
    Oracle,
}

impl Method {
    pub fn as_str(self) -> &'static str {
        match self {
            Method::B => "b",
            Method::Z => "z",
            Method::Oracle => "oracle",
        }
    }

    /// Diagram kind of the STRES diagram, if any.
    pub fn kind(self) -> Option<DiagramKind> {
        match self {
            Method::B => Some(DiagramKind::Bdd),
            Method::Z => Some(DiagramKind::Zdd),
            Method::Oracle => None,
        }
    }
}

impl std::str::FromStr for Method {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "b" => Ok(Method::B),
            "z" => Ok(Method::Z),
            "oracle" => Ok(Method::Oracle),
            _ => Err(format!("unknown method `{s}` (expected b, z or oracle)")),
        }
    }
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, Default)]
pub enum OrderKind {
    #[default]
    Bfs,
    /// Edges in file order.
    File,
}

impl std::str::FromStr for OrderKind {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        match s {
            "bfs" => Ok(OrderKind::Bfs),
            "file" => Ok(OrderKind::File),
            _ => Err(format!("unknown order `{s}` (expected bfs or file)")),
        }
    }
}

impl OrderKind {
    pub fn order(self, g: &TemporalGraph) -> EdgeOrder {
        match self {
            OrderKind::Bfs => bfs_edge_order(g),
            OrderKind::File => EdgeOrder::identity(g.edge_count()),
        }
    }
}

#[derive(Clone, Debug)]
pub struct RunOptions {
    pub mode: Mode,
    pub method: Method,
    pub order: OrderKind,
    pub timeout: Option<Duration>,
    /// Largest `m` the oracle accepts.
    pub oracle_limit: usize,
}

impl Default for RunOptions {
    fn default() -> Self {
        RunOptions {
            mode: Mode::MultiHop,
            method: Method::B,
            order: OrderKind::Bfs,
            timeout: None,
            oracle_limit: ORACLE_LIMIT,
        }
    }
}

/// Non-terminal node counts of the diagrams built for one run.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct NodeCounts {
    pub journey_zdd: usize,
    pub stres: usize,
    /// Nodes expanded by the frontier search before reduction.
    pub search: usize,
}

/// Wall-clock seconds per stage.
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct Timings {
    pub journeys: f64,
    pub superset: f64,
    pub reliability: f64,
    pub total: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ReliabilityReport {
    pub schema_version: u32,
    pub sigma: f64,
    pub mode: Mode,
    pub method: Method,
    pub m: usize,
    /// Decimal; may exceed 64 bits.
    pub journey_count: String,
    pub stres_count: String,
    pub node_counts: Option<NodeCounts>,
    pub timings: Timings,
}

/// Journey ZDD of a graph, with the graph relabelled to processing order.
pub struct JourneyStage {
    /// Input graph with edge `i` = the edge processed at step `i`.
    pub graph: TemporalGraph,
    pub order: EdgeOrder,
    pub store: DiagramStore,
    pub journeys: NodeRef,
    pub stats: FbsStats,
    pub elapsed: Duration,
}

impl JourneyStage {
    pub fn m(&self) -> usize {
        self.graph.edge_count()
    }

    pub fn journey_count(&self) -> num_bigint::BigUint {
        self.store.count_sat(self.journeys, self.m(), DiagramKind::Zdd)
    }

    /// Lift to the STRES family in the requested representation.
    pub fn lift(&mut self, kind: DiagramKind, deadline: Option<Instant>) -> Result<NodeRef> {
        let m = self.m();
        let lifted = match kind {
            DiagramKind::Bdd => superset_to_bdd_until(&mut self.store, self.journeys, m, deadline),
            DiagramKind::Zdd => superset_to_zdd_until(&mut self.store, self.journeys, m, deadline),
        };
        lifted.map_err(|_| timed_out())
    }

    /// Journey edge sets mapped back to 1-based indices of the input graph.
    pub fn journeys_in_input_order(&self, limit: usize) -> Result<Vec<Vec<u32>>> {
        let sets = self
            .store
            .enumerate_sets(self.journeys, DiagramKind::Zdd, self.m(), limit)?;
        Ok(to_input_indices(&self.order, sets))
    }
}

/// Translate edge sets over processing steps to file indices.
pub fn to_input_indices(order: &EdgeOrder, sets: Vec<Vec<u32>>) -> Vec<Vec<u32>> {
    let perm = order.as_slice();
    let mut out: Vec<Vec<u32>> = sets
        .into_iter()
        .map(|s| {
            let mut s: Vec<u32> = s.into_iter().map(|v| perm[v as usize - 1] as u32 + 1).collect();
            s.sort_unstable();
            s
        })
        .collect();
    out.sort();
    out
}

// the caller that owns the budget fills in the duration
fn timed_out() -> Error {
    Error::Timeout(Duration::ZERO)
}

pub fn journey_stage(
    g: &TemporalGraph,
    mode: Mode,
    order: OrderKind,
    deadline: Option<Instant>,
) -> Result<JourneyStage> {
    let start = Instant::now();
    let order = order.order(g);
    let graph = g.reordered(&order);
    let mut store = DiagramStore::new();
    let (journeys, stats) = build_journey_zdd(&mut store, &graph, mode, true, deadline).map_err(|_| timed_out())?;
    Ok(JourneyStage {
        graph,
        order,
        store,
        journeys,
        stats,
        elapsed: start.elapsed(),
    })
}

/// Run the full pipeline on one graph.
pub fn evaluate(g: &TemporalGraph, opts: &RunOptions) -> Result<ReliabilityReport> {
    let start = Instant::now();
    let result = match opts.method.kind() {
        Some(kind) => evaluate_dd(g, opts, kind, start),
        None => evaluate_oracle(g, opts),
    };
    match result {
        Err(Error::Timeout(_)) => Err(Error::Timeout(opts.timeout.unwrap_or_default())),
        other => other,
    }
}

fn evaluate_dd(g: &TemporalGraph, opts: &RunOptions, kind: DiagramKind, start: Instant) -> Result<ReliabilityReport> {
    let deadline = opts.timeout.map(|t| start + t);
    let mut stage = journey_stage(g, opts.mode, opts.order, deadline)?;
    let m = stage.m();

    let t = Instant::now();
    let stres = stage.lift(kind, deadline)?;
    let superset = t.elapsed();

    let t = Instant::now();
    let probs = stage.graph.survival();
    let sigma = match kind {
        DiagramKind::Bdd => reliability_bdd(&stage.store, stres, &probs, m)?,
        DiagramKind::Zdd => reliability_zdd(&stage.store, stres, &probs, m)?,
    };
    let reliability = t.elapsed();

    Ok(ReliabilityReport {
        schema_version: SCHEMA_VERSION,
        sigma,
        mode: opts.mode,
        method: opts.method,
        m,
        journey_count: stage.journey_count().to_string(),
        stres_count: stage.store.count_sat(stres, m, kind).to_string(),
        node_counts: Some(NodeCounts {
            journey_zdd: stage.store.size(stage.journeys),
            stres: stage.store.size(stres),
            search: stage.stats.total_nodes(),
        }),
        timings: Timings {
            journeys: stage.elapsed.as_secs_f64(),
            superset: superset.as_secs_f64(),
            reliability: reliability.as_secs_f64(),
            total: start.elapsed().as_secs_f64(),
        },
    })
}

fn evaluate_oracle(g: &TemporalGraph, opts: &RunOptions) -> Result<ReliabilityReport> {
    let m = g.edge_count();
    if m > opts.oracle_limit {
        return Err(OracleError::TooLarge {
            m,
            limit: opts.oracle_limit,
        }
        .into());
    }
    let start = Instant::now();
    let journeys = oracle::brute_journeys(g, opts.mode).len();
    let t = Instant::now();
    let stres = oracle::brute_stres(g, opts.mode)?.len();
    let superset = t.elapsed();
    let t = Instant::now();
    let sigma: f64 = oracle::brute_reliability(g, opts.mode)?;
    Ok(ReliabilityReport {
        schema_version: SCHEMA_VERSION,
        sigma,
        mode: opts.mode,
        method: Method::Oracle,
        m,
        journey_count: journeys.to_string(),
        stres_count: stres.to_string(),
        node_counts: None,
        timings: Timings {
            journeys: (t - start).as_secs_f64() - superset.as_secs_f64(),
            superset: superset.as_secs_f64(),
            reliability: t.elapsed().as_secs_f64(),
            total: start.elapsed().as_secs_f64(),
        },
    })
}
