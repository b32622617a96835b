//! Temporal graphs: data model, `.tgr` I/O, edge orders and frontier schedules.
//!
//! Edges are stored in file order; a DD variable `i` (1-based) refers to the
//! `i`-th edge of the graph the diagram was built over. The pipeline always
//! works on [`TemporalGraph::reordered`] so that variable index and
//! processing step coincide.

use std::collections::VecDeque;
use std::fmt::Write as _;

use crate::error::GraphError;

/// Survival probability used when an edge record omits one.
pub const DEFAULT_SURVIVAL: f64 = 0.9;

pub type Vertex = u32;

/// An undirected edge with a time label and a survival probability.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Edge {
    pub u: Vertex,
    pub v: Vertex,
    pub t: u32,
    pub p: f64,
}

impl Edge {
    pub fn new(u: Vertex, v: Vertex, t: u32, p: f64) -> Self {
        Edge { u, v, t, p }
    }

    pub fn other(&self, w: Vertex) -> Vertex {
        if w == self.u {
            self.v
        } else {
            self.u
        }
    }

    pub fn touches(&self, w: Vertex) -> bool {
        self.u == w || self.v == w
    }
}

/// Which label sequences count as a journey.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    /// Non-decreasing labels.
    #[serde(rename = "multi")]
    MultiHop,
    /// Strictly increasing labels.
    #[serde(rename = "single")]
    SingleHop,
}

impl Mode {
    /// Whether an edge labelled `next` may follow one labelled `prev`.
    #[inline]
    pub fn admits(self, prev: u32, next: u32) -> bool {
        match self {
            Mode::MultiHop => prev <= next,
            Mode::SingleHop => prev < next,
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Mode::MultiHop => "multi",
            Mode::SingleHop => "single",
        }
    }
}

impl std::str::FromStr for Mode {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "multi" | "multi-hop" => Ok(Mode::MultiHop),
            "single" | "single-hop" => Ok(Mode::SingleHop),
            _ => Err(format!("unknown mode `{s}` (expected multi or single)")),
        }
    }
}

/// Undirected temporal multigraph with a designated source and terminal.
#[derive(Clone, Debug, PartialEq)]
pub struct TemporalGraph {
    n: usize,
    edges: Vec<Edge>,
    source: Vertex,
    terminal: Vertex,
}

impl TemporalGraph {
    pub fn new(n: usize, source: Vertex, terminal: Vertex, edges: Vec<Edge>) -> Result<Self, GraphError> {
        for w in [source, terminal] {
            if w as usize >= n {
                return Err(GraphError::UnknownVertex {
                    line: 0,
                    vertex: w as u64,
                    n,
                });
            }
        }
        if source == terminal {
            return Err(GraphError::SourceIsTerminal(source));
        }
        for (i, e) in edges.iter().enumerate() {
            validate_edge(e, n, i + 1)?;
        }
        Ok(TemporalGraph {
            n,
            edges,
            source,
            terminal,
        })
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    /// Edge for 1-based variable index `var`.
    pub fn edge(&self, var: usize) -> &Edge {
        &self.edges[var - 1]
    }

    pub fn source(&self) -> Vertex {
        self.source
    }

    pub fn terminal(&self) -> Vertex {
        self.terminal
    }

    /// Largest time label, or 0 for an edgeless graph.
    pub fn max_label(&self) -> u32 {
        self.edges.iter().map(|e| e.t).max().unwrap_or(0)
    }

    pub fn survival(&self) -> Vec<f64> {
        self.edges.iter().map(|e| e.p).collect()
    }

    /// The graph whose `i`-th edge is the edge processed at step `i` of `order`.
    pub fn reordered(&self, order: &EdgeOrder) -> TemporalGraph {
        TemporalGraph {
            n: self.n,
            edges: order.perm.iter().map(|&j| self.edges[j]).collect(),
            source: self.source,
            terminal: self.terminal,
        }
    }

    /// Keep only the edges whose 1-based index is in `vars`.
    pub fn subgraph(&self, vars: &[u32]) -> TemporalGraph {
        TemporalGraph {
            n: self.n,
            edges: vars.iter().map(|&i| self.edges[i as usize - 1]).collect(),
            source: self.source,
            terminal: self.terminal,
        }
    }

    pub fn with_edges(&self, edges: Vec<Edge>) -> Result<TemporalGraph, GraphError> {
        TemporalGraph::new(self.n, self.source, self.terminal, edges)
    }

    pub fn parse_tgr(text: &str) -> Result<Self, GraphError> {
        parse_tgr(text)
    }

    pub fn to_tgr(&self) -> String {
        serialize_tgr(self)
    }
}

fn validate_edge(e: &Edge, n: usize, line: usize) -> Result<(), GraphError> {
    for w in [e.u, e.v] {
        if w as usize >= n {
            return Err(GraphError::UnknownVertex {
                line,
                vertex: w as u64,
                n,
            });
        }
    }
    if e.u == e.v {
        return Err(GraphError::SelfLoop { line, vertex: e.u });
    }
    if e.t < 1 {
        return Err(GraphError::TimeLabel { line });
    }
    if !(0.0..=1.0).contains(&e.p) {
        return Err(GraphError::Probability { line, p: e.p });
    }
    Ok(())
}

/// Parse the line-oriented `.tgr` format.
///
/// ```text
/// p tvn <n> <m>
/// s <vid>
/// z <vid>
/// e <u> <v> <t> [p]
/// ```
pub fn parse_tgr(text: &str) -> Result<TemporalGraph, GraphError> {
    let mut header: Option<(usize, usize)> = None;
    let mut source = None;
    let mut terminal = None;
    let mut edges = Vec::new();

    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let content = raw.split('#').next().unwrap_or("");
        let mut fields = content.split_whitespace();
        let Some(tag) = fields.next() else { continue };
        let rest: Vec<&str> = fields.collect();
        let syntax = |msg: &str| GraphError::Syntax {
            line,
            msg: msg.to_string(),
        };

        match tag {
            "p" => {
                if header.is_some() {
                    return Err(syntax("duplicate header"));
                }
                if rest.len() != 3 || rest[0] != "tvn" {
                    return Err(syntax("expected `p tvn <n> <m>`"));
                }
                let n = parse_int::<usize>(rest[1], line)?;
                let m = parse_int::<usize>(rest[2], line)?;
                header = Some((n, m));
            }
            "s" | "z" => {
                let (n, _) = header.ok_or_else(|| syntax("record before header"))?;
                if rest.len() != 1 {
                    return Err(syntax("expected a single vertex id"));
                }
                let w = parse_vertex(rest[0], n, line)?;
                let slot = if tag == "s" { &mut source } else { &mut terminal };
                if slot.is_some() {
                    return Err(syntax("duplicate declaration"));
                }
                *slot = Some(w);
            }
            "e" => {
                let (n, _) = header.ok_or_else(|| syntax("record before header"))?;
                if rest.len() != 3 && rest.len() != 4 {
                    return Err(syntax("expected `e <u> <v> <t> [p]`"));
                }
                let u = parse_vertex(rest[0], n, line)?;
                let v = parse_vertex(rest[1], n, line)?;
                let t = parse_int::<u32>(rest[2], line)?;
                let p = match rest.get(3) {
                    Some(s) => s.parse::<f64>().map_err(|_| syntax("bad probability"))?,
                    None => DEFAULT_SURVIVAL,
                };
                let e = Edge { u, v, t, p };
                validate_edge(&e, n, line)?;
                edges.push(e);
            }
            _ => return Err(syntax("unknown record type")),
        }
    }

    let (n, m) = header.ok_or(GraphError::Missing("p"))?;
    let source = source.ok_or(GraphError::Missing("s"))?;
    let terminal = terminal.ok_or(GraphError::Missing("z"))?;
    if edges.len() != m {
        return Err(GraphError::EdgeCount {
            declared: m,
            found: edges.len(),
        });
    }
    TemporalGraph::new(n, source, terminal, edges)
}

fn parse_int<T: std::str::FromStr>(s: &str, line: usize) -> Result<T, GraphError> {
    s.parse::<T>().map_err(|_| GraphError::Syntax {
        line,
        msg: format!("expected a non-negative integer, found `{s}`"),
    })
}

fn parse_vertex(s: &str, n: usize, line: usize) -> Result<Vertex, GraphError> {
    let w = parse_int::<u64>(s, line)?;
    if w >= n as u64 {
        return Err(GraphError::UnknownVertex { line, vertex: w, n });
    }
    Ok(w as Vertex)
}

/// Emit `.tgr` text with edges in variable order.
pub fn serialize_tgr(g: &TemporalGraph) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "p tvn {} {}", g.n, g.edges.len());
    let _ = writeln!(out, "s {}", g.source);
    let _ = writeln!(out, "z {}", g.terminal);
    for e in &g.edges {
        let _ = writeln!(out, "e {} {} {} {}", e.u, e.v, e.t, e.p);
    }
    out
}

/// Processing order: `perm[i]` is the 0-based file index of the edge handled
/// at step `i + 1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EdgeOrder {
    perm: Vec<usize>,
}

impl EdgeOrder {
    pub fn new(perm: Vec<usize>) -> Result<Self, GraphError> {
        let m = perm.len();
        let mut seen = vec![false; m];
        for &j in &perm {
            if j >= m || std::mem::replace(&mut seen[j], true) {
                return Err(GraphError::BadOrder(m));
            }
        }
        Ok(EdgeOrder { perm })
    }

    pub fn identity(m: usize) -> Self {
        EdgeOrder { perm: (0..m).collect() }
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.perm
    }

    pub fn len(&self) -> usize {
        self.perm.len()
    }

    pub fn is_empty(&self) -> bool {
        self.perm.is_empty()
    }
}

/// Breadth-first layers from the source over the underlying static graph.
pub fn bfs_layers(g: &TemporalGraph) -> Vec<Option<u32>> {
    let mut adj = vec![Vec::new(); g.n];
    for e in &g.edges {
        adj[e.u as usize].push(e.v);
        adj[e.v as usize].push(e.u);
    }
    let mut layer = vec![None; g.n];
    layer[g.source as usize] = Some(0);
    let mut queue = VecDeque::from([g.source]);
    while let Some(w) = queue.pop_front() {
        let next = layer[w as usize].map(|l| l + 1);
        for &x in &adj[w as usize] {
            if layer[x as usize].is_none() {
                layer[x as usize] = next;
                queue.push_back(x);
            }
        }
    }
    layer
}

/// Breadth-first edge order: edges sorted by the layer of the nearer
/// endpoint, then of the farther one, then endpoint ids, label and file
/// index. Edges unreachable from the source go last in file order.
pub fn bfs_edge_order(g: &TemporalGraph) -> EdgeOrder {
    let layer = bfs_layers(g);
    let mut keyed: Vec<_> = g
        .edges
        .iter()
        .enumerate()
        .map(|(idx, e)| {
            let a = (layer[e.u as usize].unwrap_or(u32::MAX), e.u);
            let b = (layer[e.v as usize].unwrap_or(u32::MAX), e.v);
            let (near, far) = if a <= b { (a, b) } else { (b, a) };
            (near.0, far.0, near.1, far.1, e.t, idx)
        })
        .collect();
    keyed.sort_unstable_by(|x, y| {
        let unreachable = |k: &(u32, u32, u32, u32, u32, usize)| k.0 == u32::MAX;
        match (unreachable(x), unreachable(y)) {
            (true, true) => x.5.cmp(&y.5),
            _ => x.cmp(y),
        }
    });
    EdgeOrder {
        perm: keyed.into_iter().map(|k| k.5).collect(),
    }
}

/// Frontier sets `F_1..F_{m+1}` for a fixed order, with per-step deltas.
///
/// `entering[i]` holds the endpoints of step `i + 1`'s edge that are touched
/// for the first time, `leaving[i]` those touched for the last time. A vertex
/// with a single incident edge appears in both at the same step and in no
/// frontier.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FrontierSchedule {
    frontiers: Vec<Vec<Vertex>>,
    entering: Vec<Vec<Vertex>>,
    leaving: Vec<Vec<Vertex>>,
}

impl FrontierSchedule {
    /// `F_i` for `1 <= i <= m + 1`.
    pub fn frontier(&self, i: usize) -> &[Vertex] {
        &self.frontiers[i - 1]
    }

    pub fn frontiers(&self) -> &[Vec<Vertex>] {
        &self.frontiers
    }

    /// Endpoints of edge `i` first seen at step `i`.
    pub fn entering(&self, i: usize) -> &[Vertex] {
        &self.entering[i - 1]
    }

    /// Endpoints of edge `i` last seen at step `i`.
    pub fn leaving(&self, i: usize) -> &[Vertex] {
        &self.leaving[i - 1]
    }

    pub fn max_width(&self) -> usize {
        self.frontiers.iter().map(Vec::len).max().unwrap_or(0)
    }

    pub fn steps(&self) -> usize {
        self.entering.len()
    }
}

/// Compute the frontier schedule of `g` under `order`.
pub fn frontier_schedule(g: &TemporalGraph, order: &EdgeOrder) -> FrontierSchedule {
    let m = g.edges.len();
    let mut first = vec![usize::MAX; g.n];
    let mut last = vec![0usize; g.n];
    for (step, &j) in order.perm.iter().enumerate() {
        let e = &g.edges[j];
        for w in [e.u as usize, e.v as usize] {
            first[w] = first[w].min(step);
            last[w] = step;
        }
    }

    let mut frontiers = Vec::with_capacity(m + 1);
    let mut entering = Vec::with_capacity(m);
    let mut leaving = Vec::with_capacity(m);
    let mut current: Vec<Vertex> = Vec::new();
    frontiers.push(current.clone());
    for (step, &j) in order.perm.iter().enumerate() {
        let e = &g.edges[j];
        let mut enter: Vec<Vertex> = [e.u, e.v].into_iter().filter(|&w| first[w as usize] == step).collect();
        let mut leave: Vec<Vertex> = [e.u, e.v].into_iter().filter(|&w| last[w as usize] == step).collect();
        enter.sort_unstable();
        leave.sort_unstable();
        current.extend_from_slice(&enter);
        current.retain(|w| !leave.contains(w));
        current.sort_unstable();
        frontiers.push(current.clone());
        entering.push(enter);
        leaving.push(leave);
    }
    FrontierSchedule {
        frontiers,
        entering,
        leaving,
    }
}
