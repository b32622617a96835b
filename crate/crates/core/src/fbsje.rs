//! Frontier-based search for journey enumeration.
//!
//! Builds the ZDD of every s–z journey of a temporal graph. Each node of the
//! search carries a [`Configuration`]: for every vertex on the current
//! frontier, the component tag, the degree within the adopted edges, and the
//! label of the edge ending a partial journey at that vertex.
//!
//! Component tags: `0` for the segment hanging off the source, `1` for the
//! terminal's segment, `>= 2` for segments touching neither, `-1` for
//! isolated vertices. The source and terminal carry `0` / `1` from the moment
//! they enter the frontier, even while isolated.
//!
//! Two configurations that compare equal admit exactly the same completions,
//! so nodes are merged on equality. Tags `>= 2` are renumbered in order of
//! first appearance to make that comparison canonical.

use std::time::Instant;

use crate::dd::{DiagramStore, NodeRef};
use crate::fbs::{self, BuildOptions, Child, DeadlineExceeded, FrontierSpec};
use crate::graph::{frontier_schedule, Edge, EdgeOrder, FrontierSchedule, Mode, TemporalGraph, Vertex};

pub const ISOLATED: i32 = -1;
pub const SOURCE_COMP: i32 = 0;
pub const TERMINAL_COMP: i32 = 1;
/// `time` value of vertices that do not end a segment.
pub const NO_TIME: i32 = -1;

/// One frontier vertex's slice of a configuration.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Column {
    pub vertex: Vertex,
    pub comp: i32,
    pub deg: u8,
    pub time: i32,
}

impl Column {
    /// Fresh column for a vertex entering the frontier.
    pub fn entering(vertex: Vertex, ends: Ends) -> Self {
        let comp = if vertex == ends.source {
            SOURCE_COMP
        } else if vertex == ends.terminal {
            TERMINAL_COMP
        } else {
            ISOLATED
        };
        Column {
            vertex,
            comp,
            deg: 0,
            time: NO_TIME,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Ends {
    pub source: Vertex,
    pub terminal: Vertex,
}

impl Ends {
    fn contains(self, w: Vertex) -> bool {
        w == self.source || w == self.terminal
    }
}

/// Search state of one node.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Configuration {
    /// Columns sorted by vertex.
    Partial(Vec<Column>),
    /// An s–z journey is finished; every later edge must be left out.
    Complete,
}

/// Why a branch was cut.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum PruneReason {
    /// Source or terminal would reach degree 2.
    EndDegree,
    /// Another vertex would reach degree 3.
    InnerDegree,
    /// Source or terminal leaves the frontier without degree 1.
    EndLeaving,
    /// Another vertex leaves the frontier with degree 1.
    InnerLeaving,
    /// Both endpoints already share a component.
    Cycle,
    /// The joined segment cannot be traversed with monotone labels.
    Time,
    /// The journey closed while an unrelated segment is still open.
    Dangling,
    /// An edge after the journey was already complete.
    Completed,
}

impl PruneReason {
    pub const ALL: [PruneReason; 8] = [
        PruneReason::EndDegree,
        PruneReason::InnerDegree,
        PruneReason::EndLeaving,
        PruneReason::InnerLeaving,
        PruneReason::Cycle,
        PruneReason::Time,
        PruneReason::Dangling,
        PruneReason::Completed,
    ];

    fn index(self) -> usize {
        self as usize
    }
}

fn position(cols: &[Column], w: Vertex) -> usize {
    cols.binary_search_by_key(&w, |c| c.vertex)
        .expect("edge endpoint on the working frontier")
}

/// The other degree-1 vertex carrying the same tag as `cols[at]`.
fn partner(cols: &[Column], at: usize) -> Option<&Column> {
    let me = &cols[at];
    cols.iter()
        .enumerate()
        .find(|&(k, c)| k != at && c.comp == me.comp && c.deg == 1)
        .map(|(_, c)| c)
}

/// Can the traversal arrive at `cols[at]` and then take an edge labelled `t`?
fn may_precede(cols: &[Column], at: usize, t: u32, mode: Mode, ends: Ends) -> bool {
    let c = &cols[at];
    if ends.contains(c.vertex) {
        // a fresh source starts the journey; a fresh terminal cannot be left.
        // Saturated ends are handled by the degree check.
        return c.deg > 0 || c.vertex == ends.source;
    }
    if c.deg != 1 {
        return true;
    }
    let time = c.time as u32;
    match c.comp {
        SOURCE_COMP => mode.admits(time, t),
        TERMINAL_COMP => false,
        _ => {
            // the segment must run partner -> c, so it starts with the smaller label
            let from_partner = partner(cols, at).is_none_or(|p| p.time as u32 <= time);
            from_partner && mode.admits(time, t)
        }
    }
}

/// Can an edge labelled `t` be followed by leaving through `cols[at]`?
fn may_follow(cols: &[Column], at: usize, t: u32, mode: Mode, ends: Ends) -> bool {
    let c = &cols[at];
    if ends.contains(c.vertex) {
        return c.deg > 0 || c.vertex == ends.terminal;
    }
    if c.deg != 1 {
        return true;
    }
    let time = c.time as u32;
    match c.comp {
        TERMINAL_COMP => mode.admits(t, time),
        SOURCE_COMP => false,
        _ => {
            let to_partner = partner(cols, at).is_none_or(|p| time <= p.time as u32);
            to_partner && mode.admits(t, time)
        }
    }
}

/// Whether adopting `edge` keeps the segments through its endpoints
/// extendable to a label-monotone s–z journey. Both traversal directions of
/// the edge are tried.
pub fn check_time_condition(cols: &[Column], edge: &Edge, mode: Mode, ends: Ends) -> bool {
    let iu = position(cols, edge.u);
    let iv = position(cols, edge.v);
    let t = edge.t;
    (may_precede(cols, iu, t, mode, ends) && may_follow(cols, iv, t, mode, ends))
        || (may_precede(cols, iv, t, mode, ends) && may_follow(cols, iu, t, mode, ends))
}

/// Apply the adoption (`take`) or rejection of `edge` to the columns.
pub fn update_info(cols: &mut [Column], edge: &Edge, take: bool) {
    if !take {
        return;
    }
    let iu = position(cols, edge.u);
    let iv = position(cols, edge.v);
    let (cu, cv) = (cols[iu].comp, cols[iv].comp);
    match (cu, cv) {
        (ISOLATED, ISOLATED) => {
            let c = (2..)
                .find(|c| cols.iter().all(|col| col.comp != *c))
                .expect("unbounded range");
            cols[iu].comp = c;
            cols[iv].comp = c;
        }
        (ISOLATED, c) => cols[iu].comp = c,
        (c, ISOLATED) => cols[iv].comp = c,
        _ => {
            let (lo, hi) = (cu.min(cv), cu.max(cv));
            for col in cols.iter_mut() {
                if col.comp == hi {
                    col.comp = lo;
                }
            }
        }
    }
    for k in [iu, iv] {
        let col = &mut cols[k];
        col.deg += 1;
        match col.deg {
            1 => col.time = edge.t as i32,
            2 => col.time = NO_TIME,
            _ => {}
        }
    }
}

/// Whether the `take`-branch for `edge` provably holds no journey.
///
/// `cols` is the working frontier (current frontier plus entering
/// endpoints) and `leaving` the vertices whose last edge is `edge`.
pub fn prune(
    cols: &[Column],
    edge: &Edge,
    take: bool,
    mode: Mode,
    ends: Ends,
    leaving: &[Vertex],
) -> Option<PruneReason> {
    let (iu, iv) = (position(cols, edge.u), position(cols, edge.v));
    let (cu, cv) = (cols[iu].comp, cols[iv].comp);
    if take {
        if cu != ISOLATED && cu == cv {
            return Some(PruneReason::Cycle);
        }
        if !check_time_condition(cols, edge, mode, ends) {
            return Some(PruneReason::Time);
        }
    }
    let mut next = cols.to_vec();
    update_info(&mut next, edge, take);
    for k in [iu, iv] {
        let c = &next[k];
        if ends.contains(c.vertex) && c.deg > 1 {
            return Some(PruneReason::EndDegree);
        }
        if !ends.contains(c.vertex) && c.deg > 2 {
            return Some(PruneReason::InnerDegree);
        }
    }
    for &w in leaving {
        let c = &next[position(&next, w)];
        if ends.contains(w) && c.deg != 1 {
            return Some(PruneReason::EndLeaving);
        }
        if !ends.contains(w) && c.deg == 1 {
            return Some(PruneReason::InnerLeaving);
        }
    }
    if take && completes(cu, cv) && next.iter().any(|c| c.deg == 1 && !ends.contains(c.vertex)) {
        return Some(PruneReason::Dangling);
    }
    None
}

fn completes(cu: i32, cv: i32) -> bool {
    matches!((cu, cv), (SOURCE_COMP, TERMINAL_COMP) | (TERMINAL_COMP, SOURCE_COMP))
}

/// Child configuration of an unpruned branch.
pub fn generate_node(cols: &[Column], edge: &Edge, take: bool, leaving: &[Vertex]) -> Configuration {
    let (cu, cv) = (cols[position(cols, edge.u)].comp, cols[position(cols, edge.v)].comp);
    if take && completes(cu, cv) {
        return Configuration::Complete;
    }
    let mut next = cols.to_vec();
    update_info(&mut next, edge, take);
    next.retain(|c| !leaving.contains(&c.vertex));
    canonicalize(&mut next);
    Configuration::Partial(next)
}

/// Renumber tags `>= 2` by order of first appearance.
pub fn canonicalize(cols: &mut [Column]) {
    let mut map: Vec<(i32, i32)> = Vec::new();
    for col in cols.iter_mut() {
        if col.comp < 2 {
            continue;
        }
        let tag = match map.iter().find(|(old, _)| *old == col.comp) {
            Some(&(_, new)) => new,
            None => {
                let new = map.len() as i32 + 2;
                map.push((col.comp, new));
                new
            }
        };
        col.comp = tag;
    }
}

/// Upper bound `(3 |F| T)^|F|` on the number of distinct nodes per level,
/// saturating at `u128::MAX`.
pub fn state_bound(frontier: usize, max_label: u32) -> u128 {
    let base = 3u128 * frontier as u128 * max_label as u128;
    let mut acc: u128 = 1;
    for _ in 0..frontier {
        acc = acc.saturating_mul(base);
    }
    acc
}

/// Construction statistics.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct FbsStats {
    /// Distinct nodes per level, `level_widths[i - 1]` for variable `i`.
    pub level_widths: Vec<usize>,
    pub prunes: [u64; PruneReason::ALL.len()],
    /// Levels whose width exceeded [`state_bound`].
    pub bound_violations: usize,
    pub max_frontier: usize,
}

impl FbsStats {
    pub fn prunes_for(&self, reason: PruneReason) -> u64 {
        self.prunes[reason.index()]
    }

    pub fn total_nodes(&self) -> usize {
        self.level_widths.iter().sum()
    }
}

/// [`FrontierSpec`] enumerating journeys of a graph whose edge `i` is
/// processed at step `i`.
pub struct JourneySpec<'g> {
    graph: &'g TemporalGraph,
    sched: FrontierSchedule,
    mode: Mode,
    ends: Ends,
    max_label: u32,
    stats: FbsStats,
    working: Vec<Column>,
}

impl<'g> JourneySpec<'g> {
    pub fn new(graph: &'g TemporalGraph, mode: Mode) -> Self {
        let sched = frontier_schedule(graph, &EdgeOrder::identity(graph.edge_count()));
        let stats = FbsStats {
            max_frontier: sched.max_width(),
            ..Default::default()
        };
        JourneySpec {
            graph,
            mode,
            ends: Ends {
                source: graph.source(),
                terminal: graph.terminal(),
            },
            max_label: graph.max_label(),
            sched,
            stats,
            working: Vec::new(),
        }
    }

    pub fn schedule(&self) -> &FrontierSchedule {
        &self.sched
    }

    pub fn stats(&self) -> &FbsStats {
        &self.stats
    }

    pub fn into_stats(self) -> FbsStats {
        self.stats
    }

    /// Current columns plus fresh columns for the endpoints entering at `level`.
    fn fill_working(&mut self, cols: &[Column], level: usize) {
        self.working.clear();
        self.working.extend_from_slice(cols);
        for &w in self.sched.entering(level) {
            self.working.push(Column::entering(w, self.ends));
        }
        self.working.sort_unstable_by_key(|c| c.vertex);
    }
}

impl FrontierSpec for JourneySpec<'_> {
    type State = Configuration;

    fn variables(&self) -> usize {
        self.graph.edge_count()
    }

    fn root(&mut self) -> Child<Configuration> {
        Child::Node(Configuration::Partial(Vec::new()))
    }

    fn child(&mut self, state: &Configuration, level: usize, take: bool) -> Child<Configuration> {
        let last = level == self.graph.edge_count();
        let cols = match state {
            Configuration::Complete if take => {
                self.stats.prunes[PruneReason::Completed.index()] += 1;
                return Child::Reject;
            }
            Configuration::Complete if last => return Child::Accept,
            Configuration::Complete => return Child::Node(Configuration::Complete),
            Configuration::Partial(cols) => cols,
        };
        self.fill_working(cols, level);
        let edge = *self.graph.edge(level);
        let leaving = self.sched.leaving(level);
        if let Some(reason) = prune(&self.working, &edge, take, self.mode, self.ends, leaving) {
            self.stats.prunes[reason.index()] += 1;
            return Child::Reject;
        }
        match generate_node(&self.working, &edge, take, leaving) {
            Configuration::Complete if last => Child::Accept,
            _ if last => Child::Reject,
            next => Child::Node(next),
        }
    }

    fn level_done(&mut self, level: usize, nodes: usize) {
        self.stats.level_widths.push(nodes);
        let width = self.sched.frontier(level).len();
        if nodes as u128 > state_bound(width, self.max_label) {
            self.stats.bound_violations += 1;
        }
    }
}

/// Journey ZDD of `graph` whose variables follow the graph's edge order.
pub fn build_journey_zdd(
    store: &mut DiagramStore,
    graph: &TemporalGraph,
    mode: Mode,
    merge: bool,
    deadline: Option<Instant>,
) -> Result<(NodeRef, FbsStats), DeadlineExceeded> {
    let mut spec = JourneySpec::new(graph, mode);
    let root = fbs::build(&mut spec, store, BuildOptions { merge, deadline })?;
    Ok((root, spec.into_stats()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dd::DiagramKind;

    const ENDS: Ends = Ends { source: 0, terminal: 9 };

    fn col(vertex: Vertex, comp: i32, deg: u8, time: i32) -> Column {
        Column {
            vertex,
            comp,
            deg,
            time,
        }
    }

    fn journeys(edges: &[(u32, u32, u32)], n: usize, z: u32, mode: Mode) -> Vec<Vec<u32>> {
        let edges = edges.iter().map(|&(u, v, t)| Edge::new(u, v, t, 0.9)).collect();
        let g = TemporalGraph::new(n, 0, z, edges).unwrap();
        let mut store = DiagramStore::new();
        let (f, stats) = build_journey_zdd(&mut store, &g, mode, true, None).unwrap();
        assert_eq!(stats.bound_violations, 0);
        store
            .enumerate_sets(f, DiagramKind::Zdd, g.edge_count(), 1 << 20)
            .unwrap()
    }

    #[test]
    fn single_edge() {
        for mode in [Mode::MultiHop, Mode::SingleHop] {
            assert_eq!(journeys(&[(0, 1, 1)], 2, 1, mode), vec![vec![1]]);
        }
    }

    #[test]
    fn series_paths() {
        let multi = Mode::MultiHop;
        let single = Mode::SingleHop;
        assert_eq!(journeys(&[(0, 1, 1), (1, 2, 2)], 3, 2, multi), vec![vec![1, 2]]);
        assert!(journeys(&[(0, 1, 2), (1, 2, 1)], 3, 2, multi).is_empty());
        assert!(journeys(&[(0, 1, 2), (1, 2, 1)], 3, 2, single).is_empty());
        assert_eq!(journeys(&[(0, 1, 1), (1, 2, 1)], 3, 2, multi), vec![vec![1, 2]]);
        assert!(journeys(&[(0, 1, 1), (1, 2, 1)], 3, 2, single).is_empty());
    }

    #[test]
    fn triangle() {
        let sets = journeys(&[(0, 1, 1), (1, 2, 2), (0, 2, 3)], 3, 2, Mode::MultiHop);
        assert_eq!(sets, vec![vec![1, 2], vec![3]]);
    }

    #[test]
    fn no_edges_at_source_gives_empty_family() {
        assert!(journeys(&[(1, 2, 1)], 3, 2, Mode::MultiHop).is_empty());
    }

    #[test]
    fn cycle_is_pruned() {
        let cols = [col(0, SOURCE_COMP, 1, 2), col(3, SOURCE_COMP, 1, 3)];
        let e = Edge::new(0, 3, 5, 0.9);
        assert_eq!(
            prune(&cols, &e, true, Mode::MultiHop, ENDS, &[]),
            Some(PruneReason::Cycle)
        );
    }

    #[test]
    fn time_violation_at_source_segment() {
        // endpoint a=1 of the s-segment was reached at time 4, edge e4 has label 2
        let cols = [col(1, SOURCE_COMP, 1, 4), col(2, ISOLATED, 0, NO_TIME)];
        let e4 = Edge::new(1, 2, 2, 0.9);
        assert_eq!(
            prune(&cols, &e4, true, Mode::MultiHop, ENDS, &[]),
            Some(PruneReason::Time)
        );
        assert_eq!(prune(&cols, &e4, false, Mode::MultiHop, ENDS, &[]), None);
    }

    #[test]
    fn terminal_leaving_isolated() {
        let cols = [col(5, ISOLATED, 0, NO_TIME), col(9, TERMINAL_COMP, 0, NO_TIME)];
        let e = Edge::new(5, 9, 1, 0.9);
        assert_eq!(
            prune(&cols, &e, false, Mode::MultiHop, ENDS, &[9]),
            Some(PruneReason::EndLeaving)
        );
    }

    #[test]
    fn third_edge_at_inner_vertex() {
        let cols = [col(4, 2, 2, NO_TIME), col(5, ISOLATED, 0, NO_TIME)];
        let e = Edge::new(4, 5, 1, 0.9);
        assert_eq!(
            prune(&cols, &e, true, Mode::MultiHop, ENDS, &[]),
            Some(PruneReason::InnerDegree)
        );
    }

    #[test]
    fn inner_vertex_leaving_as_endpoint() {
        let cols = [col(4, ISOLATED, 0, NO_TIME), col(5, ISOLATED, 0, NO_TIME)];
        let e = Edge::new(4, 5, 1, 0.9);
        assert_eq!(
            prune(&cols, &e, true, Mode::MultiHop, ENDS, &[5]),
            Some(PruneReason::InnerLeaving)
        );
        assert_eq!(prune(&cols, &e, false, Mode::MultiHop, ENDS, &[5]), None);
    }

    #[test]
    fn time_condition_isolated_endpoints() {
        let cols = [col(4, ISOLATED, 0, NO_TIME), col(5, ISOLATED, 0, NO_TIME)];
        assert!(check_time_condition(
            &cols,
            &Edge::new(4, 5, 7, 0.9),
            Mode::SingleHop,
            ENDS
        ));
    }

    #[test]
    fn time_condition_equality_boundary() {
        let cols = [col(4, SOURCE_COMP, 1, 3), col(5, ISOLATED, 0, NO_TIME)];
        let e = Edge::new(4, 5, 3, 0.9);
        assert!(check_time_condition(&cols, &e, Mode::MultiHop, ENDS));
        assert!(!check_time_condition(&cols, &e, Mode::SingleHop, ENDS));
    }

    #[test]
    fn time_condition_completing_join() {
        let cols = [col(4, SOURCE_COMP, 1, 2), col(5, TERMINAL_COMP, 1, 5)];
        assert!(check_time_condition(
            &cols,
            &Edge::new(4, 5, 3, 0.9),
            Mode::SingleHop,
            ENDS
        ));
        assert!(!check_time_condition(
            &cols,
            &Edge::new(4, 5, 6, 0.9),
            Mode::MultiHop,
            ENDS
        ));
    }

    #[test]
    fn time_condition_middle_segment() {
        // segment u=4 (time 2) .. u'=6 (time 4); new edge 4-5
        let cols = [col(4, 2, 1, 2), col(5, ISOLATED, 0, NO_TIME), col(6, 2, 1, 4)];
        for mode in [Mode::MultiHop, Mode::SingleHop] {
            assert!(check_time_condition(&cols, &Edge::new(4, 5, 1, 0.9), mode, ENDS));
            assert!(!check_time_condition(&cols, &Edge::new(4, 5, 3, 0.9), mode, ENDS));
        }
    }

    #[test]
    fn update_attaches_isolated_vertex_to_source() {
        let mut cols = [col(0, SOURCE_COMP, 0, NO_TIME), col(3, ISOLATED, 0, NO_TIME)];
        update_info(&mut cols, &Edge::new(0, 3, 4, 0.9), true);
        assert_eq!(cols[1], col(3, SOURCE_COMP, 1, 4));
        assert_eq!(cols[0], col(0, SOURCE_COMP, 1, 4));
    }

    #[test]
    fn update_assigns_minimum_absent_tag() {
        let mut cols = [
            col(1, SOURCE_COMP, 1, 1),
            col(2, 2, 1, 1),
            col(3, ISOLATED, 0, NO_TIME),
            col(4, ISOLATED, 0, NO_TIME),
            col(5, 2, 1, 1),
        ];
        update_info(&mut cols, &Edge::new(3, 4, 2, 0.9), true);
        assert_eq!(cols[2].comp, 3);
        assert_eq!(cols[3].comp, 3);
    }

    #[test]
    fn update_merges_to_smaller_tag() {
        let mut cols = [col(1, 4, 1, 1), col(2, 2, 1, 3), col(3, 4, 1, 2), col(7, 2, 1, 5)];
        update_info(&mut cols, &Edge::new(1, 2, 2, 0.9), true);
        assert!(cols.iter().all(|c| c.comp == 2));
        assert_eq!((cols[0].deg, cols[0].time), (2, NO_TIME));
        let before = cols;
        update_info(&mut cols, &Edge::new(3, 7, 9, 0.9), false);
        assert_eq!(cols, before);
    }

    #[test]
    fn generate_node_drops_leaving_columns() {
        let cols = [
            col(1, SOURCE_COMP, 1, 1),
            col(2, 3, 2, NO_TIME),
            col(4, ISOLATED, 0, NO_TIME),
        ];
        let e = Edge::new(2, 4, 1, 0.9);
        let mut renumbered = cols;
        renumbered[1].comp = 2;
        assert_eq!(
            generate_node(&cols, &e, false, &[]),
            Configuration::Partial(renumbered.to_vec())
        );
        let next = generate_node(&cols, &e, false, &[2]);
        assert_eq!(next, Configuration::Partial(vec![cols[0], cols[2]]));
    }

    #[test]
    fn equal_configurations_from_different_histories_merge() {
        // tags 5 and 3 vs 2 and 3 describe the same partition
        let a = generate_node(
            &[col(1, 5, 1, 1), col(2, 5, 1, 2), col(3, 3, 1, 1), col(4, 3, 1, 1)],
            &Edge::new(1, 2, 1, 0.9),
            false,
            &[],
        );
        let b = generate_node(
            &[col(1, 2, 1, 1), col(2, 2, 1, 2), col(3, 3, 1, 1), col(4, 3, 1, 1)],
            &Edge::new(1, 2, 1, 0.9),
            false,
            &[],
        );
        assert_eq!(a, b);
    }

    #[test]
    fn completion_closes_the_journey() {
        let cols = [col(1, SOURCE_COMP, 1, 1), col(2, TERMINAL_COMP, 1, 3)];
        let e = Edge::new(1, 2, 2, 0.9);
        assert_eq!(prune(&cols, &e, true, Mode::SingleHop, ENDS, &[]), None);
        assert_eq!(generate_node(&cols, &e, true, &[]), Configuration::Complete);
        let open = [
            col(1, SOURCE_COMP, 1, 1),
            col(2, TERMINAL_COMP, 1, 3),
            col(3, 2, 1, 1),
            col(4, 2, 1, 1),
        ];
        assert_eq!(
            prune(&open, &e, true, Mode::SingleHop, ENDS, &[]),
            Some(PruneReason::Dangling)
        );
    }

    #[test]
    fn state_bound_values() {
        assert_eq!(state_bound(0, 5), 1);
        assert_eq!(state_bound(2, 3), 18 * 18);
        assert_eq!(state_bound(40, 1000), u128::MAX);
    }
}
