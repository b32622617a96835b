//! Brute-force ground truth for small instances.
//!
//! Nothing here touches decision diagrams: reachability is a label-ordered
//! earliest-arrival sweep, journeys come from a depth-first search over
//! simple paths, and reliability is a sum over all `2^m` edge subsets.

use std::collections::BTreeSet;

use crate::error::OracleError;
use crate::graph::{Mode, TemporalGraph, Vertex};
use crate::scalar::{complement, Scalar};

/// Largest edge count accepted by the `2^m` sweeps.
pub const ORACLE_LIMIT: usize = 16;

/// Edge sets with 1-based indices, each sorted ascending.
pub type Family = BTreeSet<Vec<u32>>;

fn guard(g: &TemporalGraph, limit: usize) -> Result<(), OracleError> {
    let m = g.edge_count();
    if m > limit {
        return Err(OracleError::TooLarge { m, limit });
    }
    Ok(())
}

/// Edge indices sorted by label, split into runs of equal label.
struct LabelRuns {
    order: Vec<usize>,
    runs: Vec<(usize, usize)>,
}

impl LabelRuns {
    fn new(g: &TemporalGraph) -> Self {
        let mut order: Vec<usize> = (0..g.edge_count()).collect();
        order.sort_by_key(|&i| g.edges()[i].t);
        let mut runs = Vec::new();
        let mut start = 0;
        for k in 1..=order.len() {
            if k == order.len() || g.edges()[order[k]].t != g.edges()[order[start]].t {
                runs.push((start, k));
                start = k;
            }
        }
        LabelRuns { order, runs }
    }
}

/// Earliest-arrival sweep restricted to the edges selected by `alive`.
fn reachable_masked(g: &TemporalGraph, mode: Mode, runs: &LabelRuns, alive: impl Fn(usize) -> bool) -> bool {
    // arrival label per vertex; 0 means "at the source before any edge"
    let mut arrival: Vec<Option<u32>> = vec![None; g.vertex_count()];
    arrival[g.source() as usize] = Some(0);
    let edges = g.edges();
    for &(a, b) in &runs.runs {
        loop {
            let mut changed = false;
            for &i in &runs.order[a..b] {
                if !alive(i) {
                    continue;
                }
                let e = &edges[i];
                for (x, y) in [(e.u, e.v), (e.v, e.u)] {
                    let ok = match arrival[x as usize] {
                        Some(0) => true,
                        Some(at) => mode.admits(at, e.t),
                        None => false,
                    };
                    if ok && arrival[y as usize].is_none() {
                        arrival[y as usize] = Some(e.t);
                        changed = true;
                    }
                }
            }
            // strict labels cannot chain inside a run
            if !changed || mode == Mode::SingleHop {
                break;
            }
        }
        if arrival[g.terminal() as usize].is_some() {
            return true;
        }
    }
    false
}

/// Whether some s–z journey exists.
pub fn is_reachable(g: &TemporalGraph, mode: Mode) -> bool {
    reachable_masked(g, mode, &LabelRuns::new(g), |_| true)
}

/// All s–z journeys as edge sets, by depth-first search over simple paths.
pub fn brute_journeys(g: &TemporalGraph, mode: Mode) -> Family {
    let mut adj: Vec<Vec<(usize, Vertex)>> = vec![Vec::new(); g.vertex_count()];
    for (i, e) in g.edges().iter().enumerate() {
        adj[e.u as usize].push((i, e.v));
        adj[e.v as usize].push((i, e.u));
    }
    let mut out = Family::new();
    let mut on_path = vec![false; g.vertex_count()];
    let mut path = Vec::new();
    on_path[g.source() as usize] = true;
    dfs(g, mode, &adj, g.source(), None, &mut on_path, &mut path, &mut out);
    out
}

#[allow(clippy::too_many_arguments)]
fn dfs(
    g: &TemporalGraph,
    mode: Mode,
    adj: &[Vec<(usize, Vertex)>],
    at: Vertex,
    last: Option<u32>,
    on_path: &mut [bool],
    path: &mut Vec<u32>,
    out: &mut Family,
) {
    if at == g.terminal() {
        let mut set = path.clone();
        set.sort_unstable();
        out.insert(set);
        return;
    }
    for &(i, next) in &adj[at as usize] {
        let t = g.edges()[i].t;
        if on_path[next as usize] || last.is_some_and(|l| !mode.admits(l, t)) {
            continue;
        }
        on_path[next as usize] = true;
        path.push(i as u32 + 1);
        dfs(g, mode, adj, next, Some(t), on_path, path, out);
        path.pop();
        on_path[next as usize] = false;
    }
}

/// All source-terminal reachable edge subsets.
pub fn brute_stres(g: &TemporalGraph, mode: Mode) -> Result<Family, OracleError> {
    guard(g, ORACLE_LIMIT)?;
    let runs = LabelRuns::new(g);
    let m = g.edge_count();
    Ok((0u32..1 << m)
        .filter(|&mask| reachable_masked(g, mode, &runs, |i| mask >> i & 1 == 1))
        .map(|mask| (0..m as u32).filter(|i| mask >> i & 1 == 1).map(|i| i + 1).collect())
        .collect())
}

/// Probability that edge subset `mask` is exactly the surviving set.
fn subset_weight<T: Scalar>(p: &[T], q: &[T], mask: u32) -> T {
    p.iter().zip(q).enumerate().fold(T::one(), |acc, (i, (pi, qi))| {
        acc * if mask >> i & 1 == 1 { pi.clone() } else { qi.clone() }
    })
}

fn sweep<T: Scalar>(g: &TemporalGraph, mut accept: impl FnMut(u32) -> bool) -> T {
    let p: Vec<T> = g.edges().iter().map(|e| T::from_prob(e.p)).collect();
    let q: Vec<T> = p.iter().map(complement).collect();
    (0u32..1 << g.edge_count())
        .filter(|&mask| accept(mask))
        .fold(T::zero(), |acc, mask| acc + subset_weight(&p, &q, mask))
}

/// Reliability by summing the weights of all reachable edge subsets.
pub fn brute_reliability<T: Scalar>(g: &TemporalGraph, mode: Mode) -> Result<T, OracleError> {
    guard(g, ORACLE_LIMIT)?;
    let runs = LabelRuns::new(g);
    Ok(sweep(g, |mask| {
        reachable_masked(g, mode, &runs, |i| mask >> i & 1 == 1)
    }))
}

/// Classical two-terminal reliability, ignoring time labels.
pub fn static_reliability<T: Scalar>(g: &TemporalGraph) -> Result<T, OracleError> {
    guard(g, ORACLE_LIMIT)?;
    Ok(sweep(g, |mask| statically_connected(g, mask)))
}

fn statically_connected(g: &TemporalGraph, mask: u32) -> bool {
    let mut parent: Vec<usize> = (0..g.vertex_count()).collect();
    fn find(parent: &mut [usize], mut x: usize) -> usize {
        while parent[x] != x {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        x
    }
    for (i, e) in g.edges().iter().enumerate() {
        if mask >> i & 1 == 1 {
            let (a, b) = (find(&mut parent, e.u as usize), find(&mut parent, e.v as usize));
            parent[a] = b;
        }
    }
    find(&mut parent, g.source() as usize) == find(&mut parent, g.terminal() as usize)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::Edge;
    use num_rational::BigRational;

    fn graph(n: usize, s: u32, z: u32, edges: &[(u32, u32, u32)]) -> TemporalGraph {
        let edges = edges.iter().map(|&(u, v, t)| Edge::new(u, v, t, 0.9)).collect();
        TemporalGraph::new(n, s, z, edges).unwrap()
    }

    fn series(t1: u32, t2: u32) -> TemporalGraph {
        graph(3, 0, 2, &[(0, 1, t1), (1, 2, t2)])
    }

    fn fam(sets: &[&[u32]]) -> Family {
        sets.iter().map(|s| s.to_vec()).collect()
    }

    #[test]
    fn reachability_examples() {
        let single = graph(2, 0, 1, &[(0, 1, 1)]);
        assert!(is_reachable(&single, Mode::MultiHop));
        assert!(is_reachable(&single, Mode::SingleHop));
        for mode in [Mode::MultiHop, Mode::SingleHop] {
            assert!(!is_reachable(&series(2, 1), mode));
        }
        assert!(is_reachable(&series(1, 1), Mode::MultiHop));
        assert!(!is_reachable(&series(1, 1), Mode::SingleHop));
    }

    #[test]
    fn equal_labels_chain_in_any_listing_order() {
        // (a,z) listed before (s,a), both label 1
        let g = graph(3, 0, 2, &[(1, 2, 1), (0, 1, 1)]);
        assert!(is_reachable(&g, Mode::MultiHop));
        assert!(!is_reachable(&g, Mode::SingleHop));
    }

    #[test]
    fn journey_examples() {
        assert_eq!(brute_journeys(&series(1, 2), Mode::MultiHop), fam(&[&[1, 2]]));
        let triangle = graph(3, 0, 2, &[(0, 1, 1), (1, 2, 2), (0, 2, 3)]);
        assert_eq!(brute_journeys(&triangle, Mode::MultiHop), fam(&[&[1, 2], &[3]]));
        let parallel = graph(2, 0, 1, &[(0, 1, 1), (0, 1, 2)]);
        assert_eq!(brute_journeys(&parallel, Mode::SingleHop), fam(&[&[1], &[2]]));
    }

    #[test]
    fn journeys_do_not_pass_through_terminal() {
        // e1 reaches z directly and must not be extended by e2 or e4
        let g = graph(3, 0, 1, &[(0, 1, 1), (1, 2, 2), (0, 2, 1), (2, 1, 3)]);
        assert_eq!(brute_journeys(&g, Mode::MultiHop), fam(&[&[1], &[2, 3], &[3, 4]]));
    }

    #[test]
    fn stres_examples() {
        let single = graph(2, 0, 1, &[(0, 1, 1)]);
        assert_eq!(brute_stres(&single, Mode::MultiHop).unwrap(), fam(&[&[1]]));
        assert_eq!(brute_stres(&series(1, 2), Mode::MultiHop).unwrap(), fam(&[&[1, 2]]));
        // journeys {{e2},{e1,e3}}: e2 = s-z, e1 = s-a, e3 = a-z
        let triangle = graph(3, 0, 2, &[(0, 1, 1), (0, 2, 5), (1, 2, 2)]);
        assert_eq!(brute_journeys(&triangle, Mode::MultiHop), fam(&[&[1, 3], &[2]]));
        assert_eq!(brute_stres(&triangle, Mode::MultiHop).unwrap().len(), 5);
    }

    #[test]
    fn reliability_examples() {
        let single = graph(2, 0, 1, &[(0, 1, 1)]);
        let r: f64 = brute_reliability(&single, Mode::MultiHop).unwrap();
        assert!((r - 0.9).abs() < 1e-12);
        let r: f64 = brute_reliability(&series(1, 2), Mode::MultiHop).unwrap();
        assert!((r - 0.81).abs() < 1e-12);
        let r: f64 = brute_reliability(&series(1, 1), Mode::MultiHop).unwrap();
        assert!((r - 0.81).abs() < 1e-12);
        let r: f64 = brute_reliability(&series(1, 1), Mode::SingleHop).unwrap();
        assert_eq!(r, 0.0);
    }

    #[test]
    fn exact_reliability_of_parallel_pair() {
        let g = graph(2, 0, 1, &[(0, 1, 1), (0, 1, 2)]);
        let r: BigRational = brute_reliability(&g, Mode::SingleHop).unwrap();
        let p = BigRational::from_prob(0.9);
        let q = complement(&p);
        assert_eq!(r, BigRational::from_prob(1.0) - q.clone() * q);
    }

    #[test]
    fn size_guard() {
        let edges: Vec<_> = (1..=17).map(|t| (0, 1, t)).collect();
        let g = graph(2, 0, 1, &edges);
        assert_eq!(
            brute_stres(&g, Mode::MultiHop).unwrap_err(),
            OracleError::TooLarge {
                m: 17,
                limit: ORACLE_LIMIT
            }
        );
        assert!(brute_reliability::<f64>(&g, Mode::MultiHop).is_err());
        assert_eq!(brute_journeys(&g, Mode::MultiHop).len(), 17);
    }

    #[test]
    fn static_reliability_ignores_labels() {
        let r: f64 = static_reliability(&series(2, 1)).unwrap();
        assert!((r - 0.81).abs() < 1e-12);
    }
}
