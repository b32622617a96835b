//! Random temporal-graph instances.
//!
//! Every static edge receives each label `1..=T` independently with a fixed
//! probability. Draws are made in (static edge, label) order from a
//! `ChaCha8Rng` seeded with `seed_from_u64`, so an instance is a pure
//! function of (family, size, seed, options).

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::graph::{Edge, TemporalGraph, Vertex};

pub const LABEL_PROBABILITY: f64 = 0.5;
pub const SURVIVAL: f64 = 0.9;

/// When an instance must be redrawn.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Default)]
pub enum RetryRule {
    /// Redraw unless the source or the terminal has an incident edge.
    #[default]
    Or,
    /// Redraw unless both the source and the terminal have an incident edge.
    And,
}

impl std::str::FromStr for RetryRule {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "or" => Ok(RetryRule::Or),
            "and" => Ok(RetryRule::And),
            _ => Err(format!("unknown retry rule `{s}` (expected and or or)")),
        }
    }
}

#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub enum Family {
    Complete,
    Grid3,
}

impl Family {
    pub fn as_str(self) -> &'static str {
        match self {
            Family::Complete => "complete",
            Family::Grid3 => "grid3",
        }
    }

    /// Smallest accepted size parameter.
    pub fn min_size(self) -> usize {
        3
    }
}

impl std::str::FromStr for Family {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "complete" => Ok(Family::Complete),
            "grid3" => Ok(Family::Grid3),
            _ => Err(format!("unknown family `{s}` (expected complete or grid3)")),
        }
    }
}

#[derive(Copy, Clone, Debug, PartialEq)]
pub struct GenOptions {
    pub label_prob: f64,
    pub survival: f64,
    pub retry: RetryRule,
}

impl Default for GenOptions {
    fn default() -> Self {
        GenOptions {
            label_prob: LABEL_PROBABILITY,
            survival: SURVIVAL,
            retry: RetryRule::default(),
        }
    }
}

/// Static skeleton of one instance: vertex count, edges, endpoints, max label.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Skeleton {
    pub n: usize,
    pub edges: Vec<(Vertex, Vertex)>,
    pub source: Vertex,
    pub terminal: Vertex,
    pub max_label: u32,
}

impl Skeleton {
    /// `K_n` with `s = 0`, `z = n - 1` and `T = n - 1`.
    pub fn complete(n: usize) -> Self {
        let edges = (0..n as Vertex)
            .flat_map(|a| (a + 1..n as Vertex).map(move |b| (a, b)))
            .collect();
        Skeleton {
            n,
            edges,
            source: 0,
            terminal: n as Vertex - 1,
            max_label: n as u32 - 1,
        }
    }

    /// `h × w` grid, vertices row-major, `s` and `z` on opposite corners,
    /// `T = 2w`.
    pub fn grid(h: usize, w: usize) -> Self {
        let id = |r: usize, c: usize| (r * w + c) as Vertex;
        let mut edges = Vec::new();
        for r in 0..h {
            for c in 0..w {
                if c + 1 < w {
                    edges.push((id(r, c), id(r, c + 1)));
                }
                if r + 1 < h {
                    edges.push((id(r, c), id(r + 1, c)));
                }
            }
        }
        Skeleton {
            n: h * w,
            edges,
            source: 0,
            terminal: (h * w) as Vertex - 1,
            max_label: 2 * w as u32,
        }
    }

    pub fn for_family(family: Family, size: usize) -> Self {
        match family {
            Family::Complete => Skeleton::complete(size),
            Family::Grid3 => Skeleton::grid(3, size),
        }
    }

    pub fn with_max_label(mut self, max_label: u32) -> Self {
        self.max_label = max_label;
        self
    }

    /// Expected edge count `|E_static| · T · prob` before retries.
    pub fn expected_edges(&self, prob: f64) -> f64 {
        self.edges.len() as f64 * self.max_label as f64 * prob
    }
}

/// One temporal edge per (static edge, label) pair that survives a coin flip.
pub fn assign_labels<R: Rng + ?Sized>(
    static_edges: &[(Vertex, Vertex)],
    max_label: u32,
    prob: f64,
    survival: f64,
    rng: &mut R,
) -> Vec<Edge> {
    let mut out = Vec::new();
    for &(u, v) in static_edges {
        for t in 1..=max_label {
            if rng.gen_bool(prob) {
                out.push(Edge::new(u, v, t, survival));
            }
        }
    }
    out
}

fn accepted(edges: &[Edge], s: Vertex, z: Vertex, rule: RetryRule) -> bool {
    let has = |w| edges.iter().any(|e| e.touches(w));
    match rule {
        RetryRule::Or => has(s) || has(z),
        RetryRule::And => has(s) && has(z),
    }
}

/// Draw labels on `sk` until the retry rule is met.
pub fn sample(sk: &Skeleton, seed: u64, opts: &GenOptions) -> TemporalGraph {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    loop {
        let edges = assign_labels(&sk.edges, sk.max_label, opts.label_prob, opts.survival, &mut rng);
        if opts.label_prob == 0.0 || accepted(&edges, sk.source, sk.terminal, opts.retry) {
            return TemporalGraph::new(sk.n, sk.source, sk.terminal, edges).expect("skeleton produces valid graphs");
        }
    }
}

pub fn generate(family: Family, size: usize, seed: u64, opts: &GenOptions) -> TemporalGraph {
    sample(&Skeleton::for_family(family, size), seed, opts)
}

pub fn gen_complete(n: usize, seed: u64) -> TemporalGraph {
    generate(Family::Complete, n, seed, &GenOptions::default())
}

pub fn gen_grid3(w: usize, seed: u64) -> TemporalGraph {
    generate(Family::Grid3, w, seed, &GenOptions::default())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn certain_labels() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let edges = assign_labels(&[(0, 1)], 2, 1.0, 0.9, &mut rng);
        assert_eq!(edges, vec![Edge::new(0, 1, 1, 0.9), Edge::new(0, 1, 2, 0.9)]);
        assert!(assign_labels(&[(0, 1), (1, 2)], 5, 0.0, 0.9, &mut rng).is_empty());
    }

    #[test]
    fn complete_skeletons() {
        for (n, mean) in [(3, 3.0), (4, 9.0), (5, 20.0), (6, 37.5)] {
            let sk = Skeleton::complete(n);
            assert_eq!(sk.max_label as usize, n - 1);
            assert_eq!(sk.expected_edges(LABEL_PROBABILITY), mean);
        }
        let g = gen_complete(3, 7);
        assert_eq!((g.source(), g.terminal()), (0, 2));
        assert!(g.max_label() <= 2);
    }

    #[test]
    fn grid3_shape() {
        let sk = Skeleton::grid(3, 3);
        assert_eq!(sk.n, 9);
        assert_eq!(sk.edges.len(), 12);
        assert_eq!(sk.max_label, 6);
        assert_eq!(sk.expected_edges(LABEL_PROBABILITY), 36.0);
        for w in 3..=10 {
            assert_eq!(Skeleton::grid(3, w).edges.len(), 5 * w - 3);
        }
        let opts = GenOptions {
            label_prob: 1.0,
            ..Default::default()
        };
        let g = generate(Family::Grid3, 3, 0, &opts);
        assert_eq!(g.edge_count(), 72);
        assert_eq!(g.vertex_count(), 9);
        assert_eq!((g.source(), g.terminal()), (0, 8));
    }

    #[test]
    fn deterministic_per_seed() {
        assert_eq!(gen_grid3(4, 42), gen_grid3(4, 42));
        assert_eq!(gen_complete(5, 3), gen_complete(5, 3));
        assert_ne!(gen_complete(6, 3), gen_complete(6, 4));
    }

    #[test]
    fn retry_rules_hold() {
        for seed in 0..300 {
            let and = generate(
                Family::Complete,
                3,
                seed,
                &GenOptions {
                    retry: RetryRule::And,
                    ..Default::default()
                },
            );
            assert!(and.edges().iter().any(|e| e.touches(0)));
            assert!(and.edges().iter().any(|e| e.touches(2)));
            let or = gen_complete(3, seed);
            assert!(or.edges().iter().any(|e| e.touches(0) || e.touches(2)));
        }
    }
}
