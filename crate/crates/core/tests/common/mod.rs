#![allow(dead_code)]

use std::collections::BTreeSet;

use tvnrel::generator::{sample, GenOptions, Skeleton};
use tvnrel::oracle::Family;
use tvnrel::pipeline::{journey_stage, OrderKind};
use tvnrel::reliability::{reliability_bdd, reliability_zdd};
use tvnrel::{DiagramKind, Mode, TemporalGraph};

/// Small skeletons with at most six vertices.
pub fn small_skeletons() -> Vec<Skeleton> {
    vec![
        Skeleton::complete(3),
        Skeleton::complete(4),
        Skeleton::complete(5).with_max_label(2),
        Skeleton::complete(6).with_max_label(1),
        Skeleton::grid(2, 3).with_max_label(2),
        Skeleton::grid(2, 2).with_max_label(3),
        Skeleton::grid(3, 2).with_max_label(2),
    ]
}

/// Seeded instances with at most `max_m` edges, cycling through the small
/// skeletons.
pub fn small_instances(count: usize, max_m: usize) -> Vec<(String, TemporalGraph)> {
    let skeletons = small_skeletons();
    let opts = GenOptions::default();
    let mut out = Vec::new();
    let mut seed = 0u64;
    while out.len() < count {
        let sk = &skeletons[seed as usize % skeletons.len()];
        let g = sample(sk, seed, &opts);
        if g.edge_count() <= max_m {
            out.push((format!("n={} T={} seed={seed}", sk.n, sk.max_label), g));
        }
        seed += 1;
    }
    out
}

pub struct DdResult {
    pub journeys: Family,
    pub stres_b: Family,
    pub stres_z: Family,
    pub sigma_b: f64,
    pub sigma_z: f64,
    pub bound_violations: usize,
}

/// Everything the diagram pipeline produces, in input edge indices.
pub fn run_dd(g: &TemporalGraph, mode: Mode, order: OrderKind) -> DdResult {
    let mut stage = journey_stage(g, mode, order, None).unwrap();
    let m = stage.m();
    let probs = stage.graph.survival();
    let journeys = stage.journeys_in_input_order(1 << 20).unwrap();
    let b = stage.lift(DiagramKind::Bdd, None).unwrap();
    let z = stage.lift(DiagramKind::Zdd, None).unwrap();
    let sets = |root, kind| {
        let raw = stage.store.enumerate_sets(root, kind, m, 1 << 20).unwrap();
        tvnrel::pipeline::to_input_indices(&stage.order, raw)
            .into_iter()
            .collect::<BTreeSet<_>>()
    };
    DdResult {
        journeys: journeys.into_iter().collect(),
        stres_b: sets(b, DiagramKind::Bdd),
        stres_z: sets(z, DiagramKind::Zdd),
        sigma_b: reliability_bdd(&stage.store, b, &probs, m).unwrap(),
        sigma_z: reliability_zdd(&stage.store, z, &probs, m).unwrap(),
        bound_violations: stage.stats.bound_violations,
    }
}
