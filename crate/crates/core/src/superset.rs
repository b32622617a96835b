//! Upward closure of a journey family.
//!
//! Given a ZDD of journeys `J`, both functions return the family
//! `{U : some J ⊆ U}`: as a BDD (Method B) or as a ZDD (Method Z).

use std::time::Instant;

use rustc_hash::FxHashMap as HashMap;

use crate::dd::{DeadlineExceeded, DiagramKind, DiagramStore, NodeRef, Ticker};

/// Upward closure as a BDD.
pub fn superset_to_bdd(store: &mut DiagramStore, journeys: NodeRef, m: usize) -> NodeRef {
    superset_to_bdd_until(store, journeys, m, None).expect("no deadline")
}

pub fn superset_to_bdd_until(
    store: &mut DiagramStore,
    journeys: NodeRef,
    _m: usize,
    deadline: Option<Instant>,
) -> Result<NodeRef, DeadlineExceeded> {
    let mut memo = HashMap::default();
    let mut ticker = Ticker::new(deadline);
    sup_bdd(store, journeys, &mut memo, &mut ticker)
}

// A level skipped by the ZDD is excluded from every journey, hence free in
// the closure; the BDD reading of a skipped level is exactly that.
fn sup_bdd(
    store: &mut DiagramStore,
    f: NodeRef,
    memo: &mut HashMap<NodeRef, NodeRef>,
    ticker: &mut Ticker,
) -> Result<NodeRef, DeadlineExceeded> {
    if f.is_terminal() {
        return Ok(f);
    }
    if let Some(&r) = memo.get(&f) {
        return Ok(r);
    }
    ticker.tick()?;
    let label = store.label(f).expect("non-terminal");
    let (lo, hi) = (store.lo(f), store.hi(f));
    let without = sup_bdd(store, lo, memo, ticker)?;
    let with = sup_bdd(store, hi, memo, ticker)?;
    let with = store.or_with(without, with, ticker)?;
    let r = store
        .make_node(label, without, with, DiagramKind::Bdd)
        .expect("labels increase");
    memo.insert(f, r);
    Ok(r)
}

/// Upward closure as a ZDD over variables `1..=m`.
pub fn superset_to_zdd(store: &mut DiagramStore, journeys: NodeRef, m: usize) -> NodeRef {
    superset_to_zdd_until(store, journeys, m, None).expect("no deadline")
}

pub fn superset_to_zdd_until(
    store: &mut DiagramStore,
    journeys: NodeRef,
    m: usize,
    deadline: Option<Instant>,
) -> Result<NodeRef, DeadlineExceeded> {
    let mut memo = HashMap::default();
    let mut ticker = Ticker::new(deadline);
    sup_zdd(store, journeys, 1, m, &mut memo, &mut ticker)
}

/// Closure of `f` restricted to variables `level..=m`. Keyed by level
/// because a ZDD-skipped level has to be materialized as a free variable.
fn sup_zdd(
    store: &mut DiagramStore,
    f: NodeRef,
    level: usize,
    m: usize,
    memo: &mut HashMap<(NodeRef, usize), NodeRef>,
    ticker: &mut Ticker,
) -> Result<NodeRef, DeadlineExceeded> {
    if f == NodeRef::BOT {
        return Ok(NodeRef::BOT);
    }
    if level > m {
        return Ok(NodeRef::TOP);
    }
    if let Some(&r) = memo.get(&(f, level)) {
        return Ok(r);
    }
    ticker.tick()?;
    let var = level as u32;
    let r = if store.label(f) == Some(var) {
        let (lo, hi) = (store.lo(f), store.hi(f));
        let without = sup_zdd(store, lo, level + 1, m, memo, ticker)?;
        let with = sup_zdd(store, hi, level + 1, m, memo, ticker)?;
        let with = store.union_with(without, with, ticker)?;
        store.make_node(var, without, with, DiagramKind::Zdd)
    } else {
        let free = sup_zdd(store, f, level + 1, m, memo, ticker)?;
        store.make_node(var, free, free, DiagramKind::Zdd)
    }
    .expect("labels increase");
    memo.insert((f, level), r);
    Ok(r)
}
