//! Hash-consed decision-diagram store shared by BDDs and ZDDs.
//!
//! A node is a triple `(label, lo, hi)`; the reading of a root depends on
//! the [`DiagramKind`] the caller attaches to it. Variables are numbered
//! `1..=m` from the root downwards. A level skipped between a node and its
//! child is a don't-care for BDDs and an excluded element for ZDDs.

use std::fmt::Write as _;
use std::time::Instant;

use num_bigint::BigUint;
use num_traits::{One, Zero};
use rustc_hash::FxHashMap as HashMap;

use crate::error::DdError;

/// Handle to a node of a [`DiagramStore`].
#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct NodeRef(u32);

impl NodeRef {
    /// The empty family / constant false.
    pub const BOT: NodeRef = NodeRef(0);
    /// The family `{∅}` (ZDD) / constant true (BDD).
    pub const TOP: NodeRef = NodeRef(1);

    pub fn is_terminal(self) -> bool {
        self.0 < 2
    }

    pub fn index(self) -> usize {
        self.0 as usize
    }
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash)]
pub enum DiagramKind {
    Bdd,
    Zdd,
}

/// Label carried by the two terminals; sorts below every variable.
const TERMINAL_LABEL: u32 = u32::MAX;

#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash)]
struct Node {
    label: u32,
    lo: NodeRef,
    hi: NodeRef,
}

/// A long-running operation passed its deadline.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DeadlineExceeded;

/// Polls an optional deadline on the first step and every 4096 after it.
pub(crate) struct Ticker {
    deadline: Option<Instant>,
    steps: u32,
}

impl Ticker {
    pub(crate) fn new(deadline: Option<Instant>) -> Self {
        Ticker { deadline, steps: 0 }
    }

    pub(crate) fn tick(&mut self) -> Result<(), DeadlineExceeded> {
        self.steps = self.steps.wrapping_add(1);
        match self.deadline {
            Some(d) if self.steps % 4096 == 1 && Instant::now() >= d => Err(DeadlineExceeded),
            _ => Ok(()),
        }
    }
}

#[derive(Clone, Debug)]
pub struct DiagramStore {
    nodes: Vec<Node>,
    unique: HashMap<Node, NodeRef>,
    or_cache: HashMap<(NodeRef, NodeRef), NodeRef>,
    union_cache: HashMap<(NodeRef, NodeRef), NodeRef>,
    reduce_cache: HashMap<(NodeRef, DiagramKind), NodeRef>,
}

impl Default for DiagramStore {
    fn default() -> Self {
        Self::new()
    }
}

impl DiagramStore {
    pub fn new() -> Self {
        let terminal = |id| Node {
            label: TERMINAL_LABEL,
            lo: NodeRef(id),
            hi: NodeRef(id),
        };
        DiagramStore {
            nodes: vec![terminal(0), terminal(1)],
            unique: HashMap::default(),
            or_cache: HashMap::default(),
            union_cache: HashMap::default(),
            reduce_cache: HashMap::default(),
        }
    }

    /// Variable label of `f`, `None` for terminals.
    pub fn label(&self, f: NodeRef) -> Option<u32> {
        (!f.is_terminal()).then(|| self.nodes[f.index()].label)
    }

    pub fn lo(&self, f: NodeRef) -> NodeRef {
        self.nodes[f.index()].lo
    }

    pub fn hi(&self, f: NodeRef) -> NodeRef {
        self.nodes[f.index()].hi
    }

    /// Total number of nodes ever allocated, terminals included.
    pub fn allocated(&self) -> usize {
        self.nodes.len()
    }

    fn raw_label(&self, f: NodeRef) -> u32 {
        self.nodes[f.index()].label
    }

    fn check_order(&self, label: u32, lo: NodeRef, hi: NodeRef) -> Result<(), DdError> {
        for child in [lo, hi] {
            let cl = self.raw_label(child);
            if label == 0 || label >= cl {
                return Err(DdError::LabelOrder { label, child: cl });
            }
        }
        Ok(())
    }

    /// Canonical node under the reduction rule of `kind`.
    pub fn make_node(&mut self, label: u32, lo: NodeRef, hi: NodeRef, kind: DiagramKind) -> Result<NodeRef, DdError> {
        self.check_order(label, lo, hi)?;
        Ok(self.mk(label, lo, hi, kind))
    }

    fn mk(&mut self, label: u32, lo: NodeRef, hi: NodeRef, kind: DiagramKind) -> NodeRef {
        match kind {
            DiagramKind::Bdd if lo == hi => return lo,
            DiagramKind::Zdd if hi == NodeRef::BOT => return lo,
            _ => {}
        }
        let node = Node { label, lo, hi };
        if let Some(&f) = self.unique.get(&node) {
            return f;
        }
        let f = NodeRef(self.nodes.len() as u32);
        self.nodes.push(node);
        self.unique.insert(node, f);
        f
    }

    /// Allocate a node without applying any reduction or sharing.
    ///
    /// Used by top-down construction, whose output is normalized afterwards
    /// with [`DiagramStore::reduce`].
    pub fn add_unreduced(&mut self, label: u32, lo: NodeRef, hi: NodeRef) -> Result<NodeRef, DdError> {
        self.check_order(label, lo, hi)?;
        let f = NodeRef(self.nodes.len() as u32);
        self.nodes.push(Node { label, lo, hi });
        Ok(f)
    }

    /// Canonical reduced form of `root` under `kind`.
    pub fn reduce(&mut self, root: NodeRef, kind: DiagramKind) -> NodeRef {
        if root.is_terminal() {
            return root;
        }
        if let Some(&r) = self.reduce_cache.get(&(root, kind)) {
            return r;
        }
        let Node { label, lo, hi } = self.nodes[root.index()];
        let lo = self.reduce(lo, kind);
        let hi = self.reduce(hi, kind);
        let r = self.mk(label, lo, hi, kind);
        self.reduce_cache.insert((root, kind), r);
        self.reduce_cache.insert((r, kind), r);
        r
    }

    /// Disjunction of two BDDs.
    pub fn or_apply(&mut self, a: NodeRef, b: NodeRef) -> NodeRef {
        self.or_with(a, b, &mut Ticker::new(None)).expect("no deadline")
    }

    pub(crate) fn or_with(&mut self, a: NodeRef, b: NodeRef, ticker: &mut Ticker) -> Result<NodeRef, DeadlineExceeded> {
        if a == NodeRef::TOP || b == NodeRef::TOP {
            return Ok(NodeRef::TOP);
        }
        if a == NodeRef::BOT || a == b {
            return Ok(b);
        }
        if b == NodeRef::BOT {
            return Ok(a);
        }
        let key = if a <= b { (a, b) } else { (b, a) };
        if let Some(&r) = self.or_cache.get(&key) {
            return Ok(r);
        }
        ticker.tick()?;
        let (la, lb) = (self.raw_label(a), self.raw_label(b));
        let top = la.min(lb);
        let (a0, a1) = if la == top { (self.lo(a), self.hi(a)) } else { (a, a) };
        let (b0, b1) = if lb == top { (self.lo(b), self.hi(b)) } else { (b, b) };
        let lo = self.or_with(a0, b0, ticker)?;
        let hi = self.or_with(a1, b1, ticker)?;
        let r = self.mk(top, lo, hi, DiagramKind::Bdd);
        self.or_cache.insert(key, r);
        Ok(r)
    }

    /// Union of two ZDD families.
    pub fn zdd_union(&mut self, a: NodeRef, b: NodeRef) -> NodeRef {
        self.union_with(a, b, &mut Ticker::new(None)).expect("no deadline")
    }

    pub(crate) fn union_with(
        &mut self,
        a: NodeRef,
        b: NodeRef,
        ticker: &mut Ticker,
    ) -> Result<NodeRef, DeadlineExceeded> {
        if a == NodeRef::BOT || a == b {
            return Ok(b);
        }
        if b == NodeRef::BOT {
            return Ok(a);
        }
        let key = if a <= b { (a, b) } else { (b, a) };
        if let Some(&r) = self.union_cache.get(&key) {
            return Ok(r);
        }
        ticker.tick()?;
        let (la, lb) = (self.raw_label(a), self.raw_label(b));
        let r = if la == lb {
            let lo = self.union_with(self.lo(a), self.lo(b), ticker)?;
            let hi = self.union_with(self.hi(a), self.hi(b), ticker)?;
            self.mk(la, lo, hi, DiagramKind::Zdd)
        } else {
            // the lower-labelled root is absent from every set of the other
            let (x, y) = if la < lb { (a, b) } else { (b, a) };
            let lo = self.union_with(self.lo(x), y, ticker)?;
            let hi = self.hi(x);
            self.mk(self.raw_label(x), lo, hi, DiagramKind::Zdd)
        };
        self.union_cache.insert(key, r);
        Ok(r)
    }

    /// ZDD containing the single set `vars` (any order, duplicates ignored).
    pub fn zdd_set(&mut self, vars: &[u32]) -> NodeRef {
        let mut sorted = vars.to_vec();
        sorted.sort_unstable();
        sorted.dedup();
        sorted
            .into_iter()
            .rev()
            .fold(NodeRef::TOP, |acc, v| self.mk(v, NodeRef::BOT, acc, DiagramKind::Zdd))
    }

    /// ZDD of an explicit family of sets.
    pub fn zdd_family<S: AsRef<[u32]>>(&mut self, sets: &[S]) -> NodeRef {
        sets.iter().fold(NodeRef::BOT, |acc, s| {
            let f = self.zdd_set(s.as_ref());
            self.zdd_union(acc, f)
        })
    }

    /// BDD of the single variable `var`.
    pub fn bdd_var(&mut self, var: u32) -> NodeRef {
        self.mk(var, NodeRef::BOT, NodeRef::TOP, DiagramKind::Bdd)
    }

    /// Non-terminal nodes reachable from `root`.
    pub fn size(&self, root: NodeRef) -> usize {
        self.reachable(root).len()
    }

    /// Reachable non-terminal nodes in depth-first preorder.
    fn reachable(&self, root: NodeRef) -> Vec<NodeRef> {
        let mut seen = std::collections::HashSet::new();
        let mut order = Vec::new();
        let mut stack = vec![root];
        while let Some(f) = stack.pop() {
            if f.is_terminal() || !seen.insert(f) {
                continue;
            }
            order.push(f);
            stack.push(self.hi(f));
            stack.push(self.lo(f));
        }
        order
    }

    /// Number of member sets (ZDD) or satisfying assignments over `m`
    /// variables (BDD).
    pub fn count_sat(&self, root: NodeRef, m: usize, kind: DiagramKind) -> BigUint {
        let mut memo = HashMap::default();
        let top = self.count_rec(root, m, kind, &mut memo);
        match kind {
            DiagramKind::Zdd => top,
            DiagramKind::Bdd => top << self.skip_from(0, root, m),
        }
    }

    fn level(&self, f: NodeRef, m: usize) -> usize {
        if f.is_terminal() {
            m + 1
        } else {
            self.raw_label(f) as usize
        }
    }

    /// Number of variables strictly between level `from` and `to`'s level.
    fn skip_from(&self, from: usize, to: NodeRef, m: usize) -> usize {
        self.level(to, m) - from - 1
    }

    fn count_rec(&self, f: NodeRef, m: usize, kind: DiagramKind, memo: &mut HashMap<NodeRef, BigUint>) -> BigUint {
        match f {
            NodeRef::BOT => return BigUint::zero(),
            NodeRef::TOP => return BigUint::one(),
            _ => {}
        }
        if let Some(c) = memo.get(&f) {
            return c.clone();
        }
        let Node { label, lo, hi } = self.nodes[f.index()];
        let l = label as usize;
        let c0 = self.count_rec(lo, m, kind, memo);
        let c1 = self.count_rec(hi, m, kind, memo);
        let c = match kind {
            DiagramKind::Zdd => c0 + c1,
            DiagramKind::Bdd => (c0 << self.skip_from(l, lo, m)) + (c1 << self.skip_from(l, hi, m)),
        };
        memo.insert(f, c.clone());
        c
    }

    /// Lexicographically sorted member sets (ZDD) or true-sets of satisfying
    /// assignments over `m` variables (BDD).
    pub fn enumerate_sets(
        &self,
        root: NodeRef,
        kind: DiagramKind,
        m: usize,
        limit: usize,
    ) -> Result<Vec<Vec<u32>>, DdError> {
        if self.count_sat(root, m, kind) > BigUint::from(limit) {
            return Err(DdError::LimitExceeded { limit });
        }
        let mut out = Vec::new();
        let mut prefix = Vec::new();
        match kind {
            DiagramKind::Zdd => self.walk_zdd(root, &mut prefix, &mut out),
            DiagramKind::Bdd => self.walk_bdd(root, 1, m, &mut prefix, &mut out),
        }
        for s in &mut out {
            s.sort_unstable();
        }
        out.sort();
        Ok(out)
    }

    fn walk_zdd(&self, f: NodeRef, prefix: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        match f {
            NodeRef::BOT => {}
            NodeRef::TOP => out.push(prefix.clone()),
            _ => {
                let Node { label, lo, hi } = self.nodes[f.index()];
                self.walk_zdd(lo, prefix, out);
                prefix.push(label);
                self.walk_zdd(hi, prefix, out);
                prefix.pop();
            }
        }
    }

    fn walk_bdd(&self, f: NodeRef, var: usize, m: usize, prefix: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if f == NodeRef::BOT {
            return;
        }
        if var > m {
            out.push(prefix.clone());
            return;
        }
        let (lo, hi) = if self.level(f, m) == var {
            (self.lo(f), self.hi(f))
        } else {
            (f, f)
        };
        self.walk_bdd(lo, var + 1, m, prefix, out);
        prefix.push(var as u32);
        self.walk_bdd(hi, var + 1, m, prefix, out);
        prefix.pop();
    }

    /// Graphviz rendering of the diagram below `root`; 1-arcs are solid,
    /// 0-arcs dashed.
    pub fn export_dot(&self, root: NodeRef, kind: DiagramKind) -> String {
        let nodes = self.reachable(root);
        let mut out = String::new();
        let name = match kind {
            DiagramKind::Bdd => "bdd",
            DiagramKind::Zdd => "zdd",
        };
        let _ = writeln!(out, "digraph {name} {{");
        let mut terminals = [false; 2];
        if root.is_terminal() {
            terminals[root.index()] = true;
        }
        for &f in &nodes {
            let Node { label, lo, hi } = self.nodes[f.index()];
            let _ = writeln!(out, "  n{} [shape=circle,label=\"e{}\"];", f.0, label);
            for child in [lo, hi] {
                if child.is_terminal() {
                    terminals[child.index()] = true;
                }
            }
        }
        for (id, used) in terminals.iter().enumerate() {
            if *used {
                let sym = if id == 0 { "⊥" } else { "⊤" };
                let _ = writeln!(out, "  n{id} [shape=box,label=\"{sym}\"];");
            }
        }
        for &f in &nodes {
            let Node { lo, hi, .. } = self.nodes[f.index()];
            let _ = writeln!(out, "  n{} -> n{} [style=dashed];", f.0, lo.0);
            let _ = writeln!(out, "  n{} -> n{};", f.0, hi.0);
        }
        out.push_str("}\n");
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use DiagramKind::{Bdd, Zdd};

    const TWO_JOURNEYS: [&[u32]; 2] = [&[2], &[1, 3]];

    #[test]
    fn make_node_applies_reduction_rules() {
        let mut s = DiagramStore::new();
        assert_eq!(s.make_node(1, NodeRef::TOP, NodeRef::TOP, Bdd).unwrap(), NodeRef::TOP);
        assert_eq!(s.make_node(1, NodeRef::TOP, NodeRef::BOT, Zdd).unwrap(), NodeRef::TOP);
        let a = s.make_node(1, NodeRef::BOT, NodeRef::TOP, Bdd).unwrap();
        let b = s.make_node(1, NodeRef::BOT, NodeRef::TOP, Bdd).unwrap();
        assert_eq!(a, b);
        assert!(!a.is_terminal());
    }

    #[test]
    fn make_node_checks_label_order() {
        let mut s = DiagramStore::new();
        let x = s.bdd_var(2);
        assert_eq!(
            s.make_node(2, x, NodeRef::TOP, Bdd),
            Err(DdError::LabelOrder { label: 2, child: 2 })
        );
        assert!(s.make_node(3, x, NodeRef::TOP, Bdd).is_err());
        assert!(s.make_node(0, NodeRef::BOT, NodeRef::TOP, Bdd).is_err());
        assert!(s.make_node(1, x, NodeRef::TOP, Bdd).is_ok());
    }

    #[test]
    fn reduce_collapses_redundant_chain() {
        let mut s = DiagramStore::new();
        let c = s.add_unreduced(3, NodeRef::TOP, NodeRef::TOP).unwrap();
        let b = s.add_unreduced(2, c, c).unwrap();
        let a = s.add_unreduced(1, b, b).unwrap();
        assert_eq!(s.reduce(a, Bdd), NodeRef::TOP);
    }

    #[test]
    fn reduce_is_idempotent() {
        let mut s = DiagramStore::new();
        let f = s.zdd_family(&TWO_JOURNEYS);
        assert_eq!(s.reduce(f, Zdd), f);
        let g = s.reduce(f, Zdd);
        assert_eq!(s.reduce(g, Zdd), g);
    }

    #[test]
    fn reduce_unreduced_fig2_family() {
        // unreduced tree with duplicated subgraphs for {{e2},{e1,e3}}
        let mut s = DiagramStore::new();
        let only3 = s.add_unreduced(3, NodeRef::BOT, NodeRef::TOP).unwrap();
        let none3 = s.add_unreduced(3, NodeRef::TOP, NodeRef::BOT).unwrap();
        let lo2 = s.add_unreduced(2, NodeRef::BOT, none3).unwrap();
        let hi2 = s.add_unreduced(2, only3, NodeRef::BOT).unwrap();
        let root = s.add_unreduced(1, lo2, hi2).unwrap();
        let before = s.enumerate_sets(root, Zdd, 3, 10).unwrap();
        let r = s.reduce(root, Zdd);
        assert_eq!(s.enumerate_sets(r, Zdd, 3, 10).unwrap(), before);
        assert_eq!(before, vec![vec![1, 3], vec![2]]);
        assert!(s.size(r) <= 4);
        assert_eq!(r, s.zdd_family(&TWO_JOURNEYS));
    }

    #[test]
    fn or_apply_identities() {
        let mut s = DiagramStore::new();
        let x = s.bdd_var(1);
        assert_eq!(s.or_apply(x, NodeRef::BOT), x);
        assert_eq!(s.or_apply(x, NodeRef::TOP), NodeRef::TOP);
        let y = s.bdd_var(2);
        let f = s.or_apply(x, y);
        // truth table over (e1, e2): 10, 01, 11
        assert_eq!(
            s.enumerate_sets(f, Bdd, 2, 10).unwrap(),
            vec![vec![1], vec![1, 2], vec![2]]
        );
        assert_eq!(s.count_sat(f, 2, Bdd), BigUint::from(3u32));
    }

    #[test]
    fn count_sat_terminals() {
        let s = DiagramStore::new();
        assert_eq!(s.count_sat(NodeRef::TOP, 3, Bdd), BigUint::from(8u32));
        assert_eq!(s.count_sat(NodeRef::TOP, 3, Zdd), BigUint::from(1u32));
        assert_eq!(s.count_sat(NodeRef::BOT, 3, Bdd), BigUint::zero());
    }

    #[test]
    fn two_journey_family_counts_and_enumerates() {
        let mut s = DiagramStore::new();
        let f = s.zdd_family(&TWO_JOURNEYS);
        assert_eq!(s.count_sat(f, 3, Zdd), BigUint::from(2u32));
        assert_eq!(s.enumerate_sets(f, Zdd, 3, 10).unwrap(), vec![vec![1, 3], vec![2]]);
        assert_eq!(s.size(f), 3);
        assert!(matches!(
            s.enumerate_sets(f, Zdd, 3, 1),
            Err(DdError::LimitExceeded { limit: 1 })
        ));
    }

    #[test]
    fn enumerate_expands_bdd_dont_cares() {
        let mut s = DiagramStore::new();
        let x = s.bdd_var(1);
        assert_eq!(s.enumerate_sets(x, Bdd, 2, 10).unwrap(), vec![vec![1], vec![1, 2]]);
        assert!(s.enumerate_sets(NodeRef::BOT, Bdd, 2, 10).unwrap().is_empty());
        assert!(s.enumerate_sets(NodeRef::BOT, Zdd, 2, 10).unwrap().is_empty());
    }

    #[test]
    fn dot_export_matches_sizes() {
        let mut s = DiagramStore::new();
        let dot = s.export_dot(NodeRef::TOP, Zdd);
        assert_eq!(dot.matches("shape=box").count(), 1);
        assert!(dot.contains('⊤'));
        assert_eq!(dot.matches("shape=circle").count(), 0);

        let f = s.zdd_family(&TWO_JOURNEYS);
        let dot = s.export_dot(f, Zdd);
        assert_eq!(dot.matches("shape=circle").count(), s.size(f));
        assert_eq!(dot.matches("->").count(), 2 * s.size(f));
        assert_eq!(dot.matches("style=dashed").count(), s.size(f));
    }

    #[test]
    fn canonical_roots_for_equal_families() {
        let mut s = DiagramStore::new();
        let a = s.zdd_family(&[&[1u32, 2][..], &[3]]);
        let b = s.zdd_family(&[&[3u32][..], &[2, 1]]);
        assert_eq!(a, b);
    }
}
