//! Generic top-down (frontier-based) ZDD construction.
//!
//! A [`FrontierSpec`] describes a level-synchronous dynamic program over
//! states; this module expands it one variable at a time, merges equal
//! states within a level, and turns the resulting layered graph into a
//! reduced ZDD.

use std::hash::Hash;
use std::time::Instant;

use rustc_hash::FxHashMap as HashMap;

use crate::dd::{DiagramKind, DiagramStore, NodeRef};

/// Outcome of following one arc.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Child<S> {
    /// No solution below this arc (⊥).
    Reject,
    /// Every remaining variable is excluded and the set is accepted (⊤).
    Accept,
    /// Continue at the next level with this state.
    Node(S),
}

pub trait FrontierSpec {
    type State: Clone + Eq + Hash;

    /// Number of variables `m`.
    fn variables(&self) -> usize;

    /// State of the root, labelled with variable 1.
    fn root(&mut self) -> Child<Self::State>;

    /// The `take`-child of `state`, which is labelled with `level`.
    fn child(&mut self, state: &Self::State, level: usize, take: bool) -> Child<Self::State>;

    /// Called once per level with the number of distinct nodes on it.
    fn level_done(&mut self, _level: usize, _nodes: usize) {}
}

#[derive(Clone, Copy, Debug)]
pub struct BuildOptions {
    /// Share nodes whose states compare equal.
    pub merge: bool,
    pub deadline: Option<Instant>,
}

impl Default for BuildOptions {
    fn default() -> Self {
        BuildOptions {
            merge: true,
            deadline: None,
        }
    }
}

pub use crate::dd::DeadlineExceeded;

#[derive(Clone, Copy)]
enum Arc {
    Bot,
    Top,
    Next(u32),
}

/// Expand `spec` into `store` and return the reduced ZDD root.
pub fn build<S: FrontierSpec>(
    spec: &mut S,
    store: &mut DiagramStore,
    opts: BuildOptions,
) -> Result<NodeRef, DeadlineExceeded> {
    let m = spec.variables();
    let root_state = match spec.root() {
        Child::Reject => return Ok(NodeRef::BOT),
        Child::Accept => return Ok(NodeRef::TOP),
        Child::Node(s) => s,
    };
    if m == 0 {
        return Ok(NodeRef::BOT);
    }

    // arcs[i] holds (lo, hi) for every node labelled i + 1
    let mut arcs: Vec<Vec<(Arc, Arc)>> = Vec::with_capacity(m);
    let mut current = vec![root_state];
    for level in 1..=m {
        check(opts.deadline)?;
        spec.level_done(level, current.len());
        let mut next: Vec<S::State> = Vec::new();
        let mut index: HashMap<S::State, u32> = HashMap::default();
        let mut row = Vec::with_capacity(current.len());
        for (k, state) in current.iter().enumerate() {
            if k % 1024 == 1023 {
                check(opts.deadline)?;
            }
            let mut pair = [Arc::Bot, Arc::Bot];
            for (slot, take) in pair.iter_mut().zip([false, true]) {
                *slot = match spec.child(state, level, take) {
                    Child::Reject => Arc::Bot,
                    Child::Accept => Arc::Top,
                    Child::Node(_) if level == m => panic!("spec produced a node below the last level"),
                    Child::Node(s) => {
                        let id = if opts.merge {
                            match index.get(&s) {
                                Some(&id) => id,
                                None => {
                                    let id = next.len() as u32;
                                    index.insert(s.clone(), id);
                                    next.push(s);
                                    id
                                }
                            }
                        } else {
                            next.push(s);
                            next.len() as u32 - 1
                        };
                        Arc::Next(id)
                    }
                };
            }
            row.push((pair[0], pair[1]));
        }
        arcs.push(row);
        current = next;
    }

    // bottom-up materialization, then canonical reduction
    let mut below: Vec<NodeRef> = Vec::new();
    for level in (1..=m).rev() {
        let resolve = |a: Arc| match a {
            Arc::Bot => NodeRef::BOT,
            Arc::Top => NodeRef::TOP,
            Arc::Next(id) => below[id as usize],
        };
        below = arcs[level - 1]
            .iter()
            .map(|&(lo, hi)| {
                store
                    .add_unreduced(level as u32, resolve(lo), resolve(hi))
                    .expect("children sit on deeper levels")
            })
            .collect();
    }
    check(opts.deadline)?;
    Ok(store.reduce(below[0], DiagramKind::Zdd))
}

fn check(deadline: Option<Instant>) -> Result<(), DeadlineExceeded> {
    match deadline {
        Some(d) if Instant::now() >= d => Err(DeadlineExceeded),
        _ => Ok(()),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Subsets of {1..m} with exactly `k` elements.
    struct Choose {
        m: usize,
        k: usize,
    }

    impl FrontierSpec for Choose {
        type State = usize;

        fn variables(&self) -> usize {
            self.m
        }

        fn root(&mut self) -> Child<usize> {
            Child::Node(0)
        }

        fn child(&mut self, &taken: &usize, level: usize, take: bool) -> Child<usize> {
            let taken = taken + take as usize;
            let left = self.m - level;
            if taken > self.k || taken + left < self.k {
                Child::Reject
            } else if level == self.m {
                Child::Accept
            } else {
                Child::Node(taken)
            }
        }
    }

    #[test]
    fn builds_k_subsets() {
        let mut store = DiagramStore::new();
        let f = build(&mut Choose { m: 5, k: 2 }, &mut store, BuildOptions::default()).unwrap();
        assert_eq!(store.count_sat(f, 5, DiagramKind::Zdd), 10u32.into());
    }

    #[test]
    fn merging_does_not_change_the_result() {
        let mut store = DiagramStore::new();
        let merged = build(&mut Choose { m: 6, k: 3 }, &mut store, BuildOptions::default()).unwrap();
        let opts = BuildOptions {
            merge: false,
            ..Default::default()
        };
        let tree = build(&mut Choose { m: 6, k: 3 }, &mut store, opts).unwrap();
        assert_eq!(merged, tree);
    }

    #[test]
    fn expired_deadline() {
        let mut store = DiagramStore::new();
        let opts = BuildOptions {
            merge: true,
            deadline: Some(Instant::now()),
        };
        assert_eq!(
            build(&mut Choose { m: 3, k: 1 }, &mut store, opts),
            Err(DeadlineExceeded)
        );
    }
}
