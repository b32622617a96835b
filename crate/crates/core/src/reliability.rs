//! Reliability by bottom-up dynamic programming over a STRES diagram.
//!
//! Both evaluators are generic over the probability type, so the same
//! diagram can be evaluated in `f64` or in exact rationals.

use rustc_hash::FxHashMap as HashMap;

use crate::dd::{DiagramStore, NodeRef};
use crate::error::DdError;
use crate::scalar::{complement, Scalar};

fn validate<T: Scalar>(probs: &[T], m: usize) -> Result<(), DdError> {
    if probs.len() != m {
        return Err(DdError::ProbabilityCount {
            expected: m,
            got: probs.len(),
        });
    }
    for (i, p) in probs.iter().enumerate() {
        if *p < T::zero() || *p > T::one() {
            return Err(DdError::Probability {
                var: i + 1,
                value: format!("{p:?}"),
            });
        }
    }
    Ok(())
}

/// Probability mass of the BDD `root`; skipped levels are don't-cares and contribute
/// `p + q = 1`.
pub fn reliability_bdd<T: Scalar>(store: &DiagramStore, root: NodeRef, probs: &[T], m: usize) -> Result<T, DdError> {
    validate(probs, m)?;
    let mut memo = HashMap::default();
    Ok(mass_bdd(store, root, probs, &mut memo))
}

fn mass_bdd<T: Scalar>(store: &DiagramStore, f: NodeRef, probs: &[T], memo: &mut HashMap<NodeRef, T>) -> T {
    match f {
        NodeRef::BOT => return T::zero(),
        NodeRef::TOP => return T::one(),
        _ => {}
    }
    if let Some(v) = memo.get(&f) {
        return v.clone();
    }
    let p = &probs[store.label(f).expect("non-terminal") as usize - 1];
    let hi = mass_bdd(store, store.hi(f), probs, memo);
    let lo = mass_bdd(store, store.lo(f), probs, memo);
    let v = hi * p.clone() + lo * complement(p);
    memo.insert(f, v.clone());
    v
}

/// Reliability of the family held in a ZDD. A level skipped on the way to a
/// child means the edge is absent, contributing its failure probability.
pub fn reliability_zdd<T: Scalar>(store: &DiagramStore, root: NodeRef, probs: &[T], m: usize) -> Result<T, DdError> {
    validate(probs, m)?;
    let q: Vec<T> = probs.iter().map(complement).collect();
    let mut memo = HashMap::default();
    let v = mass_zdd(store, root, probs, &q, &mut memo);
    Ok(skipped(store, &q, 0, root) * v)
}

fn level(store: &DiagramStore, f: NodeRef, m: usize) -> usize {
    store.label(f).map_or(m + 1, |l| l as usize)
}

/// Product of failure probabilities strictly between level `from` and `to`.
fn skipped<T: Scalar>(store: &DiagramStore, q: &[T], from: usize, to: NodeRef) -> T {
    if to == NodeRef::BOT {
        return T::one();
    }
    let until = level(store, to, q.len());
    q[from..until - 1].iter().fold(T::one(), |acc, qi| acc * qi.clone())
}

fn mass_zdd<T: Scalar>(store: &DiagramStore, f: NodeRef, p: &[T], q: &[T], memo: &mut HashMap<NodeRef, T>) -> T {
    match f {
        NodeRef::BOT => return T::zero(),
        NodeRef::TOP => return T::one(),
        _ => {}
    }
    if let Some(v) = memo.get(&f) {
        return v.clone();
    }
    let l = level(store, f, q.len());
    let (lo, hi) = (store.lo(f), store.hi(f));
    let v_hi = skipped(store, q, l, hi) * mass_zdd(store, hi, p, q, memo);
    let v_lo = skipped(store, q, l, lo) * mass_zdd(store, lo, p, q, memo);
    let v = v_hi * p[l - 1].clone() + v_lo * q[l - 1].clone();
    memo.insert(f, v.clone());
    v
}
