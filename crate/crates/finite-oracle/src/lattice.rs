//! Subgroup enumeration by prime-index extension: every nonzero subgroup Y
//! has a maximal subgroup X of prime index q, and then Y = X + <g> for any
//! g in Y \ X. Starting from 0 and deduplicating on membership bitsets gives
//! each subgroup once, together with a spanning tree (parent, generator).

use indexmap::IndexSet;

use crate::group::{bits, Elem, FiniteAbelianGroup};
use crate::OracleError;

pub struct Lattice {
    pub words: usize,
    /// membership bitsets in discovery order; index 0 is the zero subgroup
    pub sets: IndexSet<Box<[u64]>>,
    pub parent: Vec<u32>,
    pub gen: Vec<Elem>,
    /// prime-index steps from 0, so log_p |X| for p-groups
    pub depth: Vec<u8>,
}

impl Lattice {
    pub fn len(&self) -> usize {
        self.sets.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sets.is_empty()
    }

    pub fn set(&self, i: usize) -> &[u64] {
        &self.sets[i]
    }

    pub fn index_of(&self, s: &[u64]) -> Option<usize> {
        self.sets.get_index_of(s)
    }

    /// Children lists in compressed form: (offsets, targets).
    pub fn children(&self) -> (Vec<u32>, Vec<u32>) {
        let n = self.len();
        let mut count = vec![0u32; n + 1];
        for i in 1..n {
            count[self.parent[i] as usize + 1] += 1;
        }
        for i in 0..n {
            count[i + 1] += count[i];
        }
        let mut fill = count.clone();
        let mut out = vec![0u32; n.saturating_sub(1)];
        for i in 1..n {
            let p = self.parent[i] as usize;
            out[fill[p] as usize] = i as u32;
            fill[p] += 1;
        }
        (count, out)
    }
}

/// Enumerate all subgroups; `limit` bounds the number kept.
pub fn enumerate(g: &FiniteAbelianGroup, limit: usize) -> Result<Lattice, OracleError> {
    let words = bits::words(g.order());
    let primes = g.primes();
    // multiplication-by-q tables
    let mulq: Vec<Vec<Elem>> = primes.iter().map(|&q| (0..g.order()).map(|x| g.mul(q as u64, x)).collect()).collect();
    let mut sets: IndexSet<Box<[u64]>> = IndexSet::new();
    let mut zero = vec![0u64; words];
    bits::set(&mut zero, 0);
    sets.insert(zero.into_boxed_slice());
    let mut parent = vec![0u32];
    let mut gen = vec![0];
    let mut depth = vec![0u8];
    let mut members = Vec::new();
    let mut done = vec![0u64; words];
    let mut child = vec![0u64; words];
    let mut i = 0;
    while i < sets.len() {
        let x: Box<[u64]> = sets[i].clone();
        bits::members(&x, &mut members);
        for (qi, &q) in primes.iter().enumerate() {
            done.copy_from_slice(&x);
            for a in 0..g.order() {
                if bits::get(&done, a) || !bits::get(&x, mulq[qi][a as usize]) {
                    continue;
                }
                // Y = X + <a>, |Y : X| = q
                child.copy_from_slice(&x);
                let mut w = a;
                for _ in 1..q {
                    for &m in &members {
                        let y = g.add(m, w);
                        bits::set(&mut child, y);
                        bits::set(&mut done, y);
                    }
                    w = g.add(w, a);
                }
                if !sets.contains(&child[..]) {
                    if sets.len() >= limit {
                        return Err(OracleError::TooManySubgroups { limit });
                    }
                    sets.insert(child.clone().into_boxed_slice());
                    parent.push(i as u32);
                    gen.push(a);
                    depth.push(depth[i] + 1);
                }
            }
        }
        i += 1;
    }
    Ok(Lattice { words, sets, parent, gen, depth })
}

/// Independent recount: grow by arbitrary elements, deduplicate on sorted
/// element lists.
pub fn recount(g: &FiniteAbelianGroup) -> usize {
    use std::collections::BTreeSet;
    let mut seen: BTreeSet<Vec<Elem>> = BTreeSet::new();
    let mut stack = vec![vec![0]];
    seen.insert(vec![0]);
    while let Some(x) = stack.pop() {
        let xs: BTreeSet<Elem> = x.iter().copied().collect();
        for a in 0..g.order() {
            if xs.contains(&a) {
                continue;
            }
            // closure of X + <a>
            let mut y = xs.clone();
            let mut frontier: Vec<Elem> = x.clone();
            while let Some(b) = frontier.pop() {
                let c = g.add(b, a);
                if y.insert(c) {
                    frontier.push(c);
                    for &m in &x {
                        let d = g.add(c, m);
                        if y.insert(d) {
                            frontier.push(d);
                        }
                    }
                }
            }
            let v: Vec<Elem> = y.into_iter().collect();
            if seen.insert(v.clone()) {
                stack.push(v);
            }
        }
    }
    seen.len()
}
