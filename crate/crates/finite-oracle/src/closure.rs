//! X^Phi (smallest invariant subgroup containing X) and X_Phi (largest
//! invariant subgroup inside X) on membership bitsets.

use crate::endo::FiniteEndo;
use crate::group::{bits, Elem, FiniteAbelianGroup};

/// S <- S + <v>; returns |S + <v> : S|. S must be a subgroup.
pub fn join_cyclic(g: &FiniteAbelianGroup, s: &mut [u64], v: Elem, scratch: &mut Vec<u32>) -> u32 {
    if bits::get(s, v) {
        return 1;
    }
    bits::members(s, scratch);
    let mut w = v;
    let mut k = 1;
    // k*v lands in an earlier coset only once it lands in S itself
    while !bits::get(s, w) {
        for &m in scratch.iter() {
            bits::set(s, g.add(m, w));
        }
        w = g.add(w, v);
        k += 1;
    }
    k
}

/// Grow the invariant subgroup S by v and everything Phi generates from it.
/// Returns the index gained.
pub fn grow(g: &FiniteAbelianGroup, s: &mut [u64], phi: &[&FiniteEndo], v: Elem, scratch: &mut Vec<u32>) -> u64 {
    let mut gained = 1u64;
    let mut queue = vec![v];
    while let Some(x) = queue.pop() {
        let k = join_cyclic(g, s, x, scratch);
        if k > 1 {
            gained *= k as u64;
            for f in phi {
                queue.push(f.apply(x));
            }
        }
    }
    gained
}

pub fn up(g: &FiniteAbelianGroup, x: &[u64], phi: &[&FiniteEndo]) -> Vec<u64> {
    let mut s = vec![0u64; x.len()];
    bits::set(&mut s, 0);
    let mut scratch = Vec::new();
    let mut members = Vec::new();
    bits::members(x, &mut members);
    for a in members {
        grow(g, &mut s, phi, a, &mut scratch);
    }
    s
}

/// Iterate Y <- { y in Y : phi(y) in Y for all phi }.
pub fn down(x: &[u64], phi: &[&FiniteEndo]) -> Vec<u64> {
    let mut y = x.to_vec();
    let mut members = Vec::new();
    loop {
        bits::members(&y, &mut members);
        let mut next = vec![0u64; y.len()];
        let mut changed = false;
        for &a in &members {
            if phi.iter().all(|f| bits::get(&y, f.apply(a))) {
                bits::set(&mut next, a);
            } else {
                changed = true;
            }
        }
        if !changed {
            return y;
        }
        y = next;
    }
}

pub fn is_invariant(x: &[u64], phi: &[&FiniteEndo]) -> bool {
    let mut members = Vec::new();
    bits::members(x, &mut members);
    members.iter().all(|&a| phi.iter().all(|f| bits::get(x, f.apply(a))))
}

/// Subgroup generated by a list of elements.
pub fn span(g: &FiniteAbelianGroup, gens: &[Elem]) -> Vec<u64> {
    let mut s = vec![0u64; bits::words(g.order())];
    bits::set(&mut s, 0);
    let mut scratch = Vec::new();
    for &a in gens {
        join_cyclic(g, &mut s, a, &mut scratch);
    }
    s
}
