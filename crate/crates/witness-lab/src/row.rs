//! Small torsion computations inside one copy, by direct enumeration of
//! cyclic subgroups. Used to size witness families before they are checked.

use std::collections::BTreeSet;

use inertia_endo::Endomorphism;
use inertia_group::rational::{pow, vp};
use inertia_group::{Atom, Coord, Element, GroupDescriptor, Mult, Q};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

/// Order of a torsion element: lcm of the denominators.
pub fn order(x: &Element) -> BigInt {
    x.coords.values().fold(BigInt::one(), |acc, v| acc.lcm(v.denom()))
}

fn multiples(g: &GroupDescriptor, a: &Element) -> BTreeSet<Element> {
    let n = order(a);
    let mut out = BTreeSet::new();
    let mut t = Element::zero();
    let mut k = BigInt::zero();
    while k < n {
        out.insert(t.clone());
        t = g.add(&t, a);
        k += 1;
    }
    out
}

/// Smallest k >= 1 with k*b in <a>, i.e. the order of b in <a, b>/<a>.
pub fn relative_order(g: &GroupDescriptor, a: &Element, b: &Element) -> BigInt {
    let set = multiples(g, a);
    let mut t = b.clone();
    let mut k = BigInt::one();
    while !set.contains(&t) {
        t = g.add(&t, b);
        k += 1;
    }
    k
}

/// Omega slots (or finite Prufer slots) at p, as (slot, depth cap) with the
/// cap being e for cyclic and `deep` for Prufer slots.
fn depth_of(atom: &Atom, deep: u32) -> u32 {
    match atom {
        Atom::Cyclic { e, .. } => *e,
        _ => deep,
    }
}

/// A depth at which every nonzero p-local coefficient among the entries
/// touching `coords`, and every difference of two diagonal entries, is seen.
fn working_depth(phi: &Endomorphism, coords: &[Coord], p: u64) -> u32 {
    let mut coefs: Vec<Q> = Vec::new();
    for &s in coords {
        for &t in coords {
            coefs.push(coef_between(phi, s, t));
        }
    }
    let diag: Vec<Q> = coords.iter().map(|&s| coef_between(phi, s, s)).collect();
    for a in &diag {
        for b in &diag {
            coefs.push(a - b);
        }
    }
    let v = coefs.iter().filter(|c| !c.is_zero()).filter_map(|c| vp(c, p)).max().unwrap_or(0);
    v.max(0) as u32 + 1
}

/// Entry t <- s, read from the omega table or the copy table.
pub fn coef_between(phi: &Endomorphism, s: Coord, t: Coord) -> Q {
    let g = &phi.ambient;
    match g.slots[s.0].mult {
        Mult::Omega if s.1 == t.1 => phi.each_coef(t.0, s.0),
        Mult::Omega => Q::zero(),
        Mult::Finite(_) => phi.copy_coef(t, s),
    }
}

fn at_depth(g: &GroupDescriptor, c: Coord, d: u32, deep: u32) -> Element {
    let p = g.atom(c).prime().expect("torsion coordinate");
    let d = d.min(depth_of(g.atom(c), deep));
    Element::unit_at(c, Q::new(BigInt::one(), pow(p, d)))
}

/// Candidates y in the span of `coords`: single coordinates at every depth
/// and sums of two coordinates at a common depth.
fn candidates(g: &GroupDescriptor, coords: &[Coord], deep: u32) -> Vec<Element> {
    let mut out = Vec::new();
    for &c in coords {
        for d in 1..=depth_of(g.atom(c), deep) {
            out.push(at_depth(g, c, d, deep));
        }
    }
    for (i, &s) in coords.iter().enumerate() {
        for &t in &coords[i + 1..] {
            let top = depth_of(g.atom(s), deep).min(depth_of(g.atom(t), deep));
            for d in 1..=top {
                out.push(g.add(&at_depth(g, s, d, deep), &at_depth(g, t, d, deep)));
            }
        }
    }
    out
}

/// First y over `coords` (all at prime p, one copy) with
/// |<y, phi y> : <y>| > 1 (right) or |<y, phi y> : <phi y>| > 1 (left),
/// with that index.
pub fn find_moved(phi: &Endomorphism, coords: &[Coord], p: u64, left: bool) -> Option<(Element, BigInt)> {
    let g = &phi.ambient;
    let deep = working_depth(phi, coords, p);
    for y in candidates(g, coords, deep) {
        let ny = phi.apply_linear(&y);
        let k = if left { relative_order(g, &ny, &y) } else { relative_order(g, &y, &ny) };
        if k > BigInt::one() {
            return Some((y, k));
        }
    }
    None
}

/// Direction y (integer weights on finite Prufer coordinates at p) and a
/// depth shift v so that |<y_k, phi y_k> : <y_k>| >= p^k for y_k = y/p^(k+v).
pub fn prufer_direction(phi: &Endomorphism, coords: &[Coord], p: u64) -> Option<(Vec<Coord>, i64)> {
    for &s in coords {
        let off: Vec<i64> = coords
            .iter()
            .filter(|&&t| t != s)
            .map(|&t| coef_between(phi, s, t))
            .filter(|c| !c.is_zero())
            .map(|c| vp(&c, p).unwrap())
            .collect();
        if let Some(v) = off.iter().min() {
            return Some((vec![s], *v));
        }
    }
    for (i, &s) in coords.iter().enumerate() {
        for &t in &coords[i + 1..] {
            let d = coef_between(phi, s, s) - coef_between(phi, t, t);
            if !d.is_zero() {
                return Some((vec![s, t], vp(&d, p).unwrap()));
            }
        }
    }
    None
}
