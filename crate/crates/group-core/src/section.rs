//! Orders of sections (X + Y) / X, computed on integer lattices.
//!
//! Every coordinate c touched by the generators is scaled by the lcm N_c of
//! the denominators seen there, turning elements into integer rows. Torsion
//! coordinates get the relation row N_c * e_c. The section order is then a
//! ratio of HNF pivot products.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::descriptor::{Atom, Coord, GroupDescriptor};
use crate::element::Element;
use crate::handle::SubgroupHandle;
use crate::lattice::{hnf, pivot_col, pivot_product, Row};
use crate::primes::PrimeSet;
use crate::rational::{den_vp, Q};
use crate::GroupError;

pub const DEFAULT_PRECISION: u32 = 20;
pub const DEFAULT_THRESHOLD: u64 = 10_000;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SectionSize {
    Finite(BigInt),
    AtLeast(BigInt),
    CertifiedInfinite(String),
}

impl SectionSize {
    pub fn is_finite_one(&self) -> bool {
        matches!(self, SectionSize::Finite(n) if n.is_one())
    }

    pub fn finite(&self) -> Option<&BigInt> {
        match self {
            SectionSize::Finite(n) => Some(n),
            _ => None,
        }
    }

    /// A lower bound that is always valid.
    pub fn lower_bound(&self) -> Option<&BigInt> {
        match self {
            SectionSize::Finite(n) | SectionSize::AtLeast(n) => Some(n),
            SectionSize::CertifiedInfinite(_) => None,
        }
    }
}

impl fmt::Display for SectionSize {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SectionSize::Finite(n) => write!(f, "Finite({n})"),
            SectionSize::AtLeast(n) => write!(f, "AtLeast({n})"),
            SectionSize::CertifiedInfinite(g) => write!(f, "CertifiedInfinite({g})"),
        }
    }
}

/// Coordinate frame shared by a batch of elements.
pub struct Frame {
    coords: Vec<Coord>,
    pos: BTreeMap<Coord, usize>,
    scale: Vec<BigInt>,
    torsion: Vec<bool>,
}

impl Frame {
    pub fn new(g: &GroupDescriptor, elems: &[&Element]) -> Frame {
        let mut scale: BTreeMap<Coord, BigInt> = BTreeMap::new();
        for e in elems {
            for (c, v) in &e.coords {
                let n = scale.entry(*c).or_insert_with(BigInt::one);
                *n = n.lcm(v.denom());
            }
        }
        let coords: Vec<Coord> = scale.keys().copied().collect();
        let pos = coords.iter().enumerate().map(|(i, c)| (*c, i)).collect();
        let torsion = coords.iter().map(|c| g.atom(*c).is_torsion()).collect();
        let scale = scale.into_values().collect();
        Frame { coords, pos, scale, torsion }
    }

    pub fn dim(&self) -> usize {
        self.coords.len()
    }

    pub fn row(&self, e: &Element) -> Row {
        let mut r = vec![BigInt::zero(); self.dim()];
        for (c, v) in &e.coords {
            let i = self.pos[c];
            let x = v * Q::from_integer(self.scale[i].clone());
            debug_assert!(x.denom().is_one());
            r[i] = x.to_integer();
        }
        r
    }

    pub fn relations(&self) -> Vec<Row> {
        let mut out = Vec::new();
        for i in 0..self.dim() {
            if self.torsion[i] {
                let mut r = vec![BigInt::zero(); self.dim()];
                r[i] = self.scale[i].clone();
                out.push(r);
            }
        }
        out
    }

    fn lattice(&self, elems: &[Element]) -> Vec<Row> {
        let mut rows: Vec<Row> = elems.iter().map(|e| self.row(e)).collect();
        rows.extend(self.relations());
        hnf(&rows, self.dim())
    }
}

/// Exact index |<X, Y> / <X>| for finite generating sets, or None when the
/// torsion-free rank goes up.
pub fn fg_index(g: &GroupDescriptor, x: &[Element], y: &[Element]) -> Option<BigInt> {
    let all: Vec<&Element> = x.iter().chain(y.iter()).collect();
    let frame = Frame::new(g, &all);
    let hx = frame.lattice(x);
    let xy: Vec<Element> = x.iter().chain(y.iter()).cloned().collect();
    let hxy = frame.lattice(&xy);
    if hx.len() != hxy.len() {
        return None;
    }
    Some(pivot_product(&hx) / pivot_product(&hxy))
}

/// Order of a finitely generated torsion subgroup, None if it has positive rank.
pub fn fg_order(g: &GroupDescriptor, x: &[Element]) -> Option<BigInt> {
    fg_index(g, &[], x)
}

/// Torsion-free rank of <x>: rank of its projection onto localized coordinates.
pub fn fg_free_rank(g: &GroupDescriptor, x: &[Element]) -> usize {
    let proj: Vec<Element> = x
        .iter()
        .map(|e| {
            let mut p = Element::zero();
            for (c, v) in &e.coords {
                if !g.atom(*c).is_torsion() {
                    p.add_at(*c, v.clone());
                }
            }
            p
        })
        .collect();
    let refs: Vec<&Element> = proj.iter().collect();
    let frame = Frame::new(g, &refs);
    let rows: Vec<Row> = proj.iter().map(|e| frame.row(e)).collect();
    hnf(&rows, frame.dim()).len()
}

/// Order of the torsion subgroup of <x>.
pub fn fg_torsion_order(g: &GroupDescriptor, x: &[Element]) -> BigInt {
    let refs: Vec<&Element> = x.iter().collect();
    let frame = Frame::new(g, &refs);
    // free coordinates first so that the echelon rows with a torsion pivot
    // span the lattice of torsion elements
    let mut order: Vec<usize> = (0..frame.dim()).filter(|&i| !frame.torsion[i]).collect();
    order.extend((0..frame.dim()).filter(|&i| frame.torsion[i]));
    let permute = |r: Row| -> Row { order.iter().map(|&i| r[i].clone()).collect() };
    let mut rows: Vec<Row> = x.iter().map(|e| permute(frame.row(e))).collect();
    rows.extend(frame.relations().into_iter().map(permute));
    let h = hnf(&rows, frame.dim());
    let nfree = order.iter().filter(|&&i| !frame.torsion[i]).count();
    let mut det = BigInt::one();
    for r in &h {
        let pc = pivot_col(r).unwrap();
        if pc >= nfree {
            det *= &r[pc];
        }
    }
    let mut prod = BigInt::one();
    for i in 0..frame.dim() {
        if frame.torsion[i] {
            prod *= &frame.scale[i];
        }
    }
    prod / det
}

fn closure_primes(pi: &PrimeSet, atom: &Atom, k: u32) -> Vec<u64> {
    match atom {
        Atom::Prufer { p } => vec![*p],
        Atom::Cyclic { .. } => Vec::new(),
        Atom::Localized(ps) => {
            let eff = pi.intersection(ps);
            match eff {
                PrimeSet::All => crate::primes::primes_upto(k.max(2) as u64),
                PrimeSet::Finite(v) => v,
            }
        }
    }
}

/// Generators of a handle truncated at `level`.
pub fn materialize(
    g: &GroupDescriptor,
    h: &SubgroupHandle,
    context: &[&Element],
    level: u32,
    k: u32,
) -> Result<Vec<Element>, GroupError> {
    let mut out = h.gens.clone();
    for cl in &h.closures {
        let slot = g
            .slots
            .get(cl.slot)
            .ok_or_else(|| GroupError::Invalid(format!("closure slot {} out of range", cl.slot + 1)))?;
        let copies = slot.mult.finite().ok_or_else(|| {
            GroupError::Unsupported(format!("divisible closure on omega slot {}", cl.slot + 1))
        })?;
        let primes = closure_primes(&cl.primes, &slot.atom, k);
        if let Atom::Cyclic { .. } = slot.atom {
            for c in 0..copies as u64 {
                out.push(Element::unit_at((cl.slot, c), slot.atom.unit()));
            }
            continue;
        }
        // base level: deepest denominator already present in this slot
        let mut base = 0u32;
        for e in context.iter().copied().chain(h.gens.iter()) {
            for ((s, _), v) in &e.coords {
                if *s == cl.slot {
                    for &p in &primes {
                        base = base.max(den_vp(v, p));
                    }
                }
            }
        }
        for &p in &primes {
            base = base.max(den_vp(&cl.scale, p));
        }
        let m: BigInt = primes.iter().map(|&p| BigInt::from(p)).product();
        let denom = num_traits::pow(m, (base + level) as usize);
        let scale = match slot.atom {
            Atom::Prufer { .. } => Q::one(),
            _ => cl.scale.clone(),
        };
        for c in 0..copies as u64 {
            let v = &scale / Q::from_integer(denom.clone());
            out.push(g.reduce(Element::unit_at((cl.slot, c), v)));
        }
    }
    Ok(out)
}

/// |(X + Y) / X| with truncation of divisible closures at depth `k`.
pub fn section_order(
    g: &GroupDescriptor,
    x: &SubgroupHandle,
    y: &SubgroupHandle,
    k: u32,
    threshold: &BigInt,
) -> Result<SectionSize, GroupError> {
    x.validate(g)?;
    y.validate(g)?;
    if x.is_finitely_generated() && y.is_finitely_generated() {
        return Ok(match fg_index(g, &x.gens, &y.gens) {
            Some(n) => SectionSize::Finite(n),
            None => SectionSize::AtLeast(threshold.clone()),
        });
    }
    let context: Vec<&Element> = x.gens.iter().chain(y.gens.iter()).collect();
    let mut prev: Option<BigInt> = None;
    for level in 1..=k.max(1) {
        let xs = materialize(g, x, &context, level, k)?;
        let ys = materialize(g, y, &context, level, k)?;
        let n = match fg_index(g, &xs, &ys) {
            Some(n) => n,
            None => return Ok(SectionSize::AtLeast(threshold.clone())),
        };
        if &n > threshold {
            return Ok(SectionSize::AtLeast(threshold.clone()));
        }
        if prev.as_ref() == Some(&n) {
            return Ok(SectionSize::Finite(n));
        }
        prev = Some(n);
    }
    Ok(SectionSize::AtLeast(prev.unwrap_or_else(BigInt::one)))
}

/// Is x in the handle (up to truncation depth k)?
pub fn contains(
    g: &GroupDescriptor,
    h: &SubgroupHandle,
    x: &Element,
    k: u32,
) -> Result<bool, GroupError> {
    let y = SubgroupHandle::generated(vec![x.clone()]);
    let big = BigInt::from(u64::MAX);
    Ok(section_order(g, h, &y, k, &big)?.is_finite_one())
}

/// X and Y commensurable: both |X+Y : X| and |X+Y : Y| finite. Returns the
/// two section sizes in that order.
pub fn is_commensurable(
    g: &GroupDescriptor,
    x: &SubgroupHandle,
    y: &SubgroupHandle,
    k: u32,
    threshold: &BigInt,
) -> Result<(bool, SectionSize, SectionSize), GroupError> {
    let a = section_order(g, x, y, k, threshold)?;
    let b = section_order(g, y, x, k, threshold)?;
    let ok = matches!(a, SectionSize::Finite(_)) && matches!(b, SectionSize::Finite(_));
    Ok((ok, a, b))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::{parse_element, parse_group};
    use crate::rational::qr;

    fn th() -> BigInt {
        BigInt::from(DEFAULT_THRESHOLD)
    }

    #[test]
    fn z_over_3z() {
        let g = parse_group("Z").unwrap();
        let x = SubgroupHandle::generated(vec![parse_element(&g, "[1.1: 3]").unwrap()]);
        let y = SubgroupHandle::generated(vec![parse_element(&g, "[1.1: 1]").unwrap()]);
        assert_eq!(section_order(&g, &x, &y, 20, &th()).unwrap(), SectionSize::Finite(3.into()));
    }

    #[test]
    fn rank_increase_is_at_least_threshold() {
        let g = parse_group("Q[2]").unwrap();
        let y = SubgroupHandle::generated(vec![parse_element(&g, "[1.1: 1]").unwrap()]);
        let s = section_order(&g, &SubgroupHandle::zero(), &y, 20, &th()).unwrap();
        assert_eq!(s, SectionSize::AtLeast(th()));
    }

    #[test]
    fn prufer_closure_saturates() {
        // Z(2^inf) over <1/8>: grows with truncation, exceeds threshold
        let g = parse_group("Z(2^inf)").unwrap();
        let x = SubgroupHandle::generated(vec![parse_element(&g, "[1.1: 1/8]").unwrap()]);
        let y = SubgroupHandle::whole_slot(&g, 0).unwrap();
        let s = section_order(&g, &x, &y, 20, &th()).unwrap();
        assert_eq!(s, SectionSize::AtLeast(th()));
        // but a closure against itself is trivial
        let s = section_order(&g, &y, &y, 20, &th()).unwrap();
        assert_eq!(s, SectionSize::Finite(1.into()));
    }

    #[test]
    fn torsion_order_mixed() {
        let g = parse_group("Z + Z(4)").unwrap();
        let a = parse_element(&g, "[1.1: 2, 2.1: 1]").unwrap();
        let b = parse_element(&g, "[1.1: 1]").unwrap();
        // <(2,1),(1,0)> = Z + Z(4): torsion 4
        assert_eq!(fg_torsion_order(&g, &[a.clone(), b]), BigInt::from(4));
        assert_eq!(fg_torsion_order(&g, &[a.clone()]), BigInt::from(1));
        assert_eq!(fg_free_rank(&g, &[a]), 1);
        let _ = qr(1, 2);
    }
}
