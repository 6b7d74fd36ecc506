//! Witness constructors. Each one sizes its family by a closed form and then
//! checks it with [`crate::verify_witness`] before returning.

use inertia_endo::Endomorphism;
use inertia_group::rational::{den_vp, fmt_rational};
use inertia_group::{Atom, Coord, Element, GroupDescriptor, Mult, PrimeSet, Slot, Q};
use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::row::{find_moved, prufer_direction};
use crate::{CopyRule, Growth, Kind, Mode, Part, Shape, Witness, WitnessError};

fn pre(msg: impl Into<String>) -> WitnessError {
    WitnessError::Precondition(msg.into())
}

/// First copy of an omega slot beyond every finitary term source.
pub fn terms_clear_copy(phi: &Endomorphism) -> u64 {
    phi.terms
        .iter()
        .filter(|t| phi.ambient.slots[t.source.0].mult.is_omega())
        .map(|t| t.source.1 + 1)
        .max()
        .unwrap_or(0)
}

/// h_i = e/p^(i-1) + t/p^(i-1) on Z(p^inf) + Q^pi with phi = alpha + m/n,
/// where p divides n. The sections are exactly |n| p^(i-1).
pub fn diagonal_witness(p: u64, alpha: &Q, mn: &Q, pi: &PrimeSet, k: u32) -> Result<Witness, WitnessError> {
    if !inertia_group::primes::is_prime(p) {
        return Err(pre(format!("{p} is not prime")));
    }
    if alpha == mn {
        return Err(pre(format!(
            "alpha = m/n = {}: m - n*alpha vanishes, no witness",
            fmt_rational(mn)
        )));
    }
    let n = mn.denom().clone();
    if den_vp(mn, p) == 0 {
        return Err(pre(format!("{p} does not divide the denominator of {}", fmt_rational(mn))));
    }
    if !pi.contains(p) || !pi.admits(&n)? {
        return Err(pre(format!("Q[{pi}] is not divisible by {n} and {p}")));
    }
    if den_vp(alpha, p) > 0 {
        return Err(pre(format!("{} is not {p}-local", fmt_rational(alpha))));
    }
    let g = GroupDescriptor::new(vec![
        Slot { atom: Atom::Prufer { p }, mult: Mult::Finite(1) },
        Slot { atom: Atom::Localized(pi.clone()), mult: Mult::Finite(1) },
    ])?;
    let phi = Endomorphism::block_scalar(&g, &[alpha.clone(), mn.clone()])?;
    diagonal_on(&phi, (0, 0), (1, 0), p, &n, k)
}

/// The same family on a larger group: t a Prufer coordinate at p, e a
/// localized coordinate with p in its primes; the caller vouches that the
/// p-part of (n phi - m) is invertible on <t> and kills e.
pub fn diagonal_on(phi: &Endomorphism, t: Coord, e: Coord, p: u64, n: &BigInt, k: u32) -> Result<Witness, WitnessError> {
    let w = Witness {
        kind: Kind::Diagonal,
        mode: Mode::Rin,
        endo: phi.clone(),
        fixed: Vec::new(),
        parts: vec![
            Part::ladder(e.0, CopyRule::Fixed(e.1), Q::one(), p, -1),
            Part::ladder(t.0, CopyRule::Fixed(t.1), Q::one(), p, -1),
        ],
        shape: Shape::Single,
        growth: Growth::Power { coef: n.abs(), base: BigInt::from(p), shift: 1 },
        verified_to: 0,
        reason: format!("{p} divides the denominator of the action on A/T while A has {p}-divisible torsion"),
    };
    w.finish(k)
}

/// X_i = <e_1, ..., e_i> in an omega localized slot on which phi = m/n:
/// sections |n|^i (right) or |m|^i (left).
pub fn free_rank_witness(g: &GroupDescriptor, mn: &Q, k: u32) -> Result<Witness, WitnessError> {
    if mn.denom().abs().is_one() {
        return Err(pre(format!("{} is an integer; the free-rank family needs n != 1", fmt_rational(mn))));
    }
    let phi = Endomorphism::scalar(g, mn)?;
    free_rank_on(&phi, mn, Mode::Rin, k)
}

pub fn free_rank_on(phi: &Endomorphism, mn: &Q, mode: Mode, k: u32) -> Result<Witness, WitnessError> {
    let g = &phi.ambient;
    let slot = (0..g.slots.len())
        .find(|&s| {
            g.slots[s].mult.is_omega()
                && matches!(g.slots[s].atom, Atom::Localized(_))
                && phi.each_coef(s, s) == *mn
        })
        .ok_or_else(|| pre(format!("no omega localized slot on which phi = {}", fmt_rational(mn))))?;
    let base = match mode {
        Mode::Rin => mn.denom().abs(),
        Mode::Lin => mn.numer().abs(),
    };
    let growth = if base.is_zero() { Growth::Rank(1) } else { Growth::Power { coef: BigInt::one(), base: base.clone(), shift: 0 } };
    if base.is_one() {
        return Err(pre("the relevant part of m/n is a unit"));
    }
    let w = Witness {
        kind: Kind::FreeRank,
        mode,
        endo: phi.clone(),
        fixed: Vec::new(),
        parts: vec![Part::constant(slot, CopyRule::Shift(0), Q::one())],
        shape: if base.is_zero() { Shape::Single } else { Shape::Cumulative },
        growth,
        verified_to: 0,
        reason: format!("phi = {} on infinitely many independent copies of slot {}", fmt_rational(mn), slot + 1),
    };
    w.finish(k)
}

/// Localized coordinates, one representative copy per omega slot.
fn free_coords(g: &GroupDescriptor) -> Vec<Coord> {
    let mut out = Vec::new();
    for (s, slot) in g.slots.iter().enumerate() {
        if slot.atom.is_torsion() {
            continue;
        }
        match slot.mult {
            Mult::Omega => out.push((s, 0)),
            Mult::Finite(m) => out.extend((0..m as u64).map(|c| (s, c))),
        }
    }
    out
}

fn free_projection(g: &GroupDescriptor, x: &Element) -> Vec<(Coord, Q)> {
    x.coords.iter().filter(|(c, _)| !g.atom(**c).is_torsion()).map(|(c, v)| (*c, v.clone())).collect()
}

/// Is the free part of phi(a) a rational multiple of a?
fn proportional(g: &GroupDescriptor, a: &Element, b: &Element) -> bool {
    let fa = free_projection(g, a);
    let fb = free_projection(g, b);
    let (c0, v0) = &fa[0];
    let lambda = b.get(*c0) / v0;
    fb.iter().all(|(c, v)| *v == &lambda * a.get(*c)) && fa.iter().all(|(c, v)| b.get(*c) == &lambda * v)
}

/// X = <a> with phi(a) independent of a modulo torsion.
pub fn independence_witness(phi: &Endomorphism, k: u32) -> Result<Witness, WitnessError> {
    let g = &phi.ambient;
    let coords = free_coords(g);
    let mut cands: Vec<Element> = coords.iter().map(|&c| Element::unit_at(c, Q::one())).collect();
    for (i, &s) in coords.iter().enumerate() {
        for &t in &coords[i + 1..] {
            let mut e = Element::unit_at(s, Q::one());
            e.add_at(t, Q::one());
            cands.push(e);
        }
    }
    let a = cands
        .into_iter()
        .find(|a| !proportional(g, a, &phi.apply_linear(a)))
        .ok_or_else(|| pre("phi acts on A/T as a scalar; no independence witness"))?;
    let w = Witness {
        kind: Kind::Independence,
        mode: Mode::Rin,
        endo: phi.clone(),
        fixed: vec![a],
        parts: Vec::new(),
        shape: Shape::Single,
        growth: Growth::Rank(1),
        verified_to: 0,
        reason: "phi is not a scalar on A/T".into(),
    };
    w.finish(k)
}

/// Torsion slots at p: omega coordinates, and Prufer coordinates of either
/// multiplicity (omega ones at copy 0).
fn torsion_coords(g: &GroupDescriptor, p: u64) -> (Vec<Coord>, Vec<Coord>) {
    let mut omega = Vec::new();
    let mut prufer = Vec::new();
    for (s, slot) in g.slots.iter().enumerate() {
        if slot.atom.prime() != Some(p) {
            continue;
        }
        match (slot.mult, &slot.atom) {
            (Mult::Omega, Atom::Prufer { .. }) => {
                omega.push((s, 0));
                prufer.push((s, 0));
            }
            (Mult::Omega, _) => omega.push((s, 0)),
            (Mult::Finite(m), Atom::Prufer { .. }) => prufer.extend((0..m as u64).map(|c| (s, c))),
            _ => {}
        }
    }
    (omega, prufer)
}

fn torsion_primes(g: &GroupDescriptor) -> Vec<u64> {
    let mut ps: Vec<u64> = g.slots.iter().filter_map(|s| s.atom.prime()).collect();
    ps.sort();
    ps.dedup();
    ps
}

/// A family inside the torsion part at the first prime where one exists:
/// fresh omega copies of a vector y moved by phi, or a deepening vector in
/// the finite-rank divisible part.
pub fn primary_witness(phi: &Endomorphism, mode: Mode, k: u32) -> Result<Witness, WitnessError> {
    let g = &phi.ambient;
    for p in torsion_primes(g) {
        if let Some(w) = primary_at(phi, p, mode)? {
            return w.finish(k);
        }
    }
    Err(pre(match mode {
        Mode::Rin => "phi is a multiplication, up to finite rank, on each primary component",
        Mode::Lin => "fewer than infinitely many components where phi fails to be invertible",
    }))
}

/// Unchecked family at a single prime, if one is found there.
pub fn primary_at(phi: &Endomorphism, p: u64, mode: Mode) -> Result<Option<Witness>, WitnessError> {
    let g = &phi.ambient;
    let (omega, prufer) = torsion_coords(g, p);
    let base = |fixed: Vec<Element>, parts, shape, growth, reason: String| Witness {
        kind: Kind::Primary,
        mode,
        endo: phi.clone(),
        fixed,
        parts,
        shape,
        growth,
        verified_to: 0,
        reason,
    };
    if !omega.is_empty() {
        if let Some((y, o)) = find_moved(phi, &omega, p, mode == Mode::Lin) {
            let c0 = terms_clear_copy(phi);
            let parts = y.coords.iter().map(|((s, _), v)| Part::constant(*s, CopyRule::Shift(c0), v.clone())).collect();
            let why = match mode {
                Mode::Rin => format!("phi is not a multiplication on the omega part at {p}"),
                Mode::Lin => format!("phi is not an invertible multiplication on the omega part at {p}"),
            };
            return Ok(Some(base(Vec::new(), parts, Shape::Cumulative, Growth::power(o), why)));
        }
    }
    if prufer.is_empty() {
        return Ok(None);
    }
    let found = match mode {
        Mode::Rin => prufer_direction(phi, &prufer, p),
        Mode::Lin => prufer
            .iter()
            .find(|&&s| prufer.iter().all(|&t| crate::row::coef_between(phi, s, t).is_zero()))
            .map(|&s| (vec![s], 0)),
    };
    let Some((dir, v)) = found else { return Ok(None) };
    let parts = dir.iter().map(|&(s, c)| Part::ladder(s, CopyRule::Fixed(c), Q::one(), p, v)).collect();
    let why = match mode {
        Mode::Rin => format!("phi is not a scalar on the divisible part at {p}"),
        Mode::Lin => format!("phi kills a Prufer coordinate at {p}"),
    };
    Ok(Some(base(Vec::new(), parts, Shape::Single, Growth::power(p), why)))
}
