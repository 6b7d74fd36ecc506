//! Per-endomorphism decision, with a witness whenever right inertia fails.

use inertia_endo::{coef, image_finite, Endomorphism};
use inertia_group::rational::{inv_mod, is_integer, pow, vp};
use inertia_group::{Atom, Element, Mult, PrimeSet, SectionSize, Q};
use inertia_witness::build::{diagonal_on, free_rank_on, primary_at, primary_witness, terms_clear_copy};
use inertia_witness::{independence_witness, CopyRule, Growth, Kind, Mode, Part, Shape, Witness};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::blocks::{essential_kappa, free_action, free_coords, torsion_primes, Form, PrimeBlock};
use crate::ClassifyError;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum EndoForm {
    /// phi - m has finite image
    A { m: BigInt },
    /// the general shape; mu is the action on A/T when the rank is positive
    B { mu: Option<Q> },
}

#[derive(Clone, Debug)]
pub struct EndoVerdict {
    pub rin: bool,
    pub lin: bool,
    pub form: Option<EndoForm>,
    pub witness: Option<Witness>,
    pub lin_witness: Option<Witness>,
    pub reason: String,
}

impl EndoVerdict {
    fn yes(form: EndoForm) -> EndoVerdict {
        EndoVerdict { rin: true, lin: true, form: Some(form), witness: None, lin_witness: None, reason: String::new() }
    }

    fn no(witness: Option<Witness>, reason: impl Into<String>) -> EndoVerdict {
        EndoVerdict { rin: false, lin: false, form: None, witness, lin_witness: None, reason: reason.into() }
    }
}

pub fn classify_endo(phi: &Endomorphism, k: u32) -> Result<EndoVerdict, ClassifyError> {
    phi.check()?;
    let g = &phi.ambient;
    if g.is_finite() {
        return Ok(EndoVerdict::yes(EndoForm::A { m: BigInt::zero() }));
    }
    match g.torsion_free_rank() {
        None => infinite_rank(phi, k),
        Some(_) => finite_rank(phi, k),
    }
}

fn as_lin(w: &Witness, k: u32) -> Option<Witness> {
    let mut l = w.clone();
    l.mode = Mode::Lin;
    l.finish(k).ok()
}

fn not_scalar(phi: &Endomorphism, k: u32) -> EndoVerdict {
    let w = independence_witness(phi, k).ok();
    let mut v = EndoVerdict::no(w.clone(), "phi is not a scalar on A/T");
    v.lin_witness = w.as_ref().and_then(|w| as_lin(w, k));
    v
}

/// mu on every slot where it is defined, 0 on finite cyclic slots; None if
/// it is undefined on an infinite slot.
fn scalar_where_defined(phi: &Endomorphism, mu: &Q) -> Option<Endomorphism> {
    let g = &phi.ambient;
    let mut cs = Vec::new();
    for slot in &g.slots {
        if coef::well_defined(&slot.atom, &slot.atom, mu).is_ok() {
            cs.push(mu.clone());
        } else if slot.atom.is_finite() && !slot.mult.is_omega() {
            cs.push(Q::zero());
        } else {
            return None;
        }
    }
    Endomorphism::block_scalar(g, &cs).ok()
}

fn infinite_rank(phi: &Endomorphism, k: u32) -> Result<EndoVerdict, ClassifyError> {
    let mu = match free_action(phi) {
        Form::Scalar(mu) => mu,
        _ => return Ok(not_scalar(phi, k)),
    };
    let mut v = if is_integer(&mu) {
        let m = mu.to_integer();
        let psi = phi.minus_scalar(&mu)?;
        match image_finite(&psi).size {
            SectionSize::Finite(_) => EndoVerdict::yes(EndoForm::A { m }),
            _ => EndoVerdict::no(pairing_infinite(phi, &psi, k), "phi - m has infinite image on the torsion"),
        }
    } else {
        EndoVerdict::no(free_rank_on(phi, &mu, Mode::Rin, k).ok(), "phi is not integral on A/T")
    };
    // left inertia: phi = +-1/n up to finite image
    if mu.numer().abs().is_one() {
        v.lin = match scalar_where_defined(phi, &mu) {
            Some(lam) => matches!(image_finite(&phi.sub(&lam)?).size, SectionSize::Finite(_)),
            None => false,
        };
    } else {
        v.lin = false;
        v.lin_witness = free_rank_on(phi, &mu, Mode::Lin, k).ok();
    }
    Ok(v)
}

/// Families for phi - m of infinite image when A/T has infinite rank.
fn pairing_infinite(phi: &Endomorphism, psi: &Endomorphism, k: u32) -> Option<Witness> {
    let g = &phi.ambient;
    let star = (0..g.slots.len()).find(|&s| g.slots[s].mult.is_omega() && !g.slots[s].atom.is_torsion())?;
    let c0 = terms_clear_copy(phi);
    let mut parts = Vec::new();
    let growth;
    if !psi.each.is_empty() {
        let (s, y, z) = moved_unit(psi)?;
        if g.slots[s].atom.is_torsion() {
            parts.push(Part::constant(star, CopyRule::Shift(c0), Q::one()));
        }
        parts.push(Part::constant(s, CopyRule::Shift(c0), y));
        growth = Growth::power(inertia_witness::row::order(&z));
    } else {
        let (src, p) = psi.copy.iter().find_map(|((s, t), _)| match (g.atom(*s), g.atom(*t)) {
            (Atom::Prufer { p }, Atom::Prufer { p: q }) if p == q => Some((*s, *p)),
            (Atom::Localized(ps), Atom::Prufer { p }) if ps.contains(*p) => Some((*s, *p)),
            _ => None,
        })?;
        let v = column_valuation(psi, src, p);
        parts.push(Part::constant(star, CopyRule::Shift(c0), Q::one()));
        parts.push(Part::ladder(src.0, CopyRule::Fixed(src.1), Q::one(), p, v));
        growth = Growth::power(p);
    }
    let w = Witness {
        kind: Kind::Pairing,
        mode: Mode::Rin,
        endo: phi.clone(),
        fixed: Vec::new(),
        parts,
        shape: Shape::Cumulative,
        growth,
        verified_to: 0,
        reason: "phi differs from an integer by a map of infinite image".into(),
    };
    w.finish(k).ok()
}

/// Least p-valuation of the coefficients from `src` into Prufer coordinates
/// at p.
fn column_valuation(psi: &Endomorphism, src: inertia_group::Coord, p: u64) -> i64 {
    let g = &psi.ambient;
    psi.copy
        .iter()
        .filter(|((s, t), _)| *s == src && matches!(g.atom(*t), Atom::Prufer { p: q } if *q == p))
        .map(|(_, c)| vp(c, p).unwrap())
        .min()
        .unwrap_or(0)
}

/// A value y on some omega slot s (copy 0) with psi(y) != 0.
fn moved_unit(psi: &Endomorphism) -> Option<(usize, Q, Element)> {
    let g = &psi.ambient;
    let mut sources: Vec<usize> = psi.each.keys().map(|(_, s)| *s).collect();
    sources.sort();
    sources.dedup();
    for s in sources {
        let column: Vec<(usize, &Q)> = psi.each.iter().filter(|((_, src), _)| *src == s).map(|((t, _), c)| (*t, c)).collect();
        let deep = 1 + column
            .iter()
            .filter_map(|(t, c)| g.slots[*t].atom.prime().and_then(|p| vp(c, p)))
            .map(|v| v.max(0))
            .max()
            .unwrap_or(0) as u32;
        let mut values = vec![Q::one()];
        match &g.slots[s].atom {
            Atom::Cyclic { p, e } => values.extend((1..=*e).map(|d| Q::new(BigInt::one(), pow(*p, d)))),
            Atom::Prufer { p } => values.extend((1..=deep).map(|d| Q::new(BigInt::one(), pow(*p, d)))),
            Atom::Localized(ps) => {
                for (t, _) in &column {
                    if let Some(p) = g.slots[*t].atom.prime() {
                        if ps.contains(p) {
                            values.extend((1..=deep).map(|d| Q::new(BigInt::one(), pow(p, d))));
                        }
                    }
                }
            }
        }
        for y in values {
            let x = g.reduce(Element::unit_at((s, 0), y.clone()));
            if x.is_zero() {
                continue;
            }
            let z = psi.apply_linear(&x);
            if !z.is_zero() {
                return Some((s, y, z));
            }
        }
    }
    None
}

fn primes_of(n: &BigInt) -> Vec<u64> {
    inertia_group::primes::factor(n).map(|f| f.into_iter().map(|(p, _)| p).collect()).unwrap_or_default()
}

fn finite_rank(phi: &Endomorphism, k: u32) -> Result<EndoVerdict, ClassifyError> {
    let g = &phi.ambient;
    let mu = match free_action(phi) {
        Form::Empty => None,
        Form::Scalar(mu) => Some(mu),
        Form::Not => return Ok(not_scalar(phi, k)),
    };
    let blocks: Vec<PrimeBlock> = torsion_primes(g).into_iter().map(|p| PrimeBlock::of(phi, p)).collect();
    let (m, n) = match &mu {
        Some(q) => (q.numer().clone(), q.denom().clone()),
        None => (BigInt::zero(), BigInt::one()),
    };
    let pi = primes_of(&n);
    if let Some(v) = right_failure(phi, &mu, &blocks, &pi, k) {
        let mut v = v;
        v.lin_witness = match &mu {
            Some(q) if q.is_zero() => free_lin_witness(phi, k),
            _ => primary_witness(phi, Mode::Lin, k).ok(),
        };
        return Ok(v);
    }
    // left inertia on top of right inertia
    let mut lin = mu.as_ref().map_or(true, |q| !q.is_zero());
    for b in &blocks {
        let ok = if !b.dw.is_empty() {
            b.prufer_scalar().map_or(false, |a| b.is_unit(&a))
        } else {
            let cw_ok = b.cw.is_empty() || b.alpha_b().map_or(false, |a| b.is_unit(&a));
            let df_ok = b.df.is_empty() || b.prufer_scalar().map_or(false, |c| !c.is_zero());
            cw_ok && df_ok
        };
        lin &= ok;
    }
    let form = match case_a(phi, &mu, &blocks) {
        Some(m) => EndoForm::A { m },
        None => EndoForm::B { mu: mu.clone() },
    };
    let mut v = EndoVerdict::yes(form);
    v.lin = lin;
    if !lin {
        v.lin_witness = if m.is_zero() && mu.is_some() {
            free_lin_witness(phi, k)
        } else {
            primary_witness(phi, Mode::Lin, k).ok()
        };
    }
    Ok(v)
}

/// X = <e> with phi(e) torsion: X meets phi X trivially.
fn free_lin_witness(phi: &Endomorphism, k: u32) -> Option<Witness> {
    let e = *free_coords(&phi.ambient).first()?;
    Witness {
        kind: Kind::FreeRank,
        mode: Mode::Lin,
        endo: phi.clone(),
        fixed: vec![Element::unit_at(e, Q::one())],
        parts: Vec::new(),
        shape: Shape::Single,
        growth: Growth::Rank(1),
        verified_to: 0,
        reason: "phi vanishes on A/T".into(),
    }
    .finish(k)
    .ok()
}

/// The first violated condition for right inertia, with its witness.
fn right_failure(
    phi: &Endomorphism,
    mu: &Option<Q>,
    blocks: &[PrimeBlock],
    pi: &[u64],
    k: u32,
) -> Option<EndoVerdict> {
    let g = &phi.ambient;
    let n = mu.as_ref().map_or_else(BigInt::one, |q| q.denom().clone());
    if mu.is_some() {
        if let Some((e, p, v)) = essential_kappa(phi) {
            let shift = v + vp(&Q::from_integer(n.clone()), p).unwrap_or(0);
            let w = Witness {
                kind: Kind::Pairing,
                mode: Mode::Rin,
                endo: phi.clone(),
                fixed: Vec::new(),
                parts: vec![Part::ladder(e.0, CopyRule::Fixed(e.1), Q::one(), p, shift - 1)],
                shape: Shape::Single,
                growth: Growth::Power { coef: n.abs(), base: BigInt::from(p), shift: 1 },
                verified_to: 0,
                reason: format!("a {p}-divisible free coordinate maps onto Z({p}^inf)"),
            };
            return Some(EndoVerdict::no(w.finish(k).ok(), format!("free part maps onto Z({p}^inf)")));
        }
    }
    for b in blocks {
        if !b.rin_alone() {
            let w = primary_at(phi, b.p, Mode::Rin).ok().flatten().and_then(|w| w.finish(k).ok());
            return Some(EndoVerdict::no(w, format!("the {}-primary part is not of the allowed shape", b.p)));
        }
    }
    let Some(mu) = mu else { return None };
    let frees = free_coords(g);
    for b in blocks {
        if pi.contains(&b.p) {
            if let Some(&t) = b.prufer_coords().first() {
                let w = diagonal_on(phi, t, frees[0], b.p, &n, k).ok();
                return Some(EndoVerdict::no(w, format!("{} divides n but A has {}-divisible torsion", b.p, b.p)));
            }
            continue;
        }
        if !b.free {
            continue;
        }
        let Some(beta) = b.prufer_scalar() else { continue };
        if &beta == mu {
            continue;
        }
        let t = b.prufer_coords()[0];
        let e = *frees.iter().find(|c| matches!(g.atom(**c), Atom::Localized(ps) if ps.contains(b.p)))?;
        let d = Q::from_integer(n.clone()) * &beta - Q::from_integer(mu.numer().clone());
        let v = vp(&d, b.p).unwrap();
        let w = Witness {
            kind: Kind::Pairing,
            mode: Mode::Rin,
            endo: phi.clone(),
            fixed: Vec::new(),
            parts: vec![
                Part::ladder(e.0, CopyRule::Fixed(e.1), Q::one(), b.p, -1),
                Part::ladder(t.0, CopyRule::Fixed(t.1), Q::one(), b.p, v - 1),
            ],
            shape: Shape::Single,
            growth: Growth::Power { coef: n.abs(), base: BigInt::from(b.p), shift: 1 },
            verified_to: 0,
            reason: format!("the divisible {}-part is not multiplied by the action on A/T", b.p),
        };
        return Some(EndoVerdict::no(w.finish(k).ok(), format!("divisible {}-part disagrees with A/T", b.p)));
    }
    None
}

/// Residue of a p-local rational modulo p^e.
fn residue(c: &Q, p: u64, e: u32) -> BigInt {
    let m = pow(p, e);
    (c.numer() * inv_mod(c.denom(), &m)).mod_floor(&m)
}

/// An integer m with phi - m of finite image, if there is one.
fn case_a(phi: &Endomorphism, mu: &Option<Q>, blocks: &[PrimeBlock]) -> Option<BigInt> {
    let m = match mu {
        Some(q) if is_integer(q) => q.to_integer(),
        Some(_) => return None,
        None => {
            let mut fixed: Option<BigInt> = None;
            let mut congr: Vec<(BigInt, BigInt)> = Vec::new();
            for b in blocks {
                if !b.has_infinite() {
                    continue;
                }
                let a = b.mf(None)?;
                if b.dw.is_empty() && b.df.is_empty() {
                    let e = b.cw.iter().map(|(_, e, _)| *e).max().unwrap();
                    congr.push((residue(&a, b.p, e), pow(b.p, e)));
                } else {
                    if !is_integer(&a) {
                        return None;
                    }
                    match &fixed {
                        Some(f) if *f != a.to_integer() => return None,
                        _ => fixed = Some(a.to_integer()),
                    }
                }
            }
            match fixed {
                Some(f) => f,
                None => crt(&congr),
            }
        }
    };
    let psi = phi.minus_scalar(&Q::from_integer(m.clone())).ok()?;
    match image_finite(&psi).size {
        SectionSize::Finite(_) => Some(m),
        _ => None,
    }
}

/// Least nonnegative solution of x = r_i mod m_i for coprime moduli.
fn crt(congr: &[(BigInt, BigInt)]) -> BigInt {
    let mut x = BigInt::zero();
    let mut modulus = BigInt::one();
    for (r, m) in congr {
        // x + modulus * t = r mod m
        let t = ((r - &x) * inv_mod(&modulus, m)).mod_floor(m);
        x += &modulus * t;
        modulus *= m;
    }
    x
}

/// Whether a slot's multiplicity and atom make it part of the bounded or
/// divisible torsion; used by the certificate builder.
pub fn is_prufer_slot(atom: &Atom, mult: Mult) -> bool {
    matches!(atom, Atom::Prufer { .. }) && !mult.is_omega()
}

pub fn prime_set(ps: &[u64]) -> PrimeSet {
    PrimeSet::finite(ps.to_vec()).expect("primes")
}
