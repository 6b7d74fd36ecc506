//! The parts of an endomorphism that survive modulo finite-image maps: its
//! action on A/T, and per prime the action on the omega torsion slots and on
//! the finite-rank divisible coordinates.

use inertia_endo::Endomorphism;
use inertia_group::rational::vp;
use inertia_group::{Atom, Coord, GroupDescriptor, Mult, Q};
use num_traits::Zero;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Form {
    Empty,
    Scalar(Q),
    Not,
}

/// Action on A/T.
pub fn free_action(phi: &Endomorphism) -> Form {
    let g = &phi.ambient;
    let mut seen: Option<Q> = None;
    let mut agree = |c: Q| -> bool {
        match &seen {
            None => {
                seen = Some(c);
                true
            }
            Some(s) => *s == c,
        }
    };
    for (s, slot) in g.slots.iter().enumerate() {
        if slot.atom.is_torsion() {
            continue;
        }
        match slot.mult {
            Mult::Omega => {
                for (t, other) in g.slots.iter().enumerate() {
                    if other.atom.is_torsion() || !other.mult.is_omega() {
                        continue;
                    }
                    let c = phi.each_coef(t, s);
                    if t == s {
                        if !agree(c) {
                            return Form::Not;
                        }
                    } else if !c.is_zero() {
                        return Form::Not;
                    }
                }
            }
            Mult::Finite(m) => {
                for i in 0..m as u64 {
                    for t in free_coords(g) {
                        let c = phi.copy_coef(t, (s, i));
                        if t == (s, i) {
                            if !agree(c) {
                                return Form::Not;
                            }
                        } else if !c.is_zero() {
                            return Form::Not;
                        }
                    }
                }
            }
        }
    }
    match seen {
        None => Form::Empty,
        Some(c) => Form::Scalar(c),
    }
}

/// Localized coordinates of finite slots.
pub fn free_coords(g: &GroupDescriptor) -> Vec<Coord> {
    let mut out = Vec::new();
    for (s, slot) in g.slots.iter().enumerate() {
        if let (Atom::Localized(_), Mult::Finite(m)) = (&slot.atom, slot.mult) {
            out.extend((0..m as u64).map(|c| (s, c)));
        }
    }
    out
}

/// Is some localized slot p-divisible?
pub fn free_at(g: &GroupDescriptor, p: u64) -> bool {
    g.slots.iter().any(|s| matches!(&s.atom, Atom::Localized(ps) if ps.contains(p)))
}

/// A map from a localized coordinate onto Prufer coordinates at a prime
/// dividing into it: (source, prime, least valuation of its coefficients).
pub fn essential_kappa(phi: &Endomorphism) -> Option<(Coord, u64, i64)> {
    let g = &phi.ambient;
    let mut best: Option<(Coord, u64, i64)> = None;
    for ((s, t), c) in &phi.copy {
        let (Atom::Localized(ps), Atom::Prufer { p }) = (g.atom(*s), g.atom(*t)) else { continue };
        if !ps.contains(*p) {
            continue;
        }
        let v = vp(c, *p).unwrap();
        best = match best {
            Some((bs, bp, bv)) if bs == *s && bp == *p => Some((bs, bp, bv.min(v))),
            Some(b) => Some(b),
            None => Some((*s, *p, v)),
        };
    }
    best
}

#[derive(Clone, Debug)]
pub struct PrimeBlock {
    pub p: u64,
    /// omega cyclic slots: (slot, exponent, diagonal coefficient)
    pub cw: Vec<(usize, u32, Q)>,
    /// omega Prufer slots
    pub dw: Vec<(usize, Q)>,
    /// finite Prufer coordinates
    pub df: Vec<(Coord, Q)>,
    /// finite cyclic slots
    pub cf: Vec<usize>,
    pub omega_offdiag: bool,
    pub df_offdiag: bool,
    /// some localized slot is p-divisible
    pub free: bool,
}

pub fn torsion_primes(g: &GroupDescriptor) -> Vec<u64> {
    let mut ps: Vec<u64> = g.slots.iter().filter_map(|s| s.atom.prime()).collect();
    ps.sort();
    ps.dedup();
    ps
}

impl PrimeBlock {
    pub fn of(phi: &Endomorphism, p: u64) -> PrimeBlock {
        let g = &phi.ambient;
        let mut b = PrimeBlock {
            p,
            cw: Vec::new(),
            dw: Vec::new(),
            df: Vec::new(),
            cf: Vec::new(),
            omega_offdiag: false,
            df_offdiag: false,
            free: free_at(g, p),
        };
        let at_p = |s: usize| g.slots[s].atom.prime() == Some(p);
        for (s, slot) in g.slots.iter().enumerate() {
            if !at_p(s) {
                continue;
            }
            match (&slot.atom, slot.mult) {
                (Atom::Cyclic { e, .. }, Mult::Omega) => b.cw.push((s, *e, phi.each_coef(s, s))),
                (Atom::Prufer { .. }, Mult::Omega) => b.dw.push((s, phi.each_coef(s, s))),
                (Atom::Prufer { .. }, Mult::Finite(m)) => {
                    for c in 0..m as u64 {
                        b.df.push(((s, c), phi.copy_coef((s, c), (s, c))));
                    }
                }
                (Atom::Cyclic { .. }, Mult::Finite(_)) => b.cf.push(s),
                _ => {}
            }
        }
        b.omega_offdiag = phi.each.keys().any(|&(t, s)| t != s && at_p(s) && at_p(t));
        b.df_offdiag = phi.copy.keys().any(|&(s, t)| {
            s != t && matches!(g.atom(s), Atom::Prufer { p: q } if *q == p) && matches!(g.atom(t), Atom::Prufer { p: q } if *q == p)
        });
        b
    }

    pub fn has_infinite(&self) -> bool {
        !(self.cw.is_empty() && self.dw.is_empty() && self.df.is_empty())
    }

    /// Single scalar on the omega part, if the omega part is a multiplication.
    pub fn omega(&self) -> Form {
        if self.cw.is_empty() && self.dw.is_empty() {
            return Form::Empty;
        }
        if self.omega_offdiag {
            return Form::Not;
        }
        let alpha = match self.dw.first() {
            Some((_, a)) => {
                if self.dw.iter().any(|(_, c)| c != a) {
                    return Form::Not;
                }
                a.clone()
            }
            None => self.cw.iter().max_by_key(|(_, e, _)| *e).unwrap().2.clone(),
        };
        if self.cw.iter().all(|(_, e, c)| self.congruent(c, &alpha, *e)) {
            Form::Scalar(alpha)
        } else {
            Form::Not
        }
    }

    pub fn df_form(&self) -> Form {
        match self.df.first() {
            None => Form::Empty,
            Some(_) if self.df_offdiag => Form::Not,
            Some((_, b)) if self.df.iter().all(|(_, c)| c == b) => Form::Scalar(b.clone()),
            Some(_) => Form::Not,
        }
    }

    /// c = d modulo p^e as p-local rationals.
    pub fn congruent(&self, c: &Q, d: &Q, e: u32) -> bool {
        let diff = c - d;
        diff.is_zero() || vp(&diff, self.p).unwrap() >= e as i64
    }

    /// Right inertia of the p-primary part on its own.
    pub fn rin_alone(&self) -> bool {
        let (om, df) = (self.omega(), self.df_form());
        if om == Form::Not || df == Form::Not {
            return false;
        }
        if self.dw.is_empty() {
            return true;
        }
        match (om, df) {
            (Form::Scalar(a), Form::Scalar(b)) => a == b,
            _ => true,
        }
    }

    /// Scalar of the p-part as a multiplication up to finite image, with the
    /// divisible part forced to `forced` when given.
    pub fn mf(&self, forced: Option<&Q>) -> Option<Q> {
        let om = self.omega();
        let df = self.df_form();
        if om == Form::Not || df == Form::Not {
            return None;
        }
        let mut prufer: Option<Q> = None;
        if let (Some(_), Form::Scalar(a)) = (self.dw.first(), &om) {
            prufer = Some(a.clone());
        }
        if let Form::Scalar(b) = &df {
            match &prufer {
                Some(a) if a != b => return None,
                _ => prufer = Some(b.clone()),
            }
        }
        if let (Some(a), Some(f)) = (&prufer, forced) {
            if a != f {
                return None;
            }
        }
        let alpha = match (prufer, forced, &om) {
            (Some(a), _, _) => a,
            (None, Some(f), _) => f.clone(),
            (None, None, Form::Scalar(a)) => a.clone(),
            (None, None, _) => Q::zero(),
        };
        if self.cw.iter().all(|(_, e, c)| self.congruent(c, &alpha, *e)) {
            Some(alpha)
        } else {
            None
        }
    }

    /// The scalar of the omega cyclic part (any representative), if any.
    pub fn alpha_b(&self) -> Option<Q> {
        match self.omega() {
            Form::Scalar(a) if !self.cw.is_empty() => Some(a),
            _ => None,
        }
    }

    /// The scalar on every Prufer coordinate, if they share one.
    pub fn prufer_scalar(&self) -> Option<Q> {
        if let (Some(_), Form::Scalar(a)) = (self.dw.first(), self.omega()) {
            return Some(a);
        }
        match self.df_form() {
            Form::Scalar(b) => Some(b),
            _ => None,
        }
    }

    /// Prufer coordinates (omega ones at copy 0).
    pub fn prufer_coords(&self) -> Vec<Coord> {
        let mut v: Vec<Coord> = self.dw.iter().map(|(s, _)| (*s, 0)).collect();
        v.extend(self.df.iter().map(|(c, _)| *c));
        v
    }

    pub fn is_unit(&self, c: &Q) -> bool {
        !c.is_zero() && vp(c, self.p).unwrap() == 0
    }
}
