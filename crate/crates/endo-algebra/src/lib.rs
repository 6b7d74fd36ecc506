//! Endomorphisms of descriptor groups.
//!
//! Normal form: a generic matrix acting copywise between omega slots, a
//! copy-level matrix among finite-multiplicity slots, and finitary rank-one
//! terms x -> k(x) * t with k(x) = q^f * proj_q(w * x_s) and q^f * t = 0.
//! Entries are rational coefficients read through [`coef`].

pub mod algebra;
pub mod coef;
pub mod convert;
pub mod image;
pub mod json;
pub mod parse;

use std::collections::BTreeMap;

use inertia_group::rational::{fmt_rational, pow};
use inertia_group::{Coord, Element, GroupDescriptor, GroupError, Mult, Q};
use num_traits::{One, Zero};

pub use image::{image_finite, ImageInfo};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum EndoError {
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error("not well defined: {0}")]
    IllDefined(String),
    #[error("ambient mismatch: {0}")]
    Ambient(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
}

/// x -> (q^f * proj_q(weight * x_source)) * target
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FinTerm {
    pub source: Coord,
    pub weight: Q,
    pub p: u64,
    pub f: u32,
    pub target: Element,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Endomorphism {
    pub ambient: GroupDescriptor,
    /// (target slot, source slot) -> coefficient, omega slots, copywise
    pub each: BTreeMap<(usize, usize), Q>,
    /// (source coord, target coord) -> coefficient, finite slots
    pub copy: BTreeMap<(Coord, Coord), Q>,
    pub terms: Vec<FinTerm>,
}

/// Raw input entries before normalisation.
#[derive(Clone, Debug)]
pub enum Entry {
    /// slot-to-slot, copywise
    Slot { target: usize, source: usize, c: Q },
    Copy { target: Coord, source: Coord, c: Q },
    Term(FinTerm),
}

impl Endomorphism {
    pub fn zero(g: &GroupDescriptor) -> Self {
        Endomorphism { ambient: g.clone(), each: BTreeMap::new(), copy: BTreeMap::new(), terms: Vec::new() }
    }

    /// Multiplication by c on every slot.
    pub fn scalar(g: &GroupDescriptor, c: &Q) -> Result<Self, EndoError> {
        let entries = (0..g.slots.len())
            .map(|s| Entry::Slot { target: s, source: s, c: c.clone() })
            .collect();
        Self::from_entries(g, entries)
    }

    pub fn identity(g: &GroupDescriptor) -> Self {
        Self::scalar(g, &Q::one()).expect("identity is well defined")
    }

    /// A different scalar on each slot.
    pub fn block_scalar(g: &GroupDescriptor, cs: &[Q]) -> Result<Self, EndoError> {
        let entries = cs
            .iter()
            .enumerate()
            .map(|(s, c)| Entry::Slot { target: s, source: s, c: c.clone() })
            .collect();
        Self::from_entries(g, entries)
    }

    pub fn from_entries(g: &GroupDescriptor, entries: Vec<Entry>) -> Result<Self, EndoError> {
        let mut phi = Endomorphism::zero(g);
        for e in entries {
            match e {
                Entry::Slot { target, source, c } => {
                    let (st, ss) = (slot_of(g, target)?, slot_of(g, source)?);
                    match (st.mult, ss.mult) {
                        (Mult::Omega, Mult::Omega) => {
                            *phi.each.entry((target, source)).or_insert_with(Q::zero) += c;
                        }
                        (Mult::Finite(a), Mult::Finite(b)) if a == b => {
                            for i in 0..a as u64 {
                                *phi.copy.entry(((source, i), (target, i))).or_insert_with(Q::zero) +=
                                    c.clone();
                            }
                        }
                        _ => {
                            return Err(EndoError::Unsupported(format!(
                                "copywise entry between slots {} and {} of different multiplicity",
                                source + 1,
                                target + 1
                            )))
                        }
                    }
                }
                Entry::Copy { target, source, c } => {
                    g.check_coord(target)?;
                    g.check_coord(source)?;
                    if g.slots[target.0].mult.is_omega() || g.slots[source.0].mult.is_omega() {
                        return Err(EndoError::Unsupported(
                            "copy-level entries on omega slots; use a finitary term".into(),
                        ));
                    }
                    *phi.copy.entry((source, target)).or_insert_with(Q::zero) += c;
                }
                Entry::Term(t) => phi.terms.push(t),
            }
        }
        phi.check()?;
        Ok(phi.normalized())
    }

    /// Well-definedness of every entry.
    pub fn check(&self) -> Result<(), EndoError> {
        let g = &self.ambient;
        for ((t, s), c) in &self.each {
            coef::well_defined(&g.slots[*s].atom, &g.slots[*t].atom, c).map_err(|m| {
                EndoError::IllDefined(format!("slot {} <- slot {}: {m}", t + 1, s + 1))
            })?;
        }
        for ((s, t), c) in &self.copy {
            coef::well_defined(g.atom(*s), g.atom(*t), c).map_err(|m| {
                EndoError::IllDefined(format!(
                    "{}.{} <- {}.{}: {m}",
                    t.0 + 1,
                    t.1 + 1,
                    s.0 + 1,
                    s.1 + 1
                ))
            })?;
        }
        for t in &self.terms {
            check_term(g, t)?;
        }
        Ok(())
    }

    /// Drop zero maps and merge terms sharing source, weight and modulus.
    pub fn normalized(mut self) -> Self {
        let g = &self.ambient;
        self.each.retain(|(t, s), c| !coef::is_zero_map(&g.slots[*s].atom, &g.slots[*t].atom, c));
        self.copy.retain(|(s, t), c| !coef::is_zero_map(g.atom(*s), g.atom(*t), c));
        let mut merged: BTreeMap<(Coord, Q, u64, u32), Element> = BTreeMap::new();
        for t in std::mem::take(&mut self.terms) {
            let key = (t.source, t.weight.clone(), t.p, t.f);
            let acc = merged.entry(key).or_default();
            *acc = g.add(acc, &t.target);
        }
        for ((source, weight, p, f), target) in merged {
            let atom = g.atom(source);
            if target.is_zero() || coef::is_zero_map(atom, &coef::cyclic(p, f), &weight) {
                continue;
            }
            self.terms.push(FinTerm { source, weight, p, f, target });
        }
        self
    }

    pub fn is_linear(&self) -> bool {
        self.terms.is_empty()
    }

    /// The linear part (terms dropped).
    pub fn linear_part(&self) -> Endomorphism {
        let mut l = self.clone();
        l.terms.clear();
        l
    }

    /// Coefficient slot t <- slot s on omega slots.
    pub fn each_coef(&self, t: usize, s: usize) -> Q {
        self.each.get(&(t, s)).cloned().unwrap_or_else(Q::zero)
    }

    pub fn copy_coef(&self, t: Coord, s: Coord) -> Q {
        self.copy.get(&(s, t)).cloned().unwrap_or_else(Q::zero)
    }

    pub fn same_ambient(&self, other: &Endomorphism) -> Result<(), EndoError> {
        if self.ambient != other.ambient {
            return Err(EndoError::Ambient(format!("{} vs {}", self.ambient, other.ambient)));
        }
        Ok(())
    }

    /// Human-readable normal form in the input grammar.
    pub fn to_text(&self) -> String {
        let mut parts = Vec::new();
        if !self.each.is_empty() {
            let e: Vec<String> = self
                .each
                .iter()
                .map(|((t, s), c)| format!("{}<-{}: {}", t + 1, s + 1, fmt_rational(c)))
                .collect();
            parts.push(format!("each{{{}}}", e.join("; ")));
        }
        if !self.copy.is_empty() {
            let e: Vec<String> = self
                .copy
                .iter()
                .map(|((s, t), c)| {
                    format!("{}.{}<-{}.{}: {}", t.0 + 1, t.1 + 1, s.0 + 1, s.1 + 1, fmt_rational(c))
                })
                .collect();
            parts.push(format!("matrix{{{}}}", e.join("; ")));
        }
        if !self.terms.is_empty() {
            let e: Vec<String> = self
                .terms
                .iter()
                .map(|t| {
                    format!(
                        "{}.{} * {} mod {}^{} -> {}",
                        t.source.0 + 1,
                        t.source.1 + 1,
                        fmt_rational(&t.weight),
                        t.p,
                        t.f,
                        element_text(&self.ambient, &t.target)
                    )
                })
                .collect();
            parts.push(format!("finitary{{{}}}", e.join("; ")));
        }
        if parts.is_empty() {
            "zero".into()
        } else {
            parts.join(" + ")
        }
    }
}

/// Element in the input grammar (cyclic coordinates as residues).
pub fn element_text(g: &GroupDescriptor, e: &Element) -> String {
    let parts: Vec<String> = e
        .coords
        .iter()
        .map(|(c, v)| {
            let shown = match g.atom(*c) {
                inertia_group::Atom::Cyclic { p, e } => (v * Q::from_integer(pow(*p, *e))).to_integer().to_string(),
                _ => fmt_rational(v),
            };
            format!("{}.{}: {}", c.0 + 1, c.1 + 1, shown)
        })
        .collect();
    format!("[{}]", parts.join(", "))
}

fn slot_of(g: &GroupDescriptor, s: usize) -> Result<&inertia_group::Slot, EndoError> {
    g.slots
        .get(s)
        .ok_or_else(|| EndoError::Group(GroupError::Invalid(format!("slot {} out of range", s + 1))))
}

pub(crate) fn check_term(g: &GroupDescriptor, t: &FinTerm) -> Result<(), EndoError> {
    g.check_coord(t.source)?;
    if !inertia_group::primes::is_prime(t.p) || t.f == 0 {
        return Err(EndoError::IllDefined(format!("term modulus {}^{} is not a prime power", t.p, t.f)));
    }
    coef::well_defined(g.atom(t.source), &coef::cyclic(t.p, t.f), &t.weight)
        .map_err(|m| EndoError::IllDefined(format!("term functional: {m}")))?;
    let target = g.canonical(t.target.clone())?;
    if target != t.target {
        return Err(EndoError::IllDefined("term target not in canonical form".into()));
    }
    let pf = pow(t.p, t.f);
    for (c, v) in &target.coords {
        let atom = g.atom(*c);
        if atom.prime() != Some(t.p) || !(&pf % v.denom()).is_zero() {
            return Err(EndoError::IllDefined(format!(
                "term target coordinate {}.{} is not killed by {}^{}",
                c.0 + 1,
                c.1 + 1,
                t.p,
                t.f
            )));
        }
    }
    Ok(())
}
