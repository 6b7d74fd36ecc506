//! Group descriptors: direct sums of atoms with multiplicities.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::element::Element;
use crate::lattice::{smith, Row};
use crate::primes::{factor, PrimeSet};
use crate::rational::{pow, Q};
use crate::GroupError;

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Atom {
    Cyclic { p: u64, e: u32 },
    Prufer { p: u64 },
    Localized(PrimeSet),
}

impl Atom {
    pub fn prime(&self) -> Option<u64> {
        match self {
            Atom::Cyclic { p, .. } | Atom::Prufer { p } => Some(*p),
            Atom::Localized(_) => None,
        }
    }

    pub fn is_torsion(&self) -> bool {
        !matches!(self, Atom::Localized(_))
    }

    pub fn is_finite(&self) -> bool {
        matches!(self, Atom::Cyclic { .. })
    }

    /// Value of the canonical generator: 1/p^e, 1/p, or 1.
    pub fn unit(&self) -> Q {
        match self {
            Atom::Cyclic { p, e } => Q::new(BigInt::one(), pow(*p, *e)),
            Atom::Prufer { p } => Q::new(BigInt::one(), BigInt::from(*p)),
            Atom::Localized(_) => Q::one(),
        }
    }

    /// Is `v` a legal coordinate value (torsion values taken mod 1)?
    pub fn admits(&self, v: &Q) -> Result<bool, GroupError> {
        match self {
            Atom::Cyclic { p, e } => Ok((pow(*p, *e) % v.denom()).is_zero()),
            Atom::Prufer { p } => Ok(crate::rational::den_is_p_power(v, *p)),
            Atom::Localized(pi) => pi.admits(v.denom()),
        }
    }
}

impl fmt::Display for Atom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Atom::Cyclic { p, e } => write!(f, "Z({p}^{e})"),
            Atom::Prufer { p } => write!(f, "Z({p}^inf)"),
            Atom::Localized(PrimeSet::All) => write!(f, "Q"),
            Atom::Localized(pi) if pi.is_empty() => write!(f, "Z"),
            Atom::Localized(pi) => write!(f, "Q[{pi}]"),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Mult {
    Finite(u32),
    Omega,
}

impl Mult {
    pub fn is_omega(&self) -> bool {
        matches!(self, Mult::Omega)
    }
    pub fn finite(&self) -> Option<u32> {
        match self {
            Mult::Finite(k) => Some(*k),
            Mult::Omega => None,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Slot {
    pub atom: Atom,
    pub mult: Mult,
}

/// Position of a coordinate: slot index and copy index (both 0-based inside).
pub type Coord = (usize, u64);

/// Finitely generated presentation Z^n / rows, kept alongside its
/// normalised slots so generator-level input can be translated.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Presentation {
    pub relations: Vec<Row>,
    pub ngens: usize,
    /// image of generator j in slot coordinates
    pub gen_images: Vec<Element>,
    /// for each finite slot coordinate, the generator vector of its unit
    pub unit_preimages: Vec<(Coord, Row)>,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GroupDescriptor {
    pub slots: Vec<Slot>,
    pub presentation: Option<Presentation>,
}

impl GroupDescriptor {
    pub fn new(slots: Vec<Slot>) -> Result<Self, GroupError> {
        for s in &slots {
            if let Mult::Finite(0) = s.mult {
                return Err(GroupError::Invalid("multiplicity 0".into()));
            }
            match &s.atom {
                Atom::Cyclic { p, e } => {
                    if !crate::primes::is_prime(*p) || *e == 0 {
                        return Err(GroupError::Invalid(format!("bad cyclic atom Z({p}^{e})")));
                    }
                }
                Atom::Prufer { p } => {
                    if !crate::primes::is_prime(*p) {
                        return Err(GroupError::Invalid(format!("{p} is not prime")));
                    }
                }
                Atom::Localized(_) => {}
            }
        }
        Ok(GroupDescriptor { slots, presentation: None })
    }

    pub fn trivial() -> Self {
        GroupDescriptor { slots: Vec::new(), presentation: None }
    }

    /// Normalise Z^n / rowspace(relations) into cyclic slots via Smith form.
    pub fn from_presentation(relations: Vec<Row>, ngens: usize) -> Result<Self, GroupError> {
        if relations.iter().any(|r| r.len() != ngens) {
            return Err(GroupError::Invalid("relation row length differs from generator count".into()));
        }
        let s = smith(&relations, ngens);
        // (atom, invariant index, CRT multiplier making y = mult be the unit)
        let mut parts: Vec<(Atom, usize, BigInt)> = Vec::new();
        for (j, d) in s.diag.iter().enumerate() {
            if d.is_zero() {
                parts.push((Atom::Localized(PrimeSet::empty()), j, BigInt::one()));
            } else if !d.is_one() {
                for (p, e) in factor(d)? {
                    let pe = pow(p, e);
                    let rest = d / &pe;
                    // y ≡ 1 mod p^e, y ≡ 0 mod rest
                    let y = (&rest * crate::rational::inv_mod(&rest, &pe)).mod_floor(d);
                    parts.push((Atom::Cyclic { p, e }, j, y));
                }
            }
        }
        parts.sort_by(|a, b| a.0.cmp(&b.0).then(a.1.cmp(&b.1)));
        let mut slots: Vec<Slot> = Vec::new();
        let mut place: Vec<(Coord, usize, BigInt, Atom)> = Vec::new();
        for (atom, j, y) in parts {
            match slots.last_mut() {
                Some(s) if s.atom == atom => {
                    let k = s.mult.finite().unwrap();
                    s.mult = Mult::Finite(k + 1);
                    place.push(((slots.len() - 1, k as u64), j, y, atom));
                }
                _ => {
                    slots.push(Slot { atom: atom.clone(), mult: Mult::Finite(1) });
                    place.push(((slots.len() - 1, 0), j, y, atom));
                }
            }
        }
        let mut g = GroupDescriptor { slots, presentation: None };
        // generator j has y-coordinates row j of V
        let mut gen_images = Vec::new();
        for row in &s.v {
            let mut el = Element::zero();
            for (coord, j, _, atom) in &place {
                let val = match atom {
                    Atom::Cyclic { p, e } => Q::new(row[*j].clone(), pow(*p, *e)),
                    _ => Q::from_integer(row[*j].clone()),
                };
                el.add_at(*coord, val);
            }
            gen_images.push(g.canonical(el)?);
        }
        let mut unit_preimages = Vec::new();
        for (coord, j, y, _) in &place {
            let x: Row = s.v_inv[*j].iter().map(|t| t * y).collect();
            unit_preimages.push((*coord, x));
        }
        g.presentation = Some(Presentation { relations, ngens, gen_images, unit_preimages });
        Ok(g)
    }

    pub fn slot(&self, i: usize) -> &Slot {
        &self.slots[i]
    }

    pub fn atom(&self, c: Coord) -> &Atom {
        &self.slots[c.0].atom
    }

    pub fn is_torsion_free(&self) -> bool {
        self.slots.iter().all(|s| !s.atom.is_torsion())
    }

    pub fn is_periodic(&self) -> bool {
        self.slots.iter().all(|s| s.atom.is_torsion())
    }

    pub fn is_finite(&self) -> bool {
        self.slots.iter().all(|s| s.atom.is_finite() && !s.mult.is_omega())
    }

    /// Torsion-free rank; None when infinite.
    pub fn torsion_free_rank(&self) -> Option<u64> {
        let mut r = 0u64;
        for s in &self.slots {
            if let Atom::Localized(_) = s.atom {
                r += s.mult.finite()? as u64;
            }
        }
        Some(r)
    }

    /// Order of a finite group.
    pub fn order(&self) -> Option<BigInt> {
        if !self.is_finite() {
            return None;
        }
        let mut n = BigInt::one();
        for s in &self.slots {
            if let Atom::Cyclic { p, e } = s.atom {
                n *= num_traits::pow(pow(p, e), s.mult.finite().unwrap() as usize);
            }
        }
        Some(n)
    }

    /// All coordinates of finite-multiplicity slots.
    pub fn finite_coords(&self) -> Vec<Coord> {
        let mut v = Vec::new();
        for (i, s) in self.slots.iter().enumerate() {
            if let Mult::Finite(k) = s.mult {
                for c in 0..k as u64 {
                    v.push((i, c));
                }
            }
        }
        v
    }

    pub fn check_coord(&self, c: Coord) -> Result<(), GroupError> {
        let s = self
            .slots
            .get(c.0)
            .ok_or_else(|| GroupError::Invalid(format!("slot {} out of range", c.0 + 1)))?;
        if let Mult::Finite(k) = s.mult {
            if c.1 >= k as u64 {
                return Err(GroupError::Invalid(format!(
                    "copy {} out of range for slot {}",
                    c.1 + 1,
                    c.0 + 1
                )));
            }
        }
        Ok(())
    }

    /// Validate coordinates and reduce torsion values into [0, 1).
    pub fn canonical(&self, el: Element) -> Result<Element, GroupError> {
        let mut out = Element::zero();
        for (c, v) in el.coords {
            self.check_coord(c)?;
            let atom = self.atom(c);
            let v = if atom.is_torsion() { crate::rational::frac(&v) } else { v };
            if !atom.admits(&v)? {
                return Err(GroupError::Invalid(format!(
                    "value {} not in {} at {}.{}",
                    crate::rational::fmt_rational(&v),
                    atom,
                    c.0 + 1,
                    c.1 + 1
                )));
            }
            out.add_at(c, v);
        }
        Ok(out)
    }

    pub fn add(&self, a: &Element, b: &Element) -> Element {
        let mut s = a.clone();
        for (c, v) in &b.coords {
            s.add_at(*c, v.clone());
        }
        self.reduce(s)
    }

    pub fn scale(&self, k: &BigInt, a: &Element) -> Element {
        let mut s = Element::zero();
        for (c, v) in &a.coords {
            s.add_at(*c, v * Q::from_integer(k.clone()));
        }
        self.reduce(s)
    }

    pub fn neg(&self, a: &Element) -> Element {
        self.scale(&-BigInt::one(), a)
    }

    /// Reduce torsion values mod 1 without validation.
    pub fn reduce(&self, el: Element) -> Element {
        let mut out = Element::zero();
        for (c, v) in el.coords {
            let v = if self.atom(c).is_torsion() { crate::rational::frac(&v) } else { v };
            out.add_at(c, v);
        }
        out
    }

    /// Element from a generator-coefficient vector (presentations only).
    pub fn from_generators(&self, x: &[BigInt]) -> Result<Element, GroupError> {
        let pres = self
            .presentation
            .as_ref()
            .ok_or_else(|| GroupError::Invalid("group has no generator presentation".into()))?;
        if x.len() != pres.ngens {
            return Err(GroupError::Invalid("generator vector has wrong length".into()));
        }
        let mut el = Element::zero();
        for (k, g) in x.iter().zip(pres.gen_images.iter()) {
            if !k.is_zero() {
                el = self.add(&el, &self.scale(k, g));
            }
        }
        Ok(el)
    }

    /// Slots with their multiplicities in text form.
    pub fn to_text(&self) -> String {
        if let Some(p) = &self.presentation {
            let rows: Vec<String> = p
                .relations
                .iter()
                .map(|r| r.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(","))
                .collect();
            if rows.is_empty() {
                return format!("fg{{{}}}", vec!["0"; p.ngens].join(","));
            }
            return format!("fg{{{}}}", rows.join(";"));
        }
        if self.slots.is_empty() {
            return "0".into();
        }
        self.slots
            .iter()
            .map(|s| match s.mult {
                Mult::Finite(1) => s.atom.to_string(),
                Mult::Finite(k) => format!("{}^{k}", s.atom),
                Mult::Omega => format!("{}^w", s.atom),
            })
            .collect::<Vec<_>>()
            .join(" + ")
    }
}

impl fmt::Display for GroupDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_text())
    }
}
