//! Subgroup handles: finite generating sets plus divisible closures.

use crate::descriptor::{Atom, GroupDescriptor, Mult};
use crate::element::Element;
use crate::primes::PrimeSet;
use crate::rational::Q;
use crate::GroupError;

/// The handle contains Z[1/primes] * scale in every copy of `slot`.
/// On a Prufer or cyclic slot this is the whole slot.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct DivClosure {
    pub slot: usize,
    pub primes: PrimeSet,
    pub scale: Q,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct SubgroupHandle {
    pub gens: Vec<Element>,
    pub closures: Vec<DivClosure>,
    pub label: String,
}

impl SubgroupHandle {
    pub fn zero() -> Self {
        SubgroupHandle::default()
    }

    pub fn generated(gens: Vec<Element>) -> Self {
        SubgroupHandle { gens, closures: Vec::new(), label: String::new() }
    }

    pub fn with_label(mut self, label: impl Into<String>) -> Self {
        self.label = label.into();
        self
    }

    pub fn is_finitely_generated(&self) -> bool {
        self.closures.is_empty()
    }

    /// A whole slot (all copies) as a handle.
    pub fn whole_slot(g: &GroupDescriptor, slot: usize) -> Result<Self, GroupError> {
        let s = g
            .slots
            .get(slot)
            .ok_or_else(|| GroupError::Invalid(format!("slot {} out of range", slot + 1)))?;
        if s.mult == Mult::Omega {
            return Err(GroupError::Unsupported("whole omega slot as a handle".into()));
        }
        let primes = match &s.atom {
            Atom::Localized(pi) => pi.clone(),
            Atom::Prufer { p } | Atom::Cyclic { p, .. } => PrimeSet::Finite(vec![*p]),
        };
        let mut h = SubgroupHandle::zero();
        h.closures.push(DivClosure { slot, primes, scale: s.atom.unit() });
        Ok(h)
    }

    pub fn sum(&self, other: &SubgroupHandle) -> SubgroupHandle {
        let mut h = self.clone();
        h.gens.extend(other.gens.iter().cloned());
        for c in &other.closures {
            if !h.closures.contains(c) {
                h.closures.push(c.clone());
            }
        }
        h.label = String::new();
        h
    }

    pub fn validate(&self, g: &GroupDescriptor) -> Result<(), GroupError> {
        for x in &self.gens {
            g.canonical(x.clone())?;
        }
        for c in &self.closures {
            let s = g.slots.get(c.slot).ok_or_else(|| {
                GroupError::Invalid(format!("closure slot {} out of range", c.slot + 1))
            })?;
            if s.mult == Mult::Omega {
                return Err(GroupError::Unsupported(format!(
                    "divisible closure on omega slot {}",
                    c.slot + 1
                )));
            }
            if let Atom::Localized(_) = s.atom {
                if !s.atom.admits(&c.scale)? {
                    return Err(GroupError::Invalid("closure scale outside its slot".into()));
                }
            }
        }
        Ok(())
    }
}
