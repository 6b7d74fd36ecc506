//! Sparse elements: rational coordinate values keyed by (slot, copy).

use std::collections::BTreeMap;

use num_traits::Zero;

use crate::descriptor::Coord;
use crate::rational::Q;

#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Element {
    pub coords: BTreeMap<Coord, Q>,
}

impl Element {
    pub fn zero() -> Self {
        Element { coords: BTreeMap::new() }
    }

    pub fn unit_at(c: Coord, v: Q) -> Self {
        let mut e = Element::zero();
        e.add_at(c, v);
        e
    }

    pub fn is_zero(&self) -> bool {
        self.coords.is_empty()
    }

    /// Add v at c (no reduction); zero entries are dropped.
    pub fn add_at(&mut self, c: Coord, v: Q) {
        if v.is_zero() {
            return;
        }
        let e = self.coords.entry(c).or_insert_with(Q::zero);
        *e += v;
        if e.is_zero() {
            self.coords.remove(&c);
        }
    }

    pub fn get(&self, c: Coord) -> Q {
        self.coords.get(&c).cloned().unwrap_or_else(Q::zero)
    }
}
