//! Materialised subgroup tables with meet and join lookups.

use crate::closure;
use crate::group::{bits, Elem, FiniteAbelianGroup};
use crate::lattice::{enumerate, recount, Lattice};
use crate::OracleError;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Subgroup {
    pub gens: Vec<Elem>,
    pub bits: Vec<u64>,
    pub order: u32,
}

impl Subgroup {
    pub fn from_bits(g: &FiniteAbelianGroup, bits: Vec<u64>) -> Self {
        let mut members = Vec::new();
        bits::members(&bits, &mut members);
        // greedy generating set, largest element orders first
        members.sort_by_key(|&a| (std::cmp::Reverse(g.element_order(a)), a));
        let mut span = vec![0u64; bits.len()];
        bits::set(&mut span, 0);
        let mut gens = Vec::new();
        let mut scratch = Vec::new();
        for a in members {
            if !bits::get(&span, a) {
                closure::join_cyclic(g, &mut span, a, &mut scratch);
                gens.push(a);
            }
        }
        let order = bits::count(&bits);
        Subgroup { gens, bits, order }
    }

    pub fn generated(g: &FiniteAbelianGroup, gens: &[Elem]) -> Self {
        Self::from_bits(g, closure::span(g, gens))
    }

    pub fn contains(&self, a: Elem) -> bool {
        bits::get(&self.bits, a)
    }

    pub fn is_subgroup_of(&self, other: &Subgroup) -> bool {
        bits::subset(&self.bits, &other.bits)
    }
}

pub struct SubgroupTable {
    pub group: FiniteAbelianGroup,
    lattice: Lattice,
    pub subgroups: Vec<Subgroup>,
}

impl SubgroupTable {
    pub fn len(&self) -> usize {
        self.subgroups.len()
    }

    pub fn is_empty(&self) -> bool {
        self.subgroups.is_empty()
    }

    pub fn index_of(&self, s: &Subgroup) -> Option<usize> {
        self.lattice.index_of(&s.bits)
    }

    pub fn meet(&self, i: usize, j: usize) -> usize {
        let b: Vec<u64> = self.subgroups[i].bits.iter().zip(&self.subgroups[j].bits).map(|(x, y)| x & y).collect();
        self.lattice.index_of(&b).expect("table closed under intersection")
    }

    pub fn join(&self, i: usize, j: usize) -> usize {
        let mut b = self.subgroups[i].bits.clone();
        let mut scratch = Vec::new();
        for &a in &self.subgroups[j].gens {
            closure::join_cyclic(&self.group, &mut b, a, &mut scratch);
        }
        self.lattice.index_of(&b).expect("table closed under joins")
    }

    /// Count from the independent second enumeration.
    pub fn recount(&self) -> usize {
        recount(&self.group)
    }

    /// Covering pairs (i, j): subgroup i is maximal in subgroup j.
    pub fn covers(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for (j, y) in self.subgroups.iter().enumerate() {
            for (i, x) in self.subgroups.iter().enumerate() {
                if x.order < y.order
                    && inertia_group::primes::is_prime((y.order / x.order) as u64)
                    && x.is_subgroup_of(y)
                {
                    out.push((i, j));
                }
            }
        }
        out
    }
}

pub fn enumerate_subgroups(g: &FiniteAbelianGroup, limit: usize) -> Result<SubgroupTable, OracleError> {
    let lattice = enumerate(g, limit)?;
    let subgroups = (0..lattice.len()).map(|i| Subgroup::from_bits(g, lattice.set(i).to_vec())).collect();
    Ok(SubgroupTable { group: g.clone(), lattice, subgroups })
}
