//! Canonical subgroups given by slot selection: torsion part, pi-components,
//! n-socles and the divisible part.

use num_bigint::BigInt;

use crate::descriptor::{Atom, GroupDescriptor, Slot};
use crate::primes::{factor, PrimeSet};
use crate::GroupError;

fn select(a: &GroupDescriptor, keep: impl Fn(&Atom) -> bool) -> GroupDescriptor {
    let slots = a.slots.iter().filter(|s| keep(&s.atom)).cloned().collect();
    GroupDescriptor { slots, presentation: None }
}

/// Cyclic and Prufer slots. Presentations are already split into slots.
pub fn torsion_part(a: &GroupDescriptor) -> GroupDescriptor {
    select(a, |x| x.is_torsion())
}

/// Torsion slots whose prime lies in pi.
pub fn component(a: &GroupDescriptor, pi: &PrimeSet) -> GroupDescriptor {
    select(a, |x| x.prime().map_or(false, |p| pi.contains(p)))
}

/// A[n] = { a : n a = 0 }.
pub fn n_socle(a: &GroupDescriptor, n: &BigInt) -> Result<GroupDescriptor, GroupError> {
    if n <= &BigInt::from(0) {
        return Err(GroupError::Invalid("socle index must be positive".into()));
    }
    let fs = factor(n)?;
    let k_of = |p: u64| fs.iter().find(|(q, _)| *q == p).map_or(0, |(_, k)| *k);
    let mut slots = Vec::new();
    for s in &a.slots {
        let atom = match s.atom {
            Atom::Cyclic { p, e } => Atom::Cyclic { p, e: e.min(k_of(p)) },
            Atom::Prufer { p } => Atom::Cyclic { p, e: k_of(p) },
            Atom::Localized(_) => continue,
        };
        if let Atom::Cyclic { e: 0, .. } = atom {
            continue;
        }
        slots.push(Slot { atom, mult: s.mult });
    }
    Ok(GroupDescriptor { slots, presentation: None })
}

/// Prufer and Localized(ALL) slots; divisibility at a single prime does not
/// count.
pub fn divisible_part(a: &GroupDescriptor) -> GroupDescriptor {
    if a.presentation.is_some() {
        return GroupDescriptor::trivial();
    }
    select(a, |x| matches!(x, Atom::Prufer { .. } | Atom::Localized(PrimeSet::All)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::parse_group;

    fn g(s: &str) -> GroupDescriptor {
        parse_group(s).unwrap()
    }

    #[test]
    fn examples() {
        assert_eq!(torsion_part(&g("Z(4) + Z(3^inf) + Q[2]")), g("Z(4) + Z(3^inf)"));
        assert_eq!(torsion_part(&g("Z^w")), GroupDescriptor::trivial());
        assert_eq!(torsion_part(&g("fg{2,0}")), g("Z(2)"));
        let pi = PrimeSet::finite(vec![2, 5]).unwrap();
        assert_eq!(component(&g("Z(4) + Z(9) + Z(5^inf)"), &pi), g("Z(4) + Z(5^inf)"));
        assert_eq!(component(&g("Z(4) + Z(9)"), &PrimeSet::empty()), GroupDescriptor::trivial());
        assert_eq!(n_socle(&g("Z(8)"), &2.into()).unwrap(), g("Z(2)"));
        assert_eq!(n_socle(&g("Z(3^inf)"), &9.into()).unwrap(), g("Z(9)"));
        assert_eq!(n_socle(&g("Q[2]"), &6.into()).unwrap(), GroupDescriptor::trivial());
        assert_eq!(divisible_part(&g("Z(4) + Z(5^inf) + Q")), g("Z(5^inf) + Q"));
        assert_eq!(divisible_part(&g("Z(2)^w")), GroupDescriptor::trivial());
        assert_eq!(divisible_part(&g("Q[2,3]")), GroupDescriptor::trivial());
    }
}
