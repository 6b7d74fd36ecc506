//! Canonical subgroups on random slot descriptors.

use inertia_group::parse::parse_group;
use inertia_group::{component, n_socle, torsion_part, Atom, GroupDescriptor, PrimeSet};
use num_bigint::BigInt;
use proptest::prelude::*;

fn atom_text() -> impl Strategy<Value = String> {
    let p = prop_oneof![Just(2u64), Just(3), Just(5), Just(7)];
    prop_oneof![
        (p.clone(), 1u32..4).prop_map(|(p, e)| format!("Z({p}^{e})")),
        p.clone().prop_map(|p| format!("Z({p}^inf)")),
        Just("Z".to_string()),
        Just("Q".to_string()),
        p.prop_map(|p| format!("Q[{p}]")),
    ]
}

fn group() -> impl Strategy<Value = GroupDescriptor> {
    prop::collection::vec((atom_text(), prop_oneof![Just(""), Just("^2"), Just("^w")]), 1..5).prop_map(|v| {
        let s: Vec<String> = v.into_iter().map(|(a, m)| format!("{a}{m}")).collect();
        parse_group(&s.join(" + ")).unwrap()
    })
}

proptest! {
    #[test]
    fn torsion_part_is_idempotent(g in group()) {
        let t = torsion_part(&g);
        prop_assert_eq!(torsion_part(&t), t);
    }

    #[test]
    fn components_sit_in_torsion(g in group(), ps in prop::sample::subsequence(vec![2u64, 3, 5, 7], 0..4)) {
        let c = component(&g, &PrimeSet::finite(ps).unwrap());
        let t = torsion_part(&g);
        for s in &c.slots {
            prop_assert!(t.slots.contains(s));
        }
    }

    #[test]
    fn socle_is_killed_by_n(g in group(), n in 1u64..400) {
        let s = n_socle(&g, &BigInt::from(n)).unwrap();
        for slot in &s.slots {
            match slot.atom {
                Atom::Cyclic { p, e } => prop_assert_eq!(n % p.pow(e), 0),
                _ => prop_assert!(false, "non-cyclic slot in a socle"),
            }
        }
    }
}
