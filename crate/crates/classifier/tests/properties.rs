use inertia_classify::{classify_general, classify_multiplication, validate_certificate};
use inertia_endo::parse::parse_endo;
use inertia_endo::Endomorphism;
use inertia_group::parse::parse_group;
use inertia_group::{Atom, GroupDescriptor, Mult, Q};
use inertia_witness::verify_witness;
use num_bigint::BigInt;
use proptest::prelude::*;

const PRIMES: [u64; 4] = [2, 3, 5, 7];

fn atom() -> impl Strategy<Value = String> {
    let mult = prop_oneof![Just(""), Just("^2"), Just("^w")];
    let body = prop_oneof![
        (0usize..4, 1u32..3).prop_map(|(i, e)| format!("Z({}^{e})", PRIMES[i])),
        (0usize..4).prop_map(|i| format!("Z({}^inf)", PRIMES[i])),
        Just("Z".to_string()),
        (0usize..4, proptest::option::of(0usize..4)).prop_map(|(i, j)| match j {
            Some(j) if j != i => format!("Q[{},{}]", PRIMES[i.min(j)], PRIMES[i.max(j)]),
            _ => format!("Q[{}]", PRIMES[i]),
        }),
    ];
    (body, mult).prop_map(|(b, m)| format!("{b}{m}"))
}

fn group() -> impl Strategy<Value = GroupDescriptor> {
    proptest::collection::vec(atom(), 1..4).prop_filter_map("valid group", |atoms| parse_group(&atoms.join(" + ")).ok())
}

/// Right inertia of multiplication by m/n, read off the shape of the group.
fn rin_by_shape(g: &GroupDescriptor, q: &Q) -> bool {
    q.denom() == &BigInt::from(1) || g.torsion_free_rank().is_some()
}

fn has_min_at(g: &GroupDescriptor, p: u64) -> bool {
    g.slots.iter().all(|s| s.atom.prime() != Some(p) || !s.mult.is_omega())
}

fn infinite_at(g: &GroupDescriptor, p: u64) -> bool {
    g.slots
        .iter()
        .any(|s| s.atom.prime() == Some(p) && (s.mult.is_omega() || matches!(s.atom, Atom::Prufer { .. })))
}

/// Left inertia of multiplication by m/n, from the shape of the group.
fn lin_by_shape(g: &GroupDescriptor, q: &Q) -> bool {
    let m = q.numer();
    let divides = |p: u64| (m % BigInt::from(p)) == BigInt::from(0);
    if g.is_finite() {
        return true;
    }
    match g.torsion_free_rank() {
        None => m == &BigInt::from(1) || m == &BigInt::from(-1),
        Some(r) if r > 0 => m != &BigInt::from(0) && PRIMES.iter().all(|&p| !divides(p) || has_min_at(g, p)),
        Some(_) => PRIMES
            .iter()
            .filter(|&&p| infinite_at(g, p))
            .all(|&p| !divides(p) || (has_min_at(g, p) && m != &BigInt::from(0))),
    }
}

/// A random diagonal endomorphism with scalars that are well defined slot by
/// slot; localized slots share one scalar when `shared`.
fn block_endo(g: &GroupDescriptor, seeds: &[(i64, i64)], shared: bool) -> Option<Endomorphism> {
    let mut parts = Vec::new();
    for (s, slot) in g.slots.iter().enumerate() {
        let (a, b) = seeds[s % seeds.len()];
        let (a, b) = if shared && !slot.atom.is_torsion() { seeds[0] } else { (a, b) };
        let c = match &slot.atom {
            Atom::Localized(ps) if ps.contains(b as u64) => format!("{a}/{b}"),
            _ => a.to_string(),
        };
        parts.push(format!("{}: {c}", s + 1));
    }
    parse_endo(g, &format!("block{{{}}}", parts.join("; "))).ok()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn multiplications_follow_the_group_shape(g in group(), m in -4i64..6, n in prop_oneof![Just(1i64), Just(2), Just(3), Just(6)]) {
        let q = Q::new(BigInt::from(m), BigInt::from(n));
        prop_assume!(Endomorphism::scalar(&g, &q).is_ok());
        let v = classify_multiplication(&q, &g, 10).unwrap();
        prop_assert_eq!(v.rin, rin_by_shape(&g, &q), "rin on {}", g.to_text());
        prop_assert_eq!(v.lin, lin_by_shape(&g, &q), "lin on {}", g.to_text());
    }

    #[test]
    fn families_are_decided_endomorphism_by_endomorphism(
        g in group(),
        s1 in proptest::collection::vec((-3i64..5, prop_oneof![Just(2i64), Just(3), Just(1)]), 1..4),
        s2 in proptest::collection::vec((-3i64..5, prop_oneof![Just(2i64), Just(3), Just(1)]), 1..4),
        shared in any::<bool>(),
    ) {
        let (Some(a), Some(b)) = (block_endo(&g, &s1, shared), block_endo(&g, &s2, shared)) else { return Ok(()) };
        let both = classify_general(&[a.clone(), b.clone()], 8).unwrap();
        let one = classify_general(&[a], 8).unwrap();
        let two = classify_general(&[b], 8).unwrap();
        prop_assert_eq!(both.rin, one.rin && two.rin);
        prop_assert_eq!(both.lin, one.lin && two.lin);
        for v in [&both, &one, &two] {
            if v.rin {
                validate_certificate(v.certificate.as_ref().unwrap()).unwrap();
            } else {
                let w = v.witness.as_ref().expect("a witness for every negative answer");
                prop_assert!(verify_witness(w, 8).unwrap().ok);
            }
            if v.lin && g.torsion_free_rank().is_some() {
                prop_assert!(v.rin, "left inertia without right inertia on finite rank");
            }
        }
    }
}

#[test]
fn omega_shape_check() {
    let g = parse_group("Z(2)^w + Q").unwrap();
    assert!(matches!(g.slots[0].mult, Mult::Omega));
    assert!(!has_min_at(&g, 2) && has_min_at(&g, 3));
}
