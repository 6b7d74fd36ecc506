//! Seeded random desk-scale inputs: groups with at most four atoms over the
//! primes up to 7, structured endomorphisms on them, and finitely generated
//! subgroups.

use inertia_classify::{classify_general, inverse};
use inertia_endo::coef::well_defined;
use inertia_endo::{Endomorphism, Entry};
use inertia_group::parse::parse_group;
use inertia_group::{Atom, Coord, Element, GroupDescriptor, PrimeSet, SubgroupHandle, Q};
use num_bigint::BigInt;
use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub const DESK_PRIMES: [u64; 4] = [2, 3, 5, 7];

const TRIES: usize = 200;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn prime<R: Rng>(rng: &mut R) -> u64 {
    *DESK_PRIMES.choose(rng).unwrap()
}

fn atom_text<R: Rng>(rng: &mut R, ftfr: bool) -> String {
    let (body, torsion) = match rng.gen_range(0..5) {
        0 | 1 => (format!("Z({}^{})", prime(rng), rng.gen_range(1..=2)), true),
        2 => (format!("Z({}^inf)", prime(rng)), true),
        3 => ("Z".to_string(), false),
        _ => {
            let mut ps: Vec<u64> = DESK_PRIMES.iter().copied().filter(|_| rng.gen_bool(0.35)).collect();
            if ps.is_empty() {
                ps.push(prime(rng));
            }
            let ps: Vec<String> = ps.iter().map(u64::to_string).collect();
            (format!("Q[{}]", ps.join(",")), false)
        }
    };
    let mult = match rng.gen_range(0..4) {
        0 if !(ftfr && !torsion) => "^w",
        1 => "^2",
        _ => "",
    };
    format!("{body}{mult}")
}

/// A group with one to four atoms. With `ftfr` the torsion-free part has
/// finite rank.
pub fn desk_group<R: Rng>(rng: &mut R, ftfr: bool) -> GroupDescriptor {
    loop {
        let n = rng.gen_range(1..=4);
        let atoms: Vec<String> = (0..n).map(|_| atom_text(rng, ftfr)).collect();
        if let Ok(g) = parse_group(&atoms.join(" + ")) {
            return g;
        }
    }
}

fn smooth<R: Rng>(rng: &mut R, ps: &[u64]) -> BigInt {
    let mut d = BigInt::from(1);
    for &p in ps {
        if rng.gen_bool(0.4) {
            d *= p;
        }
    }
    d
}

/// A coefficient with denominators `tgt` can absorb. Whether it is well
/// defined also depends on the source.
fn coefficient<R: Rng>(rng: &mut R, tgt: &Atom) -> Q {
    let a = BigInt::from(rng.gen_range(-3i64..=5));
    match tgt {
        Atom::Localized(PrimeSet::Finite(ps)) => Q::new(a, smooth(rng, ps)),
        Atom::Localized(PrimeSet::All) => Q::new(a, smooth(rng, &DESK_PRIMES)),
        _ => Q::from_integer(a),
    }
}

/// Diagonal scalars per slot, then off-diagonal slot and copy entries, all
/// kept only when well defined.
pub fn random_structured_endo<R: Rng>(rng: &mut R, g: &GroupDescriptor) -> Endomorphism {
    loop {
        let mut entries = Vec::new();
        let shared = coefficient(rng, &Atom::Localized(PrimeSet::All));
        let share = rng.gen_bool(0.5);
        for (s, slot) in g.slots.iter().enumerate() {
            let c = if share && !slot.atom.is_torsion() { shared.clone() } else { coefficient(rng, &slot.atom) };
            if well_defined(&slot.atom, &slot.atom, &c).is_ok() {
                entries.push(Entry::Slot { target: s, source: s, c });
            }
        }
        for _ in 0..rng.gen_range(0..3) {
            let (t, s) = (rng.gen_range(0..g.slots.len()), rng.gen_range(0..g.slots.len()));
            let (st, ss) = (&g.slots[t], &g.slots[s]);
            if t == s || st.mult != ss.mult {
                continue;
            }
            let c = coefficient(rng, &st.atom);
            if well_defined(&ss.atom, &st.atom, &c).is_ok() {
                entries.push(Entry::Slot { target: t, source: s, c });
            }
        }
        let coords = g.finite_coords();
        if !coords.is_empty() {
            for _ in 0..rng.gen_range(0..3) {
                let (t, s) = (*coords.choose(rng).unwrap(), *coords.choose(rng).unwrap());
                let c = coefficient(rng, g.atom(t));
                if well_defined(g.atom(s), g.atom(t), &c).is_ok() {
                    entries.push(Entry::Copy { target: t, source: s, c });
                }
            }
        }
        if let Ok(phi) = Endomorphism::from_entries(g, entries) {
            return phi;
        }
    }
}

/// Multiplication by an integer plus a map with finite image: right
/// inertial by construction.
pub fn inertial_endo<R: Rng>(rng: &mut R, g: &GroupDescriptor) -> Endomorphism {
    loop {
        let m = Q::from_integer(BigInt::from(rng.gen_range(-3i64..=4)));
        let mut entries: Vec<Entry> =
            (0..g.slots.len()).map(|s| Entry::Slot { target: s, source: s, c: m.clone() }).collect();
        let coords = g.finite_coords();
        let bounded: Vec<Coord> = coords.iter().copied().filter(|c| g.atom(*c).is_finite()).collect();
        if !bounded.is_empty() {
            for _ in 0..rng.gen_range(0..4) {
                let (t, s) = (*bounded.choose(rng).unwrap(), *coords.choose(rng).unwrap());
                let c = Q::from_integer(BigInt::from(rng.gen_range(1i64..=6)));
                if well_defined(g.atom(s), g.atom(t), &c).is_ok() {
                    entries.push(Entry::Copy { target: t, source: s, c });
                }
            }
        }
        if let Ok(phi) = Endomorphism::from_entries(g, entries) {
            return phi;
        }
    }
}

/// A right inertial endomorphism, certified by the classifier. Half the
/// time it is a random structured map that happened to pass.
pub fn certified_inertial<R: Rng>(rng: &mut R, g: &GroupDescriptor, k: u32) -> Endomorphism {
    if rng.gen_bool(0.5) {
        for _ in 0..TRIES / 10 {
            let phi = random_structured_endo(rng, g);
            if classify_general(std::slice::from_ref(&phi), k).map(|v| v.rin).unwrap_or(false) {
                return phi;
            }
        }
    }
    inertial_endo(rng, g)
}

fn unit<R: Rng>(rng: &mut R, atom: &Atom) -> Q {
    let sign = if rng.gen_bool(0.5) { 1i64 } else { -1 };
    match atom {
        Atom::Cyclic { p, .. } | Atom::Prufer { p } => loop {
            let a = rng.gen_range(1..(*p as i64 * 2).max(3));
            if a % *p as i64 != 0 {
                return Q::from_integer(BigInt::from(sign * a));
            }
        },
        Atom::Localized(PrimeSet::Finite(ps)) => {
            let (a, b) = (smooth(rng, ps), smooth(rng, ps));
            Q::new(a * sign, b)
        }
        Atom::Localized(PrimeSet::All) => Q::new(BigInt::from(sign * rng.gen_range(1..=5)), BigInt::from(rng.gen_range(1..=5))),
    }
}

/// A unit on each slot and unitriangular copy entries; retried until the
/// inverse is structured as well.
pub fn random_automorphism<R: Rng>(rng: &mut R, g: &GroupDescriptor) -> (Endomorphism, Endomorphism) {
    for _ in 0..TRIES {
        let mut entries: Vec<Entry> = g
            .slots
            .iter()
            .enumerate()
            .map(|(s, slot)| Entry::Slot { target: s, source: s, c: unit(rng, &slot.atom) })
            .collect();
        let coords = g.finite_coords();
        for _ in 0..rng.gen_range(0..3) {
            if coords.len() < 2 {
                break;
            }
            let i = rng.gen_range(0..coords.len() - 1);
            let j = rng.gen_range(i + 1..coords.len());
            let (s, t) = (coords[i], coords[j]);
            let c = coefficient(rng, g.atom(t));
            if well_defined(g.atom(s), g.atom(t), &c).is_ok() {
                entries.push(Entry::Copy { target: t, source: s, c });
            }
        }
        let Ok(phi) = Endomorphism::from_entries(g, entries) else { continue };
        if let Ok(inv) = inverse(&phi) {
            return (phi, inv);
        }
    }
    let id = Endomorphism::identity(g);
    (id.clone(), id)
}

/// A random element, touching copies 0..3 of omega slots.
pub fn random_element<R: Rng>(rng: &mut R, g: &GroupDescriptor) -> Element {
    let mut el = Element::zero();
    for (s, slot) in g.slots.iter().enumerate() {
        let copies = slot.mult.finite().unwrap_or(3) as u64;
        for c in 0..copies {
            if rng.gen_bool(0.5) {
                continue;
            }
            let a = BigInt::from(rng.gen_range(-4i64..=4));
            let v = match &slot.atom {
                Atom::Cyclic { p, e } => Q::new(a, BigInt::from(*p).pow(*e)),
                Atom::Prufer { p } => Q::new(a, BigInt::from(*p).pow(rng.gen_range(0..3))),
                atom => coefficient(rng, atom) * Q::from_integer(a),
            };
            el.add_at((s, c), v);
        }
    }
    g.reduce(el)
}

/// A subgroup on one to three random generators.
pub fn random_fg<R: Rng>(rng: &mut R, g: &GroupDescriptor) -> SubgroupHandle {
    let n = rng.gen_range(1..=3);
    SubgroupHandle::generated((0..n).map(|_| random_element(rng, g)).collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn seeded_groups_repeat() {
        let a: Vec<String> = (0..5).map(|_| desk_group(&mut rng(7), false).to_text()).collect();
        assert!(a.iter().all(|t| t == &a[0]));
    }

    #[test]
    fn ftfr_groups_have_finite_rank() {
        let mut r = rng(1);
        for _ in 0..50 {
            assert!(desk_group(&mut r, true).torsion_free_rank().is_some());
        }
    }

    #[test]
    fn automorphisms_invert() {
        let mut r = rng(3);
        for _ in 0..20 {
            let g = desk_group(&mut r, true);
            let (phi, inv) = random_automorphism(&mut r, &g);
            assert!(phi.compose(&inv).unwrap().equals(&Endomorphism::identity(&g)).unwrap());
        }
    }
}
