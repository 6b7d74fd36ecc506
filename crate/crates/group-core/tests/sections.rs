use std::collections::BTreeSet;

use inertia_group::lattice::{hnf, smith};
use inertia_group::parse::parse_group;
use inertia_group::section::{fg_index, fg_order, fg_torsion_order};
use inertia_group::{Element, GroupDescriptor};
use num_bigint::BigInt;
use proptest::prelude::*;

// Brute-force model of a finite group Z(m_1) + ... + Z(m_k): integer tuples.
fn closure(mods: &[i64], gens: &[Vec<i64>]) -> BTreeSet<Vec<i64>> {
    let mut seen = BTreeSet::new();
    let zero = vec![0; mods.len()];
    seen.insert(zero.clone());
    let mut stack = vec![zero];
    while let Some(x) = stack.pop() {
        for g in gens {
            let y: Vec<i64> = x.iter().zip(g).zip(mods).map(|((a, b), m)| (a + b).rem_euclid(*m)).collect();
            if seen.insert(y.clone()) {
                stack.push(y);
            }
        }
    }
    seen
}

fn to_element(g: &GroupDescriptor, mods: &[i64], v: &[i64]) -> Element {
    let mut e = Element::zero();
    for (i, (x, m)) in v.iter().zip(mods).enumerate() {
        e.add_at((i, 0), inertia_group::Q::new(BigInt::from(*x), BigInt::from(*m)));
    }
    g.canonical(e).unwrap()
}

fn finite_group() -> impl Strategy<Value = Vec<(u64, u32)>> {
    prop::collection::vec((prop::sample::select(vec![2u64, 3, 5]), 1u32..=3), 1..=3)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn section_matches_brute_force(
        atoms in finite_group(),
        seeds in prop::collection::vec(prop::collection::vec(0i64..1000, 3), 1..4),
        split in 0usize..4,
    ) {
        let text: Vec<String> = atoms.iter().map(|(p, e)| format!("Z({p}^{e})")).collect();
        let g = parse_group(&text.join(" + ")).unwrap();
        let mods: Vec<i64> = atoms.iter().map(|(p, e)| p.pow(*e) as i64).collect();
        let vecs: Vec<Vec<i64>> = seeds.iter().map(|s| s.iter().zip(&mods).map(|(a, m)| a % m).collect()).collect();
        let k = split.min(vecs.len());
        let (xs, ys) = vecs.split_at(k);
        let xe: Vec<Element> = xs.iter().map(|v| to_element(&g, &mods, v)).collect();
        let ye: Vec<Element> = ys.iter().map(|v| to_element(&g, &mods, v)).collect();
        let bx = closure(&mods, xs).len();
        let bxy = closure(&mods, &vecs).len();
        prop_assert_eq!(fg_index(&g, &xe, &ye).unwrap(), BigInt::from(bxy / bx));
        let all: Vec<Element> = xe.iter().chain(ye.iter()).cloned().collect();
        prop_assert_eq!(fg_order(&g, &all).unwrap(), BigInt::from(bxy));
        prop_assert_eq!(fg_torsion_order(&g, &all), BigInt::from(bxy));
    }

    #[test]
    fn hnf_is_invariant_under_unimodular_moves(
        rows in prop::collection::vec(prop::collection::vec(-20i64..20, 3), 1..5),
        i in 0usize..5, j in 0usize..5, k in -3i64..4,
    ) {
        let r: Vec<Vec<BigInt>> = rows.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect();
        let mut moved = r.clone();
        let (i, j) = (i % r.len(), j % r.len());
        if i != j {
            let rj = moved[j].clone();
            for (a, b) in moved[i].iter_mut().zip(rj) { *a += b * k; }
        }
        moved.reverse();
        prop_assert_eq!(hnf(&r, 3), hnf(&moved, 3));
    }

    #[test]
    fn presentation_order_is_determinant(
        rows in prop::collection::vec(prop::collection::vec(-6i64..7, 3), 3),
    ) {
        // Bareiss determinant as the oracle
        let mut a: Vec<Vec<i128>> = rows.iter().map(|r| r.iter().map(|&x| x as i128).collect()).collect();
        let mut prev = 1i128;
        let mut sign = 1i128;
        let n = 3;
        let mut det = 0i128;
        let mut singular = false;
        for c in 0..n {
            if a[c][c] == 0 {
                match (c + 1..n).find(|&r| a[r][c] != 0) {
                    Some(r) => { a.swap(c, r); sign = -sign; }
                    None => { singular = true; break; }
                }
            }
            for r in c + 1..n {
                for k in c + 1..n {
                    a[r][k] = (a[r][k] * a[c][c] - a[r][c] * a[c][k]) / prev;
                }
            }
            prev = a[c][c];
            if c == n - 1 { det = sign * a[c][c]; }
        }
        prop_assume!(!singular && det != 0);
        let rel: Vec<Vec<BigInt>> = rows.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect();
        let g = GroupDescriptor::from_presentation(rel.clone(), 3).unwrap();
        prop_assert_eq!(g.order().unwrap(), BigInt::from(det.abs()));
        let d: BigInt = smith(&rel, 3).diag.iter().product();
        prop_assert_eq!(d, BigInt::from(det.abs()));
    }
}

#[test]
fn known_counts() {
    let g = parse_group("Z(2) + Z(4)").unwrap();
    assert_eq!(g.order().unwrap(), BigInt::from(8));
}
