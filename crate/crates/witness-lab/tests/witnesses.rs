use inertia_endo::parse::parse_endo;
use inertia_group::parse::parse_group;
use inertia_group::rational::{qi, qr};
use inertia_group::{PrimeSet, SectionSize};
use inertia_witness::json::{witness, witness_from};
use inertia_witness::{
    diagonal_witness, free_rank_witness, independence_witness, primary_witness, verify_witness, Growth, Mode,
    WitnessError,
};
use num_bigint::BigInt;
use proptest::prelude::*;

fn pow(b: u64, e: u32) -> BigInt {
    BigInt::from(b).pow(e)
}

fn finite_sections(s: &[SectionSize]) -> Vec<BigInt> {
    s.iter().map(|x| x.finite().cloned().expect("finite section")).collect()
}

#[test]
fn diagonal_two_adic() {
    let w = diagonal_witness(2, &qi(1), &qr(1, 2), &PrimeSet::finite(vec![2]).unwrap(), 20).unwrap();
    let v = verify_witness(&w, 20).unwrap();
    assert!(v.ok);
    // h_i = (1/2^(i-1), 1/2^(i-1)), computed by hand: section 2^i
    let want: Vec<BigInt> = (1..=20).map(|i| pow(2, i)).collect();
    assert_eq!(finite_sections(&v.sections), want);
}

#[test]
fn diagonal_three_adic() {
    let w = diagonal_witness(3, &qi(2), &qr(1, 3), &PrimeSet::finite(vec![3]).unwrap(), 20).unwrap();
    let v = verify_witness(&w, 20).unwrap();
    let want: Vec<BigInt> = (1..=20).map(|i| pow(3, i)).collect();
    assert_eq!(finite_sections(&v.sections), want);
}

#[test]
fn diagonal_refusals() {
    let two = PrimeSet::finite(vec![2]).unwrap();
    assert!(matches!(diagonal_witness(2, &qr(1, 2), &qr(1, 2), &two, 20), Err(WitnessError::Precondition(_))));
    assert!(matches!(diagonal_witness(2, &qi(1), &qi(3), &two, 20), Err(WitnessError::Precondition(_))));
    assert!(matches!(diagonal_witness(2, &qr(1, 2), &qr(1, 4), &two, 20), Err(WitnessError::Precondition(_))));
}

#[test]
fn tampered_growth_fails_at_first_bad_index() {
    let w = diagonal_witness(2, &qi(1), &qr(1, 2), &PrimeSet::finite(vec![2]).unwrap(), 20).unwrap();
    let mut t = w.clone();
    // 4 * 2^(i-1) = 2^(i+1) exceeds the true 2^i already at i = 1
    t.growth = Growth::Power { coef: BigInt::from(4), base: BigInt::from(2), shift: 1 };
    assert_eq!(verify_witness(&t, 20).unwrap().first_failure, Some(1));
    let mut t = w;
    t.growth = Growth::Power { coef: BigInt::from(1), base: BigInt::from(3), shift: 0 };
    // 3^i > 2^i already at i = 1
    assert_eq!(verify_witness(&t, 20).unwrap().first_failure, Some(1));
}

#[test]
fn free_rank_families() {
    let g = parse_group("Q[2]^w").unwrap();
    let w = free_rank_witness(&g, &qr(1, 2), 20).unwrap();
    let v = verify_witness(&w, 12).unwrap();
    assert_eq!(finite_sections(&v.sections), (1..=12).map(|i| pow(2, i)).collect::<Vec<_>>());

    let g = parse_group("Q[2,3]^w").unwrap();
    let w = free_rank_witness(&g, &qr(3, 2), 20).unwrap();
    let v = verify_witness(&w, 12).unwrap();
    assert_eq!(finite_sections(&v.sections), (1..=12).map(|i| pow(2, i)).collect::<Vec<_>>());

    assert!(free_rank_witness(&parse_group("Q^w").unwrap(), &qi(2), 20).is_err());
}

#[test]
fn independence() {
    let g = parse_group("Z^2").unwrap();
    let shear = parse_endo(&g, "matrix{1.1<-1.1: 1; 1.1<-1.2: 1; 1.2<-1.2: 1}").unwrap();
    let w = independence_witness(&shear, 20).unwrap();
    assert_eq!(w.fixed, vec![inertia_group::parse::parse_element(&g, "[1.2: 1]").unwrap()]);
    let swap = parse_endo(&g, "matrix{1.1<-1.2: 1; 1.2<-1.1: 1}").unwrap();
    let w = independence_witness(&swap, 20).unwrap();
    assert_eq!(w.fixed, vec![inertia_group::parse::parse_element(&g, "[1.1: 1]").unwrap()]);
    let two = parse_endo(&g, "mult 2").unwrap();
    assert!(independence_witness(&two, 20).is_err());
}

#[test]
fn primary_families() {
    let g = parse_group("Z(2)^w + Z(2)^w").unwrap();
    let swap = parse_endo(&g, "each{1<-2: 1; 2<-1: 1}").unwrap();
    let w = primary_witness(&swap, Mode::Lin, 20).unwrap();
    let v = verify_witness(&w, 10).unwrap();
    assert_eq!(finite_sections(&v.sections), (1..=10).map(|i| pow(2, i)).collect::<Vec<_>>());

    let g = parse_group("Z(3)^w").unwrap();
    let zero = parse_endo(&g, "mult 3").unwrap();
    let w = primary_witness(&zero, Mode::Lin, 20).unwrap();
    assert_eq!(w.growth, Growth::power(3));
    assert!(primary_witness(&parse_endo(&g, "mult 2").unwrap(), Mode::Lin, 20).is_err());
    assert!(primary_witness(&zero, Mode::Rin, 20).is_err());

    // Prufer pair with a shear is not right inertial
    let g = parse_group("Z(3^inf)^2").unwrap();
    let shear = parse_endo(&g, "matrix{1.1<-1.1: 1; 1.1<-1.2: 1; 1.2<-1.2: 1}").unwrap();
    let w = primary_witness(&shear, Mode::Rin, 20).unwrap();
    assert!(verify_witness(&w, 20).unwrap().ok);

    // distinct scalars on Z(5) and Z(25) copies
    let g = parse_group("Z(5)^w + Z(5^2)^w").unwrap();
    let phi = parse_endo(&g, "block{1: 1; 2: 2}").unwrap();
    let w = primary_witness(&phi, Mode::Rin, 20).unwrap();
    assert_eq!(w.growth, Growth::power(5));
}

#[test]
fn json_roundtrip() {
    let w = diagonal_witness(3, &qi(2), &qr(1, 3), &PrimeSet::finite(vec![3]).unwrap(), 20).unwrap();
    let back = witness_from(&witness(&w)).unwrap();
    assert_eq!(back, w);
    let text = inertia_group::json::render(&witness(&w));
    assert!(text.contains("\"schemaVersion\": \"1\""));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn diagonal_sections_are_exact(pi in 0usize..3, extra in 1u64..4, m in 1i64..7, alpha in -3i64..4) {
        let p = [2u64, 3, 5][pi];
        let n = p * extra;
        prop_assume!(num_integer::gcd(m as u64, n) == 1);
        let mut ps: Vec<u64> = inertia_group::primes::factor(&BigInt::from(n)).unwrap().into_iter().map(|(q, _)| q).collect();
        ps.push(p);
        let pis = PrimeSet::finite(ps).unwrap();
        let w = diagonal_witness(p, &qi(alpha), &qr(m, n as i64), &pis, 8).unwrap();
        let v = verify_witness(&w, 8).unwrap();
        for (i, s) in v.sections.iter().enumerate() {
            prop_assert_eq!(s.finite().unwrap(), &(BigInt::from(n) * pow(p, i as u32)));
        }
    }

    #[test]
    fn growth_is_strictly_increasing(c in 1u64..50, b in 2u64..9, s in 0u32..2) {
        let g = Growth::Power { coef: BigInt::from(c), base: BigInt::from(b), shift: s };
        for i in 1..15 {
            prop_assert!(g.at(i + 1).unwrap() > g.at(i).unwrap());
        }
    }
}
