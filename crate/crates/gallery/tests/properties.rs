use inertia_endo::{image_finite, Endomorphism};
use inertia_gallery::PropositionA;
use inertia_group::SectionSize;
use proptest::prelude::*;

fn coefficients() -> impl Strategy<Value = (Vec<u64>, Vec<u64>)> {
    // primes up to 7
    let one = || (0u64..2, 0u64..3, 0u64..5, 0u64..7).prop_map(|(a, b, c, d)| vec![a, b, c, d]);
    (one(), one())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn sigmas_commute((s, t) in coefficients()) {
        let a = PropositionA::new(7).unwrap();
        let (x, y) = (a.sigma_element(&s).unwrap(), a.sigma_element(&t).unwrap());
        prop_assert!(x.compose(&y).unwrap().equals(&y.compose(&x).unwrap()).unwrap());
    }

    #[test]
    fn sigma_image_is_the_hit_primes((s, _) in coefficients()) {
        let a = PropositionA::new(7).unwrap();
        let x = a.sigma_element(&s).unwrap();
        let want: u64 = a.primes.iter().zip(&s).filter(|(_, &c)| c != 0).map(|(&p, _)| p).product();
        let d = x.sub(&Endomorphism::identity(&a.group)).unwrap();
        prop_assert_eq!(image_finite(&d).size, SectionSize::Finite(want.into()));
    }
}
