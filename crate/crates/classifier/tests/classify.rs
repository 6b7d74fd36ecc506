use inertia_classify::json::{certificate, certificate_from, verdict};
use inertia_classify::{
    automorphism_bridge, classify_general, classify_multiplication, classify_periodic, classify_torsion_free,
    commutator_check, common_v, convert_mf_fm, inverse, lift_finite_index, validate_certificate, Certificate,
    ClassifyError, EndoForm,
};
use inertia_endo::parse::parse_endo;
use inertia_endo::{image_finite, Endomorphism};
use inertia_group::parse::{parse_group, parse_handle};
use inertia_group::rational::{qi, qr};
use inertia_group::{GroupDescriptor, SectionSize};
use inertia_witness::{verify_witness, Kind};
use num_bigint::BigInt;

const K: u32 = 20;

fn g(t: &str) -> GroupDescriptor {
    parse_group(t).unwrap()
}

fn e(g: &GroupDescriptor, t: &str) -> Endomorphism {
    parse_endo(g, t).unwrap()
}

fn sections(w: &inertia_witness::Witness, k: u32) -> Vec<BigInt> {
    let v = verify_witness(w, k).unwrap();
    assert!(v.ok, "witness fails at {:?}", v.first_failure);
    v.sections.iter().map(|s| s.finite().cloned().unwrap()).collect()
}

#[test]
fn doubling_on_q_omega() {
    let v = classify_multiplication(&qi(2), &g("Q^w"), K).unwrap();
    assert!(v.rin && !v.lin);
    assert!(matches!(&v.certificate, Some(Certificate::CaseA { m, .. }) if m == &[BigInt::from(2)]));
    // lin fails through the copies: |X/(X cap 2X)| = 2^i on <e_1..e_i>
    let w = v.lin_witness.expect("left witness");
    assert_eq!(sections(&w, 8), (1..=8).map(|i| BigInt::from(2).pow(i)).collect::<Vec<_>>());
}

#[test]
fn halving_on_q_omega() {
    let v = classify_multiplication(&qr(1, 2), &g("Q^w"), K).unwrap();
    assert!(!v.rin && v.lin);
    let w = v.witness.expect("witness");
    assert_eq!(w.kind, Kind::FreeRank);
    assert_eq!(sections(&w, 8), (1..=8).map(|i| BigInt::from(2).pow(i)).collect::<Vec<_>>());
}

#[test]
fn zero_on_infinite_groups() {
    for t in ["Z(3)^w + Q", "Z^w", "Z(5^inf)", "Q[2]^3"] {
        let v = classify_multiplication(&qi(0), &g(t), K).unwrap();
        assert!(v.rin && !v.lin, "{t}");
    }
    let v = classify_multiplication(&qi(0), &g("Z(4) + Z(3)^2"), K).unwrap();
    assert!(v.rin && v.lin);
}

#[test]
fn five_thirds_with_finite_rank() {
    let v = classify_multiplication(&qr(5, 3), &g("Z(2^inf) + Q[3]"), K).unwrap();
    assert!(v.rin && v.lin);
    match v.certificate.unwrap() {
        Certificate::CaseB { pi, pi1, d_slots, c_slots, .. } => {
            assert_eq!(pi, vec![3]);
            assert_eq!(pi1, vec![3]);
            assert!(d_slots.is_empty());
            assert_eq!(c_slots, vec![0, 1]);
        }
        c => panic!("{c:?}"),
    }
}

#[test]
fn shear_is_not_right_inertial() {
    let a = g("Z^2");
    let v = classify_torsion_free(&e(&a, "matrix{1.1<-1.1: 1; 1.1<-1.2: 1; 1.2<-1.2: 1}"), K).unwrap();
    assert!(!v.rin && !v.lin);
    let w = v.witness.unwrap();
    assert_eq!(w.kind, Kind::Independence);
    assert_eq!(w.fixed, vec![inertia_group::parse::parse_element(&a, "[1.2: 1]").unwrap()]);
    assert!(verify_witness(&w, K).unwrap().ok);
}

#[test]
fn torsion_free_examples() {
    let v = classify_torsion_free(&e(&g("Z^w"), "mult 7"), K).unwrap();
    assert!(matches!(&v.certificate, Some(Certificate::CaseA { m, .. }) if m == &[BigInt::from(7)]));
    let v = classify_torsion_free(&e(&g("Q[3]^w"), "mult 1/3"), K).unwrap();
    assert!(v.lin && !v.rin);
    assert!(matches!(classify_torsion_free(&e(&g("Z(2) + Z"), "id"), K), Err(ClassifyError::Precondition(_))));
}

#[test]
fn identity_on_bounded_times_inversion_on_divisible() {
    let a = g("Z(3)^w + Z(3^inf)");
    let phi = e(&a, "block{1: 1; 2: -1}");
    let v = classify_periodic(&[phi.clone()], K).unwrap();
    assert!(v.rin && v.lin);
    // neither phi - 1 nor phi + 1 has finite image: phi is not finitary
    assert!(!matches!(image_finite(&phi.minus_scalar(&qi(1)).unwrap()).size, SectionSize::Finite(_)));
    assert!(!matches!(image_finite(&phi.minus_scalar(&qi(-1)).unwrap()).size, SectionSize::Finite(_)));
    match v.certificate.unwrap() {
        Certificate::CaseB { pi, pi1, b_slots, d_slots, .. } => {
            assert!(pi.is_empty());
            assert_eq!(pi1, vec![3]);
            assert_eq!((b_slots, d_slots), (vec![0], vec![1]));
        }
        c => panic!("{c:?}"),
    }
}

#[test]
fn triple_on_z3_omega() {
    let v = classify_periodic(&[e(&g("Z(3)^w"), "mult 3")], K).unwrap();
    assert!(v.rin && !v.lin);
    assert!(verify_witness(&v.lin_witness.unwrap(), K).unwrap().ok);
}

#[test]
fn identity_is_case_a() {
    for t in ["Q^w + Z(2)^w", "Z(3^inf) + Q[2]", "Z^2"] {
        let a = g(t);
        let v = classify_general(&[Endomorphism::identity(&a)], K).unwrap();
        assert!(v.rin && v.lin, "{t}");
        assert!(matches!(&v.certificate, Some(Certificate::CaseA { m, .. }) if m == &[BigInt::from(1)]), "{t}");
    }
    // on the trivial group everything is the multiplication by 0
    let v = classify_general(&[Endomorphism::identity(&g("0"))], K).unwrap();
    assert!(v.rin && v.lin);
    assert!(matches!(&v.certificate, Some(Certificate::CaseA { m, .. }) if m == &[BigInt::from(0)]));
}

#[test]
fn diagonal_failure() {
    let a = g("Z(2^inf) + Q[2]");
    let v = classify_general(&[e(&a, "block{1: local(2:1); 2: 1/2}")], K).unwrap();
    assert!(!v.rin);
    let w = v.witness.unwrap();
    assert_eq!(w.kind, Kind::Diagonal);
    assert_eq!(sections(&w, K), (1..=K).map(|i| BigInt::from(2).pow(i)).collect::<Vec<_>>());
}

#[test]
fn divisible_part_must_follow_the_free_part() {
    let a = g("Z(3^inf) + Q[2,3]");
    let v = classify_general(&[e(&a, "block{1: 5; 2: 1/2}")], K).unwrap();
    assert!(!v.rin);
    let w = v.witness.unwrap();
    // 3-adically 2*5 - 1 = 9, so the family sits two steps deeper in Z(3^inf)
    let s = sections(&w, 12);
    assert_eq!(s, (1..=12).map(|i| BigInt::from(2) * BigInt::from(3).pow(i - 1)).collect::<Vec<_>>());

    let v = classify_general(&[e(&a, "block{1: 1/2; 2: 1/2}")], K).unwrap();
    assert!(v.rin);
}

#[test]
fn common_v_examples() {
    let a = g("Q[2]");
    assert_eq!(common_v(&[e(&a, "mult 1/2")], K).unwrap(), parse_handle(&a, "<div(1: 2)>").unwrap().with_label("V"));
    let a = g("Z");
    assert_eq!(common_v(&[e(&a, "mult 3")], K).unwrap(), parse_handle(&a, "<div(1: )>").unwrap().with_label("V"));
    let a = g("Z(3^inf) + Q[2]");
    let v = common_v(&[e(&a, "block{1: local(3:2); 2: 1/2}")], K).unwrap();
    assert_eq!(v, parse_handle(&a, "<div(2: 2)>").unwrap().with_label("V"));
}

#[test]
fn certificates_roundtrip_and_revalidate() {
    let cases = [
        ("Z(3)^w + Z(3^inf)", vec!["block{1: 1; 2: -1}"]),
        ("Z(2^inf) + Q[3]", vec!["mult 5/3"]),
        ("Z(3^inf) + Q[2,3] + Z(5)^w", vec!["block{1: 1/2; 2: 1/2; 3: 2}", "block{1: 3; 2: 3; 3: 1}"]),
        ("Z^w + Z(2)^w", vec!["mult 3", "id + finitary{1.1 * 1 mod 2 -> [2.1: 1]}"]),
    ];
    for (t, phis) in cases {
        let a = g(t);
        let phis: Vec<Endomorphism> = phis.iter().map(|s| e(&a, s)).collect();
        let v = classify_general(&phis, K).unwrap();
        assert!(v.rin, "{t}: {}", v.reason);
        let c = v.certificate.unwrap();
        let back = certificate_from(&certificate(&c)).unwrap();
        assert_eq!(back, c);
        validate_certificate(&back).unwrap();
    }
}

#[test]
fn tampered_certificate_names_the_invariant() {
    let a = g("Z(2^inf) + Q[3]");
    let c = classify_multiplication(&qr(5, 3), &a, K).unwrap().certificate.unwrap();
    let mut j = certificate(&c);
    j["pi1"] = serde_json::json!([]);
    let err = validate_certificate(&certificate_from(&j).unwrap()).unwrap_err().to_string();
    assert!(err.contains("pi is not contained in pi1"), "{err}");

    let a = g("Z(3^inf) + Q[2,3]");
    let c = classify_general(&[e(&a, "block{1: 1/2; 2: 1/2}")], K).unwrap().certificate.unwrap();
    let mut j = certificate(&c);
    j["endomorphisms"][0] = inertia_endo::json::endo(&e(&a, "block{1: 5; 2: 1/2}"));
    assert!(validate_certificate(&certificate_from(&j).unwrap()).is_err());
}

#[test]
fn bridge_examples() {
    let b = automorphism_bridge(&e(&g("Q^w"), "mult 2"), K).unwrap();
    assert_eq!((b.rin, b.lin, b.rin_inverse, b.lin_inverse), (true, false, false, true));
    let b = automorphism_bridge(&e(&g("Q"), "mult 2/3"), K).unwrap();
    assert_eq!((b.rin, b.lin, b.rin_inverse, b.lin_inverse), (true, true, true, true));
    let b = automorphism_bridge(&Endomorphism::identity(&g("Z(2)^w + Z")), K).unwrap();
    assert!(b.rin && b.lin && b.rin_inverse && b.lin_inverse && b.holds());
    assert!(inverse(&e(&g("Z"), "mult 2")).is_err());
    assert!(inverse(&e(&g("Z(3)"), "mult 3")).is_err());
}

#[test]
fn commutators() {
    let a = g("Z(2)^w + Z(3^inf) + Q[2]");
    let (ok, s) = commutator_check(&e(&a, "mult 3"), &e(&a, "mult 5"), K).unwrap();
    assert!(ok && s.is_finite_one());
    let a = g("Z^w + Z(2)^w");
    let f = e(&a, "id + finitary{1.1 * 1 mod 2 -> [2.1: 1]}");
    let (ok, s) = commutator_check(&f, &e(&a, "mult 2"), K).unwrap();
    assert!(ok);
    assert!(matches!(s, SectionSize::Finite(_)));
    let bad = e(&a, "each{1<-1: 1; 2<-1: 1}");
    assert!(matches!(commutator_check(&bad, &e(&a, "id"), K), Err(ClassifyError::Precondition(_))));
}

#[test]
fn mf_fm_conversion() {
    let a = g("Z(2)^w + Z(4)");
    let c = convert_mf_fm(&e(&a, "mult 3")).unwrap();
    assert_eq!(c.a1_order, BigInt::from(1));
    let c = convert_mf_fm(&e(&a, "block{1: 1; 2: 3}")).unwrap();
    // alpha = 1 at 2; the Z(4) slot moves by 2, an image of order 2
    assert_eq!(c.a1_order, BigInt::from(2));
    assert_eq!(c.a0_index, c.a1_order);
    assert!(c.multiplication.sub(&e(&a, "mult 1")).unwrap().is_zero_map());
    assert!(convert_mf_fm(&e(&g("Z(2)^w + Z(2)^w"), "each{1<-2: 1; 2<-1: 1}")).is_err());
    assert!(convert_mf_fm(&e(&g("Z"), "id")).is_err());
}

#[test]
fn lifting() {
    let v = classify_multiplication(&qi(3), &g("Z"), K).unwrap();
    let up = lift_finite_index(&v, &SectionSize::Finite(BigInt::from(2))).unwrap();
    assert!(up.rin && up.lin);
    assert!(lift_finite_index(&v, &SectionSize::CertifiedInfinite("rank".into())).is_err());
}

#[test]
fn verdict_json_is_stable() {
    let a = g("Z(2^inf) + Q[2]");
    let v = classify_general(&[e(&a, "block{1: local(2:1); 2: 1/2}")], K).unwrap();
    let one = inertia_group::json::render(&verdict(&v));
    let two = inertia_group::json::render(&verdict(&classify_general(&[e(&a, "block{1: local(2:1); 2: 1/2}")], K).unwrap()));
    assert_eq!(one, two);
    assert!(one.starts_with("{\n  \"schemaVersion\": \"1\",\n  \"type\": \"verdict\""));
}

#[test]
fn forms_are_reported() {
    let v = classify_general(&[e(&g("Q^w"), "mult -4")], K).unwrap();
    assert_eq!(v.per_endo[0].form, Some(EndoForm::A { m: BigInt::from(-4) }));
}
