//! Operations built on the classifier: the common submodule V, the two
//! readings of "multiplication up to finite", lifting along finite index,
//! commutators, and inverses of automorphisms.

use inertia_endo::{coef, image_finite, EndoError, Endomorphism, Entry};
use inertia_group::{Coord, SectionSize, SubgroupHandle, Q};
use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::blocks::{torsion_primes, PrimeBlock};
use crate::certificate::{self, Certificate};
use crate::{classify_endo, classify_general, ClassifyError, EndoForm, Verdict};

fn pre(msg: impl Into<String>) -> ClassifyError {
    ClassifyError::Precondition(msg.into())
}

/// A torsion-free submodule of full rank on which every phi_i is its scalar
/// on A/T.
pub fn common_v(phis: &[Endomorphism], k: u32) -> Result<SubgroupHandle, ClassifyError> {
    let g = &phis.first().ok_or_else(|| pre("no endomorphisms"))?.ambient;
    if g.torsion_free_rank().is_none() {
        return Err(pre("the torsion-free rank is infinite"));
    }
    let v = classify_general(phis, k)?;
    let Some(cert) = v.certificate else {
        return Err(pre(format!("no invariant V: not right inertial ({})", v.reason)));
    };
    match cert {
        Certificate::CaseB { v, .. } => Ok(v),
        Certificate::CaseA { m, .. } => {
            let mus: Vec<Q> = m.into_iter().map(Q::from_integer).collect();
            Ok(certificate::v_handle(g, phis, &mus, &[])?.0)
        }
    }
}

#[derive(Clone, Debug)]
pub struct MfFm {
    /// the multiplication alpha_p chosen on each torsion prime
    pub alphas: Vec<(u64, Q)>,
    pub multiplication: Endomorphism,
    /// |A : A0| with A0 = ker(phi - alpha), where phi is alpha
    pub a0_index: BigInt,
    /// A1 = im(phi - alpha), a finite subgroup
    pub a1: SubgroupHandle,
    pub a1_order: BigInt,
}

/// On a periodic group: the multiplication alpha with phi = alpha on a
/// finite-index A0, and the finite A1 = im(phi - alpha) modulo which phi is
/// alpha. The two orders agree because A/A0 maps onto A1.
pub fn convert_mf_fm(phi: &Endomorphism) -> Result<MfFm, ClassifyError> {
    let g = &phi.ambient;
    if !g.is_periodic() {
        return Err(pre("the group is not periodic"));
    }
    let mut alphas = Vec::new();
    for p in torsion_primes(g) {
        let a = PrimeBlock::of(phi, p)
            .mf(None)
            .ok_or_else(|| pre(format!("phi is no multiplication up to finite at {p}")))?;
        alphas.push((p, a));
    }
    let cs: Vec<Q> = g
        .slots
        .iter()
        .map(|s| {
            let p = s.atom.prime().unwrap();
            alphas.iter().find(|(q, _)| *q == p).unwrap().1.clone()
        })
        .collect();
    let mult = Endomorphism::block_scalar(g, &cs)?;
    let info = image_finite(&phi.sub(&mult)?);
    let SectionSize::Finite(order) = info.size else {
        return Err(pre("phi admits neither form: phi - alpha has infinite image"));
    };
    Ok(MfFm {
        alphas,
        multiplication: mult,
        a0_index: order.clone(),
        a1: SubgroupHandle::generated(info.gens).with_label("A1"),
        a1_order: order,
    })
}

/// A verdict on A0 of finite index in A, or on A/F with F finite, holds on A.
/// Certificates and witnesses refer to the smaller group and are dropped.
pub fn lift_finite_index(v: &Verdict, index: &SectionSize) -> Result<Verdict, ClassifyError> {
    if !matches!(index, SectionSize::Finite(_)) {
        return Err(pre(format!("the index is not finite: {index}")));
    }
    let mut out = v.clone();
    out.certificate = None;
    out.witness = None;
    out.lin_witness = None;
    for e in &mut out.per_endo {
        e.witness = None;
        e.lin_witness = None;
    }
    Ok(out)
}

/// Size of the image of phi psi - psi phi, which is finite for right
/// inertial pairs.
pub fn commutator_check(phi: &Endomorphism, psi: &Endomorphism, k: u32) -> Result<(bool, SectionSize), ClassifyError> {
    phi.same_ambient(psi)?;
    for (name, e) in [("phi", phi), ("psi", psi)] {
        if !classify_endo(e, k)?.rin {
            return Err(pre(format!("{name} is not right inertial")));
        }
    }
    let d = phi.compose(psi)?.sub(&psi.compose(phi)?)?;
    let size = image_finite(&d).size;
    Ok((matches!(size, SectionSize::Finite(_)), size))
}

/// Gauss-Jordan inverse of a square rational matrix.
fn invert(m: &[Vec<Q>]) -> Option<Vec<Vec<Q>>> {
    let n = m.len();
    let mut a: Vec<Vec<Q>> = m
        .iter()
        .enumerate()
        .map(|(i, r)| {
            let mut row = r.clone();
            row.extend((0..n).map(|j| if i == j { Q::one() } else { Q::zero() }));
            row
        })
        .collect();
    for c in 0..n {
        let piv = (c..n).find(|&r| !a[r][c].is_zero())?;
        a.swap(c, piv);
        let inv = Q::one() / &a[c][c];
        for x in a[c].iter_mut() {
            *x *= &inv;
        }
        for r in 0..n {
            if r != c && !a[r][c].is_zero() {
                let f = a[r][c].clone();
                let pivot_row = a[c].clone();
                for (x, y) in a[r].iter_mut().zip(&pivot_row) {
                    *x -= &f * y;
                }
            }
        }
    }
    Some(a.into_iter().map(|r| r[n..].to_vec()).collect())
}

/// Inverse of an automorphism without finitary terms, computed on the omega
/// slots and on the finite coordinates separately.
pub fn inverse(phi: &Endomorphism) -> Result<Endomorphism, ClassifyError> {
    let g = &phi.ambient;
    if !phi.terms.is_empty() {
        return Err(pre("inverse is supported only without finitary terms"));
    }
    let omega: Vec<usize> = (0..g.slots.len()).filter(|&s| g.slots[s].mult.is_omega()).collect();
    let finite: Vec<Coord> = g.finite_coords();
    let mut entries = Vec::new();
    let m: Vec<Vec<Q>> = omega.iter().map(|&t| omega.iter().map(|&s| phi.each_coef(t, s)).collect()).collect();
    let inv = invert(&m).ok_or_else(|| pre("phi is not invertible on the omega slots"))?;
    for (i, &t) in omega.iter().enumerate() {
        for (j, &s) in omega.iter().enumerate() {
            if !inv[i][j].is_zero() {
                entries.push(Entry::Slot { target: t, source: s, c: inv[i][j].clone() });
            }
        }
    }
    let m: Vec<Vec<Q>> = finite.iter().map(|&t| finite.iter().map(|&s| phi.copy_coef(t, s)).collect()).collect();
    let inv = invert(&m).ok_or_else(|| pre("phi is not invertible on the finite slots"))?;
    for (i, &t) in finite.iter().enumerate() {
        for (j, &s) in finite.iter().enumerate() {
            if inv[i][j].is_zero() {
                continue;
            }
            coef::well_defined(g.atom(s), g.atom(t), &inv[i][j])
                .map_err(|e| pre(format!("phi is not an automorphism: {e}")))?;
            entries.push(Entry::Copy { target: t, source: s, c: inv[i][j].clone() });
        }
    }
    let psi = Endomorphism::from_entries(g, entries).map_err(|e| match e {
        EndoError::IllDefined(m) => pre(format!("phi is not an automorphism: {m}")),
        e => e.into(),
    })?;
    let id = Endomorphism::identity(g);
    if !phi.compose(&psi)?.equals(&id)? || !psi.compose(phi)?.equals(&id)? {
        return Err(pre("phi is not an automorphism"));
    }
    Ok(psi)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Bridge {
    pub rin: bool,
    pub lin: bool,
    pub rin_inverse: bool,
    pub lin_inverse: bool,
    pub finite_rank: bool,
}

impl Bridge {
    /// rin(phi) iff lin(phi^-1), and lin implies rin on finite rank.
    pub fn holds(&self) -> bool {
        self.rin == self.lin_inverse && (!self.finite_rank || !self.lin || self.rin)
    }
}

pub fn automorphism_bridge(phi: &Endomorphism, k: u32) -> Result<Bridge, ClassifyError> {
    let psi = inverse(phi)?;
    let a = classify_endo(phi, k)?;
    let b = classify_endo(&psi, k)?;
    Ok(Bridge {
        rin: a.rin,
        lin: a.lin,
        rin_inverse: b.rin,
        lin_inverse: b.lin,
        finite_rank: phi.ambient.torsion_free_rank().is_some(),
    })
}

/// Integer scalars of a case A form, for reports.
pub fn integer_form(v: &crate::EndoVerdict) -> Option<&BigInt> {
    match &v.form {
        Some(EndoForm::A { m }) => Some(m),
        _ => None,
    }
}
