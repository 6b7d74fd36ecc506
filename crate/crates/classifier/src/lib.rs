//! Right (RIN) and left (LIN) inertia of structured endomorphisms.
//!
//! A positive answer comes with a certificate that [`validate_certificate`]
//! re-checks from scratch; a negative one comes with a family of subgroups
//! from `inertia_witness` whose sections grow without bound.

pub mod blocks;
pub mod certificate;
pub mod decide;
pub mod json;
pub mod tools;

use inertia_endo::{EndoError, Endomorphism};
use inertia_group::{GroupDescriptor, GroupError, Q};
use inertia_witness::{Witness, WitnessError};

pub use certificate::{validate_certificate, Certificate, EndoScalars};
pub use decide::{classify_endo, EndoForm, EndoVerdict};
pub use tools::{automorphism_bridge, commutator_check, common_v, convert_mf_fm, inverse, lift_finite_index, Bridge, MfFm};

#[derive(Debug, thiserror::Error)]
pub enum ClassifyError {
    #[error(transparent)]
    Endo(#[from] EndoError),
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error(transparent)]
    Witness(#[from] WitnessError),
    #[error("precondition: {0}")]
    Precondition(String),
    #[error("invalid certificate: {0}")]
    Invalid(String),
}

#[derive(Clone, Debug)]
pub struct Verdict {
    pub rin: bool,
    pub lin: bool,
    pub per_endo: Vec<EndoVerdict>,
    pub certificate: Option<Certificate>,
    /// for the first endomorphism that is not right inertial
    pub witness: Option<Witness>,
    /// for the first endomorphism that is not left inertial, when one was found
    pub lin_witness: Option<Witness>,
    pub reason: String,
}

fn same_ambient(phis: &[Endomorphism]) -> Result<&GroupDescriptor, ClassifyError> {
    let first = phis.first().ok_or_else(|| ClassifyError::Precondition("no endomorphisms".into()))?;
    for phi in phis {
        first.same_ambient(phi)?;
    }
    Ok(&first.ambient)
}

/// Decide every endomorphism, and certify the family when all are right
/// inertial.
pub fn classify_general(phis: &[Endomorphism], k: u32) -> Result<Verdict, ClassifyError> {
    same_ambient(phis)?;
    let per_endo = phis.iter().map(|phi| classify_endo(phi, k)).collect::<Result<Vec<_>, _>>()?;
    let rin = per_endo.iter().all(|v| v.rin);
    let lin = per_endo.iter().all(|v| v.lin);
    let first_bad = per_endo.iter().position(|v| !v.rin);
    let witness = first_bad.and_then(|i| per_endo[i].witness.clone());
    let lin_witness = per_endo.iter().find(|v| !v.lin).and_then(|v| v.lin_witness.clone());
    let reason = match first_bad {
        Some(i) if phis.len() > 1 => format!("endomorphism {}: {}", i + 1, per_endo[i].reason),
        Some(i) => per_endo[i].reason.clone(),
        None => String::new(),
    };
    let certificate = if rin {
        let c = certificate::build(phis, &per_endo)?;
        validate_certificate(&c)?;
        Some(c)
    } else {
        None
    };
    Ok(Verdict { rin, lin, per_endo, certificate, witness, lin_witness, reason })
}

/// Multiplication by s on the whole group.
pub fn classify_multiplication(s: &Q, g: &GroupDescriptor, k: u32) -> Result<Verdict, ClassifyError> {
    let phi = Endomorphism::scalar(g, s)?;
    classify_general(&[phi], k)
}

pub fn classify_torsion_free(phi: &Endomorphism, k: u32) -> Result<Verdict, ClassifyError> {
    if !phi.ambient.is_torsion_free() {
        return Err(ClassifyError::Precondition("the group has torsion slots".into()));
    }
    classify_general(std::slice::from_ref(phi), k)
}

pub fn classify_periodic(phis: &[Endomorphism], k: u32) -> Result<Verdict, ClassifyError> {
    if !same_ambient(phis)?.is_periodic() {
        return Err(ClassifyError::Precondition("the group is not periodic".into()));
    }
    classify_general(phis, k)
}
