//! Recomputes every section of a witness family on integer lattices.

use inertia_group::section::{fg_free_rank, fg_index};
use inertia_group::SectionSize;
use num_bigint::BigInt;

use crate::{Growth, Mode, Witness, WitnessError};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Verification {
    pub ok: bool,
    pub first_failure: Option<u32>,
    pub sections: Vec<SectionSize>,
}

/// Checks indices 1..=k. A section whose rank goes up counts as infinite.
pub fn verify_witness(w: &Witness, k: u32) -> Result<Verification, WitnessError> {
    let g = w.ambient();
    w.endo.check()?;
    for e in &w.fixed {
        g.canonical(e.clone())?;
    }
    let mut sections = Vec::new();
    let mut first_failure = None;
    for i in 1..=k {
        let x = w.member(i);
        for e in &x {
            g.canonical(e.clone())?;
        }
        let y: Vec<_> = x.iter().map(|e| w.endo.apply(e)).collect();
        // the section is |<a, b> : <a>|
        let (a, b) = match w.mode {
            Mode::Rin => (&x, &y),
            Mode::Lin => (&y, &x),
        };
        let section = match fg_index(g, a, b) {
            Some(n) => SectionSize::Finite(n),
            None => SectionSize::CertifiedInfinite(format!("torsion-free rank rises at index {i}")),
        };
        let pass = match &w.growth {
            Growth::Rank(r) => {
                let both: Vec<_> = a.iter().chain(b.iter()).cloned().collect();
                fg_free_rank(g, &both) >= fg_free_rank(g, a) + *r as usize
            }
            growth => match &section {
                SectionSize::Finite(n) => n >= &growth.at(i).unwrap_or_else(|| BigInt::from(0)),
                _ => true,
            },
        };
        sections.push(section);
        if !pass && first_failure.is_none() {
            first_failure = Some(i);
        }
    }
    Ok(Verification { ok: first_failure.is_none(), first_failure, sections })
}
