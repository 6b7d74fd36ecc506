//! A truncated model of the group A = <v, d_p> inside Q + (+)_p Z(p^2), with
//! v = (1; 0) and d_p = (1/p; u_p). Only primes p <= P are kept, so A_P is
//! finitely generated: A_P = Z^(1 + #primes) / <p^2 d_p - p v>.
//!
//! The automorphisms sigma_s fix v and send d_p to d_p + s_p b_p with
//! b_p = p d_p - v of order p. They fix V + T and act trivially on A/(V + T).

use inertia_endo::convert::from_generator_matrix;
use inertia_endo::Endomorphism;
use inertia_group::lattice::Row;
use inertia_group::parse::{parse_element, parse_group};
use inertia_group::{Element, GroupDescriptor};
use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::{Expected, GalleryEntry, GalleryError};

#[derive(Clone, Debug)]
pub struct PropositionA {
    pub bound: u64,
    pub primes: Vec<u64>,
    /// A_P by generators v, d_p (in that order) and relations
    pub group: GroupDescriptor,
}

fn relations(primes: &[u64]) -> Vec<Row> {
    let n = primes.len() + 1;
    primes
        .iter()
        .enumerate()
        .map(|(i, &p)| {
            let mut r = vec![BigInt::zero(); n];
            r[0] = -BigInt::from(p);
            r[i + 1] = BigInt::from(p * p);
            r
        })
        .collect()
}

impl PropositionA {
    pub fn new(bound: u64) -> Result<PropositionA, GalleryError> {
        if bound < 2 {
            return Err(GalleryError::Param("the prime bound must be at least 2".into()));
        }
        let primes = inertia_group::primes::primes_upto(bound);
        let group = GroupDescriptor::from_presentation(relations(&primes), primes.len() + 1)?;
        Ok(PropositionA { bound, primes, group })
    }

    /// A_P / <v>.
    pub fn quotient_by_v(&self) -> Result<GroupDescriptor, GalleryError> {
        let mut rels = relations(&self.primes);
        let mut v = vec![BigInt::zero(); self.primes.len() + 1];
        v[0] = BigInt::one();
        rels.push(v);
        Ok(GroupDescriptor::from_presentation(rels, self.primes.len() + 1)?)
    }

    /// The ambient Q + (+)_p Z(p^2) and the model generators v, d_p in it.
    pub fn ambient_model(&self) -> Result<(GroupDescriptor, Vec<Element>), GalleryError> {
        let mut text = String::from("Q");
        for p in &self.primes {
            text.push_str(&format!(" + Z({p}^2)"));
        }
        let amb = parse_group(&text)?;
        let mut gens = vec![parse_element(&amb, "[1: 1]")?];
        for (i, p) in self.primes.iter().enumerate() {
            gens.push(parse_element(&amb, &format!("[1: 1/{p}, {}: 1]", i + 2))?);
        }
        Ok((amb, gens))
    }

    /// sigma_s for coefficients s_p (read mod p), one per prime <= P.
    pub fn sigma_element(&self, s: &[u64]) -> Result<Endomorphism, GalleryError> {
        if s.len() != self.primes.len() {
            return Err(GalleryError::Param(format!("expected {} coefficients, one per prime", self.primes.len())));
        }
        let n = self.primes.len() + 1;
        let mut rows: Vec<Row> = vec![vec![BigInt::zero(); n]; n];
        rows[0][0] = BigInt::one();
        for (i, (&p, &c)) in self.primes.iter().zip(s).enumerate() {
            let c = BigInt::from(c % p);
            // d_p + c (p d_p - v)
            rows[i + 1][0] = -c.clone();
            rows[i + 1][i + 1] = BigInt::one() + c * p;
        }
        Ok(from_generator_matrix(&self.group, &rows)?)
    }

    /// prod of p over the primes with s_p != 0 mod p.
    pub fn expected_image_order(&self, s: &[u64]) -> BigInt {
        self.primes.iter().zip(s).filter(|(&p, &c)| c % p != 0).map(|(&p, _)| BigInt::from(p)).product()
    }

    pub fn entry(&self) -> Result<GalleryEntry, GalleryError> {
        let ones = vec![1; self.primes.len()];
        Ok(GalleryEntry {
            name: "proposition-a".into(),
            group: self.group.clone(),
            endos: vec![self.sigma_element(&ones)?],
            expected: Expected { rin: true, lin: true },
            inverse: None,
            claim: format!("the stabilizer of 0 <= V + T <= A_P, P = {}, consists of inertial automorphisms", self.bound),
        })
    }
}
