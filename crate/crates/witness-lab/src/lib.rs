//! Witnesses of non-inertia: a family X_1, X_2, ... of finitely generated
//! subgroups together with a closed-form lower bound for the section
//! |(X_i + phi X_i) / X_i| (or |X_i / (X_i cap phi X_i)| for the left-hand
//! notion) that grows without bound.
//!
//! A family is a fixed generating set plus a generator schema g_j built from
//! parts; part values may move to a fresh copy of an omega slot with j, or
//! deepen as value * p^-(j + offset).

pub mod build;
pub mod json;
pub mod row;
mod verify;

use inertia_endo::{EndoError, Endomorphism};
use inertia_group::{Element, GroupDescriptor, GroupError, Q};
use num_bigint::BigInt;
use num_traits::{One, Signed};

pub use build::{
    diagonal_witness, free_rank_witness, independence_witness, primary_witness, terms_clear_copy,
};
pub use verify::{verify_witness, Verification};

/// Default number of family members checked.
pub const DEFAULT_K: u32 = 20;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum WitnessError {
    #[error(transparent)]
    Endo(#[from] EndoError),
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error("precondition: {0}")]
    Precondition(String),
    #[error("claimed growth not attained at index {index}")]
    NotAttained { index: u32 },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Mode {
    /// |(X + phi X) / X|
    Rin,
    /// |X / (X cap phi X)|
    Lin,
}

impl Mode {
    pub fn name(&self) -> &'static str {
        match self {
            Mode::Rin => "rin",
            Mode::Lin => "lin",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Kind {
    Diagonal,
    FreeRank,
    Independence,
    Primary,
    Pairing,
}

impl Kind {
    pub fn name(&self) -> &'static str {
        match self {
            Kind::Diagonal => "diagonal",
            Kind::FreeRank => "freeRank",
            Kind::Independence => "independence",
            Kind::Primary => "primary",
            Kind::Pairing => "pairing",
        }
    }

    pub fn from_name(s: &str) -> Option<Kind> {
        [Kind::Diagonal, Kind::FreeRank, Kind::Independence, Kind::Primary, Kind::Pairing]
            .into_iter()
            .find(|k| k.name() == s)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CopyRule {
    Fixed(u64),
    /// copy start + j - 1 for the j-th generator
    Shift(u64),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Part {
    pub slot: usize,
    pub copy: CopyRule,
    pub value: Q,
    /// 1 for a value that does not deepen with j
    pub prime: u64,
    pub offset: i64,
}

impl Part {
    pub fn constant(slot: usize, copy: CopyRule, value: Q) -> Part {
        Part { slot, copy, value, prime: 1, offset: 0 }
    }

    pub fn ladder(slot: usize, copy: CopyRule, value: Q, prime: u64, offset: i64) -> Part {
        Part { slot, copy, value, prime, offset }
    }

    fn at(&self, j: u32) -> (inertia_group::Coord, Q) {
        let copy = match self.copy {
            CopyRule::Fixed(c) => c,
            CopyRule::Shift(c) => c + j as u64 - 1,
        };
        let mut v = self.value.clone();
        if self.prime > 1 {
            let d = j as i64 + self.offset;
            let pk = Q::from_integer(num_traits::pow(BigInt::from(self.prime), d.unsigned_abs() as usize));
            if d >= 0 {
                v /= pk;
            } else {
                v *= pk;
            }
        }
        ((self.slot, copy), v)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Shape {
    /// X_i = <fixed, g_1, ..., g_i>
    Cumulative,
    /// X_i = <fixed, g_i>
    Single,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Growth {
    /// coef * base^(i - shift), shift at most 1
    Power { coef: BigInt, base: BigInt, shift: u32 },
    /// the torsion-free rank goes up by at least r at every index
    Rank(u32),
}

impl Growth {
    pub fn power(base: impl Into<BigInt>) -> Growth {
        Growth::Power { coef: BigInt::one(), base: base.into(), shift: 0 }
    }

    /// Claimed lower bound at index i (None for rank growth).
    pub fn at(&self, i: u32) -> Option<BigInt> {
        match self {
            Growth::Power { coef, base, shift } => {
                let e = i.saturating_sub(*shift) as usize;
                Some(coef * num_traits::pow(base.clone(), e))
            }
            Growth::Rank(_) => None,
        }
    }

    pub fn describe(&self) -> String {
        match self {
            Growth::Power { coef, base, shift } => {
                let exp = match shift {
                    0 => "i".to_string(),
                    s => format!("(i-{s})"),
                };
                if coef.is_one() {
                    format!("{base}^{exp}")
                } else {
                    format!("{coef}*{base}^{exp}")
                }
            }
            Growth::Rank(r) => format!("rank +{r}"),
        }
    }

    fn well_formed(&self) -> bool {
        match self {
            Growth::Power { coef, base, shift } => coef.is_positive() && base > &BigInt::one() && *shift <= 1,
            Growth::Rank(r) => *r > 0,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Witness {
    pub kind: Kind,
    pub mode: Mode,
    pub endo: Endomorphism,
    pub fixed: Vec<Element>,
    pub parts: Vec<Part>,
    pub shape: Shape,
    pub growth: Growth,
    pub verified_to: u32,
    pub reason: String,
}

impl Witness {
    pub fn ambient(&self) -> &GroupDescriptor {
        &self.endo.ambient
    }

    /// The j-th generator of the schema.
    pub fn generator(&self, j: u32) -> Element {
        let mut e = Element::zero();
        for p in &self.parts {
            let (c, v) = p.at(j);
            e.add_at(c, v);
        }
        self.endo.ambient.reduce(e)
    }

    /// Generators of X_i.
    pub fn member(&self, i: u32) -> Vec<Element> {
        let mut gens = self.fixed.clone();
        if !self.parts.is_empty() {
            match self.shape {
                Shape::Cumulative => gens.extend((1..=i).map(|j| self.generator(j))),
                Shape::Single => gens.push(self.generator(i)),
            }
        }
        gens.retain(|g| !g.is_zero());
        gens
    }

    /// Check the family against phi up to index k and record it.
    pub fn finish(mut self, k: u32) -> Result<Witness, WitnessError> {
        if !self.growth.well_formed() {
            return Err(WitnessError::Precondition(format!("growth {} is not unbounded", self.growth.describe())));
        }
        let v = verify_witness(&self, k)?;
        if let Some(i) = v.first_failure {
            return Err(WitnessError::NotAttained { index: i });
        }
        self.verified_to = k;
        Ok(self)
    }
}

