//! Named examples with their expected verdicts, and seeded random inputs
//! for the property suites.

pub mod propa;
pub mod random;

use inertia_classify::{classify_general, ClassifyError, Verdict};
use inertia_endo::parse::parse_endo;
use inertia_endo::{EndoError, Endomorphism};
use inertia_group::parse::parse_group;
use inertia_group::{GroupDescriptor, GroupError};

pub use propa::PropositionA;

#[derive(Debug, thiserror::Error)]
pub enum GalleryError {
    #[error("bad parameter: {0}")]
    Param(String),
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error(transparent)]
    Endo(#[from] EndoError),
    #[error(transparent)]
    Classify(#[from] ClassifyError),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Expected {
    pub rin: bool,
    pub lin: bool,
}

#[derive(Clone, Debug)]
pub struct GalleryEntry {
    pub name: String,
    pub group: GroupDescriptor,
    pub endos: Vec<Endomorphism>,
    pub expected: Expected,
    /// expected verdict for the inverse of the single endomorphism, if any
    pub inverse: Option<Expected>,
    pub claim: String,
}

fn entry(name: &str, group: &str, endos: &[&str], expected: Expected, claim: &str) -> Result<GalleryEntry, GalleryError> {
    let g = parse_group(group)?;
    let endos = endos.iter().map(|e| parse_endo(&g, e)).collect::<Result<Vec<_>, _>>()?;
    Ok(GalleryEntry { name: name.into(), group: g, endos, expected, inverse: None, claim: claim.into() })
}

/// Doubling on Q^w: right but not left inertial; its inverse the other way
/// round.
pub fn q_omega_doubling() -> GalleryEntry {
    let mut e = entry(
        "q-omega-doubling",
        "Q^w",
        &["mult 2"],
        Expected { rin: true, lin: false },
        "an automorphism of Q^w that is right but not left inertial",
    )
    .expect("fixed entry");
    e.inverse = Some(Expected { rin: false, lin: true });
    e
}

/// Identity on Z(p^e)^w and inversion on Z(p^inf)^d: periodic, inertial on
/// both sides, and not finitary.
pub fn critical_id_inversion(p: u64, d: u32, e: u32) -> Result<GalleryEntry, GalleryError> {
    if p == 2 {
        return Err(GalleryError::Param("p = 2: identity and inversion agree up to finite image".into()));
    }
    if !inertia_group::primes::is_prime(p) {
        return Err(GalleryError::Param(format!("{p} is not prime")));
    }
    if d == 0 || e == 0 {
        return Err(GalleryError::Param("d and e must be positive".into()));
    }
    let group = format!("Z({p}^{e})^w + Z({p}^inf)^{d}");
    let mut out = entry(
        "critical-id-inversion",
        &group,
        &["block{1: 1; 2: -1}"],
        Expected { rin: true, lin: true },
        "identity on the bounded part, inversion on the divisible part",
    )?;
    out.inverse = Some(Expected { rin: true, lin: true });
    Ok(out)
}

/// The diagonal construction: local 1 on Z(2^inf), 1/2 on Q[2].
pub fn diagonal_failure() -> GalleryEntry {
    entry(
        "diagonal",
        "Z(2^inf) + Q[2]",
        &["block{1: local(2:1); 2: 1/2}"],
        Expected { rin: false, lin: false },
        "2 divides the denominator on A/T while the 2-torsion is divisible",
    )
    .expect("fixed entry")
}

/// Z(3^inf) + Q[2,3] with 1/2 on the free part: the divisible 3-part must
/// carry 1/2 as well.
pub fn divisible_coupling(matching: bool) -> GalleryEntry {
    let (endo, expected) = if matching {
        ("block{1: 1/2; 2: 1/2}", Expected { rin: true, lin: true })
    } else {
        ("block{1: 5; 2: 1/2}", Expected { rin: false, lin: false })
    };
    entry(
        if matching { "coupling-match" } else { "coupling-mismatch" },
        "Z(3^inf) + Q[2,3]",
        &[endo],
        expected,
        "the scalar on a divisible p-part must equal m/n when A/T is p-divisible",
    )
    .expect("fixed entry")
}

pub const NAMES: &[&str] =
    &["q-omega-doubling", "critical-id-inversion", "diagonal", "coupling-match", "coupling-mismatch", "proposition-a"];

#[derive(Clone, Debug)]
pub struct Params {
    pub p: u64,
    pub d: u32,
    pub e: u32,
    pub bound: u64,
}

impl Default for Params {
    fn default() -> Self {
        Params { p: 3, d: 1, e: 1, bound: 5 }
    }
}

pub fn by_name(name: &str, params: &Params) -> Result<GalleryEntry, GalleryError> {
    match name {
        "q-omega-doubling" => Ok(q_omega_doubling()),
        "critical-id-inversion" => critical_id_inversion(params.p, params.d, params.e),
        "diagonal" => Ok(diagonal_failure()),
        "coupling-match" => Ok(divisible_coupling(true)),
        "coupling-mismatch" => Ok(divisible_coupling(false)),
        "proposition-a" => PropositionA::new(params.bound)?.entry(),
        _ => Err(GalleryError::Param(format!("unknown entry '{name}'; known: {}", NAMES.join(", ")))),
    }
}

#[derive(Clone, Debug)]
pub struct Check {
    pub verdict: Verdict,
    pub inverse: Option<Verdict>,
    pub mismatches: Vec<String>,
}

impl Check {
    pub fn ok(&self) -> bool {
        self.mismatches.is_empty()
    }
}

/// Run the classifier on an entry and compare with its expectation.
pub fn check(e: &GalleryEntry, k: u32) -> Result<Check, GalleryError> {
    let verdict = classify_general(&e.endos, k)?;
    let mut mismatches = Vec::new();
    let mut compare = |what: &str, got: &Verdict, want: Expected| {
        if (got.rin, got.lin) != (want.rin, want.lin) {
            mismatches.push(format!(
                "{what}: expected rin={} lin={}, got rin={} lin={}",
                want.rin, want.lin, got.rin, got.lin
            ));
        }
    };
    compare(&e.name, &verdict, e.expected);
    let inverse = match (&e.inverse, e.endos.as_slice()) {
        (Some(want), [phi]) => {
            let inv = inertia_classify::inverse(phi)?;
            let v = classify_general(&[inv], k)?;
            compare("inverse", &v, *want);
            Some(v)
        }
        _ => None,
    };
    Ok(Check { verdict, inverse, mismatches })
}
