//! Small-prime arithmetic and prime sets.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::GroupError;

fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

fn pow_mod(mut b: u64, mut e: u64, m: u64) -> u64 {
    let mut r = 1 % m;
    b %= m;
    while e > 0 {
        if e & 1 == 1 {
            r = mul_mod(r, b, m);
        }
        b = mul_mod(b, b, m);
        e >>= 1;
    }
    r
}

/// Deterministic Miller-Rabin for all u64.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for p in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n % p == 0 {
            return n == p;
        }
    }
    let mut d = n - 1;
    let mut s = 0;
    while d % 2 == 0 {
        d /= 2;
        s += 1;
    }
    'outer: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'outer;
            }
        }
        return false;
    }
    true
}

/// Primes up to and including `bound`.
pub fn primes_upto(bound: u64) -> Vec<u64> {
    (2..=bound).filter(|&n| is_prime(n)).collect()
}

/// Prime factorisation of |n| as (prime, exponent) pairs, ascending.
///
/// Trial division to 2^20, then the cofactor must be a prime below 2^64.
pub fn factor(n: &BigInt) -> Result<Vec<(u64, u32)>, GroupError> {
    let mut m = n.abs();
    if m.is_zero() {
        return Err(GroupError::Arithmetic("cannot factor zero".into()));
    }
    let mut out = Vec::new();
    let mut p: u64 = 2;
    while p < (1 << 20) {
        let bp = BigInt::from(p);
        if &bp * &bp > m {
            break;
        }
        let mut e = 0;
        while (&m % &bp).is_zero() {
            m /= &bp;
            e += 1;
        }
        if e > 0 {
            out.push((p, e));
        }
        p += if p == 2 { 1 } else { 2 };
    }
    if !m.is_one() {
        match m.to_u64() {
            Some(q) if is_prime(q) => out.push((q, 1)),
            _ => {
                return Err(GroupError::Arithmetic(format!(
                    "cofactor {m} too large to factor"
                )))
            }
        }
    }
    Ok(out)
}

/// Exponent of p in the integer n (n != 0).
pub fn vp_int(n: &BigInt, p: u64) -> u32 {
    debug_assert!(!n.is_zero());
    let bp = BigInt::from(p);
    let mut m = n.clone();
    let mut e = 0;
    while (&m % &bp).is_zero() {
        m /= &bp;
        e += 1;
    }
    e
}

/// A set of primes: finite, or all of them.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum PrimeSet {
    Finite(Vec<u64>),
    All,
}

impl PrimeSet {
    pub fn empty() -> Self {
        PrimeSet::Finite(Vec::new())
    }

    /// Sorted, deduplicated; rejects non-primes.
    pub fn finite(mut ps: Vec<u64>) -> Result<Self, GroupError> {
        ps.sort_unstable();
        ps.dedup();
        if let Some(q) = ps.iter().find(|&&q| !is_prime(q)) {
            return Err(GroupError::Invalid(format!("{q} is not prime")));
        }
        Ok(PrimeSet::Finite(ps))
    }

    pub fn contains(&self, p: u64) -> bool {
        match self {
            PrimeSet::All => true,
            PrimeSet::Finite(v) => v.binary_search(&p).is_ok(),
        }
    }

    pub fn is_empty(&self) -> bool {
        matches!(self, PrimeSet::Finite(v) if v.is_empty())
    }

    pub fn is_subset(&self, other: &PrimeSet) -> bool {
        match (self, other) {
            (_, PrimeSet::All) => true,
            (PrimeSet::All, PrimeSet::Finite(_)) => false,
            (PrimeSet::Finite(a), PrimeSet::Finite(_)) => a.iter().all(|&p| other.contains(p)),
        }
    }

    pub fn union(&self, other: &PrimeSet) -> PrimeSet {
        match (self, other) {
            (PrimeSet::Finite(a), PrimeSet::Finite(b)) => {
                let mut v = a.clone();
                v.extend(b.iter().copied());
                v.sort_unstable();
                v.dedup();
                PrimeSet::Finite(v)
            }
            _ => PrimeSet::All,
        }
    }

    pub fn intersection(&self, other: &PrimeSet) -> PrimeSet {
        match (self, other) {
            (PrimeSet::All, x) | (x, PrimeSet::All) => x.clone(),
            (PrimeSet::Finite(a), _) => {
                PrimeSet::Finite(a.iter().copied().filter(|&p| other.contains(p)).collect())
            }
        }
    }

    /// The primes of the set, with ALL cut off at `bound`.
    pub fn primes_upto(&self, bound: u64) -> Vec<u64> {
        match self {
            PrimeSet::All => primes_upto(bound),
            PrimeSet::Finite(v) => v.iter().copied().filter(|&p| p <= bound).collect(),
        }
    }

    /// True when every prime factor of n lies in the set.
    pub fn admits(&self, n: &BigInt) -> Result<bool, GroupError> {
        if n.is_zero() {
            return Ok(false);
        }
        if let PrimeSet::All = self {
            return Ok(true);
        }
        Ok(factor(n)?.iter().all(|&(p, _)| self.contains(p)))
    }

    /// Primes dividing n.
    pub fn of(n: &BigInt) -> Result<PrimeSet, GroupError> {
        if n.is_zero() {
            return Err(GroupError::Arithmetic("prime set of zero".into()));
        }
        Ok(PrimeSet::Finite(factor(n)?.into_iter().map(|(p, _)| p).collect()))
    }
}

impl fmt::Display for PrimeSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PrimeSet::All => write!(f, "ALL"),
            PrimeSet::Finite(v) => {
                let s: Vec<String> = v.iter().map(|p| p.to_string()).collect();
                write!(f, "{}", s.join(","))
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn primality_small() {
        let ps: Vec<u64> = (0..50).filter(|&n| is_prime(n)).collect();
        assert_eq!(ps, vec![2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47]);
        assert!(is_prime(1_000_000_007));
        assert!(!is_prime(3215031751));
    }

    #[test]
    fn factor_roundtrip() {
        let n = BigInt::from(2u64.pow(5) * 3 * 49 * 1_000_003);
        let f = factor(&n).unwrap();
        assert_eq!(f, vec![(2, 5), (3, 1), (7, 2), (1_000_003, 1)]);
        assert_eq!(vp_int(&n, 7), 2);
    }

    #[test]
    fn set_ops() {
        let a = PrimeSet::finite(vec![3, 2, 3]).unwrap();
        let b = PrimeSet::finite(vec![5]).unwrap();
        assert_eq!(a, PrimeSet::Finite(vec![2, 3]));
        assert!(a.is_subset(&PrimeSet::All));
        assert!(!PrimeSet::All.is_subset(&a));
        assert_eq!(a.union(&b), PrimeSet::Finite(vec![2, 3, 5]));
        assert_eq!(a.intersection(&PrimeSet::All), a);
        assert!(a.admits(&BigInt::from(12)).unwrap());
        assert!(!a.admits(&BigInt::from(10)).unwrap());
        assert!(PrimeSet::finite(vec![4]).is_err());
    }
}
