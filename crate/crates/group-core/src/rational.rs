//! Helpers on exact rationals: valuations and primary projections in Q/Z.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::primes::vp_int;

pub type Q = BigRational;

pub fn qi(n: i64) -> Q {
    Q::from_integer(BigInt::from(n))
}

pub fn qr(n: i64, d: i64) -> Q {
    Q::new(BigInt::from(n), BigInt::from(d))
}

pub fn big(n: i64) -> BigInt {
    BigInt::from(n)
}

pub fn pow(p: u64, e: u32) -> BigInt {
    num_traits::pow(BigInt::from(p), e as usize)
}

/// p-adic valuation; None for zero.
pub fn vp(q: &Q, p: u64) -> Option<i64> {
    if q.is_zero() {
        return None;
    }
    Some(vp_int(q.numer(), p) as i64 - vp_int(q.denom(), p) as i64)
}

/// Exponent of p in the denominator (0 for zero).
pub fn den_vp(q: &Q, p: u64) -> u32 {
    if q.is_zero() {
        0
    } else {
        vp_int(q.denom(), p)
    }
}

/// Representative of q mod 1 in [0, 1).
pub fn frac(q: &Q) -> Q {
    let fl = q.numer().div_floor(q.denom());
    q - Q::from_integer(fl)
}

/// Inverse of a modulo m (gcd(a, m) = 1, m > 0).
pub fn inv_mod(a: &BigInt, m: &BigInt) -> BigInt {
    let g = a.mod_floor(m).extended_gcd(m);
    debug_assert!(g.gcd.is_one() || m.is_one());
    g.x.mod_floor(m)
}

/// The p-primary component of q in Q/Z, as r/p^k with 0 <= r < p^k.
pub fn proj_primary(q: &Q, p: u64) -> Q {
    if q.is_zero() {
        return Q::zero();
    }
    let k = vp_int(q.denom(), p);
    if k == 0 {
        return Q::zero();
    }
    let pk = pow(p, k);
    let rest = q.denom() / &pk;
    let r = (q.numer() * inv_mod(&rest, &pk)).mod_floor(&pk);
    Q::new(r, pk)
}

/// True when every prime of the denominator of q is p.
pub fn den_is_p_power(q: &Q, p: u64) -> bool {
    let k = den_vp(q, p);
    q.denom() == &pow(p, k)
}

/// Parse "a", "-a", "a/b".
pub fn parse_rational(s: &str) -> Option<Q> {
    let s = s.trim();
    let (n, d) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s, "1"),
    };
    let n: BigInt = n.parse().ok()?;
    let d: BigInt = d.parse().ok()?;
    if d.is_zero() {
        return None;
    }
    Some(Q::new(n, d))
}

pub fn fmt_rational(q: &Q) -> String {
    if q.denom().is_one() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

pub fn is_integer(q: &Q) -> bool {
    q.denom().is_one()
}

pub fn abs_int(q: &Q) -> BigInt {
    q.numer().abs()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn primary_split_sums_back() {
        // 7/12 = 1/4 + 1/3 in Q/Z
        let q = qr(7, 12);
        let a = proj_primary(&q, 2);
        let b = proj_primary(&q, 3);
        assert_eq!(frac(&(&a + &b)), q);
        assert_eq!(a, qr(1, 4));
        assert_eq!(b, qr(1, 3));
        assert_eq!(proj_primary(&qr(5, 7), 2), qi(0));
    }

    #[test]
    fn valuations() {
        assert_eq!(vp(&qr(9, 8), 2), Some(-3));
        assert_eq!(vp(&qr(9, 8), 3), Some(2));
        assert_eq!(vp(&qi(0), 3), None);
        assert_eq!(frac(&qr(-1, 3)), qr(2, 3));
        assert_eq!(parse_rational(" -3/6 "), Some(qr(-1, 2)));
        assert!(parse_rational("1/0").is_none());
    }
}
