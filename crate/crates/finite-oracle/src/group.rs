//! Finite abelian groups Z(q_1) + ... + Z(q_k) with q_i prime powers,
//! elements encoded as mixed-radix integers.

use inertia_group::{Atom, GroupDescriptor, Mult};

use crate::OracleError;

pub type Elem = u32;

/// Above this order the addition table is not built.
const TABLE_LIMIT: u32 = 1024;

#[derive(Clone, Debug)]
pub struct FiniteAbelianGroup {
    primes: Vec<u32>,
    exps: Vec<u32>,
    orders: Vec<u32>,
    strides: Vec<u32>,
    size: u32,
    table: Option<Vec<u16>>,
}

impl PartialEq for FiniteAbelianGroup {
    fn eq(&self, other: &Self) -> bool {
        self.orders == other.orders
    }
}

impl FiniteAbelianGroup {
    /// Factors given as (p, e); order must not exceed `cap`.
    pub fn new(factors: &[(u32, u32)], cap: u32) -> Result<Self, OracleError> {
        let mut size: u64 = 1;
        let mut primes = Vec::new();
        let mut exps = Vec::new();
        let mut orders = Vec::new();
        for &(p, e) in factors {
            if !inertia_group::primes::is_prime(p as u64) || e == 0 {
                return Err(OracleError::Invalid(format!("Z({p}^{e}) is not a cyclic p-group")));
            }
            let q = (p as u64).checked_pow(e).filter(|q| *q <= cap as u64);
            let q = q.ok_or(OracleError::CapExceeded { order: u64::MAX, cap })?;
            size = size.saturating_mul(q);
            if size > cap as u64 {
                return Err(OracleError::CapExceeded { order: size, cap });
            }
            primes.push(p);
            exps.push(e);
            orders.push(q as u32);
        }
        let mut strides = vec![1u32; orders.len()];
        for i in 1..orders.len() {
            strides[i] = strides[i - 1] * orders[i - 1];
        }
        let mut g = FiniteAbelianGroup { primes, exps, orders, strides, size: size as u32, table: None };
        if g.size <= TABLE_LIMIT {
            let n = g.size;
            let mut t = vec![0u16; (n * n) as usize];
            for a in 0..n {
                for b in 0..n {
                    t[(a * n + b) as usize] = g.add_digits(a, b) as u16;
                }
            }
            g.table = Some(t);
        }
        Ok(g)
    }

    /// Finite slot descriptor to factors; presentations use their slots.
    pub fn from_descriptor(d: &GroupDescriptor, cap: u32) -> Result<Self, OracleError> {
        let mut f = Vec::new();
        for s in &d.slots {
            let k = match s.mult {
                Mult::Finite(k) => k,
                Mult::Omega => return Err(OracleError::Invalid(format!("{d} is not finite"))),
            };
            match s.atom {
                Atom::Cyclic { p, e } => {
                    for _ in 0..k {
                        f.push((p as u32, e));
                    }
                }
                _ => return Err(OracleError::Invalid(format!("{d} is not finite"))),
            }
        }
        Self::new(&f, cap)
    }

    pub fn factors(&self) -> Vec<(u32, u32)> {
        self.primes.iter().copied().zip(self.exps.iter().copied()).collect()
    }

    pub fn rank(&self) -> usize {
        self.orders.len()
    }

    pub fn order(&self) -> u32 {
        self.size
    }

    pub fn orders(&self) -> &[u32] {
        &self.orders
    }

    pub fn prime_of(&self, i: usize) -> u32 {
        self.primes[i]
    }

    pub fn exp_of(&self, i: usize) -> u32 {
        self.exps[i]
    }

    /// Distinct primes dividing the order, ascending.
    pub fn primes(&self) -> Vec<u32> {
        let mut v = self.primes.clone();
        v.sort();
        v.dedup();
        v
    }

    /// The single prime of a p-group.
    pub fn p_group_prime(&self) -> Option<u32> {
        match self.primes().as_slice() {
            [p] => Some(*p),
            [] => None,
            _ => None,
        }
    }

    pub fn is_elementary_2(&self) -> bool {
        self.orders.iter().all(|&q| q == 2)
    }

    pub fn digit(&self, x: Elem, i: usize) -> u32 {
        (x / self.strides[i]) % self.orders[i]
    }

    pub fn decode(&self, x: Elem) -> Vec<u32> {
        (0..self.rank()).map(|i| self.digit(x, i)).collect()
    }

    pub fn encode(&self, d: &[u32]) -> Elem {
        d.iter().zip(&self.orders).zip(&self.strides).map(|((x, q), s)| (x % q) * s).sum()
    }

    /// Unit vector of coordinate i.
    pub fn unit(&self, i: usize) -> Elem {
        self.strides[i]
    }

    fn add_digits(&self, a: Elem, b: Elem) -> Elem {
        let mut out = 0;
        for i in 0..self.rank() {
            let q = self.orders[i];
            out += ((self.digit(a, i) + self.digit(b, i)) % q) * self.strides[i];
        }
        out
    }

    #[inline]
    pub fn add(&self, a: Elem, b: Elem) -> Elem {
        match &self.table {
            Some(t) => t[(a * self.size + b) as usize] as Elem,
            None => self.add_digits(a, b),
        }
    }

    pub fn neg(&self, a: Elem) -> Elem {
        let mut out = 0;
        for i in 0..self.rank() {
            let q = self.orders[i];
            out += ((q - self.digit(a, i)) % q) * self.strides[i];
        }
        out
    }

    pub fn mul(&self, k: u64, a: Elem) -> Elem {
        let mut out = 0;
        for i in 0..self.rank() {
            let q = self.orders[i] as u64;
            out += (((k % q) * self.digit(a, i) as u64) % q) as u32 * self.strides[i];
        }
        out
    }

    pub fn element_order(&self, a: Elem) -> u64 {
        let mut o = 1u64;
        for i in 0..self.rank() {
            let q = self.orders[i] as u64;
            let d = self.digit(a, i) as u64;
            let oi = q / num_integer::gcd(q, d);
            o = num_integer::lcm(o, oi);
        }
        o
    }
}

impl std::fmt::Display for FiniteAbelianGroup {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.orders.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self.factors().iter().map(|(p, e)| format!("Z({p}^{e})")).collect();
        write!(f, "{}", parts.join(" + "))
    }
}

/// Bitset helpers over word slices.
pub mod bits {
    #[inline]
    pub fn words(n: u32) -> usize {
        (n as usize).div_ceil(64)
    }

    #[inline]
    pub fn get(s: &[u64], x: u32) -> bool {
        s[(x >> 6) as usize] >> (x & 63) & 1 == 1
    }

    #[inline]
    pub fn set(s: &mut [u64], x: u32) {
        s[(x >> 6) as usize] |= 1 << (x & 63);
    }

    pub fn count(s: &[u64]) -> u32 {
        s.iter().map(|w| w.count_ones()).sum()
    }

    pub fn subset(a: &[u64], b: &[u64]) -> bool {
        a.iter().zip(b).all(|(x, y)| x & !y == 0)
    }

    /// Members in increasing order.
    pub fn members(s: &[u64], out: &mut Vec<u32>) {
        out.clear();
        for (i, &w) in s.iter().enumerate() {
            let mut w = w;
            while w != 0 {
                let t = w.trailing_zeros();
                out.push((i as u32) << 6 | t);
                w &= w - 1;
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn arithmetic() {
        let g = FiniteAbelianGroup::new(&[(2, 2), (3, 1)], 1 << 14).unwrap();
        assert_eq!(g.order(), 12);
        let a = g.encode(&[3, 2]);
        let b = g.encode(&[2, 2]);
        assert_eq!(g.decode(g.add(a, b)), vec![1, 1]);
        assert_eq!(g.element_order(a), 12);
        assert_eq!(g.add(a, g.neg(a)), 0);
        assert_eq!(g.decode(g.mul(5, a)), vec![3, 1]);
        assert!(matches!(
            FiniteAbelianGroup::new(&[(2, 10), (2, 5)], 1 << 14),
            Err(OracleError::CapExceeded { .. })
        ));
    }
}

/// Every abelian group of order p^n, one per partition of n (parts
/// non-increasing).
pub fn p_groups(p: u32, n: u32, cap: u32) -> Result<Vec<FiniteAbelianGroup>, OracleError> {
    fn parts(n: u32, max: u32, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if n == 0 {
            out.push(cur.clone());
            return;
        }
        for k in (1..=max.min(n)).rev() {
            cur.push(k);
            parts(n - k, k, cur, out);
            cur.pop();
        }
    }
    let mut all = Vec::new();
    parts(n, n, &mut Vec::new(), &mut all);
    all.into_iter()
        .map(|ps| FiniteAbelianGroup::new(&ps.iter().map(|&e| (p, e)).collect::<Vec<_>>(), cap))
        .collect()
}
