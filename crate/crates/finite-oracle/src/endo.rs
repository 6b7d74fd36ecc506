//! Endomorphisms of a finite group as full lookup tables.

use inertia_endo::Endomorphism;
use rand::Rng;

use crate::group::{Elem, FiniteAbelianGroup};
use crate::OracleError;

#[derive(Clone, Debug)]
pub struct FiniteEndo {
    /// phi(e_j) = sum_k matrix[j][k] e_k
    pub matrix: Vec<Vec<u32>>,
    table: Vec<Elem>,
}

impl FiniteEndo {
    pub fn from_matrix(g: &FiniteAbelianGroup, m: Vec<Vec<u32>>) -> Result<Self, OracleError> {
        let n = g.rank();
        if m.len() != n || m.iter().any(|r| r.len() != n) {
            return Err(OracleError::Invalid(format!("matrix must be {n}x{n}")));
        }
        let mut m = m;
        for j in 0..n {
            for k in 0..n {
                let qk = g.orders()[k] as u64;
                m[j][k] = (m[j][k] as u64 % qk) as u32;
                if (g.orders()[j] as u64 * m[j][k] as u64) % qk != 0 {
                    return Err(OracleError::Invalid(format!(
                        "entry ({}, {}) does not respect the order of generator {}",
                        j + 1,
                        k + 1,
                        j + 1
                    )));
                }
            }
        }
        let images: Vec<Elem> = m.iter().map(|r| g.encode(r)).collect();
        let mut table = vec![0; g.order() as usize];
        for x in 1..g.order() {
            // peel off the lowest nonzero digit
            let i = (0..n).find(|&i| g.digit(x, i) != 0).unwrap();
            let prev = x - g.unit(i);
            table[x as usize] = g.add(table[prev as usize], images[i]);
        }
        Ok(FiniteEndo { matrix: m, table })
    }

    pub fn scalar(g: &FiniteAbelianGroup, k: u64) -> Self {
        let n = g.rank();
        let m = (0..n)
            .map(|j| (0..n).map(|i| if i == j { (k % g.orders()[j] as u64) as u32 } else { 0 }).collect())
            .collect();
        Self::from_matrix(g, m).expect("scalars are well defined")
    }

    /// From an endomorphism of a finite slot descriptor.
    pub fn from_endo(g: &FiniteAbelianGroup, phi: &Endomorphism) -> Result<Self, OracleError> {
        let (_, rows) = inertia_endo::convert::finite_matrix(phi)?;
        Self::from_matrix(g, rows.into_iter().map(|r| r.into_iter().map(|x| x as u32).collect()).collect())
    }

    #[inline]
    pub fn apply(&self, x: Elem) -> Elem {
        self.table[x as usize]
    }

    pub fn table(&self) -> &[Elem] {
        &self.table
    }

    /// Adjoint for the pairing <x, y> = sum x_i y_i / q_i, so that
    /// <phi x, y> = <x, phi* y>.
    pub fn dual(&self, g: &FiniteAbelianGroup) -> Self {
        let n = g.rank();
        let mut d = vec![vec![0u32; n]; n];
        for j in 0..n {
            for k in 0..n {
                let c = self.matrix[j][k] as u64;
                if c == 0 || g.prime_of(j) != g.prime_of(k) {
                    continue;
                }
                let (qj, qk) = (g.orders()[j] as u64, g.orders()[k] as u64);
                // (phi* y)_j gets c * q_j / q_k * y_k
                let v = if qj >= qk { c * (qj / qk) } else { c / (qk / qj) };
                d[k][j] = (v % qj) as u32;
            }
        }
        Self::from_matrix(g, d).expect("the adjoint is well defined")
    }
}

/// A uniformly random endomorphism: entry (j, k) ranges over the multiples
/// of q_k / gcd(q_j, q_k) when the primes agree, zero otherwise.
pub fn random_endo<R: Rng>(g: &FiniteAbelianGroup, rng: &mut R) -> FiniteEndo {
    let n = g.rank();
    let mut m = vec![vec![0u32; n]; n];
    for j in 0..n {
        for k in 0..n {
            if g.prime_of(j) != g.prime_of(k) {
                continue;
            }
            let (qj, qk) = (g.orders()[j], g.orders()[k]);
            let step = qk / num_integer::gcd(qj, qk);
            m[j][k] = rng.gen_range(0..qk / step) * step;
        }
    }
    FiniteEndo::from_matrix(g, m).expect("constructed well defined")
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;

    #[test]
    fn dual_is_adjoint() {
        let g = FiniteAbelianGroup::new(&[(2, 1), (2, 3), (2, 2), (3, 1)], 1 << 14).unwrap();
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        for _ in 0..20 {
            let phi = random_endo(&g, &mut rng);
            let d = phi.dual(&g);
            let pair = |x: Elem, y: Elem| -> (u64, u64) {
                // sum x_i y_i / q_i as a reduced fraction mod 1 over the lcm
                let l = g.orders().iter().fold(1u64, |a, &q| num_integer::lcm(a, q as u64));
                let s: u64 = (0..g.rank())
                    .map(|i| g.digit(x, i) as u64 * g.digit(y, i) as u64 * (l / g.orders()[i] as u64))
                    .sum();
                (s % l, l)
            };
            for x in (0..g.order()).step_by(7) {
                for y in (0..g.order()).step_by(11) {
                    assert_eq!(pair(phi.apply(x), y), pair(x, d.apply(y)));
                }
            }
        }
    }
}
