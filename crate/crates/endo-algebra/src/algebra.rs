//! Evaluation, sums and composites in the normal form.

use inertia_group::rational::{pow, proj_primary};
use inertia_group::{Element, Q};
use num_bigint::BigInt;
use num_traits::Zero;

use crate::{coef, EndoError, Endomorphism, FinTerm};

/// k(x) = q^f * proj_q(w * x_s) as an integer in [0, q^f).
pub fn functional(t: &FinTerm, x: &Element) -> BigInt {
    let xs = x.get(t.source);
    if xs.is_zero() {
        return BigInt::zero();
    }
    let y = proj_primary(&(&t.weight * xs), t.p) * Q::from_integer(pow(t.p, t.f));
    debug_assert!(y.denom() == &BigInt::from(1));
    y.to_integer()
}

impl Endomorphism {
    /// Linear part only.
    pub fn apply_linear(&self, x: &Element) -> Element {
        let g = &self.ambient;
        let mut out = Element::zero();
        for ((s, c), v) in &x.coords {
            if g.slots[*s].mult.is_omega() {
                for ((t, s2), k) in &self.each {
                    if s2 == s {
                        out.add_at((*t, *c), coef::apply(&g.slots[*t].atom, k, v));
                    }
                }
            } else {
                for ((_, tc), k) in self.copy.range(((*s, *c), (0, 0))..=((*s, *c), (usize::MAX, u64::MAX))) {
                    out.add_at(*tc, coef::apply(g.atom(*tc), k, v));
                }
            }
        }
        g.reduce(out)
    }

    pub fn apply(&self, x: &Element) -> Element {
        let g = &self.ambient;
        let mut out = self.apply_linear(x);
        for t in &self.terms {
            let k = functional(t, x);
            if !k.is_zero() {
                out = g.add(&out, &g.scale(&k, &t.target));
            }
        }
        out
    }

    pub fn add(&self, other: &Endomorphism) -> Result<Endomorphism, EndoError> {
        self.same_ambient(other)?;
        let mut s = self.clone();
        for (k, v) in &other.each {
            *s.each.entry(*k).or_insert_with(Q::zero) += v;
        }
        for (k, v) in &other.copy {
            *s.copy.entry(*k).or_insert_with(Q::zero) += v;
        }
        s.terms.extend(other.terms.iter().cloned());
        Ok(s.normalized())
    }

    pub fn neg(&self) -> Endomorphism {
        let g = &self.ambient;
        let mut s = self.clone();
        for v in s.each.values_mut() {
            *v = -&*v;
        }
        for v in s.copy.values_mut() {
            *v = -&*v;
        }
        for t in s.terms.iter_mut() {
            t.target = g.neg(&t.target);
        }
        s.normalized()
    }

    pub fn sub(&self, other: &Endomorphism) -> Result<Endomorphism, EndoError> {
        self.add(&other.neg())
    }

    /// self - c (c a scalar on every slot).
    pub fn minus_scalar(&self, c: &Q) -> Result<Endomorphism, EndoError> {
        self.sub(&Endomorphism::scalar(&self.ambient, c)?)
    }

    /// self ∘ other (apply `other` first).
    pub fn compose(&self, other: &Endomorphism) -> Result<Endomorphism, EndoError> {
        self.same_ambient(other)?;
        let g = &self.ambient;
        let mut out = Endomorphism::zero(g);
        // generic part: matrix product over omega slots
        for ((t, u), a) in &self.each {
            for ((u2, s), b) in &other.each {
                if u == u2 {
                    *out.each.entry((*t, *s)).or_insert_with(Q::zero) += a * b;
                }
            }
        }
        for ((s, u), b) in &other.copy {
            for ((_, t), a) in self.copy.range((*u, (0, 0))..=(*u, (usize::MAX, u64::MAX))) {
                *out.copy.entry((*s, *t)).or_insert_with(Q::zero) += a * b;
            }
        }
        // self applied to the targets of other's terms
        for t in &other.terms {
            let target = self.apply(&t.target);
            out.terms.push(FinTerm { target, ..t.clone() });
        }
        for t1 in &self.terms {
            // t1 after other's linear part: one term per entry landing on t1's source
            let (slot, copy) = t1.source;
            if g.slots[slot].mult.is_omega() {
                for ((t, s), c) in &other.each {
                    if *t == slot {
                        out.terms.push(FinTerm { source: (*s, copy), weight: &t1.weight * c, ..t1.clone() });
                    }
                }
            } else {
                for ((s, t), c) in &other.copy {
                    if *t == t1.source {
                        out.terms.push(FinTerm { source: *s, weight: &t1.weight * c, ..t1.clone() });
                    }
                }
            }
            // t1 after other's terms
            for t2 in &other.terms {
                let k = functional(t1, &t2.target);
                if !k.is_zero() {
                    out.terms.push(FinTerm { target: g.scale(&k, &t1.target), ..t2.clone() });
                }
            }
        }
        out.check()?;
        Ok(out.normalized())
    }

    pub fn pow(&self, n: u32) -> Result<Endomorphism, EndoError> {
        let mut r = Endomorphism::identity(&self.ambient);
        for _ in 0..n {
            r = self.compose(&r)?;
        }
        Ok(r)
    }
}

#[cfg(test)]
mod tests {
    use crate::parse::parse_endo;
    use inertia_group::parse::{parse_element, parse_group};

    #[test]
    fn compose_matches_apply() {
        let g = parse_group("Z(4) + Z(2) + Z + Z(2^inf)").unwrap();
        let a = parse_endo(&g, "matrix{1.1<-1.1: 3; 2.1<-1.1: 2; 4.1<-3.1: 1/4; 1.1<-2.1: 1} + mult 1").unwrap();
        let b = parse_endo(&g, "block{1: 1; 2: 1; 3: 3; 4: 5} + finitary{3.1 * 1/2 mod 2^1 -> [2.1: 1]}").unwrap();
        let ab = a.compose(&b).unwrap();
        for s in ["[1: 1]", "[2: 1]", "[3: 3]", "[4: 5/16, 1: 3]", "[3: 7, 2: 1]"] {
            let x = parse_element(&g, s).unwrap();
            assert_eq!(ab.apply(&x), a.apply(&b.apply(&x)), "at {s}");
        }
    }
}
