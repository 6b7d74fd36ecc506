//! Finiteness and order of the image of an endomorphism.

use inertia_group::section::fg_order;
use inertia_group::{Atom, Coord, Element, SectionSize};
use num_bigint::BigInt;

use crate::{EndoError, Endomorphism};

#[derive(Clone, Debug)]
pub struct ImageInfo {
    pub size: SectionSize,
    /// generators of the image when it is finite
    pub gens: Vec<Element>,
}

/// Structural decision, then an exact order from the unit images.
pub fn image_finite(phi: &Endomorphism) -> ImageInfo {
    let g = &phi.ambient;
    if let Some(((t, s), _)) = phi.each.iter().next() {
        return infinite(format!("slot {} acts nontrivially on every copy of slot {}", t + 1, s + 1));
    }
    for ((s, t), _) in &phi.copy {
        let (sa, ta) = (g.atom(*s), g.atom(*t));
        let unbounded = match (sa, ta) {
            (Atom::Prufer { .. }, Atom::Prufer { .. }) => true,
            (Atom::Localized(_), Atom::Localized(_)) => true,
            (Atom::Localized(ps), Atom::Prufer { p }) => ps.contains(*p),
            _ => false,
        };
        if unbounded {
            return infinite(format!(
                "{}.{} -> {}.{} has infinite image",
                s.0 + 1,
                s.1 + 1,
                t.0 + 1,
                t.1 + 1
            ));
        }
    }
    // every source copy now has finite image; with all targets of order
    // prime to a localized source's primes, its image is generated by phi(1)
    let mut sources: Vec<Coord> = phi.copy.keys().map(|(s, _)| *s).collect();
    sources.extend(phi.terms.iter().map(|t| t.source));
    sources.sort();
    sources.dedup();
    let mut gens = Vec::new();
    for c in sources {
        let atom = g.atom(c);
        if let Atom::Prufer { .. } = atom {
            continue;
        }
        let y = phi.apply(&Element::unit_at(c, atom.unit()));
        if !y.is_zero() {
            gens.push(y);
        }
    }
    let n = fg_order(g, &gens).expect("finite image generators are torsion");
    ImageInfo { size: SectionSize::Finite(n), gens }
}

fn infinite(reason: String) -> ImageInfo {
    ImageInfo { size: SectionSize::CertifiedInfinite(reason), gens: Vec::new() }
}

impl Endomorphism {
    /// Exact equality as maps.
    pub fn equals(&self, other: &Endomorphism) -> Result<bool, EndoError> {
        let d = self.sub(other)?;
        Ok(image_finite(&d).size.is_finite_one())
    }

    /// Equality modulo a finite-image endomorphism.
    pub fn equal_mod_finitary(&self, other: &Endomorphism) -> Result<bool, EndoError> {
        let d = self.sub(other)?;
        Ok(matches!(image_finite(&d).size, SectionSize::Finite(_)))
    }

    pub fn is_zero_map(&self) -> bool {
        image_finite(self).size.is_finite_one()
    }

    pub fn image_order(&self) -> Option<BigInt> {
        image_finite(self).size.finite().cloned()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::parse_endo;
    use inertia_group::parse::parse_group;

    #[test]
    fn examples() {
        let g = parse_group("Z(3)^w + Z(3^inf)").unwrap();
        let phi = parse_endo(&g, "block{1: 1; 2: -1}").unwrap();
        assert!(matches!(image_finite(&phi.minus_scalar(&inertia_group::rational::qi(1)).unwrap()).size, SectionSize::CertifiedInfinite(_)));
        let g = parse_group("Z(2)^3").unwrap();
        let phi = parse_endo(&g, "mult 1").unwrap();
        assert_eq!(image_finite(&phi).size, SectionSize::Finite(BigInt::from(8)));
        let g = parse_group("Z + Z(5)").unwrap();
        let phi = parse_endo(&g, "matrix{2.1<-1.1: 1/5}").unwrap();
        assert_eq!(image_finite(&phi).size, SectionSize::Finite(BigInt::from(5)));
    }
}
