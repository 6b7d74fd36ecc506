//! The cyclic module <a>^phi = <a, phi a, phi^2 a, ...> on descriptor groups.

use inertia_endo::Endomorphism;
use inertia_group::section::{contains, fg_free_rank, fg_torsion_order};
use inertia_group::{Element, SubgroupHandle};
use num_bigint::BigInt;

use crate::OracleError;

#[derive(Clone, Debug)]
pub struct CyclicModule {
    pub handle: SubgroupHandle,
    /// number of iterates needed before phi^k a fell into the span
    pub steps: usize,
    pub free_rank: usize,
    /// order of the torsion part of the module
    pub torsion_order: BigInt,
}

impl CyclicModule {
    pub fn is_finite(&self) -> bool {
        self.free_rank == 0
    }
}

/// Stops once phi^k a lies in <a, ..., phi^(k-1) a>, which makes the span
/// invariant. Failing that within `cap` iterates is an error.
pub fn cyclic_module(a: &Element, phi: &Endomorphism, cap: usize, k: u32) -> Result<CyclicModule, OracleError> {
    let g = &phi.ambient;
    let mut gens = vec![a.clone()];
    let mut x = a.clone();
    for steps in 1..=cap {
        x = phi.apply(&x);
        let h = SubgroupHandle::generated(gens.clone());
        if contains(g, &h, &x, k)? {
            return Ok(CyclicModule {
                handle: h.with_label("cyclic module"),
                steps,
                free_rank: fg_free_rank(g, &gens),
                torsion_order: fg_torsion_order(g, &gens),
            });
        }
        gens.push(x.clone());
    }
    Err(OracleError::NotStabilized { cap })
}

#[cfg(test)]
mod tests {
    use super::*;
    use inertia_endo::parse::parse_endo;
    use inertia_group::parse::{parse_element, parse_group};

    #[test]
    fn examples() {
        let g = parse_group("Z(8)").unwrap();
        let m = cyclic_module(&parse_element(&g, "[1: 2]").unwrap(), &parse_endo(&g, "mult 3").unwrap(), 50, 20).unwrap();
        assert!(m.is_finite());
        assert_eq!(m.torsion_order, BigInt::from(4));

        let g = parse_group("Z(2)^2").unwrap();
        let swap = parse_endo(&g, "matrix{1.2<-1.1: 1; 1.1<-1.2: 1}").unwrap();
        let m = cyclic_module(&parse_element(&g, "[1.1: 1]").unwrap(), &swap, 50, 20).unwrap();
        assert_eq!(m.torsion_order, BigInt::from(4));

        let g = parse_group("Z").unwrap();
        let m = cyclic_module(&parse_element(&g, "[1: 1]").unwrap(), &parse_endo(&g, "mult 2").unwrap(), 50, 20).unwrap();
        assert_eq!((m.free_rank, m.steps), (1, 1));
        assert!(!m.is_finite());

        let g = parse_group("Q").unwrap();
        let r = cyclic_module(&parse_element(&g, "[1: 1]").unwrap(), &parse_endo(&g, "mult 1/2").unwrap(), 30, 20);
        assert!(matches!(r, Err(OracleError::NotStabilized { cap: 30 })));
    }
}
