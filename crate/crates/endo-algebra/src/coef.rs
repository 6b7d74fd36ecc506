//! A rational coefficient c read as the map x -> c*x between two atoms,
//! projected onto the target's primary part when the target is torsion.

use inertia_group::rational::{den_vp, proj_primary, vp};
use inertia_group::{Atom, Q};
use num_traits::Zero;

/// Why a coefficient does not define a homomorphism, or Ok.
pub fn well_defined(src: &Atom, tgt: &Atom, c: &Q) -> Result<(), String> {
    if c.is_zero() {
        return Ok(());
    }
    let show = inertia_group::rational::fmt_rational(c);
    match tgt {
        Atom::Localized(pt) => match src {
            Atom::Localized(ps) => {
                if !ps.is_subset(pt) {
                    return Err(format!("{show}: {src} does not embed in {tgt}"));
                }
                if !pt.admits(c.denom()).unwrap_or(false) {
                    return Err(format!("{show}: denominator not invertible in {tgt}"));
                }
                Ok(())
            }
            _ => Err(format!("{show}: nonzero map from torsion {src} into {tgt}")),
        },
        Atom::Cyclic { p: q, .. } | Atom::Prufer { p: q } => {
            let bound = match tgt {
                Atom::Cyclic { e, .. } => Some(*e),
                _ => None,
            };
            match src {
                Atom::Cyclic { p, e } => {
                    if den_vp(c, *q) > 0 {
                        return Err(format!("{show}: {q} divides the denominator on a torsion source"));
                    }
                    if p == q {
                        if let Some(f) = bound {
                            let v = vp(c, *p).unwrap();
                            if (*e as i64) - v > f as i64 {
                                return Err(format!("{show}: image of {src} has order beyond {tgt}"));
                            }
                        }
                    }
                    Ok(())
                }
                Atom::Prufer { p } => {
                    if den_vp(c, *q) > 0 {
                        return Err(format!("{show}: {q} divides the denominator on a torsion source"));
                    }
                    if p == q && bound.is_some() {
                        return Err(format!("{show}: divisible {src} cannot map onto bounded {tgt}"));
                    }
                    Ok(())
                }
                Atom::Localized(ps) => {
                    if let Some(f) = bound {
                        if ps.contains(*q) {
                            return Err(format!("{show}: {q}-divisible {src} cannot map onto bounded {tgt}"));
                        }
                        if den_vp(c, *q) > f {
                            return Err(format!("{show}: image order exceeds {tgt}"));
                        }
                    }
                    Ok(())
                }
            }
        }
    }
}

/// Is the (well-defined) coefficient the zero map?
pub fn is_zero_map(src: &Atom, tgt: &Atom, c: &Q) -> bool {
    if c.is_zero() {
        return true;
    }
    let q = match tgt {
        Atom::Localized(_) => return false,
        Atom::Cyclic { p, .. } | Atom::Prufer { p } => *p,
    };
    match src {
        Atom::Cyclic { p, e } => *p != q || vp(c, *p).unwrap() >= *e as i64,
        Atom::Prufer { p } => *p != q,
        Atom::Localized(ps) => {
            if ps.contains(q) {
                false
            } else {
                den_vp(c, q) == 0
            }
        }
    }
}

/// Value of c*x in the target atom.
pub fn apply(tgt: &Atom, c: &Q, x: &Q) -> Q {
    let y = c * x;
    match tgt {
        Atom::Localized(_) => y,
        Atom::Cyclic { p, .. } | Atom::Prufer { p } => proj_primary(&y, *p),
    }
}

/// Virtual cyclic atom used for finitary functionals.
pub fn cyclic(p: u64, f: u32) -> Atom {
    Atom::Cyclic { p, e: f }
}

#[cfg(test)]
mod tests {
    use super::*;
    use inertia_group::PrimeSet;
    use inertia_group::rational::{qi, qr};

    fn z(p: u64, e: u32) -> Atom {
        Atom::Cyclic { p, e }
    }
    fn pr(p: u64) -> Atom {
        Atom::Prufer { p }
    }
    fn loc(v: Vec<u64>) -> Atom {
        Atom::Localized(PrimeSet::finite(v).unwrap())
    }

    #[test]
    fn rules() {
        assert!(well_defined(&pr(3), &pr(3), &qr(1, 2)).is_ok());
        assert!(well_defined(&pr(3), &pr(3), &qr(1, 3)).is_err());
        assert!(well_defined(&z(2, 1), &z(2, 3), &qi(4)).is_ok());
        assert!(well_defined(&z(2, 3), &z(2, 1), &qi(1)).is_err());
        assert!(well_defined(&z(2, 3), &z(2, 1), &qi(4)).is_ok());
        assert!(well_defined(&loc(vec![]), &loc(vec![2]), &qr(1, 2)).is_ok());
        assert!(well_defined(&loc(vec![2]), &loc(vec![]), &qi(1)).is_err());
        assert!(well_defined(&loc(vec![2]), &pr(2), &qr(1, 2)).is_ok());
        assert!(well_defined(&loc(vec![2]), &z(2, 1), &qi(1)).is_err());
        assert!(well_defined(&loc(vec![]), &z(2, 1), &qr(1, 2)).is_ok());
        assert!(well_defined(&z(2, 1), &loc(vec![]), &qi(1)).is_err());
    }

    #[test]
    fn zero_maps() {
        assert!(is_zero_map(&z(2, 1), &z(2, 1), &qi(2)));
        assert!(!is_zero_map(&z(2, 2), &z(2, 2), &qi(2)));
        assert!(is_zero_map(&z(3, 1), &z(2, 1), &qi(1)));
        assert!(is_zero_map(&loc(vec![]), &z(2, 1), &qi(4)));
        assert!(!is_zero_map(&loc(vec![]), &z(2, 1), &qr(1, 2)));
        assert!(!is_zero_map(&loc(vec![2]), &pr(2), &qi(4)));
    }
}
