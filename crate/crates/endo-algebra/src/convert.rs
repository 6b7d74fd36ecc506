//! Generator-level matrices for finitely generated groups, restriction to
//! invariant subgroups and induced maps on quotients.

use inertia_group::lattice::Row;
use inertia_group::rational::pow;
use inertia_group::section::{contains, fg_order};
use inertia_group::{Atom, Coord, Element, GroupDescriptor, GroupError, Mult, SubgroupHandle, Q};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::{EndoError, Endomorphism, Entry};

/// Generators of a finitely generated group in slot form (no presentation):
/// one unit per copy of each Z or cyclic slot.
pub fn unit_basis(g: &GroupDescriptor) -> Result<Vec<Coord>, EndoError> {
    let mut v = Vec::new();
    for (i, s) in g.slots.iter().enumerate() {
        let k = match s.mult {
            Mult::Finite(k) => k,
            Mult::Omega => return Err(EndoError::Unsupported("omega slot in a finitely generated group".into())),
        };
        match &s.atom {
            Atom::Cyclic { .. } => {}
            Atom::Localized(pi) if pi.is_empty() => {}
            a => return Err(EndoError::Unsupported(format!("{a} is not finitely generated"))),
        }
        for c in 0..k as u64 {
            v.push((i, c));
        }
    }
    Ok(v)
}

/// Number of generators used by generator-level matrices.
pub fn generator_count(g: &GroupDescriptor) -> Result<usize, EndoError> {
    match &g.presentation {
        Some(p) => Ok(p.ngens),
        None => Ok(unit_basis(g)?.len()),
    }
}

/// Element of generator j.
pub fn generator(g: &GroupDescriptor, j: usize) -> Result<Element, EndoError> {
    match &g.presentation {
        Some(p) => Ok(p.gen_images[j].clone()),
        None => {
            let c = unit_basis(g)?[j];
            Ok(Element::unit_at(c, g.atom(c).unit()))
        }
    }
}

/// Integer coefficients of an element on the generators.
pub fn to_generators(g: &GroupDescriptor, x: &Element) -> Result<Row, EndoError> {
    let n = generator_count(g)?;
    let mut out = vec![BigInt::zero(); n];
    for (c, v) in &x.coords {
        let k: BigInt = match g.atom(*c) {
            Atom::Cyclic { p, e } => (v * Q::from_integer(pow(*p, *e))).to_integer(),
            _ => {
                if !v.denom().is_one() {
                    return Err(EndoError::Unsupported("non-integral coordinate".into()));
                }
                v.to_integer()
            }
        };
        match &g.presentation {
            Some(p) => {
                let pre = &p.unit_preimages.iter().find(|(cc, _)| cc == c).unwrap().1;
                for (o, y) in out.iter_mut().zip(pre) {
                    *o += &k * y;
                }
            }
            None => {
                let j = unit_basis(g)?.iter().position(|cc| cc == c).unwrap();
                out[j] += k;
            }
        }
    }
    Ok(out)
}

/// phi(g_j) = sum_k m[j][k] g_k.
pub fn from_generator_matrix(g: &GroupDescriptor, m: &[Row]) -> Result<Endomorphism, EndoError> {
    let n = generator_count(g)?;
    if m.len() != n || m.iter().any(|r| r.len() != n) {
        return Err(EndoError::Group(GroupError::Invalid(format!(
            "generator matrix must be {n}x{n}"
        ))));
    }
    let image_of = |x: &Row| -> Result<Element, EndoError> {
        let mut el = Element::zero();
        for (k, xk) in x.iter().enumerate() {
            if xk.is_zero() {
                continue;
            }
            let mut y = Element::zero();
            for (j, xj) in m[k].iter().enumerate() {
                if !xj.is_zero() {
                    y = g.add(&y, &g.scale(xj, &generator(g, j)?));
                }
            }
            el = g.add(&el, &g.scale(xk, &y));
        }
        Ok(el)
    };
    let mut entries = Vec::new();
    for s in g.finite_coords() {
        let unit = Element::unit_at(s, g.atom(s).unit());
        let x = to_generators(g, &unit)?;
        let y = image_of(&x)?;
        let scale = Q::from_integer(g.atom(s).unit().denom().clone());
        for (t, v) in y.coords {
            entries.push(Entry::Copy { target: t, source: s, c: v * &scale });
        }
    }
    let phi = Endomorphism::from_entries(g, entries)?;
    // the matrix must respect the relations
    for j in 0..n {
        let gj = generator(g, j)?;
        let mut e = vec![BigInt::zero(); n];
        e[j] = BigInt::from(1);
        if phi.apply(&gj) != image_of(&e)? {
            return Err(EndoError::IllDefined(format!(
                "generator matrix does not respect the relations (row {})",
                j + 1
            )));
        }
    }
    Ok(phi)
}

/// Matrix on generators of a finitely generated group.
pub fn to_generator_matrix(phi: &Endomorphism) -> Result<Vec<Row>, EndoError> {
    let g = &phi.ambient;
    let n = generator_count(g)?;
    (0..n).map(|j| to_generators(g, &phi.apply(&generator(g, j)?))).collect()
}

/// Integer matrix of an endomorphism of a finite group Z(m_1)+...+Z(m_k) on
/// the unit basis, entries reduced mod the target order.
pub fn finite_matrix(phi: &Endomorphism) -> Result<(Vec<u64>, Vec<Vec<u64>>), EndoError> {
    let g = &phi.ambient;
    if !g.is_finite() || g.presentation.is_some() {
        return Err(EndoError::Unsupported("finite slot groups only".into()));
    }
    let basis = unit_basis(g)?;
    let mods: Vec<u64> = basis
        .iter()
        .map(|c| match g.atom(*c) {
            Atom::Cyclic { p, e } => p.pow(*e),
            _ => unreachable!(),
        })
        .collect();
    let mut rows = Vec::new();
    for c in &basis {
        let y = phi.apply(&Element::unit_at(*c, g.atom(*c).unit()));
        let r = to_generators(g, &y)?;
        rows.push(
            r.iter()
                .zip(&mods)
                .map(|(x, m)| x.mod_floor(&BigInt::from(*m)).try_into().unwrap())
                .collect(),
        );
    }
    Ok((mods, rows))
}

/// Restriction of phi to a phi-invariant subgroup, as an endomorphism of the
/// subgroup's own presentation. Finitely generated subgroups, or unions of
/// whole slots.
pub fn restrict(phi: &Endomorphism, a0: &SubgroupHandle, k: u32) -> Result<Endomorphism, EndoError> {
    let g = &phi.ambient;
    if a0.is_finitely_generated() {
        for x in &a0.gens {
            if !contains(g, a0, &phi.apply(x), k)? {
                return Err(EndoError::IllDefined("subgroup is not invariant".into()));
            }
        }
        let (sub, coords) = presentation_of(g, &a0.gens)?;
        let mut m = Vec::new();
        for x in &a0.gens {
            m.push(solve(g, &a0.gens, &coords, &phi.apply(x))?);
        }
        return from_generator_matrix(&sub, &m);
    }
    if !a0.gens.is_empty() {
        return Err(EndoError::Unsupported("restriction to mixed handles".into()));
    }
    // whole slots
    let mut keep: Vec<usize> = Vec::new();
    for cl in &a0.closures {
        let atom = &g.slots[cl.slot].atom;
        let whole = match atom {
            Atom::Localized(pi) => cl.primes.intersection(pi) == *pi && cl.scale == atom.unit(),
            _ => true,
        };
        if !whole {
            return Err(EndoError::Unsupported("restriction to a partial localized closure".into()));
        }
        keep.push(cl.slot);
    }
    keep.sort();
    keep.dedup();
    sub_slots(phi, &keep)
}

/// Restrict to a set of slots that the map preserves.
pub fn sub_slots(phi: &Endomorphism, keep: &[usize]) -> Result<Endomorphism, EndoError> {
    let g = &phi.ambient;
    let idx = |s: usize| keep.iter().position(|&k| k == s);
    let sub = GroupDescriptor::new(keep.iter().map(|&s| g.slots[s].clone()).collect())?;
    let mut entries = Vec::new();
    for ((t, s), c) in &phi.each {
        match (idx(*t), idx(*s)) {
            (Some(a), Some(b)) => entries.push(Entry::Slot { target: a, source: b, c: c.clone() }),
            (None, Some(_)) => return Err(EndoError::IllDefined("slots are not invariant".into())),
            _ => {}
        }
    }
    for ((s, t), c) in &phi.copy {
        match (idx(t.0), idx(s.0)) {
            (Some(a), Some(b)) => entries.push(Entry::Copy { target: (a, t.1), source: (b, s.1), c: c.clone() }),
            (None, Some(_)) => return Err(EndoError::IllDefined("slots are not invariant".into())),
            _ => {}
        }
    }
    for t in &phi.terms {
        if let Some(b) = idx(t.source.0) {
            let mut target = Element::zero();
            for (c, v) in &t.target.coords {
                let a = idx(c.0).ok_or_else(|| EndoError::IllDefined("slots are not invariant".into()))?;
                target.add_at((a, c.1), v.clone());
            }
            entries.push(Entry::Term(crate::FinTerm { source: (b, t.source.1), target, ..t.clone() }));
        }
    }
    Endomorphism::from_entries(&sub, entries)
}

/// Presentation Z^n / relations of the subgroup generated by `gens`, plus
/// the frame used to solve for coefficients.
fn presentation_of(g: &GroupDescriptor, gens: &[Element]) -> Result<(GroupDescriptor, Vec<Coord>), EndoError> {
    let n = gens.len();
    let (rows, coords) = relation_lattice(g, gens)?;
    let sub = GroupDescriptor::from_presentation(if rows.is_empty() { Vec::new() } else { rows }, n)?;
    Ok((sub, coords))
}

/// Integer relations among the generators: kernel of Z^n -> ambient.
fn relation_lattice(g: &GroupDescriptor, gens: &[Element]) -> Result<(Vec<Row>, Vec<Coord>), EndoError> {
    use inertia_group::lattice::hnf;
    let n = gens.len();
    let mut coords: Vec<Coord> = gens.iter().flat_map(|e| e.coords.keys().copied()).collect();
    coords.sort();
    coords.dedup();
    let mut scale = vec![BigInt::from(1); coords.len()];
    for e in gens {
        for (c, v) in &e.coords {
            let i = coords.iter().position(|x| x == c).unwrap();
            scale[i] = scale[i].lcm(v.denom());
        }
    }
    // rows [x-part | e_j] with torsion relations; kernel = rows with zero x-part
    let d = coords.len();
    let mut rows: Vec<Row> = Vec::new();
    for (j, e) in gens.iter().enumerate() {
        let mut r = vec![BigInt::zero(); d + n];
        for (c, v) in &e.coords {
            let i = coords.iter().position(|x| x == c).unwrap();
            r[i] = (v * Q::from_integer(scale[i].clone())).to_integer();
        }
        r[d + j] = BigInt::from(1);
        rows.push(r);
    }
    for (i, c) in coords.iter().enumerate() {
        if g.atom(*c).is_torsion() {
            let mut r = vec![BigInt::zero(); d + n];
            r[i] = scale[i].clone();
            rows.push(r);
        }
    }
    let h = hnf(&rows, d + n);
    let kernel: Vec<Row> = h
        .into_iter()
        .filter(|r| r[..d].iter().all(|x| x.is_zero()))
        .map(|r| r[d..].to_vec())
        .collect();
    Ok((kernel, coords))
}

/// Integer coefficients expressing y in the generators.
fn solve(g: &GroupDescriptor, gens: &[Element], _coords: &[Coord], y: &Element) -> Result<Row, EndoError> {
    use inertia_group::lattice::hnf;
    let n = gens.len();
    let mut all = gens.to_vec();
    all.push(y.clone());
    let mut coords: Vec<Coord> = all.iter().flat_map(|e| e.coords.keys().copied()).collect();
    coords.sort();
    coords.dedup();
    let d = coords.len();
    let mut scale = vec![BigInt::from(1); d];
    for e in &all {
        for (c, v) in &e.coords {
            let i = coords.iter().position(|x| x == c).unwrap();
            scale[i] = scale[i].lcm(v.denom());
        }
    }
    // rows [x-part | e_j | 0]; y row [y | 0 | 1]; find a combination with
    // zero x-part and last coordinate 1
    let mut rows: Vec<Row> = Vec::new();
    let mk = |e: &Element| -> Row {
        let mut r = vec![BigInt::zero(); d + n + 1];
        for (c, v) in &e.coords {
            let i = coords.iter().position(|x| x == c).unwrap();
            r[i] = (v * Q::from_integer(scale[i].clone())).to_integer();
        }
        r
    };
    for (j, e) in gens.iter().enumerate() {
        let mut r = mk(e);
        r[d + j] = BigInt::from(1);
        rows.push(r);
    }
    let mut ry = mk(y);
    for x in ry.iter_mut() {
        *x = -&*x;
    }
    ry[d + n] = BigInt::from(1);
    rows.push(ry);
    for (i, c) in coords.iter().enumerate() {
        if g.atom(*c).is_torsion() {
            let mut r = vec![BigInt::zero(); d + n + 1];
            r[i] = scale[i].clone();
            rows.push(r);
        }
    }
    // put the y-marker column first among the tail so the kernel row with
    // marker 1 appears in echelon form
    let perm: Vec<usize> = (0..d).chain(std::iter::once(d + n)).chain(d..d + n).collect();
    let prow: Vec<Row> = rows.iter().map(|r| perm.iter().map(|&i| r[i].clone()).collect()).collect();
    let h = hnf(&prow, d + n + 1);
    for r in h {
        if r[..d].iter().all(|x| x.is_zero()) && !r[d].is_zero() {
            if r[d] == BigInt::from(1) {
                return Ok(r[d + 1..].to_vec());
            }
            break;
        }
    }
    Err(EndoError::IllDefined("element is not in the subgroup".into()))
}

/// Induced map on A / V for finitely generated A (slot form or presentation)
/// and finitely generated V; or V a union of whole slots.
pub fn induced_on_quotient(phi: &Endomorphism, v: &SubgroupHandle, k: u32) -> Result<Endomorphism, EndoError> {
    let g = &phi.ambient;
    for x in &v.gens {
        if !contains(g, v, &phi.apply(x), k)? {
            return Err(EndoError::IllDefined("subgroup is not invariant".into()));
        }
    }
    if !v.is_finitely_generated() {
        if !v.gens.is_empty() {
            return Err(EndoError::Unsupported("quotient by a mixed handle".into()));
        }
        let drop: Vec<usize> = v.closures.iter().map(|c| c.slot).collect();
        for cl in &v.closures {
            let atom = &g.slots[cl.slot].atom;
            if let Atom::Localized(pi) = atom {
                if cl.primes.intersection(pi) != *pi || cl.scale != atom.unit() {
                    return Err(EndoError::Unsupported("quotient by a partial localized closure".into()));
                }
            }
        }
        let keep: Vec<usize> = (0..g.slots.len()).filter(|s| !drop.contains(s)).collect();
        // the complement must map into itself modulo the dropped slots
        return sub_slots_mod(phi, &keep);
    }
    let n = generator_count(g)?;
    let mut rel: Vec<Row> = match &g.presentation {
        Some(p) => p.relations.clone(),
        None => unit_basis(g)?
            .iter()
            .enumerate()
            .filter_map(|(j, c)| match g.atom(*c) {
                Atom::Cyclic { p, e } => {
                    let mut r = vec![BigInt::zero(); n];
                    r[j] = pow(*p, *e);
                    Some(r)
                }
                _ => None,
            })
            .collect(),
    };
    for x in &v.gens {
        rel.push(to_generators(g, x)?);
    }
    let quo = GroupDescriptor::from_presentation(rel, n)?;
    from_generator_matrix(&quo, &to_generator_matrix(phi)?)
}

/// Keep slots, discarding entries into dropped slots (valid on a quotient).
fn sub_slots_mod(phi: &Endomorphism, keep: &[usize]) -> Result<Endomorphism, EndoError> {
    let g = &phi.ambient;
    let mut p = phi.clone();
    p.each.retain(|(t, _), _| keep.contains(t));
    p.copy.retain(|(_, t), _| keep.contains(&t.0));
    for t in p.terms.iter_mut() {
        t.target.coords.retain(|c, _| keep.contains(&c.0));
    }
    p.terms.retain(|t| keep.contains(&t.source.0));
    let _ = g;
    sub_slots(&p, keep)
}

/// Order of the subgroup generated by elements (finite case).
pub fn subgroup_order(g: &GroupDescriptor, gens: &[Element]) -> Option<BigInt> {
    fg_order(g, gens)
}
