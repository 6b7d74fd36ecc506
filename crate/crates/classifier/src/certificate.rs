//! Certificates of right inertia for a family of endomorphisms.
//!
//! Case A: every phi_i is an integer m_i up to a map of finite image, so all
//! of them are multiplications on the intersection of the kernels.
//!
//! Case B: the slots split as B (bounded, at primes of pi1), D (finite-rank
//! Prufer, at primes of pi1 outside pi) and C (the rest). Each phi_i is a
//! per-slot multiplication up to a map of finite image, and V is spanned by
//! Q^pi * s * e_c over the localized coordinates. C is taken with its
//! localized part scaled by `c_scale`, so C/V has no pi1-torsion.

use inertia_endo::{coef, image_finite, Endomorphism};
use inertia_group::rational::{fmt_rational, pow, vp};
use inertia_group::{Atom, DivClosure, Element, GroupDescriptor, Mult, PrimeSet, SectionSize, SubgroupHandle, Q};
use inertia_witness::row::order;
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::blocks::{free_at, free_coords, torsion_primes, PrimeBlock};
use crate::decide::{EndoForm, EndoVerdict};
use crate::ClassifyError;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EndoScalars {
    /// action on A/T, when the rank is positive
    pub mn: Option<Q>,
    /// one scalar per slot
    pub slot_scalars: Vec<Q>,
    /// |im(phi - the slotwise multiplication)|
    pub image_order: BigInt,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Certificate {
    CaseA {
        endos: Vec<Endomorphism>,
        m: Vec<BigInt>,
        /// |im(phi_i - m_i)|
        image_orders: Vec<BigInt>,
        /// bound for the index of A0, the intersection of the kernels
        index_bound: BigInt,
    },
    CaseB {
        endos: Vec<Endomorphism>,
        pi: Vec<u64>,
        pi1: Vec<u64>,
        b_slots: Vec<usize>,
        d_slots: Vec<usize>,
        c_slots: Vec<usize>,
        v: SubgroupHandle,
        rank: u64,
        c_scale: BigInt,
        scalars: Vec<EndoScalars>,
        index_bound: BigInt,
    },
}

impl Certificate {
    pub fn endos(&self) -> &[Endomorphism] {
        match self {
            Certificate::CaseA { endos, .. } | Certificate::CaseB { endos, .. } => endos,
        }
    }
}

fn invalid(msg: impl Into<String>) -> ClassifyError {
    ClassifyError::Invalid(msg.into())
}

fn finite_image(phi: &Endomorphism) -> Option<BigInt> {
    match image_finite(phi).size {
        SectionSize::Finite(n) => Some(n),
        _ => None,
    }
}

fn primes_of(n: &BigInt) -> Vec<u64> {
    inertia_group::primes::factor(n).map(|f| f.into_iter().map(|(p, _)| p).collect()).unwrap_or_default()
}

/// Largest exponent among cyclic slots at p.
fn exponent_at(g: &GroupDescriptor, p: u64) -> u32 {
    g.slots
        .iter()
        .filter_map(|s| match s.atom {
            Atom::Cyclic { p: q, e } if q == p => Some(e),
            _ => None,
        })
        .max()
        .unwrap_or(0)
}

/// The part of n supported on `ps`.
fn part_on(n: &BigInt, ps: &[u64]) -> BigInt {
    ps.iter().map(|&p| pow(p, inertia_group::primes::vp_int(n, p))).product()
}

pub(crate) fn build(phis: &[Endomorphism], verdicts: &[EndoVerdict]) -> Result<Certificate, ClassifyError> {
    let g = &phis[0].ambient;
    let forms: Vec<&EndoForm> = verdicts.iter().map(|v| v.form.as_ref().expect("right inertial")).collect();
    if forms.iter().all(|f| matches!(f, EndoForm::A { .. })) {
        let m: Vec<BigInt> = forms
            .iter()
            .map(|f| match f {
                EndoForm::A { m } => m.clone(),
                EndoForm::B { .. } => unreachable!(),
            })
            .collect();
        let mut image_orders = Vec::new();
        for (phi, m) in phis.iter().zip(&m) {
            let psi = phi.minus_scalar(&Q::from_integer(m.clone()))?;
            image_orders.push(finite_image(&psi).ok_or_else(|| invalid("phi - m has infinite image"))?);
        }
        let index_bound = image_orders.iter().product();
        return Ok(Certificate::CaseA { endos: phis.to_vec(), m, image_orders, index_bound });
    }

    let rank = g.torsion_free_rank().ok_or_else(|| invalid("infinite rank without an integer scalar"))?;
    let mus: Vec<Option<Q>> = forms
        .iter()
        .map(|f| match f {
            _ if rank == 0 => None,
            EndoForm::A { m } => Some(Q::from_integer(m.clone())),
            EndoForm::B { mu } => mu.clone(),
        })
        .collect();
    let mut pi: Vec<u64> = mus.iter().flatten().flat_map(|q| primes_of(q.denom())).collect();
    pi.sort();
    pi.dedup();
    let tps = torsion_primes(g);
    let mut pi1 = pi.clone();
    for &p in &tps {
        if pi.contains(&p) {
            continue;
        }
        let critical = phis.iter().zip(&mus).any(|(phi, mu)| {
            let forced = if free_at(g, p) { mu.as_ref() } else { None };
            PrimeBlock::of(phi, p).mf(forced).is_none()
        });
        if critical {
            pi1.push(p);
        }
    }
    pi1.sort();

    let (mut b_slots, mut d_slots, mut c_slots) = (Vec::new(), Vec::new(), Vec::new());
    for (s, slot) in g.slots.iter().enumerate() {
        match (&slot.atom, slot.atom.prime()) {
            (Atom::Cyclic { .. }, Some(p)) if pi1.contains(&p) => b_slots.push(s),
            (Atom::Prufer { .. }, Some(p)) if pi1.contains(&p) => d_slots.push(s),
            _ => c_slots.push(s),
        }
    }

    let mut scalars = Vec::new();
    for (phi, mu) in phis.iter().zip(&mus) {
        let mut cs = Vec::new();
        for (s, slot) in g.slots.iter().enumerate() {
            let c = match slot.atom.prime() {
                None => mu.clone().ok_or_else(|| invalid("no action on A/T"))?,
                Some(p) => {
                    let block = PrimeBlock::of(phi, p);
                    if b_slots.contains(&s) {
                        block.alpha_b().unwrap_or_else(Q::zero)
                    } else if d_slots.contains(&s) {
                        block.prufer_scalar().ok_or_else(|| invalid(format!("no scalar on D at {p}")))?
                    } else {
                        let forced = if free_at(g, p) { mu.as_ref() } else { None };
                        block.mf(forced).ok_or_else(|| invalid(format!("no scalar on C at {p}")))?
                    }
                }
            };
            cs.push(c);
        }
        let mult = Endomorphism::block_scalar(g, &cs)?;
        let image_order = finite_image(&phi.sub(&mult)?).ok_or_else(|| invalid("not a multiplication up to finite image"))?;
        scalars.push(EndoScalars { mn: mu.clone(), slot_scalars: cs, image_order });
    }

    let frees = free_coords(g);
    let (v, c_scale) = if frees.is_empty() {
        (SubgroupHandle::zero(), BigInt::one())
    } else {
        let mus: Vec<Q> = mus.iter().map(|m| m.clone().expect("positive rank")).collect();
        let (v, l) = v_handle(g, phis, &mus, &pi)?;
        (v, part_on(&l, &pi1))
    };
    let index_bound =
        scalars.iter().map(|s| s.image_order.clone()).product::<BigInt>() * num_traits::pow(c_scale.clone(), frees.len());
    Ok(Certificate::CaseB {
        endos: phis.to_vec(),
        pi,
        pi1,
        b_slots,
        d_slots,
        c_slots,
        v,
        rank,
        c_scale,
        scalars,
        index_bound,
    })
}

/// V = Q^pi * s on every localized coordinate, with s the least integer
/// killing (phi_i - mu_i)(e_c), the targets of finitary terms on localized
/// sources, and the torsion at pi. Returns V and s.
pub(crate) fn v_handle(
    g: &GroupDescriptor,
    phis: &[Endomorphism],
    mus: &[Q],
    pi: &[u64],
) -> Result<(SubgroupHandle, BigInt), ClassifyError> {
    let mut l = BigInt::one();
    for (phi, mu) in phis.iter().zip(mus) {
        for &c in &free_coords(g) {
            let t = g.add(&phi.apply(&Element::unit_at(c, Q::one())), &g.neg(&Element::unit_at(c, mu.clone())));
            if t.coords.keys().any(|d| !g.atom(*d).is_torsion()) {
                return Err(invalid("phi is not its scalar on A/T"));
            }
            l = l.lcm(&order(&t));
        }
        for t in &phi.terms {
            if !g.atom(t.source).is_torsion() {
                l = l.lcm(&order(&t.target));
            }
        }
    }
    for &p in pi {
        l = l.lcm(&pow(p, exponent_at(g, p)));
    }
    let primes = PrimeSet::finite(pi.to_vec())?;
    let mut v = SubgroupHandle::zero().with_label("V");
    for (s, slot) in g.slots.iter().enumerate() {
        if let (Atom::Localized(_), Mult::Finite(_)) = (&slot.atom, slot.mult) {
            v.closures.push(DivClosure { slot: s, primes: primes.clone(), scale: Q::from_integer(l.clone()) });
        }
    }
    Ok((v, l))
}

/// Re-check a certificate against its endomorphisms, condition by condition.
pub fn validate_certificate(c: &Certificate) -> Result<(), ClassifyError> {
    let endos = c.endos();
    let g = &endos.first().ok_or_else(|| invalid("no endomorphisms"))?.ambient;
    for phi in endos {
        phi.check()?;
        endos[0].same_ambient(phi)?;
    }
    match c {
        Certificate::CaseA { m, image_orders, index_bound, .. } => {
            if m.len() != endos.len() || image_orders.len() != endos.len() {
                return Err(invalid("one integer per endomorphism"));
            }
            for (i, phi) in endos.iter().enumerate() {
                let psi = phi.minus_scalar(&Q::from_integer(m[i].clone()))?;
                match finite_image(&psi) {
                    Some(n) if n == image_orders[i] => {}
                    Some(n) => return Err(invalid(format!("endomorphism {}: |im(phi - m)| is {n}, not {}", i + 1, image_orders[i]))),
                    None => return Err(invalid(format!("endomorphism {}: phi - {} has infinite image", i + 1, m[i]))),
                }
            }
            if *index_bound != image_orders.iter().product::<BigInt>() {
                return Err(invalid("index bound"));
            }
            Ok(())
        }
        Certificate::CaseB { pi, pi1, b_slots, d_slots, c_slots, v, rank, c_scale, scalars, index_bound, .. } => {
            validate_b(g, endos, pi, pi1, [b_slots, d_slots, c_slots], v, *rank, c_scale, scalars)?;
            let want = scalars.iter().map(|s| s.image_order.clone()).product::<BigInt>()
                * num_traits::pow(c_scale.clone(), free_coords(g).len());
            if *index_bound != want {
                return Err(invalid("index bound"));
            }
            Ok(())
        }
    }
}

fn is_prime_list(ps: &[u64]) -> bool {
    ps.windows(2).all(|w| w[0] < w[1]) && ps.iter().all(|&p| inertia_group::primes::is_prime(p))
}

#[allow(clippy::too_many_arguments)]
fn validate_b(
    g: &GroupDescriptor,
    endos: &[Endomorphism],
    pi: &[u64],
    pi1: &[u64],
    parts: [&Vec<usize>; 3],
    v: &SubgroupHandle,
    rank: u64,
    c_scale: &BigInt,
    scalars: &[EndoScalars],
) -> Result<(), ClassifyError> {
    let [b, d, cc] = parts;
    if !is_prime_list(pi) || !is_prime_list(pi1) {
        return Err(invalid("pi and pi1 must be sorted lists of primes"));
    }
    if let Some(p) = pi.iter().find(|p| !pi1.contains(p)) {
        return Err(invalid(format!("pi is not contained in pi1: {p} is missing")));
    }
    if scalars.len() != endos.len() {
        return Err(invalid("one scalar record per endomorphism"));
    }
    let positive = g.torsion_free_rank().map_or(false, |r| r > 0);
    if g.torsion_free_rank() != Some(rank) {
        return Err(invalid(format!("rank {rank} is not the torsion-free rank")));
    }
    let mut want_pi: Vec<u64> = Vec::new();
    for (i, s) in scalars.iter().enumerate() {
        match (&s.mn, positive) {
            (Some(q), true) => want_pi.extend(primes_of(q.denom())),
            (None, false) => {}
            _ => return Err(invalid(format!("endomorphism {}: action on A/T", i + 1))),
        }
    }
    want_pi.sort();
    want_pi.dedup();
    if want_pi != pi {
        return Err(invalid("pi is not the set of primes of n_1 ... n_t"));
    }

    // slot partition
    let mut seen = vec![0u8; g.slots.len()];
    for &s in b.iter().chain(d).chain(cc) {
        if s >= g.slots.len() {
            return Err(invalid(format!("slot {} out of range", s + 1)));
        }
        seen[s] += 1;
    }
    if let Some(s) = seen.iter().position(|&n| n != 1) {
        return Err(invalid(format!("slot {} is not in exactly one of B, D, C", s + 1)));
    }
    for (s, slot) in g.slots.iter().enumerate() {
        let in_pi1 = slot.atom.prime().map_or(false, |p| pi1.contains(&p));
        let ok = match &slot.atom {
            Atom::Cyclic { .. } => b.contains(&s) == in_pi1,
            Atom::Prufer { p } => {
                if d.contains(&s) {
                    in_pi1 && !pi.contains(p) && !slot.mult.is_omega()
                } else {
                    !in_pi1
                }
            }
            Atom::Localized(_) => cc.contains(&s),
        };
        if !ok {
            return Err(invalid(format!("slot {} is in the wrong part (B bounded at pi1, D divisible of finite rank at pi1 \\ pi, C prime to pi1)", s + 1)));
        }
    }

    // scalars
    for (i, (phi, sc)) in endos.iter().zip(scalars).enumerate() {
        let who = |m: String| invalid(format!("endomorphism {}: {m}", i + 1));
        if sc.slot_scalars.len() != g.slots.len() {
            return Err(who("one scalar per slot".into()));
        }
        for (s, slot) in g.slots.iter().enumerate() {
            let c = &sc.slot_scalars[s];
            coef::well_defined(&slot.atom, &slot.atom, c).map_err(|e| who(format!("slot {}: {e}", s + 1)))?;
            if !slot.atom.is_torsion() && Some(c) != sc.mn.as_ref() {
                return Err(who(format!("scalar on localized slot {} is not m/n", s + 1)));
            }
        }
        for p in torsion_primes(g) {
            for part in [b, d, cc] {
                let at: Vec<usize> = part.iter().copied().filter(|&s| g.slots[s].atom.prime() == Some(p)).collect();
                for (x, &s) in at.iter().enumerate() {
                    for &t in &at[x + 1..] {
                        let e = match (&g.slots[s].atom, &g.slots[t].atom) {
                            (Atom::Cyclic { e: a, .. }, Atom::Cyclic { e: b, .. }) => Some((*a).min(*b)),
                            (Atom::Cyclic { e, .. }, _) | (_, Atom::Cyclic { e, .. }) => Some(*e),
                            _ => None,
                        };
                        let diff = &sc.slot_scalars[s] - &sc.slot_scalars[t];
                        let ok = diff.is_zero() || e.map_or(false, |e| vp(&diff, p).unwrap() >= e as i64);
                        if !ok {
                            return Err(who(format!("slots {} and {} carry different multiplications at {p}", s + 1, t + 1)));
                        }
                    }
                }
            }
            // condition (iv): C/V has an infinite p-component exactly when a
            // localized slot is p-divisible and p is not in pi
            if free_at(g, p) && !pi.contains(&p) {
                for &s in d.iter().filter(|&&s| g.slots[s].atom.prime() == Some(p)) {
                    if Some(&sc.slot_scalars[s]) != sc.mn.as_ref() {
                        return Err(who(format!(
                            "the scalar {} on D at {p} differs from m/n although C/V has an infinite {p}-component",
                            fmt_rational(&sc.slot_scalars[s])
                        )));
                    }
                }
            }
        }
        let mult = Endomorphism::block_scalar(g, &sc.slot_scalars)?;
        match finite_image(&phi.sub(&mult)?) {
            Some(n) if n == sc.image_order => {}
            Some(n) => return Err(who(format!("image order is {n}, not {}", sc.image_order))),
            None => return Err(who("phi is not the slotwise multiplication up to finite image".into())),
        }
    }

    // V
    let frees = free_coords(g);
    if frees.is_empty() {
        if !v.gens.is_empty() || !v.closures.is_empty() {
            return Err(invalid("V must be 0 on a periodic group"));
        }
        if !c_scale.is_one() {
            return Err(invalid("c_scale must be 1 on a periodic group"));
        }
        return Ok(());
    }
    if !v.gens.is_empty() {
        return Err(invalid("V is given by divisible closures only"));
    }
    let loc_slots: Vec<usize> = (0..g.slots.len()).filter(|&s| frees.iter().any(|c| c.0 == s)).collect();
    let scale = v.closures.first().map(|c| c.scale.clone()).ok_or_else(|| invalid("V is empty"))?;
    let want_primes = PrimeSet::finite(pi.to_vec())?;
    if v.closures.iter().map(|c| c.slot).collect::<Vec<_>>() != loc_slots
        || v.closures.iter().any(|c| c.scale != scale || c.primes != want_primes)
    {
        return Err(invalid("V must be Q^pi * s on every localized coordinate"));
    }
    if !scale.denom().is_one() || scale.numer() <= &BigInt::zero() {
        return Err(invalid("the scale of V must be a positive integer"));
    }
    let s = scale.numer().clone();
    if c_scale <= &BigInt::zero() || !(&s % c_scale).is_zero() {
        return Err(invalid("c_scale must divide the scale of V"));
    }
    let rest = &s / c_scale;
    if let Some(p) = pi1.iter().find(|&&p| (&rest % p).is_zero()) {
        return Err(invalid(format!("C/V has {p}-torsion although {p} is in pi1")));
    }
    if part_on(c_scale, pi1) != *c_scale {
        return Err(invalid("c_scale must be a pi1-number"));
    }
    let n: BigInt = pi.iter().map(|&p| BigInt::from(p)).product();
    let depth = if pi.is_empty() { 0 } else { 2 + pi.iter().map(|&p| exponent_at(g, p)).max().unwrap_or(0) };
    for (i, (phi, sc)) in endos.iter().zip(scalars).enumerate() {
        let mu = sc.mn.as_ref().unwrap();
        for &c in &frees {
            for j in 0..=depth {
                let x = Q::new(s.clone(), num_traits::pow(n.clone(), j as usize));
                let gen = g.reduce(Element::unit_at(c, x.clone()));
                let want = g.reduce(Element::unit_at(c, &x * mu));
                if phi.apply(&gen) != want {
                    return Err(invalid(format!(
                        "endomorphism {}: phi({}) is not m/n times it, so V is not invariant",
                        i + 1,
                        inertia_endo::element_text(g, &gen)
                    )));
                }
            }
        }
    }
    Ok(())
}
