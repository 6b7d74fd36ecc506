//! Exhaustive closure statistics over every subgroup.
//!
//! Closures are grown along the enumeration tree: a child is its parent plus
//! one cyclic subgroup <v>, and (P + <v>)^Phi = P^Phi + (closure of v), so
//! each node costs a copy of the parent's state plus the new Krylov vectors.
//!
//! For the closure bound, m = max |X / X_phi| is read through duality: with
//! the pairing of [`FiniteEndo::dual`], (X_phi)^perp = (X^perp)^{phi*}, hence
//! |X / X_phi| = |(X^perp)^{phi*} / X^perp| and m is the largest growth of
//! phi*. The direct computation is available in [`closure_bound_direct`].

use crate::closure;
use crate::endo::FiniteEndo;
use crate::gf2::{self, XorBasis};
use crate::group::{bits, Elem, FiniteAbelianGroup};
use crate::lattice::{enumerate, Lattice};
use crate::OracleError;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClosureBound {
    pub p: u32,
    /// max over X of log_p |X / X_phi|
    pub m: u32,
    /// max over X of log_p |X^phi / X|
    pub worst: u32,
    pub holds: bool,
    pub subgroups: u64,
}

impl ClosureBound {
    fn new(p: u32, m: u32, worst: u32, subgroups: u64) -> Self {
        ClosureBound { p, m, worst, holds: worst <= m * m, subgroups }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FsReport {
    /// max over X of |X^Phi / X_Phi|
    pub bound: u64,
    pub subgroups: u64,
    /// X_Phi <= X <= X^Phi and both closures invariant, for every X
    pub validated: bool,
}

fn log_p(mut n: u64, p: u32) -> u32 {
    let mut k = 0;
    while n > 1 {
        n /= p as u64;
        k += 1;
    }
    k
}

fn require_p_group(g: &FiniteAbelianGroup) -> Result<u32, OracleError> {
    g.p_group_prime().ok_or_else(|| OracleError::NotPGroup(g.to_string()))
}

pub fn check_closure_bound(g: &FiniteAbelianGroup, phi: &FiniteEndo, limit: usize) -> Result<ClosureBound, OracleError> {
    Ok(closure_bounds(g, std::slice::from_ref(phi), limit)?.remove(0))
}

/// Closure bounds for several endomorphisms in one pass over the subgroups.
pub fn closure_bounds(g: &FiniteAbelianGroup, phis: &[FiniteEndo], limit: usize) -> Result<Vec<ClosureBound>, OracleError> {
    let p = require_p_group(g)?;
    let mut maps: Vec<FiniteEndo> = Vec::new();
    for f in phis {
        maps.push(f.clone());
        maps.push(f.dual(g));
    }
    let (growth, subgroups) = if g.is_elementary_2() && g.rank() <= gf2::MAX_DIM {
        growth_gf2(g.rank(), &maps)
    } else {
        let lat = enumerate(g, limit)?;
        let n = lat.len() as u64;
        (growth_lattice(g, &lat, &maps), n)
    };
    Ok((0..phis.len())
        .map(|i| ClosureBound::new(p, growth[2 * i + 1], growth[2 * i], subgroups))
        .collect())
}

/// For each map: max over X of log_p |X^phi / X|.
fn growth_gf2(n: usize, maps: &[FiniteEndo]) -> (Vec<u32>, u64) {
    let tables: Vec<&[u32]> = maps.iter().map(|f| f.table()).collect();
    let k = maps.len();
    let mut states = vec![vec![XorBasis::default(); k]; n + 1];
    let mut best = vec![0u32; k];
    let mut count = 1u64;
    gf2::walk(n, |depth, rows| {
        count += 1;
        let v = rows[depth - 1];
        let (lo, hi) = states.split_at_mut(depth);
        for i in 0..k {
            let mut s = lo[depth - 1][i];
            gf2::grow(&mut s, &tables[i..i + 1], v);
            let gain = s.dim as u32 - depth as u32;
            if gain > best[i] {
                best[i] = gain;
            }
            hi[0][i] = s;
        }
    });
    (best, count)
}

fn growth_lattice(g: &FiniteAbelianGroup, lat: &Lattice, maps: &[FiniteEndo]) -> Vec<u32> {
    let p = g.p_group_prime().unwrap_or(2);
    let (off, ch) = lat.children();
    let words = lat.words;
    let k = maps.len();
    let levels = lat.depth.iter().copied().max().unwrap_or(0) as usize + 1;
    let mut states: Vec<Vec<u64>> = vec![vec![0u64; words * k]; levels];
    let mut logs: Vec<Vec<u32>> = vec![vec![0u32; k]; levels];
    for i in 0..k {
        bits::set(&mut states[0][i * words..(i + 1) * words], 0);
    }
    let mut best = vec![0u32; k];
    let mut scratch = Vec::new();
    // explicit stack of (node, next child cursor)
    let mut stack: Vec<(u32, u32)> = vec![(0, off[0])];
    while let Some(&mut (node, ref mut cur)) = stack.last_mut() {
        if *cur == off[node as usize + 1] {
            stack.pop();
            continue;
        }
        let c = ch[*cur as usize];
        *cur += 1;
        let level = lat.depth[c as usize] as usize;
        let (lo, hi) = states.split_at_mut(level);
        let (src, dst) = (&lo[level - 1], &mut hi[0]);
        dst.copy_from_slice(src);
        let v: Elem = lat.gen[c as usize];
        for i in 0..k {
            let s = &mut dst[i * words..(i + 1) * words];
            let gained = closure::grow(g, s, &[&maps[i]], v, &mut scratch);
            let l = logs[level - 1][i] + log_p(gained, p);
            logs[level][i] = l;
            let gain = l - level as u32;
            if gain > best[i] {
                best[i] = gain;
            }
        }
        stack.push((c, off[c as usize]));
    }
    best
}

/// m and worst computed directly from X_phi and X^phi for every subgroup.
pub fn closure_bound_direct(g: &FiniteAbelianGroup, phi: &FiniteEndo, limit: usize) -> Result<ClosureBound, OracleError> {
    let p = require_p_group(g)?;
    let lat = enumerate(g, limit)?;
    let (mut m, mut worst) = (0, 0);
    for i in 0..lat.len() {
        let x = lat.set(i);
        let nx = bits::count(x) as u64;
        let up = closure::up(g, x, &[phi]);
        let down = closure::down(x, &[phi]);
        worst = worst.max(log_p(bits::count(&up) as u64 / nx, p));
        m = m.max(log_p(nx / bits::count(&down) as u64, p));
    }
    Ok(ClosureBound::new(p, m, worst, lat.len() as u64))
}

pub fn fs_bound(g: &FiniteAbelianGroup, phis: &[FiniteEndo], limit: usize) -> Result<FsReport, OracleError> {
    if g.is_elementary_2() && g.rank() <= gf2::MAX_DIM && g.rank() > 0 {
        return Ok(fs_gf2(g.rank(), phis));
    }
    let lat = enumerate(g, limit)?;
    Ok(fs_lattice(g, &lat, phis))
}

fn fs_gf2(n: usize, phis: &[FiniteEndo]) -> FsReport {
    let tables: Vec<&[u32]> = phis.iter().map(|f| f.table()).collect();
    let mut states = vec![XorBasis::default(); n + 1];
    let mut bound_log = 0u32;
    let mut validated = true;
    let mut count = 1u64;
    let invariant = |b: &XorBasis| b.vectors().all(|v| tables.iter().all(|t| b.contains(t[v as usize] as u16)));
    gf2::walk(n, |depth, rows| {
        count += 1;
        let mut up = states[depth - 1];
        gf2::grow(&mut up, &tables, rows[depth - 1]);
        states[depth] = up;
        let x = XorBasis::from_rows(rows);
        let down = gf2::down(rows, &tables);
        bound_log = bound_log.max(up.dim as u32 - down.dim as u32);
        let ok = down.vectors().all(|v| x.contains(v))
            && rows.iter().all(|&r| up.contains(r))
            && invariant(&up)
            && invariant(&down);
        validated &= ok;
    });
    FsReport { bound: 1u64 << bound_log, subgroups: count, validated }
}

fn fs_lattice(g: &FiniteAbelianGroup, lat: &Lattice, phis: &[FiniteEndo]) -> FsReport {
    let refs: Vec<&FiniteEndo> = phis.iter().collect();
    let (off, ch) = lat.children();
    let words = lat.words;
    let levels = lat.depth.iter().copied().max().unwrap_or(0) as usize + 1;
    let mut states: Vec<Vec<u64>> = vec![vec![0u64; words]; levels];
    bits::set(&mut states[0], 0);
    let mut bound = 1u64;
    let mut validated = true;
    let mut scratch = Vec::new();
    let mut stack: Vec<(u32, u32)> = vec![(0, off[0])];
    while let Some(&mut (node, ref mut cur)) = stack.last_mut() {
        if *cur == off[node as usize + 1] {
            stack.pop();
            continue;
        }
        let c = ch[*cur as usize];
        *cur += 1;
        let level = lat.depth[c as usize] as usize;
        let (lo, hi) = states.split_at_mut(level);
        hi[0].copy_from_slice(&lo[level - 1]);
        closure::grow(g, &mut hi[0], &refs, lat.gen[c as usize], &mut scratch);
        let up = &hi[0];
        let x = lat.set(c as usize);
        let down = closure::down(x, &refs);
        bound = bound.max(bits::count(up) as u64 / bits::count(&down) as u64);
        validated &= bits::subset(&down, x)
            && bits::subset(x, up)
            && closure::is_invariant(up, &refs)
            && closure::is_invariant(&down, &refs);
        stack.push((c, off[c as usize]));
    }
    FsReport { bound, subgroups: lat.len() as u64, validated }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::LIMIT;

    fn grp(f: &[(u32, u32)]) -> FiniteAbelianGroup {
        FiniteAbelianGroup::new(f, 1 << 14).unwrap()
    }

    #[test]
    fn multiplication_is_trivial() {
        let g = grp(&[(2, 3), (2, 1)]);
        let b = check_closure_bound(&g, &FiniteEndo::scalar(&g, 3), LIMIT).unwrap();
        assert_eq!((b.m, b.worst, b.holds), (0, 0, true));
        assert_eq!(fs_bound(&g, &[FiniteEndo::scalar(&g, 5)], LIMIT).unwrap().bound, 1);
        assert_eq!(fs_bound(&g, &[], LIMIT).unwrap().bound, 1);
    }

    #[test]
    fn swap_on_z2_squared() {
        let g = grp(&[(2, 1), (2, 1)]);
        let swap = FiniteEndo::from_matrix(&g, vec![vec![0, 1], vec![1, 0]]).unwrap();
        let b = check_closure_bound(&g, &swap, LIMIT).unwrap();
        assert_eq!((b.m, b.worst, b.holds, b.subgroups), (1, 1, true, 5));
        assert_eq!(closure_bound_direct(&g, &swap, LIMIT).unwrap(), b);
    }

    #[test]
    fn shift_on_z3_cubed() {
        let g = grp(&[(3, 1), (3, 1), (3, 1)]);
        let shift = FiniteEndo::from_matrix(&g, vec![vec![0, 1, 0], vec![0, 0, 1], vec![1, 0, 0]]).unwrap();
        let b = check_closure_bound(&g, &shift, LIMIT).unwrap();
        assert!(b.holds);
        assert_eq!(closure_bound_direct(&g, &shift, LIMIT).unwrap(), b);
    }

    #[test]
    fn shear_fs_bound() {
        // Z(2) + Z(4), phi(e1) = e1 + 2 e2, phi(e2) = e2
        let g = grp(&[(2, 1), (2, 2)]);
        let shear = FiniteEndo::from_matrix(&g, vec![vec![1, 2], vec![0, 1]]).unwrap();
        let r = fs_bound(&g, &[shear.clone()], LIMIT).unwrap();
        assert_eq!(r.subgroups, 8);
        assert!(r.validated);
        // brute force over the table
        let lat = enumerate(&g, LIMIT).unwrap();
        let mut best = 1;
        for i in 0..lat.len() {
            let x = lat.set(i);
            let up = closure::up(&g, x, &[&shear]);
            let down = closure::down(x, &[&shear]);
            best = best.max(bits::count(&up) / bits::count(&down));
        }
        assert_eq!(r.bound, best as u64);
        // <e1>^phi = <e1, 2 e2> while <e1>_phi = 0
        assert_eq!(r.bound, 4);
    }

    #[test]
    fn gf2_and_lattice_paths_agree() {
        use rand::SeedableRng;
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(3);
        let g = grp(&[(2, 1); 4]);
        let lat = enumerate(&g, LIMIT).unwrap();
        for _ in 0..10 {
            let a = crate::endo::random_endo(&g, &mut rng);
            let b = crate::endo::random_endo(&g, &mut rng);
            let maps = vec![a.clone(), a.dual(&g)];
            let (fast, n) = growth_gf2(4, &maps);
            assert_eq!(n, lat.len() as u64);
            assert_eq!(fast, growth_lattice(&g, &lat, &maps));
            let phis = vec![a, b];
            assert_eq!(fs_gf2(4, &phis), fs_lattice(&g, &lat, &phis));
        }
    }
}
