//! Elementary abelian 2-groups as GF(2)^n with vectors packed in u16.
//! Subspaces are walked in reduced row echelon form: a node with rows
//! r_1..r_k (pivot = lowest set bit, pivots increasing, each pivot column
//! clear in the other rows) has the children obtained by appending a row
//! whose pivot c exceeds every existing pivot, with column c clear in all
//! existing rows. Each subspace appears exactly once, and its parent is the
//! span of its first k-1 rows.

pub const MAX_DIM: usize = 16;

#[derive(Clone, Copy, Debug, Default)]
pub struct XorBasis {
    b: [u16; MAX_DIM],
    pub dim: u8,
}

impl XorBasis {
    #[inline]
    pub fn insert(&mut self, mut v: u16) -> bool {
        while v != 0 {
            let h = 15 - v.leading_zeros() as usize;
            if self.b[h] == 0 {
                self.b[h] = v;
                self.dim += 1;
                return true;
            }
            v ^= self.b[h];
        }
        false
    }

    #[inline]
    pub fn reduce(&self, mut v: u16) -> u16 {
        while v != 0 {
            let h = 15 - v.leading_zeros() as usize;
            if self.b[h] == 0 {
                return v;
            }
            v ^= self.b[h];
        }
        0
    }

    /// Canonical reduction: clear every pivot column of v.
    pub fn residue(&self, mut v: u16) -> u16 {
        for h in (0..MAX_DIM).rev() {
            if v >> h & 1 == 1 && self.b[h] != 0 {
                v ^= self.b[h];
            }
        }
        v
    }

    #[inline]
    pub fn contains(&self, v: u16) -> bool {
        self.reduce(v) == 0
    }

    pub fn vectors(&self) -> impl Iterator<Item = u16> + '_ {
        self.b.iter().copied().filter(|&v| v != 0)
    }

    pub fn from_rows(rows: &[u16]) -> Self {
        let mut b = XorBasis::default();
        for &r in rows {
            b.insert(r);
        }
        b
    }
}

/// Insert v and its images under the maps until the span is invariant.
#[inline]
pub fn grow(b: &mut XorBasis, maps: &[&[u32]], v: u16) {
    if maps.len() == 1 {
        let t = maps[0];
        let mut v = v;
        while b.insert(v) {
            v = t[v as usize] as u16;
        }
        return;
    }
    let mut queue = vec![v];
    while let Some(x) = queue.pop() {
        if b.insert(x) {
            queue.extend(maps.iter().map(|t| t[x as usize] as u16));
        }
    }
}

/// Largest subspace of span(rows) invariant under every map.
pub fn down(rows: &[u16], maps: &[&[u32]]) -> XorBasis {
    let mut y = XorBasis::from_rows(rows);
    loop {
        let mut changed = false;
        for t in maps {
            let basis: Vec<u16> = y.vectors().collect();
            // kernel of y -> residue(phi(y)) mod Y, tracking combinations
            let mut piv: [(u16, u32); MAX_DIM] = [(0, 0); MAX_DIM];
            let mut next = XorBasis::default();
            for (j, &v) in basis.iter().enumerate() {
                let mut r = y.residue(t[v as usize] as u16);
                let mut m = 1u32 << j;
                while r != 0 {
                    let h = 15 - r.leading_zeros() as usize;
                    if piv[h].0 == 0 {
                        piv[h] = (r, m);
                        break;
                    }
                    r ^= piv[h].0;
                    m ^= piv[h].1;
                }
                if r == 0 {
                    let mut w = 0u16;
                    for (i, &b) in basis.iter().enumerate() {
                        if m >> i & 1 == 1 {
                            w ^= b;
                        }
                    }
                    next.insert(w);
                }
            }
            if next.dim != y.dim {
                changed = true;
                y = next;
            }
        }
        if !changed {
            return y;
        }
    }
}

/// Walk all subspaces of GF(2)^n. `enter(depth, rows)` is called for every
/// nonzero subspace, parents before children; rows[depth-1] is the new row.
pub fn walk<F: FnMut(usize, &[u16])>(n: usize, mut enter: F) {
    assert!(n <= MAX_DIM);
    let mut rows = [0u16; MAX_DIM];
    rec(n, &mut rows, 0, 0, 0, &mut enter);
}

fn rec<F: FnMut(usize, &[u16])>(n: usize, rows: &mut [u16; MAX_DIM], depth: usize, start: usize, occ: u32, enter: &mut F) {
    for c in start..n {
        if occ >> c & 1 == 1 {
            continue;
        }
        let free = n - 1 - c;
        for f in 0..(1u32 << free) {
            let v = (1u32 << c | f << (c + 1)) as u16;
            rows[depth] = v;
            enter(depth + 1, &rows[..depth + 1]);
            rec(n, rows, depth + 1, c + 1, occ | v as u32, enter);
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gaussian_total(n: u32) -> u64 {
        // sum over k of the Gaussian binomial [n, k]_2
        let mut total = 0u64;
        for k in 0..=n {
            let mut num = 1u64;
            let mut den = 1u64;
            for i in 0..k {
                num *= (1 << (n - i)) - 1;
                den *= (1 << (i + 1)) - 1;
            }
            total += num / den;
        }
        total
    }

    #[test]
    fn walk_counts_match_gaussian_binomials() {
        for n in 0..=7 {
            let mut count = 1u64;
            walk(n, |_, _| count += 1);
            assert_eq!(count, gaussian_total(n as u32), "n = {n}");
        }
    }

    #[test]
    fn down_of_swap() {
        // swap on GF(2)^2; the line through (1,0) contains no invariant line
        let t: Vec<u32> = (0..4u32).map(|v| (v & 1) << 1 | (v >> 1)).collect();
        assert_eq!(down(&[1], &[&t]).dim, 0);
        assert_eq!(down(&[3], &[&t]).dim, 1);
        assert_eq!(down(&[1, 2], &[&t]).dim, 2);
    }
}
