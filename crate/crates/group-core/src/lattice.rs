//! Integer lattices: Hermite and Smith normal forms over BigInt.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

pub type Row = Vec<BigInt>;

/// Row-style Hermite normal form of the lattice spanned by `rows`.
///
/// Returns the nonzero rows in echelon form: positive pivots, entries above
/// each pivot reduced into [0, pivot). Pivot columns are strictly increasing.
pub fn hnf(rows: &[Row], ncols: usize) -> Vec<Row> {
    let mut m: Vec<Row> = rows
        .iter()
        .filter(|r| r.iter().any(|x| !x.is_zero()))
        .cloned()
        .collect();
    let mut out: Vec<Row> = Vec::new();
    for c in 0..ncols {
        // collapse column c among remaining rows by repeated gcd steps
        loop {
            let mut idx: Vec<usize> = (0..m.len()).filter(|&i| !m[i][c].is_zero()).collect();
            if idx.is_empty() {
                break;
            }
            idx.sort_by(|&a, &b| m[a][c].abs().cmp(&m[b][c].abs()));
            let piv = idx[0];
            if idx.len() == 1 {
                let mut r = m.swap_remove(piv);
                if r[c].is_negative() {
                    for x in r.iter_mut() {
                        *x = -&*x;
                    }
                }
                out.push(r);
                break;
            }
            let pr = m[piv].clone();
            for &i in &idx[1..] {
                let q = m[i][c].div_floor(&pr[c]);
                for (x, y) in m[i].iter_mut().zip(pr.iter()) {
                    *x -= &q * y;
                }
            }
            m.retain(|r| r.iter().any(|x| !x.is_zero()));
        }
    }
    // reduce above pivots
    let piv: Vec<usize> = out.iter().map(|r| pivot_col(r).unwrap()).collect();
    for i in 0..out.len() {
        let c = piv[i];
        let p = out[i][c].clone();
        let (head, tail) = out.split_at_mut(i);
        let pr = &tail[0];
        for r in head.iter_mut() {
            let q = r[c].div_floor(&p);
            if !q.is_zero() {
                for (x, y) in r.iter_mut().zip(pr.iter()) {
                    *x -= &q * y;
                }
            }
        }
    }
    out
}

pub fn pivot_col(r: &Row) -> Option<usize> {
    r.iter().position(|x| !x.is_zero())
}

/// Product of the pivots of an HNF (the covolume when full rank).
pub fn pivot_product(h: &[Row]) -> BigInt {
    let mut p = BigInt::one();
    for r in h {
        p *= &r[pivot_col(r).unwrap()];
    }
    p
}

/// Smith normal form D = U R V; returns the diagonal (length ncols, zeros
/// for free generators), V and V^{-1}.
pub struct Smith {
    pub diag: Vec<BigInt>,
    pub v: Vec<Row>,
    pub v_inv: Vec<Row>,
}

pub fn smith(rows: &[Row], ncols: usize) -> Smith {
    let mut a: Vec<Row> = rows.to_vec();
    let n = ncols;
    let ident = |n: usize| -> Vec<Row> {
        (0..n)
            .map(|i| (0..n).map(|j| if i == j { BigInt::one() } else { BigInt::zero() }).collect())
            .collect()
    };
    let mut v = ident(n);
    let mut vi = ident(n);
    // column j += k * column i
    fn col_add(a: &mut [Row], v: &mut [Row], vi: &mut [Row], j: usize, i: usize, k: &BigInt) {
        for r in a.iter_mut() {
            let t = &r[i] * k;
            r[j] += t;
        }
        for r in v.iter_mut() {
            let t = &r[i] * k;
            r[j] += t;
        }
        let rj = vi[j].clone();
        for (x, y) in vi[i].iter_mut().zip(rj.iter()) {
            *x -= k * y;
        }
    }
    fn col_swap(a: &mut [Row], v: &mut [Row], vi: &mut [Row], i: usize, j: usize) {
        for r in a.iter_mut() {
            r.swap(i, j);
        }
        for r in v.iter_mut() {
            r.swap(i, j);
        }
        vi.swap(i, j);
    }
    let m = a.len();
    let mut t = 0;
    while t < m.min(n) {
        // smallest nonzero entry in the trailing block
        let mut best: Option<(usize, usize)> = None;
        for i in t..m {
            for j in t..n {
                if !a[i][j].is_zero()
                    && best.map_or(true, |(bi, bj)| a[i][j].abs() < a[bi][bj].abs())
                {
                    best = Some((i, j));
                }
            }
        }
        let Some((bi, bj)) = best else { break };
        a.swap(t, bi);
        if bj != t {
            col_swap(&mut a, &mut v, &mut vi, t, bj);
        }
        let mut dirty = false;
        for i in t + 1..m {
            if !a[i][t].is_zero() {
                let q = a[i][t].div_floor(&a[t][t]);
                let pr = a[t].clone();
                for (x, y) in a[i].iter_mut().zip(pr.iter()) {
                    *x -= &q * y;
                }
                if !a[i][t].is_zero() {
                    dirty = true;
                }
            }
        }
        for j in t + 1..n {
            if !a[t][j].is_zero() {
                let q = -a[t][j].div_floor(&a[t][t]);
                col_add(&mut a, &mut v, &mut vi, j, t, &q);
                if !a[t][j].is_zero() {
                    dirty = true;
                }
            }
        }
        if dirty {
            continue;
        }
        // divisibility: pull a bad row into row t and redo
        let p = a[t][t].clone();
        let bad = (t + 1..m).find(|&i| (t + 1..n).any(|j| !(&a[i][j] % &p).is_zero()));
        if let Some(i) = bad {
            let ri = a[i].clone();
            for (x, y) in a[t].iter_mut().zip(ri.iter()) {
                *x += y;
            }
            continue;
        }
        t += 1;
    }
    let mut diag = vec![BigInt::zero(); n];
    for (i, d) in diag.iter_mut().enumerate().take(m.min(n)) {
        *d = a[i][i].clone();
    }
    for j in 0..n {
        if diag[j].is_negative() {
            diag[j] = -&diag[j];
            for r in v.iter_mut() {
                r[j] = -&r[j];
            }
            for x in vi[j].iter_mut() {
                *x = -&*x;
            }
        }
    }
    Smith { diag, v, v_inv: vi }
}

pub fn mat_mul(a: &[Row], b: &[Row]) -> Vec<Row> {
    let n = b.first().map_or(0, |r| r.len());
    a.iter()
        .map(|r| {
            (0..n)
                .map(|j| {
                    let mut s = BigInt::zero();
                    for (k, x) in r.iter().enumerate() {
                        if !x.is_zero() {
                            s += x * &b[k][j];
                        }
                    }
                    s
                })
                .collect()
        })
        .collect()
}

pub fn vec_mat(x: &[BigInt], b: &[Row]) -> Row {
    mat_mul(&[x.to_vec()], b).pop().unwrap_or_default()
}
