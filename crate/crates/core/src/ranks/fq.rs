//! Small dense linear algebra over `GF(q)` on raw encoded elements.

use crate::error::Result;
use crate::linalg::TractMatrix;
use crate::matroids::{elements, full, Matroid, Subset};
use crate::tracts::gf::{gf, Gf};
use crate::tracts::{TractElement, TractId};

/// Rank of the columns of `b` selected by `cols`.
pub(crate) fn column_rank(f: &Gf, b: &[Vec<u8>], cols: Subset) -> usize {
    let r = b.len();
    // Echelon basis of column vectors, each normalized at its pivot.
    let mut basis: Vec<(usize, Vec<u8>)> = Vec::with_capacity(r);
    for j in elements(cols) {
        let mut v: Vec<u8> = b.iter().map(|row| row[j]).collect();
        for (p, w) in &basis {
            let c = v[*p];
            if c != 0 {
                for (x, y) in v.iter_mut().zip(w) {
                    *x = f.sub(*x, f.mul(c, *y));
                }
            }
        }
        if let Some(p) = v.iter().position(|&x| x != 0) {
            let inv = f.inv(v[p]);
            for x in v.iter_mut() {
                *x = f.mul(inv, *x);
            }
            basis.push((p, v));
            if basis.len() == r {
                break;
            }
        }
    }
    basis.len()
}

/// Rank of a full matrix given as rows.
pub(crate) fn rank(f: &Gf, rows: &[Vec<u8>]) -> usize {
    match rows.first() {
        None => 0,
        Some(r) => column_rank(f, rows, full(r.len())),
    }
}

/// Whether `[n] \ s` is a flat of the column matroid of `b`.
pub(crate) fn complement_is_flat(f: &Gf, b: &[Vec<u8>], n: usize, s: Subset) -> bool {
    let z = full(n) & !s;
    let rz = column_rank(f, b, z);
    elements(s).into_iter().all(|e| column_rank(f, b, z | 1 << e) > rz)
}

/// Column matroid of `b` on `n` elements.
pub(crate) fn matroid(f: &Gf, b: &[Vec<u8>], n: usize) -> Matroid {
    let size = 1usize << n;
    let mut dependent = vec![false; size];
    let mut circuits = Vec::new();
    for s in 1..size as Subset {
        if elements(s).iter().any(|&e| dependent[(s & !(1 << e)) as usize]) {
            dependent[s as usize] = true;
        } else if column_rank(f, b, s) < s.count_ones() as usize {
            dependent[s as usize] = true;
            circuits.push(s);
        }
    }
    Matroid::new_unchecked(n, circuits)
}

/// A nonzero kernel vector of the columns in the circuit `c`, spread over `[n]`.
pub(crate) fn circuit_vector(f: &Gf, b: &[Vec<u8>], n: usize, c: Subset) -> Vec<u8> {
    let cols = elements(c);
    // Reduce the selected columns to echelon form and read off the kernel.
    let mut rows: Vec<Vec<u8>> = b.iter().map(|r| cols.iter().map(|&j| r[j]).collect()).collect();
    let k = cols.len();
    let mut pivots = Vec::new();
    let mut r = 0;
    for col in 0..k {
        let Some(p) = (r..rows.len()).find(|&i| rows[i][col] != 0) else {
            continue;
        };
        rows.swap(r, p);
        let inv = f.inv(rows[r][col]);
        for x in rows[r].iter_mut() {
            *x = f.mul(inv, *x);
        }
        for i in 0..rows.len() {
            if i != r && rows[i][col] != 0 {
                let m = rows[i][col];
                let pivot = rows[r].clone();
                for (x, &p) in rows[i].iter_mut().zip(&pivot).take(k) {
                    *x = f.sub(*x, f.mul(m, p));
                }
            }
        }
        pivots.push(col);
        r += 1;
    }
    let free = (0..k).find(|j| !pivots.contains(j)).expect("circuits are dependent");
    let mut x = vec![0u8; k];
    x[free] = 1;
    for (i, &p) in pivots.iter().enumerate() {
        x[p] = f.neg(rows[i][free]);
    }
    let mut out = vec![0u8; n];
    for (slot, &j) in cols.iter().enumerate() {
        out[j] = x[slot];
    }
    out
}

/// All `r x n` reduced row echelon matrices of rank `r` over `GF(q)`, in a
/// fixed order: pivot sets lexicographically, then free entries as digits.
pub(crate) fn for_each_rref(
    q: u8,
    r: usize,
    n: usize,
    mut visit: impl FnMut(&[Vec<u8>]) -> Result<bool>,
) -> Result<bool> {
    for pivots in super::basic::k_subsets(n, r) {
        let mut free = Vec::new();
        for (i, &p) in pivots.iter().enumerate() {
            for j in p + 1..n {
                if !pivots.contains(&j) {
                    free.push((i, j));
                }
            }
        }
        let mut m = vec![vec![0u8; n]; r];
        for (i, &p) in pivots.iter().enumerate() {
            m[i][p] = 1;
        }
        let mut digits = vec![0u8; free.len()];
        loop {
            for (&(i, j), &d) in free.iter().zip(&digits) {
                m[i][j] = d;
            }
            if visit(&m)? {
                return Ok(true);
            }
            let mut pos = digits.len();
            let mut done = true;
            while pos > 0 {
                pos -= 1;
                digits[pos] += 1;
                if digits[pos] < q {
                    done = false;
                    break;
                }
                digits[pos] = 0;
            }
            if done {
                break;
            }
        }
    }
    Ok(false)
}

pub(crate) fn field(q: u8) -> Result<&'static Gf> {
    gf(q)
}

pub(crate) fn to_tract_matrix(q: u8, rows: &[Vec<u8>], n: usize) -> Result<TractMatrix> {
    let grid = if rows.is_empty() {
        vec![vec![TractElement::Finite(0); n]]
    } else {
        rows.iter()
            .map(|r| r.iter().map(|&x| TractElement::Finite(x)).collect())
            .collect()
    };
    TractMatrix::new(TractId::FiniteField(q), grid)
}
