//! Exact Gaussian elimination over the field tracts.

use crate::error::{Error, Result};
use crate::tracts::{TractElement, TractId};

use super::{TractMatrix, TractVector};

fn require_field(t: &TractId) -> Result<()> {
    if t.is_field() {
        Ok(())
    } else {
        Err(Error::UnsupportedTract {
            tract: t.to_string(),
            operation: "field elimination",
        })
    }
}

/// Reduced row echelon form of `rows`; returns the nonzero rows and pivot columns.
pub fn rref(tract: &TractId, mut rows: Vec<Vec<TractElement>>) -> Result<(Vec<Vec<TractElement>>, Vec<usize>)> {
    require_field(tract)?;
    let n = rows.first().map_or(0, Vec::len);
    let mut pivots = Vec::new();
    let mut r = 0;
    for col in 0..n {
        let Some(p) = (r..rows.len()).find(|&i| !tract.is_zero(&rows[i][col])) else {
            continue;
        };
        rows.swap(r, p);
        let inv = tract.inv(&rows[r][col])?;
        for x in rows[r].iter_mut() {
            *x = tract.mul(&inv, x)?;
        }
        for i in 0..rows.len() {
            if i == r || tract.is_zero(&rows[i][col]) {
                continue;
            }
            let f = rows[i][col].clone();
            let pivot = rows[r].clone();
            for (x, p) in rows[i].iter_mut().zip(&pivot) {
                *x = tract.field_sub(x, &tract.mul(&f, p)?)?;
            }
        }
        pivots.push(col);
        r += 1;
        if r == rows.len() {
            break;
        }
    }
    rows.truncate(r);
    Ok((rows, pivots))
}

/// Rank of a matrix over a field tract.
pub fn rank(a: &TractMatrix) -> Result<usize> {
    Ok(rref(a.tract(), a.grid().to_vec())?.1.len())
}

/// Rank of the given columns of `a`.
pub fn column_subset_rank(a: &TractMatrix, cols: &[usize]) -> Result<usize> {
    let rows = a
        .grid()
        .iter()
        .map(|r| cols.iter().map(|&j| r[j].clone()).collect())
        .collect();
    Ok(rref(a.tract(), rows)?.1.len())
}

/// A basis of the right kernel `{x : a x = 0}`.
pub fn kernel(a: &TractMatrix) -> Result<Vec<TractVector>> {
    let t = a.tract();
    let (rows, pivots) = rref(t, a.grid().to_vec())?;
    let n = a.ncols();
    let mut basis = Vec::new();
    for free in (0..n).filter(|j| !pivots.contains(j)) {
        let mut x = vec![t.zero(); n];
        x[free] = t.one();
        for (row, &p) in rows.iter().zip(&pivots) {
            x[p] = t.neg(&row[free])?;
        }
        basis.push(TractVector::new_unchecked(t.clone(), x));
    }
    Ok(basis)
}

/// The nonzero rows of the reduced echelon form, a basis of the row space.
pub fn row_space_basis(a: &TractMatrix) -> Result<Vec<TractVector>> {
    let (rows, _) = rref(a.tract(), a.grid().to_vec())?;
    Ok(rows
        .into_iter()
        .map(|r| TractVector::new_unchecked(a.tract().clone(), r))
        .collect())
}

/// Field linear combination `sum_i c_i v_i`.
pub fn combination(tract: &TractId, coeffs: &[TractElement], vectors: &[TractVector]) -> Result<TractVector> {
    require_field(tract)?;
    let n = vectors.first().map_or(0, TractVector::len);
    let mut out = vec![tract.zero(); n];
    for (c, v) in coeffs.iter().zip(vectors) {
        for (o, e) in out.iter_mut().zip(v.entries()) {
            *o = tract.field_add(o, &tract.mul(c, e)?)?;
        }
    }
    Ok(TractVector::new_unchecked(tract.clone(), out))
}
