use std::collections::HashSet;

use serde::{Deserialize, Serialize};

use crate::config::Guards;
use crate::error::{guard, Error, Result};
use crate::linalg::{find_dependence, formal_determinant_guarded, DependenceCertificate, TractMatrix};
use crate::tracts::TractId;

/// Column rank with a maximum independent column set and, when the rank is
/// below the number of columns, a dependence among `rank + 1` columns.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ColumnRank {
    pub rank: usize,
    pub independent: Vec<usize>,
    pub dependent: Option<(Vec<usize>, DependenceCertificate)>,
}

/// Maximum number of linearly independent columns.
///
/// Independent sets are closed under taking subsets, so the search grows
/// them one size at a time and stops at the first empty level.
pub fn r_col(a: &TractMatrix) -> Result<ColumnRank> {
    let n = a.ncols();
    if n > 24 {
        return Err(Error::Guard {
            guard: "column rank columns",
            limit: 24,
            actual: n,
        });
    }
    let cols = a.column_vectors();
    let mut level: Vec<Vec<usize>> = vec![Vec::new()];
    loop {
        let mut dependent = None;
        let known: HashSet<&Vec<usize>> = level.iter().collect();
        let mut next = Vec::new();
        for set in &level {
            let start = set.last().map_or(0, |&l| l + 1);
            for j in start..n {
                let mut cand = set.clone();
                cand.push(j);
                // Every subset one smaller must already be independent.
                let closed = (0..cand.len() - 1).all(|skip| {
                    let sub: Vec<usize> = cand
                        .iter()
                        .enumerate()
                        .filter(|&(k, _)| k != skip)
                        .map(|(_, &x)| x)
                        .collect();
                    known.contains(&sub)
                });
                if !closed {
                    continue;
                }
                let vs: Vec<_> = cand.iter().map(|&k| cols[k].clone()).collect();
                match find_dependence(&vs)? {
                    None => next.push(cand),
                    Some(c) => {
                        dependent.get_or_insert((cand, c));
                    }
                }
            }
        }
        if next.is_empty() {
            if dependent.is_none() {
                // Extensions were pruned; any one-larger set is dependent.
                let set = &level[0];
                if let Some(j) = (0..n).find(|j| !set.contains(j)) {
                    let mut cand = set.clone();
                    cand.push(j);
                    cand.sort_unstable();
                    let vs: Vec<_> = cand.iter().map(|&k| cols[k].clone()).collect();
                    let c = find_dependence(&vs)?
                        .ok_or_else(|| Error::Internal("maximal independent set extends".into()))?;
                    dependent = Some((cand, c));
                }
            }
            return Ok(ColumnRank {
                rank: level[0].len(),
                independent: level.swap_remove(0),
                dependent,
            });
        }
        level = next;
    }
}

/// Column rank of the transpose.
pub fn r_row(a: &TractMatrix) -> Result<ColumnRank> {
    r_col(&a.transpose())
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DetRank {
    pub rank: usize,
    pub rows: Vec<usize>,
    pub cols: Vec<usize>,
}

fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(k);
    fn go(n: usize, k: usize, start: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            if n - i < k - cur.len() {
                break;
            }
            cur.push(i);
            go(n, k, i + 1, cur, out);
            cur.pop();
        }
    }
    go(n, k, 0, &mut cur, &mut out);
    out
}

pub(crate) fn k_subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    combinations(n, k)
}

/// Largest size of a square submatrix with non-null formal determinant.
pub fn r_det(a: &TractMatrix, guards: &Guards) -> Result<DetRank> {
    let top = a.nrows().min(a.ncols());
    guard("det", guards.det, top)?;
    for k in (1..=top).rev() {
        for rows in combinations(a.nrows(), k) {
            for cols in combinations(a.ncols(), k) {
                let d = formal_determinant_guarded(&a.submatrix(&rows, &cols)?, guards.det)?;
                if !d.is_null()? {
                    return Ok(DetRank { rank: k, rows, cols });
                }
            }
        }
    }
    Ok(DetRank {
        rank: 0,
        rows: vec![],
        cols: vec![],
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TriRank {
    pub rank: usize,
    /// Row and column orders of an upper-triangular submatrix with nonzero diagonal.
    pub rows: Vec<usize>,
    pub cols: Vec<usize>,
}

/// Triangular rank of a zero/nonzero pattern.
pub fn r_tri(a: &TractMatrix) -> Result<TriRank> {
    if a.tract() != &TractId::Krasner {
        return Err(Error::UnsupportedTract {
            tract: a.tract().to_string(),
            operation: "triangular rank",
        });
    }
    if a.nrows() > 64 || a.ncols() > 64 {
        return Err(Error::Dimension(
            "triangular rank supports at most 64 rows and columns".into(),
        ));
    }
    let nz: Vec<Vec<bool>> = a
        .grid()
        .iter()
        .map(|r| r.iter().map(|e| !a.tract().is_zero(e)).collect())
        .collect();
    let mut best = TriRank {
        rank: 0,
        rows: vec![],
        cols: vec![],
    };
    let mut rows = Vec::new();
    let mut cols = Vec::new();
    let mut seen = HashSet::new();
    tri_search(&nz, &mut rows, &mut cols, &mut seen, &mut best);
    Ok(best)
}

/// Appends diagonal pairs `(i, j)`; a new row must vanish on all earlier columns.
fn tri_search(
    nz: &[Vec<bool>],
    rows: &mut Vec<usize>,
    cols: &mut Vec<usize>,
    seen: &mut HashSet<(u64, u64)>,
    best: &mut TriRank,
) {
    // Extensions depend only on which rows and columns are used.
    let key = (
        rows.iter().fold(0u64, |m, &i| m | 1 << i),
        cols.iter().fold(0u64, |m, &j| m | 1 << j),
    );
    if !seen.insert(key) {
        return;
    }
    if rows.len() > best.rank {
        best.rank = rows.len();
        best.rows = rows.clone();
        best.cols = cols.clone();
    }
    let m = nz.len();
    let n = nz[0].len();
    let eligible: Vec<usize> = (0..m)
        .filter(|i| !rows.contains(i) && cols.iter().all(|&c| !nz[*i][c]))
        .collect();
    let free_cols = n - cols.len();
    if rows.len() + eligible.len().min(free_cols) <= best.rank {
        return;
    }
    for &i in &eligible {
        for j in 0..n {
            if cols.contains(&j) || !nz[i][j] {
                continue;
            }
            rows.push(i);
            cols.push(j);
            tri_search(nz, rows, cols, seen, best);
            rows.pop();
            cols.pop();
        }
    }
}
