//! Vectors and matrices over a tract, orthogonality and linear dependence.

mod dependence;
mod determinant;
pub mod field;

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::tracts::{FormalSum, TractElement, TractHom, TractId};

pub use dependence::find_dependence;
pub use determinant::{formal_determinant, formal_determinant_guarded};

/// A vector with entries in a single tract.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct TractVector {
    tract: TractId,
    entries: Vec<TractElement>,
}

impl TractVector {
    pub fn new(tract: TractId, entries: Vec<TractElement>) -> Result<Self> {
        for e in &entries {
            tract.check(e)?;
        }
        Ok(TractVector { tract, entries })
    }

    pub(crate) fn new_unchecked(tract: TractId, entries: Vec<TractElement>) -> Self {
        TractVector { tract, entries }
    }

    /// Parses each literal with [`TractId::parse_element`].
    pub fn parse(tract: &TractId, literals: &[&str]) -> Result<Self> {
        let entries = literals
            .iter()
            .map(|s| tract.parse_element(s))
            .collect::<Result<Vec<_>>>()?;
        Ok(TractVector {
            tract: tract.clone(),
            entries,
        })
    }

    pub fn zero(tract: &TractId, n: usize) -> Self {
        TractVector {
            tract: tract.clone(),
            entries: vec![tract.zero(); n],
        }
    }

    pub fn tract(&self) -> &TractId {
        &self.tract
    }

    pub fn entries(&self) -> &[TractElement] {
        &self.entries
    }

    pub fn into_entries(self) -> Vec<TractElement> {
        self.entries
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn get(&self, i: usize) -> &TractElement {
        &self.entries[i]
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|e| self.tract.is_zero(e))
    }

    /// Zero-based indices of the nonzero entries.
    pub fn support(&self) -> Vec<usize> {
        support(self)
    }

    /// The support as a bitmask (bit `i` for entry `i`).
    pub fn support_mask(&self) -> u32 {
        self.entries
            .iter()
            .enumerate()
            .filter(|(_, e)| !self.tract.is_zero(e))
            .fold(0, |m, (i, _)| m | 1 << i)
    }

    pub fn scale(&self, c: &TractElement) -> Result<TractVector> {
        let entries = self
            .entries
            .iter()
            .map(|e| self.tract.mul(c, e))
            .collect::<Result<Vec<_>>>()?;
        Ok(TractVector::new_unchecked(self.tract.clone(), entries))
    }

    /// Scales so that the first nonzero entry becomes one.
    pub fn normalized(&self) -> Result<TractVector> {
        match self.entries.iter().find(|e| !self.tract.is_zero(e)) {
            None => Ok(self.clone()),
            Some(first) => self.scale(&self.tract.inv(first)?),
        }
    }

    /// Applies a tract homomorphism entrywise.
    pub fn map(&self, h: &TractHom) -> Result<TractVector> {
        let entries = self.entries.iter().map(|e| h.apply(e)).collect::<Result<Vec<_>>>()?;
        Ok(TractVector::new_unchecked(h.target().clone(), entries))
    }
}

impl fmt::Display for TractVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.entries.iter().map(|e| self.tract.format_element(e)).collect();
        write!(f, "({})", parts.join(", "))
    }
}

/// A dense matrix with entries in a single tract.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct TractMatrix {
    tract: TractId,
    m: usize,
    n: usize,
    rows: Vec<Vec<TractElement>>,
}

impl TractMatrix {
    pub fn new(tract: TractId, rows: Vec<Vec<TractElement>>) -> Result<Self> {
        let m = rows.len();
        let n = rows.first().map_or(0, Vec::len);
        if m == 0 || n == 0 {
            return Err(Error::Dimension(
                "a matrix needs at least one row and one column".into(),
            ));
        }
        for (i, row) in rows.iter().enumerate() {
            if row.len() != n {
                return Err(Error::Dimension(format!(
                    "row {} has {} entries, expected {n}",
                    i + 1,
                    row.len()
                )));
            }
            for e in row {
                tract.check(e)?;
            }
        }
        Ok(TractMatrix { tract, m, n, rows })
    }

    /// Parses a grid of element literals.
    pub fn parse(tract: &TractId, rows: &[&[&str]]) -> Result<Self> {
        let grid = rows
            .iter()
            .map(|r| r.iter().map(|s| tract.parse_element(s)).collect())
            .collect::<Result<Vec<_>>>()?;
        TractMatrix::new(tract.clone(), grid)
    }

    /// Parses whitespace-separated rows such as `"1 -1 0"`.
    pub fn parse_rows(tract: &TractId, rows: &[&str]) -> Result<Self> {
        let grid = rows
            .iter()
            .map(|r| r.split_whitespace().map(|s| tract.parse_element(s)).collect())
            .collect::<Result<Vec<_>>>()?;
        TractMatrix::new(tract.clone(), grid)
    }

    pub fn tract(&self) -> &TractId {
        &self.tract
    }

    pub fn nrows(&self) -> usize {
        self.m
    }

    pub fn ncols(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> &TractElement {
        &self.rows[i][j]
    }

    pub fn grid(&self) -> &[Vec<TractElement>] {
        &self.rows
    }

    pub fn row(&self, i: usize) -> TractVector {
        TractVector::new_unchecked(self.tract.clone(), self.rows[i].clone())
    }

    pub fn column(&self, j: usize) -> TractVector {
        TractVector::new_unchecked(self.tract.clone(), self.rows.iter().map(|r| r[j].clone()).collect())
    }

    pub fn row_vectors(&self) -> Vec<TractVector> {
        (0..self.m).map(|i| self.row(i)).collect()
    }

    pub fn column_vectors(&self) -> Vec<TractVector> {
        (0..self.n).map(|j| self.column(j)).collect()
    }

    pub fn transpose(&self) -> TractMatrix {
        TractMatrix {
            tract: self.tract.clone(),
            m: self.n,
            n: self.m,
            rows: (0..self.n)
                .map(|j| self.rows.iter().map(|r| r[j].clone()).collect())
                .collect(),
        }
    }

    /// Submatrix on the given row and column indices, in the given order.
    pub fn submatrix(&self, rows: &[usize], cols: &[usize]) -> Result<TractMatrix> {
        if rows.iter().any(|&i| i >= self.m) || cols.iter().any(|&j| j >= self.n) {
            return Err(Error::Dimension("submatrix index out of range".into()));
        }
        TractMatrix::new(
            self.tract.clone(),
            rows.iter()
                .map(|&i| cols.iter().map(|&j| self.rows[i][j].clone()).collect())
                .collect(),
        )
    }

    /// Applies a tract homomorphism entrywise.
    pub fn map(&self, h: &TractHom) -> Result<TractMatrix> {
        let rows = self
            .rows
            .iter()
            .map(|r| r.iter().map(|e| h.apply(e)).collect())
            .collect::<Result<Vec<_>>>()?;
        Ok(TractMatrix {
            tract: h.target().clone(),
            m: self.m,
            n: self.n,
            rows,
        })
    }
}

impl fmt::Display for TractMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{}", self.tract)?;
        writeln!(f, "{} {}", self.m, self.n)?;
        for r in &self.rows {
            let parts: Vec<String> = r.iter().map(|e| self.tract.format_element(e)).collect();
            writeln!(f, "{}", parts.join(" "))?;
        }
        Ok(())
    }
}

/// Coefficients witnessing a linear dependence.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DependenceCertificate {
    pub coefficients: TractVector,
}

/// Zero-based indices of the nonzero entries of `v`.
pub fn support(v: &TractVector) -> Vec<usize> {
    (0..v.len()).filter(|&i| !v.tract.is_zero(&v.entries[i])).collect()
}

fn same_shape(x: &TractVector, y: &TractVector) -> Result<()> {
    if x.tract != y.tract {
        return Err(Error::TractMismatch(x.tract.to_string(), y.tract.to_string()));
    }
    if x.len() != y.len() {
        return Err(Error::Dimension(format!("lengths {} and {}", x.len(), y.len())));
    }
    Ok(())
}

/// Whether the formal sum of the products `x_i y_i` is null.
pub fn orthogonal(x: &TractVector, y: &TractVector) -> Result<bool> {
    same_shape(x, y)?;
    let t = &x.tract;
    let mut sum = FormalSum::new(t.clone());
    for (a, b) in x.entries.iter().zip(&y.entries) {
        sum.push(t.mul(a, b)?)?;
    }
    t.is_null(&sum)
}

/// Whether `sum_i c_i X_i` is null in every coordinate.
pub fn verify_dependence(vectors: &[TractVector], cert: &DependenceCertificate) -> Result<bool> {
    let c = &cert.coefficients;
    if c.len() != vectors.len() {
        return Err(Error::Dimension(format!(
            "{} coefficients for {} vectors",
            c.len(),
            vectors.len()
        )));
    }
    if c.is_zero() {
        return Err(Error::Precondition("certificate is all zero".into()));
    }
    let Some(first) = vectors.first() else {
        return Ok(false);
    };
    for v in vectors {
        same_shape(first, v)?;
    }
    if c.tract != first.tract {
        return Err(Error::TractMismatch(c.tract.to_string(), first.tract.to_string()));
    }
    let t = &c.tract;
    for j in 0..first.len() {
        let mut sum = FormalSum::new(t.clone());
        for (ci, v) in c.entries.iter().zip(vectors) {
            sum.push(t.mul(ci, &v.entries[j])?)?;
        }
        if !t.is_null(&sum)? {
            return Ok(false);
        }
    }
    Ok(true)
}
