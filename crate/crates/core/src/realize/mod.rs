//! Explicit rational matrices realizing patterns at low rank.

#[cfg(test)]
mod tests;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{field, TractMatrix, TractVector};
use crate::lp::{LinearProgram, Relation};
use crate::matroids::{elements, full, linear_matroid, Subset};
use crate::ranks::{is_alt_covector, sigma};
use crate::tracts::{TractElement, TractId};

/// A rational matrix with the rank bound it was built to meet.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RealizationResult {
    pub matrix: TractMatrix,
    pub claimed_rank_bound: usize,
    /// Exact rank of `matrix`.
    pub actual_rank: usize,
    /// Pattern reproduced entrywise and `actual_rank <= claimed_rank_bound`.
    pub verified: bool,
}

type Row = Vec<BigRational>;

fn int(v: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(v))
}

/// Evaluation point of column `j`.
fn point(j: usize) -> BigRational {
    int(j as i64 + 1)
}

fn to_matrix(rows: Vec<Row>) -> Result<TractMatrix> {
    TractMatrix::new(
        TractId::Rational,
        rows.into_iter()
            .map(|r| r.into_iter().map(TractElement::Rational).collect())
            .collect(),
    )
}

fn finish(rows: Vec<Row>, bound: usize, pattern_ok: impl Fn(&TractMatrix) -> bool) -> Result<RealizationResult> {
    let matrix = to_matrix(rows)?;
    let actual_rank = field::rank(&matrix)?;
    let verified = pattern_ok(&matrix) && actual_rank <= bound;
    Ok(RealizationResult {
        matrix,
        claimed_rank_bound: bound,
        actual_rank,
        verified,
    })
}

fn require(a: &TractMatrix, t: TractId) -> Result<()> {
    if a.tract() != &t {
        return Err(Error::TractMismatch(a.tract().to_string(), t.to_string()));
    }
    Ok(())
}

fn zero_pattern_matches(chi: &TractMatrix, m: &TractMatrix) -> bool {
    chi.grid().iter().zip(m.grid()).all(|(p, r)| {
        p.iter()
            .zip(r)
            .all(|(x, y)| chi.tract().is_zero(x) == m.tract().is_zero(y))
    })
}

fn sign_of(x: &BigRational) -> i8 {
    if x.is_zero() {
        0
    } else if x.is_positive() {
        1
    } else {
        -1
    }
}

fn sign_rows(chi: &TractMatrix) -> Result<Vec<Vec<i8>>> {
    chi.row_vectors()
        .iter()
        .map(|r| {
            r.entries()
                .iter()
                .map(|e| match e {
                    TractElement::Sign(s) => Ok(*s),
                    other => Err(Error::TagMismatch {
                        tract: "sign".into(),
                        element: format!("{other:?}"),
                    }),
                })
                .collect()
        })
        .collect()
}

fn sign_pattern_matches(rows: &[Vec<i8>], m: &TractMatrix) -> bool {
    rows.iter().zip(m.grid()).all(|(p, r)| {
        p.iter().zip(r).all(|(&s, e)| match e {
            TractElement::Rational(x) => sign_of(x) == s,
            _ => false,
        })
    })
}

/// Values of `prod (x - root)` at the evaluation points.
fn evaluate(roots: &[BigRational], n: usize) -> Row {
    (0..n)
        .map(|j| {
            let x = point(j);
            roots.iter().fold(BigRational::one(), |acc, r| acc * (&x - r))
        })
        .collect()
}

/// Realizes a zero/nonzero pattern with at least `t` nonzeros per row at
/// rank at most `n - t + 1`: row `S` becomes `prod_{i not in S} (x - x_i)`
/// evaluated at `x_j = j`. All-zero rows stay zero.
pub fn realize_zero_pattern(chi: &TractMatrix, t: usize) -> Result<RealizationResult> {
    require(chi, TractId::Krasner)?;
    let n = chi.ncols();
    if t == 0 || t > n {
        return Err(Error::InvalidParameter(format!("t = {t} must lie in 1..={n}")));
    }
    let mut rows = Vec::with_capacity(chi.nrows());
    for (i, r) in chi.row_vectors().iter().enumerate() {
        let s = r.support();
        if s.is_empty() {
            rows.push(vec![BigRational::zero(); n]);
            continue;
        }
        if s.len() < t {
            return Err(Error::Precondition(format!(
                "row {} has {} nonzeros, fewer than {t}",
                i + 1,
                s.len()
            )));
        }
        let roots: Vec<BigRational> = (0..n).filter(|j| !s.contains(j)).map(point).collect();
        rows.push(evaluate(&roots, n));
    }
    finish(rows, n - t + 1, |m| zero_pattern_matches(chi, m))
}

/// Roots of a polynomial with degree `sigma(v)` whose signs at the
/// evaluation points follow `v`, and the sign to multiply it by.
fn sign_polynomial(v: &[i8]) -> Result<Option<(Vec<BigRational>, i8)>> {
    let n = v.len();
    let nonzero: Vec<usize> = (0..n).filter(|&j| v[j] != 0).collect();
    if nonzero.is_empty() {
        return Ok(None);
    }
    let mut roots: Vec<BigRational> = (0..n).filter(|&j| v[j] == 0).map(point).collect();
    for w in nonzero.windows(2) {
        let (p, q) = (w[0], w[1]);
        let zeros = q - p - 1;
        if (v[p] != v[q]) ^ (zeros % 2 == 1) {
            roots.push((point(p) + point(p + 1)) / int(2));
        }
    }
    if roots.len() > sigma(v) {
        return Err(Error::Internal(format!(
            "sign construction used {} roots for sigma {}",
            roots.len(),
            sigma(v)
        )));
    }
    let first = nonzero[0];
    let raw = sign_of(&evaluate(&roots, n)[first]);
    Ok(Some((roots, raw * v[first])))
}

/// Realizes a sign pattern whose rows have fewer than `k` generalized sign
/// changes by polynomials of degree below `k`, so at rank at most `k`.
pub fn realize_sign_pattern(chi: &TractMatrix, k: usize) -> Result<RealizationResult> {
    require(chi, TractId::Sign)?;
    let n = chi.ncols();
    let pattern = sign_rows(chi)?;
    let mut rows = Vec::with_capacity(pattern.len());
    for (i, v) in pattern.iter().enumerate() {
        if sigma(v) >= k {
            return Err(Error::Precondition(format!(
                "row {} has {} generalized sign changes, not below {k}",
                i + 1,
                sigma(v)
            )));
        }
        rows.push(match sign_polynomial(v)? {
            None => vec![BigRational::zero(); n],
            Some((roots, s)) => evaluate(&roots, n).into_iter().map(|x| x * int(s as i64)).collect(),
        });
    }
    finish(rows, k, |m| sign_pattern_matches(&pattern, m))
}

/// The same contract as [`realize_sign_pattern`], built row by row as a
/// covector of the alternating oriented matroid of rank `k`: each row is
/// solved for by a linear program over the first `k` moment-curve coordinates.
pub fn realize_sign_low_rank_via_alt(chi: &TractMatrix, k: usize) -> Result<RealizationResult> {
    require(chi, TractId::Sign)?;
    let n = chi.ncols();
    let pattern = sign_rows(chi)?;
    for (i, v) in pattern.iter().enumerate() {
        if sigma(v) >= k {
            return Err(Error::Precondition(format!(
                "row {} has {} generalized sign changes, not below {k}",
                i + 1,
                sigma(v)
            )));
        }
    }
    if k >= n {
        let rows = pattern
            .iter()
            .map(|v| v.iter().map(|&s| int(s as i64)).collect())
            .collect();
        return finish(rows, k, |m| sign_pattern_matches(&pattern, m));
    }
    // Moment-curve coordinates (1, x_j, ..., x_j^{k-1}).
    let curve: Vec<Row> = (0..n)
        .map(|j| {
            let x = point(j);
            let mut p = BigRational::one();
            (0..k)
                .map(|_| {
                    let cur = p.clone();
                    p *= &x;
                    cur
                })
                .collect()
        })
        .collect();
    let mut rows = Vec::with_capacity(pattern.len());
    for v in &pattern {
        if !is_alt_covector(v, k)? {
            return Err(Error::Internal(format!("{v:?} is not an alternating covector")));
        }
        let mut lp = LinearProgram::new(2 * k);
        for (j, c) in curve.iter().enumerate() {
            let coeffs = c.iter().cloned().chain(c.iter().map(|x| -x)).collect();
            match v[j] {
                1 => lp.add(coeffs, Relation::Ge, BigRational::one()),
                -1 => lp.add(coeffs, Relation::Le, -BigRational::one()),
                _ => lp.add(coeffs, Relation::Eq, BigRational::zero()),
            }
        }
        let y = lp
            .feasible_point()
            .ok_or_else(|| Error::Internal(format!("no polynomial of degree < {k} has signs {v:?}")))?;
        let coef: Row = (0..k).map(|d| &y[d] - &y[k + d]).collect();
        rows.push(
            curve
                .iter()
                .map(|c| c.iter().zip(&coef).fold(BigRational::zero(), |acc, (a, b)| acc + a * b))
                .collect(),
        );
    }
    finish(rows, k, |m| sign_pattern_matches(&pattern, m))
}

/// Combination attempts per coefficient range before the range doubles.
const TRIES_PER_ROUND: usize = 8;
const ROUNDS: usize = 24;

/// Lifts a zero/nonzero pattern into the row space of the rational matrix
/// `witness`: each row support is a union of cocircuits of the column
/// matroid, and a generic integer combination of their vectors has exactly
/// that support.
pub fn epic_lift(pattern: &TractMatrix, witness: &TractMatrix, seed: u64) -> Result<RealizationResult> {
    require(pattern, TractId::Krasner)?;
    require(witness, TractId::Rational)?;
    let n = pattern.ncols();
    if witness.ncols() != n {
        return Err(Error::Dimension(format!(
            "pattern has {n} columns, witness {}",
            witness.ncols()
        )));
    }
    let m = linear_matroid(witness)?;
    let r = m.rank();
    let supports: Vec<Subset> = pattern.row_vectors().iter().map(TractVector::support_mask).collect();
    for (i, &s) in supports.iter().enumerate() {
        if !m.is_covector_support(s) {
            return Err(Error::Precondition(format!(
                "row {} support is not a covector support of the witness",
                i + 1
            )));
        }
    }
    let basis = field::row_space_basis(witness)?;
    let cocircuits: Vec<(Subset, Row)> = m
        .cocircuits()
        .into_iter()
        .map(|d| cocircuit_vector(&basis, n, d).map(|v| (d, v)))
        .collect::<Result<_>>()?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut rows = Vec::with_capacity(supports.len());
    for &s in &supports {
        let parts: Vec<&Row> = cocircuits.iter().filter(|(d, _)| d & !s == 0).map(|(_, v)| v).collect();
        rows.push(generic_combination(&parts, s, n, &mut rng)?);
    }
    finish(rows, r, |mat| zero_pattern_matches(pattern, mat))
}

fn rational(e: &TractElement) -> BigRational {
    match e {
        TractElement::Rational(x) => x.clone(),
        _ => unreachable!("rational matrix"),
    }
}

/// The row-space vector (up to scale) vanishing exactly off the cocircuit `d`.
fn cocircuit_vector(basis: &[TractVector], n: usize, d: Subset) -> Result<Row> {
    let hyperplane: Vec<usize> = elements(full(n) & !d);
    let k = basis.len();
    let rows: Vec<Vec<TractElement>> = hyperplane
        .iter()
        .map(|&j| basis.iter().map(|b| b.get(j).clone()).collect())
        .collect();
    let y = if rows.is_empty() {
        let mut y = vec![BigRational::zero(); k];
        y[0] = BigRational::one();
        y
    } else {
        let kernel = field::kernel(&TractMatrix::new(TractId::Rational, rows)?)?;
        let first = kernel
            .first()
            .ok_or_else(|| Error::Internal("cocircuit without a row-space vector".into()))?;
        first.entries().iter().map(rational).collect()
    };
    let v: Row = (0..n)
        .map(|j| {
            basis
                .iter()
                .zip(&y)
                .fold(BigRational::zero(), |acc, (b, c)| acc + rational(b.get(j)) * c)
        })
        .collect();
    let support = v
        .iter()
        .enumerate()
        .filter(|(_, x)| !x.is_zero())
        .fold(0, |m, (j, _)| m | 1 << j);
    if support != d {
        return Err(Error::Internal("cocircuit vector has the wrong support".into()));
    }
    Ok(v)
}

fn generic_combination(parts: &[&Row], s: Subset, n: usize, rng: &mut ChaCha8Rng) -> Result<Row> {
    if s == 0 {
        return Ok(vec![BigRational::zero(); n]);
    }
    if let [only] = parts {
        return Ok((*only).clone());
    }
    let mut range: i64 = 2;
    for _ in 0..ROUNDS {
        for _ in 0..TRIES_PER_ROUND {
            let mut v = vec![BigRational::zero(); n];
            for p in parts {
                let c = int(rng.gen_range(1..=range));
                for (x, y) in v.iter_mut().zip(p.iter()) {
                    *x += &c * y;
                }
            }
            let support = v
                .iter()
                .enumerate()
                .filter(|(_, x)| !x.is_zero())
                .fold(0, |m, (j, _)| m | 1 << j);
            if support == s {
                return Ok(v);
            }
        }
        range = range.saturating_mul(2);
    }
    Err(Error::Internal("generic combination retry budget exhausted".into()))
}
