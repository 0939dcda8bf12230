use serde::{Deserialize, Serialize};

use crate::config::Guards;
use crate::error::{guard, Error, Result};
use crate::linalg::{field, orthogonal, TractMatrix, TractVector};
use crate::realize::{epic_lift, realize_sign_pattern, realize_zero_pattern};
use crate::tracts::{HomKind, TractElement, TractHom, TractId};

use super::basic::r_col;
use super::fq;
use super::matroidal::{r_mat_krasner, r_mat_sign, row_supports, Mode};
use super::patterns::sigma;
use super::RankValue;

/// Minimum rank of a `GF(q)` matroid whose push-forward has every row as a covector.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PhiMatRank {
    pub rank: usize,
    pub q: u8,
    /// Reduced row echelon representation of the witness, encoded elements.
    pub witness: Vec<Vec<u8>>,
}

fn source_order(h: &TractHom) -> Result<u8> {
    match h.source() {
        Some(TractId::FiniteField(q)) => Ok(*q),
        Some(t) => Err(Error::UnsupportedTract {
            tract: t.to_string(),
            operation: "phi-matroidal rank (source must be a finite field)",
        }),
        None => Err(Error::UnsupportedTract {
            tract: "laurent".into(),
            operation: "phi-matroidal rank (source must be a finite field)",
        }),
    }
}

/// Searches echelon matrices of rank `from..=to` for a witness.
pub(crate) fn phi_search(
    h: &TractHom,
    a: &TractMatrix,
    from: usize,
    to: usize,
    guards: &Guards,
) -> Result<Option<PhiMatRank>> {
    let q = source_order(h)?;
    if a.tract() != h.target() {
        return Err(Error::TractMismatch(a.tract().to_string(), h.target().to_string()));
    }
    let n = a.ncols();
    guard("phi field order", guards.phi_field_order, q as usize)?;
    guard("phi columns", guards.phi_columns, n)?;
    let f = fq::field(q)?;
    let supports = row_supports(a);
    let rows = a.row_vectors();
    let krasner = h.target() == &TractId::Krasner;
    for r in from..=to.min(n) {
        let mut found = None;
        fq::for_each_rref(q, r, n, |b| {
            let ok = if krasner {
                supports.iter().all(|&s| fq::complement_is_flat(f, b, n, s))
            } else {
                let m = fq::matroid(f, b, n);
                let mut ok = true;
                'circuits: for &c in m.circuits() {
                    let x = fq::circuit_vector(f, b, n, c);
                    let x = TractVector::new_unchecked(
                        h.target().clone(),
                        x.into_iter()
                            .map(|e| h.apply(&TractElement::Finite(e)))
                            .collect::<Result<_>>()?,
                    );
                    for row in &rows {
                        if !orthogonal(&x, row)? {
                            ok = false;
                            break 'circuits;
                        }
                    }
                }
                ok
            };
            if ok {
                found = Some(b.to_vec());
            }
            Ok(ok)
        })?;
        if let Some(witness) = found {
            return Ok(Some(PhiMatRank { rank: r, q, witness }));
        }
    }
    Ok(None)
}

/// The phi-matroidal rank for `h` with a finite field source.
pub fn r_phi_mat(h: &TractHom, a: &TractMatrix, guards: &Guards) -> Result<PhiMatRank> {
    let n = a.ncols();
    let cap = guards.phi_rank.min(n);
    match phi_search(h, a, 0, cap, guards)? {
        Some(found) => Ok(found),
        None => Err(Error::Guard {
            guard: "phi rank",
            limit: guards.phi_rank,
            actual: n,
        }),
    }
}

/// Minimum rank of a lift, exact or bracketed.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PreimageRank {
    pub value: RankValue,
    /// The best lift found; its rank is the upper end of `value`.
    pub lift: TractMatrix,
    pub lower_source: String,
    pub upper_source: String,
}

/// Minimum rank over all lifts of `a` along `h`.
///
/// Finite fibers (`GF(q) -> K` and quotient maps) are enumerated
/// exhaustively. The rational maps to `K` and `S` are bracketed between a
/// matroidal lower bound and the best explicit construction; `seed` drives
/// the randomized lift.
pub fn r_preimage(h: &TractHom, a: &TractMatrix, guards: &Guards, seed: u64) -> Result<PreimageRank> {
    if a.tract() != h.target() {
        return Err(Error::TractMismatch(a.tract().to_string(), h.target().to_string()));
    }
    match h.kind() {
        HomKind::FqToKrasner(_) | HomKind::QuotientMap { .. } => exhaustive_lifts(h, a, guards),
        HomKind::RationalToKrasner => rational_krasner(a, guards, seed),
        HomKind::RationalToSign => rational_sign(a, guards),
        other => Err(Error::UnsupportedTract {
            tract: format!("{other:?}"),
            operation: "lift-minimum rank (infinite fibers)",
        }),
    }
}

fn exhaustive_lifts(h: &TractHom, a: &TractMatrix, guards: &Guards) -> Result<PreimageRank> {
    let q = source_order(h)?;
    let f = fq::field(q)?;
    let images: Vec<TractElement> = (0..q)
        .map(|x| h.apply(&TractElement::Finite(x)))
        .collect::<Result<_>>()?;
    let (m, n) = (a.nrows(), a.ncols());
    let fibers: Vec<Vec<u8>> = a
        .grid()
        .iter()
        .flatten()
        .map(|e| (0..q).filter(|&x| &images[x as usize] == e).collect())
        .collect();
    let mut total: usize = 1;
    for fib in &fibers {
        total = total.saturating_mul(fib.len());
    }
    guard("lifts", guards.lifts, total)?;
    let lower = r_col(a)?.rank;
    let mut digits = vec![0usize; fibers.len()];
    let mut best: Option<(usize, Vec<Vec<u8>>)> = None;
    loop {
        let lift: Vec<Vec<u8>> = (0..m)
            .map(|i| (0..n).map(|j| fibers[i * n + j][digits[i * n + j]]).collect())
            .collect();
        let r = fq::rank(f, &lift);
        if best.as_ref().is_none_or(|(b, _)| r < *b) {
            best = Some((r, lift));
            if r == lower {
                break;
            }
        }
        let mut pos = digits.len();
        let mut done = true;
        while pos > 0 {
            pos -= 1;
            digits[pos] += 1;
            if digits[pos] < fibers[pos].len() {
                done = false;
                break;
            }
            digits[pos] = 0;
        }
        if done {
            break;
        }
    }
    let (rank, lift) = best.ok_or_else(|| Error::Internal("empty fiber".into()))?;
    if rank < lower {
        return Err(Error::Internal("lift rank below the column rank".into()));
    }
    Ok(PreimageRank {
        value: RankValue::Exact(rank),
        lift: fq::to_tract_matrix(q, &lift, n)?,
        lower_source: "exhaustive lift enumeration".into(),
        upper_source: "exhaustive lift enumeration".into(),
    })
}

fn bracket(lower: usize, upper: usize) -> Result<RankValue> {
    if upper < lower {
        return Err(Error::Internal(format!("lift rank {upper} below lower bound {lower}")));
    }
    Ok(if lower == upper {
        RankValue::Exact(lower)
    } else {
        RankValue::Bounds { lower, upper }
    })
}

fn rational_krasner(a: &TractMatrix, guards: &Guards, seed: u64) -> Result<PreimageRank> {
    let n = a.ncols();
    let mode = if n <= guards.enumerate.min(6) {
        Mode::Exact
    } else {
        Mode::Bounds
    };
    let mat = r_mat_krasner(a, mode, guards)?;
    let lower = mat.value.lower();
    let lower_source = match mode {
        Mode::Exact => "Krasner matroidal rank",
        Mode::Bounds => "column rank",
    };
    let t = row_supports(a)
        .iter()
        .map(|s| s.count_ones() as usize)
        .filter(|&k| k > 0)
        .min()
        .unwrap_or(n);
    let mut best = realize_zero_pattern(a, t.max(1))?;
    let mut source = "Vandermonde construction".to_string();
    if n <= guards.phi_columns {
        let h = crate::tracts::TractHom::from_finite_field(2, &TractId::Krasner)?;
        let to = guards.phi_rank.min(best.actual_rank.saturating_sub(1));
        if let Some(phi) = phi_search(&h, a, lower, to, guards)? {
            let b = binary_to_rational(&phi.witness, n)?;
            let m = crate::matroids::linear_matroid(&b)?;
            if row_supports(a).iter().all(|&s| m.is_covector_support(s)) {
                let lifted = epic_lift(a, &b, seed)?;
                if lifted.actual_rank < best.actual_rank {
                    best = lifted;
                    source = "generic lift of a binary witness".into();
                }
            }
        }
    }
    Ok(PreimageRank {
        value: bracket(lower, best.actual_rank)?,
        lift: best.matrix,
        lower_source: lower_source.into(),
        upper_source: source,
    })
}

/// Reads a `GF(2)` matrix as a rational 0/1 matrix.
fn binary_to_rational(rows: &[Vec<u8>], n: usize) -> Result<TractMatrix> {
    let grid = rows
        .iter()
        .map(|r| {
            r.iter()
                .map(|&x| TractElement::Rational(crate::tracts::ratio(x as i64, 1)))
                .collect()
        })
        .collect::<Vec<Vec<_>>>();
    if grid.is_empty() {
        return TractMatrix::new(
            TractId::Rational,
            vec![vec![TractElement::Rational(crate::tracts::ratio(0, 1)); n]],
        );
    }
    TractMatrix::new(TractId::Rational, grid)
}

fn rational_sign(a: &TractMatrix, guards: &Guards) -> Result<PreimageRank> {
    let (lower, lower_source) = if a.ncols() <= guards.sign_columns && a.nrows() <= guards.sign_rows {
        (r_mat_sign(a, guards)?.0, "oriented matroid rank")
    } else {
        (r_col(a)?.rank, "column rank")
    };
    let k = a
        .row_vectors()
        .iter()
        .map(|r| sign_entries(r).map(|v| sigma(&v)))
        .collect::<Result<Vec<_>>>()?
        .into_iter()
        .max()
        .unwrap_or(0)
        + 1;
    let built = realize_sign_pattern(a, k)?;
    let rank = field::rank(&built.matrix)?;
    Ok(PreimageRank {
        value: bracket(lower, rank)?,
        lift: built.matrix,
        lower_source: lower_source.into(),
        upper_source: "moment curve construction".into(),
    })
}

/// Entries of a sign vector as `-1`, `0`, `1`.
pub fn sign_entries(v: &TractVector) -> Result<Vec<i8>> {
    v.entries()
        .iter()
        .map(|e| match e {
            TractElement::Sign(s) => Ok(*s),
            other => Err(Error::TagMismatch {
                tract: "sign".into(),
                element: format!("{other:?}"),
            }),
        })
        .collect()
}
