use num_rational::BigRational;
use serde::{Deserialize, Serialize};

use crate::config::Guards;
use crate::error::{guard, Error, Result};
use crate::fmatroids::{from_field_matrix_guarded, FMatroid};
use crate::linalg::{field, TractMatrix, TractVector};
use crate::matroids::{elements, enumerate_matroids_guarded, full, uniform, Matroid, Subset};
use crate::tracts::{TractElement, TractHom, TractId};

use super::basic::{r_col, ColumnRank};
use super::relative::phi_search;
use super::RankValue;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    Exact,
    #[default]
    Bounds,
}

/// Matroidal rank with a lower-bound column witness and an upper-bound matroid.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MatroidalRank {
    pub value: RankValue,
    pub lower: ColumnRank,
    pub witness: FMatroid,
    /// How the upper witness was obtained.
    pub upper_source: String,
}

/// Supports of the nonzero rows.
pub(crate) fn row_supports(a: &TractMatrix) -> Vec<Subset> {
    let mut s: Vec<Subset> = a
        .row_vectors()
        .iter()
        .map(TractVector::support_mask)
        .filter(|&m| m != 0)
        .collect();
    s.sort_unstable();
    s.dedup();
    s
}

fn table_accepts(table: &[u8], n: usize, supports: &[Subset]) -> bool {
    supports.iter().all(|&s| {
        let z = full(n) & !s;
        elements(s)
            .into_iter()
            .all(|e| table[(z | 1 << e) as usize] > table[z as usize])
    })
}

fn value(lower: usize, upper: usize) -> RankValue {
    if lower == upper {
        RankValue::Exact(lower)
    } else {
        RankValue::Bounds { lower, upper }
    }
}

/// Matroidal rank of a zero/nonzero pattern.
///
/// Bounds mode pairs the column rank with the best of a uniform witness and
/// a binary witness from the echelon search. Exact mode additionally scans
/// every matroid of smaller rank (`n` within the enumeration guard).
pub fn r_mat_krasner(a: &TractMatrix, mode: Mode, guards: &Guards) -> Result<MatroidalRank> {
    if a.tract() != &TractId::Krasner {
        return Err(Error::UnsupportedTract {
            tract: a.tract().to_string(),
            operation: "Krasner matroidal rank",
        });
    }
    let n = a.ncols();
    if mode == Mode::Exact {
        guard("enumerate", guards.enumerate, n)?;
    }
    let supports = row_supports(a);
    let lower = r_col(a)?;
    let t = supports.iter().map(|s| s.count_ones() as usize).min();
    let mut upper = match t {
        None => 0,
        Some(t) => n - t + 1,
    };
    let mut witness = uniform(upper, n)?;
    let mut source = format!("uniform U({upper},{n})");
    if !supports.iter().all(|&s| witness.is_covector_support(s)) {
        return Err(Error::Internal("uniform witness rejected a row".into()));
    }
    if upper > lower.rank && n <= guards.phi_columns {
        let h = TractHom::from_finite_field(2, &TractId::Krasner)?;
        let to = (upper - 1).min(guards.phi_rank);
        if let Some(phi) = phi_search(&h, a, lower.rank, to, guards)? {
            upper = phi.rank;
            witness = super::fq::matroid(super::fq::field(2)?, &phi.witness, n);
            source = "binary echelon search".to_string();
        }
    }
    if let Some((r, m)) = (lower.rank..upper).find_map(|r| sparse_paving_witness(n, r, &supports).map(|m| (r, m))) {
        upper = r;
        witness = m;
        source = format!("sparse paving matroid of rank {r}");
    }
    let mut exhausted = false;
    if mode == Mode::Exact && upper > lower.rank {
        let mut stream = enumerate_matroids_guarded(n, upper - 1, guards.enumerate)?;
        while let Some(table) = stream.next_table() {
            let r = table[table.len() - 1] as usize;
            if r < upper && table_accepts(&table, n, &supports) {
                upper = r;
                witness = Matroid::from_rank_table(n, &table);
                source = "matroid enumeration".to_string();
                if upper == lower.rank {
                    break;
                }
            }
        }
        exhausted = true;
    }
    let value = if exhausted {
        RankValue::Exact(upper)
    } else {
        value(lower.rank, upper)
    };
    Ok(MatroidalRank {
        value,
        lower,
        witness: FMatroid::tautological(&TractId::Krasner, &witness)?,
        upper_source: source,
    })
}

/// A sparse paving matroid of rank `r` in which every zero set is a flat:
/// zero sets of size `r` become circuit-hyperplanes.
fn sparse_paving_witness(n: usize, r: usize, supports: &[Subset]) -> Option<Matroid> {
    if r == 0 || r >= n {
        return None;
    }
    let zeros: Vec<Subset> = supports.iter().map(|&s| full(n) & !s).collect();
    let mut hyperplanes: Vec<Subset> = zeros.iter().copied().filter(|z| z.count_ones() as usize == r).collect();
    hyperplanes.sort_unstable();
    hyperplanes.dedup();
    for (i, a) in hyperplanes.iter().enumerate() {
        if hyperplanes[i + 1..]
            .iter()
            .any(|b| (a & b).count_ones() as usize > r - 2)
        {
            return None;
        }
    }
    let mut circuits = hyperplanes.clone();
    for s in 0..=full(n) {
        if s.count_ones() as usize == r + 1 && hyperplanes.iter().all(|h| h & !s != 0) {
            circuits.push(s);
        }
    }
    let m = Matroid::new(n, circuits).ok()?;
    supports.iter().all(|&s| m.is_covector_support(s)).then_some(m)
}

fn tropical_value(e: &TractElement) -> Option<&BigRational> {
    match e {
        TractElement::Tropical(x) => x.as_ref(),
        _ => None,
    }
}

/// Whether `row` is a covector of the tautological tropical matroid on `m`.
fn tropical_taut_accepts(m: &Matroid, row: &[TractElement]) -> bool {
    m.circuits().iter().all(|&c| {
        let vals: Vec<&BigRational> = elements(c)
            .into_iter()
            .filter_map(|i| tropical_value(&row[i]))
            .collect();
        match vals.iter().max() {
            None => true,
            Some(best) => vals.iter().filter(|v| *v == best).count() >= 2,
        }
    })
}

/// Bounds on the matroidal rank of a tropical matrix: column rank below,
/// the smallest tautological witness above.
pub fn r_mat_tropical(a: &TractMatrix, guards: &Guards) -> Result<MatroidalRank> {
    if a.tract() != &TractId::Tropical {
        return Err(Error::UnsupportedTract {
            tract: a.tract().to_string(),
            operation: "tropical matroidal bounds",
        });
    }
    let n = a.ncols();
    let lower = r_col(a)?;
    let rows = a.grid();
    let accepts = |m: &Matroid| rows.iter().all(|r| tropical_taut_accepts(m, r));
    let mut found: Option<(Matroid, String)> = None;
    'ranks: for r in lower.rank..=n {
        if n <= guards.enumerate {
            let mut stream = enumerate_matroids_guarded(n, r, guards.enumerate)?;
            while let Some(table) = stream.next_table() {
                if table[table.len() - 1] as usize == r {
                    let m = Matroid::from_rank_table(n, &table);
                    if accepts(&m) {
                        found = Some((m, "tautological matroid enumeration".into()));
                        break 'ranks;
                    }
                }
            }
        } else {
            let u = uniform(r, n)?;
            if accepts(&u) {
                found = Some((u, format!("tautological U({r},{n})")));
                break;
            }
        }
    }
    let (m, source) = found.ok_or_else(|| Error::Internal("free matroid rejected".into()))?;
    Ok(MatroidalRank {
        value: value(lower.rank, m.rank()),
        lower,
        witness: FMatroid::tautological(&TractId::Tropical, &m)?,
        upper_source: source,
    })
}

fn sign_vectors_on(c: Subset, n: usize) -> Vec<Vec<i8>> {
    let items = elements(c);
    (0..1u32 << items.len().saturating_sub(1))
        .map(|bits| {
            let mut v = vec![0i8; n];
            for (k, &i) in items.iter().enumerate() {
                v[i] = if k > 0 && bits >> (k - 1) & 1 == 1 { -1 } else { 1 };
            }
            v
        })
        .collect()
}

fn sign_orthogonal(x: &[i8], y: &[i8]) -> bool {
    let (mut pos, mut neg) = (false, false);
    for (a, b) in x.iter().zip(y) {
        match a * b {
            1 => pos = true,
            -1 => neg = true,
            _ => {}
        }
    }
    pos == neg
}

fn sign_rows(a: &TractMatrix) -> Vec<Vec<i8>> {
    a.grid()
        .iter()
        .map(|r| {
            r.iter()
                .map(|e| match e {
                    TractElement::Sign(s) => *s,
                    _ => 0,
                })
                .collect()
        })
        .collect()
}

fn sign_vector(v: &[i8]) -> TractVector {
    TractVector::new_unchecked(TractId::Sign, v.iter().map(|&x| TractElement::Sign(x)).collect())
}

/// Normalized circuit signatures on `m` orthogonal to every row of `a`.
pub fn sign_circuit_options(a: &TractMatrix, m: &Matroid) -> Vec<Vec<TractVector>> {
    let rows = sign_rows(a);
    m.circuits()
        .iter()
        .map(|&c| {
            sign_vectors_on(c, m.n())
                .into_iter()
                .filter(|x| rows.iter().all(|r| sign_orthogonal(x, r)))
                .map(|x| sign_vector(&x))
                .collect()
        })
        .collect()
}

/// Exact matroidal rank over the sign hyperfield, with an oriented matroid witness.
pub fn r_mat_sign(a: &TractMatrix, guards: &Guards) -> Result<(usize, FMatroid)> {
    if a.tract() != &TractId::Sign {
        return Err(Error::UnsupportedTract {
            tract: a.tract().to_string(),
            operation: "sign matroidal rank",
        });
    }
    let n = a.ncols();
    guard("sign columns", guards.sign_columns, n)?;
    guard("sign rows", guards.sign_rows, a.nrows())?;
    let rows = sign_rows(a);
    for r in 0..=n {
        let mut stream = enumerate_matroids_guarded(n, r, guards.enumerate.max(n))?;
        while let Some(table) = stream.next_table() {
            if table[table.len() - 1] as usize != r {
                continue;
            }
            let m = Matroid::from_rank_table(n, &table);
            if let Some(om) = orient(&m, &rows)? {
                return Ok((r, om));
            }
        }
    }
    Err(Error::Internal("free oriented matroid rejected".into()))
}

/// Searches circuit signatures orthogonal to the rows that admit cocircuit
/// signatures orthogonal to all of them.
fn orient(m: &Matroid, rows: &[Vec<i8>]) -> Result<Option<FMatroid>> {
    let n = m.n();
    let circuit_opts: Vec<Vec<Vec<i8>>> = m
        .circuits()
        .iter()
        .map(|&c| {
            sign_vectors_on(c, n)
                .into_iter()
                .filter(|x| rows.iter().all(|r| sign_orthogonal(x, r)))
                .collect()
        })
        .collect();
    if circuit_opts.iter().any(Vec::is_empty) {
        return Ok(None);
    }
    let cocircuits = m.cocircuits();
    let co_opts: Vec<Vec<Vec<i8>>> = cocircuits.iter().map(|&d| sign_vectors_on(d, n)).collect();
    // compat[c][o][d]: options of cocircuit d orthogonal to option o of circuit c.
    let compat: Vec<Vec<Vec<u32>>> = circuit_opts
        .iter()
        .map(|opts| {
            opts.iter()
                .map(|x| {
                    co_opts
                        .iter()
                        .map(|ys| {
                            ys.iter()
                                .enumerate()
                                .filter(|(_, y)| sign_orthogonal(x, y))
                                .fold(0u32, |acc, (k, _)| acc | 1 << k)
                        })
                        .collect()
                })
                .collect()
        })
        .collect();
    let start: Vec<u32> = co_opts.iter().map(|o| ((1u64 << o.len()) - 1) as u32).collect();
    let mut choice = Vec::with_capacity(circuit_opts.len());
    let Some(cands) = assign(&compat, 0, start, &mut choice) else {
        return Ok(None);
    };
    let circuits = choice
        .iter()
        .enumerate()
        .map(|(c, &o)| sign_vector(&circuit_opts[c][o]))
        .collect();
    let cos = cands
        .iter()
        .enumerate()
        .map(|(d, &mask)| sign_vector(&co_opts[d][mask.trailing_zeros() as usize]))
        .collect();
    let om = FMatroid::new(TractId::Sign, m.clone(), circuits, cos)?;
    if !om.is_valid() {
        return Err(Error::Internal(
            "oriented matroid search produced an invalid witness".into(),
        ));
    }
    Ok(Some(om))
}

fn assign(compat: &[Vec<Vec<u32>>], c: usize, cands: Vec<u32>, choice: &mut Vec<usize>) -> Option<Vec<u32>> {
    if c == compat.len() {
        return Some(cands);
    }
    for (o, masks) in compat[c].iter().enumerate() {
        let next: Vec<u32> = cands.iter().zip(masks).map(|(a, b)| a & b).collect();
        if next.contains(&0) {
            continue;
        }
        choice.push(o);
        if let Some(done) = assign(compat, c + 1, next, choice) {
            return Some(done);
        }
        choice.pop();
    }
    None
}

/// Matroidal rank over a field: the ordinary rank, witnessed by the row space.
pub fn r_mat_field(a: &TractMatrix, guards: &Guards) -> Result<MatroidalRank> {
    let rank = field::rank(a)?;
    let lower = r_col(a)?;
    Ok(MatroidalRank {
        value: RankValue::Exact(rank),
        lower,
        witness: from_field_matrix_guarded(a, guards.field_columns)?,
        upper_source: "row space".into(),
    })
}

/// Dispatches on the tract: Krasner (bounds or exact), Sign (exact),
/// Tropical (bounds) and the fields (exact). Other tracts with a dependence
/// procedure get `[r_col, n]`.
pub fn r_mat(a: &TractMatrix, mode: Mode, guards: &Guards) -> Result<MatroidalRank> {
    match a.tract() {
        TractId::Krasner => r_mat_krasner(a, mode, guards),
        TractId::Tropical => r_mat_tropical(a, guards),
        TractId::Sign => {
            let lower = r_col(a)?;
            let (rank, witness) = r_mat_sign(a, guards)?;
            Ok(MatroidalRank {
                value: RankValue::Exact(rank),
                lower,
                witness,
                upper_source: "oriented matroid search".into(),
            })
        }
        t if t.is_field() => r_mat_field(a, guards),
        TractId::Phase => Err(Error::UnsupportedTract {
            tract: "phase".into(),
            operation: "matroidal rank",
        }),
        t => {
            // Every vector is a covector of the free matroid.
            let lower = r_col(a)?;
            let n = a.ncols();
            let value = if lower.rank == n {
                RankValue::Exact(n)
            } else {
                RankValue::Bounds {
                    lower: lower.rank,
                    upper: n,
                }
            };
            Ok(MatroidalRank {
                value,
                lower,
                witness: free_fmatroid(t, n)?,
                upper_source: "free matroid".into(),
            })
        }
    }
}

fn free_fmatroid(t: &TractId, n: usize) -> Result<FMatroid> {
    let units = (0..n)
        .map(|i| {
            TractVector::new_unchecked(
                t.clone(),
                (0..n).map(|j| if i == j { t.one() } else { t.zero() }).collect(),
            )
        })
        .collect();
    FMatroid::new(t.clone(), uniform(n, n)?, Vec::new(), units)
}

/// Whether every row of `a` is a covector of `m`.
pub fn rows_are_covectors(a: &TractMatrix, m: &FMatroid) -> Result<bool> {
    for r in a.row_vectors() {
        if !m.is_covector(&r)? {
            return Ok(false);
        }
    }
    Ok(true)
}
