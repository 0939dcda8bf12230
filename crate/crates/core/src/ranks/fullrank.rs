use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::config::Guards;
use crate::error::{guard, Error, Result};
use crate::linalg::{orthogonal, verify_dependence, DependenceCertificate, TractMatrix, TractVector};
use crate::lp::{LinearProgram, Relation, Q};
use crate::tracts::{Direction, Elements, TractElement, TractId};

use super::basic::{r_col, r_det};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum FullRank {
    True,
    False,
    Unknown,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum FullRankCertificate {
    /// All columns independent; for the phase tract, independent already
    /// after forgetting phases.
    Independent,
    ColumnDependence {
        certificate: DependenceCertificate,
    },
    /// Row scaling under which every column sum is null.
    RowScaling {
        certificate: DependenceCertificate,
    },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FullRankReport {
    pub answer: FullRank,
    pub certificate: Option<FullRankCertificate>,
}

/// Largest size for the discretized phase search.
const PHASE_SEARCH_LIMIT: usize = 4;

/// Whether every lift of the square matrix `a` is nonsingular.
pub fn square_fullrank_quotient(a: &TractMatrix, guards: &Guards) -> Result<FullRankReport> {
    let n = a.ncols();
    if a.nrows() != n {
        return Err(Error::Dimension(format!("{}x{} is not square", a.nrows(), n)));
    }
    match a.tract() {
        TractId::Phase => return phase_fullrank(a),
        TractId::Krasner | TractId::Quotient { .. } | TractId::Sign | TractId::Triangle | TractId::Tropical => {}
        t => {
            return Err(Error::UnsupportedTract {
                tract: t.to_string(),
                operation: "square full-rank test",
            })
        }
    }
    let col = r_col(a)?;
    let full = col.rank == n;
    if matches!(a.tract(), TractId::Sign | TractId::Tropical) && n <= guards.det {
        let det = r_det(a, guards)?;
        if (det.rank == n) != full {
            return Err(Error::Internal(format!(
                "column rank {} and determinantal rank {} disagree on full rank",
                col.rank, det.rank
            )));
        }
    }
    let certificate = match col.dependent {
        _ if full => FullRankCertificate::Independent,
        Some((_, c)) => FullRankCertificate::ColumnDependence { certificate: c },
        None => return Err(Error::Internal("rank deficient without a dependence".into())),
    };
    Ok(FullRankReport {
        answer: if full { FullRank::True } else { FullRank::False },
        certificate: Some(certificate),
    })
}

/// Checks a phase row-scaling certificate: every column of the scaled matrix is null.
pub fn verify_phase_scaling(a: &TractMatrix, scaling: &TractVector) -> Result<bool> {
    verify_dependence(
        &a.row_vectors(),
        &DependenceCertificate {
            coefficients: scaling.clone(),
        },
    )
}

fn phase_fullrank(a: &TractMatrix) -> Result<FullRankReport> {
    let n = a.ncols();
    let pattern = TractMatrix::new(
        TractId::Krasner,
        a.grid()
            .iter()
            .map(|r| r.iter().map(|e| TractElement::Krasner(!a.tract().is_zero(e))).collect())
            .collect(),
    )?;
    if r_col(&pattern)?.rank == n {
        return Ok(FullRankReport {
            answer: FullRank::True,
            certificate: Some(FullRankCertificate::Independent),
        });
    }
    if n <= PHASE_SEARCH_LIMIT {
        if let Some(c) = phase_scaling_search(a)? {
            return Ok(FullRankReport {
                answer: FullRank::False,
                certificate: Some(FullRankCertificate::RowScaling { certificate: c }),
            });
        }
    }
    Ok(FullRankReport {
        answer: FullRank::Unknown,
        certificate: None,
    })
}

/// Tries row scalings drawn from the eight compass directions.
fn phase_scaling_search(a: &TractMatrix) -> Result<Option<DependenceCertificate>> {
    let m = a.nrows();
    let mut choices = vec![TractElement::Phase(None)];
    for (x, y) in [(1, 0), (1, 1), (0, 1), (-1, 1), (-1, 0), (-1, -1), (0, -1), (1, -1)] {
        choices.push(TractElement::Phase(Direction::from_ints(x, y)));
    }
    let rows = a.row_vectors();
    let mut digits = vec![0usize; m];
    loop {
        let mut pos = m;
        let mut done = true;
        while pos > 0 {
            pos -= 1;
            digits[pos] += 1;
            if digits[pos] < choices.len() {
                done = false;
                break;
            }
            digits[pos] = 0;
        }
        if done {
            return Ok(None);
        }
        // First nonzero coefficient is 1.
        if digits.iter().find(|&&d| d != 0) != Some(&1) {
            continue;
        }
        let c = TractVector::new(TractId::Phase, digits.iter().map(|&d| choices[d].clone()).collect())?;
        let cert = DependenceCertificate { coefficients: c };
        if verify_dependence(&rows, &cert)? {
            return Ok(Some(cert));
        }
    }
}

/// A permutation and column scaling making `P A D` strictly diagonally dominant.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Dominance {
    /// Row `i` of `P A` is row `perm[i]` of `A`.
    pub perm: Vec<usize>,
    pub diagonal: Vec<Q>,
}

fn magnitudes(a: &TractMatrix) -> Result<Vec<Vec<Q>>> {
    a.grid()
        .iter()
        .map(|r| {
            r.iter()
                .map(|e| match e {
                    TractElement::Triangle(x) => Ok(x.clone()),
                    other => Err(Error::TagMismatch {
                        tract: "triangle".into(),
                        element: format!("{other:?}"),
                    }),
                })
                .collect()
        })
        .collect()
}

fn next_permutation(p: &mut [usize]) -> bool {
    let Some(i) = (1..p.len()).rev().find(|&i| p[i - 1] < p[i]) else {
        return false;
    };
    let j = (i..p.len()).rev().find(|&j| p[j] > p[i - 1]).unwrap();
    p.swap(i - 1, j);
    p[i..].reverse();
    true
}

/// Searches permutations in lexicographic order for a diagonal scaling with
/// `B_ii d_i - sum_{j != i} B_ij d_j >= 1`, `B = P A`.
pub fn camion_hoffman(a: &TractMatrix, guards: &Guards) -> Result<Option<Dominance>> {
    if a.tract() != &TractId::Triangle {
        return Err(Error::UnsupportedTract {
            tract: a.tract().to_string(),
            operation: "diagonal dominance search",
        });
    }
    let n = a.ncols();
    if a.nrows() != n {
        return Err(Error::Dimension(format!("{}x{} is not square", a.nrows(), n)));
    }
    guard("permutations", guards.permutations, n)?;
    let b = magnitudes(a)?;
    let mut perm: Vec<usize> = (0..n).collect();
    loop {
        if perm.iter().enumerate().all(|(i, &p)| !b[p][i].is_zero()) {
            let mut lp = LinearProgram::new(n);
            for (i, &p) in perm.iter().enumerate() {
                let coeffs = (0..n)
                    .map(|j| if j == i { b[p][j].clone() } else { -b[p][j].clone() })
                    .collect();
                lp.add(coeffs, Relation::Ge, Q::one());
            }
            if let Some(d) = lp.feasible_point() {
                return Ok(Some(Dominance { perm, diagonal: d }));
            }
        }
        if !next_permutation(&mut perm) {
            return Ok(None);
        }
    }
}

/// All nonzero solutions `x` with every `sum_j a_ij x_j` null.
pub fn solve_homogeneous(a: &TractMatrix, guards: &Guards) -> Result<Vec<TractVector>> {
    let n = a.ncols();
    guard("solve unknowns", guards.solve_unknowns, n)?;
    let Elements::Finite(all) = a.tract().elements() else {
        return Err(Error::UnsupportedTract {
            tract: a.tract().to_string(),
            operation: "exhaustive homogeneous solve",
        });
    };
    let rows = a.row_vectors();
    let mut out = Vec::new();
    let mut digits = vec![0usize; n];
    loop {
        let mut pos = n;
        let mut done = true;
        while pos > 0 {
            pos -= 1;
            digits[pos] += 1;
            if digits[pos] < all.len() {
                done = false;
                break;
            }
            digits[pos] = 0;
        }
        if done {
            return Ok(out);
        }
        let x = TractVector::new(a.tract().clone(), digits.iter().map(|&d| all[d].clone()).collect())?;
        if x.is_zero() {
            continue;
        }
        let mut ok = true;
        for r in &rows {
            if !orthogonal(r, &x)? {
                ok = false;
                break;
            }
        }
        if ok {
            out.push(x);
        }
    }
}
