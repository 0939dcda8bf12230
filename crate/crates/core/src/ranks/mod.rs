//! Rank functions over tracts, each with witnesses.

mod basic;
pub(crate) mod fq;
mod fullrank;
mod matroidal;
mod patterns;
mod relative;


use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

pub use basic::{r_col, r_det, r_row, r_tri, ColumnRank, DetRank, TriRank};
pub use fullrank::{
    camion_hoffman, solve_homogeneous, square_fullrank_quotient, verify_phase_scaling, Dominance, FullRank,
    FullRankCertificate, FullRankReport,
};
pub use matroidal::{
    r_mat, r_mat_field, r_mat_krasner, r_mat_sign, r_mat_tropical, rows_are_covectors, sign_circuit_options,
    MatroidalRank, Mode,
};
pub use patterns::{is_alt_covector, sigma};
pub use relative::sign_entries;
pub use relative::{r_phi_mat, r_preimage, PhiMatRank, PreimageRank};

use crate::config::Guards;
use crate::error::{Error, Result};
use crate::linalg::TractMatrix;
use crate::tracts::{HomKind, TractHom, TractId};

/// An exact rank or a closed interval containing it.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum RankValue {
    Exact(usize),
    Bounds { lower: usize, upper: usize },
}

impl RankValue {
    pub fn lower(&self) -> usize {
        match *self {
            RankValue::Exact(r) => r,
            RankValue::Bounds { lower, .. } => lower,
        }
    }

    pub fn upper(&self) -> usize {
        match *self {
            RankValue::Exact(r) => r,
            RankValue::Bounds { upper, .. } => upper,
        }
    }

    pub fn exact(&self) -> Option<usize> {
        match *self {
            RankValue::Exact(r) => Some(r),
            RankValue::Bounds { .. } => None,
        }
    }
}

impl fmt::Display for RankValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RankValue::Exact(r) => write!(f, "{r}"),
            RankValue::Bounds { lower, upper } => write!(f, ">= {lower}, <= {upper}"),
        }
    }
}

/// Where lifts live for `phimat` and `preimage`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum LiftSource {
    Field(u8),
    Rational,
}

/// A rank that can be requested in a report.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum RankName {
    Col,
    Row,
    Det,
    Tri,
    Mat,
    PhiMat(u8),
    Preimage(LiftSource),
}

impl FromStr for RankName {
    type Err = Error;

    fn from_str(s: &str) -> Result<RankName> {
        let s = s.trim();
        let field = |t: &str| -> Result<u8> {
            t.strip_prefix("fp")
                .or_else(|| t.strip_prefix("fq"))
                .or_else(|| t.strip_prefix("gf"))
                .map(|x| x.trim_start_matches(':'))
                .and_then(|x| x.parse().ok())
                .ok_or_else(|| Error::InvalidParameter(format!("bad field `{t}` in rank `{s}`")))
        };
        Ok(match s.split_once(':') {
            None => match s {
                "col" => RankName::Col,
                "row" => RankName::Row,
                "det" => RankName::Det,
                "tri" => RankName::Tri,
                "mat" => RankName::Mat,
                _ => return Err(Error::InvalidParameter(format!("unknown rank `{s}`"))),
            },
            Some(("phimat", t)) => RankName::PhiMat(field(t)?),
            Some(("preimage", "rational" | "q")) => RankName::Preimage(LiftSource::Rational),
            Some(("preimage", t)) => RankName::Preimage(LiftSource::Field(field(t)?)),
            _ => return Err(Error::InvalidParameter(format!("unknown rank `{s}`"))),
        })
    }
}

impl fmt::Display for RankName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RankName::Col => f.write_str("col"),
            RankName::Row => f.write_str("row"),
            RankName::Det => f.write_str("det"),
            RankName::Tri => f.write_str("tri"),
            RankName::Mat => f.write_str("mat"),
            RankName::PhiMat(q) => write!(f, "phimat:fp{q}"),
            RankName::Preimage(LiftSource::Field(q)) => write!(f, "preimage:fp{q}"),
            RankName::Preimage(LiftSource::Rational) => f.write_str("preimage:rational"),
        }
    }
}

/// Parses a comma separated rank list.
pub fn parse_rank_list(s: &str) -> Result<Vec<RankName>> {
    s.split(',').filter(|x| !x.trim().is_empty()).map(str::parse).collect()
}

/// Witness payloads; indices are zero-based.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Witness {
    Columns {
        independent: Vec<usize>,
        dependent: Option<Vec<usize>>,
        coefficients: Option<Vec<String>>,
    },
    Minor {
        rows: Vec<usize>,
        cols: Vec<usize>,
    },
    Triangular {
        rows: Vec<usize>,
        cols: Vec<usize>,
    },
    Matroid {
        lower_columns: Vec<usize>,
        rank: usize,
        circuits: Vec<Vec<usize>>,
        upper_source: String,
    },
    Echelon {
        q: u8,
        rows: Vec<Vec<u8>>,
    },
    Lift {
        tract: String,
        rows: Vec<Vec<String>>,
        lower_source: String,
        upper_source: String,
    },
}

impl Witness {
    fn columns(c: &ColumnRank) -> Witness {
        Witness::Columns {
            independent: c.independent.clone(),
            dependent: c.dependent.as_ref().map(|(s, _)| s.clone()),
            coefficients: c.dependent.as_ref().map(|(_, cert)| {
                let t = cert.coefficients.tract();
                cert.coefficients
                    .entries()
                    .iter()
                    .map(|e| t.format_element(e))
                    .collect()
            }),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RankReport {
    pub tract: String,
    pub requested: Vec<String>,
    pub values: BTreeMap<String, RankValue>,
    pub witnesses: BTreeMap<String, Witness>,
    /// Whether the reported values are compatible with
    /// `preimage >= phimat >= mat >= col`.
    pub chain_consistent: bool,
}

#[derive(Debug, Clone, Default)]
pub struct RankOptions {
    pub mode: Mode,
    pub guards: Guards,
    pub seed: u64,
}

fn lift_hom(source: LiftSource, target: &TractId) -> Result<TractHom> {
    match (source, target) {
        (LiftSource::Field(q), t) => TractHom::from_finite_field(q, t),
        (LiftSource::Rational, TractId::Krasner) => TractHom::new(HomKind::RationalToKrasner),
        (LiftSource::Rational, TractId::Sign) => TractHom::new(HomKind::RationalToSign),
        (LiftSource::Rational, t) => Err(Error::UnsupportedTract {
            tract: t.to_string(),
            operation: "rational lifts",
        }),
    }
}

/// Computes the requested ranks of `a` with witnesses.
pub fn compute_report(a: &TractMatrix, names: &[RankName], opts: &RankOptions) -> Result<RankReport> {
    let mut values = BTreeMap::new();
    let mut witnesses = BTreeMap::new();
    for name in names {
        let key = name.to_string();
        let (value, witness) = match *name {
            RankName::Col | RankName::Row => {
                let c = if *name == RankName::Col { r_col(a)? } else { r_row(a)? };
                (RankValue::Exact(c.rank), Witness::columns(&c))
            }
            RankName::Det => {
                let d = r_det(a, &opts.guards)?;
                (
                    RankValue::Exact(d.rank),
                    Witness::Minor {
                        rows: d.rows,
                        cols: d.cols,
                    },
                )
            }
            RankName::Tri => {
                let t = r_tri(a)?;
                (
                    RankValue::Exact(t.rank),
                    Witness::Triangular {
                        rows: t.rows,
                        cols: t.cols,
                    },
                )
            }
            RankName::Mat => {
                let m = r_mat(a, opts.mode, &opts.guards)?;
                let w = Witness::Matroid {
                    lower_columns: m.lower.independent.clone(),
                    rank: m.witness.rank(),
                    circuits: m.witness.underlying().circuit_lists(),
                    upper_source: m.upper_source.clone(),
                };
                (m.value, w)
            }
            RankName::PhiMat(q) => {
                let p = r_phi_mat(&TractHom::from_finite_field(q, a.tract())?, a, &opts.guards)?;
                (RankValue::Exact(p.rank), Witness::Echelon { q, rows: p.witness })
            }
            RankName::Preimage(source) => {
                let h = lift_hom(source, a.tract())?;
                let p = r_preimage(&h, a, &opts.guards, opts.seed)?;
                let t = p.lift.tract().clone();
                let w = Witness::Lift {
                    tract: t.to_string(),
                    rows: p
                        .lift
                        .grid()
                        .iter()
                        .map(|r| r.iter().map(|e| t.format_element(e)).collect())
                        .collect(),
                    lower_source: p.lower_source,
                    upper_source: p.upper_source,
                };
                (p.value, w)
            }
        };
        values.insert(key.clone(), value);
        witnesses.insert(key, witness);
    }
    let parsed: Vec<(RankName, RankValue)> = names.iter().map(|n| (*n, values[&n.to_string()])).collect();
    Ok(RankReport {
        tract: a.tract().to_string(),
        requested: names.iter().map(ToString::to_string).collect(),
        values,
        witnesses,
        chain_consistent: chain_consistent(&parsed),
    })
}

fn chain_level(n: &RankName) -> Option<(u8, Option<LiftSource>)> {
    match n {
        RankName::Col => Some((0, None)),
        RankName::Mat => Some((1, None)),
        RankName::PhiMat(q) => Some((2, Some(LiftSource::Field(*q)))),
        RankName::Preimage(s) => Some((3, Some(*s))),
        _ => None,
    }
}

/// Checks `upper(X) >= lower(Y)` for every pair `X >= Y` in the chain; the
/// two relative ranks are compared only for the same lift source.
pub fn chain_consistent(values: &[(RankName, RankValue)]) -> bool {
    values.iter().all(|(x, vx)| {
        values.iter().all(|(y, vy)| match (chain_level(x), chain_level(y)) {
            (Some((lx, sx)), Some((ly, sy))) if lx > ly => {
                let comparable = ly <= 1 || sx == sy;
                !comparable || vx.upper() >= vy.lower()
            }
            _ => true,
        })
    })
}
