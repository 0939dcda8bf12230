//! Matroids over tracts: one normalized signature per circuit and cocircuit.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::config::Guards;
use crate::error::{guard, Error, Result};
use crate::linalg::{field, orthogonal, TractMatrix, TractVector};
use crate::matroids::{elements, full, linear_matroid_guarded, Matroid, Subset};
use crate::tracts::{Elements, TractElement, TractHom, TractId};

/// A strong matroid over a tract.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FMatroid {
    tract: TractId,
    underlying: Matroid,
    circuit_sigs: BTreeMap<Subset, TractVector>,
    cocircuit_sigs: BTreeMap<Subset, TractVector>,
}

/// A failed clause of the F-matroid axioms.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub enum Violation {
    UnderlyingAxioms,
    WrongTract { support: Subset },
    WrongLength { support: Subset },
    SupportNotCircuit { support: Subset },
    SupportNotCocircuit { support: Subset },
    MissingCircuit { support: Subset },
    MissingCocircuit { support: Subset },
    NotOrthogonal { circuit: Subset, cocircuit: Subset },
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }
}

fn keyed(tract: &TractId, n: usize, reps: Vec<TractVector>) -> Result<BTreeMap<Subset, TractVector>> {
    let mut out = BTreeMap::new();
    for v in reps {
        if v.tract() != tract {
            return Err(Error::TractMismatch(tract.to_string(), v.tract().to_string()));
        }
        if v.len() != n {
            return Err(Error::Dimension(format!("signature of length {} on [{n}]", v.len())));
        }
        if v.is_zero() {
            return Err(Error::InvalidParameter("zero signature".into()));
        }
        let v = v.normalized()?;
        let key = v.support_mask();
        if let Some(prev) = out.insert(key, v.clone()) {
            if prev != v {
                return Err(Error::InvalidParameter(format!(
                    "two signatures {prev} and {v} share a support"
                )));
            }
        }
    }
    Ok(out)
}

impl FMatroid {
    /// Stores the given representatives, normalized so the first nonzero
    /// entry is one. Validity is checked separately by [`FMatroid::validate`].
    pub fn new(
        tract: TractId,
        underlying: Matroid,
        circuits: Vec<TractVector>,
        cocircuits: Vec<TractVector>,
    ) -> Result<FMatroid> {
        let n = underlying.n();
        Ok(FMatroid {
            circuit_sigs: keyed(&tract, n, circuits)?,
            cocircuit_sigs: keyed(&tract, n, cocircuits)?,
            tract,
            underlying,
        })
    }

    /// Every signature entry equal to one. Valid over idempotent tracts
    /// where `1 + 1` is null (Krasner, Tropical).
    pub fn tautological(tract: &TractId, m: &Matroid) -> Result<FMatroid> {
        if !matches!(tract, TractId::Krasner | TractId::Tropical) {
            return Err(Error::UnsupportedTract {
                tract: tract.to_string(),
                operation: "tautological F-matroid",
            });
        }
        let sig = |s: Subset| {
            TractVector::new_unchecked(
                tract.clone(),
                (0..m.n())
                    .map(|i| if s >> i & 1 == 1 { tract.one() } else { tract.zero() })
                    .collect(),
            )
        };
        Ok(FMatroid {
            tract: tract.clone(),
            underlying: m.clone(),
            circuit_sigs: m.circuits().iter().map(|&c| (c, sig(c))).collect(),
            cocircuit_sigs: m.cocircuits().into_iter().map(|c| (c, sig(c))).collect(),
        })
    }

    pub fn tract(&self) -> &TractId {
        &self.tract
    }

    pub fn underlying(&self) -> &Matroid {
        &self.underlying
    }

    pub fn n(&self) -> usize {
        self.underlying.n()
    }

    pub fn rank(&self) -> usize {
        self.underlying.rank()
    }

    pub fn circuit_signatures(&self) -> impl Iterator<Item = &TractVector> {
        self.circuit_sigs.values()
    }

    pub fn cocircuit_signatures(&self) -> impl Iterator<Item = &TractVector> {
        self.cocircuit_sigs.values()
    }

    pub fn circuit_signature(&self, support: Subset) -> Option<&TractVector> {
        self.circuit_sigs.get(&support)
    }

    pub fn cocircuit_signature(&self, support: Subset) -> Option<&TractVector> {
        self.cocircuit_sigs.get(&support)
    }

    /// Checks supports, completeness and every circuit/cocircuit orthogonality.
    pub fn validate(&self) -> ValidationReport {
        let mut violations = Vec::new();
        let m = &self.underlying;
        if !m.check_axioms() {
            violations.push(Violation::UnderlyingAxioms);
        }
        let cocircuits = m.cocircuits();
        let sides = [
            (&self.circuit_sigs, m.circuits().to_vec(), true),
            (&self.cocircuit_sigs, cocircuits, false),
        ];
        for (sigs, expected, is_circuit) in &sides {
            for (&support, v) in sigs.iter() {
                if v.tract() != &self.tract {
                    violations.push(Violation::WrongTract { support });
                }
                if v.len() != m.n() {
                    violations.push(Violation::WrongLength { support });
                }
                if !expected.contains(&support) {
                    violations.push(if *is_circuit {
                        Violation::SupportNotCircuit { support }
                    } else {
                        Violation::SupportNotCocircuit { support }
                    });
                }
            }
            for &support in expected {
                if !sigs.contains_key(&support) {
                    violations.push(if *is_circuit {
                        Violation::MissingCircuit { support }
                    } else {
                        Violation::MissingCocircuit { support }
                    });
                }
            }
        }
        for (&c, x) in &self.circuit_sigs {
            for (&d, y) in &self.cocircuit_sigs {
                if !orthogonal(x, y).unwrap_or(false) {
                    violations.push(Violation::NotOrthogonal {
                        circuit: c,
                        cocircuit: d,
                    });
                }
            }
        }
        ValidationReport { violations }
    }

    pub fn is_valid(&self) -> bool {
        self.validate().is_valid()
    }

    /// Interchanges circuits and cocircuits.
    pub fn dual(&self) -> FMatroid {
        FMatroid {
            tract: self.tract.clone(),
            underlying: self.underlying.dual(),
            circuit_sigs: self.cocircuit_sigs.clone(),
            cocircuit_sigs: self.circuit_sigs.clone(),
        }
    }

    fn check_vector(&self, x: &TractVector) -> Result<()> {
        if x.tract() != &self.tract {
            return Err(Error::TractMismatch(self.tract.to_string(), x.tract().to_string()));
        }
        if x.len() != self.n() {
            return Err(Error::Dimension(format!(
                "vector of length {} on [{}]",
                x.len(),
                self.n()
            )));
        }
        Ok(())
    }

    /// Whether `x` is orthogonal to every circuit signature.
    pub fn is_covector(&self, x: &TractVector) -> Result<bool> {
        self.check_vector(x)?;
        for c in self.circuit_sigs.values() {
            if !orthogonal(x, c)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Whether `x` is orthogonal to every cocircuit signature.
    pub fn is_vector(&self, x: &TractVector) -> Result<bool> {
        self.check_vector(x)?;
        for c in self.cocircuit_sigs.values() {
            if !orthogonal(x, c)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Every covector, for tracts with finitely many elements.
    pub fn covectors(&self, limit: usize) -> Result<Vec<TractVector>> {
        let Elements::Finite(elems) = self.tract.elements() else {
            return Err(Error::UnsupportedTract {
                tract: self.tract.to_string(),
                operation: "covector enumeration",
            });
        };
        let n = self.n();
        guard("covector enumeration", limit, n)?;
        let total = elems.len().pow(n as u32);
        let mut out = Vec::new();
        for code in 0..total {
            let mut rest = code;
            let mut entries = Vec::with_capacity(n);
            for _ in 0..n {
                entries.push(elems[rest % elems.len()].clone());
                rest /= elems.len();
            }
            let x = TractVector::new_unchecked(self.tract.clone(), entries);
            if self.is_covector(&x)? {
                out.push(x);
            }
        }
        Ok(out)
    }
}

/// Applies `h` to every signature; the underlying matroid is unchanged.
pub fn pushforward(h: &TractHom, m: &FMatroid) -> Result<FMatroid> {
    match h.source() {
        Some(src) if src == m.tract() => {}
        Some(src) => return Err(Error::TractMismatch(src.to_string(), m.tract().to_string())),
        None => {
            return Err(Error::UnsupportedTract {
                tract: m.tract().to_string(),
                operation: "pushforward along a polynomial valuation",
            })
        }
    }
    let map = |sigs: &BTreeMap<Subset, TractVector>| -> Result<BTreeMap<Subset, TractVector>> {
        sigs.iter().map(|(&k, v)| Ok((k, v.map(h)?.normalized()?))).collect()
    };
    Ok(FMatroid {
        tract: h.target().clone(),
        underlying: m.underlying.clone(),
        circuit_sigs: map(&m.circuit_sigs)?,
        cocircuit_sigs: map(&m.cocircuit_sigs)?,
    })
}

/// Matroid of the row space of a matrix over a field tract.
pub fn from_field_matrix(a: &TractMatrix) -> Result<FMatroid> {
    from_field_matrix_guarded(a, Guards::default().field_columns)
}

pub fn from_field_matrix_guarded(a: &TractMatrix, limit: usize) -> Result<FMatroid> {
    let t = a.tract().clone();
    let underlying = linear_matroid_guarded(a, limit)?;
    let n = a.ncols();
    let mut circuits = Vec::new();
    for &c in underlying.circuits() {
        let cols = elements(c);
        let sub = a.submatrix(&(0..a.nrows()).collect::<Vec<_>>(), &cols)?;
        let k = field::kernel(&sub)?
            .into_iter()
            .next()
            .ok_or_else(|| Error::Internal("circuit with trivial kernel".into()))?;
        let mut x = vec![t.zero(); n];
        for (slot, &j) in cols.iter().enumerate() {
            x[j] = k.get(slot).clone();
        }
        circuits.push(TractVector::new_unchecked(t.clone(), x));
    }
    let basis = field::row_space_basis(a)?;
    let mut cocircuits = Vec::new();
    for d in underlying.cocircuits() {
        // A combination y^T B vanishing off the cocircuit.
        let zero_cols = elements(full(n) & !d);
        let system: Vec<Vec<TractElement>> = zero_cols
            .iter()
            .map(|&j| basis.iter().map(|b| b.get(j).clone()).collect())
            .collect();
        let y = if system.is_empty() {
            let mut y = vec![t.zero(); basis.len()];
            y[0] = t.one();
            y
        } else {
            let sys = TractMatrix::new(t.clone(), system)?;
            field::kernel(&sys)?
                .into_iter()
                .next()
                .ok_or_else(|| Error::Internal("cocircuit without row-space vector".into()))?
                .into_entries()
        };
        cocircuits.push(field::combination(&t, &y, &basis)?);
    }
    let m = FMatroid::new(t, underlying, circuits, cocircuits)?;
    let sorted = |mut v: Vec<Subset>| {
        v.sort_unstable();
        v
    };
    let supports_match = m
        .circuit_sigs
        .keys()
        .copied()
        .eq(sorted(m.underlying.circuits().to_vec()))
        && m.cocircuit_sigs.keys().copied().eq(sorted(m.underlying.cocircuits()));
    if !supports_match {
        return Err(Error::Internal("signature supports differ from the matroid".into()));
    }
    Ok(m)
}

fn same_len(x: &TractVector, y: &TractVector, tract: &TractId) -> Result<()> {
    if x.tract() != tract || y.tract() != tract {
        return Err(Error::UnsupportedTract {
            tract: x.tract().to_string(),
            operation: "composition",
        });
    }
    if x.len() != y.len() {
        return Err(Error::Dimension(format!("lengths {} and {}", x.len(), y.len())));
    }
    Ok(())
}

/// `(x o y)_i = x_i` if `x_i` is nonzero, else `y_i`.
pub fn sign_compose(x: &TractVector, y: &TractVector) -> Result<TractVector> {
    same_len(x, y, &TractId::Sign)?;
    let entries = x
        .entries()
        .iter()
        .zip(y.entries())
        .map(|(a, b)| {
            if *a == TractElement::Sign(0) {
                b.clone()
            } else {
                a.clone()
            }
        })
        .collect();
    Ok(TractVector::new_unchecked(TractId::Sign, entries))
}

/// Coordinatewise maximum.
pub fn tropical_compose(x: &TractVector, y: &TractVector) -> Result<TractVector> {
    same_len(x, y, &TractId::Tropical)?;
    let entries = x
        .entries()
        .iter()
        .zip(y.entries())
        .map(|(a, b)| match (a, b) {
            (TractElement::Tropical(p), TractElement::Tropical(q)) => TractElement::Tropical(p.clone().max(q.clone())),
            _ => unreachable!("checked by the tract"),
        })
        .collect();
    Ok(TractVector::new_unchecked(TractId::Tropical, entries))
}

fn conformal(x: &TractVector, y: &TractVector) -> bool {
    x.entries().iter().zip(y.entries()).all(|(a, b)| match (a, b) {
        (TractElement::Sign(p), TractElement::Sign(q)) => p * q != -1,
        _ => true,
    })
}

/// Closure of the covector set under composition. Sign covectors are
/// enumerated (conformal pairs only); Tropical uses the supplied samples,
/// which must themselves be covectors.
pub fn covector_closure_check(m: &FMatroid, samples: &[TractVector]) -> Result<bool> {
    match m.tract() {
        TractId::Sign => {
            let cov = m.covectors(10)?;
            for x in &cov {
                for y in &cov {
                    if conformal(x, y) && !m.is_covector(&sign_compose(x, y)?)? {
                        return Ok(false);
                    }
                }
            }
            Ok(true)
        }
        TractId::Tropical => {
            for x in samples {
                if !m.is_covector(x)? {
                    return Err(Error::Precondition(format!("sample {x} is not a covector")));
                }
            }
            for x in samples {
                for y in samples {
                    if !m.is_covector(&tropical_compose(x, y)?)? {
                        return Ok(false);
                    }
                }
            }
            Ok(true)
        }
        other => Err(Error::UnsupportedTract {
            tract: other.to_string(),
            operation: "covector closure",
        }),
    }
}
