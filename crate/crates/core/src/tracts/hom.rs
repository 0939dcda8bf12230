//! Homomorphisms between catalog tracts.

use std::collections::BTreeMap;

use num_rational::BigRational;
use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use super::{Direction, TractElement, TractId};
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum HomKind {
    FqToKrasner(u8),
    RationalToKrasner,
    RationalToSign,
    GaussianRationalToPhase,
    RationalToTriangleAbs,
    /// Degree map from Laurent polynomials over the rationals; applied
    /// through [`TractHom::apply_laurent`].
    LaurentDegreeToTropical,
    QuotientMap {
        q: u8,
        subgroup: Vec<u8>,
    },
}

/// A tract homomorphism `source -> target`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct TractHom {
    source: Option<TractId>,
    target: TractId,
    kind: HomKind,
}

impl TractHom {
    pub fn new(kind: HomKind) -> Result<TractHom> {
        let (source, target) = match &kind {
            HomKind::FqToKrasner(q) => (Some(TractId::finite_field(*q)?), TractId::Krasner),
            HomKind::RationalToKrasner => (Some(TractId::Rational), TractId::Krasner),
            HomKind::RationalToSign => (Some(TractId::Rational), TractId::Sign),
            HomKind::GaussianRationalToPhase => (Some(TractId::GaussianRational), TractId::Phase),
            HomKind::RationalToTriangleAbs => (Some(TractId::Rational), TractId::Triangle),
            HomKind::LaurentDegreeToTropical => (None, TractId::Tropical),
            HomKind::QuotientMap { q, subgroup } => {
                (Some(TractId::finite_field(*q)?), TractId::quotient(*q, subgroup)?)
            }
        };
        Ok(TractHom { source, target, kind })
    }

    /// The natural map from `GF(q)` onto a matrix tract: `GF(q) -> K` for
    /// Krasner targets, the quotient map for quotient targets.
    pub fn from_finite_field(q: u8, target: &TractId) -> Result<TractHom> {
        match target {
            TractId::Krasner => TractHom::new(HomKind::FqToKrasner(q)),
            TractId::Quotient { q: tq, subgroup } if *tq == q => TractHom::new(HomKind::QuotientMap {
                q,
                subgroup: subgroup.clone(),
            }),
            TractId::FiniteField(tq) if *tq == q => TractHom::new(HomKind::QuotientMap { q, subgroup: vec![1] }),
            other => Err(Error::InvalidParameter(format!(
                "no natural homomorphism GF({q}) -> {other}"
            ))),
        }
    }

    /// `None` for the Laurent degree map, whose source is not a catalog tract.
    pub fn source(&self) -> Option<&TractId> {
        self.source.as_ref()
    }

    pub fn target(&self) -> &TractId {
        &self.target
    }

    pub fn kind(&self) -> &HomKind {
        &self.kind
    }

    pub fn apply(&self, a: &TractElement) -> Result<TractElement> {
        use TractElement as E;
        let Some(source) = &self.source else {
            return Err(Error::TagMismatch {
                tract: "laurent".into(),
                element: format!("{a:?}"),
            });
        };
        source.check(a)?;
        Ok(match (&self.kind, a) {
            (HomKind::FqToKrasner(_), E::Finite(x)) => E::Krasner(*x != 0),
            (HomKind::RationalToKrasner, E::Rational(x)) => E::Krasner(!x.is_zero()),
            (HomKind::RationalToSign, E::Rational(x)) => E::Sign(if x.is_zero() {
                0
            } else if x.is_positive() {
                1
            } else {
                -1
            }),
            (HomKind::GaussianRationalToPhase, E::Gaussian(z)) => E::Phase(Direction::from_rationals(&z.re, &z.im)),
            (HomKind::RationalToTriangleAbs, E::Rational(x)) => E::Triangle(x.abs()),
            (HomKind::QuotientMap { .. }, E::Finite(x)) => self.target.coset_of(*x)?,
            _ => unreachable!("source membership checked"),
        })
    }

    /// Applies the degree map to a Laurent polynomial.
    pub fn apply_laurent(&self, p: &LaurentPoly) -> Result<TractElement> {
        match self.kind {
            HomKind::LaurentDegreeToTropical => Ok(TractElement::Tropical(
                p.degree().map(|d| BigRational::from_integer(d.into())),
            )),
            _ => Err(Error::InvalidParameter(format!(
                "{:?} does not act on Laurent polynomials",
                self.kind
            ))),
        }
    }
}

/// A Laurent polynomial over the rationals, stored as exponent -> coefficient.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct LaurentPoly {
    terms: BTreeMap<i64, BigRational>,
}

impl LaurentPoly {
    pub fn new<I: IntoIterator<Item = (i64, BigRational)>>(terms: I) -> Self {
        let mut p = LaurentPoly::default();
        for (e, c) in terms {
            p.add_term(e, c);
        }
        p
    }

    pub fn zero() -> Self {
        LaurentPoly::default()
    }

    fn add_term(&mut self, e: i64, c: BigRational) {
        let entry = self.terms.entry(e).or_insert_with(BigRational::zero);
        *entry += c;
        if entry.is_zero() {
            self.terms.remove(&e);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Top exponent, `None` for the zero polynomial.
    pub fn degree(&self) -> Option<i64> {
        self.terms.keys().next_back().copied()
    }

    pub fn leading_coefficient(&self) -> Option<&BigRational> {
        self.terms.values().next_back()
    }

    pub fn add(&self, o: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        for (e, c) in &o.terms {
            out.add_term(*e, c.clone());
        }
        out
    }

    pub fn mul(&self, o: &LaurentPoly) -> LaurentPoly {
        let mut out = LaurentPoly::zero();
        for (e1, c1) in &self.terms {
            for (e2, c2) in &o.terms {
                out.add_term(e1 + e2, c1 * c2);
            }
        }
        out
    }

    pub fn scale(&self, c: &BigRational) -> LaurentPoly {
        LaurentPoly::new(self.terms.iter().map(|(e, x)| (*e, x * c)))
    }
}
