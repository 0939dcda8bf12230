//! The catalog of tracts: element representations, multiplication,
//! negation and the null-set membership predicate.

pub mod gf;
mod hom;
mod phase;
mod text;

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub use hom::{HomKind, LaurentPoly, TractHom};
pub use phase::phase_null_geometric;

/// Identifies one of the supported tracts.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum TractId {
    Krasner,
    Sign,
    Phase,
    Triangle,
    Tropical,
    FiniteField(u8),
    Rational,
    GaussianRational,
    RegularPartialField,
    /// `GF(q)^× / H` together with zero; `subgroup` holds the sorted
    /// encodings of the elements of `H`.
    Quotient {
        q: u8,
        subgroup: Vec<u8>,
    },
}

/// An exact rational complex number `re + im·i`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct GaussRat {
    pub re: BigRational,
    pub im: BigRational,
}

impl GaussRat {
    pub fn new(re: BigRational, im: BigRational) -> Self {
        GaussRat { re, im }
    }

    pub fn from_ints(re: i64, im: i64) -> Self {
        GaussRat::new(
            BigRational::from_integer(re.into()),
            BigRational::from_integer(im.into()),
        )
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn add(&self, o: &GaussRat) -> GaussRat {
        GaussRat::new(&self.re + &o.re, &self.im + &o.im)
    }

    pub fn sub(&self, o: &GaussRat) -> GaussRat {
        GaussRat::new(&self.re - &o.re, &self.im - &o.im)
    }

    pub fn mul(&self, o: &GaussRat) -> GaussRat {
        GaussRat::new(&self.re * &o.re - &self.im * &o.im, &self.re * &o.im + &self.im * &o.re)
    }

    pub fn neg(&self) -> GaussRat {
        GaussRat::new(-&self.re, -&self.im)
    }

    pub fn inv(&self) -> GaussRat {
        let norm = &self.re * &self.re + &self.im * &self.im;
        GaussRat::new(&self.re / &norm, -&self.im / &norm)
    }
}

/// A nonzero direction in the plane, stored as a primitive integer pair.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Direction {
    x: BigInt,
    y: BigInt,
}

impl Direction {
    /// Reduces `(x, y)` to its primitive representative. Returns `None`
    /// for the zero pair.
    pub fn new(x: BigInt, y: BigInt) -> Option<Direction> {
        if x.is_zero() && y.is_zero() {
            return None;
        }
        let g = x.gcd(&y);
        Some(Direction { x: x / &g, y: y / &g })
    }

    pub fn from_ints(x: i64, y: i64) -> Option<Direction> {
        Direction::new(x.into(), y.into())
    }

    /// Direction of a nonzero rational vector.
    pub fn from_rationals(x: &BigRational, y: &BigRational) -> Option<Direction> {
        let l = x.denom().lcm(y.denom());
        let xs = (x * BigRational::from_integer(l.clone())).to_integer();
        let ys = (y * BigRational::from_integer(l)).to_integer();
        Direction::new(xs, ys)
    }

    pub fn x(&self) -> &BigInt {
        &self.x
    }

    pub fn y(&self) -> &BigInt {
        &self.y
    }

    fn mul(&self, o: &Direction) -> Direction {
        Direction::new(&self.x * &o.x - &self.y * &o.y, &self.x * &o.y + &self.y * &o.x)
            .expect("product of nonzero directions is nonzero")
    }

    fn inv(&self) -> Direction {
        Direction::new(self.x.clone(), -&self.y).unwrap()
    }
}

/// A value in one of the catalog tracts.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum TractElement {
    Krasner(bool),
    /// `-1`, `0` or `1`.
    Sign(i8),
    /// `None` is zero.
    Phase(Option<Direction>),
    /// A nonnegative magnitude.
    Triangle(BigRational),
    /// Max-plus coordinates; `None` is the tract's zero, `Some(0)` its one.
    Tropical(Option<BigRational>),
    /// Encoded element of `GF(q)`.
    Finite(u8),
    Rational(BigRational),
    Gaussian(GaussRat),
    /// `-1`, `0` or `1`.
    Regular(i8),
    /// Smallest field element of the coset, or 0.
    Quotient(u8),
}

/// Result of [`TractId::elements`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Elements {
    Finite(Vec<TractElement>),
    Infinite,
}

/// A multiset of nonzero tract elements.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FormalSum {
    tract: TractId,
    terms: Vec<TractElement>,
}

fn rat(n: i64) -> BigRational {
    BigRational::from_integer(n.into())
}

impl TractId {
    /// Builds `GF(q)^× / H ∪ {0}` after checking that `subgroup` is a
    /// multiplicative subgroup.
    pub fn quotient(q: u8, subgroup: &[u8]) -> Result<TractId> {
        let f = gf::gf(q)?;
        let mut h: Vec<u8> = subgroup.to_vec();
        h.sort_unstable();
        h.dedup();
        if h.is_empty() || h.contains(&0) || h.iter().any(|&x| x >= q) || !h.contains(&1) {
            return Err(Error::InvalidParameter(format!(
                "{subgroup:?} is not a subgroup of GF({q})^×"
            )));
        }
        for &a in &h {
            if !h.contains(&f.inv(a)) || h.iter().any(|&b| !h.contains(&f.mul(a, b))) {
                return Err(Error::InvalidParameter(format!(
                    "{subgroup:?} is not closed in GF({q})^×"
                )));
            }
        }
        Ok(TractId::Quotient { q, subgroup: h })
    }

    pub fn finite_field(q: u8) -> Result<TractId> {
        gf::gf(q)?;
        Ok(TractId::FiniteField(q))
    }

    pub fn is_field(&self) -> bool {
        matches!(
            self,
            TractId::FiniteField(_) | TractId::Rational | TractId::GaussianRational
        )
    }

    pub fn zero(&self) -> TractElement {
        use TractElement as E;
        match self {
            TractId::Krasner => E::Krasner(false),
            TractId::Sign => E::Sign(0),
            TractId::Phase => E::Phase(None),
            TractId::Triangle => E::Triangle(BigRational::zero()),
            TractId::Tropical => E::Tropical(None),
            TractId::FiniteField(_) => E::Finite(0),
            TractId::Rational => E::Rational(BigRational::zero()),
            TractId::GaussianRational => E::Gaussian(GaussRat::from_ints(0, 0)),
            TractId::RegularPartialField => E::Regular(0),
            TractId::Quotient { .. } => E::Quotient(0),
        }
    }

    pub fn one(&self) -> TractElement {
        use TractElement as E;
        match self {
            TractId::Krasner => E::Krasner(true),
            TractId::Sign => E::Sign(1),
            TractId::Phase => E::Phase(Direction::from_ints(1, 0)),
            TractId::Triangle => E::Triangle(rat(1)),
            TractId::Tropical => E::Tropical(Some(rat(0))),
            TractId::FiniteField(_) => E::Finite(1),
            TractId::Rational => E::Rational(rat(1)),
            TractId::GaussianRational => E::Gaussian(GaussRat::from_ints(1, 0)),
            TractId::RegularPartialField => E::Regular(1),
            TractId::Quotient { .. } => E::Quotient(1),
        }
    }

    /// The unique unit `ε` with `1 + ε` null.
    pub fn eps(&self) -> TractElement {
        self.neg(&self.one()).expect("one belongs to its tract")
    }

    pub fn contains(&self, e: &TractElement) -> bool {
        use TractElement as E;
        match (self, e) {
            (TractId::Krasner, E::Krasner(_)) => true,
            (TractId::Sign, E::Sign(s)) | (TractId::RegularPartialField, E::Regular(s)) => (-1..=1).contains(s),
            (TractId::Phase, E::Phase(_)) => true,
            (TractId::Triangle, E::Triangle(m)) => !m.is_negative(),
            (TractId::Tropical, E::Tropical(_)) => true,
            (TractId::FiniteField(q), E::Finite(x)) => x < q,
            (TractId::Rational, E::Rational(_)) => true,
            (TractId::GaussianRational, E::Gaussian(_)) => true,
            (TractId::Quotient { q, subgroup }, E::Quotient(x)) => {
                *x == 0 || (x < q && coset_rep(*q, subgroup, *x) == *x)
            }
            _ => false,
        }
    }

    pub fn check(&self, e: &TractElement) -> Result<()> {
        if self.contains(e) {
            Ok(())
        } else {
            Err(Error::TagMismatch {
                tract: self.to_string(),
                element: format!("{e:?}"),
            })
        }
    }

    pub fn is_zero(&self, e: &TractElement) -> bool {
        *e == self.zero()
    }

    /// Monoid product; zero is absorbing.
    pub fn mul(&self, a: &TractElement, b: &TractElement) -> Result<TractElement> {
        use TractElement as E;
        self.check(a)?;
        self.check(b)?;
        Ok(match (self, a, b) {
            (_, E::Krasner(x), E::Krasner(y)) => E::Krasner(*x && *y),
            (_, E::Sign(x), E::Sign(y)) => E::Sign(x * y),
            (_, E::Regular(x), E::Regular(y)) => E::Regular(x * y),
            (_, E::Phase(x), E::Phase(y)) => match (x, y) {
                (Some(x), Some(y)) => E::Phase(Some(x.mul(y))),
                _ => E::Phase(None),
            },
            (_, E::Triangle(x), E::Triangle(y)) => E::Triangle(x * y),
            (_, E::Tropical(x), E::Tropical(y)) => match (x, y) {
                (Some(x), Some(y)) => E::Tropical(Some(x + y)),
                _ => E::Tropical(None),
            },
            (TractId::FiniteField(q), E::Finite(x), E::Finite(y)) => E::Finite(gf::gf(*q)?.mul(*x, *y)),
            (_, E::Rational(x), E::Rational(y)) => E::Rational(x * y),
            (_, E::Gaussian(x), E::Gaussian(y)) => E::Gaussian(x.mul(y)),
            (TractId::Quotient { q, subgroup }, E::Quotient(x), E::Quotient(y)) => {
                E::Quotient(coset_rep(*q, subgroup, gf::gf(*q)?.mul(*x, *y)))
            }
            _ => unreachable!("checked membership"),
        })
    }

    /// `ε · a`.
    pub fn neg(&self, a: &TractElement) -> Result<TractElement> {
        use TractElement as E;
        self.check(a)?;
        Ok(match (self, a) {
            (_, E::Krasner(_)) | (_, E::Triangle(_)) | (_, E::Tropical(_)) => a.clone(),
            (_, E::Sign(x)) => E::Sign(-x),
            (_, E::Regular(x)) => E::Regular(-x),
            (_, E::Phase(d)) => E::Phase(d.as_ref().map(|d| Direction::new(-d.x.clone(), -d.y.clone()).unwrap())),
            (TractId::FiniteField(q), E::Finite(x)) => E::Finite(gf::gf(*q)?.neg(*x)),
            (_, E::Rational(x)) => E::Rational(-x),
            (_, E::Gaussian(x)) => E::Gaussian(x.neg()),
            (TractId::Quotient { q, subgroup }, E::Quotient(x)) => {
                E::Quotient(coset_rep(*q, subgroup, gf::gf(*q)?.neg(*x)))
            }
            _ => unreachable!("checked membership"),
        })
    }

    /// Multiplicative inverse of a unit.
    pub fn inv(&self, a: &TractElement) -> Result<TractElement> {
        use TractElement as E;
        self.check(a)?;
        if self.is_zero(a) {
            return Err(Error::Precondition("zero has no inverse".into()));
        }
        Ok(match (self, a) {
            (_, E::Krasner(_)) | (_, E::Sign(_)) | (_, E::Regular(_)) => a.clone(),
            (_, E::Phase(Some(d))) => E::Phase(Some(d.inv())),
            (_, E::Triangle(m)) => E::Triangle(m.recip()),
            (_, E::Tropical(Some(v))) => E::Tropical(Some(-v)),
            (TractId::FiniteField(q), E::Finite(x)) => E::Finite(gf::gf(*q)?.inv(*x)),
            (_, E::Rational(x)) => E::Rational(x.recip()),
            (_, E::Gaussian(x)) => E::Gaussian(x.inv()),
            (TractId::Quotient { q, subgroup }, E::Quotient(x)) => {
                E::Quotient(coset_rep(*q, subgroup, gf::gf(*q)?.inv(*x)))
            }
            _ => unreachable!("checked membership"),
        })
    }

    /// Decides membership of `s` in the null set.
    pub fn is_null(&self, s: &FormalSum) -> Result<bool> {
        use TractElement as E;
        if s.tract != *self {
            return Err(Error::TractMismatch(self.to_string(), s.tract.to_string()));
        }
        let terms = &s.terms;
        if terms.is_empty() {
            return Ok(true);
        }
        Ok(match self {
            TractId::Krasner => terms.len() >= 2,
            TractId::Sign => terms.contains(&E::Sign(1)) && terms.contains(&E::Sign(-1)),
            TractId::RegularPartialField => {
                terms
                    .iter()
                    .map(|t| match t {
                        E::Regular(x) => *x as i64,
                        _ => 0,
                    })
                    .sum::<i64>()
                    == 0
            }
            TractId::Triangle => {
                let mags: Vec<&BigRational> = terms
                    .iter()
                    .map(|t| match t {
                        E::Triangle(m) => m,
                        _ => unreachable!(),
                    })
                    .collect();
                let max = mags.iter().copied().max().unwrap();
                let total: BigRational = mags.iter().copied().sum();
                max * rat(2) <= total
            }
            TractId::Tropical => {
                let vals: Vec<&BigRational> = terms
                    .iter()
                    .map(|t| match t {
                        E::Tropical(Some(v)) => v,
                        _ => unreachable!(),
                    })
                    .collect();
                let max = vals.iter().copied().max().unwrap();
                vals.iter().filter(|v| **v == max).count() >= 2
            }
            TractId::Phase => {
                let dirs: Vec<&Direction> = terms
                    .iter()
                    .map(|t| match t {
                        E::Phase(Some(d)) => d,
                        _ => unreachable!(),
                    })
                    .collect();
                phase::phase_null_lp(&dirs)
            }
            TractId::FiniteField(q) => {
                let f = gf::gf(*q)?;
                terms
                    .iter()
                    .map(|t| match t {
                        E::Finite(x) => *x,
                        _ => unreachable!(),
                    })
                    .fold(0, |acc, x| f.add(acc, x))
                    == 0
            }
            TractId::Rational => terms
                .iter()
                .map(|t| match t {
                    E::Rational(x) => x.clone(),
                    _ => unreachable!(),
                })
                .sum::<BigRational>()
                .is_zero(),
            TractId::GaussianRational => terms
                .iter()
                .fold(GaussRat::from_ints(0, 0), |acc, t| match t {
                    E::Gaussian(x) => acc.add(x),
                    _ => unreachable!(),
                })
                .is_zero(),
            TractId::Quotient { q, subgroup } => {
                let f = gf::gf(*q)?;
                // Set of field values reachable as sum of c_i x_i, c_i in H.
                let mut reach: u32 = 1; // {0}
                for t in terms {
                    let E::Quotient(x) = t else { unreachable!() };
                    let mut next = 0u32;
                    for s in 0..*q {
                        if reach >> s & 1 == 1 {
                            for &h in subgroup {
                                next |= 1 << f.add(s, f.mul(h, *x));
                            }
                        }
                    }
                    reach = next;
                }
                reach & 1 == 1
            }
        })
    }

    /// All elements for finite tracts.
    pub fn elements(&self) -> Elements {
        use TractElement as E;
        match self {
            TractId::Krasner => Elements::Finite(vec![E::Krasner(false), E::Krasner(true)]),
            TractId::Sign => Elements::Finite(vec![E::Sign(0), E::Sign(1), E::Sign(-1)]),
            TractId::RegularPartialField => Elements::Finite(vec![E::Regular(0), E::Regular(1), E::Regular(-1)]),
            TractId::FiniteField(q) => Elements::Finite((0..*q).map(E::Finite).collect()),
            TractId::Quotient { q, subgroup } => {
                let mut reps: Vec<u8> = (1..*q).map(|x| coset_rep(*q, subgroup, x)).collect();
                reps.sort_unstable();
                reps.dedup();
                let mut out = vec![E::Quotient(0)];
                out.extend(reps.into_iter().map(E::Quotient));
                Elements::Finite(out)
            }
            _ => Elements::Infinite,
        }
    }

    /// Nonzero elements of a finite tract.
    pub fn units(&self) -> Option<Vec<TractElement>> {
        match self.elements() {
            Elements::Finite(all) => Some(all.into_iter().filter(|e| !self.is_zero(e)).collect()),
            Elements::Infinite => None,
        }
    }

    /// Maps a field element of `GF(q)` to its coset (quotient tracts only).
    pub fn coset_of(&self, x: u8) -> Result<TractElement> {
        match self {
            TractId::Quotient { q, subgroup } if x < *q => Ok(TractElement::Quotient(coset_rep(*q, subgroup, x))),
            _ => Err(Error::InvalidParameter(format!("{x} has no coset in {self}"))),
        }
    }

    /// Field addition (field tracts only).
    pub fn field_add(&self, a: &TractElement, b: &TractElement) -> Result<TractElement> {
        use TractElement as E;
        Ok(match (self, a, b) {
            (TractId::FiniteField(q), E::Finite(x), E::Finite(y)) => E::Finite(gf::gf(*q)?.add(*x, *y)),
            (TractId::Rational, E::Rational(x), E::Rational(y)) => E::Rational(x + y),
            (TractId::GaussianRational, E::Gaussian(x), E::Gaussian(y)) => E::Gaussian(x.add(y)),
            _ => {
                return Err(Error::UnsupportedTract {
                    tract: self.to_string(),
                    operation: "field addition",
                })
            }
        })
    }

    pub fn field_sub(&self, a: &TractElement, b: &TractElement) -> Result<TractElement> {
        self.field_add(a, &self.neg(b)?)
    }
}

fn coset_rep(q: u8, subgroup: &[u8], x: u8) -> u8 {
    if x == 0 {
        return 0;
    }
    let f = gf::gf(q).expect("validated order");
    subgroup.iter().map(|&h| f.mul(h, x)).min().unwrap()
}

impl FormalSum {
    pub fn new(tract: TractId) -> Self {
        FormalSum {
            tract,
            terms: Vec::new(),
        }
    }

    pub fn from_terms<I: IntoIterator<Item = TractElement>>(tract: TractId, terms: I) -> Result<Self> {
        let mut s = FormalSum::new(tract);
        for t in terms {
            s.push(t)?;
        }
        Ok(s)
    }

    /// Adds a term; zeros are dropped.
    pub fn push(&mut self, e: TractElement) -> Result<()> {
        self.tract.check(&e)?;
        if !self.tract.is_zero(&e) {
            self.terms.push(e);
        }
        Ok(())
    }

    pub fn tract(&self) -> &TractId {
        &self.tract
    }

    pub fn terms(&self) -> &[TractElement] {
        &self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Multiplies every term by `c`.
    pub fn scale(&self, c: &TractElement) -> Result<FormalSum> {
        let terms = self
            .terms
            .iter()
            .map(|t| self.tract.mul(c, t))
            .collect::<Result<Vec<_>>>()?;
        FormalSum::from_terms(self.tract.clone(), terms)
    }

    pub fn is_null(&self) -> Result<bool> {
        self.tract.is_null(self)
    }
}

impl fmt::Display for TractId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TractId::Krasner => write!(f, "krasner"),
            TractId::Sign => write!(f, "sign"),
            TractId::Phase => write!(f, "phase"),
            TractId::Triangle => write!(f, "triangle"),
            TractId::Tropical => write!(f, "tropical"),
            TractId::FiniteField(q) => write!(f, "fp:{q}"),
            TractId::Rational => write!(f, "rational"),
            TractId::GaussianRational => write!(f, "gaussian"),
            TractId::RegularPartialField => write!(f, "regular"),
            TractId::Quotient { q, subgroup } => {
                let h: Vec<String> = subgroup.iter().map(|x| x.to_string()).collect();
                write!(f, "quotient:{q}:{{{}}}", h.join(","))
            }
        }
    }
}

/// Convenience constructor for rational literals in tests and examples.
pub fn ratio(n: i64, d: i64) -> BigRational {
    BigRational::new(n.into(), d.into())
}

#[cfg(test)]
mod tests;
