//! Text grammar for tract tags and element literals.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::{gf, Direction, GaussRat, TractElement, TractId};
use crate::error::{Error, Result};

fn bad(msg: impl Into<String>) -> Error {
    Error::Parse {
        line: 0,
        message: msg.into(),
    }
}

pub(crate) fn parse_rational(s: &str) -> Result<BigRational> {
    let s = s.trim();
    let parsed = match s.split_once('/') {
        Some((n, d)) => {
            let n = BigInt::from_str(n.trim()).map_err(|_| bad(format!("bad rational `{s}`")))?;
            let d = BigInt::from_str(d.trim()).map_err(|_| bad(format!("bad rational `{s}`")))?;
            if d.is_zero() {
                return Err(bad(format!("zero denominator in `{s}`")));
            }
            BigRational::new(n, d)
        }
        None => BigRational::from_integer(BigInt::from_str(s).map_err(|_| bad(format!("bad rational `{s}`")))?),
    };
    Ok(parsed)
}

fn parse_gaussian(s: &str) -> Result<GaussRat> {
    let s = s.trim();
    let Some(body) = s.strip_suffix('i') else {
        return Ok(GaussRat::new(parse_rational(s)?, BigRational::zero()));
    };
    // Split at the last sign that is not leading.
    let split = body
        .char_indices()
        .filter(|(i, c)| *i > 0 && (*c == '+' || *c == '-'))
        .map(|(i, _)| i)
        .next_back();
    let (re, im) = match split {
        Some(i) => (&body[..i], &body[i..]),
        None => ("0", body),
    };
    let im = match im.trim() {
        "" | "+" => BigRational::one(),
        "-" => -BigRational::one(),
        t => parse_rational(t.trim_start_matches('+'))?,
    };
    Ok(GaussRat::new(parse_rational(re)?, im))
}

fn fmt_rational(r: &BigRational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

impl TractId {
    /// Parses an element literal of this tract.
    pub fn parse_element(&self, s: &str) -> Result<TractElement> {
        use TractElement as E;
        let s = s.trim();
        let e = match self {
            TractId::Krasner => match s {
                "0" => E::Krasner(false),
                "1" | "*" => E::Krasner(true),
                _ => return Err(bad(format!("bad krasner literal `{s}`"))),
            },
            TractId::Sign => match s {
                "0" => E::Sign(0),
                "+" | "1" | "+1" => E::Sign(1),
                "-" | "-1" => E::Sign(-1),
                _ => return Err(bad(format!("bad sign literal `{s}`"))),
            },
            TractId::RegularPartialField => match s {
                "0" => E::Regular(0),
                "1" | "+1" | "+" => E::Regular(1),
                "-1" | "-" => E::Regular(-1),
                _ => return Err(bad(format!("bad regular partial field literal `{s}`"))),
            },
            TractId::Phase => {
                if s == "0" {
                    E::Phase(None)
                } else {
                    let (a, b) = s
                        .split_once(',')
                        .ok_or_else(|| bad(format!("bad phase literal `{s}`")))?;
                    let a = BigInt::from_str(a.trim()).map_err(|_| bad(format!("bad phase `{s}`")))?;
                    let b = BigInt::from_str(b.trim()).map_err(|_| bad(format!("bad phase `{s}`")))?;
                    E::Phase(Some(
                        Direction::new(a, b).ok_or_else(|| bad("phase pair 0,0 must be written 0"))?,
                    ))
                }
            }
            TractId::Triangle => {
                let r = parse_rational(s)?;
                if r.is_negative() {
                    return Err(bad(format!("negative triangle magnitude `{s}`")));
                }
                E::Triangle(r)
            }
            TractId::Tropical => match s {
                "ninf" | "-inf" => E::Tropical(None),
                _ => E::Tropical(Some(parse_rational(s)?)),
            },
            TractId::Rational => E::Rational(parse_rational(s)?),
            TractId::GaussianRational => E::Gaussian(parse_gaussian(s)?),
            TractId::FiniteField(q) | TractId::Quotient { q, .. } => {
                let v = i64::from_str(s).map_err(|_| bad(format!("bad field literal `{s}`")))?;
                let f = gf::gf(*q)?;
                let x = if f.characteristic() == *q {
                    v.rem_euclid(*q as i64) as u8
                } else if (0..*q as i64).contains(&v) {
                    v as u8
                } else {
                    return Err(bad(format!("`{s}` is not an encoded element of GF({q})")));
                };
                match self {
                    TractId::FiniteField(_) => E::Finite(x),
                    _ => self.coset_of(x)?,
                }
            }
        };
        Ok(e)
    }

    /// Renders an element in the literal grammar of [`TractId::parse_element`].
    pub fn format_element(&self, e: &TractElement) -> String {
        use TractElement as E;
        match e {
            E::Krasner(b) => if *b { "1" } else { "0" }.into(),
            E::Sign(s) => match s {
                1 => "+".into(),
                -1 => "-".into(),
                _ => "0".into(),
            },
            E::Regular(s) => s.to_string(),
            E::Phase(None) => "0".into(),
            E::Phase(Some(d)) => format!("{},{}", d.x(), d.y()),
            E::Triangle(r) | E::Rational(r) => fmt_rational(r),
            E::Tropical(None) => "ninf".into(),
            E::Tropical(Some(v)) => fmt_rational(v),
            E::Finite(x) | E::Quotient(x) => x.to_string(),
            E::Gaussian(z) => {
                if z.im.is_zero() {
                    fmt_rational(&z.re)
                } else if z.re.is_zero() {
                    format!("{}i", fmt_rational(&z.im))
                } else if z.im.is_negative() {
                    format!("{}{}i", fmt_rational(&z.re), fmt_rational(&z.im))
                } else {
                    format!("{}+{}i", fmt_rational(&z.re), fmt_rational(&z.im))
                }
            }
        }
    }
}

impl FromStr for TractId {
    type Err = Error;

    fn from_str(s: &str) -> Result<TractId> {
        let s = s.trim();
        let parts: Vec<&str> = s.splitn(3, ':').collect();
        let order = |p: &str| -> Result<u8> { p.parse::<u8>().map_err(|_| bad(format!("bad field order in `{s}`"))) };
        match parts.as_slice() {
            ["krasner"] => Ok(TractId::Krasner),
            ["sign"] => Ok(TractId::Sign),
            ["phase"] => Ok(TractId::Phase),
            ["triangle"] => Ok(TractId::Triangle),
            ["tropical"] => Ok(TractId::Tropical),
            ["rational"] => Ok(TractId::Rational),
            ["gaussian"] => Ok(TractId::GaussianRational),
            ["regular"] => Ok(TractId::RegularPartialField),
            ["fp" | "fq" | "gf", q] => TractId::finite_field(order(q)?),
            ["quotient", q, h] => {
                let inner = h
                    .trim()
                    .strip_prefix('{')
                    .and_then(|x| x.strip_suffix('}'))
                    .ok_or_else(|| bad(format!("subgroup must be written {{..}} in `{s}`")))?;
                let elems = inner
                    .split(',')
                    .map(|x| {
                        x.trim()
                            .parse::<u8>()
                            .map_err(|_| bad(format!("bad subgroup in `{s}`")))
                    })
                    .collect::<Result<Vec<u8>>>()?;
                TractId::quotient(order(q)?, &elems)
            }
            _ => Err(bad(format!("unknown tract tag `{s}`"))),
        }
    }
}

impl fmt::Display for TractElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let tract = match self {
            TractElement::Krasner(_) => TractId::Krasner,
            TractElement::Sign(_) => TractId::Sign,
            TractElement::Phase(_) => TractId::Phase,
            TractElement::Triangle(_) => TractId::Triangle,
            TractElement::Tropical(_) => TractId::Tropical,
            TractElement::Finite(_) => TractId::FiniteField(2),
            TractElement::Rational(_) => TractId::Rational,
            TractElement::Gaussian(_) => TractId::GaussianRational,
            TractElement::Regular(_) => TractId::RegularPartialField,
            TractElement::Quotient(_) => TractId::FiniteField(2),
        };
        f.write_str(&tract.format_element(self))
    }
}
