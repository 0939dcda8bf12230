//! Tabulated arithmetic for the small finite fields of the catalog.
//!
//! Elements of `GF(p^k)` are encoded as integers `0..q` whose base-`p`
//! digits are the coefficients of a polynomial modulo a fixed irreducible.

use std::sync::OnceLock;

use crate::error::{Error, Result};

/// Orders with tabulated arithmetic.
pub const SUPPORTED_ORDERS: [u8; 7] = [2, 3, 4, 5, 7, 8, 9];

#[derive(Debug)]
pub struct Gf {
    q: u8,
    p: u8,
    add: Vec<u8>,
    mul: Vec<u8>,
    neg: Vec<u8>,
    inv: Vec<u8>,
}

fn characteristic(q: u8) -> u8 {
    match q {
        4 | 8 => 2,
        9 => 3,
        p => p,
    }
}

// Monic irreducible modulus, low coefficient first, leading 1 omitted.
fn modulus(q: u8) -> &'static [u8] {
    match q {
        4 => &[1, 1],    // x^2 + x + 1
        8 => &[1, 1, 0], // x^3 + x + 1
        9 => &[1, 0],    // x^2 + 1
        _ => &[],
    }
}

impl Gf {
    fn build(q: u8) -> Gf {
        let p = characteristic(q);
        let degree = modulus(q).len().max(1);
        let digits = |mut x: u8| {
            let mut out = vec![0u8; degree];
            for d in out.iter_mut() {
                *d = x % p;
                x /= p;
            }
            out
        };
        let encode = |ds: &[u8]| ds.iter().rev().fold(0u16, |acc, &d| acc * p as u16 + d as u16) as u8;
        let n = q as usize;
        let mut add = vec![0u8; n * n];
        let mut mul = vec![0u8; n * n];
        for a in 0..q {
            for b in 0..q {
                let (da, db) = (digits(a), digits(b));
                let sum: Vec<u8> = da.iter().zip(&db).map(|(x, y)| (x + y) % p).collect();
                add[a as usize * n + b as usize] = encode(&sum);
                mul[a as usize * n + b as usize] = if degree == 1 {
                    ((a as u16 * b as u16) % p as u16) as u8
                } else {
                    let mut prod = vec![0u16; 2 * degree - 1];
                    for (i, x) in da.iter().enumerate() {
                        for (j, y) in db.iter().enumerate() {
                            prod[i + j] += (*x as u16) * (*y as u16);
                        }
                    }
                    let m = modulus(q);
                    for k in (degree..prod.len()).rev() {
                        let c = prod[k] % p as u16;
                        prod[k] = 0;
                        if c != 0 {
                            // x^degree = -(m_0 + m_1 x + ...)
                            for (i, mi) in m.iter().enumerate() {
                                let sub = c * (*mi as u16) % p as u16;
                                let idx = k - degree + i;
                                prod[idx] = (prod[idx] + p as u16 * 8 - sub) % p as u16;
                            }
                        }
                    }
                    let red: Vec<u8> = prod[..degree].iter().map(|c| (c % p as u16) as u8).collect();
                    encode(&red)
                };
            }
        }
        let neg = (0..q)
            .map(|a| (0..q).find(|&b| add[a as usize * n + b as usize] == 0).unwrap())
            .collect();
        let inv = (0..q)
            .map(|a| {
                if a == 0 {
                    0
                } else {
                    (1..q).find(|&b| mul[a as usize * n + b as usize] == 1).unwrap()
                }
            })
            .collect();
        Gf {
            q,
            p,
            add,
            mul,
            neg,
            inv,
        }
    }

    pub fn order(&self) -> u8 {
        self.q
    }

    pub fn characteristic(&self) -> u8 {
        self.p
    }

    #[inline]
    pub fn add(&self, a: u8, b: u8) -> u8 {
        self.add[a as usize * self.q as usize + b as usize]
    }

    #[inline]
    pub fn mul(&self, a: u8, b: u8) -> u8 {
        self.mul[a as usize * self.q as usize + b as usize]
    }

    #[inline]
    pub fn neg(&self, a: u8) -> u8 {
        self.neg[a as usize]
    }

    #[inline]
    pub fn sub(&self, a: u8, b: u8) -> u8 {
        self.add(a, self.neg(b))
    }

    /// Multiplicative inverse; `inv(0)` is 0.
    #[inline]
    pub fn inv(&self, a: u8) -> u8 {
        self.inv[a as usize]
    }
}

static FIELDS: OnceLock<Vec<Gf>> = OnceLock::new();

/// Arithmetic tables for `GF(q)`.
pub fn gf(q: u8) -> Result<&'static Gf> {
    let fields = FIELDS.get_or_init(|| SUPPORTED_ORDERS.iter().map(|&q| Gf::build(q)).collect());
    fields
        .iter()
        .find(|f| f.q == q)
        .ok_or_else(|| Error::InvalidParameter(format!("no tabulated finite field of order {q}")))
}
