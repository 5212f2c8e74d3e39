//! Small finite fields GF(q), q a prime power at most 9.
//!
//! An element is stored as an integer `0..q` whose base-`p` digits are the
//! coefficients of a polynomial over GF(p), lowest degree first. Extension
//! fields reduce modulo a fixed monic irreducible polynomial:
//! `x^2 + x + 1` for q = 4, `x^3 + x + 1` for q = 8 and `x^2 + 1` for q = 9.
//! Operation tables are built once per field and shared.

use std::sync::OnceLock;

use crate::error::{Error, Result};

pub const SUPPORTED_ORDERS: [u32; 7] = [2, 3, 4, 5, 7, 8, 9];

/// Element of a [`Gf`]; only meaningful together with its field.
pub type FieldElement = u8;

#[derive(Debug)]
pub struct Gf {
    q: usize,
    p: usize,
    add: Vec<u8>,
    mul: Vec<u8>,
    neg: Vec<u8>,
    inv: Vec<u8>,
}

/// Characteristic, degree and the low coefficients of the monic modulus.
fn structure(q: u32) -> Option<(usize, usize, &'static [usize])> {
    match q {
        2 | 3 | 5 | 7 => Some((q as usize, 1, &[0])),
        4 => Some((2, 2, &[1, 1])),
        8 => Some((2, 3, &[1, 1, 0])),
        9 => Some((3, 2, &[1, 0])),
        _ => None,
    }
}

fn digits(mut a: usize, p: usize, k: usize) -> Vec<usize> {
    (0..k)
        .map(|_| {
            let d = a % p;
            a /= p;
            d
        })
        .collect()
}

fn undigits(ds: &[usize], p: usize) -> usize {
    ds.iter().rev().fold(0, |acc, &d| acc * p + d)
}

fn poly_mul(a: &[usize], b: &[usize], p: usize, low: &[usize]) -> Vec<usize> {
    let k = a.len();
    let mut prod = vec![0; 2 * k - 1];
    for (i, &x) in a.iter().enumerate() {
        for (j, &y) in b.iter().enumerate() {
            prod[i + j] = (prod[i + j] + x * y) % p;
        }
    }
    // x^k = -(low) ; eliminate from the top down
    for deg in (k..prod.len()).rev() {
        let c = prod[deg];
        if c == 0 {
            continue;
        }
        prod[deg] = 0;
        for (i, &l) in low.iter().enumerate() {
            let t = &mut prod[deg - k + i];
            *t = (*t + (p - c) * l) % p;
        }
    }
    prod.truncate(k);
    prod
}

impl Gf {
    fn build(q: u32) -> Gf {
        let (p, k, low) = structure(q).expect("supported order");
        let q = q as usize;
        let mut add = vec![0u8; q * q];
        let mut mul = vec![0u8; q * q];
        for a in 0..q {
            let da = digits(a, p, k);
            for b in 0..q {
                let db = digits(b, p, k);
                let sum: Vec<usize> = da.iter().zip(&db).map(|(x, y)| (x + y) % p).collect();
                add[a * q + b] = undigits(&sum, p) as u8;
                mul[a * q + b] = if k == 1 {
                    (a * b % p) as u8
                } else {
                    undigits(&poly_mul(&da, &db, p, low), p) as u8
                };
            }
        }
        let neg = (0..q)
            .map(|a| (0..q).find(|&b| add[a * q + b] == 0).unwrap() as u8)
            .collect();
        let inv = (0..q)
            .map(|a| {
                if a == 0 {
                    0
                } else {
                    (1..q).find(|&b| mul[a * q + b] == 1).unwrap_or(0) as u8
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

    /// The shared field of order `q`.
    pub fn get(q: u32) -> Result<&'static Gf> {
        static FIELDS: [OnceLock<Gf>; 10] = [const { OnceLock::new() }; 10];
        if structure(q).is_none() {
            return Err(Error::UnsupportedOrder(q as u64));
        }
        Ok(FIELDS[q as usize].get_or_init(|| Gf::build(q)))
    }

    pub fn order(&self) -> usize {
        self.q
    }

    pub fn characteristic(&self) -> usize {
        self.p
    }

    pub fn elements(&self) -> impl Iterator<Item = FieldElement> {
        0..self.q as u8
    }

    #[inline]
    pub fn add(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        self.add[a as usize * self.q + b as usize]
    }

    #[inline]
    pub fn sub(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        self.add(a, self.neg[b as usize])
    }

    #[inline]
    pub fn mul(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        self.mul[a as usize * self.q + b as usize]
    }

    #[inline]
    pub fn neg(&self, a: FieldElement) -> FieldElement {
        self.neg[a as usize]
    }

    /// Multiplicative inverse; `None` for zero.
    pub fn inv(&self, a: FieldElement) -> Option<FieldElement> {
        (a != 0).then(|| self.inv[a as usize])
    }

    /// Sum of `x_i * y_i`.
    pub fn dot(&self, x: &[FieldElement], y: &[FieldElement]) -> FieldElement {
        x.iter()
            .zip(y)
            .fold(0, |acc, (&a, &b)| self.add(acc, self.mul(a, b)))
    }

    /// Scales `v` so that its first nonzero coordinate is 1.
    pub fn normalize(&self, v: &mut [FieldElement]) -> bool {
        let Some(&lead) = v.iter().find(|&&x| x != 0) else {
            return false;
        };
        let s = self.inv(lead).unwrap();
        for x in v.iter_mut() {
            *x = self.mul(*x, s);
        }
        true
    }

    /// All normalized nonzero vectors of length `n`, i.e. the points of
    /// PG(n - 1, q), in lexicographic order.
    pub fn projective_points(&self, n: usize) -> Vec<Vec<FieldElement>> {
        let mut out = Vec::new();
        let total = self.q.pow(n as u32);
        for code in 1..total {
            let v: Vec<u8> = digits(code, self.q, n)
                .into_iter()
                .rev()
                .map(|d| d as u8)
                .collect();
            if v.iter().find(|&&x| x != 0) == Some(&1) {
                out.push(v);
            }
        }
        out
    }

    /// Index of a vector in `0..q^n`, first coordinate most significant.
    pub fn vector_code(&self, v: &[FieldElement]) -> usize {
        v.iter().fold(0, |acc, &x| acc * self.q + x as usize)
    }
}
