//! Arithmetic in GF(p) and GF(p^e).
//!
//! A [`Field`] is built deterministically from `(p, e)`: the modulus is the
//! smallest monic irreducible polynomial of degree `e` when coefficient
//! vectors are compared lexicographically starting from the constant term,
//! and the generator is the smallest primitive element under the same order.
//! Two fields with equal `(p, e)` are therefore interchangeable.
//!
//! Elements are [`Elem`] handles holding the polynomial-basis encoding
//! `c_0 + c_1 p + ... + c_{e-1} p^{e-1}` of `c_0 + c_1 x + ... + c_{e-1} x^{e-1}`.
//! They carry no field context; every operation goes through the `Field`.
//!
//! ```
//! use starpir::gf::Field;
//!
//! let gf4 = Field::new(2, 2).unwrap();
//! assert_eq!(gf4.modulus(), &[1, 1, 1]); // x^2 + x + 1
//! let x = gf4.from_coeffs(&[0, 1]).unwrap();
//! assert_eq!(gf4.coeffs(gf4.mul(x, x)), vec![1, 1]); // x^2 = x + 1
//! ```

mod numth;
mod poly;

use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use serde::Serialize;

use crate::error::{Error, Result};

pub use numth::{binomial, gcd, is_prime, order_of, pow_mod, prime_factors, prime_power};
pub use poly::Poly;

/// Largest supported field order.
pub const MAX_FIELD_ORDER: u64 = 1 << 20;

/// A field element in polynomial-basis integer encoding.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(transparent)]
pub struct Elem(pub(crate) u32);

impl Elem {
    pub const ZERO: Elem = Elem(0);
    pub const ONE: Elem = Elem(1);

    /// The integer encoding. Only meaningful relative to a field.
    pub fn index(self) -> u32 {
        self.0
    }

    pub fn is_zero(self) -> bool {
        self.0 == 0
    }
}

impl fmt::Display for Elem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

struct Inner {
    p: u32,
    e: u32,
    q: u32,
    /// Monic modulus, low degree first, length `e + 1` (empty when `e = 1`).
    modulus: Vec<u32>,
    generator: Elem,
    /// `exp[i] = g^i` for `i < 2(q - 1)`, doubled to skip a reduction in `mul`.
    exp: Vec<u32>,
    log: Vec<u32>,
}

/// A finite field GF(p^e) with `p^e <= 2^20`.
///
/// Cloning is cheap; the lookup tables are shared.
#[derive(Clone)]
pub struct Field(Arc<Inner>);

impl PartialEq for Field {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || (self.0.p == other.0.p && self.0.e == other.0.e)
    }
}

impl Eq for Field {}

impl fmt::Debug for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.e == 1 {
            write!(f, "GF({})", self.0.p)
        } else {
            write!(f, "GF({}^{})", self.0.p, self.0.e)
        }
    }
}

impl Field {
    /// Constructs GF(p^e).
    pub fn new(p: u64, e: u32) -> Result<Field> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        if e == 0 {
            return Err(Error::invalid("extension degree must be at least 1"));
        }
        let q = (p as u128).checked_pow(e).unwrap_or(u128::MAX);
        if q > MAX_FIELD_ORDER as u128 {
            return Err(Error::FieldTooLarge { p, e });
        }
        let (p, q) = (p as u32, q as u32);
        let modulus = if e == 1 {
            Vec::new()
        } else {
            smallest_irreducible(p, e as usize)
        };
        let raw = RawArith {
            p,
            e: e as usize,
            modulus: &modulus,
        };
        let generator = smallest_primitive(&raw, q);

        let order = (q - 1) as usize;
        let mut exp = vec![0u32; 2 * order];
        let mut log = vec![0u32; q as usize];
        let mut acc = 1u32;
        for i in 0..order {
            exp[i] = acc;
            exp[i + order] = acc;
            log[acc as usize] = i as u32;
            acc = raw.mul(acc, generator);
        }
        debug_assert_eq!(acc, 1);

        Ok(Field(Arc::new(Inner {
            p,
            e,
            q,
            modulus,
            generator: Elem(generator),
            exp,
            log,
        })))
    }

    /// Constructs GF(q) for a prime power `q`.
    pub fn with_order(q: u64) -> Result<Field> {
        let (p, e) = prime_power(q)?;
        Field::new(p, e)
    }

    pub fn characteristic(&self) -> u32 {
        self.0.p
    }

    pub fn degree(&self) -> u32 {
        self.0.e
    }

    /// Number of elements `q = p^e`.
    pub fn order(&self) -> u32 {
        self.0.q
    }

    /// The monic modulus, low degree first. Empty for prime fields.
    pub fn modulus(&self) -> &[u32] {
        &self.0.modulus
    }

    pub fn generator(&self) -> Elem {
        self.0.generator
    }

    pub fn is_binary(&self) -> bool {
        self.0.q == 2
    }

    pub fn zero(&self) -> Elem {
        Elem::ZERO
    }

    pub fn one(&self) -> Elem {
        Elem::ONE
    }

    /// Element from its integer encoding.
    pub fn elem(&self, index: u32) -> Result<Elem> {
        if index >= self.0.q {
            return Err(Error::invalid(format!(
                "{index} is not an element encoding of {self:?}"
            )));
        }
        Ok(Elem(index))
    }

    /// Image of an integer under `Z -> GF(p) -> GF(p^e)`.
    pub fn from_int(&self, v: i64) -> Elem {
        Elem(v.rem_euclid(self.0.p as i64) as u32)
    }

    /// Element from little-endian coefficients, each reduced mod `p`.
    pub fn from_coeffs(&self, coeffs: &[u32]) -> Result<Elem> {
        if coeffs.len() > self.0.e as usize {
            return Err(Error::invalid(format!(
                "{} coefficients given for a degree-{} extension",
                coeffs.len(),
                self.0.e
            )));
        }
        let p = self.0.p;
        if let Some(c) = coeffs.iter().find(|&&c| c >= p) {
            return Err(Error::invalid(format!("coefficient {c} is not reduced mod {p}")));
        }
        Ok(Elem(coeffs.iter().rev().fold(0, |acc, &c| acc * p + c)))
    }

    /// Little-endian coefficient vector of length `e`.
    pub fn coeffs(&self, a: Elem) -> Vec<u32> {
        let p = self.0.p;
        let mut v = a.0;
        (0..self.0.e)
            .map(|_| {
                let c = v % p;
                v /= p;
                c
            })
            .collect()
    }

    pub fn elements(&self) -> impl Iterator<Item = Elem> {
        (0..self.0.q).map(Elem)
    }

    pub fn add(&self, a: Elem, b: Elem) -> Elem {
        let p = self.0.p;
        if p == 2 {
            return Elem(a.0 ^ b.0);
        }
        if self.0.e == 1 {
            let s = a.0 + b.0;
            return Elem(if s >= p { s - p } else { s });
        }
        let (mut x, mut y) = (a.0, b.0);
        let mut out = 0;
        let mut place = 1;
        while x != 0 || y != 0 {
            out += ((x % p + y % p) % p) * place;
            x /= p;
            y /= p;
            place *= p;
        }
        Elem(out)
    }

    pub fn neg(&self, a: Elem) -> Elem {
        let p = self.0.p;
        if p == 2 {
            return a;
        }
        if self.0.e == 1 {
            return Elem(if a.0 == 0 { 0 } else { p - a.0 });
        }
        let mut x = a.0;
        let mut out = 0;
        let mut place = 1;
        while x != 0 {
            out += ((p - x % p) % p) * place;
            x /= p;
            place *= p;
        }
        Elem(out)
    }

    pub fn sub(&self, a: Elem, b: Elem) -> Elem {
        self.add(a, self.neg(b))
    }

    pub fn mul(&self, a: Elem, b: Elem) -> Elem {
        if a.0 == 0 || b.0 == 0 {
            return Elem(0);
        }
        let inner = &*self.0;
        let i = inner.log[a.0 as usize] + inner.log[b.0 as usize];
        Elem(inner.exp[i as usize])
    }

    pub fn inv(&self, a: Elem) -> Result<Elem> {
        if a.0 == 0 {
            return Err(Error::DivisionByZero);
        }
        let inner = &*self.0;
        let order = inner.q - 1;
        let l = inner.log[a.0 as usize];
        Ok(Elem(inner.exp[((order - l) % order) as usize]))
    }

    pub fn div(&self, a: Elem, b: Elem) -> Result<Elem> {
        Ok(self.mul(a, self.inv(b)?))
    }

    pub fn pow(&self, a: Elem, exp: u64) -> Elem {
        if exp == 0 {
            return Elem(1);
        }
        if a.0 == 0 {
            return Elem(0);
        }
        let inner = &*self.0;
        let order = (inner.q - 1) as u64;
        let l = inner.log[a.0 as usize] as u64;
        Elem(inner.exp[((l * (exp % order)) % order) as usize])
    }

    /// `g^i` for the field generator `g`.
    pub fn exp(&self, i: u64) -> Elem {
        let order = (self.0.q - 1) as u64;
        Elem(self.0.exp[(i % order) as usize])
    }

    /// Discrete log to the base of the generator.
    pub fn log(&self, a: Elem) -> Result<u32> {
        if a.0 == 0 {
            return Err(Error::DivisionByZero);
        }
        Ok(self.0.log[a.0 as usize])
    }

    /// Multiplicative order of a nonzero element.
    pub fn mul_order(&self, a: Elem) -> Result<u64> {
        let l = self.log(a)? as u64;
        let order = (self.0.q - 1) as u64;
        Ok(order / gcd(l, order))
    }

    /// Maps `self` into `big` when `self` is isomorphic to a subfield of it.
    ///
    /// The image of `x` is the smallest root of `self`'s modulus in `big`.
    pub fn embedding_into(&self, big: &Field) -> Result<Embedding> {
        if self.0.p != big.0.p || !big.0.e.is_multiple_of(self.0.e) {
            return Err(Error::invalid(format!("{self:?} is not a subfield of {big:?}")));
        }
        let gamma = if self.0.e == 1 {
            Elem(0)
        } else {
            let modulus: Vec<Elem> = self.0.modulus.iter().map(|&c| Elem(c)).collect();
            big.elements()
                .find(|&z| {
                    modulus
                        .iter()
                        .rev()
                        .fold(Elem::ZERO, |acc, &c| big.add(big.mul(acc, z), c))
                        .is_zero()
                })
                .ok_or_else(|| Error::Inconsistent(format!("{self:?} modulus has no root in {big:?}")))?
        };
        let forward: Vec<Elem> = self
            .elements()
            .map(|a| {
                if self.0.e == 1 {
                    return Elem(a.0);
                }
                self.coeffs(a)
                    .iter()
                    .rev()
                    .fold(Elem::ZERO, |acc, &c| big.add(big.mul(acc, gamma), Elem(c)))
            })
            .collect();
        let back = forward.iter().enumerate().map(|(i, &b)| (b, Elem(i as u32))).collect();
        Ok(Embedding { forward, back })
    }
}

/// A field embedding `GF(p^a) -> GF(p^b)` given by explicit tables.
#[derive(Clone, Debug)]
pub struct Embedding {
    forward: Vec<Elem>,
    back: HashMap<Elem, Elem>,
}

impl Embedding {
    pub fn apply(&self, a: Elem) -> Elem {
        self.forward[a.0 as usize]
    }

    /// Preimage, if `b` lies in the image of the subfield.
    pub fn pull_back(&self, b: Elem) -> Option<Elem> {
        self.back.get(&b).copied()
    }
}

/// Schoolbook arithmetic used only while the tables are being built.
struct RawArith<'a> {
    p: u32,
    e: usize,
    modulus: &'a [u32],
}

impl RawArith<'_> {
    fn to_coeffs(&self, mut v: u32) -> Vec<u32> {
        (0..self.e)
            .map(|_| {
                let c = v % self.p;
                v /= self.p;
                c
            })
            .collect()
    }

    fn pack(&self, c: &[u32]) -> u32 {
        c.iter().rev().fold(0, |acc, &x| acc * self.p + x)
    }

    fn mul(&self, a: u32, b: u32) -> u32 {
        if self.e == 1 {
            return ((a as u64 * b as u64) % self.p as u64) as u32;
        }
        let p = self.p as u64;
        let (x, y) = (self.to_coeffs(a), self.to_coeffs(b));
        let mut prod = vec![0u64; 2 * self.e - 1];
        for (i, &xi) in x.iter().enumerate() {
            for (j, &yj) in y.iter().enumerate() {
                prod[i + j] = (prod[i + j] + xi as u64 * yj as u64) % p;
            }
        }
        // Reduce using x^e = -(m_0 + ... + m_{e-1} x^{e-1}).
        for d in (self.e..prod.len()).rev() {
            let c = prod[d];
            if c == 0 {
                continue;
            }
            prod[d] = 0;
            for (k, &m) in self.modulus[..self.e].iter().enumerate() {
                let t = d - self.e + k;
                prod[t] = (prod[t] + (p - c) * m as u64) % p;
            }
        }
        let out: Vec<u32> = prod[..self.e].iter().map(|&c| c as u32).collect();
        self.pack(&out)
    }

    fn pow(&self, mut a: u32, mut exp: u64) -> u32 {
        let mut acc = 1;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = self.mul(acc, a);
            }
            a = self.mul(a, a);
            exp >>= 1;
        }
        acc
    }
}

/// Coefficient vectors of length `len` over `Z/p`, ordered lexicographically
/// with the constant term as the most significant key.
fn lex_vectors(p: u32, len: usize) -> impl Iterator<Item = Vec<u32>> {
    let total = (p as u64).pow(len as u32);
    (0..total).map(move |mut idx| {
        let mut v = vec![0u32; len];
        for slot in v.iter_mut().rev() {
            *slot = (idx % p as u64) as u32;
            idx /= p as u64;
        }
        v
    })
}

fn smallest_irreducible(p: u32, e: usize) -> Vec<u32> {
    lex_vectors(p, e)
        .map(|mut low| {
            low.push(1);
            low
        })
        .find(|f| is_irreducible(p, f))
        .expect("an irreducible polynomial exists in every degree")
}

/// Trial division by every monic polynomial of degree `1..=deg/2`.
fn is_irreducible(p: u32, f: &[u32]) -> bool {
    let deg = f.len() - 1;
    if f[0] == 0 {
        return deg == 1;
    }
    for d in 1..=deg / 2 {
        for mut low in lex_vectors(p, d) {
            low.push(1);
            if poly_rem_is_zero(p, f, &low) {
                return false;
            }
        }
    }
    true
}

fn poly_rem_is_zero(p: u32, f: &[u32], g: &[u32]) -> bool {
    let p = p as u64;
    let mut r: Vec<u64> = f.iter().map(|&c| c as u64).collect();
    let dg = g.len() - 1;
    for d in (dg..r.len()).rev() {
        let c = r[d];
        if c == 0 {
            continue;
        }
        for (k, &gk) in g.iter().enumerate() {
            let t = d - dg + k;
            r[t] = (r[t] + (p - c) * gk as u64) % p;
        }
    }
    r[..dg].iter().all(|&c| c == 0)
}

fn smallest_primitive(raw: &RawArith<'_>, q: u32) -> u32 {
    let order = (q - 1) as u64;
    if order == 1 {
        return 1;
    }
    let factors = prime_factors(order);
    lex_vectors(raw.p, raw.e)
        .map(|c| raw.pack(&c))
        .filter(|&a| a != 0)
        .find(|&a| factors.iter().all(|&r| raw.pow(a, order / r) != 1))
        .expect("the multiplicative group is cyclic")
}

/// Builds GF(q^m) for `m = ord_n(q)` and returns it with an element of
/// multiplicative order exactly `n`, namely `g^((q^m - 1) / n)`.
pub fn nth_root_of_unity(q: u64, n: u64) -> Result<(Field, Elem)> {
    let (p, e) = prime_power(q)?;
    let m = order_of(q, n)?;
    let ext = Field::new(p, e * m)?;
    let order = (ext.order() - 1) as u64;
    let beta = ext.exp(order / n);
    Ok((ext, beta))
}
