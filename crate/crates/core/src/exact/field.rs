//! Finite fields GF(p^e).
//!
//! Elements are stored as `u32` integers whose base-`p` digits are the
//! coefficients (lowest degree first) of a polynomial reduced modulo the
//! field's fixed modulus. For `e = 1` this is just the residue mod `p`.
//!
//! The modulus for each `(p, e)` is fixed once: a Conway polynomial from
//! [`CONWAY_TABLE`] when one is listed, otherwise the lexicographically
//! smallest monic primitive polynomial of degree `e`. Fixing it keeps every
//! serialized coefficient reproducible.

use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};

/// A field element in the digit encoding described in the module docs.
pub type Elem = u32;

/// Largest field order supported for extension fields (log tables are built).
pub const MAX_EXTENSION_ORDER: u32 = 1 << 20;

/// Conway polynomials used as canonical moduli, coefficients lowest degree
/// first (monic, so the last entry is 1).
pub const CONWAY_TABLE: &[(u32, u32, &[u32])] = &[
    (2, 2, &[1, 1, 1]),
    (2, 3, &[1, 1, 0, 1]),
    (2, 4, &[1, 1, 0, 0, 1]),
    (2, 5, &[1, 0, 1, 0, 0, 1]),
    (2, 6, &[1, 1, 0, 1, 1, 0, 1]),
    (2, 7, &[1, 1, 0, 0, 0, 0, 0, 1]),
    (2, 8, &[1, 0, 1, 1, 1, 0, 0, 0, 1]),
    (3, 2, &[2, 2, 1]),
    (3, 3, &[1, 2, 0, 1]),
    (3, 4, &[2, 0, 0, 2, 1]),
    (3, 5, &[1, 2, 0, 0, 0, 1]),
    (3, 6, &[2, 2, 1, 0, 2, 0, 1]),
    (5, 2, &[2, 4, 1]),
    (5, 3, &[3, 3, 0, 1]),
    (5, 4, &[2, 4, 4, 0, 1]),
    (7, 2, &[3, 6, 1]),
    (7, 3, &[4, 0, 6, 1]),
];

/// The field descriptor: characteristic, degree, modulus and arithmetic tables.
///
/// Cloning is cheap (shared tables). Two descriptors are equal iff they have
/// the same `(p, e)`; the modulus is a function of `(p, e)`.
#[derive(Clone)]
pub struct Field {
    inner: Arc<FieldInner>,
}

struct FieldInner {
    p: u32,
    e: u32,
    q: u32,
    modulus: Vec<u32>,
    // Extension fields only: exp[i] = x^i for i in 0..2(q-1), log[a] for a != 0.
    exp: Vec<u32>,
    log: Vec<u32>,
    // Extension fields only: frob[a] = a^p.
    frob: Vec<u32>,
    // Optional full addition table for small odd-characteristic extension fields.
    add: Vec<u32>,
}

impl PartialEq for Field {
    fn eq(&self, other: &Self) -> bool {
        self.inner.p == other.inner.p && self.inner.e == other.inner.e
    }
}

impl Eq for Field {}

impl fmt::Debug for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GF({}^{})", self.inner.p, self.inner.e)
    }
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.inner.e == 1 {
            write!(f, "GF({})", self.inner.p)
        } else {
            write!(f, "GF({}^{})", self.inner.p, self.inner.e)
        }
    }
}

fn is_prime(p: u32) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= p as u64 {
        if p as u64 % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// Multiplies two digit-encoded polynomials modulo `modulus` over GF(p).
fn poly_mulmod(a: u32, b: u32, p: u32, e: u32, modulus: &[u32]) -> u32 {
    let e = e as usize;
    let da = digits(a, p, e);
    let db = digits(b, p, e);
    let mut prod = vec![0u64; 2 * e];
    for (i, &x) in da.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in db.iter().enumerate() {
            prod[i + j] = (prod[i + j] + x as u64 * y as u64) % p as u64;
        }
    }
    // reduce from the top using the monic modulus
    for deg in (e..2 * e).rev() {
        let c = prod[deg];
        if c == 0 {
            continue;
        }
        for (k, &m) in modulus.iter().enumerate().take(e) {
            let idx = deg - e + k;
            prod[idx] = (prod[idx] + (p as u64 - c) * m as u64) % p as u64;
        }
        prod[deg] = 0;
    }
    undigits(&prod[..e].iter().map(|&x| x as u32).collect::<Vec<_>>(), p)
}

fn digits(mut a: u32, p: u32, e: usize) -> Vec<u32> {
    let mut out = vec![0; e];
    for slot in out.iter_mut() {
        *slot = a % p;
        a /= p;
    }
    out
}

fn undigits(ds: &[u32], p: u32) -> u32 {
    ds.iter().rev().fold(0u32, |acc, &d| acc * p + d)
}

/// Order of the class of `x` modulo `modulus`, or `None` if `x` is not a unit
/// of full order `q - 1`.
fn x_is_primitive(p: u32, e: u32, modulus: &[u32]) -> bool {
    let q = p.pow(e);
    let x = p; // the polynomial "x" in digit encoding
    let mut acc = 1u32;
    for k in 1..q {
        acc = poly_mulmod(acc, x, p, e, modulus);
        if acc == 1 {
            return k == q - 1;
        }
        if acc == 0 {
            return false;
        }
    }
    false
}

fn search_primitive(p: u32, e: u32) -> Vec<u32> {
    // Enumerate monic polynomials of degree e by their lower coefficients.
    let count = p.pow(e);
    for low in 0..count {
        let mut m = digits(low, p, e as usize);
        if m[0] == 0 {
            continue;
        }
        m.push(1);
        if x_is_primitive(p, e, &m) {
            return m;
        }
    }
    unreachable!("a primitive polynomial of every degree exists")
}

impl Field {
    /// Builds GF(p^e).
    pub fn new(p: u32, e: u32) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::InvalidField(format!("{p} is not prime")));
        }
        if e == 0 {
            return Err(Error::InvalidField("extension degree must be >= 1".into()));
        }
        if e == 1 {
            if p > (1 << 31) {
                return Err(Error::InvalidField(format!("prime {p} too large")));
            }
            return Ok(Field {
                inner: Arc::new(FieldInner {
                    p,
                    e,
                    q: p,
                    modulus: vec![0, 1],
                    exp: Vec::new(),
                    log: Vec::new(),
                    frob: Vec::new(),
                    add: Vec::new(),
                }),
            });
        }
        let q = (p as u64).checked_pow(e).filter(|&q| q <= MAX_EXTENSION_ORDER as u64);
        let q = match q {
            Some(q) => q as u32,
            None => {
                return Err(Error::InvalidField(format!(
                    "GF({p}^{e}) exceeds the supported order {MAX_EXTENSION_ORDER}"
                )))
            }
        };
        let modulus = CONWAY_TABLE
            .iter()
            .find(|(pp, ee, _)| *pp == p && *ee == e)
            .map(|(_, _, m)| m.to_vec())
            .unwrap_or_else(|| search_primitive(p, e));
        let n = (q - 1) as usize;
        let mut exp = vec![0u32; 2 * n];
        let mut log = vec![0u32; q as usize];
        let mut acc = 1u32;
        for i in 0..n {
            exp[i] = acc;
            log[acc as usize] = i as u32;
            acc = poly_mulmod(acc, p, p, e, &modulus);
        }
        if acc != 1 {
            return Err(Error::InvalidField(format!(
                "modulus for GF({p}^{e}) is not primitive"
            )));
        }
        for i in n..2 * n {
            exp[i] = exp[i - n];
        }
        let mut inner = FieldInner {
            p,
            e,
            q,
            modulus,
            exp,
            log,
            frob: Vec::new(),
            add: Vec::new(),
        };
        if p != 2 && q <= 1024 {
            let mut add = vec![0u32; (q * q) as usize];
            for a in 0..q {
                for b in 0..q {
                    add[(a * q + b) as usize] = digit_add(a, b, p, e);
                }
            }
            inner.add = add;
        }
        let field = Field {
            inner: Arc::new(inner),
        };
        let frob: Vec<u32> = (0..q).map(|a| field.pow(a, p as u64)).collect();
        let mut inner = Arc::try_unwrap(field.inner).ok().expect("unique");
        inner.frob = frob;
        Ok(Field {
            inner: Arc::new(inner),
        })
    }

    /// The prime field GF(p).
    pub fn prime(p: u32) -> Result<Self> {
        Field::new(p, 1)
    }

    pub fn p(&self) -> u32 {
        self.inner.p
    }

    pub fn e(&self) -> u32 {
        self.inner.e
    }

    /// Field order `p^e`.
    pub fn q(&self) -> u32 {
        self.inner.q
    }

    /// Monic modulus, lowest degree first.
    pub fn modulus(&self) -> &[u32] {
        &self.inner.modulus
    }

    pub fn is_prime_field(&self) -> bool {
        self.inner.e == 1
    }

    #[inline]
    pub fn zero(&self) -> Elem {
        0
    }

    #[inline]
    pub fn one(&self) -> Elem {
        1
    }

    /// Reduces an integer into the prime subfield.
    pub fn from_int(&self, v: i64) -> Elem {
        v.rem_euclid(self.inner.p as i64) as Elem
    }

    /// Builds an element from polynomial coefficients (lowest degree first).
    pub fn from_poly(&self, coeffs: &[i64]) -> Result<Elem> {
        if coeffs.len() > self.inner.e as usize {
            return Err(Error::MalformedDocument(format!(
                "coefficient list of length {} exceeds extension degree {}",
                coeffs.len(),
                self.inner.e
            )));
        }
        let ds: Vec<u32> = coeffs
            .iter()
            .map(|&c| c.rem_euclid(self.inner.p as i64) as u32)
            .collect();
        Ok(undigits(&ds, self.inner.p))
    }

    /// Polynomial coefficients of `x`, lowest degree first, length `e`.
    pub fn to_poly(&self, x: Elem) -> Vec<u32> {
        digits(x, self.inner.p, self.inner.e as usize)
    }

    /// All field elements, `0..q`.
    pub fn elements(&self) -> impl Iterator<Item = Elem> {
        0..self.inner.q
    }

    #[inline]
    pub fn add(&self, a: Elem, b: Elem) -> Elem {
        let inner = &*self.inner;
        if inner.p == 2 {
            return a ^ b;
        }
        if inner.e == 1 {
            let s = a as u64 + b as u64;
            let p = inner.p as u64;
            return (if s >= p { s - p } else { s }) as Elem;
        }
        if !inner.add.is_empty() {
            return inner.add[(a * inner.q + b) as usize];
        }
        digit_add(a, b, inner.p, inner.e)
    }

    #[inline]
    pub fn neg(&self, a: Elem) -> Elem {
        let inner = &*self.inner;
        if inner.p == 2 || a == 0 {
            return a;
        }
        if inner.e == 1 {
            return inner.p - a;
        }
        let ds: Vec<u32> = digits(a, inner.p, inner.e as usize)
            .into_iter()
            .map(|d| if d == 0 { 0 } else { inner.p - d })
            .collect();
        undigits(&ds, inner.p)
    }

    #[inline]
    pub fn sub(&self, a: Elem, b: Elem) -> Elem {
        self.add(a, self.neg(b))
    }

    #[inline]
    pub fn mul(&self, a: Elem, b: Elem) -> Elem {
        if a == 0 || b == 0 {
            return 0;
        }
        let inner = &*self.inner;
        if inner.e == 1 {
            return ((a as u64 * b as u64) % inner.p as u64) as Elem;
        }
        inner.exp[(inner.log[a as usize] + inner.log[b as usize]) as usize]
    }

    /// Multiplicative inverse; `None` for zero.
    pub fn inv(&self, a: Elem) -> Option<Elem> {
        if a == 0 {
            return None;
        }
        let inner = &*self.inner;
        if inner.e == 1 {
            return Some(self.pow(a, inner.p as u64 - 2));
        }
        let n = inner.q - 1;
        Some(inner.exp[((n - inner.log[a as usize]) % n) as usize])
    }

    pub fn div(&self, a: Elem, b: Elem) -> Option<Elem> {
        self.inv(b).map(|ib| self.mul(a, ib))
    }

    pub fn pow(&self, mut base: Elem, mut exp: u64) -> Elem {
        let mut acc = 1;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            exp >>= 1;
        }
        acc
    }

    /// `Fr^n(x) = x^(p^n)`; `n` may be negative and is taken modulo `e`.
    #[inline]
    pub fn frobenius(&self, x: Elem, n: i64) -> Elem {
        let inner = &*self.inner;
        if inner.e == 1 || x == 0 {
            return x;
        }
        let k = n.rem_euclid(inner.e as i64);
        let mut y = x;
        for _ in 0..k {
            y = inner.frob[y as usize];
        }
        y
    }

    /// Applies `Fr^n` entrywise.
    pub fn frobenius_vec(&self, v: &[Elem], n: i64) -> Vec<Elem> {
        if self.is_prime_field() || n.rem_euclid(self.e() as i64) == 0 {
            return v.to_vec();
        }
        v.iter().map(|&x| self.frobenius(x, n)).collect()
    }

    /// Multiply-accumulate: `acc + a * b`.
    #[inline]
    pub fn mul_add(&self, acc: Elem, a: Elem, b: Elem) -> Elem {
        self.add(acc, self.mul(a, b))
    }

    /// Uniformly random element.
    pub fn random<R: rand::Rng + ?Sized>(&self, rng: &mut R) -> Elem {
        rng.gen_range(0..self.inner.q)
    }

    /// Uniformly random non-zero element.
    pub fn random_nonzero<R: rand::Rng + ?Sized>(&self, rng: &mut R) -> Elem {
        rng.gen_range(1..self.inner.q)
    }
}

fn digit_add(a: Elem, b: Elem, p: u32, e: u32) -> Elem {
    let (mut a, mut b) = (a, b);
    let mut out = 0u32;
    let mut scale = 1u32;
    for _ in 0..e {
        let d = (a % p + b % p) % p;
        out += d * scale;
        scale = scale.wrapping_mul(p);
        a /= p;
        b /= p;
    }
    out
}
