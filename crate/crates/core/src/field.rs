//! Arithmetic in GF(p^e) over a fixed polynomial basis.
//!
//! An element `c_0 + c_1 x + ... + c_{e-1} x^{e-1}` is encoded as the integer
//! `c_0 + c_1 p + ... + c_{e-1} p^{e-1}`, so encodings range over `0..q` and
//! zero encodes the additive identity. Multiplication goes through exp/log
//! tables built from a primitive element once, at construction.

use std::fmt;
use std::sync::Arc;

use thiserror::Error;

/// Largest supported field order. Log tables are dense over the field.
pub const MAX_ORDER: u64 = 1 << 16;

/// Addition tables are precomputed up to this order.
const ADD_TABLE_MAX: u32 = 256;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FieldError {
    #[error("characteristic {0} is not prime")]
    NotPrime(u32),
    #[error("extension degree must be at least 1")]
    ZeroDegree,
    #[error("{0} is not a prime power")]
    NotPrimePower(u64),
    #[error("field order {0} exceeds the supported maximum {MAX_ORDER}")]
    TooLarge(u64),
    #[error("modulus must have degree {expected}, got {got}")]
    ModulusDegree { expected: u32, got: usize },
    #[error("modulus must be monic")]
    ModulusNotMonic,
    #[error("modulus coefficient {0} is not reduced modulo p")]
    ModulusCoefficient(u32),
    #[error("modulus {0:?} is reducible over GF(p)")]
    ReducibleModulus(Vec<u32>),
    #[error("division by zero")]
    DivisionByZero,
    #[error("element encoding {enc} is outside GF({q})")]
    OutOfRange { enc: u32, q: u32 },
}

/// A field element, identified by its base-p coefficient encoding.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Elem(pub u32);

impl Elem {
    pub const ZERO: Elem = Elem(0);
    pub const ONE: Elem = Elem(1);

    #[inline]
    pub fn enc(self) -> u32 {
        self.0
    }

    #[inline]
    pub fn is_zero(self) -> bool {
        self.0 == 0
    }
}

impl fmt::Display for Elem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Sub,
    Mul,
    Div,
}

#[derive(Debug)]
struct Tables {
    exp: Vec<u32>,
    log: Vec<u32>,
    add: Option<Vec<u32>>,
}

/// GF(q) with q = p^e, a fixed monic irreducible modulus and a fixed
/// primitive element. Cloning is cheap; the tables are shared.
#[derive(Clone)]
pub struct Field {
    p: u32,
    e: u32,
    q: u32,
    modulus: Vec<u32>,
    alpha: Elem,
    tables: Arc<Tables>,
}

impl fmt::Debug for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Field")
            .field("p", &self.p)
            .field("e", &self.e)
            .field("modulus", &self.modulus)
            .field("alpha", &self.alpha)
            .finish()
    }
}

impl PartialEq for Field {
    fn eq(&self, other: &Self) -> bool {
        self.p == other.p && self.e == other.e && self.modulus == other.modulus
    }
}

impl Eq for Field {}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// Splits `q` into `(p, e)` with `q = p^e`.
pub fn prime_power(q: u64) -> Result<(u32, u32), FieldError> {
    if q < 2 {
        return Err(FieldError::NotPrimePower(q));
    }
    let p = (2..=q).find(|d| q % d == 0).unwrap();
    let mut rest = q;
    let mut e = 0;
    while rest % p == 0 {
        rest /= p;
        e += 1;
    }
    if rest != 1 {
        return Err(FieldError::NotPrimePower(q));
    }
    Ok((p as u32, e))
}

// Dense polynomials over GF(p), low degree first, no trailing zeros.

fn trim(mut a: Vec<u32>) -> Vec<u32> {
    while a.last() == Some(&0) {
        a.pop();
    }
    a
}

fn inv_mod_p(a: u32, p: u32) -> u32 {
    // Fermat; p is prime and small.
    let mut result = 1u64;
    let mut base = a as u64 % p as u64;
    let mut exp = p - 2;
    while exp > 0 {
        if exp & 1 == 1 {
            result = result * base % p as u64;
        }
        base = base * base % p as u64;
        exp >>= 1;
    }
    result as u32
}

fn poly_rem(a: &[u32], b: &[u32], p: u32) -> Vec<u32> {
    let b = trim(b.to_vec());
    let mut r = trim(a.to_vec());
    let lead_inv = inv_mod_p(*b.last().unwrap(), p);
    while r.len() >= b.len() {
        let shift = r.len() - b.len();
        let factor = r.last().unwrap() * lead_inv % p;
        for (i, &bc) in b.iter().enumerate() {
            let sub = factor * bc % p;
            r[shift + i] = (r[shift + i] + p - sub) % p;
        }
        r = trim(r);
    }
    r
}

fn poly_mul(a: &[u32], b: &[u32], p: u32) -> Vec<u32> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![0u32; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        for (j, &y) in b.iter().enumerate() {
            out[i + j] = (out[i + j] + x * y) % p;
        }
    }
    trim(out)
}

/// Irreducibility by trial division against every monic polynomial of
/// degree 1..=deg/2.
pub fn is_irreducible(poly: &[u32], p: u32) -> bool {
    let poly = trim(poly.to_vec());
    let deg = match poly.len() {
        0 => return false,
        n => n - 1,
    };
    if deg == 0 {
        return false;
    }
    for d in 1..=deg / 2 {
        let count = (p as u64).pow(d as u32);
        for low in 0..count {
            let mut div = digits(low, p, d);
            div.push(1);
            if poly_rem(&poly, &div, p).is_empty() {
                return false;
            }
        }
    }
    true
}

fn digits(mut v: u64, p: u32, len: usize) -> Vec<u32> {
    let mut out = Vec::with_capacity(len);
    for _ in 0..len {
        out.push((v % p as u64) as u32);
        v /= p as u64;
    }
    out
}

/// Smallest monic irreducible of degree `e`, comparing coefficient lists
/// low degree first.
pub fn smallest_irreducible(p: u32, e: u32) -> Vec<u32> {
    let e = e as usize;
    let count = (p as u64).pow(e as u32);
    for rank in 0..count {
        // c_0 is the most significant digit of the rank.
        let mut coeffs = digits(rank, p, e);
        coeffs.reverse();
        coeffs.push(1);
        if is_irreducible(&coeffs, p) {
            return coeffs;
        }
    }
    unreachable!("irreducible polynomials exist in every degree")
}

impl Field {
    /// Builds GF(p^e). Without a modulus the smallest irreducible is used.
    pub fn new(p: u32, e: u32, modulus: Option<Vec<u32>>) -> Result<Self, FieldError> {
        if !is_prime(p as u64) {
            return Err(FieldError::NotPrime(p));
        }
        if e == 0 {
            return Err(FieldError::ZeroDegree);
        }
        let q64 = (p as u64)
            .checked_pow(e)
            .filter(|&q| q <= MAX_ORDER)
            .ok_or(FieldError::TooLarge((p as u64).saturating_pow(e)))?;
        let q = q64 as u32;

        let modulus = match modulus {
            Some(m) => {
                if m.len() != e as usize + 1 {
                    return Err(FieldError::ModulusDegree {
                        expected: e,
                        got: m.len().saturating_sub(1),
                    });
                }
                if let Some(&c) = m.iter().find(|&&c| c >= p) {
                    return Err(FieldError::ModulusCoefficient(c));
                }
                if m[e as usize] != 1 {
                    return Err(FieldError::ModulusNotMonic);
                }
                if !is_irreducible(&m, p) {
                    return Err(FieldError::ReducibleModulus(m));
                }
                m
            }
            None => smallest_irreducible(p, e),
        };

        let mul_poly = |a: u32, b: u32| -> u32 {
            let pa = trim(digits(a as u64, p, e as usize));
            let pb = trim(digits(b as u64, p, e as usize));
            let r = poly_rem(&poly_mul(&pa, &pb, p), &modulus, p);
            r.iter().rev().fold(0u32, |acc, &c| acc * p + c)
        };

        // Smallest encoding of multiplicative order q - 1.
        let mut alpha = None;
        let mut exp = Vec::new();
        for cand in 1..q {
            exp.clear();
            let mut x = 1u32;
            loop {
                exp.push(x);
                x = mul_poly(x, cand);
                if x == 1 {
                    break;
                }
            }
            if exp.len() as u32 == q - 1 {
                alpha = Some(Elem(cand));
                break;
            }
        }
        let alpha = alpha.expect("the multiplicative group of a finite field is cyclic");

        let mut log = vec![0u32; q as usize];
        for (i, &v) in exp.iter().enumerate() {
            log[v as usize] = i as u32;
        }

        let add_digits = |a: u32, b: u32| -> u32 {
            let (mut a, mut b) = (a, b);
            let mut out = 0;
            let mut place = 1;
            while a > 0 || b > 0 {
                out += ((a % p + b % p) % p) * place;
                a /= p;
                b /= p;
                place *= p;
            }
            out
        };
        let add = (q <= ADD_TABLE_MAX).then(|| {
            let mut t = vec![0u32; (q * q) as usize];
            for a in 0..q {
                for b in 0..q {
                    t[(a * q + b) as usize] = add_digits(a, b);
                }
            }
            t
        });

        Ok(Field {
            p,
            e,
            q,
            modulus,
            alpha,
            tables: Arc::new(Tables { exp, log, add }),
        })
    }

    /// GF(q) with the default modulus.
    pub fn with_order(q: u64) -> Result<Self, FieldError> {
        let (p, e) = prime_power(q)?;
        Field::new(p, e, None)
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn e(&self) -> u32 {
        self.e
    }

    pub fn q(&self) -> u32 {
        self.q
    }

    /// Modulus coefficients, low degree first, including the leading 1.
    pub fn modulus(&self) -> &[u32] {
        &self.modulus
    }

    /// The fixed primitive element.
    pub fn alpha(&self) -> Elem {
        self.alpha
    }

    pub fn elements(&self) -> impl Iterator<Item = Elem> + Clone {
        (0..self.q).map(Elem)
    }

    pub fn nonzero(&self) -> impl Iterator<Item = Elem> + Clone {
        (1..self.q).map(Elem)
    }

    pub fn elem(&self, enc: u32) -> Result<Elem, FieldError> {
        if enc < self.q {
            Ok(Elem(enc))
        } else {
            Err(FieldError::OutOfRange { enc, q: self.q })
        }
    }

    /// Coefficients of `a` as a polynomial in the basis `1, x, ..., x^{e-1}`.
    pub fn coefficients(&self, a: Elem) -> Vec<u32> {
        digits(a.0 as u64, self.p, self.e as usize)
    }

    #[inline]
    pub fn add(&self, a: Elem, b: Elem) -> Elem {
        match &self.tables.add {
            Some(t) => Elem(t[(a.0 * self.q + b.0) as usize]),
            None => {
                let p = self.p;
                let (mut x, mut y) = (a.0, b.0);
                let mut out = 0;
                let mut place = 1;
                while x > 0 || y > 0 {
                    out += ((x % p + y % p) % p) * place;
                    x /= p;
                    y /= p;
                    place *= p;
                }
                Elem(out)
            }
        }
    }

    #[inline]
    pub fn neg(&self, a: Elem) -> Elem {
        let p = self.p;
        let mut x = a.0;
        let mut out = 0;
        let mut place = 1;
        while x > 0 {
            out += ((p - x % p) % p) * place;
            x /= p;
            place *= p;
        }
        Elem(out)
    }

    #[inline]
    pub fn sub(&self, a: Elem, b: Elem) -> Elem {
        self.add(a, self.neg(b))
    }

    #[inline]
    pub fn mul(&self, a: Elem, b: Elem) -> Elem {
        if a.0 == 0 || b.0 == 0 {
            return Elem::ZERO;
        }
        let t = &self.tables;
        let idx = (t.log[a.0 as usize] + t.log[b.0 as usize]) % (self.q - 1);
        Elem(t.exp[idx as usize])
    }

    pub fn inv(&self, a: Elem) -> Result<Elem, FieldError> {
        if a.is_zero() {
            return Err(FieldError::DivisionByZero);
        }
        let t = &self.tables;
        let idx = (self.q - 1 - t.log[a.0 as usize]) % (self.q - 1);
        Ok(Elem(t.exp[idx as usize]))
    }

    pub fn div(&self, a: Elem, b: Elem) -> Result<Elem, FieldError> {
        Ok(self.mul(a, self.inv(b)?))
    }

    pub fn pow(&self, a: Elem, exp: u64) -> Elem {
        if exp == 0 {
            return Elem::ONE;
        }
        if a.is_zero() {
            return Elem::ZERO;
        }
        let t = &self.tables;
        let order = (self.q - 1) as u64;
        let idx = (t.log[a.0 as usize] as u64 * (exp % order)) % order;
        Elem(t.exp[idx as usize])
    }

    /// Checked arithmetic on raw encodings: rejects encodings outside this
    /// field and division by zero.
    pub fn arith(&self, a: Elem, b: Elem, op: ArithOp) -> Result<Elem, FieldError> {
        self.elem(a.0)?;
        self.elem(b.0)?;
        Ok(match op {
            ArithOp::Add => self.add(a, b),
            ArithOp::Sub => self.sub(a, b),
            ArithOp::Mul => self.mul(a, b),
            ArithOp::Div => self.div(a, b)?,
        })
    }

    /// Multiplicative order of a nonzero element.
    pub fn order(&self, a: Elem) -> Option<u32> {
        if a.is_zero() {
            return None;
        }
        let mut x = a;
        let mut k = 1;
        while x != Elem::ONE {
            x = self.mul(x, a);
            k += 1;
        }
        Some(k)
    }

    /// Absolute trace `a + a^p + ... + a^{p^{e-1}}`, as an element of GF(p)
    /// (encoding in `0..p`).
    pub fn trace_to_prime(&self, a: Elem) -> u32 {
        let mut acc = Elem::ZERO;
        let mut x = a;
        for _ in 0..self.e {
            acc = self.add(acc, x);
            x = self.pow(x, self.p as u64);
        }
        debug_assert!(acc.0 < self.p);
        acc.0
    }

    /// Inner product of two vectors over this field.
    pub fn dot(&self, x: &[Elem], y: &[Elem]) -> Elem {
        x.iter()
            .zip(y)
            .fold(Elem::ZERO, |acc, (&a, &b)| self.add(acc, self.mul(a, b)))
    }

    /// Evaluates a polynomial with GF(p) coefficients (low degree first) at `x`.
    fn eval_prime_poly(&self, coeffs: &[u32], x: Elem) -> Elem {
        coeffs
            .iter()
            .rev()
            .fold(Elem::ZERO, |acc, &c| self.add(self.mul(acc, x), Elem(c)))
    }
}

/// GF(q^m) viewed as a degree-m extension of a given GF(q).
///
/// The big field is built independently over GF(p); the base field is
/// embedded by sending its generator `x` to the smallest root of the base
/// modulus.
#[derive(Clone, Debug)]
pub struct Extension {
    base: Field,
    big: Field,
    m: u32,
    embed: Vec<Elem>,
    project: Vec<Option<Elem>>,
}

impl Extension {
    pub fn new(base: &Field, m: u32) -> Result<Self, FieldError> {
        if m == 0 {
            return Err(FieldError::ZeroDegree);
        }
        let big = Field::new(base.p, base.e * m, None)?;
        let root = big
            .elements()
            .find(|&b| big.eval_prime_poly(base.modulus(), b).is_zero())
            .expect("GF(q^m) contains a root of every degree-e irreducible");
        let embed: Vec<Elem> = base
            .elements()
            .map(|a| {
                base.coefficients(a)
                    .iter()
                    .rev()
                    .fold(Elem::ZERO, |acc, &c| big.add(big.mul(acc, root), Elem(c)))
            })
            .collect();
        let mut project = vec![None; big.q as usize];
        for (i, &b) in embed.iter().enumerate() {
            project[b.0 as usize] = Some(Elem(i as u32));
        }
        Ok(Extension {
            base: base.clone(),
            big,
            m,
            embed,
            project,
        })
    }

    pub fn base(&self) -> &Field {
        &self.base
    }

    pub fn big(&self) -> &Field {
        &self.big
    }

    pub fn degree(&self) -> u32 {
        self.m
    }

    pub fn embed(&self, a: Elem) -> Elem {
        self.embed[a.0 as usize]
    }

    /// Inverse of [`Extension::embed`] on the subfield; `None` elsewhere.
    pub fn project(&self, b: Elem) -> Option<Elem> {
        self.project[b.0 as usize]
    }

    /// Relative trace `a + a^q + ... + a^{q^{m-1}}`, landing in the base field.
    pub fn trace_relative(&self, a: Elem) -> Elem {
        let mut acc = Elem::ZERO;
        let mut x = a;
        for _ in 0..self.m {
            acc = self.big.add(acc, x);
            x = self.big.pow(x, self.base.q as u64);
        }
        self.project(acc)
            .expect("relative trace is fixed by the q-Frobenius")
    }
}
