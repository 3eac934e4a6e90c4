//! Arithmetic in GF(p^n).
//!
//! Elements are indices in `[0, q)`: the polynomial `c_0 + c_1 x + ... + c_{n-1} x^{n-1}`
//! has index `sum c_i p^i`. Index 0 is the additive identity and index 1 the
//! multiplicative identity. The defining modulus is the lexicographically
//! smallest monic irreducible of degree `n` (coefficients compared from the
//! constant term upwards), so element indices are stable across machines.

use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};

/// Largest supported field order.
pub const MAX_ORDER: u32 = 1 << 20;
/// Largest supported extension degree.
pub const MAX_DEGREE: u32 = 4;

/// A field element, identified by its canonical index.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Fe(pub u32);

impl Fe {
    pub const ZERO: Fe = Fe(0);
    pub const ONE: Fe = Fe(1);

    #[inline]
    pub fn index(self) -> u32 {
        self.0
    }

    #[inline]
    pub fn is_zero(self) -> bool {
        self.0 == 0
    }
}

impl fmt::Display for Fe {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// Arithmetic operations addressable by name, see [`FieldSpec::arith`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Sub,
    Neg,
    Mul,
    Inv,
    Pow(u64),
}

struct Tables {
    // exp[i] = g^i for i in 0..q-1, log[exp[i]] = i; log[0] unused.
    exp: Vec<u32>,
    log: Vec<u32>,
}

/// The finite field GF(p^n) together with lookup tables for multiplication.
///
/// Cloning is cheap; the tables are shared.
#[derive(Clone)]
pub struct FieldSpec {
    p: u32,
    n: u32,
    q: u32,
    modulus: Vec<u32>,
    tables: Arc<Tables>,
}

impl fmt::Debug for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FieldSpec")
            .field("p", &self.p)
            .field("n", &self.n)
            .field("q", &self.q)
            .field("modulus", &self.modulus)
            .finish()
    }
}

impl PartialEq for FieldSpec {
    fn eq(&self, other: &Self) -> bool {
        self.p == other.p && self.n == other.n && self.modulus == other.modulus
    }
}

impl Eq for FieldSpec {}

pub fn is_prime(p: u32) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2u32;
    while d.saturating_mul(d) <= p {
        if p % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// Returns `Some((p, n))` when `q = p^n` for a prime `p`.
pub fn prime_power(q: u32) -> Option<(u32, u32)> {
    if q < 2 {
        return None;
    }
    let p = (2..=q).find(|d| q % d == 0)?;
    let mut rest = q;
    let mut n = 0;
    while rest % p == 0 {
        rest /= p;
        n += 1;
    }
    (rest == 1).then_some((p, n))
}

fn prime_factors(mut m: u32) -> Vec<u32> {
    let mut out = Vec::new();
    let mut d = 2u32;
    while d.saturating_mul(d) <= m {
        if m % d == 0 {
            out.push(d);
            while m % d == 0 {
                m /= d;
            }
        }
        d += 1;
    }
    if m > 1 {
        out.push(m);
    }
    out
}

/// Polynomial helpers over GF(p), coefficients low degree first.
mod poly {
    pub fn eval(coeffs: &[u32], x: u32, p: u32) -> u32 {
        coeffs
            .iter()
            .rev()
            .fold(0u64, |acc, &c| (acc * x as u64 + c as u64) % p as u64) as u32
    }

    pub fn has_root(coeffs: &[u32], p: u32) -> bool {
        (0..p).any(|x| eval(coeffs, x, p) == 0)
    }

    /// Remainder of `a` modulo the monic polynomial `m`.
    pub fn rem_monic(a: &[u32], m: &[u32], p: u32) -> Vec<u32> {
        let dm = m.len() - 1;
        let mut r: Vec<u64> = a.iter().map(|&c| c as u64).collect();
        let p = p as u64;
        while r.len() > dm {
            let lead = r.pop().unwrap() % p;
            if lead != 0 {
                let shift = r.len() - dm;
                for (i, &c) in m[..dm].iter().enumerate() {
                    let sub = lead * c as u64 % p;
                    r[shift + i] = (r[shift + i] + p - sub) % p;
                }
            }
        }
        r.into_iter().map(|c| (c % p) as u32).collect()
    }

    pub fn divides(m: &[u32], a: &[u32], p: u32) -> bool {
        rem_monic(a, m, p).iter().all(|&c| c == 0)
    }

    /// Monic irreducible quadratics `x^2 + b x + c` over GF(p).
    pub fn irreducible_quadratics(p: u32) -> Vec<Vec<u32>> {
        let mut out = Vec::new();
        for c in 0..p {
            for b in 0..p {
                let f = vec![c, b, 1];
                if !has_root(&f, p) {
                    out.push(f);
                }
            }
        }
        out
    }

    /// Irreducibility test for monic polynomials of degree at most 4.
    pub fn is_irreducible(f: &[u32], p: u32) -> bool {
        let deg = f.len() - 1;
        match deg {
            0 => false,
            1 => true,
            2 | 3 => !has_root(f, p),
            4 => {
                !has_root(f, p)
                    && !irreducible_quadratics(p)
                        .iter()
                        .any(|g| divides(g, f, p))
            }
            _ => unreachable!("degree capped at 4"),
        }
    }
}

pub use poly::is_irreducible as is_irreducible_poly;

/// Builds GF(p^n) with the lexicographically smallest monic irreducible modulus.
pub fn make_field(p: u32, n: u32) -> Result<FieldSpec> {
    FieldSpec::new(p, n)
}

impl FieldSpec {
    pub fn new(p: u32, n: u32) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        if n == 0 || n > MAX_DEGREE {
            return Err(Error::DegreeOutOfRange(n));
        }
        let q = (p as u64).pow(n);
        if q > MAX_ORDER as u64 {
            return Err(Error::FieldTooLarge { p, n });
        }
        let q = q as u32;
        let modulus = if n == 1 {
            vec![0, 1]
        } else {
            smallest_irreducible(p, n).ok_or(Error::NoIrreducibleFound { p, n })?
        };
        let tables = Arc::new(build_tables(p, n, q, &modulus)?);
        Ok(FieldSpec {
            p,
            n,
            q,
            modulus,
            tables,
        })
    }

    /// Builds the field of order `q`, which must be a prime power.
    pub fn of_order(q: u32) -> Result<Self> {
        match prime_power(q) {
            Some((p, n)) => Self::new(p, n),
            None => Err(Error::InvalidInput(format!("{q} is not a prime power"))),
        }
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn q(&self) -> u32 {
        self.q
    }

    /// Coefficients of the defining polynomial, constant term first.
    pub fn modulus(&self) -> &[u32] {
        &self.modulus
    }

    pub fn q_mod4(&self) -> u32 {
        self.q % 4
    }

    pub fn is_odd(&self) -> bool {
        self.p != 2
    }

    pub fn elem(&self, index: u32) -> Result<Fe> {
        if index < self.q {
            Ok(Fe(index))
        } else {
            Err(Error::FieldMismatch { index, q: self.q })
        }
    }

    pub fn check(&self, e: Fe) -> Result<()> {
        self.elem(e.0).map(|_| ())
    }

    pub fn contains(&self, e: Fe) -> bool {
        e.0 < self.q
    }

    /// Image of an integer in the prime subfield.
    pub fn from_int(&self, v: i64) -> Fe {
        Fe(v.rem_euclid(self.p as i64) as u32)
    }

    /// Polynomial coefficients `c_0..c_{n-1}` of `e`.
    pub fn digits(&self, e: Fe) -> Vec<u32> {
        let mut v = e.0;
        (0..self.n)
            .map(|_| {
                let d = v % self.p;
                v /= self.p;
                d
            })
            .collect()
    }

    pub fn from_digits(&self, digits: &[u32]) -> Fe {
        Fe(digits.iter().rev().fold(0, |acc, &d| acc * self.p + d % self.p))
    }

    /// All elements in index order.
    pub fn elements(&self) -> impl Iterator<Item = Fe> + Clone {
        (0..self.q).map(Fe)
    }

    pub fn nonzero_elements(&self) -> impl Iterator<Item = Fe> + Clone {
        (1..self.q).map(Fe)
    }

    #[inline]
    pub fn add(&self, a: Fe, b: Fe) -> Fe {
        if self.n == 1 {
            let s = a.0 + b.0;
            return Fe(if s >= self.p { s - self.p } else { s });
        }
        let (mut x, mut y) = (a.0, b.0);
        let mut out = 0;
        let mut place = 1;
        for _ in 0..self.n {
            out += ((x % self.p + y % self.p) % self.p) * place;
            x /= self.p;
            y /= self.p;
            place *= self.p;
        }
        Fe(out)
    }

    #[inline]
    pub fn neg(&self, a: Fe) -> Fe {
        if self.n == 1 {
            return Fe(if a.0 == 0 { 0 } else { self.p - a.0 });
        }
        let mut x = a.0;
        let mut out = 0;
        let mut place = 1;
        for _ in 0..self.n {
            out += ((self.p - x % self.p) % self.p) * place;
            x /= self.p;
            place *= self.p;
        }
        Fe(out)
    }

    #[inline]
    pub fn sub(&self, a: Fe, b: Fe) -> Fe {
        self.add(a, self.neg(b))
    }

    #[inline]
    pub fn mul(&self, a: Fe, b: Fe) -> Fe {
        if a.0 == 0 || b.0 == 0 {
            return Fe::ZERO;
        }
        let t = &self.tables;
        let order = self.q - 1;
        let s = t.log[a.0 as usize] + t.log[b.0 as usize];
        Fe(t.exp[(if s >= order { s - order } else { s }) as usize])
    }

    pub fn inv(&self, a: Fe) -> Result<Fe> {
        if a.0 == 0 {
            return Err(Error::DivisionByZero);
        }
        let t = &self.tables;
        let order = self.q - 1;
        let l = t.log[a.0 as usize];
        Ok(Fe(t.exp[((order - l) % order) as usize]))
    }

    pub fn div(&self, a: Fe, b: Fe) -> Result<Fe> {
        Ok(self.mul(a, self.inv(b)?))
    }

    /// Square-and-multiply exponentiation; `pow(a, 0) = 1` including `a = 0`.
    pub fn pow(&self, a: Fe, mut e: u64) -> Fe {
        let mut base = a;
        let mut acc = Fe::ONE;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    #[inline]
    pub fn square(&self, a: Fe) -> Fe {
        self.mul(a, a)
    }

    /// Euler's criterion for odd q; every element is a square when p = 2.
    pub fn is_square(&self, e: Fe) -> bool {
        if e.is_zero() || self.p == 2 {
            return true;
        }
        self.pow(e, (self.q as u64 - 1) / 2) == Fe::ONE
    }

    /// Dispatches an [`ArithOp`] over a slice of operands.
    pub fn arith(&self, op: ArithOp, operands: &[Fe]) -> Result<Fe> {
        let want = match op {
            ArithOp::Add | ArithOp::Sub | ArithOp::Mul => 2,
            ArithOp::Neg | ArithOp::Inv | ArithOp::Pow(_) => 1,
        };
        if operands.len() != want {
            return Err(Error::Arity {
                op: op.name(),
                expected: want,
                got: operands.len(),
            });
        }
        for &o in operands {
            self.check(o)?;
        }
        Ok(match op {
            ArithOp::Add => self.add(operands[0], operands[1]),
            ArithOp::Sub => self.sub(operands[0], operands[1]),
            ArithOp::Mul => self.mul(operands[0], operands[1]),
            ArithOp::Neg => self.neg(operands[0]),
            ArithOp::Inv => self.inv(operands[0])?,
            ArithOp::Pow(e) => self.pow(operands[0], e),
        })
    }

    /// Multiplication by schoolbook polynomial product and reduction; used to
    /// build the tables and as an independent check of them.
    pub fn mul_reference(&self, a: Fe, b: Fe) -> Fe {
        if self.n == 1 {
            return Fe(((a.0 as u64 * b.0 as u64) % self.p as u64) as u32);
        }
        let d = mul_poly(self.p, &self.modulus, &self.digits(a), &self.digits(b));
        self.from_digits(&d)
    }
}

impl ArithOp {
    pub fn name(self) -> &'static str {
        match self {
            ArithOp::Add => "add",
            ArithOp::Sub => "sub",
            ArithOp::Neg => "neg",
            ArithOp::Mul => "mul",
            ArithOp::Inv => "inv",
            ArithOp::Pow(_) => "pow",
        }
    }
}

fn mul_poly(p: u32, modulus: &[u32], a: &[u32], b: &[u32]) -> Vec<u32> {
    let mut prod = vec![0u32; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        for (j, &y) in b.iter().enumerate() {
            prod[i + j] = ((prod[i + j] as u64 + x as u64 * y as u64) % p as u64) as u32;
        }
    }
    let mut r = poly::rem_monic(&prod, modulus, p);
    r.resize(modulus.len() - 1, 0);
    r
}

/// Candidates are ordered by `(c_0, c_1, ..., c_{n-1})`.
fn smallest_irreducible(p: u32, n: u32) -> Option<Vec<u32>> {
    let count = (p as u64).pow(n);
    (0..count).find_map(|key| {
        // c_0 is the most significant digit of the key.
        let mut coeffs = vec![0u32; n as usize + 1];
        let mut k = key;
        for i in (0..n as usize).rev() {
            coeffs[i] = (k % p as u64) as u32;
            k /= p as u64;
        }
        coeffs[n as usize] = 1;
        poly::is_irreducible(&coeffs, p).then_some(coeffs)
    })
}

fn build_tables(p: u32, n: u32, q: u32, modulus: &[u32]) -> Result<Tables> {
    let order = q - 1;
    let to_digits = |mut v: u32| -> Vec<u32> {
        (0..n)
            .map(|_| {
                let d = v % p;
                v /= p;
                d
            })
            .collect()
    };
    let from_digits = |d: &[u32]| -> u32 { d.iter().rev().fold(0, |acc, &x| acc * p + x) };
    let mul = |a: u32, b: u32| -> u32 {
        if n == 1 {
            ((a as u64 * b as u64) % p as u64) as u32
        } else {
            from_digits(&mul_poly(p, modulus, &to_digits(a), &to_digits(b)))
        }
    };
    let pow = |a: u32, mut e: u32| -> u32 {
        let (mut base, mut acc) = (a, 1u32);
        while e > 0 {
            if e & 1 == 1 {
                acc = mul(acc, base);
            }
            base = mul(base, base);
            e >>= 1;
        }
        acc
    };
    let factors = prime_factors(order);
    let generator = (1..q)
        .find(|&g| factors.iter().all(|&r| pow(g, order / r) != 1) && (order > 1 || g == 1))
        .ok_or(Error::NoIrreducibleFound { p, n })?;
    let mut exp = vec![0u32; order as usize];
    let mut log = vec![0u32; q as usize];
    let mut acc = 1u32;
    for (i, slot) in exp.iter_mut().enumerate() {
        *slot = acc;
        if log[acc as usize] != 0 || (acc == 1 && i != 0) {
            return Err(Error::InvariantFailure(format!(
                "element {generator} is not a generator of GF({q})"
            )));
        }
        log[acc as usize] = i as u32;
        acc = mul(acc, generator);
    }
    Ok(Tables { exp, log })
}
