//! Finite fields GF(p^f) as GF(p)[x] modulo a fixed irreducible polynomial.
//!
//! Polynomials are coefficient vectors, constant term first. The defining
//! polynomial is the smallest monic irreducible of degree `f` when the
//! coefficient vectors are compared lexicographically from the constant term
//! up, so the same `(p, f)` always yields the same field.

use num_bigint::BigUint;
use serde::Serialize;

use crate::arith::{inv_mod, mul_mod, prime_divisors};

/// An element of GF(p^f): `f` coefficients in the polynomial basis.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(transparent)]
pub struct FieldElem(pub Vec<u64>);

#[derive(Clone, Debug)]
pub struct Gf {
    p: u64,
    f: usize,
    modulus: Vec<u64>,
}

fn trim(mut a: Vec<u64>) -> Vec<u64> {
    while a.last() == Some(&0) {
        a.pop();
    }
    a
}

pub(crate) fn poly_mul(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![0u64; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            out[i + j] = (out[i + j] + mul_mod(x, y, p)) % p;
        }
    }
    trim(out)
}

/// Remainder of `a` modulo a nonzero polynomial `m`.
pub(crate) fn poly_rem(a: &[u64], m: &[u64], p: u64) -> Vec<u64> {
    let m = trim(m.to_vec());
    let dm = m.len() - 1;
    let lead_inv = inv_mod(m[dm], p);
    let mut r = trim(a.to_vec());
    while r.len() > dm && !r.is_empty() {
        let shift = r.len() - 1 - dm;
        let c = mul_mod(*r.last().unwrap(), lead_inv, p);
        for (i, &mi) in m.iter().enumerate() {
            let t = mul_mod(c, mi, p);
            r[shift + i] = (r[shift + i] + p - t) % p;
        }
        r = trim(r);
    }
    r
}

fn poly_sub(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let n = a.len().max(b.len());
    let out = (0..n)
        .map(|i| {
            let x = a.get(i).copied().unwrap_or(0);
            let y = b.get(i).copied().unwrap_or(0);
            (x + p - y) % p
        })
        .collect();
    trim(out)
}

fn poly_gcd(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let mut a = trim(a.to_vec());
    let mut b = trim(b.to_vec());
    while !b.is_empty() {
        let r = poly_rem(&a, &b, p);
        a = b;
        b = r;
    }
    a
}

/// `x^(p^k)` modulo `m`, by `k` successive p-th powers.
fn frobenius_x(m: &[u64], p: u64, k: usize) -> Vec<u64> {
    let mut cur = poly_rem(&[0, 1], m, p);
    for _ in 0..k {
        cur = poly_pow_mod(&cur, p, m, p);
    }
    cur
}

fn poly_pow_mod(base: &[u64], mut e: u64, m: &[u64], p: u64) -> Vec<u64> {
    let mut r = vec![1u64];
    let mut b = poly_rem(base, m, p);
    while e > 0 {
        if e & 1 == 1 {
            r = poly_rem(&poly_mul(&r, &b, p), m, p);
        }
        b = poly_rem(&poly_mul(&b, &b, p), m, p);
        e >>= 1;
    }
    r
}

/// Rabin's irreducibility test for a monic polynomial of degree `f` over GF(p).
pub fn is_irreducible(m: &[u64], p: u64) -> bool {
    let f = m.len() - 1;
    if f == 1 {
        return true;
    }
    if frobenius_x(m, p, f) != poly_rem(&[0, 1], m, p) {
        return false;
    }
    prime_divisors(f as u64).into_iter().all(|r| {
        let h = poly_sub(&frobenius_x(m, p, f / r as usize), &[0, 1], p);
        poly_gcd(m, &h, p).len() == 1
    })
}

/// Smallest monic irreducible polynomial of degree `f` over GF(p).
pub fn smallest_irreducible(p: u64, f: usize) -> Vec<u64> {
    let mut digits = vec![0u64; f];
    // for f > 1 anything divisible by x is reducible
    if f > 1 {
        digits[0] = 1;
    }
    loop {
        let mut cand = digits.clone();
        cand.push(1);
        if is_irreducible(&cand, p) {
            return cand;
        }
        // increment with the constant term as the most significant digit
        let mut i = f;
        loop {
            assert!(
                i > 0,
                "no irreducible polynomial of degree {f} over GF({p})"
            );
            i -= 1;
            digits[i] += 1;
            if digits[i] < p {
                break;
            }
            digits[i] = 0;
        }
    }
}

impl Gf {
    pub fn new(p: u64, f: usize) -> Self {
        assert!(f >= 1);
        Gf {
            p,
            f,
            modulus: smallest_irreducible(p, f),
        }
    }

    pub fn char(&self) -> u64 {
        self.p
    }

    pub fn degree(&self) -> usize {
        self.f
    }

    pub fn size(&self) -> BigUint {
        BigUint::from(self.p).pow(self.f as u32)
    }

    pub fn modulus(&self) -> &[u64] {
        &self.modulus
    }

    fn pad(&self, mut v: Vec<u64>) -> FieldElem {
        v.resize(self.f, 0);
        FieldElem(v)
    }

    pub fn zero(&self) -> FieldElem {
        FieldElem(vec![0; self.f])
    }

    pub fn one(&self) -> FieldElem {
        self.from_int(1)
    }

    pub fn from_int(&self, n: u64) -> FieldElem {
        self.pad(vec![n % self.p])
    }

    /// Element from a polynomial given by its coefficients (reduced first).
    pub fn from_poly(&self, coeffs: &[u64]) -> FieldElem {
        let c: Vec<u64> = coeffs.iter().map(|&x| x % self.p).collect();
        self.pad(poly_rem(&c, &self.modulus, self.p))
    }

    /// The `i`-th element in base-p digit order (constant term least significant).
    pub fn element(&self, mut i: u64) -> FieldElem {
        let mut v = vec![0; self.f];
        for d in v.iter_mut() {
            *d = i % self.p;
            i /= self.p;
        }
        FieldElem(v)
    }

    /// Inverse of [`Gf::element`].
    pub fn index(&self, a: &FieldElem) -> u64 {
        a.0.iter().rev().fold(0, |acc, &d| acc * self.p + d)
    }

    pub fn is_zero(&self, a: &FieldElem) -> bool {
        a.0.iter().all(|&x| x == 0)
    }

    /// The element as a prime-field scalar, if it lies in GF(p).
    pub fn as_prime(&self, a: &FieldElem) -> Option<u64> {
        if a.0[1..].iter().all(|&x| x == 0) {
            Some(a.0[0])
        } else {
            None
        }
    }

    pub fn add(&self, a: &FieldElem, b: &FieldElem) -> FieldElem {
        FieldElem(
            a.0.iter()
                .zip(&b.0)
                .map(|(&x, &y)| (x + y) % self.p)
                .collect(),
        )
    }

    pub fn sub(&self, a: &FieldElem, b: &FieldElem) -> FieldElem {
        FieldElem(
            a.0.iter()
                .zip(&b.0)
                .map(|(&x, &y)| (x + self.p - y) % self.p)
                .collect(),
        )
    }

    pub fn neg(&self, a: &FieldElem) -> FieldElem {
        self.sub(&self.zero(), a)
    }

    pub fn mul(&self, a: &FieldElem, b: &FieldElem) -> FieldElem {
        if self.f == 1 {
            return FieldElem(vec![mul_mod(a.0[0], b.0[0], self.p)]);
        }
        self.pad(poly_rem(
            &poly_mul(&trim(a.0.clone()), &trim(b.0.clone()), self.p),
            &self.modulus,
            self.p,
        ))
    }

    pub fn scale(&self, c: u64, a: &FieldElem) -> FieldElem {
        FieldElem(
            a.0.iter()
                .map(|&x| mul_mod(c % self.p, x, self.p))
                .collect(),
        )
    }

    pub fn pow(&self, a: &FieldElem, e: u64) -> FieldElem {
        self.pow_big(a, &BigUint::from(e))
    }

    pub fn pow_big(&self, a: &FieldElem, e: &BigUint) -> FieldElem {
        let mut r = self.one();
        for i in (0..e.bits()).rev() {
            r = self.mul(&r, &r);
            if e.bit(i) {
                r = self.mul(&r, a);
            }
        }
        r
    }

    /// Multiplicative inverse; `a` must be nonzero.
    pub fn inv(&self, a: &FieldElem) -> FieldElem {
        assert!(!self.is_zero(a), "inverse of zero");
        self.pow_big(a, &(self.size() - 2u32))
    }

    /// Frobenius `a ↦ a^(p^k)`.
    pub fn frob(&self, a: &FieldElem, k: usize) -> FieldElem {
        (0..k).fold(a.clone(), |x, _| self.pow(&x, self.p))
    }

    /// Deterministic element of exact multiplicative order `m`; `m` must divide p^f − 1.
    pub fn root_of_unity(&self, m: u64) -> FieldElem {
        let order = self.size() - 1u32;
        assert!(
            (&order % m) == BigUint::from(0u32),
            "{m} does not divide |GF*|"
        );
        let cofactor = &order / m;
        let primes = prime_divisors(m);
        let total = self.size();
        let mut i = 1u64;
        loop {
            assert!(BigUint::from(i) < total, "no element of order {m}");
            let g = self.pow_big(&self.element(i), &cofactor);
            if !self.is_zero(&g) && primes.iter().all(|&l| self.pow(&g, m / l) != self.one()) {
                return g;
            }
            i += 1;
        }
    }

    /// The smallest generator of GF(p^f)^* in element order.
    pub fn primitive_element(&self) -> FieldElem {
        let order = self.size() - 1u32;
        let m: u64 = order
            .clone()
            .try_into()
            .expect("field too large for a primitive element search");
        self.root_of_unity(m)
    }
}
