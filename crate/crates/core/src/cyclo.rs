//! Exact arithmetic in cyclotomic fields.
//!
//! A [`Cyclotomic`] lives in `Q(ζ_n)` for an explicit ambient `n` and is stored
//! in the power basis `1, ζ_n, …, ζ_n^{φ(n)−1}`. Mixed-ambient operations lift
//! both operands to the lcm first.
//!
//! Levels are computed prime by prime from invariance under the Galois groups
//! `Gal(Q_n / Q_{p^e m})`, `m = n_{p'}`, so no minimal polynomials are needed.

use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::{Arc, OnceLock, RwLock};

use num_bigint::BigUint;

use crate::arith::{self, crt, gcd, inv_mod, lcm, mul_mod, pow_mod, split_part, valuation};
use crate::error::{Error, Result};
use crate::gf::{FieldElem, Gf};
use crate::rat::Rat;

struct FieldData {
    phi: usize,
    /// `reduce[j]` is ζ_n^j written in the power basis, as sparse (index, coefficient).
    reduce: Vec<Vec<(usize, i64)>>,
}

fn poly_div_exact(num: &[i64], den: &[i64]) -> Vec<i64> {
    // den is monic
    let mut r = num.to_vec();
    let dd = den.len() - 1;
    let mut q = vec![0i64; num.len() - dd];
    for i in (0..q.len()).rev() {
        let c = r[i + dd];
        q[i] = c;
        if c != 0 {
            for (j, &d) in den.iter().enumerate() {
                r[i + j] -= c * d;
            }
        }
    }
    debug_assert!(r.iter().all(|&x| x == 0));
    q
}

/// Coefficients of the n-th cyclotomic polynomial, constant term first.
pub fn cyclotomic_polynomial(n: u64) -> Vec<i64> {
    fn mobius(n: u64) -> i32 {
        let f = arith::factor(n);
        if f.iter().any(|&(_, e)| e > 1) {
            0
        } else if f.len() % 2 == 0 {
            1
        } else {
            -1
        }
    }
    let xd1 = |d: u64| {
        let mut v = vec![0i64; d as usize + 1];
        v[0] = -1;
        v[d as usize] = 1;
        v
    };
    let mut num = vec![1i64];
    let mut dens = Vec::new();
    for d in arith::divisors(n) {
        match mobius(n / d) {
            1 => {
                let f = xd1(d);
                let mut out = vec![0i64; num.len() + f.len() - 1];
                for (i, &a) in num.iter().enumerate() {
                    for (j, &b) in f.iter().enumerate() {
                        out[i + j] += a * b;
                    }
                }
                num = out;
            }
            -1 => dens.push(xd1(d)),
            _ => {}
        }
    }
    for d in dens {
        num = poly_div_exact(&num, &d);
    }
    num
}

fn build_field(n: u64) -> FieldData {
    let phi = arith::euler_phi(n) as usize;
    let cp = cyclotomic_polynomial(n);
    let mut reduce = Vec::with_capacity(n as usize);
    let mut cur = vec![0i64; phi];
    for j in 0..n as usize {
        if j < phi {
            cur = vec![0; phi];
            cur[j] = 1;
        } else {
            // multiply the previous row by x and fold back the x^phi term
            let top = cur[phi - 1];
            let mut next = vec![0i64; phi];
            next[1..phi].copy_from_slice(&cur[..phi - 1]);
            if top != 0 {
                for i in 0..phi {
                    next[i] = next[i]
                        .checked_sub(top * cp[i])
                        .expect("reduction table overflow");
                }
            }
            cur = next;
        }
        reduce.push(
            cur.iter()
                .enumerate()
                .filter(|(_, &c)| c != 0)
                .map(|(i, &c)| (i, c))
                .collect(),
        );
    }
    FieldData { phi, reduce }
}

fn field(n: u64) -> Arc<FieldData> {
    static CACHE: OnceLock<RwLock<HashMap<u64, Arc<FieldData>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(Default::default);
    if let Some(f) = cache.read().unwrap().get(&n) {
        return f.clone();
    }
    let built = Arc::new(build_field(n));
    cache.write().unwrap().entry(n).or_insert(built).clone()
}

#[derive(Clone)]
pub struct Cyclotomic {
    n: u64,
    coeffs: Vec<Rat>,
}

impl Cyclotomic {
    pub fn zero(n: u64) -> Self {
        assert!(n >= 1);
        Cyclotomic {
            n,
            coeffs: vec![Rat::zero(); field(n).phi],
        }
    }

    pub fn from_rat(r: Rat) -> Self {
        Cyclotomic {
            n: 1,
            coeffs: vec![r],
        }
    }

    pub fn from_int(a: i64) -> Self {
        Self::from_rat(Rat::int(a))
    }

    /// ζ_n^k.
    pub fn root(n: u64, k: i64) -> Self {
        let mut dense = vec![Rat::zero(); n as usize];
        dense[k.rem_euclid(n as i64) as usize] = Rat::one();
        Self::from_powers(n, &dense)
    }

    /// Σ c_j ζ_n^j over all exponents `j < n` (not necessarily reduced).
    pub fn from_powers(n: u64, dense: &[Rat]) -> Self {
        assert_eq!(dense.len(), n as usize);
        let fd = field(n);
        let mut coeffs = vec![Rat::zero(); fd.phi];
        for (j, c) in dense.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            for &(i, t) in &fd.reduce[j] {
                coeffs[i] = &coeffs[i] + &(c * &Rat::int(t));
            }
        }
        Cyclotomic { n, coeffs }
    }

    /// Σ m_t ζ_n^t with integer multiplicities.
    pub fn from_int_powers(n: u64, mult: &[i64]) -> Self {
        let dense: Vec<Rat> = mult.iter().map(|&m| Rat::int(m)).collect();
        Self::from_powers(n, &dense)
    }

    pub fn ambient(&self) -> u64 {
        self.n
    }

    pub fn coeffs(&self) -> &[Rat] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Rat::is_zero)
    }

    /// The value as a rational, when it is one.
    pub fn as_rational(&self) -> Option<Rat> {
        if self.coeffs[1..].iter().all(Rat::is_zero) {
            Some(self.coeffs[0].clone())
        } else {
            None
        }
    }

    /// True when every coefficient is an integer, i.e. the value lies in Z[ζ_n].
    pub fn is_integral(&self) -> bool {
        self.coeffs.iter().all(Rat::is_integer)
    }

    /// Re-expresses the value in `Q(ζ_m)`; `m` must be a multiple of the ambient.
    pub fn lift(&self, m: u64) -> Self {
        if m == self.n {
            return self.clone();
        }
        assert!(m % self.n == 0, "cannot lift Q_{} into Q_{}", self.n, m);
        let step = (m / self.n) as usize;
        let mut dense = vec![Rat::zero(); m as usize];
        for (j, c) in self.coeffs.iter().enumerate() {
            dense[j * step] = c.clone();
        }
        Self::from_powers(m, &dense)
    }

    fn common(a: &Self, b: &Self) -> (Self, Self) {
        if a.n == b.n {
            (a.clone(), b.clone())
        } else {
            let m = lcm(a.n, b.n);
            (a.lift(m), b.lift(m))
        }
    }

    pub fn scale(&self, r: &Rat) -> Self {
        Cyclotomic {
            n: self.n,
            coeffs: self.coeffs.iter().map(|c| c * r).collect(),
        }
    }

    pub fn div_rat(&self, r: &Rat) -> Result<Self> {
        if r.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Cyclotomic {
            n: self.n,
            coeffs: self.coeffs.iter().map(|c| c / r).collect(),
        })
    }

    /// Exact quotient `self / other`.
    pub fn div(&self, other: &Self) -> Result<Self> {
        if other.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if let Some(r) = other.as_rational() {
            return self.div_rat(&r);
        }
        let (a, b) = Self::common(self, other);
        let n = a.n;
        let phi = a.coeffs.len();
        // column t of the multiplication-by-b matrix is b·ζ^t
        let cols: Vec<Self> = (0..phi).map(|t| &b * &Self::root(n, t as i64)).collect();
        let mut m: Vec<Vec<Rat>> = (0..phi)
            .map(|i| {
                let mut row: Vec<Rat> = cols.iter().map(|c| c.coeffs[i].clone()).collect();
                row.push(a.coeffs[i].clone());
                row
            })
            .collect();
        let x = solve(&mut m, phi).ok_or(Error::DivisionByZero)?;
        Ok(Cyclotomic { n, coeffs: x })
    }

    /// Image under ζ_n ↦ ζ_n^k.
    pub fn galois(&self, k: i64) -> Result<Self> {
        let n = self.n;
        let kk = k.rem_euclid(n as i64) as u64;
        if gcd(kk, n) != 1 {
            return Err(Error::BadExponent { k, n });
        }
        Ok(self.galois_unchecked(kk))
    }

    fn galois_unchecked(&self, k: u64) -> Self {
        if k % self.n == 1 % self.n {
            return self.clone();
        }
        let fd = field(self.n);
        let mut coeffs = vec![Rat::zero(); fd.phi];
        for (j, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let t = mul_mod(j as u64, k, self.n) as usize;
            for &(i, s) in &fd.reduce[t] {
                coeffs[i] = &coeffs[i] + &(c * &Rat::int(s));
            }
        }
        Cyclotomic { n: self.n, coeffs }
    }

    /// True when ζ ↦ ζ^k fixes the value (k taken modulo the ambient).
    pub fn fixed_by(&self, k: u64) -> bool {
        self.galois_unchecked(k % self.n) == *self
    }

    pub fn conj(&self) -> Self {
        self.galois_unchecked(self.n - 1)
    }

    /// Image in GF(q) under ζ_e ↦ `z`, where `z` has order `e` mod `q` and the ambient divides `e`.
    pub fn embed_mod(&self, q: u64, e: u64, z: u64) -> Option<u64> {
        assert!(e % self.n == 0);
        let zn = pow_mod(z, e / self.n, q);
        let mut acc = 0u64;
        let mut pw = 1u64;
        for c in &self.coeffs {
            if !c.is_zero() {
                acc = (acc + mul_mod(c.mod_p(q)?, pw, q)) % q;
            }
            pw = mul_mod(pw, zn, q);
        }
        Some(acc)
    }
}

/// Gaussian elimination on an augmented `phi × (phi+1)` system with a unique solution.
fn solve(m: &mut [Vec<Rat>], phi: usize) -> Option<Vec<Rat>> {
    for col in 0..phi {
        let piv = (col..phi).find(|&r| !m[r][col].is_zero())?;
        m.swap(col, piv);
        let inv = &Rat::one() / &m[col][col];
        for x in m[col].iter_mut() {
            *x = &*x * &inv;
        }
        for r in 0..phi {
            if r != col && !m[r][col].is_zero() {
                let f = m[r][col].clone();
                for c in col..=phi {
                    let t = &m[col][c] * &f;
                    m[r][c] = &m[r][c] - &t;
                }
            }
        }
    }
    Some(m.iter().map(|row| row[phi].clone()).collect())
}

impl PartialEq for Cyclotomic {
    fn eq(&self, other: &Self) -> bool {
        if self.n == other.n {
            self.coeffs == other.coeffs
        } else {
            let (a, b) = Self::common(self, other);
            a.coeffs == b.coeffs
        }
    }
}

impl Eq for Cyclotomic {}

impl Ord for Cyclotomic {
    fn cmp(&self, other: &Self) -> Ordering {
        let (a, b) = Self::common(self, other);
        a.coeffs.cmp(&b.coeffs)
    }
}

impl PartialOrd for Cyclotomic {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Add for &Cyclotomic {
    type Output = Cyclotomic;
    fn add(self, rhs: &Cyclotomic) -> Cyclotomic {
        let (a, b) = Cyclotomic::common(self, rhs);
        Cyclotomic {
            n: a.n,
            coeffs: a.coeffs.iter().zip(&b.coeffs).map(|(x, y)| x + y).collect(),
        }
    }
}

impl Sub for &Cyclotomic {
    type Output = Cyclotomic;
    fn sub(self, rhs: &Cyclotomic) -> Cyclotomic {
        let (a, b) = Cyclotomic::common(self, rhs);
        Cyclotomic {
            n: a.n,
            coeffs: a.coeffs.iter().zip(&b.coeffs).map(|(x, y)| x - y).collect(),
        }
    }
}

impl Mul for &Cyclotomic {
    type Output = Cyclotomic;
    fn mul(self, rhs: &Cyclotomic) -> Cyclotomic {
        if let Some(r) = rhs.as_rational() {
            return self.scale(&r);
        }
        if let Some(r) = self.as_rational() {
            return rhs.scale(&r);
        }
        let (a, b) = Cyclotomic::common(self, rhs);
        let n = a.n as usize;
        let mut dense = vec![Rat::zero(); n];
        for (i, x) in a.coeffs.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.coeffs.iter().enumerate() {
                if y.is_zero() {
                    continue;
                }
                let t = (i + j) % n;
                dense[t] = &dense[t] + &(x * y);
            }
        }
        Cyclotomic::from_powers(a.n, &dense)
    }
}

impl Neg for &Cyclotomic {
    type Output = Cyclotomic;
    fn neg(self) -> Cyclotomic {
        Cyclotomic {
            n: self.n,
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

macro_rules! owned_ops {
    ($tr:ident, $m:ident) => {
        impl $tr for Cyclotomic {
            type Output = Cyclotomic;
            fn $m(self, rhs: Cyclotomic) -> Cyclotomic {
                (&self).$m(&rhs)
            }
        }
    };
}
owned_ops!(Add, add);
owned_ops!(Sub, sub);
owned_ops!(Mul, mul);

impl Neg for Cyclotomic {
    type Output = Cyclotomic;
    fn neg(self) -> Cyclotomic {
        -&self
    }
}

impl fmt::Display for Cyclotomic {
    /// Terms `c*z{n}^j` in increasing `j`, e.g. `-1 + 2*z9^2`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (j, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let a = c.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, "{}", if neg { " - " } else { " + " })?;
            }
            first = false;
            let one = a == Rat::one();
            match j {
                0 => write!(f, "{a}")?,
                1 if one => write!(f, "z{}", self.n)?,
                1 => write!(f, "{a}*z{}", self.n)?,
                _ if one => write!(f, "z{}^{j}", self.n)?,
                _ => write!(f, "{a}*z{}^{j}", self.n)?,
            }
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Cyclotomic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Cyclotomic[{}]({})", self.n, self)
    }
}

/// Generators, modulo `p^a`, of the units congruent to 1 mod `p^e` (for p = 2 and
/// e ≤ 1 this is the whole unit group).
fn level_generators(p: u64, a: u32, e: u32) -> Vec<u64> {
    let pa = p.pow(a);
    if e >= a {
        return vec![1];
    }
    if p == 2 {
        if e <= 1 {
            vec![(pa - 1) % pa, 5 % pa]
        } else {
            vec![(1 + (1u64 << e)) % pa]
        }
    } else if e == 0 {
        vec![arith::primitive_root_prime_power(p, a)]
    } else {
        vec![(1 + p.pow(e)) % pa]
    }
}

/// Exponents modulo `n` generating Gal(Q_n / Q_{p^e n_{p'}}).
pub fn level_group_generators(n: u64, p: u64, e: u32) -> Vec<u64> {
    let a = valuation(n, p);
    let (pa, m) = split_part(n, p);
    level_generators(p, a, e)
        .into_iter()
        .map(|g| crt(g, pa, 1, m))
        .collect()
}

/// p-rationality level of a single value: ν_p of its conductor.
pub fn value_level(v: &Cyclotomic, p: u64) -> u32 {
    let n = v.ambient();
    if n % p != 0 || v.as_rational().is_some() {
        return 0;
    }
    let a = valuation(n, p);
    (0..a)
        .find(|&e| {
            level_group_generators(n, p, e)
                .iter()
                .all(|&k| v.fixed_by(k))
        })
        .unwrap_or(a)
}

/// p-rationality level of a set of values (the maximum over the set).
pub fn level(values: &[Cyclotomic], p: u64) -> u32 {
    values.iter().map(|v| value_level(v, p)).max().unwrap_or(0)
}

/// Smallest n with every value in Q_n; never ≡ 2 mod 4.
pub fn conductor(values: &[Cyclotomic]) -> u64 {
    let n = values.iter().fold(1, |acc, v| lcm(acc, v.ambient()));
    arith::prime_divisors(n)
        .into_iter()
        .map(|p| p.pow(level(values, p)))
        .product()
}

/// The exponent k with k ≡ 1 + p^e mod n_p and k ≡ 1 mod n_{p'}.
pub fn sigma_e_exponent(n: u64, p: u64, e: u32) -> u64 {
    let (pa, m) = split_part(n, p);
    let r = (1 + p.pow(e) % pa) % pa;
    crt(r, pa, 1, m)
}

/// Exponents k mod n (coprime to n) fixing every value. The values must lie in
/// Q_n, though they may be written in a larger cyclotomic field.
pub fn galois_stabilizer(values: &[Cyclotomic], n: u64) -> Vec<u64> {
    let big = values.iter().fold(n, |acc, v| lcm(acc, v.ambient()));
    let lifted: Vec<Cyclotomic> = values.iter().map(|v| v.lift(big)).collect();
    let mut out: Vec<u64> = (1..=big)
        .filter(|&k| gcd(k, big) == 1)
        .filter(|&k| lifted.iter().all(|v| v.fixed_by(k % big)))
        .map(|k| k % n)
        .collect();
    out.sort_unstable();
    out.dedup();
    out
}

/// Level of the fixed field of a subgroup `stab` of (Z/n)^*, read off from which
/// of the groups Gal(Q_n / Q_{p^e n_{p'}}) it contains.
pub fn level_of_stabilizer(stab: &[u64], n: u64, p: u64) -> u32 {
    if n % p != 0 {
        return 0;
    }
    let a = valuation(n, p);
    (0..a)
        .find(|&e| {
            level_group_generators(n, p, e)
                .iter()
                .all(|k| stab.contains(&(k % n)))
        })
        .unwrap_or(a)
}

/// True iff Q_4 lies in the field generated by `values`.
pub fn field_contains_q4(values: &[Cyclotomic]) -> bool {
    let c = conductor(values);
    if c % 4 != 0 {
        return false;
    }
    galois_stabilizer(values, c).iter().all(|&k| k % 4 == 1)
}

/// Data of a prime ideal above p in Z[ζ_{p^a m}], realised as a root α of one
/// irreducible factor of Φ_m modulo p.
#[derive(Clone, Debug)]
pub struct PrimeIdealData {
    pub p: u64,
    pub m: u64,
    /// The chosen irreducible factor of Φ_m mod p, constant term first.
    pub factor: Vec<u64>,
    pub residue_degree: usize,
    pub choice: usize,
    pub factor_count: usize,
    field: Gf,
    alpha_pows: Vec<FieldElem>,
}

impl PrimeIdealData {
    /// The ideal given by the `choice`-th factor of Φ_m mod p in lexicographic order
    /// (constant term first). `choice = 0` is the default.
    pub fn new(p: u64, m: u64, choice: usize) -> Self {
        assert!(m % p != 0, "m must be prime to p");
        let f = if m == 1 {
            1
        } else {
            arith::mult_order(p % m, m) as usize
        };
        let field = Gf::new(p, f);
        let alpha0 = field.root_of_unity(m);
        let mut factors: Vec<(Vec<u64>, u64)> = Vec::new();
        let mut seen = vec![false; m as usize];
        for j in (0..m).filter(|&j| gcd(j, m) == 1 || m == 1) {
            if seen[j as usize] {
                continue;
            }
            let mut coset = Vec::new();
            let mut t = j;
            while !seen[t as usize] {
                seen[t as usize] = true;
                coset.push(t);
                t = mul_mod(t, p, m.max(1));
                if m == 1 {
                    break;
                }
            }
            let mut poly = vec![field.one()];
            for &t in &coset {
                let root = field.pow(&alpha0, t);
                let mut next = vec![field.zero(); poly.len() + 1];
                for (i, c) in poly.iter().enumerate() {
                    next[i + 1] = field.add(&next[i + 1], c);
                    next[i] = field.sub(&next[i], &field.mul(c, &root));
                }
                poly = next;
            }
            let coeffs = poly
                .iter()
                .map(|c| {
                    field
                        .as_prime(c)
                        .expect("minimal polynomial has prime-field coefficients")
                })
                .collect();
            factors.push((coeffs, j));
        }
        factors.sort();
        let factor_count = factors.len();
        assert!(
            choice < factor_count,
            "ideal choice {choice} out of range ({factor_count} factors)"
        );
        let (factor, rep) = factors.swap_remove(choice);
        let alpha = field.pow(&alpha0, rep);
        let mut alpha_pows = Vec::with_capacity(m as usize);
        let mut cur = field.one();
        for _ in 0..m {
            alpha_pows.push(cur.clone());
            cur = field.mul(&cur, &alpha);
        }
        PrimeIdealData {
            p,
            m,
            factor,
            residue_degree: f,
            choice,
            factor_count,
            field,
            alpha_pows,
        }
    }

    /// Number of prime ideals above p for this `m`.
    pub fn count(p: u64, m: u64) -> usize {
        if m == 1 {
            1
        } else {
            (arith::euler_phi(m) / arith::mult_order(p % m, m)) as usize
        }
    }

    pub fn field(&self) -> &Gf {
        &self.field
    }

    /// Image of a p-integral value in the residue field.
    pub fn residue(&self, v: &Cyclotomic) -> Result<FieldElem> {
        let k = v.ambient();
        let (pa, kp) = split_part(k, self.p);
        if self.m % kp != 0 {
            return Err(Error::IdealMismatch { k, m: self.m });
        }
        let u = if kp == 1 { 0 } else { inv_mod(pa % kp, kp) };
        let step = mul_mod(self.m / kp, u, self.m.max(1));
        let mut acc = self.field.zero();
        for (j, c) in v.coeffs().iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let r = c
                .mod_p(self.p)
                .ok_or(Error::NotAlgebraicInteger { p: self.p })?;
            let t = if self.m == 1 {
                0
            } else {
                mul_mod(step, j as u64, self.m)
            };
            acc = self
                .field
                .add(&acc, &self.field.scale(r, &self.alpha_pows[t as usize]));
        }
        Ok(acc)
    }

    pub fn field_size(&self) -> BigUint {
        self.field.size()
    }
}
