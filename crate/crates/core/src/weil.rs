//! Unitary groups over GF(q²), the Weil character formula, and the SL₂(2^f)
//! semisimple value identity. These are oracles independent of the
//! Dixon–Schneider tables and are compared against them.

use std::collections::HashMap;
use std::sync::Arc;

use serde::Serialize;

use crate::arith::factor;
use crate::chartab::{Character, CharacterTable};
use crate::cyclo::{self, Cyclotomic};
use crate::error::{Error, Result};
use crate::gf::Gf;
use crate::perm::{enumeration_bound, Group, Permutation};
use crate::rat::Rat;

/// Largest unitary group `gu_group` will enumerate.
pub const GU_SIZE_BOUND: u64 = 1_000_000;

/// (p, f) with q = p^f, or an error if q is not a prime power.
pub fn prime_power(q: u64) -> Result<(u64, usize)> {
    match factor(q).as_slice() {
        [(p, f)] => Ok((*p, *f as usize)),
        _ => Err(Error::InvalidArgument(format!("{q} is not a prime power"))),
    }
}

/// GF(q²) with elements as indices and precomputed operation tables.
#[derive(Clone, Debug)]
pub struct Fq2 {
    pub q: u64,
    size: usize,
    add: Vec<u16>,
    mul: Vec<u16>,
    neg: Vec<u16>,
    inv: Vec<u16>,
    conj: Vec<u16>,
    /// A generator of the multiplicative group.
    pub primitive: u16,
}

impl Fq2 {
    pub fn new(q: u64) -> Result<Self> {
        let (p, f) = prime_power(q)?;
        let size = (q * q) as usize;
        if size > 1 << 12 {
            return Err(Error::SizeBoundExceeded(q));
        }
        let k = Gf::new(p, 2 * f);
        let elems: Vec<_> = (0..size as u64).map(|i| k.element(i)).collect();
        let idx = |e| k.index(&e) as u16;
        let mut add = vec![0; size * size];
        let mut mul = vec![0; size * size];
        for a in 0..size {
            for b in 0..size {
                add[a * size + b] = idx(k.add(&elems[a], &elems[b]));
                mul[a * size + b] = idx(k.mul(&elems[a], &elems[b]));
            }
        }
        let neg = elems.iter().map(|e| idx(k.neg(e))).collect();
        let inv = elems
            .iter()
            .map(|e| if k.is_zero(e) { 0 } else { idx(k.inv(e)) })
            .collect();
        let conj = elems.iter().map(|e| idx(k.frob(e, f))).collect();
        let primitive = idx(k.primitive_element());
        Ok(Fq2 {
            q,
            size,
            add,
            mul,
            neg,
            inv,
            conj,
            primitive,
        })
    }

    pub fn size(&self) -> usize {
        self.size
    }
    pub fn add(&self, a: u16, b: u16) -> u16 {
        self.add[a as usize * self.size + b as usize]
    }
    pub fn mul(&self, a: u16, b: u16) -> u16 {
        self.mul[a as usize * self.size + b as usize]
    }
    pub fn sub(&self, a: u16, b: u16) -> u16 {
        self.add(a, self.neg[b as usize])
    }
    pub fn inv(&self, a: u16) -> u16 {
        self.inv[a as usize]
    }
    /// x ↦ x^q.
    pub fn conj(&self, a: u16) -> u16 {
        self.conj[a as usize]
    }
    pub fn pow(&self, a: u16, e: u64) -> u16 {
        (0..e).fold(1, |acc, _| self.mul(acc, a))
    }
    /// Generator of the order-(q+1) subgroup of GF(q²)^*.
    pub fn xi_hat(&self) -> u16 {
        self.pow(self.primitive, self.q - 1)
    }
}

/// An n×n matrix over GF(q²), row-major, entries as field indices.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FqMatrix {
    pub n: usize,
    pub entries: Vec<u16>,
}

impl FqMatrix {
    pub fn identity(n: usize) -> Self {
        Self::diagonal(&vec![1; n])
    }

    pub fn diagonal(d: &[u16]) -> Self {
        let n = d.len();
        let mut entries = vec![0; n * n];
        for (i, &x) in d.iter().enumerate() {
            entries[i * n + i] = x;
        }
        FqMatrix { n, entries }
    }

    pub fn get(&self, i: usize, j: usize) -> u16 {
        self.entries[i * self.n + j]
    }

    pub fn mul(&self, k: &Fq2, other: &Self) -> Self {
        let n = self.n;
        let mut entries = vec![0; n * n];
        for i in 0..n {
            for j in 0..n {
                entries[i * n + j] = (0..n).fold(0, |acc, t| {
                    k.add(acc, k.mul(self.get(i, t), other.get(t, j)))
                });
            }
        }
        FqMatrix { n, entries }
    }

    /// Conjugate transpose, the inverse of a unitary matrix.
    pub fn adjoint(&self, k: &Fq2) -> Self {
        let n = self.n;
        let entries = (0..n * n).map(|x| k.conj(self.get(x % n, x / n))).collect();
        FqMatrix { n, entries }
    }

    /// True when g·g* = 1 for the identity Gram matrix.
    pub fn is_unitary(&self, k: &Fq2) -> bool {
        self.mul(k, &self.adjoint(k)) == Self::identity(self.n)
    }
}

fn rank(k: &Fq2, rows: &mut [Vec<u16>]) -> usize {
    let n_rows = rows.len();
    let n_cols = rows.first().map_or(0, Vec::len);
    let mut r = 0;
    for c in 0..n_cols {
        let Some(p) = (r..n_rows).find(|&i| rows[i][c] != 0) else {
            continue;
        };
        rows.swap(r, p);
        let inv = k.inv(rows[r][c]);
        for i in r + 1..n_rows {
            if rows[i][c] != 0 {
                let t = k.mul(rows[i][c], inv);
                for j in c..n_cols {
                    let s = k.mul(t, rows[r][j]);
                    rows[i][j] = k.sub(rows[i][j], s);
                }
            }
        }
        r += 1;
    }
    r
}

/// dim ker(g − s·1).
pub fn kernel_dimension(k: &Fq2, g: &FqMatrix, s: u16) -> usize {
    let n = g.n;
    let mut rows: Vec<Vec<u16>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    if i == j {
                        k.sub(g.get(i, j), s)
                    } else {
                        g.get(i, j)
                    }
                })
                .collect()
        })
        .collect();
    n - rank(k, &mut rows)
}

/// |GU_n(q)| = q^{n(n−1)/2} ∏ (q^i − (−1)^i).
pub fn gu_order(n: u32, q: u64) -> u128 {
    let q = q as i128;
    let mut o = q.pow(n * (n - 1) / 2);
    for i in 1..=n {
        o *= q.pow(i) - if i % 2 == 0 { 1 } else { -1 };
    }
    o as u128
}

fn hermitian(k: &Fq2, u: &[u16], v: &[u16]) -> u16 {
    u.iter()
        .zip(v)
        .fold(0, |acc, (&a, &b)| k.add(acc, k.mul(a, k.conj(b))))
}

fn all_vectors(size: usize, n: usize) -> Vec<Vec<u16>> {
    (0..size.pow(n as u32))
        .map(|mut x| {
            (0..n)
                .map(|_| {
                    let d = (x % size) as u16;
                    x /= size;
                    d
                })
                .collect()
        })
        .collect()
}

/// GU_n(q) for the identity Gram matrix, enumerated row by row over orthonormal
/// vectors; sorted.
pub fn gu_group(k: &Fq2, n: usize) -> Result<Vec<FqMatrix>> {
    let order = gu_order(n as u32, k.q);
    if order > GU_SIZE_BOUND as u128 {
        return Err(Error::SizeBoundExceeded(order.min(u64::MAX as u128) as u64));
    }
    let mut unit: Vec<Vec<u16>> = all_vectors(k.size(), n)
        .into_iter()
        .filter(|v| hermitian(k, v, v) == 1)
        .collect();
    unit.sort();
    let mut out = Vec::with_capacity(order as usize);
    let mut rows: Vec<usize> = Vec::new();
    fn extend(
        k: &Fq2,
        unit: &[Vec<u16>],
        n: usize,
        rows: &mut Vec<usize>,
        out: &mut Vec<FqMatrix>,
    ) {
        if rows.len() == n {
            let entries = rows.iter().flat_map(|&r| unit[r].iter().copied()).collect();
            out.push(FqMatrix { n, entries });
            return;
        }
        for c in 0..unit.len() {
            if rows.iter().all(|&r| hermitian(k, &unit[c], &unit[r]) == 0) {
                rows.push(c);
                extend(k, unit, n, rows, out);
                rows.pop();
            }
        }
    }
    extend(k, &unit, n, &mut rows, &mut out);
    Ok(out)
}

/// GU_n(q) by testing every matrix; feasible only for tiny (n, q).
pub fn gu_group_brute_force(k: &Fq2, n: usize) -> Vec<FqMatrix> {
    all_vectors(k.size(), n * n)
        .into_iter()
        .map(|v| {
            // all_vectors is little-endian; reverse for row-major lexicographic order
            FqMatrix {
                n,
                entries: v.into_iter().rev().collect(),
            }
        })
        .filter(|m| m.is_unitary(k))
        .collect::<std::collections::BTreeSet<_>>()
        .into_iter()
        .collect()
}

/// dim ker(g − ξ̂^{−k}) for k = 0..=q.
pub fn kernel_signature(k: &Fq2, g: &FqMatrix) -> Vec<u32> {
    let xi_inv = k.inv(k.xi_hat());
    (0..=k.q)
        .map(|t| kernel_dimension(k, g, k.pow(xi_inv, t)) as u32)
        .collect()
}

/// The Weil value from a kernel signature:
/// (−1)^n/(q+1) Σ_k ξ^{−ik} (−q)^{dim ker(g − ξ̂^{−k})}, in Q(ξ), ξ = ζ_{q+1}.
pub fn weil_value_from_signature(sig: &[u32], n: usize, q: u64, i: u64) -> Cyclotomic {
    let m = q + 1;
    let mut dense = vec![Rat::zero(); m as usize];
    for (t, &d) in sig.iter().enumerate() {
        let pos = ((m - (i * t as u64) % m) % m) as usize;
        dense[pos] = &dense[pos] + &Rat::from((-(q as i64)).pow(d));
    }
    let sign = if n % 2 == 0 { 1 } else { -1 };
    Cyclotomic::from_powers(m, &dense).scale(&Rat::new(sign, m as i64))
}

pub fn weil_value(k: &Fq2, g: &FqMatrix, i: u64) -> Cyclotomic {
    weil_value_from_signature(&kernel_signature(k, g), g.n, k.q, i)
}

/// GU_n(q) acting on the nonzero vectors of GF(q²)^n by v ↦ v·g.
pub struct UnitaryPermGroup {
    pub group: Arc<Group>,
    /// Matrix of each element of `group`, by element index.
    pub matrices: Vec<FqMatrix>,
}

fn vector_permutation(k: &Fq2, g: &FqMatrix) -> Permutation {
    let n = g.n;
    let size = k.size();
    let vecs = all_vectors(size, n);
    let index = |v: &[u16]| {
        v.iter()
            .rev()
            .fold(0usize, |acc, &d| acc * size + d as usize)
    };
    let images = vecs[1..]
        .iter()
        .map(|v| {
            let w: Vec<u16> = (0..n)
                .map(|j| (0..n).fold(0, |acc, t| k.add(acc, k.mul(v[t], g.get(t, j)))))
                .collect();
            index(&w) - 1
        })
        .collect();
    Permutation::new(images).expect("invertible matrices permute nonzero vectors")
}

pub fn unitary_perm_group(k: &Fq2, elements: &[FqMatrix]) -> Result<UnitaryPermGroup> {
    let n = elements[0].n;
    let degree = k.size().pow(n as u32) - 1;
    let perms: Vec<Permutation> = elements.iter().map(|g| vector_permutation(k, g)).collect();
    let mut gens: Vec<Permutation> = Vec::new();
    let mut group = Group::from_generators(degree, Vec::new())?;
    for p in &perms {
        if group.order() as usize == elements.len() {
            break;
        }
        if !group.contains(p) {
            gens.push(p.clone());
            group = Group::from_generators(degree, gens.clone())?;
        }
    }
    let by_perm: HashMap<&Permutation, usize> =
        perms.iter().enumerate().map(|(i, p)| (p, i)).collect();
    let matrices = group
        .elements()
        .iter()
        .map(|p| elements[by_perm[p]].clone())
        .collect();
    Ok(UnitaryPermGroup {
        group: Arc::new(group),
        matrices,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct WeilLevel {
    pub i: u64,
    pub level: u32,
    pub alpha_level: u32,
}

/// Outcome of checking the Weil characters χ_1..χ_q of GU_n(q) at p.
#[derive(Clone, Debug, Serialize)]
pub struct WeilCheck {
    pub n: usize,
    pub q: u64,
    pub p: u64,
    pub applicable: bool,
    pub group_order: u64,
    pub class_function: bool,
    pub degree: bool,
    pub orthonormal: bool,
    pub levels: Vec<WeilLevel>,
    /// Whether every χ_i is a row of the Dixon–Schneider table (when the order permits).
    pub table_match: Option<bool>,
}

impl WeilCheck {
    pub fn passed(&self) -> bool {
        !self.applicable
            || (self.class_function
                && self.degree
                && self.orthonormal
                && self.levels.iter().all(|l| l.level == l.alpha_level)
                && self.table_match != Some(false))
    }
}

pub fn weil_consistency(n: usize, q: u64, p: u64, seed: u64) -> Result<WeilCheck> {
    let mut check = WeilCheck {
        n,
        q,
        p,
        applicable: p % 2 == 1 && (q + 1) % p == 0,
        group_order: 0,
        class_function: false,
        degree: false,
        orthonormal: false,
        levels: Vec::new(),
        table_match: None,
    };
    if !check.applicable {
        return Ok(check);
    }
    let k = Fq2::new(q)?;
    let elems = gu_group(&k, n)?;
    check.group_order = elems.len() as u64;
    let sigs: Vec<Vec<u32>> = elems.iter().map(|g| kernel_signature(&k, g)).collect();
    let index: HashMap<&FqMatrix, usize> = elems.iter().enumerate().map(|(i, g)| (g, i)).collect();

    // invariance under conjugation by a generating set of the matrix group
    let mut gens: Vec<usize> = Vec::new();
    let mut span: std::collections::HashSet<usize> = [index[&FqMatrix::identity(n)]].into();
    for x in 0..elems.len() {
        if span.len() == elems.len() {
            break;
        }
        if !span.contains(&x) {
            gens.push(x);
            let mut frontier: Vec<usize> = span.iter().copied().collect();
            while let Some(y) = frontier.pop() {
                for &s in &gens {
                    let z = index[&elems[y].mul(&k, &elems[s])];
                    if span.insert(z) {
                        frontier.push(z);
                    }
                }
            }
        }
    }
    check.class_function = elems.iter().enumerate().all(|(x, g)| {
        gens.iter().all(|&s| {
            let h = &elems[s];
            let c = h.adjoint(&k).mul(&k, g).mul(&k, h);
            sigs[index[&c]] == sigs[x]
        })
    });

    let mut counts: HashMap<&Vec<u32>, u64> = HashMap::new();
    for s in &sigs {
        *counts.entry(s).or_default() += 1;
    }
    let order = elems.len() as i64;
    let chis: Vec<HashMap<&Vec<u32>, Cyclotomic>> = (1..=q)
        .map(|i| {
            counts
                .keys()
                .map(|&s| (s, weil_value_from_signature(s, n, q, i)))
                .collect()
        })
        .collect();
    let r = (q.pow(n as u32) as i64 - (-1i64).pow(n as u32)) / (q as i64 + 1);
    let id_sig = kernel_signature(&k, &FqMatrix::identity(n));
    check.degree = chis.iter().all(|c| c[&id_sig] == Cyclotomic::from_int(r));
    check.orthonormal = (0..chis.len()).all(|a| {
        (0..chis.len()).all(|b| {
            let s = counts
                .iter()
                .fold(Cyclotomic::from_int(0), |acc, (sig, &cnt)| {
                    &acc + &(&chis[a][*sig] * &chis[b][*sig].conj()).scale(&Rat::int(cnt as i64))
                });
            s.scale(&Rat::new(1, order)) == Cyclotomic::from_int(i64::from(a == b))
        })
    });
    check.levels = (1..=q)
        .map(|i| {
            let vals: Vec<Cyclotomic> = chis[i as usize - 1].values().cloned().collect();
            WeilLevel {
                i,
                level: cyclo::level(&vals, p),
                alpha_level: cyclo::value_level(&Cyclotomic::root(q + 1, i as i64), p),
            }
        })
        .collect();

    if elems.len() <= enumeration_bound() && k.size().pow(n as u32) <= u16::MAX as usize {
        let upg = unitary_perm_group(&k, &elems)?;
        let table = CharacterTable::new(upg.group.clone(), seed)?;
        let classes = upg.group.conjugacy_classes();
        let matched = chis.iter().all(|chi| {
            let values = classes
                .iter()
                .map(|c| chi[&kernel_signature(&k, &upg.matrices[c.representative])].clone())
                .collect();
            table.position(&Character::new(values)).is_some()
        });
        check.table_match = Some(matched);
    }
    Ok(check)
}

/// ζ^{ij} + ζ^{−ij} for ζ = ζ_{q−ε}.
pub fn sl2_semisimple_value(q: u64, eps: i64, i: i64, j: i64) -> Cyclotomic {
    let m = (q as i64 - eps) as u64;
    &Cyclotomic::root(m, i * j) + &Cyclotomic::root(m, -i * j)
}

/// SL₂(q), q = 2^f, acting on the projective line: points are GF(q) by index, then ∞.
pub fn sl2_projective(q: u64) -> Result<Group> {
    let (p, f) = prime_power(q)?;
    if p != 2 {
        return Err(Error::InvalidArgument(format!(
            "q = {q} is not a power of 2"
        )));
    }
    let k = Gf::new(2, f);
    let inf = q as usize;
    let n = inf + 1;
    let w = k.primitive_element();
    let act = |num: &dyn Fn(u64) -> Option<u64>| -> Result<Permutation> {
        let images = (0..n)
            .map(|x| {
                if x == inf {
                    num(u64::MAX)
                } else {
                    num(x as u64)
                }
            })
            .map(|y| y.map_or(inf, |v| v as usize))
            .collect();
        Permutation::new(images)
    };
    // x ↦ x + 1, x ↦ w²x, x ↦ 1/x (∞ handled as u64::MAX ↦ None)
    let one = k.one();
    let t = act(&|x| (x != u64::MAX).then(|| k.index(&k.add(&k.element(x), &one))))?;
    let w2 = k.mul(&w, &w);
    let d = act(&|x| (x != u64::MAX).then(|| k.index(&k.mul(&k.element(x), &w2))))?;
    let s = act(&|x| match x {
        u64::MAX => Some(0),
        0 => None,
        _ => Some(k.index(&k.inv(&k.element(x)))),
    })?;
    let gens = if q == 2 { vec![t, s] } else { vec![t, d, s] };
    Group::from_generators(n, gens)
}

/// Outcome of comparing the degree-(q+ε) rows of the SL₂(q) table with
/// ε(ζ^{ij} + ζ^{−ij}) on the nonidentity elements of a torus of order q−ε.
#[derive(Clone, Debug, Serialize)]
pub struct Sl2Check {
    pub q: u64,
    pub eps: i64,
    pub characters: usize,
    /// Each matched character's index i, in table order.
    pub labels: Vec<Option<i64>>,
    pub matched: bool,
}

pub fn sl2_check(table: &CharacterTable, q: u64, eps: i64) -> Sl2Check {
    let g = table.group();
    let m = (q as i64 - eps) as u64;
    let h0 = (0..g.order() as usize)
        .find(|&x| g.element_order(x) == m)
        .expect("SL2(2^f) has tori of order q±1");
    // j for each class meeting ⟨h0⟩ \ {1}
    let mut torus: Vec<(usize, i64)> = Vec::new();
    for j in 1..m as i64 {
        let c = g.class_of(g.pow(h0, j));
        if !torus.iter().any(|&(k, _)| k == c) {
            torus.push((c, j));
        }
    }
    let rows: Vec<usize> = (0..table.irreducibles().len())
        .filter(|&r| table.irreducibles()[r].degree() == q as i64 + eps)
        .collect();
    let labels: Vec<Option<i64>> = rows
        .iter()
        .map(|&r| {
            let chi = &table.irreducibles()[r];
            (1..=(m as i64) / 2).find(|&i| {
                torus.iter().all(|&(c, j)| {
                    chi.values[c] == sl2_semisimple_value(q, eps, i, j).scale(&Rat::int(eps))
                })
            })
        })
        .collect();
    let mut found: Vec<i64> = labels.iter().flatten().copied().collect();
    found.sort_unstable();
    found.dedup();
    let matched =
        labels.iter().all(Option::is_some) && found == (1..=(m as i64) / 2).collect::<Vec<_>>();
    Sl2Check {
        q,
        eps,
        characters: rows.len(),
        labels,
        matched,
    }
}

/// Both tori signs for SL₂(q).
pub fn sl2_oracle(q: u64, seed: u64) -> Result<Vec<Sl2Check>> {
    let g = Arc::new(sl2_projective(q)?);
    let table = CharacterTable::new(g, seed)?;
    Ok([1, -1]
        .iter()
        .filter(|&&eps| q as i64 - eps > 1)
        .map(|&eps| sl2_check(&table, q, eps))
        .collect())
}

/// Odd primes dividing q + 1.
pub fn weil_primes(q: u64) -> Vec<u64> {
    factor(q + 1)
        .into_iter()
        .map(|(p, _)| p)
        .filter(|&p| p != 2)
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_unitary_groups() {
        let k = Fq2::new(2).unwrap();
        assert_eq!(gu_group(&k, 1).unwrap().len(), 3);
        assert_eq!(gu_group(&k, 2).unwrap().len(), 18);
        assert_eq!(gu_group(&k, 3).unwrap().len(), 648);
        assert_eq!(gu_order(3, 2), 648);
        for n in 1..=3 {
            assert_eq!(
                gu_group(&k, n).unwrap(),
                gu_group_brute_force(&k, n),
                "n = {n}"
            );
        }
        let k3 = Fq2::new(3).unwrap();
        assert_eq!(gu_group(&k3, 2).unwrap().len() as u128, gu_order(2, 3));
        assert!(matches!(gu_group(&k3, 4), Err(Error::SizeBoundExceeded(_))));
    }

    #[test]
    fn kernel_dimensions() {
        let k = Fq2::new(2).unwrap();
        let id = FqMatrix::identity(3);
        assert_eq!(kernel_dimension(&k, &id, 1), 3);
        assert_eq!(kernel_dimension(&k, &id, k.primitive), 0);
        let b = k.xi_hat();
        let h = FqMatrix::diagonal(&[b, k.inv(b), 1]);
        assert!(h.is_unitary(&k));
        assert_eq!(kernel_dimension(&k, &h, b), 1);
    }

    #[test]
    fn weil_values() {
        let k = Fq2::new(2).unwrap();
        let id = FqMatrix::identity(3);
        assert_eq!(weil_value(&k, &id, 1), Cyclotomic::from_int(3));
        let z = FqMatrix::diagonal(&[k.xi_hat(); 3]);
        let v = weil_value(&k, &z, 1);
        assert_eq!(&v * &v.conj(), Cyclotomic::from_int(9));
        // diag(β, β⁻¹, 1): (ξ^{im} + ξ^{−im}) + (q^{n−2} + 1)/(q + 1), m = 1
        let b = k.xi_hat();
        let h = FqMatrix::diagonal(&[b, k.inv(b), 1]);
        for i in 1..=2 {
            let want =
                &(&Cyclotomic::root(3, i) + &Cyclotomic::root(3, -i)) + &Cyclotomic::from_int(1);
            assert_eq!(weil_value(&k, &h, i as u64), want);
        }
    }

    #[test]
    fn gu_3_2_weil_characters() {
        let c = weil_consistency(3, 2, 3, 0).unwrap();
        assert_eq!(c.group_order, 648);
        assert!(c.class_function && c.degree && c.orthonormal);
        assert!(c.levels.iter().all(|l| l.level == 1 && l.alpha_level == 1));
        assert_eq!(c.table_match, Some(true));
        assert!(c.passed());
        assert!(!weil_consistency(3, 3, 3, 0).unwrap().applicable);
    }

    #[test]
    fn sl2_values() {
        assert_eq!(sl2_semisimple_value(8, -1, 1, 0), Cyclotomic::from_int(2));
        assert_eq!(sl2_semisimple_value(8, -1, 3, 3), Cyclotomic::from_int(2));
        assert_eq!(sl2_semisimple_value(8, -1, 1, 3), Cyclotomic::from_int(-1));
        let g = sl2_projective(8).unwrap();
        assert_eq!(g.order(), 504);
        assert_eq!(sl2_projective(4).unwrap().order(), 60);
    }

    #[test]
    fn sl2_8_against_table() {
        let checks = sl2_oracle(8, 0).unwrap();
        assert_eq!(checks.len(), 2);
        for c in &checks {
            assert!(c.matched, "{c:?}");
        }
        assert_eq!(checks[0].characters, 3);
        assert_eq!(checks[1].characters, 4);
        // the unsigned identity fails for the degree-7 characters
        let g = Arc::new(sl2_projective(8).unwrap());
        let t = CharacterTable::new(g, 0).unwrap();
        let unsigned = sl2_check_unsigned(&t);
        assert!(!unsigned);
    }

    fn sl2_check_unsigned(t: &CharacterTable) -> bool {
        let g = t.group();
        let h0 = (0..g.order() as usize)
            .find(|&x| g.element_order(x) == 9)
            .unwrap();
        t.irreducibles()
            .iter()
            .filter(|c| c.degree() == 7)
            .all(|c| (1..=4).any(|i| c.values[g.class_of(h0)] == sl2_semisimple_value(8, -1, i, 1)))
    }
}
