//! Dixon–Schneider over GF(q).
//!
//! Common eigenvectors of the class matrices give the central characters mod q;
//! degrees come from the norm formula and exact values from the eigenvalue
//! multiplicities of each class representative.

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::arith::{inv_mod, isqrt, mul_mod, pow_mod, prime_one_mod, root_of_unity_mod};
use crate::cyclo::Cyclotomic;
use crate::error::{Error, Result};
use crate::perm::Group;

/// Prime and primitive exp(G)-th root used by the eigenvector search.
pub fn dixon_prime(order: u64, exponent: u64) -> (u64, u64) {
    let bound = 2 * (isqrt(order) + u64::from(isqrt(order) * isqrt(order) != order));
    let q = prime_one_mod(exponent, bound);
    (q, root_of_unity_mod(exponent, q))
}

struct Fq(u64);

impl Fq {
    fn add(&self, a: u64, b: u64) -> u64 {
        (a + b) % self.0
    }
    fn sub(&self, a: u64, b: u64) -> u64 {
        (a + self.0 - b) % self.0
    }
    fn mul(&self, a: u64, b: u64) -> u64 {
        mul_mod(a, b, self.0)
    }
    fn inv(&self, a: u64) -> u64 {
        inv_mod(a, self.0)
    }
}

/// Reduced row echelon form in place; returns pivot columns.
fn rref(f: &Fq, m: &mut Vec<Vec<u64>>) -> Vec<usize> {
    let rows = m.len();
    let cols = if rows == 0 { 0 } else { m[0].len() };
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| m[i][c] != 0) else {
            continue;
        };
        m.swap(r, p);
        let inv = f.inv(m[r][c]);
        for x in m[r].iter_mut() {
            *x = f.mul(*x, inv);
        }
        for i in 0..rows {
            if i != r && m[i][c] != 0 {
                let t = m[i][c];
                for k in 0..cols {
                    let s = f.mul(t, m[r][k]);
                    m[i][k] = f.sub(m[i][k], s);
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    m.truncate(r);
    pivots
}

/// Basis of the right kernel of a square matrix.
fn kernel(f: &Fq, a: &[Vec<u64>]) -> Vec<Vec<u64>> {
    let d = a.len();
    let mut m = a.to_vec();
    let pivots = rref(f, &mut m);
    let free: Vec<usize> = (0..d).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&fc| {
            let mut v = vec![0u64; d];
            v[fc] = 1;
            for (row, &pc) in pivots.iter().enumerate() {
                v[pc] = f.sub(0, m[row][fc]);
            }
            v
        })
        .collect()
}

/// Characteristic polynomial (constant term first) via Hessenberg reduction.
fn char_poly(f: &Fq, a: &[Vec<u64>]) -> Vec<u64> {
    let d = a.len();
    let mut h = a.to_vec();
    for c in 0..d.saturating_sub(2) {
        let Some(i) = (c + 1..d).find(|&i| h[i][c] != 0) else {
            continue;
        };
        if i != c + 1 {
            h.swap(i, c + 1);
            for row in h.iter_mut() {
                row.swap(i, c + 1);
            }
        }
        let inv = f.inv(h[c + 1][c]);
        for k in c + 2..d {
            let u = f.mul(h[k][c], inv);
            if u == 0 {
                continue;
            }
            for j in 0..d {
                let t = f.mul(u, h[c + 1][j]);
                h[k][j] = f.sub(h[k][j], t);
            }
            for row in h.iter_mut() {
                let t = f.mul(u, row[k]);
                row[c + 1] = f.add(row[c + 1], t);
            }
        }
    }
    let mut polys: Vec<Vec<u64>> = vec![vec![1]];
    for m in 1..=d {
        let prev = &polys[m - 1];
        let mut pm = vec![0u64; m + 1];
        for (i, &c) in prev.iter().enumerate() {
            pm[i + 1] = f.add(pm[i + 1], c);
            pm[i] = f.sub(pm[i], f.mul(h[m - 1][m - 1], c));
        }
        let mut t = 1u64;
        for i in 1..m {
            t = f.mul(t, h[m - i][m - i - 1]);
            let coef = f.mul(t, h[m - i - 1][m - 1]);
            for (k, &c) in polys[m - i - 1].iter().enumerate() {
                pm[k] = f.sub(pm[k], f.mul(coef, c));
            }
        }
        polys.push(pm);
    }
    polys.pop().unwrap()
}

fn eval(f: &Fq, poly: &[u64], x: u64) -> u64 {
    poly.iter().rev().fold(0, |acc, &c| f.add(f.mul(acc, x), c))
}

/// Irreducible characters of `g`, unordered, as value vectors over its classes.
pub fn irreducible_values(g: &Group, seed: u64) -> Result<Vec<Vec<Cyclotomic>>> {
    let classes = g.conjugacy_classes();
    let r = classes.len();
    let order = g.order();
    let e = g.exponent();
    let (q, z) = dixon_prime(order, e);
    let f = Fq(q);

    let class_matrix = |j: usize| -> Vec<Vec<u64>> {
        let mut m = vec![vec![0u64; r]; r];
        for (i, ci) in classes.iter().enumerate() {
            for &x in &classes[j].members {
                let y = g.mul(g.inv(x), ci.representative);
                m[g.class_of(y)][i] += 1;
            }
        }
        for row in m.iter_mut() {
            for x in row.iter_mut() {
                *x %= q;
            }
        }
        m
    };

    let mut order_j: Vec<usize> = (1..r).collect();
    if seed != 0 {
        order_j.shuffle(&mut ChaCha8Rng::seed_from_u64(seed));
    }
    let identity: Vec<Vec<u64>> = (0..r)
        .map(|i| (0..r).map(|k| u64::from(i == k)).collect())
        .collect();
    let mut spaces: Vec<Vec<Vec<u64>>> = vec![identity];
    for &j in &order_j {
        if spaces.iter().all(|s| s.len() == 1) {
            break;
        }
        let mj = class_matrix(j);
        let mut next = Vec::new();
        for mut basis in spaces {
            if basis.len() == 1 {
                next.push(basis);
                continue;
            }
            let pivots = rref(&f, &mut basis);
            let d = basis.len();
            let images: Vec<Vec<u64>> = basis
                .iter()
                .map(|b| {
                    (0..r)
                        .map(|k| (0..r).fold(0, |acc, i| f.add(acc, f.mul(mj[k][i], b[i]))))
                        .collect()
                })
                .collect();
            // A[s][t]: coordinate s of M_j b_t
            let a: Vec<Vec<u64>> = (0..d)
                .map(|s| (0..d).map(|t| images[t][pivots[s]]).collect())
                .collect();
            let cp = char_poly(&f, &a);
            let roots: Vec<u64> = (0..q).filter(|&x| eval(&f, &cp, x) == 0).collect();
            if roots.len() == 1 {
                next.push(basis);
                continue;
            }
            let mut total = 0;
            for lam in roots {
                let shifted: Vec<Vec<u64>> = (0..d)
                    .map(|s| {
                        (0..d)
                            .map(|t| if s == t { f.sub(a[s][t], lam) } else { a[s][t] })
                            .collect()
                    })
                    .collect();
                let ker = kernel(&f, &shifted);
                total += ker.len();
                let vecs: Vec<Vec<u64>> = ker
                    .iter()
                    .map(|c| {
                        (0..r)
                            .map(|k| (0..d).fold(0, |acc, t| f.add(acc, f.mul(c[t], basis[t][k]))))
                            .collect()
                    })
                    .collect();
                next.push(vecs);
            }
            if total != d {
                return Err(Error::LiftingFailure(format!(
                    "class matrix {j} is not diagonalisable mod {q}"
                )));
            }
        }
        spaces = next;
    }
    if spaces.iter().any(|s| s.len() != 1) || spaces.len() != r {
        return Err(Error::LiftingFailure(
            "eigenspaces did not split into lines".into(),
        ));
    }

    let inv_class: Vec<usize> = classes
        .iter()
        .map(|c| g.class_of(g.inv(c.representative)))
        .collect();
    let power_classes: Vec<Vec<usize>> = classes
        .iter()
        .map(|c| {
            (0..c.element_order as i64)
                .map(|l| g.class_of(g.pow(c.representative, l)))
                .collect()
        })
        .collect();
    let mut out = Vec::with_capacity(r);
    for space in spaces {
        let v = &space[0];
        if v[0] == 0 {
            return Err(Error::LiftingFailure(
                "eigenvector vanishes at the identity".into(),
            ));
        }
        let s0 = f.inv(v[0]);
        let w: Vec<u64> = v.iter().map(|&x| f.mul(x, s0)).collect();
        let norm = (0..r).fold(0, |acc, i| {
            let t = f.mul(f.mul(w[i], w[inv_class[i]]), f.inv(classes[i].size % q));
            f.add(acc, t)
        });
        if norm == 0 {
            return Err(Error::LiftingFailure(
                "zero norm for a central character".into(),
            ));
        }
        let d2 = f.mul(order % q, f.inv(norm));
        let deg = (1..=isqrt(order))
            .find(|&d| mul_mod(d, d, q) == d2)
            .ok_or_else(|| {
                Error::LiftingFailure("degree is not a square root below sqrt|G|".into())
            })?;
        let chi: Vec<u64> = (0..r)
            .map(|i| f.mul(f.mul(w[i], deg), f.inv(classes[i].size % q)))
            .collect();
        let mut values = Vec::with_capacity(r);
        for (i, c) in classes.iter().enumerate() {
            let o = c.element_order;
            let zo = pow_mod(z, e / o, q);
            let inv_o = f.inv(o % q);
            let mut mult = vec![0i64; o as usize];
            let mut sum = 0u64;
            for (t, m) in mult.iter_mut().enumerate() {
                let step = pow_mod(zo, (o - t as u64 % o) % o, q);
                let mut zt = 1u64;
                let mut acc = 0u64;
                for l in 0..o as usize {
                    acc = f.add(acc, f.mul(chi[power_classes[i][l]], zt));
                    zt = f.mul(zt, step);
                }
                let mt = f.mul(acc, inv_o);
                if mt > deg {
                    return Err(Error::LiftingFailure(format!(
                        "multiplicity {mt} exceeds degree {deg}"
                    )));
                }
                *m = mt as i64;
                sum += mt;
            }
            if sum != deg {
                return Err(Error::LiftingFailure(format!(
                    "multiplicities sum to {sum}, degree is {deg}"
                )));
            }
            values.push(Cyclotomic::from_int_powers(o, &mult).lift(e));
        }
        out.push(values);
    }
    Ok(out)
}
