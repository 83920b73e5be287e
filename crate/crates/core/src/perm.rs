//! Permutation groups small enough to enumerate.
//!
//! Permutations act on the right: `a.then(b)` maps `i` to `b[a[i]]`. A [`Group`]
//! stores every element in lexicographic order of image arrays, so element
//! index order is the fixed total order used for tie-breaking everywhere.
//! Subgroups are ordinary `Group` values with their own element lists; use
//! [`Group::index_of`] on the parent to map between the two.

use std::collections::{HashMap, HashSet, VecDeque};
use std::fmt;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::arith::{self, crt, lcm, split_part};
use crate::error::{Error, Result};

pub const DEFAULT_MAX_ORDER: usize = 20_000;

/// Enumeration bound: `BLOCKSCOPE_MAX_ORDER` if set, else 20 000 elements.
pub fn enumeration_bound() -> usize {
    std::env::var("BLOCKSCOPE_MAX_ORDER")
        .ok()
        .and_then(|s| s.trim().parse().ok())
        .unwrap_or(DEFAULT_MAX_ORDER)
}

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation(Box<[u16]>);

impl Permutation {
    pub fn new(images: Vec<usize>) -> Result<Self> {
        let n = images.len();
        if n > u16::MAX as usize {
            return Err(Error::MalformedPermutation(format!("degree {n} too large")));
        }
        let mut seen = vec![false; n];
        for &i in &images {
            if i >= n || seen[i] {
                return Err(Error::MalformedPermutation(format!(
                    "{images:?} is not a bijection of 0..{n}"
                )));
            }
            seen[i] = true;
        }
        Ok(Permutation(images.into_iter().map(|i| i as u16).collect()))
    }

    pub fn identity(n: usize) -> Self {
        Permutation((0..n as u16).collect())
    }

    /// Builds a permutation of `0..n` from disjoint cycles.
    pub fn from_cycles(n: usize, cycles: &[&[usize]]) -> Result<Self> {
        let mut img: Vec<usize> = (0..n).collect();
        for c in cycles {
            for (k, &a) in c.iter().enumerate() {
                if a >= n {
                    return Err(Error::MalformedPermutation(format!(
                        "point {a} out of range"
                    )));
                }
                img[a] = c[(k + 1) % c.len()];
            }
        }
        Self::new(img)
    }

    pub fn degree(&self) -> usize {
        self.0.len()
    }

    pub fn images(&self) -> Vec<usize> {
        self.0.iter().map(|&i| i as usize).collect()
    }

    pub fn image(&self, i: usize) -> usize {
        self.0[i] as usize
    }

    pub fn is_identity(&self) -> bool {
        self.0.iter().enumerate().all(|(i, &j)| i == j as usize)
    }

    /// `self` followed by `other`.
    pub fn then(&self, other: &Self) -> Self {
        Permutation(self.0.iter().map(|&i| other.0[i as usize]).collect())
    }

    pub fn inverse(&self) -> Self {
        let mut inv = vec![0u16; self.0.len()];
        for (i, &j) in self.0.iter().enumerate() {
            inv[j as usize] = i as u16;
        }
        Permutation(inv.into())
    }

    /// `other⁻¹ · self · other`.
    pub fn conjugate_by(&self, other: &Self) -> Self {
        other.inverse().then(self).then(other)
    }

    pub fn pow(&self, k: i64) -> Self {
        let base = if k < 0 { self.inverse() } else { self.clone() };
        let mut e = k.unsigned_abs();
        let mut r = Self::identity(self.degree());
        let mut b = base;
        while e > 0 {
            if e & 1 == 1 {
                r = r.then(&b);
            }
            b = b.then(&b);
            e >>= 1;
        }
        r
    }

    /// Order as the lcm of the cycle lengths.
    pub fn order(&self) -> u64 {
        let n = self.0.len();
        let mut seen = vec![false; n];
        let mut ord = 1u64;
        for s in 0..n {
            if seen[s] {
                continue;
            }
            let mut len = 0u64;
            let mut i = s;
            while !seen[i] {
                seen[i] = true;
                i = self.0[i] as usize;
                len += 1;
            }
            ord = lcm(ord, len);
        }
        ord
    }

    /// The p-part and p'-part of `self`, both as powers of `self`.
    pub fn p_decomposition(&self, p: u64) -> (Self, Self) {
        let (u, v) = p_part_exponents(self.order(), p);
        (self.pow(u as i64), self.pow(v as i64))
    }
}

/// Exponents `(u, v)` with `g^u = g_p`, `g^v = g_{p'}` for an element of order `o`.
pub fn p_part_exponents(o: u64, p: u64) -> (u64, u64) {
    let (pa, m) = split_part(o, p);
    (crt(1, pa, 0, m), crt(0, pa, 1, m))
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let n = self.0.len();
        let mut seen = vec![false; n];
        let mut any = false;
        for s in 0..n {
            if seen[s] || self.0[s] as usize == s {
                continue;
            }
            any = true;
            write!(f, "(")?;
            let mut i = s;
            let mut first = true;
            while !seen[i] {
                seen[i] = true;
                if !first {
                    write!(f, " ")?;
                }
                write!(f, "{i}")?;
                first = false;
                i = self.0[i] as usize;
            }
            write!(f, ")")?;
        }
        if !any {
            write!(f, "()")?;
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConjClass {
    /// Index of the least element of the class.
    pub representative: usize,
    pub size: u64,
    pub centralizer_order: u64,
    pub element_order: u64,
    pub members: Vec<usize>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SubgroupProfile {
    pub is_cyclic: bool,
    pub exponent: u64,
    pub is_abelian: bool,
}

pub struct Group {
    degree: usize,
    generators: Vec<Permutation>,
    elements: Vec<Permutation>,
    index: HashMap<Permutation, usize>,
    inverse: Vec<usize>,
    element_order: Vec<u64>,
    classes: Vec<ConjClass>,
    class_of: Vec<usize>,
    exponent: u64,
}

impl fmt::Debug for Group {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Group")
            .field("degree", &self.degree)
            .field("order", &self.order())
            .field("generators", &self.generators)
            .finish()
    }
}

impl Group {
    /// Enumerates ⟨gens⟩ on `degree` points, failing past the enumeration bound.
    pub fn from_generators(degree: usize, gens: Vec<Permutation>) -> Result<Self> {
        Self::from_generators_bounded(degree, gens, enumeration_bound())
    }

    pub fn from_generators_bounded(
        degree: usize,
        gens: Vec<Permutation>,
        bound: usize,
    ) -> Result<Self> {
        for g in &gens {
            if g.degree() != degree {
                return Err(Error::MalformedPermutation(format!(
                    "generator {g:?} has degree {} but the group has degree {degree}",
                    g.degree()
                )));
            }
        }
        let id = Permutation::identity(degree);
        let mut seen: HashSet<Permutation> = HashSet::new();
        seen.insert(id.clone());
        let mut queue = VecDeque::from([id]);
        let mut elements = Vec::new();
        while let Some(x) = queue.pop_front() {
            for s in &gens {
                let y = x.then(s);
                if !seen.contains(&y) {
                    if seen.len() >= bound {
                        return Err(Error::EnumerationBoundExceeded { bound });
                    }
                    seen.insert(y.clone());
                    queue.push_back(y);
                }
            }
            elements.push(x);
        }
        Ok(Self::from_sorted_parts(degree, gens, elements))
    }

    /// Builds a group from a complete, multiplicatively closed element list.
    fn from_sorted_parts(
        degree: usize,
        generators: Vec<Permutation>,
        mut elements: Vec<Permutation>,
    ) -> Self {
        elements.sort();
        let index: HashMap<Permutation, usize> = elements
            .iter()
            .enumerate()
            .map(|(i, p)| (p.clone(), i))
            .collect();
        let inverse = elements.iter().map(|x| index[&x.inverse()]).collect();
        let element_order: Vec<u64> = elements.iter().map(Permutation::order).collect();
        let exponent = element_order.iter().fold(1, |a, &o| lcm(a, o));
        let mut g = Group {
            degree,
            generators,
            elements,
            index,
            inverse,
            element_order,
            classes: Vec::new(),
            class_of: Vec::new(),
            exponent,
        };
        g.compute_classes();
        g
    }

    fn compute_classes(&mut self) {
        let n = self.elements.len();
        let mut class_of = vec![usize::MAX; n];
        let mut raw: Vec<Vec<usize>> = Vec::new();
        let gens_inv: Vec<Permutation> = self.generators.iter().map(Permutation::inverse).collect();
        for start in 0..n {
            if class_of[start] != usize::MAX {
                continue;
            }
            let id = raw.len();
            class_of[start] = id;
            let mut members = vec![start];
            let mut k = 0;
            while k < members.len() {
                let x = &self.elements[members[k]];
                for (s, si) in self.generators.iter().zip(&gens_inv) {
                    let y = self.index[&si.then(x).then(s)];
                    if class_of[y] == usize::MAX {
                        class_of[y] = id;
                        members.push(y);
                    }
                }
                k += 1;
            }
            members.sort_unstable();
            raw.push(members);
        }
        let order = n as u64;
        let mut classes: Vec<ConjClass> = raw
            .into_iter()
            .map(|members| ConjClass {
                representative: members[0],
                size: members.len() as u64,
                centralizer_order: order / members.len() as u64,
                element_order: self.element_order[members[0]],
                members,
            })
            .collect();
        classes.sort_by_key(|c| (c.element_order, c.size, c.representative));
        for (ci, c) in classes.iter().enumerate() {
            for &m in &c.members {
                class_of[m] = ci;
            }
        }
        self.classes = classes;
        self.class_of = class_of;
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn order(&self) -> u64 {
        self.elements.len() as u64
    }

    pub fn generators(&self) -> &[Permutation] {
        &self.generators
    }

    pub fn elements(&self) -> &[Permutation] {
        &self.elements
    }

    pub fn element(&self, i: usize) -> &Permutation {
        &self.elements[i]
    }

    pub fn index_of(&self, x: &Permutation) -> Option<usize> {
        self.index.get(x).copied()
    }

    pub fn contains(&self, x: &Permutation) -> bool {
        self.index.contains_key(x)
    }

    pub fn mul(&self, i: usize, j: usize) -> usize {
        self.index[&self.elements[i].then(&self.elements[j])]
    }

    pub fn inv(&self, i: usize) -> usize {
        self.inverse[i]
    }

    pub fn pow(&self, i: usize, k: i64) -> usize {
        let o = self.element_order[i] as i64;
        self.index[&self.elements[i].pow(k.rem_euclid(o))]
    }

    pub fn element_order(&self, i: usize) -> u64 {
        self.element_order[i]
    }

    pub fn exponent(&self) -> u64 {
        self.exponent
    }

    pub fn conjugacy_classes(&self) -> &[ConjClass] {
        &self.classes
    }

    pub fn class_count(&self) -> usize {
        self.classes.len()
    }

    pub fn class_of(&self, i: usize) -> usize {
        self.class_of[i]
    }

    /// Class index of an arbitrary permutation of the group.
    pub fn class_of_perm(&self, x: &Permutation) -> Option<usize> {
        self.index_of(x).map(|i| self.class_of[i])
    }

    pub fn identity_index(&self) -> usize {
        0
    }

    /// Element indices of ⟨gens⟩, sorted.
    pub fn closure(&self, gens: &[usize]) -> Vec<usize> {
        let mut inside = vec![false; self.elements.len()];
        inside[0] = true;
        let mut out = vec![0];
        let mut k = 0;
        while k < out.len() {
            let x = out[k];
            for &s in gens {
                let y = self.mul(x, s);
                if !inside[y] {
                    inside[y] = true;
                    out.push(y);
                }
            }
            k += 1;
        }
        out.sort_unstable();
        out
    }

    fn subgroup_with(&self, gens: Vec<usize>, elems: &[usize]) -> Group {
        let perms: Vec<Permutation> = elems.iter().map(|&i| self.elements[i].clone()).collect();
        let gp = gens.into_iter().map(|i| self.elements[i].clone()).collect();
        Group::from_sorted_parts(self.degree, gp, perms)
    }

    /// The subgroup generated by the given elements.
    pub fn subgroup_from_gens(&self, gens: &[usize]) -> Group {
        let elems = self.closure(gens);
        self.subgroup_with(gens.to_vec(), &elems)
    }

    /// The subgroup with exactly these elements (which must form a subgroup);
    /// a small generating set is picked greedily in element order.
    pub fn subgroup_from_elements(&self, elems: &[usize]) -> Group {
        let mut sorted = elems.to_vec();
        sorted.sort_unstable();
        sorted.dedup();
        let mut gens = Vec::new();
        let mut have = vec![false; self.elements.len()];
        have[0] = true;
        let mut count = 1;
        for &x in &sorted {
            if count == sorted.len() {
                break;
            }
            if !have[x] {
                gens.push(x);
                let cl = self.closure(&gens);
                count = cl.len();
                for i in cl {
                    have[i] = true;
                }
            }
        }
        debug_assert_eq!(count, sorted.len(), "element list is not a subgroup");
        self.subgroup_with(gens, &sorted)
    }

    /// Parent indices of the elements of a subgroup given as its own `Group`.
    pub fn embed(&self, h: &Group) -> Vec<usize> {
        h.elements.iter().map(|x| self.index[x]).collect()
    }

    pub fn trivial_subgroup(&self) -> Group {
        self.subgroup_from_gens(&[])
    }

    pub fn whole(&self) -> Group {
        self.subgroup_with(
            self.generators.iter().map(|g| self.index[g]).collect(),
            &(0..self.elements.len()).collect::<Vec<_>>(),
        )
    }

    pub fn centralizer(&self, s: &[usize]) -> Group {
        let elems: Vec<usize> = (0..self.elements.len())
            .filter(|&g| s.iter().all(|&x| self.mul(g, x) == self.mul(x, g)))
            .collect();
        self.subgroup_from_elements(&elems)
    }

    /// N_G(H) for a subgroup `h` on the same points.
    pub fn normalizer(&self, h: &Group) -> Group {
        let elems: Vec<usize> = (0..self.elements.len())
            .filter(|&g| {
                let x = &self.elements[g];
                h.generators.iter().all(|s| h.contains(&s.conjugate_by(x)))
            })
            .collect();
        self.subgroup_from_elements(&elems)
    }

    /// H^g = g⁻¹Hg.
    pub fn conjugate_subgroup(&self, h: &Group, g: usize) -> Group {
        let x = &self.elements[g];
        let elems: Vec<usize> = h
            .elements
            .iter()
            .map(|y| self.index[&y.conjugate_by(x)])
            .collect();
        self.subgroup_from_elements(&elems)
    }

    /// Some `g` with `a^g = b`, if the subgroups are conjugate.
    pub fn conjugating_element(&self, a: &Group, b: &Group) -> Option<usize> {
        if a.order() != b.order() {
            return None;
        }
        (0..self.elements.len()).find(|&g| {
            let x = &self.elements[g];
            a.generators.iter().all(|s| b.contains(&s.conjugate_by(x)))
        })
    }

    /// Set of class indices meeting the subgroup `h`.
    pub fn classes_meeting(&self, h: &Group) -> Vec<usize> {
        let mut cs: Vec<usize> = h
            .elements
            .iter()
            .map(|x| self.class_of[self.index[x]])
            .collect();
        cs.sort_unstable();
        cs.dedup();
        cs
    }

    /// A Sylow p-subgroup, grown one factor p at a time inside successive normalizers.
    /// The seed only changes which of the conjugate Sylow subgroups is returned.
    pub fn sylow_subgroup(&self, p: u64, seed: u64) -> Group {
        let target = split_part(self.order(), p).0;
        let mut rng = ChaCha8Rng::seed_from_u64(seed ^ p.wrapping_mul(0x9e37_79b9_7f4a_7c15));
        let mut pgens: Vec<usize> = Vec::new();
        let mut pg = self.trivial_subgroup();
        while pg.order() < target {
            let n = self.normalizer(&pg);
            let mut scan: Vec<usize> = self.embed(&n);
            scan.shuffle(&mut rng);
            let z = scan.into_iter().find_map(|x| {
                let (y, _) = self.elements[x].p_decomposition(p);
                if pg.contains(&y) {
                    return None;
                }
                // smallest p-power o with y^o in P, then step back once
                let mut yo = y.clone();
                let mut o = 1i64;
                while !pg.contains(&yo) {
                    yo = yo.pow(p as i64);
                    o *= p as i64;
                }
                Some(self.index[&y.pow(o / p as i64)])
            });
            let z = z.expect("a non-Sylow p-subgroup has p dividing its normalizer quotient");
            pgens.push(z);
            pg = self.subgroup_from_gens(&pgens);
        }
        pg
    }

    /// (g_p, g_p') for the element with index `g`.
    pub fn p_decomposition(&self, g: usize, p: u64) -> (usize, usize) {
        let (u, v) = p_part_exponents(self.element_order[g], p);
        (self.pow(g, u as i64), self.pow(g, v as i64))
    }

    /// Class map K ↦ class of g^k for g ∈ K.
    pub fn power_class_map(&self, k: i64) -> Vec<usize> {
        self.classes
            .iter()
            .map(|c| self.class_of[self.pow(c.representative, k)])
            .collect()
    }

    pub fn profile(&self) -> SubgroupProfile {
        let is_abelian = self
            .generators
            .iter()
            .all(|a| self.generators.iter().all(|b| a.then(b) == b.then(a)));
        SubgroupProfile {
            is_cyclic: self.element_order.iter().any(|&o| o == self.order()),
            exponent: self.exponent,
            is_abelian,
        }
    }

    /// Whether all elements of the subgroup `h` lie in this group.
    pub fn contains_subgroup(&self, h: &Group) -> bool {
        h.generators.iter().all(|g| self.contains(g))
    }
}

/// Primes dividing a group order, increasing.
pub fn primes_dividing(order: u64) -> Vec<u64> {
    arith::prime_divisors(order)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn perm(n: usize, cycles: &[&[usize]]) -> Permutation {
        Permutation::from_cycles(n, cycles).unwrap()
    }

    pub(crate) fn sym(n: usize) -> Group {
        let mut gens = vec![perm(n, &[&(0..n).collect::<Vec<_>>()])];
        if n > 1 {
            gens.push(perm(n, &[&[0, 1]]));
        }
        Group::from_generators(n, gens).unwrap()
    }

    #[test]
    fn construction() {
        let t = Group::from_generators(1, vec![]).unwrap();
        assert_eq!(t.order(), 1);
        assert_eq!(t.conjugacy_classes().len(), 1);
        assert_eq!(sym(3).order(), 6);
        assert_eq!(sym(4).order(), 24);
        assert!(matches!(
            Permutation::new(vec![0, 0]),
            Err(Error::MalformedPermutation(_))
        ));
        let r = Group::from_generators_bounded(5, sym(5).generators().to_vec(), 100);
        assert_eq!(
            r.unwrap_err(),
            Error::EnumerationBoundExceeded { bound: 100 }
        );
    }

    #[test]
    fn s3_classes() {
        let g = sym(3);
        let sizes: Vec<u64> = g.conjugacy_classes().iter().map(|c| c.size).collect();
        assert_eq!(sizes, vec![1, 3, 2]);
        let orders: Vec<u64> = g
            .conjugacy_classes()
            .iter()
            .map(|c| c.element_order)
            .collect();
        assert_eq!(orders, vec![1, 2, 3]);
        // squares of transpositions are trivial
        assert_eq!(g.power_class_map(2)[1], 0);
        assert_eq!(g.power_class_map(1), vec![0, 1, 2]);
        assert_eq!(g.power_class_map(-1), vec![0, 1, 2]);
    }

    #[test]
    fn centralizers_normalizers_sylows() {
        let g = sym(4);
        assert_eq!(g.centralizer(&[0]).order(), 24);
        assert_eq!(g.normalizer(&g.whole()).order(), 24);
        let p2 = g.sylow_subgroup(2, 0);
        assert_eq!(p2.order(), 8);
        assert_eq!(g.normalizer(&p2).order(), 8);
        assert!(!p2.profile().is_abelian);
        assert_eq!(sym(3).sylow_subgroup(5, 0).order(), 1);
        let p3 = g.sylow_subgroup(3, 7);
        assert_eq!(p3.order(), 3);
    }

    #[test]
    fn p_decomposition_of_order_six() {
        let g = perm(5, &[&[0, 1, 2], &[3, 4]]);
        let (gp, gq) = g.p_decomposition(2);
        assert_eq!(gp, g.pow(3));
        assert_eq!(gq, g.pow(4));
        let id = Permutation::identity(4);
        assert_eq!(id.p_decomposition(3), (id.clone(), id.clone()));
        let c = perm(4, &[&[0, 1, 2, 3]]);
        assert_eq!(c.p_decomposition(2), (c.clone(), Permutation::identity(4)));
    }

    #[test]
    fn profiles() {
        let c9 = Group::from_generators(9, vec![perm(9, &[&[0, 1, 2, 3, 4, 5, 6, 7, 8]])]).unwrap();
        assert_eq!(
            c9.profile(),
            SubgroupProfile {
                is_cyclic: true,
                exponent: 9,
                is_abelian: true
            }
        );
        let v4 = Group::from_generators(
            4,
            vec![perm(4, &[&[0, 1], &[2, 3]]), perm(4, &[&[0, 2], &[1, 3]])],
        )
        .unwrap();
        assert_eq!(
            v4.profile(),
            SubgroupProfile {
                is_cyclic: false,
                exponent: 2,
                is_abelian: true
            }
        );
        let d8 = Group::from_generators(4, vec![perm(4, &[&[0, 1, 2, 3]]), perm(4, &[&[0, 2]])])
            .unwrap();
        assert_eq!(
            d8.profile(),
            SubgroupProfile {
                is_cyclic: false,
                exponent: 4,
                is_abelian: false
            }
        );
    }

    fn arb_group() -> impl Strategy<Value = Group> {
        let gen = proptest::sample::subsequence((0..6usize).collect::<Vec<_>>(), 6).prop_shuffle();
        proptest::collection::vec(gen, 1..3).prop_map(|gs| {
            let gens = gs
                .into_iter()
                .map(|v| Permutation::new(v).unwrap())
                .collect();
            Group::from_generators(6, gens).unwrap()
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(40))]

        #[test]
        fn classes_partition_the_group(g in arb_group()) {
            let total: u64 = g.conjugacy_classes().iter().map(|c| c.size).sum();
            prop_assert_eq!(total, g.order());
            for c in g.conjugacy_classes() {
                prop_assert_eq!(c.size * c.centralizer_order, g.order());
                prop_assert_eq!(g.centralizer(&[c.representative]).order(), c.centralizer_order);
            }
        }

        #[test]
        fn sylows_are_conjugate_across_seeds(g in arb_group(), s1 in 0u64..100, s2 in 0u64..100) {
            for p in primes_dividing(g.order()) {
                let a = g.sylow_subgroup(p, s1);
                let b = g.sylow_subgroup(p, s2);
                prop_assert_eq!(a.order(), split_part(g.order(), p).0);
                prop_assert!(g.conjugating_element(&a, &b).is_some());
            }
        }

        #[test]
        fn p_decomposition_matches_brute_force(g in arb_group(), p in prop::sample::select(vec![2u64, 3, 5])) {
            for x in 0..g.order() as usize {
                let (a, b) = g.p_decomposition(x, p);
                prop_assert_eq!(g.mul(a, b), x);
                prop_assert_eq!(g.mul(b, a), x);
                let o = g.element_order(x);
                let (op, oq) = split_part(o, p);
                prop_assert_eq!(g.element_order(a), op);
                prop_assert_eq!(g.element_order(b), oq);
                // uniqueness among powers of x
                let cands: Vec<(usize, usize)> = (0..o as i64)
                    .map(|k| g.pow(x, k))
                    .filter(|&y| g.element_order(y) == op)
                    .flat_map(|y| (0..o as i64).map(move |l| (y, l)))
                    .map(|(y, l)| (y, g.pow(x, l)))
                    .filter(|&(y, z)| g.element_order(z) == oq && g.mul(y, z) == x)
                    .collect();
                prop_assert!(cands.iter().all(|&c| c == (a, b)));
            }
        }

        #[test]
        fn power_maps_compose(g in arb_group(), k1 in 1i64..30, k2 in 1i64..30) {
            let e = g.exponent() as i64;
            prop_assume!(arith::gcd(k1 as u64, e as u64) == 1 && arith::gcd(k2 as u64, e as u64) == 1);
            let a = g.power_class_map(k1);
            let b = g.power_class_map(k2);
            let ab = g.power_class_map((k1 * k2) % e);
            for c in 0..g.class_count() {
                prop_assert_eq!(b[a[c]], ab[c]);
            }
        }
    }
}
