//! Character tables and class-function arithmetic.

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use crate::arith::{gcd, lcm, mul_mod, prime_one_mod, root_of_unity_mod, valuation};
use crate::cyclo::{self, Cyclotomic};
use crate::dixon;
use crate::error::{Error, Result};
use crate::perm::Group;
use crate::rat::Rat;

/// A class function, indexed by the classes of the group it lives on.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Character {
    pub values: Vec<Cyclotomic>,
    pub is_irreducible: bool,
}

impl Character {
    pub fn new(values: Vec<Cyclotomic>) -> Self {
        Character {
            values,
            is_irreducible: false,
        }
    }

    /// χ(1) as an integer.
    pub fn degree(&self) -> i64 {
        self.values[0]
            .as_rational()
            .and_then(|r| r.to_i64())
            .expect("character degrees are integers")
    }

    pub fn is_zero(&self) -> bool {
        self.values.iter().all(Cyclotomic::is_zero)
    }

    pub fn add(&self, other: &Character) -> Character {
        Character::new(
            self.values
                .iter()
                .zip(&other.values)
                .map(|(a, b)| a + b)
                .collect(),
        )
    }

    pub fn scale(&self, k: i64) -> Character {
        let r = Rat::int(k);
        Character::new(self.values.iter().map(|v| v.scale(&r)).collect())
    }

    pub fn level(&self, p: u64) -> u32 {
        cyclo::level(&self.values, p)
    }

    pub fn conductor(&self) -> u64 {
        cyclo::conductor(&self.values)
    }
}

/// Large prime Q ≡ 1 mod e with a primitive e-th root, for exact decompositions.
fn decomposition_prime(e: u64) -> (u64, u64) {
    static CACHE: OnceLock<Mutex<HashMap<u64, (u64, u64)>>> = OnceLock::new();
    let cache = CACHE.get_or_init(Default::default);
    if let Some(&hit) = cache.lock().unwrap().get(&e) {
        return hit;
    }
    let q = prime_one_mod(e, 1 << 40);
    let found = (q, root_of_unity_mod(e, q));
    cache.lock().unwrap().insert(e, found);
    found
}

#[derive(Clone, Debug)]
pub struct CharacterTable {
    group: Arc<Group>,
    irreducibles: Vec<Character>,
    /// k ↦ class map of g ↦ g^k, for k coprime to exp(G) and below it.
    power_maps: HashMap<u64, Vec<usize>>,
}

impl CharacterTable {
    /// The table of `group`. Rows are sorted by degree, with the trivial character
    /// first among the linear ones and the rest in lexicographic value order.
    /// `seed` only permutes the order of the splitting matrices.
    pub fn new(group: Arc<Group>, seed: u64) -> Result<Self> {
        let mut rows: Vec<Character> = dixon::irreducible_values(&group, seed)?
            .into_iter()
            .map(|values| Character {
                values,
                is_irreducible: true,
            })
            .collect();
        let trivial_key = |c: &Character| !c.values.iter().all(|v| *v == Cyclotomic::from_int(1));
        rows.sort_by(|a, b| {
            (a.degree(), trivial_key(a))
                .cmp(&(b.degree(), trivial_key(b)))
                .then_with(|| a.values.cmp(&b.values))
        });
        let e = group.exponent();
        let power_maps = (1..=e)
            .filter(|&k| gcd(k, e) == 1)
            .map(|k| (k % e, group.power_class_map(k as i64)))
            .collect();
        let table = CharacterTable {
            group,
            irreducibles: rows,
            power_maps,
        };
        table.check()?;
        Ok(table)
    }

    /// Row orthogonality and Σχ(1)² = |G|, verified exactly.
    fn check(&self) -> Result<()> {
        let r = self.class_count();
        if self.irreducibles.len() != r {
            return Err(Error::LiftingFailure("wrong number of characters".into()));
        }
        let squares: i64 = self
            .irreducibles
            .iter()
            .map(|c| c.degree() * c.degree())
            .sum();
        if squares as u64 != self.group.order() {
            return Err(Error::LiftingFailure(format!("Σχ(1)² = {squares} ≠ |G|")));
        }
        for (i, a) in self.irreducibles.iter().enumerate() {
            for (j, b) in self.irreducibles.iter().enumerate().skip(i) {
                let want = Rat::int(i64::from(i == j));
                if self.inner_product(a, b) != want {
                    return Err(Error::LiftingFailure(format!(
                        "rows {i} and {j} are not orthonormal"
                    )));
                }
            }
        }
        Ok(())
    }

    pub fn group(&self) -> &Group {
        &self.group
    }

    pub fn group_arc(&self) -> &Arc<Group> {
        &self.group
    }

    pub fn irreducibles(&self) -> &[Character] {
        &self.irreducibles
    }

    pub fn class_count(&self) -> usize {
        self.group.class_count()
    }

    pub fn degrees(&self) -> Vec<i64> {
        self.irreducibles.iter().map(Character::degree).collect()
    }

    /// Class map g ↦ g^k; `k` must be coprime to exp(G).
    pub fn power_map(&self, k: i64) -> Result<&[usize]> {
        let e = self.group.exponent();
        let kk = k.rem_euclid(e as i64) as u64;
        self.power_maps
            .get(&kk)
            .map(Vec::as_slice)
            .ok_or(Error::BadExponent { k, n: e })
    }

    pub fn trivial(&self) -> Character {
        Character::new(vec![Cyclotomic::from_int(1); self.class_count()])
    }

    pub fn regular(&self) -> Character {
        let mut values = vec![Cyclotomic::from_int(0); self.class_count()];
        values[0] = Cyclotomic::from_int(self.group.order() as i64);
        Character::new(values)
    }

    fn inverse_classes(&self) -> Vec<usize> {
        let g = &self.group;
        g.conjugacy_classes()
            .iter()
            .map(|c| g.class_of(g.inv(c.representative)))
            .collect()
    }

    /// (1/|G|) Σ |K| a(g) conj(b(g)).
    pub fn inner_product(&self, a: &Character, b: &Character) -> Rat {
        let classes = self.group.conjugacy_classes();
        let mut acc = Cyclotomic::from_int(0);
        for (i, c) in classes.iter().enumerate() {
            if a.values[i].is_zero() || b.values[i].is_zero() {
                continue;
            }
            let t = (&a.values[i] * &b.values[i].conj()).scale(&Rat::int(c.size as i64));
            acc = &acc + &t;
        }
        let acc = acc.scale(&Rat::new(1, self.group.order() as i64));
        acc.as_rational()
            .expect("inner products of class functions with real sums are rational")
    }

    /// Multiplicities of each irreducible in `psi`, which must be a character.
    pub fn decompose(&self, psi: &Character) -> Result<Vec<i64>> {
        let e = psi
            .values
            .iter()
            .fold(self.group.exponent(), |acc, v| lcm(acc, v.ambient()));
        let (q, z) = decomposition_prime(e);
        let classes = self.group.conjugacy_classes();
        let inv = self.inverse_classes();
        let embed = |v: &Cyclotomic| {
            v.embed_mod(q, e, z).ok_or_else(|| {
                Error::LiftingFailure("value not integral at the decomposition prime".into())
            })
        };
        let psi_mod: Vec<u64> = psi.values.iter().map(embed).collect::<Result<_>>()?;
        let inv_order = crate::arith::inv_mod(self.group.order() % q, q);
        let bound = psi.degree();
        let mut mult = Vec::with_capacity(self.irreducibles.len());
        for chi in &self.irreducibles {
            let mut acc = 0u64;
            for (i, c) in classes.iter().enumerate() {
                let conj = embed(&chi.values[inv[i]])?;
                acc = (acc + mul_mod(mul_mod(c.size % q, psi_mod[i], q), conj, q)) % q;
            }
            let m = mul_mod(acc, inv_order, q);
            let m = if m > q / 2 {
                m as i64 - q as i64
            } else {
                m as i64
            };
            if m < 0 || m > bound {
                return Err(Error::LiftingFailure(format!(
                    "multiplicity {m} outside [0, {bound}]"
                )));
            }
            mult.push(m);
        }
        if self.combine(&mult) != *psi {
            return Err(Error::LiftingFailure(
                "decomposition does not reconstruct the character".into(),
            ));
        }
        Ok(mult)
    }

    /// Σ m_χ χ.
    pub fn combine(&self, mult: &[i64]) -> Character {
        let mut values = vec![Cyclotomic::from_int(0); self.class_count()];
        for (chi, &m) in self.irreducibles.iter().zip(mult) {
            if m == 0 {
                continue;
            }
            let r = Rat::int(m);
            for (v, x) in values.iter_mut().zip(&chi.values) {
                *v = &*v + &x.scale(&r);
            }
        }
        Character::new(values)
    }

    /// Parent class of each class of the subgroup `h`.
    pub fn fusion(&self, h: &Group) -> Vec<usize> {
        h.conjugacy_classes()
            .iter()
            .map(|c| {
                self.group
                    .class_of_perm(h.element(c.representative))
                    .expect("subgroup element lies in the group")
            })
            .collect()
    }

    /// χ restricted to `h`, as a class function on the classes of `h`.
    pub fn restrict(&self, chi: &Character, h: &Group) -> Character {
        let values = self
            .fusion(h)
            .into_iter()
            .map(|k| chi.values[k].clone())
            .collect();
        Character::new(values)
    }

    /// ψ^G for a class function ψ on the subgroup `h`:
    /// ψ^G(g) = |C_G(g)|/|H| Σ_{L ⊆ K ∩ H} |L| ψ(L).
    pub fn induce(&self, psi: &Character, h: &Group) -> Character {
        let classes = self.group.conjugacy_classes();
        let mut sums = vec![Cyclotomic::from_int(0); classes.len()];
        for (l, (c, k)) in h.conjugacy_classes().iter().zip(self.fusion(h)).enumerate() {
            sums[k] = &sums[k] + &psi.values[l].scale(&Rat::int(c.size as i64));
        }
        let values = sums
            .iter()
            .zip(classes)
            .map(|(s, c)| s.scale(&Rat::new(c.centralizer_order as i64, h.order() as i64)))
            .collect();
        Character::new(values)
    }

    /// lev of {χ(h) : h ∈ H}.
    pub fn restricted_level(&self, chi: &Character, h: &Group, p: u64) -> u32 {
        let mut ks = self.fusion(h);
        ks.sort_unstable();
        ks.dedup();
        ks.into_iter()
            .map(|k| cyclo::value_level(&chi.values[k], p))
            .max()
            .unwrap_or(0)
    }

    /// Levels of all irreducibles.
    pub fn levels(&self, p: u64) -> Vec<u32> {
        self.irreducibles.iter().map(|c| c.level(p)).collect()
    }

    /// Δ_i(Ψ): the constituents of Ψ of level `i`, with multiplicity.
    pub fn delta(&self, psi: &Character, i: u32, p: u64) -> Result<Character> {
        let mult = self.decompose(psi)?;
        let levels = self.levels(p);
        let kept: Vec<i64> = mult
            .iter()
            .zip(&levels)
            .map(|(&m, &l)| if l == i { m } else { 0 })
            .collect();
        Ok(self.combine(&kept))
    }

    /// Δ_i(Ψ)(1) for i = 0..=max level.
    pub fn delta_degrees(&self, psi: &Character, p: u64) -> Result<Vec<i64>> {
        let mult = self.decompose(psi)?;
        let levels = self.levels(p);
        let top = levels.iter().copied().max().unwrap_or(0) as usize;
        let mut out = vec![0i64; top + 1];
        for ((m, l), chi) in mult.iter().zip(&levels).zip(&self.irreducibles) {
            out[*l as usize] += m * chi.degree();
        }
        Ok(out)
    }

    /// ℓ(Ψ): the largest i with Δ_i(Ψ)(1) prime to p, if any.
    pub fn ell(&self, psi: &Character, p: u64) -> Result<Option<u32>> {
        let degs = self.delta_degrees(psi, p)?;
        Ok(degs
            .iter()
            .rposition(|&d| d.rem_euclid(p as i64) != 0)
            .map(|i| i as u32))
    }

    /// χ^σ for σ: ζ ↦ ζ^k, read off the power map.
    pub fn galois_on_character(&self, chi: &Character, k: i64) -> Result<Character> {
        let pm = self.power_map(k)?;
        Ok(Character {
            values: pm.iter().map(|&c| chi.values[c].clone()).collect(),
            is_irreducible: chi.is_irreducible,
        })
    }

    /// Index of an irreducible equal to `chi`.
    pub fn position(&self, chi: &Character) -> Option<usize> {
        self.irreducibles
            .iter()
            .position(|c| c.values == chi.values)
    }

    /// ν_p(χ(1)) for each irreducible.
    pub fn degree_valuations(&self, p: u64) -> Vec<u32> {
        self.irreducibles
            .iter()
            .map(|c| valuation(c.degree() as u64, p))
            .collect()
    }
}

#[cfg(test)]
pub(crate) mod tests {
    use super::*;
    use crate::perm::Permutation;
    use proptest::prelude::*;

    fn perm(n: usize, cycles: &[&[usize]]) -> Permutation {
        Permutation::from_cycles(n, cycles).unwrap()
    }

    fn table(n: usize, gens: Vec<Permutation>) -> CharacterTable {
        CharacterTable::new(Arc::new(Group::from_generators(n, gens).unwrap()), 0).unwrap()
    }

    fn s3() -> CharacterTable {
        table(3, vec![perm(3, &[&[0, 1, 2]]), perm(3, &[&[0, 1]])])
    }

    /// SL(2,8) on the projective line over GF(8) = GF(2)[x]/(x^3+x+1).
    pub(crate) fn sl2_8() -> Group {
        // points: 0..7 field elements by bit pattern, 8 = ∞
        let mul = |a: usize, b: usize| {
            let mut r = 0usize;
            for i in 0..3 {
                if b >> i & 1 == 1 {
                    r ^= a << i;
                }
            }
            for i in (3..5).rev() {
                if r >> i & 1 == 1 {
                    r ^= 0b1011 << (i - 3);
                }
            }
            r
        };
        let inv = |a: usize| (1..8).find(|&b| mul(a, b) == 1).unwrap();
        // x ↦ x + 1, x ↦ w x (w = x), x ↦ 1/x
        let t: Vec<usize> = (0..9).map(|x| if x == 8 { 8 } else { x ^ 1 }).collect();
        let d: Vec<usize> = (0..9).map(|x| if x == 8 { 8 } else { mul(x, 2) }).collect();
        let s: Vec<usize> = (0..9)
            .map(|x| match x {
                8 => 0,
                0 => 8,
                _ => inv(x),
            })
            .collect();
        let gens = vec![
            Permutation::new(t).unwrap(),
            Permutation::new(d).unwrap(),
            Permutation::new(s).unwrap(),
        ];
        Group::from_generators(9, gens).unwrap()
    }

    #[test]
    fn trivial_group() {
        let t = table(1, vec![]);
        assert_eq!(t.degrees(), vec![1]);
        assert_eq!(t.irreducibles()[0].values, vec![Cyclotomic::from_int(1)]);
    }

    #[test]
    fn s3_table() {
        let t = s3();
        assert_eq!(t.degrees(), vec![1, 1, 2]);
        assert_eq!(
            t.irreducibles()[0],
            Character {
                values: t.trivial().values,
                is_irreducible: true
            }
        );
        let one = t.trivial();
        assert_eq!(t.inner_product(&one, &one), Rat::one());
        for chi in t.irreducibles() {
            assert_eq!(t.inner_product(&t.regular(), chi), Rat::int(chi.degree()));
        }
    }

    #[test]
    fn s3_restriction_to_c3() {
        let t = s3();
        let g = t.group();
        let c3 = g.subgroup_from_gens(&[g.index_of(&perm(3, &[&[0, 1, 2]])).unwrap()]);
        let h = CharacterTable::new(Arc::new(c3), 0).unwrap();
        let res = t.restrict(&t.irreducibles()[2], h.group());
        assert_eq!(h.decompose(&res).unwrap(), vec![0, 1, 1]);
        assert_eq!(t.restrict(&t.trivial(), h.group()), h.trivial());
        // Frobenius reciprocity and induced degree
        let ind = t.induce(&h.trivial(), h.group());
        assert_eq!(ind.degree(), 2);
        for psi in h.irreducibles() {
            let up = t.induce(psi, h.group());
            for chi in t.irreducibles() {
                assert_eq!(
                    t.inner_product(&up, chi),
                    h.inner_product(psi, &t.restrict(chi, h.group()))
                );
            }
        }
        // inducing the regular character of H gives the regular character of G
        assert_eq!(t.induce(&h.regular(), h.group()), t.regular());
    }

    #[test]
    fn sl2_8_degrees_and_levels() {
        let g = Arc::new(sl2_8());
        assert_eq!(g.order(), 504);
        assert_eq!(g.class_count(), 9);
        let t = CharacterTable::new(g.clone(), 0).unwrap();
        assert_eq!(t.degrees(), vec![1, 7, 7, 7, 7, 8, 9, 9, 9]);
        let levels = t.levels(3);
        let deg7_levels: Vec<u32> = (1..5).map(|i| levels[i]).collect();
        // the rational degree-7 character is the Steinberg-adjacent one with values in Z
        assert_eq!(deg7_levels.iter().filter(|&&l| l == 2).count(), 3);
        assert!(deg7_levels.contains(&0));

        // Δ/ℓ for the restriction of a level-2 degree-7 character to a Sylow 3-subgroup
        let chi = (1..5)
            .map(|i| &t.irreducibles()[i])
            .find(|c| c.level(3) == 2)
            .unwrap();
        let p = g.sylow_subgroup(3, 0);
        assert_eq!(p.order(), 9);
        let pt = CharacterTable::new(Arc::new(p), 0).unwrap();
        let psi = t.restrict(chi, pt.group());
        let degs = pt.delta_degrees(&psi, 3).unwrap();
        assert_eq!(degs.iter().sum::<i64>(), 7);
        assert_ne!(degs[2] % 3, 0);
        assert_eq!(pt.ell(&psi, 3).unwrap(), Some(2));
        assert_eq!(t.restricted_level(chi, pt.group(), 3), 2);

        // σ_1 for p = 3 permutes the level-2 degree-7 characters without fixing them
        let k = cyclo::sigma_e_exponent(g.exponent(), 3, 1) as i64;
        for i in 1..5 {
            let c = &t.irreducibles()[i];
            let img = t.galois_on_character(c, k).unwrap();
            let j = t.position(&img).unwrap();
            assert_eq!(t.irreducibles()[j].degree(), 7);
            assert_eq!(j == i, c.level(3) == 0);
        }
    }

    #[test]
    fn ell_examples() {
        let t = s3();
        assert_eq!(t.ell(&t.trivial(), 3).unwrap(), Some(0));
        assert_eq!(t.ell(&t.trivial().scale(3), 3).unwrap(), None);
        let d0 = t.delta(&t.trivial(), 0, 3).unwrap();
        assert_eq!(d0, t.trivial());
        assert!(t.delta(&t.trivial(), 1, 3).unwrap().is_zero());
    }

    fn small_group(which: u8) -> Group {
        match which % 6 {
            0 => Group::from_generators(4, vec![perm(4, &[&[0, 1, 2, 3]]), perm(4, &[&[0, 1]])])
                .unwrap(),
            1 => Group::from_generators(
                4,
                vec![perm(4, &[&[0, 1, 2]]), perm(4, &[&[0, 1], &[2, 3]])],
            )
            .unwrap(),
            2 => Group::from_generators(
                8,
                vec![
                    perm(8, &[&[0, 1, 2, 3], &[4, 5, 6, 7]]),
                    perm(8, &[&[0, 4, 2, 6], &[1, 7, 3, 5]]),
                ],
            )
            .unwrap(),
            3 => Group::from_generators(
                9,
                vec![
                    perm(9, &[&[0, 1, 2, 3, 4, 5, 6, 7, 8]]),
                    perm(9, &[&[1, 4, 7], &[2, 8, 5]]),
                ],
            )
            .unwrap(),
            4 => Group::from_generators(
                7,
                vec![
                    perm(7, &[&[0, 1, 2, 3, 4, 5, 6]]),
                    perm(7, &[&[1, 2, 4], &[3, 6, 5]]),
                ],
            )
            .unwrap(),
            _ => Group::from_generators(5, vec![perm(5, &[&[0, 1, 2, 3, 4]]), perm(5, &[&[0, 1]])])
                .unwrap(),
        }
    }

    #[test]
    fn column_orthogonality() {
        for which in 0..6 {
            let t = CharacterTable::new(Arc::new(small_group(which)), 0).unwrap();
            let classes = t.group().conjugacy_classes();
            for a in 0..classes.len() {
                for b in 0..classes.len() {
                    let s = t
                        .irreducibles()
                        .iter()
                        .fold(Cyclotomic::from_int(0), |acc, c| {
                            &acc + &(&c.values[a] * &c.values[b].conj())
                        });
                    let want = if a == b {
                        classes[a].centralizer_order as i64
                    } else {
                        0
                    };
                    assert_eq!(
                        s,
                        Cyclotomic::from_int(want),
                        "group {which} classes {a},{b}"
                    );
                }
            }
        }
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(24))]

        #[test]
        fn seed_does_not_change_the_table(which in 0u8..6, seed in 1u64..1000) {
            let g = Arc::new(small_group(which));
            let a = CharacterTable::new(g.clone(), 0).unwrap();
            let b = CharacterTable::new(g, seed).unwrap();
            prop_assert_eq!(a.irreducibles(), b.irreducibles());
        }

        #[test]
        fn character_invariants(which in 0u8..6, i in 0usize..64, p in prop::sample::select(vec![2u64, 3, 5, 7])) {
            let g = Arc::new(small_group(which));
            let t = CharacterTable::new(g.clone(), 0).unwrap();
            let chi = &t.irreducibles()[i % t.irreducibles().len()];
            let lev = chi.level(p);
            // level bounded by ν_p(exp G), never 1 at p = 2
            let bound = if g.exponent() % p == 0 { valuation(g.exponent(), p) } else { 0 };
            prop_assert!(lev <= bound);
            if p == 2 { prop_assert_ne!(lev, 1); }
            // σ_e fixes χ exactly when e ≥ lev (p odd, lev ≥ 1)
            if p != 2 && lev >= 1 {
                for e in 1..=bound {
                    let k = cyclo::sigma_e_exponent(g.exponent(), p, e) as i64;
                    let fixed = t.galois_on_character(chi, k).unwrap() == *chi;
                    prop_assert_eq!(fixed, e >= lev);
                }
            }
            // Δ decomposition of χ restricted to a Sylow p-subgroup
            if g.order() % p == 0 {
                let pt = CharacterTable::new(Arc::new(g.sylow_subgroup(p, 0)), 0).unwrap();
                let psi = t.restrict(chi, pt.group());
                let top = pt.levels(p).into_iter().max().unwrap_or(0);
                let mut total = Character::new(vec![Cyclotomic::from_int(0); pt.class_count()]);
                for i in 0..=top {
                    let d = pt.delta(&psi, i, p).unwrap();
                    prop_assert!(pt.decompose(&d).unwrap().iter().all(|&m| m >= 0));
                    total = total.add(&d);
                }
                prop_assert_eq!(&total, &psi);
                // vanishing of Δ_i(1) mod p above max(2, a+1), a = lev(χ_P)
                let a = psi.level(p);
                let degs = pt.delta_degrees(&psi, p).unwrap();
                for (i, d) in degs.iter().enumerate() {
                    if i as u32 >= (a + 1).max(2) {
                        prop_assert_eq!(d % p as i64, 0);
                    }
                }
            }
        }
    }
}
