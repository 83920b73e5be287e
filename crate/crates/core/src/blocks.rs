//! p-blocks from central-character residues, with defect groups, heights,
//! Brauer correspondents and the cyclic-defect split of Irr(B).

use std::collections::BTreeMap;
use std::sync::Arc;

use serde::Serialize;

use crate::arith::{split_part, valuation};
use crate::chartab::CharacterTable;
use crate::cyclo::{self, Cyclotomic, PrimeIdealData};
use crate::error::{Error, Result};
use crate::gf::FieldElem;
use crate::perm::Group;
use crate::rat::Rat;

#[derive(Clone, Debug)]
pub struct Block {
    pub p: u64,
    /// Indices into the irreducibles of the table, increasing.
    pub chars: Vec<usize>,
    pub defect: u32,
    /// ht(χ) for each entry of `chars`.
    pub heights: Vec<u32>,
    pub defect_group: Arc<Group>,
    /// Residues of the central character, one per class.
    pub residues: Vec<FieldElem>,
    pub is_principal: bool,
}

impl Block {
    pub fn height_zero(&self) -> impl Iterator<Item = usize> + '_ {
        self.chars
            .iter()
            .zip(&self.heights)
            .filter(|(_, &h)| h == 0)
            .map(|(&c, _)| c)
    }
}

/// The prime ideal used for all block computations of `g` at `p`: a prime above p
/// in Z[ζ_m], m the p'-part of exp(G).
pub fn block_ideal(g: &Group, p: u64, choice: usize) -> PrimeIdealData {
    PrimeIdealData::new(p, split_part(g.exponent(), p).1, choice)
}

/// ω_χ(K̂) = |K| χ(g_K) / χ(1), as exact algebraic integers.
pub fn central_character(table: &CharacterTable, chi: usize) -> Result<Vec<Cyclotomic>> {
    let c = &table.irreducibles()[chi];
    let d = Rat::int(c.degree());
    let classes = table.group().conjugacy_classes();
    c.values
        .iter()
        .zip(classes)
        .map(|(v, k)| {
            let w = v.scale(&Rat::int(k.size as i64)).div_rat(&d)?;
            if !w.is_integral() {
                return Err(Error::NotAlgebraicInteger { p: 0 });
            }
            Ok(w)
        })
        .collect()
}

pub fn central_character_residues(
    table: &CharacterTable,
    chi: usize,
    ideal: &PrimeIdealData,
) -> Result<Vec<FieldElem>> {
    central_character(table, chi)?
        .iter()
        .map(|w| ideal.residue(w))
        .collect()
}

/// The p-blocks of the group of `table`, principal block first, then by smallest
/// character index. `seed` picks among conjugate defect groups.
pub fn p_blocks(
    table: &CharacterTable,
    p: u64,
    ideal: &PrimeIdealData,
    seed: u64,
) -> Result<Vec<Block>> {
    let g = table.group();
    let mut by_residue: BTreeMap<Vec<FieldElem>, Vec<usize>> = BTreeMap::new();
    for chi in 0..table.irreducibles().len() {
        by_residue
            .entry(central_character_residues(table, chi, ideal)?)
            .or_default()
            .push(chi);
    }
    let mut parts: Vec<(Vec<FieldElem>, Vec<usize>)> = by_residue.into_iter().collect();
    parts.sort_by_key(|(_, cs)| cs[0]);
    let nu = valuation(g.order(), p);
    let vals = table.degree_valuations(p);
    parts
        .into_iter()
        .map(|(residues, chars)| {
            let low = chars.iter().map(|&c| vals[c]).min().unwrap();
            let defect = nu - low;
            let heights = chars.iter().map(|&c| vals[c] - low).collect();
            let defect_group = Arc::new(defect_group(g, p, defect, &residues, ideal, seed)?);
            let is_principal = chars[0] == 0;
            Ok(Block {
                p,
                chars,
                defect,
                heights,
                defect_group,
                residues,
                is_principal,
            })
        })
        .collect()
}

/// Sylow p-subgroup of C_G(g) for a class with nonzero residue and
/// ν(|K|) = ν(|G|) − d, p-regular classes tried first.
fn defect_group(
    g: &Group,
    p: u64,
    defect: u32,
    residues: &[FieldElem],
    ideal: &PrimeIdealData,
    seed: u64,
) -> Result<Group> {
    let target = valuation(g.order(), p) - defect;
    let field = ideal.field();
    let classes = g.conjugacy_classes();
    let mut candidates: Vec<usize> = (0..classes.len())
        .filter(|&k| !field.is_zero(&residues[k]) && valuation(classes[k].size, p) == target)
        .collect();
    candidates.sort_by_key(|&k| classes[k].element_order % p == 0);
    let k = *candidates
        .first()
        .ok_or(Error::DefectClassNotFound { defect })?;
    let c = g.centralizer(&[classes[k].representative]);
    let d = c.sylow_subgroup(p, seed);
    if d.order() != p.pow(defect) {
        return Err(Error::DefectClassNotFound { defect });
    }
    // re-express inside g so callers can index it against g
    Ok(g.subgroup_from_elements(&g.embed(&d)))
}

/// Blocks of N = N_G(D) computed with G's ideal, and for each the G-block whose
/// residues equal the induced central function, if any.
#[derive(Debug)]
pub struct LocalBlocks {
    pub normalizer: Arc<Group>,
    pub table: CharacterTable,
    pub blocks: Vec<Block>,
    pub induced: Vec<Option<usize>>,
}

pub fn local_blocks(
    gt: &CharacterTable,
    g_blocks: &[Block],
    d: &Group,
    ideal: &PrimeIdealData,
    seed: u64,
) -> Result<LocalBlocks> {
    let g = gt.group();
    let n = Arc::new(g.normalizer(d));
    if n.order() == g.order() {
        let induced = (0..g_blocks.len()).map(Some).collect();
        return Ok(LocalBlocks {
            normalizer: gt.group_arc().clone(),
            table: gt.clone(),
            blocks: g_blocks.to_vec(),
            induced,
        });
    }
    let nt = CharacterTable::new(n.clone(), seed)?;
    let blocks = p_blocks(&nt, ideal.p, ideal, seed)?;
    let fusion = gt.fusion(&n);
    let field = ideal.field();
    let induced = blocks
        .iter()
        .map(|b| {
            let mut up = vec![field.zero(); g.class_count()];
            for (l, &k) in fusion.iter().enumerate() {
                up[k] = field.add(&up[k], &b.residues[l]);
            }
            g_blocks.iter().position(|gb| gb.residues == up)
        })
        .collect();
    Ok(LocalBlocks {
        normalizer: n,
        table: nt,
        blocks,
        induced,
    })
}

impl LocalBlocks {
    /// The block b of N with defect group D and b^G = B.
    pub fn correspondent(&self, g_block: usize, defect: u32) -> Result<usize> {
        let hits: Vec<usize> = (0..self.blocks.len())
            .filter(|&j| self.blocks[j].defect == defect && self.induced[j] == Some(g_block))
            .collect();
        match hits.as_slice() {
            [] => Err(Error::CorrespondentNotFound),
            [j] => Ok(*j),
            _ => Err(Error::AmbiguousCorrespondent),
        }
    }
}

/// Outcome of checking that b ↦ b^G is a bijection between the blocks of N_G(D)
/// with defect group D and the blocks of G with defect group conjugate to D.
#[derive(Clone, Debug, Serialize)]
pub struct FirstMainCheck {
    pub local_count: usize,
    pub global_count: usize,
    pub bijective: bool,
}

pub fn first_main_check(
    g: &Group,
    g_blocks: &[Block],
    local: &LocalBlocks,
    d: &Group,
) -> FirstMainCheck {
    let defect = valuation(d.order(), g_blocks[0].p);
    let mut global: Vec<usize> = (0..g_blocks.len())
        .filter(|&i| {
            let dg = &g_blocks[i].defect_group;
            dg.order() == d.order() && g.conjugating_element(dg, d).is_some()
        })
        .collect();
    let mut images: Vec<Option<usize>> = (0..local.blocks.len())
        .filter(|&j| local.blocks[j].defect == defect)
        .map(|j| local.induced[j])
        .collect();
    let local_count = images.len();
    images.sort_unstable();
    images.dedup();
    global.sort_unstable();
    let bijective = images.len() == local_count
        && images.iter().copied().collect::<Option<Vec<_>>>() == Some(global.clone());
    FirstMainCheck {
        local_count,
        global_count: global.len(),
        bijective,
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum CyclicStatus {
    Classified,
    Indeterminate,
}

#[derive(Clone, Debug, Serialize)]
pub struct CyclicDefectData {
    pub exceptional: Vec<usize>,
    pub nonexceptional: Vec<usize>,
    pub e: u64,
    pub lambda_count: u64,
    pub status: CyclicStatus,
}

/// Splits Irr(B) for a block with nontrivial cyclic defect group of order p^a.
/// Exceptional characters are the unique family of size ≥ 2 agreeing in degree and on
/// p-regular classes. When every member is such a family (e = 1) the p-rational
/// member is the nonexceptional one; otherwise no family means indeterminate.
pub fn cyclic_defect_classify(table: &CharacterTable, block: &Block) -> Result<CyclicDefectData> {
    let d = &block.defect_group;
    if d.order() == 1 || !d.profile().is_cyclic {
        return Err(Error::NotCyclicDefect);
    }
    let p = block.p;
    let pa = d.order();
    let classes = table.group().conjugacy_classes();
    let regular: Vec<usize> = (0..classes.len())
        .filter(|&k| classes[k].element_order % p != 0)
        .collect();
    let mut families: BTreeMap<Vec<Cyclotomic>, Vec<usize>> = BTreeMap::new();
    for &c in &block.chars {
        let chi = &table.irreducibles()[c];
        let key = regular.iter().map(|&k| chi.values[k].clone()).collect();
        families.entry(key).or_default().push(c);
    }
    let n = block.chars.len();
    let big: Vec<&Vec<usize>> = families.values().filter(|f| f.len() >= 2).collect();
    let indeterminate = CyclicDefectData {
        exceptional: Vec::new(),
        nonexceptional: Vec::new(),
        e: 0,
        lambda_count: 0,
        status: CyclicStatus::Indeterminate,
    };
    let exceptional: Vec<usize> = match big.as_slice() {
        [f] if f.len() < n => (*f).clone(),
        [f] if f.len() == n && n as u64 == pa => {
            let rational: Vec<usize> = f
                .iter()
                .copied()
                .filter(|&c| table.irreducibles()[c].level(p) == 0)
                .collect();
            match rational.as_slice() {
                [r] => f.iter().copied().filter(|c| c != r).collect(),
                _ => return Ok(indeterminate),
            }
        }
        _ => return Ok(indeterminate),
    };
    let nonexceptional: Vec<usize> = block
        .chars
        .iter()
        .copied()
        .filter(|c| !exceptional.contains(c))
        .collect();
    Ok(CyclicDefectData {
        e: nonexceptional.len() as u64,
        lambda_count: exceptional.len() as u64,
        exceptional,
        nonexceptional,
        status: CyclicStatus::Classified,
    })
}

/// For a block with cyclic defect group D and χ of positive level: every class on
/// which χ attains its level has p-part of order |D| and conjugate into D.
pub fn level_element_check(table: &CharacterTable, block: &Block, chi: usize) -> bool {
    let g = table.group();
    let p = block.p;
    let c = &table.irreducibles()[chi];
    let lev = c.level(p);
    let d = &block.defect_group;
    let meets_d = g.classes_meeting(d);
    g.conjugacy_classes().iter().enumerate().all(|(k, cl)| {
        if cyclo::value_level(&c.values[k], p) != lev {
            return true;
        }
        let (gp, _) = g.p_decomposition(cl.representative, p);
        g.element_order(gp) == d.order() && meets_d.contains(&g.class_of(gp))
    })
}
