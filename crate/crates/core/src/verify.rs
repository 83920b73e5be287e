//! Statement checks over a corpus of groups.
//!
//! Every (group, prime, statement) triple yields one [`CheckOutcome`]. Proven
//! statements that fail are verdict `fail`; conjectural ones that fail are
//! `finding`. Incidental facts that are neither (level drops on the defect group,
//! max-level classes outside the defect normalizer) go to `observations`.

use std::collections::{BTreeMap, HashSet};
use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::arith::valuation;
use crate::blocks::{
    block_ideal, cyclic_defect_classify, first_main_check, level_element_check, local_blocks,
    p_blocks, Block, CyclicStatus, FirstMainCheck, LocalBlocks,
};
use crate::chartab::CharacterTable;
use crate::cyclo;
use crate::error::{Error, Result};
use crate::perm::{primes_dividing, Group, Permutation};

/// Cap on the number of intermediate subgroups P ≤ K ≤ G tried per (G, p).
pub const SUBGROUP_SEARCH_CAP: usize = 500;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum StatementId {
    #[serde(rename = "conj_main")]
    ConjMain,
    #[serde(rename = "conj_ntC")]
    ConjNtC,
    #[serde(rename = "thm_A")]
    ThmA,
    #[serde(rename = "lem_3_1")]
    Lem31,
    #[serde(rename = "cor_3_2")]
    Cor32,
    #[serde(rename = "lem_3_3")]
    Lem33,
    #[serde(rename = "lem_4_2")]
    Lem42,
    #[serde(rename = "lem_4_3")]
    Lem43,
    #[serde(rename = "lem_6_3")]
    Lem63,
    #[serde(rename = "amn_consequence")]
    AmnConsequence,
    #[serde(rename = "cons_7_2")]
    Cons72,
    #[serde(rename = "cons_7_3")]
    Cons73,
    #[serde(rename = "cons_7_4")]
    Cons74,
}

impl StatementId {
    pub const ALL: [StatementId; 13] = [
        StatementId::ConjMain,
        StatementId::ConjNtC,
        StatementId::ThmA,
        StatementId::Lem31,
        StatementId::Cor32,
        StatementId::Lem33,
        StatementId::Lem42,
        StatementId::Lem43,
        StatementId::Lem63,
        StatementId::AmnConsequence,
        StatementId::Cons72,
        StatementId::Cons73,
        StatementId::Cons74,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            StatementId::ConjMain => "conj_main",
            StatementId::ConjNtC => "conj_ntC",
            StatementId::ThmA => "thm_A",
            StatementId::Lem31 => "lem_3_1",
            StatementId::Cor32 => "cor_3_2",
            StatementId::Lem33 => "lem_3_3",
            StatementId::Lem42 => "lem_4_2",
            StatementId::Lem43 => "lem_4_3",
            StatementId::Lem63 => "lem_6_3",
            StatementId::AmnConsequence => "amn_consequence",
            StatementId::Cons72 => "cons_7_2",
            StatementId::Cons73 => "cons_7_3",
            StatementId::Cons74 => "cons_7_4",
        }
    }

    /// Proven statements fail hard; the rest can only produce findings.
    pub fn is_proven(self) -> bool {
        matches!(
            self,
            StatementId::ThmA
                | StatementId::Lem31
                | StatementId::Cor32
                | StatementId::Lem33
                | StatementId::Lem42
                | StatementId::Lem43
                | StatementId::Lem63
        )
    }
}

impl fmt::Display for StatementId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for StatementId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        StatementId::ALL
            .into_iter()
            .find(|id| id.as_str() == s)
            .ok_or_else(|| Error::InvalidArgument(format!("unknown statement id {s:?}")))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    Pass,
    Fail,
    NotApplicable,
    Finding,
}

#[derive(Clone, Debug, Serialize)]
pub struct CheckOutcome {
    pub statement: StatementId,
    pub group: String,
    pub prime: u64,
    pub verdict: Verdict,
    pub records: Vec<Value>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ObservationKind {
    /// Height-zero χ of level ≥ 2 with lev(χ_D) ≠ lev(χ).
    DefectGroupLevelDiffers,
    /// Height-zero χ of level 1 whose restriction to N_G(D) is p-rational.
    LevelOneDrops,
    /// Non-cyclic D: a class on which χ attains its level does not meet N_G(D).
    MaxLevelClassOutsideNormalizer,
}

#[derive(Clone, Debug, Serialize)]
pub struct Observation {
    pub kind: ObservationKind,
    pub group: String,
    pub prime: u64,
    pub block: usize,
    pub character: usize,
    pub degree: i64,
    pub detail: Value,
}

/// Facts a corpus entry may pin down, checked against the computed data.
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Expected {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub order: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub class_count: Option<usize>,
    /// Sorted.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub degrees: Option<Vec<i64>>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub primes: BTreeMap<u64, ExpectedPrime>,
}

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExpectedPrime {
    /// Sorted.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub block_defects: Option<Vec<u32>>,
    /// Sorted.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub levels: Option<Vec<u32>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub conj_main: Option<ExpectedLevels>,
}

/// Some height-zero irreducible of this degree has these levels.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExpectedLevels {
    pub degree: i64,
    pub lev: u32,
    #[serde(rename = "lev_D")]
    pub lev_d: u32,
    #[serde(rename = "lev_N")]
    pub lev_n: u32,
}

#[derive(Clone, Debug, Serialize)]
pub struct ExpectationCheck {
    pub group: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub prime: Option<u64>,
    pub item: String,
    pub expected: Value,
    pub actual: Value,
    pub ok: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct RunError {
    pub group: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub prime: Option<u64>,
    pub message: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct ClassSummary {
    pub order: u64,
    pub size: u64,
}

#[derive(Clone, Debug, Serialize)]
pub struct BlockSummary {
    pub characters: Vec<usize>,
    pub defect: u32,
    pub defect_group_order: u64,
    pub heights: Vec<u32>,
    pub principal: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct DefectClassSummary {
    pub defect_group_order: u64,
    pub defect_group_exponent: u64,
    pub cyclic: bool,
    pub abelian: bool,
    pub normalizer_order: u64,
    pub blocks: Vec<usize>,
    pub first_main: FirstMainCheck,
}

#[derive(Clone, Debug, Serialize)]
pub struct PrimeSummary {
    pub p: u64,
    pub sylow_order: u64,
    pub levels: Vec<u32>,
    pub blocks: Vec<BlockSummary>,
    pub defect_classes: Vec<DefectClassSummary>,
}

#[derive(Clone, Debug, Serialize)]
pub struct GroupSummary {
    pub name: String,
    pub order: u64,
    pub degree: usize,
    pub classes: Vec<ClassSummary>,
    pub degrees: Vec<i64>,
    pub primes: Vec<PrimeSummary>,
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct Summary {
    pub groups: usize,
    pub outcomes: usize,
    pub pass: usize,
    pub fail: usize,
    pub not_applicable: usize,
    pub finding: usize,
    pub observations: usize,
    pub expectation_mismatches: usize,
    pub first_main_failures: usize,
    pub errors: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub tool: String,
    pub corpus_sha256: String,
    pub seed: u64,
    pub summary: Summary,
    pub outcomes: Vec<CheckOutcome>,
    pub observations: Vec<Observation>,
    pub expectations: Vec<ExpectationCheck>,
    pub errors: Vec<RunError>,
    pub groups: Vec<GroupSummary>,
}

impl Report {
    /// 0 when everything holds, 2 when only conjectural findings are present,
    /// 1 on a failed proven statement, an expectation mismatch or an error.
    pub fn exit_code(&self) -> i32 {
        let s = &self.summary;
        if s.fail > 0 || s.expectation_mismatches > 0 || s.first_main_failures > 0 || s.errors > 0 {
            1
        } else if s.finding > 0 {
            2
        } else {
            0
        }
    }

    /// Failed proven statements as an error, if any.
    pub fn violation(&self) -> Option<Error> {
        self.outcomes
            .iter()
            .find(|o| o.verdict == Verdict::Fail)
            .map(|o| {
                Error::ProvenStatementViolated(format!(
                    "{} on {} at p = {}",
                    o.statement, o.group, o.prime
                ))
            })
    }
}

/// One corpus group, already parsed.
#[derive(Clone, Debug)]
pub struct GroupInput {
    pub name: String,
    pub degree: usize,
    pub generators: Vec<Permutation>,
    pub expected: Option<Expected>,
}

#[derive(Clone, Debug)]
pub struct VerifyOptions {
    pub seed: u64,
    pub jobs: usize,
    pub primes: Option<Vec<u64>>,
    pub statements: Option<Vec<StatementId>>,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions {
            seed: 0,
            jobs: 1,
            primes: None,
            statements: None,
        }
    }
}

impl VerifyOptions {
    fn wants(&self, s: StatementId) -> bool {
        self.statements.as_ref().is_none_or(|v| v.contains(&s))
    }

    fn wants_prime(&self, p: u64) -> bool {
        self.primes.as_ref().is_none_or(|v| v.contains(&p))
    }
}

/// Runs every requested check on every group and assembles the report in corpus order.
pub fn run_corpus(inputs: &[GroupInput], opts: &VerifyOptions, corpus_sha256: &str) -> Report {
    let runs: Vec<GroupRun> = if opts.jobs > 1 {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(opts.jobs)
            .build();
        match pool {
            Ok(pool) => pool.install(|| inputs.par_iter().map(|g| run_group(g, opts)).collect()),
            Err(_) => inputs.iter().map(|g| run_group(g, opts)).collect(),
        }
    } else {
        inputs.iter().map(|g| run_group(g, opts)).collect()
    };
    let mut report = Report {
        tool: format!("blockscope {}", env!("CARGO_PKG_VERSION")),
        corpus_sha256: corpus_sha256.to_string(),
        seed: opts.seed,
        summary: Summary::default(),
        outcomes: Vec::new(),
        observations: Vec::new(),
        expectations: Vec::new(),
        errors: Vec::new(),
        groups: Vec::new(),
    };
    for run in runs {
        report.outcomes.extend(run.outcomes);
        report.observations.extend(run.observations);
        report.expectations.extend(run.expectations);
        report.errors.extend(run.errors);
        report.groups.extend(run.summary);
    }
    let s = &mut report.summary;
    s.groups = inputs.len();
    s.outcomes = report.outcomes.len();
    for o in &report.outcomes {
        match o.verdict {
            Verdict::Pass => s.pass += 1,
            Verdict::Fail => s.fail += 1,
            Verdict::NotApplicable => s.not_applicable += 1,
            Verdict::Finding => s.finding += 1,
        }
    }
    s.observations = report.observations.len();
    s.expectation_mismatches = report.expectations.iter().filter(|e| !e.ok).count();
    s.first_main_failures = report
        .groups
        .iter()
        .flat_map(|g| &g.primes)
        .flat_map(|p| &p.defect_classes)
        .filter(|d| !d.first_main.bijective)
        .count();
    s.errors = report.errors.len();
    report
}

#[derive(Default)]
struct GroupRun {
    summary: Option<GroupSummary>,
    outcomes: Vec<CheckOutcome>,
    observations: Vec<Observation>,
    expectations: Vec<ExpectationCheck>,
    errors: Vec<RunError>,
}

fn run_group(input: &GroupInput, opts: &VerifyOptions) -> GroupRun {
    let mut run = GroupRun::default();
    let error = |prime, e: Error| RunError {
        group: input.name.clone(),
        prime,
        message: e.to_string(),
    };
    let table = match Group::from_generators(input.degree, input.generators.clone())
        .and_then(|g| CharacterTable::new(Arc::new(g), opts.seed))
    {
        Ok(t) => t,
        Err(e) => {
            run.errors.push(error(None, e));
            return run;
        }
    };
    let g = table.group();
    let mut degrees = table.degrees();
    let mut summary = GroupSummary {
        name: input.name.clone(),
        order: g.order(),
        degree: g.degree(),
        classes: g
            .conjugacy_classes()
            .iter()
            .map(|c| ClassSummary {
                order: c.element_order,
                size: c.size,
            })
            .collect(),
        degrees: degrees.clone(),
        primes: Vec::new(),
    };
    degrees.sort_unstable();
    let expected = input.expected.clone().unwrap_or_default();
    let mut expect = |prime: Option<u64>, item: &str, want: Value, got: Value| {
        run.expectations.push(ExpectationCheck {
            group: input.name.clone(),
            prime,
            item: item.to_string(),
            ok: want == got,
            expected: want,
            actual: got,
        });
    };
    if let Some(o) = expected.order {
        expect(None, "order", json!(o), json!(g.order()));
    }
    if let Some(c) = expected.class_count {
        expect(None, "class_count", json!(c), json!(g.class_count()));
    }
    if let Some(d) = &expected.degrees {
        expect(None, "degrees", json!(d), json!(degrees));
    }
    for p in primes_dividing(g.order())
        .into_iter()
        .filter(|&p| opts.wants_prime(p))
    {
        let ctx = match PrimeContext::new(&table, p, opts.seed) {
            Ok(c) => c,
            Err(e) => {
                run.errors.push(error(Some(p), e));
                continue;
            }
        };
        if let Some(ep) = expected.primes.get(&p) {
            if let Some(want) = &ep.block_defects {
                let mut got: Vec<u32> = ctx.blocks.iter().map(|b| b.defect).collect();
                got.sort_unstable();
                expect(Some(p), "block_defects", json!(want), json!(got));
            }
            if let Some(want) = &ep.levels {
                let mut got: Vec<u32> = ctx.info.iter().map(|c| c.lev).collect();
                got.sort_unstable();
                expect(Some(p), "levels", json!(want), json!(got));
            }
            if let Some(want) = &ep.conj_main {
                let candidates: Vec<ExpectedLevels> = ctx
                    .info
                    .iter()
                    .filter(|c| c.height == 0 && c.degree == want.degree && c.lev == want.lev)
                    .map(|c| ExpectedLevels {
                        degree: c.degree,
                        lev: c.lev,
                        lev_d: c.lev_d,
                        lev_n: c.lev_n,
                    })
                    .collect();
                let hit = candidates.iter().find(|c| *c == want).cloned();
                let got = match hit {
                    Some(c) => json!(c),
                    None => json!(candidates),
                };
                expect(Some(p), "conj_main", json!(want), got);
            }
        }
        match ctx.run_checks(&input.name, opts) {
            Ok((outcomes, observations)) => {
                run.outcomes.extend(outcomes);
                run.observations.extend(observations);
            }
            Err(e) => run.errors.push(error(Some(p), e)),
        }
        summary.primes.push(ctx.summary());
    }
    run.summary = Some(summary);
    run
}

struct DefectClass {
    rep: Arc<Group>,
    local: LocalBlocks,
    first_main: FirstMainCheck,
}

#[derive(Clone, Debug)]
struct CharInfo {
    degree: i64,
    lev: u32,
    lev_d: u32,
    lev_n: u32,
    height: u32,
    block: usize,
    /// First class on which χ attains its level.
    witness: usize,
}

/// Everything the checks for one (G, p) share.
struct PrimeContext<'a> {
    table: &'a CharacterTable,
    p: u64,
    seed: u64,
    blocks: Vec<Block>,
    defect_classes: Vec<DefectClass>,
    class_of_block: Vec<usize>,
    sylow: Arc<Group>,
    sylow_table: CharacterTable,
    info: Vec<CharInfo>,
}

impl<'a> PrimeContext<'a> {
    fn new(table: &'a CharacterTable, p: u64, seed: u64) -> Result<Self> {
        let g = table.group();
        let ideal = block_ideal(g, p, 0);
        let blocks = p_blocks(table, p, &ideal, seed)?;
        let mut defect_classes: Vec<DefectClass> = Vec::new();
        let mut class_of_block = Vec::with_capacity(blocks.len());
        for b in &blocks {
            let d = &b.defect_group;
            let known = defect_classes.iter().position(|c| {
                c.rep.order() == d.order() && g.conjugating_element(&c.rep, d).is_some()
            });
            let idx = match known {
                Some(i) => i,
                None => {
                    let local = local_blocks(table, &blocks, d, &ideal, seed)?;
                    let first_main = first_main_check(g, &blocks, &local, d);
                    defect_classes.push(DefectClass {
                        rep: d.clone(),
                        local,
                        first_main,
                    });
                    defect_classes.len() - 1
                }
            };
            class_of_block.push(idx);
        }
        let sylow = Arc::new(g.sylow_subgroup(p, seed));
        let sylow_table = CharacterTable::new(sylow.clone(), seed)?;
        let mut info = Vec::with_capacity(table.irreducibles().len());
        for (chi, c) in table.irreducibles().iter().enumerate() {
            let (block, pos) = blocks
                .iter()
                .enumerate()
                .find_map(|(i, b)| b.chars.iter().position(|&x| x == chi).map(|j| (i, j)))
                .expect("blocks partition Irr(G)");
            let dc = &defect_classes[class_of_block[block]];
            let lev = c.level(p);
            let witness = c
                .values
                .iter()
                .position(|v| cyclo::value_level(v, p) == lev)
                .expect("the level is attained on some class");
            info.push(CharInfo {
                degree: c.degree(),
                lev,
                lev_d: table.restricted_level(c, &dc.rep, p),
                lev_n: table.restricted_level(c, &dc.local.normalizer, p),
                height: blocks[block].heights[pos],
                block,
                witness,
            });
        }
        Ok(PrimeContext {
            table,
            p,
            seed,
            blocks,
            defect_classes,
            class_of_block,
            sylow,
            sylow_table,
            info,
        })
    }

    fn summary(&self) -> PrimeSummary {
        PrimeSummary {
            p: self.p,
            sylow_order: self.sylow.order(),
            levels: self.info.iter().map(|c| c.lev).collect(),
            blocks: self
                .blocks
                .iter()
                .map(|b| BlockSummary {
                    characters: b.chars.clone(),
                    defect: b.defect,
                    defect_group_order: b.defect_group.order(),
                    heights: b.heights.clone(),
                    principal: b.is_principal,
                })
                .collect(),
            defect_classes: self
                .defect_classes
                .iter()
                .enumerate()
                .map(|(i, dc)| {
                    let prof = dc.rep.profile();
                    DefectClassSummary {
                        defect_group_order: dc.rep.order(),
                        defect_group_exponent: prof.exponent,
                        cyclic: prof.is_cyclic,
                        abelian: prof.is_abelian,
                        normalizer_order: dc.local.normalizer.order(),
                        blocks: (0..self.blocks.len())
                            .filter(|&b| self.class_of_block[b] == i)
                            .collect(),
                        first_main: dc.first_main.clone(),
                    }
                })
                .collect(),
        }
    }

    fn defect_class(&self, block: usize) -> &DefectClass {
        &self.defect_classes[self.class_of_block[block]]
    }

    fn run_checks(
        &self,
        group: &str,
        opts: &VerifyOptions,
    ) -> Result<(Vec<CheckOutcome>, Vec<Observation>)> {
        let mut outcomes = Vec::new();
        for s in StatementId::ALL.into_iter().filter(|&s| opts.wants(s)) {
            let records = match s {
                StatementId::ConjMain => self.conj_main(),
                StatementId::ConjNtC => self.conj_ntc(),
                StatementId::ThmA => self.theorem_a()?,
                StatementId::Lem31 => self.lemma_3_1(),
                StatementId::Cor32 => self.corollary_3_2(),
                StatementId::Lem33 => self.lemma_3_3(),
                StatementId::Lem42 => self.lemma_4_2()?,
                StatementId::Lem43 => self.lemma_4_3()?,
                StatementId::Lem63 => self.lemma_6_3(),
                StatementId::AmnConsequence => self.amn_consequence()?,
                StatementId::Cons72 => self.consequence_7_2(),
                StatementId::Cons73 => self.consequence_7_3(),
                StatementId::Cons74 => self.consequence_7_4(),
            };
            outcomes.push(outcome(s, group, self.p, records));
        }
        Ok((outcomes, self.observations(group)))
    }

    fn char_record(&self, chi: usize) -> Value {
        let c = &self.info[chi];
        json!({
            "character": chi,
            "degree": c.degree,
            "block": c.block,
            "height": c.height,
            "lev": c.lev,
            "lev_D": c.lev_d,
            "lev_N": c.lev_n,
            "witness_class": c.witness,
        })
    }

    fn conj_main(&self) -> Vec<Record> {
        (0..self.info.len())
            .filter(|&chi| self.info[chi].height == 0 && self.info[chi].lev >= 2)
            .map(|chi| {
                Record::new(
                    self.info[chi].lev == self.info[chi].lev_n,
                    self.char_record(chi),
                )
            })
            .collect()
    }

    fn conj_ntc(&self) -> Vec<Record> {
        let p = self.p;
        let fusion = self.table.fusion(&self.sylow);
        self.table
            .irreducibles()
            .iter()
            .enumerate()
            .filter(|(chi, c)| c.degree() % p as i64 != 0 && self.info[*chi].lev >= 1)
            .map(|(chi, c)| {
                let a = self.info[chi].lev;
                let on_p: Vec<_> = fusion.iter().map(|&k| c.values[k].clone()).collect();
                let lev_p = cyclo::level(&on_p, p);
                let q4 = p != 2 || a < 2 || cyclo::field_contains_q4(&on_p);
                let ok = a == 1 || (lev_p == a && q4);
                Record::new(ok, json!({ "character": chi, "degree": c.degree(), "lev": a, "lev_P": lev_p, "contains_Q4": q4 }))
            })
            .collect()
    }

    fn theorem_a(&self) -> Result<Vec<Record>> {
        let p = self.p;
        let mut out = Vec::new();
        for (bi, b) in self.blocks.iter().enumerate() {
            let d = &b.defect_group;
            if !d.profile().is_cyclic {
                continue;
            }
            let chars: Vec<Value> = b.chars.iter().map(|&c| self.char_record(c)).collect();
            let mut ok = b
                .chars
                .iter()
                .all(|&c| self.info[c].lev == self.info[c].lev_n);
            let mut structure = Value::Null;
            if d.order() > 1 {
                let data = cyclic_defect_classify(self.table, b)?;
                if data.status == CyclicStatus::Classified {
                    let pa = d.order();
                    let count_identity = data.e * data.lambda_count == pa - 1
                        && data.e + data.lambda_count == b.chars.len() as u64;
                    let e_divides = p == 2 || (p - 1) % data.e == 0;
                    let rational = data.nonexceptional.iter().all(|&c| self.info[c].lev == 0);
                    let level_elements = data
                        .exceptional
                        .iter()
                        .filter(|&&c| self.info[c].lev >= 1)
                        .all(|&c| level_element_check(self.table, b, c));
                    ok &= count_identity && e_divides && rational && level_elements;
                    structure = json!({
                        "status": data.status,
                        "e": data.e,
                        "exceptional": data.exceptional,
                        "count_identity": count_identity,
                        "e_divides_p_minus_1": e_divides,
                        "nonexceptional_rational": rational,
                        "level_elements": level_elements,
                    });
                } else {
                    structure = json!({ "status": data.status });
                }
            }
            out.push(Record::new(
                ok,
                json!({
                    "block": bi,
                    "defect": b.defect,
                    "defect_group_order": d.order(),
                    "characters": chars,
                    "cyclic_structure": structure,
                }),
            ));
        }
        Ok(out)
    }

    fn lemma_3_1(&self) -> Vec<Record> {
        self.blocks
            .iter()
            .enumerate()
            .map(|(bi, b)| {
                let bound = valuation(b.defect_group.exponent(), self.p);
                let top = b.chars.iter().map(|&c| self.info[c].lev).max().unwrap_or(0);
                let ok = top <= bound && bound <= b.defect;
                Record::new(
                    ok,
                    json!({ "block": bi, "max_lev": top, "exp_bound": bound, "defect": b.defect }),
                )
            })
            .collect()
    }

    fn corollary_3_2(&self) -> Vec<Record> {
        let p = self.p;
        self.blocks
            .iter()
            .enumerate()
            .filter(|(_, b)| b.defect == 0 || (p == 2 && b.defect == 1))
            .map(|(bi, b)| {
                let levs: Vec<u32> = b.chars.iter().map(|&c| self.info[c].lev).collect();
                Record::new(
                    levs.iter().all(|&l| l == 0),
                    json!({ "block": bi, "defect": b.defect, "levels": levs }),
                )
            })
            .collect()
    }

    fn lemma_3_3(&self) -> Vec<Record> {
        if self.p == 2 {
            return Vec::new();
        }
        self.blocks
            .iter()
            .enumerate()
            .filter(|(_, b)| b.defect == 1)
            .map(|(bi, b)| {
                let ok = b
                    .chars
                    .iter()
                    .all(|&c| self.info[c].lev <= 1 && self.info[c].lev == self.info[c].lev_n);
                let chars: Vec<Value> = b.chars.iter().map(|&c| self.char_record(c)).collect();
                Record::new(ok, json!({ "block": bi, "characters": chars }))
            })
            .collect()
    }

    /// Δ_i(χ_P)(1) for every irreducible χ.
    fn sylow_deltas(&self) -> Result<Vec<(u32, Vec<i64>)>> {
        self.table
            .irreducibles()
            .iter()
            .map(|c| {
                let res = self.table.restrict(c, &self.sylow);
                Ok((
                    res.level(self.p),
                    self.sylow_table.delta_degrees(&res, self.p)?,
                ))
            })
            .collect()
    }

    fn lemma_4_2(&self) -> Result<Vec<Record>> {
        let p = self.p as i64;
        Ok(self
            .sylow_deltas()?
            .into_iter()
            .enumerate()
            .map(|(chi, (a, degs))| {
                let from = 2.max(a + 1) as usize;
                let part_i = degs.iter().skip(from).all(|d| d % p == 0);
                let ell = degs.iter().rposition(|d| d % p != 0).map(|i| i as u32);
                let part_ii = a == 0 || ell.is_none_or(|l| a >= l);
                Record::new(
                    part_i && part_ii,
                    json!({ "character": chi, "lev_P": a, "delta_degrees": degs, "ell": ell, "part_i": part_i, "part_ii": part_ii }),
                )
            })
            .collect())
    }

    fn lemma_4_3(&self) -> Result<Vec<Record>> {
        let g = self.table.group();
        let p = self.p;
        let pi = p as i64;
        let chi_deltas = self.sylow_deltas()?;
        let sylow_idx: Vec<usize> = g.embed(&self.sylow);
        let in_sylow: HashSet<usize> = sylow_idx.iter().copied().collect();
        let gens: Vec<usize> = self
            .sylow
            .generators()
            .iter()
            .map(|s| g.index_of(s).expect("P ≤ G"))
            .collect();
        let mut seen: HashSet<Vec<usize>> = HashSet::new();
        let mut subgroups: Vec<Vec<usize>> = vec![sylow_idx.clone()];
        seen.insert(sylow_idx);
        for x in 0..g.order() as usize {
            if subgroups.len() >= SUBGROUP_SEARCH_CAP {
                break;
            }
            if in_sylow.contains(&x) {
                continue;
            }
            let mut with = gens.clone();
            with.push(x);
            let k = g.closure(&with);
            if seen.insert(k.clone()) {
                subgroups.push(k);
            }
        }
        let mut out = Vec::new();
        for elems in &subgroups {
            let k = Arc::new(g.subgroup_from_elements(elems));
            let index = (g.order() / k.order()) as i64;
            let kt = if k.order() == g.order() {
                self.table.clone()
            } else {
                CharacterTable::new(k.clone(), self.seed)?
            };
            for (psi_i, psi) in kt.irreducibles().iter().enumerate() {
                if (index * psi.degree()) % pi == 0 {
                    continue;
                }
                let Some(chi) = self.table.position(&self.table.induce(psi, &k)) else {
                    continue;
                };
                let psi_p = kt.restrict(psi, &self.sylow);
                let psi_degs = self.sylow_table.delta_degrees(&psi_p, p)?;
                let chi_degs = &chi_deltas[chi].1;
                let top = chi_degs.len().max(psi_degs.len());
                let nz = |v: &[i64], i: usize| v.get(i).is_some_and(|d| d % pi != 0);
                let agree = (2..top).all(|i| nz(chi_degs, i) == nz(&psi_degs, i));
                let ell = |v: &[i64]| v.iter().rposition(|d| d % pi != 0);
                let (lc, lp) = (ell(chi_degs), ell(&psi_degs));
                let high = lc.max(lp).is_some_and(|l| l >= 2);
                let ell_ok = !high || lc == lp;
                out.push(Record::new(
                    agree && ell_ok,
                    json!({
                        "subgroup_order": k.order(),
                        "psi": psi_i,
                        "character": chi,
                        "chi_delta_degrees": chi_degs,
                        "psi_delta_degrees": psi_degs,
                    }),
                ));
            }
        }
        Ok(out)
    }

    /// Level of the field generated by two characters, once through the Galois
    /// stabilizer of their joint values and once as the larger of the two levels.
    fn lemma_6_3(&self) -> Vec<Record> {
        let p = self.p;
        let n = self.table.group().exponent();
        let stabs: Vec<Vec<u64>> = self
            .table
            .irreducibles()
            .iter()
            .map(|c| cyclo::galois_stabilizer(&c.values, n))
            .collect();
        let mut bad = Vec::new();
        let mut pairs = 0usize;
        for (i, si) in stabs.iter().enumerate() {
            if cyclo::level_of_stabilizer(si, n, p) != self.info[i].lev {
                bad.push(json!({ "characters": [i], "by_stabilizer": cyclo::level_of_stabilizer(si, n, p), "by_values": self.info[i].lev }));
            }
            for (j, sj) in stabs.iter().enumerate().skip(i + 1) {
                pairs += 1;
                let joint: Vec<u64> = si.iter().copied().filter(|k| sj.contains(k)).collect();
                let by_stab = cyclo::level_of_stabilizer(&joint, n, p);
                let by_max = self.info[i].lev.max(self.info[j].lev);
                if by_stab != by_max {
                    bad.push(json!({ "characters": [i, j], "by_stabilizer": by_stab, "by_values": by_max }));
                }
            }
        }
        vec![Record::new(
            bad.is_empty(),
            json!({ "pairs": pairs, "violations": bad }),
        )]
    }

    fn amn_consequence(&self) -> Result<Vec<Record>> {
        let p = self.p;
        let mut out = Vec::new();
        for (bi, b) in self.blocks.iter().enumerate() {
            let local = &self.defect_class(bi).local;
            let bj = local.correspondent(bi, b.defect)?;
            let lb = &local.blocks[bj];
            let mut up: Vec<u32> = b.height_zero().map(|c| self.info[c].lev).collect();
            let mut down: Vec<u32> = lb
                .height_zero()
                .map(|c| local.table.irreducibles()[c].level(p))
                .collect();
            let mut up_n: Vec<u32> = b
                .height_zero()
                .filter(|&c| self.info[c].lev >= 2)
                .map(|c| self.info[c].lev_n)
                .collect();
            let mut down_high: Vec<u32> = down.iter().copied().filter(|&l| l >= 2).collect();
            for v in [&mut up, &mut down, &mut up_n, &mut down_high] {
                v.sort_unstable();
            }
            let counts = up.len() == down.len();
            let levels = up == down;
            let restricted = up_n == down_high;
            out.push(Record::new(
                counts && levels && restricted,
                json!({
                    "block": bi,
                    "correspondent": bj,
                    "normalizer_order": local.normalizer.order(),
                    "height_zero_counts": [up.len(), down.len()],
                    "levels": [up, down],
                    "restricted_levels": [up_n, down_high],
                    "count_match": counts,
                    "level_match": levels,
                    "restricted_match": restricted,
                }),
            ));
        }
        Ok(out)
    }

    fn consequence_7_2(&self) -> Vec<Record> {
        (0..self.info.len())
            .filter(|&chi| self.info[chi].height == 0)
            .map(|chi| {
                let c = &self.info[chi];
                Record::new((c.lev <= 1) == (c.lev_n <= 1), self.char_record(chi))
            })
            .collect()
    }

    fn consequence_7_3(&self) -> Vec<Record> {
        if !self.sylow.profile().is_abelian {
            return Vec::new();
        }
        (0..self.info.len())
            .filter(|&chi| self.info[chi].lev >= 2)
            .map(|chi| {
                Record::new(
                    self.info[chi].lev == self.info[chi].lev_n,
                    self.char_record(chi),
                )
            })
            .collect()
    }

    /// p = 2, height zero, Q(χ) quadratic with 4 | conductor: Q(χ) = Q(χ_N).
    fn consequence_7_4(&self) -> Vec<Record> {
        if self.p != 2 {
            return Vec::new();
        }
        let mut out = Vec::new();
        for (chi, c) in self.table.irreducibles().iter().enumerate() {
            if self.info[chi].height != 0 {
                continue;
            }
            let cond = c.conductor();
            if cond % 4 != 0 {
                continue;
            }
            let stab = cyclo::galois_stabilizer(&c.values, cond);
            if stab.len() as u64 * 2 != crate::arith::euler_phi(cond) {
                continue;
            }
            let n = &self.defect_class(self.info[chi].block).local.normalizer;
            let down: Vec<_> = self.table.restrict(c, n).values;
            let stab_n = cyclo::galois_stabilizer(&down, cond);
            out.push(Record::new(
                stab == stab_n,
                json!({ "character": chi, "degree": c.degree(), "conductor": cond, "same_field": stab == stab_n }),
            ));
        }
        out
    }

    fn observations(&self, group: &str) -> Vec<Observation> {
        let g = self.table.group();
        let p = self.p;
        let mut out = Vec::new();
        let obs = |kind, chi: usize, detail| Observation {
            kind,
            group: group.to_string(),
            prime: p,
            block: self.info[chi].block,
            character: chi,
            degree: self.info[chi].degree,
            detail,
        };
        for (chi, c) in self.info.iter().enumerate() {
            if c.height == 0 && c.lev >= 2 && c.lev_d != c.lev {
                out.push(obs(
                    ObservationKind::DefectGroupLevelDiffers,
                    chi,
                    self.char_record(chi),
                ));
            }
            if c.height == 0 && c.lev == 1 && c.lev_n == 0 {
                out.push(obs(
                    ObservationKind::LevelOneDrops,
                    chi,
                    self.char_record(chi),
                ));
            }
        }
        for (bi, b) in self.blocks.iter().enumerate() {
            let dc = self.defect_class(bi);
            if dc.rep.profile().is_cyclic {
                continue;
            }
            let meets_n = g.classes_meeting(&dc.local.normalizer);
            for &chi in &b.chars {
                let lev = self.info[chi].lev;
                if lev == 0 {
                    continue;
                }
                let values = &self.table.irreducibles()[chi].values;
                let outside: Vec<usize> = (0..values.len())
                    .filter(|&k| cyclo::value_level(&values[k], p) == lev && !meets_n.contains(&k))
                    .collect();
                if !outside.is_empty() {
                    out.push(obs(
                        ObservationKind::MaxLevelClassOutsideNormalizer,
                        chi,
                        json!({ "lev": lev, "classes": outside, "normalizer_order": dc.local.normalizer.order() }),
                    ));
                }
            }
        }
        out
    }
}

struct Record {
    ok: bool,
    value: Value,
}

impl Record {
    fn new(ok: bool, value: Value) -> Self {
        Record { ok, value }
    }
}

fn outcome(statement: StatementId, group: &str, prime: u64, records: Vec<Record>) -> CheckOutcome {
    let verdict = if records.is_empty() {
        Verdict::NotApplicable
    } else if records.iter().all(|r| r.ok) {
        Verdict::Pass
    } else if statement.is_proven() {
        Verdict::Fail
    } else {
        Verdict::Finding
    };
    CheckOutcome {
        statement,
        group: group.to_string(),
        prime,
        verdict,
        records: records.into_iter().map(|r| r.value).collect(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn input(name: &str, degree: usize, cycles: &[&[&[usize]]]) -> GroupInput {
        GroupInput {
            name: name.into(),
            degree,
            generators: cycles
                .iter()
                .map(|c| Permutation::from_cycles(degree, c).unwrap())
                .collect(),
            expected: None,
        }
    }

    fn s3() -> GroupInput {
        input("S3", 3, &[&[&[0, 1, 2]], &[&[0, 1]]])
    }

    fn s4() -> GroupInput {
        input("S4", 4, &[&[&[0, 1, 2, 3]], &[&[0, 1]]])
    }

    fn sl2_8() -> GroupInput {
        let g = crate::chartab::tests::sl2_8();
        GroupInput {
            name: "SL(2,8)".into(),
            degree: g.degree(),
            generators: g.generators().to_vec(),
            expected: None,
        }
    }

    fn find(r: &Report, s: StatementId, p: u64) -> &CheckOutcome {
        r.outcomes
            .iter()
            .find(|o| o.statement == s && o.prime == p)
            .unwrap()
    }

    #[test]
    fn statement_ids_round_trip() {
        for s in StatementId::ALL {
            assert_eq!(s.as_str().parse::<StatementId>().unwrap(), s);
            assert_eq!(serde_json::to_value(s).unwrap(), json!(s.as_str()));
        }
        assert!("lem_9_9".parse::<StatementId>().is_err());
    }

    #[test]
    fn empty_corpus() {
        let r = run_corpus(&[], &VerifyOptions::default(), "");
        assert!(r.outcomes.is_empty());
        assert_eq!(r.exit_code(), 0);
    }

    #[test]
    fn trivial_group_is_vacuous() {
        let r = run_corpus(&[input("1", 1, &[])], &VerifyOptions::default(), "");
        assert!(r.outcomes.is_empty());
        assert_eq!(r.groups[0].order, 1);
        assert_eq!(r.exit_code(), 0);
    }

    #[test]
    fn s3_and_s4_pass_everything() {
        let r = run_corpus(&[s3(), s4()], &VerifyOptions::default(), "");
        assert_eq!(r.errors.len(), 0, "{:?}", r.errors);
        // every (group, prime, statement) exactly once
        assert_eq!(r.outcomes.len(), 2 * 2 * 13);
        for o in &r.outcomes {
            assert!(
                matches!(o.verdict, Verdict::Pass | Verdict::NotApplicable),
                "{o:?}"
            );
        }
        // ν_p(exp P) ≤ 1 everywhere except S4 at 2, where no character has level ≥ 2
        for o in r
            .outcomes
            .iter()
            .filter(|o| o.statement == StatementId::ConjMain)
        {
            assert_eq!(o.verdict, Verdict::NotApplicable);
        }
        assert_eq!(r.exit_code(), 0);
    }

    #[test]
    fn s3_induced_character_meets_lemma_4_3() {
        let opts = VerifyOptions {
            statements: Some(vec![StatementId::Lem43]),
            primes: Some(vec![3]),
            ..Default::default()
        };
        let r = run_corpus(&[s3()], &opts, "");
        let o = find(&r, StatementId::Lem43, 3);
        assert_eq!(o.verdict, Verdict::Pass);
        // λ^{S3} from C3 is the degree-2 character, of index 2 prime to 3
        assert!(o
            .records
            .iter()
            .any(|rec| rec["subgroup_order"] == 3 && rec["character"] == 2));
    }

    #[test]
    fn sl2_8_at_three() {
        let opts = VerifyOptions {
            primes: Some(vec![3]),
            ..Default::default()
        };
        let r = run_corpus(&[sl2_8()], &opts, "");
        assert_eq!(r.errors.len(), 0, "{:?}", r.errors);
        let main = find(&r, StatementId::ConjMain, 3);
        assert_eq!(main.verdict, Verdict::Pass);
        // the three degree-7 characters have level 2, kept by N_G(C9)
        let sevens: Vec<&Value> = main.records.iter().filter(|v| v["degree"] == 7).collect();
        assert_eq!(sevens.len(), 3);
        assert!(sevens.iter().all(|v| v["lev"] == 2 && v["lev_N"] == 2));
        let a = find(&r, StatementId::ThmA, 3);
        assert_eq!(a.verdict, Verdict::Pass);
        let principal = &a.records[0];
        assert_eq!(principal["defect_group_order"], 9);
        assert_eq!(principal["cyclic_structure"]["status"], "classified");
        assert_eq!(principal["cyclic_structure"]["level_elements"], true);
        assert_eq!(find(&r, StatementId::ConjNtC, 3).verdict, Verdict::Pass);
        assert_eq!(
            find(&r, StatementId::AmnConsequence, 3).verdict,
            Verdict::Pass
        );
        // Lemma 3.1 is tight for the principal block
        let l31 = find(&r, StatementId::Lem31, 3);
        assert_eq!(l31.records[0]["max_lev"], 2);
        assert_eq!(l31.records[0]["exp_bound"], 2);
        assert_eq!(r.exit_code(), 0);
        let dc = &r.groups[0].primes[0].defect_classes;
        assert!(dc.iter().all(|d| d.first_main.bijective));
    }

    #[test]
    fn jobs_do_not_change_the_report() {
        let inputs = [s3(), s4(), input("C4", 4, &[&[&[0, 1, 2, 3]]])];
        let one = run_corpus(&inputs, &VerifyOptions::default(), "x");
        let many = run_corpus(
            &inputs,
            &VerifyOptions {
                jobs: 3,
                ..Default::default()
            },
            "x",
        );
        assert_eq!(
            serde_json::to_string(&one).unwrap(),
            serde_json::to_string(&many).unwrap()
        );
    }

    #[test]
    fn expectations_are_compared() {
        let mut g = s3();
        g.expected = Some(Expected {
            order: Some(6),
            class_count: Some(4),
            ..Default::default()
        });
        let r = run_corpus(&[g], &VerifyOptions::default(), "");
        assert_eq!(r.expectations.len(), 2);
        assert!(!r.expectations[0].ok || !r.expectations[1].ok);
        assert_eq!(r.summary.expectation_mismatches, 1);
        assert_eq!(r.exit_code(), 1);
    }

    #[test]
    fn verdicts_follow_statement_kind() {
        let bad = || vec![Record::new(false, Value::Null)];
        assert_eq!(
            outcome(StatementId::ThmA, "G", 2, bad()).verdict,
            Verdict::Fail
        );
        assert_eq!(
            outcome(StatementId::ConjMain, "G", 2, bad()).verdict,
            Verdict::Finding
        );
        assert_eq!(
            outcome(StatementId::Lem63, "G", 2, Vec::new()).verdict,
            Verdict::NotApplicable
        );
    }
}
