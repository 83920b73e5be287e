//! Corpus ingestion, command dispatch and report rendering for the `blockscope` binary.

use std::collections::HashSet;
use std::ffi::OsString;
use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::sync::Arc;

use clap::{Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use blockscope::blocks::{block_ideal, p_blocks};
use blockscope::verify::{self, Expected, GroupInput, Report, StatementId, VerifyOptions};
use blockscope::weil::{self, Sl2Check, WeilCheck};
use blockscope::{CharacterTable, Group, Permutation};

pub const TOOL: &str = concat!("blockscope ", env!("CARGO_PKG_VERSION"));

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{path}: parse error at line {line}, column {column}: {message}")]
    Parse {
        path: String,
        line: usize,
        column: usize,
        message: String,
    },
    #[error("duplicate group name {0:?}")]
    DuplicateName(String),
    #[error("group {group:?}, generator {index}: {message}")]
    MalformedPermutation {
        group: String,
        index: usize,
        message: String,
    },
    #[error("{0}")]
    Io(String),
    #[error(transparent)]
    Core(#[from] blockscope::Error),
    #[error("{0}")]
    Usage(String),
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CorpusEntry {
    pub name: String,
    pub degree: usize,
    /// 0-based image arrays.
    pub generators: Vec<Vec<usize>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub expected: Option<Expected>,
}

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Corpus {
    pub groups: Vec<CorpusEntry>,
}

impl CorpusEntry {
    pub fn permutations(&self) -> Result<Vec<Permutation>, CliError> {
        let bad = |index, message: String| CliError::MalformedPermutation {
            group: self.name.clone(),
            index,
            message,
        };
        if self.degree == 0 {
            return Err(bad(0, "degree must be positive".into()));
        }
        self.generators
            .iter()
            .enumerate()
            .map(|(i, images)| {
                if images.len() != self.degree {
                    return Err(bad(
                        i,
                        format!("{} images for degree {}", images.len(), self.degree),
                    ));
                }
                Permutation::new(images.clone()).map_err(|e| bad(i, e.to_string()))
            })
            .collect()
    }

    pub fn input(&self) -> Result<GroupInput, CliError> {
        Ok(GroupInput {
            name: self.name.clone(),
            degree: self.degree,
            generators: self.permutations()?,
            expected: self.expected.clone(),
        })
    }
}

/// Parses and validates corpus text; `origin` only labels parse errors.
pub fn ingest_str(text: &str, origin: &str) -> Result<Vec<CorpusEntry>, CliError> {
    let corpus: Corpus = serde_json::from_str(text).map_err(|e| CliError::Parse {
        path: origin.to_string(),
        line: e.line(),
        column: e.column(),
        message: e.to_string(),
    })?;
    let mut names = HashSet::new();
    for g in &corpus.groups {
        if !names.insert(g.name.as_str()) {
            return Err(CliError::DuplicateName(g.name.clone()));
        }
        g.permutations()?;
    }
    Ok(corpus.groups)
}

pub fn ingest(path: &Path) -> Result<(Vec<CorpusEntry>, String), CliError> {
    let bytes =
        std::fs::read(path).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?;
    let text = String::from_utf8(bytes.clone())
        .map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?;
    let entries = ingest_str(&text, &path.display().to_string())?;
    Ok((entries, digest(&bytes)))
}

/// Corpus text that ingests back to the same entries.
pub fn emit_corpus(entries: &[CorpusEntry]) -> String {
    let corpus = Corpus {
        groups: entries.to_vec(),
    };
    serde_json::to_string_pretty(&corpus).expect("corpus entries serialize") + "\n"
}

/// Lowercase hex SHA-256.
pub fn digest(bytes: &[u8]) -> String {
    Sha256::digest(bytes)
        .iter()
        .fold(String::with_capacity(64), |mut s, b| {
            let _ = write!(s, "{b:02x}");
            s
        })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Text,
}

#[derive(Debug, Parser)]
#[command(
    name = "blockscope",
    version,
    about = "Character tables, p-blocks and p-rationality levels of permutation groups"
)]
pub struct Cli {
    /// Seed for the randomized internals (Sylow ascent, eigenvector search order).
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Worker threads for `verify`.
    #[arg(long, global = true, default_value_t = 1)]
    pub jobs: usize,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Print character tables.
    Table {
        /// Corpus JSON file.
        corpus: PathBuf,
        /// Only this group (by corpus name).
        #[arg(long)]
        group: Option<String>,
    },
    /// Print p-blocks with defects, defect-group orders, heights and levels.
    Blocks {
        /// Corpus JSON file.
        corpus: PathBuf,
        #[arg(long)]
        prime: u64,
    },
    /// Run the statement checks.
    Verify {
        /// Corpus JSON file.
        corpus: PathBuf,
        /// Restrict to these primes (repeatable); default is every prime dividing |G|.
        #[arg(long)]
        prime: Vec<u64>,
        /// Restrict to these statement ids (repeatable).
        #[arg(long)]
        statement: Vec<String>,
    },
    /// Check the Weil characters of GU_n(q) at an odd prime p dividing q + 1.
    Weil {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        q: u64,
        /// Defaults to every odd prime dividing q + 1.
        #[arg(long)]
        p: Option<u64>,
    },
    /// Compare the SL2(q) table against the torus value formula, q a power of 2.
    Sl2 {
        #[arg(long)]
        q: u64,
    },
}

/// What a command printed and how it should exit.
#[derive(Debug)]
pub struct Outcome {
    pub stdout: String,
    pub stderr: String,
    pub code: i32,
}

/// Parses `args` (program name first) and runs the command.
pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let text = e.render().to_string();
            return if code == 0 {
                Outcome {
                    stdout: text,
                    stderr: String::new(),
                    code,
                }
            } else {
                Outcome {
                    stdout: String::new(),
                    stderr: text,
                    code,
                }
            };
        }
    };
    match dispatch(&cli) {
        Ok((stdout, code)) => Outcome {
            stdout,
            stderr: String::new(),
            code,
        },
        Err(e) => Outcome {
            stdout: String::new(),
            stderr: format!("error: {e}\n"),
            code: 1,
        },
    }
}

pub fn dispatch(cli: &Cli) -> Result<(String, i32), CliError> {
    match &cli.command {
        Command::Table { corpus, group } => {
            let (entries, _) = ingest(corpus)?;
            let doc = table_document(&entries, group.as_deref(), cli.seed)?;
            Ok((render(&doc, cli.format, render_tables), 0))
        }
        Command::Blocks { corpus, prime } => {
            let (entries, _) = ingest(corpus)?;
            let doc = blocks_document(&entries, *prime, cli.seed)?;
            Ok((render(&doc, cli.format, render_blocks), 0))
        }
        Command::Verify {
            corpus,
            prime,
            statement,
        } => {
            let (entries, sha) = ingest(corpus)?;
            let inputs = entries
                .iter()
                .map(CorpusEntry::input)
                .collect::<Result<Vec<_>, _>>()?;
            let statements = statement
                .iter()
                .map(|s| s.parse::<StatementId>())
                .collect::<Result<Vec<_>, _>>()?;
            let opts = VerifyOptions {
                seed: cli.seed,
                jobs: cli.jobs.max(1),
                primes: (!prime.is_empty()).then(|| prime.clone()),
                statements: (!statements.is_empty()).then_some(statements),
            };
            let report = verify::run_corpus(&inputs, &opts, &sha);
            let code = report.exit_code();
            Ok((render(&report, cli.format, render_report), code))
        }
        Command::Weil { n, q, p } => {
            let primes = match p {
                Some(p) => vec![*p],
                None => weil::weil_primes(*q),
            };
            if primes.is_empty() {
                return Err(CliError::Usage(format!(
                    "no odd prime divides q + 1 = {}",
                    q + 1
                )));
            }
            let checks = primes
                .iter()
                .map(|&p| weil::weil_consistency(*n, *q, p, cli.seed))
                .collect::<Result<Vec<_>, _>>()?;
            let code = if checks.iter().all(|c| c.applicable && c.passed()) {
                0
            } else {
                1
            };
            let doc = WeilDocument {
                tool: TOOL.into(),
                seed: cli.seed,
                checks,
            };
            Ok((render(&doc, cli.format, render_weil), code))
        }
        Command::Sl2 { q } => {
            let checks = weil::sl2_oracle(*q, cli.seed)?;
            let code = if checks.iter().all(|c| c.matched) {
                0
            } else {
                1
            };
            let doc = Sl2Document {
                tool: TOOL.into(),
                seed: cli.seed,
                checks,
            };
            Ok((render(&doc, cli.format, render_sl2), code))
        }
    }
}

fn render<T: Serialize>(doc: &T, format: Format, text: fn(&T) -> String) -> String {
    match format {
        Format::Json => serde_json::to_string_pretty(doc).expect("reports serialize") + "\n",
        Format::Text => text(doc),
    }
}

fn table_of(entry: &CorpusEntry, seed: u64) -> Result<CharacterTable, CliError> {
    let g = Group::from_generators(entry.degree, entry.permutations()?)?;
    Ok(CharacterTable::new(Arc::new(g), seed)?)
}

#[derive(Debug, Serialize)]
pub struct TableDocument {
    pub tool: String,
    pub seed: u64,
    pub groups: Vec<GroupTable>,
}

#[derive(Debug, Serialize)]
pub struct GroupTable {
    pub name: String,
    pub order: u64,
    pub exponent: u64,
    pub classes: Vec<ClassInfo>,
    /// One row per irreducible; values over Q(z_n) with n the exponent.
    pub characters: Vec<Vec<String>>,
}

#[derive(Debug, Serialize)]
pub struct ClassInfo {
    pub order: u64,
    pub size: u64,
    pub centralizer_order: u64,
}

pub fn table_document(
    entries: &[CorpusEntry],
    only: Option<&str>,
    seed: u64,
) -> Result<TableDocument, CliError> {
    if let Some(name) = only {
        if !entries.iter().any(|e| e.name == name) {
            return Err(CliError::Usage(format!(
                "no group named {name:?} in the corpus"
            )));
        }
    }
    let groups = entries
        .iter()
        .filter(|e| only.is_none_or(|n| e.name == n))
        .map(|e| {
            let t = table_of(e, seed)?;
            let g = t.group();
            Ok(GroupTable {
                name: e.name.clone(),
                order: g.order(),
                exponent: g.exponent(),
                classes: g
                    .conjugacy_classes()
                    .iter()
                    .map(|c| ClassInfo {
                        order: c.element_order,
                        size: c.size,
                        centralizer_order: c.centralizer_order,
                    })
                    .collect(),
                characters: t
                    .irreducibles()
                    .iter()
                    .map(|c| c.values.iter().map(|v| v.to_string()).collect())
                    .collect(),
            })
        })
        .collect::<Result<_, CliError>>()?;
    Ok(TableDocument {
        tool: TOOL.into(),
        seed,
        groups,
    })
}

#[derive(Debug, Serialize)]
pub struct BlocksDocument {
    pub tool: String,
    pub seed: u64,
    pub prime: u64,
    pub groups: Vec<GroupBlocks>,
}

#[derive(Debug, Serialize)]
pub struct GroupBlocks {
    pub name: String,
    pub order: u64,
    pub blocks: Vec<BlockInfo>,
}

#[derive(Debug, Serialize)]
pub struct BlockInfo {
    pub principal: bool,
    pub defect: u32,
    pub defect_group_order: u64,
    pub defect_group_cyclic: bool,
    pub characters: Vec<BlockCharacter>,
}

#[derive(Debug, Serialize)]
pub struct BlockCharacter {
    pub character: usize,
    pub degree: i64,
    pub height: u32,
    pub level: u32,
}

pub fn blocks_document(
    entries: &[CorpusEntry],
    p: u64,
    seed: u64,
) -> Result<BlocksDocument, CliError> {
    if !blockscope::arith::is_prime(p) {
        return Err(CliError::Usage(format!("{p} is not prime")));
    }
    let groups = entries
        .iter()
        .map(|e| {
            let t = table_of(e, seed)?;
            let g = t.group();
            let blocks = p_blocks(&t, p, &block_ideal(g, p, 0), seed)?;
            let levels = t.levels(p);
            Ok(GroupBlocks {
                name: e.name.clone(),
                order: g.order(),
                blocks: blocks
                    .iter()
                    .map(|b| BlockInfo {
                        principal: b.is_principal,
                        defect: b.defect,
                        defect_group_order: b.defect_group.order(),
                        defect_group_cyclic: b.defect_group.profile().is_cyclic,
                        characters: b
                            .chars
                            .iter()
                            .zip(&b.heights)
                            .map(|(&c, &height)| BlockCharacter {
                                character: c,
                                degree: t.irreducibles()[c].degree(),
                                height,
                                level: levels[c],
                            })
                            .collect(),
                    })
                    .collect(),
            })
        })
        .collect::<Result<_, CliError>>()?;
    Ok(BlocksDocument {
        tool: TOOL.into(),
        seed,
        prime: p,
        groups,
    })
}

#[derive(Debug, Serialize)]
pub struct WeilDocument {
    pub tool: String,
    pub seed: u64,
    pub checks: Vec<WeilCheck>,
}

#[derive(Debug, Serialize)]
pub struct Sl2Document {
    pub tool: String,
    pub seed: u64,
    pub checks: Vec<Sl2Check>,
}

fn render_tables(doc: &TableDocument) -> String {
    let mut s = String::new();
    for g in &doc.groups {
        let _ = writeln!(s, "{} (order {}, exponent {})", g.name, g.order, g.exponent);
        let orders: Vec<String> = g.classes.iter().map(|c| c.order.to_string()).collect();
        let sizes: Vec<String> = g.classes.iter().map(|c| c.size.to_string()).collect();
        let _ = writeln!(s, "  order  {}", orders.join("  "));
        let _ = writeln!(s, "  size   {}", sizes.join("  "));
        for (i, row) in g.characters.iter().enumerate() {
            let _ = writeln!(s, "  X.{:<4} {}", i, row.join("  |  "));
        }
        s.push('\n');
    }
    s
}

fn render_blocks(doc: &BlocksDocument) -> String {
    let mut s = String::new();
    for g in &doc.groups {
        let _ = writeln!(s, "{} (order {}), p = {}", g.name, g.order, doc.prime);
        for (i, b) in g.blocks.iter().enumerate() {
            let chars: Vec<String> = b
                .characters
                .iter()
                .map(|c| {
                    format!(
                        "X.{}[deg {}, ht {}, lev {}]",
                        c.character, c.degree, c.height, c.level
                    )
                })
                .collect();
            let _ = writeln!(
                s,
                "  B{i}{} defect {} |D| = {}{}: {}",
                if b.principal { " (principal)" } else { "" },
                b.defect,
                b.defect_group_order,
                if b.defect_group_cyclic { " cyclic" } else { "" },
                chars.join(" ")
            );
        }
    }
    s
}

fn render_report(r: &Report) -> String {
    let mut s = String::new();
    let m = &r.summary;
    let _ = writeln!(
        s,
        "{}  corpus sha256 {}  seed {}",
        r.tool, r.corpus_sha256, r.seed
    );
    let _ = writeln!(
        s,
        "groups {}  outcomes {}  pass {}  fail {}  n/a {}  finding {}  observations {}  expectation mismatches {}  errors {}",
        m.groups, m.outcomes, m.pass, m.fail, m.not_applicable, m.finding, m.observations, m.expectation_mismatches, m.errors
    );
    for o in &r.outcomes {
        let _ = writeln!(
            s,
            "{:<24} p={:<3} {:<16} {:?}",
            o.group,
            o.prime,
            o.statement.as_str(),
            o.verdict
        );
    }
    for o in &r.observations {
        let _ = writeln!(
            s,
            "observation {:?}: {} p={} X.{} (degree {}) {}",
            o.kind, o.group, o.prime, o.character, o.degree, o.detail
        );
    }
    for e in r.expectations.iter().filter(|e| !e.ok) {
        let _ = writeln!(
            s,
            "expectation mismatch: {} {}: expected {} got {}",
            e.group, e.item, e.expected, e.actual
        );
    }
    for e in &r.errors {
        let _ = writeln!(s, "error: {}: {}", e.group, e.message);
    }
    s
}

fn render_weil(doc: &WeilDocument) -> String {
    let mut s = String::new();
    for c in &doc.checks {
        let _ = writeln!(
            s,
            "GU_{}({}) p={} order {}: class function {}, degree {}, orthonormal {}, table match {:?}, levels {:?} -> {}",
            c.n,
            c.q,
            c.p,
            c.group_order,
            c.class_function,
            c.degree,
            c.orthonormal,
            c.table_match,
            c.levels.iter().map(|l| (l.i, l.level, l.alpha_level)).collect::<Vec<_>>(),
            if c.applicable && c.passed() { "pass" } else { "FAIL" }
        );
    }
    s
}

fn render_sl2(doc: &Sl2Document) -> String {
    let mut s = String::new();
    for c in &doc.checks {
        let _ = writeln!(
            s,
            "SL2({}) eps={:+}: {} characters, labels {:?} -> {}",
            c.q,
            c.eps,
            c.characters,
            c.labels,
            if c.matched { "pass" } else { "FAIL" }
        );
    }
    s
}
