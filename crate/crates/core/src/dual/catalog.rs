//! Offline table of block patterns and their time increments.
//!
//! Every pattern is scheduled canonically: open windows starting at 0, all
//! scheduled times 0, dual-runway separations. The cache file is plain text
//! named after the model digest and the maximum pattern length.

use std::collections::{BTreeMap, HashMap};
use std::fmt::Write as _;
use std::path::Path;
use std::sync::{Arc, Mutex, OnceLock};

use crate::error::{Error, Result};
use crate::model::diagnostics::block_shape;
use crate::model::{BlockKind, OperationTask, RunwayMode, SeparationModel, WakeClass};
use crate::par;

pub type Pattern = Vec<(WakeClass, OperationTask)>;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CatalogEntry {
    pub kind: BlockKind,
    pub pattern: Pattern,
    pub length_ratio: (usize, usize),
    pub time_increment: i64,
}

/// Two consecutive blocks sharing two aircraft: the first spans
/// `0..=split`, the second `split − 1..`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PairEntry {
    pub pattern: Pattern,
    pub split: usize,
    pub increments: (i64, i64),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BlockCatalog {
    pub max_len: usize,
    pub digest: String,
    /// Sorted by pattern.
    pub entries: Vec<CatalogEntry>,
    /// Sorted by pattern.
    pub pairs: Vec<PairEntry>,
    index: HashMap<Pattern, usize>,
}

struct Table {
    eta: usize,
    y: Vec<i64>,
}

impl Table {
    fn new(model: &SeparationModel) -> Result<Self> {
        let eta = model.eta as usize;
        let mut y = vec![0; 4 * eta * eta];
        for a in 0..2 * eta {
            for b in 0..2 * eta {
                y[a * 2 * eta + b] = model.separation(RunwayMode::Dual, Self::slot(eta, a), Self::slot(eta, b))?;
            }
        }
        Ok(Self { eta, y })
    }

    fn slot(eta: usize, sym: usize) -> (WakeClass, OperationTask) {
        let task = if sym < eta { OperationTask::Landing } else { OperationTask::Takeoff };
        (WakeClass::from_ordinal((sym % eta) as u8 + 1), task)
    }

    fn y(&self, a: u8, b: u8) -> i64 {
        self.y[a as usize * 2 * self.eta + b as usize]
    }
}

#[derive(Default)]
struct Found {
    entries: Vec<CatalogEntry>,
    pairs: Vec<PairEntry>,
}

struct Walk<'a> {
    t: &'a Table,
    max_len: usize,
    syms: Vec<u8>,
    times: Vec<i64>,
    out: Found,
}

impl Walk<'_> {
    fn pattern(&self) -> Pattern {
        self.syms.iter().map(|&s| Table::slot(self.t.eta, s as usize)).collect()
    }

    fn push(&mut self, sym: u8) {
        let t = self
            .syms
            .iter()
            .zip(&self.times)
            .map(|(&q, &tq)| tq + self.t.y(q, sym))
            .max()
            .unwrap_or(0)
            .max(0);
        self.syms.push(sym);
        self.times.push(t);
    }

    fn pop(&mut self) {
        self.syms.pop();
        self.times.pop();
    }

    /// `first`: end of the first block from position 0; `second`: end of
    /// the block that follows it.
    fn visit(&mut self, first: Option<usize>, second: Option<usize>) {
        let e = self.syms.len() - 1;
        let (syms, times, t, eta) = (&self.syms, &self.times, self.t, self.t.eta);
        let task = |p: usize| if (syms[p] as usize) < eta { OperationTask::Landing } else { OperationTask::Takeoff };
        let rel = |q: usize, p: usize| q < p && times[p] - times[q] == t.y(syms[q], syms[p]);
        let inc = |prev: usize| times[e] - times[prev] - t.y(syms[prev], syms[e]);
        let (mut first, mut second) = (first, second);
        if let Some(b) = block_shape(&task, &rel, 0, e) {
            let entry = CatalogEntry {
                kind: b.kind,
                pattern: self.pattern(),
                length_ratio: b.length_ratio,
                time_increment: inc(b.prev),
            };
            first.get_or_insert(e);
            self.out.entries.push(entry);
        }
        if let (Some(e1), None) = (first, second) {
            if e > e1 {
                if let Some(b) = block_shape(&task, &rel, e1 - 1, e) {
                    second = Some(e);
                    let a = block_shape(&task, &rel, 0, e1).expect("first block stays valid");
                    let inc1 = times[e1] - times[a.prev] - t.y(syms[a.prev], syms[e1]);
                    let pair = PairEntry { pattern: self.pattern(), split: e1, increments: (inc1, inc(b.prev)) };
                    self.out.pairs.push(pair);
                }
            }
        }
        if self.syms.len() == self.max_len {
            return;
        }
        for sym in 0..(2 * eta) as u8 {
            self.push(sym);
            self.visit(first, second);
            self.pop();
        }
    }
}

impl BlockCatalog {
    pub fn build(model: &SeparationModel, max_len: usize) -> Result<Self> {
        if max_len < 2 {
            return Err(Error::Contract("block catalog needs max_len >= 2".into()));
        }
        let table = Table::new(model)?;
        let eta = table.eta;
        let seeds: Vec<(u8, u8)> = (0..2 * eta as u8)
            .flat_map(|a| (0..2 * eta as u8).map(move |b| (a, b)))
            .filter(|&(a, b)| (a as usize) < eta && b as usize >= eta || a as usize >= eta && (b as usize) < eta)
            .collect();
        let found = par::map_collect(&seeds, |&(a, b)| {
            let mut w = Walk { t: &table, max_len, syms: Vec::new(), times: Vec::new(), out: Found::default() };
            w.push(a);
            w.push(b);
            w.visit(None, None);
            w.out
        });
        let mut entries = Vec::new();
        let mut pairs = Vec::new();
        for f in found {
            entries.extend(f.entries);
            pairs.extend(f.pairs);
        }
        Ok(Self::assemble(max_len, model.digest(), entries, pairs))
    }

    fn assemble(max_len: usize, digest: String, mut entries: Vec<CatalogEntry>, mut pairs: Vec<PairEntry>) -> Self {
        entries.sort_by(|a, b| a.pattern.cmp(&b.pattern));
        pairs.sort_by(|a, b| a.pattern.cmp(&b.pattern));
        let index = entries.iter().enumerate().map(|(k, e)| (e.pattern.clone(), k)).collect();
        Self { max_len, digest, entries, pairs, index }
    }

    pub fn lookup(&self, pattern: &[(WakeClass, OperationTask)]) -> Option<&CatalogEntry> {
        self.index.get(pattern).map(|&k| &self.entries[k])
    }

    /// Entry counts per `(kind, increment)`.
    pub fn increment_classes(&self) -> BTreeMap<(BlockKind, i64), usize> {
        let mut m = BTreeMap::new();
        for e in &self.entries {
            *m.entry((e.kind, e.time_increment)).or_default() += 1;
        }
        m
    }

    pub fn to_text(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "digest {}", self.digest);
        let _ = writeln!(s, "max_len {}", self.max_len);
        for e in &self.entries {
            let kind = match e.kind {
                BlockKind::T => 'T',
                BlockKind::D => 'D',
            };
            let (a, b) = e.length_ratio;
            let _ = writeln!(s, "E {kind} {} {a}/{b} {}", pattern_text(&e.pattern), e.time_increment);
        }
        for p in &self.pairs {
            let _ = writeln!(s, "P {} {} {} {}", pattern_text(&p.pattern), p.split, p.increments.0, p.increments.1);
        }
        s
    }

    pub fn from_text(text: &str) -> Result<Self> {
        let bad = |l: &str| Error::Config(format!("catalog line {l:?}"));
        let mut digest = None;
        let mut max_len = None;
        let mut entries = Vec::new();
        let mut pairs = Vec::new();
        for line in text.lines() {
            let f: Vec<&str> = line.split_whitespace().collect();
            match f.as_slice() {
                ["digest", d] => digest = Some(d.to_string()),
                ["max_len", m] => max_len = Some(m.parse().map_err(|_| bad(line))?),
                ["E", kind, pat, ratio, inc] => {
                    let kind = match *kind {
                        "T" => BlockKind::T,
                        "D" => BlockKind::D,
                        _ => return Err(bad(line)),
                    };
                    let (a, b) = ratio.split_once('/').ok_or_else(|| bad(line))?;
                    entries.push(CatalogEntry {
                        kind,
                        pattern: parse_pattern(pat).ok_or_else(|| bad(line))?,
                        length_ratio: (a.parse().map_err(|_| bad(line))?, b.parse().map_err(|_| bad(line))?),
                        time_increment: inc.parse().map_err(|_| bad(line))?,
                    });
                }
                ["P", pat, split, i1, i2] => pairs.push(PairEntry {
                    pattern: parse_pattern(pat).ok_or_else(|| bad(line))?,
                    split: split.parse().map_err(|_| bad(line))?,
                    increments: (i1.parse().map_err(|_| bad(line))?, i2.parse().map_err(|_| bad(line))?),
                }),
                [] => {}
                _ => return Err(bad(line)),
            }
        }
        let (Some(digest), Some(max_len)) = (digest, max_len) else {
            return Err(Error::Config("catalog header missing".into()));
        };
        Ok(Self::assemble(max_len, digest, entries, pairs))
    }

    /// Cached catalog for `model`: memory first, then `dir`, then a fresh
    /// build (written back to `dir`).
    pub fn load_or_build(model: &SeparationModel, max_len: usize, dir: Option<&Path>) -> Result<Arc<Self>> {
        static MEMO: OnceLock<Mutex<HashMap<(String, usize), Arc<BlockCatalog>>>> = OnceLock::new();
        let key = (model.digest(), max_len);
        let memo = MEMO.get_or_init(Default::default);
        if let Some(c) = memo.lock().expect("catalog memo").get(&key) {
            return Ok(c.clone());
        }
        let path = dir.map(|d| d.join(format!("blocks-{}-{max_len}.txt", &key.0[..16])));
        let cached = path
            .as_ref()
            .and_then(|p| std::fs::read_to_string(p).ok())
            .and_then(|t| Self::from_text(&t).ok())
            .filter(|c| c.digest == key.0 && c.max_len == max_len);
        let catalog = match cached {
            Some(c) => c,
            None => {
                let c = Self::build(model, max_len)?;
                if let Some(p) = &path {
                    std::fs::create_dir_all(p.parent().expect("cache file has a directory"))?;
                    std::fs::write(p, c.to_text())?;
                }
                c
            }
        };
        let catalog = Arc::new(catalog);
        memo.lock().expect("catalog memo").insert(key, catalog.clone());
        Ok(catalog)
    }
}

pub fn pattern_text(p: &[(WakeClass, OperationTask)]) -> String {
    p.iter()
        .map(|(c, t)| {
            let t = match t {
                OperationTask::Landing => 'L',
                OperationTask::Takeoff => 'T',
            };
            format!("{t}{}", c.letter())
        })
        .collect()
}

fn parse_pattern(s: &str) -> Option<Pattern> {
    let b = s.as_bytes();
    if b.len() % 2 != 0 {
        return None;
    }
    b.chunks(2)
        .map(|c| {
            let t = match c[0] {
                b'L' => OperationTask::Landing,
                b'T' => OperationTask::Takeoff,
                _ => return None,
            };
            c[1].is_ascii_uppercase().then(|| (WakeClass::from_ordinal(c[1] - b'A' + 1), t))
        })
        .collect()
}
