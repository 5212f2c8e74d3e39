//! Isomorph-free generation of biregular bipartite graphs and the Moore
//! census built on it.
//!
//! Matrices are grown one side-1 row at a time. Every canonical matrix
//! (the lexicographic maximum of its class, see [`graph::canonical_form`])
//! has rows and columns in decreasing order, so the search only produces
//! doubly sorted matrices: columns that agree on all rows so far form a
//! block, a new row chooses how many ones each block receives (always at
//! the front of the block), and it may not exceed the previous row. Column
//! sums are kept feasible for the rows still to come. A prefix is extended
//! only if it is canonical on its own; complete matrices that pass are
//! exactly the canonical representatives.
//!
//! The search tree is split at a fixed depth and the subtrees run in
//! parallel. Results are merged in subtree order, so counts and the order of
//! representatives do not depend on scheduling.

use std::collections::BTreeMap;
use std::fmt;
use std::fs;
use std::io::Write as _;
use std::path::PathBuf;
use std::sync::atomic::{AtomicBool, AtomicU64, Ordering};
use std::sync::Mutex;
use std::time::{Duration, Instant};

use num_traits::ToPrimitive;
use rayon::prelude::*;

use crate::bounds::{self, Params};
use crate::error::{Error, Result};
use crate::graph::{self, rows_are_canonical, BipartiteGraph};

/// Side sizes, degrees and target diameter of a search.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct EnumSpec {
    pub n1: usize,
    pub n2: usize,
    pub r: usize,
    pub s: usize,
    pub d: usize,
}

impl EnumSpec {
    pub fn new(n1: usize, n2: usize, r: usize, s: usize, d: usize) -> Result<Self> {
        if n1 == 0 || n2 == 0 || r == 0 || s == 0 {
            return Err(Error::InvalidParams(
                "sizes and degrees must be positive".into(),
            ));
        }
        if n1 * r != n2 * s {
            return Err(Error::InvalidParams(format!(
                "n1 * r = {} differs from n2 * s = {}",
                n1 * r,
                n2 * s
            )));
        }
        if r > n2 || s > n1 {
            return Err(Error::InvalidParams(format!(
                "degrees ({r}, {s}) exceed side sizes ({n2}, {n1})"
            )));
        }
        if n1 > 64 || n2 > 64 {
            return Err(Error::TooLarge(n1.max(n2), 64));
        }
        Ok(EnumSpec { n1, n2, r, s, d })
    }

    pub fn order(&self) -> usize {
        self.n1 + self.n2
    }
}

impl fmt::Display for EnumSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "[{},{};{}] n={} ({}+{})",
            self.r,
            self.s,
            self.d,
            self.order(),
            self.n1,
            self.n2
        )
    }
}

/// Knobs that do not change what is counted, except `connected_only`.
#[derive(Debug, Clone)]
pub struct EnumOptions {
    /// Upper limit on search nodes (placed rows); `None` is unlimited.
    pub work_limit: Option<u64>,
    /// Worker threads; `None` uses the global pool.
    pub threads: Option<usize>,
    /// Representatives with the target diameter to keep.
    pub max_representatives: usize,
    /// Count connected graphs only.
    pub connected_only: bool,
    /// File recording completed subtrees, for resuming long runs.
    pub checkpoint: Option<PathBuf>,
}

/// Work limit used when none is given. The largest census row with at most
/// 15000 classes needs about 400 thousand nodes; the 977278-class row needs
/// about 21 million and so stops here unless the limit is lifted.
pub const DEFAULT_WORK_LIMIT: u64 = 5_000_000;

impl Default for EnumOptions {
    fn default() -> Self {
        EnumOptions {
            work_limit: Some(DEFAULT_WORK_LIMIT),
            threads: None,
            max_representatives: 100,
            connected_only: true,
            checkpoint: None,
        }
    }
}

impl EnumOptions {
    pub fn exhaustive() -> Self {
        EnumOptions {
            work_limit: None,
            ..Self::default()
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EnumReport {
    pub spec: EnumSpec,
    /// Isomorphism classes of `(r, s)`-biregular graphs found.
    pub generated: u64,
    /// Of those, classes with diameter exactly `d`.
    pub with_diameter: u64,
    /// Of those, classes with diameter below `d`.
    pub below_diameter: u64,
    /// Canonical graphs with diameter `d`, at most `max_representatives`.
    pub representatives: Vec<BipartiteGraph>,
    pub nodes: u64,
    pub elapsed: Duration,
    /// False when the work limit stopped the search; counts are then lower
    /// bounds.
    pub complete: bool,
}

impl fmt::Display for EnumReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{}: {} generated, {} with diameter {}",
            self.spec, self.generated, self.with_diameter, self.spec.d
        )?;
        if self.below_diameter > 0 {
            write!(f, ", {} with smaller diameter", self.below_diameter)?;
        }
        if !self.complete {
            f.write_str(" INCOMPLETE")?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy)]
struct Block {
    start: u8,
    len: u8,
    sum: u8,
}

fn initial_blocks(n2: usize) -> Vec<Block> {
    vec![Block {
        start: 0,
        len: n2 as u8,
        sum: 0,
    }]
}

/// Column masks (bit `i` = row `i`) of a single-word matrix.
fn columns(rows: &[u64], n2: usize) -> [u64; 64] {
    let mut cols = [0u64; 64];
    for (i, &row) in rows.iter().enumerate() {
        let mut w = row;
        while w != 0 {
            let j = w.trailing_zeros() as usize;
            cols[j] |= 1 << i;
            w &= w - 1;
        }
    }
    debug_assert!(cols[n2..].iter().all(|&c| c == 0));
    cols
}

fn mask(n: usize) -> u64 {
    if n == 64 {
        u64::MAX
    } else {
        (1u64 << n) - 1
    }
}

/// Eccentricity of a vertex, or `None` when it exceeds `cap` or the graph
/// is disconnected.
fn eccentricity(
    rows: &[u64],
    cols: &[u64; 64],
    n2: usize,
    side1: bool,
    v: usize,
    cap: usize,
) -> Option<usize> {
    let (all1, all2) = (mask(rows.len()), mask(n2));
    let (mut seen1, mut seen2) = if side1 {
        (1u64 << v, 0)
    } else {
        (0, 1u64 << v)
    };
    let (mut f1, mut f2) = (seen1, seen2);
    let mut dist = 0;
    loop {
        if seen1 == all1 && seen2 == all2 {
            return Some(dist);
        }
        if dist == cap {
            return None;
        }
        let mut n2set = 0u64;
        let mut w = f1;
        while w != 0 {
            n2set |= rows[w.trailing_zeros() as usize];
            w &= w - 1;
        }
        let mut n1set = 0u64;
        let mut w = f2;
        while w != 0 {
            n1set |= cols[w.trailing_zeros() as usize];
            w &= w - 1;
        }
        f1 = n1set & !seen1;
        f2 = n2set & !seen2;
        if f1 == 0 && f2 == 0 {
            return None;
        }
        seen1 |= f1;
        seen2 |= f2;
        dist += 1;
    }
}

fn connected(rows: &[u64], cols: &[u64; 64], n2: usize) -> bool {
    eccentricity(rows, cols, n2, true, 0, usize::MAX).is_some()
}

/// Diameter when it is at most `cap`.
fn diameter_capped(rows: &[u64], cols: &[u64; 64], n2: usize, cap: usize) -> Option<usize> {
    let mut best = 0;
    for i in 0..rows.len() {
        best = best.max(eccentricity(rows, cols, n2, true, i, cap)?);
    }
    for j in 0..n2 {
        best = best.max(eccentricity(rows, cols, n2, false, j, cap)?);
    }
    Some(best)
}

/// Shared node budget.
struct Budget {
    limit: Option<u64>,
    used: AtomicU64,
    exhausted: AtomicBool,
}

impl Budget {
    fn new(limit: Option<u64>) -> Self {
        Budget {
            limit,
            used: AtomicU64::new(0),
            exhausted: AtomicBool::new(false),
        }
    }

    /// Adds `n` nodes; false once the limit is passed.
    fn charge(&self, n: u64) -> bool {
        let total = self.used.fetch_add(n, Ordering::Relaxed) + n;
        if self.limit.is_some_and(|l| total > l) {
            self.exhausted.store(true, Ordering::Relaxed);
        }
        !self.exhausted.load(Ordering::Relaxed)
    }
}

const FLUSH: u64 = 1 << 12;

#[derive(Debug, Clone, Default, PartialEq, Eq)]
struct Tally {
    generated: u64,
    with_diameter: u64,
    below_diameter: u64,
    representatives: Vec<Vec<u64>>,
}

impl Tally {
    fn absorb(&mut self, other: Tally, cap: usize) {
        self.generated += other.generated;
        self.with_diameter += other.with_diameter;
        self.below_diameter += other.below_diameter;
        let room = cap.saturating_sub(self.representatives.len());
        self.representatives
            .extend(other.representatives.into_iter().take(room));
    }
}

struct Search<'a> {
    spec: EnumSpec,
    connected_only: bool,
    max_reps: usize,
    budget: &'a Budget,
    rows: Vec<u64>,
    pending: u64,
    stopped: bool,
}

impl Search<'_> {
    fn tick(&mut self) -> bool {
        self.pending += 1;
        if self.pending >= FLUSH {
            let n = std::mem::take(&mut self.pending);
            if !self.budget.charge(n) {
                self.stopped = true;
            }
        }
        !self.stopped
    }

    fn flush(&mut self) {
        let n = std::mem::take(&mut self.pending);
        if !self.budget.charge(n) {
            self.stopped = true;
        }
    }

    /// All admissible next rows with the refined blocks, largest row first.
    fn candidates(&self, blocks: &[Block]) -> Vec<(u64, Vec<Block>)> {
        let s = self.spec.s as u8;
        let after = (self.spec.n1 - self.rows.len() - 1) as u8;
        let nb = blocks.len();
        let mut lo = vec![0u8; nb];
        let mut hi = vec![0u8; nb];
        for (b, blk) in blocks.iter().enumerate() {
            hi[b] = if blk.sum < s { blk.len } else { 0 };
            lo[b] = if s - blk.sum > after { blk.len } else { 0 };
            if lo[b] > hi[b] {
                return Vec::new();
            }
        }
        let mut suffix_lo = vec![0usize; nb + 1];
        let mut suffix_hi = vec![0usize; nb + 1];
        for b in (0..nb).rev() {
            suffix_lo[b] = suffix_lo[b + 1] + lo[b] as usize;
            suffix_hi[b] = suffix_hi[b + 1] + hi[b] as usize;
        }
        let ctx = Choose {
            blocks,
            lo: &lo,
            hi: &hi,
            suffix_lo: &suffix_lo,
            suffix_hi: &suffix_hi,
            prev: self.rows.last().copied(),
        };
        let mut out = Vec::new();
        let mut counts = vec![0u8; nb];
        ctx.rec(
            0,
            self.spec.r,
            self.rows.last().is_some(),
            &mut counts,
            &mut out,
        );
        out
    }

    /// Depth-first search below the current rows, calling `leaf` for each
    /// canonical prefix of `target` rows.
    fn run(&mut self, blocks: &[Block], target: usize, leaf: &mut dyn FnMut(&mut Self, &[Block])) {
        if self.stopped {
            return;
        }
        if self.rows.len() == target {
            leaf(self, blocks);
            return;
        }
        for (row, next) in self.candidates(blocks) {
            if !self.tick() {
                return;
            }
            self.rows.push(row);
            if self.rows.len() < 2 || rows_are_canonical(&self.rows, self.spec.n2) {
                self.run(&next, target, leaf);
            }
            self.rows.pop();
            if self.stopped {
                return;
            }
        }
    }

    fn evaluate(&self, tally: &mut Tally) {
        let spec = self.spec;
        let cols = columns(&self.rows, spec.n2);
        debug_assert!(self.rows.iter().all(|r| r.count_ones() as usize == spec.r));
        debug_assert!(cols[..spec.n2]
            .iter()
            .all(|c| c.count_ones() as usize == spec.s));
        if self.connected_only && !connected(&self.rows, &cols, spec.n2) {
            return;
        }
        tally.generated += 1;
        match diameter_capped(&self.rows, &cols, spec.n2, spec.d) {
            Some(d) if d == spec.d => {
                tally.with_diameter += 1;
                if tally.representatives.len() < self.max_reps {
                    tally.representatives.push(self.rows.clone());
                }
            }
            Some(_) => tally.below_diameter += 1,
            None => {}
        }
    }
}

struct Choose<'a> {
    blocks: &'a [Block],
    lo: &'a [u8],
    hi: &'a [u8],
    suffix_lo: &'a [usize],
    suffix_hi: &'a [usize],
    prev: Option<u64>,
}

impl Choose<'_> {
    fn rec(
        &self,
        b: usize,
        rem: usize,
        tight: bool,
        counts: &mut [u8],
        out: &mut Vec<(u64, Vec<Block>)>,
    ) {
        if b == self.blocks.len() {
            if rem == 0 {
                out.push(self.materialize(counts));
            }
            return;
        }
        let blk = self.blocks[b];
        let lo = (self.lo[b] as usize).max(rem.saturating_sub(self.suffix_hi[b + 1]));
        let mut hi = (self.hi[b] as usize).min(rem);
        if rem < self.suffix_lo[b + 1] {
            return;
        }
        hi = hi.min(rem - self.suffix_lo[b + 1]);
        let prev_bit = tight && (self.prev.unwrap() >> blk.start) & 1 == 1;
        if tight && !prev_bit {
            // the previous row has zeros here; any one would exceed it
            hi = 0;
        }
        if lo > hi {
            return;
        }
        for c in (lo..=hi).rev() {
            counts[b] = c as u8;
            let still_tight = tight && (!prev_bit || c == blk.len as usize);
            self.rec(b + 1, rem - c, still_tight, counts, out);
        }
        counts[b] = 0;
    }

    fn materialize(&self, counts: &[u8]) -> (u64, Vec<Block>) {
        let mut row = 0u64;
        let mut next = Vec::with_capacity(self.blocks.len() * 2);
        for (blk, &c) in self.blocks.iter().zip(counts) {
            row |= mask(c as usize) << blk.start;
            if c > 0 {
                next.push(Block {
                    start: blk.start,
                    len: c,
                    sum: blk.sum + 1,
                });
            }
            if c < blk.len {
                next.push(Block {
                    start: blk.start + c,
                    len: blk.len - c,
                    sum: blk.sum,
                });
            }
        }
        (row, next)
    }
}

/// Depth at which the tree is split into parallel tasks.
fn split_depth(spec: &EnumSpec) -> usize {
    spec.n1.saturating_sub(1).clamp(1, 3)
}

struct Checkpoint {
    path: PathBuf,
    header: String,
    done: BTreeMap<usize, Tally>,
    file: Mutex<Option<fs::File>>,
}

fn encode_reps(reps: &[Vec<u64>]) -> String {
    if reps.is_empty() {
        return "-".into();
    }
    reps.iter()
        .map(|rows| {
            rows.iter()
                .map(|r| format!("{r:x}"))
                .collect::<Vec<_>>()
                .join(":")
        })
        .collect::<Vec<_>>()
        .join(",")
}

fn decode_reps(text: &str) -> Option<Vec<Vec<u64>>> {
    if text == "-" {
        return Some(Vec::new());
    }
    text.split(',')
        .map(|g| {
            g.split(':')
                .map(|h| u64::from_str_radix(h, 16).ok())
                .collect()
        })
        .collect()
}

impl Checkpoint {
    fn open(path: PathBuf, spec: &EnumSpec, connected_only: bool, tasks: usize) -> Result<Self> {
        let header = format!(
            "# bimoore checkpoint n1={} n2={} r={} s={} d={} connected={} tasks={}",
            spec.n1, spec.n2, spec.r, spec.s, spec.d, connected_only, tasks
        );
        let mut done = BTreeMap::new();
        if let Ok(text) = fs::read_to_string(&path) {
            let mut lines = text.lines();
            if lines.next() != Some(header.as_str()) {
                return Err(Error::InvalidParams(format!(
                    "checkpoint {} belongs to a different search",
                    path.display()
                )));
            }
            for line in lines {
                let f: Vec<&str> = line.split_whitespace().collect();
                let parsed = (|| {
                    if f.len() != 6 || f[0] != "done" {
                        return None;
                    }
                    Some((
                        f[1].parse::<usize>().ok()?,
                        Tally {
                            generated: f[2].parse().ok()?,
                            with_diameter: f[3].parse().ok()?,
                            below_diameter: f[4].parse().ok()?,
                            representatives: decode_reps(f[5])?,
                        },
                    ))
                })();
                // a torn final line from an interrupted run is ignored
                if let Some((i, t)) = parsed {
                    done.insert(i, t);
                }
            }
        }
        Ok(Checkpoint {
            path,
            header,
            done,
            file: Mutex::new(None),
        })
    }

    fn record(&self, index: usize, t: &Tally) -> Result<()> {
        let mut guard = self.file.lock().unwrap();
        if guard.is_none() {
            let exists = self.path.exists();
            let mut f = fs::OpenOptions::new()
                .create(true)
                .append(true)
                .open(&self.path)?;
            if !exists {
                writeln!(f, "{}", self.header)?;
            }
            *guard = Some(f);
        }
        let f = guard.as_mut().unwrap();
        writeln!(
            f,
            "done {index} {} {} {} {}",
            t.generated,
            t.with_diameter,
            t.below_diameter,
            encode_reps(&t.representatives)
        )?;
        f.flush()?;
        Ok(())
    }
}

fn to_graph(spec: &EnumSpec, rows: &[u64]) -> BipartiteGraph {
    BipartiteGraph::from_u64_rows(spec.n2, rows)
}

/// Runs the search for `spec` and reports counts.
pub fn enumerate(spec: EnumSpec, opts: &EnumOptions) -> Result<EnumReport> {
    let start = Instant::now();
    let budget = Budget::new(opts.work_limit);
    let depth = split_depth(&spec);

    // prefixes of the split depth, in search order
    let mut prefixes: Vec<(Vec<u64>, Vec<Block>)> = Vec::new();
    let mut root = Search {
        spec,
        connected_only: opts.connected_only,
        max_reps: opts.max_representatives,
        budget: &budget,
        rows: Vec::new(),
        pending: 0,
        stopped: false,
    };
    root.run(&initial_blocks(spec.n2), depth, &mut |s, blocks| {
        prefixes.push((s.rows.clone(), blocks.to_vec()));
    });
    root.flush();

    let checkpoint = match &opts.checkpoint {
        Some(p) => Some(Checkpoint::open(
            p.clone(),
            &spec,
            opts.connected_only,
            prefixes.len(),
        )?),
        None => None,
    };

    let task = |index: usize, (rows, blocks): &(Vec<u64>, Vec<Block>)| -> Result<(Tally, bool)> {
        if let Some(t) = checkpoint.as_ref().and_then(|c| c.done.get(&index)) {
            return Ok((t.clone(), true));
        }
        let mut search = Search {
            spec,
            connected_only: opts.connected_only,
            max_reps: opts.max_representatives,
            budget: &budget,
            rows: rows.clone(),
            pending: 0,
            stopped: budget.exhausted.load(Ordering::Relaxed),
        };
        let mut tally = Tally::default();
        search.run(blocks, spec.n1, &mut |s, _| s.evaluate(&mut tally));
        search.flush();
        let complete = !search.stopped;
        if complete {
            if let Some(c) = &checkpoint {
                c.record(index, &tally)?;
            }
        }
        Ok((tally, complete))
    };

    let run_all = || -> Vec<Result<(Tally, bool)>> {
        prefixes
            .par_iter()
            .enumerate()
            .map(|(i, p)| task(i, p))
            .collect()
    };
    let results = match opts.threads {
        Some(n) => rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build()
            .map_err(|e| Error::InvalidParams(e.to_string()))?
            .install(run_all),
        None => run_all(),
    };

    let mut total = Tally::default();
    let mut complete = !root.stopped;
    for r in results {
        let (t, done) = r?;
        complete &= done;
        total.absorb(t, opts.max_representatives);
    }
    Ok(EnumReport {
        spec,
        generated: total.generated,
        with_diameter: total.with_diameter,
        below_diameter: total.below_diameter,
        representatives: total
            .representatives
            .iter()
            .map(|rows| to_graph(&spec, rows))
            .collect(),
        nodes: budget.used.load(Ordering::Relaxed),
        elapsed: start.elapsed(),
        complete,
    })
}

/// Every canonical representative for `spec`, in search order. Diameter is
/// ignored. Fails with `Incomplete` if the work limit is reached.
pub fn generate(spec: EnumSpec, opts: &EnumOptions) -> Result<Vec<BipartiteGraph>> {
    let budget = Budget::new(opts.work_limit);
    let mut search = Search {
        spec,
        connected_only: opts.connected_only,
        max_reps: 0,
        budget: &budget,
        rows: Vec::new(),
        pending: 0,
        stopped: false,
    };
    let mut out = Vec::new();
    search.run(&initial_blocks(spec.n2), spec.n1, &mut |s, _| {
        let cols = columns(&s.rows, spec.n2);
        if !s.connected_only || connected(&s.rows, &cols, spec.n2) {
            out.push(to_graph(&spec, &s.rows));
        }
    });
    search.flush();
    if search.stopped {
        return Err(Error::Incomplete(budget.used.load(Ordering::Relaxed)));
    }
    Ok(out)
}

/// Census options beyond [`EnumOptions`].
#[derive(Debug, Clone, Copy, Default)]
pub struct CensusOptions {
    /// Start from the bound without the odd-diameter improvement.
    pub from_plain_bound: bool,
}

/// Moore census: search the side sizes `(t sigma, t rho)` for `t` falling
/// from the bound until a graph of diameter `d` turns up. An incomplete
/// level does not stop the descent; its report says so.
pub fn census(
    r: u64,
    s: u64,
    d: u64,
    opts: &EnumOptions,
    copts: CensusOptions,
) -> Result<Vec<EnumReport>> {
    if r <= s || s < 2 || d < 3 {
        return Err(Error::InvalidParams(format!(
            "census needs r > s >= 2 and d >= 3, got [{r},{s};{d}]"
        )));
    }
    let p = Params::new(r, s, d)?;
    let b = bounds::best_bound(p)?;
    let top = match (&b.plain_total, copts.from_plain_bound) {
        (Some(_), true) => b.multiplier() + 1u32,
        _ => b.multiplier(),
    };
    let top = top
        .to_u64()
        .ok_or(Error::TooLarge(usize::MAX, 64))?;
    let (rho, sigma) = (p.rho(), p.sigma());
    let mut reports = Vec::new();
    for t in (1..=top).rev() {
        let (n1, n2) = ((t * sigma) as usize, (t * rho) as usize);
        if n2 < r as usize || n1 < s as usize {
            break;
        }
        let spec = EnumSpec::new(n1, n2, r as usize, s as usize, d as usize)?;
        let report = enumerate(spec, opts)?;
        let found = report.with_diameter > 0;
        reports.push(report);
        if found {
            break;
        }
    }
    Ok(reports)
}

/// True iff `g` is, up to isomorphism, the only graph with diameter `d`
/// for `spec`.
pub fn verify_uniqueness(g: &BipartiteGraph, spec: EnumSpec, opts: &EnumOptions) -> Result<bool> {
    let g = g.larger_degree_first();
    let degrees = graph::is_biregular(&g);
    if (g.n1(), g.n2()) != (spec.n1, spec.n2) || degrees != Some((spec.r, spec.s)) {
        return Err(Error::ParamMismatch(format!(
            "graph has sides ({}, {}) and degrees {degrees:?}, expected {spec}",
            g.n1(),
            g.n2()
        )));
    }
    let opts = EnumOptions {
        max_representatives: 2,
        ..opts.clone()
    };
    let report = enumerate(spec, &opts)?;
    if !report.complete {
        return Err(Error::Incomplete(report.nodes));
    }
    Ok(report.with_diameter == 1 && report.representatives[0] == graph::canonical_form(&g))
}
