//! Exhaustive search for `(d,k;+1)`-digraphs at small order.
//!
//! Out-neighbour sets are assigned to vertices `0, 1, …, n-1` in turn. A
//! branch is cut as soon as the partial digraph has two distinct walks of
//! length at most `k` between some pair of vertices (checked with bitset
//! Moore trees from every source that can reach the current vertex), or an
//! in-degree would exceed `d`. Unprocessed vertices with the same set of
//! in-neighbours are interchangeable, so from each such class only an
//! initial run of labels may be chosen; this subsumes first-use label order
//! and fixes `N⁺(0) = {1..d}`.
//!
//! Two optional structural rules prune further:
//!
//! * transposition rule: vertices with equal out-neighbourhoods are swapped
//!   by the outlier function, so no three vertices share an out-neighbourhood
//!   and two that do cannot reach each other within `k` steps;
//! * common-out-neighbour rule (`d = 3` only): distinct vertices share at
//!   most one out-neighbour.
//!
//! The tree is cut at a fixed depth into subtree tasks that run in parallel
//! and are recorded in an optional checkpoint as they finish. Complete
//! assignments are deduplicated by [`canonical_form`].

mod canonical;
pub mod checkpoint;

use std::collections::BTreeMap;
use std::path::PathBuf;
use std::sync::atomic::{AtomicBool, AtomicU64, Ordering};
use std::sync::Mutex;
use std::time::{Duration, Instant};

pub use canonical::{canonical_form, canonical_graph};
use checkpoint::{digraph_of, Checkpoint, CheckpointError, CheckpointHeader, TaskRecord};

use crate::arithmetic::moore_bound;
use crate::digraph::{excess_profile, outlier_map, verify_path_identity, Digraph};
use crate::par::{map_ordered, Workers};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SearchConfig {
    pub d: u64,
    pub k: u64,
    /// Stop once this many nodes have been explored.
    pub node_budget: Option<u64>,
    pub workers: Workers,
    /// Where completed tasks are recorded.
    pub checkpoint: Option<PathBuf>,
    /// Continue from the tasks already recorded in `checkpoint`.
    pub resume: bool,
    /// Run at most this many pending tasks in this session.
    pub max_tasks: Option<usize>,
    pub common_out_rule: bool,
    pub transposition_rule: bool,
    /// Number of vertices assigned before the tree is split into tasks.
    pub prefix_depth: usize,
}

impl SearchConfig {
    pub fn new(d: u64, k: u64) -> Self {
        SearchConfig {
            d,
            k,
            node_budget: None,
            workers: Workers::default(),
            checkpoint: None,
            resume: false,
            max_tasks: None,
            common_out_rule: true,
            transposition_rule: true,
            prefix_depth: 6,
        }
    }

    fn flags(&self, mode: Mode) -> u32 {
        let on = |rule: bool| u32::from(rule && mode.excess_one);
        on(self.common_out_rule)
            | on(self.transposition_rule) << 1
            | u32::from(!mode.excess_one) << 2
    }
}

#[derive(Clone, Debug)]
pub struct SearchResult {
    pub exhausted: bool,
    /// Pairwise non-isomorphic, each in canonical labelling, sorted by
    /// canonical form.
    pub found: Vec<Digraph>,
    pub nodes: u64,
    pub wall_time: Duration,
    pub tasks_total: u64,
    pub tasks_completed: u64,
}

/// Equality ignores wall time.
impl PartialEq for SearchResult {
    fn eq(&self, other: &Self) -> bool {
        self.exhausted == other.exhausted
            && self.found == other.found
            && self.nodes == other.nodes
            && self.tasks_total == other.tasks_total
            && self.tasks_completed == other.tasks_completed
    }
}

#[derive(Debug, thiserror::Error)]
pub enum SearchError {
    #[error("invalid search parameters: {0}")]
    InvalidConfig(String),
    #[error(transparent)]
    Checkpoint(#[from] CheckpointError),
    #[error("checkpoint does not match this search: {0}")]
    CheckpointMismatch(String),
}

#[derive(Clone, Copy)]
struct Mode {
    /// Target order is `M(d,k)+1`, so the structural rules apply.
    excess_one: bool,
    /// Break label symmetry among interchangeable vertices.
    symmetry: bool,
}

#[derive(Clone)]
struct State {
    n: usize,
    d: u32,
    k: usize,
    out: Vec<u64>,
    inb: Vec<u64>,
    indeg: Vec<u32>,
    common_out: bool,
    transposition: bool,
    symmetry: bool,
    /// Pairs `(v, u)`, `v < u`, with equal out-neighbourhoods.
    twins: Vec<(usize, usize)>,
}

impl State {
    fn new(n: usize, cfg: &SearchConfig, mode: Mode) -> Self {
        State {
            n,
            d: cfg.d as u32,
            k: cfg.k as usize,
            out: vec![0; n],
            inb: vec![0; n],
            indeg: vec![0; n],
            common_out: mode.excess_one && cfg.common_out_rule && cfg.d == 3 && cfg.k >= 2,
            transposition: mode.excess_one && cfg.transposition_rule,
            symmetry: mode.symmetry,
            twins: Vec::new(),
        }
    }

    /// Out-sets for vertex `u` allowed by label symmetry and in-degrees.
    fn candidates(&self, u: usize) -> Vec<u64> {
        let mut groups: Vec<Vec<usize>> = (0..u)
            .filter(|&v| self.indeg[v] < self.d)
            .map(|v| vec![v])
            .collect();
        let mut by_in: BTreeMap<u64, usize> = BTreeMap::new();
        for v in u + 1..self.n {
            if self.indeg[v] >= self.d {
                continue;
            }
            if !self.symmetry {
                groups.push(vec![v]);
                continue;
            }
            match by_in.get(&self.inb[v]) {
                Some(&g) => groups[g].push(v),
                None => {
                    by_in.insert(self.inb[v], groups.len());
                    groups.push(vec![v]);
                }
            }
        }
        let mut out = Vec::new();
        choose(&groups, 0, self.d as usize, 0, &mut out);
        out
    }

    fn admissible(&self, u: usize, set: u64) -> bool {
        if self.common_out && (0..u).any(|v| (self.out[v] & set).count_ones() > 1) {
            return false;
        }
        if self.transposition && (0..u).filter(|&v| self.out[v] == set).count() > 1 {
            return false;
        }
        true
    }

    fn assign(&mut self, u: usize, set: u64) {
        self.out[u] = set;
        for v in bits(set) {
            self.indeg[v] += 1;
            self.inb[v] |= 1 << u;
        }
        if self.transposition {
            if let Some(v) = (0..u).find(|&v| self.out[v] == set) {
                self.twins.push((v, u));
            }
        }
    }

    fn unassign(&mut self, u: usize) {
        let set = self.out[u];
        for v in bits(set) {
            self.indeg[v] -= 1;
            self.inb[v] &= !(1 << u);
        }
        if self.twins.last().is_some_and(|&(_, w)| w == u) {
            self.twins.pop();
        }
        self.out[u] = 0;
    }

    /// True iff no vertex is reached twice within `k` steps from `s`.
    fn tree_from(&self, s: usize) -> bool {
        let mut seen = 1u64 << s;
        let mut frontier = seen;
        for _ in 0..self.k {
            let mut next = 0u64;
            for w in bits(frontier) {
                let o = self.out[w];
                if o & (seen | next) != 0 {
                    return false;
                }
                next |= o;
            }
            if next == 0 {
                break;
            }
            seen |= next;
            frontier = next;
        }
        true
    }

    fn ball(&self, s: usize) -> u64 {
        let mut seen = 1u64 << s;
        let mut frontier = seen;
        for _ in 0..self.k {
            let next = bits(frontier).fold(0, |acc, w| acc | self.out[w]) & !seen;
            seen |= next;
            frontier = next;
        }
        seen
    }

    /// Checks everything the assignment of vertex `u` can have broken.
    fn consistent_after(&self, u: usize) -> bool {
        let mut reach_u = 1u64 << u;
        let mut frontier = reach_u;
        for _ in 1..self.k {
            frontier = bits(frontier).fold(0, |acc, w| acc | self.inb[w]) & !reach_u;
            reach_u |= frontier;
        }
        if !bits(reach_u).all(|s| self.tree_from(s)) {
            return false;
        }
        self.twins
            .iter()
            .all(|&(a, b)| self.ball(a) >> b & 1 == 0 && self.ball(b) >> a & 1 == 0)
    }
}

fn bits(mut x: u64) -> impl Iterator<Item = usize> {
    std::iter::from_fn(move || {
        (x != 0).then(|| {
            let i = x.trailing_zeros() as usize;
            x &= x - 1;
            i
        })
    })
}

/// All ways to take `r` labels, using an initial run from each group.
fn choose(groups: &[Vec<usize>], g: usize, r: usize, acc: u64, out: &mut Vec<u64>) {
    if r == 0 {
        out.push(acc);
        return;
    }
    if g == groups.len() {
        return;
    }
    let room: usize = groups[g..].iter().map(Vec::len).sum();
    if room < r {
        return;
    }
    let mut set = acc;
    choose(groups, g + 1, r, set, out);
    for &v in groups[g].iter().take(r) {
        set |= 1 << v;
        let taken = (set & !acc).count_ones() as usize;
        choose(groups, g + 1, r - taken, set, out);
    }
}

/// Shared counters for one search session.
struct Progress {
    nodes: AtomicU64,
    budget: Option<u64>,
    stop: AtomicBool,
}

impl Progress {
    const FLUSH: u64 = 256;

    fn add(&self, local: u64) {
        let total = self.nodes.fetch_add(local, Ordering::Relaxed) + local;
        if self.budget.is_some_and(|b| total >= b) {
            self.stop.store(true, Ordering::Relaxed);
        }
    }
}

struct Walker<'a> {
    state: State,
    progress: &'a Progress,
    pending: u64,
    nodes: u64,
    found: BTreeMap<Vec<u8>, Digraph>,
    aborted: bool,
}

impl Walker<'_> {
    fn tick(&mut self) -> bool {
        self.nodes += 1;
        self.pending += 1;
        if self.pending == Progress::FLUSH {
            self.progress.add(self.pending);
            self.pending = 0;
        }
        if self.progress.stop.load(Ordering::Relaxed) {
            self.aborted = true;
        }
        !self.aborted
    }

    fn flush(&mut self) {
        self.progress.add(self.pending);
        self.pending = 0;
    }

    fn dfs(&mut self, u: usize) {
        if u == self.state.n {
            let g = digraph_of(&self.state.out).expect("assignment is a simple digraph");
            let c = canonical_graph(&g);
            self.found.entry(canonical_form(&c)).or_insert(c);
            return;
        }
        for set in self.state.candidates(u) {
            if !self.state.admissible(u, set) {
                continue;
            }
            self.state.assign(u, set);
            if self.state.consistent_after(u) {
                if !self.tick() {
                    self.state.unassign(u);
                    return;
                }
                self.dfs(u + 1);
            }
            self.state.unassign(u);
            if self.aborted {
                return;
            }
        }
    }
}

/// Enumerates the admissible assignments of vertices `0..depth`.
fn split(
    state: &mut State,
    u: usize,
    depth: usize,
    prefix: &mut Vec<u64>,
    tasks: &mut Vec<Vec<u64>>,
    nodes: &mut u64,
) {
    if u == depth {
        tasks.push(prefix.clone());
        return;
    }
    for set in state.candidates(u) {
        if !state.admissible(u, set) {
            continue;
        }
        state.assign(u, set);
        if state.consistent_after(u) {
            *nodes += 1;
            prefix.push(set);
            split(state, u + 1, depth, prefix, tasks, nodes);
            prefix.pop();
        }
        state.unassign(u);
    }
}

fn order_for(d: u64, k: u64) -> Result<usize, SearchError> {
    if d == 0 || k == 0 {
        return Err(SearchError::InvalidConfig(
            "d and k must be at least 1".into(),
        ));
    }
    let n = moore_bound(d, k) + 1u32;
    match u64::try_from(&n) {
        Ok(n) if n <= 64 => Ok(n as usize),
        _ => Err(SearchError::InvalidConfig(format!(
            "order M({d},{k})+1 = {n} exceeds the supported 64 vertices"
        ))),
    }
}

fn check_result(g: &Digraph, d: usize, k: usize) {
    assert!(
        excess_profile(g, d, k).is_excess_one,
        "search produced a digraph without excess one"
    );
    let o = outlier_map(g, k).expect("excess-one digraphs have an outlier automorphism");
    assert!(verify_path_identity(g, k, &o));
}

fn restore(
    cfg: &SearchConfig,
    header: &CheckpointHeader,
    tasks: &[Vec<u64>],
) -> Result<Checkpoint, SearchError> {
    let path = cfg
        .checkpoint
        .as_ref()
        .ok_or_else(|| SearchError::InvalidConfig("resuming needs a checkpoint path".into()))?;
    let ck = Checkpoint::load(path)?;
    let h = &ck.header;
    let mismatch = |what: &str, have: u64, want: u64| {
        Err(SearchError::CheckpointMismatch(format!(
            "{what} is {have}, expected {want}"
        )))
    };
    for (what, have, want) in [
        ("d", h.d as u64, header.d as u64),
        ("k", h.k as u64, header.k as u64),
        (
            "prefix depth",
            h.prefix_depth as u64,
            header.prefix_depth as u64,
        ),
        ("pruning flags", h.flags as u64, header.flags as u64),
        ("task count", h.task_count, header.task_count),
        ("split node count", h.base_nodes, header.base_nodes),
    ] {
        if have != want {
            return mismatch(what, have, want);
        }
    }
    for r in &ck.records {
        let expected = tasks.get(r.index as usize).ok_or_else(|| {
            SearchError::CheckpointMismatch(format!("task index {} out of range", r.index))
        })?;
        if *expected != r.prefix {
            return Err(SearchError::CheckpointMismatch(format!(
                "task {} has a different prefix",
                r.index
            )));
        }
    }
    Ok(ck)
}

/// Runs (or resumes) the exhaustive search described by `cfg`.
pub fn search_excess_one(cfg: &SearchConfig) -> Result<SearchResult, SearchError> {
    let n = order_for(cfg.d, cfg.k)?;
    let result = run(
        cfg,
        n,
        Mode {
            excess_one: true,
            symmetry: true,
        },
    )?;
    for g in &result.found {
        check_result(g, cfg.d as usize, cfg.k as usize);
    }
    Ok(result)
}

/// Every `d`-diregular `k`-geodetic digraph of order `n` up to isomorphism.
/// The structural pruning rules hold only at order `M(d,k)+1` and are
/// ignored here.
pub fn search_geodetic(cfg: &SearchConfig, n: usize) -> Result<SearchResult, SearchError> {
    if cfg.d == 0 || cfg.k == 0 || n > 64 {
        return Err(SearchError::InvalidConfig(
            "need d, k ≥ 1 and at most 64 vertices".into(),
        ));
    }
    run(
        cfg,
        n,
        Mode {
            excess_one: false,
            symmetry: true,
        },
    )
}

fn run(cfg: &SearchConfig, n: usize, mode: Mode) -> Result<SearchResult, SearchError> {
    let start = Instant::now();
    let depth = cfg.prefix_depth.min(n);

    let mut root = State::new(n, cfg, mode);
    let mut tasks = Vec::new();
    let mut base_nodes = 0u64;
    split(
        &mut root,
        0,
        depth,
        &mut Vec::new(),
        &mut tasks,
        &mut base_nodes,
    );

    let header = CheckpointHeader {
        d: cfg.d as u32,
        k: cfg.k as u32,
        prefix_depth: depth as u32,
        flags: cfg.flags(mode) | (n as u32) << 8,
        task_count: tasks.len() as u64,
        base_nodes,
    };
    let ck = if cfg.resume {
        restore(cfg, &header, &tasks)?
    } else {
        Checkpoint {
            header,
            records: Vec::new(),
        }
    };
    if let Some(path) = &cfg.checkpoint {
        ck.save(path)?;
    }

    let mut done = vec![false; tasks.len()];
    for r in &ck.records {
        done[r.index as usize] = true;
    }
    let mut pending: Vec<usize> = (0..tasks.len()).filter(|&i| !done[i]).collect();
    if let Some(limit) = cfg.max_tasks {
        pending.truncate(limit);
    }

    let progress = Progress {
        nodes: AtomicU64::new(base_nodes + ck.records.iter().map(|r| r.nodes).sum::<u64>()),
        budget: cfg.node_budget,
        stop: AtomicBool::new(false),
    };
    let progress_start = progress.nodes.load(Ordering::Relaxed);
    if cfg.node_budget.is_some_and(|b| progress_start >= b) {
        progress.stop.store(true, Ordering::Relaxed);
    }
    let sink = Mutex::new(ck);
    let io_error: Mutex<Option<CheckpointError>> = Mutex::new(None);

    let outcomes = map_ordered(&pending, cfg.workers, |&index| {
        let mut state = State::new(n, cfg, mode);
        for (u, &set) in tasks[index].iter().enumerate() {
            state.assign(u, set);
        }
        let mut walker = Walker {
            state,
            progress: &progress,
            pending: 0,
            nodes: 0,
            found: BTreeMap::new(),
            aborted: progress.stop.load(Ordering::Relaxed),
        };
        if !walker.aborted {
            walker.dfs(depth);
        }
        walker.flush();
        let complete = !walker.aborted;
        let found: Vec<Digraph> = walker.found.into_values().collect();
        if complete {
            if let Some(path) = &cfg.checkpoint {
                let mut ck = sink.lock().expect("checkpoint lock");
                ck.records.push(TaskRecord {
                    index: index as u64,
                    prefix: tasks[index].clone(),
                    nodes: walker.nodes,
                    found: found.clone(),
                });
                if let Err(e) = ck.save(path) {
                    io_error.lock().expect("error lock").get_or_insert(e);
                }
            }
        }
        (complete, walker.nodes, found)
    });
    if let Some(e) = io_error.into_inner().expect("error lock") {
        return Err(e.into());
    }

    let ck = sink.into_inner().expect("checkpoint lock");
    let mut nodes = base_nodes;
    let mut completed = 0u64;
    let mut found: BTreeMap<Vec<u8>, Digraph> = BTreeMap::new();
    let mut add = |graphs: Vec<Digraph>| {
        for g in graphs {
            found.entry(canonical_form(&g)).or_insert(g);
        }
    };
    for r in ck.records.into_iter().filter(|r| done[r.index as usize]) {
        nodes += r.nodes;
        completed += 1;
        add(r.found);
    }
    for (complete, task_nodes, graphs) in outcomes {
        nodes += task_nodes;
        if complete {
            completed += 1;
            add(graphs);
        }
    }

    let found: Vec<Digraph> = found.into_values().collect();
    Ok(SearchResult {
        exhausted: completed == tasks.len() as u64,
        found,
        nodes,
        wall_time: start.elapsed(),
        tasks_total: tasks.len() as u64,
        tasks_completed: completed,
    })
}
