//! Directed graphs, walk counting and the excess-one structure.
//!
//! A digraph is *k-geodetic* when between any ordered pair of (not
//! necessarily distinct) vertices there is at most one walk of length at
//! most `k`. The empty walk counts, so a k-geodetic digraph has no closed
//! walks of length `1..=k`. A diregular k-geodetic digraph of degree `d`
//! and order `M(d, k) + 1` leaves exactly one vertex `o(u)` unreached from
//! every `u`; `o` is the outlier function.

use std::fmt;
use std::str::FromStr;

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::arithmetic::moore_bound;
use crate::automorphism::{is_automorphism, VertexPermutation};
use crate::par::{map_ordered, Workers};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DigraphError {
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("line {line}: {source}")]
    AtLine {
        line: usize,
        #[source]
        source: Box<DigraphError>,
    },
    #[error("self-loop at vertex {vertex}")]
    SelfLoop { vertex: usize },
    #[error("arc {from} -> {to} leaves the vertex range 0..{order}")]
    OutOfRange {
        from: usize,
        to: usize,
        order: usize,
    },
    #[error("duplicate arc {from} -> {to}")]
    DuplicateArc { from: usize, to: usize },
    #[error("not an excess-one digraph: {0}")]
    NotExcessOne(ExcessOneViolation),
    #[error("outlier function is not an automorphism")]
    NotAutomorphism,
}

/// Why a digraph failed to be excess-one when an outlier map was requested.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ExcessOneViolation {
    Empty,
    NotDiregular { degree: usize },
    NotGeodetic { from: usize, to: usize },
    UnreachedCount { vertex: usize, count: usize },
    NotBijective,
}

impl fmt::Display for ExcessOneViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExcessOneViolation::Empty => write!(f, "digraph has no vertices"),
            ExcessOneViolation::NotDiregular { degree } => {
                write!(f, "not diregular of degree {degree}")
            }
            ExcessOneViolation::NotGeodetic { from, to } => {
                write!(f, "two short walks from {from} to {to}")
            }
            ExcessOneViolation::UnreachedCount { vertex, count } => {
                write!(
                    f,
                    "vertex {vertex} leaves {count} vertices unreached (expected 1)"
                )
            }
            ExcessOneViolation::NotBijective => write!(f, "outlier function is not a bijection"),
        }
    }
}

/// A simple digraph on vertices `0..n` stored as sorted out-neighbour lists.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Digraph {
    out_adj: Vec<Vec<usize>>,
}

impl Digraph {
    /// Builds a digraph from out-neighbour lists, sorting each list.
    pub fn from_out_adj(mut out_adj: Vec<Vec<usize>>) -> Result<Self, DigraphError> {
        let n = out_adj.len();
        for (u, list) in out_adj.iter_mut().enumerate() {
            list.sort_unstable();
            for (i, &v) in list.iter().enumerate() {
                if v >= n {
                    return Err(DigraphError::OutOfRange {
                        from: u,
                        to: v,
                        order: n,
                    });
                }
                if v == u {
                    return Err(DigraphError::SelfLoop { vertex: u });
                }
                if i > 0 && list[i - 1] == v {
                    return Err(DigraphError::DuplicateArc { from: u, to: v });
                }
            }
        }
        Ok(Digraph { out_adj })
    }

    pub fn from_arcs(n: usize, arcs: &[(usize, usize)]) -> Result<Self, DigraphError> {
        let mut out_adj = vec![Vec::new(); n];
        for &(u, v) in arcs {
            if u >= n {
                return Err(DigraphError::OutOfRange {
                    from: u,
                    to: v,
                    order: n,
                });
            }
            out_adj[u].push(v);
        }
        Self::from_out_adj(out_adj)
    }

    /// The directed cycle `0 -> 1 -> ... -> n-1 -> 0`.
    pub fn directed_cycle(n: usize) -> Self {
        assert!(n >= 2, "a directed cycle needs at least two vertices");
        Digraph {
            out_adj: (0..n).map(|u| vec![(u + 1) % n]).collect(),
        }
    }

    /// The complete digraph: every ordered pair of distinct vertices is an arc.
    pub fn complete(n: usize) -> Self {
        Digraph {
            out_adj: (0..n)
                .map(|u| (0..n).filter(|&v| v != u).collect())
                .collect(),
        }
    }

    pub fn order(&self) -> usize {
        self.out_adj.len()
    }

    pub fn out_neighbours(&self, u: usize) -> &[usize] {
        &self.out_adj[u]
    }

    pub fn out_degree(&self, u: usize) -> usize {
        self.out_adj[u].len()
    }

    pub fn has_arc(&self, u: usize, v: usize) -> bool {
        self.out_adj[u].binary_search(&v).is_ok()
    }

    pub fn arc_count(&self) -> usize {
        self.out_adj.iter().map(Vec::len).sum()
    }

    pub fn arcs(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.out_adj
            .iter()
            .enumerate()
            .flat_map(|(u, list)| list.iter().map(move |&v| (u, v)))
    }

    pub fn in_degrees(&self) -> Vec<usize> {
        let mut deg = vec![0; self.order()];
        for (_, v) in self.arcs() {
            deg[v] += 1;
        }
        deg
    }

    pub fn in_neighbours(&self, v: usize) -> Vec<usize> {
        self.arcs()
            .filter(|&(_, w)| w == v)
            .map(|(u, _)| u)
            .collect()
    }

    /// The subdigraph induced by `vertices`, relabelled `0..len` in the
    /// order given.
    pub fn induced(&self, vertices: &[usize]) -> Digraph {
        let mut index = vec![usize::MAX; self.order()];
        for (i, &v) in vertices.iter().enumerate() {
            index[v] = i;
        }
        let out_adj = vertices
            .iter()
            .map(|&u| {
                let mut list: Vec<usize> = self.out_adj[u]
                    .iter()
                    .filter_map(|&v| (index[v] != usize::MAX).then_some(index[v]))
                    .collect();
                list.sort_unstable();
                list
            })
            .collect();
        Digraph { out_adj }
    }

    /// Renames vertex `u` to `perm[u]`.
    pub fn relabel(&self, perm: &[usize]) -> Digraph {
        assert_eq!(perm.len(), self.order(), "relabelling has wrong length");
        let mut out_adj = vec![Vec::new(); self.order()];
        for (u, list) in self.out_adj.iter().enumerate() {
            let mut mapped: Vec<usize> = list.iter().map(|&v| perm[v]).collect();
            mapped.sort_unstable();
            out_adj[perm[u]] = mapped;
        }
        Digraph { out_adj }
    }

    /// Canonical text form; see [`load_digraph`].
    pub fn store(&self) -> String {
        self.to_string()
    }
}

impl fmt::Display for Digraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{}", self.order())?;
        for (u, list) in self.out_adj.iter().enumerate() {
            write!(f, "{u}:")?;
            for v in list {
                write!(f, " {v}")?;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}

impl FromStr for Digraph {
    type Err = DigraphError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        load_digraph(s)
    }
}

/// Parses the digraph text format.
///
/// ```text
/// # comment lines and blank lines are ignored
/// 4
/// 0: 1
/// 1: 2
/// 2: 3
/// 3: 0
/// ```
///
/// The first line holds the order `n`; then one line `u: v1 v2 ...` per
/// vertex with `u` running `0, 1, ..., n-1` in order.
pub fn load_digraph(text: &str) -> Result<Digraph, DigraphError> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));

    let (first_line, header) = lines.next().ok_or(DigraphError::Parse {
        line: 1,
        message: "missing vertex count".into(),
    })?;
    let n: usize = header.parse().map_err(|_| DigraphError::Parse {
        line: first_line,
        message: format!("expected a vertex count, found {header:?}"),
    })?;

    let mut out_adj: Vec<Vec<usize>> = Vec::with_capacity(n);
    let mut last_line = first_line;
    for (line, content) in lines {
        last_line = line;
        let at = |source: DigraphError| DigraphError::AtLine {
            line,
            source: Box::new(source),
        };
        let parse_err = |message: String| DigraphError::Parse { line, message };
        if out_adj.len() == n {
            return Err(parse_err(format!("unexpected line after {n} vertices")));
        }
        let (head, tail) = content
            .split_once(':')
            .ok_or_else(|| parse_err(format!("expected `u: neighbours`, found {content:?}")))?;
        let u: usize = head
            .trim()
            .parse()
            .map_err(|_| parse_err(format!("bad vertex index {:?}", head.trim())))?;
        if u != out_adj.len() {
            return Err(parse_err(format!(
                "expected vertex {} next, found {u}",
                out_adj.len()
            )));
        }
        let mut list = Vec::new();
        for token in tail.split_whitespace() {
            let v: usize = token
                .parse()
                .map_err(|_| parse_err(format!("bad neighbour index {token:?}")))?;
            if v >= n {
                return Err(at(DigraphError::OutOfRange {
                    from: u,
                    to: v,
                    order: n,
                }));
            }
            if v == u {
                return Err(at(DigraphError::SelfLoop { vertex: u }));
            }
            if list.contains(&v) {
                return Err(at(DigraphError::DuplicateArc { from: u, to: v }));
            }
            list.push(v);
        }
        list.sort_unstable();
        out_adj.push(list);
    }
    if out_adj.len() != n {
        return Err(DigraphError::Parse {
            line: last_line,
            message: format!("expected {n} vertex lines, found {}", out_adj.len()),
        });
    }
    Ok(Digraph { out_adj })
}

/// Number of walks of length at most `k` between every ordered pair.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WalkCountTable {
    k: usize,
    n: usize,
    counts: Vec<BigUint>,
}

impl WalkCountTable {
    pub fn horizon(&self) -> usize {
        self.k
    }

    pub fn order(&self) -> usize {
        self.n
    }

    pub fn get(&self, u: usize, v: usize) -> &BigUint {
        &self.counts[u * self.n + v]
    }

    pub fn row(&self, u: usize) -> &[BigUint] {
        &self.counts[u * self.n..(u + 1) * self.n]
    }

    /// Vertices not reachable from `u` by a walk of length at most `k`.
    pub fn unreached(&self, u: usize) -> Vec<usize> {
        self.row(u)
            .iter()
            .enumerate()
            .filter_map(|(v, c)| c.is_zero().then_some(v))
            .collect()
    }

    /// First ordered pair with more than one short walk, in row-major order.
    pub fn first_repeat(&self) -> Option<(usize, usize)> {
        let one = BigUint::one();
        self.counts
            .iter()
            .position(|c| *c > one)
            .map(|i| (i / self.n, i % self.n))
    }
}

fn walk_count_row(g: &Digraph, k: usize, u: usize) -> Vec<BigUint> {
    let n = g.order();
    let mut current = vec![BigUint::zero(); n];
    current[u] = BigUint::one();
    let mut total = current.clone();
    for _ in 0..k {
        let mut next = vec![BigUint::zero(); n];
        for (w, c) in current.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            for &v in g.out_neighbours(w) {
                next[v] += c;
            }
        }
        for (t, x) in total.iter_mut().zip(&next) {
            *t += x;
        }
        current = next;
    }
    total
}

/// Exact walk counts `Σ_{t=0..k} A^t`.
pub fn walk_counts(g: &Digraph, k: usize) -> WalkCountTable {
    walk_counts_with(g, k, Workers::default())
}

/// [`walk_counts`] with an explicit worker count; rows are computed
/// independently so the table is identical for every worker count.
pub fn walk_counts_with(g: &Digraph, k: usize, workers: Workers) -> WalkCountTable {
    let sources: Vec<usize> = (0..g.order()).collect();
    let rows = map_ordered(&sources, workers, |&u| walk_count_row(g, k, u));
    WalkCountTable {
        k,
        n: g.order(),
        counts: rows.into_iter().flatten().collect(),
    }
}

/// Two distinct walks of length at most `k` with the same endpoints.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GeodecityWitness {
    pub from: usize,
    pub to: usize,
    pub first: Vec<usize>,
    pub second: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GeodecityReport {
    pub ok: bool,
    pub witness: Option<GeodecityWitness>,
}

/// Up to `limit` walks of length at most `k` from `from` to `to`, as vertex
/// sequences, in depth-first order.
pub fn short_walks(g: &Digraph, k: usize, from: usize, to: usize, limit: usize) -> Vec<Vec<usize>> {
    fn dfs(
        g: &Digraph,
        k: usize,
        to: usize,
        path: &mut Vec<usize>,
        out: &mut Vec<Vec<usize>>,
        limit: usize,
    ) {
        if out.len() >= limit {
            return;
        }
        let last = *path.last().expect("non-empty walk");
        if last == to {
            out.push(path.clone());
        }
        if path.len() > k {
            return;
        }
        for &v in g.out_neighbours(last) {
            path.push(v);
            dfs(g, k, to, path, out, limit);
            path.pop();
            if out.len() >= limit {
                return;
            }
        }
    }
    let mut out = Vec::new();
    dfs(g, k, to, &mut vec![from], &mut out, limit);
    out
}

pub fn is_k_geodetic(g: &Digraph, k: usize) -> GeodecityReport {
    let table = walk_counts(g, k);
    geodecity_from_table(g, &table)
}

fn geodecity_from_table(g: &Digraph, table: &WalkCountTable) -> GeodecityReport {
    match table.first_repeat() {
        None => GeodecityReport {
            ok: true,
            witness: None,
        },
        Some((from, to)) => {
            let mut walks = short_walks(g, table.horizon(), from, to, 2);
            assert_eq!(walks.len(), 2, "walk counts promised a repeat");
            let second = walks.pop().expect("two walks");
            let first = walks.pop().expect("two walks");
            GeodecityReport {
                ok: false,
                witness: Some(GeodecityWitness {
                    from,
                    to,
                    first,
                    second,
                }),
            }
        }
    }
}

pub fn is_diregular(g: &Digraph, d: usize) -> bool {
    (0..g.order()).all(|u| g.out_degree(u) == d) && g.in_degrees().iter().all(|&x| x == d)
}

/// Order, Moore bound and excess of a digraph relative to `(d, k)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExcessProfile {
    pub d: u64,
    pub k: u64,
    pub order: u64,
    pub moore: BigUint,
    pub excess: BigInt,
    pub diregular: bool,
    pub geodetic: bool,
    pub is_excess_one: bool,
}

pub fn excess_profile(g: &Digraph, d: usize, k: usize) -> ExcessProfile {
    let moore = moore_bound(d as u64, k as u64);
    let excess = BigInt::from(g.order()) - BigInt::from(moore.clone());
    let diregular = is_diregular(g, d);
    let geodetic = is_k_geodetic(g, k).ok;
    ExcessProfile {
        d: d as u64,
        k: k as u64,
        order: g.order() as u64,
        is_excess_one: diregular && geodetic && excess.is_one(),
        moore,
        excess,
        diregular,
        geodetic,
    }
}

/// The outlier function `o` and its inverse.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OutlierMap {
    o: Vec<usize>,
    o_inv: Vec<usize>,
}

impl OutlierMap {
    pub fn outlier(&self, u: usize) -> usize {
        self.o[u]
    }

    pub fn inverse_outlier(&self, u: usize) -> usize {
        self.o_inv[u]
    }

    pub fn images(&self) -> &[usize] {
        &self.o
    }

    pub fn as_permutation(&self) -> VertexPermutation {
        VertexPermutation::new(self.o.clone()).expect("outlier map is a bijection")
    }

    pub fn inverse(&self) -> OutlierMap {
        OutlierMap {
            o: self.o_inv.clone(),
            o_inv: self.o.clone(),
        }
    }
}

/// Extracts the outlier function of an excess-one digraph, checking every
/// structural property on the way (diregularity, geodecity, exactly one
/// unreached vertex per row, bijectivity, automorphism).
pub fn outlier_map(g: &Digraph, k: usize) -> Result<OutlierMap, DigraphError> {
    use ExcessOneViolation as V;
    let n = g.order();
    if n == 0 {
        return Err(DigraphError::NotExcessOne(V::Empty));
    }
    let degree = g.out_degree(0);
    if !is_diregular(g, degree) {
        return Err(DigraphError::NotExcessOne(V::NotDiregular { degree }));
    }
    let table = walk_counts(g, k);
    if let Some((from, to)) = table.first_repeat() {
        return Err(DigraphError::NotExcessOne(V::NotGeodetic { from, to }));
    }
    let mut o = Vec::with_capacity(n);
    for u in 0..n {
        let unreached = table.unreached(u);
        if unreached.len() != 1 {
            return Err(DigraphError::NotExcessOne(V::UnreachedCount {
                vertex: u,
                count: unreached.len(),
            }));
        }
        o.push(unreached[0]);
    }
    let mut o_inv = vec![usize::MAX; n];
    for (u, &v) in o.iter().enumerate() {
        if o_inv[v] != usize::MAX {
            return Err(DigraphError::NotExcessOne(V::NotBijective));
        }
        o_inv[v] = u;
    }
    let map = OutlierMap { o, o_inv };
    if !is_automorphism(g, &map.as_permutation()).expect("lengths agree") {
        return Err(DigraphError::NotAutomorphism);
    }
    Ok(map)
}

/// The digraph with every arc reversed.
pub fn converse(g: &Digraph) -> Digraph {
    let mut out_adj = vec![Vec::new(); g.order()];
    for (u, v) in g.arcs() {
        out_adj[v].push(u);
    }
    for list in &mut out_adj {
        list.sort_unstable();
    }
    Digraph { out_adj }
}

/// `N⁺(u) ∩ N⁺(v)`.
pub fn common_out_neighbours(g: &Digraph, u: usize, v: usize) -> Vec<usize> {
    let (a, b) = (g.out_neighbours(u), g.out_neighbours(v));
    let (mut i, mut j) = (0, 0);
    let mut out = Vec::new();
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            std::cmp::Ordering::Less => i += 1,
            std::cmp::Ordering::Greater => j += 1,
            std::cmp::Ordering::Equal => {
                out.push(a[i]);
                i += 1;
                j += 1;
            }
        }
    }
    out
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum VertexType {
    TypeI,
    TypeII,
}

/// Type II iff the arc `o(u) -> u` exists.
pub fn vertex_type(g: &Digraph, o: &OutlierMap, u: usize) -> VertexType {
    if g.has_arc(o.outlier(u), u) {
        VertexType::TypeII
    } else {
        VertexType::TypeI
    }
}

/// `Tr(A^r)`: the number of closed walks of length `r`.
pub fn closed_walk_trace(g: &Digraph, r: usize) -> BigUint {
    assert!(r >= 1, "walk length must be positive");
    let n = g.order();
    let sources: Vec<usize> = (0..n).collect();
    map_ordered(&sources, Workers::default(), |&u| {
        let mut current = vec![BigUint::zero(); n];
        current[u] = BigUint::one();
        for _ in 0..r {
            let mut next = vec![BigUint::zero(); n];
            for (w, c) in current.iter().enumerate() {
                if c.is_zero() {
                    continue;
                }
                for &v in g.out_neighbours(w) {
                    next[v] += c;
                }
            }
            current = next;
        }
        current.swap_remove(u)
    })
    .into_iter()
    .sum()
}

/// Number of directed cycles of length `len`, each counted once (up to
/// rotation).
pub fn count_cycles_of_length(g: &Digraph, len: usize) -> u64 {
    assert!(len >= 2, "cycle length must be at least 2");
    fn extend(
        g: &Digraph,
        start: usize,
        len: usize,
        path: &mut Vec<usize>,
        on_path: &mut [bool],
    ) -> u64 {
        let last = *path.last().expect("non-empty path");
        if path.len() == len {
            return u64::from(g.has_arc(last, start));
        }
        let mut total = 0;
        for &v in g.out_neighbours(last) {
            if v > start && !on_path[v] {
                on_path[v] = true;
                path.push(v);
                total += extend(g, start, len, path, on_path);
                path.pop();
                on_path[v] = false;
            }
        }
        total
    }
    let n = g.order();
    let starts: Vec<usize> = (0..n).collect();
    map_ordered(&starts, Workers::default(), |&s| {
        let mut on_path = vec![false; n];
        on_path[s] = true;
        extend(g, s, len, &mut vec![s], &mut on_path)
    })
    .into_iter()
    .sum()
}

/// Checks `I + A + ... + A^k = J - P` entrywise.
pub fn verify_path_identity(g: &Digraph, k: usize, o: &OutlierMap) -> bool {
    let table = walk_counts(g, k);
    let one = BigUint::one();
    (0..g.order()).all(|u| {
        table.row(u).iter().enumerate().all(|(v, c)| {
            if v == o.outlier(u) {
                c.is_zero()
            } else {
                *c == one
            }
        })
    })
}
