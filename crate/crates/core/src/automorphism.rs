//! Vertex permutations, automorphism tests, fixed sets, vertex orders and
//! the cycle-type census of an outlier permutation.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::One;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

use crate::digraph::{excess_profile, Digraph};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AutomorphismError {
    #[error("permutation has length {found}, expected {expected}")]
    LengthMismatch { expected: usize, found: usize },
    #[error("images do not form a bijection on 0..{0}")]
    NotBijection(usize),
    #[error("cannot parse permutation: {0}")]
    Parse(String),
    #[error("permutation fixes vertex {vertex}")]
    FixedPoint { vertex: usize },
    #[error("permutation is not an automorphism")]
    NotAutomorphism,
}

/// A bijection on `0..n`, stored as its list of images.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct VertexPermutation {
    map: Vec<usize>,
}

impl VertexPermutation {
    pub fn new(map: Vec<usize>) -> Result<Self, AutomorphismError> {
        let n = map.len();
        let mut seen = vec![false; n];
        for &v in &map {
            if v >= n || seen[v] {
                return Err(AutomorphismError::NotBijection(n));
            }
            seen[v] = true;
        }
        Ok(VertexPermutation { map })
    }

    pub fn identity(n: usize) -> Self {
        VertexPermutation {
            map: (0..n).collect(),
        }
    }

    /// Builds a permutation of `0..n` from disjoint cycles; unlisted vertices
    /// are fixed.
    pub fn from_cycles(n: usize, cycles: &[Vec<usize>]) -> Result<Self, AutomorphismError> {
        let mut map: Vec<usize> = (0..n).collect();
        let mut used = vec![false; n];
        for cycle in cycles {
            for (i, &u) in cycle.iter().enumerate() {
                if u >= n || used[u] {
                    return Err(AutomorphismError::NotBijection(n));
                }
                used[u] = true;
                map[u] = cycle[(i + 1) % cycle.len()];
            }
        }
        Ok(VertexPermutation { map })
    }

    pub fn len(&self) -> usize {
        self.map.len()
    }

    pub fn is_empty(&self) -> bool {
        self.map.is_empty()
    }

    pub fn image(&self, u: usize) -> usize {
        self.map[u]
    }

    pub fn images(&self) -> &[usize] {
        &self.map
    }

    pub fn is_identity(&self) -> bool {
        self.map.iter().enumerate().all(|(u, &v)| u == v)
    }

    pub fn inverse(&self) -> Self {
        let mut inv = vec![0; self.len()];
        for (u, &v) in self.map.iter().enumerate() {
            inv[v] = u;
        }
        VertexPermutation { map: inv }
    }

    /// `self ∘ other`: apply `other` first.
    pub fn compose(&self, other: &Self) -> Result<Self, AutomorphismError> {
        if self.len() != other.len() {
            return Err(AutomorphismError::LengthMismatch {
                expected: self.len(),
                found: other.len(),
            });
        }
        Ok(VertexPermutation {
            map: other.map.iter().map(|&v| self.map[v]).collect(),
        })
    }

    /// `self^r`, computed cycle by cycle.
    pub fn pow(&self, r: u64) -> Self {
        let mut map = vec![0; self.len()];
        for cycle in self.cycles() {
            let len = cycle.len() as u64;
            let shift = (r % len) as usize;
            for (i, &u) in cycle.iter().enumerate() {
                map[u] = cycle[(i + shift) % cycle.len()];
            }
        }
        VertexPermutation { map }
    }

    /// Disjoint cycles, each starting at its smallest vertex, ordered by
    /// that vertex. Fixed points appear as 1-cycles.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.len()];
        let mut out = Vec::new();
        for start in 0..self.len() {
            if seen[start] {
                continue;
            }
            let mut cycle = Vec::new();
            let mut u = start;
            while !seen[u] {
                seen[u] = true;
                cycle.push(u);
                u = self.map[u];
            }
            out.push(cycle);
        }
        out
    }

    /// Order in the symmetric group: the lcm of the cycle lengths.
    pub fn order(&self) -> BigUint {
        self.cycles()
            .iter()
            .fold(BigUint::one(), |acc, c| acc.lcm(&BigUint::from(c.len())))
    }
}

/// One line of `n` space-separated images.
impl fmt::Display for VertexPermutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, v) in self.map.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{v}")?;
        }
        Ok(())
    }
}

impl FromStr for VertexPermutation {
    type Err = AutomorphismError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let map = s
            .split_whitespace()
            .map(|t| {
                t.parse::<usize>()
                    .map_err(|_| AutomorphismError::Parse(format!("bad image {t:?}")))
            })
            .collect::<Result<Vec<_>, _>>()?;
        VertexPermutation::new(map)
    }
}

impl Serialize for VertexPermutation {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for VertexPermutation {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        String::deserialize(d)?
            .parse()
            .map_err(serde::de::Error::custom)
    }
}

/// True iff `φ` maps every arc onto an arc.
pub fn is_automorphism(g: &Digraph, phi: &VertexPermutation) -> Result<bool, AutomorphismError> {
    if phi.len() != g.order() {
        return Err(AutomorphismError::LengthMismatch {
            expected: g.order(),
            found: phi.len(),
        });
    }
    Ok(g.arcs().all(|(u, v)| g.has_arc(phi.image(u), phi.image(v))))
}

pub fn fix_set(phi: &VertexPermutation) -> Vec<usize> {
    (0..phi.len()).filter(|&u| phi.image(u) == u).collect()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum FixTag {
    Null,
    TwoIsolated,
    CycleKplus2,
    SubExcessOne(usize),
    WholeGraph,
    Inconsistent,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FixClassification {
    pub tag: FixTag,
    pub fix_size: usize,
}

fn is_directed_cycle(g: &Digraph) -> bool {
    let n = g.order();
    if n < 2 || !(0..n).all(|u| g.out_degree(u) == 1) {
        return false;
    }
    let mut u = 0;
    for step in 1..=n {
        u = g.out_neighbours(u)[0];
        if u == 0 {
            return step == n;
        }
    }
    false
}

/// Classifies the subdigraph induced by the vertices `φ` fixes.
pub fn classify_fix_subdigraph(
    g: &Digraph,
    k: usize,
    phi: &VertexPermutation,
) -> Result<FixClassification, AutomorphismError> {
    if !is_automorphism(g, phi)? {
        return Err(AutomorphismError::NotAutomorphism);
    }
    let fixed = fix_set(phi);
    let fix_size = fixed.len();
    let sub = g.induced(&fixed);
    let tag = if fix_size == g.order() {
        FixTag::WholeGraph
    } else if fix_size == 0 {
        FixTag::Null
    } else if fix_size == 2 && sub.arc_count() == 0 {
        FixTag::TwoIsolated
    } else if fix_size == k + 2 && is_directed_cycle(&sub) {
        FixTag::CycleKplus2
    } else {
        let d_sub = sub.out_degree(0);
        if d_sub >= 1 && excess_profile(&sub, d_sub, k).is_excess_one {
            FixTag::SubExcessOne(d_sub)
        } else {
            FixTag::Inconsistent
        }
    };
    Ok(FixClassification { tag, fix_size })
}

/// Census `j ↦ m_j` of cycle lengths.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct PermutationVector {
    m: BTreeMap<u64, u64>,
}

impl PermutationVector {
    /// Zero entries are dropped.
    pub fn new(m: BTreeMap<u64, u64>) -> Self {
        PermutationVector {
            m: m.into_iter().filter(|&(j, c)| j >= 1 && c > 0).collect(),
        }
    }

    pub fn from_pairs(pairs: &[(u64, u64)]) -> Self {
        let mut m = BTreeMap::new();
        for &(j, c) in pairs {
            *m.entry(j).or_insert(0) += c;
        }
        Self::new(m)
    }

    pub fn get(&self, j: u64) -> u64 {
        self.m.get(&j).copied().unwrap_or(0)
    }

    /// `(j, m_j)` with `m_j > 0`, ascending in `j`.
    pub fn iter(&self) -> impl Iterator<Item = (u64, u64)> + '_ {
        self.m.iter().map(|(&j, &c)| (j, c))
    }

    /// `Σ j·m_j`.
    pub fn order(&self) -> u64 {
        self.iter().map(|(j, c)| j * c).sum()
    }

    pub fn cycle_count(&self) -> u64 {
        self.m.values().sum()
    }

    pub fn min_length(&self) -> Option<u64> {
        self.m.keys().next().copied()
    }

    /// A permutation with this cycle type: cycles of ascending length laid
    /// out on consecutive vertices.
    pub fn realize(&self) -> VertexPermutation {
        let n = self.order() as usize;
        let mut cycles = Vec::new();
        let mut next = 0;
        for (j, c) in self.iter() {
            for _ in 0..c {
                cycles.push((next..next + j as usize).collect());
                next += j as usize;
            }
        }
        VertexPermutation::from_cycles(n, &cycles).expect("disjoint cycles")
    }
}

/// `"j:m_j"` pairs sorted by `j`, separated by spaces.
impl fmt::Display for PermutationVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, (j, c)) in self.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{j}:{c}")?;
        }
        Ok(())
    }
}

impl FromStr for PermutationVector {
    type Err = AutomorphismError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let mut pairs = Vec::new();
        for token in s
            .split(|c: char| c.is_whitespace() || c == ',')
            .filter(|t| !t.is_empty())
        {
            let bad = || AutomorphismError::Parse(format!("expected `j:m`, found {token:?}"));
            let (j, c) = token.split_once(':').ok_or_else(bad)?;
            let j: u64 = j.parse().map_err(|_| bad())?;
            let c: u64 = c.parse().map_err(|_| bad())?;
            if j == 0 {
                return Err(bad());
            }
            pairs.push((j, c));
        }
        Ok(Self::from_pairs(&pairs))
    }
}

impl Serialize for PermutationVector {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for PermutationVector {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        String::deserialize(d)?
            .parse()
            .map_err(serde::de::Error::custom)
    }
}

pub fn permutation_vector(phi: &VertexPermutation) -> PermutationVector {
    let mut m = BTreeMap::new();
    for c in phi.cycles() {
        *m.entry(c.len() as u64).or_insert(0) += 1;
    }
    PermutationVector::new(m)
}

/// `(m′(j), m″(j), m(j))`: numbers of odd, even and all cycles whose length
/// is divisible by `j`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MStats {
    pub odd: u64,
    pub even: u64,
    pub total: u64,
}

pub fn m_stats(pv: &PermutationVector, j: u64) -> MStats {
    assert!(j >= 1, "divisor must be positive");
    let (mut odd, mut even) = (0, 0);
    for (len, c) in pv.iter() {
        if len % j == 0 {
            if len % 2 == 1 {
                odd += c;
            } else {
                even += c;
            }
        }
    }
    MStats {
        odd,
        even,
        total: odd + even,
    }
}

/// `ω(u)`: the length of the cycle through `u`.
pub fn vertex_order(phi: &VertexPermutation, u: usize) -> usize {
    let mut v = phi.image(u);
    let mut len = 1;
    while v != u {
        v = phi.image(v);
        len += 1;
    }
    len
}

/// The smallest vertex order (1 for a permutation with a fixed point, 0 on
/// the empty set).
pub fn index(phi: &VertexPermutation) -> usize {
    phi.cycles().iter().map(Vec::len).min().unwrap_or(0)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum OutlierTag {
    OutlierRegular(u64),
    TypeA,
    TypeB,
    Other,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OutlierStructure {
    pub tag: OutlierTag,
    pub index: u64,
}

/// Outlier-regular, Type A candidate, Type B or other, judged from the cycle
/// type alone. Whether the minimal-order vertices of a Type A candidate
/// really induce a directed `(k+2)`-cycle needs the digraph and is left to
/// the caller.
pub fn classify_outlier_structure(
    o: &VertexPermutation,
    k: usize,
) -> Result<OutlierStructure, AutomorphismError> {
    if let Some(vertex) = (0..o.len()).find(|&u| o.image(u) == u) {
        return Err(AutomorphismError::FixedPoint { vertex });
    }
    Ok(classify_cycle_type(&permutation_vector(o), k as u64))
}

/// [`classify_outlier_structure`] on a bare cycle type with no fixed points.
pub fn classify_cycle_type(pv: &PermutationVector, k: u64) -> OutlierStructure {
    let index = pv.min_length().unwrap_or(0);
    let tag = if pv.m.len() == 1 {
        OutlierTag::OutlierRegular(index)
    } else if pv.get(2) == 1 {
        OutlierTag::TypeB
    } else if index == k + 2 && pv.get(k + 2) == 1 {
        OutlierTag::TypeA
    } else {
        OutlierTag::Other
    };
    OutlierStructure { tag, index }
}

/// True iff along every path `u₀ … u_r` with `2 ≤ r ≤ k`, each interior
/// vertex order divides `lcm(ω(u₀), ω(u_r))`.
pub fn check_path_order_divisibility(g: &Digraph, k: usize, o: &VertexPermutation) -> bool {
    let n = g.order();
    let orders: Vec<u64> = (0..n).map(|u| vertex_order(o, u) as u64).collect();

    fn dfs(
        g: &Digraph,
        k: usize,
        orders: &[u64],
        path: &mut Vec<usize>,
        on_path: &mut [bool],
    ) -> bool {
        let last = *path.last().expect("non-empty path");
        if path.len() >= 3 {
            let l = orders[path[0]].lcm(&orders[last]);
            if path[1..path.len() - 1]
                .iter()
                .any(|&w| !l.is_multiple_of(orders[w]))
            {
                return false;
            }
        }
        if path.len() > k {
            return true;
        }
        for &v in g.out_neighbours(last) {
            if on_path[v] {
                continue;
            }
            on_path[v] = true;
            path.push(v);
            let ok = dfs(g, k, orders, path, on_path);
            path.pop();
            on_path[v] = false;
            if !ok {
                return false;
            }
        }
        true
    }

    (0..n).all(|u| {
        let mut on_path = vec![false; n];
        on_path[u] = true;
        dfs(g, k, &orders, &mut vec![u], &mut on_path)
    })
}
