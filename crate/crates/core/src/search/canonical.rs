//! Canonical labelling of digraphs by colour refinement and
//! individualisation.
//!
//! Refinement splits vertices by their colour together with the multisets
//! of out- and in-neighbour colours, ranking the resulting signatures so
//! that colours never depend on the input labels. When refinement stalls
//! short of a discrete partition, each vertex of the first non-singleton
//! cell is individualised in turn and the search recurses; the smallest
//! adjacency encoding over all leaves is the canonical form.

use crate::digraph::Digraph;

type Colouring = Vec<u32>;

/// Re-ranks `keys` densely in sorted order.
fn rank<K: Ord + Clone>(keys: &[K]) -> Colouring {
    let mut sorted: Vec<K> = keys.to_vec();
    sorted.sort();
    sorted.dedup();
    keys.iter()
        .map(|k| sorted.binary_search(k).expect("key present") as u32)
        .collect()
}

fn cell_count(c: &Colouring) -> usize {
    let mut seen = c.clone();
    seen.sort_unstable();
    seen.dedup();
    seen.len()
}

fn refine(g: &Digraph, in_adj: &[Vec<usize>], mut colours: Colouring) -> Colouring {
    let mut cells = cell_count(&colours);
    loop {
        let signatures: Vec<(u32, Vec<u32>, Vec<u32>)> = (0..g.order())
            .map(|v| {
                let mut outs: Vec<u32> = g.out_neighbours(v).iter().map(|&w| colours[w]).collect();
                let mut ins: Vec<u32> = in_adj[v].iter().map(|&w| colours[w]).collect();
                outs.sort_unstable();
                ins.sort_unstable();
                (colours[v], outs, ins)
            })
            .collect();
        let next = rank(&signatures);
        let next_cells = cell_count(&next);
        colours = next;
        if next_cells == cells {
            return colours;
        }
        cells = next_cells;
    }
}

/// Adjacency matrix rows in the order given by a discrete colouring,
/// packed into bytes.
fn encode(g: &Digraph, colours: &Colouring) -> Vec<u8> {
    let n = g.order();
    let mut order = vec![0usize; n];
    for (v, &c) in colours.iter().enumerate() {
        order[c as usize] = v;
    }
    let mut bits = Vec::with_capacity(n * n);
    for &u in &order {
        for &v in &order {
            bits.push(g.has_arc(u, v));
        }
    }
    let mut out = (n as u32).to_le_bytes().to_vec();
    out.extend(bits.chunks(8).map(|chunk| {
        chunk
            .iter()
            .enumerate()
            .fold(0u8, |acc, (i, &b)| acc | (u8::from(b) << (7 - i)))
    }));
    out
}

fn search(
    g: &Digraph,
    in_adj: &[Vec<usize>],
    colours: Colouring,
    best: &mut Option<(Vec<u8>, Colouring)>,
) {
    let n = g.order();
    if cell_count(&colours) == n {
        let form = encode(g, &colours);
        if best.as_ref().is_none_or(|(b, _)| form < *b) {
            *best = Some((form, colours));
        }
        return;
    }
    let mut sizes = vec![0usize; n];
    for &c in &colours {
        sizes[c as usize] += 1;
    }
    let target = (0..n)
        .find(|&c| sizes[c] > 1)
        .expect("non-discrete colouring") as u32;
    for v in (0..n).filter(|&v| colours[v] == target) {
        let split: Colouring = colours
            .iter()
            .enumerate()
            .map(|(w, &c)| if w == v { 2 * c } else { 2 * c + 1 })
            .collect();
        let refined = refine(g, in_adj, rank(&split));
        search(g, in_adj, refined, best);
    }
}

/// `(form, labelling)` where `labelling[v]` is the canonical position of `v`.
fn canonical(g: &Digraph) -> (Vec<u8>, Vec<usize>) {
    let n = g.order();
    if n == 0 {
        return (0u32.to_le_bytes().to_vec(), Vec::new());
    }
    let mut in_adj = vec![Vec::new(); n];
    for (u, v) in g.arcs() {
        in_adj[v].push(u);
    }
    let start = refine(g, &in_adj, vec![0; n]);
    let mut best = None;
    search(g, &in_adj, start, &mut best);
    let (form, colours) = best.expect("at least one leaf");
    (form, colours.into_iter().map(|c| c as usize).collect())
}

/// Byte string equal for two digraphs iff they are isomorphic.
pub fn canonical_form(g: &Digraph) -> Vec<u8> {
    canonical(g).0
}

/// `g` relabelled into its canonical vertex order.
pub fn canonical_graph(g: &Digraph) -> Digraph {
    let (_, labelling) = canonical(g);
    g.relabel(&labelling)
}
