//! Exact induced-subgraph censuses on 3 and 4 nodes.

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::graph::{binomial, Graph};

/// Names of the 3-node classes: empty, one edge, two-edge path, triangle.
pub const MOTIF3_NAMES: [&str; 4] = ["H0", "H1", "H2", "H3"];

/// Names of the 4-node classes in canonical order.
///
/// F0 empty, F1 one edge, F2 two disjoint edges, F3 path on three nodes plus
/// an isolated node, F4 path on four nodes, F5 triangle plus an isolated
/// node, F6 claw, F7 four-cycle, F8 paw, F9 diamond, F10 K4.
pub const MOTIF4_NAMES: [&str; 11] = ["F0", "F1", "F2", "F3", "F4", "F5", "F6", "F7", "F8", "F9", "F10"];

/// Edge count of each 4-node class.
pub const MOTIF4_EDGES: [u64; 11] = [0, 1, 2, 2, 3, 3, 3, 4, 4, 5, 6];

/// Class of the complement of each 4-node class.
pub const MOTIF4_COMPLEMENT: [usize; 11] = [10, 9, 7, 8, 4, 6, 5, 2, 3, 1, 0];

/// Induced 3-node census, indexed H0..H3.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Profile3(pub [u64; 4]);

/// Induced 4-node census, indexed F0..F10.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Profile4(pub [u64; 11]);

impl Profile3 {
    pub fn counts(&self) -> &[u64; 4] {
        &self.0
    }

    pub fn total(&self) -> u64 {
        self.0.iter().sum()
    }
}

impl Profile4 {
    pub fn counts(&self) -> &[u64; 11] {
        &self.0
    }

    pub fn total(&self) -> u64 {
        self.0.iter().sum()
    }

    /// `Σ e(F_k) · count_k`; equals `|E| · C(n-2, 2)`.
    pub fn edge_weighted_total(&self) -> u64 {
        self.0.iter().zip(MOTIF4_EDGES).map(|(c, e)| c * e).sum()
    }

    /// The profile of the complement graph, obtained by relabelling classes.
    pub fn complemented(&self) -> Profile4 {
        let mut out = [0; 11];
        for (k, &c) in self.0.iter().enumerate() {
            out[MOTIF4_COMPLEMENT[k]] = c;
        }
        Profile4(out)
    }
}

/// Adjacency matrix as packed rows of 64-bit words.
pub(crate) struct BitRows {
    words: usize,
    bits: Vec<u64>,
}

impl BitRows {
    pub(crate) fn new(g: &Graph) -> Self {
        let n = g.node_count();
        let words = n.div_ceil(64).max(1);
        let mut bits = vec![0u64; n * words];
        for e in g.edges() {
            bits[e.u * words + e.v / 64] |= 1 << (e.v % 64);
            bits[e.v * words + e.u / 64] |= 1 << (e.u % 64);
        }
        Self { words, bits }
    }

    pub(crate) fn row(&self, v: usize) -> &[u64] {
        &self.bits[v * self.words..(v + 1) * self.words]
    }

    pub(crate) fn contains(&self, u: usize, v: usize) -> bool {
        self.bits[u * self.words + v / 64] >> (v % 64) & 1 == 1
    }
}

fn triangle_count(g: &Graph, rows: &BitRows) -> u64 {
    let mut closed = 0u64;
    for e in g.edges() {
        closed += rows
            .row(e.u)
            .iter()
            .zip(rows.row(e.v))
            .map(|(a, b)| (a & b).count_ones() as u64)
            .sum::<u64>();
    }
    closed / 3
}

/// 3-profile from `(n, |E|, wedges, triangles)`.
pub fn profile3(g: &Graph) -> Result<Profile3> {
    let n = g.node_count();
    if n < 3 {
        return Err(Error::GraphTooSmall { required: 3, actual: n });
    }
    let m = g.edge_count() as u64;
    let rows = BitRows::new(g);
    let triangles = triangle_count(g, &rows);
    let wedges: u64 = g.degrees().iter().map(|&d| binomial(d, 2)).sum();
    let paths = wedges - 3 * triangles;
    // Each edge lies in n - 2 triples: Σ_k k·H_k = |E|·(n-2).
    let single = m * (n as u64 - 2) - 2 * paths - 3 * triangles;
    let empty = binomial(n, 3) - single - paths - triangles;
    Ok(Profile3([empty, single, paths, triangles]))
}

/// Class of a 4-node graph from its edge count, sorted degree multiset and
/// triangle count.
pub fn classify_motif4(edges: u32, degrees: [u8; 4], triangles: u32) -> Option<usize> {
    let mut d = degrees;
    d.sort_unstable();
    let class = match (edges, d, triangles) {
        (0, _, 0) => 0,
        (1, _, 0) => 1,
        (2, [1, 1, 1, 1], 0) => 2,
        (2, [0, 1, 1, 2], 0) => 3,
        (3, [1, 1, 2, 2], 0) => 4,
        (3, [0, 2, 2, 2], 1) => 5,
        (3, [1, 1, 1, 3], 0) => 6,
        (4, [2, 2, 2, 2], 0) => 7,
        (4, [1, 2, 2, 3], 1) => 8,
        (5, _, 2) => 9,
        (6, _, 4) => 10,
        _ => return None,
    };
    Some(class)
}

// Pair order of the 6-bit edge mask over nodes (a, b, c, d).
const PAIRS: [(usize, usize); 6] = [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)];

/// Class of every 6-bit edge mask, derived from [`classify_motif4`].
pub fn motif4_table() -> [u8; 64] {
    let mut table = [0u8; 64];
    for (mask, slot) in table.iter_mut().enumerate() {
        let mut deg = [0u8; 4];
        let mut adj = [[false; 4]; 4];
        for (bit, &(x, y)) in PAIRS.iter().enumerate() {
            if mask >> bit & 1 == 1 {
                deg[x] += 1;
                deg[y] += 1;
                adj[x][y] = true;
                adj[y][x] = true;
            }
        }
        let mut triangles = 0;
        for (x, y, z) in [(0, 1, 2), (0, 1, 3), (0, 2, 3), (1, 2, 3)] {
            if adj[x][y] && adj[x][z] && adj[y][z] {
                triangles += 1;
            }
        }
        let edges = (mask as u32).count_ones();
        *slot =
            classify_motif4(edges, deg, triangles).expect("every 4-node graph belongs to one of the 11 classes") as u8;
    }
    table
}

/// Exact 4-profile.
///
/// For each triple `a < b < c` the fourth node `d > c` is handled a word at
/// a time: the eight adjacency patterns of `d` towards `(a, b, c)` are
/// counted with masked popcounts over the bitset rows.
pub fn profile4(g: &Graph) -> Result<Profile4> {
    let n = g.node_count();
    if n < 4 {
        return Err(Error::GraphTooSmall { required: 4, actual: n });
    }
    let rows = BitRows::new(g);
    let table = motif4_table();
    let words = rows.words;
    let valid: Vec<u64> = (0..words)
        .map(|w| {
            let hi = (n - w * 64).min(64);
            if hi == 64 {
                u64::MAX
            } else {
                (1u64 << hi) - 1
            }
        })
        .collect();

    let counts = (0..n)
        .into_par_iter()
        .map(|a| {
            let mut local = [0u64; 11];
            let ra = rows.row(a);
            for b in (a + 1)..n {
                let rb = rows.row(b);
                let ab = rows.contains(a, b) as usize;
                for c in (b + 1)..n {
                    let rc = rows.row(c);
                    let base = ab | (rows.contains(a, c) as usize) << 1 | (rows.contains(b, c) as usize) << 3;
                    let mut pattern = [0u64; 8];
                    let first = (c + 1) / 64;
                    for w in first..words {
                        let mut live = valid[w];
                        if w == first {
                            live &= u64::MAX.checked_shl(((c + 1) % 64) as u32).unwrap_or(0);
                        }
                        let (x, y, z) = (ra[w], rb[w], rc[w]);
                        for (p, slot) in pattern.iter_mut().enumerate() {
                            let mx = if p & 1 == 1 { x } else { !x };
                            let my = if p & 2 == 2 { y } else { !y };
                            let mz = if p & 4 == 4 { z } else { !z };
                            *slot += (mx & my & mz & live).count_ones() as u64;
                        }
                    }
                    for (p, &count) in pattern.iter().enumerate() {
                        if count == 0 {
                            continue;
                        }
                        let mask = base | (p & 1) << 2 | (p >> 1 & 1) << 4 | (p >> 2 & 1) << 5;
                        local[table[mask] as usize] += count;
                    }
                }
            }
            local
        })
        .reduce(
            || [0u64; 11],
            |mut acc, part| {
                for (x, y) in acc.iter_mut().zip(part) {
                    *x += y;
                }
                acc
            },
        );
    Ok(Profile4(counts))
}

/// Largest graph accepted by [`profile4_oracle`].
pub const ORACLE_MAX_NODES: usize = 40;

/// Canonical form of a 6-bit edge mask: the minimum over all 24 relabellings.
fn canonical_mask(mask: usize) -> usize {
    let mut best = usize::MAX;
    for perm in permutations4() {
        let mut image = 0;
        for (bit, &(x, y)) in PAIRS.iter().enumerate() {
            if mask >> bit & 1 == 1 {
                let (px, py) = (perm[x].min(perm[y]), perm[x].max(perm[y]));
                let idx = PAIRS.iter().position(|&p| p == (px, py)).unwrap();
                image |= 1 << idx;
            }
        }
        best = best.min(image);
    }
    best
}

fn permutations4() -> Vec<[usize; 4]> {
    let mut out = Vec::with_capacity(24);
    for a in 0..4 {
        for b in 0..4 {
            for c in 0..4 {
                for d in 0..4 {
                    let p = [a, b, c, d];
                    let mut seen = [false; 4];
                    p.iter().for_each(|&x| seen[x] = true);
                    if seen.iter().all(|&s| s) {
                        out.push(p);
                    }
                }
            }
        }
    }
    out
}

/// Edge lists of one representative per class, as drawn in the motif chart.
const MOTIF4_REPRESENTATIVES: [&[(usize, usize)]; 11] = [
    &[],
    &[(0, 1)],
    &[(0, 1), (2, 3)],
    &[(0, 1), (1, 2)],
    &[(0, 1), (1, 2), (2, 3)],
    &[(0, 1), (1, 2), (0, 2)],
    &[(0, 1), (0, 2), (0, 3)],
    &[(0, 1), (1, 2), (2, 3), (3, 0)],
    &[(0, 1), (1, 2), (2, 0), (2, 3)],
    &[(0, 1), (1, 2), (2, 3), (3, 0), (0, 2)],
    &[(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)],
];

/// Reference 4-profile: visits every quadruple and classifies its induced
/// subgraph by canonical form. O(n^4) graph lookups; meant for tests.
pub fn profile4_oracle(g: &Graph) -> Result<Profile4> {
    let n = g.node_count();
    if n < 4 {
        return Err(Error::GraphTooSmall { required: 4, actual: n });
    }
    if n > ORACLE_MAX_NODES {
        return Err(Error::InvalidParameter(format!(
            "oracle is limited to {ORACLE_MAX_NODES} nodes, graph has {n}"
        )));
    }
    let mut class_of_canonical = std::collections::HashMap::new();
    for (k, edges) in MOTIF4_REPRESENTATIVES.iter().enumerate() {
        let mut mask = 0;
        for &(x, y) in edges.iter() {
            let idx = PAIRS.iter().position(|&p| p == (x.min(y), x.max(y))).unwrap();
            mask |= 1 << idx;
        }
        class_of_canonical.insert(canonical_mask(mask), k);
    }

    let mut counts = [0u64; 11];
    for a in 0..n {
        for b in (a + 1)..n {
            for c in (b + 1)..n {
                for d in (c + 1)..n {
                    let nodes = [a, b, c, d];
                    let mut mask = 0;
                    for (bit, &(x, y)) in PAIRS.iter().enumerate() {
                        if g.has_edge(nodes[x], nodes[y]) {
                            mask |= 1 << bit;
                        }
                    }
                    counts[class_of_canonical[&canonical_mask(mask)]] += 1;
                }
            }
        }
    }
    Ok(Profile4(counts))
}
