//! Canonical labelling by partition refinement and individualization.
//!
//! The search tree is the usual one: refine an ordered partition to an
//! equitable one, individualize each vertex of the first non-singleton cell
//! and recurse. Every leaf is a discrete partition, i.e. a relabelling, and
//! the canonical form is the lexicographically least relabelled adjacency
//! over all leaves. Refinement only looks at cell membership counts, so the
//! leaf set is carried onto itself by any isomorphism and the minimum is an
//! invariant.
//!
//! Twins (vertices `u, w` with `N(u) - w = N(w) - u`) inside the branching
//! cell are interchangeable: the transposition `(u w)` is an automorphism
//! fixing everything individualized so far, so only one of them needs a
//! subtree. This collapses the factorial blow-up on empty, complete and
//! other highly symmetric graphs.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::graph::{bit, Bits, Graph, MAX_VERTICES};

/// Isomorphism-invariant key: equal keys iff isomorphic graphs.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(into = "String", try_from = "String")]
pub struct CanonicalKey(Vec<u8>);

impl CanonicalKey {
    pub fn as_bytes(&self) -> &[u8] {
        &self.0
    }

    pub fn to_hex(&self) -> String {
        hex::encode(&self.0)
    }
}

impl fmt::Display for CanonicalKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_hex())
    }
}

impl fmt::Debug for CanonicalKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CanonicalKey({})", self.to_hex())
    }
}

impl From<CanonicalKey> for String {
    fn from(k: CanonicalKey) -> String {
        k.to_hex()
    }
}

impl TryFrom<String> for CanonicalKey {
    type Error = hex::FromHexError;

    fn try_from(s: String) -> Result<Self, Self::Error> {
        hex::decode(s).map(CanonicalKey)
    }
}

/// Key of a graph already in canonical labelling: `n`, then each row packed
/// little-endian into `⌈n/8⌉` bytes.
fn key_of_labelled(g: &Graph) -> CanonicalKey {
    let n = g.n();
    let width = n.div_ceil(8);
    let mut bytes = Vec::with_capacity(1 + n * width);
    bytes.push(n as u8);
    for &row in g.rows() {
        bytes.extend_from_slice(&row.to_le_bytes()[..width]);
    }
    CanonicalKey(bytes)
}

pub fn canonical_form(g: &Graph) -> CanonicalKey {
    key_of_labelled(&canonical_labeling(g).0)
}

/// The canonically relabelled graph, with `perm[v]` the new label of `v`.
pub fn canonical_labeling(g: &Graph) -> (Graph, Vec<usize>) {
    let n = g.n();
    let mut search = Search {
        adj: g.rows(),
        n,
        best: [0; MAX_VERTICES],
        best_order: Vec::new(),
    };
    let mut cells: Vec<u64> = if n == 0 {
        Vec::new()
    } else {
        vec![g.vertex_mask()]
    };
    refine(search.adj, &mut cells);
    search.descend(cells);

    let mut perm = vec![0; n];
    for (pos, &v) in search.best_order.iter().enumerate() {
        perm[v] = pos;
    }
    let canon = Graph::from_rows(&search.best[..n]).expect("relabelling preserves validity");
    (canon, perm)
}

struct Search<'a> {
    adj: &'a [u64],
    n: usize,
    best: [u64; MAX_VERTICES],
    best_order: Vec<usize>,
}

impl Search<'_> {
    fn descend(&mut self, cells: Vec<u64>) {
        let Some(target) = cells.iter().position(|c| c.count_ones() > 1) else {
            self.leaf(&cells);
            return;
        };
        let cell = cells[target];
        let mut done = 0u64;
        for v in Bits(cell) {
            if done & bit(v) != 0 {
                continue;
            }
            let twins = Bits(cell)
                .filter(|&u| self.adj[u] & !bit(v) == self.adj[v] & !bit(u))
                .fold(0u64, |acc, u| acc | bit(u));
            done |= twins;

            let mut next = Vec::with_capacity(cells.len() + 1);
            next.extend_from_slice(&cells[..target]);
            next.push(bit(v));
            next.push(cell & !bit(v));
            next.extend_from_slice(&cells[target + 1..]);
            refine(self.adj, &mut next);
            self.descend(next);
        }
    }

    fn leaf(&mut self, cells: &[u64]) {
        let mut pos = [0usize; MAX_VERTICES];
        let order: Vec<usize> = cells.iter().map(|c| c.trailing_zeros() as usize).collect();
        for (i, &v) in order.iter().enumerate() {
            pos[v] = i;
        }
        let mut rows = [0u64; MAX_VERTICES];
        for (i, &v) in order.iter().enumerate() {
            rows[i] = Bits(self.adj[v]).fold(0, |acc, u| acc | bit(pos[u]));
        }
        if self.best_order.is_empty() || rows[..self.n] < self.best[..self.n] {
            self.best = rows;
            self.best_order = order;
        }
    }
}

/// Refines an ordered partition until equitable.
///
/// A cell splits by the number of neighbours each member has in a splitter
/// cell; fragments are ordered by that count. After any split the scan
/// restarts from the first splitter, so the result depends only on the
/// partition and the graph, never on vertex names.
fn refine(adj: &[u64], cells: &mut Vec<u64>) {
    'restart: loop {
        for s in 0..cells.len() {
            let splitter = cells[s];
            for c in 0..cells.len() {
                let cell = cells[c];
                if cell.count_ones() < 2 {
                    continue;
                }
                let mut by_count = [0u64; MAX_VERTICES + 1];
                let mut lo = usize::MAX;
                let mut hi = 0;
                for v in Bits(cell) {
                    let k = (adj[v] & splitter).count_ones() as usize;
                    by_count[k] |= bit(v);
                    lo = lo.min(k);
                    hi = hi.max(k);
                }
                if lo == hi {
                    continue;
                }
                let fragments: Vec<u64> = by_count[lo..=hi]
                    .iter()
                    .copied()
                    .filter(|&m| m != 0)
                    .collect();
                cells.splice(c..=c, fragments);
                continue 'restart;
            }
        }
        break;
    }
}
