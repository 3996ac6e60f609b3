//! Clique counts, edge weights and 3-vertex census.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{binomial, bit, low_bits, Bits, Graph, MAX_VERTICES};

/// Forward adjacency in degeneracy order.
///
/// Vertex `i` of the ordering sees only the neighbours placed after it, so
/// every clique is reached exactly once, from its first vertex.
struct Forward {
    rows: Vec<u64>,
}

impl Forward {
    fn new(g: &Graph) -> Self {
        let order = degeneracy_order(g);
        let mut pos = [0usize; MAX_VERTICES];
        for (i, &v) in order.iter().enumerate() {
            pos[v] = i;
        }
        let rows = order
            .iter()
            .enumerate()
            .map(|(i, &v)| {
                let row = Bits(g.neighbors(v)).fold(0u64, |acc, u| acc | bit(pos[u]));
                row & !low_bits(i + 1)
            })
            .collect();
        Self { rows }
    }

    /// True when the candidate set is itself a clique.
    fn is_clique(&self, cand: u64) -> bool {
        Bits(cand).all(|v| {
            let later = cand & !low_bits(v + 1);
            self.rows[v] & later == later
        })
    }

    fn count(&self, cand: u64, k: usize) -> u64 {
        match k {
            0 => 1,
            1 => u64::from(cand.count_ones()),
            _ => {
                let c = cand.count_ones() as usize;
                if c < k {
                    return 0;
                }
                if self.is_clique(cand) {
                    return binomial(c as u64, k as u64);
                }
                Bits(cand)
                    .map(|v| self.count(cand & self.rows[v], k - 1))
                    .sum()
            }
        }
    }

    fn tally(&self, cand: u64, depth: usize, counts: &mut [u64]) {
        if cand == 0 {
            return;
        }
        if self.is_clique(cand) {
            let c = cand.count_ones() as u64;
            for j in 1..=c {
                counts[depth + j as usize] += binomial(c, j);
            }
            return;
        }
        for v in Bits(cand) {
            counts[depth + 1] += 1;
            self.tally(cand & self.rows[v], depth + 1, counts);
        }
    }
}

/// Smallest-last vertex ordering; returned first-to-last.
fn degeneracy_order(g: &Graph) -> Vec<usize> {
    let n = g.n();
    let mut remaining = g.vertex_mask();
    let mut order = Vec::with_capacity(n);
    while remaining != 0 {
        let v = Bits(remaining)
            .min_by_key(|&v| (g.neighbors(v) & remaining).count_ones())
            .expect("nonempty");
        order.push(v);
        remaining &= !bit(v);
    }
    order
}

/// κ_t(G): the number of `t`-vertex complete subgraphs.
pub fn count_cliques_of_size(g: &Graph, t: usize) -> u64 {
    if t > g.n() {
        return 0;
    }
    Forward::new(g).count(g.vertex_mask(), t)
}

/// `counts[t]` is κ_t(G) for `t = 1..=n`; `counts[0]` is unused and zero.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CliqueCountVector {
    pub counts: Vec<u64>,
}

impl CliqueCountVector {
    pub fn get(&self, t: usize) -> u64 {
        self.counts.get(t).copied().unwrap_or(0)
    }

    /// Size of the largest clique, ω(G).
    pub fn clique_number(&self) -> usize {
        self.counts.iter().rposition(|&c| c > 0).unwrap_or(0)
    }

    /// κ(G), cliques of every size `≥ 1`.
    pub fn total(&self) -> u64 {
        self.counts.iter().skip(1).sum()
    }
}

pub fn clique_count_vector(g: &Graph) -> CliqueCountVector {
    let mut counts = vec![0u64; g.n() + 1];
    Forward::new(g).tally(g.vertex_mask(), 0, &mut counts);
    CliqueCountVector { counts }
}

/// κ(G). The empty clique is not counted, so κ(K_1) = 1.
pub fn count_all_cliques(g: &Graph) -> u64 {
    clique_count_vector(g).total()
}

/// w(xy) = |N(x) ∩ N(y)|, the number of triangles on the edge `xy`.
pub fn edge_weight(g: &Graph, x: usize, y: usize) -> Result<usize> {
    g.check_vertex(x)?;
    g.check_vertex(y)?;
    if !g.has_edge(x, y) {
        return Err(Error::NotAnEdge { x, y });
    }
    Ok((g.neighbors(x) & g.neighbors(y)).count_ones() as usize)
}

/// r − 2 − w(xy). Negative exactly for tight edges, where it is −1.
pub fn edge_benefit(g: &Graph, x: usize, y: usize, r: usize) -> Result<i64> {
    g.check_max_degree(r)?;
    let w = edge_weight(g, x, y)?;
    Ok(r as i64 - 2 - w as i64)
}

/// Σ over edges of w(e), which is 3·κ_3(G).
pub fn weight_sum(g: &Graph) -> u64 {
    g.edges()
        .map(|(u, v)| u64::from((g.neighbors(u) & g.neighbors(v)).count_ones()))
        .sum()
}

/// Counts of 3-vertex subsets by the number of edges they induce.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct TripleCensus {
    pub triangles: u64,
    pub cherries: u64,
    pub one_edge: u64,
    pub empty: u64,
}

impl TripleCensus {
    pub fn total(&self) -> u64 {
        self.triangles + self.cherries + self.one_edge + self.empty
    }

    /// μ = 2·triangles + cherries.
    pub fn mu(&self) -> u64 {
        2 * self.triangles + self.cherries
    }
}

/// Exact census of induced triangles, cherries, one-edge and empty triples.
///
/// For each pair `i < j` the third vertex ranges over `k > j`; its type is
/// read off from whether `k` sees both, one or neither of `i, j`.
pub fn triple_census(g: &Graph) -> TripleCensus {
    let n = g.n();
    let mut c = TripleCensus::default();
    for i in 0..n {
        for j in (i + 1)..n {
            let later = g.vertex_mask() & !low_bits(j + 1);
            let (a, b) = (g.neighbors(i), g.neighbors(j));
            let both = u64::from((a & b & later).count_ones());
            let one = u64::from(((a ^ b) & later).count_ones());
            let neither = u64::from((later & !(a | b)).count_ones());
            if g.has_edge(i, j) {
                c.triangles += both;
                c.cherries += one;
                c.one_edge += neither;
            } else {
                c.cherries += both;
                c.one_edge += one;
                c.empty += neither;
            }
        }
    }
    c
}

/// μ(G) = 2·#triangles + #cherries over induced triples.
pub fn mu(g: &Graph) -> u64 {
    triple_census(g).mu()
}
