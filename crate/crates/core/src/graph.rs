//! Simple undirected graphs on at most 64 vertices.
//!
//! Every vertex owns one `u64` neighbour row, so neighbourhood intersection,
//! degree and adjacency are single word operations.

use std::fmt;

use crate::error::{Error, Result};

/// Largest vertex count a [`Graph`] can hold.
pub const MAX_VERTICES: usize = 64;

#[inline]
pub(crate) const fn bit(v: usize) -> u64 {
    1u64 << v
}

/// Mask with the lowest `n` bits set.
#[inline]
pub(crate) const fn low_bits(n: usize) -> u64 {
    if n >= 64 {
        u64::MAX
    } else {
        (1u64 << n) - 1
    }
}

/// Iterator over the set bits of a word, lowest first.
#[derive(Debug, Clone, Copy)]
pub struct Bits(pub u64);

impl Iterator for Bits {
    type Item = usize;

    #[inline]
    fn next(&mut self) -> Option<usize> {
        if self.0 == 0 {
            return None;
        }
        let v = self.0.trailing_zeros() as usize;
        self.0 &= self.0 - 1;
        Some(v)
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let c = self.0.count_ones() as usize;
        (c, Some(c))
    }
}

impl ExactSizeIterator for Bits {}

/// Binomial coefficient in `u64`; callers stay far below overflow.
pub fn binomial(n: u64, k: u64) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * u128::from(n - i) / u128::from(i + 1);
    }
    acc as u64
}

/// A simple undirected graph on the vertices `0..n`.
///
/// Rows are symmetric and irreflexive; every constructor enforces this.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Graph {
    n: usize,
    adj: Vec<u64>,
}

impl Graph {
    /// Edgeless graph `E_n`.
    pub fn empty(n: usize) -> Result<Self> {
        if n > MAX_VERTICES {
            return Err(Error::Capacity(n));
        }
        Ok(Self { n, adj: vec![0; n] })
    }

    /// Builds a graph from an edge list. Repeated pairs collapse to one edge.
    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let mut g = Self::empty(n)?;
        for &(u, v) in edges {
            for w in [u, v] {
                if w >= n {
                    return Err(Error::VertexOutOfRange { vertex: w, n });
                }
            }
            if u == v {
                return Err(Error::SelfLoop(u));
            }
            g.insert_edge(u, v);
        }
        Ok(g)
    }

    /// Builds a graph from raw neighbour rows, validating symmetry.
    pub fn from_rows(rows: &[u64]) -> Result<Self> {
        let n = rows.len();
        if n > MAX_VERTICES {
            return Err(Error::Capacity(n));
        }
        let mask = low_bits(n);
        for (v, &row) in rows.iter().enumerate() {
            if row & !mask != 0 {
                let vertex = (row & !mask).trailing_zeros() as usize;
                return Err(Error::VertexOutOfRange { vertex, n });
            }
            if row & bit(v) != 0 {
                return Err(Error::SelfLoop(v));
            }
            for u in Bits(row) {
                if rows[u] & bit(v) == 0 {
                    return Err(Error::Input(format!(
                        "adjacency is not symmetric at {v}{u}"
                    )));
                }
            }
        }
        Ok(Self {
            n,
            adj: rows.to_vec(),
        })
    }

    pub fn complete(n: usize) -> Result<Self> {
        let mut g = Self::empty(n)?;
        let all = low_bits(n);
        for v in 0..n {
            g.adj[v] = all & !bit(v);
        }
        Ok(g)
    }

    /// The cycle `C_n`, `n ≥ 3`.
    pub fn cycle(n: usize) -> Result<Self> {
        if n < 3 {
            return Err(Error::Input(format!(
                "a cycle needs at least 3 vertices, got {n}"
            )));
        }
        let edges: Vec<_> = (0..n).map(|i| (i, (i + 1) % n)).collect();
        Self::from_edges(n, &edges)
    }

    /// The path on `n` vertices, `0 - 1 - ... - (n-1)`.
    pub fn path(n: usize) -> Result<Self> {
        let edges: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
        Self::from_edges(n, &edges)
    }

    /// `K_{p,q}` with parts `0..p` and `p..p+q`.
    pub fn complete_bipartite(p: usize, q: usize) -> Result<Self> {
        Self::empty(p)?.join(&Self::empty(q)?)
    }

    /// The star `K_{1,p}` centred at vertex 0.
    pub fn star(p: usize) -> Result<Self> {
        Self::complete_bipartite(1, p)
    }

    /// `self ∪ other`, with `other` relabelled to `n(self)..`.
    pub fn disjoint_union(&self, other: &Graph) -> Result<Self> {
        let n = self.n + other.n;
        if n > MAX_VERTICES {
            return Err(Error::Capacity(n));
        }
        let mut adj = self.adj.clone();
        adj.extend(other.adj.iter().map(|&row| row << self.n));
        Ok(Self { n, adj })
    }

    /// `self ∨ other`: the disjoint union plus every edge between the two sides.
    pub fn join(&self, other: &Graph) -> Result<Self> {
        let mut g = self.disjoint_union(other)?;
        let left = low_bits(self.n);
        let right = low_bits(g.n) & !left;
        for v in 0..g.n {
            g.adj[v] |= if v < self.n { right } else { left };
        }
        Ok(g)
    }

    /// `copies` disjoint copies of `self`.
    pub fn repeat(&self, copies: usize) -> Result<Self> {
        let mut g = Self::empty(0)?;
        for _ in 0..copies {
            g = g.disjoint_union(self)?;
        }
        Ok(g)
    }

    /// The complement: `uv` is an edge iff `u ≠ v` and `uv ∉ E(G)`.
    pub fn complement(&self) -> Self {
        let all = self.vertex_mask();
        let adj = (0..self.n).map(|v| all & !self.adj[v] & !bit(v)).collect();
        Self { n: self.n, adj }
    }

    /// Induced subgraph on the vertices of `mask`, relabelled in increasing order.
    pub fn induced(&self, mask: u64) -> Self {
        let keep: Vec<usize> = Bits(mask & self.vertex_mask()).collect();
        self.relabel_subset(&keep)
    }

    /// Induced subgraph on `order`, where `order[i]` becomes vertex `i`.
    pub fn relabel_subset(&self, order: &[usize]) -> Self {
        let mut pos = [usize::MAX; MAX_VERTICES];
        for (i, &v) in order.iter().enumerate() {
            pos[v] = i;
        }
        let adj = order
            .iter()
            .map(|&v| {
                Bits(self.adj[v])
                    .filter(|&u| pos[u] != usize::MAX)
                    .fold(0u64, |row, u| row | bit(pos[u]))
            })
            .collect();
        Self {
            n: order.len(),
            adj,
        }
    }

    /// Applies a permutation: vertex `v` of `self` becomes `perm[v]`.
    pub fn permute(&self, perm: &[usize]) -> Result<Self> {
        if perm.len() != self.n {
            return Err(Error::Input(format!(
                "permutation of length {} for a graph on {} vertices",
                perm.len(),
                self.n
            )));
        }
        let mut seen = 0u64;
        for &p in perm {
            if p >= self.n || seen & bit(p) != 0 {
                return Err(Error::Input("not a permutation".into()));
            }
            seen |= bit(p);
        }
        let mut adj = vec![0u64; self.n];
        for v in 0..self.n {
            adj[perm[v]] = Bits(self.adj[v]).fold(0, |row, u| row | bit(perm[u]));
        }
        Ok(Self { n: self.n, adj })
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn rows(&self) -> &[u64] {
        &self.adj
    }

    #[inline]
    pub fn vertex_mask(&self) -> u64 {
        low_bits(self.n)
    }

    /// Open neighbourhood `N(v)` as a bitmask.
    #[inline]
    pub fn neighbors(&self, v: usize) -> u64 {
        self.adj[v]
    }

    /// Closed neighbourhood `N[v]`.
    #[inline]
    pub fn closed_neighbors(&self, v: usize) -> u64 {
        self.adj[v] | bit(v)
    }

    #[inline]
    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].count_ones() as usize
    }

    #[inline]
    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.n && self.adj[u] & bit(v) != 0
    }

    pub fn edge_count(&self) -> usize {
        self.adj
            .iter()
            .map(|r| r.count_ones() as usize)
            .sum::<usize>()
            / 2
    }

    /// Δ(G); zero for the null graph.
    pub fn max_degree(&self) -> usize {
        (0..self.n).map(|v| self.degree(v)).max().unwrap_or(0)
    }

    /// δ(G); zero for the null graph.
    pub fn min_degree(&self) -> usize {
        (0..self.n).map(|v| self.degree(v)).min().unwrap_or(0)
    }

    pub fn degrees(&self) -> Vec<usize> {
        (0..self.n).map(|v| self.degree(v)).collect()
    }

    /// Edges `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (0..self.n).flat_map(move |u| Bits(self.adj[u] & !low_bits(u + 1)).map(move |v| (u, v)))
    }

    /// Errors unless `Δ(G) ≤ bound`.
    pub fn check_max_degree(&self, bound: usize) -> Result<()> {
        let found = self.max_degree();
        if found > bound {
            return Err(Error::DegreeBound { found, bound });
        }
        Ok(())
    }

    pub(crate) fn check_vertex(&self, v: usize) -> Result<()> {
        if v >= self.n {
            return Err(Error::VertexOutOfRange {
                vertex: v,
                n: self.n,
            });
        }
        Ok(())
    }

    /// Vertex sets of the connected components, ordered by least vertex.
    pub fn components(&self) -> Vec<u64> {
        let mut out = Vec::new();
        let mut unseen = self.vertex_mask();
        while unseen != 0 {
            let start = unseen & unseen.wrapping_neg();
            let mut comp = start;
            let mut frontier = start;
            while frontier != 0 {
                let next = Bits(frontier).fold(0, |acc, v| acc | self.adj[v]) & !comp;
                comp |= next;
                frontier = next;
            }
            unseen &= !comp;
            out.push(comp);
        }
        out
    }

    /// True when `mask` induces a complete graph with no edges leaving it.
    pub fn is_complete_component(&self, mask: u64) -> bool {
        Bits(mask).all(|v| self.adj[v] == mask & !bit(v))
    }

    pub(crate) fn insert_edge(&mut self, u: usize, v: usize) {
        self.adj[u] |= bit(v);
        self.adj[v] |= bit(u);
    }

    pub(crate) fn remove_edge(&mut self, u: usize, v: usize) {
        self.adj[u] &= !bit(v);
        self.adj[v] &= !bit(u);
    }
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Graph(n={}, edges=[", self.n)?;
        for (i, (u, v)) in self.edges().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{u}-{v}")?;
        }
        f.write_str("])")
    }
}
