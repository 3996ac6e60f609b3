//! Tight edges, clusters, folding and the discharging audit.
//!
//! Throughout, `r` is the degree bound. An edge is tight when its endpoints
//! have `r − 1` common neighbours; a cluster is a maximal clique of tight
//! edges (a connected component of the tight-edge graph). For a cluster
//! with clique `T` the shell `S` is the common neighbourhood of `T`, and the
//! missing graph `R` is the complement of `G[S]`.

use num_rational::Ratio;
use serde::{Serialize, Serializer};

use crate::count::{count_cliques_of_size, edge_weight, mu, weight_sum};
use crate::error::{Error, Result};
use crate::graph::{binomial, bit, Bits, Graph};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Cluster {
    clique: u64,
    shell: u64,
    missing: Graph,
    bound: usize,
}

impl Cluster {
    /// The tight clique `T` as a bitmask.
    pub fn clique(&self) -> u64 {
        self.clique
    }

    /// The common neighbourhood `S` as a bitmask.
    pub fn shell(&self) -> u64 {
        self.shell
    }

    pub fn clique_vertices(&self) -> Vec<usize> {
        Bits(self.clique).collect()
    }

    /// Shell vertices in increasing order; vertex `i` of
    /// [`missing_graph`](Self::missing_graph) is the `i`-th of these.
    pub fn shell_vertices(&self) -> Vec<usize> {
        Bits(self.shell).collect()
    }

    /// `R`, the non-edges of `G[S]`.
    pub fn missing_graph(&self) -> &Graph {
        &self.missing
    }

    pub fn bound(&self) -> usize {
        self.bound
    }

    pub fn t(&self) -> usize {
        self.clique.count_ones() as usize
    }

    pub fn s(&self) -> usize {
        self.shell.count_ones() as usize
    }

    pub fn least_vertex(&self) -> usize {
        self.clique.trailing_zeros() as usize
    }

    /// e(R).
    pub fn missing_edges(&self) -> usize {
        self.missing.edge_count()
    }

    /// μ(R).
    pub fn missing_mu(&self) -> u64 {
        mu(&self.missing)
    }

    /// d_R(v) for a shell vertex `v` (original label).
    pub fn missing_degree(&self, v: usize) -> Option<usize> {
        if self.shell & bit(v) == 0 {
            return None;
        }
        let idx = (self.shell & (bit(v) - 1)).count_ones() as usize;
        Some(self.missing.degree(idx))
    }

    /// A cluster with empty shell is a complete `K_{r+1}` component.
    pub fn is_complete_component(&self) -> bool {
        self.shell == 0
    }

    pub fn summary(&self) -> ClusterSummary {
        ClusterSummary {
            clique: self.clique_vertices(),
            shell: self.shell_vertices(),
            t: self.t(),
            s: self.s(),
            missing_edges: self.missing_edges(),
            missing_mu: self.missing_mu(),
            foldable: is_foldable(self),
            dischargeable: is_dischargeable(self),
        }
    }
}

/// Serializable view of a cluster and its two predicates.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ClusterSummary {
    pub clique: Vec<usize>,
    pub shell: Vec<usize>,
    pub t: usize,
    pub s: usize,
    pub missing_edges: usize,
    pub missing_mu: u64,
    pub foldable: bool,
    pub dischargeable: bool,
}

fn is_tight(g: &Graph, u: usize, v: usize, r: usize) -> bool {
    g.has_edge(u, v) && (g.neighbors(u) & g.neighbors(v)).count_ones() as usize + 1 == r
}

/// Edges of weight `r − 1`, in lexicographic order.
pub fn tight_edges(g: &Graph, r: usize) -> Result<Vec<(usize, usize)>> {
    g.check_max_degree(r)?;
    Ok(g.edges().filter(|&(u, v)| is_tight(g, u, v, r)).collect())
}

/// All clusters of `g` under the bound `r`, ordered by least vertex.
///
/// For `r = 0` every vertex is a `K_1 = K_{r+1}` component and forms its own
/// cluster; otherwise clusters come from tight edges and have `t ≥ 2`.
pub fn find_clusters(g: &Graph, r: usize) -> Result<Vec<Cluster>> {
    g.check_max_degree(r)?;
    let n = g.n();
    if r == 0 {
        return Ok((0..n)
            .map(|v| Cluster {
                clique: bit(v),
                shell: 0,
                missing: Graph::empty(0).expect("empty graph"),
                bound: 0,
            })
            .collect());
    }

    let mut tight = vec![0u64; n];
    for (u, v) in g.edges() {
        if is_tight(g, u, v, r) {
            tight[u] |= bit(v);
            tight[v] |= bit(u);
        }
    }

    let mut clusters = Vec::new();
    let mut seen = 0u64;
    for start in 0..n {
        if seen & bit(start) != 0 || tight[start] == 0 {
            continue;
        }
        let mut comp = bit(start);
        let mut frontier = comp;
        while frontier != 0 {
            let next = Bits(frontier).fold(0, |acc, v| acc | tight[v]) & !comp;
            comp |= next;
            frontier = next;
        }
        seen |= comp;
        clusters.push(package(g, comp, &tight, r)?);
    }
    Ok(clusters)
}

fn package(g: &Graph, clique: u64, tight: &[u64], r: usize) -> Result<Cluster> {
    let first = clique.trailing_zeros() as usize;
    let closed = g.closed_neighbors(first);
    for x in Bits(clique) {
        if tight[x] | bit(x) != clique {
            return Err(Error::InvariantViolation(format!(
                "tight component {:?} is not a tight clique at vertex {x}",
                Bits(clique).collect::<Vec<_>>()
            )));
        }
        if g.degree(x) != r || g.closed_neighbors(x) != closed {
            return Err(Error::InvariantViolation(format!(
                "cluster vertex {x} does not have degree {r} and closed neighbourhood T ∪ S"
            )));
        }
    }
    let shell = closed & !clique;
    let missing = g.induced(shell).complement();
    if missing.n() > 0 && missing.min_degree() == 0 {
        return Err(Error::InvariantViolation(format!(
            "cluster at vertex {first} is not maximal: some shell vertex sees all of S"
        )));
    }
    Ok(Cluster {
        clique,
        shell,
        missing,
        bound: r,
    })
}

fn validate(g: &Graph, c: &Cluster) -> Result<()> {
    let clusters = find_clusters(g, c.bound).map_err(|e| match e {
        Error::DegreeBound { .. } => e,
        other => Error::NotACluster(other.to_string()),
    })?;
    if clusters.iter().any(|k| k == c) {
        Ok(())
    } else {
        Err(Error::NotACluster(format!(
            "{:?} is not a cluster of this graph at bound {}",
            c.clique_vertices(),
            c.bound
        )))
    }
}

/// t·e(R) ≥ μ(R).
pub fn is_foldable(c: &Cluster) -> bool {
    (c.t() * c.missing_edges()) as u64 >= c.missing_mu()
}

/// 2·e(R) ≥ s + t − 1, i.e. Σ_{v∈S} (d_R(v) − 1) ≥ t − 1.
pub fn is_dischargeable(c: &Cluster) -> bool {
    2 * c.missing_edges() + 1 >= c.s() + c.t()
}

/// Folding at a cluster: `S` becomes a clique and every edge from `S` to
/// vertices outside `T ∪ S` is deleted, leaving `T ∪ S` a `K_{r+1}` component.
pub fn fold(g: &Graph, c: &Cluster) -> Result<Graph> {
    validate(g, c)?;
    Ok(fold_unchecked(g, c))
}

fn fold_unchecked(g: &Graph, c: &Cluster) -> Graph {
    let block = c.clique | c.shell;
    let mut h = g.clone();
    for v in Bits(c.shell) {
        for u in Bits(g.neighbors(v) & !block) {
            h.remove_edge(u, v);
        }
        for u in Bits(c.shell & !bit(v)) {
            h.insert_edge(u, v);
        }
    }
    h
}

/// Record of one fold, with everything needed to re-check its guarantees.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FoldCertificate {
    pub clique: Vec<usize>,
    pub shell: Vec<usize>,
    pub bound: usize,
    pub t: usize,
    pub s: usize,
    pub missing_edges: usize,
    pub missing_mu: u64,
    pub triangles_before: u64,
    pub triangles_after: u64,
    pub max_degree_after: usize,
    /// `T ∪ S` is a complete component of size `r + 1` after folding.
    pub complete_component: bool,
}

impl FoldCertificate {
    pub fn gain(&self) -> i64 {
        self.triangles_after as i64 - self.triangles_before as i64
    }

    /// t·e(R) − μ(R), the guaranteed lower bound on the gain.
    pub fn gain_bound(&self) -> i64 {
        (self.t * self.missing_edges) as i64 - self.missing_mu as i64
    }

    pub fn holds(&self) -> bool {
        self.gain() >= self.gain_bound()
            && self.max_degree_after <= self.bound
            && self.complete_component
            && self.t + self.s == self.bound + 1
    }
}

/// Folds and recounts triangles on both sides.
pub fn fold_certified(g: &Graph, c: &Cluster) -> Result<(Graph, FoldCertificate)> {
    validate(g, c)?;
    let h = fold_unchecked(g, c);
    let block = c.clique | c.shell;
    let cert = FoldCertificate {
        clique: c.clique_vertices(),
        shell: c.shell_vertices(),
        bound: c.bound,
        t: c.t(),
        s: c.s(),
        missing_edges: c.missing_edges(),
        missing_mu: c.missing_mu(),
        triangles_before: count_cliques_of_size(g, 3),
        triangles_after: count_cliques_of_size(&h, 3),
        max_degree_after: h.max_degree(),
        complete_component: h.is_complete_component(block)
            && block.count_ones() as usize == c.bound + 1,
    };
    Ok((h, cert))
}

/// Builds a graph with a cluster on `0..t` whose missing graph is `missing`.
///
/// The shell occupies `t..t+s` in the order of `missing`'s vertices. With
/// `attach_private`, each shell vertex `v` also receives `d_R(v)` pendant
/// neighbours so that it reaches degree exactly `r = t + s − 1`. The clique
/// is a cluster (rather than part of a larger one) iff `δ(R) ≥ 1`.
pub fn build_cluster(t: usize, missing: &Graph, attach_private: bool) -> Result<Graph> {
    let s = missing.n();
    let core = Graph::complete(t)?.join(&missing.complement())?;
    if !attach_private {
        return Ok(core);
    }
    let extra: usize = (0..s).map(|v| missing.degree(v)).sum();
    let mut g = core.disjoint_union(&Graph::empty(extra)?)?;
    let mut next = t + s;
    for v in 0..s {
        for _ in 0..missing.degree(v) {
            g.insert_edge(t + v, next);
            next += 1;
        }
    }
    Ok(g)
}

fn ratio_str<S: Serializer>(r: &Ratio<i64>, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&r.to_string())
}

fn opt_ratio_str<S: Serializer>(
    r: &Option<Ratio<i64>>,
    s: S,
) -> std::result::Result<S::Ok, S::Error> {
    match r {
        Some(r) => s.serialize_str(&r.to_string()),
        None => s.serialize_none(),
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ClusterBenefit {
    pub least_vertex: usize,
    pub t: usize,
    pub s: usize,
    pub missing_edges: usize,
    /// Benefit of the cluster edges after receiving the transfers.
    #[serde(serialize_with = "ratio_str")]
    pub benefit: Ratio<i64>,
    pub dischargeable: bool,
    pub complete_component: bool,
}

/// Outcome of the discharging transfer over all edges of a graph.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DischargeAudit {
    pub bound: usize,
    pub edges: usize,
    pub weight_sum: u64,
    pub clusters: Vec<ClusterBenefit>,
    #[serde(serialize_with = "ratio_str")]
    pub cluster_benefit: Ratio<i64>,
    #[serde(serialize_with = "ratio_str")]
    pub associated_benefit: Ratio<i64>,
    #[serde(serialize_with = "ratio_str")]
    pub other_benefit: Ratio<i64>,
    #[serde(serialize_with = "ratio_str")]
    pub total_benefit: Ratio<i64>,
    /// Mean edge weight; `None` for an edgeless graph.
    #[serde(serialize_with = "opt_ratio_str")]
    pub average_weight: Option<Ratio<i64>>,
}

impl DischargeAudit {
    pub fn all_dischargeable(&self) -> bool {
        self.clusters.iter().all(|c| c.dischargeable)
    }

    pub fn complete_components(&self) -> usize {
        self.clusters
            .iter()
            .filter(|c| c.complete_component)
            .count()
    }

    /// The conclusion that must follow when every cluster is dischargeable
    /// and none is a complete component.
    pub fn average_weight_within(&self) -> bool {
        self.total_benefit >= Ratio::from_integer(0)
            && self
                .average_weight
                .is_none_or(|w| w <= Ratio::from_integer(self.bound as i64 - 2))
    }
}

/// Moves half the benefit r − 2 − w(e) of every edge associated with a
/// cluster onto that cluster's tight edges, and totals each class.
///
/// Amounts are tracked in halves, so every figure is exact.
pub fn discharge_audit(g: &Graph, r: usize) -> Result<DischargeAudit> {
    let clusters = find_clusters(g, r)?;
    let mut owner = vec![usize::MAX; g.n()];
    for (i, c) in clusters.iter().enumerate() {
        for v in Bits(c.clique) {
            owner[v] = i;
        }
    }

    let mut cluster_halves = vec![0i64; clusters.len()];
    let mut associated_halves = 0i64;
    let mut other_halves = 0i64;
    for (u, v) in g.edges() {
        let benefit = r as i64 - 2 - edge_weight(g, u, v)? as i64;
        let (a, b) = (owner[u], owner[v]);
        if a != usize::MAX && a == b {
            cluster_halves[a] += 2 * benefit;
            continue;
        }
        let sides = [a, b].into_iter().filter(|&o| o != usize::MAX);
        let mut residual = 2 * benefit;
        let mut associated = false;
        for o in sides {
            cluster_halves[o] += benefit;
            residual -= benefit;
            associated = true;
        }
        if associated {
            associated_halves += residual;
        } else {
            other_halves += residual;
        }
    }

    let half = |h: i64| Ratio::new(h, 2);
    let edges = g.edge_count();
    let weights = weight_sum(g);
    let cluster_total: i64 = cluster_halves.iter().sum();
    let total_halves = cluster_total + associated_halves + other_halves;
    let expected = 2 * ((r as i64 - 2) * edges as i64 - weights as i64);
    if total_halves != expected {
        return Err(Error::InvariantViolation(format!(
            "discharging lost benefit: {total_halves}/2 != {expected}/2"
        )));
    }

    Ok(DischargeAudit {
        bound: r,
        edges,
        weight_sum: weights,
        clusters: clusters
            .iter()
            .zip(&cluster_halves)
            .map(|(c, &h)| ClusterBenefit {
                least_vertex: c.least_vertex(),
                t: c.t(),
                s: c.s(),
                missing_edges: c.missing_edges(),
                benefit: half(h),
                dischargeable: is_dischargeable(c),
                complete_component: c.is_complete_component(),
            })
            .collect(),
        cluster_benefit: half(cluster_total),
        associated_benefit: half(associated_halves),
        other_benefit: half(other_halves),
        total_benefit: half(total_halves),
        average_weight: (edges > 0).then(|| Ratio::new(weights as i64, edges as i64)),
    })
}

/// Result of repeatedly folding foldable clusters and peeling off the
/// complete `K_{r+1}` components this creates.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Reduction {
    pub bound: usize,
    /// Number of complete `K_{r+1}` components removed, a′.
    pub peeled: usize,
    /// The remaining graph `H`, relabelled in increasing original order.
    #[serde(skip)]
    pub remainder: Graph,
    /// Original labels of the vertices of `H`.
    pub remainder_vertices: Vec<usize>,
    pub trace: Vec<FoldCertificate>,
    /// κ_3 of the input.
    pub triangles_before: u64,
    /// κ_3(a′K_{r+1} ∪ H).
    pub triangles_after: u64,
    /// Whether 27·n(H)² ≤ 4r²(r+1)².
    pub remainder_within_bound: bool,
}

/// Folds the foldable cluster with the least vertex until none remains,
/// peeling complete `K_{r+1}` components as they appear.
///
/// Each fold is recounted; a fold that loses more triangles than its bound
/// allows, or that fails to produce a `K_{r+1}` component, is reported as an
/// invariant violation.
pub fn reduce(g: &Graph, r: usize) -> Result<Reduction> {
    g.check_max_degree(r)?;
    let mut work = g.clone();
    let mut peeled_mask = 0u64;
    let mut peeled = 0;
    let mut trace = Vec::new();
    loop {
        let clusters = find_clusters(&work, r)?;
        for c in clusters.iter().filter(|c| c.is_complete_component()) {
            if c.clique & peeled_mask == 0 {
                peeled_mask |= c.clique;
                peeled += 1;
            }
        }
        let Some(c) = clusters
            .iter()
            .find(|c| !c.is_complete_component() && is_foldable(c))
        else {
            break;
        };
        let (next, cert) = fold_certified(&work, c)?;
        if !cert.holds() {
            return Err(Error::InvariantViolation(format!(
                "fold at {:?} failed its certificate: {cert:?}",
                cert.clique
            )));
        }
        trace.push(cert);
        work = next;
    }

    let rest = work.vertex_mask() & !peeled_mask;
    let remainder = work.induced(rest);
    let triangles_before = count_cliques_of_size(g, 3);
    let triangles_after =
        peeled as u64 * binomial(r as u64 + 1, 3) + count_cliques_of_size(&remainder, 3);
    if triangles_after < triangles_before {
        return Err(Error::InvariantViolation(format!(
            "reduction lost triangles: {triangles_before} -> {triangles_after}"
        )));
    }
    let h = remainder.n() as u128;
    let r128 = r as u128;
    Ok(Reduction {
        bound: r,
        peeled,
        remainder_vertices: Bits(rest).collect(),
        remainder,
        trace,
        triangles_before,
        triangles_after,
        remainder_within_bound: 27 * h * h <= 4 * r128 * r128 * (r128 + 1) * (r128 + 1),
    })
}
