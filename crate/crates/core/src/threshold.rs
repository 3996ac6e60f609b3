//! Threshold graphs, lex graphs and compression.
//!
//! Threshold vertices follow the "backwards" build order: vertex `n` is the
//! initial `K_1` and vertex `i < n` is added as a dominating vertex when
//! `σ_i = 1` and as an isolate when `σ_i = 0`. Vertex `i` (1-based) is graph
//! vertex `i − 1`.

use std::fmt;
use std::str::FromStr;

use crate::count::mu;
use crate::error::{Error, Result};
use crate::graph::{binomial, bit, Bits, Graph, MAX_VERTICES};

/// The build code σ of a threshold graph on `len + 1` vertices.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct ThresholdCode {
    bits: Vec<bool>,
}

impl ThresholdCode {
    pub fn new(bits: Vec<bool>) -> Self {
        Self { bits }
    }

    pub fn bits(&self) -> &[bool] {
        &self.bits
    }

    pub fn len(&self) -> usize {
        self.bits.len()
    }

    pub fn is_empty(&self) -> bool {
        self.bits.is_empty()
    }

    /// Number of vertices of `T(σ)`.
    pub fn vertex_count(&self) -> usize {
        self.bits.len() + 1
    }

    pub fn ones(&self) -> usize {
        self.bits.iter().filter(|&&b| b).count()
    }

    pub fn zeros(&self) -> usize {
        self.len() - self.ones()
    }

    /// σ.τ
    pub fn concat(&self, other: &ThresholdCode) -> ThresholdCode {
        let mut bits = self.bits.clone();
        bits.extend_from_slice(&other.bits);
        Self { bits }
    }

    /// `bit^count`
    pub fn run(bit: bool, count: usize) -> ThresholdCode {
        Self {
            bits: vec![bit; count],
        }
    }

    /// Whether the code has the shape `1^a 0^b 1^x 0^c` with `x ≤ 1`.
    pub fn is_lex_shape(&self) -> bool {
        let ones = self.bits.iter().take_while(|&&b| b).count();
        let rest = &self.bits[ones..];
        rest.iter().filter(|&&b| b).count() <= 1
    }
}

impl fmt::Display for ThresholdCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for &b in &self.bits {
            f.write_str(if b { "1" } else { "0" })?;
        }
        Ok(())
    }
}

impl fmt::Debug for ThresholdCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ThresholdCode({self})")
    }
}

impl FromStr for ThresholdCode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        s.chars()
            .map(|c| match c {
                '0' => Ok(false),
                '1' => Ok(true),
                other => Err(Error::Input(format!("threshold code digit {other:?}"))),
            })
            .collect::<Result<Vec<_>>>()
            .map(Self::new)
    }
}

/// `T(σ)`: for `i < j`, vertices `i` and `j` are adjacent iff `σ_i = 1`.
pub fn threshold_from_code(code: &ThresholdCode) -> Result<Graph> {
    let n = code.vertex_count();
    let mut g = Graph::empty(n)?;
    for (i, _) in code.bits.iter().enumerate().filter(|(_, &b)| b) {
        for j in (i + 1)..n {
            g.insert_edge(i, j);
        }
    }
    Ok(g)
}

fn check_edge_count(n: usize, m: usize) -> Result<()> {
    if n > MAX_VERTICES {
        return Err(Error::Capacity(n));
    }
    let max = n * n.saturating_sub(1) / 2;
    if m > max {
        return Err(Error::Input(format!(
            "{m} edges do not fit on {n} vertices (at most {max})"
        )));
    }
    Ok(())
}

/// `L(n, m)`: the first `m` pairs of `{1..n}` in lex order
/// `{1,2}, {1,3}, …, {1,n}, {2,3}, …`.
pub fn lex_graph(n: usize, m: usize) -> Result<Graph> {
    check_edge_count(n, m)?;
    let mut g = Graph::empty(n)?;
    let pairs = (0..n).flat_map(|i| ((i + 1)..n).map(move |j| (i, j)));
    for (i, j) in pairs.take(m) {
        g.insert_edge(i, j);
    }
    Ok(g)
}

/// Threshold code of `L(n, m)`, of the form `1^a 0^b 1^x 0^c`.
///
/// `a` counts the vertices that dominate everything; the leftover `m′`
/// edges belong to one further 1 placed at position `n − m′`, which has
/// exactly `m′` vertices to its right. No trailing 1 is emitted when
/// `m′ = 0`.
pub fn lex_code(n: usize, m: usize) -> Result<ThresholdCode> {
    check_edge_count(n, m)?;
    if n == 0 {
        return Err(Error::Input(
            "a threshold code needs at least one vertex".into(),
        ));
    }
    let mut a = 0;
    let mut used = 0;
    while a < n - 1 && used + (n - 1 - a) <= m {
        used += n - 1 - a;
        a += 1;
    }
    let rest = m - used;
    let mut bits = vec![false; n - 1];
    bits[..a].fill(true);
    if rest > 0 {
        bits[n - rest - 1] = true;
    }
    Ok(ThresholdCode::new(bits))
}

/// The four classes of `V ∖ {x, y}` relative to `x` and `y`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CompressionSplit {
    pub x_only: u64,
    pub both: u64,
    pub y_only: u64,
    pub neither: u64,
}

pub fn compression_split(g: &Graph, x: usize, y: usize) -> Result<CompressionSplit> {
    g.check_vertex(x)?;
    g.check_vertex(y)?;
    if x == y {
        return Err(Error::Input(format!(
            "compression needs distinct vertices, got {x} twice"
        )));
    }
    let rest = g.vertex_mask() & !bit(x) & !bit(y);
    let (nx, ny) = (g.neighbors(x) & rest, g.neighbors(y) & rest);
    Ok(CompressionSplit {
        x_only: nx & !ny,
        both: nx & ny,
        y_only: ny & !nx,
        neither: rest & !(nx | ny),
    })
}

/// `G_{x→y}`: the edges from `x` to its private neighbours move to `y`.
/// The pair `xy` itself is left alone.
pub fn compress(g: &Graph, x: usize, y: usize) -> Result<Graph> {
    let split = compression_split(g, x, y)?;
    let mut h = g.clone();
    for v in Bits(split.x_only) {
        h.remove_edge(x, v);
        h.insert_edge(y, v);
    }
    Ok(h)
}

fn check_star_matching_range(n: usize, m: usize) -> Result<()> {
    if 2 * m < n || m + 1 >= n {
        return Err(Error::Input(format!(
            "need n/2 ≤ m < n − 1, got n = {n}, m = {m}"
        )));
    }
    Ok(())
}

/// `K_{1,p} ∪ qK_2` with `p = 2m − n + 1` and `q = n − m − 1`.
pub fn star_matching_graph(n: usize, m: usize) -> Result<Graph> {
    check_star_matching_range(n, m)?;
    let p = 2 * m + 1 - n;
    let q = n - m - 1;
    Graph::star(p)?.disjoint_union(&Graph::complete(2)?.repeat(q)?)
}

/// C(2m − n + 1, 2): the largest μ over graphs with `n` vertices, `m` edges
/// and no isolated vertex, in the range `n/2 ≤ m < n − 1`.
pub fn mu_bound_min_degree_one(n: usize, m: usize) -> Result<u64> {
    check_star_matching_range(n, m)?;
    Ok(binomial((2 * m + 1 - n) as u64, 2))
}

/// μ(L(n, m)).
pub fn lex_mu(n: usize, m: usize) -> Result<u64> {
    Ok(mu(&lex_graph(n, m)?))
}
