//! Exhaustive enumeration of isomorphism classes under degree constraints.
//!
//! Classes are generated one edge count at a time. Every graph with `m + 1`
//! edges and `Δ ≤ r` arises from one with `m` edges and `Δ ≤ r` by adding a
//! single edge, so extending each class at level `m` in every admissible way
//! and deduplicating by canonical labelling yields level `m + 1` exactly.
//! Each level's frontier is split across the rayon pool; the per-worker sets
//! are merged and sorted, so output does not depend on the worker count.

use std::collections::HashSet;

use rayon::prelude::*;
use serde::Serialize;

use crate::canon::canonical_labeling;
use crate::error::{Error, Result};
use crate::graph::Graph;

/// Largest `n` for a degree-bounded search.
pub const MAX_BOUNDED_VERTICES: usize = 10;
/// Largest `n` when the degree is effectively unbounded.
pub const MAX_UNBOUNDED_VERTICES: usize = 7;

/// Constraints on the graphs to enumerate.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct SearchSpace {
    pub n: usize,
    pub max_degree: Option<usize>,
    pub min_degree: Option<usize>,
    pub edge_count: Option<usize>,
}

impl SearchSpace {
    pub fn all(n: usize) -> Self {
        Self {
            n,
            max_degree: None,
            min_degree: None,
            edge_count: None,
        }
    }

    pub fn bounded(n: usize, r: usize) -> Self {
        Self::all(n).with_max_degree(r)
    }

    pub fn with_max_degree(mut self, r: usize) -> Self {
        self.max_degree = Some(r);
        self
    }

    pub fn with_min_degree(mut self, d: usize) -> Self {
        self.min_degree = Some(d);
        self
    }

    pub fn with_edge_count(mut self, m: usize) -> Self {
        self.edge_count = Some(m);
        self
    }

    /// The degree cap that actually applies, at most `n − 1`.
    pub fn effective_max_degree(&self) -> usize {
        let full = self.n.saturating_sub(1);
        self.max_degree.map_or(full, |r| r.min(full))
    }

    pub fn validate(&self) -> Result<()> {
        let bounded = self.effective_max_degree() < self.n.saturating_sub(1);
        let cap = if bounded {
            MAX_BOUNDED_VERTICES
        } else {
            MAX_UNBOUNDED_VERTICES
        };
        if self.n > cap {
            return Err(Error::SearchCapacity(format!(
                "n = {} exceeds the exhaustive limit of {cap} for {} search",
                self.n,
                if bounded {
                    "degree-bounded"
                } else {
                    "unbounded"
                }
            )));
        }
        if let (Some(lo), Some(hi)) = (self.min_degree, self.max_degree) {
            if lo > hi {
                return Err(Error::Input(format!(
                    "minimum degree {lo} exceeds maximum degree {hi}"
                )));
            }
        }
        Ok(())
    }

    fn admits(&self, g: &Graph) -> bool {
        self.min_degree
            .is_none_or(|d| g.min_degree() >= d || g.n() == 0)
            && self.edge_count.is_none_or(|m| g.edge_count() == m)
    }
}

/// One canonically labelled representative per isomorphism class in the
/// space, ordered by edge count and then by canonical adjacency.
pub fn enumerate_graphs(space: &SearchSpace) -> Result<Vec<Graph>> {
    space.validate()?;
    let n = space.n;
    let r = space.effective_max_degree();
    let top = (n * n.saturating_sub(1) / 2).min(n * r / 2);
    let last = space.edge_count.map_or(top, |m| m.min(top));
    if space.edge_count.is_some_and(|m| m > top) {
        return Ok(Vec::new());
    }

    let mut out = Vec::new();
    let mut level = vec![canonical_labeling(&Graph::empty(n)?).0];
    for m in 0..=last {
        out.extend(level.iter().filter(|g| space.admits(g)).cloned());
        if m == last {
            break;
        }
        level = extend_level(&level, r);
        if level.is_empty() {
            break;
        }
    }
    Ok(out)
}

fn extend_level(level: &[Graph], r: usize) -> Vec<Graph> {
    let merged = level
        .par_iter()
        .fold(HashSet::new, |mut set, g| {
            let n = g.n();
            for u in 0..n {
                if g.degree(u) >= r {
                    continue;
                }
                for v in (u + 1)..n {
                    if g.degree(v) >= r || g.has_edge(u, v) {
                        continue;
                    }
                    let mut h = g.clone();
                    h.insert_edge(u, v);
                    set.insert(canonical_labeling(&h).0);
                }
            }
            set
        })
        .reduce(HashSet::new, |mut a, mut b| {
            if a.len() < b.len() {
                std::mem::swap(&mut a, &mut b);
            }
            a.extend(b);
            a
        });
    let mut next: Vec<Graph> = merged.into_iter().collect();
    next.sort_unstable();
    next
}

#[cfg(test)]
mod tests {
    use super::*;

    fn count(space: SearchSpace) -> usize {
        enumerate_graphs(&space).unwrap().len()
    }

    #[test]
    fn unrestricted_counts() {
        let known = [1, 1, 2, 4, 11, 34, 156, 1044];
        for (n, &c) in known.iter().enumerate() {
            assert_eq!(count(SearchSpace::all(n)), c, "n = {n}");
        }
    }

    #[test]
    fn bounded_examples() {
        assert_eq!(count(SearchSpace::bounded(3, 1)), 2);
        // Δ ≤ 2 graphs are disjoint unions of paths and cycles.
        assert_eq!(count(SearchSpace::bounded(4, 2)), 7);
        assert_eq!(count(SearchSpace::bounded(4, 0)), 1);
    }

    #[test]
    fn constraints_filter() {
        let with_m = count(SearchSpace::all(4).with_edge_count(3));
        assert_eq!(with_m, 3);
        let no_isolates = enumerate_graphs(&SearchSpace::all(4).with_min_degree(1)).unwrap();
        assert!(no_isolates.iter().all(|g| g.min_degree() >= 1));
        assert_eq!(no_isolates.len(), 7);
        assert_eq!(count(SearchSpace::all(4).with_edge_count(7)), 0);
    }

    #[test]
    fn capacity() {
        assert!(enumerate_graphs(&SearchSpace::all(8)).is_err());
        assert!(enumerate_graphs(&SearchSpace::bounded(11, 2)).is_err());
        // a bound of n − 1 or more is no bound at all
        assert!(enumerate_graphs(&SearchSpace::bounded(8, 7)).is_err());
        assert!(SearchSpace::bounded(10, 3).validate().is_ok());
        assert!(SearchSpace::all(5)
            .with_min_degree(3)
            .with_max_degree(2)
            .validate()
            .is_err());
    }

    #[test]
    fn representatives_are_canonical_and_sorted() {
        let gs = enumerate_graphs(&SearchSpace::bounded(6, 3)).unwrap();
        for w in gs.windows(2) {
            let key = |g: &Graph| (g.edge_count(), g.clone());
            assert!(key(&w[0]) < key(&w[1]));
        }
        for g in &gs {
            assert_eq!(&canonical_labeling(g).0, g);
            assert!(g.max_degree() <= 3);
        }
    }
}
