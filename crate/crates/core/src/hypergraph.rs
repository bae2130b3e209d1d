use std::collections::HashSet;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::setsystem::Subset;

/// A finite hypergraph on vertices `0..vertex_count`.
///
/// Kneser hypergraphs carry the set-system member behind each vertex in `labels`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "RawHypergraph", into = "RawHypergraph")]
pub struct Hypergraph {
    vertex_count: usize,
    labels: Option<Vec<Subset>>,
    edges: Vec<Vec<usize>>,
}

#[derive(Serialize, Deserialize)]
struct RawHypergraph {
    vertex_count: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    labels: Option<Vec<Vec<usize>>>,
    edges: Vec<Vec<usize>>,
}

impl TryFrom<RawHypergraph> for Hypergraph {
    type Error = Error;

    fn try_from(raw: RawHypergraph) -> Result<Self> {
        let labels = match raw.labels {
            None => None,
            Some(ls) => {
                let max = ls.iter().flatten().copied().max().unwrap_or(1);
                Some(
                    ls.iter()
                        .enumerate()
                        .map(|(i, l)| Subset::new(l, max, i))
                        .collect::<Result<Vec<_>>>()?,
                )
            }
        };
        Hypergraph::new(raw.vertex_count, labels, raw.edges)
    }
}

impl From<Hypergraph> for RawHypergraph {
    fn from(h: Hypergraph) -> Self {
        RawHypergraph {
            vertex_count: h.vertex_count,
            labels: h.labels.map(|ls| ls.iter().map(|l| l.to_vec()).collect()),
            edges: h.edges,
        }
    }
}

impl Hypergraph {
    /// Validates the edge list. Vertices inside each edge are sorted; edge order is kept.
    pub fn new(vertex_count: usize, labels: Option<Vec<Subset>>, edges: Vec<Vec<usize>>) -> Result<Self> {
        if let Some(ls) = &labels {
            if ls.len() != vertex_count {
                return Err(Error::InvalidHypergraph(format!(
                    "{} labels for {} vertices",
                    ls.len(),
                    vertex_count
                )));
            }
        }
        let mut seen = HashSet::with_capacity(edges.len());
        let mut sorted = Vec::with_capacity(edges.len());
        for (i, mut e) in edges.into_iter().enumerate() {
            if e.is_empty() {
                return Err(Error::InvalidHypergraph(format!("edge {i} is empty")));
            }
            e.sort_unstable();
            if let Some(&v) = e.iter().find(|&&v| v >= vertex_count) {
                return Err(Error::InvalidHypergraph(format!(
                    "edge {i} uses vertex {v} but there are only {vertex_count} vertices"
                )));
            }
            if e.windows(2).any(|w| w[0] == w[1]) {
                return Err(Error::InvalidHypergraph(format!("edge {i} repeats a vertex")));
            }
            if !seen.insert(e.clone()) {
                return Err(Error::InvalidHypergraph(format!("edge {i} is a duplicate")));
            }
            sorted.push(e);
        }
        Ok(Hypergraph {
            vertex_count,
            labels,
            edges: sorted,
        })
    }

    /// Caller guarantees the invariants checked by [`Hypergraph::new`].
    pub(crate) fn from_parts_unchecked(
        vertex_count: usize,
        labels: Option<Vec<Subset>>,
        edges: Vec<Vec<usize>>,
    ) -> Self {
        debug_assert!(edges.iter().all(|e| !e.is_empty() && e.windows(2).all(|w| w[0] < w[1])));
        Hypergraph {
            vertex_count,
            labels,
            edges,
        }
    }

    pub fn empty(vertex_count: usize) -> Self {
        Hypergraph {
            vertex_count,
            labels: None,
            edges: Vec::new(),
        }
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    pub fn edges(&self) -> &[Vec<usize>] {
        &self.edges
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn labels(&self) -> Option<&[Subset]> {
        self.labels.as_deref()
    }

    pub fn singleton_edge(&self) -> Option<usize> {
        self.edges.iter().position(|e| e.len() == 1)
    }

    /// Edge indices incident to each vertex.
    pub fn incidence(&self) -> Vec<Vec<usize>> {
        let mut inc = vec![Vec::new(); self.vertex_count];
        for (i, e) in self.edges.iter().enumerate() {
            for &v in e {
                inc[v].push(i);
            }
        }
        inc
    }

    pub fn degrees(&self) -> Vec<usize> {
        let mut d = vec![0; self.vertex_count];
        for &v in self.edges.iter().flatten() {
            d[v] += 1;
        }
        d
    }

    /// Removes edge `index`, keeping everything else.
    pub fn without_edge(&self, index: usize) -> Hypergraph {
        let mut edges = self.edges.clone();
        edges.remove(index);
        Hypergraph {
            vertex_count: self.vertex_count,
            labels: self.labels.clone(),
            edges,
        }
    }

    /// One edge per line, vertex indices separated by spaces.
    pub fn to_edge_list(&self) -> String {
        let mut out = String::new();
        for e in &self.edges {
            let line: Vec<String> = e.iter().map(|v| v.to_string()).collect();
            out.push_str(&line.join(" "));
            out.push('\n');
        }
        out
    }
}
