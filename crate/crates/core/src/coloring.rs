//! Proper colorings of hypergraphs: no edge may be monochromatic.
//!
//! The exact search assigns colors vertex by vertex, always branching on the
//! uncolored vertex with the fewest remaining colors (ties: higher degree,
//! then lower index). A vertex may only open one new color beyond those
//! already in use, which removes color-permutation symmetry. When all but one
//! vertex of an edge carry the same color, that color is struck from the last
//! vertex's domain; for graphs this is ordinary forward checking.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::hypergraph::Hypergraph;
use crate::kneser::build_kneser;
use crate::limits::Limits;
use crate::setsystem::{filter_part, SetSystem, StabilityKind};

/// Largest color count the exact search handles (domains are 64-bit masks).
pub const MAX_SEARCH_COLORS: usize = 64;

/// Colors `1..=num_colors`, one per vertex.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ColoringCertificate {
    pub colors: Vec<u32>,
    pub num_colors: u32,
}

impl ColoringCertificate {
    pub fn uniform(vertex_count: usize, num_colors: u32) -> Self {
        ColoringCertificate {
            colors: vec![1; vertex_count],
            num_colors,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ChiResult {
    pub chi: usize,
    /// A `chi`-coloring. Empty when the hypergraph has no vertices.
    pub certificate: ColoringCertificate,
    /// Color counts shown impossible, always `1..chi` when edges exist.
    pub refuted: Vec<usize>,
}

fn reject_singletons(h: &Hypergraph) -> Result<()> {
    match h.singleton_edge() {
        Some(edge) => Err(Error::SingletonEdge { edge }),
        None => Ok(()),
    }
}

struct Search<'a> {
    edges: &'a [Vec<usize>],
    incidence: Vec<Vec<usize>>,
    degree: Vec<usize>,
    m: u32,
    color: Vec<u32>,
    domain: Vec<u64>,
    trail: Vec<(usize, u64)>,
    uncolored: usize,
    limits: &'a Limits,
    nodes: u64,
}

impl<'a> Search<'a> {
    fn new(h: &'a Hypergraph, m: u32, limits: &'a Limits) -> Self {
        let n = h.vertex_count();
        let full = if m == 64 { u64::MAX } else { (1u64 << m) - 1 };
        Search {
            edges: h.edges(),
            incidence: h.incidence(),
            degree: h.degrees(),
            m,
            color: vec![0; n],
            domain: vec![full; n],
            trail: Vec::new(),
            uncolored: n,
            limits,
            nodes: 0,
        }
    }

    fn open_colors(&self, max_used: u32) -> u64 {
        let k = self.m.min(max_used + 1);
        if k == 64 {
            u64::MAX
        } else {
            (1u64 << k) - 1
        }
    }

    fn pick_vertex(&self, open: u64) -> Option<(usize, u64)> {
        let mut best: Option<(usize, u64)> = None;
        let mut best_key = (u32::MAX, 0usize);
        for v in 0..self.color.len() {
            if self.color[v] != 0 {
                continue;
            }
            let avail = self.domain[v] & open;
            let key = (avail.count_ones(), self.degree[v]);
            if key.0 < best_key.0 || (key.0 == best_key.0 && key.1 > best_key.1) {
                best_key = key;
                best = Some((v, avail));
                if key.0 == 0 {
                    break;
                }
            }
        }
        best
    }

    /// Colors `v` with `c` and prunes neighbours' domains. `false` on a wipe-out.
    fn assign(&mut self, v: usize, c: u32) -> bool {
        self.color[v] = c;
        self.uncolored -= 1;
        let bit = 1u64 << (c - 1);
        for &e in &self.incidence[v] {
            let mut last = None;
            let mut open = 0;
            let mut same = true;
            for &u in &self.edges[e] {
                if u == v {
                    continue;
                }
                match self.color[u] {
                    0 => {
                        open += 1;
                        last = Some(u);
                    }
                    cu if cu != c => {
                        same = false;
                        break;
                    }
                    _ => {}
                }
            }
            if !same {
                continue;
            }
            match (open, last) {
                (0, _) => return false,
                (1, Some(u)) if self.domain[u] & bit != 0 => {
                    self.trail.push((u, self.domain[u]));
                    self.domain[u] &= !bit;
                    if self.domain[u] == 0 {
                        return false;
                    }
                }
                _ => {}
            }
        }
        true
    }

    fn undo(&mut self, v: usize, mark: usize) {
        while self.trail.len() > mark {
            let (u, d) = self.trail.pop().expect("trail length checked");
            self.domain[u] = d;
        }
        self.color[v] = 0;
        self.uncolored += 1;
    }

    fn solve(&mut self, max_used: u32) -> Result<bool> {
        if self.uncolored == 0 {
            return Ok(true);
        }
        self.nodes += 1;
        if self.nodes & 0x3FFF == 0 {
            self.limits.check_deadline()?;
        }
        let Some((v, mut avail)) = self.pick_vertex(self.open_colors(max_used)) else {
            return Ok(true);
        };
        while avail != 0 {
            let c = avail.trailing_zeros() + 1;
            avail &= avail - 1;
            let mark = self.trail.len();
            if self.assign(v, c) && self.solve(max_used.max(c))? {
                return Ok(true);
            }
            self.undo(v, mark);
        }
        Ok(false)
    }
}

/// A proper `m`-coloring if one exists. `Ok(None)` is a proof that none exists.
pub fn is_m_colorable(h: &Hypergraph, m: usize, limits: &Limits) -> Result<Option<ColoringCertificate>> {
    reject_singletons(h)?;
    if m == 0 {
        return Ok((h.vertex_count() == 0).then(|| ColoringCertificate {
            colors: Vec::new(),
            num_colors: 0,
        }));
    }
    if h.edge_count() == 0 {
        return Ok(Some(ColoringCertificate::uniform(h.vertex_count(), m as u32)));
    }
    if m == 1 {
        return Ok(None);
    }
    // More colors than vertices never help.
    let searched = m.min(h.vertex_count());
    if searched > MAX_SEARCH_COLORS {
        return Err(Error::CapExceeded {
            what: format!("search over {m} colors"),
            cap: MAX_SEARCH_COLORS as u64,
        });
    }
    let mut search = Search::new(h, searched as u32, limits);
    if search.solve(0)? {
        Ok(Some(ColoringCertificate {
            colors: search.color,
            num_colors: m as u32,
        }))
    } else {
        Ok(None)
    }
}

/// Vertices by descending degree, ties by index.
pub fn degree_order(h: &Hypergraph) -> Vec<usize> {
    let deg = h.degrees();
    let mut order: Vec<usize> = (0..h.vertex_count()).collect();
    order.sort_by(|&a, &b| deg[b].cmp(&deg[a]).then(a.cmp(&b)));
    order
}

/// First-fit coloring along `order`, which must be a permutation of the vertices.
pub fn greedy_coloring(h: &Hypergraph, order: &[usize]) -> Result<ColoringCertificate> {
    reject_singletons(h)?;
    let n = h.vertex_count();
    let mut seen = vec![false; n];
    if order.len() != n || order.iter().any(|&v| v >= n || std::mem::replace(&mut seen[v], true)) {
        return Err(Error::InvalidParameter(
            "greedy order is not a permutation of the vertices".into(),
        ));
    }
    let incidence = h.incidence();
    let mut color = vec![0u32; n];
    let mut forbidden = Vec::new();
    for &v in order {
        forbidden.clear();
        for &e in &incidence[v] {
            let mut shared = None;
            let full = h.edges()[e].iter().filter(|&&u| u != v).all(|&u| {
                let cu = color[u];
                cu != 0 && *shared.get_or_insert(cu) == cu
            });
            if let (true, Some(c)) = (full, shared) {
                forbidden.push(c);
            }
        }
        color[v] = (1..).find(|c| !forbidden.contains(c)).expect("unbounded range");
    }
    let num_colors = color.iter().copied().max().unwrap_or(0);
    Ok(ColoringCertificate {
        colors: color,
        num_colors,
    })
}

/// Number of colors used by [`greedy_coloring`] along `order`; an upper bound on chi.
pub fn greedy_upper_bound(h: &Hypergraph, order: &[usize]) -> Result<usize> {
    Ok(greedy_coloring(h, order)?.num_colors as usize)
}

/// Exact chromatic number: 0 without vertices, 1 without edges.
pub fn chromatic_number(h: &Hypergraph, limits: &Limits) -> Result<ChiResult> {
    reject_singletons(h)?;
    let n = h.vertex_count();
    if n == 0 {
        return Ok(ChiResult {
            chi: 0,
            certificate: ColoringCertificate {
                colors: Vec::new(),
                num_colors: 0,
            },
            refuted: Vec::new(),
        });
    }
    if h.edge_count() == 0 {
        return Ok(ChiResult {
            chi: 1,
            certificate: ColoringCertificate::uniform(n, 1),
            refuted: Vec::new(),
        });
    }
    let greedy = greedy_coloring(h, &degree_order(h))?;
    let upper = greedy.num_colors as usize;
    let mut refuted = vec![1];
    for m in 2..upper {
        if let Some(cert) = is_m_colorable(h, m, limits)? {
            return Ok(ChiResult {
                chi: m,
                certificate: cert,
                refuted,
            });
        }
        refuted.push(m);
    }
    Ok(ChiResult {
        chi: upper,
        certificate: greedy,
        refuted,
    })
}

/// Whether every edge sees at least two colors and every color lies in `1..=num_colors`.
pub fn verify_coloring(h: &Hypergraph, cert: &ColoringCertificate) -> Result<bool> {
    if cert.colors.len() != h.vertex_count() {
        return Err(Error::LengthMismatch {
            expected: h.vertex_count(),
            got: cert.colors.len(),
        });
    }
    if cert.colors.iter().any(|&c| c == 0 || c > cert.num_colors) {
        return Ok(false);
    }
    Ok(h.edges().iter().all(|e| {
        let first = cert.colors[e[0]];
        e[1..].iter().any(|&v| cert.colors[v] != first)
    }))
}

/// Lifts a proper coloring of `KG^r(F_r-stab)` to `KG^r(F_almost-r-stab)`.
///
/// Stable members keep their color; every other almost-stable member gets one
/// fresh color. Those members all meet `{1, ..., r-1}`, so no `r` of them are
/// pairwise disjoint and the fresh class spans no edge.
pub fn extend_stable_coloring(
    f: &SetSystem,
    r: usize,
    cert: &ColoringCertificate,
    limits: &Limits,
) -> Result<ColoringCertificate> {
    let stable = filter_part(f, r, StabilityKind::Stable);
    let stable_kg = build_kneser(&stable, r, limits)?;
    if !verify_coloring(&stable_kg, cert)? {
        return Err(Error::InvalidCertificate(format!(
            "not a proper coloring of KG^{r} of the {r}-stable part"
        )));
    }
    let almost = filter_part(f, r, StabilityKind::AlmostStable);
    let fresh = cert.num_colors + 1;
    let colors: Vec<u32> = almost
        .members()
        .iter()
        .map(|&m| stable.index_of(m).map_or(fresh, |i| cert.colors[i]))
        .collect();
    let num_colors = if colors.contains(&fresh) {
        fresh
    } else {
        cert.num_colors
    };
    Ok(ColoringCertificate { colors, num_colors })
}

/// DIMACS CNF that is satisfiable iff `h` has a proper `m`-coloring.
///
/// Variable `v * m + c` (vertex `v` from 0, color `c` in `1..=m`) means
/// "vertex `v` may take color `c`". Each vertex gets one at-least-one-color
/// clause; each edge and color gets a clause forbidding the whole edge from
/// taking that color. Any satisfying assignment yields a coloring by picking
/// one true color per vertex.
pub fn export_cnf(h: &Hypergraph, m: usize) -> Result<String> {
    reject_singletons(h)?;
    if m == 0 {
        return Err(Error::InvalidParameter("m must be positive".into()));
    }
    let n = h.vertex_count();
    let var = |v: usize, c: usize| v * m + c;
    let clauses = n + h.edge_count() * m;
    let mut out = String::new();
    let _ = writeln!(
        out,
        "c proper {m}-coloring of a hypergraph with {n} vertices and {} edges",
        h.edge_count()
    );
    let _ = writeln!(
        out,
        "c variable v*{m}+c <=> vertex v (0-based) may take color c (1..={m})"
    );
    let _ = writeln!(out, "p cnf {} {}", n * m, clauses);
    for v in 0..n {
        for c in 1..=m {
            let _ = write!(out, "{} ", var(v, c));
        }
        out.push_str("0\n");
    }
    for e in h.edges() {
        for c in 1..=m {
            for &v in e {
                let _ = write!(out, "-{} ", var(v, c));
            }
            out.push_str("0\n");
        }
    }
    Ok(out)
}
