//! Brute-force reference implementations, independent of the search engines.
#![allow(dead_code)]

use rand::{RngExt, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// A hypergraph as plain data: vertex count and edges of 0-based indices.
#[derive(Debug, Clone)]
pub struct RawHypergraph {
    pub n: usize,
    pub edges: Vec<Vec<usize>>,
}

fn proper(edges: &[Vec<usize>], color: &[usize], alive: &[bool]) -> bool {
    edges
        .iter()
        .filter(|e| e.iter().all(|&v| alive[v]))
        .all(|e| e.iter().any(|&v| color[v] != color[e[0]]))
}

/// Whether the live part admits a proper coloring with at most `m` colors,
/// by walking every restricted growth string (set partition) into at most `m` blocks.
pub fn brute_colorable(h: &RawHypergraph, m: usize, alive: &[bool]) -> bool {
    let live: Vec<usize> = (0..h.n).filter(|&v| alive[v]).collect();
    if live.is_empty() {
        return true;
    }
    if m == 0 {
        return false;
    }
    let mut color = vec![0usize; h.n];
    fn rec(
        i: usize,
        used: usize,
        m: usize,
        live: &[usize],
        color: &mut [usize],
        h: &RawHypergraph,
        alive: &[bool],
    ) -> bool {
        if i == live.len() {
            return proper(&h.edges, color, alive);
        }
        for c in 0..(used + 1).min(m) {
            color[live[i]] = c;
            if rec(i + 1, used.max(c + 1), m, live, color, h, alive) {
                return true;
            }
        }
        false
    }
    rec(0, 0, m, &live, &mut color, h, alive)
}

/// Chromatic number by exhaustive enumeration; `None` if a singleton edge exists.
pub fn brute_chi(h: &RawHypergraph) -> Option<usize> {
    if h.edges.iter().any(|e| e.len() == 1) {
        return None;
    }
    let alive = vec![true; h.n];
    (0..=h.n).find(|&m| brute_colorable(h, m, &alive))
}

/// Defect by checking all `2^n` removal sets.
pub fn brute_defect(h: &RawHypergraph, r: usize) -> usize {
    let mut best = h.n;
    for removed in 0u32..(1 << h.n) {
        let size = removed.count_ones() as usize;
        if size >= best {
            continue;
        }
        let alive: Vec<bool> = (0..h.n).map(|v| removed & (1 << v) == 0).collect();
        let blocked = h.edges.iter().any(|e| e.len() == 1 && alive[e[0]]);
        if !blocked && brute_colorable(h, r, &alive) {
            best = size;
        }
    }
    best
}

/// Unordered `r`-sets of pairwise-disjoint members, over all index combinations.
pub fn brute_disjoint_tuples(members: &[Vec<usize>], r: usize) -> u64 {
    fn rec(members: &[Vec<usize>], start: usize, left: usize, chosen: &mut Vec<usize>) -> u64 {
        if left == 0 {
            let disjoint = chosen.iter().enumerate().all(|(a, &i)| {
                chosen[a + 1..]
                    .iter()
                    .all(|&j| members[i].iter().all(|x| !members[j].contains(x)))
            });
            return disjoint as u64;
        }
        let mut total = 0;
        for i in start..members.len() {
            chosen.push(i);
            total += rec(members, i + 1, left - 1, chosen);
            chosen.pop();
        }
        total
    }
    rec(members, 0, r, &mut Vec::new())
}

/// Random hypergraph with distinct edges of size 1..=max_edge (singletons only if allowed).
pub fn random_hypergraph(
    rng: &mut ChaCha8Rng,
    max_n: usize,
    max_edges: usize,
    max_edge: usize,
    singletons: bool,
) -> RawHypergraph {
    let n = rng.random_range(1..=max_n);
    let want = rng.random_range(0..=max_edges);
    let lo = if singletons { 1 } else { 2 };
    let mut edges: Vec<Vec<usize>> = Vec::new();
    if n < lo {
        return RawHypergraph { n, edges };
    }
    for _ in 0..want * 8 {
        if edges.len() >= want {
            break;
        }
        let size = rng.random_range(lo..=max_edge.min(n).max(lo));
        let mut e: Vec<usize> = rand::seq::index::sample(rng, n, size).into_vec();
        e.sort_unstable();
        if !edges.contains(&e) {
            edges.push(e);
        }
    }
    RawHypergraph { n, edges }
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Random family of distinct nonempty subsets of `[n]` (1-based labels).
pub fn random_family(rng: &mut ChaCha8Rng, n: usize, max_members: usize, max_size: usize) -> Vec<Vec<usize>> {
    let want = rng.random_range(0..=max_members);
    let mut out: Vec<Vec<usize>> = Vec::new();
    for _ in 0..want * 8 {
        if out.len() >= want {
            break;
        }
        let size = rng.random_range(1..=max_size.min(n));
        let mut s: Vec<usize> = rand::seq::index::sample(rng, n, size)
            .into_iter()
            .map(|i| i + 1)
            .collect();
        s.sort_unstable();
        if !out.contains(&s) {
            out.push(s);
        }
    }
    out
}

/// Parses DIMACS CNF into clauses of signed literals.
pub fn parse_dimacs(text: &str) -> (usize, Vec<Vec<i64>>) {
    let mut vars = 0;
    let mut clauses = Vec::new();
    for line in text.lines() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('c') {
            continue;
        }
        if let Some(rest) = line.strip_prefix("p cnf") {
            vars = rest.split_whitespace().next().unwrap().parse().unwrap();
            continue;
        }
        let lits: Vec<i64> = line.split_whitespace().map(|t| t.parse().unwrap()).collect();
        assert_eq!(*lits.last().unwrap(), 0, "clause must end in 0");
        clauses.push(lits[..lits.len() - 1].to_vec());
    }
    (vars, clauses)
}

/// Plain DPLL with unit propagation.
pub fn dpll(vars: usize, clauses: &[Vec<i64>]) -> bool {
    fn rec(assign: &mut [i8], clauses: &[Vec<i64>]) -> bool {
        loop {
            let mut unit = None;
            for c in clauses {
                let mut sat = false;
                let mut open = Vec::new();
                for &l in c {
                    let v = assign[l.unsigned_abs() as usize];
                    if v == 0 {
                        open.push(l);
                    } else if (v > 0) == (l > 0) {
                        sat = true;
                        break;
                    }
                }
                if sat {
                    continue;
                }
                match open.len() {
                    0 => return false,
                    1 => {
                        unit = Some(open[0]);
                        break;
                    }
                    _ => {}
                }
            }
            match unit {
                Some(l) => assign[l.unsigned_abs() as usize] = if l > 0 { 1 } else { -1 },
                None => break,
            }
        }
        let Some(v) = (1..assign.len()).find(|&v| assign[v] == 0) else {
            return true;
        };
        for val in [1i8, -1] {
            let mut next = assign.to_vec();
            next[v] = val;
            if rec(&mut next, clauses) {
                return true;
            }
        }
        false
    }
    rec(&mut vec![0; vars + 1], clauses)
}
