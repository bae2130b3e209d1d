//! Generalized Kneser hypergraphs `KG^r(F)`: one vertex per member of `F`,
//! one edge per `r`-set of pairwise-disjoint members.

use crate::error::{Error, Result};
use crate::hypergraph::Hypergraph;
use crate::limits::Limits;
use crate::setsystem::SetSystem;

fn check_r(r: usize) -> Result<()> {
    if r < 2 {
        return Err(Error::InvalidParameter(format!(
            "Kneser uniformity r must be at least 2, got {r}"
        )));
    }
    Ok(())
}

/// Depth-first walk over index tuples `i_1 < ... < i_r` of pairwise-disjoint members.
///
/// Members are in canonical (size-ascending) order, so once the smallest
/// remaining member cannot fit `left` more times into the unused labels, no
/// later member can either. `visit` returns `false` to stop the walk.
struct Walk<'a> {
    masks: Vec<u128>,
    sizes: Vec<u32>,
    ground: u32,
    limits: &'a Limits,
    steps: u64,
}

impl Walk<'_> {
    fn new<'a>(f: &SetSystem, limits: &'a Limits) -> Walk<'a> {
        Walk {
            masks: f.members().iter().map(|m| m.mask()).collect(),
            sizes: f.members().iter().map(|m| m.len() as u32).collect(),
            ground: f.ground_size() as u32,
            limits,
            steps: 0,
        }
    }

    fn run(&mut self, r: usize, visit: &mut dyn FnMut(&[usize]) -> bool) -> Result<bool> {
        let mut stack = Vec::with_capacity(r);
        self.rec(0, r, 0, &mut stack, visit)
    }

    fn rec(
        &mut self,
        start: usize,
        left: usize,
        used: u128,
        stack: &mut Vec<usize>,
        visit: &mut dyn FnMut(&[usize]) -> bool,
    ) -> Result<bool> {
        if left == 0 {
            return Ok(visit(stack));
        }
        let used_count = used.count_ones();
        let m = self.masks.len();
        let mut i = start;
        while i + left <= m {
            if used_count + self.sizes[i] * left as u32 > self.ground {
                break;
            }
            self.steps += 1;
            if self.steps & 0xFFFF == 0 {
                self.limits.check_deadline()?;
            }
            if self.masks[i] & used == 0 {
                stack.push(i);
                let go_on = self.rec(i + 1, left - 1, used | self.masks[i], stack, visit)?;
                stack.pop();
                if !go_on {
                    return Ok(false);
                }
            }
            i += 1;
        }
        Ok(true)
    }
}

/// `KG^r(F)` with vertex `i` labelled by the `i`-th member of `F` and edges in lexicographic order.
pub fn build_kneser(f: &SetSystem, r: usize, limits: &Limits) -> Result<Hypergraph> {
    check_r(r)?;
    let mut edges = Vec::new();
    let mut overflow = false;
    Walk::new(f, limits).run(r, &mut |tuple| {
        if edges.len() as u64 >= limits.max_edges {
            overflow = true;
            return false;
        }
        edges.push(tuple.to_vec());
        true
    })?;
    if overflow {
        return Err(Error::CapExceeded {
            what: format!("KG^{r} edge count"),
            cap: limits.max_edges,
        });
    }
    Ok(Hypergraph::from_parts_unchecked(
        f.len(),
        Some(f.members().to_vec()),
        edges,
    ))
}

/// Whether some `r` members are pairwise disjoint. Stops at the first witness.
pub fn has_r_pairwise_disjoint(f: &SetSystem, r: usize) -> Result<bool> {
    check_r(r)?;
    Ok(disjoint_witness(f, r, &Limits::default())?.is_some())
}

/// Indices of the lexicographically first `r` pairwise-disjoint members, if any.
pub fn disjoint_witness(f: &SetSystem, r: usize, limits: &Limits) -> Result<Option<Vec<usize>>> {
    check_r(r)?;
    let mut found = None;
    Walk::new(f, limits).run(r, &mut |tuple| {
        found = Some(tuple.to_vec());
        false
    })?;
    Ok(found)
}

/// Number of unordered `r`-sets of pairwise-disjoint members; the edge count of `KG^r(F)`.
pub fn count_disjoint_r_tuples(f: &SetSystem, r: usize, limits: &Limits) -> Result<u64> {
    check_r(r)?;
    let mut count = 0u64;
    let mut overflow = false;
    Walk::new(f, limits).run(r, &mut |_| {
        if count >= limits.max_edges {
            overflow = true;
            return false;
        }
        count += 1;
        true
    })?;
    if overflow {
        return Err(Error::CapExceeded {
            what: format!("number of disjoint {r}-tuples"),
            cap: limits.max_edges,
        });
    }
    Ok(count)
}
