//! The `r`-colorability defect: the fewest vertices whose removal leaves an
//! `r`-colorable induced hypergraph.
//!
//! Removal sets are tried by increasing size, each size in lexicographic
//! order, so the first success is the lexicographically smallest optimal set.
//! Every refuted removal set yields an obstruction: a vertex set whose induced
//! hypergraph is not `r`-colorable, shrunk until every single-vertex deletion
//! makes it colorable. Later removal sets that miss some obstruction are
//! refuted without search, and whole branches of the enumeration are cut once
//! an obstruction can no longer be hit.

use std::collections::HashMap;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::coloring::{is_m_colorable, verify_coloring, ColoringCertificate};
use crate::error::{Error, Result};
use crate::hypergraph::Hypergraph;
use crate::limits::Limits;
use crate::setsystem::binomial;

/// Vertex limit of the defect search (removal sets are 128-bit masks).
pub const MAX_DEFECT_VERTICES: usize = 128;

const BATCH: usize = 64;

/// A removal set and an `r`-coloring of what remains.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DefectCertificate {
    /// Removed vertex indices, ascending.
    pub removed: Vec<usize>,
    /// Colors of the remaining vertices in ascending index order.
    pub coloring: ColoringCertificate,
    pub r: usize,
}

/// How the removal sets of one size were all refuted.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct SizeRefutation {
    pub size: usize,
    /// Number of removal sets of this size, `C(n, size)`.
    pub candidates: u64,
    /// Refuted because they miss a known obstruction.
    pub by_obstruction: u64,
    /// Refuted by an exhaustive coloring search.
    pub by_search: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DefectResult {
    pub cd: usize,
    pub certificate: DefectCertificate,
    /// One record for each size `0..cd`.
    pub refuted_sizes: Vec<SizeRefutation>,
}

/// Outcome of checking all removal sets of size at most `b`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LowerBoundReport {
    pub r: usize,
    pub b: usize,
    pub sizes: Vec<SizeRefutation>,
    /// Total removal sets shown to fail.
    pub refuted_total: u64,
    /// A removal set of size at most `b` that works, if one exists.
    pub counterwitness: Option<DefectCertificate>,
}

impl LowerBoundReport {
    /// Whether `cd_r > b` was established.
    pub fn refutes(&self) -> bool {
        self.counterwitness.is_none()
    }
}

/// The hypergraph induced on the vertices not in `removed`, plus the map from new to old indices.
///
/// Only edges lying entirely outside `removed` survive.
pub fn induced_on_remaining(h: &Hypergraph, removed: &[usize]) -> (Hypergraph, Vec<usize>) {
    let n = h.vertex_count();
    let mut gone = vec![false; n];
    for &v in removed {
        if v < n {
            gone[v] = true;
        }
    }
    let mut new_index = vec![usize::MAX; n];
    let mut kept = Vec::with_capacity(n);
    for v in 0..n {
        if !gone[v] {
            new_index[v] = kept.len();
            kept.push(v);
        }
    }
    let edges = h
        .edges()
        .iter()
        .filter(|e| e.iter().all(|&v| !gone[v]))
        .map(|e| e.iter().map(|&v| new_index[v]).collect())
        .collect();
    let labels = h.labels().map(|ls| kept.iter().map(|&v| ls[v]).collect());
    (Hypergraph::from_parts_unchecked(kept.len(), labels, edges), kept)
}

fn mask_to_vec(mask: u128) -> Vec<usize> {
    let mut out = Vec::with_capacity(mask.count_ones() as usize);
    let mut rest = mask;
    while rest != 0 {
        out.push(rest.trailing_zeros() as usize);
        rest &= rest - 1;
    }
    out
}

fn to_u64(x: u128) -> u64 {
    u64::try_from(x).unwrap_or(u64::MAX)
}

/// `r`-coloring of the hypergraph left after removing `removed`; `None` if there is none.
fn coloring_after(h: &Hypergraph, r: usize, removed: u128, limits: &Limits) -> Result<Option<ColoringCertificate>> {
    let (induced, _) = induced_on_remaining(h, &mask_to_vec(removed));
    if induced.singleton_edge().is_some() {
        return Ok(None);
    }
    is_m_colorable(&induced, r, limits)
}

struct Stage {
    stats: SizeRefutation,
    witness: Option<(u128, ColoringCertificate)>,
}

struct DefectSearch<'a> {
    h: &'a Hypergraph,
    r: usize,
    n: usize,
    full: u128,
    limits: &'a Limits,
    obstructions: Vec<u128>,
    /// Colorability of induced sub-hypergraphs, keyed by the kept-vertex mask.
    memo: HashMap<u128, bool>,
    steps: u64,
}

impl<'a> DefectSearch<'a> {
    fn new(h: &'a Hypergraph, r: usize, limits: &'a Limits) -> Result<Self> {
        let n = h.vertex_count();
        if n > MAX_DEFECT_VERTICES {
            return Err(Error::CapExceeded {
                what: format!("defect search on {n} vertices"),
                cap: MAX_DEFECT_VERTICES as u64,
            });
        }
        let full = if n == 128 { u128::MAX } else { (1u128 << n) - 1 };
        Ok(DefectSearch {
            h,
            r,
            n,
            full,
            limits,
            obstructions: Vec::new(),
            memo: HashMap::new(),
            steps: 0,
        })
    }

    fn kept_is_colorable(&mut self, kept: u128) -> Result<bool> {
        if let Some(&ok) = self.memo.get(&kept) {
            return Ok(ok);
        }
        let ok = coloring_after(self.h, self.r, self.full & !kept, self.limits)?.is_some();
        self.memo.insert(kept, ok);
        Ok(ok)
    }

    /// Shrinks a non-colorable kept set to a vertex-minimal one.
    fn learn_obstruction(&mut self, kept: u128) -> Result<()> {
        let mut core = kept;
        for v in mask_to_vec(kept) {
            let smaller = core & !(1u128 << v);
            if !self.kept_is_colorable(smaller)? {
                core = smaller;
            }
        }
        self.memo.insert(core, false);
        self.obstructions.push(core);
        Ok(())
    }

    fn flush(
        &mut self,
        batch: &mut Vec<u128>,
        stats: &mut SizeRefutation,
    ) -> Result<Option<(u128, ColoringCertificate)>> {
        if batch.is_empty() {
            return Ok(None);
        }
        self.limits.check_deadline()?;
        let (h, r, limits) = (self.h, self.r, self.limits);
        let results: Vec<Result<Option<ColoringCertificate>>> = if limits.threads > 1 {
            limits.install(|| batch.par_iter().map(|&b| coloring_after(h, r, b, limits)).collect())
        } else {
            batch.iter().map(|&b| coloring_after(h, r, b, limits)).collect()
        };
        for (&removed, res) in batch.iter().zip(results) {
            if let Some(cert) = res? {
                return Ok(Some((removed, cert)));
            }
            stats.by_search += 1;
        }
        let first = batch[0];
        for &removed in batch.iter() {
            self.memo.insert(self.full & !removed, false);
        }
        batch.clear();
        self.learn_obstruction(self.full & !first)?;
        Ok(None)
    }

    fn enumerate(
        &mut self,
        start: usize,
        left: usize,
        prefix: u128,
        batch: &mut Vec<u128>,
        stats: &mut SizeRefutation,
    ) -> Result<Option<(u128, ColoringCertificate)>> {
        self.steps += 1;
        if self.steps & 0xFFF == 0 {
            self.limits.check_deadline()?;
        }
        // Every obstruction must be hit by the prefix or by some later index.
        let reachable = if left == 0 || start >= 128 {
            0
        } else {
            u128::MAX << start
        };
        if self.obstructions.iter().any(|&o| o & prefix == 0 && o & reachable == 0) {
            stats.by_obstruction = stats
                .by_obstruction
                .saturating_add(to_u64(binomial(self.n - start, left)));
            return Ok(None);
        }
        if left == 0 {
            batch.push(prefix);
            if batch.len() >= BATCH {
                return self.flush(batch, stats);
            }
            return Ok(None);
        }
        for i in start..=(self.n - left) {
            if let Some(w) = self.enumerate(i + 1, left - 1, prefix | (1u128 << i), batch, stats)? {
                return Ok(Some(w));
            }
        }
        Ok(None)
    }

    fn stage(&mut self, size: usize) -> Result<Stage> {
        let mut stats = SizeRefutation {
            size,
            candidates: to_u64(binomial(self.n, size)),
            by_obstruction: 0,
            by_search: 0,
        };
        let mut batch = Vec::with_capacity(BATCH);
        let mut witness = self.enumerate(0, size, 0, &mut batch, &mut stats)?;
        if witness.is_none() {
            witness = self.flush(&mut batch, &mut stats)?;
        }
        Ok(Stage { stats, witness })
    }

    fn certificate(&self, removed: u128, coloring: ColoringCertificate) -> DefectCertificate {
        DefectCertificate {
            removed: mask_to_vec(removed),
            coloring,
            r: self.r,
        }
    }
}

/// Exact `cd_r(H)` with the lexicographically smallest optimal removal set.
pub fn colorability_defect(h: &Hypergraph, r: usize, limits: &Limits) -> Result<DefectResult> {
    let mut search = DefectSearch::new(h, r, limits)?;
    let mut refuted_sizes = Vec::new();
    for size in 0..=search.n {
        if let Some(cap) = limits.max_defect_size {
            if size > cap {
                return Err(Error::CapExceeded {
                    what: format!("removal-set size {size}"),
                    cap: cap as u64,
                });
            }
        }
        let stage = search.stage(size)?;
        if let Some((removed, coloring)) = stage.witness {
            return Ok(DefectResult {
                cd: size,
                certificate: search.certificate(removed, coloring),
                refuted_sizes,
            });
        }
        refuted_sizes.push(stage.stats);
    }
    unreachable!("removing every vertex always leaves a colorable hypergraph")
}

/// Checks every removal set of size at most `b`; either all fail (so `cd_r > b`) or one works.
pub fn defect_lower_bound_report(h: &Hypergraph, r: usize, b: usize, limits: &Limits) -> Result<LowerBoundReport> {
    let mut search = DefectSearch::new(h, r, limits)?;
    if b > search.n {
        return Err(Error::InvalidParameter(format!(
            "b = {b} exceeds the {} vertices",
            search.n
        )));
    }
    let mut sizes = Vec::new();
    for size in 0..=b {
        let stage = search.stage(size)?;
        if let Some((removed, coloring)) = stage.witness {
            let refuted_total = sizes.iter().map(|s: &SizeRefutation| s.candidates).sum();
            return Ok(LowerBoundReport {
                r,
                b,
                sizes,
                refuted_total,
                counterwitness: Some(search.certificate(removed, coloring)),
            });
        }
        sizes.push(stage.stats);
    }
    let refuted_total = sizes.iter().map(|s| s.candidates).sum();
    Ok(LowerBoundReport {
        r,
        b,
        sizes,
        refuted_total,
        counterwitness: None,
    })
}

/// Whether `cert.coloring` properly colors the hypergraph left after removing `cert.removed`
/// with at most `cert.r` colors.
pub fn verify_defect_certificate(h: &Hypergraph, cert: &DefectCertificate) -> Result<bool> {
    let n = h.vertex_count();
    if let Some(&v) = cert.removed.iter().find(|&&v| v >= n) {
        return Err(Error::InvalidCertificate(format!("removed vertex {v} does not exist")));
    }
    if cert.removed.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::InvalidCertificate(
            "removed vertices must be strictly ascending".into(),
        ));
    }
    let (induced, _) = induced_on_remaining(h, &cert.removed);
    if cert.coloring.num_colors as usize > cert.r {
        return Ok(false);
    }
    verify_coloring(&induced, &cert.coloring)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::setsystem::{complete_k_subsets, family_f_nr, family_prop2};

    fn cycle(n: usize) -> Hypergraph {
        Hypergraph::new(n, None, (0..n).map(|i| vec![i, (i + 1) % n]).collect()).unwrap()
    }

    fn lim() -> Limits {
        Limits::default()
    }

    #[test]
    fn induced_examples() {
        let (p, map) = induced_on_remaining(&cycle(5), &[0]);
        assert_eq!((p.vertex_count(), p.edge_count()), (4, 3));
        assert_eq!(map, vec![1, 2, 3, 4]);
        let c5 = cycle(5);
        assert_eq!(induced_on_remaining(&c5, &[]).0, c5);

        // Removing label 3 from the r = 2 family keeps the triangle on labels 1, 5, 6.
        let h = family_prop2(2).unwrap().as_hypergraph();
        let (g, map) = induced_on_remaining(&h, &[2]);
        let old: Vec<Vec<usize>> = g
            .edges()
            .iter()
            .map(|e| e.iter().map(|&v| map[v] + 1).collect())
            .collect();
        for tri in [vec![1, 5], vec![1, 6], vec![5, 6]] {
            assert!(old.contains(&tri));
        }
        assert_eq!(g.edge_count(), 5);
    }

    #[test]
    fn defect_examples() {
        let d = colorability_defect(&family_f_nr(5, 2).unwrap().as_hypergraph(), 2, &lim()).unwrap();
        assert_eq!(d.cd, 1);
        assert_eq!(d.certificate.removed, vec![0]);

        let h = family_prop2(2).unwrap().as_hypergraph();
        let d = colorability_defect(&h, 2, &lim()).unwrap();
        assert_eq!(d.cd, 2);
        assert!(verify_defect_certificate(&h, &d.certificate).unwrap());
        assert_eq!(
            d.refuted_sizes.iter().map(|s| s.candidates).collect::<Vec<_>>(),
            vec![1, 6]
        );

        let d = colorability_defect(&complete_k_subsets(9, 2).unwrap().as_hypergraph(), 3, &lim()).unwrap();
        assert_eq!(d.cd, 6);

        let d = colorability_defect(&Hypergraph::empty(4), 3, &lim()).unwrap();
        assert_eq!((d.cd, d.refuted_sizes.len()), (0, 0));
    }

    #[test]
    fn singleton_edges_must_be_removed() {
        let h = Hypergraph::new(3, None, vec![vec![1], vec![0, 2]]).unwrap();
        let d = colorability_defect(&h, 1, &lim()).unwrap();
        assert_eq!(d.cd, 2);
        assert_eq!(d.certificate.removed, vec![0, 1]);
        let d = colorability_defect(&h, 2, &lim()).unwrap();
        assert_eq!((d.cd, d.certificate.removed.clone()), (1, vec![1]));
    }

    #[test]
    fn verify_examples() {
        let c5 = cycle(5);
        let path = DefectCertificate {
            removed: vec![0],
            coloring: ColoringCertificate {
                colors: vec![1, 2, 1, 2],
                num_colors: 2,
            },
            r: 2,
        };
        assert!(verify_defect_certificate(&c5, &path).unwrap());
        let none = DefectCertificate {
            removed: vec![],
            coloring: ColoringCertificate {
                colors: vec![1, 2, 1, 2, 1],
                num_colors: 2,
            },
            r: 2,
        };
        assert!(!verify_defect_certificate(&c5, &none).unwrap());
        let all = DefectCertificate {
            removed: vec![0, 1, 2, 3, 4],
            coloring: ColoringCertificate {
                colors: vec![],
                num_colors: 0,
            },
            r: 2,
        };
        assert!(verify_defect_certificate(&c5, &all).unwrap());
        let bad = DefectCertificate {
            removed: vec![7],
            ..all.clone()
        };
        assert!(verify_defect_certificate(&c5, &bad).is_err());
        let too_many = DefectCertificate {
            removed: vec![0],
            coloring: ColoringCertificate {
                colors: vec![1, 2, 3, 1],
                num_colors: 3,
            },
            r: 2,
        };
        assert!(!verify_defect_certificate(&c5, &too_many).unwrap());
    }

    #[test]
    fn lower_bound_reports() {
        let rep = defect_lower_bound_report(&family_prop2(3).unwrap().as_hypergraph(), 3, 2, &lim()).unwrap();
        assert!(rep.refutes());
        assert_eq!(rep.refuted_total, 121);

        let rep = defect_lower_bound_report(&Hypergraph::empty(3), 2, 0, &lim()).unwrap();
        assert_eq!(rep.counterwitness.unwrap().removed, Vec::<usize>::new());

        let rep = defect_lower_bound_report(&cycle(5), 2, 0, &lim()).unwrap();
        assert!(rep.refutes());
        assert_eq!(rep.refuted_total, 1);
        let rep = defect_lower_bound_report(&cycle(5), 2, 1, &lim()).unwrap();
        assert_eq!(rep.counterwitness.unwrap().removed, vec![0]);
    }

    #[test]
    fn defect_size_cap() {
        let h = complete_k_subsets(9, 2).unwrap().as_hypergraph();
        let capped = Limits {
            max_defect_size: Some(3),
            ..Limits::default()
        };
        assert!(matches!(
            colorability_defect(&h, 3, &capped),
            Err(Error::CapExceeded { .. })
        ));
    }

    #[test]
    fn threads_do_not_change_results() {
        let h = family_prop2(3).unwrap().as_hypergraph();
        let one = colorability_defect(&h, 3, &lim()).unwrap();
        let four = colorability_defect(&h, 3, &Limits::default().with_threads(4)).unwrap();
        assert_eq!(one, four);
    }
}
