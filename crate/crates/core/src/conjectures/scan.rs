//! Seeded random search for families violating either gap inequality.
//!
//! Sample `i` draws from a ChaCha8 generator seeded with `seed` on stream `i`,
//! in this order: ground size `n`, uniformity `r`, target member count, then
//! members. Each member has a size drawn uniformly from the member-size range
//! (clamped to `n`) and a uniformly random label set of that size. Repeated
//! members are rejected and redrawn, up to `64 * (count + 1)` draws; a sample
//! that runs out of draws keeps the members it has. Results therefore depend
//! only on the parameters, never on thread count or scheduling.

use std::collections::BTreeSet;

use rand::seq::index;
use rand::{RngExt, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use super::report::{CertificateStore, REPORT_SCHEMA};
use super::{gap_pair, GapReport, Verdict};
use crate::error::{Error, Result};
use crate::limits::Limits;
use crate::setsystem::{SetSystem, Subset, MAX_GROUND};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ScanParams {
    /// Inclusive range of ground-set sizes.
    pub ground_size: (usize, usize),
    pub member_count: (usize, usize),
    pub member_size: (usize, usize),
    pub r: (usize, usize),
    pub samples: usize,
    pub seed: u64,
}

impl Default for ScanParams {
    fn default() -> Self {
        ScanParams {
            ground_size: (4, 10),
            member_count: (1, 12),
            member_size: (1, 3),
            r: (2, 3),
            samples: 100,
            seed: 0,
        }
    }
}

impl ScanParams {
    pub fn validate(&self) -> Result<()> {
        let ranges = [
            ("ground_size", self.ground_size),
            ("member_count", self.member_count),
            ("member_size", self.member_size),
            ("r", self.r),
        ];
        for (name, (lo, hi)) in ranges {
            if lo > hi {
                return Err(Error::InvalidParameter(format!("{name} range {lo}..={hi} is empty")));
            }
        }
        if self.ground_size.0 == 0 || self.ground_size.1 > MAX_GROUND {
            return Err(Error::InvalidParameter(format!(
                "ground_size must lie in 1..={MAX_GROUND}"
            )));
        }
        if self.member_size.0 == 0 {
            return Err(Error::InvalidParameter("member_size must start at 1 or more".into()));
        }
        if self.r.0 < 2 {
            return Err(Error::InvalidParameter("r must start at 2 or more".into()));
        }
        Ok(())
    }

    /// The family and uniformity of random sample `index`.
    pub fn sample(&self, index: usize) -> (SetSystem, usize) {
        let mut rng = ChaCha8Rng::seed_from_u64(self.seed);
        rng.set_stream(index as u64);
        let n = rng.random_range(self.ground_size.0..=self.ground_size.1);
        let r = rng.random_range(self.r.0..=self.r.1);
        let count = rng.random_range(self.member_count.0..=self.member_count.1);
        let (lo, hi) = (self.member_size.0.min(n), self.member_size.1.min(n));
        let mut members = BTreeSet::new();
        let mut draws = 0;
        while members.len() < count && draws < 64 * (count + 1) {
            draws += 1;
            let size = rng.random_range(lo..=hi);
            let mask = index::sample(&mut rng, n, size)
                .into_iter()
                .fold(0u128, |m, i| m | (1u128 << i));
            members.insert(Subset::from_mask(mask).expect("size is at least one"));
        }
        let f = SetSystem::from_subsets(n, members).expect("labels drawn from [n]");
        (f, r)
    }
}

/// A family injected into a scan alongside the random samples.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PlantedFamily {
    pub name: String,
    pub family: SetSystem,
    pub r: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ScanEntry {
    /// Random samples come first (`0..samples`), planted families after.
    pub index: usize,
    pub source: String,
    pub family: SetSystem,
    pub r: usize,
    pub frick: Option<GapReport>,
    pub weak: Option<GapReport>,
    /// Cap or budget that stopped this sample.
    pub skipped: Option<String>,
}

impl ScanEntry {
    pub fn violated(&self) -> bool {
        [&self.frick, &self.weak]
            .into_iter()
            .flatten()
            .any(|g| g.verdict == Verdict::Violated)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct ScanSummary {
    pub samples: usize,
    pub planted: usize,
    pub evaluated: usize,
    pub skipped: usize,
    pub frick_violations: usize,
    pub weak_violations: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ScanReport {
    pub params: ScanParams,
    /// Entries with a violation first, each group in index order.
    pub entries: Vec<ScanEntry>,
    pub summary: ScanSummary,
}

impl ScanReport {
    pub fn any_violation(&self) -> bool {
        self.summary.frick_violations + self.summary.weak_violations > 0
    }

    pub fn to_json(&self, store: &mut CertificateStore) -> Value {
        let entries: Vec<Value> = self
            .entries
            .iter()
            .map(|e| {
                let mut v = json!({
                    "index": e.index,
                    "source": e.source,
                    "family": e.family,
                    "r": e.r,
                });
                if let Some(g) = &e.frick {
                    v["frick"] = g.to_json(store);
                }
                if let Some(g) = &e.weak {
                    v["weak"] = g.to_json(store);
                }
                if let Some(s) = &e.skipped {
                    v["skipped"] = json!(s);
                }
                v
            })
            .collect();
        json!({
            "schema": REPORT_SCHEMA,
            "kind": "scan",
            "params": self.params,
            "entries": entries,
            "summary": self.summary,
        })
    }
}

fn evaluate(index: usize, source: String, family: SetSystem, r: usize, limits: &Limits) -> Result<ScanEntry> {
    let (frick, weak, skipped) = match gap_pair(&family, r, limits) {
        Ok((mut frick, mut weak)) => {
            frick.family.name = source.clone();
            weak.family.name = source.clone();
            (Some(frick), Some(weak), None)
        }
        Err(e) if e.is_cap() => (None, None, Some(e.to_string())),
        Err(e) => return Err(e),
    };
    Ok(ScanEntry {
        index,
        source,
        family,
        r,
        frick,
        weak,
        skipped,
    })
}

/// Evaluates both gaps on `params.samples` random families plus `planted`.
pub fn scan_random_families(params: &ScanParams, planted: &[PlantedFamily], limits: &Limits) -> Result<ScanReport> {
    params.validate()?;
    let total = params.samples + planted.len();
    let per_sample = Limits {
        threads: 1,
        ..limits.clone()
    };
    let job = |i: usize| {
        if i < params.samples {
            let (f, r) = params.sample(i);
            evaluate(i, format!("random#{i}"), f, r, &per_sample)
        } else {
            let p = &planted[i - params.samples];
            evaluate(i, format!("planted:{}", p.name), p.family.clone(), p.r, &per_sample)
        }
    };
    let mut entries: Vec<ScanEntry> = if limits.threads > 1 {
        limits.install(|| (0..total).into_par_iter().map(job).collect::<Result<Vec<_>>>())?
    } else {
        (0..total).map(job).collect::<Result<Vec<_>>>()?
    };
    entries.sort_by_key(|e| (!e.violated(), e.index));

    let count = |pick: fn(&ScanEntry) -> &Option<GapReport>| {
        entries
            .iter()
            .filter(|e| pick(e).as_ref().is_some_and(|g| g.verdict == Verdict::Violated))
            .count()
    };
    let skipped = entries.iter().filter(|e| e.skipped.is_some()).count();
    let summary = ScanSummary {
        samples: params.samples,
        planted: planted.len(),
        evaluated: total - skipped,
        skipped,
        frick_violations: count(|e| &e.frick),
        weak_violations: count(|e| &e.weak),
    };
    Ok(ScanReport {
        params: params.clone(),
        entries,
        summary,
    })
}
