//! Set systems on a ground set `[n] = {1, ..., n}` and the stability filters.
//!
//! Members are stored as bitmasks (bit `i - 1` for label `i`), so the ground
//! set is limited to [`MAX_GROUND`] labels.

use std::cmp::Ordering;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::hypergraph::Hypergraph;

pub const MAX_GROUND: usize = 128;

/// Refuse to materialize `C(n, k)` families larger than this.
pub const MAX_COMPLETE_MEMBERS: u128 = 5_000_000;

/// A nonempty subset of `[n]`.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct Subset(u128);

impl Subset {
    /// Validates `elements` against `[1, n]`. `member` is only used in error messages.
    pub fn new(elements: &[usize], n: usize, member: usize) -> Result<Self> {
        if elements.is_empty() {
            return Err(Error::EmptyMember { member });
        }
        let mut mask = 0u128;
        for &e in elements {
            if e == 0 || e > n || e > MAX_GROUND {
                return Err(Error::OutOfRange { member, element: e, n });
            }
            let bit = 1u128 << (e - 1);
            if mask & bit != 0 {
                return Err(Error::RepeatedElement { member, element: e });
            }
            mask |= bit;
        }
        Ok(Subset(mask))
    }

    pub fn from_mask(mask: u128) -> Option<Self> {
        (mask != 0).then_some(Subset(mask))
    }

    pub fn mask(self) -> u128 {
        self.0
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    /// Always false: subsets are nonempty by construction.
    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    /// Labels in ascending order.
    pub fn elements(self) -> impl Iterator<Item = usize> {
        let mut rest = self.0;
        std::iter::from_fn(move || {
            if rest == 0 {
                return None;
            }
            let i = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            Some(i + 1)
        })
    }

    pub fn to_vec(self) -> Vec<usize> {
        self.elements().collect()
    }

    pub fn contains(self, label: usize) -> bool {
        (1..=MAX_GROUND).contains(&label) && self.0 & (1u128 << (label - 1)) != 0
    }

    pub fn min_label(self) -> usize {
        self.0.trailing_zeros() as usize + 1
    }

    pub fn max_label(self) -> usize {
        128 - self.0.leading_zeros() as usize
    }

    pub fn is_disjoint(self, other: Subset) -> bool {
        self.0 & other.0 == 0
    }
}

/// Canonical order: by cardinality, then lexicographic on the sorted labels.
impl Ord for Subset {
    fn cmp(&self, other: &Self) -> Ordering {
        self.len().cmp(&other.len()).then_with(|| {
            let diff = self.0 ^ other.0;
            if diff == 0 {
                Ordering::Equal
            } else if self.0 & (diff & diff.wrapping_neg()) != 0 {
                // The smallest label where the two differ belongs to `self`.
                Ordering::Less
            } else {
                Ordering::Greater
            }
        })
    }
}

impl PartialOrd for Subset {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for Subset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.elements()).finish()
    }
}

impl Serialize for Subset {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_seq(self.elements())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum StabilityKind {
    /// `s <= |i - j| <= n - s` for distinct members `i, j`.
    Stable,
    /// Only the lower bound `s <= |i - j|`.
    AlmostStable,
}

/// A duplicate-free family of nonempty subsets of `[n]`, kept in canonical order.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "RawSetSystem", into = "RawSetSystem")]
pub struct SetSystem {
    n: usize,
    members: Vec<Subset>,
}

#[derive(Serialize, Deserialize)]
struct RawSetSystem {
    n: usize,
    members: Vec<Vec<usize>>,
}

impl TryFrom<RawSetSystem> for SetSystem {
    type Error = Error;

    fn try_from(raw: RawSetSystem) -> Result<Self> {
        SetSystem::new(raw.n, &raw.members)
    }
}

impl From<SetSystem> for RawSetSystem {
    fn from(f: SetSystem) -> Self {
        RawSetSystem {
            n: f.n,
            members: f.members.iter().map(|m| m.to_vec()).collect(),
        }
    }
}

fn check_ground(n: usize) -> Result<()> {
    if n == 0 || n > MAX_GROUND {
        return Err(Error::GroundSize { n, max: MAX_GROUND });
    }
    Ok(())
}

impl SetSystem {
    pub fn new<M: AsRef<[usize]>>(n: usize, members: &[M]) -> Result<Self> {
        make_set_system(n, members).map(|(f, _)| f)
    }

    /// Builds from already-validated subsets, canonicalizing order and dropping repeats.
    pub fn from_subsets(n: usize, members: impl IntoIterator<Item = Subset>) -> Result<Self> {
        check_ground(n)?;
        let mut members: Vec<Subset> = members.into_iter().collect();
        let limit = if n == MAX_GROUND { u128::MAX } else { (1u128 << n) - 1 };
        if let Some(bad) = members.iter().position(|m| m.mask() & !limit != 0) {
            return Err(Error::OutOfRange {
                member: bad,
                element: members[bad].max_label(),
                n,
            });
        }
        members.sort();
        members.dedup();
        Ok(SetSystem { n, members })
    }

    pub fn empty(n: usize) -> Result<Self> {
        Self::from_subsets(n, [])
    }

    pub fn ground_size(&self) -> usize {
        self.n
    }

    pub fn members(&self) -> &[Subset] {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn contains(&self, s: Subset) -> bool {
        self.members.binary_search(&s).is_ok()
    }

    pub fn index_of(&self, s: Subset) -> Option<usize> {
        self.members.binary_search(&s).ok()
    }

    /// Union of all members as a mask.
    pub fn support(&self) -> u128 {
        self.members.iter().fold(0, |acc, m| acc | m.mask())
    }

    /// The hypergraph `([n], F)`: vertex `i - 1` stands for label `i`.
    pub fn as_hypergraph(&self) -> Hypergraph {
        let edges = self
            .members
            .iter()
            .map(|m| m.elements().map(|e| e - 1).collect())
            .collect();
        Hypergraph::from_parts_unchecked(self.n, None, edges)
    }

    pub fn union(&self, other: &SetSystem) -> Result<SetSystem> {
        if self.n != other.n {
            return Err(Error::InvalidParameter(format!(
                "cannot unite set systems on [{}] and [{}]",
                self.n, other.n
            )));
        }
        Self::from_subsets(self.n, self.members.iter().chain(&other.members).copied())
    }

    /// Whether every member of `self` is a member of `other`.
    pub fn is_subfamily_of(&self, other: &SetSystem) -> bool {
        self.members.iter().all(|m| other.contains(*m))
    }
}

/// Validates and canonicalizes; returns the system and how many repeated members were dropped.
pub fn make_set_system<M: AsRef<[usize]>>(n: usize, subsets: &[M]) -> Result<(SetSystem, usize)> {
    check_ground(n)?;
    let members = subsets
        .iter()
        .enumerate()
        .map(|(i, s)| Subset::new(s.as_ref(), n, i))
        .collect::<Result<Vec<_>>>()?;
    let total = members.len();
    let f = SetSystem::from_subsets(n, members)?;
    let duplicates = total - f.len();
    Ok((f, duplicates))
}

/// Binomial coefficient, saturating at `u128::MAX`.
pub fn binomial(n: usize, k: usize) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = match acc.checked_mul((n - i) as u128) {
            Some(v) => v / (i as u128 + 1),
            None => return u128::MAX,
        };
    }
    acc
}

/// Visits every `k`-subset of `{0, ..., n-1}` as a mask, in lexicographic order.
pub(crate) fn for_each_combination(n: usize, k: usize, mut visit: impl FnMut(u128)) {
    fn rec(start: usize, n: usize, left: usize, acc: u128, visit: &mut impl FnMut(u128)) {
        if left == 0 {
            visit(acc);
            return;
        }
        for i in start..=(n - left) {
            rec(i + 1, n, left - 1, acc | (1u128 << i), visit);
        }
    }
    if k <= n {
        rec(0, n, k, 0, &mut visit);
    }
}

/// All `k`-subsets of `[n]`.
pub fn complete_k_subsets(n: usize, k: usize) -> Result<SetSystem> {
    check_ground(n)?;
    if k == 0 || k > n {
        return Err(Error::InvalidParameter(format!(
            "need 1 <= k <= n, got k = {k}, n = {n}"
        )));
    }
    let count = binomial(n, k);
    if count > MAX_COMPLETE_MEMBERS {
        return Err(Error::CapExceeded {
            what: format!("C({n}, {k}) = {count} members"),
            cap: MAX_COMPLETE_MEMBERS as u64,
        });
    }
    let mut members = Vec::with_capacity(count as usize);
    for_each_combination(n, k, |mask| members.push(Subset(mask)));
    // Lexicographic combination order is already canonical for a fixed size.
    Ok(SetSystem { n, members })
}

/// Smallest gap between consecutive labels, or `None` for a singleton.
fn min_gap(sigma: Subset) -> Option<usize> {
    let mut prev = None;
    let mut best: Option<usize> = None;
    for e in sigma.elements() {
        if let Some(p) = prev {
            let g = e - p;
            best = Some(best.map_or(g, |b: usize| b.min(g)));
        }
        prev = Some(e);
    }
    best
}

/// `s <= |i - j| <= n - s` for all distinct `i, j` in `sigma`. Singletons are stable.
pub fn is_s_stable(sigma: Subset, n: usize, s: usize) -> bool {
    match min_gap(sigma) {
        None => true,
        // The extreme pair realizes the largest difference.
        Some(g) => g >= s && sigma.max_label() - sigma.min_label() + s <= n,
    }
}

/// `s <= |i - j|` for all distinct `i, j` in `sigma`.
pub fn is_almost_s_stable(sigma: Subset, _n: usize, s: usize) -> bool {
    min_gap(sigma).is_none_or(|g| g >= s)
}

pub fn filter_part(f: &SetSystem, s: usize, kind: StabilityKind) -> SetSystem {
    let n = f.n;
    let keep = |m: &&Subset| match kind {
        StabilityKind::Stable => is_s_stable(**m, n, s),
        StabilityKind::AlmostStable => is_almost_s_stable(**m, n, s),
    };
    SetSystem {
        n,
        members: f.members.iter().filter(keep).copied().collect(),
    }
}

/// The 2-subsets of `[n]` that are not `r`-stable.
pub fn family_f_nr(n: usize, r: usize) -> Result<SetSystem> {
    check_ground(n)?;
    if r < 2 {
        return Err(Error::InvalidParameter(format!("r must be at least 2, got {r}")));
    }
    if n < 2 {
        return SetSystem::empty(n);
    }
    let pairs = complete_k_subsets(n, 2)?;
    Ok(SetSystem {
        n,
        members: pairs.members.into_iter().filter(|p| !is_s_stable(*p, n, r)).collect(),
    })
}

/// The `r`-stable pairs `{1 + ir, 1 + (i+1)r}` for `i = 0..=2r-3`, closed by `{(2r-2)r + 1, 1}`.
pub fn prop2_stable_pairs(r: usize) -> Result<SetSystem> {
    let n = prop2_ground(r)?;
    let mut pairs: Vec<[usize; 2]> = (0..=(2 * r - 3)).map(|i| [1 + i * r, 1 + (i + 1) * r]).collect();
    pairs.push([1, (2 * r - 2) * r + 1]);
    SetSystem::new(n, &pairs)
}

fn prop2_ground(r: usize) -> Result<usize> {
    if r < 2 {
        return Err(Error::InvalidParameter(format!("r must be at least 2, got {r}")));
    }
    let n = r * (2 * r - 1);
    check_ground(n)?;
    Ok(n)
}

/// `F(n, r)` on `n = r(2r - 1)` together with the cycle of stable pairs from [`prop2_stable_pairs`].
pub fn family_prop2(r: usize) -> Result<SetSystem> {
    let n = prop2_ground(r)?;
    family_f_nr(n, r)?.union(&prop2_stable_pairs(r)?)
}
