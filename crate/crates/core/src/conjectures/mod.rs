//! Closed-form values, conjecture gaps, and end-to-end checks of the two
//! counterexample constructions and the one-extra-color bound.

mod report;
pub mod scan;

use serde::{Deserialize, Serialize};

pub use report::{family_digest, CertificateStore, REPORT_SCHEMA};
pub use scan::{scan_random_families, PlantedFamily, ScanEntry, ScanParams, ScanReport, ScanSummary};

use crate::coloring::{chromatic_number, extend_stable_coloring, verify_coloring, ChiResult, ColoringCertificate};
use crate::defect::{
    colorability_defect, defect_lower_bound_report, verify_defect_certificate, DefectCertificate, DefectResult,
    LowerBoundReport,
};
use crate::error::{Error, Result};
use crate::kneser::{build_kneser, disjoint_witness};
use crate::limits::Limits;
use crate::setsystem::{
    binomial, complete_k_subsets, family_f_nr, family_prop2, filter_part, prop2_stable_pairs, SetSystem, StabilityKind,
};

/// `n - 2(k - 1)`, the chromatic number of the Kneser graph `KG(n, k)`.
pub fn lovasz_value(n: usize, k: usize) -> Result<usize> {
    if k == 0 || n < 2 * k {
        return Err(Error::InvalidParameter(format!(
            "need k >= 1 and n >= 2k, got n = {n}, k = {k}"
        )));
    }
    Ok(n - 2 * (k - 1))
}

/// `ceil((n - r(k - 1)) / (r - 1))`, the chromatic number of `KG^r` of all `k`-subsets of `[n]`.
pub fn afl_bound(n: usize, k: usize, r: usize) -> Result<usize> {
    if r < 2 || k == 0 || n < r * k {
        return Err(Error::InvalidParameter(format!(
            "need r >= 2, k >= 1 and n >= rk, got n = {n}, k = {k}, r = {r}"
        )));
    }
    Ok((n - r * (k - 1)).div_ceil(r - 1))
}

fn check_r(r: usize) -> Result<()> {
    if r < 2 {
        return Err(Error::InvalidParameter(format!("r must be at least 2, got {r}")));
    }
    Ok(())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum GapVariant {
    /// `chi(KG^r(F_r-stab)) >= ceil(cd_r(F) / (r - 1))`, stated for `r >= 3`.
    FrickStable,
    /// The same inequality over the almost `r`-stable part, stated for `r >= 2`.
    WeakAlmostStable,
}

impl GapVariant {
    pub fn kind(self) -> StabilityKind {
        match self {
            GapVariant::FrickStable => StabilityKind::Stable,
            GapVariant::WeakAlmostStable => StabilityKind::AlmostStable,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    Satisfied,
    Violated,
}

impl Verdict {
    pub fn of(lhs: usize, rhs: usize) -> Self {
        if lhs < rhs {
            Verdict::Violated
        } else {
            Verdict::Satisfied
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FamilyDescriptor {
    pub name: String,
    pub n: usize,
    pub members: usize,
    /// Hash of the canonical JSON form of the family.
    pub digest: String,
}

impl FamilyDescriptor {
    pub fn new(name: impl Into<String>, f: &SetSystem) -> Self {
        FamilyDescriptor {
            name: name.into(),
            n: f.ground_size(),
            members: f.len(),
            digest: family_digest(f),
        }
    }
}

/// Both sides of one conjectured inequality for a concrete family.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GapReport {
    pub family: FamilyDescriptor,
    pub variant: GapVariant,
    pub r: usize,
    /// Members of the filtered part, i.e. vertices of the Kneser hypergraph.
    pub part_members: usize,
    pub kneser_edges: usize,
    pub lhs: usize,
    pub chi: ChiResult,
    pub rhs: usize,
    pub cd: DefectResult,
    pub verdict: Verdict,
    pub note: Option<String>,
}

impl GapReport {
    /// Recomputes the verdict from the two sides and re-verifies both certificates against `f`.
    pub fn recheck(&self, f: &SetSystem, limits: &Limits) -> Result<bool> {
        let part = filter_part(f, self.r, self.variant.kind());
        let kg = build_kneser(&part, self.r, limits)?;
        let chi_ok = self.chi.chi == self.lhs
            && self.chi.certificate.num_colors as usize == self.lhs
            && verify_coloring(&kg, &self.chi.certificate)?;
        let cd_ok = self.cd.certificate.removed.len() == self.cd.cd
            && verify_defect_certificate(&f.as_hypergraph(), &self.cd.certificate)?;
        let rhs_ok = self.rhs == self.cd.cd.div_ceil(self.r - 1);
        Ok(chi_ok && cd_ok && rhs_ok && self.verdict == Verdict::of(self.lhs, self.rhs))
    }
}

fn gap(f: &SetSystem, r: usize, variant: GapVariant, limits: &Limits) -> Result<GapReport> {
    check_r(r)?;
    let cd = colorability_defect(&f.as_hypergraph(), r, limits)?;
    gap_with_defect(f, r, variant, cd, limits)
}

fn gap_with_defect(
    f: &SetSystem,
    r: usize,
    variant: GapVariant,
    cd: DefectResult,
    limits: &Limits,
) -> Result<GapReport> {
    let part = filter_part(f, r, variant.kind());
    let kg = build_kneser(&part, r, limits)?;
    let chi = chromatic_number(&kg, limits)?;
    let lhs = chi.chi;
    let rhs = cd.cd.div_ceil(r - 1);
    let note = (variant == GapVariant::FrickStable && r == 2)
        .then(|| "r = 2 lies outside the stated range r >= 3; exploratory".to_string());
    Ok(GapReport {
        family: FamilyDescriptor::new("", f),
        variant,
        r,
        part_members: part.len(),
        kneser_edges: kg.edge_count(),
        lhs,
        chi,
        rhs,
        cd,
        verdict: Verdict::of(lhs, rhs),
        note,
    })
}

/// Both variants, sharing one defect computation.
pub(crate) fn gap_pair(f: &SetSystem, r: usize, limits: &Limits) -> Result<(GapReport, GapReport)> {
    check_r(r)?;
    let cd = colorability_defect(&f.as_hypergraph(), r, limits)?;
    let frick = gap_with_defect(f, r, GapVariant::FrickStable, cd.clone(), limits)?;
    let weak = gap_with_defect(f, r, GapVariant::WeakAlmostStable, cd, limits)?;
    Ok((frick, weak))
}

/// `chi(KG^r(F_r-stab))` against `ceil(cd_r(F) / (r - 1))`.
pub fn frick_gap(f: &SetSystem, r: usize, limits: &Limits) -> Result<GapReport> {
    gap(f, r, GapVariant::FrickStable, limits)
}

/// `chi(KG^r(F_almost-r-stab))` against `ceil(cd_r(F) / (r - 1))`.
pub fn weak_gap(f: &SetSystem, r: usize, limits: &Limits) -> Result<GapReport> {
    gap(f, r, GapVariant::WeakAlmostStable, limits)
}

/// A named pass/fail assertion inside a verification report.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

impl Check {
    fn new(name: &str, passed: bool, detail: impl Into<String>) -> Self {
        Check {
            name: name.to_string(),
            passed,
            detail: detail.into(),
        }
    }
}

fn all_passed(checks: &[Check]) -> bool {
    checks.iter().all(|c| c.passed)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Comparison {
    Less,
    Equal,
    Greater,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ZieglerReport {
    pub n: usize,
    pub k: usize,
    pub r: usize,
    pub stable_members: usize,
    pub chi: ChiResult,
    pub afl: usize,
    pub comparison: Comparison,
}

/// Exact `chi(KG^r` of the `r`-stable `k`-subsets of `[n]`), compared with [`afl_bound`].
pub fn ziegler_check(n: usize, k: usize, r: usize, limits: &Limits) -> Result<ZieglerReport> {
    let afl = afl_bound(n, k, r)?;
    let stable = filter_part(&complete_k_subsets(n, k)?, r, StabilityKind::Stable);
    let chi = chromatic_number(&build_kneser(&stable, r, limits)?, limits)?;
    let comparison = match chi.chi.cmp(&afl) {
        std::cmp::Ordering::Less => Comparison::Less,
        std::cmp::Ordering::Equal => Comparison::Equal,
        std::cmp::Ordering::Greater => Comparison::Greater,
    };
    Ok(ZieglerReport {
        n,
        k,
        r,
        stable_members: stable.len(),
        chi,
        afl,
        comparison,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Prop1Report {
    pub r: usize,
    pub k: usize,
    pub n: usize,
    pub cd: DefectResult,
    pub stable_members: usize,
    pub chi: usize,
    /// Remove label `n`, give label `j` the color `((j - 1) mod r) + 1`.
    pub explicit_certificate: DefectCertificate,
    pub checks: Vec<Check>,
}

impl Prop1Report {
    pub fn passed(&self) -> bool {
        all_passed(&self.checks)
    }
}

/// The defect of `F(kr + 1, r)` is exactly 1 while its `r`-stable part is empty.
pub fn verify_proposition1(r: usize, k: usize, limits: &Limits) -> Result<Prop1Report> {
    check_r(r)?;
    if k == 0 {
        return Err(Error::InvalidParameter("k must be at least 1".into()));
    }
    let n = k * r + 1;
    let f = family_f_nr(n, r)?;
    let h = f.as_hypergraph();
    let cd = colorability_defect(&h, r, limits)?;
    let stable = filter_part(&f, r, StabilityKind::Stable);
    let chi = chromatic_number(&build_kneser(&stable, r, limits)?, limits)?.chi;

    let explicit_certificate = DefectCertificate {
        removed: vec![n - 1],
        coloring: ColoringCertificate {
            colors: (0..n - 1).map(|v| (v % r) as u32 + 1).collect(),
            num_colors: r as u32,
        },
        r,
    };
    let checks = vec![
        Check::new(
            "defect equals one",
            cd.cd == 1 && verify_defect_certificate(&h, &cd.certificate)?,
            format!(
                "cd_{r}(F({n},{r})) = {}, removal {:?}",
                cd.cd,
                labels(&cd.certificate.removed)
            ),
        ),
        Check::new(
            "stable part empty",
            stable.is_empty(),
            format!("{} stable members", stable.len()),
        ),
        Check::new("kneser chromatic number zero", chi == 0, format!("chi = {chi}")),
        Check::new(
            "explicit coloring verifies",
            verify_defect_certificate(&h, &explicit_certificate)?,
            format!("remove {n}, color j with ((j-1) mod {r}) + 1"),
        ),
    ];
    Ok(Prop1Report {
        r,
        k,
        n,
        cd,
        stable_members: stable.len(),
        chi,
        explicit_certificate,
        checks,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Prop2Report {
    pub r: usize,
    pub n: usize,
    pub stable_part: SetSystem,
    pub chi: usize,
    pub lower_bound: LowerBoundReport,
    pub exact_cd: Option<DefectResult>,
    /// Why the exact defect was not computed, when it was not.
    pub exact_cd_skipped: Option<String>,
    pub checks: Vec<Check>,
}

impl Prop2Report {
    pub fn passed(&self) -> bool {
        all_passed(&self.checks)
    }
}

/// For the augmented family on `r(2r - 1)` labels: the stable part is the explicit
/// `(2r - 1)`-cycle of pairs, its Kneser hypergraph has chromatic number 1, and
/// every removal of at most `r - 1` labels leaves a non-`r`-colorable family.
///
/// With `exact` the defect itself is also computed; a cap or budget hit there is
/// recorded in `exact_cd_skipped` instead of failing the report.
pub fn verify_proposition2(r: usize, exact: bool, limits: &Limits) -> Result<Prop2Report> {
    check_r(r)?;
    let f = family_prop2(r)?;
    let n = f.ground_size();
    let h = f.as_hypergraph();
    let stable = filter_part(&f, r, StabilityKind::Stable);
    let expected = prop2_stable_pairs(r)?;
    let witness = disjoint_witness(&stable, r, limits)?;
    let chi = chromatic_number(&build_kneser(&stable, r, limits)?, limits)?.chi;
    let lower_bound = defect_lower_bound_report(&h, r, r - 1, limits)?;
    let expected_total: u128 = (0..r).map(|i| binomial(n, i)).sum();

    let mut checks = vec![
        Check::new(
            "stable part is the explicit cycle",
            stable == expected,
            format!(
                "{} stable members, support of {} labels",
                stable.len(),
                stable.support().count_ones()
            ),
        ),
        Check::new(
            "no r pairwise disjoint stable members",
            witness.is_none(),
            match &witness {
                None => "none found by exhaustive search".to_string(),
                Some(w) => format!("witness {w:?}"),
            },
        ),
        Check::new("kneser chromatic number one", chi == 1, format!("chi = {chi}")),
        Check::new(
            "every removal of at most r-1 labels fails",
            lower_bound.refutes() && u128::from(lower_bound.refuted_total) == expected_total,
            format!(
                "{} of {} removal sets refuted",
                lower_bound.refuted_total, expected_total
            ),
        ),
    ];

    let (exact_cd, exact_cd_skipped) = if exact {
        match colorability_defect(&h, r, limits) {
            Ok(d) => {
                checks.push(Check::new(
                    "exact defect at least r",
                    d.cd >= r && verify_defect_certificate(&h, &d.certificate)?,
                    format!("cd_{r} = {}, removal {:?}", d.cd, labels(&d.certificate.removed)),
                ));
                (Some(d), None)
            }
            Err(e) if e.is_cap() => (None, Some(e.to_string())),
            Err(e) => return Err(e),
        }
    } else {
        (None, Some("not requested".to_string()))
    };
    Ok(Prop2Report {
        r,
        n,
        stable_part: stable,
        chi,
        lower_bound,
        exact_cd,
        exact_cd_skipped,
        checks,
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FootnoteEntry {
    pub n: usize,
    pub expected: Verdict,
    pub report: GapReport,
}

/// [`frick_gap`] of `F(n, r)` for every `r <= n <= n_max` with `r` not dividing `n`.
pub fn footnote_grid(r: usize, n_max: usize, limits: &Limits) -> Result<Vec<FootnoteEntry>> {
    check_r(r)?;
    (r..=n_max)
        .filter(|n| n % r != 0)
        .map(|n| {
            let mut report = frick_gap(&family_f_nr(n, r)?, r, limits)?;
            report.family.name = format!("F({n},{r})");
            Ok(FootnoteEntry {
                n,
                expected: Verdict::Violated,
                report,
            })
        })
        .collect()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RemarkReport {
    pub r: usize,
    pub stable_members: usize,
    pub almost_members: usize,
    pub chi_stable: ChiResult,
    pub chi_almost: ChiResult,
    pub difference: i64,
    /// The stable coloring lifted with one fresh color.
    pub extended: ColoringCertificate,
    pub checks: Vec<Check>,
}

impl RemarkReport {
    pub fn passed(&self) -> bool {
        all_passed(&self.checks)
    }
}

/// Both chromatic numbers exactly, their difference, and the constructive one-extra-color lift.
pub fn verify_remark_bound(f: &SetSystem, r: usize, limits: &Limits) -> Result<RemarkReport> {
    check_r(r)?;
    let stable = filter_part(f, r, StabilityKind::Stable);
    let almost = filter_part(f, r, StabilityKind::AlmostStable);
    let chi_stable = chromatic_number(&build_kneser(&stable, r, limits)?, limits)?;
    let almost_kg = build_kneser(&almost, r, limits)?;
    let chi_almost = chromatic_number(&almost_kg, limits)?;
    let difference = chi_almost.chi as i64 - chi_stable.chi as i64;
    let extended = extend_stable_coloring(f, r, &chi_stable.certificate, limits)?;
    let extra = extended.num_colors as i64 - chi_stable.certificate.num_colors as i64;
    let checks = vec![
        Check::new(
            "difference at most one",
            difference <= 1,
            format!("chi(almost) = {}, chi(stable) = {}", chi_almost.chi, chi_stable.chi),
        ),
        Check::new(
            "extended coloring verifies",
            verify_coloring(&almost_kg, &extended)? && (0..=1).contains(&extra),
            format!("{} colors after extension", extended.num_colors),
        ),
        Check::new(
            "extension bounds the almost-stable chromatic number",
            chi_almost.chi <= extended.num_colors as usize,
            format!("{} <= {}", chi_almost.chi, extended.num_colors),
        ),
    ];
    Ok(RemarkReport {
        r,
        stable_members: stable.len(),
        almost_members: almost.len(),
        chi_stable,
        chi_almost,
        difference,
        extended,
        checks,
    })
}

/// Vertex indices of a ground-set hypergraph as 1-based labels.
pub fn labels(vertices: &[usize]) -> Vec<usize> {
    vertices.iter().map(|v| v + 1).collect()
}
