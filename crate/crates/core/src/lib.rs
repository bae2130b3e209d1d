//! Exact chromatic numbers and colorability defects for generalized Kneser
//! hypergraphs of finite set systems, with checkable certificates.
//!
//! All searches are complete: a negative answer is a proof, and every
//! positive answer carries a certificate that the `verify_*` functions
//! re-check independently of the search that produced it.

pub mod coloring;
pub mod conjectures;
pub mod defect;
pub mod error;
pub mod hypergraph;
pub mod kneser;
pub mod limits;
pub mod setsystem;

pub use coloring::{
    chromatic_number, degree_order, export_cnf, extend_stable_coloring, greedy_coloring, greedy_upper_bound,
    is_m_colorable, verify_coloring, ChiResult, ColoringCertificate,
};
pub use defect::{
    colorability_defect, defect_lower_bound_report, induced_on_remaining, verify_defect_certificate, DefectCertificate,
    DefectResult, LowerBoundReport, SizeRefutation,
};
pub use error::{Error, Result};
pub use hypergraph::Hypergraph;
pub use kneser::{build_kneser, count_disjoint_r_tuples, disjoint_witness, has_r_pairwise_disjoint};
pub use limits::Limits;
pub use setsystem::{
    complete_k_subsets, family_f_nr, family_prop2, filter_part, is_almost_s_stable, is_s_stable, make_set_system,
    SetSystem, StabilityKind, Subset,
};
