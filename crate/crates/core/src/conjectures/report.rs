use std::collections::BTreeMap;

use serde::Serialize;
use serde_json::{json, Value};
use sha2::{Digest, Sha256};

use super::GapReport;
use crate::setsystem::SetSystem;

/// Version stamped into every JSON report.
pub const REPORT_SCHEMA: u32 = 1;

fn short_hash(bytes: &[u8]) -> String {
    let digest = Sha256::digest(bytes);
    let hex: String = digest.iter().take(8).map(|b| format!("{b:02x}")).collect();
    format!("sha256:{hex}")
}

/// Content hash of the family's canonical JSON form.
pub fn family_digest(f: &SetSystem) -> String {
    short_hash(serde_json::to_string(f).expect("set systems serialize").as_bytes())
}

/// Certificates keyed by content hash, so reports can refer to them compactly.
#[derive(Debug, Clone, Default, PartialEq, Serialize)]
#[serde(transparent)]
pub struct CertificateStore {
    entries: BTreeMap<String, Value>,
}

impl CertificateStore {
    pub fn insert<T: Serialize>(&mut self, cert: &T) -> String {
        let value = serde_json::to_value(cert).expect("certificates serialize");
        let key = short_hash(value.to_string().as_bytes());
        self.entries.entry(key.clone()).or_insert(value);
        key
    }

    pub fn get(&self, key: &str) -> Option<&Value> {
        self.entries.get(key)
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }
}

impl GapReport {
    /// JSON form with both certificates moved into `store`.
    pub fn to_json(&self, store: &mut CertificateStore) -> Value {
        let mut v = json!({
            "family": self.family,
            "variant": self.variant,
            "r": self.r,
            "part_members": self.part_members,
            "kneser_edges": self.kneser_edges,
            "lhs": self.lhs,
            "chi_refuted": self.chi.refuted,
            "chi_certificate": store.insert(&self.chi.certificate),
            "cd": self.cd.cd,
            "cd_removed": self.cd.certificate.removed,
            "cd_refuted_sizes": self.cd.refuted_sizes,
            "cd_certificate": store.insert(&self.cd.certificate),
            "rhs": self.rhs,
            "verdict": self.verdict,
        });
        if let Some(note) = &self.note {
            v["note"] = json!(note);
        }
        v
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coloring::ColoringCertificate;
    use crate::conjectures::frick_gap;
    use crate::limits::Limits;
    use crate::setsystem::family_f_nr;

    #[test]
    fn store_deduplicates_by_content() {
        let mut store = CertificateStore::default();
        let a = store.insert(&ColoringCertificate::uniform(3, 1));
        let b = store.insert(&ColoringCertificate::uniform(3, 1));
        let c = store.insert(&ColoringCertificate::uniform(4, 1));
        assert_eq!(a, b);
        assert_ne!(a, c);
        assert_eq!(store.len(), 2);
        assert!(a.starts_with("sha256:") && a.len() == 7 + 16);
    }

    #[test]
    fn gap_json_refers_into_store() {
        let f = family_f_nr(7, 3).unwrap();
        let g = frick_gap(&f, 3, &Limits::default()).unwrap();
        let mut store = CertificateStore::default();
        let v = g.to_json(&mut store);
        assert_eq!(v["verdict"], "violated");
        assert_eq!(v["variant"], "frick_stable");
        let key = v["cd_certificate"].as_str().unwrap();
        assert_eq!(store.get(key).unwrap()["removed"], json!([0]));
        assert_eq!(v["family"]["digest"], family_digest(&f));
    }
}
