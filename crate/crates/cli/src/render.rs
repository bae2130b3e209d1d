//! Human-readable output.

use std::fmt::Write as _;

use kneser_core::conjectures::{labels, Check, GapReport, GapVariant, ScanReport, Verdict};
use kneser_core::{ChiResult, ColoringCertificate, DefectResult, Hypergraph, LowerBoundReport};

fn colors(c: &ColoringCertificate) -> String {
    c.colors.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(" ")
}

fn list(v: &[usize]) -> String {
    let items: Vec<String> = v.iter().map(|x| x.to_string()).collect();
    format!("{{{}}}", items.join(", "))
}

fn verdict(v: Verdict) -> &'static str {
    match v {
        Verdict::Satisfied => "satisfied",
        Verdict::Violated => "VIOLATED",
    }
}

pub fn chi(h: &Hypergraph, r: &ChiResult) -> String {
    let mut out = format!(
        "vertices {}, edges {}\nchi = {}\n",
        h.vertex_count(),
        h.edge_count(),
        r.chi
    );
    if !r.refuted.is_empty() {
        let _ = writeln!(out, "not colorable with {} colors", r.refuted.last().unwrap());
    }
    let _ = writeln!(out, "coloring: {}", colors(&r.certificate));
    out
}

pub fn colorable(m: usize, cert: Option<&ColoringCertificate>) -> String {
    match cert {
        Some(c) => format!("{m}-colorable: yes\ncoloring: {}\n", colors(c)),
        None => format!("{m}-colorable: no\n"),
    }
}

pub fn defect(d: &DefectResult, ground: bool) -> String {
    let removed = if ground {
        labels(&d.certificate.removed)
    } else {
        d.certificate.removed.clone()
    };
    let mut out = format!("cd_{} = {}\nremoved: {}\n", d.certificate.r, d.cd, list(&removed));
    let _ = writeln!(out, "coloring of the rest: {}", colors(&d.certificate.coloring));
    for s in &d.refuted_sizes {
        let _ = writeln!(
            out,
            "size {}: {} candidates refuted ({} by obstruction, {} by search)",
            s.size, s.candidates, s.by_obstruction, s.by_search
        );
    }
    out
}

pub fn defect_bound(rep: &LowerBoundReport, ground: bool) -> String {
    let mut out = String::new();
    for s in &rep.sizes {
        let _ = writeln!(
            out,
            "size {}: {} candidates refuted ({} by obstruction, {} by search)",
            s.size, s.candidates, s.by_obstruction, s.by_search
        );
    }
    match &rep.counterwitness {
        None => {
            let _ = writeln!(
                out,
                "cd_{} > {}: all {} removal sets refuted",
                rep.r, rep.b, rep.refuted_total
            );
        }
        Some(w) => {
            let removed = if ground { labels(&w.removed) } else { w.removed.clone() };
            let _ = writeln!(out, "cd_{} <= {}: removing {} works", rep.r, rep.b, list(&removed));
            let _ = writeln!(out, "coloring of the rest: {}", colors(&w.coloring));
        }
    }
    out
}

pub fn checks(title: &str, checks: &[Check]) -> String {
    let mut out = format!("{title}\n");
    for c in checks {
        let _ = writeln!(
            out,
            "[{}] {}: {}",
            if c.passed { "ok" } else { "FAIL" },
            c.name,
            c.detail
        );
    }
    out
}

pub fn gap(g: &GapReport) -> String {
    let side = match g.variant {
        GapVariant::FrickStable => "stable",
        GapVariant::WeakAlmostStable => "almost-stable",
    };
    let mut out = format!(
        "{}: n = {}, {} members, r = {}\n",
        g.family.name, g.family.n, g.family.members, g.r
    );
    let _ = writeln!(
        out,
        "{side} part: {} members, {} Kneser edges",
        g.part_members, g.kneser_edges
    );
    let _ = writeln!(out, "chi = {}", g.lhs);
    let _ = writeln!(out, "cd_{} = {}, bound = {}", g.r, g.cd.cd, g.rhs);
    let _ = writeln!(out, "{} >= {}: {}", g.lhs, g.rhs, verdict(g.verdict));
    if let Some(note) = &g.note {
        let _ = writeln!(out, "note: {note}");
    }
    out
}

pub fn scan(rep: &ScanReport) -> String {
    let mut rows = vec![[
        "index".to_string(),
        "source".into(),
        "n".into(),
        "members".into(),
        "r".into(),
        "cd".into(),
        "bound".into(),
        "chi stable".into(),
        "chi almost".into(),
        "verdict".into(),
    ]];
    for e in &rep.entries {
        let mut row = [
            e.index.to_string(),
            e.source.clone(),
            e.family.ground_size().to_string(),
            e.family.len().to_string(),
            e.r.to_string(),
            String::new(),
            String::new(),
            String::new(),
            String::new(),
            String::new(),
        ];
        match (&e.frick, &e.weak, &e.skipped) {
            (Some(f), Some(w), _) => {
                row[5] = f.cd.cd.to_string();
                row[6] = f.rhs.to_string();
                row[7] = f.lhs.to_string();
                row[8] = w.lhs.to_string();
                row[9] = match (f.verdict, w.verdict) {
                    (Verdict::Satisfied, Verdict::Satisfied) => "ok".into(),
                    (Verdict::Violated, Verdict::Satisfied) => "stable violated".into(),
                    (Verdict::Satisfied, Verdict::Violated) => "almost violated".into(),
                    (Verdict::Violated, Verdict::Violated) => "both violated".into(),
                };
            }
            (_, _, Some(why)) => row[9] = format!("skipped: {why}"),
            _ => {}
        }
        rows.push(row);
    }
    let widths: Vec<usize> = (0..10)
        .map(|c| rows.iter().map(|r| r[c].chars().count()).max().unwrap_or(0))
        .collect();
    let mut out = String::new();
    for row in &rows {
        let cells: Vec<String> = row.iter().zip(&widths).map(|(c, w)| format!("{c:<w$}")).collect();
        let _ = writeln!(out, "{}", cells.join("  ").trim_end());
    }
    let s = &rep.summary;
    let _ = writeln!(
        out,
        "\n{} random, {} planted, {} evaluated, {} skipped; stable violations {}, almost-stable violations {}",
        s.samples, s.planted, s.evaluated, s.skipped, s.frick_violations, s.weak_violations
    );
    out
}
