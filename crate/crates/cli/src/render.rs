//! Plain-text and CSV renderings. JSON goes straight through serde.

use std::fmt::Write;

use overpart_core::{AlphaSystem, CountTable, QLaurent, VerificationReport};

fn width(tables: &[(&str, CountTable)]) -> usize {
    tables
        .iter()
        .filter_map(|(_, t)| t.max_k())
        .max()
        .map_or(1, |k| k as usize + 1)
}

/// One row per `(side, n)`, one column per `k`, zero-padded to the widest row.
pub fn tables_csv(tables: &[(&str, CountTable)]) -> String {
    let cols = width(tables);
    let mut out = String::from("side,n");
    for k in 0..cols {
        write!(out, ",k{k}").unwrap();
    }
    out.push('\n');
    for (side, t) in tables {
        for n in 0..=t.n_max() {
            write!(out, "{side},{n}").unwrap();
            for k in 0..cols {
                write!(out, ",{}", t.get(k as u32, n)).unwrap();
            }
            out.push('\n');
        }
    }
    out
}

pub fn tables_text(sys: &AlphaSystem, tables: &[(&str, CountTable)]) -> String {
    let cols = width(tables);
    let mut out = String::new();
    for (side, t) in tables {
        let cells: Vec<Vec<String>> = (0..=t.n_max())
            .map(|n| {
                std::iter::once(n.to_string())
                    .chain((0..cols).map(|k| t.get(k as u32, n).to_string()))
                    .collect()
            })
            .collect();
        let header: Vec<String> = std::iter::once("n".to_string())
            .chain((0..cols).map(|k| format!("k={k}")))
            .collect();
        let widths: Vec<usize> = (0..=cols)
            .map(|c| {
                cells
                    .iter()
                    .map(|r| r[c].len())
                    .chain([header[c].len()])
                    .max()
                    .unwrap_or(1)
            })
            .collect();
        writeln!(out, "{side} side, {sys}").unwrap();
        for row in std::iter::once(&header).chain(&cells) {
            let line: Vec<String> = row.iter().zip(&widths).map(|(c, w)| format!("{c:>w$}")).collect();
            writeln!(out, "{}", line.join("  ")).unwrap();
        }
    }
    out
}

pub fn series_csv(s: &QLaurent) -> String {
    let mut out = String::from("q,d,c\n");
    for (q, p) in s.terms() {
        for (d, c) in p.terms() {
            writeln!(out, "{q},{d},{c}").unwrap();
        }
    }
    out
}

pub fn series_text(s: &QLaurent) -> String {
    let rows: Vec<(String, String)> = s.terms().map(|(q, p)| (format!("q^{q}"), p.to_string())).collect();
    let w = rows.iter().map(|(q, _)| q.len()).max().unwrap_or(0);
    let mut out = String::new();
    for (q, p) in rows {
        writeln!(out, "{q:>w$}  {p}").unwrap();
    }
    writeln!(out, "exact through q^{}", s.trunc()).unwrap();
    out
}

pub fn reports_csv(reports: &[VerificationReport]) -> String {
    let mut out = String::from("N,a,check,cases,passed\n");
    for r in reports {
        let a: Vec<String> = r.system.a.iter().map(u64::to_string).collect();
        for c in &r.checks {
            writeln!(
                out,
                "{},{},{},{},{}",
                r.system.modulus,
                a.join(" "),
                c.check,
                c.cases,
                c.passed
            )
            .unwrap();
        }
    }
    out
}

pub fn reports_text(reports: &[VerificationReport]) -> String {
    let mut out = String::new();
    for r in reports {
        writeln!(out, "N={} a={:?}: {}", r.system.modulus, r.system.a, r.verdict).unwrap();
        for c in &r.checks {
            let status = if c.passed { "pass" } else { "FAIL" };
            write!(out, "  {:<8} {status} ({} cases)", c.check, c.cases).unwrap();
            if let Some(d) = &c.detail {
                write!(out, ": {d}").unwrap();
            }
            out.push('\n');
        }
    }
    out
}
