//! Text, JSON and CSV renderings.
//!
//! Rationals always travel as exact `p/q` strings (integers as `p`).

use std::collections::BTreeMap;
use std::fmt::Write;

use anyhow::{bail, Context};
use lclab_core::concavity::Coord;
use lclab_core::{ArithFn, CheckReport, ConcavityReport, Rational, Triangle};
use num_bigint::BigInt;
use serde::{Deserialize, Serialize};
use serde_json::json;

use crate::cache::{Payload, RowRecord, CACHE_SCHEMA};

pub const TRIANGLE_SCHEMA: &str = "lclab.triangle/1";
pub const CHECK_SCHEMA: &str = "lclab.check/1";

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct TriangleRow {
    pub n: usize,
    pub scale: String,
    /// `scale * A_{n,m}` for `m = 1..`.
    pub scaled: Vec<String>,
    pub values: Vec<String>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct TriangleDoc {
    pub schema: String,
    pub g: String,
    pub h: lclab_core::HFn,
    pub n_max: usize,
    pub column_cap: Option<usize>,
    pub scale_kind: Option<lclab_core::HFn>,
    pub rows: Vec<TriangleRow>,
}

fn values_of(tri: &Triangle, n: usize) -> Vec<Rational> {
    tri.row_values(n).expect("row index in range")
}

/// Space-separated `A_{n,m}` per row, rows `1..=N`.
pub fn triangle_table(tri: &Triangle) -> String {
    let mut out = String::new();
    for n in 1..=tri.n_max() {
        let line: Vec<String> = values_of(tri, n).iter().map(Rational::to_string).collect();
        out.push_str(&line.join(" "));
        out.push('\n');
    }
    out
}

pub fn triangle_csv(tri: &Triangle) -> String {
    let mut out = String::from("n,m,scale,scaled,value\n");
    for n in 1..=tri.n_max() {
        let row = tri.rows()[n].clone();
        for (i, (c, v)) in row.coeffs().iter().zip(values_of(tri, n)).enumerate() {
            writeln!(out, "{n},{},{},{c},{v}", i + 1, row.scale()).unwrap();
        }
    }
    out
}

pub fn triangle_doc(tri: &Triangle) -> TriangleDoc {
    TriangleDoc {
        schema: TRIANGLE_SCHEMA.into(),
        g: tri.g().label().into(),
        h: tri.h(),
        n_max: tri.n_max(),
        column_cap: tri.column_cap(),
        scale_kind: tri.scale_kind(),
        rows: (1..=tri.n_max())
            .map(|n| {
                let row = &tri.rows()[n];
                TriangleRow {
                    n,
                    scale: row.scale().to_string(),
                    scaled: row.coeffs().iter().map(BigInt::to_string).collect(),
                    values: values_of(tri, n).iter().map(Rational::to_string).collect(),
                }
            })
            .collect(),
    }
}

pub fn triangle_json(tri: &Triangle) -> String {
    serde_json::to_string_pretty(&triangle_doc(tri)).expect("document serializes") + "\n"
}

/// Reads a `triangle --format json` document back. Each `values` entry must
/// agree with `scaled / scale`.
pub fn import_triangle_json(text: &str, g: &ArithFn) -> anyhow::Result<Triangle> {
    let doc: TriangleDoc = serde_json::from_str(text).context("malformed triangle document")?;
    if doc.schema != TRIANGLE_SCHEMA {
        bail!("schema {:?}, expected {TRIANGLE_SCHEMA:?}", doc.schema);
    }
    let mut rows = vec![RowRecord {
        scale: "1".into(),
        coeffs: Vec::new(),
    }];
    for (i, row) in doc.rows.iter().enumerate() {
        if row.n != i + 1 || row.values.len() != row.scaled.len() {
            bail!("row {} is out of order or ragged", row.n);
        }
        let scale: BigInt = row.scale.parse()?;
        for (c, v) in row.scaled.iter().zip(&row.values) {
            let v: Rational = v.parse().map_err(|_| anyhow::anyhow!("bad value {v:?}"))?;
            if Rational::new(c.parse()?, scale.clone()) != v {
                bail!("row {}: {v} is not {c}/{scale}", row.n);
            }
        }
        rows.push(RowRecord {
            scale: row.scale.clone(),
            coeffs: row.scaled.clone(),
        });
    }
    Payload {
        schema: CACHE_SCHEMA,
        g: doc.g,
        h: doc.h,
        n_max: doc.n_max,
        column_cap: doc.column_cap,
        scale_kind: doc.scale_kind,
        rows,
    }
    .to_triangle(g)
}

/// Result of any `check` subcommand.
#[derive(Debug, Clone)]
pub enum CheckOutput {
    Compare(CheckReport),
    Concavity(ConcavityReport),
    /// A C-scan from `m = 2`, with column 1 scanned separately for reference.
    CScan {
        report: ConcavityReport,
        column1: ConcavityReport,
    },
    Table1 {
        m_max: usize,
        n_limit: usize,
        n0: Vec<Option<usize>>,
    },
}

impl CheckOutput {
    pub fn passed(&self) -> bool {
        match self {
            CheckOutput::Compare(r) => r.passed,
            CheckOutput::Concavity(r) | CheckOutput::CScan { report: r, .. } => r.passed,
            CheckOutput::Table1 { n0, .. } => n0.iter().all(Option::is_some),
        }
    }

    pub fn to_json(&self, command: &str) -> String {
        let report = match self {
            CheckOutput::Compare(r) => serde_json::to_value(r),
            CheckOutput::Concavity(r) => serde_json::to_value(r),
            CheckOutput::CScan { report, column1 } => serde_json::to_value(report).map(|mut v| {
                v["column1_excluded"] = serde_json::to_value(column1).expect("report serializes");
                v
            }),
            CheckOutput::Table1 { m_max, n_limit, n0 } => {
                Ok(json!({ "m_max": m_max, "n_limit": n_limit, "n0": n0 }))
            }
        }
        .expect("report serializes");
        let doc = json!({
            "schema": CHECK_SCHEMA,
            "command": command,
            "passed": self.passed(),
            "report": report,
        });
        serde_json::to_string_pretty(&doc).expect("report serializes") + "\n"
    }

    pub fn to_text(&self, command: &str) -> String {
        match self {
            CheckOutput::Compare(r) => compare_text(r),
            CheckOutput::Concavity(r) => concavity_text(command, r),
            CheckOutput::CScan { report, column1 } => {
                let mut out = concavity_text(command, report);
                let extra = concavity_text("m=1, not part of the verdict", column1);
                for line in extra.lines() {
                    writeln!(out, "  {line}").unwrap();
                }
                out
            }
            CheckOutput::Table1 { n_limit, n0, .. } => {
                let cells: Vec<String> = n0
                    .iter()
                    .map(|v| v.map_or_else(|| format!(">{n_limit}"), |n| n.to_string()))
                    .collect();
                cells.join(" ") + "\n"
            }
        }
    }
}

fn verdict(passed: bool) -> &'static str {
    if passed {
        "PASS"
    } else {
        "FAIL"
    }
}

fn compare_text(r: &CheckReport) -> String {
    let mut out = format!(
        "{}: {} ({} comparisons)\n",
        r.check,
        verdict(r.passed),
        r.checked
    );
    if let Some(m) = &r.mismatch {
        let mut at = format!("n={}", m.n);
        if let Some(col) = m.m {
            write!(at, " m={col}").unwrap();
        }
        if let Some(x) = &m.x {
            write!(at, " x={x}").unwrap();
        }
        writeln!(
            out,
            "first mismatch at {at}: expected {}, got {}",
            m.expected, m.actual
        )
        .unwrap();
    }
    out
}

fn by_column(coords: &[Coord]) -> BTreeMap<usize, Vec<usize>> {
    let mut map: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for c in coords {
        map.entry(c.m).or_default().push(c.n);
    }
    map
}

fn join(ns: &[usize]) -> String {
    ns.iter()
        .map(usize::to_string)
        .collect::<Vec<_>>()
        .join(" ")
}

fn concavity_text(command: &str, r: &ConcavityReport) -> String {
    let mut out = format!("{command}: {}", verdict(r.passed));
    if let Some(c) = &r.c {
        write!(out, " C={c}").unwrap();
    }
    writeln!(
        out,
        " m={}..{} n={}..{} ({} failures, {} equalities)",
        r.m_from,
        r.m_to,
        r.n_from,
        r.n_to,
        r.failures.len(),
        r.equalities.len()
    )
    .unwrap();
    for b in &r.bounds {
        write!(
            out,
            "  m={}: n <= {}, checked to {}",
            b.m, b.limit, b.last_center
        )
        .unwrap();
        out.push_str(if b.clipped { " (clipped)\n" } else { "\n" });
    }
    // Horizontal failures read naturally per row, the rest per column.
    let horizontal = r.mode == lclab_core::Mode::Horizontal;
    let group = |coords: &[Coord], label: &str, out: &mut String| {
        if horizontal {
            let mut map: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
            for c in coords {
                map.entry(c.n).or_default().push(c.m);
            }
            for (n, ms) in map {
                writeln!(out, "{label} n={n}: m = {}", join(&ms)).unwrap();
            }
        } else {
            for (m, ns) in by_column(coords) {
                writeln!(out, "{label} m={m}: n = {}", join(&ns)).unwrap();
            }
        }
    };
    group(&r.failures, "failures", &mut out);
    group(&r.equalities, "equalities", &mut out);
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use lclab_core::{build_triangle, HFn};

    #[test]
    fn table_rows() {
        let t = build_triangle(&ArithFn::sigma(), HFn::Id, 1).unwrap();
        assert_eq!(triangle_table(&t), "1\n");
        let t = build_triangle(&ArithFn::sigma(), HFn::Id, 4).unwrap();
        assert_eq!(
            triangle_table(&t).lines().last().unwrap(),
            "7/4 59/24 3/4 1/24"
        );
    }

    #[test]
    fn csv_carries_both_forms() {
        let t = build_triangle(&ArithFn::one(), HFn::Id, 6).unwrap();
        let csv = triangle_csv(&t);
        assert!(csv.contains("\n6,2,720,274,137/360\n"));
        assert_eq!(csv.lines().count(), 1 + 21);
    }

    #[test]
    fn json_round_trip() {
        for (g, h) in [
            (ArithFn::sigma(), HFn::Id),
            (ArithFn::sigma().tilde(), HFn::One),
            (ArithFn::square(), HFn::One),
        ] {
            let t = build_triangle(&g, h, 15).unwrap();
            let text = triangle_json(&t);
            let back = import_triangle_json(&text, &g).unwrap();
            assert_eq!(back.rows(), t.rows());
            assert_eq!(back.scale_kind(), t.scale_kind());
        }
        let t = build_triangle(&ArithFn::sigma(), HFn::Id, 4).unwrap();
        let doc = triangle_doc(&t);
        assert_eq!(doc.rows[3].values, ["7/4", "59/24", "3/4", "1/24"]);
        let tampered = triangle_json(&t).replace("59/24", "60/24");
        assert!(import_triangle_json(&tampered, &ArithFn::sigma()).is_err());
    }
}
