//! Report rendering: plain-text tables, json-lines records, and CSV.
//!
//! The json-lines schema is part of the tool's interface:
//! `{config, invariants: {rank, l, s, sign}, n, dim,
//!   hierarchy: [{r, closed?, oracleA?, oracleB?, agree}], status}`,
//! one record per line. Weight-distribution runs replace `hierarchy` with
//! `wdist: [{weight, count}]`. Field order is fixed by the struct
//! declarations below, so identical configurations produce byte-identical
//! records.

use ghw_core::hierarchy::FormProfile;
use ghw_core::{HierarchyReport, HierarchyRow};
use serde::Serialize;
use std::io::{self, Write};

use crate::Format;

/// Echo of the fully resolved run configuration.
#[derive(Debug, Clone, Serialize)]
pub struct ConfigRecord {
    pub p: u64,
    pub m: usize,
    /// Modulus actually used, constant term first.
    pub modulus: Vec<u64>,
    pub form: String,
    pub a: u64,
    pub mode: String,
    pub r: Vec<usize>,
    pub budget: u128,
    pub threads: usize,
}

#[derive(Debug, Clone, Copy, Serialize)]
pub struct InvariantsRecord {
    pub rank: usize,
    pub l: usize,
    pub s: usize,
    pub sign: i64,
}

impl InvariantsRecord {
    pub fn from_profile(pr: &FormProfile) -> InvariantsRecord {
        InvariantsRecord { rank: pr.rank, l: pr.l, s: pr.s, sign: pr.sign }
    }
}

#[derive(Debug, Clone, Copy, Serialize)]
struct RowRecord {
    r: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    closed: Option<u64>,
    #[serde(rename = "oracleA", skip_serializing_if = "Option::is_none")]
    oracle_a: Option<u64>,
    #[serde(rename = "oracleB", skip_serializing_if = "Option::is_none")]
    oracle_b: Option<u64>,
    agree: bool,
}

impl RowRecord {
    fn new(row: &HierarchyRow) -> RowRecord {
        RowRecord {
            r: row.r,
            closed: row.closed,
            oracle_a: row.oracle_intersection,
            oracle_b: row.oracle_support,
            agree: row.agree,
        }
    }
}

#[derive(Serialize)]
struct ReportRecord<'a> {
    config: &'a ConfigRecord,
    invariants: InvariantsRecord,
    n: u64,
    dim: usize,
    hierarchy: Vec<RowRecord>,
    status: &'a str,
}

#[derive(Serialize)]
struct WeightRecord {
    weight: usize,
    count: u64,
}

#[derive(Serialize)]
struct WdistRecord<'a> {
    config: &'a ConfigRecord,
    invariants: InvariantsRecord,
    n: u64,
    dim: usize,
    wdist: Vec<WeightRecord>,
    status: &'a str,
}

fn join_u64(values: &[u64]) -> String {
    values.iter().map(|v| v.to_string()).collect::<Vec<_>>().join(",")
}

fn opt_cell(v: Option<u64>, width: usize) -> String {
    match v {
        Some(v) => format!("{v:>width$}"),
        None => format!("{:>width$}", "-"),
    }
}

fn header_line(config: &ConfigRecord) -> String {
    format!(
        "p={} m={} modulus={} form=\"{}\" a={} mode={}",
        config.p,
        config.m,
        join_u64(&config.modulus),
        config.form,
        config.a,
        config.mode
    )
}

fn invariants_line(inv: &InvariantsRecord, n: u64, dim: usize) -> String {
    format!(
        "rank={} l={} s={} sign={:+} n={} dim={}",
        inv.rank, inv.l, inv.s, inv.sign, n, dim
    )
}

/// Renders a hierarchy report (modes `hierarchy` and `verify`).
pub fn emit_report(
    out: &mut dyn Write,
    format: Format,
    config: &ConfigRecord,
    report: &HierarchyReport,
    status: &str,
) -> io::Result<()> {
    let inv = InvariantsRecord::from_profile(&report.profile);
    let rows: Vec<RowRecord> = report.rows.iter().map(RowRecord::new).collect();
    match format {
        Format::JsonLines => {
            let record = ReportRecord {
                config,
                invariants: inv,
                n: report.n,
                dim: report.dim,
                hierarchy: rows,
                status,
            };
            writeln!(out, "{}", serde_json::to_string(&record).expect("report serializes"))
        }
        Format::Csv => {
            writeln!(out, "r,closed,oracleA,oracleB,agree")?;
            for row in &rows {
                writeln!(
                    out,
                    "{},{},{},{},{}",
                    row.r,
                    row.closed.map(|v| v.to_string()).unwrap_or_default(),
                    row.oracle_a.map(|v| v.to_string()).unwrap_or_default(),
                    row.oracle_b.map(|v| v.to_string()).unwrap_or_default(),
                    row.agree
                )?;
            }
            Ok(())
        }
        Format::Table => {
            writeln!(out, "{}", header_line(config))?;
            writeln!(out, "{}", invariants_line(&inv, report.n, report.dim))?;
            writeln!(out)?;
            writeln!(out, "{:>4}  {:>8}  {:>8}  {:>8}  {:>5}", "r", "closed", "oracleA", "oracleB", "agree")?;
            for row in &rows {
                writeln!(
                    out,
                    "{:>4}  {}  {}  {}  {:>5}",
                    row.r,
                    opt_cell(row.closed, 8),
                    opt_cell(row.oracle_a, 8),
                    opt_cell(row.oracle_b, 8),
                    if row.agree { "yes" } else { "NO" }
                )?;
            }
            writeln!(out)?;
            writeln!(out, "status: {status}")
        }
    }
}

/// Renders the invariants summary (mode `invariants`).
pub fn emit_invariants(
    out: &mut dyn Write,
    format: Format,
    config: &ConfigRecord,
    inv: &InvariantsRecord,
    n: u64,
    dim: usize,
) -> io::Result<()> {
    match format {
        Format::JsonLines => {
            let record = ReportRecord {
                config,
                invariants: *inv,
                n,
                dim,
                hierarchy: Vec::new(),
                status: "OK",
            };
            writeln!(out, "{}", serde_json::to_string(&record).expect("report serializes"))
        }
        Format::Csv => {
            writeln!(out, "rank,l,s,sign,n,dim")?;
            writeln!(out, "{},{},{},{},{},{}", inv.rank, inv.l, inv.s, inv.sign, n, dim)
        }
        Format::Table => {
            writeln!(out, "{}", header_line(config))?;
            writeln!(out, "{}", invariants_line(inv, n, dim))?;
            writeln!(out, "status: OK")
        }
    }
}

/// Renders a weight distribution (mode `wdist`).
pub fn emit_wdist(
    out: &mut dyn Write,
    format: Format,
    config: &ConfigRecord,
    inv: &InvariantsRecord,
    n: u64,
    dim: usize,
    dist: &[(usize, u64)],
) -> io::Result<()> {
    match format {
        Format::JsonLines => {
            let record = WdistRecord {
                config,
                invariants: *inv,
                n,
                dim,
                wdist: dist.iter().map(|&(weight, count)| WeightRecord { weight, count }).collect(),
                status: "OK",
            };
            writeln!(out, "{}", serde_json::to_string(&record).expect("report serializes"))
        }
        Format::Csv => {
            writeln!(out, "weight,count")?;
            for &(weight, count) in dist {
                writeln!(out, "{weight},{count}")?;
            }
            Ok(())
        }
        Format::Table => {
            writeln!(out, "{}", header_line(config))?;
            writeln!(out, "{}", invariants_line(inv, n, dim))?;
            writeln!(out)?;
            writeln!(out, "{:>8}  {:>8}", "weight", "count")?;
            for &(weight, count) in dist {
                writeln!(out, "{weight:>8}  {count:>8}")?;
            }
            writeln!(out)?;
            writeln!(out, "status: OK")
        }
    }
}
