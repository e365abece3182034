//! Convergence tables and their csv / markdown / json renderings.

use std::fmt::Write as _;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::analysis::{mean_of_last, observed_orders};
use crate::error::{FemError, Result};

pub const CSV_HEADER: &str = "h,l2,h1_broken,nodal,cond,order_l2,order_h1,order_nodal";

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TableMeta {
    pub problem: String,
    pub degree: usize,
    pub quad_points: usize,
    pub h0: String,
    pub levels: usize,
    pub factor: usize,
    pub domain_length: f64,
    pub timestamp_unix: u64,
    pub version: String,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TableRow {
    pub elements: usize,
    pub h: f64,
    pub l2: f64,
    pub h1_broken: f64,
    pub nodal: f64,
    pub cond: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ConvergenceTable {
    pub meta: TableMeta,
    pub rows: Vec<TableRow>,
    /// One entry per consecutive pair of rows; `None` when undefined.
    pub order_l2: Vec<Option<f64>>,
    pub order_h1: Vec<Option<f64>>,
    pub order_nodal: Vec<Option<f64>>,
}

fn pairwise(h: &[f64], e: &[f64]) -> Vec<Option<f64>> {
    h.windows(2)
        .zip(e.windows(2))
        .map(|(h, e)| observed_orders(h, e).ok().map(|o| o[0]))
        .collect()
}

impl ConvergenceTable {
    pub fn new(meta: TableMeta, rows: Vec<TableRow>) -> Self {
        let h: Vec<f64> = rows.iter().map(|r| r.h).collect();
        let col = |f: fn(&TableRow) -> f64| rows.iter().map(f).collect::<Vec<_>>();
        Self {
            order_l2: pairwise(&h, &col(|r| r.l2)),
            order_h1: pairwise(&h, &col(|r| r.h1_broken)),
            order_nodal: pairwise(&h, &col(|r| r.nodal)),
            meta,
            rows,
        }
    }

    /// Mean of the last three defined orders of a column.
    pub fn asymptotic_order(orders: &[Option<f64>]) -> Option<f64> {
        let defined: Vec<f64> = orders.iter().flatten().copied().collect();
        (!defined.is_empty()).then(|| mean_of_last(&defined, 3))
    }

    fn h_label(&self, row: &TableRow) -> String {
        if self.meta.domain_length == 1.0 {
            format!("h=1/{}", row.elements)
        } else {
            format!("h={}", sci(row.h))
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ReportFormat {
    Csv,
    Markdown,
    Json,
}

impl FromStr for ReportFormat {
    type Err = FemError;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "csv" => Ok(Self::Csv),
            "md" | "markdown" => Ok(Self::Markdown),
            "json" => Ok(Self::Json),
            other => Err(FemError::InvalidInput(format!(
                "unknown format {other:?}; valid formats: csv, md, json"
            ))),
        }
    }
}

/// Scientific notation with six significant digits and a two-digit
/// exponent, e.g. `1.43943e-03`.
pub fn sci(v: f64) -> String {
    if !v.is_finite() {
        return format!("{v}");
    }
    let s = format!("{v:.5e}");
    let (mantissa, exp) = s.split_once('e').unwrap();
    let exp: i32 = exp.parse().unwrap();
    let sign = if exp < 0 { '-' } else { '+' };
    format!("{mantissa}e{sign}{:02}", exp.abs())
}

fn opt(v: Option<f64>, f: impl Fn(f64) -> String) -> String {
    v.map(f).unwrap_or_default()
}

fn order_fmt(v: f64) -> String {
    format!("{v:.2}")
}

pub fn emit_report(table: &ConvergenceTable, format: ReportFormat) -> Result<String> {
    if table.rows.is_empty() {
        return Err(FemError::InvalidInput("cannot emit an empty table".into()));
    }
    Ok(match format {
        ReportFormat::Csv => emit_csv(table),
        ReportFormat::Markdown => emit_markdown(table),
        ReportFormat::Json => {
            let mut s = serde_json::to_string_pretty(table).map_err(|e| FemError::InvalidInput(e.to_string()))?;
            s.push('\n');
            s
        }
    })
}

fn order_at(orders: &[Option<f64>], row: usize) -> Option<f64> {
    row.checked_sub(1).and_then(|i| orders.get(i).copied().flatten())
}

fn emit_csv(t: &ConvergenceTable) -> String {
    let mut out = String::new();
    out.push_str(CSV_HEADER);
    out.push('\n');
    for (i, r) in t.rows.iter().enumerate() {
        let _ = writeln!(
            out,
            "{},{},{},{},{},{},{},{}",
            sci(r.h),
            sci(r.l2),
            sci(r.h1_broken),
            sci(r.nodal),
            opt(r.cond, sci),
            opt(order_at(&t.order_l2, i), sci),
            opt(order_at(&t.order_h1, i), sci),
            opt(order_at(&t.order_nodal, i), sci),
        );
    }
    out
}

fn emit_markdown(t: &ConvergenceTable) -> String {
    let title = format!("{} (P{})", t.meta.problem, t.meta.degree);
    let header = [
        title.as_str(),
        "L2 error",
        "H1 error",
        "nodal error",
        "condition number",
        "order L2",
        "order H1",
        "order nodal",
    ];
    let mut cells: Vec<Vec<String>> = t
        .rows
        .iter()
        .enumerate()
        .map(|(i, r)| {
            vec![
                t.h_label(r),
                sci(r.l2),
                sci(r.h1_broken),
                sci(r.nodal),
                r.cond.map(sci).unwrap_or_else(|| "-".into()),
                opt(order_at(&t.order_l2, i), order_fmt),
                opt(order_at(&t.order_h1, i), order_fmt),
                opt(order_at(&t.order_nodal, i), order_fmt),
            ]
        })
        .collect();
    let asym = |o: &[Option<f64>]| {
        ConvergenceTable::asymptotic_order(o)
            .map(|v| format!("~{v:.2}"))
            .unwrap_or_else(|| "-".into())
    };
    cells.push(vec![
        "order".into(),
        asym(&t.order_l2),
        asym(&t.order_h1),
        asym(&t.order_nodal),
        "-".into(),
        String::new(),
        String::new(),
        String::new(),
    ]);

    let widths: Vec<usize> = (0..header.len())
        .map(|c| {
            cells
                .iter()
                .map(|row| row[c].len())
                .chain([header[c].len()])
                .max()
                .unwrap()
        })
        .collect();
    let line = |row: &[&str]| {
        let padded: Vec<String> = row.iter().zip(&widths).map(|(s, w)| format!("{s:<w$}")).collect();
        format!("| {} |\n", padded.join(" | "))
    };
    let mut out = line(&header);
    let dashes: Vec<String> = widths.iter().map(|w| "-".repeat(*w)).collect();
    out.push_str(&line(&dashes.iter().map(String::as_str).collect::<Vec<_>>()));
    for row in &cells {
        out.push_str(&line(&row.iter().map(String::as_str).collect::<Vec<_>>()));
    }
    out
}
