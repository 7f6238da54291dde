//! Rendering of command results as JSON, CSV or plain text.

use std::fmt::Write as _;
use std::ops::RangeInclusive;

use serde::Serialize;
use serde_json::{json, Value};

use super::verify::SuiteReport;
use super::{CliError, Format, SCHEMA};
use crate::catdata::CategoryTable;
use crate::cyclo::Coefficient;
use crate::roots::Family;
use crate::surgery::{self, PlumbingGraph};
use crate::verlinde::{coh_verlinde_dim, refinement_sum_check, spin_verlinde_dim, verlinde_dim, Arf};
use crate::CycNum;

/// Lossless CSV cell: the field order, a colon, then the coefficients joined by `;`.
pub fn csv_cell(x: &CycNum) -> String {
    let coeffs: Vec<String> = x.coeffs().iter().map(Coefficient::to_exact_string).collect();
    format!("{}:{}", x.order(), coeffs.join(";"))
}

fn approx(x: &CycNum) -> String {
    let (re, im) = x.to_complex();
    let clean = |v: f64| if v.abs() < 1e-12 { 0.0 } else { v };
    format!("{:.6}{:+.6}i", clean(re), clean(im))
}

fn approx_json(x: &CycNum) -> Value {
    let (re, im) = x.to_complex();
    json!([re, im])
}

fn to_json<T: Serialize>(value: &T) -> Result<String, CliError> {
    let mut text = serde_json::to_string_pretty(value).map_err(|e| CliError::Usage(e.to_string()))?;
    text.push('\n');
    Ok(text)
}

fn to_csv(header: &[String], rows: &[Vec<String>]) -> Result<String, CliError> {
    let mut w = csv::Writer::from_writer(Vec::new());
    let err = |e: csv::Error| CliError::Usage(e.to_string());
    w.write_record(header).map_err(err)?;
    for row in rows {
        w.write_record(row).map_err(err)?;
    }
    let bytes = w.into_inner().map_err(|e| CliError::Usage(e.to_string()))?;
    Ok(String::from_utf8(bytes).expect("csv output is UTF-8"))
}

pub fn table(table: &CategoryTable, format: Format) -> Result<String, CliError> {
    match format {
        Format::Json => {
            let doc = json!({ "schema": SCHEMA, "command": "table", "table": table.to_dump() });
            let mut text = serde_json::to_string(&doc).map_err(|e| CliError::Usage(e.to_string()))?;
            text.push('\n');
            Ok(text)
        }
        Format::Csv => {
            let mut header: Vec<String> = ["index", "weight", "grade", "dim", "twist_exponent", "twist"]
                .iter()
                .map(ToString::to_string)
                .collect();
            header.extend((0..table.len()).map(|j| format!("s_{j}")));
            header.extend(["omega_norm", "u_plus", "u_minus"].iter().map(ToString::to_string));
            let rows: Vec<Vec<String>> = table
                .simples()
                .items()
                .iter()
                .enumerate()
                .map(|(i, w)| {
                    let mut row = vec![
                        i.to_string(),
                        w.to_string(),
                        w.grade().to_string(),
                        csv_cell(&table.dims()[i]),
                        table.twist_exponents()[i].to_string(),
                        csv_cell(&table.twists()[i]),
                    ];
                    row.extend(table.smatrix()[i].iter().map(csv_cell));
                    row.extend([table.omega_norm(), table.u_plus(), table.u_minus()].into_iter().map(csv_cell));
                    row
                })
                .collect();
            to_csv(&header, &rows)
        }
        Format::Pretty => {
            let mut out = String::new();
            let order = table.category().field().order();
            let _ = writeln!(out, "{}: {} simples, zeta of order {order}", table.spec(), table.len());
            let _ = writeln!(out, "<Omega>  = {}  (~ {})", table.omega_norm(), approx(table.omega_norm()));
            let _ = writeln!(out, "F(U_+)   ~ {}", approx(table.u_plus()));
            let _ = writeln!(out, "F(U_-)   ~ {}", approx(table.u_minus()));
            let _ = writeln!(out, "{:>4}  {:<28} {:>5}  {:>12}  twist", "#", "weight", "grade", "dim ~");
            for (i, w) in table.simples().items().iter().enumerate() {
                let (dim, _) = table.dims()[i].to_complex();
                let _ = writeln!(
                    out,
                    "{i:>4}  {:<28} {:>5}  {dim:>12.6}  zeta^{}",
                    w.to_string(),
                    w.grade(),
                    table.twist_exponents()[i]
                );
            }
            Ok(out)
        }
    }
}

pub fn suite(report: &SuiteReport, format: Format) -> Result<String, CliError> {
    match format {
        Format::Json => to_json(&json!({
            "schema": SCHEMA,
            "command": "verify",
            "spec": report.spec,
            "passed": report.passed(),
            "checks": report.checks,
        })),
        Format::Csv => {
            let header: Vec<String> =
                ["check", "required", "passed", "detail"].iter().map(ToString::to_string).collect();
            let rows: Vec<Vec<String>> = report
                .checks
                .iter()
                .map(|c| vec![c.name.to_string(), c.required.to_string(), c.passed.to_string(), c.detail.clone()])
                .collect();
            to_csv(&header, &rows)
        }
        Format::Pretty => {
            let mut out = format!("verify {}\n", report.spec);
            for c in &report.checks {
                let status = match (c.passed, c.required) {
                    (true, _) => "ok",
                    (false, true) => "FAIL",
                    (false, false) => "note",
                };
                let _ = writeln!(out, "  {status:<4} {:<24} {}", c.name, c.detail);
            }
            let _ = writeln!(out, "{}", if report.passed() { "all required checks passed" } else { "FAILED" });
            Ok(out)
        }
    }
}

/// One genus of the Verlinde table; dimensions as decimal strings.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct VerlindeRow {
    pub genus: u32,
    pub ordinary: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub spin_even: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub spin_odd: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub coh_zero: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub coh_nonzero: Option<String>,
    pub sum_check: &'static str,
}

pub fn verlinde_rows(table: &CategoryTable, genera: RangeInclusive<u32>) -> Result<Vec<VerlindeRow>, CliError> {
    genera
        .map(|g| {
            let mut row = VerlindeRow {
                genus: g,
                ordinary: verlinde_dim(table, g)?.to_string(),
                spin_even: None,
                spin_odd: None,
                coh_zero: None,
                coh_nonzero: None,
                sum_check: if refinement_sum_check(table, g)?.passed { "ok" } else { "FAIL" },
            };
            match table.spec().family() {
                Family::B => {
                    row.spin_even = Some(spin_verlinde_dim(table, g, Arf::Even)?.to_string());
                    row.spin_odd = Some(spin_verlinde_dim(table, g, Arf::Odd)?.to_string());
                }
                Family::D => {
                    row.coh_zero = Some(coh_verlinde_dim(table, g, true)?.to_string());
                    row.coh_nonzero = Some(coh_verlinde_dim(table, g, false)?.to_string());
                }
            }
            Ok(row)
        })
        .collect()
}

pub fn verlinde(table: &CategoryTable, rows: &[VerlindeRow], format: Format) -> Result<String, CliError> {
    let (a, b) = match table.spec().family() {
        Family::B => ("spin_even", "spin_odd"),
        Family::D => ("coh_zero", "coh_nonzero"),
    };
    let refined = |r: &VerlindeRow| match table.spec().family() {
        Family::B => (r.spin_even.clone().unwrap_or_default(), r.spin_odd.clone().unwrap_or_default()),
        Family::D => (r.coh_zero.clone().unwrap_or_default(), r.coh_nonzero.clone().unwrap_or_default()),
    };
    match format {
        Format::Json => {
            to_json(&json!({ "schema": SCHEMA, "command": "verlinde", "spec": table.spec(), "rows": rows }))
        }
        Format::Csv => {
            let header: Vec<String> =
                ["genus", "ordinary", a, b, "sum_check"].iter().map(ToString::to_string).collect();
            let body: Vec<Vec<String>> = rows
                .iter()
                .map(|r| {
                    let (x, y) = refined(r);
                    vec![r.genus.to_string(), r.ordinary.clone(), x, y, r.sum_check.to_string()]
                })
                .collect();
            to_csv(&header, &body)
        }
        Format::Pretty => {
            let mut out = format!("Verlinde dimensions for {}\n", table.spec());
            let _ = writeln!(out, "{:>5}  {:>20}  {:>20}  {:>20}  sum", "genus", "ordinary", a, b);
            for r in rows {
                let (x, y) = refined(r);
                let _ = writeln!(out, "{:>5}  {:>20}  {x:>20}  {y:>20}  {}", r.genus, r.ordinary, r.sum_check);
            }
            Ok(out)
        }
    }
}

/// Invariant, admissible selections with their refined invariants, and the
/// decomposition check; the flag is whether the decomposition holds.
pub fn plumbing(table: &CategoryTable, graph: &PlumbingGraph, format: Format) -> Result<(String, bool), CliError> {
    let decomposition = surgery::decomposition(table, graph)?;
    let (b_plus, b_minus, b_zero) = surgery::signature_counts(&surgery::linking_matrix(graph));
    let status = if decomposition.holds { "ok" } else { "FAIL" };
    let text = match format {
        Format::Json => {
            let selections: Vec<Value> = decomposition
                .refined
                .iter()
                .map(|r| json!({ "selected": r.selection.selected, "value": r.value, "approx": approx_json(&r.value) }))
                .collect();
            to_json(&json!({
                "schema": SCHEMA,
                "command": "plumbing",
                "spec": table.spec(),
                "graph": graph,
                "linking_matrix": surgery::linking_matrix(graph),
                "signature": { "b_plus": b_plus, "b_minus": b_minus, "b_zero": b_zero },
                "invariant": decomposition.invariant,
                "approx": approx_json(&decomposition.invariant),
                "selections": selections,
                "decomposition": status,
            }))?
        }
        Format::Csv => {
            let header: Vec<String> = ["selection", "value", "approx"].iter().map(ToString::to_string).collect();
            let mut rows =
                vec![vec!["total".to_string(), csv_cell(&decomposition.invariant), approx(&decomposition.invariant)]];
            rows.extend(
                decomposition
                    .refined
                    .iter()
                    .map(|r| vec![r.selection.to_string(), csv_cell(&r.value), approx(&r.value)]),
            );
            to_csv(&header, &rows)?
        }
        Format::Pretty => {
            let mut out = format!("{} on a plumbing graph with {} vertices\n", table.spec(), graph.len());
            let _ = writeln!(out, "signature (b+, b-, b0) = ({b_plus}, {b_minus}, {b_zero})");
            let _ = writeln!(out, "tau = {}\n    ~ {}", decomposition.invariant, approx(&decomposition.invariant));
            for r in &decomposition.refined {
                let _ = writeln!(out, "  {:<20} ~ {}", r.selection.to_string(), approx(&r.value));
            }
            let _ = writeln!(out, "decomposition: {status}");
            out
        }
    };
    Ok((text, decomposition.holds))
}
