//! Rendering of tables, reports and benchmarks as JSON, CSV or aligned text.

use std::str::FromStr;

use gvlocal::closedform::IdentityReport;
use gvlocal::qseries::DescSeries;
use gvlocal::vertex::{GvTable, TripleStats};
use num_bigint::BigInt;
use serde_json::{json, Number, Value};

use crate::Format;

fn num(n: &BigInt) -> Value {
    // arbitrary_precision keeps every digit
    Value::Number(Number::from_str(&n.to_string()).expect("integer literal"))
}

fn nums(v: &[BigInt]) -> Value {
    Value::Array(v.iter().map(num).collect())
}

fn table_json(t: &GvTable) -> Value {
    json!({
        "d": t.d,
        "gd": t.gd,
        "n": nums(&t.n),
        "N": nums(&t.big_n),
        "E": nums(&t.e),
        "M": nums(&t.m()),
    })
}

fn pretty(v: &Value) -> String {
    serde_json::to_string_pretty(v).expect("json") + "\n"
}

fn csv(header: &[&str], rows: &[Vec<String>]) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(header).expect("in-memory write");
    for r in rows {
        w.write_record(r).expect("in-memory write");
    }
    String::from_utf8(w.into_inner().expect("in-memory flush")).expect("utf-8")
}

fn aligned(header: &[&str], rows: &[Vec<String>]) -> String {
    let mut width: Vec<usize> = header.iter().map(|h| h.len()).collect();
    for r in rows {
        for (w, c) in width.iter_mut().zip(r) {
            *w = (*w).max(c.len());
        }
    }
    let line = |cells: Vec<&str>| {
        let padded: Vec<String> = cells
            .iter()
            .zip(&width)
            .map(|(c, w)| if c.parse::<f64>().is_ok() { format!("{c:>w$}") } else { format!("{c:<w$}") })
            .collect();
        padded.join("  ").trim_end().to_string() + "\n"
    };
    let mut s = line(header.to_vec());
    for r in rows {
        s += &line(r.iter().map(String::as_str).collect());
    }
    s
}

fn render(header: &[&str], rows: &[Vec<String>], json: impl FnOnce() -> Value, format: Format) -> String {
    match format {
        Format::Json => pretty(&json()),
        Format::Csv => csv(header, rows),
        Format::Table => aligned(header, rows),
    }
}

const TABLE_COLUMNS: [&str; 7] = ["d", "g", "delta", "n", "N", "E", "M"];

fn table_rows(tables: &[GvTable]) -> Vec<Vec<String>> {
    let mut rows = Vec::new();
    for t in tables {
        for g in 0..=t.gd {
            let delta = t.gd - g;
            let i = g as usize;
            rows.push(vec![
                t.d.to_string(),
                g.to_string(),
                delta.to_string(),
                t.n[i].to_string(),
                t.big_n[i].to_string(),
                t.e[i].to_string(),
                t.m_at(delta).to_string(),
            ]);
        }
    }
    rows
}

pub fn tables(tables: &[GvTable], format: Format) -> String {
    let json = || Value::Array(tables.iter().map(table_json).collect());
    render(&TABLE_COLUMNS, &table_rows(tables), json, format)
}

/// Tables with each stripped free energy `f_d` in the series text form.
pub fn export_json(tables: &[GvTable], stripped: &[DescSeries]) -> String {
    let v: Vec<Value> = tables
        .iter()
        .zip(stripped)
        .map(|(t, f)| {
            let mut o = table_json(t);
            o["f_d"] = Value::String(f.to_text());
            o
        })
        .collect();
    pretty(&Value::Array(v))
}

pub fn reports(reports: &[IdentityReport], format: Format) -> String {
    let header = ["name", "window", "status", "first_mismatch_exponent", "detail"];
    let rows: Vec<Vec<String>> = reports
        .iter()
        .map(|r| {
            vec![
                r.name.to_string(),
                r.window.to_string(),
                r.status.as_str().to_string(),
                r.first_mismatch_exponent.map(|e| e.to_string()).unwrap_or_default(),
                r.detail.clone(),
            ]
        })
        .collect();
    let json = || {
        Value::Array(
            reports
                .iter()
                .map(|r| {
                    json!({
                        "name": r.name,
                        "window": r.window,
                        "status": r.status.as_str(),
                        "first_mismatch_exponent": r.first_mismatch_exponent,
                        "detail": r.detail,
                    })
                })
                .collect(),
        )
    };
    match format {
        Format::Csv => csv(&header, &rows),
        f => render(&header[..3], &rows.iter().map(|r| r[..3].to_vec()).collect::<Vec<_>>(), json, f),
    }
}

pub struct BenchRow {
    pub d: u32,
    pub seconds: f64,
    pub stats: TripleStats,
    pub hits: u64,
    pub misses: u64,
}

pub fn bench(rows: &[BenchRow], format: Format) -> String {
    let header = ["d", "seconds", "triples", "kept", "pairs", "cache_hits", "cache_misses"];
    let cells: Vec<Vec<String>> = rows
        .iter()
        .map(|r| {
            vec![
                r.d.to_string(),
                format!("{:.3}", r.seconds),
                r.stats.triples.to_string(),
                r.stats.kept.to_string(),
                r.stats.pairs.to_string(),
                r.hits.to_string(),
                r.misses.to_string(),
            ]
        })
        .collect();
    let json = || {
        Value::Array(
            rows.iter()
                .map(|r| {
                    json!({
                        "d": r.d,
                        "seconds": r.seconds,
                        "triples": r.stats.triples,
                        "kept": r.stats.kept,
                        "pairs": r.stats.pairs,
                        "cache_hits": r.hits,
                        "cache_misses": r.misses,
                    })
                })
                .collect(),
        )
    };
    render(&header, &cells, json, format)
}
