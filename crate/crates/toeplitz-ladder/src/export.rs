//! JSON and CSV emission.
//!
//! CSV cells carry 17 significant digits, enough to round-trip every f64.
//! JSON numbers use the shortest representation that round-trips.

use serde::Serialize;
use serde_json::{json, Map, Value};

use crate::diffeq::OrbitRow;
use crate::fh::GoldenRow;
use crate::opuc::OpucSequence;
use crate::symbols::MomentSequence;
use crate::{tolerances, Error, Result, C64};

/// Version pinned in every JSON envelope.
pub const SCHEMA_VERSION: &str = "1";

/// 17 significant digits.
pub fn fmt17(x: f64) -> String {
    if x == 0.0 || !x.is_finite() {
        return format!("{x}");
    }
    format!("{x:.16e}")
}

/// 10 significant digits.
pub fn fmt10(x: f64) -> String {
    if x == 0.0 || !x.is_finite() {
        return format!("{x}");
    }
    format!("{x:.9e}")
}

/// Output of one command: {command, symbol, results, tolerances, pass, version}.
#[derive(Debug, Clone, Serialize)]
pub struct Envelope {
    pub command: String,
    pub symbol: Value,
    pub results: Value,
    pub tolerances: Value,
    pub pass: bool,
    pub version: String,
}

impl Envelope {
    pub fn new(command: &str, symbol: Value, results: Value, pass: bool) -> Self {
        Envelope {
            command: command.to_string(),
            symbol,
            results,
            tolerances: tolerances_json(),
            pass,
            version: SCHEMA_VERSION.to_string(),
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("envelope serializes")
    }
}

pub fn tolerances_json() -> Value {
    let map: Map<String, Value> = tolerances::all()
        .into_iter()
        .map(|(k, v)| (k.to_string(), json!(v)))
        .collect();
    Value::Object(map)
}

pub fn to_value<T: Serialize>(x: &T) -> Value {
    serde_json::to_value(x).expect("value serializes")
}

/// k_n, φ_n(0), l_n, r_n, m_n, s_n for one n.
#[derive(Debug, Clone, Serialize)]
pub struct OpucRecord {
    pub n: usize,
    pub k: C64,
    pub phi0: C64,
    pub l: C64,
    pub r: C64,
    /// k_n/k_{n+1}; absent at the last index.
    pub m: Option<C64>,
    /// r_{n+1}/r_n; absent at the last index or when r_n = 0.
    pub s: Option<C64>,
}

pub fn opuc_records(seq: &OpucSequence) -> Vec<OpucRecord> {
    (0..=seq.n_max())
        .map(|n| OpucRecord {
            n,
            k: seq.k(n),
            phi0: seq.phi0(n),
            l: seq.l(n),
            r: seq.r(n),
            m: seq.m(n as i64).ok(),
            s: seq.s(n).ok(),
        })
        .collect()
}

fn csv_string(header: &[&str], rows: impl IntoIterator<Item = Vec<String>>) -> Result<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    let io = |e: csv::Error| Error::domain(format!("csv: {e}"));
    w.write_record(header).map_err(io)?;
    for r in rows {
        w.write_record(&r).map_err(io)?;
    }
    let bytes = w.into_inner().map_err(|e| Error::domain(format!("csv: {e}")))?;
    String::from_utf8(bytes).map_err(|e| Error::domain(format!("csv: {e}")))
}

/// A CSV document from string cells.
pub fn table_csv(header: &[&str], rows: &[Vec<String>]) -> Result<String> {
    csv_string(header, rows.iter().cloned())
}

/// Columns m, re, im for −M ≤ m ≤ M.
pub fn moments_csv(m: &MomentSequence) -> Result<String> {
    csv_string(
        &["m", "re", "im"],
        m.iter().map(|(k, v)| vec![k.to_string(), fmt17(v.re), fmt17(v.im)]),
    )
}

fn opt_parts(z: Option<C64>) -> [String; 2] {
    match z {
        Some(z) => [fmt17(z.re), fmt17(z.im)],
        None => [String::new(), String::new()],
    }
}

pub fn opuc_csv(seq: &OpucSequence) -> Result<String> {
    let header = [
        "n", "k_re", "k_im", "phi0_re", "phi0_im", "l_re", "l_im", "r_re", "r_im", "m_re", "m_im", "s_re", "s_im",
    ];
    csv_string(
        &header,
        opuc_records(seq).into_iter().map(|r| {
            let mut row = vec![r.n.to_string()];
            for z in [r.k, r.phi0, r.l, r.r] {
                row.push(fmt17(z.re));
                row.push(fmt17(z.im));
            }
            row.extend(opt_parts(r.m));
            row.extend(opt_parts(r.s));
            row
        }),
    )
}

/// Columns n, r_n, oracle_r_n, abs_diff.
pub fn orbit_csv(rows: &[OrbitRow]) -> Result<String> {
    csv_string(
        &["n", "r_n", "oracle_r_n", "abs_diff"],
        rows.iter()
            .map(|r| vec![r.n.to_string(), fmt17(r.r_n), fmt17(r.oracle_r_n), fmt17(r.abs_diff)]),
    )
}

pub fn golden_csv(rows: &[GoldenRow]) -> Result<String> {
    csv_string(
        &[
            "alpha",
            "beta",
            "n",
            "kn2",
            "phi0_sq",
            "delta_closed",
            "delta_lu",
            "rel_err",
        ],
        rows.iter().map(|r| {
            vec![
                fmt17(r.alpha),
                fmt17(r.beta),
                r.n.to_string(),
                fmt17(r.kn2),
                fmt17(r.phi0_sq),
                fmt17(r.delta_closed),
                fmt17(r.delta_lu),
                fmt17(r.rel_err),
            ]
        }),
    )
}
