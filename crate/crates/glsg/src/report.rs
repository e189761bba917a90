//! JSON and text renderings of analysis and spectrum results.
//!
//! JSON objects are built as `serde_json::Value`, whose maps keep keys
//! sorted, so the output is byte-stable.

use std::fmt::Write as _;

use glsg_core::graph::{build_graph, naive_degrees, GraphError};
use glsg_core::invariants::{compute_invariants, delta_obstruction, regularity, InvariantSet};
use glsg_core::spectral::Spectrum;
use glsg_core::CayleyTable;
use serde_json::{json, Value};
use thiserror::Error;

/// Largest order for which `analyze` runs the explicit-graph cross-check by default.
pub const ORACLE_MAX_ORDER: usize = 20;

#[derive(Debug, Error)]
pub enum ReportError {
    #[error("OracleMismatch i={i} j={j} formula={formula} oracle={oracle}")]
    OracleMismatch {
        i: usize,
        j: usize,
        formula: i64,
        oracle: usize,
    },
    #[error(transparent)]
    Graph(#[from] GraphError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OracleStatus {
    Checked,
    Skipped,
    Disabled,
}

impl OracleStatus {
    fn as_str(self) -> &'static str {
        match self {
            OracleStatus::Checked => "checked",
            OracleStatus::Skipped => "skipped",
            OracleStatus::Disabled => "disabled",
        }
    }
}

#[derive(Debug, Clone)]
pub struct Analysis {
    pub table: CayleyTable,
    pub invariants: InvariantSet,
    pub oracle: OracleStatus,
    pub oracle_degrees: Option<Vec<usize>>,
}

/// Computes the invariants and, when enabled and `n <= 20`, checks every
/// formula degree against the explicit graph.
pub fn analyze(table: &CayleyTable, use_oracle: bool) -> Result<Analysis, ReportError> {
    let invariants = compute_invariants(table);
    let n = table.order();
    let (oracle, oracle_degrees) = if !use_oracle {
        (OracleStatus::Disabled, None)
    } else if n > ORACLE_MAX_ORDER {
        (OracleStatus::Skipped, None)
    } else {
        let degrees = naive_degrees(&build_graph(table)?);
        for (p, (&formula, &oracle)) in invariants.degrees().iter().zip(&degrees).enumerate() {
            if formula != oracle as i64 {
                return Err(ReportError::OracleMismatch {
                    i: p / n + 1,
                    j: p % n + 1,
                    formula,
                    oracle,
                });
            }
        }
        (OracleStatus::Checked, Some(degrees))
    };
    Ok(Analysis {
        table: table.clone(),
        invariants,
        oracle,
        oracle_degrees,
    })
}

fn grid<T: Clone>(flat: &[T], n: usize) -> Vec<Vec<T>> {
    flat.chunks(n).map(<[T]>::to_vec).collect()
}

impl Analysis {
    pub fn to_json(&self) -> Value {
        let n = self.table.order();
        let reg = regularity(&self.invariants);
        let delta = delta_obstruction(&self.invariants);
        json!({
            "order": n,
            "regular": reg.regular,
            "degree_set": reg.degree_set,
            "ns": self.invariants.ns_all(),
            "min_deg": reg.degree_set.first(),
            "max_deg": reg.degree_set.last(),
            "delta_max": delta.delta_max,
            "blocked": delta.blocked,
            "degrees": grid(self.invariants.degrees(), n),
            "q": grid(self.invariants.q_values(), n),
            "oracle": self.oracle.as_str(),
            "oracle_degrees": self.oracle_degrees.as_ref().map(|d| grid(d, n)),
        })
    }

    pub fn to_text(&self) -> String {
        let n = self.table.order();
        let reg = regularity(&self.invariants);
        let delta = delta_obstruction(&self.invariants);
        let join = |xs: &mut dyn Iterator<Item = String>| xs.collect::<Vec<_>>().join(" ");
        let mut out = String::new();
        let _ = writeln!(out, "order: {n}");
        let _ = writeln!(out, "regular: {}", reg.regular);
        let _ = writeln!(
            out,
            "degree set: {}",
            join(&mut reg.degree_set.iter().map(i64::to_string))
        );
        let _ = writeln!(
            out,
            "N_S: {}",
            join(&mut self.invariants.ns_all().iter().map(u64::to_string))
        );
        let _ = writeln!(out, "delta_max: {} (blocked: {})", delta.delta_max, delta.blocked);
        out.push_str("formula degrees:\n");
        for row in self.invariants.degrees().chunks(n) {
            let _ = writeln!(out, "  {}", join(&mut row.iter().map(i64::to_string)));
        }
        match &self.oracle_degrees {
            Some(d) => {
                out.push_str("oracle degrees:\n");
                for row in d.chunks(n) {
                    let _ = writeln!(out, "  {}", join(&mut row.iter().map(usize::to_string)));
                }
                out.push_str("oracle: all cells match\n");
            }
            None => {
                let _ = writeln!(out, "oracle: {}", self.oracle.as_str());
            }
        }
        out
    }
}

/// Rounds to 12 significant digits; magnitudes below `1e-12` (solver noise
/// around zero) become `0.0`.
pub fn round12(x: f64) -> f64 {
    if x.abs() < 1e-12 {
        return 0.0;
    }
    if !x.is_finite() {
        return x;
    }
    let r: f64 = format!("{x:.11e}").parse().expect("formatted float parses");
    if r == 0.0 {
        0.0
    } else {
        r
    }
}

pub fn spectrum_json(s: &Spectrum) -> Value {
    let clusters: Vec<Value> = s
        .clusters
        .iter()
        .map(|c| json!([round12(c.value), c.multiplicity]))
        .collect();
    json!({ "clusters": clusters, "energy": round12(s.energy) })
}

pub fn spectrum_text(s: &Spectrum) -> String {
    let mut out = String::from("eigenvalue  multiplicity\n");
    for c in &s.clusters {
        let _ = writeln!(out, "{:>10}  {}", round12(c.value), c.multiplicity);
    }
    let _ = writeln!(out, "energy: {}", round12(s.energy));
    out
}
