//! Census of regular graphs over all semigroups of a given small order.
//!
//! Labeled tables are enumerated with the pruned search from
//! [`glsg_core::enumerate`], split into independent subtrees by first row.
//! Subtrees run in parallel; each produces the set of canonical forms it saw
//! (up to isomorphism and anti-isomorphism) and those sets are merged in
//! first-row order, so results do not depend on the thread count.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::path::PathBuf;

use glsg_core::enumerate::{self, EnumerationError};
use glsg_core::invariants::{is_regular_glsg, q_is_constant};
use glsg_core::semigroup::unpack_cells;
use glsg_core::CayleyTable;
use rand::rngs::StdRng;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::checkpoint::{CensusState, CheckpointError};

#[derive(Debug, Error)]
pub enum CensusError {
    #[error(transparent)]
    Enumeration(#[from] EnumerationError),
    #[error(transparent)]
    Checkpoint(#[from] CheckpointError),
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CensusRow {
    pub order: usize,
    pub labeled_total: u64,
    pub canonical_total: u64,
    pub regular_count: u64,
    pub percentage: f64,
}

impl CensusRow {
    fn from_state(state: &CensusState) -> Self {
        let canonical_total = state.classes.len() as u64;
        let regular_count = state.classes.values().filter(|&&r| r).count() as u64;
        CensusRow {
            order: state.order,
            labeled_total: state.labeled_total,
            canonical_total,
            regular_count,
            percentage: percentage(regular_count, canonical_total),
        }
    }
}

fn percentage(part: u64, whole: u64) -> f64 {
    if whole == 0 {
        0.0
    } else {
        part as f64 / whole as f64 * 100.0
    }
}

/// One decimal at or above 1%, two below (`75.0`, `6.3`, `0.26`).
pub fn format_percentage(p: f64) -> String {
    if p >= 1.0 {
        format!("{p:.1}")
    } else {
        format!("{p:.2}")
    }
}

#[derive(Debug, Clone, Copy)]
pub struct Progress {
    pub order: usize,
    pub rows_done: u64,
    pub rows_total: u64,
    pub labeled: u64,
    pub classes: usize,
}

#[derive(Default)]
pub struct CensusOptions {
    pub allow_order_6: bool,
    /// Resumable state file; read if present, rewritten after every batch.
    pub checkpoint: Option<PathBuf>,
    /// First rows per parallel batch (0 picks a default).
    pub batch_size: usize,
    pub progress: Option<Box<dyn Fn(Progress) + Sync>>,
}

impl CensusOptions {
    pub fn allow_order_6(mut self, yes: bool) -> Self {
        self.allow_order_6 = yes;
        self
    }
}

/// Full census result for one order.
#[derive(Debug, Clone)]
pub struct CensusOutcome {
    pub row: CensusRow,
    /// Packed canonical tables with their regularity, ascending.
    pub classes: BTreeMap<Vec<u8>, bool>,
}

impl CensusOutcome {
    pub fn canonical_tables(&self) -> impl Iterator<Item = (CayleyTable, bool)> + '_ {
        let n = self.row.order;
        self.classes.iter().map(move |(packed, &regular)| {
            let table = CayleyTable::from_cells(n, unpack_cells(n, packed))
                .expect("canonical tables are valid semigroups");
            (table, regular)
        })
    }
}

fn process_row(n: usize, row: &[u8]) -> (u64, BTreeMap<Vec<u8>, bool>) {
    let mut classes = BTreeMap::new();
    let count = enumerate::enumerate_with_first_row(n, row, |t| {
        let canonical = t.canonical_form();
        let key = canonical.packed();
        classes.entry(key).or_insert_with(|| q_is_constant(&canonical));
    })
    .expect("first rows come from the enumerator");
    (count, classes)
}

pub fn census(n: usize, options: &CensusOptions) -> Result<CensusOutcome, CensusError> {
    enumerate::check_order(n, options.allow_order_6)?;
    let rows = enumerate::first_rows(n)?;
    let mut state = match &options.checkpoint {
        Some(path) => CensusState::load(path, n)?
            .filter(|s| s.row_count == rows.len() as u64)
            .unwrap_or_else(|| CensusState::new(n, rows.len() as u64)),
        None => CensusState::new(n, rows.len() as u64),
    };
    let batch = if options.batch_size == 0 { 256 } else { options.batch_size };

    while (state.next_row as usize) < rows.len() {
        let start = state.next_row as usize;
        let end = (start + batch).min(rows.len());
        let parts: Vec<_> = rows[start..end].par_iter().map(|r| process_row(n, r)).collect();
        for (count, classes) in parts {
            state.labeled_total += count;
            for (key, regular) in classes {
                state.classes.entry(key).or_insert(regular);
            }
        }
        state.next_row = end as u64;
        if let Some(path) = &options.checkpoint {
            state.save(path)?;
        }
        if let Some(report) = &options.progress {
            report(Progress {
                order: n,
                rows_done: state.next_row,
                rows_total: state.row_count,
                labeled: state.labeled_total,
                classes: state.classes.len(),
            });
        }
    }

    Ok(CensusOutcome {
        row: CensusRow::from_state(&state),
        classes: state.classes,
    })
}

pub fn census_report(max_order: usize, options: &CensusOptions) -> Result<Vec<CensusRow>, CensusError> {
    enumerate::check_order(max_order, options.allow_order_6)?;
    (1..=max_order).map(|n| census(n, options).map(|o| o.row)).collect()
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Witness {
    pub table: CayleyTable,
    pub degree: i64,
}

/// Canonical tables of order `n` whose graph is regular, in lexicographic
/// order of their entries.
pub fn regular_witnesses(n: usize, options: &CensusOptions) -> Result<Vec<Witness>, CensusError> {
    Ok(witnesses_of(&census(n, options)?))
}

pub fn witnesses_of(outcome: &CensusOutcome) -> Vec<Witness> {
    let mut out: Vec<Witness> = outcome
        .canonical_tables()
        .filter(|(_, regular)| *regular)
        .map(|(table, _)| {
            let degree = is_regular_glsg(&table).degree_set[0];
            Witness { table, degree }
        })
        .collect();
    out.sort_by(|a, b| a.table.cells().cmp(b.table.cells()));
    out
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SpotCheck {
    pub order: usize,
    pub checked: usize,
    pub failures: usize,
}

/// Samples labeled tables, relabels each by a random permutation (and a
/// random transpose) and checks that the canonical form is unchanged.
pub fn spot_check_canonical(
    n: usize,
    samples: usize,
    seed: u64,
    allow_order_6: bool,
) -> Result<SpotCheck, CensusError> {
    let mut rng = StdRng::seed_from_u64(seed);
    // reservoir sample of labeled tables
    let mut reservoir: Vec<CayleyTable> = Vec::with_capacity(samples);
    let mut seen = 0u64;
    enumerate::enumerate_labeled(n, allow_order_6, |t| {
        seen += 1;
        if reservoir.len() < samples {
            reservoir.push(t.clone());
        } else {
            let slot = rng.gen_range(0..seen);
            if (slot as usize) < samples {
                reservoir[slot as usize] = t.clone();
            }
        }
    })?;
    let mut failures = 0;
    let mut checked = 0;
    let mut perm: Vec<usize> = (0..n).collect();
    for _ in 0..samples {
        let t = &reservoir[rng.gen_range(0..reservoir.len())];
        perm.shuffle(&mut rng);
        let mut moved = t.relabel(&perm);
        if rng.gen_bool(0.5) {
            moved = moved.transpose();
        }
        if moved.canonical_form() != t.canonical_form() {
            failures += 1;
        }
        checked += 1;
    }
    Ok(SpotCheck {
        order: n,
        checked,
        failures,
    })
}

pub fn format_csv(rows: &[CensusRow]) -> String {
    let mut out = String::from("order,total,regular,percentage\n");
    for r in rows {
        let _ = writeln!(
            out,
            "{},{},{},{}",
            r.order,
            r.canonical_total,
            r.regular_count,
            format_percentage(r.percentage)
        );
    }
    out
}

pub fn format_text(rows: &[CensusRow]) -> String {
    let mut out = format!(
        "{:>5}  {:>10}  {:>9}  {:>7}  {:>10}\n",
        "order", "total", "regular", "percent", "labeled"
    );
    for r in rows {
        let _ = writeln!(
            out,
            "{:>5}  {:>10}  {:>9}  {:>7}  {:>10}",
            r.order,
            r.canonical_total,
            r.regular_count,
            format_percentage(r.percentage),
            r.labeled_total
        );
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn percentage_formatting() {
        assert_eq!(format_percentage(100.0), "100.0");
        assert_eq!(format_percentage(75.0), "75.0");
        assert_eq!(format_percentage(percentage(3, 18)), "16.7");
        assert_eq!(format_percentage(percentage(8, 126)), "6.3");
        assert_eq!(format_percentage(percentage(3, 1160)), "0.26");
        assert_eq!(format_percentage(percentage(12, 15973)), "0.08");
        assert_eq!(format_percentage(percentage(30, 17282)), "0.17");
    }

    #[test]
    fn small_orders() {
        let opts = CensusOptions::default();
        let rows = census_report(2, &opts).unwrap();
        assert_eq!(
            rows,
            vec![
                CensusRow {
                    order: 1,
                    labeled_total: 1,
                    canonical_total: 1,
                    regular_count: 1,
                    percentage: 100.0
                },
                CensusRow {
                    order: 2,
                    labeled_total: 8,
                    canonical_total: 4,
                    regular_count: 3,
                    percentage: 75.0
                },
            ]
        );
        assert_eq!(
            format_csv(&rows),
            "order,total,regular,percentage\n1,1,1,100.0\n2,4,3,75.0\n"
        );
    }

    #[test]
    fn witnesses_order_1_and_2() {
        let opts = CensusOptions::default();
        let w1 = regular_witnesses(1, &opts).unwrap();
        assert_eq!(w1, vec![Witness { table: CayleyTable::null(1), degree: 0 }]);

        // Brute force over the four canonical order-2 classes: Z2, null,
        // left/right zero and the two-element semilattice.
        let w2 = regular_witnesses(2, &opts).unwrap();
        let classes = [
            (CayleyTable::cyclic_group(2), Some(3)),
            (CayleyTable::null(2), Some(1)),
            (CayleyTable::left_zero(2), Some(1)),
            (CayleyTable::from_rows_one_based(&[[1i64, 1], [1, 2]]).unwrap(), None),
        ];
        let mut expected: Vec<Witness> = classes
            .iter()
            .filter_map(|(t, d)| {
                d.map(|degree| Witness {
                    table: t.canonical_form(),
                    degree,
                })
            })
            .collect();
        expected.sort_by(|a, b| a.table.cells().cmp(b.table.cells()));
        assert_eq!(w2, expected);
    }

    #[test]
    fn checkpoint_resume_matches_fresh_run() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("census3.bin");
        let fresh = census(3, &CensusOptions::default()).unwrap();

        // Stop after one small batch by writing a partial state by hand.
        let opts = CensusOptions {
            checkpoint: Some(path.clone()),
            batch_size: 4,
            ..Default::default()
        };
        let rows = enumerate::first_rows(3).unwrap();
        let mut partial = CensusState::new(3, rows.len() as u64);
        for r in &rows[..4] {
            let (count, classes) = process_row(3, r);
            partial.labeled_total += count;
            for (k, v) in classes {
                partial.classes.entry(k).or_insert(v);
            }
        }
        partial.next_row = 4;
        partial.save(&path).unwrap();

        let resumed = census(3, &opts).unwrap();
        assert_eq!(resumed.row, fresh.row);
        assert_eq!(resumed.classes, fresh.classes);
        let saved = CensusState::load(&path, 3).unwrap().unwrap();
        assert_eq!(saved.next_row, saved.row_count);
    }

    #[test]
    fn deterministic_across_batch_sizes() {
        let a = census(3, &CensusOptions { batch_size: 1, ..Default::default() }).unwrap();
        let b = census(3, &CensusOptions { batch_size: 1000, ..Default::default() }).unwrap();
        assert_eq!(a.row, b.row);
        assert_eq!(a.classes, b.classes);
    }

    #[test]
    fn spot_check_small() {
        let r = spot_check_canonical(3, 200, 7, false).unwrap();
        assert_eq!(r, SpotCheck { order: 3, checked: 200, failures: 0 });
    }
}
