//! Exhaustive enumeration of labeled semigroups of small order.
//!
//! The search branches on the first unassigned cell in row-major order. A
//! triple `(a, b, c)` reads the four cells `ab`, `bc`, `(ab)c` and `a(bc)`.
//! Every assignment is followed by a pass over the triples in which the new
//! cell plays one of those four roles: once both sides of `(ab)c = a(bc)`
//! are addressable, a known side forces the other cell, and two known sides
//! that differ cut the branch. Forced cells are queued and processed the same
//! way, and a trail undoes them on backtrack. Each triple is checked when its
//! last cell is set, so every leaf is associative, and since forced values
//! are implied by the branch decisions each table is reached exactly once.

use alloc::vec::Vec;

use thiserror::Error;

use crate::semigroup::CayleyTable;

/// Largest order enumerated without an explicit override.
pub const DEFAULT_MAX_ORDER: usize = 5;
/// Hard limit; order 6 is a long run.
pub const MAX_ORDER: usize = 6;

const UNSET: u8 = u8::MAX;
const CELLS: usize = MAX_ORDER * MAX_ORDER;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EnumerationError {
    #[error("OrderTooLarge n={n} max={max}")]
    OrderTooLarge { n: usize, max: usize },
    #[error("InvalidOrder n={0}")]
    InvalidOrder(usize),
    #[error("InvalidFirstRow")]
    InvalidFirstRow,
}

/// Checks `n` against the enumeration limits.
pub fn check_order(n: usize, allow_order_6: bool) -> Result<(), EnumerationError> {
    if n == 0 {
        return Err(EnumerationError::InvalidOrder(n));
    }
    let max = if allow_order_6 { MAX_ORDER } else { DEFAULT_MAX_ORDER };
    if n > max {
        return Err(EnumerationError::OrderTooLarge { n, max });
    }
    Ok(())
}

/// A partially filled table with an undo trail and a propagation queue.
struct PartialTable {
    n: usize,
    cells: [u8; CELLS],
    trail: Vec<u8>,
    queue: Vec<u8>,
}

impl PartialTable {
    fn new(n: usize) -> Self {
        PartialTable {
            n,
            cells: [UNSET; CELLS],
            trail: Vec::with_capacity(CELLS),
            queue: Vec::with_capacity(CELLS),
        }
    }

    #[inline]
    fn at(&self, i: u8, j: u8) -> u8 {
        self.cells[i as usize * self.n + j as usize]
    }

    #[inline]
    fn pos(&self, i: u8, j: u8) -> usize {
        i as usize * self.n + j as usize
    }

    /// Sets an unset cell (queueing it) or checks an already set one.
    #[inline]
    fn force(&mut self, pos: usize, v: u8) -> bool {
        match self.cells[pos] {
            UNSET => {
                self.cells[pos] = v;
                self.trail.push(pos as u8);
                self.queue.push(pos as u8);
                true
            }
            cur => cur == v,
        }
    }

    /// Makes cells `p` and `q` equal if either is known.
    #[inline]
    fn equate(&mut self, p: usize, q: usize) -> bool {
        match (self.cells[p], self.cells[q]) {
            (UNSET, UNSET) => true,
            (UNSET, y) => self.force(p, y),
            (x, UNSET) => self.force(q, x),
            (x, y) => x == y,
        }
    }

    fn undo(&mut self, mark: usize) {
        for &p in &self.trail[mark..] {
            self.cells[p as usize] = UNSET;
        }
        self.trail.truncate(mark);
    }

    /// Drains the queue; false on a contradiction.
    fn propagate(&mut self) -> bool {
        while let Some(p) = self.queue.pop() {
            if !self.check_cell(p as usize) {
                self.queue.clear();
                return false;
            }
        }
        true
    }

    /// Every triple in which cell `p` is one of the four lookups.
    fn check_cell(&mut self, p: usize) -> bool {
        let n = self.n as u8;
        let (i, j) = ((p / self.n) as u8, (p % self.n) as u8);
        let v = self.cells[p];
        for x in 0..n {
            // (i j) x = i (j x)
            let jx = self.at(j, x);
            if jx != UNSET && !self.equate(self.pos(v, x), self.pos(i, jx)) {
                return false;
            }
            // (x i) j = x (i j)
            let xi = self.at(x, i);
            if xi != UNSET && !self.equate(self.pos(xi, j), self.pos(x, v)) {
                return false;
            }
        }
        for a in 0..n {
            for b in 0..n {
                let ab = self.at(a, b);
                // (a b) j = a (b j) with ab = i: cell p is the left-hand side
                if ab == i {
                    let bj = self.at(b, j);
                    if bj != UNSET && !self.force(self.pos(a, bj), v) {
                        return false;
                    }
                }
                // (i a) b = i (a b) with ab = j: cell p is the right-hand side
                if ab == j {
                    let ia = self.at(i, a);
                    if ia != UNSET && !self.force(self.pos(ia, b), v) {
                        return false;
                    }
                }
            }
        }
        true
    }

    /// Assigns `v` to `pos` and propagates. On failure the caller undoes to its mark.
    fn assign(&mut self, pos: usize, v: u8) -> bool {
        self.force(pos, v) && self.propagate()
    }

    fn to_table(&self) -> CayleyTable {
        let n = self.n;
        CayleyTable::from_cells_unchecked(n, self.cells[..n * n].iter().map(|&c| u16::from(c)).collect())
    }
}

fn search(t: &mut PartialTable, from: usize, visit: &mut dyn FnMut(&CayleyTable)) -> u64 {
    let n = t.n;
    let Some(pos) = (from..n * n).find(|&p| t.cells[p] == UNSET) else {
        visit(&t.to_table());
        return 1;
    };
    let mut count = 0;
    for v in 0..n as u8 {
        let mark = t.trail.len();
        if t.assign(pos, v) {
            count += search(t, pos + 1, visit);
        }
        t.undo(mark);
    }
    count
}

/// Visits every associative `n x n` table exactly once and returns how many
/// there were. Orders above 5 need `allow_order_6`.
pub fn enumerate_labeled(
    n: usize,
    allow_order_6: bool,
    mut visit: impl FnMut(&CayleyTable),
) -> Result<u64, EnumerationError> {
    check_order(n, allow_order_6)?;
    let mut t = PartialTable::new(n);
    Ok(search(&mut t, 0, &mut visit))
}

/// Every first row (0-based) that survives propagation, in lexicographic
/// order. Each one roots an independent subtree.
pub fn first_rows(n: usize) -> Result<Vec<Vec<u8>>, EnumerationError> {
    check_order(n, true)?;
    let mut rows = Vec::new();
    let mut t = PartialTable::new(n);
    collect_rows(&mut t, 0, &mut rows);
    Ok(rows)
}

fn collect_rows(t: &mut PartialTable, pos: usize, out: &mut Vec<Vec<u8>>) {
    let n = t.n;
    if pos == n {
        out.push(t.cells[..n].to_vec());
        return;
    }
    if t.cells[pos] != UNSET {
        collect_rows(t, pos + 1, out);
        return;
    }
    for v in 0..n as u8 {
        let mark = t.trail.len();
        if t.assign(pos, v) {
            collect_rows(t, pos + 1, out);
        }
        t.undo(mark);
    }
}

/// Enumerates the subtree whose first row is `row`. Summed over
/// [`first_rows`] this visits the same tables as [`enumerate_labeled`].
pub fn enumerate_with_first_row(
    n: usize,
    row: &[u8],
    mut visit: impl FnMut(&CayleyTable),
) -> Result<u64, EnumerationError> {
    check_order(n, true)?;
    if row.len() != n || row.iter().any(|&v| v as usize >= n) {
        return Err(EnumerationError::InvalidFirstRow);
    }
    let mut t = PartialTable::new(n);
    for (j, &v) in row.iter().enumerate() {
        if !t.assign(j, v) {
            return Ok(0);
        }
    }
    Ok(search(&mut t, n, &mut visit))
}
