//! Counting invariants and the degree formula.
//!
//! For a vertex `v = (s_i, s_j, s_k)`:
//!
//! * `N_S(s_k)` is the number of ordered pairs with product `s_k`,
//! * `N_R(v)` counts `t != s_j` with `s_i t = s_k`,
//! * `N_C(v)` counts `t != s_i` with `t s_j = s_k`,
//!
//! and `deg(v) = 2n - 3 + Q(v)` with `Q(v) = N_S(s_k) - 2 N_R(v) - 2 N_C(v)`.
//! The graph is regular exactly when `Q` is constant.

use alloc::vec;
use alloc::vec::Vec;

use crate::semigroup::{CayleyTable, FamilySpec};

/// Invariants of every vertex of `Γ(S)`, indexed by table cell.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InvariantSet {
    n: usize,
    ns: Vec<u64>,
    nr: Vec<u64>,
    nc: Vec<u64>,
    q: Vec<i64>,
    deg: Vec<i64>,
}

impl InvariantSet {
    pub fn order(&self) -> usize {
        self.n
    }

    /// `N_S` of element `k`.
    pub fn ns(&self, k: usize) -> u64 {
        self.ns[k]
    }

    pub fn ns_all(&self) -> &[u64] {
        &self.ns
    }

    pub fn nr(&self, i: usize, j: usize) -> u64 {
        self.nr[i * self.n + j]
    }

    pub fn nc(&self, i: usize, j: usize) -> u64 {
        self.nc[i * self.n + j]
    }

    pub fn q(&self, i: usize, j: usize) -> i64 {
        self.q[i * self.n + j]
    }

    pub fn deg(&self, i: usize, j: usize) -> i64 {
        self.deg[i * self.n + j]
    }

    /// Formula degrees in row-major cell order.
    pub fn degrees(&self) -> &[i64] {
        &self.deg
    }

    pub fn q_values(&self) -> &[i64] {
        &self.q
    }
}

/// Single pass over the table followed by a per-cell lookup; `O(n^2)` time and space.
pub fn compute_invariants(table: &CayleyTable) -> InvariantSet {
    let n = table.order();
    let mut ns = vec![0u64; n];
    // row_hits[i * n + k] = |{t : s_i t = s_k}|, col_hits[j * n + k] = |{t : t s_j = s_k}|
    let mut row_hits = vec![0u64; n * n];
    let mut col_hits = vec![0u64; n * n];
    for i in 0..n {
        for j in 0..n {
            let k = table.get(i, j);
            ns[k] += 1;
            row_hits[i * n + k] += 1;
            col_hits[j * n + k] += 1;
        }
    }

    let mut nr = Vec::with_capacity(n * n);
    let mut nc = Vec::with_capacity(n * n);
    let mut q = Vec::with_capacity(n * n);
    let mut deg = Vec::with_capacity(n * n);
    let base = 2 * n as i64 - 3;
    for i in 0..n {
        for j in 0..n {
            let k = table.get(i, j);
            // the cell itself is one of the hits
            let r = row_hits[i * n + k] - 1;
            let c = col_hits[j * n + k] - 1;
            let qv = ns[k] as i64 - 2 * r as i64 - 2 * c as i64;
            nr.push(r);
            nc.push(c);
            q.push(qv);
            deg.push(base + qv);
        }
    }
    InvariantSet {
        n,
        ns,
        nr,
        nc,
        q,
        deg,
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Regularity {
    pub regular: bool,
    /// Distinct formula degrees, ascending.
    pub degree_set: Vec<i64>,
}

pub fn regularity(inv: &InvariantSet) -> Regularity {
    let mut degree_set = inv.deg.clone();
    degree_set.sort_unstable();
    degree_set.dedup();
    Regularity {
        regular: degree_set.len() == 1,
        degree_set,
    }
}

pub fn is_regular_glsg(table: &CayleyTable) -> Regularity {
    regularity(&compute_invariants(table))
}

/// Fast regularity test used by the census: stops at the first cell whose
/// `Q` differs from the first one.
pub fn q_is_constant(table: &CayleyTable) -> bool {
    let n = table.order();
    let mut ns = vec![0i64; n];
    let mut row_hits = vec![0i64; n * n];
    let mut col_hits = vec![0i64; n * n];
    for i in 0..n {
        for j in 0..n {
            let k = table.get(i, j);
            ns[k] += 1;
            row_hits[i * n + k] += 1;
            col_hits[j * n + k] += 1;
        }
    }
    let q_at = |i: usize, j: usize| {
        let k = table.get(i, j);
        ns[k] - 2 * (row_hits[i * n + k] - 1) - 2 * (col_hits[j * n + k] - 1)
    };
    let first = q_at(0, 0);
    (0..n).all(|i| (0..n).all(|j| q_at(i, j) == first))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DeltaObstruction {
    /// Spread of `N_S` over elements that occur as products.
    pub delta_max: u64,
    /// `delta_max > 4 (n - 1)`; implies the graph is not regular.
    pub blocked: bool,
}

pub fn delta_obstruction(inv: &InvariantSet) -> DeltaObstruction {
    let realized = inv.ns.iter().copied().filter(|&c| c > 0);
    let max = realized.clone().max().unwrap_or(0);
    let min = realized.min().unwrap_or(0);
    let delta_max = max - min;
    let bound = 4 * (inv.n as u64 - 1);
    DeltaObstruction {
        delta_max,
        blocked: delta_max > bound,
    }
}

/// Closed forms for the Brandt semigroup over a group of order `m` with an
/// index set of size `n`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BrandtClosedForms {
    pub ns_nonzero: u64,
    pub ns_zero: u64,
    pub delta: u64,
}

pub fn brandt_closed_forms(m: u64, n: u64) -> BrandtClosedForms {
    assert!(m >= 1 && n >= 1, "Brandt parameters must be positive");
    let order = 1 + m * n * n;
    let ns_nonzero = m * n;
    let ns_zero = order * order - m * m * n * n * n;
    let delta = 1 + 2 * m * n * n - m * n + m * m * n * n * n * (n - 1);
    BrandtClosedForms {
        ns_nonzero,
        ns_zero,
        delta,
    }
}

/// What the closed-form results predict for a family.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ClosedFormDegree {
    Regular(u64),
    NotRegular,
    /// No closed form; use [`compute_invariants`].
    Deferred,
}

pub fn family_closed_form_degree(spec: &FamilySpec) -> ClosedFormDegree {
    match *spec {
        FamilySpec::CyclicGroup { n } => ClosedFormDegree::Regular(3 * n as u64 - 3),
        FamilySpec::Null { n } | FamilySpec::ConstantImage { n, .. } => {
            let n = n as u64;
            ClosedFormDegree::Regular((n - 1) * (n - 1))
        }
        FamilySpec::RectangularBand { p, q } => band_degree(p as u64, q as u64),
        FamilySpec::LeftZero { n } => band_degree(n as u64, 1),
        FamilySpec::RightZero { n } => band_degree(1, n as u64),
        FamilySpec::Brandt { n, .. } if n > 1 => ClosedFormDegree::NotRegular,
        FamilySpec::Brandt { .. } => ClosedFormDegree::Deferred,
    }
}

fn band_degree(p: u64, q: u64) -> ClosedFormDegree {
    // N_S = pq, N_R = p - 1, N_C = q - 1
    let pq = p * q;
    ClosedFormDegree::Regular(2 * pq + pq - 3 - 2 * (p - 1) - 2 * (q - 1))
}
