//! Adjacency spectra and graph energy.

use alloc::vec;
use alloc::vec::Vec;

use thiserror::Error;

use crate::graph::{connected_components, GlsgGraph};

/// Off-diagonal Frobenius norm at which Jacobi iteration stops.
pub const JACOBI_TOLERANCE: f64 = 1e-10;
pub const JACOBI_MAX_SWEEPS: usize = 100;
pub const DEFAULT_CLUSTER_TOLERANCE: f64 = 1e-6;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum SpectralError {
    #[error("NotSquare len={len} dim={dim}")]
    NotSquare { len: usize, dim: usize },
    #[error("NonSymmetric row={row} col={col}")]
    NonSymmetric { row: usize, col: usize },
    #[error("NoConvergence sweeps={sweeps} off_norm={off_norm:e}")]
    NoConvergence { sweeps: usize, off_norm: f64 },
}

/// All eigenvalues of a real symmetric `dim x dim` matrix (row-major), ascending.
///
/// Cyclic Jacobi: sweeps over every `(p, q)` pair with `p < q` and rotates
/// the pair away until the off-diagonal Frobenius norm drops below `tol`.
pub fn eigenvalues_symmetric(matrix: &[f64], dim: usize, tol: f64) -> Result<Vec<f64>, SpectralError> {
    if matrix.len() != dim * dim {
        return Err(SpectralError::NotSquare {
            len: matrix.len(),
            dim,
        });
    }
    for r in 0..dim {
        for c in r + 1..dim {
            if matrix[r * dim + c] != matrix[c * dim + r] {
                return Err(SpectralError::NonSymmetric { row: r + 1, col: c + 1 });
            }
        }
    }
    let mut a = matrix.to_vec();
    let off_norm = |a: &[f64]| {
        let mut s = 0.0;
        for r in 0..dim {
            for c in r + 1..dim {
                s += 2.0 * a[r * dim + c] * a[r * dim + c];
            }
        }
        libm::sqrt(s)
    };

    let mut sweeps = 0;
    let mut off = off_norm(&a);
    while off >= tol {
        if sweeps == JACOBI_MAX_SWEEPS {
            return Err(SpectralError::NoConvergence { sweeps, off_norm: off });
        }
        // skip entries that are negligible relative to the current norm
        let threshold = if sweeps < 3 { 0.0 } else { off * 1e-3 / dim as f64 };
        for p in 0..dim {
            for q in p + 1..dim {
                let apq = a[p * dim + q];
                if apq == 0.0 || libm::fabs(apq) < threshold {
                    continue;
                }
                rotate(&mut a, dim, p, q);
            }
        }
        sweeps += 1;
        off = off_norm(&a);
    }

    let mut values: Vec<f64> = (0..dim).map(|i| a[i * dim + i]).collect();
    values.sort_by(f64::total_cmp);
    Ok(values)
}

/// Applies the Jacobi rotation that zeroes `a[p][q]`.
fn rotate(a: &mut [f64], dim: usize, p: usize, q: usize) {
    let apq = a[p * dim + q];
    let app = a[p * dim + p];
    let aqq = a[q * dim + q];
    let theta = (aqq - app) / (2.0 * apq);
    let t = {
        let t = 1.0 / (libm::fabs(theta) + libm::sqrt(theta * theta + 1.0));
        if theta < 0.0 {
            -t
        } else {
            t
        }
    };
    let c = 1.0 / libm::sqrt(t * t + 1.0);
    let s = t * c;
    for r in 0..dim {
        if r == p || r == q {
            continue;
        }
        let arp = a[r * dim + p];
        let arq = a[r * dim + q];
        let new_p = c * arp - s * arq;
        let new_q = s * arp + c * arq;
        a[r * dim + p] = new_p;
        a[p * dim + r] = new_p;
        a[r * dim + q] = new_q;
        a[q * dim + r] = new_q;
    }
    a[p * dim + p] = app - t * apq;
    a[q * dim + q] = aqq + t * apq;
    a[p * dim + q] = 0.0;
    a[q * dim + p] = 0.0;
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Cluster {
    pub value: f64,
    pub multiplicity: usize,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Spectrum {
    /// Ascending.
    pub eigenvalues: Vec<f64>,
    /// Ascending by value.
    pub clusters: Vec<Cluster>,
    pub energy: f64,
}

impl Spectrum {
    pub fn from_eigenvalues(mut eigenvalues: Vec<f64>, cluster_tol: f64) -> Self {
        eigenvalues.sort_by(f64::total_cmp);
        let clusters = cluster(&eigenvalues, cluster_tol);
        let energy = eigenvalues.iter().map(|x| libm::fabs(*x)).sum();
        Spectrum {
            eigenvalues,
            clusters,
            energy,
        }
    }

    /// Builds a spectrum from `(value, multiplicity)` pairs, dropping empty
    /// clusters and merging equal values.
    pub fn from_clusters(pairs: &[(f64, usize)]) -> Self {
        let mut eigenvalues = Vec::new();
        for &(value, mult) in pairs {
            eigenvalues.extend(core::iter::repeat_n(value, mult));
        }
        Self::from_eigenvalues(eigenvalues, 0.0)
    }

    pub fn vertex_count(&self) -> usize {
        self.eigenvalues.len()
    }

    pub fn trace(&self) -> f64 {
        self.eigenvalues.iter().sum()
    }

    pub fn second_moment(&self) -> f64 {
        self.eigenvalues.iter().map(|x| x * x).sum()
    }

    /// Trace and second-moment identities of an adjacency spectrum:
    /// `|Σλ| <= 1e-6 |V|` and `|Σλ² - 2|E|| <= 1e-6 * 2|E| + 1e-9`.
    pub fn satisfies_moment_checks(&self, edge_count: usize) -> bool {
        let two_e = 2.0 * edge_count as f64;
        libm::fabs(self.trace()) <= 1e-6 * self.vertex_count() as f64
            && libm::fabs(self.second_moment() - two_e) <= 1e-6 * two_e + 1e-9
    }

    pub fn max_eigenvalue(&self) -> Option<f64> {
        self.eigenvalues.last().copied()
    }

    /// Same multiplicities and cluster values within `tol`.
    pub fn clusters_match(&self, other: &Spectrum, tol: f64) -> bool {
        self.clusters.len() == other.clusters.len()
            && self
                .clusters
                .iter()
                .zip(&other.clusters)
                .all(|(a, b)| a.multiplicity == b.multiplicity && libm::fabs(a.value - b.value) <= tol)
    }
}

/// Groups sorted values: a value joins the current cluster when it is within
/// `tol` of the previous one. Cluster values are member means.
fn cluster(sorted: &[f64], tol: f64) -> Vec<Cluster> {
    let mut out: Vec<Cluster> = Vec::new();
    let mut sum = 0.0;
    let mut prev = f64::NAN;
    for &x in sorted {
        match out.last_mut() {
            Some(last) if x - prev <= tol => {
                sum += x;
                last.multiplicity += 1;
                last.value = sum / last.multiplicity as f64;
            }
            _ => {
                sum = x;
                out.push(Cluster {
                    value: x,
                    multiplicity: 1,
                });
            }
        }
        prev = x;
    }
    out
}

pub fn spectrum(graph: &GlsgGraph, cluster_tol: f64) -> Result<Spectrum, SpectralError> {
    let dim = graph.vertex_count();
    let values = eigenvalues_symmetric(&graph.adjacency_matrix(), dim, JACOBI_TOLERANCE)?;
    Ok(Spectrum::from_eigenvalues(values, cluster_tol))
}

/// `Γ(S) ≅ K_n x K_n` for a null semigroup, so its eigenvalues are the
/// pairwise products of `{n - 1, -1 (x n-1)}` with itself.
pub fn null_spectrum_closed_form(n: usize) -> Spectrum {
    assert!(n >= 1, "order must be positive");
    let m = (n - 1) as f64;
    Spectrum::from_clusters(&[(m * m, 1), (-m, 2 * (n - 1)), (1.0, (n - 1) * (n - 1))])
}

/// Spectrum of each connected component, in component order.
pub fn block_spectra(graph: &GlsgGraph, cluster_tol: f64) -> Result<Vec<Spectrum>, SpectralError> {
    connected_components(graph)
        .iter()
        .map(|comp| {
            let values = eigenvalues_symmetric(&graph.induced_adjacency(comp), comp.len(), JACOBI_TOLERANCE)?;
            Ok(Spectrum::from_eigenvalues(values, cluster_tol))
        })
        .collect()
}

/// Union (with multiplicity) of several spectra.
pub fn union_spectrum(parts: &[Spectrum], cluster_tol: f64) -> Spectrum {
    let values = parts.iter().flat_map(|s| s.eigenvalues.iter().copied()).collect();
    Spectrum::from_eigenvalues(values, cluster_tol)
}

/// Number of edges joining vertices whose left factors lie in different
/// classes of `class_of`. For a rectangular band `p x q` with the `(a, b) ->
/// (a-1) q + b` indexing, the L-class of element `x` (0-based) is `x / q`.
pub fn cross_class_edges(graph: &GlsgGraph, class_of: impl Fn(usize) -> usize) -> usize {
    let vs = graph.vertices();
    graph
        .edges()
        .filter(|&(u, v)| class_of(vs[u].i) != class_of(vs[v].i))
        .count()
}

/// Multiset of eigenvalues equal within `tol`, element by element after sorting.
pub fn same_eigenvalues(a: &[f64], b: &[f64], tol: f64) -> bool {
    let mut a = a.to_vec();
    let mut b = b.to_vec();
    a.sort_by(f64::total_cmp);
    b.sort_by(f64::total_cmp);
    a.len() == b.len() && a.iter().zip(&b).all(|(x, y)| libm::fabs(x - y) <= tol)
}

/// Complete graph adjacency, handy for solver checks.
pub fn complete_graph_adjacency(n: usize) -> Vec<f64> {
    let mut m = vec![1.0; n * n];
    for i in 0..n {
        m[i * n + i] = 0.0;
    }
    m
}
