//! The graph `Γ(S)` built literally from its definition.
//!
//! Vertices are the table cells in row-major order; vertex `p` is
//! `(s_i, s_j, s_i s_j)` with `p = i n + j`. Two distinct vertices are adjacent
//! when they agree in exactly one coordinate. Two distinct vertices can never
//! share both `i` and `j`, and sharing `{i, k}` or `{j, k}` is two agreements,
//! so no special case is needed for vertices that represent the same product.

use alloc::collections::VecDeque;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt::Write as _;
use core::str::FromStr;

use thiserror::Error;

use crate::semigroup::CayleyTable;

/// Vertex cap for explicit construction unless the caller overrides it.
pub const DEFAULT_VERTEX_CAP: usize = 4096;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("GraphTooLarge vertices={vertices} cap={cap}")]
    TooLarge { vertices: usize, cap: usize },
    #[error("NotNull")]
    NotNull,
    #[error("UnknownFormat {0}")]
    UnknownFormat(String),
}

/// A vertex `(s_i, s_j, s_k)`, 0-based.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Vertex {
    pub i: usize,
    pub j: usize,
    pub k: usize,
}

impl Vertex {
    /// Number of coordinates on which the two vertices agree.
    pub fn agreements(&self, other: &Vertex) -> usize {
        usize::from(self.i == other.i) + usize::from(self.j == other.j) + usize::from(self.k == other.k)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GlsgGraph {
    order: usize,
    vertices: Vec<Vertex>,
    /// Full `|V| x |V|` bit matrix, row-major, one row per `words_per_row` words.
    bits: Vec<u64>,
    words_per_row: usize,
}

impl GlsgGraph {
    /// Order of the underlying semigroup.
    pub fn semigroup_order(&self) -> usize {
        self.order
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn vertices(&self) -> &[Vertex] {
        &self.vertices
    }

    #[inline]
    pub fn adjacent(&self, u: usize, v: usize) -> bool {
        self.bits[u * self.words_per_row + v / 64] >> (v % 64) & 1 == 1
    }

    pub fn neighbors(&self, u: usize) -> impl Iterator<Item = usize> + '_ {
        let row = &self.bits[u * self.words_per_row..(u + 1) * self.words_per_row];
        row.iter().enumerate().flat_map(|(w, &word)| {
            let mut word = word;
            core::iter::from_fn(move || {
                if word == 0 {
                    return None;
                }
                let b = word.trailing_zeros() as usize;
                word &= word - 1;
                Some(w * 64 + b)
            })
        })
    }

    pub fn degree(&self, u: usize) -> usize {
        self.bits[u * self.words_per_row..(u + 1) * self.words_per_row]
            .iter()
            .map(|w| w.count_ones() as usize)
            .sum()
    }

    pub fn edge_count(&self) -> usize {
        (0..self.vertex_count()).map(|u| self.degree(u)).sum::<usize>() / 2
    }

    /// Edges `(u, v)` with `u < v`, 0-based, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (0..self.vertex_count()).flat_map(move |u| self.neighbors(u).filter(move |&v| v > u).map(move |v| (u, v)))
    }

    /// Dense 0/1 adjacency matrix, row-major.
    pub fn adjacency_matrix(&self) -> Vec<f64> {
        let n = self.vertex_count();
        let mut m = vec![0.0; n * n];
        for (u, v) in self.edges() {
            m[u * n + v] = 1.0;
            m[v * n + u] = 1.0;
        }
        m
    }

    /// Induced subgraph adjacency on `subset` (in the given order).
    pub fn induced_adjacency(&self, subset: &[usize]) -> Vec<f64> {
        let n = subset.len();
        let mut m = vec![0.0; n * n];
        for (a, &u) in subset.iter().enumerate() {
            for (b, &v) in subset.iter().enumerate() {
                if self.adjacent(u, v) {
                    m[a * n + b] = 1.0;
                }
            }
        }
        m
    }

    fn set_edge(&mut self, u: usize, v: usize) {
        self.bits[u * self.words_per_row + v / 64] |= 1 << (v % 64);
        self.bits[v * self.words_per_row + u / 64] |= 1 << (u % 64);
    }
}

/// Builds `Γ(S)` by testing every vertex pair, `O(n^4)`.
pub fn build_graph(table: &CayleyTable) -> Result<GlsgGraph, GraphError> {
    build_graph_with_cap(table, DEFAULT_VERTEX_CAP)
}

pub fn build_graph_with_cap(table: &CayleyTable, cap: usize) -> Result<GlsgGraph, GraphError> {
    let n = table.order();
    let count = n * n;
    if count > cap {
        return Err(GraphError::TooLarge {
            vertices: count,
            cap,
        });
    }
    let vertices: Vec<Vertex> = (0..count)
        .map(|p| {
            let (i, j) = (p / n, p % n);
            Vertex { i, j, k: table.get(i, j) }
        })
        .collect();
    let words_per_row = count.div_ceil(64);
    let mut graph = GlsgGraph {
        order: n,
        vertices,
        bits: vec![0; words_per_row * count],
        words_per_row,
    };
    for u in 0..count {
        for v in u + 1..count {
            if graph.vertices[u].agreements(&graph.vertices[v]) == 1 {
                graph.set_edge(u, v);
            }
        }
    }
    Ok(graph)
}

/// Degrees as adjacency row sums, in vertex (row-major cell) order.
pub fn naive_degrees(graph: &GlsgGraph) -> Vec<usize> {
    (0..graph.vertex_count()).map(|u| graph.degree(u)).collect()
}

/// Connected components by breadth-first search, each sorted ascending, the
/// list ordered by smallest member.
pub fn connected_components(graph: &GlsgGraph) -> Vec<Vec<usize>> {
    let count = graph.vertex_count();
    let mut seen = vec![false; count];
    let mut components = Vec::new();
    let mut queue = VecDeque::new();
    for start in 0..count {
        if seen[start] {
            continue;
        }
        seen[start] = true;
        queue.push_back(start);
        let mut component = Vec::new();
        while let Some(u) = queue.pop_front() {
            component.push(u);
            for v in graph.neighbors(u) {
                if !seen[v] {
                    seen[v] = true;
                    queue.push_back(v);
                }
            }
        }
        component.sort_unstable();
        components.push(component);
    }
    components
}

/// Sizes of the three neighbour classes of vertex `u`: neighbours sharing
/// only the left factor, only the right factor, only the product.
pub fn neighbour_class_sizes(graph: &GlsgGraph, u: usize) -> [usize; 3] {
    let a = graph.vertices[u];
    let mut sizes = [0; 3];
    for v in graph.neighbors(u) {
        let b = graph.vertices[v];
        match (a.i == b.i, a.j == b.j, a.k == b.k) {
            (true, false, false) => sizes[0] += 1,
            (false, true, false) => sizes[1] += 1,
            (false, false, true) => sizes[2] += 1,
            _ => unreachable!("neighbours agree in exactly one coordinate"),
        }
    }
    sizes
}

/// Checks that `Γ(S)` of a null semigroup is `K_n x K_n`: vertices `(i, j)` and
/// `(i', j')` are adjacent iff `i != i'` and `j != j'`.
pub fn verify_null_tensor(table: &CayleyTable) -> Result<bool, GraphError> {
    let zero = table.get(0, 0);
    if table.cells().iter().any(|&c| c as usize != zero) {
        return Err(GraphError::NotNull);
    }
    let graph = build_graph(table)?;
    let count = graph.vertex_count();
    for u in 0..count {
        for v in 0..count {
            let (a, b) = (graph.vertices[u], graph.vertices[v]);
            let tensor = u != v && a.i != b.i && a.j != b.j;
            if graph.adjacent(u, v) != tensor {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ExportFormat {
    EdgeList,
    Dot,
}

impl FromStr for ExportFormat {
    type Err = GraphError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "edge-list" | "edgelist" => Ok(ExportFormat::EdgeList),
            "dot" => Ok(ExportFormat::Dot),
            other => Err(GraphError::UnknownFormat(other.into())),
        }
    }
}

/// Text export with 1-based vertex numbers (row-major cell index + 1).
///
/// The edge list has one `u v` line per edge with `u < v`, no trailing newline.
pub fn export_graph(graph: &GlsgGraph, format: ExportFormat) -> String {
    let mut out = String::new();
    match format {
        ExportFormat::EdgeList => {
            for (idx, (u, v)) in graph.edges().enumerate() {
                if idx > 0 {
                    out.push('\n');
                }
                let _ = write!(out, "{} {}", u + 1, v + 1);
            }
        }
        ExportFormat::Dot => {
            out.push_str("graph glsg {\n");
            for (p, v) in graph.vertices.iter().enumerate() {
                let _ = writeln!(out, "  {} [label=\"({},{},{})\"];", p + 1, v.i + 1, v.j + 1, v.k + 1);
            }
            for (u, v) in graph.edges() {
                let _ = writeln!(out, "  {} -- {};", u + 1, v + 1);
            }
            out.push_str("}\n");
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::invariants::compute_invariants;

    fn s1() -> CayleyTable {
        CayleyTable::from_rows_one_based(&[[1i64, 1], [1, 2]]).unwrap()
    }

    #[test]
    fn s1_graph() {
        let g = build_graph(&s1()).unwrap();
        assert_eq!(g.vertex_count(), 4);
        // (s0,s1,s0) = cell 1, (s1,s0,s0) = cell 2, (s1,s1,s1) = cell 3
        assert_eq!(g.edges().collect::<Vec<_>>(), vec![(1, 2), (1, 3), (2, 3)]);
        assert_eq!(naive_degrees(&g), vec![0, 2, 2, 2]);
        assert_eq!(connected_components(&g), vec![vec![0], vec![1, 2, 3]]);
        assert_eq!(export_graph(&g, ExportFormat::EdgeList), "2 3\n2 4\n3 4");
    }

    #[test]
    fn null_graphs() {
        let g2 = build_graph(&CayleyTable::null(2)).unwrap();
        assert_eq!(g2.edge_count(), 2);
        assert_eq!(export_graph(&g2, ExportFormat::EdgeList), "1 4\n2 3");
        assert_eq!(connected_components(&g2), vec![vec![0, 3], vec![1, 2]]);

        let g3 = build_graph(&CayleyTable::null(3)).unwrap();
        assert_eq!(g3.vertex_count(), 9);
        assert_eq!(g3.edge_count(), 18);
        assert_eq!(naive_degrees(&g3), vec![4; 9]);

        for n in 3..=8 {
            let g = build_graph(&CayleyTable::null(n)).unwrap();
            assert_eq!(connected_components(&g).len(), 1, "n={n}");
        }
    }

    #[test]
    fn cyclic3_degrees() {
        let g = build_graph(&CayleyTable::cyclic_group(3)).unwrap();
        assert_eq!(naive_degrees(&g), vec![6; 9]);
    }

    #[test]
    fn trivial_graph_exports() {
        let g = build_graph(&CayleyTable::null(1)).unwrap();
        assert_eq!(export_graph(&g, ExportFormat::EdgeList), "");
        assert_eq!(
            export_graph(&g, ExportFormat::Dot),
            "graph glsg {\n  1 [label=\"(1,1,1)\"];\n}\n"
        );
    }

    #[test]
    fn dot_export() {
        let g = build_graph(&CayleyTable::null(2)).unwrap();
        let dot = export_graph(&g, ExportFormat::Dot);
        assert!(dot.starts_with("graph glsg {\n"));
        assert!(dot.contains("  2 [label=\"(1,2,2)\"];\n"));
        assert!(dot.contains("  1 -- 4;\n"));
        assert!(dot.contains("  2 -- 3;\n"));
        assert!(dot.ends_with("}\n"));
        assert_eq!(
            "svg".parse::<ExportFormat>(),
            Err(GraphError::UnknownFormat("svg".into()))
        );
    }

    #[test]
    fn null_tensor() {
        for n in [2, 3, 6] {
            assert_eq!(verify_null_tensor(&CayleyTable::null(n)), Ok(true));
        }
        assert_eq!(
            verify_null_tensor(&CayleyTable::constant_image(4, 2).unwrap()),
            Ok(true)
        );
        assert_eq!(verify_null_tensor(&s1()), Err(GraphError::NotNull));
    }

    #[test]
    fn size_cap() {
        let t = CayleyTable::null(65);
        assert_eq!(
            build_graph(&t).unwrap_err(),
            GraphError::TooLarge {
                vertices: 4225,
                cap: 4096
            }
        );
        assert!(build_graph_with_cap(&CayleyTable::null(3), 9).is_ok());
    }

    #[test]
    fn neighbour_classes_match_counts() {
        let tables = [
            s1(),
            CayleyTable::null(3),
            CayleyTable::rectangular_band(2, 3),
            CayleyTable::cyclic_group(4),
            CayleyTable::brandt(&CayleyTable::cyclic_group(2), 2).unwrap(),
        ];
        for t in &tables {
            let n = t.order() as u64;
            let g = build_graph(t).unwrap();
            let inv = compute_invariants(t);
            for (u, v) in g.vertices().iter().enumerate() {
                let sizes = neighbour_class_sizes(&g, u);
                let (nr, nc) = (inv.nr(v.i, v.j), inv.nc(v.i, v.j));
                assert_eq!(sizes[0] as u64, n - 1 - nr);
                assert_eq!(sizes[1] as u64, n - 1 - nc);
                assert_eq!(sizes[2] as u64, inv.ns(v.k) - 1 - nr - nc);
            }
        }
    }

    #[test]
    fn handshake_and_symmetry() {
        let t = CayleyTable::brandt(&CayleyTable::cyclic_group(2), 2).unwrap();
        let g = build_graph(&t).unwrap();
        let total: usize = naive_degrees(&g).iter().sum();
        assert_eq!(total, 2 * g.edge_count());
        for u in 0..g.vertex_count() {
            assert!(!g.adjacent(u, u));
            for v in 0..g.vertex_count() {
                assert_eq!(g.adjacent(u, v), g.adjacent(v, u));
            }
        }
    }
}
