use glsg_core::graph::{build_graph, connected_components, verify_null_tensor};
use glsg_core::invariants::is_regular_glsg;
use glsg_core::spectral::{
    block_spectra, complete_graph_adjacency, eigenvalues_symmetric, null_spectrum_closed_form, same_eigenvalues,
    spectrum, union_spectrum, Spectrum, DEFAULT_CLUSTER_TOLERANCE, JACOBI_TOLERANCE,
};
use glsg_core::{CayleyTable, GlsgGraph};

fn checked_spectrum(g: &GlsgGraph) -> Spectrum {
    let s = spectrum(g, DEFAULT_CLUSTER_TOLERANCE).unwrap();
    assert_eq!(s.clusters.iter().map(|c| c.multiplicity).sum::<usize>(), g.vertex_count());
    assert!(s.satisfies_moment_checks(g.edge_count()), "trace/moment check failed");
    s
}

#[test]
fn complete_graphs() {
    for n in 2..=10 {
        let ev = eigenvalues_symmetric(&complete_graph_adjacency(n), n, JACOBI_TOLERANCE).unwrap();
        let s = Spectrum::from_eigenvalues(ev, DEFAULT_CLUSTER_TOLERANCE);
        let expected = Spectrum::from_clusters(&[(-1.0, n - 1), ((n - 1) as f64, 1)]);
        assert!(s.clusters_match(&expected, 1e-6), "K{n}: {:?}", s.clusters);
        assert!(s.satisfies_moment_checks(n * (n - 1) / 2));
    }
}

#[test]
fn null_semigroups_match_closed_form() {
    for n in 2..=8 {
        let t = CayleyTable::null(n);
        let g = build_graph(&t).unwrap();
        let s = checked_spectrum(&g);
        let expected = null_spectrum_closed_form(n);
        assert!(s.clusters_match(&expected, 1e-6), "n={n}: {:?}", s.clusters);
        let energy = 4.0 * ((n - 1) * (n - 1)) as f64;
        assert!((s.energy - energy).abs() < 1e-6);
        assert!((expected.energy - energy).abs() < 1e-12);
        assert_eq!(verify_null_tensor(&t), Ok(true));
        assert_eq!(connected_components(&g).len(), if n == 2 { 2 } else { 1 });
    }
}

#[test]
fn regular_graphs_have_degree_as_top_eigenvalue() {
    let mut tables = Vec::new();
    for n in 2..=6 {
        tables.push(CayleyTable::null(n));
        tables.push(CayleyTable::cyclic_group(n));
        tables.push(CayleyTable::constant_image(n, 1).unwrap());
    }
    for t in &tables {
        let reg = is_regular_glsg(t);
        assert!(reg.regular);
        let g = build_graph(t).unwrap();
        let top = checked_spectrum(&g).max_eigenvalue().unwrap();
        assert!((top - reg.degree_set[0] as f64).abs() < 1e-6, "{t:?}: {top}");
    }
}

#[test]
fn component_spectra_union_to_whole() {
    let tables = [
        CayleyTable::from_rows_one_based(&[[1i64, 1], [1, 2]]).unwrap(),
        CayleyTable::null(2),
        CayleyTable::null(3),
        CayleyTable::rectangular_band(2, 1),
        CayleyTable::rectangular_band(2, 2),
        CayleyTable::rectangular_band(3, 2),
        CayleyTable::brandt(&CayleyTable::cyclic_group(2), 2).unwrap(),
        CayleyTable::brandt(&CayleyTable::cyclic_group(1), 2).unwrap(),
    ];
    for t in &tables {
        let g = build_graph(t).unwrap();
        let whole = checked_spectrum(&g);
        let blocks = block_spectra(&g, DEFAULT_CLUSTER_TOLERANCE).unwrap();
        let comps = connected_components(&g);
        for (b, c) in blocks.iter().zip(&comps) {
            let edges = c.iter().map(|&u| g.neighbors(u).count()).sum::<usize>() / 2;
            assert!(b.satisfies_moment_checks(edges));
        }
        let union = union_spectrum(&blocks, DEFAULT_CLUSTER_TOLERANCE);
        assert!(same_eigenvalues(&whole.eigenvalues, &union.eigenvalues, 1e-6), "{t:?}");
        assert!(whole.clusters_match(&union, 1e-6));
    }
}

#[test]
fn brandt_and_band_spectra_pass_moment_checks() {
    for t in [
        CayleyTable::brandt(&CayleyTable::cyclic_group(2), 2).unwrap(),
        CayleyTable::rectangular_band(2, 3),
        CayleyTable::rectangular_band(4, 2),
        CayleyTable::cyclic_group(7),
    ] {
        checked_spectrum(&build_graph(&t).unwrap());
    }
}
