use resnet_core::constructions::{mix_with_leaves_to_alpha, ConstructionSpec};
use resnet_core::edgelist::{parse_edge_list, write_edge_list};
use resnet_core::resistance::{resistance_summary, rooted_summary};
use resnet_core::search::{enumerate_optimal, Objective};
use resnet_core::RootedGraph;

#[test]
fn spec_build_write_parse_round_trip() {
    for text in [
        "family=star n=12 k=2",
        "family=cycle_with_leaves n=10 cycle_len=4",
        "family=biregular_bipartite n=70",
        "family=split_4regular n_base=40 g_min=6",
        "family=star_triangles_leaves n=9 m=12",
    ] {
        let spec = ConstructionSpec::parse(text).unwrap();
        let built = spec.build(3).unwrap();
        let back = parse_edge_list(&write_edge_list(&built.graph, built.root)).unwrap();
        assert_eq!(back.graph, built.graph, "{text}");
        assert_eq!(back.root, built.root, "{text}");
    }
}

#[test]
fn biregular_and_split_sizes() {
    let g = ConstructionSpec::parse("family=biregular_bipartite n=700").unwrap().build(1).unwrap().graph;
    assert_eq!((g.n_vertices(), g.edge_count()), (700, 1200));
    assert!((g.average_degree() - 24.0 / 7.0).abs() < 1e-12);
    let g = ConstructionSpec::parse("family=split_4regular n_base=600 g_min=8").unwrap().build(42).unwrap().graph;
    assert_eq!((g.n_vertices(), g.edge_count()), (900, 1500));
    assert!(g.girth_at_least(8));
}

#[test]
fn search_witnesses_reproduce_their_values() {
    for (obj, n, m) in [(Objective::A, 6, 7), (Objective::B, 4, 6), (Objective::BQueenBee, 4, 6)] {
        let res = enumerate_optimal(obj, n, m, m as u32).unwrap();
        for w in &res.witnesses {
            let g = w.graph();
            let value = match w.root {
                Some(r) => rooted_summary(&RootedGraph::new(g, r).unwrap()).unwrap().b,
                None => resistance_summary(&g).unwrap().a,
            };
            assert!((value - res.best_value).abs() < 1e-9);
        }
    }
}

#[test]
fn leaf_mixing_follows_the_averaging_formula() {
    let built = ConstructionSpec::parse("family=rooted_union n=6 m=9 copies=3").unwrap().build(0).unwrap();
    let g = RootedGraph::new(built.graph, built.root.unwrap()).unwrap();
    let b = rooted_summary(&g).unwrap().b;
    let target = 2.5;
    let mixed = mix_with_leaves_to_alpha(&g, target).unwrap();
    assert!(mixed.alpha() <= target + 1e-12);
    let leaves = (mixed.n_nonroot() - g.n_nonroot()) as f64;
    let n = g.n_nonroot() as f64;
    let expected = (b * n + leaves) / (n + leaves);
    assert!((rooted_summary(&mixed).unwrap().b - expected).abs() < 1e-12);
}
