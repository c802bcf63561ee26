mod common;

use glyphtopo::graph::{
    build_graph, centroid, centroid_exact, deserialize, serialize, serialize_pretty, to_dot,
};
use glyphtopo::raster::Pixel;
use glyphtopo::skeleton::thin;
use glyphtopo::topo::{extract_all, ScanParams};
use proptest::prelude::*;
use rand::rngs::StdRng;
use rand::seq::SliceRandom;
use rand::SeedableRng;

fn support() -> impl Strategy<Value = Vec<Pixel>> {
    prop::collection::vec((0usize..500, 0usize..500), 1..100)
        .prop_map(|v| v.into_iter().map(|(r, c)| Pixel::new(r, c)).collect())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn centroid_matches_direct_sum(s in support()) {
        let c = centroid(&s).unwrap();
        let n = s.len() as f64;
        let (mut sx, mut sy) = (0.0f64, 0.0f64);
        for p in &s {
            sx += p.col as f64;
            sy += p.row as f64;
        }
        prop_assert!((c.x - sx / n).abs() <= 1e-9);
        prop_assert!((c.y - sy / n).abs() <= 1e-9);
    }

    #[test]
    fn centroid_translation_is_exact(s in support(), dr in 0usize..1000, dc in 0usize..1000) {
        let moved: Vec<Pixel> = s.iter().map(|p| Pixel::new(p.row + dr, p.col + dc)).collect();
        prop_assert_eq!(
            centroid_exact(&moved).unwrap(),
            centroid_exact(&s).unwrap().translated(dr as u64, dc as u64)
        );
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn json_round_trip(seed in any::<u64>()) {
        let g = common::random_graph(&mut StdRng::seed_from_u64(seed));
        let doc = serialize(&g);
        let back = deserialize(&doc).unwrap();
        prop_assert_eq!(&back, &g);
        prop_assert_eq!(serialize(&back), doc);
        prop_assert_eq!(deserialize(&serialize_pretty(&g)).unwrap(), g);
    }

    #[test]
    fn dot_has_one_statement_per_node_and_edge(seed in any::<u64>()) {
        let g = common::random_graph(&mut StdRng::seed_from_u64(seed));
        let (nodes, edges) = common::parse_dot(&to_dot(&g));
        prop_assert_eq!(nodes.len(), g.node_count());
        prop_assert_eq!(edges.len(), g.edge_count());
    }

    #[test]
    fn graph_ignores_feature_order(seed in any::<u64>()) {
        let mut rng = StdRng::seed_from_u64(seed);
        let sk = if seed.is_multiple_of(2) {
            common::cycles_and_trees(&mut rng)
        } else {
            thin(&common::random_blobs(&mut rng)).unwrap().into_raster()
        };
        let mut features = extract_all(&sk, ScanParams::default());
        let g = build_graph(&features, &sk);
        features.shuffle(&mut rng);
        prop_assert_eq!(build_graph(&features, &sk), g.clone());
        prop_assert_eq!(g.node_count(), features.len());
    }
}

#[test]
fn ring_graph_dot() {
    let sk = common::ring();
    let g = build_graph(&extract_all(&sk, ScanParams::default()), &sk);
    let (nodes, edges) = common::parse_dot(&to_dot(&g));
    assert_eq!((nodes.len(), edges.len()), (5, 4));
    let doc: serde_json::Value = serde_json::from_str(&serialize(&g)).unwrap();
    assert_eq!(doc["nodes"][0]["kind"], "closed_region");
    assert_eq!(doc["nodes"][0]["support_size"], 12);
}
