use hypermatch::blocks::{
    holder_holds, partition_matching, product_lemma_holds, split_into_blocks, BlockPartition, PartitionType,
};
use hypermatch::HyperEdge;
use proptest::prelude::*;

/// Strictly increasing chains: per-coordinate positive increments.
fn chain() -> impl Strategy<Value = Vec<HyperEdge>> {
    (2usize..=4, 0usize..=40).prop_flat_map(|(d, m)| {
        proptest::collection::vec(proptest::collection::vec(1u32..=6, d), m).prop_map(move |steps| {
            let mut cur = vec![0u32; d];
            steps
                .into_iter()
                .map(|s| {
                    for (c, x) in cur.iter_mut().zip(s) {
                        *c += x;
                    }
                    HyperEdge(cur.clone())
                })
                .collect()
        })
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(500))]

    #[test]
    fn greedy_partition_invariants(c in chain(), s_max in 1usize..=8, span in 0u32..=25) {
        let p = partition_matching(&c, s_max, span).unwrap();
        prop_assert_eq!(p.check_invariants(), Ok(()));
        prop_assert_eq!(p.blocks.iter().map(|b| b.size).sum::<usize>(), c.len());
    }

    #[test]
    fn partition_type_round_trips(c in chain(), s_max in 1usize..=8, span in 0u32..=25) {
        let p = partition_matching(&c, s_max, span).unwrap();
        let t = p.partition_type();
        prop_assert_eq!(t.0.len(), 3 * p.q());
        let back: PartitionType = serde_json::from_str(&serde_json::to_string(&t).unwrap()).unwrap();
        prop_assert_eq!(&back, &t);
        prop_assert_eq!(BlockPartition::from_type(&c, &back, s_max, span).unwrap(), p.clone());
        prop_assert_eq!(t.boundaries(&c).unwrap(), p.ranges());
    }

    #[test]
    fn split_blocks_are_vertex_disjoint(
        dims in proptest::collection::vec(3u32..=20, 2..=3),
        q in 1usize..=3,
        raw in proptest::collection::vec(proptest::collection::vec(any::<u32>(), 3), 0..60),
    ) {
        let edges: Vec<Vec<u32>> = raw.iter().map(|r| dims.iter().zip(r).map(|(&n, &x)| x % n + 1).collect()).collect();
        let h = hypermatch::HyperGraph::from_unsorted(dims.clone(), &edges).unwrap();
        let split = split_into_blocks(&h, q).unwrap();
        for (i, b) in split.blocks.iter().enumerate() {
            for e in b.edges() {
                // shift back to the parent's labels and check membership in block i's ranges
                let orig: Vec<u32> = e.iter().enumerate().map(|(j, &v)| v + i as u32 * split.block_dims[j]).collect();
                prop_assert!(h.contains(&orig));
                for (j, &v) in orig.iter().enumerate() {
                    prop_assert!(split.range(i, j).contains(&v));
                }
            }
        }
        for j in 0..dims.len() {
            for i in 1..q {
                prop_assert!(split.range(i - 1, j).end <= split.range(i, j).start);
            }
        }
    }

    #[test]
    fn product_lemma_for_entries_at_least_one(x in proptest::collection::vec(1.0f64..1000.0, 1..=6)) {
        prop_assert!(product_lemma_holds(&x).unwrap());
    }

    #[test]
    fn holder_for_positive_matrices(
        rows in (1usize..=5).prop_flat_map(|d| proptest::collection::vec(proptest::collection::vec(1e-3f64..50.0, d), 1..=8))
    ) {
        prop_assert!(holder_holds(&rows).unwrap());
    }
}

#[test]
fn product_lemma_needs_entries_at_least_one() {
    // (x - 1)^3 >= x^3 - 9x^2 fails for small x
    assert!(!product_lemma_holds(&[0.01, 0.01, 0.01]).unwrap());
    assert!(product_lemma_holds(&[1.0, 1.0, 1.0]).unwrap());
}
