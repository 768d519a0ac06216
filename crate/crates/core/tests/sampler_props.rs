use hypermatch::estimators::{run_replicates, SampleStats, DEFAULT_QUANTILES};
use hypermatch::io::{write_instance, InstanceHeader};
use hypermatch::{longest_noncrossing_matching, EdgeGuard, HyperGraph, ModelSpec, Seed};

fn stats(v: &[f64]) -> SampleStats {
    SampleStats::from_reals(v, &DEFAULT_QUANTILES)
}

fn two_sample_gap(a: &SampleStats, b: &SampleStats) -> f64 {
    (a.mean - b.mean).abs() / (a.std_error.powi(2) + b.std_error.powi(2)).sqrt().max(1e-12)
}

fn serialize(spec: &ModelSpec, seed: Seed) -> Vec<u8> {
    let s = spec.sample(seed, &EdgeGuard::default()).unwrap();
    let mut out = Vec::new();
    write_instance(
        &mut out,
        &InstanceHeader::for_sample(spec, seed, s.words.as_deref()),
        &s.graph,
    )
    .unwrap();
    out
}

#[test]
fn same_seed_same_bytes() {
    let specs = [
        ModelSpec::binomial(vec![40, 30, 20], 0.01).unwrap(),
        ModelSpec::word(vec![30, 30], 5).unwrap(),
        ModelSpec::symmetric(50, 0.1).unwrap(),
        ModelSpec::antisymmetric(25, 0.1).unwrap(),
        ModelSpec::oriented(50, 0.1).unwrap(),
    ];
    for spec in &specs {
        assert_eq!(serialize(spec, Seed(17)), serialize(spec, Seed(17)));
        assert_ne!(serialize(spec, Seed(17)), serialize(spec, Seed(18)));
    }
}

#[test]
fn symmetric_models_are_symmetric() {
    for s in 0..50 {
        let g = ModelSpec::symmetric(30, 0.1)
            .unwrap()
            .sample(Seed(s), &EdgeGuard::default())
            .unwrap()
            .graph;
        for e in g.edges() {
            assert_ne!(e[0], e[1]);
            assert!(g.contains(&[e[1], e[0]]));
        }
        let a = ModelSpec::antisymmetric(15, 0.1)
            .unwrap()
            .sample(Seed(s), &EdgeGuard::default())
            .unwrap()
            .graph;
        assert_eq!(a.dims(), &[30, 30]);
        for e in a.edges() {
            assert!(a.contains(&[31 - e[0], 31 - e[1]]));
        }
        let o = ModelSpec::oriented(30, 0.1)
            .unwrap()
            .sample(Seed(s), &EdgeGuard::default())
            .unwrap()
            .graph;
        assert!(o.edges().all(|e| e[0] < e[1]));
    }
}

/// Edge count and `L` of `f(rng)` over `reps` replicates.
fn edge_and_l(
    reps: usize,
    seed: Seed,
    f: impl Fn(&mut hypermatch::seed::SimRng) -> HyperGraph + Sync,
) -> (SampleStats, SampleStats) {
    let rows = run_replicates(reps, seed, 4, |_, rng| {
        let g = f(rng);
        Ok((
            g.num_edges() as f64,
            longest_noncrossing_matching(&g, false).length as f64,
        ))
    })
    .unwrap();
    let e: Vec<f64> = rows.iter().map(|r| r.0).collect();
    let l: Vec<f64> = rows.iter().map(|r| r.1).collect();
    (stats(&e), stats(&l))
}

#[test]
fn induced_subgraph_is_a_fresh_sample() {
    let guard = EdgeGuard::default();
    let subsets = vec![vec![1, 3, 4, 7], vec![2, 3, 5, 6, 8]];
    let cases = [
        (
            ModelSpec::binomial(vec![8, 8], 0.3).unwrap(),
            ModelSpec::binomial(vec![4, 5], 0.3).unwrap(),
        ),
        (
            ModelSpec::word(vec![8, 8], 3).unwrap(),
            ModelSpec::word(vec![4, 5], 3).unwrap(),
        ),
    ];
    for (i, (big, small)) in cases.iter().enumerate() {
        let (e1, l1) = edge_and_l(4000, Seed(100 + i as u64), |rng| {
            big.sample_with(rng, &guard)
                .unwrap()
                .graph
                .induced_subgraph(&subsets)
                .unwrap()
        });
        let (e2, l2) = edge_and_l(4000, Seed(200 + i as u64), |rng| {
            small.sample_with(rng, &guard).unwrap().graph
        });
        assert!(
            two_sample_gap(&e1, &e2) < 4.0,
            "{:?}: |E| {} vs {}",
            big.kind,
            e1.mean,
            e2.mean
        );
        assert!(
            two_sample_gap(&l1, &l2) < 4.0,
            "{:?}: L {} vs {}",
            big.kind,
            l1.mean,
            l2.mean
        );
    }
}

#[test]
fn disjoint_blocks_are_uncorrelated() {
    let guard = EdgeGuard::default();
    let reps = 4000;
    for spec in [
        ModelSpec::binomial(vec![10, 10], 0.3).unwrap(),
        ModelSpec::word(vec![10, 10], 3).unwrap(),
    ] {
        let rows = run_replicates(reps, Seed(5), 4, |_, rng| {
            let g = spec.sample_with(rng, &guard)?.graph;
            let a = g.induced_box(&[0, 0], &[5, 5])?;
            let b = g.induced_box(&[5, 5], &[5, 5])?;
            Ok((
                longest_noncrossing_matching(&a, false).length as f64,
                longest_noncrossing_matching(&b, false).length as f64,
            ))
        })
        .unwrap();
        let x: Vec<f64> = rows.iter().map(|r| r.0).collect();
        let y: Vec<f64> = rows.iter().map(|r| r.1).collect();
        let (sx, sy) = (stats(&x), stats(&y));
        let cov = x
            .iter()
            .zip(&y)
            .map(|(a, b)| (a - sx.mean) * (b - sy.mean))
            .sum::<f64>()
            / (reps as f64 - 1.0);
        let corr = cov / (sx.variance * sy.variance).sqrt();
        // the sample correlation of independent variables has standard error about 1/sqrt(r)
        assert!(corr.abs() < 4.0 / (reps as f64).sqrt(), "{:?}: corr {corr}", spec.kind);
    }
}

#[test]
fn degenerate_parameters_give_empty_graphs() {
    let g = ModelSpec::binomial(vec![50, 50], 0.0)
        .unwrap()
        .sample(Seed(1), &EdgeGuard::default())
        .unwrap();
    assert!(g.graph.is_empty());
    let g = ModelSpec::symmetric(50, 0.0)
        .unwrap()
        .sample(Seed(1), &EdgeGuard::default())
        .unwrap();
    assert!(g.graph.is_empty());
    let g = ModelSpec::binomial(vec![5, 6], 1.0)
        .unwrap()
        .sample(Seed(1), &EdgeGuard::default())
        .unwrap();
    assert_eq!(g.graph.num_edges(), 30);
}
