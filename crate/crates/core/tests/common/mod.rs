//! Exact values by exhaustive enumeration, independent of the library's solvers.

/// Longest chain by checking every subset of the edge list.
pub fn subset_lnm(edges: &[[u32; 2]]) -> usize {
    let m = edges.len();
    let mut best = 0;
    for mask in 0u32..1 << m {
        let mut pick: Vec<[u32; 2]> = (0..m).filter(|i| mask >> i & 1 == 1).map(|i| edges[i]).collect();
        pick.sort();
        if pick.windows(2).all(|w| w[0][0] < w[1][0] && w[0][1] < w[1][1]) {
            best = best.max(pick.len());
        }
    }
    best
}

/// `E[L]` for the 3 x 3 binomial model at `p = 1/2`: all 512 graphs are equally likely.
pub fn exact_mean_3x3_half() -> f64 {
    let cells: Vec<[u32; 2]> = (1..=3).flat_map(|a| (1..=3).map(move |b| [a, b])).collect();
    let total: usize = (0u32..512)
        .map(|mask| {
            let edges: Vec<[u32; 2]> = (0..9).filter(|i| mask >> i & 1 == 1).map(|i| cells[i]).collect();
            subset_lnm(&edges)
        })
        .sum();
    total as f64 / 512.0
}
