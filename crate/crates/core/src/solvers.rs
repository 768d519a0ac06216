//! Exact longest chains under strict dominance.
//!
//! `d = 2` goes through patience sorting in `O(m log m)`; higher dimensions
//! use an `O(m^2)` DP that scans "levels" (items grouped by chain length
//! ending there) from the top down and stops at the first level holding a
//! dominated item.

use std::cmp::Ordering;

use crate::error::{Error, Result};
use crate::graph::{dominates, HyperEdge, HyperGraph, MatchingResult};

/// Largest instance accepted by [`brute_force_lnm`].
pub const BRUTE_FORCE_MAX_EDGES: usize = 22;

/// Points in `[0,1]^d`, flat with stride `d`.
#[derive(Debug, Clone, PartialEq)]
pub struct PointSet {
    d: usize,
    coords: Vec<f64>,
}

impl PointSet {
    pub fn new(d: usize, coords: Vec<f64>) -> Result<Self> {
        if d == 0 {
            return Err(Error::contract("dimension must be >= 1"));
        }
        if !coords.len().is_multiple_of(d) {
            return Err(Error::contract("coordinate count not a multiple of d"));
        }
        if let Some(x) = coords.iter().find(|x| !(x.is_finite() && (0.0..=1.0).contains(*x))) {
            return Err(Error::contract(format!("coordinate {x} outside [0, 1]")));
        }
        Ok(PointSet { d, coords })
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn len(&self) -> usize {
        self.coords.len() / self.d
    }

    pub fn is_empty(&self) -> bool {
        self.coords.is_empty()
    }

    pub fn coords(&self) -> &[f64] {
        &self.coords
    }

    pub fn point(&self, i: usize) -> &[f64] {
        &self.coords[i * self.d..(i + 1) * self.d]
    }
}

fn cmp_partial<T: PartialOrd>(a: &T, b: &T) -> Ordering {
    a.partial_cmp(b).unwrap_or(Ordering::Equal)
}

fn cmp_slices<T: PartialOrd>(a: &[T], b: &[T]) -> Ordering {
    for (x, y) in a.iter().zip(b) {
        match cmp_partial(x, y) {
            Ordering::Equal => {}
            o => return o,
        }
    }
    Ordering::Equal
}

/// Longest chain of pairs increasing strictly in both coordinates.
///
/// Pairs sharing a first coordinate are visited with descending second
/// coordinate so they can never extend one another.
pub fn lis_strict_2d<T: PartialOrd + Copy>(pairs: &[(T, T)]) -> usize {
    let mut sorted = pairs.to_vec();
    sorted.sort_unstable_by(|x, y| cmp_partial(&x.0, &y.0).then_with(|| cmp_partial(&y.1, &x.1)));
    strict_lis(sorted.iter().map(|p| p.1))
}

/// Length of the longest strictly increasing subsequence.
pub fn strict_lis<T: PartialOrd + Copy>(seq: impl IntoIterator<Item = T>) -> usize {
    let mut tails: Vec<T> = Vec::new();
    for b in seq {
        let pos = tails.partition_point(|&x| x < b);
        if pos == tails.len() {
            tails.push(b);
        } else {
            tails[pos] = b;
        }
    }
    tails.len()
}

/// Strict LIS of a permutation of `[n]` given by its values.
pub fn lis_permutation(pi: &[u32]) -> Result<usize> {
    let n = pi.len();
    let mut seen = vec![false; n + 1];
    for &v in pi {
        let v = v as usize;
        if v == 0 || v > n || seen[v] {
            return Err(Error::contract(format!("not a permutation of [{n}]")));
        }
        seen[v] = true;
    }
    Ok(strict_lis(pi.iter().copied()))
}

/// Two-dimensional path over a lexicographically sorted edge array.
/// Returns the length and, optionally, edge indices of one optimal chain.
fn chain_2d_sorted(h: &HyperGraph, want_witness: bool) -> (usize, Option<Vec<usize>>) {
    let m = h.num_edges();
    let flat = h.flat();
    let second = |i: usize| flat[2 * i + 1];
    let mut tails: Vec<usize> = Vec::new();
    let mut parent = if want_witness { vec![usize::MAX; m] } else { Vec::new() };
    let mut start = 0;
    while start < m {
        let a = flat[2 * start];
        let mut end = start + 1;
        while end < m && flat[2 * end] == a {
            end += 1;
        }
        for i in (start..end).rev() {
            let b = second(i);
            let pos = tails.partition_point(|&t| second(t) < b);
            if want_witness && pos > 0 {
                parent[i] = tails[pos - 1];
            }
            if pos == tails.len() {
                tails.push(i);
            } else {
                tails[pos] = i;
            }
        }
        start = end;
    }
    let len = tails.len();
    let witness = want_witness.then(|| backtrack(tails.last().copied(), &parent));
    (len, witness)
}

fn backtrack(last: Option<usize>, parent: &[usize]) -> Vec<usize> {
    let mut out = Vec::new();
    let mut cur = last;
    while let Some(i) = cur {
        out.push(i);
        cur = (parent[i] != usize::MAX).then(|| parent[i]);
    }
    out.reverse();
    out
}

/// Level-scan DP on flat items (stride `d`). Returns the chain length and,
/// optionally, the item indices of one optimal chain in increasing order.
fn chain_dd<T: PartialOrd + Copy>(items: &[T], d: usize, want_witness: bool) -> (usize, Option<Vec<usize>>) {
    let m = items.len().checked_div(d).unwrap_or(0);
    let item = |i: usize| &items[i * d..(i + 1) * d];
    let mut order: Vec<usize> = (0..m).collect();
    order.sort_by(|&x, &y| cmp_slices(item(x), item(y)));

    // levels[l]: flat coordinates and ids of items whose best chain ends at length l+1
    let mut level_coords: Vec<Vec<T>> = Vec::new();
    let mut level_ids: Vec<Vec<usize>> = Vec::new();
    let mut parent = if want_witness { vec![usize::MAX; m] } else { Vec::new() };
    for &i in &order {
        let x = item(i);
        let mut placed = 0;
        for l in (0..level_coords.len()).rev() {
            let hit = level_coords[l].chunks_exact(d).position(|y| dominates(y, x));
            if let Some(k) = hit {
                if want_witness {
                    parent[i] = level_ids[l][k];
                }
                placed = l + 1;
                break;
            }
        }
        if placed == level_coords.len() {
            level_coords.push(Vec::new());
            level_ids.push(Vec::new());
        }
        level_coords[placed].extend_from_slice(x);
        level_ids[placed].push(i);
    }
    let len = level_coords.len();
    let witness = want_witness.then(|| backtrack(level_ids.last().and_then(|v| v.first().copied()), &parent));
    (len, witness)
}

/// Longest strict chain among flat `d`-tuples, by the quadratic DP.
pub fn longest_chain_dd<T: PartialOrd + Copy>(items: &[T], d: usize) -> usize {
    chain_dd(items, d, false).0
}

/// Longest strict chain among points of the unit cube.
pub fn longest_chain_points(ps: &PointSet) -> usize {
    match ps.d() {
        1 => {
            let mut v = ps.coords().to_vec();
            v.sort_by(cmp_partial);
            v.dedup();
            v.len()
        }
        2 => {
            let pairs: Vec<(f64, f64)> = ps.coords().chunks_exact(2).map(|c| (c[0], c[1])).collect();
            lis_strict_2d(&pairs)
        }
        d => longest_chain_dd(ps.coords(), d),
    }
}

/// Size `L(H)` of a largest non-crossing hyper-matching.
pub fn longest_noncrossing_matching(h: &HyperGraph, want_witness: bool) -> MatchingResult {
    let (length, ids) = if h.d() == 2 {
        chain_2d_sorted(h, want_witness)
    } else {
        chain_dd(h.flat(), h.d(), want_witness)
    };
    MatchingResult {
        length,
        witness: ids.map(|v| v.into_iter().map(|i| HyperEdge::from(h.edge(i))).collect()),
    }
}

/// Exhaustive search over all chains; oracle for small instances.
pub fn brute_force_lnm(h: &HyperGraph) -> Result<usize> {
    let m = h.num_edges();
    if m > BRUTE_FORCE_MAX_EDGES {
        return Err(Error::Resource(format!(
            "brute force limited to {BRUTE_FORCE_MAX_EDGES} edges, got {m}"
        )));
    }
    fn extend(h: &HyperGraph, last: usize) -> usize {
        let mut best = 0;
        for next in 0..h.num_edges() {
            if dominates(h.edge(last), h.edge(next)) {
                best = best.max(extend(h, next));
            }
        }
        best + 1
    }
    Ok((0..m).map(|i| extend(h, i)).max().unwrap_or(0))
}
