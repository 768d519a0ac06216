//! Block decompositions used by the lower and upper tail arguments.
//!
//! [`split_into_blocks`] cuts every color class into `q` equal consecutive
//! runs and keeps the `q` diagonal induced subgraphs. [`partition_matching`]
//! cuts a chain greedily into blocks bounded in edge count and in per-class
//! span.

use std::ops::Range;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{is_chain, HyperEdge, HyperGraph};

/// `q` diagonal blocks of a graph.
#[derive(Debug, Clone, PartialEq)]
pub struct BlockSplit {
    pub q: usize,
    /// `n'_j = floor(n_j / q)`.
    pub block_dims: Vec<u32>,
    pub blocks: Vec<HyperGraph>,
}

impl BlockSplit {
    /// 1-based vertex range of block `i` (0-based) in class `j`.
    pub fn range(&self, i: usize, j: usize) -> Range<u32> {
        let w = self.block_dims[j];
        i as u32 * w + 1..(i as u32 + 1) * w + 1
    }
}

/// Splits every class into `q` runs of `floor(n_j/q)` vertices; the trailing
/// remainder of each class belongs to no block.
pub fn split_into_blocks(h: &HyperGraph, q: usize) -> Result<BlockSplit> {
    let min = *h.dims().iter().min().expect("d >= 2") as usize;
    if q == 0 || q > min {
        return Err(Error::contract(format!("q = {q} outside 1..={min}")));
    }
    let d = h.d();
    let block_dims: Vec<u32> = h.dims().iter().map(|&n| n / q as u32).collect();
    let mut coords: Vec<Vec<u32>> = vec![Vec::new(); q];
    let mut buf = vec![0u32; d];
    'edges: for e in h.edges() {
        let b = (e[0] - 1) / block_dims[0];
        if b as usize >= q {
            continue;
        }
        for j in 0..d {
            if (e[j] - 1) / block_dims[j] != b {
                continue 'edges;
            }
            buf[j] = e[j] - b * block_dims[j];
        }
        coords[b as usize].extend_from_slice(&buf);
    }
    let blocks = coords
        .into_iter()
        .map(|c| HyperGraph::from_flat(block_dims.clone(), c))
        .collect::<Result<Vec<_>>>()?;
    Ok(BlockSplit { q, block_dims, blocks })
}

/// One block `[first, last]` of a chain, holding `size` edges.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Block {
    pub first: HyperEdge,
    pub last: HyperEdge,
    pub size: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BlockPartition {
    pub chain: Vec<HyperEdge>,
    pub s_max: usize,
    pub span_cap: u32,
    pub blocks: Vec<Block>,
}

/// Greedy partition of a chain: each block starts at the first unused edge
/// and runs to the last edge keeping at most `s_max` edges and a span of at
/// most `span_cap` in every class.
pub fn partition_matching(chain: &[HyperEdge], s_max: usize, span_cap: u32) -> Result<BlockPartition> {
    if s_max == 0 {
        return Err(Error::contract("s_max must be >= 1"));
    }
    if !is_chain(chain) {
        return Err(Error::contract("edges do not form a strictly increasing chain"));
    }
    let fits = |first: &HyperEdge, e: &HyperEdge| first.0.iter().zip(&e.0).all(|(&a, &b)| b - a <= span_cap);
    let mut blocks = Vec::new();
    let mut start = 0;
    while start < chain.len() {
        let first = &chain[start];
        let mut end = start + 1;
        while end < chain.len() && end - start < s_max && fits(first, &chain[end]) {
            end += 1;
        }
        blocks.push(Block {
            first: first.clone(),
            last: chain[end - 1].clone(),
            size: end - start,
        });
        start = end;
    }
    Ok(BlockPartition {
        chain: chain.to_vec(),
        s_max,
        span_cap,
        blocks,
    })
}

/// One component of a partition type.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum TypeEntry {
    Edge(HyperEdge),
    Size(usize),
}

/// The flattened `3q`-tuple `(e_1, e~_1, s_1, ..., e_q, e~_q, s_q)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct PartitionType(pub Vec<TypeEntry>);

impl PartitionType {
    /// Index ranges of the blocks within `chain`.
    pub fn boundaries(&self, chain: &[HyperEdge]) -> Result<Vec<Range<usize>>> {
        if !self.0.len().is_multiple_of(3) {
            return Err(Error::contract("type length not a multiple of 3"));
        }
        let find = |e: &HyperEdge| {
            chain
                .binary_search(e)
                .map_err(|_| Error::contract(format!("edge {:?} not in chain", e.0)))
        };
        self.0
            .chunks_exact(3)
            .map(|t| match t {
                [TypeEntry::Edge(a), TypeEntry::Edge(b), TypeEntry::Size(s)] => {
                    let (i, k) = (find(a)?, find(b)?);
                    if k < i || k + 1 - i != *s {
                        return Err(Error::contract("block size disagrees with its endpoints"));
                    }
                    Ok(i..k + 1)
                }
                _ => Err(Error::contract("malformed type triple")),
            })
            .collect()
    }
}

impl BlockPartition {
    pub fn q(&self) -> usize {
        self.blocks.len()
    }

    pub fn partition_type(&self) -> PartitionType {
        PartitionType(
            self.blocks
                .iter()
                .flat_map(|b| {
                    [
                        TypeEntry::Edge(b.first.clone()),
                        TypeEntry::Edge(b.last.clone()),
                        TypeEntry::Size(b.size),
                    ]
                })
                .collect(),
        )
    }

    /// Index ranges of the blocks within the chain.
    pub fn ranges(&self) -> Vec<Range<usize>> {
        let mut start = 0;
        self.blocks
            .iter()
            .map(|b| {
                let r = start..start + b.size;
                start += b.size;
                r
            })
            .collect()
    }

    /// Rebuilds a partition of `chain` from its type.
    pub fn from_type(chain: &[HyperEdge], t: &PartitionType, s_max: usize, span_cap: u32) -> Result<Self> {
        let ranges = t.boundaries(chain)?;
        let blocks = ranges
            .into_iter()
            .map(|r| Block {
                first: chain[r.start].clone(),
                last: chain[r.end - 1].clone(),
                size: r.len(),
            })
            .collect();
        Ok(BlockPartition {
            chain: chain.to_vec(),
            s_max,
            span_cap,
            blocks,
        })
    }

    /// Edge cap, span cap, exact cover in order, and greedy maximality.
    pub fn check_invariants(&self) -> std::result::Result<(), String> {
        let mut next = 0;
        for (i, b) in self.blocks.iter().enumerate() {
            if b.size == 0 || b.size > self.s_max {
                return Err(format!("block {i} has {} edges (cap {})", b.size, self.s_max));
            }
            let r = next..next + b.size;
            if r.end > self.chain.len() || self.chain[r.start] != b.first || self.chain[r.end - 1] != b.last {
                return Err(format!("block {i} does not match the chain at {r:?}"));
            }
            let span_ok = |e: &HyperEdge| b.first.0.iter().zip(&e.0).all(|(&a, &v)| v - a <= self.span_cap);
            if !span_ok(&b.last) {
                return Err(format!("block {i} exceeds span cap"));
            }
            if r.end < self.chain.len() && b.size < self.s_max && span_ok(&self.chain[r.end]) {
                return Err(format!("block {i} could absorb the next edge"));
            }
            next = r.end;
        }
        if next != self.chain.len() {
            return Err(format!("blocks cover {next} of {} edges", self.chain.len()));
        }
        Ok(())
    }
}

/// Side conditions under which the block count is bounded by `N/l <= q <= 3N/l`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PartitionRegime {
    /// Internal parameter.
    pub t: f64,
    pub lambda: f64,
    pub alpha: f64,
    pub eta: f64,
    /// Median constant.
    pub c: f64,
    /// Balance constant.
    pub c_g: f64,
    /// Geometric mean of the class sizes.
    pub n_geo: f64,
    /// Sum of the class sizes.
    pub class_sum: f64,
    /// Chain length.
    pub m_max: usize,
}

impl PartitionRegime {
    pub fn l(&self) -> f64 {
        self.t.powf(self.alpha)
    }

    pub fn span_cap(&self) -> u32 {
        (self.c_g * self.t.powf(self.eta + self.alpha)).floor() as u32
    }

    pub fn s_max(&self) -> usize {
        (self.l() / self.n_geo * self.m_max as f64).floor() as usize
    }

    /// `M = c N / t^lambda`.
    pub fn median_scale(&self) -> f64 {
        self.c * self.n_geo / self.t.powf(self.lambda)
    }

    pub fn holds(&self) -> bool {
        self.m_max as f64 >= self.median_scale()
            && self.m_max as f64 <= self.n_geo
            && self.class_sum <= self.c_g * self.t.powf(self.eta) * self.n_geo
            && self.t.powf(self.lambda - self.alpha) < self.c / 2.0
            && self.s_max() >= 1
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct QBoundReport {
    pub q: usize,
    pub lower: f64,
    pub upper: f64,
    pub within: bool,
    /// Set only when the regime's side conditions hold.
    pub ok: Option<bool>,
}

/// Reports `q` against `[N/l, 3N/l]`; asserts nothing outside the regime.
pub fn verify_partition_bounds(
    p: &BlockPartition,
    n_geo: f64,
    l: f64,
    regime: Option<&PartitionRegime>,
) -> QBoundReport {
    let q = p.q();
    let lower = n_geo / l;
    let upper = 3.0 * n_geo / l;
    let within = lower <= q as f64 && q as f64 <= upper;
    let ok = regime.filter(|r| r.holds()).map(|_| within);
    QBoundReport {
        q,
        lower,
        upper,
        within,
        ok,
    }
}

fn close_ge(lhs: f64, rhs: f64) -> bool {
    lhs >= rhs - 1e-9 * lhs.abs().max(rhs.abs()).max(1.0)
}

fn check_positive(xs: &[f64]) -> Result<()> {
    match xs.iter().find(|&&x| !(x > 0.0 && x.is_finite())) {
        Some(x) => Err(Error::contract(format!("input {x} is not a positive real"))),
        None => Ok(()),
    }
}

/// `prod(x_j - 1) >= prod(x_j) - (sum x_j)^(d-1)`.
///
/// Holds whenever every `x_j >= 1` (induction on `d`), which is how it is
/// applied to `n_j / q`; with `d >= 3` it can fail for entries below 1.
pub fn product_lemma_holds(x: &[f64]) -> Result<bool> {
    check_positive(x)?;
    let d = x.len() as i32;
    let lhs: f64 = x.iter().map(|v| v - 1.0).product();
    let rhs = x.iter().product::<f64>() - x.iter().sum::<f64>().powi(d - 1);
    Ok(close_ge(lhs, rhs))
}

/// Generalized Hoelder: `(sum_i prod_j x_ij)^d <= prod_j sum_i x_ij^d` for a
/// `q x d` matrix given by rows.
pub fn holder_holds(rows: &[Vec<f64>]) -> Result<bool> {
    let d = rows.first().map_or(0, |r| r.len());
    if d == 0 || rows.iter().any(|r| r.len() != d) {
        return Err(Error::contract("matrix must be non-empty and rectangular"));
    }
    for r in rows {
        check_positive(r)?;
    }
    let lhs = rows
        .iter()
        .map(|r| r.iter().product::<f64>())
        .sum::<f64>()
        .powi(d as i32);
    let rhs: f64 = (0..d)
        .map(|j| rows.iter().map(|r| r[j].powi(d as i32)).sum::<f64>())
        .product();
    Ok(close_ge(rhs, lhs))
}

/// Both inequalities on the given inputs.
pub fn product_inequalities_check(x: &[f64], rows: &[Vec<f64>]) -> Result<bool> {
    Ok(product_lemma_holds(x)? && holder_holds(rows)?)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn chain(pairs: &[(u32, u32)]) -> Vec<HyperEdge> {
        pairs.iter().map(|&(a, b)| HyperEdge::new([a, b])).collect()
    }

    #[test]
    fn split_examples() {
        let h = HyperGraph::new(vec![4, 4], &[[1u32, 1], [2, 2], [3, 3], [4, 4]]).unwrap();
        let s = split_into_blocks(&h, 2).unwrap();
        assert_eq!(s.block_dims, vec![2, 2]);
        for b in &s.blocks {
            assert_eq!(b.to_edges(), chain(&[(1, 1), (2, 2)]));
        }
        let s = split_into_blocks(&h, 1).unwrap();
        assert_eq!(s.blocks[0], h);
        assert!(split_into_blocks(&h, 5).is_err());
        assert!(split_into_blocks(&h, 0).is_err());
    }

    #[test]
    fn split_drops_remainder() {
        let h = HyperGraph::new(vec![5, 7], &[[1u32, 1], [3, 4], [5, 7]]).unwrap();
        let s = split_into_blocks(&h, 2).unwrap();
        assert_eq!(s.block_dims, vec![2, 3]);
        assert_eq!(s.range(1, 1), 4..7);
        assert_eq!(s.blocks[0].to_edges(), chain(&[(1, 1)]));
        assert_eq!(s.blocks[1].to_edges(), chain(&[(1, 1)]));
    }

    #[test]
    fn partition_examples() {
        let j = chain(&[(1, 1), (2, 2), (3, 3), (4, 4)]);
        let p = partition_matching(&j, 2, 10).unwrap();
        assert_eq!(p.q(), 2);
        assert_eq!(p.blocks[0].last, HyperEdge::new([2, 2]));
        assert_eq!(p.blocks[1].first, HyperEdge::new([3, 3]));
        p.check_invariants().unwrap();

        let p = partition_matching(&j, 4, 3).unwrap();
        assert_eq!(p.q(), 1);

        let j = chain(&[(1, 1), (2, 50)]);
        let p = partition_matching(&j, 10, 5).unwrap();
        assert_eq!(p.q(), 2);
        assert!(p.blocks.iter().all(|b| b.size == 1));
    }

    #[test]
    fn partition_rejects_non_chain() {
        let j = chain(&[(1, 2), (2, 1)]);
        assert!(partition_matching(&j, 2, 5).is_err());
        assert!(partition_matching(&chain(&[(1, 1)]), 0, 5).is_err());
        assert_eq!(partition_matching(&[], 3, 5).unwrap().q(), 0);
    }

    #[test]
    fn type_round_trip() {
        let j = chain(&[(1, 1), (2, 3), (4, 9), (5, 10), (6, 11), (20, 30)]);
        let p = partition_matching(&j, 2, 6).unwrap();
        let t = p.partition_type();
        assert_eq!(t.0.len(), 3 * p.q());
        assert_eq!(t.boundaries(&j).unwrap(), p.ranges());
        assert_eq!(BlockPartition::from_type(&j, &t, 2, 6).unwrap(), p);
        let json = serde_json::to_string(&t).unwrap();
        assert!(json.starts_with("[[1,1],[2,3],2,"));
        let back: PartitionType = serde_json::from_str(&json).unwrap();
        assert_eq!(back, t);
    }

    #[test]
    fn bounds_report() {
        let j = chain(&[(1, 1), (2, 2)]);
        let p = partition_matching(&j, 5, 5).unwrap();
        let r = verify_partition_bounds(&p, 3.0, 3.0, None);
        assert!(r.within);
        assert_eq!(r.ok, None);
    }

    #[test]
    fn inequality_examples() {
        assert!(product_lemma_holds(&[2.0, 2.0]).unwrap());
        assert!(holder_holds(&[vec![1.5, 2.0, 3.0]]).unwrap());
        assert!(product_inequalities_check(&[2.0, 2.0], &[vec![1.0, 2.0], vec![3.0, 4.0]]).unwrap());
        assert!(product_lemma_holds(&[0.0, 2.0]).is_err());
        assert!(holder_holds(&[vec![1.0, -1.0]]).is_err());
        // below 1 the lemma is genuinely false for odd d
        assert!(!product_lemma_holds(&[0.01, 0.01, 0.01]).unwrap());
    }
}
