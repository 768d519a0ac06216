//! d-partite hyper-graphs over totally ordered color classes.
//!
//! Vertices of class `j` are identified with `1..=n_j`. An edge picks one
//! vertex per class; the edge set is kept as one flat, lexicographically
//! sorted coordinate array with stride `d`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result, ViolationKind};

/// One edge `(v_1, ..., v_d)`, 1-based.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct HyperEdge(pub Vec<u32>);

impl HyperEdge {
    pub fn new(coords: impl Into<Vec<u32>>) -> Self {
        HyperEdge(coords.into())
    }

    pub fn coords(&self) -> &[u32] {
        &self.0
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }
}

impl AsRef<[u32]> for HyperEdge {
    fn as_ref(&self) -> &[u32] {
        &self.0
    }
}

impl From<&[u32]> for HyperEdge {
    fn from(c: &[u32]) -> Self {
        HyperEdge(c.to_vec())
    }
}

/// True iff every coordinate of `f` strictly exceeds that of `e`.
///
/// Two edges of a non-crossing matching may not share a vertex, so the
/// order used by every solver is the strict one.
pub fn strictly_dominates(e: &[u32], f: &[u32]) -> Result<bool> {
    if e.len() != f.len() {
        return Err(Error::contract(format!(
            "dimension mismatch: {} vs {}",
            e.len(),
            f.len()
        )));
    }
    Ok(dominates(e, f))
}

#[inline]
pub(crate) fn dominates<T: PartialOrd>(e: &[T], f: &[T]) -> bool {
    e.iter().zip(f).all(|(a, b)| a < b)
}

/// Checks that `chain` is a strictly increasing sequence under dominance.
pub fn is_chain<E: AsRef<[u32]>>(chain: &[E]) -> bool {
    chain
        .windows(2)
        .all(|w| w[0].as_ref().len() == w[1].as_ref().len() && dominates(w[0].as_ref(), w[1].as_ref()))
}

/// Length of a largest non-crossing hyper-matching, plus an optional witness.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MatchingResult {
    pub length: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Vec<HyperEdge>>,
}

impl MatchingResult {
    pub fn length_only(length: usize) -> Self {
        MatchingResult { length, witness: None }
    }

    /// Witness (if any) has the reported length and is a strict chain.
    pub fn is_consistent(&self) -> bool {
        match &self.witness {
            None => true,
            Some(w) => w.len() == self.length && is_chain(w),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct HyperGraph {
    dims: Vec<u32>,
    coords: Vec<u32>,
}

fn validate_flat(dims: &[u32], coords: &[u32]) -> Result<()> {
    if dims.len() < 2 {
        return Err(Error::contract(format!("need d >= 2, got {}", dims.len())));
    }
    if let Some(j) = dims.iter().position(|&n| n == 0) {
        return Err(Error::contract(format!("color class {} is empty", j + 1)));
    }
    let d = dims.len();
    if !coords.len().is_multiple_of(d) {
        return Err(Error::Invalid {
            index: coords.len() / d,
            kind: ViolationKind::WrongArity,
        });
    }
    let mut prev: Option<&[u32]> = None;
    for (i, e) in coords.chunks_exact(d).enumerate() {
        if e.iter().zip(dims).any(|(&v, &n)| v == 0 || v > n) {
            return Err(Error::Invalid {
                index: i,
                kind: ViolationKind::OutOfRange,
            });
        }
        if let Some(p) = prev {
            match p.cmp(e) {
                std::cmp::Ordering::Less => {}
                std::cmp::Ordering::Equal => {
                    return Err(Error::Invalid {
                        index: i,
                        kind: ViolationKind::Duplicate,
                    })
                }
                std::cmp::Ordering::Greater => {
                    return Err(Error::Invalid {
                        index: i,
                        kind: ViolationKind::Unsorted,
                    })
                }
            }
        }
        prev = Some(e);
    }
    Ok(())
}

/// Checks every graph invariant on raw parts, reporting the first violation.
pub fn validate<E: AsRef<[u32]>>(dims: &[u32], edges: &[E]) -> Result<()> {
    let d = dims.len();
    let mut flat = Vec::with_capacity(edges.len() * d);
    for (i, e) in edges.iter().enumerate() {
        if e.as_ref().len() != d {
            return Err(Error::Invalid {
                index: i,
                kind: ViolationKind::WrongArity,
            });
        }
        flat.extend_from_slice(e.as_ref());
    }
    validate_flat(dims, &flat)
}

impl HyperGraph {
    /// Builds a graph from edges that must already be sorted and distinct.
    pub fn new<E: AsRef<[u32]>>(dims: Vec<u32>, edges: &[E]) -> Result<Self> {
        validate(&dims, edges)?;
        let coords = edges.iter().flat_map(|e| e.as_ref().iter().copied()).collect();
        Ok(HyperGraph { dims, coords })
    }

    /// Builds a graph from edges in any order; duplicates are merged.
    pub fn from_unsorted<E: AsRef<[u32]>>(dims: Vec<u32>, edges: &[E]) -> Result<Self> {
        let mut v: Vec<&[u32]> = edges.iter().map(|e| e.as_ref()).collect();
        v.sort_unstable();
        v.dedup();
        Self::new(dims, &v)
    }

    pub fn from_flat(dims: Vec<u32>, coords: Vec<u32>) -> Result<Self> {
        validate_flat(&dims, &coords)?;
        Ok(HyperGraph { dims, coords })
    }

    /// Caller guarantees sortedness and bounds (samplers).
    pub(crate) fn from_flat_unchecked(dims: Vec<u32>, coords: Vec<u32>) -> Self {
        debug_assert!(validate_flat(&dims, &coords).is_ok());
        HyperGraph { dims, coords }
    }

    pub fn empty(dims: Vec<u32>) -> Result<Self> {
        Self::from_flat(dims, Vec::new())
    }

    pub fn d(&self) -> usize {
        self.dims.len()
    }

    pub fn dims(&self) -> &[u32] {
        &self.dims
    }

    pub fn num_edges(&self) -> usize {
        self.coords.len() / self.d()
    }

    pub fn is_empty(&self) -> bool {
        self.coords.is_empty()
    }

    pub fn edge(&self, i: usize) -> &[u32] {
        let d = self.d();
        &self.coords[i * d..(i + 1) * d]
    }

    pub fn edges(&self) -> std::slice::ChunksExact<'_, u32> {
        self.coords.chunks_exact(self.d())
    }

    /// Flat coordinate array, stride `d`.
    pub fn flat(&self) -> &[u32] {
        &self.coords
    }

    pub fn contains(&self, e: &[u32]) -> bool {
        let d = self.d();
        if e.len() != d {
            return false;
        }
        let n = self.num_edges();
        let (mut lo, mut hi) = (0, n);
        while lo < hi {
            let mid = (lo + hi) / 2;
            match self.edge(mid).cmp(e) {
                std::cmp::Ordering::Less => lo = mid + 1,
                std::cmp::Ordering::Greater => hi = mid,
                std::cmp::Ordering::Equal => return true,
            }
        }
        false
    }

    pub fn to_edges(&self) -> Vec<HyperEdge> {
        self.edges().map(HyperEdge::from).collect()
    }

    /// Geometric mean `N` of the class sizes.
    pub fn geometric_mean(&self) -> f64 {
        geometric_mean(&self.dims)
    }

    /// Sum `S` of the class sizes.
    pub fn class_sum(&self) -> u64 {
        self.dims.iter().map(|&n| n as u64).sum()
    }

    /// Degree of every vertex, one vector per class (index 0 unused).
    pub fn degrees(&self) -> Vec<Vec<u32>> {
        let mut deg: Vec<Vec<u32>> = self.dims.iter().map(|&n| vec![0; n as usize + 1]).collect();
        for e in self.edges() {
            for (j, &v) in e.iter().enumerate() {
                deg[j][v as usize] += 1;
            }
        }
        deg
    }

    /// Keeps exactly the edges whose endpoints all have degree 1.
    pub fn reduce_degree_one(&self) -> HyperGraph {
        let deg = self.degrees();
        let mut coords = Vec::new();
        for e in self.edges() {
            if e.iter().enumerate().all(|(j, &v)| deg[j][v as usize] == 1) {
                coords.extend_from_slice(e);
            }
        }
        HyperGraph::from_flat_unchecked(self.dims.clone(), coords)
    }

    /// Drops every edge `(x, y)` with `x >= y` from a symmetric bipartite graph.
    ///
    /// Pair with [`orient_matching`] to carry a matching across.
    pub fn orient_symmetric(&self) -> Result<HyperGraph> {
        if self.d() != 2 || self.dims[0] != self.dims[1] {
            return Err(Error::contract("orientation needs a square bipartite graph"));
        }
        let mut coords = Vec::new();
        for e in self.edges() {
            let (x, y) = (e[0], e[1]);
            if x == y {
                return Err(Error::contract(format!("diagonal edge ({x},{y})")));
            }
            if !self.contains(&[y, x]) {
                return Err(Error::contract(format!(
                    "not symmetric: ({x},{y}) present without ({y},{x})"
                )));
            }
            if x < y {
                coords.extend_from_slice(e);
            }
        }
        Ok(HyperGraph::from_flat_unchecked(self.dims.clone(), coords))
    }

    /// Subgraph induced on the given per-class vertex subsets, re-indexed by rank.
    pub fn induced_subgraph(&self, ranges: &[Vec<u32>]) -> Result<HyperGraph> {
        let d = self.d();
        if ranges.len() != d {
            return Err(Error::contract(format!(
                "expected {d} index subsets, got {}",
                ranges.len()
            )));
        }
        let mut rank: Vec<Vec<u32>> = Vec::with_capacity(d);
        let mut new_dims = Vec::with_capacity(d);
        for (j, sub) in ranges.iter().enumerate() {
            let n = self.dims[j];
            let mut map = vec![0u32; n as usize + 1];
            for (r, &v) in sub.iter().enumerate() {
                if v == 0 || v > n {
                    return Err(Error::contract(format!(
                        "vertex {v} outside class {} of size {n}",
                        j + 1
                    )));
                }
                if r > 0 && sub[r - 1] >= v {
                    return Err(Error::contract(format!(
                        "subset for class {} is not strictly increasing",
                        j + 1
                    )));
                }
                map[v as usize] = r as u32 + 1;
            }
            if sub.is_empty() {
                return Err(Error::contract(format!("subset for class {} is empty", j + 1)));
            }
            new_dims.push(sub.len() as u32);
            rank.push(map);
        }
        let mut coords = Vec::new();
        let mut buf = vec![0u32; d];
        for e in self.edges() {
            let mut keep = true;
            for j in 0..d {
                let r = rank[j][e[j] as usize];
                if r == 0 {
                    keep = false;
                    break;
                }
                buf[j] = r;
            }
            if keep {
                coords.extend_from_slice(&buf);
            }
        }
        Ok(HyperGraph::from_flat_unchecked(new_dims, coords))
    }

    /// Subgraph induced on the contiguous box `start_j+1 ..= start_j+len_j`.
    pub fn induced_box(&self, start: &[u32], len: &[u32]) -> Result<HyperGraph> {
        let ranges: Vec<Vec<u32>> = start
            .iter()
            .zip(len)
            .map(|(&s, &l)| (s + 1..=s + l).collect())
            .collect();
        self.induced_subgraph(&ranges)
    }
}

/// Maps a matching of a symmetric graph to one of its orientation:
/// each `(x, y)` becomes `(min, max)`.
pub fn orient_matching<E: AsRef<[u32]>>(matching: &[E]) -> Vec<HyperEdge> {
    let mut out: Vec<HyperEdge> = matching
        .iter()
        .map(|e| {
            let (x, y) = (e.as_ref()[0], e.as_ref()[1]);
            HyperEdge(vec![x.min(y), x.max(y)])
        })
        .collect();
    out.sort();
    out
}

pub fn geometric_mean(dims: &[u32]) -> f64 {
    let d = dims.len() as f64;
    (dims.iter().map(|&n| (n as f64).ln()).sum::<f64>() / d).exp()
}
