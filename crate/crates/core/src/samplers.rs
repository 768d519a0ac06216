//! Exact samplers for the random models.
//!
//! Sparse models never touch absent cells: each model enumerates its cells
//! (or symmetry orbits) in a fixed canonical order and jumps between present
//! ones with geometric gaps, which is the same process as one Bernoulli draw
//! per cell.

use rand::seq::SliceRandom;
use rand::Rng;
use rand_distr::{Distribution, Geometric};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::HyperGraph;
use crate::seed::Seed;
use crate::solvers::PointSet;

/// Default refusal threshold on the expected edge count.
pub const DEFAULT_MAX_EDGES: f64 = 5.0e7;

/// Refuses to build instances whose expected edge count exceeds `max_edges`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EdgeGuard {
    pub max_edges: f64,
}

impl Default for EdgeGuard {
    fn default() -> Self {
        EdgeGuard {
            max_edges: DEFAULT_MAX_EDGES,
        }
    }
}

impl EdgeGuard {
    pub fn unlimited() -> Self {
        EdgeGuard {
            max_edges: f64::INFINITY,
        }
    }

    pub fn check(&self, expected: f64) -> Result<()> {
        if expected > self.max_edges {
            Err(Error::Resource(format!(
                "expected edge count {expected:.4e} exceeds cap {:.4e}",
                self.max_edges
            )))
        } else {
            Ok(())
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ModelKind {
    Binomial,
    Word,
    Symmetric,
    Antisymmetric,
    Oriented,
}

impl ModelKind {
    pub fn name(self) -> &'static str {
        match self {
            ModelKind::Binomial => "binomial",
            ModelKind::Word => "word",
            ModelKind::Symmetric => "symmetric",
            ModelKind::Antisymmetric => "antisymmetric",
            ModelKind::Oriented => "oriented",
        }
    }

    pub fn uses_p(self) -> bool {
        !matches!(self, ModelKind::Word)
    }
}

impl std::str::FromStr for ModelKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "binomial" => ModelKind::Binomial,
            "word" => ModelKind::Word,
            "symmetric" => ModelKind::Symmetric,
            "antisymmetric" => ModelKind::Antisymmetric,
            "oriented" => ModelKind::Oriented,
            _ => return Err(Error::contract(format!("unknown model '{s}'"))),
        })
    }
}

/// A random model with its parameters.
///
/// `dims` holds the `d` class sizes for binomial/word, and the single size
/// `n` for the square models. For the anti-symmetric model `n` is the
/// half-size: its classes have `2n` vertices.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ModelSpec {
    pub kind: ModelKind,
    pub dims: Vec<u32>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub p: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub k: Option<u32>,
}

impl ModelSpec {
    pub fn binomial(dims: Vec<u32>, p: f64) -> Result<Self> {
        Self::build(ModelKind::Binomial, dims, Some(p), None)
    }

    pub fn word(dims: Vec<u32>, k: u32) -> Result<Self> {
        Self::build(ModelKind::Word, dims, None, Some(k))
    }

    pub fn symmetric(n: u32, p: f64) -> Result<Self> {
        Self::build(ModelKind::Symmetric, vec![n], Some(p), None)
    }

    pub fn antisymmetric(n: u32, p: f64) -> Result<Self> {
        Self::build(ModelKind::Antisymmetric, vec![n], Some(p), None)
    }

    pub fn oriented(n: u32, p: f64) -> Result<Self> {
        Self::build(ModelKind::Oriented, vec![n], Some(p), None)
    }

    pub fn build(kind: ModelKind, dims: Vec<u32>, p: Option<f64>, k: Option<u32>) -> Result<Self> {
        let spec = ModelSpec { kind, dims, p, k };
        spec.validate()?;
        Ok(spec)
    }

    pub fn validate(&self) -> Result<()> {
        match (self.kind.uses_p(), self.p, self.k) {
            (true, Some(p), None) => {
                if !(0.0..=1.0).contains(&p) {
                    return Err(Error::contract(format!("p = {p} outside [0, 1]")));
                }
            }
            (false, None, Some(k)) => {
                if k == 0 {
                    return Err(Error::contract("alphabet size k must be >= 1"));
                }
            }
            _ => {
                return Err(Error::contract(format!(
                    "model {} takes exactly one of p/k ({})",
                    self.kind.name(),
                    if self.kind.uses_p() { "p" } else { "k" }
                )))
            }
        }
        if self.dims.contains(&0) {
            return Err(Error::contract("dims must be positive"));
        }
        match self.kind {
            ModelKind::Binomial | ModelKind::Word if self.dims.len() < 2 => {
                Err(Error::contract("binomial/word models need d >= 2 sizes"))
            }
            ModelKind::Symmetric | ModelKind::Antisymmetric | ModelKind::Oriented if self.dims.len() != 1 => {
                Err(Error::contract("square models take a single size n"))
            }
            _ => Ok(()),
        }
    }

    /// Sizes of the color classes of sampled graphs.
    pub fn class_dims(&self) -> Vec<u32> {
        match self.kind {
            ModelKind::Binomial | ModelKind::Word => self.dims.clone(),
            ModelKind::Symmetric | ModelKind::Oriented => vec![self.dims[0]; 2],
            ModelKind::Antisymmetric => vec![2 * self.dims[0]; 2],
        }
    }

    pub fn d(&self) -> usize {
        self.class_dims().len()
    }

    /// The internal parameter `t`: `1/p`, or `k` for the word model.
    pub fn internal_parameter(&self) -> f64 {
        match (self.p, self.k) {
            (Some(p), _) => 1.0 / p,
            (_, Some(k)) => k as f64,
            _ => f64::NAN,
        }
    }

    pub fn expected_edges(&self) -> f64 {
        let n = self.dims[0] as f64;
        match self.kind {
            ModelKind::Binomial => self.p.unwrap_or(0.0) * cell_count_f64(&self.dims),
            ModelKind::Word => {
                let k = self.k.unwrap_or(1) as f64;
                cell_count_f64(&self.dims) / k.powi(self.dims.len() as i32 - 1)
            }
            ModelKind::Symmetric => self.p.unwrap_or(0.0) * n * (n - 1.0),
            ModelKind::Oriented => self.p.unwrap_or(0.0) * n * (n - 1.0) / 2.0,
            ModelKind::Antisymmetric => self.p.unwrap_or(0.0) * 4.0 * n * n,
        }
    }

    /// Model parameters as a JSON object (`p` or `k`).
    pub fn params_json(&self) -> serde_json::Map<String, serde_json::Value> {
        let mut m = serde_json::Map::new();
        if let Some(p) = self.p {
            m.insert("p".into(), serde_json::json!(p));
        }
        if let Some(k) = self.k {
            m.insert("k".into(), serde_json::json!(k));
        }
        m
    }

    pub fn sample(&self, seed: Seed, guard: &EdgeGuard) -> Result<Sample> {
        self.sample_with(&mut seed.rng(), guard)
    }

    pub fn sample_with<R: Rng + ?Sized>(&self, rng: &mut R, guard: &EdgeGuard) -> Result<Sample> {
        self.validate()?;
        let n = self.dims[0];
        let graph = match self.kind {
            ModelKind::Binomial => sample_binomial(&self.dims, self.p.unwrap(), guard, rng)?,
            ModelKind::Word => {
                let ws = sample_word(&self.dims, self.k.unwrap(), guard, rng)?;
                return Ok(Sample {
                    graph: ws.graph,
                    words: Some(ws.words),
                });
            }
            ModelKind::Symmetric => sample_symmetric(n, self.p.unwrap(), guard, rng)?,
            ModelKind::Antisymmetric => sample_antisymmetric(n, self.p.unwrap(), guard, rng)?,
            ModelKind::Oriented => sample_oriented(n, self.p.unwrap(), guard, rng)?,
        };
        Ok(Sample { graph, words: None })
    }
}

/// A sampled instance; `words` is set for the word model.
#[derive(Debug, Clone, PartialEq)]
pub struct Sample {
    pub graph: HyperGraph,
    pub words: Option<Vec<Vec<u32>>>,
}

fn cell_count_f64(dims: &[u32]) -> f64 {
    dims.iter().map(|&n| n as f64).product()
}

fn cell_count(dims: &[u32]) -> Result<u64> {
    dims.iter().try_fold(1u64, |acc, &n| {
        acc.checked_mul(n as u64)
            .ok_or_else(|| Error::Resource("cell count overflows u64".into()))
    })
}

/// Calls `emit` with the indices in `0..total` selected by independent
/// Bernoulli(`p`) trials, in increasing order.
fn bernoulli_indices<R: Rng + ?Sized>(total: u64, p: f64, rng: &mut R, mut emit: impl FnMut(u64)) {
    if total == 0 || p <= 0.0 {
        return;
    }
    if p >= 1.0 {
        (0..total).for_each(emit);
        return;
    }
    // Failures before the next success.
    let gap = Geometric::new(p).expect("p in (0, 1)");
    let mut next = gap.sample(rng);
    while next < total {
        emit(next);
        next = match next.checked_add(1).and_then(|x| x.checked_add(gap.sample(rng))) {
            Some(x) => x,
            None => break,
        };
    }
}

/// Binomial model: every cell of `[n_1] x ... x [n_d]` independently with probability `p`.
pub fn sample_binomial<R: Rng + ?Sized>(dims: &[u32], p: f64, guard: &EdgeGuard, rng: &mut R) -> Result<HyperGraph> {
    if !(0.0..=1.0).contains(&p) {
        return Err(Error::contract(format!("p = {p} outside [0, 1]")));
    }
    guard.check(p * cell_count_f64(dims))?;
    let total = cell_count(dims)?;
    let d = dims.len();
    let mut coords = Vec::with_capacity(((p * total as f64) as usize + 16) * d);
    let mut buf = vec![0u32; d];
    bernoulli_indices(total, p, rng, |mut c| {
        for j in (0..d).rev() {
            let n = dims[j] as u64;
            buf[j] = (c % n) as u32 + 1;
            c /= n;
        }
        coords.extend_from_slice(&buf);
    });
    HyperGraph::from_flat(dims.to_vec(), coords)
}

/// Words plus the graph they induce.
#[derive(Debug, Clone, PartialEq)]
pub struct WordSample {
    /// Letters in `1..=k`, one word per color class.
    pub words: Vec<Vec<u32>>,
    pub graph: HyperGraph,
}

impl WordSample {
    /// Graph whose edges are the position tuples where all words agree.
    pub fn from_words(words: Vec<Vec<u32>>, k: u32, guard: &EdgeGuard) -> Result<Self> {
        let d = words.len();
        if d < 2 {
            return Err(Error::contract("need at least two words"));
        }
        let dims: Vec<u32> = words.iter().map(|w| w.len() as u32).collect();
        if words.iter().flatten().any(|&a| a == 0 || a > k) {
            return Err(Error::contract(format!("letters must lie in 1..={k}")));
        }
        // buckets[j][a] = positions of letter a in word j, ascending
        let mut buckets: Vec<Vec<Vec<u32>>> = vec![vec![Vec::new(); k as usize + 1]; d];
        for (j, w) in words.iter().enumerate() {
            for (i, &a) in w.iter().enumerate() {
                buckets[j][a as usize].push(i as u32 + 1);
            }
        }
        let actual: f64 = (1..=k as usize)
            .map(|a| buckets.iter().map(|b| b[a].len() as f64).product::<f64>())
            .sum();
        guard.check(actual)?;
        let mut coords = Vec::with_capacity(actual as usize * d);
        let mut cursor = vec![0usize; d];
        for (i, &a) in words[0].iter().enumerate() {
            let lists: Vec<&[u32]> = (1..d).map(|j| buckets[j][a as usize].as_slice()).collect();
            if lists.iter().any(|l| l.is_empty()) {
                continue;
            }
            // odometer over the cross product, last word fastest
            cursor.iter_mut().for_each(|c| *c = 0);
            loop {
                coords.push(i as u32 + 1);
                for (j, l) in lists.iter().enumerate() {
                    coords.push(l[cursor[j]]);
                }
                let mut j = lists.len();
                let exhausted = loop {
                    if j == 0 {
                        break true;
                    }
                    j -= 1;
                    cursor[j] += 1;
                    if cursor[j] < lists[j].len() {
                        break false;
                    }
                    cursor[j] = 0;
                };
                if exhausted {
                    break;
                }
            }
        }
        let graph = HyperGraph::from_flat(dims, coords)?;
        Ok(WordSample { words, graph })
    }
}

/// Word model: i.i.d. uniform letters from `1..=k`, edges where all words agree.
pub fn sample_word<R: Rng + ?Sized>(dims: &[u32], k: u32, guard: &EdgeGuard, rng: &mut R) -> Result<WordSample> {
    if k == 0 {
        return Err(Error::contract("alphabet size k must be >= 1"));
    }
    if dims.len() < 2 {
        return Err(Error::contract("word model needs d >= 2"));
    }
    let expected = cell_count_f64(dims) / (k as f64).powi(dims.len() as i32 - 1);
    guard.check(expected)?;
    let words: Vec<Vec<u32>> = dims
        .iter()
        .map(|&n| (0..n).map(|_| rng.random_range(1..=k)).collect())
        .collect();
    WordSample::from_words(words, k, &EdgeGuard::unlimited())
}

/// Turns increasing indices over the pairs `i < j` of `[n]` (lexicographic)
/// into the pairs themselves.
struct PairWalker {
    n: u64,
    row: u64,
    row_start: u64,
}

impl PairWalker {
    fn new(n: u32) -> Self {
        PairWalker {
            n: n as u64,
            row: 1,
            row_start: 0,
        }
    }

    fn pairs(n: u32) -> u64 {
        let n = n as u64;
        n * n.saturating_sub(1) / 2
    }

    fn locate(&mut self, idx: u64) -> (u32, u32) {
        while idx >= self.row_start + (self.n - self.row) {
            self.row_start += self.n - self.row;
            self.row += 1;
        }
        let j = self.row + 1 + (idx - self.row_start);
        (self.row as u32, j as u32)
    }
}

fn sort_pairs(mut pairs: Vec<(u32, u32)>) -> Vec<u32> {
    pairs.sort_unstable();
    pairs.into_iter().flat_map(|(a, b)| [a, b]).collect()
}

/// Symmetric model: orbits `{(i,j), (j,i)}`, `i < j`, each with probability `p`.
pub fn sample_symmetric<R: Rng + ?Sized>(n: u32, p: f64, guard: &EdgeGuard, rng: &mut R) -> Result<HyperGraph> {
    let spec = ModelSpec::symmetric(n, p)?;
    guard.check(spec.expected_edges())?;
    let mut walker = PairWalker::new(n);
    let mut pairs = Vec::new();
    bernoulli_indices(PairWalker::pairs(n), p, rng, |o| {
        let (i, j) = walker.locate(o);
        pairs.push((i, j));
        pairs.push((j, i));
    });
    Ok(HyperGraph::from_flat_unchecked(vec![n, n], sort_pairs(pairs)))
}

/// Oriented model: cells `(i,j)`, `i < j`, each with probability `p`.
pub fn sample_oriented<R: Rng + ?Sized>(n: u32, p: f64, guard: &EdgeGuard, rng: &mut R) -> Result<HyperGraph> {
    let spec = ModelSpec::oriented(n, p)?;
    guard.check(spec.expected_edges())?;
    let mut walker = PairWalker::new(n);
    let mut coords = Vec::new();
    bernoulli_indices(PairWalker::pairs(n), p, rng, |o| {
        let (i, j) = walker.locate(o);
        coords.push(i);
        coords.push(j);
    });
    Ok(HyperGraph::from_flat_unchecked(vec![n, n], coords))
}

/// Anti-symmetric model on classes of size `2n`: orbits
/// `{(i,j), (2n-i+1, 2n-j+1)}`, each with probability `p`.
///
/// The reflection reverses the row-major cell index, so orbit `o < 2n^2`
/// is the cell pair `{o, 4n^2 - 1 - o}`.
pub fn sample_antisymmetric<R: Rng + ?Sized>(n: u32, p: f64, guard: &EdgeGuard, rng: &mut R) -> Result<HyperGraph> {
    let spec = ModelSpec::antisymmetric(n, p)?;
    guard.check(spec.expected_edges())?;
    let m = 2 * n as u64;
    let cells = m * m;
    let cell = |c: u64| ((c / m) as u32 + 1, (c % m) as u32 + 1);
    let mut pairs = Vec::new();
    bernoulli_indices(cells / 2, p, rng, |o| {
        pairs.push(cell(o));
        pairs.push(cell(cells - 1 - o));
    });
    let m = m as u32;
    Ok(HyperGraph::from_flat_unchecked(vec![m, m], sort_pairs(pairs)))
}

/// `n` i.i.d. uniform points in `[0,1)^d`, in generation order.
pub fn sample_unit_cube<R: Rng + ?Sized>(n: usize, d: usize, rng: &mut R) -> Result<PointSet> {
    if d == 0 {
        return Err(Error::contract("dimension must be >= 1"));
    }
    let coords = (0..n * d).map(|_| rng.random::<f64>()).collect();
    PointSet::new(d, coords)
}

/// Uniform permutation of `[n]` as a 1-based value array.
pub fn sample_permutation<R: Rng + ?Sized>(n: usize, rng: &mut R) -> Vec<u32> {
    let mut pi: Vec<u32> = (1..=n as u32).collect();
    pi.shuffle(rng);
    pi
}

/// Uniform fixed-point-free involution of `[2m]`.
///
/// Repeatedly pairs the smallest unpaired element with a uniformly chosen
/// other unpaired element.
pub fn sample_involution<R: Rng + ?Sized>(m: usize, rng: &mut R) -> Result<Vec<u32>> {
    if m == 0 {
        return Err(Error::contract("involution needs m >= 1"));
    }
    let size = 2 * m;
    // pool of unpaired elements (0-based) with O(1) removal
    let mut pool: Vec<u32> = (0..size as u32).collect();
    let mut pos: Vec<usize> = (0..size).collect();
    let mut pi = vec![0u32; size];
    let remove = |pool: &mut Vec<u32>, pos: &mut Vec<usize>, x: u32| {
        let at = pos[x as usize];
        let last = *pool.last().unwrap();
        pool.swap_remove(at);
        if last != x {
            pos[last as usize] = at;
        }
    };
    let mut cursor = 0usize;
    while !pool.is_empty() {
        while pi[cursor] != 0 {
            cursor += 1;
        }
        let a = cursor as u32;
        remove(&mut pool, &mut pos, a);
        let b = pool[rng.random_range(0..pool.len())];
        remove(&mut pool, &mut pos, b);
        pi[a as usize] = b + 1;
        pi[b as usize] = a + 1;
    }
    Ok(pi)
}

/// `n` node-disjoint edges `(j, pi_2(j), ..., pi_d(j))` for independent
/// uniform permutations `pi_2..pi_d`.
pub fn sample_permutation_array<R: Rng + ?Sized>(n: usize, d: usize, rng: &mut R) -> Result<HyperGraph> {
    if d < 2 {
        return Err(Error::contract("permutation array needs d >= 2"));
    }
    if n == 0 {
        return Err(Error::contract("permutation array needs n >= 1"));
    }
    let perms: Vec<Vec<u32>> = (1..d).map(|_| sample_permutation(n, rng)).collect();
    permutation_array(&perms)
}

/// Graph of the array with identity first row and the given rows below it.
pub fn permutation_array(perms: &[Vec<u32>]) -> Result<HyperGraph> {
    let n = perms.first().map_or(0, |p| p.len());
    if n == 0 || perms.iter().any(|p| p.len() != n) {
        return Err(Error::contract("rows must be non-empty permutations of equal length"));
    }
    let d = perms.len() + 1;
    let mut coords = Vec::with_capacity(n * d);
    for j in 0..n {
        coords.push(j as u32 + 1);
        coords.extend(perms.iter().map(|p| p[j]));
    }
    HyperGraph::from_flat(vec![n as u32; d], coords)
}
