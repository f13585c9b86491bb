//! Metagraphs over successful pressing paths.
//!
//! Two successful paths are joined when their longest common subsequence is
//! at least `common_length - threshold`. The sweeps enumerate whole graph
//! families and check that every metagraph is connected.

use rayon::prelude::*;
use serde::Serialize;

use crate::bwgraph::{BWGraph, Color};
use crate::error::{Error, Result};
use crate::paths::{enumerate_successful, PathSet, PressingPath};

pub fn lcs_length(a: &[usize], b: &[usize]) -> usize {
    if a.is_empty() || b.is_empty() {
        return 0;
    }
    let mut prev = vec![0usize; b.len() + 1];
    let mut cur = vec![0usize; b.len() + 1];
    for &x in a {
        for (j, &y) in b.iter().enumerate() {
            cur[j + 1] = if x == y {
                prev[j] + 1
            } else {
                cur[j].max(prev[j + 1])
            };
        }
        std::mem::swap(&mut prev, &mut cur);
    }
    prev[b.len()]
}

/// Weighted union-find over `0..n`.
#[derive(Debug, Clone)]
pub struct UnionFind {
    parent: Vec<usize>,
    size: Vec<usize>,
    sets: usize,
}

impl UnionFind {
    pub fn new(n: usize) -> Self {
        UnionFind {
            parent: (0..n).collect(),
            size: vec![1; n],
            sets: n,
        }
    }

    pub fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    pub fn union(&mut self, a: usize, b: usize) -> bool {
        let (mut a, mut b) = (self.find(a), self.find(b));
        if a == b {
            return false;
        }
        if self.size[a] < self.size[b] {
            std::mem::swap(&mut a, &mut b);
        }
        self.parent[b] = a;
        self.size[a] += self.size[b];
        self.sets -= 1;
        true
    }

    pub fn sets(&self) -> usize {
        self.sets
    }

    /// Blocks of the partition, each sorted, ordered by smallest member.
    pub fn blocks(&mut self) -> Vec<Vec<usize>> {
        let n = self.parent.len();
        let mut by_root: Vec<Vec<usize>> = vec![Vec::new(); n];
        for x in 0..n {
            let r = self.find(x);
            by_root[r].push(x);
        }
        let mut blocks: Vec<_> = by_root.into_iter().filter(|b| !b.is_empty()).collect();
        blocks.sort();
        blocks
    }
}

/// Pairwise LCS deficits `common_length - lcs` for a path set.
struct DeficitTable {
    len: usize,
    /// `(i, j, deficit)` for `i < j`, in row-major order.
    pairs: Vec<(u32, u32, u8)>,
}

impl DeficitTable {
    fn new(ps: &PathSet) -> Self {
        let paths = ps.paths();
        let l = ps.common_length();
        let pairs = paths
            .par_iter()
            .enumerate()
            .flat_map_iter(|(i, a)| {
                paths[i + 1..].iter().enumerate().map(move |(dj, b)| {
                    let d = l - lcs_length(a.as_slice(), b.as_slice());
                    (i as u32, (i + 1 + dj) as u32, d as u8)
                })
            })
            .collect();
        DeficitTable {
            len: paths.len(),
            pairs,
        }
    }

    fn edges_within(&self, k: usize) -> usize {
        self.pairs.iter().filter(|p| p.2 as usize <= k).count()
    }

    fn components_at(&self, k: usize) -> UnionFind {
        let mut uf = UnionFind::new(self.len);
        for &(i, j, d) in &self.pairs {
            if d as usize <= k {
                uf.union(i as usize, j as usize);
            }
        }
        uf
    }

    /// Smallest `k` making the graph connected.
    fn min_connect(&self, max: usize) -> usize {
        if self.len <= 1 {
            return 0;
        }
        let mut buckets = vec![Vec::new(); max + 1];
        for &(i, j, d) in &self.pairs {
            buckets[d as usize].push((i as usize, j as usize));
        }
        let mut uf = UnionFind::new(self.len);
        for (k, bucket) in buckets.iter().enumerate() {
            for &(i, j) in bucket {
                uf.union(i, j);
            }
            if uf.sets() == 1 {
                return k;
            }
        }
        max
    }
}

#[derive(Debug, Clone)]
pub struct Metagraph {
    paths: PathSet,
    threshold: usize,
    edges: Vec<(usize, usize)>,
}

pub fn build_metagraph(ps: &PathSet, threshold: usize) -> Result<Metagraph> {
    if ps.is_empty() {
        return Err(Error::EmptyPathSet);
    }
    let table = DeficitTable::new(ps);
    let edges = table
        .pairs
        .iter()
        .filter(|p| p.2 as usize <= threshold)
        .map(|&(i, j, _)| (i as usize, j as usize))
        .collect();
    Ok(Metagraph {
        paths: ps.clone(),
        threshold,
        edges,
    })
}

impl Metagraph {
    pub fn paths(&self) -> &PathSet {
        &self.paths
    }

    pub fn threshold(&self) -> usize {
        self.threshold
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn components(&self) -> Vec<Vec<usize>> {
        let mut uf = UnionFind::new(self.paths.len());
        for &(i, j) in &self.edges {
            uf.union(i, j);
        }
        uf.blocks()
    }

    pub fn is_connected(&self) -> bool {
        self.components().len() <= 1
    }

    /// Graphviz rendering with vertices labelled by their path strings.
    pub fn to_dot(&self) -> String {
        let mut s = String::from("graph metagraph {\n");
        for (i, p) in self.paths.paths().iter().enumerate() {
            s.push_str(&format!("  {i} [label=\"{p}\"];\n"));
        }
        for (i, j) in &self.edges {
            s.push_str(&format!("  {i} -- {j};\n"));
        }
        s.push_str("}\n");
        s
    }
}

pub fn is_connected(m: &Metagraph) -> bool {
    m.is_connected()
}

pub fn min_connect_threshold(ps: &PathSet) -> Result<usize> {
    if ps.is_empty() {
        return Err(Error::EmptyPathSet);
    }
    Ok(DeficitTable::new(ps).min_connect(ps.common_length()))
}

#[derive(Debug, Clone, Serialize, PartialEq, Eq)]
pub struct InstanceStats {
    pub graph: String,
    pub n: usize,
    pub path_count: usize,
    pub common_length: usize,
    pub metagraph_edges: usize,
    pub min_connect_threshold: usize,
    pub connected: bool,
}

#[derive(Debug, Clone, Serialize, PartialEq, Eq)]
pub struct Failure {
    pub graph: String,
    /// Metagraph components, each a list of path strings.
    pub components: Vec<Vec<String>>,
}

#[derive(Debug, Clone, Serialize, PartialEq, Eq)]
pub struct Incomplete {
    pub graph: String,
    pub error: String,
}

#[derive(Debug, Clone, Copy, Serialize, PartialEq, Eq)]
pub enum Verdict {
    #[serde(rename = "PASS")]
    Pass,
    #[serde(rename = "FAIL")]
    Fail,
    #[serde(rename = "INCOMPLETE")]
    Incomplete,
}

#[derive(Debug, Clone, Serialize, PartialEq, Eq)]
pub struct SweepReport {
    pub family: String,
    pub threshold: usize,
    pub instances_checked: usize,
    pub failures: Vec<Failure>,
    pub incomplete: Vec<Incomplete>,
    pub stats: Vec<InstanceStats>,
    pub verdict: Verdict,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InstanceResult {
    pub stats: InstanceStats,
    pub failure: Option<Failure>,
}

/// Enumerates, builds the metagraph at `threshold` and checks connectivity.
pub fn verify_general(g: &BWGraph, threshold: usize, cap: usize) -> Result<InstanceResult> {
    let ps = enumerate_successful(g, cap)?;
    let table = DeficitTable::new(&ps);
    let min = table.min_connect(ps.common_length());
    let connected = min <= threshold;
    let failure = (!connected).then(|| Failure {
        graph: g.to_text(),
        components: table
            .components_at(threshold)
            .blocks()
            .into_iter()
            .map(|b| b.into_iter().map(|i| ps.paths()[i].to_string()).collect())
            .collect(),
    });
    Ok(InstanceResult {
        stats: InstanceStats {
            graph: describe(g),
            n: g.n(),
            path_count: ps.len(),
            common_length: ps.common_length(),
            metagraph_edges: table.edges_within(threshold),
            min_connect_threshold: min,
            connected,
        },
        failure,
    })
}

fn describe(g: &BWGraph) -> String {
    let edges: Vec<String> = g.edges().iter().map(|(u, v)| format!("{u}-{v}")).collect();
    format!("{} [{}]", g.color_string(), edges.join(" "))
}

fn sweep(family: String, threshold: usize, cap: usize, graphs: Vec<BWGraph>) -> SweepReport {
    let results: Vec<_> = graphs
        .par_iter()
        .map(|g| (g, verify_general(g, threshold, cap)))
        .collect();
    let mut report = SweepReport {
        family,
        threshold,
        instances_checked: 0,
        failures: Vec::new(),
        incomplete: Vec::new(),
        stats: Vec::new(),
        verdict: Verdict::Pass,
    };
    for (g, r) in results {
        match r {
            Ok(res) => {
                report.instances_checked += 1;
                report.stats.push(res.stats);
                report.failures.extend(res.failure);
            }
            Err(e) => report.incomplete.push(Incomplete {
                graph: describe(g),
                error: e.to_string(),
            }),
        }
    }
    report.verdict = if !report.failures.is_empty() {
        Verdict::Fail
    } else if !report.incomplete.is_empty() {
        Verdict::Incomplete
    } else {
        Verdict::Pass
    };
    report
}

/// Every solvable coloring of every path on `1..=n_max` vertices.
pub fn linear_family(n_max: usize) -> Vec<BWGraph> {
    let mut out = Vec::new();
    for n in 1..=n_max {
        for mask in 0u64..(1 << n) {
            let colors: Vec<Color> = (0..n)
                .map(|i| {
                    if mask >> i & 1 == 1 {
                        Color::Black
                    } else {
                        Color::White
                    }
                })
                .collect();
            let g = BWGraph::linear(&colors).expect("n within limit");
            if g.is_solvable() {
                out.push(g);
            }
        }
    }
    out
}

/// Every solvable labelled graph on `1..=n_max` vertices, all colourings.
pub fn general_family(n_max: usize) -> Vec<BWGraph> {
    let mut out = Vec::new();
    for n in 1..=n_max {
        let pairs: Vec<(usize, usize)> = (0..n)
            .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
            .collect();
        for emask in 0u64..(1 << pairs.len()) {
            let edges: Vec<_> = pairs
                .iter()
                .enumerate()
                .filter(|(i, _)| emask >> i & 1 == 1)
                .map(|(_, &e)| e)
                .collect();
            for cmask in 0u64..(1 << n) {
                let colors: Vec<Color> = (0..n)
                    .map(|i| {
                        if cmask >> i & 1 == 1 {
                            Color::Black
                        } else {
                            Color::White
                        }
                    })
                    .collect();
                let g = BWGraph::from_parts(&colors, &edges).expect("n within limit");
                if g.is_solvable() {
                    out.push(g);
                }
            }
        }
    }
    out
}

pub fn verify_linear_family(n_max: usize, threshold: usize, cap: usize) -> SweepReport {
    sweep(
        format!("linear n<={n_max}"),
        threshold,
        cap,
        linear_family(n_max),
    )
}

pub fn verify_general_family(n_max: usize, threshold: usize, cap: usize) -> SweepReport {
    sweep(
        format!("general n<={n_max}"),
        threshold,
        cap,
        general_family(n_max),
    )
}

impl SweepReport {
    pub fn passed(&self) -> bool {
        self.verdict == Verdict::Pass
    }
}

pub fn path_strings(ps: &PathSet) -> Vec<String> {
    ps.paths().iter().map(PressingPath::to_string).collect()
}
