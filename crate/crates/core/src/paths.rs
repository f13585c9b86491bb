//! Pressing paths: validity, success, exhaustive enumeration and the
//! safe-press greedy solver.

use std::fmt;

use crate::bwgraph::{BWGraph, VertexId};
use crate::error::{Error, Result};

pub const DEFAULT_CAP: usize = 1_000_000;

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct PressingPath(pub Vec<VertexId>);

impl PressingPath {
    pub fn new(seq: Vec<VertexId>) -> Self {
        PressingPath(seq)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn as_slice(&self) -> &[VertexId] {
        &self.0
    }

    /// Suffix starting after the first `k` presses.
    pub fn suffix(&self, k: usize) -> PressingPath {
        PressingPath(self.0[k.min(self.0.len())..].to_vec())
    }

    pub fn has_distinct_vertices(&self) -> bool {
        let mut seen = 0u64;
        self.0.iter().all(|&v| {
            let b = 1u64 << v;
            let fresh = seen & b == 0;
            seen |= b;
            fresh
        })
    }

    pub fn parse(s: &str) -> Result<Self> {
        s.split_whitespace()
            .map(|t| {
                t.parse()
                    .map_err(|_| Error::parse(None, format!("bad vertex `{t}`")))
            })
            .collect::<Result<Vec<_>>>()
            .map(PressingPath)
    }
}

impl fmt::Display for PressingPath {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let toks: Vec<String> = self.0.iter().map(|v| v.to_string()).collect();
        f.write_str(&toks.join(" "))
    }
}

impl From<Vec<VertexId>> for PressingPath {
    fn from(v: Vec<VertexId>) -> Self {
        PressingPath(v)
    }
}

pub fn is_valid_path(g: &BWGraph, p: &PressingPath) -> bool {
    g.apply_path(p.as_slice()).is_ok()
}

pub fn is_successful_path(g: &BWGraph, p: &PressingPath) -> bool {
    g.apply_path(p.as_slice())
        .map(|h| h.is_all_white_empty())
        .unwrap_or(false)
}

/// All successful pressing paths of one graph, sorted lexicographically.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PathSet {
    graph: BWGraph,
    paths: Vec<PressingPath>,
    common_length: usize,
}

impl PathSet {
    pub fn graph(&self) -> &BWGraph {
        &self.graph
    }

    pub fn paths(&self) -> &[PressingPath] {
        &self.paths
    }

    pub fn len(&self) -> usize {
        self.paths.len()
    }

    pub fn is_empty(&self) -> bool {
        self.paths.is_empty()
    }

    pub fn common_length(&self) -> usize {
        self.common_length
    }

    pub fn contains(&self, p: &PressingPath) -> bool {
        self.paths.binary_search(p).is_ok()
    }

    pub fn index_of(&self, p: &PressingPath) -> Option<usize> {
        self.paths.binary_search(p).ok()
    }

    /// One path per line, vertices separated by spaces.
    pub fn to_text(&self) -> String {
        self.paths.iter().map(|p| format!("{p}\n")).collect()
    }
}

struct Enumerator {
    cap: usize,
    prefix: Vec<VertexId>,
    found: Vec<PressingPath>,
    length: Option<usize>,
}

impl Enumerator {
    fn dfs(&mut self, g: &BWGraph) -> Result<()> {
        if g.is_all_white_empty() {
            let len = self.prefix.len();
            match self.length {
                None => self.length = Some(len),
                Some(first) if first != len => {
                    return Err(Error::UnequalLengths { first, other: len })
                }
                _ => {}
            }
            if self.found.len() == self.cap {
                return Err(Error::CapExceeded {
                    cap: self.cap,
                    found: self.found.len(),
                });
            }
            self.found.push(PressingPath(self.prefix.clone()));
            return Ok(());
        }
        // unsolvable states never reach the goal
        if !g.is_solvable() {
            return Ok(());
        }
        for v in g.black_vertices() {
            let mut h = g.clone();
            h.press_in_place(v)?;
            self.prefix.push(v);
            self.dfs(&h)?;
            self.prefix.pop();
        }
        Ok(())
    }
}

/// Every successful pressing path, by depth-first search branching on black
/// vertices in ascending order. Fails rather than truncating when more than
/// `cap` paths exist, and reports any pair of paths of different length.
pub fn enumerate_successful(g: &BWGraph, cap: usize) -> Result<PathSet> {
    if !g.is_solvable() {
        return Err(Error::Unsolvable);
    }
    let mut e = Enumerator {
        cap,
        prefix: Vec::new(),
        found: Vec::new(),
        length: None,
    };
    e.dfs(g)?;
    // ascending-order DFS already yields lexicographic order
    debug_assert!(e.found.windows(2).all(|w| w[0] < w[1]));
    Ok(PathSet {
        graph: g.clone(),
        common_length: e.length.unwrap_or(0),
        paths: e.found,
    })
}

/// Number of successful paths without materialising them.
pub fn count_successful(g: &BWGraph) -> Result<u128> {
    fn go(g: &BWGraph, memo: &mut std::collections::HashMap<BWGraph, u128>) -> u128 {
        if g.is_all_white_empty() {
            return 1;
        }
        if !g.is_solvable() {
            return 0;
        }
        if let Some(&c) = memo.get(g) {
            return c;
        }
        let total = g
            .black_vertices()
            .map(|v| go(&g.press(v).expect("black vertex"), memo))
            .sum();
        memo.insert(g.clone(), total);
        total
    }
    if !g.is_solvable() {
        return Err(Error::Unsolvable);
    }
    Ok(go(g, &mut Default::default()))
}

/// Lowest-index black vertex whose press leaves no non-trivial all-white
/// component.
pub fn find_safe_press(g: &BWGraph) -> Result<VertexId> {
    if !g.is_solvable() {
        return Err(Error::Unsolvable);
    }
    if g.is_all_white_empty() {
        return Err(Error::AlreadySolved);
    }
    g.black_vertices()
        .find(|&v| g.press(v).map(|h| h.is_solvable()).unwrap_or(false))
        .ok_or(Error::Unsolvable)
}

pub fn greedy_solve(g: &BWGraph) -> Result<PressingPath> {
    if !g.is_solvable() {
        return Err(Error::Unsolvable);
    }
    let mut cur = g.clone();
    let mut path = Vec::new();
    while !cur.is_all_white_empty() {
        let v = find_safe_press(&cur)?;
        cur.press_in_place(v)?;
        path.push(v);
    }
    Ok(PressingPath(path))
}
