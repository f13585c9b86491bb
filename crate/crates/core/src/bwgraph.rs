//! Black-and-white graphs and the press operation.
//!
//! Pressing a black vertex `v` flips the colour of every neighbour of `v`,
//! toggles adjacency between every pair of neighbours, and finally leaves
//! `v` as an isolated white vertex.
//!
//! Graphs are stored as one `u64` adjacency row per vertex plus a `u64`
//! mask of black vertices, so at most [`MAX_VERTICES`] vertices are
//! supported. Every operation takes `&self` and returns a new value.

use std::fmt;

use crate::error::{Error, Result};

pub const MAX_VERTICES: usize = 64;

pub type VertexId = usize;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Color {
    Black,
    White,
}

impl Color {
    pub fn as_char(self) -> char {
        match self {
            Color::Black => 'B',
            Color::White => 'W',
        }
    }

    pub fn from_char(c: char) -> Option<Self> {
        match c.to_ascii_uppercase() {
            'B' => Some(Color::Black),
            'W' => Some(Color::White),
            _ => None,
        }
    }
}

#[inline]
fn bit(v: usize) -> u64 {
    1u64 << v
}

fn iter_bits(mut mask: u64) -> impl Iterator<Item = usize> {
    std::iter::from_fn(move || {
        if mask == 0 {
            None
        } else {
            let v = mask.trailing_zeros() as usize;
            mask &= mask - 1;
            Some(v)
        }
    })
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BWGraph {
    n: usize,
    black: u64,
    adj: Vec<u64>,
}

impl BWGraph {
    /// Edgeless graph with `n` white vertices.
    pub fn empty(n: usize) -> Result<Self> {
        if n > MAX_VERTICES {
            return Err(Error::TooManyVertices(n));
        }
        Ok(BWGraph {
            n,
            black: 0,
            adj: vec![0; n],
        })
    }

    pub fn from_parts(colors: &[Color], edges: &[(VertexId, VertexId)]) -> Result<Self> {
        let mut g = Self::empty(colors.len())?;
        for (v, &c) in colors.iter().enumerate() {
            g.set_color(v, c)?;
        }
        for &(u, v) in edges {
            g.add_edge(u, v)?;
        }
        Ok(g)
    }

    /// Path `0 - 1 - ... - (n-1)` with the given colours.
    pub fn linear(colors: &[Color]) -> Result<Self> {
        let edges: Vec<_> = (1..colors.len()).map(|i| (i - 1, i)).collect();
        Self::from_parts(colors, &edges)
    }

    fn check(&self, v: VertexId) -> Result<()> {
        if v < self.n {
            Ok(())
        } else {
            Err(Error::IndexOutOfRange {
                index: v,
                len: self.n,
            })
        }
    }

    pub fn set_color(&mut self, v: VertexId, c: Color) -> Result<()> {
        self.check(v)?;
        match c {
            Color::Black => self.black |= bit(v),
            Color::White => self.black &= !bit(v),
        }
        Ok(())
    }

    /// Adds the undirected edge `u - v`. Self-loops are rejected.
    pub fn add_edge(&mut self, u: VertexId, v: VertexId) -> Result<()> {
        self.check(u)?;
        self.check(v)?;
        if u == v {
            return Err(Error::SelfLoop { vertex: u, line: 0 });
        }
        self.adj[u] |= bit(v);
        self.adj[v] |= bit(u);
        Ok(())
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn color(&self, v: VertexId) -> Color {
        if self.is_black(v) {
            Color::Black
        } else {
            Color::White
        }
    }

    pub fn colors(&self) -> Vec<Color> {
        (0..self.n).map(|v| self.color(v)).collect()
    }

    pub fn is_black(&self, v: VertexId) -> bool {
        v < self.n && self.black & bit(v) != 0
    }

    pub fn black_mask(&self) -> u64 {
        self.black
    }

    pub fn neighbor_mask(&self, v: VertexId) -> u64 {
        self.adj[v]
    }

    pub fn has_edge(&self, u: VertexId, v: VertexId) -> bool {
        u < self.n && v < self.n && self.adj[u] & bit(v) != 0
    }

    pub fn neighbors(&self, v: VertexId) -> impl Iterator<Item = VertexId> {
        iter_bits(self.adj[v])
    }

    pub fn black_vertices(&self) -> impl Iterator<Item = VertexId> {
        iter_bits(self.black)
    }

    pub fn degree(&self, v: VertexId) -> usize {
        self.adj[v].count_ones() as usize
    }

    /// Edges as `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> Vec<(VertexId, VertexId)> {
        let mut out = Vec::new();
        for u in 0..self.n {
            for v in iter_bits(self.adj[u] >> u >> 1) {
                out.push((u, u + 1 + v));
            }
        }
        out
    }

    pub fn edge_count(&self) -> usize {
        self.adj
            .iter()
            .map(|r| r.count_ones() as usize)
            .sum::<usize>()
            / 2
    }

    pub fn press(&self, v: VertexId) -> Result<BWGraph> {
        let mut g = self.clone();
        g.press_in_place(v)?;
        Ok(g)
    }

    pub(crate) fn press_in_place(&mut self, v: VertexId) -> Result<()> {
        self.check(v)?;
        if self.black & bit(v) == 0 {
            return Err(Error::PressOnWhite { vertex: v });
        }
        let nbrs = self.adj[v];
        for a in iter_bits(nbrs) {
            // toggle every pair of neighbours; `a` itself is not in its own row
            self.adj[a] ^= nbrs & !bit(a);
            self.adj[a] &= !bit(v);
        }
        self.black ^= nbrs;
        self.adj[v] = 0;
        self.black &= !bit(v);
        Ok(())
    }

    /// Presses the vertices of `path` in order. Fails with the position of
    /// the first vertex that is not black when reached.
    pub fn apply_path(&self, path: &[VertexId]) -> Result<BWGraph> {
        let mut g = self.clone();
        for (k, &v) in path.iter().enumerate() {
            if !g.is_black(v) {
                return Err(Error::InvalidPathAt(k));
            }
            g.press_in_place(v)?;
        }
        Ok(g)
    }

    pub fn is_all_white_empty(&self) -> bool {
        self.black == 0 && self.adj.iter().all(|&r| r == 0)
    }

    pub fn classify_components(&self) -> ComponentReport {
        let mut seen = 0u64;
        let mut components = Vec::new();
        for start in 0..self.n {
            if seen & bit(start) != 0 {
                continue;
            }
            let mut block = bit(start);
            let mut frontier = bit(start);
            while frontier != 0 {
                let mut next = 0;
                for v in iter_bits(frontier) {
                    next |= self.adj[v];
                }
                frontier = next & !block;
                block |= next;
            }
            seen |= block;
            components.push(Component {
                vertices: iter_bits(block).collect(),
                trivial: block.count_ones() == 1,
                oriented: block & self.black != 0,
            });
        }
        ComponentReport { components }
    }

    /// True iff no non-trivial component is entirely white, which is exactly
    /// when the all-white empty graph is reachable.
    pub fn is_solvable(&self) -> bool {
        self.classify_components()
            .components
            .iter()
            .all(|c| c.trivial || c.oriented)
    }

    /// Induced subgraph on `keep`, relabelled in ascending order.
    pub fn induced(&self, keep: &[VertexId]) -> BWGraph {
        let mut g = BWGraph {
            n: keep.len(),
            black: 0,
            adj: vec![0; keep.len()],
        };
        for (i, &u) in keep.iter().enumerate() {
            if self.is_black(u) {
                g.black |= bit(i);
            }
            for (j, &v) in keep.iter().enumerate() {
                if self.has_edge(u, v) {
                    g.adj[i] |= bit(j);
                }
            }
        }
        g
    }

    pub fn color_string(&self) -> String {
        self.colors().iter().map(|c| c.as_char()).collect()
    }

    /// Serialises to the line-oriented graph text format.
    pub fn to_text(&self) -> String {
        let mut s = format!("{}\n{}\n", self.n, self.color_string());
        for (u, v) in self.edges() {
            s.push_str(&format!("{u} {v}\n"));
        }
        s
    }

    /// Parses the graph text format: vertex count, colour string, then one
    /// `u v` edge per line. A `linear:BW...` shorthand is also accepted.
    pub fn parse(text: &str) -> Result<BWGraph> {
        let trimmed = text.trim();
        if let Some(colors) = trimmed.strip_prefix("linear:") {
            let colors = parse_colors(colors.trim(), None)?;
            return BWGraph::linear(&colors);
        }

        let mut lines = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.trim()))
            .filter(|(_, l)| !l.is_empty());
        let (ln, first) = lines
            .next()
            .ok_or_else(|| Error::parse(Some(1), "missing vertex count"))?;
        let n: usize = first
            .parse()
            .map_err(|_| Error::parse(Some(ln), format!("bad vertex count `{first}`")))?;
        if n > MAX_VERTICES {
            return Err(Error::TooManyVertices(n));
        }
        let colors = if n == 0 {
            Vec::new()
        } else {
            let (ln, cl) = lines
                .next()
                .ok_or_else(|| Error::parse(Some(ln + 1), "missing colour line"))?;
            let colors = parse_colors(cl, Some(ln))?;
            if colors.len() != n {
                return Err(Error::parse(
                    Some(ln),
                    format!("expected {n} colours, found {}", colors.len()),
                ));
            }
            colors
        };
        let mut g = BWGraph::from_parts(&colors, &[])?;
        for (ln, line) in lines {
            let toks: Vec<&str> = line.split_whitespace().collect();
            if toks.len() != 2 {
                return Err(Error::parse(
                    Some(ln),
                    format!("expected `u v`, got `{line}`"),
                ));
            }
            let parse_v = |t: &str| -> Result<usize> {
                let v: usize = t
                    .parse()
                    .map_err(|_| Error::parse(Some(ln), format!("bad vertex `{t}`")))?;
                if v >= n {
                    return Err(Error::parse(Some(ln), format!("vertex {v} out of range")));
                }
                Ok(v)
            };
            let (u, v) = (parse_v(toks[0])?, parse_v(toks[1])?);
            if u == v {
                return Err(Error::SelfLoop {
                    vertex: u,
                    line: ln,
                });
            }
            if g.has_edge(u, v) {
                return Err(Error::AsymmetricEdge { u, v, line: ln });
            }
            g.add_edge(u, v)?;
        }
        Ok(g)
    }

    /// Graphviz rendering; black vertices are filled.
    pub fn to_dot(&self, name: &str) -> String {
        let mut s = format!("graph {name} {{\n");
        for v in 0..self.n {
            let style = if self.is_black(v) {
                "style=filled, fillcolor=black, fontcolor=white"
            } else {
                "style=filled, fillcolor=white"
            };
            s.push_str(&format!("  {v} [{style}];\n"));
        }
        for (u, v) in self.edges() {
            s.push_str(&format!("  {u} -- {v};\n"));
        }
        s.push_str("}\n");
        s
    }
}

fn parse_colors(s: &str, line: Option<usize>) -> Result<Vec<Color>> {
    s.chars()
        .map(|c| Color::from_char(c).ok_or_else(|| Error::parse(line, format!("bad colour `{c}`"))))
        .collect()
}

impl fmt::Debug for BWGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BWGraph({} {:?})", self.color_string(), self.edges())
    }
}

impl fmt::Display for BWGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let edges: Vec<String> = self
            .edges()
            .iter()
            .map(|(u, v)| format!("{u}-{v}"))
            .collect();
        write!(f, "{} [{}]", self.color_string(), edges.join(" "))
    }
}

impl std::str::FromStr for BWGraph {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        BWGraph::parse(s)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Component {
    pub vertices: Vec<VertexId>,
    pub trivial: bool,
    pub oriented: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ComponentReport {
    pub components: Vec<Component>,
}

impl ComponentReport {
    pub fn non_trivial_unoriented(&self) -> impl Iterator<Item = &Component> {
        self.components.iter().filter(|c| !c.trivial && !c.oriented)
    }
}
