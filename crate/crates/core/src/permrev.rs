//! Signed permutations, reversals and the desire/reality construction.
//!
//! A signed permutation of length `n` is doubled into an unsigned sequence
//! framed by `0` and `2n + 1`: `+i` becomes `2i-1, 2i` and `-i` becomes
//! `2i, 2i-1`. Positions in that sequence are 1-indexed. Reality edges join
//! positions `2i-1, 2i`; desire edge `k` joins labels `2k` and `2k+1`.
//! The overlap graph has one vertex per desire edge, black when the edge
//! spans an odd number of positions and adjacent when two spans cross.

use std::fmt;
use std::str::FromStr;

use crate::bwgraph::{BWGraph, Color};
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SignedPermutation {
    elems: Vec<i32>,
}

impl SignedPermutation {
    pub fn new(elems: Vec<i32>) -> Result<Self> {
        let n = elems.len();
        let mut seen = vec![false; n + 1];
        for &e in &elems {
            let m = e.unsigned_abs() as usize;
            if m == 0 || m > n {
                return Err(Error::NotAPermutation(format!(
                    "magnitude {m} outside 1..={n}"
                )));
            }
            if std::mem::replace(&mut seen[m], true) {
                return Err(Error::NotAPermutation(format!("{m} appears twice")));
            }
        }
        Ok(SignedPermutation { elems })
    }

    pub fn identity(n: usize) -> Self {
        SignedPermutation {
            elems: (1..=n as i32).collect(),
        }
    }

    pub fn len(&self) -> usize {
        self.elems.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elems.is_empty()
    }

    pub fn is_identity(&self) -> bool {
        self.elems
            .iter()
            .enumerate()
            .all(|(i, &e)| e == i as i32 + 1)
    }

    pub fn elems(&self) -> &[i32] {
        &self.elems
    }

    /// Reverses elements `i..=j` (0-indexed) and flips their signs.
    pub fn apply_reversal(&self, i: usize, j: usize) -> Result<Self> {
        let n = self.len();
        if j >= n {
            return Err(Error::IndexOutOfRange { index: j, len: n });
        }
        if i > j {
            return Err(Error::IndexOutOfRange {
                index: i,
                len: j + 1,
            });
        }
        let mut elems = self.elems.clone();
        elems[i..=j].reverse();
        for e in &mut elems[i..=j] {
            *e = -*e;
        }
        Ok(SignedPermutation { elems })
    }

    pub fn desire_reality(&self) -> DesireRealityGraph {
        DesireRealityGraph::new(self)
    }

    pub fn overlap_graph(&self) -> BWGraph {
        self.desire_reality().overlap_graph()
    }

    /// `n + 1 - c` where `c` counts desire/reality cycles. Valid only when the
    /// overlap graph has no non-trivial unoriented component, so that no
    /// hurdle or fortress term contributes.
    pub fn reversal_distance_hurdle_free(&self) -> Result<usize> {
        let dr = self.desire_reality();
        if !dr.overlap_graph().is_solvable() {
            return Err(Error::HurdleRiskPresent);
        }
        Ok(self.len() + 1 - dr.cycle_count())
    }

    /// The reversal cutting the two reality edges incident to desire edge
    /// `k`. It exists as a sorting move only when edge `k` is oriented, in
    /// which case the edge's endpoints become adjacent afterwards.
    pub fn reversal_on_desire_edge(&self, k: usize) -> Result<Self> {
        let (i, j) = self.desire_edge_reversal(k)?;
        let next = self.apply_reversal(i, j)?;
        let span = next.desire_reality().desire_edge_span(k)?;
        if span.hi - span.lo != 1 {
            return Err(Error::EdgeNotOriented(k));
        }
        Ok(next)
    }

    /// Element range `(i, j)` (0-indexed, inclusive) delimited by the reality
    /// edges at the two ends of desire edge `k`.
    pub fn desire_edge_reversal(&self, k: usize) -> Result<(usize, usize)> {
        let dr = self.desire_reality();
        let span = dr.desire_edge_span(k)?;
        // reality edge r covers positions 2r-1, 2r and sits in front of element r
        let first = span.lo.div_ceil(2);
        let second = span.hi.div_ceil(2);
        if first == second {
            return Err(Error::EdgeNotOriented(k));
        }
        Ok((first - 1, second - 2))
    }
}

impl FromStr for SignedPermutation {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let elems = s
            .split_whitespace()
            .map(|tok| {
                let (sign, digits) = match tok.as_bytes().first() {
                    Some(b'+') => (1, &tok[1..]),
                    Some(b'-') => (-1, &tok[1..]),
                    _ => {
                        return Err(Error::parse(
                            None,
                            format!("token `{tok}` lacks an explicit sign"),
                        ))
                    }
                };
                if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
                    return Err(Error::parse(None, format!("bad token `{tok}`")));
                }
                let m: i32 = digits
                    .parse()
                    .map_err(|_| Error::parse(None, format!("bad token `{tok}`")))?;
                Ok(sign * m)
            })
            .collect::<Result<Vec<_>>>()?;
        SignedPermutation::new(elems)
    }
}

impl fmt::Display for SignedPermutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let toks: Vec<String> = self.elems.iter().map(|e| format!("{e:+}")).collect();
        f.write_str(&toks.join(" "))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Interval {
    pub lo: usize,
    pub hi: usize,
}

impl Interval {
    /// Number of positions strictly inside the span.
    pub fn covered(&self) -> usize {
        self.hi - self.lo - 1
    }

    pub fn crosses(&self, other: &Interval) -> bool {
        (self.lo < other.lo && other.lo < self.hi && self.hi < other.hi)
            || (other.lo < self.lo && self.lo < other.hi && other.hi < self.hi)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DesireRealityGraph {
    seq: Vec<usize>,
    /// `pos[label]` is the 1-indexed position of `label`.
    pos: Vec<usize>,
}

impl DesireRealityGraph {
    pub fn new(p: &SignedPermutation) -> Self {
        let n = p.len();
        let mut seq = Vec::with_capacity(2 * n + 2);
        seq.push(0);
        for &e in p.elems() {
            let i = e.unsigned_abs() as usize;
            if e > 0 {
                seq.extend([2 * i - 1, 2 * i]);
            } else {
                seq.extend([2 * i, 2 * i - 1]);
            }
        }
        seq.push(2 * n + 1);
        let mut pos = vec![0; seq.len()];
        for (i, &l) in seq.iter().enumerate() {
            pos[l] = i + 1;
        }
        DesireRealityGraph { seq, pos }
    }

    /// Number of signed elements.
    pub fn n(&self) -> usize {
        self.seq.len() / 2 - 1
    }

    pub fn seq(&self) -> &[usize] {
        &self.seq
    }

    pub fn position(&self, label: usize) -> usize {
        self.pos[label]
    }

    /// Reads the signed permutation back out of the doubled sequence.
    pub fn to_permutation(&self) -> SignedPermutation {
        let elems = self.seq[1..self.seq.len() - 1]
            .chunks(2)
            .map(|pair| {
                let m = pair[0].max(pair[1]) as i32 / 2;
                if pair[0] < pair[1] {
                    m
                } else {
                    -m
                }
            })
            .collect();
        SignedPermutation { elems }
    }

    pub fn desire_edge_span(&self, k: usize) -> Result<Interval> {
        let n = self.n();
        if k > n {
            return Err(Error::IndexOutOfRange {
                index: k,
                len: n + 1,
            });
        }
        let (a, b) = (self.pos[2 * k], self.pos[2 * k + 1]);
        Ok(Interval {
            lo: a.min(b),
            hi: a.max(b),
        })
    }

    fn spans(&self) -> Vec<Interval> {
        (0..=self.n())
            .map(|k| {
                let (a, b) = (self.pos[2 * k], self.pos[2 * k + 1]);
                Interval {
                    lo: a.min(b),
                    hi: a.max(b),
                }
            })
            .collect()
    }

    pub fn overlap_graph(&self) -> BWGraph {
        let spans = self.spans();
        let colors: Vec<Color> = spans
            .iter()
            .map(|s| {
                if s.covered() % 2 == 1 {
                    Color::Black
                } else {
                    Color::White
                }
            })
            .collect();
        let mut edges = Vec::new();
        for (j, a) in spans.iter().enumerate() {
            for (k, b) in spans.iter().enumerate().skip(j + 1) {
                if a.crosses(b) {
                    edges.push((j, k));
                }
            }
        }
        BWGraph::from_parts(&colors, &edges).expect("overlap graph exceeds vertex limit")
    }

    /// Cycles of the 2-regular graph formed by all reality and desire edges.
    pub fn cycle_count(&self) -> usize {
        let len = self.seq.len();
        let mut seen = vec![false; len + 1];
        let mut cycles = 0;
        for start in 1..=len {
            if seen[start] {
                continue;
            }
            cycles += 1;
            let mut p = start;
            loop {
                seen[p] = true;
                // reality partner
                let q = if p % 2 == 1 { p + 1 } else { p - 1 };
                seen[q] = true;
                // desire partner of the label at q
                let label = self.seq[q - 1];
                p = self.pos[label ^ 1];
                if p == start {
                    break;
                }
            }
        }
        cycles
    }
}
