//! Metropolis-Hastings over successful pressing paths.
//!
//! A proposal deletes an unordered pair of positions from the current path
//! and then makes two sequential insertions, each a uniformly chosen
//! (slot, vertex) pair. The candidate is accepted only if it is itself a
//! successful path, with the usual Hastings correction so that the uniform
//! distribution over successful paths is stationary.

use std::collections::BTreeMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::bwgraph::BWGraph;
use crate::error::{Error, Result};
use crate::paths::{enumerate_successful, greedy_solve, is_successful_path, PathSet, PressingPath};

/// Number of `(deletion pair, first insertion, second insertion)` tuples for
/// a path of length `len` over `n` vertex labels.
pub fn proposal_total(len: usize, n: usize) -> u128 {
    let (l, n) = (len as u128, n as u128);
    l * (l - 1) / 2 * (l - 1) * n * l * n
}

/// Number of proposal tuples turning `from` into `to`.
///
/// After a deletion leaves `rest`, the insertion tuples that produce `to`
/// correspond one-to-one with ordered pairs of distinct positions of `to`
/// whose removal yields `rest` (the second insertion lands at its final
/// index; the first one is shifted if it lies past it).
pub fn transition_count(from: &[usize], to: &[usize]) -> u128 {
    let l = from.len();
    if l < 2 || to.len() != l {
        return 0;
    }
    let mut count = 0u128;
    let mut rest = Vec::with_capacity(l - 2);
    for a in 0..l {
        for b in a + 1..l {
            rest.clear();
            rest.extend(
                from.iter()
                    .enumerate()
                    .filter(|&(i, _)| i != a && i != b)
                    .map(|(_, &v)| v),
            );
            for c in 0..l {
                for d in c + 1..l {
                    let matches = to
                        .iter()
                        .enumerate()
                        .filter(|&(i, _)| i != c && i != d)
                        .map(|(_, &v)| v)
                        .eq(rest.iter().copied());
                    if matches {
                        count += 2;
                    }
                }
            }
        }
    }
    count
}

#[derive(Debug, Clone, PartialEq)]
pub struct Proposal {
    pub candidate: PressingPath,
    pub forward_count: u128,
    pub reverse_count: u128,
    pub total: u128,
}

impl Proposal {
    /// `q(current -> candidate)`
    pub fn forward(&self) -> f64 {
        self.forward_count as f64 / self.total as f64
    }

    /// `q(candidate -> current)`
    pub fn reverse(&self) -> f64 {
        self.reverse_count as f64 / self.total as f64
    }
}

#[derive(Debug, Clone)]
pub struct ChainState {
    graph: BWGraph,
    current: PressingPath,
    step_count: u64,
    accept_count: u64,
    seed: u64,
    rng: ChaCha8Rng,
}

impl ChainState {
    /// Starts at `start`, which must be a successful path of `graph`.
    pub fn new(graph: BWGraph, start: PressingPath, seed: u64) -> Result<Self> {
        if !is_successful_path(&graph, &start) {
            return Err(Error::InvalidPathAt(0));
        }
        Ok(ChainState {
            graph,
            current: start,
            step_count: 0,
            accept_count: 0,
            seed,
            rng: ChaCha8Rng::seed_from_u64(seed),
        })
    }

    pub fn from_greedy(graph: BWGraph, seed: u64) -> Result<Self> {
        let start = greedy_solve(&graph)?;
        Self::new(graph, start, seed)
    }

    pub fn graph(&self) -> &BWGraph {
        &self.graph
    }

    pub fn current(&self) -> &PressingPath {
        &self.current
    }

    pub fn step_count(&self) -> u64 {
        self.step_count
    }

    pub fn accept_count(&self) -> u64 {
        self.accept_count
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    fn draw_candidate(&mut self) -> Result<PressingPath> {
        let l = self.current.len();
        if l < 2 {
            return Err(Error::PathTooShort(l));
        }
        let n = self.graph.n();
        let mut pair = self.rng.gen_range(0..l * (l - 1) / 2);
        let mut a = 0;
        while pair >= l - 1 - a {
            pair -= l - 1 - a;
            a += 1;
        }
        let b = a + 1 + pair;
        let mut seq: Vec<usize> = self
            .current
            .as_slice()
            .iter()
            .enumerate()
            .filter(|&(i, _)| i != a && i != b)
            .map(|(_, &v)| v)
            .collect();
        let slot = self.rng.gen_range(0..l - 1);
        let label = self.rng.gen_range(0..n);
        seq.insert(slot, label);
        let slot = self.rng.gen_range(0..l);
        let label = self.rng.gen_range(0..n);
        seq.insert(slot, label);
        Ok(PressingPath(seq))
    }

    /// Draws a candidate and computes both proposal probabilities exactly.
    pub fn propose(&mut self) -> Result<Proposal> {
        let candidate = self.draw_candidate()?;
        let (from, to) = (self.current.as_slice(), candidate.as_slice());
        Ok(Proposal {
            forward_count: transition_count(from, to),
            reverse_count: transition_count(to, from),
            total: proposal_total(from.len(), self.graph.n()),
            candidate,
        })
    }

    /// One Metropolis-Hastings step. Paths shorter than two make the chain a
    /// single fixed state.
    pub fn step(&mut self) {
        self.step_count += 1;
        if self.current.len() < 2 {
            self.accept_count += 1;
            return;
        }
        let candidate = self.draw_candidate().expect("length checked");
        let u: f64 = self.rng.gen();
        if !is_successful_path(&self.graph, &candidate) {
            return;
        }
        let fwd = transition_count(self.current.as_slice(), candidate.as_slice());
        let rev = transition_count(candidate.as_slice(), self.current.as_slice());
        if rev >= fwd || u < rev as f64 / fwd as f64 {
            self.current = candidate;
            self.accept_count += 1;
        }
    }
}

pub fn propose(s: &mut ChainState) -> Result<Proposal> {
    s.propose()
}

pub fn mh_step(mut s: ChainState) -> ChainState {
    s.step();
    s
}

/// Total variation distance between the empirical histogram and the uniform
/// distribution on `ps`. Histogram keys outside `ps` count with target mass 0.
pub fn tv_distance(hist: &BTreeMap<String, u64>, ps: &PathSet) -> Result<f64> {
    if ps.is_empty() {
        return Err(Error::EmptyPathSet);
    }
    let total: u64 = hist.values().sum();
    let uniform = 1.0 / ps.len() as f64;
    let freq = |k: &str| {
        if total == 0 {
            0.0
        } else {
            hist.get(k).copied().unwrap_or(0) as f64 / total as f64
        }
    };
    let mut sum = 0.0;
    let mut inside = 0u64;
    for p in ps.paths() {
        let key = p.to_string();
        inside += hist.get(&key).copied().unwrap_or(0);
        sum += (freq(&key) - uniform).abs();
    }
    if total > 0 {
        sum += (total - inside) as f64 / total as f64;
    }
    Ok(sum / 2.0)
}

#[derive(Debug, Clone, Serialize, PartialEq)]
pub struct ChainReport {
    pub seed: u64,
    pub steps: u64,
    pub burn_in: u64,
    pub samples: u64,
    pub acceptance_rate: f64,
    pub histogram: BTreeMap<String, u64>,
    pub path_count: Option<usize>,
    pub tv_distance: Option<f64>,
}

pub fn run_chain(
    g: &BWGraph,
    steps: u64,
    burn_in: u64,
    seed: u64,
    cap: usize,
) -> Result<ChainReport> {
    if steps <= burn_in {
        return Err(Error::parse(
            None,
            format!("steps ({steps}) must exceed burn-in ({burn_in})"),
        ));
    }
    let mut state = ChainState::from_greedy(g.clone(), seed)?;
    let mut histogram = BTreeMap::new();
    for t in 0..steps {
        state.step();
        if t >= burn_in {
            *histogram.entry(state.current().to_string()).or_insert(0) += 1;
        }
    }
    let (path_count, tv) = match enumerate_successful(g, cap) {
        Ok(ps) => (Some(ps.len()), Some(tv_distance(&histogram, &ps)?)),
        Err(Error::CapExceeded { .. }) => (None, None),
        Err(e) => return Err(e),
    };
    Ok(ChainReport {
        seed,
        steps,
        burn_in,
        samples: steps - burn_in,
        acceptance_rate: state.accept_count() as f64 / state.step_count() as f64,
        histogram,
        path_count,
        tv_distance: tv,
    })
}

/// Exact transition kernel over an enumerated path set. Entry `(i, j)` of
/// `numer` divided by `total` is the probability of moving from path `i`
/// to path `j`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExactKernel {
    pub total: u128,
    pub numer: Vec<Vec<u128>>,
}

impl ExactKernel {
    pub fn new(ps: &PathSet) -> Self {
        let m = ps.len();
        let l = ps.common_length();
        if l < 2 {
            return ExactKernel {
                total: 1,
                numer: vec![vec![1; m]; m],
            };
        }
        let total = proposal_total(l, ps.graph().n());
        let paths = ps.paths();
        let mut numer = vec![vec![0u128; m]; m];
        for i in 0..m {
            for j in 0..m {
                if i != j {
                    let fwd = transition_count(paths[i].as_slice(), paths[j].as_slice());
                    let rev = transition_count(paths[j].as_slice(), paths[i].as_slice());
                    // q(P->Q) * min(1, q(Q->P)/q(P->Q)) = min(q(P->Q), q(Q->P))
                    numer[i][j] = fwd.min(rev);
                }
            }
            let off: u128 = numer[i].iter().sum();
            numer[i][i] = total - off;
        }
        ExactKernel { total, numer }
    }

    pub fn probability(&self, i: usize, j: usize) -> f64 {
        self.numer[i][j] as f64 / self.total as f64
    }

    /// Largest `|T(i,j) - T(j,i)|` under the uniform distribution.
    pub fn max_balance_defect(&self) -> f64 {
        let m = self.numer.len();
        let mut worst = 0.0f64;
        for i in 0..m {
            for j in 0..m {
                worst = worst.max((self.probability(i, j) - self.probability(j, i)).abs());
            }
        }
        worst
    }

    pub fn is_exactly_balanced(&self) -> bool {
        let m = self.numer.len();
        (0..m).all(|i| (0..m).all(|j| self.numer[i][j] == self.numer[j][i]))
    }

    /// Every path reaches every other path through nonzero transitions.
    pub fn is_irreducible(&self) -> bool {
        let m = self.numer.len();
        let reach = |forward: bool| {
            let mut seen = vec![false; m];
            let mut stack = vec![0];
            seen[0] = true;
            while let Some(i) = stack.pop() {
                for (j, was_seen) in seen.iter_mut().enumerate() {
                    let nz = if forward {
                        self.numer[i][j]
                    } else {
                        self.numer[j][i]
                    };
                    if nz > 0 && !*was_seen {
                        *was_seen = true;
                        stack.push(j);
                    }
                }
            }
            seen.into_iter().all(|s| s)
        };
        m == 0 || (reach(true) && reach(false))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::paths::DEFAULT_CAP;

    fn lin(s: &str) -> BWGraph {
        BWGraph::parse(&format!("linear:{s}")).unwrap()
    }

    /// Enumerates every proposal tuple literally.
    fn brute_count(from: &[usize], to: &[usize], n: usize) -> u128 {
        let l = from.len();
        let mut count = 0;
        for a in 0..l {
            for b in a + 1..l {
                let rest: Vec<usize> = (0..l)
                    .filter(|&i| i != a && i != b)
                    .map(|i| from[i])
                    .collect();
                for s1 in 0..l - 1 {
                    for x1 in 0..n {
                        let mut one = rest.clone();
                        one.insert(s1, x1);
                        for s2 in 0..l {
                            for x2 in 0..n {
                                let mut two = one.clone();
                                two.insert(s2, x2);
                                if two == to {
                                    count += 1;
                                }
                            }
                        }
                    }
                }
            }
        }
        count
    }

    #[test]
    fn transition_count_matches_brute_force() {
        let cases: &[(&[usize], &[usize], usize)] = &[
            (&[0, 2, 1], &[2, 0, 1], 3),
            (&[0, 2, 1], &[0, 2, 1], 3),
            (&[1, 0], &[0, 1], 3),
            (&[1, 0], &[1, 2], 3),
            (&[0, 1, 2, 3], &[3, 1, 0, 2], 4),
            (&[0, 1, 1, 3], &[1, 0, 3, 1], 4),
            (&[0, 1, 2, 3, 4], &[4, 3, 2, 1, 0], 5),
            (&[0, 1, 2, 3, 4], &[0, 4, 2, 3, 1], 5),
        ];
        for &(p, q, n) in cases {
            assert_eq!(
                transition_count(p, q),
                brute_count(p, q, n),
                "{p:?} -> {q:?}"
            );
        }
        let total: u128 = 3 * 2 * 3 * 3 * 3;
        assert_eq!(proposal_total(3, 3), total);
    }

    #[test]
    fn proposal_probabilities() {
        assert!(transition_count(&[0, 2, 1], &[2, 0, 1]) > 0);
        assert!(transition_count(&[0, 2, 1], &[0, 2, 1]) > 0);
        assert!(transition_count(&[1, 0], &[0, 1]) > 0);
        assert!(!is_successful_path(&lin("WBW"), &PressingPath(vec![0, 1])));

        let mut s = ChainState::from_greedy(lin("BBB"), 7).unwrap();
        for _ in 0..50 {
            let p = s.propose().unwrap();
            assert_eq!(p.candidate.len(), 3);
            assert!(p.forward_count > 0 && p.forward() <= 1.0);
            assert_eq!(p.forward_count, p.reverse_count);
        }
    }

    #[test]
    fn short_paths_cannot_propose() {
        let mut s = ChainState::from_greedy(lin("B"), 0).unwrap();
        assert_eq!(s.propose(), Err(Error::PathTooShort(1)));
        let s = mh_step(s);
        assert_eq!(s.current(), &PressingPath(vec![0]));
        assert_eq!(s.step_count(), 1);
    }

    #[test]
    fn steps_keep_state_valid() {
        let g = lin("BBWBB");
        let mut s = ChainState::from_greedy(g.clone(), 3).unwrap();
        for _ in 0..2000 {
            s.step();
            assert!(is_successful_path(&g, s.current()));
        }
        assert_eq!(s.step_count(), 2000);
        assert!(s.accept_count() <= 2000);
    }

    #[test]
    fn chain_reaches_other_path() {
        let g = lin("BBB");
        let mut s = ChainState::new(g, PressingPath(vec![0, 2, 1]), 11).unwrap();
        let mut steps = 0;
        while s.current().as_slice() != [2, 0, 1] {
            s.step();
            steps += 1;
            assert!(steps < 100_000);
        }
    }

    #[test]
    fn tv_examples() {
        let ps = enumerate_successful(&lin("WBW"), DEFAULT_CAP).unwrap();
        let mut h = BTreeMap::new();
        h.insert("1 0".to_string(), 5);
        h.insert("1 2".to_string(), 5);
        assert_eq!(tv_distance(&h, &ps), Ok(0.0));
        h.remove("1 2");
        assert_eq!(tv_distance(&h, &ps), Ok(0.5));

        // black edge plus an isolated black vertex: 2 choices times 2 orders
        let g = BWGraph::parse("3\nBBB\n0 1\n").unwrap();
        let ps4 = enumerate_successful(&g, DEFAULT_CAP).unwrap();
        assert_eq!(ps4.len(), 4);
        let mut point = BTreeMap::new();
        point.insert(ps4.paths()[0].to_string(), 10);
        assert!((tv_distance(&point, &ps4).unwrap() - 0.75).abs() < 1e-15);
    }

    #[test]
    fn run_chain_examples() {
        let r = run_chain(&lin("WBW"), 10_000, 1_000, 0, DEFAULT_CAP).unwrap();
        let keys: Vec<_> = r.histogram.keys().cloned().collect();
        assert_eq!(keys, vec!["1 0".to_string(), "1 2".to_string()]);
        assert_eq!(r.histogram.values().sum::<u64>(), r.samples);

        let r = run_chain(&lin("B"), 100, 10, 0, DEFAULT_CAP).unwrap();
        assert_eq!(r.histogram.len(), 1);
        assert_eq!(r.tv_distance, Some(0.0));

        assert_eq!(
            run_chain(&lin("WW"), 100, 10, 0, DEFAULT_CAP),
            Err(Error::Unsolvable)
        );
        assert!(run_chain(&lin("B"), 10, 10, 0, DEFAULT_CAP).is_err());
    }

    #[test]
    fn run_chain_is_reproducible() {
        let g = lin("BWBB");
        let a = run_chain(&g, 5_000, 500, 42, DEFAULT_CAP).unwrap();
        let b = run_chain(&g, 5_000, 500, 42, DEFAULT_CAP).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn kernel_on_three_path() {
        let ps = enumerate_successful(&lin("BBB"), DEFAULT_CAP).unwrap();
        let k = ExactKernel::new(&ps);
        assert!(k.is_exactly_balanced());
        assert!(k.is_irreducible());
        for row in &k.numer {
            assert_eq!(row.iter().sum::<u128>(), k.total);
        }
    }
}
