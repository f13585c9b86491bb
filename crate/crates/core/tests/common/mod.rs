#![allow(dead_code)]

use std::collections::{HashMap, VecDeque};

use pressing_game::{BWGraph, Color, SignedPermutation};
use rand::Rng;

/// Every signed permutation of length `n`.
pub fn all_signed_perms(n: usize) -> Vec<SignedPermutation> {
    let mut unsigned = Vec::new();
    let mut cur: Vec<i32> = (1..=n as i32).collect();
    permute(&mut cur, 0, &mut unsigned);
    let mut out = Vec::new();
    for p in unsigned {
        for signs in 0u32..(1 << n) {
            let elems = p
                .iter()
                .enumerate()
                .map(|(i, &e)| if signs >> i & 1 == 1 { -e } else { e })
                .collect();
            out.push(SignedPermutation::new(elems).unwrap());
        }
    }
    out
}

fn permute(v: &mut Vec<i32>, k: usize, out: &mut Vec<Vec<i32>>) {
    if k == v.len() {
        out.push(v.clone());
        return;
    }
    for i in k..v.len() {
        v.swap(k, i);
        permute(v, k + 1, out);
        v.swap(k, i);
    }
}

pub fn random_signed_perm(n: usize, rng: &mut impl Rng) -> SignedPermutation {
    let mut elems: Vec<i32> = (1..=n as i32).collect();
    for i in (1..n).rev() {
        let j = rng.gen_range(0..=i);
        elems.swap(i, j);
    }
    for e in &mut elems {
        if rng.gen::<bool>() {
            *e = -*e;
        }
    }
    SignedPermutation::new(elems).unwrap()
}

/// Reversal distance of every signed permutation of length `n`, by
/// breadth-first search from the identity over all `n(n+1)/2` reversals.
pub fn bfs_reversal_distances(n: usize) -> HashMap<Vec<i32>, usize> {
    let start: Vec<i32> = (1..=n as i32).collect();
    let mut dist = HashMap::new();
    dist.insert(start.clone(), 0);
    let mut queue = VecDeque::from([start]);
    while let Some(p) = queue.pop_front() {
        let d = dist[&p];
        for i in 0..n {
            for j in i..n {
                let mut q = p.clone();
                q[i..=j].reverse();
                for e in &mut q[i..=j] {
                    *e = -*e;
                }
                if !dist.contains_key(&q) {
                    dist.insert(q.clone(), d + 1);
                    queue.push_back(q);
                }
            }
        }
    }
    dist
}

/// Overlap graph computed directly from the doubled sequence: spans found
/// by linear search, black iff an odd number of entries lie strictly
/// between the endpoints, adjacent iff exactly one endpoint of one span
/// lies strictly inside the other.
pub fn overlap_reference(p: &SignedPermutation) -> (Vec<Color>, Vec<(usize, usize)>) {
    let n = p.len();
    let mut seq = vec![0usize];
    for &e in p.elems() {
        let m = e.unsigned_abs() as usize;
        if e > 0 {
            seq.push(2 * m - 1);
            seq.push(2 * m);
        } else {
            seq.push(2 * m);
            seq.push(2 * m - 1);
        }
    }
    seq.push(2 * n + 1);
    let at = |label: usize| seq.iter().position(|&x| x == label).unwrap();
    let spans: Vec<(usize, usize)> = (0..=n)
        .map(|k| {
            let (a, b) = (at(2 * k), at(2 * k + 1));
            (a.min(b), a.max(b))
        })
        .collect();
    let colors = spans
        .iter()
        .map(|&(lo, hi)| {
            if (lo + 1..hi).count() % 2 == 1 {
                Color::Black
            } else {
                Color::White
            }
        })
        .collect();
    let inside = |x: usize, (lo, hi): (usize, usize)| lo < x && x < hi;
    let mut edges = Vec::new();
    for j in 0..=n {
        for k in j + 1..=n {
            let (a, b) = (spans[j], spans[k]);
            let ends_in = [inside(b.0, a), inside(b.1, a)];
            if ends_in[0] != ends_in[1] {
                edges.push((j, k));
            }
        }
    }
    (colors, edges)
}

pub fn colors_from_mask(n: usize, mask: u64) -> Vec<Color> {
    (0..n)
        .map(|i| {
            if mask >> i & 1 == 1 {
                Color::Black
            } else {
                Color::White
            }
        })
        .collect()
}

/// Every labelled graph on `n` vertices with every colouring.
pub fn all_graphs(n: usize) -> Vec<BWGraph> {
    let pairs: Vec<(usize, usize)> = (0..n)
        .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
        .collect();
    let mut out = Vec::new();
    for emask in 0u64..(1 << pairs.len()) {
        let edges: Vec<_> = pairs
            .iter()
            .enumerate()
            .filter(|(i, _)| emask >> i & 1 == 1)
            .map(|(_, &e)| e)
            .collect();
        for cmask in 0u64..(1 << n) {
            out.push(BWGraph::from_parts(&colors_from_mask(n, cmask), &edges).unwrap());
        }
    }
    out
}

pub fn random_graph(n: usize, rng: &mut impl Rng) -> BWGraph {
    let colors: Vec<Color> = (0..n)
        .map(|_| {
            if rng.gen::<bool>() {
                Color::Black
            } else {
                Color::White
            }
        })
        .collect();
    let p: f64 = rng.gen_range(0.15..0.85);
    let mut edges = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            if rng.gen::<f64>() < p {
                edges.push((u, v));
            }
        }
    }
    BWGraph::from_parts(&colors, &edges).unwrap()
}

/// Successful pressing paths by unpruned search over every black vertex.
pub fn brute_force_paths(g: &BWGraph) -> Vec<Vec<usize>> {
    fn go(g: &BWGraph, prefix: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if g.is_all_white_empty() {
            out.push(prefix.clone());
            return;
        }
        for v in 0..g.n() {
            if g.is_black(v) {
                prefix.push(v);
                go(&g.press(v).unwrap(), prefix, out);
                prefix.pop();
            }
        }
    }
    let mut out = Vec::new();
    go(g, &mut Vec::new(), &mut out);
    out.sort();
    out
}

/// Plain reference for connected components by repeated BFS on `has_edge`.
pub fn reference_components(g: &BWGraph) -> Vec<Vec<usize>> {
    let n = g.n();
    let mut comp = vec![usize::MAX; n];
    let mut blocks = Vec::new();
    for s in 0..n {
        if comp[s] != usize::MAX {
            continue;
        }
        let id = blocks.len();
        let mut block = vec![s];
        comp[s] = id;
        let mut i = 0;
        while i < block.len() {
            let u = block[i];
            for (v, c) in comp.iter_mut().enumerate() {
                if g.has_edge(u, v) && *c == usize::MAX {
                    *c = id;
                    block.push(v);
                }
            }
            i += 1;
        }
        block.sort();
        blocks.push(block);
    }
    blocks
}
