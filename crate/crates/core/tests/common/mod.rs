//! Brute-force oracles over plain bitmasks, written from the definitions and
//! independent of the library algorithms, plus seeded instance generators.

#![allow(dead_code)]

use std::collections::HashSet;

use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::ChaCha8Rng;
use ridgechord::{Face, SimplicialComplex};

pub const SEED: u64 = 0x5eed_2024;
pub const INSTANCES: usize = 200;

pub fn rng(stream: u64) -> ChaCha8Rng {
    use rand::SeedableRng;
    ChaCha8Rng::seed_from_u64(SEED ^ stream.wrapping_mul(0x9e37_79b9_7f4a_7c15))
}

pub fn popcount(m: u64) -> usize {
    m.count_ones() as usize
}

pub fn subset(a: u64, b: u64) -> bool {
    a & !b == 0
}

pub fn full(n: usize) -> u64 {
    if n == 64 { u64::MAX } else { (1u64 << n) - 1 }
}

/// Facet bitmasks in numeric order.
pub fn masks(cx: &SimplicialComplex) -> Vec<u64> {
    sorted(cx.facets().iter().map(|f| f.bits()).collect())
}

pub fn to_complex(n: usize, facets: &[u64]) -> SimplicialComplex {
    SimplicialComplex::from_faces(facets.iter().map(|&m| Face::from_bits(m)).collect(), n).unwrap()
}

/// Inclusion-maximal members, sorted numerically.
pub fn maximal(sets: &[u64]) -> Vec<u64> {
    let mut out: Vec<u64> = sets
        .iter()
        .copied()
        .filter(|&s| !sets.iter().any(|&t| t != s && subset(s, t)))
        .collect();
    out.sort_unstable();
    out.dedup();
    out
}

pub fn sorted(mut v: Vec<u64>) -> Vec<u64> {
    v.sort_unstable();
    v.dedup();
    v
}

/// Every subset of every facet.
pub fn all_faces(facets: &[u64]) -> HashSet<u64> {
    let mut out = HashSet::new();
    for &f in facets {
        let mut s = f;
        loop {
            out.insert(s);
            if s == 0 {
                break;
            }
            s = (s - 1) & f;
        }
    }
    out
}

/// Facets of `{[n] ∖ S : S not a face}`.
pub fn brute_dual(n: usize, facets: &[u64]) -> Vec<u64> {
    let faces = all_faces(facets);
    let dual: Vec<u64> = (0..=full(n)).filter(|s| !faces.contains(s)).map(|s| full(n) & !s).collect();
    maximal(&dual)
}

/// All `(d+1)`-subsets of `v` are facets.
pub fn brute_is_clique(facets: &HashSet<u64>, width: usize, v: u64) -> bool {
    (0..=v).filter(|&s| subset(s, v) && popcount(s) == width).all(|s| facets.contains(&s))
}

/// Facets of the clique complex over `{1..n}` of a pure complex with facets of size `width`.
pub fn brute_clique_complex(n: usize, facets: &[u64], width: usize) -> Vec<u64> {
    let set: HashSet<u64> = facets.iter().copied().collect();
    let cliques: Vec<u64> = (0..=full(n)).filter(|&v| brute_is_clique(&set, width, v)).collect();
    maximal(&cliques)
}

/// `r` is a ridge whose star's vertex set is a clique.
pub fn brute_simplicial_ridge(facets: &[u64], width: usize, r: u64) -> bool {
    let set: HashSet<u64> = facets.iter().copied().collect();
    let star = facets.iter().filter(|&&f| subset(r, f)).fold(0, |a, &f| a | f);
    brute_is_clique(&set, width, star)
}

/// `r` is strictly contained in exactly one facet.
pub fn brute_free(facets: &[u64], r: u64) -> bool {
    facets.iter().filter(|&&f| subset(r, f) && f != r).count() == 1 && !facets.contains(&r)
}

/// Graph on `{1..n}` has no induced cycle of length at least four.
pub fn brute_graph_chordal(n: usize, edges: &[u64]) -> bool {
    let adj = |a: usize, b: usize| edges.contains(&((1u64 << a) | (1u64 << b)));
    for s in 0..=full(n) {
        let vs: Vec<usize> = (0..n).filter(|&i| s >> i & 1 == 1).collect();
        if vs.len() < 4 {
            continue;
        }
        let degree_two = vs.iter().all(|&a| vs.iter().filter(|&&b| b != a && adj(a, b)).count() == 2);
        if !degree_two {
            continue;
        }
        // 2-regular and connected means one induced cycle
        let mut seen = 1u64 << vs[0];
        let mut frontier = vec![vs[0]];
        while let Some(a) = frontier.pop() {
            for &b in &vs {
                if seen >> b & 1 == 0 && adj(a, b) {
                    seen |= 1 << b;
                    frontier.push(b);
                }
            }
        }
        if seen == s {
            return false;
        }
    }
    true
}

/// Literal shelling condition: each facet meets the union of its
/// predecessors in a pure complex of codimension one.
pub fn literal_shelling(order: &[u64]) -> bool {
    let distinct: HashSet<u64> = order.iter().copied().collect();
    if distinct.len() != order.len() {
        return false;
    }
    (1..order.len()).all(|j| extends(&order[..j], order[j]))
}

fn extends(prefix: &[u64], f: u64) -> bool {
    let meets: Vec<u64> = prefix.iter().map(|&g| g & f).collect();
    let width = popcount(f);
    maximal(&meets).iter().all(|&m| popcount(m) + 1 == width)
}

/// Tries every order, pruning on the first violation.
pub fn brute_shellable(facets: &[u64]) -> bool {
    fn go(prefix: &mut Vec<u64>, rest: &mut Vec<u64>) -> bool {
        if rest.is_empty() {
            return true;
        }
        for i in 0..rest.len() {
            let f = rest[i];
            if prefix.is_empty() || extends(prefix, f) {
                rest.swap_remove(i);
                prefix.push(f);
                let ok = go(prefix, rest);
                prefix.pop();
                rest.push(f);
                let last = rest.len() - 1;
                rest.swap(i, last);
                if ok {
                    return true;
                }
            }
        }
        false
    }
    go(&mut Vec::new(), &mut facets.to_vec())
}

/// Random subset of `{1..n}` (as bit positions `0..n`) of size `size`.
pub fn random_subset(rng: &mut ChaCha8Rng, n: usize, size: usize) -> u64 {
    let mut idx: Vec<usize> = (0..n).collect();
    idx.shuffle(rng);
    idx[..size].iter().fold(0, |m, &i| m | 1 << i)
}

/// `m` distinct `(d+1)`-subsets of `{1..n}`.
pub fn random_pure(rng: &mut ChaCha8Rng, n: usize, d: usize, m: usize) -> Vec<u64> {
    let mut out = HashSet::new();
    let total = binomial(n, d + 1);
    let m = m.min(total).max(1);
    while out.len() < m {
        out.insert(random_subset(rng, n, d + 1));
    }
    sorted(out.into_iter().collect())
}

/// An arbitrary antichain on `{1..n}`.
pub fn random_antichain(rng: &mut ChaCha8Rng, n: usize) -> Vec<u64> {
    let count = rng.gen_range(1..=6);
    let sets: Vec<u64> = (0..count).map(|_| {
        let size = rng.gen_range(0..=n);
        random_subset(rng, n, size)
    }).collect();
    maximal(&sets)
}

pub fn binomial(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

/// Facets of `simplex(V) * ∂N₁ * ⋯ * ∂Nₜ` for disjoint blocks.
pub fn join_of_boundaries(v: u64, blocks: &[u64]) -> Vec<u64> {
    let mut facets = vec![v];
    for &b in blocks {
        let mut next = Vec::new();
        for &f in &facets {
            for i in 0..64 {
                if b >> i & 1 == 1 {
                    next.push(f | (b & !(1 << i)));
                }
            }
        }
        facets = next;
    }
    sorted(facets)
}

/// Replays a decomposition tree with link and deletion computed from face
/// sets, independent of the library verifier.
pub fn replay_decomposition(facets: &[u64], node: &ridgechord::decomposability::DecompNode, bound: isize) -> bool {
    use ridgechord::decomposability::DecompNode;
    match node {
        DecompNode::Leaf => facets.len() <= 1,
        DecompNode::Shed { face, link, deletion } => {
            let s = face.bits();
            if s == 0 || popcount(s) as isize - 1 > bound {
                return false;
            }
            let faces = all_faces(facets);
            if !faces.contains(&s) {
                return false;
            }
            let width = popcount(facets[0]);
            let del_faces: Vec<u64> = faces.iter().copied().filter(|&g| !subset(s, g)).collect();
            let del = maximal(&del_faces);
            if del.is_empty() || del.iter().any(|&g| popcount(g) != width) {
                return false;
            }
            let lk = maximal(&facets.iter().filter(|&&f| subset(s, f)).map(|&f| f & !s).collect::<Vec<_>>());
            replay_decomposition(&lk, link, bound) && replay_decomposition(&del, deletion, bound)
        }
    }
}
