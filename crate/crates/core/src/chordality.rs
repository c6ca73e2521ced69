//! Ridge-chordality by exhaustive elimination search, the free-face
//! characterization in the clique complex, and a classical chordal-graph test
//! for dimension 1.

use std::collections::{HashMap, HashSet};

use rayon::prelude::*;
use serde::Serialize;

use crate::complex::SimplicialComplex;
use crate::constructions::{binomial, clique_complex};
use crate::error::{Error, Result};
use crate::face::Face;
use crate::search::{Budget, PARALLEL_THRESHOLD};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ChordalVerdict {
    Chordal,
    NotChordal,
    Unknown,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EliminationStep {
    pub ridge: Face,
    pub star_vertex_set: Face,
}

#[derive(Clone, Debug, Serialize)]
pub struct EliminationTrace {
    pub steps: Vec<EliminationStep>,
    pub verdict: ChordalVerdict,
    pub explored_states: u64,
}

/// Every `(d+1)`-subset of `v` is a facet of the pure d-complex `cx`.
pub fn is_clique(cx: &SimplicialComplex, v: Face) -> bool {
    let width = (cx.dim() + 1).max(0) as usize;
    let inside = cx.facets().iter().filter(|f| f.is_subset(v)).count() as u128;
    inside == binomial(v.len(), width)
}

fn require_ridge(cx: &SimplicialComplex, r: Face) -> Result<()> {
    cx.pure_dim()?;
    if cx.is_ridge(r) {
        Ok(())
    } else {
        Err(Error::NotARidge(r))
    }
}

/// The vertices of the star of `r` form a clique.
pub fn is_simplicial_ridge(cx: &SimplicialComplex, r: Face) -> Result<bool> {
    require_ridge(cx, r)?;
    Ok(is_clique(cx, cx.star_vertices(r)?))
}

/// `r` lies in exactly one facet of the clique complex `cl`, strictly.
pub fn is_free_in(cl: &SimplicialComplex, r: Face) -> bool {
    let mut containing = cl.facets_containing(r);
    matches!((containing.next(), containing.next()), (Some(f), None) if f != r)
}

/// [`is_simplicial_ridge`] cross-checked against freeness of `r` in
/// `Cl(Δ)`; disagreement is reported as an integrity error.
pub fn is_simplicial_ridge_checked(cx: &SimplicialComplex, r: Face) -> Result<bool> {
    let direct = is_simplicial_ridge(cx, r)?;
    let via_clique = is_free_in(&clique_complex(cx)?, r);
    if direct != via_clique {
        return Err(Error::Integrity(format!(
            "star-clique test and clique-complex freeness disagree on ridge {r:?}"
        )));
    }
    Ok(direct)
}

/// Drops every facet containing `r`; the ground set stays.
pub fn delete_ridge(cx: &SimplicialComplex, r: Face) -> Result<SimplicialComplex> {
    require_ridge(cx, r)?;
    Ok(delete_ridge_unchecked(cx, r))
}

fn delete_ridge_unchecked(cx: &SimplicialComplex, r: Face) -> SimplicialComplex {
    let kept = cx.facets().iter().copied().filter(|f| !r.is_subset(*f)).collect();
    SimplicialComplex::from_sorted_antichain(kept, cx.ground_set_size())
}

/// Simplicial ridges of a pure complex with their star vertex sets, in
/// lexicographic order of the ridge.
pub fn simplicial_ridges(cx: &SimplicialComplex) -> Result<Vec<EliminationStep>> {
    if cx.is_void() {
        return Ok(Vec::new());
    }
    let mut stars: HashMap<Face, Face> = HashMap::new();
    cx.pure_dim()?;
    for &f in cx.facets() {
        for r in f.boundary() {
            let s = stars.entry(r).or_insert(Face::EMPTY);
            *s = s.union(f);
        }
    }
    let mut ridges: Vec<(Face, Face)> = stars.into_iter().collect();
    ridges.sort_unstable();
    let test = |&(ridge, star): &(Face, Face)| is_clique(cx, star).then_some(EliminationStep { ridge, star_vertex_set: star });
    Ok(if ridges.len() >= PARALLEL_THRESHOLD {
        ridges.par_iter().filter_map(test).collect()
    } else {
        ridges.iter().filter_map(test).collect()
    })
}

struct ChordalSearch {
    failed: HashSet<Vec<Face>>,
    budget: Budget,
    path: Vec<EliminationStep>,
}

impl ChordalSearch {
    /// `Some(true)` once the facet set empties; `None` when the budget runs out.
    fn run(&mut self, state: &SimplicialComplex) -> Option<bool> {
        if state.is_void() {
            return Some(true);
        }
        if self.failed.contains(state.facets()) {
            return Some(false);
        }
        if !self.budget.tick() {
            return None;
        }
        let candidates = simplicial_ridges(state).expect("states stay pure");
        for step in candidates {
            let next = delete_ridge_unchecked(state, step.ridge);
            self.path.push(step);
            match self.run(&next) {
                Some(true) => return Some(true),
                None => return None,
                Some(false) => {
                    self.path.pop();
                }
            }
        }
        self.failed.insert(state.facets().to_vec());
        Some(false)
    }
}

/// Decides ridge-chordality by backtracking over every simplicial-ridge
/// choice, memoizing facet sets already shown to be stuck. A chordal verdict
/// is replay-verified before it is returned.
pub fn is_ridge_chordal(cx: &SimplicialComplex, budget: Budget) -> Result<EliminationTrace> {
    cx.pure_dim()?;
    let mut search = ChordalSearch { failed: HashSet::new(), budget, path: Vec::new() };
    let result = search.run(cx);
    let verdict = match result {
        Some(true) => ChordalVerdict::Chordal,
        Some(false) => ChordalVerdict::NotChordal,
        None => ChordalVerdict::Unknown,
    };
    let trace = EliminationTrace {
        steps: if verdict == ChordalVerdict::Chordal { search.path } else { Vec::new() },
        verdict,
        explored_states: search.budget.used,
    };
    if verdict == ChordalVerdict::Chordal && !replay_elimination(cx, &trace.steps)? {
        return Err(Error::Integrity("elimination trace failed replay".into()));
    }
    if log::log_enabled!(log::Level::Debug) && verdict != ChordalVerdict::Unknown {
        let greedy = greedy_elimination(cx)?;
        log::debug!(
            "greedy elimination {} the exhaustive verdict {:?}",
            if (greedy.verdict == ChordalVerdict::Chordal) == (verdict == ChordalVerdict::Chordal) { "matches" } else { "misses" },
            verdict
        );
    }
    Ok(trace)
}

/// Always deletes the lexicographically first simplicial ridge. Reaching no
/// facets proves chordality; getting stuck proves nothing, so the verdict is
/// then `Unknown`.
pub fn greedy_elimination(cx: &SimplicialComplex) -> Result<EliminationTrace> {
    cx.pure_dim()?;
    let mut state = cx.clone();
    let mut steps = Vec::new();
    while !state.is_void() {
        let Some(step) = simplicial_ridges(&state)?.into_iter().next() else {
            break;
        };
        state = delete_ridge_unchecked(&state, step.ridge);
        steps.push(step);
    }
    let explored_states = steps.len() as u64;
    let verdict = if state.is_void() { ChordalVerdict::Chordal } else { ChordalVerdict::Unknown };
    Ok(EliminationTrace { steps, verdict, explored_states })
}

/// Replays an elimination from `cx`: every step must delete a ridge of the
/// current complex whose recorded star vertex set is current and a clique,
/// and the last step must leave no facets.
pub fn replay_elimination(cx: &SimplicialComplex, steps: &[EliminationStep]) -> Result<bool> {
    cx.pure_dim()?;
    let mut state = cx.clone();
    for step in steps {
        if !state.is_ridge(step.ridge) {
            return Ok(false);
        }
        let star = state.star_vertices(step.ridge)?;
        if star != step.star_vertex_set || !is_clique(&state, star) {
            return Ok(false);
        }
        state = delete_ridge_unchecked(&state, step.ridge);
    }
    Ok(state.is_void())
}

/// Chordality of a graph (pure 1-complex) by maximum-cardinality search and a
/// perfect-elimination-ordering check.
pub fn graph_chordality_oracle(g: &SimplicialComplex) -> Result<bool> {
    if !g.is_void() && g.pure_dim()? != 1 {
        return Err(Error::WrongDimension { expected: 1, found: g.dim() });
    }
    let n = g.ground_set_size();
    let mut adj = vec![0u64; n + 1];
    for e in g.facets() {
        let v = e.to_vec();
        adj[v[0]] |= 1 << (v[1] - 1);
        adj[v[1]] |= 1 << (v[0] - 1);
    }
    let vertices: Vec<usize> = g.vertex_set().to_vec();

    // MCS numbers vertices from last to first
    let mut weight = vec![0usize; n + 1];
    let mut numbered = vec![false; n + 1];
    let mut order = Vec::with_capacity(vertices.len());
    for _ in 0..vertices.len() {
        let v = *vertices
            .iter()
            .filter(|&&v| !numbered[v])
            .max_by_key(|&&v| (weight[v], std::cmp::Reverse(v)))
            .expect("unnumbered vertex remains");
        numbered[v] = true;
        order.push(v);
        for &u in &vertices {
            if !numbered[u] && adj[v] & (1 << (u - 1)) != 0 {
                weight[u] += 1;
            }
        }
    }
    order.reverse();

    let mut position = vec![0usize; n + 1];
    for (i, &v) in order.iter().enumerate() {
        position[v] = i;
    }
    for &v in &order {
        let later: Vec<usize> = (1..=n)
            .filter(|&u| adj[v] & (1 << (u - 1)) != 0 && position[u] > position[v])
            .collect();
        let Some(&parent) = later.iter().min_by_key(|&&u| position[u]) else {
            continue;
        };
        for &u in &later {
            if u != parent && adj[parent] & (1 << (u - 1)) == 0 {
                return Ok(false);
            }
        }
    }
    Ok(true)
}
