//! Builders: clique complexes, Alexander duals, skeleta, joins, the base
//! complex C₂ and the glued family Δ²ₖ with its duals Aₖ.

use std::collections::{HashMap, HashSet};

use serde::Serialize;

use crate::complex::SimplicialComplex;
use crate::error::{Error, Result};
use crate::face::{Face, MAX_VERTICES};
use crate::io::parse_order;

/// The 22-facet shelling order of the Alexander dual of `Cl(C₂)`, verbatim.
pub const DUAL_C2_SHELLING_TEXT: &str = include_str!("../data/dual_c2_shelling.ord");

/// Upper bound on generated facet counts for skeleta.
pub const MAX_GENERATED_FACETS: u128 = 5_000_000;

pub fn binomial(n: usize, k: usize) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1u128, |acc, i| acc * (n - i) as u128 / (i + 1) as u128)
}

/// The clique complex: all `V ⊆ {1..n}` whose `(d+1)`-subsets are all facets
/// of the pure d-complex `cx`.
pub fn clique_complex(cx: &SimplicialComplex) -> Result<SimplicialComplex> {
    let d = cx.pure_dim()?;
    if cx.is_void() || d < 0 {
        return Err(Error::InvalidArgument("clique complex needs a pure complex of dimension ≥ 0".into()));
    }
    let n = cx.ground_set_size();
    if d == 0 {
        return SimplicialComplex::simplex(cx.vertex_set(), n);
    }
    let d = d as usize;
    let ground = Face::full(n);

    // ext[T] = vertices v with T ∪ {v} a facet, for d-subsets T
    let mut ext: HashMap<Face, Face> = HashMap::new();
    for &f in cx.facets() {
        for v in f.vertices() {
            let e = ext.entry(f.without(v)).or_insert(Face::EMPTY);
            *e = e.with(v);
        }
    }
    let ext_of = |t: Face| ext.get(&t).copied().unwrap_or(Face::EMPTY);

    let mut maximal = Vec::new();
    let mut stack: Vec<(Face, Face)> = Vec::new();
    for &f in cx.facets() {
        let cand = f.boundary().fold(ground, |acc, r| acc.intersection(ext_of(r))).difference(f);
        stack.push((f, cand));
    }
    while let Some((clique, cand)) = stack.pop() {
        if cand.is_empty() {
            maximal.push(clique);
            continue;
        }
        let top = clique.max_vertex().unwrap_or(0);
        for v in cand.vertices().filter(|&v| v > top) {
            let mut next = cand.without(v);
            for t in clique.subsets_of_size(d - 1) {
                next = next.intersection(ext_of(t.with(v)));
                if next.is_empty() {
                    break;
                }
            }
            stack.push((clique.with(v), next));
        }
    }

    // d-subsets of the ground set that lie in no facet are facets too
    let covered: HashSet<Face> = ext.keys().copied().collect();
    for t in ground.subsets_of_size(d) {
        if !covered.contains(&t) {
            maximal.push(t);
        }
    }
    SimplicialComplex::from_faces(maximal, n)
}

/// Faces are complements of non-faces; facets are complements of minimal
/// non-faces. The full simplex maps to the void complex and back.
pub fn alexander_dual(cx: &SimplicialComplex) -> SimplicialComplex {
    let ground = Face::full(cx.ground_set_size());
    let facets: Vec<Face> = cx.minimal_nonfaces().into_iter().map(|m| ground.difference(m)).collect();
    if facets.is_empty() {
        log::warn!("Alexander dual of the full simplex is the void complex");
    }
    SimplicialComplex::from_antichain(facets, cx.ground_set_size())
}

/// The shelling order shipped in [`DUAL_C2_SHELLING_TEXT`].
pub fn dual_c2_shelling() -> Vec<Face> {
    parse_order(DUAL_C2_SHELLING_TEXT).expect("embedded order parses")
}

/// Recovers C₂ on `{1..7}` from the embedded dual shelling: its triangles are
/// the triples whose complements are missing from the list.
pub fn derive_c2() -> Result<SimplicialComplex> {
    let order = dual_c2_shelling();
    let ground = Face::full(7);
    let listed: HashSet<Face> = order.iter().copied().collect();
    if listed.len() != 22 || order.iter().any(|f| f.len() != 4 || !f.is_subset(ground)) {
        return Err(Error::Integrity("embedded order is not 22 distinct 4-subsets of {1..7}".into()));
    }
    let triangles: Vec<Face> = ground
        .subsets_of_size(3)
        .into_iter()
        .filter(|t| !listed.contains(&ground.difference(*t)))
        .collect();
    let c2 = SimplicialComplex::from_faces(triangles, 7)?;
    if c2.facet_count() != 13 {
        return Err(Error::Integrity(format!("C2 has {} triangles, expected 13", c2.facet_count())));
    }
    if c2.vertex_count() != 7 {
        return Err(Error::Integrity(format!("C2 has {} vertices, expected 7", c2.vertex_count())));
    }
    let free = c2.free_ridges()?;
    if free.len() != 1 {
        return Err(Error::Integrity(format!("C2 has {} free ridges, expected 1", free.len())));
    }
    Ok(c2)
}

/// The free ridge of [`derive_c2`].
pub fn c2_free_ridge() -> Result<Face> {
    Ok(derive_c2()?.free_ridges()?[0])
}

/// `k` copies of a base complex glued along a common free ridge, canonically
/// relabeled: ridge vertices first, then each copy's private vertices in a
/// contiguous block.
#[derive(Clone, Debug, Serialize)]
pub struct GluedFamily {
    pub d: usize,
    pub k: usize,
    pub shared_ridge: Face,
    pub copy_private_vertices: Vec<Face>,
    pub complex: SimplicialComplex,
    /// Facets of each copy after relabeling.
    pub copies: Vec<SimplicialComplex>,
}

pub fn build_delta(k: usize, base: &SimplicialComplex, free_ridge: Face) -> Result<GluedFamily> {
    if k == 0 {
        return Err(Error::InvalidArgument("need at least one copy".into()));
    }
    let d = base.pure_dim()?;
    if d < 1 {
        return Err(Error::InvalidArgument("base complex must have dimension ≥ 1".into()));
    }
    let d = d as usize;
    if free_ridge.len() != d || base.facets_containing(free_ridge).count() != 1 {
        return Err(Error::NotAFreeRidge(free_ridge));
    }
    let private: Vec<usize> = base.vertex_set().difference(free_ridge).to_vec();
    let p = private.len();
    let n = d + k * p;
    if n > MAX_VERTICES {
        return Err(Error::GroundSetTooLarge(n));
    }

    let base_n = base.ground_set_size();
    let mut copies = Vec::with_capacity(k);
    let mut gammas = Vec::with_capacity(k);
    let mut all = Vec::with_capacity(k * base.facet_count());
    for j in 0..k {
        let mut map = vec![0usize; base_n + 1];
        for (i, v) in free_ridge.vertices().enumerate() {
            map[v] = i + 1;
        }
        for (i, &v) in private.iter().enumerate() {
            map[v] = d + j * p + i + 1;
        }
        let copy = base.relabel(&map, n)?;
        gammas.push(Face::full(d + (j + 1) * p).difference(Face::full(d + j * p)));
        all.extend_from_slice(copy.facets());
        copies.push(copy);
    }
    Ok(GluedFamily {
        d,
        k,
        shared_ridge: Face::full(d),
        copy_private_vertices: gammas,
        complex: SimplicialComplex::from_faces(all, n)?,
        copies,
    })
}

/// Δ²ₖ built from [`derive_c2`].
pub fn delta2(k: usize) -> Result<GluedFamily> {
    let c2 = derive_c2()?;
    let ridge = c2.free_ridges()?[0];
    build_delta(k, &c2, ridge)
}

/// `Aₖ`: the Alexander dual of `Cl(Δ²ₖ)`.
pub fn dual_of_clique(cx: &SimplicialComplex) -> Result<SimplicialComplex> {
    Ok(alexander_dual(&clique_complex(cx)?))
}

/// The `s`-skeleton of the `n`-simplex, on vertices `{1..n+1}`.
pub fn simplex_skeleton(n: usize, s: usize) -> Result<SimplicialComplex> {
    if s > n {
        return Err(Error::InvalidArgument(format!("skeleton dimension {s} exceeds simplex dimension {n}")));
    }
    if n + 1 > MAX_VERTICES {
        return Err(Error::GroundSetTooLarge(n + 1));
    }
    let count = binomial(n + 1, s + 1);
    if count > MAX_GENERATED_FACETS {
        return Err(Error::InvalidArgument(format!("skeleton would have {count} facets")));
    }
    let facets = Face::full(n + 1).subsets_of_size(s + 1);
    Ok(SimplicialComplex::from_sorted_antichain(facets, n + 1))
}

/// `∂V`: all proper faces of the simplex on `V`.
pub fn boundary_of_simplex(v: Face, n: usize) -> Result<SimplicialComplex> {
    SimplicialComplex::from_faces(v.boundary().collect(), n)
}

/// The join `Δ₁ * Δ₂`. With `relabel`, the second argument's labels are
/// shifted past the first ground set; otherwise the supports must be
/// disjoint.
pub fn join(a: &SimplicialComplex, b: &SimplicialComplex, relabel: bool) -> Result<SimplicialComplex> {
    let (b, n) = if relabel {
        let na = a.ground_set_size();
        let nb = b.ground_set_size();
        let map: Vec<usize> = (0..=nb).map(|v| v + na).collect();
        (b.relabel(&map, na + nb)?, na + nb)
    } else {
        let overlap = a.vertex_set().intersection(b.vertex_set());
        if !overlap.is_empty() {
            return Err(Error::OverlappingSupports(overlap));
        }
        (b.clone(), a.ground_set_size().max(b.ground_set_size()))
    };
    let facets: Vec<Face> = a
        .facets()
        .iter()
        .flat_map(|&f| b.facets().iter().map(move |&g| f.union(g)))
        .collect();
    SimplicialComplex::from_faces(facets, n)
}
