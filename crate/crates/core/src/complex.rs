//! Pure simplicial complexes stored by their facets.

use std::collections::{HashMap, HashSet};

use serde::Serialize;

use crate::error::{Error, Result};
use crate::face::{maximal_faces, sort_faces, Face, MAX_VERTICES};

/// A simplicial complex on the ground set `{1..n}`, kept as its sorted,
/// inclusion-maximal facet list.
///
/// The void complex has no facets at all; the empty complex has the single
/// facet `∅`. Both are pure.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Serialize)]
pub struct SimplicialComplex {
    n: usize,
    facets: Vec<Face>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ComplexStats {
    pub dimension: isize,
    pub facet_count: usize,
    pub f_vector: Vec<usize>,
    pub vertex_count: usize,
    pub is_pure: bool,
}

impl SimplicialComplex {
    /// Builds a complex from arbitrary generating sets: duplicates merge and
    /// non-maximal sets are dropped.
    pub fn new<I, F>(raw_facets: I, n: usize) -> Result<Self>
    where
        I: IntoIterator<Item = F>,
        F: IntoIterator<Item = usize>,
    {
        if n > MAX_VERTICES {
            return Err(Error::GroundSetTooLarge(n));
        }
        let mut facets = Vec::new();
        for raw in raw_facets {
            let mut bits = 0u64;
            for v in raw {
                if v == 0 || v > n {
                    return Err(Error::VertexOutOfRange { vertex: v, n });
                }
                bits |= 1 << (v - 1);
            }
            facets.push(Face::from_bits(bits));
        }
        Ok(Self { n, facets: maximal_faces(facets) })
    }

    /// Like [`SimplicialComplex::new`] but starting from faces.
    pub fn from_faces(faces: Vec<Face>, n: usize) -> Result<Self> {
        if n > MAX_VERTICES {
            return Err(Error::GroundSetTooLarge(n));
        }
        let ground = Face::full(n);
        if let Some(bad) = faces.iter().find(|f| !f.is_subset(ground)) {
            let vertex = bad.difference(ground).min_vertex().unwrap_or(0);
            return Err(Error::VertexOutOfRange { vertex, n });
        }
        Ok(Self { n, facets: maximal_faces(faces) })
    }

    /// Caller guarantees `facets` is a sorted antichain inside `{1..n}`.
    pub(crate) fn from_sorted_antichain(facets: Vec<Face>, n: usize) -> Self {
        debug_assert!(facets.windows(2).all(|w| w[0] < w[1]));
        Self { n, facets }
    }

    pub(crate) fn from_antichain(mut facets: Vec<Face>, n: usize) -> Self {
        sort_faces(&mut facets);
        Self { n, facets }
    }

    pub fn void(n: usize) -> Self {
        Self { n, facets: Vec::new() }
    }

    /// The complex `{∅}`.
    pub fn empty(n: usize) -> Self {
        Self { n, facets: vec![Face::EMPTY] }
    }

    /// The full simplex on `face`, over ground set `{1..n}`.
    pub fn simplex(face: Face, n: usize) -> Result<Self> {
        Self::from_faces(vec![face], n)
    }

    pub fn ground_set_size(&self) -> usize {
        self.n
    }

    pub fn facets(&self) -> &[Face] {
        &self.facets
    }

    pub fn facet_count(&self) -> usize {
        self.facets.len()
    }

    pub fn is_void(&self) -> bool {
        self.facets.is_empty()
    }

    /// True for `{∅}`.
    pub fn is_empty_complex(&self) -> bool {
        self.facets == [Face::EMPTY]
    }

    /// A single facet (this includes `{∅}`).
    pub fn is_simplex(&self) -> bool {
        self.facets.len() == 1
    }

    /// Largest facet dimension; −1 for both the void and the empty complex.
    pub fn dim(&self) -> isize {
        self.facets.iter().map(|f| f.dim()).max().unwrap_or(-1)
    }

    pub fn is_pure(&self) -> bool {
        self.facets.windows(2).all(|w| w[0].len() == w[1].len())
    }

    /// The common facet dimension, or `NotPure`.
    pub fn pure_dim(&self) -> Result<isize> {
        if self.is_pure() {
            Ok(self.dim())
        } else {
            Err(Error::NotPure)
        }
    }

    pub fn vertex_set(&self) -> Face {
        self.facets.iter().fold(Face::EMPTY, |acc, &f| acc.union(f))
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_set().len()
    }

    pub fn contains_face(&self, face: Face) -> bool {
        self.facets.iter().any(|&f| face.is_subset(f))
    }

    pub fn has_facet(&self, face: Face) -> bool {
        self.facets.binary_search(&face).is_ok()
    }

    pub fn facets_containing(&self, face: Face) -> impl Iterator<Item = Face> + '_ {
        self.facets.iter().copied().filter(move |f| face.is_subset(*f))
    }

    fn require_face(&self, face: Face) -> Result<()> {
        if self.contains_face(face) {
            Ok(())
        } else {
            Err(Error::NotAFace(face))
        }
    }

    /// All `i`-dimensional faces, sorted. Out-of-range `i` yields nothing.
    pub fn faces_of_dim(&self, i: isize) -> Vec<Face> {
        if i < -1 || i > self.dim() || self.is_void() {
            return Vec::new();
        }
        let size = (i + 1) as usize;
        let mut seen = HashSet::new();
        for &f in &self.facets {
            if f.len() >= size {
                seen.extend(f.subsets_of_size(size));
            }
        }
        let mut out: Vec<Face> = seen.into_iter().collect();
        out.sort_unstable();
        out
    }

    /// Every face including `∅` (empty for the void complex).
    pub fn all_faces(&self) -> Vec<Face> {
        let mut seen = HashSet::new();
        for &f in &self.facets {
            seen.extend(f.all_subsets());
        }
        let mut out: Vec<Face> = seen.into_iter().collect();
        out.sort_unstable();
        out
    }

    /// `f_i` for `i = 0..=dim`.
    pub fn f_vector(&self) -> Vec<usize> {
        let d = self.dim();
        (0..=d).map(|i| self.faces_of_dim(i).len()).collect()
    }

    pub fn stats(&self) -> ComplexStats {
        ComplexStats {
            dimension: self.dim(),
            facet_count: self.facet_count(),
            f_vector: self.f_vector(),
            vertex_count: self.vertex_count(),
            is_pure: self.is_pure(),
        }
    }

    /// The (d−1)-faces of a pure d-complex.
    pub fn ridges(&self) -> Result<Vec<Face>> {
        let d = self.pure_dim()?;
        if d < 0 {
            return Err(Error::InvalidArgument("ridges need dimension at least 0".into()));
        }
        Ok(self.faces_of_dim(d - 1))
    }

    /// Number of facets containing each ridge. Requires purity.
    pub(crate) fn ridge_multiplicities(&self) -> Result<HashMap<Face, usize>> {
        let d = self.pure_dim()?;
        if d < 0 {
            return Err(Error::InvalidArgument("ridges need dimension at least 0".into()));
        }
        let mut counts = HashMap::new();
        for &f in &self.facets {
            for r in f.boundary() {
                *counts.entry(r).or_insert(0) += 1;
            }
        }
        Ok(counts)
    }

    pub fn is_ridge(&self, face: Face) -> bool {
        match self.pure_dim() {
            Ok(d) if d >= 0 => face.dim() == d - 1 && self.contains_face(face),
            _ => false,
        }
    }

    /// `{F ∖ σ : F ⊇ σ}` over the same ground set.
    pub fn link(&self, sigma: Face) -> Result<Self> {
        self.require_face(sigma)?;
        Ok(self.link_unchecked(sigma))
    }

    pub(crate) fn link_unchecked(&self, sigma: Face) -> Self {
        let facets = self
            .facets_containing(sigma)
            .map(|f| f.difference(sigma))
            .collect();
        Self::from_antichain(facets, self.n)
    }

    /// Faces not containing `σ`. The ground set is kept even if vertices
    /// disappear.
    pub fn deletion(&self, sigma: Face) -> Result<Self> {
        self.require_face(sigma)?;
        Ok(self.deletion_unchecked(sigma))
    }

    pub(crate) fn deletion_unchecked(&self, sigma: Face) -> Self {
        if sigma.is_empty() {
            return Self::void(self.n);
        }
        let mut faces = Vec::with_capacity(self.facets.len());
        for &f in &self.facets {
            if sigma.is_subset(f) {
                faces.extend(sigma.vertices().map(|v| f.without(v)));
            } else {
                faces.push(f);
            }
        }
        Self { n: self.n, facets: maximal_faces(faces) }
    }

    /// The subcomplex generated by the facets containing `σ`.
    pub fn star(&self, sigma: Face) -> Result<Self> {
        self.require_face(sigma)?;
        Ok(Self::from_sorted_antichain(self.facets_containing(sigma).collect(), self.n))
    }

    /// Union of the facets containing `σ`.
    pub fn star_vertices(&self, sigma: Face) -> Result<Face> {
        self.require_face(sigma)?;
        Ok(self.facets_containing(sigma).fold(Face::EMPTY, |acc, f| acc.union(f)))
    }

    /// Inclusion-minimal subsets of `{1..n}` that are not faces.
    ///
    /// Chooses between a level-wise sweep (cheap when the complex has few
    /// faces) and transversal dualization of the facet complements (cheap
    /// when facets are large).
    pub fn minimal_nonfaces(&self) -> Vec<Face> {
        let face_estimate: u128 = self.facets.iter().map(|f| 1u128 << f.len()).sum();
        if face_estimate <= 1 << 18 {
            minimal_nonfaces_levelwise(self)
        } else {
            minimal_nonfaces_transversal(self)
        }
    }

    /// Faces strictly contained in exactly one facet.
    pub fn free_faces(&self) -> Vec<Face> {
        let mut out = Vec::new();
        for (i, &f) in self.facets.iter().enumerate() {
            let overlaps: Vec<Face> = self
                .facets
                .iter()
                .enumerate()
                .filter(|&(j, _)| j != i)
                .map(|(_, &g)| f.intersection(g))
                .collect();
            let overlaps = maximal_faces(overlaps);
            for sub in f.all_subsets() {
                if sub != f && !overlaps.iter().any(|&o| sub.is_subset(o)) {
                    out.push(sub);
                }
            }
        }
        out.sort_unstable();
        out
    }

    /// Ridges lying in exactly one facet.
    pub fn free_ridges(&self) -> Result<Vec<Face>> {
        let mut out: Vec<Face> = self
            .ridge_multiplicities()?
            .into_iter()
            .filter_map(|(r, c)| (c == 1).then_some(r))
            .collect();
        out.sort_unstable();
        Ok(out)
    }

    /// Applies `map` (indexed by old label, entry 0 unused) and moves to
    /// ground set `{1..new_n}`.
    pub fn relabel(&self, map: &[usize], new_n: usize) -> Result<Self> {
        if new_n > MAX_VERTICES {
            return Err(Error::GroundSetTooLarge(new_n));
        }
        for v in self.vertex_set().vertices() {
            let target = *map.get(v).ok_or(Error::InvalidArgument(format!("no image for vertex {v}")))?;
            if target == 0 || target > new_n {
                return Err(Error::VertexOutOfRange { vertex: target, n: new_n });
            }
        }
        let facets = self.facets.iter().map(|f| f.relabel(map)).collect();
        Self::from_faces(facets, new_n)
    }

    /// The same facets over a different ground set size.
    pub fn with_ground_set(&self, n: usize) -> Result<Self> {
        Self::from_faces(self.facets.clone(), n)
    }
}

pub(crate) fn minimal_nonfaces_levelwise(cx: &SimplicialComplex) -> Vec<Face> {
    let n = cx.n;
    if cx.is_void() {
        return vec![Face::EMPTY];
    }
    let mut nonfaces = Vec::new();
    let mut level: Vec<Face> = vec![Face::EMPTY];
    while !level.is_empty() {
        let known: HashSet<Face> = level.iter().copied().collect();
        let mut next = Vec::new();
        for &t in &level {
            let start = t.max_vertex().unwrap_or(0) + 1;
            for v in start..=n {
                let cand = t.with(v);
                // every codimension-one subset must already be a face
                if !cand.vertices().all(|u| u == v || known.contains(&cand.without(u))) {
                    continue;
                }
                if cx.contains_face(cand) {
                    next.push(cand);
                } else {
                    nonfaces.push(cand);
                }
            }
        }
        level = next;
    }
    nonfaces.sort_unstable();
    nonfaces
}

/// Minimal transversals of `{[n] ∖ F}` (Berge's incremental dualization).
pub(crate) fn minimal_nonfaces_transversal(cx: &SimplicialComplex) -> Vec<Face> {
    let ground = Face::full(cx.n);
    let mut family = vec![Face::EMPTY];
    for &f in &cx.facets {
        let edge = ground.difference(f);
        if edge.is_empty() {
            // the full simplex has no non-faces
            return Vec::new();
        }
        let (hit, miss): (Vec<Face>, Vec<Face>) =
            family.into_iter().partition(|t| !t.is_disjoint(edge));
        let mut fresh: Vec<Face> = Vec::new();
        for &t in &miss {
            for v in edge.vertices() {
                let c = t.with(v);
                if !hit.iter().any(|h| h.is_subset(c)) {
                    fresh.push(c);
                }
            }
        }
        sort_faces(&mut fresh);
        fresh.sort_by_key(|c| c.len());
        let mut kept: Vec<Face> = Vec::with_capacity(fresh.len());
        for c in fresh {
            if !kept.iter().any(|k| k.is_subset(c)) {
                kept.push(c);
            }
        }
        family = hit;
        family.extend(kept);
    }
    family.sort_unstable();
    family
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cx(facets: &[&[usize]], n: usize) -> SimplicialComplex {
        SimplicialComplex::new(facets.iter().map(|f| f.iter().copied()), n).unwrap()
    }

    #[test]
    fn new_merges_duplicates_and_drops_non_maximal() {
        let a = cx(&[&[1, 2], &[2, 3], &[1, 2]], 3);
        assert_eq!(a.facets(), &[Face::of(&[1, 2]), Face::of(&[2, 3])]);
        let b = cx(&[&[1, 2, 3], &[1, 2]], 3);
        assert_eq!(b.facets(), &[Face::of(&[1, 2, 3])]);
    }

    #[test]
    fn new_rejects_out_of_range() {
        let err = SimplicialComplex::new([[1usize, 4]], 3).unwrap_err();
        assert!(matches!(err, Error::VertexOutOfRange { vertex: 4, n: 3 }));
        assert!(SimplicialComplex::new(Vec::<Vec<usize>>::new(), 0).unwrap().is_void());
        assert!(matches!(
            SimplicialComplex::new([[1usize]], 65),
            Err(Error::GroundSetTooLarge(65))
        ));
    }

    #[test]
    fn void_and_empty_are_distinct_and_pure() {
        let v = SimplicialComplex::void(3);
        let e = SimplicialComplex::empty(3);
        assert_ne!(v, e);
        assert!(v.is_pure() && e.is_pure());
        assert!(e.contains_face(Face::EMPTY));
        assert!(!v.contains_face(Face::EMPTY));
        assert_eq!(v.minimal_nonfaces(), vec![Face::EMPTY]);
        assert_eq!(e.minimal_nonfaces().len(), 3);
    }

    #[test]
    fn faces_of_dim_basics() {
        let t = cx(&[&[1, 2, 3]], 3);
        assert_eq!(t.faces_of_dim(1), vec![Face::of(&[1, 2]), Face::of(&[1, 3]), Face::of(&[2, 3])]);
        assert_eq!(t.faces_of_dim(2), t.facets().to_vec());
        assert!(t.faces_of_dim(3).is_empty());
        assert!(t.faces_of_dim(-2).is_empty());
        assert_eq!(t.faces_of_dim(-1), vec![Face::EMPTY]);
        assert_eq!(t.f_vector(), vec![3, 3, 1]);
    }

    #[test]
    fn ridges_of_small_complexes() {
        let path = cx(&[&[1, 2], &[2, 3]], 3);
        assert_eq!(path.ridges().unwrap(), vec![Face::of(&[1]), Face::of(&[2]), Face::of(&[3])]);
        assert_eq!(path.free_ridges().unwrap(), vec![Face::of(&[1]), Face::of(&[3])]);
        let mixed = cx(&[&[1, 2, 3], &[3, 4]], 4);
        assert!(matches!(mixed.ridges(), Err(Error::NotPure)));
    }

    #[test]
    fn link_deletion_star() {
        let path = cx(&[&[1, 2], &[2, 3]], 3);
        assert_eq!(path.link(Face::of(&[2])).unwrap().facets(), &[Face::of(&[1]), Face::of(&[3])]);
        let t = cx(&[&[1, 2, 3]], 3);
        let del = t.deletion(Face::of(&[1])).unwrap();
        assert_eq!(del.facets(), &[Face::of(&[2, 3])]);
        assert_eq!(del.ground_set_size(), 3);
        assert!(matches!(t.link(Face::of(&[1, 4])), Err(Error::NotAFace(_))));
        let g = cx(&[&[1, 2], &[2, 3], &[1, 3], &[1, 4]], 4);
        assert_eq!(g.star_vertices(Face::of(&[1])).unwrap(), Face::of(&[1, 2, 3, 4]));
        assert_eq!(g.star(Face::of(&[4])).unwrap().facets(), &[Face::of(&[1, 4])]);
        assert_eq!(t.star_vertices(Face::of(&[2])).unwrap(), Face::of(&[1, 2, 3]));
    }

    #[test]
    fn minimal_nonfaces_examples() {
        let full = cx(&[&[1, 2, 3, 4]], 4);
        assert!(full.minimal_nonfaces().is_empty());
        let square = cx(&[&[1, 2], &[2, 3], &[3, 4], &[1, 4]], 4);
        assert_eq!(square.minimal_nonfaces(), vec![Face::of(&[1, 3]), Face::of(&[2, 4])]);
        assert_eq!(minimal_nonfaces_transversal(&square), minimal_nonfaces_levelwise(&square));
        // vertex 5 unused
        let g = cx(&[&[1, 2]], 5);
        assert_eq!(g.minimal_nonfaces(), vec![Face::of(&[3]), Face::of(&[4]), Face::of(&[5])]);
        assert_eq!(minimal_nonfaces_transversal(&g), minimal_nonfaces_levelwise(&g));
    }

    #[test]
    fn free_faces_of_path() {
        let path = cx(&[&[1, 2], &[2, 3]], 3);
        assert_eq!(path.free_faces(), vec![Face::of(&[1]), Face::of(&[3])]);
        // the single facet of a simplex has every proper face free
        let t = cx(&[&[1, 2]], 2);
        assert_eq!(t.free_faces(), vec![Face::EMPTY, Face::of(&[1]), Face::of(&[2])]);
    }
}
