//! Shedding faces, k-decomposability search with replay-verified
//! certificates, and the vertex decomposition of complexes whose minimal
//! non-faces are pairwise disjoint.

use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use crate::complex::SimplicialComplex;
use crate::error::{Error, Result};
use crate::face::Face;
use crate::search::{Budget, SearchOutcome};
use crate::shelling::{is_complete_shelling, restriction_faces, ShellingOrder};

/// One node of a decomposition tree. The complex at each node is implicit:
/// the root is the certified complex, and a shed node's children are the
/// link and the deletion of its face.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum DecompNode {
    /// A simplex, `{∅}`, or the void complex.
    Leaf,
    Shed {
        face: Face,
        link: Box<DecompNode>,
        deletion: Box<DecompNode>,
    },
}

impl DecompNode {
    fn shed(face: Face, link: DecompNode, deletion: DecompNode) -> Self {
        DecompNode::Shed { face, link: Box::new(link), deletion: Box::new(deletion) }
    }

    /// Largest shed-face dimension in the tree, `-1` for a bare leaf.
    pub fn max_shed_dim(&self) -> isize {
        let mut best = -1;
        let mut stack = vec![self];
        while let Some(node) = stack.pop() {
            if let DecompNode::Shed { face, link, deletion } = node {
                best = best.max(face.dim());
                stack.push(link);
                stack.push(deletion);
            }
        }
        best
    }

    /// Number of shed nodes.
    pub fn shed_count(&self) -> usize {
        match self {
            DecompNode::Leaf => 0,
            DecompNode::Shed { link, deletion, .. } => 1 + link.shed_count() + deletion.shed_count(),
        }
    }

    /// Applies a vertex relabeling to every face in the tree.
    pub fn relabel(&self, map: &[usize]) -> DecompNode {
        match self {
            DecompNode::Leaf => DecompNode::Leaf,
            DecompNode::Shed { face, link, deletion } => {
                DecompNode::shed(face.relabel(map), link.relabel(map), deletion.relabel(map))
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DecompositionCertificate {
    pub max_shed_dim: isize,
    pub root: DecompNode,
}

impl DecompositionCertificate {
    pub fn new(root: DecompNode) -> Self {
        Self { max_shed_dim: root.max_shed_dim(), root }
    }
}

/// True iff `del_Δ(σ)` is pure of the same dimension as `Δ`.
pub fn is_shedding_face(cx: &SimplicialComplex, sigma: Face) -> Result<bool> {
    let d = cx.pure_dim()?;
    if !cx.contains_face(sigma) {
        return Err(Error::NotAFace(sigma));
    }
    let del = cx.deletion_unchecked(sigma);
    Ok(!del.is_void() && del.is_pure() && del.dim() == d)
}

/// Leaves accepted by the verifier.
fn is_leaf_complex(cx: &SimplicialComplex) -> bool {
    cx.facet_count() <= 1
}

/// Replays a certificate against `cx`, recomputing every link and deletion.
/// Rejects shed faces above `max_dim`, faces outside the node complex, and
/// non-shedding faces.
pub fn verify_decomposition(cx: &SimplicialComplex, cert: &DecompositionCertificate, max_dim: isize) -> bool {
    if cert.max_shed_dim != cert.root.max_shed_dim() || cert.max_shed_dim > max_dim {
        return false;
    }
    if !cx.is_pure() {
        return false;
    }
    let mut stack = vec![(cx.clone(), &cert.root)];
    while let Some((node_cx, node)) = stack.pop() {
        match node {
            DecompNode::Leaf => {
                if !is_leaf_complex(&node_cx) {
                    return false;
                }
            }
            DecompNode::Shed { face, link, deletion } => {
                if face.is_empty() || face.dim() > max_dim {
                    return false;
                }
                match is_shedding_face(&node_cx, *face) {
                    Ok(true) => {}
                    _ => return false,
                }
                let (Ok(l), Ok(d)) = (node_cx.link(*face), node_cx.deletion(*face)) else {
                    return false;
                };
                stack.push((l, link));
                stack.push((d, deletion));
            }
        }
    }
    true
}

type Memo = HashMap<Vec<Face>, Option<DecompNode>>;

struct Decomposer<'a> {
    max_size: usize,
    memo: Memo,
    budget: &'a mut Budget,
}

impl Decomposer<'_> {
    /// Shedding candidates of size `1..=max_size`, by size then lexicographically.
    fn candidates(&self, cx: &SimplicialComplex) -> Vec<Face> {
        let d = cx.dim();
        let mut ridge_count: HashMap<Face, u32> = HashMap::new();
        for f in cx.facets() {
            for r in f.boundary() {
                *ridge_count.entry(r).or_default() += 1;
            }
        }
        let top = self.max_size.min((d + 1) as usize);
        let mut faces: Vec<Face> = Vec::new();
        for s in 1..=top {
            let mut level: Vec<Face> = cx.facets().iter().flat_map(|f| f.subsets_of_size(s)).collect();
            level.sort_unstable();
            level.dedup();
            faces.extend(level);
        }
        faces
            .into_iter()
            .filter(|&sigma| {
                cx.facets_containing(sigma)
                    .all(|f| sigma.vertices().all(|v| ridge_count[&f.without(v)] >= 2))
            })
            .collect()
    }

    fn run(&mut self, cx: &SimplicialComplex) -> Option<Option<DecompNode>> {
        if is_leaf_complex(cx) {
            return Some(Some(DecompNode::Leaf));
        }
        if let Some(hit) = self.memo.get(cx.facets()) {
            return Some(hit.clone());
        }
        if !self.budget.tick() {
            return None;
        }
        let mut result = None;
        for sigma in self.candidates(cx) {
            let Some(link) = self.run(&cx.link_unchecked(sigma))? else { continue };
            let Some(deletion) = self.run(&cx.deletion_unchecked(sigma))? else { continue };
            result = Some(DecompNode::shed(sigma, link, deletion));
            break;
        }
        self.memo.insert(cx.facets().to_vec(), result.clone());
        Some(result)
    }
}

/// Searches for a decomposition using shedding faces of dimension at most
/// `k`. A found certificate has passed [`verify_decomposition`].
pub fn is_k_decomposable(cx: &SimplicialComplex, k: usize, budget: &mut Budget) -> Result<SearchOutcome<DecompositionCertificate>> {
    cx.pure_dim()?;
    let mut search = Decomposer { max_size: k + 1, memo: HashMap::new(), budget };
    Ok(match search.run(cx) {
        None => SearchOutcome::Unknown,
        Some(None) => SearchOutcome::Refuted,
        Some(Some(root)) => {
            let cert = DecompositionCertificate::new(root);
            if !verify_decomposition(cx, &cert, k as isize) {
                return Err(Error::Integrity("decomposition search produced an invalid certificate".into()));
            }
            SearchOutcome::Found(cert)
        }
    })
}

/// Converts a complete shelling into a decomposition shedding the
/// restriction face of the last facet at each step.
pub fn certificate_from_shelling(cx: &SimplicialComplex, order: &[Face]) -> Result<DecompositionCertificate> {
    if !is_complete_shelling(cx, order)? {
        return Err(Error::InvalidArgument("order is not a complete shelling".into()));
    }
    let restrictions = restriction_faces(order);
    let mut node = DecompNode::Leaf;
    for &r in restrictions.iter().skip(1) {
        node = DecompNode::shed(r, DecompNode::Leaf, node);
    }
    let cert = DecompositionCertificate::new(node);
    if !verify_decomposition(cx, &cert, cx.dim()) {
        return Err(Error::Integrity("shelling certificate failed verification".into()));
    }
    Ok(cert)
}

/// Reads a shelling off a decomposition: shell the deletion, then the facets
/// containing the shed face in the order of a shelling of its link.
pub fn shelling_from_certificate(cx: &SimplicialComplex, cert: &DecompositionCertificate) -> Result<ShellingOrder> {
    fn walk(cx: &SimplicialComplex, node: &DecompNode, out: &mut Vec<Face>, lift: Face) -> Result<()> {
        match node {
            DecompNode::Leaf => {
                out.extend(cx.facets().iter().map(|f| f.union(lift)));
            }
            DecompNode::Shed { face, link, deletion } => {
                walk(&cx.deletion(*face)?, deletion, out, lift)?;
                walk(&cx.link(*face)?, link, out, lift.union(*face))?;
            }
        }
        Ok(())
    }
    if !verify_decomposition(cx, cert, cx.dim()) {
        return Err(Error::InvalidArgument("certificate does not verify".into()));
    }
    let mut order = Vec::with_capacity(cx.facet_count());
    walk(cx, &cert.root, &mut order, Face::EMPTY)?;
    if !is_complete_shelling(cx, &order)? {
        return Err(Error::Integrity("certificate did not induce a shelling".into()));
    }
    Ok(order)
}

/// Vertex decomposition of `V * ∂N₁ * ⋯ * ∂Nₜ`, for a pure complex whose
/// minimal non-faces `Nⱼ` are pairwise disjoint. `None` when the hypothesis
/// fails.
pub fn disjoint_nonface_vd(cx: &SimplicialComplex) -> Option<DecompositionCertificate> {
    if !cx.is_pure() || cx.is_void() {
        return None;
    }
    let nonfaces = cx.minimal_nonfaces();
    let mut seen = Face::EMPTY;
    for &m in &nonfaces {
        if !seen.is_disjoint(m) {
            return None;
        }
        seen = seen.union(m);
    }
    // one-vertex non-faces contribute the factor {∅}
    let blocks: Vec<Face> = nonfaces.into_iter().filter(|m| m.len() >= 2).collect();

    fn build(blocks: &[Face]) -> DecompNode {
        let Some((&first, rest)) = blocks.split_first() else {
            return DecompNode::Leaf;
        };
        let v = first.min_vertex().expect("block has at least two vertices");
        let shrunk = first.without(v);
        let mut link_blocks = Vec::with_capacity(blocks.len());
        if shrunk.len() >= 2 {
            link_blocks.push(shrunk);
        }
        link_blocks.extend_from_slice(rest);
        DecompNode::shed(Face::singleton(v), build(&link_blocks), build(rest))
    }

    let cert = DecompositionCertificate::new(build(&blocks));
    verify_decomposition(cx, &cert, 0).then_some(cert)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::{boundary_of_simplex, derive_c2, dual_c2_shelling, dual_of_clique, join};
    use crate::shelling::find_shelling;

    fn cx(facets: &[&[usize]], n: usize) -> SimplicialComplex {
        SimplicialComplex::new(facets.iter().map(|f| f.iter().copied()), n).unwrap()
    }

    #[test]
    fn shedding_faces() {
        let s2 = boundary_of_simplex(Face::of(&[1, 2, 3, 4]), 4).unwrap();
        for v in 1..=4 {
            assert!(is_shedding_face(&s2, Face::singleton(v)).unwrap());
        }
        assert!(is_shedding_face(&s2, Face::of(&[1, 2, 3])).unwrap());
        let strip = cx(&[&[1, 2, 3], &[2, 3, 4]], 4);
        assert!(!is_shedding_face(&strip, Face::of(&[1, 2, 3])).unwrap());
        assert!(matches!(is_shedding_face(&s2, Face::of(&[1, 2, 3, 4])), Err(Error::NotAFace(_))));
        // deleting vertex 2 of the path 1-2-3 leaves two isolated points
        let path = cx(&[&[1, 2], &[2, 3]], 3);
        assert!(!is_shedding_face(&path, Face::singleton(2)).unwrap());
        assert!(is_shedding_face(&path, Face::singleton(1)).unwrap());
    }

    #[test]
    fn simplex_and_empty_are_leaves() {
        let t = SimplicialComplex::simplex(Face::of(&[1, 2, 3]), 3).unwrap();
        let cert = is_k_decomposable(&t, 0, &mut Budget::default()).unwrap().found().unwrap();
        assert_eq!(cert.root, DecompNode::Leaf);
        assert_eq!(cert.max_shed_dim, -1);
        assert!(verify_decomposition(&SimplicialComplex::empty(2), &cert, 0));
        assert!(verify_decomposition(&SimplicialComplex::void(2), &cert, 0));
    }

    #[test]
    fn disconnected_graph_is_not_decomposable() {
        let g = cx(&[&[1, 2], &[3, 4]], 4);
        assert!(is_k_decomposable(&g, 1, &mut Budget::default()).unwrap().is_refuted());
    }

    #[test]
    fn disjoint_nonfaces_give_a_vertex_decomposition() {
        let sq = cx(&[&[1, 2], &[2, 3], &[3, 4], &[1, 4]], 4);
        let cert = disjoint_nonface_vd(&sq).unwrap();
        assert!(verify_decomposition(&sq, &cert, 0));
        assert!(is_k_decomposable(&sq, 0, &mut Budget::default()).unwrap().is_found());

        let a = boundary_of_simplex(Face::of(&[1, 2, 3]), 3).unwrap();
        let b = boundary_of_simplex(Face::of(&[1, 2]), 2).unwrap();
        let j = join(&a, &b, true).unwrap();
        assert!(disjoint_nonface_vd(&j).is_some());

        let path = cx(&[&[1, 2], &[2, 3], &[3, 4]], 4);
        assert!(disjoint_nonface_vd(&path).is_none());
    }

    #[test]
    fn shelling_round_trip_on_dual_of_clique_c2() {
        let a1 = dual_of_clique(&derive_c2().unwrap()).unwrap();
        let order = dual_c2_shelling();
        let cert = certificate_from_shelling(&a1, &order).unwrap();
        assert_eq!(cert.root.shed_count(), 21);
        let back = shelling_from_certificate(&a1, &cert).unwrap();
        assert!(is_complete_shelling(&a1, &back).unwrap());
    }

    #[test]
    fn tampered_certificate_is_rejected() {
        let sq = cx(&[&[1, 2], &[2, 3], &[3, 4], &[1, 4]], 4);
        let cert = disjoint_nonface_vd(&sq).unwrap();
        let mut bad = cert.clone();
        if let DecompNode::Shed { face, .. } = &mut bad.root {
            *face = Face::of(&[1, 2]);
        }
        bad.max_shed_dim = bad.root.max_shed_dim();
        assert!(!verify_decomposition(&sq, &bad, 1));
        assert!(!verify_decomposition(&sq, &cert, -1));
    }

    #[test]
    fn certificate_json_round_trip() {
        let sq = cx(&[&[1, 2], &[2, 3], &[3, 4], &[1, 4]], 4);
        let cert = disjoint_nonface_vd(&sq).unwrap();
        let text = serde_json::to_string(&cert).unwrap();
        assert!(text.contains("\"kind\":\"shed\""));
        let back: DecompositionCertificate = serde_json::from_str(&text).unwrap();
        assert_eq!(back, cert);
    }

    #[test]
    fn top_dimensional_decomposability_matches_shellability_on_small_cases() {
        let cases = [
            cx(&[&[1, 2, 3], &[2, 3, 4], &[3, 4, 5]], 5),
            cx(&[&[1, 2, 3], &[3, 4, 5]], 5),
            cx(&[&[1, 2], &[3, 4]], 4),
            boundary_of_simplex(Face::of(&[1, 2, 3, 4]), 4).unwrap(),
        ];
        for c in &cases {
            let d = c.dim() as usize;
            let dec = is_k_decomposable(c, d, &mut Budget::default()).unwrap();
            let sh = find_shelling(c, &mut Budget::default()).unwrap();
            assert_eq!(dec.is_found(), sh.is_found(), "{c:?}");
        }
    }
}
