//! Constructibility certificates: binary split trees checked by replay.

use serde::{Deserialize, Serialize};

use crate::complex::SimplicialComplex;
use crate::constructions::GluedFamily;
use crate::error::{Error, Result};
use crate::face::{maximal_faces, Face};
use crate::search::{Budget, SearchOutcome};
use crate::shelling::{find_shelling, is_complete_shelling, restriction_faces};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConstructibilityCertificate {
    /// Facets of the complex certified at this node.
    pub facets: Vec<Face>,
    pub node: ConstructNode,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum ConstructNode {
    /// A single facet or a 0-dimensional complex.
    Base,
    Split {
        left: Box<ConstructibilityCertificate>,
        right: Box<ConstructibilityCertificate>,
        intersection: Box<ConstructibilityCertificate>,
    },
}

fn sorted(mut faces: Vec<Face>) -> Vec<Face> {
    faces.sort_unstable();
    faces.dedup();
    faces
}

fn pure_of_dim(facets: &[Face], d: isize) -> bool {
    !facets.is_empty() && facets.iter().all(|f| f.dim() == d)
}

/// Maximal pairwise intersections of two facet families.
fn meet(a: &[Face], b: &[Face]) -> Vec<Face> {
    let all = a.iter().flat_map(|f| b.iter().map(move |g| f.intersection(*g))).collect();
    sorted(maximal_faces(all))
}

fn verify_node(facets: &[Face], cert: &ConstructibilityCertificate) -> bool {
    if sorted(cert.facets.clone()) != facets {
        return false;
    }
    let d = match facets.first() {
        Some(f) => f.dim(),
        None => return false,
    };
    if !pure_of_dim(facets, d) {
        return false;
    }
    match &cert.node {
        ConstructNode::Base => d <= 0 || facets.len() == 1,
        ConstructNode::Split { left, right, intersection } => {
            let l = sorted(left.facets.clone());
            let r = sorted(right.facets.clone());
            if l.len() >= facets.len() || r.len() >= facets.len() {
                return false;
            }
            if !pure_of_dim(&l, d) || !pure_of_dim(&r, d) {
                return false;
            }
            if sorted([l.clone(), r.clone()].concat()) != facets {
                return false;
            }
            let inter = meet(&l, &r);
            if !pure_of_dim(&inter, d - 1) {
                return false;
            }
            verify_node(&l, left) && verify_node(&r, right) && verify_node(&inter, intersection)
        }
    }
}

/// Replays the split tree against `cx`.
pub fn verify_constructibility(cx: &SimplicialComplex, cert: &ConstructibilityCertificate) -> bool {
    cx.is_pure() && verify_node(cx.facets(), cert)
}

fn base(facets: Vec<Face>) -> ConstructibilityCertificate {
    ConstructibilityCertificate { facets, node: ConstructNode::Base }
}

fn split(facets: Vec<Face>, left: ConstructibilityCertificate, right: ConstructibilityCertificate, intersection: ConstructibilityCertificate) -> ConstructibilityCertificate {
    ConstructibilityCertificate {
        facets,
        node: ConstructNode::Split { left: Box::new(left), right: Box::new(right), intersection: Box::new(intersection) },
    }
}

fn from_order(order: &[Face]) -> ConstructibilityCertificate {
    let facets = sorted(order.to_vec());
    if order.len() <= 1 || order[0].dim() <= 0 {
        return base(facets);
    }
    let last = *order.last().unwrap();
    let restriction = restriction_faces(order)[order.len() - 1];
    // the last facet meets the rest in the ridges through its restriction face
    let ridges: Vec<Face> = sorted(restriction.vertices().map(|v| last.without(v)).collect());
    split(facets, from_order(&order[..order.len() - 1]), base(vec![last]), from_order(&ridges))
}

/// Splits off the last facet of a shelling at each step. Any ordering of
/// ridges of one simplex is a shelling, which certifies the intersections.
pub fn certificate_from_shelling(cx: &SimplicialComplex, order: &[Face]) -> Result<ConstructibilityCertificate> {
    if !is_complete_shelling(cx, order)? {
        return Err(Error::InvalidArgument("order is not a complete shelling".into()));
    }
    let cert = from_order(order);
    if !verify_constructibility(cx, &cert) {
        return Err(Error::Integrity("shelling-derived constructibility certificate failed".into()));
    }
    Ok(cert)
}

/// Splits the glued family as copy 1 against the remaining copies, which
/// meet exactly in the shared ridge; each copy is certified through a
/// shelling found by search.
pub fn delta_constructibility_certificate(family: &GluedFamily, budget: &mut Budget) -> Result<SearchOutcome<ConstructibilityCertificate>> {
    let mut copy_certs = Vec::with_capacity(family.copies.len());
    for copy in &family.copies {
        match find_shelling(copy, budget)? {
            SearchOutcome::Found(order) => copy_certs.push(from_order(&order)),
            SearchOutcome::Refuted => return Ok(SearchOutcome::Refuted),
            SearchOutcome::Unknown => return Ok(SearchOutcome::Unknown),
        }
    }
    let ridge = base(vec![family.shared_ridge]);
    let mut acc = copy_certs.pop().expect("family has at least one copy");
    while let Some(prev) = copy_certs.pop() {
        let facets = sorted([prev.facets.clone(), acc.facets.clone()].concat());
        acc = split(facets, prev, acc, ridge.clone());
    }
    if !verify_constructibility(&family.complex, &acc) {
        return Err(Error::Integrity("glued constructibility certificate failed".into()));
    }
    Ok(SearchOutcome::Found(acc))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::{boundary_of_simplex, delta2};

    fn cx(facets: &[&[usize]], n: usize) -> SimplicialComplex {
        SimplicialComplex::new(facets.iter().map(|f| f.iter().copied()), n).unwrap()
    }

    #[test]
    fn single_facet_is_base() {
        let t = cx(&[&[1, 2, 3]], 3);
        assert!(verify_constructibility(&t, &base(vec![Face::of(&[1, 2, 3])])));
        let two = cx(&[&[1, 2, 3], &[2, 3, 4]], 4);
        assert!(!verify_constructibility(&two, &base(two.facets().to_vec())));
    }

    #[test]
    fn sphere_from_shelling() {
        let s2 = boundary_of_simplex(Face::of(&[1, 2, 3, 4]), 4).unwrap();
        let order = find_shelling(&s2, &mut Budget::default()).unwrap().found().unwrap();
        let cert = certificate_from_shelling(&s2, &order).unwrap();
        assert!(verify_constructibility(&s2, &cert));
    }

    #[test]
    fn glued_family_is_constructible() {
        let fam = delta2(2).unwrap();
        let cert = delta_constructibility_certificate(&fam, &mut Budget::default()).unwrap().found().unwrap();
        assert!(verify_constructibility(&fam.complex, &cert));
    }

    #[test]
    fn non_pure_intersection_is_rejected() {
        // two triangles meeting in a single vertex
        let bow = cx(&[&[1, 2, 3], &[3, 4, 5]], 5);
        let bad = split(
            bow.facets().to_vec(),
            base(vec![Face::of(&[1, 2, 3])]),
            base(vec![Face::of(&[3, 4, 5])]),
            base(vec![Face::of(&[3])]),
        );
        assert!(!verify_constructibility(&bow, &bad));
    }
}
