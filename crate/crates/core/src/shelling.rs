//! Shelling verification, search, and the extension of a shelling of a
//! complex to the full skeleton it lives in.

use std::collections::{HashMap, HashSet};

use crate::complex::SimplicialComplex;
use crate::constructions::{binomial, simplex_skeleton};
use crate::error::{Error, Result};
use crate::face::Face;
use crate::search::{Budget, SearchOutcome};

/// An ordered list of facets claimed to be a shelling.
pub type ShellingOrder = Vec<Face>;

/// For each position `j`, the restriction face `R(Fⱼ)`: the vertices `v` of
/// `Fⱼ` such that `Fⱼ ∖ v` lies in an earlier facet.
pub fn restriction_faces(order: &[Face]) -> Vec<Face> {
    order
        .iter()
        .enumerate()
        .map(|(j, &f)| {
            f.vertices()
                .filter(|&v| {
                    let ridge = f.without(v);
                    order[..j].iter().any(|g| ridge.is_subset(*g))
                })
                .fold(Face::EMPTY, |acc, v| acc.with(v))
        })
        .collect()
}

fn check_order_shape(cx: &SimplicialComplex, order: &[Face]) -> Result<()> {
    let d = cx.pure_dim()?;
    for &f in order {
        if f.dim() != d {
            return Err(Error::WrongDimension { expected: d, found: f.dim() });
        }
        if !cx.has_facet(f) {
            return Err(Error::InvalidArgument(format!("{f:?} is not a facet of the complex")));
        }
    }
    Ok(())
}

/// True iff for every `j` and every `i < j` some `l < j` has
/// `|Fⱼ ∖ Fₗ| = 1` and `Fⱼ ∩ Fᵢ ⊆ Fⱼ ∩ Fₗ`. Order entries must be facets of
/// `cx`; repeated entries make the order invalid.
pub fn is_shelling(cx: &SimplicialComplex, order: &[Face]) -> Result<bool> {
    check_order_shape(cx, order)?;
    let distinct: HashSet<Face> = order.iter().copied().collect();
    if distinct.len() != order.len() {
        return Ok(false);
    }
    let restrictions = restriction_faces(order);
    for (j, (&f, &r)) in order.iter().zip(&restrictions).enumerate() {
        // Fⱼ ∩ Fᵢ ⊆ Fⱼ ∖ v for some v ∈ R(Fⱼ), i.e. (Fⱼ ∖ Fᵢ) meets R(Fⱼ)
        if order[..j].iter().any(|&g| f.difference(g).is_disjoint(r)) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// [`is_shelling`] plus coverage of every facet.
pub fn is_complete_shelling(cx: &SimplicialComplex, order: &[Face]) -> Result<bool> {
    Ok(order.len() == cx.facet_count() && is_shelling(cx, order)?)
}

/// `h₀..h_{d+1}` of a pure d-complex, from its f-vector.
pub fn h_vector(cx: &SimplicialComplex) -> Result<Vec<i128>> {
    let d = cx.pure_dim()?;
    if cx.is_void() {
        return Ok(Vec::new());
    }
    let width = (d + 1) as usize;
    // f[j] = f_{j−1}
    let mut f: Vec<i128> = vec![1];
    f.extend(cx.f_vector().into_iter().map(|x| x as i128));
    Ok((0..=width)
        .map(|i| {
            (0..=i)
                .map(|j| {
                    let sign = if (i - j) % 2 == 0 { 1 } else { -1 };
                    sign * binomial(width - j, i - j) as i128 * f[j]
                })
                .sum()
        })
        .collect())
}

struct Peeler<'a> {
    facets: &'a [Face],
    /// `across[i][p]`: facets sharing the ridge `facets[i] ∖ (p-th vertex)`.
    across: Vec<Vec<Vec<usize>>>,
    h: Vec<i128>,
    used: Vec<i128>,
    failed: HashSet<Vec<u64>>,
    budget: &'a mut Budget,
    removed: Vec<usize>,
}

fn mask_has(mask: &[u64], i: usize) -> bool {
    mask[i / 64] >> (i % 64) & 1 == 1
}

fn mask_flip(mask: &mut [u64], i: usize) {
    mask[i / 64] ^= 1 << (i % 64);
}

impl Peeler<'_> {
    /// Restriction face of `facets[i]` relative to the other remaining facets,
    /// if removing it last keeps the shelling condition.
    fn peelable(&self, remaining: &[u64], i: usize, count: usize) -> Option<usize> {
        let f = self.facets[i];
        if count == 1 {
            return Some(0);
        }
        let mut restriction = Face::EMPTY;
        for (p, v) in f.vertices().enumerate() {
            if self.across[i][p].iter().any(|&g| mask_has(remaining, g)) {
                restriction = restriction.with(v);
            }
        }
        if restriction.is_empty() {
            return None;
        }
        for (g, &other) in self.facets.iter().enumerate() {
            if g != i && mask_has(remaining, g) && f.difference(other).is_disjoint(restriction) {
                return None;
            }
        }
        Some(restriction.len())
    }

    fn run(&mut self, remaining: &mut Vec<u64>, count: usize) -> Option<bool> {
        if count == 0 {
            return Some(true);
        }
        if self.failed.contains(remaining.as_slice()) {
            return Some(false);
        }
        if !self.budget.tick() {
            return None;
        }
        // try later facets first so the resulting order leans lexicographic
        for i in (0..self.facets.len()).rev() {
            if !mask_has(remaining, i) {
                continue;
            }
            let Some(size) = self.peelable(remaining, i, count) else { continue };
            if self.used[size] >= self.h[size] {
                continue;
            }
            self.used[size] += 1;
            mask_flip(remaining, i);
            self.removed.push(i);
            match self.run(remaining, count - 1) {
                Some(false) => {}
                res => return res,
            }
            self.removed.pop();
            mask_flip(remaining, i);
            self.used[size] -= 1;
        }
        self.failed.insert(remaining.clone());
        Some(false)
    }
}

/// Searches for a shelling by peeling facets off the end: the last facet of a
/// shelling meets the rest in a pure codimension-one complex. The number of
/// facets with each restriction size is pinned by the h-vector, which prunes
/// complexes such as contractible ones without free ridges at the root.
pub fn find_shelling(cx: &SimplicialComplex, budget: &mut Budget) -> Result<SearchOutcome<ShellingOrder>> {
    cx.pure_dim()?;
    if cx.is_void() {
        return Ok(SearchOutcome::Found(Vec::new()));
    }
    let facets = cx.facets();
    let h = h_vector(cx)?;
    if h.iter().any(|&x| x < 0) {
        return Ok(SearchOutcome::Refuted);
    }
    let mut by_ridge: HashMap<Face, Vec<usize>> = HashMap::new();
    for (i, f) in facets.iter().enumerate() {
        for r in f.boundary() {
            by_ridge.entry(r).or_default().push(i);
        }
    }
    let across = facets
        .iter()
        .enumerate()
        .map(|(i, f)| {
            f.boundary()
                .map(|r| by_ridge[&r].iter().copied().filter(|&g| g != i).collect())
                .collect()
        })
        .collect();
    let mut peeler = Peeler {
        facets,
        across,
        used: vec![0; h.len()],
        h,
        failed: HashSet::new(),
        budget,
        removed: Vec::new(),
    };
    let mut remaining = vec![0u64; facets.len().div_ceil(64)];
    for i in 0..facets.len() {
        mask_flip(&mut remaining, i);
    }
    Ok(match peeler.run(&mut remaining, facets.len()) {
        Some(true) => {
            // removal order reversed is the shelling
            let order: ShellingOrder = peeler.removed.iter().rev().map(|&i| facets[i]).collect();
            if !is_complete_shelling(cx, &order)? {
                return Err(Error::Integrity("peeling produced an invalid shelling".into()));
            }
            SearchOutcome::Found(order)
        }
        Some(false) => SearchOutcome::Refuted,
        None => SearchOutcome::Unknown,
    })
}

/// Extends a shelling of a pure complex `A` on `{1..n}` to a shelling of the
/// `(dim A)`-skeleton of the simplex on `{1..n}` by appending the missing
/// top-dimensional faces in lexicographic order. Requires every minimal
/// non-face of `A` to have at least `dim A + 1` vertices, so that each
/// appended face meets its predecessors along its whole boundary.
pub fn extend_shelling_to_skeleton(a: &SimplicialComplex, order: &[Face]) -> Result<ShellingOrder> {
    let d = a.pure_dim()?;
    if d < 0 || a.is_void() {
        return Err(Error::InvalidArgument("need a nonempty pure complex".into()));
    }
    if !is_complete_shelling(a, order)? {
        return Err(Error::InvalidArgument("order is not a complete shelling of the complex".into()));
    }
    let width = (d + 1) as usize;
    if let Some(bad) = a.minimal_nonfaces().into_iter().find(|m| m.len() < width) {
        return Err(Error::Precondition(format!(
            "minimal non-face {bad:?} has {} vertices, expected at least {width}",
            bad.len()
        )));
    }
    let n = a.ground_set_size();
    let skeleton = simplex_skeleton(n - 1, d as usize)?;
    let mut extended = order.to_vec();
    extended.extend(skeleton.facets().iter().copied().filter(|f| !a.has_facet(*f)));
    if !is_complete_shelling(&skeleton, &extended)? {
        return Err(Error::Integrity("extended order is not a shelling of the skeleton".into()));
    }
    Ok(extended)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::{boundary_of_simplex, dual_c2_shelling, dual_of_clique, derive_c2};

    fn cx(facets: &[&[usize]], n: usize) -> SimplicialComplex {
        SimplicialComplex::new(facets.iter().map(|f| f.iter().copied()), n).unwrap()
    }

    /// The literal triple-loop condition.
    fn pairwise_oracle(order: &[Face]) -> bool {
        (1..order.len()).all(|j| {
            (0..j).all(|i| {
                (0..j).any(|l| {
                    order[j].difference(order[l]).len() == 1
                        && order[j].intersection(order[i]).is_subset(order[j].intersection(order[l]))
                })
            })
        })
    }

    #[test]
    fn single_facet_and_bad_inputs() {
        let t = cx(&[&[1, 2, 3]], 3);
        assert!(is_shelling(&t, &[Face::of(&[1, 2, 3])]).unwrap());
        let g = cx(&[&[1, 2], &[3, 4]], 4);
        assert!(!is_shelling(&g, &[Face::of(&[1, 2]), Face::of(&[3, 4])]).unwrap());
        assert!(matches!(is_shelling(&g, &[Face::of(&[1, 2, 3])]), Err(Error::WrongDimension { .. })));
        assert!(is_shelling(&g, &[Face::of(&[1, 3])]).is_err());
        assert!(!is_shelling(&g, &[Face::of(&[1, 2]), Face::of(&[1, 2])]).unwrap());
    }

    #[test]
    fn embedded_order_shells_dual_of_clique_c2() {
        let a1 = dual_of_clique(&derive_c2().unwrap()).unwrap();
        let order = dual_c2_shelling();
        assert!(is_complete_shelling(&a1, &order).unwrap());
        assert!(pairwise_oracle(&order));
    }

    #[test]
    fn swapped_order_agrees_with_oracle() {
        let a1 = dual_of_clique(&derive_c2().unwrap()).unwrap();
        let order = dual_c2_shelling();
        for i in 0..order.len() {
            for j in i + 1..order.len() {
                let mut o = order.clone();
                o.swap(i, j);
                assert_eq!(is_shelling(&a1, &o).unwrap(), pairwise_oracle(&o), "swap {i} {j}");
            }
        }
    }

    #[test]
    fn h_vectors() {
        let s2 = boundary_of_simplex(Face::of(&[1, 2, 3, 4]), 4).unwrap();
        assert_eq!(h_vector(&s2).unwrap(), vec![1, 1, 1, 1]);
        let disk = cx(&[&[1, 2, 3]], 3);
        assert_eq!(h_vector(&disk).unwrap(), vec![1, 0, 0, 0]);
        let c2 = derive_c2().unwrap();
        assert_eq!(h_vector(&c2).unwrap().last(), Some(&0));
    }

    #[test]
    fn finds_shelling_of_sphere() {
        let s2 = boundary_of_simplex(Face::of(&[1, 2, 3, 4]), 4).unwrap();
        let order = find_shelling(&s2, &mut Budget::default()).unwrap().found().unwrap();
        assert!(is_complete_shelling(&s2, &order).unwrap());
    }

    #[test]
    fn disconnected_graph_is_not_shellable() {
        let g = cx(&[&[1, 2], &[3, 4]], 4);
        assert!(find_shelling(&g, &mut Budget::default()).unwrap().is_refuted());
        let pts = cx(&[&[1], &[2], &[3]], 3);
        assert!(find_shelling(&pts, &mut Budget::default()).unwrap().is_found());
    }

    #[test]
    fn extension_of_printed_order() {
        let a1 = dual_of_clique(&derive_c2().unwrap()).unwrap();
        let ext = extend_shelling_to_skeleton(&a1, &dual_c2_shelling()).unwrap();
        assert_eq!(ext.len(), 35);
        let full = simplex_skeleton(4, 2).unwrap();
        let order = find_shelling(&full, &mut Budget::default()).unwrap().found().unwrap();
        assert_eq!(extend_shelling_to_skeleton(&full, &order).unwrap(), order);
    }

    #[test]
    fn extension_rejects_small_nonfaces() {
        // minimal non-face {4} has one vertex
        let a = cx(&[&[1, 2], &[2, 3]], 4);
        let err = extend_shelling_to_skeleton(&a, &[Face::of(&[1, 2]), Face::of(&[2, 3])]).unwrap_err();
        assert!(matches!(err, Error::Precondition(ref m) if m.contains("{4}")));
    }
}
