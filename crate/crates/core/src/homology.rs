//! Exact reduced simplicial homology over ℤ.
//!
//! Boundary matrices are diagonalized by unimodular row and column operations,
//! pivoting on the entry of smallest magnitude. Elimination first runs on
//! checked `i64` arithmetic and restarts on `BigInt` if anything overflows, so
//! results are exact at any size.

use num_bigint::BigInt;
use num_traits::{CheckedMul, CheckedSub, One, Signed, Zero};
use serde::{Serialize, Serializer};

use crate::complex::SimplicialComplex;
use crate::error::{Error, Result};
use crate::face::Face;

/// Default cap on `rows × cols` for a single boundary matrix.
pub const DEFAULT_MAX_ENTRIES: usize = 16_000_000;

/// Signed boundary `∂ᵢ : Cᵢ → Cᵢ₋₁` with lexicographically ordered bases.
#[derive(Clone, Debug)]
pub struct BoundaryMatrix {
    pub rows: Vec<Face>,
    pub cols: Vec<Face>,
    /// Column-major sparse entries `(row, ±1)`.
    pub columns: Vec<Vec<(usize, i8)>>,
}

impl BoundaryMatrix {
    pub fn shape(&self) -> (usize, usize) {
        (self.rows.len(), self.cols.len())
    }

    pub fn get(&self, row: usize, col: usize) -> i8 {
        self.columns[col].iter().find(|&&(r, _)| r == row).map_or(0, |&(_, v)| v)
    }

    pub fn to_dense(&self) -> Vec<Vec<i64>> {
        let mut m = vec![vec![0i64; self.cols.len()]; self.rows.len()];
        for (c, col) in self.columns.iter().enumerate() {
            for &(r, v) in col {
                m[r][c] = v as i64;
            }
        }
        m
    }
}

fn boundary_between(rows: Vec<Face>, cols: Vec<Face>) -> BoundaryMatrix {
    let columns = cols
        .iter()
        .map(|&sigma| {
            sigma
                .vertices()
                .enumerate()
                .map(|(pos, v)| {
                    let face = sigma.without(v);
                    let r = rows.binary_search(&face).expect("boundary face present in row basis");
                    (r, if pos % 2 == 0 { 1 } else { -1 })
                })
                .collect()
        })
        .collect();
    BoundaryMatrix { rows, cols, columns }
}

/// `∂ᵢ` for `0 ≤ i ≤ dim Δ`; `∂₀` maps vertices onto the empty face.
pub fn boundary_matrix(cx: &SimplicialComplex, i: isize) -> Result<BoundaryMatrix> {
    if cx.is_void() || i < 0 || i > cx.dim() {
        return Err(Error::InvalidArgument(format!("boundary index {i} out of range 0..={}", cx.dim())));
    }
    Ok(boundary_between(cx.faces_of_dim(i - 1), cx.faces_of_dim(i)))
}

/// Checks `∂ᵢ ∘ ∂ᵢ₊₁ = 0` for every `i`.
pub fn boundary_squares_to_zero(cx: &SimplicialComplex) -> Result<bool> {
    if cx.is_void() {
        return Ok(true);
    }
    let mut lower = boundary_matrix(cx, 0)?;
    for i in 1..=cx.dim() {
        let upper = boundary_matrix(cx, i)?;
        for col in &upper.columns {
            let mut acc = vec![0i64; lower.rows.len()];
            for &(mid, a) in col {
                for &(r, b) in &lower.columns[mid] {
                    acc[r] += (a * b) as i64;
                }
            }
            if acc.iter().any(|&x| x != 0) {
                return Ok(false);
            }
        }
        lower = upper;
    }
    Ok(true)
}

/// Integer types the elimination can run on. `checked` operations return
/// `None` on overflow.
trait SnfScalar: Clone + Zero + One + Signed + Ord + CheckedMul + CheckedSub {}
impl SnfScalar for i64 {}
impl SnfScalar for BigInt {}

/// Nonzero diagonal of some diagonalization of `m`, or `None` on overflow.
fn diagonalize<T: SnfScalar>(mut m: Vec<Vec<T>>, cols: usize) -> Option<Vec<T>> {
    let rows = m.len();
    let mut diag = Vec::new();
    let mut t = 0;
    while t < rows.min(cols) {
        // smallest nonzero magnitude in the trailing block
        let mut best: Option<(usize, usize)> = None;
        for (i, row) in m.iter().enumerate().skip(t) {
            for (j, x) in row.iter().enumerate().skip(t) {
                if !x.is_zero() && best.is_none_or(|(bi, bj)| x.abs() < m[bi][bj].abs()) {
                    best = Some((i, j));
                    if x.is_one() || (-x.clone()).is_one() {
                        break;
                    }
                }
            }
        }
        let Some((pi, pj)) = best else { break };
        m.swap(t, pi);
        for row in m.iter_mut() {
            row.swap(t, pj);
        }
        loop {
            // clear column t
            for i in t + 1..rows {
                if m[i][t].is_zero() {
                    continue;
                }
                let q = m[i][t].clone() / m[t][t].clone();
                if !q.is_zero() {
                    let (top, bottom) = m.split_at_mut(i);
                    for (dst, src) in bottom[0][t..cols].iter_mut().zip(&top[t][t..cols]) {
                        *dst = dst.checked_sub(&q.checked_mul(src)?)?;
                    }
                }
                if !m[i][t].is_zero() {
                    // remainder is a smaller pivot
                    m.swap(t, i);
                }
            }
            // clear row t
            for j in t + 1..cols {
                if m[t][j].is_zero() {
                    continue;
                }
                let q = m[t][j].clone() / m[t][t].clone();
                if !q.is_zero() {
                    for row in m.iter_mut().skip(t) {
                        let delta = q.checked_mul(&row[t])?;
                        row[j] = row[j].checked_sub(&delta)?;
                    }
                }
                if !m[t][j].is_zero() {
                    for row in m.iter_mut() {
                        row.swap(t, j);
                    }
                }
            }
            let clear = (t + 1..rows).all(|i| m[i][t].is_zero()) && (t + 1..cols).all(|j| m[t][j].is_zero());
            if clear {
                break;
            }
        }
        diag.push(m[t][t].abs());
        t += 1;
    }
    Some(diag)
}

/// Invariant factors (the nonzero diagonal of the Smith normal form) of an
/// integer matrix given as dense rows.
pub fn smith_invariants(dense: &[Vec<i64>], cols: usize) -> Vec<BigInt> {
    let diag: Vec<BigInt> = match diagonalize(dense.to_vec(), cols) {
        Some(d) => d.into_iter().map(BigInt::from).collect(),
        None => {
            let big: Vec<Vec<BigInt>> = dense.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect();
            diagonalize(big, cols).expect("BigInt arithmetic cannot overflow")
        }
    };
    normalize_diagonal(diag)
}

/// Turns any nonzero diagonal into the divisibility chain `d₁ | d₂ | …`.
fn normalize_diagonal(mut d: Vec<BigInt>) -> Vec<BigInt> {
    for i in 0..d.len() {
        for j in i + 1..d.len() {
            let (g, l) = gcd_lcm(&d[i], &d[j]);
            d[i] = g;
            d[j] = l;
        }
    }
    d
}

fn serialize_bigints<S: Serializer>(v: &[BigInt], s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_seq(v.iter().map(|x| x.to_string()))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HomologyGroup {
    pub dim: isize,
    pub betti: usize,
    #[serde(serialize_with = "serialize_bigints")]
    pub torsion: Vec<BigInt>,
}

impl HomologyGroup {
    pub fn is_trivial(&self) -> bool {
        self.betti == 0 && self.torsion.is_empty()
    }
}

/// Reduced homology `H̃ᵢ(Δ; ℤ)` for `0 ≤ i ≤ dim Δ`, plus the degree −1
/// group, which is nonzero only for `{∅}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HomologyProfile {
    pub minus_one_betti: usize,
    pub groups: Vec<HomologyGroup>,
}

impl HomologyProfile {
    pub fn betti_numbers(&self) -> Vec<usize> {
        self.groups.iter().map(|g| g.betti).collect()
    }

    pub fn is_trivial(&self) -> bool {
        self.minus_one_betti == 0 && self.groups.iter().all(HomologyGroup::is_trivial)
    }

    /// `Σ (−1)ⁱ β̃ᵢ` over `i ≥ −1`.
    pub fn reduced_euler_characteristic(&self) -> i64 {
        let mut chi = -(self.minus_one_betti as i64);
        for g in &self.groups {
            let sign = if g.dim % 2 == 0 { 1 } else { -1 };
            chi += sign * g.betti as i64;
        }
        chi
    }
}

#[derive(Clone, Copy, Debug)]
pub struct HomologyOptions {
    pub max_entries: usize,
}

impl Default for HomologyOptions {
    fn default() -> Self {
        Self { max_entries: DEFAULT_MAX_ENTRIES }
    }
}

pub fn reduced_homology(cx: &SimplicialComplex) -> Result<HomologyProfile> {
    reduced_homology_with(cx, HomologyOptions::default())
}

pub fn reduced_homology_with(cx: &SimplicialComplex, opts: HomologyOptions) -> Result<HomologyProfile> {
    if cx.is_void() {
        return Err(Error::Void);
    }
    let d = cx.dim();
    // chain bases for degrees −1..=d
    let bases: Vec<Vec<Face>> = (-1..=d).map(|i| cx.faces_of_dim(i)).collect();
    // invariants[i] belongs to ∂ᵢ : Cᵢ → Cᵢ₋₁ for i = 0..=d
    let mut invariants: Vec<Vec<BigInt>> = Vec::with_capacity(d.max(0) as usize + 1);
    for i in 0..=d {
        let rows = bases[i as usize].clone();
        let cols = bases[i as usize + 1].clone();
        let (r, c) = (rows.len(), cols.len());
        if r.saturating_mul(c) > opts.max_entries {
            return Err(Error::MatrixTooLarge { rows: r, cols: c, limit: opts.max_entries });
        }
        let bm = boundary_between(rows, cols);
        invariants.push(smith_invariants(&bm.to_dense(), c));
    }
    let rank = |i: isize| -> usize {
        if i < 0 || i > d {
            0
        } else {
            invariants[i as usize].len()
        }
    };
    let minus_one_betti = 1 - rank(0);
    let groups = (0..=d)
        .map(|i| {
            let chains = bases[i as usize + 1].len();
            let torsion = if i < d {
                invariants[i as usize + 1].iter().filter(|x| !x.is_one()).cloned().collect()
            } else {
                Vec::new()
            };
            HomologyGroup { dim: i, betti: chains - rank(i) - rank(i + 1), torsion }
        })
        .collect();
    Ok(HomologyProfile { minus_one_betti, groups })
}

/// All reduced homology vanishes. This is evidence for contractibility, not a
/// proof of it.
pub fn is_homology_trivial(cx: &SimplicialComplex) -> Result<bool> {
    Ok(reduced_homology(cx)?.is_trivial())
}

/// `Σ (−1)ⁱ fᵢ` over `i ≥ 0`.
pub fn euler_characteristic(cx: &SimplicialComplex) -> i64 {
    cx.f_vector()
        .iter()
        .enumerate()
        .map(|(i, &f)| if i % 2 == 0 { f as i64 } else { -(f as i64) })
        .sum()
}

fn gcd_lcm(a: &BigInt, b: &BigInt) -> (BigInt, BigInt) {
    let (mut x, mut y) = (a.abs(), b.abs());
    while !y.is_zero() {
        let r = &x % &y;
        x = y;
        y = r;
    }
    if x.is_zero() {
        return (x, BigInt::zero());
    }
    let l = (a.abs() / &x) * b.abs();
    (x, l)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::{boundary_of_simplex, join};

    fn cx(facets: &[&[usize]], n: usize) -> SimplicialComplex {
        SimplicialComplex::new(facets.iter().map(|f| f.iter().copied()), n).unwrap()
    }

    #[test]
    fn sign_convention() {
        let e = cx(&[&[1, 2]], 2);
        let b = boundary_matrix(&e, 1).unwrap();
        assert_eq!(b.rows, vec![Face::of(&[1]), Face::of(&[2])]);
        assert_eq!(b.to_dense(), vec![vec![-1], vec![1]]);
        let t = cx(&[&[1, 2, 3]], 3);
        let b = boundary_matrix(&t, 2).unwrap();
        assert_eq!(b.to_dense(), vec![vec![1], vec![-1], vec![1]]);
        assert!(boundary_matrix(&t, 3).is_err());
    }

    #[test]
    fn spheres_and_disks() {
        let s2 = boundary_of_simplex(Face::of(&[1, 2, 3, 4]), 4).unwrap();
        let h = reduced_homology(&s2).unwrap();
        assert_eq!(h.betti_numbers(), vec![0, 0, 1]);
        assert!(h.groups.iter().all(|g| g.torsion.is_empty()));
        let disk = cx(&[&[1, 2, 3]], 3);
        assert!(is_homology_trivial(&disk).unwrap());
        let square = cx(&[&[1, 2], &[2, 3], &[3, 4], &[1, 4]], 4);
        assert_eq!(reduced_homology(&square).unwrap().betti_numbers(), vec![0, 1]);
        assert!(!is_homology_trivial(&square).unwrap());
    }

    #[test]
    fn disconnected_and_degenerate() {
        let two_points = cx(&[&[1], &[2]], 2);
        assert_eq!(reduced_homology(&two_points).unwrap().betti_numbers(), vec![1]);
        let e = SimplicialComplex::empty(2);
        let h = reduced_homology(&e).unwrap();
        assert_eq!(h.minus_one_betti, 1);
        assert!(!h.is_trivial());
        assert!(matches!(reduced_homology(&SimplicialComplex::void(2)), Err(Error::Void)));
    }

    #[test]
    fn cone_is_trivial() {
        let square = cx(&[&[1, 2], &[2, 3], &[3, 4], &[1, 4]], 5);
        let apex = cx(&[&[5]], 5);
        let cone = join(&square, &apex, false).unwrap();
        assert!(is_homology_trivial(&cone).unwrap());
    }

    #[test]
    fn projective_plane_has_torsion() {
        // 6-vertex RP²
        let rp2 = cx(
            &[
                &[1, 2, 3], &[1, 3, 4], &[1, 4, 5], &[1, 5, 6], &[1, 2, 6],
                &[2, 3, 5], &[2, 4, 5], &[2, 4, 6], &[3, 4, 6], &[3, 5, 6],
            ],
            6,
        );
        let h = reduced_homology(&rp2).unwrap();
        assert_eq!(h.betti_numbers(), vec![0, 0, 0]);
        assert_eq!(h.groups[1].torsion, vec![BigInt::from(2)]);
        assert!(!h.is_trivial());
        assert!(boundary_squares_to_zero(&rp2).unwrap());
    }

    #[test]
    fn size_guard() {
        let s2 = boundary_of_simplex(Face::of(&[1, 2, 3, 4]), 4).unwrap();
        let err = reduced_homology_with(&s2, HomologyOptions { max_entries: 5 }).unwrap_err();
        assert!(matches!(err, Error::MatrixTooLarge { .. }));
    }

    #[test]
    fn snf_normalizes_chain() {
        // diag(2, 3) has Smith form diag(1, 6)
        let inv = smith_invariants(&[vec![2, 0], vec![0, 3]], 2);
        assert_eq!(inv, vec![BigInt::from(1), BigInt::from(6)]);
        let inv = smith_invariants(&[vec![2, 4, 4], vec![-6, 6, 12], vec![10, -4, -16]], 3);
        assert_eq!(inv, vec![BigInt::from(2), BigInt::from(6), BigInt::from(12)]);
    }

    #[test]
    fn overflow_falls_back_to_bigint() {
        let big = i64::MAX / 2;
        // pivoting on the 1 forces big² into the trailing entry
        let inv = smith_invariants(&[vec![big, 1], vec![1, big]], 2);
        let b = BigInt::from(big);
        assert_eq!(inv, vec![BigInt::from(1), &b * &b - 1]);
    }
}
