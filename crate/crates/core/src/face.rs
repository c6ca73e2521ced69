//! Faces as fixed-width vertex bitsets.
//!
//! Vertex `v` (1-based) occupies bit `v - 1`, so a `Face` covers ground sets
//! of up to [`MAX_VERTICES`] labels. Every complex built by this crate for
//! k ≤ 12 copies of the base complex stays under that bound.

use std::cmp::Ordering;
use std::fmt;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

/// Largest supported vertex label.
pub const MAX_VERTICES: usize = 64;

/// A finite set of positive vertex labels.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct Face(u64);

impl Face {
    /// The empty face (dimension −1).
    pub const EMPTY: Face = Face(0);

    pub const fn from_bits(bits: u64) -> Self {
        Face(bits)
    }

    pub const fn bits(self) -> u64 {
        self.0
    }

    /// Builds a face from labels in `1..=64`; returns `None` on a label out
    /// of range. Duplicates are merged.
    pub fn from_vertices<I: IntoIterator<Item = usize>>(vertices: I) -> Option<Self> {
        let mut bits = 0u64;
        for v in vertices {
            if v == 0 || v > MAX_VERTICES {
                return None;
            }
            bits |= 1 << (v - 1);
        }
        Some(Face(bits))
    }

    /// Panicking variant of [`Face::from_vertices`] for literals in tests and
    /// constants.
    pub fn of(vertices: &[usize]) -> Self {
        Self::from_vertices(vertices.iter().copied()).expect("vertex label out of range")
    }

    pub fn singleton(v: usize) -> Self {
        debug_assert!((1..=MAX_VERTICES).contains(&v));
        Face(1 << (v - 1))
    }

    /// `{1, ..., n}`.
    pub fn full(n: usize) -> Self {
        debug_assert!(n <= MAX_VERTICES);
        if n == MAX_VERTICES {
            Face(u64::MAX)
        } else {
            Face((1u64 << n) - 1)
        }
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    /// `|σ| − 1`.
    pub fn dim(self) -> isize {
        self.len() as isize - 1
    }

    pub fn contains(self, v: usize) -> bool {
        (1..=MAX_VERTICES).contains(&v) && self.0 & (1 << (v - 1)) != 0
    }

    pub fn is_subset(self, other: Face) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn is_disjoint(self, other: Face) -> bool {
        self.0 & other.0 == 0
    }

    pub fn union(self, other: Face) -> Face {
        Face(self.0 | other.0)
    }

    pub fn intersection(self, other: Face) -> Face {
        Face(self.0 & other.0)
    }

    pub fn difference(self, other: Face) -> Face {
        Face(self.0 & !other.0)
    }

    pub fn with(self, v: usize) -> Face {
        self.union(Face::singleton(v))
    }

    pub fn without(self, v: usize) -> Face {
        self.difference(Face::singleton(v))
    }

    /// Largest label, if any.
    pub fn max_vertex(self) -> Option<usize> {
        (self.0 != 0).then(|| 64 - self.0.leading_zeros() as usize)
    }

    pub fn min_vertex(self) -> Option<usize> {
        (self.0 != 0).then(|| self.0.trailing_zeros() as usize + 1)
    }

    /// Vertices in increasing order.
    pub fn vertices(self) -> Vertices {
        Vertices(self.0)
    }

    pub fn to_vec(self) -> Vec<usize> {
        self.vertices().collect()
    }

    /// Faces `σ ∖ {v}` for each `v ∈ σ`, in increasing order of `v`.
    pub fn boundary(self) -> impl Iterator<Item = Face> {
        self.vertices().map(move |v| self.without(v))
    }

    /// All subsets of `self` with exactly `size` elements, in lexicographic
    /// order.
    pub fn subsets_of_size(self, size: usize) -> Vec<Face> {
        let verts = self.to_vec();
        let mut out = Vec::new();
        if size > verts.len() {
            return out;
        }
        let mut idx: Vec<usize> = (0..size).collect();
        loop {
            out.push(Face(idx.iter().fold(0u64, |b, &i| b | 1 << (verts[i] - 1))));
            // advance the rightmost index that still has room
            let Some(i) = (0..size).rev().find(|&i| idx[i] < verts.len() - size + i) else {
                return out;
            };
            idx[i] += 1;
            for j in i + 1..size {
                idx[j] = idx[j - 1] + 1;
            }
        }
    }

    /// Every subset of `self` (including `∅` and `self`).
    pub fn all_subsets(self) -> impl Iterator<Item = Face> {
        let full = self.0;
        let mut sub = Some(0u64);
        std::iter::from_fn(move || {
            let cur = sub?;
            // Gosper-free enumeration of submasks in increasing numeric order
            sub = if cur == full { None } else { Some(((cur | !full).wrapping_add(1)) & full) };
            Some(Face(cur))
        })
    }

    /// Applies a vertex relabeling; `map[v]` is the new label of `v`
    /// (index 0 unused).
    pub fn relabel(self, map: &[usize]) -> Face {
        Face(self.vertices().fold(0u64, |b, v| b | 1 << (map[v] - 1)))
    }
}

/// Iterator over the labels of a [`Face`].
#[derive(Clone)]
pub struct Vertices(u64);

impl Iterator for Vertices {
    type Item = usize;

    fn next(&mut self) -> Option<usize> {
        if self.0 == 0 {
            return None;
        }
        let v = self.0.trailing_zeros() as usize;
        self.0 &= self.0 - 1;
        Some(v + 1)
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let n = self.0.count_ones() as usize;
        (n, Some(n))
    }
}

impl ExactSizeIterator for Vertices {}

/// Lexicographic order on increasing vertex sequences, so `1 < 12 < 123 < 13 < 2`.
impl Ord for Face {
    fn cmp(&self, other: &Self) -> Ordering {
        let diff = self.0 ^ other.0;
        if diff == 0 {
            return Ordering::Equal;
        }
        let low = diff.trailing_zeros();
        // everything below `low` is a shared prefix
        let (mine, theirs) = (self.0 >> low, other.0 >> low);
        if mine & 1 == 1 {
            if theirs == 0 {
                Ordering::Greater
            } else {
                Ordering::Less
            }
        } else if mine == 0 {
            Ordering::Less
        } else {
            Ordering::Greater
        }
    }
}

impl PartialOrd for Face {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for Face {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, v) in self.vertices().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{v}")?;
        }
        write!(f, "}}")
    }
}

impl fmt::Display for Face {
    /// Space-separated labels, the facet-list line syntax.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, v) in self.vertices().enumerate() {
            if i > 0 {
                write!(f, " ")?;
            }
            write!(f, "{v}")?;
        }
        Ok(())
    }
}

impl Serialize for Face {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_seq(self.vertices())
    }
}

impl<'de> Deserialize<'de> for Face {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let raw = Vec::<usize>::deserialize(deserializer)?;
        Face::from_vertices(raw.iter().copied()).ok_or_else(|| {
            serde::de::Error::custom(format!("vertex labels must lie in 1..={MAX_VERTICES}"))
        })
    }
}

/// Sorts lexicographically and drops duplicates.
pub fn sort_faces(faces: &mut Vec<Face>) {
    faces.sort_unstable();
    faces.dedup();
}

/// Keeps the inclusion-maximal members of `faces`, sorted lexicographically.
pub fn maximal_faces(mut faces: Vec<Face>) -> Vec<Face> {
    sort_faces(&mut faces);
    // larger faces first so every kept face only needs checking against kept ones
    let mut by_size = faces;
    by_size.sort_by_key(|f| std::cmp::Reverse(f.len()));
    let mut kept: Vec<Face> = Vec::with_capacity(by_size.len());
    for f in by_size {
        if !kept.iter().any(|&g| f.is_subset(g)) {
            kept.push(f);
        }
    }
    kept.sort_unstable();
    kept
}
