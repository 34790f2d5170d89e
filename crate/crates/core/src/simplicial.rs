//! Simplicial complexes on `[m] = {1, ..., m}` with ghost vertices.
//!
//! Faces are stored as bitmasks over the ambient vertex set, so every
//! complex is limited to [`MAX_VERTICES`] vertices. Two degenerate values are
//! kept apart: the *void* complex has no faces at all, while the complex
//! `{∅}` contains only the empty face (every vertex is a ghost).

use std::cmp::Ordering;
use std::fmt;

use thiserror::Error;

/// Hard cap on the ambient vertex count.
pub const MAX_VERTICES: usize = 32;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ComplexError {
    #[error("vertex {vertex} is outside 1..={m}")]
    VertexOutOfRange { vertex: usize, m: usize },
    #[error("{0} vertices exceeds the supported maximum of {MAX_VERTICES}")]
    TooManyVertices(usize),
    #[error("{0} is not a face of the complex")]
    NotAFace(VertexSet),
    #[error("operation is undefined on the void complex")]
    Void,
    #[error("face family is not closed under taking subsets: {0} is missing")]
    NotDownwardClosed(VertexSet),
    #[error("complexes live on different vertex counts ({0} and {1})")]
    VertexCountMismatch(usize, usize),
    #[error("pair is not nested: {0} lies in the small complex but not the big one")]
    PairNotNested(VertexSet),
}

/// A subset of `{1, ..., 32}`, bit `i - 1` standing for vertex `i`.
///
/// The [`Ord`] instance is the canonical simplex order used everywhere else:
/// first by cardinality, then lexicographically on the sorted vertex lists.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct VertexSet(u32);

impl VertexSet {
    pub const EMPTY: VertexSet = VertexSet(0);

    pub const fn from_bits(bits: u32) -> Self {
        VertexSet(bits)
    }

    pub const fn bits(self) -> u32 {
        self.0
    }

    /// `{1, ..., m}`.
    pub fn full(m: usize) -> Self {
        assert!(m <= MAX_VERTICES);
        if m == MAX_VERTICES {
            VertexSet(u32::MAX)
        } else {
            VertexSet((1u32 << m) - 1)
        }
    }

    /// Panics on a vertex outside `1..=32`; use [`VertexSet::checked`] for input data.
    pub fn from_vertices<I: IntoIterator<Item = usize>>(vertices: I) -> Self {
        let mut bits = 0u32;
        for v in vertices {
            assert!((1..=MAX_VERTICES).contains(&v), "vertex {v} out of range");
            bits |= 1 << (v - 1);
        }
        VertexSet(bits)
    }

    pub fn checked<I: IntoIterator<Item = usize>>(
        vertices: I,
        m: usize,
    ) -> Result<Self, ComplexError> {
        let mut bits = 0u32;
        for v in vertices {
            if v == 0 || v > m || v > MAX_VERTICES {
                return Err(ComplexError::VertexOutOfRange { vertex: v, m });
            }
            bits |= 1 << (v - 1);
        }
        Ok(VertexSet(bits))
    }

    pub fn singleton(v: usize) -> Self {
        Self::from_vertices([v])
    }

    pub const fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub const fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn contains(self, v: usize) -> bool {
        (1..=MAX_VERTICES).contains(&v) && self.0 & (1 << (v - 1)) != 0
    }

    pub const fn is_subset(self, other: VertexSet) -> bool {
        self.0 & !other.0 == 0
    }

    pub const fn is_disjoint(self, other: VertexSet) -> bool {
        self.0 & other.0 == 0
    }

    pub const fn union(self, other: VertexSet) -> Self {
        VertexSet(self.0 | other.0)
    }

    pub const fn intersection(self, other: VertexSet) -> Self {
        VertexSet(self.0 & other.0)
    }

    pub const fn difference(self, other: VertexSet) -> Self {
        VertexSet(self.0 & !other.0)
    }

    pub fn with(self, v: usize) -> Self {
        self.union(VertexSet::singleton(v))
    }

    pub fn without(self, v: usize) -> Self {
        self.difference(VertexSet::singleton(v))
    }

    /// Largest vertex, or 0 for the empty set.
    pub const fn max_vertex(self) -> usize {
        32 - self.0.leading_zeros() as usize
    }

    /// Vertices in ascending order.
    pub fn iter(self) -> VertexIter {
        VertexIter(self.0)
    }

    pub fn to_vec(self) -> Vec<usize> {
        self.iter().collect()
    }

    /// Number of members strictly below `v`.
    pub fn count_below(self, v: usize) -> usize {
        debug_assert!(v >= 1);
        (self.0 & ((1u32 << (v - 1)) - 1)).count_ones() as usize
    }

    /// All subsets, in increasing bit order.
    pub fn subsets(self) -> impl Iterator<Item = VertexSet> {
        let mask = self.0;
        let mut next = Some(0u32);
        std::iter::from_fn(move || {
            let cur = next?;
            next = if cur == mask {
                None
            } else {
                Some((cur.wrapping_sub(mask)) & mask)
            };
            Some(VertexSet(cur))
        })
    }

    /// Shift every vertex up by `offset`.
    pub fn shifted(self, offset: usize) -> Self {
        if self.0 == 0 {
            return self;
        }
        assert!(self.max_vertex() + offset <= MAX_VERTICES);
        VertexSet(self.0 << offset)
    }
}

impl Ord for VertexSet {
    fn cmp(&self, other: &Self) -> Ordering {
        self.len().cmp(&other.len()).then_with(|| {
            let diff = self.0 ^ other.0;
            if diff == 0 {
                Ordering::Equal
            } else if self.0 & diff & diff.wrapping_neg() != 0 {
                Ordering::Less
            } else {
                Ordering::Greater
            }
        })
    }
}

impl PartialOrd for VertexSet {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for VertexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for VertexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, v) in self.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{v}")?;
        }
        write!(f, "}}")
    }
}

impl FromIterator<usize> for VertexSet {
    fn from_iter<T: IntoIterator<Item = usize>>(iter: T) -> Self {
        VertexSet::from_vertices(iter)
    }
}

pub struct VertexIter(u32);

impl Iterator for VertexIter {
    type Item = usize;

    fn next(&mut self) -> Option<usize> {
        if self.0 == 0 {
            return None;
        }
        let v = self.0.trailing_zeros() as usize + 1;
        self.0 &= self.0 - 1;
        Some(v)
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let n = self.0.count_ones() as usize;
        (n, Some(n))
    }
}

impl ExactSizeIterator for VertexIter {}

/// Sign of the permutation sorting the concatenation of `first` and `second`
/// (each listed in ascending order) into ascending order. Requires disjoint sets.
pub fn shuffle_sign(first: VertexSet, second: VertexSet) -> i32 {
    debug_assert!(first.is_disjoint(second));
    let inversions: usize = second
        .iter()
        .map(|v| first.difference(VertexSet::full(v)))
        .map(|s| s.len())
        .sum();
    if inversions.is_multiple_of(2) {
        1
    } else {
        -1
    }
}

/// A downward-closed family of subsets of `[m]`.
///
/// Faces are kept sorted in canonical simplex order.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct SimplicialComplex {
    m: usize,
    faces: Vec<VertexSet>,
}

impl SimplicialComplex {
    /// Downward closure of `facets`. With no facets the result is `{∅}` when
    /// `include_empty` is set and the void complex otherwise.
    pub fn from_facets(
        m: usize,
        facets: &[VertexSet],
        include_empty: bool,
    ) -> Result<Self, ComplexError> {
        check_m(m)?;
        let ambient = VertexSet::full(m);
        for f in facets {
            if !f.is_subset(ambient) {
                let vertex = f.difference(ambient).iter().next().unwrap_or(0);
                return Err(ComplexError::VertexOutOfRange { vertex, m });
            }
        }
        if facets.is_empty() && !include_empty {
            return Ok(Self::void(m));
        }
        let mut faces: Vec<VertexSet> = facets.iter().flat_map(|f| f.subsets()).collect();
        faces.push(VertexSet::EMPTY);
        faces.sort_unstable();
        faces.dedup();
        Ok(SimplicialComplex { m, faces })
    }

    /// Convenience constructor from 1-based vertex lists.
    pub fn from_facet_lists(m: usize, facets: &[&[usize]]) -> Result<Self, ComplexError> {
        let sets = facets
            .iter()
            .map(|f| VertexSet::checked(f.iter().copied(), m))
            .collect::<Result<Vec<_>, _>>()?;
        Self::from_facets(m, &sets, true)
    }

    /// Builds a complex from an explicit face family, validating closure.
    pub fn from_faces(
        m: usize,
        faces: impl IntoIterator<Item = VertexSet>,
    ) -> Result<Self, ComplexError> {
        check_m(m)?;
        let ambient = VertexSet::full(m);
        let mut faces: Vec<VertexSet> = faces.into_iter().collect();
        faces.sort_unstable();
        faces.dedup();
        for &f in &faces {
            if !f.is_subset(ambient) {
                let vertex = f.difference(ambient).iter().next().unwrap_or(0);
                return Err(ComplexError::VertexOutOfRange { vertex, m });
            }
            for v in f.iter() {
                let sub = f.without(v);
                if faces.binary_search(&sub).is_err() {
                    return Err(ComplexError::NotDownwardClosed(sub));
                }
            }
        }
        if !faces.is_empty() && faces[0] != VertexSet::EMPTY {
            return Err(ComplexError::NotDownwardClosed(VertexSet::EMPTY));
        }
        Ok(SimplicialComplex { m, faces })
    }

    fn from_sorted_unchecked(m: usize, faces: Vec<VertexSet>) -> Self {
        debug_assert!(faces.windows(2).all(|w| w[0] < w[1]));
        SimplicialComplex { m, faces }
    }

    /// The complex with no faces at all.
    pub fn void(m: usize) -> Self {
        SimplicialComplex {
            m,
            faces: Vec::new(),
        }
    }

    /// `{∅}` on `m` ghost vertices.
    pub fn empty(m: usize) -> Self {
        SimplicialComplex {
            m,
            faces: vec![VertexSet::EMPTY],
        }
    }

    /// The full simplex `Δ^{m-1}`.
    pub fn simplex(m: usize) -> Self {
        let mut faces: Vec<VertexSet> = VertexSet::full(m).subsets().collect();
        faces.sort_unstable();
        SimplicialComplex { m, faces }
    }

    /// `∂Δ^{m-1}`: every proper subset of `[m]`.
    pub fn simplex_boundary(m: usize) -> Self {
        let full = VertexSet::full(m);
        let mut faces: Vec<VertexSet> = full.subsets().filter(|&s| s != full).collect();
        faces.sort_unstable();
        SimplicialComplex { m, faces }
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn is_void(&self) -> bool {
        self.faces.is_empty()
    }

    pub fn faces(&self) -> &[VertexSet] {
        &self.faces
    }

    pub fn num_faces(&self) -> usize {
        self.faces.len()
    }

    pub fn contains(&self, face: VertexSet) -> bool {
        self.faces.binary_search(&face).is_ok()
    }

    /// Faces with exactly `k + 1` vertices, in canonical order (`k = -1` gives `∅`).
    pub fn faces_of_dim(&self, k: isize) -> &[VertexSet] {
        if k < -1 {
            return &[];
        }
        let size = (k + 1) as usize;
        let start = self.faces.partition_point(|f| f.len() < size);
        let end = self.faces.partition_point(|f| f.len() <= size);
        &self.faces[start..end]
    }

    /// `None` for the void complex, `Some(-1)` for `{∅}`.
    pub fn dimension(&self) -> Option<isize> {
        self.faces.last().map(|f| f.len() as isize - 1)
    }

    /// `f_{-1}, f_0, ..., f_{dim}`.
    pub fn f_vector(&self) -> Vec<usize> {
        let Some(dim) = self.dimension() else {
            return Vec::new();
        };
        (-1..=dim).map(|k| self.faces_of_dim(k).len()).collect()
    }

    /// Reduced Euler characteristic `Σ (-1)^k f_k`, from `k = -1`.
    pub fn reduced_euler_characteristic(&self) -> i64 {
        self.faces
            .iter()
            .map(|f| if f.len() % 2 == 1 { 1 } else { -1 })
            .sum()
    }

    /// Vertices `i` with `{i}` a face.
    pub fn vertex_set(&self) -> VertexSet {
        self.faces_of_dim(0)
            .iter()
            .fold(VertexSet::EMPTY, |acc, f| acc.union(*f))
    }

    pub fn ghost_vertices(&self) -> VertexSet {
        VertexSet::full(self.m).difference(self.vertex_set())
    }

    /// Inclusion-maximal faces in canonical order.
    pub fn facets(&self) -> Vec<VertexSet> {
        self.faces
            .iter()
            .copied()
            .filter(|&f| {
                VertexSet::full(self.m)
                    .difference(f)
                    .iter()
                    .all(|v| !self.contains(f.with(v)))
            })
            .collect()
    }

    /// `K_J`: faces contained in `subset`, on the same ambient vertex set.
    pub fn full_subcomplex(&self, subset: VertexSet) -> Self {
        let faces = self
            .faces
            .iter()
            .copied()
            .filter(|f| f.is_subset(subset))
            .collect();
        Self::from_sorted_unchecked(self.m, faces)
    }

    pub fn link(&self, face: VertexSet) -> Result<Self, ComplexError> {
        if !self.contains(face) {
            return Err(ComplexError::NotAFace(face));
        }
        let faces = self
            .faces
            .iter()
            .copied()
            .filter(|t| t.is_disjoint(face) && self.contains(t.union(face)))
            .collect();
        Ok(Self::from_sorted_unchecked(self.m, faces))
    }

    /// Closed star `{σ ∈ K : σ ∪ {v} ∈ K}`; void when `v` is a ghost.
    pub fn star(&self, v: usize) -> Result<Self, ComplexError> {
        if v == 0 || v > self.m {
            return Err(ComplexError::VertexOutOfRange {
                vertex: v,
                m: self.m,
            });
        }
        let faces = self
            .faces
            .iter()
            .copied()
            .filter(|s| self.contains(s.with(v)))
            .collect();
        Ok(Self::from_sorted_unchecked(self.m, faces))
    }

    /// Join with `other`, whose vertices are shifted to `m+1..=m+m'`.
    pub fn join(&self, other: &SimplicialComplex) -> Result<Self, ComplexError> {
        let m = self.m + other.m;
        check_m(m)?;
        let mut faces = Vec::with_capacity(self.faces.len() * other.faces.len());
        for &s in &self.faces {
            for &t in &other.faces {
                faces.push(s.union(t.shifted(self.m)));
            }
        }
        faces.sort_unstable();
        Ok(Self::from_sorted_unchecked(m, faces))
    }

    /// Vertices `v` whose star is the whole complex.
    pub fn cone_vertices(&self) -> VertexSet {
        (1..=self.m)
            .filter(|&v| self.faces.iter().all(|s| self.contains(s.with(v))))
            .collect()
    }

    /// Full subcomplex on the vertices whose star is not all of `K`.
    ///
    /// Ghost vertices stay in the vertex set (their star is void).
    pub fn core(&self) -> Result<Self, ComplexError> {
        if self.is_void() {
            return Err(ComplexError::Void);
        }
        let keep = VertexSet::full(self.m).difference(self.cone_vertices());
        Ok(self.full_subcomplex(keep))
    }

    /// Inclusion-minimal subsets of `[m]` that are not faces.
    pub fn minimal_non_faces(&self) -> Result<Vec<VertexSet>, ComplexError> {
        if self.is_void() {
            return Err(ComplexError::Void);
        }
        let mut out: Vec<VertexSet> = VertexSet::full(self.m)
            .subsets()
            .filter(|&s| !self.contains(s) && s.iter().all(|v| self.contains(s.without(v))))
            .collect();
        out.sort_unstable();
        Ok(out)
    }

    /// Same faces on a different ambient vertex count (vertices must fit).
    pub fn with_vertex_count(&self, m: usize) -> Result<Self, ComplexError> {
        check_m(m)?;
        let ambient = VertexSet::full(m);
        if let Some(f) = self.faces.iter().find(|f| !f.is_subset(ambient)) {
            return Err(ComplexError::VertexOutOfRange {
                vertex: f.max_vertex(),
                m,
            });
        }
        Ok(Self::from_sorted_unchecked(m, self.faces.clone()))
    }

    /// Apply a vertex relabelling `v -> map[v - 1]` into an ambient set of size `m`.
    pub fn relabel(&self, m: usize, map: &[usize]) -> Result<Self, ComplexError> {
        let faces = self
            .faces
            .iter()
            .map(|f| VertexSet::checked(f.iter().map(|v| map[v - 1]), m))
            .collect::<Result<Vec<_>, _>>()?;
        Self::from_faces(m, faces)
    }
}

impl fmt::Debug for SimplicialComplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_void() {
            return write!(f, "Void(m={})", self.m);
        }
        write!(f, "K(m={}; ", self.m)?;
        let facets = self.facets();
        for (i, s) in facets.iter().enumerate() {
            if i > 0 {
                write!(f, " ")?;
            }
            write!(f, "{s}")?;
        }
        write!(f, ")")
    }
}

fn check_m(m: usize) -> Result<(), ComplexError> {
    if m > MAX_VERTICES {
        Err(ComplexError::TooManyVertices(m))
    } else {
        Ok(())
    }
}

/// A nested pair `small ⊆ big` on a common vertex set.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SimplicialPair {
    big: SimplicialComplex,
    small: SimplicialComplex,
}

impl SimplicialPair {
    pub fn new(big: SimplicialComplex, small: SimplicialComplex) -> Result<Self, ComplexError> {
        if big.m() != small.m() {
            return Err(ComplexError::VertexCountMismatch(big.m(), small.m()));
        }
        if let Some(&f) = small.faces().iter().find(|&&f| !big.contains(f)) {
            return Err(ComplexError::PairNotNested(f));
        }
        Ok(SimplicialPair { big, small })
    }

    pub fn big(&self) -> &SimplicialComplex {
        &self.big
    }

    pub fn small(&self) -> &SimplicialComplex {
        &self.small
    }

    pub fn m(&self) -> usize {
        self.big.m()
    }
}

/// A few complexes that recur in tests and examples.
pub mod named {
    use super::*;

    /// `∂Δ¹ ∗ ∂Δ¹ ∗ ∂Δ¹` with antipodal pairs `{1,2}, {3,4}, {5,6}`.
    pub fn octahedron() -> SimplicialComplex {
        let mut facets = Vec::new();
        for a in [1, 2] {
            for b in [3, 4] {
                for c in [5, 6] {
                    facets.push(VertexSet::from_vertices([a, b, c]));
                }
            }
        }
        SimplicialComplex::from_facets(6, &facets, true).unwrap()
    }

    /// The `n`-cycle `1 - 2 - ... - n - 1`.
    pub fn cycle(n: usize) -> SimplicialComplex {
        let facets: Vec<_> = (1..=n)
            .map(|i| VertexSet::from_vertices([i, i % n + 1]))
            .collect();
        SimplicialComplex::from_facets(n, &facets, true).unwrap()
    }

    pub fn pentagon() -> SimplicialComplex {
        cycle(5)
    }

    /// The path `1 - 2 - ... - n`.
    pub fn path(n: usize) -> SimplicialComplex {
        if n == 1 {
            return SimplicialComplex::simplex(1);
        }
        let facets: Vec<_> = (1..n)
            .map(|i| VertexSet::from_vertices([i, i + 1]))
            .collect();
        SimplicialComplex::from_facets(n, &facets, true).unwrap()
    }

    /// `n` isolated vertices.
    pub fn points(n: usize) -> SimplicialComplex {
        let facets: Vec<_> = (1..=n).map(VertexSet::singleton).collect();
        SimplicialComplex::from_facets(n, &facets, true).unwrap()
    }

    /// The 6-vertex real projective plane.
    pub fn rp2_6() -> SimplicialComplex {
        let facets: Vec<_> = [
            [1, 2, 4],
            [1, 2, 5],
            [1, 3, 4],
            [1, 3, 6],
            [1, 5, 6],
            [2, 3, 5],
            [2, 3, 6],
            [2, 4, 6],
            [3, 4, 5],
            [4, 5, 6],
        ]
        .iter()
        .map(|f| VertexSet::from_vertices(f.iter().copied()))
        .collect();
        SimplicialComplex::from_facets(6, &facets, true).unwrap()
    }

    /// Suspension of the pentagon: the 7-vertex 2-sphere, apexes 1 and 2.
    pub fn suspended_pentagon() -> SimplicialComplex {
        let mut facets = Vec::new();
        for apex in [1, 2] {
            for i in 0..5 {
                facets.push(VertexSet::from_vertices([apex, 3 + i, 3 + (i + 1) % 5]));
            }
        }
        SimplicialComplex::from_facets(7, &facets, true).unwrap()
    }
}

#[cfg(test)]
mod tests {
    use super::named::*;
    use super::*;
    use proptest::prelude::*;

    fn vs(v: &[usize]) -> VertexSet {
        VertexSet::from_vertices(v.iter().copied())
    }

    #[test]
    fn canonical_order_is_size_then_lex() {
        let mut sets = vec![vs(&[2, 3]), vs(&[1, 4]), vs(&[3]), vs(&[]), vs(&[1, 3])];
        sets.sort();
        assert_eq!(
            sets,
            vec![vs(&[]), vs(&[3]), vs(&[1, 3]), vs(&[1, 4]), vs(&[2, 3])]
        );
    }

    #[test]
    fn shuffle_sign_counts_inversions() {
        assert_eq!(shuffle_sign(vs(&[1]), vs(&[2])), 1);
        assert_eq!(shuffle_sign(vs(&[2]), vs(&[1])), -1);
        assert_eq!(shuffle_sign(vs(&[2, 3]), vs(&[1])), 1);
        assert_eq!(shuffle_sign(vs(&[3]), vs(&[1, 2])), 1);
        assert_eq!(shuffle_sign(vs(&[2, 4]), vs(&[1, 3])), -1);
        assert_eq!(shuffle_sign(VertexSet::EMPTY, vs(&[1, 3])), 1);
    }

    #[test]
    fn octahedron_has_27_faces() {
        let k = octahedron();
        assert_eq!(k.num_faces(), 27);
        assert_eq!(k.f_vector(), vec![1, 6, 12, 8]);
        assert_eq!(k.dimension(), Some(2));
    }

    #[test]
    fn from_facets_degenerate_cases() {
        let e = SimplicialComplex::from_facets(3, &[], true).unwrap();
        assert_eq!(e.faces(), &[VertexSet::EMPTY]);
        assert_eq!(e.ghost_vertices(), VertexSet::full(3));
        assert_eq!(e.dimension(), Some(-1));
        let v = SimplicialComplex::from_facets(3, &[], false).unwrap();
        assert!(v.is_void());
        assert_eq!(v.dimension(), None);
        let d1 = SimplicialComplex::from_facets(2, &[vs(&[1, 2])], false).unwrap();
        assert_eq!(d1.faces(), &[vs(&[]), vs(&[1]), vs(&[2]), vs(&[1, 2])]);
        assert_eq!(
            SimplicialComplex::from_facets(2, &[vs(&[1, 3])], true),
            Err(ComplexError::VertexOutOfRange { vertex: 3, m: 2 })
        );
        assert_eq!(pentagon().dimension(), Some(1));
    }

    #[test]
    fn full_subcomplexes_of_octahedron() {
        let k = octahedron();
        assert_eq!(
            k.full_subcomplex(vs(&[1, 2])).faces(),
            &[vs(&[]), vs(&[1]), vs(&[2])]
        );
        let tri = k.full_subcomplex(vs(&[1, 3, 5]));
        assert_eq!(
            tri.faces(),
            SimplicialComplex::simplex(5)
                .full_subcomplex(vs(&[1, 3, 5]))
                .faces()
        );
        assert_eq!(k.full_subcomplex(VertexSet::full(6)), k);
    }

    #[test]
    fn links() {
        let k = octahedron();
        let lk = k.link(vs(&[1])).unwrap();
        let square =
            SimplicialComplex::from_facet_lists(6, &[&[3, 5], &[5, 4], &[4, 6], &[6, 3]]).unwrap();
        assert_eq!(lk, square);
        assert_eq!(k.link(VertexSet::EMPTY).unwrap(), k);
        let b = SimplicialComplex::simplex_boundary(3);
        assert_eq!(
            b.link(vs(&[1])).unwrap().faces(),
            &[vs(&[]), vs(&[2]), vs(&[3])]
        );
        assert_eq!(
            k.link(vs(&[1, 2])),
            Err(ComplexError::NotAFace(vs(&[1, 2])))
        );
    }

    #[test]
    fn stars() {
        let cone = SimplicialComplex::from_facet_lists(3, &[&[1, 3], &[2, 3]]).unwrap();
        assert_eq!(cone.star(3).unwrap(), cone);
        let k = octahedron();
        let brute: Vec<VertexSet> = k
            .faces()
            .iter()
            .copied()
            .filter(|s| k.contains(s.union(vs(&[1]))))
            .collect();
        assert_eq!(k.star(1).unwrap().faces(), brute.as_slice());
        assert!(brute.iter().all(|s| !s.contains(2)));
        let ghost = SimplicialComplex::from_facet_lists(3, &[&[1, 2]]).unwrap();
        assert!(ghost.star(3).unwrap().is_void());
    }

    #[test]
    fn joins() {
        let s0 = SimplicialComplex::simplex_boundary(2);
        let sq = s0.join(&s0).unwrap();
        assert_eq!(sq.f_vector(), vec![1, 4, 4]);
        assert_eq!(sq.join(&s0).unwrap(), octahedron());
        let padded = s0.join(&SimplicialComplex::empty(2)).unwrap();
        assert_eq!(padded.m(), 4);
        assert_eq!(padded.faces(), s0.faces());
        assert!(s0.join(&SimplicialComplex::void(1)).unwrap().is_void());
    }

    #[test]
    fn cores() {
        let tri = SimplicialComplex::simplex(3);
        let c = tri.core().unwrap();
        assert_eq!(c.faces(), &[VertexSet::EMPTY]);
        assert_eq!(octahedron().core().unwrap(), octahedron());
        let cone = SimplicialComplex::from_facet_lists(3, &[&[1, 3], &[2, 3]]).unwrap();
        assert_eq!(cone.core().unwrap().faces(), &[vs(&[]), vs(&[1]), vs(&[2])]);
        assert_eq!(SimplicialComplex::void(2).core(), Err(ComplexError::Void));
    }

    #[test]
    fn minimal_non_faces_examples() {
        assert_eq!(
            octahedron().minimal_non_faces().unwrap(),
            vec![vs(&[1, 2]), vs(&[3, 4]), vs(&[5, 6])]
        );
        assert_eq!(
            SimplicialComplex::simplex_boundary(3)
                .minimal_non_faces()
                .unwrap(),
            vec![vs(&[1, 2, 3])]
        );
        assert!(SimplicialComplex::simplex(4)
            .minimal_non_faces()
            .unwrap()
            .is_empty());
        let ghost = SimplicialComplex::empty(2);
        assert_eq!(ghost.minimal_non_faces().unwrap(), vec![vs(&[1]), vs(&[2])]);
    }

    #[test]
    fn from_faces_rejects_open_families() {
        assert_eq!(
            SimplicialComplex::from_faces(2, [vs(&[]), vs(&[1, 2]), vs(&[1])]),
            Err(ComplexError::NotDownwardClosed(vs(&[2])))
        );
    }

    #[test]
    fn pair_containment() {
        let big = named::path(3);
        let small = SimplicialComplex::from_facet_lists(3, &[&[1], &[3]]).unwrap();
        assert!(SimplicialPair::new(big.clone(), small.clone()).is_ok());
        assert!(matches!(
            SimplicialPair::new(small, big),
            Err(ComplexError::PairNotNested(_))
        ));
    }

    fn arb_complex(max_m: usize) -> impl Strategy<Value = SimplicialComplex> {
        (1..=max_m).prop_flat_map(|m| {
            prop::collection::vec(0u32..(1 << m), 0..6).prop_map(move |bits| {
                let facets: Vec<_> = bits.into_iter().map(VertexSet::from_bits).collect();
                SimplicialComplex::from_facets(m, &facets, true).unwrap()
            })
        })
    }

    proptest! {
        #[test]
        fn full_subcomplex_composes(k in arb_complex(6), a in 0u32..64, b in 0u32..64) {
            let (a, b) = (VertexSet::from_bits(a), VertexSet::from_bits(b));
            prop_assert_eq!(k.full_subcomplex(a).full_subcomplex(b), k.full_subcomplex(a.intersection(b)));
        }

        #[test]
        fn links_are_closed(k in arb_complex(6)) {
            for &f in k.faces() {
                let lk = k.link(f).unwrap();
                prop_assert!(SimplicialComplex::from_faces(k.m(), lk.faces().iter().copied()).is_ok());
            }
        }

        #[test]
        fn core_is_idempotent(k in arb_complex(6)) {
            let c = k.core().unwrap();
            prop_assert_eq!(c.core().unwrap(), c);
        }

        #[test]
        fn minimal_non_faces_determine_faces(k in arb_complex(6)) {
            let mnf = k.minimal_non_faces().unwrap();
            for s in VertexSet::full(k.m()).subsets() {
                let avoids = mnf.iter().all(|n| !n.is_subset(s));
                prop_assert_eq!(k.contains(s), avoids);
            }
        }

        #[test]
        fn join_is_associative(a in arb_complex(3), b in arb_complex(3), c in arb_complex(3)) {
            let left = a.join(&b).unwrap().join(&c).unwrap();
            let right = a.join(&b.join(&c).unwrap()).unwrap();
            prop_assert_eq!(left, right);
        }
    }
}
