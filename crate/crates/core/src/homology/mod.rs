//! Exact integral homology: chain complexes of free abelian groups, Smith
//! normal form, homology bases with coordinate maps, and the reduced
//! (co)homology of simplicial complexes.

mod chain;
mod group;
mod matrix;
mod smith;

pub use chain::{Chain, ChainKind, Cochain, CochainKind, Combination};
pub use group::{groups_isomorphic, AbelianGroup, GradedGroups};
pub use matrix::IntegerMatrix;
pub use smith::{
    invariant_factors, invariant_factors_sparse, invariant_factors_with, smith_normal_form,
    smith_normal_form_with, PivotRule, SmithDecomposition,
};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use thiserror::Error;

use crate::simplicial::{SimplicialComplex, VertexSet};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum HomologyError {
    #[error("vector in degree {degree} is not a cycle")]
    NotACycle { degree: isize },
    #[error("map does not send the relations of the source into those of the target")]
    NotWellDefined,
    #[error("dimension mismatch: expected {expected}, got {actual}")]
    DimensionMismatch { expected: usize, actual: usize },
    #[error("simplex {0} is not a face of the complex")]
    UnknownSimplex(VertexSet),
    #[error("boundary maps do not compose to zero at degree {0}")]
    NotAComplex(isize),
}

/// A bounded chain complex of finitely generated free abelian groups
/// `C_lowest ← C_lowest+1 ← …`, boundaries of degree −1.
#[derive(Debug, Clone)]
pub struct ChainComplex {
    lowest: isize,
    ranks: Vec<usize>,
    /// `boundaries[i]` is `∂: C_{lowest+i} → C_{lowest+i-1}`; the first one has zero rows.
    boundaries: Vec<IntegerMatrix>,
}

impl ChainComplex {
    pub fn new(
        lowest: isize,
        ranks: Vec<usize>,
        boundaries: Vec<IntegerMatrix>,
    ) -> Result<Self, HomologyError> {
        if ranks.len() != boundaries.len() {
            return Err(HomologyError::DimensionMismatch {
                expected: ranks.len(),
                actual: boundaries.len(),
            });
        }
        for (i, b) in boundaries.iter().enumerate() {
            let below = if i == 0 { 0 } else { ranks[i - 1] };
            if b.rows() != below || b.cols() != ranks[i] {
                return Err(HomologyError::DimensionMismatch {
                    expected: ranks[i],
                    actual: b.cols(),
                });
            }
        }
        let cx = ChainComplex {
            lowest,
            ranks,
            boundaries,
        };
        for i in 1..cx.boundaries.len() {
            if !cx.boundaries[i - 1].mul(&cx.boundaries[i]).is_zero() {
                return Err(HomologyError::NotAComplex(lowest + i as isize));
            }
        }
        Ok(cx)
    }

    pub fn empty() -> Self {
        ChainComplex {
            lowest: 0,
            ranks: Vec::new(),
            boundaries: Vec::new(),
        }
    }

    pub fn lowest_degree(&self) -> isize {
        self.lowest
    }

    /// Highest degree with a (possibly zero-rank) chain group, if any.
    pub fn highest_degree(&self) -> Option<isize> {
        (!self.ranks.is_empty()).then(|| self.lowest + self.ranks.len() as isize - 1)
    }

    pub fn degrees(&self) -> impl Iterator<Item = isize> {
        self.lowest..self.lowest + self.ranks.len() as isize
    }

    pub fn rank(&self, degree: isize) -> usize {
        self.slot(degree).map_or(0, |i| self.ranks[i])
    }

    fn slot(&self, degree: isize) -> Option<usize> {
        let i = degree - self.lowest;
        (i >= 0 && (i as usize) < self.ranks.len()).then_some(i as usize)
    }

    /// `∂: C_degree → C_{degree-1}` (a zero matrix outside the stored range).
    pub fn boundary(&self, degree: isize) -> IntegerMatrix {
        match self.slot(degree) {
            Some(i) => self.boundaries[i].clone(),
            None => IntegerMatrix::zeros(self.rank(degree - 1), self.rank(degree)),
        }
    }

    pub fn homology(&self) -> GradedGroups {
        let factors: Vec<Vec<BigInt>> = self.boundaries.iter().map(invariant_factors).collect();
        let mut out = GradedGroups::new();
        for (i, &n) in self.ranks.iter().enumerate() {
            let out_rank = factors[i].len();
            let (in_rank, torsion) = match factors.get(i + 1) {
                Some(f) => (f.len(), f.clone()),
                None => (0, Vec::new()),
            };
            out.set(
                self.lowest + i as isize,
                AbelianGroup::new(n - out_rank - in_rank, torsion),
            );
        }
        out
    }

    /// Cohomology of the dual cochain complex, computed from transposed boundaries.
    pub fn cohomology(&self) -> GradedGroups {
        let mut out = GradedGroups::new();
        for degree in self.degrees() {
            let incoming = invariant_factors(&self.boundary(degree).transpose());
            let outgoing = invariant_factors(&self.boundary(degree + 1).transpose());
            let free = self.rank(degree) - incoming.len() - outgoing.len();
            out.set(degree, AbelianGroup::new(free, incoming));
        }
        out
    }

    pub fn homology_basis(&self, degree: isize) -> HomologyBasis {
        HomologyBasis::at(
            degree,
            &self.boundary(degree + 1),
            &self.boundary(degree),
            self.rank(degree),
        )
    }

    pub fn cohomology_basis(&self, degree: isize) -> HomologyBasis {
        HomologyBasis::at(
            degree,
            &self.boundary(degree).transpose(),
            &self.boundary(degree + 1).transpose(),
            self.rank(degree),
        )
    }
}

/// Generators and a coordinate map for the homology of
/// `A --incoming--> C --outgoing--> B` at `C`.
///
/// Generators come first for torsion summands (orders ≥ 2, increasing by
/// divisibility), then free summands (order recorded as 0).
#[derive(Debug, Clone)]
pub struct HomologyBasis {
    degree: isize,
    dim: usize,
    group: AbelianGroup,
    generators: Vec<Vec<BigInt>>,
    orders: Vec<BigInt>,
    coordinate_rows: IntegerMatrix,
    cycle_rows: IntegerMatrix,
}

impl HomologyBasis {
    pub fn at(
        degree: isize,
        incoming: &IntegerMatrix,
        outgoing: &IntegerMatrix,
        dim: usize,
    ) -> Self {
        assert_eq!(outgoing.cols(), dim);
        assert_eq!(incoming.rows(), dim);
        let outer = smith_normal_form(outgoing);
        let r = outer.rank;
        let cycle_rows = outer.v_inv.select_rows(0..r);
        let kernel_coords = outer.v_inv.select_rows(r..dim);
        let kernel_basis = outer.v.select_columns(r..dim);
        let relations = kernel_coords.mul(incoming);
        let inner = smith_normal_form(&relations);
        let z = dim - r;
        let new_basis = kernel_basis.mul(&inner.u_inv);
        let new_coords = inner.u.mul(&kernel_coords);
        let mut picks = Vec::new();
        let mut orders = Vec::new();
        for i in 0..z {
            let d = if i < inner.rank {
                inner.diagonal[i].clone()
            } else {
                BigInt::zero()
            };
            if !d.is_one() {
                picks.push(i);
                orders.push(d);
            }
        }
        let generators = picks.iter().map(|&i| new_basis.column(i)).collect();
        let coordinate_rows = new_coords.select_rows(picks.iter().copied());
        let free = orders.iter().filter(|d| d.is_zero()).count();
        let group = AbelianGroup::new(free, orders.iter().filter(|d| !d.is_zero()).cloned());
        HomologyBasis {
            degree,
            dim,
            group,
            generators,
            orders,
            coordinate_rows,
            cycle_rows,
        }
    }

    pub fn degree(&self) -> isize {
        self.degree
    }

    /// Rank of the ambient chain group.
    pub fn chain_rank(&self) -> usize {
        self.dim
    }

    pub fn group(&self) -> &AbelianGroup {
        &self.group
    }

    pub fn generators(&self) -> &[Vec<BigInt>] {
        &self.generators
    }

    /// Order of each generator; 0 marks a free generator.
    pub fn orders(&self) -> &[BigInt] {
        &self.orders
    }

    pub fn is_cycle(&self, v: &[BigInt]) -> bool {
        self.cycle_rows.mul_vec(v).iter().all(Zero::is_zero)
    }

    /// Coordinates of the class of `v`; torsion coordinates reduced into `[0, order)`.
    pub fn coordinates(&self, v: &[BigInt]) -> Result<Vec<BigInt>, HomologyError> {
        if v.len() != self.dim {
            return Err(HomologyError::DimensionMismatch {
                expected: self.dim,
                actual: v.len(),
            });
        }
        if !self.is_cycle(v) {
            return Err(HomologyError::NotACycle {
                degree: self.degree,
            });
        }
        let mut coords = self.coordinate_rows.mul_vec(v);
        for (c, d) in coords.iter_mut().zip(&self.orders) {
            if !d.is_zero() {
                *c = c.mod_floor(d);
            }
        }
        Ok(coords)
    }

    /// Chain-level representative of the class with the given coordinates.
    pub fn representative(&self, coords: &[BigInt]) -> Vec<BigInt> {
        let mut out = vec![BigInt::zero(); self.dim];
        for (g, c) in self.generators.iter().zip(coords) {
            if c.is_zero() {
                continue;
            }
            for (o, x) in out.iter_mut().zip(g) {
                *o += c * x;
            }
        }
        out
    }
}

/// Decides whether the map of presented groups
/// `⊕ Z/source_orders → ⊕ Z/target_orders` with matrix `images`
/// (columns = images of source generators in target coordinates) is bijective.
/// An order of 0 means a free generator.
pub fn presented_map_is_isomorphism(
    images: &IntegerMatrix,
    source_orders: &[BigInt],
    target_orders: &[BigInt],
) -> Result<bool, HomologyError> {
    let (t, s) = (target_orders.len(), source_orders.len());
    if images.rows() != t || images.cols() != s {
        return Err(HomologyError::DimensionMismatch {
            expected: t * s,
            actual: images.rows() * images.cols(),
        });
    }
    for (j, o) in source_orders.iter().enumerate() {
        for (i, p) in target_orders.iter().enumerate() {
            let x = o * &images[(i, j)];
            let vanishes = if p.is_zero() {
                x.is_zero()
            } else {
                x.is_multiple_of(p)
            };
            if !vanishes {
                return Err(HomologyError::NotWellDefined);
            }
        }
    }
    let relations = IntegerMatrix::diagonal(t, t, target_orders);
    let combined = images.hconcat(&relations);
    let snf = smith_normal_form(&combined);
    let surjective = snf.rank == t && snf.invariant_factors().iter().all(One::is_one);
    if !surjective {
        return Ok(false);
    }
    // x ∈ Z^s lies in the kernel iff (x, y) ∈ ker [F | P] for some y.
    for col in snf.rank..combined.cols() {
        let kernel_vector = snf.v.column(col);
        for (x, o) in kernel_vector.iter().take(s).zip(source_orders) {
            let trivial = if o.is_zero() {
                x.is_zero()
            } else {
                x.is_multiple_of(o)
            };
            if !trivial {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Whether `f` (a chain-level matrix from the source chain group to the
/// target chain group) induces an isomorphism between the two homology groups.
pub fn induced_map_is_isomorphism(
    f: &IntegerMatrix,
    source: &HomologyBasis,
    target: &HomologyBasis,
) -> Result<bool, HomologyError> {
    if f.cols() != source.chain_rank() || f.rows() != target.chain_rank() {
        return Err(HomologyError::DimensionMismatch {
            expected: source.chain_rank(),
            actual: f.cols(),
        });
    }
    let mut images = IntegerMatrix::zeros(target.orders().len(), source.orders().len());
    for (j, g) in source.generators().iter().enumerate() {
        let coords = target.coordinates(&f.mul_vec(g))?;
        for (i, c) in coords.into_iter().enumerate() {
            images[(i, j)] = c;
        }
    }
    presented_map_is_isomorphism(&images, source.orders(), target.orders())
}

/// The augmented simplicial chain complex of a complex, with its simplices
/// listed per degree in canonical order.
#[derive(Debug, Clone)]
pub struct ReducedChainComplex {
    simplices: Vec<Vec<VertexSet>>,
    complex: ChainComplex,
}

impl ReducedChainComplex {
    pub fn chain_complex(&self) -> &ChainComplex {
        &self.complex
    }

    /// Simplices of dimension `k` (`k = -1` is the empty simplex).
    pub fn simplices(&self, k: isize) -> &[VertexSet] {
        if k < -1 {
            return &[];
        }
        self.simplices
            .get((k + 1) as usize)
            .map_or(&[], Vec::as_slice)
    }

    pub fn index_of(&self, simplex: VertexSet) -> Option<usize> {
        self.simplices(simplex.len() as isize - 1)
            .binary_search(&simplex)
            .ok()
    }

    pub fn boundary(&self, k: isize) -> IntegerMatrix {
        self.complex.boundary(k)
    }

    pub fn to_dense<K>(&self, c: &Combination<VertexSet, K>) -> Result<Vec<BigInt>, HomologyError> {
        let basis = self.simplices(c.degree());
        let mut out = vec![BigInt::zero(); basis.len()];
        for (s, x) in c.terms() {
            if s.len() as isize - 1 != c.degree() {
                return Err(HomologyError::UnknownSimplex(*s));
            }
            let i = basis
                .binary_search(s)
                .map_err(|_| HomologyError::UnknownSimplex(*s))?;
            out[i] = x.clone();
        }
        Ok(out)
    }

    pub fn from_dense<K>(&self, degree: isize, v: &[BigInt]) -> Combination<VertexSet, K> {
        Combination::from_terms(
            degree,
            self.simplices(degree)
                .iter()
                .copied()
                .zip(v.iter().cloned()),
        )
    }
}

/// Boundary matrices `∂ₖ` for `k = -1 ..= dim K` in canonical simplex order,
/// including the augmentation `C₀ → C₋₁ = Z⟨∅⟩`. The void complex has no chains.
pub fn reduced_chain_complex(k: &SimplicialComplex) -> ReducedChainComplex {
    let Some(dim) = k.dimension() else {
        return ReducedChainComplex {
            simplices: Vec::new(),
            complex: ChainComplex::empty(),
        };
    };
    let simplices: Vec<Vec<VertexSet>> = (-1..=dim).map(|d| k.faces_of_dim(d).to_vec()).collect();
    let ranks: Vec<usize> = simplices.iter().map(Vec::len).collect();
    let mut boundaries = vec![IntegerMatrix::zeros(0, 1)];
    for d in 0..=dim {
        let rows = &simplices[d as usize];
        let cols = &simplices[(d + 1) as usize];
        let mut b = IntegerMatrix::zeros(rows.len(), cols.len());
        for (j, s) in cols.iter().enumerate() {
            for (pos, v) in s.iter().enumerate() {
                let face = s.without(v);
                let i = rows
                    .binary_search(&face)
                    .expect("complex is closed under faces");
                b[(i, j)] = BigInt::from(if pos % 2 == 0 { 1 } else { -1 });
            }
        }
        boundaries.push(b);
    }
    let complex = ChainComplex {
        lowest: -1,
        ranks,
        boundaries,
    };
    ReducedChainComplex { simplices, complex }
}

/// Simplicial boundary of a chain, `∂[v₀…v_k] = Σ (−1)^i [v₀…v̂ᵢ…v_k]`.
pub fn simplicial_boundary(c: &Chain<VertexSet>) -> Chain<VertexSet> {
    let mut out = Chain::zero(c.degree() - 1);
    for (s, x) in c.terms() {
        for (pos, v) in s.iter().enumerate() {
            let sign = if pos % 2 == 0 { x.clone() } else { -x };
            out.add_term(s.without(v), sign);
        }
    }
    out
}

/// `H̃ₖ(K; Z)` for `k ≥ −1`. Void has no homology; `{∅}` has `H̃₋₁ = Z`.
pub fn reduced_homology(k: &SimplicialComplex) -> GradedGroups {
    reduced_chain_complex(k).complex.homology()
}

/// `H̃ᵏ(K; Z)`, from the transposed boundary matrices.
pub fn reduced_cohomology(k: &SimplicialComplex) -> GradedGroups {
    reduced_chain_complex(k).complex.cohomology()
}

/// `H̃(K) ≅ H̃(S^d)`. For `d = −1` this singles out `{∅}`.
pub fn has_sphere_homology(k: &SimplicialComplex, d: isize) -> bool {
    is_sphere_homology(&reduced_homology(k), d)
}

pub(crate) fn is_sphere_homology(h: &GradedGroups, d: isize) -> bool {
    let mut it = h.iter();
    matches!((it.next(), it.next()), (Some((deg, g)), None) if deg == d && g.is_infinite_cyclic())
}
