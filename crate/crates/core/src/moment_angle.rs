//! The cellular model of the moment-angle complex `Z_K`.
//!
//! A cell `κ(A, B)` has a circle factor on every vertex of `A`, a disk factor
//! on every vertex of `B`, and the base point elsewhere. The cellular chain
//! complex splits as a direct sum over `J = A ∪ B`, and the map
//! `h: σ ↦ sgn(σ, J)·κ(J ∖ σ, σ)` identifies the `J`-summand with the reduced
//! simplicial chains of the full subcomplex `K_J` shifted up by `|J| + 1`.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::marker::PhantomData;

use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};
use rayon::prelude::*;
use thiserror::Error;

use crate::homology::{
    invariant_factors_sparse, reduced_chain_complex, AbelianGroup, Chain, ChainComplex, ChainKind,
    Cochain, CochainKind, Combination, GradedGroups, HomologyBasis, HomologyError,
};
use crate::simplicial::{shuffle_sign, SimplicialComplex, VertexSet};

/// Default vertex cap for the Hochster decomposition.
pub const HOCHSTER_MAX_VERTICES: usize = 16;
/// Default vertex cap for the direct cellular computation.
pub const DIRECT_MAX_VERTICES: usize = 10;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MomentAngleError {
    #[error("VOID complex has no moment-angle model")]
    Void,
    #[error("complex has {m} vertices, above the configured cap of {cap}")]
    CapExceeded { m: usize, cap: usize },
    #[error("cell {0} is not a cell of Z_K")]
    CellNotInZk(Cell),
    #[error("circle and disk parts of a cell must be disjoint ({circles} and {disks})")]
    OverlappingCell {
        circles: VertexSet,
        disks: VertexSet,
    },
    #[error("simplex {simplex} is not a face of the full subcomplex on {subset}")]
    SimplexNotInSubcomplex {
        simplex: VertexSet,
        subset: VertexSet,
    },
    #[error("cell {cell} has dimension {actual}, expected {expected}")]
    DegreeMismatch {
        cell: Cell,
        expected: isize,
        actual: isize,
    },
    #[error("{kind} of degree {degree} is not closed")]
    NotClosed { kind: &'static str, degree: isize },
    #[error(transparent)]
    Homology(#[from] HomologyError),
}

/// The cell `κ(circles, disks)` of `(D², S¹)^K`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Cell {
    circles: VertexSet,
    disks: VertexSet,
}

impl Cell {
    pub fn new(circles: VertexSet, disks: VertexSet) -> Result<Self, MomentAngleError> {
        if !circles.is_disjoint(disks) {
            return Err(MomentAngleError::OverlappingCell { circles, disks });
        }
        Ok(Cell { circles, disks })
    }

    /// The image of the simplex `σ ⊆ J` under `h`, with its sign.
    pub fn from_simplex(subset: VertexSet, simplex: VertexSet) -> (Cell, i32) {
        debug_assert!(simplex.is_subset(subset));
        (
            Cell {
                circles: subset.difference(simplex),
                disks: simplex,
            },
            h_sign(simplex, subset),
        )
    }

    pub fn circles(self) -> VertexSet {
        self.circles
    }

    pub fn disks(self) -> VertexSet {
        self.disks
    }

    /// `J = circles ∪ disks`, the summand the cell belongs to.
    pub fn support(self) -> VertexSet {
        self.circles.union(self.disks)
    }

    pub fn dimension(self) -> isize {
        (self.circles.len() + 2 * self.disks.len()) as isize
    }

    pub fn lies_in(self, k: &SimplicialComplex) -> bool {
        k.contains(self.disks) && self.support().is_subset(VertexSet::full(k.m()))
    }
}

impl fmt::Display for Cell {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "κ({},{})", self.circles, self.disks)
    }
}

impl fmt::Debug for Cell {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

pub type ZkChain = Chain<Cell>;
pub type ZkCochain = Cochain<Cell>;

/// `sgn(σ, J)`: sign of the permutation sorting `(σ, J ∖ σ)` ascending.
pub fn h_sign(simplex: VertexSet, subset: VertexSet) -> i32 {
    shuffle_sign(simplex, subset.difference(simplex))
}

/// Coefficient of `κ(A ∪ {v}, B ∖ {v})` in `∂κ(A, B)` for `v ∈ B`, namely
/// `(−1)^{|B| − 1 + #{a ∈ A : a < v}}`.
fn face_sign(cell: Cell, v: usize) -> i32 {
    if (cell.disks.len() - 1 + cell.circles.count_below(v)).is_multiple_of(2) {
        1
    } else {
        -1
    }
}

fn check_cells<K>(c: &Combination<Cell, K>, k: &SimplicialComplex) -> Result<(), MomentAngleError> {
    for (cell, _) in c.terms() {
        if !cell.lies_in(k) {
            return Err(MomentAngleError::CellNotInZk(*cell));
        }
        if cell.dimension() != c.degree() {
            return Err(MomentAngleError::DegreeMismatch {
                cell: *cell,
                expected: c.degree(),
                actual: cell.dimension(),
            });
        }
    }
    Ok(())
}

/// `h` applied to a simplicial chain of `K_J`; the result has degree `l + |J| + 1`.
pub fn h_transport(
    subset: VertexSet,
    c: &Chain<VertexSet>,
    k: &SimplicialComplex,
) -> Result<ZkChain, MomentAngleError> {
    transport(subset, c, k)
}

/// The dual transport `τ* ↦ sgn(τ, J)·κ(J ∖ τ, τ)*` of a simplicial cochain of `K_J`.
pub fn h_transport_cochain(
    subset: VertexSet,
    c: &Cochain<VertexSet>,
    k: &SimplicialComplex,
) -> Result<ZkCochain, MomentAngleError> {
    transport(subset, c, k)
}

fn transport<K>(
    subset: VertexSet,
    c: &Combination<VertexSet, K>,
    k: &SimplicialComplex,
) -> Result<Combination<Cell, K>, MomentAngleError> {
    let mut out = Combination::zero(c.degree() + subset.len() as isize + 1);
    for (s, x) in c.terms() {
        if !s.is_subset(subset) || !k.contains(*s) || s.len() as isize - 1 != c.degree() {
            return Err(MomentAngleError::SimplexNotInSubcomplex {
                simplex: *s,
                subset,
            });
        }
        let (cell, sign) = Cell::from_simplex(subset, *s);
        out.add_term(cell, x * sign);
    }
    Ok(out)
}

/// Splits a cellular (co)chain into its `J`-summands and pulls each back
/// along `h` to a simplicial (co)chain of `K_J`.
pub fn split_by_summand<K>(
    c: &Combination<Cell, K>,
) -> BTreeMap<VertexSet, Combination<VertexSet, K>> {
    let mut out: BTreeMap<VertexSet, Combination<VertexSet, K>> = BTreeMap::new();
    for (cell, x) in c.terms() {
        let j = cell.support();
        let entry = out
            .entry(j)
            .or_insert_with(|| Combination::zero(c.degree() - j.len() as isize - 1));
        entry.add_term(cell.disks, x * h_sign(cell.disks, j));
    }
    out.retain(|_, v| !v.is_zero());
    out
}

/// Cellular boundary, `∂κ(A, B) = Σ_{v ∈ B} ε·κ(A ∪ {v}, B ∖ {v})`, with the
/// signs that make `h` a chain map.
pub fn zk_boundary(c: &ZkChain, k: &SimplicialComplex) -> Result<ZkChain, MomentAngleError> {
    check_cells(c, k)?;
    Ok(boundary_unchecked(c))
}

fn boundary_unchecked(c: &ZkChain) -> ZkChain {
    let mut out = ZkChain::zero(c.degree() - 1);
    for (cell, x) in c.terms() {
        for v in cell.disks.iter() {
            let face = Cell {
                circles: cell.circles.with(v),
                disks: cell.disks.without(v),
            };
            out.add_term(face, x * face_sign(*cell, v));
        }
    }
    out
}

/// Cellular coboundary, the transpose of [`zk_boundary`].
pub fn zk_coboundary(c: &ZkCochain, k: &SimplicialComplex) -> Result<ZkCochain, MomentAngleError> {
    check_cells(c, k)?;
    let mut out = ZkCochain::zero(c.degree() + 1);
    for (cell, x) in c.terms() {
        for v in cell.circles.iter() {
            let coface = Cell {
                circles: cell.circles.without(v),
                disks: cell.disks.with(v),
            };
            if k.contains(coface.disks) {
                out.add_term(coface, x * face_sign(coface, v));
            }
        }
    }
    Ok(out)
}

/// Every cell of `Z_K`, sorted.
pub fn cells(k: &SimplicialComplex) -> Vec<Cell> {
    let full = VertexSet::full(k.m());
    let mut out: Vec<Cell> = k
        .faces()
        .iter()
        .flat_map(|&s| {
            full.difference(s).subsets().map(move |a| Cell {
                circles: a,
                disks: s,
            })
        })
        .collect();
    out.sort();
    out
}

/// Which kind of (co)homology a [`Bigraded`] table holds.
pub trait Variance: Send + Sync + 'static {
    const HOMOLOGICAL: bool;
}

impl Variance for ChainKind {
    const HOMOLOGICAL: bool = true;
}

impl Variance for CochainKind {
    const HOMOLOGICAL: bool = false;
}

/// One nonzero summand `H̃_l(K_J)` (or `H̃^l(K_J)`) of the Hochster decomposition.
#[derive(Debug, Clone)]
pub struct Summand {
    subset: VertexSet,
    degree: isize,
    simplices: Vec<VertexSet>,
    basis: HomologyBasis,
}

impl Summand {
    pub fn subset(&self) -> VertexSet {
        self.subset
    }

    /// Reduced degree `l` in `K_J`.
    pub fn degree(&self) -> isize {
        self.degree
    }

    /// `l + |J| + 1`.
    pub fn total_degree(&self) -> isize {
        self.degree + self.subset.len() as isize + 1
    }

    pub fn group(&self) -> &AbelianGroup {
        self.basis.group()
    }

    pub fn basis(&self) -> &HomologyBasis {
        &self.basis
    }

    /// The `l`-simplices of `K_J` indexing the dense vectors of the basis.
    pub fn simplices(&self) -> &[VertexSet] {
        &self.simplices
    }

    pub fn to_dense<K>(&self, c: &Combination<VertexSet, K>) -> Vec<BigInt> {
        let mut out = vec![BigInt::zero(); self.simplices.len()];
        for (s, x) in c.terms() {
            let i = self
                .simplices
                .binary_search(s)
                .expect("simplex indexed by summand");
            out[i] = x.clone();
        }
        out
    }

    pub fn from_dense<K>(&self, v: &[BigInt]) -> Combination<VertexSet, K> {
        Combination::from_terms(
            self.degree,
            self.simplices.iter().copied().zip(v.iter().cloned()),
        )
    }
}

/// The Hochster decomposition `H(Z_K) ≅ ⊕_J H̃(K_J)` with representatives.
///
/// Only nonzero summands are stored. They are sorted by total degree, then
/// by `J` in canonical order, then by `l`.
#[derive(Debug, Clone)]
pub struct Bigraded<V: Variance> {
    complex: SimplicialComplex,
    summands: Vec<Summand>,
    index: BTreeMap<(VertexSet, isize), usize>,
    _variance: PhantomData<V>,
}

pub type BigradedCohomology = Bigraded<CochainKind>;
pub type BigradedHomology = Bigraded<ChainKind>;

impl<V: Variance> Bigraded<V> {
    pub fn compute(k: &SimplicialComplex, cap: usize) -> Result<Self, MomentAngleError> {
        if k.is_void() {
            return Err(MomentAngleError::Void);
        }
        if k.m() > cap {
            return Err(MomentAngleError::CapExceeded { m: k.m(), cap });
        }
        let subsets: Vec<VertexSet> = VertexSet::full(k.m()).subsets().collect();
        let mut summands: Vec<Summand> = subsets
            .par_iter()
            .flat_map_iter(|&j| summands_of::<V>(k, j))
            .collect();
        summands.sort_by(|a, b| {
            (a.total_degree(), a.subset, a.degree).cmp(&(b.total_degree(), b.subset, b.degree))
        });
        let index = summands
            .iter()
            .enumerate()
            .map(|(i, s)| ((s.subset, s.degree), i))
            .collect();
        Ok(Bigraded {
            complex: k.clone(),
            summands,
            index,
            _variance: PhantomData,
        })
    }

    pub fn complex(&self) -> &SimplicialComplex {
        &self.complex
    }

    pub fn summands(&self) -> &[Summand] {
        &self.summands
    }

    pub fn get(&self, subset: VertexSet, degree: isize) -> Option<&Summand> {
        self.index
            .get(&(subset, degree))
            .map(|&i| &self.summands[i])
    }

    /// Nonzero summands in total degree `p`, in layout order.
    pub fn in_degree(&self, p: isize) -> impl Iterator<Item = &Summand> {
        self.summands.iter().filter(move |s| s.total_degree() == p)
    }

    /// The totalized groups `H^p(Z_K)` (or `H_p`).
    pub fn total(&self) -> GradedGroups {
        let mut out = GradedGroups::new();
        for s in &self.summands {
            out.add(s.total_degree(), s.group());
        }
        out
    }

    pub fn top_degree(&self) -> Option<isize> {
        self.summands.last().map(Summand::total_degree)
    }

    /// The cellular representative of generator `g` of a summand.
    pub fn generator(&self, summand: &Summand, g: usize) -> Combination<Cell, V> {
        let simplicial: Combination<VertexSet, V> =
            summand.from_dense(&summand.basis.generators()[g]);
        transport(summand.subset, &simplicial, &self.complex).expect("generators live in K_J")
    }

    /// Whether a cellular (co)chain is a (co)cycle.
    pub fn is_closed(&self, c: &Combination<Cell, V>) -> Result<bool, MomentAngleError> {
        check_cells(c, &self.complex)?;
        for (j, part) in split_by_summand(c) {
            let kj = self.complex.full_subcomplex(j);
            let rc = reduced_chain_complex(&kj);
            let dense = rc.to_dense(&part)?;
            let d = part.degree();
            let differential = if V::HOMOLOGICAL {
                rc.boundary(d)
            } else {
                rc.boundary(d + 1).transpose()
            };
            if differential.cols() > 0 && !differential.mul_vec(&dense).iter().all(Zero::is_zero) {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Coordinates of the class of a (co)cycle, concatenated over
    /// [`Bigraded::in_degree`] in layout order.
    pub fn coordinates(&self, c: &Combination<Cell, V>) -> Result<Vec<BigInt>, MomentAngleError> {
        if !self.is_closed(c)? {
            let kind = if V::HOMOLOGICAL { "chain" } else { "cochain" };
            return Err(MomentAngleError::NotClosed {
                kind,
                degree: c.degree(),
            });
        }
        let parts = split_by_summand(c);
        let mut out = Vec::new();
        for s in self.in_degree(c.degree()) {
            match parts.get(&s.subset) {
                Some(part) => out.extend(s.basis.coordinates(&s.to_dense(part))?),
                None => out.extend(std::iter::repeat_n(BigInt::zero(), s.basis.orders().len())),
            }
        }
        Ok(out)
    }

    /// A representative with the given coordinates in degree `p`.
    pub fn representative(&self, p: isize, coords: &[BigInt]) -> Combination<Cell, V> {
        let mut out = Combination::zero(p);
        let mut offset = 0;
        for s in self.in_degree(p) {
            let n = s.basis.orders().len();
            let dense = s.basis.representative(&coords[offset..offset + n]);
            offset += n;
            let simplicial: Combination<VertexSet, V> = s.from_dense(&dense);
            out.add_assign(
                &transport(s.subset, &simplicial, &self.complex)
                    .expect("summand simplices lie in K_J"),
            );
        }
        out
    }

    /// Orders of the generators in degree `p` (0 for free ones), in layout order.
    pub fn orders(&self, p: isize) -> Vec<BigInt> {
        self.in_degree(p)
            .flat_map(|s| s.basis.orders().iter().cloned())
            .collect()
    }
}

fn summands_of<V: Variance>(k: &SimplicialComplex, j: VertexSet) -> Vec<Summand> {
    let kj = k.full_subcomplex(j);
    let rc = reduced_chain_complex(&kj);
    let cx: &ChainComplex = rc.chain_complex();
    cx.degrees()
        .filter_map(|l| {
            let basis = if V::HOMOLOGICAL {
                cx.homology_basis(l)
            } else {
                cx.cohomology_basis(l)
            };
            (!basis.group().is_zero()).then(|| Summand {
                subset: j,
                degree: l,
                simplices: rc.simplices(l).to_vec(),
                basis,
            })
        })
        .collect()
}

/// Bigraded cohomology `⊕_J H̃^*(K_J)` with the default cap.
pub fn hochster_cohomology(k: &SimplicialComplex) -> Result<BigradedCohomology, MomentAngleError> {
    BigradedCohomology::compute(k, HOCHSTER_MAX_VERTICES)
}

/// Bigraded homology `⊕_J H̃_*(K_J)` with the default cap.
pub fn hochster_homology(k: &SimplicialComplex) -> Result<BigradedHomology, MomentAngleError> {
    BigradedHomology::compute(k, HOCHSTER_MAX_VERTICES)
}

/// `H^*(Z_K; Z)` by degree.
pub fn zk_cohomology_groups(k: &SimplicialComplex) -> Result<GradedGroups, MomentAngleError> {
    zk_cohomology_groups_capped(k, HOCHSTER_MAX_VERTICES)
}

/// Groups only; skips representatives.
pub fn zk_cohomology_groups_capped(
    k: &SimplicialComplex,
    cap: usize,
) -> Result<GradedGroups, MomentAngleError> {
    if k.is_void() {
        return Err(MomentAngleError::Void);
    }
    if k.m() > cap {
        return Err(MomentAngleError::CapExceeded { m: k.m(), cap });
    }
    let subsets: Vec<VertexSet> = VertexSet::full(k.m()).subsets().collect();
    let parts: Vec<(isize, GradedGroups)> = subsets
        .par_iter()
        .map(|&j| {
            (
                j.len() as isize + 1,
                crate::homology::reduced_cohomology(&k.full_subcomplex(j)),
            )
        })
        .collect();
    let mut out = GradedGroups::new();
    for (shift, groups) in parts {
        for (l, g) in groups.iter() {
            out.add(l + shift, g);
        }
    }
    Ok(out)
}

/// Homology of the full cellular chain complex of `Z_K`, with the default cap.
pub fn zk_homology_direct(k: &SimplicialComplex) -> Result<GradedGroups, MomentAngleError> {
    zk_homology_direct_capped(k, DIRECT_MAX_VERTICES)
}

/// Builds every cell and every cellular boundary matrix and reduces them,
/// without using the splitting over `J`.
pub fn zk_homology_direct_capped(
    k: &SimplicialComplex,
    cap: usize,
) -> Result<GradedGroups, MomentAngleError> {
    if k.is_void() {
        return Err(MomentAngleError::Void);
    }
    if k.m() > cap {
        return Err(MomentAngleError::CapExceeded { m: k.m(), cap });
    }
    let all = cells(k);
    let top = 2 * k.m();
    let mut by_degree: Vec<Vec<Cell>> = vec![Vec::new(); top + 1];
    for c in all {
        by_degree[c.dimension() as usize].push(c);
    }
    let index: Vec<HashMap<Cell, usize>> = by_degree
        .iter()
        .map(|cs| cs.iter().enumerate().map(|(i, &c)| (c, i)).collect())
        .collect();
    let factors: Vec<Vec<BigInt>> = (0..=top)
        .into_par_iter()
        .map(|p| {
            if p == 0 {
                return Vec::new();
            }
            let mut entries = Vec::new();
            for (col, &cell) in by_degree[p].iter().enumerate() {
                let d = boundary_unchecked(&ZkChain::basis(p as isize, cell));
                for (face, x) in d.terms() {
                    entries.push((
                        index[p - 1][face],
                        col,
                        x.to_i64().expect("unit coefficient"),
                    ));
                }
            }
            invariant_factors_sparse(by_degree[p - 1].len(), by_degree[p].len(), &entries)
        })
        .collect();
    let mut out = GradedGroups::new();
    for p in 0..=top {
        let outgoing = factors[p].len();
        let (incoming, torsion) = match factors.get(p + 1) {
            Some(f) => (f.len(), f.clone()),
            None => (0, Vec::new()),
        };
        out.set(
            p as isize,
            AbelianGroup::new(by_degree[p].len() - outgoing - incoming, torsion),
        );
    }
    Ok(out)
}

/// `Σ rank H^d(Z_K) t^d`, lowest coefficient first.
pub fn poincare_polynomial(k: &SimplicialComplex) -> Result<Vec<u64>, MomentAngleError> {
    Ok(polynomial_of(&zk_cohomology_groups(k)?))
}

pub fn polynomial_of(groups: &GradedGroups) -> Vec<u64> {
    let Some(top) = groups.top_degree() else {
        return Vec::new();
    };
    (0..=top).map(|d| groups.rank(d) as u64).collect()
}
