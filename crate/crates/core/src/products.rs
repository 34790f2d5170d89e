//! Cup and cap products on the cellular (co)chains of `Z_K`.
//!
//! Cochains are multiplied through the model `Λ[u₁…u_m] ⊗ Z[K] / (vᵢ², uᵢvᵢ)`
//! in which `κ(A, B)*` corresponds to `(−1)^{|B|(|B|−1)/2} u_A v_B`. On cells
//! this gives
//!
//! `κ(A₁,B₁)* ⌣ κ(A₂,B₂)* = (−1)^{|B₁||B₂|} ε(A₁,A₂) κ(A₁∪A₂, B₁∪B₂)*`
//!
//! when `A₁∪B₁` and `A₂∪B₂` are disjoint and `B₁∪B₂ ∈ K`, and zero otherwise.
//! Here `ε` is the shuffle sign. The cap product is the unique one with
//! `⟨c ⌢ φ, ψ⟩ = ⟨c, φ ⌣ ψ⟩`. Reports label this "adjunction-normalized".

use num_bigint::BigInt;
use num_traits::Zero;
use thiserror::Error;

use crate::homology::Cochain;
use crate::moment_angle::{
    h_transport_cochain, split_by_summand, BigradedCohomology, BigradedHomology, Cell,
    MomentAngleError, ZkChain, ZkCochain,
};
use crate::simplicial::{shuffle_sign, SimplicialComplex, VertexSet};

/// Tag recorded in reports for the sign family used here.
pub const SIGN_CONVENTION: &str = "adjunction-normalized";

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ProductError {
    #[error("degree mismatch: {0} and {1}")]
    DegreeMismatch(isize, isize),
    #[error(transparent)]
    MomentAngle(#[from] MomentAngleError),
}

/// `⟨c, φ⟩ = Σ c(κ)·φ(κ)`.
pub fn evaluate(c: &ZkChain, phi: &ZkCochain) -> Result<BigInt, ProductError> {
    if c.degree() != phi.degree() {
        return Err(ProductError::DegreeMismatch(c.degree(), phi.degree()));
    }
    Ok(c.terms().map(|(cell, x)| x * phi.coefficient(cell)).sum())
}

fn sign(negative: bool) -> i32 {
    if negative {
        -1
    } else {
        1
    }
}

/// Sign of `κ(a₁,b₁)* ⌣ κ(a₂,b₂)*` when the product is nonzero.
fn cup_sign(a1: VertexSet, b1: VertexSet, a2: VertexSet, b2: VertexSet) -> i32 {
    sign(b1.len() * b2.len() % 2 == 1) * shuffle_sign(a1, a2)
}

/// Product of two basis cochains, or `None` when it vanishes.
pub fn cup_cells(x: Cell, y: Cell, k: &SimplicialComplex) -> Option<(Cell, i32)> {
    if !x.support().is_disjoint(y.support()) {
        return None;
    }
    let disks = x.disks().union(y.disks());
    if !k.contains(disks) {
        return None;
    }
    let cell = Cell::new(x.circles().union(y.circles()), disks).expect("disjoint supports");
    Some((
        cell,
        cup_sign(x.circles(), x.disks(), y.circles(), y.disks()),
    ))
}

/// `κ(A,B) ⌢ κ(A₁,B₁)*`, or `None` when it vanishes.
pub fn cap_cells(c: Cell, phi: Cell) -> Option<(Cell, i32)> {
    if !phi.circles().is_subset(c.circles()) || !phi.disks().is_subset(c.disks()) {
        return None;
    }
    let rest = Cell::new(
        c.circles().difference(phi.circles()),
        c.disks().difference(phi.disks()),
    )
    .expect("difference of a cell is a cell");
    Some((
        rest,
        cup_sign(phi.circles(), phi.disks(), rest.circles(), rest.disks()),
    ))
}

/// Cochain-level cup product on `C*(Z_K)`.
pub fn cup(
    phi: &ZkCochain,
    psi: &ZkCochain,
    k: &SimplicialComplex,
) -> Result<ZkCochain, ProductError> {
    check(phi, k)?;
    check(psi, k)?;
    let mut out = ZkCochain::zero(phi.degree() + psi.degree());
    for (x, a) in phi.terms() {
        for (y, b) in psi.terms() {
            if let Some((cell, s)) = cup_cells(*x, *y, k) {
                out.add_term(cell, a * b * s);
            }
        }
    }
    Ok(out)
}

/// Cellular cap product `c ⌢ φ`, of degree `deg c − deg φ`.
pub fn cellular_cap(
    c: &ZkChain,
    phi: &ZkCochain,
    k: &SimplicialComplex,
) -> Result<ZkChain, ProductError> {
    check(c, k)?;
    check(phi, k)?;
    let mut out = ZkChain::zero(c.degree() - phi.degree());
    for (x, a) in c.terms() {
        for (y, b) in phi.terms() {
            if let Some((cell, s)) = cap_cells(*x, *y) {
                out.add_term(cell, a * b * s);
            }
        }
    }
    Ok(out)
}

fn check<K>(
    c: &crate::homology::Combination<Cell, K>,
    k: &SimplicialComplex,
) -> Result<(), ProductError> {
    for (cell, _) in c.terms() {
        if !cell.lies_in(k) {
            return Err(MomentAngleError::CellNotInZk(*cell).into());
        }
        if cell.dimension() != c.degree() {
            return Err(MomentAngleError::DegreeMismatch {
                cell: *cell,
                expected: c.degree(),
                actual: cell.dimension(),
            }
            .into());
        }
    }
    Ok(())
}

/// The Baskakov product of a cochain on `K_I` and a cochain on `K_J`,
/// landing on `K_{I∪J}`.
///
/// Computed by transporting both factors to `C*(Z_K)` along `h`, multiplying
/// there, and pulling back; zero when `I ∩ J ≠ ∅`.
pub fn baskakov_cup(
    i: VertexSet,
    phi: &Cochain<VertexSet>,
    j: VertexSet,
    psi: &Cochain<VertexSet>,
    k: &SimplicialComplex,
) -> Result<(VertexSet, Cochain<VertexSet>), ProductError> {
    let union = i.union(j);
    let degree = phi.degree() + psi.degree() + 1;
    let a = h_transport_cochain(i, phi, k)?;
    let b = h_transport_cochain(j, psi, k)?;
    if !i.is_disjoint(j) {
        return Ok((union, Cochain::zero(degree)));
    }
    let product = cup(&a, &b, k)?;
    let mut parts = split_by_summand(&product);
    let out = parts
        .remove(&union)
        .unwrap_or_else(|| Cochain::zero(degree));
    debug_assert!(parts.is_empty());
    Ok((union, out))
}

/// A cohomology class of `Z_K` with a cocycle representative and its
/// coordinates in the Hochster basis of that degree.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CohomologyClass {
    pub degree: isize,
    pub representative: ZkCochain,
    pub coordinates: Vec<BigInt>,
}

/// A homology class of `Z_K` with a cycle representative and its coordinates.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HomologyClass {
    pub degree: isize,
    pub representative: ZkChain,
    pub coordinates: Vec<BigInt>,
}

impl CohomologyClass {
    /// Verifies the cocycle condition and computes coordinates.
    pub fn from_cocycle(
        h: &BigradedCohomology,
        representative: ZkCochain,
    ) -> Result<Self, ProductError> {
        let coordinates = h.coordinates(&representative)?;
        Ok(CohomologyClass {
            degree: representative.degree(),
            representative,
            coordinates,
        })
    }

    pub fn from_coordinates(
        h: &BigradedCohomology,
        degree: isize,
        coordinates: Vec<BigInt>,
    ) -> Self {
        let representative = h.representative(degree, &coordinates);
        CohomologyClass {
            degree,
            representative,
            coordinates,
        }
    }

    /// The `index`-th generator in degree `degree`, in layout order.
    pub fn generator(h: &BigradedCohomology, degree: isize, index: usize) -> Self {
        let n = h.orders(degree).len();
        let mut coordinates = vec![BigInt::zero(); n];
        coordinates[index] = BigInt::from(1);
        Self::from_coordinates(h, degree, coordinates)
    }

    /// The unit `κ(∅,∅)*` in degree 0.
    pub fn unit(h: &BigradedCohomology) -> Self {
        let rep = ZkCochain::basis(
            0,
            Cell::new(VertexSet::EMPTY, VertexSet::EMPTY).expect("empty cell"),
        );
        Self::from_cocycle(h, rep).expect("the unit is a cocycle")
    }

    pub fn is_zero(&self) -> bool {
        self.coordinates.iter().all(Zero::is_zero)
    }
}

impl HomologyClass {
    pub fn from_cycle(h: &BigradedHomology, representative: ZkChain) -> Result<Self, ProductError> {
        let coordinates = h.coordinates(&representative)?;
        Ok(HomologyClass {
            degree: representative.degree(),
            representative,
            coordinates,
        })
    }

    pub fn from_coordinates(h: &BigradedHomology, degree: isize, coordinates: Vec<BigInt>) -> Self {
        let representative = h.representative(degree, &coordinates);
        HomologyClass {
            degree,
            representative,
            coordinates,
        }
    }

    pub fn generator(h: &BigradedHomology, degree: isize, index: usize) -> Self {
        let n = h.orders(degree).len();
        let mut coordinates = vec![BigInt::zero(); n];
        coordinates[index] = BigInt::from(1);
        Self::from_coordinates(h, degree, coordinates)
    }

    pub fn is_zero(&self) -> bool {
        self.coordinates.iter().all(Zero::is_zero)
    }
}

/// `a ⌣ b` on classes.
pub fn cup_on_classes(
    a: &CohomologyClass,
    b: &CohomologyClass,
    h: &BigradedCohomology,
) -> Result<CohomologyClass, ProductError> {
    h.coordinates(&a.representative)?;
    h.coordinates(&b.representative)?;
    let product = cup(&a.representative, &b.representative, h.complex())?;
    CohomologyClass::from_cocycle(h, product)
}

/// `x ⌢ a` on classes.
pub fn cap_on_classes(
    x: &HomologyClass,
    a: &CohomologyClass,
    h: &BigradedHomology,
) -> Result<HomologyClass, ProductError> {
    h.coordinates(&x.representative)?;
    let k = h.complex();
    let delta = crate::moment_angle::zk_coboundary(&a.representative, k)?;
    if !delta.is_zero() {
        return Err(MomentAngleError::NotClosed {
            kind: "cochain",
            degree: a.degree,
        }
        .into());
    }
    let chain = cellular_cap(&x.representative, &a.representative, k)?;
    HomologyClass::from_cycle(h, chain)
}
