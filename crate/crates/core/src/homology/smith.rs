//! Smith normal form over the integers.
//!
//! The reduction first runs on `i64` with checked arithmetic; any overflow
//! restarts the whole computation on `BigInt`, so results are always exact.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::matrix::IntegerMatrix;

/// How the next pivot is chosen inside the remaining submatrix.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum PivotRule {
    /// Entry of smallest absolute value.
    #[default]
    MinAbs,
    /// First nonzero entry in column-major order.
    FirstNonzero,
}

/// `U · A · V = D` with `D` diagonal, `d₁ | d₂ | …`, and `U`, `V` unimodular.
#[derive(Debug, Clone)]
pub struct SmithDecomposition {
    /// The `min(rows, cols)` diagonal entries of `D`, nonzero ones first.
    pub diagonal: Vec<BigInt>,
    pub rank: usize,
    pub u: IntegerMatrix,
    pub u_inv: IntegerMatrix,
    pub v: IntegerMatrix,
    pub v_inv: IntegerMatrix,
}

impl SmithDecomposition {
    /// Nonzero diagonal entries.
    pub fn invariant_factors(&self) -> &[BigInt] {
        &self.diagonal[..self.rank]
    }

    pub fn d_matrix(&self) -> IntegerMatrix {
        IntegerMatrix::diagonal(self.u.rows(), self.v.rows(), &self.diagonal)
    }
}

pub fn smith_normal_form(a: &IntegerMatrix) -> SmithDecomposition {
    smith_normal_form_with(a, PivotRule::MinAbs)
}

pub fn smith_normal_form_with(a: &IntegerMatrix, rule: PivotRule) -> SmithDecomposition {
    let out = match to_i64(a) {
        Some(small) => {
            reduce(small, a.rows(), a.cols(), rule, true).or_else(|_| reduce_big(a, rule, true))
        }
        None => reduce_big(a, rule, true),
    };
    let r = out.expect("BigInt reduction cannot overflow");
    let (u, u_inv, v, v_inv) = r.transforms.expect("transforms were tracked");
    SmithDecomposition {
        diagonal: r.diagonal,
        rank: r.rank,
        u,
        u_inv,
        v,
        v_inv,
    }
}

/// Nonzero invariant factors only; skips transform bookkeeping.
pub fn invariant_factors(a: &IntegerMatrix) -> Vec<BigInt> {
    invariant_factors_with(a, PivotRule::MinAbs)
}

pub fn invariant_factors_with(a: &IntegerMatrix, rule: PivotRule) -> Vec<BigInt> {
    let out = match to_i64(a) {
        Some(small) => {
            reduce(small, a.rows(), a.cols(), rule, false).or_else(|_| reduce_big(a, rule, false))
        }
        None => reduce_big(a, rule, false),
    };
    let mut r = out.expect("BigInt reduction cannot overflow");
    r.diagonal.truncate(r.rank);
    r.diagonal
}

/// Invariant factors of a sparse `rows × cols` matrix given as `(row, col, value)`
/// triples (repeated positions are summed).
///
/// The matrix is split into the connected components of its row/column
/// incidence graph; each block is reduced densely and the factors are merged
/// back into a single divisibility chain.
pub fn invariant_factors_sparse(
    rows: usize,
    cols: usize,
    entries: &[(usize, usize, i64)],
) -> Vec<BigInt> {
    let mut parent: Vec<usize> = (0..rows + cols).collect();
    fn find(parent: &mut [usize], mut x: usize) -> usize {
        while parent[x] != x {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        x
    }
    for &(r, c, x) in entries {
        assert!(r < rows && c < cols, "sparse entry out of range");
        if x != 0 {
            let (a, b) = (find(&mut parent, r), find(&mut parent, rows + c));
            parent[a] = b;
        }
    }
    let mut blocks: std::collections::BTreeMap<usize, (Vec<usize>, Vec<usize>)> =
        Default::default();
    for r in 0..rows {
        let root = find(&mut parent, r);
        blocks.entry(root).or_default().0.push(r);
    }
    for c in 0..cols {
        let root = find(&mut parent, rows + c);
        blocks.entry(root).or_default().1.push(c);
    }
    let mut position = vec![0usize; rows + cols];
    let mut owner = vec![0usize; rows + cols];
    for (root, (rs, cs)) in &blocks {
        for (k, &r) in rs.iter().enumerate() {
            position[r] = k;
            owner[r] = *root;
        }
        for (k, &c) in cs.iter().enumerate() {
            position[rows + c] = k;
            owner[rows + c] = *root;
        }
    }
    let mut dense: std::collections::BTreeMap<usize, IntegerMatrix> = blocks
        .iter()
        .filter(|(_, (rs, cs))| !rs.is_empty() && !cs.is_empty())
        .map(|(&root, (rs, cs))| (root, IntegerMatrix::zeros(rs.len(), cs.len())))
        .collect();
    for &(r, c, x) in entries {
        if x != 0 {
            let block = dense.get_mut(&owner[r]).expect("entry lies in a block");
            block[(position[r], position[rows + c])] += x;
        }
    }
    let mut factors: Vec<BigInt> = dense.values().flat_map(invariant_factors).collect();
    let total = factors.len();
    let nontrivial = super::group::AbelianGroup::new(0, factors.drain(..))
        .torsion()
        .to_vec();
    let mut out = vec![BigInt::one(); total - nontrivial.len()];
    out.extend(nontrivial);
    out
}

fn to_i64(a: &IntegerMatrix) -> Option<Vec<i64>> {
    a.data().iter().map(ToPrimitive::to_i64).collect()
}

fn reduce_big(a: &IntegerMatrix, rule: PivotRule, track: bool) -> Result<Reduced, Overflow> {
    reduce(a.data().to_vec(), a.rows(), a.cols(), rule, track)
}

#[derive(Debug)]
struct Overflow;

/// Ring operations the reduction needs, with overflow reported as `None`.
trait Entry: Clone + PartialEq {
    fn e_zero() -> Self;
    fn e_one() -> Self;
    fn e_is_zero(&self) -> bool;
    fn e_is_negative(&self) -> bool;
    fn abs_lt(&self, other: &Self) -> bool;
    fn neg(&self) -> Option<Self>;
    /// `self - q * x`
    fn sub_mul(&self, q: &Self, x: &Self) -> Option<Self>;
    /// Truncated quotient.
    fn quot(&self, d: &Self) -> Option<Self>;
    fn divides(&self, x: &Self) -> bool;
    fn to_big(&self) -> BigInt;
}

impl Entry for i64 {
    fn e_zero() -> Self {
        0
    }
    fn e_one() -> Self {
        1
    }
    fn e_is_zero(&self) -> bool {
        *self == 0
    }
    fn e_is_negative(&self) -> bool {
        *self < 0
    }
    fn abs_lt(&self, other: &Self) -> bool {
        self.unsigned_abs() < other.unsigned_abs()
    }
    fn neg(&self) -> Option<Self> {
        self.checked_neg()
    }
    fn sub_mul(&self, q: &Self, x: &Self) -> Option<Self> {
        self.checked_sub(q.checked_mul(*x)?)
    }
    fn quot(&self, d: &Self) -> Option<Self> {
        self.checked_div(*d)
    }
    fn divides(&self, x: &Self) -> bool {
        *self != 0 && x.checked_rem(*self).is_none_or(|r| r == 0)
    }
    fn to_big(&self) -> BigInt {
        BigInt::from(*self)
    }
}

impl Entry for BigInt {
    fn e_zero() -> Self {
        Zero::zero()
    }
    fn e_one() -> Self {
        One::one()
    }
    fn e_is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn e_is_negative(&self) -> bool {
        Signed::is_negative(self)
    }
    fn abs_lt(&self, other: &Self) -> bool {
        self.magnitude() < other.magnitude()
    }
    fn neg(&self) -> Option<Self> {
        Some(-self)
    }
    fn sub_mul(&self, q: &Self, x: &Self) -> Option<Self> {
        Some(self - q * x)
    }
    fn quot(&self, d: &Self) -> Option<Self> {
        Some(self / d)
    }
    fn divides(&self, x: &Self) -> bool {
        !Zero::is_zero(self) && Zero::is_zero(&x.mod_floor(self))
    }
    fn to_big(&self) -> BigInt {
        self.clone()
    }
}

struct Reduced {
    diagonal: Vec<BigInt>,
    rank: usize,
    transforms: Option<(IntegerMatrix, IntegerMatrix, IntegerMatrix, IntegerMatrix)>,
}

/// Square matrix stored flat.
struct Square<T> {
    n: usize,
    data: Vec<T>,
}

impl<T: Entry> Square<T> {
    fn identity(n: usize) -> Self {
        let mut data = vec![T::e_zero(); n * n];
        for i in 0..n {
            data[i * n + i] = T::e_one();
        }
        Square { n, data }
    }

    /// row_i -= q * row_j
    fn row_axpy(&mut self, i: usize, j: usize, q: &T) -> Result<(), Overflow> {
        let n = self.n;
        for c in 0..n {
            let x = self.data[j * n + c].clone();
            if !x.e_is_zero() {
                self.data[i * n + c] = self.data[i * n + c].sub_mul(q, &x).ok_or(Overflow)?;
            }
        }
        Ok(())
    }

    /// col_j -= q * col_i
    fn col_axpy(&mut self, i: usize, j: usize, q: &T) -> Result<(), Overflow> {
        let n = self.n;
        for r in 0..n {
            let x = self.data[r * n + i].clone();
            if !x.e_is_zero() {
                self.data[r * n + j] = self.data[r * n + j].sub_mul(q, &x).ok_or(Overflow)?;
            }
        }
        Ok(())
    }

    fn swap_rows(&mut self, i: usize, j: usize) {
        for c in 0..self.n {
            self.data.swap(i * self.n + c, j * self.n + c);
        }
    }

    fn swap_cols(&mut self, i: usize, j: usize) {
        for r in 0..self.n {
            self.data.swap(r * self.n + i, r * self.n + j);
        }
    }

    fn negate_row(&mut self, i: usize) -> Result<(), Overflow> {
        for c in 0..self.n {
            let k = i * self.n + c;
            self.data[k] = self.data[k].neg().ok_or(Overflow)?;
        }
        Ok(())
    }

    fn negate_col(&mut self, j: usize) -> Result<(), Overflow> {
        for r in 0..self.n {
            let k = r * self.n + j;
            self.data[k] = self.data[k].neg().ok_or(Overflow)?;
        }
        Ok(())
    }

    fn into_matrix(self) -> IntegerMatrix {
        IntegerMatrix::from_vec(
            self.n,
            self.n,
            self.data.iter().map(Entry::to_big).collect(),
        )
    }
}

struct Transforms<T> {
    u: Square<T>,
    u_inv: Square<T>,
    v: Square<T>,
    v_inv: Square<T>,
}

struct Work<T> {
    rows: usize,
    cols: usize,
    a: Vec<T>,
    t: Option<Transforms<T>>,
}

impl<T: Entry> Work<T> {
    fn at(&self, i: usize, j: usize) -> &T {
        &self.a[i * self.cols + j]
    }

    /// row_i -= q * row_j, keeping `U·A0·V = A`.
    fn row_axpy(&mut self, i: usize, j: usize, q: &T) -> Result<(), Overflow> {
        for c in 0..self.cols {
            let x = self.a[j * self.cols + c].clone();
            if !x.e_is_zero() {
                let k = i * self.cols + c;
                self.a[k] = self.a[k].sub_mul(q, &x).ok_or(Overflow)?;
            }
        }
        if let Some(t) = &mut self.t {
            t.u.row_axpy(i, j, q)?;
            let neg = q.neg().ok_or(Overflow)?;
            t.u_inv.col_axpy(i, j, &neg)?;
        }
        Ok(())
    }

    /// col_j -= q * col_i
    fn col_axpy(&mut self, i: usize, j: usize, q: &T) -> Result<(), Overflow> {
        for r in 0..self.rows {
            let x = self.a[r * self.cols + i].clone();
            if !x.e_is_zero() {
                let k = r * self.cols + j;
                self.a[k] = self.a[k].sub_mul(q, &x).ok_or(Overflow)?;
            }
        }
        if let Some(t) = &mut self.t {
            t.v.col_axpy(i, j, q)?;
            let neg = q.neg().ok_or(Overflow)?;
            t.v_inv.row_axpy(i, j, &neg)?;
        }
        Ok(())
    }

    fn swap_rows(&mut self, i: usize, j: usize) {
        if i == j {
            return;
        }
        for c in 0..self.cols {
            self.a.swap(i * self.cols + c, j * self.cols + c);
        }
        if let Some(t) = &mut self.t {
            t.u.swap_rows(i, j);
            t.u_inv.swap_cols(i, j);
        }
    }

    fn swap_cols(&mut self, i: usize, j: usize) {
        if i == j {
            return;
        }
        for r in 0..self.rows {
            self.a.swap(r * self.cols + i, r * self.cols + j);
        }
        if let Some(t) = &mut self.t {
            t.v.swap_cols(i, j);
            t.v_inv.swap_rows(i, j);
        }
    }

    fn negate_row(&mut self, i: usize) -> Result<(), Overflow> {
        for c in 0..self.cols {
            let k = i * self.cols + c;
            self.a[k] = self.a[k].neg().ok_or(Overflow)?;
        }
        if let Some(t) = &mut self.t {
            t.u.negate_row(i)?;
            t.u_inv.negate_col(i)?;
        }
        Ok(())
    }

    fn find_pivot(&self, start: usize, rule: PivotRule) -> Option<(usize, usize)> {
        let mut best: Option<(usize, usize)> = None;
        for j in start..self.cols {
            for i in start..self.rows {
                let x = self.at(i, j);
                if x.e_is_zero() {
                    continue;
                }
                match rule {
                    PivotRule::FirstNonzero => return Some((i, j)),
                    PivotRule::MinAbs => {
                        if best.is_none_or(|(bi, bj)| x.abs_lt(self.at(bi, bj))) {
                            best = Some((i, j));
                        }
                    }
                }
            }
        }
        best
    }

    /// Clears row and column `t` below/right of the pivot. Returns whether
    /// every remainder vanished.
    fn eliminate(&mut self, t: usize) -> Result<bool, Overflow> {
        let mut clean = true;
        for i in t + 1..self.rows {
            if !self.at(i, t).e_is_zero() {
                let q = self.at(i, t).quot(self.at(t, t)).ok_or(Overflow)?;
                self.row_axpy(i, t, &q)?;
                clean &= self.at(i, t).e_is_zero();
            }
        }
        for j in t + 1..self.cols {
            if !self.at(t, j).e_is_zero() {
                let q = self.at(t, j).quot(self.at(t, t)).ok_or(Overflow)?;
                self.col_axpy(t, j, &q)?;
                clean &= self.at(t, j).e_is_zero();
            }
        }
        Ok(clean)
    }

    /// Moves the smallest nonzero entry of row/column `t` onto the diagonal.
    fn repivot(&mut self, t: usize) {
        let mut best = (t, t);
        for i in t + 1..self.rows {
            let x = self.at(i, t);
            if !x.e_is_zero() && x.abs_lt(self.at(best.0, best.1)) {
                best = (i, t);
            }
        }
        for j in t + 1..self.cols {
            let x = self.at(t, j);
            if !x.e_is_zero() && x.abs_lt(self.at(best.0, best.1)) {
                best = (t, j);
            }
        }
        self.swap_rows(t, best.0);
        self.swap_cols(t, best.1);
    }

    fn non_divisible(&self, t: usize) -> Option<usize> {
        let p = self.at(t, t);
        for i in t + 1..self.rows {
            for j in t + 1..self.cols {
                let x = self.at(i, j);
                if !x.e_is_zero() && !p.divides(x) {
                    return Some(i);
                }
            }
        }
        None
    }
}

fn reduce<T: Entry>(
    a: Vec<T>,
    rows: usize,
    cols: usize,
    rule: PivotRule,
    track: bool,
) -> Result<Reduced, Overflow> {
    let t = track.then(|| Transforms {
        u: Square::identity(rows),
        u_inv: Square::identity(rows),
        v: Square::identity(cols),
        v_inv: Square::identity(cols),
    });
    let mut w = Work { rows, cols, a, t };
    let n = rows.min(cols);
    let mut rank = 0;
    while rank < n {
        let Some((pi, pj)) = w.find_pivot(rank, rule) else {
            break;
        };
        w.swap_rows(rank, pi);
        w.swap_cols(rank, pj);
        loop {
            if !w.eliminate(rank)? {
                w.repivot(rank);
                continue;
            }
            match w.non_divisible(rank) {
                Some(i) => {
                    let minus_one = T::e_one().neg().ok_or(Overflow)?;
                    w.row_axpy(rank, i, &minus_one)?;
                }
                None => break,
            }
        }
        if w.at(rank, rank).e_is_negative() {
            w.negate_row(rank)?;
        }
        rank += 1;
    }
    let diagonal = (0..n).map(|i| w.at(i, i).to_big()).collect();
    let transforms = w.t.map(|t| {
        (
            t.u.into_matrix(),
            t.u_inv.into_matrix(),
            t.v.into_matrix(),
            t.v_inv.into_matrix(),
        )
    });
    Ok(Reduced {
        diagonal,
        rank,
        transforms,
    })
}
