use std::collections::BTreeMap;
use std::fmt;
use std::marker::PhantomData;

use num_bigint::BigInt;
use num_traits::Zero;

/// Marker for chains (homological grading).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ChainKind {}

/// Marker for cochains (cohomological grading).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum CochainKind {}

/// A sparse integer combination of basis elements `B` in a single degree.
/// Zero coefficients are never stored.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Combination<B: Ord, K> {
    degree: isize,
    terms: BTreeMap<B, BigInt>,
    _kind: PhantomData<K>,
}

pub type Chain<B> = Combination<B, ChainKind>;
pub type Cochain<B> = Combination<B, CochainKind>;

impl<B: Ord + Copy, K> Combination<B, K> {
    pub fn zero(degree: isize) -> Self {
        Combination {
            degree,
            terms: BTreeMap::new(),
            _kind: PhantomData,
        }
    }

    pub fn basis(degree: isize, element: B) -> Self {
        let mut c = Self::zero(degree);
        c.add_term(element, BigInt::from(1));
        c
    }

    pub fn from_terms<C: Into<BigInt>>(
        degree: isize,
        terms: impl IntoIterator<Item = (B, C)>,
    ) -> Self {
        let mut c = Self::zero(degree);
        for (b, x) in terms {
            c.add_term(b, x.into());
        }
        c
    }

    pub fn degree(&self) -> isize {
        self.degree
    }

    pub fn add_term(&mut self, element: B, coefficient: BigInt) {
        if coefficient.is_zero() {
            return;
        }
        let entry = self.terms.entry(element).or_insert_with(BigInt::zero);
        *entry += coefficient;
        if entry.is_zero() {
            self.terms.remove(&element);
        }
    }

    pub fn coefficient(&self, element: &B) -> BigInt {
        self.terms.get(element).cloned().unwrap_or_default()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&B, &BigInt)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Panics on a degree mismatch.
    pub fn add_assign(&mut self, other: &Self) {
        assert_eq!(
            self.degree, other.degree,
            "adding combinations of different degree"
        );
        for (b, x) in &other.terms {
            self.add_term(*b, x.clone());
        }
    }

    pub fn scaled(&self, factor: &BigInt) -> Self {
        let mut c = Self::zero(self.degree);
        if !factor.is_zero() {
            c.terms = self.terms.iter().map(|(b, x)| (*b, x * factor)).collect();
        }
        c
    }

    pub fn negated(&self) -> Self {
        self.scaled(&BigInt::from(-1))
    }

    pub fn map_basis<C: Ord + Copy, F: FnMut(B) -> (C, i32)>(
        &self,
        degree: isize,
        mut f: F,
    ) -> Combination<C, K> {
        let mut out = Combination::zero(degree);
        for (b, x) in &self.terms {
            let (c, sign) = f(*b);
            out.add_term(c, x * sign);
        }
        out
    }
}

impl<B: Ord + Copy + fmt::Display, K> fmt::Debug for Combination<B, K> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0[deg {}]", self.degree);
        }
        let parts: Vec<String> = self.terms.iter().map(|(b, x)| format!("{x}·{b}")).collect();
        write!(f, "{}[deg {}]", parts.join(" + "), self.degree)
    }
}
