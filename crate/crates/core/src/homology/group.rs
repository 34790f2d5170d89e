use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

/// A finitely generated abelian group `Z^rank ⊕ Z/d₁ ⊕ … ⊕ Z/d_k`.
///
/// Always stored in canonical form: every `dᵢ ≥ 2` and `dᵢ | dᵢ₊₁`, so
/// structural equality is isomorphism.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct AbelianGroup {
    rank: usize,
    torsion: Vec<BigInt>,
}

impl AbelianGroup {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn free(rank: usize) -> Self {
        AbelianGroup {
            rank,
            torsion: Vec::new(),
        }
    }

    pub fn integers() -> Self {
        Self::free(1)
    }

    pub fn cyclic(order: u64) -> Self {
        Self::new(0, [BigInt::from(order)])
    }

    /// Any list of cyclic orders is accepted; it is canonicalized by
    /// regrouping into prime-power parts and recombining.
    pub fn new(rank: usize, orders: impl IntoIterator<Item = BigInt>) -> Self {
        let mut extra_rank = 0;
        let mut orders: Vec<BigInt> = orders
            .into_iter()
            .filter_map(|d| {
                let d = d.abs();
                if d.is_zero() {
                    extra_rank += 1;
                    None
                } else if d.is_one() {
                    None
                } else {
                    Some(d)
                }
            })
            .collect();
        let torsion = canonical_torsion(&mut orders);
        AbelianGroup {
            rank: rank + extra_rank,
            torsion,
        }
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn torsion(&self) -> &[BigInt] {
        &self.torsion
    }

    pub fn is_zero(&self) -> bool {
        self.rank == 0 && self.torsion.is_empty()
    }

    pub fn is_free(&self) -> bool {
        self.torsion.is_empty()
    }

    pub fn is_infinite_cyclic(&self) -> bool {
        self.rank == 1 && self.torsion.is_empty()
    }

    pub fn direct_sum(&self, other: &AbelianGroup) -> AbelianGroup {
        AbelianGroup::new(
            self.rank + other.rank,
            self.torsion.iter().chain(&other.torsion).cloned(),
        )
    }
}

/// Smith-style canonical form of a torsion list: repeatedly replace a pair
/// `(a, b)` by `(gcd, lcm)` until the chain divides.
fn canonical_torsion(orders: &mut Vec<BigInt>) -> Vec<BigInt> {
    let n = orders.len();
    for i in 0..n {
        for j in i + 1..n {
            let (a, b) = (orders[i].clone(), orders[j].clone());
            let g = a.gcd(&b);
            orders[j] = a.lcm(&b);
            orders[i] = g;
        }
    }
    orders.retain(|d| !d.is_one());
    orders.sort();
    std::mem::take(orders)
}

pub fn groups_isomorphic(a: &AbelianGroup, b: &AbelianGroup) -> bool {
    a == b
}

impl fmt::Display for AbelianGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut parts = Vec::new();
        match self.rank {
            0 => {}
            1 => parts.push("Z".to_string()),
            r => parts.push(format!("Z^{r}")),
        }
        for d in &self.torsion {
            parts.push(format!("Z/{d}"));
        }
        write!(f, "{}", parts.join(" + "))
    }
}

impl fmt::Debug for AbelianGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Groups indexed by degree; absent degrees are zero.
#[derive(Clone, PartialEq, Eq, Default)]
pub struct GradedGroups {
    groups: BTreeMap<isize, AbelianGroup>,
}

impl GradedGroups {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn get(&self, degree: isize) -> AbelianGroup {
        self.groups.get(&degree).cloned().unwrap_or_default()
    }

    /// Sets a degree; zero groups are dropped.
    pub fn set(&mut self, degree: isize, group: AbelianGroup) {
        if group.is_zero() {
            self.groups.remove(&degree);
        } else {
            self.groups.insert(degree, group);
        }
    }

    pub fn add(&mut self, degree: isize, group: &AbelianGroup) {
        let sum = self.get(degree).direct_sum(group);
        self.set(degree, sum);
    }

    pub fn is_zero(&self) -> bool {
        self.groups.is_empty()
    }

    /// Nonzero degrees in increasing order.
    pub fn iter(&self) -> impl Iterator<Item = (isize, &AbelianGroup)> {
        self.groups.iter().map(|(&d, g)| (d, g))
    }

    pub fn top_degree(&self) -> Option<isize> {
        self.groups.keys().next_back().copied()
    }

    pub fn rank(&self, degree: isize) -> usize {
        self.groups.get(&degree).map_or(0, AbelianGroup::rank)
    }

    /// Alternating sum of ranks.
    pub fn euler_characteristic(&self) -> i64 {
        self.iter()
            .map(|(d, g)| {
                if d.rem_euclid(2) == 0 {
                    g.rank() as i64
                } else {
                    -(g.rank() as i64)
                }
            })
            .sum()
    }

    /// Cohomology from homology by universal coefficients:
    /// `Hᵏ ≅ Z^{rank Hₖ} ⊕ tors Hₖ₋₁`.
    pub fn dualize_homology(&self) -> GradedGroups {
        let mut out = GradedGroups::new();
        for (d, g) in self.iter() {
            out.add(d, &AbelianGroup::free(g.rank()));
            out.add(d + 1, &AbelianGroup::new(0, g.torsion().iter().cloned()));
        }
        out
    }

    /// Homology from cohomology: `Hₖ ≅ Z^{rank Hᵏ} ⊕ tors Hᵏ⁺¹`.
    pub fn dualize_cohomology(&self) -> GradedGroups {
        let mut out = GradedGroups::new();
        for (d, g) in self.iter() {
            out.add(d, &AbelianGroup::free(g.rank()));
            out.add(d - 1, &AbelianGroup::new(0, g.torsion().iter().cloned()));
        }
        out
    }
}

impl fmt::Debug for GradedGroups {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_map().entries(self.groups.iter()).finish()
    }
}

impl fmt::Display for GradedGroups {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self.iter().map(|(d, g)| format!("{d}: {g}")).collect();
        write!(f, "{}", parts.join(", "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn b(v: u64) -> BigInt {
        BigInt::from(v)
    }

    #[test]
    fn isomorphism_by_invariants() {
        assert!(groups_isomorphic(
            &AbelianGroup::integers(),
            &AbelianGroup::integers()
        ));
        assert!(!groups_isomorphic(
            &AbelianGroup::cyclic(2),
            &AbelianGroup::integers()
        ));
        let a = AbelianGroup::new(1, [b(2), b(4)]);
        let c = AbelianGroup::new(1, [b(4), b(2)]);
        assert!(groups_isomorphic(&a, &c));
        assert_eq!(a.torsion(), &[b(2), b(4)]);
    }

    #[test]
    fn canonicalization_regroups_primes() {
        // Z/2 + Z/3 = Z/6; Z/6 + Z/4 = Z/2 + Z/12
        assert_eq!(AbelianGroup::new(0, [b(2), b(3)]), AbelianGroup::cyclic(6));
        assert_eq!(AbelianGroup::new(0, [b(6), b(4)]).torsion(), &[b(2), b(12)]);
        assert_eq!(AbelianGroup::new(0, [b(1), b(0)]), AbelianGroup::integers());
    }

    #[test]
    fn universal_coefficients() {
        let mut h = GradedGroups::new();
        h.set(1, AbelianGroup::cyclic(2));
        h.set(0, AbelianGroup::free(1));
        let c = h.dualize_homology();
        assert_eq!(c.get(0), AbelianGroup::integers());
        assert_eq!(c.get(1), AbelianGroup::zero());
        assert_eq!(c.get(2), AbelianGroup::cyclic(2));
        assert_eq!(c.dualize_cohomology(), h);
    }
}
