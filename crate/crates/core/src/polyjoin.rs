//! Polyhedral join products, composition complexes, and simplicial
//! isomorphism testing.
//!
//! Output vertices are numbered block by block in pair order: pair `i`
//! occupies `offset_i + 1 ..= offset_i + l_i` with `offset_i = l_1 + … + l_{i−1}`.

use thiserror::Error;

use crate::duality::{ghs_check, DualityError};
use crate::simplicial::{ComplexError, SimplicialComplex, SimplicialPair, VertexSet, MAX_VERTICES};

/// Effective-vertex budget for [`are_isomorphic`].
pub const ISOMORPHISM_MAX_VERTICES: usize = 12;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PolyjoinError {
    #[error("base has {base} vertices but {pairs} pairs were given")]
    PairCount { base: usize, pairs: usize },
    #[error("the join needs {0} vertices, above the maximum of {MAX_VERTICES}")]
    TooManyVertices(usize),
    #[error("isomorphism search limited to {ISOMORPHISM_MAX_VERTICES} vertices, got {0}")]
    Budget(usize),
    #[error("isomorphism is undefined for the VOID complex")]
    Void,
    #[error(transparent)]
    Complex(#[from] ComplexError),
    #[error(transparent)]
    Duality(#[from] DualityError),
}

/// A base complex on `[m]` with one simplicial pair per base vertex.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct JoinSpec {
    base: SimplicialComplex,
    pairs: Vec<SimplicialPair>,
}

impl JoinSpec {
    pub fn new(base: SimplicialComplex, pairs: Vec<SimplicialPair>) -> Result<Self, PolyjoinError> {
        if base.m() != pairs.len() {
            return Err(PolyjoinError::PairCount {
                base: base.m(),
                pairs: pairs.len(),
            });
        }
        let total: usize = pairs.iter().map(SimplicialPair::m).sum();
        if total > MAX_VERTICES {
            return Err(PolyjoinError::TooManyVertices(total));
        }
        Ok(JoinSpec { base, pairs })
    }

    pub fn base(&self) -> &SimplicialComplex {
        &self.base
    }

    pub fn pairs(&self) -> &[SimplicialPair] {
        &self.pairs
    }

    pub fn offsets(&self) -> Vec<usize> {
        self.pairs
            .iter()
            .scan(0, |acc, p| {
                let o = *acc;
                *acc += p.m();
                Some(o)
            })
            .collect()
    }

    pub fn vertex_count(&self) -> usize {
        self.pairs.iter().map(SimplicialPair::m).sum()
    }
}

/// `(K_i, L_i)^{*K}`: a face `⊔ τ_i` with every `τ_i ∈ K_i` belongs to the
/// join iff `{i : τ_i ∉ L_i}` is a face of the base.
pub fn polyhedral_join(spec: &JoinSpec) -> Result<SimplicialComplex, PolyjoinError> {
    let m = spec.vertex_count();
    let offsets = spec.offsets();
    let mut faces = Vec::new();
    let mut stack = vec![(0usize, VertexSet::EMPTY, VertexSet::EMPTY)];
    while let Some((i, face, outside)) = stack.pop() {
        if i == spec.pairs.len() {
            faces.push(face);
            continue;
        }
        let pair = &spec.pairs[i];
        for &tau in pair.big().faces() {
            let out = if pair.small().contains(tau) {
                outside
            } else {
                outside.with(i + 1)
            };
            if spec.base.contains(out) {
                stack.push((i + 1, face.union(tau.shifted(offsets[i])), out));
            }
        }
    }
    if faces.is_empty() {
        return Ok(SimplicialComplex::void(m));
    }
    Ok(SimplicialComplex::from_faces(m, faces)?)
}

/// The same complex built as the union over base faces `σ` of the joins
/// `Y_1 ∗ … ∗ Y_m` with `Y_i = K_i` for `i ∈ σ` and `Y_i = L_i` otherwise.
pub fn polyhedral_join_by_union(spec: &JoinSpec) -> Result<SimplicialComplex, PolyjoinError> {
    let m = spec.vertex_count();
    let mut faces = Vec::new();
    for &sigma in spec.base.faces() {
        let mut join = SimplicialComplex::empty(0);
        for (i, pair) in spec.pairs.iter().enumerate() {
            let factor = if sigma.contains(i + 1) {
                pair.big()
            } else {
                pair.small()
            };
            join = join.join(factor)?;
        }
        faces.extend_from_slice(join.faces());
    }
    faces.sort_unstable();
    faces.dedup();
    if faces.is_empty() {
        return Ok(SimplicialComplex::void(m));
    }
    Ok(SimplicialComplex::from_faces(m, faces)?)
}

/// `K(K_1, …, K_m)`: the polyhedral join with pairs `(Δ^{l_i − 1}, K_i)`.
pub fn composition_complex(
    base: &SimplicialComplex,
    factors: &[SimplicialComplex],
) -> Result<SimplicialComplex, PolyjoinError> {
    polyhedral_join(&composition_spec(base, factors)?)
}

pub fn composition_spec(
    base: &SimplicialComplex,
    factors: &[SimplicialComplex],
) -> Result<JoinSpec, PolyjoinError> {
    let pairs = factors
        .iter()
        .map(|k| SimplicialPair::new(SimplicialComplex::simplex(k.m()), k.clone()))
        .collect::<Result<Vec<_>, _>>()?;
    JoinSpec::new(base.clone(), pairs)
}

/// The classification of composition complexes that are generalised
/// homology spheres: the base is one, every non-ghost vertex `i` of the base
/// has `K_i = ∂Δ^{l_i − 1}`, and every ghost vertex `i` has `K_i` a
/// generalised homology sphere.
pub fn ayzenberg_predicate(
    base: &SimplicialComplex,
    factors: &[SimplicialComplex],
) -> Result<bool, PolyjoinError> {
    if base.m() != factors.len() {
        return Err(PolyjoinError::PairCount {
            base: base.m(),
            pairs: factors.len(),
        });
    }
    if base.is_void() || !ghs_check(base)?.passed() {
        return Ok(false);
    }
    for (i, k) in factors.iter().enumerate() {
        let ok = if base.contains(VertexSet::singleton(i + 1)) {
            *k == SimplicialComplex::simplex_boundary(k.m())
        } else {
            !k.is_void() && ghs_check(k)?.passed()
        };
        if !ok {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Per-vertex invariant used for pruning: the number of faces of each
/// dimension containing the vertex.
fn vertex_profile(k: &SimplicialComplex, v: usize) -> Vec<usize> {
    let mut out = Vec::new();
    for f in k.faces().iter().filter(|f| f.contains(v)) {
        let d = f.len() - 1;
        if out.len() <= d {
            out.resize(d + 1, 0);
        }
        out[d] += 1;
    }
    out
}

/// Whether some bijection of non-ghost vertices carries the faces of `K`
/// onto the faces of `L`. Ghost vertices are ignored.
pub fn are_isomorphic(k: &SimplicialComplex, l: &SimplicialComplex) -> Result<bool, PolyjoinError> {
    if k.is_void() || l.is_void() {
        return Err(PolyjoinError::Void);
    }
    let (kv, lv) = (k.vertex_set().to_vec(), l.vertex_set().to_vec());
    let n = kv.len().max(lv.len());
    if n > ISOMORPHISM_MAX_VERTICES {
        return Err(PolyjoinError::Budget(n));
    }
    if kv.len() != lv.len() || k.f_vector() != l.f_vector() {
        return Ok(false);
    }
    let kp: Vec<Vec<usize>> = kv.iter().map(|&v| vertex_profile(k, v)).collect();
    let lp: Vec<Vec<usize>> = lv.iter().map(|&v| vertex_profile(l, v)).collect();
    let mut ks = kp.clone();
    let mut ls = lp.clone();
    ks.sort();
    ls.sort();
    if ks != ls {
        return Ok(false);
    }
    // Faces of K grouped by their largest vertex position in `kv`.
    let position = |v: usize| kv.iter().position(|&x| x == v).expect("non-ghost vertex");
    let mut by_last: Vec<Vec<VertexSet>> = vec![Vec::new(); kv.len()];
    for &f in k.faces() {
        if let Some(last) = f.iter().map(position).max() {
            by_last[last].push(f);
        }
    }
    let mut image = vec![0usize; 33];
    let mut used = vec![false; lv.len()];
    Ok(extend(
        0, &kv, &lv, &kp, &lp, &by_last, l, &mut image, &mut used,
    ))
}

#[allow(clippy::too_many_arguments)]
fn extend(
    depth: usize,
    kv: &[usize],
    lv: &[usize],
    kp: &[Vec<usize>],
    lp: &[Vec<usize>],
    by_last: &[Vec<VertexSet>],
    l: &SimplicialComplex,
    image: &mut [usize],
    used: &mut [bool],
) -> bool {
    if depth == kv.len() {
        return true;
    }
    for c in 0..lv.len() {
        if used[c] || kp[depth] != lp[c] {
            continue;
        }
        image[kv[depth]] = lv[c];
        let consistent = by_last[depth]
            .iter()
            .all(|f| l.contains(f.iter().map(|v| image[v]).collect()));
        if consistent {
            used[c] = true;
            if extend(depth + 1, kv, lv, kp, lp, by_last, l, image, used) {
                return true;
            }
            used[c] = false;
        }
    }
    false
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::simplicial::named;
    use proptest::prelude::*;

    fn pair(big: SimplicialComplex, small: SimplicialComplex) -> SimplicialPair {
        SimplicialPair::new(big, small).unwrap()
    }

    fn path_with_ends() -> SimplicialPair {
        let small = SimplicialComplex::from_facet_lists(3, &[&[1], &[3]]).unwrap();
        pair(named::path(3), small)
    }

    #[test]
    fn path_pairs_give_octahedron() {
        let spec = JoinSpec::new(
            SimplicialComplex::simplex_boundary(2),
            vec![path_with_ends(), path_with_ends()],
        )
        .unwrap();
        let k = polyhedral_join(&spec).unwrap();
        assert_eq!(k.m(), 6);
        assert_eq!(k, polyhedral_join_by_union(&spec).unwrap());
        assert!(are_isomorphic(&k, &named::octahedron()).unwrap());
    }

    #[test]
    fn pentagon_over_suspension_base() {
        let base = SimplicialComplex::simplex_boundary(2)
            .join(&SimplicialComplex::simplex(1))
            .unwrap();
        let point = pair(SimplicialComplex::simplex(1), SimplicialComplex::empty(1));
        let spec = JoinSpec::new(
            base,
            vec![
                point.clone(),
                point,
                pair(named::pentagon(), SimplicialComplex::void(5)),
            ],
        )
        .unwrap();
        let k = polyhedral_join(&spec).unwrap();
        assert_eq!(k.m(), 7);
        assert_eq!(k.vertex_set().len(), 7);
        let ghs = ghs_check(&k).unwrap();
        assert!(ghs.passed());
        assert_eq!(ghs.params["n"], 2);
        assert!(are_isomorphic(&k, &named::suspended_pentagon()).unwrap());
    }

    #[test]
    fn path_pairs_give_three_spheres() {
        let spec = JoinSpec::new(
            SimplicialComplex::simplex_boundary(2),
            vec![path_with_ends(), path_with_ends()],
        )
        .unwrap();
        let groups =
            crate::moment_angle::zk_cohomology_groups(&polyhedral_join(&spec).unwrap()).unwrap();
        // (1 + t³)³
        let kunneth = [1, 0, 0, 3, 0, 0, 3, 0, 0, 1];
        for (d, &r) in kunneth.iter().enumerate() {
            assert_eq!(groups.rank(d as isize), r);
        }
        assert!(groups.iter().all(|(_, g)| g.is_free()));
        assert_eq!(groups.top_degree(), Some(9));
    }

    #[test]
    fn full_pairs_give_joins() {
        let factors = [named::path(3), SimplicialComplex::simplex_boundary(2)];
        let pairs = factors.iter().map(|f| pair(f.clone(), f.clone())).collect();
        let spec = JoinSpec::new(SimplicialComplex::simplex_boundary(2), pairs).unwrap();
        assert_eq!(
            polyhedral_join(&spec).unwrap(),
            factors[0].join(&factors[1]).unwrap()
        );
    }

    #[test]
    fn composition_examples() {
        let b2 = SimplicialComplex::simplex_boundary(2);
        let b3 = SimplicialComplex::simplex_boundary(3);
        let k = composition_complex(&b2, &[b3.clone(), b3.clone()]).unwrap();
        assert!(ghs_check(&k).unwrap().passed());
        assert_eq!(k, SimplicialComplex::simplex_boundary(6));
        assert!(ayzenberg_predicate(&b2, &[b3.clone(), b3.clone()]).unwrap());

        let ghost = SimplicialComplex::empty(1);
        assert_eq!(
            composition_complex(&ghost, &[named::octahedron()]).unwrap(),
            named::octahedron()
        );
        assert!(ayzenberg_predicate(&ghost, &[named::octahedron()]).unwrap());

        let d1 = SimplicialComplex::simplex(2);
        assert!(
            !ghs_check(&composition_complex(&b2, &[d1.clone(), b2.clone()]).unwrap())
                .unwrap()
                .passed()
        );
        assert!(!ayzenberg_predicate(&b2, &[d1, b2.clone()]).unwrap());
    }

    #[test]
    fn point_pairs_reproduce_the_base() {
        let base = named::pentagon();
        let point = pair(SimplicialComplex::simplex(1), SimplicialComplex::empty(1));
        let spec = JoinSpec::new(base.clone(), vec![point; 5]).unwrap();
        assert_eq!(polyhedral_join(&spec).unwrap(), base);
    }

    #[test]
    fn isomorphism_examples() {
        let c5 = named::pentagon();
        let relabeled = c5.relabel(5, &[3, 5, 2, 4, 1]).unwrap();
        assert!(are_isomorphic(&c5, &relabeled).unwrap());
        assert!(!are_isomorphic(&c5, &named::path(5)).unwrap());
        let with_ghost = c5.with_vertex_count(7).unwrap();
        assert!(are_isomorphic(&c5, &with_ghost).unwrap());
        assert!(!are_isomorphic(&named::octahedron(), &named::rp2_6()).unwrap());
        assert_eq!(
            are_isomorphic(
                &SimplicialComplex::simplex(13),
                &SimplicialComplex::simplex(13)
            ),
            Err(PolyjoinError::Budget(13))
        );
    }

    fn arb_pair() -> impl Strategy<Value = SimplicialPair> {
        (1usize..=3).prop_flat_map(|l| {
            (
                prop::collection::vec(0u32..(1 << l), 0..4),
                any::<u32>(),
                any::<bool>(),
            )
                .prop_map(move |(bits, keep, void)| {
                    let facets: Vec<_> = bits.into_iter().map(VertexSet::from_bits).collect();
                    let big = SimplicialComplex::from_facets(l, &facets, true).unwrap();
                    let small_faces: Vec<VertexSet> = big
                        .faces()
                        .iter()
                        .copied()
                        .enumerate()
                        .filter(|(i, _)| keep >> (i % 32) & 1 == 1)
                        .map(|(_, f)| f)
                        .collect();
                    let closed: Vec<VertexSet> = small_faces
                        .iter()
                        .copied()
                        .filter(|f| f.subsets().all(|s| small_faces.contains(&s)))
                        .collect();
                    let small = if void || closed.is_empty() {
                        SimplicialComplex::void(l)
                    } else {
                        SimplicialComplex::from_facets(l, &closed, true).unwrap()
                    };
                    SimplicialPair::new(big, small).unwrap()
                })
        })
    }

    proptest! {
        #[test]
        fn membership_matches_union(m in 1usize..=3, base_bits in prop::collection::vec(0u32..8, 0..3), pairs in prop::collection::vec(arb_pair(), 3)) {
            let facets: Vec<_> = base_bits.into_iter().map(|b| VertexSet::from_bits(b & ((1 << m) - 1))).collect();
            let base = SimplicialComplex::from_facets(m, &facets, true).unwrap();
            let spec = JoinSpec::new(base, pairs[..m].to_vec()).unwrap();
            prop_assert_eq!(polyhedral_join(&spec).unwrap(), polyhedral_join_by_union(&spec).unwrap());
        }

        #[test]
        fn relabelings_are_isomorphic(bits in prop::collection::vec(0u32..64, 1..6), perm in Just((1..=6usize).collect::<Vec<_>>()).prop_shuffle()) {
            let facets: Vec<_> = bits.into_iter().map(VertexSet::from_bits).collect();
            let k = SimplicialComplex::from_facets(6, &facets, true).unwrap();
            let l = k.relabel(6, &perm).unwrap();
            prop_assert!(are_isomorphic(&k, &l).unwrap());
        }
    }
}
