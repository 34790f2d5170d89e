//! Decision procedures for the duality properties of `K` and `Z_K`:
//! combinatorial Alexander duality, generalised homology spheres,
//! Poincaré duality of `Z_K` with an explicit fundamental class, and
//! Gorenstein duality of the Stanley-Reisner ring via the core.

use std::collections::BTreeMap;
use std::fmt;

use rayon::prelude::*;
use thiserror::Error;

use crate::homology::{
    induced_map_is_isomorphism, is_sphere_homology, reduced_cohomology, reduced_homology,
    AbelianGroup, GradedGroups, IntegerMatrix,
};
use crate::moment_angle::{
    split_by_summand, BigradedCohomology, BigradedHomology, Cell, MomentAngleError, ZkCochain,
    HOCHSTER_MAX_VERTICES,
};
use crate::products::{cellular_cap, HomologyClass, ProductError};
use crate::simplicial::{ComplexError, SimplicialComplex, VertexSet};

/// Default vertex cap for Poincaré-duality certification.
pub const PD_MAX_VERTICES: usize = 12;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DualityError {
    #[error("duality checks are undefined on the VOID complex")]
    Void,
    #[error("complex has {m} vertices, above the configured cap of {cap}")]
    CapExceeded { m: usize, cap: usize },
    #[error("no fundamental class: {0}")]
    NoFundamentalClass(String),
    #[error("checkers disagree: {0}")]
    Inconsistent(String),
    #[error(transparent)]
    MomentAngle(#[from] MomentAngleError),
    #[error(transparent)]
    Product(#[from] ProductError),
    #[error(transparent)]
    Complex(#[from] ComplexError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Verdict {
    Pass,
    Fail,
    Inapplicable,
}

impl Verdict {
    fn of(pass: bool) -> Self {
        if pass {
            Verdict::Pass
        } else {
            Verdict::Fail
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Verdict::Pass => "pass",
            Verdict::Fail => "fail",
            Verdict::Inapplicable => "inapplicable",
        }
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum CheckKind {
    Alexander,
    Ghs,
    Pd,
    Gorenstein,
}

impl CheckKind {
    pub fn as_str(self) -> &'static str {
        match self {
            CheckKind::Alexander => "alexander",
            CheckKind::Ghs => "ghs",
            CheckKind::Pd => "pd",
            CheckKind::Gorenstein => "gorenstein",
        }
    }
}

/// A reason a check failed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Witness {
    /// `H̃^l(K_J) ≇ H̃_{d−l−1}(K_{[m]∖J})`.
    Subset {
        subset: VertexSet,
        degree: isize,
        lhs: AbelianGroup,
        rhs: AbelianGroup,
    },
    /// The link of `face` (the whole complex for `face = ∅`) does not have
    /// the homology of `S^expected`.
    Face {
        face: VertexSet,
        homology: GradedGroups,
        expected: isize,
    },
    /// Cap with the fundamental class is not an isomorphism
    /// `H^degree(Z_K) → H_{top−degree}(Z_K)`.
    Degree {
        degree: isize,
        cohomology: AbelianGroup,
        homology: AbelianGroup,
    },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DualityReport {
    pub check: CheckKind,
    pub verdict: Verdict,
    pub params: BTreeMap<&'static str, i64>,
    pub witnesses: Vec<Witness>,
    pub core: Option<SimplicialComplex>,
    pub minimal_non_faces: Option<Vec<VertexSet>>,
    pub notes: Vec<String>,
}

impl DualityReport {
    fn new(check: CheckKind, witnesses: Vec<Witness>) -> Self {
        DualityReport {
            check,
            verdict: Verdict::of(witnesses.is_empty()),
            params: BTreeMap::new(),
            witnesses,
            core: None,
            minimal_non_faces: None,
            notes: Vec::new(),
        }
    }

    pub fn passed(&self) -> bool {
        self.verdict == Verdict::Pass
    }
}

fn guard(k: &SimplicialComplex, cap: usize) -> Result<(), DualityError> {
    if k.is_void() {
        return Err(DualityError::Void);
    }
    if k.m() > cap {
        return Err(DualityError::CapExceeded { m: k.m(), cap });
    }
    Ok(())
}

/// Reduced homology and cohomology of every full subcomplex, indexed by `J.bits()`.
fn subset_groups(k: &SimplicialComplex) -> Vec<(GradedGroups, GradedGroups)> {
    let subsets: Vec<VertexSet> = VertexSet::full(k.m()).subsets().collect();
    let mut out: Vec<(u32, (GradedGroups, GradedGroups))> = subsets
        .par_iter()
        .map(|&j| {
            let kj = k.full_subcomplex(j);
            (j.bits(), (reduced_homology(&kj), reduced_cohomology(&kj)))
        })
        .collect();
    out.sort_by_key(|(b, _)| *b);
    out.into_iter().map(|(_, g)| g).collect()
}

/// Combinatorial Alexander duality of dimension `d`:
/// `H̃^l(K_J) ≅ H̃_{d−l−1}(K_{[m]∖J})` for every `J ⊆ [m]` and every `l`.
pub fn alexander_duality_check(
    k: &SimplicialComplex,
    d: isize,
) -> Result<DualityReport, DualityError> {
    guard(k, HOCHSTER_MAX_VERTICES)?;
    let groups = subset_groups(k);
    Ok(alexander_from(k, d, &groups))
}

fn alexander_from(
    k: &SimplicialComplex,
    d: isize,
    groups: &[(GradedGroups, GradedGroups)],
) -> DualityReport {
    let full = VertexSet::full(k.m());
    let mut witnesses = Vec::new();
    for j in full.subsets() {
        let cohomology = &groups[j.bits() as usize].1;
        let homology = &groups[full.difference(j).bits() as usize].0;
        let mut degrees: Vec<isize> = cohomology.iter().map(|(l, _)| l).collect();
        degrees.extend(homology.iter().map(|(l, _)| d - l - 1));
        degrees.sort_unstable();
        degrees.dedup();
        for l in degrees {
            let (lhs, rhs) = (cohomology.get(l), homology.get(d - l - 1));
            if lhs != rhs {
                witnesses.push(Witness::Subset {
                    subset: j,
                    degree: l,
                    lhs,
                    rhs,
                });
            }
        }
    }
    let mut report = DualityReport::new(CheckKind::Alexander, witnesses);
    report.params.insert("d", d as i64);
    report
}

/// Whether `K` is a generalised homology sphere of dimension `n = dim K`:
/// `H̃(K) ≅ H̃(Sⁿ)` and `H̃(lk σ) ≅ H̃(S^{n−|σ|})` for every nonempty face.
pub fn ghs_check(k: &SimplicialComplex) -> Result<DualityReport, DualityError> {
    let n = k.dimension().ok_or(DualityError::Void)?;
    let mut witnesses: Vec<Witness> = k
        .faces()
        .par_iter()
        .filter_map(|&face| {
            let expected = n - face.len() as isize;
            let link = k.link(face).expect("face of K");
            let homology = reduced_homology(&link);
            (!is_sphere_homology(&homology, expected)).then_some(Witness::Face {
                face,
                homology,
                expected,
            })
        })
        .collect();
    witnesses.sort_by_key(|w| match w {
        Witness::Face { face, .. } => *face,
        _ => VertexSet::EMPTY,
    });
    let mut report = DualityReport::new(CheckKind::Ghs, witnesses);
    report.params.insert("n", n as i64);
    Ok(report)
}

/// Gorenstein duality of `Z[K]`: the core of `K` is a generalised homology sphere.
pub fn gorenstein_check(k: &SimplicialComplex) -> Result<DualityReport, DualityError> {
    let core = k.core()?;
    let inner = ghs_check(&core)?;
    let mut report = DualityReport::new(CheckKind::Gorenstein, inner.witnesses);
    report.params = inner.params;
    report
        .params
        .insert("core_vertices", core.vertex_set().len() as i64);
    if !core
        .ghost_vertices()
        .difference(k.cone_vertices())
        .is_empty()
    {
        report
            .notes
            .push("ghost vertices of K are kept in the core (their star is VOID)".into());
    }
    report.minimal_non_faces = Some(k.minimal_non_faces()?);
    report.core = Some(core);
    Ok(report)
}

/// Cap with `μ` restricted to one Hochster summand.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SummandRecord {
    pub subset: VertexSet,
    pub degree: isize,
    pub target: VertexSet,
    pub target_degree: isize,
    /// The chain-level image of every cochain of `K_J` lies in the
    /// `[m] ∖ J` summand.
    pub contained: bool,
    pub isomorphism: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DegreeVerdict {
    pub degree: isize,
    pub cohomology: AbelianGroup,
    pub homology: AbelianGroup,
    pub isomorphism: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PdCertificate {
    pub verdict: Verdict,
    /// Top degree `D` of nonzero homology of `Z_K`.
    pub top_degree: isize,
    /// `D − m − 1`, the Alexander-duality dimension this predicts for `K`.
    pub inferred_dimension: isize,
    pub fundamental_class: Option<HomologyClass>,
    pub degrees: Vec<DegreeVerdict>,
    pub summands: Vec<SummandRecord>,
    pub failing_degrees: Vec<isize>,
    pub notes: Vec<String>,
}

impl PdCertificate {
    pub fn is_valid(&self) -> bool {
        self.verdict == Verdict::Pass
    }

    pub fn witnesses(&self) -> Vec<Witness> {
        self.degrees
            .iter()
            .filter(|d| !d.isomorphism)
            .map(|d| Witness::Degree {
                degree: d.degree,
                cohomology: d.cohomology.clone(),
                homology: d.homology.clone(),
            })
            .collect()
    }
}

/// The generator of the top homology of `Z_K`, which must be infinite
/// cyclic and come from the summand `J = [m]`.
pub fn fundamental_class(k: &SimplicialComplex) -> Result<HomologyClass, DualityError> {
    guard(k, PD_MAX_VERTICES)?;
    let hh = BigradedHomology::compute(k, PD_MAX_VERTICES)?;
    fundamental_from(&hh)
}

fn fundamental_from(hh: &BigradedHomology) -> Result<HomologyClass, DualityError> {
    let top = hh.top_degree().expect("J = ∅ always contributes H_0");
    let group = hh.total().get(top);
    if !group.is_infinite_cyclic() {
        return Err(DualityError::NoFundamentalClass(format!(
            "H_{top}(Z_K) = {group} is not Z"
        )));
    }
    let full = VertexSet::full(hh.complex().m());
    let summand = hh.in_degree(top).next().expect("nonzero top degree");
    if summand.subset() != full {
        return Err(DualityError::NoFundamentalClass(format!(
            "H_{top}(Z_K) = Z comes from the summand J = {} rather than J = [m]",
            summand.subset()
        )));
    }
    Ok(HomologyClass::generator(hh, top, 0))
}

/// Certifies Poincaré duality of `Z_K` by checking that cap with the
/// fundamental class is an isomorphism in every degree, summand by summand.
pub fn pd_certify(k: &SimplicialComplex) -> Result<PdCertificate, DualityError> {
    pd_certify_capped(k, PD_MAX_VERTICES)
}

pub fn pd_certify_capped(k: &SimplicialComplex, cap: usize) -> Result<PdCertificate, DualityError> {
    guard(k, cap)?;
    let m = k.m();
    let full = VertexSet::full(m);
    let hh = BigradedHomology::compute(k, cap)?;
    let hc = BigradedCohomology::compute(k, cap)?;
    let top = hh.top_degree().expect("J = ∅ always contributes H_0");
    let mut cert = PdCertificate {
        verdict: Verdict::Fail,
        top_degree: top,
        inferred_dimension: top - m as isize - 1,
        fundamental_class: None,
        degrees: Vec::new(),
        summands: Vec::new(),
        failing_degrees: Vec::new(),
        notes: Vec::new(),
    };
    let homology = hh.total();
    let cohomology = hc.total();
    if reduced_cohomology(k).is_zero() {
        cert.verdict = Verdict::Inapplicable;
        cert.notes
            .push("inapplicable: trivial reduced cohomology".into());
        return Ok(cert);
    }
    let mu = match fundamental_from(&hh) {
        Ok(mu) => mu,
        Err(DualityError::NoFundamentalClass(reason)) => {
            cert.notes.push(format!("no fundamental class: {reason}"));
            for p in 0..=top {
                let (c, h) = (cohomology.get(p), homology.get(top - p));
                let isomorphism = c == h;
                if !isomorphism {
                    cert.failing_degrees.push(p);
                }
                cert.degrees.push(DegreeVerdict {
                    degree: p,
                    cohomology: c,
                    homology: h,
                    isomorphism,
                });
            }
            return Ok(cert);
        }
        Err(e) => return Err(e),
    };

    let mut degree_ok: BTreeMap<isize, bool> = (0..=top).map(|p| (p, true)).collect();
    for s in hc.summands() {
        let j = s.subset();
        let target = full.difference(j);
        let target_degree = top - s.total_degree() - target.len() as isize - 1;
        let mut record = SummandRecord {
            subset: j,
            degree: s.degree(),
            target,
            target_degree,
            contained: true,
            isomorphism: false,
        };
        let t = hh.get(target, target_degree);
        let rows = t.map_or(0, |t| t.simplices().len());
        let mut f = IntegerMatrix::zeros(rows, s.simplices().len());
        for (col, &tau) in s.simplices().iter().enumerate() {
            let (cell, sign) = Cell::from_simplex(j, tau);
            let phi = ZkCochain::from_terms(s.total_degree(), [(cell, sign)]);
            let image = cellular_cap(&mu.representative, &phi, k)?;
            for (subset, part) in split_by_summand(&image) {
                if subset != target {
                    record.contained = false;
                    continue;
                }
                let Some(t) = t else {
                    continue;
                };
                for (simplex, x) in part.terms() {
                    let row = t
                        .simplices()
                        .binary_search(simplex)
                        .expect("image lies in K_{[m]∖J}");
                    f[(row, col)] = x.clone();
                }
            }
        }
        if let Some(t) = t {
            record.isomorphism = induced_map_is_isomorphism(&f, s.basis(), t.basis())
                .map_err(MomentAngleError::from)?;
        }
        if !(record.isomorphism && record.contained) {
            degree_ok.insert(s.total_degree(), false);
        }
        cert.summands.push(record);
    }
    for t in hh.summands() {
        let source = full.difference(t.subset());
        let p = top - t.total_degree();
        let l = p - source.len() as isize - 1;
        if hc.get(source, l).is_none() {
            degree_ok.insert(p, false);
        }
    }
    for (p, ok) in degree_ok {
        let (c, h) = (cohomology.get(p), homology.get(top - p));
        if !ok {
            cert.failing_degrees.push(p);
        }
        cert.degrees.push(DegreeVerdict {
            degree: p,
            cohomology: c,
            homology: h,
            isomorphism: ok,
        });
    }
    let support_ok = mu
        .representative
        .terms()
        .all(|(cell, _)| cell.support() == full);
    if !support_ok {
        cert.notes
            .push("fundamental class has a cell not supported on [m]".into());
    }
    let valid =
        cert.failing_degrees.is_empty() && cert.summands.iter().all(|s| s.contained) && support_ok;
    cert.verdict = Verdict::of(valid);
    if valid && Some(cert.inferred_dimension) != k.dimension() {
        cert.notes.push(format!(
            "inferred Alexander dimension {} differs from dim K = {:?}",
            cert.inferred_dimension,
            k.dimension()
        ));
    }
    cert.fundamental_class = Some(mu);
    Ok(cert)
}

/// All checks together, with a consistency assertion among their verdicts.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Classification {
    /// Whether `K` has nonzero reduced cohomology (the hypothesis under
    /// which the verdicts must agree).
    pub hypothesis_met: bool,
    pub verdict: Verdict,
    pub alexander_at_dimension: DualityReport,
    pub alexander_at_inferred: DualityReport,
    pub ghs: DualityReport,
    pub pd: PdCertificate,
    pub gorenstein: DualityReport,
    pub notes: Vec<String>,
}

pub fn classify(k: &SimplicialComplex) -> Result<Classification, DualityError> {
    guard(k, PD_MAX_VERTICES)?;
    let groups = subset_groups(k);
    let dim = k.dimension().expect("not void");
    let full = VertexSet::full(k.m());
    let hypothesis_met = !groups[full.bits() as usize].1.is_zero();
    let pd = pd_certify(k)?;
    let alexander_at_dimension = alexander_from(k, dim, &groups);
    let alexander_at_inferred = alexander_from(k, pd.inferred_dimension, &groups);
    let ghs = ghs_check(k)?;
    let gorenstein = gorenstein_check(k)?;
    let mut notes = Vec::new();
    let verdict = if hypothesis_met {
        let verdicts = [
            ("alexander(dim K)", alexander_at_dimension.passed()),
            ("alexander(inferred)", alexander_at_inferred.passed()),
            ("ghs", ghs.passed()),
            ("pd", pd.is_valid()),
            ("gorenstein", gorenstein.passed()),
        ];
        if verdicts.iter().any(|v| v.1 != verdicts[0].1) {
            let detail: Vec<String> = verdicts
                .iter()
                .map(|(n, v)| format!("{n}={}", Verdict::of(*v)))
                .collect();
            return Err(DualityError::Inconsistent(detail.join(", ")));
        }
        Verdict::of(verdicts[0].1)
    } else {
        notes.push("hypothesis not met: K has trivial reduced cohomology (a cone)".into());
        Verdict::Inapplicable
    };
    Ok(Classification {
        hypothesis_met,
        verdict,
        alexander_at_dimension,
        alexander_at_inferred,
        ghs,
        pd,
        gorenstein,
        notes,
    })
}
