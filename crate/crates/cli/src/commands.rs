//! The subcommands, as pure functions from inputs to printed output and
//! exit status.

use std::fmt::Write as _;
use std::path::Path;

use momangle::duality::{
    alexander_duality_check, classify, ghs_check, gorenstein_check, pd_certify_capped,
    DualityReport, PdCertificate, Verdict, Witness, PD_MAX_VERTICES,
};
use momangle::homology::GradedGroups;
use momangle::moment_angle::{
    polynomial_of, zk_homology_direct_capped, BigradedCohomology, DIRECT_MAX_VERTICES,
    HOCHSTER_MAX_VERTICES,
};
use momangle::polyjoin::{composition_complex, polyhedral_join, JoinSpec};
use momangle::SimplicialComplex;
use serde_json::Value;

use crate::complex_file::{parse_complex, parse_pair_checked, write_complex, PairFileError};
use crate::report::{duality_body, graded, pd_body, witness, Report};
use crate::{CliError, Outcome, EXIT_FAIL, EXIT_PASS};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Which {
    Alexander,
    Ghs,
    Pd,
    Gorenstein,
    All,
}

impl Which {
    pub fn as_str(self) -> &'static str {
        match self {
            Which::Alexander => "alexander",
            Which::Ghs => "ghs",
            Which::Pd => "pd",
            Which::Gorenstein => "gorenstein",
            Which::All => "all",
        }
    }
}

fn read(path: &Path) -> Result<String, CliError> {
    std::fs::read_to_string(path).map_err(|source| CliError::Io {
        path: path.display().to_string(),
        source,
    })
}

pub fn load_complex(path: &Path) -> Result<SimplicialComplex, CliError> {
    parse_complex(&read(path)?).map_err(|source| CliError::Parse {
        path: path.display().to_string(),
        source,
    })
}

fn enforce_cap(k: &SimplicialComplex, max_m: Option<usize>) -> Result<(), CliError> {
    match max_m {
        Some(cap) if k.m() > cap => Err(CliError::Budget(format!(
            "complex has {} vertices, above --max-m {cap}",
            k.m()
        ))),
        _ => Ok(()),
    }
}

fn polynomial_text(coeffs: &[u64]) -> String {
    let terms: Vec<String> = coeffs
        .iter()
        .enumerate()
        .filter(|(_, &c)| c != 0)
        .map(|(d, &c)| match (d, c) {
            (0, c) => c.to_string(),
            (1, 1) => "t".into(),
            (1, c) => format!("{c}t"),
            (d, 1) => format!("t^{d}"),
            (d, c) => format!("{c}t^{d}"),
        })
        .collect();
    if terms.is_empty() {
        "0".into()
    } else {
        terms.join(" + ")
    }
}

fn groups_text(out: &mut String, symbol: &str, groups: &GradedGroups) {
    for (d, g) in groups.iter() {
        writeln!(out, "  {symbol}^{d} = {g}").unwrap();
    }
}

#[derive(Debug, Clone, Default)]
pub struct CohomologyOptions {
    pub direct_oracle: bool,
    pub max_m: Option<usize>,
    pub json: bool,
}

/// Bigraded table and Poincaré polynomial of `H^*(Z_K)`, optionally
/// cross-checked against the direct cellular computation.
pub fn cohomology(path: &Path, opts: &CohomologyOptions) -> Result<Outcome, CliError> {
    let k = load_complex(path)?;
    let bigraded = BigradedCohomology::compute(&k, opts.max_m.unwrap_or(HOCHSTER_MAX_VERTICES))?;
    let groups = bigraded.total();
    let coeffs = polynomial_of(&groups);
    let oracle = if opts.direct_oracle {
        let direct_cap = opts.max_m.unwrap_or(DIRECT_MAX_VERTICES);
        let direct = zk_homology_direct_capped(&k, direct_cap)?.dualize_homology();
        if direct != groups {
            return Err(CliError::OracleMismatch(format!(
                "Hochster gives {} but the direct cellular computation gives {}",
                graded(&groups),
                graded(&direct)
            )));
        }
        true
    } else {
        false
    };

    let input = path.display().to_string();
    let stdout = if opts.json {
        let mut r = Report::new("cohomology", &input);
        r.params.insert("m".into(), Value::from(k.m()));
        r.params
            .insert("direct_oracle".into(), Value::from(opts.direct_oracle));
        if let Some(cap) = opts.max_m {
            r.params.insert("max_m".into(), Value::from(cap));
        }
        r.groups = groups;
        r.extra
            .insert("poincare_polynomial".into(), Value::from(coeffs));
        r.extra.insert("bigraded".into(), bigraded_json(&bigraded));
        if oracle {
            r.extra.insert("oracle".into(), Value::from("agree"));
        }
        r.render()
    } else {
        let mut out = String::new();
        writeln!(out, "H^*(Z_K) for {input} (m = {})", k.m()).unwrap();
        writeln!(out, "{:<24} {:>4} {:>7}  group", "J", "l", "degree").unwrap();
        for s in bigraded.summands() {
            writeln!(
                out,
                "{:<24} {:>4} {:>7}  {}",
                s.subset().to_string(),
                s.degree(),
                s.total_degree(),
                s.group()
            )
            .unwrap();
        }
        writeln!(out, "groups:").unwrap();
        groups_text(&mut out, "H", &groups);
        writeln!(out, "Poincare polynomial: {}", polynomial_text(&coeffs)).unwrap();
        writeln!(out, "coefficients: {coeffs:?}").unwrap();
        if oracle {
            writeln!(out, "oracle: direct cellular homology agrees").unwrap();
        }
        out
    };
    Ok(Outcome {
        stdout,
        exit: EXIT_PASS,
    })
}

fn bigraded_json(b: &BigradedCohomology) -> Value {
    b.summands()
        .iter()
        .map(|s| {
            serde_json::json!({
                "subset": crate::report::vertex_set(s.subset()),
                "degree": s.degree(),
                "total_degree": s.total_degree(),
                "group": crate::report::group(s.group()),
            })
        })
        .collect()
}

#[derive(Debug, Clone, Default)]
pub struct CheckOptions {
    pub dim: Option<isize>,
    pub max_m: Option<usize>,
    pub json: bool,
}

fn witness_text(w: &Witness) -> String {
    match w {
        Witness::Subset {
            subset,
            degree,
            lhs,
            rhs,
        } => {
            format!("J = {subset}, l = {degree}: H~^{degree}(K_J) = {lhs} but the dual homology is {rhs}")
        }
        Witness::Face {
            face,
            homology,
            expected,
        } => {
            let groups: Vec<String> = homology
                .iter()
                .map(|(d, g)| format!("H~_{d} = {g}"))
                .collect();
            let shown = if groups.is_empty() {
                "acyclic".to_string()
            } else {
                groups.join(", ")
            };
            if face.is_empty() {
                format!("K itself: {shown}, expected the homology of S^{expected}")
            } else {
                format!("link of {face}: {shown}, expected the homology of S^{expected}")
            }
        }
        Witness::Degree {
            degree,
            cohomology,
            homology,
        } => {
            format!("degree {degree}: H^{degree}(Z_K) = {cohomology} is not carried onto H_* = {homology}")
        }
    }
}

fn duality_text(out: &mut String, r: &DualityReport) {
    let params: Vec<String> = r.params.iter().map(|(k, v)| format!("{k} = {v}")).collect();
    writeln!(
        out,
        "{}: {} ({})",
        r.check.as_str(),
        r.verdict,
        params.join(", ")
    )
    .unwrap();
    for w in &r.witnesses {
        writeln!(out, "  witness: {}", witness_text(w)).unwrap();
    }
    for n in &r.notes {
        writeln!(out, "  note: {n}").unwrap();
    }
}

fn pd_text(out: &mut String, c: &PdCertificate) {
    writeln!(
        out,
        "pd: {} (top degree = {}, inferred dimension = {})",
        c.verdict, c.top_degree, c.inferred_dimension
    )
    .unwrap();
    if let Some(mu) = &c.fundamental_class {
        writeln!(
            out,
            "  fundamental class: {} cells",
            mu.representative.len()
        )
        .unwrap();
    }
    for d in &c.degrees {
        if !d.isomorphism {
            writeln!(
                out,
                "  witness: {}",
                witness_text(&Witness::Degree {
                    degree: d.degree,
                    cohomology: d.cohomology.clone(),
                    homology: d.homology.clone(),
                })
            )
            .unwrap();
        }
    }
    for n in &c.notes {
        writeln!(out, "  note: {n}").unwrap();
    }
}

fn exit_for(v: Verdict) -> u8 {
    if v == Verdict::Pass {
        EXIT_PASS
    } else {
        EXIT_FAIL
    }
}

/// Runs one duality check, or all of them with a consistency assertion.
pub fn check(path: &Path, which: Which, opts: &CheckOptions) -> Result<Outcome, CliError> {
    let k = load_complex(path)?;
    if opts.dim.is_some() && which != Which::Alexander {
        return Err(CliError::Input(
            "--dim applies only to the alexander check".into(),
        ));
    }
    if k.is_void() {
        return Err(CliError::Input(
            "duality checks are undefined on the VOID complex".into(),
        ));
    }
    enforce_cap(&k, opts.max_m)?;
    let input = path.display().to_string();
    let mut report = Report::new(which.as_str(), &input);
    report.params.insert("m".into(), Value::from(k.m()));
    report.groups = momangle::moment_angle::zk_cohomology_groups(&k)?;
    let mut text = String::new();

    let verdict = match which {
        Which::Alexander => {
            let d = opts.dim.unwrap_or_else(|| k.dimension().expect("not void"));
            let r = alexander_duality_check(&k, d)?;
            fill(&mut report, duality_body(&r));
            duality_text(&mut text, &r);
            r.verdict
        }
        Which::Ghs => {
            let r = ghs_check(&k)?;
            fill(&mut report, duality_body(&r));
            duality_text(&mut text, &r);
            r.verdict
        }
        Which::Gorenstein => {
            let r = gorenstein_check(&k)?;
            fill(&mut report, duality_body(&r));
            duality_text(&mut text, &r);
            r.verdict
        }
        Which::Pd => {
            let c = pd_certify_capped(&k, opts.max_m.unwrap_or(PD_MAX_VERTICES))?;
            fill(&mut report, pd_body(&c));
            pd_text(&mut text, &c);
            c.verdict
        }
        Which::All => {
            let c = classify(&k)?;
            let bodies = vec![
                duality_body(&c.alexander_at_dimension),
                duality_body(&c.alexander_at_inferred),
                duality_body(&c.ghs),
                pd_body(&c.pd),
                duality_body(&c.gorenstein),
            ];
            for r in [
                &c.alexander_at_dimension,
                &c.alexander_at_inferred,
                &c.ghs,
                &c.gorenstein,
            ] {
                for w in &r.witnesses {
                    let mut v = witness(w);
                    v["check"] = Value::from(r.check.as_str());
                    report.witnesses.push(v);
                }
            }
            for w in c.pd.witnesses() {
                let mut v = witness(&w);
                v["check"] = Value::from("pd");
                report.witnesses.push(v);
            }
            report
                .params
                .insert("hypothesis_met".into(), Value::from(c.hypothesis_met));
            report.extra.insert(
                "checks".into(),
                bodies.into_iter().map(Value::Object).collect(),
            );
            if !c.notes.is_empty() {
                report.extra.insert(
                    "notes".into(),
                    c.notes.iter().map(|n| Value::from(n.as_str())).collect(),
                );
            }
            duality_text(&mut text, &c.alexander_at_dimension);
            duality_text(&mut text, &c.alexander_at_inferred);
            duality_text(&mut text, &c.ghs);
            pd_text(&mut text, &c.pd);
            duality_text(&mut text, &c.gorenstein);
            for n in &c.notes {
                writeln!(text, "note: {n}").unwrap();
            }
            c.verdict
        }
    };
    report.verdict = verdict.as_str().into();
    let stdout = if opts.json {
        report.render()
    } else {
        let mut out = format!("{input} (m = {})\n", k.m());
        out.push_str(&text);
        writeln!(out, "verdict: {verdict}").unwrap();
        out
    };
    Ok(Outcome {
        stdout,
        exit: exit_for(verdict),
    })
}

fn fill(report: &mut Report, body: serde_json::Map<String, Value>) {
    for (key, value) in body {
        match key.as_str() {
            "check" | "verdict" => {}
            "params" => {
                if let Value::Object(p) = value {
                    report.params.extend(p);
                }
            }
            "witnesses" => {
                if let Value::Array(w) = value {
                    report.witnesses = w;
                }
            }
            _ => {
                report.extra.insert(key, value);
            }
        }
    }
}

#[derive(Debug, Clone, Default)]
pub struct PolyjoinOptions {
    pub composition: bool,
    pub out: Option<std::path::PathBuf>,
}

/// Builds a polyhedral join (or composition complex) and writes it as a complex file.
pub fn polyjoin(
    base_path: &Path,
    pair_paths: &[std::path::PathBuf],
    opts: &PolyjoinOptions,
) -> Result<Outcome, CliError> {
    let base = load_complex(base_path)?;
    let result = if opts.composition {
        let factors = pair_paths
            .iter()
            .map(|p| load_complex(p))
            .collect::<Result<Vec<_>, _>>()?;
        composition_complex(&base, &factors)?
    } else {
        let mut pairs = Vec::new();
        for p in pair_paths {
            let pair = parse_pair_checked(&read(p)?).map_err(|e| match e {
                PairFileError::Parse(source) => CliError::Parse {
                    path: p.display().to_string(),
                    source,
                },
                PairFileError::Containment(e) => CliError::Input(format!("{}: {e}", p.display())),
            })?;
            pairs.push(pair);
        }
        polyhedral_join(&JoinSpec::new(base, pairs)?)?
    };
    let text = write_complex(&result);
    let stdout = match &opts.out {
        Some(path) => {
            std::fs::write(path, &text).map_err(|source| CliError::Io {
                path: path.display().to_string(),
                source,
            })?;
            String::new()
        }
        None => text,
    };
    Ok(Outcome {
        stdout,
        exit: EXIT_PASS,
    })
}
