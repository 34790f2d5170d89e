use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use momangle::duality::ghs_check;
use momangle::polyjoin::are_isomorphic;
use momangle::{named, SimplicialComplex};
use momangle_cli::complex_file::{parse_complex, write_complex};
use serde_json::Value;

fn corpus(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("../../corpus")
        .join(name)
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_momangle"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn run_json(args: &[&str]) -> (Value, i32) {
    let out = run(args);
    let doc: Value = serde_json::from_slice(&out.stdout).expect("stdout is JSON");
    assert_eq!(doc["schema"], "momangle/1");
    assert_eq!(doc["signs_convention"], "adjunction-normalized");
    for key in ["check", "input", "params", "verdict", "witnesses", "groups"] {
        assert!(doc.get(key).is_some(), "missing {key}");
    }
    (doc, out.status.code().unwrap())
}

fn path_str(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn octahedron_cohomology() {
    let (doc, code) = run_json(&[
        "cohomology",
        path_str(&corpus("octahedron.cx")),
        "--json",
        "--direct-oracle",
    ]);
    assert_eq!(code, 0);
    assert_eq!(
        doc["poincare_polynomial"],
        serde_json::json!([1, 0, 0, 3, 0, 0, 3, 0, 0, 1])
    );
    assert_eq!(
        doc["groups"]["9"],
        serde_json::json!({ "rank": 1, "torsion": [] })
    );
    assert_eq!(doc["oracle"], "agree");
}

#[test]
fn pentagon_cohomology() {
    let (doc, code) = run_json(&["cohomology", path_str(&corpus("pentagon.cx")), "--json"]);
    assert_eq!(code, 0);
    assert_eq!(
        doc["poincare_polynomial"],
        serde_json::json!([1, 0, 0, 5, 5, 0, 0, 1])
    );
}

#[test]
fn plain_text_cohomology_table() {
    let out = run(&["cohomology", path_str(&corpus("boundary_simplex_3.cx"))]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("Poincare polynomial: 1 + t^5"), "{text}");
    assert!(text.contains("{1,2,3}"));
}

#[test]
fn void_is_an_input_error() {
    let out = run(&["cohomology", path_str(&corpus("void.cx"))]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("VOID complex has no moment-angle model"));
    let (doc, code) = run_json(&["cohomology", path_str(&corpus("void.cx")), "--json"]);
    assert_eq!(code, 2);
    assert_eq!(doc["verdict"], "error");
}

#[test]
fn octahedron_passes_all_checks() {
    let (doc, code) = run_json(&["check", "all", path_str(&corpus("octahedron.cx")), "--json"]);
    assert_eq!(code, 0);
    assert_eq!(doc["verdict"], "pass");
    assert_eq!(doc["checks"].as_array().unwrap().len(), 5);
    for check in ["alexander", "ghs", "pd", "gorenstein"] {
        let out = run(&["check", check, path_str(&corpus("octahedron.cx"))]);
        assert_eq!(out.status.code(), Some(0), "{check}");
    }
}

#[test]
fn rp2_gorenstein_fails_with_torsion() {
    let (doc, code) = run_json(&[
        "check",
        "gorenstein",
        path_str(&corpus("rp2_6.cx")),
        "--json",
    ]);
    assert_eq!(code, 1);
    assert_eq!(doc["verdict"], "fail");
    let w = &doc["witnesses"][0];
    assert_eq!(w["kind"], "link");
    assert_eq!(w["face"], serde_json::json!([]));
    assert_eq!(w["homology"]["1"]["torsion"], serde_json::json!([2]));
    let (doc, code) = run_json(&["check", "ghs", path_str(&corpus("rp2_6.cx")), "--json"]);
    assert_eq!((code, doc["verdict"].as_str()), (1, Some("fail")));
}

#[test]
fn cone_pd_is_inapplicable() {
    let out = run(&["check", "pd", path_str(&corpus("cone_pentagon.cx"))]);
    assert_eq!(out.status.code(), Some(1));
    assert!(
        String::from_utf8_lossy(&out.stdout).contains("inapplicable: trivial reduced cohomology")
    );
    let (doc, _) = run_json(&["check", "all", path_str(&corpus("path3.cx")), "--json"]);
    assert_eq!(doc["verdict"], "inapplicable");
    assert_eq!(doc["params"]["hypothesis_met"], false);
}

#[test]
fn three_points_alexander_witnesses() {
    for d in ["-1", "0", "1", "2"] {
        let (doc, code) = run_json(&[
            "check",
            "alexander",
            path_str(&corpus("three_points.cx")),
            "--dim",
            d,
            "--json",
        ]);
        assert_eq!(code, 1, "d = {d}");
        assert_eq!(doc["params"]["d"], d.parse::<i64>().unwrap());
        assert!(!doc["witnesses"].as_array().unwrap().is_empty());
    }
}

#[test]
fn dim_is_only_for_alexander() {
    let out = run(&[
        "check",
        "ghs",
        path_str(&corpus("pentagon.cx")),
        "--dim",
        "1",
    ]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn budgets_exit_three() {
    let out = run(&[
        "cohomology",
        path_str(&corpus("octahedron.cx")),
        "--max-m",
        "5",
    ]);
    assert_eq!(out.status.code(), Some(3));
    let out = run(&[
        "check",
        "pd",
        path_str(&corpus("octahedron.cx")),
        "--max-m",
        "4",
    ]);
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn parse_errors_exit_two() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.cx");
    std::fs::write(&bad, "m 3\nfacet 1 4\n").unwrap();
    let out = run(&["cohomology", path_str(&bad)]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("line 2"));
    let out = run(&["cohomology", path_str(&dir.path().join("missing.cx"))]);
    assert_eq!(out.status.code(), Some(2));
    let out = run(&["check", "nonsense", path_str(&bad)]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn polyjoin_octahedron() {
    let pair = corpus("polyjoin/octahedron_pair.cx");
    let out = run(&[
        "polyjoin",
        path_str(&corpus("polyjoin/octahedron_base.cx")),
        path_str(&pair),
        path_str(&pair),
    ]);
    assert_eq!(out.status.code(), Some(0));
    let k = parse_complex(&String::from_utf8(out.stdout).unwrap()).unwrap();
    assert_eq!(k.m(), 6);
    assert!(are_isomorphic(&k, &named::octahedron()).unwrap());
}

#[test]
fn polyjoin_seven_vertex_sphere() {
    let dir = tempfile::tempdir().unwrap();
    let out_path = dir.path().join("sphere.cx");
    let point = corpus("polyjoin/sphere7_point.cx");
    let out = run(&[
        "polyjoin",
        path_str(&corpus("polyjoin/sphere7_base.cx")),
        path_str(&point),
        path_str(&point),
        path_str(&corpus("polyjoin/sphere7_pentagon.cx")),
        "--out",
        path_str(&out_path),
    ]);
    assert_eq!(out.status.code(), Some(0));
    assert!(out.stdout.is_empty());
    let k = parse_complex(&std::fs::read_to_string(&out_path).unwrap()).unwrap();
    assert_eq!(k.m(), 7);
    assert!(ghs_check(&k).unwrap().passed());
    let out = run(&["check", "ghs", path_str(&out_path)]);
    assert_eq!(out.status.code(), Some(0));
}

#[test]
fn polyjoin_full_pairs_give_the_join() {
    let dir = tempfile::tempdir().unwrap();
    let base = dir.path().join("base.cx");
    std::fs::write(&base, "m 2\nfacet 1 2\n").unwrap();
    let a = dir.path().join("a.cx");
    std::fs::write(&a, "m 2\nfacet 1\nfacet 2\nsmall 1\nsmall 2\n").unwrap();
    let b = dir.path().join("b.cx");
    std::fs::write(&b, "m 3\nfacet 1 2\nfacet 3\nsmall 1 2\nsmall 3\n").unwrap();
    let out = run(&["polyjoin", path_str(&base), path_str(&a), path_str(&b)]);
    assert_eq!(out.status.code(), Some(0));
    let k = parse_complex(&String::from_utf8(out.stdout).unwrap()).unwrap();
    let expected = named::points(2)
        .join(&SimplicialComplex::from_facet_lists(3, &[&[1, 2], &[3]]).unwrap())
        .unwrap();
    assert_eq!(k, expected);
}

#[test]
fn polyjoin_composition() {
    let factor = corpus("polyjoin/composition_factor.cx");
    let out = run(&[
        "polyjoin",
        path_str(&corpus("polyjoin/composition_base.cx")),
        path_str(&factor),
        path_str(&factor),
        "--composition",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let k = parse_complex(&String::from_utf8(out.stdout).unwrap()).unwrap();
    assert_eq!(k, SimplicialComplex::simplex_boundary(6));
}

#[test]
fn polyjoin_containment_violation() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.cx");
    std::fs::write(&bad, "m 2\nfacet 1\nsmall 2\n").unwrap();
    let out = run(&[
        "polyjoin",
        path_str(&corpus("polyjoin/octahedron_base.cx")),
        path_str(&bad),
        path_str(&bad),
    ]);
    assert_eq!(out.status.code(), Some(2));
    let out = run(&[
        "polyjoin",
        path_str(&corpus("polyjoin/octahedron_base.cx")),
        path_str(&bad),
    ]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn corpus_round_trips_and_oracle_agrees() {
    let mut count = 0;
    for entry in std::fs::read_dir(corpus("")).unwrap() {
        let path = entry.unwrap().path();
        if path.extension().and_then(|e| e.to_str()) != Some("cx") {
            continue;
        }
        count += 1;
        let k = parse_complex(&std::fs::read_to_string(&path).unwrap()).unwrap();
        assert_eq!(
            parse_complex(&write_complex(&k)).unwrap(),
            k,
            "{}",
            path.display()
        );
        if !k.is_void() {
            let out = run(&["cohomology", path_str(&path), "--direct-oracle"]);
            assert_eq!(out.status.code(), Some(0), "{}", path.display());
        }
    }
    assert!(count >= 14);
}

#[test]
fn ghost_point_is_a_circle() {
    let (doc, code) = run_json(&["cohomology", path_str(&corpus("ghost_point.cx")), "--json"]);
    assert_eq!(code, 0);
    assert_eq!(doc["poincare_polynomial"], serde_json::json!([1, 1]));
    let (doc, code) = run_json(&["check", "pd", path_str(&corpus("ghost_point.cx")), "--json"]);
    assert_eq!((code, doc["verdict"].as_str()), (0, Some("pass")));
}
