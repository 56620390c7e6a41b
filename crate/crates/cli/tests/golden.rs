//! Golden outputs for the fixtures. Set `UPDATE_GOLDEN=1` to rewrite them.

use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use kolmo_core::io::{from_json, CertificateFile, FieldFile};

const CASES: &[(&str, &[&str], i32)] = &[
    ("check_sphere_cubic", &["check", "--field", "fixtures/sphere_cubic.json", "--dim", "3"], 0),
    ("check_rotation", &["check", "--field", "fixtures/rotation.json"], 1),
    ("cofactor_sphere", &["cofactor", "--field", "fixtures/sphere_cubic.json", "--surface", "x1^2+x2^2+x3^2-1"], 0),
    ("cofactor_not_invariant", &["cofactor", "--field", "fixtures/sphere_cubic.json", "--surface", "x1+x2-1"], 1),
    ("darboux_sphere_cubic", &["darboux", "--field", "fixtures/sphere_cubic.json", "--g", "x1^2+x2^2+x3^2-1"], 0),
    ("syzygy_sphere_cubic", &["syzygy-fi", "--form", "fixtures/sphere_cubic_form.json"], 0),
    ("hyperplane_through_origin", &["classify-hyperplane", "--form", "fixtures/hyperplane_form.json", "--a0", "0", "--a", "1,-1,0"], 0),
    ("hyperplane_not_invariant", &["classify-hyperplane", "--form", "fixtures/sphere_cubic_form.json", "--a0", "0", "--a", "1,1,0"], 1),
    ("construct_linear_fi", &["construct", "linear-fi", "--a0", "0", "--a", "1,1,1", "--seed", "fixtures/linear_seed.json"], 0),
    ("construct_complete", &["construct", "complete", "--n", "2", "--m", "4", "--atilde", "x3"], 0),
    ("construct_cubic", &["construct", "cubic", "--form", "fixtures/sphere_cubic_form.json"], 0),
    ("hamiltonian_planar_cubic", &["hamiltonian", "--field", "fixtures/planar_cubic.json"], 0),
    ("hamiltonian_sphere_cubic_rejects_odd", &["hamiltonian", "--field", "fixtures/sphere_cubic.json"], 2),
    ("hamiltonian_space_1", &["hamiltonian", "--constraint-space", "--n", "1"], 0),
    ("hamiltonian_space_2", &["hamiltonian", "--constraint-space", "--n", "2"], 0),
    ("integrate_rotation", &["integrate", "--field", "fixtures/rotation.json", "--x0", "1,0", "--h", "0.01", "--steps", "100", "--watch", "x1^2+x2^2"], 0),
    ("certify_determinant", &["certify", "--suite", "cor44"], 0),
    ("certify_hamiltonian", &["certify", "--suite", "thm13"], 1),
    ("certify_roundtrip", &["certify", "--suite", "roundtrip", "--seed", "3", "--instances", "20"], 0),
    ("certify_hyperplane", &["certify", "--suite", "thm41", "--seed", "3", "--instances", "20"], 0),
    ("certify_slices", &["certify", "--suite", "thm37", "--seed", "3", "--instances", "20"], 0),
];

fn root() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
}

fn kolmo(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_kolmo"))
        .args(args)
        .current_dir(root())
        .output()
        .expect("binary runs")
}

fn golden_path(name: &str) -> PathBuf {
    root().join("tests").join("golden").join(format!("{name}.json"))
}

#[test]
fn fixtures_match_golden_json() {
    let update = std::env::var_os("UPDATE_GOLDEN").is_some();
    let mut mismatched = Vec::new();
    for (name, args, code) in CASES {
        let mut full = args.to_vec();
        full.extend(["--format", "json"]);
        let out = kolmo(&full);
        assert_eq!(out.status.code(), Some(*code), "{name}: {}", String::from_utf8_lossy(&out.stderr));
        if *code == 2 {
            assert!(out.stdout.is_empty());
            assert!(!out.stderr.is_empty());
            continue;
        }
        let path = golden_path(name);
        if update {
            std::fs::create_dir_all(path.parent().unwrap()).unwrap();
            std::fs::write(&path, &out.stdout).unwrap();
        } else if std::fs::read(&path).ok().as_deref() != Some(&out.stdout[..]) {
            mismatched.push(*name);
        }
    }
    assert!(mismatched.is_empty(), "golden mismatch: {mismatched:?}");
}

#[test]
fn reruns_are_byte_identical() {
    for (_, args, _) in CASES {
        let mut full = args.to_vec();
        full.extend(["--format", "json"]);
        assert_eq!(kolmo(&full).stdout, kolmo(&full).stdout);
    }
}

fn stdout(args: &[&str]) -> String {
    String::from_utf8(kolmo(args).stdout).unwrap()
}

#[test]
fn json_round_trips_through_schemas() {
    let cert: CertificateFile = from_json(&stdout(&[
        "darboux", "--field", "fixtures/sphere_cubic.json", "--g", "x1^2+x2^2+x3^2-1", "--format", "json",
    ]))
    .unwrap();
    assert_eq!(cert.rank_b, 2);
    assert_eq!(cert.integrals.len(), 2);
    assert!(cert.hypothesis.checked);
    assert_eq!(cert.hypothesis.determinants[2], "-180");
    assert_eq!(
        serde_json::to_value(&cert).unwrap(),
        serde_json::from_str::<serde_json::Value>(&stdout(&[
            "darboux", "--field", "fixtures/sphere_cubic.json", "--g", "x1^2+x2^2+x3^2-1", "--format", "json",
        ]))
        .unwrap()
    );

    let field: FieldFile = from_json(&stdout(&["construct", "cubic", "--form", "fixtures/sphere_cubic_form.json", "--format", "json"])).unwrap();
    let fixture: FieldFile = from_json(&std::fs::read_to_string(root().join("fixtures/sphere_cubic.json")).unwrap()).unwrap();
    assert_eq!(field.to_field().unwrap(), fixture.to_field().unwrap());

    let v: serde_json::Value = serde_json::from_str(&stdout(&[
        "construct", "complete", "--n", "2", "--m", "4", "--atilde", "x3", "--format", "json",
    ]))
    .unwrap();
    let nested: FieldFile = serde_json::from_value(v["field"].clone()).unwrap();
    assert_eq!(nested.dim, 3);
}

#[test]
fn text_reports() {
    assert!(stdout(&["check", "--field", "fixtures/sphere_cubic.json"]).starts_with("kolmogorov=true sphere_invariant=true"));
    assert_eq!(stdout(&["hamiltonian", "--constraint-space", "--n", "2"]), "dimension 0\n");
    let darboux = stdout(&["darboux", "--field", "fixtures/sphere_cubic.json", "--g", "x1^2+x2^2+x3^2-1"]);
    assert!(darboux.contains("2 first integrals"));
    let csv = stdout(&["integrate", "--field", "fixtures/rotation.json", "--x0", "1,0", "--h", "0.1", "--steps", "3"]);
    assert_eq!(csv.lines().next(), Some("t,x1,x2"));
    assert_eq!(csv.lines().count(), 5);
}

#[test]
fn bad_input_exits_with_two() {
    let cases: &[&[&str]] = &[
        &["check", "--field", "fixtures/missing.json"],
        &["check", "--field", "fixtures/sphere_cubic.json", "--dim", "4"],
        &["cofactor", "--field", "fixtures/sphere_cubic.json", "--surface", "x1 x2"],
        &["cofactor", "--field", "fixtures/sphere_cubic.json", "--surface", "x4"],
        &["classify-hyperplane", "--form", "fixtures/sphere_cubic_form.json", "--a0", "1/0", "--a", "1,0,0"],
        &["darboux", "--field", "fixtures/rotation.json", "--g", "x1"],
        &["certify", "--suite", "nope"],
        &["hamiltonian"],
        &["frobnicate"],
        &["integrate", "--field", "fixtures/rotation.json", "--x0", "1", "--h", "0.1", "--steps", "1"],
    ];
    for args in cases {
        let out = kolmo(args);
        assert_eq!(out.status.code(), Some(2), "{args:?}");
        assert!(!out.stderr.is_empty());
    }
}

#[test]
fn blow_up_is_a_negative_verdict() {
    let dir = std::env::temp_dir().join(format!("kolmo-golden-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let file = dir.join("quadratic.json");
    std::fs::write(&file, r#"{"dim": 1, "components": ["x1^2"]}"#).unwrap();
    let out = kolmo(&["integrate", "--field", file.to_str().unwrap(), "--x0", "1", "--h", "0.5", "--steps", "100"]);
    assert_eq!(out.status.code(), Some(1));
    let _ = std::fs::remove_dir_all(Path::new(&dir));
}
