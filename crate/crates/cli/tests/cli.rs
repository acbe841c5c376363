use std::path::PathBuf;
use std::process::{Command, Output};

use serde::de::DeserializeOwned;
use serde::Serialize;
use stdpairs_cli::formats::{
    to_json, DecompositionFile, FacesFile, IdealFile, MultiplicityFile, PairsFile, ValidationFile,
};

fn fixture(name: &str) -> String {
    let p: PathBuf = [env!("CARGO_MANIFEST_DIR"), "tests", "fixtures", name]
        .iter()
        .collect();
    p.to_string_lossy().into_owned()
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_stdpairs"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(args: &[&str]) -> String {
    let out = run(args);
    assert!(
        out.status.success(),
        "{args:?} failed: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    String::from_utf8(out.stdout).unwrap()
}

/// Parses with the declared schema and checks that re-emitting is the identity.
fn round_trip<T: Serialize + DeserializeOwned>(text: &str) -> T {
    let value: T = serde_json::from_str(text).unwrap();
    assert_eq!(to_json(&value), text);
    value
}

fn failure(args: &[&str]) -> (i32, serde_json::Value) {
    let out = run(args);
    assert!(!out.status.success());
    let err: serde_json::Value = serde_json::from_slice(&out.stderr).unwrap();
    (out.status.code().unwrap(), err)
}

#[test]
fn std_pairs_of_the_plane_example() {
    let text = stdout(&[
        "std-pairs",
        "--matrix",
        &fixture("plane.json"),
        "--ideal",
        &fixture("plane_ideal.json"),
    ]);
    let pairs: PairsFile = round_trip(&text);
    let got: Vec<(Vec<i64>, Vec<usize>)> =
        pairs.pairs.into_iter().map(|p| (p.root, p.face)).collect();
    assert_eq!(
        got,
        vec![
            (vec![1, 1], vec![]),
            (vec![2, 1], vec![]),
            (vec![0, 0], vec![1]),
            (vec![0, 0], vec![2]),
        ]
    );
}

#[test]
fn irreducible_decomposition_of_ring_ii() {
    let text = stdout(&[
        "irreducible-decomp",
        "--matrix",
        &fixture("ring_ii.json"),
        "--ideal",
        &fixture("ring_ii_ideal.json"),
    ]);
    let d: DecompositionFile = round_trip(&text);
    assert_eq!(d.kind, "irreducible");
    let comps: Vec<(Vec<usize>, Vec<Vec<i64>>)> = d
        .components
        .into_iter()
        .map(|c| (c.face, c.generators))
        .collect();
    assert_eq!(
        comps,
        vec![
            (vec![1], vec![vec![0, 1]]),
            (vec![1], vec![vec![0, 2], vec![1, 1]]),
        ]
    );
}

#[test]
fn primary_decomposition_and_primes_of_the_plane() {
    let args = |cmd: &'static str| {
        stdout(&[
            cmd,
            "--matrix",
            &fixture("plane.json"),
            "--ideal",
            &fixture("plane_ideal.json"),
        ])
    };
    let d: DecompositionFile = round_trip(&args("primary-decomp"));
    assert_eq!(d.kind, "primary");
    assert_eq!(d.components.len(), 3);
    assert_eq!(d.components[0].face, Vec::<usize>::new());
    assert_eq!(d.components[0].generators, vec![vec![0, 2], vec![3, 0]]);
    let primes: FacesFile = round_trip(&args("assoc-primes"));
    assert_eq!(primes.faces, vec![vec![], vec![1], vec![2]]);
    let mult: MultiplicityFile = round_trip(&args("multiplicity"));
    let mult: Vec<(Vec<usize>, usize)> = mult
        .multiplicities
        .into_iter()
        .map(|m| (m.face, m.multiplicity))
        .collect();
    assert_eq!(mult, vec![(vec![], 2), (vec![1], 1), (vec![2], 1)]);
}

#[test]
fn intersect_with_the_unit_ideal() {
    let text = stdout(&[
        "intersect",
        "--matrix",
        &fixture("ring_ii.json"),
        "--ideal",
        &fixture("unit.json"),
        "--with",
        &fixture("ring_ii_ideal.json"),
    ]);
    let i: IdealFile = round_trip(&text);
    assert_eq!(i.generators, vec![vec![0, 2], vec![1, 2]]);
}

#[test]
fn pairs_feed_back_into_generators() {
    let dir = tempfile::tempdir().unwrap();
    let pairs = dir.path().join("pairs.json");
    let pairs = pairs.to_str().unwrap();
    let matrix = fixture("nonnormal2.json");
    stdout(&[
        "std-pairs",
        "--matrix",
        &matrix,
        "--ideal",
        &fixture("nonnormal2_ideal.json"),
        "--output",
        pairs,
    ]);
    let back: IdealFile = round_trip(&stdout(&[
        "gens-from-pairs",
        "--matrix",
        &matrix,
        "--pairs",
        pairs,
    ]));
    assert_eq!(back.generators, vec![vec![3, 2], vec![5, 1]]);
    let text = stdout(&[
        "irreducible-decomp",
        "--matrix",
        &matrix,
        "--pairs",
        pairs,
        "--format",
        "text",
    ]);
    assert!(
        text.starts_with("irreducible decomposition, 4 components\n"),
        "{text}"
    );
}

#[test]
fn output_is_byte_stable() {
    let args = [
        "primary-decomp",
        "--matrix",
        &fixture("nonnormal3.json"),
        "--ideal",
        &fixture("nonnormal3_ideal.json"),
    ];
    let first = stdout(&args);
    assert_eq!(first, stdout(&args));
    round_trip::<DecompositionFile>(&first);
}

#[test]
fn validate_reports_faces() {
    let text = stdout(&["validate", "--matrix", &fixture("nonnormal2.json")]);
    let v: ValidationFile = round_trip(&text);
    assert_eq!((v.dimension, v.columns), (2, 4));
    assert_eq!(v.faces, vec![vec![], vec![2], vec![3, 4], vec![1, 2, 3, 4]]);
    let text = stdout(&[
        "validate",
        "--matrix",
        &fixture("nonnormal2.json"),
        "--format",
        "text",
    ]);
    assert!(text.starts_with("dimension 2 columns 4\n"));
}

#[test]
fn render_2d_writes_svg() {
    let svg = stdout(&[
        "render-2d",
        "--matrix",
        &fixture("nonnormal2.json"),
        "--ideal",
        &fixture("nonnormal2_ideal.json"),
    ]);
    assert!(svg.starts_with("<svg"));
    assert!(svg.trim_end().ends_with("</svg>"));
    // the two holes (1,0) and (2,1)
    assert_eq!(svg.matches(r#"class="hole""#).count(), 2);
    let (code, err) = failure(&[
        "render-2d",
        "--matrix",
        &fixture("nonnormal3.json"),
        "--ideal",
        &fixture("nonnormal3_ideal.json"),
    ]);
    assert_eq!(code, 3);
    assert_eq!(err["error"]["kind"], "unsupported_dimension");
}

#[test]
fn errors_are_json_with_exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let broken = dir.path().join("broken.json");
    std::fs::write(&broken, "{\"matrix\": [[1").unwrap();
    let (code, err) = failure(&["validate", "--matrix", broken.to_str().unwrap()]);
    assert_eq!((code, err["error"]["kind"].as_str()), (2, Some("parse")));

    let cone = dir.path().join("cone.json");
    std::fs::write(&cone, r#"{"matrix": [[1, -1], [0, 0]]}"#).unwrap();
    let (code, err) = failure(&["validate", "--matrix", cone.to_str().unwrap()]);
    assert_eq!(
        (code, err["error"]["kind"].as_str()),
        (3, Some("validation"))
    );

    let (code, err) = failure(&[
        "std-pairs",
        "--matrix",
        &fixture("nonnormal3.json"),
        "--ideal",
        &fixture("nonnormal3_ideal.json"),
        "--budget",
        "3",
    ]);
    assert_eq!(
        (code, err["error"]["kind"].as_str()),
        (4, Some("budget_exceeded"))
    );

    let (code, _) = failure(&["std-pairs", "--matrix", &fixture("plane.json")]);
    assert_eq!(code, 2);
}
