use std::process::{Command, Output};

use equiareal::cli::{cmd_check_with, cmd_classify, ExitStatus, Options};
use equiareal::metric::SquaredEdges;
use equiareal::scalar::Scalar;
use equiareal::solve::{enumerate_completions, SolutionRow, SolveError};
use equiareal::{classify, sampling};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::Value;

fn run(args: &[&str], stdin: Option<&str>) -> Output {
    use std::io::Write;
    use std::process::Stdio;
    let mut child = Command::new(env!("CARGO_BIN_EXE_equiareal"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .expect("binary runs");
    if let Some(text) = stdin {
        child.stdin.take().unwrap().write_all(text.as_bytes()).unwrap();
    }
    drop(child.stdin.take());
    child.wait_with_output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

fn json_lines(o: &Output) -> Vec<Value> {
    stdout(o).lines().map(|l| serde_json::from_str(l).unwrap()).collect()
}

#[test]
fn classify_spec_records() {
    let input = "{\"id\":\"rect\",\"edges\":[3,4,5,3,4,5]}\n{\"id\":\"iso\",\"edges\":[7,8,9,7,8,9]}\n";
    let o = run(&["classify", "--json"], Some(input));
    assert_eq!(o.status.code(), Some(0));
    let v = json_lines(&o);
    assert_eq!(v[0]["class"], "Type2");
    assert_eq!(v[0]["parallelogram"]["diagonals2"], serde_json::json!(["25", "25"]));
    assert_eq!(v[0]["parallelogram"]["sides2"], serde_json::json!(["16", "9", "16", "9"]));
    assert_eq!(v[1]["class"], "Type1");
    assert_eq!(v[1]["areas16"], serde_json::json!(["11520", "11520", "11520", "11520"]));
    assert_eq!(v[1]["cm288"], "811008");
}

#[test]
fn stretched_edge_record() {
    // As lengths, z = 2 forces B and A onto the midpoint of CD: no tetrahedron.
    let line = "{\"id\":\"s\",\"edges\":[1,1,1,1,1,2]}\n";
    let v = json_lines(&run(&["classify", "--json"], Some(line)));
    assert_eq!(v[0]["class"], "NotRealizable");
    assert_eq!(v[0]["areas16"], serde_json::json!(["3", "0", "0", "3"]));
    // As squares, faces (1,1,1) and (1,1,2) have 16S² = 3 and 4.
    let v = json_lines(&run(&["classify", "--json", "--squared"], Some(line)));
    assert_eq!(v[0]["class"], "NotEquiareal");
    assert_eq!(v[0]["areas16"], serde_json::json!(["3", "4", "4", "3"]));
}

#[test]
fn classify_reads_a_file_and_flags_bad_rows() {
    let dir = std::env::temp_dir().join(format!("equiareal-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("records.jsonl");
    std::fs::write(&path, "{\"id\":\"a\",\"edges\":[1,1,1,1,1,1]}\n{\"id\":\"b\",\"edges\":[1,1]}\n{\"id\":\"c\",\"edges\":[0,1,1,1,1,1]}\n").unwrap();
    let o = run(&["classify", "--json", path.to_str().unwrap()], None);
    assert_eq!(o.status.code(), Some(1));
    let v = json_lines(&o);
    assert_eq!(v.len(), 3);
    assert_eq!(v[0]["class"], "Type1");
    assert_eq!(v[1]["id"], "b");
    assert!(v[1]["error"].as_str().unwrap().contains("6 entries"));
    assert_eq!(v[2]["id"], "c");
    assert!(v[2].get("error").is_some());
    std::fs::remove_dir_all(dir).unwrap();
}

#[test]
fn complete_equilateral_and_right_faces() {
    let o = run(&["complete", "1", "1", "1", "--json"], None);
    assert_eq!(o.status.code(), Some(0));
    let v = &json_lines(&o)[0];
    let rows = v["rows"].as_array().unwrap();
    assert_eq!(rows.len(), 8);
    let feasible: Vec<u64> = rows
        .iter()
        .filter(|r| r["feasible"] == true)
        .map(|r| r["row"].as_u64().unwrap())
        .collect();
    assert_eq!(feasible, [1, 2, 3, 5]);
    assert_eq!(rows[0]["class"], "Type1");
    assert_eq!(rows[1]["z"], "√3");

    let v = &json_lines(&run(&["complete", "3", "4", "5", "--json"], None))[0];
    let row4 = &v["rows"][3];
    assert_eq!(row4["feasible"], true);
    assert_eq!(row4["y2"], "52");
    assert_eq!(row4["y"], "√52");
    assert_eq!(row4["duplicate_of"], 3);

    let v = &json_lines(&run(&["complete", "3", "5", "4", "--json"], None))[0];
    let row4 = &v["rows"][3];
    assert_eq!(row4["feasible"], true);
    assert_eq!(row4["z2"], "52");
}

#[test]
fn complete_table_mode() {
    let o = run(&["complete", "3", "4", "5"], None);
    let text = stdout(&o);
    assert_eq!(text.lines().count(), 10);
    assert!(text.lines().nth(4).unwrap().starts_with("3    3              √52"));
}

#[test]
fn complete_rejects_non_triangles() {
    let o = run(&["complete", "1", "2", "4"], None);
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("c < a + b fails"), "{}", stderr(&o));
    let o = run(&["complete", "5", "1", "1"], None);
    assert!(stderr(&o).contains("a < b + c fails"));
    let o = run(&["complete", "1", "x", "1"], None);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn realize_with_witness() {
    let o = run(&["realize", "7", "8", "9", "7", "8", "9", "--witness"], None);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("projection witness: pass"));

    let o = run(&["realize", "7", "8", "9", "7", "8", "9", "--witness", "--json"], None);
    let v = &json_lines(&o)[0];
    assert_eq!(v["witness"]["parallelogram"], true);
    assert_eq!(v["witness"]["equal_opposite_edges"], true);
    assert_eq!(v["witness"]["foot_distances"].as_array().unwrap().len(), 2);
}

#[test]
fn realize_flat_and_impossible() {
    let v = &json_lines(&run(&["realize", "3", "4", "5", "3", "4", "5", "--json"], None))[0];
    for name in ["A", "B", "C", "D"] {
        assert_eq!(v["points"][name][2].as_f64().unwrap(), 0.0);
    }
    let o = run(&["realize", "1", "1", "1", "10", "1", "1"], None);
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("not realizable"), "{}", stderr(&o));
    let o = run(&["realize", r#"{"id":"r","edges":[7,8,9,7,8,9]}"#], None);
    assert_eq!(o.status.code(), Some(0));
}

#[test]
fn check_passes_and_warns_on_zero_trials() {
    let o = run(&["check", "--trials", "100", "--seed", "42"], None);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    assert_eq!(stdout(&o).lines().filter(|l| l.starts_with("PASS")).count(), 4);

    let o = run(&["check", "--trials", "0"], None);
    assert_eq!(o.status.code(), Some(0));
    assert!(stderr(&o).contains("vacuously"));
}

#[allow(clippy::result_large_err)]
fn drops_row_two(a2: &Scalar, b2: &Scalar, c2: &Scalar) -> Result<Vec<SolutionRow>, SolveError> {
    let mut rows = enumerate_completions(a2, b2, c2)?;
    rows.retain(|r| r.row_id != 2);
    Ok(rows)
}

#[test]
fn check_reports_an_injected_bug() {
    let opts = Options {
        trials: 5,
        json: true,
        ..Options::default()
    };
    let (mut out, mut err) = (Vec::new(), Vec::new());
    let status = cmd_check_with(&mut out, &mut err, &opts, drops_row_two).unwrap();
    assert_eq!(status, ExitStatus::PropertyFailure);
    assert_eq!(status.code(), 3);
    let lines: Vec<Value> = String::from_utf8(out)
        .unwrap()
        .lines()
        .map(|l| serde_json::from_str(l).unwrap())
        .collect();
    let oracle = lines.iter().find(|v| v["suite"] == "oracle uniqueness").unwrap();
    assert_eq!(oracle["passed"], false);
    assert!(oracle["counterexample"].as_str().unwrap().contains("matches no feasible row"));
}

#[test]
fn oracle_subcommand() {
    let o = run(&["oracle", "7", "8", "9", "--json"], None);
    assert_eq!(o.status.code(), Some(0));
    let hits = json_lines(&o);
    assert_eq!(hits.len(), 4);
    let rows: Vec<u64> = hits.iter().map(|h| h["rows"][0].as_u64().unwrap()).collect();
    assert_eq!(rows, [1, 2, 3, 5]);
    let o = run(&["oracle", "--trials", "20"], None);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("20 trials, 0 mismatches"));
}

#[test]
fn usage_errors_exit_2() {
    assert_eq!(run(&["frobnicate"], None).status.code(), Some(2));
    assert_eq!(run(&["realize", "1", "2"], None).status.code(), Some(2));
}

#[test]
fn output_is_deterministic() {
    let input = "{\"id\":\"x\",\"edges\":[\"1.5\",2,\"2.5\",\"1.5\",2,\"2.5\"]}\n{\"id\":\"y\",\"coords\":[[0,0,0],[1,0,0],[0,1,0],[0,0,1]]}\n";
    for args in [&["classify", "--json"][..], &["classify"][..]] {
        assert_eq!(run(args, Some(input)).stdout, run(args, Some(input)).stdout);
    }
    let a = run(&["check", "--trials", "10", "--seed", "7", "--json"], None);
    let b = run(&["check", "--trials", "10", "--seed", "7", "--json"], None);
    assert_eq!(a.stdout, b.stdout);
    let a = run(&["oracle", "--trials", "10", "--seed", "9"], None);
    let b = run(&["oracle", "--trials", "10", "--seed", "9"], None);
    assert_eq!(a.stdout, b.stdout);
}

/// Coordinates given as exact decimals and the lengths they imply must
/// classify identically.
#[test]
fn edges_and_coordinates_agree() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let mut input_coords = String::new();
    let mut expected = Vec::new();
    for i in 0..60 {
        let pts = sampling::integer_points(&mut rng);
        let e = SquaredEdges::from_points(&pts).unwrap();
        expected.push(classify(&e).unwrap().tag().to_string());
        let coords: Vec<Vec<String>> = pts.iter().map(|p| p.iter().map(Scalar::to_string).collect()).collect();
        input_coords.push_str(&serde_json::json!({"id": i, "coords": coords}).to_string());
        input_coords.push('\n');
    }
    let opts = Options {
        json: true,
        ..Options::default()
    };
    let mut out = Vec::new();
    cmd_classify(&mut input_coords.as_bytes(), &mut out, &opts).unwrap();
    let from_coords: Vec<Value> = String::from_utf8(out)
        .unwrap()
        .lines()
        .map(|l| serde_json::from_str(l).unwrap())
        .collect();

    // The same records re-entered as squared edges.
    let mut input_edges = String::new();
    for v in &from_coords {
        input_edges.push_str(&serde_json::json!({"id": v["id"], "edges": v["edges2"]}).to_string());
        input_edges.push('\n');
    }
    let opts = Options {
        json: true,
        squared: true,
        ..Options::default()
    };
    let mut out = Vec::new();
    cmd_classify(&mut input_edges.as_bytes(), &mut out, &opts).unwrap();
    let from_edges: Vec<Value> = String::from_utf8(out)
        .unwrap()
        .lines()
        .map(|l| serde_json::from_str(l).unwrap())
        .collect();

    for ((c, e), want) in from_coords.iter().zip(from_edges.iter()).zip(expected.iter()) {
        assert_eq!(&c["class"], want);
        assert_eq!(c["class"], e["class"]);
        assert_eq!(c["areas16"], e["areas16"]);
        assert_eq!(c["cm288"], e["cm288"]);
    }
}
