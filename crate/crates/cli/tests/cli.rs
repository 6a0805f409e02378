use std::io::Write;
use std::process::{Command, Stdio};

use serde_json::{json, Value};

use suprematrix::channel::{Channel, Unitary};
use suprematrix::matrix::{HermitianMatrix3, Mat};
use suprematrix::qutrit::{qutrit_density_from_probabilities, qutrit_probabilities_from_density};
use suprematrix::sampling::SeededGenerator;
use suprematrix_cli::{report, sample_lines, Kind, Representation, State, StateDocument};

const BIN: &str = env!("CARGO_BIN_EXE_suprematrix");

fn run(args: &[&str], stdin: &str) -> (i32, String) {
    let mut child = Command::new(BIN)
        .args(args)
        .env_remove("SUPREMATRIX_SEED")
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::null())
        .spawn()
        .unwrap();
    child
        .stdin
        .take()
        .unwrap()
        .write_all(stdin.as_bytes())
        .unwrap();
    let out = child.wait_with_output().unwrap();
    (
        out.status.code().unwrap(),
        String::from_utf8(out.stdout).unwrap(),
    )
}

fn parse(text: &str) -> Value {
    serde_json::from_str(text).unwrap()
}

fn numbers(v: &Value) -> Vec<f64> {
    match v {
        Value::Array(a) => a.iter().flat_map(numbers).collect(),
        Value::Number(n) => vec![n.as_f64().unwrap()],
        _ => vec![],
    }
}

fn matrix_json(m: &Mat<3>) -> Value {
    Value::Array(
        m.iter()
            .map(|row| Value::Array(row.iter().map(|z| json!([z.re, z.im])).collect()))
            .collect(),
    )
}

const MIXED: &str = r#"{"kind": "qutrit", "representation": "probabilities",
  "data": [0.5, 0.5, 0.6666666666666666, 0.5, 0.5, 0.6666666666666666, 0.5, 0.5]}"#;

const GROUND: &str = r#"{"kind": "qutrit", "representation": "density",
  "data": [[[1, 0], [0, 0], [0, 0]], [[0, 0], [0, 0], [0, 0]], [[0, 0], [0, 0], [0, 0]]],
  "metadata": {"label": "ground"}}"#;

#[test]
fn convert_maximally_mixed_gives_identity_over_three() {
    let (code, out) = run(&["convert"], MIXED);
    assert_eq!(code, 0);
    let doc = parse(&out);
    assert_eq!(doc["representation"], "density");
    let entries = numbers(&doc["data"]);
    for j in 0..3 {
        for k in 0..3 {
            let expected = if j == k { 1.0 / 3.0 } else { 0.0 };
            assert!((entries[2 * (3 * j + k)] - expected).abs() < 1e-15);
            assert_eq!(entries[2 * (3 * j + k) + 1], 0.0);
        }
    }
}

#[test]
fn convert_ground_state_keeps_metadata() {
    let (code, out) = run(&["convert"], GROUND);
    assert_eq!(code, 0);
    let doc = parse(&out);
    assert_eq!(
        numbers(&doc["data"]),
        vec![0.5, 0.5, 1.0, 0.5, 0.5, 1.0, 0.5, 0.5]
    );
    assert_eq!(doc["metadata"]["label"], "ground");
    let (_, again) = run(&["convert", "--to", "probabilities"], &out);
    assert_eq!(parse(&again), doc);
}

#[test]
fn output_keys_are_sorted() {
    let (_, out) = run(&["validate"], MIXED);
    let keys: Vec<&str> = out
        .lines()
        .filter(|l| l.starts_with("  \""))
        .map(|l| l.trim().split('"').nth(1).unwrap())
        .collect();
    let mut sorted = keys.clone();
    sorted.sort();
    assert_eq!(keys, sorted);
    assert_eq!(
        keys,
        ["entropic", "geometry", "kind", "purity", "quantumness"]
    );
}

#[test]
fn validate_reports_margins() {
    let (code, out) = run(&["validate"], MIXED);
    assert_eq!(code, 0);
    let r = parse(&out);
    let q = &r["quantumness"];
    for m in numbers(&q["ball_margins"]) {
        assert!(m > 0.0);
    }
    for key in ["diag_nonneg", "quadratic_margin", "cubic_margin"] {
        assert!(q[key].as_f64().unwrap() > 0.0, "{key}");
    }
    assert!((r["purity"].as_f64().unwrap() - 1.0 / 3.0).abs() < 1e-15);
    assert_eq!(r["entropic"].as_array().unwrap().len(), 18);
    assert_eq!(r["geometry"]["triadas"].as_array().unwrap().len(), 3);

    let invalid = r#"{"kind": "qutrit", "representation": "probabilities", "data": [0.9, 0.9, 0.9, 0.9, 0.9, 0.9, 0.9, 0.9]}"#;
    let (code, out) = run(&["validate"], invalid);
    assert_eq!(code, 1);
    let margins = numbers(&parse(&out)["quantumness"]["ball_margins"]);
    for m in margins {
        assert!((m - (0.25 - 3.0 * 0.16)).abs() < 1e-12);
    }
}

#[test]
fn text_format_flattens_paths() {
    let (code, out) = run(&["validate", "--format", "text"], MIXED);
    assert_eq!(code, 0);
    assert!(out
        .lines()
        .any(|l| l.starts_with("quantumness.verdict = true")));
    assert!(out
        .lines()
        .any(|l| l.starts_with("geometry.triadas[2].sides[0] = ")));
}

#[test]
fn files_and_stdin_are_interchangeable() {
    let dir = tempfile::tempdir().unwrap();
    let input = dir.path().join("state.json");
    let output = dir.path().join("report.json");
    std::fs::write(&input, GROUND).unwrap();
    let (code, stdout) = run(
        &[
            "geometry",
            "--input",
            input.to_str().unwrap(),
            "--output",
            output.to_str().unwrap(),
        ],
        "",
    );
    assert_eq!(code, 0);
    assert!(stdout.is_empty());
    let (_, piped) = run(&["geometry", "--input", "-", "--output", "-"], GROUND);
    assert_eq!(std::fs::read_to_string(&output).unwrap(), piped);
}

#[test]
fn render_writes_scaled_svg() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("triadas.svg");
    let (code, _) = run(
        &[
            "render",
            "--scale",
            "40",
            "--output",
            path.to_str().unwrap(),
        ],
        GROUND,
    );
    assert_eq!(code, 0);
    let svg = std::fs::read_to_string(path).unwrap();
    assert!(svg.starts_with("<?xml") || svg.starts_with("<svg"));
    assert!(svg.contains(r#"data-scale="40""#));
    assert_eq!(svg.matches(r#"class="triada""#).count(), 3);
}

#[test]
fn derive_identity_is_exact() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("id.json");
    let doc = json!({"kind": "unitary", "matrices": [matrix_json(Unitary::identity().matrix())]});
    std::fs::write(&path, doc.to_string()).unwrap();
    let (code, out) = run(&["channel", "derive", path.to_str().unwrap()], "");
    assert_eq!(code, 0);
    let map = parse(&out);
    assert_eq!(map["kind"], "unitary");
    assert_eq!(numbers(&map["offset"]), vec![0.0; 8]);
    let m = numbers(&map["matrix"]);
    for j in 0..8 {
        for k in 0..8 {
            assert_eq!(m[8 * j + k], if j == k { 1.0 } else { 0.0 });
        }
    }
}

#[test]
fn apply_dephasing_flattens_coherences() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("dephasing.json");
    std::fs::write(&path, r#"{"kind": "dephasing"}"#).unwrap();
    let state = sample_lines(9, 1, Kind::Qutrit, Representation::Probabilities).unwrap();
    let (code, out) = run(&["channel", "apply", path.to_str().unwrap()], &state);
    assert_eq!(code, 0);
    let doc = parse(&out);
    let before = numbers(&parse(&state)["data"]);
    let after = numbers(&doc["data"]);
    for k in 0..3 {
        assert!((after[3 * k] - 0.5).abs() < 1e-12);
        assert!((after[3 * k + 1] - 0.5).abs() < 1e-12);
    }
    assert!((after[2] - before[2]).abs() < 1e-12);
    assert!((after[5] - before[5]).abs() < 1e-12);
    assert_eq!(doc["metadata"]["input_psd"], true);
    assert_eq!(doc["metadata"]["output_psd"], true);
    assert_eq!(doc["metadata"]["seed"], 9);
}

#[test]
fn apply_unitary_matches_conjugation() {
    let dir = tempfile::tempdir().unwrap();
    let mut g = SeededGenerator::new(31);
    for i in 0..5 {
        let u = g.sample_qutrit_unitary();
        let rho: HermitianMatrix3 = g.sample_density_matrix();
        let path = dir.path().join(format!("u{i}.json"));
        std::fs::write(
            &path,
            json!({"kind": "unitary", "matrices": [matrix_json(u.matrix())]}).to_string(),
        )
        .unwrap();
        let q = qutrit_probabilities_from_density(&rho).unwrap();
        let input = serde_json::to_string(&StateDocument::from_state(
            &State::Qutrit(q),
            Representation::Probabilities,
            None,
        ))
        .unwrap();
        let (code, out) = run(&["channel", "apply", path.to_str().unwrap()], &input);
        assert_eq!(code, 0);
        let expected = qutrit_probabilities_from_density(&rho.conjugate_by(u.matrix())).unwrap();
        for (a, b) in numbers(&parse(&out)["data"])
            .iter()
            .zip(expected.as_array())
        {
            assert!((a - b).abs() < 1e-10);
        }
        let direct = Channel::Unitary(u).apply_matrix(&qutrit_density_from_probabilities(&q));
        assert!(direct.distance(&rho.conjugate_by(u.matrix())) < 1e-12);
    }
}

#[test]
fn transpose_flags_non_positive_outputs() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("t.json");
    std::fs::write(&path, r#"{"kind": "transpose", "which": 2}"#).unwrap();
    let (code, out) = run(&["channel", "apply", path.to_str().unwrap()], GROUND);
    assert_eq!(code, 0);
    assert_eq!(parse(&out)["metadata"]["output_psd"], true);

    // |psi> = (1, i, 1)/sqrt 3; the transposed matrix has determinant -4/27.
    let t = 1.0 / 3.0;
    let pure = json!({"kind": "qutrit", "representation": "density", "data": [
        [[t, 0.0], [0.0, -t], [t, 0.0]],
        [[0.0, t], [t, 0.0], [0.0, t]],
        [[t, 0.0], [0.0, -t], [t, 0.0]]]});
    let (code, out) = run(
        &[
            "channel",
            "apply",
            path.to_str().unwrap(),
            "--format",
            "json",
        ],
        &pure.to_string(),
    );
    assert_eq!(code, 0);
    let doc = parse(&out);
    assert_eq!(doc["metadata"]["input_psd"], true);
    assert_eq!(doc["metadata"]["output_psd"], false);
    let (code, _) = run(&["validate"], &out);
    assert_eq!(code, 1);
}

#[test]
fn sampling_is_reproducible() {
    let (_, a) = run(&["sample", "--seed", "7", "--count", "3"], "");
    let (_, b) = run(&["sample", "--seed", "7", "--count", "3"], "");
    assert_eq!(a, b);
    assert_eq!(a.lines().count(), 3);
    let mut child = Command::new(BIN)
        .args(["sample", "--count", "3"])
        .env("SUPREMATRIX_SEED", "7")
        .stdout(Stdio::piped())
        .spawn()
        .unwrap();
    let mut env_out = String::new();
    std::io::Read::read_to_string(child.stdout.as_mut().unwrap(), &mut env_out).unwrap();
    child.wait().unwrap();
    assert_eq!(env_out, a);
    let (_, c) = run(&["sample", "--seed", "8", "--count", "3"], "");
    assert_ne!(a, c);
}

#[test]
fn thousand_samples_validate() {
    for kind in [Kind::Qutrit, Kind::Qubit] {
        let text = sample_lines(2024, 1000, kind, Representation::Density).unwrap();
        for line in text.lines() {
            let state = StateDocument::parse(line).unwrap().state().unwrap();
            let (_, valid) = report(&state).unwrap();
            assert!(valid, "{line}");
        }
    }
    let (code, _) = run(
        &["validate"],
        sample_lines(5, 1, Kind::Qutrit, Representation::Density)
            .unwrap()
            .trim(),
    );
    assert_eq!(code, 0);
}

// E Tr rho^2 = (N + K) / (N K + 1) = 3/5 for 3 x 3 complex Ginibre G.
#[test]
fn sample_purity_matches_ensemble_mean() {
    let text = sample_lines(77, 4000, Kind::Qutrit, Representation::Probabilities).unwrap();
    let mean = text
        .lines()
        .map(
            |l| match StateDocument::parse(l).unwrap().state().unwrap() {
                State::Qutrit(q) => suprematrix::qutrit::purity(&q),
                State::Qubit(_) => unreachable!(),
            },
        )
        .sum::<f64>()
        / 4000.0;
    assert!((mean - 0.6).abs() < 0.01, "mean purity {mean}");
}

#[test]
fn entropy_lists_suite_and_diagnostic() {
    let (code, out) = run(&["entropy"], GROUND);
    assert_eq!(code, 0);
    let v = parse(&out);
    assert_eq!(v["relative_entropies"].as_array().unwrap().len(), 18);
    assert_eq!(v["matrix_element_form"].as_array().unwrap().len(), 6);
}
