//! Black-box tests of the `qbridge` binary: every subcommand, the exit-code
//! contract, and the file formats named on the command line.

use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::{Command, Output, Stdio};

use tempfile::TempDir;

fn repo_path(rel: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("../..")
        .join(rel)
}

fn qbridge(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qbridge"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(output: &Output) -> String {
    String::from_utf8(output.stdout.clone()).expect("utf-8 stdout")
}

fn stderr(output: &Output) -> String {
    String::from_utf8(output.stderr.clone()).expect("utf-8 stderr")
}

fn exit_code(output: &Output) -> i32 {
    output.status.code().expect("exit code")
}

#[test]
fn transpile_bell_to_cirq() {
    let bell = repo_path("corpus/bell.py");
    let output = qbridge(&[
        "transpile",
        "--from",
        "qiskit",
        "--to",
        "cirq",
        "--simulate",
        bell.to_str().unwrap(),
    ]);
    assert_eq!(exit_code(&output), 0);
    let text = stdout(&output);
    assert!(text.starts_with("import cirq\n"));
    assert!(text.contains("circuit.append(cirq.CNOT(q[0], q[1]))"));
    assert!(text.contains("simulator.run(circuit, repetitions=1000)"));
    assert!(text.ends_with('\n'));
}

#[test]
fn transpile_cirq_back_to_qiskit() {
    let dir = TempDir::new().unwrap();
    let cirq_file = dir.path().join("bell_cirq.py");
    let bell = repo_path("corpus/bell.py");
    let first = qbridge(&[
        "transpile",
        "--from",
        "qiskit",
        "--to",
        "cirq",
        bell.to_str().unwrap(),
    ]);
    std::fs::write(&cirq_file, stdout(&first)).unwrap();

    let output = qbridge(&[
        "transpile",
        "--from",
        "cirq",
        "--to",
        "qiskit",
        cirq_file.to_str().unwrap(),
    ]);
    assert_eq!(exit_code(&output), 0);
    let text = stdout(&output);
    assert!(text.contains("qc = QuantumCircuit(2, 2)"));
    assert!(text.contains("qc.measure(1, 1)"));
}

#[test]
fn transpile_reads_standard_input() {
    let mut child = Command::new(env!("CARGO_BIN_EXE_qbridge"))
        .args(["transpile", "--from", "qiskit", "--to", "cirq", "-"])
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .unwrap();
    child
        .stdin
        .take()
        .unwrap()
        .write_all(b"qc = QuantumCircuit(1, 1)\nqc.h(0)\nqc.measure(0, 0)\n")
        .unwrap();
    let output = child.wait_with_output().unwrap();
    assert_eq!(output.status.code(), Some(0));
    assert!(String::from_utf8(output.stdout)
        .unwrap()
        .contains("cirq.H(q[0])"));
}

#[test]
fn transpile_parse_errors_exit_one_with_diagnostics() {
    let dir = TempDir::new().unwrap();
    let bad = dir.path().join("bad.py");
    std::fs::write(&bad, "qc = QuantumCircuit(1)\nqc.h(7)\n").unwrap();
    let output = qbridge(&[
        "transpile",
        "--from",
        "qiskit",
        "--to",
        "cirq",
        bad.to_str().unwrap(),
    ]);
    assert_eq!(exit_code(&output), 1);
    assert!(stderr(&output).contains("IndexOutOfRange"));
    assert!(stdout(&output).is_empty());
}

#[test]
fn usage_errors_exit_two() {
    let bell = repo_path("corpus/bell.py");
    // same dialect on both sides
    let output = qbridge(&[
        "transpile",
        "--from",
        "qiskit",
        "--to",
        "qiskit",
        bell.to_str().unwrap(),
    ]);
    assert_eq!(exit_code(&output), 2);
    // clap-level unknown flag
    let output = qbridge(&["transpile", "--backwards"]);
    assert_eq!(exit_code(&output), 2);
    // --simulate for qiskit output
    let output = qbridge(&[
        "transpile",
        "--from",
        "cirq",
        "--to",
        "qiskit",
        "--simulate",
        bell.to_str().unwrap(),
    ]);
    assert_eq!(exit_code(&output), 2);
}

#[test]
fn verify_detects_dialects_and_reports_distributions() {
    let dir = TempDir::new().unwrap();
    let bell = repo_path("corpus/bell.py");
    let cirq_file = dir.path().join("bell_cirq.py");
    let transpiled = qbridge(&[
        "transpile",
        "--from",
        "qiskit",
        "--to",
        "cirq",
        "--simulate",
        bell.to_str().unwrap(),
    ]);
    std::fs::write(&cirq_file, stdout(&transpiled)).unwrap();

    let output = qbridge(&[
        "verify",
        bell.to_str().unwrap(),
        cirq_file.to_str().unwrap(),
    ]);
    assert_eq!(exit_code(&output), 0, "stderr: {}", stderr(&output));
    let text = stdout(&output);
    assert!(text.contains("mode: Distribution"));
    assert!(text.contains("max deviation: 0"));
    assert!(text.contains("equivalent: true"));
    assert!(text.contains("{\"00\": 0.5, \"11\": 0.5}"));
}

#[test]
fn verify_flags_non_equivalent_circuits_with_exit_one() {
    let dir = TempDir::new().unwrap();
    let with_cz = dir.path().join("cz.py");
    std::fs::write(
        &with_cz,
        "qc = QuantumCircuit(2, 2)\nqc.h(0)\nqc.cz(0, 1)\nqc.measure(0, 0)\nqc.measure(1, 1)\n",
    )
    .unwrap();
    let bell = repo_path("corpus/bell.py");
    let output = qbridge(&["verify", bell.to_str().unwrap(), with_cz.to_str().unwrap()]);
    assert_eq!(exit_code(&output), 1);
    assert!(stdout(&output).contains("equivalent: false"));
}

#[test]
fn verify_honors_tolerance_flag() {
    let dir = TempDir::new().unwrap();
    let a = dir.path().join("a.py");
    let b = dir.path().join("b.py");
    // Rz angles differing by 1e-6: far at tol 1e-9, close at tol 1e-2.
    std::fs::write(&a, "qc = QuantumCircuit(1)\nqc.h(0)\nqc.rz(0.5, 0)\n").unwrap();
    std::fs::write(&b, "qc = QuantumCircuit(1)\nqc.h(0)\nqc.rz(0.500001, 0)\n").unwrap();
    let strict = qbridge(&["verify", a.to_str().unwrap(), b.to_str().unwrap()]);
    assert_eq!(exit_code(&strict), 1);
    assert!(stdout(&strict).contains("mode: Unitary"));
    let loose = qbridge(&[
        "verify",
        a.to_str().unwrap(),
        b.to_str().unwrap(),
        "--tol",
        "1e-2",
    ]);
    assert_eq!(exit_code(&loose), 0);
}

#[test]
fn score_json_has_the_exact_field_names() {
    let dir = TempDir::new().unwrap();
    let bell = repo_path("corpus/bell.py");
    let cirq_file = dir.path().join("bell_cirq.py");
    let transpiled = qbridge(&[
        "transpile",
        "--from",
        "qiskit",
        "--to",
        "cirq",
        "--simulate",
        bell.to_str().unwrap(),
    ]);
    std::fs::write(&cirq_file, stdout(&transpiled)).unwrap();

    let output = qbridge(&["score", "--json", cirq_file.to_str().unwrap()]);
    assert_eq!(exit_code(&output), 0);
    let parsed: serde_json::Value = serde_json::from_str(&stdout(&output)).unwrap();
    let object = parsed.as_object().unwrap();
    for field in [
        "patterns_present",
        "patterns_expected",
        "warning_count",
        "error_count",
        "base",
        "penalty",
        "score",
    ] {
        assert!(object.contains_key(field), "missing {field}");
    }
    assert_eq!(parsed["score"], 1.0);
    assert_eq!(parsed["patterns_expected"], 5);
}

#[test]
fn score_below_one_exits_one() {
    let dir = TempDir::new().unwrap();
    let partial = dir.path().join("partial.py");
    std::fs::write(
        &partial,
        "import cirq\n\nq = cirq.LineQubit.range(2)\ncircuit = cirq.Circuit()\n\
         circuit.append(cirq.H(q[0]))\n",
    )
    .unwrap();
    let output = qbridge(&["score", partial.to_str().unwrap()]);
    assert_eq!(exit_code(&output), 1);
    let text = stdout(&output);
    assert!(text.contains("score: 0.6"));
    assert!(text.contains("explanation: Missing expected Cirq pattern:"));
}

#[test]
fn llm_transpile_with_mock_provider() {
    let dir = TempDir::new().unwrap();
    let config = dir.path().join("provider.json");
    let mock_dir = repo_path("fixtures/bench/model_mixed");
    std::fs::write(
        &config,
        format!(
            "{{\"base_url\": \"mock:{}\", \"model_name\": \"scripted\"}}",
            mock_dir.display()
        ),
    )
    .unwrap();
    let bell = repo_path("corpus/bell.py");
    let output = qbridge(&[
        "llm-transpile",
        "--config",
        config.to_str().unwrap(),
        "--strategy",
        "zero",
        "--max-rounds",
        "3",
        bell.to_str().unwrap(),
    ]);
    assert_eq!(exit_code(&output), 0, "stderr: {}", stderr(&output));
    let log = stderr(&output);
    assert!(log.contains("round 1: score 0.8"));
    assert!(log.contains("round 2: score 1, equivalent"));
    assert!(log.contains("best attempt: round 2"));
    assert!(stdout(&output).contains("cirq.measure(q[0], key=\"c0\")"));
}

#[test]
fn llm_transpile_provider_errors_exit_three() {
    let dir = TempDir::new().unwrap();
    let config = dir.path().join("provider.json");
    std::fs::write(
        &config,
        "{\"base_url\": \"mock:/definitely/not/a/dir\", \"model_name\": \"x\"}",
    )
    .unwrap();
    let bell = repo_path("corpus/bell.py");
    let output = qbridge(&[
        "llm-transpile",
        "--config",
        config.to_str().unwrap(),
        "--strategy",
        "one",
        bell.to_str().unwrap(),
    ]);
    assert_eq!(exit_code(&output), 3);
}

#[test]
fn bench_writes_all_three_formats() {
    let dir = TempDir::new().unwrap();
    let config = repo_path("fixtures/bench/config.json");
    for (format, probe) in [
        ("table", "Code Quality Value"),
        ("csv", "provider_label,strategy,score_min"),
        ("json", "\"equivalence_pass_rate\""),
    ] {
        let out = dir.path().join(format!("report.{format}"));
        let output = qbridge(&[
            "bench",
            "--config",
            config.to_str().unwrap(),
            "--out",
            out.to_str().unwrap(),
            "--format",
            format,
        ]);
        assert_eq!(exit_code(&output), 0, "stderr: {}", stderr(&output));
        let written = std::fs::read_to_string(&out).unwrap();
        assert!(written.contains(probe), "{format} report:\n{written}");
    }
}

#[test]
fn bench_rejects_a_broken_corpus_upfront() {
    let dir = TempDir::new().unwrap();
    let broken = dir.path().join("broken.py");
    std::fs::write(&broken, "qc = QuantumCircuit(1)\nqc.unknown(0)\n").unwrap();
    let mock = dir.path().join("replies");
    std::fs::create_dir(&mock).unwrap();
    std::fs::write(mock.join("001.txt"), "x").unwrap();
    let config = dir.path().join("bench.json");
    std::fs::write(
        &config,
        "{\"corpus\": [\"broken.py\"], \"providers\": [{\"label\": \"m\", \"base_url\": \"mock:replies\"}]}",
    )
    .unwrap();
    let out = dir.path().join("report.txt");
    let output = qbridge(&[
        "bench",
        "--config",
        config.to_str().unwrap(),
        "--out",
        out.to_str().unwrap(),
        "--format",
        "table",
    ]);
    assert_eq!(exit_code(&output), 1);
    assert!(stderr(&output).contains("does not parse"));
}
