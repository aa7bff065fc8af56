//! End-to-end runs of the `pfsp` binary.

use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn pfsp() -> Command {
    Command::new(env!("CARGO_BIN_EXE_pfsp"))
}

fn work_dir(test: &str) -> PathBuf {
    let dir = std::env::temp_dir()
        .join("pfsp-cli-tests")
        .join(format!("{}-{}", test, std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir
}

fn write_two_job_instance(dir: &Path) -> PathBuf {
    let path = dir.join("toy.txt");
    std::fs::write(&path, "2 1\n1\n2\nduedates:\n0 0\n").unwrap();
    path
}

fn stdout_str(output: &Output) -> String {
    String::from_utf8_lossy(&output.stdout).into_owned()
}

fn stderr_str(output: &Output) -> String {
    String::from_utf8_lossy(&output.stderr).into_owned()
}

#[test]
fn solve_finds_the_two_job_front() {
    let dir = work_dir("solve");
    let instance = write_two_job_instance(&dir);
    let out_path = dir.join("record.json");
    let output = pfsp()
        .args(["solve", "--instance"])
        .arg(&instance)
        .args(["--algorithm", "pils", "--budget", "100", "--seed", "1", "--out"])
        .arg(&out_path)
        .output()
        .unwrap();
    assert!(output.status.success(), "stderr: {}", stderr_str(&output));

    let record = pfsp_core::io::read_run_record(&out_path).unwrap();
    assert_eq!(record.algorithm, "pils");
    assert_eq!(record.archive.len(), 1);
    assert_eq!(record.archive[0].objectives, vec![3.0, 4.0]);
    assert_eq!(record.archive[0].permutation, vec![1, 2]);
}

#[test]
fn solve_without_out_prints_the_record() {
    let dir = work_dir("solve-stdout");
    let instance = write_two_job_instance(&dir);
    let output = pfsp()
        .args(["solve", "--instance"])
        .arg(&instance)
        .args(["--algorithm", "mos", "--budget", "50"])
        .env_remove("PFSP_OUT_DIR")
        .output()
        .unwrap();
    assert!(output.status.success(), "stderr: {}", stderr_str(&output));
    let text = stdout_str(&output);
    assert!(text.trim_start().starts_with('{'));
    assert!(text.contains("\"algorithm\": \"mos\""));
}

#[test]
fn metrics_of_a_set_against_itself_is_zero() {
    let dir = work_dir("metrics");
    let vectors = dir.join("front.tsv");
    std::fs::write(&vectors, "3\t5\n5\t3\n").unwrap();
    let output = pfsp()
        .args(["metrics", "--approx"])
        .arg(&vectors)
        .arg("--reference")
        .arg(&vectors)
        .output()
        .unwrap();
    assert!(output.status.success(), "stderr: {}", stderr_str(&output));
    let text = stdout_str(&output);
    assert!(text.contains("D1 = 0"), "{text}");
    assert!(text.contains("D2 = 0"), "{text}");
}

#[test]
fn oracle_refuses_oversized_instances() {
    let dir = work_dir("oracle-limit");
    let instance = dir.join("big.txt");
    let generate = pfsp()
        .args(["generate", "--jobs", "12", "--machines", "2", "--seed", "1", "--out"])
        .arg(&instance)
        .output()
        .unwrap();
    assert!(generate.status.success());

    let output = pfsp()
        .args(["oracle", "--instance"])
        .arg(&instance)
        .output()
        .unwrap();
    assert!(!output.status.success());
    assert!(stderr_str(&output).contains("12 jobs exceeds the limit"));
}

#[test]
fn oracle_matches_solve_on_the_toy_instance() {
    let dir = work_dir("oracle-toy");
    let instance = write_two_job_instance(&dir);
    let out_path = dir.join("front.json");
    let output = pfsp()
        .args(["oracle", "--instance"])
        .arg(&instance)
        .arg("--out")
        .arg(&out_path)
        .output()
        .unwrap();
    assert!(output.status.success(), "stderr: {}", stderr_str(&output));
    let record = pfsp_core::io::read_run_record(&out_path).unwrap();
    assert_eq!(record.algorithm, "oracle");
    assert_eq!(record.evaluations, 2);
    assert_eq!(record.archive.len(), 1);
    assert_eq!(record.archive[0].objectives, vec![3.0, 4.0]);
}

#[test]
fn generate_solve_metrics_pipeline() {
    let dir = work_dir("pipeline");
    let instance = dir.join("inst.txt");
    assert!(pfsp()
        .args(["generate", "--jobs", "6", "--machines", "3", "--seed", "7", "--pmax", "50", "--out"])
        .arg(&instance)
        .output()
        .unwrap()
        .status
        .success());

    let front = dir.join("front.json");
    assert!(pfsp()
        .args(["oracle", "--instance"])
        .arg(&instance)
        .args(["--tf", "1.5", "--out"])
        .arg(&front)
        .output()
        .unwrap()
        .status
        .success());

    let record = dir.join("run.json");
    assert!(pfsp()
        .args(["solve", "--instance"])
        .arg(&instance)
        .args(["--algorithm", "pils", "--budget", "20000", "--tf", "1.5", "--out"])
        .arg(&record)
        .output()
        .unwrap()
        .status
        .success());

    let output = pfsp()
        .args(["metrics", "--approx"])
        .arg(&record)
        .arg("--reference")
        .arg(&front)
        .output()
        .unwrap();
    assert!(output.status.success(), "stderr: {}", stderr_str(&output));
    // generous budget on a 6-job instance: the exact front is found
    let text = stdout_str(&output);
    assert!(text.contains("D1 = 0"), "{text}");
    assert!(text.contains("D2 = 0"), "{text}");
}

#[test]
fn solve_is_deterministic_for_a_seed() {
    let dir = work_dir("determinism");
    let instance = write_two_job_instance(&dir);
    let archives: Vec<String> = (0..2)
        .map(|i| {
            let path = dir.join(format!("record-{i}.json"));
            assert!(pfsp()
                .args(["solve", "--instance"])
                .arg(&instance)
                .args(["--algorithm", "pils", "--budget", "80", "--seed", "9", "--out"])
                .arg(&path)
                .output()
                .unwrap()
                .status
                .success());
            let record = pfsp_core::io::read_run_record(&path).unwrap();
            format!("{:?}", record.archive)
        })
        .collect();
    assert_eq!(archives[0], archives[1]);
}

#[test]
fn machine_major_layout_is_transposed() {
    let dir = work_dir("layout");
    let job_major = dir.join("jm.txt");
    std::fs::write(&job_major, "2 2\n3 2\n1 4\n").unwrap();
    let machine_major = dir.join("mm.txt");
    std::fs::write(&machine_major, "2 2\n3 1\n2 4\n").unwrap();

    let solve = |path: &Path, extra: &[&str]| {
        let out = dir.join(format!(
            "{}.json",
            path.file_stem().unwrap().to_string_lossy()
        ));
        let mut cmd = pfsp();
        cmd.args(["solve", "--instance"])
            .arg(path)
            .args(["--algorithm", "pils", "--budget", "100", "--out"])
            .arg(&out);
        cmd.args(extra);
        assert!(cmd.output().unwrap().status.success());
        let record = pfsp_core::io::read_run_record(&out).unwrap();
        format!("{:?}", record.archive)
    };
    let a = solve(&job_major, &[]);
    let b = solve(&machine_major, &["--machine-major"]);
    assert_eq!(a, b);
}

#[test]
fn sample_writes_vectors_and_histogram() {
    let dir = work_dir("sample");
    let instance = write_two_job_instance(&dir);
    let out = dir.join("sample.tsv");
    let output = pfsp()
        .args(["sample", "--instance"])
        .arg(&instance)
        .args(["--count", "25", "--bins", "10", "--out"])
        .arg(&out)
        .output()
        .unwrap();
    assert!(output.status.success(), "stderr: {}", stderr_str(&output));
    let rows = pfsp_core::io::read_vector_file(&out).unwrap();
    assert_eq!(rows.len(), 25);
    let hist = std::fs::read_to_string(out.with_extension("hist")).unwrap();
    assert!(hist.starts_with('#'));
    assert_eq!(hist.lines().count(), 10 * 10 + 1);
}

#[test]
fn experiment_runs_from_a_config_file() {
    let dir = work_dir("experiment");
    let instance = dir.join("inst.txt");
    assert!(pfsp()
        .args(["generate", "--jobs", "5", "--machines", "2", "--seed", "3", "--out"])
        .arg(&instance)
        .output()
        .unwrap()
        .status
        .success());

    let config = dir.join("config.json");
    std::fs::write(
        &config,
        format!(
            r#"{{ "instances": ["{}"], "runs": 3, "budget": 2000, "tardiness_factor": 1.5 }}"#,
            instance.display()
        ),
    )
    .unwrap();
    let report_path = dir.join("report.json");
    let output = pfsp()
        .args(["experiment", "--config"])
        .arg(&config)
        .arg("--out")
        .arg(&report_path)
        .output()
        .unwrap();
    assert!(output.status.success(), "stderr: {}", stderr_str(&output));
    let report = std::fs::read_to_string(&report_path).unwrap();
    assert!(report.contains("\"runs_per_cell\": 3"));
    assert!(report.contains("\"reference_source\": \"oracle\""));
    // the mean table goes to stderr for a quick look
    assert!(stderr_str(&output).contains("instance\td1_pils\td1_mos"));
}

#[test]
fn out_dir_env_var_provides_the_default_target() {
    let dir = work_dir("env-out");
    let instance = write_two_job_instance(&dir);
    let output = pfsp()
        .args(["solve", "--instance"])
        .arg(&instance)
        .args(["--algorithm", "pils", "--budget", "60", "--seed", "2"])
        .env("PFSP_OUT_DIR", &dir)
        .output()
        .unwrap();
    assert!(output.status.success(), "stderr: {}", stderr_str(&output));
    let expected = dir.join("toy-pils-s2.json");
    assert!(expected.is_file(), "missing {}", expected.display());
}

#[test]
fn help_covers_every_subcommand() {
    let expected_flags: &[(&str, &[&str])] = &[
        (
            "solve",
            &["--instance", "--algorithm", "--budget", "--seed", "--objectives", "--tf", "--machine-major", "--progress", "--out"],
        ),
        ("oracle", &["--instance", "--objectives", "--limit", "--tf", "--out"]),
        ("metrics", &["--approx", "--reference"]),
        ("sample", &["--instance", "--count", "--seed", "--objectives", "--bins", "--out"]),
        ("experiment", &["--config", "--out"]),
        ("generate", &["--jobs", "--machines", "--seed", "--pmax", "--out"]),
    ];
    for (sub, flags) in expected_flags {
        let output = pfsp().args([*sub, "--help"]).output().unwrap();
        assert!(output.status.success(), "{sub} --help failed");
        let text = stdout_str(&output);
        for flag in *flags {
            assert!(text.contains(flag), "{sub} help misses {flag}");
        }
    }
}

#[test]
fn unknown_flags_exit_nonzero() {
    let output = pfsp().args(["solve", "--bogus"]).output().unwrap();
    assert!(!output.status.success());

    let output = pfsp()
        .args(["solve", "--instance", "/nonexistent/file.txt", "--algorithm", "pils"])
        .output()
        .unwrap();
    assert!(!output.status.success());
    assert!(stderr_str(&output).contains("error"));
}
