//! End-to-end checks of the command-line binary.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_srake"))
}

fn shipped_config(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../../configs").join(name)
}

fn stdout(output: &Output) -> String {
    String::from_utf8_lossy(&output.stdout).into_owned()
}

const SMALL: &str = r#"
[system]
users = 3
paths = 8
chips_per_frame = 14
th_alphabet = 6
decay = 0.1
log_var = 0.5

[sweep]
fingers = 3
ebn0_db = [8.0, 16.0]

[run]
algorithms = ["conventional", "exhaustive", "genetic"]
realizations = 5
master_seed = 11

[ga]
initial_population = 8
population = 8
parents = 4
mutations = 2
iterations = 2
"#;

#[test]
fn shipped_configs_validate() {
    for name in ["fig2.cfg", "fig3.cfg", "fig4.cfg"] {
        let out = bin().args(["validate", "--config"]).arg(shipped_config(name)).output().unwrap();
        assert!(out.status.success(), "{name}: {}", String::from_utf8_lossy(&out.stderr));
        assert!(stdout(&out).starts_with("ok:"), "{name}: {}", stdout(&out));
    }
}

#[test]
fn run_writes_a_csv_and_reruns_bit_identically() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("small.cfg");
    fs::write(&cfg, SMALL).unwrap();

    let out_a = dir.path().join("a.csv");
    let out_b = dir.path().join("b.csv");
    for (out_path, jobs) in [(&out_a, "1"), (&out_b, "4")] {
        let out = bin()
            .args(["run", "--config"])
            .arg(&cfg)
            .args(["--out"])
            .arg(out_path)
            .args(["--jobs", jobs])
            .output()
            .unwrap();
        assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    }

    let a = fs::read_to_string(&out_a).unwrap();
    let b = fs::read_to_string(&out_b).unwrap();
    assert_eq!(a, b, "worker count changed the output");

    let rows: Vec<&str> = a.lines().filter(|l| !l.starts_with('#')).collect();
    assert_eq!(rows[0], srake::harness::emit::CSV_HEADER);
    assert_eq!(rows.len(), 1 + 2 * 3, "2 sweep points x 3 selectors");
    assert!(a.contains("# master_seed=11"));
}

#[test]
fn seed_override_changes_the_results() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("small.cfg");
    fs::write(&cfg, SMALL).unwrap();

    let base = bin().args(["run", "--config"]).arg(&cfg).output().unwrap();
    assert!(base.status.success());
    let reseeded =
        bin().args(["run", "--config"]).arg(&cfg).args(["--seed", "99"]).output().unwrap();
    assert!(reseeded.status.success());
    assert_ne!(stdout(&base), stdout(&reseeded));
    assert!(stdout(&reseeded).contains("# master_seed=99"));
}

#[test]
fn invalid_config_fails_with_the_offending_field() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("bad.cfg");
    fs::write(&cfg, SMALL.replace("th_alphabet = 6", "th_alphabet = 7")).unwrap();
    let out = bin().args(["validate", "--config"]).arg(&cfg).output().unwrap();
    assert!(!out.status.success());
    assert!(
        String::from_utf8_lossy(&out.stderr).contains("th_alphabet"),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
}

#[test]
fn zero_realizations_override_is_rejected() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("small.cfg");
    fs::write(&cfg, SMALL).unwrap();
    let out =
        bin().args(["run", "--config"]).arg(&cfg).args(["--realizations", "0"]).output().unwrap();
    assert!(!out.status.success());
}

#[test]
fn inspect_reports_search_space_sizes() {
    let out =
        bin().args(["inspect", "--config"]).arg(shipped_config("fig2.cfg")).output().unwrap();
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("3003"), "{text}");
    assert!(text.contains("ga eval budget: 192"), "{text}");
}

#[test]
fn oracle_confirms_the_selector_ordering() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("small.cfg");
    fs::write(&cfg, SMALL).unwrap();
    let out = bin().args(["oracle", "--config"]).arg(&cfg).output().unwrap();
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let text = stdout(&out);
    assert!(
        text.contains("ok: ordering held on every realization (2 sweep point(s) checked)"),
        "{text}"
    );
}

#[test]
fn oracle_requires_the_genetic_selector() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("small.cfg");
    fs::write(
        &cfg,
        SMALL.replace(
            r#"algorithms = ["conventional", "exhaustive", "genetic"]"#,
            r#"algorithms = ["conventional", "exhaustive"]"#,
        ),
    )
    .unwrap();
    let out = bin().args(["oracle", "--config"]).arg(&cfg).output().unwrap();
    assert!(!out.status.success());
    assert!(
        String::from_utf8_lossy(&out.stderr).contains("genetic"),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
}

#[test]
fn oracle_fails_when_enumeration_is_never_affordable() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("capped.cfg");
    // C(30, 15) = 155117520 subsets, far past the default cap, at every point.
    fs::write(
        &cfg,
        SMALL
            .replace("paths = 8", "paths = 30")
            .replace("chips_per_frame = 14", "chips_per_frame = 40")
            .replace("fingers = 3", "fingers = 15"),
    )
    .unwrap();
    let out = bin().args(["oracle", "--config"]).arg(&cfg).output().unwrap();
    assert!(!out.status.success());
    assert!(
        String::from_utf8_lossy(&out.stderr).contains("enumeration cap"),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
}
