use std::fs;
use std::path::Path;
use std::process::{Command, Output};

fn coffins(args: &[&str], dir: &Path) -> Output {
    Command::new(env!("CARGO_BIN_EXE_coffins"))
        .args(args)
        .current_dir(dir)
        .output()
        .unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

#[test]
fn verify_writes_one_report_per_problem() {
    let dir = tempfile::tempdir().unwrap();
    let out = coffins(&["verify", "p42", "-o", "r"], dir.path());
    assert_eq!(
        out.status.code(),
        Some(0),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    assert!(stdout(&out).contains("1/1 pass"));
    let report: serde_json::Value =
        serde_json::from_str(&fs::read_to_string(dir.path().join("r/p42.json")).unwrap()).unwrap();
    assert_eq!(report["status"], "Pass");
    let certs = report["certificates"].as_array().unwrap();
    let integer = certs
        .iter()
        .filter(|c| c["claim"].as_str().unwrap().ends_with("is an integer"))
        .count();
    assert_eq!(integer, 15);
    assert!(certs.iter().all(|c| c["kind"] == "exact"));
    let summary: serde_json::Value =
        serde_json::from_str(&fs::read_to_string(dir.path().join("r/summary.json")).unwrap())
            .unwrap();
    assert_eq!(summary["total"], 1);
    assert_eq!(summary["passed"], 1);
}

#[test]
fn usage_errors_exit_2() {
    let dir = tempfile::tempdir().unwrap();
    assert_eq!(
        coffins(&["verify", "p99"], dir.path()).status.code(),
        Some(2)
    );
    assert_eq!(coffins(&["verify"], dir.path()).status.code(), Some(2));
    assert_eq!(
        coffins(&["render", "p61"], dir.path()).status.code(),
        Some(2)
    );
    assert_eq!(
        coffins(&["render", "p19"], dir.path()).status.code(),
        Some(2)
    );
    assert_eq!(
        coffins(&["render", "p10", "--instance", "missing.json"], dir.path())
            .status
            .code(),
        Some(2)
    );
}

#[test]
fn render_writes_svg() {
    let dir = tempfile::tempdir().unwrap();
    let out = coffins(&["render", "p10", "-o", "fig.svg"], dir.path());
    assert_eq!(out.status.code(), Some(0));
    let svg = fs::read_to_string(dir.path().join("fig.svg")).unwrap();
    assert!(svg.starts_with("<svg") || svg.starts_with("<?xml"));
    assert_eq!(
        coffins(&["render", "p19a"], dir.path()).status.code(),
        Some(0)
    );
    assert!(dir.path().join("p19a.svg").exists());
}

#[test]
fn render_reads_an_instance() {
    let dir = tempfile::tempdir().unwrap();
    fs::write(dir.path().join("t.json"), r#"{"t": {"number": "1/4"}}"#).unwrap();
    let a = coffins(
        &["render", "p10", "--instance", "t.json", "-o", "a.svg"],
        dir.path(),
    );
    assert_eq!(
        a.status.code(),
        Some(0),
        "{}",
        String::from_utf8_lossy(&a.stderr)
    );
    coffins(&["render", "p10", "-o", "b.svg"], dir.path());
    let read = |f: &str| fs::read_to_string(dir.path().join(f)).unwrap();
    assert_ne!(read("a.svg"), read("b.svg"));

    fs::write(dir.path().join("bad.json"), r#"{"t": {"number": "x"}}"#).unwrap();
    assert_eq!(
        coffins(&["render", "p10", "--instance", "bad.json"], dir.path())
            .status
            .code(),
        Some(2)
    );
}

#[test]
fn list_shows_every_problem() {
    let dir = tempfile::tempdir().unwrap();
    let text = stdout(&coffins(&["list"], dir.path()));
    let rows: Vec<&str> = text.lines().collect();
    assert_eq!(rows.len(), 21);
    assert!(rows
        .iter()
        .any(|r| r.starts_with("p65") && r.contains("exact-certificate")));
    assert!(rows
        .iter()
        .any(|r| r.starts_with("p31") && r.contains("oracle")));
}

#[test]
fn job_count_does_not_change_reports() {
    let dir = tempfile::tempdir().unwrap();
    let ids = ["p01", "p12", "p42", "p52", "p61", "p10"];
    for (jobs, out) in [("1", "a"), ("4", "b")] {
        let mut args = vec!["verify", "--jobs", jobs, "-o", out];
        args.extend(ids);
        assert_eq!(coffins(&args, dir.path()).status.code(), Some(0));
    }
    let strip = |path: &Path| {
        let mut v: serde_json::Value =
            serde_json::from_str(&fs::read_to_string(path).unwrap()).unwrap();
        v["elapsed_ms"] = 0.into();
        v
    };
    for id in ids {
        let f = format!("{id}.json");
        assert_eq!(
            strip(&dir.path().join("a").join(&f)),
            strip(&dir.path().join("b").join(&f)),
            "{id}"
        );
    }
    let summary = |d: &str| fs::read(dir.path().join(d).join("summary.json")).unwrap();
    assert_eq!(summary("a"), summary("b"));
}

#[test]
fn figures_are_linked_from_reports() {
    let dir = tempfile::tempdir().unwrap();
    assert_eq!(
        coffins(&["verify", "p19", "--figures", "-o", "r"], dir.path())
            .status
            .code(),
        Some(0)
    );
    let report: serde_json::Value =
        serde_json::from_str(&fs::read_to_string(dir.path().join("r/p19.json")).unwrap()).unwrap();
    let figures: Vec<&str> = report["figures"]
        .as_array()
        .unwrap()
        .iter()
        .map(|f| f.as_str().unwrap())
        .collect();
    assert_eq!(figures, ["figures/p19a.svg", "figures/p19b.svg"]);
    for f in figures {
        assert!(dir.path().join("r").join(f).exists());
    }
}
