use hnntree_core::instance::{shipped_instances, to_json};
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn fixtures() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../../fixtures")
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_hnntree")).args(args).output().expect("binary runs")
}

fn commands_for(file: &str) -> &'static [&'static str] {
    match file.split('-').next().unwrap() {
        "quotient" => &["check", "quotient"],
        "three" => &["check", "induce"],
        "descent" => &["check", "hnn"],
        "split" => &["check", "split"],
        _ => &["check"],
    }
}

#[test]
fn shipped_fixture_files_are_current() {
    for (name, inst) in shipped_instances() {
        let on_disk = std::fs::read_to_string(fixtures().join(&name)).unwrap();
        assert_eq!(on_disk, to_json(&inst), "{name}");
    }
}

#[test]
fn every_command_is_byte_deterministic() {
    for (name, _) in shipped_instances() {
        let path = fixtures().join(&name);
        let path = path.to_str().unwrap();
        for cmd in commands_for(&name) {
            for format in ["text", "json"] {
                let a = run(&[cmd, "--instance", path, "--format", format, "--seed", "7"]);
                let b = run(&[cmd, "--instance", path, "--format", format, "--seed", "7"]);
                assert_eq!(a.stdout, b.stdout, "{cmd} {name} {format}");
                assert_eq!(a.status.code(), b.status.code());
            }
        }
    }
}

#[test]
fn out_directory_files_are_byte_identical() {
    let dirs = [tempfile::tempdir().unwrap(), tempfile::tempdir().unwrap()];
    let star = fixtures().join("three-point-star.json");
    for d in &dirs {
        let out = d.path().to_str().unwrap();
        assert!(run(&["induce", "--instance", star.to_str().unwrap(), "--out", out]).status.success());
        assert!(run(&["hnn", "--p", "2", "--q", "3", "--out", out]).status.success());
    }
    let mut names: Vec<_> = std::fs::read_dir(dirs[0].path()).unwrap().map(|e| e.unwrap().file_name()).collect();
    names.sort();
    assert!(names.len() >= 6);
    for n in names {
        let a = std::fs::read(dirs[0].path().join(&n)).unwrap();
        let b = std::fs::read(dirs[1].path().join(&n)).unwrap();
        assert_eq!(a, b, "{n:?}");
    }
}

#[test]
fn hnn_report_has_ball_size_and_truncated_cost() {
    let o = run(&["hnn", "--p", "2", "--q", "3", "--radius-word", "3", "--radius-level", "3"]);
    assert!(o.status.success());
    let text = String::from_utf8(o.stdout).unwrap();
    assert!(text.contains("ball-size = 106"));
    assert!(text.contains("truncated-cost = 2147/216"));
}

#[test]
fn exit_codes() {
    let f = |n: &str| fixtures().join(n).to_str().unwrap().to_string();
    assert_eq!(run(&["check", "--instance", &f("three-point-star.json")]).status.code(), Some(0));
    assert_eq!(run(&["split", "--instance", &f("split-non-central.json")]).status.code(), Some(1));
    assert_eq!(run(&["induce", "--instance", &f("split-z4-central.json")]).status.code(), Some(2));
    assert_eq!(run(&["check", "--instance", "/nonexistent.json"]).status.code(), Some(2));
    assert_eq!(run(&["hnn", "--max-arrows", "20"]).status.code(), Some(3));
    let bad = tempfile::NamedTempFile::new().unwrap();
    std::fs::write(bad.path(), "{\"kind\": \"descent\", \"p\": 2,\n \"q\": }").unwrap();
    let o = run(&["hnn", "--instance", bad.path().to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8(o.stderr).unwrap().contains("line 2"));
}

#[test]
fn dot_output() {
    let star = fixtures().join("three-point-star.json");
    let o = run(&["induce", "--instance", star.to_str().unwrap(), "--format", "dot"]);
    assert!(String::from_utf8(o.stdout).unwrap().starts_with("digraph"));
    let o = run(&["split", "--instance", fixtures().join("split-z4-central.json").to_str().unwrap(), "--format", "dot"]);
    assert_eq!(o.status.code(), Some(2));
}
