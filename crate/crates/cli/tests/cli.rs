use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;

fn dockslim() -> Command {
    let mut c = Command::new(env!("CARGO_BIN_EXE_dockslim"));
    c.env_remove("DOCKSLIM_RULES");
    c
}

fn write(dir: &Path, name: &str, text: &str) -> PathBuf {
    let p = dir.join(name);
    fs::create_dir_all(p.parent().unwrap()).unwrap();
    fs::write(&p, text).unwrap();
    p
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn json(o: &Output) -> Value {
    serde_json::from_slice(&o.stdout).unwrap_or_else(|e| panic!("{e}: {}", stdout(o)))
}

const PIP: &str = "FROM python:3\nRUN pip install flask\n";
const CLEAN: &str = "FROM alpine:3\nRUN apk add --no-cache curl\n";

#[test]
fn lint_reports_smell_with_location() {
    let dir = tempfile::tempdir().unwrap();
    let p = write(dir.path(), "Dockerfile", PIP);
    let o = dockslim()
        .args(["lint", "--format", "json"])
        .arg(&p)
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(1));
    let v = json(&o);
    let d = &v[0]["diagnostics"];
    assert_eq!(d.as_array().unwrap().len(), 1);
    assert_eq!(d[0]["rule"], "pipUseNoCacheDir");
    assert_eq!(d[0]["line"], 2);
    assert_eq!(d[0]["column"], 9);
    assert_eq!(d[0]["fixable"], true);
    assert_eq!(v[0]["status"], "ok");
}

#[test]
fn lint_text_names_rule_and_line() {
    let dir = tempfile::tempdir().unwrap();
    let p = write(dir.path(), "Dockerfile", PIP);
    let o = dockslim().arg("lint").arg(&p).output().unwrap();
    let out = stdout(&o);
    assert!(out.contains(":2:") && out.contains("pipUseNoCacheDir"), "{out}");
}

#[test]
fn clean_file_exits_zero() {
    let dir = tempfile::tempdir().unwrap();
    let p = write(dir.path(), "Dockerfile", CLEAN);
    let o = dockslim().arg("lint").arg(&p).output().unwrap();
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
}

#[test]
fn rule_filter_and_env_var() {
    let dir = tempfile::tempdir().unwrap();
    let p = write(dir.path(), "Dockerfile", PIP);
    let o = dockslim()
        .args(["lint", "--rules", "apkAddUseNoCache"])
        .arg(&p)
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(0));
    let o = dockslim()
        .env("DOCKSLIM_RULES", "apkAddUseNoCache")
        .arg("lint")
        .arg(&p)
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(0));
    let o = dockslim()
        .env("DOCKSLIM_RULES", "pipUseCacheDir")
        .arg("lint")
        .arg(&p)
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn unknown_rule_is_an_error() {
    let dir = tempfile::tempdir().unwrap();
    let p = write(dir.path(), "Dockerfile", PIP);
    let o = dockslim()
        .args(["lint", "--rules", "noSuchRule"])
        .arg(&p)
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn fix_diff_is_one_line_hunk() {
    let dir = tempfile::tempdir().unwrap();
    let text = "FROM node:8\nRUN npm install && npm cache clean --force\nRUN npm cache clean\n";
    let p = write(dir.path(), "Dockerfile", text);
    let o = dockslim().args(["fix", "--diff"]).arg(&p).output().unwrap();
    let out = stdout(&o);
    assert!(
        out.contains("@@ -3,1 +3,1 @@\n-RUN npm cache clean\n+RUN npm cache clean --force\n"),
        "{out}"
    );
    assert_eq!(out.matches("@@ ").count(), 1, "{out}");
    assert!(out.starts_with("--- a/") && !out.starts_with("--- a//"), "{out}");
    assert_eq!(fs::read_to_string(&p).unwrap(), text);
    assert_eq!(o.status.code(), Some(0));
}

#[test]
fn fix_in_place_is_idempotent() {
    let dir = tempfile::tempdir().unwrap();
    let text = "FROM ubuntu:22.04\nRUN apt-get update \\\n    && apt-get install -y curl\n";
    let p = write(dir.path(), "Dockerfile", text);
    let o = dockslim().args(["fix", "--in-place"]).arg(&p).output().unwrap();
    assert_eq!(o.status.code(), Some(0));
    let once = fs::read_to_string(&p).unwrap();
    assert_eq!(
        once,
        "FROM ubuntu:22.04\nRUN apt-get update \\\n    && apt-get install --no-install-recommends -y curl \\\n    && rm -rf /var/lib/apt/lists/*\n"
    );
    dockslim().args(["fix", "--in-place"]).arg(&p).output().unwrap();
    assert_eq!(fs::read_to_string(&p).unwrap(), once);
    let o = dockslim().arg("lint").arg(&p).output().unwrap();
    assert_eq!(o.status.code(), Some(0));
}

#[test]
fn fix_clean_file_prints_nothing() {
    let dir = tempfile::tempdir().unwrap();
    let p = write(dir.path(), "Dockerfile", CLEAN);
    let o = dockslim().args(["fix"]).arg(&p).output().unwrap();
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "");
}

#[test]
fn not_fixable_leaves_file_alone() {
    let dir = tempfile::tempdir().unwrap();
    let text = "FROM ubuntu:22.04\nRUN apt-get update; apt-get install -y --no-install-recommends curl\n";
    let p = write(dir.path(), "Dockerfile", text);
    let o = dockslim()
        .args(["fix", "--in-place", "--format", "json"])
        .arg(&p)
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(1));
    assert_eq!(fs::read_to_string(&p).unwrap(), text);
    let v = json(&o);
    assert_eq!(v[0]["repairs"][0]["status"], "not-fixable");
    assert_eq!(v[0]["residual"][0]["rule"], "aptGetInstallThenRemoveAptLists");
    assert!(v[0]["residual"][0]["reason"].as_str().unwrap().contains(';'));
}

#[test]
fn fix_output_dir_mirrors_tree() {
    let dir = tempfile::tempdir().unwrap();
    let out = tempfile::tempdir().unwrap();
    write(dir.path(), "svc/Dockerfile", PIP);
    let o = dockslim()
        .args(["fix", "--output-dir"])
        .arg(out.path())
        .arg(dir.path())
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    let written: Vec<_> = walk(out.path());
    assert_eq!(written.len(), 1, "{written:?}");
    assert!(written[0].ends_with("svc/Dockerfile"));
    assert_eq!(
        fs::read_to_string(&written[0]).unwrap(),
        "FROM python:3\nRUN pip install --no-cache-dir flask\n"
    );
}

fn walk(dir: &Path) -> Vec<PathBuf> {
    let mut out = Vec::new();
    for e in fs::read_dir(dir).unwrap() {
        let p = e.unwrap().path();
        if p.is_dir() {
            out.extend(walk(&p));
        } else {
            out.push(p);
        }
    }
    out
}

#[test]
fn directory_walk_uses_globs() {
    let dir = tempfile::tempdir().unwrap();
    write(dir.path(), "a/Dockerfile", PIP);
    write(dir.path(), "b/web.Dockerfile", PIP);
    write(dir.path(), "c/Dockerfile.prod", PIP);
    write(dir.path(), "d/README.md", PIP);
    let o = dockslim()
        .args(["lint", "--format", "json"])
        .arg(dir.path())
        .output()
        .unwrap();
    assert_eq!(json(&o).as_array().unwrap().len(), 3);
    let o = dockslim()
        .args(["lint", "--format", "json", "--glob", "*.md"])
        .arg(dir.path())
        .output()
        .unwrap();
    assert_eq!(json(&o).as_array().unwrap().len(), 1);
}

#[test]
fn stats_counts_duplicates_once() {
    let dir = tempfile::tempdir().unwrap();
    write(dir.path(), "a/Dockerfile", PIP);
    write(dir.path(), "b/Dockerfile", PIP);
    write(dir.path(), "c/Dockerfile", CLEAN);
    let o = dockslim()
        .args(["stats", "--format", "json"])
        .arg(dir.path())
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(0));
    let v = json(&o);
    assert_eq!(v["files_scanned"], 3);
    assert_eq!(v["duplicates"], 1);
    assert_eq!(v["rules"]["pipUseNoCacheDir"]["occurrences_before"], 1);
    assert_eq!(v["rules"]["pipUseNoCacheDir"]["occurrences_after"], 0);
}

#[test]
fn stats_on_empty_directory() {
    let dir = tempfile::tempdir().unwrap();
    let o = dockslim()
        .args(["stats", "--format", "json"])
        .arg(dir.path())
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(0));
    let v = json(&o);
    assert_eq!(v["files_scanned"], 0);
    assert_eq!(v["totals"]["occurrences_before"], 0);
    let o = dockslim().arg("stats").arg(dir.path()).output().unwrap();
    assert!(stdout(&o).contains("Total"));
}

#[test]
fn missing_path_exits_two() {
    let dir = tempfile::tempdir().unwrap();
    let o = dockslim()
        .arg("lint")
        .arg(dir.path().join("nope/Dockerfile"))
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn report_file_receives_output() {
    let dir = tempfile::tempdir().unwrap();
    let p = write(dir.path(), "Dockerfile", PIP);
    let report = dir.path().join("out.json");
    let o = dockslim()
        .args(["lint", "--format", "json", "--report"])
        .arg(&report)
        .arg(&p)
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(1));
    let v: Value = serde_json::from_str(&fs::read_to_string(&report).unwrap()).unwrap();
    assert_eq!(v[0]["diagnostics"][0]["rule"], "pipUseNoCacheDir");
}

#[test]
fn verbose_lint_shows_notes() {
    let dir = tempfile::tempdir().unwrap();
    let p = write(dir.path(), "Dockerfile", "FROM debian\nRUN tar -xzf $ARCHIVE\n");
    let o = dockslim()
        .args(["lint", "--format", "json"])
        .arg(&p)
        .output()
        .unwrap();
    let v = json(&o);
    assert_eq!(v[0]["diagnostics"].as_array().unwrap().len(), 0);
    assert_eq!(v[0]["notes"][0]["rule"], "tarSomethingRmTheSomething");
    assert_eq!(o.status.code(), Some(0));
}

#[test]
fn rules_lists_all_fourteen() {
    let o = dockslim().args(["rules", "--format", "json"]).output().unwrap();
    let v = json(&o);
    assert_eq!(v.as_array().unwrap().len(), 14);
    assert_eq!(v[0]["rule"], "pipUseNoCacheDir");
}
