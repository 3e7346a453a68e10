//! Acceptance suite: one PASS/FAIL line per criterion.

#[path = "../../core/tests/common/mod.rs"]
mod common;

use std::collections::{BTreeMap, BTreeSet};
use std::fs;
use std::process::{Command, ExitCode};
use std::time::Instant;

use dockslim_core::{analyze, detect, fix_source, print_minimal, unified_diff, ParseStatus, RuleId};

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn fixed(text: &str) -> String {
    fix_source("f", text, &RuleId::ALL).1
}

fn fixture_detection() -> Outcome {
    let fixtures = common::fixtures();
    let start = Instant::now();
    let (mut tp, mut fp, mut fn_) = (0usize, 0usize, 0usize);
    let mut misses = Vec::new();
    for f in &fixtures {
        let found: BTreeSet<(RuleId, usize)> = detect(&analyze(&f.text), &RuleId::ALL)
            .iter()
            .map(|d| (d.rule, d.line()))
            .collect();
        tp += found.intersection(&f.expect).count();
        let extra: Vec<_> = found.difference(&f.expect).collect();
        let missing: Vec<_> = f.expect.difference(&found).collect();
        fp += extra.len();
        fn_ += missing.len();
        if !extra.is_empty() || !missing.is_empty() {
            misses.push(format!("{} extra={extra:?} missing={missing:?}", f.name));
        }
    }
    let elapsed = start.elapsed();
    let precision = tp as f64 / (tp + fp).max(1) as f64;
    let recall = tp as f64 / (tp + fn_).max(1) as f64;
    let firefox = fixtures
        .iter()
        .find(|f| f.name.starts_with("tar_neg_firefox"))
        .ok_or("firefox fixture missing")?;
    let gsl = fixtures
        .iter()
        .find(|f| f.name.starts_with("tar_pos_gsl"))
        .ok_or("gsl fixture missing")?;
    let tar = RuleId::TarSomethingRmTheSomething;
    if firefox.expect.iter().any(|(r, _)| *r == tar) || !gsl.expect.iter().any(|(r, _)| *r == tar) {
        return Err("firefox/gsl fixtures are annotated the wrong way".into());
    }
    for rule in RuleId::ALL {
        let pos = fixtures
            .iter()
            .filter(|f| f.expect.iter().any(|(r, _)| *r == rule))
            .count();
        if pos < 2 {
            return Err(format!("{rule} has {pos} positive fixtures"));
        }
    }
    let detail = format!(
        "{} files, precision {:.2}%, recall {:.2}%, {:.0} ms",
        fixtures.len(),
        100.0 * precision,
        100.0 * recall,
        elapsed.as_secs_f64() * 1e3
    );
    if fp + fn_ > 0 {
        return Err(format!("{detail}; {}", misses.join("; ")));
    }
    if elapsed.as_secs_f64() >= 1.0 {
        return Err(format!("{detail}; over 1 s"));
    }
    Ok(detail)
}

/// Reasons a diagnostic may be reported as not fixable.
const SAFETY_EXCLUSIONS: &[&str] = &[
    "RUN has no commands",
    "top level of the RUN is not a single && chain",
    "top level of the RUN uses `;` or newlines",
    "top level of the RUN uses `||`",
    "top level of the RUN is ",
    "the && chain contains a compound or unparsed statement",
    "the command is nested inside a pipeline or subshell",
    "anchor is outside the top-level chain",
    "exec-form RUN has no shell to extend",
    "the cleanup would need JSON escaping inside an exec-form RUN",
];

fn repair_completeness() -> Outcome {
    let (mut fixable, mut excluded) = (0, 0);
    for f in common::fixtures() {
        let before = detect(&analyze(&f.text), &RuleId::ALL);
        for d in before.iter().filter(|d| !d.fixable) {
            let reason = d.reason.as_deref().unwrap_or("");
            if !SAFETY_EXCLUSIONS.iter().any(|r| reason.starts_with(r)) {
                return Err(format!("{}: undocumented exclusion `{reason}`", f.name));
            }
            if !f.not_fixable.contains(&(d.rule, d.line())) {
                return Err(format!(
                    "{}: {} line {} unexpectedly not fixable",
                    f.name,
                    d.rule,
                    d.line()
                ));
            }
            excluded += 1;
        }
        fixable += before.iter().filter(|d| d.fixable).count();
        let (report, _) = fix_source(&f.name, &f.text, &RuleId::ALL);
        let residual: BTreeSet<(RuleId, usize)> =
            report.residual.iter().map(|d| (d.rule, d.line())).collect();
        let expected: BTreeSet<RuleId> = f.not_fixable.iter().map(|(r, _)| *r).collect();
        if residual.iter().map(|(r, _)| *r).collect::<BTreeSet<_>>() != expected
            || residual.len() != f.not_fixable.len()
        {
            return Err(format!(
                "{}: residual {residual:?}, expected {:?}",
                f.name, f.not_fixable
            ));
        }
    }
    Ok(format!(
        "{fixable} fixable smells repaired, {excluded} documented exclusions left"
    ))
}

fn gsl_placement() -> Outcome {
    let input = "FROM heroku/cedar:14\n\
RUN wget -O gsl.tgz ftp://ftp.gnu.org/gsl-1.16.tar && tar -zxf gsl.tgz && mkdir gsl && cd gsl-1.16 && ./configure --prefix=/app/gsl && make && make install\n";
    let out = fixed(input);
    let pos = |s: &str| out.find(s).ok_or_else(|| format!("`{s}` missing from\n{out}"));
    let (tar, rm, cd) = (pos("tar -zxf gsl.tgz")?, pos("rm gsl.tgz")?, pos("cd gsl-1.16")?);
    if tar < rm && rm < cd && out.lines().count() == 2 {
        Ok(out.lines().nth(1).unwrap_or("").to_string())
    } else {
        Err(format!("bad placement:\n{out}"))
    }
}

fn round_trip() -> Outcome {
    let corpus = common::corpus();
    if corpus.len() < 100 {
        return Err(format!("only {} corpus files", corpus.len()));
    }
    let (mut checked, mut skipped) = (0, 0);
    for (name, text) in &corpus {
        let ast = analyze(text);
        if ParseStatus::of(&ast) == ParseStatus::FailedSoft {
            skipped += 1;
            continue;
        }
        let printed = print_minimal(&ast).map_err(|e| format!("{name}: {e}"))?;
        if printed != *text {
            return Err(format!("{name} does not round-trip"));
        }
        checked += 1;
    }
    Ok(format!(
        "{checked}/{checked} byte-identical, {skipped} failed-soft skipped"
    ))
}

fn idempotence() -> Outcome {
    let fixtures = common::fixtures();
    let mut changed = 0;
    for f in &fixtures {
        let once = fixed(&f.text);
        changed += usize::from(once != f.text);
        if fixed(&once) != once {
            return Err(format!("{} changes on a second pass", f.name));
        }
    }
    Ok(format!(
        "{} fixtures, {changed} changed by the first pass only",
        fixtures.len()
    ))
}

/// Old-side line numbers named by the hunk headers of a zero-context diff.
fn touched_lines(diff: &str) -> Vec<usize> {
    let mut out = Vec::new();
    for header in diff.lines().filter(|l| l.starts_with("@@ ")) {
        let old = header
            .split_whitespace()
            .nth(1)
            .unwrap_or("-0,0")
            .trim_start_matches('-');
        let (start, len) = old.split_once(',').unwrap_or((old, "1"));
        let (start, len): (usize, usize) = (start.parse().unwrap_or(0), len.parse().unwrap_or(0));
        if len == 0 {
            out.push(start);
        } else {
            out.extend(start..start + len);
        }
    }
    out
}

fn diff_locality() -> Outcome {
    let mut checked = 0;
    let mut one_liners = 0;
    for f in common::fixtures()
        .iter()
        .filter(|f| f.single_smell() && f.not_fixable.is_empty())
    {
        let ast = analyze(&f.text);
        let diags = detect(&ast, &RuleId::ALL);
        let [d] = diags.as_slice() else {
            return Err(format!("{}: expected one diagnostic", f.name));
        };
        let span = ast.tree.span(d.run).ok_or("RUN without span")?;
        let diff = unified_diff(&f.text, &fixed(&f.text), &f.name, 0);
        let lines = touched_lines(&diff);
        if lines.is_empty() {
            return Err(format!("{}: fix produced no diff", f.name));
        }
        if let Some(bad) = lines
            .iter()
            .find(|&&l| l + 1 < span.start_line || l > span.end_line + 1)
        {
            return Err(format!(
                "{}: line {bad} outside RUN lines {}-{}\n{diff}",
                f.name, span.start_line, span.end_line
            ));
        }
        let hunks: Vec<Vec<&str>> = diff
            .lines()
            .filter(|l| l.starts_with("@@ "))
            .map(|l| l.split_whitespace().collect())
            .collect();
        one_liners +=
            usize::from(matches!(hunks.as_slice(), [h] if h[1].ends_with(",1") && h[2].ends_with(",1")));
        checked += 1;
    }
    Ok(format!(
        "{checked} single-smell fixtures, {one_liners} one-line hunks"
    ))
}

fn non_interference() -> Outcome {
    let mut fixable_files = 0;
    for f in common::fixtures() {
        let before = detect(&analyze(&f.text), &RuleId::ALL);
        let after = detect(&analyze(&fixed(&f.text)), &RuleId::ALL);
        let count = |ds: &[dockslim_core::SmellDiagnostic]| {
            let mut m: BTreeMap<RuleId, usize> = BTreeMap::new();
            for d in ds {
                *m.entry(d.rule).or_default() += 1;
            }
            m
        };
        let (b, a) = (count(&before), count(&after));
        for (rule, n) in &a {
            if *n > b.get(rule).copied().unwrap_or(0) {
                return Err(format!("{}: fix introduced {rule}", f.name));
            }
        }
        if before.iter().all(|d| d.fixable) {
            fixable_files += 1;
            if !after.is_empty() {
                return Err(format!("{}: {} diagnostics after fix", f.name, after.len()));
            }
        }
    }
    Ok(format!(
        "{fixable_files} fully fixable files clean after fix, nothing introduced"
    ))
}

fn stats_arithmetic() -> Outcome {
    let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
    let a = "FROM python:3\nRUN pip install flask && apk add curl\nRUN pip install requests\n";
    let files = [
        ("Dockerfile", a),
        ("svc/Dockerfile.dev", "FROM python:3\nRUN pip3 install gunicorn\n"),
        ("copy/Dockerfile", a),
        ("clean.Dockerfile", "FROM alpine:3\nRUN apk add --no-cache curl\n"),
        (
            "legacy/Dockerfile",
            "FROM centos:7\nRUN yum install -y httpd; echo done\n",
        ),
        ("notes.txt", "RUN pip install ignored\n"),
    ];
    for (name, text) in files {
        let p = dir.path().join(name);
        fs::create_dir_all(p.parent().unwrap()).map_err(|e| e.to_string())?;
        fs::write(p, text).map_err(|e| e.to_string())?;
    }
    let run = |format: &str| {
        Command::new(env!("CARGO_BIN_EXE_dockslim"))
            .args(["stats", "--format", format])
            .arg(dir.path())
            .output()
            .map_err(|e| e.to_string())
    };

    let out = run("json")?;
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).map_err(|e| e.to_string())?;
    let expect_counts: [(&str, [u64; 4]); 3] = [
        ("pipUseNoCacheDir", [3, 0, 2, 0]),
        ("apkAddUseNoCache", [1, 0, 1, 0]),
        ("yumInstallRmVarCacheYum", [1, 1, 1, 1]),
    ];
    let keys = [
        "occurrences_before",
        "occurrences_after",
        "files_before",
        "files_after",
    ];
    for rule in RuleId::ALL {
        let want = expect_counts
            .iter()
            .find(|(n, _)| *n == rule.name())
            .map_or([0; 4], |(_, c)| *c);
        let got: Vec<u64> = keys
            .iter()
            .map(|k| v["rules"][rule.name()][k].as_u64().unwrap_or(u64::MAX))
            .collect();
        if got != want {
            return Err(format!("{rule}: got {got:?}, want {want:?}"));
        }
    }
    let scalars = [
        ("files_scanned", 5),
        ("duplicates", 1),
        ("unique_files", 4),
        ("files_with_smell_before", 3),
        ("files_with_smell_after", 1),
    ];
    for (k, want) in scalars {
        if v[k].as_u64() != Some(want) {
            return Err(format!("{k}: got {}, want {want}", v[k]));
        }
    }
    let totals: Vec<u64> = keys
        .iter()
        .map(|k| v["totals"][k].as_u64().unwrap_or(u64::MAX))
        .collect();
    if totals != [5, 1, 4, 1] {
        return Err(format!("totals {totals:?}"));
    }

    let out = run("text")?;
    let text = String::from_utf8_lossy(&out.stdout).into_owned();
    let rows: Vec<Vec<String>> = text
        .lines()
        .filter(|l| l.contains('|'))
        .map(|l| l.split('|').map(|c| c.trim().to_string()).collect())
        .collect();
    let row = |cells: &[&str]| cells.iter().map(|c| c.to_string()).collect::<Vec<_>>();
    let mut want = vec![
        row(&[
            "Docker Smell",
            "# Docker Smell",
            "",
            "# Dockerfile with Smell",
            "",
        ]),
        row(&[
            "",
            "Before Repair",
            "After Repaired",
            "Before Repair",
            "After Repaired",
        ]),
    ];
    for rule in RuleId::ALL {
        want.push(match rule.name() {
            "pipUseNoCacheDir" => row(&[
                "pipUseNoCacheDir",
                "3 (60.00%)",
                "0 (0.00%)",
                "2 (66.67%)",
                "0 (0.00%)",
            ]),
            "apkAddUseNoCache" => row(&[
                "apkAddUseNoCache",
                "1 (20.00%)",
                "0 (0.00%)",
                "1 (33.33%)",
                "0 (0.00%)",
            ]),
            "yumInstallRmVarCacheYum" => row(&[
                "yumInstallRmVarCacheYum",
                "1 (20.00%)",
                "1 (100.00%)",
                "1 (33.33%)",
                "1 (100.00%)",
            ]),
            name => row(&[name, "0 (0.00%)", "0 (0.00%)", "0 (0.00%)", "0 (0.00%)"]),
        });
    }
    want.push(row(&["Total", "5", "1", "4", "1"]));
    want.push(row(&["Distinct Dockerfiles", "", "", "3", "1"]));
    if rows != want {
        for (g, w) in rows.iter().zip(&want) {
            if g != w {
                return Err(format!("table row {g:?}, want {w:?}"));
            }
        }
        return Err(format!("table has {} rows, want {}", rows.len(), want.len()));
    }
    Ok("per-rule counts, totals, duplicates and table layout match hand counts".into())
}

fn main() -> ExitCode {
    let criteria: [Criterion; 8] = [
        ("fixture detection", fixture_detection),
        ("repair completeness", repair_completeness),
        ("gsl placement", gsl_placement),
        ("round-trip identity", round_trip),
        ("fix idempotence", idempotence),
        ("diff locality", diff_locality),
        ("non-interference", non_interference),
        ("stats arithmetic", stats_arithmetic),
    ];
    let mut failed = 0;
    for (name, check) in criteria {
        match check() {
            Ok(detail) => println!("PASS {name}: {detail}"),
            Err(detail) => {
                failed += 1;
                println!("FAIL {name}: {detail}");
            }
        }
    }
    println!(
        "{} of {} criteria passed",
        criteria.len() - failed,
        criteria.len()
    );
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
