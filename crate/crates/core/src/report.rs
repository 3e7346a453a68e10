//! Per-file reports, file discovery and corpus statistics.

use std::collections::{BTreeMap, HashSet};
use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use globset::{Glob, GlobSet, GlobSetBuilder};
use serde::Serialize;
use sha2::{Digest, Sha256};
use walkdir::WalkDir;

use crate::enrich::schema::SCHEMAS;
use crate::enrich::{analyze, command_words, UnifiedAst};
use crate::error::{Error, Result};
use crate::labels::Label;
use crate::printer::print_minimal;
use crate::rules::{
    detect, detect_with_notes, fix, Note, RepairOutcome, RepairStatus, RuleId, SmellDiagnostic,
};
use crate::tree::NodeKind;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum ParseStatus {
    Ok,
    /// Some shell regions were kept as unparsed text.
    Partial,
    /// Nothing could be parsed.
    FailedSoft,
}

impl ParseStatus {
    pub fn of(ast: &UnifiedAst) -> ParseStatus {
        if ast.is_unparseable() {
            ParseStatus::FailedSoft
        } else if ast.has_unparsed() {
            ParseStatus::Partial
        } else {
            ParseStatus::Ok
        }
    }
}

#[derive(Clone, Debug)]
pub struct FileReport {
    pub path: String,
    pub status: ParseStatus,
    pub diagnostics: Vec<SmellDiagnostic>,
    pub notes: Vec<Note>,
    /// Filled in fix mode.
    pub repairs: Vec<RepairOutcome>,
    /// Diagnostics detected again on the repaired text (fix mode).
    pub residual: Vec<SmellDiagnostic>,
    /// I/O failure; the file was not analyzed or not written.
    pub error: Option<String>,
}

impl FileReport {
    fn new(path: &str, status: ParseStatus) -> Self {
        FileReport {
            path: path.to_string(),
            status,
            diagnostics: Vec::new(),
            notes: Vec::new(),
            repairs: Vec::new(),
            residual: Vec::new(),
            error: None,
        }
    }

    pub fn io_error(path: &str, err: impl std::fmt::Display) -> Self {
        let mut r = FileReport::new(path, ParseStatus::FailedSoft);
        r.error = Some(err.to_string());
        r
    }

    pub fn count(&self, status: RepairStatus) -> usize {
        self.repairs.iter().filter(|o| o.status == status).count()
    }
}

fn with_path(mut diags: Vec<SmellDiagnostic>, path: &str) -> Vec<SmellDiagnostic> {
    for d in &mut diags {
        d.path = path.to_string();
    }
    diags
}

/// Detects `rules` in one file.
pub fn lint_source(path: &str, text: &str, rules: &[RuleId]) -> FileReport {
    let ast = analyze(text);
    let mut report = FileReport::new(path, ParseStatus::of(&ast));
    let found = detect_with_notes(&ast, rules);
    report.diagnostics = with_path(found.diagnostics, path);
    report.notes = found.notes;
    report
}

/// Detects and repairs `rules` in one file; returns the report and the
/// repaired text. The residual is detected on a fresh parse of that text.
pub fn fix_source(path: &str, text: &str, rules: &[RuleId]) -> (FileReport, String) {
    let mut ast = analyze(text);
    let mut report = FileReport::new(path, ParseStatus::of(&ast));
    report.notes = detect_with_notes(&ast, rules).notes;
    let result = fix(&mut ast, rules);
    report.diagnostics = with_path(result.diagnostics, path);
    report.repairs = result.outcomes;
    let output = match print_minimal(&ast) {
        Ok(out) => out,
        Err(e) => {
            report.error = Some(e.to_string());
            text.to_string()
        }
    };
    report.residual = with_path(detect(&analyze(&output), rules), path);
    (report, output)
}

// ---- discovery --------------------------------------------------------------

/// File-name globs used when walking directories.
pub const DEFAULT_GLOBS: [&str; 3] = ["Dockerfile", "*.Dockerfile", "Dockerfile.*"];

/// Expands `paths` into the files to analyze: files are taken as given,
/// directories are walked for names matching `globs`. Sorted, deduplicated.
pub fn discover<P: AsRef<Path>>(paths: &[P], globs: &[String]) -> Result<Vec<PathBuf>> {
    let set = glob_set(globs)?;
    let mut out = Vec::new();
    for p in paths {
        let p = p.as_ref();
        if !p.is_dir() {
            out.push(p.to_path_buf());
            continue;
        }
        for entry in WalkDir::new(p).follow_links(false) {
            let entry = entry.map_err(|e| Error::Io {
                path: e.path().map_or_else(|| p.to_path_buf(), Path::to_path_buf),
                source: e
                    .into_io_error()
                    .unwrap_or_else(|| std::io::Error::other("walk failed")),
            })?;
            if entry.file_type().is_file() && set.is_match(entry.file_name()) {
                out.push(entry.into_path());
            }
        }
    }
    out.sort();
    out.dedup();
    Ok(out)
}

fn glob_set(globs: &[String]) -> Result<GlobSet> {
    let mut b = GlobSetBuilder::new();
    let defaults: Vec<String> = DEFAULT_GLOBS.iter().map(|g| g.to_string()).collect();
    for g in if globs.is_empty() { &defaults } else { globs } {
        b.add(Glob::new(g).map_err(|e| Error::BadGlob(e.to_string()))?);
    }
    b.build().map_err(|e| Error::BadGlob(e.to_string()))
}

// ---- corpus statistics ------------------------------------------------------

/// Counts for one rule: occurrences and files, before and after repair.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
pub struct RuleCounts {
    pub occurrences_before: usize,
    pub occurrences_after: usize,
    pub files_before: usize,
    pub files_after: usize,
}

impl RuleCounts {
    fn add(&mut self, o: &RuleCounts) {
        self.occurrences_before += o.occurrences_before;
        self.occurrences_after += o.occurrences_after;
        self.files_before += o.files_before;
        self.files_after += o.files_after;
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct CorpusStats {
    pub rules: BTreeMap<RuleId, RuleCounts>,
    /// Column sums of `rules`.
    pub totals: RuleCounts,
    pub files_scanned: usize,
    pub duplicates: usize,
    pub failed_soft: usize,
    /// Distinct files with at least one smell, before and after repair.
    pub files_with_smell_before: usize,
    pub files_with_smell_after: usize,
    pub simple_commands: usize,
    pub labelled_commands: usize,
    #[serde(skip)]
    seen: HashSet<[u8; 32]>,
}

/// Per-file contribution to [`CorpusStats`].
#[derive(Clone, Debug, Default)]
pub struct FileStats {
    hash: [u8; 32],
    failed_soft: bool,
    before: BTreeMap<RuleId, usize>,
    after: BTreeMap<RuleId, usize>,
    simple_commands: usize,
    labelled_commands: usize,
}

impl FileStats {
    /// Analyzes one file: smells before, and after an in-memory fix.
    pub fn of(text: &str, rules: &[RuleId]) -> FileStats {
        let hash = Sha256::digest(text.as_bytes()).into();
        let ast = analyze(text);
        if ast.is_unparseable() {
            return FileStats {
                hash,
                failed_soft: true,
                ..FileStats::default()
            };
        }
        let (simple_commands, labelled_commands) = coverage(&ast);
        let tally = |diags: &[SmellDiagnostic]| {
            let mut m = BTreeMap::new();
            for d in diags {
                *m.entry(d.rule).or_insert(0) += 1;
            }
            m
        };
        let (report, _) = fix_source("", text, rules);
        FileStats {
            hash,
            failed_soft: false,
            before: tally(&report.diagnostics),
            after: tally(&report.residual),
            simple_commands,
            labelled_commands,
        }
    }
}

/// Simple commands outside unparsed regions, and how many of them got a
/// command label.
fn coverage(ast: &UnifiedAst) -> (usize, usize) {
    let tree = &ast.tree;
    let command_labels: Vec<Label> = SCHEMAS.iter().map(|s| Label::of(s.label)).collect();
    let mut total = 0;
    let mut labelled = 0;
    for n in tree.descendants(ast.root()) {
        if tree.kind(n) != NodeKind::ScSimpleCommand
            || tree.ancestors(n).any(|a| tree.kind(a) == NodeKind::ScUnparsed)
        {
            continue;
        }
        let words = command_words(tree, n);
        if words.is_empty() {
            continue;
        }
        total += 1;
        if words
            .iter()
            .any(|&w| command_labels.iter().any(|&l| tree.has_label(w, l)))
        {
            labelled += 1;
        }
    }
    (total, labelled)
}

impl CorpusStats {
    pub fn new() -> Self {
        CorpusStats {
            rules: RuleId::ALL.iter().map(|&r| (r, RuleCounts::default())).collect(),
            ..CorpusStats::default()
        }
    }

    /// Adds one file; byte-identical repeats only count as duplicates.
    pub fn add(&mut self, file: &FileStats) {
        self.files_scanned += 1;
        if !self.seen.insert(file.hash) {
            self.duplicates += 1;
            return;
        }
        if file.failed_soft {
            self.failed_soft += 1;
            return;
        }
        self.files_with_smell_before += usize::from(!file.before.is_empty());
        self.files_with_smell_after += usize::from(!file.after.is_empty());
        self.simple_commands += file.simple_commands;
        self.labelled_commands += file.labelled_commands;
        for (&rule, &n) in &file.before {
            let c = self.rules.entry(rule).or_default();
            c.occurrences_before += n;
            c.files_before += 1;
        }
        for (&rule, &n) in &file.after {
            let c = self.rules.entry(rule).or_default();
            c.occurrences_after += n;
            c.files_after += 1;
        }
        self.totals = RuleCounts::default();
        for c in self.rules.values() {
            self.totals.add(c);
        }
    }

    pub fn add_text(&mut self, text: &str, rules: &[RuleId]) {
        self.add(&FileStats::of(text, rules));
    }

    pub fn unique_files(&self) -> usize {
        self.files_scanned - self.duplicates
    }

    /// Percentage of simple commands that received a command label.
    pub fn schema_coverage(&self) -> f64 {
        if self.simple_commands == 0 {
            return 0.0;
        }
        100.0 * self.labelled_commands as f64 / self.simple_commands as f64
    }

    /// Plain-text table: one row per rule, occurrence and file counts
    /// before and after repair, then totals.
    pub fn table(&self) -> String {
        let cell = |n: usize, of: usize| {
            if of == 0 {
                format!("{n}")
            } else {
                format!("{n} ({:.2}%)", 100.0 * n as f64 / of as f64)
            }
        };
        let t = &self.totals;
        let mut rows: Vec<[String; 5]> = vec![
            [
                "Docker Smell".into(),
                "# Docker Smell".into(),
                String::new(),
                "# Dockerfile with Smell".into(),
                String::new(),
            ],
            [
                String::new(),
                "Before Repair".into(),
                "After Repaired".into(),
                "Before Repair".into(),
                "After Repaired".into(),
            ],
        ];
        for (rule, c) in &self.rules {
            rows.push([
                rule.name().into(),
                cell(c.occurrences_before, t.occurrences_before),
                cell(c.occurrences_after, t.occurrences_after),
                cell(c.files_before, self.files_with_smell_before),
                cell(c.files_after, self.files_with_smell_after),
            ]);
        }
        rows.push([
            "Total".into(),
            t.occurrences_before.to_string(),
            t.occurrences_after.to_string(),
            t.files_before.to_string(),
            t.files_after.to_string(),
        ]);
        rows.push([
            "Distinct Dockerfiles".into(),
            String::new(),
            String::new(),
            self.files_with_smell_before.to_string(),
            self.files_with_smell_after.to_string(),
        ]);
        let mut widths = [0; 5];
        for r in &rows {
            for (w, c) in widths.iter_mut().zip(r) {
                *w = (*w).max(c.chars().count());
            }
        }
        let mut out = String::new();
        for (i, r) in rows.iter().enumerate() {
            let mut line = format!("{:<w$}", r[0], w = widths[0]);
            for (c, w) in r[1..].iter().zip(&widths[1..]) {
                let _ = write!(line, " | {c:>w$}", w = *w);
            }
            out.push_str(line.trim_end());
            out.push('\n');
            if i == 1 || i == rows.len() - 3 {
                let total: usize = widths.iter().sum::<usize>() + 3 * 4;
                out.push_str(&"-".repeat(total));
                out.push('\n');
            }
        }
        let _ = writeln!(
            out,
            "\nfiles scanned: {}  unique: {}  duplicates: {}  failed-soft: {}",
            self.files_scanned,
            self.unique_files(),
            self.duplicates,
            self.failed_soft
        );
        let _ = writeln!(
            out,
            "schema coverage: {:.2}% ({} of {} simple commands labelled)",
            self.schema_coverage(),
            self.labelled_commands,
            self.simple_commands
        );
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fix_source_recomputes_residual() {
        let (r, out) = fix_source(
            "D",
            "RUN pip install x; echo\nRUN yum install y; echo\n",
            &RuleId::ALL,
        );
        assert_eq!(
            out,
            "RUN pip install --no-cache-dir x; echo\nRUN yum install y; echo\n"
        );
        assert_eq!(r.diagnostics.len(), 2);
        assert_eq!(r.residual.len(), 1);
        assert_eq!(r.residual[0].rule, RuleId::YumInstallRmVarCacheYum);
        assert_eq!(r.count(RepairStatus::NotFixable), 1);
    }

    #[test]
    fn stats_dedup_and_counts() {
        let mut s = CorpusStats::new();
        s.add_text("RUN pip install a && pip install b\n", &RuleId::ALL);
        s.add_text("RUN pip install a && pip install b\n", &RuleId::ALL);
        s.add_text("RUN pip install c\n", &RuleId::ALL);
        let pip = s.rules[&RuleId::PipUseNoCacheDir];
        assert_eq!((pip.occurrences_before, pip.files_before), (3, 2));
        assert_eq!((pip.occurrences_after, pip.files_after), (0, 0));
        assert_eq!(s.duplicates, 1);
        assert_eq!(s.totals.occurrences_before, 3);
        assert!(s.table().contains("pipUseNoCacheDir"));
    }
}
