use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use rayon::prelude::*;
use serde_json::{json, Value};

use dockslim_core::rules::RepairKind;
use dockslim_core::{
    decode_source, discover, fix_source, lint_source, parse_rule_list, unified_diff, CorpusStats, FileReport,
    FileStats, ParseStatus, RepairStatus, RuleId, SmellDiagnostic,
};

/// Find and repair Dockerfile smells that bloat images.
#[derive(Parser)]
#[command(name = "dockslim", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Report smells.
    Lint {
        #[command(flatten)]
        common: Common,
        #[arg(required = true)]
        paths: Vec<PathBuf>,
    },
    /// Repair smells. Prints a unified diff unless told otherwise.
    Fix {
        #[command(flatten)]
        common: Common,
        /// Rewrite files in place.
        #[arg(long, conflicts_with_all = ["diff", "output_dir"])]
        in_place: bool,
        /// Print a unified diff to stdout (default).
        #[arg(long, conflicts_with = "output_dir")]
        diff: bool,
        /// Write repaired files under this directory.
        #[arg(long, value_name = "DIR")]
        output_dir: Option<PathBuf>,
        /// Context lines in diffs.
        #[arg(long, default_value_t = 0)]
        context: usize,
        #[arg(required = true)]
        paths: Vec<PathBuf>,
    },
    /// Smell counts over a corpus, before and after repair.
    Stats {
        #[command(flatten)]
        common: Common,
        root: PathBuf,
    },
    /// List the rules.
    Rules {
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
}

#[derive(Args)]
struct Common {
    /// Comma-separated rule names; all rules when empty.
    #[arg(long, env = "DOCKSLIM_RULES", default_value = "")]
    rules: String,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Also print notes and parser warnings.
    #[arg(short, long)]
    verbose: bool,
    /// File-name glob for directory walks (repeatable); replaces the defaults.
    #[arg(long = "glob", value_name = "GLOB")]
    globs: Vec<String>,
    /// Worker threads; 0 picks one per core.
    #[arg(short, long, default_value_t = 0)]
    jobs: usize,
    /// Write the report here instead of stdout.
    #[arg(long, value_name = "FILE")]
    report: Option<PathBuf>,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

const EXIT_CLEAN: u8 = 0;
const EXIT_SMELLS: u8 = 1;
const EXIT_FAILURE: u8 = 2;

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("dockslim: {e}");
            ExitCode::from(EXIT_FAILURE)
        }
    }
}

fn run(cli: Cli) -> Result<u8, String> {
    match cli.command {
        Command::Lint { common, paths } => lint(&common, &paths),
        Command::Fix {
            common,
            in_place,
            output_dir,
            context,
            paths,
            ..
        } => {
            let mode = match (in_place, output_dir) {
                (true, _) => Output::InPlace,
                (_, Some(dir)) => Output::Dir(dir),
                _ => Output::Diff,
            };
            fix(&common, &paths, &mode, context)
        }
        Command::Stats { common, root } => stats(&common, &root),
        Command::Rules { format } => {
            print_rules(format);
            Ok(EXIT_CLEAN)
        }
    }
}

fn setup(common: &Common) -> Result<Vec<RuleId>, String> {
    if common.jobs > 0 {
        // fails only if a pool already exists
        let _ = rayon::ThreadPoolBuilder::new()
            .num_threads(common.jobs)
            .build_global();
    }
    parse_rule_list(&common.rules).map_err(|e| e.to_string())
}

fn read(path: &Path) -> Result<String, String> {
    let bytes = fs::read(path).map_err(|e| e.to_string())?;
    Ok(decode_source(&bytes).0)
}

fn display(path: &Path) -> String {
    path.display().to_string()
}

fn emit(common: &Common, text: &str) -> Result<(), String> {
    match &common.report {
        Some(file) => fs::write(file, text).map_err(|e| format!("{}: {e}", file.display())),
        None => {
            let mut out = io::stdout().lock();
            out.write_all(text.as_bytes()).map_err(|e| e.to_string())
        }
    }
}

// ---- lint -------------------------------------------------------------------

fn lint(common: &Common, paths: &[PathBuf]) -> Result<u8, String> {
    let rules = setup(common)?;
    let files = discover(paths, &common.globs).map_err(|e| e.to_string())?;
    let reports: Vec<FileReport> = files
        .par_iter()
        .map(|p| {
            let name = display(p);
            match read(p) {
                Ok(text) => lint_source(&name, &text, &rules),
                Err(e) => FileReport::io_error(&name, e),
            }
        })
        .collect();
    let text = match common.format {
        Format::Json => json_report(&reports, false),
        Format::Text => {
            let mut s = String::new();
            for r in &reports {
                text_file(r, common.verbose, &mut s);
            }
            let smells: usize = reports.iter().map(|r| r.diagnostics.len()).sum();
            let with = reports.iter().filter(|r| !r.diagnostics.is_empty()).count();
            s.push_str(&format!(
                "{smells} smell(s) in {with} of {} file(s)\n",
                reports.len()
            ));
            s
        }
    };
    emit(common, &text)?;
    Ok(if reports.iter().any(failed) {
        EXIT_FAILURE
    } else if reports.iter().any(|r| !r.diagnostics.is_empty()) {
        EXIT_SMELLS
    } else {
        EXIT_CLEAN
    })
}

fn failed(r: &FileReport) -> bool {
    r.error.is_some() || r.status == ParseStatus::FailedSoft
}

fn status_name(s: ParseStatus) -> &'static str {
    match s {
        ParseStatus::Ok => "ok",
        ParseStatus::Partial => "partial",
        ParseStatus::FailedSoft => "failed-soft",
    }
}

fn text_file(r: &FileReport, verbose: bool, s: &mut String) {
    if let Some(e) = &r.error {
        s.push_str(&format!("{}: error: {e}\n", r.path));
        return;
    }
    if r.status == ParseStatus::FailedSoft {
        s.push_str(&format!("{}: error: file could not be parsed\n", r.path));
    }
    for d in &r.diagnostics {
        s.push_str(&format!(
            "{}:{}:{}: {}: {}",
            r.path,
            d.line(),
            d.column(),
            d.rule,
            d.message
        ));
        if let Some(why) = &d.reason {
            s.push_str(&format!(" (not fixable: {why})"));
        }
        s.push('\n');
    }
    if verbose {
        if r.status == ParseStatus::Partial {
            s.push_str(&format!("{}: note: some shell code was left unparsed\n", r.path));
        }
        for n in &r.notes {
            s.push_str(&format!(
                "{}:{}:{}: note: {}\n",
                r.path, n.line, n.column, n.message
            ));
        }
    }
}

fn json_diag(d: &SmellDiagnostic) -> Value {
    json!({
        "rule": d.rule.name(),
        "path": d.path,
        "line": d.line(),
        "column": d.column(),
        "message": d.message,
        "fixable": d.fixable,
        "reason": d.reason,
    })
}

fn json_report(reports: &[FileReport], fix_mode: bool) -> String {
    let files: Vec<Value> = reports
        .iter()
        .map(|r| {
            let mut v = json!({
                "path": r.path,
                "status": status_name(r.status),
                "error": r.error,
                "diagnostics": r.diagnostics.iter().map(json_diag).collect::<Vec<_>>(),
                "notes": r.notes,
            });
            if fix_mode {
                v["repairs"] = r
                    .repairs
                    .iter()
                    .map(|o| {
                        json!({
                            "rule": o.rule.name(),
                            "line": o.line,
                            "status": o.status,
                            "edits": o.edits,
                            "reason": o.reason,
                        })
                    })
                    .collect();
                v["residual"] = r.residual.iter().map(json_diag).collect();
            }
            v
        })
        .collect();
    let mut s = serde_json::to_string_pretty(&files).expect("JSON values serialize");
    s.push('\n');
    s
}

// ---- fix --------------------------------------------------------------------

enum Output {
    InPlace,
    Diff,
    Dir(PathBuf),
}

fn fix(common: &Common, paths: &[PathBuf], mode: &Output, context: usize) -> Result<u8, String> {
    let rules = setup(common)?;
    let files = discover(paths, &common.globs).map_err(|e| e.to_string())?;
    let results: Vec<(FileReport, Option<(String, String)>)> = files
        .par_iter()
        .map(|p| {
            let name = display(p);
            match read(p) {
                Ok(text) => {
                    let (mut report, fixed) = fix_source(&name, &text, &rules);
                    if let Err(e) = write_output(p, mode, &text, &fixed) {
                        report.error = Some(e);
                    }
                    (report, Some((text, fixed)))
                }
                Err(e) => (FileReport::io_error(&name, e), None),
            }
        })
        .collect();

    let mut out = String::new();
    if let Output::Diff = mode {
        for (r, texts) in &results {
            if let Some((old, new)) = texts {
                out.push_str(&unified_diff(old, new, &r.path, context));
            }
        }
    }
    let reports: Vec<FileReport> = results.into_iter().map(|(r, _)| r).collect();
    let summary = match common.format {
        Format::Json => json_report(&reports, true),
        Format::Text => {
            let mut s = String::new();
            for r in &reports {
                text_fix(r, common.verbose, &mut s);
            }
            s
        }
    };
    match (mode, common.format, &common.report) {
        // keep stdout a clean patch
        (Output::Diff, Format::Text, None) => {
            eprint!("{summary}");
            emit(common, &out)?;
        }
        (Output::Diff, _, _) => {
            print!("{out}");
            emit(common, &summary)?;
        }
        _ => emit(common, &summary)?,
    }
    Ok(if reports.iter().any(failed) {
        EXIT_FAILURE
    } else if reports.iter().any(|r| !r.residual.is_empty()) {
        EXIT_SMELLS
    } else {
        EXIT_CLEAN
    })
}

fn text_fix(r: &FileReport, verbose: bool, s: &mut String) {
    if let Some(e) = &r.error {
        s.push_str(&format!("{}: error: {e}\n", r.path));
    }
    if r.diagnostics.is_empty() && r.error.is_none() {
        if verbose {
            s.push_str(&format!("{}: clean\n", r.path));
        }
        return;
    }
    s.push_str(&format!(
        "{}: {} applied, {} rolled back, {} not fixable, {} residual\n",
        r.path,
        r.count(RepairStatus::Applied),
        r.count(RepairStatus::RolledBack),
        r.count(RepairStatus::NotFixable),
        r.residual.len()
    ));
    for o in r
        .repairs
        .iter()
        .filter(|o| o.status != RepairStatus::Applied || verbose)
    {
        let status = match o.status {
            RepairStatus::Applied => "applied",
            RepairStatus::RolledBack => "rolled back",
            RepairStatus::NotFixable => "not fixable",
        };
        s.push_str(&format!("  line {}: {}: {status}", o.line, o.rule));
        if let Some(why) = &o.reason {
            s.push_str(&format!(" ({why})"));
        }
        s.push('\n');
    }
}

fn write_output(path: &Path, mode: &Output, old: &str, new: &str) -> Result<(), String> {
    let target = match mode {
        Output::Diff => return Ok(()),
        Output::InPlace if old == new => return Ok(()),
        Output::InPlace => path.to_path_buf(),
        Output::Dir(dir) => {
            let rel: PathBuf = path
                .components()
                .filter(|c| matches!(c, std::path::Component::Normal(_)))
                .collect();
            dir.join(rel)
        }
    };
    if let Some(parent) = target.parent() {
        fs::create_dir_all(parent).map_err(|e| format!("{}: {e}", parent.display()))?;
    }
    fs::write(&target, new).map_err(|e| format!("{}: {e}", target.display()))
}

// ---- stats ------------------------------------------------------------------

fn stats(common: &Common, root: &Path) -> Result<u8, String> {
    let rules = setup(common)?;
    if !root.exists() {
        return Err(format!("{}: no such file or directory", root.display()));
    }
    let files = discover(&[root], &common.globs).map_err(|e| e.to_string())?;
    let per_file: Vec<Result<FileStats, String>> = files
        .par_iter()
        .map(|p| {
            read(p)
                .map(|t| FileStats::of(&t, &rules))
                .map_err(|e| format!("{}: {e}", p.display()))
        })
        .collect();
    let mut stats = CorpusStats::new();
    let mut unreadable = 0;
    for f in &per_file {
        match f {
            Ok(f) => stats.add(f),
            Err(e) => {
                eprintln!("dockslim: {e}");
                unreadable += 1;
            }
        }
    }
    let text = match common.format {
        Format::Text => stats.table(),
        Format::Json => {
            let mut v = serde_json::to_value(&stats).expect("stats serialize");
            v["unique_files"] = json!(stats.unique_files());
            v["schema_coverage_percent"] = json!(stats.schema_coverage());
            v["unreadable"] = json!(unreadable);
            let mut s = serde_json::to_string_pretty(&v).expect("JSON values serialize");
            s.push('\n');
            s
        }
    };
    emit(common, &text)?;
    Ok(if unreadable > 0 { EXIT_FAILURE } else { EXIT_CLEAN })
}

// ---- rules ------------------------------------------------------------------

fn repair_name(k: RepairKind) -> String {
    match k {
        RepairKind::Flag(f) => format!("add {f}"),
        RepairKind::Trailing => "append cleanup".into(),
        RepairKind::Adjacent => "remove file after use".into(),
        RepairKind::Before => "configure before".into(),
    }
}

fn print_rules(format: Format) {
    match format {
        Format::Json => {
            let v: Vec<Value> = RuleId::ALL
                .iter()
                .map(|r| {
                    json!({
                        "rule": r.name(),
                        "aliases": r.aliases(),
                        "description": r.description(),
                        "repair": repair_name(r.repair_kind()),
                    })
                })
                .collect();
            println!(
                "{}",
                serde_json::to_string_pretty(&v).expect("JSON values serialize")
            );
        }
        Format::Text => {
            for r in RuleId::ALL {
                let aliases = if r.aliases().is_empty() {
                    String::new()
                } else {
                    format!(" (alias {})", r.aliases().join(", "))
                };
                println!("{:<33} {}{aliases}", r.name(), r.description());
                println!("{:<33} repair: {}", "", repair_name(r.repair_kind()));
            }
        }
    }
}
