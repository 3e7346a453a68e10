//! The fourteen image-size smells: detection queries, fixability, and
//! (in [`repair`]) the transformations that remove them.
//!
//! Every rule is scoped to a single RUN instruction: a cleanup in a later
//! RUN does not shrink the layer that created the waste.

mod repair;

use std::fmt;
use std::str::FromStr;

use serde::{Serialize, Serializer};

use crate::enrich::UnifiedAst;
use crate::error::{Error, Result};
use crate::labels::Label;
use crate::query::{
    self, find_all, holds, normalize_path, Match, NodePattern, Polarity, Relation, Scope, ValuePred,
};
use crate::span::SourceSpan;
use crate::tree::{NodeId, NodeKind, Tree};

pub use repair::{
    fix, repair, repair_with, verify_or_rollback, Edit, FixResult, RepairOutcome, RepairStatus,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum RuleId {
    PipUseNoCacheDir,
    NpmCacheCleanUseForce,
    MkdirUsrSrcThenRemove,
    RmRecursiveAfterMktempD,
    TarSomethingRmTheSomething,
    ApkAddUseNoCache,
    AptGetInstallUseNoRec,
    AptGetInstallThenRemoveAptLists,
    GpgVerifyAscRmAsc,
    NpmCacheCleanAfterInstall,
    GemUpdateSystemRmRootGem,
    GemUpdateNoDocument,
    YumInstallRmVarCacheYum,
    YarnCacheCleanAfterInstall,
}

/// How a rule's repair edits the tree.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RepairKind {
    /// Insert this flag right after the subcommand word.
    Flag(&'static str),
    /// Append a cleanup as the last element of the RUN's `&&` chain.
    Trailing,
    /// Insert a cleanup right after the command that consumed the file.
    Adjacent,
    /// Insert a statement right before the offending command.
    Before,
}

struct RuleInfo {
    id: RuleId,
    name: &'static str,
    aliases: &'static [&'static str],
    description: &'static str,
    repair: RepairKind,
}

static RULES: [RuleInfo; 14] = [
    RuleInfo {
        id: RuleId::PipUseNoCacheDir,
        name: "pipUseNoCacheDir",
        aliases: &["pipUseCacheDir"],
        description: "pip install keeps its download cache in the image; pass --no-cache-dir",
        repair: RepairKind::Flag("--no-cache-dir"),
    },
    RuleInfo {
        id: RuleId::NpmCacheCleanUseForce,
        name: "npmCacheCleanUseForce",
        aliases: &[],
        description: "npm cache clean does nothing without --force",
        repair: RepairKind::Flag("--force"),
    },
    RuleInfo {
        id: RuleId::MkdirUsrSrcThenRemove,
        name: "mkdirUsrSrcThenRemove",
        aliases: &[],
        description: "directory created under /usr/src is never removed in this RUN",
        repair: RepairKind::Trailing,
    },
    RuleInfo {
        id: RuleId::RmRecursiveAfterMktempD,
        name: "rmRecursiveAfterMktempD",
        aliases: &["rmRecurisveAfterMktempD"],
        description: "temporary directory from mktemp -d is never removed in this RUN",
        repair: RepairKind::Trailing,
    },
    RuleInfo {
        id: RuleId::TarSomethingRmTheSomething,
        name: "tarSomethingRmTheSomething",
        aliases: &[],
        description: "archive is extracted but never removed in this RUN",
        repair: RepairKind::Adjacent,
    },
    RuleInfo {
        id: RuleId::ApkAddUseNoCache,
        name: "apkAddUseNoCache",
        aliases: &[],
        description: "apk add keeps the package index in the image; pass --no-cache",
        repair: RepairKind::Flag("--no-cache"),
    },
    RuleInfo {
        id: RuleId::AptGetInstallUseNoRec,
        name: "aptGetInstallUseNoRec",
        aliases: &[],
        description: "apt-get install pulls recommended packages; pass --no-install-recommends",
        repair: RepairKind::Flag("--no-install-recommends"),
    },
    RuleInfo {
        id: RuleId::AptGetInstallThenRemoveAptLists,
        name: "aptGetInstallThenRemoveAptLists",
        aliases: &["aptGetInstallRmAptLists"],
        description: "apt lists under /var/lib/apt/lists are left in the image after apt-get install",
        repair: RepairKind::Trailing,
    },
    RuleInfo {
        id: RuleId::GpgVerifyAscRmAsc,
        name: "gpgVerifyAscRmAsc",
        aliases: &[],
        description: "signature file checked with gpg --verify is never removed in this RUN",
        repair: RepairKind::Adjacent,
    },
    RuleInfo {
        id: RuleId::NpmCacheCleanAfterInstall,
        name: "npmCacheCleanAfterInstall",
        aliases: &[],
        description: "npm install leaves its cache in the image; run npm cache clean --force afterwards",
        repair: RepairKind::Trailing,
    },
    RuleInfo {
        id: RuleId::GemUpdateSystemRmRootGem,
        name: "gemUpdateSystemRmRootGem",
        aliases: &[],
        description: "gem update --system leaves /root/.gem in the image",
        repair: RepairKind::Trailing,
    },
    RuleInfo {
        id: RuleId::GemUpdateNoDocument,
        name: "gemUpdateNoDocument",
        aliases: &[],
        description: "gem update --system installs documentation; set gem: --no-document in gemrc",
        repair: RepairKind::Before,
    },
    RuleInfo {
        id: RuleId::YumInstallRmVarCacheYum,
        name: "yumInstallRmVarCacheYum",
        aliases: &[],
        description: "yum install leaves its cache under /var/cache/yum in the image",
        repair: RepairKind::Trailing,
    },
    RuleInfo {
        id: RuleId::YarnCacheCleanAfterInstall,
        name: "yarnCacheCleanAfterInstall",
        aliases: &[],
        description: "yarn install leaves its cache in the image; run yarn cache clean afterwards",
        repair: RepairKind::Trailing,
    },
];

impl RuleId {
    pub const ALL: [RuleId; 14] = [
        RuleId::PipUseNoCacheDir,
        RuleId::NpmCacheCleanUseForce,
        RuleId::MkdirUsrSrcThenRemove,
        RuleId::RmRecursiveAfterMktempD,
        RuleId::TarSomethingRmTheSomething,
        RuleId::ApkAddUseNoCache,
        RuleId::AptGetInstallUseNoRec,
        RuleId::AptGetInstallThenRemoveAptLists,
        RuleId::GpgVerifyAscRmAsc,
        RuleId::NpmCacheCleanAfterInstall,
        RuleId::GemUpdateSystemRmRootGem,
        RuleId::GemUpdateNoDocument,
        RuleId::YumInstallRmVarCacheYum,
        RuleId::YarnCacheCleanAfterInstall,
    ];

    fn info(self) -> &'static RuleInfo {
        let info = &RULES[self as usize];
        debug_assert_eq!(info.id, self);
        info
    }

    pub fn name(self) -> &'static str {
        self.info().name
    }

    pub fn aliases(self) -> &'static [&'static str] {
        self.info().aliases
    }

    pub fn description(self) -> &'static str {
        self.info().description
    }

    pub fn repair_kind(self) -> RepairKind {
        self.info().repair
    }

    /// Looks a rule up by name or alias, ignoring ASCII case.
    pub fn from_name(name: &str) -> Result<RuleId> {
        RULES
            .iter()
            .find(|r| {
                r.name.eq_ignore_ascii_case(name) || r.aliases.iter().any(|a| a.eq_ignore_ascii_case(name))
            })
            .map(|r| r.id)
            .ok_or_else(|| Error::UnknownRule(name.to_string()))
    }
}

impl fmt::Display for RuleId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for RuleId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        RuleId::from_name(s)
    }
}

impl Serialize for RuleId {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(self.name())
    }
}

/// Parses a comma-separated rule list; an empty list means every rule.
pub fn parse_rule_list(list: &str) -> Result<Vec<RuleId>> {
    let mut rules: Vec<RuleId> = list
        .split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(RuleId::from_name)
        .collect::<Result<_>>()?;
    if rules.is_empty() {
        return Ok(RuleId::ALL.to_vec());
    }
    rules.sort();
    rules.dedup();
    Ok(rules)
}

/// The edit a diagnostic calls for.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Plan {
    /// Add a flag right after this subcommand word.
    Flag(NodeId, &'static str),
    /// Shell text to append at the end of the RUN's `&&` chain.
    Append(String),
    /// Shell text to insert right after the anchor's statement.
    InsertAfter(String),
    /// Shell text to insert right before the anchor's statement.
    InsertBefore(String),
}

/// One smell occurrence.
#[derive(Clone, Debug)]
pub struct SmellDiagnostic {
    pub rule: RuleId,
    pub path: String,
    pub span: SourceSpan,
    pub anchor: Match,
    /// The enclosing DOCKER-RUN.
    pub run: NodeId,
    pub message: String,
    pub fixable: bool,
    /// Why the repair would be unsafe, when not fixable.
    pub reason: Option<String>,
    pub plan: Plan,
}

impl SmellDiagnostic {
    pub fn line(&self) -> usize {
        self.span.start_line
    }

    pub fn column(&self) -> usize {
        self.span.start_col
    }
}

/// A detection that was skipped because a path could not be resolved
/// statically.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Note {
    pub rule: RuleId,
    pub line: usize,
    pub column: usize,
    pub message: String,
}

#[derive(Clone, Debug, Default)]
pub struct Detection {
    pub diagnostics: Vec<SmellDiagnostic>,
    pub notes: Vec<Note>,
}

/// Detects the given rules; diagnostics come in document order.
pub fn detect(ast: &UnifiedAst, rules: &[RuleId]) -> Vec<SmellDiagnostic> {
    detect_with_notes(ast, rules).diagnostics
}

pub fn detect_with_notes(ast: &UnifiedAst, rules: &[RuleId]) -> Detection {
    let mut out = Detection::default();
    for &rule in rules {
        let mut found = Vec::new();
        detect_rule(ast, rule, &mut found, &mut out.notes);
        for (anchor, plan) in found {
            out.diagnostics.push(diagnostic(ast, rule, anchor, plan));
        }
    }
    out.diagnostics.sort_by_key(|d| (d.span.start, d.rule));
    out.notes.sort_by_key(|n| (n.line, n.column, n.rule));
    out
}

fn diagnostic(ast: &UnifiedAst, rule: RuleId, anchor: Match, plan: Plan) -> SmellDiagnostic {
    let tree = &ast.tree;
    let span = tree
        .nearest_span(anchor.node)
        .expect("detections anchor on parsed nodes");
    let run = tree
        .enclosing(anchor.node, NodeKind::DockerRun)
        .expect("rules are scoped to RUN instructions");
    let reason = fixability(ast, run, &anchor, &plan).err();
    SmellDiagnostic {
        rule,
        path: String::new(),
        span,
        run,
        message: rule.description().to_string(),
        fixable: reason.is_none(),
        reason,
        plan,
        anchor,
    }
}

// ---- fixability -------------------------------------------------------------

/// Kinds allowed as elements of a chain that cleanups may extend.
fn chain_element_ok(kind: NodeKind) -> bool {
    matches!(
        kind,
        NodeKind::ScSimpleCommand | NodeKind::ScPipeline | NodeKind::ScSubshell
    )
}

/// The top-level statement of a RUN's script, if it is a simple command,
/// pipeline, subshell or a pure `&&` chain of those.
pub(crate) fn extensible_top(tree: &Tree, script: NodeId) -> std::result::Result<NodeId, String> {
    let top = match tree.children(script) {
        [top] => *top,
        [] => return Err("RUN has no commands".into()),
        _ => return Err("top level of the RUN is not a single && chain".into()),
    };
    let kind = tree.kind(top);
    if kind == NodeKind::ScAnd {
        if tree.children(top).iter().all(|&c| chain_element_ok(tree.kind(c))) {
            return Ok(top);
        }
        return Err("the && chain contains a compound or unparsed statement".into());
    }
    if chain_element_ok(kind) {
        return Ok(top);
    }
    Err(match kind {
        NodeKind::ScSeq => "top level of the RUN uses `;` or newlines".into(),
        NodeKind::ScOr => "top level of the RUN uses `||`".into(),
        _ => format!("top level of the RUN is {}", kind.as_str()),
    })
}

/// The element of `top` (itself, or one of its `&&` children) holding
/// `node`.
pub(crate) fn chain_element(tree: &Tree, top: NodeId, node: NodeId) -> Option<NodeId> {
    if tree.kind(top) != NodeKind::ScAnd {
        return (top == node || tree.is_ancestor_of(top, node)).then_some(top);
    }
    std::iter::once(node)
        .chain(tree.ancestors(node))
        .find(|&n| tree.parent(n) == Some(top))
}

fn fixability(ast: &UnifiedAst, run: NodeId, anchor: &Match, plan: &Plan) -> std::result::Result<(), String> {
    let tree = &ast.tree;
    let text = match plan {
        Plan::Flag(..) => return Ok(()),
        Plan::Append(t) | Plan::InsertAfter(t) | Plan::InsertBefore(t) => t,
    };
    let script = ast
        .script_of(run)
        .ok_or_else(|| "exec-form RUN has no shell to extend".to_string())?;
    if tree.parent(script).map(|p| tree.kind(p)) == Some(NodeKind::DockerArray) && text.contains(['"', '\\'])
    {
        return Err("the cleanup would need JSON escaping inside an exec-form RUN".into());
    }
    let top = extensible_top(tree, script)?;
    if matches!(plan, Plan::InsertAfter(_) | Plan::InsertBefore(_)) {
        let element = chain_element(tree, top, anchor.node)
            .ok_or_else(|| "anchor is outside the top-level chain".to_string())?;
        let stmt = query::statement_of(tree, anchor.node);
        if tree.kind(element) != NodeKind::ScSimpleCommand || stmt != Some(element) {
            return Err("the command is nested inside a pipeline or subshell".into());
        }
    }
    Ok(())
}

// ---- detection --------------------------------------------------------------

const RECURSIVE: &str = "SC-RM-F-RECURSIVE";

/// An `rm` operand removing `target`. With `recursive`, the `rm` must
/// carry `-r`; parent directories only count for recursive removals.
fn rm_covering(target: &str, recursive: bool) -> NodePattern {
    let p = NodePattern::label("SC-RM-PATH").value(ValuePred::Covers {
        target: target.to_string(),
        recursive: Some(Label::of(RECURSIVE)),
    });
    if recursive {
        p.has(NodePattern::label(RECURSIVE))
    } else {
        p
    }
}

fn cleaned_after(ast: &UnifiedAst, anchor: &Match, cleanup: &NodePattern) -> bool {
    holds(&ast.tree, Relation::After, cleanup, anchor, anchor.scope)
}

/// Quotes a word for the shell: bare when safe, single-quoted otherwise.
pub fn shell_quote(word: &str) -> String {
    let safe = !word.is_empty()
        && word
            .bytes()
            .all(|b| b.is_ascii_alphanumeric() || b"_./:=@%+,-".contains(&b));
    if safe {
        word.to_string()
    } else {
        format!("'{}'", word.replace('\'', r"'\''"))
    }
}

/// Text that names the same file as `word` in a new command: its source
/// literal when that is a single plain token, else a quoted value.
fn reference_text(tree: &Tree, word: NodeId) -> String {
    let value = tree.value(word).unwrap_or_default();
    match tree.literal(word) {
        Some(lit) if !lit.contains(['\n', '\\', '$', '`']) && !lit.is_empty() => lit.to_string(),
        _ => shell_quote(value),
    }
}

fn note(ast: &UnifiedAst, rule: RuleId, node: NodeId, what: &str) -> Note {
    let span = ast.tree.nearest_span(node).expect("parsed nodes carry spans");
    Note {
        rule,
        line: span.start_line,
        column: span.start_col,
        message: format!("{what} holds a variable; {} not checked", rule.name()),
    }
}

fn detect_rule(ast: &UnifiedAst, rule: RuleId, out: &mut Vec<(Match, Plan)>, notes: &mut Vec<Note>) {
    let tree = &ast.tree;
    let root = ast.root();
    let all = |p: &NodePattern| find_all(tree, root, p);
    let flag =
        |sub: &'static str, flag: &'static str, canonical: &'static str, out: &mut Vec<(Match, Plan)>| {
            let p = NodePattern::label(sub).lacks(NodePattern::label(flag));
            out.extend(all(&p).into_iter().map(|m| {
                let at = m.node;
                (m, Plan::Flag(at, canonical))
            }));
        };
    let trailing = |anchor: NodePattern, cleanup: NodePattern, text: &str, out: &mut Vec<(Match, Plan)>| {
        let p = anchor.with(Relation::After, cleanup, Polarity::MustNotExist);
        out.extend(all(&p).into_iter().map(|m| (m, Plan::Append(text.to_string()))));
    };
    match rule {
        RuleId::PipUseNoCacheDir => flag("SC-PIP-INSTALL", "SC-PIP-F-NO-CACHE-DIR", "--no-cache-dir", out),
        RuleId::NpmCacheCleanUseForce => flag("SC-NPM-CACHE-CLEAN", "SC-NPM-F-FORCE", "--force", out),
        RuleId::ApkAddUseNoCache => flag("SC-APK-ADD", "SC-APK-F-NO-CACHE", "--no-cache", out),
        RuleId::AptGetInstallUseNoRec => flag(
            "SC-APT-GET-INSTALL",
            "SC-APT-GET-F-NO-INSTALL-RECOMMENDS",
            "--no-install-recommends",
            out,
        ),
        RuleId::AptGetInstallThenRemoveAptLists => trailing(
            NodePattern::label("SC-APT-GET-INSTALL"),
            rm_covering("/var/lib/apt/lists/*", true),
            "rm -rf /var/lib/apt/lists/*",
            out,
        ),
        RuleId::NpmCacheCleanAfterInstall => {
            let forced = NodePattern::label("SC-NPM-CACHE-CLEAN").has(NodePattern::label("SC-NPM-F-FORCE"));
            let p =
                NodePattern::label("SC-NPM-INSTALL").with(Relation::After, forced, Polarity::MustNotExist);
            let unforced =
                NodePattern::label("SC-NPM-CACHE-CLEAN").lacks(NodePattern::label("SC-NPM-F-FORCE"));
            for m in all(&p) {
                // a later clean that only misses --force gets the flag
                let start = |n: NodeId| tree.nearest_span(n).map_or(0, |s| s.start);
                let later = find_all(tree, m.scope, &unforced)
                    .into_iter()
                    .find(|c| start(c.node) > start(m.node));
                let plan = match later {
                    Some(c) => Plan::Flag(c.node, "--force"),
                    None => Plan::Append("npm cache clean --force".into()),
                };
                out.push((m, plan));
            }
        }
        RuleId::YarnCacheCleanAfterInstall => trailing(
            NodePattern::label("SC-YARN-INSTALL"),
            NodePattern::label("SC-YARN-CACHE-CLEAN"),
            "yarn cache clean",
            out,
        ),
        RuleId::GemUpdateSystemRmRootGem => trailing(
            NodePattern::label("SC-GEM-UPDATE").has(NodePattern::label("SC-GEM-F-SYSTEM")),
            rm_covering("/root/.gem", true),
            "rm -rf /root/.gem",
            out,
        ),
        RuleId::YumInstallRmVarCacheYum => {
            let p = NodePattern::label("SC-YUM-INSTALL").bind("cmd", NodePattern::label("SC-YUM"));
            for m in all(&p) {
                let name = tree.value(m.bindings["cmd"]).unwrap_or_default();
                let cache = if name.ends_with("dnf") {
                    "/var/cache/dnf"
                } else {
                    "/var/cache/yum"
                };
                if !cleaned_after(ast, &m, &rm_covering(cache, true)) {
                    out.push((m, Plan::Append(format!("rm -rf {cache}"))));
                }
            }
        }
        RuleId::MkdirUsrSrcThenRemove => {
            let p = NodePattern::label("SC-MKDIR-PATH").value(ValuePred::Prefix("/usr/src/".into()));
            for m in all(&p) {
                if tree.attrs(m.node).has_expansion {
                    notes.push(note(ast, rule, m.node, "mkdir path"));
                    continue;
                }
                let path = normalize_path(tree.value(m.node).unwrap_or_default());
                if path == "/usr/src" {
                    continue;
                }
                if !cleaned_after(ast, &m, &rm_covering(&path, true)) {
                    let text = format!("rm -rf {}", shell_quote(&path));
                    out.push((m, Plan::Append(text)));
                }
            }
        }
        RuleId::RmRecursiveAfterMktempD => {
            let p = NodePattern::label("SC-MKTEMP").has(NodePattern::label("SC-MKTEMP-D"));
            for m in all(&p) {
                let Some(var) = mktemp_variable(tree, m.node) else {
                    continue;
                };
                let target = format!("${var}");
                if !cleaned_after(ast, &m, &rm_covering(&target, true)) {
                    let in_json = ast
                        .script_of(m.scope)
                        .and_then(|s| tree.parent(s))
                        .is_some_and(|p| tree.kind(p) == NodeKind::DockerArray);
                    let text = if in_json {
                        format!("rm -rf ${var}")
                    } else {
                        format!("rm -rf \"${var}\"")
                    };
                    out.push((m, Plan::Append(text)));
                }
            }
        }
        RuleId::TarSomethingRmTheSomething => {
            let p = NodePattern::label("SC-TAR")
                .has(NodePattern::label("SC-TAR-EXTRACT"))
                .bind("archive", NodePattern::label("SC-TAR-ARCHIVE"));
            for m in all(&p) {
                let archive = m.bindings["archive"];
                file_consumer(ast, rule, m, archive, "archive", out, notes);
            }
        }
        RuleId::GpgVerifyAscRmAsc => {
            let p = NodePattern::label("SC-GPG")
                .has(NodePattern::label("SC-GPG-VERIFY"))
                .bind(
                    "asc",
                    NodePattern::label("SC-GPG-FILE").value(ValuePred::Suffix(".asc".into())),
                );
            for m in all(&p) {
                let asc = m.bindings["asc"];
                file_consumer(ast, rule, m, asc, "signature path", out, notes);
            }
        }
        RuleId::GemUpdateNoDocument => {
            if !gemrc_configured(tree, root) {
                let p = NodePattern::label("SC-GEM-UPDATE")
                    .has(NodePattern::label("SC-GEM-F-SYSTEM"))
                    .lacks(NodePattern::label("SC-GEM-F-NO-DOCUMENT"));
                let text = "echo 'gem: --no-document' >> /etc/gemrc";
                out.extend(all(&p).into_iter().map(|m| (m, Plan::InsertBefore(text.into()))));
            }
        }
    }
}

/// Shared by the tar and gpg rules: `file` is consumed by the anchor's
/// command and must be removed later in the same RUN.
fn file_consumer(
    ast: &UnifiedAst,
    rule: RuleId,
    m: Match,
    file: NodeId,
    what: &str,
    out: &mut Vec<(Match, Plan)>,
    notes: &mut Vec<Note>,
) {
    let tree = &ast.tree;
    let value = tree.value(file).unwrap_or_default();
    if value == "-" || value.is_empty() {
        return;
    }
    if tree.attrs(file).has_expansion {
        notes.push(note(ast, rule, file, what));
        return;
    }
    if !cleaned_after(ast, &m, &rm_covering(value, false)) {
        let text = format!("rm {}", reference_text(tree, file));
        out.push((m, Plan::InsertAfter(text)));
    }
}

/// The variable receiving the output of the `mktemp` command whose
/// command word is `word`: `DIR=$(mktemp -d)` or `export DIR=$(mktemp -d)`.
fn mktemp_variable(tree: &Tree, word: NodeId) -> Option<String> {
    let subst = tree.enclosing(word, NodeKind::ScCommandSubstitution)?;
    let holder = tree.parent(subst)?;
    if tree.kind(holder) != NodeKind::ScWord {
        return None;
    }
    let parent = tree.parent(holder)?;
    match tree.kind(parent) {
        NodeKind::ScAssignment => tree.value(parent).map(str::to_string),
        NodeKind::ScSimpleCommand => {
            let value = tree.value(holder)?;
            let (name, _) = value.split_once('=')?;
            let valid = name
                .bytes()
                .next()
                .is_some_and(|b| b.is_ascii_alphabetic() || b == b'_')
                && name.bytes().all(|b| b.is_ascii_alphanumeric() || b == b'_');
            valid.then(|| name.to_string())
        }
        _ => None,
    }
}

/// True if some `echo` anywhere in the file writes `--no-document` into a
/// gemrc file.
fn gemrc_configured(tree: &Tree, root: NodeId) -> bool {
    let writer = NodePattern::label("SC-ECHO")
        .scope(Scope::Root)
        .has(
            NodePattern::kind(NodeKind::ScWord)
                .scope(Scope::Root)
                .value(ValuePred::Contains("--no-document".into())),
        )
        .has(
            NodePattern::kind(NodeKind::ScRedirection).scope(Scope::Root).has(
                NodePattern::kind(NodeKind::ScWord)
                    .scope(Scope::Root)
                    .value(ValuePred::Suffix("gemrc".into())),
            ),
        );
    !find_all(tree, root, &writer).is_empty()
}
