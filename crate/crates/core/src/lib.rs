//! Static analysis of Dockerfiles for image-size smells.
//!
//! The pipeline is: [`parse_dockerfile`] and the shell parser build one
//! unified tree ([`build_unified_ast`]), [`enrich`] labels command-line
//! roles, rules in [`rules`] query the tree through [`query`], repairs
//! edit it in place, and [`print_minimal`] reprints only what changed.

pub mod diff;
pub mod dockerfile;
pub mod enrich;
pub mod error;
pub mod labels;
pub mod printer;
pub mod query;
pub mod report;
pub mod rules;
pub mod shell;
pub mod span;
pub mod tree;

pub use diff::unified_diff;
pub use dockerfile::{decode_source, parse_dockerfile, DockerfileAst, Stage, Warning};
pub use enrich::{analyze, build_unified_ast, enrich, resolve_wrapper_words, resolve_wrappers, UnifiedAst};
pub use error::{Error, Result};
pub use labels::Label;
pub use printer::{print_minimal, render_full};
pub use query::{find_all, holds, Match, NodePattern, Polarity, Relation, Scope, ValuePred};
pub use report::{discover, fix_source, lint_source, CorpusStats, FileReport, FileStats, ParseStatus};
pub use rules::{
    detect, detect_with_notes, fix, parse_rule_list, repair, repair_with, verify_or_rollback, Edit,
    FixResult, Note, Plan, RepairOutcome, RepairStatus, RuleId, SmellDiagnostic,
};
pub use shell::{parse_shell, ShellAst};
pub use span::{span_text, LineIndex, SourceSpan};
pub use tree::{Attrs, NodeData, NodeId, NodeKind, QuoteStyle, RunForm, Tree};
