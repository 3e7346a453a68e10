//! Tree transformations that remove detected smells, with
//! verify-then-rollback.

use serde::Serialize;

use super::{chain_element, detect, extensible_top, Plan, RuleId, SmellDiagnostic};
use crate::enrich::{enrich, UnifiedAst};
use crate::shell::{parse_shell_with, Continuation};
use crate::tree::{NodeData, NodeId, NodeKind, QuoteStyle, Tree};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum RepairStatus {
    Applied,
    RolledBack,
    NotFixable,
}

/// One inserted piece of text.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Edit {
    pub line: usize,
    pub inserted: String,
}

#[derive(Clone, Debug)]
pub struct RepairOutcome {
    pub rule: RuleId,
    pub line: usize,
    pub status: RepairStatus,
    pub edits: Vec<Edit>,
    pub reason: Option<String>,
    undo: Option<Tree>,
}

impl RepairOutcome {
    fn new(d: &SmellDiagnostic, status: RepairStatus) -> Self {
        RepairOutcome {
            rule: d.rule,
            line: d.line(),
            status,
            edits: Vec::new(),
            reason: None,
            undo: None,
        }
    }
}

/// Applies the standard transformation for `d`. The result must go
/// through [`verify_or_rollback`].
pub fn repair(ast: &mut UnifiedAst, d: &SmellDiagnostic) -> RepairOutcome {
    repair_with(ast, d, apply_plan)
}

/// Like [`repair`] with a caller-supplied transformation.
pub fn repair_with<F>(ast: &mut UnifiedAst, d: &SmellDiagnostic, transform: F) -> RepairOutcome
where
    F: FnOnce(&mut Tree, &SmellDiagnostic, NodeId) -> Vec<Edit>,
{
    if !d.fixable {
        let mut o = RepairOutcome::new(d, RepairStatus::NotFixable);
        o.reason = d.reason.clone();
        return o;
    }
    let mut o = RepairOutcome::new(d, RepairStatus::Applied);
    if !still_detected(ast, d) {
        // an earlier repair already took care of it
        return o;
    }
    let snapshot = ast.tree.clone();
    let script = ast.script_of(d.run).unwrap_or(d.run);
    o.edits = transform(&mut ast.tree, d, script);
    enrich(ast);
    o.undo = Some(snapshot);
    o
}

/// Re-runs detection for `d`'s rule; if the anchor still matches, restores
/// the tree from before the repair.
pub fn verify_or_rollback(ast: &mut UnifiedAst, d: &SmellDiagnostic, mut o: RepairOutcome) -> RepairOutcome {
    let Some(snapshot) = o.undo.take() else {
        return o;
    };
    if o.status == RepairStatus::Applied && still_detected(ast, d) {
        ast.tree = snapshot;
        o.status = RepairStatus::RolledBack;
        o.reason = Some("still-detected".into());
        o.edits.clear();
    }
    o
}

fn still_detected(ast: &UnifiedAst, d: &SmellDiagnostic) -> bool {
    detect(ast, &[d.rule])
        .iter()
        .any(|x| x.run == d.run && x.anchor.node == d.anchor.node)
}

#[derive(Clone, Debug, Default)]
pub struct FixResult {
    pub diagnostics: Vec<SmellDiagnostic>,
    pub outcomes: Vec<RepairOutcome>,
}

impl FixResult {
    pub fn applied(&self) -> usize {
        self.outcomes
            .iter()
            .filter(|o| o.status == RepairStatus::Applied)
            .count()
    }
}

/// Detects and repairs every diagnostic for `rules`, in document order.
pub fn fix(ast: &mut UnifiedAst, rules: &[RuleId]) -> FixResult {
    let diagnostics = detect(ast, rules);
    let outcomes = diagnostics
        .iter()
        .map(|d| {
            let o = repair(ast, d);
            verify_or_rollback(ast, d, o)
        })
        .collect();
    FixResult {
        diagnostics,
        outcomes,
    }
}

// ---- standard transformations ----------------------------------------------

fn apply_plan(tree: &mut Tree, d: &SmellDiagnostic, script: NodeId) -> Vec<Edit> {
    let line = d.line();
    match &d.plan {
        Plan::Flag(at, flag) => {
            insert_flag(tree, *at, flag);
            vec![Edit {
                line,
                inserted: flag.to_string(),
            }]
        }
        Plan::Append(text) | Plan::InsertAfter(text) | Plan::InsertBefore(text) => {
            let Ok(top) = extensible_top(tree, script) else {
                return Vec::new();
            };
            let Some(stmt) = statement(tree, text) else {
                return Vec::new();
            };
            let element = chain_element(tree, top, d.anchor.node).unwrap_or(top);
            let at = match &d.plan {
                Plan::Append(_) => Position::End,
                Plan::InsertAfter(_) => Position::After(element),
                _ => Position::Before(element),
            };
            insert_statement(tree, top, stmt, at);
            vec![Edit {
                line,
                inserted: text.clone(),
            }]
        }
    }
}

/// Puts `flag` right after the subcommand word `anchor`.
fn insert_flag(tree: &mut Tree, anchor: NodeId, flag: &str) {
    let cmd = tree.parent(anchor).expect("subcommand words sit in a command");
    let index = tree.index_in_parent(anchor).unwrap_or(0) + 1;
    let exec = tree.attrs(cmd).exec_array;
    let mut data = NodeData::new(NodeKind::ScWord, None).with_value(flag);
    if exec {
        let literal = serde_json::to_string(flag).expect("strings serialize");
        let mut attrs = tree.attrs(anchor).clone();
        attrs.quote = Some(QuoteStyle::Double);
        attrs.has_expansion = false;
        attrs.has_glob = false;
        data = data.with_literal(literal).with_attrs(attrs);
    } else {
        data = data.with_literal(flag);
    }
    let word = tree.synthesize(data);
    tree.insert_child(cmd, index, word);
}

/// Parses a canonical one-statement text into `tree` as synthesized nodes.
fn statement(tree: &mut Tree, text: &str) -> Option<NodeId> {
    let parsed = parse_shell_with(text, Continuation::Shell);
    let root = parsed.root();
    let &[stmt] = parsed.tree.children(root) else {
        return None;
    };
    if parsed.tree.kind(stmt) != NodeKind::ScSimpleCommand {
        return None;
    }
    Some(tree.import_synthesized(&parsed.tree, stmt))
}

enum Position {
    End,
    After(NodeId),
    Before(NodeId),
}

fn insert_statement(tree: &mut Tree, top: NodeId, stmt: NodeId, at: Position) {
    let chain = if tree.kind(top) == NodeKind::ScAnd {
        top
    } else {
        let chain = tree.synthesize(NodeData::new(NodeKind::ScAnd, None));
        tree.replace(top, chain);
        tree.append_child(chain, top);
        chain
    };
    match at {
        Position::End => tree.append_child(chain, stmt),
        Position::After(e) => {
            let i = tree
                .index_in_parent(e)
                .map_or(tree.children(chain).len(), |i| i + 1);
            tree.insert_child(chain, i, stmt);
        }
        Position::Before(e) => {
            let i = tree.index_in_parent(e).unwrap_or(0);
            tree.insert_child(chain, i, stmt);
        }
    }
}
