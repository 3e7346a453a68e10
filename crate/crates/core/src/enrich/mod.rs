//! Unified AST construction and semantic annotation.
//!
//! [`build_unified_ast`] hangs the parsed shell script of every RUN
//! instruction under its `DOCKER-RUN` node, in file coordinates.
//! [`enrich`] then walks each simple command against the declarative
//! [`schema`] tables and labels command, subcommand, flag and argument
//! words.

pub mod schema;

use crate::dockerfile::{parse_dockerfile, DockerfileAst, Warning};
use crate::labels::Label;
use crate::shell::{parse_region, Continuation};
use crate::span::LineIndex;
use crate::tree::{Attrs, NodeData, NodeId, NodeKind, QuoteStyle, RunForm, Tree};
use schema::{CommandSchema, FlagSpec, SubSpec, WrapperPolicy};

/// Shells whose `-c` argument is parsed as a script in exec-form RUN.
const SHELLS: &[&str] = &["sh", "bash", "/bin/sh", "/bin/bash"];

/// A Dockerfile with its RUN payloads parsed and (after [`enrich`])
/// annotated.
#[derive(Clone, Debug)]
pub struct UnifiedAst {
    pub tree: Tree,
    pub source: String,
    pub lines: LineIndex,
    pub escape: char,
    pub warnings: Vec<Warning>,
}

impl UnifiedAst {
    pub fn root(&self) -> NodeId {
        self.tree.root()
    }

    /// RUN instructions in source order.
    pub fn runs(&self) -> Vec<NodeId> {
        self.tree
            .children(self.tree.root())
            .iter()
            .copied()
            .filter(|&n| self.tree.kind(n) == NodeKind::DockerRun)
            .collect()
    }

    /// The `SC-SCRIPT` under a RUN, if its payload was parsed as shell.
    pub fn script_of(&self, run: NodeId) -> Option<NodeId> {
        self.tree
            .descendants(run)
            .find(|&n| self.tree.kind(n) == NodeKind::ScScript)
    }

    /// True if any shell region was left unparsed.
    pub fn has_unparsed(&self) -> bool {
        self.tree
            .descendants(self.root())
            .any(|n| self.tree.kind(n) == NodeKind::ScUnparsed)
    }

    /// True when the file has content but no recognizable instruction.
    pub fn is_unparseable(&self) -> bool {
        let mut instructions = self
            .tree
            .children(self.root())
            .iter()
            .filter(|&&n| self.tree.kind(n).is_instruction())
            .peekable();
        instructions.peek().is_some() && instructions.all(|&n| self.tree.kind(n) == NodeKind::DockerUnknown)
    }
}

/// Parses, embeds and enriches in one go.
pub fn analyze(text: &str) -> UnifiedAst {
    let mut ast = build_unified_ast(parse_dockerfile(text), text);
    enrich(&mut ast);
    ast
}

/// Embeds a shell parse under every RUN instruction.
pub fn build_unified_ast(docker: DockerfileAst, text: &str) -> UnifiedAst {
    let DockerfileAst {
        mut tree,
        lines,
        escape,
        mut warnings,
    } = docker;
    let runs: Vec<_> = tree
        .children(tree.root())
        .iter()
        .copied()
        .filter(|&n| tree.kind(n) == NodeKind::DockerRun)
        .collect();
    for run in runs {
        let form = tree.attrs(run).run_form;
        let args = tree
            .children(run)
            .iter()
            .copied()
            .find(|&c| matches!(tree.kind(c), NodeKind::DockerArgs | NodeKind::DockerArray));
        let Some(args) = args else { continue };
        let span = tree.span(args).expect("parsed nodes have spans");
        match (form, tree.kind(args)) {
            (Some(RunForm::Exec), NodeKind::DockerArray) => {
                embed_exec(&mut tree, text, &lines, args, &mut warnings);
            }
            (Some(RunForm::Heredoc), _) => {
                let (script, w) =
                    parse_region(&mut tree, text, &lines, span.start, span.end, Continuation::Shell);
                warnings.extend(w);
                tree.replace(args, script);
            }
            _ => {
                let mode = Continuation::Docker(escape);
                let (script, w) = parse_region(&mut tree, text, &lines, span.start, span.end, mode);
                warnings.extend(w);
                tree.replace(args, script);
            }
        }
    }
    UnifiedAst {
        tree,
        source: text.to_string(),
        lines,
        escape,
        warnings,
    }
}

fn embed_exec(tree: &mut Tree, text: &str, lines: &LineIndex, array: NodeId, warnings: &mut Vec<Warning>) {
    let strings: Vec<NodeId> = tree.children(array).to_vec();
    if strings.is_empty() {
        return;
    }
    let values: Vec<String> = strings
        .iter()
        .map(|&s| tree.value(s).unwrap_or_default().to_string())
        .collect();
    if strings.len() == 3 && SHELLS.contains(&values[0].as_str()) && values[1] == "-c" {
        let span = tree.span(strings[2]).expect("parsed nodes have spans");
        let (start, end) = (span.start + 1, span.end - 1);
        let script = if text[start..end] == values[2] {
            let (script, w) = parse_region(tree, text, lines, start, end, Continuation::Shell);
            warnings.extend(w);
            script
        } else {
            // JSON escapes make file offsets and shell offsets disagree.
            warnings.push(Warning::new(
                "exec-form payload with JSON escapes left unparsed",
                Some(span),
            ));
            let script = tree.alloc(NodeData::new(NodeKind::ScScript, Some(lines.span(start, end))));
            let unparsed = tree.alloc(
                NodeData::new(NodeKind::ScUnparsed, Some(lines.span(start, end)))
                    .with_literal(&text[start..end]),
            );
            tree.append_child(script, unparsed);
            script
        };
        tree.replace(strings[2], script);
        return;
    }
    let first = tree.span(strings[0]).unwrap();
    let last = tree.span(*strings.last().unwrap()).unwrap();
    let cmd = tree.alloc(
        NodeData::new(NodeKind::ScSimpleCommand, Some(lines.span(first.start, last.end))).with_attrs(Attrs {
            exec_array: true,
            ..Attrs::default()
        }),
    );
    for (s, value) in strings.into_iter().zip(values) {
        let span = tree.span(s).unwrap();
        tree.detach(s);
        let word = tree.alloc(
            NodeData::new(NodeKind::ScWord, Some(span))
                .with_literal(&text[span.start..span.end])
                .with_value(value)
                .with_attrs(Attrs {
                    quote: Some(QuoteStyle::Double),
                    ..Attrs::default()
                }),
        );
        tree.append_child(cmd, word);
    }
    tree.append_child(array, cmd);
}

/// Labels every simple command that matches a schema. Idempotent.
pub fn enrich(ast: &mut UnifiedAst) {
    let commands: Vec<NodeId> = ast
        .tree
        .descendants(ast.root())
        .filter(|&n| ast.tree.kind(n) == NodeKind::ScSimpleCommand)
        .collect();
    for cmd in commands {
        enrich_command(&mut ast.tree, cmd);
    }
}

fn label(tree: &mut Tree, id: NodeId, name: &'static str) {
    tree.add_label(id, Label::of(name));
}

/// The word children of a simple command (assignments and redirections
/// excluded).
pub fn command_words(tree: &Tree, cmd: NodeId) -> Vec<NodeId> {
    tree.children(cmd)
        .iter()
        .copied()
        .filter(|&c| tree.kind(c) == NodeKind::ScWord)
        .collect()
}

fn basename(word: &str) -> &str {
    word.rsplit('/').next().unwrap_or(word)
}

fn is_assignment_word(word: &str) -> bool {
    match word.split_once('=') {
        Some((name, _)) => {
            let mut bytes = name.bytes();
            bytes.next().is_some_and(|b| b.is_ascii_alphabetic() || b == b'_')
                && bytes.all(|b| b.is_ascii_alphanumeric() || b == b'_')
        }
        None => false,
    }
}

/// Index of the effective command among `words` once wrappers such as
/// `sudo` and `env` (with their options and assignments) are skipped.
/// `None` when nothing is left.
pub fn resolve_wrapper_words(words: &[&str]) -> Option<usize> {
    resolve_with_wrappers(words).0
}

fn resolve_with_wrappers(words: &[&str]) -> (Option<usize>, Vec<(usize, &'static str)>) {
    let mut wrappers = Vec::new();
    let mut i = 0;
    while i < words.len() {
        let Some(policy) = WrapperPolicy::find(basename(words[i])) else {
            return (Some(i), wrappers);
        };
        wrappers.push((i, policy.label));
        i += 1;
        while i < words.len() {
            let w = words[i];
            if w == "--" {
                i += 1;
                break;
            }
            if policy.terminal_options.contains(&w) {
                return (None, wrappers);
            }
            if w.starts_with('-') && w.len() > 1 {
                let numeric = w[1..].bytes().all(|b| b.is_ascii_digit());
                i += if policy.valued_options.contains(&w) && !(numeric && policy.numeric_options) {
                    2
                } else {
                    1
                };
                continue;
            }
            if policy.skips_assignments && is_assignment_word(w) {
                i += 1;
                continue;
            }
            break;
        }
    }
    (None, wrappers)
}

/// [`resolve_wrapper_words`] over the words of a simple command node.
pub fn resolve_wrappers(tree: &Tree, cmd: NodeId) -> Option<usize> {
    let words = command_words(tree, cmd);
    let values: Vec<&str> = words.iter().map(|&w| tree.value(w).unwrap_or_default()).collect();
    resolve_wrapper_words(&values)
}

struct Walk<'a> {
    schema: &'static CommandSchema,
    subs: Vec<&'static SubSpec>,
    tree: &'a mut Tree,
}

impl Walk<'_> {
    fn lookup_long(&self, name: &str) -> Option<&'static FlagSpec> {
        self.flag_tables()
            .find_map(|t| t.iter().find(|f| f.long.contains(&name)))
    }

    fn lookup_short(&self, c: char) -> Option<&'static FlagSpec> {
        self.flag_tables()
            .find_map(|t| t.iter().find(|f| f.short.contains(&c)))
    }

    fn flag_tables(&self) -> impl Iterator<Item = &'static [FlagSpec]> + '_ {
        self.subs
            .iter()
            .rev()
            .map(|s| s.flags)
            .chain(std::iter::once(self.schema.flags))
    }

    fn next_subcommands(&self) -> &'static [SubSpec] {
        match self.subs.last() {
            Some(s) => s.subcommands,
            None => self.schema.subcommands,
        }
    }

    fn positional_role(&self) -> Option<&'static str> {
        match self.subs.last() {
            Some(s) => s.positional,
            None => self.schema.positional,
        }
    }

    /// Labels the flags of a short cluster (without its dash) and returns
    /// the value roles of the following words it consumes. In a dashed
    /// cluster a valued flag takes the rest of the cluster when there is
    /// any (`-ofile`); in tar's dash-less form values always come from the
    /// following words, in order.
    fn cluster(&mut self, word: NodeId, chars: &str, bare: bool) -> Vec<Option<&'static str>> {
        let mut values = Vec::new();
        for (i, c) in chars.char_indices() {
            let Some(f) = self.lookup_short(c) else { continue };
            label(self.tree, word, f.label);
            if f.takes_value {
                if !bare && i + c.len_utf8() < chars.len() {
                    if let Some(v) = f.value_label {
                        label(self.tree, word, v);
                    }
                    break;
                }
                values.push(f.value_label);
            }
        }
        values
    }
}

fn enrich_command(tree: &mut Tree, cmd: NodeId) {
    let words = command_words(tree, cmd);
    let values: Vec<String> = words
        .iter()
        .map(|&w| tree.value(w).unwrap_or_default().to_string())
        .collect();
    let refs: Vec<&str> = values.iter().map(String::as_str).collect();
    let (index, wrappers) = resolve_with_wrappers(&refs);
    for (i, wrapper_label) in wrappers {
        if !tree.attrs(words[i]).has_expansion {
            label(tree, words[i], wrapper_label);
        }
    }
    let Some(mut index) = index else { return };
    if tree.attrs(words[index]).has_expansion {
        return;
    }
    // `python -m pip ...` runs pip.
    let name = basename(&values[index]);
    if name.starts_with("python")
        && name[6..].bytes().all(|b| b.is_ascii_digit() || b == b'.')
        && refs.get(index + 1) == Some(&"-m")
        && refs.get(index + 2).is_some_and(|m| m.starts_with("pip"))
    {
        index += 2;
    }
    let Some(schema) = CommandSchema::find(basename(&values[index])) else {
        return;
    };
    label(tree, words[index], schema.label);
    if schema.label == "SC-NPX" {
        return;
    }
    let mut walk = Walk {
        schema,
        subs: Vec::new(),
        tree,
    };
    let mut choosing_sub = !schema.subcommands.is_empty();
    let mut saw_positional = false;
    let mut flags_done = false;
    let mut pending: Vec<Option<&'static str>> = Vec::new();
    let mut first_arg = true;
    for (k, &w) in words.iter().enumerate().skip(index + 1) {
        let text = values[k].as_str();
        let was_first = std::mem::replace(&mut first_arg, false);
        if !pending.is_empty() {
            if let Some(v) = pending.remove(0) {
                label(walk.tree, w, v);
            }
            continue;
        }
        if !flags_done && text == "--" {
            flags_done = true;
            continue;
        }
        if !flags_done && text.starts_with("--") {
            let (name, inline) = match text.split_once('=') {
                Some((n, _)) => (n, true),
                None => (text, false),
            };
            if let Some(f) = walk.lookup_long(name) {
                label(walk.tree, w, f.label);
                if f.takes_value {
                    if inline {
                        if let Some(v) = f.value_label {
                            label(walk.tree, w, v);
                        }
                    } else {
                        pending.push(f.value_label);
                    }
                }
            }
            continue;
        }
        if !flags_done && text.starts_with('-') && text.len() > 1 {
            let rest = &text[1..];
            if schema.clustered_short {
                pending.extend(walk.cluster(w, rest, false));
            } else if let Some(f) = rest
                .chars()
                .next()
                .filter(|_| rest.chars().count() == 1)
                .and_then(|c| walk.lookup_short(c))
            {
                label(walk.tree, w, f.label);
                if f.takes_value {
                    pending.push(f.value_label);
                }
            }
            continue;
        }
        if was_first
            && schema.bare_cluster
            && !text.is_empty()
            && text.chars().all(|c| walk.lookup_short(c).is_some())
        {
            pending.extend(walk.cluster(w, text, true));
            continue;
        }
        if choosing_sub {
            if let Some(sub) = walk.next_subcommands().iter().find(|s| s.names.contains(&text)) {
                label(walk.tree, w, sub.label);
                walk.subs.push(sub);
                choosing_sub = !sub.subcommands.is_empty();
                continue;
            }
            choosing_sub = false;
        }
        saw_positional = true;
        if let Some(role) = walk.positional_role() {
            label(walk.tree, w, role);
        }
    }
    if walk.subs.is_empty() && !saw_positional {
        if let Some(default) = schema.default_subcommand {
            label(walk.tree, words[index], default);
        }
    }
}
