//! The unified syntax tree shared by the Dockerfile and shell layers.
//!
//! Nodes live in an arena owned by [`Tree`] and are addressed by [`NodeId`].
//! Every node carries an optional span into the original file; nodes created
//! by a repair have no span and are always flagged as modified. Marking a
//! node modified makes it and all of its ancestors report a dirty subtree,
//! which is what the printer uses to decide between copying source bytes and
//! re-rendering.

use std::collections::BTreeSet;
use std::fmt;

use crate::error::Result;
use crate::labels::Label;
use crate::span::SourceSpan;

/// Node kinds for both grammars in one flat namespace.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum NodeKind {
    DockerFile,
    DockerFrom,
    DockerRun,
    DockerCopy,
    DockerAdd,
    DockerEnv,
    DockerArg,
    DockerWorkdir,
    DockerExpose,
    DockerEntrypoint,
    DockerCmd,
    DockerLabel,
    DockerUser,
    DockerVolume,
    DockerShell,
    DockerHealthcheck,
    DockerOnbuild,
    DockerStopsignal,
    DockerMaintainer,
    DockerComment,
    DockerUnknown,
    /// The instruction keyword token.
    DockerKeyword,
    /// An option such as `--mount=type=cache` or `--from=builder`.
    DockerFlag,
    /// Free-form instruction arguments, kept verbatim.
    DockerArgs,
    /// A JSON array in exec form.
    DockerArray,
    /// One JSON string inside an exec-form array.
    DockerString,
    /// The `<<EOF` marker line of a heredoc instruction.
    DockerHeredoc,

    ScScript,
    ScSimpleCommand,
    ScPipeline,
    ScAnd,
    ScOr,
    ScSeq,
    ScSubshell,
    ScCommandSubstitution,
    ScCompound,
    ScWord,
    ScVariable,
    ScAssignment,
    ScRedirection,
    ScUnparsed,
}

impl NodeKind {
    pub fn as_str(self) -> &'static str {
        use NodeKind::*;
        match self {
            DockerFile => "DOCKER-FILE",
            DockerFrom => "DOCKER-FROM",
            DockerRun => "DOCKER-RUN",
            DockerCopy => "DOCKER-COPY",
            DockerAdd => "DOCKER-ADD",
            DockerEnv => "DOCKER-ENV",
            DockerArg => "DOCKER-ARG",
            DockerWorkdir => "DOCKER-WORKDIR",
            DockerExpose => "DOCKER-EXPOSE",
            DockerEntrypoint => "DOCKER-ENTRYPOINT",
            DockerCmd => "DOCKER-CMD",
            DockerLabel => "DOCKER-LABEL",
            DockerUser => "DOCKER-USER",
            DockerVolume => "DOCKER-VOLUME",
            DockerShell => "DOCKER-SHELL",
            DockerHealthcheck => "DOCKER-HEALTHCHECK",
            DockerOnbuild => "DOCKER-ONBUILD",
            DockerStopsignal => "DOCKER-STOPSIGNAL",
            DockerMaintainer => "DOCKER-MAINTAINER",
            DockerComment => "DOCKER-COMMENT",
            DockerUnknown => "DOCKER-UNKNOWN",
            DockerKeyword => "DOCKER-KEYWORD",
            DockerFlag => "DOCKER-FLAG",
            DockerArgs => "DOCKER-ARGS",
            DockerArray => "DOCKER-ARRAY",
            DockerString => "DOCKER-STRING",
            DockerHeredoc => "DOCKER-HEREDOC",
            ScScript => "SC-SCRIPT",
            ScSimpleCommand => "SC-SIMPLE-COMMAND",
            ScPipeline => "SC-PIPELINE",
            ScAnd => "SC-AND",
            ScOr => "SC-OR",
            ScSeq => "SC-SEQ",
            ScSubshell => "SC-SUBSHELL",
            ScCommandSubstitution => "SC-COMMAND-SUBSTITUTION",
            ScCompound => "SC-COMPOUND",
            ScWord => "SC-WORD",
            ScVariable => "SC-VARIABLE",
            ScAssignment => "SC-ASSIGNMENT",
            ScRedirection => "SC-REDIRECTION",
            ScUnparsed => "SC-UNPARSED",
        }
    }

    pub fn is_shell(self) -> bool {
        self >= NodeKind::ScScript
    }

    /// Dockerfile instruction kinds (everything a DOCKER-FILE holds directly).
    pub fn is_instruction(self) -> bool {
        use NodeKind::*;
        matches!(
            self,
            DockerFrom
                | DockerRun
                | DockerCopy
                | DockerAdd
                | DockerEnv
                | DockerArg
                | DockerWorkdir
                | DockerExpose
                | DockerEntrypoint
                | DockerCmd
                | DockerLabel
                | DockerUser
                | DockerVolume
                | DockerShell
                | DockerHealthcheck
                | DockerOnbuild
                | DockerStopsignal
                | DockerMaintainer
                | DockerUnknown
        )
    }

    /// Shell nodes that count as one statement for before/after ordering.
    pub fn is_statement(self) -> bool {
        use NodeKind::*;
        matches!(self, ScSimpleCommand | ScSubshell | ScCompound | ScUnparsed)
    }

    /// Binary-operator list kinds, flattened to n-ary.
    pub fn is_list(self) -> bool {
        matches!(
            self,
            NodeKind::ScAnd | NodeKind::ScOr | NodeKind::ScSeq | NodeKind::ScPipeline
        )
    }
}

impl fmt::Display for NodeKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct NodeId(u32);

impl NodeId {
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

impl fmt::Display for NodeId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "#{}", self.0)
    }
}

/// How a shell word was quoted in the source.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum QuoteStyle {
    Bare,
    Single,
    Double,
    /// More than one quoting style, e.g. `foo"$bar"'baz'`.
    Mixed,
}

/// Form of a RUN-like instruction payload.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RunForm {
    Shell,
    Exec,
    Heredoc,
}

/// Kind-specific facts recorded by the parsers.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Attrs {
    pub quote: Option<QuoteStyle>,
    pub run_form: Option<RunForm>,
    /// The word holds a variable or command substitution.
    pub has_expansion: bool,
    /// The word holds an unquoted `*`, `?` or `[`.
    pub has_glob: bool,
    /// A simple command built from an exec-form JSON array.
    pub exec_array: bool,
    /// A command substitution written with backticks.
    pub backtick: bool,
}

#[derive(Clone, Debug)]
pub struct NodeData {
    pub kind: NodeKind,
    pub span: Option<SourceSpan>,
    /// Concrete source text for leaf tokens (words, keywords, unparsed
    /// regions); canonical text for synthesized leaves.
    pub literal: Option<String>,
    /// Cooked value: unquoted word text, assignment name, redirection
    /// operator, variable name.
    pub value: Option<String>,
    pub attrs: Attrs,
    annotations: BTreeSet<Label>,
    children: Vec<NodeId>,
    parent: Option<NodeId>,
    modified: bool,
    dirty: bool,
}

impl NodeData {
    pub fn new(kind: NodeKind, span: Option<SourceSpan>) -> Self {
        NodeData {
            kind,
            span,
            literal: None,
            value: None,
            attrs: Attrs::default(),
            annotations: BTreeSet::new(),
            children: Vec::new(),
            parent: None,
            modified: false,
            dirty: false,
        }
    }

    pub fn with_literal(mut self, literal: impl Into<String>) -> Self {
        self.literal = Some(literal.into());
        self
    }

    pub fn with_value(mut self, value: impl Into<String>) -> Self {
        self.value = Some(value.into());
        self
    }

    pub fn with_attrs(mut self, attrs: Attrs) -> Self {
        self.attrs = attrs;
        self
    }

    pub fn annotations(&self) -> impl Iterator<Item = Label> + '_ {
        self.annotations.iter().copied()
    }

    pub fn is_modified(&self) -> bool {
        self.modified
    }
}

/// Arena holding one file's unified tree.
#[derive(Clone, Debug)]
pub struct Tree {
    nodes: Vec<NodeData>,
    root: NodeId,
}

impl Tree {
    pub fn new(root: NodeData) -> Self {
        Tree {
            nodes: vec![root],
            root: NodeId(0),
        }
    }

    pub fn root(&self) -> NodeId {
        self.root
    }

    /// Adds a detached node to the arena.
    pub fn alloc(&mut self, data: NodeData) -> NodeId {
        let id = NodeId(self.nodes.len() as u32);
        self.nodes.push(data);
        id
    }

    /// Adds a node created by a repair: no span, flagged as modified.
    pub fn synthesize(&mut self, mut data: NodeData) -> NodeId {
        data.span = None;
        data.modified = true;
        data.dirty = true;
        self.alloc(data)
    }

    pub fn get(&self, id: NodeId) -> &NodeData {
        &self.nodes[id.index()]
    }

    pub fn get_mut(&mut self, id: NodeId) -> &mut NodeData {
        &mut self.nodes[id.index()]
    }

    pub fn kind(&self, id: NodeId) -> NodeKind {
        self.get(id).kind
    }

    pub fn span(&self, id: NodeId) -> Option<SourceSpan> {
        self.get(id).span
    }

    pub fn children(&self, id: NodeId) -> &[NodeId] {
        &self.get(id).children
    }

    pub fn parent(&self, id: NodeId) -> Option<NodeId> {
        self.get(id).parent
    }

    pub fn value(&self, id: NodeId) -> Option<&str> {
        self.get(id).value.as_deref()
    }

    pub fn literal(&self, id: NodeId) -> Option<&str> {
        self.get(id).literal.as_deref()
    }

    pub fn attrs(&self, id: NodeId) -> &Attrs {
        &self.get(id).attrs
    }

    pub fn append_child(&mut self, parent: NodeId, child: NodeId) {
        let at = self.get(parent).children.len();
        self.insert_child(parent, at, child);
    }

    /// Inserts `child` under `parent` at `index`, detaching it from any
    /// previous parent first.
    pub fn insert_child(&mut self, parent: NodeId, index: usize, child: NodeId) {
        assert_ne!(parent, child, "a node cannot be its own child");
        let index = match self.detach(child) {
            Some((old_parent, old_index)) if old_parent == parent && old_index < index => index - 1,
            _ => index,
        };
        self.nodes[parent.index()].children.insert(index, child);
        self.nodes[child.index()].parent = Some(parent);
        if self.get(child).dirty {
            self.propagate_dirty(parent);
        }
    }

    /// Replaces `old` by `new` in `old`'s parent. `old` ends up detached.
    pub fn replace(&mut self, old: NodeId, new: NodeId) {
        if let Some((parent, index)) = self.detach(old) {
            self.insert_child(parent, index, new);
        } else if old == self.root {
            self.detach(new);
            self.root = new;
        }
    }

    /// Removes `id` from its parent; returns the former parent and position.
    pub fn detach(&mut self, id: NodeId) -> Option<(NodeId, usize)> {
        let parent = self.nodes[id.index()].parent.take()?;
        let siblings = &mut self.nodes[parent.index()].children;
        let index = siblings
            .iter()
            .position(|&c| c == id)
            .expect("child missing from its parent's list");
        siblings.remove(index);
        Some((parent, index))
    }

    pub fn index_in_parent(&self, id: NodeId) -> Option<usize> {
        let parent = self.parent(id)?;
        self.children(parent).iter().position(|&c| c == id)
    }

    pub fn annotate(&mut self, id: NodeId, label: &str) -> Result<()> {
        let label = Label::new(label)?;
        self.add_label(id, label);
        Ok(())
    }

    pub fn add_label(&mut self, id: NodeId, label: Label) {
        self.nodes[id.index()].annotations.insert(label);
    }

    pub fn has_label(&self, id: NodeId, label: Label) -> bool {
        self.get(id).annotations.contains(&label)
    }

    pub fn mark_modified(&mut self, id: NodeId) {
        self.nodes[id.index()].modified = true;
        self.propagate_dirty(id);
    }

    fn propagate_dirty(&mut self, mut id: NodeId) {
        loop {
            self.nodes[id.index()].dirty = true;
            match self.nodes[id.index()].parent {
                Some(p) => id = p,
                None => break,
            }
        }
    }

    pub fn is_modified(&self, id: NodeId) -> bool {
        self.get(id).modified
    }

    /// True if `id` or anything below it has been modified.
    pub fn is_dirty(&self, id: NodeId) -> bool {
        self.get(id).dirty
    }

    pub fn ancestors(&self, id: NodeId) -> Ancestors<'_> {
        Ancestors {
            tree: self,
            next: self.parent(id),
        }
    }

    /// Nearest ancestor (or `id` itself) of the given kind.
    pub fn enclosing(&self, id: NodeId, kind: NodeKind) -> Option<NodeId> {
        std::iter::once(id)
            .chain(self.ancestors(id))
            .find(|&n| self.kind(n) == kind)
    }

    pub fn is_ancestor_of(&self, ancestor: NodeId, id: NodeId) -> bool {
        self.ancestors(id).any(|a| a == ancestor)
    }

    /// Pre-order traversal of the subtree rooted at `id`, `id` included.
    pub fn descendants(&self, id: NodeId) -> Descendants<'_> {
        Descendants {
            tree: self,
            stack: vec![id],
        }
    }

    /// Nearest ancestor-or-self that carries a span.
    pub fn nearest_span(&self, id: NodeId) -> Option<SourceSpan> {
        std::iter::once(id)
            .chain(self.ancestors(id))
            .find_map(|n| self.span(n))
    }

    /// Structural equality of two subtrees (kinds, values, quoting),
    /// ignoring spans, annotations and modification state.
    pub fn same_shape(&self, a: NodeId, other: &Tree, b: NodeId) -> bool {
        let (na, nb) = (self.get(a), other.get(b));
        na.kind == nb.kind
            && na.value == nb.value
            && na.attrs.quote == nb.attrs.quote
            && na.children.len() == nb.children.len()
            && na
                .children
                .iter()
                .zip(&nb.children)
                .all(|(&ca, &cb)| self.same_shape(ca, other, cb))
    }

    /// Copies the subtree `id` of `other` into this arena as synthesized
    /// nodes (no spans, modified). Returns the detached copy.
    pub fn import_synthesized(&mut self, other: &Tree, id: NodeId) -> NodeId {
        let src = other.get(id);
        let mut data = NodeData::new(src.kind, None);
        data.literal = src.literal.clone();
        data.value = src.value.clone();
        data.attrs = src.attrs.clone();
        data.annotations = src.annotations.clone();
        let copy = self.synthesize(data);
        for &c in other.children(id) {
            let child = self.import_synthesized(other, c);
            self.append_child(copy, child);
        }
        copy
    }

    /// Number of arena slots, including detached nodes.
    pub fn capacity(&self) -> usize {
        self.nodes.len()
    }
}

pub struct Ancestors<'a> {
    tree: &'a Tree,
    next: Option<NodeId>,
}

impl Iterator for Ancestors<'_> {
    type Item = NodeId;

    fn next(&mut self) -> Option<NodeId> {
        let id = self.next?;
        self.next = self.tree.parent(id);
        Some(id)
    }
}

pub struct Descendants<'a> {
    tree: &'a Tree,
    stack: Vec<NodeId>,
}

impl Iterator for Descendants<'_> {
    type Item = NodeId;

    fn next(&mut self) -> Option<NodeId> {
        let id = self.stack.pop()?;
        self.stack.extend(self.tree.children(id).iter().rev().copied());
        Some(id)
    }
}
