//! Turning trees back into Dockerfile text.
//!
//! [`print_minimal`] copies every untouched node verbatim from the source
//! and only renders what repairs added, so the output differs from the
//! input exactly where the tree was edited.

use crate::enrich::UnifiedAst;
use crate::error::{Error, Result};
use crate::rules::shell_quote;
use crate::span::LineIndex;
use crate::tree::{NodeId, NodeKind, RunForm, Tree};

/// Prints `ast`, reusing original text for every unmodified node.
pub fn print_minimal(ast: &UnifiedAst) -> Result<String> {
    let p = Printer {
        tree: &ast.tree,
        source: Some((&ast.source, &ast.lines)),
        escape: ast.escape,
    };
    let mut out = String::with_capacity(ast.source.len() + 64);
    p.print(ast.root(), &mut out)?;
    Ok(out)
}

/// Renders the subtree `id` canonically, ignoring the source text.
pub fn render_full(tree: &Tree, id: NodeId) -> Result<String> {
    let p = Printer {
        tree,
        source: None,
        escape: '\\',
    };
    let mut out = String::new();
    p.canonical(id, &mut out)?;
    Ok(out)
}

struct Printer<'a> {
    tree: &'a Tree,
    source: Option<(&'a str, &'a LineIndex)>,
    escape: char,
}

impl Printer<'_> {
    fn print(&self, id: NodeId, out: &mut String) -> Result<()> {
        let Some((src, _)) = self.source else {
            return self.canonical(id, out);
        };
        let tree = self.tree;
        if let Some(span) = tree.span(id) {
            if !tree.is_dirty(id) {
                out.push_str(&src[span.start..span.end]);
                return Ok(());
            }
        }
        if tree.is_modified(id) || tree.children(id).is_empty() {
            return self.canonical(id, out);
        }
        match self.frame(id) {
            Some(frame) => self.interleave(id, frame, out),
            None => self.canonical(id, out),
        }
    }

    /// The source range a node occupies: its span, or for spanless nodes
    /// the hull of their spanned descendants.
    fn frame(&self, id: NodeId) -> Option<(usize, usize)> {
        if let Some(s) = self.tree.span(id) {
            return Some((s.start, s.end));
        }
        self.tree
            .children(id)
            .iter()
            .filter_map(|&c| self.frame(c))
            .reduce(|a, b| (a.0.min(b.0), a.1.max(b.1)))
    }

    /// Original gaps between spanned children, separators around new ones.
    fn interleave(&self, id: NodeId, (start, end): (usize, usize), out: &mut String) -> Result<()> {
        let (src, _) = self.source.expect("interleave needs the source");
        let mut cursor = start;
        let mut seen_spanned = false;
        let children = self.tree.children(id);
        for (i, &c) in children.iter().enumerate() {
            match self.frame(c) {
                Some((cs, ce)) if cs >= cursor => {
                    out.push_str(&src[cursor..cs]);
                    self.print(c, out)?;
                    cursor = ce;
                    seen_spanned = true;
                }
                Some(_) => {
                    return Err(Error::Unrenderable(format!(
                        "{} overlaps a sibling",
                        self.describe(c)
                    )))
                }
                None if seen_spanned => {
                    out.push_str(&self.separator(id));
                    self.print(c, out)?;
                }
                None => {
                    self.print(c, out)?;
                    if i + 1 < children.len() {
                        out.push_str(&self.separator(id));
                    }
                }
            }
        }
        out.push_str(&src[cursor..end.max(cursor)]);
        Ok(())
    }

    fn describe(&self, id: NodeId) -> String {
        self.tree.kind(id).as_str().to_string()
    }

    fn separator(&self, id: NodeId) -> String {
        match self.tree.kind(id) {
            NodeKind::ScSimpleCommand if self.tree.attrs(id).exec_array => ", ".into(),
            NodeKind::DockerArray => ", ".into(),
            NodeKind::ScAnd => self.and_separator(id),
            NodeKind::ScOr => " || ".into(),
            NodeKind::ScSeq => "; ".into(),
            NodeKind::ScPipeline => " | ".into(),
            NodeKind::ScScript | NodeKind::DockerFile => "\n".into(),
            _ => " ".into(),
        }
    }

    /// `&&` between chain elements, matching the chain's layout: inline,
    /// or one element per continued line.
    fn and_separator(&self, chain: NodeId) -> String {
        const INLINE: &str = " && ";
        let Some((src, lines)) = self.source else {
            return INLINE.into();
        };
        let tree = self.tree;
        let run = tree.enclosing(chain, NodeKind::DockerRun);
        let script = tree.enclosing(chain, NodeKind::ScScript);
        if script
            .and_then(|s| tree.parent(s))
            .is_some_and(|p| tree.kind(p) == NodeKind::DockerArray)
        {
            return INLINE.into();
        }
        let spans: Vec<(usize, usize)> = tree
            .children(chain)
            .iter()
            .filter_map(|&c| self.frame(c))
            .collect();
        let Some(&(first_start, _)) = spans.first() else {
            return INLINE.into();
        };
        let line = |offset: usize| lines.position(offset).0;
        let mut prev_line = match run.and_then(|r| tree.span(r)) {
            Some(s) => s.start_line,
            None => line(first_start),
        };
        let mut broken = 0;
        for &(s, e) in &spans {
            if line(s) > prev_line {
                broken += 1;
            }
            prev_line = line(e);
        }
        if broken == 0 || broken * 2 < spans.len() {
            return INLINE.into();
        }
        let reusable = spans
            .windows(2)
            .map(|w| &src[w[0].1..w[1].0])
            .rfind(|gap| gap.contains('\n') && !gap.contains('#') && gap.contains("&&"));
        if let Some(gap) = reusable {
            return gap.to_string();
        }
        let escape = match run.and_then(|r| tree.attrs(r).run_form) {
            Some(RunForm::Heredoc) => '\\',
            _ => self.escape,
        };
        let (last_start, _) = *spans.last().expect("non-empty");
        let line_start = lines.line_start(line(last_start)).unwrap_or(0);
        let indent: String = src[line_start..]
            .chars()
            .take_while(|c| *c == ' ' || *c == '\t')
            .collect();
        format!(" {escape}\n{indent}&& ")
    }

    fn join(&self, ids: &[NodeId], sep: &str, out: &mut String) -> Result<()> {
        for (i, &c) in ids.iter().enumerate() {
            if i > 0 {
                out.push_str(sep);
            }
            self.print(c, out)?;
        }
        Ok(())
    }

    fn canonical(&self, id: NodeId, out: &mut String) -> Result<()> {
        let tree = self.tree;
        let children = tree.children(id);
        let kind = tree.kind(id);
        match kind {
            NodeKind::ScWord | NodeKind::ScVariable | NodeKind::DockerString => {
                match (tree.literal(id), tree.value(id)) {
                    (Some(lit), _) => out.push_str(lit),
                    (None, Some(v)) if kind == NodeKind::DockerString => {
                        out.push_str(&serde_json::to_string(v).expect("strings serialize"))
                    }
                    (None, Some(v)) => out.push_str(&shell_quote(v)),
                    (None, None) => return Err(self.unrenderable(id)),
                }
            }
            NodeKind::ScRedirection => match tree.literal(id) {
                Some(lit) if !tree.is_dirty(id) || self.source.is_none() => out.push_str(lit),
                _ => {
                    out.push_str(tree.value(id).unwrap_or(">"));
                    out.push(' ');
                    self.join(children, " ", out)?;
                }
            },
            NodeKind::ScAssignment => {
                out.push_str(tree.value(id).ok_or_else(|| self.unrenderable(id))?);
                out.push('=');
                self.join(children, "", out)?;
            }
            NodeKind::ScSimpleCommand if tree.attrs(id).exec_array => self.join(children, ", ", out)?,
            NodeKind::ScSimpleCommand => self.join(children, " ", out)?,
            NodeKind::ScAnd => self.join(children, &self.separator(id), out)?,
            NodeKind::ScOr => self.join(children, " || ", out)?,
            NodeKind::ScSeq => self.join(children, "; ", out)?,
            NodeKind::ScPipeline => {
                if tree.value(id) == Some("!") {
                    out.push_str("! ");
                }
                self.join(children, " | ", out)?;
            }
            NodeKind::ScSubshell => {
                out.push('(');
                self.join(children, "; ", out)?;
                out.push(')');
            }
            NodeKind::ScCommandSubstitution => {
                let (open, close) = if tree.attrs(id).backtick {
                    ("`", "`")
                } else {
                    ("$(", ")")
                };
                out.push_str(open);
                self.join(children, "; ", out)?;
                out.push_str(close);
            }
            NodeKind::ScScript | NodeKind::DockerFile => self.join(children, "\n", out)?,
            NodeKind::DockerArray => {
                out.push('[');
                self.join(children, ", ", out)?;
                out.push(']');
            }
            _ => match tree.literal(id) {
                Some(lit) => out.push_str(lit),
                None if !children.is_empty() => self.join(children, " ", out)?,
                None => return Err(self.unrenderable(id)),
            },
        }
        Ok(())
    }

    fn unrenderable(&self, id: NodeId) -> Error {
        Error::Unrenderable(self.describe(id))
    }
}
