//! Dockerfile parser producing `DOCKER-*` nodes.
//!
//! The parser is line oriented, mirroring how Docker itself reads a file:
//! parser directives at the very top, comment lines, and instructions that
//! continue over lines ending in the escape character. Lines made only of
//! whitespace or comments inside a continued instruction are skipped, as
//! Docker does. Nothing is ever rejected: unknown keywords become
//! `DOCKER-UNKNOWN` nodes. All text between nodes (blank lines, newlines,
//! continuation markers) stays in the source and is re-emitted verbatim by
//! the printer.

use crate::span::{LineIndex, SourceSpan};
use crate::tree::{Attrs, NodeData, NodeId, NodeKind, RunForm, Tree};

/// A non-fatal parse problem.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Warning {
    pub message: String,
    pub span: Option<SourceSpan>,
}

impl Warning {
    pub fn new(message: impl Into<String>, span: Option<SourceSpan>) -> Self {
        Warning {
            message: message.into(),
            span,
        }
    }
}

/// A parsed Dockerfile. Instructions are the children of the root
/// `DOCKER-FILE` node, in source order, interleaved with comments.
#[derive(Clone, Debug)]
pub struct DockerfileAst {
    pub tree: Tree,
    pub lines: LineIndex,
    /// The escape (line continuation) character in effect.
    pub escape: char,
    pub warnings: Vec<Warning>,
}

/// Instructions between one `FROM` and the next.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Stage {
    pub from: NodeId,
    pub instructions: Vec<NodeId>,
}

impl DockerfileAst {
    pub fn root(&self) -> NodeId {
        self.tree.root()
    }

    /// Instruction nodes in source order (comments excluded).
    pub fn instructions(&self) -> Vec<NodeId> {
        self.tree
            .children(self.tree.root())
            .iter()
            .copied()
            .filter(|&n| self.tree.kind(n).is_instruction())
            .collect()
    }

    /// Partition of the instructions by `FROM`. Instructions before the
    /// first `FROM` (global `ARG`s) belong to no stage.
    pub fn stages(&self) -> Vec<Stage> {
        let mut stages: Vec<Stage> = Vec::new();
        for id in self.instructions() {
            if self.tree.kind(id) == NodeKind::DockerFrom {
                stages.push(Stage {
                    from: id,
                    instructions: vec![id],
                });
            } else if let Some(stage) = stages.last_mut() {
                stage.instructions.push(id);
            }
        }
        stages
    }

    /// True when the file has content but not a single recognizable
    /// instruction.
    pub fn is_unparseable(&self) -> bool {
        let instructions = self.instructions();
        !instructions.is_empty()
            && instructions
                .iter()
                .all(|&i| self.tree.kind(i) == NodeKind::DockerUnknown)
    }
}

/// Decodes raw file bytes, replacing invalid UTF-8 and reporting it.
pub fn decode_source(bytes: &[u8]) -> (String, Option<Warning>) {
    match String::from_utf8_lossy(bytes) {
        std::borrow::Cow::Borrowed(s) => (s.to_string(), None),
        std::borrow::Cow::Owned(s) => (
            s,
            Some(Warning::new(
                "file is not valid UTF-8; invalid bytes were replaced",
                None,
            )),
        ),
    }
}

#[derive(Clone, Copy, Debug)]
struct Line {
    start: usize,
    /// End of the content, excluding `\n` and a preceding `\r`.
    end: usize,
}

fn split_lines(text: &str) -> Vec<Line> {
    let mut lines = Vec::new();
    let mut start = 0;
    let bytes = text.as_bytes();
    while start <= text.len() {
        let nl = text[start..].find('\n').map(|i| start + i);
        let raw_end = nl.unwrap_or(text.len());
        let end = if raw_end > start && bytes[raw_end - 1] == b'\r' {
            raw_end - 1
        } else {
            raw_end
        };
        lines.push(Line { start, end });
        match nl {
            Some(i) => start = i + 1,
            None => break,
        }
    }
    lines
}

fn keyword_kind(word: &str) -> Option<NodeKind> {
    use NodeKind::*;
    Some(match word.to_ascii_uppercase().as_str() {
        "FROM" => DockerFrom,
        "RUN" => DockerRun,
        "COPY" => DockerCopy,
        "ADD" => DockerAdd,
        "ENV" => DockerEnv,
        "ARG" => DockerArg,
        "WORKDIR" => DockerWorkdir,
        "EXPOSE" => DockerExpose,
        "ENTRYPOINT" => DockerEntrypoint,
        "CMD" => DockerCmd,
        "LABEL" => DockerLabel,
        "USER" => DockerUser,
        "VOLUME" => DockerVolume,
        "SHELL" => DockerShell,
        "HEALTHCHECK" => DockerHealthcheck,
        "ONBUILD" => DockerOnbuild,
        "STOPSIGNAL" => DockerStopsignal,
        "MAINTAINER" => DockerMaintainer,
        _ => return None,
    })
}

/// Length of a line-continuation sequence at `pos`: the escape character,
/// optional trailing blanks, a newline, then any blank or comment-only
/// lines (which Docker drops). Returns 0 when there is none. An escape
/// followed only by blanks up to `end` also counts.
pub(crate) fn continuation_len(text: &str, pos: usize, end: usize, escape: char) -> usize {
    let bytes = text.as_bytes();
    if pos >= end || !text[pos..].starts_with(escape) {
        return 0;
    }
    let mut i = pos + escape.len_utf8();
    while i < end && matches!(bytes[i], b' ' | b'\t' | b'\r') {
        i += 1;
    }
    if i >= end {
        return i - pos;
    }
    if bytes[i] != b'\n' {
        return 0;
    }
    i += 1;
    // Drop following blank and comment-only lines, but never the last line
    // of the region: that one carries the rest of the instruction.
    loop {
        let line_end = text[i..end].find('\n').map(|k| i + k);
        let Some(line_end) = line_end else { break };
        let content = text[i..line_end].trim();
        if content.is_empty() || content.starts_with('#') {
            i = line_end + 1;
        } else {
            break;
        }
    }
    i - pos
}

fn is_blank_or_comment(text: &str, line: Line) -> bool {
    let t = text[line.start..line.end].trim();
    t.is_empty() || t.starts_with('#')
}

fn ends_with_escape(text: &str, line: Line, escape: char) -> bool {
    text[line.start..line.end]
        .trim_end_matches([' ', '\t'])
        .ends_with(escape)
}

fn parse_directive(comment: &str) -> Option<(String, String)> {
    let body = comment.strip_prefix('#')?.trim();
    let (name, value) = body.split_once('=')?;
    let name = name.trim();
    if name.is_empty() || !name.chars().all(|c| c.is_ascii_alphanumeric()) {
        return None;
    }
    Some((name.to_ascii_lowercase(), value.trim().to_string()))
}

/// Heredoc delimiters introduced on an instruction line, in order.
fn heredoc_delimiters(args: &str) -> Vec<(String, bool)> {
    let bytes = args.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    let mut quote: Option<u8> = None;
    while i < bytes.len() {
        let b = bytes[i];
        match quote {
            Some(q) => {
                if b == q {
                    quote = None;
                }
                i += 1;
                continue;
            }
            None if b == b'\'' || b == b'"' => {
                quote = Some(b);
                i += 1;
                continue;
            }
            None => {}
        }
        if b == b'<' && bytes.get(i + 1) == Some(&b'<') && bytes.get(i + 2) != Some(&b'<') {
            let mut j = i + 2;
            let strip_tabs = bytes.get(j) == Some(&b'-');
            if strip_tabs {
                j += 1;
            }
            let q = match bytes.get(j) {
                Some(&c @ (b'\'' | b'"')) => {
                    j += 1;
                    Some(c)
                }
                _ => None,
            };
            let name_start = j;
            while j < bytes.len() && (bytes[j].is_ascii_alphanumeric() || bytes[j] == b'_') {
                j += 1;
            }
            let name = &args[name_start..j];
            let closed = match q {
                Some(c) => bytes.get(j) == Some(&c),
                None => true,
            };
            if !name.is_empty() && closed {
                out.push((name.to_string(), strip_tabs));
                i = j + usize::from(q.is_some());
                continue;
            }
        }
        i += 1;
    }
    out
}

struct Parser<'a> {
    text: &'a str,
    lines: Vec<Line>,
    index: LineIndex,
    tree: Tree,
    escape: char,
    warnings: Vec<Warning>,
}

/// Parses Dockerfile text. Never fails; problems are reported as warnings.
pub fn parse_dockerfile(text: &str) -> DockerfileAst {
    let index = LineIndex::new(text);
    let root = NodeData::new(NodeKind::DockerFile, Some(index.span(0, text.len())));
    let mut p = Parser {
        text,
        lines: split_lines(text),
        index,
        tree: Tree::new(root),
        escape: '\\',
        warnings: Vec::new(),
    };
    p.run();
    if p.tree
        .children(p.tree.root())
        .iter()
        .all(|&c| !p.tree.kind(c).is_instruction())
    {
        p.warnings
            .push(Warning::new("file contains no instructions", None));
    }
    DockerfileAst {
        tree: p.tree,
        lines: p.index,
        escape: p.escape,
        warnings: p.warnings,
    }
}

impl Parser<'_> {
    fn span(&self, start: usize, end: usize) -> SourceSpan {
        self.index.span(start, end)
    }

    fn leaf(&mut self, kind: NodeKind, start: usize, end: usize) -> NodeId {
        let data = NodeData::new(kind, Some(self.span(start, end))).with_literal(&self.text[start..end]);
        self.tree.alloc(data)
    }

    fn run(&mut self) {
        let mut directives = true;
        let mut i = 0;
        while i < self.lines.len() {
            let line = self.lines[i];
            let content = &self.text[line.start..line.end];
            let trimmed = content.trim_start();
            let lead = content.len() - trimmed.len();
            if trimmed.trim_end().is_empty() {
                directives = false;
                i += 1;
                continue;
            }
            let start = line.start + lead;
            let end = line.start + content.trim_end().len();
            if trimmed.starts_with('#') {
                let comment = self.leaf(NodeKind::DockerComment, start, end);
                if directives {
                    match parse_directive(trimmed) {
                        Some((name, value)) => {
                            self.tree.get_mut(comment).value = Some(name.clone());
                            if name == "escape" {
                                match value.as_str() {
                                    "\\" => self.escape = '\\',
                                    "`" => self.escape = '`',
                                    _ => self.warnings.push(Warning::new(
                                        format!("invalid escape directive `{value}`"),
                                        Some(self.span(start, end)),
                                    )),
                                }
                            }
                        }
                        None => directives = false,
                    }
                }
                let root = self.tree.root();
                self.tree.append_child(root, comment);
                i += 1;
                continue;
            }
            directives = false;
            i = self.instruction(i, start);
        }
    }

    /// Index of the last physical line of the instruction starting on
    /// line `first`.
    fn logical_end(&self, first: usize) -> usize {
        let mut j = first;
        while ends_with_escape(self.text, self.lines[j], self.escape) {
            let mut k = j + 1;
            while k < self.lines.len() && is_blank_or_comment(self.text, self.lines[k]) {
                k += 1;
            }
            if k >= self.lines.len() {
                break;
            }
            j = k;
        }
        j
    }

    /// Parses one instruction; returns the index of the next unconsumed line.
    fn instruction(&mut self, first: usize, start: usize) -> usize {
        let mut last = self.logical_end(first);
        let mut end = self.lines[last].end;
        let text = self.text;

        let kw_len = text[start..end]
            .find(|c: char| !c.is_ascii_alphabetic())
            .unwrap_or(end - start);
        let kind = if kw_len == 0 {
            None
        } else {
            keyword_kind(&text[start..start + kw_len])
        };
        let Some(kind) = kind else {
            let node = self.leaf(NodeKind::DockerUnknown, start, end);
            self.warnings.push(Warning::new(
                format!(
                    "unrecognized instruction `{}`",
                    text[start..end].split_whitespace().next().unwrap_or("")
                ),
                Some(self.span(start, end)),
            ));
            let root = self.tree.root();
            self.tree.append_child(root, node);
            return last + 1;
        };

        let mut children = vec![self.leaf(NodeKind::DockerKeyword, start, start + kw_len)];
        let mut pos = self.skip_blanks(start + kw_len, end);

        if matches!(
            kind,
            NodeKind::DockerRun | NodeKind::DockerFrom | NodeKind::DockerCopy | NodeKind::DockerAdd
        ) {
            while text[pos..end].starts_with("--") {
                let tok_end = self.token_end(pos, end);
                children.push(self.leaf(NodeKind::DockerFlag, pos, tok_end));
                pos = self.skip_blanks(tok_end, end);
            }
        }

        let mut attrs = Attrs::default();
        if kind == NodeKind::DockerRun {
            let delims = heredoc_delimiters(&text[pos..end]);
            let body_end = if delims.is_empty() {
                None
            } else {
                self.heredoc_bodies(last + 1, &delims)
            };
            if let Some(term_line) = body_end {
                attrs.run_form = Some(RunForm::Heredoc);
                let marker_only = {
                    let payload = text[pos..end].trim();
                    delims.len() == 1
                        && heredoc_delimiters(payload).len() == 1
                        && payload.starts_with("<<")
                        && !payload.contains(char::is_whitespace)
                };
                if marker_only {
                    let marker_end = pos + text[pos..end].trim_end().len();
                    children.push(self.leaf(NodeKind::DockerHeredoc, pos, marker_end));
                    let body_start = self.lines[last + 1].start;
                    let body_stop = if term_line > last + 1 {
                        self.lines[term_line - 1].end
                    } else {
                        body_start
                    };
                    children.push(self.leaf(NodeKind::DockerArgs, body_start, body_stop));
                } else {
                    let stop = self.lines[term_line].end;
                    children.push(self.leaf(NodeKind::DockerArgs, pos, stop));
                }
                last = term_line;
                end = self.lines[term_line].end;
            } else if let Some(array) = self.exec_array(pos, end) {
                attrs.run_form = Some(RunForm::Exec);
                children.push(array);
            } else {
                attrs.run_form = Some(RunForm::Shell);
                if pos < end {
                    children.push(self.leaf(NodeKind::DockerArgs, pos, end));
                }
            }
        } else if pos < end {
            children.push(self.leaf(NodeKind::DockerArgs, pos, end));
        }

        let node = self
            .tree
            .alloc(NodeData::new(kind, Some(self.span(start, end))).with_attrs(attrs));
        for c in children {
            self.tree.append_child(node, c);
        }
        let root = self.tree.root();
        self.tree.append_child(root, node);
        last + 1
    }

    /// Finds the terminator line of each heredoc body in turn, starting at
    /// line `from`. Returns the line index of the final terminator, or
    /// `None` when a body is unterminated.
    fn heredoc_bodies(&self, from: usize, delims: &[(String, bool)]) -> Option<usize> {
        let mut line = from;
        let mut term = None;
        for (name, strip_tabs) in delims {
            loop {
                let l = *self.lines.get(line)?;
                let content = &self.text[l.start..l.end];
                let content = if *strip_tabs {
                    content.trim_start_matches('\t')
                } else {
                    content
                };
                line += 1;
                if content == name {
                    term = Some(line - 1);
                    break;
                }
            }
        }
        term
    }

    fn skip_blanks(&self, mut pos: usize, end: usize) -> usize {
        loop {
            let n = continuation_len(self.text, pos, end, self.escape);
            if n > 0 {
                pos += n;
                continue;
            }
            match self.text[pos..end].chars().next() {
                Some(c @ (' ' | '\t' | '\r')) => pos += c.len_utf8(),
                _ => return pos,
            }
        }
    }

    fn token_end(&self, mut pos: usize, end: usize) -> usize {
        while pos < end {
            let c = self.text[pos..].chars().next().unwrap();
            if c.is_whitespace() || continuation_len(self.text, pos, end, self.escape) > 0 {
                break;
            }
            pos += c.len_utf8();
        }
        pos
    }

    /// Scans a JSON array of strings. Returns `None` when the payload is
    /// not one, in which case Docker falls back to shell form.
    fn exec_array(&mut self, start: usize, end: usize) -> Option<NodeId> {
        let text = self.text;
        if !text[start..end].starts_with('[') {
            return None;
        }
        let mut strings = Vec::new();
        let mut pos = self.skip_blanks(start + 1, end);
        if text[pos..end].starts_with(']') {
            pos += 1;
        } else {
            loop {
                if !text[pos..end].starts_with('"') {
                    return None;
                }
                let mut j = pos + 1;
                let bytes = text.as_bytes();
                loop {
                    match bytes.get(j) {
                        _ if j >= end => return None,
                        Some(b'\\') => j += 2,
                        Some(b'"') => break,
                        Some(_) => j += 1,
                        None => return None,
                    }
                }
                let raw = &text[pos..=j];
                let value: String = serde_json::from_str(raw).ok()?;
                strings.push((pos, j + 1, value));
                pos = self.skip_blanks(j + 1, end);
                if text[pos..end].starts_with(',') {
                    pos = self.skip_blanks(pos + 1, end);
                } else if text[pos..end].starts_with(']') {
                    pos += 1;
                    break;
                } else {
                    return None;
                }
            }
        }
        let array_end = pos;
        if !text[array_end..end].trim().is_empty() {
            return None;
        }
        let array = self.tree.alloc(NodeData::new(
            NodeKind::DockerArray,
            Some(self.span(start, array_end)),
        ));
        for (s, e, value) in strings {
            let node = self.leaf(NodeKind::DockerString, s, e);
            self.tree.get_mut(node).value = Some(value);
            self.tree.append_child(array, node);
        }
        Some(array)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn kinds(ast: &DockerfileAst) -> Vec<NodeKind> {
        ast.instructions().into_iter().map(|i| ast.tree.kind(i)).collect()
    }

    fn run_span_text<'a>(ast: &DockerfileAst, text: &'a str, i: usize) -> &'a str {
        let id = ast.instructions()[i];
        let s = ast.tree.span(id).unwrap();
        &text[s.start..s.end]
    }

    #[test]
    fn two_instructions_one_stage() {
        let ast = parse_dockerfile("FROM alpine\nRUN apk add curl");
        assert_eq!(kinds(&ast), vec![NodeKind::DockerFrom, NodeKind::DockerRun]);
        assert_eq!(ast.stages().len(), 1);
        assert!(ast.warnings.is_empty());
    }

    #[test]
    fn empty_input_warns() {
        let ast = parse_dockerfile("");
        assert!(kinds(&ast).is_empty());
        assert_eq!(ast.warnings.len(), 1);
        assert!(!ast.is_unparseable());
    }

    #[test]
    fn continuation_folds_into_one_instruction() {
        let text = "RUN apt-get update \\\n && apt-get install -y wget";
        let ast = parse_dockerfile(text);
        assert_eq!(kinds(&ast), vec![NodeKind::DockerRun]);
        let span = ast.tree.span(ast.instructions()[0]).unwrap();
        assert_eq!((span.start_line, span.end_line), (1, 2));
        assert_eq!(run_span_text(&ast, text, 0), text);
    }

    #[test]
    fn exec_form_records_strings() {
        let ast = parse_dockerfile(r#"RUN ["sh", "-c", "npm install"]"#);
        let run = ast.instructions()[0];
        assert_eq!(ast.tree.attrs(run).run_form, Some(RunForm::Exec));
        let array = *ast.tree.children(run).last().unwrap();
        assert_eq!(ast.tree.kind(array), NodeKind::DockerArray);
        let values: Vec<_> = ast
            .tree
            .children(array)
            .iter()
            .map(|&s| ast.tree.value(s).unwrap())
            .collect();
        assert_eq!(values, vec!["sh", "-c", "npm install"]);
    }

    #[test]
    fn broken_json_falls_back_to_shell_form() {
        let ast = parse_dockerfile("RUN [ -f x ] && echo y");
        let run = ast.instructions()[0];
        assert_eq!(ast.tree.attrs(run).run_form, Some(RunForm::Shell));
    }

    #[test]
    fn keywords_are_case_insensitive() {
        let ast = parse_dockerfile("from alpine\nrun ls\nWorkDir /app\n");
        assert_eq!(
            kinds(&ast),
            vec![NodeKind::DockerFrom, NodeKind::DockerRun, NodeKind::DockerWorkdir]
        );
    }

    #[test]
    fn unknown_keyword_is_kept() {
        let ast = parse_dockerfile("FROM a\nFOO bar\n");
        assert_eq!(kinds(&ast), vec![NodeKind::DockerFrom, NodeKind::DockerUnknown]);
        assert_eq!(ast.warnings.len(), 1);
        assert!(!ast.is_unparseable());
        assert!(parse_dockerfile("hello world\nthis is not a dockerfile\n").is_unparseable());
    }

    #[test]
    fn comment_lines_inside_continuations_are_skipped() {
        let text = "RUN apt-get update \\\n    # refresh\n\n    && apt-get install -y x\nRUN ls";
        let ast = parse_dockerfile(text);
        assert_eq!(kinds(&ast), vec![NodeKind::DockerRun, NodeKind::DockerRun]);
        assert!(run_span_text(&ast, text, 0).ends_with("install -y x"));
    }

    #[test]
    fn escape_directive_switches_continuation() {
        let text = "# escape=`\nFROM windows\nRUN dir `\n  c:\\\nRUN echo";
        let ast = parse_dockerfile(text);
        assert_eq!(ast.escape, '`');
        assert_eq!(
            kinds(&ast),
            vec![NodeKind::DockerFrom, NodeKind::DockerRun, NodeKind::DockerRun]
        );
        assert_eq!(run_span_text(&ast, text, 1), "RUN dir `\n  c:\\");
    }

    #[test]
    fn directive_after_comment_is_just_a_comment() {
        let ast = parse_dockerfile("# hello\n# escape=`\nRUN a \\\n b");
        assert_eq!(ast.escape, '\\');
        assert_eq!(kinds(&ast), vec![NodeKind::DockerRun]);
    }

    #[test]
    fn stages_partition_by_from() {
        let ast = parse_dockerfile(
            "ARG V=1\nFROM a AS build\nRUN make\nFROM b\nCOPY --from=build /x /x\nCMD [\"x\"]\n",
        );
        let stages = ast.stages();
        assert_eq!(stages.len(), 2);
        assert_eq!(stages[0].instructions.len(), 2);
        assert_eq!(stages[1].instructions.len(), 3);
    }

    #[test]
    fn run_flags_are_separate_nodes() {
        let ast = parse_dockerfile("RUN --mount=type=cache,target=/root/.cache pip install x");
        let run = ast.instructions()[0];
        let kids: Vec<_> = ast.tree.children(run).iter().map(|&c| ast.tree.kind(c)).collect();
        assert_eq!(
            kids,
            vec![
                NodeKind::DockerKeyword,
                NodeKind::DockerFlag,
                NodeKind::DockerArgs
            ]
        );
    }

    #[test]
    fn heredoc_body_is_the_payload() {
        let text = "FROM a\nRUN <<EOF\napt-get update\napt-get install -y x\nEOF\nCMD x\n";
        let ast = parse_dockerfile(text);
        assert_eq!(
            kinds(&ast),
            vec![NodeKind::DockerFrom, NodeKind::DockerRun, NodeKind::DockerCmd]
        );
        let run = ast.instructions()[1];
        assert_eq!(ast.tree.attrs(run).run_form, Some(RunForm::Heredoc));
        let args = *ast.tree.children(run).last().unwrap();
        let s = ast.tree.span(args).unwrap();
        assert_eq!(&text[s.start..s.end], "apt-get update\napt-get install -y x");
    }

    #[test]
    fn heredoc_inside_a_command() {
        let text = "RUN cat <<'EOF' > /etc/x.conf\nkey=value\nEOF\nRUN ls\n";
        let ast = parse_dockerfile(text);
        assert_eq!(kinds(&ast), vec![NodeKind::DockerRun, NodeKind::DockerRun]);
        assert_eq!(
            run_span_text(&ast, text, 0),
            "RUN cat <<'EOF' > /etc/x.conf\nkey=value\nEOF"
        );
    }

    #[test]
    fn crlf_line_endings() {
        let text = "FROM a\r\nRUN a \\\r\n  && b\r\n";
        let ast = parse_dockerfile(text);
        assert_eq!(kinds(&ast), vec![NodeKind::DockerFrom, NodeKind::DockerRun]);
        assert_eq!(run_span_text(&ast, text, 1), "RUN a \\\r\n  && b");
    }

    #[test]
    fn every_content_line_belongs_to_one_instruction_or_comment() {
        let text = "FROM a\n\n# c\nRUN x \\\n  y\n  \nENV A=1\n";
        let ast = parse_dockerfile(text);
        let idx = LineIndex::new(text);
        for (n, line) in text.lines().enumerate() {
            if line.trim().is_empty() {
                continue;
            }
            let offset = idx.line_start(n + 1).unwrap() + (line.len() - line.trim_start().len());
            let owners = ast
                .tree
                .children(ast.root())
                .iter()
                .filter(|&&c| ast.tree.span(c).unwrap().contains_offset(offset))
                .count();
            assert_eq!(owners, 1, "line {}", n + 1);
        }
    }
}
