//! Parser for the POSIX shell subset found in RUN payloads.
//!
//! The parser works directly on the file text so that every `SC-*` node
//! shares the Dockerfile's coordinate system. Docker line continuations
//! (escape + newline, plus any comment-only lines that follow) are treated
//! as whitespace, or as nothing when they fall inside a word.
//!
//! Supported: simple commands with assignments and redirections,
//! pipelines, `&&`/`||` lists (flattened to n-ary nodes), `;`/newline
//! sequences, subshells, `$(...)` and backtick substitutions, variables,
//! and `if`/`for`/`while`/`until`/`case`/`{ }`/function bodies as generic
//! `SC-COMPOUND` blocks. Anything else turns the smallest enclosing
//! statement into an `SC-UNPARSED` leaf and parsing resumes after it. An
//! unterminated quote or substitution makes the whole script one
//! `SC-UNPARSED` leaf.

use crate::dockerfile::{continuation_len, Warning};
use crate::span::LineIndex;
use crate::tree::{Attrs, NodeData, NodeId, NodeKind, QuoteStyle, Tree};

/// How line continuations are spelled in the region being parsed.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Continuation {
    /// Dockerfile instruction payload with the given escape character.
    Docker(char),
    /// Plain shell script (heredoc bodies): only backslash-newline outside
    /// single quotes.
    Shell,
}

/// A standalone shell parse: the tree's root is the `SC-SCRIPT` node.
#[derive(Clone, Debug)]
pub struct ShellAst {
    pub tree: Tree,
    pub warnings: Vec<Warning>,
}

impl ShellAst {
    pub fn root(&self) -> NodeId {
        self.tree.root()
    }
}

/// Parses a RUN payload on its own, with Docker's default `\` continuation.
pub fn parse_shell(text: &str) -> ShellAst {
    parse_shell_with(text, Continuation::Docker('\\'))
}

pub fn parse_shell_with(text: &str, mode: Continuation) -> ShellAst {
    let lines = LineIndex::new(text);
    let mut tree = Tree::new(NodeData::new(NodeKind::DockerFile, None));
    let (script, warnings) = parse_region(&mut tree, text, &lines, 0, text.len(), mode);
    let placeholder = tree.root();
    tree.replace(placeholder, script);
    ShellAst { tree, warnings }
}

/// Parses `src[start..end]` into a detached `SC-SCRIPT` node of `tree`.
pub(crate) fn parse_region(
    tree: &mut Tree,
    src: &str,
    lines: &LineIndex,
    start: usize,
    end: usize,
    mode: Continuation,
) -> (NodeId, Vec<Warning>) {
    let mut p = Parser {
        tree,
        src,
        lines,
        pos: start,
        tok_end: start,
        end,
        mode,
        pending_heredocs: Vec::new(),
        warnings: Vec::new(),
        depth: 0,
    };
    let script = p.script(start);
    (script, p.warnings)
}

#[derive(Debug)]
enum Fail {
    /// Outside the supported subset; recoverable at statement level.
    Unsupported(&'static str),
    /// Unterminated construct; the whole script degrades.
    Fatal(&'static str),
}

type PResult<T> = Result<T, Fail>;

const MAX_DEPTH: usize = 128;

const OPENERS: &[&str] = &["if", "case", "for", "select", "while", "until", "{"];
const CLOSERS: &[&str] = &["fi", "esac", "done", "}"];
const STRAY: &[&str] = &["then", "elif", "else", "fi", "do", "done", "esac", "}", "in"];

struct Parser<'t, 's> {
    tree: &'t mut Tree,
    src: &'s str,
    lines: &'s LineIndex,
    pos: usize,
    /// End of the last consumed character; node spans end here.
    tok_end: usize,
    end: usize,
    mode: Continuation,
    pending_heredocs: Vec<(String, bool)>,
    warnings: Vec<Warning>,
    depth: usize,
}

fn is_meta(c: char) -> bool {
    matches!(
        c,
        ' ' | '\t' | '\r' | '\n' | ';' | '&' | '|' | '<' | '>' | '(' | ')'
    )
}

fn is_name_start(b: u8) -> bool {
    b.is_ascii_alphabetic() || b == b'_'
}

/// Index of the quote closing the one at `open`.
fn skip_quoted(bytes: &[u8], open: usize) -> Option<usize> {
    let q = bytes[open];
    let mut i = open + 1;
    while i < bytes.len() {
        match bytes[i] {
            b'\\' if q == b'"' => i += 1,
            c if c == q => return Some(i),
            _ => {}
        }
        i += 1;
    }
    None
}

fn is_name_char(b: u8) -> bool {
    b.is_ascii_alphanumeric() || b == b'_'
}

impl Parser<'_, '_> {
    // ---- character level -------------------------------------------------

    fn cont_at(&self, at: usize) -> usize {
        match self.mode {
            Continuation::Docker(esc) => continuation_len(self.src, at, self.end, esc),
            Continuation::Shell => {
                let rest = &self.src[at..self.end];
                if rest.starts_with("\\\n") {
                    2
                } else if rest.starts_with("\\\r\n") {
                    3
                } else {
                    0
                }
            }
        }
    }

    fn skip_cont(&mut self) {
        loop {
            let n = self.cont_at(self.pos);
            if n == 0 {
                break;
            }
            self.pos += n;
        }
    }

    /// Next character after any continuation.
    fn peek(&mut self) -> Option<char> {
        self.skip_cont();
        self.peek_raw()
    }

    fn peek_raw(&self) -> Option<char> {
        self.src[self.pos..self.end].chars().next()
    }

    fn peek_second(&self) -> Option<char> {
        let mut it = self.src[self.pos..self.end].chars();
        it.next();
        let c = it.next()?;
        // A continuation between two operator characters still joins them.
        if self.mode != Continuation::Shell {
            let first_len = self.src[self.pos..].chars().next().map_or(0, char::len_utf8);
            let n = self.cont_at(self.pos + first_len);
            if n > 0 {
                return self.src[self.pos + first_len + n..self.end].chars().next();
            }
        }
        Some(c)
    }

    fn bump(&mut self) -> Option<char> {
        let c = self.peek_raw()?;
        self.pos += c.len_utf8();
        self.tok_end = self.pos;
        Some(c)
    }

    fn at_end(&mut self) -> bool {
        self.peek().is_none()
    }

    fn at(&mut self, s: &str) -> bool {
        self.skip_cont();
        self.src[self.pos..self.end].starts_with(s)
    }

    fn eat(&mut self, s: &str) -> bool {
        if self.at(s) {
            for _ in s.chars() {
                self.skip_cont();
                self.bump();
            }
            true
        } else {
            false
        }
    }

    fn skip_ws(&mut self) {
        loop {
            match self.peek() {
                Some(' ' | '\t' | '\r') => {
                    self.pos += 1;
                }
                Some('#') => self.skip_comment(),
                _ => break,
            }
        }
    }

    fn skip_comment(&mut self) {
        match self.mode {
            // Docker joins continued lines before the shell sees them, so a
            // comment runs to the end of the instruction.
            Continuation::Docker(_) => {
                while let Some(c) = self.peek() {
                    if c == '\n' {
                        break;
                    }
                    self.pos += c.len_utf8();
                }
            }
            Continuation::Shell => {
                while let Some(c) = self.peek_raw() {
                    if c == '\n' {
                        break;
                    }
                    self.pos += c.len_utf8();
                }
            }
        }
    }

    fn skip_linebreaks(&mut self) {
        loop {
            self.skip_ws();
            if self.peek() == Some('\n') {
                self.pos += 1;
                self.read_heredoc_bodies();
            } else {
                break;
            }
        }
    }

    fn read_heredoc_bodies(&mut self) {
        for (delim, strip_tabs) in std::mem::take(&mut self.pending_heredocs) {
            while self.pos < self.end {
                let rest = &self.src[self.pos..self.end];
                let (line, next) = match rest.find('\n') {
                    Some(i) => (&rest[..i], self.pos + i + 1),
                    None => (rest, self.end),
                };
                let line = line.strip_suffix('\r').unwrap_or(line);
                let line = if strip_tabs {
                    line.trim_start_matches('\t')
                } else {
                    line
                };
                let done = line == delim;
                self.pos = next;
                if done {
                    break;
                }
            }
        }
    }

    /// A bare reserved-word candidate at the current position, if it is
    /// followed by a delimiter.
    fn peek_bare_word(&mut self) -> Option<&str> {
        self.skip_cont();
        let rest = &self.src[self.pos..self.end];
        let len = rest
            .find(|c: char| is_meta(c) || matches!(c, '\'' | '"' | '$' | '`' | '\\'))
            .unwrap_or(rest.len());
        if len == 0 {
            return None;
        }
        Some(&rest[..len])
    }

    fn at_reserved(&mut self, word: &str) -> bool {
        self.peek_bare_word() == Some(word)
    }

    fn eat_reserved(&mut self, word: &str) -> bool {
        if self.at_reserved(word) {
            self.pos += word.len();
            self.tok_end = self.pos;
            true
        } else {
            false
        }
    }

    fn expect_reserved(&mut self, word: &str) -> PResult<()> {
        self.skip_linebreaks();
        if self.eat_reserved(word) {
            Ok(())
        } else {
            Err(Fail::Unsupported("missing reserved word"))
        }
    }

    // ---- node helpers ----------------------------------------------------

    fn node(&mut self, kind: NodeKind, start: usize, end: usize) -> NodeData {
        NodeData::new(kind, Some(self.lines.span(start, end)))
    }

    fn alloc_with(&mut self, data: NodeData, children: &[NodeId]) -> NodeId {
        let id = self.tree.alloc(data);
        for &c in children {
            self.tree.append_child(id, c);
        }
        id
    }

    fn start_of(&self, id: NodeId) -> usize {
        self.tree.span(id).map_or(self.pos, |s| s.start)
    }

    fn end_of(&self, id: NodeId) -> usize {
        self.tree.span(id).map_or(self.pos, |s| s.end)
    }

    fn set_end(&mut self, id: NodeId, end: usize) {
        let start = self.start_of(id);
        self.tree.get_mut(id).span = Some(self.lines.span(start, end));
    }

    // ---- grammar ---------------------------------------------------------

    fn script(&mut self, start: usize) -> NodeId {
        let body = match self.top_level() {
            Ok(items) => self.sequence(items),
            Err(Fail::Fatal(msg)) | Err(Fail::Unsupported(msg)) => {
                self.warnings.push(Warning::new(
                    format!("shell payload left unparsed: {msg}"),
                    Some(self.lines.span(start, self.end)),
                ));
                self.pending_heredocs.clear();
                let mut from = start;
                while self.cont_at(from) > 0 {
                    from += self.cont_at(from);
                }
                let leading = self.src[from..self.end].len() - self.src[from..self.end].trim_start().len();
                let from = from + leading;
                let to = from + self.src[from..self.end].trim_end().len();
                let data = self
                    .node(NodeKind::ScUnparsed, from, to)
                    .with_literal(&self.src[from..to]);
                Some(self.tree.alloc(data))
            }
        };
        let data = self.node(NodeKind::ScScript, start, self.end);
        let children: Vec<_> = body.into_iter().collect();
        self.alloc_with(data, &children)
    }

    fn top_level(&mut self) -> PResult<Vec<NodeId>> {
        let mut items = Vec::new();
        loop {
            items.extend(self.list_items(&[])?);
            self.skip_linebreaks();
            if self.at_end() {
                break;
            }
            // A stray `)` or `;;` at top level.
            let start = self.pos;
            items.push(self.unparsed_from(start)?);
        }
        Ok(items)
    }

    fn sequence(&mut self, items: Vec<NodeId>) -> Option<NodeId> {
        match items.len() {
            0 => None,
            1 => Some(items[0]),
            _ => {
                let (s, e) = (self.start_of(items[0]), self.end_of(*items.last().unwrap()));
                let data = self.node(NodeKind::ScSeq, s, e);
                Some(self.alloc_with(data, &items))
            }
        }
    }

    fn list(&mut self, stop: &[&str]) -> PResult<Option<NodeId>> {
        let items = self.list_items(stop)?;
        Ok(self.sequence(items))
    }

    fn at_list_stop(&mut self, stop: &[&str]) -> bool {
        if self.at(")") || self.at(";;") || self.at(";&") {
            return true;
        }
        match self.peek_bare_word() {
            Some(w) => stop.contains(&w),
            None => false,
        }
    }

    fn list_items(&mut self, stop: &[&str]) -> PResult<Vec<NodeId>> {
        let mut items = Vec::new();
        loop {
            self.skip_linebreaks();
            if self.at_end() || self.at_list_stop(stop) {
                break;
            }
            items.push(self.and_or()?);
            self.skip_ws();
            if self.at(";;") || self.at(";&") {
                break;
            }
            match self.peek() {
                Some(';') => {
                    self.bump();
                }
                Some('&') if !self.at("&&") && !self.at("&>") => {
                    self.bump();
                }
                Some('\n') => {}
                _ => break,
            }
        }
        Ok(items)
    }

    fn and_or(&mut self) -> PResult<NodeId> {
        let mut node = self.pipeline()?;
        let mut group: Option<NodeKind> = None;
        loop {
            self.skip_ws();
            let kind = if self.at("&&") {
                NodeKind::ScAnd
            } else if self.at("||") {
                NodeKind::ScOr
            } else {
                break;
            };
            self.eat(if kind == NodeKind::ScAnd { "&&" } else { "||" });
            self.skip_linebreaks();
            let rhs = self.pipeline()?;
            let rhs_end = self.end_of(rhs);
            if group == Some(kind) {
                self.tree.append_child(node, rhs);
                self.set_end(node, rhs_end);
            } else {
                let data = self.node(kind, self.start_of(node), rhs_end);
                node = self.alloc_with(data, &[node, rhs]);
                group = Some(kind);
            }
        }
        Ok(node)
    }

    fn pipeline(&mut self) -> PResult<NodeId> {
        self.skip_ws();
        let start = self.pos;
        let negated = self.eat_reserved("!");
        let mut cmds = vec![self.command_or_unparsed()?];
        loop {
            self.skip_ws();
            if self.at("|") && !self.at("||") {
                self.bump();
                if self.at("&") {
                    self.bump();
                }
                self.skip_linebreaks();
                cmds.push(self.command_or_unparsed()?);
            } else {
                break;
            }
        }
        if cmds.len() == 1 && !negated {
            return Ok(cmds[0]);
        }
        let end = self.end_of(*cmds.last().unwrap());
        let mut data = self.node(NodeKind::ScPipeline, start, end);
        if negated {
            data.value = Some("!".into());
        }
        Ok(self.alloc_with(data, &cmds))
    }

    fn command_or_unparsed(&mut self) -> PResult<NodeId> {
        self.skip_ws();
        let start = self.pos;
        let saved_heredocs = self.pending_heredocs.len();
        match self.command() {
            Ok(n) => Ok(n),
            Err(Fail::Unsupported(_)) => {
                self.pos = start;
                self.tok_end = start;
                self.pending_heredocs.truncate(saved_heredocs);
                self.unparsed_from(start)
            }
            Err(e) => Err(e),
        }
    }

    /// Skips to the end of the current statement and wraps it in an
    /// `SC-UNPARSED` leaf. Always consumes at least one character when not
    /// at the end, so callers make progress.
    fn unparsed_from(&mut self, start: usize) -> PResult<NodeId> {
        self.pos = start;
        self.tok_end = start;
        let mut depth = 0usize;
        let mut first = true;
        let mut word_start = true;
        while let Some(c) = self.peek() {
            match c {
                '\'' => {
                    self.bump();
                    self.skip_single_quoted()?;
                }
                '"' => {
                    self.bump();
                    self.skip_double_quoted()?;
                }
                '`' => {
                    self.bump();
                    self.skip_backticked()?;
                }
                '\\' => {
                    self.bump();
                    self.bump();
                }
                '(' => {
                    depth += 1;
                    self.bump();
                }
                ')' if depth > 0 => {
                    depth -= 1;
                    self.bump();
                }
                ')' | ';' | '&' | '|' | '\n' if depth == 0 => {
                    if first {
                        self.bump();
                        if self.peek() == Some(c) && c != ')' {
                            self.bump();
                        }
                    }
                    break;
                }
                ' ' | '\t' | '\r' | ';' | '&' | '|' | '\n' | '<' | '>' => {
                    self.bump();
                    word_start = true;
                    first = false;
                    continue;
                }
                _ => {
                    if word_start {
                        if let Some(w) = self.peek_bare_word() {
                            let w = w.to_string();
                            if OPENERS.contains(&w.as_str()) {
                                depth += 1;
                            } else if CLOSERS.contains(&w.as_str()) && depth > 0 {
                                depth -= 1;
                            }
                            for _ in w.chars() {
                                self.bump();
                            }
                            word_start = false;
                            first = false;
                            continue;
                        }
                    }
                    self.bump();
                }
            }
            word_start = false;
            first = false;
        }
        let end = self.tok_end;
        let data = self
            .node(NodeKind::ScUnparsed, start, end)
            .with_literal(&self.src[start..end]);
        Ok(self.tree.alloc(data))
    }

    fn command(&mut self) -> PResult<NodeId> {
        self.depth += 1;
        let r = if self.depth > MAX_DEPTH {
            Err(Fail::Fatal("nesting too deep"))
        } else {
            self.command_inner()
        };
        self.depth -= 1;
        r
    }

    fn command_inner(&mut self) -> PResult<NodeId> {
        self.skip_ws();
        let start = self.pos;
        match self.peek() {
            None | Some(')' | ';' | '&' | '|' | '\n') => return Err(Fail::Unsupported("empty command")),
            Some('(') => {
                if self.peek_second() == Some('(') {
                    // `((expr))`, unless the parens close separately:
                    // then it is a subshell inside a subshell
                    if let Some(end) = self.arithmetic_end() {
                        return self.opaque_compound(start, end, "((");
                    }
                }
                self.bump();
                let body = self.list(&[])?;
                self.skip_linebreaks();
                if !self.eat(")") {
                    return Err(Fail::Unsupported("unclosed subshell"));
                }
                let data = self.node(NodeKind::ScSubshell, start, self.tok_end);
                let children: Vec<_> = body.into_iter().collect();
                let node = self.alloc_with(data, &children);
                return self.trailing_redirections(node);
            }
            _ => {}
        }
        let word = self.peek_bare_word().map(str::to_string);
        let compound = match word.as_deref() {
            Some("if") => Some(self.if_clause()?),
            Some("while" | "until") => Some(self.loop_clause()?),
            Some("for" | "select") => Some(self.for_clause()?),
            Some("case") => Some(self.case_clause()?),
            Some("{") => Some(self.brace_group()?),
            Some("function") => Some(self.function_def()?),
            Some("[[") => {
                let end = self
                    .conditional_end()
                    .ok_or(Fail::Unsupported("unterminated conditional expression"))?;
                return self.opaque_compound(start, end, "[[");
            }
            Some(w) if STRAY.contains(&w) => return Err(Fail::Unsupported("unexpected reserved word")),
            Some(w) if self.is_function_header(w.len()) => Some(self.function_def()?),
            _ => None,
        };
        match compound {
            Some((value, children)) => {
                let data = self
                    .node(NodeKind::ScCompound, start, self.tok_end)
                    .with_value(value)
                    .with_literal(&self.src[start..self.tok_end]);
                let node = self.alloc_with(data, &children);
                self.trailing_redirections(node)
            }
            None => self.simple_command(),
        }
    }

    /// A compound kept as text, from `start` to `end`.
    fn opaque_compound(&mut self, start: usize, end: usize, value: &str) -> PResult<NodeId> {
        self.pos = end;
        self.tok_end = end;
        let data = self
            .node(NodeKind::ScCompound, start, end)
            .with_value(value)
            .with_literal(&self.src[start..end]);
        let node = self.tree.alloc(data);
        self.trailing_redirections(node)
    }

    /// End of `((...))` starting at the cursor, if the opening parens are
    /// closed together.
    fn arithmetic_end(&self) -> Option<usize> {
        let bytes = &self.src.as_bytes()[..self.end];
        let mut i = self.pos + 2;
        let mut depth = 0usize;
        while i < bytes.len() {
            match bytes[i] {
                b'\\' => i += 1,
                b'\'' | b'"' => i = skip_quoted(bytes, i)?,
                b'(' => depth += 1,
                b')' if depth > 0 => depth -= 1,
                b')' => return (bytes.get(i + 1) == Some(&b')')).then_some(i + 2),
                _ => {}
            }
            i += 1;
        }
        None
    }

    /// End of `[[ ... ]]` starting at the cursor.
    fn conditional_end(&self) -> Option<usize> {
        let bytes = &self.src.as_bytes()[..self.end];
        let mut i = self.pos + 2;
        while i < bytes.len() {
            match bytes[i] {
                b'\\' => i += 1,
                b'\'' | b'"' => i = skip_quoted(bytes, i)?,
                b']' if bytes.get(i + 1) == Some(&b']')
                    && matches!(bytes[i - 1], b' ' | b'\t' | b'\n')
                    && bytes
                        .get(i + 2)
                        .is_none_or(|c| matches!(c, b' ' | b'\t' | b'\n' | b';' | b'&' | b'|' | b')')) =>
                {
                    return Some(i + 2);
                }
                _ => {}
            }
            i += 1;
        }
        None
    }

    fn is_function_header(&self, name_len: usize) -> bool {
        let rest = &self.src[self.pos + name_len..self.end];
        rest.trim_start_matches([' ', '\t']).starts_with("()")
            && self.src[self.pos..self.pos + name_len]
                .bytes()
                .all(|b| is_name_char(b) || b == b'-' || b == b'.')
    }

    fn trailing_redirections(&mut self, node: NodeId) -> PResult<NodeId> {
        loop {
            self.skip_ws();
            match self.redirection()? {
                Some(r) => {
                    let end = self.end_of(r);
                    self.tree.append_child(node, r);
                    self.set_end(node, end);
                    if self.tree.get(node).literal.is_some() {
                        let start = self.start_of(node);
                        self.tree.get_mut(node).literal = Some(self.src[start..end].to_string());
                    }
                }
                None => return Ok(node),
            }
        }
    }

    fn if_clause(&mut self) -> PResult<(&'static str, Vec<NodeId>)> {
        self.eat_reserved("if");
        let mut kids = Vec::new();
        kids.extend(self.list(&["then"])?);
        self.expect_reserved("then")?;
        kids.extend(self.list(&["elif", "else", "fi"])?);
        loop {
            self.skip_linebreaks();
            if self.eat_reserved("elif") {
                kids.extend(self.list(&["then"])?);
                self.expect_reserved("then")?;
                kids.extend(self.list(&["elif", "else", "fi"])?);
            } else if self.eat_reserved("else") {
                kids.extend(self.list(&["fi"])?);
            } else {
                break;
            }
        }
        self.expect_reserved("fi")?;
        Ok(("if", kids))
    }

    fn loop_clause(&mut self) -> PResult<(&'static str, Vec<NodeId>)> {
        let kw = if self.eat_reserved("while") {
            "while"
        } else {
            self.eat_reserved("until");
            "until"
        };
        let mut kids = Vec::new();
        kids.extend(self.list(&["do"])?);
        self.expect_reserved("do")?;
        kids.extend(self.list(&["done"])?);
        self.expect_reserved("done")?;
        Ok((kw, kids))
    }

    fn for_clause(&mut self) -> PResult<(&'static str, Vec<NodeId>)> {
        let kw = if self.eat_reserved("for") {
            "for"
        } else {
            self.eat_reserved("select");
            "select"
        };
        self.skip_ws();
        if self.at("((") {
            return Err(Fail::Unsupported("arithmetic for loop"));
        }
        let name = self.peek_bare_word().map(str::to_string);
        match name {
            Some(n) if n.bytes().all(is_name_char) && n.bytes().next().is_some_and(is_name_start) => {
                for _ in 0..n.len() {
                    self.bump();
                }
            }
            _ => return Err(Fail::Unsupported("bad loop variable")),
        }
        let mut kids = Vec::new();
        self.skip_linebreaks();
        if self.eat_reserved("in") {
            loop {
                self.skip_ws();
                match self.peek() {
                    Some(';') => {
                        self.bump();
                        break;
                    }
                    Some('\n') | None => break,
                    _ => match self.word()? {
                        Some(w) => kids.push(w),
                        None => return Err(Fail::Unsupported("bad loop word list")),
                    },
                }
            }
        } else {
            self.skip_ws();
            if self.at(";") {
                self.bump();
            }
        }
        self.expect_reserved("do")?;
        kids.extend(self.list(&["done"])?);
        self.expect_reserved("done")?;
        Ok((kw, kids))
    }

    fn case_clause(&mut self) -> PResult<(&'static str, Vec<NodeId>)> {
        self.eat_reserved("case");
        self.skip_ws();
        let mut kids = Vec::new();
        match self.word()? {
            Some(w) => kids.push(w),
            None => return Err(Fail::Unsupported("case without subject")),
        }
        self.expect_reserved("in")?;
        loop {
            self.skip_linebreaks();
            if self.eat_reserved("esac") {
                break;
            }
            if self.at_end() {
                return Err(Fail::Unsupported("unterminated case"));
            }
            if self.at("(") {
                self.bump();
            }
            loop {
                self.skip_ws();
                match self.word()? {
                    Some(w) => kids.push(w),
                    None => return Err(Fail::Unsupported("bad case pattern")),
                }
                self.skip_ws();
                if self.at("|") {
                    self.bump();
                } else if self.at(")") {
                    self.bump();
                    break;
                } else {
                    return Err(Fail::Unsupported("bad case pattern"));
                }
            }
            kids.extend(self.list(&["esac"])?);
            self.skip_ws();
            if !(self.eat(";;&") || self.eat(";;") || self.eat(";&")) {
                self.skip_linebreaks();
                if !self.at_reserved("esac") {
                    return Err(Fail::Unsupported("bad case item"));
                }
            }
        }
        Ok(("case", kids))
    }

    fn brace_group(&mut self) -> PResult<(&'static str, Vec<NodeId>)> {
        self.eat_reserved("{");
        let body = self.list(&["}"])?;
        self.expect_reserved("}")?;
        Ok(("brace", body.into_iter().collect()))
    }

    fn function_def(&mut self) -> PResult<(&'static str, Vec<NodeId>)> {
        self.eat_reserved("function");
        self.skip_ws();
        match self.peek_bare_word().map(str::to_string) {
            Some(name) => {
                for _ in name.chars() {
                    self.bump();
                }
            }
            None => return Err(Fail::Unsupported("function without name")),
        }
        self.skip_ws();
        if self.eat("(") {
            self.skip_ws();
            if !self.eat(")") {
                return Err(Fail::Unsupported("bad function header"));
            }
        }
        self.skip_linebreaks();
        let body = self.command()?;
        Ok(("function", vec![body]))
    }

    fn simple_command(&mut self) -> PResult<NodeId> {
        let start = self.pos;
        let mut children = Vec::new();
        let mut saw_word = false;
        loop {
            self.skip_ws();
            if let Some(r) = self.redirection()? {
                children.push(r);
                continue;
            }
            match self.peek() {
                None | Some('\n' | ';' | '&' | '|' | ')') => break,
                Some('(') => return Err(Fail::Unsupported("unexpected `(`")),
                _ => {}
            }
            if !saw_word {
                if let Some(a) = self.assignment()? {
                    children.push(a);
                    continue;
                }
            }
            match self.word()? {
                Some(w) => {
                    children.push(w);
                    saw_word = true;
                }
                None => return Err(Fail::Unsupported("unexpected character")),
            }
        }
        if children.is_empty() {
            return Err(Fail::Unsupported("empty command"));
        }
        let end = self.end_of(*children.last().unwrap());
        let data = self.node(NodeKind::ScSimpleCommand, start, end);
        Ok(self.alloc_with(data, &children))
    }

    fn assignment(&mut self) -> PResult<Option<NodeId>> {
        self.skip_cont();
        let bytes = self.src.as_bytes();
        let start = self.pos;
        if start >= self.end || !is_name_start(bytes[start]) {
            return Ok(None);
        }
        let mut i = start + 1;
        while i < self.end && is_name_char(bytes[i]) {
            i += 1;
        }
        let name_end = i;
        if i < self.end && bytes[i] == b'+' {
            i += 1;
        }
        if i >= self.end || bytes[i] != b'=' {
            return Ok(None);
        }
        let name = self.src[start..name_end].to_string();
        self.pos = i + 1;
        self.tok_end = self.pos;
        if self.peek_raw() == Some('(') {
            return Err(Fail::Unsupported("array assignment"));
        }
        let value = match self.word()? {
            Some(w) => w,
            None => {
                let at = self.pos.min(self.tok_end);
                let data = self
                    .node(NodeKind::ScWord, at, at)
                    .with_literal("")
                    .with_value("")
                    .with_attrs(Attrs {
                        quote: Some(QuoteStyle::Bare),
                        ..Attrs::default()
                    });
                self.tree.alloc(data)
            }
        };
        let end = self.end_of(value);
        let data = self.node(NodeKind::ScAssignment, start, end).with_value(name);
        Ok(Some(self.alloc_with(data, &[value])))
    }

    fn redirection(&mut self) -> PResult<Option<NodeId>> {
        self.skip_cont();
        let start = self.pos;
        let rest = &self.src[self.pos..self.end];
        let digits = rest.bytes().take_while(u8::is_ascii_digit).count();
        let after = &rest[digits..];
        const OPS: &[&str] = &[
            "&>>", "<<<", "<<-", "&>", "<<", "<>", "<&", ">>", ">&", ">|", "<", ">",
        ];
        let Some(op) = OPS.iter().copied().find(|op| after.starts_with(op)) else {
            return Ok(None);
        };
        if digits > 0 && op.starts_with('&') {
            return Ok(None);
        }
        if (op == "<" || op == ">") && after[1..].starts_with('(') {
            return Err(Fail::Unsupported("process substitution"));
        }
        self.pos += digits + op.len();
        self.tok_end = self.pos;
        self.skip_ws();
        let Some(target) = self.word()? else {
            return Err(Fail::Unsupported("redirection without target"));
        };
        if op == "<<" || op == "<<-" {
            let delim = self.tree.value(target).unwrap_or_default().to_string();
            self.pending_heredocs.push((delim, op == "<<-"));
        }
        let end = self.end_of(target);
        let data = self
            .node(NodeKind::ScRedirection, start, end)
            .with_value(op)
            .with_literal(&self.src[start..end]);
        Ok(Some(self.alloc_with(data, &[target])))
    }

    // ---- words -----------------------------------------------------------

    fn word(&mut self) -> PResult<Option<NodeId>> {
        self.skip_cont();
        let start = self.pos;
        let mut value = String::new();
        let mut parts = Vec::new();
        let (mut bare, mut single, mut double) = (false, false, false);
        let mut has_expansion = false;
        let mut has_glob = false;
        while let Some(c) = self.peek() {
            match c {
                c if is_meta(c) => break,
                '\'' => {
                    single = true;
                    self.bump();
                    self.single_quoted(&mut value)?;
                }
                '"' => {
                    double = true;
                    self.bump();
                    self.double_quoted(&mut value, &mut parts, &mut has_expansion)?;
                }
                '\\' => {
                    bare = true;
                    self.bump();
                    match self.bump() {
                        Some(n) => value.push(n),
                        None => value.push('\\'),
                    }
                }
                '$' => {
                    bare = true;
                    if self.src[self.pos..self.end].starts_with("$'") {
                        single = true;
                        self.bump();
                        self.bump();
                        self.ansi_quoted(&mut value)?;
                    } else {
                        self.dollar(&mut value, &mut parts, &mut has_expansion)?;
                    }
                }
                '`' => {
                    bare = true;
                    self.backtick(&mut value, &mut parts)?;
                    has_expansion = true;
                }
                '*' | '?' | '[' => {
                    bare = true;
                    has_glob = true;
                    value.push(c);
                    self.bump();
                }
                _ => {
                    bare = true;
                    value.push(c);
                    self.bump();
                }
            }
        }
        if self.tok_end <= start || self.pos == start {
            return Ok(None);
        }
        let end = self.tok_end;
        let quote = match (bare, single, double) {
            (_, false, false) => QuoteStyle::Bare,
            (false, true, false) => QuoteStyle::Single,
            (false, false, true) => QuoteStyle::Double,
            _ => QuoteStyle::Mixed,
        };
        let data = self
            .node(NodeKind::ScWord, start, end)
            .with_literal(&self.src[start..end])
            .with_value(value)
            .with_attrs(Attrs {
                quote: Some(quote),
                has_expansion,
                has_glob,
                ..Attrs::default()
            });
        Ok(Some(self.alloc_with(data, &parts)))
    }

    fn single_quoted(&mut self, value: &mut String) -> PResult<()> {
        loop {
            let c = match self.mode {
                Continuation::Docker(_) => self.peek(),
                Continuation::Shell => self.peek_raw(),
            };
            match c {
                None => return Err(Fail::Fatal("unterminated single quote")),
                Some('\'') => {
                    self.bump();
                    return Ok(());
                }
                Some(c) => {
                    value.push(c);
                    self.bump();
                }
            }
        }
    }

    fn ansi_quoted(&mut self, value: &mut String) -> PResult<()> {
        loop {
            match self.peek() {
                None => return Err(Fail::Fatal("unterminated $'...'")),
                Some('\\') => {
                    self.bump();
                    if let Some(c) = self.bump() {
                        value.push('\\');
                        value.push(c);
                    }
                }
                Some('\'') => {
                    self.bump();
                    return Ok(());
                }
                Some(c) => {
                    value.push(c);
                    self.bump();
                }
            }
        }
    }

    fn double_quoted(
        &mut self,
        value: &mut String,
        parts: &mut Vec<NodeId>,
        has_expansion: &mut bool,
    ) -> PResult<()> {
        loop {
            match self.peek() {
                None => return Err(Fail::Fatal("unterminated double quote")),
                Some('"') => {
                    self.bump();
                    return Ok(());
                }
                Some('\\') => {
                    self.bump();
                    match self.bump() {
                        Some(c @ ('$' | '`' | '"' | '\\')) => value.push(c),
                        Some(c) => {
                            value.push('\\');
                            value.push(c);
                        }
                        None => return Err(Fail::Fatal("unterminated double quote")),
                    }
                }
                Some('$') => self.dollar(value, parts, has_expansion)?,
                Some('`') => {
                    self.backtick(value, parts)?;
                    *has_expansion = true;
                }
                Some(c) => {
                    value.push(c);
                    self.bump();
                }
            }
        }
    }

    /// Handles a `$` at the current position.
    fn dollar(
        &mut self,
        value: &mut String,
        parts: &mut Vec<NodeId>,
        has_expansion: &mut bool,
    ) -> PResult<()> {
        let start = self.pos;
        self.bump();
        let next = self.peek_raw();
        match next {
            Some('(') => {
                *has_expansion = true;
                if self.src[self.pos..self.end].starts_with("((") {
                    self.skip_balanced_parens()?;
                    value.push_str(&self.src[start..self.tok_end]);
                    return Ok(());
                }
                self.bump();
                let body = match self.list(&[]) {
                    Ok(b) => b,
                    Err(Fail::Unsupported(_)) => return Err(Fail::Fatal("bad command substitution")),
                    Err(e) => return Err(e),
                };
                self.skip_linebreaks();
                if !self.eat(")") {
                    return Err(Fail::Fatal("unterminated command substitution"));
                }
                let end = self.tok_end;
                let data = self.node(NodeKind::ScCommandSubstitution, start, end);
                let children: Vec<_> = body.into_iter().collect();
                parts.push(self.alloc_with(data, &children));
                value.push_str(&self.src[start..end]);
            }
            Some('{') => {
                *has_expansion = true;
                self.bump();
                let name_start = self.pos;
                let mut depth = 1;
                loop {
                    match self.peek() {
                        None => return Err(Fail::Fatal("unterminated ${...}")),
                        Some('}') => {
                            depth -= 1;
                            self.bump();
                            if depth == 0 {
                                break;
                            }
                        }
                        Some('{') => {
                            depth += 1;
                            self.bump();
                        }
                        Some('\\') => {
                            self.bump();
                            self.bump();
                        }
                        Some('\'') => {
                            self.bump();
                            self.skip_single_quoted()?;
                        }
                        Some('"') => {
                            self.bump();
                            self.skip_double_quoted()?;
                        }
                        Some(_) => {
                            self.bump();
                        }
                    }
                }
                let end = self.tok_end;
                let inner = &self.src[name_start..end - 1];
                let name: String = inner
                    .trim_start_matches(['#', '!'])
                    .chars()
                    .take_while(|c| c.is_ascii_alphanumeric() || *c == '_' || "@*#?$!-".contains(*c))
                    .collect();
                let data = self
                    .node(NodeKind::ScVariable, start, end)
                    .with_value(name)
                    .with_literal(&self.src[start..end]);
                parts.push(self.tree.alloc(data));
                value.push_str(&self.src[start..end]);
            }
            Some(c) if c.is_ascii_alphabetic() || c == '_' => {
                *has_expansion = true;
                while self
                    .peek_raw()
                    .is_some_and(|c| c.is_ascii_alphanumeric() || c == '_')
                {
                    self.bump();
                }
                self.variable_node(start, parts, value);
            }
            Some(c) if c.is_ascii_digit() || "@*#?$!-".contains(c) => {
                *has_expansion = true;
                self.bump();
                self.variable_node(start, parts, value);
            }
            _ => value.push('$'),
        }
        Ok(())
    }

    fn variable_node(&mut self, start: usize, parts: &mut Vec<NodeId>, value: &mut String) {
        let end = self.tok_end;
        let text = &self.src[start..end];
        let data = self
            .node(NodeKind::ScVariable, start, end)
            .with_value(&text[1..])
            .with_literal(text);
        parts.push(self.tree.alloc(data));
        value.push_str(text);
    }

    fn backtick(&mut self, value: &mut String, parts: &mut Vec<NodeId>) -> PResult<()> {
        let start = self.pos;
        self.bump();
        let inner_start = self.pos;
        self.skip_backticked()?;
        let close = self.tok_end - 1;
        let end = self.tok_end;
        let (saved_pos, saved_end, saved_tok) = (self.pos, self.end, self.tok_end);
        self.pos = inner_start;
        self.end = close;
        let body = match self.list_items(&[]) {
            Ok(items) => {
                let mut items = items;
                self.skip_linebreaks();
                if !self.at_end() {
                    let s = self.pos;
                    items.push(self.unparsed_from(s)?);
                    while !self.at_end() {
                        let s = self.pos;
                        items.push(self.unparsed_from(s)?);
                    }
                }
                self.sequence(items)
            }
            Err(Fail::Unsupported(_)) => None,
            Err(e) => {
                self.end = saved_end;
                return Err(e);
            }
        };
        self.pos = saved_pos;
        self.end = saved_end;
        self.tok_end = saved_tok;
        let data = self
            .node(NodeKind::ScCommandSubstitution, start, end)
            .with_attrs(Attrs {
                backtick: true,
                ..Attrs::default()
            });
        let children: Vec<_> = body.into_iter().collect();
        parts.push(self.alloc_with(data, &children));
        value.push_str(&self.src[start..end]);
        Ok(())
    }

    fn skip_single_quoted(&mut self) -> PResult<()> {
        let mut scratch = String::new();
        self.single_quoted(&mut scratch)
    }

    fn skip_double_quoted(&mut self) -> PResult<()> {
        loop {
            match self.peek() {
                None => return Err(Fail::Fatal("unterminated double quote")),
                Some('"') => {
                    self.bump();
                    return Ok(());
                }
                Some('\\') => {
                    self.bump();
                    self.bump();
                }
                Some(_) => {
                    self.bump();
                }
            }
        }
    }

    /// Consumes up to and including the closing backtick.
    fn skip_backticked(&mut self) -> PResult<()> {
        loop {
            match self.peek() {
                None => return Err(Fail::Fatal("unterminated backtick")),
                Some('`') => {
                    self.bump();
                    return Ok(());
                }
                Some('\\') => {
                    self.bump();
                    self.bump();
                }
                Some(_) => {
                    self.bump();
                }
            }
        }
    }

    fn skip_balanced_parens(&mut self) -> PResult<()> {
        let mut depth = 0usize;
        loop {
            match self.peek() {
                None => return Err(Fail::Fatal("unbalanced parentheses")),
                Some('(') => depth += 1,
                Some(')') => {
                    depth -= 1;
                    if depth == 0 {
                        self.bump();
                        return Ok(());
                    }
                }
                Some('\'') => {
                    self.bump();
                    self.skip_single_quoted()?;
                    continue;
                }
                Some('"') => {
                    self.bump();
                    self.skip_double_quoted()?;
                    continue;
                }
                _ => {}
            }
            self.bump();
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn kinds_under(ast: &ShellAst, id: NodeId) -> Vec<NodeKind> {
        ast.tree.children(id).iter().map(|&c| ast.tree.kind(c)).collect()
    }

    fn top(ast: &ShellAst) -> NodeId {
        ast.tree.children(ast.root())[0]
    }

    fn words(ast: &ShellAst, cmd: NodeId) -> Vec<String> {
        ast.tree
            .children(cmd)
            .iter()
            .filter(|&&c| ast.tree.kind(c) == NodeKind::ScWord)
            .map(|&c| ast.tree.value(c).unwrap().to_string())
            .collect()
    }

    #[test]
    fn one_simple_command() {
        let ast = parse_shell("npm cache clean");
        let cmd = top(&ast);
        assert_eq!(ast.tree.kind(cmd), NodeKind::ScSimpleCommand);
        assert_eq!(words(&ast, cmd), ["npm", "cache", "clean"]);
        assert!(ast.warnings.is_empty());
    }

    #[test]
    fn and_list_is_flat() {
        let ast = parse_shell("apt-get update && apt-get install -y wget");
        let and = top(&ast);
        assert_eq!(ast.tree.kind(and), NodeKind::ScAnd);
        assert_eq!(
            kinds_under(&ast, and),
            vec![NodeKind::ScSimpleCommand, NodeKind::ScSimpleCommand]
        );
        let ast = parse_shell("a && b && c && d");
        assert_eq!(ast.tree.children(top(&ast)).len(), 4);
    }

    #[test]
    fn mixed_and_or_nests_left() {
        let ast = parse_shell("a && b || c && d");
        let outer = top(&ast);
        assert_eq!(ast.tree.kind(outer), NodeKind::ScAnd);
        let kids = ast.tree.children(outer);
        assert_eq!(ast.tree.kind(kids[0]), NodeKind::ScOr);
        let or_kids = ast.tree.children(kids[0]);
        assert_eq!(ast.tree.kind(or_kids[0]), NodeKind::ScAnd);
    }

    #[test]
    fn assignment_with_substitution() {
        let ast = parse_shell("ACTUAL_URL=$(curl -Ls -o /dev/null $URL)");
        let cmd = top(&ast);
        assert_eq!(ast.tree.kind(cmd), NodeKind::ScSimpleCommand);
        assert_eq!(kinds_under(&ast, cmd), vec![NodeKind::ScAssignment]);
        let assign = ast.tree.children(cmd)[0];
        assert_eq!(ast.tree.value(assign), Some("ACTUAL_URL"));
        let value = ast.tree.children(assign)[0];
        assert_eq!(kinds_under(&ast, value), vec![NodeKind::ScCommandSubstitution]);
        let subst = ast.tree.children(value)[0];
        let inner = ast.tree.children(subst)[0];
        assert_eq!(words(&ast, inner), ["curl", "-Ls", "-o", "/dev/null", "$URL"]);
    }

    #[test]
    fn if_becomes_compound_with_nested_statements() {
        let ast = parse_shell("if [ -f x ]; then rm x; fi");
        let c = top(&ast);
        assert_eq!(ast.tree.kind(c), NodeKind::ScCompound);
        assert_eq!(
            kinds_under(&ast, c),
            vec![NodeKind::ScSimpleCommand, NodeKind::ScSimpleCommand]
        );
    }

    #[test]
    fn quoting_styles_are_recorded() {
        let ast = parse_shell(r#"echo 'a b' "c $d" e f"g"'h'"#);
        let cmd = top(&ast);
        let styles: Vec<_> = ast
            .tree
            .children(cmd)
            .iter()
            .map(|&w| ast.tree.attrs(w).quote.unwrap())
            .collect();
        assert_eq!(
            styles,
            vec![
                QuoteStyle::Bare,
                QuoteStyle::Single,
                QuoteStyle::Double,
                QuoteStyle::Bare,
                QuoteStyle::Mixed
            ]
        );
        assert_eq!(words(&ast, cmd), ["echo", "a b", "c $d", "e", "fgh"]);
    }

    #[test]
    fn continuations_are_whitespace() {
        let ast = parse_shell("apt-get update \\\n    && apt-get install \\\n      wget");
        let and = top(&ast);
        assert_eq!(ast.tree.kind(and), NodeKind::ScAnd);
        let second = ast.tree.children(and)[1];
        assert_eq!(words(&ast, second), ["apt-get", "install", "wget"]);
    }

    #[test]
    fn continuation_inside_a_word_joins_it() {
        let ast = parse_shell("apt-get ins\\\ntall x");
        assert_eq!(words(&ast, top(&ast)), ["apt-get", "install", "x"]);
    }

    #[test]
    fn comment_lines_in_continuations_are_dropped() {
        let ast = parse_shell("apt-get update \\\n  # comment && rm -rf /\n  && apt-get install x");
        let and = top(&ast);
        assert_eq!(ast.tree.kind(and), NodeKind::ScAnd);
        assert_eq!(ast.tree.children(and).len(), 2);
    }

    #[test]
    fn semicolons_make_a_sequence() {
        let ast = parse_shell("a; b && c; d");
        let seq = top(&ast);
        assert_eq!(ast.tree.kind(seq), NodeKind::ScSeq);
        assert_eq!(
            kinds_under(&ast, seq),
            vec![
                NodeKind::ScSimpleCommand,
                NodeKind::ScAnd,
                NodeKind::ScSimpleCommand
            ]
        );
    }

    #[test]
    fn redirections_and_pipelines() {
        let ast = parse_shell("echo 'gem: --no-document' >> /etc/gemrc 2>&1 | tee x");
        let pipe = top(&ast);
        assert_eq!(ast.tree.kind(pipe), NodeKind::ScPipeline);
        let echo = ast.tree.children(pipe)[0];
        assert_eq!(
            kinds_under(&ast, echo),
            vec![
                NodeKind::ScWord,
                NodeKind::ScWord,
                NodeKind::ScRedirection,
                NodeKind::ScRedirection
            ]
        );
        let redir = ast.tree.children(echo)[2];
        assert_eq!(ast.tree.value(redir), Some(">>"));
    }

    #[test]
    fn backticks_are_command_substitutions() {
        let ast = parse_shell("cd `mktemp -d`");
        let cmd = top(&ast);
        let word = ast.tree.children(cmd)[1];
        let subst = ast.tree.children(word)[0];
        assert_eq!(ast.tree.kind(subst), NodeKind::ScCommandSubstitution);
        assert!(ast.tree.attrs(subst).backtick);
        assert_eq!(
            ast.tree.kind(ast.tree.children(subst)[0]),
            NodeKind::ScSimpleCommand
        );
    }

    #[test]
    fn unsupported_statement_degrades_locally() {
        let ast = parse_shell("apt-get update && diff <(ls a) <(ls b) && rm -rf /tmp/x");
        let and = top(&ast);
        assert_eq!(
            kinds_under(&ast, and),
            vec![
                NodeKind::ScSimpleCommand,
                NodeKind::ScUnparsed,
                NodeKind::ScSimpleCommand
            ]
        );
        assert!(ast.warnings.is_empty());
    }

    #[test]
    fn unterminated_quote_degrades_everything() {
        let ast = parse_shell("echo 'oops && rm x");
        assert_eq!(kinds_under(&ast, ast.root()), vec![NodeKind::ScUnparsed]);
        assert_eq!(ast.warnings.len(), 1);
    }

    #[test]
    fn for_and_case_and_while() {
        for src in [
            "for f in a b c; do echo $f; done",
            "while true; do sleep 1; done",
            "case \"$x\" in a|b) echo ab ;; *) echo other ;; esac",
            "{ echo a; echo b; } > log",
            "f() { echo hi; }",
        ] {
            let ast = parse_shell(src);
            assert_eq!(ast.tree.kind(top(&ast)), NodeKind::ScCompound, "{src}");
        }
    }

    #[test]
    fn subshell() {
        let ast = parse_shell("(cd /x && make) && rm -rf /x");
        let and = top(&ast);
        assert_eq!(ast.tree.kind(ast.tree.children(and)[0]), NodeKind::ScSubshell);
    }

    #[test]
    fn globs_and_expansions_are_flagged() {
        let ast = parse_shell("rm -rf /tmp/firefox.* \"$DIR\" '/x/*'");
        let cmd = top(&ast);
        let kids = ast.tree.children(cmd);
        assert!(ast.tree.attrs(kids[2]).has_glob);
        assert!(ast.tree.attrs(kids[3]).has_expansion);
        assert!(!ast.tree.attrs(kids[4]).has_glob);
    }

    #[test]
    fn heredoc_in_shell_mode() {
        let src = "cat <<EOF > /etc/x\nline && not a command\nEOF\necho done";
        let ast = parse_shell_with(src, Continuation::Shell);
        let seq = top(&ast);
        assert_eq!(ast.tree.kind(seq), NodeKind::ScSeq);
        assert_eq!(ast.tree.children(seq).len(), 2);
    }

    #[test]
    fn trailing_comment_is_trivia() {
        let ast = parse_shell("pip install x # install things");
        assert_eq!(words(&ast, top(&ast)), ["pip", "install", "x"]);
    }

    #[test]
    fn conditional_and_arithmetic_are_opaque_compounds() {
        let ast = parse_shell("if [[ -z \"$R\" ]] ; then npm install -g yarn ; fi && (( n += 1 ))");
        assert!(ast.warnings.is_empty(), "{:?}", ast.warnings);
        let kinds: Vec<_> = ast
            .tree
            .descendants(ast.root())
            .map(|n| ast.tree.kind(n))
            .collect();
        assert!(!kinds.contains(&NodeKind::ScUnparsed));
        assert_eq!(kinds.iter().filter(|k| **k == NodeKind::ScCompound).count(), 3);
    }

    #[test]
    fn double_paren_subshell() {
        let ast = parse_shell("((cat /etc/os-release | grep alpine) && apk add x || true) && cargo build");
        let kinds: Vec<_> = ast
            .tree
            .descendants(ast.root())
            .map(|n| ast.tree.kind(n))
            .collect();
        assert!(!kinds.contains(&NodeKind::ScUnparsed));
        assert_eq!(kinds.iter().filter(|k| **k == NodeKind::ScSubshell).count(), 2);
    }
}
