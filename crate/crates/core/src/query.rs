//! Declarative node queries over the unified tree.
//!
//! A [`NodePattern`] selects nodes by kind or label, optionally filtered by
//! a predicate on the word value, and then requires (or forbids) other
//! patterns to match inside the node, before it, or after it. Before and
//! after are decided at statement granularity within the pattern's scope.

use std::collections::{BTreeMap, HashMap};

use crate::labels::Label;
use crate::tree::{NodeId, NodeKind, Tree};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Target {
    Kind(NodeKind),
    Label(Label),
}

/// Predicate on a node's cooked value.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ValuePred {
    Exact(String),
    Prefix(String),
    Suffix(String),
    /// The value matches this shell glob.
    Glob(String),
    Contains(String),
    /// The value, read as an `rm` operand, removes `target`: equal paths,
    /// a glob matching it, or (when the enclosing command carries
    /// `recursive`) a parent directory.
    Covers {
        target: String,
        recursive: Option<Label>,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Relation {
    InNode,
    Before,
    After,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Polarity {
    MustExist,
    MustNotExist,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Scope {
    /// The whole tree.
    Root,
    /// The nearest enclosing node of this kind; nodes without one never
    /// match.
    Enclosing(NodeKind),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Consequent {
    pub relation: Relation,
    pub pattern: NodePattern,
    pub polarity: Polarity,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NodePattern {
    pub target: Target,
    pub value: Option<ValuePred>,
    pub consequents: Vec<Consequent>,
    /// Named sub-patterns bound to their first match inside the node.
    pub bindings: Vec<(&'static str, NodePattern)>,
    pub scope: Scope,
}

impl NodePattern {
    pub fn label(name: &'static str) -> Self {
        Self::new(Target::Label(Label::of(name)))
    }

    pub fn kind(kind: NodeKind) -> Self {
        Self::new(Target::Kind(kind))
    }

    fn new(target: Target) -> Self {
        NodePattern {
            target,
            value: None,
            consequents: Vec::new(),
            bindings: Vec::new(),
            scope: Scope::Enclosing(NodeKind::DockerRun),
        }
    }

    pub fn value(mut self, pred: ValuePred) -> Self {
        self.value = Some(pred);
        self
    }

    pub fn scope(mut self, scope: Scope) -> Self {
        self.scope = scope;
        self
    }

    pub fn bind(mut self, name: &'static str, pattern: NodePattern) -> Self {
        self.bindings.push((name, pattern));
        self
    }

    pub fn with(mut self, relation: Relation, pattern: NodePattern, polarity: Polarity) -> Self {
        self.consequents.push(Consequent {
            relation,
            pattern,
            polarity,
        });
        self
    }

    pub fn has(self, pattern: NodePattern) -> Self {
        self.with(Relation::InNode, pattern, Polarity::MustExist)
    }

    pub fn lacks(self, pattern: NodePattern) -> Self {
        self.with(Relation::InNode, pattern, Polarity::MustNotExist)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Match {
    pub node: NodeId,
    pub scope: NodeId,
    pub bindings: BTreeMap<&'static str, NodeId>,
}

/// All matches of `pattern` under `root`, in document order. Nothing
/// inside an `SC-UNPARSED` region ever matches.
pub fn find_all(tree: &Tree, root: NodeId, pattern: &NodePattern) -> Vec<Match> {
    candidates(tree, root)
        .filter_map(|n| match_at(tree, n, pattern))
        .collect()
}

/// Pre-order nodes under `root`, skipping unparsed subtrees.
fn candidates(tree: &Tree, root: NodeId) -> impl Iterator<Item = NodeId> + '_ {
    let mut stack = vec![root];
    std::iter::from_fn(move || {
        let n = stack.pop()?;
        if tree.kind(n) != NodeKind::ScUnparsed {
            stack.extend(tree.children(n).iter().rev());
        }
        Some(n)
    })
}

fn scope_of(tree: &Tree, node: NodeId, scope: Scope) -> Option<NodeId> {
    match scope {
        Scope::Root => Some(tree.root()),
        Scope::Enclosing(kind) => tree.enclosing(node, kind),
    }
}

fn local_match(tree: &Tree, node: NodeId, pattern: &NodePattern) -> bool {
    let target = match &pattern.target {
        Target::Kind(k) => tree.kind(node) == *k,
        Target::Label(l) => tree.has_label(node, *l),
    };
    target
        && match &pattern.value {
            None => true,
            Some(pred) => match tree.value(node) {
                Some(v) => value_matches(tree, node, v, pred),
                None => false,
            },
        }
}

/// Tests `pattern` at `node`, including consequents and bindings.
pub fn match_at(tree: &Tree, node: NodeId, pattern: &NodePattern) -> Option<Match> {
    if !local_match(tree, node, pattern) {
        return None;
    }
    let scope = scope_of(tree, node, pattern.scope)?;
    let anchor = Match {
        node,
        scope,
        bindings: BTreeMap::new(),
    };
    for c in &pattern.consequents {
        let found = holds(tree, c.relation, &c.pattern, &anchor, scope);
        if found != (c.polarity == Polarity::MustExist) {
            return None;
        }
    }
    let mut bindings = BTreeMap::new();
    let region = in_node_region(tree, node);
    for (name, sub) in &pattern.bindings {
        let bound = candidates(tree, region).find(|&n| match_at(tree, n, sub).is_some())?;
        bindings.insert(*name, bound);
    }
    Some(Match {
        node,
        scope,
        bindings,
    })
}

/// The subtree searched by `inNode`: a word stands for its whole command.
fn in_node_region(tree: &Tree, node: NodeId) -> NodeId {
    if tree.kind(node) == NodeKind::ScWord {
        tree.enclosing(node, NodeKind::ScSimpleCommand).unwrap_or(node)
    } else {
        node
    }
}

/// The statement containing `node`: its nearest enclosing simple command,
/// subshell, compound or unparsed region.
pub fn statement_of(tree: &Tree, node: NodeId) -> Option<NodeId> {
    std::iter::once(node)
        .chain(tree.ancestors(node))
        .find(|&n| tree.kind(n).is_statement())
}

/// Whether `pattern` matches in the given relation to `anchor`, looking
/// only inside `scope`.
pub fn holds(tree: &Tree, relation: Relation, pattern: &NodePattern, anchor: &Match, scope: NodeId) -> bool {
    match relation {
        Relation::InNode => {
            let region = in_node_region(tree, anchor.node);
            candidates(tree, region).any(|n| match_at(tree, n, pattern).is_some())
        }
        Relation::Before | Relation::After => {
            let Some(own) = statement_of(tree, anchor.node) else {
                return false;
            };
            let order: HashMap<NodeId, usize> =
                candidates(tree, scope).enumerate().map(|(i, n)| (n, i)).collect();
            let Some(&own_pos) = order.get(&own) else {
                return false;
            };
            candidates(tree, scope).any(|n| {
                let Some(stmt) = statement_of(tree, n) else {
                    return false;
                };
                if stmt == own || tree.is_ancestor_of(stmt, own) || tree.is_ancestor_of(own, stmt) {
                    return false;
                }
                let Some(&pos) = order.get(&stmt) else {
                    return false;
                };
                let side = match relation {
                    Relation::Before => pos < own_pos,
                    _ => pos > own_pos,
                };
                side && match_at(tree, n, pattern).is_some()
            })
        }
    }
}

// ---- value predicates ------------------------------------------------------

fn value_matches(tree: &Tree, node: NodeId, value: &str, pred: &ValuePred) -> bool {
    match pred {
        ValuePred::Exact(s) => value == s,
        ValuePred::Prefix(s) => value.starts_with(s.as_str()),
        ValuePred::Suffix(s) => value.ends_with(s.as_str()),
        ValuePred::Glob(g) => glob_match(g, value),
        ValuePred::Contains(s) => value.contains(s.as_str()),
        ValuePred::Covers { target, recursive } => {
            let recursive = match recursive {
                None => true,
                Some(flag) => {
                    let cmd = in_node_region(tree, node);
                    candidates(tree, cmd).any(|n| tree.has_label(n, *flag))
                }
            };
            let is_glob = tree.attrs(node).has_glob;
            covers(value, is_glob, target, recursive)
        }
    }
}

/// Normalizes a path for comparison: `${X}` becomes `$X`, `./` prefixes,
/// duplicate and trailing slashes go away.
pub fn normalize_path(path: &str) -> String {
    let mut out = String::with_capacity(path.len());
    let mut rest = path;
    while let Some(i) = rest.find("${") {
        out.push_str(&rest[..i]);
        let after = &rest[i + 2..];
        match after.find('}') {
            Some(j) if after[..j].bytes().all(|b| b.is_ascii_alphanumeric() || b == b'_') => {
                out.push('$');
                out.push_str(&after[..j]);
                rest = &after[j + 1..];
            }
            _ => {
                out.push_str("${");
                rest = after;
            }
        }
    }
    out.push_str(rest);
    let absolute = out.starts_with('/');
    let parts: Vec<&str> = out.split('/').filter(|p| !p.is_empty() && *p != ".").collect();
    let joined = parts.join("/");
    if absolute {
        format!("/{joined}")
    } else {
        joined
    }
}

/// Whether `rm <operand>` removes `target`. `operand_is_glob` says the
/// operand's glob characters are unquoted. A target ending in `/*` stands
/// for the contents of its directory, and so does a recursive `dir/*`
/// operand for a plain directory target.
pub fn covers(operand: &str, operand_is_glob: bool, target: &str, recursive: bool) -> bool {
    let target = normalize_path(target);
    let alternatives = if operand_is_glob {
        expand_braces(operand)
    } else {
        vec![operand.to_string()]
    };
    alternatives.iter().any(|op| {
        let op = normalize_path(op);
        if op == target {
            return true;
        }
        if op.is_empty() || op == "/" && !recursive {
            return false;
        }
        // Fixed directory prefix of the target, before any glob segment.
        let fixed: Vec<&str> = target
            .split('/')
            .take_while(|seg| !seg.contains(['*', '?', '[']))
            .collect();
        let fixed = fixed.join("/");
        let target_is_glob = fixed.len() < target.len();
        if operand_is_glob && !target_is_glob && glob_match(&op, &target) {
            return true;
        }
        if !recursive {
            return false;
        }
        // `rm -r dir/*` empties the directory
        if operand_is_glob && !target_is_glob && op.strip_suffix("/*") == Some(target.as_str()) {
            return true;
        }
        // A parent directory of the target, removed recursively.
        let mut dir = fixed.as_str();
        if !target_is_glob {
            dir = parent(dir);
        }
        loop {
            if dir.is_empty() {
                return false;
            }
            if op == dir || operand_is_glob && glob_match(&op, dir) {
                return true;
            }
            if dir == "/" {
                return false;
            }
            dir = parent(dir);
        }
    })
}

fn parent(path: &str) -> &str {
    match path.rfind('/') {
        Some(0) if path.len() > 1 => "/",
        Some(0) => "",
        Some(i) => &path[..i],
        None => "",
    }
}

/// Expands `{a,b}` alternatives, as the shell does before globbing.
pub fn expand_braces(word: &str) -> Vec<String> {
    let bytes = word.as_bytes();
    let Some(open) = word.find('{') else {
        return vec![word.to_string()];
    };
    let mut depth = 0;
    let mut commas = Vec::new();
    let mut close = None;
    for (i, &b) in bytes.iter().enumerate().skip(open) {
        match b {
            b'{' => depth += 1,
            b'}' => {
                depth -= 1;
                if depth == 0 {
                    close = Some(i);
                    break;
                }
            }
            b',' if depth == 1 => commas.push(i),
            _ => {}
        }
    }
    let (Some(close), false) = (close, commas.is_empty()) else {
        return vec![word.to_string()];
    };
    let mut bounds = vec![open];
    bounds.extend(&commas);
    bounds.push(close);
    let (prefix, suffix) = (&word[..open], &word[close + 1..]);
    bounds
        .windows(2)
        .flat_map(|w| expand_braces(&format!("{prefix}{}{suffix}", &word[w[0] + 1..w[1]])))
        .collect()
}

/// Shell glob matching: `*` and `?` never match `/`; `[...]` classes with
/// ranges and `!`/`^` negation.
pub fn glob_match(pattern: &str, text: &str) -> bool {
    let p: Vec<char> = pattern.chars().collect();
    let t: Vec<char> = text.chars().collect();
    glob_at(&p, &t)
}

fn glob_at(p: &[char], t: &[char]) -> bool {
    let (mut pi, mut ti) = (0, 0);
    let mut star: Option<(usize, usize)> = None;
    while ti < t.len() {
        if pi < p.len() {
            match p[pi] {
                '*' => {
                    star = Some((pi, ti));
                    pi += 1;
                    continue;
                }
                '?' if t[ti] != '/' => {
                    pi += 1;
                    ti += 1;
                    continue;
                }
                '[' => {
                    if let Some((matched, len)) = class_match(&p[pi..], t[ti]) {
                        if matched {
                            pi += len;
                            ti += 1;
                            continue;
                        }
                    } else if t[ti] == '[' {
                        pi += 1;
                        ti += 1;
                        continue;
                    }
                }
                c if c == t[ti] && c != '?' => {
                    pi += 1;
                    ti += 1;
                    continue;
                }
                _ => {}
            }
        }
        match star {
            Some((sp, st)) if t[st] != '/' => {
                star = Some((sp, st + 1));
                pi = sp + 1;
                ti = st + 1;
            }
            _ => return false,
        }
    }
    p[pi..].iter().all(|&c| c == '*')
}

/// Matches a `[...]` class at the start of `p`. Returns whether `c` is in
/// it and the class length, or `None` when the bracket is unterminated.
fn class_match(p: &[char], c: char) -> Option<(bool, usize)> {
    let mut i = 1;
    let negate = matches!(p.get(1), Some('!' | '^'));
    if negate {
        i += 1;
    }
    let start = i;
    let mut found = false;
    while i < p.len() {
        if p[i] == ']' && i > start {
            return Some((found != negate && c != '/', i + 1));
        }
        if i + 2 < p.len() && p[i + 1] == '-' && p[i + 2] != ']' {
            if p[i] <= c && c <= p[i + 2] {
                found = true;
            }
            i += 3;
        } else {
            if p[i] == c {
                found = true;
            }
            i += 1;
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::enrich::analyze;

    #[test]
    fn npm_cache_clean_is_found() {
        let ast = analyze("FROM node\nRUN npm cache clean\n");
        let p = NodePattern::label("SC-NPM-CACHE-CLEAN");
        assert_eq!(find_all(&ast.tree, ast.root(), &p).len(), 1);
    }

    #[test]
    fn forbidden_flag_defeats_the_match() {
        let ast = analyze("RUN npm cache clean --force\n");
        let p = NodePattern::label("SC-NPM-CACHE-CLEAN").lacks(NodePattern::label("SC-NPM-F-FORCE"));
        assert!(find_all(&ast.tree, ast.root(), &p).is_empty());
    }

    #[test]
    fn matches_come_in_document_order() {
        let ast = analyze("RUN pip install a && pip install b\n");
        let p = NodePattern::label("SC-PIP-INSTALL");
        let found = find_all(&ast.tree, ast.root(), &p);
        assert_eq!(found.len(), 2);
        let starts: Vec<_> = found
            .iter()
            .map(|m| ast.tree.span(m.node).unwrap().start)
            .collect();
        assert!(starts[0] < starts[1]);
    }

    fn lists_cleanup() -> NodePattern {
        NodePattern::label("SC-RM-PATH").value(ValuePred::Covers {
            target: "/var/lib/apt/lists/*".into(),
            recursive: Some(Label::of("SC-RM-F-RECURSIVE")),
        })
    }

    #[test]
    fn after_within_one_run() {
        let ast = analyze("RUN apt-get install -y x && rm -rf /var/lib/apt/lists/*\n");
        let anchor = &find_all(&ast.tree, ast.root(), &NodePattern::label("SC-APT-GET-INSTALL"))[0];
        assert!(holds(
            &ast.tree,
            Relation::After,
            &lists_cleanup(),
            anchor,
            anchor.scope
        ));
        assert!(!holds(
            &ast.tree,
            Relation::Before,
            &lists_cleanup(),
            anchor,
            anchor.scope
        ));
    }

    #[test]
    fn after_does_not_cross_runs() {
        let ast = analyze("RUN apt-get install -y x\nRUN rm -rf /var/lib/apt/lists/*\n");
        let anchor = &find_all(&ast.tree, ast.root(), &NodePattern::label("SC-APT-GET-INSTALL"))[0];
        assert!(!holds(
            &ast.tree,
            Relation::After,
            &lists_cleanup(),
            anchor,
            anchor.scope
        ));
    }

    #[test]
    fn in_node_flag() {
        let ast = analyze("RUN apk add --no-cache curl\n");
        let anchor = &find_all(&ast.tree, ast.root(), &NodePattern::label("SC-APK-ADD"))[0];
        let flag = NodePattern::label("SC-APK-F-NO-CACHE");
        assert!(holds(&ast.tree, Relation::InNode, &flag, anchor, anchor.scope));
    }

    #[test]
    fn unparsed_regions_hide_everything() {
        let ast = analyze("RUN echo 'unterminated && pip install x\n");
        let p = NodePattern::kind(NodeKind::ScWord);
        assert!(find_all(&ast.tree, ast.root(), &p).is_empty());
    }

    #[test]
    fn bindings_pick_the_archive() {
        let ast = analyze("RUN tar -xzf /tmp/a.tgz -C /opt\n");
        let p = NodePattern::label("SC-TAR").bind("archive", NodePattern::label("SC-TAR-ARCHIVE"));
        let m = &find_all(&ast.tree, ast.root(), &p)[0];
        assert_eq!(ast.tree.value(m.bindings["archive"]), Some("/tmp/a.tgz"));
    }

    #[test]
    fn glob_basics() {
        assert!(glob_match("/tmp/firefox.*", "/tmp/firefox.tar.bz2"));
        assert!(!glob_match("/tmp/*", "/tmp/a/b"));
        assert!(glob_match("*.asc", "node.tar.gz.asc"));
        assert!(glob_match("a?c", "abc"));
        assert!(glob_match("[a-c]x", "bx"));
        assert!(!glob_match("[!a-c]x", "bx"));
        assert!(glob_match("lit[", "lit["));
    }

    #[test]
    fn coverage_rules() {
        assert!(covers("/tmp/firefox.*", true, "/tmp/firefox.tar.bz2", true));
        assert!(covers("gsl.tgz", false, "./gsl.tgz", false));
        assert!(covers("/tmp", false, "/tmp/x.tgz", true));
        assert!(!covers("/tmp", false, "/tmp/x.tgz", false));
        assert!(covers("/var/lib/apt/lists/*", true, "/var/lib/apt/lists/*", true));
        assert!(covers("/var/lib/apt/lists", false, "/var/lib/apt/lists/*", true));
        assert!(!covers(
            "/var/lib/apt/lists/partial",
            false,
            "/var/lib/apt/lists/*",
            true
        ));
        assert!(covers("${TMP}", false, "$TMP", true));
        assert!(covers("/tmp/{a,b}.tgz", true, "/tmp/b.tgz", false));
        assert!(!covers("/tmp/*.zip", true, "/tmp/a.tgz", true));
        assert!(covers("/usr/src/", false, "/usr/src/app", true));
    }

    #[test]
    fn brace_expansion() {
        assert_eq!(expand_braces("a{b,c}d"), ["abd", "acd"]);
        assert_eq!(expand_braces("{x,y{1,2}}"), ["x", "y1", "y2"]);
        assert_eq!(expand_braces("{solo}"), ["{solo}"]);
    }
}
