//! Unified diffs between an original and a repaired file.

use std::fmt::Write as _;

use similar::{ChangeTag, TextDiff};

/// Lines of context around each hunk by default.
pub const DEFAULT_CONTEXT: usize = 0;

/// A unified diff of `old` against `new`; empty when they are equal.
/// Hunk headers always carry both lengths (`@@ -21,1 +21,1 @@`).
pub fn unified_diff(old: &str, new: &str, path: &str, context: usize) -> String {
    if old == new {
        return String::new();
    }
    let path = path.trim_start_matches('/');
    let diff = TextDiff::from_lines(old, new);
    let mut out = String::new();
    let _ = writeln!(out, "--- a/{path}");
    let _ = writeln!(out, "+++ b/{path}");
    for group in diff.grouped_ops(context) {
        let (Some(first), Some(last)) = (group.first(), group.last()) else {
            continue;
        };
        let old_range = first.old_range().start..last.old_range().end;
        let new_range = first.new_range().start..last.new_range().end;
        let _ = writeln!(
            out,
            "@@ -{} +{} @@",
            range(old_range.start, old_range.len()),
            range(new_range.start, new_range.len())
        );
        for op in &group {
            for change in diff.iter_changes(op) {
                let sign = match change.tag() {
                    ChangeTag::Equal => ' ',
                    ChangeTag::Delete => '-',
                    ChangeTag::Insert => '+',
                };
                let text = change.value();
                out.push(sign);
                out.push_str(text);
                if !text.ends_with('\n') {
                    out.push_str("\n\\ No newline at end of file\n");
                }
            }
        }
    }
    out
}

/// `start,len` with 1-based `start`; an empty range names the line
/// before it.
fn range(start: usize, len: usize) -> String {
    if len == 0 {
        format!("{start},0")
    } else {
        format!("{},{len}", start + 1)
    }
}

/// Number of changed hunks in a diff produced by [`unified_diff`].
pub fn hunk_count(diff: &str) -> usize {
    diff.lines().filter(|l| l.starts_with("@@ ")).count()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn single_line_change() {
        let old = "FROM a\nRUN pip install x\nCMD y\n";
        let new = "FROM a\nRUN pip install --no-cache-dir x\nCMD y\n";
        assert_eq!(
            unified_diff(old, new, "Dockerfile", 0),
            "--- a/Dockerfile\n+++ b/Dockerfile\n@@ -2,1 +2,1 @@\n-RUN pip install x\n+RUN pip install --no-cache-dir x\n"
        );
    }

    #[test]
    fn pure_insertion_and_missing_newline() {
        let d = unified_diff("a\nb", "a\nx\nb", "f", 0);
        assert!(d.contains("@@ -1,0 +2,1 @@\n+x\n"), "{d}");
        assert_eq!(unified_diff("a\n", "a\n", "f", 0), "");
        let d = unified_diff("a", "b", "f", 0);
        assert!(
            d.contains("-a\n\\ No newline at end of file\n+b\n\\ No newline"),
            "{d}"
        );
    }
}
