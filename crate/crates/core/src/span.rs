//! Byte spans into a source file, with derived line/column positions.

use std::fmt;

use serde::Serialize;

use crate::error::Error;

/// A half-open byte range `[start, end)` into a file, plus the 1-based
/// line/column of both ends. Offsets are authoritative; line/column are
/// derived from them through a [`LineIndex`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct SourceSpan {
    pub start: usize,
    pub end: usize,
    pub start_line: usize,
    pub start_col: usize,
    pub end_line: usize,
    pub end_col: usize,
}

impl SourceSpan {
    pub fn len(&self) -> usize {
        self.end - self.start
    }

    pub fn is_empty(&self) -> bool {
        self.start == self.end
    }

    pub fn contains(&self, other: &SourceSpan) -> bool {
        self.start <= other.start && other.end <= self.end
    }

    pub fn contains_offset(&self, offset: usize) -> bool {
        self.start <= offset && offset < self.end
    }
}

impl fmt::Display for SourceSpan {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{}:{}-{}:{}",
            self.start_line, self.start_col, self.end_line, self.end_col
        )
    }
}

/// Maps byte offsets to line/column positions for one file.
///
/// Columns count bytes, starting at 1.
#[derive(Clone, Debug)]
pub struct LineIndex {
    line_starts: Vec<usize>,
    len: usize,
}

impl LineIndex {
    pub fn new(text: &str) -> Self {
        let mut line_starts = vec![0];
        line_starts.extend(
            text.bytes()
                .enumerate()
                .filter(|&(_, b)| b == b'\n')
                .map(|(i, _)| i + 1),
        );
        LineIndex {
            line_starts,
            len: text.len(),
        }
    }

    /// 1-based `(line, column)` of a byte offset. Offsets past the end clamp
    /// to the end of the file.
    pub fn position(&self, offset: usize) -> (usize, usize) {
        let offset = offset.min(self.len);
        let line = match self.line_starts.binary_search(&offset) {
            Ok(i) => i,
            Err(i) => i - 1,
        };
        (line + 1, offset - self.line_starts[line] + 1)
    }

    pub fn span(&self, start: usize, end: usize) -> SourceSpan {
        debug_assert!(start <= end);
        let (start_line, start_col) = self.position(start);
        let (end_line, end_col) = self.position(end);
        SourceSpan {
            start,
            end,
            start_line,
            start_col,
            end_line,
            end_col,
        }
    }

    /// Byte offset at which the given 1-based line starts.
    pub fn line_start(&self, line: usize) -> Option<usize> {
        self.line_starts.get(line.checked_sub(1)?).copied()
    }

    pub fn line_count(&self) -> usize {
        self.line_starts.len()
    }
}

/// Returns the exact bytes covered by `span`.
pub fn span_text<'a>(source: &'a str, span: &SourceSpan) -> Result<&'a str, Error> {
    source.get(span.start..span.end).ok_or(Error::SpanOutOfBounds {
        start: span.start,
        end: span.end,
        len: source.len(),
    })
}
