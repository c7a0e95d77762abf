//! Source positions counted in characters.

use std::fmt;
use std::sync::Arc;

/// A location in a source file.
///
/// `line` and `column` are 1-based, `char_offset` is 0-based. All three
/// count Unicode scalar values, not bytes. Only `'\n'` starts a new line.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SourcePos {
    pub file: Arc<str>,
    pub line: usize,
    pub column: usize,
    pub char_offset: usize,
}

impl SourcePos {
    pub fn start(file: impl Into<Arc<str>>) -> Self {
        SourcePos {
            file: file.into(),
            line: 1,
            column: 1,
            char_offset: 0,
        }
    }

    /// The position immediately after `c`.
    pub fn advance(&mut self, c: char) {
        self.char_offset += 1;
        if c == '\n' {
            self.line += 1;
            self.column = 1;
        } else {
            self.column += 1;
        }
    }

    /// Position reached after walking over `text` from `self`.
    pub fn advanced_over(&self, text: impl IntoIterator<Item = char>) -> SourcePos {
        let mut pos = self.clone();
        for c in text {
            pos.advance(c);
        }
        pos
    }
}

impl fmt::Display for SourcePos {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}:{}", self.file, self.line, self.column)
    }
}
