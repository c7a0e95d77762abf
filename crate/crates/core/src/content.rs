//! Access to the raw material of a quasi quotation.

use crate::error::Error;
use crate::pos::SourcePos;

/// The text between `||` and `|}` together with the position of its first
/// character in the source file.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuotationContent {
    text: String,
    start: SourcePos,
}

impl QuotationContent {
    pub fn new(text: impl Into<String>, start: SourcePos) -> Self {
        QuotationContent {
            text: text.into(),
            start,
        }
    }

    /// The payload as an exact character sequence.
    pub fn characters(&self) -> &str {
        &self.text
    }

    pub fn start(&self) -> &SourcePos {
        &self.start
    }

    /// A character source whose positions are absolute file positions.
    pub fn reader(&self) -> ContentReader<'_> {
        ContentReader {
            chars: self.text.chars(),
            pos: self.start.clone(),
        }
    }

    /// Absolute position of the payload character at `offset`.
    /// Offsets past the end map to the position after the last character.
    pub fn pos_at(&self, offset: usize) -> SourcePos {
        self.start.advanced_over(self.text.chars().take(offset))
    }

    /// A syntax error located `offset` characters into the payload.
    pub fn error_at(&self, offset: usize, message: impl Into<String>) -> Error {
        Error::syntax(self.pos_at(offset), message)
    }
}

/// Yields the payload characters one at a time, tracking the source
/// position of the next character.
#[derive(Debug, Clone)]
pub struct ContentReader<'a> {
    chars: std::str::Chars<'a>,
    pos: SourcePos,
}

impl ContentReader<'_> {
    /// Position of the next character to be read.
    pub fn pos(&self) -> &SourcePos {
        &self.pos
    }

    pub fn peek(&self) -> Option<char> {
        self.chars.clone().next()
    }
}

impl Iterator for ContentReader<'_> {
    type Item = (SourcePos, char);

    fn next(&mut self) -> Option<Self::Item> {
        let c = self.chars.next()?;
        let at = self.pos.clone();
        self.pos.advance(c);
        Some((at, c))
    }
}
