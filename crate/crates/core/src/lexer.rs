//! Tokenizer for the host term syntax.
//!
//! Besides the usual Prolog tokens it knows two quasi quotation tokens:
//! `{|` opens a quotation, and once the syntax term has been tokenized the
//! sequence `||...|}` is returned as one raw token. Nothing inside the raw
//! token is interpreted; it ends at the first `|}`.

use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::pos::SourcePos;
use crate::term::{is_alnum, is_symbol_char};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TokenKind {
    Atom,
    Variable,
    Integer,
    Float,
    TextLiteral,
    Punct,
    QqOpen,
    QqBody,
    End,
}

impl fmt::Display for TokenKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            TokenKind::Atom => "atom",
            TokenKind::Variable => "variable",
            TokenKind::Integer => "integer",
            TokenKind::Float => "float",
            TokenKind::TextLiteral => "text_literal",
            TokenKind::Punct => "punct",
            TokenKind::QqOpen => "qq_open",
            TokenKind::QqBody => "qq_body",
            TokenKind::End => "end",
        })
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Token {
    pub kind: TokenKind,
    /// The source text of the token.
    pub lexeme: String,
    /// Decoded value: atom name with escapes resolved, string contents,
    /// decimal digits of an integer. Equal to `lexeme` for the rest.
    pub text: String,
    pub pos: SourcePos,
    /// Whether whitespace or a comment precedes the token.
    pub layout_before: bool,
}

impl Token {
    pub fn is_punct(&self, p: &str) -> bool {
        self.kind == TokenKind::Punct && self.lexeme == p
    }

    /// Payload of a `qq_body` token: the text between `||` and `|}`.
    pub fn qq_payload(&self) -> Option<&str> {
        if self.kind != TokenKind::QqBody {
            return None;
        }
        let n = self.lexeme.len();
        Some(&self.lexeme[2..n - 2])
    }
}

pub struct Lexer {
    chars: Vec<char>,
    idx: usize,
    pos: SourcePos,
    /// Position of the `{|` whose syntax term is being tokenized.
    qq_open: Option<SourcePos>,
}

impl Lexer {
    pub fn new(input: &str, file: impl Into<Arc<str>>) -> Self {
        Lexer {
            chars: input.chars().collect(),
            idx: 0,
            pos: SourcePos::start(file),
            qq_open: None,
        }
    }

    /// Current position; after the last token this is the end of input.
    pub fn pos(&self) -> &SourcePos {
        &self.pos
    }

    fn peek_at(&self, n: usize) -> Option<char> {
        self.chars.get(self.idx + n).copied()
    }

    fn peek(&self) -> Option<char> {
        self.peek_at(0)
    }

    fn bump(&mut self) -> Option<char> {
        let c = self.peek()?;
        self.idx += 1;
        self.pos.advance(c);
        Some(c)
    }

    fn starts_with(&self, s: &str) -> bool {
        s.chars()
            .enumerate()
            .all(|(i, c)| self.peek_at(i) == Some(c))
    }

    fn slice(&self, from: usize) -> String {
        self.chars[from..self.idx].iter().collect()
    }

    /// Skips whitespace and comments; returns whether anything was skipped.
    fn skip_layout(&mut self) -> Result<bool> {
        let mut skipped = false;
        loop {
            match self.peek() {
                Some(c) if c.is_whitespace() => {
                    self.bump();
                }
                Some('%') => {
                    while let Some(c) = self.bump() {
                        if c == '\n' {
                            break;
                        }
                    }
                }
                Some('/') if self.peek_at(1) == Some('*') => {
                    let start = self.pos.clone();
                    self.bump();
                    self.bump();
                    loop {
                        if self.starts_with("*/") {
                            self.bump();
                            self.bump();
                            break;
                        }
                        if self.bump().is_none() {
                            return Err(Error::syntax(start, "unterminated block comment"));
                        }
                    }
                }
                _ => return Ok(skipped),
            }
            skipped = true;
        }
    }

    /// The next token, or `None` at end of input.
    pub fn next_token(&mut self) -> Result<Option<Token>> {
        let layout_before = self.skip_layout()?;
        let start_idx = self.idx;
        let start = self.pos.clone();
        let Some(c) = self.peek() else {
            return Ok(None);
        };
        let tok = |kind, lexeme: String, text: String| Token {
            kind,
            lexeme,
            text,
            pos: start.clone(),
            layout_before,
        };

        if self.qq_open.is_some() && self.starts_with("||") {
            return self.qq_body(start_idx, start, layout_before).map(Some);
        }
        if self.starts_with("{|") {
            self.bump();
            self.bump();
            self.qq_open = Some(start.clone());
            return Ok(Some(tok(TokenKind::QqOpen, "{|".into(), "{|".into())));
        }

        let token = match c {
            '(' | ')' | '[' | ']' | '{' | '}' | ',' | '|' => {
                self.bump();
                tok(TokenKind::Punct, c.to_string(), c.to_string())
            }
            '!' | ';' => {
                self.bump();
                tok(TokenKind::Atom, c.to_string(), c.to_string())
            }
            '0'..='9' => {
                let (kind, text) = self.number()?;
                tok(kind, self.slice(start_idx), text)
            }
            '\'' => {
                let text = self.quoted('\'', "unterminated quoted atom")?;
                tok(TokenKind::Atom, self.slice(start_idx), text)
            }
            '"' => {
                let text = self.quoted('"', "unterminated string")?;
                tok(TokenKind::TextLiteral, self.slice(start_idx), text)
            }
            c if c == '_' || c.is_uppercase() => {
                self.take_while(is_alnum);
                let s = self.slice(start_idx);
                tok(TokenKind::Variable, s.clone(), s)
            }
            c if c.is_alphabetic() => {
                self.take_while(is_alnum);
                let s = self.slice(start_idx);
                tok(TokenKind::Atom, s.clone(), s)
            }
            c if is_symbol_char(c) => {
                self.take_while(is_symbol_char);
                let s = self.slice(start_idx);
                let at_end = self.peek().is_none_or(|n| n.is_whitespace() || n == '%');
                if s == "." && at_end {
                    tok(TokenKind::End, s.clone(), s)
                } else {
                    tok(TokenKind::Atom, s.clone(), s)
                }
            }
            other => {
                return Err(Error::syntax(
                    start,
                    format!("unexpected character {other:?}"),
                ));
            }
        };
        Ok(Some(token))
    }

    fn take_while(&mut self, pred: impl Fn(char) -> bool) {
        while self.peek().is_some_and(&pred) {
            self.bump();
        }
    }

    fn qq_body(
        &mut self,
        start_idx: usize,
        start: SourcePos,
        layout_before: bool,
    ) -> Result<Token> {
        let open = self.qq_open.take().expect("inside quasi quotation");
        self.bump();
        self.bump();
        loop {
            if self.starts_with("|}") {
                self.bump();
                self.bump();
                break;
            }
            if self.bump().is_none() {
                return Err(Error::syntax(open, "unterminated quasi quotation"));
            }
        }
        let s = self.slice(start_idx);
        Ok(Token {
            kind: TokenKind::QqBody,
            lexeme: s.clone(),
            text: s,
            pos: start,
            layout_before,
        })
    }

    /// Lexes a number; integer text is returned as decimal digits.
    fn number(&mut self) -> Result<(TokenKind, String)> {
        let start = self.pos.clone();
        if self.peek() == Some('0') {
            let radix = match self.peek_at(1) {
                Some('x') => Some(16),
                Some('o') => Some(8),
                Some('b') => Some(2),
                _ => None,
            };
            if let Some(radix) = radix {
                if self.peek_at(2).is_some_and(|c| c.is_digit(radix)) {
                    self.bump();
                    self.bump();
                    let from = self.idx;
                    self.take_while(|c| c.is_digit(radix));
                    let digits = self.slice(from);
                    let value = u128::from_str_radix(&digits, radix)
                        .map_err(|_| Error::syntax(start, "integer too large"))?;
                    return Ok((TokenKind::Integer, value.to_string()));
                }
            }
            if self.peek_at(1) == Some('\'') && self.peek_at(2).is_some() {
                self.bump();
                self.bump();
                let code = match self.bump() {
                    Some('\\') => self.escape(&start)?,
                    Some('\'') if self.peek() == Some('\'') => {
                        self.bump();
                        Some('\'')
                    }
                    c => c,
                };
                let code = code.ok_or_else(|| Error::syntax(start, "invalid character code"))?;
                return Ok((TokenKind::Integer, (code as u32).to_string()));
            }
        }
        let from = self.idx;
        self.take_while(|c| c.is_ascii_digit());
        let mut kind = TokenKind::Integer;
        if self.peek() == Some('.') && self.peek_at(1).is_some_and(|c| c.is_ascii_digit()) {
            kind = TokenKind::Float;
            self.bump();
            self.take_while(|c| c.is_ascii_digit());
        }
        if matches!(self.peek(), Some('e' | 'E')) {
            let sign = usize::from(matches!(self.peek_at(1), Some('+' | '-')));
            if self.peek_at(1 + sign).is_some_and(|c| c.is_ascii_digit()) {
                kind = TokenKind::Float;
                for _ in 0..=sign {
                    self.bump();
                }
                self.take_while(|c| c.is_ascii_digit());
            }
        }
        Ok((kind, self.slice(from)))
    }

    /// Body of a quoted item after the opening quote; a doubled quote
    /// stands for itself.
    fn quoted(&mut self, quote: char, unterminated: &str) -> Result<String> {
        let start = self.pos.clone();
        self.bump();
        let mut out = String::new();
        loop {
            match self.bump() {
                None => return Err(Error::syntax(start, unterminated)),
                Some(c) if c == quote => {
                    if self.peek() == Some(quote) {
                        self.bump();
                        out.push(quote);
                    } else {
                        return Ok(out);
                    }
                }
                Some('\\') => {
                    if let Some(c) = self.escape(&start)? {
                        out.push(c);
                    }
                }
                Some(c) => out.push(c),
            }
        }
    }

    /// Decodes the escape sequence after a backslash. `None` for a line
    /// continuation.
    fn escape(&mut self, start: &SourcePos) -> Result<Option<char>> {
        let here = self.pos.clone();
        let Some(c) = self.bump() else {
            return Err(Error::syntax(start.clone(), "unterminated escape sequence"));
        };
        let simple = match c {
            'n' => '\n',
            't' => '\t',
            'r' => '\r',
            'a' => '\u{7}',
            'b' => '\u{8}',
            'f' => '\u{c}',
            'v' => '\u{b}',
            'e' => '\u{1b}',
            's' => ' ',
            '\\' | '\'' | '"' | '`' => c,
            '\n' => return Ok(None),
            'x' | '0'..='7' => {
                let radix = if c == 'x' { 16 } else { 8 };
                let mut digits = String::new();
                if c != 'x' {
                    digits.push(c);
                }
                while let Some(d) = self.peek().filter(|d| d.is_digit(radix)) {
                    digits.push(d);
                    self.bump();
                }
                if self.peek() != Some('\\') {
                    return Err(Error::syntax(here, "unterminated numeric escape"));
                }
                self.bump();
                let code = u32::from_str_radix(&digits, radix)
                    .ok()
                    .and_then(char::from_u32);
                return code
                    .map(Some)
                    .ok_or_else(|| Error::syntax(here, "invalid character code in escape"));
            }
            other => {
                return Err(Error::syntax(
                    here,
                    format!("undefined escape sequence \\{other}"),
                ));
            }
        };
        Ok(Some(simple))
    }
}

/// Tokenizes the whole input.
pub fn tokenize(input: &str, file: &str) -> Result<Vec<Token>> {
    let mut lexer = Lexer::new(input, file);
    let mut out = Vec::new();
    while let Some(tok) = lexer.next_token()? {
        out.push(tok);
    }
    Ok(out)
}
