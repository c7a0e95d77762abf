//! The `javascript` quoter.
//!
//! The quoted script is only tokenized. Identifier tokens that name one of
//! the variables in the syntax arguments become expression holes; all other
//! text is kept verbatim. At render time each hole is filled with the
//! JavaScript literal for the bound value, so a value always stays a single
//! literal (a string, number, array or object) however it is spelled.

use std::collections::HashMap;
use std::fmt::Write as _;

use crate::content::QuotationContent;
use crate::error::{Error, Result};
use crate::quasi::{filter_qq_dict, QuoteCall, Quoter};
use crate::term::{Term, Var, VarDict, VarId, CURLY, NIL};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum JsTokenKind {
    Identifier,
    Keyword,
    Number,
    String,
    Punctuator,
    Regex,
    Comment,
    Whitespace,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct JsToken {
    pub kind: JsTokenKind,
    pub lexeme: String,
    /// Character offsets into the payload; `end` is exclusive.
    pub start: usize,
    pub end: usize,
}

/// A tokenizer error at a character offset of the payload.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct JsLexError {
    pub offset: usize,
    pub message: String,
}

const KEYWORDS: &[&str] = &[
    "break",
    "case",
    "catch",
    "continue",
    "debugger",
    "default",
    "delete",
    "do",
    "else",
    "finally",
    "for",
    "function",
    "if",
    "in",
    "instanceof",
    "new",
    "return",
    "switch",
    "this",
    "throw",
    "try",
    "typeof",
    "var",
    "void",
    "while",
    "with",
    "class",
    "const",
    "enum",
    "export",
    "extends",
    "import",
    "super",
    "implements",
    "interface",
    "let",
    "package",
    "private",
    "protected",
    "public",
    "static",
    "yield",
    "null",
    "true",
    "false",
];

const PUNCTUATORS: &[&str] = &[
    "{", "}", "(", ")", "[", "]", ".", ";", ",", "<", ">", "<=", ">=", "==", "!=", "===", "!==",
    "+", "-", "*", "%", "++", "--", "<<", ">>", ">>>", "&", "|", "^", "!", "~", "&&", "||", "?",
    ":", "=", "+=", "-=", "*=", "%=", "<<=", ">>=", ">>>=", "&=", "|=", "^=", "/", "/=",
];

fn is_line_terminator(c: char) -> bool {
    matches!(c, '\n' | '\r' | '\u{2028}' | '\u{2029}')
}

fn is_js_whitespace(c: char) -> bool {
    c.is_whitespace() || c == '\u{feff}'
}

fn is_ident_start(c: char) -> bool {
    c == '$' || c == '_' || c.is_alphabetic()
}

fn is_ident_part(c: char) -> bool {
    is_ident_start(c) || c.is_alphanumeric()
}

struct JsLexer<'a> {
    chars: &'a [char],
    i: usize,
}

impl JsLexer<'_> {
    fn peek_at(&self, n: usize) -> Option<char> {
        self.chars.get(self.i + n).copied()
    }

    fn err(&self, offset: usize, message: &str) -> JsLexError {
        JsLexError {
            offset,
            message: message.into(),
        }
    }

    fn take_while(&mut self, pred: impl Fn(char) -> bool) {
        while self.peek_at(0).is_some_and(&pred) {
            self.i += 1;
        }
    }

    fn number(&mut self, start: usize) -> Result<(), JsLexError> {
        let hex = self.peek_at(0) == Some('0')
            && matches!(self.peek_at(1), Some('x' | 'X'))
            && self.peek_at(2).is_some_and(|c| c.is_ascii_hexdigit());
        if hex {
            self.i += 2;
            self.take_while(|c| c.is_ascii_hexdigit());
        } else {
            self.take_while(|c| c.is_ascii_digit());
            if self.peek_at(0) == Some('.') {
                self.i += 1;
                self.take_while(|c| c.is_ascii_digit());
            }
            if matches!(self.peek_at(0), Some('e' | 'E')) {
                let sign = usize::from(matches!(self.peek_at(1), Some('+' | '-')));
                if !self.peek_at(1 + sign).is_some_and(|c| c.is_ascii_digit()) {
                    return Err(self.err(start, "malformed exponent in numeric literal"));
                }
                self.i += 1 + sign;
                self.take_while(|c| c.is_ascii_digit());
            }
        }
        if self.peek_at(0).is_some_and(is_ident_part) {
            return Err(self.err(
                self.i,
                "identifier starts immediately after numeric literal",
            ));
        }
        Ok(())
    }

    fn string(&mut self, start: usize, quote: char) -> Result<(), JsLexError> {
        self.i += 1;
        loop {
            match self.peek_at(0) {
                None => return Err(self.err(start, "unterminated string literal")),
                Some(c) if c == quote => {
                    self.i += 1;
                    return Ok(());
                }
                Some('\\') => {
                    if self.peek_at(1).is_none() {
                        return Err(self.err(start, "unterminated string literal"));
                    }
                    // "\r\n" continues a line as one unit
                    let crlf = self.peek_at(1) == Some('\r') && self.peek_at(2) == Some('\n');
                    self.i += if crlf { 3 } else { 2 };
                }
                Some(c) if is_line_terminator(c) => {
                    return Err(self.err(start, "unterminated string literal"));
                }
                Some(_) => self.i += 1,
            }
        }
    }

    fn regex(&mut self, start: usize) -> Result<(), JsLexError> {
        self.i += 1;
        let mut in_class = false;
        loop {
            match self.peek_at(0) {
                None => return Err(self.err(start, "unterminated regular expression literal")),
                Some(c) if is_line_terminator(c) => {
                    return Err(self.err(start, "unterminated regular expression literal"));
                }
                Some('\\') => {
                    if self.peek_at(1).is_none_or(is_line_terminator) {
                        return Err(self.err(start, "unterminated regular expression literal"));
                    }
                    self.i += 2;
                }
                Some('[') => {
                    in_class = true;
                    self.i += 1;
                }
                Some(']') => {
                    in_class = false;
                    self.i += 1;
                }
                Some('/') if !in_class => {
                    self.i += 1;
                    self.take_while(is_ident_part);
                    return Ok(());
                }
                Some(_) => self.i += 1,
            }
        }
    }

    fn punctuator(&mut self, start: usize) -> Result<(), JsLexError> {
        let len = PUNCTUATORS
            .iter()
            .filter(|p| {
                p.chars()
                    .enumerate()
                    .all(|(k, c)| self.peek_at(k) == Some(c))
            })
            .map(|p| p.chars().count())
            .max();
        match len {
            Some(n) => {
                self.i += n;
                Ok(())
            }
            None if self.peek_at(0) == Some('`') => {
                Err(self.err(start, "template literals are not supported"))
            }
            None => Err(self.err(
                start,
                &format!("unexpected character {:?}", self.chars[start]),
            )),
        }
    }
}

/// Whether a `/` after `prev` starts a regular expression literal.
fn regex_allowed(prev: Option<&JsToken>) -> bool {
    match prev {
        None => true,
        Some(t) => match t.kind {
            JsTokenKind::Punctuator => !matches!(t.lexeme.as_str(), ")" | "]" | "}"),
            JsTokenKind::Keyword => true,
            _ => false,
        },
    }
}

/// Splits `payload` into tokens whose lexemes concatenate to `payload`.
pub fn tokenize_js(payload: &str) -> Result<Vec<JsToken>, JsLexError> {
    let chars: Vec<char> = payload.chars().collect();
    let mut lx = JsLexer {
        chars: &chars,
        i: 0,
    };
    let mut tokens: Vec<JsToken> = Vec::new();
    let mut prev_significant: Option<usize> = None;

    while let Some(c) = lx.peek_at(0) {
        let start = lx.i;
        let kind = if is_js_whitespace(c) {
            lx.take_while(is_js_whitespace);
            JsTokenKind::Whitespace
        } else if c == '/' && lx.peek_at(1) == Some('/') {
            lx.take_while(|c| !is_line_terminator(c));
            JsTokenKind::Comment
        } else if c == '/' && lx.peek_at(1) == Some('*') {
            lx.i += 2;
            loop {
                if lx.peek_at(0).is_none() {
                    return Err(lx.err(start, "unterminated comment"));
                }
                if lx.peek_at(0) == Some('*') && lx.peek_at(1) == Some('/') {
                    lx.i += 2;
                    break;
                }
                lx.i += 1;
            }
            JsTokenKind::Comment
        } else if c == '/' && regex_allowed(prev_significant.map(|k| &tokens[k])) {
            lx.regex(start)?;
            JsTokenKind::Regex
        } else if is_ident_start(c) {
            lx.take_while(is_ident_part);
            let word: String = chars[start..lx.i].iter().collect();
            if KEYWORDS.contains(&word.as_str()) {
                JsTokenKind::Keyword
            } else {
                JsTokenKind::Identifier
            }
        } else if c.is_ascii_digit()
            || (c == '.' && lx.peek_at(1).is_some_and(|d| d.is_ascii_digit()))
        {
            lx.number(start)?;
            JsTokenKind::Number
        } else if c == '"' || c == '\'' {
            lx.string(start, c)?;
            JsTokenKind::String
        } else {
            lx.punctuator(start)?;
            JsTokenKind::Punctuator
        };
        if !matches!(kind, JsTokenKind::Whitespace | JsTokenKind::Comment) {
            prev_significant = Some(tokens.len());
        }
        tokens.push(JsToken {
            kind,
            lexeme: chars[start..lx.i].iter().collect(),
            start,
            end: lx.i,
        });
    }
    Ok(tokens)
}

/// Tokenizes quoted material, reporting errors at absolute positions.
pub fn tokenize_js_content(content: &QuotationContent) -> Result<Vec<JsToken>> {
    tokenize_js(content.characters()).map_err(|e| content.error_at(e.offset, e.message))
}

#[derive(Debug, Clone, PartialEq)]
pub enum JsPart {
    Literal(String),
    ExprHole(Var),
}

/// Replaces identifier tokens named in `dict` by holes and joins the text
/// between them into literals.
pub fn partition_js(tokens: &[JsToken], dict: &VarDict) -> Vec<JsPart> {
    let mut parts = Vec::new();
    let mut literal = String::new();
    for tok in tokens {
        let var = match tok.kind {
            JsTokenKind::Identifier => dict.get(&tok.lexeme),
            _ => None,
        };
        match var {
            Some(var) => {
                if !literal.is_empty() {
                    parts.push(JsPart::Literal(std::mem::take(&mut literal)));
                }
                parts.push(JsPart::ExprHole(var.clone()));
            }
            None => literal.push_str(&tok.lexeme),
        }
    }
    if !literal.is_empty() {
        parts.push(JsPart::Literal(literal));
    }
    parts
}

/// Values that can fill an expression hole.
#[derive(Debug, Clone, PartialEq)]
pub enum JsValue {
    Int(i64),
    Float(f64),
    Str(String),
    True,
    False,
    Null,
    List(Vec<JsValue>),
    Object(Vec<(String, JsValue)>),
}

impl JsValue {
    /// Converts a host term: numbers, atoms and strings, `@true`,
    /// `@false`, `@null`, lists, `object(NameValueList)` and
    /// `{Name:Value, ...}`.
    pub fn from_term(term: &Term) -> Result<JsValue> {
        match term {
            Term::Int(i) => Ok(JsValue::Int(*i)),
            Term::Float(x) => Ok(JsValue::Float(*x)),
            Term::Str(s) => Ok(JsValue::Str(s.clone())),
            Term::Atom(a) if a == NIL => Ok(JsValue::List(Vec::new())),
            Term::Atom(a) if a == CURLY => Ok(JsValue::Object(Vec::new())),
            Term::Atom(a) => Ok(JsValue::Str(a.clone())),
            Term::Var(v) => Err(Error::Unbound(v.display_name())),
            Term::Compound(f, args) => match (f.as_str(), args.as_slice()) {
                ("@", [Term::Atom(a)]) if a == "true" => Ok(JsValue::True),
                ("@", [Term::Atom(a)]) if a == "false" => Ok(JsValue::False),
                ("@", [Term::Atom(a)]) if a == "null" => Ok(JsValue::Null),
                (".", [_, _]) => {
                    let items = term
                        .as_list()
                        .ok_or_else(|| Error::Value(format!("partial list {term}")))?;
                    items
                        .into_iter()
                        .map(JsValue::from_term)
                        .collect::<Result<_>>()
                        .map(JsValue::List)
                }
                ("object", [list]) => {
                    let items = list.as_list().ok_or_else(|| {
                        Error::Value(format!("object/1 needs a list, got {list}"))
                    })?;
                    let mut out = Vec::new();
                    for item in items {
                        let (key, value) = match item {
                            Term::Compound(op, kv) if (op == "=" || op == "-") && kv.len() == 2 => {
                                (key_text(&kv[0])?, &kv[1])
                            }
                            Term::Compound(name, v) if v.len() == 1 => (name.clone(), &v[0]),
                            other => {
                                return Err(Error::Value(format!(
                                    "object member must be Name=Value, got {other}"
                                )))
                            }
                        };
                        out.push((key, JsValue::from_term(value)?));
                    }
                    object(out)
                }
                (CURLY, [inner]) => {
                    let mut out = Vec::new();
                    for member in conjuncts(inner) {
                        match member {
                            Term::Compound(op, kv) if op == ":" && kv.len() == 2 => {
                                out.push((key_text(&kv[0])?, JsValue::from_term(&kv[1])?));
                            }
                            other => {
                                return Err(Error::Value(format!(
                                    "object member must be Name:Value, got {other}"
                                )))
                            }
                        }
                    }
                    object(out)
                }
                _ => Err(Error::Value(format!("cannot convert {term} to JavaScript"))),
            },
            Term::Placeholder(_) => {
                Err(Error::Value(format!("cannot convert {term} to JavaScript")))
            }
        }
    }
}

fn conjuncts(term: &Term) -> Vec<&Term> {
    match term {
        Term::Compound(f, args) if f == "," && args.len() == 2 => {
            let mut out = conjuncts(&args[0]);
            out.extend(conjuncts(&args[1]));
            out
        }
        other => vec![other],
    }
}

fn key_text(term: &Term) -> Result<String> {
    match term {
        Term::Atom(a) => Ok(a.clone()),
        Term::Str(s) => Ok(s.clone()),
        other => Err(Error::Value(format!(
            "object key must be text, got {other}"
        ))),
    }
}

fn object(pairs: Vec<(String, JsValue)>) -> Result<JsValue> {
    for (i, (k, _)) in pairs.iter().enumerate() {
        if pairs[..i].iter().any(|(other, _)| other == k) {
            return Err(Error::Value(format!("duplicate object key {k}")));
        }
    }
    Ok(JsValue::Object(pairs))
}

/// Writes `s` as a double-quoted JavaScript string that cannot end a
/// surrounding `<script>` element.
pub fn js_string_literal(out: &mut String, s: &str) {
    out.push('"');
    for c in s.chars() {
        match c {
            '\\' => out.push_str("\\\\"),
            '"' => out.push_str("\\\""),
            '\n' => out.push_str("\\n"),
            '\r' => out.push_str("\\r"),
            '\t' => out.push_str("\\t"),
            '<' | '>' | '&' | '\u{2028}' | '\u{2029}' => {
                let _ = write!(out, "\\u{:04X}", c as u32);
            }
            c if c.is_control() => {
                let _ = write!(out, "\\u{:04X}", c as u32);
            }
            c => out.push(c),
        }
    }
    out.push('"');
}

/// The JavaScript literal for `value`. Negative numbers are parenthesized
/// so that they stay one operand next to any operator.
pub fn render_js_value(value: &JsValue) -> Result<String> {
    let mut out = String::new();
    render_into(&mut out, value)?;
    Ok(out)
}

fn render_into(out: &mut String, value: &JsValue) -> Result<()> {
    match value {
        JsValue::Int(i) if *i < 0 => {
            let _ = write!(out, "({i})");
        }
        JsValue::Int(i) => {
            let _ = write!(out, "{i}");
        }
        JsValue::Float(x) if !x.is_finite() => {
            return Err(Error::Value(format!("{x} has no JavaScript literal")));
        }
        JsValue::Float(x) if x.is_sign_negative() => {
            let _ = write!(out, "({x:?})");
        }
        JsValue::Float(x) => {
            let _ = write!(out, "{x:?}");
        }
        JsValue::Str(s) => js_string_literal(out, s),
        JsValue::True => out.push_str("true"),
        JsValue::False => out.push_str("false"),
        JsValue::Null => out.push_str("null"),
        JsValue::List(items) => {
            out.push('[');
            for (i, item) in items.iter().enumerate() {
                if i > 0 {
                    out.push(',');
                }
                render_into(out, item)?;
            }
            out.push(']');
        }
        JsValue::Object(pairs) => {
            out.push('{');
            for (i, (k, v)) in pairs.iter().enumerate() {
                if i > 0 {
                    out.push(',');
                }
                js_string_literal(out, k);
                out.push(':');
                render_into(out, v)?;
            }
            out.push('}');
        }
    }
    Ok(())
}

/// Concatenates literal parts and rendered hole values.
pub fn render_script(parts: &[JsPart], bindings: &HashMap<VarId, JsValue>) -> Result<String> {
    let mut out = String::new();
    for part in parts {
        match part {
            JsPart::Literal(text) => out.push_str(text),
            JsPart::ExprHole(var) => {
                let value = bindings
                    .get(&var.id)
                    .ok_or_else(|| Error::Unbound(var.display_name()))?;
                render_into(&mut out, value)?;
            }
        }
    }
    Ok(out)
}

/// The parts as a host term `\(Parts)`: literal atoms and
/// `js_expression(Var)` items.
pub fn parts_to_term(parts: &[JsPart]) -> Term {
    let items = parts.iter().map(|p| match p {
        JsPart::Literal(t) => Term::atom(t.clone()),
        JsPart::ExprHole(v) => Term::compound("js_expression", vec![Term::Var(v.clone())]),
    });
    Term::compound("\\", vec![Term::list(items)])
}

pub fn parts_from_term(term: &Term) -> Result<Vec<JsPart>> {
    let bad = || Error::Value(format!("not a JavaScript quotation result: {term}"));
    let Term::Compound(f, args) = term else {
        return Err(bad());
    };
    if f != "\\" || args.len() != 1 {
        return Err(bad());
    }
    let items = args[0].as_list().ok_or_else(bad)?;
    items
        .into_iter()
        .map(|item| match item {
            Term::Atom(t) => Ok(JsPart::Literal(t.clone())),
            Term::Compound(f, a) if f == "js_expression" && a.len() == 1 => match &a[0] {
                Term::Var(v) => Ok(JsPart::ExprHole(v.clone())),
                _ => Err(bad()),
            },
            _ => Err(bad()),
        })
        .collect()
}

/// `{|javascript(Var, ...)||...|}`: the result is `\(Parts)`.
pub struct JsQuoter;

impl Quoter for JsQuoter {
    fn name(&self) -> &str {
        "javascript"
    }

    fn quote(&self, call: &mut QuoteCall<'_>) -> Result<Term> {
        let dict = filter_qq_dict(call.var_dict, call.args);
        let tokens = tokenize_js_content(call.content)?;
        Ok(parts_to_term(&partition_js(&tokens, &dict)))
    }
}
