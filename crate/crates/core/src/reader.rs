//! Operator precedence reader producing terms, variable dictionaries and
//! the quasi quotations found in each term.

use std::collections::HashMap;
use std::sync::Arc;

use crate::content::QuotationContent;
use crate::error::{Error, Result};
use crate::lexer::{Lexer, Token, TokenKind};
use crate::ops::{self, OpType, ARG_PRIORITY, MAX_PRIORITY};
use crate::pos::SourcePos;
use crate::term::{Term, Var, VarDict, VarId, CURLY, NIL};

/// A quasi quotation whose quoter has not been called yet.
#[derive(Debug, Clone, PartialEq)]
pub struct PendingQuotation {
    /// The syntax term, always an atom or compound.
    pub syntax: Term,
    pub content: QuotationContent,
    pub placeholder_index: usize,
    /// Position of the opening `{|`.
    pub pos: SourcePos,
}

/// One term as read, before quasi quotation expansion.
#[derive(Debug, Clone, PartialEq)]
pub struct ReadTerm {
    pub term: Term,
    pub var_dict: VarDict,
    pub quotations: Vec<PendingQuotation>,
    /// Number of variable ids allocated; ids run from 1 to `var_count`.
    pub var_count: u32,
    pub pos: SourcePos,
}

/// Splits a syntax term into its name and arguments.
pub fn decompose_syntax(syntax: &Term) -> (String, Vec<Term>) {
    match syntax {
        Term::Atom(name) => (name.clone(), Vec::new()),
        Term::Compound(name, args) => (name.clone(), args.clone()),
        other => panic!("syntax term must be callable, got {other}"),
    }
}

/// Reads the first fullstop-terminated term of `input`.
pub fn read_term(input: &str, file: &str) -> Result<ReadTerm> {
    let mut reader = Reader::new(input, file);
    match reader.next() {
        Some(result) => result,
        None => Err(Error::syntax(
            reader.lexer.pos().clone(),
            "unexpected end of file",
        )),
    }
}

/// Reads every term of `input`.
pub fn read_terms(input: &str, file: &str) -> Reader {
    Reader::new(input, file)
}

/// Iterator over the terms of one input. After a syntax error the reader
/// skips to the next fullstop; after a tokenizer error it stops.
pub struct Reader {
    lexer: Lexer,
    peeked: Option<Token>,
    /// Whether the last consumed token was a fullstop.
    at_end: bool,
    done: bool,
}

#[derive(Default)]
struct TermState {
    names: HashMap<String, VarId>,
    next_id: u32,
    dict: VarDict,
    quotations: Vec<PendingQuotation>,
}

enum Failure {
    Lex(Error),
    Parse(Error),
}

impl From<Failure> for Error {
    fn from(f: Failure) -> Error {
        match f {
            Failure::Lex(e) | Failure::Parse(e) => e,
        }
    }
}

type PResult<T> = std::result::Result<T, Failure>;

impl Reader {
    pub fn new(input: &str, file: impl Into<Arc<str>>) -> Self {
        Reader {
            lexer: Lexer::new(input, file),
            peeked: None,
            at_end: false,
            done: false,
        }
    }

    fn peek(&mut self) -> PResult<Option<&Token>> {
        if self.peeked.is_none() {
            self.peeked = self.lexer.next_token().map_err(Failure::Lex)?;
        }
        Ok(self.peeked.as_ref())
    }

    fn next_tok(&mut self) -> PResult<Option<Token>> {
        self.peek()?;
        let tok = self.peeked.take();
        self.at_end = tok.as_ref().is_some_and(|t| t.kind == TokenKind::End);
        Ok(tok)
    }

    fn eof_error(&self) -> Failure {
        Failure::Parse(Error::syntax(
            self.lexer.pos().clone(),
            "unexpected end of file",
        ))
    }

    fn expect_tok(&mut self) -> PResult<Token> {
        match self.next_tok()? {
            Some(t) => Ok(t),
            None => Err(self.eof_error()),
        }
    }

    fn expect_punct(&mut self, p: &str) -> PResult<Token> {
        let tok = self.expect_tok()?;
        if tok.is_punct(p) {
            Ok(tok)
        } else {
            Err(unexpected(&tok, &format!("expected \"{p}\"")))
        }
    }

    fn read_one(&mut self) -> PResult<ReadTerm> {
        let pos = match self.peek()? {
            Some(t) => t.pos.clone(),
            None => return Err(self.eof_error()),
        };
        let mut st = TermState::default();
        let (term, _) = self.parse(MAX_PRIORITY, &mut st)?;
        let tok = self.expect_tok()?;
        if tok.kind != TokenKind::End {
            return Err(unexpected(&tok, "operator expected"));
        }
        Ok(ReadTerm {
            term,
            var_dict: st.dict,
            quotations: st.quotations,
            var_count: st.next_id,
            pos,
        })
    }

    /// Discards tokens up to and including the next fullstop.
    fn recover(&mut self) {
        if self.at_end {
            return;
        }
        loop {
            match self.next_tok() {
                Ok(Some(t)) if t.kind == TokenKind::End => return,
                Ok(Some(_)) => {}
                Ok(None) | Err(_) => {
                    self.done = true;
                    return;
                }
            }
        }
    }

    fn parse(&mut self, max: u16, st: &mut TermState) -> PResult<(Term, u16)> {
        let (mut left, mut left_pri) = self.primary(max, st)?;
        while let Some(tok) = self.peek()? {
            let name = match tok.kind {
                TokenKind::Atom => tok.text.clone(),
                TokenKind::Punct if tok.lexeme == "," => ",".to_string(),
                _ => break,
            };
            let Some(op) = ops::infix(&name) else { break };
            let (left_max, right_max) = op.arg_priorities();
            if op.priority > max || left_pri > left_max {
                break;
            }
            self.next_tok()?;
            let (right, _) = self.parse(right_max, st)?;
            left = Term::Compound(name, vec![left, right]);
            left_pri = op.priority;
        }
        Ok((left, left_pri))
    }

    fn primary(&mut self, max: u16, st: &mut TermState) -> PResult<(Term, u16)> {
        let tok = self.expect_tok()?;
        let punct = tok.kind == TokenKind::Punct;
        let term = match tok.kind {
            TokenKind::Integer => int_term(&tok, false)?,
            TokenKind::Float => float_term(&tok, false)?,
            TokenKind::TextLiteral => Term::Str(tok.text),
            TokenKind::Variable => Term::Var(st.var(&tok.text)),
            TokenKind::Atom => return self.name_term(tok, max, st),
            TokenKind::QqOpen => self.quasi_quotation(tok, st)?,
            TokenKind::Punct => match tok.lexeme.as_str() {
                "(" => {
                    let (inner, _) = self.parse(MAX_PRIORITY, st)?;
                    self.expect_punct(")")?;
                    inner
                }
                "[" => self.list(st)?,
                "{" => {
                    if self.peek_punct("}")? {
                        self.next_tok()?;
                        Term::atom(CURLY)
                    } else {
                        let (inner, _) = self.parse(MAX_PRIORITY, st)?;
                        self.expect_punct("}")?;
                        Term::Compound(CURLY.into(), vec![inner])
                    }
                }
                _ => return Err(unexpected(&tok, "unexpected")),
            },
            TokenKind::QqBody => return Err(unexpected(&tok, "unexpected")),
            TokenKind::End => {
                return Err(Failure::Parse(Error::syntax(
                    tok.pos,
                    "unexpected end of clause",
                )))
            }
        };
        // `[]` and `{}` may be used as functors.
        if let Term::Atom(name) = &term {
            if punct && (name == NIL || name == CURLY) {
                if let Some(next) = self.peek()? {
                    if next.is_punct("(") && !next.layout_before {
                        let name = name.clone();
                        self.next_tok()?;
                        return Ok((Term::Compound(name, self.arguments(st)?), 0));
                    }
                }
            }
        }
        Ok((term, 0))
    }

    fn peek_punct(&mut self, p: &str) -> PResult<bool> {
        Ok(self.peek()?.is_some_and(|t| t.is_punct(p)))
    }

    fn name_term(&mut self, tok: Token, max: u16, st: &mut TermState) -> PResult<(Term, u16)> {
        let name = tok.text.clone();
        let next = self.peek()?.cloned();
        if let Some(next) = &next {
            if next.is_punct("(") && !next.layout_before {
                self.next_tok()?;
                let args = self.arguments(st)?;
                return Ok((Term::Compound(name, args), 0));
            }
        }
        let quoted = tok.lexeme.starts_with('\'');
        if let (Some(op), false) = (ops::prefix(&name), quoted) {
            let Some(next) = next else {
                return Ok((Term::Atom(name), 0));
            };
            if name == "-" && !next.layout_before {
                match next.kind {
                    TokenKind::Integer => {
                        self.next_tok()?;
                        return Ok((int_term(&next, true)?, 0));
                    }
                    TokenKind::Float => {
                        self.next_tok()?;
                        return Ok((float_term(&next, true)?, 0));
                    }
                    _ => {}
                }
            }
            if !operand_follows(&next) {
                return Ok((Term::Atom(name), 0));
            }
            let priority = op.priority.min(max);
            let arg_max = match op.kind {
                OpType::Fy => priority,
                _ => priority - 1,
            };
            let (arg, _) = self.parse(arg_max, st)?;
            return Ok((Term::Compound(name, vec![arg]), priority));
        }
        Ok((Term::Atom(name), 0))
    }

    fn arguments(&mut self, st: &mut TermState) -> PResult<Vec<Term>> {
        let mut args = Vec::new();
        loop {
            let (arg, _) = self.parse(ARG_PRIORITY, st)?;
            args.push(arg);
            let tok = self.expect_tok()?;
            if tok.is_punct(")") {
                return Ok(args);
            }
            if !tok.is_punct(",") {
                return Err(unexpected(&tok, "expected \",\" or \")\""));
            }
        }
    }

    fn list(&mut self, st: &mut TermState) -> PResult<Term> {
        if self.peek_punct("]")? {
            self.next_tok()?;
            return Ok(Term::atom(NIL));
        }
        let mut items = Vec::new();
        loop {
            let (item, _) = self.parse(ARG_PRIORITY, st)?;
            items.push(item);
            let tok = self.expect_tok()?;
            if tok.is_punct(",") {
                continue;
            }
            if tok.is_punct("]") {
                return Ok(Term::list_with_tail(items, Term::atom(NIL)));
            }
            if tok.is_punct("|") {
                let (tail, _) = self.parse(ARG_PRIORITY, st)?;
                self.expect_punct("]")?;
                return Ok(Term::list_with_tail(items, tail));
            }
            return Err(unexpected(&tok, "expected \",\", \"|\" or \"]\""));
        }
    }

    fn quasi_quotation(&mut self, open: Token, st: &mut TermState) -> PResult<Term> {
        let syntax_pos = match self.peek()? {
            Some(t) => t.pos.clone(),
            None => return Err(self.eof_error()),
        };
        let (syntax, _) = self.parse(MAX_PRIORITY, st)?;
        let body = self.expect_tok()?;
        if body.kind != TokenKind::QqBody {
            return Err(unexpected(
                &body,
                "expected \"||\" after quasi quotation syntax",
            ));
        }
        if !syntax.is_callable() {
            return Err(Failure::Parse(Error::syntax(
                syntax_pos,
                "invalid quasi quotation syntax term",
            )));
        }
        let payload = body.qq_payload().expect("qq_body token");
        let start = body.pos.advanced_over("||".chars());
        let index = st.quotations.len();
        st.quotations.push(PendingQuotation {
            syntax,
            content: QuotationContent::new(payload, start),
            placeholder_index: index,
            pos: open.pos,
        });
        Ok(Term::Placeholder(index))
    }
}

impl Iterator for Reader {
    type Item = Result<ReadTerm>;

    fn next(&mut self) -> Option<Self::Item> {
        if self.done {
            return None;
        }
        match self.peek() {
            Ok(None) => {
                self.done = true;
                return None;
            }
            Ok(Some(_)) => {}
            Err(f) => {
                self.done = true;
                return Some(Err(f.into()));
            }
        }
        match self.read_one() {
            Ok(t) => Some(Ok(t)),
            Err(Failure::Lex(e)) => {
                self.done = true;
                Some(Err(e))
            }
            Err(Failure::Parse(e)) => {
                self.recover();
                Some(Err(e))
            }
        }
    }
}

impl TermState {
    fn var(&mut self, name: &str) -> Var {
        if name != "_" {
            if let Some(&id) = self.names.get(name) {
                return Var::new(id, name);
            }
        }
        self.next_id += 1;
        let var = Var::new(VarId(self.next_id), name);
        if name != "_" {
            self.names.insert(name.to_string(), var.id);
            self.dict.insert(var.clone());
        }
        var
    }
}

/// Whether `tok` can start an operand of a prefix operator.
fn operand_follows(tok: &Token) -> bool {
    match tok.kind {
        TokenKind::End | TokenKind::QqBody => false,
        TokenKind::Punct => matches!(tok.lexeme.as_str(), "(" | "[" | "{"),
        TokenKind::Atom => {
            let infix_only = ops::infix(&tok.text).is_some() && ops::prefix(&tok.text).is_none();
            // `- (a)` style: an infix operator name followed directly by `(`
            // is still a term.
            !infix_only
        }
        _ => true,
    }
}

fn unexpected(tok: &Token, what: &str) -> Failure {
    let shown = match tok.kind {
        TokenKind::End => "end of clause".to_string(),
        TokenKind::QqBody => "quasi quotation body".to_string(),
        _ => format!("\"{}\"", tok.lexeme),
    };
    Failure::Parse(Error::syntax(
        tok.pos.clone(),
        format!("{what}: found {shown}"),
    ))
}

fn int_term(tok: &Token, negative: bool) -> PResult<Term> {
    let magnitude: i128 = tok
        .text
        .parse()
        .map_err(|_| Failure::Parse(Error::syntax(tok.pos.clone(), "integer too large")))?;
    let value = if negative { -magnitude } else { magnitude };
    i64::try_from(value)
        .map(Term::Int)
        .map_err(|_| Failure::Parse(Error::syntax(tok.pos.clone(), "integer too large")))
}

fn float_term(tok: &Token, negative: bool) -> PResult<Term> {
    let value: f64 = tok
        .text
        .parse()
        .map_err(|_| Failure::Parse(Error::syntax(tok.pos.clone(), "invalid float")))?;
    if !value.is_finite() {
        return Err(Failure::Parse(Error::syntax(
            tok.pos.clone(),
            "float overflow",
        )));
    }
    Ok(Term::Float(if negative { -value } else { value }))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn read(s: &str) -> ReadTerm {
        read_term(s, "t.pl").unwrap_or_else(|e| panic!("{s}: {e}"))
    }

    fn var(id: u32, name: &str) -> Term {
        Term::Var(Var::new(VarId(id), name))
    }

    #[test]
    fn variable_identity() {
        let r = read("f(X, Y, X).");
        assert_eq!(
            r.term,
            Term::compound("f", vec![var(1, "X"), var(2, "Y"), var(1, "X")])
        );
        let dict: Vec<_> = r
            .var_dict
            .iter()
            .map(|v| (v.name.as_str(), v.id.0))
            .collect();
        assert_eq!(dict, [("X", 1), ("Y", 2)]);
    }

    #[test]
    fn anonymous_variables_are_fresh() {
        let r = read("f(_, _, _A).");
        let ids: Vec<_> = r.term.vars().iter().map(|v| v.id.0).collect();
        assert_eq!(ids, [1, 2, 3]);
        assert_eq!(r.var_dict.len(), 1);
        assert_eq!(r.var_count, 3);
    }

    #[test]
    fn clause_precedence() {
        let r = read("a :- b, c.");
        let want = Term::compound(
            ":-",
            vec![
                Term::atom("a"),
                Term::compound(",", vec![Term::atom("b"), Term::atom("c")]),
            ],
        );
        assert_eq!(r.term, want);
    }

    #[test]
    fn arithmetic_associativity() {
        assert_eq!(
            read("X is 1 - 2 - 3 * 4.").term.to_string(),
            "is(X,-(-(1,2),*(3,4)))"
        );
        assert_eq!(
            read("a ; b -> c , d.").term.to_string(),
            ";(a,->(b,(c, d)))"
        );
        assert_eq!(read("\\+ a = b.").term.to_string(), "\\+(=(a,b))");
        assert_eq!(read("x :- a:b:c.").term.to_string(), "x :- :(a,:(b,c))");
    }

    #[test]
    fn negative_numbers() {
        assert_eq!(
            read("f(-1, - 1, -(1), -a, 2-1).").term.to_string(),
            "f(-1,-(1),-(1),-(a),-(2,1))"
        );
        assert_eq!(
            read("X = -9223372036854775808.").term.to_string(),
            "=(X,-9223372036854775808)"
        );
        assert_eq!(
            read("f(-2.5).").term,
            Term::compound("f", vec![Term::Float(-2.5)])
        );
    }

    #[test]
    fn operators_as_atoms() {
        assert_eq!(read("f(-, +, =).").term.to_string(), "f(-,+,=)");
        assert_eq!(
            read(":- http_handler(/, clock, []).").term.to_string(),
            ":-(http_handler(/,clock,[]))"
        );
        assert_eq!(read("X = [-].").term.to_string(), "=(X,[-])");
    }

    #[test]
    fn lists_curly_strings() {
        let r = read("f([a, b|T], {x, y}, \"str\", []).");
        assert_eq!(r.term.to_string(), "f([a,b|T],{x, y},\"str\",[])");
    }

    #[test]
    fn priority_clash_is_an_error() {
        let err = read_term("a = b = c.", "t.pl").unwrap_err();
        assert!(err.message().starts_with("operator expected"), "{err}");
        assert_eq!(err.pos().unwrap().column, 7);
    }

    #[test]
    fn missing_fullstop() {
        let err = read_term("foo(a", "t.pl").unwrap_err();
        assert_eq!(err.message(), "unexpected end of file");
    }

    #[test]
    fn quasi_quotation_placeholder() {
        let r = read("x({|html(Date)||<b>Date</b>|}, Date).");
        assert_eq!(
            r.term,
            Term::compound("x", vec![Term::Placeholder(0), var(1, "Date")])
        );
        let q = &r.quotations[0];
        assert_eq!(q.syntax, Term::compound("html", vec![var(1, "Date")]));
        assert_eq!(q.content.characters(), "<b>Date</b>");
        assert_eq!(q.content.start().char_offset, 16);
        assert_eq!(q.pos.char_offset, 2);
    }

    #[test]
    fn empty_list_and_curly_as_functors() {
        assert_eq!(
            read("{}(a, b).").term,
            Term::compound("{}", vec![Term::atom("a"), Term::atom("b")])
        );
        assert_eq!(
            read("[](x).").term,
            Term::compound("[]", vec![Term::atom("x")])
        );
        assert!(read_term("f({} (a)).", "t.pl").is_err());
    }

    #[test]
    fn invalid_syntax_terms() {
        for src in ["x({|X||a|}).", "x({|1||a|}).", "x({|\"s\"||a|})."] {
            let err = read_term(src, "t.pl").unwrap_err();
            assert_eq!(
                err.message(),
                "invalid quasi quotation syntax term",
                "{src}"
            );
            assert_eq!(err.pos().unwrap().char_offset, 4);
        }
    }

    #[test]
    fn placeholders_in_textual_order() {
        let r = read("f({|a||1|}, g({|b||2|}), {|c||3|}).");
        assert_eq!(
            r.term.to_string(),
            "f('$quasi_quotation'(0),g('$quasi_quotation'(1)),'$quasi_quotation'(2))"
        );
        let names: Vec<_> = r
            .quotations
            .iter()
            .map(|q| decompose_syntax(&q.syntax).0)
            .collect();
        assert_eq!(names, ["a", "b", "c"]);
    }

    #[test]
    fn decompose() {
        assert_eq!(
            decompose_syntax(&Term::atom("sparql")),
            ("sparql".into(), vec![])
        );
        let js = Term::compound("javascript", (1..=4).map(|i| var(i, "V")).collect());
        let (name, args) = decompose_syntax(&js);
        assert_eq!((name.as_str(), args.len()), ("javascript", 4));
    }

    #[test]
    fn reader_recovers_after_syntax_error() {
        let results: Vec<_> = read_terms("a(.\nb.\nc d.\ne.", "t.pl").collect();
        assert_eq!(results.len(), 4);
        assert!(results[0].is_err());
        assert_eq!(results[1].as_ref().unwrap().term, Term::atom("b"));
        assert!(results[2].is_err());
        assert_eq!(results[3].as_ref().unwrap().term, Term::atom("e"));
    }

    #[test]
    fn reader_stops_after_lexer_error() {
        let results: Vec<_> = read_terms("a.\n'oops.\nb.", "t.pl").collect();
        assert_eq!(results.len(), 2);
        assert!(results[1].is_err());
    }
}
