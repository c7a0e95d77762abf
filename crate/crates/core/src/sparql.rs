//! The `sparql` quoter.
//!
//! Only the `SELECT` header is parsed. Each projection variable `?Name` is
//! bound to the clause variable called `Name` when there is one, and to a
//! fresh variable otherwise. The text after `WHERE` is kept verbatim once
//! its braces, strings and IRIs are known to be well formed.

use crate::content::QuotationContent;
use crate::error::Result;
use crate::pos::SourcePos;
use crate::quasi::{QuoteCall, Quoter};
use crate::term::{Term, Var, VarDict};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Projection {
    /// Variable name without the leading `?`.
    pub name: String,
    pub var: Var,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SparqlQuery {
    pub projections: Vec<Projection>,
    /// Source text from just after `WHERE` to the end of the quotation.
    pub body: String,
    pub origin: SourcePos,
}

impl SparqlQuery {
    /// `sparql_query(['Name'=Var, ...], "body")`
    pub fn to_term(&self) -> Term {
        let projections = Term::list(self.projections.iter().map(|p| {
            Term::compound(
                "=",
                vec![Term::atom(p.name.clone()), Term::Var(p.var.clone())],
            )
        }));
        Term::compound(
            "sparql_query",
            vec![projections, Term::Str(self.body.clone())],
        )
    }
}

struct Scanner<'a> {
    chars: &'a [char],
    i: usize,
}

impl Scanner<'_> {
    fn peek(&self) -> Option<char> {
        self.chars.get(self.i).copied()
    }

    fn skip_layout(&mut self) {
        while let Some(c) = self.peek() {
            if c.is_whitespace() {
                self.i += 1;
            } else if c == '#' {
                while self.peek().is_some_and(|c| c != '\n') {
                    self.i += 1;
                }
            } else {
                break;
            }
        }
    }

    /// Consumes `word` (ASCII case-insensitive) if it is next and not
    /// followed by a name character.
    fn keyword(&mut self, word: &str) -> bool {
        let n = word.len();
        let Some(slice) = self.chars.get(self.i..self.i + n) else {
            return false;
        };
        let matches = slice
            .iter()
            .zip(word.chars())
            .all(|(a, b)| a.eq_ignore_ascii_case(&b));
        if matches && !self.chars.get(self.i + n).is_some_and(|&c| is_name_char(c)) {
            self.i += n;
            true
        } else {
            false
        }
    }

    fn name(&mut self) -> String {
        let from = self.i;
        while self.peek().is_some_and(is_name_char) {
            self.i += 1;
        }
        self.chars[from..self.i].iter().collect()
    }

    /// An IRI reference `<...>` at the cursor; `false` leaves the cursor.
    fn iri(&mut self) -> bool {
        let mut k = self.i + 1;
        while let Some(&c) = self.chars.get(k) {
            if c == '>' {
                self.i = k + 1;
                return true;
            }
            if c.is_whitespace() || matches!(c, '<' | '"' | '{' | '}' | '|' | '^' | '`') {
                return false;
            }
            k += 1;
        }
        false
    }
}

fn is_name_char(c: char) -> bool {
    c.is_alphanumeric() || c == '_'
}

/// Parses a `SELECT ?A ?B WHERE { ... }` query.
pub fn parse_sparql_select(
    content: &QuotationContent,
    var_dict: &VarDict,
    mut fresh_var: impl FnMut() -> Var,
) -> Result<SparqlQuery> {
    let chars: Vec<char> = content.characters().chars().collect();
    let mut sc = Scanner {
        chars: &chars,
        i: 0,
    };
    let err = |offset: usize, msg: &str| content.error_at(offset, msg);

    // Prologue declarations may precede the query form.
    loop {
        sc.skip_layout();
        if sc.keyword("PREFIX") {
            sc.skip_layout();
            while sc
                .peek()
                .is_some_and(|c| is_name_char(c) || c == '-' || c == '.')
            {
                sc.i += 1;
            }
            if sc.peek() != Some(':') {
                return Err(err(sc.i, "expected \":\" in PREFIX declaration"));
            }
            sc.i += 1;
            sc.skip_layout();
            if sc.peek() != Some('<') || !sc.iri() {
                return Err(err(sc.i, "expected IRI in PREFIX declaration"));
            }
        } else if sc.keyword("BASE") {
            sc.skip_layout();
            if sc.peek() != Some('<') || !sc.iri() {
                return Err(err(sc.i, "expected IRI in BASE declaration"));
            }
        } else {
            break;
        }
    }

    if !sc.keyword("SELECT") {
        return Err(err(sc.i, "expected SELECT"));
    }
    let mut projections: Vec<Projection> = Vec::new();
    loop {
        sc.skip_layout();
        match sc.peek() {
            Some(',') if !projections.is_empty() => sc.i += 1,
            Some('?' | '$') => {
                let at = sc.i;
                sc.i += 1;
                let name = sc.name();
                if name.is_empty() {
                    return Err(err(at, "expected variable name"));
                }
                if projections.iter().any(|p| p.name == name) {
                    return Err(err(at, &format!("duplicate projection variable ?{name}")));
                }
                let var = var_dict.get(&name).cloned().unwrap_or_else(&mut fresh_var);
                projections.push(Projection { name, var });
            }
            _ => break,
        }
    }
    if projections.is_empty() {
        return Err(err(sc.i, "expected projection variable after SELECT"));
    }
    if !sc.keyword("WHERE") {
        return Err(err(sc.i, "expected WHERE"));
    }
    let body_start = sc.i;
    sc.skip_layout();
    if sc.peek() != Some('{') {
        return Err(err(sc.i, "expected \"{\" after WHERE"));
    }
    check_body(&mut sc, content)?;
    Ok(SparqlQuery {
        projections,
        body: chars[body_start..].iter().collect(),
        origin: content.start().clone(),
    })
}

/// Checks brace balance, string literals and IRIs up to end of input.
fn check_body(sc: &mut Scanner<'_>, content: &QuotationContent) -> Result<()> {
    let mut open: Vec<usize> = Vec::new();
    while let Some(c) = sc.peek() {
        let at = sc.i;
        match c {
            '#' => sc.skip_layout(),
            '{' => {
                open.push(at);
                sc.i += 1;
            }
            '}' => {
                if open.pop().is_none() {
                    return Err(content.error_at(at, "unbalanced braces: unexpected \"}\""));
                }
                sc.i += 1;
            }
            '<' => {
                if !sc.iri() {
                    sc.i += 1;
                }
            }
            '"' | '\'' => string_literal(sc, content, c)?,
            _ => sc.i += 1,
        }
    }
    match open.last() {
        Some(&at) => Err(content.error_at(at, "unbalanced braces: \"{\" is never closed")),
        None => Ok(()),
    }
}

fn string_literal(sc: &mut Scanner<'_>, content: &QuotationContent, quote: char) -> Result<()> {
    let at = sc.i;
    let long = sc
        .chars
        .get(at..at + 3)
        .is_some_and(|s| s.iter().all(|&c| c == quote));
    sc.i += if long { 3 } else { 1 };
    loop {
        match sc.peek() {
            None => return Err(content.error_at(at, "unterminated string literal")),
            Some('\\') => sc.i += 2,
            Some('\n' | '\r') if !long => {
                return Err(content.error_at(at, "unterminated string literal"));
            }
            Some(c) if c == quote => {
                if !long {
                    sc.i += 1;
                    return Ok(());
                }
                if sc
                    .chars
                    .get(sc.i..sc.i + 3)
                    .is_some_and(|s| s.iter().all(|&c| c == quote))
                {
                    sc.i += 3;
                    return Ok(());
                }
                sc.i += 1;
            }
            Some(_) => sc.i += 1,
        }
    }
}

/// `{|sparql||SELECT ...|}`: projection variables bind clause variables by
/// name, using the whole variable dictionary.
pub struct SparqlQuoter;

impl Quoter for SparqlQuoter {
    fn name(&self) -> &str {
        "sparql"
    }

    fn quote(&self, call: &mut QuoteCall<'_>) -> Result<Term> {
        let (content, var_dict) = (call.content, call.var_dict);
        let query = parse_sparql_select(content, var_dict, || call.fresh_var())?;
        Ok(query.to_term())
    }
}
