//! Terms of the host language and their canonical text form.

use std::fmt;

use crate::ops::{self, ARG_PRIORITY, MAX_PRIORITY};

/// Identity of a variable within one read term.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct VarId(pub u32);

impl fmt::Display for VarId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

/// A variable occurrence. Two occurrences with the same `id` are the same
/// variable; `name` is `"_"` for anonymous and generated variables.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Var {
    pub id: VarId,
    pub name: String,
}

impl Var {
    pub fn new(id: VarId, name: impl Into<String>) -> Self {
        Var {
            id,
            name: name.into(),
        }
    }

    pub fn is_anonymous(&self) -> bool {
        self.name == "_"
    }

    /// The name used when printing: the source name, or `_G<id>`.
    pub fn display_name(&self) -> String {
        if self.is_anonymous() {
            format!("_G{}", self.id)
        } else {
            self.name.clone()
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum Term {
    Atom(String),
    Var(Var),
    Int(i64),
    Float(f64),
    Str(String),
    Compound(String, Vec<Term>),
    /// Marks the location of the n-th quasi quotation of a read term until
    /// it is expanded.
    Placeholder(usize),
}

pub const NIL: &str = "[]";
pub const CONS: &str = ".";
pub const CURLY: &str = "{}";

impl Term {
    pub fn atom(name: impl Into<String>) -> Term {
        Term::Atom(name.into())
    }

    pub fn compound(functor: impl Into<String>, args: Vec<Term>) -> Term {
        debug_assert!(!args.is_empty());
        Term::Compound(functor.into(), args)
    }

    pub fn nil() -> Term {
        Term::Atom(NIL.to_string())
    }

    /// A proper list of `items`.
    pub fn list(items: impl IntoIterator<Item = Term>) -> Term {
        Self::list_with_tail(items.into_iter().collect(), Term::nil())
    }

    pub fn list_with_tail(items: Vec<Term>, tail: Term) -> Term {
        items.into_iter().rev().fold(tail, |acc, item| {
            Term::Compound(CONS.into(), vec![item, acc])
        })
    }

    /// Elements of a proper list, or `None` for anything else.
    pub fn as_list(&self) -> Option<Vec<&Term>> {
        let (items, tail) = self.list_parts();
        match tail {
            Term::Atom(a) if a == NIL => Some(items),
            _ => None,
        }
    }

    /// Splits a (possibly partial) list into its elements and tail.
    pub fn list_parts(&self) -> (Vec<&Term>, &Term) {
        let mut items = Vec::new();
        let mut cur = self;
        while let Term::Compound(f, args) = cur {
            if f != CONS || args.len() != 2 {
                break;
            }
            items.push(&args[0]);
            cur = &args[1];
        }
        (items, cur)
    }

    pub fn is_callable(&self) -> bool {
        matches!(self, Term::Atom(_) | Term::Compound(..))
    }

    pub fn as_var(&self) -> Option<&Var> {
        match self {
            Term::Var(v) => Some(v),
            _ => None,
        }
    }

    /// Name and arguments of a callable term; `None` otherwise.
    pub fn functor(&self) -> Option<(&str, &[Term])> {
        match self {
            Term::Atom(a) => Some((a, &[])),
            Term::Compound(f, args) => Some((f, args)),
            _ => None,
        }
    }

    /// Visits every subterm in depth-first, left-to-right order.
    pub fn walk<'a>(&'a self, visit: &mut impl FnMut(&'a Term)) {
        visit(self);
        if let Term::Compound(_, args) = self {
            for arg in args {
                arg.walk(visit);
            }
        }
    }

    /// Rebuilds the term bottom-up, letting `f` replace any node first.
    pub fn map(&self, f: &mut impl FnMut(&Term) -> Option<Term>) -> Term {
        if let Some(t) = f(self) {
            return t;
        }
        match self {
            Term::Compound(name, args) => {
                Term::Compound(name.clone(), args.iter().map(|a| a.map(f)).collect())
            }
            other => other.clone(),
        }
    }

    pub fn vars(&self) -> Vec<&Var> {
        let mut out = Vec::new();
        self.walk(&mut |t| {
            if let Term::Var(v) = t {
                out.push(v);
            }
        });
        out
    }

    /// Canonical text of the term followed by a fullstop.
    pub fn to_clause_string(&self) -> String {
        let mut s = self.to_string();
        if s.ends_with(is_symbol_char) {
            s.push(' ');
        }
        s.push('.');
        s
    }
}

/// Ordered `Name = Var` associations of a read term.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct VarDict {
    entries: Vec<Var>,
}

impl VarDict {
    pub fn new() -> Self {
        VarDict::default()
    }

    /// Adds `name`, keeping the first id seen for a repeated name.
    /// Anonymous variables are never recorded.
    pub fn insert(&mut self, var: Var) {
        if var.is_anonymous() || self.get(&var.name).is_some() {
            return;
        }
        self.entries.push(var);
    }

    pub fn get(&self, name: &str) -> Option<&Var> {
        self.entries.iter().find(|v| v.name == name)
    }

    pub fn by_id(&self, id: VarId) -> Option<&Var> {
        self.entries.iter().find(|v| v.id == id)
    }

    pub fn iter(&self) -> impl Iterator<Item = &Var> {
        self.entries.iter()
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Keeps the entries for which `keep` holds.
    pub fn filter(&self, mut keep: impl FnMut(&Var) -> bool) -> VarDict {
        VarDict {
            entries: self.entries.iter().filter(|v| keep(v)).cloned().collect(),
        }
    }

    /// The dictionary as a host-language list of `Name = Var` terms.
    pub fn to_term(&self) -> Term {
        Term::list(
            self.entries.iter().map(|v| {
                Term::compound("=", vec![Term::atom(v.name.clone()), Term::Var(v.clone())])
            }),
        )
    }
}

impl FromIterator<Var> for VarDict {
    fn from_iter<I: IntoIterator<Item = Var>>(iter: I) -> Self {
        let mut dict = VarDict::new();
        for v in iter {
            dict.insert(v);
        }
        dict
    }
}

pub(crate) fn is_symbol_char(c: char) -> bool {
    matches!(
        c,
        '+' | '-'
            | '*'
            | '/'
            | '\\'
            | '^'
            | '<'
            | '>'
            | '='
            | '~'
            | ':'
            | '.'
            | '?'
            | '@'
            | '#'
            | '&'
            | '$'
    )
}

pub(crate) fn is_alnum(c: char) -> bool {
    c.is_alphanumeric() || c == '_'
}

fn atom_needs_quotes(name: &str) -> bool {
    let mut chars = name.chars();
    let Some(first) = chars.next() else {
        return true;
    };
    if matches!(name, "[]" | "{}" | "!" | ";") {
        return false;
    }
    if first.is_lowercase() {
        return !chars.all(is_alnum);
    }
    if name.chars().all(is_symbol_char) {
        return name == "." || name.contains("/*");
    }
    true
}

fn write_quoted(out: &mut impl fmt::Write, text: &str, quote: char) -> fmt::Result {
    out.write_char(quote)?;
    for c in text.chars() {
        match c {
            '\\' => out.write_str("\\\\")?,
            '\n' => out.write_str("\\n")?,
            '\t' => out.write_str("\\t")?,
            '\r' => out.write_str("\\r")?,
            c if c == quote => {
                out.write_char('\\')?;
                out.write_char(c)?;
            }
            c if c.is_control() => write!(out, "\\x{:x}\\", c as u32)?,
            c => out.write_char(c)?,
        }
    }
    out.write_char(quote)
}

/// Writes an atom, quoting it when it would not read back as itself.
pub fn write_atom(out: &mut impl fmt::Write, name: &str) -> fmt::Result {
    if atom_needs_quotes(name) {
        write_quoted(out, name, '\'')
    } else {
        out.write_str(name)
    }
}

/// Shortest round-trip decimal form, always with a fraction part.
pub fn format_float(value: f64) -> String {
    if !value.is_finite() {
        return if value.is_nan() {
            "nan".into()
        } else if value > 0.0 {
            "inf".into()
        } else {
            "-inf".into()
        };
    }
    let s = format!("{value:?}");
    match s.find('e') {
        Some(e) if !s[..e].contains('.') => format!("{}.0{}", &s[..e], &s[e..]),
        _ => s,
    }
}

struct Writer<'a, W> {
    out: &'a mut W,
}

impl<W: fmt::Write> Writer<'_, W> {
    fn term(&mut self, term: &Term, max: u16) -> fmt::Result {
        match term {
            Term::Atom(a) => {
                if max < MAX_PRIORITY && ops::is_op(a) {
                    self.out.write_char('(')?;
                    write_atom(self.out, a)?;
                    self.out.write_char(')')
                } else {
                    write_atom(self.out, a)
                }
            }
            Term::Var(v) => self.out.write_str(&v.display_name()),
            Term::Int(i) => write!(self.out, "{i}"),
            Term::Float(x) => self.out.write_str(&format_float(*x)),
            Term::Str(s) => write_quoted(self.out, s, '"'),
            Term::Placeholder(i) => write!(self.out, "'$quasi_quotation'({i})"),
            Term::Compound(f, args) => self.compound(f, args, max),
        }
    }

    fn compound(&mut self, f: &str, args: &[Term], max: u16) -> fmt::Result {
        match (f, args) {
            (CONS, [_, _]) => {
                let term = Term::Compound(f.into(), args.to_vec());
                let (items, tail) = term.list_parts();
                self.out.write_char('[')?;
                for (i, item) in items.iter().enumerate() {
                    if i > 0 {
                        self.out.write_char(',')?;
                    }
                    self.arg(item)?;
                }
                if !matches!(tail, Term::Atom(a) if a == NIL) {
                    self.out.write_char('|')?;
                    self.arg(tail)?;
                }
                self.out.write_char(']')
            }
            (CURLY, [inner]) => {
                self.out.write_char('{')?;
                self.term(inner, MAX_PRIORITY)?;
                self.out.write_char('}')
            }
            (":-" | ",", [left, right]) => {
                let op = ops::infix(f).expect("operator table");
                let (lp, rp) = op.arg_priorities();
                let paren = op.priority > max;
                if paren {
                    self.out.write_char('(')?;
                }
                self.term(left, lp)?;
                self.out.write_str(if f == "," { ", " } else { " :- " })?;
                self.term(right, rp)?;
                if paren {
                    self.out.write_char(')')?;
                }
                Ok(())
            }
            _ => {
                write_atom(self.out, f)?;
                self.out.write_char('(')?;
                for (i, arg) in args.iter().enumerate() {
                    if i > 0 {
                        self.out.write_char(',')?;
                    }
                    self.arg(arg)?;
                }
                self.out.write_char(')')
            }
        }
    }

    fn arg(&mut self, term: &Term) -> fmt::Result {
        match term {
            // Bare operator atoms read back fine in argument position.
            Term::Atom(a) => write_atom(self.out, a),
            _ => self.term(term, ARG_PRIORITY),
        }
    }
}

/// Canonical form: atoms quoted where needed, operators in functional
/// notation except `:-`/2 and `,`/2.
impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        Writer { out: f }.term(self, MAX_PRIORITY)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn var(id: u32, name: &str) -> Term {
        Term::Var(Var::new(VarId(id), name))
    }

    #[test]
    fn atoms_quote_when_needed() {
        let cases = [
            ("foo", "foo"),
            ("Foo", "'Foo'"),
            ("[]", "[]"),
            ("hello world", "'hello world'"),
            ("=..", "=.."),
            (",", "','"),
            ("", "''"),
            ("it's", "'it\\'s'"),
            ("a\nb", "'a\\nb'"),
            (".", "'.'"),
            ("/*", "'/*'"),
        ];
        for (name, want) in cases {
            assert_eq!(Term::atom(name).to_string(), want, "{name:?}");
        }
    }

    #[test]
    fn writes_clauses_and_lists() {
        let t = Term::compound(
            ":-",
            vec![
                Term::compound("f", vec![var(1, "X")]),
                Term::compound(
                    ",",
                    vec![
                        Term::atom("b"),
                        Term::compound("=", vec![var(1, "X"), Term::Int(-3)]),
                    ],
                ),
            ],
        );
        assert_eq!(t.to_string(), "f(X) :- b, =(X,-3)");
        let l = Term::list_with_tail(vec![Term::Int(1), Term::Str("s\"".into())], var(2, "_"));
        assert_eq!(l.to_string(), "[1,\"s\\\"\"|_G2]");
        let nested = Term::compound(
            "f",
            vec![Term::compound(",", vec![Term::atom("a"), Term::atom("b")])],
        );
        assert_eq!(nested.to_string(), "f((a, b))");
    }

    #[test]
    fn floats_keep_fraction() {
        assert_eq!(format_float(1.0), "1.0");
        assert_eq!(format_float(1e20), "1.0e20");
        assert_eq!(format_float(0.1), "0.1");
        assert_eq!(format_float(-2.5e-8), "-2.5e-8");
    }

    #[test]
    fn clause_string_separates_symbol_atoms() {
        assert_eq!(Term::atom("+").to_clause_string(), "+ .");
        assert_eq!(Term::atom("a").to_clause_string(), "a.");
    }

    #[test]
    fn vardict_ignores_anonymous_and_repeats() {
        let d: VarDict = [
            Var::new(VarId(1), "X"),
            Var::new(VarId(2), "_"),
            Var::new(VarId(1), "X"),
            Var::new(VarId(3), "Y"),
        ]
        .into_iter()
        .collect();
        let names: Vec<_> = d.iter().map(|v| v.name.as_str()).collect();
        assert_eq!(names, ["X", "Y"]);
        assert_eq!(d.to_term().to_string(), "[=('X',X),=('Y',Y)]");
    }
}
