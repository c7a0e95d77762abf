//! The `html` quoter.
//!
//! Quoted HTML is parsed strictly into a DOM; the first error aborts with
//! an absolute file position. Variables named in the syntax arguments
//! (`{|html(Date)||...|}`) replace attribute values and element contents
//! that consist of exactly the variable's name. Bound DOMs are serialized
//! with escaping, so bound values can never introduce markup.
//!
//! The accepted subset is XML-style well-formedness plus HTML void
//! elements and an optional end tag for `p` and `li`. Comments are
//! dropped. The five XML entities and numeric character references are
//! decoded.

use std::collections::HashMap;
use std::fmt::Write as _;

use crate::content::QuotationContent;
use crate::error::{Error, Result};
use crate::pos::SourcePos;
use crate::quasi::{filter_qq_dict, QuoteCall, Quoter};
use crate::term::{format_float, Term, Var, VarDict, VarId};

#[derive(Debug, Clone, PartialEq)]
pub enum AttrValue {
    Text(String),
    Hole(Var),
}

#[derive(Debug, Clone, PartialEq)]
pub enum HtmlNode {
    Element {
        tag: String,
        attrs: Vec<(String, AttrValue)>,
        children: Vec<HtmlNode>,
    },
    Text(String),
    Hole(Var),
}

impl HtmlNode {
    pub fn element(tag: &str, attrs: Vec<(&str, &str)>, children: Vec<HtmlNode>) -> HtmlNode {
        HtmlNode::Element {
            tag: tag.into(),
            attrs: attrs
                .into_iter()
                .map(|(k, v)| (k.to_string(), AttrValue::Text(v.to_string())))
                .collect(),
            children,
        }
    }

    pub fn text(s: &str) -> HtmlNode {
        HtmlNode::Text(s.into())
    }
}

pub const VOID_ELEMENTS: &[&str] = &[
    "area", "base", "br", "col", "embed", "hr", "img", "input", "link", "meta", "source", "track",
    "wbr",
];

/// Start tags that end an open `p` element.
const CLOSES_P: &[&str] = &[
    "address",
    "article",
    "aside",
    "blockquote",
    "div",
    "dl",
    "fieldset",
    "footer",
    "form",
    "h1",
    "h2",
    "h3",
    "h4",
    "h5",
    "h6",
    "header",
    "hr",
    "main",
    "nav",
    "ol",
    "p",
    "pre",
    "section",
    "table",
    "ul",
];

pub fn is_void(tag: &str) -> bool {
    VOID_ELEMENTS.contains(&tag)
}

fn closes_implicitly(open: &str, next_start: &str) -> bool {
    match open {
        "p" => CLOSES_P.contains(&next_start),
        "li" => next_start == "li",
        _ => false,
    }
}

fn end_tag_optional(tag: &str) -> bool {
    matches!(tag, "p" | "li")
}

/// Parses the payload of a quotation. Error positions are absolute.
pub fn parse_html_strict(content: &QuotationContent) -> Result<Vec<HtmlNode>> {
    let chars: Vec<char> = content.characters().chars().collect();
    HtmlParser {
        chars: &chars,
        i: 0,
        locate: &|offset| content.pos_at(offset),
    }
    .parse()
}

/// Parses a standalone HTML fragment; positions are relative to its start.
pub fn parse_html_str(text: &str) -> Result<Vec<HtmlNode>> {
    parse_html_strict(&QuotationContent::new(text, SourcePos::start("<html>")))
}

struct Open {
    tag: String,
    attrs: Vec<(String, AttrValue)>,
    children: Vec<HtmlNode>,
}

struct HtmlParser<'a> {
    chars: &'a [char],
    i: usize,
    locate: &'a dyn Fn(usize) -> SourcePos,
}

impl HtmlParser<'_> {
    fn err(&self, offset: usize, message: impl Into<String>) -> Error {
        Error::syntax((self.locate)(offset), message)
    }

    fn peek(&self) -> Option<char> {
        self.chars.get(self.i).copied()
    }

    fn at(&self, s: &str) -> bool {
        s.chars()
            .enumerate()
            .all(|(k, c)| self.chars.get(self.i + k) == Some(&c))
    }

    fn skip_ws(&mut self) {
        while self.peek().is_some_and(char::is_whitespace) {
            self.i += 1;
        }
    }

    fn name(&mut self, valid: impl Fn(char) -> bool) -> String {
        let from = self.i;
        while self.peek().is_some_and(&valid) {
            self.i += 1;
        }
        self.chars[from..self.i]
            .iter()
            .collect::<String>()
            .to_lowercase()
    }

    fn parse(mut self) -> Result<Vec<HtmlNode>> {
        let mut root = Vec::new();
        let mut stack: Vec<Open> = Vec::new();
        let mut text = String::new();

        fn children<'s>(
            root: &'s mut Vec<HtmlNode>,
            stack: &'s mut [Open],
        ) -> &'s mut Vec<HtmlNode> {
            match stack.last_mut() {
                Some(open) => &mut open.children,
                None => root,
            }
        }
        fn flush(text: &mut String, root: &mut Vec<HtmlNode>, stack: &mut [Open]) {
            if !text.is_empty() {
                children(root, stack).push(HtmlNode::Text(std::mem::take(text)));
            }
        }
        fn close(root: &mut Vec<HtmlNode>, stack: &mut Vec<Open>) {
            let open = stack.pop().expect("open element");
            children(root, stack).push(HtmlNode::Element {
                tag: open.tag,
                attrs: open.attrs,
                children: open.children,
            });
        }

        while let Some(c) = self.peek() {
            let start = self.i;
            match c {
                '<' if self.at("<!--") => {
                    self.i += 4;
                    while !self.at("-->") {
                        if self.peek().is_none() {
                            return Err(self.err(start, "unterminated comment"));
                        }
                        self.i += 1;
                    }
                    self.i += 3;
                }
                '<' if self.at("</") => {
                    self.i += 2;
                    let tag = self.name(is_name_char);
                    self.skip_ws();
                    if tag.is_empty() || self.peek() != Some('>') {
                        return Err(self.err(start, "malformed end tag"));
                    }
                    self.i += 1;
                    flush(&mut text, &mut root, &mut stack);
                    while stack
                        .last()
                        .is_some_and(|o| o.tag != tag && end_tag_optional(&o.tag))
                        && stack.iter().any(|o| o.tag == tag)
                    {
                        close(&mut root, &mut stack);
                    }
                    match stack.last() {
                        Some(o) if o.tag == tag => close(&mut root, &mut stack),
                        Some(_) => {
                            return Err(self.err(start, format!("mismatched end tag </{tag}>")))
                        }
                        None => return Err(self.err(start, format!("unexpected end tag </{tag}>"))),
                    }
                }
                '<' if self
                    .chars
                    .get(self.i + 1)
                    .is_some_and(|c| c.is_ascii_alphabetic()) =>
                {
                    self.i += 1;
                    let tag = self.name(is_name_char);
                    let (attrs, self_closing) = self.attributes(start)?;
                    flush(&mut text, &mut root, &mut stack);
                    if stack
                        .last()
                        .is_some_and(|o| closes_implicitly(&o.tag, &tag))
                    {
                        close(&mut root, &mut stack);
                    }
                    if self_closing || is_void(&tag) {
                        children(&mut root, &mut stack).push(HtmlNode::Element {
                            tag,
                            attrs,
                            children: Vec::new(),
                        });
                    } else {
                        stack.push(Open {
                            tag,
                            attrs,
                            children: Vec::new(),
                        });
                    }
                }
                '<' => return Err(self.err(start, "unexpected \"<\"")),
                '&' => text.push(self.entity()?),
                c => {
                    text.push(c);
                    self.i += 1;
                }
            }
        }
        flush(&mut text, &mut root, &mut stack);
        while let Some(open) = stack.last() {
            if !end_tag_optional(&open.tag) {
                let tag = open.tag.clone();
                return Err(self.err(self.i, format!("end of input inside element <{tag}>")));
            }
            close(&mut root, &mut stack);
        }
        Ok(root)
    }

    /// Attributes up to and including the closing `>` of a start tag.
    fn attributes(&mut self, tag_start: usize) -> Result<(Vec<(String, AttrValue)>, bool)> {
        let mut attrs: Vec<(String, AttrValue)> = Vec::new();
        loop {
            self.skip_ws();
            match self.peek() {
                None => return Err(self.err(tag_start, "unterminated tag")),
                Some('>') => {
                    self.i += 1;
                    return Ok((attrs, false));
                }
                Some('/') if self.at("/>") => {
                    self.i += 2;
                    return Ok((attrs, true));
                }
                _ => {}
            }
            let name_start = self.i;
            let name = self.name(is_attr_name_char);
            if name.is_empty() {
                return Err(self.err(name_start, "malformed attribute"));
            }
            self.skip_ws();
            let value = if self.peek() == Some('=') {
                self.i += 1;
                self.skip_ws();
                self.attr_value(tag_start)?
            } else {
                String::new()
            };
            if attrs.iter().any(|(n, _)| *n == name) {
                return Err(self.err(name_start, format!("duplicate attribute {name}")));
            }
            attrs.push((name, AttrValue::Text(value)));
        }
    }

    fn attr_value(&mut self, tag_start: usize) -> Result<String> {
        let start = self.i;
        let mut out = String::new();
        match self.peek() {
            Some(q @ ('"' | '\'')) => {
                self.i += 1;
                loop {
                    match self.peek() {
                        None => return Err(self.err(start, "unterminated attribute value")),
                        Some(c) if c == q => {
                            self.i += 1;
                            return Ok(out);
                        }
                        Some('&') => out.push(self.entity()?),
                        Some(c) => {
                            out.push(c);
                            self.i += 1;
                        }
                    }
                }
            }
            None => Err(self.err(tag_start, "unterminated tag")),
            _ => {
                while let Some(c) = self.peek() {
                    if c.is_whitespace() || matches!(c, '>' | '"' | '\'' | '<' | '=' | '`') {
                        break;
                    }
                    if c == '&' {
                        out.push(self.entity()?);
                    } else {
                        out.push(c);
                        self.i += 1;
                    }
                }
                if out.is_empty() {
                    return Err(self.err(start, "missing attribute value"));
                }
                Ok(out)
            }
        }
    }

    /// Decodes a character reference starting at `&`.
    fn entity(&mut self) -> Result<char> {
        let start = self.i;
        let end = (self.i + 1..self.chars.len().min(self.i + 12)).find(|&k| self.chars[k] == ';');
        let Some(end) = end else {
            return Err(self.err(start, "invalid character reference"));
        };
        let body: String = self.chars[start + 1..end].iter().collect();
        let decoded = match body.as_str() {
            "amp" => Some('&'),
            "lt" => Some('<'),
            "gt" => Some('>'),
            "quot" => Some('"'),
            "apos" => Some('\''),
            b if b.starts_with("#x") || b.starts_with("#X") => u32::from_str_radix(&b[2..], 16)
                .ok()
                .and_then(char::from_u32),
            b if b.starts_with('#') => b[1..].parse().ok().and_then(char::from_u32),
            _ => None,
        };
        let c = decoded
            .ok_or_else(|| self.err(start, format!("invalid character reference &{body};")))?;
        self.i = end + 1;
        Ok(c)
    }
}

fn is_name_char(c: char) -> bool {
    c.is_ascii_alphanumeric() || matches!(c, '-' | '_' | ':' | '.')
}

fn is_attr_name_char(c: char) -> bool {
    !c.is_whitespace() && !c.is_control() && !matches!(c, '/' | '>' | '"' | '\'' | '=' | '<')
}

/// Replaces attribute values and whole element contents that equal a
/// dictionary name by holes for that variable. Returns the new DOM and the
/// names that matched nothing.
pub fn substitute_dom(dom: &[HtmlNode], dict: &VarDict) -> (Vec<HtmlNode>, Vec<String>) {
    let mut used = vec![false; dict.len()];
    let out = substitute_content(dom, dict, &mut used);
    let unmatched = dict
        .iter()
        .zip(&used)
        .filter(|(_, &u)| !u)
        .map(|(v, _)| v.name.clone())
        .collect();
    (out, unmatched)
}

fn lookup(dict: &VarDict, used: &mut [bool], name: &str) -> Option<Var> {
    let idx = dict.iter().position(|v| v.name == name)?;
    used[idx] = true;
    dict.iter().nth(idx).cloned()
}

fn substitute_content(content: &[HtmlNode], dict: &VarDict, used: &mut [bool]) -> Vec<HtmlNode> {
    if let [HtmlNode::Text(name)] = content {
        if let Some(var) = lookup(dict, used, name) {
            return vec![HtmlNode::Hole(var)];
        }
    }
    content
        .iter()
        .map(|node| match node {
            HtmlNode::Element {
                tag,
                attrs,
                children,
            } => HtmlNode::Element {
                tag: tag.clone(),
                attrs: attrs
                    .iter()
                    .map(|(name, value)| {
                        let value = match value {
                            AttrValue::Text(t) => match lookup(dict, used, t) {
                                Some(var) => AttrValue::Hole(var),
                                None => value.clone(),
                            },
                            hole => hole.clone(),
                        };
                        (name.clone(), value)
                    })
                    .collect(),
                children: substitute_content(children, dict, used),
            },
            other => other.clone(),
        })
        .collect()
}

pub type Bindings = HashMap<VarId, Term>;

pub fn escape_text(out: &mut String, text: &str) {
    for c in text.chars() {
        match c {
            '&' => out.push_str("&amp;"),
            '<' => out.push_str("&lt;"),
            '>' => out.push_str("&gt;"),
            c => out.push(c),
        }
    }
}

pub fn escape_attr(out: &mut String, text: &str) {
    for c in text.chars() {
        match c {
            '"' => out.push_str("&quot;"),
            c => escape_text(out, c.encode_utf8(&mut [0; 4])),
        }
    }
}

/// Serializes a DOM, filling holes from `bindings`.
pub fn serialize_html(dom: &[HtmlNode], bindings: &Bindings) -> Result<String> {
    let mut out = String::new();
    serialize_nodes(&mut out, dom, bindings)?;
    Ok(out)
}

fn serialize_nodes(out: &mut String, nodes: &[HtmlNode], bindings: &Bindings) -> Result<()> {
    for node in nodes {
        match node {
            HtmlNode::Text(t) => escape_text(out, t),
            HtmlNode::Hole(var) => {
                let value = bound(bindings, var)?;
                match scalar_text(value) {
                    Some(text) => escape_text(out, &text),
                    None => {
                        let nodes = dom_from_term(value)?;
                        serialize_nodes(out, &nodes, bindings)?;
                    }
                }
            }
            HtmlNode::Element {
                tag,
                attrs,
                children,
            } => {
                out.push('<');
                out.push_str(tag);
                for (name, value) in attrs {
                    let text = match value {
                        AttrValue::Text(t) => t.clone(),
                        AttrValue::Hole(var) => {
                            let value = bound(bindings, var)?;
                            scalar_text(value).ok_or_else(|| {
                                Error::Value(format!(
                                    "cannot use {value} as value of attribute {name}"
                                ))
                            })?
                        }
                    };
                    let _ = write!(out, " {name}=\"");
                    escape_attr(out, &text);
                    out.push('"');
                }
                out.push('>');
                if !is_void(tag) {
                    serialize_nodes(out, children, bindings)?;
                    let _ = write!(out, "</{tag}>");
                }
            }
        }
    }
    Ok(())
}

fn bound<'b>(bindings: &'b Bindings, var: &Var) -> Result<&'b Term> {
    match bindings.get(&var.id) {
        Some(Term::Var(v)) if v.id == var.id => Err(Error::Unbound(var.display_name())),
        Some(Term::Var(v)) => bound(bindings, v),
        Some(t) => Ok(t),
        None => Err(Error::Unbound(var.display_name())),
    }
}

fn scalar_text(term: &Term) -> Option<String> {
    match term {
        Term::Atom(a) if a != "[]" => Some(a.clone()),
        Term::Str(s) => Some(s.clone()),
        Term::Int(i) => Some(i.to_string()),
        Term::Float(x) => Some(format_float(*x)),
        _ => None,
    }
}

/// The DOM as a host term: a list of `element(Tag, [Name=Value, ...],
/// Content)`, text atoms and variables.
pub fn dom_to_term(dom: &[HtmlNode]) -> Term {
    Term::list(dom.iter().map(|node| match node {
        HtmlNode::Text(t) => Term::atom(t.clone()),
        HtmlNode::Hole(v) => Term::Var(v.clone()),
        HtmlNode::Element {
            tag,
            attrs,
            children,
        } => Term::compound(
            "element",
            vec![
                Term::atom(tag.clone()),
                Term::list(attrs.iter().map(|(name, value)| {
                    let value = match value {
                        AttrValue::Text(t) => Term::atom(t.clone()),
                        AttrValue::Hole(v) => Term::Var(v.clone()),
                    };
                    Term::compound("=", vec![Term::atom(name.clone()), value])
                })),
                dom_to_term(children),
            ],
        ),
    }))
}

/// Inverse of [`dom_to_term`]. Numbers and strings become text.
pub fn dom_from_term(term: &Term) -> Result<Vec<HtmlNode>> {
    let items = match term {
        Term::Compound(f, args) if f == "element" && args.len() == 3 => vec![term],
        _ => term
            .as_list()
            .ok_or_else(|| Error::Value(format!("not an HTML node list: {term}")))?,
    };
    items.into_iter().map(node_from_term).collect()
}

fn node_from_term(term: &Term) -> Result<HtmlNode> {
    if let Some(text) = scalar_text(term) {
        return Ok(HtmlNode::Text(text));
    }
    match term {
        Term::Var(v) => Ok(HtmlNode::Hole(v.clone())),
        Term::Compound(f, args) if f == "element" && args.len() == 3 => {
            let Term::Atom(tag) = &args[0] else {
                return Err(Error::Value(format!("invalid element tag: {}", args[0])));
            };
            let attr_items = args[1]
                .as_list()
                .ok_or_else(|| Error::Value(format!("invalid attribute list: {}", args[1])))?;
            let mut attrs = Vec::new();
            for a in attr_items {
                match a {
                    Term::Compound(eq, kv) if eq == "=" && kv.len() == 2 => {
                        let Term::Atom(name) = &kv[0] else {
                            return Err(Error::Value(format!("invalid attribute: {a}")));
                        };
                        let value =
                            match &kv[1] {
                                Term::Var(v) => AttrValue::Hole(v.clone()),
                                other => AttrValue::Text(scalar_text(other).ok_or_else(|| {
                                    Error::Value(format!("invalid attribute: {a}"))
                                })?),
                            };
                        attrs.push((name.clone(), value));
                    }
                    _ => return Err(Error::Value(format!("invalid attribute: {a}"))),
                }
            }
            Ok(HtmlNode::Element {
                tag: tag.clone(),
                attrs,
                children: dom_from_term(&args[2])?,
            })
        }
        other => Err(Error::Value(format!("not an HTML node: {other}"))),
    }
}

/// `{|html(Var, ...)||...|}`: the result is the DOM term with holes for
/// the listed variables.
pub struct HtmlQuoter;

impl Quoter for HtmlQuoter {
    fn name(&self) -> &str {
        "html"
    }

    fn quote(&self, call: &mut QuoteCall<'_>) -> Result<Term> {
        let dict = filter_qq_dict(call.var_dict, call.args);
        let dom = parse_html_strict(call.content)?;
        let (dom, unmatched) = substitute_dom(&dom, &dict);
        for name in unmatched {
            let pos = call.pos.clone();
            call.warn(
                pos,
                format!("variable {name} matches no attribute value or element content"),
            );
        }
        Ok(dom_to_term(&dom))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::term::VarId;

    fn dict(entries: &[(&str, u32)]) -> VarDict {
        entries
            .iter()
            .map(|&(n, i)| Var::new(VarId(i), n))
            .collect()
    }

    fn var(name: &str, id: u32) -> Var {
        Var::new(VarId(id), name)
    }

    #[test]
    fn parses_simple_element() {
        assert_eq!(
            parse_html_str("<p>hi</p>").unwrap(),
            [HtmlNode::element("p", vec![], vec![HtmlNode::text("hi")])]
        );
    }

    #[test]
    fn mismatched_end_tag_position() {
        let err = parse_html_str("<p></q>").unwrap_err();
        assert_eq!(err.message(), "mismatched end tag </q>");
        assert_eq!(err.pos().unwrap().char_offset, 3);
    }

    #[test]
    fn optional_p_close() {
        let dom = parse_html_str("<p>a<p>b<div>c</div><ul><li>x<li>y</ul>").unwrap();
        let li = |t| HtmlNode::element("li", vec![], vec![HtmlNode::text(t)]);
        assert_eq!(
            dom,
            [
                HtmlNode::element("p", vec![], vec![HtmlNode::text("a")]),
                HtmlNode::element("p", vec![], vec![HtmlNode::text("b")]),
                HtmlNode::element("div", vec![], vec![HtmlNode::text("c")]),
                HtmlNode::element("ul", vec![], vec![li("x"), li("y")]),
            ]
        );
    }

    #[test]
    fn eof_inside_element_is_an_error() {
        let err = parse_html_str("<div><b>x</b>").unwrap_err();
        assert_eq!(err.message(), "end of input inside element <div>");
        assert_eq!(err.pos().unwrap().char_offset, 13);
    }

    #[test]
    fn tags_and_attributes() {
        let dom = parse_html_str("<DIV Class='a&amp;b' id=x hidden><BR><img src=\"i.png\"/></div>")
            .unwrap();
        let HtmlNode::Element {
            tag,
            attrs,
            children,
        } = &dom[0]
        else {
            panic!()
        };
        assert_eq!(tag, "div");
        assert_eq!(
            attrs,
            &[
                ("class".to_string(), AttrValue::Text("a&b".into())),
                ("id".to_string(), AttrValue::Text("x".into())),
                ("hidden".to_string(), AttrValue::Text("".into())),
            ]
        );
        assert_eq!(children.len(), 2);
    }

    #[test]
    fn strict_errors() {
        for (src, msg) in [
            ("<a href=\"x>", "unterminated attribute value"),
            ("<a href", "unterminated tag"),
            ("<a x=1 x=2></a>", "duplicate attribute x"),
            ("a < b", "unexpected \"<\""),
            ("AT&T", "invalid character reference"),
            ("</p>", "unexpected end tag </p>"),
            ("<!-- x", "unterminated comment"),
        ] {
            let err = parse_html_str(src).unwrap_err();
            assert_eq!(err.message(), msg, "{src}");
        }
    }

    #[test]
    fn entities_and_comments() {
        let dom = parse_html_str("a&lt;&#65;&#x42;<!-- gone -->&quot;").unwrap();
        assert_eq!(dom, [HtmlNode::text("a<AB\"")]);
    }

    #[test]
    fn content_substitution_needs_sole_text() {
        let dom = parse_html_str("<span class=\"time\">Date</span><p>x Date</p><b>Date<i></i></b>")
            .unwrap();
        let (out, unmatched) = substitute_dom(&dom, &dict(&[("Date", 1)]));
        let HtmlNode::Element { children, .. } = &out[0] else {
            panic!()
        };
        assert_eq!(children, &[HtmlNode::Hole(var("Date", 1))]);
        assert_eq!(out[1], dom[1]);
        assert_eq!(out[2], dom[2]);
        assert!(unmatched.is_empty());
    }

    #[test]
    fn attribute_substitution() {
        let dom = parse_html_str("<a href=\"Url\" title=\"url\">x</a>").unwrap();
        let (out, unmatched) = substitute_dom(&dom, &dict(&[("Url", 3), ("Other", 4)]));
        let HtmlNode::Element { attrs, .. } = &out[0] else {
            panic!()
        };
        assert_eq!(attrs[0].1, AttrValue::Hole(var("Url", 3)));
        assert_eq!(attrs[1].1, AttrValue::Text("url".into()));
        assert_eq!(unmatched, ["Other"]);
    }

    #[test]
    fn top_level_sole_text_is_substituted() {
        let dom = parse_html_str("Name").unwrap();
        let (out, _) = substitute_dom(&dom, &dict(&[("Name", 1)]));
        assert_eq!(out, [HtmlNode::Hole(var("Name", 1))]);
    }

    #[test]
    fn serialize_escapes() {
        let dom = [HtmlNode::element(
            "p",
            vec![("title", "\"q\" & <")],
            vec![HtmlNode::text("a<b")],
        )];
        assert_eq!(
            serialize_html(&dom, &Bindings::new()).unwrap(),
            "<p title=\"&quot;q&quot; &amp; &lt;\">a&lt;b</p>"
        );
    }

    #[test]
    fn hole_values_are_escaped() {
        let dom = [HtmlNode::element(
            "p",
            vec![],
            vec![HtmlNode::Hole(var("X", 1))],
        )];
        let b = Bindings::from([(VarId(1), Term::atom("<script>alert(1)</script>"))]);
        assert_eq!(
            serialize_html(&dom, &b).unwrap(),
            "<p>&lt;script&gt;alert(1)&lt;/script&gt;</p>"
        );
    }

    #[test]
    fn node_list_holes_serialize_recursively() {
        let dom = [HtmlNode::Hole(var("X", 1))];
        let inner = dom_to_term(&[HtmlNode::element("b", vec![], vec![HtmlNode::text("x")])]);
        let b = Bindings::from([(VarId(1), inner)]);
        assert_eq!(serialize_html(&dom, &b).unwrap(), "<b>x</b>");
    }

    #[test]
    fn unbound_hole_names_variable() {
        let dom = [
            HtmlNode::element("br", vec![], vec![]),
            HtmlNode::Hole(var("Date", 1)),
        ];
        let err = serialize_html(&dom, &Bindings::new()).unwrap_err();
        assert_eq!(err.to_string(), "unbound substitution variable Date");
    }

    #[test]
    fn void_elements_have_no_end_tag() {
        let dom = parse_html_str("<br><input type=text>").unwrap();
        assert_eq!(
            serialize_html(&dom, &Bindings::new()).unwrap(),
            "<br><input type=\"text\">"
        );
    }

    #[test]
    fn term_conversion_round_trips() {
        let dom = parse_html_str("<a href=\"U\">t<br></a> x").unwrap();
        let (dom, _) = substitute_dom(&dom, &dict(&[("U", 1)]));
        let term = dom_to_term(&dom);
        assert_eq!(
            term.to_string(),
            "[element(a,[=(href,U)],[t,element(br,[],[])]),' x']"
        );
        assert_eq!(dom_from_term(&term).unwrap(), dom);
    }
}
