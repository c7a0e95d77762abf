#![allow(dead_code)]

use std::collections::HashMap;
use std::path::PathBuf;

use proptest::prelude::*;
use qq_core::js::JsValue;
use qq_core::{Term, Var, VarId};

pub fn fixture(name: &str) -> String {
    let path = PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("tests/fixtures")
        .join(name);
    std::fs::read_to_string(&path).unwrap_or_else(|e| panic!("{}: {e}", path.display()))
}

pub fn fixture_path(name: &str) -> String {
    format!("{}/tests/fixtures/{name}", env!("CARGO_MANIFEST_DIR"))
}

/// Line and column (1-based) of the character at `char_offset`, counted
/// directly over the text.
pub fn line_col(text: &str, char_offset: usize) -> (usize, usize) {
    let mut line = 1;
    let mut col = 1;
    for c in text.chars().take(char_offset) {
        if c == '\n' {
            line += 1;
            col = 1;
        } else {
            col += 1;
        }
    }
    (line, col)
}

/// Character offset of `line:col` (1-based) inside `text`.
pub fn offset_of(text: &str, line: usize, col: usize) -> usize {
    let mut offset = 0;
    for (i, l) in text.split('\n').enumerate() {
        if i + 1 == line {
            return offset + col - 1;
        }
        offset += l.chars().count() + 1;
    }
    panic!("line {line} out of range");
}

/// Structural equality up to consistent renaming of variables.
pub fn variant(a: &Term, b: &Term) -> bool {
    fn go(
        a: &Term,
        b: &Term,
        ab: &mut HashMap<VarId, VarId>,
        ba: &mut HashMap<VarId, VarId>,
    ) -> bool {
        match (a, b) {
            (Term::Var(x), Term::Var(y)) => {
                *ab.entry(x.id).or_insert(y.id) == y.id && *ba.entry(y.id).or_insert(x.id) == x.id
            }
            (Term::Float(x), Term::Float(y)) => x.to_bits() == y.to_bits(),
            (Term::Compound(f, xs), Term::Compound(g, ys)) => {
                f == g && xs.len() == ys.len() && xs.iter().zip(ys).all(|(x, y)| go(x, y, ab, ba))
            }
            _ => a == b,
        }
    }
    go(a, b, &mut HashMap::new(), &mut HashMap::new())
}

const ATOMS: &[&str] = &[
    "a",
    "foo",
    "bar_1",
    "[]",
    "{}",
    "!",
    ";",
    ",",
    "|",
    "-",
    "+",
    ":-",
    "=",
    ":",
    "\\+",
    "-->",
    "->",
    "is",
    "mod",
    ".",
    "A",
    "_x",
    "hello world",
    "it's",
    "{|",
    "|}",
    "||",
    "back\\slash",
    "tab\there",
    "line\nbreak",
    "é",
    "日本",
    "",
    "/*",
    "%",
    "\"",
    "a.b",
    "'",
    "0",
];

const FUNCTORS: &[&str] = &[
    "f", "g", "point", "-", "+", "*", ":-", ",", "=", ":", "\\+", ";", "->", "is", "{}", ".", "[]",
    "Weird", "a b", "|",
];

const VAR_NAMES: &[&str] = &["X", "Y", "Zed", "_Tmp", "A1", "_"];

fn leaf() -> impl Strategy<Value = Term> {
    prop_oneof![
        prop::sample::select(ATOMS).prop_map(Term::atom),
        (0usize..VAR_NAMES.len()).prop_map(|i| {
            let name = VAR_NAMES[i];
            Term::Var(Var::new(VarId(i as u32 + 1), name))
        }),
        any::<i64>().prop_map(Term::Int),
        any::<f64>()
            .prop_filter("finite", |x| x.is_finite())
            .prop_map(Term::Float),
        "[a-z\"'\\\\\n|{}% ]{0,8}".prop_map(Term::Str),
    ]
}

/// Random terms of depth at most `depth`. Anonymous variables get a
/// distinct id per occurrence.
pub fn term_strategy(depth: u32) -> impl Strategy<Value = Term> {
    leaf()
        .prop_recursive(depth, 64, 4, |inner| {
            prop_oneof![
                (
                    prop::sample::select(FUNCTORS),
                    prop::collection::vec(inner.clone(), 1..4)
                )
                    .prop_map(|(f, args)| Term::compound(f, args)),
                prop::collection::vec(inner.clone(), 0..4).prop_map(Term::list),
                (prop::collection::vec(inner.clone(), 1..3), inner)
                    .prop_map(|(items, tail)| Term::list_with_tail(items, tail)),
            ]
        })
        .prop_map(|t| {
            let mut next = 100;
            t.map(&mut |t| match t {
                Term::Var(v) if v.is_anonymous() => {
                    next += 1;
                    Some(Term::Var(Var::new(VarId(next), "_")))
                }
                _ => None,
            })
        })
}

/// Quotation payloads that never contain `|}`.
pub fn payload_strategy() -> impl Strategy<Value = String> {
    "(\\PC|[\n\t|}{'\"%.])*"
        .prop_map(|s: String| s)
        .prop_filter("no closing delimiter", |s| {
            !s.contains("|}") && !s.ends_with('|')
        })
}

pub fn js_value_strategy() -> impl Strategy<Value = JsValue> {
    let leaf = prop_oneof![
        any::<i64>().prop_map(JsValue::Int),
        any::<f64>()
            .prop_filter("finite", |x| x.is_finite())
            .prop_map(JsValue::Float),
        any::<String>().prop_map(JsValue::Str),
        "(</script>|<!--|\u{2028}|\u{2029}|[\"\\\\\n\r\t\0\u{1}<>&'])*".prop_map(JsValue::Str),
        Just(JsValue::True),
        Just(JsValue::False),
        Just(JsValue::Null),
    ];
    leaf.prop_recursive(4, 48, 5, |inner| {
        prop_oneof![
            prop::collection::vec(inner.clone(), 0..5).prop_map(JsValue::List),
            prop::collection::btree_map(any::<String>(), inner, 0..5)
                .prop_map(|m| JsValue::Object(m.into_iter().collect())),
        ]
    })
}

/// Every string in `value` (object keys included) in rendering order.
pub fn js_strings(value: &JsValue, out: &mut Vec<String>) {
    match value {
        JsValue::Str(s) => out.push(s.clone()),
        JsValue::List(items) => items.iter().for_each(|v| js_strings(v, out)),
        JsValue::Object(pairs) => {
            for (k, v) in pairs {
                out.push(k.clone());
                js_strings(v, out);
            }
        }
        _ => {}
    }
}

/// Decodes a JavaScript string literal (with its quotes) following the
/// ECMAScript escape rules, independent of the library's encoder.
pub fn js_unescape(literal: &str) -> Option<String> {
    let mut chars = literal.chars();
    let quote = chars.next()?;
    if quote != '"' && quote != '\'' {
        return None;
    }
    let body: Vec<char> = chars.collect();
    if body.last() != Some(&quote) {
        return None;
    }
    let body = &body[..body.len() - 1];
    let mut units: Vec<u16> = Vec::new();
    let mut i = 0;
    let push = |units: &mut Vec<u16>, c: char| {
        let mut buf = [0u16; 2];
        units.extend_from_slice(c.encode_utf16(&mut buf));
    };
    let hex = |digits: &[char]| -> Option<u32> {
        let s: String = digits.iter().collect();
        u32::from_str_radix(&s, 16).ok()
    };
    while i < body.len() {
        let c = body[i];
        if c == quote || c == '\n' || c == '\r' {
            return None;
        }
        if c != '\\' {
            push(&mut units, c);
            i += 1;
            continue;
        }
        let e = *body.get(i + 1)?;
        i += 2;
        match e {
            'n' => units.push(0x0A),
            'r' => units.push(0x0D),
            't' => units.push(0x09),
            'b' => units.push(0x08),
            'f' => units.push(0x0C),
            'v' => units.push(0x0B),
            '0' => units.push(0),
            'x' => {
                units.push(hex(body.get(i..i + 2)?)? as u16);
                i += 2;
            }
            'u' => {
                units.push(hex(body.get(i..i + 4)?)? as u16);
                i += 4;
            }
            '\n' => {}
            other => push(&mut units, other),
        }
    }
    String::from_utf16(&units).ok()
}
