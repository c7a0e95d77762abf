mod common;

use common::{js_strings, js_unescape, js_value_strategy};
use proptest::prelude::*;
use qq_core::js::{partition_js, render_js_value, tokenize_js, JsPart, JsTokenKind};
use qq_core::{Var, VarDict, VarId};

const NAMES: &[&str] = &["Complete", "OnClick", "X", "Obj", "$el"];

fn config(cases: u32) -> ProptestConfig {
    ProptestConfig {
        cases,
        failure_persistence: None,
        ..ProptestConfig::default()
    }
}

fn dict() -> VarDict {
    NAMES
        .iter()
        .enumerate()
        .map(|(i, n)| Var::new(VarId(i as u32 + 1), *n))
        .collect()
}

/// Fragments that keep their token boundaries when separated by a space.
fn fragment() -> impl Strategy<Value = String> {
    prop_oneof![
        prop::sample::select(NAMES).prop_map(String::from),
        "[a-z_$][a-zA-Z0-9_]{0,5}",
        prop::sample::select(&["var", "function", "return", "this", "typeof", "null"][..])
            .prop_map(String::from),
        "[0-9]{1,4}(\\.[0-9]{1,3})?",
        prop::sample::select(
            &[
                "+", "-", "*", "(", ")", "{", "}", "[", "]", ";", ",", ".", "===", "&&", "=", ":",
                "?"
            ][..]
        )
        .prop_map(String::from),
        quoted_with_names(),
        "[\n\t ]{1,3}",
    ]
}

/// Literals whose body is one of the dictionary names.
fn quoted_with_names() -> impl Strategy<Value = String> {
    (prop::sample::select(NAMES), 0..5usize).prop_map(|(n, kind)| match kind {
        0 => format!("\"{n}\""),
        1 => format!("'x {n}'"),
        2 => format!("// {n}\n"),
        3 => format!("/* {n} */"),
        _ => format!("= /{n}[/]x/g"),
    })
}

fn reassemble(parts: &[JsPart]) -> String {
    parts
        .iter()
        .map(|p| match p {
            JsPart::Literal(s) => s.clone(),
            JsPart::ExprHole(v) => v.name.clone(),
        })
        .collect()
}

proptest! {
    #![proptest_config(config(300))]

    #[test]
    fn partition_tiles_the_payload(frags in prop::collection::vec(fragment(), 0..30)) {
        let payload = frags.join(" ");
        let tokens = tokenize_js(&payload).map_err(|e| TestCaseError::fail(format!("{payload:?}: {e:?}")))?;
        let parts = partition_js(&tokens, &dict());
        prop_assert_eq!(reassemble(&parts), payload);
        for w in parts.windows(2) {
            prop_assert!(!matches!(w, [JsPart::Literal(_), JsPart::Literal(_)]));
        }
    }

    #[test]
    fn names_inside_literals_are_not_holes(frags in prop::collection::vec(quoted_with_names(), 1..10)) {
        let payload = frags.join(" ");
        let tokens = tokenize_js(&payload).unwrap();
        let parts = partition_js(&tokens, &dict());
        prop_assert!(parts.iter().all(|p| matches!(p, JsPart::Literal(_))), "{:?}", parts);
    }

    #[test]
    fn rendered_atom_is_one_string_token(s in any::<String>()) {
        let text = render_js_value(&qq_core::js::JsValue::Str(s.clone())).unwrap();
        let tokens = tokenize_js(&text).unwrap();
        prop_assert_eq!(tokens.len(), 1);
        prop_assert_eq!(tokens[0].kind, JsTokenKind::String);
        prop_assert_eq!(js_unescape(&tokens[0].lexeme), Some(s));
        prop_assert!(!text.contains("</"));
    }

    #[test]
    fn rendered_values_retokenize(value in js_value_strategy()) {
        let text = render_js_value(&value).unwrap();
        let tokens = tokenize_js(&text).map_err(|e| TestCaseError::fail(format!("{text}: {e:?}")))?;
        let decoded: Vec<_> = tokens.iter().filter(|t| t.kind == JsTokenKind::String).map(|t| js_unescape(&t.lexeme)).collect();
        let mut expected = Vec::new();
        js_strings(&value, &mut expected);
        prop_assert_eq!(decoded, expected.into_iter().map(Some).collect::<Vec<_>>());
    }
}
