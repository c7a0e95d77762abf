mod common;

use proptest::prelude::*;
use qq_core::html::{
    parse_html_str, serialize_html, substitute_dom, AttrValue, Bindings, HtmlNode,
};
use qq_core::{Term, Var, VarDict, VarId};

const TAGS: &[&str] = &["div", "span", "b", "em", "section", "a", "table", "h1"];
const VOID: &[&str] = &["br", "img", "hr", "input"];

fn config(cases: u32) -> ProptestConfig {
    ProptestConfig {
        cases,
        failure_persistence: None,
        ..ProptestConfig::default()
    }
}

fn attrs() -> impl Strategy<Value = Vec<(String, AttrValue)>> {
    prop::collection::btree_map("[a-z][a-z0-9-]{0,4}", any::<String>(), 0..3).prop_map(|m| {
        m.into_iter()
            .map(|(k, v)| (k, AttrValue::Text(v)))
            .collect()
    })
}

fn merge_text(nodes: Vec<HtmlNode>) -> Vec<HtmlNode> {
    let mut out: Vec<HtmlNode> = Vec::new();
    for node in nodes {
        match (out.last_mut(), node) {
            (Some(HtmlNode::Text(prev)), HtmlNode::Text(t)) => prev.push_str(&t),
            (_, node) => out.push(node),
        }
    }
    out
}

/// DOMs without optional end tags, with no empty or adjacent text nodes.
fn dom() -> impl Strategy<Value = Vec<HtmlNode>> {
    let leaf = prop_oneof![
        "\\PC{1,12}".prop_map(HtmlNode::Text),
        (prop::sample::select(VOID), attrs()).prop_map(|(tag, attrs)| HtmlNode::Element {
            tag: tag.into(),
            attrs,
            children: vec![],
        }),
    ];
    let node = leaf.prop_recursive(4, 40, 4, |inner| {
        (
            prop::sample::select(TAGS),
            attrs(),
            prop::collection::vec(inner, 0..4),
        )
            .prop_map(|(tag, attrs, children)| HtmlNode::Element {
                tag: tag.into(),
                attrs,
                children: merge_text(children),
            })
    });
    prop::collection::vec(node, 0..4).prop_map(merge_text)
}

fn hole_dom(text: &str) -> (Vec<HtmlNode>, Bindings) {
    let dict: VarDict = [Var::new(VarId(1), "X")].into_iter().collect();
    let dom = parse_html_str("<div title=\"X\"><p>X</p></div>").unwrap();
    let (dom, unmatched) = substitute_dom(&dom, &dict);
    assert!(unmatched.is_empty());
    let bindings = Bindings::from([(VarId(1), Term::atom(text))]);
    (dom, bindings)
}

proptest! {
    #![proptest_config(config(300))]

    #[test]
    fn bound_text_never_becomes_markup(text in "(\\PC|[<>&\"'])+") {
        let (dom, bindings) = hole_dom(&text);
        let html = serialize_html(&dom, &bindings).unwrap();
        let back = parse_html_str(&html).unwrap();
        let expected = vec![HtmlNode::Element {
            tag: "div".into(),
            attrs: vec![("title".into(), AttrValue::Text(text.clone()))],
            children: vec![HtmlNode::element("p", vec![], vec![HtmlNode::Text(text)])],
        }];
        prop_assert_eq!(back, expected);
    }

    #[test]
    fn serialize_then_parse_is_identity(dom in dom()) {
        let html = serialize_html(&dom, &Bindings::new()).unwrap();
        let back = parse_html_str(&html).map_err(|e| TestCaseError::fail(format!("{html}: {e}")))?;
        prop_assert_eq!(back, dom);
    }

    #[test]
    fn substitution_is_idempotent(dom in dom(), names in prop::collection::btree_set("[A-Z][a-z]{0,3}", 0..4)) {
        let dict: VarDict = names.iter().enumerate().map(|(i, n)| Var::new(VarId(i as u32 + 1), n.as_str())).collect();
        let (once, _) = substitute_dom(&dom, &dict);
        let (twice, _) = substitute_dom(&once, &dict);
        prop_assert_eq!(once, twice);
    }

    #[test]
    fn placed_names_give_no_warning(names in prop::collection::btree_set("[A-Z][a-z]{0,3}", 1..5)) {
        let body: String = names.iter().enumerate().map(|(i, n)| {
            if i % 2 == 0 { format!("<b>{n}</b>") } else { format!("<a href=\"{n}\">link</a>") }
        }).collect();
        let dom = parse_html_str(&format!("<div>{body}</div>")).unwrap();
        let dict: VarDict = names.iter().enumerate().map(|(i, n)| Var::new(VarId(i as u32 + 1), n.as_str())).collect();
        let (_, unmatched) = substitute_dom(&dom, &dict);
        prop_assert!(unmatched.is_empty(), "{:?}", unmatched);
    }
}
