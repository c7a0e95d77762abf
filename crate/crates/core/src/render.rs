//! Rendering expanded quotation results with user bindings.

use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::html::{dom_from_term, serialize_html, Bindings};
use crate::js::{parts_from_term, render_script, JsValue};
use crate::quasi::{Expansion, SplicedResult};
use crate::term::{Term, VarId};

/// Binds dictionary variables by name. Names absent from the dictionary
/// are ignored.
pub fn bind_by_name<'a>(
    expansion: &Expansion,
    values: impl IntoIterator<Item = (&'a str, &'a Term)>,
) -> Bindings {
    values
        .into_iter()
        .filter_map(|(name, value)| {
            let var = expansion.var_dict.get(name)?;
            Some((var.id, value.clone()))
        })
        .collect()
}

/// Serializes one `html` or `javascript` result. Other quoter results
/// yield `None`.
pub fn render_result(result: &SplicedResult, bindings: &Bindings) -> Option<Result<String>> {
    match result.syntax_name.as_str() {
        "html" => Some(dom_from_term(&result.term).and_then(|dom| serialize_html(&dom, bindings))),
        "javascript" => Some(parts_from_term(&result.term).and_then(|parts| {
            let js_bindings = js_bindings(&parts, bindings)?;
            render_script(&parts, &js_bindings)
        })),
        _ => None,
    }
}

fn js_bindings(
    parts: &[crate::js::JsPart],
    bindings: &Bindings,
) -> Result<HashMap<VarId, JsValue>> {
    let mut out = HashMap::new();
    for part in parts {
        if let crate::js::JsPart::ExprHole(var) = part {
            let term = bindings
                .get(&var.id)
                .ok_or_else(|| Error::Unbound(var.display_name()))?;
            out.insert(var.id, JsValue::from_term(term)?);
        }
    }
    Ok(out)
}
