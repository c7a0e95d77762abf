//! Python bindings: reading, expanding and rendering terms with quasi
//! quotations.

use pyo3::create_exception;
use pyo3::exceptions::{PyTypeError, PyValueError};
use pyo3::prelude::*;
use pyo3::types::{PyBool, PyDict, PyFloat, PyInt, PyList, PyString, PyTuple};

use qq_core::html::escape_text;
use qq_core::js::{render_js_value, JsValue};
use qq_core::render::{bind_by_name, render_result};
use qq_core::{read_term, read_terms, Error, QuoterRegistry, SourcePos};

create_exception!(
    qq,
    QuasiQuotationError,
    PyValueError,
    "A syntax, expansion or rendering error."
);

fn to_py_err(err: Error) -> PyErr {
    QuasiQuotationError::new_err(err.to_string())
}

fn registry(quoters: Option<Vec<String>>) -> PyResult<QuoterRegistry> {
    let registry = QuoterRegistry::standard();
    match quoters {
        Some(names) => registry.select(&names).map_err(to_py_err),
        None => Ok(registry),
    }
}

/// A host language term.
#[pyclass(frozen, skip_from_py_object, module = "qq", name = "Term")]
#[derive(Clone)]
pub struct PyTerm {
    inner: qq_core::Term,
}

#[pymethods]
impl PyTerm {
    /// Parses one term; the final fullstop is optional.
    #[staticmethod]
    fn parse(text: &str) -> PyResult<Self> {
        parse_term(text).map(|inner| PyTerm { inner })
    }

    /// One of "atom", "var", "int", "float", "string", "compound".
    #[getter]
    fn kind(&self) -> &'static str {
        use qq_core::Term::*;
        match &self.inner {
            Atom(_) => "atom",
            Var(_) => "var",
            Int(_) => "int",
            Float(_) => "float",
            Str(_) => "string",
            Compound(..) => "compound",
            Placeholder(_) => "placeholder",
        }
    }

    /// Functor or atom name, variable name, or `None`.
    #[getter]
    fn name(&self) -> Option<String> {
        use qq_core::Term::*;
        match &self.inner {
            Atom(a) | Compound(a, _) => Some(a.clone()),
            Var(v) => Some(v.display_name()),
            _ => None,
        }
    }

    #[getter]
    fn args(&self) -> Vec<PyTerm> {
        match &self.inner {
            qq_core::Term::Compound(_, args) => {
                args.iter().map(|a| PyTerm { inner: a.clone() }).collect()
            }
            _ => Vec::new(),
        }
    }

    /// The Python value of a number, string or atom.
    #[getter]
    fn value<'py>(&self, py: Python<'py>) -> PyResult<Option<Bound<'py, PyAny>>> {
        use qq_core::Term::*;
        Ok(match &self.inner {
            Int(i) => Some(i.into_pyobject(py)?.into_any()),
            Float(x) => Some(x.into_pyobject(py)?.into_any()),
            Str(s) | Atom(s) => Some(s.into_pyobject(py)?.into_any()),
            _ => None,
        })
    }

    /// Variable names in order of occurrence, repeated names included.
    fn variables(&self) -> Vec<String> {
        self.inner.vars().iter().map(|v| v.display_name()).collect()
    }

    fn clause(&self) -> String {
        self.inner.to_clause_string()
    }

    fn __str__(&self) -> String {
        self.inner.to_string()
    }

    fn __repr__(&self) -> String {
        format!("Term({:?})", self.inner.to_string())
    }

    fn __eq__(&self, other: &Self) -> bool {
        self.inner == other.inner
    }
}

/// A token of the term reader.
#[pyclass(frozen, module = "qq", name = "Token", get_all)]
pub struct PyToken {
    kind: String,
    lexeme: String,
    text: String,
    line: usize,
    column: usize,
    offset: usize,
}

#[pymethods]
impl PyToken {
    fn __repr__(&self) -> String {
        format!(
            "Token({}, {:?}, {}:{})",
            self.kind, self.lexeme, self.line, self.column
        )
    }
}

/// A quoter result and the position of its quotation.
#[pyclass(frozen, module = "qq", name = "QuotationResult", get_all)]
pub struct PyQuotationResult {
    syntax: String,
    line: usize,
    column: usize,
    term: PyTerm,
}

/// One term with its quasi quotations expanded.
#[pyclass(frozen, module = "qq", name = "Expansion")]
pub struct PyExpansion {
    inner: qq_core::Expansion,
}

#[pymethods]
impl PyExpansion {
    #[getter]
    fn term(&self) -> PyTerm {
        PyTerm {
            inner: self.inner.term.clone(),
        }
    }

    /// Names of the clause variables in order of first occurrence.
    #[getter]
    fn variables(&self) -> Vec<String> {
        self.inner.var_dict.iter().map(|v| v.name.clone()).collect()
    }

    #[getter]
    fn warnings(&self) -> Vec<String> {
        self.inner.warnings.iter().map(|w| w.to_string()).collect()
    }

    #[getter]
    fn results(&self) -> Vec<PyQuotationResult> {
        self.inner
            .results
            .iter()
            .map(|r| PyQuotationResult {
                syntax: r.syntax_name.clone(),
                line: r.pos.line,
                column: r.pos.column,
                term: PyTerm {
                    inner: r.term.clone(),
                },
            })
            .collect()
    }

    /// Renders the html and javascript results with `bindings`, a dict
    /// from variable name to term text or `Term`.
    #[pyo3(signature = (bindings = None))]
    fn render(&self, bindings: Option<&Bound<'_, PyDict>>) -> PyResult<Vec<String>> {
        let values = bindings_from_dict(bindings)?;
        let bound = bind_by_name(&self.inner, values.iter().map(|(n, t)| (n.as_str(), t)));
        let mut out = Vec::new();
        for result in &self.inner.results {
            if let Some(text) = render_result(result, &bound) {
                out.push(text.map_err(|e| to_py_err(located(e, &result.pos)))?);
            }
        }
        Ok(out)
    }

    fn __str__(&self) -> String {
        self.inner.term.to_clause_string()
    }

    fn __repr__(&self) -> String {
        format!("Expansion({:?})", self.inner.term.to_clause_string())
    }
}

fn located(err: Error, pos: &SourcePos) -> Error {
    match err.pos() {
        Some(_) => err,
        None => Error::syntax(pos.clone(), err.to_string()),
    }
}

fn parse_term(text: &str) -> PyResult<qq_core::Term> {
    let mut source = text.trim_end().to_string();
    if !source.ends_with('.') {
        source.push_str(" .");
    }
    read_term(&source, "<term>")
        .map(|r| r.term)
        .map_err(to_py_err)
}

fn bindings_from_dict(dict: Option<&Bound<'_, PyDict>>) -> PyResult<Vec<(String, qq_core::Term)>> {
    let Some(dict) = dict else {
        return Ok(Vec::new());
    };
    let mut out = Vec::new();
    for (key, value) in dict.iter() {
        let name: String = key.extract()?;
        let term = match value.cast::<PyTerm>() {
            Ok(t) => t.get().inner.clone(),
            Err(_) => parse_term(&value.extract::<String>()?)?,
        };
        if !term.vars().is_empty() {
            return Err(PyValueError::new_err(format!(
                "binding for {name} must not contain variables"
            )));
        }
        out.push((name, term));
    }
    Ok(out)
}

/// Tokenizes source text.
#[pyfunction]
#[pyo3(signature = (text, file = "<string>"))]
fn tokenize(text: &str, file: &str) -> PyResult<Vec<PyToken>> {
    let tokens = qq_core::tokenize(text, file).map_err(to_py_err)?;
    Ok(tokens
        .into_iter()
        .map(|t| PyToken {
            kind: t.kind.to_string(),
            lexeme: t.lexeme,
            text: t.text,
            line: t.pos.line,
            column: t.pos.column,
            offset: t.pos.char_offset,
        })
        .collect())
}

/// Reads and expands every term of `text`.
#[pyfunction]
#[pyo3(signature = (text, file = "<string>", quoters = None))]
fn expand(text: &str, file: &str, quoters: Option<Vec<String>>) -> PyResult<Vec<PyExpansion>> {
    let registry = registry(quoters)?;
    read_terms(text, file)
        .map(|read| {
            let inner = read.and_then(|r| r.expand(&registry)).map_err(to_py_err)?;
            Ok(PyExpansion { inner })
        })
        .collect()
}

/// Expands `text` and renders all html and javascript quotations,
/// joined by newlines.
#[pyfunction]
#[pyo3(signature = (text, bindings = None, file = "<string>", quoters = None))]
fn render(
    text: &str,
    bindings: Option<&Bound<'_, PyDict>>,
    file: &str,
    quoters: Option<Vec<String>>,
) -> PyResult<String> {
    let mut parts = Vec::new();
    for e in expand(text, file, quoters)? {
        parts.extend(e.render(bindings)?);
    }
    Ok(parts.join("\n"))
}

fn js_value(obj: &Bound<'_, PyAny>) -> PyResult<JsValue> {
    if obj.is_none() {
        return Ok(JsValue::Null);
    }
    if let Ok(b) = obj.cast::<PyBool>() {
        return Ok(if b.is_true() {
            JsValue::True
        } else {
            JsValue::False
        });
    }
    if obj.is_instance_of::<PyInt>() {
        return Ok(JsValue::Int(obj.extract()?));
    }
    if obj.is_instance_of::<PyFloat>() {
        return Ok(JsValue::Float(obj.extract()?));
    }
    if obj.is_instance_of::<PyString>() {
        return Ok(JsValue::Str(obj.extract()?));
    }
    if let Ok(t) = obj.cast::<PyTerm>() {
        return JsValue::from_term(&t.get().inner).map_err(to_py_err);
    }
    if let Ok(d) = obj.cast::<PyDict>() {
        let pairs = d
            .iter()
            .map(|(k, v)| Ok((k.extract::<String>()?, js_value(&v)?)))
            .collect::<PyResult<Vec<_>>>()?;
        return Ok(JsValue::Object(pairs));
    }
    if obj.is_instance_of::<PyList>() || obj.is_instance_of::<PyTuple>() {
        let items = obj
            .try_iter()?
            .map(|item| js_value(&item?))
            .collect::<PyResult<Vec<_>>>()?;
        return Ok(JsValue::List(items));
    }
    Err(PyTypeError::new_err(format!(
        "cannot convert {} to a JavaScript value",
        obj.get_type().name()?
    )))
}

/// The JavaScript literal for a Python value or `Term`.
#[pyfunction]
fn js_literal(value: &Bound<'_, PyAny>) -> PyResult<String> {
    render_js_value(&js_value(value)?).map_err(to_py_err)
}

/// Escapes text for use as HTML element content.
#[pyfunction]
fn escape_html(text: &str) -> String {
    let mut out = String::new();
    escape_text(&mut out, text);
    out
}

#[pymodule]
fn qq(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyTerm>()?;
    m.add_class::<PyToken>()?;
    m.add_class::<PyExpansion>()?;
    m.add_class::<PyQuotationResult>()?;
    m.add(
        "QuasiQuotationError",
        m.py().get_type::<QuasiQuotationError>(),
    )?;
    m.add_function(wrap_pyfunction!(tokenize, m)?)?;
    m.add_function(wrap_pyfunction!(expand, m)?)?;
    m.add_function(wrap_pyfunction!(render, m)?)?;
    m.add_function(wrap_pyfunction!(js_literal, m)?)?;
    m.add_function(wrap_pyfunction!(escape_html, m)?)?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn binding_text_needs_no_fullstop() {
        assert_eq!(
            parse_term("'2013-06-20'").unwrap(),
            qq_core::Term::atom("2013-06-20")
        );
        assert_eq!(parse_term("f(x).").unwrap().to_string(), "f(x)");
    }

    #[test]
    fn render_through_python_objects() {
        Python::initialize();
        Python::attach(|py| {
            let bindings = PyDict::new(py);
            bindings.set_item("X", "'<b>'").unwrap();
            let html = render(
                "p(X, T) :- T = {|html(X)||<i>X</i>|}.",
                Some(&bindings),
                "t.pl",
                None,
            )
            .unwrap();
            assert_eq!(html, "<i>&lt;b&gt;</i>");
            let value = PyList::new(py, [1, 2]).unwrap();
            assert_eq!(js_literal(value.as_any()).unwrap(), "[1,2]");
            let err = render("p(T) :- T = {|html(X)||<i>X</i>|}.", None, "t.pl", None).unwrap_err();
            assert!(
                err.to_string().contains("unbound substitution variable X"),
                "{err}"
            );
        });
    }
}
