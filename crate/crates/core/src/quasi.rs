//! Quoter registry and expansion of quasi quotations.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use crate::content::QuotationContent;
use crate::error::{Error, Result};
use crate::pos::SourcePos;
use crate::reader::{decompose_syntax, PendingQuotation, ReadTerm};
use crate::term::{Term, Var, VarDict, VarId};

/// Everything a quoter receives for one quotation.
pub struct QuoteCall<'a> {
    /// Placeholder index of the quotation within its term.
    pub index: usize,
    pub syntax_name: &'a str,
    pub content: &'a QuotationContent,
    pub args: &'a [Term],
    pub var_dict: &'a VarDict,
    /// Position of the opening `{|`.
    pub pos: &'a SourcePos,
    next_var: &'a mut u32,
    warnings: &'a mut Vec<Warning>,
}

/// A non-fatal finding reported by a quoter.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Warning {
    pub pos: SourcePos,
    pub message: String,
}

impl fmt::Display for Warning {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: warning: {}", self.pos, self.message)
    }
}

impl QuoteCall<'_> {
    pub fn warn(&mut self, pos: SourcePos, message: impl Into<String>) {
        self.warnings.push(Warning {
            pos,
            message: message.into(),
        });
    }

    /// A variable distinct from every variable of the enclosing term.
    pub fn fresh_var(&mut self) -> Var {
        *self.next_var += 1;
        Var::new(VarId(*self.next_var), "_")
    }
}

/// A named transformation from quoted material to a term.
pub trait Quoter: Send + Sync {
    fn name(&self) -> &str;

    fn quote(&self, call: &mut QuoteCall<'_>) -> Result<Term>;
}

struct FnQuoter<F> {
    name: String,
    f: F,
}

impl<F> Quoter for FnQuoter<F>
where
    F: Fn(&mut QuoteCall<'_>) -> Result<Term> + Send + Sync,
{
    fn name(&self) -> &str {
        &self.name
    }

    fn quote(&self, call: &mut QuoteCall<'_>) -> Result<Term> {
        (self.f)(call)
    }
}

/// Wraps a closure as a quoter.
pub fn quoter_fn<F>(name: impl Into<String>, f: F) -> impl Quoter
where
    F: Fn(&mut QuoteCall<'_>) -> Result<Term> + Send + Sync,
{
    FnQuoter {
        name: name.into(),
        f,
    }
}

#[derive(Clone, Default)]
pub struct QuoterRegistry {
    quoters: BTreeMap<String, Arc<dyn Quoter>>,
}

impl fmt::Debug for QuoterRegistry {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.quoters.keys()).finish()
    }
}

impl QuoterRegistry {
    pub fn new() -> Self {
        QuoterRegistry::default()
    }

    /// A registry with the `html`, `javascript` and `sparql` quoters.
    pub fn standard() -> Self {
        QuoterRegistry::new()
            .register(crate::html::HtmlQuoter)
            .and_then(|r| r.register(crate::js::JsQuoter))
            .and_then(|r| r.register(crate::sparql::SparqlQuoter))
            .expect("standard quoter names are distinct")
    }

    pub fn register(self, quoter: impl Quoter + 'static) -> Result<Self> {
        self.register_arc(Arc::new(quoter))
    }

    pub fn register_arc(mut self, quoter: Arc<dyn Quoter>) -> Result<Self> {
        let name = quoter.name().to_string();
        if self.quoters.contains_key(&name) {
            return Err(Error::DuplicateQuoter(name));
        }
        self.quoters.insert(name, quoter);
        Ok(self)
    }

    pub fn lookup(&self, name: &str) -> Option<&dyn Quoter> {
        self.quoters.get(name).map(|q| q.as_ref())
    }

    pub fn names(&self) -> impl Iterator<Item = &str> {
        self.quoters.keys().map(String::as_str)
    }

    /// The sub-registry holding only `names`. Unknown names are an error.
    pub fn select<S: AsRef<str>>(&self, names: &[S]) -> Result<Self> {
        let mut out = QuoterRegistry::new();
        for name in names {
            let name = name.as_ref();
            let quoter = self
                .quoters
                .get(name)
                .ok_or_else(|| Error::Value(format!("unknown quoter {name}")))?;
            out = out.register_arc(Arc::clone(quoter))?;
        }
        Ok(out)
    }
}

/// The entries of `var_dict` whose variable is one of `syntax_args`.
/// Non-variable arguments select nothing.
pub fn filter_qq_dict(var_dict: &VarDict, syntax_args: &[Term]) -> VarDict {
    var_dict.filter(|v| {
        syntax_args
            .iter()
            .any(|a| a.as_var().is_some_and(|av| av.id == v.id))
    })
}

/// A quoter result and where it was spliced.
#[derive(Debug, Clone, PartialEq)]
pub struct SplicedResult {
    pub index: usize,
    pub syntax_name: String,
    pub pos: SourcePos,
    pub term: Term,
}

/// A term with all quasi quotations replaced by their quoter results.
#[derive(Debug, Clone, PartialEq)]
pub struct Expansion {
    pub term: Term,
    pub var_dict: VarDict,
    pub results: Vec<SplicedResult>,
    pub warnings: Vec<Warning>,
    /// Variable ids in use, including fresh variables made by quoters.
    pub var_count: u32,
}

/// Calls the quoter of each pending quotation in placeholder order and
/// splices the results into `term`. Quoter results are not re-scanned.
pub fn expand(
    term: &Term,
    pending: &[PendingQuotation],
    var_dict: &VarDict,
    registry: &QuoterRegistry,
    var_count: u32,
) -> Result<Expansion> {
    let mut ordered: Vec<&PendingQuotation> = pending.iter().collect();
    ordered.sort_by_key(|q| q.placeholder_index);
    let mut next_var = var_count;
    let mut results = Vec::with_capacity(ordered.len());
    let mut warnings = Vec::new();
    for q in ordered {
        let (name, args) = decompose_syntax(&q.syntax);
        let quoter = registry.lookup(&name).ok_or_else(|| {
            Error::syntax(
                q.pos.clone(),
                format!("unknown quasi quotation syntax {name}"),
            )
        })?;
        let mut call = QuoteCall {
            index: q.placeholder_index,
            syntax_name: &name,
            content: &q.content,
            args: &args,
            var_dict,
            pos: &q.pos,
            next_var: &mut next_var,
            warnings: &mut warnings,
        };
        let result = quoter.quote(&mut call)?;
        results.push(SplicedResult {
            index: q.placeholder_index,
            syntax_name: name,
            pos: q.pos.clone(),
            term: result,
        });
    }

    let mut missing = None;
    let term = term.map(&mut |t| match t {
        Term::Placeholder(i) => {
            let found = results
                .iter()
                .find(|r| r.index == *i)
                .map(|r| r.term.clone());
            if found.is_none() {
                missing.get_or_insert(*i);
            }
            found
        }
        _ => None,
    });
    if let Some(i) = missing {
        return Err(Error::Value(format!(
            "no quasi quotation for placeholder {i}"
        )));
    }
    Ok(Expansion {
        term,
        var_dict: var_dict.clone(),
        results,
        warnings,
        var_count: next_var,
    })
}

impl ReadTerm {
    pub fn expand(&self, registry: &QuoterRegistry) -> Result<Expansion> {
        expand(
            &self.term,
            &self.quotations,
            &self.var_dict,
            registry,
            self.var_count,
        )
    }
}
