//! A term reader with quasi quotations.
//!
//! Source text such as
//!
//! ```text
//! page(Date, P) :- P = {|html(Date)||<p>It is <b>Date</b></p>|}.
//! ```
//!
//! is read into a [`Term`] in which every `{|Syntax||Text|}` region is first
//! a placeholder. Once the whole term is read, [`expand`] calls the quoter
//! named by `Syntax` with the raw text, the syntax arguments and the
//! variable dictionary, and splices the quoter's result term into the
//! placeholder. Three quoters are provided: [`html`], [`js`] and
//! [`sparql`].

pub mod content;
pub mod error;
pub mod html;
pub mod js;
pub mod lexer;
pub mod ops;
pub mod pos;
pub mod quasi;
pub mod reader;
pub mod render;
pub mod sparql;
pub mod term;

pub use content::{ContentReader, QuotationContent};
pub use error::{Error, Result};
pub use lexer::{tokenize, Token, TokenKind};
pub use pos::SourcePos;
pub use quasi::{
    expand, filter_qq_dict, quoter_fn, Expansion, QuoteCall, Quoter, QuoterRegistry, SplicedResult,
    Warning,
};
pub use reader::{decompose_syntax, read_term, read_terms, PendingQuotation, ReadTerm, Reader};
pub use term::{Term, Var, VarDict, VarId};
