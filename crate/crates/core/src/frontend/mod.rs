//! Parsing of linear Datalog programs over semirings and grounding into
//! matrix systems.

mod ast;
mod edb;
mod ground;
mod parser;

use thiserror::Error;

pub use ast::{classify_linearity, Atom, Fact, Linearity, Product, Program, Rule, Span, Term};
pub use edb::{active_domain, EdbInstance, GroundAtom};
pub use ground::{ground, ground_linear, ground_polynomial, Grounded};
pub use parser::parse_program;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FrontendError {
    #[error("syntax error at {line}:{col}: {message}")]
    Syntax {
        line: usize,
        col: usize,
        message: String,
    },
    #[error("error at {line}:{col}: {message}")]
    Semantic {
        line: usize,
        col: usize,
        message: String,
    },
    #[error("bad fact at {location}: {message}")]
    BadFact { location: String, message: String },
    #[error("fact `{atom}` is for the derived predicate `{pred}`; derived values come from evaluation only")]
    IdbFact { pred: String, atom: String },
    #[error("unknown predicate `{pred}` at {line}:{col}: it heads no rule and has no facts (declare it with `@edb {pred}/<arity>`)")]
    UnknownPredicate {
        pred: String,
        line: usize,
        col: usize,
    },
    #[error("rule `{rule}` has a product with more than one derived atom; the linear form does not apply")]
    Nonlinear { rule: String },
}
