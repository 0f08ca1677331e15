//! Figure programs: a line-oriented, single-assignment construction
//! language.
//!
//! ```text
//! T := triangle_angles(60deg, 70deg)
//! S := isodynamic1(T)
//! assert inside(S, T)
//! ```
//!
//! Every statement is either a binding `name := constructor(args)` or an
//! assertion `assert relation(args)`. Arguments are names, numbers or
//! angle literals in degrees. `#` starts a comment.

mod eval;
mod lexer;
mod parser;

use std::fmt;

use thiserror::Error;

pub use eval::{evaluate, is_constructor, EvalContext, EvalError, Evaluation, Residual, CONSTRUCTORS};
pub use parser::parse;

/// 1-based source position.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct Span {
    pub line: usize,
    pub col: usize,
}

impl fmt::Display for Span {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.line, self.col)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum Arg {
    Name(String),
    Number(f64),
    /// Angle literal, kept in degrees as written.
    Angle(f64),
}

#[derive(Debug, Clone, PartialEq)]
pub struct Call {
    pub func: String,
    pub args: Vec<Arg>,
}

#[derive(Debug, Clone, PartialEq)]
pub enum Stmt {
    Bind { name: String, call: Call },
    Assert(Call),
}

/// A parsed program. Equality ignores source positions.
#[derive(Debug, Clone)]
pub struct Program {
    pub stmts: Vec<Stmt>,
    spans: Vec<Span>,
}

impl Program {
    pub(crate) fn new(stmts: Vec<Stmt>, spans: Vec<Span>) -> Self {
        Self { stmts, spans }
    }

    /// Position of statement `i`.
    pub fn span(&self, i: usize) -> Span {
        self.spans.get(i).copied().unwrap_or_default()
    }

    pub fn assertions(&self) -> impl Iterator<Item = &Call> {
        self.stmts.iter().filter_map(|s| match s {
            Stmt::Assert(c) => Some(c),
            Stmt::Bind { .. } => None,
        })
    }

    pub fn bindings(&self) -> impl Iterator<Item = &str> {
        self.stmts.iter().filter_map(|s| match s {
            Stmt::Bind { name, .. } => Some(name.as_str()),
            Stmt::Assert(_) => None,
        })
    }
}

impl PartialEq for Program {
    fn eq(&self, other: &Self) -> bool {
        self.stmts == other.stmts
    }
}

impl fmt::Display for Arg {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Arg::Name(n) => f.write_str(n),
            Arg::Number(x) => write!(f, "{x}"),
            Arg::Angle(d) => write!(f, "{d}deg"),
        }
    }
}

impl fmt::Display for Call {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}(", self.func)?;
        for (i, a) in self.args.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{a}")?;
        }
        f.write_str(")")
    }
}

impl fmt::Display for Stmt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Stmt::Bind { name, call } => write!(f, "{name} := {call}"),
            Stmt::Assert(call) => write!(f, "assert {call}"),
        }
    }
}

/// Canonical source: one statement per line, no comments.
impl fmt::Display for Program {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for s in &self.stmts {
            writeln!(f, "{s}")?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum DslError {
    #[error("{span}: syntax error at `{token}`, expected {expected}")]
    Syntax {
        span: Span,
        token: String,
        expected: &'static str,
    },
    #[error("{span}: unknown constructor `{name}`")]
    UnknownConstructor { span: Span, name: String },
    #[error("{span}: unknown relation `{name}`")]
    UnknownRelation { span: Span, name: String },
    #[error("{span}: `{name}` is used before it is defined")]
    UseBeforeDefine { span: Span, name: String },
    #[error("{span}: `{name}` is already defined")]
    Redefinition { span: Span, name: String },
}

impl DslError {
    pub fn span(&self) -> Span {
        match self {
            DslError::Syntax { span, .. }
            | DslError::UnknownConstructor { span, .. }
            | DslError::UnknownRelation { span, .. }
            | DslError::UseBeforeDefine { span, .. }
            | DslError::Redefinition { span, .. } => *span,
        }
    }
}
