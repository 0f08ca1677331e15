use std::collections::HashSet;
use std::str::FromStr;

use isodyn_core::kernel::RelationKind;

use super::eval::is_constructor;
use super::lexer::{tokenize, Tok, Token};
use super::{Arg, Call, DslError, Program, Span, Stmt};

const KEYWORD_ASSERT: &str = "assert";

#[derive(Clone, Copy)]
enum Callee {
    Relation,
    Constructor,
}

struct Parser {
    toks: Vec<Token>,
    pos: usize,
    defined: HashSet<String>,
}

/// Parses and checks a program: names are single-assignment and defined
/// before use, constructors and relations come from the fixed vocabulary.
pub fn parse(src: &str) -> Result<Program, DslError> {
    let mut p = Parser {
        toks: tokenize(src)?,
        pos: 0,
        defined: HashSet::new(),
    };
    let mut stmts = Vec::new();
    let mut spans = Vec::new();
    loop {
        while p.peek().tok == Tok::Newline {
            p.pos += 1;
        }
        if p.peek().tok == Tok::Eof {
            break;
        }
        let span = p.peek().span;
        stmts.push(p.statement()?);
        spans.push(span);
        let t = p.next();
        if !matches!(t.tok, Tok::Newline | Tok::Eof) {
            return Err(syntax(&t, "end of line"));
        }
        if t.tok == Tok::Eof {
            break;
        }
    }
    Ok(Program::new(stmts, spans))
}

fn syntax(t: &Token, expected: &'static str) -> DslError {
    DslError::Syntax {
        span: t.span,
        token: t.text.clone(),
        expected,
    }
}

impl Parser {
    fn peek(&self) -> &Token {
        &self.toks[self.pos]
    }

    fn next(&mut self) -> Token {
        let t = self.toks[self.pos].clone();
        if t.tok != Tok::Eof {
            self.pos += 1;
        }
        t
    }

    fn expect(&mut self, want: Tok, expected: &'static str) -> Result<Token, DslError> {
        let t = self.next();
        if t.tok == want {
            Ok(t)
        } else {
            Err(syntax(&t, expected))
        }
    }

    fn ident(&mut self, expected: &'static str) -> Result<(String, Span), DslError> {
        let t = self.next();
        match t.tok {
            Tok::Ident(name) => Ok((name, t.span)),
            _ => Err(syntax(&t, expected)),
        }
    }

    fn statement(&mut self) -> Result<Stmt, DslError> {
        let (head, span) = self.ident("a name or `assert`")?;
        if head == KEYWORD_ASSERT {
            return Ok(Stmt::Assert(self.call(Callee::Relation)?));
        }
        self.expect(Tok::Assign, "`:=`")?;
        let call = self.call(Callee::Constructor)?;
        if !self.defined.insert(head.clone()) {
            return Err(DslError::Redefinition { span, name: head });
        }
        Ok(Stmt::Bind { name: head, call })
    }

    fn call(&mut self, callee: Callee) -> Result<Call, DslError> {
        let (func, span) = match callee {
            Callee::Relation => self.ident("a relation name")?,
            Callee::Constructor => self.ident("a constructor name")?,
        };
        match callee {
            Callee::Relation if RelationKind::from_str(&func).is_err() => {
                return Err(DslError::UnknownRelation { span, name: func })
            }
            Callee::Constructor if !is_constructor(&func) => {
                return Err(DslError::UnknownConstructor { span, name: func })
            }
            _ => {}
        }
        self.expect(Tok::LParen, "`(`")?;
        let mut args = Vec::new();
        if self.peek().tok == Tok::RParen {
            self.pos += 1;
            return Ok(Call { func, args });
        }
        loop {
            args.push(self.arg()?);
            let t = self.next();
            match t.tok {
                Tok::Comma => continue,
                Tok::RParen => break,
                _ => return Err(syntax(&t, "`,` or `)`")),
            }
        }
        Ok(Call { func, args })
    }

    fn arg(&mut self) -> Result<Arg, DslError> {
        let t = self.next();
        match t.tok {
            Tok::Ident(name) => {
                if name == KEYWORD_ASSERT || !self.defined.contains(&name) {
                    return Err(DslError::UseBeforeDefine { span: t.span, name });
                }
                Ok(Arg::Name(name))
            }
            Tok::Number(x) => Ok(Arg::Number(x)),
            Tok::Angle(d) => Ok(Arg::Angle(d)),
            _ => Err(syntax(&t, "a name, number or angle")),
        }
    }
}
