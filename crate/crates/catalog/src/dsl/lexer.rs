use super::{DslError, Span};

#[derive(Debug, Clone, PartialEq)]
pub(crate) enum Tok {
    Ident(String),
    Number(f64),
    Angle(f64),
    Assign,
    LParen,
    RParen,
    Comma,
    Newline,
    Eof,
}

#[derive(Debug, Clone)]
pub(crate) struct Token {
    pub tok: Tok,
    pub span: Span,
    pub text: String,
}

fn is_ident_start(c: char) -> bool {
    c.is_ascii_alphabetic() || c == '_'
}

fn is_ident_char(c: char) -> bool {
    c.is_ascii_alphanumeric() || c == '_'
}

pub(crate) fn tokenize(src: &str) -> Result<Vec<Token>, DslError> {
    let chars: Vec<char> = src.chars().collect();
    let mut out = Vec::new();
    let (mut i, mut line, mut col) = (0, 1, 1);
    while i < chars.len() {
        let c = chars[i];
        let span = Span { line, col };
        let start = i;
        let tok = match c {
            '\n' => {
                i += 1;
                out.push(Token { tok: Tok::Newline, span, text: "\\n".into() });
                line += 1;
                col = 1;
                continue;
            }
            ' ' | '\t' | '\r' => {
                i += 1;
                col += 1;
                continue;
            }
            '#' => {
                while i < chars.len() && chars[i] != '\n' {
                    i += 1;
                }
                continue;
            }
            '(' => {
                i += 1;
                Tok::LParen
            }
            ')' => {
                i += 1;
                Tok::RParen
            }
            ',' => {
                i += 1;
                Tok::Comma
            }
            ':' if chars.get(i + 1) == Some(&'=') => {
                i += 2;
                Tok::Assign
            }
            c if is_ident_start(c) => {
                while i < chars.len() && is_ident_char(chars[i]) {
                    i += 1;
                }
                Tok::Ident(chars[start..i].iter().collect())
            }
            c if c.is_ascii_digit() || c == '.' || (c == '-' && starts_number(&chars, i + 1)) => {
                lex_number(&chars, &mut i, span)?
            }
            other => {
                return Err(DslError::Syntax {
                    span,
                    token: other.to_string(),
                    expected: "a name, number, `:=`, `(`, `)` or `,`",
                })
            }
        };
        let text: String = chars[start..i].iter().collect();
        col += i - start;
        out.push(Token { tok, span, text });
    }
    out.push(Token { tok: Tok::Eof, span: Span { line, col }, text: "end of input".into() });
    Ok(out)
}

fn starts_number(chars: &[char], i: usize) -> bool {
    match chars.get(i) {
        Some(c) if c.is_ascii_digit() => true,
        Some('.') => chars.get(i + 1).is_some_and(|c| c.is_ascii_digit()),
        _ => false,
    }
}

fn lex_number(chars: &[char], i: &mut usize, span: Span) -> Result<Tok, DslError> {
    let start = *i;
    if chars[*i] == '-' {
        *i += 1;
    }
    while *i < chars.len() && (chars[*i].is_ascii_digit() || chars[*i] == '.') {
        *i += 1;
    }
    if *i < chars.len() && (chars[*i] == 'e' || chars[*i] == 'E') {
        let mut j = *i + 1;
        if j < chars.len() && (chars[j] == '+' || chars[j] == '-') {
            j += 1;
        }
        if j < chars.len() && chars[j].is_ascii_digit() {
            while j < chars.len() && chars[j].is_ascii_digit() {
                j += 1;
            }
            *i = j;
        }
    }
    let text: String = chars[start..*i].iter().collect();
    let value: f64 = text.parse().map_err(|_| DslError::Syntax {
        span,
        token: text.clone(),
        expected: "a number",
    })?;
    let rest: String = chars[*i..].iter().take(4).collect();
    if rest.starts_with("deg") && !rest[3..].chars().next().is_some_and(is_ident_char) {
        *i += 3;
        return Ok(Tok::Angle(value));
    }
    if *i < chars.len() && is_ident_char(chars[*i]) {
        let mut j = *i;
        while j < chars.len() && is_ident_char(chars[j]) {
            j += 1;
        }
        return Err(DslError::Syntax {
            span,
            token: chars[start..j].iter().collect(),
            expected: "a number or an angle such as `60deg`",
        });
    }
    Ok(Tok::Number(value))
}
