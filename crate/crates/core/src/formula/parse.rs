use crate::boolean::FunctionSet;
use crate::error::{AbdError, Pos, Result};

use super::ast::Formula;
use super::literal::Literal;

#[derive(Debug, Clone, PartialEq)]
enum Tok<'a> {
    Open,
    Close,
    Atom(&'a str),
}

fn tokenize(text: &str, line: usize) -> Vec<(Tok<'_>, Pos)> {
    let mut out = Vec::new();
    let mut chars = text.char_indices().peekable();
    while let Some(&(i, c)) = chars.peek() {
        let pos = Pos {
            line,
            column: text[..i].chars().count() + 1,
        };
        match c {
            '(' => {
                out.push((Tok::Open, pos));
                chars.next();
            }
            ')' => {
                out.push((Tok::Close, pos));
                chars.next();
            }
            c if c.is_whitespace() => {
                chars.next();
            }
            _ => {
                let start = i;
                let mut end = text.len();
                while let Some(&(j, d)) = chars.peek() {
                    if d.is_whitespace() || d == '(' || d == ')' {
                        end = j;
                        break;
                    }
                    chars.next();
                }
                out.push((Tok::Atom(&text[start..end]), pos));
            }
        }
    }
    out
}

pub fn is_identifier(s: &str) -> bool {
    let mut cs = s.chars();
    match cs.next() {
        Some(c) if c.is_ascii_alphabetic() || c == '_' => {}
        _ => return false,
    }
    cs.all(|c| c.is_ascii_alphanumeric() || c == '_' || c == '\'')
}

/// Parses `formula := var | 0 | 1 | ( fname formula+ )` against the declared
/// connectives.
pub fn parse_formula(text: &str, fns: &FunctionSet) -> Result<Formula> {
    parse_formula_at(text, fns, 1)
}

/// As [`parse_formula`], reporting positions on the given line number.
pub fn parse_formula_at(text: &str, fns: &FunctionSet, line: usize) -> Result<Formula> {
    let toks = tokenize(text, line);
    let end = Pos {
        line,
        column: text.chars().count() + 1,
    };
    let mut p = Parser {
        toks: &toks,
        i: 0,
        fns,
        end,
    };
    let f = p.formula()?;
    if let Some((_, pos)) = toks.get(p.i) {
        return Err(AbdError::Syntax {
            pos: *pos,
            msg: "trailing input after formula".into(),
        });
    }
    Ok(f)
}

struct Parser<'a, 't> {
    toks: &'t [(Tok<'a>, Pos)],
    i: usize,
    fns: &'t FunctionSet,
    end: Pos,
}

impl Parser<'_, '_> {
    fn formula(&mut self) -> Result<Formula> {
        let Some((tok, pos)) = self.toks.get(self.i).cloned() else {
            return Err(AbdError::Syntax {
                pos: self.end,
                msg: "unexpected end of input".into(),
            });
        };
        self.i += 1;
        match tok {
            Tok::Close => Err(AbdError::Syntax {
                pos,
                msg: "unexpected `)`".into(),
            }),
            Tok::Atom("0") => Ok(Formula::Const(false)),
            Tok::Atom("1") => Ok(Formula::Const(true)),
            Tok::Atom(a) => {
                if is_identifier(a) {
                    Ok(Formula::Var(a.to_string()))
                } else {
                    Err(AbdError::Syntax {
                        pos,
                        msg: format!("invalid variable name `{a}`"),
                    })
                }
            }
            Tok::Open => {
                let Some((Tok::Atom(name), npos)) = self.toks.get(self.i).cloned() else {
                    return Err(AbdError::Syntax {
                        pos,
                        msg: "expected a connective name after `(`".into(),
                    });
                };
                self.i += 1;
                let Some(c) = self.fns.get(name).cloned() else {
                    return Err(AbdError::UnknownConnective {
                        name: name.to_string(),
                        pos: npos,
                    });
                };
                let mut args = Vec::new();
                loop {
                    match self.toks.get(self.i) {
                        Some((Tok::Close, _)) => {
                            self.i += 1;
                            break;
                        }
                        None => {
                            return Err(AbdError::Syntax {
                                pos: self.end,
                                msg: "missing `)`".into(),
                            })
                        }
                        _ => args.push(self.formula()?),
                    }
                }
                if args.len() != c.arity() {
                    return Err(AbdError::ArityMismatch {
                        name: c.name.clone(),
                        expected: c.arity(),
                        found: args.len(),
                        pos: Some(npos),
                    });
                }
                if c.arity() == 0 {
                    return Ok(Formula::Const(c.table.bit(0)));
                }
                Ok(Formula::Apply(c, args))
            }
        }
    }
}

/// Parses `x` or `!x`.
pub fn parse_literal(text: &str) -> Result<Literal> {
    let (positive, name) = match text.strip_prefix('!') {
        Some(rest) => (false, rest),
        None => (true, text),
    };
    if !is_identifier(name) {
        return Err(AbdError::Input(format!("invalid literal `{text}`")));
    }
    Ok(Literal::new(name, positive))
}
