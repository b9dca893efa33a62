//! Recursive-descent parser for the ASCII formula grammar.
//!
//! ```text
//! formula := imp ('<->' imp)*
//! imp     := or ('->' imp)?                      right associative
//! or      := and ('|' and)*
//! and     := unary ('&' unary)*
//! unary   := '~' unary | '@' unary | '!' unary
//!          | ('forall' | 'exists') ident '.' formula
//!          | primary
//! primary := '(' formula ')' | ident '(' terms ')' ['=' term] | ident ['=' term]
//! ```
//!
//! Quantifiers extend as far right as possible. A bare identifier in formula
//! position is a propositional letter. In term position an identifier is a
//! constant when the signature declares it, otherwise a variable.
//! The Unicode spellings `¬ ∘ ∧ ∨ → ↔ ∼ ∀ ∃ ≈` are accepted too.

use super::{Formula, Signature, SyntaxError, Term, EQ};

pub(crate) const KEYWORDS: &[&str] = &["forall", "exists"];

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Ident(String),
    LParen,
    RParen,
    Comma,
    Dot,
    Tilde,
    At,
    Bang,
    Amp,
    Bar,
    Arrow,
    DArrow,
    Equals,
    Forall,
    Exists,
}

fn describe(t: &Tok) -> String {
    match t {
        Tok::Ident(s) => format!("`{s}`"),
        Tok::LParen => "`(`".into(),
        Tok::RParen => "`)`".into(),
        Tok::Comma => "`,`".into(),
        Tok::Dot => "`.`".into(),
        Tok::Tilde => "`~`".into(),
        Tok::At => "`@`".into(),
        Tok::Bang => "`!`".into(),
        Tok::Amp => "`&`".into(),
        Tok::Bar => "`|`".into(),
        Tok::Arrow => "`->`".into(),
        Tok::DArrow => "`<->`".into(),
        Tok::Equals => "`=`".into(),
        Tok::Forall => "`forall`".into(),
        Tok::Exists => "`exists`".into(),
    }
}

fn tokenize(text: &str) -> Result<Vec<(usize, Tok)>, SyntaxError> {
    let mut out = Vec::new();
    let mut it = text.char_indices().peekable();
    while let Some(&(pos, c)) = it.peek() {
        if c.is_whitespace() {
            it.next();
            continue;
        }
        if c.is_ascii_alphabetic() || c == '_' {
            let mut s = String::new();
            while let Some(&(_, d)) = it.peek() {
                if d.is_ascii_alphanumeric() || d == '_' || d == '\'' {
                    s.push(d);
                    it.next();
                } else {
                    break;
                }
            }
            let tok = match s.as_str() {
                "forall" => Tok::Forall,
                "exists" => Tok::Exists,
                _ => Tok::Ident(s),
            };
            out.push((pos, tok));
            continue;
        }
        it.next();
        let tok = match c {
            '(' => Tok::LParen,
            ')' => Tok::RParen,
            ',' => Tok::Comma,
            '.' => Tok::Dot,
            '~' | '¬' => Tok::Tilde,
            '@' | '∘' => Tok::At,
            '!' | '∼' => Tok::Bang,
            '&' | '∧' => Tok::Amp,
            '|' | '∨' => Tok::Bar,
            '=' | '≈' => Tok::Equals,
            '→' => Tok::Arrow,
            '↔' => Tok::DArrow,
            '∀' => Tok::Forall,
            '∃' => Tok::Exists,
            '-' => match it.next() {
                Some((_, '>')) => Tok::Arrow,
                _ => {
                    return Err(SyntaxError::Parse {
                        pos,
                        msg: "expected `->`".into(),
                    })
                }
            },
            '<' => match (it.next(), it.next()) {
                (Some((_, '-')), Some((_, '>'))) => Tok::DArrow,
                _ => {
                    return Err(SyntaxError::Parse {
                        pos,
                        msg: "expected `<->`".into(),
                    })
                }
            },
            other => {
                return Err(SyntaxError::Parse {
                    pos,
                    msg: format!("unexpected character `{other}`"),
                })
            }
        };
        out.push((pos, tok));
    }
    Ok(out)
}

enum SigMode<'a> {
    Fixed(&'a Signature),
    Inferring(&'a mut Signature),
}

impl SigMode<'_> {
    fn sig(&self) -> &Signature {
        match self {
            SigMode::Fixed(s) => s,
            SigMode::Inferring(s) => s,
        }
    }
}

struct Parser<'a> {
    toks: Vec<(usize, Tok)>,
    idx: usize,
    end: usize,
    sig: SigMode<'a>,
}

impl Parser<'_> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.idx).map(|(_, t)| t)
    }

    fn pos(&self) -> usize {
        self.toks.get(self.idx).map(|(p, _)| *p).unwrap_or(self.end)
    }

    fn err<T>(&self, msg: impl Into<String>) -> Result<T, SyntaxError> {
        Err(SyntaxError::Parse {
            pos: self.pos(),
            msg: msg.into(),
        })
    }

    fn bump(&mut self) -> Option<Tok> {
        let t = self.toks.get(self.idx).map(|(_, t)| t.clone());
        self.idx += 1;
        t
    }

    fn expect(&mut self, want: Tok) -> Result<(), SyntaxError> {
        match self.peek() {
            Some(t) if *t == want => {
                self.idx += 1;
                Ok(())
            }
            Some(t) => {
                let found = describe(t);
                self.err(format!("expected {}, found {found}", describe(&want)))
            }
            None => self.err(format!("expected {}, found end of input", describe(&want))),
        }
    }

    fn formula(&mut self) -> Result<Formula, SyntaxError> {
        let mut lhs = self.imp()?;
        while self.peek() == Some(&Tok::DArrow) {
            self.idx += 1;
            let rhs = self.imp()?;
            lhs = Formula::iff(lhs, rhs);
        }
        Ok(lhs)
    }

    fn imp(&mut self) -> Result<Formula, SyntaxError> {
        let lhs = self.or()?;
        if self.peek() == Some(&Tok::Arrow) {
            self.idx += 1;
            let rhs = self.imp()?;
            return Ok(Formula::imp(lhs, rhs));
        }
        Ok(lhs)
    }

    fn or(&mut self) -> Result<Formula, SyntaxError> {
        let mut lhs = self.and()?;
        while self.peek() == Some(&Tok::Bar) {
            self.idx += 1;
            let rhs = self.and()?;
            lhs = Formula::or(lhs, rhs);
        }
        Ok(lhs)
    }

    fn and(&mut self) -> Result<Formula, SyntaxError> {
        let mut lhs = self.unary()?;
        while self.peek() == Some(&Tok::Amp) {
            self.idx += 1;
            let rhs = self.unary()?;
            lhs = Formula::and(lhs, rhs);
        }
        Ok(lhs)
    }

    fn unary(&mut self) -> Result<Formula, SyntaxError> {
        match self.peek() {
            Some(Tok::Tilde) => {
                self.idx += 1;
                Ok(Formula::neg(self.unary()?))
            }
            Some(Tok::At) => {
                self.idx += 1;
                Ok(Formula::cons(self.unary()?))
            }
            Some(Tok::Bang) => {
                self.idx += 1;
                Ok(Formula::strong_neg(self.unary()?))
            }
            Some(Tok::Forall) | Some(Tok::Exists) => {
                let q = self.bump();
                let x = match self.bump() {
                    Some(Tok::Ident(x)) if !self.sig().is_constant(&x) => x,
                    _ => {
                        self.idx -= 1;
                        return self.err("expected a variable after quantifier");
                    }
                };
                self.expect(Tok::Dot)?;
                let body = self.formula()?;
                Ok(if q == Some(Tok::Forall) {
                    Formula::forall(&x, body)
                } else {
                    Formula::exists(&x, body)
                })
            }
            _ => self.primary(),
        }
    }

    fn sig(&self) -> &Signature {
        self.sig.sig()
    }

    fn primary(&mut self) -> Result<Formula, SyntaxError> {
        match self.peek() {
            Some(Tok::LParen) => {
                self.idx += 1;
                let f = self.formula()?;
                self.expect(Tok::RParen)?;
                Ok(f)
            }
            Some(Tok::Ident(_)) => {
                let start = self.idx;
                let Some(Tok::Ident(name)) = self.bump() else {
                    unreachable!()
                };
                if self.peek() == Some(&Tok::LParen) {
                    // predicate atom or the left side of an equation
                    let args = self.args()?;
                    if self.peek() == Some(&Tok::Equals) {
                        self.idx = start;
                        return self.equation();
                    }
                    return self.make_atom(name, args, start);
                }
                if self.peek() == Some(&Tok::Equals) {
                    self.idx = start;
                    return self.equation();
                }
                let known = self.sig().predicate_arity(&name).is_some()
                    || self.sig().function_arity(&name).is_some()
                    || self.sig().is_constant(&name);
                if known {
                    self.idx = start;
                    return self.err(format!("`{name}` is a declared symbol, not a propositional letter"));
                }
                Ok(Formula::Prop(name))
            }
            Some(t) => {
                let found = describe(t);
                self.err(format!("expected a formula, found {found}"))
            }
            None => self.err("expected a formula, found end of input"),
        }
    }

    fn equation(&mut self) -> Result<Formula, SyntaxError> {
        let start = self.idx;
        let lhs = self.term()?;
        self.expect(Tok::Equals)?;
        let rhs = self.term()?;
        match &mut self.sig {
            SigMode::Inferring(sig) => sig.set_equality(true),
            SigMode::Fixed(sig) if !sig.has_equality() => {
                self.idx = start;
                return Err(SyntaxError::UnknownSymbol(EQ.into()));
            }
            SigMode::Fixed(_) => {}
        }
        Ok(Formula::eq(lhs, rhs))
    }

    fn args(&mut self) -> Result<Vec<Term>, SyntaxError> {
        self.expect(Tok::LParen)?;
        let mut args = vec![self.term()?];
        while self.peek() == Some(&Tok::Comma) {
            self.idx += 1;
            args.push(self.term()?);
        }
        self.expect(Tok::RParen)?;
        Ok(args)
    }

    fn make_atom(&mut self, name: String, args: Vec<Term>, at: usize) -> Result<Formula, SyntaxError> {
        let arity = match &mut self.sig {
            SigMode::Fixed(sig) => sig.predicate_arity(&name),
            SigMode::Inferring(sig) => {
                if sig.predicate_arity(&name).is_none() {
                    sig.add_predicate(&name, args.len()).map_err(|e| SyntaxError::Parse {
                        pos: self.toks[at].0,
                        msg: e.to_string(),
                    })?;
                }
                sig.predicate_arity(&name)
            }
        };
        match arity {
            None => Err(SyntaxError::UnknownSymbol(name)),
            Some(a) if a != args.len() => Err(SyntaxError::Arity {
                name,
                expected: a,
                found: args.len(),
            }),
            Some(_) => Ok(Formula::Atom(name, args)),
        }
    }

    fn term(&mut self) -> Result<Term, SyntaxError> {
        let at = self.idx;
        let name = match self.bump() {
            Some(Tok::Ident(n)) => n,
            Some(t) => {
                self.idx -= 1;
                return self.err(format!("expected a term, found {}", describe(&t)));
            }
            None => return self.err("expected a term, found end of input"),
        };
        if self.peek() == Some(&Tok::LParen) {
            let args = self.args()?;
            let arity = match &mut self.sig {
                SigMode::Fixed(sig) => sig.function_arity(&name),
                SigMode::Inferring(sig) => {
                    if sig.function_arity(&name).is_none() {
                        sig.add_function(&name, args.len()).map_err(|e| SyntaxError::Parse {
                            pos: self.toks[at].0,
                            msg: e.to_string(),
                        })?;
                    }
                    sig.function_arity(&name)
                }
            };
            return match arity {
                None => Err(SyntaxError::UnknownSymbol(name)),
                Some(a) if a != args.len() => Err(SyntaxError::Arity {
                    name,
                    expected: a,
                    found: args.len(),
                }),
                Some(_) => Ok(Term::App(name, args)),
            };
        }
        if self.sig().is_constant(&name) {
            return Ok(Term::Const(name));
        }
        if self.sig().predicate_arity(&name).is_some() || self.sig().function_arity(&name).is_some() {
            self.idx = at;
            return self.err(format!("`{name}` cannot be used as a term"));
        }
        Ok(Term::Var(name))
    }

    fn finish(&self) -> Result<(), SyntaxError> {
        match self.peek() {
            None => Ok(()),
            Some(t) => self.err(format!("unexpected {} after formula", describe(t))),
        }
    }
}

/// Parses `text` against a fixed signature.
pub fn parse_formula(text: &str, sig: &Signature) -> Result<Formula, SyntaxError> {
    let mut p = Parser {
        toks: tokenize(text)?,
        idx: 0,
        end: text.len(),
        sig: SigMode::Fixed(sig),
    };
    let f = p.formula()?;
    p.finish()?;
    Ok(f)
}

/// Parses `text`, adding any predicate or function symbol it meets to
/// `sig` with the arity of its first use. Identifiers in term position stay
/// variables unless `sig` already declares them as constants.
pub fn parse_formula_inferring(text: &str, sig: &mut Signature) -> Result<Formula, SyntaxError> {
    let mut p = Parser {
        toks: tokenize(text)?,
        idx: 0,
        end: text.len(),
        sig: SigMode::Inferring(sig),
    };
    let f = p.formula()?;
    p.finish()?;
    Ok(f)
}

pub fn parse_term(text: &str, sig: &Signature) -> Result<Term, SyntaxError> {
    let mut p = Parser {
        toks: tokenize(text)?,
        idx: 0,
        end: text.len(),
        sig: SigMode::Fixed(sig),
    };
    let t = p.term()?;
    p.finish()?;
    Ok(t)
}
