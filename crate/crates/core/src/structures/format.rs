//! Line-oriented text format for structures.
//!
//! ```text
//! # comment
//! domain = {a, b, c}
//! pred P/1 { plus={(a)} minus={} dot={(b),(c)} }
//! fun f/1 {(a)->b, (b)->c, (c)->a}
//! const c0 = a
//! equality normal
//! ```
//!
//! `equality normal` adds the equality predicate. Without a `pred =/2`
//! block it is classical identity; with one, the block must describe a
//! partial equality. A `pred =/2` block without the flag line is accepted
//! as an arbitrary interpretation of `=`.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use thiserror::Error;

use super::{tuple_at, Structure, StructureError};
use crate::matrix::Truth;
use crate::syntax::{Signature, EQ};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FormatError {
    #[error("line {line}: {msg}")]
    Syntax { line: usize, msg: String },
    #[error("{0}")]
    Invalid(String),
    #[error(transparent)]
    Structure(#[from] StructureError),
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Word(String),
    Punct(&'static str),
}

fn tokenize(text: &str) -> Result<Vec<(usize, Tok)>, FormatError> {
    let mut out = Vec::new();
    for (lineno, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("");
        let mut chars = line.char_indices().peekable();
        while let Some(&(i, c)) = chars.peek() {
            if c.is_whitespace() {
                chars.next();
            } else if c == '-' && line[i..].starts_with("->") {
                chars.next();
                chars.next();
                out.push((lineno + 1, Tok::Punct("->")));
            } else if let Some(p) = ["{", "}", "(", ")", ",", "=", "/"].iter().find(|p| p.starts_with(c)) {
                chars.next();
                out.push((lineno + 1, Tok::Punct(p)));
            } else if c.is_alphanumeric() || c == '_' || c == '\'' {
                let mut w = String::new();
                while let Some(&(_, c)) = chars.peek() {
                    if c.is_alphanumeric() || c == '_' || c == '\'' {
                        w.push(c);
                        chars.next();
                    } else {
                        break;
                    }
                }
                out.push((lineno + 1, Tok::Word(w)));
            } else {
                return Err(FormatError::Syntax {
                    line: lineno + 1,
                    msg: format!("unexpected character `{c}`"),
                });
            }
        }
    }
    Ok(out)
}

struct Reader {
    toks: Vec<(usize, Tok)>,
    idx: usize,
}

impl Reader {
    fn line(&self) -> usize {
        self.toks
            .get(self.idx)
            .or(self.toks.last())
            .map(|(l, _)| *l)
            .unwrap_or(1)
    }

    fn err<T>(&self, msg: impl Into<String>) -> Result<T, FormatError> {
        Err(FormatError::Syntax { line: self.line(), msg: msg.into() })
    }

    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.idx).map(|(_, t)| t)
    }

    fn is_punct(&self, p: &str) -> bool {
        matches!(self.peek(), Some(Tok::Punct(q)) if *q == p)
    }

    fn punct(&mut self, p: &str) -> Result<(), FormatError> {
        if self.is_punct(p) {
            self.idx += 1;
            Ok(())
        } else {
            self.err(format!("expected `{p}`"))
        }
    }

    fn word(&mut self) -> Result<String, FormatError> {
        match self.peek() {
            Some(Tok::Word(w)) => {
                let w = w.clone();
                self.idx += 1;
                Ok(w)
            }
            _ => self.err("expected a name"),
        }
    }

    fn number(&mut self) -> Result<usize, FormatError> {
        let w = self.word()?;
        w.parse().or_else(|_| self.err(format!("expected a number, got `{w}`")))
    }

    /// `{ item, item, ... }`
    fn list<T>(
        &mut self,
        mut item: impl FnMut(&mut Self) -> Result<T, FormatError>,
    ) -> Result<Vec<T>, FormatError> {
        self.punct("{")?;
        let mut out = Vec::new();
        if self.is_punct("}") {
            self.idx += 1;
            return Ok(out);
        }
        loop {
            out.push(item(self)?);
            if self.is_punct(",") {
                self.idx += 1;
            } else {
                self.punct("}")?;
                return Ok(out);
            }
        }
    }

    /// `(a, b)`
    fn tuple(&mut self) -> Result<Vec<String>, FormatError> {
        self.punct("(")?;
        let mut out = Vec::new();
        if self.is_punct(")") {
            self.idx += 1;
            return Ok(out);
        }
        loop {
            out.push(self.word()?);
            if self.is_punct(",") {
                self.idx += 1;
            } else {
                self.punct(")")?;
                return Ok(out);
            }
        }
    }

    /// `P/1` or `=/2`
    fn symbol(&mut self) -> Result<(String, usize), FormatError> {
        let name = if self.is_punct("=") {
            self.idx += 1;
            EQ.to_string()
        } else {
            self.word()?
        };
        self.punct("/")?;
        Ok((name, self.number()?))
    }
}

type Tuple = Vec<String>;

struct PredBlock {
    line: usize,
    arity: usize,
    classes: [(Truth, Vec<Tuple>); 3],
}

struct FunBlock {
    line: usize,
    arity: usize,
    entries: Vec<(Tuple, String)>,
}

/// Parses and validates a structure file.
pub fn parse_structure(text: &str) -> Result<Structure, FormatError> {
    let mut r = Reader { toks: tokenize(text)?, idx: 0 };
    let mut domain: Option<Vec<String>> = None;
    let mut preds: BTreeMap<String, PredBlock> = BTreeMap::new();
    let mut funs: BTreeMap<String, FunBlock> = BTreeMap::new();
    let mut consts: Vec<(String, String)> = Vec::new();
    let mut equality_normal = false;

    while r.peek().is_some() {
        let line = r.line();
        let kw = r.word()?;
        match kw.as_str() {
            "domain" => {
                if domain.is_some() {
                    return r.err("domain given twice");
                }
                r.punct("=")?;
                domain = Some(r.list(Reader::word)?);
            }
            "pred" => {
                let (name, arity) = r.symbol()?;
                r.punct("{")?;
                let mut classes = [
                    (Truth::One, Vec::new()),
                    (Truth::Zero, Vec::new()),
                    (Truth::Half, Vec::new()),
                ];
                while !r.is_punct("}") {
                    let key = r.word()?;
                    let slot = match key.as_str() {
                        "plus" => 0,
                        "minus" => 1,
                        "dot" => 2,
                        other => return r.err(format!("unknown class `{other}`")),
                    };
                    r.punct("=")?;
                    classes[slot].1.extend(r.list(Reader::tuple)?);
                }
                r.punct("}")?;
                if preds.insert(name.clone(), PredBlock { line, arity, classes }).is_some() {
                    return Err(FormatError::Syntax { line, msg: format!("predicate `{name}` given twice") });
                }
            }
            "fun" => {
                let (name, arity) = r.symbol()?;
                let entries = r.list(|r| {
                    let args = r.tuple()?;
                    r.punct("->")?;
                    Ok((args, r.word()?))
                })?;
                if funs.insert(name.clone(), FunBlock { line, arity, entries }).is_some() {
                    return Err(FormatError::Syntax { line, msg: format!("function `{name}` given twice") });
                }
            }
            "const" => {
                let name = r.word()?;
                r.punct("=")?;
                consts.push((name, r.word()?));
            }
            "equality" => {
                let mode = r.word()?;
                if mode != "normal" {
                    return Err(FormatError::Syntax { line, msg: format!("unknown equality mode `{mode}`") });
                }
                equality_normal = true;
            }
            other => return Err(FormatError::Syntax { line, msg: format!("unknown declaration `{other}`") }),
        }
    }

    let names = domain.ok_or_else(|| FormatError::Invalid("missing `domain` line".into()))?;
    let mut sig = Signature::new();
    for (p, b) in &preds {
        if p == EQ {
            if b.arity != 2 {
                return Err(FormatError::Syntax { line: b.line, msg: "equality is binary".into() });
            }
            sig.set_equality(true);
        } else {
            sig.add_predicate(p, b.arity).map_err(StructureError::from)?;
        }
    }
    if equality_normal {
        sig.set_equality(true);
    }
    for (f, b) in &funs {
        sig.add_function(f, b.arity).map_err(StructureError::from)?;
    }
    for (c, _) in &consts {
        sig.add_constant(c).map_err(StructureError::from)?;
    }
    let mut st = Structure::new(sig, names)?;
    let elem = |st: &Structure, name: &str| {
        st.element(name)
            .ok_or_else(|| StructureError::UnknownElement(name.to_string()))
    };
    let n = st.size();

    for (p, b) in &preds {
        let mut values: Vec<Option<Truth>> = vec![None; n.pow(b.arity as u32)];
        for (v, tuples) in &b.classes {
            for t in tuples {
                if t.len() != b.arity {
                    return Err(FormatError::Syntax {
                        line: b.line,
                        msg: format!("tuple of length {} in `{p}/{}`", t.len(), b.arity),
                    });
                }
                let args = t.iter().map(|a| elem(&st, a)).collect::<Result<Vec<_>, _>>()?;
                let slot = &mut values[super::tuple_index(n, &args)];
                if slot.is_some() {
                    return Err(FormatError::Syntax {
                        line: b.line,
                        msg: format!("tuple ({}) listed twice in `{p}`", t.join(", ")),
                    });
                }
                *slot = Some(*v);
            }
        }
        if let Some(i) = values.iter().position(Option::is_none) {
            let missing: Vec<&str> = tuple_at(n, b.arity, i).iter().map(|&a| st.name(a)).collect();
            return Err(FormatError::Syntax {
                line: b.line,
                msg: format!("tuple ({}) has no class in `{p}`", missing.join(", ")),
            });
        }
        st.set_pred_values(p, values.into_iter().map(Option::unwrap).collect())?;
    }
    if equality_normal && preds.contains_key(EQ) && !st.is_equality_structure()? {
        return Err(FormatError::Invalid(
            "`equality normal` requires plus and dot of `=` to be exactly the diagonal".into(),
        ));
    }

    for (f, b) in &funs {
        let mut seen = vec![false; n.pow(b.arity as u32)];
        for (args, v) in &b.entries {
            if args.len() != b.arity {
                return Err(FormatError::Syntax {
                    line: b.line,
                    msg: format!("argument list of length {} in `{f}/{}`", args.len(), b.arity),
                });
            }
            let args = args.iter().map(|a| elem(&st, a)).collect::<Result<Vec<_>, _>>()?;
            let i = super::tuple_index(n, &args);
            if std::mem::replace(&mut seen[i], true) {
                return Err(FormatError::Syntax { line: b.line, msg: format!("`{f}` defined twice on one argument") });
            }
            let v = elem(&st, v)?;
            st.set_fun_value(f, &args, v)?;
        }
        if let Some(i) = seen.iter().position(|s| !s) {
            let missing: Vec<&str> = tuple_at(n, b.arity, i).iter().map(|&a| st.name(a)).collect();
            return Err(FormatError::Syntax {
                line: b.line,
                msg: format!("`{f}` is not defined on ({})", missing.join(", ")),
            });
        }
    }
    for (c, a) in &consts {
        let a = elem(&st, a)?;
        st.set_const(c, a)?;
    }
    Ok(st)
}

fn tuple_text(st: &Structure, args: &[usize]) -> String {
    let names: Vec<&str> = args.iter().map(|&a| st.name(a)).collect();
    format!("({})", names.join(","))
}

/// Renders `st` so that [`parse_structure`] reads it back unchanged.
pub fn write_structure(st: &Structure) -> String {
    let mut out = String::new();
    let n = st.size();
    let _ = writeln!(out, "domain = {{{}}}", st.domain().join(", "));
    let sig = st.signature();
    let write_pred = |out: &mut String, p: &str, arity: usize| {
        let values = st.pred_values(p).expect("declared predicate");
        let class = |v: Truth| {
            values
                .iter()
                .enumerate()
                .filter(|(_, t)| **t == v)
                .map(|(i, _)| tuple_text(st, &tuple_at(n, arity, i)))
                .collect::<Vec<_>>()
                .join(",")
        };
        let _ = writeln!(
            out,
            "pred {p}/{arity} {{ plus={{{}}} minus={{{}}} dot={{{}}} }}",
            class(Truth::One),
            class(Truth::Zero),
            class(Truth::Half)
        );
    };
    for (p, arity) in sig.predicates() {
        write_pred(&mut out, p, arity);
    }
    if sig.has_equality() {
        let is_eq = st.is_equality_structure().unwrap_or(false);
        if is_eq {
            out.push_str("equality normal\n");
        }
        let mut classical = st.clone();
        classical.set_classical_equality();
        if !is_eq || classical.pred_values(EQ).ok() != st.pred_values(EQ).ok() {
            write_pred(&mut out, EQ, 2);
        }
    }
    for (f, arity) in sig.functions() {
        let entries: Vec<String> = (0..n.pow(arity as u32))
            .map(|i| {
                let args = tuple_at(n, arity, i);
                let v = st.fun_value(f, &args).expect("declared function");
                format!("{}->{}", tuple_text(st, &args), st.name(v))
            })
            .collect();
        let _ = writeln!(out, "fun {f}/{arity} {{{}}}", entries.join(", "));
    }
    for c in sig.constants() {
        let _ = writeln!(out, "const {c} = {}", st.name(st.const_value(c).expect("declared constant")));
    }
    out
}
