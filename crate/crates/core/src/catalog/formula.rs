//! A tiny language for rank formulas and case conditions.
//!
//! ```text
//! EXPR   := term (('+' | '-') term)*
//! term   := factor ('*' factor)*
//! factor := INT | IDENT | 'min(' EXPR ',' EXPR ')' | '[' EXPR '/2]' | '(' EXPR ')'
//! COND   := EXPR ('=' | '!=' | '>' | '<') EXPR | IDENT 'even' | IDENT 'odd' | 'true'
//! ```

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Expr {
    Int(i64),
    Var(String),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Min(Box<Expr>, Box<Expr>),
    /// `[x/2]`, the floor of `x/2`.
    Half(Box<Expr>),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum CmpOp {
    Eq,
    Ne,
    Gt,
    Lt,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Parity {
    Even,
    Odd,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Cond {
    True,
    Cmp(Expr, CmpOp, Expr),
    Parity(String, Parity),
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Formula {
    Expr(Expr),
    Cond(Cond),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Value {
    Int(i64),
    Bool(bool),
}

impl fmt::Display for Value {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Value::Int(n) => write!(f, "{n}"),
            Value::Bool(b) => write!(f, "{b}"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Int(i64),
    Ident(String),
    Sym(&'static str),
}

fn tokenize(src: &str) -> Result<Vec<(Tok, usize)>> {
    let bytes = src.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i] as char;
        if c.is_ascii_whitespace() {
            i += 1;
            continue;
        }
        let start = i;
        if c.is_ascii_digit() {
            while i < bytes.len() && bytes[i].is_ascii_digit() {
                i += 1;
            }
            let n = src[start..i].parse().map_err(|_| Error::Syntax {
                offset: start,
                message: "integer literal too large".into(),
            })?;
            out.push((Tok::Int(n), start));
        } else if c.is_ascii_alphabetic() || c == '_' {
            while i < bytes.len() && (bytes[i].is_ascii_alphanumeric() || bytes[i] == b'_') {
                i += 1;
            }
            out.push((Tok::Ident(src[start..i].to_string()), start));
        } else if src[i..].starts_with("!=") {
            out.push((Tok::Sym("!="), start));
            i += 2;
        } else {
            let sym = match c {
                '+' => "+",
                '-' => "-",
                '*' => "*",
                '(' => "(",
                ')' => ")",
                '[' => "[",
                ']' => "]",
                '/' => "/",
                ',' => ",",
                '=' => "=",
                '>' => ">",
                '<' => "<",
                _ => {
                    return Err(Error::Syntax {
                        offset: start,
                        message: format!("unexpected character `{c}`"),
                    })
                }
            };
            out.push((Tok::Sym(sym), start));
            i += c.len_utf8();
        }
    }
    Ok(out)
}

struct Parser<'a> {
    toks: Vec<(Tok, usize)>,
    pos: usize,
    src: &'a str,
}

impl Parser<'_> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|(t, _)| t)
    }

    fn offset(&self) -> usize {
        self.toks
            .get(self.pos)
            .map(|(_, o)| *o)
            .unwrap_or(self.src.len())
    }

    fn err<T>(&self, message: impl Into<String>) -> Result<T> {
        Err(Error::Syntax {
            offset: self.offset(),
            message: message.into(),
        })
    }

    fn eat(&mut self, sym: &str) -> bool {
        if matches!(self.peek(), Some(Tok::Sym(s)) if *s == sym) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, sym: &str) -> Result<()> {
        if self.eat(sym) {
            Ok(())
        } else {
            self.err(format!("expected `{sym}`"))
        }
    }

    fn expr(&mut self) -> Result<Expr> {
        let mut lhs = self.term()?;
        loop {
            if self.eat("+") {
                lhs = Expr::Add(Box::new(lhs), Box::new(self.term()?));
            } else if self.eat("-") {
                lhs = Expr::Sub(Box::new(lhs), Box::new(self.term()?));
            } else {
                return Ok(lhs);
            }
        }
    }

    fn term(&mut self) -> Result<Expr> {
        let mut lhs = self.factor()?;
        while self.eat("*") {
            lhs = Expr::Mul(Box::new(lhs), Box::new(self.factor()?));
        }
        Ok(lhs)
    }

    fn factor(&mut self) -> Result<Expr> {
        match self.peek().cloned() {
            Some(Tok::Int(n)) => {
                self.pos += 1;
                Ok(Expr::Int(n))
            }
            Some(Tok::Ident(name)) if name == "min" => {
                self.pos += 1;
                self.expect("(")?;
                let a = self.expr()?;
                self.expect(",")?;
                let b = self.expr()?;
                self.expect(")")?;
                Ok(Expr::Min(Box::new(a), Box::new(b)))
            }
            Some(Tok::Ident(name)) if is_keyword(&name) => {
                self.err(format!("unexpected keyword `{name}`"))
            }
            Some(Tok::Ident(name)) => {
                self.pos += 1;
                Ok(Expr::Var(name))
            }
            Some(Tok::Sym("(")) => {
                self.pos += 1;
                let e = self.expr()?;
                self.expect(")")?;
                Ok(e)
            }
            Some(Tok::Sym("[")) => {
                self.pos += 1;
                let e = self.expr()?;
                self.expect("/")?;
                if self.peek() != Some(&Tok::Int(2)) {
                    return self.err("only `[x/2]` is supported");
                }
                self.pos += 1;
                self.expect("]")?;
                Ok(Expr::Half(Box::new(e)))
            }
            Some(_) => self.err("expected a number, parameter, `min(`, `[` or `(`"),
            None => self.err("unexpected end of input"),
        }
    }

    fn formula(&mut self) -> Result<Formula> {
        if let Some(Tok::Ident(name)) = self.peek().cloned() {
            if name == "true" {
                self.pos += 1;
                return Ok(Formula::Cond(Cond::True));
            }
            if let Some((Tok::Ident(kw), _)) = self.toks.get(self.pos + 1) {
                let parity = match kw.as_str() {
                    "even" => Some(Parity::Even),
                    "odd" => Some(Parity::Odd),
                    _ => None,
                };
                if let Some(p) = parity {
                    if is_keyword(&name) {
                        return self.err(format!("`{name}` is not a parameter"));
                    }
                    self.pos += 2;
                    return Ok(Formula::Cond(Cond::Parity(name, p)));
                }
            }
        }
        let lhs = self.expr()?;
        let op = match self.peek() {
            Some(Tok::Sym("=")) => Some(CmpOp::Eq),
            Some(Tok::Sym("!=")) => Some(CmpOp::Ne),
            Some(Tok::Sym(">")) => Some(CmpOp::Gt),
            Some(Tok::Sym("<")) => Some(CmpOp::Lt),
            _ => None,
        };
        match op {
            Some(op) => {
                self.pos += 1;
                let rhs = self.expr()?;
                Ok(Formula::Cond(Cond::Cmp(lhs, op, rhs)))
            }
            None => Ok(Formula::Expr(lhs)),
        }
    }
}

fn is_keyword(s: &str) -> bool {
    matches!(s, "min" | "even" | "odd" | "true")
}

/// Parses an expression or a condition.
pub fn parse_formula(src: &str) -> Result<Formula> {
    let mut p = Parser {
        toks: tokenize(src)?,
        pos: 0,
        src,
    };
    let f = p.formula()?;
    if p.pos != p.toks.len() {
        return p.err("trailing input");
    }
    Ok(f)
}

pub fn parse_expr(src: &str) -> Result<Expr> {
    match parse_formula(src)? {
        Formula::Expr(e) => Ok(e),
        Formula::Cond(_) => Err(Error::Syntax {
            offset: 0,
            message: "expected an integer expression, found a condition".into(),
        }),
    }
}

pub fn parse_cond(src: &str) -> Result<Cond> {
    match parse_formula(src)? {
        Formula::Cond(c) => Ok(c),
        Formula::Expr(_) => Err(Error::Syntax {
            offset: src.len(),
            message: "expected a condition".into(),
        }),
    }
}

fn prec(e: &Expr) -> u8 {
    match e {
        Expr::Add(..) | Expr::Sub(..) => 1,
        Expr::Mul(..) => 2,
        _ => 3,
    }
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        // left operands keep equal precedence bare, right operands do not,
        // so parsing the output rebuilds the same tree
        let bin = |f: &mut fmt::Formatter<'_>, a: &Expr, op: &str, b: &Expr, p: u8| {
            if prec(a) < p {
                write!(f, "({a})")?;
            } else {
                write!(f, "{a}")?;
            }
            f.write_str(op)?;
            if prec(b) <= p {
                write!(f, "({b})")
            } else {
                write!(f, "{b}")
            }
        };
        match self {
            Expr::Int(n) => write!(f, "{n}"),
            Expr::Var(v) => f.write_str(v),
            Expr::Add(a, b) => bin(f, a, "+", b, 1),
            Expr::Sub(a, b) => bin(f, a, "-", b, 1),
            Expr::Mul(a, b) => bin(f, a, "*", b, 2),
            Expr::Min(a, b) => write!(f, "min({a}, {b})"),
            Expr::Half(a) => write!(f, "[{a}/2]"),
        }
    }
}

impl fmt::Display for Cond {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Cond::True => f.write_str("true"),
            Cond::Parity(v, Parity::Even) => write!(f, "{v} even"),
            Cond::Parity(v, Parity::Odd) => write!(f, "{v} odd"),
            Cond::Cmp(a, op, b) => {
                let op = match op {
                    CmpOp::Eq => "=",
                    CmpOp::Ne => "!=",
                    CmpOp::Gt => ">",
                    CmpOp::Lt => "<",
                };
                write!(f, "{a} {op} {b}")
            }
        }
    }
}

impl fmt::Display for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Formula::Expr(e) => e.fmt(f),
            Formula::Cond(c) => c.fmt(f),
        }
    }
}

pub type Bindings = BTreeMap<String, i64>;

fn overflow() -> Error {
    Error::input("integer overflow while evaluating formula")
}

impl Expr {
    pub fn eval(&self, b: &Bindings) -> Result<i64> {
        Ok(match self {
            Expr::Int(n) => *n,
            Expr::Var(v) => *b.get(v).ok_or_else(|| Error::Unbound(v.clone()))?,
            Expr::Add(x, y) => x.eval(b)?.checked_add(y.eval(b)?).ok_or_else(overflow)?,
            Expr::Sub(x, y) => x.eval(b)?.checked_sub(y.eval(b)?).ok_or_else(overflow)?,
            Expr::Mul(x, y) => x.eval(b)?.checked_mul(y.eval(b)?).ok_or_else(overflow)?,
            Expr::Min(x, y) => x.eval(b)?.min(y.eval(b)?),
            Expr::Half(x) => x.eval(b)?.div_euclid(2),
        })
    }

    pub fn collect_vars(&self, out: &mut BTreeSet<String>) {
        match self {
            Expr::Int(_) => {}
            Expr::Var(v) => {
                out.insert(v.clone());
            }
            Expr::Add(x, y) | Expr::Sub(x, y) | Expr::Mul(x, y) | Expr::Min(x, y) => {
                x.collect_vars(out);
                y.collect_vars(out);
            }
            Expr::Half(x) => x.collect_vars(out),
        }
    }
}

impl Cond {
    pub fn eval(&self, b: &Bindings) -> Result<bool> {
        Ok(match self {
            Cond::True => true,
            Cond::Parity(v, p) => {
                let x = *b.get(v).ok_or_else(|| Error::Unbound(v.clone()))?;
                (x.rem_euclid(2) == 0) == (*p == Parity::Even)
            }
            Cond::Cmp(x, op, y) => {
                let (x, y) = (x.eval(b)?, y.eval(b)?);
                match op {
                    CmpOp::Eq => x == y,
                    CmpOp::Ne => x != y,
                    CmpOp::Gt => x > y,
                    CmpOp::Lt => x < y,
                }
            }
        })
    }

    pub fn collect_vars(&self, out: &mut BTreeSet<String>) {
        match self {
            Cond::True => {}
            Cond::Parity(v, _) => {
                out.insert(v.clone());
            }
            Cond::Cmp(x, _, y) => {
                x.collect_vars(out);
                y.collect_vars(out);
            }
        }
    }
}

pub fn eval_formula(f: &Formula, b: &Bindings) -> Result<Value> {
    match f {
        Formula::Expr(e) => e.eval(b).map(Value::Int),
        Formula::Cond(c) => c.eval(b).map(Value::Bool),
    }
}

/// Parses `n=5,p=3` into bindings.
pub fn parse_bindings(s: &str) -> Result<Bindings> {
    let mut out = Bindings::new();
    for part in s.split(',').map(str::trim).filter(|p| !p.is_empty()) {
        let (k, v) = part
            .split_once('=')
            .ok_or_else(|| Error::input(format!("expected name=value, got `{part}`")))?;
        let v: i64 = v
            .trim()
            .parse()
            .map_err(|_| Error::input(format!("bad integer in `{part}`")))?;
        out.insert(k.trim().to_string(), v);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn b(pairs: &[(&str, i64)]) -> Bindings {
        pairs.iter().map(|(k, v)| (k.to_string(), *v)).collect()
    }

    #[test]
    fn parses_table_formulas() {
        let f = parse_formula("min(i+j, m+n-(i+j))").unwrap();
        assert!(matches!(f, Formula::Expr(Expr::Min(..))));
        assert_eq!(
            eval_formula(&f, &b(&[("n", 5), ("m", 3), ("i", 1), ("j", 2)])).unwrap(),
            Value::Int(3)
        );
        let f = parse_formula("[n/2]").unwrap();
        assert!(matches!(f, Formula::Expr(Expr::Half(_))));
        assert_eq!(eval_formula(&f, &b(&[("n", 7)])).unwrap(), Value::Int(3));
        let f = parse_formula("n = 2*p").unwrap();
        assert_eq!(eval_formula(&f, &b(&[("n", 6), ("p", 3)])).unwrap(), Value::Bool(true));
        let f = parse_formula("n odd").unwrap();
        assert_eq!(eval_formula(&f, &b(&[("n", 6)])).unwrap(), Value::Bool(false));
        let f = parse_formula("m+n!=2*(i+j)").unwrap();
        assert_eq!(
            eval_formula(&f, &b(&[("n", 3), ("m", 3), ("i", 1), ("j", 2)])).unwrap(),
            Value::Bool(false)
        );
    }

    #[test]
    fn syntax_errors_carry_offsets() {
        assert_eq!(
            parse_formula("min(").unwrap_err(),
            Error::Syntax {
                offset: 4,
                message: "unexpected end of input".into()
            }
        );
        assert!(matches!(parse_formula("n +"), Err(Error::Syntax { offset: 3, .. })));
        assert!(matches!(parse_formula("[n/3]"), Err(Error::Syntax { offset: 3, .. })));
        assert!(matches!(parse_formula("n $ 2"), Err(Error::Syntax { offset: 2, .. })));
        assert!(matches!(parse_formula("n 2"), Err(Error::Syntax { offset: 2, .. })));
    }

    #[test]
    fn unbound_parameters() {
        let f = parse_formula("n-1").unwrap();
        assert_eq!(eval_formula(&f, &Bindings::new()), Err(Error::Unbound("n".into())));
    }

    #[test]
    fn printing_round_trips() {
        for src in [
            "min(i+j, m+n-(i+j))",
            "a-(b-c)",
            "(a-b)-c",
            "2*(n-1)",
            "a*(b*c)",
            "[n/2]*2",
            "m+n != 2*(i+j)",
            "n even",
            "true",
        ] {
            let f = parse_formula(src).unwrap();
            let printed = f.to_string();
            assert_eq!(parse_formula(&printed).unwrap(), f, "{src} -> {printed}");
        }
        assert_eq!(parse_formula("(a-b)-c").unwrap().to_string(), "a-b-c");
        assert_eq!(parse_formula("a-(b-c)").unwrap().to_string(), "a-(b-c)");
    }

    #[test]
    fn floor_half_of_negative() {
        let f = parse_formula("[n/2]").unwrap();
        assert_eq!(eval_formula(&f, &b(&[("n", -3)])).unwrap(), Value::Int(-2));
    }

    #[test]
    fn bindings_parse() {
        assert_eq!(parse_bindings("n=5, p=3").unwrap(), b(&[("n", 5), ("p", 3)]));
        assert!(parse_bindings("n").is_err());
    }
}
