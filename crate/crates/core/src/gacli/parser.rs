//! Recursive-descent parser for GA expressions.
//!
//! Precedence from loosest to tightest: `+ -`, `* /`, `^ |`, unary `- ~ !`.
//! All binary operators are left associative.

use std::fmt;

use super::error::ExprError;
use super::lexer::{tokenize, Span, Tok, Token};
use crate::mvcore::{format_real, BasisBlade, Signature};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Constant {
    E0,
    Einf,
    /// Minkowski plane `E = einf ^ e0`.
    Minkowski,
    /// Pseudoscalar `I = e12345`.
    Pseudoscalar,
    Pi,
}

impl Constant {
    fn from_name(name: &str) -> Option<Constant> {
        Some(match name {
            "e0" => Constant::E0,
            "einf" => Constant::Einf,
            "E" => Constant::Minkowski,
            "I" => Constant::Pseudoscalar,
            "pi" => Constant::Pi,
            _ => return None,
        })
    }

    pub fn name(self) -> &'static str {
        match self {
            Constant::E0 => "e0",
            Constant::Einf => "einf",
            Constant::Minkowski => "E",
            Constant::Pseudoscalar => "I",
            Constant::Pi => "pi",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum UnaryOp {
    Neg,
    Reverse,
    Involute,
}

impl UnaryOp {
    fn symbol(self) -> &'static str {
        match self {
            UnaryOp::Neg => "-",
            UnaryOp::Reverse => "~",
            UnaryOp::Involute => "!",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BinOp {
    Add,
    Sub,
    Geometric,
    /// `a / b`: division by a scalar or right multiplication by `inv(b)`.
    Divide,
    Outer,
    Contract,
}

impl BinOp {
    fn symbol(self) -> &'static str {
        match self {
            BinOp::Add => "+",
            BinOp::Sub => "-",
            BinOp::Geometric => "*",
            BinOp::Divide => "/",
            BinOp::Outer => "^",
            BinOp::Contract => "|",
        }
    }

    fn level(self) -> u8 {
        match self {
            BinOp::Add | BinOp::Sub => SUM,
            BinOp::Geometric | BinOp::Divide => PRODUCT,
            BinOp::Outer | BinOp::Contract => WEDGE,
        }
    }
}

const SUM: u8 = 1;
const PRODUCT: u8 = 2;
const WEDGE: u8 = 3;
const UNARY: u8 = 4;
const PRIMARY: u8 = 5;

#[derive(Debug, Clone)]
pub enum ExprKind {
    Number(f64),
    Blade(BasisBlade),
    Constant(Constant),
    Name(String),
    Unary(UnaryOp, Box<Expr>),
    Binary(BinOp, Box<Expr>, Box<Expr>),
    /// `name(a, b; c)`: argument groups separated by `;`.
    Call(String, Vec<Vec<Expr>>),
}

#[derive(Debug, Clone)]
pub struct Expr {
    pub kind: ExprKind,
    pub span: Span,
}

/// Structural equality; spans are ignored and numbers compare bitwise.
impl PartialEq for Expr {
    fn eq(&self, other: &Expr) -> bool {
        use ExprKind::*;
        match (&self.kind, &other.kind) {
            (Number(a), Number(b)) => a.to_bits() == b.to_bits(),
            (Blade(a), Blade(b)) => a == b,
            (Constant(a), Constant(b)) => a == b,
            (Name(a), Name(b)) => a == b,
            (Unary(o1, a), Unary(o2, b)) => o1 == o2 && a == b,
            (Binary(o1, a1, b1), Binary(o2, a2, b2)) => o1 == o2 && a1 == a2 && b1 == b2,
            (Call(n1, g1), Call(n2, g2)) => n1 == n2 && g1 == g2,
            _ => false,
        }
    }
}

impl Expr {
    pub fn new(kind: ExprKind) -> Expr {
        Expr {
            kind,
            span: Span::default(),
        }
    }

    pub fn number(x: f64) -> Expr {
        Expr::new(ExprKind::Number(x))
    }

    pub fn unary(op: UnaryOp, a: Expr) -> Expr {
        Expr::new(ExprKind::Unary(op, Box::new(a)))
    }

    pub fn binary(op: BinOp, a: Expr, b: Expr) -> Expr {
        Expr::new(ExprKind::Binary(op, Box::new(a), Box::new(b)))
    }

    pub fn call(name: &str, groups: Vec<Vec<Expr>>) -> Expr {
        Expr::new(ExprKind::Call(name.to_string(), groups))
    }

    fn level(&self) -> u8 {
        match &self.kind {
            ExprKind::Number(x) if x.is_sign_negative() => UNARY,
            ExprKind::Unary(..) => UNARY,
            ExprKind::Binary(op, ..) => op.level(),
            _ => PRIMARY,
        }
    }

    fn render_at(&self, f: &mut fmt::Formatter<'_>, min: u8) -> fmt::Result {
        let paren = self.level() < min;
        if paren {
            f.write_str("(")?;
        }
        match &self.kind {
            ExprKind::Number(x) => f.write_str(&format_real(*x))?,
            ExprKind::Blade(b) => write!(f, "{b}")?,
            ExprKind::Constant(c) => f.write_str(c.name())?,
            ExprKind::Name(n) => f.write_str(n)?,
            ExprKind::Unary(op, a) => {
                f.write_str(op.symbol())?;
                a.render_at(f, UNARY)?;
            }
            ExprKind::Binary(op, a, b) => {
                let level = op.level();
                a.render_at(f, level)?;
                write!(f, " {} ", op.symbol())?;
                b.render_at(f, level + 1)?;
            }
            ExprKind::Call(name, groups) => {
                write!(f, "{name}(")?;
                for (gi, group) in groups.iter().enumerate() {
                    if gi > 0 {
                        f.write_str("; ")?;
                    }
                    for (ai, arg) in group.iter().enumerate() {
                        if ai > 0 {
                            f.write_str(", ")?;
                        }
                        arg.render_at(f, SUM)?;
                    }
                }
                f.write_str(")")?;
            }
        }
        if paren {
            f.write_str(")")?;
        }
        Ok(())
    }
}

/// Canonical source text; parsing it yields an equal tree.
impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.render_at(f, SUM)
    }
}

pub fn parse(src: &str) -> Result<Expr, ExprError> {
    let tokens = tokenize(src)?;
    let mut p = Parser {
        src,
        tokens,
        pos: 0,
    };
    let e = p.expr()?;
    if p.peek().tok != Tok::Eof {
        return Err(p.unexpected("an operator or end of input"));
    }
    Ok(e)
}

struct Parser<'a> {
    src: &'a str,
    tokens: Vec<Token>,
    pos: usize,
}

impl Parser<'_> {
    fn peek(&self) -> &Token {
        &self.tokens[self.pos]
    }

    /// Consumes the next token; the trailing `Eof` is never consumed.
    fn bump(&mut self) -> Token {
        let t = self.tokens[self.pos].clone();
        if t.tok != Tok::Eof {
            self.pos += 1;
        }
        t
    }

    fn eat(&mut self, tok: &Tok) -> Option<Span> {
        if &self.peek().tok == tok {
            Some(self.bump().span)
        } else {
            None
        }
    }

    fn unexpected(&self, expected: &str) -> ExprError {
        let t = self.peek();
        ExprError::syntax(
            self.src,
            t.span,
            format!("unexpected {}", t.tok),
            Some(expected.to_string()),
        )
    }

    fn expr(&mut self) -> Result<Expr, ExprError> {
        let mut lhs = self.term()?;
        loop {
            let op = match self.peek().tok {
                Tok::Plus => BinOp::Add,
                Tok::Minus => BinOp::Sub,
                _ => return Ok(lhs),
            };
            self.bump();
            let rhs = self.term()?;
            lhs = join(op, lhs, rhs);
        }
    }

    fn term(&mut self) -> Result<Expr, ExprError> {
        let mut lhs = self.wedge()?;
        loop {
            let op = match self.peek().tok {
                Tok::Star => BinOp::Geometric,
                Tok::Slash => BinOp::Divide,
                _ => return Ok(lhs),
            };
            self.bump();
            let rhs = self.wedge()?;
            lhs = join(op, lhs, rhs);
        }
    }

    fn wedge(&mut self) -> Result<Expr, ExprError> {
        let mut lhs = self.unary()?;
        loop {
            let op = match self.peek().tok {
                Tok::Caret => BinOp::Outer,
                Tok::Bar => BinOp::Contract,
                _ => return Ok(lhs),
            };
            self.bump();
            let rhs = self.unary()?;
            lhs = join(op, lhs, rhs);
        }
    }

    fn unary(&mut self) -> Result<Expr, ExprError> {
        let op = match self.peek().tok {
            Tok::Minus => UnaryOp::Neg,
            Tok::Tilde => UnaryOp::Reverse,
            Tok::Bang => UnaryOp::Involute,
            _ => return self.primary(),
        };
        let start = self.bump().span;
        let a = self.unary()?;
        let span = start.join(a.span);
        Ok(Expr {
            kind: ExprKind::Unary(op, Box::new(a)),
            span,
        })
    }

    fn primary(&mut self) -> Result<Expr, ExprError> {
        let t = self.peek().clone();
        match t.tok {
            Tok::Num(x) => {
                self.bump();
                Ok(Expr {
                    kind: ExprKind::Number(x),
                    span: t.span,
                })
            }
            Tok::LParen => {
                self.bump();
                let mut e = self.expr()?;
                let close = self
                    .eat(&Tok::RParen)
                    .ok_or_else(|| self.unexpected("')'"))?;
                e.span = t.span.join(close);
                Ok(e)
            }
            Tok::Ident(name) => {
                self.bump();
                if self.peek().tok == Tok::LParen {
                    return self.call(name, t.span);
                }
                let kind = if let Some(c) = Constant::from_name(&name) {
                    ExprKind::Constant(c)
                } else if is_blade_name(&name) {
                    let b = BasisBlade::parse(&name, Signature::CGA).ok_or_else(|| {
                        ExprError::syntax(
                            self.src,
                            t.span,
                            format!("invalid blade '{name}'"),
                            Some("ascending generator digits 1..5, e.g. e13".into()),
                        )
                    })?;
                    ExprKind::Blade(b)
                } else {
                    ExprKind::Name(name)
                };
                Ok(Expr { kind, span: t.span })
            }
            _ => Err(self.unexpected("a number, blade, name or '('")),
        }
    }

    fn call(&mut self, name: String, start: Span) -> Result<Expr, ExprError> {
        self.bump();
        let mut groups = vec![Vec::new()];
        if let Some(close) = self.eat(&Tok::RParen) {
            return Ok(Expr {
                kind: ExprKind::Call(name, Vec::new()),
                span: start.join(close),
            });
        }
        loop {
            let arg = self.expr()?;
            groups.last_mut().expect("nonempty").push(arg);
            match self.peek().tok {
                Tok::Comma => {
                    self.bump();
                }
                Tok::Semi => {
                    self.bump();
                    groups.push(Vec::new());
                }
                Tok::RParen => {
                    let close = self.bump().span;
                    return Ok(Expr {
                        kind: ExprKind::Call(name, groups),
                        span: start.join(close),
                    });
                }
                _ => return Err(self.unexpected("',', ';' or ')'")),
            }
        }
    }
}

fn join(op: BinOp, a: Expr, b: Expr) -> Expr {
    let span = a.span.join(b.span);
    Expr {
        kind: ExprKind::Binary(op, Box::new(a), Box::new(b)),
        span,
    }
}

/// `e` followed only by digits.
fn is_blade_name(name: &str) -> bool {
    name.strip_prefix('e')
        .is_some_and(|d| !d.is_empty() && d.bytes().all(|b| b.is_ascii_digit()))
}
