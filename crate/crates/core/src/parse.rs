//! Text grammar for ring and divided-power polynomials.
//!
//! ```text
//! expr   := ['+'|'-'] term (('+'|'-') term)*
//! term   := factor ('*'? factor)*
//! factor := atom ('^' int | '^[' int ']')?
//! atom   := int ['/' int] | ident | '(' expr ')'
//! ```
//!
//! `X^[k]` is a divided power and only valid in divided polynomials. An
//! identifier that is not a variable is split into a run of variable names
//! when possible, so `XU^[2]` reads as `X*U^[2]`.

use num_bigint::BigInt;
use num_traits::One;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::field::{Field, Scalar};
use crate::poly::{dp_multiply, DividedPolynomial, Monomial, Polynomial, VariableTable};

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Int(BigInt),
    Ident(String),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LBrack,
    RBrack,
    LParen,
    RParen,
}

fn tokenize(s: &str) -> Result<Vec<Tok>> {
    let mut out = Vec::new();
    let chars: Vec<char> = s.chars().collect();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        if c.is_whitespace() {
            i += 1;
            continue;
        }
        if c.is_ascii_digit() {
            let start = i;
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            let digits: String = chars[start..i].iter().collect();
            out.push(Tok::Int(digits.parse().expect("digits")));
            continue;
        }
        if c.is_ascii_alphabetic() || c == '_' {
            let start = i;
            while i < chars.len() && (chars[i].is_ascii_alphanumeric() || chars[i] == '_') {
                i += 1;
            }
            out.push(Tok::Ident(chars[start..i].iter().collect()));
            continue;
        }
        out.push(match c {
            '+' => Tok::Plus,
            '-' => Tok::Minus,
            '*' => Tok::Star,
            '/' => Tok::Slash,
            '^' => Tok::Caret,
            '[' => Tok::LBrack,
            ']' => Tok::RBrack,
            '(' => Tok::LParen,
            ')' => Tok::RParen,
            _ => return Err(Error::parse(None, format!("unexpected character {c:?}"))),
        });
        i += 1;
    }
    Ok(out)
}

#[derive(Debug)]
enum Expr {
    Num(BigInt, BigInt),
    Var(String),
    Pow(Box<Expr>, u32),
    DividedPow(Box<Expr>, u32),
    Neg(Box<Expr>),
    Sum(Vec<Expr>),
    Product(Vec<Expr>),
}

struct Parser {
    toks: Vec<Tok>,
    pos: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos)
    }

    fn next(&mut self) -> Option<Tok> {
        let t = self.toks.get(self.pos).cloned();
        self.pos += 1;
        t
    }

    fn expect(&mut self, t: Tok) -> Result<()> {
        match self.next() {
            Some(ref u) if *u == t => Ok(()),
            other => Err(Error::parse(None, format!("expected {t:?}, found {other:?}"))),
        }
    }

    fn int(&mut self) -> Result<BigInt> {
        match self.next() {
            Some(Tok::Int(n)) => Ok(n),
            other => Err(Error::parse(None, format!("expected integer, found {other:?}"))),
        }
    }

    fn small_int(&mut self) -> Result<u32> {
        let n = self.int()?;
        u32::try_from(n).map_err(|_| Error::parse(None, "exponent too large"))
    }

    fn expr(&mut self) -> Result<Expr> {
        let mut terms = Vec::new();
        let mut neg = match self.peek() {
            Some(Tok::Minus) => {
                self.pos += 1;
                true
            }
            Some(Tok::Plus) => {
                self.pos += 1;
                false
            }
            _ => false,
        };
        loop {
            let t = self.term()?;
            terms.push(if neg { Expr::Neg(Box::new(t)) } else { t });
            neg = match self.peek() {
                Some(Tok::Plus) => false,
                Some(Tok::Minus) => true,
                _ => break,
            };
            self.pos += 1;
        }
        Ok(if terms.len() == 1 {
            terms.pop().unwrap()
        } else {
            Expr::Sum(terms)
        })
    }

    fn term(&mut self) -> Result<Expr> {
        let mut factors = vec![self.factor()?];
        loop {
            match self.peek() {
                Some(Tok::Star) => {
                    self.pos += 1;
                    factors.push(self.factor()?);
                }
                Some(Tok::Int(_) | Tok::Ident(_) | Tok::LParen) => factors.push(self.factor()?),
                _ => break,
            }
        }
        Ok(if factors.len() == 1 {
            factors.pop().unwrap()
        } else {
            Expr::Product(factors)
        })
    }

    fn factor(&mut self) -> Result<Expr> {
        let base = self.atom()?;
        if self.peek() != Some(&Tok::Caret) {
            return Ok(base);
        }
        self.pos += 1;
        if self.peek() == Some(&Tok::LBrack) {
            self.pos += 1;
            let k = self.small_int()?;
            self.expect(Tok::RBrack)?;
            Ok(Expr::DividedPow(Box::new(base), k))
        } else {
            let k = self.small_int()?;
            Ok(Expr::Pow(Box::new(base), k))
        }
    }

    fn atom(&mut self) -> Result<Expr> {
        match self.next() {
            Some(Tok::Int(n)) => {
                if self.peek() == Some(&Tok::Slash) {
                    self.pos += 1;
                    let d = self.int()?;
                    Ok(Expr::Num(n, d))
                } else {
                    Ok(Expr::Num(n, BigInt::one()))
                }
            }
            Some(Tok::Ident(s)) => Ok(Expr::Var(s)),
            Some(Tok::LParen) => {
                let e = self.expr()?;
                self.expect(Tok::RParen)?;
                Ok(e)
            }
            other => Err(Error::parse(None, format!("unexpected token {other:?}"))),
        }
    }
}

fn parse_expr(s: &str) -> Result<Expr> {
    let toks = tokenize(s)?;
    if toks.is_empty() {
        return Err(Error::parse(None, "empty polynomial"));
    }
    let mut p = Parser { toks, pos: 0 };
    let e = p.expr()?;
    if p.pos < p.toks.len() {
        return Err(Error::parse(None, format!("trailing input at {:?}", p.toks[p.pos])));
    }
    Ok(e)
}

/// Resolve an identifier to a run of variable indices.
fn split_name(name: &str, lookup: &dyn Fn(&str) -> Option<usize>) -> Option<Vec<usize>> {
    if let Some(i) = lookup(name) {
        return Some(vec![i]);
    }
    for cut in (1..name.len()).rev() {
        if let Some(i) = lookup(&name[..cut]) {
            if let Some(mut rest) = split_name(&name[cut..], lookup) {
                rest.insert(0, i);
                return Some(rest);
            }
        }
    }
    None
}

/// Operations shared by both polynomial kinds during evaluation.
trait Eval: Sized + Clone {
    fn lookup(table: &VariableTable, name: &str) -> Option<usize>;
    fn times(&self, other: &Self) -> Result<Self>;
    fn power(base: &Expr, k: u32, divided: bool, ctx: &Ctx) -> Result<Self>;
    fn from_scalar(ctx: &Ctx, c: Scalar) -> Self;
    fn sum(&self, other: &Self) -> Result<Self>;
    fn negate(&self) -> Self;
}

struct Ctx {
    table: Arc<VariableTable>,
    field: Field,
}

impl Ctx {
    fn variables<P: Eval>(&self, name: &str) -> Result<Vec<usize>> {
        split_name(name, &|n| P::lookup(&self.table, n))
            .ok_or_else(|| Error::parse(None, format!("unknown variable {name}")))
    }

    fn var_power(&self, i: usize, k: u32) -> Monomial {
        let mut e = vec![0; self.table.len()];
        e[i] = k;
        Monomial::new(e, &self.table)
    }
}

fn eval<P: Eval>(e: &Expr, ctx: &Ctx) -> Result<P> {
    match e {
        Expr::Num(n, d) => {
            let c = ctx
                .field
                .from_ratio(n, d)
                .ok_or_else(|| Error::parse(None, format!("denominator {d} vanishes in {}", ctx.field)))?;
            Ok(P::from_scalar(ctx, c))
        }
        Expr::Var(_) => P::power(e, 1, false, ctx),
        Expr::Pow(b, k) => P::power(b, *k, false, ctx),
        Expr::DividedPow(b, k) => P::power(b, *k, true, ctx),
        Expr::Neg(x) => Ok(eval::<P>(x, ctx)?.negate()),
        Expr::Sum(xs) => {
            let mut acc = P::from_scalar(ctx, ctx.field.zero());
            for x in xs {
                acc = acc.sum(&eval(x, ctx)?)?;
            }
            Ok(acc)
        }
        Expr::Product(xs) => {
            let mut acc = P::from_scalar(ctx, ctx.field.one());
            for x in xs {
                acc = acc.times(&eval(x, ctx)?)?;
            }
            Ok(acc)
        }
    }
}

fn repeat<P: Eval>(x: &P, k: u32, ctx: &Ctx) -> Result<P> {
    let mut acc = P::from_scalar(ctx, ctx.field.one());
    for _ in 0..k {
        acc = acc.times(x)?;
    }
    Ok(acc)
}

impl Eval for Polynomial {
    fn lookup(table: &VariableTable, name: &str) -> Option<usize> {
        table.index_of(name)
    }
    fn times(&self, other: &Self) -> Result<Self> {
        self.mul(other)
    }
    fn power(base: &Expr, k: u32, divided: bool, ctx: &Ctx) -> Result<Self> {
        if divided {
            return Err(Error::parse(None, "divided power in an ordinary polynomial"));
        }
        match base {
            Expr::Var(name) => {
                let vars = ctx.variables::<Self>(name)?;
                let (last, init) = vars.split_last().expect("nonempty");
                let mut m = ctx.var_power(*last, k);
                for &i in init {
                    m = m.mul(&ctx.var_power(i, 1));
                }
                Ok(Polynomial::monomial(ctx.table.clone(), m, ctx.field.one()))
            }
            other => repeat(&eval::<Self>(other, ctx)?, k, ctx),
        }
    }
    fn from_scalar(ctx: &Ctx, c: Scalar) -> Self {
        Polynomial::constant(ctx.table.clone(), c)
    }
    fn sum(&self, other: &Self) -> Result<Self> {
        self.add(other)
    }
    fn negate(&self) -> Self {
        self.neg()
    }
}

impl Eval for DividedPolynomial {
    fn lookup(table: &VariableTable, name: &str) -> Option<usize> {
        table.dual_index_of(name)
    }
    fn times(&self, other: &Self) -> Result<Self> {
        dp_multiply(self, other)
    }
    fn power(base: &Expr, k: u32, divided: bool, ctx: &Ctx) -> Result<Self> {
        match base {
            Expr::Var(name) => {
                let vars = ctx.variables::<Self>(name)?;
                let (last, init) = vars.split_last().expect("nonempty");
                let one = |i: usize, k: u32| {
                    DividedPolynomial::monomial(ctx.table.clone(), ctx.var_power(i, k), ctx.field.one())
                };
                let mut acc = if divided {
                    one(*last, k)
                } else {
                    repeat(&one(*last, 1), k, ctx)?
                };
                for &i in init {
                    acc = dp_multiply(&acc, &one(i, 1))?;
                }
                Ok(acc)
            }
            _ if divided => Err(Error::parse(None, "X^[k] needs a single variable")),
            other => repeat(&eval::<Self>(other, ctx)?, k, ctx),
        }
    }
    fn from_scalar(ctx: &Ctx, c: Scalar) -> Self {
        DividedPolynomial::constant(ctx.table.clone(), c)
    }
    fn sum(&self, other: &Self) -> Result<Self> {
        self.add(other)
    }
    fn negate(&self) -> Self {
        self.neg()
    }
}

pub fn parse_polynomial(s: &str, table: &Arc<VariableTable>, field: Field) -> Result<Polynomial> {
    let ctx = Ctx {
        table: table.clone(),
        field,
    };
    eval(&parse_expr(s)?, &ctx)
}

pub fn parse_divided(s: &str, table: &Arc<VariableTable>, field: Field) -> Result<DividedPolynomial> {
    let ctx = Ctx {
        table: table.clone(),
        field,
    };
    eval(&parse_expr(s)?, &ctx)
}
