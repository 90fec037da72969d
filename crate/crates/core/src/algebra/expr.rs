//! Polynomial expression grammar.
//!
//! ```text
//! expr    := term (('+' | '-') term)*
//! term    := unary (('*' | '/') unary)*
//! unary   := ('-' | '+') unary | power
//! power   := atom ('^' integer)?
//! atom    := integer | identifier | '(' expr ')'
//! ```
//!
//! Identifiers are the declared variables or parameters `t_i_j`. Whitespace
//! (including newlines) is ignored.

use num_bigint::BigInt;

use super::gcd::gcd;
use super::ring::{BaseField, Ring};
use super::{Exponent, PolyCtx, RatFunc, SeriesOracle, SparsePoly};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ExprKind {
    Int(BigInt),
    Ident(String),
    Neg(Box<Expr>),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Div(Box<Expr>, Box<Expr>),
    Pow(Box<Expr>, u32),
}

/// Parsed expression with the source position of each node.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Expr {
    pub kind: ExprKind,
    pub line: usize,
    pub column: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Int(BigInt),
    Ident(String),
    Sym(char),
    End,
}

struct Lexer {
    toks: Vec<(Tok, usize, usize)>,
    pos: usize,
}

fn lex(text: &str) -> Result<Lexer> {
    let chars: Vec<char> = text.chars().collect();
    let mut toks = Vec::new();
    let (mut line, mut col) = (1, 1);
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let (l0, c0) = (line, col);
        if c == '\n' {
            line += 1;
            col = 1;
            i += 1;
            continue;
        }
        if c.is_whitespace() {
            col += 1;
            i += 1;
            continue;
        }
        if c.is_ascii_digit() {
            let start = i;
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            let s: String = chars[start..i].iter().collect();
            col += i - start;
            toks.push((Tok::Int(s.parse().expect("digits")), l0, c0));
            continue;
        }
        if c.is_alphabetic() || c == '_' {
            let start = i;
            while i < chars.len() && (chars[i].is_alphanumeric() || chars[i] == '_') {
                i += 1;
            }
            col += i - start;
            toks.push((Tok::Ident(chars[start..i].iter().collect()), l0, c0));
            continue;
        }
        if "+-*/^()".contains(c) {
            toks.push((Tok::Sym(c), l0, c0));
            col += 1;
            i += 1;
            continue;
        }
        return Err(Error::Parse { line, column: col, message: format!("unexpected character `{}`", c) });
    }
    toks.push((Tok::End, line, col));
    Ok(Lexer { toks, pos: 0 })
}

impl Lexer {
    fn peek(&self) -> &(Tok, usize, usize) {
        &self.toks[self.pos]
    }

    fn bump(&mut self) -> (Tok, usize, usize) {
        let t = self.toks[self.pos].clone();
        if self.pos + 1 < self.toks.len() {
            self.pos += 1;
        }
        t
    }

    fn err<T>(&self, message: impl Into<String>) -> Result<T> {
        let (_, line, column) = self.peek();
        Err(Error::Parse { line: *line, column: *column, message: message.into() })
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek().0 == Tok::Sym(c) {
            self.bump();
            true
        } else {
            false
        }
    }

    fn expr(&mut self) -> Result<Expr> {
        let mut lhs = self.term()?;
        loop {
            let (_, line, column) = *self.peek();
            let kind = if self.eat('+') {
                ExprKind::Add(Box::new(lhs), Box::new(self.term()?))
            } else if self.eat('-') {
                ExprKind::Sub(Box::new(lhs), Box::new(self.term()?))
            } else {
                return Ok(lhs);
            };
            lhs = Expr { kind, line, column };
        }
    }

    fn term(&mut self) -> Result<Expr> {
        let mut lhs = self.unary()?;
        loop {
            let (_, line, column) = *self.peek();
            let kind = if self.eat('*') {
                ExprKind::Mul(Box::new(lhs), Box::new(self.unary()?))
            } else if self.eat('/') {
                ExprKind::Div(Box::new(lhs), Box::new(self.unary()?))
            } else {
                return Ok(lhs);
            };
            lhs = Expr { kind, line, column };
        }
    }

    fn unary(&mut self) -> Result<Expr> {
        let (_, line, column) = *self.peek();
        if self.eat('-') {
            let inner = self.unary()?;
            return Ok(Expr { kind: ExprKind::Neg(Box::new(inner)), line, column });
        }
        if self.eat('+') {
            return self.unary();
        }
        self.power()
    }

    fn power(&mut self) -> Result<Expr> {
        let base = self.atom()?;
        let (_, line, column) = *self.peek();
        if self.eat('^') {
            return match self.peek().0.clone() {
                Tok::Int(k) => {
                    let k: u32 = match u32::try_from(k) {
                        Ok(k) => k,
                        Err(_) => return self.err("exponent too large"),
                    };
                    self.bump();
                    Ok(Expr { kind: ExprKind::Pow(Box::new(base), k), line, column })
                }
                _ => self.err("expected a non-negative integer exponent"),
            };
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<Expr> {
        let (tok, line, column) = self.peek().clone();
        match tok {
            Tok::Int(v) => {
                self.bump();
                Ok(Expr { kind: ExprKind::Int(v), line, column })
            }
            Tok::Ident(s) => {
                self.bump();
                Ok(Expr { kind: ExprKind::Ident(s), line, column })
            }
            Tok::Sym('(') => {
                self.bump();
                let e = self.expr()?;
                if !self.eat(')') {
                    return self.err("expected `)`");
                }
                Ok(e)
            }
            Tok::End => self.err("unexpected end of expression"),
            Tok::Sym(c) => self.err(format!("unexpected `{}`", c)),
        }
    }
}

pub fn parse_expr(text: &str) -> Result<Expr> {
    let mut lx = lex(text)?;
    let e = lx.expr()?;
    if lx.peek().0 != Tok::End {
        return lx.err("unexpected trailing input");
    }
    Ok(e)
}

/// Splits `t_i_j` into `(i, j)`.
pub fn parse_param_name(name: &str) -> Option<(usize, usize)> {
    let rest = name.strip_prefix("t_")?;
    let (i, j) = rest.split_once('_')?;
    Some((i.parse().ok()?, j.parse().ok()?))
}

/// Resolves identifiers: declared variables come first, then parameters.
pub struct Scope<'a> {
    pub vars: &'a [String],
    pub params: &'a [String],
}

impl<'a> Scope<'a> {
    pub fn vars(vars: &'a [String]) -> Self {
        Scope { vars, params: &[] }
    }

    fn width(&self) -> usize {
        self.vars.len() + self.params.len()
    }

    fn lookup(&self, name: &str) -> Option<usize> {
        if let Some(i) = self.vars.iter().position(|v| v == name) {
            return Some(i);
        }
        self.params.iter().position(|p| p == name).map(|i| self.vars.len() + i)
    }
}

/// Quotient of two polynomials in the variables and parameters of a scope.
#[derive(Clone, Debug)]
struct Frac<B: BaseField> {
    num: SparsePoly<B>,
    den: SparsePoly<B>,
}

impl<B: BaseField> Frac<B> {
    fn poly(p: SparsePoly<B>) -> Self {
        let den = SparsePoly::one(p.poly_ctx());
        Frac { num: p, den }
    }

    fn reduce(num: SparsePoly<B>, den: SparsePoly<B>) -> Self {
        if den.is_constant() {
            let c = den.terms()[0].1.clone();
            return Frac::poly(num.div_scalar(&c));
        }
        let g = gcd(&num, &den);
        let (num, den) = if g.is_constant() {
            (num, den)
        } else {
            (num.exact_div(&g).expect("gcd divides"), den.exact_div(&g).expect("gcd divides"))
        };
        Frac { num, den }
    }
}

fn eval<B: BaseField>(e: &Expr, ctx: PolyCtx<B::Ctx>, scope: &Scope<'_>) -> Result<Frac<B>> {
    let perr = |message: String| Error::Parse { line: e.line, column: e.column, message };
    Ok(match &e.kind {
        ExprKind::Int(v) => {
            let c = B::from_ratio(ctx.coeff, v, &BigInt::from(1)).expect("unit denominator");
            Frac::poly(SparsePoly::constant(ctx, c))
        }
        ExprKind::Ident(name) => match scope.lookup(name) {
            Some(i) => Frac::poly(SparsePoly::var(ctx, i)),
            None => return Err(perr(format!("unknown variable `{}`", name))),
        },
        ExprKind::Neg(a) => {
            let a = eval(a, ctx, scope)?;
            Frac { num: a.num.neg(), den: a.den }
        }
        ExprKind::Add(a, b) | ExprKind::Sub(a, b) => {
            let a = eval(a, ctx, scope)?;
            let mut b = eval(b, ctx, scope)?;
            if matches!(e.kind, ExprKind::Sub(..)) {
                b.num = b.num.neg();
            }
            if a.den == b.den {
                Frac::reduce(a.num.add(&b.num), a.den)
            } else {
                Frac::reduce(a.num.mul(&b.den).add(&b.num.mul(&a.den)), a.den.mul(&b.den))
            }
        }
        ExprKind::Mul(a, b) => {
            let a = eval(a, ctx, scope)?;
            let b = eval(b, ctx, scope)?;
            Frac::reduce(a.num.mul(&b.num), a.den.mul(&b.den))
        }
        ExprKind::Div(a, b) => {
            let a = eval(a, ctx, scope)?;
            let b = eval(b, ctx, scope)?;
            if b.num.is_zero() {
                return Err(perr("division by zero".into()));
            }
            Frac::reduce(a.num.mul(&b.den), a.den.mul(&b.num))
        }
        ExprKind::Pow(a, k) => {
            let a = eval(a, ctx, scope)?;
            Frac { num: a.num.pow(*k), den: a.den.pow(*k) }
        }
    })
}

fn evaluate<B: BaseField>(text: &str, coeff: B::Ctx, scope: &Scope<'_>) -> Result<(Expr, Frac<B>)> {
    let e = parse_expr(text)?;
    let f = eval::<B>(&e, PolyCtx::new(scope.width(), coeff), scope)?;
    Ok((e, f))
}

/// Parses a polynomial in the scope's variables (no parameters, no division
/// by non-constants).
pub fn parse_polynomial<B: BaseField>(text: &str, coeff: B::Ctx, vars: &[String]) -> Result<SparsePoly<B>> {
    let scope = Scope::vars(vars);
    let (e, f) = evaluate::<B>(text, coeff, &scope)?;
    if !f.den.is_constant() {
        return Err(Error::Parse { line: e.line, column: e.column, message: "expected a polynomial".into() });
    }
    Ok(f.num)
}

/// Parses a polynomial or a rational power series `p/q` with `q(0) != 0`.
pub fn parse_series<B: BaseField>(text: &str, coeff: B::Ctx, vars: &[String]) -> Result<SeriesOracle<B>> {
    let scope = Scope::vars(vars);
    let (_, f) = evaluate::<B>(text, coeff, &scope)?;
    SeriesOracle::rational(f.num, f.den)
}

/// Parses a polynomial in the variables with coefficients in `K(params)`.
pub fn parse_param_polynomial<B: BaseField>(
    text: &str,
    coeff: B::Ctx,
    vars: &[String],
    params: &[String],
) -> Result<SparsePoly<RatFunc<B>>> {
    let scope = Scope { vars, params };
    let (e, f) = evaluate::<B>(text, coeff, &scope)?;
    let n = vars.len();
    if f.den.support().any(|x| x.as_slice()[..n].iter().any(|&k| k > 0)) {
        return Err(Error::Parse {
            line: e.line,
            column: e.column,
            message: "denominator involves a variable".into(),
        });
    }
    let pctx = PolyCtx::new(params.len(), coeff);
    let xctx = PolyCtx::new(n, pctx);
    let split = |p: &SparsePoly<B>| -> SparsePoly<B> {
        SparsePoly::from_terms(pctx, p.terms().iter().map(|(e, c)| (Exponent::from(&e.as_slice()[n..]), c.clone())))
    };
    let den = split(&f.den);
    let mut groups: std::collections::HashMap<Exponent, Vec<(Exponent, B)>> = Default::default();
    for (e, c) in f.num.terms() {
        groups
            .entry(Exponent::from(&e.as_slice()[..n]))
            .or_default()
            .push((Exponent::from(&e.as_slice()[n..]), c.clone()));
    }
    let out = SparsePoly::from_terms(
        PolyCtx::new(n, xctx.coeff),
        groups.into_iter().map(|(x, ts)| {
            let c = RatFunc::new(SparsePoly::from_terms(pctx, ts), den.clone()).expect("nonzero denominator");
            (x, c)
        }),
    );
    Ok(out)
}

/// Parses a polynomial in the variables with coefficients in `K[params]`.
pub fn parse_param_xpoly<B: BaseField>(
    text: &str,
    coeff: B::Ctx,
    vars: &[String],
    params: &[String],
) -> Result<SparsePoly<SparsePoly<B>>> {
    let p = parse_param_polynomial::<B>(text, coeff, vars, params)?;
    if p.terms().iter().any(|(_, c)| !c.is_polynomial()) {
        return Err(Error::Parse { line: 1, column: 1, message: "expected polynomial coefficients".into() });
    }
    let pctx = PolyCtx::new(params.len(), coeff);
    Ok(p.map_coeffs(PolyCtx::new(vars.len(), pctx), |c| {
        let d = c.denom().terms()[0].1.clone();
        c.numer().div_scalar(&d)
    }))
}

/// Whether an expression mentions any parameter names.
pub fn mentions_params(text: &str, vars: &[String]) -> Result<bool> {
    fn walk(e: &Expr, vars: &[String]) -> bool {
        match &e.kind {
            ExprKind::Int(_) => false,
            ExprKind::Ident(s) => !vars.contains(s) && parse_param_name(s).is_some(),
            ExprKind::Neg(a) | ExprKind::Pow(a, _) => walk(a, vars),
            ExprKind::Add(a, b) | ExprKind::Sub(a, b) | ExprKind::Mul(a, b) | ExprKind::Div(a, b) => {
                walk(a, vars) || walk(b, vars)
            }
        }
    }
    Ok(walk(&parse_expr(text)?, vars))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{Fp, Rational};

    fn xy() -> Vec<String> {
        vec!["x".into(), "y".into()]
    }

    fn names() -> Vec<Vec<String>> {
        vec![xy()]
    }

    #[test]
    fn polynomial_round_trip() {
        let p = parse_polynomial::<Rational>("x^3 + (y - 1)*(y + 1) - 1/2*x", (), &xy()).unwrap();
        assert_eq!(p.render(&names()), "x^3 + y^2 - 1/2*x - 1");
        let q = parse_polynomial::<Rational>(&p.render(&names()), (), &xy()).unwrap();
        assert_eq!(p, q);
    }

    #[test]
    fn errors_carry_positions() {
        let e = parse_polynomial::<Rational>("x +\n  2*w", (), &xy()).unwrap_err();
        assert_eq!(e, Error::Parse { line: 2, column: 5, message: "unknown variable `w`".into() });
        let e = parse_polynomial::<Rational>("x + (y", (), &xy()).unwrap_err();
        assert!(matches!(e, Error::Parse { line: 1, column: 7, .. }));
        let e = parse_polynomial::<Rational>("x $ y", (), &xy()).unwrap_err();
        assert!(matches!(e, Error::Parse { line: 1, column: 3, .. }));
        assert!(parse_polynomial::<Rational>("1/(1-x)", (), &xy()).is_err());
        assert!(parse_polynomial::<Rational>("x/0", (), &xy()).is_err());
    }

    #[test]
    fn series_from_text() {
        let s = parse_series::<Rational>("1/(1-x)", (), &xy()).unwrap();
        assert!(!s.is_polynomial());
        assert_eq!(s.truncate(3).render(&names()), "x^3 + x^2 + x + 1");
        let s = parse_series::<Rational>("x/(1+y)", (), &xy()).unwrap();
        assert_eq!(s.truncate(2).render(&names()), "-x*y + x");
        assert!(matches!(parse_series::<Rational>("1/x", (), &xy()), Err(Error::NonInvertibleDenominator)));
        // cancellation leaves a polynomial
        let s = parse_series::<Rational>("(x^2 - y^2)/(x - y)", (), &xy()).unwrap();
        assert!(s.is_polynomial());
    }

    #[test]
    fn parameters() {
        let params = vec!["t_1_3".to_string()];
        let p = parse_param_polynomial::<Rational>("x^3 + t_1_3*x*y + x/t_1_3", (), &xy(), &params).unwrap();
        let n = vec![xy(), params.clone()];
        assert_eq!(p.render(&n), "x^3 + t_1_3*x*y + 1/t_1_3*x");
        assert_eq!(parse_param_name("t_2_13"), Some((2, 13)));
        assert_eq!(parse_param_name("t2"), None);
        assert!(mentions_params("x + t_1_3", &xy()).unwrap());
        assert!(!mentions_params("x + y", &xy()).unwrap());
    }

    #[test]
    fn prime_field_literals() {
        let p = parse_polynomial::<Fp>("x/2 + 8", 7, &xy()).unwrap();
        assert_eq!(p.render(&names()), "4*x + 1");
    }
}
