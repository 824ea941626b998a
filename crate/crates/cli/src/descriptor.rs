//! Parsers for the small descriptor languages accepted on the command line:
//! arithmetic expressions in `n` (with the distinguished alternating factor
//! `(-1)^n`), explicit term lists, and the trig-family descriptor
//! `m=..,theta=..`.
//!
//! Expression grammar (whitespace insensitive):
//!
//! ```text
//! expr     := term (('+' | '-') term)*
//! term     := unary (('*' | '/')? unary)*      -- implicit multiplication
//! unary    := '-' unary | postfix
//! postfix  := atom ('^' exponent)?
//! atom     := INTEGER | 'n' | '(' expr ')'
//! exponent := INTEGER | 'n'                    -- 'n' only on base (-1)
//! ```
//!
//! Rational literals are written as divisions (`1/2`); decimal points are
//! rejected everywhere so exact inputs stay exact.

use regsum::exactnum::{Polynomial, Rational};
use regsum::sumreg::SequenceSpec;

#[derive(Clone, Debug, PartialEq)]
pub enum Expr {
    Const(Rational),
    Var,
    /// The factor `(-1)^n`.
    AltSign,
    Neg(Box<Expr>),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Div(Box<Expr>, Box<Expr>),
    Pow(Box<Expr>, u32),
}

#[derive(Clone, Debug, PartialEq)]
enum Token {
    Int(i64),
    Var,
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    Open,
    Close,
}

fn tokenize(s: &str) -> Result<Vec<Token>, String> {
    let mut out = Vec::new();
    let mut chars = s.chars().peekable();
    while let Some(&c) = chars.peek() {
        match c {
            ' ' | '\t' => {
                chars.next();
            }
            '0'..='9' => {
                let mut value = String::new();
                while let Some(&d) = chars.peek() {
                    if d.is_ascii_digit() {
                        value.push(d);
                        chars.next();
                    } else {
                        break;
                    }
                }
                if chars.peek() == Some(&'.') {
                    return Err("decimal literals are not accepted; write p/q".into());
                }
                let n: i64 = value
                    .parse()
                    .map_err(|_| format!("integer literal {value} out of range"))?;
                out.push(Token::Int(n));
            }
            'n' => {
                chars.next();
                out.push(Token::Var);
            }
            '+' => {
                chars.next();
                out.push(Token::Plus);
            }
            '-' => {
                chars.next();
                out.push(Token::Minus);
            }
            '*' => {
                chars.next();
                out.push(Token::Star);
            }
            '/' => {
                chars.next();
                out.push(Token::Slash);
            }
            '^' => {
                chars.next();
                out.push(Token::Caret);
            }
            '(' => {
                chars.next();
                out.push(Token::Open);
            }
            ')' => {
                chars.next();
                out.push(Token::Close);
            }
            other => return Err(format!("unexpected character {other:?}")),
        }
    }
    Ok(out)
}

struct Parser {
    tokens: Vec<Token>,
    pos: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Token> {
        self.tokens.get(self.pos)
    }

    fn next(&mut self) -> Option<Token> {
        let t = self.tokens.get(self.pos).cloned();
        if t.is_some() {
            self.pos += 1;
        }
        t
    }

    fn expr(&mut self) -> Result<Expr, String> {
        let mut acc = self.term()?;
        while let Some(tok) = self.peek() {
            match tok {
                Token::Plus => {
                    self.next();
                    acc = Expr::Add(Box::new(acc), Box::new(self.term()?));
                }
                Token::Minus => {
                    self.next();
                    acc = Expr::Sub(Box::new(acc), Box::new(self.term()?));
                }
                _ => break,
            }
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<Expr, String> {
        let mut acc = self.unary()?;
        loop {
            match self.peek() {
                Some(Token::Star) => {
                    self.next();
                    acc = Expr::Mul(Box::new(acc), Box::new(self.unary()?));
                }
                Some(Token::Slash) => {
                    self.next();
                    acc = Expr::Div(Box::new(acc), Box::new(self.unary()?));
                }
                // Implicit multiplication: 2n, 2(n+1), n(n-1).
                Some(Token::Int(_)) | Some(Token::Var) | Some(Token::Open) => {
                    acc = Expr::Mul(Box::new(acc), Box::new(self.unary()?));
                }
                _ => break,
            }
        }
        Ok(acc)
    }

    fn unary(&mut self) -> Result<Expr, String> {
        if self.peek() == Some(&Token::Minus) {
            self.next();
            return Ok(Expr::Neg(Box::new(self.unary()?)));
        }
        self.postfix()
    }

    fn postfix(&mut self) -> Result<Expr, String> {
        let base = self.atom()?;
        if self.peek() != Some(&Token::Caret) {
            return Ok(base);
        }
        self.next();
        match self.next() {
            Some(Token::Var) => {
                // Only (-1)^n is meaningful with a variable exponent.
                match constant_value(&base) {
                    Some(c) if c == Rational::from_int(-1) => Ok(Expr::AltSign),
                    _ => Err("a variable exponent is only allowed on the base (-1)".into()),
                }
            }
            Some(Token::Int(e)) if e >= 0 => {
                let e = u32::try_from(e).map_err(|_| "exponent out of range".to_string())?;
                Ok(Expr::Pow(Box::new(base), e))
            }
            Some(Token::Minus) => match self.next() {
                Some(Token::Int(e)) => {
                    // Negative constant exponents fold into a division.
                    let e = u32::try_from(e).map_err(|_| "exponent out of range".to_string())?;
                    Ok(Expr::Div(
                        Box::new(Expr::Const(Rational::one())),
                        Box::new(Expr::Pow(Box::new(base), e)),
                    ))
                }
                _ => Err("expected an integer after '^-'".into()),
            },
            other => Err(format!("expected an exponent, found {other:?}")),
        }
    }

    fn atom(&mut self) -> Result<Expr, String> {
        match self.next() {
            Some(Token::Int(v)) => Ok(Expr::Const(Rational::from_int(v))),
            Some(Token::Var) => Ok(Expr::Var),
            Some(Token::Open) => {
                let inner = self.expr()?;
                if self.next() != Some(Token::Close) {
                    return Err("missing closing parenthesis".into());
                }
                Ok(inner)
            }
            other => Err(format!("expected a value, found {other:?}")),
        }
    }
}

fn constant_value(expr: &Expr) -> Option<Rational> {
    match expr {
        Expr::Const(c) => Some(c.clone()),
        Expr::Neg(inner) => constant_value(inner).map(|c| -c),
        Expr::Add(a, b) => Some(constant_value(a)? + constant_value(b)?),
        Expr::Sub(a, b) => Some(constant_value(a)? - constant_value(b)?),
        Expr::Mul(a, b) => Some(constant_value(a)? * constant_value(b)?),
        Expr::Div(a, b) => {
            let d = constant_value(b)?;
            if d.is_zero() {
                return None;
            }
            Some(constant_value(a)? / d)
        }
        Expr::Pow(a, e) => {
            let base = constant_value(a)?;
            Some(base.pow(*e as i32))
        }
        _ => None,
    }
}

pub fn parse_expr(s: &str) -> Result<Expr, String> {
    let tokens = tokenize(s)?;
    if tokens.is_empty() {
        return Err("empty expression".into());
    }
    let mut parser = Parser { tokens, pos: 0 };
    let expr = parser.expr()?;
    if parser.pos != parser.tokens.len() {
        return Err("trailing input after expression".into());
    }
    Ok(expr)
}

/// Exact evaluation at integer `n`; `(-1)^n` resolves by parity.
pub fn eval_int(expr: &Expr, n: i64) -> Result<Rational, String> {
    match expr {
        Expr::Const(c) => Ok(c.clone()),
        Expr::Var => Ok(Rational::from_int(n)),
        Expr::AltSign => Ok(if n.rem_euclid(2) == 0 {
            Rational::one()
        } else {
            Rational::from_int(-1)
        }),
        Expr::Neg(a) => Ok(-eval_int(a, n)?),
        Expr::Add(a, b) => Ok(eval_int(a, n)? + eval_int(b, n)?),
        Expr::Sub(a, b) => Ok(eval_int(a, n)? - eval_int(b, n)?),
        Expr::Mul(a, b) => Ok(eval_int(a, n)? * eval_int(b, n)?),
        Expr::Div(a, b) => {
            let d = eval_int(b, n)?;
            if d.is_zero() {
                return Err(format!("division by zero at n = {n}"));
            }
            Ok(eval_int(a, n)? / d)
        }
        Expr::Pow(a, e) => Ok(eval_int(a, n)?.pow(*e as i32)),
    }
}

/// `(-1)^(alternating * n) * poly(n)` when the expression is polynomial in
/// `n` with at most a global alternating sign.
#[derive(Clone, Debug)]
pub struct PolyForm {
    pub alternating: bool,
    pub poly: Polynomial,
}

pub fn to_poly_form(expr: &Expr) -> Option<PolyForm> {
    match expr {
        Expr::Const(c) => Some(PolyForm {
            alternating: false,
            poly: Polynomial::constant(c.clone()),
        }),
        Expr::Var => Some(PolyForm {
            alternating: false,
            poly: Polynomial::from_ints(&[0, 1]),
        }),
        Expr::AltSign => Some(PolyForm {
            alternating: true,
            poly: Polynomial::constant(Rational::one()),
        }),
        Expr::Neg(a) => {
            let f = to_poly_form(a)?;
            Some(PolyForm {
                alternating: f.alternating,
                poly: -f.poly,
            })
        }
        Expr::Add(a, b) | Expr::Sub(a, b) => {
            let fa = to_poly_form(a)?;
            let fb = to_poly_form(b)?;
            // Mixed-parity sums are not a single alternating-polynomial form,
            // except when one side vanishes.
            let alternating = match (fa.poly.is_zero(), fb.poly.is_zero()) {
                (true, _) => fb.alternating,
                (_, true) => fa.alternating,
                _ if fa.alternating == fb.alternating => fa.alternating,
                _ => return None,
            };
            let poly = if matches!(expr, Expr::Add(..)) {
                fa.poly + fb.poly
            } else {
                fa.poly - fb.poly
            };
            Some(PolyForm { alternating, poly })
        }
        Expr::Mul(a, b) => {
            let fa = to_poly_form(a)?;
            let fb = to_poly_form(b)?;
            Some(PolyForm {
                alternating: fa.alternating ^ fb.alternating,
                poly: fa.poly * fb.poly,
            })
        }
        Expr::Div(a, b) => {
            let fa = to_poly_form(a)?;
            let fb = to_poly_form(b)?;
            if fb.alternating || fb.poly.degree() != Some(0) {
                return None;
            }
            let c = fb.poly.coeff(0);
            Some(PolyForm {
                alternating: fa.alternating,
                poly: fa.poly.scale(&c.recip()),
            })
        }
        Expr::Pow(a, e) => {
            let fa = to_poly_form(a)?;
            Some(PolyForm {
                alternating: fa.alternating && e % 2 == 1,
                poly: fa.poly.pow(*e),
            })
        }
    }
}

/// Builds a sequence from an expression descriptor. Alternating-polynomial
/// shapes become the symbolic kind; everything else becomes an explicit
/// exact term map (validated at the first few indices from `first_index`).
pub fn parse_sequence(s: &str, first_index: u64) -> Result<SequenceSpec, String> {
    let expr = parse_expr(s)?;
    if let Some(form) = to_poly_form(&expr) {
        if form.alternating {
            return Ok(SequenceSpec::alternating_polynomial(form.poly));
        }
        let poly = form.poly;
        return Ok(SequenceSpec::explicit(move |n| poly.eval_int(n as i64)));
    }
    for n in first_index..first_index + 8 {
        eval_int(&expr, n as i64).map_err(|e| format!("descriptor undefined: {e}"))?;
    }
    Ok(SequenceSpec::explicit(move |n| {
        eval_int(&expr, n as i64)
            .unwrap_or_else(|e| panic!("descriptor evaluation failed: {e}"))
    }))
}

/// Explicit comma-separated term list; indices beyond the list are zero.
pub fn parse_terms(s: &str) -> Result<SequenceSpec, String> {
    let terms: Result<Vec<Rational>, String> = s
        .split(',')
        .map(|part| {
            part.trim()
                .parse::<Rational>()
                .map_err(|e| format!("bad term {part:?}: {e}"))
        })
        .collect();
    let terms = terms?;
    if terms.is_empty() {
        return Err("empty term list".into());
    }
    Ok(SequenceSpec::explicit(move |n| {
        terms
            .get(n as usize)
            .cloned()
            .unwrap_or_else(Rational::zero)
    }))
}

/// `m=<int>,theta=<angle>` where the angle is `pi`, `-pi/3`-style, or a
/// plain numeric literal.
pub fn parse_trig(s: &str) -> Result<(u32, f64), String> {
    let mut m: Option<u32> = None;
    let mut theta: Option<f64> = None;
    for part in s.split(',') {
        let (key, value) = part
            .trim()
            .split_once('=')
            .ok_or_else(|| format!("expected key=value, found {part:?}"))?;
        match key.trim() {
            "m" => {
                m = Some(
                    value
                        .trim()
                        .parse()
                        .map_err(|_| format!("bad m value {value:?}"))?,
                );
            }
            "theta" => theta = Some(parse_angle(value.trim())?),
            other => return Err(format!("unknown trig key {other:?}")),
        }
    }
    match (m, theta) {
        (Some(m), Some(theta)) => Ok((m, theta)),
        _ => Err("trig descriptor needs both m= and theta=".into()),
    }
}

pub fn parse_angle(s: &str) -> Result<f64, String> {
    let (negative, body) = match s.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, s),
    };
    let magnitude = if body == "pi" {
        std::f64::consts::PI
    } else if let Some(denom) = body.strip_prefix("pi/") {
        let d: f64 = denom
            .parse()
            .map_err(|_| format!("bad pi fraction {s:?}"))?;
        if d == 0.0 {
            return Err("pi/0 is not an angle".into());
        }
        std::f64::consts::PI / d
    } else {
        body.parse::<f64>().map_err(|_| format!("bad angle {s:?}"))?
    };
    Ok(if negative { -magnitude } else { magnitude })
}
