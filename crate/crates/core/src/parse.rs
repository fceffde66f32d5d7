//! Recursive-descent parser for the element grammar:
//!
//! ```text
//! element := term (('*'|'/') term)* ;
//! term    := factor ('^' int)? ;
//! factor  := ident | int | 'sqrt' '(' element ')' | 'root' '(' int ',' element ')' | '(' element ')' ;
//! polynomial := signed-monomial (('+'|'-') signed-monomial)* over base variables only
//! ```
//!
//! Two entry points: `parse_generator` evaluates radical-definition
//! expressions (scenario tower entries) down to a normalized (c·M)^(1/r),
//! and `parse_element` evaluates check expressions against an existing
//! tower, where root forms must match one of its generators.

use num_integer::Integer;
use thiserror::Error;

use crate::residue::{Constant, ResidueField};
use crate::tower::{BaseField, BasePolynomial, GroupElement, Tower};

#[derive(Debug, Error, PartialEq, Eq)]
#[error("syntax error at position {pos}: {message}")]
pub struct ParseError {
    pub pos: usize,
    pub message: String,
}

fn err<T>(pos: usize, message: impl Into<String>) -> Result<T, ParseError> {
    Err(ParseError {
        pos,
        message: message.into(),
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Token {
    Ident(String),
    Int(u64),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
    Comma,
}

fn lex(text: &str) -> Result<Vec<(Token, usize)>, ParseError> {
    let bytes = text.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i] as char;
        let start = i;
        match c {
            ' ' | '\t' | '\n' | '\r' => {
                i += 1;
            }
            '+' => {
                out.push((Token::Plus, start));
                i += 1;
            }
            '-' => {
                out.push((Token::Minus, start));
                i += 1;
            }
            '*' => {
                out.push((Token::Star, start));
                i += 1;
            }
            '/' => {
                out.push((Token::Slash, start));
                i += 1;
            }
            '^' => {
                out.push((Token::Caret, start));
                i += 1;
            }
            '(' => {
                out.push((Token::LParen, start));
                i += 1;
            }
            ')' => {
                out.push((Token::RParen, start));
                i += 1;
            }
            ',' => {
                out.push((Token::Comma, start));
                i += 1;
            }
            '0'..='9' => {
                let mut v: u64 = 0;
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    v = v
                        .checked_mul(10)
                        .and_then(|v| v.checked_add((bytes[i] - b'0') as u64))
                        .ok_or_else(|| ParseError {
                            pos: start,
                            message: "integer literal too large".into(),
                        })?;
                    i += 1;
                }
                out.push((Token::Int(v), start));
            }
            'a'..='z' | 'A'..='Z' | '_' => {
                let mut j = i;
                while j < bytes.len() && (bytes[j].is_ascii_alphanumeric() || bytes[j] == b'_') {
                    j += 1;
                }
                out.push((Token::Ident(text[i..j].to_string()), start));
                i = j;
            }
            other => return err(start, format!("unexpected character {other:?}")),
        }
    }
    Ok(out)
}

/// A radical (constant · monomial)^(1/order).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RadicalSpec {
    pub constant: Constant,
    pub exponents: Vec<i64>,
    pub order: u64,
}

/// Intermediate value in radical-definition mode:
/// constant^(1/const_root) · (∏ X_j^num_j)^(1/den).
///
/// Exponents are held unreduced on purpose. Reducing 3/3 to 1 would turn
/// root(3, t^3) into t, which silently picks one cube root; the engine
/// never chooses a root, it records the radical as written and lets the
/// residue analysis surface any ambiguity.
#[derive(Debug, Clone)]
struct RadElem {
    constant: Constant,
    const_root: u64,
    num: Vec<i64>,
    den: u64,
}

/// Parsed check expression.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ParsedExpr {
    Element(GroupElement),
    Polynomial(BasePolynomial),
    Quotient(BasePolynomial, BasePolynomial),
}

/// Intermediate value in check mode.
#[derive(Debug, Clone)]
enum Val {
    Elem(GroupElement),
    Poly(BasePolynomial),
    Quot(BasePolynomial, BasePolynomial),
}

struct Parser<'a> {
    tokens: Vec<(Token, usize)>,
    pos: usize,
    end: usize,
    tower: Option<&'a Tower>,
    base: &'a BaseField,
}

const MAX_POLY_POWER: i64 = 16;

impl<'a> Parser<'a> {
    fn peek(&self) -> Option<&Token> {
        self.tokens.get(self.pos).map(|(t, _)| t)
    }

    fn here(&self) -> usize {
        self.tokens
            .get(self.pos)
            .map(|&(_, p)| p)
            .unwrap_or(self.end)
    }

    fn bump(&mut self) -> Option<Token> {
        let t = self.tokens.get(self.pos).map(|(t, _)| t.clone());
        if t.is_some() {
            self.pos += 1;
        }
        t
    }

    fn expect(&mut self, want: Token, what: &str) -> Result<(), ParseError> {
        let pos = self.here();
        match self.bump() {
            Some(t) if t == want => Ok(()),
            _ => err(pos, format!("expected {what}")),
        }
    }

    fn residue(&self) -> &ResidueField {
        self.base.residue()
    }

    fn parse_exponent(&mut self) -> Result<i64, ParseError> {
        let neg = matches!(self.peek(), Some(Token::Minus));
        if neg {
            self.bump();
        }
        let pos = self.here();
        match self.bump() {
            Some(Token::Int(v)) => {
                let v: i64 = v.try_into().map_err(|_| ParseError {
                    pos,
                    message: "exponent too large".into(),
                })?;
                Ok(if neg { -v } else { v })
            }
            _ => err(pos, "expected integer exponent"),
        }
    }

    // ---- radical-definition mode -------------------------------------------------

    fn rad_expr(&mut self) -> Result<RadElem, ParseError> {
        let pos = self.here();
        if matches!(self.peek(), Some(Token::Minus)) {
            self.bump();
            let v = self.rad_mul()?;
            if v.const_root != 1 {
                return err(pos, "negation must apply before taking roots");
            }
            let constant = self
                .residue()
                .const_neg(&v.constant)
                .map_err(|e| ParseError {
                    pos,
                    message: e.to_string(),
                })?;
            let v = RadElem { constant, ..v };
            return self.rad_expr_tail(v);
        }
        let v = self.rad_mul()?;
        self.rad_expr_tail(v)
    }

    fn rad_expr_tail(&mut self, v: RadElem) -> Result<RadElem, ParseError> {
        if matches!(self.peek(), Some(Token::Plus | Token::Minus)) {
            return err(self.here(), "sums are not allowed inside radical arguments");
        }
        Ok(v)
    }

    fn rad_mul(&mut self) -> Result<RadElem, ParseError> {
        let mut acc = self.rad_pow()?;
        loop {
            match self.peek() {
                Some(Token::Star) => {
                    self.bump();
                    let rhs = self.rad_pow()?;
                    acc = self.rad_combine(acc, rhs, false)?;
                }
                Some(Token::Slash) => {
                    self.bump();
                    let rhs = self.rad_pow()?;
                    acc = self.rad_combine(acc, rhs, true)?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn rad_pow(&mut self) -> Result<RadElem, ParseError> {
        let base = self.rad_factor()?;
        if matches!(self.peek(), Some(Token::Caret)) {
            self.bump();
            let pos = self.here();
            let k = self.parse_exponent()?;
            let constant = self
                .residue()
                .const_pow(&base.constant, k)
                .map_err(|e| ParseError {
                    pos,
                    message: e.to_string(),
                })?;
            let num = base
                .num
                .iter()
                .map(|&n| {
                    n.checked_mul(k).ok_or_else(|| ParseError {
                        pos,
                        message: "exponent too large".into(),
                    })
                })
                .collect::<Result<Vec<i64>, ParseError>>()?;
            return Ok(RadElem {
                constant,
                const_root: base.const_root,
                num,
                den: base.den,
            });
        }
        Ok(base)
    }

    fn rad_factor(&mut self) -> Result<RadElem, ParseError> {
        let pos = self.here();
        match self.bump() {
            Some(Token::LParen) => {
                let v = self.rad_expr()?;
                self.expect(Token::RParen, "closing parenthesis")?;
                Ok(v)
            }
            Some(Token::Int(v)) => {
                let v: i64 = v.try_into().map_err(|_| ParseError {
                    pos,
                    message: "constant too large".into(),
                })?;
                Ok(self.rad_const(self.residue().const_from_int(v)))
            }
            Some(Token::Ident(name)) => match name.as_str() {
                "sqrt" => {
                    self.expect(Token::LParen, "opening parenthesis after sqrt")?;
                    let inner = self.rad_expr()?;
                    self.expect(Token::RParen, "closing parenthesis")?;
                    self.rad_root(inner, 2, pos)
                }
                "root" => {
                    self.expect(Token::LParen, "opening parenthesis after root")?;
                    let rpos = self.here();
                    let r = match self.bump() {
                        Some(Token::Int(r)) => r,
                        _ => return err(rpos, "expected integer root order"),
                    };
                    self.expect(Token::Comma, "comma in root(r, ...)")?;
                    let inner = self.rad_expr()?;
                    self.expect(Token::RParen, "closing parenthesis")?;
                    self.rad_root(inner, r, pos)
                }
                _ => {
                    if let Some(j) = self.base.variables().iter().position(|v| v == &name) {
                        let mut num = vec![0i64; self.base.ambient_dim()];
                        num[j] = 1;
                        Ok(RadElem {
                            constant: self.residue().const_one(),
                            const_root: 1,
                            num,
                            den: 1,
                        })
                    } else if name == "w" {
                        match self.residue() {
                            ResidueField::Finite(ff) => match ff.generator() {
                                Some(w) => Ok(self.rad_const(Constant::Finite(w))),
                                None => err(pos, "the residue field has no generator w"),
                            },
                            ResidueField::Rational => err(pos, "unknown identifier w"),
                        }
                    } else {
                        err(
                            pos,
                            format!("unknown identifier {name:?} in radical argument"),
                        )
                    }
                }
            },
            _ => err(pos, "expected a factor"),
        }
    }

    fn rad_const(&self, constant: Constant) -> RadElem {
        RadElem {
            constant,
            const_root: 1,
            num: vec![0i64; self.base.ambient_dim()],
            den: 1,
        }
    }

    fn rad_combine(&self, a: RadElem, b: RadElem, divide: bool) -> Result<RadElem, ParseError> {
        let pos = self.here();
        let too_large = || ParseError {
            pos,
            message: "root order too large".into(),
        };
        let const_root = a.const_root.lcm(&b.const_root);
        let ea: i64 = (const_root / a.const_root)
            .try_into()
            .map_err(|_| too_large())?;
        let eb_mag: i64 = (const_root / b.const_root)
            .try_into()
            .map_err(|_| too_large())?;
        let eb = if divide { -eb_mag } else { eb_mag };
        let residue = self.residue();
        let ca = residue.const_pow(&a.constant, ea).map_err(|e| ParseError {
            pos,
            message: e.to_string(),
        })?;
        let cb = residue.const_pow(&b.constant, eb).map_err(|e| ParseError {
            pos,
            message: e.to_string(),
        })?;
        let constant = residue.const_mul(&ca, &cb).map_err(|e| ParseError {
            pos,
            message: e.to_string(),
        })?;
        let den = a.den.lcm(&b.den);
        let sa: i64 = (den / a.den).try_into().map_err(|_| too_large())?;
        let sb: i64 = (den / b.den).try_into().map_err(|_| too_large())?;
        let mut num = Vec::with_capacity(a.num.len());
        for (x, y) in a.num.iter().zip(&b.num) {
            let left = x.checked_mul(sa).ok_or_else(too_large)?;
            let right = y.checked_mul(sb).ok_or_else(too_large)?;
            let combined = if divide {
                left.checked_sub(right)
            } else {
                left.checked_add(right)
            };
            num.push(combined.ok_or_else(too_large)?);
        }
        Ok(RadElem {
            constant,
            const_root,
            num,
            den,
        })
    }

    fn rad_root(&self, inner: RadElem, r: u64, pos: usize) -> Result<RadElem, ParseError> {
        if r == 0 {
            return err(pos, "root order must be positive");
        }
        if self.residue().const_is_zero(&inner.constant) {
            return err(pos, "radical of zero");
        }
        let too_large = || ParseError {
            pos,
            message: "root order too large".into(),
        };
        let const_root = inner.const_root.checked_mul(r).ok_or_else(too_large)?;
        let den = inner.den.checked_mul(r).ok_or_else(too_large)?;
        Ok(RadElem {
            constant: inner.constant,
            const_root,
            num: inner.num,
            den,
        })
    }

    fn rad_finish(&self, v: RadElem, pos: usize) -> Result<RadicalSpec, ParseError> {
        if self.residue().const_is_zero(&v.constant) {
            return err(pos, "radical constant must be nonzero");
        }
        let too_large = || ParseError {
            pos,
            message: "root order too large".into(),
        };
        let order = v.const_root.lcm(&v.den);
        let scale: i64 = (order / v.const_root).try_into().map_err(|_| too_large())?;
        let constant = self
            .residue()
            .const_pow(&v.constant, scale)
            .map_err(|e| ParseError {
                pos,
                message: e.to_string(),
            })?;
        let mono_scale: i64 = (order / v.den).try_into().map_err(|_| too_large())?;
        let mut exponents = Vec::with_capacity(v.num.len());
        for &n in &v.num {
            exponents.push(n.checked_mul(mono_scale).ok_or_else(|| ParseError {
                pos,
                message: "monomial exponent too large".into(),
            })?);
        }
        Ok(RadicalSpec {
            constant,
            exponents,
            order,
        })
    }

    // ---- check mode ---------------------------------------------------------------

    fn expr(&mut self) -> Result<Val, ParseError> {
        let mut acc = if matches!(self.peek(), Some(Token::Minus)) {
            let pos = self.here();
            self.bump();
            let v = self.mul()?;
            self.negate(v, pos)?
        } else {
            self.mul()?
        };
        loop {
            match self.peek() {
                Some(Token::Plus) => {
                    let pos = self.here();
                    self.bump();
                    let rhs = self.mul()?;
                    acc = self.add(acc, rhs, pos)?;
                }
                Some(Token::Minus) => {
                    let pos = self.here();
                    self.bump();
                    let rhs = self.mul()?;
                    let rhs = self.negate(rhs, pos)?;
                    acc = self.add(acc, rhs, pos)?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn mul(&mut self) -> Result<Val, ParseError> {
        let mut acc = self.pow()?;
        loop {
            match self.peek() {
                Some(Token::Star) => {
                    let pos = self.here();
                    self.bump();
                    let rhs = self.pow()?;
                    acc = self.multiply(acc, rhs, pos)?;
                }
                Some(Token::Slash) => {
                    let pos = self.here();
                    self.bump();
                    let rhs = self.pow()?;
                    acc = self.divide(acc, rhs, pos)?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn pow(&mut self) -> Result<Val, ParseError> {
        let base = self.factor()?;
        let base = self.demote(base);
        if !matches!(self.peek(), Some(Token::Caret)) {
            return Ok(base);
        }
        let pos = self.here();
        self.bump();
        let k = self.parse_exponent()?;
        let tower = self.tower.expect("check mode has a tower");
        match base {
            Val::Elem(e) => {
                let powed = tower.element_pow(&e, k).map_err(|e| ParseError {
                    pos,
                    message: e.to_string(),
                })?;
                Ok(Val::Elem(powed))
            }
            Val::Poly(p) => {
                if k >= 0 {
                    Ok(Val::Poly(self.poly_power(&p, k, pos)?))
                } else {
                    let den = self.poly_power(&p, -k, pos)?;
                    Ok(Val::Quot(self.one_poly(), den))
                }
            }
            Val::Quot(..) => err(pos, "powers of quotients are unsupported"),
        }
    }

    fn poly_power(
        &self,
        p: &BasePolynomial,
        k: i64,
        pos: usize,
    ) -> Result<BasePolynomial, ParseError> {
        if k > MAX_POLY_POWER {
            return err(pos, "polynomial power too large");
        }
        let residue = self.residue();
        let mut acc = self.one_poly();
        for _ in 0..k {
            acc = acc.mul(residue, p).map_err(|e| ParseError {
                pos,
                message: e.to_string(),
            })?;
        }
        Ok(acc)
    }

    fn one_poly(&self) -> BasePolynomial {
        let mut p = BasePolynomial::zero();
        p.add_term(
            self.residue(),
            vec![0; self.base.ambient_dim()],
            self.residue().const_one(),
        )
        .expect("constant term");
        p
    }

    fn factor(&mut self) -> Result<Val, ParseError> {
        let pos = self.here();
        let tower = self.tower.expect("check mode has a tower");
        match self.bump() {
            Some(Token::LParen) => {
                let v = self.expr()?;
                self.expect(Token::RParen, "closing parenthesis")?;
                Ok(v)
            }
            Some(Token::Int(v)) => {
                let v: i64 = v.try_into().map_err(|_| ParseError {
                    pos,
                    message: "constant too large".into(),
                })?;
                let mut e = tower.element_one();
                e.constant = self.residue().const_from_int(v);
                Ok(Val::Elem(e))
            }
            Some(Token::Ident(name)) => match name.as_str() {
                "sqrt" | "root" => {
                    self.pos -= 1;
                    let spec_pos = self.here();
                    let rad = self.rad_factor()?;
                    let spec = self.rad_finish(rad, spec_pos)?;
                    match tower.generators().iter().position(|g| {
                        g.constant == spec.constant
                            && g.exponents == spec.exponents
                            && g.order == spec.order
                    }) {
                        Some(idx) => Ok(Val::Elem(tower.element_unit(idx))),
                        None => err(spec_pos, "no tower generator matches this radical"),
                    }
                }
                _ => {
                    if let Some(idx) = tower.generator_index(&name) {
                        Ok(Val::Elem(tower.element_unit(idx)))
                    } else if let Some(j) = tower.variable_index(&name) {
                        Ok(Val::Elem(tower.element_unit(tower.generators().len() + j)))
                    } else if name == "w" {
                        match self.residue() {
                            ResidueField::Finite(ff) => match ff.generator() {
                                Some(w) => {
                                    let mut e = tower.element_one();
                                    e.constant = Constant::Finite(w);
                                    Ok(Val::Elem(e))
                                }
                                None => err(pos, "the residue field has no generator w"),
                            },
                            ResidueField::Rational => err(pos, "unknown identifier w"),
                        }
                    } else {
                        err(pos, format!("unknown identifier {name:?}"))
                    }
                }
            },
            _ => err(pos, "expected a factor"),
        }
    }

    fn elem_to_poly(&self, e: &GroupElement, pos: usize) -> Result<BasePolynomial, ParseError> {
        let tower = self.tower.expect("check mode has a tower");
        let g = tower.generators().len();
        if e.exponents[..g].iter().any(|&k| k != 0) {
            return err(pos, "sums involving tower generators are unsupported");
        }
        let mut exps = Vec::with_capacity(self.base.ambient_dim());
        for &b in &e.exponents[g..] {
            let b: u64 = b.try_into().map_err(|_| ParseError {
                pos,
                message: "sums require non-negative variable exponents".into(),
            })?;
            exps.push(b);
        }
        let mut p = BasePolynomial::zero();
        p.add_term(self.residue(), exps, e.constant.clone())
            .map_err(|e| ParseError {
                pos,
                message: e.to_string(),
            })?;
        Ok(p)
    }

    fn to_poly(&self, v: Val, pos: usize) -> Result<BasePolynomial, ParseError> {
        match v {
            Val::Elem(e) => self.elem_to_poly(&e, pos),
            Val::Poly(p) => Ok(p),
            Val::Quot(..) => err(
                pos,
                "quotients may not appear inside sums or products of sums",
            ),
        }
    }

    /// A single-term polynomial is a constant times a monomial and can keep
    /// participating in element arithmetic, e.g. "(2*w+1)*g1".
    fn demote(&self, v: Val) -> Val {
        let single = match &v {
            Val::Poly(p) => {
                let mut terms = p.terms();
                match (terms.next(), terms.next()) {
                    (Some((exps, coeff)), None) => Some((exps.clone(), coeff.clone())),
                    _ => None,
                }
            }
            _ => None,
        };
        let Some((exps, coeff)) = single else {
            return v;
        };
        let tower = self.tower.expect("check mode has a tower");
        let mut exponents = vec![0i64; tower.arity()];
        let g = tower.generators().len();
        for (slot, &e) in exponents[g..].iter_mut().zip(&exps) {
            let Ok(e) = i64::try_from(e) else { return v };
            *slot = e;
        }
        Val::Elem(GroupElement {
            constant: coeff,
            exponents,
        })
    }

    fn negate(&self, v: Val, pos: usize) -> Result<Val, ParseError> {
        let residue = self.residue();
        Ok(match v {
            Val::Elem(mut e) => {
                e.constant = residue.const_neg(&e.constant).map_err(|e| ParseError {
                    pos,
                    message: e.to_string(),
                })?;
                Val::Elem(e)
            }
            Val::Poly(p) => Val::Poly(p.neg(residue).map_err(|e| ParseError {
                pos,
                message: e.to_string(),
            })?),
            Val::Quot(n, d) => Val::Quot(
                n.neg(residue).map_err(|e| ParseError {
                    pos,
                    message: e.to_string(),
                })?,
                d,
            ),
        })
    }

    fn add(&self, a: Val, b: Val, pos: usize) -> Result<Val, ParseError> {
        let pa = self.to_poly(a, pos)?;
        let pb = self.to_poly(b, pos)?;
        let sum = pa.add(self.residue(), &pb).map_err(|e| ParseError {
            pos,
            message: e.to_string(),
        })?;
        Ok(Val::Poly(sum))
    }

    fn multiply(&self, a: Val, b: Val, pos: usize) -> Result<Val, ParseError> {
        let residue = self.residue();
        let tower = self.tower.expect("check mode has a tower");
        Ok(match (a, b) {
            (Val::Elem(x), Val::Elem(y)) => {
                Val::Elem(tower.element_mul(&x, &y).map_err(|e| ParseError {
                    pos,
                    message: e.to_string(),
                })?)
            }
            (Val::Quot(n, d), other) => {
                let p = self.to_poly(other, pos)?;
                Val::Quot(
                    n.mul(residue, &p).map_err(|e| ParseError {
                        pos,
                        message: e.to_string(),
                    })?,
                    d,
                )
            }
            (other, Val::Quot(n, d)) => {
                let p = self.to_poly(other, pos)?;
                Val::Quot(
                    p.mul(residue, &n).map_err(|e| ParseError {
                        pos,
                        message: e.to_string(),
                    })?,
                    d,
                )
            }
            (a, b) => {
                let pa = self.to_poly(a, pos)?;
                let pb = self.to_poly(b, pos)?;
                Val::Poly(pa.mul(residue, &pb).map_err(|e| ParseError {
                    pos,
                    message: e.to_string(),
                })?)
            }
        })
    }

    fn divide(&self, a: Val, b: Val, pos: usize) -> Result<Val, ParseError> {
        let residue = self.residue();
        let tower = self.tower.expect("check mode has a tower");
        Ok(match (a, b) {
            (Val::Elem(x), Val::Elem(y)) => {
                if residue.const_is_zero(&y.constant) {
                    return err(pos, "division by zero");
                }
                let inv = tower.element_pow(&y, -1).map_err(|e| ParseError {
                    pos,
                    message: e.to_string(),
                })?;
                Val::Elem(tower.element_mul(&x, &inv).map_err(|e| ParseError {
                    pos,
                    message: e.to_string(),
                })?)
            }
            (Val::Quot(n, d), other) => {
                let p = self.to_poly(other, pos)?;
                if p.is_zero() {
                    return err(pos, "division by zero");
                }
                Val::Quot(
                    n,
                    d.mul(residue, &p).map_err(|e| ParseError {
                        pos,
                        message: e.to_string(),
                    })?,
                )
            }
            (other, Val::Quot(..)) => {
                let _ = other;
                return err(pos, "quotients may not be nested");
            }
            (a, b) => {
                let pa = self.to_poly(a, pos)?;
                let pb = self.to_poly(b, pos)?;
                if pb.is_zero() {
                    return err(pos, "division by zero");
                }
                Val::Quot(pa, pb)
            }
        })
    }
}

/// Parses a radical-definition expression for a scenario tower entry.
pub fn parse_generator(text: &str, base: &BaseField) -> Result<RadicalSpec, ParseError> {
    let tokens = lex(text)?;
    let mut p = Parser {
        tokens,
        pos: 0,
        end: text.len(),
        tower: None,
        base,
    };
    let v = p.rad_expr()?;
    if p.peek().is_some() {
        return err(p.here(), "trailing input after expression");
    }
    p.rad_finish(v, 0)
}

/// Parses a check expression against a tower: a multiplicative element, a
/// base polynomial, or a quotient of base polynomials.
pub fn parse_element(text: &str, tower: &Tower) -> Result<ParsedExpr, ParseError> {
    let tokens = lex(text)?;
    let mut p = Parser {
        tokens,
        pos: 0,
        end: text.len(),
        tower: Some(tower),
        base: tower.base(),
    };
    let v = p.expr()?;
    if p.peek().is_some() {
        return err(p.here(), "trailing input after expression");
    }
    Ok(match p.demote(v) {
        Val::Elem(e) => {
            if tower.base().residue().const_is_zero(&e.constant) {
                ParsedExpr::Polynomial(BasePolynomial::zero())
            } else {
                ParsedExpr::Element(e)
            }
        }
        Val::Poly(p) => ParsedExpr::Polynomial(p),
        Val::Quot(n, d) => ParsedExpr::Quotient(n, d),
    })
}
