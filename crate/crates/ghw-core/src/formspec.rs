//! Parser for trace-form expressions: `tr: c1*x^e1 [± c2*x^e2 ...]`.
//!
//! The expression denotes `f(x) = Tr(sum_i c_i x^{e_i})` on an extension
//! field. Whitespace is insignificant. Coefficients default to 1 and are
//! written as base-p integer encodings of field elements, so prime-subfield
//! constants look like ordinary small integers. Every error carries the byte
//! offset where it was detected.

use crate::gf::{FFElem, FieldCtx};
use alloc::vec::Vec;
use core::fmt;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FormSpecError {
    Expected { what: &'static str, at: usize },
    Overflow { at: usize },
    Trailing { at: usize },
    CoeffOutOfRange { at: usize, coeff: u64, field_size: u64 },
}

impl fmt::Display for FormSpecError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FormSpecError::Expected { what, at } => {
                write!(f, "expected {what} at byte {at}")
            }
            FormSpecError::Overflow { at } => write!(f, "integer too large at byte {at}"),
            FormSpecError::Trailing { at } => write!(f, "unexpected trailing input at byte {at}"),
            FormSpecError::CoeffOutOfRange { at, coeff, field_size } => write!(
                f,
                "coefficient {coeff} at byte {at} is not a valid element encoding (field has {field_size} elements)"
            ),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Sign {
    Plus,
    Minus,
}

/// One monomial `c * x^e` with the sign it was written under and the byte
/// offset of its coefficient (for error reporting at instantiation time).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Term {
    pub sign: Sign,
    pub coeff: u64,
    pub exp: u128,
    pub at: usize,
}

/// A parsed trace-form expression, not yet bound to a field.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FormExpr {
    terms: Vec<Term>,
}

impl FormExpr {
    pub fn parse(input: &str) -> Result<FormExpr, FormSpecError> {
        Parser { bytes: input.as_bytes(), pos: 0 }.parse()
    }

    pub fn terms(&self) -> &[Term] {
        &self.terms
    }

    /// Resolves coefficient encodings in the given field and returns the
    /// signed (coefficient, exponent) pairs.
    pub fn bind(&self, ctx: &FieldCtx) -> Result<Vec<(FFElem, u128)>, FormSpecError> {
        let mut out = Vec::with_capacity(self.terms.len());
        for t in &self.terms {
            if t.coeff >= ctx.size() {
                return Err(FormSpecError::CoeffOutOfRange {
                    at: t.at,
                    coeff: t.coeff,
                    field_size: ctx.size(),
                });
            }
            let mut c = ctx.decode(t.coeff);
            if t.sign == Sign::Minus {
                c = ctx.neg(&c);
            }
            out.push((c, t.exp));
        }
        Ok(out)
    }

    /// The function `x -> Tr(sum_i c_i x^{e_i})` in the given field.
    pub fn evaluator<'a>(
        &self,
        ctx: &'a FieldCtx,
    ) -> Result<impl Fn(&FFElem) -> u64 + 'a, FormSpecError> {
        let terms = self.bind(ctx)?;
        Ok(move |x: &FFElem| {
            let mut acc = ctx.zero();
            for (c, e) in &terms {
                acc = ctx.add(&acc, &ctx.mul(c, &ctx.pow(x, *e)));
            }
            ctx.trace(&acc)
        })
    }
}

impl fmt::Display for FormExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "tr:")?;
        for (i, t) in self.terms.iter().enumerate() {
            match (i, t.sign) {
                (0, Sign::Plus) => write!(f, " ")?,
                (0, Sign::Minus) => write!(f, " -")?,
                (_, Sign::Plus) => write!(f, " + ")?,
                (_, Sign::Minus) => write!(f, " - ")?,
            }
            if t.coeff != 1 {
                write!(f, "{}*", t.coeff)?;
            }
            write!(f, "x^{}", t.exp)?;
        }
        Ok(())
    }
}

struct Parser<'a> {
    bytes: &'a [u8],
    pos: usize,
}

impl Parser<'_> {
    fn parse(mut self) -> Result<FormExpr, FormSpecError> {
        self.skip_ws();
        if !(self.eat(b't') && self.eat(b'r')) {
            return Err(FormSpecError::Expected { what: "`tr:` prefix", at: self.pos });
        }
        self.skip_ws();
        if !self.eat(b':') {
            return Err(FormSpecError::Expected { what: "`:` after `tr`", at: self.pos });
        }
        let mut terms = Vec::new();
        loop {
            self.skip_ws();
            let sign = if terms.is_empty() {
                if self.eat(b'-') {
                    Sign::Minus
                } else {
                    let _ = self.eat(b'+');
                    Sign::Plus
                }
            } else if self.eat(b'+') {
                Sign::Plus
            } else if self.eat(b'-') {
                Sign::Minus
            } else if self.pos == self.bytes.len() {
                break;
            } else {
                return Err(FormSpecError::Trailing { at: self.pos });
            };
            terms.push(self.term(sign)?);
        }
        if terms.is_empty() {
            return Err(FormSpecError::Expected { what: "at least one term", at: self.pos });
        }
        Ok(FormExpr { terms })
    }

    /// term := (int '*')? 'x' ('^' int)? | int
    fn term(&mut self, sign: Sign) -> Result<Term, FormSpecError> {
        self.skip_ws();
        let at = self.pos;
        let coeff = if self.peek().is_some_and(|b| b.is_ascii_digit()) {
            let c = self.integer::<u64>()?;
            self.skip_ws();
            if self.eat(b'*') {
                self.skip_ws();
            } else if self.peek() != Some(b'x') {
                // Bare constant: c * x^0.
                return Ok(Term { sign, coeff: c, exp: 0, at });
            }
            c
        } else {
            1
        };
        if !self.eat(b'x') {
            return Err(FormSpecError::Expected { what: "`x`", at: self.pos });
        }
        self.skip_ws();
        let exp = if self.eat(b'^') {
            self.skip_ws();
            if !self.peek().is_some_and(|b| b.is_ascii_digit()) {
                return Err(FormSpecError::Expected { what: "exponent digits", at: self.pos });
            }
            self.integer::<u128>()?
        } else {
            1
        };
        Ok(Term { sign, coeff, exp, at })
    }

    fn integer<T: TryFrom<u128>>(&mut self) -> Result<T, FormSpecError> {
        let at = self.pos;
        let mut value: u128 = 0;
        while let Some(b) = self.peek() {
            if !b.is_ascii_digit() {
                break;
            }
            value = value
                .checked_mul(10)
                .and_then(|v| v.checked_add((b - b'0') as u128))
                .ok_or(FormSpecError::Overflow { at })?;
            self.pos += 1;
        }
        T::try_from(value).map_err(|_| FormSpecError::Overflow { at })
    }

    fn peek(&self) -> Option<u8> {
        self.bytes.get(self.pos).copied()
    }

    fn eat(&mut self, b: u8) -> bool {
        if self.peek() == Some(b) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn skip_ws(&mut self) {
        while self.peek().is_some_and(|b| b.is_ascii_whitespace()) {
            self.pos += 1;
        }
    }
}
