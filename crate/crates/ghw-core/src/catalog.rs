//! Frozen tables of quadratic trace forms with known invariants.
//!
//! [`CATALOG`] entries span ranks of both parities, both dispatch signs, and
//! degenerate and nondegenerate forms, over fields small enough that every
//! claim can be re-verified exhaustively. Every entry's code has full
//! dimension `m` at every nonzero target, so hierarchy suites can sweep the
//! whole table three ways. The recorded invariants were computed with this
//! crate and cross-checked against the subspace searches.
//!
//! [`QUOTIENT_PLANE_CATALOG`] holds rank-2 forms (two-dimensional quotients)
//! in both square classes for each characteristic, for the quotient-geometry
//! suites. It is kept separate because rank-2 forms with non-square
//! discriminant over p = 3 do not yield full-dimension codes: each level set
//! is two proportional points per radical coset, its span misses one
//! dimension, and the subspace searches refuse the code.

use crate::formspec::FormExpr;
use crate::gf::FieldCtx;
use crate::hierarchy::FormProfile;
use crate::qform::QuadraticForm;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CatalogEntry {
    pub p: u64,
    pub m: usize,
    /// Trace-form expression in the shared grammar.
    pub expr: &'static str,
    pub rank: usize,
    pub l: usize,
    pub s: usize,
    pub sign: i64,
    pub eps_prime: i64,
}

impl CatalogEntry {
    /// The entry's field with the default modulus.
    pub fn field(&self) -> FieldCtx {
        FieldCtx::new(self.p, self.m, None).expect("catalog fields are valid")
    }

    pub fn form(&self) -> QuadraticForm {
        let ctx = self.field();
        let expr = FormExpr::parse(self.expr).expect("catalog expressions parse");
        let eval = expr.evaluator(&ctx).expect("catalog coefficients fit the field");
        QuadraticForm::from_fn(&ctx, eval).expect("catalog entries are quadratic")
    }

    pub fn profile(&self, a: u64) -> FormProfile {
        FormProfile::new(&self.form(), a)
    }
}

pub const CATALOG: &[CatalogEntry] = &[
    CatalogEntry { p: 3, m: 3, expr: "tr: x^2", rank: 3, l: 0, s: 1, sign: 1, eps_prime: -1 },
    CatalogEntry { p: 3, m: 3, expr: "tr: 2*x^2", rank: 3, l: 0, s: 1, sign: -1, eps_prime: 1 },
    CatalogEntry { p: 3, m: 4, expr: "tr: x^12", rank: 2, l: 2, s: 1, sign: 1, eps_prime: -1 },
    CatalogEntry { p: 3, m: 4, expr: "tr: x^2 + x^4", rank: 3, l: 1, s: 1, sign: -1, eps_prime: 1 },
    CatalogEntry { p: 3, m: 4, expr: "tr: x^2 - x^4", rank: 3, l: 1, s: 1, sign: 1, eps_prime: -1 },
    CatalogEntry { p: 3, m: 4, expr: "tr: x^2", rank: 4, l: 0, s: 2, sign: -1, eps_prime: -1 },
    CatalogEntry { p: 3, m: 5, expr: "tr: x^2", rank: 5, l: 0, s: 2, sign: 1, eps_prime: 1 },
    CatalogEntry { p: 3, m: 5, expr: "tr: x^2 - x^4", rank: 4, l: 1, s: 2, sign: -1, eps_prime: -1 },
    CatalogEntry { p: 5, m: 3, expr: "tr: x^2", rank: 3, l: 0, s: 1, sign: 1, eps_prime: 1 },
    CatalogEntry { p: 5, m: 3, expr: "tr: 2*x^2", rank: 3, l: 0, s: 1, sign: -1, eps_prime: -1 },
    CatalogEntry { p: 5, m: 3, expr: "tr: x^2 - x^6", rank: 2, l: 1, s: 1, sign: -1, eps_prime: -1 },
    CatalogEntry { p: 5, m: 3, expr: "tr: x^2 - 8*x^6", rank: 2, l: 1, s: 1, sign: 1, eps_prime: 1 },
];

/// Rank-2 forms covering both square classes over each characteristic.
pub const QUOTIENT_PLANE_CATALOG: &[CatalogEntry] = &[
    CatalogEntry { p: 3, m: 4, expr: "tr: x^12", rank: 2, l: 2, s: 1, sign: 1, eps_prime: -1 },
    CatalogEntry { p: 3, m: 4, expr: "tr: x^2 + x^10", rank: 2, l: 2, s: 1, sign: -1, eps_prime: 1 },
    CatalogEntry { p: 5, m: 3, expr: "tr: x^2 - x^6", rank: 2, l: 1, s: 1, sign: -1, eps_prime: -1 },
    CatalogEntry { p: 5, m: 3, expr: "tr: x^2 - 8*x^6", rank: 2, l: 1, s: 1, sign: 1, eps_prime: 1 },
];
