//! Trace codes cut out by the level set of a quadratic form.
//!
//! For a form `f` on `F_{p^m}` and a target value `a`, the defining set is
//! `D_a = {x in F_{p^m}^* : f(x) = a}` in ascending encoding order, and the
//! code is `{(Tr(x d))_{d in D_a} : x in F_{p^m}}`. The generator matrix has
//! row `i` equal to `(Tr(v_i d))_d` for the polynomial basis `v_i`; its rank
//! is the code dimension, which is computed, never assumed.

use crate::gf::{FFElem, FieldCtx};
use crate::qform::QuadraticForm;
use crate::subspaces::{MatrixFp, Subspace};
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CodeError {
    /// No nonzero field element attains the requested form value.
    EmptyDefiningSet { a: u64 },
    /// Full codeword enumeration was refused for a field of this size.
    TooLarge { size: u64, max: u64 },
    /// The generator matrix has rank below `m`, so message subspaces do not
    /// correspond to subcodes.
    DegenerateCode { dim: usize, m: usize },
}

impl fmt::Display for CodeError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CodeError::EmptyDefiningSet { a } => write!(f, "defining set for value {a} is empty"),
            CodeError::TooLarge { size, max } => {
                write!(f, "field with {size} elements exceeds the enumeration cap {max}")
            }
            CodeError::DegenerateCode { dim, m } => {
                write!(f, "code dimension {dim} is below the field degree {m}")
            }
        }
    }
}

/// The level set `{x != 0 : f(x) = a}` in ascending encoding order, plus a
/// membership mask indexed by element encoding.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DefiningSet {
    a: u64,
    elements: Vec<FFElem>,
    mask: Vec<bool>,
}

impl DefiningSet {
    pub fn compute(form: &QuadraticForm, a: u64) -> DefiningSet {
        let ctx = form.ctx();
        let a = a % ctx.p();
        let mut elements = Vec::new();
        let mut mask = vec![false; ctx.size() as usize];
        for x in ctx.elements() {
            if !x.is_zero() && form.eval(&x) == a {
                mask[ctx.encode(&x) as usize] = true;
                elements.push(x);
            }
        }
        DefiningSet { a, elements, mask }
    }

    pub fn a(&self) -> u64 {
        self.a
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn elements(&self) -> &[FFElem] {
        &self.elements
    }

    /// Membership test by canonical encoding.
    pub fn contains_encoded(&self, code: u64) -> bool {
        self.mask[code as usize]
    }
}

/// A linear trace code with its defining set and generator matrix.
#[derive(Debug, Clone)]
pub struct TraceCode {
    ctx: FieldCtx,
    dset: DefiningSet,
    gen: MatrixFp,
    dim: usize,
}

impl TraceCode {
    pub fn build(form: &QuadraticForm, a: u64) -> Result<TraceCode, CodeError> {
        let ctx = form.ctx().clone();
        let dset = DefiningSet::compute(form, a);
        if dset.is_empty() {
            return Err(CodeError::EmptyDefiningSet { a: a % ctx.p() });
        }
        let m = ctx.m();
        let n = dset.len();
        let mut gen = MatrixFp::zeros(ctx.p(), m, n);
        for i in 0..m {
            let v = ctx.basis_elem(i);
            for (j, d) in dset.elements().iter().enumerate() {
                gen.set(i, j, ctx.trace(&ctx.mul(&v, d)));
            }
        }
        let dim = gen.rank();
        Ok(TraceCode { ctx, dset, gen, dim })
    }

    pub fn ctx(&self) -> &FieldCtx {
        &self.ctx
    }

    pub fn defining_set(&self) -> &DefiningSet {
        &self.dset
    }

    /// Generator matrix, `m x n`; row `i` is the codeword of basis element `i`.
    pub fn generator(&self) -> &MatrixFp {
        &self.gen
    }

    pub fn len(&self) -> usize {
        self.dset.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// `(Tr(x d_1), ..., Tr(x d_n))`, computed as the `x`-coordinate
    /// combination of the generator rows.
    pub fn codeword(&self, x: &FFElem) -> Vec<u64> {
        let p = self.ctx.p();
        let n = self.len();
        let mut word = vec![0u64; n];
        for (i, &c) in x.coords().iter().enumerate() {
            if c == 0 {
                continue;
            }
            for j in 0..n {
                word[j] = (word[j] + c * self.gen.get(i, j)) % p;
            }
        }
        word
    }

    pub fn codeword_weight(&self, x: &FFElem) -> usize {
        self.codeword(x).iter().filter(|&&c| c != 0).count()
    }

    /// Tally of `(weight, multiplicity)` over all `p^m` codewords, ascending
    /// by weight. Refuses fields larger than `MAX_ENUM_FIELD`.
    pub fn weight_distribution(&self) -> Result<Vec<(usize, u64)>, CodeError> {
        if self.ctx.size() > MAX_ENUM_FIELD {
            return Err(CodeError::TooLarge { size: self.ctx.size(), max: MAX_ENUM_FIELD });
        }
        let mut counts = vec![0u64; self.len() + 1];
        for x in self.ctx.elements() {
            counts[self.codeword_weight(&x)] += 1;
        }
        Ok(counts
            .into_iter()
            .enumerate()
            .filter(|&(_, c)| c != 0)
            .collect())
    }

    /// `|Supp(V)|` for the subcode `V` spanned by the codewords of a message
    /// subspace: the number of positions where some member is nonzero.
    /// Requires full dimension so message subspaces match subcodes.
    pub fn subcode_support(&self, x: &Subspace) -> Result<usize, CodeError> {
        if self.dim < self.ctx.m() {
            return Err(CodeError::DegenerateCode { dim: self.dim, m: self.ctx.m() });
        }
        assert_eq!(x.ambient_dim(), self.ctx.m());
        let p = self.ctx.p();
        let n = self.len();
        let k = x.dim();
        let mut live = vec![false; n];
        for i in 0..k {
            let w = x.basis().row(i);
            for j in 0..n {
                if live[j] {
                    continue;
                }
                let mut acc = 0u64;
                for (i2, &c) in w.iter().enumerate() {
                    acc = (acc + c * self.gen.get(i2, j)) % p;
                }
                if acc != 0 {
                    live[j] = true;
                }
            }
        }
        Ok(live.iter().filter(|&&b| b).count())
    }
}

/// Largest field for which full-codeword enumerations are attempted.
pub const MAX_ENUM_FIELD: u64 = 729;

#[cfg(test)]
mod tests {
    use super::*;
    use crate::formspec::FormExpr;
    use crate::subspaces::enumerate_subspaces;
    use alloc::vec;

    fn form(p: u64, m: usize, expr: &str) -> QuadraticForm {
        let ctx = FieldCtx::new(p, m, None).unwrap();
        let f = FormExpr::parse(expr).unwrap();
        let eval = f.evaluator(&ctx).unwrap();
        QuadraticForm::from_fn(&ctx, eval).unwrap()
    }

    #[test]
    fn rank_two_code_shape() {
        let code = TraceCode::build(&form(3, 4, "tr: x^12"), 1).unwrap();
        assert_eq!(code.len(), 36);
        assert_eq!(code.dim(), 4);
    }

    #[test]
    fn rank_three_code_shapes() {
        let code = TraceCode::build(&form(3, 4, "tr: x^2 + x^4"), 1).unwrap();
        assert_eq!(code.len(), 36);
        assert_eq!(code.dim(), 4);
        let code = TraceCode::build(&form(3, 4, "tr: x^2 - x^4"), 1).unwrap();
        assert_eq!(code.len(), 18);
        assert_eq!(code.dim(), 4);
    }

    #[test]
    fn defining_set_is_sorted_level_set() {
        let q = form(3, 4, "tr: x^2 + x^4");
        let d = DefiningSet::compute(&q, 1);
        let ctx = q.ctx();
        let codes: Vec<u64> = d.elements().iter().map(|x| ctx.encode(x)).collect();
        assert!(codes.windows(2).all(|w| w[0] < w[1]));
        for x in d.elements() {
            assert!(!x.is_zero());
            assert_eq!(q.eval(x), 1);
            assert!(d.contains_encoded(ctx.encode(x)));
        }
        let full: usize = ctx.elements().filter(|x| !x.is_zero() && q.eval(x) == 1).count();
        assert_eq!(d.len(), full);
    }

    #[test]
    fn zero_target_drops_the_zero_vector() {
        let q = form(3, 4, "tr: x^2 + x^4");
        let code = TraceCode::build(&q, 0).unwrap();
        assert_eq!(code.len(), 26);
        assert_eq!(code.dim(), 4);
        assert!(!code.defining_set().contains_encoded(0));
    }

    #[test]
    fn radical_level_set_gives_degenerate_code() {
        // The zero level set of the rank-2 form spans only the radical.
        let code = TraceCode::build(&form(3, 4, "tr: x^12"), 0).unwrap();
        assert_eq!(code.len(), 8);
        assert_eq!(code.dim(), 2);
        let full = Subspace::full(3, 4);
        assert_eq!(
            code.subcode_support(&full).unwrap_err(),
            CodeError::DegenerateCode { dim: 2, m: 4 }
        );
    }

    #[test]
    fn zero_form_has_empty_level_set_at_one() {
        let ctx = FieldCtx::new(3, 3, None).unwrap();
        let q = QuadraticForm::from_fn(&ctx, |_| 0).unwrap();
        assert_eq!(
            TraceCode::build(&q, 1).unwrap_err(),
            CodeError::EmptyDefiningSet { a: 1 }
        );
    }

    #[test]
    fn codewords_are_linear_in_the_message() {
        let code = TraceCode::build(&form(3, 4, "tr: x^12"), 1).unwrap();
        let ctx = code.ctx().clone();
        assert!(code.codeword(&ctx.zero()).iter().all(|&c| c == 0));
        for xa in 0..81 {
            let x = ctx.decode(xa);
            // Direct evaluation agrees with the generator-row combination.
            for (j, d) in code.defining_set().elements().iter().enumerate() {
                assert_eq!(code.codeword(&x)[j], ctx.trace(&ctx.mul(&x, d)));
            }
            for ya in xa..81 {
                let y = ctx.decode(ya);
                let lhs = code.codeword(&ctx.add(&x, &y));
                let rhs: Vec<u64> = code
                    .codeword(&x)
                    .iter()
                    .zip(code.codeword(&y))
                    .map(|(&a, b)| (a + b) % 3)
                    .collect();
                assert_eq!(lhs, rhs);
            }
        }
    }

    #[test]
    fn weight_distribution_totals_and_minimums() {
        let code = TraceCode::build(&form(3, 4, "tr: x^12"), 1).unwrap();
        let dist = code.weight_distribution().unwrap();
        assert_eq!(dist.iter().map(|&(_, c)| c).sum::<u64>(), 81);
        assert_eq!(dist[0], (0, 1));
        assert_eq!(dist[1].0, 18);

        let code = TraceCode::build(&form(3, 4, "tr: x^2 - x^4"), 1).unwrap();
        let dist = code.weight_distribution().unwrap();
        assert_eq!(dist[1].0, 6);
    }

    #[test]
    fn weight_distribution_refuses_large_fields() {
        let code = TraceCode::build(&form(3, 7, "tr: x^2"), 1).unwrap();
        assert_eq!(
            code.weight_distribution().unwrap_err(),
            CodeError::TooLarge { size: 2187, max: 729 }
        );
    }

    #[test]
    fn subcode_support_extremes_and_monotonicity() {
        let code = TraceCode::build(&form(3, 4, "tr: x^12"), 1).unwrap();
        let ctx = code.ctx().clone();
        assert_eq!(code.subcode_support(&Subspace::zero(3, 4)).unwrap(), 0);
        assert_eq!(code.subcode_support(&Subspace::full(3, 4)).unwrap(), 36);
        for x in ctx.elements() {
            let line = Subspace::from_span(3, 4, &[x.coords().to_vec()]);
            assert_eq!(code.subcode_support(&line).unwrap(), code.codeword_weight(&x));
        }
        for h in enumerate_subspaces(3, 4, 2).unwrap() {
            let inner = code.subcode_support(&h).unwrap();
            let outer = code.subcode_support(&h.sum(&Subspace::from_span(3, 4, &[vec![1, 1, 1, 1]]))).unwrap();
            assert!(inner <= outer);
        }
    }
}
