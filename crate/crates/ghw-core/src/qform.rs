//! Quadratic forms on `F_p^m` with values in `F_p`, in Gram-matrix form.
//!
//! A form is captured by its symmetric Gram matrix `A` with `f(x) = x A x^T`
//! (row vectors, odd characteristic). The module computes the standard
//! invariants: rank, radical, discriminant square class and its character
//! sign, plus restriction to a subspace, the orthogonal complement, and the
//! nondegenerate quotient by the radical. [`point_count`] turns the
//! invariants of a form on a `d`-dimensional space into the number of
//! solutions of `f(x) = a`.

use crate::gf::{inv_mod, quad_char, v_func, FFElem, FieldCtx};
use crate::subspaces::{MatrixFp, Subspace};
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum QformError {
    /// The supplied function disagrees with its own polarization; the field
    /// element where the mismatch was seen is given in encoded form.
    NotQuadratic { encoded: u64 },
    NotSymmetric,
    DimMismatch { expected: usize, got: usize },
}

impl fmt::Display for QformError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            QformError::NotQuadratic { encoded } => {
                write!(f, "function is not a quadratic form (mismatch at element #{encoded})")
            }
            QformError::NotSymmetric => write!(f, "Gram matrix must be symmetric"),
            QformError::DimMismatch { expected, got } => {
                write!(f, "dimension mismatch: expected {expected}, got {got}")
            }
        }
    }
}

/// Square class of a nonzero residue mod p, with rank-0 forms assigned the
/// empty product 1 (hence `Square`).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SquareClass {
    Square,
    NonSquare,
}

impl SquareClass {
    pub fn of(p: u64, value: u64) -> SquareClass {
        debug_assert!(value % p != 0);
        if quad_char(p, value) == 1 {
            SquareClass::Square
        } else {
            SquareClass::NonSquare
        }
    }

    /// Character value: +1 for squares, -1 for non-squares.
    pub fn sign(self) -> i64 {
        match self {
            SquareClass::Square => 1,
            SquareClass::NonSquare => -1,
        }
    }
}

impl fmt::Display for SquareClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SquareClass::Square => write!(f, "square"),
            SquareClass::NonSquare => write!(f, "non-square"),
        }
    }
}

/// Which diagonal pivot the congruence reduction prefers. Different orders
/// produce different diagonalizations; rank and discriminant class must not
/// depend on the choice.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PivotOrder {
    First,
    Last,
}

/// Invariants of a form restricted to a subspace: enough for point counting.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RestrictedForm {
    pub dim: usize,
    pub rank: usize,
    pub disc: SquareClass,
}

impl RestrictedForm {
    pub fn radical_dim(&self) -> usize {
        self.dim - self.rank
    }
}

/// A quadratic form on `F_p^n` given by its symmetric Gram matrix.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GramForm {
    matrix: MatrixFp,
}

impl GramForm {
    pub fn new(matrix: MatrixFp) -> Result<GramForm, QformError> {
        if matrix.rows() != matrix.cols() {
            return Err(QformError::DimMismatch { expected: matrix.rows(), got: matrix.cols() });
        }
        if !matrix.is_symmetric() {
            return Err(QformError::NotSymmetric);
        }
        Ok(GramForm { matrix })
    }

    pub fn p(&self) -> u64 {
        self.matrix.p()
    }

    pub fn dim(&self) -> usize {
        self.matrix.rows()
    }

    pub fn matrix(&self) -> &MatrixFp {
        &self.matrix
    }

    /// `f(v) = v A v^T`.
    pub fn eval(&self, v: &[u64]) -> u64 {
        self.bilinear(v, v)
    }

    /// The symmetric bilinear form `F(u, v) = u A v^T`; `F(v, v) = f(v)`.
    pub fn bilinear(&self, u: &[u64], v: &[u64]) -> u64 {
        let p = self.p();
        let n = self.dim();
        assert_eq!(u.len(), n);
        assert_eq!(v.len(), n);
        let mut acc = 0u64;
        for i in 0..n {
            let ui = u[i] % p;
            if ui == 0 {
                continue;
            }
            let mut row = 0u64;
            for j in 0..n {
                row = (row + self.matrix.get(i, j) * (v[j] % p)) % p;
            }
            acc = (acc + ui * row) % p;
        }
        acc
    }

    pub fn rank(&self) -> usize {
        self.matrix.rank()
    }

    /// Null space of the bilinear form: `{v : F(v, .) = 0}`.
    pub fn radical(&self) -> Subspace {
        self.matrix.null_space()
    }

    /// Symmetric congruence reduction: returns `(diag, t)` with
    /// `t A t^T = diag(diag)` and `t` invertible.
    pub fn diagonalize(&self, order: PivotOrder) -> (Vec<u64>, MatrixFp) {
        let p = self.p();
        let n = self.dim();
        let mut w = self.matrix.clone();
        let mut t = MatrixFp::identity(p, n);
        for k in 0..n {
            if !Self::place_pivot(&mut w, &mut t, k, order) {
                break;
            }
            let inv = inv_mod(w.get(k, k), p);
            for r in k + 1..n {
                let factor = w.get(r, k) * inv % p;
                if factor == 0 {
                    continue;
                }
                for j in 0..n {
                    let sub = w.get(k, j) * factor % p;
                    w.set(r, j, (w.get(r, j) + p - sub) % p);
                    let sub = t.get(k, j) * factor % p;
                    t.set(r, j, (t.get(r, j) + p - sub) % p);
                }
                for i in 0..n {
                    let sub = w.get(i, k) * factor % p;
                    w.set(i, r, (w.get(i, r) + p - sub) % p);
                }
            }
        }
        let diag: Vec<u64> = (0..n).map(|i| w.get(i, i)).collect();
        debug_assert!({
            let d = t.mul(&self.matrix).mul(&t.transpose());
            (0..n).all(|i| (0..n).all(|j| d.get(i, j) == if i == j { diag[i] } else { 0 }))
        });
        (diag, t)
    }

    /// Brings a nonzero diagonal entry to position `k`, creating one first
    /// when the trailing block has zero diagonal but a nonzero off-diagonal
    /// entry. Returns false when the trailing block is entirely zero.
    fn place_pivot(w: &mut MatrixFp, t: &mut MatrixFp, k: usize, order: PivotOrder) -> bool {
        let p = w.p();
        let n = w.rows();
        let indices: Vec<usize> = match order {
            PivotOrder::First => (k..n).collect(),
            PivotOrder::Last => (k..n).rev().collect(),
        };
        let diag_pos = indices.iter().copied().find(|&i| w.get(i, i) != 0);
        let pos = match diag_pos {
            Some(i) => i,
            None => {
                let mut found = None;
                'scan: for &i in &indices {
                    for &j in &indices {
                        if j > i && w.get(i, j) != 0 {
                            found = Some((i, j));
                            break 'scan;
                        }
                    }
                }
                let Some((i, j)) = found else { return false };
                // row_i += row_j, col_i += col_j turns w[i][i] into
                // 2*w[i][j], nonzero in odd characteristic.
                for c in 0..n {
                    w.set(i, c, (w.get(i, c) + w.get(j, c)) % p);
                    t.set(i, c, (t.get(i, c) + t.get(j, c)) % p);
                }
                for r in 0..n {
                    w.set(r, i, (w.get(r, i) + w.get(r, j)) % p);
                }
                i
            }
        };
        if pos != k {
            for c in 0..n {
                let a = w.get(k, c);
                w.set(k, c, w.get(pos, c));
                w.set(pos, c, a);
                let a = t.get(k, c);
                t.set(k, c, t.get(pos, c));
                t.set(pos, c, a);
            }
            for r in 0..n {
                let a = w.get(r, k);
                w.set(r, k, w.get(r, pos));
                w.set(r, pos, a);
            }
        }
        true
    }

    /// Square class of the product of nonzero entries in a diagonalization.
    /// Independent of the diagonalization chosen; rank 0 gives `Square`.
    pub fn disc_class(&self) -> SquareClass {
        let (diag, _) = self.diagonalize(PivotOrder::First);
        let p = self.p();
        let mut prod = 1u64;
        for d in diag {
            if d != 0 {
                prod = prod * d % p;
            }
        }
        SquareClass::of(p, prod)
    }

    /// Character of the discriminant: `disc_class().sign()`.
    pub fn sign(&self) -> i64 {
        self.disc_class().sign()
    }

    /// The form pulled back to a subspace, on that subspace's basis
    /// coordinates: Gram matrix `B A B^T`.
    pub fn restrict(&self, h: &Subspace) -> GramForm {
        assert_eq!(h.ambient_dim(), self.dim());
        let b = h.basis();
        let matrix = b.mul(&self.matrix).mul(&b.transpose());
        debug_assert!(matrix.is_symmetric());
        GramForm { matrix }
    }

    /// Rank, radical dimension, and discriminant class of the restriction.
    pub fn restricted_profile(&self, h: &Subspace) -> RestrictedForm {
        let restricted = self.restrict(h);
        let rank = restricted.rank();
        // rad(f|_H) = H meet its orthogonal complement.
        debug_assert_eq!(rank, h.dim() - h.intersect(&self.orthogonal(h)).dim());
        RestrictedForm { dim: h.dim(), rank, disc: restricted.disc_class() }
    }

    /// Orthogonal complement `{y : F(h, y) = 0 for all h in H}` under the
    /// bilinear form, inside the full ambient space.
    pub fn orthogonal(&self, h: &Subspace) -> Subspace {
        assert_eq!(h.ambient_dim(), self.dim());
        h.basis().mul(&self.matrix).null_space()
    }

    /// Nondegenerate quotient by the radical. Returns `(qbar, phi)` where
    /// `phi` is the `rank x dim` projection with `qbar.eval(phi v) = eval(v)`
    /// for every `v`, and `qbar` has full rank, the same discriminant class,
    /// and the same sign as `self`.
    pub fn quotient(&self) -> (GramForm, MatrixFp) {
        let p = self.p();
        let n = self.dim();
        let rad = self.radical();
        let l = rad.dim();
        if l == 0 {
            return (self.clone(), MatrixFp::identity(p, n));
        }
        // Greedy lex-smallest set of standard basis vectors completing the
        // radical to a basis of the ambient space.
        let mut rows: Vec<Vec<u64>> = (0..l).map(|i| rad.basis().row(i).to_vec()).collect();
        let mut section: Vec<usize> = Vec::with_capacity(n - l);
        let mut rank = l;
        for j in 0..n {
            if rank == n {
                break;
            }
            let mut e = vec![0u64; n];
            e[j] = 1;
            rows.push(e);
            let r = MatrixFp::from_rows(p, &rows, n).rank();
            if r > rank {
                rank = r;
                section.push(j);
            } else {
                rows.pop();
            }
        }
        assert_eq!(rank, n);
        let t = MatrixFp::from_rows(p, &rows, n);
        let t_inv_tr = t.transpose().inverse().expect("change of basis is invertible");
        let mut phi = MatrixFp::zeros(p, n - l, n);
        for i in 0..n - l {
            for j in 0..n {
                phi.set(i, j, t_inv_tr.get(l + i, j));
            }
        }
        let qbar = GramForm { matrix: self.matrix.submatrix(&section, &section) };
        (qbar, phi)
    }
}

/// Number of solutions of `f(x) = a` on a `d`-dimensional space carrying a
/// form of the given rank and discriminant class (zero vector included).
pub fn point_count(p: u64, form: RestrictedForm, a: u64) -> u128 {
    let a = a % p;
    let d = form.dim;
    let r = form.rank;
    assert!(r <= d);
    if d == 0 {
        return (a == 0) as u128;
    }
    let eta_m1 = quad_char(p, p - 1);
    let base = p as i128;
    let lead = base.pow(d as u32 - 1);
    let n = if r % 2 == 0 {
        // eta((-1)^{r/2} disc) scaled by v(a).
        let eta = eta_m1.pow((r / 2) as u32) as i128 * form.disc.sign() as i128;
        lead + v_func(p, a) as i128 * eta * base.pow((d - r / 2 - 1) as u32)
    } else {
        // eta((-1)^{(r-1)/2} a disc); zero when a = 0.
        let eta =
            eta_m1.pow(((r - 1) / 2) as u32) as i128 * quad_char(p, a) as i128 * form.disc.sign() as i128;
        lead + eta * base.pow((d - (r + 1) / 2) as u32)
    };
    debug_assert!(n >= 0);
    n as u128
}

/// Checks the discriminant product identity relating a subspace and its
/// orthogonal complement under a nondegenerate form:
/// `eta(disc_H) * eta(disc_Hperp) = (eta(-1))^e * sign(f)` where
/// `e = dim(H meet Hperp)`.
pub fn disc_product_check(form: &GramForm, h: &Subspace) -> bool {
    assert_eq!(form.rank(), form.dim(), "identity requires a nondegenerate ambient form");
    let p = form.p();
    let perp = form.orthogonal(h);
    let e = h.intersect(&perp).dim();
    let lhs = form.restricted_profile(h).disc.sign() * form.restricted_profile(&perp).disc.sign();
    let rhs = quad_char(p, p - 1).pow(e as u32) * form.sign();
    lhs == rhs
}

/// A quadratic form on an extension field `F_{p^m}`, with values in `F_p`,
/// bound to the field's polynomial basis.
#[derive(Debug, Clone)]
pub struct QuadraticForm {
    ctx: FieldCtx,
    gram: GramForm,
}

impl QuadraticForm {
    /// Builds the Gram matrix of `f` on the polynomial basis by polarization
    /// and verifies that `f` really is quadratic: the function must agree
    /// with `x A x^T` on the whole field (fields up to 2^16 elements are
    /// swept exhaustively; larger ones are checked on all two-dimensional
    /// coordinate slices).
    pub fn from_fn<F>(ctx: &FieldCtx, f: F) -> Result<QuadraticForm, QformError>
    where
        F: Fn(&FFElem) -> u64,
    {
        let p = ctx.p();
        let m = ctx.m();
        let inv2 = (p + 1) / 2;
        let mut matrix = MatrixFp::zeros(p, m, m);
        let basis: Vec<FFElem> = (0..m).map(|i| ctx.basis_elem(i)).collect();
        let fv: Vec<u64> = basis.iter().map(|v| f(v) % p).collect();
        for i in 0..m {
            matrix.set(i, i, fv[i]);
            for j in i + 1..m {
                let sum = ctx.add(&basis[i], &basis[j]);
                let pol = (f(&sum) % p + 2 * p - fv[i] - fv[j]) % p * inv2 % p;
                matrix.set(i, j, pol);
                matrix.set(j, i, pol);
            }
        }
        let gram = GramForm { matrix };
        if ctx.size() <= 1 << 16 {
            for x in ctx.elements() {
                if f(&x) % p != gram.eval(x.coords()) {
                    return Err(QformError::NotQuadratic { encoded: ctx.encode(&x) });
                }
            }
        } else {
            for i in 0..m {
                for j in i..m {
                    for lam in 0..p {
                        for mu in 0..p {
                            let x = ctx.add(&ctx.scale(lam, &basis[i]), &ctx.scale(mu, &basis[j]));
                            if f(&x) % p != gram.eval(x.coords()) {
                                return Err(QformError::NotQuadratic { encoded: ctx.encode(&x) });
                            }
                        }
                    }
                }
            }
        }
        Ok(QuadraticForm { ctx: ctx.clone(), gram })
    }

    pub fn ctx(&self) -> &FieldCtx {
        &self.ctx
    }

    pub fn gram(&self) -> &GramForm {
        &self.gram
    }

    pub fn eval(&self, x: &FFElem) -> u64 {
        self.gram.eval(x.coords())
    }

    pub fn rank(&self) -> usize {
        self.gram.rank()
    }

    pub fn radical_dim(&self) -> usize {
        self.ctx.m() - self.gram.rank()
    }

    pub fn disc_class(&self) -> SquareClass {
        self.gram.disc_class()
    }

    pub fn sign(&self) -> i64 {
        self.gram.sign()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::subspaces::enumerate_subspaces;
    use alloc::vec;

    fn f34() -> FieldCtx {
        FieldCtx::new(3, 4, None).unwrap()
    }

    fn trace_poly<'a>(ctx: &'a FieldCtx, terms: &[(u64, u128)]) -> impl Fn(&FFElem) -> u64 + 'a {
        let terms = terms.to_vec();
        move |x: &FFElem| {
            let mut acc = ctx.zero();
            for &(c, e) in &terms {
                acc = ctx.add(&acc, &ctx.scale(c, &ctx.pow(x, e)));
            }
            ctx.trace(&acc)
        }
    }

    #[test]
    fn rank_two_form_invariants() {
        let ctx = f34();
        let q = QuadraticForm::from_fn(&ctx, trace_poly(&ctx, &[(1, 12)])).unwrap();
        assert_eq!(q.rank(), 2);
        assert_eq!(q.radical_dim(), 2);
        assert_eq!(q.sign(), 1);
    }

    #[test]
    fn rank_three_form_invariants() {
        let ctx = f34();
        let plus = QuadraticForm::from_fn(&ctx, trace_poly(&ctx, &[(1, 2), (1, 4)])).unwrap();
        assert_eq!(plus.rank(), 3);
        assert_eq!(plus.radical_dim(), 1);
        assert_eq!(plus.sign(), -1);

        let minus = QuadraticForm::from_fn(&ctx, trace_poly(&ctx, &[(1, 2), (2, 4)])).unwrap();
        assert_eq!(minus.rank(), 3);
        assert_eq!(minus.radical_dim(), 1);
        assert_eq!(minus.sign(), 1);
    }

    #[test]
    fn additive_function_rejected() {
        let ctx = f34();
        let err = QuadraticForm::from_fn(&ctx, trace_poly(&ctx, &[(1, 3)])).unwrap_err();
        assert!(matches!(err, QformError::NotQuadratic { .. }));
    }

    #[test]
    fn cubic_scalar_function_rejected() {
        let ctx = FieldCtx::new(5, 2, None).unwrap();
        let err = QuadraticForm::from_fn(&ctx, trace_poly(&ctx, &[(1, 3)])).unwrap_err();
        assert!(matches!(err, QformError::NotQuadratic { .. }));
    }

    #[test]
    fn gram_constructor_rejects_asymmetry() {
        let m = MatrixFp::from_rows(3, &[vec![0, 1], vec![2, 0]], 2);
        assert_eq!(GramForm::new(m).unwrap_err(), QformError::NotSymmetric);
    }

    #[test]
    fn diagonalization_orders_agree_on_invariants() {
        let ctx = f34();
        for terms in [
            vec![(1u64, 12u128)],
            vec![(1, 2), (1, 4)],
            vec![(1, 2), (2, 4)],
            vec![(1, 2)],
            vec![(2, 10), (1, 4)],
        ] {
            let q = QuadraticForm::from_fn(&ctx, trace_poly(&ctx, &terms)).unwrap();
            let (da, _) = q.gram().diagonalize(PivotOrder::First);
            let (db, _) = q.gram().diagonalize(PivotOrder::Last);
            let ra = da.iter().filter(|&&x| x != 0).count();
            let rb = db.iter().filter(|&&x| x != 0).count();
            assert_eq!(ra, q.rank());
            assert_eq!(rb, q.rank());
            let prod = |d: &[u64]| d.iter().filter(|&&x| x != 0).fold(1, |acc, &x| acc * x % 3);
            if ra > 0 {
                assert_eq!(SquareClass::of(3, prod(&da)), SquareClass::of(3, prod(&db)));
            }
        }
    }

    #[test]
    fn diagonalization_handles_zero_diagonal_block() {
        // Hyperbolic plane: zero diagonal, forced off-diagonal repair.
        let m = MatrixFp::from_rows(3, &[vec![0, 1], vec![1, 0]], 2);
        let g = GramForm::new(m).unwrap();
        let (diag, t) = g.diagonalize(PivotOrder::First);
        assert_eq!(diag.iter().filter(|&&x| x != 0).count(), 2);
        assert!(t.inverse().is_some());
        // disc = -1, a non-square mod 3.
        assert_eq!(g.disc_class(), SquareClass::NonSquare);
    }

    #[test]
    fn radical_annihilates_bilinear_form() {
        let ctx = f34();
        let q = QuadraticForm::from_fn(&ctx, trace_poly(&ctx, &[(1, 12)])).unwrap();
        let rad = q.gram().radical();
        assert_eq!(rad.dim(), 2);
        for v in rad.members() {
            assert_eq!(q.gram().eval(&v), 0);
            for w in Subspace::full(3, 4).members() {
                assert_eq!(q.gram().bilinear(&v, &w), 0);
            }
        }
    }

    #[test]
    fn point_count_matches_brute_force_on_subspaces() {
        let ctx = f34();
        for terms in [vec![(1u64, 12u128)], vec![(1, 2), (1, 4)], vec![(1, 2), (2, 4)]] {
            let q = QuadraticForm::from_fn(&ctx, trace_poly(&ctx, &terms)).unwrap();
            for k in 0..=4usize {
                for h in enumerate_subspaces(3, 4, k).unwrap() {
                    let profile = q.gram().restricted_profile(&h);
                    for a in 0..3u64 {
                        let brute =
                            h.members().filter(|v| q.gram().eval(v) == a).count() as u128;
                        assert_eq!(point_count(3, profile, a), brute);
                    }
                }
            }
        }
    }

    #[test]
    fn point_count_degenerate_edge_cases() {
        // Zero form on a 2-dim space.
        let z = RestrictedForm { dim: 2, rank: 0, disc: SquareClass::Square };
        assert_eq!(point_count(3, z, 0), 9);
        assert_eq!(point_count(3, z, 1), 0);
        // Zero-dimensional space.
        let o = RestrictedForm { dim: 0, rank: 0, disc: SquareClass::Square };
        assert_eq!(point_count(3, o, 0), 1);
        assert_eq!(point_count(3, o, 2), 0);
    }

    #[test]
    fn quotient_preserves_values_and_invariants() {
        let ctx = f34();
        for terms in [vec![(1u64, 12u128)], vec![(1, 2), (1, 4)], vec![(1, 2), (2, 4)]] {
            let q = QuadraticForm::from_fn(&ctx, trace_poly(&ctx, &terms)).unwrap();
            let (qbar, phi) = q.gram().quotient();
            assert_eq!(qbar.dim(), q.rank());
            assert_eq!(qbar.rank(), q.rank());
            assert_eq!(qbar.disc_class(), q.disc_class());
            for x in ctx.elements() {
                let mut img = vec![0u64; qbar.dim()];
                for i in 0..qbar.dim() {
                    let mut acc = 0;
                    for j in 0..4 {
                        acc = (acc + phi.get(i, j) * x.coords()[j]) % 3;
                    }
                    img[i] = acc;
                }
                assert_eq!(qbar.eval(&img), q.eval(&x));
            }
        }
    }

    #[test]
    fn quotient_of_nondegenerate_form_is_identity_map() {
        let ctx = f34();
        let q = QuadraticForm::from_fn(&ctx, trace_poly(&ctx, &[(1, 2)])).unwrap();
        assert_eq!(q.rank(), 4);
        let (qbar, phi) = q.gram().quotient();
        assert_eq!(&qbar, q.gram());
        assert_eq!(phi, MatrixFp::identity(3, 4));
    }

    #[test]
    fn orthogonal_complement_dimensions() {
        let ctx = f34();
        let q = QuadraticForm::from_fn(&ctx, trace_poly(&ctx, &[(1, 2)])).unwrap();
        // Nondegenerate: dim H + dim Hperp = m and the double complement
        // returns H.
        for k in 0..=4usize {
            for h in enumerate_subspaces(3, 4, k).unwrap() {
                let perp = q.gram().orthogonal(&h);
                assert_eq!(perp.dim(), 4 - k);
                assert_eq!(q.gram().orthogonal(&perp), h);
            }
        }
    }

    #[test]
    fn disc_product_identity_on_nondegenerate_form() {
        let ctx = f34();
        let q = QuadraticForm::from_fn(&ctx, trace_poly(&ctx, &[(1, 2)])).unwrap();
        assert_eq!(q.rank(), 4);
        for k in 0..=4usize {
            for h in enumerate_subspaces(3, 4, k).unwrap() {
                assert!(disc_product_check(q.gram(), &h));
            }
        }
    }
}
