//! The full generalized-Hamming-weight hierarchy of a trace code, computed
//! three independent ways and cross-checked.
//!
//! * closed form: exact formulas driven by the quadratic form's invariants
//!   (rank parity, sign, and the quadratic character of the target value);
//! * intersection search: `d_r = n - max |D meet H|` over all
//!   `(m-r)`-dimensional subspaces `H` of the ambient space;
//! * support search: `d_r = min |Supp(V)|` over all `r`-dimensional
//!   subcodes, walked through message-space subspaces.
//!
//! The searches are exhaustive and therefore refuse to run past an explicit
//! budget; both are partitionable by pivot pattern for parallel drivers.

use crate::code::{CodeError, TraceCode};
use crate::gf::quad_char;
use crate::qform::{point_count, QuadraticForm, RestrictedForm, SquareClass};
use crate::subspaces::{gaussian_binomial, pivot_patterns, PatternEnum};
use alloc::vec::Vec;
use core::fmt;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum HierarchyError {
    /// Closed-form hierarchies are defined only for nonzero target values.
    AZeroOutOfScope,
    /// The zero form has no closed-form hierarchy.
    RankZero,
    BadR { r: usize, m: usize },
    /// The code dimension is below `m`; subspace searches would not range
    /// over the actual subcodes.
    DimensionDeficit { dim: usize, m: usize },
    BudgetExceeded { what: &'static str, needed: u128, allowed: u128 },
    Code(CodeError),
}

impl fmt::Display for HierarchyError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            HierarchyError::AZeroOutOfScope => {
                write!(f, "closed-form hierarchy is out of scope for target value 0")
            }
            HierarchyError::RankZero => write!(f, "form has rank 0"),
            HierarchyError::BadR { r, m } => write!(f, "r = {r} outside 1..={m}"),
            HierarchyError::DimensionDeficit { dim, m } => {
                write!(f, "code dimension {dim} below field degree {m}")
            }
            HierarchyError::BudgetExceeded { what, needed, allowed } => {
                write!(f, "budget exceeded: {what} needs {needed}, allowed {allowed}")
            }
            HierarchyError::Code(e) => write!(f, "{e}"),
        }
    }
}

impl From<CodeError> for HierarchyError {
    fn from(e: CodeError) -> HierarchyError {
        HierarchyError::Code(e)
    }
}

/// The invariants of a form/target pair that drive the closed formulas.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct FormProfile {
    pub p: u64,
    pub m: usize,
    pub rank: usize,
    /// Radical dimension `m - rank`.
    pub l: usize,
    /// `rank = 2s` or `rank = 2s + 1`.
    pub s: usize,
    pub disc: SquareClass,
    /// Character of the discriminant, +1 or -1.
    pub sign: i64,
    pub a: u64,
    /// Character of the target value; 0 when `a = 0`.
    pub eta_a: i64,
    /// Dispatch sign `(-1)^{s(p-1)/2} * sign`.
    pub eps_prime: i64,
}

impl FormProfile {
    pub fn new(form: &QuadraticForm, a: u64) -> FormProfile {
        let p = form.ctx().p();
        let m = form.ctx().m();
        let a = a % p;
        let rank = form.rank();
        let s = rank / 2;
        let disc = form.disc_class();
        let sign = disc.sign();
        FormProfile {
            p,
            m,
            rank,
            l: m - rank,
            s,
            disc,
            sign,
            a,
            eta_a: quad_char(p, a),
            eps_prime: quad_char(p, p - 1).pow(s as u32) * sign,
        }
    }

    pub fn is_even_rank(&self) -> bool {
        self.rank % 2 == 0
    }

    /// The same profile with the discriminant class deliberately corrupted.
    /// Only useful for demonstrating that verification catches a wrong sign.
    pub fn with_flipped_sign(mut self) -> FormProfile {
        self.disc = match self.disc {
            SquareClass::Square => SquareClass::NonSquare,
            SquareClass::NonSquare => SquareClass::Square,
        };
        self.sign = -self.sign;
        self.eps_prime = -self.eps_prime;
        self
    }

    /// Code length predicted from the invariants alone:
    /// `|{x != 0 : f(x) = a}|`.
    pub fn expected_length(&self) -> u64 {
        let full = RestrictedForm { dim: self.m, rank: self.rank, disc: self.disc };
        let count = point_count(self.p, full, self.a);
        (count - (self.a == 0) as u128) as u64
    }

    /// Generator rank predicted from the invariants alone. The defining set
    /// spans the whole field except for rank-2 forms with non-square
    /// discriminant over p = 3 at nonzero targets, where each level set is
    /// two proportional points per radical coset and the span misses one
    /// dimension. Zero targets always span when the set is nonempty.
    pub fn expected_dim(&self) -> usize {
        if self.a != 0 && self.expected_length() == 0 {
            return 0;
        }
        if self.a != 0 && self.p == 3 && self.rank == 2 && self.disc == SquareClass::NonSquare {
            return self.m - 1;
        }
        self.m
    }
}

fn pw(p: u64, e: usize) -> i128 {
    (p as i128).pow(e as u32)
}

/// Even-rank closed form on `1 <= r <= s`.
pub fn even_branch_low(pr: &FormProfile, r: usize) -> u64 {
    debug_assert!(pr.is_even_rank() && r >= 1 && r <= pr.s);
    let v = pw(pr.p, pr.m - 1)
        - pw(pr.p, pr.m - r - 1)
        - (pr.eps_prime + 1) as i128 * pw(pr.p, pr.s + pr.l - 1);
    v as u64
}

/// Even-rank closed form on `s <= r < m`; agrees with [`even_branch_low`]
/// where the ranges overlap.
pub fn even_branch_mid(pr: &FormProfile, r: usize) -> u64 {
    debug_assert!(pr.is_even_rank() && r >= pr.s && r < pr.m);
    let v = pw(pr.p, pr.m - 1)
        - 2 * pw(pr.p, pr.m - r - 1)
        - pr.eps_prime as i128 * pw(pr.p, pr.s + pr.l - 1);
    v as u64
}

/// Closed-form weights `d_1, ..., d_m` from the invariants alone.
pub fn closed_form(pr: &FormProfile) -> Result<Vec<u64>, HierarchyError> {
    if pr.a == 0 {
        return Err(HierarchyError::AZeroOutOfScope);
    }
    if pr.rank == 0 {
        return Err(HierarchyError::RankZero);
    }
    // Rank 1 with the target on the non-represented side: the level set is
    // empty and no hierarchy exists.
    if pr.expected_length() == 0 {
        return Err(HierarchyError::Code(CodeError::EmptyDefiningSet { a: pr.a }));
    }
    let (p, m, s, l) = (pr.p, pr.m, pr.s, pr.l);
    let mut out = Vec::with_capacity(m);
    for r in 1..=m {
        let v: i128 = if pr.is_even_rank() {
            if r == m {
                pw(p, m - 1) - pr.eps_prime as i128 * pw(p, s + l - 1)
            } else if r <= s {
                even_branch_low(pr, r) as i128
            } else {
                even_branch_mid(pr, r) as i128
            }
        } else if pr.eta_a == pr.eps_prime {
            if r == m {
                pw(p, m - 1) + pw(p, s + l)
            } else if r <= s {
                pw(p, m - 1) - pw(p, m - r - 1)
            } else {
                pw(p, m - 1) + pw(p, s + l) - 2 * pw(p, m - r - 1)
            }
        } else {
            if r == m {
                pw(p, m - 1) - pw(p, s + l)
            } else if r <= s {
                pw(p, m - 1) - pw(p, m - r - 1) - pw(p, s + l) - pw(p, s + l - 1)
            } else {
                pw(p, m - 1) - pw(p, s + l) - 2 * pw(p, m - r - 1)
            }
        };
        debug_assert!(v >= 0);
        out.push(v as u64);
    }
    Ok(out)
}

/// Resource caps for the exhaustive searches.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct OracleBudget {
    /// Largest ambient field the searches will walk.
    pub max_field: u64,
    /// Largest subspace enumeration per value of `r`.
    pub max_subspaces: u128,
}

impl Default for OracleBudget {
    fn default() -> OracleBudget {
        OracleBudget { max_field: crate::code::MAX_ENUM_FIELD, max_subspaces: 2_000_000 }
    }
}

/// Validates a search request: `r` in range, full code dimension, and the
/// enumeration of `k`-dimensional subspaces within budget. Both oracles and
/// any external parallel driver must pass this gate first.
pub fn search_guards(
    code: &TraceCode,
    r: usize,
    k: usize,
    budget: &OracleBudget,
) -> Result<(), HierarchyError> {
    let ctx = code.ctx();
    check_r(r, ctx.m())?;
    if code.dim() < ctx.m() {
        return Err(HierarchyError::DimensionDeficit { dim: code.dim(), m: ctx.m() });
    }
    if ctx.size() > budget.max_field {
        return Err(HierarchyError::BudgetExceeded {
            what: "ambient field size",
            needed: ctx.size() as u128,
            allowed: budget.max_field as u128,
        });
    }
    let count = gaussian_binomial(ctx.p(), ctx.m(), k);
    if count > budget.max_subspaces {
        return Err(HierarchyError::BudgetExceeded {
            what: "subspace enumeration",
            needed: count,
            allowed: budget.max_subspaces,
        });
    }
    Ok(())
}

fn check_r(r: usize, m: usize) -> Result<(), HierarchyError> {
    if r < 1 || r > m {
        return Err(HierarchyError::BadR { r, m });
    }
    Ok(())
}

/// Largest `|D meet H|` over the `k`-dimensional subspaces `H` whose RREF
/// pivot columns lie in the given pattern cells. `None` when the cells are
/// empty. One work unit of [`oracle_intersection`].
pub fn intersection_max_over(code: &TraceCode, patterns: &[Vec<usize>]) -> Option<u64> {
    let ctx = code.ctx();
    let dset = code.defining_set();
    let mut best: Option<u64> = None;
    for pattern in patterns {
        for h in PatternEnum::new(ctx.p(), ctx.m(), pattern.clone()) {
            let mut hits = 0u64;
            for v in h.members() {
                // Coordinate 0 is the least significant base-p digit.
                let encoded = v.iter().rev().fold(0u64, |acc, &c| acc * ctx.p() + c);
                if dset.contains_encoded(encoded) {
                    hits += 1;
                }
            }
            best = Some(best.map_or(hits, |b| b.max(hits)));
        }
    }
    best
}

/// Smallest subcode support over message subspaces with pivot columns in the
/// given pattern cells. One work unit of [`oracle_support`].
pub fn support_min_over(
    code: &TraceCode,
    patterns: &[Vec<usize>],
) -> Result<Option<u64>, HierarchyError> {
    let ctx = code.ctx();
    let mut best: Option<u64> = None;
    for pattern in patterns {
        for x in PatternEnum::new(ctx.p(), ctx.m(), pattern.clone()) {
            let sup = code.subcode_support(&x)? as u64;
            best = Some(best.map_or(sup, |b| b.min(sup)));
        }
    }
    Ok(best)
}

/// `d_r` by exhaustive intersection search: `n - max |D meet H|` over all
/// `(m-r)`-dimensional subspaces `H` of the ambient space.
pub fn oracle_intersection(
    code: &TraceCode,
    r: usize,
    budget: &OracleBudget,
) -> Result<u64, HierarchyError> {
    let m = code.ctx().m();
    search_guards(code, r, m - r, budget)?;
    let patterns = pivot_patterns(m, m - r);
    let max = intersection_max_over(code, &patterns).expect("pattern list is never empty");
    Ok(code.len() as u64 - max)
}

/// `d_r` by exhaustive support search: `min |Supp(V)|` over all
/// `r`-dimensional subcodes.
pub fn oracle_support(
    code: &TraceCode,
    r: usize,
    budget: &OracleBudget,
) -> Result<u64, HierarchyError> {
    let m = code.ctx().m();
    search_guards(code, r, r, budget)?;
    let patterns = pivot_patterns(m, r);
    Ok(support_min_over(code, &patterns)?.expect("pattern list is never empty"))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ReportStatus {
    Verified,
    Failed,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HierarchyRow {
    pub r: usize,
    pub closed: Option<u64>,
    pub oracle_intersection: Option<u64>,
    pub oracle_support: Option<u64>,
    /// All sources present in this row returned the same value.
    pub agree: bool,
}

impl HierarchyRow {
    /// The row's value when at least one source produced one.
    pub fn consensus(&self) -> Option<u64> {
        self.closed.or(self.oracle_intersection).or(self.oracle_support)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HierarchyReport {
    pub profile: FormProfile,
    pub n: u64,
    pub dim: usize,
    pub rows: Vec<HierarchyRow>,
    /// Closed-form values were requested but are undefined for this target.
    pub closed_out_of_scope: bool,
    pub status: ReportStatus,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VerifyOptions {
    /// Values of `r` to report; `None` means `1..=m`.
    pub r_values: Option<Vec<usize>>,
    pub budget: OracleBudget,
    pub with_closed: bool,
    pub with_oracles: bool,
    /// Corrupts the sign fed to the closed forms; the report must then fail.
    pub flip_sign: bool,
}

impl Default for VerifyOptions {
    fn default() -> VerifyOptions {
        VerifyOptions {
            r_values: None,
            budget: OracleBudget::default(),
            with_closed: true,
            with_oracles: true,
            flip_sign: false,
        }
    }
}

/// Computes the hierarchy from every requested source and cross-checks:
/// per-row agreement, strict monotonicity in `r`, and `d_m = n`.
pub fn verify(
    form: &QuadraticForm,
    a: u64,
    opts: &VerifyOptions,
) -> Result<HierarchyReport, HierarchyError> {
    verify_with(form, a, opts, oracle_intersection, oracle_support)
}

/// [`verify`] with caller-supplied search implementations; a parallel driver
/// substitutes its own partitioned versions of the two oracles here. The
/// substitutes must return the same values as the serial searches.
pub fn verify_with<FA, FB>(
    form: &QuadraticForm,
    a: u64,
    opts: &VerifyOptions,
    mut oracle_a: FA,
    mut oracle_b: FB,
) -> Result<HierarchyReport, HierarchyError>
where
    FA: FnMut(&TraceCode, usize, &OracleBudget) -> Result<u64, HierarchyError>,
    FB: FnMut(&TraceCode, usize, &OracleBudget) -> Result<u64, HierarchyError>,
{
    let m = form.ctx().m();
    let true_profile = FormProfile::new(form, a);
    let profile =
        if opts.flip_sign { true_profile.with_flipped_sign() } else { true_profile };

    let mut r_values = opts.r_values.clone().unwrap_or_else(|| (1..=m).collect());
    for &r in &r_values {
        check_r(r, m)?;
    }
    r_values.sort_unstable();
    r_values.dedup();

    let closed = if opts.with_closed {
        match closed_form(&profile) {
            Ok(values) => Some(values),
            Err(e @ (HierarchyError::AZeroOutOfScope | HierarchyError::RankZero)) => {
                if opts.with_oracles {
                    None
                } else {
                    return Err(e);
                }
            }
            Err(e) => return Err(e),
        }
    } else {
        None
    };
    let closed_out_of_scope = opts.with_closed && closed.is_none();

    let code = if opts.with_oracles { Some(TraceCode::build(form, a)?) } else { None };
    let (n, dim) = match &code {
        Some(c) => (c.len() as u64, c.dim()),
        None => (true_profile.expected_length(), true_profile.expected_dim()),
    };

    let mut rows = Vec::with_capacity(r_values.len());
    for &r in &r_values {
        let c = closed.as_ref().map(|v| v[r - 1]);
        let (oa, ob) = match &code {
            Some(code) => (
                Some(oracle_a(code, r, &opts.budget)?),
                Some(oracle_b(code, r, &opts.budget)?),
            ),
            None => (None, None),
        };
        let present: Vec<u64> = [c, oa, ob].into_iter().flatten().collect();
        let agree = present.windows(2).all(|w| w[0] == w[1]);
        rows.push(HierarchyRow {
            r,
            closed: c,
            oracle_intersection: oa,
            oracle_support: ob,
            agree,
        });
    }

    let mut ok = rows.iter().all(|row| row.agree);
    let consensus: Vec<(usize, u64)> =
        rows.iter().filter_map(|row| row.consensus().map(|v| (row.r, v))).collect();
    ok &= consensus.windows(2).all(|w| w[0].1 < w[1].1);
    ok &= consensus.iter().all(|&(r, v)| r != m || v == n);

    Ok(HierarchyReport {
        profile,
        n,
        dim,
        rows,
        closed_out_of_scope,
        status: if ok { ReportStatus::Verified } else { ReportStatus::Failed },
    })
}
