//! Linear codes defined by the level sets of a quadratic form over
//! `F_{p^m}` (odd `p`), and their generalized Hamming weight hierarchies.
//!
//! The crate builds trace codes whose coordinates are indexed by the nonzero
//! solutions of `f(x) = a`, computes the quadratic-form invariants (rank,
//! radical, discriminant class, sign) that determine the weight hierarchy in
//! closed form, and cross-checks every closed-form value against two
//! independent exhaustive searches at desk scale.
//!
//! The crate is `no_std` (with `alloc`); IO, CLI, and output formats live in
//! the companion `ghw-cli` crate.

#![no_std]

extern crate alloc;

#[cfg(test)]
extern crate std;

pub mod catalog;
pub mod code;
pub mod formspec;
pub mod gf;
pub mod hierarchy;
pub mod qform;
pub mod subspaces;

pub use code::{CodeError, DefiningSet, TraceCode};
pub use formspec::{FormExpr, FormSpecError};
pub use gf::{FFElem, FieldCtx, GfError, PrimeElem};
pub use hierarchy::{
    FormProfile, HierarchyError, HierarchyReport, HierarchyRow, OracleBudget, ReportStatus,
    VerifyOptions,
};
pub use qform::{GramForm, PivotOrder, QformError, QuadraticForm, RestrictedForm, SquareClass};
pub use subspaces::{MatrixFp, Subspace, SubspaceError};
