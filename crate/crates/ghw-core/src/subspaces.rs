//! Dense matrices over `F_p`, reduced row-echelon kernels, and canonical
//! enumeration of the `F_p`-subspaces of `F_p^m`.
//!
//! A subspace is stored as its RREF basis matrix, which makes equality a
//! plain data comparison. Enumeration walks pivot-column patterns in
//! lexicographic order and fills free entries with a base-`p` odometer; each
//! pivot pattern is an independent cell, so searches can be partitioned.

use crate::gf::inv_mod;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SubspaceError {
    DimOutOfRange { dim: usize, ambient: usize },
}

impl fmt::Display for SubspaceError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SubspaceError::DimOutOfRange { dim, ambient } => {
                write!(f, "subspace dimension {dim} out of range for ambient {ambient}")
            }
        }
    }
}

/// A rows x cols matrix over `F_p`, entries reduced mod `p`, row-major.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct MatrixFp {
    p: u64,
    rows: usize,
    cols: usize,
    data: Vec<u64>,
}

impl MatrixFp {
    pub fn zeros(p: u64, rows: usize, cols: usize) -> MatrixFp {
        MatrixFp { p, rows, cols, data: vec![0; rows * cols] }
    }

    pub fn identity(p: u64, n: usize) -> MatrixFp {
        let mut m = MatrixFp::zeros(p, n, n);
        for i in 0..n {
            m.set(i, i, 1);
        }
        m
    }

    pub fn from_rows(p: u64, rows: &[Vec<u64>], cols: usize) -> MatrixFp {
        let mut m = MatrixFp::zeros(p, rows.len(), cols);
        for (i, row) in rows.iter().enumerate() {
            assert_eq!(row.len(), cols, "row length mismatch");
            for (j, &v) in row.iter().enumerate() {
                m.set(i, j, v);
            }
        }
        m
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> u64 {
        self.data[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: u64) {
        self.data[i * self.cols + j] = v % self.p;
    }

    pub fn row(&self, i: usize) -> &[u64] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn is_symmetric(&self) -> bool {
        if self.rows != self.cols {
            return false;
        }
        for i in 0..self.rows {
            for j in i + 1..self.cols {
                if self.get(i, j) != self.get(j, i) {
                    return false;
                }
            }
        }
        true
    }

    pub fn transpose(&self) -> MatrixFp {
        let mut out = MatrixFp::zeros(self.p, self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.set(j, i, self.get(i, j));
            }
        }
        out
    }

    pub fn mul(&self, other: &MatrixFp) -> MatrixFp {
        assert_eq!(self.cols, other.rows, "dimension mismatch in matrix product");
        assert_eq!(self.p, other.p);
        let mut out = MatrixFp::zeros(self.p, self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a == 0 {
                    continue;
                }
                for j in 0..other.cols {
                    let v = (out.get(i, j) + a * other.get(k, j)) % self.p;
                    out.data[i * out.cols + j] = v;
                }
            }
        }
        out
    }

    /// In-place reduction to RREF; returns the pivot columns in order.
    pub fn rref(&mut self) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut row = 0;
        for col in 0..self.cols {
            if row == self.rows {
                break;
            }
            let Some(pr) = (row..self.rows).find(|&r| self.get(r, col) != 0) else {
                continue;
            };
            self.swap_rows(row, pr);
            let inv = inv_mod(self.get(row, col), self.p);
            self.scale_row(row, inv);
            for r in 0..self.rows {
                if r != row {
                    let factor = self.get(r, col);
                    if factor != 0 {
                        self.sub_scaled_row(r, row, factor);
                    }
                }
            }
            pivots.push(col);
            row += 1;
        }
        pivots
    }

    pub fn rank(&self) -> usize {
        let mut work = self.clone();
        work.rref().len()
    }

    /// Right null space `{x : Ax = 0}` as a canonical subspace of `F_p^cols`.
    pub fn null_space(&self) -> Subspace {
        let mut work = self.clone();
        let pivots = work.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        let mut basis = Vec::with_capacity(free.len());
        for &fc in &free {
            let mut v = vec![0u64; self.cols];
            v[fc] = 1;
            for (r, &pc) in pivots.iter().enumerate() {
                // Pivot variable = -(coefficient of the free column).
                v[pc] = (self.p - work.get(r, fc)) % self.p;
            }
            basis.push(v);
        }
        Subspace::from_span(self.p, self.cols, &basis)
    }

    pub fn inverse(&self) -> Option<MatrixFp> {
        assert_eq!(self.rows, self.cols);
        let n = self.rows;
        let mut aug = MatrixFp::zeros(self.p, n, 2 * n);
        for i in 0..n {
            for j in 0..n {
                aug.set(i, j, self.get(i, j));
            }
            aug.set(i, n + i, 1);
        }
        let pivots = aug.rref();
        if pivots.len() != n || pivots.iter().enumerate().any(|(i, &c)| c != i) {
            return None;
        }
        let mut out = MatrixFp::zeros(self.p, n, n);
        for i in 0..n {
            for j in 0..n {
                out.set(i, j, aug.get(i, n + j));
            }
        }
        Some(out)
    }

    /// The submatrix picking `rows` x `cols` in the given index order.
    pub fn submatrix(&self, rows: &[usize], cols: &[usize]) -> MatrixFp {
        let mut out = MatrixFp::zeros(self.p, rows.len(), cols.len());
        for (i, &r) in rows.iter().enumerate() {
            for (j, &c) in cols.iter().enumerate() {
                out.set(i, j, self.get(r, c));
            }
        }
        out
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    fn scale_row(&mut self, r: usize, factor: u64) {
        for j in 0..self.cols {
            let v = self.get(r, j) * factor % self.p;
            self.data[r * self.cols + j] = v;
        }
    }

    /// row_r -= factor * row_src
    fn sub_scaled_row(&mut self, r: usize, src: usize, factor: u64) {
        for j in 0..self.cols {
            let sub = self.get(src, j) * factor % self.p;
            let v = (self.get(r, j) + self.p - sub) % self.p;
            self.data[r * self.cols + j] = v;
        }
    }
}

/// An `F_p`-subspace of `F_p^m` in canonical RREF basis form.
///
/// Two subspaces are equal iff their basis matrices are identical.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Subspace {
    ambient_dim: usize,
    basis: MatrixFp,
}

impl Subspace {
    pub fn zero(p: u64, m: usize) -> Subspace {
        Subspace { ambient_dim: m, basis: MatrixFp::zeros(p, 0, m) }
    }

    pub fn full(p: u64, m: usize) -> Subspace {
        Subspace { ambient_dim: m, basis: MatrixFp::identity(p, m) }
    }

    /// Canonicalizes the row space of the given vectors.
    pub fn from_span(p: u64, m: usize, vectors: &[Vec<u64>]) -> Subspace {
        let mut mat = MatrixFp::from_rows(p, vectors, m);
        let pivots = mat.rref();
        let k = pivots.len();
        let mut basis = MatrixFp::zeros(p, k, m);
        for i in 0..k {
            for j in 0..m {
                basis.set(i, j, mat.get(i, j));
            }
        }
        Subspace { ambient_dim: m, basis }
    }

    pub fn p(&self) -> u64 {
        self.basis.p()
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn dim(&self) -> usize {
        self.basis.rows()
    }

    /// The RREF basis matrix, `dim x ambient_dim`.
    pub fn basis(&self) -> &MatrixFp {
        &self.basis
    }

    pub fn contains(&self, v: &[u64]) -> bool {
        assert_eq!(v.len(), self.ambient_dim);
        let p = self.p();
        let mut v: Vec<u64> = v.iter().map(|&x| x % p).collect();
        // Reduce against the RREF rows; membership iff the residue is zero.
        for i in 0..self.basis.rows() {
            let pivot_col = (0..self.ambient_dim)
                .find(|&j| self.basis.get(i, j) != 0)
                .expect("RREF row cannot be zero");
            let factor = v[pivot_col];
            if factor != 0 {
                for j in 0..self.ambient_dim {
                    let sub = self.basis.get(i, j) * factor % p;
                    v[j] = (v[j] + p - sub) % p;
                }
            }
        }
        v.iter().all(|&x| x == 0)
    }

    pub fn is_subspace_of(&self, other: &Subspace) -> bool {
        (0..self.dim()).all(|i| other.contains(self.basis.row(i)))
    }

    /// All `p^dim` member vectors, each exactly once, in lexicographic order
    /// of the coefficient tuple applied to the basis rows.
    pub fn members(&self) -> Members<'_> {
        Members { space: self, counter: vec![0; self.dim()], done: false }
    }

    /// Sum (join) of two subspaces.
    pub fn sum(&self, other: &Subspace) -> Subspace {
        assert_eq!(self.ambient_dim, other.ambient_dim);
        let mut rows: Vec<Vec<u64>> = Vec::with_capacity(self.dim() + other.dim());
        for i in 0..self.dim() {
            rows.push(self.basis.row(i).to_vec());
        }
        for i in 0..other.dim() {
            rows.push(other.basis.row(i).to_vec());
        }
        Subspace::from_span(self.p(), self.ambient_dim, &rows)
    }

    /// Intersection, via double complements under the standard dot product.
    pub fn intersect(&self, other: &Subspace) -> Subspace {
        assert_eq!(self.ambient_dim, other.ambient_dim);
        let ca = self.std_complement();
        let cb = other.std_complement();
        ca.sum(&cb).std_complement()
    }

    /// `{x : b . x = 0 for all basis rows b}` under the standard dot product.
    pub fn std_complement(&self) -> Subspace {
        self.basis.null_space()
    }
}

pub struct Members<'a> {
    space: &'a Subspace,
    counter: Vec<u64>,
    done: bool,
}

impl Iterator for Members<'_> {
    type Item = Vec<u64>;

    fn next(&mut self) -> Option<Vec<u64>> {
        if self.done {
            return None;
        }
        let p = self.space.p();
        let m = self.space.ambient_dim;
        let mut v = vec![0u64; m];
        for (i, &c) in self.counter.iter().enumerate() {
            if c == 0 {
                continue;
            }
            for j in 0..m {
                v[j] = (v[j] + c * self.space.basis.get(i, j)) % p;
            }
        }
        // Odometer, last coefficient fastest: lexicographic tuple order.
        let mut i = self.counter.len();
        loop {
            if i == 0 {
                self.done = true;
                break;
            }
            i -= 1;
            self.counter[i] += 1;
            if self.counter[i] < p {
                break;
            }
            self.counter[i] = 0;
        }
        if self.counter.is_empty() {
            self.done = true;
        }
        Some(v)
    }
}

/// Number of `k`-dimensional subspaces of `F_p^m` (Gaussian binomial).
pub fn gaussian_binomial(p: u64, m: usize, k: usize) -> u128 {
    if k > m {
        return 0;
    }
    // DP over the recurrence [m k] = [m-1 k-1] + p^k [m-1 k].
    let mut table = vec![vec![0u128; k + 1]; m + 1];
    for row in table.iter_mut() {
        row[0] = 1;
    }
    for mm in 1..=m {
        for kk in 1..=k.min(mm) {
            let pk = (p as u128).pow(kk as u32);
            table[mm][kk] = table[mm - 1][kk - 1] + pk * table[mm - 1][kk];
        }
    }
    table[m][k]
}

/// All `k`-subsets of `0..m` in lexicographic order; the pivot-pattern cells
/// of the subspace enumeration. Each cell is an independent work unit.
pub fn pivot_patterns(m: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut current = Vec::with_capacity(k);
    fn rec(m: usize, k: usize, start: usize, current: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if current.len() == k {
            out.push(current.clone());
            return;
        }
        let remaining = k - current.len();
        for j in start..=m - remaining {
            current.push(j);
            rec(m, k, j + 1, current, out);
            current.pop();
        }
    }
    if k == 0 {
        out.push(Vec::new());
        return out;
    }
    rec(m, k, 0, &mut current, &mut out);
    out
}

/// Enumerates every `k`-dimensional subspace of `F_p^m` exactly once, in a
/// deterministic order: lexicographic over pivot-column patterns, then a
/// base-p odometer over the free entries of the RREF shape.
pub fn enumerate_subspaces(
    p: u64,
    m: usize,
    k: usize,
) -> Result<impl Iterator<Item = Subspace>, SubspaceError> {
    if k > m {
        return Err(SubspaceError::DimOutOfRange { dim: k, ambient: m });
    }
    let patterns = pivot_patterns(m, k);
    Ok(patterns
        .into_iter()
        .flat_map(move |pattern| PatternEnum::new(p, m, pattern)))
}

/// Enumerates the RREF cell of one pivot-column pattern.
pub struct PatternEnum {
    p: u64,
    m: usize,
    pattern: Vec<usize>,
    /// (row, col) positions free to range over `F_p`, row-major.
    free: Vec<(usize, usize)>,
    counter: Vec<u64>,
    done: bool,
}

impl PatternEnum {
    pub fn new(p: u64, m: usize, pattern: Vec<usize>) -> PatternEnum {
        let mut free = Vec::new();
        for (i, &pc) in pattern.iter().enumerate() {
            for j in pc + 1..m {
                if !pattern.contains(&j) {
                    free.push((i, j));
                }
            }
        }
        let counter = vec![0; free.len()];
        PatternEnum { p, m, pattern, free, counter, done: false }
    }
}

impl Iterator for PatternEnum {
    type Item = Subspace;

    fn next(&mut self) -> Option<Subspace> {
        if self.done {
            return None;
        }
        let k = self.pattern.len();
        let mut basis = MatrixFp::zeros(self.p, k, self.m);
        for (i, &pc) in self.pattern.iter().enumerate() {
            basis.set(i, pc, 1);
        }
        for (&(i, j), &v) in self.free.iter().zip(&self.counter) {
            basis.set(i, j, v);
        }
        // Odometer, last free entry fastest.
        let mut i = self.counter.len();
        loop {
            if i == 0 {
                self.done = true;
                break;
            }
            i -= 1;
            self.counter[i] += 1;
            if self.counter[i] < self.p {
                break;
            }
            self.counter[i] = 0;
        }
        if self.counter.is_empty() {
            self.done = true;
        }
        Some(Subspace { ambient_dim: self.m, basis })
    }
}
