//! Exact arithmetic in `F_p` and `F_{p^m}` for odd primes `p`.
//!
//! Extension field elements are coordinate vectors in the polynomial basis
//! `1, x, ..., x^(m-1)` modulo a monic irreducible polynomial. Every element
//! has a canonical integer encoding (base-`p`, constant coordinate least
//! significant) which fixes a total order used wherever ordering matters.

use alloc::borrow::ToOwned;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

/// Errors from field construction and arithmetic.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GfError {
    /// `p` is not prime.
    NotPrime(u64),
    /// `p = 2` is rejected: the polarization identity divides by 2.
    EvenCharacteristic,
    /// Extension degree or modulus degree is unusable.
    BadDegree { expected: usize, got: usize },
    /// The supplied modulus polynomial is not irreducible over `F_p`.
    Reducible,
    /// Inverse of zero requested.
    DivisionByZero,
    /// `p^m` does not fit the element encoding.
    FieldTooLarge,
}

impl fmt::Display for GfError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GfError::NotPrime(p) => write!(f, "{p} is not prime"),
            GfError::EvenCharacteristic => write!(f, "characteristic 2 is not supported"),
            GfError::BadDegree { expected, got } => {
                write!(f, "bad degree: expected {expected}, got {got}")
            }
            GfError::Reducible => write!(f, "modulus polynomial is reducible"),
            GfError::DivisionByZero => write!(f, "division by zero"),
            GfError::FieldTooLarge => write!(f, "p^m exceeds the supported element encoding"),
        }
    }
}

/// A value of `F_p`, reduced to `[0, p)`.
pub type PrimeElem = u64;

/// An element of `F_{p^m}` in polynomial-basis coordinates.
///
/// `coords[i]` is the coefficient of `x^i`; all coordinates lie in `[0, p)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FFElem {
    coords: Vec<u64>,
}

impl FFElem {
    pub fn coords(&self) -> &[u64] {
        &self.coords
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(|&c| c == 0)
    }
}

/// The ambient arithmetic context for `F_{p^m}`.
///
/// Immutable after construction; all operations are pure.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FieldCtx {
    p: u64,
    m: usize,
    /// Monic, irreducible, degree `m`; coefficients constant-term first (length `m + 1`).
    modulus: Vec<u64>,
}

impl FieldCtx {
    /// Builds a context for `F_{p^m}`.
    ///
    /// With `modulus = None` the lexicographically smallest monic irreducible
    /// polynomial of degree `m` is selected (coefficients compared
    /// constant-term first), so runs are reproducible. A caller-supplied
    /// modulus must be monic of degree `m` and is verified irreducible.
    pub fn new(p: u64, m: usize, modulus: Option<&[u64]>) -> Result<FieldCtx, GfError> {
        if p == 2 {
            return Err(GfError::EvenCharacteristic);
        }
        if !is_prime(p) {
            return Err(GfError::NotPrime(p));
        }
        if m == 0 {
            return Err(GfError::BadDegree { expected: 1, got: 0 });
        }
        checked_pow(p, m as u32).ok_or(GfError::FieldTooLarge)?;
        let modulus = match modulus {
            Some(coeffs) => {
                if coeffs.len() != m + 1 {
                    return Err(GfError::BadDegree { expected: m + 1, got: coeffs.len() });
                }
                let reduced: Vec<u64> = coeffs.iter().map(|&c| c % p).collect();
                if reduced[m] != 1 {
                    return Err(GfError::BadDegree { expected: m + 1, got: coeffs.len() });
                }
                if !poly_is_irreducible(p, &reduced) {
                    return Err(GfError::Reducible);
                }
                reduced
            }
            None => default_modulus(p, m),
        };
        Ok(FieldCtx { p, m, modulus })
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn m(&self) -> usize {
        self.m
    }

    /// Modulus coefficients, constant term first (length `m + 1`, monic).
    pub fn modulus(&self) -> &[u64] {
        &self.modulus
    }

    /// Number of field elements, `p^m`.
    pub fn size(&self) -> u64 {
        // Overflow checked at construction.
        self.p.pow(self.m as u32)
    }

    pub fn zero(&self) -> FFElem {
        FFElem { coords: vec![0; self.m] }
    }

    pub fn one(&self) -> FFElem {
        self.embed_scalar(1)
    }

    /// The `i`-th polynomial-basis vector, `x^i`.
    pub fn basis_elem(&self, i: usize) -> FFElem {
        assert!(i < self.m, "basis index {i} out of range for m = {}", self.m);
        let mut coords = vec![0; self.m];
        coords[i] = 1;
        FFElem { coords }
    }

    /// Embeds `c mod p` from the prime subfield.
    pub fn embed_scalar(&self, c: u64) -> FFElem {
        let mut coords = vec![0; self.m];
        coords[0] = c % self.p;
        FFElem { coords }
    }

    pub fn from_coords(&self, coords: &[u64]) -> FFElem {
        assert_eq!(coords.len(), self.m, "coordinate vector length mismatch");
        FFElem { coords: coords.iter().map(|&c| c % self.p).collect() }
    }

    /// Canonical integer encoding: base-`p` with `coords[0]` least significant.
    pub fn encode(&self, a: &FFElem) -> u64 {
        let mut acc = 0u64;
        for &c in a.coords.iter().rev() {
            acc = acc * self.p + c;
        }
        acc
    }

    pub fn decode(&self, mut code: u64) -> FFElem {
        let mut coords = vec![0; self.m];
        for slot in coords.iter_mut() {
            *slot = code % self.p;
            code /= self.p;
        }
        assert_eq!(code, 0, "encoding out of range");
        FFElem { coords }
    }

    /// All field elements in encoding order.
    pub fn elements(&self) -> impl Iterator<Item = FFElem> + '_ {
        (0..self.size()).map(move |code| self.decode(code))
    }

    pub fn add(&self, a: &FFElem, b: &FFElem) -> FFElem {
        let coords = a
            .coords
            .iter()
            .zip(&b.coords)
            .map(|(&x, &y)| (x + y) % self.p)
            .collect();
        FFElem { coords }
    }

    pub fn sub(&self, a: &FFElem, b: &FFElem) -> FFElem {
        let coords = a
            .coords
            .iter()
            .zip(&b.coords)
            .map(|(&x, &y)| (x + self.p - y) % self.p)
            .collect();
        FFElem { coords }
    }

    pub fn neg(&self, a: &FFElem) -> FFElem {
        let coords = a.coords.iter().map(|&x| (self.p - x) % self.p).collect();
        FFElem { coords }
    }

    /// Scales by a prime-subfield constant.
    pub fn scale(&self, c: u64, a: &FFElem) -> FFElem {
        let c = c % self.p;
        let coords = a.coords.iter().map(|&x| (x * c) % self.p).collect();
        FFElem { coords }
    }

    pub fn mul(&self, a: &FFElem, b: &FFElem) -> FFElem {
        let prod = poly_mul(self.p, &a.coords, &b.coords);
        let rem = poly_rem(self.p, &prod, &self.modulus);
        let mut coords = vec![0; self.m];
        coords[..rem.len()].copy_from_slice(&rem);
        FFElem { coords }
    }

    pub fn pow(&self, a: &FFElem, mut e: u128) -> FFElem {
        let mut base = a.clone();
        let mut acc = self.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            base = self.mul(&base, &base);
            e >>= 1;
        }
        acc
    }

    pub fn inv(&self, a: &FFElem) -> Result<FFElem, GfError> {
        if a.is_zero() {
            return Err(GfError::DivisionByZero);
        }
        Ok(self.pow(a, self.size() as u128 - 2))
    }

    /// Trace down to `F_p`: the sum of the Frobenius orbit of `a`.
    pub fn trace(&self, a: &FFElem) -> PrimeElem {
        let mut acc = a.clone();
        let mut frob = a.clone();
        for _ in 1..self.m {
            frob = self.pow(&frob, self.p as u128);
            acc = self.add(&acc, &frob);
        }
        debug_assert!(
            acc.coords[1..].iter().all(|&c| c == 0),
            "trace left the prime subfield"
        );
        acc.coords[0]
    }

    /// Quadratic character of `c mod p`: `1` for nonzero squares, `-1` for
    /// nonsquares, `0` at zero.
    pub fn quad_char(&self, c: PrimeElem) -> i64 {
        quad_char(self.p, c)
    }

    /// `p - 1` at zero, `-1` elsewhere.
    pub fn v_func(&self, c: PrimeElem) -> i64 {
        v_func(self.p, c)
    }
}

/// Quadratic character of `c mod p` via Euler's criterion.
pub fn quad_char(p: u64, c: u64) -> i64 {
    let c = c % p;
    if c == 0 {
        return 0;
    }
    let e = mod_pow(c, (p - 1) / 2, p);
    if e == 1 {
        1
    } else {
        -1
    }
}

/// `p - 1` at zero, `-1` elsewhere.
pub fn v_func(p: u64, c: u64) -> i64 {
    if c % p == 0 {
        p as i64 - 1
    } else {
        -1
    }
}

/// Inverse of `a mod p` for prime `p` and `a != 0 mod p`.
pub fn inv_mod(a: u64, p: u64) -> u64 {
    debug_assert!(a % p != 0, "inverse of zero mod {p}");
    mod_pow(a % p, p - 2, p)
}

pub fn mod_pow(base: u64, mut exp: u64, p: u64) -> u64 {
    let mut acc: u128 = 1;
    let mut b = (base % p) as u128;
    let p128 = p as u128;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * b % p128;
        }
        b = b * b % p128;
        exp >>= 1;
    }
    acc as u64
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n % 2 == 0 {
        return n == 2;
    }
    let mut d = 3u64;
    while d.checked_mul(d).map_or(false, |sq| sq <= n) {
        if n % d == 0 {
            return false;
        }
        d += 2;
    }
    true
}

fn checked_pow(p: u64, m: u32) -> Option<u64> {
    p.checked_pow(m)
}

// ---------------------------------------------------------------------------
// Dense polynomial helpers over F_p, coefficients constant-term first.
// ---------------------------------------------------------------------------

fn poly_trim(coeffs: &mut Vec<u64>) {
    while coeffs.last() == Some(&0) {
        coeffs.pop();
    }
}

fn poly_mul(p: u64, a: &[u64], b: &[u64]) -> Vec<u64> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![0u64; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            out[i + j] = (out[i + j] + x * y) % p;
        }
    }
    poly_trim(&mut out);
    out
}

/// Remainder of `a` modulo monic `mod_poly`.
fn poly_rem(p: u64, a: &[u64], mod_poly: &[u64]) -> Vec<u64> {
    let deg_m = mod_poly.len() - 1;
    let mut rem = a.to_owned();
    poly_trim(&mut rem);
    while rem.len() > deg_m {
        // Trim keeps the leading coefficient nonzero.
        let lead = *rem.last().unwrap();
        let shift = rem.len() - 1 - deg_m;
        for (i, &c) in mod_poly.iter().enumerate() {
            let sub = lead * c % p;
            rem[shift + i] = (rem[shift + i] + p - sub) % p;
        }
        poly_trim(&mut rem);
    }
    rem
}

/// Irreducibility over `F_p` by trial division with every monic polynomial of
/// degree up to `deg/2`.
fn poly_is_irreducible(p: u64, poly: &[u64]) -> bool {
    let deg = poly.len() - 1;
    if deg == 0 {
        return false;
    }
    if deg == 1 {
        return true;
    }
    if poly[0] == 0 {
        return false; // divisible by x
    }
    for d in 1..=deg / 2 {
        let count = p.pow(d as u32);
        for enc in 0..count {
            let mut divisor = decode_poly(p, enc, d);
            divisor.push(1); // monic of degree d
            if poly_rem(p, poly, &divisor).is_empty() {
                return false;
            }
        }
    }
    true
}

fn decode_poly(p: u64, mut enc: u64, len: usize) -> Vec<u64> {
    let mut coeffs = vec![0u64; len];
    for slot in coeffs.iter_mut() {
        *slot = enc % p;
        enc /= p;
    }
    coeffs
}

/// Lexicographically smallest monic irreducible polynomial of degree `m`,
/// comparing coefficient lists constant-term first.
fn default_modulus(p: u64, m: usize) -> Vec<u64> {
    if m == 1 {
        return vec![0, 1]; // x
    }
    // Odometer over (c_0, ..., c_{m-1}) with the last coefficient fastest
    // walks tuples in lexicographic order.
    let mut coeffs = vec![0u64; m];
    loop {
        let mut candidate = coeffs.clone();
        candidate.push(1);
        if poly_is_irreducible(p, &candidate) {
            return candidate;
        }
        let mut i = m;
        loop {
            if i == 0 {
                unreachable!("no irreducible polynomial of degree {m} over F_{p}");
            }
            i -= 1;
            coeffs[i] += 1;
            if coeffs[i] < p {
                break;
            }
            coeffs[i] = 0;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn prime_field_default_modulus_is_x() {
        let ctx = FieldCtx::new(3, 1, None).unwrap();
        assert_eq!(ctx.modulus(), &[0, 1]);
    }

    #[test]
    fn composite_p_rejected() {
        assert_eq!(FieldCtx::new(4, 2, None).unwrap_err(), GfError::NotPrime(4));
    }

    #[test]
    fn p_two_rejected() {
        assert_eq!(FieldCtx::new(2, 3, None).unwrap_err(), GfError::EvenCharacteristic);
    }

    /// Oracle: a monic quartic over F_3 is reducible iff it is a product of
    /// two monic polynomials of positive degree. Enumerate all such products
    /// and pick the lexicographically smallest quartic not among them.
    #[test]
    fn default_quartic_modulus_over_f3_matches_product_scan() {
        let p = 3u64;
        let m = 4usize;
        let mut reducible = alloc::collections::BTreeSet::new();
        for dg in 1..=m - 1 {
            let dh = m - dg;
            for ge in 0..p.pow(dg as u32) {
                let mut g = decode_poly(p, ge, dg);
                g.push(1);
                for he in 0..p.pow(dh as u32) {
                    let mut h = decode_poly(p, he, dh);
                    h.push(1);
                    let prod = poly_mul(p, &g, &h);
                    reducible.insert(prod);
                }
            }
        }
        let mut expected = None;
        'outer: for c0 in 0..p {
            for c1 in 0..p {
                for c2 in 0..p {
                    for c3 in 0..p {
                        let cand = vec![c0, c1, c2, c3, 1];
                        if !reducible.contains(&cand) {
                            expected = Some(cand);
                            break 'outer;
                        }
                    }
                }
            }
        }
        let expected = expected.unwrap();
        // Frozen from the oracle above: x^4 + x^3 + x^2 + 1.
        assert_eq!(expected, vec![1, 0, 1, 1, 1]);
        let ctx = FieldCtx::new(3, 4, None).unwrap();
        assert_eq!(ctx.modulus(), expected.as_slice());
    }

    #[test]
    fn supplied_reducible_modulus_rejected() {
        // x^4 + 1 = (x^2 + x + 2)(x^2 + 2x + 2) over F_3.
        assert_eq!(
            FieldCtx::new(3, 4, Some(&[1, 0, 0, 0, 1])).unwrap_err(),
            GfError::Reducible
        );
    }

    #[test]
    fn mul_reduces_x_power_m() {
        let ctx = FieldCtx::new(3, 4, None).unwrap();
        // x * x^3 = x^4 must reduce to -(x^3 + x^2 + 1) = 2x^3 + 2x^2 + 2.
        let x = ctx.basis_elem(1);
        let x3 = ctx.basis_elem(3);
        let got = ctx.mul(&x, &x3);
        assert_eq!(got.coords(), &[2, 0, 2, 2]);
        // Schoolbook oracle: multiply out and long-divide by the modulus.
        let prod = poly_mul(3, x.coords(), x3.coords());
        let rem = poly_rem(3, &prod, ctx.modulus());
        assert_eq!(&got.coords()[..rem.len()], rem.as_slice());
    }

    #[test]
    fn inverse_law_exhaustive_f27() {
        let ctx = FieldCtx::new(3, 3, None).unwrap();
        let one = ctx.one();
        for a in ctx.elements().skip(1) {
            let inv = ctx.inv(&a).unwrap();
            assert_eq!(ctx.mul(&a, &inv), one);
        }
        assert_eq!(ctx.inv(&ctx.zero()).unwrap_err(), GfError::DivisionByZero);
    }

    #[test]
    fn additive_inverse_exhaustive_f27() {
        let ctx = FieldCtx::new(3, 3, None).unwrap();
        for a in ctx.elements() {
            assert!(ctx.add(&a, &ctx.neg(&a)).is_zero());
        }
    }

    #[test]
    fn field_axioms_exhaustive_f27() {
        let ctx = FieldCtx::new(3, 3, None).unwrap();
        let elems: Vec<FFElem> = ctx.elements().collect();
        for a in &elems {
            for b in &elems {
                assert_eq!(ctx.mul(a, b), ctx.mul(b, a));
                assert_eq!(ctx.add(a, b), ctx.add(b, a));
                for c in &elems {
                    assert_eq!(ctx.mul(&ctx.mul(a, b), c), ctx.mul(a, &ctx.mul(b, c)));
                    assert_eq!(
                        ctx.mul(a, &ctx.add(b, c)),
                        ctx.add(&ctx.mul(a, b), &ctx.mul(a, c))
                    );
                }
            }
        }
    }

    #[test]
    fn trace_fixes_subfield_scalars() {
        let ctx = FieldCtx::new(3, 4, None).unwrap();
        assert_eq!(ctx.trace(&ctx.zero()), 0);
        for c in 0..3 {
            // Each Frobenius fixes the subfield, so the trace is m*c mod p.
            assert_eq!(ctx.trace(&ctx.embed_scalar(c)), (4 * c) % 3);
        }
    }

    #[test]
    fn trace_is_linear_and_balanced_f27() {
        let ctx = FieldCtx::new(3, 3, None).unwrap();
        let elems: Vec<FFElem> = ctx.elements().collect();
        let mut fiber = [0usize; 3];
        for a in &elems {
            fiber[ctx.trace(a) as usize] += 1;
            for b in &elems {
                assert_eq!(
                    ctx.trace(&ctx.add(a, b)),
                    (ctx.trace(a) + ctx.trace(b)) % 3
                );
            }
        }
        // Trace is onto with fibers of size p^(m-1) = 9.
        assert_eq!(fiber, [9, 9, 9]);
    }

    #[test]
    fn quad_char_values_mod_3() {
        assert_eq!(quad_char(3, 0), 0);
        assert_eq!(quad_char(3, 1), 1);
        assert_eq!(quad_char(3, 2), -1);
    }

    #[test]
    fn quad_char_multiplicative_and_balanced() {
        for p in [3u64, 5, 7, 11] {
            let mut squares = 0;
            for a in 1..p {
                if quad_char(p, a) == 1 {
                    squares += 1;
                }
                for b in 1..p {
                    assert_eq!(quad_char(p, a * b % p), quad_char(p, a) * quad_char(p, b));
                }
            }
            assert_eq!(squares, (p - 1) / 2);
        }
    }

    #[test]
    fn v_func_values_and_zero_sum() {
        assert_eq!(v_func(3, 0), 2);
        assert_eq!(v_func(3, 1), -1);
        for p in [3u64, 5, 7] {
            let total: i64 = (0..p).map(|c| v_func(p, c)).sum();
            assert_eq!(total, 0);
        }
    }

    #[test]
    fn encoding_round_trips() {
        let ctx = FieldCtx::new(5, 3, None).unwrap();
        for code in 0..ctx.size() {
            assert_eq!(ctx.encode(&ctx.decode(code)), code);
        }
    }
}
