//! Dense polynomials over a prime field and polynomial differentials
//! `h(x) dx` on the projective line.
//!
//! Because every coefficient lives in `F_p`, the `p`-th power and the
//! `p`-th root on coefficients are the identity. The Cartier operator and
//! its section therefore act on exponents only.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use crate::error::{check_prime, Error, Result};

#[inline]
pub(crate) fn add_mod(a: u32, b: u32, p: u32) -> u32 {
    let s = a + b;
    if s >= p {
        s - p
    } else {
        s
    }
}

#[inline]
pub(crate) fn sub_mod(a: u32, b: u32, p: u32) -> u32 {
    if a >= b {
        a - b
    } else {
        a + p - b
    }
}

#[inline]
pub(crate) fn mul_mod(a: u32, b: u32, p: u32) -> u32 {
    ((a as u64 * b as u64) % p as u64) as u32
}

pub(crate) fn pow_mod(mut base: u32, mut e: u64, p: u32) -> u32 {
    let mut acc = 1 % p;
    base %= p;
    while e > 0 {
        if e & 1 == 1 {
            acc = mul_mod(acc, base, p);
        }
        base = mul_mod(base, base, p);
        e >>= 1;
    }
    acc
}

/// Inverse of a nonzero residue by Fermat.
pub(crate) fn inv_mod(a: u32, p: u32) -> u32 {
    debug_assert!(!a.is_multiple_of(p));
    pow_mod(a, (p - 2) as u64, p)
}

pub(crate) fn reduce_i64(c: i64, p: u32) -> u32 {
    c.rem_euclid(p as i64) as u32
}

/// Binomial coefficient `C(n, k)` reduced mod `p`, for small `n`.
pub(crate) fn binomial_mod(n: u32, k: u32, p: u32) -> u32 {
    if k > n {
        return 0;
    }
    // Lucas' theorem digit by digit.
    let (mut n, mut k) = (n, k);
    let mut acc = 1u32;
    while n > 0 || k > 0 {
        let (nd, kd) = (n % p, k % p);
        if kd > nd {
            return 0;
        }
        let mut c: u64 = 1;
        for t in 0..kd as u64 {
            c = c * (nd as u64 - t) / (t + 1);
        }
        acc = mul_mod(acc, (c % p as u64) as u32, p);
        n /= p;
        k /= p;
    }
    acc
}

/// A polynomial over `F_p` stored densely, with trailing zeros trimmed.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct FpPoly {
    p: u32,
    coeffs: Vec<u32>,
}

impl FpPoly {
    pub fn zero(p: u32) -> Self {
        FpPoly { p, coeffs: Vec::new() }
    }

    /// `c * x^e`.
    pub fn monomial(p: u32, c: i64, e: usize) -> Self {
        let mut coeffs = vec![0; e + 1];
        coeffs[e] = reduce_i64(c, p);
        FpPoly::from_residues(p, coeffs)
    }

    /// Builds a polynomial from integer coefficients (constant first),
    /// reducing each mod `p`.
    pub fn from_coeffs(p: u32, coeffs: &[i64]) -> Self {
        FpPoly::from_residues(p, coeffs.iter().map(|&c| reduce_i64(c, p)).collect())
    }

    pub(crate) fn from_residues(p: u32, mut coeffs: Vec<u32>) -> Self {
        debug_assert!(coeffs.iter().all(|&c| c < p));
        while coeffs.last() == Some(&0) {
            coeffs.pop();
        }
        FpPoly { p, coeffs }
    }

    /// Sum of `c * x^e` over the given pairs.
    pub fn from_terms(p: u32, terms: &[(i64, usize)]) -> Self {
        let len = terms.iter().map(|&(_, e)| e + 1).max().unwrap_or(0);
        let mut coeffs = vec![0u32; len];
        for &(c, e) in terms {
            coeffs[e] = add_mod(coeffs[e], reduce_i64(c, p), p);
        }
        FpPoly::from_residues(p, coeffs)
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    /// Coefficients as residues in `0..p`, constant term first.
    pub fn coeffs(&self) -> &[u32] {
        &self.coeffs
    }

    pub fn coeff(&self, e: usize) -> u32 {
        self.coeffs.get(e).copied().unwrap_or(0)
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn leading_coeff(&self) -> u32 {
        self.coeffs.last().copied().unwrap_or(0)
    }

    /// Nonzero terms as `(exponent, coefficient)`, ascending.
    pub fn terms(&self) -> impl Iterator<Item = (usize, u32)> + '_ {
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, &c)| c != 0)
            .map(|(e, &c)| (e, c))
    }

    pub fn scale(&self, c: u32) -> FpPoly {
        let c = c % self.p;
        FpPoly::from_residues(self.p, self.coeffs.iter().map(|&a| mul_mod(a, c, self.p)).collect())
    }

    pub fn pow(&self, mut e: u32) -> FpPoly {
        let mut acc = FpPoly::monomial(self.p, 1, 0);
        let mut base = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Parses the text grammar `c*x^e`, `x^e`, `c*x`, `x`, `c` joined by
    /// `+` / `-`, with arbitrary whitespace.
    pub fn parse(p: u32, input: &str) -> Result<FpPoly> {
        check_prime(p)?;
        let err = |reason: &str| Error::Parse { input: input.to_string(), reason: reason.to_string() };
        let s: String = input.chars().filter(|c| !c.is_whitespace()).collect();
        if s.is_empty() {
            return Err(err("empty input"));
        }
        let mut terms: Vec<(i64, usize)> = Vec::new();
        let bytes = s.as_bytes();
        let mut pos = 0;
        while pos < bytes.len() {
            let mut sign = 1i64;
            if bytes[pos] == b'+' || bytes[pos] == b'-' {
                if bytes[pos] == b'-' {
                    sign = -1;
                }
                pos += 1;
            } else if pos != 0 {
                return Err(err("expected '+' or '-' between terms"));
            }
            let end = s[pos..].find(['+', '-']).map_or(s.len(), |k| pos + k);
            let term = &s[pos..end];
            if term.is_empty() {
                return Err(err("empty term"));
            }
            let (coeff, exp) = parse_term(term, p).map_err(|r| err(&r))?;
            terms.push((sign * coeff, exp));
            pos = end;
        }
        Ok(FpPoly::from_terms(p, &terms))
    }
}

fn parse_term(term: &str, p: u32) -> std::result::Result<(i64, usize), String> {
    let parse_int = |t: &str| -> std::result::Result<i64, String> {
        if t.is_empty() || !t.bytes().all(|b| b.is_ascii_digit()) {
            return Err(format!("bad integer {t:?}"));
        }
        // reduce digit by digit so arbitrarily long literals are fine
        Ok(t.bytes().fold(0i64, |acc, b| (acc * 10 + (b - b'0') as i64) % p as i64))
    };
    match term.find('x') {
        None => Ok((parse_int(term)?, 0)),
        Some(k) => {
            let head = &term[..k];
            let tail = &term[k + 1..];
            let coeff = match head {
                "" => 1,
                h => parse_int(h.strip_suffix('*').ok_or_else(|| format!("missing '*' in {term:?}"))?)?,
            };
            let exp = match tail {
                "" => 1,
                t => {
                    let digits = t.strip_prefix('^').ok_or_else(|| format!("bad exponent in {term:?}"))?;
                    if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
                        return Err(format!("bad exponent in {term:?}"));
                    }
                    digits.parse::<usize>().map_err(|e| e.to_string())?
                }
            };
            Ok((coeff, exp))
        }
    }
}

impl fmt::Display for FpPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (e, c) in self.terms().collect::<Vec<_>>().into_iter().rev() {
            if !first {
                write!(f, "+")?;
            }
            first = false;
            match (e, c) {
                (0, c) => write!(f, "{c}")?,
                (1, 1) => write!(f, "x")?,
                (1, c) => write!(f, "{c}*x")?,
                (e, 1) => write!(f, "x^{e}")?,
                (e, c) => write!(f, "{c}*x^{e}")?,
            }
        }
        Ok(())
    }
}

impl Add for &FpPoly {
    type Output = FpPoly;
    fn add(self, rhs: &FpPoly) -> FpPoly {
        assert_eq!(self.p, rhs.p, "mixed characteristics");
        let p = self.p;
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let out = (0..n).map(|e| add_mod(self.coeff(e), rhs.coeff(e), p)).collect();
        FpPoly::from_residues(p, out)
    }
}

impl Sub for &FpPoly {
    type Output = FpPoly;
    fn sub(self, rhs: &FpPoly) -> FpPoly {
        assert_eq!(self.p, rhs.p, "mixed characteristics");
        let p = self.p;
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let out = (0..n).map(|e| sub_mod(self.coeff(e), rhs.coeff(e), p)).collect();
        FpPoly::from_residues(p, out)
    }
}

impl Neg for &FpPoly {
    type Output = FpPoly;
    fn neg(self) -> FpPoly {
        let p = self.p;
        FpPoly::from_residues(p, self.coeffs.iter().map(|&c| sub_mod(0, c, p)).collect())
    }
}

impl Mul for &FpPoly {
    type Output = FpPoly;
    fn mul(self, rhs: &FpPoly) -> FpPoly {
        assert_eq!(self.p, rhs.p, "mixed characteristics");
        let p = self.p;
        if self.is_zero() || rhs.is_zero() {
            return FpPoly::zero(p);
        }
        let mut acc = vec![0u64; self.coeffs.len() + rhs.coeffs.len() - 1];
        let limit = u64::MAX - (p as u64 - 1) * (p as u64 - 1);
        for (i, a) in self.terms() {
            for (j, &b) in rhs.coeffs.iter().enumerate() {
                let slot = &mut acc[i + j];
                *slot += a as u64 * b as u64;
                if *slot >= limit {
                    *slot %= p as u64;
                }
            }
        }
        FpPoly::from_residues(p, acc.into_iter().map(|c| (c % p as u64) as u32).collect())
    }
}

/// A differential `h(x) dx` on the projective line.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Differential1(pub FpPoly);

impl Differential1 {
    pub fn zero(p: u32) -> Self {
        Differential1(FpPoly::zero(p))
    }

    /// `c x^e dx`.
    pub fn monomial(p: u32, c: i64, e: usize) -> Self {
        Differential1(FpPoly::monomial(p, c, e))
    }

    pub fn h(&self) -> &FpPoly {
        &self.0
    }

    pub fn p(&self) -> u32 {
        self.0.p
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }
}

impl fmt::Display for Differential1 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_zero() {
            write!(f, "0")
        } else if self.0.terms().count() == 1 {
            write!(f, "{} dx", self.0)
        } else {
            write!(f, "({}) dx", self.0)
        }
    }
}

/// Cartier operator on `P^1`: `x^j dx` goes to `x^((j+1)/p - 1) dx` when
/// `p | j+1`, and to zero otherwise.
pub fn cartier_p1(w: &Differential1) -> Differential1 {
    let p = w.p() as usize;
    let h = w.h();
    let Some(deg) = h.degree() else {
        return Differential1::zero(w.p());
    };
    let out: Vec<u32> = (0..(deg + 1) / p).map(|k| h.coeff(p * (k + 1) - 1)).collect();
    Differential1(FpPoly::from_residues(w.p(), out))
}

/// Right inverse of [`cartier_p1`]: `x^k dx` goes to `x^(p(k+1) - 1) dx`.
pub fn s_section(w: &Differential1) -> Differential1 {
    let p = w.p() as usize;
    let h = w.h();
    let Some(deg) = h.degree() else {
        return Differential1::zero(w.p());
    };
    let mut out = vec![0u32; p * (deg + 1)];
    for (k, c) in h.terms() {
        out[p * (k + 1) - 1] = c;
    }
    Differential1(FpPoly::from_residues(w.p(), out))
}

/// `s ∘ C`: keeps exactly the terms `x^j dx` with `j ≡ -1 (mod p)`.
pub fn sc_project(w: &Differential1) -> Differential1 {
    let p = w.p() as usize;
    let out = w
        .h()
        .coeffs()
        .iter()
        .enumerate()
        .map(|(j, &c)| if (j + 1) % p == 0 { c } else { 0 })
        .collect();
    Differential1(FpPoly::from_residues(w.p(), out))
}

/// Rewrites `f` into the Artin-Schreier equivalent form with no monomial
/// `c x^(pi)` and no constant term.
pub fn normalize_artin_schreier(f: &FpPoly) -> Result<FpPoly> {
    let p = f.p() as usize;
    let mut coeffs = f.coeffs().to_vec();
    let mut e = coeffs.len().saturating_sub(1);
    // Walking downward sees every folded term, since x^(pi) lands on x^i < pi.
    while e >= p {
        if e.is_multiple_of(p) && coeffs[e] != 0 {
            let c = std::mem::take(&mut coeffs[e]);
            coeffs[e / p] = add_mod(coeffs[e / p], c, f.p());
        }
        e -= 1;
    }
    if let Some(c0) = coeffs.first_mut() {
        *c0 = 0;
    }
    let g = FpPoly::from_residues(f.p(), coeffs);
    if g.is_zero() {
        Err(Error::SplitCover)
    } else {
        Ok(g)
    }
}
