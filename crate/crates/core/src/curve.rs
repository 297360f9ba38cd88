//! Basic Artin-Schreier curves `y^p - y = f` over `F_p`, branched only
//! above infinity, with the integer data that governs their differentials.

use crate::bounds::{self, RamificationData};
use crate::error::{check_prime, Error, Result};
use crate::fppoly::{normalize_artin_schreier, FpPoly};

fn ceil_div(a: i64, b: i64) -> i64 {
    -((-a).div_euclid(b))
}

/// A validated basic Artin-Schreier cover of `P^1`.
///
/// Levels are indexed by the power of `y`: a differential is
/// `Σ_i h_i(x) y^i dx`, and it is regular iff `deg h_i <= n_i` for all `i`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BasicCurve {
    p: u32,
    f: FpPoly,
    d: u64,
    n: Vec<i64>,
    m: Vec<i64>,
    s_start: Vec<Option<i64>>,
    r: Vec<usize>,
    genus: usize,
    dim_v: usize,
    dim_u: usize,
}

impl BasicCurve {
    /// Normalizes `f` and fills in the level data.
    pub fn new(p: u32, f: &FpPoly) -> Result<Self> {
        check_prime(p)?;
        if f.p() != p {
            return Err(Error::Argument(format!("polynomial is over F_{}, not F_{p}", f.p())));
        }
        let f = normalize_artin_schreier(f)?;
        let d = f.degree().expect("normalized f is nonzero") as u64;
        if d.is_multiple_of(p as u64) {
            return Err(Error::DivisibleByP { p, d });
        }
        let (pi, di) = (p as i64, d as i64);
        let n: Vec<i64> = (0..pi).map(|i| ceil_div((pi - 1 - i) * di, pi) - 2).collect();
        let m: Vec<i64> = (0..pi).map(|i| (pi - 1 - i) * di - 2).collect();
        let mut s_start = Vec::with_capacity(p as usize);
        let mut r = Vec::with_capacity(p as usize);
        for i in 0..p as usize {
            // smallest s > n_i with s ≡ -1 (mod p)
            let s = n[i] + 1 + (pi - 1 - (n[i] + 1).rem_euclid(pi));
            if s <= m[i] {
                s_start.push(Some(s));
                r.push(((m[i] - s) / pi + 1) as usize);
            } else {
                s_start.push(None);
                r.push(0);
            }
        }
        let genus = ((p as u64 - 1) * (d - 1) / 2) as usize;
        let dim_v = (0..pi).map(|i| ceil_div((pi - 1 - i) * di, pi) - ceil_div((pi - 1 - i) * di, pi * pi)).sum::<i64>() as usize;
        let dim_u = r.iter().sum();
        Ok(BasicCurve { p, f, d, n, m, s_start, r, genus, dim_v, dim_u })
    }

    /// Parses `f` in the polynomial text grammar and builds the curve.
    pub fn parse(p: u32, f: &str) -> Result<Self> {
        BasicCurve::new(p, &FpPoly::parse(p, f)?)
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    /// The normalized defining polynomial.
    pub fn f(&self) -> &FpPoly {
        &self.f
    }

    /// Ramification invariant above infinity, `deg f`.
    pub fn d(&self) -> u64 {
        self.d
    }

    /// `n_i = ⌈(p-1-i)d/p⌉ - 2`, the regularity bound on level `i`.
    pub fn n(&self) -> &[i64] {
        &self.n
    }

    /// `m_i = (p-1-i)d - 2`, the largest exponent `γ` can produce on level `i`.
    pub fn m(&self) -> &[i64] {
        &self.m
    }

    /// First obstruction exponent on each level, `None` when `r_i = 0`.
    pub fn s_start(&self) -> &[Option<i64>] {
        &self.s_start
    }

    /// Number of exponents `s ≡ -1 (mod p)` with `n_i < s <= m_i`.
    pub fn r(&self) -> &[usize] {
        &self.r
    }

    pub fn genus(&self) -> usize {
        self.genus
    }

    pub fn dim_v(&self) -> usize {
        self.dim_v
    }

    pub fn dim_u(&self) -> usize {
        self.dim_u
    }

    pub fn ramification(&self) -> RamificationData {
        RamificationData::new(self.p, vec![self.d]).expect("validated at construction")
    }

    pub fn lower_bound(&self) -> u64 {
        bounds::lower_bound(&self.ramification())
    }

    /// Index pairs `(level, exponent)` of the monomial basis of `V_f`:
    /// `0 <= j <= n_i` and `j ≢ -1 (mod p)`, level-major then ascending.
    pub fn v_basis(&self) -> Vec<(usize, usize)> {
        let p = self.p as usize;
        let mut out = Vec::with_capacity(self.dim_v);
        for (i, &ni) in self.n.iter().enumerate() {
            if ni < 0 {
                continue;
            }
            out.extend((0..=ni as usize).filter(|j| (j + 1) % p != 0).map(|j| (i, j)));
        }
        out
    }

    /// Index pairs `(level, exponent)` of the regular monomial differentials
    /// `x^j y^i dx`, `0 <= j <= n_i`.
    pub fn regular_basis(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::with_capacity(self.genus);
        for (i, &ni) in self.n.iter().enumerate() {
            if ni >= 0 {
                out.extend((0..=ni as usize).map(|j| (i, j)));
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn x11_over_f5() {
        let c = BasicCurve::parse(5, "x^11").unwrap();
        assert_eq!(c.n(), &[7, 5, 3, 1, -2]);
        assert_eq!(c.m(), &[42, 31, 20, 9, -2]);
        assert_eq!(c.r(), &[7, 5, 4, 2, 0]);
        assert_eq!(c.s_start(), &[Some(9), Some(9), Some(4), Some(4), None]);
        assert_eq!(c.genus(), 20);
        assert_eq!(c.dim_v(), 18);
        assert_eq!(c.dim_u(), 18);
        let basis = c.v_basis();
        assert_eq!(basis.len(), 18);
        let per_level: Vec<usize> = (0..5).map(|i| basis.iter().filter(|b| b.0 == i).count()).collect();
        assert_eq!(per_level, vec![7, 5, 4, 2, 0]);
        assert_eq!(c.regular_basis().len(), 20);
    }

    #[test]
    fn generic_5n_plus_1() {
        for n in 1..12i64 {
            let c = BasicCurve::new(5, &FpPoly::monomial(5, 1, (5 * n + 1) as usize)).unwrap();
            assert_eq!(c.n(), &[4 * n - 1, 3 * n - 1, 2 * n - 1, n - 1, -2]);
        }
        assert_eq!(BasicCurve::parse(5, "x^26").unwrap().dim_v(), 40);
    }

    #[test]
    fn degenerate_curves() {
        let c = BasicCurve::parse(3, "x^2").unwrap();
        assert_eq!(c.n(), &[0, -1, -2]);
        assert_eq!(c.v_basis(), vec![(0, 0)]);
        assert_eq!(c.genus(), 1);
        // one obstruction slot, x^2 dx on level 0, that γ never reaches
        assert_eq!(c.r(), &[1, 0, 0]);
        assert_eq!(c.dim_u(), 1);

        let c = BasicCurve::parse(7, "x").unwrap();
        assert_eq!(c.genus(), 0);
        assert_eq!(c.dim_v(), 0);
        assert_eq!(c.dim_u(), 0);
        assert!(c.v_basis().is_empty());
        assert!(c.s_start().iter().all(Option::is_none));
    }

    #[test]
    fn construction_errors() {
        assert_eq!(BasicCurve::parse(3, "2"), Err(Error::SplitCover));
        assert_eq!(BasicCurve::parse(3, "x^3 + 2*x"), Err(Error::SplitCover));
        assert!(matches!(BasicCurve::parse(6, "x"), Err(Error::NotPrime(6))));
        // x^3 normalizes to x
        assert_eq!(BasicCurve::parse(3, "x^3").unwrap().d(), 1);
    }

    #[test]
    fn last_level_is_always_empty() {
        for p in [2u32, 3, 5, 7, 11] {
            for d in (1..40u64).filter(|d| d % p as u64 != 0) {
                let c = BasicCurve::new(p, &FpPoly::monomial(p, 1, d as usize)).unwrap();
                assert_eq!(c.n()[p as usize - 1], -2);
                assert_eq!(c.r()[p as usize - 1], 0);
            }
        }
    }
}
