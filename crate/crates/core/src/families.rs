//! Explicit polynomials `f` whose curves `y^p - y = f` attain the lower
//! bound `L({d})`, for `p = 3` and `p = 5`.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::anumber::a_number_fast;
use crate::bounds::lower_bound_single;
use crate::curve::BasicCurve;
use crate::error::{Error, Result};
use crate::fppoly::FpPoly;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum FamilyStrategy {
    P3,
    P5Binomial,
    P5Trinomial25,
    P5Mod5,
    SmallD,
}

impl fmt::Display for FamilyStrategy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            FamilyStrategy::P3 => "p3",
            FamilyStrategy::P5Binomial => "p5_binomial",
            FamilyStrategy::P5Trinomial25 => "p5_trinomial25",
            FamilyStrategy::P5Mod5 => "p5_mod5",
            FamilyStrategy::SmallD => "small_d",
        };
        f.write_str(s)
    }
}

/// `δ -> δ'` for the binomial `x^{25m+δ} + x^{15m+δ'}`, `d = 25m + δ`.
/// `None` marks residues where no binomial works.
const BINOMIAL_DELTA_PRIME: [(u64, Option<u64>); 20] = [
    (1, Some(3)),
    (2, Some(1)),
    (3, None),
    (4, Some(2)),
    (6, Some(3)),
    (7, None),
    (8, Some(4)),
    (9, None),
    (11, Some(8)),
    (12, Some(6)),
    (13, Some(9)),
    (14, Some(7)),
    (16, None),
    (17, Some(11)),
    (18, None),
    (19, Some(12)),
    (21, Some(13)),
    (22, None),
    (23, Some(14)),
    (24, Some(12)),
];

/// `δ -> (δ', δ'')` for the trinomial `x^{25m+δ} + x^{15m+δ'} + x^{5m+δ''}`
/// on the residues the binomials miss.
const TRINOMIAL_DELTAS: [(u64, i64, i64); 6] = [
    (3, 4, 1),
    (7, 6, 3),
    (9, 7, 3),
    (16, 14, -1),
    (18, 14, 6),
    (22, 1, 3),
];

fn check_d(p: u32, d: u64) -> Result<()> {
    if d == 0 {
        return Err(Error::Argument("d must be positive".into()));
    }
    if d.is_multiple_of(p as u64) {
        return Err(Error::DivisibleByP { p, d });
    }
    Ok(())
}

/// Sum of monomials with unit coefficients, or `None` if an exponent is
/// negative or would raise the degree above `d`.
fn sum_of_monomials(p: u32, d: u64, exps: &[i64]) -> Option<FpPoly> {
    if exps.iter().any(|&e| e < 0 || e as u64 > d) {
        return None;
    }
    let terms: Vec<(i64, usize)> = exps.iter().map(|&e| (1, e as usize)).collect();
    Some(FpPoly::from_terms(p, &terms))
}

/// `x^d + x^{d-b_2}` for `d ≡ 1 (mod 3)` and `x^d + x^{d-b_0-1}` for
/// `d ≡ 2 (mod 3)`.
pub fn family_p3(d: u64) -> Result<FpPoly> {
    check_d(3, d)?;
    let di = d as i64;
    let c3 = (di + 2) / 3;
    let ceil3 = |a: i64| -((-a).div_euclid(3));
    let second = if d % 3 == 1 {
        let b2 = 3 * ceil3(c3 - 1) - 1;
        di - b2
    } else {
        let b0 = 3 * ceil3(c3 - 2);
        di - b0 - 1
    };
    // d = 1 gives b_2 = -1; the genus-0 cover x is used instead
    Ok(sum_of_monomials(3, d, &[di, second]).unwrap_or_else(|| FpPoly::monomial(3, 1, d as usize)))
}

/// Binomial family for `p = 5`, or `None` on the excluded residues mod 25.
pub fn family_p5_binomial(d: u64) -> Result<Option<FpPoly>> {
    check_d(5, d)?;
    let (m, delta) = ((d / 25) as i64, d % 25);
    let entry = BINOMIAL_DELTA_PRIME.iter().find(|(k, _)| *k == delta).and_then(|(_, v)| *v);
    Ok(entry.and_then(|dp| sum_of_monomials(5, d, &[d as i64, 15 * m + dp as i64])))
}

/// Trinomial family for `p = 5` on `δ ∈ {3, 7, 9, 16, 18, 22}`; `None`
/// elsewhere and wherever an exponent falls outside `0..=d`.
pub fn family_p5_trinomial25(d: u64) -> Result<Option<FpPoly>> {
    check_d(5, d)?;
    let (m, delta) = ((d / 25) as i64, d % 25);
    Ok(TRINOMIAL_DELTAS
        .iter()
        .find(|(k, _, _)| *k == delta)
        .and_then(|&(_, dp, dpp)| sum_of_monomials(5, d, &[d as i64, 15 * m + dp, 5 * m + dpp])))
}

/// The trinomial family indexed by `d mod 5`, with `x`, `x^2`, `x^3 + x^2`,
/// `x^4` for `d <= 4`.
pub fn family_p5_mod5(d: u64) -> Result<FpPoly> {
    check_d(5, d)?;
    let small = |exps: &[usize]| FpPoly::from_terms(5, &exps.iter().map(|&e| (1, e)).collect::<Vec<_>>());
    if d <= 4 {
        return Ok(match d {
            1 => small(&[1]),
            2 => small(&[2]),
            3 => small(&[3, 2]),
            _ => small(&[4]),
        });
    }
    let n = (d / 5) as i64;
    let exps: [i64; 3] = match d % 5 {
        1 => [5 * n + 1, 5 * n - 1, 5 * n - 5 * ((n + 2) * 2 / 5) + 4],
        2 => [5 * n + 2, 5 * n + 1, 5 * n - 5 * ((n - 1) * 2 / 5) - 1],
        3 => [5 * n + 3, 5 * n + 2, 5 * n - 5 * ((n - 1) * 2 / 5) - 1],
        _ => [5 * n + 4, 5 * n + 2, 5 * n - 5 * ((n + 1) * 2 / 5) + 3],
    };
    let terms: Vec<(i64, usize)> = exps.iter().map(|&e| (1, e as usize)).collect();
    Ok(FpPoly::from_terms(5, &terms))
}

/// The first applicable family polynomial for `(p, d)` and its strategy.
/// For `p = 5` the order is binomial, then trinomial mod 25, then the
/// mod-5 families.
pub fn family_polynomial(p: u32, d: u64) -> Result<(FpPoly, FamilyStrategy)> {
    Ok(family_candidates(p, d)?.swap_remove(0))
}

/// Every applicable family polynomial for `(p, d)`, in fallback order.
pub fn family_candidates(p: u32, d: u64) -> Result<Vec<(FpPoly, FamilyStrategy)>> {
    match p {
        3 => Ok(vec![(family_p3(d)?, FamilyStrategy::P3)]),
        5 => {
            let mut out = Vec::new();
            if let Some(f) = family_p5_binomial(d)? {
                out.push((f, FamilyStrategy::P5Binomial));
            }
            if let Some(f) = family_p5_trinomial25(d)? {
                out.push((f, FamilyStrategy::P5Trinomial25));
            }
            let strategy = if d <= 4 { FamilyStrategy::SmallD } else { FamilyStrategy::P5Mod5 };
            out.push((family_p5_mod5(d)?, strategy));
            Ok(out)
        }
        _ => Err(Error::UnsupportedFamilyPrime(p)),
    }
}

/// A family polynomial that was tried and missed the bound.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RejectedCandidate {
    pub strategy: FamilyStrategy,
    pub f: String,
    pub a: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FamilyVerification {
    pub p: u32,
    pub d: u64,
    pub f: String,
    pub strategy: FamilyStrategy,
    pub a: usize,
    pub lower_bound: u64,
    pub ok: bool,
    /// Earlier candidates in the fallback order that missed the bound.
    pub rejected: Vec<RejectedCandidate>,
}

/// Checks a given family polynomial against `L({d})`.
pub fn verify_polynomial(p: u32, d: u64, f: &FpPoly, strategy: FamilyStrategy) -> Result<FamilyVerification> {
    let curve = BasicCurve::new(p, f)?;
    if curve.d() != d {
        return Err(Error::Argument(format!("family polynomial {f} has degree {} instead of {d}", curve.d())));
    }
    let a = a_number_fast(&curve);
    let lower_bound = lower_bound_single(p, d)?;
    Ok(FamilyVerification {
        p,
        d,
        f: curve.f().to_string(),
        strategy,
        a,
        lower_bound,
        ok: a as u64 == lower_bound,
        rejected: Vec::new(),
    })
}

/// Tries the family candidates in fallback order and returns the first one
/// whose a-number equals `L({d})`, or the last one tried if none does.
pub fn verify_family(p: u32, d: u64) -> Result<FamilyVerification> {
    let mut rejected = Vec::new();
    let mut candidates = family_candidates(p, d)?.into_iter().peekable();
    while let Some((f, strategy)) = candidates.next() {
        let mut v = verify_polynomial(p, d, &f, strategy)?;
        if v.ok || candidates.peek().is_none() {
            v.rejected = rejected;
            return Ok(v);
        }
        rejected.push(RejectedCandidate { strategy, f: v.f, a: v.a });
    }
    unreachable!("every admissible (p, d) has at least one candidate")
}
