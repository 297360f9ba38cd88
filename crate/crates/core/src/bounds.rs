//! The combinatorial lower bound `L(D)` for the a-number of a `Z/pZ`-cover
//! with ramification invariants `D`, and the quantities it is built from.
//!
//! All floors are taken on exact integers. `τ_{i,j}` has denominator `p`,
//! so `τ_{i,j}/p` is handled as a numerator over `p²`.

use num_rational::Ratio;

use crate::error::{check_prime, Error, Result};

pub type Rational = Ratio<i64>;

/// Ramification data `D = {d_Q}` of a cover, one entry per branch point.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RamificationData {
    p: u32,
    invariants: Vec<u64>,
}

impl RamificationData {
    pub fn new(p: u32, invariants: Vec<u64>) -> Result<Self> {
        check_prime(p)?;
        if invariants.is_empty() {
            return Err(Error::EmptyBranchLocus);
        }
        for &d in &invariants {
            check_invariant(p, d)?;
        }
        Ok(RamificationData { p, invariants })
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn invariants(&self) -> &[u64] {
        &self.invariants
    }
}

fn check_invariant(p: u32, d: u64) -> Result<()> {
    if d == 0 {
        return Err(Error::Argument("ramification invariant must be positive".into()));
    }
    if d.is_multiple_of(p as u64) {
        return Err(Error::DivisibleByP { p, d });
    }
    Ok(())
}

fn check_indices(p: u32, i: u32, j: u32) -> Result<()> {
    if j > p - 1 || i < j || i > p - 1 {
        return Err(Error::Argument(format!("need 0 <= j <= i <= p-1, got i = {i}, j = {j}, p = {p}")));
    }
    Ok(())
}

/// `τ_{i,j} = id - (1 - 1/p) dj`.
pub fn tau(p: u32, d: u64, i: u32, j: u32) -> Result<Rational> {
    check_prime(p)?;
    check_invariant(p, d)?;
    check_indices(p, i, j)?;
    let (p, d, i, j) = (p as i64, d as i64, i as i64, j as i64);
    Ok(Rational::new(p * i * d - (p - 1) * d * j, p))
}

/// `L_{i,j} = ⌊id/p⌋ - ⌊τ_{i,j}/p⌋`.
pub fn l_ij(p: u32, d: u64, i: u32, j: u32) -> Result<u64> {
    check_prime(p)?;
    check_invariant(p, d)?;
    check_indices(p, i, j)?;
    Ok(l_ij_unchecked(p as i64, d as i64, i as i64, j as i64))
}

fn l_ij_unchecked(p: i64, d: i64, i: i64, j: i64) -> u64 {
    let tau_over_p_num = p * i * d - (p - 1) * d * j;
    let v = (i * d).div_euclid(p) - tau_over_p_num.div_euclid(p * p);
    debug_assert!(v >= 0);
    v as u64
}

/// `L_j({d}) = Σ_{i=j}^{p-1} L_{i,j}({d})`.
pub fn l_j(p: u32, d: u64, j: u32) -> Result<u64> {
    check_prime(p)?;
    check_invariant(p, d)?;
    check_indices(p, j, j)?;
    Ok(l_j_unchecked(p as i64, d as i64, j as i64))
}

fn l_j_unchecked(p: i64, d: i64, j: i64) -> u64 {
    (j..p).map(|i| l_ij_unchecked(p, d, i, j)).sum()
}

/// The index at which `L_j` is maximal: `(p-1)/2` for odd `p`, `1` for `p = 2`.
pub fn maximizing_j(p: u32) -> u32 {
    if p == 2 {
        1
    } else {
        (p - 1) / 2
    }
}

/// `L({d})` for a single branch point.
pub fn lower_bound_single(p: u32, d: u64) -> Result<u64> {
    l_j(p, d, maximizing_j(p))
}

/// `L(D)`, evaluated additively over the branch points.
pub fn lower_bound(data: &RamificationData) -> u64 {
    let p = data.p as i64;
    let j = maximizing_j(data.p) as i64;
    data.invariants.iter().map(|&d| l_j_unchecked(p, d as i64, j)).sum()
}

/// `L(D)` in its defining form `max_{1<=j<=p-1} Σ_Q L_j({d_Q})`.
pub fn lower_bound_max_form(data: &RamificationData) -> u64 {
    let p = data.p as i64;
    (1..p)
        .map(|j| data.invariants.iter().map(|&d| l_j_unchecked(p, d as i64, j)).sum::<u64>())
        .max()
        .unwrap_or(0)
}

fn ceil_div(a: i64, b: i64) -> i64 {
    -((-a).div_euclid(b))
}

/// `⌈2d/3⌉ + ⌈d/3⌉ - ⌈d/9⌉ - ⌈4d/9⌉`, which equals `L({d})` when `p = 3`.
pub fn lower_bound_p3_closed_form(d: u64) -> Result<u64> {
    check_invariant(3, d)?;
    let d = d as i64;
    Ok((ceil_div(2 * d, 3) + ceil_div(d, 3) - ceil_div(d, 9) - ceil_div(4 * d, 9)) as u64)
}

/// `9n - (⌊2n/5⌋ + ⌊(7n+1)/5⌋ + ⌊(12n+2)/5⌋)`, which equals `L({5n+1})`
/// when `p = 5`.
pub fn lower_bound_p5_5n1_closed_form(n: u64) -> Result<u64> {
    if n == 0 {
        return Err(Error::Argument("n must be positive".into()));
    }
    let n = n as i64;
    Ok((9 * n - (2 * n / 5 + (7 * n + 1) / 5 + (12 * n + 2) / 5)) as u64)
}
