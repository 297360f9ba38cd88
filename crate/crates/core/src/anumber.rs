//! a-numbers of basic Artin-Schreier curves, two ways.
//!
//! The fast route builds the obstruction map `ψ_f : V_f -> U_f` and takes
//! the dimension of its kernel. The oracle route writes down the full
//! `g x g` Cartier matrix on regular differentials and takes its nullity.
//! The two share nothing beyond polynomial arithmetic and powers of `f`.

use std::fmt;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::curve::BasicCurve;
use crate::error::{Error, Result};
use crate::fppoly::{binomial_mod, mul_mod, sub_mod, Differential1, FpPoly};
use crate::linalg::{mat_pow, rank_nullity, FpMatrix};

/// An element `ν = (ν_0, …, ν_{p-1})` of `V_f`: each `ν_i` is killed by the
/// Cartier operator and has degree at most `n_i`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VElement {
    nu: Vec<Differential1>,
}

impl VElement {
    pub fn new(curve: &BasicCurve, nu: Vec<Differential1>) -> Result<Self> {
        let p = curve.p() as usize;
        if nu.len() != p {
            return Err(Error::Argument(format!("expected {p} components, got {}", nu.len())));
        }
        for (i, w) in nu.iter().enumerate() {
            if w.p() != curve.p() {
                return Err(Error::Argument("component over the wrong field".into()));
            }
            if let Some(deg) = w.h().degree() {
                if deg as i64 > curve.n()[i] {
                    return Err(Error::Argument(format!("component {i} has degree {deg} > n_{i} = {}", curve.n()[i])));
                }
            }
            if let Some((j, _)) = w.h().terms().find(|(j, _)| (j + 1) % p == 0) {
                return Err(Error::Argument(format!("component {i} has a term x^{j} dx outside the Cartier kernel")));
            }
        }
        Ok(VElement { nu })
    }

    /// The basis element with `x^j dx` in component `level`.
    pub fn unit(curve: &BasicCurve, level: usize, j: usize) -> Result<Self> {
        let p = curve.p();
        let mut nu = vec![Differential1::zero(p); p as usize];
        nu[level] = Differential1::monomial(p, 1, j);
        VElement::new(curve, nu)
    }

    /// Combination `Σ c_k e_k` of the `v_basis` elements.
    pub fn from_basis_coords(curve: &BasicCurve, coords: &[u32]) -> Result<Self> {
        let basis = curve.v_basis();
        if coords.len() != basis.len() {
            return Err(Error::Argument("coordinate vector has the wrong length".into()));
        }
        let p = curve.p();
        let mut terms: Vec<Vec<(i64, usize)>> = vec![Vec::new(); p as usize];
        for (&(i, j), &c) in basis.iter().zip(coords) {
            terms[i].push((c as i64, j));
        }
        let nu = terms.iter().map(|t| Differential1(FpPoly::from_terms(p, t))).collect();
        VElement::new(curve, nu)
    }

    pub fn components(&self) -> &[Differential1] {
        &self.nu
    }
}

/// `ω = Σ_i ω_i y^i` on the curve; not necessarily regular.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CurveDifferential {
    omega: Vec<Differential1>,
}

impl CurveDifferential {
    pub fn new(omega: Vec<Differential1>) -> Self {
        CurveDifferential { omega }
    }

    pub fn components(&self) -> &[Differential1] {
        &self.omega
    }

    pub fn is_zero(&self) -> bool {
        self.omega.iter().all(Differential1::is_zero)
    }
}

impl fmt::Display for CurveDifferential {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        for (i, w) in self.omega.iter().enumerate().rev() {
            for (j, c) in w.h().terms().collect::<Vec<_>>().into_iter().rev() {
                let mut s = String::new();
                if c != 1 {
                    s.push_str(&c.to_string());
                }
                match j {
                    0 => {}
                    1 => s.push('x'),
                    j => s.push_str(&format!("x^{j}")),
                }
                match i {
                    0 => {}
                    1 => s.push('y'),
                    i => s.push_str(&format!("y^{i}")),
                }
                if s.is_empty() {
                    s.push_str("dx");
                } else {
                    s.push_str(" dx");
                }
                parts.push(s);
            }
        }
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join(" + "))
        }
    }
}

/// Powers `(-f)^k`, `0 <= k < p`, with their terms bucketed by exponent
/// residue mod `p`.
struct NegFPowers {
    by_residue: Vec<Vec<Vec<(usize, u32)>>>,
    dense: Vec<FpPoly>,
}

impl NegFPowers {
    fn new(curve: &BasicCurve) -> Self {
        let p = curve.p();
        let neg_f = -curve.f();
        let mut dense = vec![FpPoly::monomial(p, 1, 0)];
        for k in 1..p as usize {
            let next = &dense[k - 1] * &neg_f;
            dense.push(next);
        }
        let by_residue = dense
            .iter()
            .map(|q| {
                let mut buckets = vec![Vec::new(); p as usize];
                for (e, c) in q.terms() {
                    buckets[e % p as usize].push((e, c));
                }
                buckets
            })
            .collect();
        NegFPowers { by_residue, dense }
    }
}

/// Reconstruction `γ_f` for a fixed curve; reuses the powers of `f`.
struct Reconstructor<'a> {
    curve: &'a BasicCurve,
    powers: NegFPowers,
    binom: Vec<Vec<u32>>,
}

impl<'a> Reconstructor<'a> {
    fn new(curve: &'a BasicCurve) -> Self {
        let p = curve.p();
        let binom = (0..p).map(|j| (0..p).map(|t| binomial_mod(j, t, p)).collect()).collect();
        Reconstructor { curve, powers: NegFPowers::new(curve), binom }
    }

    /// Levels from the top down:
    /// `ω_{p-1} = ν_{p-1}`,
    /// `ω_t = ν_t + s(C(-Σ_{j>t} C(j,t) ω_j (-f)^{j-t}))`.
    fn gamma(&self, nu: &[Differential1]) -> Vec<Differential1> {
        let p = self.curve.p();
        let pu = p as usize;
        let pw = p as u64;
        let mut omega: Vec<Differential1> = vec![Differential1::zero(p); pu];
        omega[pu - 1] = nu[pu - 1].clone();
        for t in (0..pu - 1).rev() {
            let top = self.curve.m()[t].max(0) as usize;
            let mut acc: Vec<u64> = Vec::new();
            for j in t + 1..pu {
                let b = self.binom[j][t];
                if b == 0 || omega[j].is_zero() {
                    continue;
                }
                // minus sign folded into the binomial
                let scale = sub_mod(0, b, p);
                let buckets = &self.powers.by_residue[j - t];
                for (a, c) in omega[j].h().terms() {
                    let want = (pu - 1 + pu - a % pu) % pu;
                    let ca = mul_mod(scale, c, p) as u64;
                    for &(e, fc) in &buckets[want] {
                        let k = a + e;
                        debug_assert!(k <= top, "γ produced exponent {k} above m_{t} = {top}");
                        if acc.len() <= k {
                            acc.resize(k + 1, 0);
                        }
                        acc[k] = (acc[k] + ca * fc as u64) % pw;
                    }
                }
            }
            let correction = FpPoly::from_residues(p, acc.into_iter().map(|v| v as u32).collect());
            omega[t] = Differential1(nu[t].h() + &correction);
        }
        omega
    }

    fn psi_of(&self, omega: &[Differential1]) -> Vec<u32> {
        let c = self.curve;
        let p = c.p() as usize;
        let mut out = Vec::with_capacity(c.dim_u());
        for (i, w) in omega.iter().enumerate() {
            if let Some(s) = c.s_start()[i] {
                out.extend((0..c.r()[i]).map(|t| w.h().coeff(s as usize + t * p)));
            }
        }
        out
    }
}

/// `γ_f(ν)`.
pub fn gamma(curve: &BasicCurve, v: &VElement) -> CurveDifferential {
    CurveDifferential::new(Reconstructor::new(curve).gamma(&v.nu))
}

/// True iff `deg ω_i <= n_i` on every level.
pub fn is_regular(curve: &BasicCurve, w: &CurveDifferential) -> bool {
    w.omega
        .iter()
        .zip(curve.n())
        .all(|(wi, &ni)| wi.h().degree().is_none_or(|deg| deg as i64 <= ni))
}

/// `ψ_f(ν)`: the coefficients of `x^{s_i + tp}` in `ω_i`, level-major.
pub fn psi(curve: &BasicCurve, v: &VElement) -> Vec<u32> {
    let rec = Reconstructor::new(curve);
    rec.psi_of(&rec.gamma(&v.nu))
}

/// The `dim U x dim V` matrix of `ψ_f`, columns in `v_basis` order.
pub fn psi_matrix(curve: &BasicCurve) -> FpMatrix {
    let rec = Reconstructor::new(curve);
    let p = curve.p();
    let columns: Vec<Vec<u32>> = curve
        .v_basis()
        .into_par_iter()
        .map(|(i, j)| {
            let mut nu = vec![Differential1::zero(p); p as usize];
            nu[i] = Differential1::monomial(p, 1, j);
            rec.psi_of(&rec.gamma(&nu))
        })
        .collect();
    FpMatrix::from_columns(p, curve.dim_u(), &columns)
}

/// `dim ker ψ_f`.
pub fn a_number_fast(curve: &BasicCurve) -> usize {
    rank_nullity(&psi_matrix(curve)).1
}

/// Matrix of the Cartier operator of the curve on the monomial basis
/// `x^j y^i dx`, `0 <= j <= n_i`, of regular differentials.
///
/// Uses `C(x^a y^i dx) = Σ_t C(i,t) y^t C(x^a (-f)^{i-t} dx)`, which comes
/// from `y = y^p - f`.
pub fn cartier_matrix_full(curve: &BasicCurve) -> FpMatrix {
    let p = curve.p();
    let pu = p as usize;
    let powers = NegFPowers::new(curve);
    let basis = curve.regular_basis();
    let g = basis.len();
    let offsets: Vec<usize> = (0..pu).map(|t| curve.n()[..t].iter().map(|&n| (n + 1).max(0) as usize).sum()).collect();
    let columns: Vec<Vec<u32>> = basis
        .par_iter()
        .map(|&(i, a)| {
            let mut col = vec![0u32; g];
            for t in 0..=i {
                let b = binomial_mod(i as u32, t as u32, p);
                if b == 0 {
                    continue;
                }
                for (e, c) in powers.dense[i - t].terms() {
                    let k = a + e;
                    if (k + 1) % pu != 0 {
                        continue;
                    }
                    let target = (k + 1) / pu - 1;
                    assert!(
                        target as i64 <= curve.n()[t],
                        "Cartier image left the regular differentials: x^{target} y^{t} dx with n_{t} = {}",
                        curve.n()[t]
                    );
                    let slot = &mut col[offsets[t] + target];
                    *slot = (*slot + mul_mod(b, c, p)) % p;
                }
            }
            col
        })
        .collect();
    FpMatrix::from_columns(p, g, &columns)
}

/// Nullity of the full Cartier matrix.
pub fn a_number_oracle(curve: &BasicCurve) -> usize {
    rank_nullity(&cartier_matrix_full(curve)).1
}

/// Stable rank of the Cartier matrix, `rank(M^g)`. Coefficients lie in
/// `F_p`, so the Frobenius twist of the semilinear iterate is trivial.
pub fn p_rank(curve: &BasicCurve) -> usize {
    let m = cartier_matrix_full(curve);
    mat_pow(&m, curve.genus() as u64).expect("Cartier matrix is square").rank()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Method {
    Fast,
    Oracle,
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Method::Fast => write!(f, "fast"),
            Method::Oracle => write!(f, "oracle"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ANumberReport {
    pub p: u32,
    pub f: String,
    pub d: u64,
    pub a: usize,
    pub method: Method,
    pub genus: usize,
    pub p_rank: usize,
    pub lower_bound: u64,
    pub dim_v: usize,
    pub dim_u: usize,
}

pub fn a_number(curve: &BasicCurve, method: Method) -> usize {
    match method {
        Method::Fast => a_number_fast(curve),
        Method::Oracle => a_number_oracle(curve),
    }
}

pub fn report(curve: &BasicCurve, method: Method) -> ANumberReport {
    ANumberReport {
        p: curve.p(),
        f: curve.f().to_string(),
        d: curve.d(),
        a: a_number(curve, method),
        method,
        genus: curve.genus(),
        p_rank: p_rank(curve),
        lower_bound: curve.lower_bound(),
        dim_v: curve.dim_v(),
        dim_u: curve.dim_u(),
    }
}

impl fmt::Display for ANumberReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "curve: y^{} - y = {}", self.p, self.f)?;
        writeln!(f, "method: {}", self.method)?;
        writeln!(f, "d: {}", self.d)?;
        writeln!(f, "genus: {}", self.genus)?;
        writeln!(f, "p-rank: {}", self.p_rank)?;
        writeln!(f, "a-number: {}", self.a)?;
        writeln!(f, "lower bound: {}", self.lower_bound)?;
        writeln!(f, "dim V: {}", self.dim_v)?;
        write!(f, "dim U: {}", self.dim_u)
    }
}
