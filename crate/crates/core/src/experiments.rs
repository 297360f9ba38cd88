//! Random and exhaustive exploration of a-numbers over polynomials of a
//! fixed degree.
//!
//! Polynomials are drawn uniformly from the normalized representatives:
//! nonzero leading coefficient, no constant term and no monomial `x^{pe}`.
//! Sample `k` of a run with master seed `s` uses a ChaCha8 stream seeded
//! with `s` on stream `k`, so a tally does not depend on how samples are
//! spread over threads.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::time::Instant;

use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::anumber::a_number_fast;
use crate::bounds::lower_bound_single;
use crate::curve::BasicCurve;
use crate::error::{check_prime, Error, Result};
use crate::fppoly::FpPoly;

pub const SCHEMA_VERSION: u32 = 1;

pub const DEFAULT_EXHAUSTIVE_CAP: u128 = 1_000_000;

fn check_pd(p: u32, d: u64) -> Result<()> {
    check_prime(p)?;
    if d == 0 {
        return Err(Error::Argument("d must be positive".into()));
    }
    if d.is_multiple_of(p as u64) {
        return Err(Error::DivisibleByP { p, d });
    }
    Ok(())
}

/// Exponents `0 < e < d` with `p ∤ e`; their coefficients are free.
pub fn free_exponents(p: u32, d: u64) -> Vec<usize> {
    (1..d as usize).filter(|e| e % p as usize != 0).collect()
}

/// `(p-1) p^{#free}`, or `None` if it does not fit in a `u128`.
pub fn sample_space_size(p: u32, d: u64) -> Option<u128> {
    let free = free_exponents(p, d).len() as u32;
    (p as u128).checked_pow(free)?.checked_mul(p as u128 - 1)
}

/// The RNG for sample `index` of a run with master `seed`.
pub fn sample_rng(seed: u64, index: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index);
    rng
}

/// A uniformly random normalized polynomial of degree exactly `d`.
pub fn sample_f<R: Rng + ?Sized>(p: u32, d: u64, rng: &mut R) -> Result<FpPoly> {
    check_pd(p, d)?;
    let mut terms: Vec<(i64, usize)> = free_exponents(p, d)
        .into_iter()
        .map(|e| (rng.gen_range(0..p) as i64, e))
        .collect();
    terms.push((rng.gen_range(1..p) as i64, d as usize));
    Ok(FpPoly::from_terms(p, &terms))
}

/// The `index`-th normalized polynomial in a fixed enumeration order:
/// leading coefficient first, then free coefficients in base `p`.
fn nth_polynomial(p: u32, d: u64, free: &[usize], mut index: u128) -> FpPoly {
    let pw = p as u128;
    let lead = (index % (pw - 1)) as i64 + 1;
    index /= pw - 1;
    let mut terms = vec![(lead, d as usize)];
    for &e in free {
        terms.push(((index % pw) as i64, e));
        index /= pw;
    }
    FpPoly::from_terms(p, &terms)
}

fn a_number_of(p: u32, f: &FpPoly) -> usize {
    a_number_fast(&BasicCurve::new(p, f).expect("normalized sample of degree prime to p"))
}

/// Tally of a-numbers over random covers.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Distribution {
    pub schema_version: u32,
    pub p: u32,
    pub d: u64,
    pub n_samples: u64,
    pub seed: u64,
    pub counts: BTreeMap<usize, u64>,
    pub elapsed_ms: u64,
}

impl Distribution {
    pub fn lower_bound(&self) -> u64 {
        lower_bound_single(self.p, self.d).unwrap_or(0)
    }

    /// Fraction of samples whose a-number equals the lower bound.
    pub fn at_bound_fraction(&self) -> f64 {
        let at = self.counts.get(&(self.lower_bound() as usize)).copied().unwrap_or(0);
        at as f64 / self.n_samples as f64
    }

    pub fn min_a(&self) -> Option<usize> {
        self.counts.keys().next().copied()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("plain data serializes")
    }

    pub fn from_json(s: &str) -> Result<Self> {
        serde_json::from_str(s).map_err(|e| Error::Argument(format!("bad distribution JSON: {e}")))
    }

    /// `# key=value` metadata lines, then `a,count` rows.
    pub fn to_csv(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "# schema_version={}", self.schema_version);
        let _ = writeln!(out, "# p={}", self.p);
        let _ = writeln!(out, "# d={}", self.d);
        let _ = writeln!(out, "# n_samples={}", self.n_samples);
        let _ = writeln!(out, "# seed={}", self.seed);
        let _ = writeln!(out, "# lower_bound={}", self.lower_bound());
        let _ = writeln!(out, "# elapsed_ms={}", self.elapsed_ms);
        out.push_str("a,count\n");
        for (a, c) in &self.counts {
            let _ = writeln!(out, "{a},{c}");
        }
        out
    }

    pub fn from_csv(s: &str) -> Result<Self> {
        let bad = |why: String| Error::Argument(format!("bad distribution CSV: {why}"));
        let mut meta: BTreeMap<String, u64> = BTreeMap::new();
        let mut counts = BTreeMap::new();
        let mut seen_header = false;
        for line in s.lines().map(str::trim).filter(|l| !l.is_empty()) {
            if let Some(kv) = line.strip_prefix('#') {
                let (k, v) = kv.trim().split_once('=').ok_or_else(|| bad(format!("metadata line {line:?}")))?;
                let v = v.parse().map_err(|_| bad(format!("metadata value {v:?}")))?;
                meta.insert(k.to_string(), v);
            } else if line == "a,count" {
                seen_header = true;
            } else {
                let (a, c) = line.split_once(',').ok_or_else(|| bad(format!("row {line:?}")))?;
                let a = a.parse().map_err(|_| bad(format!("row {line:?}")))?;
                let c = c.parse().map_err(|_| bad(format!("row {line:?}")))?;
                counts.insert(a, c);
            }
        }
        if !seen_header {
            return Err(bad("missing a,count header".into()));
        }
        let get = |k: &str| meta.get(k).copied().ok_or_else(|| bad(format!("missing {k}")));
        Ok(Distribution {
            schema_version: get("schema_version")? as u32,
            p: get("p")? as u32,
            d: get("d")?,
            n_samples: get("n_samples")?,
            seed: get("seed")?,
            counts,
            elapsed_ms: get("elapsed_ms")?,
        })
    }

    /// One line per a-number with a bar scaled to the largest count.
    pub fn histogram(&self) -> String {
        let max = self.counts.values().copied().max().unwrap_or(1).max(1);
        let lb = self.lower_bound() as usize;
        let mut out = String::new();
        for (&a, &c) in &self.counts {
            let bar = "#".repeat((c * 50).div_ceil(max) as usize);
            let mark = if a == lb { " (lower bound)" } else { "" };
            let _ = writeln!(out, "a={a:>4} {c:>8} {:>6.2}% {bar}{mark}", 100.0 * c as f64 / self.n_samples as f64);
        }
        out
    }
}

/// Draws `n_samples` covers and tallies their a-numbers.
pub fn distribution(p: u32, d: u64, n_samples: u64, seed: u64) -> Result<Distribution> {
    check_pd(p, d)?;
    if n_samples == 0 {
        return Err(Error::Argument("need at least one sample".into()));
    }
    let start = Instant::now();
    let counts = (0..n_samples)
        .into_par_iter()
        .map(|k| {
            let f = sample_f(p, d, &mut sample_rng(seed, k)).expect("checked above");
            a_number_of(p, &f)
        })
        .fold(BTreeMap::new, |mut m: BTreeMap<usize, u64>, a| {
            *m.entry(a).or_default() += 1;
            m
        })
        .reduce(BTreeMap::new, |mut x, y| {
            for (a, c) in y {
                *x.entry(a).or_default() += c;
            }
            x
        });
    Ok(Distribution {
        schema_version: SCHEMA_VERSION,
        p,
        d,
        n_samples,
        seed,
        counts,
        elapsed_ms: start.elapsed().as_millis() as u64,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchResult {
    pub p: u32,
    pub d: u64,
    pub min_a: usize,
    pub witness: String,
    pub exhaustive: bool,
    pub candidates_tested: u128,
    pub lower_bound: u64,
}

impl SearchResult {
    pub fn witness_poly(&self) -> FpPoly {
        FpPoly::parse(self.p, &self.witness).expect("witness printed in the text grammar")
    }
}

/// Minimum a-number over every normalized `f` of degree `d`.
pub fn min_a_exhaustive(p: u32, d: u64, cap: u128) -> Result<SearchResult> {
    check_pd(p, d)?;
    let size = sample_space_size(p, d).unwrap_or(u128::MAX);
    if size > cap {
        return Err(Error::SearchTooLarge { size, cap });
    }
    let free = free_exponents(p, d);
    let (min_a, index) = (0..size as u64)
        .into_par_iter()
        .map(|k| (a_number_of(p, &nth_polynomial(p, d, &free, k as u128)), k))
        .min()
        .expect("search space is nonempty");
    Ok(SearchResult {
        p,
        d,
        min_a,
        witness: nth_polynomial(p, d, &free, index as u128).to_string(),
        exhaustive: true,
        candidates_tested: size,
        lower_bound: lower_bound_single(p, d)?,
    })
}

/// Minimum a-number over `n_samples` random covers; an upper bound on the
/// true minimum.
pub fn min_a_random(p: u32, d: u64, n_samples: u64, seed: u64) -> Result<SearchResult> {
    check_pd(p, d)?;
    if n_samples == 0 {
        return Err(Error::Argument("need at least one sample".into()));
    }
    let (min_a, index) = (0..n_samples)
        .into_par_iter()
        .map(|k| {
            let f = sample_f(p, d, &mut sample_rng(seed, k)).expect("checked above");
            (a_number_of(p, &f), k)
        })
        .min()
        .expect("at least one sample");
    let witness = sample_f(p, d, &mut sample_rng(seed, index))?;
    Ok(SearchResult {
        p,
        d,
        min_a,
        witness: witness.to_string(),
        exhaustive: false,
        candidates_tested: n_samples as u128,
        lower_bound: lower_bound_single(p, d)?,
    })
}
