use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("{0} is not a supported prime")]
    NotPrime(u32),

    #[error("argument out of range: {0}")]
    Argument(String),

    #[error("ramification invariant {d} is divisible by p = {p}")]
    DivisibleByP { p: u32, d: u64 },

    #[error("empty branch locus")]
    EmptyBranchLocus,

    #[error("cover is split: f is of the form a^p - a")]
    SplitCover,

    #[error("cannot parse polynomial {input:?}: {reason}")]
    Parse { input: String, reason: String },

    #[error("matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },

    #[error("search space of {size} candidates exceeds the cap of {cap}; use random search instead")]
    SearchTooLarge { size: u128, cap: u128 },

    #[error("family not available for p = {0}")]
    UnsupportedFamilyPrime(u32),
}

pub type Result<T> = std::result::Result<T, Error>;

/// Primes up to this bound are accepted; keeps every product of two
/// residues comfortably inside `u64`.
pub const MAX_PRIME: u32 = 65_521;

pub fn is_prime(n: u32) -> bool {
    if n < 2 {
        return false;
    }
    let mut k = 2u32;
    while k.saturating_mul(k) <= n {
        if n.is_multiple_of(k) {
            return false;
        }
        k += 1;
    }
    true
}

pub fn check_prime(p: u32) -> Result<()> {
    if is_prime(p) && p <= MAX_PRIME {
        Ok(())
    } else {
        Err(Error::NotPrime(p))
    }
}
