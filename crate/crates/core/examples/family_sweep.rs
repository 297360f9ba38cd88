//! Verifies the explicit families against the lower bound for every
//! admissible `d` up to a limit.
//!
//! ```bash
//! cargo run --release --example family_sweep -- 5 200
//! ```

use std::time::Instant;

use asnum::families::verify_family;
use rayon::prelude::*;

fn main() {
    let args: Vec<u64> = std::env::args().skip(1).map(|a| a.parse().expect("integer argument")).collect();
    let p = args.first().copied().unwrap_or(3) as u32;
    let dmax = args.get(1).copied().unwrap_or(100);
    let start = Instant::now();
    let ds: Vec<u64> = (1..=dmax).filter(|d| d % p as u64 != 0).collect();
    let results: Vec<_> = ds.par_iter().map(|&d| verify_family(p, d).expect("valid d")).collect();
    let mut failures = 0;
    for v in &results {
        if !v.ok {
            failures += 1;
            println!("d={:>4} {:<15} f={} a={} L={} FAIL", v.d, v.strategy.to_string(), v.f, v.a, v.lower_bound);
        }
    }
    println!(
        "p={p}: {}/{} families attain L({{d}}) for d <= {dmax} ({:.1?})",
        results.len() - failures,
        results.len(),
        start.elapsed()
    );
}
