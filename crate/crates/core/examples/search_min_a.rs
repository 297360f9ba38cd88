//! Smallest a-number over all covers of degree `d` when the space is small
//! enough, otherwise over random samples.
//!
//! ```bash
//! cargo run --release --example search_min_a -- 3 8
//! ```

use asnum::experiments::{min_a_exhaustive, min_a_random, sample_space_size, DEFAULT_EXHAUSTIVE_CAP};

fn main() {
    let args: Vec<u64> = std::env::args().skip(1).map(|a| a.parse().expect("integer argument")).collect();
    let p = args.first().copied().unwrap_or(3) as u32;
    let d = args.get(1).copied().unwrap_or(8);
    let size = sample_space_size(p, d);
    let r = match size {
        Some(s) if s <= DEFAULT_EXHAUSTIVE_CAP => min_a_exhaustive(p, d, DEFAULT_EXHAUSTIVE_CAP),
        _ => min_a_random(p, d, 5000, 1),
    }
    .expect("valid p and d");
    let over = if r.exhaustive { format!("all {}", r.candidates_tested) } else { format!("{} random", r.candidates_tested) };
    println!("p={p} d={d}: min a = {} over {over} covers, L = {}", r.min_a, r.lower_bound);
    println!("witness y^{p} - y = {}", r.witness);
}
