//! Samples random covers of a fixed degree and prints the a-number
//! histogram, optionally writing CSV.
//!
//! ```bash
//! cargo run --release --example distribution -- 3 17 10000 1 /tmp/a.csv
//! ```

use asnum::experiments::distribution;

fn main() {
    let args: Vec<String> = std::env::args().skip(1).collect();
    let num = |k: usize, default: u64| args.get(k).map_or(default, |s| s.parse().expect("integer argument"));
    let (p, d, n, seed) = (num(0, 5) as u32, num(1, 11), num(2, 2000), num(3, 1));
    let dist = distribution(p, d, n, seed).expect("valid p and d");
    println!("p={p} d={d} samples={n} seed={seed} L={} ({} ms)", dist.lower_bound(), dist.elapsed_ms);
    print!("{}", dist.histogram());
    println!("at lower bound: {:.4}", dist.at_bound_fraction());
    if let Some(path) = args.get(4) {
        std::fs::write(path, dist.to_csv()).expect("writable path");
        println!("wrote {path}");
    }
}
