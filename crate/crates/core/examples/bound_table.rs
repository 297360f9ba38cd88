//! Prints `L({d})` and the per-`j` sums `L_j` for a prime and a range of `d`.
//!
//! ```bash
//! cargo run --example bound_table -- 7 30
//! ```

use asnum::bounds::{l_j, lower_bound_single, maximizing_j};

fn main() {
    let args: Vec<u64> = std::env::args().skip(1).map(|a| a.parse().expect("integer argument")).collect();
    let p = args.first().copied().unwrap_or(5) as u32;
    let dmax = args.get(1).copied().unwrap_or(30);
    let mid = maximizing_j(p);
    print!("{:>5} {:>6} |", "d", "L({d})");
    for j in 1..p {
        print!(" {:>5}", format!("L_{j}"));
    }
    println!();
    for d in (1..=dmax).filter(|d| d % p as u64 != 0) {
        print!("{d:>5} {:>6} |", lower_bound_single(p, d).expect("valid d"));
        for j in 1..p {
            let l = l_j(p, d, j).expect("valid j");
            print!(" {:>5}", if j == mid { format!("*{l}") } else { l.to_string() });
        }
        println!();
    }
}
