//! Computes the a-number of `y^p - y = f` with both the obstruction map and
//! the full Cartier matrix and prints both.
//!
//! ```bash
//! cargo run --release --example oracle_check -- 5 "x^22 + x^3 + x"
//! ```

use asnum::{a_number_fast, a_number_oracle, BasicCurve};

fn main() {
    let args: Vec<String> = std::env::args().skip(1).collect();
    let p: u32 = args.first().map_or(5, |s| s.parse().expect("prime"));
    let f = args.get(1).map_or("x^11 + x^8", String::as_str);
    let curve = BasicCurve::parse(p, f).expect("valid cover");
    let fast = a_number_fast(&curve);
    let oracle = a_number_oracle(&curve);
    println!("y^{p} - y = {}", curve.f());
    println!("genus {} lower bound {}", curve.genus(), curve.lower_bound());
    println!("fast {fast} oracle {oracle} {}", if fast == oracle { "agree" } else { "DISAGREE" });
}
