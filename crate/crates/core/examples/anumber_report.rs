//! Full report for one cover: genus, p-rank, a-number and the sizes of the
//! spaces behind the obstruction map.
//!
//! ```bash
//! cargo run --example anumber_report -- 7 "x^12 + 3*x^5"
//! ```

use asnum::{report, BasicCurve, Method};

fn main() {
    let args: Vec<String> = std::env::args().skip(1).collect();
    let p: u32 = args.first().map_or(5, |s| s.parse().expect("prime"));
    let f = args.get(1).map_or("x^11 + x^8", String::as_str);
    let curve = match BasicCurve::parse(p, f) {
        Ok(c) => c,
        Err(e) => {
            eprintln!("error: {e}");
            std::process::exit(1);
        }
    };
    let r = report(&curve, Method::Fast);
    println!("{r}");
    println!("{}", serde_json::to_string(&r).expect("plain data"));
}
