//! Walks through `y^5 - y = x^11`: level data, the images `γ(x^j dx)` of
//! the level-1 units, and the obstruction vectors.
//!
//! ```bash
//! cargo run --example worked_example
//! ```

use asnum::anumber::{gamma, is_regular, psi, psi_matrix, VElement};
use asnum::linalg::rank_nullity;
use asnum::BasicCurve;

fn main() {
    let c = BasicCurve::parse(5, "x^11").expect("valid cover");
    println!("n = {:?}", c.n());
    println!("m = {:?}", c.m());
    println!("r = {:?}", c.r());
    println!("genus {} dim V {} dim U {}", c.genus(), c.dim_v(), c.dim_u());
    for j in (0..=c.n()[1] as usize).filter(|j| j % 5 != 4) {
        let v = VElement::unit(&c, 1, j).expect("basis element");
        let w = gamma(&c, &v);
        let tag = if is_regular(&c, &w) { "regular" } else { "not regular" };
        println!("x^{j}y dx -> {w}  ({tag}, psi = {:?})", psi(&c, &v));
    }
    let (rank, nullity) = rank_nullity(&psi_matrix(&c));
    println!("psi matrix rank {rank}, a-number {nullity}, lower bound {}", c.lower_bound());
}
