//! Exact computation of a-numbers of Artin-Schreier covers `y^p - y = f`
//! of the projective line over `F_p`.
//!
//! * [`bounds`]: the lower bound `L(D)` and its ingredients.
//! * [`fppoly`]: polynomials and differentials over `F_p`, the Cartier
//!   operator on `P^1` and Artin-Schreier normalization.
//! * [`linalg`]: dense linear algebra over `F_p`.
//! * [`curve`]: validated basic Artin-Schreier curves.
//! * [`anumber`]: the obstruction-map a-number and the full Cartier matrix.
//! * [`families`]: explicit covers attaining the bound for `p = 3, 5`.
//! * [`experiments`]: random and exhaustive a-number surveys.
//! * [`cli`]: the `asnum` command line.

pub mod anumber;
pub mod bounds;
pub mod cli;
pub mod curve;
pub mod error;
pub mod experiments;
pub mod families;
pub mod fppoly;
pub mod linalg;

pub use anumber::{a_number_fast, a_number_oracle, report, ANumberReport, Method};
pub use bounds::{lower_bound, RamificationData};
pub use curve::BasicCurve;
pub use error::{Error, Result};
pub use fppoly::{Differential1, FpPoly};
pub use linalg::FpMatrix;
