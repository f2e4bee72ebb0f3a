//! Structural maps between diagram spaces.

mod chi;
mod generators;
mod iota;
mod tree;

pub use chi::{chi, chi_into, chi_inverse};
pub use generators::{comb, theta, wheel};
pub use iota::{perfect_matchings, remove_circles};
pub use tree::{ends_relation, loop_to_circle, rho, sigma, Root};
