//! Dense univariate polynomial algebra over the rationals, exact gcd and
//! squarefree tests, Sturm root counting and the circle-to-interval
//! transform for self-inversive polynomials.

mod gcd;
mod numeric;
mod poly;
mod sturm;
mod transform;

pub use gcd::{is_squarefree, poly_gcd, squarefree_decomposition, squarefree_part};
pub use numeric::{numeric_roots, NumericRoot};
pub use poly::DensePoly;
pub use sturm::{count_all_real_roots, count_real_roots_in, count_real_roots_open, Bound, SturmChain};
pub use transform::{
    circle_census, circle_to_interval, halve_even_poly, is_self_inversive, reciprocity,
    CircleCensus, CircleTransform, Reciprocity,
};
