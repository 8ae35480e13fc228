//! Exact multivariate polynomial arithmetic and ideal operations.

pub mod gb;
pub mod hilbert;
pub mod ideal;
pub mod linalg;
pub mod monomial;
pub mod parse;
#[allow(clippy::module_inception)]
pub mod poly;
pub mod scalar;

pub use gb::{ModOrder, Vector};
pub use hilbert::{HilbertSeries, QPoly};
pub use ideal::{HomIdeal, Saturation};
pub use linalg::{Matrix, RowSpace};
pub use monomial::{Monomial, MonomialOrder};
pub use parse::{parse_poly, parse_poly_list};
pub use poly::Poly;
pub use scalar::{parse_rational, Field, Scalar};
