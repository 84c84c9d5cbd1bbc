//! Exact intersection theory for predegree polynomials of smooth quadrics.
//!
//! The crate is organised bottom-up:
//!
//! * [`chow`]: Chow rings of products of projective spaces.
//! * [`segre`]: Segre embeddings, their normal bundles and Segre classes.
//! * [`predegree`]: predegree coefficients from Segre classes, group degrees,
//!   dimension formulas.
//! * [`quadric`]: the quadric surface `x0 x3 = x1 x2`, its base locus and tables.
//! * [`tangent`]: exact tangent-space checks along the base locus.
//! * [`cli`]: the `predeg` command-line front end.
//!
//! All arithmetic is over arbitrary-precision rationals.

pub mod chow;
pub mod cli;
pub mod error;
pub mod json;
pub mod linalg;
pub mod predegree;
pub mod quadric;
pub mod sampling;
pub mod segre;
pub mod tangent;

pub use chow::{ChowClass, ProductSpace};
pub use error::{Error, Result};
pub use predegree::PredegreePolynomial;
pub use quadric::ProjMatrix;
pub use tangent::LinearSubspace;

pub type Rational = num_rational::BigRational;
