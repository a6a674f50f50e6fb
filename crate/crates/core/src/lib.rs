//! Exact commutative algebra over the rationals and prime fields: sparse
//! polynomials, Groebner bases of ideals and modules, the ideal calculus,
//! Hilbert polynomials, minimal free resolutions and Rao modules of space
//! curves.
//!
//! Everything is generic over [`Field`]; the aliases below fix the two
//! coefficient fields the tools use.

pub mod error;
pub mod field;
pub mod groebner;
pub mod hilbert;
pub mod homology;
pub mod ideal;
pub mod linalg;
pub mod monomial;
pub mod parse;
pub mod poly;
pub mod resolution;

pub use error::{AlgebraError, Result};
pub use field::{Field, Fp};
pub use ideal::{GroebnerBasis, Ideal};
pub use monomial::{Monomial, MonomialOrder, Ring, Var, VarSet};
pub use poly::Polynomial;

/// The rationals.
pub type QQ = num_rational::BigRational;
/// The prime field used for fast checks.
pub type Fp32003 = Fp<32003>;

pub type PolyQ = Polynomial<QQ>;
pub type IdealQ = Ideal<QQ>;
pub type PolyFp = Polynomial<Fp32003>;
pub type IdealFp = Ideal<Fp32003>;
