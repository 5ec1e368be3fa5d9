//! Exact polynomial arithmetic over the rationals and prime fields, dense
//! linear algebra, univariate root finding and Gröbner bases.

pub mod error;
pub mod field;
pub mod groebner;
pub mod linalg;
pub mod monomial;
pub mod poly;
pub mod ring;
pub mod ringmap;
pub mod roots;
pub mod univariate;

pub use error::{AlgebraError, Result};
pub use field::{rational_to, Coeff, Field, Fp, Rational};
pub use groebner::{GbOptions, HilbertData, Ideal, IdealJson, ShapeLemma};
pub use linalg::{matrix_kernel, Matrix};
pub use monomial::{Monomial, MonomialOrder, MAX_VARS};
pub use poly::Polynomial;
pub use ring::{Ring, RingDescriptor};
pub use ringmap::RingMap;
pub use univariate::UPoly;
