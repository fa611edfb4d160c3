//! Polynomial arithmetic and factorization over `Z`, `Q`, `F_q` and `k[u]`,
//! with searches for irreducible specializations `P(x̄, M(x̄))`.

pub mod constructions;
pub mod error;
pub mod factor;
pub mod multipoly;
pub mod rings;
pub mod schinzel;

pub use error::{Error, Result};
pub use factor::{is_irreducible, irreducible, Certificate, Factorization};
pub use multipoly::{parse_poly, Degree, DegreeTuple, Monomial, MultiPoly, VarSet};
pub use rings::{Elem, FiniteField, Ring, RingSpec};
