//! Exact polynomial representation of double affine Hecke algebras,
//! Macdonald polynomials, and machine checks of their duality, evaluation
//! and shift-operator identities.

pub mod daha;
pub mod error;
pub mod ext_weyl;
pub mod laurent;
pub mod macdonald;
pub mod param;
pub mod root_datum;
pub mod verify;

pub use error::{Error, Result};
pub use param::{MonomialMap, NumericPoint, Param, ParamMonomial, ParamScalar};
pub use root_datum::{build_root_datum, Family, RootDatum, Weight, WeylElt};
