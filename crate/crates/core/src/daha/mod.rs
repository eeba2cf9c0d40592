//! The double affine Hecke algebra acting on Laurent polynomials.

mod functional;
mod generators;
mod operator;
mod ratfun;
mod relations;
mod type_a;

pub use generators::{Corruption, Daha};
pub use operator::NormalFormOperator;
pub use ratfun::{Factor, RatFunX};
pub use relations::{
    box_weights, braid_order, verify_generators, verify_relations, Generators, OperatorGenerators, Relation,
    RelationReport, RelationResult,
};
pub use type_a::{gaussian_conjugate, tau_automorphism, tau_constants, tau_constants_unhalved, Tau};
