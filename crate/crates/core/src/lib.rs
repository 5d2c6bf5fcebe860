//! Finite F_p-linear additive categories and decision procedures for
//! higher angulated, exact and exangulated structures on them.
#![forbid(unsafe_code)]

pub mod angulated;
pub mod category;
pub mod complexes;
pub mod error;
pub mod exangulated;
pub mod fixtures;
pub mod functor;
pub mod homalg;
pub mod linalg;
pub mod report;
pub mod schema;
pub mod search;
pub mod skeleton;
pub mod transport;

pub use category::{AddMorphism, AddObject, BaseCategory, Universe};
pub use error::{Error, Result};
pub use functor::{AddFunctor, EquivalenceWitness, NatTransform};
pub use linalg::{Matrix, PrimeField};
pub use report::{Check, Report, Status};
pub use search::{Config, Search};
