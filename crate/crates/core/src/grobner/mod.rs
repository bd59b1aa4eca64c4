//! Groebner bases over exact fields, Laurent quotients and algebra maps between them.

pub mod buchberger;
pub mod morphism;
pub mod poly;
pub mod quotient;

pub use buchberger::{buchberger, GroebnerBasis};
pub use morphism::{algebra_morphism, Morphism, MorphismFailure};
pub use poly::{MonomialOrder, Poly};
pub use quotient::{laurent_quotient, polynomial_quotient, PresentationJson, QuotientAlgebra, QuotientOutcome, Source};
