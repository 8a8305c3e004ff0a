//! Generic Hecke algebras with one parameter pair `(a_c, b_c)` per conjugacy
//! class `c` of generators.

mod element;
mod json;
mod poly;
mod specialize;

pub use element::{b_inv_of, b_of, b_of_word, t_gen, HeckeElement};
pub use json::{hecke_from_json, hecke_to_json, poly_from_json, poly_to_json};
pub use poly::{LaurentPoly, Monomial, ParamPoly};
pub use specialize::{ClassValues, SpecializedElement, Specialization};
