//! Exact computations in Coxeter groups and their generic Hecke algebras:
//! normal forms, partial conjugacy classes, class polynomials and bases of
//! centralizers of parabolic subalgebras.
//!
//! ```
//! use coxeter_hecke::{CoxeterMatrix, CoxeterSystem, GeneratorSet, DEFAULT_NODE_BUDGET};
//! use coxeter_hecke::conjugacy::decide_finite;
//! use coxeter_hecke::centralizer::{build_z, check_commutation};
//!
//! let sys = CoxeterSystem::new(CoxeterMatrix::type_a(2));
//! let j = GeneratorSet::from_indices([0]);
//! let t = sys.normalize(&[1]).unwrap();
//! let class = decide_finite(&sys, &j, &t, DEFAULT_NODE_BUDGET).unwrap();
//! let z = build_z(&sys, &j, &class, DEFAULT_NODE_BUDGET).unwrap();
//! assert_eq!(check_commutation(&sys, &j, &z.element), None);
//! ```

pub mod centralizer;
pub mod class_poly;
pub mod classify;
pub mod conjugacy;
pub mod element;
pub mod error;
pub mod hecke;
pub mod matrix;
pub mod system;

pub use classify::SubsetKind;
pub use element::{Element, GeneratorSet};
pub use error::{Error, Result, DEFAULT_NODE_BUDGET};
pub use hecke::{HeckeElement, LaurentPoly, ParamPoly};
pub use matrix::{validate_matrix, CoxeterMatrix, Order};
pub use system::{CosetSide, CoxeterSystem, Side};
