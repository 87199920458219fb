//! Finite BCK-algebras with state operators.
//!
//! Algebras live on the carrier `{0, ..., n-1}` with the constant at index 0.
//! A [`CayleyTable`] is raw data; [`check_bck`] certifies it into a
//! [`CayleyAlgebra`], which every other operation takes.

pub mod adjoint;
pub mod algebra;
pub mod catalog;
pub mod diagonal;
pub mod error;
pub mod fixtures;
pub mod format;
pub mod ideals;
pub mod limits;
pub mod map;
pub mod mv;
pub mod set;
pub mod states;
pub mod suite;

pub use algebra::{
    check_bck, classify, direct_product, isomorphic, CayleyAlgebra, CayleyTable, Classification,
};
pub use error::{Error, Result};
pub use limits::Limits;
pub use map::UnaryMap;
pub use set::ElementSet;
pub use states::{certify_state, StateAlgebra, StateKind};
