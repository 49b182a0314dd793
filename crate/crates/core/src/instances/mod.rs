//! Concrete institutions: many-sorted first-order logic without quantifiers in
//! the base, and commutative rings with polynomial extensions.

pub mod cring;
pub mod fol0;
