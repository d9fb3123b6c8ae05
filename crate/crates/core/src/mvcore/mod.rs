//! Dense multivector arithmetic for Cl(p,q) with `p + q <= 8`.

mod blade;
mod literal;
mod multivector;
pub(crate) mod ops;
pub mod oracle;
#[cfg(test)]
mod props;
mod signature;
mod tolerance;

pub use blade::BasisBlade;
pub use multivector::{format_real, render_order, Multivector};
pub use oracle::oracle_product;
pub use signature::{Signature, MAX_DIM};
pub use tolerance::{GradeSet, Tolerance};
