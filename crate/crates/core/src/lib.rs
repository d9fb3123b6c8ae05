//! Conformal geometric algebra in Cl(4,1).
//!
//! * [`mvcore`]: dense multivectors, graded products, involutions, duality.
//! * [`conformal`]: points, rounds and flats of 3D Euclidean geometry.
//! * [`versor`]: reflections, rotors, translators, motors and scalors.
//! * [`neuron`]: a geometric neuron whose versor weight is learned by
//!   gradient descent.
//! * [`gacli`]: expression language, scene files and the `ga` command.

pub mod conformal;
pub mod error;
pub mod gacli;
pub mod mvcore;
pub mod neuron;
pub mod versor;

pub use error::{Error, Result};
pub use mvcore::{BasisBlade, Multivector, Signature, Tolerance};
