//! A geometric neuron `Y = (-1)^w W^-1 X W + Theta` whose weight `W` is
//! trained toward a versor by gradient descent.
//!
//! During training `W` is an arbitrary parity-homogeneous multivector and
//! its inverse is taken as `reverse(W) / <W reverse(W)>_0`, which is exact
//! on the versor manifold. A penalty on the non-scalar part of
//! `W reverse(W)` keeps descent near that manifold.

mod dataset;
mod model;
mod train;


pub use dataset::{
    generate_dataset, generate_dataset_with, read_dataset, write_dataset, DatasetSpec, Sample,
};
pub use model::{
    gradient, gradient_finite_difference, loss, objective, GeometricNeuron, Gradient, NeuronMode,
    Normalization, Objective,
};
pub use train::{train, GradientMethod, TrainConfig, TrainReport};
