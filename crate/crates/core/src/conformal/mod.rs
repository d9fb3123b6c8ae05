//! The conformal model of 3D Euclidean geometry in Cl(4,1).
//!
//! Internally every multivector lives in the orthonormal basis
//! `e1, e2, e3, e+, e-`; the null vectors `e0 = (e- - e+)/2` and
//! `einf = e- + e+` appear only through the helpers in this module.

mod basis;
mod objects;

pub use basis::{
    e0, e0_coeff, e1, e2, e3, einf, einf_coeff, eminus, eplus, euclidean_pseudoscalar,
    minkowski_plane, EuclideanVector, NullBasisCoeffs,
};
pub use objects::{
    classify, classify_with, embed_point, extract_point, extract_point_with, make_circle,
    make_flat_point, make_line, make_plane_opns, make_point_pair, make_sphere_opns,
    normalize_object, plane_ipns, point_distance, proportionality, round_params, sphere_ipns,
    whole_space, ConformalObject, ObjectKind, ObjectParams, Reality, Representation,
};
