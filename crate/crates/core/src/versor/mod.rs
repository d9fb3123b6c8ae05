//! Reflectors, rotors, translators, motors and scalors.
//!
//! All operators act by the sandwich `X -> V^-1 X V`. Odd versors
//! (reflections) act on the grade involution of the object, so a plane
//! mirror `n` sends a vector `x` to `-n^-1 x n`.

use std::fmt;

use crate::conformal::{einf, embed_point, minkowski_plane, sphere_ipns, EuclideanVector};
use crate::error::{Error, Result};
use crate::mvcore::{Multivector, Signature, Tolerance};


#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Parity {
    Even,
    Odd,
}

impl Parity {
    pub fn is_odd(self) -> bool {
        self == Parity::Odd
    }

    /// Parity of a product.
    pub fn combine(self, other: Parity) -> Parity {
        if self.is_odd() != other.is_odd() {
            Parity::Odd
        } else {
            Parity::Even
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Parity::Even => "even",
            Parity::Odd => "odd",
        }
    }

    pub fn parse(s: &str) -> Option<Parity> {
        match s {
            "even" => Some(Parity::Even),
            "odd" => Some(Parity::Odd),
            _ => None,
        }
    }
}

impl fmt::Display for Parity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// How a versor acts: `Reflection` uses the grade-involuted object and
/// requires an odd versor, `Motion` requires an even one.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Mode {
    Reflection,
    Motion,
}

impl Mode {
    pub fn for_parity(p: Parity) -> Mode {
        match p {
            Parity::Odd => Mode::Reflection,
            Parity::Even => Mode::Motion,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Mode::Reflection => "reflection",
            Mode::Motion => "motion",
        }
    }

    pub fn parse(s: &str) -> Option<Mode> {
        match s {
            "reflection" => Some(Mode::Reflection),
            "motion" => Some(Mode::Motion),
            _ => None,
        }
    }
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// A validated versor: parity-homogeneous with scalar `V reverse(V)`.
/// Not normalized; the cached inverse is `reverse(V) / norm2`.
#[derive(Debug, Clone, PartialEq)]
pub struct Versor {
    mv: Multivector,
    parity: Parity,
    norm2: f64,
    inverse: Multivector,
}

/// Validates `mv` with the default tolerance.
pub fn make_versor(mv: Multivector) -> Result<Versor> {
    Versor::new(mv)
}

impl Versor {
    pub fn new(mv: Multivector) -> Result<Versor> {
        Versor::with_tolerance(mv, &Tolerance::DEFAULT)
    }

    pub fn with_tolerance(mv: Multivector, tol: &Tolerance) -> Result<Versor> {
        let grades = mv.grades(tol);
        if grades.is_empty() {
            return Err(Error::SingularVersor);
        }
        let parity = if grades.only_even() {
            Parity::Even
        } else if grades.only_odd() {
            Parity::Odd
        } else {
            return Err(Error::MixedParity);
        };
        let rev = mv.reverse();
        let norm2 = crate::mvcore::ops::versor_norm2(&mv, &rev, tol)?;
        Ok(Versor {
            inverse: rev.scale(1.0 / norm2),
            mv,
            parity,
            norm2,
        })
    }

    pub fn mv(&self) -> &Multivector {
        &self.mv
    }

    pub fn into_mv(self) -> Multivector {
        self.mv
    }

    pub fn parity(&self) -> Parity {
        self.parity
    }

    /// Scalar value of `V reverse(V)`.
    pub fn norm2(&self) -> f64 {
        self.norm2
    }

    pub fn inverse(&self) -> &Multivector {
        &self.inverse
    }

    pub fn natural_mode(&self) -> Mode {
        Mode::for_parity(self.parity)
    }

    /// `V^-1 O^ V` in reflection mode, `V^-1 O V` in motion mode.
    pub fn apply(&self, obj: &Multivector, mode: Mode) -> Result<Multivector> {
        match (mode, self.parity) {
            (Mode::Reflection, Parity::Odd) => self.sandwich(&obj.grade_involution()),
            (Mode::Motion, Parity::Even) => self.sandwich(obj),
            (mode, parity) => Err(Error::ParityMode(format!(
                "{mode} mode needs an {} versor, got an {parity} one",
                Mode::for_parity(parity).name()
            ))),
        }
    }

    /// Applies in the mode matching the versor's parity.
    pub fn transform(&self, obj: &Multivector) -> Result<Multivector> {
        self.apply(obj, self.natural_mode())
    }

    /// `(-1)^v V^-1 X V` with no grade involution, `v` the parity.
    pub fn apply_signed(&self, obj: &Multivector) -> Result<Multivector> {
        let out = self.sandwich(obj)?;
        Ok(match self.parity {
            Parity::Odd => -out,
            Parity::Even => out,
        })
    }

    fn sandwich(&self, x: &Multivector) -> Result<Multivector> {
        self.inverse
            .geometric_product(x)?
            .geometric_product(&self.mv)
    }

    /// `self * other`: acts as `self` first, then `other`.
    pub fn then(&self, other: &Versor) -> Result<Versor> {
        Versor::new(self.mv.geometric_product(&other.mv)?)
    }
}

impl fmt::Display for Versor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.mv)
    }
}

/// Left-to-right product; `compose([a, b])` applies `a` first.
pub fn compose(vs: &[Versor]) -> Result<Versor> {
    let (first, rest) = vs
        .split_first()
        .ok_or_else(|| Error::Domain("compose needs at least one versor".into()))?;
    let mut acc = first.mv.clone();
    for v in rest {
        acc = acc.geometric_product(&v.mv)?;
    }
    Versor::new(acc)
}

fn finite(v: EuclideanVector, what: &str) -> Result<()> {
    if v.is_finite() {
        Ok(())
    } else {
        Err(Error::Domain(format!("{what} must be finite")))
    }
}

/// Plane mirror `n + d einf` with unit `n`; the plane is `x . n = d`.
pub fn reflector_plane(n: EuclideanVector, d: f64) -> Result<Versor> {
    finite(n, "plane normal")?;
    let len = n.norm();
    if len == 0.0 || !d.is_finite() {
        return Err(Error::Domain(
            "plane needs a nonzero normal and finite offset".into(),
        ));
    }
    Versor::new(n.normalized().to_mv() + einf().scale(d))
}

/// Sphere mirror `C - r^2/2 einf`: inversion in the sphere.
pub fn reflector_sphere(c: EuclideanVector, r: f64) -> Result<Versor> {
    finite(c, "sphere center")?;
    if !(r.is_finite() && r > 0.0) {
        return Err(Error::Domain(format!("sphere radius must be > 0, got {r}")));
    }
    Versor::new(sphere_ipns(c, r)?)
}

/// Point mirror `p + p^2/2 einf + e0`. A conformal point is null, so it
/// has no inverse and validation always fails with `SingularVersor`.
pub fn reflector_point(p: EuclideanVector) -> Result<Versor> {
    finite(p, "point")?;
    Versor::new(embed_point(p))
}

/// Moment bivector `d ^ p` of the line through `p` with direction `d`.
pub fn line_moment(d: EuclideanVector, p: EuclideanVector) -> Multivector {
    d.to_mv() ^ p.to_mv()
}

/// Line mirror `m einf - d E` (a 180 degree turn about the line), with
/// `d` normalized and `m` rescaled to match. The result has grade 3.
pub fn reflector_line(d: EuclideanVector, m: &Multivector) -> Result<Versor> {
    finite(d, "line direction")?;
    if m.sig() != Signature::CGA {
        return Err(Error::SignatureMismatch(m.sig(), Signature::CGA));
    }
    let len = d.norm();
    if len == 0.0 {
        return Err(Error::Domain("line direction must be nonzero".into()));
    }
    let tol = Tolerance::DEFAULT;
    let euclid_bivector = m
        .terms()
        .all(|(b, c)| (b.bits & !0b111 == 0 && b.grade() == 2) || tol.is_zero(c, m.norm_inf()));
    if !euclid_bivector {
        return Err(Error::Domain(
            "line moment must be a Euclidean bivector".into(),
        ));
    }
    let dv = d.to_mv();
    let check = &dv ^ m;
    if check.norm_inf() > tol.threshold(len * m.norm_inf()) {
        return Err(Error::Domain("inconsistent moment: m ^ d != 0".into()));
    }
    let s = 1.0 / len;
    let mv = m.scale(s) * einf() - dv.scale(s) * minkowski_plane();
    Versor::new(mv)
}

/// `exp(theta i / 2) = cos(theta/2) + i sin(theta/2)` for a bivector with
/// `i^2 = -1`. Under `x -> R^-1 x R` the rotor for `e12` and `+pi/2`
/// sends `e1` to `e2`.
pub fn rotor(i: &Multivector, theta: f64) -> Result<Versor> {
    let tol = Tolerance::DEFAULT;
    if !theta.is_finite() {
        return Err(Error::Domain("rotation angle must be finite".into()));
    }
    if i.grades(&tol).single() != Some(2) {
        return Err(Error::Domain("rotation plane must be a bivector".into()));
    }
    let sq = i.geometric_product(i)?;
    let target = Multivector::scalar(i.sig(), -1.0);
    if (&sq - &target).norm_inf() > tol.threshold(1.0) {
        return Err(Error::Domain("rotation bivector must square to -1".into()));
    }
    let (s, c) = (0.5 * theta).sin_cos();
    let mut mv = i.scale(s);
    mv.coeffs_mut()[0] = c;
    Versor::new(mv)
}

/// `1 + t einf / 2`; translates points by `+t`.
pub fn translator(t: EuclideanVector) -> Result<Versor> {
    finite(t, "translation")?;
    Versor::new(Multivector::one(Signature::CGA) + (t.to_mv() * einf()).scale(0.5))
}

/// `T(t) R(i, theta)`: translate, then rotate.
pub fn motor(t: EuclideanVector, i: &Multivector, theta: f64) -> Result<Versor> {
    translator(t)?.then(&rotor(i, theta)?)
}

/// `T(-c) exp(E log(s) / 2) T(c)`: uniform scaling by `s` about `c`.
pub fn scalor(c: EuclideanVector, s: f64) -> Result<Versor> {
    finite(c, "scaling center")?;
    if !(s.is_finite() && s > 0.0) {
        return Err(Error::Domain(format!("scale factor must be > 0, got {s}")));
    }
    let a = 0.5 * s.ln();
    let mut dilator = minkowski_plane().scale(a.sinh());
    dilator.coeffs_mut()[0] = a.cosh();
    let d = Versor::new(dilator)?;
    compose(&[translator(-c)?, d, translator(c)?])
}
