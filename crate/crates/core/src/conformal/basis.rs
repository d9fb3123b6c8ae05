use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use crate::mvcore::{BasisBlade, Multivector, Signature};

const SIG: Signature = Signature::CGA;

/// Bit of `e+` (generator 4) in the orthonormal basis.
pub const EPLUS_BIT: u32 = 0b01000;
/// Bit of `e-` (generator 5) in the orthonormal basis.
pub const EMINUS_BIT: u32 = 0b10000;
const EUCLID_MASK: u32 = 0b00111;

pub fn e1() -> Multivector {
    Multivector::basis_vector(SIG, 0)
}

pub fn e2() -> Multivector {
    Multivector::basis_vector(SIG, 1)
}

pub fn e3() -> Multivector {
    Multivector::basis_vector(SIG, 2)
}

pub fn eplus() -> Multivector {
    Multivector::basis_vector(SIG, 3)
}

pub fn eminus() -> Multivector {
    Multivector::basis_vector(SIG, 4)
}

/// Origin, `e0 = (e- - e+) / 2`.
pub fn e0() -> Multivector {
    Multivector::from_terms(
        SIG,
        &[
            (BasisBlade::new(EPLUS_BIT), -0.5),
            (BasisBlade::new(EMINUS_BIT), 0.5),
        ],
    )
}

/// Infinity, `einf = e- + e+`.
pub fn einf() -> Multivector {
    Multivector::from_terms(
        SIG,
        &[
            (BasisBlade::new(EPLUS_BIT), 1.0),
            (BasisBlade::new(EMINUS_BIT), 1.0),
        ],
    )
}

/// Minkowski plane `E = einf ^ e0 = e+ e-`.
pub fn minkowski_plane() -> Multivector {
    Multivector::blade(SIG, BasisBlade::new(EPLUS_BIT | EMINUS_BIT), 1.0)
}

/// Euclidean pseudoscalar `e1 e2 e3`.
pub fn euclidean_pseudoscalar() -> Multivector {
    Multivector::blade(SIG, BasisBlade::new(EUCLID_MASK), 1.0)
}

/// Coefficient of `e0` of the vector part when written in the null basis.
pub fn e0_coeff(mv: &Multivector) -> f64 {
    mv.coeffs()[EMINUS_BIT as usize] - mv.coeffs()[EPLUS_BIT as usize]
}

/// Coefficient of `einf` of the vector part when written in the null basis.
pub fn einf_coeff(mv: &Multivector) -> f64 {
    0.5 * (mv.coeffs()[EMINUS_BIT as usize] + mv.coeffs()[EPLUS_BIT as usize])
}

/// Coefficients of a Cl(4,1) multivector over the null-basis blades
/// `{e1, e2, e3, e0, einf}` wedges. Bits 0..2 are Euclidean, bit 3 is `e0`,
/// bit 4 is `einf`; factors are in that order.
#[derive(Debug, Clone, PartialEq)]
pub struct NullBasisCoeffs {
    pub coeffs: [f64; 32],
}

impl NullBasisCoeffs {
    pub fn from_multivector(mv: &Multivector) -> Self {
        assert_eq!(mv.sig(), SIG, "null basis exists only in Cl(4,1)");
        let c = mv.coeffs();
        let mut out = [0.0; 32];
        for euclid in 0..8usize {
            let one = c[euclid];
            let plus = c[euclid | EPLUS_BIT as usize];
            let minus = c[euclid | EMINUS_BIT as usize];
            let pm = c[euclid | (EPLUS_BIT | EMINUS_BIT) as usize];
            // e+ = einf/2 - e0, e- = einf/2 + e0, e+ e- = -(e0 ^ einf)
            out[euclid] = one;
            out[euclid | EPLUS_BIT as usize] = minus - plus;
            out[euclid | EMINUS_BIT as usize] = 0.5 * (plus + minus);
            out[euclid | (EPLUS_BIT | EMINUS_BIT) as usize] = -pm;
        }
        NullBasisCoeffs { coeffs: out }
    }

    pub fn to_multivector(&self) -> Multivector {
        let n = &self.coeffs;
        let mut out = vec![0.0; 32];
        for euclid in 0..8usize {
            let one = n[euclid];
            let o = n[euclid | EPLUS_BIT as usize];
            let inf = n[euclid | EMINUS_BIT as usize];
            let oinf = n[euclid | (EPLUS_BIT | EMINUS_BIT) as usize];
            // e0 = (e- - e+)/2, einf = e+ + e-, e0 ^ einf = -e+ e-
            out[euclid] = one;
            out[euclid | EPLUS_BIT as usize] = inf - 0.5 * o;
            out[euclid | EMINUS_BIT as usize] = inf + 0.5 * o;
            out[euclid | (EPLUS_BIT | EMINUS_BIT) as usize] = -oinf;
        }
        Multivector::from_coeffs(SIG, out).expect("32 coefficients")
    }

    /// Coefficient of the null-basis blade named by Euclidean bits plus
    /// optional `e0` and `einf` factors.
    pub fn get(&self, euclid: u32, has_e0: bool, has_einf: bool) -> f64 {
        let mut i = euclid & EUCLID_MASK;
        if has_e0 {
            i |= EPLUS_BIT;
        }
        if has_einf {
            i |= EMINUS_BIT;
        }
        self.coeffs[i as usize]
    }
}

/// A point, direction or offset of 3D Euclidean space.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct EuclideanVector {
    pub x: f64,
    pub y: f64,
    pub z: f64,
}

impl EuclideanVector {
    pub const ZERO: EuclideanVector = EuclideanVector {
        x: 0.0,
        y: 0.0,
        z: 0.0,
    };

    pub const fn new(x: f64, y: f64, z: f64) -> Self {
        EuclideanVector { x, y, z }
    }

    pub fn from_array(a: [f64; 3]) -> Self {
        EuclideanVector::new(a[0], a[1], a[2])
    }

    pub fn to_array(self) -> [f64; 3] {
        [self.x, self.y, self.z]
    }

    pub fn dot(self, o: Self) -> f64 {
        self.x * o.x + self.y * o.y + self.z * o.z
    }

    pub fn cross(self, o: Self) -> Self {
        EuclideanVector::new(
            self.y * o.z - self.z * o.y,
            self.z * o.x - self.x * o.z,
            self.x * o.y - self.y * o.x,
        )
    }

    pub fn norm_sq(self) -> f64 {
        self.dot(self)
    }

    pub fn norm(self) -> f64 {
        self.norm_sq().sqrt()
    }

    pub fn normalized(self) -> Self {
        self * (1.0 / self.norm())
    }

    pub fn is_finite(self) -> bool {
        self.x.is_finite() && self.y.is_finite() && self.z.is_finite()
    }

    /// Grade-1 Cl(4,1) element `x e1 + y e2 + z e3`.
    pub fn to_mv(self) -> Multivector {
        Multivector::from_terms(
            SIG,
            &[
                (BasisBlade::new(0b001), self.x),
                (BasisBlade::new(0b010), self.y),
                (BasisBlade::new(0b100), self.z),
            ],
        )
    }

    /// Euclidean components of a multivector's vector part.
    pub fn from_mv(mv: &Multivector) -> Self {
        let c = mv.coeffs();
        EuclideanVector::new(c[0b001], c[0b010], c[0b100])
    }

    pub fn max_abs_diff(self, o: Self) -> f64 {
        (self.x - o.x)
            .abs()
            .max((self.y - o.y).abs())
            .max((self.z - o.z).abs())
    }
}

impl Add for EuclideanVector {
    type Output = Self;
    fn add(self, o: Self) -> Self {
        EuclideanVector::new(self.x + o.x, self.y + o.y, self.z + o.z)
    }
}

impl Sub for EuclideanVector {
    type Output = Self;
    fn sub(self, o: Self) -> Self {
        EuclideanVector::new(self.x - o.x, self.y - o.y, self.z - o.z)
    }
}

impl Neg for EuclideanVector {
    type Output = Self;
    fn neg(self) -> Self {
        EuclideanVector::new(-self.x, -self.y, -self.z)
    }
}

impl Mul<f64> for EuclideanVector {
    type Output = Self;
    fn mul(self, s: f64) -> Self {
        EuclideanVector::new(self.x * s, self.y * s, self.z * s)
    }
}

impl fmt::Display for EuclideanVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}, {})", self.x, self.y, self.z)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::mvcore::Tolerance;

    fn scalar(s: f64) -> Multivector {
        Multivector::scalar(SIG, s)
    }

    #[test]
    fn null_vectors_and_minkowski_plane() {
        let (o, inf, e) = (e0(), einf(), minkowski_plane());
        assert_eq!(&o * &o, scalar(0.0));
        assert_eq!(&inf * &inf, scalar(0.0));
        assert_eq!((&o | &inf), scalar(-1.0));
        assert_eq!(&inf ^ &o, e);
        assert_eq!(&e * &e, scalar(1.0));
        assert_eq!(&o * &e, -&o);
        assert_eq!(&e * &o, o);
        assert_eq!(&inf * &e, inf);
        assert_eq!(&e * &inf, -&inf);
    }

    #[test]
    fn null_coefficients_of_named_vectors() {
        let n = NullBasisCoeffs::from_multivector(&e0());
        assert_eq!(n.get(0, true, false), 1.0);
        assert_eq!(n.get(0, false, true), 0.0);
        let n = NullBasisCoeffs::from_multivector(&einf());
        assert_eq!(n.get(0, false, true), 1.0);
        assert_eq!(n.get(0, true, false), 0.0);
        // E = einf ^ e0 = -(e0 ^ einf)
        let n = NullBasisCoeffs::from_multivector(&minkowski_plane());
        assert_eq!(n.get(0, true, true), -1.0);
    }

    #[test]
    fn null_blades_are_wedges_of_null_vectors() {
        // Expanding each null-basis blade must agree with the outer product
        // of its factors.
        let factors = [e1(), e2(), e3(), e0(), einf()];
        for bits in 0..32usize {
            let mut wedge = scalar(1.0);
            for (i, f) in factors.iter().enumerate() {
                if bits & (1 << i) != 0 {
                    wedge = &wedge ^ f;
                }
            }
            let mut n = NullBasisCoeffs { coeffs: [0.0; 32] };
            n.coeffs[bits] = 1.0;
            assert_eq!(n.to_multivector(), wedge, "blade {bits:05b}");
        }
    }

    #[test]
    fn round_trip_is_identity() {
        let mv = Multivector::from_coeffs(SIG, (0..32).map(|i| (i as f64 * 0.37).sin()).collect())
            .unwrap();
        let back = NullBasisCoeffs::from_multivector(&mv).to_multivector();
        assert!((&back - &mv).norm_inf() <= 1e-15);
        assert!(back.grades(&Tolerance::DEFAULT).len() > 1);
    }
}
