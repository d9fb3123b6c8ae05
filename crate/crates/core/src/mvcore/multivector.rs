use std::fmt;
use std::ops::{Add, AddAssign, BitOr, BitXor, Index, Mul, Neg, Sub, SubAssign};

use super::{BasisBlade, GradeSet, Signature, Tolerance};
use crate::error::{Error, Result};

/// Dense multivector over the `2^n` basis blades of Cl(p,q), indexed by
/// blade bitset.
#[derive(Clone, PartialEq)]
pub struct Multivector {
    sig: Signature,
    coeffs: Vec<f64>,
}

impl Multivector {
    pub fn zero(sig: Signature) -> Self {
        Multivector {
            sig,
            coeffs: vec![0.0; sig.blade_count()],
        }
    }

    pub fn scalar(sig: Signature, s: f64) -> Self {
        Self::blade(sig, BasisBlade::SCALAR, s)
    }

    pub fn one(sig: Signature) -> Self {
        Self::scalar(sig, 1.0)
    }

    pub fn blade(sig: Signature, blade: BasisBlade, c: f64) -> Self {
        let mut mv = Self::zero(sig);
        mv.coeffs[blade.index()] = c;
        mv
    }

    /// Generator `e(i+1)`.
    pub fn basis_vector(sig: Signature, i: usize) -> Self {
        Self::blade(sig, BasisBlade::generator(i), 1.0)
    }

    /// Grade-1 element from its components in generator order.
    pub fn vector(sig: Signature, components: &[f64]) -> Result<Self> {
        if components.len() != sig.dim() {
            return Err(Error::Grade(format!(
                "expected {} vector components, got {}",
                sig.dim(),
                components.len()
            )));
        }
        let mut mv = Self::zero(sig);
        for (i, c) in components.iter().enumerate() {
            mv.coeffs[1 << i] = *c;
        }
        Ok(mv)
    }

    /// Unit pseudoscalar `e1 e2 ... en`.
    pub fn pseudoscalar(sig: Signature) -> Self {
        Self::blade(sig, BasisBlade::new((sig.blade_count() - 1) as u32), 1.0)
    }

    pub fn from_coeffs(sig: Signature, coeffs: Vec<f64>) -> Result<Self> {
        if coeffs.len() != sig.blade_count() {
            return Err(Error::Grade(format!(
                "{} needs {} coefficients, got {}",
                sig,
                sig.blade_count(),
                coeffs.len()
            )));
        }
        Ok(Multivector { sig, coeffs })
    }

    pub fn from_terms(sig: Signature, terms: &[(BasisBlade, f64)]) -> Self {
        let mut mv = Self::zero(sig);
        for (b, c) in terms {
            mv.coeffs[b.index()] += c;
        }
        mv
    }

    pub fn sig(&self) -> Signature {
        self.sig
    }

    pub fn coeffs(&self) -> &[f64] {
        &self.coeffs
    }

    pub fn coeffs_mut(&mut self) -> &mut [f64] {
        &mut self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<f64> {
        self.coeffs
    }

    pub fn coeff(&self, blade: BasisBlade) -> f64 {
        self.coeffs[blade.index()]
    }

    pub fn set(&mut self, blade: BasisBlade, c: f64) {
        self.coeffs[blade.index()] = c;
    }

    /// Nonzero terms in storage order.
    pub fn terms(&self) -> impl Iterator<Item = (BasisBlade, f64)> + '_ {
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| **c != 0.0)
            .map(|(i, c)| (BasisBlade::new(i as u32), *c))
    }

    pub fn scalar_part(&self) -> f64 {
        self.coeffs[0]
    }

    /// Largest absolute coefficient.
    pub fn norm_inf(&self) -> f64 {
        self.coeffs.iter().fold(0.0, |m, c| m.max(c.abs()))
    }

    /// Euclidean norm of the coefficient vector (positive definite,
    /// unrelated to the algebra metric).
    pub fn coeff_norm(&self) -> f64 {
        self.coeff_norm_sq().sqrt()
    }

    pub fn coeff_norm_sq(&self) -> f64 {
        self.coeffs.iter().map(|c| c * c).sum()
    }

    /// Euclidean inner product of coefficient vectors.
    pub fn coeff_dot(&self, other: &Multivector) -> f64 {
        self.coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(a, b)| a * b)
            .sum()
    }

    pub fn is_zero(&self, tol: &Tolerance) -> bool {
        self.norm_inf() <= tol.abs
    }

    /// Grades with a coefficient above tolerance, relative to this
    /// multivector's own max-norm.
    pub fn grades(&self, tol: &Tolerance) -> GradeSet {
        let threshold = tol.threshold(self.norm_inf());
        let mut set = GradeSet::default();
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.abs() > threshold {
                set.insert((i as u32).count_ones() as usize);
            }
        }
        set
    }

    /// Zeroes coefficients below tolerance.
    pub fn chop(&self, tol: &Tolerance) -> Multivector {
        let threshold = tol.threshold(self.norm_inf());
        self.map_indexed(|_, c| if c.abs() <= threshold { 0.0 } else { c })
    }

    pub fn scale(&self, s: f64) -> Multivector {
        self.map_indexed(|_, c| c * s)
    }

    fn map_indexed(&self, f: impl Fn(usize, f64) -> f64) -> Multivector {
        Multivector {
            sig: self.sig,
            coeffs: self
                .coeffs
                .iter()
                .enumerate()
                .map(|(i, c)| f(i, *c))
                .collect(),
        }
    }

    fn check_sig(&self, other: &Multivector) -> Result<()> {
        if self.sig != other.sig {
            Err(Error::SignatureMismatch(self.sig, other.sig))
        } else {
            Ok(())
        }
    }

    /// Blade-pair accumulation shared by all products; `keep` filters
    /// which blade pairs contribute.
    #[inline]
    fn product_filtered(
        &self,
        other: &Multivector,
        keep: impl Fn(u32, u32) -> bool,
    ) -> Multivector {
        let n = self.sig.dim();
        let table = self.sig.sign_table();
        let mut out = vec![0.0; self.coeffs.len()];
        for (a, &ca) in self.coeffs.iter().enumerate() {
            if ca == 0.0 {
                continue;
            }
            let row = &table[a << n..(a + 1) << n];
            for (b, &cb) in other.coeffs.iter().enumerate() {
                if cb == 0.0 || !keep(a as u32, b as u32) {
                    continue;
                }
                out[a ^ b] += row[b] as f64 * ca * cb;
            }
        }
        Multivector {
            sig: self.sig,
            coeffs: out,
        }
    }

    pub fn geometric_product(&self, other: &Multivector) -> Result<Multivector> {
        self.check_sig(other)?;
        Ok(self.product_filtered(other, |_, _| true))
    }

    /// `A ^ B`: grade `k + l` part of each blade-pair product.
    pub fn outer_product(&self, other: &Multivector) -> Result<Multivector> {
        self.check_sig(other)?;
        Ok(self.product_filtered(other, |a, b| a & b == 0))
    }

    /// `A | B`: grade `l - k` part of each blade-pair product, zero for
    /// `k > l`.
    pub fn left_contraction(&self, other: &Multivector) -> Result<Multivector> {
        self.check_sig(other)?;
        Ok(self.product_filtered(other, |a, b| a & !b == 0))
    }

    /// `<A B>_0`.
    pub fn scalar_product(&self, other: &Multivector) -> Result<f64> {
        self.check_sig(other)?;
        let mut s = 0.0;
        for (a, (&ca, &cb)) in self.coeffs.iter().zip(&other.coeffs).enumerate() {
            if ca != 0.0 && cb != 0.0 {
                s += self.sig.product_sign(a as u32, a as u32) * ca * cb;
            }
        }
        Ok(s)
    }

    pub fn grade_projection(&self, k: usize) -> Result<Multivector> {
        if k > self.sig.dim() {
            return Err(Error::Grade(format!(
                "grade {k} out of range for {}",
                self.sig
            )));
        }
        Ok(self.grade_part(k))
    }

    /// Grade projection without the range check; out-of-range grades are
    /// simply empty.
    pub fn grade_part(&self, k: usize) -> Multivector {
        self.map_indexed(|i, c| {
            if (i as u32).count_ones() as usize == k {
                c
            } else {
                0.0
            }
        })
    }

    /// Reversion: grade `k` scaled by `(-1)^(k(k-1)/2)`.
    pub fn reverse(&self) -> Multivector {
        self.map_indexed(|i, c| {
            let k = (i as u32).count_ones();
            if (k * k.saturating_sub(1) / 2).is_multiple_of(2) {
                c
            } else {
                -c
            }
        })
    }

    /// Grade involution: grade `k` scaled by `(-1)^k`.
    pub fn grade_involution(&self) -> Multivector {
        self.map_indexed(|i, c| {
            if (i as u32).count_ones().is_multiple_of(2) {
                c
            } else {
                -c
            }
        })
    }

    /// Keeps the even (`odd == false`) or odd grades.
    pub fn parity_part(&self, odd: bool) -> Multivector {
        self.map_indexed(|i, c| {
            if ((i as u32).count_ones() % 2 == 1) == odd {
                c
            } else {
                0.0
            }
        })
    }

    /// Transpose of left multiplication by this multivector with respect
    /// to the coefficient inner product: `<g, A B> = <A.adjoint() g, B>`
    /// and `<g, B A> = <g A.adjoint(), B>`. Each blade maps to its inverse.
    pub fn adjoint(&self) -> Multivector {
        let sig = self.sig;
        self.map_indexed(|i, c| c * sig.product_sign(i as u32, i as u32))
    }

    pub(crate) fn gp(&self, other: &Multivector) -> Multivector {
        assert_eq!(
            self.sig, other.sig,
            "signature mismatch in geometric product"
        );
        self.product_filtered(other, |_, _| true)
    }
}

impl Index<BasisBlade> for Multivector {
    type Output = f64;
    fn index(&self, blade: BasisBlade) -> &f64 {
        &self.coeffs[blade.index()]
    }
}

impl fmt::Debug for Multivector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} [{}]", self, self.sig)
    }
}

/// Text form: signed `coef*blade` terms in grade order, coefficients in
/// shortest round-trip notation, e.g. `1 - 0.5*e12 + 2*e14`.
impl fmt::Display for Multivector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for blade in render_order(self.sig) {
            let c = self.coeffs[blade.index()];
            if c == 0.0 {
                continue;
            }
            let negative = c.is_sign_negative();
            if first {
                if negative {
                    f.write_str("-")?;
                }
            } else {
                f.write_str(if negative { " - " } else { " + " })?;
            }
            first = false;
            let a = c.abs();
            if blade.bits == 0 {
                f.write_str(&format_real(a))?;
            } else if a == 1.0 {
                write!(f, "{blade}")?;
            } else {
                write!(f, "{}*{blade}", format_real(a))?;
            }
        }
        if first {
            f.write_str("0")?;
        }
        Ok(())
    }
}

/// Blades ordered by grade, then lexicographically by generator list.
pub fn render_order(sig: Signature) -> Vec<BasisBlade> {
    let mut blades: Vec<BasisBlade> = (0..sig.blade_count() as u32).map(BasisBlade::new).collect();
    blades.sort_by_key(|b| (b.grade(), b.generators().collect::<Vec<_>>()));
    blades
}

/// Shortest decimal that parses back to the same `f64`.
pub fn format_real(x: f64) -> String {
    let a = x.abs();
    if x == 0.0 || (1e-5..1e16).contains(&a) {
        format!("{x}")
    } else {
        format!("{x:e}")
    }
}

macro_rules! forward_binop {
    ($tr:ident, $method:ident, $body:expr) => {
        impl $tr<&Multivector> for &Multivector {
            type Output = Multivector;
            fn $method(self, rhs: &Multivector) -> Multivector {
                assert_eq!(self.sig, rhs.sig, "signature mismatch");
                let f: fn(&Multivector, &Multivector) -> Multivector = $body;
                f(self, rhs)
            }
        }
        impl $tr<Multivector> for Multivector {
            type Output = Multivector;
            fn $method(self, rhs: Multivector) -> Multivector {
                (&self).$method(&rhs)
            }
        }
        impl $tr<&Multivector> for Multivector {
            type Output = Multivector;
            fn $method(self, rhs: &Multivector) -> Multivector {
                (&self).$method(rhs)
            }
        }
        impl $tr<Multivector> for &Multivector {
            type Output = Multivector;
            fn $method(self, rhs: Multivector) -> Multivector {
                self.$method(&rhs)
            }
        }
    };
}

forward_binop!(Add, add, |a, b| Multivector {
    sig: a.sig,
    coeffs: a.coeffs.iter().zip(&b.coeffs).map(|(x, y)| x + y).collect(),
});
forward_binop!(Sub, sub, |a, b| Multivector {
    sig: a.sig,
    coeffs: a.coeffs.iter().zip(&b.coeffs).map(|(x, y)| x - y).collect(),
});
forward_binop!(Mul, mul, |a, b| a.product_filtered(b, |_, _| true));
forward_binop!(BitXor, bitxor, |a, b| a
    .product_filtered(b, |x, y| x & y == 0));
forward_binop!(BitOr, bitor, |a, b| a
    .product_filtered(b, |x, y| x & !y == 0));

impl AddAssign<&Multivector> for Multivector {
    fn add_assign(&mut self, rhs: &Multivector) {
        assert_eq!(self.sig, rhs.sig, "signature mismatch");
        for (x, y) in self.coeffs.iter_mut().zip(&rhs.coeffs) {
            *x += y;
        }
    }
}

impl SubAssign<&Multivector> for Multivector {
    fn sub_assign(&mut self, rhs: &Multivector) {
        assert_eq!(self.sig, rhs.sig, "signature mismatch");
        for (x, y) in self.coeffs.iter_mut().zip(&rhs.coeffs) {
            *x -= y;
        }
    }
}

impl Neg for &Multivector {
    type Output = Multivector;
    fn neg(self) -> Multivector {
        self.scale(-1.0)
    }
}

impl Neg for Multivector {
    type Output = Multivector;
    fn neg(self) -> Multivector {
        self.scale(-1.0)
    }
}

impl Mul<f64> for &Multivector {
    type Output = Multivector;
    fn mul(self, s: f64) -> Multivector {
        self.scale(s)
    }
}

impl Mul<f64> for Multivector {
    type Output = Multivector;
    fn mul(self, s: f64) -> Multivector {
        self.scale(s)
    }
}

impl Mul<&Multivector> for f64 {
    type Output = Multivector;
    fn mul(self, mv: &Multivector) -> Multivector {
        mv.scale(self)
    }
}

impl Mul<Multivector> for f64 {
    type Output = Multivector;
    fn mul(self, mv: Multivector) -> Multivector {
        mv.scale(self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn e(i: usize) -> Multivector {
        Multivector::basis_vector(Signature::CGA, i - 1)
    }

    #[test]
    fn generator_squares_follow_metric() {
        assert_eq!(e(1).gp(&e(1)), Multivector::one(Signature::CGA));
        assert_eq!(e(5).gp(&e(5)), Multivector::scalar(Signature::CGA, -1.0));
    }

    #[test]
    fn bivector_product_contracts_shared_generator() {
        let sig = Signature::CGA;
        let e12 = e(1) * e(2);
        let e23 = e(2) * e(3);
        assert_eq!(
            e12 * e23,
            Multivector::blade(sig, BasisBlade::new(0b101), 1.0)
        );
    }

    #[test]
    fn outer_and_contraction_basics() {
        let sig = Signature::CGA;
        assert_eq!(&e(1) ^ &e(1), Multivector::zero(sig));
        assert_eq!(&e(1) ^ &e(2), &e(1) * &e(2));
        let e12 = &e(1) ^ &e(2);
        assert_eq!(&e(1) | &e12, e(2));
        assert_eq!(&e12 | &e(1), Multivector::zero(sig));
    }

    #[test]
    fn signature_mismatch_is_an_error() {
        let a = Multivector::one(Signature::CGA);
        let b = Multivector::one(Signature::new(3, 0).unwrap());
        assert!(matches!(
            a.geometric_product(&b),
            Err(Error::SignatureMismatch(..))
        ));
        assert!(a.outer_product(&b).is_err());
        assert!(a.left_contraction(&b).is_err());
    }

    #[test]
    fn projection_range_checked() {
        let a = Multivector::one(Signature::CGA) + e(1) + e(1) * e(2);
        assert_eq!(a.grade_projection(1).unwrap(), e(1));
        assert!(a.grade_projection(6).is_err());
    }

    #[test]
    fn reverse_and_involution_signs() {
        let e12 = e(1) * e(2);
        assert_eq!(e12.reverse(), -&e12);
        assert_eq!(e(1).grade_involution(), -e(1));
        assert_eq!(e12.grade_involution(), e12);
        let s = Multivector::scalar(Signature::CGA, 3.0);
        assert_eq!(s.reverse(), s);
    }

    #[test]
    fn adjoint_is_transpose_of_left_product() {
        let sig = Signature::CGA;
        // <g, A B> = <A^T g, B> on basis elements
        for a in 0..32u32 {
            let am = Multivector::blade(sig, BasisBlade::new(a), 1.0);
            for b in [0u32, 3, 17, 31] {
                let bm = Multivector::blade(sig, BasisBlade::new(b), 1.0);
                let g = Multivector::blade(sig, BasisBlade::new(a ^ b), 1.0);
                let lhs = g.coeff_dot(&(&am * &bm));
                let rhs = (am.adjoint() * &g).coeff_dot(&bm);
                assert_eq!(lhs, rhs);
                let lhs = g.coeff_dot(&(&bm * &am));
                let rhs = (&g * am.adjoint()).coeff_dot(&bm);
                assert_eq!(lhs, rhs);
            }
        }
    }

    #[test]
    fn renders_text_form() {
        let sig = Signature::CGA;
        let mv = Multivector::one(sig) - (e(1) * e(2)).scale(0.5) + (e(1) * e(4)).scale(2.0);
        assert_eq!(mv.to_string(), "1 - 0.5*e12 + 2*e14");
        assert_eq!(Multivector::zero(sig).to_string(), "0");
        assert_eq!((-e(3)).to_string(), "-e3");
        assert_eq!(e(2).scale(1e-20).to_string(), "1e-20*e2");
    }
}
