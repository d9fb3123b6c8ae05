use super::{Multivector, Tolerance};
use crate::error::{Error, Result};

impl Multivector {
    /// Inverse of the unit pseudoscalar, `I / I^2`.
    pub fn pseudoscalar_inverse(&self) -> Multivector {
        let i = Multivector::pseudoscalar(self.sig());
        let i2 = i.gp(&i).scalar_part();
        i.scale(1.0 / i2)
    }

    /// `A* = A I^-1`; maps grade `k` to grade `n - k`.
    pub fn dual(&self) -> Multivector {
        self.gp(&self.pseudoscalar_inverse())
    }

    /// Inverse of the dual, `A I`.
    pub fn undual(&self) -> Multivector {
        self.gp(&Multivector::pseudoscalar(self.sig()))
    }

    /// `a^-1 = a / a^2` for a non-null vector.
    pub fn vector_inverse(&self) -> Result<Multivector> {
        self.vector_inverse_with(&Tolerance::DEFAULT)
    }

    pub fn vector_inverse_with(&self, tol: &Tolerance) -> Result<Multivector> {
        let grades = self.grades(tol);
        if grades.is_empty() {
            return Err(Error::NullVector);
        }
        if grades.single() != Some(1) {
            return Err(Error::Grade("vector inverse needs a grade-1 input".into()));
        }
        let sq = self.scalar_product(self)?;
        let scale = self.norm_inf();
        if tol.is_zero(sq, scale * scale) {
            return Err(Error::NullVector);
        }
        Ok(self.scale(1.0 / sq))
    }

    /// `v^-1 = reverse(v) / <v reverse(v)>_0`, valid when `v reverse(v)` is
    /// a nonzero scalar.
    pub fn versor_inverse(&self) -> Result<Multivector> {
        self.versor_inverse_with(&Tolerance::DEFAULT)
    }

    pub fn versor_inverse_with(&self, tol: &Tolerance) -> Result<Multivector> {
        let rev = self.reverse();
        let norm2 = versor_norm2(self, &rev, tol)?;
        Ok(rev.scale(1.0 / norm2))
    }

    /// Closed-form exponential of an element whose square is a scalar:
    /// trigonometric, nilpotent or hyperbolic branch by the sign of `b^2`.
    pub fn exp_special(&self) -> Result<Multivector> {
        self.exp_special_with(&Tolerance::DEFAULT)
    }

    pub fn exp_special_with(&self, tol: &Tolerance) -> Result<Multivector> {
        let sig = self.sig();
        let grades = self.grades(tol);
        if grades.is_empty() {
            return Ok(Multivector::one(sig));
        }
        if grades.single().is_none() {
            return Err(Error::NotExponentiable);
        }
        let sq = self.gp(self);
        let s = sq.scalar_part();
        let mut off = sq.clone();
        off.coeffs_mut()[0] = 0.0;
        let scale = self.norm_inf();
        if off.norm_inf() > tol.threshold(scale * scale) {
            return Err(Error::NotExponentiable);
        }
        let alpha = s.abs().sqrt();
        if tol.is_zero(s, scale * scale) {
            return Ok(Multivector::one(sig) + self);
        }
        let (c, k) = if s < 0.0 {
            (alpha.cos(), alpha.sin() / alpha)
        } else {
            (alpha.cosh(), alpha.sinh() / alpha)
        };
        let mut out = self.scale(k);
        out.coeffs_mut()[0] += c;
        Ok(out)
    }
}

/// Scalar `<v reverse(v)>_0` after checking that the product has no other
/// component.
pub(crate) fn versor_norm2(v: &Multivector, rev: &Multivector, tol: &Tolerance) -> Result<f64> {
    let vv = v.gp(rev);
    let norm2 = vv.scalar_part();
    let mut off = vv;
    off.coeffs_mut()[0] = 0.0;
    let scale = v.norm_inf();
    let off_mass = off.norm_inf();
    if off_mass > tol.threshold(scale * scale) {
        return Err(Error::NotVersor(format!(
            "v * reverse(v) has non-scalar mass {off_mass:e}"
        )));
    }
    if tol.is_zero(norm2, scale * scale) {
        return Err(Error::SingularVersor);
    }
    Ok(norm2)
}
