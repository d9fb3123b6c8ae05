use std::fmt;

use super::Sample;
use crate::conformal::e0_coeff;
use crate::error::{Error, Result};
use crate::mvcore::{BasisBlade, Multivector, Signature, Tolerance};
use crate::versor::Parity;

/// Sign convention of the sandwich for odd weights.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum NeuronMode {
    /// `(-1)^w W^-1 X W`.
    SignedSandwich,
    /// `W^-1 X^ W` with the grade involution applied iff `w` is odd.
    TwistedAdjoint,
}

impl NeuronMode {
    pub fn name(self) -> &'static str {
        match self {
            NeuronMode::SignedSandwich => "signed-sandwich",
            NeuronMode::TwistedAdjoint => "twisted-adjoint",
        }
    }

    pub fn parse(s: &str) -> Option<NeuronMode> {
        match s {
            "signed-sandwich" => Some(NeuronMode::SignedSandwich),
            "twisted-adjoint" => Some(NeuronMode::TwistedAdjoint),
            _ => None,
        }
    }
}

impl fmt::Display for NeuronMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// How outputs and targets are made comparable before the squared error.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Normalization {
    /// Compare raw coefficients.
    Raw,
    /// Divide point targets and their outputs by the `e0` weight; other
    /// objects as in `UnitNorm`.
    PointE0,
    /// Divide output and target by their coefficient norms, with the
    /// target's sign matched to the output's: `P` and `-P` are the same
    /// object.
    UnitNorm,
}

impl Normalization {
    pub fn name(self) -> &'static str {
        match self {
            Normalization::Raw => "raw",
            Normalization::PointE0 => "point-e0",
            Normalization::UnitNorm => "unit-norm",
        }
    }

    pub fn parse(s: &str) -> Option<Normalization> {
        match s {
            "raw" => Some(Normalization::Raw),
            "point-e0" => Some(Normalization::PointE0),
            "unit-norm" => Some(Normalization::UnitNorm),
            _ => None,
        }
    }
}

/// Training objective: normalized squared error plus
/// `penalty * (|<W W~>_!=0| / <W W~>_0)^2`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Objective {
    pub normalization: Normalization,
    pub penalty: f64,
}

impl Default for Objective {
    fn default() -> Self {
        Objective {
            normalization: Normalization::UnitNorm,
            penalty: 0.1,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct GeometricNeuron {
    pub weight: Multivector,
    pub threshold: Multivector,
    pub parity: Parity,
    pub mode: NeuronMode,
}

/// `<e_a reverse(e_a)>_0` for every blade.
fn eta(sig: Signature) -> Vec<f64> {
    (0..sig.blade_count() as u32)
        .map(|a| {
            let k = a.count_ones();
            let rev = if (k * k.saturating_sub(1) / 2).is_multiple_of(2) {
                1.0
            } else {
                -1.0
            };
            rev * sig.product_sign(a, a)
        })
        .collect()
}

fn weight_norm2(w: &Multivector, eta: &[f64]) -> Result<f64> {
    let s: f64 = w.coeffs().iter().zip(eta).map(|(c, e)| c * c * e).sum();
    let scale = w.coeff_norm_sq();
    if !s.is_finite() || Tolerance::DEFAULT.is_zero(s, scale) {
        return Err(Error::SingularWeight);
    }
    Ok(s)
}

impl GeometricNeuron {
    pub fn new(weight: Multivector, parity: Parity, mode: NeuronMode) -> Self {
        let threshold = Multivector::zero(weight.sig());
        GeometricNeuron {
            weight,
            threshold,
            parity,
            mode,
        }
    }

    /// `1 + noise` on the even blades, or `e1 + noise` on the odd ones,
    /// with Gaussian noise of standard deviation 0.01.
    pub fn near_identity(parity: Parity, mode: NeuronMode, seed: u64) -> Self {
        use rand::SeedableRng;
        use rand_distr::{Distribution, Normal};
        let sig = Signature::CGA;
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
        let normal = Normal::new(0.0, 0.01).expect("valid stddev");
        let mut w = Multivector::zero(sig);
        let base = match parity {
            Parity::Even => 0,
            Parity::Odd => 1,
        };
        w.coeffs_mut()[base] = 1.0;
        for (a, c) in w.coeffs_mut().iter_mut().enumerate() {
            if (a.count_ones() % 2 == 1) == parity.is_odd() {
                *c += normal.sample(&mut rng);
            }
        }
        GeometricNeuron::new(w, parity, mode)
    }

    fn sign_and_involution(&self) -> (f64, bool) {
        match (self.mode, self.parity) {
            (_, Parity::Even) => (1.0, false),
            (NeuronMode::SignedSandwich, Parity::Odd) => (-1.0, false),
            (NeuronMode::TwistedAdjoint, Parity::Odd) => (1.0, true),
        }
    }

    fn prepared_input(&self, x: &Multivector) -> Multivector {
        let (sign, involute) = self.sign_and_involution();
        let x = if involute {
            x.grade_involution()
        } else {
            x.clone()
        };
        if sign < 0.0 {
            -x
        } else {
            x
        }
    }

    pub fn weight_inverse(&self) -> Result<Multivector> {
        let s = weight_norm2(&self.weight, &eta(self.weight.sig()))?;
        Ok(self.weight.reverse().scale(1.0 / s))
    }

    pub fn forward(&self, x: &Multivector) -> Result<Multivector> {
        let inv = self.weight_inverse()?;
        let z = inv.geometric_product(&self.prepared_input(x))?;
        Ok(z.geometric_product(&self.weight)? + &self.threshold)
    }

    /// Zeroes the coefficients of the wrong parity.
    pub fn project_parity(&mut self) {
        self.weight = self.weight.parity_part(self.parity.is_odd());
    }

    /// Rescales `W` so that `|<W W~>_0| = 1`; `forward` is unchanged.
    pub fn normalize_gauge(&mut self) -> Result<()> {
        let s = weight_norm2(&self.weight, &eta(self.weight.sig()))?;
        self.weight = self.weight.scale(1.0 / s.abs().sqrt());
        Ok(())
    }

    /// Two literal lines plus parity and mode.
    pub fn to_text(&self) -> String {
        format!(
            "W = {}\nTheta = {}\nparity = {}\nmode = {}\n",
            self.weight, self.threshold, self.parity, self.mode
        )
    }

    pub fn from_text(text: &str) -> Result<Self> {
        let mut w = None;
        let mut theta = None;
        let mut parity = None;
        let mut mode = None;
        for line in text.lines().filter(|l| !l.trim().is_empty()) {
            let (key, value) = line
                .split_once('=')
                .ok_or_else(|| Error::Literal(format!("expected 'key = value': {line}")))?;
            let value = value.trim();
            match key.trim() {
                "W" => w = Some(Multivector::parse_literal(value, Signature::CGA)?),
                "Theta" => theta = Some(Multivector::parse_literal(value, Signature::CGA)?),
                "parity" => parity = Parity::parse(value),
                "mode" => mode = NeuronMode::parse(value),
                other => return Err(Error::Literal(format!("unknown key '{other}'"))),
            }
        }
        match (w, theta, parity, mode) {
            (Some(weight), Some(threshold), Some(parity), Some(mode)) => Ok(GeometricNeuron {
                weight,
                threshold,
                parity,
                mode,
            }),
            _ => Err(Error::Literal(
                "neuron needs W, Theta, parity and mode".into(),
            )),
        }
    }
}

fn is_point(t: &Multivector) -> bool {
    let tol = Tolerance::DEFAULT;
    t.grades(&tol).single() == Some(1) && !tol.is_zero(e0_coeff(t), t.norm_inf()) && {
        let sq = t.scalar_product(t).unwrap_or(f64::NAN);
        tol.is_zero(sq, t.norm_inf() * t.norm_inf())
    }
}

/// `e0` weight as a linear functional on coefficients.
fn e0_functional(sig: Signature) -> Multivector {
    let mut c = Multivector::zero(sig);
    c.set(BasisBlade::new(0b10000), 1.0);
    c.set(BasisBlade::new(0b01000), -1.0);
    c
}

/// Normalized value of `y` and the transposed Jacobian applied to `g`.
struct Normalized {
    value: Multivector,
    kind: NormKind,
}

enum NormKind {
    Identity,
    Unit { norm: f64 },
    E0 { w: f64 },
}

fn normalize(y: &Multivector, how: Normalization, target_is_point: bool) -> Normalized {
    match how {
        Normalization::Raw => Normalized {
            value: y.clone(),
            kind: NormKind::Identity,
        },
        Normalization::PointE0 if target_is_point => {
            let w = e0_coeff(y);
            Normalized {
                value: y.scale(1.0 / w),
                kind: NormKind::E0 { w },
            }
        }
        _ => {
            let norm = y.coeff_norm();
            Normalized {
                value: y.scale(1.0 / norm),
                kind: NormKind::Unit { norm },
            }
        }
    }
}

impl Normalized {
    fn pullback(&self, y: &Multivector, g: &Multivector) -> Multivector {
        match self.kind {
            NormKind::Identity => g.clone(),
            NormKind::Unit { norm } => {
                let proj = self.value.coeff_dot(g);
                (g - &self.value.scale(proj)).scale(1.0 / norm)
            }
            NormKind::E0 { w } => {
                let c = e0_functional(y.sig());
                (g.scale(1.0 / w)) - c.scale(y.coeff_dot(g) / (w * w))
            }
        }
    }
}

fn target_value(t: &Multivector, how: Normalization) -> (Multivector, bool) {
    let point = how == Normalization::PointE0 && is_point(t);
    (normalize(t, how, point).value, point)
}

/// Normalized output minus normalized target. Unit-norm targets are
/// flipped to the output's side; the flip is locally constant, so the
/// pullback is unaffected.
fn residual(y: &Normalized, t: &Multivector) -> Multivector {
    match y.kind {
        NormKind::Unit { .. } if y.value.coeff_dot(t) < 0.0 => &y.value + t,
        _ => &y.value - t,
    }
}

/// Mean squared coefficient error over the samples, after normalization.
pub fn loss(n: &GeometricNeuron, samples: &[Sample], how: Normalization) -> Result<f64> {
    if samples.is_empty() {
        return Err(Error::Domain("loss needs at least one sample".into()));
    }
    let mut total = 0.0;
    for s in samples {
        let y = n.forward(&s.x)?;
        let (t, point) = target_value(&s.t, how);
        let r = residual(&normalize(&y, how, point), &t);
        total += r.coeff_norm_sq();
    }
    Ok(total / samples.len() as f64)
}

fn penalty_value(w: &Multivector, eta: &[f64]) -> Result<f64> {
    let s = weight_norm2(w, eta)?;
    let q = w.geometric_product(&w.reverse())?;
    let off = q.coeff_norm_sq() - q.scalar_part().powi(2);
    Ok(off / (s * s))
}

/// Loss plus the versor penalty.
pub fn objective(n: &GeometricNeuron, samples: &[Sample], obj: &Objective) -> Result<f64> {
    let mut v = loss(n, samples, obj.normalization)?;
    if obj.penalty != 0.0 {
        v += obj.penalty * penalty_value(&n.weight, &eta(n.weight.sig()))?;
    }
    Ok(v)
}

/// Partial derivatives of the objective with respect to every coefficient
/// of `W` and `Theta`, not projected onto the weight's parity.
#[derive(Debug, Clone, PartialEq)]
pub struct Gradient {
    pub dw: Multivector,
    pub dtheta: Multivector,
    /// Data term of the objective at the evaluation point.
    pub loss: f64,
    pub objective: f64,
}

/// Analytic gradient by reverse-mode differentiation of the sandwich.
pub fn gradient(n: &GeometricNeuron, samples: &[Sample], obj: &Objective) -> Result<Gradient> {
    if samples.is_empty() {
        return Err(Error::Domain("gradient needs at least one sample".into()));
    }
    let sig = n.weight.sig();
    let eta = eta(sig);
    let w = &n.weight;
    let s = weight_norm2(w, &eta)?;
    let w_rev = w.reverse();
    let inv = w_rev.scale(1.0 / s);
    let m = samples.len() as f64;

    let mut dw = Multivector::zero(sig);
    let mut dtheta = Multivector::zero(sig);
    // Accumulated dL/d(W^-1).
    let mut h = Multivector::zero(sig);
    let mut total = 0.0;
    for sample in samples {
        let x = n.prepared_input(&sample.x);
        let a = inv.geometric_product(&x)?;
        let y = a.geometric_product(w)? + &n.threshold;
        let (t, point) = target_value(&sample.t, obj.normalization);
        let norm = normalize(&y, obj.normalization, point);
        let r = residual(&norm, &t);
        total += r.coeff_norm_sq();
        let g = norm.pullback(&y, &r.scale(2.0 / m));
        dtheta += &g;
        dw += &a.adjoint().geometric_product(&g)?;
        let b = x.geometric_product(w)?;
        h += &g.geometric_product(&b.adjoint())?;
    }
    // W^-1 = reverse(W) / s with s = sum eta_a W_a^2.
    let hw = h.coeff_dot(&w_rev);
    dw += &h.reverse().scale(1.0 / s);
    dw -= &eta_times(w, &eta).scale(2.0 * hw / (s * s));

    let loss = total / m;
    let mut value = loss;
    if obj.penalty != 0.0 {
        let q = w.geometric_product(&w_rev)?;
        let mut off = q.clone();
        off.coeffs_mut()[0] = 0.0;
        let o = off.coeff_norm_sq();
        // d|off|^2 = 2 <off, dW W~ + W dW~>
        let grad_o = (off.geometric_product(&w_rev.adjoint())?
            + w.adjoint().geometric_product(&off)?.reverse())
        .scale(2.0);
        let grad_p = grad_o.scale(1.0 / (s * s)) - eta_times(w, &eta).scale(4.0 * o / (s * s * s));
        dw += &grad_p.scale(obj.penalty);
        value += obj.penalty * o / (s * s);
    }
    Ok(Gradient {
        dw,
        dtheta,
        loss,
        objective: value,
    })
}

fn eta_times(w: &Multivector, eta: &[f64]) -> Multivector {
    let coeffs = w.coeffs().iter().zip(eta).map(|(c, e)| c * e).collect();
    Multivector::from_coeffs(w.sig(), coeffs).expect("same length")
}

fn coeff_mut(n: &mut GeometricNeuron, on_weight: bool, k: usize) -> &mut f64 {
    if on_weight {
        &mut n.weight.coeffs_mut()[k]
    } else {
        &mut n.threshold.coeffs_mut()[k]
    }
}

/// Central differences with step `1e-6 (1 + |c|)` on each coefficient.
pub fn gradient_finite_difference(
    n: &GeometricNeuron,
    samples: &[Sample],
    obj: &Objective,
) -> Result<Gradient> {
    let sig = n.weight.sig();
    let mut probe = n.clone();
    let mut dw = Multivector::zero(sig);
    let mut dtheta = Multivector::zero(sig);
    for k in 0..sig.blade_count() {
        for on_weight in [true, false] {
            let c0 = *coeff_mut(&mut probe, on_weight, k);
            let step = 1e-6 * (1.0 + c0.abs());
            *coeff_mut(&mut probe, on_weight, k) = c0 + step;
            let up = objective(&probe, samples, obj)?;
            *coeff_mut(&mut probe, on_weight, k) = c0 - step;
            let down = objective(&probe, samples, obj)?;
            *coeff_mut(&mut probe, on_weight, k) = c0;
            let d = (up - down) / (2.0 * step);
            let target = if on_weight { &mut dw } else { &mut dtheta };
            target.coeffs_mut()[k] = d;
        }
    }
    Ok(Gradient {
        dw,
        dtheta,
        loss: loss(n, samples, obj.normalization)?,
        objective: objective(n, samples, obj)?,
    })
}
