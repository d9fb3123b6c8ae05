use std::fmt;

use super::basis::{e0, e0_coeff, einf, einf_coeff, EuclideanVector, NullBasisCoeffs};
use crate::error::{Error, Result};
use crate::mvcore::{Multivector, Signature, Tolerance};

/// The eight object types of the conformal model.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ObjectKind {
    Point,
    PointPair,
    Circle,
    Sphere,
    FlatPoint,
    Line,
    Plane,
    Space,
}

impl ObjectKind {
    pub const ALL: [ObjectKind; 8] = [
        ObjectKind::Point,
        ObjectKind::PointPair,
        ObjectKind::Circle,
        ObjectKind::Sphere,
        ObjectKind::FlatPoint,
        ObjectKind::Line,
        ObjectKind::Plane,
        ObjectKind::Space,
    ];

    pub fn name(self) -> &'static str {
        match self {
            ObjectKind::Point => "point",
            ObjectKind::PointPair => "point-pair",
            ObjectKind::Circle => "circle",
            ObjectKind::Sphere => "sphere",
            ObjectKind::FlatPoint => "flat-point",
            ObjectKind::Line => "line",
            ObjectKind::Plane => "plane",
            ObjectKind::Space => "space",
        }
    }

    pub fn is_flat(self) -> bool {
        matches!(
            self,
            ObjectKind::FlatPoint | ObjectKind::Line | ObjectKind::Plane | ObjectKind::Space
        )
    }
}

impl fmt::Display for ObjectKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Whether the multivector spans the object (outer product null space) or
/// is orthogonal to it (inner product null space).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Representation {
    Opns,
    Ipns,
}

/// Sign of a round object's squared radius.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Reality {
    Real,
    Imaginary,
    Degenerate,
}

#[derive(Debug, Clone, PartialEq)]
pub enum ObjectParams {
    Point {
        location: EuclideanVector,
    },
    /// Point pair, circle or sphere. `carrier` is the flat through the
    /// round (line for pairs, plane for circles); absent for spheres.
    Round {
        center: EuclideanVector,
        radius2: f64,
        reality: Reality,
        carrier: Option<Multivector>,
    },
    FlatPoint {
        location: EuclideanVector,
    },
    /// Unit direction and moment bivector `direction ^ p` for any point
    /// `p` on the line.
    Line {
        direction: EuclideanVector,
        moment: Multivector,
    },
    /// Unit normal and signed distance from the origin.
    Plane {
        normal: EuclideanVector,
        distance: f64,
    },
    Space,
}

/// A classified conformal multivector with its Euclidean parameters.
#[derive(Debug, Clone, PartialEq)]
pub struct ConformalObject {
    pub kind: ObjectKind,
    pub repr: Representation,
    pub mv: Multivector,
    pub params: ObjectParams,
}

fn tol() -> Tolerance {
    Tolerance::DEFAULT
}

fn require_cga(mv: &Multivector) -> Result<()> {
    if mv.sig() != Signature::CGA {
        return Err(Error::SignatureMismatch(mv.sig(), Signature::CGA));
    }
    Ok(())
}

/// `P = p + p^2/2 einf + e0`.
pub fn embed_point(p: EuclideanVector) -> Multivector {
    let mut mv = p.to_mv();
    mv += &einf().scale(0.5 * p.norm_sq());
    mv += &e0();
    mv
}

/// Location of a homogeneous conformal point, after rescaling its `e0`
/// coefficient to 1.
pub fn extract_point(point: &Multivector) -> Result<EuclideanVector> {
    extract_point_with(point, &tol())
}

pub fn extract_point_with(point: &Multivector, tol: &Tolerance) -> Result<EuclideanVector> {
    require_cga(point)?;
    let grades = point.grades(tol);
    if grades.single() != Some(1) {
        return Err(Error::NotAPoint("not a grade-1 vector".into()));
    }
    let scale = point.norm_inf();
    let sq = point.scalar_product(point)?;
    if !tol.is_zero(sq, scale * scale) {
        return Err(Error::NotAPoint(format!("P^2 = {sq:e} is not null")));
    }
    let w = e0_coeff(point);
    if tol.is_zero(w, scale) {
        return Err(Error::PointAtInfinity);
    }
    Ok(EuclideanVector::from_mv(point) * (1.0 / w))
}

/// Divides a conformal point by its `e0` coefficient. Non-points are
/// returned unchanged.
pub fn normalize_object(mv: &Multivector) -> Multivector {
    match extract_point(mv) {
        Ok(_) => mv.scale(1.0 / e0_coeff(mv)),
        Err(_) => mv.clone(),
    }
}

/// Euclidean distance from `P1 . P2 = -|p1 - p2|^2 / 2`. Inputs are
/// rescaled to unit `e0` weight; nullity is the caller's contract.
pub fn point_distance(p1: &Multivector, p2: &Multivector) -> Result<f64> {
    let tol = tol();
    let unit = |p: &Multivector| -> Result<Multivector> {
        require_cga(p)?;
        let w = e0_coeff(p);
        if tol.is_zero(w, p.norm_inf()) {
            return Err(Error::PointAtInfinity);
        }
        Ok(p.scale(1.0 / w))
    };
    let (a, b) = (unit(p1)?, unit(p2)?);
    let ip = a.scalar_product(&b)?;
    if ip > tol.threshold(a.norm_inf() * b.norm_inf()) {
        return Err(Error::Metric(format!(
            "positive inner product {ip:e}: inputs are not both points"
        )));
    }
    Ok((-2.0 * ip).max(0.0).sqrt())
}

fn normalized_points(points: &[&Multivector]) -> Result<Vec<Multivector>> {
    let tol = tol();
    let mut out = Vec::with_capacity(points.len());
    for p in points {
        extract_point_with(p, &tol)?;
        out.push(p.scale(1.0 / e0_coeff(p)));
    }
    for i in 0..out.len() {
        for j in i + 1..out.len() {
            let ip = out[i].scalar_product(&out[j])?;
            let scale = out[i].norm_inf() * out[j].norm_inf();
            if tol.is_zero(ip, scale) {
                return Err(Error::Degenerate(format!(
                    "points {} and {} coincide",
                    i + 1,
                    j + 1
                )));
            }
        }
    }
    Ok(out)
}

fn wedge_all(factors: &[&Multivector]) -> Multivector {
    let mut acc = Multivector::one(Signature::CGA);
    for f in factors {
        acc = &acc ^ *f;
    }
    acc
}

fn nonvanishing(mv: Multivector, factors: &[&Multivector], what: &str) -> Result<Multivector> {
    let scale: f64 = factors.iter().map(|f| f.norm_inf()).product();
    if mv.norm_inf() <= tol().threshold(scale) {
        return Err(Error::Degenerate(format!("{what}: outer product vanishes")));
    }
    Ok(mv)
}

/// `P1 ^ P2`.
pub fn make_point_pair(p1: &Multivector, p2: &Multivector) -> Result<ConformalObject> {
    let pts = normalized_points(&[p1, p2])?;
    let mv = nonvanishing(wedge_all(&[p1, p2]), &[&pts[0], &pts[1]], "point pair")?;
    classify(&mv)
}

/// `P1 ^ P2 ^ P3`; collinear points give a line.
pub fn make_circle(
    p1: &Multivector,
    p2: &Multivector,
    p3: &Multivector,
) -> Result<ConformalObject> {
    let pts = normalized_points(&[p1, p2, p3])?;
    let mv = nonvanishing(
        wedge_all(&[p1, p2, p3]),
        &[&pts[0], &pts[1], &pts[2]],
        "circle",
    )?;
    classify(&mv)
}

/// `P1 ^ P2 ^ P3 ^ P4`; coplanar points give a plane.
pub fn make_sphere_opns(
    p1: &Multivector,
    p2: &Multivector,
    p3: &Multivector,
    p4: &Multivector,
) -> Result<ConformalObject> {
    let pts = normalized_points(&[p1, p2, p3, p4])?;
    let refs: Vec<&Multivector> = pts.iter().collect();
    let mv = nonvanishing(wedge_all(&[p1, p2, p3, p4]), &refs, "sphere")?;
    classify(&mv)
}

/// `P1 ^ P2 ^ einf`.
pub fn make_line(p1: &Multivector, p2: &Multivector) -> Result<ConformalObject> {
    let pts = normalized_points(&[p1, p2])?;
    let inf = einf();
    let mv = nonvanishing(
        wedge_all(&[p1, p2, &inf]),
        &[&pts[0], &pts[1], &inf],
        "line",
    )?;
    classify(&mv)
}

/// `P1 ^ P2 ^ P3 ^ einf`; collinear points are degenerate.
pub fn make_plane_opns(
    p1: &Multivector,
    p2: &Multivector,
    p3: &Multivector,
) -> Result<ConformalObject> {
    let pts = normalized_points(&[p1, p2, p3])?;
    let inf = einf();
    let mv = nonvanishing(
        wedge_all(&[p1, p2, p3, &inf]),
        &[&pts[0], &pts[1], &pts[2], &inf],
        "plane",
    )?;
    classify(&mv)
}

/// `P ^ einf`.
pub fn make_flat_point(p: &Multivector) -> Result<ConformalObject> {
    require_cga(p)?;
    let inf = einf();
    let mv = nonvanishing(p ^ &inf, &[p, &inf], "flat point")?;
    classify(&mv)
}

/// The pseudoscalar `I5 = e1 e2 e3 e+ e-`, i.e. `i3 E`.
pub fn whole_space() -> ConformalObject {
    ConformalObject {
        kind: ObjectKind::Space,
        repr: Representation::Opns,
        mv: Multivector::pseudoscalar(Signature::CGA),
        params: ObjectParams::Space,
    }
}

/// Dual sphere `C - r^2/2 einf`; `r = 0` is the point `C` itself.
pub fn sphere_ipns(center: EuclideanVector, r: f64) -> Result<Multivector> {
    if !(r.is_finite() && r >= 0.0) {
        return Err(Error::Domain(format!(
            "sphere radius must be >= 0, got {r}"
        )));
    }
    Ok(embed_point(center) - einf().scale(0.5 * r * r))
}

/// Dual plane `n + d einf` with `n` normalized.
pub fn plane_ipns(normal: EuclideanVector, distance: f64) -> Result<Multivector> {
    let len = normal.norm();
    if !(len.is_finite() && len > 0.0) {
        return Err(Error::Domain("plane normal must be nonzero".into()));
    }
    Ok(normal.normalized().to_mv() + einf().scale(distance))
}

/// Classifies a grade-homogeneous blade with the default tolerance.
pub fn classify(mv: &Multivector) -> Result<ConformalObject> {
    classify_with(mv, &tol())
}

/// Decision tree: grade 1 is read as a dual (IPNS) sphere, plane or point;
/// grades 2..5 as direct (OPNS) objects, flat iff `X ^ einf = 0`.
pub fn classify_with(mv: &Multivector, tol: &Tolerance) -> Result<ConformalObject> {
    require_cga(mv)?;
    let grades = mv.grades(tol);
    let grade = match grades.single() {
        Some(g) => g,
        None if grades.is_empty() => return Err(Error::UnknownObject("zero multivector".into())),
        None => {
            return Err(Error::NotABlade(format!(
                "mixed grades {:?}",
                grades.iter().collect::<Vec<_>>()
            )))
        }
    };
    let mv = mv.grade_part(grade);
    let scale = mv.norm_inf();

    let square = &mv * &mv.reverse();
    let mut off = square.clone();
    off.coeffs_mut()[0] = 0.0;
    if off.norm_inf() > tol.threshold(scale * scale) {
        return Err(Error::NotABlade("X * reverse(X) is not a scalar".into()));
    }

    let inf = einf();
    let flat = (&mv ^ &inf).norm_inf() <= tol.threshold(scale);
    let (kind, repr) = match (grade, flat) {
        (0, _) => return Err(Error::UnknownObject("scalar".into())),
        (1, _) => return classify_vector(mv, tol),
        (2, false) => (ObjectKind::PointPair, Representation::Opns),
        (2, true) => (ObjectKind::FlatPoint, Representation::Opns),
        (3, false) => (ObjectKind::Circle, Representation::Opns),
        (3, true) => (ObjectKind::Line, Representation::Opns),
        (4, false) => (ObjectKind::Sphere, Representation::Opns),
        (4, true) => (ObjectKind::Plane, Representation::Opns),
        _ => {
            return Ok(ConformalObject {
                kind: ObjectKind::Space,
                repr: Representation::Opns,
                mv,
                params: ObjectParams::Space,
            })
        }
    };

    if flat && (&inf | &mv).norm_inf() <= tol.threshold(scale) {
        return Err(Error::UnknownObject(
            "flat blade at infinity (direction) has no finite part".into(),
        ));
    }

    let params = match kind {
        ObjectKind::PointPair | ObjectKind::Circle | ObjectKind::Sphere => {
            round_params_opns(&mv, tol)?
        }
        ObjectKind::FlatPoint => ObjectParams::FlatPoint {
            location: flat_point_location(&mv),
        },
        ObjectKind::Line => line_params(&mv),
        ObjectKind::Plane => plane_params_from_dual(&plane_dual(&mv)),
        _ => unreachable!(),
    };
    Ok(ConformalObject {
        kind,
        repr,
        mv,
        params,
    })
}

fn classify_vector(mv: Multivector, tol: &Tolerance) -> Result<ConformalObject> {
    let scale = mv.norm_inf();
    let w = e0_coeff(&mv);
    if tol.is_zero(w, scale) {
        let n = EuclideanVector::from_mv(&mv);
        if n.norm() <= tol.threshold(scale) {
            return Err(Error::UnknownObject("point at infinity".into()));
        }
        return Ok(ConformalObject {
            kind: ObjectKind::Plane,
            repr: Representation::Ipns,
            params: plane_params_from_dual(&mv),
            mv,
        });
    }
    let sq = mv.scalar_product(&mv)?;
    if tol.is_zero(sq, scale * scale) {
        let location = EuclideanVector::from_mv(&mv) * (1.0 / w);
        return Ok(ConformalObject {
            kind: ObjectKind::Point,
            repr: Representation::Ipns,
            mv,
            params: ObjectParams::Point { location },
        });
    }
    let radius2 = sq / (w * w);
    Ok(ConformalObject {
        kind: ObjectKind::Sphere,
        repr: Representation::Ipns,
        params: ObjectParams::Round {
            center: EuclideanVector::from_mv(&mv) * (1.0 / w),
            radius2,
            reality: reality(radius2, 0.0, tol),
            carrier: None,
        },
        mv,
    })
}

fn reality(radius2: f64, scale: f64, tol: &Tolerance) -> Reality {
    if tol.is_zero(radius2, scale) {
        Reality::Degenerate
    } else if radius2 > 0.0 {
        Reality::Real
    } else {
        Reality::Imaginary
    }
}

/// Center and squared radius of a round object, direct (grades 2..4) or
/// dual (grade 1).
pub fn round_params(mv: &Multivector) -> Result<(EuclideanVector, f64)> {
    let obj = classify(mv)?;
    match obj.params {
        ObjectParams::Round {
            center, radius2, ..
        } => Ok((center, radius2)),
        ObjectParams::Point { location } => Ok((location, 0.0)),
        _ => Err(Error::FlatObject),
    }
}

/// Center from the reflection of infinity in the round, `X einf X`;
/// squared radius `<X X^>_0 / <(einf | X)^2>_0`.
fn round_params_opns(x: &Multivector, tol: &Tolerance) -> Result<ObjectParams> {
    let inf = einf();
    let c = (x * &inf * x).grade_part(1);
    let w = e0_coeff(&c);
    if tol.is_zero(w, c.norm_inf()) {
        return Err(Error::UnknownObject("round with center at infinity".into()));
    }
    let center = EuclideanVector::from_mv(&c) * (1.0 / w);
    let contracted = &inf | x;
    let denom = (&contracted * &contracted).scalar_part();
    let num = (x * &x.grade_involution()).scalar_part();
    let radius2 = num / denom;
    let carrier = match x.grades(tol).single() {
        Some(4) => None,
        _ => Some(x ^ &inf),
    };
    Ok(ObjectParams::Round {
        center,
        radius2,
        reality: reality(radius2, center.norm_sq().max(1.0), tol),
        carrier,
    })
}

/// Location of `P ^ einf` from `e0 | X = p + e0` (up to scale).
fn flat_point_location(x: &Multivector) -> EuclideanVector {
    let v = &e0() | x;
    EuclideanVector::from_mv(&v) * (1.0 / e0_coeff(&v))
}

/// For `X = s (d E - m einf)` with `s > 0`: the `e_i ^ e0 ^ einf`
/// coefficients are `-s d_i`, the `e_ij ^ einf` ones `-s m_ij`.
fn line_params(x: &Multivector) -> ObjectParams {
    let n = NullBasisCoeffs::from_multivector(x);
    let u = EuclideanVector::new(
        -n.get(0b001, true, true),
        -n.get(0b010, true, true),
        -n.get(0b100, true, true),
    );
    let s = u.norm();
    let mut moment = Multivector::zero(Signature::CGA);
    for bits in [0b011u32, 0b101, 0b110] {
        moment.coeffs_mut()[bits as usize] = -n.get(bits, false, true) / s;
    }
    ObjectParams::Line {
        direction: u * (1.0 / s),
        moment,
    }
}

/// Dual of a direct plane, signed so that `P1 ^ P2 ^ P3 ^ einf` has the
/// normal `(p2 - p1) x (p3 - p1)`.
fn plane_dual(x: &Multivector) -> Multivector {
    x.undual()
}

fn plane_params_from_dual(pi: &Multivector) -> ObjectParams {
    let n = EuclideanVector::from_mv(pi);
    let len = n.norm();
    ObjectParams::Plane {
        normal: n * (1.0 / len),
        distance: einf_coeff(pi) / len,
    }
}

impl ConformalObject {
    /// Rebuilds a multivector from the extracted parameters alone; equal
    /// to `self.mv` up to a nonzero scalar factor.
    pub fn reconstruct(&self) -> Multivector {
        let inf = einf();
        match (&self.params, self.repr) {
            (ObjectParams::Point { location }, _) => embed_point(*location),
            (ObjectParams::FlatPoint { location }, _) => embed_point(*location) ^ &inf,
            (ObjectParams::Line { direction, moment }, _) => {
                direction.to_mv() * super::basis::minkowski_plane() - moment * &inf
            }
            (ObjectParams::Plane { normal, distance }, repr) => {
                let pi = normal.to_mv() + inf.scale(*distance);
                match repr {
                    Representation::Ipns => pi,
                    // undual inverse: X = pi I^-1
                    Representation::Opns => pi.dual(),
                }
            }
            (
                ObjectParams::Round {
                    center,
                    radius2,
                    carrier,
                    ..
                },
                repr,
            ) => {
                let sigma = embed_point(*center) - inf.scale(0.5 * radius2);
                match (carrier, repr) {
                    (None, Representation::Ipns) => sigma,
                    (None, Representation::Opns) => sigma.dual(),
                    // Dual of the round = dual sphere ^ dual carrier.
                    (Some(flat), _) => (&sigma ^ &flat.undual()).dual(),
                }
            }
            (ObjectParams::Space, _) => Multivector::pseudoscalar(Signature::CGA),
        }
    }

    /// The two endpoints of a point pair, ordered as constructed:
    /// `P1 ^ P2` gives `(p1, p2)`.
    pub fn point_pair_endpoints(&self) -> Result<(EuclideanVector, EuclideanVector)> {
        match (&self.kind, &self.params) {
            (
                ObjectKind::PointPair,
                ObjectParams::Round {
                    center,
                    radius2,
                    carrier: Some(line),
                    ..
                },
            ) => {
                if *radius2 < 0.0 {
                    return Err(Error::Domain("imaginary point pair".into()));
                }
                let ObjectParams::Line { direction, .. } = line_params(line) else {
                    unreachable!()
                };
                let r = radius2.sqrt();
                Ok((*center - direction * r, *center + direction * r))
            }
            _ => Err(Error::Domain(format!("{} is not a point pair", self.kind))),
        }
    }
}

/// Scalar `k` with `a = k b`, if one exists within tolerance.
pub fn proportionality(a: &Multivector, b: &Multivector, tol: &Tolerance) -> Option<f64> {
    let bb = b.coeff_norm_sq();
    if bb == 0.0 {
        return None;
    }
    let k = a.coeff_dot(b) / bb;
    let resid = (a - &b.scale(k)).norm_inf();
    (k != 0.0 && resid <= tol.threshold(a.norm_inf())).then_some(k)
}
