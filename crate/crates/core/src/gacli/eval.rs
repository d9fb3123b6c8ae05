use std::f64::consts::PI;

use super::error::ExprError;
use super::lexer::Span;
use super::parser::{parse, BinOp, Constant, Expr, ExprKind, UnaryOp};
use super::scene::Scene;
use crate::conformal::{
    e0, einf, embed_point, make_circle, make_flat_point, make_line, make_plane_opns,
    make_point_pair, make_sphere_opns, minkowski_plane, plane_ipns, sphere_ipns, whole_space,
    EuclideanVector,
};
use crate::error::Error;
use crate::mvcore::{Multivector, Signature, Tolerance};
use crate::versor::{
    line_moment, motor, reflector_line, reflector_plane, reflector_sphere, rotor, scalor,
    translator, Mode, Versor,
};

type Out = Result<Multivector, ExprError>;

/// Built-in functions and their accepted argument shapes (sizes of the
/// `;`-separated groups).
const FUNCTIONS: &[(&str, &[&[usize]], &str)] = &[
    ("dual", &[&[1]], "dual(A)"),
    ("undual", &[&[1]], "undual(A)"),
    ("inv", &[&[1]], "inv(V)"),
    ("exp", &[&[1]], "exp(B)"),
    ("grade", &[&[2]], "grade(A, k)"),
    (
        "apply",
        &[&[2], &[3]],
        "apply(V, X) or apply(V, X, motion|reflection)",
    ),
    ("point", &[&[3]], "point(x, y, z)"),
    ("pair", &[&[2]], "pair(P, P)"),
    ("circle", &[&[3]], "circle(P, P, P)"),
    (
        "sphere",
        &[&[4], &[3, 1]],
        "sphere(P, P, P, P) or sphere(cx, cy, cz; r)",
    ),
    ("line", &[&[2]], "line(P, P)"),
    (
        "plane",
        &[&[3], &[3, 1]],
        "plane(P, P, P) or plane(nx, ny, nz; d)",
    ),
    ("flat", &[&[1]], "flat(P)"),
    ("space", &[&[]], "space()"),
    ("rotor", &[&[1, 1]], "rotor(B; theta)"),
    ("translator", &[&[3]], "translator(tx, ty, tz)"),
    ("motor", &[&[3, 1, 1]], "motor(tx, ty, tz; B; theta)"),
    ("scalor", &[&[3, 1]], "scalor(cx, cy, cz; s)"),
    ("mirror_plane", &[&[3, 1]], "mirror_plane(nx, ny, nz; d)"),
    ("mirror_sphere", &[&[3, 1]], "mirror_sphere(cx, cy, cz; r)"),
    (
        "mirror_line",
        &[&[3, 3]],
        "mirror_line(dx, dy, dz; px, py, pz)",
    ),
    ("mirror_point", &[&[3]], "mirror_point(x, y, z)"),
];

/// Names of all built-in functions.
pub fn function_names() -> impl Iterator<Item = &'static str> {
    FUNCTIONS.iter().map(|f| f.0)
}

/// Parses and evaluates `src` against `scene`.
pub fn eval_str(src: &str, scene: &Scene, tol: &Tolerance) -> Out {
    let e = parse(src)?;
    eval(&e, src, scene, tol)
}

/// Evaluates a parsed tree; `src` is the text the spans point into.
pub fn eval(e: &Expr, src: &str, scene: &Scene, tol: &Tolerance) -> Out {
    Evaluator { src, scene, tol }.eval(e)
}

struct Evaluator<'a> {
    src: &'a str,
    scene: &'a Scene,
    tol: &'a Tolerance,
}

impl Evaluator<'_> {
    fn lift<T>(&self, span: Span, r: crate::Result<T>) -> Result<T, ExprError> {
        r.map_err(|e| ExprError::eval(self.src, span, e))
    }

    fn eval(&self, e: &Expr) -> Out {
        let sig = Signature::CGA;
        Ok(match &e.kind {
            ExprKind::Number(x) => Multivector::scalar(sig, *x),
            ExprKind::Blade(b) => Multivector::blade(sig, *b, 1.0),
            ExprKind::Constant(c) => match c {
                Constant::E0 => e0(),
                Constant::Einf => einf(),
                Constant::Minkowski => minkowski_plane(),
                Constant::Pseudoscalar => Multivector::pseudoscalar(sig),
                Constant::Pi => Multivector::scalar(sig, PI),
            },
            ExprKind::Name(n) => self
                .scene
                .lookup(n)
                .cloned()
                .ok_or_else(|| ExprError::unbound(self.src, e.span, n))?,
            ExprKind::Unary(op, a) => {
                let a = self.eval(a)?;
                match op {
                    UnaryOp::Neg => -a,
                    UnaryOp::Reverse => a.reverse(),
                    UnaryOp::Involute => a.grade_involution(),
                }
            }
            ExprKind::Binary(BinOp::Divide, a, b) => {
                let num = self.eval(a)?;
                let den = self.eval(b)?;
                let scale = den.norm_inf();
                if den
                    .terms()
                    .all(|(bl, c)| bl.bits == 0 || self.tol.is_zero(c, scale))
                {
                    let s = den.scalar_part();
                    if self.tol.is_zero(s, 0.0) {
                        return Err(ExprError::eval(
                            self.src,
                            e.span,
                            Error::Domain("division by zero".into()),
                        ));
                    }
                    num.scale(1.0 / s)
                } else {
                    num * self.lift(b.span, den.versor_inverse_with(self.tol))?
                }
            }
            ExprKind::Binary(op, a, b) => {
                let (a, b) = (self.eval(a)?, self.eval(b)?);
                match op {
                    BinOp::Add => a + b,
                    BinOp::Sub => a - b,
                    BinOp::Geometric => a * b,
                    BinOp::Divide => unreachable!("handled above"),
                    BinOp::Outer => a ^ b,
                    BinOp::Contract => a | b,
                }
            }
            ExprKind::Call(name, groups) => self.call(name, groups, e.span)?,
        })
    }

    fn scalar(&self, e: &Expr) -> Result<f64, ExprError> {
        let mv = self.eval(e)?;
        let scale = mv.norm_inf();
        let pure = mv
            .terms()
            .all(|(b, c)| b.bits == 0 || self.tol.is_zero(c, scale));
        if !pure {
            return Err(ExprError::eval(
                self.src,
                e.span,
                Error::Domain(format!("expected a scalar, got {mv}")),
            ));
        }
        Ok(mv.scalar_part())
    }

    fn vec3(&self, group: &[Expr]) -> Result<EuclideanVector, ExprError> {
        Ok(EuclideanVector::new(
            self.scalar(&group[0])?,
            self.scalar(&group[1])?,
            self.scalar(&group[2])?,
        ))
    }

    fn all(&self, group: &[Expr]) -> Result<Vec<Multivector>, ExprError> {
        group.iter().map(|a| self.eval(a)).collect()
    }

    fn versor(&self, span: Span, r: crate::Result<Versor>) -> Out {
        Ok(self.lift(span, r)?.into_mv())
    }

    fn call(&self, name: &str, groups: &[Vec<Expr>], span: Span) -> Out {
        let Some(&(_, shapes, usage)) = FUNCTIONS.iter().find(|f| f.0 == name) else {
            return Err(ExprError::call(
                self.src,
                span,
                format!("unknown function '{name}'"),
            ));
        };
        let shape: Vec<usize> = groups.iter().map(Vec::len).collect();
        if !shapes.contains(&shape.as_slice()) {
            return Err(ExprError::call(self.src, span, format!("usage: {usage}")));
        }
        let g = groups;
        match (name, shape.as_slice()) {
            ("dual", _) => Ok(self.eval(&g[0][0])?.dual()),
            ("undual", _) => Ok(self.eval(&g[0][0])?.undual()),
            ("inv", _) => self.lift(span, self.eval(&g[0][0])?.versor_inverse_with(self.tol)),
            ("exp", _) => self.lift(span, self.eval(&g[0][0])?.exp_special_with(self.tol)),
            ("grade", _) => {
                let a = self.eval(&g[0][0])?;
                let k = self.scalar(&g[0][1])?;
                if k < 0.0 || k.fract() != 0.0 {
                    return Err(ExprError::eval(
                        self.src,
                        g[0][1].span,
                        Error::Grade(format!("grade must be a nonnegative integer, got {k}")),
                    ));
                }
                self.lift(span, a.grade_projection(k as usize))
            }
            ("apply", _) => {
                let v = self.lift(span, Versor::with_tolerance(self.eval(&g[0][0])?, self.tol))?;
                let x = self.eval(&g[0][1])?;
                let mode = match g[0].get(2) {
                    None => v.natural_mode(),
                    Some(arg) => match &arg.kind {
                        ExprKind::Name(m) if Mode::parse(m).is_some() => {
                            Mode::parse(m).expect("checked")
                        }
                        _ => {
                            return Err(ExprError::call(
                                self.src,
                                arg.span,
                                "mode must be 'motion' or 'reflection'",
                            ))
                        }
                    },
                };
                self.lift(span, v.apply(&x, mode))
            }
            ("point", _) | ("mirror_point", _) => Ok(embed_point(self.vec3(&g[0])?)),
            ("pair", _) => {
                let p = self.all(&g[0])?;
                Ok(self.lift(span, make_point_pair(&p[0], &p[1]))?.mv)
            }
            ("circle", _) => {
                let p = self.all(&g[0])?;
                Ok(self.lift(span, make_circle(&p[0], &p[1], &p[2]))?.mv)
            }
            ("sphere", [4]) => {
                let p = self.all(&g[0])?;
                Ok(self
                    .lift(span, make_sphere_opns(&p[0], &p[1], &p[2], &p[3]))?
                    .mv)
            }
            ("sphere", _) => {
                self.lift(span, sphere_ipns(self.vec3(&g[0])?, self.scalar(&g[1][0])?))
            }
            ("line", _) => {
                let p = self.all(&g[0])?;
                Ok(self.lift(span, make_line(&p[0], &p[1]))?.mv)
            }
            ("plane", [3]) => {
                let p = self.all(&g[0])?;
                Ok(self.lift(span, make_plane_opns(&p[0], &p[1], &p[2]))?.mv)
            }
            ("plane", _) => self.lift(span, plane_ipns(self.vec3(&g[0])?, self.scalar(&g[1][0])?)),
            ("flat", _) => Ok(self.lift(span, make_flat_point(&self.eval(&g[0][0])?))?.mv),
            ("space", _) => Ok(whole_space().mv),
            ("rotor", _) => {
                let b = self.eval(&g[0][0])?;
                self.versor(span, rotor(&b, self.scalar(&g[1][0])?))
            }
            ("translator", _) => self.versor(span, translator(self.vec3(&g[0])?)),
            ("motor", _) => {
                let t = self.vec3(&g[0])?;
                let b = self.eval(&g[1][0])?;
                self.versor(span, motor(t, &b, self.scalar(&g[2][0])?))
            }
            ("scalor", _) => {
                let c = self.vec3(&g[0])?;
                self.versor(span, scalor(c, self.scalar(&g[1][0])?))
            }
            ("mirror_plane", _) => {
                let n = self.vec3(&g[0])?;
                self.versor(span, reflector_plane(n, self.scalar(&g[1][0])?))
            }
            ("mirror_sphere", _) => {
                let c = self.vec3(&g[0])?;
                self.versor(span, reflector_sphere(c, self.scalar(&g[1][0])?))
            }
            ("mirror_line", _) => {
                let d = self.vec3(&g[0])?;
                let p = self.vec3(&g[1])?;
                self.versor(span, reflector_line(d, &line_moment(d, p)))
            }
            _ => unreachable!("shape table and dispatch disagree for {name}"),
        }
    }
}
