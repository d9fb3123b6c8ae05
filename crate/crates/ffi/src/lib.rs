//! C ABI over the `cga` library.
//!
//! Multivectors and versors cross the boundary as opaque heap handles that
//! the caller releases with [`cga_mv_free`] and [`cga_versor_free`]. Every
//! fallible function returns a [`CgaStatus`]; on failure the message is
//! available from [`cga_last_error_message`] on the same thread. Output
//! pointers are written only on success. Strings returned by the library
//! are released with [`cga_string_free`].

#![allow(clippy::missing_safety_doc)]

use std::cell::RefCell;
use std::ffi::{c_char, c_int, CStr, CString};
use std::panic::{self, AssertUnwindSafe};
use std::ptr;

use cga::conformal::{
    classify, embed_point, extract_point, point_distance, EuclideanVector, ObjectKind,
};
use cga::gacli::{eval_str, ExprError, Scene};
use cga::versor::{
    reflector_plane, reflector_sphere, rotor, scalor, translator, Mode, Parity, Versor,
};
use cga::{Error, Multivector, Signature, Tolerance};

/// Number of coefficients of a Cl(4,1) multivector.
pub const CGA_BLADE_COUNT: usize = 32;

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CgaStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    BadLength = 3,
    /// Malformed expression, unbound name or bad call.
    Syntax = 4,
    /// Enum argument out of range.
    InvalidArgument = 5,
    Grade = 10,
    NullVector = 11,
    NotVersor = 12,
    SingularVersor = 13,
    NotExponentiable = 14,
    PointAtInfinity = 15,
    NotAPoint = 16,
    Metric = 17,
    Degenerate = 18,
    Domain = 19,
    UnknownObject = 20,
    FlatObject = 21,
    MixedParity = 22,
    ParityMode = 23,
    Other = 29,
    Panic = 99,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CgaBinaryOp {
    Add = 0,
    Sub = 1,
    Geometric = 2,
    Outer = 3,
    LeftContraction = 4,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CgaUnaryOp {
    Negate = 0,
    Reverse = 1,
    Involute = 2,
    Dual = 3,
    Undual = 4,
    /// Versor inverse, `reverse(A) / <A reverse(A)>_0`.
    Inverse = 5,
    /// Closed-form exponential of an element squaring to a scalar.
    Exp = 6,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CgaObjectKind {
    Point = 0,
    PointPair = 1,
    Circle = 2,
    Sphere = 3,
    FlatPoint = 4,
    Line = 5,
    Plane = 6,
    Space = 7,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CgaMode {
    Reflection = 0,
    Motion = 1,
    /// Reflection for odd versors, motion for even ones.
    Natural = 2,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CgaParity {
    Even = 0,
    Odd = 1,
}

macro_rules! from_c_int {
    ($ty:ident { $($v:ident),+ $(,)? }) => {
        impl $ty {
            fn from_c(raw: c_int) -> Result<Self, Failure> {
                $(if raw == $ty::$v as c_int {
                    return Ok($ty::$v);
                })+
                Err(Failure::new(
                    CgaStatus::InvalidArgument,
                    format!("{raw} is not a valid {}", stringify!($ty)),
                ))
            }
        }
    };
}

from_c_int!(CgaBinaryOp {
    Add,
    Sub,
    Geometric,
    Outer,
    LeftContraction
});
from_c_int!(CgaUnaryOp {
    Negate,
    Reverse,
    Involute,
    Dual,
    Undual,
    Inverse,
    Exp
});
from_c_int!(CgaMode {
    Reflection,
    Motion,
    Natural
});

/// Opaque Cl(4,1) multivector.
pub struct CgaMultivector(Multivector);

/// Opaque validated versor.
pub struct CgaVersor(Versor);

struct Failure {
    status: CgaStatus,
    message: String,
}

impl Failure {
    fn new(status: CgaStatus, message: impl Into<String>) -> Self {
        Failure {
            status,
            message: message.into(),
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let status = match &e {
            Error::Grade(_) => CgaStatus::Grade,
            Error::NullVector => CgaStatus::NullVector,
            Error::NotVersor(_) => CgaStatus::NotVersor,
            Error::SingularVersor => CgaStatus::SingularVersor,
            Error::NotExponentiable => CgaStatus::NotExponentiable,
            Error::PointAtInfinity => CgaStatus::PointAtInfinity,
            Error::NotAPoint(_) => CgaStatus::NotAPoint,
            Error::Metric(_) => CgaStatus::Metric,
            Error::Degenerate(_) => CgaStatus::Degenerate,
            Error::Domain(_) => CgaStatus::Domain,
            Error::UnknownObject(_) => CgaStatus::UnknownObject,
            Error::FlatObject => CgaStatus::FlatObject,
            Error::MixedParity => CgaStatus::MixedParity,
            Error::ParityMode(_) => CgaStatus::ParityMode,
            _ => CgaStatus::Other,
        };
        Failure::new(status, e.to_string())
    }
}

impl From<ExprError> for Failure {
    fn from(e: ExprError) -> Self {
        match e {
            ExprError::Eval { source, .. } => Failure::from(source),
            other => Failure::new(CgaStatus::Syntax, other.to_string()),
        }
    }
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_last_error(message: &str) {
    let c = CString::new(message.replace('\0', " ")).expect("interior NULs removed");
    LAST_ERROR.with(|slot| *slot.borrow_mut() = Some(c));
}

/// Runs `f`, converting errors and panics into a status code.
fn guard(f: impl FnOnce() -> Result<(), Failure>) -> CgaStatus {
    match panic::catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => CgaStatus::Ok,
        Ok(Err(fail)) => {
            set_last_error(&fail.message);
            fail.status
        }
        Err(_) => {
            set_last_error("internal panic");
            CgaStatus::Panic
        }
    }
}

unsafe fn get<'a, T>(p: *const T, what: &str) -> Result<&'a T, Failure> {
    p.as_ref()
        .ok_or_else(|| Failure::new(CgaStatus::NullPointer, format!("{what} is NULL")))
}

unsafe fn put<T>(out: *mut *mut T, value: T) -> Result<(), Failure> {
    if out.is_null() {
        return Err(Failure::new(
            CgaStatus::NullPointer,
            "output pointer is NULL",
        ));
    }
    *out = Box::into_raw(Box::new(value));
    Ok(())
}

unsafe fn text<'a>(s: *const c_char) -> Result<&'a str, Failure> {
    if s.is_null() {
        return Err(Failure::new(CgaStatus::NullPointer, "string is NULL"));
    }
    CStr::from_ptr(s)
        .to_str()
        .map_err(|_| Failure::new(CgaStatus::InvalidUtf8, "string is not valid UTF-8"))
}

fn check_out<T>(out: *mut T) -> Result<(), Failure> {
    if out.is_null() {
        Err(Failure::new(
            CgaStatus::NullPointer,
            "output pointer is NULL",
        ))
    } else {
        Ok(())
    }
}

/// Library version as a static NUL-terminated string.
#[no_mangle]
pub extern "C" fn cga_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// Message of the most recent failure on this thread, or NULL. The pointer
/// stays valid until the next failing call on the same thread.
#[no_mangle]
pub extern "C" fn cga_last_error_message() -> *const c_char {
    LAST_ERROR.with(|slot| slot.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// Releases a string returned by this library. NULL is ignored.
#[no_mangle]
pub unsafe extern "C" fn cga_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Builds a multivector from `len` (= 32) coefficients indexed by blade
/// bitset: bit 0..4 are e1, e2, e3, e+, e-.
#[no_mangle]
pub unsafe extern "C" fn cga_mv_from_coeffs(
    coeffs: *const f64,
    len: usize,
    out: *mut *mut CgaMultivector,
) -> CgaStatus {
    guard(|| {
        if coeffs.is_null() {
            return Err(Failure::new(CgaStatus::NullPointer, "coeffs is NULL"));
        }
        if len != CGA_BLADE_COUNT {
            return Err(Failure::new(
                CgaStatus::BadLength,
                format!("expected {CGA_BLADE_COUNT} coefficients, got {len}"),
            ));
        }
        let c = std::slice::from_raw_parts(coeffs, len).to_vec();
        put(
            out,
            CgaMultivector(Multivector::from_coeffs(Signature::CGA, c)?),
        )
    })
}

/// Copies the 32 coefficients into `out`, which must hold `len >= 32`.
#[no_mangle]
pub unsafe extern "C" fn cga_mv_coeffs(
    mv: *const CgaMultivector,
    out: *mut f64,
    len: usize,
) -> CgaStatus {
    guard(|| {
        let mv = get(mv, "multivector")?;
        check_out(out)?;
        if len < CGA_BLADE_COUNT {
            return Err(Failure::new(
                CgaStatus::BadLength,
                format!("buffer holds {len} values, need {CGA_BLADE_COUNT}"),
            ));
        }
        ptr::copy_nonoverlapping(mv.0.coeffs().as_ptr(), out, CGA_BLADE_COUNT);
        Ok(())
    })
}

#[no_mangle]
pub unsafe extern "C" fn cga_mv_clone(
    mv: *const CgaMultivector,
    out: *mut *mut CgaMultivector,
) -> CgaStatus {
    guard(|| {
        let mv = get(mv, "multivector")?;
        put(out, CgaMultivector(mv.0.clone()))
    })
}

/// Releases a multivector. NULL is ignored.
#[no_mangle]
pub unsafe extern "C" fn cga_mv_free(mv: *mut CgaMultivector) {
    if !mv.is_null() {
        drop(Box::from_raw(mv));
    }
}

/// Evaluates an expression such as `point(1,0,0) ^ point(0,1,0) ^ einf`.
#[no_mangle]
pub unsafe extern "C" fn cga_mv_eval(
    expr: *const c_char,
    out: *mut *mut CgaMultivector,
) -> CgaStatus {
    guard(|| {
        let src = text(expr)?;
        check_out(out)?;
        let mv = eval_str(src, &Scene::default(), &Tolerance::DEFAULT)?;
        put(out, CgaMultivector(mv))
    })
}

/// Text form such as `1 - 0.5*e12`; free with [`cga_string_free`].
#[no_mangle]
pub unsafe extern "C" fn cga_mv_to_string(
    mv: *const CgaMultivector,
    out: *mut *mut c_char,
) -> CgaStatus {
    guard(|| {
        let mv = get(mv, "multivector")?;
        check_out(out)?;
        let s = CString::new(mv.0.to_string()).expect("text form has no NUL");
        *out = s.into_raw();
        Ok(())
    })
}

/// `op` is a [`CgaBinaryOp`] value.
#[no_mangle]
pub unsafe extern "C" fn cga_mv_binary(
    a: *const CgaMultivector,
    b: *const CgaMultivector,
    op: c_int,
    out: *mut *mut CgaMultivector,
) -> CgaStatus {
    guard(|| {
        let (a, b) = (&get(a, "a")?.0, &get(b, "b")?.0);
        let r = match CgaBinaryOp::from_c(op)? {
            CgaBinaryOp::Add => a + b,
            CgaBinaryOp::Sub => a - b,
            CgaBinaryOp::Geometric => a.geometric_product(b)?,
            CgaBinaryOp::Outer => a.outer_product(b)?,
            CgaBinaryOp::LeftContraction => a.left_contraction(b)?,
        };
        put(out, CgaMultivector(r))
    })
}

/// `op` is a [`CgaUnaryOp`] value.
#[no_mangle]
pub unsafe extern "C" fn cga_mv_unary(
    a: *const CgaMultivector,
    op: c_int,
    out: *mut *mut CgaMultivector,
) -> CgaStatus {
    guard(|| {
        let a = &get(a, "a")?.0;
        let r = match CgaUnaryOp::from_c(op)? {
            CgaUnaryOp::Negate => -a,
            CgaUnaryOp::Reverse => a.reverse(),
            CgaUnaryOp::Involute => a.grade_involution(),
            CgaUnaryOp::Dual => a.dual(),
            CgaUnaryOp::Undual => a.undual(),
            CgaUnaryOp::Inverse => a.versor_inverse()?,
            CgaUnaryOp::Exp => a.exp_special()?,
        };
        put(out, CgaMultivector(r))
    })
}

/// Conformal point `p + p^2/2 einf + e0`.
#[no_mangle]
pub unsafe extern "C" fn cga_point(
    x: f64,
    y: f64,
    z: f64,
    out: *mut *mut CgaMultivector,
) -> CgaStatus {
    guard(|| {
        put(
            out,
            CgaMultivector(embed_point(EuclideanVector::new(x, y, z))),
        )
    })
}

/// Euclidean location of a (possibly scaled) conformal point into `xyz[3]`.
#[no_mangle]
pub unsafe extern "C" fn cga_point_location(mv: *const CgaMultivector, xyz: *mut f64) -> CgaStatus {
    guard(|| {
        let mv = get(mv, "point")?;
        check_out(xyz)?;
        let p = extract_point(&mv.0)?;
        ptr::copy_nonoverlapping(p.to_array().as_ptr(), xyz, 3);
        Ok(())
    })
}

#[no_mangle]
pub unsafe extern "C" fn cga_point_distance(
    a: *const CgaMultivector,
    b: *const CgaMultivector,
    out: *mut f64,
) -> CgaStatus {
    guard(|| {
        let (a, b) = (get(a, "a")?, get(b, "b")?);
        check_out(out)?;
        *out = point_distance(&a.0, &b.0)?;
        Ok(())
    })
}

#[no_mangle]
pub unsafe extern "C" fn cga_classify(
    mv: *const CgaMultivector,
    out: *mut CgaObjectKind,
) -> CgaStatus {
    guard(|| {
        let mv = get(mv, "multivector")?;
        check_out(out)?;
        *out = match classify(&mv.0)?.kind {
            ObjectKind::Point => CgaObjectKind::Point,
            ObjectKind::PointPair => CgaObjectKind::PointPair,
            ObjectKind::Circle => CgaObjectKind::Circle,
            ObjectKind::Sphere => CgaObjectKind::Sphere,
            ObjectKind::FlatPoint => CgaObjectKind::FlatPoint,
            ObjectKind::Line => CgaObjectKind::Line,
            ObjectKind::Plane => CgaObjectKind::Plane,
            ObjectKind::Space => CgaObjectKind::Space,
        };
        Ok(())
    })
}

/// Validates a multivector as a versor (homogeneous parity, scalar
/// `V reverse(V)`).
#[no_mangle]
pub unsafe extern "C" fn cga_versor_new(
    mv: *const CgaMultivector,
    out: *mut *mut CgaVersor,
) -> CgaStatus {
    guard(|| {
        let mv = get(mv, "multivector")?;
        check_out(out)?;
        put(out, CgaVersor(Versor::new(mv.0.clone())?))
    })
}

/// Releases a versor. NULL is ignored.
#[no_mangle]
pub unsafe extern "C" fn cga_versor_free(v: *mut CgaVersor) {
    if !v.is_null() {
        drop(Box::from_raw(v));
    }
}

/// Copy of the versor's multivector.
#[no_mangle]
pub unsafe extern "C" fn cga_versor_multivector(
    v: *const CgaVersor,
    out: *mut *mut CgaMultivector,
) -> CgaStatus {
    guard(|| {
        let v = get(v, "versor")?;
        put(out, CgaMultivector(v.0.mv().clone()))
    })
}

#[no_mangle]
pub unsafe extern "C" fn cga_versor_parity(v: *const CgaVersor, out: *mut CgaParity) -> CgaStatus {
    guard(|| {
        let v = get(v, "versor")?;
        check_out(out)?;
        *out = match v.0.parity() {
            Parity::Even => CgaParity::Even,
            Parity::Odd => CgaParity::Odd,
        };
        Ok(())
    })
}

/// Composite that applies `first`, then `second`.
#[no_mangle]
pub unsafe extern "C" fn cga_versor_compose(
    first: *const CgaVersor,
    second: *const CgaVersor,
    out: *mut *mut CgaVersor,
) -> CgaStatus {
    guard(|| {
        let (a, b) = (get(first, "first")?, get(second, "second")?);
        check_out(out)?;
        put(out, CgaVersor(a.0.then(&b.0)?))
    })
}

/// Sandwich `V^-1 X V`, with `X` grade-involuted in reflection mode.
/// `mode` is a [`CgaMode`] value.
#[no_mangle]
pub unsafe extern "C" fn cga_versor_apply(
    v: *const CgaVersor,
    x: *const CgaMultivector,
    mode: c_int,
    out: *mut *mut CgaMultivector,
) -> CgaStatus {
    guard(|| {
        let (v, x) = (get(v, "versor")?, get(x, "object")?);
        check_out(out)?;
        let mode = match CgaMode::from_c(mode)? {
            CgaMode::Reflection => Mode::Reflection,
            CgaMode::Motion => Mode::Motion,
            CgaMode::Natural => v.0.natural_mode(),
        };
        put(out, CgaMultivector(v.0.apply(&x.0, mode)?))
    })
}

#[no_mangle]
pub unsafe extern "C" fn cga_translator(
    tx: f64,
    ty: f64,
    tz: f64,
    out: *mut *mut CgaVersor,
) -> CgaStatus {
    guard(|| {
        check_out(out)?;
        put(
            out,
            CgaVersor(translator(EuclideanVector::new(tx, ty, tz))?),
        )
    })
}

/// Rotation by `theta` in the plane of the unit bivector `plane`.
#[no_mangle]
pub unsafe extern "C" fn cga_rotor(
    plane: *const CgaMultivector,
    theta: f64,
    out: *mut *mut CgaVersor,
) -> CgaStatus {
    guard(|| {
        let plane = get(plane, "plane")?;
        check_out(out)?;
        put(out, CgaVersor(rotor(&plane.0, theta)?))
    })
}

/// Uniform scaling by `s` about `(cx, cy, cz)`.
#[no_mangle]
pub unsafe extern "C" fn cga_scalor(
    cx: f64,
    cy: f64,
    cz: f64,
    s: f64,
    out: *mut *mut CgaVersor,
) -> CgaStatus {
    guard(|| {
        check_out(out)?;
        put(out, CgaVersor(scalor(EuclideanVector::new(cx, cy, cz), s)?))
    })
}

/// Mirror in the plane `n . x = d`.
#[no_mangle]
pub unsafe extern "C" fn cga_reflector_plane(
    nx: f64,
    ny: f64,
    nz: f64,
    d: f64,
    out: *mut *mut CgaVersor,
) -> CgaStatus {
    guard(|| {
        check_out(out)?;
        put(
            out,
            CgaVersor(reflector_plane(EuclideanVector::new(nx, ny, nz), d)?),
        )
    })
}

/// Inversion in the sphere with center `(cx, cy, cz)` and radius `r`.
#[no_mangle]
pub unsafe extern "C" fn cga_reflector_sphere(
    cx: f64,
    cy: f64,
    cz: f64,
    r: f64,
    out: *mut *mut CgaVersor,
) -> CgaStatus {
    guard(|| {
        check_out(out)?;
        put(
            out,
            CgaVersor(reflector_sphere(EuclideanVector::new(cx, cy, cz), r)?),
        )
    })
}
