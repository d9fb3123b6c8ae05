#ifndef CGA_H
#define CGA_H

/* Generated by cbindgen from crates/ffi/src. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Number of coefficients of a Cl(4,1) multivector.
 */
#define CGA_BLADE_COUNT 32

typedef enum CgaStatus {
  CGA_STATUS_OK = 0,
  CGA_STATUS_NULL_POINTER = 1,
  CGA_STATUS_INVALID_UTF8 = 2,
  CGA_STATUS_BAD_LENGTH = 3,
  /**
   * Malformed expression, unbound name or bad call.
   */
  CGA_STATUS_SYNTAX = 4,
  /**
   * Enum argument out of range.
   */
  CGA_STATUS_INVALID_ARGUMENT = 5,
  CGA_STATUS_GRADE = 10,
  CGA_STATUS_NULL_VECTOR = 11,
  CGA_STATUS_NOT_VERSOR = 12,
  CGA_STATUS_SINGULAR_VERSOR = 13,
  CGA_STATUS_NOT_EXPONENTIABLE = 14,
  CGA_STATUS_POINT_AT_INFINITY = 15,
  CGA_STATUS_NOT_A_POINT = 16,
  CGA_STATUS_METRIC = 17,
  CGA_STATUS_DEGENERATE = 18,
  CGA_STATUS_DOMAIN = 19,
  CGA_STATUS_UNKNOWN_OBJECT = 20,
  CGA_STATUS_FLAT_OBJECT = 21,
  CGA_STATUS_MIXED_PARITY = 22,
  CGA_STATUS_PARITY_MODE = 23,
  CGA_STATUS_OTHER = 29,
  CGA_STATUS_PANIC = 99,
} CgaStatus;

typedef enum CgaObjectKind {
  CGA_OBJECT_KIND_POINT = 0,
  CGA_OBJECT_KIND_POINT_PAIR = 1,
  CGA_OBJECT_KIND_CIRCLE = 2,
  CGA_OBJECT_KIND_SPHERE = 3,
  CGA_OBJECT_KIND_FLAT_POINT = 4,
  CGA_OBJECT_KIND_LINE = 5,
  CGA_OBJECT_KIND_PLANE = 6,
  CGA_OBJECT_KIND_SPACE = 7,
} CgaObjectKind;

typedef enum CgaParity {
  CGA_PARITY_EVEN = 0,
  CGA_PARITY_ODD = 1,
} CgaParity;

typedef enum CgaBinaryOp {
  CGA_BINARY_OP_ADD = 0,
  CGA_BINARY_OP_SUB = 1,
  CGA_BINARY_OP_GEOMETRIC = 2,
  CGA_BINARY_OP_OUTER = 3,
  CGA_BINARY_OP_LEFT_CONTRACTION = 4,
} CgaBinaryOp;

typedef enum CgaUnaryOp {
  CGA_UNARY_OP_NEGATE = 0,
  CGA_UNARY_OP_REVERSE = 1,
  CGA_UNARY_OP_INVOLUTE = 2,
  CGA_UNARY_OP_DUAL = 3,
  CGA_UNARY_OP_UNDUAL = 4,
  /**
   * Versor inverse, `reverse(A) / <A reverse(A)>_0`.
   */
  CGA_UNARY_OP_INVERSE = 5,
  /**
   * Closed-form exponential of an element squaring to a scalar.
   */
  CGA_UNARY_OP_EXP = 6,
} CgaUnaryOp;

typedef enum CgaMode {
  CGA_MODE_REFLECTION = 0,
  CGA_MODE_MOTION = 1,
  /**
   * Reflection for odd versors, motion for even ones.
   */
  CGA_MODE_NATURAL = 2,
} CgaMode;

/**
 * Opaque Cl(4,1) multivector.
 */
typedef struct CgaMultivector CgaMultivector;

/**
 * Opaque validated versor.
 */
typedef struct CgaVersor CgaVersor;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Library version as a static NUL-terminated string.
 */
const char *cga_version(void);

/**
 * Message of the most recent failure on this thread, or NULL. The pointer
 * stays valid until the next failing call on the same thread.
 */
const char *cga_last_error_message(void);

/**
 * Releases a string returned by this library. NULL is ignored.
 */
void cga_string_free(char *s);

/**
 * Builds a multivector from `len` (= 32) coefficients indexed by blade
 * bitset: bit 0..4 are e1, e2, e3, e+, e-.
 */
enum CgaStatus cga_mv_from_coeffs(const double *coeffs, size_t len, struct CgaMultivector **out);

/**
 * Copies the 32 coefficients into `out`, which must hold `len >= 32`.
 */
enum CgaStatus cga_mv_coeffs(const struct CgaMultivector *mv, double *out, size_t len);

enum CgaStatus cga_mv_clone(const struct CgaMultivector *mv, struct CgaMultivector **out);

/**
 * Releases a multivector. NULL is ignored.
 */
void cga_mv_free(struct CgaMultivector *mv);

/**
 * Evaluates an expression such as `point(1,0,0) ^ point(0,1,0) ^ einf`.
 */
enum CgaStatus cga_mv_eval(const char *expr, struct CgaMultivector **out);

/**
 * Text form such as `1 - 0.5*e12`; free with [`cga_string_free`].
 */
enum CgaStatus cga_mv_to_string(const struct CgaMultivector *mv, char **out);

/**
 * `op` is a [`CgaBinaryOp`] value.
 */
enum CgaStatus cga_mv_binary(const struct CgaMultivector *a,
                             const struct CgaMultivector *b,
                             int op,
                             struct CgaMultivector **out);

/**
 * `op` is a [`CgaUnaryOp`] value.
 */
enum CgaStatus cga_mv_unary(const struct CgaMultivector *a, int op, struct CgaMultivector **out);

/**
 * Conformal point `p + p^2/2 einf + e0`.
 */
enum CgaStatus cga_point(double x, double y, double z, struct CgaMultivector **out);

/**
 * Euclidean location of a (possibly scaled) conformal point into `xyz[3]`.
 */
enum CgaStatus cga_point_location(const struct CgaMultivector *mv, double *xyz);

enum CgaStatus cga_point_distance(const struct CgaMultivector *a,
                                  const struct CgaMultivector *b,
                                  double *out);

enum CgaStatus cga_classify(const struct CgaMultivector *mv, enum CgaObjectKind *out);

/**
 * Validates a multivector as a versor (homogeneous parity, scalar
 * `V reverse(V)`).
 */
enum CgaStatus cga_versor_new(const struct CgaMultivector *mv, struct CgaVersor **out);

/**
 * Releases a versor. NULL is ignored.
 */
void cga_versor_free(struct CgaVersor *v);

/**
 * Copy of the versor's multivector.
 */
enum CgaStatus cga_versor_multivector(const struct CgaVersor *v, struct CgaMultivector **out);

enum CgaStatus cga_versor_parity(const struct CgaVersor *v, enum CgaParity *out);

/**
 * Composite that applies `first`, then `second`.
 */
enum CgaStatus cga_versor_compose(const struct CgaVersor *first,
                                  const struct CgaVersor *second,
                                  struct CgaVersor **out);

/**
 * Sandwich `V^-1 X V`, with `X` grade-involuted in reflection mode.
 * `mode` is a [`CgaMode`] value.
 */
enum CgaStatus cga_versor_apply(const struct CgaVersor *v,
                                const struct CgaMultivector *x,
                                int mode,
                                struct CgaMultivector **out);

enum CgaStatus cga_translator(double tx, double ty, double tz, struct CgaVersor **out);

/**
 * Rotation by `theta` in the plane of the unit bivector `plane`.
 */
enum CgaStatus cga_rotor(const struct CgaMultivector *plane, double theta, struct CgaVersor **out);

/**
 * Uniform scaling by `s` about `(cx, cy, cz)`.
 */
enum CgaStatus cga_scalor(double cx, double cy, double cz, double s, struct CgaVersor **out);

/**
 * Mirror in the plane `n . x = d`.
 */
enum CgaStatus cga_reflector_plane(double nx,
                                   double ny,
                                   double nz,
                                   double d,
                                   struct CgaVersor **out);

/**
 * Inversion in the sphere with center `(cx, cy, cz)` and radius `r`.
 */
enum CgaStatus cga_reflector_sphere(double cx,
                                    double cy,
                                    double cz,
                                    double r,
                                    struct CgaVersor **out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* CGA_H */
