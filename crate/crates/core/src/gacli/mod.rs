//! Expression language, scene files and the `ga` command line.
//!
//! Grammar, loosest binding first:
//!
//! ```text
//! expr    := term (('+' | '-') term)*
//! term    := wedge (('*' | '/') wedge)*
//! wedge   := unary (('^' | '|') unary)*
//! unary   := ('-' | '~' | '!') unary | primary
//! primary := number | blade | e0 | einf | E | I | pi | name
//!          | name '(' [args (';' args)*] ')' | '(' expr ')'
//! args    := expr (',' expr)*
//! ```
//!
//! `*` is the geometric product, `^` the outer product and `|` the left
//! contraction. `a / b` divides by a scalar `b`, or multiplies by the
//! versor inverse of `b` from the right. `~` reverses, `!` is the grade
//! involution. Blades are written with ascending generator digits: `e1`, `e23`, `e45` (`e4` is
//! `e+`, `e5` is `e-`).

mod cli;
mod error;
mod eval;
mod lexer;
mod parser;
mod scene;
#[cfg(test)]
mod tests;

pub use cli::run;
pub use error::{line_col, ExprError};
pub use eval::{eval, eval_str, function_names};
pub use lexer::Span;
pub use parser::{parse, BinOp, Constant, Expr, ExprKind, UnaryOp};
pub use scene::{parse_key, BladeMap, Scene, SceneError};
