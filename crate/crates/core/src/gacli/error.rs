use thiserror::Error;

use super::lexer::Span;

/// 1-based line and column of a byte offset.
pub fn line_col(src: &str, offset: usize) -> (usize, usize) {
    let before = &src[..offset.min(src.len())];
    let line = before.matches('\n').count() + 1;
    let col = before.rsplit('\n').next().map_or(0, |l| l.chars().count()) + 1;
    (line, col)
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ExprError {
    #[error("syntax error at {line}:{col}: {message}{}", hint(.expected))]
    Syntax {
        line: usize,
        col: usize,
        message: String,
        expected: Option<String>,
    },

    #[error("unbound name '{name}' at {line}:{col}")]
    UnboundName {
        name: String,
        line: usize,
        col: usize,
    },

    #[error("bad call at {line}:{col}: {message}")]
    Call {
        line: usize,
        col: usize,
        message: String,
    },

    #[error("at {line}:{col}: {source}")]
    Eval {
        line: usize,
        col: usize,
        source: crate::Error,
    },
}

fn hint(expected: &Option<String>) -> String {
    match expected {
        Some(e) => format!(" (expected {e})"),
        None => String::new(),
    }
}

impl ExprError {
    pub fn syntax(src: &str, span: Span, message: String, expected: Option<String>) -> Self {
        let (line, col) = line_col(src, span.start);
        ExprError::Syntax {
            line,
            col,
            message,
            expected,
        }
    }

    pub fn unbound(src: &str, span: Span, name: &str) -> Self {
        let (line, col) = line_col(src, span.start);
        ExprError::UnboundName {
            name: name.to_string(),
            line,
            col,
        }
    }

    pub fn call(src: &str, span: Span, message: impl Into<String>) -> Self {
        let (line, col) = line_col(src, span.start);
        ExprError::Call {
            line,
            col,
            message: message.into(),
        }
    }

    pub fn eval(src: &str, span: Span, source: crate::Error) -> Self {
        let (line, col) = line_col(src, span.start);
        ExprError::Eval { line, col, source }
    }

    /// Syntax errors, unbound names and malformed calls are mistakes in the input text.
    pub fn is_usage(&self) -> bool {
        !matches!(self, ExprError::Eval { .. })
    }
}
