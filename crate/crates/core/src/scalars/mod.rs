//! Exact arithmetic in Q and in cyclotomic fields Q(ζ_n).

mod cyclotomic;
mod field;
mod syntax;

use thiserror::Error;

pub use cyclotomic::CycScalar;
pub use syntax::parse_scalar;

/// Arbitrary-precision rational number in lowest terms.
pub type Rational = num_rational::BigRational;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ScalarError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("cyclotomic order must be positive, got {0}")]
    BadOrder(u32),
    #[error("order {order} needs {expected} coefficients, found {found}")]
    CoefficientCount { order: u32, expected: usize, found: usize },
    #[error("parse error at position {position}: {message}")]
    Parse { position: usize, message: String },
}

/// Parses a bracketed list of scalars, `[a, b, c]`.
pub fn parse_scalar_list(text: &str) -> Result<Vec<CycScalar>, ScalarError> {
    let t = text.trim();
    let inner = t
        .strip_prefix('[')
        .and_then(|s| s.strip_suffix(']'))
        .ok_or(ScalarError::Parse { position: 0, message: "expected '[...]'".into() })?;
    if inner.trim().is_empty() {
        return Ok(Vec::new());
    }
    let mut out = Vec::new();
    let mut offset = 1;
    for part in inner.split(',') {
        let v = parse_scalar(part).map_err(|e| match e {
            ScalarError::Parse { position, message } => {
                ScalarError::Parse { position: position + offset, message }
            }
            other => other,
        })?;
        out.push(v);
        offset += part.len() + 1;
    }
    Ok(out)
}

/// Formats a coordinate vector as `[a, b, c]`.
pub fn format_vector(v: &[CycScalar]) -> String {
    let parts: Vec<String> = v.iter().map(ToString::to_string).collect();
    format!("[{}]", parts.join(", "))
}
