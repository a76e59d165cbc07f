use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("syntax error at byte {pos}: {msg}")]
    Syntax { pos: usize, msg: String },

    #[error("arity error at byte {pos}: {constructor} takes {expected} argument(s)")]
    Arity {
        pos: usize,
        constructor: &'static str,
        expected: usize,
    },

    #[error("integer at byte {pos} does not fit in 64 bits")]
    IntegerOverflow { pos: usize },

    #[error("invalid expression: {}", .0.iter().map(|v| v.to_string()).collect::<Vec<_>>().join("; "))]
    Invalid(Vec<crate::expr::Violation>),

    #[error("invalid torus knot parameters ({p}, {q}): need p, q >= 2 and gcd(p, q) = 1")]
    TorusParams { p: i64, q: i64 },

    #[error("not a rational number: {0:?}")]
    BadRational(String),

    #[error("quasi-polynomial fit inconsistent at n = {n}")]
    InconsistentSamples { n: u64 },

    #[error("quasi-polynomial fit underdetermined: residue class {residue} mod {period} has {have} distinct sample(s), need 3")]
    Underdetermined {
        residue: usize,
        period: usize,
        have: usize,
    },

    #[error("period must be positive")]
    ZeroPeriod,

    #[error("degenerate class: both coefficients are zero")]
    DegenerateClass,

    #[error("oracle calibration failure at (p, q, n) = ({p}, {q}, {n}): {detail}")]
    Calibration { p: i64, q: i64, n: u32, detail: String },

    #[error("expression outside oracle scope: {0}")]
    OracleScope(String),

    #[error("polynomial division is not exact")]
    InexactDivision,
}
