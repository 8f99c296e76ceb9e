//! Round-complexity functions `T(n)` given as short expressions.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::int::ExactInt;
use crate::log_n;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum TSpec {
    /// `c`
    Const(u64),
    /// `a * n^b`
    Poly { a: u64, b: u32 },
    /// `floor(n / (d * ceil(log2 n)))`
    NlognFrac(u64),
}

impl TSpec {
    pub fn eval<I: ExactInt>(&self, n: u64) -> I {
        match *self {
            TSpec::Const(c) => I::from(c),
            TSpec::Poly { a, b } => (0..b).fold(I::from(a), |acc, _| acc * I::from(n)),
            TSpec::NlognFrac(d) => I::from(n / (d * log_n(n).max(1))),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("invalid T(n) spec `{input}`: expected `const c`, `poly a b` or `nlogn-frac d`")]
pub struct ParseTSpecError {
    pub input: String,
}

impl FromStr for TSpec {
    type Err = ParseTSpecError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let err = || ParseTSpecError { input: s.to_string() };
        let parts: Vec<&str> = s.split_whitespace().collect();
        let num = |i: usize| parts.get(i).and_then(|p| p.parse::<u64>().ok()).ok_or_else(err);
        match (parts.first().copied(), parts.len()) {
            (Some("const"), 2) => Ok(TSpec::Const(num(1)?)),
            (Some("poly"), 3) => Ok(TSpec::Poly {
                a: num(1)?,
                b: u32::try_from(num(2)?).map_err(|_| err())?,
            }),
            (Some("nlogn-frac"), 2) => match num(1)? {
                0 => Err(err()),
                d => Ok(TSpec::NlognFrac(d)),
            },
            _ => Err(err()),
        }
    }
}

impl fmt::Display for TSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TSpec::Const(c) => write!(f, "const {c}"),
            TSpec::Poly { a, b } => write!(f, "poly {a} {b}"),
            TSpec::NlognFrac(d) => write!(f, "nlogn-frac {d}"),
        }
    }
}
