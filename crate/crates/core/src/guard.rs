//! The limit on exhaustive enumerations.

use thiserror::Error;

pub const DEFAULT_GUARD: u128 = 1 << 24;

/// Environment variable overriding the guard. Intended for tests only.
pub const GUARD_ENV: &str = "CLIQUE_LAB_GUARD";

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("search space of {size} configurations exceeds the guard of {limit}")]
pub struct GuardError {
    pub size: u128,
    pub limit: u128,
}

/// The active guard: `CLIQUE_LAB_GUARD` if set to an integer, else 2^24.
pub fn limit() -> u128 {
    std::env::var(GUARD_ENV)
        .ok()
        .and_then(|s| s.trim().parse().ok())
        .unwrap_or(DEFAULT_GUARD)
}

pub fn check(size: u128) -> Result<(), GuardError> {
    let limit = limit();
    if size > limit {
        Err(GuardError { size, limit })
    } else {
        Ok(())
    }
}

/// `2^bits`, saturating.
pub fn pow2(bits: usize) -> u128 {
    if bits >= 128 {
        u128::MAX
    } else {
        1u128 << bits
    }
}

/// Checks a space of `2^bits` configurations.
pub fn check_bits(bits: usize) -> Result<(), GuardError> {
    check(pow2(bits))
}
