//! Protocol-counting arithmetic: the log-log size of the set of
//! `(n, b, L, t)`-protocols, the regime in which some function on `nL` input
//! bits has no such protocol, and the parameter inequalities behind the round
//! hierarchy theorems. Everything is exact integer arithmetic; `log n` means
//! `ceil(log2 n)` throughout.

pub mod int;
pub mod lemma;
pub mod regimes;
pub mod tspec;

pub use int::ExactInt;
pub use lemma::{crossover_closed_form, crossover_scan, exists_unrealizable_function, protocol_count_loglog, BoundParams, LogLog};
pub use regimes::{check_counting, check_thm1, check_thm3, check_thm6, RegimeReport, RegimeRow, Thm3Form};
pub use tspec::{ParseTSpecError, TSpec};

/// `ceil(log2 n)` for `n >= 1`.
pub fn log_n(n: u64) -> u64 {
    assert!(n >= 1);
    u64::from(u64::BITS - (n - 1).leading_zeros())
}
