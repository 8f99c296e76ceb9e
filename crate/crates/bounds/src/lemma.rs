//! The protocol count: there are at most `2^(2bn^2 * 2^(L + bt(n-1)))`
//! distinct `(n, b, L, t)`-protocols, so its log-log is
//! `log2(2bn^2) + L + bt(n-1)`.

use std::cmp::Ordering;

use serde::Serialize;

use crate::int::{div_ceil, floor_log2, ExactInt};

/// `(n, b, L, t)` plus `m` nondeterministic bits per node.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BoundParams<I> {
    pub n: I,
    pub b: I,
    pub l: I,
    pub t: I,
    pub m: I,
}

impl<I: ExactInt> BoundParams<I> {
    pub fn new(n: u64, b: u64, l: u64, t: u64) -> Self {
        Self {
            n: n.into(),
            b: b.into(),
            l: l.into(),
            t: t.into(),
            m: 0.into(),
        }
    }

    /// `n * L`: the log-log of the number of functions `{0,1}^(nL) -> {0,1}`.
    pub fn function_count_loglog(&self) -> I {
        self.n.clone() * self.l.clone()
    }
}

/// `linear + log2(log_arg)`, kept exact.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LogLog<I> {
    pub linear: I,
    pub log_arg: I,
}

impl<I: ExactInt> LogLog<I> {
    /// The exact value, when `log_arg` is a power of two.
    pub fn exact(&self) -> Option<I> {
        self.log_arg
            .is_power_of_two()
            .then(|| self.linear.clone() + I::from(floor_log2(&self.log_arg)))
    }

    /// `linear + ceil(log2(log_arg))`, an upper bound on the value.
    pub fn ceiling(&self) -> I {
        let up = u64::from(!self.log_arg.is_power_of_two());
        self.linear.clone() + I::from(floor_log2(&self.log_arg) + up)
    }

    /// Exact ordering of the integer `x` relative to the value.
    pub fn cmp_int(&self, x: &I) -> Ordering {
        if *x < self.linear {
            return Ordering::Less;
        }
        let d = x.clone() - self.linear.clone();
        let fl = I::from(floor_log2(&self.log_arg));
        if self.log_arg.is_power_of_two() {
            d.cmp(&fl)
        } else if d <= fl {
            Ordering::Less
        } else {
            Ordering::Greater
        }
    }

    pub fn to_f64(&self) -> f64 {
        self.linear.to_string().parse::<f64>().unwrap()
            + self.log_arg.to_string().parse::<f64>().unwrap().log2()
    }
}

pub fn protocol_count_loglog<I: ExactInt>(p: &BoundParams<I>) -> LogLog<I> {
    let one = I::from(1);
    let linear = p.l.clone() + p.b.clone() * p.t.clone() * (p.n.clone() - one);
    let log_arg = I::from(2) * p.b.clone() * p.n.clone() * p.n.clone();
    LogLog { linear, log_arg }
}

/// True iff `nL` exceeds the protocol-count log-log, i.e. some function on
/// `nL` input bits has no `(n, b, L, t)`-protocol.
pub fn exists_unrealizable_function<I: ExactInt>(p: &BoundParams<I>) -> bool {
    protocol_count_loglog(p).cmp_int(&p.function_count_loglog()) == Ordering::Greater
}

/// The least `t >= 0` at which every function has a protocol, found by scanning.
pub fn crossover_scan<I: ExactInt>(n: u64, b: u64, l: u64) -> u64 {
    (0..)
        .find(|&t| !exists_unrealizable_function(&BoundParams::<I>::new(n, b, l, t)))
        .unwrap()
}

/// The same crossover in closed form:
/// `max(0, ceil((nL - L - floor(log2(2bn^2))) / (b(n-1))))`.
pub fn crossover_closed_form<I: ExactInt>(n: u64, b: u64, l: u64) -> I {
    let (n, b, l) = (I::from(n), I::from(b), I::from(l));
    let one = I::from(1);
    let fl = I::from(floor_log2(&(I::from(2) * b.clone() * n.clone() * n.clone())));
    let num_pos = n.clone() * l.clone();
    let num_neg = l + fl;
    if num_pos <= num_neg {
        return I::from(0);
    }
    div_ceil(num_pos - num_neg, b * (n - one))
}
