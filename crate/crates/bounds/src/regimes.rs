//! Parameter regimes of the round hierarchy arguments, evaluated per `n`.
//!
//! Every non-integer quantity is floored. Comparisons of the form
//! `X < (3/4) n L` are evaluated as `4X < 3nL`, and rows report both sides in
//! that scaled form.

use serde::Serialize;

use crate::int::ExactInt;
use crate::lemma::{exists_unrealizable_function, protocol_count_loglog, BoundParams};
use crate::log_n;
use crate::tspec::TSpec;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RegimeRow<I> {
    pub n: u64,
    /// Alternation depth, for the rows that have one.
    pub k: Option<u64>,
    pub t_n: I,
    pub lhs: I,
    pub rhs: I,
    pub holds: bool,
    /// False when the row lies outside the standing assumption on `T(n)`.
    pub regime_ok: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RegimeReport<I> {
    pub rows: Vec<RegimeRow<I>>,
    /// Smallest `n` with a holding row.
    pub first_holds: Option<u64>,
    /// Smallest scanned `n` from which every row holds.
    pub threshold: Option<u64>,
}

impl<I> RegimeReport<I> {
    fn from_rows(rows: Vec<RegimeRow<I>>) -> Self {
        let first_holds = rows.iter().find(|r| r.holds).map(|r| r.n);
        let threshold = match rows.iter().rposition(|r| !r.holds) {
            None => rows.first().map(|r| r.n),
            Some(i) => rows[i + 1..].iter().map(|r| r.n).find(|&n| n != rows[i].n),
        };
        Self {
            rows,
            first_holds,
            threshold,
        }
    }

    pub fn violations(&self) -> impl Iterator<Item = &RegimeRow<I>> {
        self.rows.iter().filter(|r| !r.holds)
    }
}

fn counting_row<I: ExactInt>(n: u64, t_n: I, rounds: I, regime_ok: bool) -> RegimeRow<I> {
    let b = log_n(n);
    let p = BoundParams {
        n: I::from(n),
        b: I::from(b),
        l: t_n.clone() * I::from(b),
        t: rounds,
        m: I::from(0),
    };
    RegimeRow {
        n,
        k: None,
        lhs: protocol_count_loglog(&p).ceiling(),
        rhs: p.function_count_loglog(),
        holds: exists_unrealizable_function(&p),
        regime_ok,
        t_n,
    }
}

/// For each `n`: `b = log n`, `L = T(n) b`, `t = T(n)`, and whether some
/// function on `nL` bits has no `(n, b, L, t)`-protocol. Columns as in
/// [`check_thm1`].
pub fn check_counting<I: ExactInt>(t: &TSpec, ns: impl IntoIterator<Item = u64>) -> RegimeReport<I> {
    let rows = ns
        .into_iter()
        .map(|n| {
            let t_n: I = t.eval(n);
            let ok = t_n >= I::from(1);
            counting_row(n, t_n.clone(), t_n, ok)
        })
        .collect();
    RegimeReport::from_rows(rows)
}

/// For each `n`: `b = log n`, `L = T(n) b`, `t = floor(T(n)/2)`, and whether
/// some function on `nL` bits has no `(n, b, L, t)`-protocol. `lhs` is the
/// ceiling of the protocol-count log-log, `rhs` is `nL`; `holds` is the exact
/// comparison. The regime requires `1 <= T(n)` and `4 T(n) log n <= n`.
pub fn check_thm1<I: ExactInt>(t: &TSpec, ns: impl IntoIterator<Item = u64>) -> RegimeReport<I> {
    let rows = ns
        .into_iter()
        .map(|n| {
            let t_n: I = t.eval(n);
            let ok = t_n >= I::from(1) && I::from(4 * log_n(n)) * t_n.clone() <= I::from(n);
            counting_row(n, t_n.clone(), t_n / I::from(2), ok)
        })
        .collect();
    RegimeReport::from_rows(rows)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize)]
pub enum Thm3Form {
    /// `M + L + floor(T/4)(n-1) log n < (3/4) n L`: the simulated protocol
    /// runs a quarter of the rounds, consistent with the intermediate bound
    /// `(1/2 + 1/n) T n log n`.
    #[default]
    Corrected,
    /// `M + L + T(n-1) log n < (3/4) n L` as literally displayed; never holds.
    Displayed,
}

/// With `b = log n`, `L = T b`, `M = floor(T n b / 4)`, checks
/// `4 (M + L + r (n-1) b) < 3 n L` where `r` depends on `form`.
pub fn check_thm3<I: ExactInt>(
    t: &TSpec,
    ns: impl IntoIterator<Item = u64>,
    form: Thm3Form,
) -> RegimeReport<I> {
    let rows = ns
        .into_iter()
        .map(|n| {
            let t_n: I = t.eval(n);
            let (ni, b) = (I::from(n), I::from(log_n(n)));
            let l = t_n.clone() * b.clone();
            let m = t_n.clone() * ni.clone() * b.clone() / I::from(4);
            let r = match form {
                Thm3Form::Corrected => t_n.clone() / I::from(4),
                Thm3Form::Displayed => t_n.clone(),
            };
            let x = m + l.clone() + r * (ni.clone() - I::from(1)) * b;
            let lhs = I::from(4) * x;
            let rhs = I::from(3) * ni * l;
            RegimeRow {
                n,
                k: None,
                holds: lhs < rhs,
                regime_ok: t_n >= I::from(1),
                t_n,
                lhs,
                rhs,
            }
        })
        .collect();
    RegimeReport::from_rows(rows)
}

/// `(1/2 + 1/n) T n b < (3/4) T n b`, scaled by 4: `2Tnb + 4Tb < 3Tnb`.
pub fn thm3_middle_form_holds<I: ExactInt>(n: u64, t_n: &I) -> bool {
    let tb = t_n.clone() * I::from(log_n(n));
    I::from(2 * n) * tb.clone() + I::from(4) * tb.clone() < I::from(3 * n) * tb
}

/// With `b = log n`, `L = T^2 b`, `M = floor(T n b / 4)`, `t = floor(T^2/4)`,
/// checks `4 (k M + L + t (n-1) b) < 3 n L` for `0 <= k <= min(k_max, T)`.
pub fn check_thm6<I: ExactInt>(
    t: &TSpec,
    k_max: u64,
    ns: impl IntoIterator<Item = u64>,
) -> RegimeReport<I> {
    let mut rows = Vec::new();
    for n in ns {
        let t_n: I = t.eval(n);
        let (ni, b) = (I::from(n), I::from(log_n(n)));
        let t2 = t_n.clone() * t_n.clone();
        let l = t2.clone() * b.clone();
        let m = t_n.clone() * ni.clone() * b.clone() / I::from(4);
        let rounds = t2 / I::from(4);
        let base = l.clone() + rounds * (ni.clone() - I::from(1)) * b;
        let rhs = I::from(3) * ni * l;
        for k in (0..=k_max).take_while(|&k| I::from(k) <= t_n) {
            let lhs = I::from(4) * (I::from(k) * m.clone() + base.clone());
            rows.push(RegimeRow {
                n,
                k: Some(k),
                holds: lhs < rhs,
                regime_ok: t_n >= I::from(1),
                t_n: t_n.clone(),
                lhs,
                rhs: rhs.clone(),
            });
        }
    }
    RegimeReport::from_rows(rows)
}
