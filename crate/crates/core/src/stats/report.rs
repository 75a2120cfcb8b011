//! Pass/fail tables comparing measured statistics with the proven bounds.
//!
//! Exact rows compare directly. Statistical rows allow three standard errors
//! and are marked `Insufficient` when the standard error exceeds the bound
//! itself, unless the estimate already violates the bound beyond tolerance.

use num_rational::Ratio;

use crate::stats::enumerate::ExactStats;
use crate::stats::mc::{Estimate, McStats};
use crate::stats::plug_stats::PlugStats;

/// Standard errors allowed on either side of a statistical comparison.
pub const SE_TOLERANCE: f64 = 3.0;

#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Pass,
    Fail,
    Insufficient,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Direction {
    /// measured <= bound
    AtMost,
    /// measured >= bound
    AtLeast,
    /// measured == bound
    Equal,
}

#[derive(Debug, Clone, PartialEq, serde::Serialize)]
pub struct BoundRow {
    pub check: &'static str,
    pub k: Option<usize>,
    pub direction: Direction,
    pub measured: f64,
    pub bound: f64,
    /// `None` for exact rows.
    pub se: Option<f64>,
    /// Distance to the bound, positive on the satisfied side.
    pub slack: f64,
    pub status: Status,
}

impl BoundRow {
    fn exact(check: &'static str, k: Option<usize>, direction: Direction, measured: f64, bound: f64, holds: bool) -> Self {
        let slack = match direction {
            Direction::AtMost => bound - measured,
            Direction::AtLeast => measured - bound,
            Direction::Equal => 0.0 - (measured - bound).abs(),
        };
        BoundRow {
            check,
            k,
            direction,
            measured,
            bound,
            se: None,
            slack,
            status: if holds { Status::Pass } else { Status::Fail },
        }
    }

    fn statistical(check: &'static str, k: Option<usize>, direction: Direction, est: Estimate, bound: f64) -> Self {
        let slack = match direction {
            Direction::AtMost => bound - est.mean,
            Direction::AtLeast => est.mean - bound,
            Direction::Equal => 0.0 - (est.mean - bound).abs(),
        };
        let status = if slack.is_nan() || slack < -SE_TOLERANCE * est.se {
            Status::Fail
        } else if est.se > bound.abs() {
            Status::Insufficient
        } else {
            Status::Pass
        };
        BoundRow { check, k, direction, measured: est.mean, bound, se: Some(est.se), slack, status }
    }
}

#[derive(Debug, Clone, Default, PartialEq, serde::Serialize)]
pub struct BoundReport {
    pub rows: Vec<BoundRow>,
}

impl BoundReport {
    pub fn has_failure(&self) -> bool {
        self.rows.iter().any(|r| r.status == Status::Fail)
    }

    pub fn count(&self, status: Status) -> usize {
        self.rows.iter().filter(|r| r.status == status).count()
    }

    pub fn find(&self, check: &str, k: Option<usize>) -> Option<&BoundRow> {
        self.rows.iter().find(|r| r.check == check && r.k == k)
    }
}

pub fn d_upper(n: usize) -> f64 {
    3.0 * (n as f64).ln() + 400.0
}

pub fn d_lower(n: usize) -> f64 {
    (n as f64).ln() / 18.0
}

/// Largest `k` covered by the upper bounds: `k <= n / 100`.
pub fn upper_range(n: usize) -> usize {
    n / 100
}

/// Largest `k` covered by the lower bounds: `k <= sqrt(n)`, or 0 below `n = 50`.
pub fn lower_range(n: usize) -> usize {
    if n < 50 {
        0
    } else {
        (n as f64).sqrt().floor() as usize
    }
}

fn ratio_f64(r: Ratio<u64>) -> f64 {
    *r.numer() as f64 / *r.denom() as f64
}

pub fn exact_report(s: &ExactStats) -> BoundReport {
    let n = s.n;
    let nn = n as u64;
    let d = ratio_f64(s.d_mean);
    let mut rows = vec![
        BoundRow::exact("d_upper", None, Direction::AtMost, d, d_upper(n), d <= d_upper(n)),
    ];
    if n >= 50 {
        rows.push(BoundRow::exact("d_lower", None, Direction::AtLeast, d, d_lower(n), d >= d_lower(n)));
    }
    let loop_sum: Ratio<u64> = s.loops.values().copied().sum();
    rows.push(BoundRow::exact(
        "loop_sum",
        None,
        Direction::Equal,
        ratio_f64(loop_sum),
        d,
        loop_sum == s.d_mean,
    ));
    let g_plus_half_d = s.genus_mean() + s.d_mean / 2;
    rows.push(BoundRow::exact(
        "genus_identity",
        None,
        Direction::Equal,
        ratio_f64(g_plus_half_d),
        (n as f64 + 2.0) / 2.0,
        g_plus_half_d == Ratio::new(nn + 2, 2),
    ));
    let parity = s.d_histogram.keys().all(|&d| d % 2 == n % 2 && (1..=n + 2).contains(&d));
    rows.push(BoundRow::exact("d_parity_range", None, Direction::Equal, parity as u8 as f64, 1.0, parity));
    rows.push(BoundRow::exact(
        "loop_structure",
        None,
        Direction::Equal,
        s.structure_ok as u8 as f64,
        1.0,
        s.structure_ok,
    ));
    for (&k, &l) in &s.loops {
        let kk = k as u64;
        if k <= upper_range(n) {
            let bound = Ratio::new(3, kk);
            rows.push(BoundRow::exact("loops_upper", Some(k), Direction::AtMost, ratio_f64(l), 3.0 / k as f64, l <= bound));
        }
        if k <= lower_range(n) {
            let bound = Ratio::new(1, 9 * kk);
            rows.push(BoundRow::exact("loops_lower", Some(k), Direction::AtLeast, ratio_f64(l), 1.0 / (9.0 * k as f64), l >= bound));
        }
        let p = s.edge_share.get(&k).copied().unwrap_or_default();
        let low = l * kk / (4 * nn);
        let high = l * (4 * kk) / (4 * nn);
        rows.push(BoundRow::exact("share_floor", Some(k), Direction::AtLeast, ratio_f64(p), ratio_f64(low), p >= low));
        rows.push(BoundRow::exact("share_ceiling", Some(k), Direction::AtMost, ratio_f64(p), ratio_f64(high), p <= high));
    }
    BoundReport { rows }
}

pub fn sample_report(s: &McStats) -> BoundReport {
    let n = s.n;
    let d = Estimate { mean: s.d_mean, se: s.d_se };
    let mut rows = vec![BoundRow::statistical("d_upper", None, Direction::AtMost, d, d_upper(n))];
    if n >= 50 {
        rows.push(BoundRow::statistical("d_lower", None, Direction::AtLeast, d, d_lower(n)));
    }
    // Per sample, the loop counts add up to d exactly.
    let loop_sum: f64 = s.loops.values().map(|e| e.mean).sum();
    rows.push(BoundRow::exact(
        "loop_sum",
        None,
        Direction::Equal,
        loop_sum,
        s.d_mean,
        (loop_sum - s.d_mean).abs() <= 1e-9 * s.d_mean.max(1.0),
    ));
    let nf = n as f64;
    let zero = Estimate { mean: 0.0, se: 0.0 };
    for k in 1..=upper_range(n).max(lower_range(n)) {
        let l = s.loops.get(&k).copied().unwrap_or(zero);
        let p = s.edge_share.get(&k).copied().unwrap_or(zero);
        let kf = k as f64;
        if k <= upper_range(n) {
            rows.push(BoundRow::statistical("loops_upper", Some(k), Direction::AtMost, l, 3.0 / kf));
            rows.push(BoundRow::statistical("share_upper", Some(k), Direction::AtMost, p, 3.0 / (4.0 * nf)));
        }
        if k <= lower_range(n) {
            rows.push(BoundRow::statistical("loops_lower", Some(k), Direction::AtLeast, l, 1.0 / (9.0 * kf)));
            rows.push(BoundRow::statistical("share_lower", Some(k), Direction::AtLeast, p, 1.0 / (9.0 * nf)));
        }
    }
    // The sandwich holds sample by sample, hence for the means up to rounding.
    for (&k, l) in &s.loops {
        let p = s.edge_share.get(&k).copied().unwrap_or(zero);
        let kf = k as f64;
        let low = kf * l.mean / (4.0 * nf);
        let high = 4.0 * kf * l.mean / (4.0 * nf);
        let eps = 1e-12 * high.max(f64::MIN_POSITIVE);
        rows.push(BoundRow::exact("share_floor", Some(k), Direction::AtLeast, p.mean, low, p.mean + eps >= low));
        rows.push(BoundRow::exact("share_ceiling", Some(k), Direction::AtMost, p.mean, high, p.mean <= high + eps));
    }
    BoundReport { rows }
}

pub fn plug_report(s: &PlugStats) -> BoundReport {
    let nf = s.n as f64;
    let mut rows = Vec::new();
    for r in s.rows.iter().filter(|r| r.k <= upper_range(s.n)) {
        let k = Some(r.k);
        rows.push(BoundRow::statistical("plugs_present", k, Direction::AtMost, r.plugs, 0.25));
        rows.push(BoundRow::statistical("completed_positive", k, Direction::AtMost, r.completed_positive, 5.0 / nf));
        rows.push(BoundRow::statistical("completed_negative", k, Direction::AtMost, r.completed_negative, 20.0 / nf));
        rows.push(BoundRow::statistical("pointer_at_positive", k, Direction::AtMost, r.at_pointer_positive, 6.0 / nf));
        rows.push(BoundRow::statistical("pointer_at_negative", k, Direction::AtMost, r.at_pointer_negative, 21.0 / nf));
    }
    BoundReport { rows }
}

/// `d_mean` strictly increasing along `series` (ordered by `n`), one row per
/// consecutive pair, each judged by the difference of estimates.
pub fn growth_report(series: &[McStats]) -> BoundReport {
    let rows = series
        .windows(2)
        .map(|w| {
            let diff = Estimate {
                mean: w[1].d_mean - w[0].d_mean,
                se: (w[0].d_se.powi(2) + w[1].d_se.powi(2)).sqrt(),
            };
            let mut row = BoundRow::exact("d_increasing", Some(w[1].n), Direction::AtLeast, diff.mean, 0.0, diff.mean > 0.0);
            row.se = Some(diff.se);
            row
        })
        .collect();
    BoundReport { rows }
}
