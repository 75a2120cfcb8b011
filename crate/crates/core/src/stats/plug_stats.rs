//! Plug counts along prefixes of the random procedure.

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::procedure::ProcedureState;
use crate::stats::mc::{sample_seed, Estimate, Moments};

/// Observations after step `k`, summed over runs.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct PlugMoments {
    pub plugs: Moments,
    pub completed_positive: Moments,
    pub completed_negative: Moments,
    pub at_pointer_positive: Moments,
    pub at_pointer_negative: Moments,
}

impl PlugMoments {
    fn merge(&mut self, o: &PlugMoments) {
        self.plugs.merge(o.plugs);
        self.completed_positive.merge(o.completed_positive);
        self.completed_negative.merge(o.completed_negative);
        self.at_pointer_positive.merge(o.at_pointer_positive);
        self.at_pointer_negative.merge(o.at_pointer_negative);
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PlugRow {
    pub k: usize,
    /// Plugs present after step `k`.
    pub plugs: Estimate,
    /// `G+_k`, `G-_k`: plugs completed at step `k`.
    pub completed_positive: Estimate,
    pub completed_negative: Estimate,
    /// `H+_k`, `H-_k`: the concluding dot of the pointer's segment is the
    /// entrance of a positive (negative) plug other than that segment.
    pub at_pointer_positive: Estimate,
    pub at_pointer_negative: Estimate,
}

#[derive(Debug, Clone, PartialEq)]
pub struct PlugStats {
    pub n: usize,
    pub k_max: usize,
    pub runs: u64,
    pub seed: u64,
    pub rows: Vec<PlugRow>,
    pub raw: Vec<PlugMoments>,
}

fn observe_run(n: usize, k_max: usize, seed: u64, out: &mut [PlugMoments]) {
    let mut state = ProcedureState::new(n, seed).expect("n >= 1");
    for slot in out.iter_mut().take(k_max) {
        state.step().expect("k_max <= n");
        let (pos, neg) = state.plug_counts();
        let (done_pos, done_neg) = state.plugs_completed_last_step();
        let (at_pos, at_neg) = state.plugs_at_concluding_dot().unwrap_or((0, 0));
        slot.plugs.push((pos + neg) as u64);
        slot.completed_positive.push(done_pos as u64);
        slot.completed_negative.push(done_neg as u64);
        slot.at_pointer_positive.push((at_pos > 0) as u64);
        slot.at_pointer_negative.push((at_neg > 0) as u64);
    }
}

/// `runs` independent procedure prefixes of `k_max` steps on order `n`.
pub fn plug_mc_stats(n: usize, k_max: usize, runs: u64, seed: u64) -> Result<PlugStats> {
    if n == 0 {
        return Err(Error::ZeroOrder);
    }
    if k_max > n {
        return Err(Error::InvalidArgument(format!("k_max = {k_max} exceeds n = {n}")));
    }
    if runs == 0 {
        return Err(Error::InvalidArgument("runs must be at least 1".into()));
    }
    let raw = (0..runs)
        .into_par_iter()
        .fold(
            || vec![PlugMoments::default(); k_max],
            |mut acc, i| {
                observe_run(n, k_max, sample_seed(seed, i), &mut acc);
                acc
            },
        )
        .reduce(
            || vec![PlugMoments::default(); k_max],
            |mut a, b| {
                a.iter_mut().zip(&b).for_each(|(x, y)| x.merge(y));
                a
            },
        );
    let rows = raw
        .iter()
        .enumerate()
        .map(|(i, m)| PlugRow {
            k: i + 1,
            plugs: m.plugs.estimate(runs, 1.0),
            completed_positive: m.completed_positive.estimate(runs, 1.0),
            completed_negative: m.completed_negative.estimate(runs, 1.0),
            at_pointer_positive: m.at_pointer_positive.estimate(runs, 1.0),
            at_pointer_negative: m.at_pointer_negative.estimate(runs, 1.0),
        })
        .collect();
    Ok(PlugStats { n, k_max, runs, seed, rows, raw })
}
