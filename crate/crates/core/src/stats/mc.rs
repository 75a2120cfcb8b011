//! Monte Carlo estimates of `d_n`, `L_k` and `P_k` from the random procedure.
//!
//! Sample `i` of a run with master seed `s` uses procedure seed
//! [`sample_seed`]`(s, i)`, and all accumulation is in integers, so results do
//! not depend on how samples are split across threads.

use std::collections::BTreeMap;
use std::ops::Range;

use rayon::prelude::*;

use crate::diagram::Diagram;
use crate::error::{Error, Result};
use crate::procedure::run_procedure;
use crate::walk::loop_profile;

/// SplitMix64 finalizer over `master` and `index`.
pub fn sample_seed(master: u64, index: u64) -> u64 {
    let mut z = master ^ index.wrapping_add(1).wrapping_mul(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Sum and sum of squares of an integer observable.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct Moments {
    pub sum: u128,
    pub sum_sq: u128,
}

impl Moments {
    pub fn push(&mut self, x: u64) {
        self.sum += x as u128;
        self.sum_sq += (x as u128) * (x as u128);
    }

    pub fn merge(&mut self, other: Moments) {
        self.sum += other.sum;
        self.sum_sq += other.sum_sq;
    }

    /// Mean and standard error over `samples` observations (absent
    /// observations count as zero), scaled by `1 / scale`.
    pub fn estimate(&self, samples: u64, scale: f64) -> Estimate {
        let n = samples as u128;
        let mean = self.sum as f64 / samples as f64 / scale;
        let se = if samples < 2 {
            f64::INFINITY
        } else {
            // n * sum_sq - sum^2 is exact and non-negative.
            let spread = (n * self.sum_sq - self.sum * self.sum) as f64;
            let var = spread / (samples as f64 * (samples - 1) as f64);
            (var / samples as f64).sqrt() / scale
        };
        Estimate { mean, se }
    }

    pub fn std_dev(&self, samples: u64) -> f64 {
        if samples < 2 {
            return f64::NAN;
        }
        let n = samples as u128;
        let spread = (n * self.sum_sq - self.sum * self.sum) as f64;
        (spread / (samples as f64 * (samples - 1) as f64)).sqrt()
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Estimate {
    pub mean: f64,
    pub se: f64,
}

/// Mergeable per-sample observations of full diagrams.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct McAccumulator {
    pub samples: u64,
    pub boundary: Moments,
    /// Loops of size `k` per diagram.
    pub loops: BTreeMap<usize, Moments>,
    /// Edges lying in loops of size `k` per diagram.
    pub edges: BTreeMap<usize, Moments>,
}

impl McAccumulator {
    pub fn observe(&mut self, d: &Diagram) {
        let (mut seen, mut stamp, mut profile) = (Vec::new(), Vec::new(), Vec::new());
        self.observe_with(d, &mut seen, &mut stamp, &mut profile);
    }

    fn observe_with(
        &mut self,
        d: &Diagram,
        seen: &mut Vec<bool>,
        stamp: &mut Vec<u32>,
        profile: &mut Vec<(usize, usize)>,
    ) {
        loop_profile(d, seen, stamp, profile);
        profile.sort_unstable();
        self.samples += 1;
        self.boundary.push(profile.len() as u64);
        for group in profile.chunk_by(|a, b| a.0 == b.0) {
            let k = group[0].0;
            self.loops.entry(k).or_default().push(group.len() as u64);
            self.edges.entry(k).or_default().push(group.iter().map(|g| g.1 as u64).sum());
        }
    }

    pub fn merge(mut self, other: McAccumulator) -> McAccumulator {
        self.samples += other.samples;
        self.boundary.merge(other.boundary);
        for (k, m) in other.loops {
            self.loops.entry(k).or_default().merge(m);
        }
        for (k, m) in other.edges {
            self.edges.entry(k).or_default().merge(m);
        }
        self
    }
}

/// Runs the procedure for sample indices `range` and accumulates.
pub fn mc_accumulate(n: usize, range: Range<u64>, seed: u64) -> Result<McAccumulator> {
    if n == 0 {
        return Err(Error::ZeroOrder);
    }
    Ok(range
        .into_par_iter()
        .fold(
            || (McAccumulator::default(), Vec::new(), Vec::new(), Vec::new()),
            |(mut acc, mut seen, mut stamp, mut profile), i| {
                let (d, _) = run_procedure(n, sample_seed(seed, i)).expect("n >= 1");
                acc.observe_with(&d, &mut seen, &mut stamp, &mut profile);
                (acc, seen, stamp, profile)
            },
        )
        .map(|t| t.0)
        .reduce(McAccumulator::default, McAccumulator::merge))
}

#[derive(Debug, Clone, PartialEq)]
pub struct McStats {
    pub n: usize,
    pub samples: u64,
    pub seed: u64,
    pub d_mean: f64,
    pub d_stddev: f64,
    pub d_se: f64,
    pub ci99: (f64, f64),
    /// `L_k` estimates.
    pub loops: BTreeMap<usize, Estimate>,
    /// `P_k` estimates.
    pub edge_share: BTreeMap<usize, Estimate>,
    pub raw: McAccumulator,
}

/// Two-sided 99% normal quantile.
const Z99: f64 = 2.575_829_303_548_900_4;

impl McStats {
    pub fn from_accumulator(n: usize, seed: u64, raw: McAccumulator) -> McStats {
        let samples = raw.samples;
        let d = raw.boundary.estimate(samples, 1.0);
        let edge_scale = 4.0 * n as f64;
        McStats {
            n,
            samples,
            seed,
            d_mean: d.mean,
            d_stddev: raw.boundary.std_dev(samples),
            d_se: d.se,
            ci99: (d.mean - Z99 * d.se, d.mean + Z99 * d.se),
            loops: raw.loops.iter().map(|(&k, m)| (k, m.estimate(samples, 1.0))).collect(),
            edge_share: raw.edges.iter().map(|(&k, m)| (k, m.estimate(samples, edge_scale))).collect(),
            raw,
        }
    }

    /// Statistics of the union of both samples.
    pub fn merge(&self, other: &McStats) -> Result<McStats> {
        if self.n != other.n {
            return Err(Error::InvalidArgument(format!(
                "cannot merge samples of order {} and {}",
                self.n, other.n
            )));
        }
        Ok(McStats::from_accumulator(self.n, self.seed, self.raw.clone().merge(other.raw.clone())))
    }
}

/// `samples` diagrams of order `n` from the random procedure.
pub fn mc_stats(n: usize, samples: u64, seed: u64) -> Result<McStats> {
    if samples == 0 {
        return Err(Error::InvalidArgument("samples must be at least 1".into()));
    }
    Ok(McStats::from_accumulator(n, seed, mc_accumulate(n, 0..samples, seed)?))
}
