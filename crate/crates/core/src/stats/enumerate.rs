//! Exhaustive enumeration of full and partial diagrams, and exact statistics.

use std::collections::BTreeMap;

use num_rational::Ratio;

use crate::diagram::{Chord, Diagram, Dot, PartialDiagram};
use crate::error::{Error, Result};
use crate::walk::loop_profile;

pub const ENUMERATION_MAX_N: usize = 7;

/// Visits every diagram of order `n` once. Dot 1's partner is chosen first
/// (ascending), then the smallest unpaired dot's partner, and so on; for each
/// pairing the `2^n` orientations run last, chord `i` reversed when bit `i`
/// of the orientation mask is set. Returns the number of visits.
pub fn enumerate_diagrams(n: usize, mut visit: impl FnMut(&Diagram)) -> Result<u64> {
    if n == 0 {
        return Err(Error::ZeroOrder);
    }
    if n > ENUMERATION_MAX_N {
        return Err(Error::TooLarge { what: "exhaustive enumeration", n, max: ENUMERATION_MAX_N });
    }
    let mut used = vec![false; 2 * n];
    let mut pairs = Vec::with_capacity(n);
    let mut scratch = Diagram::from_full_unchecked({
        let mut p = PartialDiagram::empty(n)?;
        for i in 0..n {
            p.push_unchecked(Chord::new(Dot::from_index(2 * i), Dot::from_index(2 * i + 1)));
        }
        p
    });
    let mut count = 0;
    pairings(&mut used, &mut pairs, &mut |pairs: &[(usize, usize)]| {
        for mask in 0u32..(1 << n) {
            let p = scratch.partial_mut();
            for _ in 0..n {
                p.pop_unchecked();
            }
            for (i, &(a, b)) in pairs.iter().enumerate() {
                let c = Chord::new(Dot::from_index(a), Dot::from_index(b));
                p.push_unchecked(if mask >> i & 1 == 1 { c.reversed() } else { c });
            }
            visit(&scratch);
            count += 1;
        }
    });
    Ok(count)
}

fn pairings(
    used: &mut [bool],
    pairs: &mut Vec<(usize, usize)>,
    leaf: &mut impl FnMut(&[(usize, usize)]),
) {
    let Some(first) = used.iter().position(|&u| !u) else {
        leaf(pairs);
        return;
    };
    used[first] = true;
    for partner in first + 1..used.len() {
        if used[partner] {
            continue;
        }
        used[partner] = true;
        pairs.push((first, partner));
        pairings(used, pairs, leaf);
        pairs.pop();
        used[partner] = false;
    }
    used[first] = false;
}

/// Visits every `k`-`n`-diagram once. Returns the number of visits.
pub fn enumerate_partial_diagrams(
    n: usize,
    k: usize,
    mut visit: impl FnMut(&PartialDiagram),
) -> Result<u64> {
    if k > n {
        return Err(Error::TooManyChords { chords: k, dots: 2 * n });
    }
    let mut p = PartialDiagram::empty(n)?;
    let mut used = vec![false; 2 * n];
    let mut count = 0;
    partial_rec(&mut p, &mut used, 0, k, &mut visit, &mut count);
    Ok(count)
}

fn partial_rec(
    p: &mut PartialDiagram,
    used: &mut [bool],
    from: usize,
    left: usize,
    visit: &mut impl FnMut(&PartialDiagram),
    count: &mut u64,
) {
    if left == 0 {
        visit(p);
        *count += 1;
        return;
    }
    // The smallest dot of the next chord is at least `from`; dots skipped
    // here stay vacant.
    let m = used.len();
    for a in from..m {
        if used[a] {
            continue;
        }
        used[a] = true;
        for b in a + 1..m {
            if used[b] {
                continue;
            }
            used[b] = true;
            for c in [
                Chord::new(Dot::from_index(a), Dot::from_index(b)),
                Chord::new(Dot::from_index(b), Dot::from_index(a)),
            ] {
                p.push_unchecked(c);
                partial_rec(p, used, a + 1, left - 1, visit, count);
                p.pop_unchecked();
            }
            used[b] = false;
        }
        used[a] = false;
    }
}

/// Exact distribution of `d` and loop sizes over all diagrams of order `n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExactStats {
    pub n: usize,
    pub count: u64,
    /// `d_n`, the mean number of boundary components.
    pub d_mean: Ratio<u64>,
    pub genus_histogram: BTreeMap<usize, u64>,
    pub d_histogram: BTreeMap<usize, u64>,
    /// `L_k`: mean number of loops of size `k`.
    pub loops: BTreeMap<usize, Ratio<u64>>,
    /// `P_k`: probability that a uniformly chosen edge lies in a loop of size `k`.
    pub edge_share: BTreeMap<usize, Ratio<u64>>,
    /// Every diagram satisfied `k <= r <= 4k` for each loop, all `4n` edges
    /// were covered, and every chord was crossed exactly four times.
    pub structure_ok: bool,
}

impl ExactStats {
    /// `g_n = (n + 2 - d_n) / 2`.
    pub fn genus_mean(&self) -> Ratio<u64> {
        (Ratio::from_integer(self.n as u64 + 2) - self.d_mean) / 2
    }
}

pub fn exact_stats(n: usize) -> Result<ExactStats> {
    let mut d_hist = BTreeMap::new();
    let mut loop_counts: BTreeMap<usize, u64> = BTreeMap::new();
    let mut edge_counts: BTreeMap<usize, u64> = BTreeMap::new();
    let mut d_sum = 0u64;
    let mut structure_ok = true;
    let (mut seen, mut stamp, mut profile) = (Vec::new(), Vec::new(), Vec::new());
    let count = enumerate_diagrams(n, |d| {
        loop_profile(d, &mut seen, &mut stamp, &mut profile);
        let mut covered = 0;
        for &(size, edges) in &profile {
            *loop_counts.entry(size).or_default() += 1;
            *edge_counts.entry(size).or_default() += edges as u64;
            covered += edges;
            structure_ok &= size <= edges && edges <= 4 * size;
        }
        // Each edge ends at one chord end and each chord has two ends with two
        // edges entering each: 4n edges means four visits per chord.
        structure_ok &= covered == 4 * n;
        d_sum += profile.len() as u64;
        *d_hist.entry(profile.len()).or_default() += 1;
    })?;
    let genus_histogram = d_hist
        .iter()
        .map(|(&d, &c)| ((n + 2 - d) / 2, c))
        .fold(BTreeMap::new(), |mut acc, (g, c)| {
            *acc.entry(g).or_default() += c;
            acc
        });
    let edges_total = count * 4 * n as u64;
    Ok(ExactStats {
        n,
        count,
        d_mean: Ratio::new(d_sum, count),
        genus_histogram,
        d_histogram: d_hist,
        loops: loop_counts.into_iter().map(|(k, c)| (k, Ratio::new(c, count))).collect(),
        edge_share: edge_counts.into_iter().map(|(k, e)| (k, Ratio::new(e, edges_total))).collect(),
        structure_ok,
    })
}
