//! Acceptance checks. One line per criterion; exits non-zero if any fails.

use std::collections::{BTreeMap, HashSet};
use std::process::Command;
use std::time::{Duration, Instant};

use rand::seq::{IndexedRandom, SliceRandom};
use rand::{RngExt, SeedableRng};
use rand_chacha::ChaCha8Rng;
use statrs::distribution::{ChiSquared, ContinuousCDF};

use chord_genus::plugs::{tally_all_configurations, LemmaTally};
use chord_genus::stats::enumerate::enumerate_partial_diagrams;
use chord_genus::stats::report::{d_lower, d_upper, SE_TOLERANCE};
use chord_genus::stats::{enumerate_diagrams, mc_stats, plug_mc_stats};
use chord_genus::{
    boundary_count, choice_tree, decompose, genus, gluing_oracle_d, return_verdict, run_procedure,
    Chord, Diagram, EdgeRef, PartialDiagram, Sign,
};

const ENUMERATION_BUDGET: Duration = Duration::from_secs(120);
const CHOICE_TREE_BUDGET: Duration = Duration::from_secs(1);
const CHI_SQUARE_ALPHA: f64 = 1e-3;

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: impl Into<String>) -> Outcome {
    Outcome { pass, detail: detail.into() }
}

fn random_diagram(n: usize, rng: &mut ChaCha8Rng) -> Diagram {
    let mut dots: Vec<i64> = (1..=2 * n as i64).collect();
    dots.shuffle(rng);
    let chords: Vec<(i64, i64)> = dots
        .chunks(2)
        .map(|c| if rng.random::<bool>() { (c[0], c[1]) } else { (c[1], c[0]) })
        .collect();
    Diagram::new(n, &chords).unwrap()
}

fn random_partial(n: usize, k: usize, rng: &mut ChaCha8Rng) -> PartialDiagram {
    let mut dots: Vec<i64> = (1..=2 * n as i64).collect();
    dots.shuffle(rng);
    let chords: Vec<(i64, i64)> = dots[..2 * k].chunks(2).map(|c| (c[0], c[1])).collect();
    PartialDiagram::new(n, &chords).unwrap()
}

fn key(d: &Diagram) -> Vec<(i64, i64)> {
    let mut pairs = d.pairs();
    pairs.sort_unstable();
    pairs
}

fn c1_enumeration_counts() -> Outcome {
    let expected = [2u64, 12, 120, 1680, 30240, 665280];
    let start = Instant::now();
    let mut counts = Vec::new();
    for n in 1..=6 {
        let mut visits = 0u64;
        let returned = enumerate_diagrams(n, |_| visits += 1).unwrap();
        assert_eq!(visits, returned);
        counts.push(visits);
    }
    let elapsed = start.elapsed();
    outcome(
        counts == expected && elapsed < ENUMERATION_BUDGET,
        format!("counts {counts:?} in {:.2}s", elapsed.as_secs_f64()),
    )
}

fn c2_oracle_equivalence() -> Outcome {
    let mut checked = 0u64;
    let mut mismatches = 0u64;
    for n in 1..=4 {
        enumerate_diagrams(n, |d| {
            checked += 1;
            mismatches += (boundary_count(d) != gluing_oracle_d(d)) as u64;
        })
        .unwrap();
    }
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    for n in [8, 16, 32, 64] {
        for _ in 0..10_000 {
            let d = random_diagram(n, &mut rng);
            checked += 1;
            mismatches += (boundary_count(&d) != gluing_oracle_d(&d)) as u64;
        }
    }
    outcome(mismatches == 0, format!("{checked} diagrams, {mismatches} mismatches"))
}

/// Every invariant of the structural criterion except the upper bound on `d`,
/// which is checked separately against `n + 1` as stated and `n + 2` as implied
/// by `g >= 0`.
struct Structure {
    diagrams: u64,
    violations: u64,
    over_n_plus_1: Vec<String>,
    over_n_plus_2: u64,
}

fn structure_sweep() -> Structure {
    let mut s = Structure { diagrams: 0, violations: 0, over_n_plus_1: Vec::new(), over_n_plus_2: 0 };
    for n in 1..=5 {
        enumerate_diagrams(n, |dg| {
            s.diagrams += 1;
            let w = decompose(dg);
            let d = boundary_count(dg);
            let g = genus(dg);
            let mut ok = w.segments.is_empty() && w.loops.len() == d;
            let mut seen = HashSet::new();
            let mut visits = vec![0usize; n];
            for l in &w.loops {
                let mut chords = HashSet::new();
                for e in &l.edges {
                    ok &= seen.insert(e.position(n));
                    let (c, _) = dg.occupant(e.end(n)).unwrap();
                    visits[c] += 1;
                    chords.insert(c);
                }
                ok &= chords.len() == l.size;
                ok &= l.size <= l.edge_count() && l.edge_count() <= 4 * l.size;
            }
            ok &= seen.len() == 4 * n;
            // each chord is crossed twice per end, so four walk visits
            ok &= visits.iter().all(|&v| v == 4);
            ok &= d >= 1 && d % 2 == n % 2;
            ok &= 2 * (n + 2) == 2 * d + 4 * g;
            ok &= 2 * g <= n + 1;
            s.violations += !ok as u64;
            if d > n + 1 && s.over_n_plus_1.len() < 3 {
                s.over_n_plus_1.push(format!("{dg} has d={d}"));
            }
            s.over_n_plus_2 += (d > n + 2) as u64;
        })
        .unwrap();
    }
    s
}

fn c3_structural_invariants(s: &Structure) -> Outcome {
    outcome(
        s.violations == 0 && s.over_n_plus_2 == 0,
        format!(
            "{} diagrams: {} violations of partition/visits/parity/Euler/genus/loop-size, {} with d > n+2",
            s.diagrams, s.violations, s.over_n_plus_2
        ),
    )
}

fn c3_d_at_most_n_plus_1(s: &Structure) -> Outcome {
    outcome(
        s.over_n_plus_1.is_empty(),
        format!(
            "stated bound d <= n+1 contradicted by {}; g >= 0 only gives d <= n+2",
            s.over_n_plus_1.join("; ")
        ),
    )
}

/// Order, chords, expected `d` and `g`.
type KnownCase = (usize, &'static [(i64, i64)], usize, usize);

fn c4_known_cases() -> Outcome {
    let cases: [KnownCase; 4] = [
        (1, &[(1, 2)], 3, 0),
        (1, &[(2, 1)], 3, 0),
        (2, &[(1, 3), (2, 4)], 2, 1),
        (2, &[(1, 2), (3, 4)], 4, 0),
    ];
    let mut bad = Vec::new();
    for (n, chords, d, g) in cases {
        let dg = Diagram::new(n, chords).unwrap();
        let got = (boundary_count(&dg), gluing_oracle_d(&dg), genus(&dg));
        if got != (d, d, g) {
            bad.push(format!("{dg}: (d, oracle, g) = {got:?}"));
        }
    }
    outcome(bad.is_empty(), if bad.is_empty() { "4 cases match walk and oracle".into() } else { bad.join("; ") })
}

fn c5_choice_tree() -> Outcome {
    let start = Instant::now();
    let mut summary = Vec::new();
    let mut ok = true;
    for n in 1..=3 {
        let leaves = choice_tree(n).unwrap();
        let distinct: HashSet<Vec<(i64, i64)>> = leaves.iter().map(|(_, d)| key(d)).collect();
        let mut expected = 0u64;
        enumerate_diagrams(n, |_| expected += 1).unwrap();
        ok &= leaves.len() as u64 == expected && distinct.len() == leaves.len();
        summary.push(format!("n={n}: {} leaves, {} distinct", leaves.len(), distinct.len()));
    }
    let elapsed = start.elapsed();
    ok &= elapsed < CHOICE_TREE_BUDGET;
    outcome(ok, format!("{} in {:.3}s", summary.join(", "), elapsed.as_secs_f64()))
}

fn c6_chi_square() -> Outcome {
    let runs = 100_000u64;
    let mut counts: BTreeMap<Vec<(i64, i64)>, u64> = BTreeMap::new();
    enumerate_diagrams(2, |d| {
        counts.insert(key(d), 0);
    })
    .unwrap();
    for seed in 0..runs {
        let (d, _) = run_procedure(2, seed).unwrap();
        *counts.get_mut(&key(&d)).expect("every leaf is a diagram of order 2") += 1;
    }
    let cells = counts.len() as f64;
    let expected = runs as f64 / cells;
    let stat: f64 = counts.values().map(|&c| (c as f64 - expected).powi(2) / expected).sum();
    let p = 1.0 - ChiSquared::new(cells - 1.0).unwrap().cdf(stat);
    outcome(
        counts.len() == 12 && p > CHI_SQUARE_ALPHA,
        format!("chi2 = {stat:.3}, df = 11, p = {p:.4}"),
    )
}

fn c7_loop_bounds() -> Outcome {
    let n = 10_000;
    let s = mc_stats(n, 10_000, 7).unwrap();
    let mut worst_upper = f64::INFINITY;
    let mut worst_lower = f64::INFINITY;
    let mut failures = Vec::new();
    for k in 1..=100 {
        let l = s.loops.get(&k).map_or((0.0, 0.0), |e| (e.mean, e.se));
        let kf = k as f64;
        let upper_slack = 3.0 / kf + SE_TOLERANCE * l.1 - l.0;
        let lower_slack = l.0 - (1.0 / (9.0 * kf) - SE_TOLERANCE * l.1);
        worst_upper = worst_upper.min(upper_slack);
        worst_lower = worst_lower.min(lower_slack);
        if upper_slack < 0.0 || lower_slack < 0.0 {
            failures.push(k);
        }
    }
    outcome(
        failures.is_empty(),
        format!(
            "n={n}, 10^4 samples: min slack upper {worst_upper:.4}, lower {worst_lower:.4}, failing k {failures:?}"
        ),
    )
}

fn c8_d_envelope_growth() -> Outcome {
    let mut means = Vec::new();
    let mut ok = true;
    for n in [100, 1_000, 10_000, 100_000] {
        let s = mc_stats(n, 1_000, 8).unwrap();
        ok &= d_lower(n) <= s.d_mean && s.d_mean <= d_upper(n);
        means.push(s.d_mean);
    }
    ok &= means.windows(2).all(|w| w[0] < w[1]);
    let shown: Vec<String> = means.iter().map(|m| format!("{m:.3}")).collect();
    outcome(ok, format!("d_mean at 10^2..10^5 = [{}]", shown.join(", ")))
}

fn c9_plug_bounds() -> Outcome {
    let n = 10_000;
    let s = plug_mc_stats(n, 100, 10_000, 9).unwrap();
    let nf = n as f64;
    let mut failures = Vec::new();
    for r in &s.rows {
        let checks = [
            ("plugs", r.plugs, 0.25),
            ("G+", r.completed_positive, 5.0 / nf),
            ("G-", r.completed_negative, 20.0 / nf),
            ("H+", r.at_pointer_positive, 6.0 / nf),
            ("H-", r.at_pointer_negative, 21.0 / nf),
        ];
        for (name, est, bound) in checks {
            if est.mean > bound + SE_TOLERANCE * est.se {
                failures.push(format!("{name}@k={}", r.k));
            }
        }
    }
    let peak = s.rows.iter().map(|r| r.plugs.mean).fold(0.0, f64::max);
    outcome(
        failures.is_empty(),
        format!("n={n}, k<=100, 10^4 runs: peak plug mean {peak:.4}, failures {failures:?}"),
    )
}

fn c10_lemma_sweeps() -> Outcome {
    let mut exhaustive = LemmaTally::default();
    for k in 0..=2 {
        enumerate_partial_diagrams(3, k, |p| exhaustive.merge(tally_all_configurations(p))).unwrap();
    }
    let mut random = LemmaTally::default();
    let mut rng = ChaCha8Rng::seed_from_u64(10);
    while random.cases < 100_000 {
        let n = rng.random_range(4..=40);
        let k = rng.random_range(0..=n - 1);
        let p = random_partial(n, k, &mut rng);
        let vacant = p.vacant_dots();
        let a = *vacant.choose(&mut rng).unwrap();
        let b = loop {
            let b = *vacant.choose(&mut rng).unwrap();
            if b != a {
                break b;
            }
        };
        let e = if rng.random::<bool>() {
            EdgeRef::new(a.prev(n), Sign::Positive)
        } else {
            EdgeRef::new(a.next(n), Sign::Negative)
        };
        let q = if rng.random::<bool>() { Chord::new(a, b) } else { Chord::new(b, a) };
        random.record(&return_verdict(&p, a, e, b, q).unwrap());
    }
    let bad = |t: &LemmaTally| t.entrance_violations + t.neighbor_violations;
    outcome(
        bad(&exhaustive) == 0 && bad(&random) == 0 && exhaustive.cases > 0,
        format!(
            "exhaustive {} cases ({} returns), random {} cases ({} returns), {} counterexamples",
            exhaustive.cases,
            exhaustive.returns,
            random.cases,
            random.returns,
            bad(&exhaustive) + bad(&random)
        ),
    )
}

fn c11_determinism() -> Outcome {
    let dir = tempfile::tempdir().unwrap();
    let run = |name: &str, threads: &str| {
        let path = dir.path().join(name);
        let status = Command::new(env!("CARGO_BIN_EXE_chord-genus"))
            .args(["sample", "--n", "300", "--samples", "3000", "--seed", "11", "--out"])
            .arg(&path)
            .env("CHORD_THREADS", threads)
            .status()
            .unwrap();
        assert!(status.code() == Some(0) || status.code() == Some(3));
        std::fs::read(path).unwrap()
    };
    let a = run("a.csv", "1");
    let b = run("b.csv", "1");
    let c = run("c.csv", "4");
    outcome(!a.is_empty() && a == b && a == c, format!("{} bytes, threads 1/1/4 identical: {}", a.len(), a == b && a == c))
}

fn main() {
    let structure = structure_sweep();
    let results: Vec<(&str, Outcome)> = vec![
        ("1", c1_enumeration_counts()),
        ("2", c2_oracle_equivalence()),
        ("3", c3_structural_invariants(&structure)),
        ("3 (d <= n+1)", c3_d_at_most_n_plus_1(&structure)),
        ("4", c4_known_cases()),
        ("5", c5_choice_tree()),
        ("6", c6_chi_square()),
        ("7", c7_loop_bounds()),
        ("8", c8_d_envelope_growth()),
        ("9", c9_plug_bounds()),
        ("10", c10_lemma_sweeps()),
        ("11", c11_determinism()),
    ];
    let mut failed = 0;
    for (id, o) in &results {
        println!("criterion {id}: {} ({})", if o.pass { "PASS" } else { "FAIL" }, o.detail);
        failed += !o.pass as usize;
    }
    if failed > 0 {
        println!("{failed} criterion line(s) failed");
        std::process::exit(1);
    }
}
