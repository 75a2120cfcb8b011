//! Compares the boundary walk with the independent gluing count.

use chord_genus::stats::enumerate_diagrams;
use chord_genus::{boundary_count, gluing_oracle_d, run_procedure};

fn main() -> chord_genus::Result<()> {
    for n in 1..=5 {
        let mut mismatches = 0;
        let total = enumerate_diagrams(n, |d| mismatches += (boundary_count(d) != gluing_oracle_d(d)) as u32)?;
        println!("n={n}: {total} diagrams, {mismatches} mismatches");
    }
    for n in [100, 1_000] {
        let mismatches = (0..200)
            .filter(|&seed| {
                let (d, _) = run_procedure(n, seed).unwrap();
                boundary_count(&d) != gluing_oracle_d(&d)
            })
            .count();
        println!("n={n}: 200 sampled diagrams, {mismatches} mismatches");
    }
    Ok(())
}
