//! Exact averages over all diagrams of small order.

use chord_genus::stats::{exact_report, exact_stats, Status};

fn main() -> chord_genus::Result<()> {
    let max = std::env::args().nth(1).and_then(|a| a.parse().ok()).unwrap_or(5);
    for n in 1..=max {
        let s = exact_stats(n)?;
        let report = exact_report(&s);
        println!(
            "n={n} count={} d_mean={} genus_mean={} checks passed={}/{}",
            s.count,
            s.d_mean,
            s.genus_mean(),
            report.count(Status::Pass),
            report.rows.len()
        );
        let hist: Vec<String> = s.genus_histogram.iter().map(|(g, c)| format!("g{g}:{c}")).collect();
        println!("  {}", hist.join(" "));
    }
    Ok(())
}
