//! Monte Carlo estimates of the mean number of loops of each size.

use chord_genus::stats::{mc_stats, sample_report, Status};

fn main() -> chord_genus::Result<()> {
    let n = 2_000;
    let s = mc_stats(n, 2_000, 42)?;
    println!("n={n} samples={} d_mean={:.4} +- {:.4}", s.samples, s.d_mean, s.d_se);
    for (k, l) in s.loops.iter().take(12) {
        let p = s.edge_share[k];
        println!("k={k:>3} L={:.4} (3/k={:.3}) P={:.6}", l.mean, 3.0 / *k as f64, p.mean);
    }
    let report = sample_report(&s);
    println!(
        "bounds: {} pass, {} fail, {} insufficient",
        report.count(Status::Pass),
        report.count(Status::Fail),
        report.count(Status::Insufficient)
    );
    Ok(())
}
