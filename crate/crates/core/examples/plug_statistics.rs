//! Plug counts along the first steps of the procedure.

use chord_genus::stats::{plug_mc_stats, plug_report};

fn main() -> chord_genus::Result<()> {
    let n = 5_000;
    let s = plug_mc_stats(n, 50, 2_000, 3)?;
    println!("k   plugs    G+        G-        H+        H-");
    for r in s.rows.iter().step_by(5) {
        println!(
            "{:<3} {:.4}  {:.2e}  {:.2e}  {:.2e}  {:.2e}",
            r.k,
            r.plugs.mean,
            r.completed_positive.mean,
            r.completed_negative.mean,
            r.at_pointer_positive.mean,
            r.at_pointer_negative.mean
        );
    }
    println!("any bound failed: {}", plug_report(&s).has_failure());
    Ok(())
}
