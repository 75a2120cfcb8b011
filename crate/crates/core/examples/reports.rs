//! CSV and JSON reports, as written by the command-line tool.

use chord_genus::io::{write_csv, write_json, ReportDocument};
use chord_genus::stats::{exact_stats, mc_stats};

fn main() -> chord_genus::Result<()> {
    print!("{}", write_csv(&ReportDocument::exact(exact_stats(3)?)));
    println!();
    let json = write_json(&ReportDocument::sample(mc_stats(200, 500, 1)?));
    println!("{}", json.lines().take(20).collect::<Vec<_>>().join("\n"));
    Ok(())
}
