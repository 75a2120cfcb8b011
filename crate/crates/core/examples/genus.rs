//! Boundary components and genus of a few diagrams, with their loops.
//!
//! cargo run --example genus -- "(1,3),(2,4)"

use chord_genus::diagram::display_edge;
use chord_genus::{boundary_count, decompose, genus, Diagram};

fn main() -> chord_genus::Result<()> {
    let inputs: Vec<String> = match std::env::args().nth(1) {
        Some(arg) => vec![arg],
        None => ["(1,2)", "(1,3),(2,4)", "(1,2),(3,4)", "n=3;(1,4),(5,2),(3,6)"].map(String::from).to_vec(),
    };
    for text in inputs {
        let d: Diagram = text.parse()?;
        println!("{d}: d={} g={}", boundary_count(&d), genus(&d));
        for l in decompose(&d).loops {
            let edges: Vec<String> = l.edges.iter().map(|&e| display_edge(e, d.n())).collect();
            println!("  size {}: {}", l.size, edges.join(" "));
        }
    }
    Ok(())
}
