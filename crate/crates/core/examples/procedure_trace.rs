//! Step-by-step trace of the random procedure: chords added, loops closed,
//! pointer moves and plugs.

use chord_genus::diagram::display_edge;
use chord_genus::{find_plugs, ProcedureState};

fn main() -> chord_genus::Result<()> {
    let mut args = std::env::args().skip(1).map(|a| a.parse::<u64>());
    let n = args.next().and_then(|a| a.ok()).unwrap_or(6) as usize;
    let seed = args.next().and_then(|a| a.ok()).unwrap_or(1);
    let mut state = ProcedureState::new(n, seed)?;
    while !state.is_complete() {
        let ev = state.step()?;
        print!("step {:>2}: chord {}", state.step_index(), ev.chord);
        if let Some(l) = &ev.closed_loop {
            print!("  closed loop of size {} ({} edges)", l.size, l.edge_count());
        }
        if let Some(p) = ev.new_pointer {
            print!("  pointer -> {}", display_edge(p, n));
        }
        println!("  plugs {}", find_plugs(state.partial()).len());
    }
    let closures: Vec<String> = state.closures().iter().map(|c| format!("{}@{}", c.size, c.step)).collect();
    println!("loop sizes at closing steps: {}", closures.join(" "));
    println!("diagram {}", state.partial());
    Ok(())
}
