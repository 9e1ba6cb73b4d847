//! Matching cut and disconnected perfect matching on a 4-chordal graph.

use matchcut::catalog;
use matchcut::forcing::{propagate, solve_dpm_4chordal, solve_mc_4chordal, Propagation};

fn main() -> matchcut::Result<()> {
    let g = catalog::domino();

    // one seed edge by hand
    match propagate(&g, 0, 1)? {
        Propagation::NoAbCut { rule, witness } => println!("seed 0-1: refuted by {rule} at {witness}"),
        Propagation::Stable(s) => println!("seed 0-1: stable, X={:?} Y={:?} free={:?}", s.x(), s.y(), s.free()),
    }

    let mc = solve_mc_4chordal(&g)?;
    match mc.cut {
        Some(cut) => println!("matching cut: X={:?} crossing {:?}", cut.x(), cut.crossing_edges()),
        None => println!("no matching cut"),
    }

    for (name, g) in [("domino", catalog::domino()), ("triangle pair", catalog::triangle_pair())] {
        let dpm = solve_dpm_4chordal(&g)?;
        match dpm.dpm {
            Some((m, cut)) => println!("{name}: dpm {:?} around X={:?}", m.edges(), cut.x()),
            None => println!("{name}: no disconnected perfect matching"),
        }
    }
    Ok(())
}
