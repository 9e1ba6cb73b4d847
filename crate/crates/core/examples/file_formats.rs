//! Graph files, 1-in-3 CNF files, the emitted 2-CNF and the layout sidecar.

use matchcut::catalog;
use matchcut::io::{parse_cnf13, parse_graph, write_2cnf, write_graph, write_layout_json};
use matchcut::pmc::{build_pmc_formula, PmcOptions};
use matchcut::reduction::build_reduction;

fn main() -> matchcut::Result<()> {
    let text = write_graph(&catalog::domino_sweep());
    print!("{text}");
    let g = parse_graph(&text)?;

    print!("{}", write_2cnf(build_pmc_formula(&g, PmcOptions::default())?.formula()));

    let f = parse_cnf13("c one clause\np cnf 3 1\n1 2 3 0\n")?;
    print!("{}", write_layout_json(&build_reduction(&f)?));

    if let Err(e) = parse_cnf13("p cnf 3 1\n1 -2 3 0\n") {
        println!("rejected: {e}");
    }
    Ok(())
}
