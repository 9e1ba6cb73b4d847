//! The level sweep that turns perfect matching cut into 2SAT.

use matchcut::catalog;
use matchcut::pmc::{build_pmc_formula, solve_pmc_4chordal_with, PmcFormula, PmcOptions, ScanOrder};

fn main() -> matchcut::Result<()> {
    for (name, g, root) in
        [("domino", catalog::domino_sweep(), 0), ("triangle pair", catalog::triangle_pair_sweep(), 2)]
    {
        for order in [ScanOrder::Ascending, ScanOrder::Descending] {
            let opts = PmcOptions { root, order };
            let formula = build_pmc_formula(&g, opts)?;
            println!("{name}, root v{root}, {order:?}:");
            for t in formula.determined().trace() {
                let clauses: Vec<String> = formula.formula().clauses()[t.clauses.clone()]
                    .iter()
                    .map(|(a, b)| format!(" ({a} ∨ {b})"))
                    .collect();
                println!("  v{} in L{}: {}{}", t.vertex, t.level, t.classification, clauses.concat());
            }
            if let PmcFormula::NoPmc { witness, .. } = formula {
                println!("  stopped at v{witness}");
            }
            match solve_pmc_4chordal_with(&g, opts)? {
                Some(cut) => println!("  perfect matching cut X={:?}", cut.normalized().x()),
                None => println!("  no perfect matching cut"),
            }
        }
    }
    Ok(())
}
