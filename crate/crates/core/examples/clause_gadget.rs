//! The G(H;v) gadget over the cube, the Petersen graph and a 10-vertex
//! host: every neighbor of `c` can be separated from it by a perfect
//! matching cut.

use matchcut::catalog;
use matchcut::oracle::{enumerate_matching_cuts, CutKind, OracleConfig};
use matchcut::reduction::build_g_h_v;

fn main() -> matchcut::Result<()> {
    let cfg = OracleConfig::default();
    for (name, h, v) in [
        ("cube", catalog::cube(), 0),
        ("petersen", catalog::petersen(), 0),
        ("nine-cycle hub", catalog::nine_cycle_hub(), 9),
    ] {
        let gadget = build_g_h_v(&h, v)?;
        let g = &gadget.graph;
        let pmcs = enumerate_matching_cuts(g, CutKind::Perfect, &cfg)?;
        let separated: Vec<bool> =
            g.neighbors(gadget.c).iter().map(|&d| pmcs.iter().any(|cut| cut.side(d) != cut.side(gadget.c))).collect();
        println!(
            "{name}: {} vertices, {} perfect matching cuts, neighbors of c separable {separated:?}",
            g.n(),
            pmcs.len()
        );
    }
    Ok(())
}
