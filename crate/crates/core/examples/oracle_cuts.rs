//! Exhaustive enumeration of matching cuts and perfect matching cuts.

use matchcut::catalog;
use matchcut::oracle::{enumerate_matching_cuts, has_dpm, CutKind, OracleConfig};

fn main() -> matchcut::Result<()> {
    let cfg = OracleConfig::default();
    for (name, g) in
        [("triangle pair", catalog::triangle_pair()), ("domino", catalog::domino()), ("cube", catalog::cube())]
    {
        let all = enumerate_matching_cuts(&g, CutKind::Matching, &cfg)?;
        let perfect = enumerate_matching_cuts(&g, CutKind::Perfect, &cfg)?;
        println!("{name}: {} matching cuts, {} perfect, dpm {}", all.len(), perfect.len(), has_dpm(&g, &cfg)?);
        for cut in &perfect {
            println!("  X={:?}", cut.x());
        }
    }
    Ok(())
}
