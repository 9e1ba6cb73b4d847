//! Longest induced paths and cycles, and induced pattern search.

use std::time::Duration;

use matchcut::catalog;
use matchcut::oracle::{class_report, contains_induced, OracleConfig};

fn main() -> matchcut::Result<()> {
    let cfg = OracleConfig::default().with_budget(Duration::from_secs(10));
    let g = catalog::petersen();
    let r = class_report(&g, &[5, 6, 7], &cfg)?;
    println!("petersen: longest induced path {:?}", r.longest_induced_path);
    println!("petersen: longest induced cycle {:?}", r.longest_induced_cycle);
    println!("petersen: P_t-free {:?}, chordality {}", r.pt_free, r.chordality);

    let copy = contains_induced(&g, &catalog::path_forest(2, 2), &cfg)?;
    println!("induced 2P2: {copy:?}");
    Ok(())
}
