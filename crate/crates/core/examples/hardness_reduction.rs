//! From a positive 1-in-3 formula to a graph whose perfect matching cuts
//! are its 1-in-3 assignments, and back.

use matchcut::oracle::{enumerate_matching_cuts, enumerate_one_in_three, CutKind, OracleConfig};
use matchcut::reduction::{
    assignment_to_pmc, build_reduction, cut_to_assignment, verify_reduction, Formula13, VerifyOptions,
};

fn main() -> matchcut::Result<()> {
    let f = Formula13::new(5, vec![[0, 1, 2], [2, 3, 4]])?;
    let layout = build_reduction(&f)?;
    println!(
        "{} vertices, {} edges, F={:?}, T={:?}",
        layout.graph.n(),
        layout.graph.m(),
        layout.f_clique,
        layout.t_clique
    );

    for a in enumerate_one_in_three(&f)? {
        let cut = assignment_to_pmc(&layout, &a)?;
        let back = cut_to_assignment(&layout, &cut)?;
        println!("true {:?} -> X={:?} -> true {:?}", a.true_vars(), cut.x(), back.true_vars());
    }

    let cuts = enumerate_matching_cuts(&layout.graph, CutKind::Matching, &OracleConfig::default())?;
    println!("{} matching cuts in total", cuts.len());

    let report = verify_reduction(&f, &layout, &VerifyOptions::default());
    println!("{}", serde_json::to_string_pretty(&report).expect("report serializes"));
    Ok(())
}
