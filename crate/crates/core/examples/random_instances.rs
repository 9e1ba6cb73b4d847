//! Seeded random connected 4-chordal graphs.

use matchcut::generate::{four_chordal_corpus, GenParams};
use matchcut::io::write_graph;

fn main() {
    let corpus = four_chordal_corpus(42, 5, GenParams { min_n: 6, max_n: 10 });
    for (i, g) in corpus.iter().enumerate() {
        println!("# instance {i}\n{}", write_graph(g));
    }
}
