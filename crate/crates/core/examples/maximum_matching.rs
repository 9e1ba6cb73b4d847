//! Maximum matchings in general graphs.

use matchcut::catalog;
use matchcut::matching::{has_perfect_matching, maximum_matching};

fn main() {
    for (name, g) in
        [("petersen", catalog::petersen()), ("C7", catalog::cycle(7)), ("star with 4 leaves", catalog::star(4))]
    {
        let m = maximum_matching(&g);
        println!("{name}: size {} perfect {} edges {:?}", m.len(), has_perfect_matching(&g), m.edges());
    }
}
