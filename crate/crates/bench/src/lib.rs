//! Shared inputs for the benchmarks under `benches/`.

use charnet_core::extract::AliasTable;
use charnet_core::genmodels::gen_er;
use charnet_core::{Graph, Seed};
use rand::seq::SliceRandom;

/// ER graph with `n` nodes and edge probability `p`.
pub fn random_graph(n: usize, p: f64, seed: u64) -> Graph {
    gen_er(n, p, Seed(seed)).expect("valid parameters")
}

const FILLER: [&str; 12] = [
    "the", "tide", "rose", "over", "a", "quiet", "harbor", "while", "gulls", "circled", "old", "nets",
];

/// Synthetic text of `words` tokens with names from a `cast`-sized table
/// sprinkled in, plus that table.
pub fn synthetic_story(words: usize, cast: usize, seed: u64) -> (String, AliasTable) {
    let mut table = AliasTable::new();
    let names: Vec<String> = (0..cast).map(|i| format!("person{i}")).collect();
    for name in &names {
        table.add(name, &[name.as_str()]).expect("distinct aliases");
    }
    let mut rng = Seed(seed).rng();
    let mut text = String::new();
    for i in 0..words {
        let word = if i % 7 == 0 {
            names.choose(&mut rng).unwrap().as_str()
        } else {
            FILLER.choose(&mut rng).unwrap()
        };
        text.push_str(word);
        text.push(' ');
    }
    (text, table)
}
