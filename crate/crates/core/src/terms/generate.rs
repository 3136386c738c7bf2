//! Exhaustive enumeration of canonical words by weight.

use super::word::{Letter, Word};

/// Every canonical word over `letters` with weight exactly `0..=max_weight`,
/// grouped by weight (index = weight). Each word appears once.
pub fn words_by_weight(letters: &[Letter], max_weight: usize) -> Vec<Vec<Word>> {
    // non-product words (atoms and bars) and products, per weight
    let mut simple: Vec<Vec<Word>> = Vec::with_capacity(max_weight + 1);
    let mut all: Vec<Vec<Word>> = Vec::with_capacity(max_weight + 1);
    for weight in 0..=max_weight {
        let s: Vec<Word> = if weight == 0 {
            letters.iter().cloned().map(Word::atom).collect()
        } else {
            all[weight - 1].iter().cloned().map(Word::bar).collect()
        };
        // a product splits uniquely as first factor times the rest
        let mut products = Vec::new();
        for first_weight in 0..weight {
            for first in &simple[first_weight] {
                for rest in &all[weight - 1 - first_weight] {
                    products.push(first.mul(rest));
                }
            }
        }
        let mut both = s.clone();
        both.extend(products);
        simple.push(s);
        all.push(both);
    }
    all
}

/// All canonical words over `letters` with weight at most `max_weight`.
pub fn words_up_to_weight(letters: &[Letter], max_weight: usize) -> Vec<Word> {
    words_by_weight(letters, max_weight).into_iter().flatten().collect()
}
