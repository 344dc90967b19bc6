//! Shared input builders for the benchmark suite.

use thompson_core::plf::PlHomeo;
use thompson_core::words::{random_element, GenWord};

/// Deterministic sample of elements with tree pairs of at most `size` leaves.
pub fn sample_elements(count: usize, size: usize) -> Vec<PlHomeo> {
    (0..count as u64)
        .map(|seed| random_element(size, seed))
        .collect()
}

/// A word for the given element padded with relator noise, so normalization
/// has real work to do.
pub fn padded_word(seed: u64, size: usize) -> GenWord {
    let g = random_element(size, seed);
    let base = thompson_core::words::plf_to_word(&g).to_gen_word();
    let i = (seed % 3) as u32;
    let j = i + 1 + (seed % 2) as u32;
    let relator = GenWord::from_letters([(j, 1), (i, 1), (j + 1, -1), (i, -1)]);
    relator.concat(&base).concat(&relator)
}
