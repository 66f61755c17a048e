//! Shared fixtures for the benchmarks.

use cubic_core::word::Word;

/// The commutator of `g_x²` and `g_z²`, a standard hyperbolic test word.
pub fn fourteen_letter_word() -> Word {
    Word::commutator(&Word::gx().pow(2), &Word::gz().pow(2))
}
