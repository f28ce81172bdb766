//! Seeded input generation.

use popcount_core::Word;
use rand::seq::index::sample;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::CliError;

/// Identifies the generator in CSV headers and reports.
pub const GENERATOR: &str = "ChaCha8Rng(rand_chacha 0.9), splitmix64 seed mixing";

/// Folds `parts` into one 64-bit seed with the splitmix64 finalizer.
pub fn mix_seed(parts: &[u64]) -> u64 {
    parts.iter().fold(0x243F_6A88_85A3_08D3, |acc, &p| {
        let mut z = (acc ^ p).wrapping_add(0x9E37_79B9_7F4A_7C15);
        z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
        z ^ (z >> 31)
    })
}

/// A word of `width` bits with exactly `ones` set bits at seeded random positions.
pub fn gen_input(width: usize, ones: usize, seed: u64) -> Result<Word, CliError> {
    if ones > width {
        return Err(CliError::Usage(format!(
            "cannot place {ones} ones in a {width}-bit word"
        )));
    }
    let zero = Word::zero(width).map_err(|e| CliError::Usage(e.to_string()))?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    Ok(sample(&mut rng, width, ones)
        .into_iter()
        .fold(zero, Word::with_bit))
}

/// A uniformly random word of `width` bits.
pub fn uniform_word(width: usize, seed: u64) -> Word {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut limbs: Vec<u64> = (0..width.div_ceil(64)).map(|_| rng.random()).collect();
    if !width.is_multiple_of(64) {
        *limbs.last_mut().expect("positive width") &= (1u64 << (width % 64)) - 1;
    }
    Word::from_limbs(&limbs, width).expect("limbs masked to width")
}

#[cfg(test)]
mod tests {
    use super::*;
    use popcount_core::popcount_reference;
    use proptest::prelude::*;

    #[test]
    fn gen_input_examples() {
        assert_eq!(gen_input(8, 0, 3).unwrap(), Word::zero(8).unwrap());
        assert_eq!(gen_input(8, 8, 99).unwrap(), Word::ones(8).unwrap());
        let w = gen_input(64, 3, 42).unwrap();
        assert_eq!(popcount_reference(&w), 3);
        assert!(matches!(gen_input(8, 9, 0), Err(CliError::Usage(_))));
    }

    #[test]
    fn generation_is_deterministic() {
        assert_eq!(
            gen_input(256, 17, 5).unwrap(),
            gen_input(256, 17, 5).unwrap()
        );
        assert_eq!(uniform_word(100, 5), uniform_word(100, 5));
        assert_ne!(mix_seed(&[1, 2]), mix_seed(&[2, 1]));
    }

    proptest! {
        #[test]
        fn gen_input_has_requested_popcount(k in 2u32..13, frac in 0.0f64..=1.0, seed: u64) {
            let width = 1usize << k;
            let ones = (frac * width as f64) as usize;
            let w = gen_input(width, ones, seed).unwrap();
            prop_assert_eq!(w.width(), width);
            prop_assert_eq!(popcount_reference(&w), ones as u64);
        }
    }
}
