//! Seeded random strings.
//!
//! The generator is ChaCha8 (`rand_chacha::ChaCha8Rng`). Sample `i` of a run
//! seeded with `seed` draws from stream `i` of the generator keyed by
//! `seed_from_u64(seed)`, so every sample is reproducible on its own and the
//! output does not depend on how samples are spread across threads. Symbols
//! are drawn with `random_range(1..=sigma)`, one per position, left to right.

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::strings::{Alphabet, Str, Symbol};

/// Generator for sample `index` of a run seeded with `seed`.
pub fn sample_rng(seed: u64, index: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index);
    rng
}

pub fn random_symbol<R: Rng + ?Sized>(alphabet: Alphabet, rng: &mut R) -> Symbol {
    rng.random_range(1..=alphabet.size())
}

/// `n` i.i.d. uniform symbols.
pub fn random_string<R: Rng + ?Sized>(n: usize, alphabet: Alphabet, rng: &mut R) -> Result<Str> {
    if n == 0 {
        return Err(Error::EmptyString);
    }
    Ok(random_string_unchecked(n, alphabet, rng))
}

pub(crate) fn random_string_unchecked<R: Rng + ?Sized>(n: usize, alphabet: Alphabet, rng: &mut R) -> Str {
    let raw = (0..n).map(|_| random_symbol(alphabet, rng)).collect();
    Str::from_trusted(raw, alphabet)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn same_seed_same_string() {
        let a = Alphabet::new(2).unwrap();
        let x = random_string(5, a, &mut sample_rng(42, 0)).unwrap();
        let y = random_string(5, a, &mut sample_rng(42, 0)).unwrap();
        assert_eq!(x, y);
        let long = random_string(64, a, &mut sample_rng(42, 0)).unwrap();
        assert_ne!(long, random_string(64, a, &mut sample_rng(42, 1)).unwrap());
    }

    #[test]
    fn frozen_stream() {
        // Pins the documented generator; a change here changes every data file.
        let a = Alphabet::new(4).unwrap();
        let x = random_string(16, a, &mut sample_rng(7, 3)).unwrap();
        assert_eq!(x.to_text(), FROZEN_SEED7_STREAM3);
    }

    const FROZEN_SEED7_STREAM3: &str = "cacacdabababbdcb";

    #[test]
    fn rejects_empty() {
        let a = Alphabet::new(2).unwrap();
        assert!(matches!(random_string(0, a, &mut sample_rng(1, 0)), Err(Error::EmptyString)));
    }

    #[test]
    fn symbol_frequencies_are_uniform() {
        let a = Alphabet::new(4).unwrap();
        let mut rng = sample_rng(2024, 0);
        let samples = 100_000u32;
        let mut counts = [0u32; 5];
        for _ in 0..samples {
            counts[random_string(1, a, &mut rng).unwrap().as_slice()[0] as usize] += 1;
        }
        let p = 0.25;
        let mean = samples as f64 * p;
        let sd = (samples as f64 * p * (1.0 - p)).sqrt();
        for &c in &counts[1..] {
            assert!((c as f64 - mean).abs() <= 4.0 * sd, "{counts:?}");
        }
    }
}
