//! Synthetic inputs: mutated tandem repeats and i.i.d. uniform sequences.

use rand::Rng;

use crate::alphabet::Sequence;
use crate::error::{Error, Result};
use crate::rng::{rng_from_seed, StreamRng};

/// How a mutated position picks its new symbol.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Substitution {
    /// Uniform over the `sigma - 1` other symbols; a mutation always changes the letter.
    #[default]
    OtherSymbol,
    /// Uniform over all `sigma` symbols, so a mutation is silent with probability `1/sigma`.
    AnySymbol,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RepeatSpec {
    pub repeat_len: usize,
    pub length: usize,
    pub mutation_rate: f64,
    pub seed: u64,
    pub substitution: Substitution,
}

impl RepeatSpec {
    pub fn new(repeat_len: usize, length: usize, mutation_rate: f64, seed: u64) -> Result<Self> {
        let spec = Self {
            repeat_len,
            length,
            mutation_rate,
            seed,
            substitution: Substitution::default(),
        };
        spec.validate()?;
        Ok(spec)
    }

    pub fn with_substitution(mut self, substitution: Substitution) -> Self {
        self.substitution = substitution;
        self
    }

    fn validate(&self) -> Result<()> {
        if self.repeat_len == 0 || self.repeat_len > self.length {
            return Err(Error::InvalidParameter(format!(
                "repeat length {} must be in 1..={}",
                self.repeat_len, self.length
            )));
        }
        if !(0.0..=1.0).contains(&self.mutation_rate) {
            return Err(Error::InvalidParameter(format!(
                "mutation rate {} outside [0, 1]",
                self.mutation_rate
            )));
        }
        Ok(())
    }
}

/// Draws a fresh uniform unit of `repeat_len` symbols, tiles it to `length`
/// (truncating the last copy) and then substitutes each position
/// independently with probability `mutation_rate`.
pub fn tandem_repeat(spec: &RepeatSpec, sigma: usize) -> Result<Sequence> {
    spec.validate()?;
    let mut rng = rng_from_seed(spec.seed);
    let unit: Vec<u8> = (0..spec.repeat_len).map(|_| uniform_symbol(&mut rng, sigma)).collect();
    Ok(mutated_tiling(&unit, spec.length, spec.mutation_rate, spec.substitution, sigma, &mut rng))
}

/// Like [`tandem_repeat`] but with a caller-supplied unit.
pub fn tandem_repeat_of_unit(
    unit: &[u8],
    length: usize,
    mutation_rate: f64,
    substitution: Substitution,
    sigma: usize,
    seed: u64,
) -> Result<Sequence> {
    if unit.is_empty() || unit.iter().any(|&c| c as usize >= sigma) {
        return Err(Error::InvalidParameter("repeat unit must be non-empty and inside the alphabet".into()));
    }
    if !(0.0..=1.0).contains(&mutation_rate) {
        return Err(Error::InvalidParameter(format!("mutation rate {mutation_rate} outside [0, 1]")));
    }
    let mut rng = rng_from_seed(seed);
    Ok(mutated_tiling(unit, length, mutation_rate, substitution, sigma, &mut rng))
}

fn mutated_tiling(
    unit: &[u8],
    length: usize,
    rate: f64,
    substitution: Substitution,
    sigma: usize,
    rng: &mut StreamRng,
) -> Sequence {
    let data = unit
        .iter()
        .cycle()
        .take(length)
        .map(|&c| {
            if rng.random_bool(rate) {
                match substitution {
                    Substitution::OtherSymbol => {
                        let shift = rng.random_range(1..sigma as u8);
                        (c + shift) % sigma as u8
                    }
                    Substitution::AnySymbol => uniform_symbol(rng, sigma),
                }
            } else {
                c
            }
        })
        .collect();
    Sequence::from_raw(data, sigma)
}

#[inline]
fn uniform_symbol(rng: &mut StreamRng, sigma: usize) -> u8 {
    rng.random_range(0..sigma as u8)
}

pub fn uniform_random_sequence(length: usize, sigma: usize, seed: u64) -> Sequence {
    let mut rng = rng_from_seed(seed);
    Sequence::from_raw((0..length).map(|_| uniform_symbol(&mut rng, sigma)).collect(), sigma)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn symbols(s: &Sequence) -> Vec<u8> {
        s.iter().map(Option::unwrap).collect()
    }

    #[test]
    fn unmutated_repeats_are_periodic() {
        let s = tandem_repeat(&RepeatSpec::new(1, 50, 0.0, 3).unwrap(), 4).unwrap();
        assert!(symbols(&s).windows(2).all(|p| p[0] == p[1]));

        let s = symbols(&tandem_repeat(&RepeatSpec::new(5, 12, 0.0, 3).unwrap(), 4).unwrap());
        assert_eq!(s.len(), 12);
        for i in 0..7 {
            assert_eq!(s[i], s[i + 5]);
        }
    }

    #[test]
    fn mutation_fraction_concentrates() {
        // binomial(1e6, 0.1): sd = 3e-4, so +-0.001 is > 3 sd
        let n = 1_000_000;
        let clean = symbols(&tandem_repeat(&RepeatSpec::new(7, n, 0.0, 11).unwrap(), 4).unwrap());
        let noisy = symbols(&tandem_repeat(&RepeatSpec::new(7, n, 0.1, 11).unwrap(), 4).unwrap());
        // same seed draws the same unit first, so `clean` is the pure tiling of `noisy`'s unit
        let changed = clean.iter().zip(&noisy).filter(|(a, b)| a != b).count();
        let frac = changed as f64 / n as f64;
        assert!((frac - 0.1).abs() < 0.001, "{frac}");
    }

    #[test]
    fn any_symbol_model_is_sometimes_silent() {
        let n = 200_000;
        let base = RepeatSpec::new(3, n, 0.0, 5).unwrap();
        let clean = symbols(&tandem_repeat(&base, 4).unwrap());
        let spec = RepeatSpec::new(3, n, 0.1, 5).unwrap().with_substitution(Substitution::AnySymbol);
        let noisy = symbols(&tandem_repeat(&spec, 4).unwrap());
        let frac = clean.iter().zip(&noisy).filter(|(a, b)| a != b).count() as f64 / n as f64;
        // 0.1 * 3/4 realized changes
        assert!((frac - 0.075).abs() < 0.002, "{frac}");
    }

    #[test]
    fn uniform_sequence_basics() {
        assert!(uniform_random_sequence(0, 4, 1).is_empty());
        assert_eq!(uniform_random_sequence(100, 4, 9), uniform_random_sequence(100, 4, 9));
        let s = symbols(&uniform_random_sequence(1_000_000, 4, 2));
        let mut counts = [0usize; 4];
        s.iter().for_each(|&c| counts[c as usize] += 1);
        for c in counts {
            assert!((c as f64 / 1e6 - 0.25).abs() < 0.002);
        }
    }

    #[test]
    fn rejects_bad_specs() {
        assert!(RepeatSpec::new(0, 10, 0.1, 0).is_err());
        assert!(RepeatSpec::new(11, 10, 0.1, 0).is_err());
        assert!(RepeatSpec::new(2, 10, 1.5, 0).is_err());
    }
}
