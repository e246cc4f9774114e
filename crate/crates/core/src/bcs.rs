//! Heat-bath algorithmic cooling built on the Basic Compression Subroutine.
//!
//! A bit has bias `eps` when `P(0) = (1 + eps) / 2`. The subroutine pairs
//! bits, applies a CNOT from control to target, keeps the control bit when
//! the target reads 0 and discards every target. Kept bits carry bias
//! `2 eps / (1 + eps^2)`.
//!
//! The stochastic engine models thermal contact as i.i.d. resampling at the
//! bath bias and refills each level by rerunning the level below until at
//! least `m` purified bits exist, then cuts to the first `m`.

use alloc::vec::Vec;

use rand_chacha::ChaCha8Rng;
use rand_core::{RngCore, SeedableRng};

use crate::error::{Error, Result};

/// Identifier of the random source recorded in run metadata.
pub const PRNG_ID: &str = "ChaCha8Rng/rand_chacha-0.3/seed_from_u64";

fn check_bias(eps: f64) -> Result<()> {
    if (0.0..1.0).contains(&eps) {
        Ok(())
    } else {
        Err(Error::InvalidArgument("bias must lie in [0, 1)"))
    }
}

/// `2 eps / (1 + eps^2)`.
pub fn bcs_bias(eps: f64) -> Result<f64> {
    check_bias(eps)?;
    Ok(2.0 * eps / (1.0 + eps * eps))
}

/// Probabilities of the four CNOT outcomes, in the order
/// `00 -> 00`, `01 -> 01`, `10 -> 11`, `11 -> 10` (control, target).
pub fn bcs_outcome_probs(eps: f64) -> Result<[f64; 4]> {
    check_bias(eps)?;
    let a = (1.0 + eps) * (1.0 + eps) / 4.0;
    let b = (1.0 - eps * eps) / 4.0;
    let d = (1.0 - eps) * (1.0 - eps) / 4.0;
    Ok([a, b, b, d])
}

/// Bias of the control bit conditioned on the target reading 0.
pub fn retained_bias(outcomes: &[f64; 4]) -> f64 {
    let kept_zero = outcomes[0];
    let kept_one = outcomes[3];
    (kept_zero - kept_one) / (kept_zero + kept_one)
}

/// Probability that a pair survives: `(1 + eps^2) / 2`.
pub fn pair_retention(eps: f64) -> f64 {
    (1.0 + eps * eps) / 2.0
}

/// Purified bits per input bit, `eps / (2 eps')` with `eps' = bcs_bias(eps)`,
/// written as `(1 + eps^2) / 4` so it stays defined at `eps = 0`.
pub fn retention_per_bit(eps: f64) -> f64 {
    (1.0 + eps * eps) / 4.0
}

/// Expected purified count after `l` repetitions on blocks of `m` bits:
/// `l m (1 + eps0^2) / 4`.
pub fn expected_purified(l: usize, m: usize, eps0: f64) -> Result<f64> {
    check_bias(eps0)?;
    if l < 1 {
        return Err(Error::InvalidArgument("need at least one repetition"));
    }
    if m < 2 || !m.is_multiple_of(2) {
        return Err(Error::InvalidArgument(
            "block size must be even and at least 2",
        ));
    }
    Ok(l as f64 * m as f64 * (1.0 + eps0 * eps0) / 4.0)
}

/// Smallest number of compression levels that lifts `eps0` to at least
/// `target`.
pub fn rounds_to_bias(eps0: f64, target: f64) -> Result<usize> {
    check_bias(eps0)?;
    if !(target < 1.0) {
        return Err(Error::UnreachableTarget);
    }
    if target <= eps0 {
        return Ok(0);
    }
    if eps0 == 0.0 {
        return Err(Error::UnreachableTarget);
    }
    let mut eps = eps0;
    let mut j = 0;
    while eps < target {
        let next = bcs_bias(eps)?;
        // The map only saturates at 1, which is excluded above.
        if next <= eps {
            return Err(Error::UnreachableTarget);
        }
        eps = next;
        j += 1;
    }
    Ok(j)
}

/// Bias of a thermal spin, `tanh(E / 2T)`.
pub fn bias_from_temperature(gap: f64, temperature: f64) -> f64 {
    libm::tanh(gap / (2.0 * temperature))
}

/// Inverse of [`bias_from_temperature`]; zero bias maps to `+inf`.
pub fn temperature_from_bias(gap: f64, eps: f64) -> f64 {
    if eps == 0.0 {
        f64::INFINITY
    } else {
        gap / (2.0 * libm::atanh(eps))
    }
}

/// Binomial standard error of an empirical bias estimated from `n` bits.
pub fn bias_sigma(eps: f64, n: usize) -> f64 {
    libm::sqrt((1.0 - eps * eps) / n as f64)
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct BiasState {
    pub epsilon: f64,
    pub n_bits: usize,
}

/// Statistics of one compression level.
#[derive(Clone, Debug, PartialEq)]
pub struct BcsRound {
    pub round: usize,
    pub analytic_bias: f64,
    pub empirical: BiasState,
    /// Purified bits produced at this level before the cut.
    pub retained_bits: usize,
    /// Pairs compressed at this level.
    pub pairs: usize,
    /// Blocks of `m` bits drawn from the level below.
    pub blocks: usize,
}

#[derive(Clone, Debug, PartialEq)]
pub struct BcsRun {
    pub n_bits: usize,
    pub epsilon0: f64,
    pub seed: u64,
    pub rounds: Vec<BcsRound>,
}

struct Level {
    bits: Vec<u8>,
    retained: usize,
    pairs: usize,
    blocks: usize,
}

fn sample_bits(rng: &mut ChaCha8Rng, m: usize, eps: f64) -> Vec<u8> {
    let p0 = (1.0 + eps) / 2.0;
    (0..m)
        .map(|_| {
            let u = (rng.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64);
            u8::from(u >= p0)
        })
        .collect()
}

/// CNOT each adjacent pair and keep controls whose target reads 0.
fn compress(bits: &[u8], out: &mut Vec<u8>) -> usize {
    let before = out.len();
    for pair in bits.chunks_exact(2) {
        let control = pair[0];
        let target = pair[1] ^ control;
        if target == 0 {
            out.push(control);
        }
    }
    out.len() - before
}

fn produce(level: usize, m: usize, eps0: f64, rng: &mut ChaCha8Rng) -> Level {
    if level == 0 {
        return Level {
            bits: sample_bits(rng, m, eps0),
            retained: m,
            pairs: 0,
            blocks: 1,
        };
    }
    let mut bits = Vec::with_capacity(m + m / 2);
    let mut pairs = 0;
    let mut blocks = 0;
    while bits.len() < m {
        let source = produce(level - 1, m, eps0, rng);
        pairs += source.bits.len() / 2;
        blocks += 1;
        compress(&source.bits, &mut bits);
    }
    let retained = bits.len();
    bits.truncate(m);
    Level {
        bits,
        retained,
        pairs,
        blocks,
    }
}

/// Empirical bias of a bit string.
pub fn empirical_bias(bits: &[u8]) -> f64 {
    let ones = bits.iter().filter(|&&b| b == 1).count();
    1.0 - 2.0 * ones as f64 / bits.len() as f64
}

/// Stochastic run: for each level `0..=rounds` draw a fresh `n_bits` output
/// of that level and compare it with the analytic bias recursion.
pub fn simulate_bcs(n_bits: usize, eps0: f64, rounds: usize, seed: u64) -> Result<BcsRun> {
    check_bias(eps0)?;
    if n_bits < 2 || !n_bits.is_multiple_of(2) {
        return Err(Error::InvalidArgument(
            "bit count must be even and at least 2",
        ));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut analytic = eps0;
    let mut out = Vec::with_capacity(rounds + 1);
    for round in 0..=rounds {
        if round > 0 {
            analytic = bcs_bias(analytic)?;
        }
        let level = produce(round, n_bits, eps0, &mut rng);
        out.push(BcsRound {
            round,
            analytic_bias: analytic,
            empirical: BiasState {
                epsilon: empirical_bias(&level.bits),
                n_bits: level.bits.len(),
            },
            retained_bits: level.retained,
            pairs: level.pairs,
            blocks: level.blocks,
        });
    }
    Ok(BcsRun {
        n_bits,
        epsilon0: eps0,
        seed,
        rounds: out,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bias_map_examples() {
        assert_eq!(bcs_bias(0.0).unwrap(), 0.0);
        assert!((bcs_bias(0.5).unwrap() - 0.8).abs() < 1e-15);
        assert!(bcs_bias(1.0).is_err());
        assert!(bcs_bias(-0.1).is_err());
    }

    #[test]
    fn outcome_examples() {
        assert_eq!(bcs_outcome_probs(0.0).unwrap(), [0.25; 4]);
        let p = bcs_outcome_probs(0.5).unwrap();
        assert_eq!(p, [0.5625, 0.1875, 0.1875, 0.0625]);
        assert!((retained_bias(&p) - bcs_bias(0.5).unwrap()).abs() < 1e-15);
    }

    #[test]
    fn purified_count_examples() {
        assert!((expected_purified(4, 100, 0.5).unwrap() - 125.0).abs() < 1e-12);
        assert_eq!(expected_purified(4, 100, 0.0).unwrap(), 100.0);
        assert_eq!(expected_purified(1, 4, 0.0).unwrap(), 1.0);
        assert!(expected_purified(4, 5, 0.1).is_err());
        assert!(expected_purified(0, 4, 0.1).is_err());
    }

    #[test]
    fn retention_matches_ratio_form() {
        for eps in [0.1, 0.5, 0.9] {
            let ratio = eps / (2.0 * bcs_bias(eps).unwrap());
            assert!((retention_per_bit(eps) - ratio).abs() < 1e-15);
            assert!((pair_retention(eps) - 2.0 * ratio).abs() < 1e-15);
        }
    }

    #[test]
    fn rounds_examples() {
        assert_eq!(rounds_to_bias(0.5, 0.8).unwrap(), 1);
        assert_eq!(rounds_to_bias(0.5, 0.75).unwrap(), 1);
        assert_eq!(rounds_to_bias(0.5, 0.4).unwrap(), 0);
        assert_eq!(rounds_to_bias(0.0, 0.3), Err(Error::UnreachableTarget));
        assert_eq!(rounds_to_bias(0.5, 1.0), Err(Error::UnreachableTarget));
        assert!(rounds_to_bias(0.01, 0.99).unwrap() > 3);
    }

    #[test]
    fn temperature_bias_bridge() {
        let eps = bias_from_temperature(2.0, 4.0);
        // P_g - P_e of the thermal spin
        let pe = 1.0 / (1.0 + libm::exp(0.5));
        assert!((eps - (1.0 - 2.0 * pe)).abs() < 1e-15);
        assert!((temperature_from_bias(2.0, eps) - 4.0).abs() < 1e-12);
        assert_eq!(temperature_from_bias(1.0, 0.0), f64::INFINITY);
    }

    #[test]
    fn compress_keeps_agreeing_controls() {
        let mut out = Vec::new();
        let kept = compress(&[0, 0, 0, 1, 1, 0, 1, 1], &mut out);
        assert_eq!(kept, 2);
        assert_eq!(out, [0, 1]);
    }

    #[test]
    fn simulation_is_deterministic() {
        let a = simulate_bcs(1000, 0.3, 2, 7).unwrap();
        let b = simulate_bcs(1000, 0.3, 2, 7).unwrap();
        assert_eq!(a, b);
        let c = simulate_bcs(1000, 0.3, 2, 8).unwrap();
        assert_ne!(a, c);
    }

    #[test]
    fn simulation_rejects_odd_counts() {
        assert!(simulate_bcs(7, 0.3, 1, 0).is_err());
        assert!(simulate_bcs(0, 0.3, 1, 0).is_err());
    }
}
