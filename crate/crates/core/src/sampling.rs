//! Exact uniform sampling of set partitions.
//!
//! Draw `i` of a run seeded with `seed` uses ChaCha8 seeded by
//! `seed_from_u64(seed)` on stream `i`, so a run is reproducible on every
//! platform and independent of how draws are split across threads.
//! Probabilities `a/b` are decided exactly: the uniform variate is read as
//! base-`2^64` digits and compared with the digits of `a/b` until they differ.

use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};
use rand::{Rng, RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use statrs::distribution::{ChiSquared, ContinuousCDF};

use crate::error::{Error, Result};
use crate::exactnum::{stirling_row, BigInt};
use crate::partitions::SetPartition;

/// What to sample and how many times.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SamplerConfig {
    pub n: usize,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub k: Option<usize>,
    pub seed: u64,
    pub count: usize,
}

impl SamplerConfig {
    pub fn validate(&self) -> Result<()> {
        if self.n == 0 {
            return Err(Error::invalid("need n >= 1"));
        }
        if let Some(k) = self.k {
            if k == 0 || k > self.n {
                return Err(Error::invalid(format!("need 1 <= k <= n, got n = {}, k = {k}", self.n)));
            }
        }
        if self.count == 0 {
            return Err(Error::invalid("count must be positive"));
        }
        Ok(())
    }
}

/// The generator used for draw `stream` of a run seeded with `seed`.
pub fn stream_rng(seed: u64, stream: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng
}

const RADIX_BITS: usize = 64;

/// The probability `num/den` with its leading base-`2^64` digit cached.
#[derive(Clone, Debug)]
struct Threshold {
    num: BigInt,
    den: BigInt,
    first: u64,
    /// `num/den` has exactly one nonzero digit, or is 1.
    exact: bool,
    certain: bool,
}

impl Threshold {
    fn new(num: BigInt, den: BigInt) -> Self {
        debug_assert!(!den.is_zero() && num <= den);
        if num == den {
            return Threshold { num, den, first: u64::MAX, exact: true, certain: true };
        }
        let (d, r) = (&num << RADIX_BITS).div_rem(&den);
        Threshold {
            first: d.to_u64().expect("digit below 2^64"),
            exact: r.is_zero(),
            certain: false,
            num,
            den,
        }
    }

    /// True with probability exactly `num/den`.
    fn sample(&self, rng: &mut impl RngCore) -> bool {
        if self.certain {
            return true;
        }
        let r = rng.next_u64();
        if r != self.first {
            return r < self.first;
        }
        if self.exact {
            return false;
        }
        // Tie on the first digit: continue digit by digit.
        let mut rem = (&self.num << RADIX_BITS).mod_floor(&self.den);
        loop {
            let (d, r2) = (&rem << RADIX_BITS).div_rem(&self.den);
            let d = d.to_u64().expect("digit below 2^64");
            let u = rng.next_u64();
            if u != d {
                return u < d;
            }
            if r2.is_zero() {
                return false;
            }
            rem = r2;
        }
    }
}

/// Precomputed tables for repeated uniform draws from `Π_n^k` or `Π_n`.
#[derive(Clone, Debug)]
pub struct PartitionSampler {
    n: usize,
    k: Option<usize>,
    /// `singleton[m][j]`: probability that `m` is a singleton in a uniform
    /// partition of `[m]` into `j` blocks.
    singleton: Vec<Vec<Threshold>>,
    /// `block_count[j]`: probability of `k = j` given `k >= j`, for `Π_n`.
    block_count: Vec<Threshold>,
}

impl PartitionSampler {
    pub fn new(n: usize, k: Option<usize>) -> Result<Self> {
        SamplerConfig { n, k, seed: 0, count: 1 }.validate()?;
        let rows: Vec<Vec<BigInt>> = (0..=n).map(stirling_row).collect();
        let s = |m: usize, j: usize| rows[m].get(j).cloned().unwrap_or_default();
        let mut singleton = Vec::with_capacity(n + 1);
        singleton.push(Vec::new());
        for m in 1..=n {
            let row = (0..=m)
                .map(|j| {
                    if j == 0 {
                        Threshold::new(BigInt::zero(), BigInt::from(1))
                    } else {
                        Threshold::new(s(m - 1, j - 1), s(m, j))
                    }
                })
                .collect();
            singleton.push(row);
        }
        let mut block_count = Vec::new();
        if k.is_none() {
            let mut rest: BigInt = rows[n].iter().sum();
            block_count.push(Threshold::new(BigInt::zero(), BigInt::from(1)));
            for j in 1..=n {
                let sj = s(n, j);
                block_count.push(Threshold::new(sj.clone(), rest.clone()));
                rest -= sj;
            }
        }
        Ok(PartitionSampler { n, k, singleton, block_count })
    }

    fn draw_k(&self, rng: &mut impl RngCore) -> usize {
        if let Some(k) = self.k {
            return k;
        }
        for j in 1..self.n {
            if self.block_count[j].sample(rng) {
                return j;
            }
        }
        self.n
    }

    /// One uniform draw using `rng`.
    pub fn sample_with(&self, rng: &mut impl RngCore) -> SetPartition {
        let n = self.n;
        let k = self.draw_k(rng);
        // choice[m] = None: m opens a block; Some(r): m joins the r-th block
        // (by least element) of the partition of [m - 1].
        let mut choice = vec![None; n + 1];
        let mut j = k;
        for m in (1..=n).rev() {
            if self.singleton[m][j].sample(rng) {
                j -= 1;
            } else {
                choice[m] = Some(rng.random_range(0..j));
            }
        }
        debug_assert_eq!(j, 0);
        let mut rgs = Vec::with_capacity(n);
        let mut blocks = 0;
        for c in &choice[1..] {
            match *c {
                None => {
                    rgs.push(blocks);
                    blocks += 1;
                }
                Some(r) => rgs.push(r),
            }
        }
        SetPartition::from_rgs(rgs).expect("sampler builds a restricted growth string")
    }

    /// Draw number `index` of the run seeded with `seed`.
    pub fn sample_indexed(&self, seed: u64, index: u64) -> SetPartition {
        self.sample_with(&mut stream_rng(seed, index))
    }

    /// Draws `0..count` of the run seeded with `seed`.
    pub fn samples(&self, seed: u64, count: usize) -> impl Iterator<Item = SetPartition> + '_ {
        (0..count as u64).map(move |i| self.sample_indexed(seed, i))
    }
}

/// A uniform partition of `[n]` into `k` blocks.
pub fn sample_uniform_k(n: usize, k: usize, seed: u64) -> Result<SetPartition> {
    Ok(PartitionSampler::new(n, Some(k))?.sample_indexed(seed, 0))
}

/// A uniform partition of `[n]`.
pub fn sample_uniform(n: usize, seed: u64) -> Result<SetPartition> {
    Ok(PartitionSampler::new(n, None)?.sample_indexed(seed, 0))
}

/// All draws of a configured run.
pub fn sample_run(cfg: &SamplerConfig) -> Result<Vec<SetPartition>> {
    cfg.validate()?;
    let s = PartitionSampler::new(cfg.n, cfg.k)?;
    Ok(s.samples(cfg.seed, cfg.count).collect())
}

/// Pearson goodness of fit against equal cell probabilities.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct ChiSquareTest {
    pub statistic: f64,
    pub dof: usize,
    pub p_value: f64,
}

pub fn chi_square_uniform(counts: &[u64]) -> Result<ChiSquareTest> {
    if counts.len() < 2 {
        return Err(Error::invalid("chi-square needs at least two cells"));
    }
    let total: u64 = counts.iter().sum();
    if total == 0 {
        return Err(Error::invalid("chi-square needs at least one observation"));
    }
    let expected = total as f64 / counts.len() as f64;
    let statistic = counts
        .iter()
        .map(|&c| {
            let d = c as f64 - expected;
            d * d / expected
        })
        .sum();
    let dof = counts.len() - 1;
    let dist = ChiSquared::new(dof as f64).map_err(|e| Error::invalid(e.to_string()))?;
    Ok(ChiSquareTest {
        statistic,
        dof,
        p_value: dist.sf(statistic),
    })
}

/// Empirical mean and variance of `(x - mean) / sqrt(var)` over `values`.
pub fn standardized_moments(values: &[f64], mean: f64, var: f64) -> (f64, f64) {
    let sd = var.sqrt();
    let z: Vec<f64> = values.iter().map(|v| (v - mean) / sd).collect();
    let len = z.len() as f64;
    let m = z.iter().sum::<f64>() / len;
    let v = z.iter().map(|x| (x - m) * (x - m)).sum::<f64>() / len;
    (m, v)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::crossings::cr_linear;
    use crate::exactnum::rational_to_f64;
    use crate::moments::{mean_global_linear, var_global_linear};
    use crate::partitions::enumerate_all;
    use std::collections::HashMap;

    fn within_sigmas(hits: u64, draws: u64, p: f64, sigmas: f64) -> bool {
        let sd = (draws as f64 * p * (1.0 - p)).sqrt();
        (hits as f64 - draws as f64 * p).abs() <= sigmas * sd
    }

    #[test]
    fn threshold_is_exact() {
        let mut rng = stream_rng(1, 0);
        let half = Threshold::new(BigInt::from(1), BigInt::from(2));
        assert!(half.exact && half.first == 1 << 63);
        assert!(!Threshold::new(BigInt::zero(), BigInt::from(3)).sample(&mut rng));
        assert!(Threshold::new(BigInt::from(3), BigInt::from(3)).sample(&mut rng));
        let third = Threshold::new(BigInt::from(1), BigInt::from(3));
        let hits = (0..60_000).filter(|_| third.sample(&mut rng)).count() as u64;
        assert!(within_sigmas(hits, 60_000, 1.0 / 3.0, 4.0));
    }

    #[test]
    fn tie_refinement() {
        struct Fixed(Vec<u64>, usize);
        impl RngCore for Fixed {
            fn next_u32(&mut self) -> u32 {
                self.next_u64() as u32
            }
            fn next_u64(&mut self) -> u64 {
                self.1 += 1;
                self.0[self.1 - 1]
            }
            fn fill_bytes(&mut self, _: &mut [u8]) {
                unimplemented!()
            }
        }
        // 1/3 = 0.5555...5 in base 2^64 with digit 0x5555555555555555.
        let third = Threshold::new(BigInt::from(1), BigInt::from(3));
        let d = 0x5555_5555_5555_5555u64;
        assert!(third.sample(&mut Fixed(vec![d, d, d - 1], 0)));
        assert!(!third.sample(&mut Fixed(vec![d, d + 1], 0)));
    }

    #[test]
    fn trivial_cases() {
        for seed in 0..20 {
            assert_eq!(sample_uniform_k(6, 6, seed).unwrap().k(), 6);
            assert_eq!(sample_uniform_k(6, 1, seed).unwrap().k(), 1);
            assert_eq!(sample_uniform(1, seed).unwrap().to_string(), "1");
        }
        assert!(sample_uniform_k(3, 4, 0).is_err());
        assert!(sample_uniform_k(3, 0, 0).is_err());
        assert!(sample_uniform(0, 0).is_err());
    }

    #[test]
    fn seeded_determinism() {
        let cfg = SamplerConfig { n: 30, k: Some(7), seed: 42, count: 50 };
        let a = sample_run(&cfg).unwrap();
        assert_eq!(a, sample_run(&cfg).unwrap());
        let s = PartitionSampler::new(30, Some(7)).unwrap();
        assert_eq!(s.sample_indexed(42, 17), a[17]);
        assert_ne!(a, sample_run(&SamplerConfig { seed: 43, ..cfg }).unwrap());
        for p in &a {
            p.check_invariants().unwrap();
            assert_eq!((p.n(), p.k()), (30, 7));
        }
    }

    #[test]
    fn four_two_is_uniform() {
        let s = PartitionSampler::new(4, Some(2)).unwrap();
        let mut counts: HashMap<SetPartition, u64> = HashMap::new();
        for p in s.samples(7, 70_000) {
            *counts.entry(p).or_default() += 1;
        }
        assert_eq!(counts.len(), 7);
        for &c in counts.values() {
            assert!(within_sigmas(c, 70_000, 1.0 / 7.0, 4.0), "{c}");
        }
    }

    #[test]
    fn global_singletons_and_mean() {
        let s = PartitionSampler::new(4, None).unwrap();
        let hits = s.samples(3, 30_000).filter(|p| p.k() == 4).count() as u64;
        assert!(within_sigmas(hits, 30_000, 1.0 / 15.0, 4.0));

        let n = 9;
        let draws = 40_000;
        let s = PartitionSampler::new(n, None).unwrap();
        let xs: Vec<f64> = s.samples(11, draws).map(|p| cr_linear(&p) as f64).collect();
        let mean = rational_to_f64(&mean_global_linear(n).unwrap());
        let sd = rational_to_f64(&var_global_linear(n).unwrap()).sqrt();
        let emp = xs.iter().sum::<f64>() / draws as f64;
        assert!((emp - mean).abs() < 5.0 * sd / (draws as f64).sqrt());
    }

    #[test]
    fn chi_square_small() {
        let all: Vec<SetPartition> = enumerate_all(4).unwrap().collect();
        let index: HashMap<_, _> = all.iter().cloned().enumerate().map(|(i, p)| (p, i)).collect();
        let mut counts = vec![0u64; all.len()];
        for p in PartitionSampler::new(4, None).unwrap().samples(5, 30_000) {
            counts[index[&p]] += 1;
        }
        assert!(chi_square_uniform(&counts).unwrap().p_value > 1e-6);
        let skew = chi_square_uniform(&[100, 0, 0]).unwrap();
        assert!(skew.p_value < 1e-6);
        assert!(chi_square_uniform(&[1]).is_err());
    }
}
