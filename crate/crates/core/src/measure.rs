//! Position statistics: distributions, marginals, coincidence, spreading.

use rand::distr::weighted::WeightedIndex;
use rand::distr::Distribution as _;
use rand::Rng;

use crate::lattice::{Lattice, PairState, SingleParticle};
use crate::{Amplitudes, Real, Result, WalkError};

/// Allowed deviation of a state norm from 1 before it is rejected for measurement.
pub const NORM_TOLERANCE: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Particle {
    First,
    Second,
}

/// Probability mass over the sites of a lattice.
#[derive(Debug, Clone, PartialEq)]
pub struct Distribution<T> {
    lattice: Lattice,
    p: Vec<T>,
}

impl<T: Real> Distribution<T> {
    pub fn delta(lattice: Lattice, position: i64) -> Self {
        let mut p = vec![T::zero(); lattice.sites()];
        let site = lattice
            .site(position)
            .unwrap_or_else(|| panic!("position {position} is off the lattice"));
        p[site] = T::one();
        Self { lattice, p }
    }

    pub(crate) fn from_raw(lattice: Lattice, p: Vec<T>) -> Self {
        debug_assert_eq!(p.len(), lattice.sites());
        Self { lattice, p }
    }

    pub fn lattice(&self) -> Lattice {
        self.lattice
    }

    /// Probabilities indexed by site.
    pub fn probabilities(&self) -> &[T] {
        &self.p
    }

    /// Probability at `position`; zero off the lattice.
    pub fn prob(&self, position: i64) -> T {
        self.lattice.site(position).map_or(T::zero(), |s| self.p[s])
    }

    /// `(position, probability)` for every site, in increasing position.
    pub fn iter(&self) -> impl Iterator<Item = (i64, T)> + '_ {
        self.p
            .iter()
            .enumerate()
            .map(|(s, &p)| (self.lattice.position(s), p))
    }

    pub fn total(&self) -> T {
        self.p.iter().fold(T::zero(), |acc, &p| acc + p)
    }

    pub fn mean(&self) -> T {
        self.iter()
            .fold(T::zero(), |acc, (x, p)| acc + p * T::lit(x as f64))
    }

    pub fn std_dev(&self) -> T {
        variance(self).max(T::zero()).sqrt()
    }
}

/// Probability mass over pairs of sites, indexed `site1 * sites + site2`.
#[derive(Debug, Clone, PartialEq)]
pub struct JointDistribution<T> {
    lattice: Lattice,
    p: Vec<T>,
}

impl<T: Real> JointDistribution<T> {
    pub fn lattice(&self) -> Lattice {
        self.lattice
    }

    pub fn prob(&self, x1: i64, x2: i64) -> T {
        match (self.lattice.site(x1), self.lattice.site(x2)) {
            (Some(s1), Some(s2)) => self.p[s1 * self.lattice.sites() + s2],
            _ => T::zero(),
        }
    }

    /// `(x1, x2, probability)` in row-major position order.
    pub fn iter(&self) -> impl Iterator<Item = (i64, i64, T)> + '_ {
        let n = self.lattice.sites();
        self.p.iter().enumerate().map(move |(i, &p)| {
            (
                self.lattice.position(i / n),
                self.lattice.position(i % n),
                p,
            )
        })
    }

    pub fn total(&self) -> T {
        self.p.iter().fold(T::zero(), |acc, &p| acc + p)
    }
}

fn check_normalized<T: Real>(norm_sqr: T) -> Result<()> {
    let norm = norm_sqr.sqrt();
    if (norm - T::one()).abs() > T::tol(NORM_TOLERANCE) || !norm.is_finite() {
        return Err(WalkError::NotNormalized {
            norm: norm.to_f64().unwrap_or(f64::NAN),
        });
    }
    Ok(())
}

/// `P(x)`: squared amplitudes summed over every internal register.
pub fn position_distribution<T: Real, S: SingleParticle<T>>(s: &S) -> Result<Distribution<T>> {
    check_normalized(s.norm_sqr())?;
    let lattice = s.lattice();
    let n = lattice.sites();
    let mut p = vec![T::zero(); n];
    for (i, a) in s.amplitudes().iter().enumerate() {
        p[i % n] = p[i % n] + a.norm_sqr();
    }
    Ok(Distribution { lattice, p })
}

/// `P(x1, x2)`: squared amplitudes summed over both coins.
pub fn joint_distribution<T: Real>(s: &PairState<T>) -> Result<JointDistribution<T>> {
    check_normalized(s.norm_sqr())?;
    let lattice = s.lattice();
    let block = lattice.sites().pow(2);
    let mut p = vec![T::zero(); block];
    for (i, a) in s.amplitudes().iter().enumerate() {
        p[i % block] = p[i % block] + a.norm_sqr();
    }
    Ok(JointDistribution { lattice, p })
}

/// Probability of finding both particles on the same site, and its complement.
pub fn coincidence_probability<T: Real>(j: &JointDistribution<T>) -> (T, T) {
    let n = j.lattice.sites();
    let same = (0..n).fold(T::zero(), |acc, s| acc + j.p[s * n + s]);
    (same, T::one() - same)
}

pub fn marginal<T: Real>(j: &JointDistribution<T>, particle: Particle) -> Distribution<T> {
    let n = j.lattice.sites();
    let mut p = vec![T::zero(); n];
    for (i, &q) in j.p.iter().enumerate() {
        let s = match particle {
            Particle::First => i / n,
            Particle::Second => i % n,
        };
        p[s] = p[s] + q;
    }
    Distribution {
        lattice: j.lattice,
        p,
    }
}

/// `Σ p x² − (Σ p x)²`.
pub fn variance<T: Real>(d: &Distribution<T>) -> T {
    let mean = d.mean();
    let second = d.iter().fold(T::zero(), |acc, (x, p)| {
        let x = T::lit(x as f64);
        acc + p * x * x
    });
    second - mean * mean
}

/// Repetitions needed to collect `n_points` position samples when each run
/// yields one sample (particles together) or two (apart) with equal odds:
/// `⌈2n/3⌉`.
pub fn runs_required(n_points: u64) -> u64 {
    (2 * n_points).div_ceil(3)
}

/// Least-squares slope of `ln y` against `ln x`. `None` with fewer than two
/// usable points or when every `x` coincides.
pub fn log_log_slope(points: &[(f64, f64)]) -> Option<f64> {
    let logs: Vec<(f64, f64)> = points
        .iter()
        .filter(|(x, y)| *x > 0.0 && *y > 0.0)
        .map(|(x, y)| (x.ln(), y.ln()))
        .collect();
    if logs.len() < 2 {
        return None;
    }
    let m = logs.len() as f64;
    let mx = logs.iter().map(|p| p.0).sum::<f64>() / m;
    let my = logs.iter().map(|p| p.1).sum::<f64>() / m;
    let sxy: f64 = logs.iter().map(|(x, y)| (x - mx) * (y - my)).sum();
    let sxx: f64 = logs.iter().map(|(x, _)| (x - mx).powi(2)).sum();
    (sxx > 0.0).then(|| sxy / sxx)
}

fn weights<T: Real>(p: &[T]) -> Vec<f64> {
    p.iter()
        .map(|v| v.to_f64().unwrap_or(0.0).max(0.0))
        .collect()
}

/// Draws `samples` positions from `d`.
pub fn sample_positions<T: Real, R: Rng + ?Sized>(
    d: &Distribution<T>,
    samples: usize,
    rng: &mut R,
) -> Result<Vec<i64>> {
    let index = WeightedIndex::new(weights(&d.p))
        .map_err(|e| WalkError::InvalidConfig(format!("cannot sample distribution: {e}")))?;
    Ok((0..samples)
        .map(|_| d.lattice.position(index.sample(rng)))
        .collect())
}

/// Draws `runs` joint measurements `(x1, x2)` from `j`.
pub fn sample_pairs<T: Real, R: Rng + ?Sized>(
    j: &JointDistribution<T>,
    runs: usize,
    rng: &mut R,
) -> Result<Vec<(i64, i64)>> {
    let n = j.lattice.sites();
    let index = WeightedIndex::new(weights(&j.p))
        .map_err(|e| WalkError::InvalidConfig(format!("cannot sample distribution: {e}")))?;
    Ok((0..runs)
        .map(|_| {
            let i = index.sample(rng);
            (j.lattice.position(i / n), j.lattice.position(i % n))
        })
        .collect())
}

/// Tally of sampled pair measurements. Particles found together contribute
/// one position point, particles found apart contribute two.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct PairSampleSummary {
    pub runs: u64,
    pub same: u64,
    pub different: u64,
}

impl PairSampleSummary {
    pub fn from_samples(samples: &[(i64, i64)]) -> Self {
        let same = samples.iter().filter(|(a, b)| a == b).count() as u64;
        Self {
            runs: samples.len() as u64,
            same,
            different: samples.len() as u64 - same,
        }
    }

    pub fn position_points(&self) -> u64 {
        self.same + 2 * self.different
    }
}
